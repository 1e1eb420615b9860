use crate::error::{Error, Result};
use crate::exactnum::{int, CyclotomicField, CyclotomicNumber, Field, Rational, RootsOfUnity};
use crate::localization::{subsets, InsertionPolynomial, QuotProblem};

use super::{symmetric_functions, SymbolicPolynomialR, SymmetricTable};

/// `J(l) = N^r (l_1 ... l_r)^{-1} prod_{i<j} (l_i - l_j)^{-2}`.
pub fn j_function<F: Field>(field: &F, n: usize, lambdas: &[F::Elem]) -> Result<F::Elem> {
    let r = lambdas.len();
    let mut denom = field.one();
    for (i, li) in lambdas.iter().enumerate() {
        denom = field.mul(&denom, li);
        for lj in &lambdas[i + 1..] {
            let diff = field.sub(li, lj);
            denom = field.mul(&denom, &field.mul(&diff, &diff));
        }
    }
    let scale = field.pow(&field.from_int(n as i64), r as i64)?;
    field.div(&scale, &denom)
}

/// One subset of roots with the data every summand needs.
struct RootPoint {
    lambdas: Vec<CyclotomicNumber>,
    table: SymmetricTable<CyclotomicField>,
    /// `J^{g-1}`.
    j_power: CyclotomicNumber,
}

fn root_points(field: &CyclotomicField, p: &QuotProblem) -> Result<Vec<RootPoint>> {
    subsets(p.n(), p.r())
        .into_iter()
        .map(|subset| {
            let lambdas: Vec<_> = subset.iter().map(|&k| field.root_of_unity(k as i64)).collect();
            let j = j_function(field, p.n(), &lambdas)?;
            Ok(RootPoint {
                table: symmetric_functions(field, &lambdas),
                j_power: field.pow(&j, p.g_bar())?,
                lambdas,
            })
        })
        .collect()
}

/// Weighted degree of a pure `a`-class polynomial (`a_i` has weight `i`).
fn weighted_degree(p: &InsertionPolynomial) -> Result<Option<i64>> {
    if !p.is_pure_a() {
        return Err(Error::Precondition(
            "closed forms take polynomials in the a-classes only".into(),
        ));
    }
    Ok(p.degree()?.map(|d| d as i64 / 2))
}

fn check_weight(p: &InsertionPolynomial, expected: i64) -> Result<()> {
    if expected < 0 {
        return Err(Error::Precondition(format!(
            "required insertion weight {expected} is negative"
        )));
    }
    match weighted_degree(p)? {
        Some(w) if w != expected => Err(Error::DegreeMismatch { expected, found: w }),
        _ => Ok(()),
    }
}

fn setup(p: &QuotProblem, poly: &InsertionPolynomial, weight: i64) -> Result<(CyclotomicField, SymbolicPolynomialR)> {
    check_weight(poly, weight)?;
    poly.validate(p.r(), p.g())?;
    let r = SymbolicPolynomialR::from_insertion(poly, p.r())?;
    Ok((CyclotomicField::new(p.n()), r))
}

/// `u R(l) J^{g-1}(l)` for one subset of root indices.
pub fn vi_summand(p: &QuotProblem, r: &SymbolicPolynomialR, subset: &[usize]) -> Result<CyclotomicNumber> {
    let field = CyclotomicField::new(p.n());
    let lambdas: Vec<_> = subset.iter().map(|&k| field.root_of_unity(k as i64)).collect();
    let j = field.pow(&j_function(&field, p.n(), &lambdas)?, p.g_bar())?;
    let value = field.mul(&r.evaluate(&field, &lambdas)?, &j);
    Ok(field.scale(&value, &int(p.sign_u())))
}

/// Vafa–Intriligator: `u sum_l R(l) J^{g-1}(l)` for `P` of weight `e`.
pub fn vi_evaluate(p: &QuotProblem, poly: &InsertionPolynomial) -> Result<Rational> {
    let (field, r) = setup(p, poly, p.e())?;
    let mut total = field.zero();
    for pt in root_points(&field, p)? {
        let term = field.mul(&r.evaluate(&field, &pt.lambdas)?, &pt.j_power);
        total = field.add(&total, &term);
    }
    field.scale(&total, &int(p.sign_u())).as_rational()
}

/// `prod_{t=1}^{s} b_1^t b_1^{t+g} * P`: `(u / N^s) sum_l (l_1 + ... + l_r)^s R(l) J^{g-1}(l)`
/// for `s <= d`, and `0` for `s > d`. Needs `s <= g` and `P` of weight `e - s`.
pub fn bees_evaluate(p: &QuotProblem, poly: &InsertionPolynomial, s: usize) -> Result<Rational> {
    if s > p.g() {
        return Err(Error::Precondition(format!(
            "s = {s} distinct pairs do not exist in genus {}",
            p.g()
        )));
    }
    let (field, r) = setup(p, poly, p.e() - s as i64)?;
    if s > p.d() {
        return Ok(int(0));
    }
    let mut total = field.zero();
    for pt in root_points(&field, p)? {
        let power_sum = field.pow(pt.table.sigma(1), s as i64)?;
        let term = field.mul(&field.mul(&power_sum, &r.evaluate(&field, &pt.lambdas)?), &pt.j_power);
        total = field.add(&total, &term);
    }
    let scale = int(p.sign_u()) / int((p.n() as i64).pow(s as u32));
    field.scale(&total, &scale).as_rational()
}

/// `(D_l R)(l) = (g-1)(r-l+1)(N-r+l-1) sigma_{l-1} R + sum_q sigma_{l-1;q} z_q dR/dz_q`, at `l`.
pub fn apply_dl<F: Field>(
    field: &F,
    p: &QuotProblem,
    r: &SymbolicPolynomialR,
    l: usize,
    lambdas: &[F::Elem],
) -> Result<F::Elem> {
    let rank = p.r();
    if !(2..=rank).contains(&l) {
        return Err(Error::Precondition(format!("l = {l} outside 2..={rank}")));
    }
    let table = symmetric_functions(field, lambdas);
    let coeff = p.g_bar() * (rank - l + 1) as i64 * (p.n() + l - rank - 1) as i64;
    let mut total = field.mul(
        &field.scale(table.sigma(l - 1), &int(coeff)),
        &r.evaluate(field, lambdas)?,
    );
    for q in 1..=rank {
        let d = r.partial(q).evaluate(field, lambdas)?;
        let term = field.mul(&field.mul(table.sigma_omit1(l - 1, q), &lambdas[q - 1]), &d);
        total = field.add(&total, &term);
    }
    Ok(total)
}

/// `f_l * P`: `(u / N) sum_l (D_l R)(l) J^{g-1}(l)` for `P` of weight `e - l + 1`.
pub fn fl_evaluate(p: &QuotProblem, poly: &InsertionPolynomial, l: usize) -> Result<Rational> {
    if !(2..=p.r()).contains(&l) {
        return Err(Error::Precondition(format!("l = {l} outside 2..={}", p.r())));
    }
    let (field, r) = setup(p, poly, p.e() - l as i64 + 1)?;
    let mut total = field.zero();
    for pt in root_points(&field, p)? {
        let term = field.mul(&apply_dl(&field, p, &r, l, &pt.lambdas)?, &pt.j_power);
        total = field.add(&total, &term);
    }
    field
        .scale(&total, &(int(p.sign_u()) / int(p.n() as i64)))
        .as_rational()
}

/// `(vi(d, P), vi(d + r, a_r^N P))`.
pub fn degree_shift_values(p: &QuotProblem, poly: &InsertionPolynomial) -> Result<(Rational, Rational)> {
    let lhs = vi_evaluate(p, poly)?;
    let shifted = poly.mul(&InsertionPolynomial::a(p.r()).pow(p.n() as u32));
    let rhs = vi_evaluate(&p.with_degree(p.d() + p.r()), &shifted)?;
    Ok((lhs, rhs))
}

/// Whether the intersection number is unchanged by `d -> d + r`, `P -> a_r^N P`.
pub fn degree_shift_check(p: &QuotProblem, poly: &InsertionPolynomial) -> Result<bool> {
    let (lhs, rhs) = degree_shift_values(p, poly)?;
    Ok(lhs == rhs)
}

/// Both sides of
/// `sum_{i<j} (l_i sigma_{l-1;i} - l_j sigma_{l-1;j}) / (l_i - l_j) = (r-l)(r-l+1)/2 sigma_{l-1}`
/// at distinct values `lambdas`.
pub fn sigma_identity<F: Field>(field: &F, lambdas: &[F::Elem], l: usize) -> Result<(F::Elem, F::Elem)> {
    let r = lambdas.len();
    if !(2..=r).contains(&l) {
        return Err(Error::Precondition(format!("l = {l} outside 2..={r}")));
    }
    let t = symmetric_functions(field, lambdas);
    let mut lhs = field.zero();
    for i in 1..=r {
        for j in i + 1..=r {
            let num = field.sub(
                &field.mul(&lambdas[i - 1], t.sigma_omit1(l - 1, i)),
                &field.mul(&lambdas[j - 1], t.sigma_omit1(l - 1, j)),
            );
            let den = field.sub(&lambdas[i - 1], &lambdas[j - 1]);
            lhs = field.add(&lhs, &field.div(&num, &den)?);
        }
    }
    let k = ((r - l) * (r - l + 1) / 2) as i64;
    let rhs = field.scale(t.sigma(l - 1), &int(k));
    Ok((lhs, rhs))
}
