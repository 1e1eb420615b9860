use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{binomial_int, CyclotomicField, Field, Rational, RootsOfUnity};
use crate::grassmann::{GrassmannElement, GrassmannLayout};

use super::{EngineConfig, FixedLocus, QuotProblem};

/// Coefficients of `Q(x) = ((lh + x)^N - h^N) / x` and of
/// `A(x) = (N (lh + x)^{N-1} - Q(x)) / x`, lowest degree first.
///
/// Both divisions are exact because `l^N = 1`: the numerators' constant terms
/// cancel, and that cancellation is checked in exact fields.
pub(crate) fn base_polynomials<F: Field>(
    field: &F,
    lh: &F::Elem,
    h: &F::Elem,
    n: usize,
) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let lh_pow: Vec<F::Elem> = (0..=n as i64)
        .map(|k| field.pow(lh, k))
        .collect::<Result<_>>()?;
    let binom = |top: usize, k: usize| field.from_rational(&binomial_int(top as i64, k as u32).into());

    let numerator_constant = field.sub(&lh_pow[n], &field.pow(h, n as i64)?);
    if field.is_exact() && !field.is_zero(&numerator_constant) {
        return Err(Error::Invariant("(lh)^N - h^N does not vanish".into()));
    }

    let q = (1..=n)
        .map(|k| field.mul(&binom(n, k), &lh_pow[n - k]))
        .collect();
    let a = (1..n)
        .map(|k| {
            let coeff = field.mul(&field.from_int(k as i64), &binom(n, k + 1));
            field.mul(&coeff, &lh_pow[n - 1 - k])
        })
        .collect();
    Ok((q, a))
}

/// `1 / e_T(N^vir)` on a fixed locus, over any field holding the `N`-th roots of unity.
pub fn euler_inverse_in<F: RootsOfUnity>(
    field: &F,
    layout: &Arc<GrassmannLayout>,
    p: &QuotProblem,
    locus: &FixedLocus,
    h: &Rational,
) -> Result<GrassmannElement<F>> {
    let r = p.r();
    let g_bar = p.g_bar();
    let hf = field.from_rational(h);
    let lambdas: Vec<F::Elem> = locus
        .subset
        .iter()
        .map(|&k| field.root_of_unity(k as i64))
        .collect();

    let mut acc = GrassmannElement::constant(field, layout, field.from_int(p.sign_u()));
    for i in 1..=r {
        let lh = field.mul(&lambdas[i - 1], &hf);
        let (q, a) = base_polynomials(field, &lh, &hf, p.n())?;
        let q = GrassmannElement::x_polynomial(field, layout, i, &q);
        let d_i = locus.splitting[i - 1] as i64;
        acc = acc.mul_unchecked(&q.int_power(g_bar - d_i)?);
        if p.g() > 0 && d_i > 0 {
            let a = GrassmannElement::x_polynomial(field, layout, i, &a);
            let arg = GrassmannElement::theta(field, layout, i)
                .mul_unchecked(&a)
                .mul_unchecked(&q.g_inv()?);
            acc = acc.mul_unchecked(&arg.g_exp()?);
        }
    }
    if g_bar != 0 {
        for i in 1..=r {
            for j in i + 1..=r {
                let diff = field.mul(&field.sub(&lambdas[i - 1], &lambdas[j - 1]), &hf);
                let tau = field.inv(&diff)?;
                let linear = GrassmannElement::one(field, layout)
                    .add(&GrassmannElement::x(field, layout, i).scale(&tau))
                    .sub(&GrassmannElement::x(field, layout, j).scale(&tau));
                acc = acc
                    .mul_unchecked(&linear.int_power(-2 * g_bar)?)
                    .scale(&field.pow(&tau, 2 * g_bar)?);
            }
        }
    }
    Ok(acc)
}

/// Exact `1 / e_T(N^vir)` with coefficients in `Q(z_N)`.
pub fn euler_inverse(
    locus: &FixedLocus,
    p: &QuotProblem,
    cfg: &EngineConfig,
) -> Result<GrassmannElement<CyclotomicField>> {
    let field = CyclotomicField::new(p.n());
    let layout = GrassmannLayout::new(p.g(), &locus.splitting)?;
    euler_inverse_in(&field, &layout, p, locus, cfg.h())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn problem(r: usize, n: usize, g: usize, d: usize) -> QuotProblem {
        QuotProblem::new(r, n, g, d).unwrap()
    }

    #[test]
    fn trivial_rank_one_is_unit() {
        for g in 0..3 {
            for d in 0..3 {
                let p = problem(1, 1, g, d);
                let locus = FixedLocus { subset: vec![1], splitting: vec![d as u32] };
                let e = euler_inverse(&locus, &p, &EngineConfig::default()).unwrap();
                let field = CyclotomicField::new(1);
                assert_eq!(e, GrassmannElement::one(&field, e.layout()));
            }
        }
    }

    #[test]
    fn constant_term_matches_closed_expression() {
        // u * prod (N l^{-1} h^{N-1})^{gbar - d_i} * prod ((l_i - l_j) h)^{-2 gbar}
        for &(r, n, g, ref subset, ref splitting) in &[
            (2usize, 3usize, 0usize, vec![1usize, 3], vec![1u32, 0]),
            (2, 4, 2, vec![2, 3], vec![1, 2]),
            (3, 5, 0, vec![1, 2, 4], vec![0, 1, 1]),
            (1, 3, 1, vec![2], vec![2]),
        ] {
            let d = splitting.iter().sum::<u32>() as usize;
            let p = problem(r, n, g, d);
            let locus = FixedLocus { subset: subset.clone(), splitting: splitting.clone() };
            let h = rat(3, 2);
            let cfg = EngineConfig::new(h.clone(), Default::default(), 1).unwrap();
            let e = euler_inverse(&locus, &p, &cfg).unwrap();
            let field = e.field().clone();
            let hf = field.from_rational(&h);
            let lam: Vec<_> = subset.iter().map(|&k| field.root_of_unity(k as i64)).collect();
            let mut want = field.from_int(p.sign_u());
            for i in 0..r {
                let base = field.mul(
                    &field.mul(&field.from_int(n as i64), &field.inv(&lam[i]).unwrap()),
                    &field.pow(&hf, n as i64 - 1).unwrap(),
                );
                want = field.mul(&want, &field.pow(&base, p.g_bar() - splitting[i] as i64).unwrap());
                for j in i + 1..r {
                    let diff = field.mul(&field.sub(&lam[i], &lam[j]), &hf);
                    want = field.mul(&want, &field.pow(&diff, -2 * p.g_bar()).unwrap());
                }
            }
            assert_eq!(e.constant_term(), want, "r={r} N={n} g={g} {subset:?} {splitting:?}");
        }
    }
}
