use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, CyclotomicField, Field, Rational, RootsOfUnity};
use crate::localization::{subsets, QuotProblem};

use super::j_function;

/// The Pontrjagin-ring witness sum and the data of its reduction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PontrjaginReport {
    /// `M` with `rM = N(d - r(g-1)) - 1`.
    pub m: i64,
    #[serde(serialize_with = "crate::cli::serialize_rational")]
    pub value: Rational,
    /// Coefficient of `t^{r-1}` in `prod_{k=1}^{N-1} (1 + z^k t)`, expanded exactly.
    pub t_coefficient: i64,
    /// The same coefficient under the reading `1 + t + ... + t^{N-1}`.
    pub t_coefficient_claimed: i64,
    /// `value / (u N^{r(g-1)+1} t_coefficient)`; informational only.
    #[serde(serialize_with = "crate::cli::serialize_rational")]
    pub ratio_to_reduction: Rational,
    pub notes: Vec<String>,
}

fn admissible_m(p: &QuotProblem) -> Result<i64> {
    let (r, n, d) = (p.r() as i64, p.n() as i64, p.d() as i64);
    if r.gcd(&d) != 1 {
        return Err(Error::Precondition(format!("gcd(r, d) = {} is not 1", r.gcd(&d))));
    }
    if (n * d).rem_euclid(r) != 1 % r {
        return Err(Error::Precondition(format!("N d = {} is not 1 mod r", n * d)));
    }
    let rm = n * (d - r * p.g_bar()) - 1;
    if rm < 0 || rm % r != 0 {
        return Err(Error::Precondition(format!("r M = {rm} has no solution M >= 0")));
    }
    Ok(rm / r)
}

/// `u sum_l prod_{i<j} (l_i - l_j)^{2(g-1)} (l_1 ... l_r)^{M+g-1} (l_1 + ... + l_r) J^{g-1}(l)`.
pub fn pontrjagin_sum(r: usize, n: usize, g: usize, d: usize) -> Result<Rational> {
    let p = QuotProblem::new(r, n, g, d)?;
    let m = admissible_m(&p)?;
    let field = CyclotomicField::new(n);
    let g_bar = p.g_bar();
    let mut total = field.zero();
    for subset in subsets(n, r) {
        let lam: Vec<_> = subset.iter().map(|&k| field.root_of_unity(k as i64)).collect();
        let mut term = field.pow(&j_function(&field, n, &lam)?, g_bar)?;
        let mut product = field.one();
        let mut sum = field.zero();
        for (i, li) in lam.iter().enumerate() {
            product = field.mul(&product, li);
            sum = field.add(&sum, li);
            for lj in &lam[i + 1..] {
                term = field.mul(&term, &field.pow(&field.sub(li, lj), 2 * g_bar)?);
            }
        }
        term = field.mul(&term, &field.pow(&product, m + g_bar)?);
        total = field.add(&total, &field.mul(&term, &sum));
    }
    field.scale(&total, &int(p.sign_u())).as_rational()
}

/// Coefficient of `t^k` in `prod_{j=1}^{N-1} (1 + z^j t)`.
fn nontrivial_root_coefficient(n: usize, k: usize) -> Result<i64> {
    let field = CyclotomicField::new(n);
    let mut poly = vec![field.one()];
    for j in 1..n {
        let root = field.root_of_unity(j as i64);
        poly.push(field.zero());
        for i in (1..poly.len()).rev() {
            poly[i] = field.add(&poly[i], &field.mul(&poly[i - 1], &root));
        }
    }
    let c = poly.get(k).cloned().unwrap_or_else(|| field.zero()).as_rational()?;
    if !c.is_integer() {
        return Err(Error::Invariant("symmetric function of roots is not an integer".into()));
    }
    c.to_integer()
        .try_into()
        .map_err(|_| Error::Invariant("coefficient out of range".into()))
}

/// The witness sum, checked nonzero, with the reduction data alongside.
pub fn pontrjagin_report(r: usize, n: usize, g: usize, d: usize) -> Result<PontrjaginReport> {
    let p = QuotProblem::new(r, n, g, d)?;
    let m = admissible_m(&p)?;
    let value = pontrjagin_sum(r, n, g, d)?;
    if value.is_zero() {
        return Err(Error::Invariant(format!("witness sum vanishes on {p}")));
    }
    let t_coefficient = nontrivial_root_coefficient(n, r - 1)?;
    let t_coefficient_claimed = 1;
    let mut notes = Vec::new();
    if t_coefficient != t_coefficient_claimed {
        notes.push(format!(
            "prod_(k=1..{}) (1 + z^k t) has t^{} coefficient {t_coefficient}; \
             the reading 1 + t + ... + t^{} gives {t_coefficient_claimed}",
            n - 1,
            r - 1,
            n - 1
        ));
    }
    let exponent = r as i64 * p.g_bar() + 1;
    let reduction = int(p.sign_u() * t_coefficient) * pow_rational(n as i64, exponent);
    let ratio_to_reduction = if reduction.is_zero() {
        int(0)
    } else {
        &value / &reduction
    };
    Ok(PontrjaginReport {
        m,
        value,
        t_coefficient,
        t_coefficient_claimed,
        ratio_to_reduction,
        notes,
    })
}

fn pow_rational(base: i64, exponent: i64) -> Rational {
    let b = int(base);
    if exponent >= 0 {
        (0..exponent).fold(int(1), |acc, _| acc * &b)
    } else {
        int(1) / (0..-exponent).fold(int(1), |acc, _| acc * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor() {
        assert_eq!(pontrjagin_sum(2, 3, 2, 3).unwrap(), int(-27));
        let report = pontrjagin_report(2, 3, 2, 3).unwrap();
        assert_eq!(report.m, 1);
        assert_eq!(report.t_coefficient, -1);
        assert_eq!(report.notes.len(), 1);
    }

    #[test]
    fn nontrivial_root_products() {
        assert_eq!(nontrivial_root_coefficient(3, 1).unwrap(), -1);
        assert_eq!(nontrivial_root_coefficient(3, 2).unwrap(), 1);
        for n in 2..8 {
            for k in 0..n {
                let want = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(nontrivial_root_coefficient(n, k).unwrap(), want, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn inadmissible_inputs() {
        assert!(pontrjagin_sum(2, 3, 2, 2).is_err());
        assert!(pontrjagin_sum(2, 2, 2, 3).is_err());
    }
}
