//! Exact verifiers for the residue and binomial lemmas behind the
//! Vafa–Intriligator summation.
//!
//! Every residue is computed by truncated power series: writing
//! `(1+x)^N - 1 = x U(x)` with `U(0) = N`, a pole of order `k` at `0` becomes
//! a coefficient extraction against `U^{-k}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{binomial_int, binomial_rational, int, Field, Rational, RationalField};
use crate::series::TruncatedSeries;

/// `U(x) = ((1+x)^N - 1) / x`, truncated at `cap`.
fn reduced(n: u32, cap: u32) -> TruncatedSeries<RationalField> {
    let coeffs: Vec<Rational> = (1..=n).map(|k| binomial_int(n as i64, k).into()).collect();
    TruncatedSeries::univariate(&RationalField, &[cap], 0, &coeffs)
}

/// `(1+x)^a` for `a >= 0`, truncated at `cap`.
fn one_plus_x_pow(a: i64, cap: u32) -> TruncatedSeries<RationalField> {
    let coeffs: Vec<Rational> = (0..=cap).map(|k| binomial_int(a, k).into()).collect();
    TruncatedSeries::univariate(&RationalField, &[cap], 0, &coeffs)
}

/// `Res_{x=0} (1+x)^a / ((1+x)^N - 1)^{d+1} * x^m`.
fn residue_of_quotient(n: u32, a: i64, d: u32, m: u32) -> Rational {
    if m > d {
        return int(0);
    }
    let cap = d - m;
    let series = one_plus_x_pow(a, cap).mul(
        &reduced(n, cap)
            .int_power(-(d as i64 + 1))
            .expect("U(0) = N is a unit"),
    );
    series.coefficient(&[cap]).expect("within caps")
}

/// Both sides of
/// `Res (1+x)^{N-1+l} / ((1+x)^N - 1)^{d+1} x^m = (1/N) sum_p (-1)^{m-p} C(m,p) C((l+p)/N, d)`,
/// and whether they agree.
pub fn residue_lemma_check(n: u32, l: u32, d: u32, m: u32) -> (Rational, Rational, bool) {
    assert!(n >= 1, "N must be positive");
    let residue = residue_of_quotient(n, (n - 1 + l) as i64, d, m);
    let mut sum = int(0);
    for p in 0..=m {
        let sign = if (m - p).is_multiple_of(2) { 1 } else { -1 };
        let top = int((l + p) as i64) / int(n as i64);
        sum += int(sign) * Rational::from(binomial_int(m as i64, p)) * binomial_rational(&top, d);
    }
    let closed = sum / int(n as i64);
    let ok = residue == closed;
    (residue, closed, ok)
}

/// `sum_{n,k <= d} (-1)^{k-n} C(-s,k) C(k,n) C(d + (s+n)/N, d)` and whether it is `1`.
pub fn binomial_identity_check(d: u32, n: u32, s: u32) -> (Rational, bool) {
    assert!(n >= 1, "N must be positive");
    let mut total = int(0);
    for k in 0..=d {
        let outer = Rational::from(binomial_int(-(s as i64), k));
        for j in 0..=k {
            let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
            let top = int(d as i64) + int((s + j) as i64) / int(n as i64);
            total += int(sign) * &outer * Rational::from(binomial_int(k as i64, j)) * binomial_rational(&top, d);
        }
    }
    let ok = total == int(1);
    (total, ok)
}

/// Whether `Res_{x=0} d/dx ((1+x)^N - 1)^{-d}` vanishes.
pub fn derivative_residue_check(n: u32, d: u32) -> bool {
    assert!(n >= 1 && d >= 1, "needs N >= 1 and d >= 1");
    // ((1+x)^N - 1)^{-d} = x^{-d} U^{-d}; the derivative is x^{-d-1} (-d U^{-d} + x (U^{-d})').
    let f = reduced(n, d).int_power(-(d as i64)).expect("U(0) = N is a unit");
    let derivative = f.laurent_derivative(0, d);
    RationalField.is_zero(&derivative.residue(&[d + 1]).expect("within caps"))
}

/// `Res f_{l,d}` with `f_{l,d} = (1+x)^{N-1+Nl} / ((1+x)^N - 1)^{d+1}`.
fn recursion_residue(n: u32, l: u32, d: u32) -> Rational {
    residue_of_quotient(n, (n - 1 + n * l) as i64, d, 0)
}

/// `Res f_{l+1,d} = Res f_{l,d-1} + Res f_{l,d}` together with `Res f_{l,d} = C(l,d)/N`.
pub fn recursion_check(n: u32, l: u32, d: u32) -> bool {
    assert!(n >= 1 && d >= 1, "needs N >= 1 and d >= 1");
    let step = recursion_residue(n, l + 1, d)
        == recursion_residue(n, l, d - 1) + recursion_residue(n, l, d);
    let closed = recursion_residue(n, l, d) == Rational::from(binomial_int(l as i64, d)) / int(n as i64);
    step && closed
}

/// Inclusive grid bounds for the identity sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityBounds {
    pub residue_n: u32,
    pub residue_l: u32,
    pub residue_d: u32,
    pub residue_m: u32,
    pub binomial_d: u32,
    pub binomial_n: u32,
    pub binomial_s: u32,
}

impl Default for IdentityBounds {
    fn default() -> Self {
        IdentityBounds {
            residue_n: 8,
            residue_l: 20,
            residue_d: 6,
            residue_m: 6,
            binomial_d: 8,
            binomial_n: 6,
            binomial_s: 10,
        }
    }
}

/// Outcome of one identity sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub identity: String,
    pub checked: usize,
    /// Parameter tuples that failed, as text.
    pub failures: Vec<String>,
}

impl GridSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sweep<P, F>(identity: &str, points: Vec<P>, check: F) -> GridSummary
where
    P: Send + Sync + std::fmt::Debug,
    F: Fn(&P) -> bool + Send + Sync,
{
    let failures: Vec<String> = points
        .par_iter()
        .filter(|p| !check(p))
        .map(|p| format!("{p:?}"))
        .collect();
    GridSummary {
        identity: identity.to_string(),
        checked: points.len(),
        failures,
    }
}

/// Residue lemma over `1 <= N <= residue_n`, `l, d, m` from `0`.
pub fn residue_lemma_grid(b: &IdentityBounds) -> GridSummary {
    let mut points = Vec::new();
    for n in 1..=b.residue_n {
        for l in 0..=b.residue_l {
            for d in 0..=b.residue_d {
                for m in 0..=b.residue_m {
                    points.push((n, l, d, m));
                }
            }
        }
    }
    sweep("residue_lemma", points, |&(n, l, d, m)| residue_lemma_check(n, l, d, m).2)
}

/// Binomial identity over `d, s` from `0` and `1 <= N <= binomial_n`.
pub fn binomial_identity_grid(b: &IdentityBounds) -> GridSummary {
    let mut points = Vec::new();
    for d in 0..=b.binomial_d {
        for n in 1..=b.binomial_n {
            for s in 0..=b.binomial_s {
                points.push((d, n, s));
            }
        }
    }
    sweep("binomial_identity", points, |&(d, n, s)| binomial_identity_check(d, n, s).1)
}

/// Residue of a derivative, over the residue grid's `N` and `d >= 1`.
pub fn derivative_residue_grid(b: &IdentityBounds) -> GridSummary {
    let mut points = Vec::new();
    for n in 1..=b.residue_n {
        for d in 1..=b.residue_d.max(1) {
            points.push((n, d));
        }
    }
    sweep("derivative_residue", points, |&(n, d)| derivative_residue_check(n, d))
}

/// The `f_{l,d}` recursion over the residue grid with `d >= 1`.
pub fn recursion_grid(b: &IdentityBounds) -> GridSummary {
    let mut points = Vec::new();
    for n in 1..=b.residue_n {
        for l in 0..=b.residue_l {
            for d in 1..=b.residue_d.max(1) {
                points.push((n, l, d));
            }
        }
    }
    sweep("residue_recursion", points, |&(n, l, d)| recursion_check(n, l, d))
}

/// Every sweep, in a fixed order.
pub fn run_all(b: &IdentityBounds) -> Vec<GridSummary> {
    vec![
        residue_lemma_grid(b),
        binomial_identity_grid(b),
        derivative_residue_grid(b),
        recursion_grid(b),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn residue_lemma_examples() {
        assert_eq!(residue_lemma_check(2, 0, 0, 0), (rat(1, 2), rat(1, 2), true));
        assert_eq!(residue_lemma_check(1, 5, 2, 0), (int(10), int(10), true));
        assert_eq!(residue_lemma_check(2, 0, 1, 1), (rat(1, 4), rat(1, 4), true));
    }

    #[test]
    fn binomial_identity_examples() {
        for n in 1..5 {
            for s in 0..5 {
                assert_eq!(binomial_identity_check(0, n, s), (int(1), true));
            }
        }
        assert!(binomial_identity_check(2, 2, 1).1);
        assert!(binomial_identity_check(3, 5, 4).1);
    }

    #[test]
    fn derivative_residue_examples() {
        assert!(derivative_residue_check(2, 1));
        assert!(derivative_residue_check(3, 2));
        assert!(derivative_residue_check(1, 3));
    }

    #[test]
    fn residue_lemma_by_direct_laurent_expansion() {
        // Independent route for N = 2: (1+x)/((1+x)^2 - 1)^{d+1} = (1+x) x^{-d-1} (2+x)^{-d-1};
        // expand (2+x)^{-k} = sum_j C(-k, j) 2^{-k-j} x^j by hand.
        for d in 0..5u32 {
            let k = d as i64 + 1;
            let coeff = |j: u32| Rational::from(binomial_int(-k, j)) / (int(2).pow((k + j as i64) as i32));
            let want = coeff(d) + if d > 0 { coeff(d - 1) } else { int(0) };
            assert_eq!(residue_lemma_check(2, 0, d, 0).0, want, "d={d}");
        }
    }

    #[test]
    fn small_grids_pass() {
        let b = IdentityBounds {
            residue_n: 3,
            residue_l: 4,
            residue_d: 3,
            residue_m: 3,
            binomial_d: 3,
            binomial_n: 3,
            binomial_s: 3,
        };
        for summary in run_all(&b) {
            assert!(summary.passed(), "{summary:?}");
            assert!(summary.checked > 0);
        }
    }
}
