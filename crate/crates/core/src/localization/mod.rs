//! Equivariant localization on `Quot_d(O^N, r, C)`.
//!
//! The torus acting on `O^N` with weights `z^1 h, ..., z^N h` has fixed loci
//! `Sym^{d_1} C x ... x Sym^{d_r} C`, one for each size-`r` subset of weights
//! and each ordered splitting of `d`. Every intersection number is a sum over
//! these loci of the pulled-back insertion times the inverse virtual normal
//! Euler class, integrated with the symmetric-product rules of
//! [`crate::grassmann`]. This module is an oracle independent of the closed
//! forms in [`crate::closedform`].

mod engine;
mod euler;
mod insertion;
mod pullback;

pub use engine::{
    evaluate, evaluate_approx, evaluate_with_breakdown, locus_residue_sum, subset_integral,
    Breakdown, LocalizationEngine, LocusContribution,
};
pub use euler::{euler_inverse, euler_inverse_in};
pub use insertion::{ClassAtom, ClassMonomial, InsertionPolynomial};
pub use pullback::{pullback_insertion, LocusFrame};

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};

/// Numeric data of a Quot scheme: subsheaf rank `r`, ambient rank `N`,
/// genus `g`, degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotProblem {
    r: usize,
    n: usize,
    g: usize,
    d: usize,
}

impl QuotProblem {
    pub fn new(r: usize, n: usize, g: usize, d: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidProblem("rank r must be at least 1".into()));
        }
        if n < r {
            return Err(Error::InvalidProblem(format!("N = {n} is smaller than r = {r}")));
        }
        Ok(QuotProblem { r, n, g, d })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `g - 1`.
    pub fn g_bar(&self) -> i64 {
        self.g as i64 - 1
    }

    /// Expected dimension `Nd - r(N - r)(g - 1)`.
    pub fn e(&self) -> i64 {
        let (r, n) = (self.r as i64, self.n as i64);
        n * self.d as i64 - r * (n - r) * self.g_bar()
    }

    /// `u = (-1)^{(g-1) C(r,2) + d(r-1)}`, returned as `+1` or `-1`.
    pub fn sign_u(&self) -> i64 {
        let r = self.r as i64;
        let exponent = self.g_bar() * (r * (r - 1) / 2) + self.d as i64 * (r - 1);
        if exponent.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn with_degree(&self, d: usize) -> Self {
        QuotProblem { d, ..*self }
    }
}

impl fmt::Display for QuotProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, N={}, g={}, d={})", self.r, self.n, self.g, self.d)
    }
}

/// A torus-fixed component: weights `z^k` for `k` in `subset` (1-based,
/// strictly increasing) and degree splitting `splitting`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FixedLocus {
    pub subset: Vec<usize>,
    pub splitting: Vec<u32>,
}

impl FixedLocus {
    pub fn degree(&self) -> u32 {
        self.splitting.iter().sum()
    }
}

impl fmt::Display for FixedLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        write!(
            f,
            "{{{}}} ({})",
            join(self.subset.iter().map(|k| k.to_string()).collect()),
            join(self.splitting.iter().map(|k| k.to_string()).collect())
        )
    }
}

/// Scalar backend for the engine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Floating,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "floating" | "float" => Ok(Backend::Floating),
            other => Err(Error::Config(format!("unknown backend '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineConfig {
    h: Rational,
    pub backend: Backend,
    /// Worker threads for per-locus work; `<= 1` runs inline.
    pub workers: usize,
}

impl EngineConfig {
    pub fn new(h: Rational, backend: Backend, workers: usize) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::Config("equivariant parameter h must be nonzero".into()));
        }
        Ok(EngineConfig { h, backend, workers })
    }

    pub fn with_h(h: i64) -> Result<Self> {
        Self::new(int(h), Backend::Exact, 1)
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            h: int(1),
            backend: Backend::Exact,
            workers: 1,
        }
    }
}

/// Size-`k` subsets of `1..=n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Ordered splittings of `d` into `parts` nonnegative integers, lexicographic.
pub fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(left: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(left - k, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(d, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// All fixed loci: subsets outer, splittings inner, both lexicographic.
pub fn enumerate_fixed_loci(p: &QuotProblem) -> Vec<FixedLocus> {
    let splittings = compositions(p.d as u32, p.r);
    subsets(p.n, p.r)
        .into_iter()
        .flat_map(|subset| {
            splittings.iter().map(move |s| FixedLocus {
                subset: subset.clone(),
                splitting: s.clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_dimension_and_sign() {
        let p = QuotProblem::new(2, 4, 0, 1).unwrap();
        assert_eq!(p.e(), 8);
        assert_eq!(p.sign_u(), 1);
        let p = QuotProblem::new(2, 2, 1, 1).unwrap();
        assert_eq!(p.e(), 2);
        assert_eq!(p.sign_u(), -1);
        assert_eq!(QuotProblem::new(3, 5, 2, 4).unwrap().e(), 14);
        assert!(QuotProblem::new(0, 1, 0, 0).is_err());
        assert!(QuotProblem::new(3, 2, 0, 0).is_err());
    }

    #[test]
    fn locus_enumeration() {
        let p = QuotProblem::new(1, 2, 0, 1).unwrap();
        let loci = enumerate_fixed_loci(&p);
        assert_eq!(
            loci,
            vec![
                FixedLocus { subset: vec![1], splitting: vec![1] },
                FixedLocus { subset: vec![2], splitting: vec![1] },
            ]
        );
        assert_eq!(enumerate_fixed_loci(&QuotProblem::new(2, 4, 0, 1).unwrap()).len(), 12);
        assert_eq!(enumerate_fixed_loci(&QuotProblem::new(2, 2, 0, 0).unwrap()).len(), 1);
        let loci = enumerate_fixed_loci(&QuotProblem::new(3, 5, 1, 4).unwrap());
        assert_eq!(loci.len(), 10 * 15);
        assert!(loci.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_h_is_rejected() {
        assert!(EngineConfig::with_h(0).is_err());
    }
}
