//! Truncated multivariate power series over a [`Field`].
//!
//! A series carries per-variable exponent caps; every product is re-truncated
//! to them, so the type models `F[[x_1..x_n]] / (x_1^(c_1+1), ..., x_n^(c_n+1))`.
//!
//! Laurent data never appears as a first-class value. A function with a pole
//! of order `p_i` in `x_i` is carried as its cleared numerator `x^p * f`, and
//! [`TruncatedSeries::residue`] reads off the coefficient of `x^(p-1)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::{int, Field};

#[derive(Clone, Debug)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    caps: Vec<u32>,
    terms: BTreeMap<Vec<u32>, F::Elem>,
}

impl<F: Field> PartialEq for TruncatedSeries<F> {
    fn eq(&self, other: &Self) -> bool {
        self.caps == other.caps && self.terms == other.terms
    }
}

impl<F: Field> TruncatedSeries<F> {
    pub fn zero(field: &F, caps: &[u32]) -> Self {
        TruncatedSeries {
            field: field.clone(),
            caps: caps.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, caps: &[u32], c: F::Elem) -> Self {
        Self::monomial(field, caps, &vec![0; caps.len()], c)
    }

    pub fn one(field: &F, caps: &[u32]) -> Self {
        Self::constant(field, caps, field.one())
    }

    /// `c * x^exps`, or zero when `exps` exceeds the caps.
    pub fn monomial(field: &F, caps: &[u32], exps: &[u32], c: F::Elem) -> Self {
        let mut s = Self::zero(field, caps);
        if s.within_caps(exps) && !field.is_zero(&c) {
            s.terms.insert(exps.to_vec(), c);
        }
        s
    }

    /// The variable `x_var` (0-based).
    pub fn variable(field: &F, caps: &[u32], var: usize) -> Self {
        let mut e = vec![0; caps.len()];
        e[var] = 1;
        Self::monomial(field, caps, &e, field.one())
    }

    /// `sum_k coeffs[k] * x_var^k`, truncated.
    pub fn univariate(field: &F, caps: &[u32], var: usize, coeffs: &[F::Elem]) -> Self {
        let mut s = Self::zero(field, caps);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; caps.len()];
            e[var] = k as u32;
            s.add_term(&e, c);
        }
        s
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F::Elem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn within_caps(&self, e: &[u32]) -> bool {
        e.len() == self.caps.len() && e.iter().zip(&self.caps).all(|(a, c)| a <= c)
    }

    fn add_term(&mut self, e: &[u32], c: &F::Elem) {
        if !self.within_caps(e) || self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(e) {
            Some(v) => {
                let sum = self.field.add(v, c);
                if self.field.is_zero(&sum) {
                    self.terms.remove(e);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(e.to_vec(), c.clone());
            }
        }
    }

    pub fn constant_term(&self) -> F::Elem {
        self.terms
            .get(&vec![0; self.caps.len()])
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Coefficient of `x^e`; `OutOfCaps` if `e` is not representable.
    pub fn coefficient(&self, e: &[u32]) -> Result<F::Elem> {
        if !self.within_caps(e) {
            return Err(Error::OutOfCaps {
                exponent: e.to_vec(),
                caps: self.caps.clone(),
            });
        }
        Ok(self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero()))
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.caps, other.caps, "series with different truncation caps");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, &self.caps);
        for (e, v) in &self.terms {
            out.add_term(e, &self.field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(&self.field, &self.caps);
        let mut e = vec![0u32; self.caps.len()];
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &other.terms {
                for i in 0..e.len() {
                    e[i] = ea[i] + eb[i];
                    if e[i] > self.caps[i] {
                        continue 'inner;
                    }
                }
                out.add_term(&e, &self.field.mul(ca, cb));
            }
        }
        out
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        let c = self.constant_term();
        if self.field.is_zero(&c) {
            return Err(Error::NonUnit);
        }
        let c_inv = self.field.inv(&c)?;
        // s = c (1 + n) with n nilpotent under truncation; 1/(1+n) = sum (-n)^k.
        let minus_n = Self::one(&self.field, &self.caps).sub(&self.scale(&c_inv));
        let mut acc = Self::one(&self.field, &self.caps);
        let mut power = acc.clone();
        loop {
            power = power.mul(&minus_n);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c_inv))
    }

    /// `s^k` for any integer `k`; negative `k` requires a unit.
    pub fn int_power(&self, k: i64) -> Result<Self> {
        let base = if k < 0 {
            self.invert_unit()?
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.field, &self.caps);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative in `x_var`. Exact for coefficients below the cap
    /// in `var`; the cap coefficient is lost by truncation.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.field, &self.caps);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(&d, &self.field.scale(c, &int(e[var] as i64)));
        }
        out
    }

    /// Given `self = x_var^p * f`, returns the cleared numerator of `d f / d x_var`
    /// with pole order `p + 1`: `-p * self + x_var * d(self)/d x_var`.
    pub fn laurent_derivative(&self, var: usize, pole: u32) -> Self {
        let x = Self::variable(&self.field, &self.caps, var);
        let lowered = self.scale(&self.field.from_int(-(pole as i64)));
        lowered.add(&x.mul(&self.derivative(var)))
    }

    /// Residue at the origin of `f = self / prod x_i^(pole_i)`: the coefficient of
    /// `prod x_i^(pole_i - 1)`, zero when some `pole_i` is zero.
    pub fn residue(&self, pole: &[u32]) -> Result<F::Elem> {
        if pole.contains(&0) {
            return Ok(self.field.zero());
        }
        let e: Vec<u32> = pole.iter().map(|p| p - 1).collect();
        self.coefficient(&e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Rational, RationalField};
    use proptest::prelude::*;

    const Q: RationalField = RationalField;

    fn one_var(coeffs: &[i64], cap: u32) -> TruncatedSeries<RationalField> {
        let c: Vec<Rational> = coeffs.iter().map(|&x| int(x)).collect();
        TruncatedSeries::univariate(&Q, &[cap], 0, &c)
    }

    #[test]
    fn invert_unit_examples() {
        let s = one_var(&[1, 1], 3);
        assert_eq!(s.invert_unit().unwrap(), one_var(&[1, -1, 1, -1], 3));
        let two = one_var(&[2], 3);
        assert_eq!(
            two.invert_unit().unwrap(),
            TruncatedSeries::constant(&Q, &[3], rat(1, 2))
        );
        let x = one_var(&[0, 1], 3);
        assert_eq!(x.invert_unit(), Err(Error::NonUnit));
    }

    #[test]
    fn int_power_examples() {
        let s = one_var(&[1, 1], 2);
        assert_eq!(s.int_power(-2).unwrap(), one_var(&[1, -2, 3], 2));
        assert_eq!(one_var(&[0, 5, 7], 2).int_power(0).unwrap(), one_var(&[1], 2));
        // ((1+x)^2 - 1)/x = 2 + x, inverted: 1/2 - x/4 + x^2/8.
        let q = one_var(&[2, 1], 2).int_power(-1).unwrap();
        assert_eq!(q.coefficient(&[0]).unwrap(), rat(1, 2));
        assert_eq!(q.coefficient(&[1]).unwrap(), rat(-1, 4));
        assert_eq!(q.coefficient(&[2]).unwrap(), rat(1, 8));
        assert_eq!(one_var(&[0, 1], 2).int_power(-1), Err(Error::NonUnit));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(one_var(&[1, 1], 4).coefficient(&[0]).unwrap(), int(1));
        let p = one_var(&[1, 1], 5).int_power(5).unwrap();
        assert_eq!(p.coefficient(&[2]).unwrap(), int(10));
        let caps = [2, 2];
        let a = TruncatedSeries::one(&Q, &caps).add(&TruncatedSeries::variable(&Q, &caps, 0));
        let b = TruncatedSeries::one(&Q, &caps).add(&TruncatedSeries::variable(&Q, &caps, 1));
        assert_eq!(a.mul(&b).coefficient(&[1, 1]).unwrap(), int(1));
        assert!(matches!(
            a.coefficient(&[3, 0]),
            Err(Error::OutOfCaps { .. })
        ));
    }

    #[test]
    fn residue_with_cleared_pole() {
        // f = (1+x)/(x (2+x)); cleared numerator (1+x)/(2+x), pole order 1.
        let num = one_var(&[1, 1], 3).mul(&one_var(&[2, 1], 3).invert_unit().unwrap());
        assert_eq!(num.residue(&[1]).unwrap(), rat(1, 2));
        assert_eq!(num.residue(&[0]).unwrap(), int(0));
    }

    fn series_strategy(
        caps: Vec<u32>,
    ) -> impl Strategy<Value = TruncatedSeries<RationalField>> {
        let n: usize = caps.iter().map(|&c| c as usize + 1).product();
        prop::collection::vec((-6i64..=6, 1i64..=4), n).prop_map(move |cs| {
            let mut s = TruncatedSeries::zero(&Q, &caps);
            let mut idx = 0;
            let mut e = vec![0u32; caps.len()];
            loop {
                let (a, b) = cs[idx];
                s.add_term(&e, &rat(a, b));
                idx += 1;
                let mut i = 0;
                loop {
                    if i == caps.len() {
                        return s;
                    }
                    e[i] += 1;
                    if e[i] <= caps[i] {
                        break;
                    }
                    e[i] = 0;
                    i += 1;
                }
            }
        })
    }

    fn unit_strategy() -> impl Strategy<Value = TruncatedSeries<RationalField>> {
        (series_strategy(vec![3, 2]), 1i64..=5).prop_map(|(s, c)| {
            let shift = TruncatedSeries::constant(&Q, &[3, 2], int(c) - s.constant_term());
            s.add(&shift)
        })
    }

    proptest! {
        #[test]
        fn inverse_times_self_is_one(s in unit_strategy()) {
            let inv = s.invert_unit().unwrap();
            prop_assert_eq!(inv.mul(&s), TruncatedSeries::one(&Q, &[3, 2]));
        }

        #[test]
        fn powers_add(s in unit_strategy(), a in -4i64..=4, b in -4i64..=4) {
            let lhs = s.int_power(a).unwrap().mul(&s.int_power(b).unwrap());
            prop_assert_eq!(lhs, s.int_power(a + b).unwrap());
        }

        #[test]
        fn coefficient_is_linear(
            s in series_strategy(vec![2, 2]),
            t in series_strategy(vec![2, 2]),
            a in -5i64..=5,
            b in -5i64..=5,
            e0 in 0u32..=2,
            e1 in 0u32..=2,
        ) {
            let combo = s.scale(&int(a)).add(&t.scale(&int(b)));
            let e = [e0, e1];
            let lhs = combo.coefficient(&e).unwrap();
            let rhs = int(a) * s.coefficient(&e).unwrap() + int(b) * t.coefficient(&e).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn residue_of_derivative_vanishes(s in series_strategy(vec![6]), pole in 1u32..=5) {
            let d = s.laurent_derivative(0, pole);
            prop_assert_eq!(d.residue(&[pole + 1]).unwrap(), int(0));
        }
    }
}
