//! Exact scalars: arbitrary-precision rationals and the cyclotomic fields
//! `Q(z_N)` in which every root-of-unity sum of the library is evaluated.
//!
//! The containers elsewhere in the crate (`series`, `grassmann`) are generic
//! over a [`Field`], which is a *context* object handing out and combining
//! element values. This keeps element values plain data while still letting
//! a field carry per-instance state such as the modulus `Phi_N`.

mod complex;
mod cyclotomic;
mod rational;

pub use complex::ComplexField;
pub use cyclotomic::{cyclotomic_polynomial, root_of_unity, CyclotomicField, CyclotomicNumber};
pub use rational::{
    binomial_int, binomial_rational, factorial, int, rat, Rational, RationalField,
};

use std::fmt::Debug;

use crate::error::Result;

/// Arithmetic in a commutative field, with elements passed by reference.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_rational(&self, q: &Rational) -> Self::Elem;

    /// False for floating-point stand-ins, where exact cancellations only hold approximately.
    fn is_exact(&self) -> bool {
        true
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&int(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    /// `a^k` for any integer `k`; negative powers need `a != 0`.
    fn pow(&self, a: &Self::Elem, k: i64) -> Result<Self::Elem> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A field containing a distinguished primitive `N`-th root of unity `z`.
pub trait RootsOfUnity: Field {
    fn order(&self) -> usize;

    /// `z^k`, with `k` taken modulo the order.
    fn root_of_unity(&self, k: i64) -> Self::Elem;
}

/// Fields whose elements can be certified rational.
pub trait ExactField: Field {
    fn to_rational(&self, a: &Self::Elem) -> Result<Rational>;
}

impl ExactField for RationalField {
    fn to_rational(&self, a: &Rational) -> Result<Rational> {
        Ok(a.clone())
    }
}

impl ExactField for CyclotomicField {
    fn to_rational(&self, a: &CyclotomicNumber) -> Result<Rational> {
        a.as_rational()
    }
}
