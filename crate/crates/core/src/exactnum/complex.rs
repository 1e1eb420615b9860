use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{Field, Rational, RootsOfUnity};
use crate::error::{Error, Result};

/// Floating-point stand-in for `Q(z_N)` inside `C`.
///
/// Only for smoke runs; rounding means results cannot certify integrality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexField {
    order: usize,
}

impl ComplexField {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        ComplexField { order }
    }
}

impl Field for ComplexField {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn is_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }

    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }

    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }

    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }

    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }

    fn inv(&self, a: &Complex64) -> Result<Complex64> {
        if self.is_zero(a) {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.inv())
        }
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn from_rational(&self, q: &Rational) -> Complex64 {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl RootsOfUnity for ComplexField {
    fn order(&self) -> usize {
        self.order
    }

    fn root_of_unity(&self, k: i64) -> Complex64 {
        let m = k.rem_euclid(self.order as i64) as f64;
        Complex64::from_polar(1.0, std::f64::consts::TAU * m / self.order as f64)
    }
}
