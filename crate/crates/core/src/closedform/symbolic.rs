use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, Field, Rational};
use crate::localization::{ClassAtom, InsertionPolynomial};

type Terms = BTreeMap<Vec<u32>, Rational>;

/// A polynomial `R(z_1, ..., z_r)` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPolynomialR {
    r: usize,
    terms: Terms,
}

fn insert(terms: &mut Terms, e: Vec<u32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(e.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        terms.remove(&e);
    }
}

impl SymbolicPolynomialR {
    pub fn zero(r: usize) -> Self {
        SymbolicPolynomialR { r, terms: Terms::new() }
    }

    pub fn constant(r: usize, c: Rational) -> Self {
        Self::from_terms(r, [(vec![0; r], c)])
    }

    /// `z^alpha`; not symmetric in general, for operator tests and per-monomial sums.
    pub fn monomial(alpha: &[u32]) -> Self {
        Self::from_terms(alpha.len(), [(alpha.to_vec(), Rational::one())])
    }

    /// Arbitrary terms; symmetry is not checked.
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(r: usize, terms: I) -> Self {
        let mut out = Self::zero(r);
        for (e, c) in terms {
            assert_eq!(e.len(), r, "exponent vector length");
            insert(&mut out.terms, e, c);
        }
        out
    }

    /// `sigma_i(z_1, ..., z_r)`.
    pub fn elementary(r: usize, i: usize) -> Self {
        let mut out = Self::zero(r);
        for mask in 0u64..(1 << r) {
            if mask.count_ones() as usize == i {
                let e = (0..r).map(|q| ((mask >> q) & 1) as u32).collect();
                insert(&mut out.terms, e, Rational::one());
            }
        }
        out
    }

    /// `R = P(sigma_1(z), ..., sigma_r(z))` for a pure `a`-class polynomial `P`,
    /// checked to be symmetric.
    pub fn from_insertion(p: &InsertionPolynomial, r: usize) -> Result<Self> {
        if !p.is_pure_a() {
            return Err(Error::Precondition(
                "closed forms take polynomials in the a-classes only".into(),
            ));
        }
        p.validate(r, 0)?;
        let sigmas: Vec<Self> = (0..=r).map(|i| Self::elementary(r, i)).collect();
        let mut powers: BTreeMap<(usize, u32), Self> = BTreeMap::new();
        let mut out = Self::zero(r);
        for (mono, c) in p.terms() {
            let mut term = Self::constant(r, Rational::from_integer(c.clone()));
            for &(atom, e) in mono.factors() {
                let ClassAtom::A(i) = atom else { unreachable!("pure a-class checked above") };
                let power = powers
                    .entry((i, e))
                    .or_insert_with(|| sigmas[i].pow(e))
                    .clone();
                term = term.mul(&power);
            }
            out = out.add(&term);
        }
        if !out.is_symmetric() {
            return Err(Error::Invariant("substituted polynomial is not symmetric".into()));
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            insert(&mut out.terms, e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.r);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                insert(&mut out.terms, e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.r, Rational::one()), |acc, _| acc.mul(self))
    }

    /// `dR/dz_q`, 1-based.
    pub fn partial(&self, q: usize) -> Self {
        let mut out = Self::zero(self.r);
        for (e, c) in &self.terms {
            if e[q - 1] > 0 {
                let mut e2 = e.clone();
                e2[q - 1] -= 1;
                insert(&mut out.terms, e2, c * int(e[q - 1] as i64));
            }
        }
        out
    }

    /// Invariance under every adjacent transposition of variables.
    pub fn is_symmetric(&self) -> bool {
        (1..self.r).all(|k| {
            self.terms.iter().all(|(e, c)| {
                let mut swapped = e.clone();
                swapped.swap(k - 1, k);
                self.terms.get(&swapped) == Some(c)
            })
        })
    }

    /// Total degree of each term, if uniform.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// `R(values)`.
    pub fn evaluate<F: Field>(&self, field: &F, values: &[F::Elem]) -> Result<F::Elem> {
        assert_eq!(values.len(), self.r, "point dimension");
        let max = self.terms.keys().flatten().copied().max().unwrap_or(0) as usize;
        let powers: Vec<Vec<F::Elem>> = values
            .iter()
            .map(|v| {
                let mut row = vec![field.one()];
                for k in 1..=max {
                    row.push(field.mul(&row[k - 1], v));
                }
                row
            })
            .collect();
        let mut total = field.zero();
        for (e, c) in &self.terms {
            let mut term = field.from_rational(c);
            for (q, &k) in e.iter().enumerate() {
                term = field.mul(&term, &powers[q][k as usize]);
            }
            total = field.add(&total, &term);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::RationalField;

    #[test]
    fn substitution_of_elementary_functions() {
        let p = InsertionPolynomial::a(1).pow(2).sub(&InsertionPolynomial::a(2));
        let r = SymbolicPolynomialR::from_insertion(&p, 2).unwrap();
        // (z1 + z2)^2 - z1 z2 = z1^2 + z1 z2 + z2^2
        let want = SymbolicPolynomialR::from_terms(
            2,
            [(vec![2, 0], int(1)), (vec![1, 1], int(1)), (vec![0, 2], int(1))],
        );
        assert_eq!(r, want);
        assert_eq!(r.homogeneous_degree(), Some(2));
        assert_eq!(r.evaluate(&RationalField, &[int(2), int(3)]).unwrap(), int(19));
    }

    #[test]
    fn partials() {
        let r = SymbolicPolynomialR::from_terms(2, [(vec![3, 1], int(2)), (vec![0, 2], int(5))]);
        assert_eq!(
            r.partial(1),
            SymbolicPolynomialR::from_terms(2, [(vec![2, 1], int(6))])
        );
        assert_eq!(
            r.partial(2),
            SymbolicPolynomialR::from_terms(2, [(vec![3, 0], int(2)), (vec![0, 1], int(10))])
        );
    }

    #[test]
    fn symmetry_detection() {
        assert!(SymbolicPolynomialR::elementary(3, 2).is_symmetric());
        assert!(!SymbolicPolynomialR::monomial(&[2, 1]).is_symmetric());
    }

    #[test]
    fn non_a_classes_are_rejected() {
        assert!(SymbolicPolynomialR::from_insertion(&InsertionPolynomial::f(2), 2).is_err());
    }
}
