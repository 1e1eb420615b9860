use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Kunneth component of a Chern class of the dual universal subsheaf.
///
/// Indices are 1-based: `A(i)` is `a_i`, `B(i, j)` is `b_i^j`, `F(i)` is `f_i`.
/// The derived ordering (all `a` before all `b` before all `f`) is the
/// canonical factor order of a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassAtom {
    A(usize),
    B(usize, usize),
    F(usize),
}

impl ClassAtom {
    /// Cohomological degree: `a_i -> 2i`, `b_i^j -> 2i - 1`, `f_i -> 2i - 2`.
    pub fn degree(&self) -> u32 {
        match *self {
            ClassAtom::A(i) => 2 * i as u32,
            ClassAtom::B(i, _) => 2 * i as u32 - 1,
            ClassAtom::F(i) => 2 * i as u32 - 2,
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, ClassAtom::B(..))
    }

    pub fn validate(&self, r: usize, g: usize) -> Result<()> {
        let ok = match *self {
            ClassAtom::A(i) => (1..=r).contains(&i),
            ClassAtom::B(i, j) => (1..=r).contains(&i) && (1..=2 * g).contains(&j),
            ClassAtom::F(i) => (2..=r).contains(&i),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("{self} with r = {r}, g = {g}")))
        }
    }
}

impl fmt::Display for ClassAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassAtom::A(i) => write!(f, "a{i}"),
            ClassAtom::B(i, j) => write!(f, "b{i}_{j}"),
            ClassAtom::F(i) => write!(f, "f{i}"),
        }
    }
}

/// A product of class atoms in canonical order, with positive exponents.
/// Odd atoms never repeat (their squares vanish).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassMonomial(Vec<(ClassAtom, u32)>);

impl ClassMonomial {
    pub fn unit() -> Self {
        ClassMonomial(Vec::new())
    }

    pub fn atom(a: ClassAtom) -> Self {
        ClassMonomial(vec![(a, 1)])
    }

    pub fn factors(&self) -> &[(ClassAtom, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(a, e)| a.degree() * e).sum()
    }

    /// `self * other` brought to canonical order: `None` if it vanishes,
    /// else the product and whether reordering flipped the sign.
    fn times(&self, other: &Self) -> Option<(Self, bool)> {
        let mut negative = false;
        for (b, _) in other.0.iter().filter(|(b, _)| b.is_odd()) {
            if self.0.iter().any(|(a, _)| a == b) {
                return None;
            }
            let passed = self.0.iter().filter(|(a, _)| a.is_odd() && a > b).count();
            negative ^= passed % 2 == 1;
        }
        let mut merged: BTreeMap<ClassAtom, u32> = self.0.iter().copied().collect();
        for &(b, e) in &other.0 {
            *merged.entry(b).or_insert(0) += e;
        }
        Some((ClassMonomial(merged.into_iter().collect()), negative))
    }
}

impl fmt::Display for ClassMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (a, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An integer polynomial in the `a`, `b`, `f` classes, in expanded canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsertionPolynomial {
    terms: BTreeMap<ClassMonomial, BigInt>,
}

impl InsertionPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::from_terms([(BigInt::from(c), ClassMonomial::unit())])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn atom(a: ClassAtom) -> Self {
        Self::from_terms([(BigInt::one(), ClassMonomial::atom(a))])
    }

    pub fn a(i: usize) -> Self {
        Self::atom(ClassAtom::A(i))
    }

    pub fn b(i: usize, j: usize) -> Self {
        Self::atom(ClassAtom::B(i, j))
    }

    pub fn f(i: usize) -> Self {
        Self::atom(ClassAtom::F(i))
    }

    /// Pure `a`-class monomial `prod a_i^{exps[i-1]}`.
    pub fn a_monomial(exps: &[u32]) -> Self {
        let factors = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (ClassAtom::A(i + 1), e))
            .collect();
        Self::from_terms([(BigInt::one(), ClassMonomial(factors))])
    }

    pub fn from_terms<I: IntoIterator<Item = (BigInt, ClassMonomial)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (c, m) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: ClassMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (v * c, m.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.times(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The common cohomological degree of all terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Result<Option<u32>> {
        let mut degrees = self.terms.keys().map(ClassMonomial::degree);
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        match degrees.find(|&d| d != first) {
            Some(other) => Err(Error::MixedDegree { first, other }),
            None => Ok(Some(first)),
        }
    }

    pub fn is_pure_a(&self) -> bool {
        self.atoms().all(|a| matches!(a, ClassAtom::A(_)))
    }

    pub fn atoms(&self) -> impl Iterator<Item = ClassAtom> + '_ {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(a, _)| *a))
    }

    pub fn validate(&self, r: usize, g: usize) -> Result<()> {
        self.atoms().try_for_each(|a| a.validate(r, g))
    }
}

/// Canonical text form, accepted back by the insertion parser.
impl fmt::Display for InsertionPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
