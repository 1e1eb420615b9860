//! Cohomology of `Sym^{d_1} C x ... x Sym^{d_r} C` as a graded-commutative
//! algebra.
//!
//! Each factor `i` contributes one even generator `x_i` (degree 2) and `2g`
//! odd generators `y_i^1 .. y_i^{2g}` (degree 1). The theta class of a factor
//! is never a generator of its own: [`GrassmannElement::theta`] expands it as
//! `sum_j y_i^j y_i^{j+g}`, and integration only knows the pair rule.
//!
//! Odd generators are bits of a `u64` in factor-major order
//! (`y_1^1 .. y_1^{2g}, y_2^1, ...`); a set bit pattern always denotes the
//! product in increasing bit order, and any reordering sign is folded into
//! the coefficient. Terms of real degree above `2 d_i` in some factor are
//! dropped on construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactnum::{int, Field};

/// Factor count, genus and per-factor degrees `d_i` of a product of symmetric powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannLayout {
    g: usize,
    degrees: Vec<u32>,
}

impl GrassmannLayout {
    pub fn new(g: usize, degrees: &[u32]) -> Result<Arc<Self>> {
        if degrees.is_empty() {
            return Err(Error::Precondition("at least one factor required".into()));
        }
        if 2 * g * degrees.len() > 64 {
            return Err(Error::Precondition(format!(
                "{} odd generators exceed the 64-bit encoding",
                2 * g * degrees.len()
            )));
        }
        Ok(Arc::new(GrassmannLayout {
            g,
            degrees: degrees.to_vec(),
        }))
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    fn factor_mask(&self, q: usize) -> u64 {
        if self.g == 0 {
            return 0;
        }
        let width = 2 * self.g;
        (((1u128 << width) - 1) as u64) << (q * width)
    }

    /// Bit for `y_i^j` (both 1-based).
    fn odd_bit(&self, i: usize, j: usize) -> u32 {
        ((i - 1) * 2 * self.g + (j - 1)) as u32
    }

    fn admits(&self, m: &Monomial) -> bool {
        (0..self.r()).all(|q| {
            let odd = (m.odd & self.factor_mask(q)).count_ones();
            2 * m.x[q] + odd <= 2 * self.degrees[q]
        })
    }
}

/// `prod x_i^{x[i]}` times the odd generators in `odd`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: SmallVec<[u32; 4]>,
    pub odd: u64,
}

impl Monomial {
    fn unit(r: usize) -> Self {
        Monomial {
            x: SmallVec::from_elem(0, r),
            odd: 0,
        }
    }

    pub fn is_even(&self) -> bool {
        self.odd.count_ones().is_multiple_of(2)
    }
}

/// True when moving the odd generators of `right` past those of `left`
/// into increasing order is an odd permutation.
fn reorder_is_odd(left: u64, right: u64) -> bool {
    let mut inversions = 0u32;
    let mut rest = right;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        inversions += (left >> bit >> 1).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

#[derive(Clone, Debug)]
pub struct GrassmannElement<F: Field> {
    layout: Arc<GrassmannLayout>,
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for GrassmannElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.layout == other.layout && self.terms == other.terms
    }
}

impl<F: Field> GrassmannElement<F> {
    pub fn zero(field: &F, layout: &Arc<GrassmannLayout>) -> Self {
        GrassmannElement {
            layout: layout.clone(),
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, layout: &Arc<GrassmannLayout>, c: F::Elem) -> Self {
        let mut out = Self::zero(field, layout);
        out.add_term(Monomial::unit(layout.r()), c);
        out
    }

    pub fn one(field: &F, layout: &Arc<GrassmannLayout>) -> Self {
        Self::constant(field, layout, field.one())
    }

    /// `x_i`, 1-based.
    pub fn x(field: &F, layout: &Arc<GrassmannLayout>, i: usize) -> Self {
        Self::x_polynomial(field, layout, i, &[field.zero(), field.one()])
    }

    /// `sum_k coeffs[k] x_i^k`, 1-based factor index.
    pub fn x_polynomial(
        field: &F,
        layout: &Arc<GrassmannLayout>,
        i: usize,
        coeffs: &[F::Elem],
    ) -> Self {
        assert!((1..=layout.r()).contains(&i), "factor index {i} out of range");
        let mut out = Self::zero(field, layout);
        let cap = layout.degrees[i - 1] as usize;
        for (k, c) in coeffs.iter().enumerate().take(cap + 1) {
            let mut m = Monomial::unit(layout.r());
            m.x[i - 1] = k as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    /// The odd generator `y_i^j`, with `1 <= i <= r` and `1 <= j <= 2g`.
    pub fn y(field: &F, layout: &Arc<GrassmannLayout>, i: usize, j: usize) -> Self {
        assert!((1..=layout.r()).contains(&i), "factor index {i} out of range");
        assert!((1..=2 * layout.g).contains(&j), "odd index {j} out of range");
        let mut m = Monomial::unit(layout.r());
        m.odd = 1u64 << layout.odd_bit(i, j);
        let mut out = Self::zero(field, layout);
        out.add_term(m, field.one());
        out
    }

    /// `theta_i = sum_{j=1}^{g} y_i^j y_i^{j+g}`; zero in genus 0.
    pub fn theta(field: &F, layout: &Arc<GrassmannLayout>, i: usize) -> Self {
        let mut out = Self::zero(field, layout);
        for j in 1..=layout.g {
            let pair = Self::y(field, layout, i, j).mul_unchecked(&Self::y(field, layout, i, j + layout.g));
            out = out.add(&pair);
        }
        out
    }

    pub fn layout(&self) -> &Arc<GrassmannLayout> {
        &self.layout
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> F::Elem {
        self.terms
            .get(&Monomial::unit(self.layout.r()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Every term has an even number of odd generators.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(Monomial::is_even)
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) || !self.layout.admits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = self.field.add(slot.get(), &c);
                if self.field.is_zero(&sum) {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.layout, &other.layout) || self.layout == other.layout {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.layout, other.layout
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.layout, other.layout);
        let (mut out, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
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
        let mut out = Self::zero(&self.field, &self.layout);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), self.field.mul(v, c));
        }
        out
    }

    /// Graded-commutative product, re-truncated to the layout.
    pub fn g_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let layout = &self.layout;
        let r = layout.r();
        let mut out = Self::zero(&self.field, layout);
        for (ma, ca) in &self.terms {
            'inner: for (mb, cb) in &other.terms {
                if ma.odd & mb.odd != 0 {
                    continue;
                }
                let odd = ma.odd | mb.odd;
                let mut x: SmallVec<[u32; 4]> = SmallVec::with_capacity(r);
                for q in 0..r {
                    let e = ma.x[q] + mb.x[q];
                    let bits = (odd & layout.factor_mask(q)).count_ones();
                    if 2 * e + bits > 2 * layout.degrees[q] {
                        continue 'inner;
                    }
                    x.push(e);
                }
                let mut c = self.field.mul(ca, cb);
                if reorder_is_odd(ma.odd, mb.odd) {
                    c = self.field.neg(&c);
                }
                out.add_term(Monomial { x, odd }, c);
            }
        }
        out
    }

    /// `exp(a) = sum_k a^k / k!` for even `a` without constant term; the sum is
    /// finite because such elements are nilpotent under truncation.
    pub fn g_exp(&self) -> Result<Self> {
        if !self.field.is_zero(&self.constant_term()) {
            return Err(Error::Precondition("exp needs a zero constant term".into()));
        }
        if !self.is_even() {
            return Err(Error::Precondition("exp needs an even element".into()));
        }
        let mut acc = Self::one(&self.field, &self.layout);
        let mut term = acc.clone();
        let mut k = 1i64;
        loop {
            term = term.mul_unchecked(self);
            if term.is_zero() {
                return Ok(acc);
            }
            term = term.scale(&self.field.from_rational(&(int(1) / int(k))));
            acc = acc.add(&term);
            k += 1;
        }
    }

    /// Inverse of an element with nonzero constant term.
    pub fn g_inv(&self) -> Result<Self> {
        let c = self.constant_term();
        if self.field.is_zero(&c) {
            return Err(Error::NonUnit);
        }
        let c_inv = self.field.inv(&c)?;
        let one = Self::one(&self.field, &self.layout);
        let minus_n = one.sub(&self.scale(&c_inv));
        let mut acc = one.clone();
        let mut power = one;
        loop {
            power = power.mul_unchecked(&minus_n);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c_inv))
    }

    /// `a^k` for any integer `k`; negative `k` requires a unit.
    pub fn int_power(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.g_inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.field, &self.layout);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }

    /// Top-degree integral over the product of symmetric powers.
    ///
    /// A term survives only if in every factor `i` its odd part is `n_i`
    /// complete pairs `{y_i^j, y_i^{j+g}}` and its `x_i` exponent is
    /// `d_i - n_i`. Such a term integrates to the sign that sorts its odd
    /// generators into `y^{j_1} y^{j_1+g} y^{j_2} y^{j_2+g} ...` order.
    pub fn integrate(&self) -> F::Elem {
        let mut total = self.field.zero();
        for (m, c) in &self.terms {
            if let Some(negative) = self.top_sign(m) {
                total = if negative {
                    self.field.sub(&total, c)
                } else {
                    self.field.add(&total, c)
                };
            }
        }
        total
    }

    /// `integrate(self * other)` without materializing the product: only pairs
    /// of terms that meet in top degree are multiplied.
    pub fn integrate_product(&self, other: &Self) -> Result<F::Elem> {
        self.check_context(other)?;
        let layout = &self.layout;
        let r = layout.r();
        let mut total = self.field.zero();
        for (ma, ca) in &self.terms {
            'inner: for (mb, cb) in &other.terms {
                if ma.odd & mb.odd != 0 {
                    continue;
                }
                let odd = ma.odd | mb.odd;
                let mut x: SmallVec<[u32; 4]> = SmallVec::with_capacity(r);
                for q in 0..r {
                    let e = ma.x[q] + mb.x[q];
                    let bits = (odd & layout.factor_mask(q)).count_ones();
                    if 2 * e + bits != 2 * layout.degrees[q] {
                        continue 'inner;
                    }
                    x.push(e);
                }
                let Some(negative) = self.top_sign(&Monomial { x, odd }) else {
                    continue;
                };
                let c = self.field.mul(ca, cb);
                total = if negative ^ reorder_is_odd(ma.odd, mb.odd) {
                    self.field.sub(&total, &c)
                } else {
                    self.field.add(&total, &c)
                };
            }
        }
        Ok(total)
    }

    /// `None` when the monomial integrates to zero, else whether its sign is negative.
    fn top_sign(&self, m: &Monomial) -> Option<bool> {
        let layout = &self.layout;
        let g = layout.g;
        let mut negative = false;
        for q in 0..layout.r() {
            let bits = if g == 0 { 0 } else { (m.odd >> (q * 2 * g)) & ((1u64 << (2 * g)) - 1) };
            let low = if g == 0 { 0 } else { bits & ((1u64 << g) - 1) };
            let high = if g == 0 { 0 } else { bits >> g };
            if low != high {
                return None;
            }
            let pairs = low.count_ones();
            if pairs > layout.degrees[q] || m.x[q] != layout.degrees[q] - pairs {
                return None;
            }
            if (pairs * pairs.saturating_sub(1) / 2) % 2 == 1 {
                negative = !negative;
            }
        }
        Some(negative)
    }
}
