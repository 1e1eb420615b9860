use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, Rational, RootsOfUnity};
use crate::error::{Error, Result};

/// The `n`-th cyclotomic polynomial as integer coefficients, lowest degree first.
///
/// Obtained by dividing `x^n - 1` by `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial needs n >= 1");
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: usize, memo: &mut HashMap<usize, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let divisor = cyclotomic_memo(d, memo);
        p = exact_div_monic(&p, &divisor);
    }
    memo.insert(n, p.clone());
    p
}

/// Quotient of `a` by the monic `b`; the remainder is asserted to vanish.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_zero() {
            continue;
        }
        for i in 0..db {
            rem[k - db + i] -= &c * &b[i];
        }
        quot[k - db] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// In-place reduction of `v` modulo the monic `modulus`; truncates `v` to its degree.
fn reduce_monic(v: &mut Vec<BigInt>, modulus: &[BigInt]) {
    let deg = modulus.len() - 1;
    for k in (deg..v.len()).rev() {
        let c = std::mem::take(&mut v[k]);
        if c.is_zero() {
            continue;
        }
        for i in 0..deg {
            v[k - deg + i] -= &c * &modulus[i];
        }
    }
    v.resize(deg, BigInt::zero());
}

/// An element of `Q(z_N) = Q[x]/(Phi_N)`.
///
/// Stored as integer numerators over one positive common denominator, fully
/// reduced: `gcd(num..., den) = 1` and the zero element has `den = 1`. Two
/// elements of the same field are equal iff their representations are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn normalized(order: usize, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= g;
        }
        CyclotomicNumber { order, num, den }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coordinates in the power basis `1, z, ..., z^(deg Phi_N - 1)`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value, if every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Result<Rational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Ok(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.order, self)
    }
}

/// Renders as a polynomial in `z = exp(2 pi i / N)`, e.g. `1/2 - 3*z^2`.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
struct FieldData {
    order: usize,
    modulus: Vec<BigInt>,
    roots: Vec<Vec<BigInt>>,
}

/// The cyclotomic field `Q(z_N)`, realized as `Q[x]/(Phi_N)`.
#[derive(Clone)]
pub struct CyclotomicField {
    data: Arc<FieldData>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicField({})", self.data.order)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.data.order == other.data.order
    }
}

impl CyclotomicField {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "cyclotomic field order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let roots = (0..order)
            .map(|m| {
                let mut v = vec![BigInt::zero(); (m + 1).max(modulus.len())];
                v[m] = BigInt::one();
                reduce_monic(&mut v, &modulus);
                v
            })
            .collect();
        CyclotomicField {
            data: Arc::new(FieldData {
                order,
                modulus,
                roots,
            }),
        }
    }

    /// `deg Phi_N`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.data.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.data.modulus
    }

    /// Builds an element from power-basis coordinates (any length; reduced mod `Phi_N`).
    pub fn from_coeffs(&self, coeffs: &[Rational]) -> CyclotomicNumber {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        if num.len() < self.degree() {
            num.resize(self.degree(), BigInt::zero());
        }
        reduce_monic(&mut num, &self.data.modulus);
        CyclotomicNumber::normalized(self.data.order, num, den)
    }

    fn check(&self, a: &CyclotomicNumber) {
        debug_assert_eq!(a.order, self.data.order, "element from a different field");
    }

    /// Evaluates `Phi_N` (or any integer polynomial) at an element.
    pub fn eval_int_poly(&self, poly: &[BigInt], at: &CyclotomicNumber) -> CyclotomicNumber {
        let mut acc = self.zero();
        for c in poly.iter().rev() {
            acc = self.mul(&acc, at);
            acc = self.add(&acc, &self.from_rational(&Rational::from_integer(c.clone())));
        }
        acc
    }
}

impl Field for CyclotomicField {
    type Elem = CyclotomicNumber;

    fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.data.order,
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    fn one(&self) -> CyclotomicNumber {
        let mut z = self.zero();
        z.num[0] = BigInt::one();
        z
    }

    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        if b.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return b.clone();
        }
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return CyclotomicNumber::normalized(a.order, num, a.den.clone());
        }
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        CyclotomicNumber::normalized(a.order, num, &a.den * &b.den)
    }

    fn sub(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber {
            order: a.order,
            num: a.num.iter().map(|c| -c).collect(),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let n = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_monic(&mut prod, &self.data.modulus);
        CyclotomicNumber::normalized(a.order, prod, &a.den * &b.den)
    }

    /// Extended Euclid against `Phi_N` over `Q`.
    fn inv(&self, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<Rational> = self
            .data
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let mut r0 = modulus;
        let mut r1 = trim(a.coeffs());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, rem) = divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Phi_N is irreducible, so the gcd r0 is a nonzero constant.
        if r0.len() != 1 {
            return Err(Error::Invariant(format!(
                "gcd with Phi_{} has positive degree",
                self.data.order
            )));
        }
        let c = r0[0].clone();
        let inv: Vec<Rational> = s0.into_iter().map(|x| x / &c).collect();
        Ok(self.from_coeffs(&inv))
    }

    fn from_rational(&self, q: &Rational) -> CyclotomicNumber {
        let mut z = self.zero();
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        CyclotomicNumber::normalized(z.order, z.num, z.den)
    }
}

impl RootsOfUnity for CyclotomicField {
    fn order(&self) -> usize {
        self.data.order
    }

    fn root_of_unity(&self, k: i64) -> CyclotomicNumber {
        let m = k.rem_euclid(self.data.order as i64) as usize;
        CyclotomicNumber {
            order: self.data.order,
            num: self.data.roots[m].clone(),
            den: BigInt::one(),
        }
    }
}

/// `z_n^k` in a freshly built `Q(z_n)`.
pub fn root_of_unity(n: usize, k: i64) -> CyclotomicNumber {
    CyclotomicField::new(n).root_of_unity(k)
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    if a.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![Rational::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        let c = &rem[k] / lead;
        if c.is_zero() {
            continue;
        }
        for i in 0..=db {
            let t = &c * &b[i];
            rem[k - db + i] -= t;
        }
        quot[k - db] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}
