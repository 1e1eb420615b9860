//! Recursive-descent parser for insertion polynomials.
//!
//! ```text
//! expr    := sign? term (sign term)*
//! term    := power ('*'? power)*
//! power   := primary ('^' integer)?
//! primary := integer | atom | '(' expr ')'
//! atom    := 'a' integer | 'b' integer '_' integer | 'f' integer
//! ```
//! Whitespace is ignored between tokens. Positions in errors are 0-based
//! character offsets into the input.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::localization::{ClassAtom, InsertionPolynomial};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Letter(char),
    Underscore,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            'a' | 'b' | 'f' => Tok::Letter(c),
            '_' => Tok::Underscore,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            other => return Err(syntax(i, format!("unexpected character '{other}'"))),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn small_int(&mut self, what: &str) -> Result<u64> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => u64::try_from(n).map_err(|_| syntax(at, format!("{what} is too large"))),
            _ => Err(syntax(at, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<InsertionPolynomial> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<InsertionPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Int(_) | Tok::Letter(_) | Tok::Open) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<InsertionPolynomial> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.offset();
            let k = self.small_int("an exponent")?;
            if k > MAX_EXPONENT as u64 {
                return Err(syntax(at, format!("exponent {k} exceeds {MAX_EXPONENT}")));
            }
            return Ok(base.pow(k as u32));
        }
        Ok(base)
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.offset();
        let k = self.small_int("an index")?;
        usize::try_from(k).map_err(|_| syntax(at, "index is too large"))
    }

    fn primary(&mut self) -> Result<InsertionPolynomial> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(InsertionPolynomial::from_terms([(n, Default::default())])),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::Close) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(Tok::Letter('a')) => Ok(InsertionPolynomial::atom(ClassAtom::A(self.index()?))),
            Some(Tok::Letter('f')) => Ok(InsertionPolynomial::atom(ClassAtom::F(self.index()?))),
            Some(Tok::Letter('b')) => {
                let i = self.index()?;
                let under = self.offset();
                if self.bump() != Some(Tok::Underscore) {
                    return Err(syntax(under, "expected '_' in b<i>_<j>"));
                }
                Ok(InsertionPolynomial::atom(ClassAtom::B(i, self.index()?)))
            }
            Some(_) => Err(syntax(at, "expected a number, a class or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` into canonical form and checks indices against `(r, g)` and
/// that all terms share one cohomological degree.
pub fn parse_polynomial(text: &str, r: usize, g: usize) -> Result<InsertionPolynomial> {
    let toks = tokenize(text)?;
    let end = text.chars().count();
    if toks.is_empty() {
        return Err(syntax(end, "empty polynomial"));
    }
    let mut parser = Parser { toks, pos: 0, end };
    let poly = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(syntax(parser.offset(), "unexpected token"));
    }
    poly.validate(r, g)?;
    poly.degree()?;
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let p = parse_polynomial("a1^8", 2, 0).unwrap();
        assert_eq!(p, InsertionPolynomial::a(1).pow(8));
        assert_eq!(p.degree().unwrap(), Some(16));
        let p = parse_polynomial("a2 + a1^2", 2, 0).unwrap();
        assert_eq!(p.terms().count(), 2);
        assert_eq!(p.degree().unwrap(), Some(4));
        assert!(matches!(parse_polynomial("a3", 2, 0), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn juxtaposition_parentheses_and_signs() {
        let p = parse_polynomial(" -2 a1 (a1^2 - a2)^2 ", 2, 0).unwrap();
        let a1 = InsertionPolynomial::a(1);
        let a2 = InsertionPolynomial::a(2);
        let want = a1.mul(&a1.pow(2).sub(&a2).pow(2)).scale(&BigInt::from(-2));
        assert_eq!(p, want);
        let q = parse_polynomial("b1_1 b1_2 * f2", 2, 1).unwrap();
        assert_eq!(q.to_string(), "b1_1*b1_2*f2");
        let swapped = parse_polynomial("b1_2 b1_1 f2", 2, 1).unwrap();
        assert_eq!(swapped, q.neg());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial("a1 + ?", 2, 0).unwrap_err(),
            Error::Syntax { position: 5, message: "unexpected character '?'".into() }
        );
        assert!(matches!(parse_polynomial("(a1", 2, 0), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_polynomial("b1 2", 2, 1), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_polynomial("a1^", 2, 0), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("", 2, 0), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_polynomial("a1 + a2", 2, 0), Err(Error::MixedDegree { .. })));
        assert!(matches!(parse_polynomial("b1_3", 2, 1), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(parse_polynomial("f1", 2, 1), Err(Error::IndexOutOfRange(_))));
    }

    fn atom_strategy(r: usize, g: usize) -> impl Strategy<Value = InsertionPolynomial> {
        prop_oneof![
            (1..=r).prop_map(InsertionPolynomial::a),
            ((1..=r), (1..=2 * g)).prop_map(|(i, j)| InsertionPolynomial::b(i, j)),
            (2..=r).prop_map(InsertionPolynomial::f),
        ]
    }

    fn poly_strategy() -> impl Strategy<Value = InsertionPolynomial> {
        let monomial = (proptest::collection::vec(atom_strategy(3, 2), 0..5), -20i64..20)
            .prop_map(|(atoms, c)| {
                atoms
                    .iter()
                    .fold(InsertionPolynomial::constant(c), |acc, a| acc.mul(a))
            });
        proptest::collection::vec(monomial, 0..5)
            .prop_map(|ms| ms.iter().fold(InsertionPolynomial::zero(), |acc, m| acc.add(m)))
    }

    proptest! {
        #[test]
        fn render_then_parse_round_trips(p in poly_strategy()) {
            let text = p.to_string();
            let toks = tokenize(&text).unwrap();
            let mut parser = Parser { toks, pos: 0, end: text.len() };
            let back = parser.expr().unwrap();
            prop_assert_eq!(parser.pos, parser.toks.len());
            prop_assert_eq!(back, p);
        }
    }
}
