use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::exactnum::{CyclotomicField, Field, Rational, RootsOfUnity};
use crate::grassmann::{GrassmannElement, GrassmannLayout};

use super::{ClassAtom, EngineConfig, FixedLocus, InsertionPolynomial, QuotProblem};

type Elem<F> = GrassmannElement<F>;

/// Elementary symmetric functions `sigma_0 .. sigma_k` of `values`.
fn elementary<F: Field>(field: &F, layout: &Arc<GrassmannLayout>, values: &[&Elem<F>]) -> Vec<Elem<F>> {
    let mut e = vec![Elem::one(field, layout)];
    for v in values {
        e.push(Elem::zero(field, layout));
        for k in (1..e.len()).rev() {
            let term = e[k - 1].mul_unchecked(v);
            e[k] = e[k].add(&term);
        }
    }
    e
}

/// The shifted roots `x_q + l_q h` of a fixed locus and their symmetric
/// functions, from which every class pullback is assembled.
#[derive(Clone, Debug)]
pub struct LocusFrame<F: Field> {
    field: F,
    layout: Arc<GrassmannLayout>,
    splitting: Vec<u32>,
    shifted: Vec<Elem<F>>,
    sigma: Vec<Elem<F>>,
    /// `sigma_{i;q}` at `[q][i]`.
    sigma_omit1: Vec<Vec<Elem<F>>>,
    /// `sigma_{i;a,b}` for `a < b`, at `[(a, b)][i]` (0-based keys).
    sigma_omit2: HashMap<(usize, usize), Vec<Elem<F>>>,
}

impl<F: RootsOfUnity> LocusFrame<F> {
    pub fn new(field: &F, layout: &Arc<GrassmannLayout>, locus: &FixedLocus, h: &Rational) -> Self {
        let r = layout.r();
        let hf = field.from_rational(h);
        let shifted: Vec<Elem<F>> = (1..=r)
            .map(|i| {
                let lh = field.mul(&field.root_of_unity(locus.subset[i - 1] as i64), &hf);
                Elem::x_polynomial(field, layout, i, &[lh, field.one()])
            })
            .collect();
        let pick = |skip: &[usize]| -> Vec<&Elem<F>> {
            (0..r).filter(|q| !skip.contains(q)).map(|q| &shifted[q]).collect()
        };
        let sigma = elementary(field, layout, &pick(&[]));
        let sigma_omit1 = (0..r).map(|q| elementary(field, layout, &pick(&[q]))).collect();
        let mut sigma_omit2 = HashMap::new();
        for a in 0..r {
            for b in a + 1..r {
                sigma_omit2.insert((a, b), elementary(field, layout, &pick(&[a, b])));
            }
        }
        LocusFrame {
            field: field.clone(),
            layout: layout.clone(),
            splitting: locus.splitting.clone(),
            shifted,
            sigma,
            sigma_omit1,
            sigma_omit2,
        }
    }

    pub fn layout(&self) -> &Arc<GrassmannLayout> {
        &self.layout
    }

    /// `x_q + l_q h`, 1-based.
    pub fn shifted(&self, q: usize) -> &Elem<F> {
        &self.shifted[q - 1]
    }

    fn sigma_omit2(&self, a: usize, b: usize, i: usize) -> &Elem<F> {
        &self.sigma_omit2[&(a.min(b), a.max(b))][i]
    }

    fn atom_image(&self, atom: ClassAtom) -> Elem<F> {
        let (field, layout) = (&self.field, &self.layout);
        let r = layout.r();
        let g = layout.g();
        match atom {
            ClassAtom::A(i) => self.sigma[i].clone(),
            ClassAtom::B(i, j) => (0..r).fold(Elem::zero(field, layout), |acc, q| {
                let y = Elem::y(field, layout, q + 1, j);
                acc.add(&y.mul_unchecked(&self.sigma_omit1[q][i - 1]))
            }),
            ClassAtom::F(i) => {
                let mut acc = Elem::zero(field, layout);
                for (q, &d_q) in self.splitting.iter().enumerate() {
                    let term = self.sigma_omit1[q][i - 1].scale(&field.from_int(d_q as i64));
                    acc = acc.add(&term);
                }
                for j in 1..=g {
                    for a in 0..r {
                        for b in (0..r).filter(|&b| b != a) {
                            let pair = Elem::y(field, layout, a + 1, j)
                                .mul_unchecked(&Elem::y(field, layout, b + 1, j + g));
                            acc = acc.sub(&pair.mul_unchecked(self.sigma_omit2(a, b, i - 2)));
                        }
                    }
                }
                acc
            }
        }
    }

    /// Restriction of an insertion to the locus. Indices must already be valid.
    pub fn pullback(&self, m: &InsertionPolynomial) -> Elem<F> {
        let mut images: HashMap<ClassAtom, Elem<F>> = HashMap::new();
        let mut out = Elem::zero(&self.field, &self.layout);
        for (mono, c) in m.terms() {
            let mut term = Elem::constant(&self.field, &self.layout, self.field.from_rational(&c.clone().into()));
            for &(atom, e) in mono.factors() {
                let image = images.entry(atom).or_insert_with(|| self.atom_image(atom));
                for _ in 0..e {
                    term = term.mul_unchecked(image);
                }
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term);
        }
        out
    }
}

/// Exact restriction of `m` to `locus`.
pub fn pullback_insertion(
    m: &InsertionPolynomial,
    locus: &FixedLocus,
    p: &QuotProblem,
    cfg: &EngineConfig,
) -> Result<GrassmannElement<CyclotomicField>> {
    m.validate(p.r(), p.g())?;
    let field = CyclotomicField::new(p.n());
    let layout = GrassmannLayout::new(p.g(), &locus.splitting)?;
    Ok(LocusFrame::new(&field, &layout, locus, cfg.h()).pullback(m))
}
