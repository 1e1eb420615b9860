use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial_int, ComplexField, CyclotomicField, CyclotomicNumber, ExactField, Field, Rational,
    RootsOfUnity,
};
use crate::grassmann::{GrassmannElement, GrassmannLayout};
use crate::series::TruncatedSeries;

use super::euler::euler_inverse_in;
use super::pullback::LocusFrame;
use super::{compositions, enumerate_fixed_loci, EngineConfig, FixedLocus, InsertionPolynomial, QuotProblem};

struct LocusData<F: Field> {
    locus: FixedLocus,
    frame: LocusFrame<F>,
    euler: GrassmannElement<F>,
}

/// Localization sums for one problem and one value of `h`.
///
/// Construction computes the inverse Euler class of every fixed locus once;
/// each evaluation then only pulls back the insertion and integrates.
pub struct LocalizationEngine<F: RootsOfUnity> {
    problem: QuotProblem,
    field: F,
    loci: Vec<LocusData<F>>,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl<F: RootsOfUnity> LocalizationEngine<F> {
    pub fn with_field(problem: &QuotProblem, cfg: &EngineConfig, field: F) -> Result<Self> {
        if field.order() != problem.n() {
            return Err(Error::ContextMismatch(format!(
                "field has roots of order {}, problem needs {}",
                field.order(),
                problem.n()
            )));
        }
        let pool = if cfg.workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
            Some(Arc::new(pool))
        } else {
            None
        };
        let build = |locus: FixedLocus| -> Result<LocusData<F>> {
            let layout = GrassmannLayout::new(problem.g(), &locus.splitting)?;
            let euler = euler_inverse_in(&field, &layout, problem, &locus, cfg.h())?;
            let frame = LocusFrame::new(&field, &layout, &locus, cfg.h());
            Ok(LocusData { locus, frame, euler })
        };
        let loci = enumerate_fixed_loci(problem);
        let loci = match &pool {
            Some(pool) => pool.install(|| loci.into_par_iter().map(build).collect::<Result<Vec<_>>>())?,
            None => loci.into_iter().map(build).collect::<Result<Vec<_>>>()?,
        };
        Ok(LocalizationEngine {
            problem: *problem,
            field,
            loci,
            pool,
        })
    }

    pub fn problem(&self) -> &QuotProblem {
        &self.problem
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn loci(&self) -> impl Iterator<Item = &FixedLocus> {
        self.loci.iter().map(|l| &l.locus)
    }

    /// Checks that `m` is a valid insertion of degree `2e`. The zero
    /// polynomial is accepted in any degree.
    pub fn check_insertion(&self, m: &InsertionPolynomial) -> Result<()> {
        let p = &self.problem;
        m.validate(p.r(), p.g())?;
        if p.e() < 0 {
            return Err(Error::Precondition(format!(
                "expected dimension {} of {p} is negative",
                p.e()
            )));
        }
        match m.degree()? {
            Some(deg) if deg as i64 != 2 * p.e() => Err(Error::DegreeMismatch {
                expected: 2 * p.e(),
                found: deg as i64,
            }),
            _ => Ok(()),
        }
    }

    /// Per-locus contributions, in lexicographic locus order.
    pub fn contributions(&self, m: &InsertionPolynomial) -> Result<Vec<(FixedLocus, F::Elem)>> {
        self.check_insertion(m)?;
        let one = |l: &LocusData<F>| -> Result<(FixedLocus, F::Elem)> {
            let value = l.frame.pullback(m).integrate_product(&l.euler)?;
            Ok((l.locus.clone(), value))
        };
        match &self.pool {
            Some(pool) => pool.install(|| self.loci.par_iter().map(one).collect()),
            None => self.loci.iter().map(one).collect(),
        }
    }

    /// The localization sum as a field element.
    pub fn integrate(&self, m: &InsertionPolynomial) -> Result<F::Elem> {
        let parts = self.contributions(m)?;
        Ok(self.field.sum(parts.iter().map(|(_, v)| v)))
    }

    /// `sum over splittings of int prod_i (x_i + l_i h)^{alpha_i} / e_T` for one
    /// subset of weights. No degree condition is imposed on `alpha`.
    pub fn subset_integral(&self, subset: &[usize], alpha: &[u32]) -> Result<F::Elem> {
        if alpha.len() != self.problem.r() {
            return Err(Error::Precondition(format!(
                "exponent vector has {} entries, expected {}",
                alpha.len(),
                self.problem.r()
            )));
        }
        let mut total = self.field.zero();
        for l in self.loci.iter().filter(|l| l.locus.subset == subset) {
            let mut integrand = GrassmannElement::one(&self.field, l.frame.layout());
            for (q, &a) in alpha.iter().enumerate() {
                integrand = integrand.mul_unchecked(&l.frame.shifted(q + 1).int_power(a as i64)?);
            }
            total = self.field.add(&total, &integrand.integrate_product(&l.euler)?);
        }
        Ok(total)
    }
}

impl<F: RootsOfUnity + ExactField> LocalizationEngine<F> {
    /// The intersection number, certified rational.
    pub fn evaluate(&self, m: &InsertionPolynomial) -> Result<Rational> {
        self.field.to_rational(&self.integrate(m)?)
    }
}

impl LocalizationEngine<CyclotomicField> {
    pub fn exact(problem: &QuotProblem, cfg: &EngineConfig) -> Result<Self> {
        Self::with_field(problem, cfg, CyclotomicField::new(problem.n()))
    }

    pub fn breakdown(&self, m: &InsertionPolynomial) -> Result<Breakdown> {
        let parts = self.contributions(m)?;
        let total = self.field.sum(parts.iter().map(|(_, v)| v));
        Ok(Breakdown {
            total: total.as_rational()?,
            loci: parts
                .into_iter()
                .map(|(locus, value)| LocusContribution { locus, value })
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusContribution {
    pub locus: FixedLocus,
    /// Exact value in `Q(z_N)`; individual loci are rarely rational.
    pub value: CyclotomicNumber,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Breakdown {
    pub total: Rational,
    pub loci: Vec<LocusContribution>,
}

/// Exact localization value of `m` on `p`.
pub fn evaluate(p: &QuotProblem, m: &InsertionPolynomial, cfg: &EngineConfig) -> Result<Rational> {
    LocalizationEngine::exact(p, cfg)?.evaluate(m)
}

/// Exact value with per-locus contributions.
pub fn evaluate_with_breakdown(
    p: &QuotProblem,
    m: &InsertionPolynomial,
    cfg: &EngineConfig,
) -> Result<Breakdown> {
    LocalizationEngine::exact(p, cfg)?.breakdown(m)
}

/// Floating-point localization value; for quick smoke runs only.
pub fn evaluate_approx(p: &QuotProblem, m: &InsertionPolynomial, cfg: &EngineConfig) -> Result<Complex64> {
    LocalizationEngine::with_field(p, cfg, ComplexField::new(p.n()))?.integrate(m)
}

/// Exact subset integral: sum over splittings of the locus integrals of
/// `prod_i (x_i + l_i h)^{alpha_i}`, for the weights in `subset`.
pub fn subset_integral(
    p: &QuotProblem,
    subset: &[usize],
    alpha: &[u32],
    cfg: &EngineConfig,
) -> Result<CyclotomicNumber> {
    check_subset(p, subset)?;
    LocalizationEngine::exact(p, cfg)?.subset_integral(subset, alpha)
}

fn check_subset(p: &QuotProblem, subset: &[usize]) -> Result<()> {
    let ok = subset.len() == p.r()
        && subset.windows(2).all(|w| w[0] < w[1])
        && subset.iter().all(|&k| (1..=p.n()).contains(&k));
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{subset:?} is not an increasing {}-subset of 1..{}",
            p.r(),
            p.n()
        )))
    }
}

/// The normalized locus residue, computed by truncated series:
/// ```text
/// sum over splittings of Res prod_i (1+x_i)^{alpha_i + (N-1)g} / ((1+x_i)^N - 1)^{d_i+1}
///     * prod_{i<j} (1 + (l_i x_i - l_j x_j)/(l_i - l_j))^{-2(g-1)}
/// ```
pub fn locus_residue_sum(p: &QuotProblem, alpha: &[u32], subset: &[usize]) -> Result<CyclotomicNumber> {
    check_subset(p, subset)?;
    if alpha.len() != p.r() {
        return Err(Error::Precondition("exponent vector length differs from r".into()));
    }
    let field = CyclotomicField::new(p.n());
    let (r, n, g) = (p.r(), p.n(), p.g());
    let lambdas: Vec<CyclotomicNumber> = subset.iter().map(|&k| field.root_of_unity(k as i64)).collect();
    // ((1+x)^N - 1)/x
    let reduced: Vec<CyclotomicNumber> = (1..=n)
        .map(|k| field.from_rational(&binomial_int(n as i64, k as u32).into()))
        .collect();

    let mut total = field.zero();
    for splitting in compositions(p.d() as u32, r) {
        let caps = splitting.clone();
        let mut acc = TruncatedSeries::one(&field, &caps);
        for i in 0..r {
            let top = alpha[i] as i64 + ((n - 1) * g) as i64;
            let numer: Vec<CyclotomicNumber> = (0..=caps[i])
                .map(|k| field.from_rational(&binomial_int(top, k).into()))
                .collect();
            let numer = TruncatedSeries::univariate(&field, &caps, i, &numer);
            let denom = TruncatedSeries::univariate(&field, &caps, i, &reduced)
                .int_power(-(splitting[i] as i64 + 1))?;
            acc = acc.mul(&numer).mul(&denom);
        }
        for i in 0..r {
            for j in i + 1..r {
                let c = field.inv(&field.sub(&lambdas[i], &lambdas[j]))?;
                let xi = TruncatedSeries::variable(&field, &caps, i).scale(&field.mul(&lambdas[i], &c));
                let xj = TruncatedSeries::variable(&field, &caps, j).scale(&field.mul(&lambdas[j], &c));
                let linear = TruncatedSeries::one(&field, &caps).add(&xi).sub(&xj);
                acc = acc.mul(&linear.int_power(-2 * p.g_bar())?);
            }
        }
        total = field.add(&total, &acc.coefficient(&splitting)?);
    }
    Ok(total)
}
