//! Acceptance suite: eleven criteria, all exact, one summary line each.
//!
//! Runs without the libtest harness so the summary always prints. Exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use num_integer::Integer;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use quotvi::cli::{run, Command, RunRequest};
use quotvi::closedform::{
    bees_evaluate, degree_shift_values, fl_evaluate, pontrjagin_sum, sigma_identity, vi_evaluate, vi_summand,
    SymbolicPolynomialR,
};
use quotvi::exactnum::{int, rat, Rational, RationalField};
use quotvi::identities::{binomial_identity_grid, residue_lemma_grid, IdentityBounds};
use quotvi::localization::{
    compositions, locus_residue_sum, subsets, Backend, EngineConfig, InsertionPolynomial, LocalizationEngine,
    QuotProblem,
};

/// Every exact intersection number computed anywhere in the suite, for the
/// integrality sweep.
static EVALUATED: Mutex<Vec<(String, Rational)>> = Mutex::new(Vec::new());

fn record(label: String, v: &Rational) {
    EVALUATED.lock().unwrap().push((label, v.clone()));
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    items.par_iter().map(f).reduce(Tally::default, Tally::merge)
}

/// `r in {1,2,3}`, `r <= N <= 5`, `g <= 2`, `d <= 4`, `e >= 0`.
fn grid() -> Vec<QuotProblem> {
    let mut out = Vec::new();
    for r in 1..=3 {
        for n in r..=5 {
            for g in 0..=2 {
                for d in 0..=4 {
                    let p = QuotProblem::new(r, n, g, d).unwrap();
                    if p.e() >= 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn rng_for(p: &QuotProblem, salt: u64) -> StdRng {
    let key = ((p.r() * 8 + p.n()) * 8 + p.g()) * 8 + p.d();
    StdRng::seed_from_u64(key as u64 * 1_000_003 + salt)
}

/// A random monomial in `a_1..a_r` of weighted degree `w` (`a_i` has weight `i`).
fn random_a_monomial(rng: &mut StdRng, r: usize, w: i64) -> InsertionPolynomial {
    let mut left = w as usize;
    let mut m = InsertionPolynomial::one();
    while left > 0 {
        let i = rng.gen_range(1..=r.min(left));
        m = m.mul(&InsertionPolynomial::a(i));
        left -= i;
    }
    m
}

fn a1_pow(w: i64) -> InsertionPolynomial {
    InsertionPolynomial::a(1).pow(w as u32)
}

fn odd_pairs(s: usize, g: usize) -> InsertionPolynomial {
    (1..=s).fold(InsertionPolynomial::one(), |acc, j| {
        acc.mul(&InsertionPolynomial::b(1, j)).mul(&InsertionPolynomial::b(1, j + g))
    })
}

fn engine(p: &QuotProblem, h: i64) -> LocalizationEngine<quotvi::exactnum::CyclotomicField> {
    LocalizationEngine::exact(p, &EngineConfig::with_h(h).unwrap()).unwrap()
}

fn criterion_1() -> Tally {
    par_tally(&grid(), |p| {
        let mut t = Tally::default();
        let mut rng = rng_for(p, 1);
        let eng = engine(p, 1);
        let mut polys = vec![a1_pow(p.e())];
        polys.extend((0..5).map(|_| random_a_monomial(&mut rng, p.r(), p.e())));
        for m in polys {
            let local = eng.evaluate(&m).unwrap();
            let closed = vi_evaluate(p, &m).unwrap();
            record(format!("{p} {m}"), &local);
            t.expect(local == closed, || format!("{p} {m}: localization {local}, closed form {closed}"));
        }
        t
    })
}

fn criterion_2() -> Tally {
    par_tally(&grid(), |p| {
        let mut t = Tally::default();
        let mut rng = rng_for(p, 2);
        let eng = engine(p, 1);
        let all = subsets(p.n(), p.r());
        let alphas = compositions(p.e() as u32, p.r());
        let target = int(1) / int(p.n() as i64).pow(p.r() as i32);
        for _ in 0..3 {
            let subset = &all[rng.gen_range(0..all.len())];
            let alpha = &alphas[rng.gen_range(0..alphas.len())];
            let residue = locus_residue_sum(p, alpha, subset).unwrap().as_rational();
            t.expect(residue.as_ref() == Ok(&target), || {
                format!("{p} subset {subset:?} alpha {alpha:?}: residue sum {residue:?}")
            });
            let integral = eng.subset_integral(subset, alpha).unwrap();
            let summand = vi_summand(p, &SymbolicPolynomialR::monomial(alpha), subset).unwrap();
            t.expect(integral == summand, || {
                format!("{p} subset {subset:?} alpha {alpha:?}: {integral} vs {summand}")
            });
        }
        t
    })
}

fn criterion_3() -> Tally {
    let mut cases = Vec::new();
    for n in 1..=5usize {
        for d in 0..=4usize {
            let p = QuotProblem::new(1, n, 0, d).unwrap();
            cases.push((p, a1_pow((n * (d + 1) - 1) as i64), int(1)));
        }
    }
    for p in grid().into_iter().filter(|p| p.r() == 1) {
        cases.push((p, a1_pow(p.e()), int(p.n() as i64).pow(p.g() as i32)));
    }
    cases.push((QuotProblem::new(2, 4, 0, 1).unwrap(), a1_pow(8), int(8)));
    par_tally(&cases, |(p, m, want)| {
        let mut t = Tally::default();
        let local = engine(p, 1).evaluate(m).unwrap();
        let closed = vi_evaluate(p, m).unwrap();
        record(format!("{p} {m}"), &local);
        t.expect(local == *want && closed == *want, || {
            format!("{p} {m}: want {want}, localization {local}, closed form {closed}")
        });
        t
    })
}

fn criterion_4() -> Tally {
    let vanishing = Mutex::new(0usize);
    let mut t = par_tally(&grid(), |p| {
        let mut t = Tally::default();
        let mut rng = rng_for(p, 4);
        let eng = engine(p, 1);
        for s in 1..=p.g() {
            let w = p.e() - s as i64;
            if w < 0 {
                continue;
            }
            for m in [a1_pow(w), random_a_monomial(&mut rng, p.r(), w)] {
                let full = odd_pairs(s, p.g()).mul(&m);
                let local = eng.evaluate(&full).unwrap();
                let closed = bees_evaluate(p, &m, s).unwrap();
                record(format!("{p} {full}"), &local);
                if s <= p.d() {
                    t.expect(local == closed, || format!("{p} {full}: localization {local}, closed form {closed}"));
                } else {
                    *vanishing.lock().unwrap() += 1;
                    t.expect(local.is_zero() && closed.is_zero(), || {
                        format!("{p} {full} with s > d: localization {local}, closed form {closed}")
                    });
                }
            }
        }
        t
    });
    let n = vanishing.into_inner().unwrap();
    t.expect(n > 0, || "no s > d cases were exercised".into());
    t
}

fn criterion_5() -> Tally {
    let mut t = par_tally(&grid(), |p| {
        let mut t = Tally::default();
        let mut rng = rng_for(p, 5);
        if p.r() < 2 {
            return t;
        }
        let eng = engine(p, 1);
        for l in 2..=p.r() {
            let w = p.e() - l as i64 + 1;
            if w < 0 {
                continue;
            }
            for m in [a1_pow(w), random_a_monomial(&mut rng, p.r(), w)] {
                let full = InsertionPolynomial::f(l).mul(&m);
                let local = eng.evaluate(&full).unwrap();
                let closed = fl_evaluate(p, &m, l).unwrap();
                record(format!("{p} {full}"), &local);
                t.expect(local == closed, || format!("{p} {full}: localization {local}, closed form {closed}"));
            }
        }
        t
    });
    let p = QuotProblem::new(2, 2, 1, 1).unwrap();
    let m = InsertionPolynomial::a(1);
    let local = engine(&p, 1).evaluate(&InsertionPolynomial::f(2).mul(&m)).unwrap();
    let closed = fl_evaluate(&p, &m, 2).unwrap();
    t.expect(local == int(1) && closed == int(1), || {
        format!("anchor {p} f2*a1: localization {local}, closed form {closed}")
    });
    t
}

fn criterion_6() -> Tally {
    let mut t = Tally::default();
    let mut rng = StdRng::seed_from_u64(6);
    for r in 2..=4usize {
        for l in 2..=r {
            for _ in 0..50 {
                let mut lambdas: Vec<Rational> = Vec::new();
                while lambdas.len() < r {
                    let q = rat(rng.gen_range(-60..=60), rng.gen_range(1..=12));
                    if !lambdas.contains(&q) {
                        lambdas.push(q);
                    }
                }
                let (lhs, rhs) = sigma_identity(&RationalField, &lambdas, l).unwrap();
                t.expect(lhs == rhs, || format!("r={r} l={l} at {lambdas:?}: {lhs} vs {rhs}"));
            }
        }
    }
    t
}

fn criterion_7() -> Tally {
    par_tally(&grid(), |p| {
        let mut t = Tally::default();
        let mut rng = rng_for(p, 7);
        for m in [a1_pow(p.e()), random_a_monomial(&mut rng, p.r(), p.e())] {
            let (lhs, rhs) = degree_shift_values(p, &m).unwrap();
            t.expect(lhs == rhs, || format!("{p} {m}: {lhs} vs shifted {rhs}"));
        }
        t
    })
}

fn from_grid(s: quotvi::identities::GridSummary) -> Tally {
    Tally {
        checked: s.checked,
        failures: s.failures,
    }
}

fn criterion_8() -> Tally {
    let b = IdentityBounds::default();
    assert_eq!((b.residue_n, b.residue_l, b.residue_d, b.residue_m), (8, 20, 6, 6));
    from_grid(residue_lemma_grid(&b))
}

fn criterion_9() -> Tally {
    let b = IdentityBounds::default();
    assert_eq!((b.binomial_d, b.binomial_n, b.binomial_s), (8, 6, 10));
    from_grid(binomial_identity_grid(&b))
}

fn criterion_10() -> Tally {
    let mut cases = Vec::new();
    for r in 2..=3i64 {
        for n in r..=7 {
            for g in 2..=3i64 {
                for d in 0..=7i64 {
                    let rm = n * (d - r * (g - 1)) - 1;
                    if r.gcd(&d) == 1 && (n * d).rem_euclid(r) == 1 && rm >= 0 && rm % r == 0 {
                        cases.push((r as usize, n as usize, g as usize, d as usize));
                    }
                }
            }
        }
    }
    let mut t = par_tally(&cases, |&(r, n, g, d)| {
        let mut t = Tally::default();
        let v = pontrjagin_sum(r, n, g, d);
        t.expect(matches!(&v, Ok(x) if !x.is_zero()), || format!("({r},{n},{g},{d}): {v:?}"));
        t
    });
    t.expect(!cases.is_empty(), || "no admissible cases".into());
    let anchor = pontrjagin_sum(2, 3, 2, 3);
    t.expect(anchor == Ok(int(-27)), || format!("anchor (2,3,2,3): {anchor:?}"));
    t
}

fn criterion_11() -> Tally {
    let mut t = par_tally(&grid(), |p| {
        let mut t = Tally::default();
        let mut rng = rng_for(p, 11);
        let polys = [a1_pow(p.e()), random_a_monomial(&mut rng, p.r(), p.e())];
        let values: Vec<Vec<Rational>> = [1, 2, 3]
            .iter()
            .map(|&h| {
                let eng = engine(p, h);
                polys.iter().map(|m| eng.evaluate(m).unwrap()).collect()
            })
            .collect();
        for (k, m) in polys.iter().enumerate() {
            let same = values.iter().all(|v| v[k] == values[0][k]);
            t.expect(same, || {
                format!("{p} {m}: h=1,2,3 give {}, {}, {}", values[0][k], values[1][k], values[2][k])
            });
            record(format!("{p} {m}"), &values[0][k]);
        }
        t
    });

    for (label, v) in EVALUATED.lock().unwrap().iter() {
        t.expect(v.is_integer(), || format!("{label}: {v} is not an integer"));
    }

    let requests = {
        let p = QuotProblem::new(2, 4, 0, 1).unwrap();
        let mut localize = RunRequest::new(Command::Localize).with_problem(p, "a1^8");
        localize.breakdown = true;
        let mut parallel = localize.clone();
        parallel.config = EngineConfig::new(int(1), Backend::Exact, 4).unwrap();
        let mut bees = RunRequest::new(Command::Bees).with_problem(QuotProblem::new(2, 3, 1, 2).unwrap(), "a1^5");
        bees.s = Some(1);
        let mut pontrjagin = RunRequest::new(Command::Pontrjagin);
        pontrjagin.problem = Some(QuotProblem::new(2, 3, 2, 3).unwrap());
        vec![(localize, Some(parallel)), (bees, None), (pontrjagin, None)]
    };
    for (req, twin) in requests {
        let first = run(&req).unwrap().to_json();
        let again = run(&req).unwrap().to_json();
        t.expect(first == again, || format!("{} report differs between runs", req.command));
        if let Some(twin) = twin {
            let other = run(&twin).unwrap().to_json();
            t.expect(first == other, || format!("{} report depends on worker count", req.command));
        }
    }
    t
}

fn main() -> ExitCode {
    // libtest-style flags (e.g. `--quiet`) are accepted and ignored.
    let criteria: [(&str, fn() -> Tally); 11] = [
        ("localization equals the Vafa-Intriligator sum", criterion_1),
        ("per-subset residue sums and subset integrals", criterion_2),
        ("closed-form anchors", criterion_3),
        ("odd-class formula", criterion_4),
        ("f-class formula", criterion_5),
        ("sigma identity", criterion_6),
        ("degree shift", criterion_7),
        ("residue lemma grid", criterion_8),
        ("binomial identity grid", criterion_9),
        ("Pontrjagin witness nonvanishing", criterion_10),
        ("h-invariance, integrality, deterministic reports", criterion_11),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let tally = f();
        let status = if tally.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}  {title} ({} checks, {:.1}s)",
            k + 1,
            tally.checked,
            start.elapsed().as_secs_f64()
        );
        for msg in tally.failures.iter().take(5) {
            println!("    {msg}");
        }
        if !tally.failures.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all 11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 11 criteria fail");
        ExitCode::FAILURE
    }
}
