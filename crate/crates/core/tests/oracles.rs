//! Closed forms against the localization engine on small instances.

use quotvi::closedform::{bees_evaluate, fl_evaluate, vi_evaluate};
use quotvi::localization::{EngineConfig, InsertionPolynomial, LocalizationEngine, QuotProblem};

fn problems(max_r: usize, max_n: usize, max_g: usize, max_d: usize) -> Vec<QuotProblem> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        for n in r..=max_n {
            for g in 0..=max_g {
                for d in 0..=max_d {
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

/// `a_1^{w - k r} a_r^k` for the largest admissible `k`, plus `a_1^w`.
fn sample_insertions(r: usize, w: i64) -> Vec<InsertionPolynomial> {
    let mut out = vec![InsertionPolynomial::a(1).pow(w as u32)];
    if r > 1 && w >= r as i64 {
        let k = w / r as i64;
        out.push(
            InsertionPolynomial::a(1)
                .pow((w - k * r as i64) as u32)
                .mul(&InsertionPolynomial::a(r).pow(k as u32)),
        );
    }
    out
}

fn pairs(s: usize, g: usize) -> InsertionPolynomial {
    (1..=s).fold(InsertionPolynomial::one(), |acc, j| {
        acc.mul(&InsertionPolynomial::b(1, j)).mul(&InsertionPolynomial::b(1, j + g))
    })
}

#[test]
fn a_classes_agree() {
    for p in problems(3, 4, 2, 2) {
        let engine = LocalizationEngine::exact(&p, &EngineConfig::default()).unwrap();
        for poly in sample_insertions(p.r(), p.e()) {
            assert_eq!(engine.evaluate(&poly).unwrap(), vi_evaluate(&p, &poly).unwrap(), "{p} {poly}");
        }
    }
}

#[test]
fn b_classes_agree() {
    for p in problems(3, 4, 2, 2) {
        let engine = LocalizationEngine::exact(&p, &EngineConfig::default()).unwrap();
        for s in 1..=p.g() {
            let w = p.e() - s as i64;
            if w < 0 {
                continue;
            }
            for poly in sample_insertions(p.r(), w) {
                let insertion = pairs(s, p.g()).mul(&poly);
                let local = engine.evaluate(&insertion).unwrap();
                assert_eq!(local, bees_evaluate(&p, &poly, s).unwrap(), "{p} s={s} {insertion}");
            }
        }
    }
}

#[test]
fn f_classes_agree() {
    for p in problems(3, 4, 2, 2) {
        let engine = LocalizationEngine::exact(&p, &EngineConfig::default()).unwrap();
        for l in 2..=p.r() {
            let w = p.e() - l as i64 + 1;
            if w < 0 {
                continue;
            }
            for poly in sample_insertions(p.r(), w) {
                let insertion = InsertionPolynomial::f(l).mul(&poly);
                let local = engine.evaluate(&insertion).unwrap();
                assert_eq!(local, fl_evaluate(&p, &poly, l).unwrap(), "{p} l={l} {insertion}");
            }
        }
    }
}
