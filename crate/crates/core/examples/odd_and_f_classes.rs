//! Insertions with odd classes `b_1^j b_1^{j+g}` and with `f_l`, each checked
//! against the localization engine.
//!
//! `cargo run --example odd_and_f_classes`

use quotvi::closedform::{bees_evaluate, fl_evaluate};
use quotvi::localization::{evaluate, EngineConfig, InsertionPolynomial, QuotProblem};

fn main() -> quotvi::Result<()> {
    let cfg = EngineConfig::default();
    let p = QuotProblem::new(2, 3, 2, 3)?;
    let g = p.g();
    for s in 1..=g {
        let w = (p.e() - s as i64) as u32;
        let poly = InsertionPolynomial::a(1).pow(w);
        let pairs = (1..=s).fold(InsertionPolynomial::one(), |acc, j| {
            acc.mul(&InsertionPolynomial::b(1, j)).mul(&InsertionPolynomial::b(1, j + g))
        });
        let full = pairs.mul(&poly);
        println!(
            "{p} {full}: closed form {}, localization {}",
            bees_evaluate(&p, &poly, s)?,
            evaluate(&p, &full, &cfg)?
        );
    }

    let p = QuotProblem::new(2, 2, 1, 1)?;
    let poly = InsertionPolynomial::a(1);
    let full = InsertionPolynomial::f(2).mul(&poly);
    println!(
        "{p} {full}: closed form {}, localization {}",
        fl_evaluate(&p, &poly, 2)?,
        evaluate(&p, &full, &cfg)?
    );
    Ok(())
}
