//! Per-locus contributions of a localization computation.
//!
//! `Quot_1(O^4, 2, P^1)` has twelve torus-fixed loci. Individual loci
//! contribute elements of `Q(z_4)`; only their sum is rational.
//!
//! `cargo run --example localization_breakdown`

use quotvi::localization::{evaluate_with_breakdown, EngineConfig, InsertionPolynomial, QuotProblem};

fn main() -> quotvi::Result<()> {
    let p = QuotProblem::new(2, 4, 0, 1)?;
    let m = InsertionPolynomial::a(1).pow(8);
    let b = evaluate_with_breakdown(&p, &m, &EngineConfig::default())?;
    println!("{p}, insertion {m}, expected dimension {}", p.e());
    for c in &b.loci {
        println!("  {:<14} {}", c.locus.to_string(), c.value);
    }
    println!("total = {}", b.total);
    Ok(())
}
