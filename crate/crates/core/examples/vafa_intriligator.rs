//! The closed-form sum over roots of unity against localization, and the
//! degree-shift symmetry `d -> d + r`, `P -> a_r^N P`.
//!
//! `cargo run --example vafa_intriligator`

use quotvi::cli::parse_polynomial;
use quotvi::closedform::{degree_shift_values, vi_evaluate};
use quotvi::localization::{evaluate, EngineConfig, QuotProblem};

fn main() -> quotvi::Result<()> {
    let cases = [
        ((1, 2, 1, 2), "a1^4"),
        ((2, 4, 0, 1), "a1^8"),
        ((2, 3, 1, 2), "a1^2 a2^2"),
        ((3, 5, 1, 2), "a1^4 a3^2 + a2^2 a3^2"),
    ];
    for ((r, n, g, d), text) in cases {
        let p = QuotProblem::new(r, n, g, d)?;
        let m = parse_polynomial(text, r, g)?;
        let closed = vi_evaluate(&p, &m)?;
        let local = evaluate(&p, &m, &EngineConfig::default())?;
        let (_, shifted) = degree_shift_values(&p, &m)?;
        println!("{p} {m}: closed form {closed}, localization {local}, after shift {shifted}");
    }
    Ok(())
}
