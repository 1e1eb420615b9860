//! The nonvanishing witness sum for the Pontrjagin ring of the moduli space
//! of stable bundles, over a few admissible `(r, N, g, d)`.
//!
//! `cargo run --example pontrjagin`

use quotvi::closedform::pontrjagin_report;

fn main() -> quotvi::Result<()> {
    for (r, n, g, d) in [(2, 3, 2, 3), (2, 5, 2, 3), (3, 4, 2, 4), (3, 7, 3, 7)] {
        let rep = pontrjagin_report(r, n, g, d)?;
        println!(
            "(r={r}, N={n}, g={g}, d={d}) M={} value={} t-coefficient={} ratio={}",
            rep.m, rep.value, rep.t_coefficient, rep.ratio_to_reduction
        );
    }
    Ok(())
}
