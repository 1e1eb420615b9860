//! Sweeps the residue and binomial identities over their default grids.
//!
//! `cargo run --release --example identity_grids`

use quotvi::identities::{run_all, IdentityBounds};

fn main() {
    for s in run_all(&IdentityBounds::default()) {
        let status = if s.passed() { "pass" } else { "FAIL" };
        println!("{:<20} {status} ({} cases)", s.identity, s.checked);
    }
}
