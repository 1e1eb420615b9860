//! Residues through truncated power series.
//!
//! `Res_{x=0} (1+x)^{N-1+l} / ((1+x)^N - 1)^{d+1}` is the coefficient of
//! `x^d` in `(1+x)^{N-1+l} U(x)^{-(d+1)}`, where `(1+x)^N - 1 = x U(x)`.
//! The example computes it directly and compares with the closed binomial
//! expression.
//!
//! `cargo run --example series_residue`

use quotvi::exactnum::{binomial_int, Rational, RationalField};
use quotvi::identities::residue_lemma_check;
use quotvi::series::TruncatedSeries;

fn main() -> quotvi::Result<()> {
    let (n, l, d) = (3u32, 4u32, 2u32);
    let f = RationalField;
    let caps = [d];

    let u: Vec<Rational> = (1..=n).map(|k| binomial_int(n as i64, k).into()).collect();
    let u = TruncatedSeries::univariate(&f, &caps, 0, &u);
    let top: Vec<Rational> = (0..=d).map(|k| binomial_int((n - 1 + l) as i64, k).into()).collect();
    let top = TruncatedSeries::univariate(&f, &caps, 0, &top);

    let series = top.mul(&u.int_power(-(d as i64 + 1))?);
    println!("residue by series: {}", series.coefficient(&[d])?);

    let (residue, closed, ok) = residue_lemma_check(n, l, d, 0);
    println!("residue lemma: {residue} vs {closed} -> {ok}");
    Ok(())
}
