//! Integrals over a symmetric product of a genus-2 curve.
//!
//! On `Sym^d C` the classes `x` and `theta` satisfy
//! `int x^{d-k} theta^k = k! C(g, k)`. With `g = d = 2` that is
//! `1, 2, 2` for `k = 0, 1, 2`.
//!
//! `cargo run --example grassmann_integrals`

use quotvi::exactnum::{Field, RationalField};
use quotvi::grassmann::{GrassmannElement, GrassmannLayout};

fn main() -> quotvi::Result<()> {
    let f = RationalField;
    let layout = GrassmannLayout::new(2, &[2])?;
    let x = GrassmannElement::x(&f, &layout, 1);
    let theta = GrassmannElement::theta(&f, &layout, 1);

    for k in 0..=2i64 {
        let class = x.int_power(2 - k)?.g_mul(&theta.int_power(k)?)?;
        println!("int x^{} theta^{k} = {}", 2 - k, class.integrate());
    }

    // exp(theta) = 1 + theta + theta^2/2, so int x^0 exp(theta) picks theta^2/2.
    let e = theta.g_exp()?;
    println!("int exp(theta) = {}", e.integrate());

    // Odd generators anticommute: y^1 y^3 = -y^3 y^1.
    let y1 = GrassmannElement::y(&f, &layout, 1, 1);
    let y3 = GrassmannElement::y(&f, &layout, 1, 3);
    let sum = y1.g_mul(&y3)?.add(&y3.g_mul(&y1)?);
    println!("y1 y3 + y3 y1 is zero: {}", sum.is_zero());
    println!("int x y1 y3 = {}", x.integrate_product(&y1.g_mul(&y3)?)?);
    assert!(f.is_zero(&sum.integrate()));
    Ok(())
}
