//! Exact arithmetic in Q(z), z a primitive N-th root of unity.
//!
//! `cargo run --example cyclotomic`

use quotvi::exactnum::{cyclotomic_polynomial, int, CyclotomicField, ExactField, Field, RootsOfUnity};

fn main() -> quotvi::Result<()> {
    let field = CyclotomicField::new(5);
    println!("Phi_5 coefficients: {:?}", cyclotomic_polynomial(5));

    let z = field.root_of_unity(1);
    let w = field.add(&field.one(), &field.scale(&z, &int(2)));
    let w_inv = field.inv(&w)?;
    println!("w = {w}");
    println!("1/w = {w_inv}");
    println!("w * (1/w) = {}", field.mul(&w, &w_inv));

    // The sum of all fifth roots of unity is 0 and their product is 1.
    let roots: Vec<_> = (0..5).map(|k| field.root_of_unity(k)).collect();
    let sum = field.sum(roots.iter());
    let product = roots.iter().fold(field.one(), |acc, r| field.mul(&acc, r));
    println!("sum of roots = {}", field.to_rational(&sum)?);
    println!("product of roots = {}", field.to_rational(&product)?);

    // Nonrational elements refuse to become rationals.
    println!("z as rational: {:?}", field.to_rational(&z).map_err(|e| e.code()));
    Ok(())
}
