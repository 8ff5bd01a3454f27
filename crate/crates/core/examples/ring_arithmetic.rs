//! Products in a few skew polynomial rings, including one read from a descriptor.

use skewalg::monomials::OrderKind;
use skewalg::skewring::SkewRing;

fn main() -> skewalg::Result<()> {
    // GF(4)[x; Frob]: x w = w^2 x.
    let gf4 = SkewRing::gf_frobenius(2, 2, 1, OrderKind::Lex)?;
    let (x, w) = (gf4.parse("x")?, gf4.parse("w")?);
    println!("GF(4)[x;Frob]   x * w = {}", gf4.format(&gf4.mul(&x, &w)));
    println!("                (x + w)^3 = {}", gf4.format(&gf4.pow(&gf4.parse("x + w")?, 3)));

    // Weyl algebra: t x = x t + 1.
    let weyl = SkewRing::weyl(OrderKind::DegLex);
    let (x, t) = (weyl.parse("x")?, weyl.parse("t")?);
    println!("Weyl            t * x = {}", weyl.format(&weyl.mul(&t, &x)));
    println!("                t^2 * x^2 = {}", weyl.format(&weyl.mul(&weyl.pow(&t, 2), &weyl.pow(&x, 2))));

    // Quaternions twisted by conjugation with 1 + i.
    let quat = SkewRing::from_json(r#"{"domain": {"kind": "quaternion"}, "vars": ["x"], "sigma": "inner(1+i)"}"#)?;
    let (x, j) = (quat.parse("x")?, quat.parse("j")?);
    println!("H[x; inner(1+i)] x * j = {}", quat.format(&quat.mul(&x, &j)));

    // F3[y][x; d/dy]: x y = y x + 1.
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/descriptors/f3_poly_derivative.json");
    let dring = SkewRing::from_json(&std::fs::read_to_string(path).expect("shipped descriptor"))?;
    let f = dring.mul(&dring.parse("x")?, &dring.parse("y^3 + y")?);
    println!("F3[y][x; d/dy]  x * (y^3 + y) = {}", dring.format(&f));
    Ok(())
}
