//! Left and right Euclidean division and factorization in GF(4)[x; Frob].

use skewalg::orepoly::OreRing;

fn main() -> skewalg::Result<()> {
    let ore = OreRing::gf_frobenius(2, 2)?;
    let f = ore.parse("x^4 + (w)*x^3 + x + 1")?;
    let g = ore.parse("x^2 + (w+1)")?;

    let (q, r) = ore.right_divmod(&f, &g)?;
    println!("f = q g + r:  q = {}, r = {}", ore.format(&q), ore.format(&r));
    assert_eq!(ore.add(&ore.mul(&q, &g), &r), f);

    let (q, r) = ore.left_divmod(&f, &g)?;
    println!("f = g q + r:  q = {}, r = {}", ore.format(&q), ore.format(&r));
    assert_eq!(ore.add(&ore.mul(&g, &q), &r), f);

    for text in ["x^2 + 1", "x^2 + x + (w)", "x^2 + (w)"] {
        let h = ore.parse(text)?;
        match ore.right_factor(&h)? {
            Some(d) => println!("{text}: right factor {}", ore.format(&d)),
            None => println!("{text}: irreducible"),
        }
    }
    Ok(())
}
