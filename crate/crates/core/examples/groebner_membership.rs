//! A left Groebner basis, membership, and an explicit certificate by linear algebra.

use skewalg::leftideal::{member_bruteforce, LeftIdeal, Membership};
use skewalg::monomials::OrderKind;
use skewalg::skewring::SkewRing;

fn main() -> skewalg::Result<()> {
    let ring = SkewRing::gf_frobenius(2, 2, 2, OrderKind::DegLex)?;
    let ideal = LeftIdeal::parse(&ring, &["x1^2 + (w)*x2", "x1*x2 + 1"])?;
    let gb = ideal.groebner()?;
    println!("basis: {}", gb.format().join(", "));

    // f = x2 g1 + (w) x1 g2, then hidden by expanding.
    let g = ideal.gens();
    let f = ring.add(&ring.mul(&ring.parse("x2")?, &g[0]), &ring.mul(&ring.parse("(w)*x1")?, &g[1]));
    println!("{} in I: {}", ring.format(&f), gb.member(&f));
    match member_bruteforce(&f, &ideal, 4)? {
        Membership::Yes(comb) => {
            for (u, j, c) in &comb.terms {
                println!("  + ({}) * {} * g{}", ring.domain().format(c), ring.format_monomial(u), j + 1);
            }
            assert_eq!(comb.expand(&ring, ideal.gens()), f);
        }
        Membership::Unknown => println!("  no combination with cofactors of degree <= 4"),
    }

    let weyl = SkewRing::weyl(OrderKind::DegLex);
    let i = LeftIdeal::parse(&weyl, &["x", "t"])?;
    println!("Weyl <x, t> is the whole ring: {}", i.groebner()?.is_whole_ring());
    Ok(())
}
