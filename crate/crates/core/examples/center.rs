//! Centers, invariant fields and a maximal two-sided ideal of GF(4)[x; Frob].

use skewalg::center::{center_upto, invariant_field, maximal_twosided_gen};
use skewalg::monomials::OrderKind;
use skewalg::orepoly::OreRing;
use skewalg::skewring::SkewRing;

fn main() -> skewalg::Result<()> {
    for (p, k) in [(2, 2), (3, 2), (2, 3)] {
        let ring = SkewRing::gf_frobenius(p, k, 1, OrderKind::Lex)?;
        let c = center_upto(&ring, 2 * k as u32)?;
        let inv = invariant_field(&ring)?;
        let basis: Vec<String> = c.basis.iter().map(|f| ring.format(f)).collect();
        println!("GF({p}^{k})[x;Frob]: center up to degree {}: {{{}}}, invariant field dim {}", 2 * k, basis.join(", "), inv.dim());
    }
    let weyl = SkewRing::weyl(OrderKind::DegLex);
    println!("Weyl: nonconstant central element up to degree 6: {:?}", center_upto(&weyl, 6)?.h0);

    let ore = OreRing::gf_frobenius(2, 2)?;
    let h0 = ore.parse("x^2")?;
    let (g, cert) = maximal_twosided_gen(&ore, &[1, 1, 1], &h0, 1 << 16)?;
    println!("S ({}) is maximal two-sided: quotient dim {}, {} elements checked", ore.format(&g), cert.quotient_dim, cert.elements_checked);
    Ok(())
}
