//! Semilinear modules: quotients `S / I`, their operators, and simplicity.

use skewalg::leftideal::LeftIdeal;
use skewalg::module::{quotient_module, ENUMERATION_BOUND};
use skewalg::monomials::OrderKind;
use skewalg::skewring::SkewRing;

fn main() -> skewalg::Result<()> {
    let ring = SkewRing::gf_frobenius(2, 2, 2, OrderKind::Lex)?;
    for gens in [&["x1 + (w)", "x2 + (w)"][..], &["x1^2 + x1 + 1", "x2 + 1"][..], &["x1^2 + 1", "x2 + 1"][..]] {
        let q = quotient_module(&LeftIdeal::parse(&ring, gens)?)?;
        q.module.check_semilinear()?;
        q.module.check_commutation()?;
        let rep = q.module.is_simple(ENUMERATION_BOUND)?;
        println!("S / <{}>: dim {}, simple {}, {} vectors checked", gens.join(", "), q.module.dim(), rep.simple, rep.vectors_checked);
        if let Some(w) = rep.witness {
            println!("    proper submodule spanned by {w:?}");
        }
    }
    let q = quotient_module(&LeftIdeal::parse(&ring, &["x1 + (w)", "x2 + (w)"])?)?;
    let sum = q.module.direct_sum(&q.module)?;
    println!("M + M simple: {}", sum.is_simple(ENUMERATION_BOUND)?.simple);
    Ok(())
}
