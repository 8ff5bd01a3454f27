//! Leading exponents, standard monomials and the quotient dimension.

use skewalg::leftideal::{staircase, LeftIdeal};
use skewalg::monomials::OrderKind;
use skewalg::skewring::SkewRing;

fn main() -> skewalg::Result<()> {
    let ring = SkewRing::gf_frobenius(3, 2, 2, OrderKind::DegLex)?;
    for gens in [&["x1^2 + 1", "x2^3 + x1"][..], &["x1*x2 + 1"][..]] {
        let gb = LeftIdeal::parse(&ring, gens)?.groebner()?;
        let st = staircase(&gb);
        match &st.standard_monomials {
            Some(ms) => {
                let ms: Vec<String> = ms.iter().map(|m| ring.format_monomial(m)).collect();
                println!("<{}>: dimension {}, basis {}", gens.join(", "), ms.len(), ms.join(" "));
            }
            None => println!("<{}>: infinite along {}", gens.join(", "), ring.var_names()[st.witness_axis.unwrap()]),
        }
    }
    Ok(())
}
