//! Eliminating variables and measuring degree slices of `I ∩ F[x_j]`.

use skewalg::leftideal::{eliminate, slice_intersection_dim, LeftIdeal};
use skewalg::monomials::OrderKind;
use skewalg::skewring::SkewRing;

fn main() -> skewalg::Result<()> {
    let ring = SkewRing::gf_frobenius(2, 2, 2, OrderKind::Lex)?;
    let ideal = LeftIdeal::parse(&ring, &["x1^3 + x2", "x2^2 + (w)*x1 + 1"])?;
    for (j, name) in ring.var_names().iter().enumerate() {
        let elim = eliminate(&ideal, &[j])?;
        let shown: Vec<String> = elim.iter().map(|f| ring.format(f)).collect();
        let dims: Vec<usize> = (0..=6).map(|d| slice_intersection_dim(&ideal, d, &[j])).collect::<Result<_, _>>()?;
        println!("I ∩ F[{name}]: [{}], slice dims up to degree 6: {dims:?}", shown.join(", "));
    }
    Ok(())
}
