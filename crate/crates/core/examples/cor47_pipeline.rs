//! Maximal left ideals of GF(4)[x1, x2; Frob] with simple, finite-dimensional quotients.

use skewalg::pipeline::cor47_pipeline;

fn main() -> skewalg::Result<()> {
    let rep = cor47_pipeline(2, 2, 2, 2)?;
    println!("center of GF(4)[x;Frob] up to degree 4: {:?}", rep.univariate_center);
    println!("{} candidates, {} whole ring, {} distinct maximal ideals", rep.candidates, rep.whole_ring, rep.ideals.len());
    for r in rep.ideals.iter().take(8) {
        println!("  <{}> dim {} simple {} eliminations {:?}", r.groebner_basis.join(", "), r.dim, r.simple, r.eliminations);
    }
    println!("all verified: {}", rep.all_verified());
    Ok(())
}
