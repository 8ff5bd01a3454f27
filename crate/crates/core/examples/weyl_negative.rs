//! In the Weyl algebra the ideal `S t` is proper, misses `Q[x]`, and the center is trivial.

use skewalg::pipeline::weyl_demo;

fn main() -> skewalg::Result<()> {
    let rep = weyl_demo(10, 6)?;
    println!("1 in S t: {}", rep.one_in_it);
    println!("dim (S t ∩ Q[x]) in degrees 0..10: {:?}", rep.slice_intersection_dims);
    println!("nonconstant central element up to degree 6: {:?}", rep.center_nonconstant);
    Ok(())
}
