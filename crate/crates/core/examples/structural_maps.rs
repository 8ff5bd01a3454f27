//! Recovering each sigma from products `x_k a` and checking a descriptor's axioms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewalg::skewring::SkewRing;

fn main() -> skewalg::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["gf4_mixed", "gf8_frobenius_squared", "quaternion_inner", "f3_poly_scale"] {
        let path = format!("{}/descriptors/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let ring = SkewRing::from_json(&std::fs::read_to_string(path).expect("shipped descriptor"))?;
        let d = ring.domain();
        for k in 0..ring.nvars() {
            let e = ring.structural_endo(k)?;
            let agrees = e.eq_on_generators(ring.sigma(k), d);
            println!("{name}: sigma_{} recovered as {} (agrees: {agrees})", ring.var_names()[k], e.format(d));
        }
        let failed: Vec<_> = ring.check_descriptor(200, &mut rng).into_iter().filter(|c| !c.passed).collect();
        println!("{name}: {} failed axiom checks", failed.len());
    }
    Ok(())
}
