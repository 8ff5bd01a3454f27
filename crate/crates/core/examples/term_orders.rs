//! Comparing exponents under lex, deglex and an elimination order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewalg::monomials::{order_sanity, MultiIndex, TermOrder};

fn main() -> skewalg::Result<()> {
    let a = MultiIndex::parse("(5,0)")?;
    let b = MultiIndex::parse("(0,1)")?;
    let orders = [
        ("lex", TermOrder::lex(2)),
        ("deglex", TermOrder::deglex(2)),
        ("eliminate x1", TermOrder::elimination(2, &[1])),
    ];
    for (name, o) in orders {
        println!("{name:<13} {a:?} vs {b:?}: {:?}", o.cmp(&a, &b));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rep = order_sanity(&TermOrder::deglex(3), 1000, &mut rng);
    println!("deglex sanity on 1000 triples: {}", serde_json::to_string(&rep).expect("serializable"));
    Ok(())
}
