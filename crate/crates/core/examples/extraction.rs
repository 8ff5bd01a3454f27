//! From a maximal ideal of F_2[y][x1, x2] to a certified element of `I ∩ F_2[y]`.

use skewalg::amitsur::{leading_ideal_family, prop32_extract, show, thm35_witness, PidExtension, StartMode};
use skewalg::leftideal::eliminate;
use skewalg::pipeline::point_ideal;

fn main() -> skewalg::Result<()> {
    let ext = PidExtension::commutative(2, 2)?;
    let enc = ext.encode()?;
    let ideal = point_ideal(&enc, &[1, 1, 0, 1], &[vec![0, 1], vec![1, 1, 1]])?;
    let gens: Vec<String> = ideal.gens().iter().map(|g| enc.format(g)).collect();
    println!("I = <{}>", gens.join(", "));

    let elim: Vec<String> = eliminate(&ideal, &[0])?.iter().map(|f| enc.format(f)).collect();
    println!("I ∩ F2[y] by elimination: {}", elim.join(", "));

    let (fam, _) = leading_ideal_family(&ideal, &ext)?;
    let w = thm35_witness(&fam, &ext, 8)?;
    println!("r0 = {}", show(2, &w.r0));
    for mode in [StartMode::default(), StartMode::Lift { window: 3, ycap: 8 }] {
        let x = prop32_extract(&ideal, &ext, &w.r0, &mode)?;
        println!("{mode:?}: start {:?}, {} descent steps, element {}", x.start, x.trace.len(), x.element);
        for s in &x.trace {
            println!("    le {:?}  lt(P1) = {}", s.le.exps(), s.lt_p1);
        }
    }
    Ok(())
}
