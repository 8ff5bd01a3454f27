//! The transporter condition over F_p[y]: offenders, a failing check and a witness search.

use skewalg::amitsur::{def31_check, lemma34_offenders, parse_r, show, thm35_witness, IdealFamily, PidExtension};
use skewalg::monomials::MultiIndex;

fn main() -> skewalg::Result<()> {
    let p = 2;
    let r0 = parse_r(p, "y^3 + y")?;
    let offenders: Vec<String> = lemma34_offenders(&r0, p)?.iter().map(|r| show(p, r)).collect();
    println!("offenders of y^3 + y: {}", offenders.join(", "));

    let ext = PidExtension::commutative(p, 1)?;
    let fam = IdealFamily::untwisted(p, 1, vec![(MultiIndex::zero(1), parse_r(p, "y^2 + y")?)])?;
    let rep = def31_check(&fam, &ext, &parse_r(p, "y")?, None)?;
    println!("r = y passes: {} ({:?})", rep.passed, rep.failure);

    let w = thm35_witness(&fam, &ext, 6)?;
    println!("witness {} after skipping {:?}", show(p, &w.r0), w.skipped);

    // A twisted base: y -> 2y over F3. Only y^2 + 1 among small irreducibles is invariant.
    let ext3 = PidExtension::new(3, vec!["x".into()], vec![2], vec![false])?;
    let fam3 = IdealFamily::new(3, vec![2], vec![(MultiIndex::zero(1), vec![1])])?;
    let w3 = thm35_witness(&fam3, &ext3, 4)?;
    println!("F3[y][x; y -> 2y] witness {}", show(3, &w3.r0));
    Ok(())
}
