use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::orepoly::OreRing;
use crate::scalars::Domain;

fn f2(vars: &[&str], kind: OrderKind) -> SkewRing {
    SkewRing::commutative(Domain::prime(2).unwrap(), vars, kind).unwrap()
}

fn weyl() -> SkewRing {
    SkewRing::weyl(OrderKind::DegLex)
}

#[test]
fn reduce_examples() {
    let r = f2(&["x1", "x2"], OrderKind::Lex);
    let p = |s: &str| r.parse(s).unwrap();
    assert_eq!(left_reduce(&r, &p("x1*x2 + x2"), &[p("x1")]).unwrap(), p("x2"));
    assert_eq!(left_reduce(&r, &r.zero(), &[p("x1")]).unwrap(), r.zero());
}

#[test]
fn univariate_reduction_matches_right_division() {
    let o = OreRing::gf_frobenius(2, 2).unwrap();
    let s = o.as_skew();
    let f = o.parse("x^2").unwrap();
    let g = o.parse("x + w").unwrap();
    let nf = left_reduce(s, &o.to_skew(&f), &[o.to_skew(&g)]).unwrap();
    assert_eq!(nf.total_degree(), Some(0));
    assert_eq!(o.from_skew_poly(&nf), o.right_divmod(&f, &g).unwrap().1);
}

#[test]
fn buchberger_examples() {
    let r = f2(&["x1", "x2"], OrderKind::Lex);
    let i = LeftIdeal::parse(&r, &["x1+1", "x2+1"]).unwrap();
    let gb = i.groebner().unwrap();
    assert_eq!(gb.basis(), &[r.parse("x1+1").unwrap(), r.parse("x2+1").unwrap()]);
    gb.verify(i.gens()).unwrap();

    let j = LeftIdeal::parse(&r, &["x1*x2+1", "x1"]).unwrap();
    assert!(j.groebner().unwrap().is_whole_ring());

    let w = weyl();
    let t = LeftIdeal::parse(&w, &["t"]).unwrap();
    let gb = t.groebner().unwrap();
    assert_eq!(gb.basis(), &[w.parse("t").unwrap()]);
    assert!(!gb.member(&w.one()));
}

#[test]
fn membership_examples() {
    let r = f2(&["x1", "x2"], OrderKind::Lex);
    let i = LeftIdeal::parse(&r, &["x1+1", "x2+1"]).unwrap();
    let f = r.parse("x1*x2+1").unwrap();
    assert!(member(&f, &i).unwrap());
    let Membership::Yes(c) = member_bruteforce(&f, &i, 1).unwrap() else { panic!("expected a witness") };
    assert_eq!(c.expand(&r, i.gens()), f);
    for g in i.gens() {
        assert!(member(g, &i).unwrap());
        assert!(member_bruteforce(g, &i, 0).unwrap().is_yes());
    }
    let w = weyl();
    let t = LeftIdeal::parse(&w, &["t"]).unwrap();
    assert!(!member(&w.one(), &t).unwrap());
    assert_eq!(member_bruteforce(&w.one(), &t, 5).unwrap(), Membership::Unknown);
}

#[test]
fn elimination_examples() {
    let r = f2(&["y", "x1", "x2"], OrderKind::Lex);
    let i = LeftIdeal::parse(&r, &["x1+y", "x2+y+1", "y^2+y+1"]).unwrap();
    let e = eliminate(&i, &[0]).unwrap();
    assert!(e.contains(&r.parse("y^2+y+1").unwrap()));

    let w = weyl();
    let t = LeftIdeal::parse(&w, &["t"]).unwrap();
    assert!(eliminate(&t, &[0]).unwrap().is_empty());

    let whole = LeftIdeal::parse(&r, &["x1", "x1+1"]).unwrap();
    assert_eq!(eliminate(&whole, &[0]).unwrap(), vec![r.one()]);
}

#[test]
fn slice_examples() {
    let r = f2(&["x1", "x2"], OrderKind::DegLex);
    let i = LeftIdeal::parse(&r, &["x1"]).unwrap();
    let got: BTreeSet<SkewPoly> = slice_basis(&i, 2).unwrap().into_iter().collect();
    let want: BTreeSet<SkewPoly> = ["x1", "x1^2", "x1*x2"].iter().map(|s| r.parse(s).unwrap()).collect();
    assert_eq!(got, want);

    let w = weyl();
    let t = LeftIdeal::parse(&w, &["t"]).unwrap();
    assert_eq!(slice_basis(&t, 2).unwrap().len(), 3);
    for d in 0..=6 {
        assert_eq!(slice_intersection_dim(&t, d, &[0]).unwrap(), 0);
    }

    let sq = LeftIdeal::parse(&r, &["x1^2+x2^2"]).unwrap();
    assert!(slice_basis(&sq, 1).unwrap().is_empty());
}

#[test]
fn staircase_examples() {
    let r = f2(&["x1", "x2"], OrderKind::Lex);
    let s = staircase(&LeftIdeal::parse(&r, &["x1+1", "x2+1"]).unwrap().groebner().unwrap());
    assert_eq!((s.finite, s.dimension), (true, Some(1)));
    assert_eq!(s.standard_monomials, Some(vec![MultiIndex::zero(2)]));

    let g = SkewRing::gf_frobenius(2, 2, 2, OrderKind::Lex).unwrap();
    let s = staircase(&LeftIdeal::parse(&g, &["x1+w", "x2+w"]).unwrap().groebner().unwrap());
    assert_eq!(s.dimension, Some(1));

    let w = weyl();
    let s = staircase(&LeftIdeal::parse(&w, &["t"]).unwrap().groebner().unwrap());
    assert_eq!((s.finite, s.witness_axis), (false, Some(0)));
}

#[test]
fn reduction_is_idempotent_and_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = SkewRing::gf_frobenius(2, 2, 2, OrderKind::DegLex).unwrap();
    for _ in 0..20 {
        let gens: Vec<SkewPoly> = (0..2).map(|_| r.random_nonzero(3, 2, &mut rng)).collect();
        let gb = LeftIdeal::new(&r, gens.clone()).unwrap().groebner().unwrap();
        gb.verify(&gens).unwrap();
        for _ in 0..5 {
            let f = r.random(4, 3, &mut rng);
            let g = r.random(4, 3, &mut rng);
            let nf = gb.reduce(&f);
            assert_eq!(gb.reduce(&nf), nf);
            let lin = r.sub(&r.sub(&gb.reduce(&r.add(&f, &g)), &nf), &gb.reduce(&g));
            assert!(gb.member(&lin));
        }
    }
}

#[test]
fn pid_coefficients_rejected() {
    let r = SkewRing::commutative(Domain::fp_poly(2, "y").unwrap(), &["x"], OrderKind::Lex).unwrap();
    let i = LeftIdeal::parse(&r, &["y*x"]).unwrap();
    assert!(matches!(i.groebner(), Err(Error::Unsupported(_))));
}
