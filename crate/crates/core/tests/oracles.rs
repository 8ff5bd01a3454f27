mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::oracle::{self, Strategy};
use skewalg::amitsur::{lemma34_offenders, transporter};
use skewalg::center::{center_upto, invariant_field, is_central};
use skewalg::leftideal::{eliminate, slice_intersection_dim, LeftIdeal};
use skewalg::monomials::{MultiIndex, OrderKind};
use skewalg::scalars::fpoly;
use skewalg::skewring::{SkewPoly, SkewRing};

#[test]
fn multiplication_matches_word_rewriting_on_every_descriptor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, ring) in common::shipped_rings() {
        for _ in 0..150 {
            let f = ring.random(3, 3, &mut rng);
            let g = ring.random(3, 3, &mut rng);
            let engine = ring.mul(&f, &g);
            for s in [Strategy::LeftmostFirst, Strategy::RightmostFirst] {
                let w = oracle::word_mul(&ring, &f, &g, s);
                assert_eq!(engine, w, "{name}: ({}) * ({}) under {s:?}", ring.format(&f), ring.format(&g));
            }
        }
    }
}

#[test]
fn rewriting_confirms_defining_relations() {
    let ring = SkewRing::weyl(OrderKind::DegLex);
    let (x, t) = (ring.var(0), ring.var(1));
    let tx = oracle::word_mul(&ring, &t, &x, Strategy::LeftmostFirst);
    assert_eq!(ring.format(&tx), "x*t + 1");
    let gf = SkewRing::gf_frobenius(2, 2, 1, OrderKind::Lex).unwrap();
    let w = gf.constant(gf.domain().gen().unwrap());
    let xw = oracle::word_mul(&gf, &gf.var(0), &w, Strategy::RightmostFirst);
    assert_eq!(gf.format(&xw), "(w+1)*x");
}

#[test]
fn transporter_matches_enumeration() {
    for p in [2u64, 3] {
        for da in 1..=3 {
            for a in oracle::monics(da, p) {
                for r in oracle::all_below(3, p).into_iter().filter(|r| !r.is_empty()) {
                    let t = transporter(&a, &r, p);
                    for s in oracle::all_below(da + 1, p) {
                        let in_transporter = oracle::exact_div(&oracle::poly_mul(&s, &r, p), &a, p).is_some();
                        let divisible = oracle::exact_div(&s, &t, p).is_some();
                        assert_eq!(in_transporter, divisible, "a={a:?} r={r:?} s={s:?} t={t:?} over F{p}");
                    }
                }
            }
        }
    }
}

#[test]
fn offenders_match_trial_division_over_f5() {
    for d in 0..=3 {
        for r0 in oracle::monics(d, 5) {
            let mut got = lemma34_offenders(&r0, 5).unwrap();
            got.sort();
            assert_eq!(got, oracle::trial_factor(&r0, 5), "{r0:?}");
        }
    }
}

#[test]
fn trial_factor_agrees_with_library_factorization() {
    for d in 1..=6 {
        for a in oracle::monics(d, 2) {
            let mut lib: Vec<Vec<u64>> = fpoly::factor(&a, 2).into_iter().map(|(f, _)| f).collect();
            lib.sort();
            assert_eq!(lib, oracle::trial_factor(&a, 2));
        }
    }
}

fn all_polys(ring: &SkewRing, deg: u32) -> Vec<SkewPoly> {
    let elems = ring.domain().elements().unwrap();
    let q = elems.len();
    let n = deg as usize + 1;
    (0..q.pow(n as u32))
        .map(|mut idx| {
            ring.from_terms((0..n).map(|e| {
                let c = elems[idx % q].clone();
                idx /= q;
                (MultiIndex::from_slice(&[e as u32]), c)
            }))
        })
        .collect()
}

#[test]
fn center_of_gf4_frobenius_matches_exhaustive_search() {
    let ring = SkewRing::gf_frobenius(2, 2, 1, OrderKind::Lex).unwrap();
    let elems = ring.domain().elements().unwrap();
    let x = ring.var(0);
    let central: Vec<SkewPoly> = all_polys(&ring, 4)
        .into_iter()
        .filter(|f| {
            let comm = |a: &SkewPoly| {
                oracle::word_mul(&ring, f, a, Strategy::LeftmostFirst) == oracle::word_mul(&ring, a, f, Strategy::LeftmostFirst)
            };
            comm(&x) && elems.iter().all(|c| comm(&ring.constant(c.clone())))
        })
        .collect();
    let rep = center_upto(&ring, 4).unwrap();
    // An F_2-space of dimension d has 2^d elements.
    assert_eq!(central.len(), 1 << rep.basis.len());
    assert!(central.iter().all(|f| is_central(&ring, f)));
}

#[test]
fn invariant_field_matches_fixed_points() {
    for (name, ring) in common::shipped_rings() {
        let d = ring.domain();
        let Some(elems) = d.elements() else { continue };
        let fixed = elems
            .iter()
            .filter(|a| {
                (0..ring.nvars()).all(|k| ring.sigma(k).apply(d, a) == **a && d.is_zero(&ring.delta(k).apply(ring.sigma(k), d, a)))
            })
            .count() as u64;
        let inv = invariant_field(&ring).unwrap();
        assert_eq!(fixed, d.characteristic().pow(inv.dim() as u32), "{name}");
        for a in &elems {
            let is_fixed = (0..ring.nvars()).all(|k| ring.sigma(k).apply(d, a) == *a);
            assert_eq!(inv.contains(a), is_fixed, "{name}: {}", d.format(a));
        }
    }
}

#[test]
fn elimination_matches_exhaustive_slices() {
    let ring = SkewRing::gf_frobenius(2, 2, 2, OrderKind::Lex).unwrap();
    let uni = SkewRing::gf_frobenius(2, 2, 1, OrderKind::Lex).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut nontrivial = 0;
    for _ in 0..25 {
        let gens: Vec<SkewPoly> = (0..rng.gen_range(1..=2)).map(|_| ring.random_nonzero(3, 2, &mut rng)).collect();
        let ideal = LeftIdeal::new(&ring, gens).unwrap();
        let gb = ideal.groebner().unwrap();
        let elim = eliminate(&ideal, &[1]).unwrap();
        assert!(elim.iter().all(|f| f.supported_on(&[1]) && gb.member(f)));
        for d in 0..=3u32 {
            let members = all_polys(&uni, d)
                .into_iter()
                .map(|f| ring.from_terms(f.terms().map(|(e, c)| (MultiIndex::from_slice(&[0, e.get(0)]), c.clone()))))
                .filter(|f| gb.member(f))
                .count();
            let dim = slice_intersection_dim(&ideal, d, &[1]).unwrap();
            assert_eq!(members, 1 << (2 * dim), "slice {d}");
            if members > 1 {
                assert!(!elim.is_empty());
                nontrivial += 1;
            }
        }
    }
    assert!(nontrivial > 0);
}
