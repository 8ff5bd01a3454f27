//! End-to-end checks: simple modules over `GF(p^k)[x1..xn; Frob]` are
//! finite-dimensional, the Weyl algebra's negative control, and extraction of
//! nonzero elements of `I ∩ F_p[y]` for maximal ideals of `F_p[y][x1, x2]`.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::amitsur::{leading_ideal_family, prop32_extract, thm35_witness, Extraction, PidExtension, StartMode};
use crate::center::{center_upto, is_central};
use crate::error::{Error, Result};
use crate::leftideal::{eliminate, member, slice_intersection_dim, LeftIdeal};
use crate::module::{quotient_module, ENUMERATION_BOUND};
use crate::monomials::{MultiIndex, OrderKind};
use crate::orepoly::OreRing;
use crate::scalars::fpoly::{self, FpPoly, IrreducibleStream};
use crate::skewring::{SkewPoly, SkewRing};

#[derive(Clone, Debug, Serialize)]
pub struct MaximalIdealRecord {
    pub groebner_basis: Vec<String>,
    pub dim: usize,
    pub simple: bool,
    pub vectors_checked: u64,
    pub semilinear_ok: bool,
    pub commutation_ok: bool,
    /// One nonzero element of `M ∩ F[x_j; σ]` per variable.
    pub eliminations: Vec<Option<String>>,
    /// Number of submodule refinements applied to the seed ideal.
    pub refinements: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cor47Report {
    pub p: u64,
    pub k: usize,
    pub n: usize,
    pub bound: usize,
    pub univariate_center: Vec<String>,
    pub xk_central: bool,
    pub candidates: usize,
    pub whole_ring: usize,
    pub ideals: Vec<MaximalIdealRecord>,
}

impl Cor47Report {
    /// Every recorded ideal is simple, law-abiding and meets each variable's subring.
    pub fn all_verified(&self) -> bool {
        self.xk_central
            && !self.ideals.is_empty()
            && self.ideals.iter().all(|r| {
                r.simple && r.semilinear_ok && r.commutation_ok && r.dim > 0 && r.eliminations.iter().all(Option::is_some)
            })
    }
}

/// Univariate seeds in variable `j` of degree `<= bound`: irreducibles and
/// central `g(x^k)` for `g` irreducible over `F_p`.
fn seeds(ring: &SkewRing, ore: &OreRing, j: usize, k: usize, bound: usize) -> Result<Vec<SkewPoly>> {
    let p = ring.domain().characteristic();
    let lift = |f: &crate::orepoly::OrePoly| {
        ring.from_terms(f.coeffs().iter().enumerate().map(|(e, c)| {
            let mut m = MultiIndex::zero(ring.nvars());
            m.set(j, e as u32);
            (m, c.clone())
        }))
    };
    let mut out = Vec::new();
    for deg in 1..=bound {
        for f in ore.monics(deg)? {
            if ore.irreducible(&f)? {
                out.push(lift(&f));
            }
        }
    }
    for g in IrreducibleStream::new(p).take_while(|g| k * fpoly::deg(g).unwrap_or(0) <= bound) {
        let mut c = vec![ring.domain().zero(); k * (g.len() - 1) + 1];
        for (e, a) in g.iter().enumerate() {
            c[e * k] = ring.domain().from_int(*a as i64);
        }
        let f = lift(&ore.poly(c));
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

fn all_combinations(lists: &[Vec<SkewPoly>], limit: usize) -> Vec<Vec<SkewPoly>> {
    let mut out: Vec<Vec<SkewPoly>> = vec![vec![]];
    for l in lists {
        out = out.iter().flat_map(|prefix| l.iter().map(move |s| [prefix.clone(), vec![s.clone()]].concat())).take(limit).collect();
    }
    out
}

/// Seeds maximal left ideals of `GF(p^k)[x1..xn; Frob]`, refines each seed
/// until its quotient is simple, and certifies every resulting ideal.
pub fn cor47_pipeline(p: u64, k: usize, n: usize, bound: usize) -> Result<Cor47Report> {
    cor47_pipeline_limited(p, k, n, bound, 256)
}

pub fn cor47_pipeline_limited(p: u64, k: usize, n: usize, bound: usize, max_candidates: usize) -> Result<Cor47Report> {
    let ring = SkewRing::gf_frobenius(p, k, n, OrderKind::Lex)?;
    let uni = SkewRing::gf_frobenius(p, k, 1, OrderKind::Lex)?;
    let ore = OreRing::from_skew(&uni)?;
    let center = center_upto(&uni, 2 * k as u32)?;
    let univariate_center = center.basis.iter().map(|f| uni.format(f)).collect();
    let xk_central = (0..n).all(|j| is_central(&ring, &ring.pow(&ring.var(j), k as u32)));
    let lists = (0..n).map(|j| seeds(&ring, &ore, j, k, bound)).collect::<Result<Vec<_>>>()?;
    let combos = all_combinations(&lists, max_candidates);
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut whole_ring = 0;
    let mut ideals = Vec::new();
    for gens in &combos {
        let mut ideal = LeftIdeal::new(&ring, gens.clone())?;
        let mut refinements = 0;
        let (q, check) = loop {
            let q = quotient_module(&ideal)?;
            if q.module.dim() == 0 {
                break (q, None);
            }
            match q.module.proper_submodule(ENUMERATION_BOUND)? {
                (Some(sub), _) => {
                    for w in &sub {
                        ideal = ideal.with_generator(q.lift(w));
                    }
                    refinements += 1;
                }
                (None, checked) => break (q, Some(checked)),
            }
        };
        let Some(checked) = check else {
            whole_ring += 1;
            continue;
        };
        let key = q.gb.format();
        if !seen.insert(key.clone()) {
            continue;
        }
        let eliminations = (0..n)
            .map(|j| Ok(eliminate(&ideal, &[j])?.first().map(|f| ring.format(f))))
            .collect::<Result<Vec<_>>>()?;
        ideals.push(MaximalIdealRecord {
            groebner_basis: key,
            dim: q.module.dim(),
            simple: true,
            vectors_checked: checked,
            semilinear_ok: q.module.check_semilinear().is_ok(),
            commutation_ok: q.module.check_commutation().is_ok(),
            eliminations,
            refinements,
        });
    }
    Ok(Cor47Report { p, k, n, bound, univariate_center, xk_central, candidates: combos.len(), whole_ring, ideals })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeylReport {
    #[serde(rename = "one_in_It")]
    pub one_in_it: bool,
    pub slice_intersection_dims: Vec<usize>,
    pub center_nonconstant: Option<String>,
}

/// `S t` in the Weyl algebra `Q[x, t]`: proper, meets `Q[x]` trivially in
/// every degree slice, and the center holds only constants.
pub fn weyl_demo(max_degree: u32, cap: u32) -> Result<WeylReport> {
    let ring = SkewRing::weyl(OrderKind::DegLex);
    let it = LeftIdeal::parse(&ring, &["t"])?;
    let one_in_it = member(&ring.one(), &it)?;
    let dims = (0..=max_degree).map(|d| slice_intersection_dim(&it, d, &[0])).collect::<Result<Vec<_>>>()?;
    let c = center_upto(&ring, cap)?;
    Ok(WeylReport {
        one_in_it,
        slice_intersection_dims: dims,
        center_nonconstant: c.h0.map(|f| ring.format(&f)),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop43Record {
    pub generators: Vec<String>,
    pub quotient_dim: usize,
    pub simple: bool,
    pub elimination: Vec<String>,
    pub r0: String,
    pub minimal: Extraction,
    pub lifted: Extraction,
    /// Both extracted elements lie in the ideal generated by the elimination result.
    pub consistent: bool,
}

/// A maximal ideal `<h(y), x1 - a1(y), ..., xn - an(y)>` of `F_p[y][x1..xn]`.
pub fn point_ideal(enc: &SkewRing, h: &[u64], a: &[FpPoly]) -> Result<LeftIdeal> {
    let p = enc.domain().characteristic();
    let mut gens = vec![crate::amitsur::embed_r(enc, h)];
    for (i, ai) in a.iter().enumerate() {
        gens.push(enc.sub(&enc.var(i + 1), &crate::amitsur::embed_r(enc, &fpoly::rem(ai, h, p))));
    }
    LeftIdeal::new(enc, gens)
}

/// Builds `count` distinct maximal ideals of the commutative `F_p[y][x1..xn]`
/// and runs witness search and extraction on each.
pub fn prop43_demo<R: Rng + ?Sized>(p: u64, n: usize, count: usize, rng: &mut R) -> Result<Vec<Prop43Record>> {
    let ext = PidExtension::commutative(p, n)?;
    let enc = ext.encode()?;
    let hs: Vec<FpPoly> = IrreducibleStream::new(p).take_while(|h| h.len() <= 6).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 100 * count {
            return Err(Error::SearchExhausted(format!("only {} distinct ideals constructed", out.len())));
        }
        let h = &hs[attempts % hs.len()];
        let dh = h.len() - 1;
        let a: Vec<FpPoly> = (0..n).map(|_| fpoly::trim((0..dh).map(|_| rng.gen_range(0..p)).collect())).collect();
        let ideal = point_ideal(&enc, h, &a)?;
        let gb = ideal.groebner()?;
        if !seen.insert(gb.format()) {
            continue;
        }
        out.push(prop43_one(&ext, &enc, &ideal)?);
    }
    Ok(out)
}

fn prop43_one(ext: &PidExtension, enc: &SkewRing, ideal: &LeftIdeal) -> Result<Prop43Record> {
    let p = ext.p();
    let q = quotient_module(ideal)?;
    let simple = q.module.is_simple(ENUMERATION_BOUND)?.simple;
    let elim = eliminate(ideal, &[0])?;
    let (fam, _) = leading_ideal_family(ideal, ext)?;
    let w = thm35_witness(&fam, ext, 8)?;
    let minimal = prop32_extract(ideal, ext, &w.r0, &StartMode::default())?;
    let lifted = prop32_extract(ideal, ext, &w.r0, &StartMode::Lift { window: 3, ycap: 8 })?;
    let h = elim.first().map(|f| crate::amitsur::split_x(enc, f).remove(0).1);
    let consistent = h.as_ref().is_some_and(|h| {
        fpoly::divides(h, &minimal.element_r, p) && fpoly::divides(h, &lifted.element_r, p)
    });
    Ok(Prop43Record {
        generators: ideal.gens().iter().map(|g| enc.format(g)).collect(),
        quotient_dim: q.module.dim(),
        simple,
        elimination: elim.iter().map(|f| enc.format(f)).collect(),
        r0: crate::amitsur::show(p, &w.r0),
        minimal,
        lifted,
        consistent,
    })
}
