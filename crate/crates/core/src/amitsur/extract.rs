//! Descent from `Q r0 - 1 ∈ I` to a nonzero element `a r0 - 1 ∈ I ∩ R`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{embed_r, join_x, leading_x, show, split_x, PidExtension};
use crate::error::{Error, Result};
use crate::leftideal::{exponents_upto, GroebnerBasis, LeftIdeal};
use crate::linalg::LeftSpan;
use crate::monomials::MultiIndex;
use crate::scalars::fpoly::{self, FpPoly};
use crate::scalars::Scalar;
use crate::skewring::{SkewPoly, SkewRing};

/// How the starting multiplier `Q` is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StartMode {
    /// Smallest leading exponent among `x`-degrees `<= window`, coefficients of `y`-degree `<= ycap`.
    Minimal { window: u32, ycap: u32 },
    /// Any solution of the same system, pivoting on high `x`-degree products first.
    Lift { window: u32, ycap: u32 },
    /// A caller-supplied `Q`; it must satisfy `Q r0 - 1 ∈ I`.
    Explicit(SkewPoly),
}

impl Default for StartMode {
    fn default() -> Self {
        StartMode::Minimal { window: 8, ycap: 8 }
    }
}

/// One round of the descent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    pub le: MultiIndex,
    pub a: String,
    pub b: String,
    pub lt_p1: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Extraction {
    pub r0: String,
    /// `Q` before the descent, or `None` when `r0 ∈ I` already.
    pub start: Option<String>,
    pub trace: Vec<DescentStep>,
    /// The final multiplier `a ∈ R`.
    pub a: Option<String>,
    pub element: String,
    #[serde(skip)]
    pub element_r: FpPoly,
    #[serde(skip)]
    pub element_poly: SkewPoly,
}

fn r_part(enc: &SkewRing, f: &SkewPoly) -> Option<FpPoly> {
    if !f.supported_on(&[0]) {
        return None;
    }
    let parts = split_x(enc, f);
    Some(parts.into_iter().next().map(|(_, r)| r).unwrap_or_default())
}

fn x_monomial(enc: &SkewRing, x: &MultiIndex) -> SkewPoly {
    let mut e = vec![0];
    e.extend_from_slice(x.exps());
    enc.monomial(MultiIndex::from_slice(&e), Scalar::Fp(1))
}

/// Solves `NF(Q r0) = NF(1)` for `Q` supported on `y^j x^e`, `|e| <= window`, `j <= ycap`.
fn start_q(enc: &SkewRing, gb: &GroebnerBasis, r0p: &SkewPoly, window: u32, ycap: u32, lift: bool) -> Result<SkewPoly> {
    let n = enc.nvars() - 1;
    let mut xs = exponents_upto(n, window);
    xs.sort_by(|a, b| enc.cmp_exponents(&pad(a), &pad(b)));
    let mut blocks: Vec<(MultiIndex, Vec<(SkewPoly, SkewPoly)>)> = Vec::new();
    for x in &xs {
        let mut rows = Vec::new();
        for j in 0..=ycap {
            let mut e = vec![j];
            e.extend_from_slice(x.exps());
            let m = enc.monomial(MultiIndex::from_slice(&e), Scalar::Fp(1));
            let nf = gb.reduce(&enc.mul(&m, r0p));
            rows.push((m, nf));
        }
        blocks.push((x.clone(), rows));
    }
    let target = gb.reduce(&enc.one());
    let mut cols: BTreeMap<MultiIndex, usize> = BTreeMap::new();
    for f in blocks.iter().flat_map(|(_, r)| r.iter().map(|(_, nf)| nf)).chain(std::iter::once(&target)) {
        for (e, _) in f.terms() {
            let k = cols.len();
            cols.entry(e.clone()).or_insert(k);
        }
    }
    let d = enc.domain();
    let vec_of = |f: &SkewPoly| {
        let mut v = vec![d.zero(); cols.len()];
        for (e, c) in f.terms() {
            v[cols[e]] = c.clone();
        }
        v
    };
    let tv = vec_of(&target);
    let mut span = LeftSpan::new(d, cols.len(), true);
    let mut inserted: Vec<SkewPoly> = Vec::new();
    let order: Vec<usize> = if lift { (0..blocks.len()).rev().collect() } else { (0..blocks.len()).collect() };
    for bi in order {
        for (m, nf) in &blocks[bi].1 {
            span.insert(&vec_of(nf));
            inserted.push(m.clone());
        }
        if lift {
            continue;
        }
        if let Some(c) = span.express(&tv) {
            return Ok(combine(enc, &inserted, &c));
        }
    }
    match span.express(&tv) {
        Some(c) if lift => Ok(combine(enc, &inserted, &c)),
        _ => Err(Error::SearchExhausted(format!("no Q with x-degree <= {window} and y-degree <= {ycap}"))),
    }
}

fn pad(x: &MultiIndex) -> MultiIndex {
    let mut e = vec![0];
    e.extend_from_slice(x.exps());
    MultiIndex::from_slice(&e)
}

fn combine(enc: &SkewRing, ms: &[SkewPoly], c: &[Scalar]) -> SkewPoly {
    let mut q = enc.zero();
    for (m, c) in ms.iter().zip(c) {
        q = enc.add(&q, &enc.scale_left(c, m));
    }
    q
}

/// `P ∈ I` with leading `x`-term `b x^m`, as a combination of basis elements.
fn lift_leading(enc: &SkewRing, gb: &GroebnerBasis, m: &MultiIndex, b: &[u64], p: u64) -> Result<SkewPoly> {
    let mut usable: Vec<(MultiIndex, FpPoly, &SkewPoly)> = Vec::new();
    for g in gb.basis() {
        let (x, lc) = leading_x(enc, g).expect("nonzero basis element");
        if let Ok(u) = m.sub(&x) {
            usable.push((u, lc, g));
        }
    }
    // Bezout coefficients: sum s_k lc_k = gcd.
    let mut acc: FpPoly = Vec::new();
    let mut coefs: Vec<FpPoly> = Vec::new();
    for (_, lc, _) in &usable {
        if acc.is_empty() {
            let inv = fpoly::inv_mod(*lc.last().expect("nonzero"), p);
            acc = fpoly::monic(lc, p);
            coefs.push(vec![inv]);
        } else {
            let (g, s, t) = fpoly::ext_gcd(&acc, lc, p);
            for c in coefs.iter_mut() {
                *c = fpoly::mul(c, &s, p);
            }
            coefs.push(t);
            acc = g;
        }
    }
    if acc.is_empty() || !fpoly::divides(&acc, b, p) {
        return Err(Error::DescentFailed(format!("{} is not a leading coefficient of I at {m}", show(p, b))));
    }
    let scale = fpoly::divmod(b, &acc, p).0;
    let mut out = enc.zero();
    for ((u, _, g), s) in usable.iter().zip(&coefs) {
        let s = fpoly::mul(s, &scale, p);
        if s.is_empty() {
            continue;
        }
        let term = enc.mul(&enc.mul(&embed_r(enc, &s), &x_monomial(enc, u)), g);
        out = enc.add(&out, &term);
    }
    match leading_x(enc, &out) {
        Some((x, c)) if &x == m && c == fpoly::trim(b.to_vec()) => Ok(out),
        _ => Err(Error::DescentFailed("combined element has the wrong leading term".into())),
    }
}

/// `P1` with `P1 r0 = F`, by exact division of `x`-coefficients.
fn right_divide_by_r(enc: &SkewRing, f: &SkewPoly, r0: &[u64], r0p: &SkewPoly, p: u64) -> Result<SkewPoly> {
    let mut t = f.clone();
    let mut q = enc.zero();
    while let Some((x, c)) = leading_x(enc, &t) {
        let (qk, rem) = fpoly::divmod(&c, r0, p);
        if !rem.is_empty() {
            return Err(Error::DescentFailed(format!("{} is not right divisible by {}", enc.format(f), show(p, r0))));
        }
        let term = join_x(enc, &[(x, qk)]);
        q = enc.add(&q, &term);
        t = enc.sub(&t, &enc.mul(&term, r0p));
    }
    Ok(q)
}

/// Given a proper left ideal `I` of the encoded ring and a certified `r0`,
/// returns a nonzero `a r0 - 1 ∈ I ∩ R` (or `r0` itself when `r0 ∈ I`).
pub fn prop32_extract(ideal: &LeftIdeal, ext: &PidExtension, r0: &[u64], mode: &StartMode) -> Result<Extraction> {
    let enc = ext.encode()?;
    if ideal.ring() != &enc {
        return Err(Error::RingMismatch("ideal must live in the encoded ring".into()));
    }
    let p = ext.p();
    let r0 = fpoly::trim(r0.to_vec());
    if r0.is_empty() {
        return Err(Error::ZeroInput("r0 must be nonzero".into()));
    }
    if let Some(why) = ext.invariance_failure(&r0) {
        return Err(Error::DescentFailed(format!("r0 is not invariant: {why}")));
    }
    let gb = ideal.groebner()?;
    if gb.is_whole_ring() {
        return Err(Error::NotProper);
    }
    let r0p = embed_r(&enc, &r0);
    if gb.member(&r0p) {
        return Ok(Extraction {
            r0: show(p, &r0),
            start: None,
            trace: Vec::new(),
            a: None,
            element: show(p, &r0),
            element_r: r0.clone(),
            element_poly: r0p,
        });
    }
    let one = enc.one();
    let mut q = match mode {
        StartMode::Minimal { window, ycap } => start_q(&enc, &gb, &r0p, *window, *ycap, false)?,
        StartMode::Lift { window, ycap } => start_q(&enc, &gb, &r0p, *window, *ycap, true)?,
        StartMode::Explicit(q) => q.clone(),
    };
    if !gb.member(&enc.sub(&enc.mul(&q, &r0p), &one)) {
        return Err(Error::Verification("the starting Q does not satisfy Q r0 - 1 ∈ I".into()));
    }
    let start = enc.format(&q);
    let zero_x = MultiIndex::zero(ext.nvars());
    let mut trace = Vec::new();
    loop {
        let (m, a) = leading_x(&enc, &q).ok_or_else(|| Error::DescentFailed("Q vanished".into()))?;
        if m == zero_x {
            break;
        }
        // Q r0 has leading x-coefficient a sigma^m(r0) = a r0 because sigma is the identity here.
        let sm = ext.sigma_pow(&m, &r0);
        let (b, rem) = fpoly::divmod(&fpoly::mul(&a, &sm, p), &r0, p);
        debug_assert!(rem.is_empty(), "invariance makes r0 divide sigma^m(r0)");
        let big_p = lift_leading(&enc, &gb, &m, &b, p)?;
        let p1 = right_divide_by_r(&enc, &enc.mul(&r0p, &big_p), &r0, &r0p, p)?;
        let lt = leading_x(&enc, &p1);
        if lt.as_ref() != Some(&(m.clone(), a.clone())) {
            return Err(Error::DescentFailed("lt(P1) differs from lt(Q)".into()));
        }
        trace.push(DescentStep { le: m.clone(), a: show(p, &a), b: show(p, &b), lt_p1: format!("({})*{}", show(p, &a), enc.format_monomial(&pad(&m))) });
        q = enc.sub(&q, &p1);
        if let Some((m2, _)) = leading_x(&enc, &q) {
            if enc.cmp_exponents(&pad(&m2), &pad(&m)) != std::cmp::Ordering::Less {
                return Err(Error::DescentFailed("leading exponent did not decrease".into()));
            }
        }
    }
    let a = r_part(&enc, &q).expect("x-degree zero");
    let elem = fpoly::sub(&fpoly::mul(&a, &r0, p), &[1], p);
    let elem_poly = embed_r(&enc, &elem);
    if elem.is_empty() {
        return Err(Error::DescentFailed("a r0 - 1 vanished".into()));
    }
    if !gb.member(&elem_poly) {
        return Err(Error::Verification(format!("{} is not in I", show(p, &elem))));
    }
    Ok(Extraction {
        r0: show(p, &r0),
        start: Some(start),
        trace,
        a: Some(show(p, &a)),
        element: show(p, &elem),
        element_r: elem,
        element_poly: elem_poly,
    })
}
