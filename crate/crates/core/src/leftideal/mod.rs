//! Left ideals of skew polynomial rings over division rings.
//!
//! Reduction cancels the leading term of `f` against `c x^u g`, whose leading
//! term is `c sigma^u(lc g) x^{u + le g}`. S-polynomials use the same twist.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::LeftSpan;
use crate::monomials::{LeadingData, MultiIndex, OrderKind, TermOrder};
use crate::scalars::Scalar;
use crate::skewring::{SkewPoly, SkewRing};

/// Upper bound on S-pairs processed by one completion.
pub const DEFAULT_PAIR_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftIdeal {
    ring: SkewRing,
    gens: Vec<SkewPoly>,
}

impl LeftIdeal {
    /// Zero generators are dropped.
    pub fn new(ring: &SkewRing, gens: Vec<SkewPoly>) -> Result<LeftIdeal> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(LeftIdeal { ring: ring.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn parse(ring: &SkewRing, gens: &[&str]) -> Result<LeftIdeal> {
        LeftIdeal::new(ring, gens.iter().map(|s| ring.parse(s)).collect::<Result<_>>()?)
    }

    /// An ideal file is a JSON list of polynomial strings.
    pub fn from_json(ring: &SkewRing, s: &str) -> Result<LeftIdeal> {
        let v: Vec<String> = serde_json::from_str(s)?;
        LeftIdeal::new(ring, v.iter().map(|g| ring.parse(g)).collect::<Result<_>>()?)
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn gens(&self) -> &[SkewPoly] {
        &self.gens
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(SkewPoly::total_degree).max().unwrap_or(0)
    }

    /// The same generators with one more appended.
    pub fn with_generator(&self, g: SkewPoly) -> LeftIdeal {
        let mut gens = self.gens.clone();
        if !g.is_zero() {
            gens.push(g);
        }
        LeftIdeal { ring: self.ring.clone(), gens }
    }

    pub fn groebner(&self) -> Result<GroebnerBasis> {
        buchberger(self)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs: usize,
    pub zero_reductions: usize,
    pub peak_size: usize,
}

/// A reduced left Groebner basis, sorted ascending by leading exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: SkewRing,
    basis: Vec<SkewPoly>,
    leads: Vec<MultiIndex>,
    pub stats: GbStats,
}

fn require_division_ring(ring: &SkewRing) -> Result<()> {
    if ring.domain().is_division_ring() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "left reduction needs division-ring coefficients; adjoin the PID generator as a variable instead".into(),
        ))
    }
}

/// Normalizes `g` to leading coefficient one by a left scalar.
fn make_monic(ring: &SkewRing, g: &SkewPoly) -> SkewPoly {
    let c = ring.lc(g).expect("nonzero");
    ring.scale_left(&ring.domain().inv(&c).expect("division ring"), g)
}

/// Full left reduction of `f` modulo `basis` with precomputed `leads`.
fn reduce_with(ring: &SkewRing, f: &SkewPoly, basis: &[SkewPoly], leads: &[MultiIndex]) -> SkewPoly {
    let d = ring.domain();
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let LeadingData::Term { exponent: e, coeff: c } = ring.leading(&p) {
        match leads.iter().position(|l| l.divides(&e)) {
            Some(k) => {
                let u = e.sub(&leads[k]).expect("divides");
                let lc = ring.lc(&basis[k]).expect("nonzero");
                let scale = d.div(&c, &ring.apply_sigma_pow(&u, &lc)).expect("division ring");
                let before = e.clone();
                p = ring.sub_scaled_mul(&p, &scale, &u, &basis[k]);
                debug_assert!(ring.le(&p).is_none_or(|l| ring.cmp_exponents(&l, &before).is_lt()));
            }
            None => {
                p = ring.sub(&p, &ring.monomial(e.clone(), c.clone()));
                rem.push((e, c));
            }
        }
    }
    ring.from_terms(rem)
}

/// Left normal form of `f` with respect to `gens`, which need not be a basis.
pub fn left_reduce(ring: &SkewRing, f: &SkewPoly, gens: &[SkewPoly]) -> Result<SkewPoly> {
    require_division_ring(ring)?;
    ring.check(f)?;
    let gens: Vec<SkewPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let leads: Vec<MultiIndex> = gens.iter().map(|g| ring.le(g).expect("nonzero")).collect();
    Ok(reduce_with(ring, f, &gens, &leads))
}

fn s_poly(ring: &SkewRing, f: &SkewPoly, lf: &MultiIndex, g: &SkewPoly, lg: &MultiIndex) -> SkewPoly {
    // both monic: x^u f - x^v g cancels at lcm
    let l = lf.lcm(lg);
    let u = l.sub(lf).expect("lcm");
    let v = l.sub(lg).expect("lcm");
    ring.sub(&ring.left_mul_monomial(&u, f), &ring.left_mul_monomial(&v, g))
}

pub fn buchberger(ideal: &LeftIdeal) -> Result<GroebnerBasis> {
    buchberger_limited(ideal, DEFAULT_PAIR_LIMIT)
}

pub fn buchberger_limited(ideal: &LeftIdeal, pair_limit: usize) -> Result<GroebnerBasis> {
    let ring = &ideal.ring;
    require_division_ring(ring)?;
    let mut stats = GbStats::default();
    let mut basis: Vec<SkewPoly> = Vec::new();
    let mut leads: Vec<MultiIndex> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push = |g: SkewPoly, basis: &mut Vec<SkewPoly>, leads: &mut Vec<MultiIndex>, pairs: &mut Vec<(usize, usize)>| {
        let g = make_monic(ring, &g);
        let k = basis.len();
        leads.push(ring.le(&g).expect("nonzero"));
        basis.push(g);
        pairs.extend((0..k).map(|i| (i, k)));
    };
    for g in &ideal.gens {
        let r = reduce_with(ring, g, &basis, &leads);
        if !r.is_zero() {
            push(r, &mut basis, &mut leads, &mut pairs);
        }
    }
    while let Some((i, j)) = pairs.pop() {
        stats.pairs += 1;
        if stats.pairs > pair_limit {
            return Err(Error::TooLarge(format!("more than {pair_limit} S-pairs")));
        }
        let s = s_poly(ring, &basis[i], &leads[i], &basis[j], &leads[j]);
        let r = reduce_with(ring, &s, &basis, &leads);
        if r.is_zero() {
            stats.zero_reductions += 1;
        } else {
            push(r, &mut basis, &mut leads, &mut pairs);
            stats.peak_size = stats.peak_size.max(basis.len());
        }
    }
    stats.peak_size = stats.peak_size.max(basis.len());
    Ok(GroebnerBasis::finish(ring, basis, stats))
}

impl GroebnerBasis {
    /// Minimizes and inter-reduces a completed basis.
    fn finish(ring: &SkewRing, basis: Vec<SkewPoly>, stats: GbStats) -> GroebnerBasis {
        let mut items: Vec<(MultiIndex, SkewPoly)> = basis.into_iter().map(|g| (ring.le(&g).expect("nonzero"), g)).collect();
        items.sort_by(|a, b| ring.cmp_exponents(&a.0, &b.0));
        let mut minimal: Vec<(MultiIndex, SkewPoly)> = Vec::new();
        for (l, g) in items {
            if !minimal.iter().any(|(m, _)| m.divides(&l)) {
                minimal.push((l, g));
            }
        }
        let leads: Vec<MultiIndex> = minimal.iter().map(|x| x.0.clone()).collect();
        let polys: Vec<SkewPoly> = minimal.iter().map(|x| x.1.clone()).collect();
        let mut out = Vec::with_capacity(polys.len());
        for k in 0..polys.len() {
            let others: Vec<SkewPoly> = polys.iter().enumerate().filter(|(i, _)| *i != k).map(|x| x.1.clone()).collect();
            let other_leads: Vec<MultiIndex> = leads.iter().enumerate().filter(|(i, _)| *i != k).map(|x| x.1.clone()).collect();
            // the lead is irreducible by minimality, so only the tail changes
            let lead = ring.monomial(leads[k].clone(), ring.lc(&polys[k]).expect("nonzero"));
            let tail = ring.sub(&polys[k], &lead);
            let g = ring.add(&lead, &reduce_with(ring, &tail, &others, &other_leads));
            out.push(make_monic(ring, &g));
        }
        GroebnerBasis { ring: ring.clone(), basis: out, leads, stats }
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn basis(&self) -> &[SkewPoly] {
        &self.basis
    }

    pub fn leads(&self) -> &[MultiIndex] {
        &self.leads
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole_ring(&self) -> bool {
        self.leads.iter().any(MultiIndex::is_zero)
    }

    pub fn reduce(&self, f: &SkewPoly) -> SkewPoly {
        reduce_with(&self.ring, f, &self.basis, &self.leads)
    }

    pub fn member(&self, f: &SkewPoly) -> bool {
        self.reduce(f).is_zero()
    }

    /// Rechecks the defining properties: generators and S-polynomials reduce
    /// to zero, leads are pairwise non-dividing, coefficients are monic and
    /// no tail term is reducible.
    pub fn verify(&self, gens: &[SkewPoly]) -> Result<()> {
        let r = &self.ring;
        for g in gens {
            if !self.member(g) {
                return Err(Error::Verification(format!("generator {} does not reduce to zero", r.format(g))));
            }
        }
        for i in 0..self.basis.len() {
            if !r.domain().is_one(&r.lc(&self.basis[i]).expect("nonzero")) {
                return Err(Error::Verification(format!("{} is not monic", r.format(&self.basis[i]))));
            }
            for (e, _) in self.basis[i].terms() {
                for (j, l) in self.leads.iter().enumerate() {
                    if l.divides(e) && (j != i || e != &self.leads[i]) {
                        return Err(Error::Verification(format!("{} is not inter-reduced", r.format(&self.basis[i]))));
                    }
                }
            }
            for j in i + 1..self.basis.len() {
                let s = s_poly(r, &self.basis[i], &self.leads[i], &self.basis[j], &self.leads[j]);
                if !self.member(&s) {
                    return Err(Error::Verification(format!("S-polynomial of basis elements {i}, {j} is nonzero")));
                }
            }
        }
        Ok(())
    }

    pub fn format(&self) -> Vec<String> {
        self.basis.iter().map(|g| self.ring.format(g)).collect()
    }
}

pub fn member(f: &SkewPoly, ideal: &LeftIdeal) -> Result<bool> {
    Ok(ideal.groebner()?.member(f))
}

/// Explicit left combination `f = sum c x^u g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    /// `(u, j, c)` for the term `c x^u g_j`.
    pub terms: Vec<(MultiIndex, usize, Scalar)>,
}

impl Combination {
    pub fn expand(&self, ring: &SkewRing, gens: &[SkewPoly]) -> SkewPoly {
        self.terms.iter().fold(ring.zero(), |acc, (u, j, c)| {
            ring.add(&acc, &ring.mul(&ring.monomial(u.clone(), c.clone()), &gens[*j]))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(Combination),
    Unknown,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

/// All exponents of total degree at most `d` in `n` variables.
pub fn exponents_upto(n: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if i == cur.len() {
            out.push(MultiIndex::from_slice(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

fn column_index(polys: &[&SkewPoly]) -> Vec<MultiIndex> {
    let set: BTreeSet<MultiIndex> = polys.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
    set.into_iter().collect()
}

fn to_row(ring: &SkewRing, f: &SkewPoly, cols: &[MultiIndex]) -> Vec<Scalar> {
    cols.iter().map(|e| f.coeff(e).cloned().unwrap_or_else(|| ring.domain().zero())).collect()
}

/// Decides `f = sum_j sum_{|u| <= cap} c_{u,j} x^u g_j` by exact linear algebra.
pub fn member_bruteforce(f: &SkewPoly, ideal: &LeftIdeal, cap: u32) -> Result<Membership> {
    let ring = &ideal.ring;
    if ring.domain().is_polynomial() {
        return Err(Error::Unsupported("brute-force membership needs field or division-ring coefficients".into()));
    }
    ring.check(f)?;
    let mut labels = Vec::new();
    let mut prods = Vec::new();
    for u in exponents_upto(ring.nvars(), cap) {
        for (j, g) in ideal.gens.iter().enumerate() {
            prods.push(ring.left_mul_monomial(&u, g));
            labels.push((u.clone(), j));
        }
    }
    let mut all: Vec<&SkewPoly> = prods.iter().collect();
    all.push(f);
    let cols = column_index(&all);
    let mut span = LeftSpan::new(ring.domain(), cols.len(), true);
    for p in &prods {
        span.insert(&to_row(ring, p, &cols));
    }
    let Some(coeffs) = span.express(&to_row(ring, f, &cols)) else {
        return Ok(Membership::Unknown);
    };
    let terms = labels
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !ring.domain().is_zero(c))
        .map(|((u, j), c)| (u, j, c))
        .collect();
    let comb = Combination { terms };
    if comb.expand(ring, &ideal.gens) != *f {
        return Err(Error::Verification("brute-force witness does not expand to the target".into()));
    }
    Ok(Membership::Yes(comb))
}

/// Default brute-force cap: twice the largest input degree plus two.
pub fn default_cap(f: &SkewPoly, ideal: &LeftIdeal) -> u32 {
    2 * ideal.max_degree().max(f.total_degree().unwrap_or(0)) + 2
}

/// Generators of `I` intersected with the subring on the kept variables,
/// read off a Groebner basis for the block order that ranks every other
/// variable above them.
pub fn eliminate(ideal: &LeftIdeal, keep: &[usize]) -> Result<Vec<SkewPoly>> {
    let ring = &ideal.ring;
    if let Some(&k) = keep.iter().find(|&&k| k >= ring.nvars()) {
        return Err(Error::Malformed(format!("no variable with index {k}")));
    }
    // scalar commutators keep every coefficient subring generated by variables closed
    let elim = ring.with_order(TermOrder::elimination(ring.nvars(), keep))?;
    let gb = LeftIdeal::new(&elim, ideal.gens.clone())?.groebner()?;
    Ok(gb.basis().iter().filter(|g| g.supported_on(keep)).cloned().collect())
}

fn deglex_ring(ring: &SkewRing) -> Result<SkewRing> {
    if ring.order().kind == OrderKind::DegLex {
        return Ok(ring.clone());
    }
    ring.with_order(TermOrder::with_significance(OrderKind::DegLex, ring.order().significance().to_vec())?)
}

/// Echelon basis of `{f in I : deg f <= d}`.
pub fn slice_basis(ideal: &LeftIdeal, d: u32) -> Result<Vec<SkewPoly>> {
    let (ring, rows, cols) = slice_rows(ideal, d)?;
    let mut span = LeftSpan::new(ring.domain(), cols.len(), false);
    for r in &rows {
        span.insert(r);
    }
    Ok(span
        .reduced_basis()
        .into_iter()
        .map(|row| ring.from_terms(cols.iter().cloned().zip(row)))
        .collect())
}

fn slice_rows(ideal: &LeftIdeal, d: u32) -> Result<(SkewRing, Vec<Vec<Scalar>>, Vec<MultiIndex>)> {
    let ring = deglex_ring(&ideal.ring)?;
    let gb = LeftIdeal::new(&ring, ideal.gens.clone())?.groebner()?;
    // columns: largest first, so echelon pivots sit on leading terms
    let mut cols = exponents_upto(ring.nvars(), d);
    cols.sort_by(|a, b| ring.cmp_exponents(b, a));
    let mut rows = Vec::new();
    for (g, l) in gb.basis().iter().zip(gb.leads()) {
        if l.degree() > d {
            continue;
        }
        for u in exponents_upto(ring.nvars(), d - l.degree()) {
            rows.push(to_row(&ring, &ring.left_mul_monomial(&u, g), &cols));
        }
    }
    Ok((ring, rows, cols))
}

/// `dim({f in I : deg f <= d} ∩ span of monomials in the kept variables})`.
pub fn slice_intersection_dim(ideal: &LeftIdeal, d: u32, keep: &[usize]) -> Result<usize> {
    let (ring, rows, cols) = slice_rows(ideal, d)?;
    let mut full = LeftSpan::new(ring.domain(), cols.len(), false);
    let outside: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c].supported_on(keep)).collect();
    let mut proj = LeftSpan::new(ring.domain(), outside.len(), false);
    for r in &rows {
        full.insert(r);
        proj.insert(&outside.iter().map(|&c| r[c].clone()).collect::<Vec<_>>());
    }
    Ok(full.rank() - proj.rank())
}

/// Leading exponents, standard monomials and quotient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseReport {
    pub leads: Vec<MultiIndex>,
    pub finite: bool,
    pub dimension: Option<usize>,
    pub standard_monomials: Option<Vec<MultiIndex>>,
    /// A variable with no pure-power leading monomial.
    pub witness_axis: Option<usize>,
}

pub fn staircase(gb: &GroebnerBasis) -> StaircaseReport {
    let n = gb.ring.nvars();
    let leads = gb.leads.clone();
    let mut bounds = Vec::with_capacity(n);
    for k in 0..n {
        let pure = leads.iter().filter(|l| l.supported_on(&[k])).map(|l| l.get(k)).min();
        match pure {
            Some(m) => bounds.push(m),
            None => {
                return StaircaseReport { leads, finite: false, dimension: None, standard_monomials: None, witness_axis: Some(k) }
            }
        }
    }
    let mut std = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let e = MultiIndex::from_slice(&cur);
        if !leads.iter().any(|l| l.divides(&e)) {
            std.push(e);
        }
        let mut i = 0;
        loop {
            if i == n {
                std.sort_by(|a, b| gb.ring.cmp_exponents(a, b));
                return StaircaseReport {
                    leads,
                    finite: true,
                    dimension: Some(std.len()),
                    standard_monomials: Some(std),
                    witness_axis: None,
                };
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests;
