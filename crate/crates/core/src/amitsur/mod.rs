//! Transporters, the extension condition on ideal families, offender sets,
//! witness search and the descent extracting an element of `I ∩ R`.
//!
//! The base ring is always `R = F_p[y]`. An extension `S = R[x1..xn]` is
//! described by per-variable maps `y -> c_i y` and derivations `0` or `d/dy`.
//! Groebner computations run in the encoded ring `F_p[y, x1..xn]`, where `y`
//! is the least significant variable and `d/dy` becomes the commutator
//! `x_i y = y x_i + 1`.

mod extract;

use serde::{Deserialize, Serialize};

pub use extract::{prop32_extract, DescentStep, Extraction, StartMode};

use crate::error::{Error, Result};
use crate::leftideal::{GroebnerBasis, LeftIdeal};
use crate::monomials::{MultiIndex, TermOrder};
use crate::scalars::fpoly::{self, FpPoly, IrreducibleStream};
use crate::scalars::{DerSpec, Domain, EndoSpec, Scalar};
use crate::skewring::{default_names, SkewPoly, SkewRing};

/// Formats an element of `F_p[y]`.
pub fn show(p: u64, a: &[u64]) -> String {
    Domain::fp_poly(p, "y").expect("prime").format(&Scalar::FpPoly(a.to_vec()))
}

/// Parses an element of `F_p[y]`.
pub fn parse_r(p: u64, s: &str) -> Result<FpPoly> {
    match Domain::fp_poly(p, "y")?.parse(s)? {
        Scalar::FpPoly(v) => Ok(v),
        _ => unreachable!("polynomial domain"),
    }
}

/// `(u) ⊆ (v)` for principal ideals of `F_p[y]`.
pub fn ideal_contained(u: &[u64], v: &[u64], p: u64) -> bool {
    if u.is_empty() {
        true
    } else if v.is_empty() {
        false
    } else {
        fpoly::divides(v, u, p)
    }
}

/// Monic generator of `(R a : r) = {s : s r ∈ R a}`; the empty vector is the zero ideal.
pub fn transporter(a: &[u64], r: &[u64], p: u64) -> FpPoly {
    if r.is_empty() {
        return vec![1];
    }
    if a.is_empty() {
        return Vec::new();
    }
    let g = fpoly::gcd(a, r, p);
    fpoly::monic(&fpoly::divmod(a, &g, p).0, p)
}

/// Monic irreducible factors with multiplicity.
pub fn pid_factor(a: &[u64], p: u64) -> Result<Vec<(FpPoly, usize)>> {
    if a.is_empty() {
        return Err(Error::ZeroInput("factorization of zero".into()));
    }
    Ok(fpoly::factor(a, p))
}

/// The first `count` monic irreducibles of `F_p[y]` in (degree, index) order.
pub fn maximal_ideal_stream(p: u64, count: usize) -> Vec<FpPoly> {
    IrreducibleStream::new(p).take(count).collect()
}

/// `S = F_p[y][x1..xn]` with `x_i a(y) = a(c_i y) x_i + delta_i(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PidExtension {
    p: u64,
    vars: Vec<String>,
    scales: Vec<u64>,
    derivs: Vec<bool>,
}

impl PidExtension {
    pub fn new(p: u64, vars: Vec<String>, scales: Vec<u64>, derivs: Vec<bool>) -> Result<PidExtension> {
        if !fpoly::is_prime(p) {
            return Err(Error::Malformed(format!("{p} is not prime")));
        }
        if scales.len() != vars.len() || derivs.len() != vars.len() {
            return Err(Error::Malformed("one scale and one derivation flag per variable".into()));
        }
        for (i, &c) in scales.iter().enumerate() {
            if c % p == 0 {
                return Err(Error::Malformed(format!("scale for {} must be nonzero", vars[i])));
            }
            if derivs[i] && c % p != 1 {
                return Err(Error::Unsupported(format!("d/dy is a derivation only for sigma = identity ({})", vars[i])));
            }
        }
        Ok(PidExtension { p, vars, scales: scales.iter().map(|c| c % p).collect(), derivs })
    }

    /// The commutative extension `F_p[y][x1..xn]`.
    pub fn commutative(p: u64, n: usize) -> Result<PidExtension> {
        PidExtension::new(p, default_names(n), vec![1; n], vec![false; n])
    }

    /// Reads a ring over an `fp_poly` domain with scale maps and `d/dy`.
    pub fn from_ring(ring: &SkewRing) -> Result<PidExtension> {
        let d = ring.domain();
        if !d.is_polynomial() || d.characteristic() == 0 {
            return Err(Error::Unsupported("the base ring must be F_p[y]".into()));
        }
        if ring.has_commutators() {
            return Err(Error::Unsupported("variable commutators over F_p[y]".into()));
        }
        let mut scales = Vec::new();
        let mut derivs = Vec::new();
        for i in 0..ring.nvars() {
            scales.push(match ring.sigma(i) {
                EndoSpec::Identity => 1,
                EndoSpec::Scale(Scalar::FpPoly(c)) if c.len() == 1 => c[0],
                s => return Err(Error::Unsupported(format!("sigma {} over F_p[y]", s.format(d)))),
            });
            derivs.push(match ring.delta(i) {
                DerSpec::Zero => false,
                DerSpec::Derivative => true,
                s => return Err(Error::Unsupported(format!("delta {} over F_p[y]", s.format(d)))),
            });
        }
        PidExtension::new(d.characteristic(), ring.var_names().to_vec(), scales, derivs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn scales(&self) -> &[u64] {
        &self.scales
    }

    /// The ring with `F_p[y]` as its coefficient domain.
    pub fn direct_ring(&self) -> SkewRing {
        let d = Domain::fp_poly(self.p, "y").expect("prime");
        let sigma = self
            .scales
            .iter()
            .map(|&c| if c == 1 { EndoSpec::Identity } else { EndoSpec::Scale(Scalar::FpPoly(vec![c])) })
            .collect();
        let delta = self.derivs.iter().map(|&b| if b { DerSpec::Derivative } else { DerSpec::Zero }).collect();
        SkewRing::new(d, self.vars.clone(), sigma, delta, vec![], TermOrder::lex(self.nvars())).expect("valid extension")
    }

    /// `F_p[y, x1..xn]` with default lex (so `y` is least significant).
    pub fn encode(&self) -> Result<SkewRing> {
        if self.scales.iter().any(|&c| c != 1) {
            return Err(Error::Unsupported("only sigma = identity admits the adjoined-variable encoding".into()));
        }
        let n = self.nvars();
        let mut vars = vec!["y".to_string()];
        vars.extend(self.vars.iter().cloned());
        let one = Scalar::Fp(1);
        let comms = (0..n).filter(|&i| self.derivs[i]).map(|i| (0, i + 1, one.clone())).collect();
        SkewRing::new(
            Domain::prime(self.p)?,
            vars,
            vec![EndoSpec::Identity; n + 1],
            vec![DerSpec::Zero; n + 1],
            comms,
            TermOrder::lex(n + 1),
        )
    }

    pub fn sigma(&self, i: usize, r: &[u64]) -> FpPoly {
        fpoly::substitute_scale(r, self.scales[i], self.p)
    }

    pub fn sigma_pow(&self, e: &MultiIndex, r: &[u64]) -> FpPoly {
        let c = (0..self.nvars()).fold(1u64, |acc, i| fpoly::mul_mod(acc, fpoly::pow_mod(self.scales[i], e.get(i) as u64, self.p), self.p));
        fpoly::substitute_scale(r, c, self.p)
    }

    pub fn delta(&self, i: usize, r: &[u64]) -> FpPoly {
        if self.derivs[i] {
            fpoly::derivative(r, self.p)
        } else {
            Vec::new()
        }
    }

    /// `r S ⊆ S r`: for commutative `R` this is `sigma_i(r), delta_i(r) ∈ (r)` for every `i`.
    pub fn invariance_failure(&self, r: &[u64]) -> Option<String> {
        for i in 0..self.nvars() {
            if !ideal_contained(&self.sigma(i, r), r, self.p) {
                return Some(format!("sigma_{}({}) not in ({})", self.vars[i], show(self.p, r), show(self.p, r)));
            }
            if !ideal_contained(&self.delta(i, r), r, self.p) {
                return Some(format!("delta_{}({}) not in ({})", self.vars[i], show(self.p, r), show(self.p, r)));
            }
        }
        None
    }

    /// Invariance decided by left-ideal membership `r x_i ∈ S r` in the encoded ring.
    pub fn invariance_by_membership(&self, r: &[u64]) -> Result<bool> {
        let enc = self.encode()?;
        let rr = embed_r(&enc, r);
        let gb = LeftIdeal::new(&enc, vec![rr.clone()])?.groebner()?;
        Ok((1..=self.nvars()).all(|i| gb.member(&enc.mul(&rr, &enc.var(i)))))
    }
}

/// `r(y)` as an element of the encoded ring.
pub fn embed_r(enc: &SkewRing, r: &[u64]) -> SkewPoly {
    let n = enc.nvars();
    enc.from_terms(r.iter().enumerate().map(|(k, &c)| {
        let mut e = MultiIndex::zero(n);
        e.set(0, k as u32);
        (e, Scalar::Fp(c))
    }))
}

/// Splits an encoded polynomial into `x`-exponents with `F_p[y]` coefficients.
pub fn split_x(enc: &SkewRing, f: &SkewPoly) -> Vec<(MultiIndex, FpPoly)> {
    let p = enc.domain().characteristic();
    let n = enc.nvars() - 1;
    let mut out: std::collections::BTreeMap<MultiIndex, FpPoly> = std::collections::BTreeMap::new();
    for (e, c) in f.terms() {
        let x = MultiIndex::from_slice(&e.exps()[1..]);
        let Scalar::Fp(c) = c else { unreachable!("prime field") };
        let slot = out.entry(x).or_insert_with(|| vec![0; 1]);
        let k = e.get(0) as usize;
        if slot.len() <= k {
            slot.resize(k + 1, 0);
        }
        slot[k] = (slot[k] + c) % p;
    }
    debug_assert!(out.keys().all(|k| k.arity() == n));
    out.into_iter().map(|(k, v)| (k, fpoly::trim(v))).filter(|(_, v)| !v.is_empty()).collect()
}

/// `sum_k r_k(y) x^k` in the encoded ring, coefficients on the left.
pub fn join_x(enc: &SkewRing, parts: &[(MultiIndex, FpPoly)]) -> SkewPoly {
    let terms = parts.iter().flat_map(|(x, r)| {
        r.iter().enumerate().map(move |(k, &c)| {
            let mut e = vec![k as u32];
            e.extend_from_slice(x.exps());
            (MultiIndex::from_slice(&e), Scalar::Fp(c))
        })
    });
    enc.from_terms(terms)
}

/// Leading `x`-exponent and its `F_p[y]` coefficient. The `x`-part of the
/// ring's lex order compares the last variable first, matching the order of
/// the leading exponent in the encoded ring.
pub fn leading_x(enc: &SkewRing, f: &SkewPoly) -> Option<(MultiIndex, FpPoly)> {
    let le = enc.le(f)?;
    let x = MultiIndex::from_slice(&le.exps()[1..]);
    split_x(enc, f).into_iter().find(|(k, _)| *k == x)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BaseSpec {
    pub index: Vec<u32>,
    pub gen: String,
}

/// JSON form: `{"p":2,"n":2,"sigma":[1,1],"bases":[{"index":[0,0],"gen":"y"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub p: u64,
    pub n: usize,
    #[serde(default)]
    pub sigma: Option<Vec<u64>>,
    pub bases: Vec<BaseSpec>,
}

/// `I_i = sum over bases b <= i of R sigma^{i-b}(a_b)`, the zero ideal when no base applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFamily {
    p: u64,
    n: usize,
    scales: Vec<u64>,
    bases: Vec<(MultiIndex, FpPoly)>,
}

impl IdealFamily {
    pub fn new(p: u64, scales: Vec<u64>, bases: Vec<(MultiIndex, FpPoly)>) -> Result<IdealFamily> {
        let n = scales.len();
        if !fpoly::is_prime(p) {
            return Err(Error::Malformed(format!("{p} is not prime")));
        }
        if let Some((b, _)) = bases.iter().find(|(b, _)| b.arity() != n) {
            return Err(Error::ArityMismatch(b.arity(), n));
        }
        let bases = bases.into_iter().map(|(b, a)| (b, fpoly::monic(&fpoly::trim(a), p))).collect();
        Ok(IdealFamily { p, n, scales, bases })
    }

    /// A family over the commutative extension (all sigma identity).
    pub fn untwisted(p: u64, n: usize, bases: Vec<(MultiIndex, FpPoly)>) -> Result<IdealFamily> {
        IdealFamily::new(p, vec![1; n], bases)
    }

    pub fn from_descriptor(desc: &FamilyDescriptor) -> Result<IdealFamily> {
        let scales = desc.sigma.clone().unwrap_or_else(|| vec![1; desc.n]);
        if scales.len() != desc.n {
            return Err(Error::Malformed("sigma list length".into()));
        }
        let bases = desc
            .bases
            .iter()
            .map(|b| Ok((MultiIndex::from_slice(&b.index), parse_r(desc.p, &b.gen)?)))
            .collect::<Result<Vec<_>>>()?;
        IdealFamily::new(desc.p, scales, bases)
    }

    pub fn from_json(s: &str) -> Result<IdealFamily> {
        IdealFamily::from_descriptor(&serde_json::from_str(s)?)
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor {
            p: self.p,
            n: self.n,
            sigma: Some(self.scales.clone()),
            bases: self.bases.iter().map(|(b, a)| BaseSpec { index: b.exps().to_vec(), gen: show(self.p, a) }).collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[(MultiIndex, FpPoly)] {
        &self.bases
    }

    fn sigma_pow(&self, e: &MultiIndex, r: &[u64]) -> FpPoly {
        let c = (0..self.n).fold(1u64, |acc, i| fpoly::mul_mod(acc, fpoly::pow_mod(self.scales[i], e.get(i) as u64, self.p), self.p));
        fpoly::substitute_scale(r, c, self.p)
    }

    /// Monic generator of `I_i`; empty for the zero ideal.
    pub fn generator(&self, i: &MultiIndex) -> FpPoly {
        let mut g: FpPoly = Vec::new();
        for (b, a) in &self.bases {
            if let Ok(u) = i.sub(b) {
                let t = self.sigma_pow(&u, a);
                g = if g.is_empty() { fpoly::monic(&t, self.p) } else { fpoly::gcd(&g, &t, self.p) };
            }
        }
        g
    }

    pub fn default_grid(&self) -> u32 {
        self.bases.iter().map(|(b, _)| b.degree()).max().unwrap_or(0) + 2
    }

    /// `sigma^j(I_i) ⊆ I_{i+j}` for all `|i|, |j| <= bound`.
    pub fn translation_failure(&self, bound: u32) -> Option<(MultiIndex, MultiIndex)> {
        let grid = crate::leftideal::exponents_upto(self.n, bound);
        for i in &grid {
            let gi = self.generator(i);
            for j in &grid {
                let target = self.generator(&(i + j));
                if !ideal_contained(&self.sigma_pow(j, &gi), &target, self.p) {
                    return Some((i.clone(), j.clone()));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransporterFailure {
    pub index: MultiIndex,
    pub ideal: String,
    pub lhs: String,
    pub rhs: String,
}

/// Record of the three conditions for one candidate `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Def31Report {
    pub r: String,
    pub passed: bool,
    pub not_unit: bool,
    pub invariant: bool,
    pub invariance_failure: Option<String>,
    /// Whether invariance was also confirmed by membership in the encoded ring.
    pub invariance_by_membership: Option<bool>,
    pub grid_bound: u32,
    pub checked_indices: usize,
    pub failure: Option<TransporterFailure>,
}

/// Checks non-invertibility, `r S ⊆ S r` and
/// `(I_i : sigma^i(r)) ⊆ (r I_i : sigma^i(r))` for every `|i| <= grid`.
pub fn def31_check(fam: &IdealFamily, ext: &PidExtension, r: &[u64], grid: Option<u32>) -> Result<Def31Report> {
    let p = fam.p;
    let r = fpoly::trim(r.to_vec());
    if r.is_empty() {
        return Err(Error::ZeroInput("the candidate must be nonzero".into()));
    }
    if ext.p != p || ext.nvars() != fam.n || ext.scales != fam.scales {
        return Err(Error::RingMismatch("family and extension disagree on p, arity or sigma".into()));
    }
    let bound = grid.unwrap_or_else(|| fam.default_grid());
    let not_unit = fpoly::deg(&r).is_some_and(|d| d > 0);
    let inv_fail = ext.invariance_failure(&r);
    let by_membership = if ext.scales.iter().all(|&c| c == 1) { Some(ext.invariance_by_membership(&r)?) } else { None };
    if by_membership.is_some_and(|m| m != inv_fail.is_none()) {
        return Err(Error::Verification(format!("invariance tests disagree on {}", show(p, &r))));
    }
    let mut checked = 0;
    let mut failure = None;
    for i in crate::leftideal::exponents_upto(fam.n, bound) {
        checked += 1;
        let s = fam.sigma_pow(&i, &r);
        let a = fam.generator(&i);
        let lhs = transporter(&a, &s, p);
        let rhs = transporter(&fpoly::mul(&r, &a, p), &s, p);
        if !ideal_contained(&lhs, &rhs, p) {
            failure = Some(TransporterFailure { index: i, ideal: show(p, &a), lhs: show(p, &lhs), rhs: show(p, &rhs) });
            break;
        }
    }
    Ok(Def31Report {
        r: show(p, &r),
        passed: not_unit && inv_fail.is_none() && failure.is_none(),
        not_unit,
        invariant: inv_fail.is_none(),
        invariance_failure: inv_fail,
        invariance_by_membership: by_membership,
        grid_bound: bound,
        checked_indices: checked,
        failure,
    })
}

/// Monic irreducibles `r` with `(R r0 : r) ⊄ (r R r0 : r)`, found by
/// transporter arithmetic and cross-checked against the factorization of `r0`.
pub fn lemma34_offenders(r0: &[u64], p: u64) -> Result<Vec<FpPoly>> {
    let r0 = fpoly::trim(r0.to_vec());
    if r0.is_empty() {
        return Err(Error::ZeroInput("offenders of zero".into()));
    }
    let deg = fpoly::deg(&r0).unwrap_or(0);
    let mut out = Vec::new();
    for r in IrreducibleStream::new(p) {
        if fpoly::deg(&r).unwrap_or(0) > deg {
            break;
        }
        let lhs = transporter(&r0, &r, p);
        let rhs = transporter(&fpoly::mul(&r, &r0, p), &r, p);
        if !ideal_contained(&lhs, &rhs, p) {
            out.push(r);
        }
    }
    let factors: Vec<FpPoly> = pid_factor(&r0, p)?.into_iter().map(|(f, _)| f).collect();
    let mut a = out.clone();
    let mut b = factors;
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::Verification(format!("offenders of {} differ from its prime factors", show(p, &r0))));
    }
    Ok(out)
}

/// A certified element of the base ring for a given family.
#[derive(Clone, Debug, Serialize)]
pub struct ASWitness {
    #[serde(skip)]
    pub r0: FpPoly,
    pub certificate: Def31Report,
    /// Candidates passed over, with the reason.
    pub skipped: Vec<(String, String)>,
}

/// Streams monic irreducibles, skipping offenders of the base generators and
/// non-invariant candidates, and returns the first fully certified one.
pub fn thm35_witness(fam: &IdealFamily, ext: &PidExtension, max_degree: usize) -> Result<ASWitness> {
    let p = fam.p;
    let mut offenders: Vec<FpPoly> = Vec::new();
    for (_, a) in &fam.bases {
        if !a.is_empty() {
            offenders.extend(lemma34_offenders(a, p)?);
        }
    }
    let mut skipped = Vec::new();
    for r in IrreducibleStream::new(p) {
        if fpoly::deg(&r).unwrap_or(0) > max_degree {
            return Err(Error::SearchExhausted(format!(
                "no invariant irreducible of degree <= {max_degree} avoids the offenders"
            )));
        }
        if offenders.contains(&r) {
            skipped.push((show(p, &r), "offender".into()));
            continue;
        }
        if let Some(why) = ext.invariance_failure(&r) {
            skipped.push((show(p, &r), why));
            continue;
        }
        let report = def31_check(fam, ext, &r, None)?;
        if report.passed {
            return Ok(ASWitness { r0: r, certificate: report, skipped });
        }
        skipped.push((show(p, &r), "transporter inclusion fails".into()));
    }
    unreachable!("the irreducible stream is infinite")
}

/// The family `I_m` of leading `x`-coefficients of a left ideal of the encoded ring.
pub fn leading_ideal_family(ideal: &LeftIdeal, ext: &PidExtension) -> Result<(IdealFamily, GroebnerBasis)> {
    let enc = ext.encode()?;
    if ideal.ring() != &enc {
        return Err(Error::RingMismatch("ideal must live in the encoded ring".into()));
    }
    let gb = ideal.groebner()?;
    let bases = gb.basis().iter().map(|g| leading_x(&enc, g).expect("nonzero")).collect();
    Ok((IdealFamily::untwisted(ext.p, ext.nvars(), bases)?, gb))
}
