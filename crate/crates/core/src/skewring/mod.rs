//! Skew polynomial rings `D[x1,..,xn; sigma, delta]` with scalar commutators.
//!
//! Elements are kept in left-coefficient normal form `sum c_i x^i`, with the
//! variables of each power product in ascending index order. Products are
//! computed by the rewriting rules
//!
//! ```text
//! x_k a   = sigma_k(a) x_k + delta_k(a)
//! x_j x_i = x_i x_j + d_ij            (i < j)
//! ```

mod descriptor;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

pub use descriptor::{OrderSpec, PerVar, RingDescriptor};

use crate::error::{Error, Result};
use crate::linalg::left_kernel;
use crate::monomials::{LeadingData, MultiIndex, OrderKind, TermOrder};
use crate::scalars::{DerSpec, Domain, EndoSpec, Scalar};

/// A polynomial in left-coefficient normal form. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SkewPoly {
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &MultiIndex) -> Option<&Scalar> {
        self.terms.get(e)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    /// True if every power product only involves `vars`.
    pub fn supported_on(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|e| e.supported_on(vars))
    }
}

/// The composite `sigma_1^{i_1} ... sigma_n^{i_n}` as a closed map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPower {
    pub exponent: MultiIndex,
    pub spec: EndoSpec,
}

/// Outcome of the consistency checks performed by [`SkewRing::check_descriptor`].
#[derive(Clone, Debug, Serialize)]
pub struct RingCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRing {
    domain: Domain,
    vars: Vec<String>,
    sigma: Vec<EndoSpec>,
    delta: Vec<DerSpec>,
    /// `comm[i][j]` for `i < j`: `x_j x_i = x_i x_j + comm[i][j]`.
    comm: Vec<Vec<Option<Scalar>>>,
    has_comm: bool,
    has_delta: bool,
    order: TermOrder,
}

impl SkewRing {
    pub fn new(
        domain: Domain,
        vars: Vec<String>,
        sigma: Vec<EndoSpec>,
        delta: Vec<DerSpec>,
        commutators: Vec<(usize, usize, Scalar)>,
        order: TermOrder,
    ) -> Result<SkewRing> {
        let n = vars.len();
        if sigma.len() != n || delta.len() != n {
            return Err(Error::Malformed(format!("need {n} sigmas and deltas")));
        }
        if order.arity() != n {
            return Err(Error::ArityMismatch(order.arity(), n));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Malformed(format!("duplicate variable {v}")));
            }
            if v == domain.gen_name() || (domain.is_quaternion() && ["i", "j", "k"].contains(&v.as_str())) {
                return Err(Error::Malformed(format!("variable {v} shadows a scalar symbol")));
            }
        }
        for s in &sigma {
            s.validate(&domain)?;
        }
        for d in &delta {
            d.validate(&domain)?;
        }
        let mut comm = vec![vec![None; n]; n];
        for (i, j, d) in commutators {
            if i >= j || j >= n {
                return Err(Error::Malformed(format!("commutator indices ({i},{j}) must satisfy i < j < {n}")));
            }
            domain.check(&d)?;
            if domain.is_zero(&d) {
                continue;
            }
            for v in [i, j] {
                if sigma[v] != EndoSpec::Identity || !delta[v].is_zero() {
                    return Err(Error::Unsupported(format!(
                        "commutator on {} requires sigma = identity and delta = zero for that variable",
                        vars[v]
                    )));
                }
            }
            let central = domain.generators().iter().all(|g| domain.mul(g, &d) == domain.mul(&d, g));
            let fixed = (0..n).all(|k| sigma[k].apply(&domain, &d) == d && domain.is_zero(&delta[k].apply(&sigma[k], &domain, &d)));
            if !central || !fixed {
                return Err(Error::Unsupported(format!("commutator {} must be central and constant", domain.format(&d))));
            }
            comm[i][j] = Some(d);
        }
        let has_comm = comm.iter().flatten().any(Option::is_some);
        let has_delta = delta.iter().any(|d| !d.is_zero());
        Ok(SkewRing { domain, vars, sigma, delta, comm, has_comm, has_delta, order })
    }

    pub fn from_descriptor(desc: &RingDescriptor) -> Result<SkewRing> {
        let domain = Domain::new(&desc.domain)?;
        let n = desc.vars.len();
        let sig = desc.sigma.expand(n).ok_or_else(|| Error::Malformed("sigma list length".into()))?;
        let del = desc.delta.expand(n).ok_or_else(|| Error::Malformed("delta list length".into()))?;
        let sigma = sig.iter().map(|s| EndoSpec::parse(s, &domain)).collect::<Result<Vec<_>>>()?;
        let delta = del.iter().map(|s| DerSpec::parse(s, &domain)).collect::<Result<Vec<_>>>()?;
        let index = |name: &str| {
            desc.vars
                .iter()
                .position(|v| v == name.trim())
                .ok_or_else(|| Error::Malformed(format!("unknown variable {name:?}")))
        };
        let mut comms = Vec::new();
        for (key, val) in &desc.commutators {
            let (a, b) = key.split_once(',').ok_or_else(|| Error::Malformed(format!("commutator key {key:?}")))?;
            comms.push((index(a)?, index(b)?, domain.parse(val)?));
        }
        let order = match &desc.order {
            OrderSpec::Named(k) => TermOrder::new(parse_kind(k)?, n),
            OrderSpec::Detailed { kind, priority } => {
                let sig = priority.iter().map(|v| index(v)).collect::<Result<Vec<_>>>()?;
                TermOrder::with_significance(parse_kind(kind)?, sig)?
            }
        };
        SkewRing::new(domain, desc.vars.clone(), sigma, delta, comms, order)
    }

    pub fn from_json(s: &str) -> Result<SkewRing> {
        let desc: RingDescriptor = serde_json::from_str(s)?;
        SkewRing::from_descriptor(&desc)
    }

    pub fn descriptor(&self) -> RingDescriptor {
        let d = &self.domain;
        let mut commutators = BTreeMap::new();
        for i in 0..self.nvars() {
            for j in i + 1..self.nvars() {
                if let Some(c) = &self.comm[i][j] {
                    commutators.insert(format!("{},{}", self.vars[i], self.vars[j]), d.format(c));
                }
            }
        }
        let order = if self.order == TermOrder::new(self.order.kind, self.nvars()) {
            OrderSpec::Named(self.order.name().into())
        } else {
            OrderSpec::Detailed {
                kind: self.order.name().into(),
                priority: self.order.significance().iter().map(|&i| self.vars[i].clone()).collect(),
            }
        };
        RingDescriptor {
            domain: d.descriptor(),
            vars: self.vars.clone(),
            sigma: PerVar::Each(self.sigma.iter().map(|s| s.format(d)).collect()),
            delta: PerVar::Each(self.delta.iter().map(|s| s.format(d)).collect()),
            commutators,
            order,
        }
    }

    /// `GF(p^k)[x1..xn; frobenius, 0]` with the default modulus.
    pub fn gf_frobenius(p: u64, k: usize, n: usize, kind: OrderKind) -> Result<SkewRing> {
        let d = Domain::galois_default(p, k, "w")?;
        let sigma = if k > 1 { EndoSpec::Frobenius(1) } else { EndoSpec::Identity };
        SkewRing::new(d, default_names(n), vec![sigma; n], vec![DerSpec::Zero; n], vec![], TermOrder::new(kind, n))
    }

    /// The Weyl algebra over the rationals in `x, t` with `t x = x t + 1`.
    pub fn weyl(kind: OrderKind) -> SkewRing {
        SkewRing::new(
            Domain::rational(),
            vec!["x".into(), "t".into()],
            vec![EndoSpec::Identity; 2],
            vec![DerSpec::Zero; 2],
            vec![(0, 1, Domain::rational().one())],
            TermOrder::new(kind, 2),
        )
        .expect("weyl descriptor")
    }

    pub fn commutative(domain: Domain, vars: &[&str], kind: OrderKind) -> Result<SkewRing> {
        let n = vars.len();
        SkewRing::new(
            domain,
            vars.iter().map(|s| s.to_string()).collect(),
            vec![EndoSpec::Identity; n],
            vec![DerSpec::Zero; n],
            vec![],
            TermOrder::new(kind, n),
        )
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn sigma(&self, i: usize) -> &EndoSpec {
        &self.sigma[i]
    }

    pub fn delta(&self, i: usize) -> &DerSpec {
        &self.delta[i]
    }

    /// `d_ij` with `x_j x_i = x_i x_j + d_ij`, for `i < j`.
    pub fn commutator(&self, i: usize, j: usize) -> Option<&Scalar> {
        if i < j {
            self.comm[i][j].as_ref()
        } else {
            None
        }
    }

    pub fn has_commutators(&self) -> bool {
        self.has_comm
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// The same ring presented with another term order.
    pub fn with_order(&self, order: TermOrder) -> Result<SkewRing> {
        if order.arity() != self.nvars() {
            return Err(Error::ArityMismatch(order.arity(), self.nvars()));
        }
        Ok(SkewRing { order, ..self.clone() })
    }

    // ---- construction ----

    pub fn zero(&self) -> SkewPoly {
        SkewPoly::zero()
    }

    pub fn one(&self) -> SkewPoly {
        self.constant(self.domain.one())
    }

    pub fn constant(&self, c: Scalar) -> SkewPoly {
        self.monomial(MultiIndex::zero(self.nvars()), c)
    }

    pub fn var(&self, i: usize) -> SkewPoly {
        self.monomial(MultiIndex::unit(self.nvars(), i), self.domain.one())
    }

    pub fn monomial(&self, e: MultiIndex, c: Scalar) -> SkewPoly {
        let mut terms = BTreeMap::new();
        if !self.domain.is_zero(&c) {
            terms.insert(e, c);
        }
        SkewPoly { terms }
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> SkewPoly {
        let mut acc = BTreeMap::new();
        for (e, c) in terms {
            self.add_term(&mut acc, e, c);
        }
        SkewPoly { terms: acc }
    }

    /// Validates arity and coefficient membership.
    pub fn check(&self, f: &SkewPoly) -> Result<()> {
        for (e, c) in f.terms() {
            if e.arity() != self.nvars() {
                return Err(Error::ArityMismatch(e.arity(), self.nvars()));
            }
            self.domain.check(c)?;
            if self.domain.is_zero(c) {
                return Err(Error::Malformed("stored zero coefficient".into()));
            }
        }
        Ok(())
    }

    fn add_term(&self, acc: &mut BTreeMap<MultiIndex, Scalar>, e: MultiIndex, c: Scalar) {
        if self.domain.is_zero(&c) {
            return;
        }
        match acc.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.domain.add(o.get(), &c);
                if self.domain.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    // ---- arithmetic ----

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let mut acc = f.terms.clone();
        for (e, c) in &g.terms {
            self.add_term(&mut acc, e.clone(), c.clone());
        }
        SkewPoly { terms: acc }
    }

    pub fn neg(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly { terms: f.terms.iter().map(|(e, c)| (e.clone(), self.domain.neg(c))).collect() }
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let mut acc = f.terms.clone();
        for (e, c) in &g.terms {
            self.add_term(&mut acc, e.clone(), self.domain.neg(c));
        }
        SkewPoly { terms: acc }
    }

    /// `c * f`, multiplying every coefficient from the left.
    pub fn scale_left(&self, c: &Scalar, f: &SkewPoly) -> SkewPoly {
        if self.domain.is_zero(c) {
            return SkewPoly::zero();
        }
        SkewPoly { terms: f.terms.iter().map(|(e, a)| (e.clone(), self.domain.mul(c, a))).collect() }
    }

    /// `f - c x^u g`, the elementary reduction step.
    pub fn sub_scaled_mul(&self, f: &SkewPoly, c: &Scalar, u: &MultiIndex, g: &SkewPoly) -> SkewPoly {
        let prod = self.mul(&self.monomial(u.clone(), c.clone()), g);
        self.sub(f, &prod)
    }

    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let d = &self.domain;
        let mut acc = BTreeMap::new();
        for (a, c) in &f.terms {
            for (b, e) in &g.terms {
                for (k, s) in self.mono_times_scalar(a, e) {
                    let cs = d.mul(c, &s);
                    if d.is_zero(&cs) {
                        continue;
                    }
                    if self.has_comm {
                        for (m, t) in self.mono_times_mono(&k, b) {
                            self.add_term(&mut acc, m, d.mul(&cs, &t));
                        }
                    } else {
                        self.add_term(&mut acc, &k + b, cs);
                    }
                }
            }
        }
        SkewPoly { terms: acc }
    }

    /// Checked product.
    pub fn try_mul(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mul(f, g))
    }

    pub fn pow(&self, f: &SkewPoly, e: u32) -> SkewPoly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// `x^u * f`.
    pub fn left_mul_monomial(&self, u: &MultiIndex, f: &SkewPoly) -> SkewPoly {
        self.mul(&self.monomial(u.clone(), self.domain.one()), f)
    }

    /// Applies `sigma_1^{e_1} .. sigma_n^{e_n}` directly.
    pub fn apply_sigma_pow(&self, e: &MultiIndex, a: &Scalar) -> Scalar {
        let mut x = a.clone();
        for v in (0..self.nvars()).rev() {
            if self.sigma[v] == EndoSpec::Identity {
                continue;
            }
            for _ in 0..self.reduced_power(v, e.get(v)) {
                x = self.sigma[v].apply(&self.domain, &x);
            }
        }
        x
    }

    /// Frobenius powers wrap around the extension degree.
    fn reduced_power(&self, v: usize, e: u32) -> u32 {
        match (&self.sigma[v], self.domain.extension_degree()) {
            (EndoSpec::Frobenius(_), Some(k)) if k > 0 => e % k as u32,
            _ => e,
        }
    }

    /// `x_v^k * a = sum_l c_l x_v^l`, returned sparse.
    fn var_pow_times_scalar(&self, v: usize, k: u32, a: &Scalar) -> Vec<(u32, Scalar)> {
        let d = &self.domain;
        if self.delta[v].is_zero() {
            let mut x = a.clone();
            if self.sigma[v] != EndoSpec::Identity {
                for _ in 0..self.reduced_power(v, k) {
                    x = self.sigma[v].apply(d, &x);
                }
            }
            return vec![(k, x)];
        }
        let mut coeffs = vec![a.clone()];
        for _ in 0..k {
            let mut next = vec![d.zero(); coeffs.len() + 1];
            for (l, c) in coeffs.iter().enumerate() {
                if d.is_zero(c) {
                    continue;
                }
                next[l + 1] = d.add(&next[l + 1], &self.sigma[v].apply(d, c));
                next[l] = d.add(&next[l], &self.delta[v].apply(&self.sigma[v], d, c));
            }
            coeffs = next;
        }
        coeffs.into_iter().enumerate().filter(|(_, c)| !d.is_zero(c)).map(|(l, c)| (l as u32, c)).collect()
    }

    /// `x^a * c` in normal form.
    fn mono_times_scalar(&self, a: &MultiIndex, c: &Scalar) -> Vec<(MultiIndex, Scalar)> {
        let n = self.nvars();
        if !self.has_delta {
            return vec![(a.clone(), self.apply_sigma_pow(a, c))];
        }
        let mut cur: Vec<(MultiIndex, Scalar)> = vec![(MultiIndex::zero(n), c.clone())];
        for v in (0..n).rev() {
            let k = a.get(v);
            if k == 0 {
                continue;
            }
            let mut acc = BTreeMap::new();
            for (e, s) in &cur {
                for (l, t) in self.var_pow_times_scalar(v, k, s) {
                    let mut e2 = e.clone();
                    e2.set(v, l);
                    self.add_term(&mut acc, e2, t);
                }
            }
            cur = acc.into_iter().collect();
        }
        cur
    }

    /// `x^k * x^b` when scalar commutators are present.
    fn mono_times_mono(&self, k: &MultiIndex, b: &MultiIndex) -> Vec<(MultiIndex, Scalar)> {
        let mut cur: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        cur.insert(k.clone(), self.domain.one());
        for i in 0..self.nvars() {
            for _ in 0..b.get(i) {
                let mut next = BTreeMap::new();
                for (m, c) in &cur {
                    for (m2, c2) in self.mono_times_var(m, i) {
                        self.add_term(&mut next, m2, self.domain.mul(c, &c2));
                    }
                }
                cur = next;
            }
        }
        cur.into_iter().collect()
    }

    /// `x^k * x_i`, moving `x_i` left past every larger variable.
    fn mono_times_var(&self, k: &MultiIndex, i: usize) -> Vec<(MultiIndex, Scalar)> {
        let n = self.nvars();
        let Some(j) = (i + 1..n).rev().find(|&j| k.get(j) > 0) else {
            let mut e = k.clone();
            e.set(i, e.get(i) + 1);
            return vec![(e, self.domain.one())];
        };
        // x^{k'} x_j x_i = x^{k'} x_i x_j + x^{k'} d_ij
        let mut kp = k.clone();
        kp.set(j, kp.get(j) - 1);
        let mut acc = BTreeMap::new();
        for (m, c) in self.mono_times_var(&kp, i) {
            for (m2, c2) in self.mono_times_var(&m, j) {
                self.add_term(&mut acc, m2, self.domain.mul(&c, &c2));
            }
        }
        if let Some(d) = &self.comm[i][j] {
            self.add_term(&mut acc, kp, d.clone());
        }
        acc.into_iter().collect()
    }

    // ---- leading terms ----

    pub fn leading(&self, f: &SkewPoly) -> LeadingData {
        self.leading_with(f, &self.order)
    }

    pub fn leading_with(&self, f: &SkewPoly, order: &TermOrder) -> LeadingData {
        f.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(e, c)| LeadingData::Term { exponent: e.clone(), coeff: c.clone() })
            .unwrap_or(LeadingData::Zero)
    }

    pub fn le(&self, f: &SkewPoly) -> Option<MultiIndex> {
        self.leading(f).exponent().cloned()
    }

    pub fn lc(&self, f: &SkewPoly) -> Option<Scalar> {
        self.leading(f).coeff().cloned()
    }

    /// Terms from largest to smallest under the ring order.
    pub fn sorted_terms<'a>(&self, f: &'a SkewPoly) -> Vec<(&'a MultiIndex, &'a Scalar)> {
        let mut t: Vec<_> = f.terms.iter().collect();
        t.sort_by(|a, b| self.order.cmp(b.0, a.0));
        t
    }

    pub fn cmp_exponents(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Whether `le(f g) = le(f) + le(g)`.
    pub fn le_additivity(&self, f: &SkewPoly, g: &SkewPoly) -> Result<bool> {
        let (Some(a), Some(b)) = (self.le(f), self.le(g)) else {
            return Err(Error::ZeroInput("le_additivity needs nonzero operands".into()));
        };
        Ok(self.le(&self.mul(f, g)) == Some(&a + &b))
    }

    // ---- structural data ----

    /// Recovers `sigma_k` from the leading terms of `x_k r` on domain generators.
    pub fn structural_endo(&self, k: usize) -> Result<EndoSpec> {
        if k >= self.nvars() {
            return Err(Error::Malformed(format!("no variable with index {k}")));
        }
        let d = &self.domain;
        let xk = MultiIndex::unit(self.nvars(), k);
        let mut images = Vec::new();
        for g in d.generators() {
            let prod = self.mul(&self.var(k), &self.constant(g.clone()));
            match self.leading(&prod) {
                LeadingData::Term { exponent, coeff } if exponent == xk => images.push((g, coeff)),
                other => {
                    return Err(Error::Malformed(format!(
                        "leading term of {}*({}) is not of the form c*{}: {:?}",
                        self.vars[k],
                        d.format(&g),
                        self.vars[k],
                        other.exponent()
                    )))
                }
            }
        }
        let spec = self.interpolate_endo(&images)?;
        if !spec.eq_on_generators(&self.sigma[k], d) {
            return Err(Error::Verification(format!(
                "recovered {} but {} is configured for {}",
                spec.format(d),
                self.sigma[k].format(d),
                self.vars[k]
            )));
        }
        Ok(spec)
    }

    fn interpolate_endo(&self, images: &[(Scalar, Scalar)]) -> Result<EndoSpec> {
        let d = &self.domain;
        let fail = || {
            Error::Malformed(format!(
                "no closed endomorphism sends {}",
                images.iter().map(|(g, c)| format!("{} to {}", d.format(g), d.format(c))).collect::<Vec<_>>().join(", ")
            ))
        };
        if images.iter().all(|(g, c)| g == c) {
            return Ok(EndoSpec::Identity);
        }
        if d.is_galois() {
            let k = d.extension_degree().unwrap_or(1);
            return (1..k)
                .map(EndoSpec::Frobenius)
                .find(|s| images.iter().all(|(g, c)| s.apply(d, g) == *c))
                .ok_or_else(fail);
        }
        if d.is_polynomial() {
            let (y, img) = &images[0];
            let c = match (y, img) {
                (Scalar::FpPoly(_), Scalar::FpPoly(v)) if v.len() == 2 && v[0] == 0 => Scalar::FpPoly(vec![v[1]]),
                (Scalar::QPoly(_), Scalar::QPoly(v)) if v.len() == 2 && num_traits::Zero::is_zero(&v[0]) => Scalar::QPoly(vec![v[1].clone()]),
                _ => return Err(fail()),
            };
            return Ok(EndoSpec::Scale(c));
        }
        if d.is_quaternion() {
            // u g = sigma(g) u for each generator g, linear in u over the rationals
            let q = d.prime_field();
            let basis = d.prime_basis().expect("quaternion basis");
            let rows: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|b| {
                    images
                        .iter()
                        .flat_map(|(g, c)| {
                            let v = d.sub(&d.mul(b, g), &d.mul(c, b));
                            d.prime_coords(&v).expect("quaternion coordinates")
                        })
                        .collect()
                })
                .collect();
            let ker = left_kernel(&q, &rows, 4 * images.len());
            let lambda = ker.first().ok_or_else(fail)?;
            let u = d.from_prime_coords(lambda);
            let spec = EndoSpec::Inner(u);
            return if images.iter().all(|(g, c)| spec.apply(d, g) == *c) { Ok(spec) } else { Err(fail()) };
        }
        Err(fail())
    }

    /// The closed composite `sigma^i`, after checking the sigmas commute.
    pub fn sigma_power(&self, i: &MultiIndex) -> Result<SigmaPower> {
        if i.arity() != self.nvars() {
            return Err(Error::ArityMismatch(i.arity(), self.nvars()));
        }
        let d = &self.domain;
        for a in 0..self.nvars() {
            for b in a + 1..self.nvars() {
                for g in d.generators() {
                    let ab = self.sigma[a].apply(d, &self.sigma[b].apply(d, &g));
                    let ba = self.sigma[b].apply(d, &self.sigma[a].apply(d, &g));
                    if ab != ba {
                        return Err(Error::NonCommutingSigmas(format!(
                            "sigma_{} and sigma_{} differ on {}",
                            self.vars[a],
                            self.vars[b],
                            d.format(&g)
                        )));
                    }
                }
            }
        }
        let mut spec = EndoSpec::Identity;
        for v in 0..self.nvars() {
            let p = self.sigma[v].pow(self.reduced_power(v, i.get(v)) as u64, d)?;
            spec = spec.compose(&p, d)?;
        }
        Ok(SigmaPower { exponent: i.clone(), spec })
    }

    /// Consistency checks: endomorphism and automorphism status, Leibniz
    /// rules, `sigma delta = delta sigma` and the cross relations needed for
    /// the variables to commute.
    pub fn check_descriptor<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Vec<RingCheck> {
        let d = &self.domain;
        let mut out = Vec::new();
        let mut push = |name: String, witness: Option<String>| out.push(RingCheck { name, passed: witness.is_none(), witness });
        let sample: Vec<Scalar> = d.generators().into_iter().chain((0..samples).map(|_| d.random(rng))).collect();
        for v in 0..self.nvars() {
            let (s, t) = (&self.sigma[v], &self.delta[v]);
            let name = &self.vars[v];
            push(
                format!("sigma_{name} automorphism"),
                (!s.is_automorphism(d)).then(|| s.format(d)),
            );
            let mut hom = None;
            let mut leib = None;
            for w in sample.windows(2) {
                let (a, b) = (&w[0], &w[1]);
                if s.apply(d, &d.mul(a, b)) != d.mul(&s.apply(d, a), &s.apply(d, b))
                    || s.apply(d, &d.add(a, b)) != d.add(&s.apply(d, a), &s.apply(d, b))
                {
                    hom.get_or_insert_with(|| format!("{}, {}", d.format(a), d.format(b)));
                }
                let lhs = t.apply(s, d, &d.mul(a, b));
                let rhs = d.add(&d.mul(&s.apply(d, a), &t.apply(s, d, b)), &d.mul(&t.apply(s, d, a), b));
                if lhs != rhs {
                    leib.get_or_insert_with(|| format!("{}, {}", d.format(a), d.format(b)));
                }
            }
            push(format!("sigma_{name} homomorphism"), hom);
            push(format!("delta_{name} leibniz"), leib);
            let comm = sample
                .iter()
                .find(|a| s.apply(d, &t.apply(s, d, a)) != t.apply(s, d, &s.apply(d, a)))
                .map(|a| d.format(a));
            push(format!("sigma_{name} delta_{name} commute"), comm);
        }
        for i in 0..self.nvars() {
            for j in i + 1..self.nvars() {
                let (si, sj, di, dj) = (&self.sigma[i], &self.sigma[j], &self.delta[i], &self.delta[j]);
                let bad = sample.iter().find(|a| {
                    si.apply(d, &sj.apply(d, a)) != sj.apply(d, &si.apply(d, a))
                        || dj.apply(sj, d, &si.apply(d, a)) != di.apply(si, d, &sj.apply(d, a))
                        || sj.apply(d, &di.apply(si, d, a)) != si.apply(d, &dj.apply(sj, d, a))
                        || dj.apply(sj, d, &di.apply(si, d, a)) != di.apply(si, d, &dj.apply(sj, d, a))
                });
                push(format!("{} {} relations", self.vars[i], self.vars[j]), bad.map(|a| d.format(a)));
            }
        }
        out
    }

    // ---- sampling ----

    /// A random polynomial with up to `max_terms` terms of total degree at most `max_deg`.
    pub fn random<R: Rng + ?Sized>(&self, max_terms: usize, max_deg: u32, rng: &mut R) -> SkewPoly {
        let t = rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<_> = (0..t).map(|_| (self.random_exponent(max_deg, rng), self.domain.random_nonzero(rng))).collect();
        self.from_terms(terms)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, max_terms: usize, max_deg: u32, rng: &mut R) -> SkewPoly {
        loop {
            let f = self.random(max_terms, max_deg, rng);
            if !f.is_zero() {
                return f;
            }
        }
    }

    fn random_exponent<R: Rng + ?Sized>(&self, max_deg: u32, rng: &mut R) -> MultiIndex {
        let n = self.nvars();
        let total = rng.gen_range(0..=max_deg);
        let mut e = MultiIndex::zero(n);
        for _ in 0..total {
            let v = rng.gen_range(0..n);
            e.set(v, e.get(v) + 1);
        }
        e
    }

    // ---- text ----

    pub fn format(&self, f: &SkewPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        self.sorted_terms(f).into_iter().map(|(e, c)| self.format_term(e, c)).collect::<Vec<_>>().join(" + ")
    }

    pub fn format_monomial(&self, e: &MultiIndex) -> String {
        let parts: Vec<String> = (0..self.nvars())
            .filter(|&i| e.get(i) > 0)
            .map(|i| if e.get(i) == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e.get(i)) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format_term(&self, e: &MultiIndex, c: &Scalar) -> String {
        let s = self.domain.format(c);
        let coef = if s.bytes().all(|b| b.is_ascii_digit()) { s } else { format!("({s})") };
        if e.is_zero() {
            coef
        } else if self.domain.is_one(c) {
            self.format_monomial(e)
        } else {
            format!("{coef}*{}", self.format_monomial(e))
        }
    }

    pub fn parse(&self, s: &str) -> Result<SkewPoly> {
        crate::scalars::text::parse_expr(self, s)
    }

    pub fn show<'a>(&'a self, f: &'a SkewPoly) -> ShowPoly<'a> {
        ShowPoly(self, f)
    }
}

fn parse_kind(s: &str) -> Result<OrderKind> {
    match s {
        "lex" => Ok(OrderKind::Lex),
        "deglex" => Ok(OrderKind::DegLex),
        _ => Err(Error::Malformed(format!("unknown order {s:?}"))),
    }
}

/// `x1, .., xn`, or `x` for a single variable.
pub fn default_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["x".into()]
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

pub struct ShowPoly<'a>(&'a SkewRing, &'a SkewPoly);

impl fmt::Display for ShowPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1))
    }
}
