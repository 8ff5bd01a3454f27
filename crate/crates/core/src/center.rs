//! Centers of skew polynomial rings, the invariant subfield `C(D)_{σ,δ}` and
//! maximal two-sided ideals generated by central polynomials `g(h0)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::leftideal::exponents_upto;
use crate::linalg::{left_kernel, LeftSpan};
use crate::monomials::MultiIndex;
use crate::orepoly::{OrePoly, OreRing};
use crate::scalars::fpoly::{self, FpPoly};
use crate::scalars::{Domain, Scalar};
use crate::skewring::{SkewPoly, SkewRing};

/// A prime-field scalar viewed inside `d`.
pub(crate) fn embed_prime(d: &Domain, c: &Scalar) -> Scalar {
    match c {
        Scalar::Fp(v) => d.from_int(*v as i64),
        Scalar::Q(r) => d.from_rat(r),
        _ => panic!("expected a prime-field scalar"),
    }
}

fn require_prime_coords(d: &Domain) -> Result<Vec<Scalar>> {
    d.prime_basis()
        .ok_or_else(|| Error::Unsupported(format!("{:?} is not finite-dimensional over its prime field", d.descriptor())))
}

/// `C(D)_{σ,δ} = {a : σ_k(a) = a, δ_k(a) = 0, ab = ba}` as a prime-field subspace.
#[derive(Clone, Debug)]
pub struct InvariantField {
    domain: Domain,
    basis: Vec<Scalar>,
}

impl InvariantField {
    pub fn basis(&self) -> &[Scalar] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_prime_field(&self) -> bool {
        self.basis.len() == 1
    }

    fn span(&self) -> LeftSpan {
        let pf = self.domain.prime_field();
        let w = self.domain.prime_dim().expect("checked");
        let mut s = LeftSpan::new(&pf, w, false);
        for b in &self.basis {
            s.insert(&self.domain.prime_coords(b).expect("checked"));
        }
        s
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        self.domain.prime_coords(a).is_some_and(|c| self.span().contains(&c))
    }

    /// Contains 1 and is closed under products of basis elements.
    pub fn check_closure(&self) -> Result<()> {
        let d = &self.domain;
        if !self.contains(&d.one()) {
            return Err(Error::Verification("1 is missing".into()));
        }
        for a in &self.basis {
            for b in &self.basis {
                if !self.contains(&d.mul(a, b)) {
                    return Err(Error::Verification(format!("{} * {} leaves the subfield", d.format(a), d.format(b))));
                }
            }
        }
        Ok(())
    }

    pub fn format(&self) -> Vec<String> {
        self.basis.iter().map(|b| self.domain.format(b)).collect()
    }
}

pub fn invariant_field(ring: &SkewRing) -> Result<InvariantField> {
    let d = ring.domain().clone();
    let pb = require_prime_coords(&d)?;
    let pf = d.prime_field();
    let gens = d.generators();
    let rows: Vec<Vec<Scalar>> = pb
        .iter()
        .map(|e| {
            let mut row = Vec::new();
            for k in 0..ring.nvars() {
                let s = ring.sigma(k).apply(&d, e);
                row.extend(d.prime_coords(&d.sub(&s, e)).expect("finite"));
                row.extend(d.prime_coords(&ring.delta(k).apply(ring.sigma(k), &d, e)).expect("finite"));
            }
            for b in &gens {
                row.extend(d.prime_coords(&d.sub(&d.mul(e, b), &d.mul(b, e))).expect("finite"));
            }
            row
        })
        .collect();
    let width = rows[0].len();
    let kernel = left_kernel(&pf, &rows, width);
    let basis = kernel
        .iter()
        .map(|c| pb.iter().zip(c).fold(d.zero(), |acc, (e, c)| d.add(&acc, &d.mul(&embed_prime(&d, c), e))))
        .collect();
    let f = InvariantField { domain: d, basis };
    f.check_closure()?;
    Ok(f)
}

#[derive(Clone, Debug)]
pub struct CenterReport {
    pub cap: u32,
    /// Prime-field basis, reduced, in increasing order of leading exponent.
    pub basis: Vec<SkewPoly>,
    /// A least-degree nonconstant central element.
    pub h0: Option<SkewPoly>,
}

#[derive(Serialize)]
struct CenterJson {
    cap: u32,
    basis: Vec<String>,
    h0: Option<String>,
}

impl CenterReport {
    pub fn to_json(&self, ring: &SkewRing) -> serde_json::Value {
        serde_json::to_value(CenterJson {
            cap: self.cap,
            basis: self.basis.iter().map(|f| ring.format(f)).collect(),
            h0: self.h0.as_ref().map(|f| ring.format(f)),
        })
        .expect("serializable")
    }
}

fn commutator(ring: &SkewRing, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
    ring.sub(&ring.mul(f, g), &ring.mul(g, f))
}

fn ring_generators(ring: &SkewRing) -> Vec<SkewPoly> {
    let mut out: Vec<SkewPoly> = (0..ring.nvars()).map(|k| ring.var(k)).collect();
    let d = ring.domain();
    out.extend(d.generators().into_iter().filter(|a| !d.is_one(a)).map(|a| ring.constant(a)));
    out
}

/// Whether `f` commutes with every variable and domain generator.
pub fn is_central(ring: &SkewRing, f: &SkewPoly) -> bool {
    ring_generators(ring).iter().all(|g| commutator(ring, f, g).is_zero())
}

/// Central elements of total degree `<= cap`, by a linear solve over the prime field.
pub fn center_upto(ring: &SkewRing, cap: u32) -> Result<CenterReport> {
    if cap == 0 {
        return Err(Error::Malformed("degree cap must be at least 1".into()));
    }
    let d = ring.domain();
    let pb = require_prime_coords(d)?;
    let pf = d.prime_field();
    let pd = pb.len();
    let mut exps = exponents_upto(ring.nvars(), cap);
    exps.sort_by(|a, b| ring.cmp_exponents(b, a));
    let unknowns: Vec<SkewPoly> =
        exps.iter().flat_map(|e| pb.iter().map(move |b| (e.clone(), b.clone()))).map(|(e, b)| ring.monomial(e, b)).collect();
    let tests = ring_generators(ring);
    let mut cols: BTreeMap<(usize, MultiIndex), usize> = BTreeMap::new();
    let images: Vec<Vec<SkewPoly>> =
        unknowns.iter().map(|u| tests.iter().map(|t| commutator(ring, u, t)).collect()).collect();
    for img in &images {
        for (ti, f) in img.iter().enumerate() {
            for (e, _) in f.terms() {
                let k = cols.len();
                cols.entry((ti, e.clone())).or_insert(k);
            }
        }
    }
    let width = (cols.len() * pd).max(1);
    let rows: Vec<Vec<Scalar>> = images
        .iter()
        .map(|img| {
            let mut row = vec![pf.zero(); width];
            for (ti, f) in img.iter().enumerate() {
                for (e, c) in f.terms() {
                    let base = cols[&(ti, e.clone())] * pd;
                    for (k, x) in d.prime_coords(c).expect("finite").into_iter().enumerate() {
                        row[base + k] = x;
                    }
                }
            }
            row
        })
        .collect();
    let kernel = left_kernel(&pf, &rows, width);
    let mut basis: Vec<SkewPoly> = kernel
        .iter()
        .map(|c| {
            unknowns.iter().zip(c).fold(ring.zero(), |acc, (u, c)| ring.add(&acc, &ring.scale_left(&embed_prime(d, c), u)))
        })
        .collect();
    basis.sort_by(|a, b| ring.cmp_exponents(&ring.le(a).expect("nonzero"), &ring.le(b).expect("nonzero")));
    for f in &basis {
        if !is_central(ring, f) {
            return Err(Error::Verification(format!("{} is not central", ring.format(f))));
        }
    }
    let h0 = basis
        .iter()
        .filter(|f| f.total_degree().unwrap_or(0) > 0)
        .min_by_key(|f| f.total_degree())
        .cloned();
    Ok(CenterReport { cap, basis, h0 })
}

/// Certificate for a maximal two-sided ideal `S G` with `G = g(h0)` central.
#[derive(Clone, Debug, Serialize)]
pub struct TwoSidedCertificate {
    pub generator: String,
    pub central: bool,
    /// Dimension of `S / S G` over `D`.
    pub quotient_dim: usize,
    pub elements_checked: u64,
}

/// Evaluates `g(h)` for `g` over the prime field.
fn compose(ring: &OreRing, g: &[u64], h: &OrePoly) -> OrePoly {
    let d = ring.domain();
    let mut acc = ring.zero();
    for c in g.iter().rev() {
        acc = ring.add(&ring.mul(&acc, h), &ring.constant(d.from_int(*c as i64)));
    }
    acc
}

/// `G = g(h0)` with a certificate that `S / S G` has no proper nonzero
/// two-sided ideal, by closure from every nonzero element of the quotient.
pub fn maximal_twosided_gen(ring: &OreRing, g: &[u64], h0: &OrePoly, bound: u64) -> Result<(OrePoly, TwoSidedCertificate)> {
    let d = ring.domain();
    if !d.is_finite() || !d.is_division_ring() {
        return Err(Error::Unsupported("two-sided maximality needs a finite coefficient field".into()));
    }
    let p = d.characteristic();
    let field = invariant_field(ring.as_skew())?;
    if !field.is_prime_field() {
        return Err(Error::Unsupported(format!(
            "g is read over F_{p}, but the invariant field has dimension {} over it",
            field.dim()
        )));
    }
    let g: FpPoly = fpoly::trim(g.to_vec());
    if g.len() < 2 || !fpoly::is_irreducible(&g, p) {
        return Err(Error::Reducible(show_t(&g, p)));
    }
    let big = compose(ring, &fpoly::monic(&g, p), h0);
    let central = is_central(ring.as_skew(), &ring.to_skew(&big));
    if !central {
        return Err(Error::Verification(format!("{} is not central", ring.format(&big))));
    }
    let m = big.degree().expect("nonconstant");
    let q = d.order().expect("finite");
    let total = (q as u128).checked_pow(m as u32).filter(|&t| t <= bound as u128).ok_or_else(|| Error::TooLarge(format!("{q}^{m} quotient elements")))? as u64;
    // F_p-linear operators on the quotient, in prime coordinates.
    let pb = d.prime_basis().expect("finite");
    let k = pb.len();
    let dim = m * k;
    let pf = d.prime_field();
    let to_vec = |f: &OrePoly| -> Vec<Scalar> {
        let mut v = vec![pf.zero(); dim];
        for (i, c) in f.coeffs().iter().enumerate() {
            for (j, x) in d.prime_coords(c).expect("finite").into_iter().enumerate() {
                v[i * k + j] = x;
            }
        }
        v
    };
    let reduce = |f: &OrePoly| ring.right_divmod(f, &big).map(|(_, r)| r);
    let mut mults: Vec<OrePoly> = vec![ring.x()];
    mults.extend(pb.iter().map(|b| ring.constant(b.clone())));
    let basis_polys: Vec<OrePoly> = (0..m).flat_map(|i| pb.iter().map(move |b| (i, b.clone()))).map(|(i, b)| ring.monomial(i, b)).collect();
    let mut ops: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for a in &mults {
        ops.push(basis_polys.iter().map(|u| reduce(&ring.mul(a, u)).map(|r| to_vec(&r))).collect::<Result<_>>()?);
        ops.push(basis_polys.iter().map(|u| reduce(&ring.mul(u, a)).map(|r| to_vec(&r))).collect::<Result<_>>()?);
    }
    let apply = |op: &Vec<Vec<Scalar>>, v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![pf.zero(); dim];
        for (c, row) in v.iter().zip(op) {
            if !pf.is_zero(c) {
                for (o, x) in out.iter_mut().zip(row) {
                    *o = pf.add(o, &pf.mul(c, x));
                }
            }
        }
        out
    };
    let mut checked = 0;
    for idx in 1..total {
        let mut v = Vec::with_capacity(dim);
        let mut rest = idx;
        for _ in 0..m {
            v.extend(d.prime_coords(&d.element_from_index(rest % q)).expect("finite"));
            rest /= q;
        }
        checked += 1;
        let mut span = LeftSpan::new(&pf, dim, false);
        let mut queue = vec![v];
        while let Some(w) = queue.pop() {
            if span.insert(&w).is_some() {
                continue;
            }
            for op in &ops {
                queue.push(apply(op, &w));
            }
        }
        if span.rank() < dim {
            let poly = (0..m).map(|i| d.from_prime_coords(&span.reduced_basis()[0][i * k..(i + 1) * k])).collect();
            return Err(Error::NotMaximal(format!(
                "the two-sided ideal generated by {} in S/({}) is proper",
                ring.format(&ring.poly(poly)),
                ring.format(&big)
            )));
        }
    }
    let cert = TwoSidedCertificate { generator: ring.format(&big), central, quotient_dim: m, elements_checked: checked };
    Ok((big, cert))
}

fn show_t(g: &[u64], p: u64) -> String {
    Domain::fp_poly(p, "t").expect("prime").format(&Scalar::FpPoly(g.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomials::OrderKind;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn invariant_field_examples() {
        let f = invariant_field(&SkewRing::gf_frobenius(2, 2, 1, OrderKind::Lex).unwrap()).unwrap();
        assert_eq!(f.format(), vec!["1"]);
        let gf4 = Domain::galois_default(2, 2, "w").unwrap();
        let r = SkewRing::commutative(gf4, &["x"], OrderKind::Lex).unwrap();
        assert_eq!(invariant_field(&r).unwrap().dim(), 2);
        let h = Domain::quaternion();
        let i = h.parse("i").unwrap();
        let r = OreRing::new(h, crate::scalars::EndoSpec::Inner(i), crate::scalars::DerSpec::Zero, "x").unwrap();
        let f = invariant_field(r.as_skew()).unwrap();
        assert_eq!(f.format(), vec!["1"]);
    }

    #[test]
    fn center_examples() {
        let r = SkewRing::gf_frobenius(2, 2, 1, OrderKind::Lex).unwrap();
        let c = center_upto(&r, 4).unwrap();
        let shown: Vec<String> = c.basis.iter().map(|f| r.format(f)).collect();
        assert_eq!(shown, vec!["1", "x^2", "x^4"]);
        assert_eq!(r.format(c.h0.as_ref().unwrap()), "x^2");

        let w = SkewRing::weyl(OrderKind::DegLex);
        let c = center_upto(&w, 6).unwrap();
        assert_eq!(c.basis.len(), 1);
        assert!(c.h0.is_none());

        let f2 = SkewRing::commutative(Domain::prime(2).unwrap(), &["x"], OrderKind::Lex).unwrap();
        let c = center_upto(&f2, 2).unwrap();
        assert_eq!(c.basis.len(), 3);
        assert_eq!(f2.format(c.h0.as_ref().unwrap()), "x");
    }

    #[test]
    fn central_elements_commute_with_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in [SkewRing::gf_frobenius(3, 2, 1, OrderKind::Lex).unwrap(), SkewRing::gf_frobenius(2, 2, 2, OrderKind::DegLex).unwrap()] {
            let c = center_upto(&r, 4).unwrap();
            for z in &c.basis {
                for _ in 0..100 {
                    let f = r.random(4, 3, &mut rng);
                    assert_eq!(r.mul(z, &f), r.mul(&f, z));
                }
            }
        }
    }

    #[test]
    fn twosided_examples() {
        let r = OreRing::gf_frobenius(2, 2).unwrap();
        let h0 = r.parse("x^2").unwrap();
        let (g, cert) = maximal_twosided_gen(&r, &[1, 1], &h0, 1 << 16).unwrap();
        assert_eq!(r.format(&g), "x^2 + 1");
        assert_eq!(cert.quotient_dim, 2);
        assert_eq!(cert.elements_checked, 15);
        assert!(matches!(maximal_twosided_gen(&r, &[0, 1, 1], &h0, 1 << 16), Err(Error::Reducible(_))));
        // x^2 lies in the proper two-sided ideal generated by x
        assert!(matches!(maximal_twosided_gen(&r, &[0, 1], &h0, 1 << 16), Err(Error::NotMaximal(_))));
    }
}
