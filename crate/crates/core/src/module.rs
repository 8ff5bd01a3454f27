//! Finite-dimensional modules given by semilinear operators.
//!
//! A module of dimension `d` over `D` is `D^d` with `x_k` acting by
//! `T_k(v)_i = sum_j σ_k(v_j) c_ij + δ_k(v_i)`, where `c_ij` is the
//! coefficient of basis vector `i` in `x_k · e_j`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::leftideal::{staircase, GroebnerBasis, LeftIdeal};
use crate::linalg::LeftSpan;
use crate::monomials::MultiIndex;
use crate::scalars::{Domain, Scalar};
use crate::skewring::{SkewPoly, SkewRing};

/// Default cap on the number of vectors enumerated by exhaustive checks.
pub const ENUMERATION_BOUND: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearModule {
    ring: SkewRing,
    dim: usize,
    /// `ops[k][j][i] = c_ij`: column `j` is `x_k · e_j`.
    ops: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    pub vectors_checked: u64,
    /// Basis of a proper nonzero submodule when not simple.
    pub witness: Option<Vec<Vec<String>>>,
}

impl SemilinearModule {
    /// `columns[k][j]` is the coordinate vector of `x_k · e_j`.
    pub fn new(ring: &SkewRing, dim: usize, columns: Vec<Vec<Vec<Scalar>>>) -> Result<SemilinearModule> {
        if columns.len() != ring.nvars() {
            return Err(Error::ArityMismatch(columns.len(), ring.nvars()));
        }
        if columns.iter().any(|c| c.len() != dim || c.iter().any(|v| v.len() != dim)) {
            return Err(Error::Malformed(format!("operators must be {dim} x {dim}")));
        }
        let m = SemilinearModule { ring: ring.clone(), dim, ops: columns };
        m.check_commutation()?;
        Ok(m)
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, k: usize, j: usize) -> &[Scalar] {
        &self.ops[k][j]
    }

    fn domain(&self) -> &Domain {
        self.ring.domain()
    }

    pub fn unit(&self, j: usize) -> Vec<Scalar> {
        let d = self.domain();
        (0..self.dim).map(|i| if i == j { d.one() } else { d.zero() }).collect()
    }

    pub fn scale(&self, a: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
        v.iter().map(|x| self.domain().mul(a, x)).collect()
    }

    /// `T_k(v)`.
    pub fn act(&self, k: usize, v: &[Scalar]) -> Vec<Scalar> {
        let d = self.domain();
        let (s, dl) = (self.ring.sigma(k), self.ring.delta(k));
        let mut out: Vec<Scalar> = v.iter().map(|x| dl.apply(s, d, x)).collect();
        for (j, vj) in v.iter().enumerate() {
            if d.is_zero(vj) {
                continue;
            }
            let sv = s.apply(d, vj);
            for (o, c) in out.iter_mut().zip(&self.ops[k][j]) {
                *o = d.add(o, &d.mul(&sv, c));
            }
        }
        out
    }

    fn test_vectors(&self) -> Vec<Vec<Scalar>> {
        let d = self.domain();
        let mut out = Vec::new();
        for j in 0..self.dim {
            let e = self.unit(j);
            for a in d.generators() {
                out.push(self.scale(&a, &e));
            }
            out.push(e);
        }
        out
    }

    /// `T_k(a v) = σ_k(a) T_k(v) + δ_k(a) v` on basis vectors and domain generators.
    pub fn check_semilinear(&self) -> Result<()> {
        let d = self.domain();
        for k in 0..self.ring.nvars() {
            let (s, dl) = (self.ring.sigma(k), self.ring.delta(k));
            for j in 0..self.dim {
                let v = self.unit(j);
                let tv = self.act(k, &v);
                for a in d.generators() {
                    let lhs = self.act(k, &self.scale(&a, &v));
                    let sa = s.apply(d, &a);
                    let da = dl.apply(s, d, &a);
                    let rhs: Vec<Scalar> =
                        tv.iter().zip(&v).map(|(t, x)| d.add(&d.mul(&sa, t), &d.mul(&da, x))).collect();
                    if lhs != rhs {
                        return Err(Error::Verification(format!("semilinear law fails for x{k} on e{j} with {}", d.format(&a))));
                    }
                }
            }
        }
        Ok(())
    }

    /// `T_j T_i - T_i T_j = d_ij` for `i < j`, on basis vectors and their generator multiples.
    pub fn check_commutation(&self) -> Result<()> {
        let d = self.domain();
        let n = self.ring.nvars();
        for v in self.test_vectors() {
            for i in 0..n {
                for j in i + 1..n {
                    let a = self.act(j, &self.act(i, &v));
                    let b = self.act(i, &self.act(j, &v));
                    let c = self.ring.commutator(i, j).cloned().unwrap_or_else(|| d.zero());
                    let diff: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| d.sub(x, y)).collect();
                    if diff != self.scale(&c, &v) {
                        return Err(Error::Verification(format!("operators for variables {i} and {j} violate the commutation rule")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The smallest submodule containing `v`.
    pub fn submodule(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut span = LeftSpan::new(self.domain(), self.dim, false);
        let mut queue = vec![v.to_vec()];
        while let Some(w) = queue.pop() {
            if span.insert(&w).is_some() {
                continue;
            }
            for k in 0..self.ring.nvars() {
                queue.push(self.act(k, &w));
            }
        }
        span.reduced_basis()
    }

    /// A proper nonzero submodule, searched exhaustively over projective
    /// representatives (first nonzero coordinate 1). Returns the number of
    /// vectors examined alongside.
    pub fn proper_submodule(&self, bound: u64) -> Result<(Option<Vec<Vec<Scalar>>>, u64)> {
        let d = self.domain();
        let q = d.order().ok_or_else(|| Error::Unsupported("simplicity by enumeration needs a finite domain".into()))?;
        let total = (q as u128)
            .checked_pow(self.dim as u32)
            .filter(|&t| t <= bound as u128)
            .ok_or_else(|| Error::TooLarge(format!("{q}^{} vectors", self.dim)))? as u64;
        let mut checked = 0;
        for idx in 1..total {
            let mut v = Vec::with_capacity(self.dim);
            let mut rest = idx;
            for _ in 0..self.dim {
                v.push(d.element_from_index(rest % q));
                rest /= q;
            }
            if !v.iter().find(|x| !d.is_zero(x)).is_some_and(|x| d.is_one(x)) {
                continue;
            }
            checked += 1;
            let sub = self.submodule(&v);
            if sub.len() < self.dim {
                return Ok((Some(sub), checked));
            }
        }
        Ok((None, checked))
    }

    pub fn is_simple(&self, bound: u64) -> Result<SimplicityReport> {
        if self.dim == 0 {
            return Err(Error::Malformed("the zero module is not simple".into()));
        }
        let d = self.domain();
        let (sub, checked) = self.proper_submodule(bound)?;
        let witness = sub.map(|s| s.iter().map(|r| r.iter().map(|x| d.format(x)).collect()).collect());
        Ok(SimplicityReport { simple: witness.is_none(), vectors_checked: checked, witness })
    }

    /// `M ⊕ N`.
    pub fn direct_sum(&self, other: &SemilinearModule) -> Result<SemilinearModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("direct sum of modules over different rings".into()));
        }
        let d = self.domain();
        let n = self.dim + other.dim;
        let cols = (0..self.ring.nvars())
            .map(|k| {
                let mut c = Vec::with_capacity(n);
                for j in 0..self.dim {
                    let mut v = self.ops[k][j].clone();
                    v.resize(n, d.zero());
                    c.push(v);
                }
                for j in 0..other.dim {
                    let mut v = vec![d.zero(); self.dim];
                    v.extend(other.ops[k][j].iter().cloned());
                    c.push(v);
                }
                c
            })
            .collect();
        SemilinearModule::new(&self.ring, n, cols)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.domain();
        let ops: Vec<Vec<Vec<String>>> = self
            .ops
            .iter()
            .map(|op| (0..self.dim).map(|i| (0..self.dim).map(|j| d.format(&op[j][i])).collect()).collect())
            .collect();
        serde_json::json!({ "dim": self.dim, "matrices": ops })
    }
}

/// `S / I` with the standard monomials as basis.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub module: SemilinearModule,
    pub basis: Vec<MultiIndex>,
    pub gb: GroebnerBasis,
}

impl QuotientModule {
    /// Coordinates of the normal form of `f`.
    pub fn coords(&self, f: &SkewPoly) -> Vec<Scalar> {
        let ring = self.gb.ring();
        let nf = self.gb.reduce(f);
        self.basis.iter().map(|m| nf.coeff(m).cloned().unwrap_or_else(|| ring.domain().zero())).collect()
    }

    /// The polynomial with coordinates `v`.
    pub fn lift(&self, v: &[Scalar]) -> SkewPoly {
        let ring = self.gb.ring();
        ring.from_terms(self.basis.iter().cloned().zip(v.iter().cloned()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ring = self.gb.ring();
        let mut j = self.module.to_json();
        j["basis"] = self.basis.iter().map(|m| ring.format_monomial(m)).collect();
        j["ideal"] = self.gb.format().into();
        j
    }
}

pub fn quotient_module(ideal: &LeftIdeal) -> Result<QuotientModule> {
    let ring = ideal.ring();
    let gb = ideal.groebner()?;
    let st = staircase(&gb);
    let Some(basis) = st.standard_monomials else {
        let axis = st.witness_axis.expect("infinite staircase has an axis");
        return Err(Error::InfiniteStaircase(ring.var_names()[axis].clone()));
    };
    let d = ring.domain();
    let dim = basis.len();
    let mut q = QuotientModule {
        module: SemilinearModule { ring: ring.clone(), dim, ops: Vec::new() },
        basis: basis.clone(),
        gb,
    };
    let one = d.one();
    let cols = (0..ring.nvars())
        .map(|k| basis.iter().map(|m| q.coords(&ring.mul(&ring.var(k), &ring.monomial(m.clone(), one.clone())))).collect())
        .collect();
    q.module = SemilinearModule::new(ring, dim, cols)?;
    q.module.check_semilinear()?;
    // The action must agree with left multiplication on random-free test data: x_k times a generator multiple.
    for k in 0..ring.nvars() {
        for (j, m) in basis.iter().enumerate() {
            for a in d.generators() {
                let f = ring.monomial(m.clone(), a.clone());
                let expect = q.coords(&ring.mul(&ring.var(k), &f));
                if q.module.act(k, &q.module.scale(&a, &q.module.unit(j))) != expect {
                    return Err(Error::Verification(format!("operator for {} disagrees with multiplication", ring.var_names()[k])));
                }
            }
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomials::OrderKind;

    #[test]
    fn quotient_examples() {
        let r = SkewRing::gf_frobenius(2, 2, 2, OrderKind::Lex).unwrap();
        // x2 (x1 + w) - x1 (x2 + 1) reduces to w^2 + w = 1
        let whole = LeftIdeal::parse(&r, &["x1 + w", "x2 + 1"]).unwrap();
        assert!(whole.groebner().unwrap().is_whole_ring());
        let i = LeftIdeal::parse(&r, &["x1 + w", "x2 + w"]).unwrap();
        let q = quotient_module(&i).unwrap();
        assert_eq!(q.module.dim(), 1);
        // x1 · 1 = -w = w in characteristic 2
        assert_eq!(r.domain().format(&q.module.column(0, 0)[0]), "w");
        assert!(q.module.is_simple(1 << 16).unwrap().simple);

        let f2 = SkewRing::commutative(Domain::prime(2).unwrap(), &["x1"], OrderKind::Lex).unwrap();
        let q = quotient_module(&LeftIdeal::parse(&f2, &["x1 + 1"]).unwrap()).unwrap();
        assert_eq!(q.module.dim(), 1);
        assert_eq!(q.module.column(0, 0), &[Scalar::Fp(1)]);

        let w = SkewRing::weyl(OrderKind::DegLex);
        let err = quotient_module(&LeftIdeal::parse(&w, &["t"]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::InfiniteStaircase(ref s) if s == "x"));
    }

    #[test]
    fn direct_sum_is_not_simple() {
        let r = SkewRing::gf_frobenius(2, 2, 1, OrderKind::Lex).unwrap();
        let a = quotient_module(&LeftIdeal::parse(&r, &["x + 1"]).unwrap()).unwrap().module;
        let b = quotient_module(&LeftIdeal::parse(&r, &["x + w"]).unwrap()).unwrap().module;
        let s = a.direct_sum(&b).unwrap();
        s.check_semilinear().unwrap();
        let rep = s.is_simple(1 << 16).unwrap();
        assert!(!rep.simple);
        assert_eq!(rep.witness.unwrap().len(), 1);
    }

    #[test]
    fn simplicity_matches_maximality() {
        // x^2 + 1 = (x + 1)^2 in GF(4)[x; Frob] is not irreducible; x^2 + x + w is
        let r = SkewRing::gf_frobenius(2, 2, 1, OrderKind::Lex).unwrap();
        let ore = crate::orepoly::OreRing::from_skew(&r).unwrap();
        for f in ore.monics(2).unwrap() {
            let q = quotient_module(&LeftIdeal::new(&r, vec![ore.to_skew(&f)]).unwrap()).unwrap();
            assert_eq!(q.module.is_simple(1 << 16).unwrap().simple, ore.irreducible(&f).unwrap(), "{}", ore.format(&f));
        }
    }

    #[test]
    fn weyl_modules_in_characteristic_p() {
        // over F3 the Weyl relation admits finite-dimensional modules
        let d = Domain::prime(3).unwrap();
        let r = SkewRing::new(
            d.clone(),
            vec!["x".into(), "t".into()],
            vec![crate::scalars::EndoSpec::Identity; 2],
            vec![crate::scalars::DerSpec::Zero; 2],
            vec![(0, 1, d.one())],
            crate::monomials::TermOrder::deglex(2),
        )
        .unwrap();
        let q = quotient_module(&LeftIdeal::parse(&r, &["x^3", "t^3"]).unwrap());
        match q {
            Ok(q) => {
                q.module.check_commutation().unwrap();
                assert!(q.module.dim() > 0);
            }
            Err(e) => panic!("{e}"),
        }
    }
}
