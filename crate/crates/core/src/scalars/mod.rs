//! Coefficient domains: prime fields, Galois fields presented as F_p[w]/(m),
//! the rationals, rational quaternions, and the univariate PIDs F_p[y] and
//! Q[y].
//!
//! A [`Domain`] owns the presentation data; a [`Scalar`] is a bare canonical
//! coordinate vector whose variant doubles as the domain tag. Two scalars of
//! the same domain are equal exactly when their coordinates are equal.

pub mod fpoly;
mod maps;
pub mod text;

pub use maps::{check_compat, check_leibniz, CompatReport, DerSpec, EndoSpec};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fp(u64),
    /// Residue mod the modulus, `k` coordinates ascending in the generator.
    Gf(Vec<u64>),
    Q(Rat),
    /// Coordinates on 1, i, j, k.
    Quat(Box<[Rat; 4]>),
    FpPoly(Vec<u64>),
    QPoly(Vec<Rat>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainDescriptor {
    Fp {
        p: u64,
    },
    Gf {
        p: u64,
        k: usize,
        /// Ascending coefficients of the monic modulus, length `k + 1`.
        modulus: Vec<u64>,
        #[serde(default = "default_gf_gen")]
        gen: String,
    },
    Rational,
    Quaternion,
    FpPoly {
        p: u64,
        #[serde(default = "default_poly_gen")]
        gen: String,
    },
    QPoly {
        #[serde(default = "default_poly_gen")]
        gen: String,
    },
}

fn default_gf_gen() -> String {
    "w".into()
}

fn default_poly_gen() -> String {
    "y".into()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Prime { p: u64 },
    Galois { p: u64, k: usize, modulus: Vec<u64> },
    Rational,
    Quaternion,
    FpPoly { p: u64 },
    QPoly,
}

/// A coefficient domain with its lookup tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    kind: Kind,
    gen: String,
    /// Frobenius images of the power basis 1, w, .., w^{k-1} (Galois only).
    frob: Vec<Vec<u64>>,
}

impl Domain {
    pub fn new(desc: &DomainDescriptor) -> Result<Domain> {
        let check_p = |p: u64| {
            if fpoly::is_prime(p) && p < (1 << 31) {
                Ok(())
            } else {
                Err(Error::Malformed(format!("{p} is not a supported prime")))
            }
        };
        let (kind, gen) = match desc {
            DomainDescriptor::Fp { p } => {
                check_p(*p)?;
                (Kind::Prime { p: *p }, String::new())
            }
            DomainDescriptor::Gf { p, k, modulus, gen } => {
                check_p(*p)?;
                let m = fpoly::trim(modulus.iter().map(|c| c % p).collect());
                if *k == 0 || m.len() != k + 1 || m[*k] != 1 {
                    return Err(Error::Malformed(format!("modulus must be monic of degree {k}")));
                }
                if !fpoly::is_irreducible(&m, *p) {
                    return Err(Error::Malformed(format!("modulus {m:?} is reducible over F_{p}")));
                }
                (Kind::Galois { p: *p, k: *k, modulus: m }, gen.clone())
            }
            DomainDescriptor::Rational => (Kind::Rational, String::new()),
            DomainDescriptor::Quaternion => (Kind::Quaternion, String::new()),
            DomainDescriptor::FpPoly { p, gen } => {
                check_p(*p)?;
                (Kind::FpPoly { p: *p }, gen.clone())
            }
            DomainDescriptor::QPoly { gen } => (Kind::QPoly, gen.clone()),
        };
        let mut d = Domain { kind, gen, frob: Vec::new() };
        if let Kind::Galois { p, k, .. } = d.kind {
            d.frob = (0..k)
                .map(|i| {
                    let mut e = vec![0u64; k];
                    e[i] = 1;
                    match d.pow(&Scalar::Gf(e), p) {
                        Scalar::Gf(v) => v,
                        _ => unreachable!(),
                    }
                })
                .collect();
        }
        Ok(d)
    }

    pub fn prime(p: u64) -> Result<Domain> {
        Domain::new(&DomainDescriptor::Fp { p })
    }

    pub fn galois(p: u64, k: usize, modulus: Vec<u64>, gen: &str) -> Result<Domain> {
        Domain::new(&DomainDescriptor::Gf { p, k, modulus, gen: gen.into() })
    }

    /// GF(p^k) using the first monic irreducible of degree k in enumeration order.
    pub fn galois_default(p: u64, k: usize, gen: &str) -> Result<Domain> {
        if !fpoly::is_prime(p) {
            return Err(Error::Malformed(format!("{p} is not prime")));
        }
        let m = (0..fpoly::count_monic(k, p))
            .map(|i| fpoly::monic_from_index(k, i, p))
            .find(|m| fpoly::is_irreducible(m, p))
            .ok_or_else(|| Error::Malformed("no irreducible modulus".into()))?;
        Domain::galois(p, k, m, gen)
    }

    pub fn rational() -> Domain {
        Domain::new(&DomainDescriptor::Rational).unwrap()
    }

    pub fn quaternion() -> Domain {
        Domain::new(&DomainDescriptor::Quaternion).unwrap()
    }

    pub fn fp_poly(p: u64, gen: &str) -> Result<Domain> {
        Domain::new(&DomainDescriptor::FpPoly { p, gen: gen.into() })
    }

    pub fn q_poly(gen: &str) -> Domain {
        Domain::new(&DomainDescriptor::QPoly { gen: gen.into() }).unwrap()
    }

    pub fn descriptor(&self) -> DomainDescriptor {
        match &self.kind {
            Kind::Prime { p } => DomainDescriptor::Fp { p: *p },
            Kind::Galois { p, k, modulus } => DomainDescriptor::Gf {
                p: *p,
                k: *k,
                modulus: modulus.clone(),
                gen: self.gen.clone(),
            },
            Kind::Rational => DomainDescriptor::Rational,
            Kind::Quaternion => DomainDescriptor::Quaternion,
            Kind::FpPoly { p } => DomainDescriptor::FpPoly { p: *p, gen: self.gen.clone() },
            Kind::QPoly => DomainDescriptor::QPoly { gen: self.gen.clone() },
        }
    }

    pub fn gen_name(&self) -> &str {
        &self.gen
    }

    /// Characteristic (0 for characteristic zero).
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            Kind::Prime { p } | Kind::Galois { p, .. } | Kind::FpPoly { p } => p,
            _ => 0,
        }
    }

    /// Extension degree over F_p for Galois fields, 1 for prime fields.
    pub fn extension_degree(&self) -> Option<usize> {
        match self.kind {
            Kind::Prime { .. } => Some(1),
            Kind::Galois { k, .. } => Some(k),
            _ => None,
        }
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            Kind::Prime { p } => Some(p),
            Kind::Galois { p, k, .. } => Some(p.pow(k as u32)),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_division_ring(&self) -> bool {
        !matches!(self.kind, Kind::FpPoly { .. } | Kind::QPoly)
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self.kind, Kind::Quaternion)
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.kind, Kind::FpPoly { .. } | Kind::QPoly)
    }

    pub fn is_galois(&self) -> bool {
        matches!(self.kind, Kind::Galois { .. })
    }

    pub fn is_quaternion(&self) -> bool {
        matches!(self.kind, Kind::Quaternion)
    }

    /// Modulus of a Galois field.
    pub fn modulus(&self) -> Option<&[u64]> {
        match &self.kind {
            Kind::Galois { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (&self.kind, a) {
            (Kind::Prime { p }, Scalar::Fp(x)) => x < p,
            (Kind::Galois { p, k, .. }, Scalar::Gf(v)) => v.len() == *k && v.iter().all(|x| x < p),
            (Kind::Rational, Scalar::Q(_)) | (Kind::Quaternion, Scalar::Quat(_)) => true,
            (Kind::FpPoly { p }, Scalar::FpPoly(v)) => v.iter().all(|x| x < p) && v.last() != Some(&0),
            (Kind::QPoly, Scalar::QPoly(v)) => v.last().is_none_or(|c| !c.is_zero()),
            _ => false,
        }
    }

    pub fn check(&self, a: &Scalar) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!("{a:?} is not an element of {:?}", self.descriptor())))
        }
    }

    pub fn zero(&self) -> Scalar {
        match &self.kind {
            Kind::Prime { .. } => Scalar::Fp(0),
            Kind::Galois { k, .. } => Scalar::Gf(vec![0; *k]),
            Kind::Rational => Scalar::Q(Rat::zero()),
            Kind::Quaternion => Scalar::Quat(Box::new([Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()])),
            Kind::FpPoly { .. } => Scalar::FpPoly(Vec::new()),
            Kind::QPoly => Scalar::QPoly(Vec::new()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_rat(&Rat::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rat(&Rat::from_integer(BigInt::from(n)))
    }

    /// Image of a rational in the domain; panics on denominators divisible by the characteristic.
    pub fn from_rat(&self, r: &Rat) -> Scalar {
        self.try_from_rat(r).expect("denominator vanishes in this characteristic")
    }

    pub fn try_from_rat(&self, r: &Rat) -> Result<Scalar> {
        let p = self.characteristic();
        if p == 0 {
            return Ok(match self.kind {
                Kind::Rational => Scalar::Q(r.clone()),
                Kind::Quaternion => {
                    Scalar::Quat(Box::new([r.clone(), Rat::zero(), Rat::zero(), Rat::zero()]))
                }
                _ => Scalar::QPoly(if r.is_zero() { vec![] } else { vec![r.clone()] }),
            });
        }
        let pb = BigInt::from(p);
        let red = |x: &BigInt| -> u64 {
            let m = ((x % &pb) + &pb) % &pb;
            u64::try_from(m).unwrap()
        };
        let den = red(r.denom());
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let v = fpoly::mul_mod(red(r.numer()), fpoly::inv_mod(den, p), p);
        Ok(match self.kind {
            Kind::Prime { .. } => Scalar::Fp(v),
            Kind::Galois { k, .. } => {
                let mut c = vec![0; k];
                c[0] = v;
                Scalar::Gf(c)
            }
            _ => Scalar::FpPoly(if v == 0 { vec![] } else { vec![v] }),
        })
    }

    /// The distinguished generator (w for Galois fields, y for polynomial domains).
    pub fn gen(&self) -> Option<Scalar> {
        match &self.kind {
            Kind::Galois { k, .. } => {
                let mut c = vec![0; *k];
                if *k > 1 {
                    c[1] = 1;
                    Some(Scalar::Gf(c))
                } else {
                    // w is a root of a linear modulus, i.e. an F_p constant.
                    let m = self.modulus().unwrap();
                    c[0] = (self.characteristic() - m[0]) % self.characteristic();
                    Some(Scalar::Gf(c))
                }
            }
            Kind::FpPoly { .. } => Some(Scalar::FpPoly(vec![0, 1])),
            Kind::QPoly => Some(Scalar::QPoly(vec![Rat::zero(), Rat::one()])),
            _ => None,
        }
    }

    pub fn quat(&self, a: Rat, b: Rat, c: Rat, d: Rat) -> Scalar {
        Scalar::Quat(Box::new([a, b, c, d]))
    }

    /// Generators of the domain as a ring over its prime subring.
    pub fn generators(&self) -> Vec<Scalar> {
        match &self.kind {
            Kind::Prime { .. } | Kind::Rational => vec![self.one()],
            Kind::Galois { .. } | Kind::FpPoly { .. } | Kind::QPoly => vec![self.gen().unwrap()],
            Kind::Quaternion => {
                let (z, o) = (Rat::zero(), Rat::one());
                vec![
                    self.quat(z.clone(), o.clone(), z.clone(), z.clone()),
                    self.quat(z.clone(), z.clone(), o, z),
                ]
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Gf(v) => v.iter().all(|x| *x == 0),
            Scalar::Q(r) => r.is_zero(),
            Scalar::Quat(q) => q.iter().all(|x| x.is_zero()),
            Scalar::FpPoly(v) => v.is_empty(),
            Scalar::QPoly(v) => v.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % self.characteristic()),
            (Scalar::Gf(x), Scalar::Gf(y)) => {
                let p = self.characteristic();
                Scalar::Gf(x.iter().zip(y).map(|(a, b)| (a + b) % p).collect())
            }
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Scalar::Quat(x), Scalar::Quat(y)) => Scalar::Quat(Box::new([
                &x[0] + &y[0],
                &x[1] + &y[1],
                &x[2] + &y[2],
                &x[3] + &y[3],
            ])),
            (Scalar::FpPoly(x), Scalar::FpPoly(y)) => Scalar::FpPoly(fpoly::add(x, y, self.characteristic())),
            (Scalar::QPoly(x), Scalar::QPoly(y)) => Scalar::QPoly(qpoly_add(x, y)),
            _ => panic!("scalar domain mismatch: {a:?} + {b:?}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        let p = self.characteristic();
        match a {
            Scalar::Fp(x) => Scalar::Fp((p - x) % p),
            Scalar::Gf(v) => Scalar::Gf(v.iter().map(|x| (p - x) % p).collect()),
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::Quat(q) => Scalar::Quat(Box::new([-&q[0], -&q[1], -&q[2], -&q[3]])),
            Scalar::FpPoly(v) => Scalar::FpPoly(fpoly::neg(v, p)),
            Scalar::QPoly(v) => Scalar::QPoly(v.iter().map(|c| -c).collect()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(fpoly::mul_mod(*x, *y, self.characteristic())),
            (Scalar::Gf(x), Scalar::Gf(y)) => {
                let p = self.characteristic();
                let m = self.modulus().unwrap();
                let prod = fpoly::mul(&fpoly::trim(x.clone()), &fpoly::trim(y.clone()), p);
                let mut r = fpoly::rem(&prod, m, p);
                r.resize(x.len(), 0);
                Scalar::Gf(r)
            }
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Scalar::Quat(x), Scalar::Quat(y)) => Scalar::Quat(Box::new(quat_mul(x, y))),
            (Scalar::FpPoly(x), Scalar::FpPoly(y)) => Scalar::FpPoly(fpoly::mul(x, y, self.characteristic())),
            (Scalar::QPoly(x), Scalar::QPoly(y)) => Scalar::QPoly(qpoly_mul(x, y)),
            _ => panic!("scalar domain mismatch: {a:?} * {b:?}"),
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match a {
            Scalar::FpPoly(v) => v.len() == 1,
            Scalar::QPoly(v) => v.len() == 1,
            _ => !self.is_zero(a),
        }
    }

    /// Two-sided inverse.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let p = self.characteristic();
        Ok(match a {
            Scalar::Fp(x) => Scalar::Fp(fpoly::inv_mod(*x, p)),
            Scalar::Gf(x) => {
                let m = self.modulus().unwrap();
                let (g, s, _) = fpoly::ext_gcd(&fpoly::trim(x.clone()), m, p);
                debug_assert_eq!(g, vec![1]);
                let mut s = s;
                s.resize(x.len(), 0);
                Scalar::Gf(s)
            }
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::Quat(q) => {
                let n: Rat = q.iter().map(|c| c * c).fold(Rat::zero(), |acc, x| acc + x);
                Scalar::Quat(Box::new([&q[0] / &n, -&q[1] / &n, -&q[2] / &n, -&q[3] / &n]))
            }
            Scalar::FpPoly(v) => {
                if v.len() != 1 {
                    return Err(Error::NonUnit(self.format(a)));
                }
                Scalar::FpPoly(vec![fpoly::inv_mod(v[0], p)])
            }
            Scalar::QPoly(v) => {
                if v.len() != 1 {
                    return Err(Error::NonUnit(self.format(a)));
                }
                Scalar::QPoly(vec![v[0].recip()])
            }
        })
    }

    /// `a * b^{-1}`.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius a -> a^p, linear over F_p (identity on prime fields).
    pub fn frobenius(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Gf(v) => {
                let p = self.characteristic();
                let mut out = vec![0u64; v.len()];
                for (i, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (o, &f) in out.iter_mut().zip(&self.frob[i]) {
                        *o = (*o + fpoly::mul_mod(c, f, p)) % p;
                    }
                }
                Scalar::Gf(out)
            }
            _ => a.clone(),
        }
    }

    /// Checked arithmetic entry point used by the CLI and the public contract.
    pub fn arith(&self, op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar> {
        self.check(a)?;
        if let Some(b) = b {
            self.check(b)?;
        }
        let need_b = || b.ok_or_else(|| Error::Malformed("binary operation needs two operands".into()));
        match op {
            ArithOp::Add => Ok(self.add(a, need_b()?)),
            ArithOp::Mul => Ok(self.mul(a, need_b()?)),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
        }
    }

    /// Coordinates over the prime field (F_p or Q) for finite-dimensional domains.
    pub fn prime_coords(&self, a: &Scalar) -> Option<Vec<Scalar>> {
        match a {
            Scalar::Fp(x) => Some(vec![Scalar::Fp(*x)]),
            Scalar::Gf(v) => Some(v.iter().map(|x| Scalar::Fp(*x)).collect()),
            Scalar::Q(r) => Some(vec![Scalar::Q(r.clone())]),
            Scalar::Quat(q) => Some(q.iter().map(|r| Scalar::Q(r.clone())).collect()),
            _ => None,
        }
    }

    pub fn prime_dim(&self) -> Option<usize> {
        match self.kind {
            Kind::Prime { .. } | Kind::Rational => Some(1),
            Kind::Galois { k, .. } => Some(k),
            Kind::Quaternion => Some(4),
            _ => None,
        }
    }

    pub fn from_prime_coords(&self, c: &[Scalar]) -> Scalar {
        let fp = |s: &Scalar| match s {
            Scalar::Fp(x) => *x,
            _ => panic!("expected prime field coordinate"),
        };
        let q = |s: &Scalar| match s {
            Scalar::Q(x) => x.clone(),
            _ => panic!("expected rational coordinate"),
        };
        match self.kind {
            Kind::Prime { .. } => Scalar::Fp(fp(&c[0])),
            Kind::Galois { .. } => Scalar::Gf(c.iter().map(fp).collect()),
            Kind::Rational => Scalar::Q(q(&c[0])),
            Kind::Quaternion => Scalar::Quat(Box::new([q(&c[0]), q(&c[1]), q(&c[2]), q(&c[3])])),
            _ => panic!("no prime-field coordinates for polynomial domains"),
        }
    }

    /// Basis of the domain over its prime field.
    pub fn prime_basis(&self) -> Option<Vec<Scalar>> {
        let pf = self.prime_field();
        let d = self.prime_dim()?;
        Some(
            (0..d)
                .map(|i| {
                    let c: Vec<Scalar> =
                        (0..d).map(|j| if i == j { pf.one() } else { pf.zero() }).collect();
                    self.from_prime_coords(&c)
                })
                .collect(),
        )
    }

    pub fn prime_field(&self) -> Domain {
        match self.characteristic() {
            0 => Domain::rational(),
            p => Domain::prime(p).unwrap(),
        }
    }

    /// All elements of a finite domain in index order (0 first).
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let q = self.order()?;
        Some((0..q).map(|i| self.element_from_index(i)).collect())
    }

    /// Base-p digit decoding, constant coordinate least significant.
    pub fn element_from_index(&self, mut idx: u64) -> Scalar {
        match self.kind {
            Kind::Prime { p } => Scalar::Fp(idx % p),
            Kind::Galois { p, k, .. } => {
                let mut v = vec![0; k];
                for c in v.iter_mut() {
                    *c = idx % p;
                    idx /= p;
                }
                Scalar::Gf(v)
            }
            _ => panic!("element enumeration requires a finite domain"),
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let small = |rng: &mut R| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        match &self.kind {
            Kind::Prime { p } => Scalar::Fp(rng.gen_range(0..*p)),
            Kind::Galois { p, k, .. } => Scalar::Gf((0..*k).map(|_| rng.gen_range(0..*p)).collect()),
            Kind::Rational => Scalar::Q(small(rng)),
            Kind::Quaternion => Scalar::Quat(Box::new([small(rng), small(rng), small(rng), small(rng)])),
            Kind::FpPoly { p } => {
                let d = rng.gen_range(0..=3);
                Scalar::FpPoly(fpoly::trim((0..=d).map(|_| rng.gen_range(0..*p)).collect()))
            }
            Kind::QPoly => {
                let d = rng.gen_range(0..=3);
                Scalar::QPoly(qpoly_trim((0..=d).map(|_| small(rng)).collect()))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// Canonical text form, parseable by [`Domain::parse`].
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Q(r) => fmt_rat(r),
            Scalar::Gf(v) | Scalar::FpPoly(v) => {
                let terms = v
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| **c != 0)
                    .map(|(e, c)| (false, c.to_string(), c == &1, gen_power(&self.gen, e)))
                    .collect();
                join_terms(terms)
            }
            Scalar::QPoly(v) => {
                let terms = v
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, c)| (c.is_negative(), fmt_rat(&c.abs()), c.abs().is_one(), gen_power(&self.gen, e)))
                    .collect();
                join_terms(terms)
            }
            Scalar::Quat(q) => {
                let units = ["", "i", "j", "k"];
                let terms = q
                    .iter()
                    .zip(units)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, u)| (c.is_negative(), fmt_rat(&c.abs()), c.abs().is_one(), u.to_string()))
                    .collect();
                join_terms(terms)
            }
        }
    }

    pub fn parse(&self, s: &str) -> Result<Scalar> {
        text::parse_expr(self, s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

fn gen_power(gen: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => gen.to_string(),
        _ => format!("{gen}^{e}"),
    }
}

pub(crate) fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Joins `(negative, |coef| text, |coef| is one, monomial)` terms.
fn join_terms(terms: Vec<(bool, String, bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (negative, coef, unit, mono)) in terms.into_iter().enumerate() {
        if negative {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        match (mono.is_empty(), unit) {
            (true, _) => out.push_str(&coef),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&coef);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

fn quat_mul(x: &[Rat; 4], y: &[Rat; 4]) -> [Rat; 4] {
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

pub(crate) fn qpoly_trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qpoly_add(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let n = x.len().max(y.len());
    let z = Rat::zero();
    qpoly_trim((0..n).map(|i| x.get(i).unwrap_or(&z) + y.get(i).unwrap_or(&z)).collect())
}

fn qpoly_mul(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    qpoly_trim(out)
}

/// Formats scalars of a known domain.
pub struct Show<'a>(pub &'a Domain, pub &'a Scalar);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> Domain {
        Domain::galois(2, 2, vec![1, 1, 1], "w").unwrap()
    }

    #[test]
    fn gf4_w_squared() {
        let d = gf4();
        let w = d.gen().unwrap();
        assert_eq!(d.format(&d.mul(&w, &w)), "w+1");
    }

    #[test]
    fn quaternion_relations() {
        let d = Domain::quaternion();
        let i = d.parse("i").unwrap();
        let j = d.parse("j").unwrap();
        assert_eq!(d.format(&d.mul(&i, &j)), "k");
        assert_eq!(d.format(&d.mul(&j, &i)), "-k");
        assert_eq!(d.format(&d.mul(&i, &i)), "-1");
    }

    #[test]
    fn poly_domain_inverse_of_y_is_nonunit() {
        let d = Domain::fp_poly(2, "y").unwrap();
        let y = d.gen().unwrap();
        assert!(matches!(d.inv(&y), Err(Error::NonUnit(_))));
        assert_eq!(d.inv(&d.one()).unwrap(), d.one());
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(Domain::galois(2, 2, vec![1, 0, 1], "w").is_err());
        assert!(Domain::prime(4).is_err());
    }

    #[test]
    fn inverse_of_zero() {
        assert_eq!(gf4().inv(&gf4().zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn division_ring_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let domains = [
            Domain::prime(5).unwrap(),
            gf4(),
            Domain::galois_default(3, 2, "w").unwrap(),
            Domain::rational(),
            Domain::quaternion(),
            Domain::fp_poly(3, "y").unwrap(),
            Domain::q_poly("y"),
        ];
        for d in &domains {
            for _ in 0..1000 {
                let (a, b, c) = (d.random(&mut rng), d.random(&mut rng), d.random(&mut rng));
                assert_eq!(d.mul(&d.mul(&a, &b), &c), d.mul(&a, &d.mul(&b, &c)));
                assert_eq!(d.add(&d.add(&a, &b), &c), d.add(&a, &d.add(&b, &c)));
                assert_eq!(d.mul(&a, &d.add(&b, &c)), d.add(&d.mul(&a, &b), &d.mul(&a, &c)));
                assert_eq!(d.mul(&d.add(&a, &b), &c), d.add(&d.mul(&a, &c), &d.mul(&b, &c)));
                assert!(d.is_zero(&d.add(&a, &d.neg(&a))));
                if d.is_unit(&a) {
                    let ai = d.inv(&a).unwrap();
                    assert!(d.is_one(&d.mul(&a, &ai)));
                    assert!(d.is_one(&d.mul(&ai, &a)));
                }
            }
        }
    }

    #[test]
    fn format_parse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let domains = [gf4(), Domain::rational(), Domain::quaternion(), Domain::q_poly("y"), Domain::fp_poly(3, "y").unwrap()];
        for d in &domains {
            for _ in 0..200 {
                let a = d.random(&mut rng);
                assert_eq!(d.parse(&d.format(&a)).unwrap(), a, "{}", d.format(&a));
            }
        }
    }
}
