//! Univariate Ore extensions `D[x; sigma, delta]` with dense coefficient vectors.

use crate::error::{Error, Result};
use crate::monomials::{MultiIndex, TermOrder};
use crate::scalars::{DerSpec, Domain, EndoSpec, Scalar};
use crate::skewring::{SkewPoly, SkewRing};

/// Ascending left coefficients; the last entry is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrePoly(Vec<Scalar>);

impl OrePoly {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.0.last()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreRing {
    ring: SkewRing,
}

impl OreRing {
    pub fn new(domain: Domain, sigma: EndoSpec, delta: DerSpec, var: &str) -> Result<OreRing> {
        let ring = SkewRing::new(domain, vec![var.to_string()], vec![sigma], vec![delta], vec![], TermOrder::lex(1))?;
        Ok(OreRing { ring })
    }

    /// `GF(p^k)[x; frobenius]`.
    pub fn gf_frobenius(p: u64, k: usize) -> Result<OreRing> {
        let d = Domain::galois_default(p, k, "w")?;
        let s = if k > 1 { EndoSpec::Frobenius(1) } else { EndoSpec::Identity };
        OreRing::new(d, s, DerSpec::Zero, "x")
    }

    pub fn from_skew(ring: &SkewRing) -> Result<OreRing> {
        if ring.nvars() != 1 {
            return Err(Error::Unsupported(format!("an Ore ring has one variable, not {}", ring.nvars())));
        }
        Ok(OreRing { ring: ring.with_order(TermOrder::lex(1))? })
    }

    pub fn as_skew(&self) -> &SkewRing {
        &self.ring
    }

    pub fn domain(&self) -> &Domain {
        self.ring.domain()
    }

    pub fn sigma(&self) -> &EndoSpec {
        self.ring.sigma(0)
    }

    pub fn delta(&self) -> &DerSpec {
        self.ring.delta(0)
    }

    pub fn var_name(&self) -> &str {
        &self.ring.var_names()[0]
    }

    pub fn poly(&self, coeffs: Vec<Scalar>) -> OrePoly {
        let d = self.domain();
        let mut v = coeffs;
        while v.last().is_some_and(|c| d.is_zero(c)) {
            v.pop();
        }
        OrePoly(v)
    }

    pub fn zero(&self) -> OrePoly {
        OrePoly(Vec::new())
    }

    pub fn one(&self) -> OrePoly {
        self.constant(self.domain().one())
    }

    pub fn constant(&self, c: Scalar) -> OrePoly {
        self.poly(vec![c])
    }

    /// `c x^k`.
    pub fn monomial(&self, k: usize, c: Scalar) -> OrePoly {
        let mut v = vec![self.domain().zero(); k + 1];
        v[k] = c;
        self.poly(v)
    }

    pub fn x(&self) -> OrePoly {
        self.monomial(1, self.domain().one())
    }

    pub fn to_skew(&self, f: &OrePoly) -> SkewPoly {
        self.ring.from_terms(f.0.iter().enumerate().map(|(i, c)| (MultiIndex::from_slice(&[i as u32]), c.clone())))
    }

    pub fn from_skew_poly(&self, f: &SkewPoly) -> OrePoly {
        let n = f.degree_in(0).map_or(0, |d| d as usize + 1);
        let mut v = vec![self.domain().zero(); n];
        for (e, c) in f.terms() {
            v[e.get(0) as usize] = c.clone();
        }
        self.poly(v)
    }

    pub fn parse(&self, s: &str) -> Result<OrePoly> {
        Ok(self.from_skew_poly(&self.ring.parse(s)?))
    }

    pub fn format(&self, f: &OrePoly) -> String {
        self.ring.format(&self.to_skew(f))
    }

    pub fn add(&self, f: &OrePoly, g: &OrePoly) -> OrePoly {
        let d = self.domain();
        let n = f.0.len().max(g.0.len());
        let z = d.zero();
        self.poly((0..n).map(|i| d.add(f.0.get(i).unwrap_or(&z), g.0.get(i).unwrap_or(&z))).collect())
    }

    pub fn neg(&self, f: &OrePoly) -> OrePoly {
        OrePoly(f.0.iter().map(|c| self.domain().neg(c)).collect())
    }

    pub fn sub(&self, f: &OrePoly, g: &OrePoly) -> OrePoly {
        self.add(f, &self.neg(g))
    }

    /// `x^k a` as ascending coefficients.
    fn xpow_times(&self, k: usize, a: &Scalar) -> Vec<Scalar> {
        let d = self.domain();
        let (s, t) = (self.sigma(), self.delta());
        let mut cur = vec![a.clone()];
        for _ in 0..k {
            let mut next = vec![d.zero(); cur.len() + 1];
            for (l, c) in cur.iter().enumerate() {
                if d.is_zero(c) {
                    continue;
                }
                next[l + 1] = d.add(&next[l + 1], &s.apply(d, c));
                if !t.is_zero() {
                    next[l] = d.add(&next[l], &t.apply(s, d, c));
                }
            }
            cur = next;
        }
        cur
    }

    pub fn mul(&self, f: &OrePoly, g: &OrePoly) -> OrePoly {
        if f.is_zero() || g.is_zero() {
            return self.zero();
        }
        let d = self.domain();
        let mut out = vec![d.zero(); f.0.len() + g.0.len() - 1];
        for (i, a) in f.0.iter().enumerate() {
            if d.is_zero(a) {
                continue;
            }
            for (j, b) in g.0.iter().enumerate() {
                if d.is_zero(b) {
                    continue;
                }
                for (l, c) in self.xpow_times(i, b).iter().enumerate() {
                    if !d.is_zero(c) {
                        out[l + j] = d.add(&out[l + j], &d.mul(a, c));
                    }
                }
            }
        }
        self.poly(out)
    }

    pub fn check(&self, f: &OrePoly) -> Result<()> {
        if f.0.last().is_some_and(|c| self.domain().is_zero(c)) {
            return Err(Error::Malformed("trailing zero coefficient".into()));
        }
        f.0.iter().try_for_each(|c| self.domain().check(c))
    }

    /// Checked product.
    pub fn ore_mul(&self, f: &OrePoly, g: &OrePoly) -> Result<OrePoly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mul(f, g))
    }

    fn sigma_pow(&self, k: usize, a: &Scalar) -> Scalar {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.sigma().apply(self.domain(), &x);
        }
        x
    }

    /// `f = q g + r` with `deg r < deg g`.
    pub fn right_divmod(&self, f: &OrePoly, g: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        let d = self.domain();
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let b = g.lc().expect("nonzero");
        let mut q = self.zero();
        let mut r = f.clone();
        while let Some(dr) = r.degree().filter(|&dr| dr >= dg) {
            let a = r.lc().expect("nonzero");
            let sb = self.sigma_pow(dr - dg, b);
            let c = d.div(a, &sb).map_err(|_| Error::NonUnit(d.format(&sb)))?;
            let t = self.monomial(dr - dg, c);
            r = self.sub(&r, &self.mul(&t, g));
            if r.degree() == Some(dr) {
                return Err(Error::Verification("leading term did not cancel".into()));
            }
            q = self.add(&q, &t);
        }
        Ok((q, r))
    }

    /// `f = g q + r` with `deg r < deg g`; needs `sigma` invertible.
    pub fn left_divmod(&self, f: &OrePoly, g: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        let d = self.domain();
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        if !self.sigma().is_automorphism(d) {
            return Err(Error::NotAutomorphism(self.sigma().format(d)));
        }
        let sinv = self.sigma().inverse(d)?;
        let b = g.lc().expect("nonzero");
        let binv = d.inv(b)?;
        let mut q = self.zero();
        let mut r = f.clone();
        while let Some(dr) = r.degree().filter(|&dr| dr >= dg) {
            // g * c x^{dr-dg} leads with b sigma^dg(c) x^dr
            let mut c = d.mul(&binv, r.lc().expect("nonzero"));
            for _ in 0..dg {
                c = sinv.apply(d, &c);
            }
            let t = self.monomial(dr - dg, c);
            r = self.sub(&r, &self.mul(g, &t));
            if r.degree() == Some(dr) {
                return Err(Error::Verification("leading term did not cancel".into()));
            }
            q = self.add(&q, &t);
        }
        Ok((q, r))
    }

    fn require_finite(&self) -> Result<Vec<Scalar>> {
        let d = self.domain();
        if !d.is_finite() || !d.is_division_ring() {
            return Err(Error::Unsupported(format!("needs a finite coefficient field, got {:?}", d.descriptor())));
        }
        Ok(d.elements().expect("finite domain"))
    }

    /// All monic polynomials of degree `k`, lower coefficients enumerated
    /// with the constant term varying fastest.
    pub fn monics(&self, k: usize) -> Result<Vec<OrePoly>> {
        let elems = self.require_finite()?;
        let q = elems.len();
        let total = q.checked_pow(k as u32).filter(|&t| t <= 1 << 22).ok_or_else(|| Error::TooLarge(format!("{q}^{k} monics")))?;
        let mut out = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut v = Vec::with_capacity(k + 1);
            for _ in 0..k {
                v.push(elems[idx % q].clone());
                idx /= q;
            }
            v.push(self.domain().one());
            out.push(OrePoly(v));
        }
        Ok(out)
    }

    /// A monic right factor of degree strictly between 0 and `deg f`, if any.
    pub fn right_factor(&self, f: &OrePoly) -> Result<Option<OrePoly>> {
        let n = f.degree().ok_or_else(|| Error::ZeroInput("irreducibility of zero".into()))?;
        for k in 1..n {
            for g in self.monics(k)? {
                if self.right_divmod(f, &g)?.1.is_zero() {
                    return Ok(Some(g));
                }
            }
        }
        Ok(None)
    }

    /// No monic right factor of intermediate degree exists.
    pub fn irreducible(&self, f: &OrePoly) -> Result<bool> {
        self.require_finite()?;
        match f.degree() {
            None | Some(0) => Err(Error::Malformed("irreducibility needs degree at least 1".into())),
            Some(_) => Ok(self.right_factor(f)?.is_none()),
        }
    }

    /// Whether `S q = q S`, checked on `x` and the domain generators.
    pub fn is_two_sided(&self, q: &OrePoly) -> Result<bool> {
        let d = self.domain();
        let mut gens = vec![self.x()];
        gens.extend(d.generators().into_iter().map(|a| self.constant(a)));
        for a in &gens {
            if !self.right_divmod(&self.mul(q, a), q)?.1.is_zero() {
                return Ok(false);
            }
            if !self.left_divmod(&self.mul(a, q), q)?.1.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least-degree monic nonconstant `q` with `S q = q S`, up to `degcap`.
    pub fn minimal_invariant_poly(&self, degcap: usize) -> Result<Option<OrePoly>> {
        self.require_finite()?;
        if degcap == 0 {
            return Err(Error::Malformed("degree cap must be at least 1".into()));
        }
        for k in 1..=degcap {
            for q in self.monics(k)? {
                if self.is_two_sided(&q)? {
                    return Ok(Some(q));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn gf4x() -> OreRing {
        OreRing::gf_frobenius(2, 2).unwrap()
    }

    fn random(r: &OreRing, deg: usize, rng: &mut ChaCha8Rng) -> OrePoly {
        r.poly((0..=deg).map(|_| r.domain().random(rng)).collect())
    }

    #[test]
    fn commutation_and_product() {
        let r = gf4x();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(r.format(&r.mul(&p("x"), &p("w"))), "(w+1)*x");
        assert_eq!(r.mul(&p("x + w^2"), &p("x + w")), p("x^2 + 1"));
        assert_eq!(r.format(&p("x^2 + (w)*x + 1")), "x^2 + (w)*x + 1");
    }

    #[test]
    fn division_examples() {
        let r = gf4x();
        let p = |s: &str| r.parse(s).unwrap();
        let (q, rem) = r.right_divmod(&p("x^2+1"), &p("x+w")).unwrap();
        assert_eq!((q, rem), (p("x+w^2"), r.zero()));
        let (q, rem) = r.left_divmod(&p("x^2+1"), &p("x+w")).unwrap();
        assert!(rem.degree().is_none_or(|d| d == 0));
        assert_eq!(r.add(&r.mul(&p("x+w"), &q), &rem), p("x^2+1"));
        assert_eq!(r.right_divmod(&p("x"), &p("x^2")).unwrap(), (r.zero(), p("x")));
        assert_eq!(r.right_divmod(&p("x"), &r.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn commutative_divisions_agree() {
        let r = OreRing::gf_frobenius(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let f = random(&r, rng.gen_range(0..6), &mut rng);
            let g = random(&r, rng.gen_range(0..4), &mut rng);
            if g.is_zero() {
                continue;
            }
            assert_eq!(r.right_divmod(&f, &g).unwrap(), r.left_divmod(&f, &g).unwrap());
        }
    }

    #[test]
    fn irreducibility_examples() {
        let r = gf4x();
        let p = |s: &str| r.parse(s).unwrap();
        assert!(!r.irreducible(&p("x^2+1")).unwrap());
        assert!(r.irreducible(&p("x+w")).unwrap());
        let f2 = OreRing::gf_frobenius(2, 1).unwrap();
        assert!(f2.irreducible(&f2.parse("x^2+x+1").unwrap()).unwrap());
        assert!(!f2.irreducible(&f2.parse("x^2+1").unwrap()).unwrap());
    }

    #[test]
    fn invariant_polynomials() {
        let r = gf4x();
        assert_eq!(r.minimal_invariant_poly(3).unwrap(), Some(r.x()));
        let f2 = OreRing::gf_frobenius(2, 1).unwrap();
        assert_eq!(f2.minimal_invariant_poly(3).unwrap(), Some(f2.x()));
        let weyl = OreRing::new(Domain::q_poly("y"), EndoSpec::Identity, DerSpec::Derivative, "x").unwrap();
        assert!(matches!(weyl.minimal_invariant_poly(3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn degree_additivity_and_associativity() {
        let r = OreRing::gf_frobenius(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let f = random(&r, rng.gen_range(0..5), &mut rng);
            let g = random(&r, rng.gen_range(0..5), &mut rng);
            let h = random(&r, rng.gen_range(0..5), &mut rng);
            if let (Some(a), Some(b)) = (f.degree(), g.degree()) {
                assert_eq!(r.mul(&f, &g).degree(), Some(a + b));
            }
            assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
        }
    }

    #[test]
    fn agrees_with_multivariate_product() {
        let r = OreRing::new(Domain::fp_poly(3, "y").unwrap(), EndoSpec::Identity, DerSpec::Derivative, "x").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let f = random(&r, rng.gen_range(0..4), &mut rng);
            let g = random(&r, rng.gen_range(0..4), &mut rng);
            let s = r.as_skew();
            assert_eq!(r.to_skew(&r.mul(&f, &g)), s.mul(&r.to_skew(&f), &r.to_skew(&g)));
        }
    }
}
