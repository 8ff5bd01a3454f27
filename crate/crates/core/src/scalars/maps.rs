use rand::Rng;
use serde::Serialize;

use super::{fpoly, Domain, Rat, Scalar};
use crate::error::{Error, Result};

/// A closed description of a ring endomorphism of a coefficient domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EndoSpec {
    Identity,
    /// a -> a^(p^j) on Galois fields.
    Frobenius(usize),
    /// a -> u a u^{-1}.
    Inner(Scalar),
    /// f(y) -> f(c y) on polynomial domains; `c` is a nonzero constant.
    Scale(Scalar),
}

/// A closed description of a sigma-derivation; inner derivations and the
/// Leibniz rule are taken relative to the paired [`EndoSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DerSpec {
    Zero,
    /// a -> b a - sigma(a) b.
    Inner(Scalar),
    /// d/dy on polynomial domains.
    Derivative,
}

impl EndoSpec {
    pub fn validate(&self, d: &Domain) -> Result<()> {
        match self {
            EndoSpec::Identity => Ok(()),
            EndoSpec::Frobenius(j) => match d.extension_degree() {
                Some(k) if *j < k || k == 1 => Ok(()),
                Some(k) => Err(Error::Malformed(format!("frobenius^{j} needs 0 <= j < {k}"))),
                None => Err(Error::Unsupported("frobenius on a non-finite domain".into())),
            },
            EndoSpec::Inner(u) => {
                d.check(u)?;
                if d.is_unit(u) {
                    Ok(())
                } else {
                    Err(Error::NonUnit(d.format(u)))
                }
            }
            EndoSpec::Scale(c) => {
                if !d.is_polynomial() {
                    return Err(Error::Unsupported("scale maps need a polynomial domain".into()));
                }
                d.check(c)?;
                if d.is_unit(c) {
                    Ok(())
                } else {
                    Err(Error::Malformed(format!("scale factor {} must be a nonzero constant", d.format(c))))
                }
            }
        }
    }

    pub fn apply(&self, d: &Domain, a: &Scalar) -> Scalar {
        match self {
            EndoSpec::Identity => a.clone(),
            EndoSpec::Frobenius(j) => {
                let mut x = a.clone();
                for _ in 0..*j {
                    x = d.frobenius(&x);
                }
                x
            }
            EndoSpec::Inner(u) => {
                if d.is_commutative() {
                    return a.clone();
                }
                let ui = d.inv(u).expect("inner automorphism by a non-unit");
                d.mul(&d.mul(u, a), &ui)
            }
            EndoSpec::Scale(c) => match (a, c) {
                (Scalar::FpPoly(v), Scalar::FpPoly(cv)) => {
                    Scalar::FpPoly(fpoly::substitute_scale(v, cv[0], d.characteristic()))
                }
                (Scalar::QPoly(v), Scalar::QPoly(cv)) => {
                    let mut pw = Rat::from_integer(1.into());
                    let mut out = Vec::with_capacity(v.len());
                    for x in v {
                        out.push(x * &pw);
                        pw *= &cv[0];
                    }
                    Scalar::QPoly(super::qpoly_trim(out))
                }
                _ => panic!("scale map applied outside a polynomial domain"),
            },
        }
    }

    /// Checked variant of [`EndoSpec::apply`].
    pub fn try_apply(&self, d: &Domain, a: &Scalar) -> Result<Scalar> {
        self.validate(d)?;
        d.check(a)?;
        Ok(self.apply(d, a))
    }

    fn normalize(self, d: &Domain) -> EndoSpec {
        match &self {
            EndoSpec::Frobenius(0) => EndoSpec::Identity,
            EndoSpec::Frobenius(j) if d.extension_degree() == Some(1) && *j > 0 => EndoSpec::Identity,
            EndoSpec::Inner(u) if d.is_commutative() || d.is_one(u) => EndoSpec::Identity,
            EndoSpec::Scale(c) if d.is_one(c) => EndoSpec::Identity,
            _ => self,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EndoSpec, d: &Domain) -> Result<EndoSpec> {
        let a = self.clone().normalize(d);
        let b = other.clone().normalize(d);
        Ok(match (a, b) {
            (EndoSpec::Identity, x) | (x, EndoSpec::Identity) => x,
            (EndoSpec::Frobenius(i), EndoSpec::Frobenius(j)) => {
                EndoSpec::Frobenius((i + j) % d.extension_degree().unwrap()).normalize(d)
            }
            (EndoSpec::Inner(u), EndoSpec::Inner(v)) => EndoSpec::Inner(d.mul(&u, &v)).normalize(d),
            (EndoSpec::Scale(c), EndoSpec::Scale(e)) => EndoSpec::Scale(d.mul(&c, &e)).normalize(d),
            (x, y) => {
                return Err(Error::Unsupported(format!(
                    "no closed form for {} composed with {}",
                    x.format(d),
                    y.format(d)
                )))
            }
        })
    }

    pub fn pow(&self, n: u64, d: &Domain) -> Result<EndoSpec> {
        let mut acc = EndoSpec::Identity;
        for _ in 0..n {
            acc = acc.compose(self, d)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self, d: &Domain) -> Result<EndoSpec> {
        self.validate(d)?;
        Ok(match self.clone().normalize(d) {
            EndoSpec::Identity => EndoSpec::Identity,
            EndoSpec::Frobenius(j) => {
                let k = d.extension_degree().unwrap();
                EndoSpec::Frobenius((k - j) % k).normalize(d)
            }
            EndoSpec::Inner(u) => EndoSpec::Inner(d.inv(&u)?),
            EndoSpec::Scale(c) => EndoSpec::Scale(d.inv(&c)?),
        })
    }

    /// Bijectivity, checked by composing with the inverse on generators.
    pub fn is_automorphism(&self, d: &Domain) -> bool {
        let Ok(inv) = self.inverse(d) else { return false };
        d.generators().iter().all(|g| {
            inv.apply(d, &self.apply(d, g)) == *g && self.apply(d, &inv.apply(d, g)) == *g
        })
    }

    /// Equality as maps, decided on ring generators.
    pub fn eq_on_generators(&self, other: &EndoSpec, d: &Domain) -> bool {
        d.generators().iter().all(|g| self.apply(d, g) == other.apply(d, g))
    }

    pub fn format(&self, d: &Domain) -> String {
        match self {
            EndoSpec::Identity => "identity".into(),
            EndoSpec::Frobenius(j) => format!("frobenius^{j}"),
            EndoSpec::Inner(u) => format!("inner({})", d.format(u)),
            EndoSpec::Scale(c) => format!("scale({})", d.format(c)),
        }
    }

    pub fn parse(s: &str, d: &Domain) -> Result<EndoSpec> {
        let s = s.trim();
        let spec = if s == "identity" || s == "id" {
            EndoSpec::Identity
        } else if s == "frobenius" {
            EndoSpec::Frobenius(1)
        } else if let Some(j) = s.strip_prefix("frobenius^") {
            EndoSpec::Frobenius(j.trim().parse().map_err(|_| Error::Malformed(format!("bad frobenius power {j:?}")))?)
        } else if let Some(arg) = call_arg(s, "inner") {
            EndoSpec::Inner(d.parse(arg)?)
        } else if let Some(arg) = call_arg(s, "scale") {
            EndoSpec::Scale(d.parse(arg)?)
        } else {
            return Err(Error::Malformed(format!("unknown endomorphism {s:?}")));
        };
        spec.validate(d)?;
        Ok(spec)
    }
}

fn call_arg<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')')
}

impl DerSpec {
    pub fn validate(&self, d: &Domain) -> Result<()> {
        match self {
            DerSpec::Zero => Ok(()),
            DerSpec::Inner(b) => d.check(b),
            DerSpec::Derivative if d.is_polynomial() => Ok(()),
            DerSpec::Derivative => Err(Error::Unsupported("d/dy needs a polynomial domain".into())),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DerSpec::Zero)
    }

    pub fn apply(&self, sigma: &EndoSpec, d: &Domain, a: &Scalar) -> Scalar {
        match self {
            DerSpec::Zero => d.zero(),
            DerSpec::Inner(b) => d.sub(&d.mul(b, a), &d.mul(&sigma.apply(d, a), b)),
            DerSpec::Derivative => match a {
                Scalar::FpPoly(v) => Scalar::FpPoly(fpoly::derivative(v, d.characteristic())),
                Scalar::QPoly(v) => Scalar::QPoly(super::qpoly_trim(
                    v.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer((i as i64).into())).collect(),
                )),
                _ => panic!("d/dy applied outside a polynomial domain"),
            },
        }
    }

    pub fn try_apply(&self, sigma: &EndoSpec, d: &Domain, a: &Scalar) -> Result<Scalar> {
        self.validate(d)?;
        sigma.validate(d)?;
        d.check(a)?;
        Ok(self.apply(sigma, d, a))
    }

    pub fn format(&self, d: &Domain) -> String {
        match self {
            DerSpec::Zero => "zero".into(),
            DerSpec::Inner(b) => format!("inner({})", d.format(b)),
            DerSpec::Derivative => format!("d/d{}", d.gen_name()),
        }
    }

    pub fn parse(s: &str, d: &Domain) -> Result<DerSpec> {
        let s = s.trim();
        let spec = if s == "zero" || s == "0" {
            DerSpec::Zero
        } else if let Some(arg) = call_arg(s, "inner") {
            DerSpec::Inner(d.parse(arg)?)
        } else if s.starts_with("d/d") || s == "derivative" {
            DerSpec::Derivative
        } else {
            return Err(Error::Malformed(format!("unknown derivation {s:?}")));
        };
        spec.validate(d)?;
        Ok(spec)
    }
}

/// Checks delta(ab) = sigma(a) delta(b) + delta(a) b on generator pairs and
/// `samples` random pairs; returns the first failing pair.
pub fn check_leibniz<R: Rng + ?Sized>(
    sigma: &EndoSpec,
    delta: &DerSpec,
    d: &Domain,
    samples: usize,
    rng: &mut R,
) -> Option<(Scalar, Scalar)> {
    let gens = d.generators();
    let mut pairs: Vec<(Scalar, Scalar)> =
        gens.iter().flat_map(|a| gens.iter().map(move |b| (a.clone(), b.clone()))).collect();
    pairs.extend((0..samples).map(|_| (d.random(rng), d.random(rng))));
    pairs.into_iter().find(|(a, b)| {
        let lhs = delta.apply(sigma, d, &d.mul(a, b));
        let rhs = d.add(
            &d.mul(&sigma.apply(d, a), &delta.apply(sigma, d, b)),
            &d.mul(&delta.apply(sigma, d, a), b),
        );
        lhs != rhs
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatReport {
    pub compatible: bool,
    pub checked: usize,
    /// Element where sigma(delta(a)) != delta(sigma(a)), in text form.
    pub witness: Option<String>,
}

/// Decides sigma∘delta = delta∘sigma on generators (and their squares) plus
/// `samples` random elements.
pub fn check_compat<R: Rng + ?Sized>(
    sigma: &EndoSpec,
    delta: &DerSpec,
    d: &Domain,
    samples: usize,
    rng: &mut R,
) -> CompatReport {
    let mut pts = d.generators();
    pts.extend(d.generators().iter().map(|g| d.mul(g, g)).collect::<Vec<_>>());
    pts.extend((0..samples).map(|_| d.random(rng)));
    let checked = pts.len();
    let witness = pts.into_iter().find(|a| {
        sigma.apply(d, &delta.apply(sigma, d, a)) != delta.apply(sigma, d, &sigma.apply(d, a))
    });
    CompatReport { compatible: witness.is_none(), checked, witness: witness.map(|a| d.format(&a)) }
}
