use num_bigint::BigInt;

use super::{SkewPoly, SkewRing};
use crate::error::{Error, Result};
use crate::scalars::text::ExprTarget;

impl ExprTarget for SkewRing {
    type Elem = SkewPoly;

    fn number(&self, n: &BigInt) -> Result<SkewPoly> {
        Ok(self.constant(self.domain.number(n)?))
    }

    fn ident(&self, name: &str) -> Result<SkewPoly> {
        match self.var_index(name) {
            Some(i) => Ok(self.var(i)),
            None => Ok(self.constant(self.domain.ident(name)?)),
        }
    }

    fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        SkewRing::add(self, a, b)
    }

    fn neg(&self, a: &SkewPoly) -> SkewPoly {
        SkewRing::neg(self, a)
    }

    fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
        Ok(SkewRing::mul(self, a, b))
    }

    fn div(&self, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
        let c = match self.leading(b).exponent() {
            Some(e) if e.is_zero() => self.lc(b).expect("nonzero"),
            Some(_) => return Err(Error::Unsupported("division by a non-constant polynomial".into())),
            None => return Err(Error::DivisionByZero),
        };
        let inv = self.domain.inv(&c)?;
        Ok(SkewRing::mul(self, a, &self.constant(inv)))
    }

    fn one(&self) -> SkewPoly {
        SkewRing::one(self)
    }
}
