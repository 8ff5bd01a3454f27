//! Exponent vectors and the two term orders used throughout: lex and deglex.
//!
//! Both orders are parameterized by a significance list naming the variable
//! compared first. The default puts the last variable first, so that
//! `x1 < x2 < ... < xn` and lex compares from the last coordinate down.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = Self::zero(n);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(e: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(e))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.0[i] = v;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.arity() == other.arity() {
            Ok(())
        } else {
            Err(Error::ArityMismatch(self.arity(), other.arity()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(self + other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        if !other.divides(self) {
            return Err(Error::NotDivisible(self.to_string(), other.to_string()));
        }
        Ok(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Support is contained in `vars`.
    pub fn supported_on(&self, vars: &[usize]) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == 0 || vars.contains(&i))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: std::result::Result<SmallVec<[u32; 4]>, _> =
            inner.split(',').map(|t| t.trim().parse::<u32>()).collect();
        v.map(MultiIndex).map_err(|_| Error::Parse { pos: 0, msg: format!("bad multi-index {s:?}") })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, max: u32, rng: &mut R) -> Self {
        MultiIndex((0..n).map(|_| rng.gen_range(0..=max)).collect())
    }
}

impl std::ops::Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    DegLex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub kind: OrderKind,
    /// Variable indices, most significant first. A permutation of 0..n.
    significance: Vec<usize>,
}

impl TermOrder {
    /// x1 < ... < xn: the last variable is most significant.
    pub fn new(kind: OrderKind, n: usize) -> Self {
        TermOrder { kind, significance: (0..n).rev().collect() }
    }

    pub fn lex(n: usize) -> Self {
        Self::new(OrderKind::Lex, n)
    }

    pub fn deglex(n: usize) -> Self {
        Self::new(OrderKind::DegLex, n)
    }

    pub fn with_significance(kind: OrderKind, significance: Vec<usize>) -> Result<Self> {
        let mut sorted = significance.clone();
        sorted.sort_unstable();
        if sorted != (0..significance.len()).collect::<Vec<_>>() {
            return Err(Error::Malformed(format!("{significance:?} is not a permutation")));
        }
        Ok(TermOrder { kind, significance })
    }

    /// Lex order in which every variable outside `keep` outranks every kept
    /// variable; within each block the default significance is preserved.
    pub fn elimination(n: usize, keep: &[usize]) -> Self {
        let default: Vec<usize> = (0..n).rev().collect();
        let mut sig: Vec<usize> = default.iter().copied().filter(|i| !keep.contains(i)).collect();
        sig.extend(default.iter().copied().filter(|i| keep.contains(i)));
        TermOrder { kind: OrderKind::Lex, significance: sig }
    }

    pub fn arity(&self) -> usize {
        self.significance.len()
    }

    pub fn significance(&self) -> &[usize] {
        &self.significance
    }

    /// Unchecked comparison; arities must agree.
    pub fn cmp(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        if self.kind == OrderKind::DegLex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        for &i in &self.significance {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn compare(&self, a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch(a.arity(), b.arity()));
        }
        if a.arity() != self.arity() {
            return Err(Error::ArityMismatch(a.arity(), self.arity()));
        }
        Ok(self.cmp(a, b))
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::DegLex => "deglex",
        }
    }
}

/// Leading exponent and coefficient of a polynomial, or the zero sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeadingData {
    Zero,
    Term { exponent: MultiIndex, coeff: Scalar },
}

impl LeadingData {
    pub fn exponent(&self) -> Option<&MultiIndex> {
        match self {
            LeadingData::Zero => None,
            LeadingData::Term { exponent, .. } => Some(exponent),
        }
    }

    pub fn coeff(&self) -> Option<&Scalar> {
        match self {
            LeadingData::Zero => None,
            LeadingData::Term { coeff, .. } => Some(coeff),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SanityReport {
    pub passed: bool,
    pub checked: usize,
    /// Failing triple: either `(zero, b, _)` with b <= zero, or `(a, b, c)` with
    /// a < b but not a+c < b+c.
    pub witness: Option<(MultiIndex, MultiIndex, MultiIndex)>,
}

/// Randomized check of the term-order axioms for an arbitrary comparator.
pub fn order_sanity_with<F, R>(cmp: F, n: usize, samples: usize, rng: &mut R) -> SanityReport
where
    F: Fn(&MultiIndex, &MultiIndex) -> Ordering,
    R: Rng + ?Sized,
{
    let zero = MultiIndex::zero(n);
    for _ in 0..samples {
        let a = MultiIndex::random(n, 6, rng);
        let b = MultiIndex::random(n, 6, rng);
        let c = MultiIndex::random(n, 6, rng);
        if !b.is_zero() && cmp(&zero, &b) != Ordering::Less {
            return SanityReport { passed: false, checked: samples, witness: Some((zero, b, c)) };
        }
        let (lo, hi) = match cmp(&a, &b) {
            Ordering::Less => (a, b),
            Ordering::Greater => (b, a),
            Ordering::Equal => continue,
        };
        if cmp(&(&lo + &c), &(&hi + &c)) != Ordering::Less {
            return SanityReport { passed: false, checked: samples, witness: Some((lo, hi, c)) };
        }
    }
    SanityReport { passed: true, checked: samples, witness: None }
}

pub fn order_sanity<R: Rng + ?Sized>(o: &TermOrder, samples: usize, rng: &mut R) -> SanityReport {
    order_sanity_with(|a, b| o.cmp(a, b), o.arity(), samples, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::from_slice(e)
    }

    #[test]
    fn compare_examples() {
        assert_eq!(TermOrder::lex(2).compare(&mi(&[5, 0]), &mi(&[0, 1])).unwrap(), Ordering::Less);
        assert_eq!(TermOrder::deglex(2).compare(&mi(&[2, 0]), &mi(&[0, 1])).unwrap(), Ordering::Greater);
        for o in [TermOrder::lex(2), TermOrder::deglex(2)] {
            assert_eq!(o.compare(&mi(&[0, 0]), &mi(&[1, 0])).unwrap(), Ordering::Less);
        }
        assert!(matches!(TermOrder::lex(2).compare(&mi(&[1]), &mi(&[1, 0])), Err(Error::ArityMismatch(..))));
    }

    #[test]
    fn add_sub_examples() {
        assert_eq!(mi(&[1, 2]).add(&mi(&[3, 0])).unwrap(), mi(&[4, 2]));
        assert_eq!(mi(&[1, 2]).sub(&mi(&[0, 2])).unwrap(), mi(&[1, 0]));
        assert!(matches!(mi(&[1, 0]).sub(&mi(&[0, 1])), Err(Error::NotDivisible(..))));
    }

    #[test]
    fn sanity_passes_for_shipped_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for o in [TermOrder::lex(3), TermOrder::deglex(3), TermOrder::elimination(3, &[0])] {
            assert!(order_sanity(&o, 10_000, &mut rng).passed);
        }
    }

    #[test]
    fn sanity_catches_corrupted_comparator() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // Reverse degree comparison: zero is the maximum, not the minimum.
        let bad = |a: &MultiIndex, b: &MultiIndex| b.degree().cmp(&a.degree()).then(a.cmp(b));
        let r = order_sanity_with(bad, 2, 10_000, &mut rng);
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }

    #[test]
    fn elimination_order_puts_eliminated_first() {
        let o = TermOrder::elimination(3, &[0]);
        assert_eq!(o.significance(), &[2, 1, 0]);
        let o = TermOrder::elimination(2, &[1]);
        assert_eq!(o.cmp(&mi(&[1, 0]), &mi(&[0, 5])), Ordering::Greater);
    }

    fn idx() -> impl Strategy<Value = MultiIndex> {
        proptest::collection::vec(0u32..8, 3).prop_map(|v| MultiIndex::from_slice(&v))
    }

    proptest! {
        #[test]
        fn compare_is_a_total_order(a in idx(), b in idx(), c in idx(), deg in any::<bool>()) {
            let o = if deg { TermOrder::deglex(3) } else { TermOrder::lex(3) };
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn add_laws(a in idx(), b in idx(), c in idx()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a + &b).sub(&b).unwrap(), a);
        }
    }
}
