//! Independent reference implementations used to check the engine.

use std::collections::BTreeMap;

use skewalg::monomials::MultiIndex;
use skewalg::scalars::{Domain, Scalar};
use skewalg::skewring::{SkewPoly, SkewRing};

#[derive(Clone, Debug, PartialEq)]
enum Letter {
    S(Scalar),
    X(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostFirst,
    RightmostFirst,
}

/// Multiplies by rewriting words over `{scalars, x_i}` with the defining
/// relations `x_k a -> σ_k(a) x_k + δ_k(a)`, `x_j x_i -> x_i x_j + d_ij` and
/// `a b -> (ab)`, until no rule applies.
pub fn word_mul(ring: &SkewRing, f: &SkewPoly, g: &SkewPoly, strategy: Strategy) -> SkewPoly {
    let mut work: Vec<Vec<Letter>> = Vec::new();
    for (ea, ca) in f.terms() {
        for (eb, cb) in g.terms() {
            let mut w = vec![Letter::S(ca.clone())];
            w.extend(expand(ea));
            w.push(Letter::S(cb.clone()));
            w.extend(expand(eb));
            work.push(w);
        }
    }
    let d = ring.domain();
    let mut acc: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    while let Some(w) = work.pop() {
        if w.iter().any(|l| matches!(l, Letter::S(c) if d.is_zero(c))) {
            continue;
        }
        match find_redex(&w, strategy) {
            None => {
                let (c, e) = read_normal(d, ring.nvars(), &w);
                let slot = acc.entry(e).or_insert_with(|| d.zero());
                *slot = d.add(slot, &c);
            }
            Some(i) => work.extend(rewrite(ring, &w, i)),
        }
    }
    ring.from_terms(acc)
}

fn expand(e: &MultiIndex) -> Vec<Letter> {
    let mut out = Vec::new();
    for (i, &k) in e.exps().iter().enumerate() {
        for _ in 0..k {
            out.push(Letter::X(i));
        }
    }
    out
}

fn is_redex(a: &Letter, b: &Letter) -> bool {
    match (a, b) {
        (Letter::X(_), Letter::S(_)) | (Letter::S(_), Letter::S(_)) => true,
        (Letter::X(j), Letter::X(i)) => j > i,
        _ => false,
    }
}

fn find_redex(w: &[Letter], s: Strategy) -> Option<usize> {
    let idx = (0..w.len().saturating_sub(1)).filter(|&i| is_redex(&w[i], &w[i + 1]));
    match s {
        Strategy::LeftmostFirst => idx.min(),
        Strategy::RightmostFirst => idx.max(),
    }
}

fn rewrite(ring: &SkewRing, w: &[Letter], i: usize) -> Vec<Vec<Letter>> {
    let d = ring.domain();
    let splice = |mid: Vec<Letter>| {
        let mut v = w[..i].to_vec();
        v.extend(mid);
        v.extend_from_slice(&w[i + 2..]);
        v
    };
    match (&w[i], &w[i + 1]) {
        (Letter::S(a), Letter::S(b)) => vec![splice(vec![Letter::S(d.mul(a, b))])],
        (Letter::X(k), Letter::S(a)) => {
            let s = ring.sigma(*k).apply(d, a);
            let dl = ring.delta(*k).apply(ring.sigma(*k), d, a);
            let mut out = vec![splice(vec![Letter::S(s), Letter::X(*k)])];
            if !d.is_zero(&dl) {
                out.push(splice(vec![Letter::S(dl)]));
            }
            out
        }
        (Letter::X(j), Letter::X(i2)) => {
            let mut out = vec![splice(vec![Letter::X(*i2), Letter::X(*j)])];
            if let Some(c) = ring.commutator(*i2, *j) {
                if !d.is_zero(c) {
                    out.push(splice(vec![Letter::S(c.clone())]));
                }
            }
            out
        }
        _ => unreachable!("not a redex"),
    }
}

fn read_normal(d: &Domain, n: usize, w: &[Letter]) -> (Scalar, MultiIndex) {
    let mut c = d.one();
    let mut e = vec![0u32; n];
    for l in w {
        match l {
            Letter::S(a) => c = d.mul(&c, a),
            Letter::X(i) => e[*i] += 1,
        }
    }
    (c, MultiIndex::from_slice(&e))
}

/// Monic irreducible factors of `a` over `F_p` by trial division with every
/// monic polynomial in increasing degree.
pub fn trial_factor(a: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut rest = trim(a.to_vec());
    let mut out = Vec::new();
    let mut d = 1;
    while degree(&rest) >= 1 {
        if 2 * d > degree(&rest) {
            out.push(monic(&rest, p));
            break;
        }
        for idx in 0..p.pow(d as u32) {
            let mut c: Vec<u64> = (0..d).map(|k| (idx / p.pow(k as u32)) % p).collect();
            c.push(1);
            let mut hit = false;
            while let Some(q) = exact_div(&rest, &c, p) {
                rest = q;
                hit = true;
            }
            if hit {
                out.push(c);
            }
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn degree(a: &[u64]) -> usize {
    a.len().saturating_sub(1)
}

fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|b| a * b % p == 1).expect("unit")
}

fn monic(a: &[u64], p: u64) -> Vec<u64> {
    let l = inv(*a.last().unwrap(), p);
    a.iter().map(|x| x * l % p).collect()
}

/// `a / b` when `b` divides `a` exactly.
pub fn exact_div(a: &[u64], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let lb = inv(*b.last().unwrap(), p);
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let s = r.len() - b.len();
        let c = r.last().unwrap() * lb % p;
        q[s] = c;
        for (i, &x) in b.iter().enumerate() {
            r[s + i] = (r[s + i] + p * p - c * x % p) % p;
        }
        r = trim(r);
    }
    r.is_empty().then(|| trim(q))
}

pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// All monic polynomials of degree exactly `d` over `F_p`.
pub fn monics(d: usize, p: u64) -> Vec<Vec<u64>> {
    (0..p.pow(d as u32))
        .map(|idx| {
            let mut c: Vec<u64> = (0..d).map(|k| (idx / p.pow(k as u32)) % p).collect();
            c.push(1);
            c
        })
        .collect()
}

/// All polynomials of degree `< d` (including zero) over `F_p`.
pub fn all_below(d: usize, p: u64) -> Vec<Vec<u64>> {
    (0..p.pow(d as u32)).map(|idx| trim((0..d).map(|k| (idx / p.pow(k as u32)) % p).collect())).collect()
}
