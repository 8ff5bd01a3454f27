//! Dense univariate polynomials over a prime field F_p, coefficients ascending.
//!
//! Every function expects and returns trimmed vectors (no trailing zeros);
//! the zero polynomial is the empty vector.

pub type FpPoly = Vec<u64>;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse in F_p by Fermat; `a` must be nonzero mod p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn neg(a: &[u64], p: u64) -> FpPoly {
    a.iter().map(|&c| (p - c) % p).collect()
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    add(a, &neg(b, p), p)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> FpPoly {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Euclidean division `a = q*b + r`; `b` must be nonzero.
pub fn divmod(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = deg(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        q[dr - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[dr - db + j] = (r[dr - db + j] + p - t) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    divmod(a, b, p).1
}

pub fn divides(b: &[u64], a: &[u64], p: u64) -> bool {
    rem(a, b, p).is_empty()
}

pub fn monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)` monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.last() {
        None => (Vec::new(), Vec::new(), Vec::new()),
        Some(&l) => {
            let li = inv_mod(l, p);
            (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
        }
    }
}

pub fn derivative(a: &[u64], p: u64) -> FpPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect(),
    )
}

/// `f(y) -> f(c*y)`.
pub fn substitute_scale(a: &[u64], c: u64, p: u64) -> FpPoly {
    let mut pw = 1 % p;
    let mut out = Vec::with_capacity(a.len());
    for &x in a {
        out.push(mul_mod(x, pw, p));
        pw = mul_mod(pw, c, p);
    }
    trim(out)
}

/// The `idx`-th monic polynomial of degree `d`: lower coefficients are the
/// base-p digits of `idx`, constant term least significant.
pub fn monic_from_index(d: usize, mut idx: u64, p: u64) -> FpPoly {
    let mut out = Vec::with_capacity(d + 1);
    for _ in 0..d {
        out.push(idx % p);
        idx /= p;
    }
    out.push(1);
    out
}

pub fn count_monic(d: usize, p: u64) -> u64 {
    p.pow(d as u32)
}

/// Irreducibility by trial division over all monics of degree 1..=deg/2.
pub fn is_irreducible(a: &[u64], p: u64) -> bool {
    let Some(d) = deg(a) else { return false };
    if d == 0 {
        return false;
    }
    for e in 1..=d / 2 {
        for idx in 0..count_monic(e, p) {
            if divides(&monic_from_index(e, idx, p), a, p) {
                return false;
            }
        }
    }
    true
}

/// Monic irreducible factors with multiplicities, in (degree, index) order.
/// The leading coefficient of `a` is the leftover unit. `a` must be nonzero.
pub fn factor(a: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut rest = monic(a, p);
    let mut out = Vec::new();
    let mut d = 1;
    while deg(&rest).unwrap_or(0) >= 1 {
        if 2 * d > deg(&rest).unwrap() {
            out.push((rest.clone(), 1));
            break;
        }
        for idx in 0..count_monic(d, p) {
            let f = monic_from_index(d, idx, p);
            let mut mult = 0;
            loop {
                let (q, r) = divmod(&rest, &f, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((f, mult));
            }
        }
        d += 1;
    }
    out.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then(index_key(&x.0).cmp(&index_key(&y.0))));
    out
}

fn index_key(a: &[u64]) -> Vec<u64> {
    a[..a.len().saturating_sub(1)].iter().rev().copied().collect()
}

/// Monic irreducibles in (degree, index) order, without end.
pub struct IrreducibleStream {
    p: u64,
    degree: usize,
    next_idx: u64,
}

impl IrreducibleStream {
    pub fn new(p: u64) -> Self {
        IrreducibleStream { p, degree: 1, next_idx: 0 }
    }
}

impl Iterator for IrreducibleStream {
    type Item = FpPoly;

    fn next(&mut self) -> Option<FpPoly> {
        loop {
            if self.next_idx >= count_monic(self.degree, self.p) {
                self.degree += 1;
                self.next_idx = 0;
            }
            let f = monic_from_index(self.degree, self.next_idx, self.p);
            self.next_idx += 1;
            if is_irreducible(&f, self.p) {
                return Some(f);
            }
        }
    }
}
