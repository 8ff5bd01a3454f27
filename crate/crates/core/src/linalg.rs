//! Row reduction for left vector spaces over a division ring.
//!
//! Vectors are rows of scalars; spans are left spans, so a combination is
//! `sum_i c_i * v_i` with each coefficient multiplying from the left. That is
//! the only convention that stays correct over the quaternions.

use crate::scalars::{Domain, Scalar};

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    v: Vec<Scalar>,
    /// `v = sum_k combo[k] * inserted[k]`.
    combo: Vec<Scalar>,
}

/// Incrementally built row-echelon form with optional combination tracking.
#[derive(Clone, Debug)]
pub struct LeftSpan {
    domain: Domain,
    width: usize,
    rows: Vec<Row>,
    inserted: usize,
    track: bool,
}

impl LeftSpan {
    pub fn new(domain: &Domain, width: usize, track: bool) -> Self {
        LeftSpan { domain: domain.clone(), width, rows: Vec::new(), inserted: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn axpy(&self, dst: &mut Vec<Scalar>, c: &Scalar, src: &[Scalar]) {
        // dst -= c * src
        if dst.len() < src.len() {
            dst.resize(src.len(), self.domain.zero());
        }
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.domain.is_zero(s) {
                *d = self.domain.sub(d, &self.domain.mul(c, s));
            }
        }
    }

    /// Reduces `v` against the stored rows. Returns the residual and, when
    /// tracking, coefficients with `v - residual = sum_k c_k * inserted[k]`.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        assert_eq!(v.len(), self.width, "vector width");
        let d = &self.domain;
        let mut r = v.to_vec();
        let mut combo: Vec<Scalar> = Vec::new();
        for row in &self.rows {
            let c = r[row.pivot].clone();
            if d.is_zero(&c) {
                continue;
            }
            self.axpy(&mut r, &c, &row.v);
            if self.track {
                // combo += c * row.combo
                let neg = d.neg(&c);
                self.axpy(&mut combo, &neg, &row.combo);
            }
        }
        combo.resize(self.inserted, d.zero());
        (r, combo)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let (r, _) = self.reduce(v);
        r.iter().all(|x| self.domain.is_zero(x))
    }

    /// Coefficients over the inserted vectors expressing `v`, if it lies in the span.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert!(self.track, "express needs combination tracking");
        let (r, combo) = self.reduce(v);
        r.iter().all(|x| self.domain.is_zero(x)).then_some(combo)
    }

    /// Inserts `v`. Returns `None` if it was independent, or the left
    /// dependency `v = sum_k c_k * inserted[k]` (tracking) / an empty vector.
    pub fn insert(&mut self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let d = self.domain.clone();
        let (mut r, mut combo) = self.reduce(v);
        let idx = self.inserted;
        self.inserted += 1;
        let Some(pivot) = r.iter().position(|x| !d.is_zero(x)) else {
            return Some(combo);
        };
        // new row = inv * (v - combo-part) where residual r = v - sum combo_k ins_k
        let inv = d.inv(&r[pivot]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = d.mul(&inv, x);
        }
        if self.track {
            combo.resize(self.inserted, d.zero());
            for c in combo.iter_mut() {
                *c = d.neg(c);
            }
            combo[idx] = d.one();
            for c in combo.iter_mut() {
                *c = d.mul(&inv, c);
            }
        }
        self.rows.push(Row { pivot, v: r, combo });
        None
    }

    /// Basis rows in reduced echelon form, sorted by pivot column.
    pub fn reduced_basis(&self) -> Vec<Vec<Scalar>> {
        let d = &self.domain;
        let mut rows: Vec<(usize, Vec<Scalar>)> = self.rows.iter().map(|r| (r.pivot, r.v.clone())).collect();
        rows.sort_by_key(|r| r.0);
        for i in 0..rows.len() {
            let (piv, pr) = rows[i].clone();
            for (j, row) in rows.iter_mut().enumerate() {
                if j == i {
                    continue;
                }
                let c = row.1[piv].clone();
                if !d.is_zero(&c) {
                    for (x, y) in row.1.iter_mut().zip(&pr) {
                        *x = d.sub(x, &d.mul(&c, y));
                    }
                }
            }
        }
        rows.into_iter().map(|r| r.1).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.pivot).collect();
        p.sort_unstable();
        p
    }
}

/// Basis of `{c : sum_k c_k * rows[k] = 0}`, in reduced echelon form.
pub fn left_kernel(domain: &Domain, rows: &[Vec<Scalar>], width: usize) -> Vec<Vec<Scalar>> {
    let mut span = LeftSpan::new(domain, width, true);
    let mut deps = LeftSpan::new(domain, rows.len(), false);
    for (i, r) in rows.iter().enumerate() {
        if let Some(mut c) = span.insert(r) {
            // r_i - sum c_k r_k = 0
            for x in c.iter_mut() {
                *x = domain.neg(x);
            }
            c.resize(rows.len(), domain.zero());
            c[i] = domain.one();
            deps.insert(&c);
        }
    }
    deps.reduced_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn express_over_quaternions_uses_left_coefficients() {
        let d = Domain::quaternion();
        let p = |s: &str| d.parse(s).unwrap();
        let v1 = vec![p("1"), p("i")];
        let v2 = vec![p("j"), p("0")];
        let mut s = LeftSpan::new(&d, 2, true);
        assert!(s.insert(&v1).is_none());
        assert!(s.insert(&v2).is_none());
        let target: Vec<Scalar> = (0..2).map(|t| d.add(&d.mul(&p("k"), &v1[t]), &d.mul(&p("2"), &v2[t]))).collect();
        let c = s.express(&target).unwrap();
        assert_eq!(c, vec![p("k"), p("2")]);
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let d = Domain::prime(3).unwrap();
        let f = |x: u64| Scalar::Fp(x);
        let rows = vec![vec![f(1), f(2)], vec![f(2), f(1)], vec![f(0), f(1)]];
        let k = left_kernel(&d, &rows, 2);
        assert_eq!(k.len(), 1);
        for kv in &k {
            for col in 0..2 {
                let s = kv.iter().zip(&rows).fold(d.zero(), |acc, (c, row)| d.add(&acc, &d.mul(c, &row[col])));
                assert!(d.is_zero(&s));
            }
        }
    }
}
