//! Smith normal form over the integers.
//!
//! The working copy is dense; pivots are chosen with the smallest absolute
//! value, ties broken by the Markowitz count `(row weight - 1) * (col weight - 1)`
//! so that elimination creates as little fill-in as possible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::SparseIntMatrix;

/// Unimodular transforms with `u * m * v = diag`, plus their inverses.
#[derive(Clone, Debug)]
pub struct Transforms {
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
    pub transforms: Option<Transforms>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    t: Option<Transforms>,
}

impl Work {
    fn nrows(&self) -> usize {
        self.a.len()
    }

    fn ncols(&self) -> usize {
        self.a.first().map_or(0, |r| r.len())
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some(t) = &mut self.t {
            t.u.swap(i, k);
            for row in &mut t.u_inv {
                row.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in &mut self.a {
            row.swap(j, k);
        }
        if let Some(t) = &mut self.t {
            for row in &mut t.v {
                row.swap(j, k);
            }
            t.v_inv.swap(j, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(t) = &mut self.t {
            for x in &mut t.u[i] {
                *x = -&*x;
            }
            for row in &mut t.u_inv {
                row[i] = -&row[i];
            }
        }
    }

    /// row_i -= q * row_k
    fn row_axpy(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let src = self.a[k].clone();
        for (x, s) in self.a[i].iter_mut().zip(&src) {
            if !s.is_zero() {
                *x -= q * s;
            }
        }
        if let Some(t) = &mut self.t {
            let src = t.u[k].clone();
            for (x, s) in t.u[i].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x -= q * s;
                }
            }
            for row in &mut t.u_inv {
                let add = q * &row[i];
                row[k] += add;
            }
        }
    }

    /// col_j -= q * col_k
    fn col_axpy(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.a {
            if !row[k].is_zero() {
                let sub = q * &row[k];
                row[j] -= sub;
            }
        }
        if let Some(t) = &mut self.t {
            for row in &mut t.v {
                if !row[k].is_zero() {
                    let sub = q * &row[k];
                    row[j] -= sub;
                }
            }
            let src = t.v_inv[j].clone();
            for (x, s) in t.v_inv[k].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x += q * s;
                }
            }
        }
    }

    fn choose_pivot(&self, start: usize) -> Option<(usize, usize)> {
        let (m, n) = (self.nrows(), self.ncols());
        let mut row_w = vec![0usize; m];
        let mut col_w = vec![0usize; n];
        for i in start..m {
            for j in start..n {
                if !self.a[i][j].is_zero() {
                    row_w[i] += 1;
                    col_w[j] += 1;
                }
            }
        }
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for i in start..m {
            if row_w[i] == 0 {
                continue;
            }
            for j in start..n {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                let cost = (row_w[i] - 1) * (col_w[j] - 1);
                let better = match &best {
                    None => true,
                    Some((b, c, _, _)) => abs < *b || (abs == *b && cost < *c),
                };
                if better {
                    best = Some((abs, cost, i, j));
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    /// Clears row `t` and column `t` outside the diagonal, assuming `a[t][t] != 0`.
    fn eliminate(&mut self, t: usize) {
        let (m, n) = (self.nrows(), self.ncols());
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = self.a[i][t].div_floor(&self.a[t][t]);
                self.row_axpy(i, t, &q);
                if !self.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = self.a[t][j].div_floor(&self.a[t][t]);
                self.col_axpy(j, t, &q);
                if !self.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // A remainder smaller than the pivot survived; move the smallest
            // one onto the diagonal and sweep again.
            let mut best: Option<(BigInt, bool, usize)> = None;
            for i in t + 1..m {
                let v = &self.a[i][t];
                if !v.is_zero() && best.as_ref().map_or(true, |(b, _, _)| v.abs() < *b) {
                    best = Some((v.abs(), true, i));
                }
            }
            for j in t + 1..n {
                let v = &self.a[t][j];
                if !v.is_zero() && best.as_ref().map_or(true, |(b, _, _)| v.abs() < *b) {
                    best = Some((v.abs(), false, j));
                }
            }
            if let Some((b, is_row, k)) = best {
                if b < self.a[t][t].abs() {
                    if is_row {
                        self.swap_rows(t, k);
                    } else {
                        self.swap_cols(t, k);
                    }
                }
            }
        }
    }
}

/// Computes the Smith normal form; with `with_transforms` the unimodular
/// matrices `u`, `v` (and inverses) satisfying `u * m * v = diag` are kept.
pub fn smith_normal_form(m: &SparseIntMatrix, with_transforms: bool) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_dense(),
        t: with_transforms.then(|| Transforms {
            u: identity(rows),
            u_inv: identity(rows),
            v: identity(cols),
            v_inv: identity(cols),
        }),
    };
    let mut rank = 0;
    while rank < rows.min(cols) {
        let Some((pi, pj)) = w.choose_pivot(rank) else { break };
        w.swap_rows(rank, pi);
        w.swap_cols(rank, pj);
        w.eliminate(rank);
        rank += 1;
    }
    // Divisibility chain: replace (d_i, d_j) by (gcd, lcm) until it holds.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..rank {
            for j in i + 1..rank {
                if w.a[j][j].is_multiple_of(&w.a[i][i]) {
                    continue;
                }
                // col_i += col_j brings d_j into row j of column i.
                w.col_axpy(i, j, &BigInt::from(-1));
                w.eliminate(i);
                changed = true;
            }
        }
    }
    for i in 0..rank {
        if w.a[i][i].is_negative() {
            w.negate_row(i);
        }
    }
    let diagonal = (0..rank).map(|i| w.a[i][i].clone()).collect();
    Smith {
        diagonal,
        rows,
        cols,
        transforms: w.t,
    }
}

pub fn rank(m: &SparseIntMatrix) -> usize {
    smith_normal_form(m, false).rank()
}

pub(crate) fn dense_mul_vec(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &[Vec<BigInt>]) -> SparseIntMatrix {
        let cols = m.first().map_or(0, |r| r.len());
        SparseIntMatrix::from_dense_big(m.len(), cols, m)
    }

    fn check_transforms(m: &SparseIntMatrix) -> Smith {
        let s = smith_normal_form(m, true);
        let t = s.transforms.as_ref().unwrap();
        let prod = dense(&t.u).mul(m).mul(&dense(&t.v));
        let mut diag = SparseIntMatrix::zeros(m.rows(), m.cols());
        for (i, d) in s.diagonal.iter().enumerate() {
            diag.set(i, i, d.clone());
        }
        assert_eq!(prod, diag);
        assert_eq!(dense(&t.u).mul(&dense(&t.u_inv)), SparseIntMatrix::identity(m.rows()));
        assert_eq!(dense(&t.v).mul(&dense(&t.v_inv)), SparseIntMatrix::identity(m.cols()));
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn single_entry() {
        let s = check_transforms(&SparseIntMatrix::from_dense(&[vec![2]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2)]);
    }

    #[test]
    fn zero_row_and_column() {
        let s = check_transforms(&SparseIntMatrix::from_dense(&[vec![1, 0], vec![0, 0]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1)]);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn gcd_lcm_repair() {
        let s = check_transforms(&SparseIntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let s = check_transforms(&SparseIntMatrix::from_dense(&[
            vec![4, 0, 0],
            vec![0, 6, 0],
            vec![0, 0, 10],
        ]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(2), BigInt::from(60)]);
    }

    #[test]
    fn empty_matrices() {
        let s = check_transforms(&SparseIntMatrix::zeros(0, 3));
        assert!(s.diagonal.is_empty());
        let s = check_transforms(&SparseIntMatrix::zeros(2, 0));
        assert!(s.diagonal.is_empty());
    }
}
