use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer matrix stored row-wise, keeping only nonzero entries.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_dense_big(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, r) in dense.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].insert(j, v.clone());
                }
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].insert(j, v.clone());
                }
            }
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, BigInt)]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triplets {
            if *i >= rows || *j >= cols {
                return Err(Error::Dimension(format!(
                    "entry ({i},{j}) outside a {rows}x{cols} matrix"
                )));
            }
            let cur = m.get(*i, *j) + v;
            m.set(*i, *j, cur);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i].get(&j).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        let cur = self.get(i, j) + v;
        self.set(i, j, cur);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, BigInt> {
        &self.data[i]
    }

    /// Iterates `(row, col, value)` over the stored entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.triplets() {
            t.data[j].insert(i, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(BigInt::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().map(|(j, a)| a * &v[*j]).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, j, v) in other.triplets() {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            for v in row.values_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for (i, j, v) in block.triplets() {
            self.set(r0 + i, c0 + j, v.clone());
        }
    }

    /// Extracts rows `r0..r1` and columns `c0..c1`.
    pub fn sub_block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for (j, v) in self.data[i].range(c0..c1) {
                out.data[i - r0].insert(j - c0, v.clone());
            }
        }
        out
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (new, &old) in perm.iter().enumerate() {
            out.data[new] = self.data[old].clone();
        }
        out
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        self.transpose().permute_rows(perm).transpose()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.triplets()
            .map(|(_, _, v)| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseIntMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let strs: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", strs.join(", "))?;
            }
        } else {
            writeln!(f, "  {} nonzeros", self.nnz())?;
        }
        write!(f, "]")
    }
}

/// Writes the matrix in coordinate (matrix-market style) text form.
pub fn write_matrix_market(m: &SparseIntMatrix) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
    out.push_str(&format!("{} {} {}\n", m.rows(), m.cols(), m.nnz()));
    for (i, j, v) in m.triplets() {
        out.push_str(&format!("{} {} {}\n", i + 1, j + 1, v));
    }
    out
}

/// Parses the coordinate text form produced by [`write_matrix_market`].
/// Indices are 1-based; `%` lines are comments; repeated entries are summed.
pub fn read_matrix_market(text: &str) -> Result<SparseIntMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('%'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing matrix header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse(format!("bad header '{header}': {e}")))?;
    if dims.len() != 3 {
        return Err(Error::Parse(format!("header needs 'rows cols nnz', got '{header}'")));
    }
    let mut trips = Vec::with_capacity(dims[2]);
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::Parse(format!("bad triplet line '{line}'")));
        }
        let i: usize = toks[0].parse().map_err(|_| Error::Parse(format!("bad row in '{line}'")))?;
        let j: usize = toks[1].parse().map_err(|_| Error::Parse(format!("bad col in '{line}'")))?;
        let v: BigInt = toks[2].parse().map_err(|_| Error::Parse(format!("bad value in '{line}'")))?;
        if i == 0 || j == 0 {
            return Err(Error::Parse("matrix indices are 1-based".into()));
        }
        trips.push((i - 1, j - 1, v));
    }
    if trips.len() != dims[2] {
        return Err(Error::Parse(format!(
            "header announces {} entries, found {}",
            dims[2],
            trips.len()
        )));
    }
    SparseIntMatrix::from_triplets(dims[0], dims[1], &trips)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2], vec![0, 3]]);
        let b = SparseIntMatrix::from_dense(&[vec![4], vec![5]]);
        assert_eq!(a.mul(&b), SparseIntMatrix::from_dense(&[vec![14], vec![15]]));
        assert_eq!(a.transpose().get(1, 0), BigInt::from(2));
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn zeros_are_not_stored() {
        let mut a = SparseIntMatrix::zeros(2, 2);
        a.set(0, 0, BigInt::from(3));
        a.add_to(0, 0, &BigInt::from(-3));
        assert_eq!(a.nnz(), 0);
    }

    #[test]
    fn matrix_market_round_trip() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 0, -7], vec![0, 0, 2]]);
        let text = write_matrix_market(&a);
        assert_eq!(read_matrix_market(&text).unwrap(), a);
        assert!(read_matrix_market("2 2 1\n3 1 4\n").is_err());
        assert!(read_matrix_market("2 2 2\n1 1 4\n").is_err());
    }
}
