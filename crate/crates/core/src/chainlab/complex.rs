use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::SparseIntMatrix;
use super::qlinalg::{QMatrix, Rat};
use super::snf::{dense_mul_vec, smith_normal_form};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Int,
    Rat,
}

/// A bounded chain complex of finitely generated free modules with integer
/// differentials. Degrees outside the stored window are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is the differential out of degree `lo + k`.
    diffs: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    /// `ranks[k]` is the rank in degree `lo + k`; `diffs[k]` maps degree
    /// `lo + k` to degree `lo + k - 1` (so `diffs[0]` must have zero rows).
    pub fn new(ring: Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<SparseIntMatrix>) -> Result<Self> {
        if ranks.len() != diffs.len() {
            return Err(Error::Dimension(format!(
                "{} ranks but {} differentials",
                ranks.len(),
                diffs.len()
            )));
        }
        let c = ChainComplex { ring, lo, ranks, diffs };
        for m in c.degrees() {
            let d = &c.diffs[(m - lo) as usize];
            if d.cols() != c.rank(m) || d.rows() != c.rank(m - 1) {
                return Err(Error::Dimension(format!(
                    "d_{m} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    c.rank(m - 1),
                    c.rank(m)
                )));
            }
        }
        for m in c.degrees() {
            if !c.d(m - 1).mul(&c.d(m)).is_zero() {
                return Err(Error::NotAComplex(format!("d_{} * d_{} != 0", m - 1, m)));
            }
        }
        Ok(c)
    }

    /// Builds a complex from `(degree, rank)` data and differentials keyed by
    /// source degree; missing differentials are zero.
    pub fn from_parts(ring: Ring, lo: i64, ranks: Vec<usize>, mut d: impl FnMut(i64) -> Option<SparseIntMatrix>) -> Result<Self> {
        let mut diffs = Vec::with_capacity(ranks.len());
        for (k, &r) in ranks.iter().enumerate() {
            let m = lo + k as i64;
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            diffs.push(d(m).unwrap_or_else(|| SparseIntMatrix::zeros(below, r)));
        }
        Self::new(ring, lo, ranks, diffs)
    }

    pub fn zero(ring: Ring) -> Self {
        ChainComplex { ring, lo: 0, ranks: vec![], diffs: vec![] }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, m: i64) -> usize {
        if m < self.lo || m > self.hi() {
            0
        } else {
            self.ranks[(m - self.lo) as usize]
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// The differential out of degree `m`.
    pub fn d(&self, m: i64) -> SparseIntMatrix {
        if m < self.lo || m > self.hi() {
            SparseIntMatrix::zeros(self.rank(m - 1), self.rank(m))
        } else {
            self.diffs[(m - self.lo) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|m| if m.rem_euclid(2) == 0 { self.rank(m) as i64 } else { -(self.rank(m) as i64) })
            .sum()
    }

    /// Homology in degree `m`; torsion is reported only over the integers.
    pub fn homology(&self, m: i64) -> HomologyGroup {
        let out = smith_normal_form(&self.d(m), false);
        let inc = smith_normal_form(&self.d(m + 1), false);
        let betti = self.rank(m) - out.rank() - inc.rank();
        let torsion = match self.ring {
            Ring::Int => inc.torsion(),
            Ring::Rat => vec![],
        };
        HomologyGroup { degree: m, betti, torsion }
    }

    pub fn homology_all(&self) -> Vec<HomologyGroup> {
        self.degrees().map(|m| self.homology(m)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|m| self.homology(m).is_zero())
    }

    /// Shifts degrees: the result has `C'_{m} = C_{m + by}`, with the
    /// differential multiplied by `(-1)^by`.
    pub fn shift(&self, by: i64) -> ChainComplex {
        let sign = if by.rem_euclid(2) == 0 { BigInt::one() } else { BigInt::from(-1) };
        ChainComplex {
            ring: self.ring,
            lo: self.lo - by,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        if self.ranks.is_empty() {
            return other.clone();
        }
        if other.ranks.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|m| self.rank(m) + other.rank(m)).collect();
        let diffs = (lo..=hi)
            .map(|m| {
                let mut d = SparseIntMatrix::zeros(self.rank(m - 1) + other.rank(m - 1), self.rank(m) + other.rank(m));
                d.put_block(0, 0, &self.d(m));
                d.put_block(self.rank(m - 1), self.rank(m), &other.d(m));
                d
            })
            .collect();
        ChainComplex { ring: self.ring, lo, ranks, diffs }
    }

    /// Integral homology of degree `m` with the data needed to name classes.
    pub fn homology_basis(&self, m: i64) -> HomologyBasis {
        HomologyBasis::new(self, m)
    }
}

/// A chain map, one integer matrix per degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    lo: i64,
    mats: Vec<SparseIntMatrix>,
    src_ranks: Vec<usize>,
    dst_ranks: Vec<usize>,
}

impl ChainMap {
    /// Builds `f: src -> dst` from a per-degree matrix function and checks `d f = f d`.
    pub fn new(src: &ChainComplex, dst: &ChainComplex, mut f: impl FnMut(i64) -> SparseIntMatrix) -> Result<Self> {
        let map = Self::new_unchecked(src, dst, &mut f)?;
        map.check(src, dst)?;
        Ok(map)
    }

    pub fn new_unchecked(src: &ChainComplex, dst: &ChainComplex, mut f: impl FnMut(i64) -> SparseIntMatrix) -> Result<Self> {
        let (lo, hi) = span(src, dst);
        let mut mats = Vec::new();
        for m in lo..=hi {
            let a = f(m);
            if a.rows() != dst.rank(m) || a.cols() != src.rank(m) {
                return Err(Error::Dimension(format!(
                    "map in degree {m} is {}x{}, expected {}x{}",
                    a.rows(),
                    a.cols(),
                    dst.rank(m),
                    src.rank(m)
                )));
            }
            mats.push(a);
        }
        Ok(ChainMap {
            lo,
            mats,
            src_ranks: (lo..=hi).map(|m| src.rank(m)).collect(),
            dst_ranks: (lo..=hi).map(|m| dst.rank(m)).collect(),
        })
    }

    pub fn zero(src: &ChainComplex, dst: &ChainComplex) -> Self {
        Self::new_unchecked(src, dst, |m| SparseIntMatrix::zeros(dst.rank(m), src.rank(m))).expect("shapes agree")
    }

    pub fn identity(c: &ChainComplex) -> Self {
        Self::new_unchecked(c, c, |m| SparseIntMatrix::identity(c.rank(m))).expect("shapes agree")
    }

    pub fn at(&self, m: i64) -> SparseIntMatrix {
        let k = m - self.lo;
        if k < 0 || k as usize >= self.mats.len() {
            SparseIntMatrix::zeros(0, 0)
        } else {
            self.mats[k as usize].clone()
        }
    }

    /// The matrix in degree `m` with explicit shape (zero outside the window).
    pub fn at_shaped(&self, m: i64, rows: usize, cols: usize) -> SparseIntMatrix {
        let a = self.at(m);
        if a.rows() == rows && a.cols() == cols {
            a
        } else {
            SparseIntMatrix::zeros(rows, cols)
        }
    }

    pub fn check(&self, src: &ChainComplex, dst: &ChainComplex) -> Result<()> {
        let (lo, hi) = span(src, dst);
        for m in lo..=hi + 1 {
            let f_m = self.at_shaped(m, dst.rank(m), src.rank(m));
            let f_m1 = self.at_shaped(m - 1, dst.rank(m - 1), src.rank(m - 1));
            if dst.d(m).mul(&f_m) != f_m1.mul(&src.d(m)) {
                return Err(Error::NotAChainMap(format!("d f != f d in degree {m}")));
            }
        }
        Ok(())
    }

    pub fn compose(&self, first: &ChainMap, src: &ChainComplex, mid: &ChainComplex, dst: &ChainComplex) -> Result<ChainMap> {
        Self::new_unchecked(src, dst, |m| {
            self.at_shaped(m, dst.rank(m), mid.rank(m))
                .mul(&first.at_shaped(m, mid.rank(m), src.rank(m)))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(SparseIntMatrix::is_zero)
    }

    pub fn source_rank(&self, m: i64) -> usize {
        let k = m - self.lo;
        if k < 0 || k as usize >= self.src_ranks.len() { 0 } else { self.src_ranks[k as usize] }
    }

    pub fn target_rank(&self, m: i64) -> usize {
        let k = m - self.lo;
        if k < 0 || k as usize >= self.dst_ranks.len() { 0 } else { self.dst_ranks[k as usize] }
    }
}

fn span(a: &ChainComplex, b: &ChainComplex) -> (i64, i64) {
    match (a.ranks.is_empty(), b.ranks.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo, b.hi()),
        (false, true) => (a.lo, a.hi()),
        (false, false) => (a.lo.min(b.lo), a.hi().max(b.hi())),
    }
}

/// One homology group: free rank plus torsion coefficients `t_1 | t_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub betti: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(degree: i64, betti: usize) -> Self {
        HomologyGroup { degree, betti, torsion: vec![] }
    }

    pub fn new(degree: i64, betti: usize, torsion: &[u64]) -> Self {
        HomologyGroup {
            degree,
            betti,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Same group, ignoring the degree label.
    pub fn same_group(&self, other: &HomologyGroup) -> bool {
        self.betti == other.betti && self.torsion == other.torsion
    }

    pub fn rationalized(&self) -> HomologyGroup {
        HomologyGroup::free(self.degree, self.betti)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            match i64::try_from(x) {
                Ok(n) => seq.serialize_element(&n)?,
                Err(_) => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom("non-integer torsion")),
                serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
                _ => Err(serde::de::Error::custom("torsion must be integers")),
            })
            .collect()
    }
}

/// Coordinates of a homology class: residues on the torsion summands and
/// integer coordinates on the free summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoords {
    pub torsion: Vec<(BigInt, BigInt)>,
    pub free: Vec<BigInt>,
}

impl ClassCoords {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|(_, r)| r.is_zero()) && self.free.iter().all(Zero::is_zero)
    }
}

/// Presentation of `H_m(C)` as `Z^k / relations`, diagonalized, so that
/// cycles can be classified and generators written down.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: i64,
    dim: usize,
    out_rank: usize,
    v_inv: Vec<Vec<BigInt>>,
    kernel: Vec<Vec<BigInt>>,
    rel_u: Vec<Vec<BigInt>>,
    rel_u_inv: Vec<Vec<BigInt>>,
    invariants: Vec<BigInt>,
}

impl HomologyBasis {
    fn new(c: &ChainComplex, m: i64) -> Self {
        let n = c.rank(m);
        let out = smith_normal_form(&c.d(m), true);
        let t = out.transforms.expect("requested");
        let r = out.diagonal.len();
        // Kernel basis: the last n - r columns of V.
        let kernel: Vec<Vec<BigInt>> = (r..n).map(|j| t.v.iter().map(|row| row[j].clone()).collect()).collect();
        let k = kernel.len();
        // Boundaries expressed in kernel coordinates.
        let inc = c.d(m + 1);
        let mut rel_cols = Vec::with_capacity(inc.cols());
        for j in 0..inc.cols() {
            let y = dense_mul_vec(&t.v_inv, &inc.column(j));
            rel_cols.push(y[r..].to_vec());
        }
        let rel = SparseIntMatrix::from_columns(k, &rel_cols);
        let rs = smith_normal_form(&rel, true);
        let rt = rs.transforms.expect("requested");
        HomologyBasis {
            degree: m,
            dim: n,
            out_rank: r,
            v_inv: t.v_inv,
            kernel,
            rel_u: rt.u,
            rel_u_inv: rt.u_inv,
            invariants: rs.diagonal,
        }
    }

    pub fn betti(&self) -> usize {
        self.kernel.len() - self.invariants.len()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn group(&self) -> HomologyGroup {
        HomologyGroup { degree: self.degree, betti: self.betti(), torsion: self.torsion() }
    }

    fn kernel_coords(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.dim {
            return Err(Error::Dimension(format!("chain of length {} in a rank-{} module", z.len(), self.dim)));
        }
        let y = dense_mul_vec(&self.v_inv, z);
        if y[..self.out_rank].iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition(format!("chain is not a cycle in degree {}", self.degree)));
        }
        Ok(y[self.out_rank..].to_vec())
    }

    /// Classifies an integral cycle.
    pub fn classify(&self, z: &[BigInt]) -> Result<ClassCoords> {
        let w = dense_mul_vec(&self.rel_u, &self.kernel_coords(z)?);
        let s = self.invariants.len();
        let torsion = self
            .invariants
            .iter()
            .zip(&w)
            .filter(|(d, _)| !d.is_one())
            .map(|(d, x)| (d.clone(), x.mod_floor(d)))
            .collect();
        Ok(ClassCoords { torsion, free: w[s..].to_vec() })
    }

    /// Free coordinates of a rational cycle (torsion vanishes over the rationals).
    pub fn classify_rational(&self, z: &[Rat]) -> Result<Vec<Rat>> {
        if z.len() != self.dim {
            return Err(Error::Dimension(format!("chain of length {} in a rank-{} module", z.len(), self.dim)));
        }
        let vq = QMatrix { rows: self.dim, cols: self.dim, data: to_q(&self.v_inv) };
        let y = vq.mul_vec(z);
        if y[..self.out_rank].iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition(format!("chain is not a cycle in degree {}", self.degree)));
        }
        let k = self.kernel.len();
        let uq = QMatrix { rows: k, cols: k, data: to_q(&self.rel_u) };
        let w = uq.mul_vec(&y[self.out_rank..]);
        Ok(w[self.invariants.len()..].to_vec())
    }

    /// Cycles representing the free generators, in the order of `classify().free`.
    pub fn free_generators(&self) -> Vec<Vec<BigInt>> {
        let s = self.invariants.len();
        (s..self.kernel.len()).map(|i| self.generator(i)).collect()
    }

    /// Cycles representing the torsion generators, paired with their orders.
    pub fn torsion_generators(&self) -> Vec<(BigInt, Vec<BigInt>)> {
        self.invariants
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .map(|(i, d)| (d.clone(), self.generator(i)))
            .collect()
    }

    fn generator(&self, i: usize) -> Vec<BigInt> {
        // kernel coordinates = column i of U^{-1}
        let coords: Vec<BigInt> = self.rel_u_inv.iter().map(|row| row[i].clone()).collect();
        let mut z = vec![BigInt::zero(); self.dim];
        for (c, col) in coords.iter().zip(&self.kernel) {
            if c.is_zero() {
                continue;
            }
            for (zi, k) in z.iter_mut().zip(col) {
                *zi += c * k;
            }
        }
        z
    }

    /// Whether the free coordinates of a class are a primitive vector, i.e. the
    /// class generates a direct summand of the free part.
    pub fn is_primitive(coords: &ClassCoords) -> bool {
        let g = coords.free.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        g.abs().is_one()
    }
}

fn to_q(a: &[Vec<BigInt>]) -> Vec<Vec<Rat>> {
    a.iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> ChainComplex {
        ChainComplex::new(
            Ring::Int,
            0,
            vec![1, 2, 1],
            vec![
                SparseIntMatrix::zeros(0, 1),
                SparseIntMatrix::zeros(1, 2),
                SparseIntMatrix::zeros(2, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn torus_homology() {
        let t = torus();
        assert_eq!(t.homology(0), HomologyGroup::free(0, 1));
        assert_eq!(t.homology(1), HomologyGroup::free(1, 2));
        assert_eq!(t.homology(2), HomologyGroup::free(2, 1));
    }

    #[test]
    fn multiplication_by_two() {
        let c = ChainComplex::new(
            Ring::Int,
            0,
            vec![1, 1],
            vec![SparseIntMatrix::zeros(0, 1), SparseIntMatrix::from_dense(&[vec![2]])],
        )
        .unwrap();
        assert_eq!(c.homology(0), HomologyGroup::new(0, 0, &[2]));
        assert!(c.homology(1).is_zero());
        assert!(c.clone().with_ring(Ring::Rat).homology(0).is_zero());
        let hb = c.homology_basis(0);
        let cls = hb.classify(&[BigInt::from(3)]).unwrap();
        assert_eq!(cls.torsion, vec![(BigInt::from(2), BigInt::one())]);
    }

    #[test]
    fn rejects_non_complex() {
        let r = ChainComplex::new(
            Ring::Int,
            0,
            vec![1, 1, 1],
            vec![
                SparseIntMatrix::zeros(0, 1),
                SparseIntMatrix::from_dense(&[vec![1]]),
                SparseIntMatrix::from_dense(&[vec![1]]),
            ],
        );
        assert!(matches!(r, Err(Error::NotAComplex(_))));
    }

    #[test]
    fn classify_free_generator() {
        let t = torus();
        let hb = t.homology_basis(1);
        let gens = hb.free_generators();
        assert_eq!(gens.len(), 2);
        for (i, g) in gens.iter().enumerate() {
            let c = hb.classify(g).unwrap();
            let mut e = vec![BigInt::zero(); 2];
            e[i] = BigInt::one();
            assert_eq!(c.free, e);
        }
        assert!(hb.classify(&[BigInt::one()]).is_err());
    }
}
