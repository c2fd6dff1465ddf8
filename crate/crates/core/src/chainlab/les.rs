//! Mapping cones, short exact sequences and their long exact sequences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::{ChainComplex, ChainMap};
use super::matrix::SparseIntMatrix;
use super::qlinalg::{to_rat_vec, QMatrix, Rat};
use crate::error::{Error, Result};

/// Mapping cone of `f: a -> b`: `cone_m = b_m + a_{m-1}` with
/// `d(y, x) = (d y + f x, -d x)`.
pub fn cone(f: &ChainMap, a: &ChainComplex, b: &ChainComplex) -> Result<ChainComplex> {
    f.check(a, b)?;
    if a.is_zero() && b.is_zero() {
        return Ok(ChainComplex::zero(b.ring()));
    }
    let lo = if a.is_zero() { b.lo() } else if b.is_zero() { a.lo() + 1 } else { b.lo().min(a.lo() + 1) };
    let hi = if a.is_zero() { b.hi() } else if b.is_zero() { a.hi() + 1 } else { b.hi().max(a.hi() + 1) };
    let rk = |m: i64| b.rank(m) + a.rank(m - 1);
    let ranks: Vec<usize> = (lo..=hi).map(rk).collect();
    ChainComplex::from_parts(b.ring(), lo, ranks, |m| {
        let mut d = SparseIntMatrix::zeros(rk(m - 1), rk(m));
        d.put_block(0, 0, &b.d(m));
        d.put_block(0, b.rank(m), &f.at_shaped(m - 1, b.rank(m - 1), a.rank(m - 1)));
        d.put_block(b.rank(m - 1), b.rank(m), &a.d(m - 1).neg());
        Some(d)
    })
}

/// `0 -> a -i-> b -p-> c -> 0`, exact in every degree.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub a: ChainComplex,
    pub b: ChainComplex,
    pub c: ChainComplex,
    pub i: ChainMap,
    pub p: ChainMap,
}

impl ShortExactSequence {
    /// Checks that `i`, `p` are chain maps and the sequence is levelwise exact
    /// (ranks over the rationals, plus `p i = 0` exactly).
    pub fn new(a: ChainComplex, b: ChainComplex, c: ChainComplex, i: ChainMap, p: ChainMap) -> Result<Self> {
        i.check(&a, &b)?;
        p.check(&b, &c)?;
        let lo = a.lo().min(b.lo()).min(c.lo());
        let hi = a.hi().max(b.hi()).max(c.hi());
        for m in lo..=hi {
            let im = i.at_shaped(m, b.rank(m), a.rank(m));
            let pm = p.at_shaped(m, c.rank(m), b.rank(m));
            if !pm.mul(&im).is_zero() {
                return Err(Error::Inexact(format!("p i != 0 in degree {m}")));
            }
            let ri = QMatrix::from_int(&im).rank();
            let rp = QMatrix::from_int(&pm).rank();
            if ri != a.rank(m) {
                return Err(Error::Inexact(format!("i not injective in degree {m}")));
            }
            if rp != c.rank(m) {
                return Err(Error::Inexact(format!("p not surjective in degree {m}")));
            }
            if ri + rp != b.rank(m) {
                return Err(Error::Inexact(format!("ker p != im i in degree {m}")));
            }
        }
        Ok(ShortExactSequence { a, b, c, i, p })
    }

    /// The triple `b -> cone(f) -> a[-1]` for a chain map `f: a -> b`.
    pub fn from_cone(f: &ChainMap, a: &ChainComplex, b: &ChainComplex) -> Result<Self> {
        let cn = cone(f, a, b)?;
        let a_shift = a.shift(-1);
        let inc = ChainMap::new(b, &cn, |m| {
            let mut x = SparseIntMatrix::zeros(cn.rank(m), b.rank(m));
            x.put_block(0, 0, &SparseIntMatrix::identity(b.rank(m)));
            x
        })?;
        let proj = ChainMap::new(&cn, &a_shift, |m| {
            let mut x = SparseIntMatrix::zeros(a_shift.rank(m), cn.rank(m));
            x.put_block(0, b.rank(m), &SparseIntMatrix::identity(a.rank(m - 1)));
            x
        })?;
        Self::new(b.clone(), cn, a_shift, inc, proj)
    }

    /// Connecting homomorphism on a rational cycle `z` of `c` in degree `m`:
    /// lift to `b`, apply `d`, pull back to a cycle of `a` in degree `m - 1`.
    pub fn connecting(&self, m: i64, z: &[Rat]) -> Result<Vec<Rat>> {
        let pm = QMatrix::from_int(&self.p.at_shaped(m, self.c.rank(m), self.b.rank(m)));
        let lift = pm
            .solve(z)
            .ok_or_else(|| Error::Inexact(format!("cannot lift through p in degree {m}")))?;
        let db = QMatrix::from_int(&self.b.d(m)).mul_vec(&lift);
        let im = QMatrix::from_int(&self.i.at_shaped(m - 1, self.b.rank(m - 1), self.a.rank(m - 1)));
        im.solve(&db)
            .ok_or_else(|| Error::Inexact(format!("boundary of the lift is not in the image of i (degree {m}); is z a cycle?")))
    }

    /// Computes every homology group and map of the long exact sequence over
    /// the rationals and checks exactness at each spot.
    pub fn les_verify(&self) -> LesReport {
        let lo = self.a.lo().min(self.b.lo()).min(self.c.lo());
        let hi = self.a.hi().max(self.b.hi()).max(self.c.hi()) + 1;
        let ha = RatHomology::new(&self.a, lo - 1, hi);
        let hb = RatHomology::new(&self.b, lo - 1, hi);
        let hc = RatHomology::new(&self.c, lo - 1, hi);
        let mut spots = Vec::new();
        for m in (lo..=hi).rev() {
            let ri = induced_rank(&ha, &hb, m, |v| self.i.at_shaped(m, self.b.rank(m), self.a.rank(m)).mul_vec_q(v));
            let rp = induced_rank(&hb, &hc, m, |v| self.p.at_shaped(m, self.c.rank(m), self.b.rank(m)).mul_vec_q(v));
            let rd = self.delta_rank(&hc, &ha, m);
            let ri_below = induced_rank(&ha, &hb, m - 1, |v| {
                self.i.at_shaped(m - 1, self.b.rank(m - 1), self.a.rank(m - 1)).mul_vec_q(v)
            });
            spots.push(LesSpot::new("H(B)", m, hb.dim(m), ri, rp));
            spots.push(LesSpot::new("H(C)", m, hc.dim(m), rp, rd.unwrap_or(usize::MAX)));
            spots.push(LesSpot::new("H(A)", m - 1, ha.dim(m - 1), rd.unwrap_or(usize::MAX), ri_below));
        }
        LesReport { spots }
    }

    fn delta_rank(&self, hc: &RatHomology, ha: &RatHomology, m: i64) -> Option<usize> {
        let mut imgs = Vec::new();
        for z in hc.cycles(m) {
            imgs.push(self.connecting(m, z).ok()?);
        }
        Some(image_rank(ha, m - 1, imgs))
    }
}

trait MulVecQ {
    fn mul_vec_q(&self, v: &[Rat]) -> Vec<Rat>;
}

impl MulVecQ for SparseIntMatrix {
    fn mul_vec_q(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows())
            .map(|i| {
                self.row(i)
                    .iter()
                    .fold(Rat::zero(), |acc, (j, a)| acc + Rat::from_integer(a.clone()) * &v[*j])
            })
            .collect()
    }
}

/// Cycle and boundary bases per degree over the rationals.
struct RatHomology {
    lo: i64,
    ranks: Vec<usize>,
    cycles: Vec<Vec<Vec<Rat>>>,
    bounds: Vec<Vec<Vec<Rat>>>,
    bound_rank: Vec<usize>,
}

impl RatHomology {
    fn new(c: &ChainComplex, lo: i64, hi: i64) -> Self {
        let mut h = RatHomology { lo, ranks: vec![], cycles: vec![], bounds: vec![], bound_rank: vec![] };
        for m in lo..=hi {
            let n = c.rank(m);
            h.ranks.push(n);
            h.cycles.push(QMatrix::from_int(&c.d(m)).kernel());
            let dn = c.d(m + 1);
            let bounds: Vec<Vec<Rat>> = (0..dn.cols()).map(|j| to_rat_vec(&dn.column(j))).collect();
            h.bound_rank.push(QMatrix::from_int(&dn).rank());
            h.bounds.push(bounds);
        }
        h
    }

    fn idx(&self, m: i64) -> Option<usize> {
        let k = m - self.lo;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    fn dim(&self, m: i64) -> usize {
        self.idx(m).map_or(0, |k| self.cycles[k].len() - self.bound_rank[k])
    }

    fn cycles(&self, m: i64) -> &[Vec<Rat>] {
        self.idx(m).map_or(&[], |k| &self.cycles[k])
    }
}

fn image_rank(h: &RatHomology, m: i64, imgs: Vec<Vec<Rat>>) -> usize {
    let Some(k) = h.idx(m) else { return 0 };
    let n = h.ranks[k];
    if n == 0 {
        return 0;
    }
    let mut all = h.bounds[k].clone();
    all.extend(imgs);
    QMatrix::from_columns(n, &all).rank() - h.bound_rank[k]
}

fn induced_rank(src: &RatHomology, dst: &RatHomology, m: i64, f: impl Fn(&[Rat]) -> Vec<Rat>) -> usize {
    let imgs = src.cycles(m).iter().map(|z| f(z)).collect();
    image_rank(dst, m, imgs)
}

/// Exactness data at one term: `dim = rank(incoming) + rank(outgoing)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesSpot {
    pub label: &'static str,
    pub degree: i64,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

impl LesSpot {
    fn new(label: &'static str, degree: i64, dim: usize, rank_in: usize, rank_out: usize) -> Self {
        let exact = rank_in != usize::MAX && rank_out != usize::MAX && dim == rank_in + rank_out;
        LesSpot { label, degree, dim, rank_in, rank_out, exact }
    }
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub spots: Vec<LesSpot>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.spots.iter().all(|s| s.exact)
    }

    pub fn first_failure(&self) -> Option<&LesSpot> {
        self.spots.iter().find(|s| !s.exact)
    }

    pub fn into_result(self) -> Result<Self> {
        match self.first_failure() {
            Some(s) => Err(Error::Inexact(format!(
                "at {}_{}: dim {} but incoming rank {} and outgoing rank {}",
                s.label, s.degree, s.dim, s.rank_in, s.rank_out
            ))),
            None => Ok(self),
        }
    }
}

/// Integer vector helper: the standard basis vector `e_k` of length `n`.
pub fn basis_vector(n: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[k] = BigInt::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainlab::complex::{HomologyGroup, Ring};

    fn circle() -> ChainComplex {
        ChainComplex::new(
            Ring::Int,
            0,
            vec![1, 1],
            vec![SparseIntMatrix::zeros(0, 1), SparseIntMatrix::zeros(1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = circle();
        let id = ChainMap::identity(&c);
        let cn = cone(&id, &c, &c).unwrap();
        assert!(cn.is_acyclic());
    }

    #[test]
    fn cone_of_zero_splits() {
        let c = circle();
        let z = ChainMap::zero(&c, &c);
        let cn = cone(&z, &c, &c).unwrap();
        assert_eq!(cn.homology(0), HomologyGroup::free(0, 1));
        assert_eq!(cn.homology(1), HomologyGroup::free(1, 2));
        assert_eq!(cn.homology(2), HomologyGroup::free(2, 1));
        let ses = ShortExactSequence::from_cone(&z, &c, &c).unwrap();
        assert!(ses.les_verify().is_exact());
    }

    #[test]
    fn times_two_les() {
        let c = circle();
        let two = ChainMap::new(&c, &c, |m| SparseIntMatrix::identity(c.rank(m)).scale(&BigInt::from(2))).unwrap();
        let ses = ShortExactSequence::from_cone(&two, &c, &c).unwrap();
        let rep = ses.les_verify().into_result().unwrap();
        assert!(rep.is_exact());
        let cn = cone(&two, &c, &c).unwrap();
        assert_eq!(cn.homology(0), HomologyGroup::new(0, 0, &[2]));
    }
}
