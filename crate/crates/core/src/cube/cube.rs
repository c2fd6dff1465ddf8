//! Cubes of chain complexes, their total complexes and strict iterated fibers.
//!
//! Subsets of `{0..d-1}` are bit masks.

use num_bigint::BigInt;

use super::functor::AugChainFunctor;
use crate::chainlab::snf::smith_normal_form;
use crate::chainlab::{ChainComplex, ChainMap, Ring, SparseIntMatrix};
use crate::error::{Error, Result};

pub(crate) fn size(s: usize) -> usize {
    s.count_ones() as usize
}

/// `|{x ∈ S : x < i}|`
pub(crate) fn pos(i: usize, s: usize) -> usize {
    size(s & ((1 << i) - 1))
}

fn sign(e: usize) -> BigInt {
    BigInt::from(if e % 2 == 0 { 1 } else { -1 })
}

/// Face index of the edge `S → S ∪ {i}`: `k = i - |S_i|`.
pub fn edge_index(s: usize, i: usize) -> usize {
    i - pos(i, s)
}

pub fn mask_elements(s: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| s >> i & 1 == 1).collect()
}

#[derive(Clone, Debug)]
pub struct Cube {
    pub dirs: usize,
    /// `objects[S]`
    pub objects: Vec<ChainComplex>,
    /// `edges[S][i]` for `i ∉ S`
    edges: Vec<Vec<Option<ChainMap>>>,
    /// `(j, n)` when extracted from a functor.
    pub origin: Option<(i64, i64)>,
}

impl Cube {
    /// Checks every edge is a chain map and every square commutes.
    pub fn new(dirs: usize, objects: Vec<ChainComplex>, mut edge: impl FnMut(usize, usize) -> Result<ChainMap>) -> Result<Self> {
        if objects.len() != 1 << dirs {
            return Err(Error::Dimension(format!("{} objects for a {dirs}-cube", objects.len())));
        }
        let mut edges = vec![vec![None; dirs]; 1 << dirs];
        for s in 0..1usize << dirs {
            for i in (0..dirs).filter(|i| s >> i & 1 == 0) {
                let e = edge(s, i)?;
                e.check(&objects[s], &objects[s | 1 << i])?;
                edges[s][i] = Some(e);
            }
        }
        let q = Cube { dirs, objects, edges, origin: None };
        q.check_squares(|s, i| edge_index(s, i))?;
        Ok(q)
    }

    pub fn edge(&self, s: usize, i: usize) -> &ChainMap {
        self.edges[s][i].as_ref().expect("edge out of S along i ∉ S")
    }

    pub fn edge_at(&self, s: usize, i: usize, m: i64) -> SparseIntMatrix {
        let (a, b) = (&self.objects[s], &self.objects[s | 1 << i]);
        self.edge(s, i).at_shaped(m, b.rank(m), a.rank(m))
    }

    pub fn degrees(&self) -> (i64, i64) {
        super::functor::window(&self.objects.iter().collect::<Vec<_>>())
    }

    fn check_squares(&self, index: impl Fn(usize, usize) -> usize) -> Result<()> {
        let (lo, hi) = self.degrees();
        for s in 0..1usize << self.dirs {
            for i1 in (0..self.dirs).filter(|i| s >> i & 1 == 0) {
                for i2 in (i1 + 1..self.dirs).filter(|i| s >> i & 1 == 0) {
                    let (s1, s2) = (s | 1 << i1, s | 1 << i2);
                    for m in lo..=hi {
                        let a = self.edge_at(s1, i2, m).mul(&self.edge_at(s, i1, m));
                        let b = self.edge_at(s2, i1, m).mul(&self.edge_at(s, i2, m));
                        if a != b {
                            let ks = (index(s, i1), index(s, i2), index(s1, i2), index(s2, i1));
                            return Err(Error::Identity(format!(
                                "square at S = {:?}, i1 = {i1}, i2 = {i2} does not commute in degree {m} (k1, k2, k3, k4) = {ks:?}",
                                mask_elements(s)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `F^j_n(S) = F(n - |S|)` on subsets of `{0..j}`, edges `F(∂_k)`, `k = i - |S_i|`.
pub fn build_cube(f: &AugChainFunctor, j: i64, n: i64) -> Result<Cube> {
    if j < -1 || j > n || n > f.top as i64 {
        return Err(Error::Precondition(format!("need -1 <= j <= n <= {}, got j = {j}, n = {n}", f.top)));
    }
    let dirs = (j + 1) as usize;
    let objects = (0..1usize << dirs).map(|s| f.obj(n - size(s) as i64).clone()).collect();
    let mut q = Cube::new(dirs, objects, |s, i| Ok(f.face((n - size(s) as i64) as usize, edge_index(s, i)).clone()))?;
    q.origin = Some((j, n));
    Ok(q)
}

/// Restriction along the last direction `t`: `which = 1` keeps `S ∌ t`,
/// `which = 2` takes `S ↦ S ∪ {t}`.
pub fn restrict_tau(q: &Cube, which: u8) -> Result<Cube> {
    if q.dirs == 0 {
        return Err(Error::Dimension("cannot restrict a 0-cube".into()));
    }
    let d = q.dirs - 1;
    let add = match which {
        1 => 0,
        2 => 1 << d,
        _ => return Err(Error::Precondition(format!("restriction {which} is neither 1 nor 2"))),
    };
    let objects = (0..1usize << d).map(|s| q.objects[s | add].clone()).collect();
    let mut r = Cube::new(d, objects, |s, i| Ok(q.edge(s | add, i).clone()))?;
    r.origin = q.origin.map(|(j, n)| (j - 1, if which == 1 { n } else { n - 1 }));
    Ok(r)
}

/// A total complex of a cube, with component `S` of total degree `m` sitting
/// in chain degree `m + shift[S]`.
#[derive(Clone, Debug)]
pub struct Total {
    pub complex: ChainComplex,
    pub shift: Vec<i64>,
    ranks: Vec<ChainComplex>,
}

impl Total {
    pub fn offset(&self, m: i64, s: usize) -> usize {
        (0..s).map(|t| self.ranks[t].rank(m + self.shift[t])).sum()
    }

    pub fn component_rank(&self, m: i64, s: usize) -> usize {
        self.ranks[s].rank(m + self.shift[s])
    }
}

fn total(q: &Cube, shift: impl Fn(usize) -> i64, sign_d: impl Fn(usize) -> BigInt, sign_e: impl Fn(usize, usize) -> BigInt) -> Result<Total> {
    let n = 1usize << q.dirs;
    let shift: Vec<i64> = (0..n).map(&shift).collect();
    let mut t = Total { complex: ChainComplex::zero(Ring::Int), shift, ranks: q.objects.clone() };
    let nonempty: Vec<usize> = (0..n).filter(|&s| q.objects[s].hi() >= q.objects[s].lo()).collect();
    if nonempty.is_empty() {
        return Ok(t);
    }
    let lo = nonempty.iter().map(|&s| q.objects[s].lo() - t.shift[s]).min().unwrap();
    let hi = nonempty.iter().map(|&s| q.objects[s].hi() - t.shift[s]).max().unwrap();
    let rk = |t: &Total, m: i64| (0..n).map(|s| t.component_rank(m, s)).sum::<usize>();
    let ranks = (lo..=hi).map(|m| rk(&t, m)).collect();
    let complex = ChainComplex::from_parts(Ring::Int, lo, ranks, |m| {
        let mut d = SparseIntMatrix::zeros(rk(&t, m - 1), rk(&t, m));
        for s in 0..n {
            let c = m + t.shift[s];
            let col = t.offset(m, s);
            d.put_block(t.offset(m - 1, s), col, &q.objects[s].d(c).scale(&sign_d(s)));
            for i in (0..q.dirs).filter(|i| s >> i & 1 == 0) {
                let u = s | 1 << i;
                d.put_block(t.offset(m - 1, u), col, &q.edge_at(s, i, c).scale(&sign_e(s, i)));
            }
        }
        Some(d)
    })?;
    t.complex = complex;
    Ok(t)
}

/// Total homotopy fiber: `x_S ∈ F(S)_{m+|S|}`,
/// `d = (-1)^{|S|} d_C + Σ_{i ∉ S} (-1)^{pos(i,S)} e_i`.
pub fn iterated_homotopy_fiber(q: &Cube) -> Result<Total> {
    total(q, |s| size(s) as i64, |s| sign(size(s)), |s, i| sign(pos(i, s)))
}

/// Total homotopy cofiber: `x_S ∈ F(S)_{m-c(S)}`, `c(S) = dirs - |S|`,
/// `d = (-1)^{c(S)} d_C + Σ_{i ∉ S} (-1)^{|{t ∉ S : t > i}|} e_i`.
pub fn iterated_homotopy_cofiber(q: &Cube) -> Result<Total> {
    let dirs = q.dirs;
    total(
        q,
        |s| -((dirs - size(s)) as i64),
        |s| sign(dirs - size(s)),
        |s, i| sign((i + 1..dirs).filter(|t| s >> t & 1 == 0).count()),
    )
}

/// The strict iterated fiber `∩_i ker(F(∅) → F({i}))` with its inclusion
/// into the total homotopy fiber at the component `∅`.
#[derive(Clone, Debug)]
pub struct IteratedFiber {
    pub complex: ChainComplex,
    pub inclusion: ChainMap,
    pub hf: Total,
}

pub fn iterated_fiber(q: &Cube) -> Result<IteratedFiber> {
    let hf = iterated_homotopy_fiber(q)?;
    let base = &q.objects[0];
    if base.hi() < base.lo() {
        let z = ChainComplex::zero(Ring::Int);
        let inclusion = ChainMap::zero(&z, &hf.complex);
        return Ok(IteratedFiber { complex: z, inclusion, hf });
    }
    // kernel bases K_m (columns) and left inverses on them
    let mut kers = Vec::new();
    let mut coords = Vec::new();
    for m in base.lo()..=base.hi() + 1 {
        let r = base.rank(m);
        let rows: usize = (0..q.dirs).map(|i| q.objects[1 << i].rank(m)).sum();
        let mut stack = SparseIntMatrix::zeros(rows, r);
        let mut off = 0;
        for i in 0..q.dirs {
            stack.put_block(off, 0, &q.edge_at(0, i, m));
            off += q.objects[1 << i].rank(m);
        }
        let snf = smith_normal_form(&stack, true);
        let rho = snf.rank();
        let t = snf.transforms.expect("requested");
        let k: Vec<Vec<BigInt>> = t.v.iter().map(|row| row[rho..].to_vec()).collect();
        kers.push(SparseIntMatrix::from_dense_big(r, r - rho, &k));
        coords.push(SparseIntMatrix::from_dense_big(r - rho, r, &t.v_inv[rho..].to_vec()));
    }
    let lo = base.lo();
    let idx = |m: i64| (m - lo) as usize;
    let ranks: Vec<usize> = (lo..=base.hi()).map(|m| kers[idx(m)].cols()).collect();
    let complex = ChainComplex::from_parts(Ring::Int, lo, ranks, |m| {
        (m > lo).then(|| coords[idx(m - 1)].mul(&base.d(m)).mul(&kers[idx(m)]))
    })?;
    let inclusion = ChainMap::new(&complex, &hf.complex, |m| {
        let mut a = SparseIntMatrix::zeros(hf.complex.rank(m), complex.rank(m));
        if complex.rank(m) > 0 {
            a.put_block(hf.offset(m, 0), 0, &kers[idx(m)]);
        }
        a
    })?;
    Ok(IteratedFiber { complex, inclusion, hf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainlab::HomologyGroup;

    fn deg0(r: usize) -> ChainComplex {
        ChainComplex::new(Ring::Int, 0, vec![r], vec![SparseIntMatrix::zeros(0, r)]).unwrap()
    }

    #[test]
    fn index_rule() {
        assert_eq!(edge_index(0b101, 1), 0);
        let s = 0;
        let (s1, s2) = (1 << 1, 1 << 3);
        assert_eq!((edge_index(s, 1), edge_index(s, 3), edge_index(s1, 3), edge_index(s2, 1)), (1, 3, 2, 1));
    }

    #[test]
    fn zero_square() {
        let objs = vec![deg0(2), deg0(3), deg0(1), deg0(4)];
        let q = Cube::new(2, objs.clone(), |s, i| Ok(ChainMap::zero(&objs[s], &objs[s | 1 << i]))).unwrap();
        let hf = iterated_homotopy_fiber(&q).unwrap();
        let h: Vec<HomologyGroup> = (-2..=0).map(|m| hf.complex.homology(m)).collect();
        assert_eq!(h.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![4, 4, 2]);
    }

    #[test]
    fn surjection_fiber() {
        let c = deg0(3);
        let d = deg0(2);
        let f = SparseIntMatrix::from_dense(&[vec![1, 2, 0], vec![0, 1, 1]]);
        let objs = vec![c.clone(), d.clone()];
        let q = Cube::new(1, objs, |_, _| ChainMap::new(&c, &d, |_| f.clone())).unwrap();
        let fib = iterated_fiber(&q).unwrap();
        assert_eq!(fib.complex.rank(0), 1);
        assert!(crate::chainlab::les::cone(&fib.inclusion, &fib.complex, &fib.hf.complex).unwrap().is_acyclic());
    }

    #[test]
    fn bad_square_reports_indices() {
        let objs = vec![deg0(1); 4];
        let id = ChainMap::identity(&objs[0]);
        let neg = ChainMap::new(&objs[0], &objs[0], |_| SparseIntMatrix::identity(1).neg()).unwrap();
        let err = Cube::new(2, objs, |s, _| Ok(if s == 0b01 { neg.clone() } else { id.clone() })).unwrap_err();
        assert!(err.to_string().contains("(k1, k2, k3, k4) = (0, 1, 0, 0)"), "{err}");
    }
}
