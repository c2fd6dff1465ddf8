//! Augmented simplicial objects in bounded chain complexes, truncated at level `N`.

use num_bigint::BigInt;
use rand::Rng;

use crate::chainlab::{ChainComplex, ChainMap, Ring, SparseIntMatrix};
use crate::error::{Error, Result};
use crate::simp::dold_kan::{act, degen_map, face_map, surjections, DkAction};

/// `F(-1) ← F(0) ⇇ F(1) ...`: the augmentation is stored as `∂_0` on level 0.
#[derive(Clone, Debug)]
pub struct AugChainFunctor {
    pub top: usize,
    /// `objects[n + 1] = F(n)`
    pub objects: Vec<ChainComplex>,
    /// `faces[n][i]: F(n) → F(n-1)`
    pub faces: Vec<Vec<ChainMap>>,
    /// `degens[n][j]: F(n) → F(n+1)`, `n < top`
    pub degens: Vec<Vec<ChainMap>>,
}

/// Degree window covering every object.
pub(crate) fn window(cs: &[&ChainComplex]) -> (i64, i64) {
    let nz: Vec<&&ChainComplex> = cs.iter().filter(|c| c.hi() >= c.lo()).collect();
    let lo = nz.iter().map(|c| c.lo()).min().unwrap_or(0);
    let hi = nz.iter().map(|c| c.hi()).max().unwrap_or(-1);
    (lo, hi)
}

/// `g ∘ f` at degree `m`.
pub(crate) fn comp(g: &ChainMap, f: &ChainMap, a: &ChainComplex, b: &ChainComplex, c: &ChainComplex, m: i64) -> SparseIntMatrix {
    g.at_shaped(m, c.rank(m), b.rank(m)).mul(&f.at_shaped(m, b.rank(m), a.rank(m)))
}

impl AugChainFunctor {
    pub fn obj(&self, n: i64) -> &ChainComplex {
        &self.objects[(n + 1) as usize]
    }

    pub fn face(&self, n: usize, i: usize) -> &ChainMap {
        &self.faces[n][i]
    }

    pub fn degen(&self, n: usize, j: usize) -> &ChainMap {
        &self.degens[n][j]
    }

    pub fn augmentation(&self) -> &ChainMap {
        &self.faces[0][0]
    }

    pub fn degrees(&self) -> (i64, i64) {
        window(&self.objects.iter().collect::<Vec<_>>())
    }

    /// Chain-map property of every structure map and the simplicial identities
    /// as matrix equalities in every degree.
    pub fn check(&self) -> Result<()> {
        let n_top = self.top;
        for n in 0..=n_top {
            for (i, f) in self.faces[n].iter().enumerate() {
                f.check(self.obj(n as i64), self.obj(n as i64 - 1))
                    .map_err(|e| Error::NotAChainMap(format!("d{i} on level {n}: {e}")))?;
            }
            if n < n_top {
                for (j, s) in self.degens[n].iter().enumerate() {
                    s.check(self.obj(n as i64), self.obj(n as i64 + 1))
                        .map_err(|e| Error::NotAChainMap(format!("s{j} on level {n}: {e}")))?;
                }
            }
        }
        let (lo, hi) = self.degrees();
        let eq = |a: SparseIntMatrix, b: SparseIntMatrix, what: String| -> Result<()> {
            if a == b {
                Ok(())
            } else {
                Err(Error::Identity(what))
            }
        };
        for n in 1..=n_top {
            let (x, y, z) = (self.obj(n as i64), self.obj(n as i64 - 1), self.obj(n as i64 - 2));
            for j in 1..=n {
                for i in 0..j {
                    for m in lo..=hi {
                        eq(
                            comp(&self.faces[n - 1][i], &self.faces[n][j], x, y, z, m),
                            comp(&self.faces[n - 1][j - 1], &self.faces[n][i], x, y, z, m),
                            format!("d{i} d{j} = d{} d{i} on level {n}, degree {m}", j - 1),
                        )?;
                    }
                }
            }
        }
        for n in 0..n_top {
            let (x, y) = (self.obj(n as i64), self.obj(n as i64 + 1));
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for m in lo..=hi {
                        let lhs = comp(&self.faces[n + 1][i], &self.degens[n][j], x, y, x, m);
                        let rhs = if i == j || i == j + 1 {
                            SparseIntMatrix::identity(x.rank(m))
                        } else if i < j {
                            let w = self.obj(n as i64 - 1);
                            comp(&self.degens[n - 1][j - 1], &self.faces[n][i], x, w, x, m)
                        } else {
                            let w = self.obj(n as i64 - 1);
                            comp(&self.degens[n - 1][j], &self.faces[n][i - 1], x, w, x, m)
                        };
                        eq(lhs, rhs, format!("d{i} s{j} on level {n}, degree {m}"))?;
                    }
                }
            }
            if n + 1 < n_top {
                let z = self.obj(n as i64 + 2);
                for j in 0..=n {
                    for i in 0..=j {
                        for m in lo..=hi {
                            eq(
                                comp(&self.degens[n + 1][i], &self.degens[n][j], x, y, z, m),
                                comp(&self.degens[n + 1][j + 1], &self.degens[n][i], x, y, z, m),
                                format!("s{i} s{j} = s{} s{i} on level {n}, degree {m}", j + 1),
                            )?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// All levels equal to `c`, every structure map the identity.
    pub fn constant(c: &ChainComplex, top: usize) -> Self {
        let id = ChainMap::identity(c);
        AugChainFunctor {
            top,
            objects: vec![c.clone(); top + 2],
            faces: (0..=top).map(|n| vec![id.clone(); n + 1]).collect(),
            degens: (0..top).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn zero(top: usize) -> Self {
        Self::constant(&ChainComplex::zero(Ring::Int), top)
    }

    /// Adds `e_{0,c}` to the degree-`m` matrix of `∂_i` on level `n >= 1`, with
    /// `c` chosen so that `∂_i s_0 = id` breaks.
    pub fn inject_face_fault(&mut self, n: usize, i: usize, m: i64) -> Result<()> {
        let (src, dst) = (self.obj(n as i64).clone(), self.obj(n as i64 - 1).clone());
        if n == 0 || src.rank(m) == 0 || dst.rank(m) == 0 {
            return Err(Error::Precondition(format!("level {n} has nothing in degree {m}")));
        }
        let s0 = self.degens[n - 1][0].at_shaped(m, src.rank(m), dst.rank(m));
        let c = (0..src.rank(m)).find(|&r| !s0.row(r).is_empty()).unwrap_or(0);
        let f = &self.faces[n][i];
        let g = ChainMap::new_unchecked(&src, &dst, |k| {
            let mut a = f.at_shaped(k, dst.rank(k), src.rank(k));
            if k == m {
                a.add_to(0, c, &BigInt::from(1));
            }
            a
        })?;
        self.faces[n][i] = g;
        Ok(())
    }

    /// The Čech nerve of the surjection `[I | b]: Z^{r + c} → Z^r`, in chain degree 0:
    /// level `n` is the `(n+1)`-fold fibre product, `F(-1) = Z^r`.
    pub fn cech(b: &[Vec<i64>], top: usize) -> Result<Self> {
        let r = b.len();
        let c = b.first().map_or(0, Vec::len);
        let a = r + c;
        // element (v_0, k_1..k_n) with v_i = v_0 + K k_i, K = [-b; I]
        let rank = |n: i64| if n < 0 { r } else { a + n as usize * c };
        let objects: Vec<ChainComplex> = (-1..=top as i64)
            .map(|n| ChainComplex::new(Ring::Int, 0, vec![rank(n)], vec![SparseIntMatrix::zeros(0, rank(n))]))
            .collect::<Result<_>>()?;
        let obj = |n: i64| &objects[(n + 1) as usize];
        let kmat = {
            let mut k = SparseIntMatrix::zeros(a, c);
            for (i, row) in b.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    k.set(i, j, BigInt::from(-x));
                }
            }
            for j in 0..c {
                k.set(r + j, j, BigInt::from(1));
            }
            k
        };
        let mut faces = Vec::new();
        let mut eps = SparseIntMatrix::zeros(r, a);
        for i in 0..r {
            eps.set(i, i, BigInt::from(1));
            for j in 0..c {
                eps.set(i, r + j, BigInt::from(b[i][j]));
            }
        }
        faces.push(vec![ChainMap::new(obj(0), obj(-1), |_| eps.clone())?]);
        for n in 1..=top {
            let mut fs = Vec::new();
            for i in 0..=n {
                let mut m = SparseIntMatrix::zeros(rank(n as i64 - 1), rank(n as i64));
                let kcol = |t: usize| a + (t - 1) * c;
                if i == 0 {
                    // v_0' = v_0 + K k_1, k_t' = k_{t+1} - k_1
                    for x in 0..a {
                        m.set(x, x, BigInt::from(1));
                    }
                    m.put_block(0, kcol(1), &kmat);
                    for t in 1..n {
                        for y in 0..c {
                            m.add_to(kcol(t) + y, kcol(t + 1) + y, &BigInt::from(1));
                            m.add_to(kcol(t) + y, kcol(1) + y, &BigInt::from(-1));
                        }
                    }
                    // rows kcol(t) for t in 1..n are the new k_t
                } else {
                    for x in 0..a {
                        m.set(x, x, BigInt::from(1));
                    }
                    let mut t2 = 1;
                    for t in 1..=n {
                        if t == i {
                            continue;
                        }
                        for y in 0..c {
                            m.set(kcol(t2) + y, kcol(t) + y, BigInt::from(1));
                        }
                        t2 += 1;
                    }
                }
                fs.push(ChainMap::new(obj(n as i64), obj(n as i64 - 1), |_| m.clone())?);
            }
            faces.push(fs);
        }
        let mut degens = Vec::new();
        for n in 0..top {
            let mut ss = Vec::new();
            for j in 0..=n {
                let mut m = SparseIntMatrix::zeros(rank(n as i64 + 1), rank(n as i64));
                let kcol = |t: usize| a + (t - 1) * c;
                for x in 0..a {
                    m.set(x, x, BigInt::from(1));
                }
                // new tuple (v_0, ..., v_j, v_j, ..., v_n)
                for t in 1..=n + 1 {
                    let old = if t <= j { Some(t) } else if t == j + 1 { if j == 0 { None } else { Some(j) } } else { Some(t - 1) };
                    if let Some(o) = old {
                        for y in 0..c {
                            m.set(kcol(t) + y, kcol(o) + y, BigInt::from(1));
                        }
                    }
                }
                ss.push(ChainMap::new(obj(n as i64), obj(n as i64 + 1), |_| m.clone())?);
            }
            degens.push(ss);
        }
        Ok(AugChainFunctor { top, objects, faces, degens })
    }
}

/// A bounded double complex `D_{p,k}`, `0 <= p <= p_max`, `-1 <= k <= k_max`,
/// with commuting differentials `dh: (p,k) → (p-1,k)` and `dv: (p,k) → (p,k-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleComplex {
    pub p_max: usize,
    pub k_max: usize,
    /// `ranks[p][k + 1]`
    pub ranks: Vec<Vec<usize>>,
    pub dh: Vec<Vec<SparseIntMatrix>>,
    pub dv: Vec<Vec<SparseIntMatrix>>,
}

impl DoubleComplex {
    pub fn rank(&self, p: i64, k: i64) -> usize {
        if p < 0 || k < -1 || p > self.p_max as i64 || k > self.k_max as i64 {
            0
        } else {
            self.ranks[p as usize][(k + 1) as usize]
        }
    }

    pub fn dh(&self, p: usize, k: i64) -> SparseIntMatrix {
        if p == 0 {
            SparseIntMatrix::zeros(0, self.rank(0, k))
        } else {
            self.dh[p][(k + 1) as usize].clone()
        }
    }

    pub fn dv(&self, p: usize, k: i64) -> SparseIntMatrix {
        if k < 0 {
            SparseIntMatrix::zeros(0, self.rank(p as i64, k))
        } else {
            self.dv[p][(k + 1) as usize].clone()
        }
    }

    pub fn check(&self) -> Result<()> {
        for p in 0..=self.p_max {
            for k in -1..=self.k_max as i64 {
                if p >= 2 && !self.dh(p - 1, k).mul(&self.dh(p, k)).is_zero() {
                    return Err(Error::NotAComplex(format!("dh dh at ({p},{k})")));
                }
                if k >= 1 && !self.dv(p, k - 1).mul(&self.dv(p, k)).is_zero() {
                    return Err(Error::NotAComplex(format!("dv dv at ({p},{k})")));
                }
                if p >= 1 && k >= 0 && self.dv(p - 1, k).mul(&self.dh(p, k)) != self.dh(p, k - 1).mul(&self.dv(p, k)) {
                    return Err(Error::NotAComplex(format!("dh dv != dv dh at ({p},{k})")));
                }
            }
        }
        Ok(())
    }

    /// Whether every column `D_{p,-1} ← D_{p,0} ← ...` is exact at `k = -1..=upto`.
    pub fn columns_exact(&self, upto: i64) -> bool {
        (0..=self.p_max).all(|p| {
            let c = self.column(p);
            (-1..=upto).all(|k| c.homology(k + 1).is_zero())
        })
    }

    /// Column `p` as a complex with `k` placed in degree `k + 1`.
    pub fn column(&self, p: usize) -> ChainComplex {
        let ranks = (-1..=self.k_max as i64).map(|k| self.rank(p as i64, k)).collect();
        ChainComplex::from_parts(Ring::Int, 0, ranks, |d| (d >= 1).then(|| self.dv(p, d - 1))).expect("dv dv = 0")
    }
}

/// Summand layout of `Γ(D)(n)_p`: `(k, σ, offset)`.
fn layout(dc: &DoubleComplex, n: i64, p: usize) -> Vec<(i64, Vec<usize>, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    if n < 0 {
        out.push((-1, vec![], 0));
        return out;
    }
    for k in 0..=(n as usize).min(dc.k_max) {
        for s in surjections(n as usize, k) {
            out.push((k as i64, s, off));
            off += dc.rank(p as i64, k as i64);
        }
    }
    out
}

fn level_rank(dc: &DoubleComplex, n: i64, p: usize) -> usize {
    layout(dc, n, p).iter().map(|(k, _, _)| dc.rank(p as i64, *k)).sum()
}

fn find(lay: &[(i64, Vec<usize>, usize)], k: i64, s: &[usize]) -> usize {
    lay.iter().find(|(kk, ss, _)| *kk == k && ss == s).expect("summand").2
}

/// The augmented simplicial chain complex obtained from `D` by adjoining
/// degeneracies levelwise (Dold–Kan in the `k` direction).
pub fn degeneracy_split(dc: &DoubleComplex, top: usize) -> Result<AugChainFunctor> {
    dc.check()?;
    let objects: Vec<ChainComplex> = (-1..=top as i64)
        .map(|n| {
            let ranks = (0..=dc.p_max).map(|p| level_rank(dc, n, p)).collect();
            ChainComplex::from_parts(Ring::Int, 0, ranks, |p| {
                let p = p as usize;
                if p == 0 {
                    return None;
                }
                let (src, dst) = (layout(dc, n, p), layout(dc, n, p - 1));
                let mut m = SparseIntMatrix::zeros(level_rank(dc, n, p - 1), level_rank(dc, n, p));
                for ((k, _, so), (_, _, to)) in src.iter().zip(&dst) {
                    m.put_block(*to, *so, &dc.dh(p, *k));
                }
                Some(m)
            })
        })
        .collect::<Result<_>>()?;
    let obj = |n: i64| &objects[(n + 1) as usize];
    let structure = |n: i64, n2: i64, theta: &[usize], p: usize| -> SparseIntMatrix {
        let (src, dst) = (layout(dc, n, p), layout(dc, n2, p));
        let mut m = SparseIntMatrix::zeros(level_rank(dc, n2, p), level_rank(dc, n, p));
        for (k, s, so) in &src {
            if n2 < 0 {
                // augmentation
                m.put_block(0, *so, &dc.dv(p, 0));
                continue;
            }
            match act(theta, s) {
                DkAction::Keep(eta) => {
                    if (*k as usize) <= dc.k_max {
                        m.put_block(find(&dst, *k, &eta), *so, &SparseIntMatrix::identity(dc.rank(p as i64, *k)));
                    }
                }
                DkAction::Differential(eta) => {
                    m.put_block(find(&dst, k - 1, &eta), *so, &dc.dv(p, *k));
                }
                DkAction::Zero => {}
            }
        }
        m
    };
    let mut faces = Vec::new();
    for n in 0..=top as i64 {
        let fs = (0..=n as usize)
            .map(|i| {
                let theta = if n == 0 { vec![] } else { face_map(n as usize, i) };
                ChainMap::new(obj(n), obj(n - 1), |p| {
                    if p < 0 || p as usize > dc.p_max {
                        SparseIntMatrix::zeros(obj(n - 1).rank(p), obj(n).rank(p))
                    } else {
                        structure(n, n - 1, &theta, p as usize)
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        faces.push(fs);
    }
    let mut degens = Vec::new();
    for n in 0..top as i64 {
        let ss = (0..=n as usize)
            .map(|j| {
                let theta = degen_map(n as usize, j);
                ChainMap::new(obj(n), obj(n + 1), |p| {
                    if p < 0 || p as usize > dc.p_max {
                        SparseIntMatrix::zeros(obj(n + 1).rank(p), obj(n).rank(p))
                    } else {
                        structure(n, n + 1, &theta, p as usize)
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        degens.push(ss);
    }
    Ok(AugChainFunctor { top, objects, faces, degens })
}

/// A natural transformation, one chain map per level `-1..=top`.
#[derive(Clone, Debug)]
pub struct NatTrans {
    pub maps: Vec<ChainMap>,
}

impl NatTrans {
    pub fn at(&self, n: i64) -> &ChainMap {
        &self.maps[(n + 1) as usize]
    }

    /// Chain maps commuting with every face and degeneracy.
    pub fn check(&self, f1: &AugChainFunctor, f2: &AugChainFunctor) -> Result<()> {
        if f1.top != f2.top {
            return Err(Error::Dimension("functors truncated at different levels".into()));
        }
        for n in -1..=f1.top as i64 {
            self.at(n).check(f1.obj(n), f2.obj(n))?;
        }
        let (lo1, hi1) = f1.degrees();
        let (lo2, hi2) = f2.degrees();
        let (lo, hi) = (lo1.min(lo2), hi1.max(hi2));
        for n in 0..=f1.top {
            let ni = n as i64;
            for i in 0..=n {
                for m in lo..=hi {
                    let a = comp(f2.face(n, i), self.at(ni), f1.obj(ni), f2.obj(ni), f2.obj(ni - 1), m);
                    let b = comp(self.at(ni - 1), f1.face(n, i), f1.obj(ni), f1.obj(ni - 1), f2.obj(ni - 1), m);
                    if a != b {
                        return Err(Error::NotAChainMap(format!("naturality fails for d{i} on level {n}, degree {m}")));
                    }
                }
            }
            if n < f1.top {
                for j in 0..=n {
                    for m in lo..=hi {
                        let a = comp(f2.degen(n, j), self.at(ni), f1.obj(ni), f2.obj(ni), f2.obj(ni + 1), m);
                        let b = comp(self.at(ni + 1), f1.degen(n, j), f1.obj(ni), f1.obj(ni + 1), f2.obj(ni + 1), m);
                        if a != b {
                            return Err(Error::NotAChainMap(format!("naturality fails for s{j} on level {n}, degree {m}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Γ(g)` for a map of double complexes `g: D1 → D2`, `g[p][k+1]`.
pub fn induced_transformation(
    d1: &DoubleComplex,
    d2: &DoubleComplex,
    g: &[Vec<SparseIntMatrix>],
    f1: &AugChainFunctor,
    f2: &AugChainFunctor,
) -> Result<NatTrans> {
    let maps = (-1..=f1.top as i64)
        .map(|n| {
            ChainMap::new(f1.obj(n), f2.obj(n), |p| {
                let mut m = SparseIntMatrix::zeros(f2.obj(n).rank(p), f1.obj(n).rank(p));
                if p < 0 || p as usize > d1.p_max.min(d2.p_max) {
                    return m;
                }
                let p = p as usize;
                for ((k, _, so), (_, _, to)) in layout(d1, n, p).iter().zip(layout(d2, n, p).iter()) {
                    m.put_block(*to, *so, &g[p][(k + 1) as usize]);
                }
                m
            })
        })
        .collect::<Result<_>>()?;
    Ok(NatTrans { maps })
}

/// Building blocks of random double complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// `Z` at `(p,k)` mapping by `mult` to `Z` at `(p,k-1)`.
    VLine { p: usize, k: i64, mult: i64 },
    /// `Z ⊗ Z` on the square with top corner `(p,k)`.
    Square { p: usize, k: i64 },
    /// `Z` at `(p,k)` mapping by identity to `(p-1,k)`.
    HLine { p: usize, k: i64 },
    Point { p: usize, k: i64 },
}

impl Piece {
    fn cells(&self) -> Vec<(usize, i64)> {
        match *self {
            Piece::VLine { p, k, .. } => vec![(p, k), (p, k - 1)],
            Piece::Square { p, k } => vec![(p, k), (p - 1, k), (p, k - 1), (p - 1, k - 1)],
            Piece::HLine { p, k } => vec![(p, k), (p - 1, k)],
            Piece::Point { p, k } => vec![(p, k)],
        }
    }

    /// Column-exact pieces (those allowed in levelwise resolutions).
    pub fn is_resolving(&self) -> bool {
        matches!(self, Piece::VLine { mult: 1, .. } | Piece::VLine { mult: -1, .. } | Piece::Square { .. })
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, p_max: usize, k_max: usize, resolving: bool) -> Piece {
        loop {
            let p = rng.gen_range(0..=p_max);
            let k = rng.gen_range(-1..=k_max as i64);
            let kind = if resolving { rng.gen_range(0..2) } else { rng.gen_range(0..5) };
            let pc = match kind {
                0 => Piece::VLine { p, k, mult: 1 },
                1 => Piece::Square { p, k },
                2 => Piece::HLine { p, k },
                3 => Piece::Point { p, k },
                _ => Piece::VLine { p, k, mult: 2 },
            };
            if matches!(pc, Piece::Square { p: 0, .. } | Piece::HLine { p: 0, .. }) {
                continue;
            }
            let ok = pc.cells().iter().all(|&(q, l)| q <= p_max && l >= -1 && l <= k_max as i64);
            if ok {
                return pc;
            }
        }
    }
}

/// A double complex assembled from pieces, with per-spot basis positions.
#[derive(Clone, Debug)]
pub struct PieceComplex {
    pub pieces: Vec<Piece>,
    pub dc: DoubleComplex,
    /// `pos[piece][cell]` = index within its spot
    pos: Vec<Vec<usize>>,
}

pub fn assemble(pieces: &[Piece], p_max: usize, k_max: usize) -> PieceComplex {
    let mut ranks = vec![vec![0usize; k_max + 2]; p_max + 1];
    let mut pos = Vec::new();
    for pc in pieces {
        let mut v = Vec::new();
        for (p, k) in pc.cells() {
            v.push(ranks[p][(k + 1) as usize]);
            ranks[p][(k + 1) as usize] += 1;
        }
        pos.push(v);
    }
    let rk = |p: i64, k: i64| if p < 0 || k < -1 { 0 } else { ranks[p as usize][(k + 1) as usize] };
    let mut dh: Vec<Vec<SparseIntMatrix>> = (0..=p_max)
        .map(|p| (-1..=k_max as i64).map(|k| SparseIntMatrix::zeros(rk(p as i64 - 1, k), rk(p as i64, k))).collect())
        .collect();
    let mut dv: Vec<Vec<SparseIntMatrix>> = (0..=p_max)
        .map(|p| (-1..=k_max as i64).map(|k| SparseIntMatrix::zeros(rk(p as i64, k - 1), rk(p as i64, k))).collect())
        .collect();
    let one = BigInt::from(1);
    for (pc, ps) in pieces.iter().zip(&pos) {
        match *pc {
            Piece::VLine { p, k, mult } => dv[p][(k + 1) as usize].set(ps[1], ps[0], BigInt::from(mult)),
            Piece::Square { p, k } => {
                dh[p][(k + 1) as usize].set(ps[1], ps[0], one.clone());
                dh[p][k as usize].set(ps[3], ps[2], one.clone());
                dv[p][(k + 1) as usize].set(ps[2], ps[0], one.clone());
                dv[p - 1][(k + 1) as usize].set(ps[3], ps[1], one.clone());
            }
            Piece::HLine { p, k } => dh[p][(k + 1) as usize].set(ps[1], ps[0], one.clone()),
            Piece::Point { .. } => {}
        }
    }
    PieceComplex { pieces: pieces.to_vec(), dc: DoubleComplex { p_max, k_max, ranks, dh, dv }, pos }
}

/// Random unimodular matrix with its inverse.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (SparseIntMatrix, SparseIntMatrix) {
    let mut u = SparseIntMatrix::identity(n);
    let mut ui = SparseIntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            u.set(0, 0, BigInt::from(-1));
            ui.set(0, 0, BigInt::from(-1));
        }
        return (u, ui);
    }
    for _ in 0..2 * n {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        let c = rng.gen_range(-1..=1i64);
        if c == 0 {
            continue;
        }
        // row_a += c row_b on u; inverse: col_b -= c col_a on ui
        let mut e = SparseIntMatrix::identity(n);
        e.set(a, b, BigInt::from(c));
        let mut ei = SparseIntMatrix::identity(n);
        ei.set(a, b, BigInt::from(-c));
        u = e.mul(&u);
        ui = ui.mul(&ei);
    }
    (u, ui)
}

/// Change of basis `x ↦ U x` at every spot.
pub fn conjugate(dc: &DoubleComplex, us: &[Vec<(SparseIntMatrix, SparseIntMatrix)>]) -> DoubleComplex {
    let mut out = dc.clone();
    for p in 0..=dc.p_max {
        for k in -1..=dc.k_max as i64 {
            let ki = (k + 1) as usize;
            if p >= 1 {
                out.dh[p][ki] = us[p - 1][ki].0.mul(&dc.dh[p][ki]).mul(&us[p][ki].1);
            }
            if k >= 0 {
                out.dv[p][ki] = us[p][ki - 1].0.mul(&dc.dv[p][ki]).mul(&us[p][ki].1);
            }
        }
    }
    out
}

pub fn random_bases<R: Rng + ?Sized>(rng: &mut R, dc: &DoubleComplex) -> Vec<Vec<(SparseIntMatrix, SparseIntMatrix)>> {
    dc.ranks.iter().map(|row| row.iter().map(|&r| random_unimodular(rng, r)).collect()).collect()
}

/// Random pieces in the window, at most `max_pieces` of them.
pub fn random_pieces<R: Rng + ?Sized>(rng: &mut R, p_max: usize, k_max: usize, max_pieces: usize, resolving: bool) -> Vec<Piece> {
    let n = rng.gen_range(1..=max_pieces);
    let mut out: Vec<Piece> = (0..n).map(|_| Piece::random(rng, p_max, k_max, true)).collect();
    if !resolving {
        // at least one obstruction to column exactness
        loop {
            let pc = Piece::random(rng, p_max, k_max, false);
            if !pc.is_resolving() {
                out.push(pc);
                break;
            }
        }
    }
    out
}

/// A map between piece complexes: piece `a` of the source to piece `b` of
/// the target with scalar `c` (same shape, or square onto its top edge, or a
/// vertical line into the bottom edge of a square).
pub fn piece_map(src: &PieceComplex, dst: &PieceComplex, assignments: &[(usize, usize, i64)]) -> Result<Vec<Vec<SparseIntMatrix>>> {
    let d1 = &src.dc;
    let d2 = &dst.dc;
    let mut g: Vec<Vec<SparseIntMatrix>> = (0..=d1.p_max)
        .map(|p| (-1..=d1.k_max as i64).map(|k| SparseIntMatrix::zeros(d2.rank(p as i64, k), d1.rank(p as i64, k))).collect())
        .collect();
    for &(a, b, c) in assignments {
        let (pa, pb) = (src.pieces[a], dst.pieces[b]);
        let pairs: Vec<(usize, usize)> = match (pa, pb) {
            (x, y) if x == y => (0..x.cells().len()).map(|i| (i, i)).collect(),
            (Piece::Square { p, k }, Piece::VLine { p: q, k: l, mult: 1 }) if p == q && k == l => vec![(0, 0), (2, 1)],
            (Piece::VLine { p, k, mult: 1 }, Piece::Square { p: q, k: l }) if p + 1 == q && k == l => vec![(0, 1), (1, 3)],
            _ => return Err(Error::Precondition(format!("no map from {pa:?} to {pb:?}"))),
        };
        let (ca, cb) = (pa.cells(), pb.cells());
        for (i, j) in pairs {
            let (p, k) = ca[i];
            debug_assert_eq!(cb[j], (p, k));
            g[p][(k + 1) as usize].add_to(dst.pos[b][j], src.pos[a][i], &BigInt::from(c));
        }
    }
    Ok(g)
}

/// Conjugates a map of double complexes by bases on both sides.
pub fn conjugate_map(
    g: &[Vec<SparseIntMatrix>],
    u1: &[Vec<(SparseIntMatrix, SparseIntMatrix)>],
    u2: &[Vec<(SparseIntMatrix, SparseIntMatrix)>],
) -> Vec<Vec<SparseIntMatrix>> {
    g.iter()
        .enumerate()
        .map(|(p, row)| row.iter().enumerate().map(|(k, m)| u2[p][k].0.mul(m).mul(&u1[p][k].1)).collect())
        .collect()
}

/// A column-exact double complex whose class in `H_1` of the bottom row is
/// killed at the second stage of the filtration but not the first:
/// `z` at (1,-1), `y0` at (1,0), `w` at (0,0), `y1` at (0,1):
/// `dv y0 = z`, `dh y0 = w`, `dv y1 = w`.
pub fn staircase() -> DoubleComplex {
    let one = |r, c| {
        let mut m = SparseIntMatrix::zeros(r, c);
        if r > 0 && c > 0 {
            m.set(0, 0, 1.into());
        }
        m
    };
    let ranks = vec![vec![0, 1, 1], vec![1, 1, 0]];
    let z = SparseIntMatrix::zeros;
    DoubleComplex {
        p_max: 1,
        k_max: 1,
        ranks,
        dh: vec![vec![z(0, 0), z(0, 1), z(0, 1)], vec![z(0, 1), one(1, 1), z(1, 0)]],
        dv: vec![vec![z(0, 0), z(0, 1), one(1, 1)], vec![z(0, 1), one(1, 1), z(1, 0)]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cech_nerve_is_simplicial() {
        let f = AugChainFunctor::cech(&[vec![2, -1], vec![0, 3]], 3).unwrap();
        f.check().unwrap();
        assert_eq!(f.obj(2).rank(0), 4 + 2 * 2);
    }

    #[test]
    fn split_functors_are_simplicial() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let res = rng.gen_bool(0.5);
            let pcs = random_pieces(&mut rng, 2, 2, 4, res);
            let pc = assemble(&pcs, 2, 2);
            let dc = conjugate(&pc.dc, &random_bases(&mut rng, &pc.dc));
            let f = degeneracy_split(&dc, 3).unwrap();
            f.check().unwrap();
        }
        let c = ChainComplex::from_parts(Ring::Int, 0, vec![2, 1], |_| None).unwrap();
        AugChainFunctor::constant(&c, 3).check().unwrap();
    }

    #[test]
    fn fault_is_detected() {
        let mut f = AugChainFunctor::cech(&[vec![1]], 3).unwrap();
        f.inject_face_fault(2, 1, 0).unwrap();
        assert!(f.check().is_err());
    }
}
