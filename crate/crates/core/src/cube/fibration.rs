//! The fibration sequences `hF^{j+1}_n → hF^j_n → hF^j_{n-1}`, the filtration
//! of `H_*(F(-1))` by kernels of composite connecting maps, and the
//! comparison of strict and homotopy fibers.

use serde::Serialize;

use super::cube::{build_cube, iterated_fiber, iterated_homotopy_fiber, restrict_tau, size, Cube, Total};
use super::functor::{AugChainFunctor, NatTrans};
use crate::chainlab::les::{cone, LesReport, ShortExactSequence};
use crate::chainlab::qlinalg::{span_contains, to_rat_vec, QMatrix, Rat};
use crate::chainlab::{ChainComplex, ChainMap, Ring, SparseIntMatrix};
use crate::error::{Error, Result};

fn sign(e: usize) -> num_bigint::BigInt {
    num_bigint::BigInt::from(if e % 2 == 0 { 1 } else { -1 })
}

#[derive(Clone, Debug)]
pub struct FibrationSequence {
    pub j: i64,
    pub n: i64,
    /// `hF^{j+1}_n`
    pub total: Total,
    /// `hF^j_n`
    pub t1: Total,
    /// `hF^j_{n-1}`
    pub t2: Total,
    /// Induced by the edges `S → S ∪ {j+1}`.
    pub alpha: ChainMap,
    /// `hf(α)_m = T1_m ⊕ T2_{m+1}`, `d(x, y) = (dx, αx - dy)`.
    pub fiber_alpha: ChainComplex,
    /// Isomorphism `hf(α) → hF^{j+1}_n`.
    pub phi: ChainMap,
    /// `0 → hf(α) → P → T2 → 0` with `P ≃ T1`.
    pub ses: ShortExactSequence,
    pub les: LesReport,
}

pub fn fibration_sequence(f: &AugChainFunctor, j: i64, n: i64) -> Result<FibrationSequence> {
    if j + 1 > n {
        return Err(Error::Precondition(format!("fibration sequence needs j + 1 <= n, got j = {j}, n = {n}")));
    }
    let q = build_cube(f, j + 1, n)?;
    let c1 = restrict_tau(&q, 1)?;
    let c2 = restrict_tau(&q, 2)?;
    let total = iterated_homotopy_fiber(&q)?;
    let t1 = iterated_homotopy_fiber(&c1)?;
    let t2 = iterated_homotopy_fiber(&c2)?;
    let top = q.dirs - 1;
    let cells = 1usize << top;

    let alpha = ChainMap::new(&t1.complex, &t2.complex, |m| {
        let mut a = SparseIntMatrix::zeros(t2.complex.rank(m), t1.complex.rank(m));
        for s in 0..cells {
            a.put_block(t2.offset(m, s), t1.offset(m, s), &q.edge_at(s, top, m + size(s) as i64));
        }
        a
    })?;

    let (a1, a2) = (&t1.complex, &t2.complex);
    let hr = |m: i64| a1.rank(m) + a2.rank(m + 1);
    let (lo, hi) = span(&[(a1.lo(), a1.hi()), (a2.lo() - 1, a2.hi() - 1)]);
    let fiber_alpha = ChainComplex::from_parts(Ring::Int, lo, (lo..=hi).map(hr).collect(), |m| {
        let mut d = SparseIntMatrix::zeros(hr(m - 1), hr(m));
        d.put_block(0, 0, &a1.d(m));
        d.put_block(a1.rank(m - 1), 0, &alpha.at_shaped(m, a2.rank(m), a1.rank(m)));
        d.put_block(a1.rank(m - 1), a1.rank(m), &a2.d(m + 1).neg());
        Some(d)
    })?;

    let phi = ChainMap::new(&fiber_alpha, &total.complex, |m| {
        let mut a = SparseIntMatrix::zeros(total.complex.rank(m), hr(m));
        for s in 0..cells {
            let k = size(s) as i64;
            a.put_block(total.offset(m, s), t1.offset(m, s), &SparseIntMatrix::identity(t1.component_rank(m, s)));
            let r = t2.component_rank(m + 1, s);
            a.put_block(
                total.offset(m, s | 1 << top),
                a1.rank(m) + t2.offset(m + 1, s),
                &SparseIntMatrix::identity(r).scale(&sign(k as usize)),
            );
        }
        a
    })?;

    let pr = |m: i64| a1.rank(m) + a2.rank(m + 1) + a2.rank(m);
    let (plo, phi_) = span(&[(lo, hi), (a2.lo(), a2.hi())]);
    let path = ChainComplex::from_parts(Ring::Int, plo, (plo..=phi_).map(pr).collect(), |m| {
        let mut d = SparseIntMatrix::zeros(pr(m - 1), pr(m));
        let (x0, y0, w0) = (0, a1.rank(m), a1.rank(m) + a2.rank(m + 1));
        let (x1, y1, w1) = (0, a1.rank(m - 1), a1.rank(m - 1) + a2.rank(m));
        d.put_block(x1, x0, &a1.d(m));
        d.put_block(y1, x0, &alpha.at_shaped(m, a2.rank(m), a1.rank(m)));
        d.put_block(y1, y0, &a2.d(m + 1).neg());
        d.put_block(y1, w0, &SparseIntMatrix::identity(a2.rank(m)).neg());
        d.put_block(w1, w0, &a2.d(m));
        Some(d)
    })?;
    let inc = ChainMap::new(&fiber_alpha, &path, |m| {
        let mut a = SparseIntMatrix::zeros(pr(m), hr(m));
        a.put_block(0, 0, &SparseIntMatrix::identity(hr(m)));
        a
    })?;
    let proj = ChainMap::new(&path, a2, |m| {
        let mut a = SparseIntMatrix::zeros(a2.rank(m), pr(m));
        a.put_block(0, hr(m), &SparseIntMatrix::identity(a2.rank(m)));
        a
    })?;
    let ses = ShortExactSequence::new(fiber_alpha.clone(), path, a2.clone(), inc, proj)?;
    let les = ses.les_verify();
    Ok(FibrationSequence { j, n, total, t1, t2, alpha, fiber_alpha, phi, ses, les })
}

fn span(ws: &[(i64, i64)]) -> (i64, i64) {
    let ne: Vec<&(i64, i64)> = ws.iter().filter(|(a, b)| b >= a).collect();
    if ne.is_empty() {
        return (0, -1);
    }
    (ne.iter().map(|w| w.0).min().unwrap(), ne.iter().map(|w| w.1).max().unwrap())
}

impl FibrationSequence {
    /// Chain-level connecting map `T2_m → hF^{j+1}_{n, m-1}`:
    /// `w_S ↦ (-1)^{|S|+1} w_S` at `S ∪ {j+1}`.
    pub fn connecting_matrix(&self, m: i64) -> SparseIntMatrix {
        let top = (self.j + 1) as usize;
        let mut a = SparseIntMatrix::zeros(self.total.complex.rank(m - 1), self.t2.complex.rank(m));
        for s in 0..1usize << top {
            let r = self.t2.component_rank(m, s);
            a.put_block(
                self.total.offset(m - 1, s | 1 << top),
                self.t2.offset(m, s),
                &SparseIntMatrix::identity(r).scale(&sign(size(s) + 1)),
            );
        }
        a
    }

    /// Connecting map through the short exact sequence, then `φ`.
    pub fn connecting_oracle(&self, m: i64, z: &[Rat]) -> Result<Vec<Rat>> {
        let y = self.ses.connecting(m, z)?;
        let p = QMatrix::from_int(&self.phi.at_shaped(m - 1, self.total.complex.rank(m - 1), self.fiber_alpha.rank(m - 1)));
        Ok(p.mul_vec(&y))
    }

    /// Whether `H_*(α)` is onto in every degree (over the rationals).
    pub fn alpha_surjective(&self) -> bool {
        self.les.spots.iter().filter(|s| s.label == "H(C)").all(|s| s.rank_in == s.dim)
    }
}

/// The filtration of `H_degree(F(-1); Q)`, in coordinates on the free
/// generators of the integral homology.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationResult {
    pub degree: i64,
    pub dim: usize,
    /// `composites[k-1]`: `H_degree(F(-1)) → H_{degree-k}(hF^{k-1}_{k-1})`
    #[serde(serialize_with = "ser_qmats")]
    pub composites: Vec<QMatrix>,
    /// `stages[k-1]` spans `𝓕_k`.
    #[serde(serialize_with = "ser_bases")]
    pub stages: Vec<Vec<Vec<Rat>>>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_bases<S: serde::Serializer>(v: &[Vec<Vec<Rat>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct R<'a>(#[serde(serialize_with = "ser_rats")] &'a [Rat]);
    s.collect_seq(v.iter().map(|b| b.iter().map(|x| R(x)).collect::<Vec<_>>()))
}

fn ser_qmats<S: serde::Serializer>(v: &[QMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_bases(&v.iter().map(|m| m.data.clone()).collect::<Vec<_>>(), s)
}

impl FiltrationResult {
    pub fn stage_dims(&self) -> Vec<usize> {
        self.stages.iter().map(Vec::len).collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.stages.windows(2).all(|w| span_contains(&w[1], &w[0], self.dim))
    }
}

fn check_kmax(f: &AugChainFunctor, kmax: usize) -> Result<()> {
    if kmax == 0 || kmax + 1 > f.top {
        return Err(Error::Truncation { degree: kmax as i64, top: f.top as i64 - 1 });
    }
    Ok(())
}

fn base_generators(f: &AugChainFunctor, degree: i64) -> Vec<Vec<Rat>> {
    f.obj(-1).homology_basis(degree).free_generators().iter().map(|g| to_rat_vec(g)).collect()
}

fn kernel_of(cols: &[Vec<Rat>], rows: usize, dim: usize) -> (QMatrix, Vec<Vec<Rat>>) {
    let m = if cols.is_empty() { QMatrix::zeros(rows, 0) } else { QMatrix::from_columns(rows, cols) };
    let m = QMatrix { rows, cols: dim, data: m.data };
    let k = m.kernel();
    (m, k)
}

/// Composites of the chain-level connecting maps, classified stage by stage.
pub fn filtration(f: &AugChainFunctor, degree: i64, kmax: usize) -> Result<FiltrationResult> {
    check_kmax(f, kmax)?;
    let gens = base_generators(f, degree);
    let dim = gens.len();
    let mut cur = gens;
    let mut composites = Vec::new();
    let mut stages = Vec::new();
    for k in 1..=kmax {
        let seq = fibration_sequence(f, k as i64 - 2, k as i64 - 1)?;
        let m = degree - k as i64 + 1;
        let psi = QMatrix::from_int(&seq.connecting_matrix(m));
        cur = cur.iter().map(|z| psi.mul_vec(z)).collect();
        let basis = seq.total.complex.homology_basis(m - 1);
        let coords: Vec<Vec<Rat>> = cur.iter().map(|z| basis.classify_rational(z)).collect::<Result<_>>()?;
        let (c, ker) = kernel_of(&coords, basis.betti(), dim);
        composites.push(c);
        stages.push(ker);
    }
    Ok(FiltrationResult { degree, dim, composites, stages })
}

/// The same stages through generic connecting homomorphisms of the short
/// exact sequences.
pub fn filtration_oracle(f: &AugChainFunctor, degree: i64, kmax: usize) -> Result<Vec<Vec<Vec<Rat>>>> {
    check_kmax(f, kmax)?;
    let gens = base_generators(f, degree);
    let dim = gens.len();
    let mut cur = gens;
    let mut stages = Vec::new();
    for k in 1..=kmax {
        let seq = fibration_sequence(f, k as i64 - 2, k as i64 - 1)?;
        let m = degree - k as i64 + 1;
        cur = cur.iter().map(|z| seq.connecting_oracle(m, z)).collect::<Result<_>>()?;
        let basis = seq.total.complex.homology_basis(m - 1);
        let coords: Vec<Vec<Rat>> = cur.iter().map(|z| basis.classify_rational(z)).collect::<Result<_>>()?;
        stages.push(kernel_of(&coords, basis.betti(), dim).1);
    }
    Ok(stages)
}

pub fn same_subspace(a: &[Vec<Rat>], b: &[Vec<Rat>], dim: usize) -> bool {
    span_contains(a, b, dim) && span_contains(b, a, dim)
}

/// Effect of a natural transformation on the filtrations.
#[derive(Clone, Debug, Serialize)]
pub struct InducedFiltration {
    pub source: FiltrationResult,
    pub target: FiltrationResult,
    /// `ζ_*` on `H_degree(F(-1))` in free-generator coordinates.
    #[serde(serialize_with = "ser_qmats_one")]
    pub map: QMatrix,
    /// `ζ_*(𝓕_k F1) ⊆ 𝓕_k F2`
    pub contained: Vec<bool>,
    /// `𝓕_k F1 → 𝓕_k F2` in the stage bases (absent where containment fails).
    #[serde(skip)]
    pub stage_maps: Vec<Option<QMatrix>>,
}

fn ser_qmats_one<S: serde::Serializer>(m: &QMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_qmats(std::slice::from_ref(m), s)
}

pub fn induced_filtration_map(
    zeta: &NatTrans,
    f1: &AugChainFunctor,
    f2: &AugChainFunctor,
    degree: i64,
    kmax: usize,
) -> Result<InducedFiltration> {
    zeta.check(f1, f2)?;
    let source = filtration(f1, degree, kmax)?;
    let target = filtration(f2, degree, kmax)?;
    let (a, b) = (f1.obj(-1), f2.obj(-1));
    let z = QMatrix::from_int(&zeta.at(-1).at_shaped(degree, b.rank(degree), a.rank(degree)));
    let basis2 = b.homology_basis(degree);
    let cols: Vec<Vec<Rat>> = base_generators(f1, degree)
        .iter()
        .map(|g| basis2.classify_rational(&z.mul_vec(g)))
        .collect::<Result<_>>()?;
    let map = QMatrix { rows: target.dim, cols: source.dim, data: kernel_of(&cols, target.dim, source.dim).0.data };
    let mut contained = Vec::new();
    let mut stage_maps = Vec::new();
    for (s1, s2) in source.stages.iter().zip(&target.stages) {
        let imgs: Vec<Vec<Rat>> = s1.iter().map(|v| map.mul_vec(v)).collect();
        let ok = span_contains(s2, &imgs, target.dim);
        contained.push(ok);
        stage_maps.push(ok.then(|| {
            let basis = QMatrix::from_columns(target.dim, s2);
            let cols: Vec<Vec<Rat>> = imgs.iter().map(|v| basis.solve(v).expect("contained")).collect();
            QMatrix { rows: s2.len(), cols: s1.len(), data: kernel_of(&cols, s2.len(), s1.len()).0.data }
        }));
    }
    Ok(InducedFiltration { source, target, map, contained, stage_maps })
}

/// Strict versus homotopy fiber of every cube of `F`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FiberComparison {
    /// First `(p, n)` where the augmented alternating-face complex in chain
    /// degree `p` fails to be exact at level `n`.
    pub hypothesis_failure: Option<(i64, i64)>,
    pub cubes_checked: usize,
    pub conclusion_failures: Vec<String>,
}

impl FiberComparison {
    pub fn hypothesis_holds(&self) -> bool {
        self.hypothesis_failure.is_none()
    }

    pub fn confirmed(&self) -> bool {
        self.hypothesis_holds() && self.cubes_checked > 0 && self.conclusion_failures.is_empty()
    }
}

/// The augmented complex `F(-1)_p ← F(0)_p ← ...` with `Σ (-1)^i ∂_i`,
/// level `n` in degree `n + 1`.
pub fn levelwise_complex(f: &AugChainFunctor, p: i64) -> Result<ChainComplex> {
    let ranks = (-1..=f.top as i64).map(|n| f.obj(n).rank(p)).collect();
    ChainComplex::from_parts(Ring::Int, 0, ranks, |d| {
        let n = d - 1;
        (n >= 0).then(|| {
            let (src, dst) = (f.obj(n), f.obj(n - 1));
            let mut a = SparseIntMatrix::zeros(dst.rank(p), src.rank(p));
            for i in 0..=n as usize {
                let fi = f.face(n as usize, i).at_shaped(p, dst.rank(p), src.rank(p));
                a = if i % 2 == 0 { a.add(&fi) } else { a.sub(&fi) };
            }
            a
        })
    })
}

/// Whether each chain degree of `F` is a resolution through level `top - 1`.
pub fn resolution_hypothesis(f: &AugChainFunctor) -> Result<Option<(i64, i64)>> {
    let (lo, hi) = f.degrees();
    for p in lo..=hi {
        let c = levelwise_complex(f, p)?;
        for n in -1..f.top as i64 {
            if !c.homology(n + 1).is_zero() {
                return Ok(Some((p, n)));
            }
        }
    }
    Ok(None)
}

/// Checks the hypothesis first; the conclusion is only examined when it holds.
pub fn compare_fibers(f: &AugChainFunctor) -> Result<FiberComparison> {
    let mut rep = FiberComparison { hypothesis_failure: resolution_hypothesis(f)?, ..Default::default() };
    if !rep.hypothesis_holds() {
        return Ok(rep);
    }
    for n in -1..=f.top as i64 {
        for j in -1..=n {
            let q = build_cube(f, j, n)?;
            if let Some(msg) = fiber_defect(&q)? {
                rep.conclusion_failures.push(format!("j = {j}, n = {n}: {msg}"));
            }
            rep.cubes_checked += 1;
        }
    }
    Ok(rep)
}

/// `None` when the strict fiber includes quasi-isomorphically (integrally).
pub fn fiber_defect(q: &Cube) -> Result<Option<String>> {
    let fib = iterated_fiber(q)?;
    let hf = &fib.hf.complex;
    let (lo, hi) = span(&[(fib.complex.lo(), fib.complex.hi()), (hf.lo(), hf.hi())]);
    for m in lo..=hi {
        let (a, b) = (fib.complex.homology(m), hf.homology(m));
        if !a.same_group(&b) {
            return Ok(Some(format!("H_{m} of the fiber is {a} but of the homotopy fiber {b}")));
        }
    }
    let c = cone(&fib.inclusion, &fib.complex, hf)?;
    if !c.is_acyclic() {
        return Ok(Some("inclusion is not a quasi-isomorphism".into()));
    }
    Ok(None)
}

/// Rational rank duality between the total fiber and cofiber of a cube.
pub fn duality_holds(q: &Cube) -> Result<bool> {
    let hf = iterated_homotopy_fiber(q)?.complex.with_ring(Ring::Rat);
    let cof = super::cube::iterated_homotopy_cofiber(q)?.complex.with_ring(Ring::Rat);
    let d = q.dirs as i64;
    let (lo, hi) = span(&[(hf.lo(), hf.hi()), (cof.lo() - d, cof.hi() - d)]);
    Ok((lo..=hi).all(|m| hf.homology(m).betti == cof.homology(m + d).betti))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::functor::{degeneracy_split, staircase};

    #[test]
    fn base_sequence_is_the_augmentation() {
        let f = AugChainFunctor::cech(&[vec![1, 2]], 2).unwrap();
        let s = fibration_sequence(&f, -1, 0).unwrap();
        assert_eq!(s.t1.complex, *f.obj(0));
        assert_eq!(s.t2.complex, *f.obj(-1));
        assert!(s.les.is_exact());
    }

    #[test]
    fn staircase_filtration() {
        let f = degeneracy_split(&staircase(), 3).unwrap();
        f.check().unwrap();
        assert!(resolution_hypothesis(&f).unwrap().is_none());
        let r = filtration(&f, 1, 2).unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(r.stage_dims(), vec![0, 1]);
        let o = filtration_oracle(&f, 1, 2).unwrap();
        for (a, b) in r.stages.iter().zip(&o) {
            assert!(same_subspace(a, b, r.dim));
        }
    }

    #[test]
    fn constant_functor() {
        let c = ChainComplex::from_parts(Ring::Int, 0, vec![1, 2], |_| None).unwrap();
        let f = AugChainFunctor::constant(&c, 3);
        let r = filtration(&f, 1, 2).unwrap();
        assert_eq!(r.stage_dims(), vec![2, 2]);
        let cmp = compare_fibers(&f).unwrap();
        assert!(cmp.confirmed(), "{cmp:?}");
    }

    #[test]
    fn cech_fibers() {
        let f = AugChainFunctor::cech(&[vec![2, -1], vec![1, 1]], 3).unwrap();
        let cmp = compare_fibers(&f).unwrap();
        assert!(cmp.confirmed(), "{cmp:?}");
        for n in 1..=3 {
            for j in -1..n {
                assert!(fibration_sequence(&f, j, n).unwrap().les.is_exact());
            }
        }
    }
}
