//! The abelianized complexes `E_*` and `Ē_*` of a free simplicial resolution.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chainlab::snf::smith_normal_form;
use crate::chainlab::{ChainComplex, HomologyGroup, Ring, SparseIntMatrix};
use crate::error::{Error, Result};
use crate::freegrp::abelianize_images;
use crate::simp::{FreeSimplicialGroup, SimplicialGroup};

/// One degree of a homology report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub degree: i64,
    pub betti: usize,
    #[serde(with = "crate::chainlab::complex::bigint_list")]
    pub torsion: Vec<BigInt>,
    /// False outside the range certified by the resolution.
    pub verified: bool,
}

impl DegreeResult {
    pub fn group(&self) -> HomologyGroup {
        HomologyGroup { degree: self.degree, betti: self.betti, torsion: self.torsion.clone() }
    }
}

/// `E_0 = Z`, `E_n = Γ_{n-1}^{ab}` with `d_n = Σ_{i<n} (-1)^i (∂_i)_*`.
#[derive(Clone, Debug)]
pub struct EComplex {
    pub complex: ChainComplex,
    /// Homology is reported in degrees `0..=max_degree`.
    pub max_degree: usize,
    pub exact_through: usize,
}

impl EComplex {
    pub fn is_verified(&self, n: usize) -> bool {
        n <= self.exact_through.saturating_add(1)
    }

    pub fn homology(&self) -> Vec<DegreeResult> {
        report(&self.complex, self.max_degree, |n| self.is_verified(n))
    }
}

fn report(c: &ChainComplex, max_degree: usize, verified: impl Fn(usize) -> bool) -> Vec<DegreeResult> {
    (0..=max_degree)
        .map(|n| {
            let h = c.homology(n as i64);
            DegreeResult { degree: n as i64, betti: h.betti, torsion: h.torsion, verified: verified(n) }
        })
        .collect()
}

/// `d^E_n` as a matrix from level `n-1` generators to level `n-2` generators.
pub fn e_differential(gamma: &FreeSimplicialGroup, n: usize) -> SparseIntMatrix {
    let m = n - 1;
    let mut d = SparseIntMatrix::zeros(gamma.rank(m - 1), gamma.rank(m));
    for i in 0..=m {
        let a = abelianize_images(gamma.rank(m - 1), gamma.face_images(m, i));
        d = if i % 2 == 0 { d.add(&a) } else { d.sub(&a) };
    }
    d
}

/// The E-complex through homological degree `max_degree` (uses levels up to `max_degree`).
pub fn e_complex(gamma: &FreeSimplicialGroup, ring: Ring, max_degree: usize) -> Result<EComplex> {
    if gamma.top() < max_degree {
        return Err(Error::Truncation { degree: max_degree as i64, top: gamma.top() as i64 });
    }
    let mut ranks = vec![1];
    ranks.extend((0..=max_degree).map(|m| gamma.rank(m)));
    let complex = ChainComplex::from_parts(ring, 0, ranks, |n| (n >= 2).then(|| e_differential(gamma, n as usize)))?;
    Ok(EComplex { complex, max_degree, exact_through: gamma.exact_through.unwrap_or(0) })
}

/// `Ē_*`: `E_*` modulo the images of the degeneracies, with the quotient
/// maps `E_n → Ē_n` kept.
#[derive(Clone, Debug)]
pub struct EBarComplex {
    pub complex: ChainComplex,
    pub quotients: Vec<SparseIntMatrix>,
    pub max_degree: usize,
    pub exact_through: usize,
}

impl EBarComplex {
    pub fn homology(&self) -> Vec<DegreeResult> {
        report(&self.complex, self.max_degree, |n| n <= self.exact_through.saturating_add(1))
    }
}

/// Span of `(s_j)_*` in `E_n`, `n >= 2`, as columns.
fn degenerate_span(gamma: &FreeSimplicialGroup, n: usize) -> SparseIntMatrix {
    let m = n - 1;
    let cols: Vec<Vec<BigInt>> = (0..m)
        .flat_map(|j| {
            let a = abelianize_images(gamma.rank(m), gamma.degen_images(m - 1, j));
            (0..a.cols()).map(move |c| a.column(c)).collect::<Vec<_>>()
        })
        .collect();
    SparseIntMatrix::from_columns(gamma.rank(m), &cols)
}

pub fn ebar_complex(gamma: &FreeSimplicialGroup, e: &EComplex) -> Result<EBarComplex> {
    let top = e.max_degree + 1;
    let mut quotients = Vec::new();
    let mut lifts = Vec::new();
    let mut spans = Vec::new();
    for n in 0..=top {
        let r = e.complex.rank(n as i64);
        if n < 2 {
            quotients.push(SparseIntMatrix::identity(r));
            lifts.push(SparseIntMatrix::identity(r));
            spans.push(SparseIntMatrix::zeros(r, 0));
            continue;
        }
        let span = degenerate_span(gamma, n);
        let s = smith_normal_form(&span, true);
        if s.diagonal.iter().any(|d| !d.is_one()) {
            return Err(Error::Precondition(format!("degenerate span in E_{n} is not a direct summand")));
        }
        let rho = s.rank();
        let t = s.transforms.expect("requested");
        let q: Vec<Vec<BigInt>> = t.u[rho..].to_vec();
        let l: Vec<Vec<BigInt>> = t.u_inv.iter().map(|row| row[rho..].to_vec()).collect();
        quotients.push(SparseIntMatrix::from_dense_big(r - rho, r, &q));
        lifts.push(SparseIntMatrix::from_dense_big(r, r - rho, &l));
        spans.push(span);
    }
    let ranks: Vec<usize> = quotients.iter().map(|q| q.rows()).collect();
    for n in 1..=top {
        let image = quotients[n - 1].mul(&e.complex.d(n as i64)).mul(&spans[n]);
        if !image.is_zero() {
            return Err(Error::NotAChainMap(format!("d^E_{n} does not descend to the normalized quotient")));
        }
    }
    let complex = ChainComplex::from_parts(e.complex.ring(), 0, ranks, |n| {
        let n = n as usize;
        (n >= 1).then(|| quotients[n - 1].mul(&e.complex.d(n as i64)).mul(&lifts[n]))
    })?;
    Ok(EBarComplex { complex, quotients, max_degree: e.max_degree, exact_through: e.exact_through })
}

/// Abelianized chain of a level-`(n-1)` word in `E_n`.
pub fn e_chain(gamma: &FreeSimplicialGroup, n: usize, w: &crate::freegrp::Word) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); gamma.rank(n - 1)];
    for &(g, e) in w.runs() {
        v[g] += e;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::FiniteGroup;
    use crate::resolve::{truncated_resolution, BarLoopGroup, Presentation};

    #[test]
    fn z2_through_three() {
        let b = BarLoopGroup::new(&FiniteGroup::cyclic(2), 3).unwrap();
        let e = e_complex(&b.group, Ring::Int, 3).unwrap();
        let h: Vec<String> = e.homology().iter().map(|d| d.group().to_string()).collect();
        assert_eq!(h, vec!["Z", "Z/2", "0", "Z/2"]);
        let eb = ebar_complex(&b.group, &e).unwrap();
        for (x, y) in e.homology().iter().zip(eb.homology()) {
            assert_eq!(x, &y);
        }
        assert_eq!(eb.complex.rank(3), 1);
    }

    #[test]
    fn circle() {
        let p = Presentation::new(&["a"], &[]).unwrap();
        let r = truncated_resolution(&p, 3).unwrap();
        let e = e_complex(&r.group, Ring::Int, 3).unwrap();
        let h: Vec<String> = e.homology().iter().map(|d| d.group().to_string()).collect();
        assert_eq!(h, vec!["Z", "Z", "0", "0"]);
        let eb = ebar_complex(&r.group, &e).unwrap();
        assert_eq!(eb.complex.rank(2), 0);
    }
}
