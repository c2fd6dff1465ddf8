//! Pointwise checks on the simplicial abelian groups `n ↦ Z{BΓ_n}_p`.
//!
//! An element is a finite sum of `p`-tuples of level-`n` words; faces and
//! degeneracies act entrywise. `G^j_n B` is the intersection of the kernels
//! of `∂_0, ..., ∂_j`.

use rand::Rng;
use serde::Serialize;

use crate::chainlab::qlinalg::rat;
use crate::error::{Error, Result};
use crate::freegrp::{GroupRingElt, Word};
use crate::simp::{FreeSimplicialGroup, SimplicialGroup};

pub type BarElt = GroupRingElt<Vec<Word>>;

#[derive(Clone, Debug, PartialEq)]
pub struct BarChain {
    pub level: usize,
    pub p: usize,
    pub elt: BarElt,
}

impl BarChain {
    pub fn zero(level: usize, p: usize) -> Self {
        BarChain { level, p, elt: BarElt::zero() }
    }

    pub fn face(&self, gamma: &FreeSimplicialGroup, i: usize) -> Result<BarChain> {
        if self.level == 0 || i > self.level {
            return Err(Error::Precondition(format!("d{i} undefined on level {}", self.level)));
        }
        let elt = self.elt.map_keys(|t| t.iter().map(|w| gamma.face_raw(self.level, i, w)).collect());
        Ok(BarChain { level: self.level - 1, p: self.p, elt })
    }

    pub fn degen(&self, gamma: &FreeSimplicialGroup, j: usize) -> Result<BarChain> {
        if self.level >= gamma.top() || j > self.level {
            return Err(Error::Truncation { degree: self.level as i64 + 1, top: gamma.top() as i64 });
        }
        let elt = self.elt.map_keys(|t| t.iter().map(|w| gamma.degen_raw(self.level, j, w)).collect());
        Ok(BarChain { level: self.level + 1, p: self.p, elt })
    }

    pub fn sub(&self, o: &BarChain) -> BarChain {
        BarChain { level: self.level, p: self.p, elt: self.elt.sub(&o.elt) }
    }

    pub fn is_zero(&self) -> bool {
        self.elt.is_zero()
    }

    /// Whether `∂_i x = 0` for `0 <= i <= j`; for `p = 0` nothing nonzero qualifies.
    pub fn in_moore(&self, gamma: &FreeSimplicialGroup, j: usize) -> Result<bool> {
        if self.level == 0 {
            return Ok(self.is_zero());
        }
        for i in 0..=j.min(self.level) {
            if !self.face(gamma, i)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Projection onto `G^j_n B` by `(1 - s_j ∂_j) ... (1 - s_0 ∂_0)`; needs `j < level`.
    pub fn project(&self, gamma: &FreeSimplicialGroup, j: usize) -> Result<BarChain> {
        if j >= self.level {
            return Err(Error::Precondition(format!("projection onto G^{j} on level {}", self.level)));
        }
        let mut x = self.clone();
        for k in 0..=j {
            let y = x.face(gamma, k)?.degen(gamma, k)?;
            x = x.sub(&y);
        }
        Ok(x)
    }

    pub fn random<R: Rng + ?Sized>(gamma: &FreeSimplicialGroup, rng: &mut R, level: usize, p: usize, terms: usize) -> Self {
        let mut elt = BarElt::zero();
        for _ in 0..terms {
            let t: Vec<Word> = (0..p).map(|_| gamma.random_word(rng, level, 3)).collect();
            elt.add_term(t, rat(rng.gen_range(-3..=3)));
        }
        BarChain { level, p, elt }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BarSeqReport {
    pub checked: usize,
    pub failure: Option<String>,
}

impl BarSeqReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }
}

/// Section, retraction and kernel identities at bar degree `p`, for `j < n - 1`.
pub fn bar_sequence_tests<R: Rng + ?Sized>(
    gamma: &FreeSimplicialGroup,
    n: usize,
    j: usize,
    p: usize,
    samples: usize,
    rng: &mut R,
) -> Result<BarSeqReport> {
    if j + 1 >= n || n > gamma.top() {
        return Err(Error::Precondition(format!("need j < n - 1 and n <= {}, got n = {n}, j = {j}", gamma.top())));
    }
    let mut rep = BarSeqReport::default();
    for _ in 0..samples {
        // the section s_{j+1}: G^j_{n-1} B → G^j_n B
        let x = BarChain::random(gamma, rng, n - 1, p, 3).project(gamma, j)?;
        rep.expect(x.in_moore(gamma, j)?, || format!("projection left G^{j}_{} at p = {p}", n - 1));
        let s = x.degen(gamma, j + 1)?;
        rep.expect(s.in_moore(gamma, j)?, || format!("s_{} x not in G^{j}_{n}", j + 1));
        rep.expect(s.face(gamma, j + 1)? == x, || format!("∂_{} s_{} x != x", j + 1, j + 1));

        // the kernel of ∂_{j+1} on G^j_n B is G^{j+1}_n B
        let y = BarChain::random(gamma, rng, n, p, 3).project(gamma, j)?;
        let dy = y.face(gamma, j + 1)?;
        rep.expect(dy.in_moore(gamma, j)?, || format!("∂_{} y not in G^{j}_{}", j + 1, n - 1));
        let k = y.sub(&dy.degen(gamma, j + 1)?);
        rep.expect(k.in_moore(gamma, j + 1)?, || format!("y - s∂y not in G^{}_{n}", j + 1));

        // s_0 splits ∂_0
        let z = BarChain::random(gamma, rng, n - 1, p, 3);
        rep.expect(z.degen(gamma, 0)?.face(gamma, 0)? == z, || "∂_0 s_0 z != z".into());
    }
    // bar degree 0: Z{BΓ_n}_0 = Z with identity structure maps, so nothing nonzero is a Moore element
    let mut e = BarChain::zero(n, 0);
    e.elt.add_term(vec![], rat(1));
    rep.expect(!e.in_moore(gamma, 0)?, || "nonzero bar-degree-0 element accepted".into());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::FiniteGroup;
    use crate::resolve::BarLoopGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn z2_sections() {
        let b = BarLoopGroup::new(&FiniteGroup::cyclic(2), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, j) in [(2, 0), (3, 0), (3, 1)] {
            let r = bar_sequence_tests(&b.group, n, j, 2, 10, &mut rng).unwrap();
            assert!(r.passed(), "{:?}", r.failure);
        }
    }
}
