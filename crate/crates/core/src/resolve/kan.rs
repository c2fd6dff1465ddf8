//! The Kan loop group `G(X)`: level `n` is free on the `(n+1)`-simplices of
//! `X` that are not in the image of `s_0`, with
//! `∂_0 τ(x) = τ(d_1 x) τ(d_0 x)^{-1}`, `∂_i τ(x) = τ(d_{i+1} x)` (`i >= 1`),
//! `s_i τ(x) = τ(s_{i+1} x)` and `τ(s_0 y) = 1`.

use std::collections::HashMap;

use super::nerve::{bar_degen, bar_face, nerve, Nerve, ReducedSimplicialSet};
use crate::error::{Error, Result};
use crate::freegrp::{DiscreteGroup, FiniteGroup, GroupElt, Word};
use crate::simp::{FreeLevel, FreeSimplicialGroup};

/// Generator numbering of one level: simplex index of `X_{n+1}` to generator.
#[derive(Clone, Debug)]
pub struct KanIndex {
    /// `gen_of[n][x]` for `x ∈ X_{n+1}`
    pub gen_of: Vec<Vec<Option<usize>>>,
    /// `simplex_of[n][g]`
    pub simplex_of: Vec<Vec<usize>>,
}

impl KanIndex {
    pub fn tau(&self, n: usize, x: usize) -> Word {
        match self.gen_of[n][x] {
            Some(g) => Word::gen(g),
            None => Word::identity(),
        }
    }
}

/// Kan loop group of a reduced simplicial set, truncated at level `top`
/// (needs `X` through degree `top + 1`). `augment(x)` gives the image in `pi`
/// of the 1-simplex `x`.
pub fn kan_loop_group(
    x: &ReducedSimplicialSet,
    top: usize,
    pi: DiscreteGroup,
    augment: impl Fn(usize) -> GroupElt,
    name: impl Fn(usize, usize) -> String,
) -> Result<(FreeSimplicialGroup, KanIndex)> {
    if x.counts[0] != 1 {
        return Err(Error::Precondition("the simplicial set is not reduced".into()));
    }
    if x.top() < top + 1 {
        return Err(Error::Truncation { degree: top as i64 + 1, top: x.top() as i64 });
    }
    let mut gen_of = Vec::new();
    let mut simplex_of = Vec::new();
    for n in 0..=top {
        let mut is_s0 = vec![false; x.counts[n + 1]];
        for y in 0..x.counts[n] {
            is_s0[x.degens[n][0][y]] = true;
        }
        let mut g_of = vec![None; x.counts[n + 1]];
        let mut s_of = Vec::new();
        for (s, deg) in is_s0.iter().enumerate() {
            if !deg {
                g_of[s] = Some(s_of.len());
                s_of.push(s);
            }
        }
        gen_of.push(g_of);
        simplex_of.push(s_of);
    }
    let idx = KanIndex { gen_of, simplex_of };
    let mut levels = Vec::new();
    for n in 0..=top {
        let gens = &idx.simplex_of[n];
        let faces = if n == 0 {
            vec![]
        } else {
            (0..=n)
                .map(|i| {
                    gens.iter()
                        .map(|&s| {
                            if i == 0 {
                                let a = idx.tau(n - 1, x.faces[n + 1][1][s]);
                                let b = idx.tau(n - 1, x.faces[n + 1][0][s]);
                                a.mul(&b.inv())
                            } else {
                                idx.tau(n - 1, x.faces[n + 1][i + 1][s])
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let degens = if n == top {
            vec![]
        } else {
            (0..=n)
                .map(|j| gens.iter().map(|&s| idx.tau(n + 1, x.degens[n + 1][j + 1][s])).collect())
                .collect()
        };
        levels.push(FreeLevel { names: gens.iter().map(|&s| name(n + 1, s)).collect(), faces, degens });
    }
    let augmentation = idx.simplex_of[0].iter().map(|&s| augment(s)).collect();
    Ok((
        FreeSimplicialGroup { levels, pi: Some(pi), augmentation, exact_through: None },
        idx,
    ))
}

/// The Kan loop group of `BG` for a finite group, a free resolution of `G`.
#[derive(Clone, Debug)]
pub struct BarLoopGroup {
    pub nerve: Nerve,
    pub group: FreeSimplicialGroup,
    pub index: KanIndex,
}

impl BarLoopGroup {
    pub fn new(g: &FiniteGroup, top: usize) -> Result<Self> {
        let nv = nerve(g, top + 1)?;
        let nv2 = nv.clone();
        let (mut group, index) = kan_loop_group(
            &nv.set,
            top,
            DiscreteGroup::Finite(g.clone()),
            |s| GroupElt::Fin(nv.decode(1, s)[0]),
            |m, s| {
                let t = nv2.decode(m, s);
                format!("t({})", t.iter().map(|&a| g.label(a)).collect::<Vec<_>>().join(","))
            },
        )?;
        group.exact_through = Some(usize::MAX);
        Ok(BarLoopGroup { nerve: nv, group, index })
    }

    /// The simplex tuple behind a level-`n` generator.
    pub fn tuple(&self, n: usize, gen: usize) -> Vec<usize> {
        self.nerve.decode(n + 1, self.index.simplex_of[n][gen])
    }

    /// `τ(x)` for a tuple of `n + 1` group elements.
    pub fn tau(&self, t: &[usize]) -> Word {
        self.index.tau(t.len() - 1, self.nerve.encode(t))
    }
}

/// `G(Bπ)` for a possibly infinite `π`, with generators created on demand.
#[derive(Clone, Debug)]
pub struct LazyBarLoop {
    pub pi: DiscreteGroup,
    ids: HashMap<Vec<GroupElt>, usize>,
    keys: Vec<Vec<GroupElt>>,
}

impl LazyBarLoop {
    pub fn new(pi: DiscreteGroup) -> Self {
        LazyBarLoop { pi, ids: HashMap::new(), keys: Vec::new() }
    }

    /// The simplex behind generator `id`.
    pub fn key(&self, id: usize) -> &[GroupElt] {
        &self.keys[id]
    }

    pub fn tau(&mut self, x: &[GroupElt]) -> Word {
        assert!(!x.is_empty());
        if self.pi.is_identity(&x[0]) {
            return Word::identity();
        }
        let next = self.keys.len();
        let id = *self.ids.entry(x.to_vec()).or_insert(next);
        if id == next {
            self.keys.push(x.to_vec());
        }
        Word::gen(id)
    }

    pub fn face(&mut self, i: usize, w: &Word) -> Word {
        let mut imgs: HashMap<usize, Word> = HashMap::new();
        for &(g, _) in w.runs() {
            if imgs.contains_key(&g) {
                continue;
            }
            let x = self.keys[g].clone();
            let img = if i == 0 {
                let a = self.tau(&bar_face(&self.pi.clone(), &x, 1));
                let b = self.tau(&bar_face(&self.pi.clone(), &x, 0));
                a.mul(&b.inv())
            } else {
                self.tau(&bar_face(&self.pi.clone(), &x, i + 1))
            };
            imgs.insert(g, img);
        }
        let mut out = Word::identity();
        for &(g, e) in w.runs() {
            out.mul_assign(&imgs[&g].pow(e));
        }
        out
    }

    pub fn degen(&mut self, j: usize, w: &Word) -> Word {
        let mut out = Word::identity();
        for &(g, e) in w.runs() {
            let x = self.keys[g].clone();
            let img = self.tau(&bar_degen(&self.pi.clone(), &x, j + 1));
            out.mul_assign(&img.pow(e));
        }
        out
    }

    /// Augmentation of a level-0 word.
    pub fn augment(&self, w: &Word) -> GroupElt {
        let mut acc = self.pi.identity();
        for &(g, e) in w.runs() {
            let x = &self.keys[g][0];
            let y = if e < 0 { self.pi.inv(x) } else { x.clone() };
            for _ in 0..e.unsigned_abs() {
                acc = self.pi.mul(&acc, &y);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simp::{check_augmentation, check_simplicial_identities};

    #[test]
    fn ranks_and_identities() {
        let z3 = BarLoopGroup::new(&FiniteGroup::cyclic(3), 3).unwrap();
        for n in 0..=3 {
            assert_eq!(z3.group.rank(n), 3usize.pow(n as u32 + 1) - 3usize.pow(n as u32));
        }
        assert!(check_simplicial_identities(&z3.group).passed());
        assert!(check_augmentation(&z3.group).passed());
        let z2 = BarLoopGroup::new(&FiniteGroup::cyclic(2), 1).unwrap();
        assert_eq!(z2.group.rank(0), 1);
        assert_eq!(z2.group.augmentation, vec![GroupElt::Fin(1)]);
    }
}
