use std::fmt::Debug;

use super::op::{OpSymbol, SimplicialOp};
use crate::error::{Error, Result};
use crate::freegrp::{DiscreteGroup, FiniteGroup, GroupElt, Word};

/// A simplicial group truncated at level `top()`: faces exist on levels
/// `1..=top`, degeneracies on levels `0..top`.
pub trait SimplicialGroup {
    type Elt: Clone + Eq + Debug;

    fn top(&self) -> usize;
    fn identity(&self, n: usize) -> Self::Elt;
    fn mul(&self, n: usize, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn inv(&self, n: usize, a: &Self::Elt) -> Self::Elt;
    /// `∂_i` on level `n`, assuming `n` and `i` are in range.
    fn face_raw(&self, n: usize, i: usize, x: &Self::Elt) -> Self::Elt;
    /// `s_j` on level `n`, assuming `n` and `j` are in range.
    fn degen_raw(&self, n: usize, j: usize, x: &Self::Elt) -> Self::Elt;
    /// Elements on which identities are checked: generators of free levels,
    /// every element of finite levels.
    fn test_elements(&self, n: usize) -> Vec<Self::Elt>;
    fn format(&self, n: usize, x: &Self::Elt) -> String;

    fn is_identity(&self, n: usize, x: &Self::Elt) -> bool {
        *x == self.identity(n)
    }

    fn face(&self, n: usize, i: usize, x: &Self::Elt) -> Result<Self::Elt> {
        if n == 0 || n > self.top() {
            return Err(Error::Truncation { degree: n as i64, top: self.top() as i64 });
        }
        if i > n {
            return Err(Error::Precondition(format!("face d{i} on level {n}")));
        }
        Ok(self.face_raw(n, i, x))
    }

    fn degen(&self, n: usize, j: usize, x: &Self::Elt) -> Result<Self::Elt> {
        if n >= self.top() {
            return Err(Error::Truncation { degree: n as i64 + 1, top: self.top() as i64 });
        }
        if j > n {
            return Err(Error::Precondition(format!("degeneracy s{j} on level {n}")));
        }
        Ok(self.degen_raw(n, j, x))
    }

    /// Applies a symbol string right to left starting on level `n`.
    fn apply_symbols(&self, n: usize, symbols: &[OpSymbol], x: &Self::Elt) -> Result<Self::Elt> {
        let mut level = n;
        let mut y = x.clone();
        for s in symbols.iter().rev() {
            match *s {
                OpSymbol::Face(i) => {
                    y = self.face(level, i, &y)?;
                    level -= 1;
                }
                OpSymbol::Degen(j) => {
                    y = self.degen(level, j, &y)?;
                    level += 1;
                }
            }
        }
        Ok(y)
    }

    fn apply_op(&self, op: &SimplicialOp, x: &Self::Elt) -> Result<Self::Elt> {
        self.apply_symbols(op.source(), &op.normal_form(), x)
    }

    fn product(&self, n: usize, xs: &[Self::Elt]) -> Self::Elt {
        xs.iter().fold(self.identity(n), |acc, x| self.mul(n, &acc, x))
    }
}

/// A level-−1 group with the augmentation of level 0.
pub trait Augmented: SimplicialGroup {
    fn pi(&self) -> &DiscreteGroup;
    fn augment(&self, x: &Self::Elt) -> GroupElt;
}

/// One level of a free simplicial group: generator names and the images of
/// every generator under each face and degeneracy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLevel {
    pub names: Vec<String>,
    /// `faces[i][g]` is `∂_i(x_g)` in the level below.
    pub faces: Vec<Vec<Word>>,
    /// `degens[j][g]` is `s_j(x_g)` in the level above (empty on the top level).
    pub degens: Vec<Vec<Word>>,
}

impl FreeLevel {
    pub fn rank(&self) -> usize {
        self.names.len()
    }
}

/// A truncated simplicial group that is free on every level, optionally
/// augmented over a group with solvable word problem.
#[derive(Clone, Debug)]
pub struct FreeSimplicialGroup {
    pub levels: Vec<FreeLevel>,
    pub pi: Option<DiscreteGroup>,
    /// Images of the level-0 generators in `pi`.
    pub augmentation: Vec<GroupElt>,
    /// Largest degree through which the homology of this resolution is certified.
    pub exact_through: Option<usize>,
}

impl FreeSimplicialGroup {
    pub fn rank(&self, n: usize) -> usize {
        self.levels[n].rank()
    }

    pub fn level(&self, n: usize) -> &FreeLevel {
        &self.levels[n]
    }

    pub fn face_images(&self, n: usize, i: usize) -> &[Word] {
        &self.levels[n].faces[i]
    }

    pub fn degen_images(&self, n: usize, j: usize) -> &[Word] {
        &self.levels[n].degens[j]
    }

    /// Replaces one degeneracy image; used to build negative controls.
    pub fn inject_fault(&mut self, n: usize, j: usize, g: usize, w: Word) {
        self.levels[n].degens[j][g] = w;
    }

    /// Truncates to a lower top level.
    pub fn truncate(&self, top: usize) -> FreeSimplicialGroup {
        let mut levels: Vec<FreeLevel> = self.levels[..=top].to_vec();
        levels[top].degens.clear();
        FreeSimplicialGroup { levels, ..self.clone() }
    }

    pub fn random_word<R: rand::Rng + ?Sized>(&self, rng: &mut R, n: usize, max_len: usize) -> Word {
        Word::random(rng, self.rank(n), max_len)
    }
}

impl SimplicialGroup for FreeSimplicialGroup {
    type Elt = Word;

    fn top(&self) -> usize {
        self.levels.len() - 1
    }

    fn identity(&self, _n: usize) -> Word {
        Word::identity()
    }

    fn mul(&self, _n: usize, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }

    fn inv(&self, _n: usize, a: &Word) -> Word {
        a.inv()
    }

    fn face_raw(&self, n: usize, i: usize, x: &Word) -> Word {
        x.substitute(&self.levels[n].faces[i])
    }

    fn degen_raw(&self, n: usize, j: usize, x: &Word) -> Word {
        x.substitute(&self.levels[n].degens[j])
    }

    fn test_elements(&self, n: usize) -> Vec<Word> {
        (0..self.rank(n)).map(Word::gen).collect()
    }

    fn format(&self, n: usize, x: &Word) -> String {
        x.display(&self.levels[n].names).to_string()
    }
}

impl Augmented for FreeSimplicialGroup {
    fn pi(&self) -> &DiscreteGroup {
        self.pi.as_ref().expect("augmented simplicial group")
    }

    fn augment(&self, x: &Word) -> GroupElt {
        let pi = self.pi();
        x.evaluate(&self.augmentation, pi.identity(), |a, b| pi.mul(a, b), |a| pi.inv(a))
    }
}

/// A truncated simplicial group with finite levels, faces and degeneracies
/// tabulated on element indices.
#[derive(Clone, Debug)]
pub struct FiniteSimplicialGroup {
    pub levels: Vec<FiniteGroup>,
    /// `faces[n][i][x]`
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][j][x]`
    pub degens: Vec<Vec<Vec<usize>>>,
}

impl FiniteSimplicialGroup {
    /// Tabulates the structure maps from closures.
    pub fn from_fns(
        levels: Vec<FiniteGroup>,
        face: impl Fn(usize, usize, usize) -> usize,
        degen: impl Fn(usize, usize, usize) -> usize,
    ) -> Self {
        let top = levels.len() - 1;
        let faces = (0..=top)
            .map(|n| {
                if n == 0 {
                    vec![]
                } else {
                    (0..=n).map(|i| levels[n].elements().map(|x| face(n, i, x)).collect()).collect()
                }
            })
            .collect();
        let degens = (0..=top)
            .map(|n| {
                if n == top {
                    vec![]
                } else {
                    (0..=n).map(|j| levels[n].elements().map(|x| degen(n, j, x)).collect()).collect()
                }
            })
            .collect();
        FiniteSimplicialGroup { levels, faces, degens }
    }

    /// Every level is `g`, every structure map the identity.
    pub fn constant(g: &FiniteGroup, top: usize) -> Self {
        Self::from_fns(vec![g.clone(); top + 1], |_, _, x| x, |_, _, x| x)
    }
}

impl SimplicialGroup for FiniteSimplicialGroup {
    type Elt = usize;

    fn top(&self) -> usize {
        self.levels.len() - 1
    }

    fn identity(&self, _n: usize) -> usize {
        0
    }

    fn mul(&self, n: usize, a: &usize, b: &usize) -> usize {
        self.levels[n].mul(*a, *b)
    }

    fn inv(&self, n: usize, a: &usize) -> usize {
        self.levels[n].inv(*a)
    }

    fn face_raw(&self, n: usize, i: usize, x: &usize) -> usize {
        self.faces[n][i][*x]
    }

    fn degen_raw(&self, n: usize, j: usize, x: &usize) -> usize {
        self.degens[n][j][*x]
    }

    fn test_elements(&self, n: usize) -> Vec<usize> {
        self.levels[n].elements().collect()
    }

    fn format(&self, n: usize, x: &usize) -> String {
        self.levels[n].label(*x).to_string()
    }
}
