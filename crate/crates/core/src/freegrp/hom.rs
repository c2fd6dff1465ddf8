use num_bigint::BigInt;

use super::word::{FreeGroup, Word};
use crate::chainlab::SparseIntMatrix;
use crate::error::{Error, Result};

/// Homomorphism between free groups, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FreeGroup,
    target: FreeGroup,
    images: Vec<Word>,
}

impl GroupHom {
    pub fn new(source: FreeGroup, target: FreeGroup, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::Dimension(format!(
                "{} images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        for w in &images {
            target.check(w)?;
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(g: &FreeGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            images: (0..g.rank()).map(Word::gen).collect(),
        }
    }

    pub fn source(&self) -> &FreeGroup {
        &self.source
    }

    pub fn target(&self) -> &FreeGroup {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.source.check(w)?;
        Ok(w.substitute(&self.images))
    }

    /// `g ∘ f`, where `self = f`.
    pub fn then(&self, g: &GroupHom) -> Result<GroupHom> {
        if self.target != g.source {
            return Err(Error::GroupMismatch("composition of non-matching homomorphisms".into()));
        }
        let images = self.images.iter().map(|w| w.substitute(&g.images)).collect();
        Ok(GroupHom { source: self.source.clone(), target: g.target.clone(), images })
    }

    /// Entry `(i, j)` is the exponent sum of target generator `i` in the image of source generator `j`.
    pub fn abelianize(&self) -> SparseIntMatrix {
        abelianize_images(self.target.rank(), &self.images)
    }
}

pub fn hom_compose(g: &GroupHom, f: &GroupHom) -> Result<GroupHom> {
    f.then(g)
}

/// Abelianization matrix for a list of generator images in a free group of
/// rank `target_rank`.
pub fn abelianize_images(target_rank: usize, images: &[Word]) -> SparseIntMatrix {
    let mut m = SparseIntMatrix::zeros(target_rank, images.len());
    for (j, w) in images.iter().enumerate() {
        for &(g, e) in w.runs() {
            m.add_to(g, j, &BigInt::from(e));
        }
    }
    m
}

/// Exponent-sum vector of a word.
pub fn exponent_vector(rank: usize, w: &Word) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); rank];
    for &(g, e) in w.runs() {
        v[g] += e;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianization_column() {
        let f = FreeGroup::new(vec!["a".into(), "b".into()]).unwrap();
        let w = f.parse("aba^-1b").unwrap();
        let h = GroupHom::new(f.clone(), f.clone(), vec![w, Word::gen(1)]).unwrap();
        let m = h.abelianize();
        assert_eq!(m.column(0), vec![BigInt::from(0), BigInt::from(2)]);
        assert_eq!(GroupHom::identity(&f).abelianize(), SparseIntMatrix::identity(2));
    }
}
