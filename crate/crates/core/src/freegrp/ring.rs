//! Group rings with rational coefficients and finite support.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::word::Word;
use crate::chainlab::qlinalg::Rat;
use crate::error::{Error, Result};

/// `Σ c_k [k]`, keys in normal form, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElt<K: Ord> {
    terms: BTreeMap<K, Rat>,
}

impl<K: Ord + Clone> Default for GroupRingElt<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone> GroupRingElt<K> {
    pub fn zero() -> Self {
        GroupRingElt { terms: BTreeMap::new() }
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rat::one())
    }

    pub fn term(k: K, c: Rat) -> Self {
        let mut x = Self::zero();
        x.add_term(k, c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Rat)>) -> Self {
        let mut x = Self::zero();
        for (k, c) in terms {
            x.add_term(k, c);
        }
        x
    }

    pub fn add_term(&mut self, k: K, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: &K) -> Rat {
        self.terms.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (k, c) in &o.terms {
            x.add_term(k.clone(), c.clone());
        }
        x
    }

    pub fn neg(&self) -> Self {
        GroupRingElt { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        GroupRingElt { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    /// Product, with `mul` the multiplication of basis elements.
    pub fn mul_with(&self, o: &Self, mul: impl Fn(&K, &K) -> K) -> Self {
        let mut x = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                x.add_term(mul(a, b), c * d);
            }
        }
        x
    }

    /// Linear extension of a map on basis elements.
    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> GroupRingElt<L> {
        GroupRingElt::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Linear extension of a map from basis elements to ring elements.
    pub fn flat_map<L: Ord + Clone>(&self, f: impl Fn(&K) -> GroupRingElt<L>) -> GroupRingElt<L> {
        let mut out = GroupRingElt::zero();
        for (k, c) in &self.terms {
            for (l, d) in f(k).terms {
                out.add_term(l, c * d);
            }
        }
        out
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c)
    }
}

impl GroupRingElt<Word> {
    pub fn one() -> Self {
        Self::basis(Word::identity())
    }

    /// `g - 1`
    pub fn minus_one(g: &Word) -> Self {
        Self::basis(g.clone()).sub(&Self::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_with(o, Word::mul)
    }

    /// Class in `I/I^2 = G_ab ⊗ Q` of an augmentation-ideal element of a free
    /// group ring: `Σ c_g (g - 1) ↦ Σ c_g [g]`.
    pub fn iq_class(&self, rank: usize) -> Result<Vec<Rat>> {
        if !self.augmentation().is_zero() {
            return Err(Error::Precondition(format!(
                "augmentation is {}, not in the augmentation ideal",
                self.augmentation()
            )));
        }
        let mut v = vec![Rat::zero(); rank];
        for (w, c) in &self.terms {
            for &(g, e) in w.runs() {
                if g >= rank {
                    return Err(Error::GroupMismatch(format!("generator {g} outside rank {rank}")));
                }
                v[g] += c * Rat::from_integer(e.into());
            }
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainlab::qlinalg::rat;

    #[test]
    fn augmentation_ideal_classes() {
        let a = Word::gen(0);
        let x = GroupRingElt::minus_one(&a);
        assert!(x.mul(&x).iq_class(1).unwrap().iter().all(Zero::is_zero));
        let a2 = GroupRingElt::minus_one(&a.pow(2));
        assert_eq!(a2.iq_class(1).unwrap(), vec![rat(2)]);
        assert!(GroupRingElt::<Word>::one().iq_class(1).is_err());
    }
}
