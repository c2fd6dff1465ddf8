use num_bigint::BigInt;
use rand::Rng;

use super::abelian::AbelianGroup;
use super::finite::FiniteGroup;
use super::word::{FreeGroup, Word};

/// An element of a group with decidable equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElt {
    Fin(usize),
    Ab(Vec<BigInt>),
    Free(Word),
}

/// The groups we can compute in exactly: finite (by table), finitely
/// generated abelian, and free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DiscreteGroup {
    Finite(FiniteGroup),
    Abelian(AbelianGroup),
    Free(FreeGroup),
}

impl DiscreteGroup {
    pub fn name(&self) -> String {
        match self {
            DiscreteGroup::Finite(g) => g.name().to_string(),
            DiscreteGroup::Abelian(a) => {
                let mut parts: Vec<String> = a.torsion().iter().map(|d| format!("Z/{d}")).collect();
                if a.free_rank() > 0 {
                    parts.push(format!("Z^{}", a.free_rank()));
                }
                if parts.is_empty() {
                    "trivial".into()
                } else {
                    parts.join("+")
                }
            }
            DiscreteGroup::Free(f) => format!("F{}", f.rank()),
        }
    }

    pub fn identity(&self) -> GroupElt {
        match self {
            DiscreteGroup::Finite(_) => GroupElt::Fin(0),
            DiscreteGroup::Abelian(a) => GroupElt::Ab(a.identity()),
            DiscreteGroup::Free(_) => GroupElt::Free(Word::identity()),
        }
    }

    pub fn is_identity(&self, x: &GroupElt) -> bool {
        *x == self.identity()
    }

    pub fn mul(&self, x: &GroupElt, y: &GroupElt) -> GroupElt {
        match (self, x, y) {
            (DiscreteGroup::Finite(g), GroupElt::Fin(a), GroupElt::Fin(b)) => GroupElt::Fin(g.mul(*a, *b)),
            (DiscreteGroup::Abelian(g), GroupElt::Ab(a), GroupElt::Ab(b)) => GroupElt::Ab(g.add(a, b)),
            (DiscreteGroup::Free(_), GroupElt::Free(a), GroupElt::Free(b)) => GroupElt::Free(a.mul(b)),
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn inv(&self, x: &GroupElt) -> GroupElt {
        match (self, x) {
            (DiscreteGroup::Finite(g), GroupElt::Fin(a)) => GroupElt::Fin(g.inv(*a)),
            (DiscreteGroup::Abelian(g), GroupElt::Ab(a)) => GroupElt::Ab(g.neg(a)),
            (DiscreteGroup::Free(_), GroupElt::Free(a)) => GroupElt::Free(a.inv()),
            _ => panic!("element does not belong to {}", self.name()),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            DiscreteGroup::Finite(_) => true,
            DiscreteGroup::Abelian(a) => a.is_finite(),
            DiscreteGroup::Free(f) => f.rank() == 0,
        }
    }

    /// All elements, if the group is finite with at most `bound` elements.
    pub fn elements(&self, bound: usize) -> Option<Vec<GroupElt>> {
        match self {
            DiscreteGroup::Finite(g) => (g.order() <= bound).then(|| g.elements().map(GroupElt::Fin).collect()),
            DiscreteGroup::Abelian(a) => a.elements(bound).map(|v| v.into_iter().map(GroupElt::Ab).collect()),
            DiscreteGroup::Free(f) => (f.rank() == 0).then(|| vec![GroupElt::Free(Word::identity())]),
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElt {
        match self {
            DiscreteGroup::Finite(g) => GroupElt::Fin(rng.gen_range(0..g.order())),
            DiscreteGroup::Abelian(a) => {
                let v = a
                    .moduli()
                    .iter()
                    .map(|m| match m {
                        Some(_) => BigInt::from(rng.gen_range(0..1000i64)),
                        None => BigInt::from(rng.gen_range(-4..=4i64)),
                    })
                    .collect();
                GroupElt::Ab(a.reduce(v))
            }
            DiscreteGroup::Free(f) => GroupElt::Free(Word::random(rng, f.rank(), 6)),
        }
    }

    pub fn product(&self, xs: &[GroupElt]) -> GroupElt {
        xs.iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn format(&self, x: &GroupElt) -> String {
        match (self, x) {
            (DiscreteGroup::Finite(g), GroupElt::Fin(a)) => g.label(*a).to_string(),
            (DiscreteGroup::Free(f), GroupElt::Free(w)) => f.format(w),
            (_, GroupElt::Ab(v)) => format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            _ => format!("{x:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_arith() {
        let g = DiscreteGroup::Abelian(AbelianGroup::from_orders(&[2, 2]));
        let els = g.elements(10).unwrap();
        assert_eq!(els.len(), 4);
        for x in &els {
            assert!(g.is_identity(&g.mul(x, x)));
            assert_eq!(g.inv(x), *x);
        }
        assert_eq!(g.name(), "Z/2+Z/2");
    }
}
