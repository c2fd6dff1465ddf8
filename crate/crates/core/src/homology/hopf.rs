//! Degree-2 classes from Moore cycles and Hopf witnesses `w ∈ R ∩ [F, F]`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::e_complex::{e_chain, EComplex};
use crate::chainlab::complex::ClassCoords;
use crate::chainlab::HomologyBasis;
use crate::error::{Error, Result};
use crate::freegrp::{exponent_vector, Word};
use crate::resolve::PresentationResolution;
use crate::simp::{moore_member, Augmented, FreeSimplicialGroup, SimplicialGroup};

/// Class in `H_2` of a level-1 element with `∂_0 z = 1`, read through `E_2`.
pub fn dbar_class(gamma: &FreeSimplicialGroup, e: &EComplex, z: &Word) -> Result<ClassCoords> {
    if !moore_member(gamma, 1, 0, z)? {
        return Err(Error::Precondition("representative is not in the Moore subgroup (∂_0 z != 1)".into()));
    }
    let chain = e_chain(gamma, 2, z);
    let basis: HomologyBasis = e.complex.homology_basis(2);
    basis.classify(&chain)
}

/// `w = Π u_k r_{i_k}^{e_k} u_k^{-1}` in the free group on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfWitness {
    /// `(conjugator, relator index, exponent)`
    pub factors: Vec<(Word, usize, i64)>,
}

impl HopfWitness {
    pub fn word(&self, res: &PresentationResolution) -> Word {
        let rels = &res.presentation.relators;
        let mut w = Word::identity();
        for (u, k, e) in &self.factors {
            w.mul_assign(&rels[*k].pow(*e).conjugate_by(u));
        }
        w
    }

    /// The level-1 lift `Π s_0(u_k) r_k^{e_k} s_0(u_k)^{-1}`.
    pub fn lift(&self, res: &PresentationResolution) -> Result<Word> {
        let gamma = &res.group;
        let first_relator_cell = res.presentation.free.rank();
        let mut z = Word::identity();
        for (u, k, e) in &self.factors {
            if *k >= res.presentation.relators.len() {
                return Err(Error::Precondition(format!("no relator r{}", k + 1)));
            }
            let r = Word::gen(res.gen_index(1, first_relator_cell + k, &[0, 1]));
            z.mul_assign(&r.pow(*e).conjugate_by(&gamma.degen(0, 0, u)?));
        }
        Ok(z)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfCheck {
    pub witness: String,
    pub free: Vec<String>,
    pub generator: bool,
    pub matches: bool,
}

/// Checks membership of each witness in `R ∩ [F, F]`, maps it to `H_2` and
/// compares with `expected` free coordinates (or, when absent, with "is a generator").
pub fn hopf_check(
    res: &PresentationResolution,
    e: &EComplex,
    witnesses: &[(HopfWitness, Option<Vec<BigInt>>)],
) -> Result<Vec<HopfCheck>> {
    let gamma = &res.group;
    let mut out = Vec::new();
    for (wit, expected) in witnesses {
        let w = wit.word(res);
        let name = res.presentation.free.format(&w);
        if !gamma.pi().is_identity(&gamma.augment(&w)) {
            return Err(Error::Precondition(format!("witness {name} is not in R")));
        }
        if exponent_vector(res.presentation.free.rank(), &w).iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition(format!("witness {name} is not in [F, F]")));
        }
        let z = wit.lift(res)?;
        debug_assert_eq!(gamma.face(1, 1, &z)?, w);
        let coords = dbar_class(gamma, e, &z)?;
        let generator = HomologyBasis::is_primitive(&coords) && coords.torsion.iter().all(|(_, x)| x.is_zero());
        let matches = match expected {
            Some(v) => &coords.free == v,
            None => generator,
        };
        out.push(HopfCheck {
            witness: name,
            free: coords.free.iter().map(|x| x.to_string()).collect(),
            generator,
            matches,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainlab::Ring;
    use crate::homology::e_complex::e_complex;
    use crate::resolve::{truncated_resolution, Presentation};

    #[test]
    fn torus_relator_generates() {
        let p = Presentation::new(&["a", "b"], &["aba^-1b^-1"]).unwrap();
        let r = truncated_resolution(&p, 3).unwrap();
        let e = e_complex(&r.group, Ring::Int, 2).unwrap();
        let wit = HopfWitness { factors: vec![(Word::identity(), 0, 1)] };
        let checks = hopf_check(&r, &e, &[(wit, None)]).unwrap();
        assert!(checks[0].matches);
        // a conjugate gives the same class, s_0 of anything gives zero
        let conj = HopfWitness { factors: vec![(Word::gen(0), 0, 1)] };
        let z = conj.lift(&r).unwrap();
        let c = dbar_class(&r.group, &e, &z).unwrap();
        assert!(HomologyBasis::is_primitive(&c));
        let r1 = HopfWitness { factors: vec![(Word::identity(), 0, 1)] }.lift(&r).unwrap();
        assert!(dbar_class(&r.group, &e, &z.mul(&r1.inv())).unwrap().is_zero());
        let deg = r.group.degen(0, 0, &Word::gen(1)).unwrap();
        assert!(dbar_class(&r.group, &e, &deg).is_err());
    }
}
