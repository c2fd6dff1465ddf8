//! Seeded random checks over degeneracy-split functors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cube::build_cube;
use super::fibration::{compare_fibers, duality_holds, fibration_sequence, filtration, filtration_oracle, induced_filtration_map, same_subspace};
use super::functor::{
    assemble, conjugate, conjugate_map, degeneracy_split, induced_transformation, piece_map, random_bases, random_pieces, AugChainFunctor,
    Piece,
};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CubeSuiteKind {
    /// Everything.
    Cube,
    /// Filtration, oracle and naturality only.
    Filtration,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CubeSuiteReport {
    pub trials: usize,
    pub functors_checked: usize,
    pub squares_checked: usize,
    pub sequences_exact: usize,
    pub alpha_surjective: usize,
    pub duality_holds: usize,
    /// Trials built as levelwise resolutions, and those confirmed.
    pub resolving_trials: usize,
    pub fibers_confirmed: usize,
    /// Negative controls and those whose hypothesis check failed.
    pub control_trials: usize,
    pub controls_rejected: usize,
    pub filtrations: usize,
    pub filtrations_monotone: usize,
    pub filtrations_match_oracle: usize,
    pub naturality_trials: usize,
    pub containment_holds: usize,
    pub failures: Vec<String>,
}

impl CubeSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, t: usize, msg: impl std::fmt::Display) {
        self.failures.push(format!("trial {t}: {msg}"));
    }
}

/// One random functor: `(F, pieces, p_max, k_max, resolving)`.
struct Trial {
    f: AugChainFunctor,
    pieces: Vec<Piece>,
    bases: Vec<Vec<(crate::chainlab::SparseIntMatrix, crate::chainlab::SparseIntMatrix)>>,
    p_max: usize,
    k_max: usize,
    resolving: bool,
}

fn random_trial(rng: &mut ChaCha8Rng, resolving: bool) -> Result<Trial> {
    let top = rng.gen_range(2..=4usize);
    let k_max = rng.gen_range(0..=(top - 1).min(2));
    let p_max = rng.gen_range(0..=2usize);
    let pieces = random_pieces(rng, p_max, k_max, 3, resolving);
    let pc = assemble(&pieces, p_max, k_max);
    let bases = random_bases(rng, &pc.dc);
    let dc = conjugate(&pc.dc, &bases);
    let f = degeneracy_split(&dc, top)?;
    Ok(Trial { f, pieces, bases, p_max, k_max, resolving })
}

/// The functor of a single seeded trial: a levelwise resolution when
/// `resolving`, otherwise one carrying an obstruction piece.
pub fn random_functor(seed: u64, resolving: bool) -> Result<AugChainFunctor> {
    Ok(random_trial(&mut ChaCha8Rng::seed_from_u64(seed), resolving)?.f)
}

/// Target pieces and assignments for a random map out of `pieces`.
fn random_target(rng: &mut ChaCha8Rng, pieces: &[Piece], p_max: usize, k_max: usize) -> (Vec<Piece>, Vec<(usize, usize, i64)>) {
    let mut out = Vec::new();
    let mut assign = Vec::new();
    for (a, pc) in pieces.iter().enumerate() {
        let c = rng.gen_range(-2..=2i64);
        let alt = match *pc {
            Piece::Square { p, k } => Some(Piece::VLine { p, k, mult: 1 }),
            Piece::VLine { p, k, mult: 1 } if p < p_max => Some(Piece::Square { p: p + 1, k }),
            _ => None,
        };
        let tgt = match alt {
            Some(x) if rng.gen_bool(0.5) => x,
            _ => *pc,
        };
        out.push(tgt);
        if c != 0 {
            assign.push((a, out.len() - 1, c));
        }
    }
    out.extend(random_pieces(rng, p_max, k_max, 2, true));
    (out, assign)
}

pub fn run_cube_suite(kind: CubeSuiteKind, seed: u64, trials: usize, inject_fault: bool) -> CubeSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CubeSuiteReport { trials, ..Default::default() };
    for t in 0..trials {
        let resolving = t % 2 == 0;
        if let Err(e) = run_trial(&mut rng, kind, t, resolving, inject_fault, &mut rep) {
            rep.fail(t, e);
        }
    }
    rep
}

fn run_trial(rng: &mut ChaCha8Rng, kind: CubeSuiteKind, t: usize, resolving: bool, inject_fault: bool, rep: &mut CubeSuiteReport) -> Result<()> {
    let mut tr = random_trial(rng, resolving)?;
    if inject_fault {
        let (lo, hi) = tr.f.degrees();
        match (lo..=hi).find(|&m| tr.f.obj(0).rank(m) > 0) {
            Some(m) => tr.f.inject_face_fault(1, 1, m)?,
            None => {
                tr.f = AugChainFunctor::cech(&[vec![1]], tr.f.top)?;
                tr.f.inject_face_fault(1, 1, 0)?;
            }
        }
    }
    if let Err(e) = tr.f.check() {
        rep.fail(t, format!("functor fails a simplicial identity: {e}"));
        return Ok(());
    }
    rep.functors_checked += 1;
    let f = &tr.f;
    let top = f.top as i64;

    if kind == CubeSuiteKind::Cube {
        for n in -1..=top {
            for j in -1..=n {
                let q = build_cube(f, j, n)?;
                rep.squares_checked += 1;
                if duality_holds(&q)? {
                    rep.duality_holds += 1;
                } else {
                    rep.fail(t, format!("rank duality fails for the cube (j, n) = ({j}, {n})"));
                }
            }
        }
        for n in 0..=top {
            for j in -1..n {
                let s = fibration_sequence(f, j, n)?;
                match s.les.first_failure() {
                    None => rep.sequences_exact += 1,
                    Some(sp) => rep.fail(t, format!("sequence (j, n) = ({j}, {n}) inexact at {}_{}", sp.label, sp.degree)),
                }
                if j + 1 < n {
                    if s.alpha_surjective() {
                        rep.alpha_surjective += 1;
                    } else {
                        rep.fail(t, format!("H(α) not onto for (j, n) = ({j}, {n})"));
                    }
                }
            }
        }
        let cmp = compare_fibers(f)?;
        if tr.resolving {
            rep.resolving_trials += 1;
            if cmp.confirmed() {
                rep.fibers_confirmed += 1;
            } else if let Some((p, n)) = cmp.hypothesis_failure {
                rep.fail(t, format!("resolution hypothesis fails at chain degree {p}, level {n}"));
            } else {
                rep.fail(t, format!("strict and homotopy fibers differ: {}", cmp.conclusion_failures.join("; ")));
            }
        } else {
            rep.control_trials += 1;
            if cmp.hypothesis_holds() {
                rep.fail(t, "negative control passed the resolution hypothesis");
            } else {
                rep.controls_rejected += 1;
            }
        }
    }

    let kmax = f.top - 1;
    let (lo, hi) = f.obj(-1).degrees().fold((i64::MAX, i64::MIN), |(a, b), m| (a.min(m), b.max(m)));
    for degree in lo..=hi {
        let r = filtration(f, degree, kmax)?;
        rep.filtrations += 1;
        if r.is_monotone() {
            rep.filtrations_monotone += 1;
        } else {
            rep.fail(t, format!("filtration in degree {degree} not monotone: {:?}", r.stage_dims()));
        }
        let o = filtration_oracle(f, degree, kmax)?;
        if r.stages.iter().zip(&o).all(|(a, b)| same_subspace(a, b, r.dim)) {
            rep.filtrations_match_oracle += 1;
        } else {
            rep.fail(t, format!("filtration in degree {degree} differs from the oracle"));
        }
    }

    // a natural transformation into a second functor
    let (pieces2, assign) = random_target(rng, &tr.pieces, tr.p_max, tr.k_max);
    let (pc1, pc2) = (assemble(&tr.pieces, tr.p_max, tr.k_max), assemble(&pieces2, tr.p_max, tr.k_max));
    let bases2 = random_bases(rng, &pc2.dc);
    let g = conjugate_map(&piece_map(&pc1, &pc2, &assign)?, &tr.bases, &bases2);
    let d1 = conjugate(&pc1.dc, &tr.bases);
    let d2 = conjugate(&pc2.dc, &bases2);
    let f2 = degeneracy_split(&d2, f.top)?;
    let zeta = induced_transformation(&d1, &d2, &g, f, &f2)?;
    rep.naturality_trials += 1;
    let (lo2, hi2) = (lo.min(f2.obj(-1).lo()), hi.max(f2.obj(-1).hi()));
    let mut ok = true;
    for degree in lo2..=hi2 {
        let r = induced_filtration_map(&zeta, f, &f2, degree, kmax)?;
        if let Some(k) = r.contained.iter().position(|c| !c) {
            ok = false;
            rep.fail(t, format!("ζ does not preserve 𝓕_{} in degree {degree}", k + 1));
        }
    }
    if ok {
        rep.containment_holds += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let r = run_cube_suite(CubeSuiteKind::Cube, 3, 6, false);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.fibers_confirmed, r.resolving_trials);
        assert_eq!(r.controls_rejected, r.control_trials);
    }

    #[test]
    fn fault_is_named() {
        let r = run_cube_suite(CubeSuiteKind::Cube, 3, 2, true);
        assert!(!r.passed());
        assert!(r.failures[0].contains("simplicial identity"), "{:?}", r.failures);
    }
}
