//! Seeded property suites over Kan loop groups of finite groups.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chainlab::qlinalg::rat;
use crate::error::Result;
use crate::freegrp::{FiniteGroup, GroupRingElt, Word};
use crate::homology::bar_sequence_tests;
use crate::resolve::BarLoopGroup;
use crate::simp::{
    a_sequence, boundary_of_retract, check_simplicial_identities, graded_a_sequence, check_split, moore_member, moore_square_witness, retract, FreeSimplicialGroup,
    SimplicialGroup,
};

/// Pass counts keyed by check name, plus the failures in order of occurrence.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, trials: usize) -> Self {
        SuiteReport { suite: suite.into(), seed, trials, ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&self, key: &str) -> usize {
        self.passed.get(key).copied().unwrap_or(0)
    }

    fn record(&mut self, key: &str, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            *self.passed.entry(key.into()).or_default() += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn record_result<T>(&mut self, key: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => {
                *self.passed.entry(key.into()).or_default() += 1;
                Some(v)
            }
            Err(e) => {
                self.failures.push(format!("{key}: {e}"));
                None
            }
        }
    }
}

/// `B(Z/2)` and `B(Z/3)` loop groups through level `top`.
pub fn test_groups(top: usize) -> Result<Vec<(String, FreeSimplicialGroup)>> {
    [2, 3]
        .iter()
        .map(|&m| Ok((format!("Z/{m}"), BarLoopGroup::new(&FiniteGroup::cyclic(m), top)?.group)))
        .collect()
}

/// Replaces `s_0` of the first level-0 generator by the identity word.
pub fn break_degeneracy(g: &mut FreeSimplicialGroup) {
    g.inject_fault(0, 0, 0, Word::identity());
}

fn identities(rep: &mut SuiteReport, name: &str, g: &FreeSimplicialGroup) -> bool {
    let r = check_simplicial_identities(g);
    let v = r.violation.clone();
    rep.record("simplicial identities", r.passed(), || {
        let v = v.expect("failed");
        format!("{name}: {} fails on level {} at {}: {} != {}", v.identity, v.level, v.element, v.lhs, v.rhs)
    });
    r.passed()
}

/// Retractions `r^j_n` on random words, `n <= 4`: Moore membership,
/// idempotence, additivity after abelianizing, and `∂_n r^{n-1}_n = A_n`.
/// The last is checked as a word identity, after abelianizing, and against
/// the graded recursion `B_n`. The word identity fails for some words once `n >= 3`.
pub fn retraction_suite(seed: u64, trials: usize, inject_fault: bool) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("retraction", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, mut g) in test_groups(4)? {
        if inject_fault {
            break_degeneracy(&mut g);
        }
        if !identities(&mut rep, &name, &g) {
            continue;
        }
        for n in 1..=4usize {
            for j in -1..n as i64 {
                for _ in 0..trials {
                    let x = g.random_word(&mut rng, n, 4);
                    let y = g.random_word(&mut rng, n, 4);
                    let Some(r) = rep.record_result("retraction", retract(&g, n, j, &x)) else { continue };
                    let member = moore_member(&g, n, j, &r)?;
                    rep.record("moore membership", member, || format!("{name}: r^{j}_{n}({x:?}) not in G^{j}_{n}"));
                    let rr = retract(&g, n, j, &r)?;
                    rep.record("idempotence", rr == r, || format!("{name}: r^{j}_{n} not idempotent on {x:?}"));
                    let lhs = abelian(&g, n, &retract(&g, n, j, &x.mul(&y))?);
                    let rhs: Vec<i64> = abelian(&g, n, &r).iter().zip(abelian(&g, n, &retract(&g, n, j, &y)?)).map(|(a, b)| a + b).collect();
                    rep.record("abelian additivity", lhs == rhs, || format!("{name}: r^{j}_{n} not additive mod commutators on {x:?}, {y:?}"));
                    if j == n as i64 - 1 {
                        let lhs = g.face(n, n, &retract(&g, n, j, &x)?)?;
                        let a = a_sequence(&g, n, &x)?;
                        rep.record("boundary identity, abelianized", abelian(&g, n - 1, &lhs) == abelian(&g, n - 1, &a), || {
                            format!("{name}: ∂_{n} r^{j}_{n} and A_{n} differ mod commutators on {x:?}")
                        });
                        let b = graded_a_sequence(&g, n, &x)?;
                        rep.record("boundary identity, graded recursion", lhs == b, || format!("{name}: ∂_{n} r^{j}_{n} != B_{n} on {x:?}"));
                        if let Err(e) = boundary_of_retract(&g, n, &x) {
                            rep.failures.push(format!("{name}: boundary identity: {e}"));
                        } else {
                            *rep.passed.entry("boundary identity".into()).or_default() += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

fn abelian(g: &FreeSimplicialGroup, n: usize, w: &Word) -> Vec<i64> {
    (0..g.rank(n)).map(|k| w.exponent_sum(k)).collect()
}

type Ring = GroupRingElt<Word>;

fn ring_face(g: &FreeSimplicialGroup, n: usize, i: usize, x: &Ring) -> Ring {
    x.map_keys(|w| g.face_raw(n, i, w))
}

fn ring_degen(g: &FreeSimplicialGroup, n: usize, j: usize, x: &Ring) -> Ring {
    x.map_keys(|w| g.degen_raw(n, j, w))
}

/// A random element of the level-`n` Moore ideal: `∂_{n+1}` of a random
/// element of level `n+1` projected into `∩_{i <= n} ker ∂_i`.
pub fn random_moore_ideal<R: Rng + ?Sized>(g: &FreeSimplicialGroup, rng: &mut R, n: usize) -> Ring {
    let mut y = Ring::zero();
    for _ in 0..2 {
        y.add_term(g.random_word(rng, n + 1, 2), rat(rng.gen_range(-2..=2)));
    }
    for k in 0..=n {
        let p = ring_degen(g, n, k, &ring_face(g, n + 1, k, &y));
        y = y.sub(&p);
    }
    ring_face(g, n + 1, n + 1, &y)
}

/// The product witness for random Moore-ideal pairs and the split
/// exactness of Moore subgroups on random words.
pub fn moore_suite(seed: u64, trials: usize, inject_fault: bool) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("moore", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, mut g) in test_groups(3)? {
        if inject_fault {
            break_degeneracy(&mut g);
        }
        if !identities(&mut rep, &name, &g) {
            continue;
        }
        for t in 0..trials {
            let n = 1 + t % 2;
            let a = random_moore_ideal(&g, &mut rng, n);
            let b = random_moore_ideal(&g, &mut rng, n);
            rep.record_result("product witness", moore_square_witness(&g, n, &a, &b));
        }
        for t in 0..trials {
            let n = 1 + t % 2;
            let k = rng.gen_range(0..n);
            let x = retract(&g, n, k as i64, &g.random_word(&mut rng, n, 4))?;
            rep.record_result("split exactness", check_split(&g, n, k, &x));
        }
    }
    Ok(rep)
}

/// Section and kernel identities on the bar chain groups of the loop groups.
pub fn barseq_suite(seed: u64, trials: usize, inject_fault: bool) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("barseq", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, mut g) in test_groups(3)? {
        if inject_fault {
            break_degeneracy(&mut g);
        }
        if !identities(&mut rep, &name, &g) {
            continue;
        }
        let cases = [(2usize, 0usize), (3, 0), (3, 1)];
        for t in 0..trials {
            let (n, j) = cases[t % cases.len()];
            let p = 1 + t % 2;
            let r = bar_sequence_tests(&g, n, j, p, 1, &mut rng)?;
            rep.record("bar sequence", r.passed(), || format!("{name}: {}", r.failure.clone().unwrap_or_default()));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_faults_are_named() {
        for f in [moore_suite, barseq_suite] {
            let r = f(1, 3, false).unwrap();
            assert!(r.ok(), "{:?}", r.failures);
            let bad = f(1, 3, true).unwrap();
            assert!(!bad.ok());
            assert!(bad.failures[0].contains("s0"), "{:?}", bad.failures);
        }
    }

    #[test]
    fn literal_boundary_identity_breaks_at_level_three() {
        let r = retraction_suite(1, 10, false).unwrap();
        assert!(!r.failures.is_empty());
        assert!(r.failures.iter().all(|f| f.contains("boundary identity: ") && !f.contains("∂_2")), "{:?}", r.failures);
        let per_group = 10 * (1 + 1 + 1 + 1);
        assert_eq!(r.count("boundary identity, graded recursion"), 2 * per_group);
        assert_eq!(r.count("boundary identity, abelianized"), 2 * per_group);
        assert_eq!(r.count("moore membership"), 2 * 10 * (1 + 2 + 3 + 4 + 4));
        let bad = retraction_suite(1, 3, true).unwrap();
        assert!(bad.failures[0].contains("s0"), "{:?}", bad.failures);
    }

    #[test]
    fn moore_ideal_elements_are_nonzero_sometimes() {
        let g = &test_groups(3).unwrap()[0].1;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let nonzero = (0..20).filter(|_| !random_moore_ideal(g, &mut rng, 1).is_zero()).count();
        assert!(nonzero > 10);
    }
}
