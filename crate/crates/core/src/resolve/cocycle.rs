//! Normalized inhomogeneous cochains on a discrete group with rational values.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::chainlab::qlinalg::{rat, Rat};
use crate::error::{Error, Result};
use crate::freegrp::{DiscreteGroup, GroupElt};

type Eval = dyn Fn(&DiscreteGroup, &[GroupElt]) -> Rat + Send + Sync;

/// A function `π^degree → Q`.
#[derive(Clone)]
pub struct Cochain {
    pub degree: usize,
    pub name: String,
    f: Arc<Eval>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain({}, degree {})", self.name, self.degree)
    }
}

/// Integer coordinate `k` of an element: exponent sum for free groups, the
/// `k`-th invariant-factor coordinate for abelian groups.
pub fn coordinate(pi: &DiscreteGroup, x: &GroupElt, k: usize) -> Result<BigInt> {
    match (pi, x) {
        (DiscreteGroup::Free(_), GroupElt::Free(w)) => Ok(BigInt::from(w.exponent_sum(k))),
        (DiscreteGroup::Abelian(a), GroupElt::Ab(v)) => {
            if a.moduli().get(k).map_or(true, |m| m.is_some()) {
                return Err(Error::Precondition(format!("coordinate {k} is not a free coordinate")));
            }
            Ok(v[k].clone())
        }
        _ => Err(Error::Precondition(format!("{} has no integer coordinates", pi.name()))),
    }
}

fn free_coordinates(pi: &DiscreteGroup) -> Vec<usize> {
    match pi {
        DiscreteGroup::Free(f) => (0..f.rank()).collect(),
        DiscreteGroup::Abelian(a) => (0..a.moduli().len()).filter(|&k| a.moduli()[k].is_none()).collect(),
        DiscreteGroup::Finite(_) => vec![],
    }
}

impl Cochain {
    pub fn new(degree: usize, name: &str, f: impl Fn(&DiscreteGroup, &[GroupElt]) -> Rat + Send + Sync + 'static) -> Self {
        Cochain { degree, name: name.into(), f: Arc::new(f) }
    }

    pub fn eval(&self, pi: &DiscreteGroup, xs: &[GroupElt]) -> Rat {
        assert_eq!(xs.len(), self.degree, "cochain of degree {} on {} arguments", self.degree, xs.len());
        (self.f)(pi, xs)
    }

    pub fn zero(degree: usize) -> Self {
        Cochain::new(degree, "zero", |_, _| Rat::zero())
    }

    /// The 1-cocycle `g ↦` (free coordinate `k` of `g`).
    pub fn exponent(k: usize) -> Self {
        Cochain::new(1, &format!("exponent{k}"), move |pi, xs| {
            Rat::from_integer(coordinate(pi, &xs[0], k).unwrap_or_default())
        })
    }

    /// The 2-cocycle `(g, h) ↦ x_i(g) x_j(h)` for free coordinates `i`, `j`.
    pub fn cup(i: usize, j: usize) -> Self {
        Cochain::new(2, &format!("cup{i}{j}"), move |pi, xs| {
            let a = coordinate(pi, &xs[0], i).unwrap_or_default();
            let b = coordinate(pi, &xs[1], j).unwrap_or_default();
            Rat::from_integer(a * b)
        })
    }

    /// A cochain given by a value table; unlisted tuples are zero.
    pub fn table(degree: usize, name: &str, values: HashMap<Vec<GroupElt>, Rat>) -> Self {
        Cochain::new(degree, name, move |_, xs| values.get(xs).cloned().unwrap_or_else(Rat::zero))
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        assert_eq!(self.degree, o.degree);
        let (a, b) = (self.clone(), o.clone());
        Cochain::new(self.degree, &format!("{}+{}", self.name, o.name), move |pi, xs| a.eval(pi, xs) + b.eval(pi, xs))
    }

    pub fn scale(&self, s: Rat) -> Cochain {
        let a = self.clone();
        Cochain::new(self.degree, &format!("{}*{}", s, self.name), move |pi, xs| a.eval(pi, xs) * &s)
    }

    /// `(δc)(g_1..g_{n+1}) = c(g_2..) + Σ_i (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{n+1} c(g_1..g_n)`
    pub fn coboundary_value(&self, pi: &DiscreteGroup, xs: &[GroupElt]) -> Rat {
        let n = self.degree;
        assert_eq!(xs.len(), n + 1);
        let mut s = self.eval(pi, &xs[1..]);
        for i in 1..=n {
            let mut y = xs[..i - 1].to_vec();
            y.push(pi.mul(&xs[i - 1], &xs[i]));
            y.extend_from_slice(&xs[i + 1..]);
            let v = self.eval(pi, &y);
            if i % 2 == 1 {
                s -= v;
            } else {
                s += v;
            }
        }
        let last = self.eval(pi, &xs[..n]);
        if (n + 1) % 2 == 1 {
            s -= last;
        } else {
            s += last;
        }
        s
    }

    pub fn coboundary(&self) -> Cochain {
        let c = self.clone();
        Cochain::new(self.degree + 1, &format!("d({})", self.name), move |pi, xs| c.coboundary_value(pi, xs))
    }

    /// Checks normalization and the cocycle condition: exhaustively when
    /// `|π|^{n+1} <= 20000`, otherwise on `samples` random tuples.
    pub fn check_cocycle<R: Rng + ?Sized>(&self, pi: &DiscreteGroup, rng: &mut R, samples: usize) -> Result<()> {
        let n = self.degree;
        let tuples: Vec<Vec<GroupElt>> = match pi.elements(20_000) {
            Some(els) if els.len().checked_pow(n as u32 + 1).map_or(false, |t| t <= 20_000) => all_tuples(&els, n + 1),
            _ => (0..samples)
                .map(|_| (0..=n).map(|_| random_element(pi, rng)).collect())
                .collect(),
        };
        for t in &tuples {
            for k in 0..n {
                let mut y = t[..n].to_vec();
                y[k] = pi.identity();
                if !self.eval(pi, &y).is_zero() {
                    return Err(Error::Precondition(format!("{} is not normalized at {:?}", self.name, fmt_tuple(pi, &y))));
                }
            }
            let d = self.coboundary_value(pi, t);
            if !d.is_zero() {
                return Err(Error::Precondition(format!(
                    "δ{} = {d} at {:?}: not a cocycle",
                    self.name,
                    fmt_tuple(pi, t)
                )));
            }
        }
        Ok(())
    }

    /// A random normalized cochain of degree `degree` (a sum of products of
    /// per-argument functions vanishing at the identity).
    pub fn random<R: Rng + ?Sized>(pi: &DiscreteGroup, degree: usize, rng: &mut R) -> Cochain {
        let mut terms: Vec<Vec<ArgFn>> = Vec::new();
        for _ in 0..2 {
            terms.push((0..degree).map(|_| ArgFn::random(pi, rng)).collect());
        }
        Cochain::new(degree, "random", move |pi, xs| {
            terms
                .iter()
                .map(|fs| fs.iter().zip(xs).fold(rat(1), |acc, (f, x)| acc * f.eval(pi, x)))
                .fold(Rat::zero(), |a, b| a + b)
        })
    }
}

/// A random function on the group vanishing at the identity.
#[derive(Clone, Debug)]
enum ArgFn {
    Table(Vec<Rat>),
    Poly { lin: Vec<(usize, i64)>, quad: Vec<(usize, usize, i64)> },
}

impl ArgFn {
    fn random<R: Rng + ?Sized>(pi: &DiscreteGroup, rng: &mut R) -> ArgFn {
        match pi {
            DiscreteGroup::Finite(g) => {
                ArgFn::Table((0..g.order()).map(|x| if x == 0 { Rat::zero() } else { rat(rng.gen_range(-5..=5)) }).collect())
            }
            _ => {
                let coords = free_coordinates(pi);
                if coords.is_empty() {
                    return ArgFn::Poly { lin: vec![], quad: vec![] };
                }
                let pick = |rng: &mut R| coords[rng.gen_range(0..coords.len())];
                let lin = (0..2).map(|_| (pick(rng), rng.gen_range(-3..=3))).collect();
                let quad = (0..2).map(|_| (pick(rng), pick(rng), rng.gen_range(-3..=3))).collect();
                ArgFn::Poly { lin, quad }
            }
        }
    }

    fn eval(&self, pi: &DiscreteGroup, x: &GroupElt) -> Rat {
        match (self, x) {
            (ArgFn::Table(t), GroupElt::Fin(a)) => t[*a].clone(),
            (ArgFn::Poly { lin, quad }, _) => {
                let c = |k: usize| coordinate(pi, x, k).unwrap_or_default();
                let mut s = BigInt::zero();
                for (k, a) in lin {
                    s += c(*k) * a;
                }
                for (k, l, a) in quad {
                    s += c(*k) * c(*l) * a;
                }
                Rat::from_integer(s)
            }
            _ => Rat::zero(),
        }
    }
}

fn random_element<R: Rng + ?Sized>(pi: &DiscreteGroup, rng: &mut R) -> GroupElt {
    // bias toward the identity so normalization is exercised
    if rng.gen_bool(0.1) {
        pi.identity()
    } else {
        pi.random_element(rng)
    }
}

fn all_tuples(els: &[GroupElt], k: usize) -> Vec<Vec<GroupElt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                els.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e.clone());
                    q
                })
            })
            .collect();
    }
    out
}

fn fmt_tuple(pi: &DiscreteGroup, t: &[GroupElt]) -> String {
    format!("({})", t.iter().map(|x| pi.format(x)).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::AbelianGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn builtins_are_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let z2 = DiscreteGroup::Abelian(AbelianGroup::free(2));
        Cochain::cup(0, 1).check_cocycle(&z2, &mut rng, 200).unwrap();
        Cochain::exponent(1).check_cocycle(&z2, &mut rng, 200).unwrap();
        let b = Cochain::random(&z2, 1, &mut rng);
        b.coboundary().check_cocycle(&z2, &mut rng, 200).unwrap();
        // a non-cocycle is caught
        let bad = Cochain::new(1, "square", |pi, xs| {
            let x = coordinate(pi, &xs[0], 0).unwrap();
            Rat::from_integer(&x * &x)
        });
        assert!(bad.check_cocycle(&z2, &mut rng, 200).is_err());
    }
}
