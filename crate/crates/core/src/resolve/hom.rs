//! Simplicial homomorphisms `Γ → K(Q, n-1)` from rational `n`-cocycles.
//!
//! On `G(Bπ)` the image of `τ(x)` is the `(n-1)`-cocycle on `Δ^m`
//! `ι ↦ c(x|0∪(ι+1)) - h(d_0 x)(ι)`, where `h(y)(ι) = c(y|0∪ι)` when `0 ∉ ι`
//! and `0` otherwise. Presentation resolutions are first compared with the
//! lazy `G(Bπ)` through degree 1; higher cells are filled inside `K`.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cocycle::Cochain;
use super::em::{injections, EMObject};
use super::kan::{BarLoopGroup, LazyBarLoop};
use super::nerve::bar_restrict;
use super::presentation::PresentationResolution;
use super::Resolution;
use crate::chainlab::qlinalg::{QMatrix, Rat};
use crate::error::{Error, Result};
use crate::freegrp::{DiscreteGroup, GroupElt, Word};
use crate::simp::{FreeSimplicialGroup, SimplicialGroup};

/// A levelwise homomorphism from a free simplicial group into `K(Q, n-1)`,
/// stored by its values on generators.
#[derive(Clone, Debug)]
pub struct SimplicialHom {
    pub em: EMObject,
    /// `images[m][g]` in coordinates of `K_m`
    pub images: Vec<Vec<Vec<Rat>>>,
}

impl SimplicialHom {
    pub fn n(&self) -> usize {
        self.em.n()
    }

    pub fn top(&self) -> usize {
        self.images.len() - 1
    }

    pub fn apply(&self, m: usize, w: &Word) -> Vec<Rat> {
        let mut out = self.em.zero(m);
        for &(g, e) in w.runs() {
            let e = Rat::from_integer(e.into());
            for (o, v) in out.iter_mut().zip(&self.images[m][g]) {
                *o += v * &e;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Checks `φ ∂_i = ∂_i φ` and `φ s_j = s_j φ` on every generator through
    /// the top level; returns the number of equations checked.
    pub fn check_commutation(&self, gamma: &FreeSimplicialGroup) -> Result<usize> {
        let mut count = 0;
        for m in 0..=self.top() {
            for g in 0..gamma.rank(m) {
                let x = Word::gen(g);
                let v = &self.images[m][g];
                if m > 0 {
                    for i in 0..=m {
                        let lhs = self.em.face(m, i, v);
                        let rhs = self.apply(m - 1, &gamma.face(m, i, &x)?);
                        if lhs != rhs {
                            return Err(Error::NotAChainMap(format!(
                                "φ does not commute with d{i} on generator {} of level {m}",
                                gamma.format(m, &x)
                            )));
                        }
                        count += 1;
                    }
                }
                if m < self.top() {
                    for j in 0..=m {
                        let lhs = self.em.degen(m, j, v);
                        let rhs = self.apply(m + 1, &gamma.degen(m, j, &x)?);
                        if lhs != rhs {
                            return Err(Error::NotAChainMap(format!(
                                "φ does not commute with s{j} on generator {} of level {m}",
                                gamma.format(m, &x)
                            )));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok(count)
    }
}

/// Coordinates in `K_m` of the twisted cocycle of the `(m+1)`-simplex `x` of `Bπ`.
pub fn twist(pi: &DiscreteGroup, c: &Cochain, em: &EMObject, x: &[GroupElt]) -> Result<Vec<Rat>> {
    let m = x.len() - 1;
    let n = c.degree;
    if em.dim(m) == 0 {
        return Ok(vec![]);
    }
    let y = &x[1..];
    let f: Vec<Rat> = injections(m, n - 1)
        .iter()
        .map(|iota| {
            let mut verts = vec![0];
            verts.extend(iota.iter().map(|v| v + 1));
            let mut val = c.eval(pi, &bar_restrict(pi, x, &verts));
            if iota[0] != 0 {
                let mut vs = vec![0];
                vs.extend_from_slice(iota);
                val -= c.eval(pi, &bar_restrict(pi, y, &vs));
            }
            val
        })
        .collect();
    em.from_cochain(m, &f)
}

fn fin_tuple(t: &[usize]) -> Vec<GroupElt> {
    t.iter().map(|&a| GroupElt::Fin(a)).collect()
}

fn check_input(pi: &DiscreteGroup, c: &Cochain, gamma: &FreeSimplicialGroup, top: usize) -> Result<()> {
    if c.degree == 0 {
        return Err(Error::Dimension("cocycle of degree 0".into()));
    }
    if top > gamma.top() {
        return Err(Error::Truncation { degree: top as i64, top: gamma.top() as i64 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    c.check_cocycle(pi, &mut rng, 500)
}

/// `φ_c: Γ → K(Q, n-1)` through level `top`, with the commutation checks run.
pub fn cocycle_to_hom(res: &Resolution, c: &Cochain, top: usize) -> Result<SimplicialHom> {
    let gamma = res.group();
    let pi = gamma.pi.clone().ok_or_else(|| Error::Precondition("resolution is not augmented".into()))?;
    check_input(&pi, c, gamma, top)?;
    let em = EMObject::new(c.degree, top)?;
    let images = match res {
        Resolution::Bar(b) => bar_images(b, &pi, c, &em, top)?,
        Resolution::Presentation(p) => presentation_images(p, &pi, c, &em, top)?,
    };
    let hom = SimplicialHom { em, images };
    hom.check_commutation(gamma)?;
    Ok(hom)
}

fn bar_images(b: &BarLoopGroup, pi: &DiscreteGroup, c: &Cochain, em: &EMObject, top: usize) -> Result<Vec<Vec<Vec<Rat>>>> {
    (0..=top)
        .map(|m| (0..b.group.rank(m)).map(|g| twist(pi, c, em, &fin_tuple(&b.tuple(m, g)))).collect())
        .collect()
}

/// `v ∈ G(Bπ)_1` with `∂_0 v = 1` and `∂_1 v = u`, for `u` in the kernel of the augmentation.
fn moore_lift(lazy: &mut LazyBarLoop, u: &Word) -> Word {
    let pi = lazy.pi.clone();
    let piece = |lazy: &mut LazyBarLoop, q: &GroupElt, g: &GroupElt| -> Word {
        let a = lazy.tau(&[q.clone(), g.clone()]);
        let b = lazy.tau(&[g.clone()]).mul(&lazy.tau(&[pi.mul(q, g)]).inv());
        a.mul(&lazy.degen(0, &b))
    };
    let mut q = pi.identity();
    let mut out = Word::identity();
    for (id, e) in u.letters() {
        let g = lazy.key(id)[0].clone();
        if e > 0 {
            out.mul_assign(&piece(lazy, &q, &g));
            q = pi.mul(&q, &g);
        } else {
            let q2 = pi.mul(&q, &pi.inv(&g));
            out.mul_assign(&piece(lazy, &q2, &g).inv());
            q = q2;
        }
    }
    out
}

fn presentation_images(
    r: &PresentationResolution,
    pi: &DiscreteGroup,
    c: &Cochain,
    em: &EMObject,
    top: usize,
) -> Result<Vec<Vec<Vec<Rat>>>> {
    if c.degree > 2 {
        return Err(Error::Unsupported(format!(
            "cocycles of degree {} on a presentation resolution (degree <= 2 only)",
            c.degree
        )));
    }
    let gamma = &r.group;
    let mut lazy = LazyBarLoop::new(pi.clone());
    let mut cell_image: Vec<Option<Vec<Rat>>> = vec![None; r.cells.len()];
    let level0: Vec<Word> = gamma.augmentation.iter().map(|e| lazy.tau(std::slice::from_ref(e))).collect();
    let phi_lazy = |lazy: &LazyBarLoop, m: usize, w: &Word| -> Result<Vec<Rat>> {
        let mut out = em.zero(m);
        for &(g, e) in w.runs() {
            let v = twist(pi, c, em, lazy.key(g))?;
            let e = Rat::from_integer(e.into());
            for (o, x) in out.iter_mut().zip(v) {
                *o += x * &e;
            }
        }
        Ok(out)
    };
    let mut images: Vec<Vec<Vec<Rat>>> = Vec::new();
    for m in 0..=top {
        // base cells of degree m
        for (ci, cell) in r.cells.iter().enumerate() {
            if cell.degree != m {
                continue;
            }
            let v = match m {
                0 => phi_lazy(&lazy, 0, &level0[ci])?,
                1 => {
                    let w0 = cell.faces[0].substitute(&level0);
                    let w1 = cell.faces[1].substitute(&level0);
                    let lift = moore_lift(&mut lazy, &w0.inv().mul(&w1));
                    let f = lazy.degen(0, &w0).mul(&lift);
                    phi_lazy(&lazy, 1, &f)?
                }
                _ => fill(em, m, &cell.faces, &images[m - 1]).ok_or_else(|| {
                    Error::Precondition(format!("no filler in K for cell {} of degree {m}", cell.label))
                })?,
            };
            cell_image[ci] = Some(v);
        }
        let level: Vec<Vec<Rat>> = r.gens[m]
            .iter()
            .map(|(ci, sigma)| {
                let d = r.cells[*ci].degree;
                let base = cell_image[*ci].as_ref().expect("lower cells first");
                if d == m {
                    base.clone()
                } else {
                    em.act(d, sigma, base)
                }
            })
            .collect();
        images.push(level);
    }
    Ok(images)
}

/// The unique `v ∈ K_m` with `∂_i v = φ(faces[i])`, if any.
fn fill(em: &EMObject, m: usize, faces: &[Word], below: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let apply = |w: &Word| {
        let mut out = em.zero(m - 1);
        for &(g, e) in w.runs() {
            let e = Rat::from_integer(e.into());
            for (o, x) in out.iter_mut().zip(&below[g]) {
                *o += x * &e;
            }
        }
        out
    };
    let dim = em.dim(m);
    let dim1 = em.dim(m - 1);
    let mut a = QMatrix::zeros((m + 1) * dim1, dim);
    let mut rhs = Vec::with_capacity((m + 1) * dim1);
    for i in 0..=m {
        for col in 0..dim {
            let mut e = em.zero(m);
            e[col] = Rat::from_integer(1.into());
            for (row, x) in em.face(m, i, &e).into_iter().enumerate() {
                a.data[i * dim1 + row][col] = x;
            }
        }
        rhs.extend(apply(&faces[i]));
    }
    a.solve(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainlab::qlinalg::rat;
    use crate::freegrp::FiniteGroup;
    use crate::resolve::presentation::{truncated_resolution, Presentation};

    #[test]
    fn exponent_on_z() {
        let p = Presentation::new(&["a"], &[]).unwrap();
        let res = Resolution::Presentation(truncated_resolution(&p, 3).unwrap());
        let h = cocycle_to_hom(&res, &Cochain::exponent(0), 3).unwrap();
        assert_eq!(h.images[0][0], vec![rat(1)]);
        let z = cocycle_to_hom(&res, &Cochain::zero(1), 3).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn cup_on_torus() {
        let p = Presentation::new(&["a", "b"], &["aba^-1b^-1"]).unwrap();
        let res = Resolution::Presentation(truncated_resolution(&p, 3).unwrap());
        let h = cocycle_to_hom(&res, &Cochain::cup(0, 1), 3).unwrap();
        let r = res.group().level(1).names.iter().position(|s| s == "r1").unwrap();
        assert_ne!(h.images[1][r], vec![rat(0)]);
    }

    #[test]
    fn bar_twists_commute() {
        let z3 = FiniteGroup::cyclic(3);
        let res = Resolution::Bar(BarLoopGroup::new(&z3, 3).unwrap());
        let pi = DiscreteGroup::Finite(z3.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // a coboundary and a genuine class
        let b = Cochain::random(&pi, 1, &mut rng).coboundary();
        cocycle_to_hom(&res, &b, 3).unwrap();
        let carry = Cochain::new(2, "carry", |_, xs| match (&xs[0], &xs[1]) {
            (GroupElt::Fin(a), GroupElt::Fin(b)) => rat(((a + b) >= 3) as i64),
            _ => unreachable!(),
        });
        cocycle_to_hom(&res, &carry, 3).unwrap();
        let s3 = FiniteGroup::symmetric(3);
        let res = Resolution::Bar(BarLoopGroup::new(&s3, 2).unwrap());
        let c = Cochain::random(&DiscreteGroup::Finite(s3), 2, &mut rng).coboundary();
        cocycle_to_hom(&res, &c, 2).unwrap();
    }
}
