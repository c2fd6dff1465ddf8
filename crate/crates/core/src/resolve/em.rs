//! `K(Q, n-1)` as the degeneracy-split simplicial vector space on `Q` in
//! degree `n-1`: level `m` has basis the surjections `[m] ↠ [n-1]`.

use num_traits::{One, Zero};

use crate::chainlab::qlinalg::{QMatrix, Rat};
use crate::error::{Error, Result};
use crate::simp::dold_kan::{act, degen_map, face_map, surjections, DkAction};

#[derive(Clone, Debug)]
pub struct EMObject {
    n: usize,
    top: usize,
    bases: Vec<Vec<Vec<usize>>>,
}

/// Strictly increasing vertex lists of length `k + 1` in `[m]`.
pub fn injections(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            cur.push(v);
            rec(v + 1, m, len, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k + 1, &mut cur, &mut out);
    out
}

impl EMObject {
    /// `K(Q, n-1)` through level `top`; needs `n >= 1`.
    pub fn new(n: usize, top: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("K(Q, n-1) needs n >= 1".into()));
        }
        let bases = (0..=top + 1)
            .map(|m| if m + 1 >= n { surjections(m, n - 1) } else { vec![] })
            .collect();
        Ok(EMObject { n, top, bases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dim(&self, m: usize) -> usize {
        self.bases[m].len()
    }

    pub fn basis(&self, m: usize) -> &[Vec<usize>] {
        &self.bases[m]
    }

    pub fn index_of(&self, m: usize, sigma: &[usize]) -> Option<usize> {
        self.bases[m].iter().position(|s| s == sigma)
    }

    pub fn zero(&self, m: usize) -> Vec<Rat> {
        vec![Rat::zero(); self.dim(m)]
    }

    /// `θ^*` for `θ: [m'] → [m]`, applied to coordinates on level `m`.
    pub fn act(&self, m: usize, theta: &[usize], v: &[Rat]) -> Vec<Rat> {
        let m2 = theta.len() - 1;
        let mut out = self.zero(m2);
        for (s, c) in self.bases[m].iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            if let DkAction::Keep(eta) = act(theta, s) {
                let t = self.index_of(m2, &eta).expect("surjection");
                out[t] += c;
            }
        }
        out
    }

    pub fn face(&self, m: usize, i: usize, v: &[Rat]) -> Vec<Rat> {
        self.act(m, &face_map(m, i), v)
    }

    pub fn degen(&self, m: usize, j: usize, v: &[Rat]) -> Vec<Rat> {
        self.act(m, &degen_map(m, j), v)
    }

    /// Matrix of the comparison with cochains on `Δ^m`: a point `a` goes to
    /// the function `ι ↦ Σ_{σ ι = id} a_σ` on `(n-1)`-faces `ι` of `Δ^m`.
    pub fn cochain_matrix(&self, m: usize) -> QMatrix {
        let faces = injections(m, self.n - 1);
        let mut q = QMatrix::zeros(faces.len(), self.dim(m));
        for (r, iota) in faces.iter().enumerate() {
            for (c, s) in self.bases[m].iter().enumerate() {
                if iota.iter().enumerate().all(|(k, &v)| s[v] == k) {
                    q.data[r][c] = Rat::one();
                }
            }
        }
        q
    }

    pub fn to_cochain(&self, m: usize, v: &[Rat]) -> Vec<Rat> {
        self.cochain_matrix(m).mul_vec(v)
    }

    /// Inverse of [`to_cochain`](Self::to_cochain) on its image.
    pub fn from_cochain(&self, m: usize, f: &[Rat]) -> Result<Vec<Rat>> {
        self.cochain_matrix(m)
            .solve(f)
            .ok_or_else(|| Error::Precondition(format!("cochain on level {m} is not in the image (not a cocycle?)")))
    }

    /// `(∂_i f)(ι) = f(δ^i ι)` on cochains of `Δ^m`.
    pub fn cochain_face(&self, m: usize, i: usize, f: &[Rat]) -> Vec<Rat> {
        let src = injections(m, self.n - 1);
        injections(m - 1, self.n - 1)
            .iter()
            .map(|iota| {
                let img: Vec<usize> = iota.iter().map(|&v| if v < i { v } else { v + 1 }).collect();
                f[src.iter().position(|x| *x == img).expect("face")].clone()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainlab::qlinalg::rat;
    use crate::simp::dold_kan::binomial;

    #[test]
    fn basis_sizes() {
        let k = EMObject::new(3, 6).unwrap();
        for m in 0..=6 {
            assert_eq!(k.dim(m), if m >= 2 { binomial(m, 2) } else { 0 });
        }
    }

    #[test]
    fn cochain_model_commutes_with_faces() {
        let k = EMObject::new(2, 4).unwrap();
        for m in 1..=4 {
            for s in 0..k.dim(m) {
                let mut v = k.zero(m);
                v[s] = rat(1);
                for i in 0..=m {
                    let lhs = k.to_cochain(m - 1, &k.face(m, i, &v));
                    let rhs = k.cochain_face(m, i, &k.to_cochain(m, &v));
                    assert_eq!(lhs, rhs);
                }
                assert_eq!(k.from_cochain(m, &k.to_cochain(m, &v)).unwrap(), v);
            }
        }
    }
}
