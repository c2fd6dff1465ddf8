use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::chainlab::snf::smith_normal_form;
use crate::chainlab::SparseIntMatrix;

/// A finitely generated abelian group `Z/d_1 + ... + Z/d_t + Z^r` in
/// invariant-factor coordinates, together with the images of the
/// generators of some presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    /// `Some(d)` for a cyclic factor of order `d > 1`, `None` for a free factor.
    moduli: Vec<Option<BigInt>>,
    gen_images: Vec<Vec<BigInt>>,
}

impl AbelianGroup {
    /// Cokernel of the relation matrix (columns are relations among `ngens` generators).
    pub fn from_relations(relations: &SparseIntMatrix) -> Self {
        let ngens = relations.rows();
        let s = smith_normal_form(relations, true);
        let u = s.transforms.expect("requested").u;
        let r = s.diagonal.len();
        let keep: Vec<usize> = (0..ngens).filter(|&i| i >= r || !s.diagonal[i].is_one()).collect();
        let moduli = keep.iter().map(|&i| (i < r).then(|| s.diagonal[i].clone())).collect();
        let mut g = AbelianGroup {
            moduli,
            gen_images: Vec::with_capacity(ngens),
        };
        for j in 0..ngens {
            let col: Vec<BigInt> = keep.iter().map(|&i| u[i][j].clone()).collect();
            let col = g.reduce(col);
            g.gen_images.push(col);
        }
        g
    }

    /// `Z/d_1 + ... + Z/d_t` with one generator per factor (zeros mean `Z`).
    pub fn from_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut m = SparseIntMatrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            m.set(i, i, BigInt::from(d));
        }
        Self::from_relations(&m)
    }

    pub fn free(rank: usize) -> Self {
        Self::from_relations(&SparseIntMatrix::zeros(rank, 0))
    }

    pub fn moduli(&self) -> &[Option<BigInt>] {
        &self.moduli
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|m| m.is_none()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.moduli.iter().flatten().cloned().collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion().iter().product())
    }

    pub fn num_gens(&self) -> usize {
        self.gen_images.len()
    }

    pub fn gen_image(&self, g: usize) -> &[BigInt] {
        &self.gen_images[g]
    }

    pub fn identity(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.moduli.len()]
    }

    pub fn reduce(&self, mut x: Vec<BigInt>) -> Vec<BigInt> {
        for (v, m) in x.iter_mut().zip(&self.moduli) {
            if let Some(d) = m {
                *v = v.mod_floor(d);
            }
        }
        x
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[BigInt]) -> Vec<BigInt> {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &[BigInt], k: i64) -> Vec<BigInt> {
        self.reduce(a.iter().map(|x| x * k).collect())
    }

    /// All elements when the group is finite and has at most `bound` elements.
    pub fn elements(&self, bound: usize) -> Option<Vec<Vec<BigInt>>> {
        let ord = self.order()?.to_usize()?;
        if ord > bound {
            return None;
        }
        let mut out = vec![Vec::new()];
        for m in &self.moduli {
            let d = m.as_ref().expect("finite").to_usize()?;
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(k));
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors() {
        let g = AbelianGroup::from_orders(&[2, 3]);
        assert_eq!(g.torsion(), vec![BigInt::from(6)]);
        let x = g.gen_image(0).to_vec();
        let y = g.gen_image(1).to_vec();
        assert_eq!(g.scale(&x, 2), g.identity());
        assert_eq!(g.scale(&y, 3), g.identity());
        assert_ne!(g.add(&x, &y), g.identity());
        assert_eq!(g.elements(100).unwrap().len(), 6);
        let z2 = AbelianGroup::free(2);
        assert_eq!(z2.free_rank(), 2);
        assert!(z2.elements(10).is_none());
    }
}
