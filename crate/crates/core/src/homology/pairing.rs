//! Evaluation of a cocycle on an `E`-cycle through `φ_c: Γ → K(Q, n-1)`.

use num_traits::Zero;

use super::e_complex::EComplex;
use crate::chainlab::qlinalg::{QMatrix, Rat};
use crate::error::{Error, Result};
use crate::resolve::{cocycle_to_hom, Cochain, Resolution, SimplicialHom};
use crate::simp::SimplicialGroup;

/// `⟨[c], x⟩` for a rational cycle `x ∈ E_n` (coordinates on level `n-1` generators).
pub fn pairing(res: &Resolution, e: &EComplex, c: &Cochain, x: &[Rat]) -> Result<Rat> {
    let n = c.degree;
    if n == 0 || n > e.max_degree {
        return Err(Error::Dimension(format!("cocycle of degree {n} against E up to degree {}", e.max_degree)));
    }
    if !e.is_verified(n) {
        return Err(Error::Truncation { degree: n as i64, top: e.exact_through as i64 + 1 });
    }
    check_cycle(e, n, x)?;
    let top = n.min(res.group().top());
    let hom = cocycle_to_hom(res, c, top)?;
    pair_with(&hom, x)
}

pub fn check_cycle(e: &EComplex, n: usize, x: &[Rat]) -> Result<()> {
    let d = QMatrix::from_int(&e.complex.d(n as i64));
    if x.len() != d.cols {
        return Err(Error::Dimension(format!("chain of length {} in E_{n} of rank {}", x.len(), d.cols)));
    }
    if d.mul_vec(x).iter().any(|v| !v.is_zero()) {
        return Err(Error::Precondition(format!("chain is not a cycle of E_{n}")));
    }
    Ok(())
}

/// Sum of `x_g φ(g)` in `K_{n-1} = Q`.
pub fn pair_with(hom: &SimplicialHom, x: &[Rat]) -> Result<Rat> {
    let n = hom.n();
    let level = &hom.images[n - 1];
    if x.len() != level.len() {
        return Err(Error::Dimension(format!("chain of length {} on {} generators", x.len(), level.len())));
    }
    Ok(x.iter().zip(level).fold(Rat::zero(), |acc, (a, v)| acc + a * &v[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainlab::qlinalg::{rat, to_rat_vec};
    use crate::chainlab::Ring;
    use crate::homology::e_complex::e_complex;
    use crate::resolve::{truncated_resolution, Presentation};

    #[test]
    fn torus_cup() {
        let mut p = Presentation::new(&["a", "b"], &["aba^-1b^-1"]).unwrap();
        p.exact_through = Some(4);
        let res = Resolution::Presentation(truncated_resolution(&p, 3).unwrap());
        let e = e_complex(res.group(), Ring::Int, 3).unwrap();
        let r = res.group().level(1).names.iter().position(|s| s == "r1").unwrap();
        let mut x = vec![rat(0); res.group().rank(1)];
        x[r] = rat(1);
        assert_eq!(pairing(&res, &e, &Cochain::cup(0, 1), &x).unwrap(), rat(1));
        assert_eq!(pairing(&res, &e, &Cochain::cup(1, 0), &x).unwrap(), rat(-1));
        let gen = to_rat_vec(&e.complex.homology_basis(1).free_generators()[0]);
        assert!(pairing(&res, &e, &Cochain::exponent(0), &gen).unwrap() != rat(0)
            || pairing(&res, &e, &Cochain::exponent(1), &gen).unwrap() != rat(0));
    }
}
