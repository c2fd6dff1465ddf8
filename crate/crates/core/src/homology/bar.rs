//! Brute-force integral homology of a finite group from the normalized bar complex.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::e_complex::DegreeResult;
use crate::chainlab::{ChainComplex, Ring, SparseIntMatrix};
use crate::error::{Error, Result};
use crate::freegrp::FiniteGroup;

pub const BAR_ORACLE_BOUND: u128 = 10_000_000;

/// Tuples of non-identity elements, lexicographic.
fn cells(q: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..q).map(move |g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

/// Normalized bar complex `C_m = Z[(G - 1)^m]` in degrees `0..=top`.
pub fn bar_complex(g: &FiniteGroup, ring: Ring, top: usize) -> Result<ChainComplex> {
    let q = g.order();
    let size = (q as u128).checked_pow(top as u32).unwrap_or(u128::MAX);
    if size > BAR_ORACLE_BOUND {
        return Err(Error::SizeBound(format!("|G|^{top} = {size} exceeds {BAR_ORACLE_BOUND}")));
    }
    let basis: Vec<Vec<Vec<usize>>> = (0..=top).map(|m| cells(q, m)).collect();
    let index: Vec<HashMap<&[usize], usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect()).collect();
    let ranks = basis.iter().map(Vec::len).collect();
    ChainComplex::from_parts(ring, 0, ranks, |m| {
        let m = m as usize;
        if m == 0 {
            return None;
        }
        let mut d = SparseIntMatrix::zeros(basis[m - 1].len(), basis[m].len());
        for (col, t) in basis[m].iter().enumerate() {
            for i in 0..=m {
                let face: Vec<usize> = if i == 0 {
                    t[1..].to_vec()
                } else if i == m {
                    t[..m - 1].to_vec()
                } else {
                    let mut f = t[..i - 1].to_vec();
                    f.push(g.mul(t[i - 1], t[i]));
                    f.extend_from_slice(&t[i + 1..]);
                    f
                };
                if let Some(&row) = index[m - 1].get(face.as_slice()) {
                    d.add_to(row, col, &BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        Some(d)
    })
}

/// `H_0..H_max_degree` of `G` with integer coefficients (or rational with `Ring::Rat`).
pub fn bar_oracle(g: &FiniteGroup, ring: Ring, max_degree: usize) -> Result<Vec<DegreeResult>> {
    let c = bar_complex(g, ring, max_degree + 1)?;
    Ok((0..=max_degree)
        .map(|n| {
            let h = c.homology(n as i64);
            DegreeResult { degree: n as i64, betti: h.betti, torsion: h.torsion, verified: true }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(r: &[DegreeResult]) -> Vec<String> {
        r.iter().map(|d| d.group().to_string()).collect()
    }

    #[test]
    fn cyclic_groups() {
        assert_eq!(strings(&bar_oracle(&FiniteGroup::cyclic(2), Ring::Int, 3).unwrap()), ["Z", "Z/2", "0", "Z/2"]);
        assert_eq!(strings(&bar_oracle(&FiniteGroup::cyclic(3), Ring::Int, 3).unwrap()), ["Z", "Z/3", "0", "Z/3"]);
        assert_eq!(strings(&bar_oracle(&FiniteGroup::trivial(), Ring::Int, 3).unwrap()), ["Z", "0", "0", "0"]);
    }

    #[test]
    fn size_bound() {
        assert!(matches!(bar_complex(&FiniteGroup::cyclic(100), Ring::Int, 4), Err(Error::SizeBound(_))));
    }
}
