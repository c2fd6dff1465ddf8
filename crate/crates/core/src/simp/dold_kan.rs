//! Degeneracy splitting: the simplicial object `Γ(C)` with
//! `Γ(C)_m = ⊕_{σ: [m] ↠ [k]} C_k`.

use super::group::FiniteSimplicialGroup;
use crate::freegrp::FiniteGroup;

/// All surjections `[m] ↠ [k]` (monotone), in lexicographic order.
pub fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    fn rec(m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            if *cur.last().unwrap() == k {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        let remaining = m + 1 - cur.len();
        for next in [last, last + 1] {
            // must still be able to reach k
            if next <= k && k - next <= remaining - 1 {
                cur.push(next);
                rec(m, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(m, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Effect of `θ^*` (for `θ: [m'] → [m]`) on the summand indexed by `σ: [m] ↠ [k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DkAction {
    /// Lands in the summand `η`, unchanged.
    Keep(Vec<usize>),
    /// Lands in the summand `η` after applying the differential `C_k → C_{k-1}`.
    Differential(Vec<usize>),
    Zero,
}

/// Factor `σ θ = μ η'`; keep if `μ = id`, differentiate if `μ` misses only
/// the last vertex, otherwise zero.
pub fn act(theta: &[usize], sigma: &[usize]) -> DkAction {
    let k = *sigma.last().expect("nonempty");
    let comp: Vec<usize> = theta.iter().map(|&i| sigma[i]).collect();
    let mut mu = comp.clone();
    mu.dedup();
    let mut eta = Vec::with_capacity(comp.len());
    let mut j = 0;
    for (i, &v) in comp.iter().enumerate() {
        if i > 0 && v != comp[i - 1] {
            j += 1;
        }
        eta.push(j);
    }
    if mu.len() == k + 1 {
        DkAction::Keep(eta)
    } else if mu.len() == k && mu.iter().enumerate().all(|(i, &v)| i == v) {
        DkAction::Differential(eta)
    } else {
        DkAction::Zero
    }
}

/// Monotone map of `d_i` on level `m` (`[m-1] → [m]` skipping `i`).
pub fn face_map(m: usize, i: usize) -> Vec<usize> {
    (0..m).map(|k| if k < i { k } else { k + 1 }).collect()
}

/// Monotone map of `s_j` on level `m` (`[m+1] → [m]` hitting `j` twice).
pub fn degen_map(m: usize, j: usize) -> Vec<usize> {
    (0..=m + 1).map(|k| if k <= j { k } else { k - 1 }).collect()
}

/// Basis of `Γ(C)_m`: pairs `(σ, k)` for `k = 0..=min(m, top_degree)`.
pub fn summands(m: usize, top_degree: usize) -> Vec<Vec<usize>> {
    (0..=m.min(top_degree)).flat_map(|k| surjections(m, k)).collect()
}

/// A bounded complex of finite cyclic groups: `C_k = Z/orders[k]` and
/// `d_k: C_k → C_{k-1}` multiplication by `mult[k]` (well defined mod orders).
#[derive(Clone, Debug)]
pub struct CyclicComplex {
    pub orders: Vec<usize>,
    pub mult: Vec<usize>,
}

impl CyclicComplex {
    fn d(&self, k: usize, x: usize) -> usize {
        if k == 0 {
            0
        } else {
            (x * self.mult[k]) % self.orders[k - 1]
        }
    }

    /// Homology by enumeration: `ker d_k / im d_{k+1}`, as an order and the
    /// element-order counts.
    pub fn homology_orders(&self, k: usize) -> std::collections::BTreeMap<usize, usize> {
        let ok = self.orders.get(k).copied().unwrap_or(1);
        let ker: Vec<usize> = (0..ok).filter(|&x| self.d(k, x) == 0).collect();
        let im: std::collections::HashSet<usize> = if k + 1 < self.orders.len() {
            (0..self.orders[k + 1]).map(|y| self.d(k + 1, y)).collect()
        } else {
            [0].into_iter().collect()
        };
        let mut counts = std::collections::BTreeMap::new();
        for &x in &ker {
            let mut j = 1;
            while !im.contains(&((x * j) % ok)) {
                j += 1;
            }
            *counts.entry(j).or_insert(0) += 1;
        }
        for c in counts.values_mut() {
            *c /= im.len();
        }
        counts
    }

    /// `Γ(C)` truncated at level `top`, as a simplicial group with tabulated structure maps.
    pub fn simplicial_group(&self, top: usize) -> FiniteSimplicialGroup {
        let kmax = self.orders.len() - 1;
        let bases: Vec<Vec<Vec<usize>>> = (0..=top + 1).map(|m| summands(m, kmax)).collect();
        let moduli = |m: usize| -> Vec<usize> { bases[m].iter().map(|s| self.orders[*s.last().unwrap()]).collect() };
        let levels: Vec<FiniteGroup> = (0..=top).map(|m| product_group(&moduli(m))).collect();
        let decode = |m: usize, x: usize| -> Vec<usize> {
            let mut x = x;
            moduli(m)
                .iter()
                .map(|&q| {
                    let c = x % q;
                    x /= q;
                    c
                })
                .collect()
        };
        let encode = |m: usize, v: &[usize]| -> usize {
            let mut x = 0;
            for (c, q) in v.iter().zip(moduli(m)).rev() {
                x = x * q + c % q;
            }
            x
        };
        let apply = |m: usize, theta: &[usize], x: usize| -> usize {
            let m2 = theta.len() - 1;
            let coords = decode(m, x);
            let mut out = vec![0usize; bases[m2].len()];
            for (s, c) in bases[m].iter().zip(&coords) {
                match act(theta, s) {
                    DkAction::Keep(eta) => {
                        let t = bases[m2].iter().position(|b| *b == eta).expect("summand");
                        out[t] += c;
                    }
                    DkAction::Differential(eta) => {
                        if let Some(t) = bases[m2].iter().position(|b| *b == eta) {
                            out[t] += self.d(*s.last().unwrap(), *c);
                        }
                    }
                    DkAction::Zero => {}
                }
            }
            encode(m2, &out)
        };
        FiniteSimplicialGroup::from_fns(
            levels.clone(),
            |m, i, x| apply(m, &face_map(m, i), x),
            |m, j, x| apply(m, &degen_map(m, j), x),
        )
    }
}

/// `Z/q_0 × Z/q_1 × ...` with mixed-radix element indices (first factor fastest).
pub fn product_group(moduli: &[usize]) -> FiniteGroup {
    moduli
        .iter()
        .fold(FiniteGroup::trivial(), |acc, &q| FiniteGroup::product(&FiniteGroup::cyclic(q), &acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        for m in 0..8 {
            for k in 0..=m {
                assert_eq!(surjections(m, k).len(), binomial(m, k));
            }
        }
    }

    #[test]
    fn product_group_radix() {
        let g = product_group(&[2, 3]);
        assert_eq!(g.order(), 6);
        // element 1 = (1, 0): order 2; element 2 = (0, 1): order 3
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.mul(g.mul(2, 2), 2), 0);
    }
}
