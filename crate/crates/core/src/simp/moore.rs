//! Moore subgroups, the retractions `r^j_n`, and combinatorial homotopy groups.

use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;

use rand::Rng;
use serde::Serialize;

use super::group::{FiniteSimplicialGroup, FreeSimplicialGroup, SimplicialGroup};
use crate::error::{Error, Result};
use crate::freegrp::{GroupRingElt, Word};

fn check_level<G: SimplicialGroup>(g: &G, n: usize) -> Result<()> {
    if n > g.top() {
        Err(Error::Truncation { degree: n as i64, top: g.top() as i64 })
    } else {
        Ok(())
    }
}

/// `x ∈ G^j_n`, i.e. `∂_i x = 1` for `0 <= i <= j` (`j = -1` always holds).
pub fn moore_member<G: SimplicialGroup>(g: &G, n: usize, j: i64, x: &G::Elt) -> Result<bool> {
    check_level(g, n)?;
    if j < -1 || j > n as i64 {
        return Err(Error::Precondition(format!("Moore index {j} on level {n}")));
    }
    if n == 0 {
        return Ok(j < 0 || g.is_identity(0, x));
    }
    for i in 0..=j.max(-1) {
        if !g.is_identity(n - 1, &g.face_raw(n, i as usize, x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `λ^j_n(x) = s_j ∂_j x`
pub fn lambda<G: SimplicialGroup>(g: &G, n: usize, j: usize, x: &G::Elt) -> Result<G::Elt> {
    if j >= n {
        return Err(Error::Precondition(format!("λ^{j}_{n} needs j < n")));
    }
    let d = g.face(n, j, x)?;
    g.degen(n - 1, j, &d)
}

/// `r^j_n(x) = r^{j-1}_n(x) · (λ^j_n(r^{j-1}_n(x)))^{-1}`, with `r^{-1}_n = id`.
pub fn retract<G: SimplicialGroup>(g: &G, n: usize, j: i64, x: &G::Elt) -> Result<G::Elt> {
    check_level(g, n)?;
    if j >= n as i64 {
        return Err(Error::Precondition(format!("r^{j}_{n} needs j < n")));
    }
    let mut y = x.clone();
    for k in 0..=j.max(-1) {
        let l = lambda(g, n, k as usize, &y)?;
        y = g.mul(n, &y, &g.inv(n, &l));
    }
    Ok(y)
}

/// `A_n(x)`: `A_0 = r^{n-2}_{n-1}(∂_0 x)`, `A_i = r^{n-2}_{n-1}(∂_i x) · A_{i-1}^{-1}`.
pub fn a_sequence<G: SimplicialGroup>(g: &G, n: usize, x: &G::Elt) -> Result<G::Elt> {
    if n == 0 {
        return Err(Error::Precondition("A_n needs n >= 1".into()));
    }
    let j = n as i64 - 2;
    let mut a = retract(g, n - 1, j, &g.face(n, 0, x)?)?;
    for i in 1..=n {
        let r = retract(g, n - 1, j, &g.face(n, i, x)?)?;
        a = g.mul(n - 1, &r, &g.inv(n - 1, &a));
    }
    Ok(a)
}

/// Computes `A_n(x)` and checks `∂_n(r^{n-1}_n(x)) = A_n(x)` as an equality of elements.
pub fn boundary_of_retract<G: SimplicialGroup>(g: &G, n: usize, x: &G::Elt) -> Result<G::Elt> {
    check_level(g, n)?;
    let a = a_sequence(g, n, x)?;
    let lhs = g.face(n, n, &retract(g, n, n as i64 - 1, x)?)?;
    if lhs != a {
        return Err(Error::Identity(format!(
            "∂_{n} r^{}_{n}(x) = {} but A_{n}(x) = {} for x = {}",
            n - 1,
            g.format(n - 1, &lhs),
            g.format(n - 1, &a),
            g.format(n, x)
        )));
    }
    Ok(a)
}

/// `B_n(x)` with `B_0 = ∂_0 x` and `B_i = r^{i-2}_{n-1}(∂_i x) B_{i-1}^{-1}`,
/// which equals `∂_n r^{n-1}_n(x)` on the nose. Agrees with `A_n` for `n <= 2`.
pub fn graded_a_sequence<G: SimplicialGroup>(g: &G, n: usize, x: &G::Elt) -> Result<G::Elt> {
    if n == 0 {
        return Err(Error::Precondition("B_n needs n >= 1".into()));
    }
    let mut b = g.face(n, 0, x)?;
    for i in 1..=n {
        let r = retract(g, n - 1, i as i64 - 2, &g.face(n, i, x)?)?;
        b = g.mul(n - 1, &r, &g.inv(n - 1, &b));
    }
    Ok(b)
}

/// A random element of `G^n_n`, as `∂_{n+1} r^n_{n+1}(w)` for a random word `w`.
pub fn random_moore_cycle<R: Rng + ?Sized>(g: &FreeSimplicialGroup, rng: &mut R, n: usize, max_len: usize) -> Result<Word> {
    check_level(g, n + 1)?;
    let w = g.random_word(rng, n + 1, max_len);
    let r = retract(g, n + 1, n as i64, &w)?;
    g.face(n + 1, n + 1, &r)
}

/// Pointwise split exactness: for `x ∈ G^k_n` (`k < n`), `s_{k+1}x ∈ G^k_{n+1}`
/// and `∂_{k+1} s_{k+1} x = x`.
pub fn check_split<G: SimplicialGroup>(g: &G, n: usize, k: usize, x: &G::Elt) -> Result<()> {
    if k >= n {
        return Err(Error::Precondition("split check needs k < n".into()));
    }
    if !moore_member(g, n, k as i64, x)? {
        return Err(Error::Precondition(format!("{} is not in G^{k}_{n}", g.format(n, x))));
    }
    let s = g.degen(n, k + 1, x)?;
    if !moore_member(g, n + 1, k as i64, &s)? {
        return Err(Error::Identity(format!("s{} x not in G^{k}_{}", k + 1, n + 1)));
    }
    if g.face(n + 1, k + 1, &s)? != *x {
        return Err(Error::Identity(format!("d{0} s{0} x != x", k + 1)));
    }
    Ok(())
}

/// Description of a finite group by its order and the number of elements of each order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroupDescription {
    pub order: usize,
    pub abelian: bool,
    pub element_orders: BTreeMap<usize, usize>,
    /// Invariant factors (each dividing the next) when abelian.
    pub invariants: Option<Vec<u64>>,
}

impl FiniteGroupDescription {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// Invariant factors of a finite abelian group from its element-order counts.
pub fn invariants_from_order_counts(counts: &BTreeMap<usize, usize>) -> Vec<u64> {
    // For each prime p, the number of elements of order dividing p^k fixes the
    // p-primary part.
    let order: usize = counts.values().sum();
    let mut primes = Vec::new();
    let mut m = order;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    // per prime, list of exponents of cyclic factors (descending)
    let mut factors: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let dividing = |k: u32| -> usize {
            let pk = p.pow(k);
            counts.iter().filter(|(o, _)| pk % **o == 0).map(|(_, c)| c).sum()
        };
        // log_p |G[p^k]| = sum_i min(k, e_i)
        let mut logs = vec![0u32];
        let mut k = 1;
        loop {
            let c = dividing(k);
            let mut l = 0;
            let mut x = c;
            while x > 1 {
                x /= p;
                l += 1;
            }
            logs.push(l);
            if logs[k as usize] == logs[k as usize - 1] {
                break;
            }
            k += 1;
        }
        // number of factors with e_i >= k is logs[k] - logs[k-1]
        let mut exps = Vec::new();
        for k in 1..logs.len() {
            let ge_k = logs[k] - logs[k - 1];
            let ge_next = if k + 1 < logs.len() { logs[k + 1] - logs[k] } else { 0 };
            for _ in 0..(ge_k - ge_next) {
                exps.push(p.pow(k as u32) as u64);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        factors.push(exps);
    }
    let len = factors.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv: Vec<u64> = (0..len)
        .map(|i| factors.iter().map(|f| f.get(i).copied().unwrap_or(1)).product())
        .collect();
    inv.reverse();
    inv
}

fn describe_quotient<T: Clone + Eq + Hash>(
    elements: &[T],
    sub: &HashSet<T>,
    mul: impl Fn(&T, &T) -> T,
    one: &T,
) -> FiniteGroupDescription {
    let index = elements.len() / sub.len();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for x in elements {
        let mut k = 1;
        let mut y = x.clone();
        while !sub.contains(&y) {
            y = mul(&y, x);
            k += 1;
        }
        *counts.entry(k).or_default() += 1;
    }
    // each coset was counted |sub| times
    for c in counts.values_mut() {
        *c /= sub.len();
    }
    let abelian = elements.iter().all(|a| {
        elements.iter().all(|b| {
            // ab(ba)^{-1} ∈ sub  <=>  ab ∈ (ba) sub; test via membership of ab*inv(ba)
            let ab = mul(a, b);
            let ba = mul(b, a);
            ab == ba || same_coset(&ab, &ba, sub, elements, &mul, one)
        })
    });
    let invariants = abelian.then(|| invariants_from_order_counts(&counts));
    FiniteGroupDescription { order: index, abelian, element_orders: counts, invariants }
}

fn same_coset<T: Clone + Eq + Hash>(a: &T, b: &T, sub: &HashSet<T>, elements: &[T], mul: &impl Fn(&T, &T) -> T, one: &T) -> bool {
    // find b^{-1} by search, then test a b^{-1} ∈ sub
    let binv = elements.iter().find(|y| mul(b, y) == *one).expect("group");
    sub.contains(&mul(a, binv))
}

/// `π_n = G^n_n / ∂_{n+1}(G^n_{n+1})` (and `π_0 = G_0 / ∂_1(G^0_1)`) by enumeration.
pub fn homotopy_groups(g: &FiniteSimplicialGroup, n: usize) -> Result<FiniteGroupDescription> {
    if n + 1 > g.top() {
        return Err(Error::Truncation { degree: n as i64 + 1, top: g.top() as i64 });
    }
    let cycles: Vec<usize> = g.levels[n]
        .elements()
        .filter(|x| moore_member(g, n, n as i64, x).expect("in range"))
        .collect();
    let upper: Vec<usize> = g.levels[n + 1]
        .elements()
        .filter(|x| moore_member(g, n + 1, n as i64, x).expect("in range"))
        .collect();
    let image: HashSet<usize> = upper.iter().map(|x| g.face_raw(n + 1, n + 1, x)).collect();
    let lvl = &g.levels[n];
    Ok(describe_quotient(&cycles, &image, |a, b| lvl.mul(*a, *b), &0))
}

/// For `a, b` in the level-`n` Moore ideal (all `∂_i`, `i <= n`, vanish),
/// returns `w = s_n(a)(s_n(b) - s_{n-1}(b))`, checking that `∂_i w = 0` for
/// `i <= n` and `∂_{n+1} w = ab`.
pub fn moore_square_witness(
    g: &FreeSimplicialGroup,
    n: usize,
    a: &GroupRingElt<Word>,
    b: &GroupRingElt<Word>,
) -> Result<GroupRingElt<Word>> {
    if n == 0 {
        return Err(Error::Precondition("the witness needs n >= 1".into()));
    }
    check_level(g, n + 1)?;
    for (name, x) in [("a", a), ("b", b)] {
        for i in 0..=n {
            if !x.map_keys(|w| g.face_raw(n, i, w)).is_zero() {
                return Err(Error::Precondition(format!("∂_{i}({name}) != 0: not in the Moore ideal")));
            }
        }
    }
    let s = |j: usize, x: &GroupRingElt<Word>| x.map_keys(|w| g.degen_raw(n, j, w));
    let w = s(n, a).mul(&s(n, b).sub(&s(n - 1, b)));
    for i in 0..=n {
        if !w.map_keys(|u| g.face_raw(n + 1, i, u)).is_zero() {
            return Err(Error::Identity(format!("∂_{i} of the witness is nonzero")));
        }
    }
    if w.map_keys(|u| g.face_raw(n + 1, n + 1, u)) != a.mul(b) {
        return Err(Error::Identity(format!("∂_{} of the witness differs from ab", n + 1)));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_from_counts() {
        let mut c = BTreeMap::new();
        // Z/2 + Z/4: orders 1:1, 2:3, 4:4
        c.insert(1, 1);
        c.insert(2, 3);
        c.insert(4, 4);
        assert_eq!(invariants_from_order_counts(&c), vec![2, 4]);
        let mut c = BTreeMap::new();
        // Z/6: orders 1,2,3,3,6,6
        c.insert(1, 1);
        c.insert(2, 1);
        c.insert(3, 2);
        c.insert(6, 2);
        assert_eq!(invariants_from_order_counts(&c), vec![6]);
        let mut c = BTreeMap::new();
        c.insert(1, 1);
        assert!(invariants_from_order_counts(&c).is_empty());
    }
}
