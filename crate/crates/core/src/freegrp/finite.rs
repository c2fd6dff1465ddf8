use crate::error::{Error, Result};

/// A finite group given by its multiplication table. Element `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates closure, identity at index 0, inverses and associativity.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Precondition("a group has at least one element".into()));
        }
        if labels.len() != n {
            return Err(Error::Dimension(format!("{} labels for {n} elements", labels.len())));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Precondition("multiplication table is not closed".into()));
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::Precondition("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == 0 && table[y][x] == 0) {
                Some(y) => inverse[x] = y,
                None => return Err(Error::Precondition(format!("element {x} has no inverse"))),
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::Precondition(format!("({x}{y}){z} != {x}({y}{z})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), table, inverse, labels })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1).renamed("trivial")
    }

    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let table = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        FiniteGroup {
            name: format!("Z/{m}"),
            table,
            inverse: (0..m).map(|i| (m - i) % m).collect(),
            labels: (0..m).map(|i| i.to_string()).collect(),
        }
    }

    /// Direct product; element `(a, b)` has index `a * |h| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, k) = (g.order(), h.order());
        let idx = |a: usize, b: usize| a * k + b;
        let mut table = vec![vec![0; n * k]; n * k];
        let mut inverse = vec![0; n * k];
        let mut labels = Vec::with_capacity(n * k);
        for a in 0..n {
            for b in 0..k {
                inverse[idx(a, b)] = idx(g.inv(a), h.inv(b));
                labels.push(format!("({},{})", g.labels[a], h.labels[b]));
                for c in 0..n {
                    for d in 0..k {
                        table[idx(a, b)][idx(c, d)] = idx(g.mul(a, c), h.mul(b, d));
                    }
                }
            }
        }
        FiniteGroup { name: format!("{}x{}", g.name, h.name), table, inverse, labels }
    }

    /// Symmetric group on `k` letters; permutations in lexicographic order
    /// (identity first), composed as functions: `(p q)(i) = p(q(i))`.
    pub fn symmetric(k: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            perms.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).expect("exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let n = perms.len();
        let mut table = vec![vec![0; n]; n];
        let mut inverse = vec![0; n];
        for (a, p) in perms.iter().enumerate() {
            let mut inv = vec![0; k];
            for (i, &pi) in p.iter().enumerate() {
                inv[pi] = i;
            }
            inverse[a] = index(&inv);
            for (b, q) in perms.iter().enumerate() {
                let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                table[a][b] = index(&pq);
            }
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(""))
            .collect();
        FiniteGroup { name: format!("S{k}"), table, inverse, labels }
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Product of a sequence of elements, left to right.
    pub fn product_of(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_validate() {
        for g in [FiniteGroup::cyclic(4), FiniteGroup::symmetric(3), FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))] {
            let again = FiniteGroup::from_table(g.name(), g.table.clone(), g.labels.clone()).unwrap();
            assert_eq!(again.inverse, g.inverse);
        }
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert!(!FiniteGroup::symmetric(3).is_abelian());
        assert_eq!(FiniteGroup::trivial().order(), 1);
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]], vec!["e".into(), "x".into()]).is_err());
    }
}
