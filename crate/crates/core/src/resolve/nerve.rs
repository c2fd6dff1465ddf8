use crate::error::{Error, Result};
use crate::freegrp::{DiscreteGroup, FiniteGroup, GroupElt};

/// Bar-construction face on a tuple `(g_1, ..., g_m)`: `d_0` drops the first
/// entry, `d_i` multiplies entries `i` and `i+1`, `d_m` drops the last.
pub fn bar_face(pi: &DiscreteGroup, x: &[GroupElt], i: usize) -> Vec<GroupElt> {
    let m = x.len();
    assert!(m >= 1 && i <= m);
    if i == 0 {
        x[1..].to_vec()
    } else if i == m {
        x[..m - 1].to_vec()
    } else {
        let mut y = x[..i - 1].to_vec();
        y.push(pi.mul(&x[i - 1], &x[i]));
        y.extend_from_slice(&x[i + 1..]);
        y
    }
}

/// Bar-construction degeneracy: `s_j` inserts the identity at position `j`.
pub fn bar_degen(pi: &DiscreteGroup, x: &[GroupElt], j: usize) -> Vec<GroupElt> {
    let mut y = x.to_vec();
    y.insert(j, pi.identity());
    y
}

/// Face of the simplex `x` spanned by the vertices `verts` (strictly increasing).
pub fn bar_restrict(pi: &DiscreteGroup, x: &[GroupElt], verts: &[usize]) -> Vec<GroupElt> {
    verts.windows(2).map(|w| pi.product(&x[w[0]..w[1]])).collect()
}

/// A reduced simplicial set truncated at degree `top`, with simplices
/// numbered per degree and structure maps tabulated as index functions.
#[derive(Clone, Debug)]
pub struct ReducedSimplicialSet {
    pub counts: Vec<usize>,
    /// `faces[m][i][x]`, for `m >= 1`
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degens[m][j][x]`, for `m < top`
    pub degens: Vec<Vec<Vec<usize>>>,
}

impl ReducedSimplicialSet {
    pub fn top(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn is_degenerate(&self, m: usize, x: usize) -> bool {
        m > 0 && (0..m).any(|j| self.degens[m - 1][j].contains(&x))
    }

    pub fn nondegenerate_count(&self, m: usize) -> usize {
        (0..self.counts[m]).filter(|&x| !self.is_degenerate(m, x)).count()
    }

    /// Checks reducedness and the simplicial identities on every simplex.
    pub fn check(&self) -> Result<()> {
        if self.counts[0] != 1 {
            return Err(Error::Precondition(format!("{} vertices, expected one", self.counts[0])));
        }
        let top = self.top();
        for m in 0..=top {
            for x in 0..self.counts[m] {
                if m >= 2 {
                    for j in 1..=m {
                        for i in 0..j {
                            let l = self.faces[m - 1][i][self.faces[m][j][x]];
                            let r = self.faces[m - 1][j - 1][self.faces[m][i][x]];
                            if l != r {
                                return Err(Error::Identity(format!("d{i} d{j} on simplex {x} of degree {m}")));
                            }
                        }
                    }
                }
                if m < top {
                    for j in 0..=m {
                        let sx = self.degens[m][j][x];
                        for i in 0..=m + 1 {
                            let l = self.faces[m + 1][i][sx];
                            let r = if i < j {
                                self.degens[m - 1][j - 1][self.faces[m][i][x]]
                            } else if i <= j + 1 {
                                x
                            } else {
                                self.degens[m - 1][j][self.faces[m][i - 1][x]]
                            };
                            if l != r {
                                return Err(Error::Identity(format!("d{i} s{j} on simplex {x} of degree {m}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The nerve `BG` of a finite group through degree `top`. The `m`-simplex with
/// index `x` is the tuple of base-`|G|` digits of `x`, first entry most significant.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub group: FiniteGroup,
    pub set: ReducedSimplicialSet,
}

impl Nerve {
    pub fn decode(&self, m: usize, x: usize) -> Vec<usize> {
        decode(self.group.order(), m, x)
    }

    pub fn encode(&self, t: &[usize]) -> usize {
        encode(self.group.order(), t)
    }
}

fn decode(q: usize, m: usize, mut x: usize) -> Vec<usize> {
    let mut t = vec![0; m];
    for k in (0..m).rev() {
        t[k] = x % q;
        x /= q;
    }
    t
}

fn encode(q: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * q + g)
}

pub fn nerve(g: &FiniteGroup, top: usize) -> Result<Nerve> {
    if top < 1 {
        return Err(Error::Precondition("nerve needs top >= 1".into()));
    }
    let q = g.order();
    let counts: Vec<usize> = (0..=top)
        .map(|m| q.checked_pow(m as u32).ok_or_else(|| Error::SizeBound(format!("|G|^{m}"))))
        .collect::<Result<_>>()?;
    if counts[top] > 50_000_000 {
        return Err(Error::SizeBound(format!("{} simplices in degree {top}", counts[top])));
    }
    let pi = DiscreteGroup::Finite(g.clone());
    let to_elts = |t: &[usize]| -> Vec<GroupElt> { t.iter().map(|&a| GroupElt::Fin(a)).collect() };
    let from_elts = |t: &[GroupElt]| -> Vec<usize> {
        t.iter()
            .map(|e| match e {
                GroupElt::Fin(a) => *a,
                _ => unreachable!(),
            })
            .collect()
    };
    let faces = (0..=top)
        .map(|m| {
            if m == 0 {
                return vec![];
            }
            (0..=m)
                .map(|i| {
                    (0..counts[m])
                        .map(|x| encode(q, &from_elts(&bar_face(&pi, &to_elts(&decode(q, m, x)), i))))
                        .collect()
                })
                .collect()
        })
        .collect();
    let degens = (0..=top)
        .map(|m| {
            if m == top {
                return vec![];
            }
            (0..=m)
                .map(|j| {
                    (0..counts[m])
                        .map(|x| {
                            let mut t = decode(q, m, x);
                            t.insert(j, 0);
                            encode(q, &t)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(Nerve { group: g.clone(), set: ReducedSimplicialSet { counts, faces, degens } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nerve_of_z2() {
        let n = nerve(&FiniteGroup::cyclic(2), 3).unwrap();
        n.set.check().unwrap();
        assert_eq!(n.set.counts[2], 4);
        assert_eq!(n.set.nondegenerate_count(2), 1);
        let t = nerve(&FiniteGroup::trivial(), 3).unwrap();
        assert_eq!(t.set.nondegenerate_count(2), 0);
    }

    #[test]
    fn faces_of_pair() {
        let s3 = FiniteGroup::symmetric(3);
        let n = nerve(&s3, 2).unwrap();
        let (g, h) = (1, 3);
        let x = n.encode(&[g, h]);
        assert_eq!(n.decode(1, n.set.faces[2][0][x]), vec![h]);
        assert_eq!(n.decode(1, n.set.faces[2][1][x]), vec![s3.mul(g, h)]);
        assert_eq!(n.decode(1, n.set.faces[2][2][x]), vec![g]);
    }
}
