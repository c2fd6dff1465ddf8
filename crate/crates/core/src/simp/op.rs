use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// A face `d_i` or degeneracy `s_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpSymbol {
    Face(usize),
    Degen(usize),
}

impl fmt::Display for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpSymbol::Face(i) => write!(f, "d{i}"),
            OpSymbol::Degen(j) => write!(f, "s{j}"),
        }
    }
}

/// A simplicial operator from level `source` to level `target`, stored as
/// the monotone map `theta: [target] -> [source]` it is induced by.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialOp {
    source: usize,
    theta: Vec<usize>,
}

impl SimplicialOp {
    pub fn identity(n: usize) -> Self {
        SimplicialOp { source: n, theta: (0..=n).collect() }
    }

    /// `d_i` on level `n`.
    pub fn face(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::Precondition(format!("d{i} undefined on level {n}")));
        }
        Ok(SimplicialOp { source: n, theta: (0..n).map(|k| if k < i { k } else { k + 1 }).collect() })
    }

    /// `s_j` on level `n`.
    pub fn degen(n: usize, j: usize) -> Result<Self> {
        if j > n {
            return Err(Error::Precondition(format!("s{j} undefined on level {n}")));
        }
        Ok(SimplicialOp { source: n, theta: (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect() })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    /// `other` applied after `self`.
    pub fn then(&self, other: &SimplicialOp) -> Result<SimplicialOp> {
        if other.source != self.target() {
            return Err(Error::Dimension(format!(
                "operator to level {} followed by one from level {}",
                self.target(),
                other.source
            )));
        }
        Ok(SimplicialOp { source: self.source, theta: other.theta.iter().map(|&k| self.theta[k]).collect() })
    }

    /// Operator of a symbol string applied right to left (the last symbol acts first).
    pub fn from_symbols(n: usize, symbols: &[OpSymbol]) -> Result<Self> {
        let mut op = SimplicialOp::identity(n);
        for s in symbols.iter().rev() {
            let m = op.target();
            let next = match *s {
                OpSymbol::Face(i) => SimplicialOp::face(m, i)?,
                OpSymbol::Degen(j) => SimplicialOp::degen(m, j)?,
            };
            op = op.then(&next)?;
        }
        Ok(op)
    }

    /// Unique normal form `s_{j1} ... s_{jp} d_{i1} ... d_{iq}` with
    /// `j1 > ... > jp` and `i1 < ... < iq` (rightmost acts first).
    pub fn normal_form(&self) -> Vec<OpSymbol> {
        let n = self.source;
        let m = self.target();
        let mut out = Vec::new();
        // degeneracies: positions where theta repeats, descending
        let mut degs: Vec<usize> = (0..m).filter(|&i| self.theta[i] == self.theta[i + 1]).collect();
        degs.reverse();
        out.extend(degs.into_iter().map(OpSymbol::Degen));
        // faces: values of [n] missed by theta, ascending
        out.extend((0..=n).filter(|v| !self.theta.contains(v)).map(OpSymbol::Face));
        out
    }

    /// Splits `theta = mu . eta` into a surjection and an injection; returns
    /// `(eta, mu)` as index vectors.
    pub fn epi_mono(&self) -> (Vec<usize>, Vec<usize>) {
        let mut mu: Vec<usize> = self.theta.clone();
        mu.dedup();
        let mut eta = Vec::with_capacity(self.theta.len());
        let mut k = 0;
        for (i, &v) in self.theta.iter().enumerate() {
            if i > 0 && v != self.theta[i - 1] {
                k += 1;
            }
            eta.push(k);
        }
        (eta, mu)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize, max_level: usize) -> (Vec<OpSymbol>, SimplicialOp) {
        let mut syms = Vec::new();
        let mut level = n;
        // generate in application order, then reverse to written order
        for _ in 0..len {
            let can_face = level > 0;
            let can_degen = level < max_level;
            let use_face = match (can_face, can_degen) {
                (true, true) => rng.gen_bool(0.5),
                (f, _) => f,
            };
            if use_face {
                syms.push(OpSymbol::Face(rng.gen_range(0..=level)));
                level -= 1;
            } else if can_degen {
                syms.push(OpSymbol::Degen(rng.gen_range(0..=level)));
                level += 1;
            }
        }
        syms.reverse();
        let op = SimplicialOp::from_symbols(n, &syms).expect("valid by construction");
        (syms, op)
    }
}

pub fn format_symbols(s: &[OpSymbol]) -> String {
    if s.is_empty() {
        return "id".into();
    }
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use OpSymbol::*;

    #[test]
    fn basic_identities() {
        // d_i s_i = id
        let op = SimplicialOp::from_symbols(2, &[Face(1), Degen(1)]).unwrap();
        assert_eq!(op, SimplicialOp::identity(2));
        // d_0 d_1 = d_0 d_0 on level 2
        let a = SimplicialOp::from_symbols(2, &[Face(0), Face(1)]).unwrap();
        let b = SimplicialOp::from_symbols(2, &[Face(0), Face(0)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.normal_form(), vec![Face(0), Face(1)]);
    }

    #[test]
    fn normal_form_round_trip() {
        let op = SimplicialOp::from_symbols(3, &[Degen(0), Degen(1), Face(0), Face(3)]).unwrap();
        let nf = op.normal_form();
        assert_eq!(SimplicialOp::from_symbols(3, &nf).unwrap(), op);
        let OpSymbol::Degen(a) = nf[0] else { panic!() };
        let OpSymbol::Degen(b) = nf[1] else { panic!() };
        assert!(a > b);
    }
}
