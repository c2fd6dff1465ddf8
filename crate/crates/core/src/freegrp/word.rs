use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// A reduced word in a free group, stored run-length encoded.
///
/// Adjacent runs always have distinct generators and nonzero exponents, so two
/// words are equal as group elements iff they are equal as values.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn gen_pow(g: usize, e: i64) -> Self {
        let mut w = Word::identity();
        w.push(g, e);
        w
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^e` on the right, cancelling against the last run.
    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((g, e));
    }

    pub fn runs(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter length (sum of absolute exponents).
    pub fn len(&self) -> usize {
        self.0.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|(g, _)| *g).max()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn mul_assign(&mut self, other: &Word) {
        for &(g, e) in &other.0 {
            self.push(g, e);
        }
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out.mul_assign(&base);
        }
        out
    }

    /// `self * other * self^-1`
    pub fn conjugate_by(&self, other: &Word) -> Word {
        other.mul(self).mul(&other.inv())
    }

    /// `[x, y] = x y x^-1 y^-1`
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inv()).mul(&y.inv())
    }

    /// Total exponent of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|(h, _)| *h == g).map(|(_, e)| e).sum()
    }

    /// Substitutes `images[g]` for each generator `g`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.0 {
            let img = if e < 0 { images[g].inv() } else { images[g].clone() };
            for _ in 0..e.unsigned_abs() {
                out.mul_assign(&img);
            }
        }
        out
    }

    /// Evaluates the word in any group given generator images.
    pub fn evaluate<T: Clone>(&self, images: &[T], one: T, mul: impl Fn(&T, &T) -> T, inv: impl Fn(&T) -> T) -> T {
        let mut acc = one;
        for &(g, e) in &self.0 {
            let x = if e < 0 { inv(&images[g]) } else { images[g].clone() };
            for _ in 0..e.unsigned_abs() {
                acc = mul(&acc, &x);
            }
        }
        acc
    }

    /// Iterates single letters `(g, ±1)` left to right.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat((g, e.signum())).take(e.unsigned_abs() as usize))
    }

    /// Random reduced word of letter length at most `max_len` in the first `rank` generators.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, rank: usize, max_len: usize) -> Word {
        if rank == 0 {
            return Word::identity();
        }
        let len = rng.gen_range(0..=max_len);
        Word::from_letters((0..len).map(|_| (rng.gen_range(0..rank), if rng.gen_bool(0.5) { 1 } else { -1 })))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| if *e == 1 { format!("x{g}") } else { format!("x{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in &self.word.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self.names.get(*g).cloned().unwrap_or_else(|| format!("x{g}"));
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A free group with named generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeGroup {
    names: Vec<String>,
}

impl FreeGroup {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::Parse("empty generator label".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::Parse(format!("duplicate generator label '{a}'")));
            }
        }
        Ok(FreeGroup { names })
    }

    /// Free group with generators `x0, x1, ...`.
    pub fn of_rank(rank: usize) -> Self {
        FreeGroup { names: (0..rank).map(|i| format!("x{i}")).collect() }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.max_gen().map_or(true, |g| g < self.rank())
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{w:?} uses a generator outside rank {}", self.rank())))
        }
    }

    pub fn mul(&self, a: &Word, b: &Word) -> Result<Word> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.mul(b))
    }

    pub fn inv(&self, a: &Word) -> Result<Word> {
        self.check(a)?;
        Ok(a.inv())
    }

    /// Parses words like `a b^-1 a^2`, `aba^-1b^-1` or `a*b`; `1` or the empty
    /// string is the identity. Labels are matched longest first.
    pub fn parse(&self, s: &str) -> Result<Word> {
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.names[i].len()));
        let mut w = Word::identity();
        let mut rest = s.trim();
        if rest == "1" {
            return Ok(w);
        }
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '*' || c == '.');
            if rest.is_empty() {
                break;
            }
            let g = order
                .iter()
                .copied()
                .find(|&i| rest.starts_with(self.names[i].as_str()))
                .ok_or_else(|| Error::Parse(format!("unknown generator at '{rest}' in '{s}'")))?;
            rest = &rest[self.names[g].len()..];
            let mut e = 1i64;
            if let Some(after) = rest.strip_prefix('^') {
                let digits: usize = after
                    .char_indices()
                    .take_while(|(i, c)| c.is_ascii_digit() || (*i == 0 && (*c == '-' || *c == '+')))
                    .count();
                e = after[..digits]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{s}'")))?;
                rest = &after[digits..];
            }
            w.push(g, e);
        }
        Ok(w)
    }

    pub fn format(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let (a, b) = (Word::gen(0), Word::gen(1));
        let x = a.mul(&b).mul(&b.inv().mul(&a));
        assert_eq!(x, Word::gen_pow(0, 2));
        assert_eq!(a.mul(&b.inv()).inv(), b.mul(&a.inv()));
    }

    #[test]
    fn parse_and_print() {
        let f = FreeGroup::new(vec!["a".into(), "b".into()]).unwrap();
        let w = f.parse("aba^-1b^-1").unwrap();
        assert_eq!(w, Word::commutator(&Word::gen(0), &Word::gen(1)));
        assert_eq!(f.format(&w), "a b a^-1 b^-1");
        assert_eq!(f.parse(&f.format(&w)).unwrap(), w);
        assert_eq!(f.parse("a^2 a^-2").unwrap(), Word::identity());
        assert!(f.parse("c").is_err());
        assert!(FreeGroup::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn substitution() {
        // a -> xy, b -> y^-1 sends ab to x
        let imgs = vec![Word::from_letters([(0, 1), (1, 1)]), Word::gen_pow(1, -1)];
        let w = Word::from_letters([(0, 1), (1, 1)]);
        assert_eq!(w.substitute(&imgs), Word::gen(0));
    }
}
