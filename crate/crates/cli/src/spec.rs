//! Group, functor and cocycle specifications given on the command line.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use simpgrp::chainlab::qlinalg::Rat;
use simpgrp::chainlab::ChainComplex;
use simpgrp::chainlab::Ring;
use simpgrp::cube::{degeneracy_split, random_functor, staircase, AugChainFunctor};
use simpgrp::freegrp::{DiscreteGroup, FiniteGroup, GroupElt, Word};
use simpgrp::resolve::{Cochain, Presentation, Resolution};
use simpgrp::{Error, Result};

#[derive(Clone, Debug)]
pub enum GroupSpec {
    Finite(FiniteGroup),
    Presented(Presentation),
}

fn positive(s: &str, what: &str) -> Result<usize> {
    match s.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Parse(format!("{what} needs a positive integer, got '{s}'"))),
    }
}

impl GroupSpec {
    /// `cyclic:m` (or `cyclic:m1,m2,..` for a product), `sym:k`, `free:r`,
    /// `trivial`, `presentation:<path>`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "trivial" if arg.is_empty() => Ok(GroupSpec::Finite(FiniteGroup::trivial())),
            "cyclic" => {
                let orders = arg.split(',').map(|m| positive(m, "cyclic")).collect::<Result<Vec<_>>>()?;
                let mut g = FiniteGroup::cyclic(orders[0]);
                for &m in &orders[1..] {
                    g = FiniteGroup::product(&g, &FiniteGroup::cyclic(m));
                }
                Ok(GroupSpec::Finite(g))
            }
            "sym" => Ok(GroupSpec::Finite(FiniteGroup::symmetric(positive(arg, "sym")?))),
            "free" => {
                let names: Vec<String> = (1..=positive(arg, "free")?).map(|i| format!("x{i}")).collect();
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                Ok(GroupSpec::Presented(Presentation::new(&names, &[])?))
            }
            "presentation" if !arg.is_empty() => {
                let text = fs::read_to_string(Path::new(arg)).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
                Ok(GroupSpec::Presented(Presentation::from_json(&text)?))
            }
            _ => Err(Error::Parse(format!("unknown group specification '{s}'"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::Finite(g) => g.name().to_string(),
            GroupSpec::Presented(p) => p.pi().name(),
        }
    }

    pub fn resolution(&self, top: usize) -> Result<Resolution> {
        match self {
            GroupSpec::Finite(g) => Resolution::bar(g, top),
            GroupSpec::Presented(p) => Resolution::presentation(p, top),
        }
    }

    /// An element of `π` from its text form: a label for finite groups, a
    /// word in the generators otherwise.
    pub fn element(&self, pi: &DiscreteGroup, s: &str) -> Result<GroupElt> {
        match self {
            GroupSpec::Finite(g) => g
                .labels()
                .iter()
                .position(|l| l == s)
                .map(GroupElt::Fin)
                .ok_or_else(|| Error::Parse(format!("'{s}' is not an element label of {}", g.name()))),
            GroupSpec::Presented(p) => {
                let w: Word = p.free.parse(s)?;
                let images: Vec<GroupElt> = (0..p.free.rank()).map(|k| p.generator_image(k)).collect();
                Ok(w.evaluate(&images, pi.identity(), |a, b| pi.mul(a, b), |a| pi.inv(a)))
            }
        }
    }
}

/// `staircase[:top]`, `constant:r[:top]`, `cech:b11,b12;b21,b22[:top]`, `random:seed[:top]`.
pub fn parse_functor(s: &str) -> Result<AugChainFunctor> {
    let parts: Vec<&str> = s.split(':').collect();
    let top_at = |i: usize, default: usize| -> Result<usize> { parts.get(i).map_or(Ok(default), |t| positive(t, "functor top")) };
    match parts[0] {
        "staircase" => degeneracy_split(&staircase(), top_at(1, 3)?),
        "constant" => {
            let r = positive(parts.get(1).copied().unwrap_or(""), "constant")?;
            let c = ChainComplex::from_parts(Ring::Int, 0, vec![r], |_| None)?;
            Ok(AugChainFunctor::constant(&c, top_at(2, 3)?))
        }
        "cech" => {
            let rows = parts
                .get(1)
                .ok_or_else(|| Error::Parse("cech needs a matrix".into()))?
                .split(';')
                .map(|row| row.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("cech entry '{x}': {e}")))).collect())
                .collect::<Result<Vec<Vec<i64>>>>()?;
            AugChainFunctor::cech(&rows, top_at(2, 3)?)
        }
        "random" => {
            let seed: u64 = parts.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| Error::Parse("random needs a seed".into()))?;
            let f = random_functor(seed, true)?;
            match parts.get(2) {
                Some(_) => Err(Error::Parse("random functors choose their own top level".into())),
                None => Ok(f),
            }
        }
        _ => Err(Error::Parse(format!("unknown functor specification '{s}'"))),
    }
}

#[derive(Debug, Deserialize)]
struct CocycleFile {
    normalized: bool,
    cocycles: Vec<CocycleEntry>,
}

#[derive(Debug, Deserialize)]
struct CocycleEntry {
    name: String,
    #[serde(default)]
    formula: Option<String>,
    #[serde(default)]
    values: Vec<TableEntry>,
}

#[derive(Debug, Deserialize)]
struct TableEntry {
    args: Vec<String>,
    value: String,
}

fn formula(f: &str, degree: usize) -> Result<Cochain> {
    let (kind, arg) = f.split_once(':').unwrap_or((f, ""));
    let ints = || arg.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("'{x}': {e}")))).collect::<Result<Vec<_>>>();
    let c = match kind {
        "zero" => Cochain::zero(degree),
        "exponent" => match ints()?[..] {
            [k] => Cochain::exponent(k),
            _ => return Err(Error::Parse("exponent:k".into())),
        },
        "cup" => match ints()?[..] {
            [i, j] => Cochain::cup(i, j),
            _ => return Err(Error::Parse("cup:i,j".into())),
        },
        _ => return Err(Error::Parse(format!("unknown cocycle formula '{f}'"))),
    };
    if c.degree != degree {
        return Err(Error::Dimension(format!("'{f}' has degree {}, not {degree}", c.degree)));
    }
    Ok(c)
}

/// Reads normalized cochains of the given degree from a JSON file.
pub fn read_cocycles(path: &Path, group: &GroupSpec, pi: &DiscreteGroup, degree: usize) -> Result<Vec<Cochain>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let file: CocycleFile = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if !file.normalized {
        return Err(Error::Parse("only normalized cochains are accepted (set \"normalized\": true)".into()));
    }
    file.cocycles
        .iter()
        .map(|c| match (&c.formula, c.values.is_empty()) {
            (Some(f), true) => Ok(formula(f, degree)?.renamed(&c.name)),
            (None, _) => {
                let mut table = HashMap::new();
                for e in &c.values {
                    if e.args.len() != degree {
                        return Err(Error::Parse(format!("{}: {} arguments in degree {degree}", c.name, e.args.len())));
                    }
                    let xs = e.args.iter().map(|a| group.element(pi, a)).collect::<Result<Vec<_>>>()?;
                    let v: Rat = e.value.parse().map_err(|_| Error::Parse(format!("{}: value '{}'", c.name, e.value)))?;
                    if xs.iter().any(|x| pi.is_identity(x)) && v != Rat::from_integer(0.into()) {
                        return Err(Error::Parse(format!("{}: nonzero value on a tuple containing the identity", c.name)));
                    }
                    table.insert(xs, v);
                }
                Ok(Cochain::table(degree, &c.name, table))
            }
            (Some(_), false) => Err(Error::Parse(format!("{}: give either a formula or values", c.name))),
        })
        .collect()
}
