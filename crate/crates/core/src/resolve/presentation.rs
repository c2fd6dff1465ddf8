//! Free simplicial resolutions built step by step from a presentation.
//!
//! Every cell `c` of degree `d` contributes to level `k` one generator for
//! each surjection `σ: [k] ↠ [d]` (its degenerate copy `σ^* c`). Level 0 is
//! free on the generators, level 1 adds one cell per relator with
//! `∂_0 r = 1` and `∂_1 r = relator`, and higher cells come from the input.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegrp::{abelianize_images, AbelianGroup, DiscreteGroup, FreeGroup, GroupElt, Word};
use crate::simp::dold_kan::{degen_map, face_map, surjections};
use crate::simp::{FreeLevel, FreeSimplicialGroup, OpSymbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub label: String,
    pub faces: Vec<String>,
}

/// On-disk presentation format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    #[serde(default)]
    pub cells: BTreeMap<String, Vec<CellSpec>>,
    #[serde(default)]
    pub exact_through: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub free: FreeGroup,
    pub relators: Vec<Word>,
    /// Higher cells by degree (>= 2), faces still in text form.
    pub cells: BTreeMap<usize, Vec<CellSpec>>,
    pub exact_through: Option<usize>,
}

impl Presentation {
    pub fn new(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let free = FreeGroup::new(generators.iter().map(|s| s.to_string()).collect())?;
        let relators = relators.iter().map(|r| free.parse(r)).collect::<Result<Vec<_>>>()?;
        if relators.iter().any(Word::is_identity) {
            return Err(Error::Precondition("relators must be nonempty reduced words".into()));
        }
        Ok(Presentation { free, relators, cells: BTreeMap::new(), exact_through: None })
    }

    pub fn from_file(f: &PresentationFile) -> Result<Self> {
        let gens: Vec<&str> = f.generators.iter().map(String::as_str).collect();
        let rels: Vec<&str> = f.relators.iter().map(String::as_str).collect();
        let mut p = Presentation::new(&gens, &rels)?;
        for (d, cells) in &f.cells {
            let d: usize = d.parse().map_err(|_| Error::Parse(format!("cell degree '{d}'")))?;
            if d < 2 {
                return Err(Error::Parse("supplied cells must have degree >= 2".into()));
            }
            for c in cells {
                if c.faces.len() != d + 1 {
                    return Err(Error::Parse(format!("cell {} of degree {d} needs {} faces", c.label, d + 1)));
                }
            }
            p.cells.insert(d, cells.clone());
        }
        p.exact_through = f.exact_through;
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: PresentationFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&f)
    }

    /// The group `π` used for augmentation: free if there are no relators,
    /// otherwise the abelianization (the only quotient with decidable word
    /// problem available in general).
    pub fn pi(&self) -> DiscreteGroup {
        if self.relators.is_empty() {
            DiscreteGroup::Free(self.free.clone())
        } else {
            DiscreteGroup::Abelian(AbelianGroup::from_relations(&abelianize_images(self.free.rank(), &self.relators)))
        }
    }

    pub fn generator_image(&self, g: usize) -> GroupElt {
        match self.pi() {
            DiscreteGroup::Free(_) => GroupElt::Free(Word::gen(g)),
            DiscreteGroup::Abelian(a) => GroupElt::Ab(a.gen_image(g).to_vec()),
            DiscreteGroup::Finite(_) => unreachable!(),
        }
    }

    /// Whether the resulting simplicial group is certified through the given
    /// homotopy degree: `π_i = 0` for `1 <= i <= exact_through`.
    pub fn exact_through(&self) -> usize {
        match self.exact_through {
            Some(k) => k,
            None if self.relators.is_empty() && self.cells.is_empty() => usize::MAX,
            None => 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub label: String,
    pub degree: usize,
    /// Faces as words in the level `degree - 1` generators (empty for degree 0).
    pub faces: Vec<Word>,
}

/// A truncated resolution together with the cell bookkeeping behind its generators.
#[derive(Clone, Debug)]
pub struct PresentationResolution {
    pub presentation: Presentation,
    pub group: FreeSimplicialGroup,
    pub cells: Vec<Cell>,
    /// `gens[k][g] = (cell, σ)`
    pub gens: Vec<Vec<(usize, Vec<usize>)>>,
    lookup: Vec<HashMap<(usize, Vec<usize>), usize>>,
}

impl PresentationResolution {
    pub fn gen_index(&self, k: usize, cell: usize, sigma: &[usize]) -> usize {
        self.lookup[k][&(cell, sigma.to_vec())]
    }
}

fn degeneracy_name(sigma: &[usize], label: &str) -> String {
    let mut s: String = (0..sigma.len() - 1)
        .rev()
        .filter(|&i| sigma[i] == sigma[i + 1])
        .map(|j| OpSymbol::Degen(j).to_string())
        .collect();
    s.push_str(label);
    s
}

/// `theta = mu . eta` with `eta` surjective and `mu` injective.
fn epi_mono(theta: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut mu = theta.to_vec();
    mu.dedup();
    let mut eta = Vec::with_capacity(theta.len());
    let mut k = 0;
    for (i, &v) in theta.iter().enumerate() {
        if i > 0 && v != theta[i - 1] {
            k += 1;
        }
        eta.push(k);
    }
    (eta, mu)
}

/// Builds the resolution through level `top`.
pub fn truncated_resolution(p: &Presentation, top: usize) -> Result<PresentationResolution> {
    let mut cells: Vec<Cell> = p
        .free
        .names()
        .iter()
        .map(|n| Cell { label: n.clone(), degree: 0, faces: vec![] })
        .collect();
    for (k, r) in p.relators.iter().enumerate() {
        cells.push(Cell { label: format!("r{}", k + 1), degree: 1, faces: vec![Word::identity(), r.clone()] });
    }
    let mut gens: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    let mut lookup: Vec<HashMap<(usize, Vec<usize>), usize>> = Vec::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    // Cells of degree d are registered before level d is enumerated.
    let register_level = |k: usize, cells: &[Cell], gens: &mut Vec<Vec<(usize, Vec<usize>)>>, lookup: &mut Vec<HashMap<(usize, Vec<usize>), usize>>, names: &mut Vec<Vec<String>>| {
        let mut g = Vec::new();
        let mut l = HashMap::new();
        let mut nm = Vec::new();
        for (ci, c) in cells.iter().enumerate() {
            if c.degree > k {
                continue;
            }
            for s in surjections(k, c.degree) {
                l.insert((ci, s.clone()), g.len());
                nm.push(degeneracy_name(&s, &c.label));
                g.push((ci, s));
            }
        }
        gens.push(g);
        lookup.push(l);
        names.push(nm);
    };
    for k in 0..=top + 1 {
        if k >= 2 {
            if let Some(specs) = p.cells.get(&k) {
                let below = FreeGroup::new(names[k - 1].clone())?;
                for spec in specs {
                    let faces = spec.faces.iter().map(|f| below.parse(f)).collect::<Result<Vec<_>>>()?;
                    cells.push(Cell { label: spec.label.clone(), degree: k, faces });
                }
            }
        }
        register_level(k, &cells, &mut gens, &mut lookup, &mut names);
    }

    // η^* on a word of level m, η: [k] ↠ [m]
    let pull = |w: &Word, m: usize, eta: &[usize], k: usize, gens: &Vec<Vec<(usize, Vec<usize>)>>, lookup: &Vec<HashMap<(usize, Vec<usize>), usize>>| -> Word {
        let imgs: Vec<Word> = gens[m]
            .iter()
            .map(|(c, s)| {
                let comp: Vec<usize> = eta.iter().map(|&i| s[i]).collect();
                Word::gen(lookup[k][&(*c, comp)])
            })
            .collect();
        w.substitute(&imgs)
    };

    let face_of = |k: usize, i: usize, gen: &(usize, Vec<usize>), gens: &Vec<Vec<(usize, Vec<usize>)>>, lookup: &Vec<HashMap<(usize, Vec<usize>), usize>>| -> Word {
        let (c, s) = gen;
        let theta = face_map(k, i);
        let comp: Vec<usize> = theta.iter().map(|&t| s[t]).collect();
        let (eta, mu) = epi_mono(&comp);
        if mu.len() == cells[*c].degree + 1 {
            Word::gen(lookup[k - 1][&(*c, eta)])
        } else {
            let l = (0..=cells[*c].degree).find(|v| !mu.contains(v)).expect("one missing vertex");
            let d = cells[*c].degree;
            pull(&cells[*c].faces[l], d - 1, &eta, k - 1, gens, lookup)
        }
    };

    // Check the prescribed faces of supplied cells.
    for (ci, c) in cells.iter().enumerate() {
        if c.degree < 2 || c.degree > top + 1 {
            continue;
        }
        let d = c.degree;
        for j in 1..=d {
            for i in 0..j {
                let fj = &c.faces[j];
                let fi = &c.faces[i];
                let lhs = fj.substitute(&(0..gens[d - 1].len()).map(|g| face_of(d - 1, i, &gens[d - 1][g], &gens, &lookup)).collect::<Vec<_>>());
                let rhs = fi.substitute(&(0..gens[d - 1].len()).map(|g| face_of(d - 1, j - 1, &gens[d - 1][g], &gens, &lookup)).collect::<Vec<_>>());
                if lhs != rhs {
                    return Err(Error::Identity(format!(
                        "cell {} (#{ci}): d{i} d{j} != d{} d{i}",
                        c.label,
                        j - 1
                    )));
                }
            }
        }
    }

    let mut levels = Vec::new();
    for k in 0..=top {
        let faces = if k == 0 {
            vec![]
        } else {
            (0..=k)
                .map(|i| gens[k].iter().map(|g| face_of(k, i, g, &gens, &lookup)).collect())
                .collect()
        };
        let degens = if k == top {
            vec![]
        } else {
            (0..=k)
                .map(|j| {
                    let theta = degen_map(k, j);
                    gens[k]
                        .iter()
                        .map(|(c, s)| {
                            let comp: Vec<usize> = theta.iter().map(|&t| s[t]).collect();
                            Word::gen(lookup[k + 1][&(*c, comp)])
                        })
                        .collect()
                })
                .collect()
        };
        levels.push(FreeLevel { names: names[k].clone(), faces, degens });
    }
    let augmentation = (0..p.free.rank()).map(|g| p.generator_image(g)).collect();
    let group = FreeSimplicialGroup {
        levels,
        pi: Some(p.pi()),
        augmentation,
        exact_through: Some(p.exact_through()),
    };
    gens.truncate(top + 1);
    lookup.truncate(top + 1);
    Ok(PresentationResolution { presentation: p.clone(), group, cells, gens, lookup })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simp::{check_augmentation, check_simplicial_identities, SimplicialGroup};

    #[test]
    fn z_mod_2() {
        let p = Presentation::new(&["a"], &["a^2"]).unwrap();
        let r = truncated_resolution(&p, 2).unwrap();
        assert_eq!(r.group.rank(1), 2);
        assert_eq!(r.group.level(1).names, vec!["s0a".to_string(), "r1".to_string()]);
        let rel = r.gen_index(1, 1, &[0, 1]);
        assert_eq!(r.group.face(1, 1, &Word::gen(rel)).unwrap(), Word::gen_pow(0, 2));
        assert_eq!(r.group.face(1, 0, &Word::gen(rel)).unwrap(), Word::identity());
        assert!(check_simplicial_identities(&r.group).passed());
        assert!(check_augmentation(&r.group).passed());
    }

    #[test]
    fn torus_ranks() {
        let p = Presentation::new(&["a", "b"], &["aba^-1b^-1"]).unwrap();
        let r = truncated_resolution(&p, 3).unwrap();
        let ranks: Vec<usize> = (0..=3).map(|k| r.group.rank(k)).collect();
        assert_eq!(ranks, vec![2, 3, 4, 5]);
        assert!(check_simplicial_identities(&r.group).passed());
    }
}
