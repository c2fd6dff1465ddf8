use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use simpgrp::chainlab::qlinalg::{to_rat_vec, Rat};
use simpgrp::chainlab::Ring;
use simpgrp::cube::{filtration_oracle, run_cube_suite, same_subspace, CubeSuiteKind};
use simpgrp::homology::{bar_oracle, e_complex, pairing, DegreeResult};
use simpgrp::resolve::Cochain;
use simpgrp::suites::{barseq_suite, moore_suite, retraction_suite};
use simpgrp::{Error, Result};

use crate::spec::{parse_functor, read_cocycles, GroupSpec};
use crate::{Method, RingArg, Suite};

pub struct Outcome {
    pub ok: bool,
    pub result: Value,
    pub summary: Vec<String>,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn same(a: &DegreeResult, b: &DegreeResult) -> bool {
    a.betti == b.betti && a.torsion == b.torsion
}

pub fn homology(group: &str, max_degree: usize, method: Method, ring: RingArg) -> Result<Outcome> {
    let spec = GroupSpec::parse(group)?;
    let ring = match ring {
        RingArg::Int => Ring::Int,
        RingArg::Rat => Ring::Rat,
    };
    let e = match method {
        Method::Bar => None,
        _ => {
            let res = spec.resolution(max_degree)?;
            Some(e_complex(res.group(), ring, max_degree)?.homology())
        }
    };
    let bar = match (method, &spec) {
        (Method::E, _) => None,
        (_, GroupSpec::Finite(g)) => Some(bar_oracle(g, ring, max_degree)?),
        (_, GroupSpec::Presented(_)) => return Err(Error::Unsupported("the bar method needs a finite group".into())),
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut summary = vec![format!("{} ({:?} coefficients)", spec.name(), ring)];
    for n in 0..=max_degree {
        let (e_n, bar_n) = (e.as_ref().map(|v| &v[n]), bar.as_ref().map(|v| &v[n]));
        let matched = match (e_n, bar_n) {
            (Some(a), Some(b)) if a.verified => Some(same(a, b)),
            _ => None,
        };
        ok &= matched != Some(false);
        let shown = e_n.or(bar_n).expect("some method");
        let text = |d: &DegreeResult| match ring {
            Ring::Int => d.group().to_string(),
            Ring::Rat => d.group().to_string().replace('Z', "Q"),
        };
        let mut line = format!("  H_{n} = {}", text(shown));
        if !shown.verified {
            line.push_str("  (outside the certified range)");
        }
        match matched {
            Some(true) => line.push_str("  [bar agrees]"),
            Some(false) => line.push_str(&format!("  [bar: {}]", text(bar_n.expect("both")))),
            None => {}
        }
        summary.push(line);
        rows.push(json!({ "degree": n, "e": e_n, "bar": bar_n, "match": matched }));
    }
    let result = json!({ "group": spec.name(), "method": method, "ring": format!("{ring:?}").to_lowercase(), "degrees": rows });
    Ok(Outcome { ok, result, summary })
}

pub fn verify(suite: Suite, seed: u64, trials: usize, inject_fault: bool) -> Result<Outcome> {
    let chosen: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Barseq, Suite::Cube, Suite::Filtration, Suite::Moore, Suite::Retraction],
        s => vec![s],
    };
    let mut ok = true;
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for s in chosen {
        let (passed, value, failures) = match s {
            Suite::Cube | Suite::Filtration => {
                let kind = if s == Suite::Cube { CubeSuiteKind::Cube } else { CubeSuiteKind::Filtration };
                let r = run_cube_suite(kind, seed, trials, inject_fault);
                (r.passed(), to_value(&r), r.failures.clone())
            }
            _ => {
                let r = match s {
                    Suite::Moore => moore_suite(seed, trials, inject_fault)?,
                    Suite::Retraction => retraction_suite(seed, trials, inject_fault)?,
                    _ => barseq_suite(seed, trials, inject_fault)?,
                };
                for (k, v) in &r.passed {
                    summary.push(format!("  {:?} {k}: {v} passed", s));
                }
                (r.ok(), to_value(&r), r.failures.clone())
            }
        };
        ok &= passed;
        summary.push(format!("{:?}: {} ({} failures)", s, if passed { "pass" } else { "FAIL" }, failures.len()));
        if let Some(f) = failures.first() {
            summary.push(format!("  first failure: {f}"));
        }
        reports.push(json!({ "suite": s, "passed": passed, "report": value }));
    }
    Ok(Outcome { ok, result: json!({ "seed": seed, "trials": trials, "inject_fault": inject_fault, "suites": reports }), summary })
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn pairing_cmd(group: &str, cocycles: &Path, degree: usize, coboundary_trials: usize, seed: u64) -> Result<Outcome> {
    if degree == 0 {
        return Err(Error::Dimension("pairings need degree >= 1".into()));
    }
    let spec = GroupSpec::parse(group)?;
    let res = spec.resolution(degree)?;
    let e = e_complex(res.group(), Ring::Int, degree)?;
    let pi = res.pi().clone();
    let cs = read_cocycles(cocycles, &spec, &pi, degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // classes to pair against: free homology generators, then relator cells
    let mut classes: Vec<(String, Vec<Rat>)> = e
        .complex
        .homology_basis(degree as i64)
        .free_generators()
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("basis {i}"), to_rat_vec(g)))
        .collect();
    if let (GroupSpec::Presented(p), 2) = (&spec, degree) {
        let names = &res.group().level(1).names;
        for k in 1..=p.relators.len() {
            let label = format!("r{k}");
            if let Some(i) = names.iter().position(|s| *s == label) {
                let mut x = vec![Rat::from_integer(0.into()); names.len()];
                x[i] = Rat::from_integer(1.into());
                if simpgrp::homology::pairing::check_cycle(&e, 2, &x).is_ok() {
                    classes.push((format!("relator {label}"), x));
                }
            }
        }
    }

    let mut ok = true;
    let mut summary = vec![format!("{} in degree {degree}: {} classes", spec.name(), classes.len())];
    let mut rows = Vec::new();
    for c in &cs {
        let checked = c.check_cocycle(&pi, &mut rng, 200);
        ok &= checked.is_ok();
        let values = classes.iter().map(|(_, x)| pairing(&res, &e, c, x)).collect::<Result<Vec<_>>>()?;
        summary.push(format!("  {}: [{}]{}", c.name, rats(&values).join(", "), if checked.is_ok() { "" } else { "  (not a cocycle)" }));
        rows.push(json!({
            "cocycle": c.name,
            "is_cocycle": checked.is_ok(),
            "error": checked.err().map(|e| e.to_string()),
            "values": rats(&values),
        }));
    }
    let mut zero = 0;
    for _ in 0..coboundary_trials {
        let b = Cochain::random(&pi, degree - 1, &mut rng).coboundary();
        let values = classes.iter().map(|(_, x)| pairing(&res, &e, &b, x)).collect::<Result<Vec<_>>>()?;
        if values.iter().all(|v| *v == Rat::from_integer(0.into())) {
            zero += 1;
        }
    }
    ok &= zero == coboundary_trials;
    if coboundary_trials > 0 {
        summary.push(format!("  coboundaries pairing to zero: {zero}/{coboundary_trials}"));
    }
    let result = json!({
        "group": spec.name(),
        "degree": degree,
        "classes": classes.iter().map(|(name, x)| json!({ "name": name, "chain": rats(x) })).collect::<Vec<_>>(),
        "pairings": rows,
        "coboundary_trials": coboundary_trials,
        "coboundaries_zero": zero,
    });
    Ok(Outcome { ok, result, summary })
}

pub fn filtration(functor: &str, degree: Option<i64>, kmax: Option<usize>) -> Result<Outcome> {
    let f = parse_functor(functor)?;
    f.check()?;
    let kmax = kmax.unwrap_or(f.top - 1);
    let degrees: Vec<i64> = match degree {
        Some(d) => vec![d],
        None => f.obj(-1).degrees().filter(|&m| f.obj(-1).rank(m) > 0).collect(),
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut summary = vec![format!("{functor}: top level {}, kmax {kmax}", f.top)];
    for d in degrees {
        let r = simpgrp::cube::filtration(&f, d, kmax)?;
        let o = filtration_oracle(&f, d, kmax)?;
        let monotone = r.is_monotone();
        let matches = r.stages.iter().zip(&o).all(|(a, b)| same_subspace(a, b, r.dim));
        ok &= monotone && matches;
        summary.push(format!("  degree {d}: dim {}, stages {:?}, oracle {}", r.dim, r.stage_dims(), if matches { "agrees" } else { "DIFFERS" }));
        rows.push(json!({ "degree": d, "stage_dims": r.stage_dims(), "monotone": monotone, "matches_oracle": matches, "filtration": r }));
    }
    Ok(Outcome { ok, result: json!({ "functor": functor, "kmax": kmax, "degrees": rows }), summary })
}
