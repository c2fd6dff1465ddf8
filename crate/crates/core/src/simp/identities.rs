use serde::Serialize;

use super::group::{Augmented, SimplicialGroup};

/// The first violated simplicial identity, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub identity: String,
    pub level: usize,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub violation: Option<IdentityViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

struct Checker<'a, G: SimplicialGroup> {
    g: &'a G,
    checked: usize,
}

impl<G: SimplicialGroup> Checker<'_, G> {
    fn compare(&mut self, identity: String, level: usize, x: &G::Elt, out_level: usize, lhs: G::Elt, rhs: G::Elt) -> Option<IdentityViolation> {
        self.checked += 1;
        (lhs != rhs).then(|| IdentityViolation {
            identity,
            level,
            element: self.g.format(level, x),
            lhs: self.g.format(out_level, &lhs),
            rhs: self.g.format(out_level, &rhs),
        })
    }
}

/// Checks every simplicial identity on the test elements of every level,
/// stopping at the first failure.
pub fn check_simplicial_identities<G: SimplicialGroup>(g: &G) -> IdentityReport {
    let mut c = Checker { g, checked: 0 };
    let violation = run(&mut c);
    IdentityReport { checked: c.checked, violation }
}

fn run<G: SimplicialGroup>(c: &mut Checker<'_, G>) -> Option<IdentityViolation> {
    let g = c.g;
    let top = g.top();
    for n in 0..=top {
        for x in g.test_elements(n) {
            // d_i d_j = d_{j-1} d_i  (i < j)
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = g.face_raw(n - 1, i, &g.face_raw(n, j, &x));
                        let rhs = g.face_raw(n - 1, j - 1, &g.face_raw(n, i, &x));
                        if let Some(v) = c.compare(format!("d{i} d{j} = d{} d{i}", j - 1), n, &x, n - 2, lhs, rhs) {
                            return Some(v);
                        }
                    }
                }
            }
            if n < top {
                for j in 0..=n {
                    let sx = g.degen_raw(n, j, &x);
                    for i in 0..=n + 1 {
                        let lhs = g.face_raw(n + 1, i, &sx);
                        let (name, rhs) = if i < j {
                            (format!("d{i} s{j} = s{} d{i}", j - 1), g.degen_raw(n - 1, j - 1, &g.face_raw(n, i, &x)))
                        } else if i == j || i == j + 1 {
                            (format!("d{i} s{j} = id"), x.clone())
                        } else {
                            (format!("d{i} s{j} = s{j} d{}", i - 1), g.degen_raw(n - 1, j, &g.face_raw(n, i - 1, &x)))
                        };
                        if let Some(v) = c.compare(name, n, &x, n, lhs, rhs) {
                            return Some(v);
                        }
                    }
                }
            }
            // s_i s_j = s_{j+1} s_i  (i <= j)
            if n + 2 <= top {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = g.degen_raw(n + 1, i, &g.degen_raw(n, j, &x));
                        let rhs = g.degen_raw(n + 1, j + 1, &g.degen_raw(n, i, &x));
                        if let Some(v) = c.compare(format!("s{i} s{j} = s{} s{i}", j + 1), n, &x, n + 2, lhs, rhs) {
                            return Some(v);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Checks `ε ∂_0 = ε ∂_1` on the level-1 test elements.
pub fn check_augmentation<G: Augmented>(g: &G) -> IdentityReport {
    let mut checked = 0;
    if g.top() >= 1 {
        for x in g.test_elements(1) {
            checked += 1;
            let a = g.augment(&g.face_raw(1, 0, &x));
            let b = g.augment(&g.face_raw(1, 1, &x));
            if a != b {
                return IdentityReport {
                    checked,
                    violation: Some(IdentityViolation {
                        identity: "e d0 = e d1".into(),
                        level: 1,
                        element: g.format(1, &x),
                        lhs: g.pi().format(&a),
                        rhs: g.pi().format(&b),
                    }),
                };
            }
        }
    }
    IdentityReport { checked, violation: None }
}

/// For tabulated finite levels: every structure map must be a homomorphism.
pub fn check_homomorphisms<G: SimplicialGroup>(g: &G) -> IdentityReport {
    let mut checked = 0;
    let top = g.top();
    for n in 0..=top {
        let els = g.test_elements(n);
        for a in &els {
            for b in &els {
                let ab = g.mul(n, a, b);
                let maps: Vec<(String, usize, Box<dyn Fn(&G::Elt) -> G::Elt + '_>)> = (0..=n)
                    .filter(|_| n >= 1)
                    .map(|i| (format!("d{i}"), n - 1, Box::new(move |x: &G::Elt| g.face_raw(n, i, x)) as Box<dyn Fn(&G::Elt) -> G::Elt>))
                    .chain((0..=n).filter(|_| n < top).map(|j| {
                        (format!("s{j}"), n + 1, Box::new(move |x: &G::Elt| g.degen_raw(n, j, x)) as Box<dyn Fn(&G::Elt) -> G::Elt>)
                    }))
                    .collect();
                for (name, m, f) in maps {
                    checked += 1;
                    let lhs = f(&ab);
                    let rhs = g.mul(m, &f(a), &f(b));
                    if lhs != rhs {
                        return IdentityReport {
                            checked,
                            violation: Some(IdentityViolation {
                                identity: format!("{name}(xy) = {name}(x){name}(y)"),
                                level: n,
                                element: format!("{} * {}", g.format(n, a), g.format(n, b)),
                                lhs: g.format(m, &lhs),
                                rhs: g.format(m, &rhs),
                            }),
                        };
                    }
                }
            }
        }
    }
    IdentityReport { checked, violation: None }
}
