use std::collections::HashSet;

use serde::Serialize;

use super::{GradedModel, Recipe, Sparse};
use crate::linalg::Subspace;
use crate::scalar::Scalar;

const MAX_WITNESSES: usize = 8;

/// Outcome of one structural invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Basis labels (comma-separated pairs or triples) where the invariant fails.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub model: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Collector {
    checks: Vec<Check>,
}

impl Collector {
    fn run(&mut self, name: &'static str, witnesses: Vec<String>) {
        self.checks.push(Check {
            name,
            passed: witnesses.is_empty(),
            witnesses,
        });
    }
}

fn neg<T: Scalar>(s: &Sparse<T>) -> Sparse<T> {
    s.iter().map(|(i, c)| (*i, -c.clone())).collect()
}

fn add<T: Scalar>(a: &Sparse<T>, b: &Sparse<T>) -> Sparse<T> {
    let mut acc = std::collections::BTreeMap::new();
    for (i, c) in a.iter().chain(b) {
        super::accumulate(&mut acc, *i, c.clone());
    }
    super::sparse_from_map(acc)
}

impl<T: Scalar> GradedModel<T> {
    /// Checks every structural invariant and lists up to eight witnesses per failure.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let lab = |i: usize| self.label(i).to_string();
        let mut out = Collector { checks: Vec::new() };

        let mut seen = HashSet::new();
        let dups: Vec<String> = self
            .basis()
            .iter()
            .filter(|b| !seen.insert(b.label.as_str()))
            .map(|b| b.label.clone())
            .take(MAX_WITNESSES)
            .collect();
        out.run("labels-unique", dups);

        let units = self.units();
        let unit_wit = if units.len() == 1 && self.slice_dim(0) == 1 {
            Vec::new()
        } else if units.is_empty() {
            vec!["no degree-0 unit".to_string()]
        } else {
            self.slice(0).iter().map(|&i| lab(i)).collect()
        };
        out.run("unit", unit_wit);

        let dd: Vec<String> = (0..n)
            .filter(|&i| !self.diff_sparse(self.diff_basis(i)).is_empty())
            .map(lab)
            .take(MAX_WITNESSES)
            .collect();
        out.run("d-squared", dd);

        let mut bad_deg = Vec::new();
        for (&(i, j), v) in self.mult_table() {
            if v.iter()
                .any(|(k, _)| self.degree(*k) != self.degree(i) + self.degree(j))
            {
                bad_deg.push(format!("{}, {}", lab(i), lab(j)));
                if bad_deg.len() == MAX_WITNESSES {
                    break;
                }
            }
        }
        out.run("product-degree", bad_deg);

        let mut comm = Vec::new();
        for i in 0..n {
            for j in i..n {
                let s = T::sign(self.degree(i) * self.degree(j) % 2 == 1);
                let ab = self.mul_basis(i, j);
                let ba: Sparse<T> = self
                    .mul_basis(j, i)
                    .into_iter()
                    .map(|(k, c)| (k, s.clone() * c))
                    .collect();
                if ab != ba && comm.len() < MAX_WITNESSES {
                    comm.push(format!("{}, {}", lab(i), lab(j)));
                }
            }
        }
        out.run("graded-commutativity", comm);

        // (ab)c = a(bc); both sides vanish unless ab or bc is nonzero
        let mut assoc = Vec::new();
        'outer: for i in 0..n {
            for j in 0..n {
                let ab = self.mul_basis(i, j);
                for k in 0..n {
                    if self.degree(i) + self.degree(j) + self.degree(k) > self.top_degree() {
                        continue;
                    }
                    let bc = self.mul_basis(j, k);
                    if ab.is_empty() && bc.is_empty() {
                        continue;
                    }
                    let c = vec![(k, T::one())];
                    let a = vec![(i, T::one())];
                    if self.mul_sparse(&ab, &c) != self.mul_sparse(&a, &bc) {
                        assoc.push(format!("{}, {}, {}", lab(i), lab(j), lab(k)));
                        if assoc.len() == MAX_WITNESSES {
                            break 'outer;
                        }
                    }
                }
            }
        }
        out.run("associativity", assoc);

        // d(ab) = da·b + (-1)^{|a|} a·db
        let mut leib = Vec::new();
        'leib: for i in 0..n {
            let a = vec![(i, T::one())];
            let da = self.diff_basis(i).clone();
            for j in 0..n {
                if self.degree(i) + self.degree(j) > self.top_degree() {
                    continue;
                }
                let b = vec![(j, T::one())];
                let db = self.diff_basis(j).clone();
                let lhs = self.diff_sparse(&self.mul_basis(i, j));
                let second = self.mul_sparse(&a, &db);
                let second = if self.degree(i) % 2 == 1 { neg(&second) } else { second };
                let rhs = add(&self.mul_sparse(&da, &b), &second);
                if lhs != rhs {
                    leib.push(format!("{}, {}", lab(i), lab(j)));
                    if leib.len() == MAX_WITNESSES {
                        break 'leib;
                    }
                }
            }
        }
        out.run("leibniz", leib);

        let w = self.omega();
        let wdeg = self.degrees(&w);
        out.run(
            "omega-degree",
            if wdeg.iter().all(|&d| d == 2) {
                vec![]
            } else {
                vec![self.format(&w)]
            },
        );
        let dw = self.d(&w).expect("own element");
        out.run(
            "omega-closed",
            if dw.is_zero() { vec![] } else { vec![self.format(&dw)] },
        );

        if self.top_degree() % 2 == 0 {
            let m = self.top_degree() / 2;
            let top = self.top_degree();
            let wm = self.omega_power(m);
            let v = self.to_slice(&wm, top);
            let exact = if top == 0 {
                Subspace::zero(self.slice_dim(0))
            } else {
                self.d_matrix(top - 1).image()
            };
            let wit = if v.iter().all(|x| x.is_zero()) {
                vec![format!("omega^{m} = 0")]
            } else if exact.contains(&v) {
                // name a preimage generator when the class is exact
                let d = self.d_matrix(top - 1);
                let pre = self
                    .slice(top - 1)
                    .iter()
                    .enumerate()
                    .find(|(c, _)| !d.column(*c).iter().all(|x| x.is_zero()))
                    .map(|(_, &i)| lab(i))
                    .unwrap_or_default();
                vec![format!("omega^{m} is exact ({pre})")]
            } else {
                vec![]
            };
            out.run("omega-nondegenerate", wit);
        }

        if let Recipe::Ce { generators, .. } = self.recipe() {
            // d(e_i) may only involve e_1 .. e_{i-1}
            let mut tri = Vec::new();
            for (gi, g) in generators.iter().enumerate() {
                let Some(i) = self.index_of(g) else { continue };
                let later: Vec<&str> = generators[gi..].iter().map(String::as_str).collect();
                let bad = self
                    .diff_basis(i)
                    .iter()
                    .any(|(k, _)| self.label(*k).split('^').any(|p| later.contains(&p)));
                if bad {
                    tri.push(g.clone());
                }
            }
            out.run("ce-triangular", tri);
        }

        ValidationReport {
            model: self.name().to_string(),
            checks: out.checks,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::catalog;
    use crate::model::{int_terms, make_ce_model};
    use crate::Rational;

    #[test]
    fn catalog_models_pass() {
        assert!(catalog::torus::<Rational>(3).unwrap().validate().passed());
        let kt = catalog::kodaira_thurston::<Rational>().validate();
        assert!(kt.passed(), "{kt:?}");
        assert!(catalog::surface::<Rational>(2).validate().passed());
        assert!(catalog::point::<Rational>().validate().passed());
    }

    #[test]
    fn non_nilpotent_differential_flagged() {
        let gens: Vec<String> = vec!["e1".into(), "e2".into()];
        let m = make_ce_model::<Rational>(
            "solv",
            &gens,
            &[("e1".into(), int_terms(&[("e1^e2", 1)]))],
            &int_terms(&[("e1^e2", 1)]),
        )
        .unwrap();
        let r = m.validate();
        assert!(!r.passed());
        let tri = r.failures().find(|c| c.name == "ce-triangular").unwrap();
        assert_eq!(tri.witnesses, vec!["e1".to_string()]);
        // omega = e1^e2 = d(e1) is exact
        let nd = r.failures().find(|c| c.name == "omega-nondegenerate").unwrap();
        assert!(nd.witnesses[0].contains("e1"));
    }

    #[test]
    fn degenerate_omega_flagged() {
        let gens: Vec<String> = (1..=4).map(|i| format!("e{i}")).collect();
        let m = make_ce_model::<Rational>("t4", &gens, &[], &int_terms(&[("e1^e2", 1)])).unwrap();
        let r = m.validate();
        assert_eq!(
            r.failures().map(|c| c.name).collect::<Vec<_>>(),
            vec!["omega-nondegenerate"]
        );
    }
}
