use std::collections::{BTreeMap, HashMap};

use super::{accumulate, sparse_from_map, GradedModel, Recipe, Sparse, Terms};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sign of `a ∧ b` for disjoint monomials given as bitmasks, or `None` when they overlap.
fn monomial_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(swaps % 2 == 1)
}

fn mask_indices(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).collect()
}

/// Parses a product of two distinct generators into `(mask, negative)`.
fn quadratic(mono: &str, gens: &HashMap<&str, usize>) -> std::result::Result<(u64, bool), String> {
    let parts: Vec<&str> = mono.split('^').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("'{mono}' has degree {}", parts.len()));
    }
    let mut idx = [0usize; 2];
    for (k, p) in parts.iter().enumerate() {
        idx[k] = *gens.get(p).ok_or_else(|| format!("unknown generator '{p}'"))?;
    }
    if idx[0] == idx[1] {
        return Ok((0, false));
    }
    let mask = (1u64 << idx[0]) | (1u64 << idx[1]);
    Ok((mask, idx[0] > idx[1]))
}

/// Chevalley-Eilenberg style model: the exterior algebra on degree-one
/// `generators`, with `d` prescribed on generators by `diff2` (generators not
/// listed are closed) and extended by the Leibniz rule.
///
/// Monomials are ordered by degree and then lexicographically in generator
/// order; each is labelled by its generators joined with `^`.
pub fn make_ce_model<T: Scalar>(
    name: &str,
    generators: &[String],
    diff2: &[(String, Terms<T>)],
    omega: &Terms<T>,
) -> Result<GradedModel<T>> {
    let g = generators.len();
    if g > 63 {
        return Err(Error::InvalidModel(format!("{g} generators is more than supported")));
    }
    let mut gens: HashMap<&str, usize> = HashMap::new();
    for (i, s) in generators.iter().enumerate() {
        if gens.insert(s.as_str(), i).is_some() {
            return Err(Error::InvalidModel(format!("duplicate generator '{s}'")));
        }
    }

    // d on generators, as sparse maps from monomial mask to coefficient
    let mut dgen: Vec<BTreeMap<u64, T>> = vec![BTreeMap::new(); g];
    for (label, terms) in diff2 {
        let i = *gens
            .get(label.as_str())
            .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
        for (mono, c) in terms {
            let (mask, neg) = quadratic(mono, &gens).map_err(|detail| Error::DiffDegree {
                generator: label.clone(),
                detail,
            })?;
            if mask == 0 {
                continue;
            }
            let e = dgen[i].entry(mask).or_insert_with(T::zero);
            *e = e.clone() + if neg { -c.clone() } else { c.clone() };
        }
        dgen[i].retain(|_, v| !v.is_zero());
    }

    let mut masks: Vec<u64> = (0..1u64 << g).collect();
    masks.sort_by(|a, b| {
        a.count_ones()
            .cmp(&b.count_ones())
            .then_with(|| mask_indices(*a).cmp(&mask_indices(*b)))
    });
    let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let basis: Vec<(String, usize)> = masks
        .iter()
        .map(|&m| {
            let label = if m == 0 {
                "1".to_string()
            } else {
                mask_indices(m)
                    .iter()
                    .map(|&i| generators[i].as_str())
                    .collect::<Vec<_>>()
                    .join("^")
            };
            (label, m.count_ones() as usize)
        })
        .collect();

    // d(x_1 ∧ ... ∧ x_k) = Σ_j (-1)^j x_1 ∧ .. ∧ d(x_j) ∧ .. ∧ x_k
    let diff_of = |m: u64| -> BTreeMap<u64, T> {
        let mut acc: BTreeMap<u64, T> = BTreeMap::new();
        for (pos, &j) in mask_indices(m).iter().enumerate() {
            let before = m & ((1u64 << j) - 1);
            let after = m & !((1u64 << (j + 1)) - 1);
            for (q, c) in &dgen[j] {
                let Some(s1) = monomial_sign(before, *q) else { continue };
                let Some(s2) = monomial_sign(before | q, after) else {
                    continue;
                };
                let neg = (pos % 2 == 1) ^ s1 ^ s2;
                let e = acc.entry(before | q | after).or_insert_with(T::zero);
                *e = e.clone() + T::sign(neg) * c.clone();
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    };

    let to_sparse = |m: BTreeMap<u64, T>| -> Sparse<T> {
        let mut acc = BTreeMap::new();
        for (mask, c) in m {
            accumulate(&mut acc, index[&mask], c);
        }
        sparse_from_map(acc)
    };

    for (i, gname) in generators.iter().enumerate() {
        let mut dd: BTreeMap<u64, T> = BTreeMap::new();
        for (q, c) in &dgen[i] {
            for (r, c2) in diff_of(*q) {
                let e = dd.entry(r).or_insert_with(T::zero);
                *e = e.clone() + c.clone() * c2;
            }
        }
        if dd.values().any(|v| !v.is_zero()) {
            return Err(Error::DiffSquare {
                generator: gname.clone(),
            });
        }
    }

    let diff: Vec<Sparse<T>> = masks.iter().map(|&m| to_sparse(diff_of(m))).collect();
    let mut mult = BTreeMap::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            if let Some(neg) = monomial_sign(a, b) {
                mult.insert((i, j), vec![(index[&(a | b)], T::sign(neg))]);
            }
        }
    }

    let recipe = Recipe::Ce {
        generators: generators.to_vec(),
        diff2: diff2.to_vec(),
        omega: omega.clone(),
    };
    let mut model = GradedModel::assemble(
        name.to_string(),
        g,
        basis,
        diff,
        mult,
        vec![T::zero(); masks.len()],
        recipe,
    )?;
    let w = model.element(omega)?;
    if model.degrees(&w).iter().any(|&d| d != 2) {
        return Err(Error::OmegaDegree);
    }
    if !model.d(&w)?.is_zero() {
        return Err(Error::OmegaNotClosed);
    }
    model.omega = w.coeffs;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::int_terms;
    use crate::Rational;

    fn gens(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn signs() {
        assert_eq!(monomial_sign(0b01, 0b10), Some(false));
        assert_eq!(monomial_sign(0b10, 0b01), Some(true));
        assert_eq!(monomial_sign(0b11, 0b01), None);
        // e2 ∧ (e1 ∧ e3) = -e1 ∧ e2 ∧ e3
        assert_eq!(monomial_sign(0b010, 0b101), Some(true));
    }

    #[test]
    fn four_torus() {
        let m = make_ce_model::<Rational>("t4", &gens(4), &[], &int_terms(&[("e1^e2", 1), ("e3^e4", 1)])).unwrap();
        assert_eq!(m.dim(), 16);
        assert_eq!(m.label(5), "e1^e2");
        assert!(m.d_global().is_zero());
    }

    #[test]
    fn kodaira_thurston_differential() {
        let m = make_ce_model::<Rational>(
            "kt",
            &gens(4),
            &[("e4".into(), int_terms(&[("e2^e3", 1)]))],
            &int_terms(&[("e1^e2", 1), ("e3^e4", 1)]),
        )
        .unwrap();
        let e4 = m.monomial("e4").unwrap();
        assert_eq!(m.d(&e4).unwrap(), m.monomial("e2^e3").unwrap());
        // d(e1^e4) = -e1^e2^e3
        let x = m.monomial("e1^e4").unwrap();
        assert_eq!(m.format(&m.d(&x).unwrap()), "-e1^e2^e3");
        // d(e3^e4) = -e3^e2^e3 = 0, so omega is closed
        assert!(m.d(&m.omega()).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        // so(3) satisfies Jacobi, so d^2 = 0
        let so3 = make_ce_model::<Rational>(
            "so3",
            &gens(3),
            &[
                ("e1".into(), int_terms(&[("e2^e3", 1)])),
                ("e2".into(), int_terms(&[("e3^e1", 1)])),
                ("e3".into(), int_terms(&[("e1^e2", 1)])),
            ],
            &Vec::new(),
        );
        assert!(so3.is_ok());

        // d^2(e1) = e1^e2^e4 and d^2(e3) = e3^e4^e2
        let err = make_ce_model::<Rational>(
            "bad",
            &gens(4),
            &[
                ("e3".into(), int_terms(&[("e1^e2", 1)])),
                ("e1".into(), int_terms(&[("e3^e4", 1)])),
            ],
            &Vec::new(),
        )
        .unwrap_err();
        assert_eq!(err, Error::DiffSquare { generator: "e1".into() });

        let err = make_ce_model::<Rational>(
            "deg",
            &gens(3),
            &[("e1".into(), int_terms(&[("e1^e2^e3", 1)]))],
            &Vec::new(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DiffDegree { ref generator, .. } if generator == "e1"));

        let err = make_ce_model::<Rational>(
            "open",
            &gens(4),
            &[("e4".into(), int_terms(&[("e2^e3", 1)]))],
            &int_terms(&[("e1^e4", 1)]),
        )
        .unwrap_err();
        assert_eq!(err, Error::OmegaNotClosed);
    }
}
