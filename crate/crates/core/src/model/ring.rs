use std::collections::{BTreeMap, HashMap};

use super::{accumulate, sparse_from_map, GradedModel, Recipe, Terms};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A graded ring with zero differential, given by structure constants.
///
/// `basis` lists the non-unit basis elements; a unit labelled `1` is added in
/// front. Each entry of `products` sets `a·b`; when only one of `a·b`, `b·a`
/// is listed the other is filled in by graded commutativity, and products not
/// listed are zero. The result must be associative, graded-commutative and
/// unital, otherwise it is rejected.
pub fn make_ring_model<T: Scalar>(
    name: &str,
    top_degree: Option<usize>,
    basis: &[(String, usize)],
    products: &[(String, String, Terms<T>)],
    omega: &Terms<T>,
) -> Result<GradedModel<T>> {
    if basis.iter().any(|(l, _)| l == "1") {
        return Err(Error::InvalidModel("the label '1' is reserved for the unit".into()));
    }
    let mut all = vec![("1".to_string(), 0usize)];
    all.extend(basis.iter().cloned());
    let top = top_degree.unwrap_or_else(|| all.iter().map(|(_, d)| *d).max().unwrap_or(0));
    let index: HashMap<&str, usize> = all.iter().enumerate().map(|(i, (l, _))| (l.as_str(), i)).collect();
    if index.len() != all.len() {
        return Err(Error::InvalidModel("duplicate basis label".into()));
    }
    let lookup = |l: &str| {
        index
            .get(l.trim())
            .copied()
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))
    };

    let mut mult = BTreeMap::new();
    for i in 0..all.len() {
        mult.insert((0, i), vec![(i, T::one())]);
        mult.insert((i, 0), vec![(i, T::one())]);
    }
    let mut given = BTreeMap::new();
    for (a, b, terms) in products {
        let (i, j) = (lookup(a)?, lookup(b)?);
        let mut acc = BTreeMap::new();
        for (l, c) in terms {
            accumulate(&mut acc, lookup(l)?, c.clone());
        }
        given.insert((i, j), sparse_from_map(acc));
    }
    for (&(i, j), v) in &given {
        mult.insert((i, j), v.clone());
        if !given.contains_key(&(j, i)) {
            let neg = all[i].1 * all[j].1 % 2 == 1;
            mult.insert((j, i), v.iter().map(|(k, c)| (*k, T::sign(neg) * c.clone())).collect());
        }
    }
    mult.retain(|_, v| !v.is_empty());

    let n = all.len();
    let recipe = Recipe::Ring {
        top_degree: top,
        basis: basis.to_vec(),
        products: products.to_vec(),
        omega: omega.clone(),
    };
    let mut model = GradedModel::assemble(
        name.to_string(),
        top,
        all,
        vec![Vec::new(); n],
        mult,
        vec![T::zero(); n],
        recipe,
    )?;
    let w = model.element(omega)?;
    if model.degrees(&w).iter().any(|&d| d != 2) {
        return Err(Error::OmegaDegree);
    }
    model.omega = w.coeffs;

    let report = model.validate();
    if let Some(check) = report.checks.iter().find(|c| !c.passed) {
        let wit = check.witnesses.first().cloned().unwrap_or_default();
        let parts: Vec<String> = wit.split(", ").map(str::to_string).collect();
        return Err(match (check.name, parts.as_slice()) {
            ("associativity", [a, b, c]) => Error::Associativity(a.clone(), b.clone(), c.clone()),
            ("graded-commutativity", [a, b]) => Error::Commutativity(a.clone(), b.clone()),
            ("product-degree", [a, b]) => Error::ProductDegree(a.clone(), b.clone()),
            (name, _) => Error::InvalidModel(format!("{name} fails at {wit}")),
        });
    }
    Ok(model)
}
