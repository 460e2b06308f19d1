use std::collections::BTreeMap;

use super::{accumulate, sparse_from_map, GradedModel, Recipe, Sparse};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Graded tensor product `a ⊗ b` with Koszul signs and `ω = ω_a ⊗ 1 + 1 ⊗ ω_b`.
///
/// Basis elements are pairs `(p, q)` labelled `p⊗q`, ordered by total degree
/// and then by the factor indices. Fails only if a factor has no unit.
pub fn tensor<T: Scalar>(a: &GradedModel<T>, b: &GradedModel<T>) -> Result<GradedModel<T>> {
    let ua = a
        .unit()
        .ok_or_else(|| Error::InvalidModel(format!("{} has no unit", a.name())))?;
    let ub = b
        .unit()
        .ok_or_else(|| Error::InvalidModel(format!("{} has no unit", b.name())))?;

    let mut pairs: Vec<(usize, usize)> = (0..a.dim()).flat_map(|i| (0..b.dim()).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| (a.degree(i) + b.degree(j), i, j));
    let mut index = vec![vec![0usize; b.dim()]; a.dim()];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = k;
    }
    let basis = pairs
        .iter()
        .map(|&(i, j)| (format!("{}⊗{}", a.label(i), b.label(j)), a.degree(i) + b.degree(j)))
        .collect();

    // d(p⊗q) = dp⊗q + (-1)^{|p|} p⊗dq
    let diff: Vec<Sparse<T>> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut acc = BTreeMap::new();
            for (k, c) in a.diff_basis(i) {
                accumulate(&mut acc, index[*k][j], c.clone());
            }
            let s = T::sign(a.degree(i) % 2 == 1);
            for (k, c) in b.diff_basis(j) {
                accumulate(&mut acc, index[i][*k], s.clone() * c.clone());
            }
            sparse_from_map(acc)
        })
        .collect();

    // (p1⊗q1)(p2⊗q2) = (-1)^{|q1||p2|} p1p2 ⊗ q1q2
    let mut mult: BTreeMap<(usize, usize), BTreeMap<usize, T>> = BTreeMap::new();
    for (&(i1, i2), pa) in a.mult_table() {
        for (&(j1, j2), pb) in b.mult_table() {
            let s = T::sign(b.degree(j1) * a.degree(i2) % 2 == 1);
            let acc = mult.entry((index[i1][j1], index[i2][j2])).or_default();
            for (k, x) in pa {
                for (l, y) in pb {
                    accumulate(acc, index[*k][*l], s.clone() * x.clone() * y.clone());
                }
            }
        }
    }
    let mult = mult
        .into_iter()
        .map(|(k, v)| (k, sparse_from_map(v)))
        .filter(|(_, v)| !v.is_empty())
        .collect();

    let mut omega = vec![T::zero(); pairs.len()];
    for (i, c) in a.omega().coeffs().iter().enumerate() {
        omega[index[i][ub]] = omega[index[i][ub]].clone() + c.clone();
    }
    for (j, c) in b.omega().coeffs().iter().enumerate() {
        omega[index[ua][j]] = omega[index[ua][j]].clone() + c.clone();
    }

    let mut factors = Vec::new();
    for m in [a, b] {
        match m.recipe() {
            Recipe::Product(fs) => factors.extend(fs.iter().cloned()),
            _ => factors.push(m.clone()),
        }
    }
    GradedModel::assemble(
        format!("{}_x_{}", a.name(), b.name()),
        a.top_degree() + b.top_degree(),
        basis,
        diff,
        mult,
        omega,
        Recipe::Product(factors),
    )
}

/// Left fold of [`tensor`] over `factors`. An empty list is rejected.
pub fn product<T: Scalar>(factors: &[GradedModel<T>]) -> Result<GradedModel<T>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidModel("empty product".into()))?;
    let mut acc = first.clone();
    for f in rest {
        acc = tensor(&acc, f)?;
    }
    Ok(acc)
}
