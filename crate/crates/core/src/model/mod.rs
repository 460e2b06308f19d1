//! Finite commutative differential graded algebras with a distinguished
//! degree-2 class `ω`.
//!
//! A model has a homogeneous basis, a differential given on basis elements,
//! structure constants for the product, and `ω` as a coefficient vector. The
//! three constructors are [`make_ce_model`] (exterior algebra on degree-one
//! generators with a quadratic differential), [`make_ring_model`] (a cohomology
//! ring with zero differential) and [`tensor`].

mod ce;
mod ring;
mod tensor;
mod validate;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub use ce::make_ce_model;
pub use ring::make_ring_model;
pub use tensor::{product, tensor};
pub use validate::{Check, ValidationReport};

/// A list of `(monomial, coefficient)` pairs, e.g. `[("e1^e2", 1), ("e3^e4", 1)]`.
pub type Terms<T> = Vec<(String, T)>;

/// Convenience for integer-coefficient [`Terms`].
pub fn int_terms<T: Scalar>(terms: &[(&str, i64)]) -> Terms<T> {
    terms.iter().map(|(m, c)| (m.to_string(), T::from_i64(*c))).collect()
}

/// Sparse vector: sorted `(index, coefficient)` pairs with nonzero coefficients.
pub(crate) type Sparse<T> = Vec<(usize, T)>;

pub(crate) fn sparse_from_map<T: Scalar>(m: BTreeMap<usize, T>) -> Sparse<T> {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn accumulate<T: Scalar>(acc: &mut BTreeMap<usize, T>, i: usize, v: T) {
    let e = acc.entry(i).or_insert_with(T::zero);
    *e = e.clone() + v;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub id: usize,
    pub label: String,
    pub degree: usize,
}

/// An element of a specific model, stored as a dense coefficient vector over its basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    model: u64,
    coeffs: Vec<T>,
}

impl<T: Scalar> Element<T> {
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, c: &T) -> Self {
        Element {
            model: self.model,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.model != other.model {
            return Err(Error::ModelMismatch);
        }
        Ok(Element {
            model: self.model,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    fn sparse(&self) -> Sparse<T> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }
}

/// How a model was built; used to write it back out as a model file.
#[derive(Clone, Debug)]
pub enum Recipe<T> {
    Ce {
        generators: Vec<String>,
        diff2: Vec<(String, Terms<T>)>,
        omega: Terms<T>,
    },
    Ring {
        top_degree: usize,
        basis: Vec<(String, usize)>,
        products: Vec<(String, String, Terms<T>)>,
        omega: Terms<T>,
    },
    Product(Vec<GradedModel<T>>),
    /// Permuted, rescaled or otherwise transformed; has no file form.
    Derived,
}

static NEXT_KEY: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug)]
pub struct GradedModel<T> {
    name: String,
    top_degree: usize,
    basis: Vec<BasisElement>,
    slices: Vec<Vec<usize>>,
    slot: Vec<usize>,
    diff: Vec<Sparse<T>>,
    mult: BTreeMap<(usize, usize), Sparse<T>>,
    omega: Vec<T>,
    recipe: Recipe<T>,
    key: u64,
}

impl<T: Scalar> GradedModel<T> {
    pub(crate) fn assemble(
        name: String,
        top_degree: usize,
        basis: Vec<(String, usize)>,
        diff: Vec<Sparse<T>>,
        mult: BTreeMap<(usize, usize), Sparse<T>>,
        omega: Vec<T>,
        recipe: Recipe<T>,
    ) -> Result<Self> {
        let n = basis.len();
        if diff.len() != n || omega.len() != n {
            return Err(Error::Shape("differential/omega length differs from basis size".into()));
        }
        let mut slices = vec![Vec::new(); top_degree + 1];
        let mut slot = vec![0; n];
        for (i, (label, deg)) in basis.iter().enumerate() {
            if *deg > top_degree {
                return Err(Error::InvalidModel(format!(
                    "basis element '{label}' has degree {deg} above the top degree {top_degree}"
                )));
            }
            slot[i] = slices[*deg].len();
            slices[*deg].push(i);
        }
        for (i, img) in diff.iter().enumerate() {
            if let Some((j, _)) = img.iter().find(|(j, _)| basis[*j].1 != basis[i].1 + 1) {
                return Err(Error::InvalidModel(format!(
                    "d({}) has a term {} of the wrong degree",
                    basis[i].0, basis[*j].0
                )));
            }
        }
        let basis = basis
            .into_iter()
            .enumerate()
            .map(|(id, (label, degree))| BasisElement { id, label, degree })
            .collect();
        Ok(GradedModel {
            name,
            top_degree,
            basis,
            slices,
            slot,
            diff,
            mult,
            omega,
            recipe,
            key: NEXT_KEY.fetch_add(1, Ordering::Relaxed),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn recipe(&self) -> &Recipe<T> {
        &self.recipe
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Global indices of the basis elements of degree `k` (empty above the top degree).
    pub fn slice(&self, k: usize) -> &[usize] {
        self.slices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn slice_dim(&self, k: usize) -> usize {
        self.slice(k).len()
    }

    /// The degree-0 basis elements that act as a two-sided unit.
    pub fn units(&self) -> Vec<usize> {
        self.slice(0)
            .iter()
            .copied()
            .filter(|&u| {
                (0..self.dim()).all(|i| {
                    let id = vec![(i, T::one())];
                    self.mul_basis(u, i) == id && self.mul_basis(i, u) == id
                })
            })
            .collect()
    }

    pub fn unit(&self) -> Option<usize> {
        match self.units().as_slice() {
            [u] if self.slice_dim(0) == 1 => Some(*u),
            _ => None,
        }
    }

    pub(crate) fn mul_basis(&self, i: usize, j: usize) -> Sparse<T> {
        self.mult.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub(crate) fn diff_basis(&self, i: usize) -> &Sparse<T> {
        &self.diff[i]
    }

    pub(crate) fn mult_table(&self) -> &BTreeMap<(usize, usize), Sparse<T>> {
        &self.mult
    }

    pub(crate) fn mul_sparse(&self, a: &Sparse<T>, b: &Sparse<T>) -> Sparse<T> {
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                if let Some(prod) = self.mult.get(&(*i, *j)) {
                    let xy = x.clone() * y.clone();
                    for (k, c) in prod {
                        accumulate(&mut acc, *k, xy.clone() * c.clone());
                    }
                }
            }
        }
        sparse_from_map(acc)
    }

    pub(crate) fn diff_sparse(&self, a: &Sparse<T>) -> Sparse<T> {
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (k, c) in &self.diff[*i] {
                accumulate(&mut acc, *k, x.clone() * c.clone());
            }
        }
        sparse_from_map(acc)
    }

    pub(crate) fn element_from_sparse(&self, s: &Sparse<T>) -> Element<T> {
        let mut coeffs = vec![T::zero(); self.dim()];
        for (i, c) in s {
            coeffs[*i] = c.clone();
        }
        Element {
            model: self.key,
            coeffs,
        }
    }

    fn check(&self, x: &Element<T>) -> Result<()> {
        if x.model != self.key {
            return Err(Error::ModelMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> Element<T> {
        Element {
            model: self.key,
            coeffs: vec![T::zero(); self.dim()],
        }
    }

    pub fn basis_element(&self, i: usize) -> Element<T> {
        self.element_from_sparse(&vec![(i, T::one())])
    }

    /// Parses a monomial: an exact basis label, or labels joined by `^` which
    /// are multiplied in the written order (so `e2^e1 = -e1^e2` in an exterior algebra).
    pub fn monomial(&self, s: &str) -> Result<Element<T>> {
        if let Some(i) = self.index_of(s) {
            return Ok(self.basis_element(i));
        }
        let mut acc: Option<Sparse<T>> = None;
        for part in s.split('^') {
            let i = self
                .index_of(part.trim())
                .ok_or_else(|| Error::UnknownLabel(part.to_string()))?;
            let v = vec![(i, T::one())];
            acc = Some(match acc {
                None => v,
                Some(a) => self.mul_sparse(&a, &v),
            });
        }
        let s = acc.ok_or_else(|| Error::UnknownLabel(s.to_string()))?;
        Ok(self.element_from_sparse(&s))
    }

    pub fn element(&self, terms: &[(String, T)]) -> Result<Element<T>> {
        let mut out = self.zero();
        for (m, c) in terms {
            out = out.plus(&self.monomial(m)?.scaled(c))?;
        }
        Ok(out)
    }

    pub fn wedge(&self, x: &Element<T>, y: &Element<T>) -> Result<Element<T>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element_from_sparse(&self.mul_sparse(&x.sparse(), &y.sparse())))
    }

    pub fn d(&self, x: &Element<T>) -> Result<Element<T>> {
        self.check(x)?;
        Ok(self.element_from_sparse(&self.diff_sparse(&x.sparse())))
    }

    /// The set of degrees in which `x` has a nonzero component.
    pub fn degrees(&self, x: &Element<T>) -> Vec<usize> {
        let mut ds: Vec<usize> = x
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.degree(i))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn omega(&self) -> Element<T> {
        Element {
            model: self.key,
            coeffs: self.omega.clone(),
        }
    }

    /// `ω^q`, with `ω^0` the unit (zero if there is no unit).
    pub fn omega_power(&self, q: usize) -> Element<T> {
        let mut acc = match self.unit() {
            Some(u) => self.basis_element(u),
            None => return self.zero(),
        };
        let w = self.omega();
        for _ in 0..q {
            acc = self.wedge(&acc, &w).expect("same model");
        }
        acc
    }

    /// `ψ = ω ∧ ω`.
    pub fn psi(&self) -> Element<T> {
        let w = self.omega();
        self.wedge(&w, &w).expect("same model")
    }

    /// `d_k` as a matrix from the degree-`k` slice to the degree-`k+1` slice.
    pub fn d_matrix(&self, k: usize) -> Matrix<T> {
        let rows = self.slice_dim(k + 1);
        let entries = self
            .slice(k)
            .iter()
            .enumerate()
            .flat_map(|(c, &i)| self.diff[i].iter().map(move |(j, v)| (self.slot[*j], c, v.clone())));
        Matrix::from_entries(rows, self.slice_dim(k), entries.collect::<Vec<_>>())
    }

    /// Left multiplication by `x` from the degree-`k` slice to the degree-`k+e` slice.
    /// Components of `x` outside degree `e` are ignored.
    pub fn mult_matrix(&self, x: &Element<T>, e: usize, k: usize) -> Result<Matrix<T>> {
        self.check(x)?;
        let xs: Sparse<T> = x.sparse().into_iter().filter(|(i, _)| self.degree(*i) == e).collect();
        let rows = self.slice_dim(k + e);
        let mut entries = Vec::new();
        for (c, &i) in self.slice(k).iter().enumerate() {
            for (j, v) in self.mul_sparse(&xs, &vec![(i, T::one())]) {
                if self.degree(j) == k + e {
                    entries.push((self.slot[j], c, v));
                }
            }
        }
        Ok(Matrix::from_entries(rows, self.slice_dim(k), entries))
    }

    /// `d` on the whole algebra, in global basis order.
    pub fn d_global(&self) -> Matrix<T> {
        let entries = self
            .diff
            .iter()
            .enumerate()
            .flat_map(|(i, img)| img.iter().map(move |(j, v)| (*j, i, v.clone())));
        Matrix::from_entries(self.dim(), self.dim(), entries.collect::<Vec<_>>())
    }

    /// Left multiplication by `x` on the whole algebra, in global basis order.
    pub fn mult_global(&self, x: &Element<T>) -> Result<Matrix<T>> {
        self.check(x)?;
        let xs = x.sparse();
        let mut entries = Vec::new();
        for i in 0..self.dim() {
            for (j, v) in self.mul_sparse(&xs, &vec![(i, T::one())]) {
                entries.push((j, i, v));
            }
        }
        Ok(Matrix::from_entries(self.dim(), self.dim(), entries))
    }

    /// Position of a basis element inside its degree slice.
    pub fn slot(&self, i: usize) -> usize {
        self.slot[i]
    }

    /// Restricts a global coefficient vector to the degree-`k` slice.
    pub fn to_slice(&self, x: &Element<T>, k: usize) -> Vec<T> {
        self.slice(k).iter().map(|&i| x.coeffs[i].clone()).collect()
    }

    pub fn format(&self, x: &Element<T>) -> String {
        let mut out = String::new();
        for (i, c) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                let _ = write!(out, "{mag} ");
            }
            out.push_str(self.label(i));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// The same model with basis reordered so that new element `i` is old element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut inv = vec![usize::MAX; n];
        for (new, &old) in perm.iter().enumerate() {
            if old >= n || inv[old] != usize::MAX {
                return Err(Error::Shape("not a permutation".into()));
            }
            inv[old] = new;
        }
        if perm.len() != n {
            return Err(Error::Shape("not a permutation".into()));
        }
        let remap = |s: &Sparse<T>| -> Sparse<T> {
            let mut v: Sparse<T> = s.iter().map(|(j, c)| (inv[*j], c.clone())).collect();
            v.sort_by_key(|(j, _)| *j);
            v
        };
        let basis = perm
            .iter()
            .map(|&o| (self.basis[o].label.clone(), self.basis[o].degree))
            .collect();
        let diff = perm.iter().map(|&o| remap(&self.diff[o])).collect();
        let mult = self
            .mult
            .iter()
            .map(|((a, b), s)| ((inv[*a], inv[*b]), remap(s)))
            .collect();
        let omega = perm.iter().map(|&o| self.omega[o].clone()).collect();
        Self::assemble(
            self.name.clone(),
            self.top_degree,
            basis,
            diff,
            mult,
            omega,
            Recipe::Derived,
        )
    }

    /// The same algebra with `ω` replaced by `c·ω`.
    pub fn with_scaled_omega(&self, c: &T) -> Self {
        let mut m = self.clone();
        m.omega = self.omega.iter().map(|x| x.clone() * c.clone()).collect();
        m.recipe = Recipe::Derived;
        m
    }

    #[cfg(test)]
    pub(crate) fn with_omega_unchecked(&self, w: Element<T>) -> Self {
        let mut m = self.clone();
        m.omega = w.coeffs;
        m.recipe = Recipe::Derived;
        m
    }

    /// SHA-256 of a canonical text rendering of the model's structure.
    pub fn fingerprint(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name {}", self.name);
        let _ = writeln!(s, "top {}", self.top_degree);
        for b in &self.basis {
            let _ = writeln!(s, "basis {} {}", b.label, b.degree);
        }
        for (i, img) in self.diff.iter().enumerate() {
            for (j, c) in img {
                let _ = writeln!(s, "d {i} {j} {c}");
            }
        }
        for ((a, b), img) in &self.mult {
            for (k, c) in img {
                let _ = writeln!(s, "m {a} {b} {k} {c}");
            }
        }
        for (i, c) in self.omega.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let _ = writeln!(s, "w {i} {c}");
        }
        Sha256::digest(s.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
