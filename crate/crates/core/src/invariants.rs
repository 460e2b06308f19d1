//! Betti numbers, Lefschetz-type ranks, filtered Betti numbers and the
//! semi-characteristics built from them.
//!
//! Filtered Betti numbers are computed two ways: directly as the cohomology of
//! the cone, and from the long exact sequence of the cone,
//!
//! ```text
//! b^Φ_i = b_i - r_{i-2q} + b_{i-(2q-1)} - r_{i-(2q-1)},   q = p + 1,
//! ```
//!
//! where `r_j` is the rank of `[ω^q] ∧ · : H^j → H^{j+2q}`. The two must agree.

use serde::Serialize;

use crate::cone::ConeComplex;
use crate::error::Result;
use crate::linalg::{induced_on_quotient, quotient, Quotient, Subspace};
use crate::model::GradedModel;
use crate::scalar::Scalar;

/// `H^k = ker d_k / im d_{k-1}` as a quotient of the degree-`k` slice.
pub fn de_rham<T: Scalar>(model: &GradedModel<T>, k: usize) -> Quotient<T> {
    let n = model.slice_dim(k);
    let cycles = model.d_matrix(k).kernel_basis();
    let bounds = if k == 0 {
        Subspace::zero(n)
    } else {
        model.d_matrix(k - 1).image()
    };
    quotient(n, bounds, cycles).expect("d∘d = 0 puts boundaries inside cycles")
}

/// `b_k = dim ker d_k - rank d_{k-1}` for `k = 0 ..= top`.
pub fn betti<T: Scalar>(model: &GradedModel<T>) -> Vec<usize> {
    (0..=model.top_degree())
        .map(|k| {
            let ker = model.slice_dim(k) - model.d_matrix(k).rank();
            let im = if k == 0 { 0 } else { model.d_matrix(k - 1).rank() };
            ker - im
        })
        .collect()
}

/// `r_i = rank([ω^q] ∧ · : H^i → H^{i+2q})` for `i = 0 ..= top`.
pub fn lefschetz_ranks<T: Scalar>(model: &GradedModel<T>, q: usize) -> Result<Vec<usize>> {
    let top = model.top_degree();
    let w = model.omega_power(q);
    let coh: Vec<Quotient<T>> = (0..=top).map(|k| de_rham(model, k)).collect();
    let mut r = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let j = i + 2 * q;
        if j > top || coh[i].dim() == 0 || coh[j].dim() == 0 {
            r.push(0);
            continue;
        }
        let f = model.mult_matrix(&w, 2 * q, i)?;
        r.push(induced_on_quotient(&f, &coh[i], &coh[j])?.rank());
    }
    Ok(r)
}

/// Filtered Betti numbers from de Rham data, for `k = 0 ..= top + 2p + 1`.
pub fn filtered_betti_formula<T: Scalar>(model: &GradedModel<T>, p: usize) -> Result<Vec<usize>> {
    let b = betti(model);
    let r = lefschetz_ranks(model, p + 1)?;
    Ok(formula_from(&b, &r, p))
}

fn formula_from(b: &[usize], r: &[usize], p: usize) -> Vec<usize> {
    let q = p + 1;
    let shift = 2 * p + 1;
    let at = |v: &[usize], i: isize| {
        if i < 0 {
            0
        } else {
            v.get(i as usize).copied().unwrap_or(0)
        }
    };
    let max = b.len() - 1 + shift;
    (0..=max as isize)
        .map(|i| {
            // r_{i-2q} ≤ b_i and r_{i-shift} ≤ b_{i-shift}, so neither difference underflows
            (at(b, i) - at(r, i - 2 * q as isize)) + (at(b, i - shift as isize) - at(r, i - shift as isize))
        })
        .collect()
}

fn even_sum(v: &[usize], upto: usize) -> usize {
    v.iter().take(upto + 1).step_by(2).sum()
}

fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub model_name: String,
    pub top_degree: usize,
    pub p: usize,
    /// de Rham Betti numbers, degrees `0 ..= top`.
    pub b: Vec<usize>,
    /// Ranks of `[ω^{p+1}] ∧` on `H^i`, degrees `0 ..= top`.
    pub r: Vec<usize>,
    pub b_phi_formula: Vec<usize>,
    pub b_phi_direct: Vec<usize>,
    /// Sum of the even-degree entries of `b_phi_direct`.
    pub even_sum: usize,
    pub euler: i64,
    /// Set for `p = 1` on models of dimension `4n+2`.
    pub ell: Option<u8>,
    /// Set for `p = 0` on even-dimensional models.
    pub k_char: Option<u8>,
}

impl CohomologyTable {
    pub fn paths_agree(&self) -> bool {
        self.b_phi_formula == self.b_phi_direct
    }

    pub fn poincare_dual(&self) -> bool {
        self.b.iter().eq(self.b.iter().rev())
    }
}

pub fn cohomology_table<T: Scalar>(model: &GradedModel<T>, p: usize) -> Result<CohomologyTable> {
    let b = betti(model);
    let r = lefschetz_ranks(model, p + 1)?;
    let formula = formula_from(&b, &r, p);
    let cone = ConeComplex::build(model, p)?;
    let direct = cone.betti();
    let top = model.top_degree();
    let es = even_sum(&direct, direct.len());
    let ell = (p == 1 && top % 4 == 2).then(|| (even_sum(&direct, top + 2) % 2) as u8);
    let k_char = (p == 0 && top % 2 == 0).then_some((es % 2) as u8);
    Ok(CohomologyTable {
        model_name: model.name().to_string(),
        top_degree: top,
        p,
        b,
        r,
        b_phi_formula: formula,
        euler: alternating(&direct),
        b_phi_direct: direct,
        even_sum: es,
        ell,
        k_char,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Semicharacteristics {
    /// `ℓ(M, ψ)`; `None` unless the dimension is `4n+2`.
    pub ell: Option<u8>,
    /// `k(M, ω)`; `None` for odd dimension.
    pub k_char: Option<u8>,
    /// Even-degree sum of the 1-filtered Betti numbers, reported in every dimension.
    pub even_sum_p1: usize,
    pub even_sum_p0: usize,
}

pub fn semicharacteristics<T: Scalar>(model: &GradedModel<T>) -> Result<Semicharacteristics> {
    let t1 = cohomology_table(model, 1)?;
    let t0 = cohomology_table(model, 0)?;
    Ok(Semicharacteristics {
        ell: t1.ell,
        k_char: t0.k_char,
        even_sum_p1: t1.even_sum,
        even_sum_p0: t0.even_sum,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    NotApplicable,
    Falsified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub model_name: String,
    pub top_degree: usize,
    pub verdict: Verdict,
    /// Parity of the even sum up to degree `top + 2`, by each path.
    pub ell_formula: u8,
    pub ell_direct: u8,
    pub even_sum_formula: usize,
    pub even_sum_direct: usize,
    pub paths_agree: bool,
    pub table: CohomologyTable,
    pub findings: Vec<String>,
}

/// Checks that `ℓ(M, ψ) = 0` on a `(4n+2)`-dimensional model by both paths.
///
/// On other dimensions the verdict is [`Verdict::NotApplicable`], but the table
/// and the parity of the even sum are still reported.
pub fn verify_vanishing<T: Scalar>(model: &GradedModel<T>) -> Result<VerificationReport> {
    let table = cohomology_table(model, 1)?;
    let top = model.top_degree();
    let upto = top + 2;
    let sf = even_sum(&table.b_phi_formula, upto);
    let sd = even_sum(&table.b_phi_direct, upto);
    let agree = table.paths_agree();
    let mut findings = Vec::new();
    if !agree {
        findings.push(format!(
            "formula path {:?} disagrees with direct cone path {:?}",
            table.b_phi_formula, table.b_phi_direct
        ));
    }
    let above: usize = table
        .b_phi_direct
        .iter()
        .enumerate()
        .skip(upto + 1)
        .filter(|(k, _)| k % 2 == 0)
        .map(|(_, b)| b)
        .sum();
    if above != 0 {
        findings.push(format!(
            "nonzero even-degree filtered Betti numbers above degree {upto}"
        ));
    }
    let applicable = top % 4 == 2;
    let verdict = if !applicable {
        Verdict::NotApplicable
    } else if sf % 2 == 0 && sd % 2 == 0 && agree && above == 0 {
        Verdict::Pass
    } else {
        findings.push(format!(
            "ell != 0 on a {top}-dimensional model: even sums {sd} (cone) / {sf} (formula), b^phi = {:?}",
            table.b_phi_direct
        ));
        if !table.poincare_dual() {
            findings.push(format!("Betti numbers {:?} are not Poincare dual", table.b));
        }
        Verdict::Falsified
    };
    if !applicable {
        findings.push(format!(
            "dimension {top} is not 4n+2; even sum {sd} has parity {}",
            sd % 2
        ));
    }
    Ok(VerificationReport {
        model_name: model.name().to_string(),
        top_degree: top,
        verdict,
        ell_formula: (sf % 2) as u8,
        ell_direct: (sd % 2) as u8,
        even_sum_formula: sf,
        even_sum_direct: sd,
        paths_agree: agree,
        table,
        findings,
    })
}
