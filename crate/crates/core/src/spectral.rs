//! Finite-model versions of the adjoint coboundary, the even-degree Hodge
//! operator and the skew-adjoint block operator `𝔻`.
//!
//! The inner product is the one making the model basis orthonormal, so every
//! adjoint is a transpose. `𝔻` acts on `C^even = Ω^even ⊕ Ω^odd` as
//!
//! ```text
//! [ ½(ψ*-ψ)   -(d+d*) ]
//! [  d+d*     ½(ψ-ψ*) ]
//! ```
//!
//! with the `Ω^even` coordinates first, each block in model basis order.

use serde::Serialize;

use crate::cone::ConeComplex;
use crate::error::{Error, Result};
use crate::invariants;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub struct OperatorBundle<'c, 'm, T> {
    cone: &'c ConeComplex<'m, T>,
    adjoints: Vec<Matrix<T>>,
    hodge_even: Matrix<T>,
    skew: Matrix<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeCheck {
    /// `dim ker (∂+∂*)|_{C^even}`.
    pub kernel_dim: usize,
    /// `Σ_{k even} b^ψ_k` from the cone.
    pub even_sum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewKernel {
    pub size: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub parity: u8,
    pub skew_symmetric: bool,
    /// `ℓ` from the invariants module, when defined.
    pub ell: Option<u8>,
    /// Whether `parity == ell`; `None` when `ℓ` is not defined.
    pub agrees: Option<bool>,
}

/// Everything the `ops` report shows for one model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpsSummary {
    pub model_name: String,
    pub c_even_dim: usize,
    pub c_odd_dim: usize,
    pub adjoints_are_transposes: bool,
    pub hodge: HodgeCheck,
    pub laplacian_block_diagonal: bool,
    pub laplacian_kernel_dims: Vec<usize>,
    pub cone_betti: Vec<usize>,
    pub skew: SkewKernel,
    pub findings: Vec<String>,
}

impl<'c, 'm, T: Scalar> OperatorBundle<'c, 'm, T> {
    /// Requires `p = 1` and an even-dimensional model.
    pub fn build(cone: &'c ConeComplex<'m, T>) -> Result<Self> {
        if cone.p() != 1 {
            return Err(Error::WrongFiltration(cone.p()));
        }
        let model = cone.model();
        if model.top_degree() % 2 == 1 {
            return Err(Error::OddDimension(model.top_degree()));
        }
        let max = cone.max_degree();
        let adjoints: Vec<Matrix<T>> = cone.boundaries().iter().map(Matrix::transpose).collect();

        let mut even_offsets = vec![0; max + 2];
        let mut odd_offsets = vec![0; max + 2];
        let (mut e, mut o) = (0, 0);
        for k in 0..=max + 1 {
            even_offsets[k] = e;
            odd_offsets[k] = o;
            if k % 2 == 0 {
                e += cone.dim(k);
            } else {
                o += cone.dim(k);
            }
        }

        let mut blocks = Vec::new();
        for k in (0..=max).step_by(2) {
            if k < max {
                blocks.push((odd_offsets[k + 1], even_offsets[k], cone.boundary(k)));
            }
            if k > 0 {
                blocks.push((odd_offsets[k - 1], even_offsets[k], &adjoints[k - 1]));
            }
        }
        let hodge_even = Matrix::assemble(o, e, blocks);

        let skew = Self::skew_operator(cone)?;
        Ok(OperatorBundle {
            cone,
            adjoints,
            hodge_even,
            skew,
        })
    }

    fn skew_operator(cone: &ConeComplex<'m, T>) -> Result<Matrix<T>> {
        let model = cone.model();
        let half = T::one() / T::from_i64(2);
        let psi = model.psi();
        let p = model.mult_global(&psi)?;
        let p_skew = p.transpose().sub(&p).scale(&half);
        let d = model.d_global();
        let g = d.add(&d.transpose());
        let even: Vec<usize> = (0..model.dim()).filter(|&i| model.degree(i) % 2 == 0).collect();
        let odd: Vec<usize> = (0..model.dim()).filter(|&i| model.degree(i) % 2 == 1).collect();
        let (ne, no) = (even.len(), odd.len());
        let tl = p_skew.select(&even, &even);
        let tr = g.select(&even, &odd).neg();
        let bl = g.select(&odd, &even);
        let br = p_skew.select(&odd, &odd).neg();
        Ok(Matrix::assemble(
            ne + no,
            ne + no,
            [(0, 0, &tl), (0, ne, &tr), (ne, 0, &bl), (ne, ne, &br)],
        ))
    }

    pub fn cone(&self) -> &ConeComplex<'m, T> {
        self.cone
    }

    /// `∂*_k = ∂_kᵀ : C^{k+1} → C^k`.
    pub fn adjoint(&self, k: usize) -> &Matrix<T> {
        &self.adjoints[k]
    }

    /// `(∂+∂*)|_{C^even} : C^even → C^odd`, degrees ascending, each `C^k` as `(Ω^k, Ω^{k-3})`.
    pub fn hodge_even(&self) -> &Matrix<T> {
        &self.hodge_even
    }

    /// The block operator `𝔻` on `C^even`.
    pub fn skew_operator_matrix(&self) -> &Matrix<T> {
        &self.skew
    }

    pub fn c_even_dim(&self) -> usize {
        self.hodge_even.cols()
    }

    pub fn c_odd_dim(&self) -> usize {
        self.hodge_even.rows()
    }

    /// Checks `⟨∂v, w⟩ = ⟨v, ∂*w⟩` on all basis pairs.
    pub fn adjoints_are_transposes(&self) -> bool {
        self.cone
            .boundaries()
            .iter()
            .zip(&self.adjoints)
            .all(|(b, a)| (0..b.cols()).all(|j| (0..b.rows()).all(|i| b.get(i, j) == a.get(j, i))))
    }

    /// `dim ker (∂+∂*)|_{C^even}`, which must equal the even-degree sum of `b^ψ`.
    pub fn hodge_even_kernel_dim(&self) -> Result<HodgeCheck> {
        let kernel_dim = self.c_even_dim() - self.hodge_even.rank();
        let even_sum = self.cone.betti().iter().step_by(2).sum();
        if kernel_dim != even_sum {
            return Err(Error::Internal(format!(
                "Hodge kernel on C^even has dimension {kernel_dim}, cohomology gives {even_sum}"
            )));
        }
        Ok(HodgeCheck { kernel_dim, even_sum })
    }

    /// Kernel dimension of the degree-`k` Laplacian `∂*∂ + ∂∂*`, for every `k`,
    /// after checking that `(∂+∂*)²` has no components between different degrees.
    pub fn laplacian_kernel_dims(&self) -> Result<(bool, Vec<usize>)> {
        let max = self.cone.max_degree();
        let mut offsets = vec![0; max + 2];
        for k in 0..=max {
            offsets[k + 1] = offsets[k] + self.cone.dim(k);
        }
        let n = offsets[max + 1];
        let mut blocks = Vec::new();
        for k in 0..max {
            blocks.push((offsets[k + 1], offsets[k], self.cone.boundary(k)));
            blocks.push((offsets[k], offsets[k + 1], &self.adjoints[k]));
        }
        let h = Matrix::assemble(n, n, blocks);
        let h2 = h.mul(&h);
        let degree_of = |i: usize| offsets.partition_point(|&o| o <= i) - 1;
        let block_diagonal = h2.entries().all(|(i, j, _)| degree_of(i) == degree_of(j));
        let dims = (0..=max)
            .map(|k| {
                let idx: Vec<usize> = (offsets[k]..offsets[k + 1]).collect();
                idx.len() - h2.select(&idx, &idx).rank()
            })
            .collect();
        Ok((block_diagonal, dims))
    }

    /// `dim ker 𝔻` and its parity, compared with `ℓ` where `ℓ` is defined.
    pub fn skew_kernel_parity(&self) -> Result<SkewKernel> {
        let size = self.skew.rows();
        let rank = self.skew.rank();
        let kernel_dim = size - rank;
        let parity = (kernel_dim % 2) as u8;
        let skew_symmetric = self.skew.add(&self.skew.transpose()).is_zero();
        let ell = invariants::cohomology_table(self.cone.model(), 1)?.ell;
        Ok(SkewKernel {
            size,
            rank,
            kernel_dim,
            parity,
            skew_symmetric,
            ell,
            agrees: ell.map(|l| l == parity),
        })
    }

    pub fn summary(&self) -> Result<OpsSummary> {
        let hodge = self.hodge_even_kernel_dim()?;
        let (laplacian_block_diagonal, laplacian_kernel_dims) = self.laplacian_kernel_dims()?;
        let cone_betti = self.cone.betti();
        let skew = self.skew_kernel_parity()?;
        let mut findings = Vec::new();
        if laplacian_kernel_dims != cone_betti {
            findings.push("Laplacian kernels differ from cone Betti numbers".to_string());
        }
        if skew.rank % 2 == 1 {
            findings.push(format!("skew operator has odd rank {}", skew.rank));
        }
        match skew.agrees {
            Some(false) => findings.push(format!(
                "dim ker D = {} has parity {}, but ell = {}",
                skew.kernel_dim,
                skew.parity,
                skew.ell.unwrap_or(0)
            )),
            None => findings.push(format!(
                "ell undefined in dimension {}; dim ker D = {} (parity {}), 1-filtered even sum = {}",
                self.cone.model().top_degree(),
                skew.kernel_dim,
                skew.parity,
                hodge.even_sum
            )),
            Some(true) => {}
        }
        if skew.kernel_dim != hodge.kernel_dim {
            findings.push(format!(
                "dim ker D = {} differs from the Hodge kernel dimension {}",
                skew.kernel_dim, hodge.kernel_dim
            ));
        }
        Ok(OpsSummary {
            model_name: self.cone.model().name().to_string(),
            c_even_dim: self.c_even_dim(),
            c_odd_dim: self.c_odd_dim(),
            adjoints_are_transposes: self.adjoints_are_transposes(),
            hodge,
            laplacian_block_diagonal,
            laplacian_kernel_dims,
            cone_betti,
            skew,
            findings,
        })
    }
}

/// Convenience wrapper for [`OperatorBundle::build`].
pub fn build_bundle<'c, 'm, T: Scalar>(cone: &'c ConeComplex<'m, T>) -> Result<OperatorBundle<'c, 'm, T>> {
    OperatorBundle::build(cone)
}
