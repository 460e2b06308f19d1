use crate::error::{Error, Result};
use crate::linalg::elim;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A subspace of `T^n` given by an independent list of column vectors.
#[derive(Clone, Debug)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
    // rows of the basis matrix that form an invertible square block, and its inverse
    pivot_rows: Vec<usize>,
    inv: Vec<Vec<T>>,
}

impl<T: Scalar> Subspace<T> {
    /// Fails with [`Error::Dependent`] when `basis` is not linearly independent.
    pub fn new(ambient: usize, basis: Vec<Vec<T>>) -> Result<Self> {
        for v in &basis {
            if v.len() != ambient {
                return Err(Error::Shape(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
        }
        // pivot columns of the transpose are rows on which the basis is independent
        let ech = elim::echelon(basis.clone(), ambient);
        if ech.pivots.len() < basis.len() {
            let keep = Self::independent_prefix(ambient, &basis);
            let bad = (0..basis.len()).find(|i| !keep.contains(i)).unwrap_or(0);
            return Err(Error::Dependent { index: bad });
        }
        let pivot_rows = ech.pivots;
        let block: Vec<Vec<T>> = pivot_rows
            .iter()
            .map(|&r| basis.iter().map(|v| v[r].clone()).collect())
            .collect();
        let inv = elim::inverse(&block).ok_or_else(|| Error::Internal("pivot block is singular".into()))?;
        Ok(Subspace {
            ambient,
            basis,
            pivot_rows,
            inv,
        })
    }

    /// Span of `vectors`, keeping the first maximal independent subset in input order.
    pub fn span(ambient: usize, vectors: Vec<Vec<T>>) -> Self {
        let keep = Self::independent_prefix(ambient, &vectors);
        let basis = vectors
            .into_iter()
            .enumerate()
            .filter(|(i, _)| keep.contains(i))
            .map(|(_, v)| v)
            .collect();
        Self::new(ambient, basis).expect("greedy selection is independent")
    }

    pub fn zero(ambient: usize) -> Self {
        Self::new(ambient, Vec::new()).unwrap()
    }

    pub fn full(ambient: usize) -> Self {
        Self::new(ambient, Matrix::<T>::identity(ambient).columns()).unwrap()
    }

    // Pivot columns of [v_0 | v_1 | ...] are exactly the greedy independent set.
    fn independent_prefix(ambient: usize, vectors: &[Vec<T>]) -> Vec<usize> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_columns(ambient, vectors);
        elim::echelon(m.to_dense(), vectors.len()).pivots
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is outside the subspace.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.ambient);
        let c: Vec<T> = self
            .inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.pivot_rows)
                    .fold(T::zero(), |acc, (a, &r)| acc + a.clone() * v[r].clone())
            })
            .collect();
        let mut back = vec![T::zero(); self.ambient];
        for (b, ci) in self.basis.iter().zip(&c) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in back.iter_mut().zip(b) {
                *x = x.clone() + ci.clone() * y.clone();
            }
        }
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `dim × ambient` matrix `L` with `L · b_j = e_j` for every basis vector `b_j`.
    pub fn left_inverse(&self) -> Matrix<T> {
        let entries = self
            .inv
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().zip(&self.pivot_rows).map(move |(a, &r)| (i, r, a.clone())));
        Matrix::from_entries(self.dim(), self.ambient, entries)
    }
}

/// A quotient `sup / sub` of two nested subspaces.
#[derive(Clone)]
pub struct Quotient<T> {
    pub sub: Subspace<T>,
    pub sup: Subspace<T>,
    /// Vectors of `sup` completing the basis of `sub`.
    pub representatives: Subspace<T>,
    /// Maps a vector of `sup` to its coordinates on the representatives.
    pub projector: Matrix<T>,
}

impl<T: Scalar> std::fmt::Debug for Quotient<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Quotient")
            .field("sub", &self.sub)
            .field("sup", &self.sup)
            .field("representatives", &self.representatives)
            .finish()
    }
}

impl<T: Scalar> Quotient<T> {
    pub fn dim(&self) -> usize {
        self.representatives.dim()
    }
}

/// Forms `sup / sub`, extending the basis of `sub` greedily by the basis of `sup` in order.
pub fn quotient<T: Scalar>(ambient: usize, sub: Subspace<T>, sup: Subspace<T>) -> Result<Quotient<T>> {
    if sub.ambient_dim() != ambient || sup.ambient_dim() != ambient {
        return Err(Error::Shape(
            "quotient operands live in different ambient spaces".into(),
        ));
    }
    if let Some(index) = sub.basis().iter().position(|v| !sup.contains(v)) {
        return Err(Error::NotContained { index });
    }
    let mut all = sub.basis().to_vec();
    all.extend(sup.basis().iter().cloned());
    let m = Matrix::from_columns(ambient, &all);
    let piv = elim::echelon(m.to_dense(), all.len()).pivots;
    let k = sub.dim();
    let reps: Vec<Vec<T>> = piv.iter().filter(|&&j| j >= k).map(|&j| all[j].clone()).collect();
    debug_assert_eq!(reps.len() + k, sup.dim());
    let mut combined = sub.basis().to_vec();
    combined.extend(reps.iter().cloned());
    let linv = Subspace::new(ambient, combined)?.left_inverse();
    let q: Vec<usize> = (k..k + reps.len()).collect();
    let all_cols: Vec<usize> = (0..ambient).collect();
    let projector = linv.select(&q, &all_cols);
    Ok(Quotient {
        sub,
        sup,
        representatives: Subspace::new(ambient, reps)?,
        projector,
    })
}

/// Matrix of the map induced by `f` from `source` to `target` in representative coordinates.
pub fn induced_on_quotient<T: Scalar>(f: &Matrix<T>, source: &Quotient<T>, target: &Quotient<T>) -> Result<Matrix<T>> {
    if f.cols() != source.sup.ambient_dim() || f.rows() != target.sup.ambient_dim() {
        return Err(Error::Shape(format!(
            "map is {}x{}, quotients live in {} and {}",
            f.rows(),
            f.cols(),
            source.sup.ambient_dim(),
            target.sup.ambient_dim()
        )));
    }
    for (index, v) in source.sub.basis().iter().enumerate() {
        if !target.sub.contains(&f.mul_vec(v)) {
            return Err(Error::NotWellDefined {
                what: "sub generator",
                index,
                target: "sub",
            });
        }
    }
    let mut cols = Vec::with_capacity(source.dim());
    for (index, v) in source.representatives.basis().iter().enumerate() {
        let w = f.mul_vec(v);
        if !target.sup.contains(&w) {
            return Err(Error::NotWellDefined {
                what: "representative",
                index,
                target: "super",
            });
        }
        cols.push(target.projector.mul_vec(&w));
    }
    Ok(Matrix::from_columns(target.dim(), &cols))
}
