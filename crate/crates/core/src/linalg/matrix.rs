use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::elim;
use crate::linalg::Subspace;
use crate::scalar::Scalar;

/// A rectangular matrix over a [`Scalar`] field.
///
/// Entries live in a sparse row-major map until more than half of them are
/// nonzero, at which point the matrix switches to dense storage. Either way
/// no zero is ever observable through [`Matrix::entries`].
#[derive(Clone)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    store: Store<T>,
}

#[derive(Clone)]
enum Store<T> {
    Sparse(BTreeMap<(usize, usize), T>),
    Dense(Vec<T>),
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            store: Store::Sparse(BTreeMap::new()),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_entries(n, n, (0..n).map(|i| (i, i, T::one())))
    }

    /// Builds a matrix from `(row, col, value)` triples. Repeated positions are summed.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut map: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i}, {j}) outside {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            match map.get_mut(&(i, j)) {
                Some(x) => *x = x.clone() + v,
                None => {
                    map.insert((i, j), v);
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        Matrix {
            rows,
            cols,
            store: Store::Sparse(map),
        }
        .compacted()
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_dense(r, c, rows)
    }

    fn from_dense(r: usize, c: usize, rows: Vec<Vec<T>>) -> Self {
        let entries = rows.into_iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), c, "ragged row {i}");
            row.into_iter().enumerate().map(move |(j, v)| (i, j, v))
        });
        Self::from_entries(r, c, entries)
    }

    /// The matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let entries = columns.iter().enumerate().flat_map(|(j, col)| {
            assert_eq!(col.len(), rows);
            col.iter().enumerate().map(move |(i, v)| (i, j, v.clone()))
        });
        Self::from_entries(rows, columns.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        match &self.store {
            Store::Sparse(m) => m.len(),
            Store::Dense(v) => v.iter().filter(|x| !x.is_zero()).count(),
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.store, Store::Dense(_))
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.rows && j < self.cols);
        match &self.store {
            Store::Sparse(m) => m.get(&(i, j)).cloned().unwrap_or_else(T::zero),
            Store::Dense(v) => v[i * self.cols + j].clone(),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> Box<dyn Iterator<Item = (usize, usize, &T)> + '_> {
        match &self.store {
            Store::Sparse(m) => Box::new(m.iter().map(|(&(i, j), v)| (i, j, v))),
            Store::Dense(v) => {
                let cols = self.cols;
                Box::new(
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(move |(k, x)| (k / cols, k % cols, x)),
                )
            }
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.rows]; self.cols];
        for (i, j, v) in self.entries() {
            out[j][i] = v.clone();
        }
        out
    }

    fn row_lists(&self) -> Vec<Vec<(usize, T)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (i, j, v) in self.entries() {
            out[i].push((j, v.clone()));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.cols, self.rows, self.entries().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            self.cols, rhs.rows,
            "product of {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let rl = rhs.row_lists();
        let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (i, k, a) in self.entries() {
            for (j, b) in &rl[k] {
                let e = acc.entry((i, *j)).or_insert_with(T::zero);
                *e = e.clone() + a.clone() * b.clone();
            }
        }
        Self::from_entries(self.rows, rhs.cols, acc.into_iter().map(|((i, j), v)| (i, j, v)))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![T::zero(); self.rows];
        for (i, j, a) in self.entries() {
            if !v[j].is_zero() {
                out[i] = out[i].clone() + a.clone() * v[j].clone();
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries()
            .chain(rhs.entries())
            .map(|(i, j, v)| (i, j, v.clone()))
            .collect::<Vec<_>>();
        Self::from_entries(self.rows, self.cols, entries)
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        self.add(&rhs.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        Self::from_entries(
            self.rows,
            self.cols,
            self.entries().map(|(i, j, v)| (i, j, v.clone() * c.clone())),
        )
    }

    pub fn neg(&self) -> Matrix<T> {
        self.scale(&-T::one())
    }

    /// Copy of the submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        let mut rpos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            rpos[r] = k;
        }
        let mut cpos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            cpos[c] = k;
        }
        let entries = self
            .entries()
            .filter(|(i, j, _)| rpos[*i] != usize::MAX && cpos[*j] != usize::MAX)
            .map(|(i, j, v)| (rpos[i], cpos[j], v.clone()))
            .collect::<Vec<_>>();
        Self::from_entries(rows.len(), cols.len(), entries)
    }

    /// Assemble a matrix from blocks placed at the given offsets.
    pub fn assemble<'a>(
        rows: usize,
        cols: usize,
        blocks: impl IntoIterator<Item = (usize, usize, &'a Matrix<T>)>,
    ) -> Matrix<T> {
        let mut entries = Vec::new();
        for (r0, c0, b) in blocks {
            assert!(r0 + b.rows <= rows && c0 + b.cols <= cols, "block overflows");
            entries.extend(b.entries().map(|(i, j, v)| (r0 + i, c0 + j, v.clone())));
        }
        Self::from_entries(rows, cols, entries)
    }

    pub fn rank(&self) -> usize {
        elim::echelon(self.to_dense(), self.cols).pivots.len()
    }

    pub fn kernel_basis(&self) -> Subspace<T> {
        let ech = elim::echelon(self.to_dense(), self.cols);
        let vecs = elim::kernel_vectors(&ech);
        Subspace::new(self.cols, vecs).expect("kernel vectors are independent")
    }

    /// Column span, keeping the first maximal independent set of columns.
    pub fn image(&self) -> Subspace<T> {
        Subspace::span(self.rows, self.columns())
    }

    fn compacted(self) -> Self {
        let total = self.rows * self.cols;
        let nnz = self.nnz();
        let want_dense = total > 0 && 2 * nnz > total;
        match (self.store, want_dense) {
            (Store::Sparse(m), true) => {
                let mut v = vec![T::zero(); total];
                for ((i, j), x) in m {
                    v[i * self.cols + j] = x;
                }
                Matrix {
                    rows: self.rows,
                    cols: self.cols,
                    store: Store::Dense(v),
                }
            }
            (Store::Dense(v), false) => {
                let cols = self.cols;
                let m = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| ((k / cols, k % cols), x))
                    .collect();
                Matrix {
                    rows: self.rows,
                    cols: self.cols,
                    store: Store::Sparse(m),
                }
            }
            (store, _) => Matrix {
                rows: self.rows,
                cols: self.cols,
                store,
            },
        }
    }
}

impl<T: Scalar> PartialEq for Matrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries().eq(other.entries())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols)
                .map(|j| match &self.store {
                    Store::Sparse(m) => m.get(&(i, j)).map_or_else(|| "0".to_string(), |x| x.to_string()),
                    Store::Dense(v) => v[i * self.cols + j].to_string(),
                })
                .collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Rational>::zeros(4, 4).rank(), 0);
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        // rows 1 and 2 are proportional; the 2x2 minor on rows 1,3 is 1*1 - 2*0 = 1
        assert_eq!(m(&[&[1, 2], &[2, 4], &[0, 1]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<Rational>::identity(3).kernel_basis().is_empty());
        assert_eq!(Matrix::<Rational>::zeros(2, 3).kernel_basis().dim(), 3);
        let a = m(&[&[1, 1, 0]]);
        let k = a.kernel_basis();
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(a.mul_vec(v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn storage_switches_on_fill() {
        let sparse = m(&[&[1, 0, 0], &[0, 0, 0]]);
        assert!(!sparse.is_dense());
        let dense = m(&[&[1, 2, 0], &[3, 4, 0]]);
        assert!(dense.is_dense());
        assert_eq!(dense.get(1, 1), q(4));
        assert_eq!(dense.transpose().get(1, 1), q(4));
        assert_eq!(dense.nnz(), 4);
        // cancellation takes it back to sparse
        let z = dense.sub(&dense);
        assert!(z.is_zero() && !z.is_dense());
    }

    #[test]
    fn product_and_blocks() {
        let a = m(&[&[1, 2], &[0, 1]]);
        let b = m(&[&[1, -2], &[0, 1]]);
        assert_eq!(a.mul(&b), Matrix::identity(2));
        let big = Matrix::assemble(4, 4, [(0, 0, &a), (2, 2, &b)]);
        assert_eq!(big.select(&[2, 3], &[2, 3]), b);
        assert_eq!(big.rank(), 4);
        assert_eq!(a.mul_vec(&[q(1), q(1)]), vec![q(3), q(1)]);
    }

    #[test]
    fn duplicate_entries_sum() {
        let a = Matrix::from_entries(1, 1, [(0, 0, q(2)), (0, 0, q(-2))]);
        assert!(a.is_zero());
    }
}
