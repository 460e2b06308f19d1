//! Exact linear algebra over a [`Scalar`](crate::Scalar) field: ranks, kernels,
//! images, quotients and maps induced on quotients.

mod elim;
mod matrix;
mod subspace;

pub use matrix::Matrix;
pub use subspace::{induced_on_quotient, quotient, Quotient, Subspace};

#[cfg(test)]
mod props {
    use super::*;
    use crate::{Rational, Scalar};
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    }

    fn to_matrix(rows: &[Vec<i64>]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect())
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn rank_of_transpose(rows in small_matrix()) {
            let m = to_matrix(&rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(rows in small_matrix()) {
            let m = to_matrix(&rows);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).iter().all(num_traits::Zero::is_zero));
            }
        }

        #[test]
        fn rank_ignores_column_order(rows in small_matrix(), seed in any::<u64>()) {
            let m = to_matrix(&rows);
            let mut perm: Vec<usize> = (0..m.cols()).collect();
            // deterministic shuffle from the seed
            let mut s = seed;
            for i in (1..perm.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let rows_all: Vec<usize> = (0..m.rows()).collect();
            prop_assert_eq!(m.rank(), m.select(&rows_all, &perm).rank());
        }

        #[test]
        fn quotient_dimensions_add(rows in small_matrix()) {
            // image of m restricted to its own column space: sub = im(m * k) for the first column
            let m = to_matrix(&rows);
            let sup = m.image();
            let first = Subspace::span(m.rows(), vec![m.column(0)]);
            let q = quotient(m.rows(), first.clone(), sup.clone()).unwrap();
            prop_assert_eq!(q.dim() + first.dim(), sup.dim());
        }
    }
}
