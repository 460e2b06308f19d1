//! Fraction-free (Bareiss) row reduction.
//!
//! Rows are first scaled to integral entries; every update
//! `a[i][j] <- (p * a[i][j] - a[i][c] * a[r][j]) / prev` then stays integral, and
//! the entries after step `k` are `k+1`-minors of the input. Pivots are the
//! nonzero entry of smallest magnitude in the current column, ties going to the
//! lowest row index.

use crate::scalar::Scalar;

pub(crate) struct Echelon<T> {
    /// The first `pivots.len()` rows in row echelon form.
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub(crate) fn echelon<T: Scalar>(mut a: Vec<Vec<T>>, cols: usize) -> Echelon<T> {
    for row in a.iter_mut() {
        debug_assert_eq!(row.len(), cols);
        let s = T::integral_scale(row);
        if !s.is_one() {
            for x in row.iter_mut() {
                *x = x.clone() * s.clone();
            }
        }
    }
    let n = a.len();
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let mut best: Option<(usize, T)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            if row[c].is_zero() {
                continue;
            }
            let mag = row[c].abs();
            if best.as_ref().is_none_or(|(_, b)| mag < *b) {
                best = Some((i, mag));
            }
        }
        let Some((pi, _)) = best else { continue };
        a.swap(r, pi);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let p = prow[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c..cols {
                let v = p.clone() * row[j].clone() - f.clone() * prow[j].clone();
                row[j] = if prev.is_one() { v } else { v / prev.clone() };
            }
        }
        // columns left of c are already zero in rows below r
        prev = p;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, cols }
}

/// One kernel vector per free column, with a 1 in that column and 0 in the other free ones.
pub(crate) fn kernel_vectors<T: Scalar>(e: &Echelon<T>) -> Vec<Vec<T>> {
    let mut is_pivot = vec![false; e.cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..e.cols).filter(|&j| !is_pivot[j]) {
        let mut x = vec![T::zero(); e.cols];
        x[f] = T::one();
        for (row, &pc) in e.rows.iter().zip(&e.pivots).rev() {
            let mut s = T::zero();
            for j in pc + 1..e.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s = s + row[j].clone() * x[j].clone();
                }
            }
            x[pc] = -s / row[pc].clone();
        }
        out.push(x);
    }
    out
}

/// Gauss-Jordan inverse of a square matrix; `None` when singular.
pub(crate) fn inverse<T: Scalar>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let pi = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, pi);
        let p = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = x.clone() / p.clone();
        }
        let prow = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn entries_stay_integral() {
        let a = vec![
            vec![q(2), q(3), q(5)],
            vec![q(7), q(11), q(13)],
            vec![q(17), q(19), q(23)],
        ];
        let e = echelon(a, 3);
        assert_eq!(e.pivots, vec![0, 1, 2]);
        assert!(e.rows.iter().flatten().all(|x| x.is_integer()));
        // last pivot is +/- the determinant (-78) up to the row permutation sign
        assert_eq!(num_traits::Signed::abs(&e.rows[2][2]), q(78));
    }

    #[test]
    fn smallest_pivot_lowest_row() {
        let a = vec![vec![q(3), q(1)], vec![q(-1), q(0)], vec![q(1), q(5)]];
        let e = echelon(a, 2);
        // |-1| and |1| tie; row 1 wins
        assert_eq!(e.rows[0], vec![q(-1), q(0)]);
    }

    #[test]
    fn rational_input_and_skipped_columns() {
        let h = Rational::parse("1/2").unwrap();
        let a = vec![vec![q(0), h.clone(), q(1)], vec![q(0), q(1), q(2)]];
        let e = echelon(a, 3);
        assert_eq!(e.pivots, vec![1]);
        let k = kernel_vectors(&e);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = h.clone() * v[1].clone() + v[2].clone();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }
}
