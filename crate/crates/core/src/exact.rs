//! Exact integer linear algebra: rank, integer kernel bases and minor
//! enumeration. All intermediate arithmetic runs over arbitrary-precision
//! integers, so overflow cannot occur; results are converted back to `i64`
//! at the boundary and the conversion is checked.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

/// Integer vector of a fixed ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise positive part.
    pub fn positive_part(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e.max(0)).collect()
    }

    /// Componentwise negative part, stored with positive sign.
    pub fn negative_part(&self) -> Vec<i64> {
        self.0.iter().map(|&e| (-e).max(0)).collect()
    }

    /// Flips the sign so the first nonzero entry is positive.
    pub fn sign_normalized(&self) -> IntVector {
        let mut v = self.0.clone();
        if let Some(&first) = v.iter().find(|&&e| e != 0) {
            if first < 0 {
                for e in &mut v {
                    *e = -*e;
                }
            }
        }
        IntVector(v)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix-vector product, exact. Accumulates in 128 bits; inputs at desk
    /// scale never approach that.
    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|r| {
                let acc: i128 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                i64::try_from(acc).map_err(|_| Error::Overflow("matrix-vector product".into()))
            })
            .collect()
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }
}

/// Row echelon form over the integers via gcd-style eliminations.
/// Mutates `mat` in place and returns the rank. Row operations are
/// unimodular, so the row lattice is preserved.
fn integer_echelon(mat: &mut [Vec<BigInt>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        loop {
            // Smallest nonzero entry in this column at or below the pivot.
            let mut best: Option<usize> = None;
            for r in pivot_row..rows {
                if !mat[r][col].is_zero()
                    && best.is_none_or(|b| mat[r][col].abs() < mat[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            mat.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if mat[r][col].is_zero() {
                    continue;
                }
                let q = &mat[r][col] / &mat[pivot_row][col];
                if !q.is_zero() {
                    for c in col..cols {
                        let sub = &q * &mat[pivot_row][c];
                        mat[r][c] -= sub;
                    }
                }
                if !mat[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_row += 1;
                break;
            }
        }
    }
    pivot_row
}

/// Rank over the rationals, computed exactly.
pub fn rank(m: &IntMatrix) -> usize {
    let mut big = m.to_big();
    integer_echelon(&mut big)
}

/// Basis of the integer kernel lattice `{u : m·u = 0}`.
///
/// Every returned vector has its first nonzero entry positive and entry gcd
/// one; the list is sorted for reproducibility. The count always equals
/// `cols - rank`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let n = m.cols;
    let r = m.rows;
    // Work on [A^T | I_n]; rows whose head block vanishes carry kernel vectors
    // in the identity block.
    let mut work: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..r).map(|j| BigInt::from(m.get(j, i))).collect();
            row.extend((0..n).map(|j| BigInt::from(u8::from(j == i))));
            row
        })
        .collect();
    // Eliminate only within the head block.
    let rows = work.len();
    let mut pivot_row = 0;
    for col in 0..r {
        if pivot_row >= rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for row in pivot_row..rows {
                if !work[row][col].is_zero()
                    && best.is_none_or(|b| work[row][col].abs() < work[b][col].abs())
                {
                    best = Some(row);
                }
            }
            let Some(b) = best else { break };
            work.swap(pivot_row, b);
            let mut done = true;
            for row in pivot_row + 1..rows {
                if work[row][col].is_zero() {
                    continue;
                }
                let q = &work[row][col] / &work[pivot_row][col];
                if !q.is_zero() {
                    for c in col..r + n {
                        let sub = &q * &work[pivot_row][c];
                        work[row][c] -= sub;
                    }
                }
                if !work[row][col].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_row += 1;
                break;
            }
        }
    }

    let mut basis = Vec::new();
    for row in &work {
        if row[..r].iter().all(Zero::is_zero) && row[r..].iter().any(|e| !e.is_zero()) {
            let v: Vec<i64> = row[r..]
                .iter()
                .map(|e| {
                    i64::try_from(e).unwrap_or_else(|_| {
                        panic!("kernel basis entry exceeds supported magnitude")
                    })
                })
                .collect();
            basis.push(IntVector(v).sign_normalized());
        }
    }
    basis.sort();
    basis
}

/// Determinant of a square BigInt matrix, Bareiss fraction-free elimination.
fn bareiss_det(mat: &mut [Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Determinant of the submatrix picked out by `row_idx` x `col_idx`.
pub fn minor(m: &IntMatrix, row_idx: &[usize], col_idx: &[usize]) -> BigInt {
    let mut sub: Vec<Vec<BigInt>> = row_idx
        .iter()
        .map(|&r| col_idx.iter().map(|&c| BigInt::from(m.get(r, c))).collect())
        .collect();
    bareiss_det(&mut sub)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Maximum absolute value over all `k x k` minors, by exhaustive enumeration
/// of row and column subsets. Desk-scale inputs only.
pub fn max_abs_minor(m: &IntMatrix, k: usize) -> Result<BigInt> {
    if k > m.rows || k > m.cols {
        return Err(Error::Dimension(format!(
            "{}x{} minors of a {}x{} matrix",
            k, k, m.rows, m.cols
        )));
    }
    if k == 0 {
        return Ok(BigInt::from(1));
    }
    let row_sets = combinations(m.rows, k);
    let col_sets = combinations(m.cols, k);
    let mut best = BigInt::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            let d = minor(m, rs, cs).abs();
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scroll_3_2_matrix() -> IntMatrix {
        IntMatrix::from_rows(vec![
            vec![1, 1, 1, 1, 1, 1, 1],
            vec![0, 0, 0, 0, 1, 1, 1],
            vec![1, 2, 3, 4, 1, 2, 3],
        ])
        .unwrap()
    }

    #[test]
    fn rank_of_scroll_matrix_is_full() {
        assert_eq!(rank(&scroll_3_2_matrix()), 3);
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&IntMatrix::identity(2)), 2);
        assert_eq!(rank(&IntMatrix::new(3, 4, vec![0; 12]).unwrap()), 0);
    }

    #[test]
    fn kernel_of_scroll_matrix() {
        let m = scroll_3_2_matrix();
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 7 - 3);
        for v in &basis {
            assert_eq!(m.mul_vec(v.as_slice()).unwrap(), vec![0, 0, 0]);
            let g = v
                .as_slice()
                .iter()
                .fold(0i64, |acc, &e| num_integer::gcd(acc, e.abs()));
            assert_eq!(g, 1);
            assert!(v.as_slice().iter().find(|&&e| e != 0).unwrap() > &0);
        }
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        assert!(kernel_basis(&IntMatrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let m = IntMatrix::new(1, 2, vec![1, 1]).unwrap();
        let basis = kernel_basis(&m);
        assert_eq!(basis, vec![IntVector(vec![1, -1])]);
    }

    #[test]
    fn max_abs_minor_identity() {
        assert_eq!(
            max_abs_minor(&IntMatrix::identity(2), 2).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn max_abs_minor_k1_is_max_entry() {
        let m = IntMatrix::from_rows(vec![vec![-7, 2], vec![3, 5]]).unwrap();
        assert_eq!(max_abs_minor(&m, 1).unwrap(), BigInt::from(7));
    }

    #[test]
    fn max_abs_minor_rejects_oversized() {
        let m = IntMatrix::identity(2);
        assert!(max_abs_minor(&m, 3).is_err());
    }

    /// Cofactor-expansion determinant, kept independent of the Bareiss path.
    fn cofactor_det(rows: &[Vec<i64>]) -> i128 {
        let n = rows.len();
        if n == 1 {
            return rows[0][0] as i128;
        }
        let mut det = 0i128;
        for (j, &top) in rows[0].iter().enumerate() {
            if top == 0 {
                continue;
            }
            let sub: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &e)| e)
                        .collect()
                })
                .collect();
            let term = top as i128 * cofactor_det(&sub);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    #[test]
    fn max_abs_minor_matches_cofactor_enumeration() {
        // A for blocks (3,3), all 3x3 column minors by direct expansion.
        let m = IntMatrix::from_rows(vec![
            vec![1, 1, 1, 1, 1, 1],
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 2, 3, 1, 2, 3],
        ])
        .unwrap();
        let mut best = 0i128;
        for cs in combinations(6, 3) {
            let rows: Vec<Vec<i64>> = (0..3)
                .map(|r| cs.iter().map(|&c| m.get(r, c)).collect())
                .collect();
            best = best.max(cofactor_det(&rows).abs());
        }
        assert_eq!(max_abs_minor(&m, 3).unwrap(), BigInt::from(best));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c)
                .prop_map(move |entries| IntMatrix::new(r, c, entries).unwrap())
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_lie_in_kernel(m in small_matrix()) {
            for v in kernel_basis(&m) {
                prop_assert_eq!(m.mul_vec(v.as_slice()).unwrap(), vec![0; m.rows()]);
                let g = v.as_slice().iter().fold(0i64, |acc, &e| num_integer::gcd(acc, e.abs()));
                prop_assert!(g == 1);
            }
        }

        #[test]
        fn rank_plus_kernel_dim_is_cols(m in small_matrix()) {
            prop_assert_eq!(rank(&m) + kernel_basis(&m).len(), m.cols());
        }

        #[test]
        fn rank_invariant_under_row_permutation_and_combination(m in small_matrix(), seed in 0u64..1000) {
            let r = rank(&m);
            let mut rows: Vec<Vec<i64>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
            // permute deterministically by seed
            let n = rows.len();
            for i in (1..n).rev() {
                let j = (seed as usize + i * 7) % (i + 1);
                rows.swap(i, j);
            }
            let permuted = IntMatrix::from_rows(rows.clone()).unwrap();
            prop_assert_eq!(rank(&permuted), r);
            // append an integer combination of the first two rows
            let extra: Vec<i64> = (0..m.cols())
                .map(|c| 2 * rows[0][c] + if n > 1 { 3 * rows[1][c] } else { 0 })
                .collect();
            rows.push(extra);
            prop_assert_eq!(rank(&IntMatrix::from_rows(rows).unwrap()), r);
        }
    }
}
