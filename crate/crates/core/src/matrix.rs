//! Dense matrices of arbitrary-precision integers.
//!
//! All arithmetic is exact: determinants and ranks are computed with
//! fraction-free (Bareiss) elimination, whose divisions are guaranteed to
//! be exact because every intermediate entry is a minor of the input.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Convenience constructor used throughout the tests.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Result of `self - lambda * I`; used for exact spectrum checks.
    pub fn sub_scalar_identity(&self, lambda: &BigInt) -> IntMatrix {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) - lambda;
            out.set(i, i, v);
        }
        out
    }

    /// Append extra columns on the right.
    pub fn with_extra_columns(&self, extra: &[Vec<BigInt>]) -> IntMatrix {
        for col in extra {
            assert_eq!(col.len(), self.rows, "extra column has wrong length");
        }
        IntMatrix::from_fn(self.rows, self.cols + extra.len(), |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                extra[j - self.cols][i].clone()
            }
        })
    }

    /// Copy of the matrix with one row and one column removed.
    pub fn delete_row_col(&self, row: usize, col: usize) -> IntMatrix {
        assert!(row < self.rows && col < self.cols);
        IntMatrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self.get(si, sj).clone()
        })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn col_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    /// Rows (i, j) <- (a*row_i + b*row_j, c*row_i + d*row_j).
    /// The caller is responsible for ad - bc = +-1.
    pub(crate) fn combine_rows(
        &mut self,
        i: usize,
        j: usize,
        a: &BigInt,
        b: &BigInt,
        c: &BigInt,
        d: &BigInt,
    ) {
        for col in 0..self.cols {
            let vi = self.get(i, col).clone();
            let vj = self.get(j, col).clone();
            self.set(i, col, a * &vi + b * &vj);
            self.set(j, col, c * &vi + d * &vj);
        }
    }

    /// Columns (i, j) <- (a*col_i + b*col_j, c*col_i + d*col_j).
    pub(crate) fn combine_cols(
        &mut self,
        i: usize,
        j: usize,
        a: &BigInt,
        b: &BigInt,
        c: &BigInt,
        d: &BigInt,
    ) {
        for row in 0..self.rows {
            let vi = self.get(row, i).clone();
            let vj = self.get(row, j).clone();
            self.set(row, i, a * &vi + b * &vj);
            self.set(row, j, c * &vi + d * &vj);
        }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        let det = a.get(n - 1, n - 1).clone();
        Ok(if negate { -det } else { det })
    }

    /// Exact rank over the rationals, by fraction-free elimination with
    /// full pivoting.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (m, n) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        while r < m && r < n {
            let pivot = (r..m)
                .flat_map(|i| (r..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_zero());
            let Some((pi, pj)) = pivot else { break };
            a.swap_rows(r, pi);
            a.swap_cols(r, pj);
            for i in r + 1..m {
                for j in r + 1..n {
                    let v = (a.get(i, j) * a.get(r, r) - a.get(i, r) * a.get(r, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(r, r).clone();
            r += 1;
        }
        r
    }

    /// Parse the text format: a `R C` header line, then R lines of C
    /// whitespace-separated integers.
    pub fn parse(text: &str) -> Result<IntMatrix> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input, expected `R C` header".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: ln + 1,
                message: format!("expected `R C` header, got {header:?}"),
            });
        }
        let parse_dim = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: ln + 1,
                message: format!("bad dimension {s:?}"),
            })
        };
        let rows = parse_dim(dims[0])?;
        let cols = parse_dim(dims[1])?;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: ln + 2 + r,
                message: format!("expected {rows} rows, found {r}"),
            })?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::Parse {
                    line: ln + 1,
                    message: format!("expected {cols} entries, got {}", entries.len()),
                });
            }
            for e in entries {
                data.push(e.parse::<BigInt>().map_err(|_| Error::Parse {
                    line: ln + 1,
                    message: format!("bad integer {e:?}"),
                })?);
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse {
                line: ln + 1,
                message: "trailing data after matrix".into(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})\n{}", self.rows, self.cols, self)
    }
}

/// Entrywise check that a vector is zero.
pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// |v| entrywise maximum; handy for pivot heuristics and tests.
pub fn max_abs(m: &IntMatrix) -> BigInt {
    m.data.iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rook3_laplacian() -> IntMatrix {
        crate::graph::Graph::rook(3).unwrap().laplacian_matrix()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(IntMatrix::identity(4).determinant().unwrap(), BigInt::from(1));
        let d = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(d.determinant().unwrap(), BigInt::from(6));
        let swapped = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swapped.determinant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(m.determinant(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn reduced_rook3_laplacian_counts_spanning_trees() {
        let l = rook3_laplacian();
        let reduced = l.delete_row_col(0, 0);
        assert_eq!(reduced.determinant().unwrap(), BigInt::from(11664));
    }

    #[test]
    fn laplacian_is_singular() {
        assert_eq!(rook3_laplacian().determinant().unwrap(), BigInt::zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IntMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(IntMatrix::identity(6).rank(), 6);
        // A(R_3) + 2I has rank 9 - 4: eigenvalue -2 has multiplicity (n-1)^2.
        let a = crate::graph::Graph::rook(3).unwrap().adjacency_matrix();
        let shifted = a.sub_scalar_identity(&BigInt::from(-2));
        assert_eq!(shifted.rank(), 5);
    }

    #[test]
    fn parse_round_trip() {
        let m = IntMatrix::from_i64_rows(&[vec![1, -2, 3], vec![0, 5, -60000]]);
        let back = IntMatrix::parse(&m.to_string()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = IntMatrix::parse("").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = IntMatrix::parse("2 2\n1 2\n3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = IntMatrix::parse("2 2\n1 2\n3 x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn matrix_vector_product() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let v = vec![BigInt::from(5), BigInt::from(-1)];
        assert_eq!(m.mul_vec(&v), vec![BigInt::from(3), BigInt::from(11)]);
    }
}
