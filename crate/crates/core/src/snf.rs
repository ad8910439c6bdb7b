//! Smith normal form over the integers, with optional transform tracking.
//!
//! `smith_normal_form` diagonalizes an integer matrix M by unimodular row
//! and column operations, producing P, Q with P * M * Q = S where S is
//! diagonal, nonnegative, and each diagonal entry divides the next. The
//! pivot rule picks the nonzero entry of minimal absolute value in the
//! active submatrix (ties broken by lowest row, then column), which keeps
//! entry growth tame on the dense structured matrices this crate works
//! with. A final repair pass enforces the divisibility chain via 2x2
//! unimodular blocks.
//!
//! The decomposition also answers lattice-membership queries: M*x = b is
//! solvable over the integers iff S*y = P*b is solvable by exact
//! per-coordinate division, and then x = Q*y.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::matrix::IntMatrix;

/// Diagonalization P * M * Q = S with unimodular P, Q.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    s: IntMatrix,
    p: Option<IntMatrix>,
    q: Option<IntMatrix>,
}

pub fn smith_normal_form(m: &IntMatrix, track_transforms: bool) -> SmithDecomposition {
    let mut w = Worker {
        s: m.clone(),
        p: track_transforms.then(|| IntMatrix::identity(m.rows())),
        q: track_transforms.then(|| IntMatrix::identity(m.cols())),
    };
    w.diagonalize();
    w.normalize_signs();
    w.repair_divisibility();
    SmithDecomposition {
        s: w.s,
        p: w.p,
        q: w.q,
    }
}

/// Cokernel of M as an abstract finitely generated abelian group.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    smith_normal_form(m, false).cokernel_group()
}

/// Solve M*x = b over the integers, if b lies in the column lattice of M.
pub fn solve_in_image(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    smith_normal_form(m, true).solve_in_image(b)
}

impl SmithDecomposition {
    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn p(&self) -> Option<&IntMatrix> {
        self.p.as_ref()
    }

    pub fn q(&self) -> Option<&IntMatrix> {
        self.q.as_ref()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Free rank of the cokernel (rows minus rank).
    pub fn free_rank(&self) -> usize {
        self.s.rows() - self.rank()
    }

    /// Diagonal entries > 1, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| *d > BigInt::one())
            .collect()
    }

    pub fn cokernel_group(&self) -> AbelianGroup {
        AbelianGroup::from_invariant_factors(self.invariant_factors(), self.free_rank())
    }

    /// Checks P*M*Q == S, unimodularity of both transforms, and the
    /// diagonal divisibility chain against the original matrix.
    pub fn verify(&self, m: &IntMatrix) -> Result<bool> {
        let (p, q) = self.transforms()?;
        if p.mul(m).mul(q) != self.s {
            return Ok(false);
        }
        let one = BigInt::one();
        if p.determinant()?.abs() != one || q.determinant()?.abs() != one {
            return Ok(false);
        }
        Ok(self.diagonal_is_canonical())
    }

    /// Nonzero entries positive, zeros trailing, each entry divides the next.
    pub fn diagonal_is_canonical(&self) -> bool {
        let diag = self.diagonal();
        let mut seen_zero = false;
        for d in &diag {
            if d.is_zero() {
                seen_zero = true;
            } else if seen_zero || d.is_negative() {
                return false;
            }
        }
        diag.windows(2).all(|w| {
            w[0].is_zero() || w[1].is_zero() || (&w[1] % &w[0]).is_zero()
        })
    }

    fn transforms(&self) -> Result<(&IntMatrix, &IntMatrix)> {
        match (&self.p, &self.q) {
            (Some(p), Some(q)) => Ok((p, q)),
            _ => Err(Error::TransformsRequired),
        }
    }

    pub fn solve_in_image(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let (p, q) = self.transforms()?;
        if b.len() != self.s.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.s.rows(),
                got: b.len(),
            });
        }
        let pb = p.mul_vec(b);
        let r = self.rank();
        // Coordinates past the diagonal must vanish for b to be in the image.
        if pb[r..].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        let mut y = vec![BigInt::zero(); self.s.cols()];
        for i in 0..r {
            let (quot, rem) = pb[i].div_rem(self.s.get(i, i));
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = quot;
        }
        Ok(Some(q.mul_vec(&y)))
    }

    /// Least k >= 1 with k*v in the column lattice, i.e. the order of [v]
    /// in the cokernel. Computed per SNF coordinate: the order of (P*v)_i
    /// modulo s_i is s_i / gcd(s_i, (P*v)_i), and the overall order is the
    /// lcm of these.
    pub fn order_in_cokernel(&self, v: &[BigInt]) -> Result<BigInt> {
        let (p, _) = self.transforms()?;
        if v.len() != self.s.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.s.rows(),
                got: v.len(),
            });
        }
        let pv = p.mul_vec(v);
        let r = self.rank();
        if pv[r..].iter().any(|c| !c.is_zero()) {
            return Err(Error::InfiniteOrder);
        }
        let mut order = BigInt::one();
        for i in 0..r {
            let s = self.s.get(i, i);
            let coord_order = s / s.gcd(&pv[i]);
            order = order.lcm(&coord_order);
        }
        Ok(order)
    }
}

struct Worker {
    s: IntMatrix,
    p: Option<IntMatrix>,
    q: Option<IntMatrix>,
}

impl Worker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        if let Some(p) = self.p.as_mut() {
            p.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        if let Some(q) = self.q.as_mut() {
            q.swap_cols(a, b);
        }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.row_axpy(dst, src, k);
        if let Some(p) = self.p.as_mut() {
            p.row_axpy(dst, src, k);
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.col_axpy(dst, src, k);
        if let Some(q) = self.q.as_mut() {
            q.col_axpy(dst, src, k);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.s.negate_row(r);
        if let Some(p) = self.p.as_mut() {
            p.negate_row(r);
        }
    }

    fn combine_rows(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        self.s.combine_rows(i, j, a, b, c, d);
        if let Some(p) = self.p.as_mut() {
            p.combine_rows(i, j, a, b, c, d);
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        self.s.combine_cols(i, j, a, b, c, d);
        if let Some(q) = self.q.as_mut() {
            q.combine_cols(i, j, a, b, c, d);
        }
    }

    /// Minimal-absolute-value nonzero entry of the active submatrix,
    /// ties broken by lowest (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let v = self.s.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(ba, _, _)| a < *ba) {
                    best = Some((a, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn move_pivot(&mut self, t: usize) -> bool {
        match self.find_pivot(t) {
            Some((i, j)) => {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                true
            }
            None => false,
        }
    }

    fn diagonalize(&mut self) {
        let (m, n) = (self.s.rows(), self.s.cols());
        let mut t = 0;
        while t < m.min(n) {
            if !self.move_pivot(t) {
                break;
            }
            loop {
                for i in t + 1..m {
                    let quot = self.s.get(i, t) / self.s.get(t, t);
                    if !quot.is_zero() {
                        self.row_axpy(i, t, &-quot);
                    }
                }
                if (t + 1..m).any(|i| !self.s.get(i, t).is_zero()) {
                    // A remainder smaller than the pivot appeared; re-pivot.
                    self.move_pivot(t);
                    continue;
                }
                for j in t + 1..n {
                    let quot = self.s.get(t, j) / self.s.get(t, t);
                    if !quot.is_zero() {
                        self.col_axpy(j, t, &-quot);
                    }
                }
                if (t + 1..n).any(|j| !self.s.get(t, j).is_zero()) {
                    self.move_pivot(t);
                    continue;
                }
                break;
            }
            t += 1;
        }
    }

    fn normalize_signs(&mut self) {
        for i in 0..self.s.rows().min(self.s.cols()) {
            if self.s.get(i, i).is_negative() {
                self.negate_row(i);
            }
        }
    }

    /// Enforce s_i | s_{i+1} by replacing offending adjacent pairs (a, b)
    /// with (gcd, lcm) through a unimodular 2x2 block.
    fn repair_divisibility(&mut self) {
        let diag_len = self.s.rows().min(self.s.cols());
        let rank = (0..diag_len)
            .take_while(|&i| !self.s.get(i, i).is_zero())
            .count();
        if rank < 2 {
            return;
        }
        loop {
            let mut changed = false;
            for i in 0..rank - 1 {
                let a = self.s.get(i, i).clone();
                let b = self.s.get(i + 1, i + 1).clone();
                if (&b % &a).is_zero() {
                    continue;
                }
                let eg = a.extended_gcd(&b);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let a_over = &a / &g;
                let b_over = &b / &g;
                self.combine_rows(i, i + 1, &x, &y, &-&b_over, &a_over);
                self.combine_cols(i, i + 1, &BigInt::one(), &BigInt::one(), &(-&y * b_over), &(x * a_over));
                changed = true;
            }
            if !changed {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use proptest::prelude::*;

    /// Independent oracle: the k-th determinantal divisor d_k is the gcd of
    /// all k x k minors, and the invariant factors are s_k = d_k / d_{k-1}.
    /// Completely separate from the elimination path.
    fn minor_gcd_diagonal(m: &IntMatrix) -> Vec<BigInt> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in subsets(n, k - 1) {
                    if rest.iter().all(|&x| x > first) {
                        let mut s = vec![first];
                        s.append(&mut rest);
                        out.push(s);
                    }
                }
            }
            out.retain(|s| s.len() == k);
            out
        }
        let max_k = m.rows().min(m.cols());
        let mut divisors = vec![BigInt::one()];
        for k in 1..=max_k {
            let mut g = BigInt::zero();
            for rows in subsets(m.rows(), k) {
                for cols in subsets(m.cols(), k) {
                    let sub = IntMatrix::from_fn(k, k, |i, j| m.get(rows[i], cols[j]).clone());
                    g = g.gcd(&sub.determinant().unwrap());
                }
            }
            if g.is_zero() {
                break;
            }
            divisors.push(g);
        }
        let mut out: Vec<BigInt> = divisors.windows(2).map(|w| &w[1] / &w[0]).collect();
        out.resize(max_k, BigInt::zero());
        out
    }

    #[test]
    fn identity_and_diagonal_inputs() {
        let snf = smith_normal_form(&IntMatrix::identity(3), false);
        assert_eq!(snf.diagonal(), vec![BigInt::one(); 3]);
        assert!(snf.invariant_factors().is_empty());

        let d = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&d, true);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert!(snf.verify(&d).unwrap());
    }

    #[test]
    fn rook3_laplacian_diagonal() {
        let l = Graph::rook(3).unwrap().laplacian_matrix();
        let snf = smith_normal_form(&l, true);
        let expect: Vec<BigInt> = [1, 1, 1, 1, 6, 6, 18, 18, 0]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(snf.diagonal(), expect);
        assert_eq!(snf.free_rank(), 1);
        assert!(snf.verify(&l).unwrap());
        assert_eq!(snf.diagonal(), minor_gcd_diagonal(&l));
    }

    #[test]
    fn rook3_adjacency_cokernel() {
        let a = Graph::rook(3).unwrap().adjacency_matrix();
        let g = cokernel(&a);
        let expect: Vec<BigInt> = [2, 2, 2, 2, 4].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(g.invariant_factors(), expect.as_slice());
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn cokernel_edge_cases() {
        let g = cokernel(&IntMatrix::zeros(2, 2));
        assert_eq!(g.free_rank(), 2);
        assert!(g.invariant_factors().is_empty());

        let g = cokernel(&IntMatrix::from_i64_rows(&[vec![2]]));
        assert_eq!(g.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn solve_in_image_basics() {
        let m = IntMatrix::from_i64_rows(&[vec![2]]);
        let snf = smith_normal_form(&m, true);
        assert_eq!(
            snf.solve_in_image(&[BigInt::zero()]).unwrap(),
            Some(vec![BigInt::zero()])
        );
        assert_eq!(snf.solve_in_image(&[BigInt::from(3)]).unwrap(), None);
        let x = snf.solve_in_image(&[BigInt::from(10)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), vec![BigInt::from(10)]);
    }

    #[test]
    fn solve_checks_dimensions() {
        let snf = smith_normal_form(&IntMatrix::identity(2), true);
        assert!(matches!(
            snf.solve_in_image(&[BigInt::one()]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn order_in_cokernel_formula() {
        // coker diag(4, 6): e_1 has order 4, e_1 + e_2 has order 12.
        let m = IntMatrix::from_i64_rows(&[vec![4, 0], vec![0, 6]]);
        let snf = smith_normal_form(&m, true);
        let order = |v: &[i64]| {
            let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            snf.order_in_cokernel(&v).unwrap()
        };
        assert_eq!(order(&[0, 0]), BigInt::one());
        assert_eq!(order(&[1, 0]), BigInt::from(4));
        assert_eq!(order(&[1, 1]), BigInt::from(12));
    }

    #[test]
    fn infinite_order_detected() {
        let m = IntMatrix::zeros(2, 2);
        let snf = smith_normal_form(&m, true);
        assert!(matches!(
            snf.order_in_cokernel(&[BigInt::one(), BigInt::zero()]),
            Err(Error::InfiniteOrder)
        ));
    }

    proptest! {
        #[test]
        fn random_matrices_match_minor_gcd_oracle(
            rows in 1usize..=4,
            cols in 1usize..=4,
            entries in proptest::collection::vec(-5i64..=5, 16),
        ) {
            let m = IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * 4 + j]));
            let snf = smith_normal_form(&m, true);
            prop_assert!(snf.verify(&m).unwrap());
            prop_assert_eq!(snf.diagonal(), minor_gcd_diagonal(&m));
        }

        #[test]
        fn snf_diagonal_product_matches_determinant(
            entries in proptest::collection::vec(-6i64..=6, 9),
        ) {
            let m = IntMatrix::from_fn(3, 3, |i, j| BigInt::from(entries[i * 3 + j]));
            let snf = smith_normal_form(&m, false);
            let prod: BigInt = snf.diagonal().iter().product();
            prop_assert_eq!(prod, m.determinant().unwrap().abs());
        }
    }
}
