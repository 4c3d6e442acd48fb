//! Exact scalar and matrix arithmetic over a prime field.
//!
//! This is the only numeric substrate in the crate. Matrices are dense and
//! row-major; `0 x n` and `n x 0` matrices are legal and behave as zero maps.
//! Elimination always picks the first nonzero pivot so that every basis
//! computed downstream is reproducible.

use crate::{Error, Result};

/// Arithmetic context for the prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.p - a }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Canonical representative of a signed integer.
    pub fn from_i64(&self, v: i64) -> u64 {
        let m = v.rem_euclid(self.p as i64);
        m as u64
    }
}

/// Deterministic primality test (trial division; moduli are session-scale).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        Matrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Matrix::zeros(n, n, p);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, cols: usize, p: u64) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.into_iter().map(|v| v % p));
        }
        Matrix { rows: nrows, cols, p, data }
    }

    pub fn from_fn(rows: usize, cols: usize, p: u64, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Matrix::zeros(rows, cols, p);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j) % p;
            }
        }
        m
    }

    pub fn fp(&self) -> Fp {
        Fp { p: self.p }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let f = self.fp();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let f = self.fp();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let f = self.fp();
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = Matrix::zeros(self.rows, other.cols, p);
        // Entries are < p <= 2^31; accumulate in u128 only when needed.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                let orow_base = k * other.cols;
                for j in 0..other.cols {
                    let v = out[(i, j)] as u128 + a as u128 * other.data[orow_base + j] as u128;
                    out[(i, j)] = (v % p as u128) as u64;
                }
            }
        }
        out
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, p: self.p, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.p, other.p);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols, self.p);
        for i in 0..self.rows {
            m.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            m.row_mut(i)[self.cols..].copy_from_slice(other.row(i));
        }
        m
    }

    pub fn block_diag(blocks: &[&Matrix], p: u64) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols, p);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            assert_eq!(b.p, p);
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Reduced row echelon form. Returns the reduced matrix and the pivot
    /// column of each pivot row, scanning columns left to right and always
    /// taking the first row with a nonzero entry.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.fp();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| m[(r, col)] != 0);
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(row, pr);
            let inv = f.inv(m[(row, col)]);
            for j in col..m.cols {
                m[(row, j)] = f.mul(m[(row, j)], inv);
            }
            for r in 0..m.rows {
                if r != row && m[(r, col)] != 0 {
                    let c = m[(r, col)];
                    for j in col..m.cols {
                        let sub = f.mul(c, m[(row, j)]);
                        m[(r, j)] = f.sub(m[(r, j)], sub);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank over `F_p`.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the row space, in reduced echelon form (deterministic).
    pub fn row_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut out = Matrix::zeros(pivots.len(), self.cols, self.p);
        for i in 0..pivots.len() {
            out.row_mut(i).copy_from_slice(r.row(i));
        }
        out
    }

    /// Solve `self * x = b` for `x`; `None` when inconsistent. The returned
    /// solution is the deterministic one with all free variables zero.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "shape mismatch in solve");
        assert_eq!(self.p, b.p);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // A pivot in the b-block means inconsistency.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols, self.p);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = r[(i, self.cols + j)];
            }
        }
        Some(x)
    }

    /// Basis of `{x : self * x = 0}` as columns; column count equals
    /// `cols - rank`. Reduced echelon convention: for each free column the
    /// basis vector has a 1 there and the negated pivot-column entries above.
    pub fn nullspace(&self) -> Matrix {
        let f = self.fp();
        let (r, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(self.cols, free.len(), self.p);
        for (k, &fc) in free.iter().enumerate() {
            basis[(fc, k)] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                basis[(pc, k)] = f.neg(r[(i, fc)]);
            }
        }
        basis
    }

    /// Row-space membership: does `v` lie in the span of the rows of `self`?
    pub fn row_space_contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut aug = self.clone();
        let vm = Matrix::from_rows(vec![v.to_vec()], self.cols, self.p);
        aug = aug.vstack(&vm);
        aug.rank() == self.rank()
    }

    /// Is this square matrix invertible?
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.rows, self.p);
        let x = self.solve(&id)?;
        if self.mul(&x) == id { Some(x) } else { None }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = u64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental echelon accumulator for row spans. Rows are inserted one at a
/// time; insertion reports whether the row enlarged the span.
#[derive(Debug, Clone)]
pub struct RowSpan {
    pub cols: usize,
    pub p: u64,
    rows: Vec<Vec<u64>>,
    pivot_of_row: Vec<usize>,
}

impl RowSpan {
    pub fn new(cols: usize, p: u64) -> Self {
        RowSpan { cols, p, rows: Vec::new(), pivot_of_row: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current span in place; returns the pivot column
    /// if a nonzero residue remains.
    fn reduce(&self, v: &mut [u64]) -> Option<usize> {
        let f = Fp { p: self.p };
        for (row, &pc) in self.rows.iter().zip(&self.pivot_of_row) {
            if v[pc] != 0 {
                let c = v[pc];
                for j in pc..self.cols {
                    if row[j] != 0 {
                        v[j] = f.sub(v[j], f.mul(c, row[j]));
                    }
                }
            }
        }
        v.iter().position(|&x| x != 0)
    }

    /// Insert a row; returns true if the span grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.cols);
        let f = Fp { p: self.p };
        match self.reduce(&mut v) {
            None => false,
            Some(pc) => {
                let inv = f.inv(v[pc]);
                for x in v.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                // Back-substitute into existing rows to stay fully reduced.
                for (row, &rpc) in self.rows.iter_mut().zip(&self.pivot_of_row) {
                    debug_assert!(rpc != pc);
                    if row[pc] != 0 {
                        let c = row[pc];
                        for j in 0..self.cols {
                            if v[j] != 0 {
                                row[j] = f.sub(row[j], f.mul(c, v[j]));
                            }
                        }
                    }
                }
                // Keep rows ordered by pivot column.
                let at = self.pivot_of_row.iter().position(|&q| q > pc).unwrap_or(self.rows.len());
                self.rows.insert(at, v);
                self.pivot_of_row.insert(at, pc);
                true
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Residue of `v` modulo the span (fully reduced).
    pub fn residue(&self, v: &[u64]) -> Vec<u64> {
        let mut w = v.to_vec();
        let _ = self.reduce(&mut w);
        w
    }

    pub fn basis_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn into_matrix(self) -> Matrix {
        let cols = self.cols;
        let p = self.p;
        Matrix::from_rows(self.rows, cols, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: u64 = 32003;

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(Matrix::identity(2, P).rank(), 2);
        assert_eq!(Matrix::zeros(3, 3, P).rank(), 0);
    }

    #[test]
    fn rank_dependent_rows() {
        // [[1,2],[2,4]] has rank 1 mod 32003.
        let m = Matrix::from_rows(vec![vec![1, 2], vec![2, 4]], 2, P);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = Matrix::identity(2, P);
        let b = Matrix::from_rows(vec![vec![5], vec![7]], 1, P);
        assert_eq!(id.solve(&b).unwrap(), b);
        let z = Matrix::zeros(2, 2, P);
        assert!(z.solve(&b).is_none());
    }

    #[test]
    fn solve_back_substitution() {
        let a = Matrix::from_rows(vec![vec![1, 1], vec![0, 1]], 2, P);
        let b = Matrix::from_rows(vec![vec![3], vec![2]], 1, P);
        let x = a.solve(&b).unwrap();
        assert_eq!(x, Matrix::from_rows(vec![vec![1], vec![2]], 1, P));
    }

    #[test]
    fn nullspace_shapes() {
        assert_eq!(Matrix::identity(4, P).nullspace().cols, 0);
        assert_eq!(Matrix::zeros(2, 3, P).nullspace().cols, 3);
    }

    #[test]
    fn nullspace_line() {
        // [[1,2]]: kernel spanned by (-2, 1).
        let m = Matrix::from_rows(vec![vec![1, 2]], 2, P);
        let n = m.nullspace();
        assert_eq!(n.cols, 1);
        assert_eq!(n[(0, 0)], P - 2);
        assert_eq!(n[(1, 0)], 1);
    }

    #[test]
    fn empty_shapes_behave_as_zero_maps() {
        let a = Matrix::zeros(0, 3, P);
        let b = Matrix::zeros(3, 0, P);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.nullspace().cols, 3);
        let prod = b.mul(&a);
        assert_eq!((prod.rows, prod.cols), (3, 3));
        assert!(prod.is_zero());
    }

    #[test]
    fn row_span_incremental() {
        let mut s = RowSpan::new(3, P);
        assert!(s.insert(vec![1, 2, 3]));
        assert!(s.insert(vec![0, 1, 1]));
        assert!(!s.insert(vec![1, 3, 4]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 5, 7]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    proptest! {
        #[test]
        fn rank_plus_nullity(rows in 0usize..5, cols in 0usize..5, seed in 0u64..1000) {
            let mut state = seed;
            let mut next = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); state >> 33 };
            let m = Matrix::from_fn(rows, cols, P, |_, _| next() % P);
            prop_assert_eq!(m.rank() + m.nullspace().cols, cols);
        }

        #[test]
        fn solve_is_exact(rows in 1usize..5, cols in 1usize..5, k in 1usize..3, seed in 0u64..1000) {
            let mut state = seed.wrapping_add(17);
            let mut next = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); state >> 33 };
            let a = Matrix::from_fn(rows, cols, P, |_, _| next() % P);
            // Build b inside the column space so the system is consistent.
            let x0 = Matrix::from_fn(cols, k, P, |_, _| next() % P);
            let b = a.mul(&x0);
            let x = a.solve(&b).expect("consistent by construction");
            prop_assert_eq!(a.mul(&x), b);
        }

        #[test]
        fn nullspace_annihilates(rows in 0usize..5, cols in 0usize..5, seed in 0u64..1000) {
            let mut state = seed.wrapping_add(99);
            let mut next = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); state >> 33 };
            let m = Matrix::from_fn(rows, cols, P, |_, _| next() % P);
            let n = m.nullspace();
            prop_assert!(m.mul(&n).is_zero());
        }
    }
}
