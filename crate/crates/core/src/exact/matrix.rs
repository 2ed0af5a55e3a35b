//! Dense matrices over exact coefficient rings.
//!
//! Three determinant routes, used where each is exact and fast enough:
//! fraction-free Bareiss elimination over the integers for rational matrices,
//! Gaussian elimination for matrices over a field (rational functions), and
//! memoized minor expansion for matrices over a mere ring (Laurent
//! polynomials).

use super::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Coefficient ring: exact, commutative, with equality.
pub trait Ring:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Coefficient field: a ring with exact division.
pub trait Field: Ring + Div<Output = Self> {}
impl<T> Field for T where T: Ring + Div<Output = T> {}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rat>;

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixError<T = Rat> {
    NotSquare,
    NotAntisymmetric,
    OddDimension,
    /// The eliminated block is singular; carries a nonzero kernel vector.
    SingularBlock(Vec<T>),
}

impl<T: std::fmt::Debug> std::fmt::Display for MatrixError<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixError::NotSquare => write!(f, "matrix is not square"),
            MatrixError::NotAntisymmetric => write!(f, "matrix is not antisymmetric"),
            MatrixError::OddDimension => write!(f, "matrix dimension is odd"),
            MatrixError::SingularBlock(v) => {
                write!(f, "singular block, kernel vector {:?}", v)
            }
        }
    }
}

impl<T: std::fmt::Debug> std::error::Error for MatrixError<T> {}

impl<T: Ring> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_mat(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add_mat(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + rhs[(i, j)].clone()
        })
    }

    pub fn sub_mat(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - rhs[(i, j)].clone()
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn neg_mat(&self) -> Self {
        self.map(|x| -x.clone())
    }

    /// Determinant over a plain ring, by minor expansion memoized on column
    /// subsets. Exponential in the dimension; meant for the symbolic
    /// determinants of desk-scale Laplacians.
    pub fn det_ring(&self) -> T {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        assert!(n <= 20, "minor expansion capped at 20x20");
        let mut memo: Vec<Option<T>> = vec![None; 1usize << n];
        memo[0] = Some(T::one());
        self.det_masked((1usize << n) - 1, &mut memo)
    }

    fn det_masked(&self, mask: usize, memo: &mut Vec<Option<T>>) -> T {
        if let Some(v) = &memo[mask] {
            return v.clone();
        }
        let k = mask.count_ones() as usize; // rows 0..k against columns in mask
        let mut acc = T::zero();
        // Expansion along row k-1: leading sign (-1)^(k-1).
        let mut sign_pos = (k - 1) % 2 == 0;
        let mut m = mask;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            let entry = &self[(k - 1, c)];
            if !entry.is_zero() {
                let sub = self.det_masked(mask & !(1usize << c), memo);
                let term = entry.clone() * sub;
                acc = if sign_pos { acc + term } else { acc - term };
            }
            sign_pos = !sign_pos;
        }
        memo[mask] = Some(acc.clone());
        acc
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by Gaussian elimination with exact division.
    pub fn det_gauss(&self) -> T {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for k in 0..n {
            let pivot = match (k..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(p) => p,
                None => return T::zero(),
            };
            if pivot != k {
                a.swap_rows(pivot, k);
                det = -det;
            }
            let p = a[(k, k)].clone();
            det = det * p.clone();
            for r in k + 1..n {
                if a[(r, k)].is_zero() {
                    continue;
                }
                let f = a[(r, k)].clone() / p.clone();
                for c in k..n {
                    let v = a[(r, c)].clone() - f.clone() * a[(k, c)].clone();
                    a[(r, c)] = v;
                }
            }
        }
        det
    }

    /// Solve `self * X = rhs` for X (multiple right-hand sides).
    /// Returns `None` when the matrix is singular.
    pub fn solve(&self, rhs: &Matrix<T>) -> Option<Matrix<T>> {
        assert!(self.is_square());
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let w = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !a[(r, k)].is_zero())?;
            if pivot != k {
                a.swap_rows(pivot, k);
                b.swap_rows(pivot, k);
            }
            let p = a[(k, k)].clone();
            for c in k..n {
                a[(k, c)] = a[(k, c)].clone() / p.clone();
            }
            for c in 0..w {
                b[(k, c)] = b[(k, c)].clone() / p.clone();
            }
            for r in 0..n {
                if r == k || a[(r, k)].is_zero() {
                    continue;
                }
                let f = a[(r, k)].clone();
                for c in k..n {
                    let v = a[(r, c)].clone() - f.clone() * a[(k, c)].clone();
                    a[(r, c)] = v;
                }
                for c in 0..w {
                    let v = b[(r, c)].clone() - f.clone() * b[(k, c)].clone();
                    b[(r, c)] = v;
                }
            }
        }
        Some(b)
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        self.solve(&Matrix::identity(self.rows))
    }

    /// A nonzero kernel vector of a singular square matrix, if any.
    pub fn kernel_vector(&self) -> Option<Vec<T>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut col_of_pivot_row: Vec<Option<usize>> = vec![None; n];
        let mut row = 0usize;
        for col in 0..n {
            let pivot = (row..n).find(|&r| !a[(r, col)].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            a.swap_rows(pivot, row);
            let p = a[(row, col)].clone();
            for c in 0..n {
                a[(row, c)] = a[(row, c)].clone() / p.clone();
            }
            for r in 0..n {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for c in 0..n {
                        let v = a[(r, c)].clone() - f.clone() * a[(row, c)].clone();
                        a[(r, c)] = v;
                    }
                }
            }
            col_of_pivot_row[row] = Some(col);
            row += 1;
            if row == n {
                return None; // full rank
            }
        }
        // Free column: any column that is not a pivot column.
        let pivot_cols: Vec<usize> = col_of_pivot_row.iter().flatten().copied().collect();
        let free = (0..n).find(|c| !pivot_cols.contains(c))?;
        let mut v = vec![T::zero(); n];
        v[free] = T::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[(r, free)].clone();
        }
        Some(v)
    }

    /// Schur complement onto the index set `keep`: with the matrix written in
    /// block form `[[A, B], [D, C]]` (A indexed by `keep`), returns
    /// `A − B·C⁻¹·D`. For symmetric input this is the usual `A − B·C⁻¹·Bᵗ`.
    pub fn schur_complement(&self, keep: &[usize]) -> Result<Matrix<T>, MatrixError<T>> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        let rest: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let a = self.submatrix(keep, keep);
        if rest.is_empty() {
            return Ok(a);
        }
        let b = self.submatrix(keep, &rest);
        let d = self.submatrix(&rest, keep);
        let c = self.submatrix(&rest, &rest);
        let x = match c.solve(&d) {
            Some(x) => x,
            None => {
                let kv = c
                    .kernel_vector()
                    .expect("singular block must have a kernel vector");
                return Err(MatrixError::SingularBlock(kv));
            }
        };
        Ok(a.sub_mat(&b.mul_mat(&x)))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl Matrix<Rat> {
    /// Exact determinant. Clears denominators row by row and runs
    /// fraction-free Bareiss elimination over the integers, which keeps
    /// intermediate entries to determinant-sized integers.
    pub fn det(&self) -> Result<Rat, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut scale = BigInt::one(); // product of row scalings
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(self[(i, j)].denom());
            }
            scale *= &lcm;
            a.push(
                (0..n)
                    .map(|j| {
                        let x = &self[(i, j)];
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect(),
            );
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let pivot = match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(p) => p,
                    None => return Ok(Rat::zero()),
                };
                a.swap(k, pivot);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev; // exact by Bareiss
                }
            }
            prev = a[k][k].clone();
        }
        let det_int = a[n - 1][n - 1].clone() * BigInt::from(sign);
        Ok(Rat::new(det_int, scale))
    }

    /// Pfaffian of an antisymmetric matrix of even dimension, by congruence
    /// reduction to 2×2 blocks. Satisfies `pf(M)² = det(M)`.
    pub fn pfaffian(&self) -> Result<Rat, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare);
        }
        let n = self.rows;
        for i in 0..n {
            for j in 0..=i {
                if self[(i, j)] != -self[(j, i)].clone() {
                    return Err(MatrixError::NotAntisymmetric);
                }
            }
        }
        if n % 2 != 0 {
            return Err(MatrixError::OddDimension);
        }
        let mut a = self.clone();
        let mut pf = Rat::one();
        let mut k = 0;
        while k < n {
            // Pivot: bring a nonzero entry to position (k, k+1).
            let pivot = match (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                Some(p) => p,
                None => return Ok(Rat::zero()),
            };
            if pivot != k + 1 {
                a.swap_rows(pivot, k + 1);
                a.swap_cols(pivot, k + 1);
                pf = -pf;
            }
            let p = a[(k, k + 1)].clone();
            pf *= &p;
            // Zero out row/column k and k+1 beyond the 2x2 block by congruence.
            for i in k + 2..n {
                // Clear a[(k, i)] using row/col k+1.
                let f = &a[(k, i)] / &p;
                if !f.is_zero() {
                    for c in 0..n {
                        let v = &a[(i, c)] - &f * &a[(k + 1, c)];
                        a[(i, c)] = v;
                    }
                    for r in 0..n {
                        let v = &a[(r, i)] - &f * &a[(r, k + 1)];
                        a[(r, i)] = v;
                    }
                }
                // Clear a[(k+1, i)] using row/col k (note a[(k+1,k)] = -p).
                let g = &a[(k + 1, i)] / &p;
                if !g.is_zero() {
                    for c in 0..n {
                        let v = &a[(i, c)] + &g * &a[(k, c)];
                        a[(i, c)] = v;
                    }
                    for r in 0..n {
                        let v = &a[(r, i)] + &g * &a[(r, k)];
                        a[(r, i)] = v;
                    }
                }
            }
            k += 2;
        }
        Ok(pf)
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    pub fn row_sums(&self) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += &self[(i, j)];
                }
                acc
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| super::rat_to_f64(&self[(i, j)])).collect())
            .collect()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
