//! Dense matrices over an exact [`Field`] and Gaussian elimination.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of [`Matrix::rank_kernel_image`].
#[derive(Clone, Debug, PartialEq)]
pub struct RankKernelImage<F> {
    pub rank: usize,
    /// Columns form a basis of the null space.
    pub kernel: Matrix<F>,
    /// Columns form a basis of the column space, in reduced column echelon form.
    pub image: Matrix<F>,
}

/// Splitting `e = inclusion * projection` with `projection * inclusion = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentSplitting<F> {
    pub image_dim: usize,
    pub inclusion: Matrix<F>,
    pub projection: Matrix<F>,
}

/// General solution `particular + kernel * t` of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F> {
    pub particular: Matrix<F>,
    pub kernel: Matrix<F>,
}

/// Cokernel of `D : n -> m`: `quotient * D = 0`, `quotient * section = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cokernel<F> {
    pub quotient: Matrix<F>,
    pub section: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    /// Checks the length and that all entries share one field.
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(first) = data.iter().find(|x| x.rational_degree() > 1) {
            if data.iter().any(|x| !first.compatible(x)) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    /// The 1x1 matrix `(x)`.
    pub fn scalar(x: F) -> Self {
        Matrix { rows: 1, cols: 1, data: vec![x] }
    }

    /// Column vector.
    pub fn column(v: Vec<F>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows) && self.is_square()
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| c.mul_ref(x))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::add_ref)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::sub_ref)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack needs equal row counts".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack needs equal column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack_all(blocks: &[Self], rows: usize) -> Result<Self> {
        blocks.iter().try_fold(Matrix::zeros(rows, 0), |acc, b| acc.hstack(b))
    }

    pub fn vstack_all(blocks: &[Self], cols: usize) -> Result<Self> {
        blocks.iter().try_fold(Matrix::zeros(0, cols), |acc, b| acc.vstack(b))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| match (i < self.rows, j < self.cols) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - self.rows, j - self.cols).clone(),
            _ => F::zero(),
        })
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        blocks.iter().fold(Matrix::zeros(0, 0), |acc, b| acc.direct_sum(b))
    }

    /// Kronecker product; row index of the result is `i * other.rows + k`.
    pub fn kronecker(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (i, k) = (r / other.rows, r % other.rows);
            let (j, l) = (c / other.cols, c % other.cols);
            self.get(i, j).mul_ref(other.get(k, l))
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Rectangular block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    fn check_field(&self) -> Result<()> {
        if let Some(first) = self.data.iter().find(|x| x.rational_degree() > 1) {
            if self.data.iter().any(|x| !first.compatible(x)) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let x = m.get(r, j).mul_ref(&inv);
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let x = m.get(i, j).sub_ref(&f.mul_ref(rj));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space basis: one column per free variable, with a 1 in that variable
    /// and zeros in the other free variables.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Column space basis in reduced column echelon form.
    pub fn image(&self) -> Self {
        let (r, pivots) = self.transpose().rref();
        r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose()
    }

    pub fn rank_kernel_image(&self) -> Result<RankKernelImage<F>> {
        self.check_field()?;
        let (r, pivots) = self.rref();
        let kernel = kernel_from_rref(&r, &pivots);
        let image = self.image();
        Ok(RankKernelImage { rank: pivots.len(), kernel, image })
    }

    /// General solution of `self * x = b`, or `None` if `b` is not in the image.
    pub fn solve(&self, b: &Self) -> Result<Option<Solution<F>>> {
        if b.rows != self.rows {
            return Err(Error::Shape(format!("right-hand side has {} rows, matrix has {}", b.rows, self.rows)));
        }
        self.check_field()?;
        let aug = self.hstack(b)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut particular = Matrix::zeros(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                particular.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        let coeff = r.block(0, 0, r.rows, self.cols);
        let kernel = kernel_from_rref(&coeff, &pivots);
        Ok(Some(Solution { particular, kernel }))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let (r, pivots) = self.hstack(&Matrix::identity(n))?.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        Ok(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &(self * self) == self
    }

    pub fn split_idempotent(&self) -> Result<IdempotentSplitting<F>> {
        self.check_field()?;
        if !self.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        let inclusion = self.image();
        let pivots = column_pivots(&inclusion);
        let projection = self.select_rows(&pivots);
        Ok(IdempotentSplitting { image_dim: inclusion.cols, inclusion, projection })
    }

    pub fn cokernel(&self) -> Cokernel<F> {
        let m = self.rows;
        let img = self.image();
        let pivots = column_pivots(&img);
        let rest: Vec<usize> = (0..m).filter(|i| !pivots.contains(i)).collect();
        let select = Matrix::<F>::identity(m).select_rows(&pivots);
        let proj = Matrix::<F>::identity(m) - &img * &select;
        let quotient = proj.select_rows(&rest);
        let section = Matrix::<F>::identity(m).select_cols(&rest);
        Cokernel { quotient, section }
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }
}

fn kernel_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize]) -> Matrix<F> {
    let free: Vec<usize> = (0..r.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = Matrix::zeros(r.cols, free.len());
    for (col, &f) in free.iter().enumerate() {
        k.set(f, col, F::one());
        for (row, &p) in pivots.iter().enumerate() {
            k.set(p, col, -r.get(row, f).clone());
        }
    }
    k
}

/// Pivot row of each column of a matrix in reduced column echelon form.
fn column_pivots<F: Field>(m: &Matrix<F>) -> Vec<usize> {
    (0..m.cols).map(|j| (0..m.rows).find(|&i| !m.get(i, j).is_zero()).expect("zero column in echelon basis")).collect()
}

impl Matrix<Rational> {
    /// Reads a rational matrix into any field.
    pub fn lift<F: Field>(&self) -> Matrix<F> {
        self.map(|q| F::from_rational(q.clone()))
    }
}

impl<'a, F: Field> Mul<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_mul(rhs).unwrap()
    }
}

impl<F: Field> Mul for Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: Matrix<F>) -> Matrix<F> {
        self.try_mul(&rhs).unwrap()
    }
}

impl<'a, F: Field> Add<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_add(rhs).unwrap()
    }
}

impl<F: Field> Add for Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: Matrix<F>) -> Matrix<F> {
        self.try_add(&rhs).unwrap()
    }
}

impl<'a, F: Field> Sub<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_sub(rhs).unwrap()
    }
}

impl<F: Field> Sub for Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: Matrix<F>) -> Matrix<F> {
        self.try_sub(&rhs).unwrap()
    }
}

impl<F: Field> Sub<&Matrix<F>> for Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_sub(rhs).unwrap()
    }
}

impl<F: Field> Neg for Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}
