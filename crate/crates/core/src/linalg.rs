//! Dense matrices and vectors over an idempotent semifield.
//!
//! Vectors are matrices with a single column; conjugate transposition turns
//! them into single-row matrices, so products like `q⁻ B* p` are ordinary
//! matrix products that end in a 1×1 matrix ([`Matrix::to_scalar`]).

use std::fmt;

use crate::error::{Error, Result};
use crate::semifield::{Scalar, SemifieldKind, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    kind: SemifieldKind,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major values.
    pub fn new(kind: SemifieldKind, rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if values.len() != rows * cols {
            return Err(Error::Dimension {
                op: "new",
                left_rows: rows,
                left_cols: cols,
                right_rows: values.len(),
                right_cols: 1,
            });
        }
        let data = values
            .into_iter()
            .map(|v| kind.validate(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            kind,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(kind: SemifieldKind, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension {
                    op: "from_rows",
                    left_rows: 0,
                    left_cols: cols,
                    right_rows: i,
                    right_cols: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        Matrix::new(kind, rows.len(), cols, values)
    }

    /// Column vector.
    pub fn column(kind: SemifieldKind, values: &[f64]) -> Result<Self> {
        Matrix::new(kind, values.len(), 1, values.to_vec())
    }

    /// Row vector.
    pub fn row(kind: SemifieldKind, values: &[f64]) -> Result<Self> {
        Matrix::new(kind, 1, values.len(), values.to_vec())
    }

    pub fn zeros(kind: SemifieldKind, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Matrix {
            kind,
            rows,
            cols,
            data: vec![kind.zero(); rows * cols],
        }
    }

    pub fn identity(kind: SemifieldKind, n: usize) -> Self {
        let mut m = Matrix::zeros(kind, n, n);
        for i in 0..n {
            m.data[i * n + i] = kind.one();
        }
        m
    }

    /// Column vector with every component equal to `value`.
    pub fn filled_column(kind: SemifieldKind, n: usize, value: f64) -> Result<Self> {
        Matrix::new(kind, n, 1, vec![value; n])
    }

    pub(crate) fn from_raw(kind: SemifieldKind, rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            kind,
            rows,
            cols,
            data,
        }
    }

    pub fn kind(&self) -> SemifieldKind {
        self.kind
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

    pub fn is_column(&self) -> bool {
        self.cols == 1
    }

    pub fn is_row(&self) -> bool {
        self.rows == 1
    }

    /// Number of components of a row or column vector.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Encoded values in row-major order.
    pub fn values(&self) -> &[f64] {
        &self.data
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        Scalar::from_raw(self.kind, self.value(i, j))
    }

    pub fn row_values(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row_values(i).to_vec())
            .collect()
    }

    /// The single entry of a 1×1 matrix.
    pub fn to_scalar(&self) -> Result<Scalar> {
        if self.shape() != (1, 1) {
            return Err(self.dim_err("to_scalar", 1, 1));
        }
        Ok(self.get(0, 0))
    }

    fn dim_err(&self, op: &'static str, rows: usize, cols: usize) -> Error {
        Error::Dimension {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rows,
            right_cols: cols,
        }
    }

    fn check_kind(&self, other: SemifieldKind) -> Result<()> {
        if self.kind == other {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                left: self.kind,
                right: other,
            })
        }
    }

    fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_vector(&self, op: &'static str) -> Result<()> {
        if self.is_column() || self.is_row() {
            Ok(())
        } else {
            Err(Error::NotVector {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Entrywise ⊕.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_kind(other.kind)?;
        if self.shape() != other.shape() {
            return Err(self.dim_err("add", other.rows, other.cols));
        }
        let k = self.kind;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| k.add(a, b))
            .collect();
        Ok(Matrix::from_raw(k, self.rows, self.cols, data))
    }

    /// Tropical product `{AC}_ij = ⊕_k a_ik ⊗ c_kj`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_kind(other.kind)?;
        if self.cols != other.rows {
            return Err(self.dim_err("mul", other.rows, other.cols));
        }
        let k = self.kind;
        let (m, n, l) = (self.rows, self.cols, other.cols);
        let mut data = vec![k.zero(); m * l];
        for i in 0..m {
            let out = &mut data[i * l..(i + 1) * l];
            for t in 0..n {
                let a = self.data[i * n + t];
                if k.is_zero(a) {
                    continue;
                }
                let crow = &other.data[t * l..(t + 1) * l];
                for (o, &c) in out.iter_mut().zip(crow) {
                    *o = k.add(*o, k.mul(a, c));
                }
            }
        }
        Ok(Matrix::from_raw(k, m, l, data))
    }

    /// `x ⊗ A` entrywise.
    pub fn scale(&self, x: Scalar) -> Result<Matrix> {
        self.check_kind(x.kind())?;
        let k = self.kind;
        let data = self.data.iter().map(|&a| k.mul(x.value(), a)).collect();
        Ok(Matrix::from_raw(k, self.rows, self.cols, data))
    }

    /// `A^k`, with `A⁰ = I`.
    pub fn power(&self, k: u32) -> Result<Matrix> {
        let n = self.require_square("power")?;
        let mut result = Matrix::identity(self.kind, n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `a₁₁ ⊕ ⋯ ⊕ a_nn`.
    pub fn trace(&self) -> Result<Scalar> {
        let n = self.require_square("trace")?;
        let k = self.kind;
        let t = (0..n).fold(k.zero(), |acc, i| k.add(acc, self.data[i * n + i]));
        Ok(Scalar::from_raw(k, t))
    }

    /// `Tr(A) = tr A ⊕ tr A² ⊕ ⋯ ⊕ tr Aⁿ`.
    ///
    /// `Tr(A) ≤ 𝟙` is the no-positive-cycle condition under which the
    /// asterate absorbs every power of `A`.
    pub fn cycle_trace(&self) -> Result<Scalar> {
        let n = self.require_square("cycle_trace")?;
        let mut acc = self.trace()?;
        let mut power = self.clone();
        for _ in 1..n {
            power = power.mul(self)?;
            acc = acc.add(power.trace()?)?;
        }
        Ok(acc)
    }

    /// Kleene star `A* = I ⊕ A ⊕ ⋯ ⊕ A^{n−1}`.
    ///
    /// Computed as `(I ⊕ A)^{n−1}` by binary exponentiation; in an
    /// idempotent semiring that power expands to exactly the sum above.
    pub fn star(&self) -> Result<Matrix> {
        let n = self.require_square("star")?;
        let base = Matrix::identity(self.kind, n).add(self)?;
        base.power((n - 1) as u32)
    }

    /// Multiplicative conjugate transpose `x⁻`: inverts the non-zero
    /// components, keeps zero components, and swaps row and column form.
    pub fn conjugate(&self) -> Result<Matrix> {
        self.require_vector("conjugate")?;
        let k = self.kind;
        if self.data.iter().all(|&v| k.is_zero(v)) {
            return Err(Error::ZeroVector { op: "conjugate" });
        }
        let data = self
            .data
            .iter()
            .map(|&v| {
                if k.is_zero(v) {
                    v
                } else {
                    k.inv(v).expect("non-zero")
                }
            })
            .collect();
        Ok(Matrix::from_raw(k, self.cols, self.rows, data))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.value(i, j));
            }
        }
        Matrix::from_raw(self.kind, self.cols, self.rows, data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| self.kind.is_zero(v))
    }

    /// No zero entries. For vectors this is the usual regularity.
    pub fn is_regular(&self) -> bool {
        !self.data.iter().any(|&v| self.kind.is_zero(v))
    }

    /// No zero rows.
    pub fn is_row_regular(&self) -> bool {
        (0..self.rows).all(|i| self.row_values(i).iter().any(|&v| !self.kind.is_zero(v)))
    }

    /// No zero columns.
    pub fn is_column_regular(&self) -> bool {
        (0..self.cols).all(|j| (0..self.rows).any(|i| !self.kind.is_zero(self.value(i, j))))
    }

    /// Entrywise order under `tol`.
    pub fn leq(&self, other: &Matrix, tol: Tolerance) -> Result<bool> {
        self.check_kind(other.kind)?;
        if self.shape() != other.shape() {
            return Err(self.dim_err("leq", other.rows, other.cols));
        }
        let k = self.kind;
        let eps = tol.epsilon(k);
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .all(|(&a, &b)| k.leq(a, b, eps)))
    }

    pub fn approx_eq(&self, other: &Matrix, tol: Tolerance) -> Result<bool> {
        Ok(self.leq(other, tol)? && other.leq(self, tol)?)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.row_values(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}
