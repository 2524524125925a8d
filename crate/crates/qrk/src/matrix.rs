//! Dense matrices over an exact field, with reduced row-echelon form as the
//! single elimination primitive everything else is built on.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A `rows x cols` matrix with entries in one field, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_entries(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    /// Builds a matrix from signed integers, mapped into the field.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &x in *row {
                entries.push(field.from_i64(x));
            }
        }
        Matrix { field, rows: r, cols: c, entries }
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, &other[(k, j)]);
                    out[(i, j)] = f.add(&out[(i, j)], &prod);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        Ok(Matrix::from_fn(f, self.rows, self.cols, |i, j| {
            f.add(&self[(i, j)], &other[(i, j)])
        }))
    }

    /// Applies the matrix to a coordinate vector (length = cols).
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = f.add(&out[i], &f.mul(a, &v[j]));
            }
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.cols {
            return Err(Error::DimMismatch(format!(
                "cannot stack widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Puts `self` to the left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.rows != other.rows {
            return Err(Error::DimMismatch(format!(
                "cannot concatenate heights {} and {}",
                self.rows, other.rows
            )));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    /// Block-diagonal sum of two matrices.
    pub fn block_diag(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form. Returns `(rref, pivot columns, rank)`;
    /// the RREF of a matrix is unique, so this is a canonical form.
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = f.inv(&self[(row, col)]).expect("pivot is nonzero");
            for j in col..self.cols {
                self[(row, j)] = f.mul(&self[(row, j)], &inv);
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in col..self.cols {
                    let sub = f.mul(&factor, &self[(row, j)]);
                    self[(r, j)] = f.sub(&self[(r, j)], &sub);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse via Gauss-Jordan on the augmented matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n))?;
        let (red, pivots, rank) = aug.rref();
        if rank != n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(self.field, n, n, |i, j| red[(i, n + j)].clone()))
    }

    /// Text form `[a,b;c,d]` used by all file formats; `[]` for any matrix
    /// with a zero dimension.
    pub fn to_text(&self) -> String {
        if self.rows == 0 || self.cols == 0 {
            return "[]".to_string();
        }
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("[{}]", rows.join(";"))
    }

    /// Parses the `[a,b;c,d]` syntax against a required shape.
    pub fn parse_text(field: FieldSpec, rows: usize, cols: usize, text: &str) -> Result<Matrix> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Invalid(format!("matrix must be bracketed: `{text}`")))?;
        if inner.trim().is_empty() {
            if rows == 0 || cols == 0 {
                return Ok(Matrix::zero(field, rows, cols));
            }
            return Err(Error::DimMismatch(format!(
                "empty matrix literal where a {rows}x{cols} matrix is required"
            )));
        }
        let row_texts: Vec<&str> = inner.split(';').collect();
        if row_texts.len() != rows {
            return Err(Error::DimMismatch(format!(
                "expected {rows} rows, got {}",
                row_texts.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for rt in row_texts {
            let cells: Vec<&str> = rt.split(',').collect();
            if cells.len() != cols {
                return Err(Error::DimMismatch(format!(
                    "expected {cols} columns, got {} in row `{rt}`",
                    cells.len()
                )));
            }
            for cell in cells {
                entries.push(field.parse_scalar(cell)?);
            }
        }
        Matrix::from_entries(field, rows, cols, entries)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({}x{} over {}) {}", self.rows, self.cols, self.field, self.to_text())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rref_zero_matrix() {
        let m = Matrix::zero(Q, 3, 4);
        let (r, pivots, rank) = m.rref();
        assert_eq!(r, m);
        assert!(pivots.is_empty());
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(Q, 4);
        let (r, pivots, rank) = m.rref();
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1, 2, 3]);
        assert_eq!(rank, 4);
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(Q, &[&[2, 4], &[1, 2]]);
        let (r, pivots, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
        assert_eq!(r, Matrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_over_gf5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let m = Matrix::from_i64(f5, &[&[2, 1], &[3, 4]]);
        let (_, _, rank) = m.rref();
        // det = 8 - 3 = 5 = 0 mod 5
        assert_eq!(rank, 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Q, 2));
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn text_roundtrip() {
        let m = Matrix::from_i64(Q, &[&[1, -2], &[0, 7]]);
        let t = m.to_text();
        assert_eq!(t, "[1,-2;0,7]");
        assert_eq!(Matrix::parse_text(Q, 2, 2, &t).unwrap(), m);
        let e = Matrix::zero(Q, 0, 3);
        assert_eq!(e.to_text(), "[]");
        assert_eq!(Matrix::parse_text(Q, 0, 3, "[]").unwrap(), e);
        assert!(Matrix::parse_text(Q, 2, 2, "[]").is_err());
        assert!(Matrix::parse_text(Q, 1, 2, "[1]").is_err());
    }
}
