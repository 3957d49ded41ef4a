use std::fmt;
use std::ops::Index;

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

/// Result of [`Mat::cokernel_projection`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelProjection {
    /// `(rows - rank) x rows`, annihilates the column space.
    pub projection: Mat,
    /// Row indices whose unit vectors lift the cokernel basis.
    pub selected: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row-major entries, checking the length and that
    /// every entry lives in `field`.
    pub fn from_entries(field: Field, rows: usize, cols: usize, entries: Vec<FieldElem>) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Mat { field, rows, cols, entries })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElem>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Mat::from_entries(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(field: Field, rows: usize, cols: usize, values: &[i64]) -> Mat {
        assert_eq!(values.len(), rows * cols);
        Mat {
            field,
            rows,
            cols,
            entries: values.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.field(), field, "field mismatch in Mat::from_fn");
                entries.push(e);
            }
        }
        Mat { field, rows, cols, entries }
    }

    /// Single column from a vector.
    pub fn column(field: Field, v: Vec<FieldElem>) -> Result<Mat> {
        let n = v.len();
        Mat::from_entries(field, n, 1, v)
    }

    pub fn field(&self) -> Field {
        self.field
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
    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        assert_eq!(v.field(), self.field, "field mismatch in Mat::set");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElem::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&FieldElem, &FieldElem) -> FieldElem) -> Result<Mat> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &FieldElem) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row counts differ".into()));
        }
        Ok(Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack column counts differ".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Reduced row echelon form and the strictly increasing pivot columns.
    ///
    /// Over Q the pivot row is the candidate of smallest bit height; the
    /// reduced form itself is unique, so this only affects intermediate growth.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut a = self.clone();
        let pivots = a.rref_in_place();
        (a, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == rows {
                break;
            }
            let candidates = (prow..rows).filter(|&r| !self.get(r, c).is_zero());
            let found = match self.field {
                Field::Rational => candidates.min_by_key(|&r| self.get(r, c).height()),
                Field::Prime(_) => candidates.into_iter().next(),
            };
            let Some(r) = found else { continue };
            self.swap_rows(r, prow);
            let inv = self.get(prow, c).inv().expect("nonzero pivot");
            for j in c..cols {
                let idx = prow * cols + j;
                self.entries[idx] = &self.entries[idx] * &inv;
            }
            for r2 in 0..rows {
                if r2 == prow || self.get(r2, c).is_zero() {
                    continue;
                }
                let factor = self.get(r2, c).clone();
                for j in c..cols {
                    let pv = &self.entries[prow * cols + j];
                    if pv.is_zero() {
                        continue;
                    }
                    let t = &factor * pv;
                    let idx = r2 * cols + j;
                    self.entries[idx] = &self.entries[idx] - &t;
                }
            }
            pivots.push(c);
            prow += 1;
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

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the right null space, one per free column of
    /// the reduced form (in increasing order).
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.field, self.cols, free.len());
        for (kc, &f) in free.iter().enumerate() {
            k.set(f, kc, self.field.one());
            for (prow, &pc) in pivots.iter().enumerate() {
                k.set(pc, kc, -r.get(prow, f));
            }
        }
        k
    }

    /// Kernel vectors as plain coordinate vectors.
    pub fn kernel_vectors(&self) -> Vec<Vec<FieldElem>> {
        let k = self.kernel_basis();
        (0..k.cols()).map(|j| k.col(j)).collect()
    }

    /// Projection onto `F^rows / im(self)`.
    ///
    /// The complement of the column space is spanned by the unit vectors
    /// `e_i` taken greedily in increasing `i` (the lexicographically first
    /// completing subset); `projection` expresses coordinates in that basis.
    pub fn cokernel_projection(&self) -> CokernelProjection {
        let aug = self
            .hstack(&Mat::identity(self.field, self.rows))
            .expect("same field and row count");
        let (_, pivots) = aug.rref();
        let image_cols: Vec<usize> = pivots.iter().copied().filter(|&p| p < self.cols).collect();
        let selected: Vec<usize> = pivots.iter().filter(|&&p| p >= self.cols).map(|p| p - self.cols).collect();
        let rank = image_cols.len();
        let basis = self.select_cols(&image_cols);
        let units = Mat::from_fn(self.field, self.rows, selected.len(), |i, j| {
            if i == selected[j] {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let full = basis.hstack(&units).expect("same rows");
        let inv = full.inverse().expect("image plus complement spans");
        let idx: Vec<usize> = (rank..self.rows).collect();
        CokernelProjection {
            projection: inv.select_rows(&idx),
            selected,
        }
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(r.select_cols(&idx))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn det(&self) -> Result<FieldElem> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if r != c {
                a.swap_rows(r, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero");
            for r2 in c + 1..n {
                if a.get(r2, c).is_zero() {
                    continue;
                }
                let f = a.get(r2, c) * &inv;
                for j in c..n {
                    let t = &f * a.get(c, j);
                    let idx = r2 * n + j;
                    a.entries[idx] = &a.entries[idx] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Entries as strings, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = FieldElem;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElem {
        self.get(i, j)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
