//! Dense exact linear algebra: row reduction, kernels and subspaces kept in
//! reduced row-echelon form.

use crate::error::{OiError, Result};
use crate::field::{FieldSpec, Scalar};

/// Row-major dense matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(OiError::AmbientMismatch(row.len(), cols));
            }
            entries.extend(row);
        }
        Ok(Matrix {
            field,
            rows: n_rows,
            cols,
            entries,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(OiError::AmbientMismatch(col.len(), rows));
            }
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        Ok(m)
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}

/// Reduced row-echelon form and rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut rows = m.to_rows();
    let pivots = rref_in_place(&mut rows, m.cols);
    let rank = pivots.len();
    let mut out = Matrix::from_rows(m.field, m.cols, rows).expect("shape preserved");
    out.rows = m.rows;
    (out, rank)
}

/// Gauss-Jordan elimination. Returns pivot columns; rows past the rank are zero.
fn rref_in_place(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row");
        for other in before.iter_mut().chain(after.iter_mut()) {
            eliminate(other, pivot_row, c);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `target -= target[col] * pivot_row`, where `pivot_row[col] = 1`.
fn eliminate(target: &mut [Scalar], pivot_row: &[Scalar], col: usize) {
    if target[col].is_zero() {
        return;
    }
    let factor = target[col].clone();
    for (t, p) in target.iter_mut().zip(pivot_row).skip(col) {
        if !p.is_zero() {
            *t = &*t - &(&factor * p);
        }
    }
}

/// Basis of `{x : Mx = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let mut rows = m.to_rows();
    let pivots = rref_in_place(&mut rows, m.cols);
    let field = m.field;
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        basis.push(v);
    }
    Subspace::from_vectors(field, m.cols, basis)
}

/// A subspace of `field^ambient` stored as its RREF basis, so two subspaces
/// are equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let rows = Matrix::identity(field, ambient).to_rows();
        Subspace {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Span of the coordinate vectors `e_i` for the given indices.
    pub fn coordinate(field: FieldSpec, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vecs = indices.into_iter().map(|i| {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            v
        });
        Subspace::from_vectors(field, ambient, vecs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length vs ambient dimension");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            eliminate(&mut v, row, p);
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut().skip(p) {
            *x = &*x * &inv;
        }
        for row in &mut self.rows {
            eliminate(row, &v, p);
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (mut big, small) = if self.dim() >= other.dim() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for v in &small.rows {
            big.insert(v.clone());
        }
        Ok(big)
    }

    pub fn intersect_dim(&self, other: &Subspace) -> Result<usize> {
        let joined = self.join(other)?;
        Ok(self.dim() + other.dim() - joined.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.rows.iter().all(|v| other.contains(v)))
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(OiError::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(OiError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }
}

/// Convenience: `span_join`, `in_span`, `intersect_dim` as free functions.
pub fn span_join(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.join(b)
}

pub fn in_span(v: &[Scalar], a: &Subspace) -> Result<bool> {
    if v.len() != a.ambient_dim() {
        return Err(OiError::AmbientMismatch(v.len(), a.ambient_dim()));
    }
    Ok(a.contains(v))
}

pub fn intersect_dim(a: &Subspace, b: &Subspace) -> Result<usize> {
    a.intersect_dim(b)
}
