//! Dense exact linear algebra over F_q.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Felt};

/// Row-major dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} over F_{}", self.rows, self.cols, self.field.q())?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|x| x.0).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// A particular solution of `M x = y` plus the dimension of the solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub solution: Vec<Felt>,
    pub freedom: usize,
}

impl MatrixFq {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, data: vec![Felt::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Felt::ONE);
        }
        m
    }

    /// Builds a matrix from canonical element indices; `cols` is needed for the 0-row case.
    pub fn from_indices(field: &FieldSpec, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedMatrix { row: r, expected: cols, found: row.len() });
            }
            for &x in row {
                data.push(field.elem(x)?);
            }
        }
        Ok(MatrixFq { field: field.clone(), rows: rows.len(), cols, data })
    }

    pub fn from_rows(field: &FieldSpec, cols: usize, rows: Vec<Vec<Felt>>) -> Result<Self> {
        let idx: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|x| x.0).collect()).collect();
        Self::from_indices(field, cols, &idx)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Felt {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Felt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Felt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Felt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.0).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        MatrixFq { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &MatrixFq) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::WidthMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixFq { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, found: v.len() });
        }
        let f = &self.field;
        let mut out = vec![Felt::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, x));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, x: &[Felt]) -> Result<Vec<Felt>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: x.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).fold(Felt::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (MatrixFq, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, &mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut scratch = self.data.clone();
        rank_in_place(&self.field, &mut scratch, self.rows, self.cols)
    }

    /// Basis of `{x : M x^T = 0}`, one row per free column in increasing order.
    pub fn kernel_basis(&self) -> MatrixFq {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Felt::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, f.neg(r.get(pr, fc)));
            }
        }
        out
    }

    /// Solves `M x^T = y^T`, setting free variables to zero. `Ok(None)` when inconsistent.
    pub fn solve_affine(&self, y: &[Felt]) -> Result<Option<AffineSolution>> {
        if y.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, found: y.len() });
        }
        let w = self.cols + 1;
        let mut aug = Vec::with_capacity(self.rows * w);
        for (r, &yr) in y.iter().enumerate() {
            aug.extend_from_slice(self.row(r));
            aug.push(yr);
        }
        let pivots = rref_in_place(&self.field, &mut aug, self.rows, w);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut solution = vec![Felt::ZERO; self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            solution[pc] = aug[pr * w + self.cols];
        }
        Ok(Some(AffineSolution { solution, freedom: self.cols - pivots.len() }))
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[Felt]) -> Result<bool> {
        Ok(self.transpose().solve_affine(v)?.is_some())
    }
}

/// Gauss-Jordan elimination on a row-major buffer; returns pivot columns.
pub(crate) fn rref_in_place(f: &FieldSpec, a: &mut [Felt], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if sel != pr {
            for j in 0..cols {
                a.swap(sel * cols + j, pr * cols + j);
            }
        }
        let inv = f.inv(a[pr * cols + c]).expect("pivot is nonzero");
        for j in c..cols {
            a[pr * cols + j] = f.mul(a[pr * cols + j], inv);
        }
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = a[r * cols + c];
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = f.sub(a[r * cols + j], f.mul(factor, a[pr * cols + j]));
                a[r * cols + j] = v;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

/// Forward elimination only; cheaper than a full RREF when only the rank is needed.
pub(crate) fn rank_in_place(f: &FieldSpec, a: &mut [Felt], rows: usize, cols: usize) -> usize {
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if sel != pr {
            for j in 0..cols {
                a.swap(sel * cols + j, pr * cols + j);
            }
        }
        let inv = f.inv(a[pr * cols + c]).expect("pivot is nonzero");
        for r in pr + 1..rows {
            let lead = a[r * cols + c];
            if lead.is_zero() {
                continue;
            }
            let factor = f.mul(lead, inv);
            for j in c..cols {
                let v = f.sub(a[r * cols + j], f.mul(factor, a[pr * cols + j]));
                a[r * cols + j] = v;
            }
        }
        pr += 1;
    }
    pr
}
