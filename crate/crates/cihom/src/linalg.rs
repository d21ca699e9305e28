//! Dense matrices over a prime field: row echelon form, rank, kernels.
//!
//! Everything here is exact. Matrices are stored row-major; rows and
//! columns are indexed from zero. Desk-scale dimensions only, so no
//! attempt is made at blocking or sparsity.

use crate::error::{Error, Result};
use crate::fp::Fp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct RrefResult {
    pub matrix: DenseMatrix,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        DenseMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Fp, rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for v in row {
                data.push(field.reduce_u64(v));
            }
        }
        Ok(DenseMatrix { field, rows: r, cols: c, data })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce_u64(v);
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = self.field.add(out.get(i, j), self.field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form: pivots are 1, pivot columns are cleared
    /// above and below, zero rows sink to the bottom.
    pub fn rref(&self) -> RrefResult {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.get(row, c);
                    let b = m.get(pr, c);
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot nonzero");
            for c in col..m.cols {
                m.set(row, c, f.mul(m.get(row, c), inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        RrefResult { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns of the returned matrix form a basis of `{x : self * x = 0}`,
    /// one per free column, in ascending free-column order.
    pub fn kernel_basis(&self) -> DenseMatrix {
        let f = self.field;
        let RrefResult { matrix: r, pivots } = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = Some(row);
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|c| pivot_set[*c].is_none()).collect();
        let mut out = DenseMatrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(row, fc)));
            }
        }
        out
    }
}

/// Incremental row-space tracker: insert vectors one at a time, query
/// membership in the span of what has been inserted so far.
#[derive(Debug, Clone)]
pub struct SpanTracker {
    field: Fp,
    dim: usize,
    /// Reduced rows, each paired with its pivot index.
    rows: Vec<(usize, Vec<u64>)>,
}

impl SpanTracker {
    pub fn new(field: Fp, dim: usize) -> Self {
        SpanTracker { field, dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        let f = self.field;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            for j in *piv..self.dim {
                v[j] = f.sub(v[j], f.mul(c, row[j]));
            }
        }
    }

    /// Returns true if the vector was already in the span; otherwise
    /// inserts it and returns false.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return true;
        };
        let inv = f.inv(v[piv]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push((piv, v));
        self.rows.sort_by_key(|(p, _)| *p);
        false
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }
}
