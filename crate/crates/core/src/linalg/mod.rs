//! Exact linear algebra for boundary matrices.

pub mod field;
pub mod integer;

pub use field::{Field, PrimeField, Rationals};
pub use integer::{lattice_invariants, Invariants};

/// Sparse column: `(row, value)` pairs sorted by row, no zero values.
pub type SparseColumn = Vec<(usize, i64)>;

/// Integer matrix stored column by column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseColumn>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, cols: Vec::new() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseColumn>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|&(r, v)| r < rows && v != 0)));
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(dense: &[Vec<i64>], rows: usize) -> Self {
        let ncols = dense.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| (0..rows).filter(|&i| dense[i][j] != 0).map(|i| (i, dense[i][j])).collect())
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[SparseColumn] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &SparseColumn {
        &self.cols[j]
    }

    pub fn push_column(&mut self, col: SparseColumn) {
        self.cols.push(col);
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols.len()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                out[i][j] = v;
            }
        }
        out
    }

    /// `self · other`, panicking on overflow.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols.len(), other.rows, "inner dimensions differ");
        let cols = other
            .cols
            .iter()
            .map(|c| {
                let mut acc = std::collections::BTreeMap::new();
                for &(k, v) in c {
                    for &(i, w) in &self.cols[k] {
                        let e: &mut i64 = acc.entry(i).or_default();
                        *e = e.checked_add(v.checked_mul(w).expect("overflow")).expect("overflow");
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    /// Column with a single row of ones (the augmentation `C_0 → Z`).
    pub fn augmentation(ncols: usize) -> SparseMatrix {
        SparseMatrix {
            rows: 1,
            cols: vec![vec![(0, 1)]; ncols],
        }
    }
}
