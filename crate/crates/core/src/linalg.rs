//! Dense linear algebra over `F_q`.
//!
//! Everything here is deterministic: pivots are chosen by first-hit
//! scanning, and the reduced row echelon form it produces is the canonical
//! one for the row space, so two subspaces are equal exactly when their
//! reduced forms are byte-identical.

use crate::field::Fq;

/// Row-major dense matrix of packed element reps.
#[derive(Clone, Debug)]
pub struct FqMatrix {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FqMatrix {
    pub fn zero(field: &Fq, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: &Fq, rows: Vec<Vec<u64>>) -> FqMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r);
        }
        FqMatrix { field: field.clone(), rows: nrows, cols: ncols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut cur = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (cur..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != cur {
                for c in 0..self.cols {
                    let tmp = self.get(cur, c);
                    self.set(cur, c, self.get(pr, c));
                    self.set(pr, c, tmp);
                }
            }
            let inv = f.inv(self.get(cur, col)).expect("nonzero pivot");
            for c in 0..self.cols {
                self.set(cur, c, f.mul(self.get(cur, c), inv));
            }
            for r in 0..self.rows {
                if r == cur {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(cur, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            cur += 1;
            if cur == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical basis of the right kernel `{x : Ax = 0}`, one vector per
    /// free column in increasing column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![0u64; self.cols];
            x[free] = 1;
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = f.neg(m.get(row, free));
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `Ax = b` with free variables set to zero, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = FqMatrix::zero(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.cols);
        }
        Some(x)
    }
}

/// Incrementally maintained reduced row space; rows can be streamed in and
/// the result is the canonical RREF of everything absorbed.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Fq,
    cols: usize,
    // rows in RREF, sorted by pivot column
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: &Fq, cols: usize) -> RowSpace {
        RowSpace { field: field.clone(), cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the space; a nonzero remainder joins the basis.
    /// Returns true when the rank grew.
    pub fn absorb(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.cols);
        let f = self.field.clone();
        let mut v = row.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // back-reduce existing rows to keep the canonical reduced form
        for r in self.rows.iter_mut() {
            let c = r[pivot];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    /// The canonical reduced rows, sorted by pivot column.
    pub fn reduced_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// Membership of a vector in the row space.
    pub fn contains(&self, row: &[u64]) -> bool {
        let f = &self.field;
        let mut v = row.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        v.iter().all(|&c| c == 0)
    }

    /// Canonical kernel basis of the matrix whose rows were absorbed.
    pub fn nullspace_basis(&self) -> Vec<Vec<u64>> {
        FqMatrix::from_rows(&self.field, if self.rows.is_empty() {
            vec![vec![0u64; self.cols]]
        } else {
            self.rows.clone()
        })
        .nullspace_basis()
    }
}

/// Canonical RREF of the span of the given vectors.
pub fn row_space_rref(field: &Fq, vectors: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut space = RowSpace::new(field, cols);
    for v in vectors {
        space.absorb(v);
    }
    space.rows
}
