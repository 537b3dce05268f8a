use bitvec::prelude::*;

/// Dense matrix over 𝔽₂ with bitset rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> F2Matrix {
        F2Matrix { rows, cols, data: vec![bitvec![0; cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v);
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        let v = self.data[r][c];
        self.data[r].set(c, !v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.not_any())
    }

    /// `self · other`.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.iter_ones() {
                out.data[r] ^= &other.data[k];
            }
        }
        out
    }

    /// Submatrix on the given columns, all rows kept.
    pub fn select_columns(&self, cols: &[usize]) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.rows, cols.len());
        for (r, row) in self.data.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r].set(j, row[c]);
            }
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c]) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[c] {
                    *row ^= &pivot_row;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Nonzero entries `(row, col)` in row-major order.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter_ones().map(move |c| (r, c))).collect()
    }
}
