//! Dense matrices over `F_q` and their rank.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{self, Fq};

/// Dense row-major matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Fq>,
}

impl FFMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FFMatrix {
            rows,
            cols,
            entries: vec![Fq::ZERO; rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = FFMatrix::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Fq::ONE;
        }
        m
    }

    /// Builds a matrix from row vectors, which must all have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Fq>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend_from_slice(r);
        }
        FFMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let rows: Vec<Vec<Fq>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Fq::from_i64(x)).collect())
            .collect();
        FFMatrix::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Fq] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fq] {
        &mut self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[Fq]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.entries.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.entries.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut t = FFMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    /// Rank by in-place Gaussian elimination. The pivot of each column is the
    /// first row at or below the current rank with a nonzero entry.
    pub fn rank(&self) -> usize {
        self.clone().into_rank()
    }

    /// Like [`FFMatrix::rank`], consuming the matrix to avoid a copy.
    pub fn into_rank(mut self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !self.entries[r * cols + col].is_zero())
            else {
                continue;
            };
            self.swap_rows(pivot, rank);
            let inv = self.entries[rank * cols + col]
                .inverse()
                .expect("nonzero pivot");
            let (head, tail) = self.entries.split_at_mut((rank + 1) * cols);
            let pivot_row = &head[rank * cols + col..];
            for row in tail.chunks_exact_mut(cols) {
                let lead = row[col];
                if lead.is_zero() {
                    continue;
                }
                field::sub_scaled(&mut row[col..], pivot_row, lead * inv);
            }
            rank += 1;
        }
        rank
    }
}

impl core::ops::Index<(usize, usize)> for FFMatrix {
    type Output = Fq;
    fn index(&self, (r, c): (usize, usize)) -> &Fq {
        &self.entries[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for FFMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Fq {
        &mut self.entries[r * self.cols + c]
    }
}

/// A sparse row: `(column, value)` pairs.
pub type SparseRow = Vec<(usize, Fq)>;

/// Rank of the matrix whose rows are `rows` (each of width `cols`).
///
/// Tall inputs (more than twice as many rows as columns) are first compressed
/// to `cols` rows by a uniformly random left multiplier `S`, so the dense
/// elimination runs on a square matrix. `rank(S·M) <= rank(M)` always, and
/// equality fails with probability at most `rank(M)/q` over the choice of `S`.
pub fn rank_of_sparse_rows(cols: usize, rows: &[SparseRow], seed: u64) -> usize {
    if rows.len() <= 2 * cols {
        let mut m = FFMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for &(c, v) in row {
                m[(r, c)] += v;
            }
        }
        return m.into_rank();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out_rows = cols;
    let mut sketch = FFMatrix::zeros(out_rows, cols);
    for row in rows {
        for s in 0..out_rows {
            let coef = Fq::random(&mut rng);
            let target = sketch.row_mut(s);
            for &(c, v) in row {
                target[c] += coef * v;
            }
        }
    }
    sketch.into_rank()
}

/// `count` pseudorandom points of `F_q^dim`, a pure function of the seed.
pub fn generic_points(count: usize, dim: usize, seed: u64) -> Vec<Vec<Fq>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..dim).map(|_| Fq::random(&mut rng)).collect())
        .collect()
}

/// Whether `row` lies in the row space of `m`.
pub fn in_row_space(m: &FFMatrix, row: &[Fq]) -> bool {
    let base = m.rank();
    let mut extended = m.clone();
    extended.push_row(row);
    extended.into_rank() == base
}

/// Adds `factor` times row `src` to row `dst`.
pub fn add_row_multiple(m: &mut FFMatrix, dst: usize, src: usize, factor: Fq) {
    let src_row: Vec<Fq> = m.row(src).to_vec();
    field::add_scaled(m.row_mut(dst), &src_row, factor);
}
