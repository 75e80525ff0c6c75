//! Dense GF(2) linear algebra with bit-packed rows.
//!
//! Matrices here are tiny (faces of desk-scale complexes), so plain Gaussian
//! elimination is all that is needed. Vectors are `Vec<u64>` blocks, least
//! significant bit first.

/// A bit vector of fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Vec {
    len: usize,
    blocks: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.blocks[i / 64] |= 1 << (i % 64);
        } else {
            self.blocks[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (i, &block) in self.blocks.iter().enumerate() {
            if block != 0 {
                return Some(i * 64 + block.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of all set bits, ascending.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

/// A dense GF(2) matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows).map(|_| Gf2Vec::zeros(cols)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &Gf2Vec {
        &self.data[r]
    }

    /// Column `c` extracted as a vector of length `rows`.
    pub fn column(&self, c: usize) -> Gf2Vec {
        let mut v = Gf2Vec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gf2Vec::is_zero)
    }

    /// Matrix product over GF(2); `self.cols` must equal `other.rows`.
    pub fn multiply(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in GF(2) product");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = Gf2Vec::zeros(other.cols);
            for k in 0..self.cols {
                if self.get(r, k) {
                    acc.xor_assign(&other.data[k]);
                }
            }
            out.data[r] = acc;
        }
        out
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut span = Gf2Span::new(self.cols);
        let mut rank = 0;
        for row in &self.data {
            if span.insert(row.clone()) {
                rank += 1;
            }
        }
        rank
    }

    /// A basis of the right kernel `{x : Mx = 0}`, each vector of length
    /// `cols`, deterministic (free columns in ascending order).
    pub fn kernel_basis(&self) -> Vec<Gf2Vec> {
        // Row-reduce a copy, tracking pivot columns.
        let mut reduced: Vec<Gf2Vec> = self.data.clone();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let mut pivot_row = None;
            for r in next_row..reduced.len() {
                if reduced[r].get(col) {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            reduced.swap(next_row, pr);
            let pivot = reduced[next_row].clone();
            for (r, row) in reduced.iter_mut().enumerate() {
                if r != next_row && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_col_of_row.push(col);
            next_row += 1;
        }
        let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
        let free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();

        let mut basis = Vec::with_capacity(free_cols.len());
        for &free in &free_cols {
            let mut v = Gf2Vec::zeros(self.cols);
            v.set(free, true);
            for (row_idx, &pc) in pivot_col_of_row.iter().enumerate() {
                if reduced[row_idx].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// An incrementally built row space in echelon form.
///
/// `insert` reduces the candidate against the current span and either absorbs
/// it (returning `true` when it was independent) or reports it dependent.
#[derive(Debug, Clone, Default)]
pub struct Gf2Span {
    len: usize,
    rows: Vec<Gf2Vec>,
}

impl Gf2Span {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span without inserting; true if independent.
    pub fn is_independent(&self, v: &Gf2Vec) -> bool {
        !self.reduce(v.clone()).is_zero()
    }

    fn reduce(&self, mut v: Gf2Vec) -> Gf2Vec {
        debug_assert_eq!(v.len(), self.len);
        for row in &self.rows {
            let lead = row.first_one().expect("span rows are nonzero");
            if v.get(lead) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Inserts `v` if independent of the current span. Returns whether the
    /// rank grew.
    pub fn insert(&mut self, v: Gf2Vec) -> bool {
        let reduced = self.reduce(v);
        if reduced.is_zero() {
            return false;
        }
        // Keep rows sorted by leading index so reduction stays triangular.
        let lead = reduced.first_one().unwrap();
        let pos = self
            .rows
            .iter()
            .position(|r| r.first_one().unwrap() > lead)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, reduced);
        true
    }
}
