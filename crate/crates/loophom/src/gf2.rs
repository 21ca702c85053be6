//! Dense linear algebra over GF(2) with bit-packed rows.
//!
//! Rows live in little-endian `u64` blocks, so elimination XORs a machine
//! word at a time. A [`Gf2Matrix`] is immutable once built (construct one
//! through [`Gf2MatrixBuilder`] or [`Gf2Matrix::from_fn`]); reductions work
//! on private copies and all public operations are pure.

use thiserror::Error;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    /// `d_out · d_in` had a nonzero entry, so the pair is not a complex.
    #[error("composite differential is nonzero at row {row}, column {col}")]
    CompositionNotZero { row: usize, col: usize },
}

/// Fixed-length bit vector; the coordinate form of kernel vectors and
/// linear-system solutions.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zero(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }
}

impl std::fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Incremental construction of a [`Gf2Matrix`]: set entries, then `build`.
pub struct Gf2MatrixBuilder {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2MatrixBuilder {
    pub fn new(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Gf2MatrixBuilder {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "entry ({row},{col}) out of range");
        let mask = 1u64 << (col % WORD_BITS);
        let w = &mut self.data[row * self.stride + col / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols, "entry ({row},{col}) out of range");
        self.data[row * self.stride + col / WORD_BITS] ^= 1u64 << (col % WORD_BITS);
    }

    pub fn build(self) -> Gf2Matrix {
        Gf2Matrix {
            rows: self.rows,
            cols: self.cols,
            stride: self.stride,
            data: self.data,
        }
    }
}

/// Immutable dense matrix over GF(2), row-major and bit-packed.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Gf2MatrixBuilder::new(rows, cols).build()
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut b = Gf2MatrixBuilder::new(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    b.set(r, c, true);
                }
            }
        }
        b.build()
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| r == c)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "entry ({row},{col}) out of range");
        self.data[row * self.stride + col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.data[row * self.stride..(row + 1) * self.stride]
    }

    /// Row-reduce a copy in-place to reduced row echelon form.
    /// Returns the pivot columns, one per pivot row, in order.
    fn rref(data: &mut [u64], rows: usize, cols: usize, stride: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let word = c / WORD_BITS;
            let mask = 1u64 << (c % WORD_BITS);
            let Some(p) = (r..rows).find(|&i| data[i * stride + word] & mask != 0) else {
                continue;
            };
            if p != r {
                for w in 0..stride {
                    data.swap(r * stride + w, p * stride + w);
                }
            }
            for i in 0..rows {
                if i != r && data[i * stride + word] & mask != 0 {
                    for w in word..stride {
                        data[i * stride + w] ^= data[r * stride + w];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut scratch = self.data.clone();
        Self::rref(&mut scratch, self.rows, self.cols, self.stride).len()
    }

    /// A basis of `{ v : M v = 0 }`, one [`Gf2Vec`] of length `cols` per
    /// free column of the reduced form.
    pub fn kernel_basis(&self) -> Vec<Gf2Vec> {
        let mut scratch = self.data.clone();
        let pivots = Self::rref(&mut scratch, self.rows, self.cols, self.stride);
        let is_pivot = {
            let mut flags = vec![false; self.cols];
            for &c in &pivots {
                flags[c] = true;
            }
            flags
        };
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = Gf2Vec::zero(self.cols);
            v.set(free, true);
            let fw = free / WORD_BITS;
            let fmask = 1u64 << (free % WORD_BITS);
            for (row, &pc) in pivots.iter().enumerate() {
                if scratch[row * self.stride + fw] & fmask != 0 {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix product `self · inner`. Panics unless `self.cols == inner.rows`.
    pub fn compose(&self, inner: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(
            self.cols, inner.rows,
            "composition shape mismatch: {}x{} · {}x{}",
            self.rows, self.cols, inner.rows, inner.cols
        );
        let stride = words_for(inner.cols);
        let mut data = vec![0u64; self.rows * stride];
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = inner.row_words(k);
                    let dst = &mut data[r * stride..(r + 1) * stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Gf2Matrix {
            rows: self.rows,
            cols: inner.cols,
            stride,
            data,
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// One solution of `M x = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &Gf2Vec) -> Option<Gf2Vec> {
        assert_eq!(rhs.len(), self.rows, "rhs length must match row count");
        // Augment with rhs as an extra column, then reduce.
        let aug_cols = self.cols + 1;
        let stride = words_for(aug_cols);
        let mut data = vec![0u64; self.rows * stride];
        for r in 0..self.rows {
            let src = self.row_words(r);
            data[r * stride..r * stride + self.stride].copy_from_slice(src);
            if rhs.get(r) {
                data[r * stride + self.cols / WORD_BITS] |= 1u64 << (self.cols % WORD_BITS);
            }
        }
        let pivots = Self::rref(&mut data, self.rows, aug_cols, stride);
        if pivots.last() == Some(&self.cols) {
            return None; // a pivot in the augmented column: inconsistent
        }
        let mut x = Gf2Vec::zero(self.cols);
        let aw = self.cols / WORD_BITS;
        let amask = 1u64 << (self.cols % WORD_BITS);
        for (row, &pc) in pivots.iter().enumerate() {
            if data[row * stride + aw] & amask != 0 {
                x.set(pc, true);
            }
        }
        Some(x)
    }
}

impl std::fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", if self.get(r, c) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Dimension of `ker(d_out) / im(d_in)` at the middle term of
/// `U --d_in--> V --d_out--> W`.
///
/// Columns index the source basis, rows the target basis, so the middle
/// space has dimension `d_out.cols() == d_in.rows()`. Verifies
/// `d_out · d_in = 0` first and reports the offending entry otherwise.
pub fn homology_dim(d_out: &Gf2Matrix, d_in: &Gf2Matrix) -> Result<usize, Gf2Error> {
    assert_eq!(
        d_out.cols(),
        d_in.rows(),
        "middle-space mismatch: d_out has {} columns, d_in has {} rows",
        d_out.cols(),
        d_in.rows()
    );
    let composite = d_out.compose(d_in);
    if !composite.is_zero() {
        for r in 0..composite.rows() {
            for c in 0..composite.cols() {
                if composite.get(r, c) {
                    return Err(Gf2Error::CompositionNotZero { row: r, col: c });
                }
            }
        }
    }
    let cycles = d_out.cols() - d_out.rank();
    let boundaries = d_in.rank();
    debug_assert!(boundaries <= cycles);
    Ok(cycles - boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_bits(rows: &[&[u8]]) -> Gf2Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Gf2Matrix::from_fn(r, c, |i, j| rows[i][j] == 1)
    }

    #[test]
    fn rank_of_zero_matrix_is_zero() {
        assert_eq!(Gf2Matrix::zero(5, 7).rank(), 0);
    }

    #[test]
    fn rank_of_identity_is_full() {
        assert_eq!(Gf2Matrix::identity(9).rank(), 9);
    }

    #[test]
    fn rank_counts_independent_rows() {
        // row2 = row0 + row1, so rank 2.
        let m = from_bits(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[1, 1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_basis().len(), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = from_bits(&[&[1, 1, 0, 1, 0], &[0, 1, 1, 0, 1], &[1, 0, 1, 1, 1]]);
        for v in m.kernel_basis() {
            for r in 0..m.rows() {
                let mut acc = false;
                for c in v.iter_ones() {
                    acc ^= m.get(r, c);
                }
                assert!(!acc, "kernel vector {v:?} not annihilated at row {r}");
            }
        }
    }

    #[test]
    fn homology_of_two_step_exact_pair_is_zero() {
        // F2 --(1,1)--> F2^2 --(1 1)--> F2 is exact at the middle.
        let d_in = from_bits(&[&[1], &[1]]);
        let d_out = from_bits(&[&[1, 1]]);
        assert_eq!(homology_dim(&d_out, &d_in), Ok(0));
    }

    #[test]
    fn homology_detects_nonzero_composite() {
        let d_in = from_bits(&[&[1], &[0]]);
        let d_out = from_bits(&[&[1, 1]]);
        assert_eq!(
            homology_dim(&d_out, &d_in),
            Err(Gf2Error::CompositionNotZero { row: 0, col: 0 })
        );
    }

    #[test]
    fn homology_counts_middle_classes() {
        // Zero maps on both sides: homology is the whole middle space.
        let d_in = Gf2Matrix::zero(4, 2);
        let d_out = Gf2Matrix::zero(3, 4);
        assert_eq!(homology_dim(&d_out, &d_in), Ok(4));
    }

    #[test]
    fn solve_finds_witness_or_certifies_absence() {
        let m = from_bits(&[&[1, 1, 0], &[0, 1, 1]]);
        let mut rhs = Gf2Vec::zero(2);
        rhs.set(0, true);
        let x = m.solve(&rhs).expect("consistent system");
        for r in 0..m.rows() {
            let mut acc = false;
            for c in x.iter_ones() {
                acc ^= m.get(r, c);
            }
            assert_eq!(acc, rhs.get(r));
        }
        // (1,1)^T is outside the column space of a rank-1 matrix with equal rows.
        let singular = from_bits(&[&[1, 1], &[1, 1]]);
        let mut bad = Gf2Vec::zero(2);
        bad.set(0, true);
        assert_eq!(singular.solve(&bad), None);
    }

    #[test]
    fn empty_shapes_are_consistent() {
        let m = Gf2Matrix::zero(0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 4);
        let n = Gf2Matrix::zero(4, 0);
        assert_eq!(n.rank(), 0);
        assert_eq!(n.kernel_basis().len(), 0);
    }

    proptest! {
        #[test]
        fn rank_plus_kernel_equals_columns(
            rows in 0usize..9,
            cols in 0usize..9,
            seed in proptest::collection::vec(any::<u64>(), 0..81),
        ) {
            let m = Gf2Matrix::from_fn(rows, cols, |r, c| {
                seed.get(r * cols.max(1) + c).copied().unwrap_or(0) & 1 == 1
            });
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        }

        #[test]
        fn rank_is_transpose_invariant(
            rows in 0usize..9,
            cols in 0usize..9,
            seed in proptest::collection::vec(any::<u64>(), 0..81),
        ) {
            let m = Gf2Matrix::from_fn(rows, cols, |r, c| {
                seed.get(r * cols.max(1) + c).copied().unwrap_or(0) & 1 == 1
            });
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn constructed_exact_pairs_have_zero_homology(
            mid in 1usize..8,
            src in 1usize..8,
            seed in proptest::collection::vec(any::<u64>(), 0..64),
        ) {
            // d_in: src -> mid arbitrary; d_out rows span the left annihilator
            // of im(d_in), so ker(d_out) = im(d_in) exactly.
            let d_in = Gf2Matrix::from_fn(mid, src, |r, c| {
                seed.get(r * src + c).copied().unwrap_or(0) & 1 == 1
            });
            let ann = d_in.transpose().kernel_basis();
            let d_out = Gf2Matrix::from_fn(ann.len(), mid, |r, c| ann[r].get(c));
            prop_assert_eq!(homology_dim(&d_out, &d_in), Ok(0));
        }
    }
}
