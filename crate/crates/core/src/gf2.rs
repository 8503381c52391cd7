//! Dense bit-packed linear algebra over F2.
//!
//! Matrices are stored row-major, one run of `u64` words per row. Bits past
//! the logical end of a row are kept zero so that word-level popcounts and
//! equality comparisons are exact.

use std::fmt;

use thiserror::Error;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
pub(crate) fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub(crate) fn popcount_words(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: {op} expects {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("shape mismatch: {op} of {left:?} and {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("inconsistent block dimensions at grid position ({row}, {col}): {reason}")]
    BlockShape {
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("columns are linearly dependent (rank {rank} < {cols} columns)")]
    DependentColumns { rank: usize, cols: usize },
}

/// A vector over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from a slice of 0/1 entries; any nonzero entry is a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_bools(bits.iter().map(|&b| b != 0))
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        popcount_words(&self.words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        xor_words(&mut self.words, &other.words);
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        BitVector::from_bools(self.iter().chain(other.iter()))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A dense matrix over F2, bit (r, c) at row `r`, column `c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    ///
    /// # Panics
    ///
    /// Panics if the rows do not all have length `cols`.
    pub fn from_rows<R: AsRef<[u8]>>(cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(
                row.len(),
                cols,
                "row {r} has length {} != {cols}",
                row.len()
            );
            for (c, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Stacks row vectors; `cols` is required so that an empty list still has a shape.
    pub fn from_row_vectors(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row vector length mismatch");
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        let idx = r * self.stride + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        if src == dst || self.stride == 0 {
            return;
        }
        let (s, d) = (src * self.stride, dst * self.stride);
        if s < d {
            let (a, b) = self.data.split_at_mut(d);
            xor_words(&mut b[..self.stride], &a[s..s + self.stride]);
        } else {
            let (a, b) = self.data.split_at_mut(s);
            xor_words(&mut a[d..d + self.stride], &b[..self.stride]);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools((0..self.rows).map(|r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// A·v over F2.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                op: "mul_vec",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_bools((0..self.rows).map(|r| {
            self.row_words(r)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                % 2
                == 1
        })))
    }

    /// Matrix product A·B.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let ones: Vec<usize> = self.row(r).ones().collect();
            let dst = out.row_words_mut(r);
            for k in ones {
                xor_words(dst, other.row_words(k));
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                out.set(c, r, true);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.shape() != other.shape() {
            return Err(Gf2Error::ShapeMismatch {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = self.clone();
        xor_words(&mut out.data, &other.data);
        Ok(out)
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|r| popcount_words(self.row_words(r)))
            .collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                w[c] += 1;
            }
        }
        w
    }

    /// Largest row or column weight; 0 for an empty matrix.
    pub fn max_weight(&self) -> usize {
        self.row_weights()
            .into_iter()
            .chain(self.col_weights())
            .max()
            .unwrap_or(0)
    }

    /// Kronecker product, left-factor-major: row (i, j) is `i * B.rows + j`,
    /// column (p, q) is `p * B.cols + q`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let (br, bc) = other.shape();
        let mut out = BitMatrix::zeros(self.rows * br, self.cols * bc);
        let b_ones: Vec<(usize, usize)> = (0..br)
            .flat_map(|j| other.row(j).ones().map(move |q| (j, q)).collect::<Vec<_>>())
            .collect();
        for i in 0..self.rows {
            for p in self.row(i).ones() {
                for &(j, q) in &b_ones {
                    out.set(i * br + j, p * bc + q, true);
                }
            }
        }
        out
    }

    /// Assembles a block matrix. `None` entries are zero blocks; every grid
    /// row and every grid column needs at least one present block to fix its
    /// size.
    pub fn block(grid: &[Vec<Option<&BitMatrix>>]) -> Result<BitMatrix, Gf2Error> {
        let grid_cols = grid.first().map_or(0, Vec::len);
        for (i, row) in grid.iter().enumerate() {
            if row.len() != grid_cols {
                return Err(Gf2Error::BlockShape {
                    row: i,
                    col: row.len(),
                    reason: format!("grid row has {} blocks, expected {grid_cols}", row.len()),
                });
            }
        }
        let mut heights = vec![None; grid.len()];
        let mut widths = vec![None; grid_cols];
        for (i, row) in grid.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let Some(m) = cell else { continue };
                match heights[i] {
                    None => heights[i] = Some(m.rows),
                    Some(h) if h != m.rows => {
                        return Err(Gf2Error::BlockShape {
                            row: i,
                            col: j,
                            reason: format!("height {} != {h}", m.rows),
                        })
                    }
                    _ => {}
                }
                match widths[j] {
                    None => widths[j] = Some(m.cols),
                    Some(w) if w != m.cols => {
                        return Err(Gf2Error::BlockShape {
                            row: i,
                            col: j,
                            reason: format!("width {} != {w}", m.cols),
                        })
                    }
                    _ => {}
                }
            }
        }
        let heights: Vec<usize> = heights
            .into_iter()
            .enumerate()
            .map(|(i, h)| {
                h.ok_or_else(|| Gf2Error::BlockShape {
                    row: i,
                    col: 0,
                    reason: "grid row has no blocks to fix its height".into(),
                })
            })
            .collect::<Result<_, _>>()?;
        let widths: Vec<usize> = widths
            .into_iter()
            .enumerate()
            .map(|(j, w)| {
                w.ok_or_else(|| Gf2Error::BlockShape {
                    row: 0,
                    col: j,
                    reason: "grid column has no blocks to fix its width".into(),
                })
            })
            .collect::<Result<_, _>>()?;
        let mut out = BitMatrix::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (i, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (j, cell) in row.iter().enumerate() {
                if let Some(m) = cell {
                    out.paste(m, r0, c0);
                }
                c0 += widths[j];
            }
            r0 += heights[i];
        }
        Ok(out)
    }

    /// XORs `m` into the block starting at (`r0`, `c0`).
    pub(crate) fn paste(&mut self, m: &BitMatrix, r0: usize, c0: usize) {
        for r in 0..m.rows {
            for c in m.row(r).ones() {
                let idx = (r0 + r) * self.stride + (c0 + c) / WORD_BITS;
                self.data[idx] ^= 1u64 << ((c0 + c) % WORD_BITS);
            }
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    /// Reduced row echelon form, applying the same row operations to `rhs`.
    /// Returns the pivot column of each nonzero row.
    fn reduce(&mut self, mut rhs: Option<&mut BitVector>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(p, next);
            if let Some(b) = rhs.as_deref_mut() {
                let (x, y) = (b.get(p), b.get(next));
                b.set(p, y);
                b.set(next, x);
            }
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row_into(next, r);
                    if let Some(b) = rhs.as_deref_mut() {
                        if b.get(next) {
                            b.flip(r);
                        }
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce(None).len()
    }

    /// A basis of ker(A), one vector per free column.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut m = self.clone();
        let pivots = m.reduce(None);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(self.cols);
                v.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if m.get(i, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some x with A·x = b, or `None` when b is outside the column space.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if b.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch {
                op: "solve",
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut m = self.clone();
        let mut rhs = b.clone();
        let pivots = m.reduce(Some(&mut rhs));
        if (pivots.len()..self.rows).any(|r| rhs.get(r)) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if rhs.get(i) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Indices of a maximal set of linearly independent rows, chosen greedily
    /// in ascending order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = IncrementalBasis::new(self.cols);
        (0..self.rows)
            .filter(|&r| basis.insert(self.row_words(r)))
            .collect()
    }

    /// Splits the rows of a matrix with independent columns into a set `V'`
    /// of `cols` rows forming an invertible square submatrix and the
    /// complement `V''`. Rows are taken greedily in ascending order.
    pub fn nonsingular_row_partition(&self) -> Result<(Vec<usize>, Vec<usize>), Gf2Error> {
        let kept = self.independent_rows();
        if kept.len() != self.cols {
            return Err(Gf2Error::DependentColumns {
                rank: kept.len(),
                cols: self.cols,
            });
        }
        let mut in_kept = vec![false; self.rows];
        for &r in &kept {
            in_kept[r] = true;
        }
        let rest = (0..self.rows).filter(|&r| !in_kept[r]).collect();
        Ok((kept, rest))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Echelon basis that grows one vector at a time.
pub(crate) struct IncrementalBasis {
    // (pivot bit, reduced vector)
    vectors: Vec<(usize, Vec<u64>)>,
    stride: usize,
}

impl IncrementalBasis {
    pub(crate) fn new(bits: usize) -> Self {
        Self {
            vectors: Vec::new(),
            stride: words_for(bits),
        }
    }

    /// Reduces `words` against the basis; true (and the vector is kept) when
    /// it was independent.
    pub(crate) fn insert(&mut self, words: &[u64]) -> bool {
        let mut v = words.to_vec();
        debug_assert_eq!(v.len(), self.stride);
        for (pivot, b) in &self.vectors {
            if (v[pivot / WORD_BITS] >> (pivot % WORD_BITS)) & 1 == 1 {
                xor_words(&mut v, b);
            }
        }
        let Some(wi) = v.iter().position(|&w| w != 0) else {
            return false;
        };
        let pivot = wi * WORD_BITS + v[wi].trailing_zeros() as usize;
        for (_, b) in &mut self.vectors {
            if (b[pivot / WORD_BITS] >> (pivot % WORD_BITS)) & 1 == 1 {
                xor_words(b, &v);
            }
        }
        self.vectors.push((pivot, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> BitMatrix {
        BitMatrix::from_rows(3, &[[1, 1, 0], [0, 1, 1]])
    }

    // Naive triple-loop product, independent of the word-level path.
    fn naive_mul_vec(a: &BitMatrix, v: &BitVector) -> BitVector {
        BitVector::from_bools(
            (0..a.rows())
                .map(|r| (0..a.cols()).filter(|&c| a.get(r, c) && v.get(c)).count() % 2 == 1),
        )
    }

    #[test]
    fn mul_vec_examples() {
        let v = BitVector::from_bits(&[1, 0, 1]);
        assert_eq!(BitMatrix::identity(3).mul_vec(&v).unwrap(), v);
        let ones = BitVector::from_bits(&[1, 1, 1]);
        assert_eq!(h3().mul_vec(&ones).unwrap(), BitVector::from_bits(&[0, 0]));
        let e0 = BitVector::from_bits(&[1, 0, 0]);
        assert_eq!(h3().mul_vec(&e0).unwrap(), BitVector::from_bits(&[1, 0]));
        assert_eq!(naive_mul_vec(&h3(), &e0), BitVector::from_bits(&[1, 0]));
    }

    #[test]
    fn mul_vec_dimension_mismatch() {
        let err = h3().mul_vec(&BitVector::zeros(2)).unwrap_err();
        assert!(matches!(err, Gf2Error::DimensionMismatch { .. }));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(h3().rank(), 2);
        // cross-check: the 4 combinations of the two rows are pairwise distinct
        let r0 = h3().row(0);
        let r1 = h3().row(1);
        let mut sum = r0.clone();
        sum.xor_assign(&r1);
        let combos = [BitVector::zeros(3), r0, r1, sum];
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(combos[i], combos[j]);
            }
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(BitMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(h3().kernel_basis(), vec![BitVector::from_bits(&[1, 1, 1])]);
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().len(), 3);
        // enumeration oracle for H_3
        let zero_syndrome: Vec<u32> = (0u32..8)
            .filter(|x| {
                let v = BitVector::from_bools((0..3).map(|i| (x >> i) & 1 == 1));
                h3().mul_vec(&v).unwrap().is_zero()
            })
            .collect();
        assert_eq!(zero_syndrome, vec![0, 7]);
    }

    #[test]
    fn solve_examples() {
        let b = BitVector::from_bits(&[0, 1, 0]);
        assert_eq!(BitMatrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
        let b = BitVector::from_bits(&[1, 0]);
        let x = h3().solve(&b).unwrap().unwrap();
        assert_eq!(h3().mul_vec(&x).unwrap(), b);
        let single = BitMatrix::from_rows(2, &[[1, 1]]);
        let b = BitVector::from_bits(&[1]);
        let x = single.solve(&b).unwrap().unwrap();
        assert_eq!(single.mul_vec(&x).unwrap(), b);
        assert_eq!(x.weight(), 1);
        // no solution outside the column space
        let m = BitMatrix::from_rows(2, &[[1, 1], [1, 1]]);
        assert_eq!(m.solve(&BitVector::from_bits(&[1, 0])).unwrap(), None);
        assert!(h3().solve(&BitVector::zeros(3)).is_err());
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            BitMatrix::identity(2).kron(&BitMatrix::identity(3)),
            BitMatrix::identity(6)
        );
        let a = BitMatrix::from_rows(2, &[[1, 1]]);
        let expected = BitMatrix::from_rows(4, &[[1, 0, 1, 0], [0, 1, 0, 1]]);
        let k = a.kron(&BitMatrix::identity(2));
        assert_eq!(k, expected);
        // entrywise definition
        let b = BitMatrix::identity(2);
        for i in 0..1 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(k.get(i * 2 + j, p * 2 + q), a.get(i, p) && b.get(j, q));
                    }
                }
            }
        }
        let e = h3().kron(&BitMatrix::zeros(0, 0));
        assert_eq!(e.shape(), (0, 0));
    }

    #[test]
    fn block_examples() {
        let i2 = BitMatrix::identity(2);
        let i3 = BitMatrix::identity(3);
        let m = BitMatrix::block(&[vec![Some(&i2), None], vec![None, Some(&i3)]]).unwrap();
        assert_eq!(m, BitMatrix::identity(5));

        let h3t = h3().transpose();
        let right = BitMatrix::identity(3).kron(&BitMatrix::from_rows(2, &[[1, 1]]));
        let m = BitMatrix::block(&[vec![Some(&h3t), Some(&right)]]).unwrap();
        assert_eq!(m.shape(), (3, h3t.cols() + right.cols()));

        let err = BitMatrix::block(&[vec![Some(&i2), Some(&i3)]]).unwrap_err();
        assert!(matches!(err, Gf2Error::BlockShape { .. }));
    }

    #[test]
    fn weights_and_transpose() {
        assert_eq!(BitVector::from_bits(&[1, 0, 1, 1]).weight(), 3);
        assert_eq!(h3().col_weights(), vec![1, 2, 1]);
        assert_eq!(h3().row_weights(), vec![2, 2]);
        assert_eq!(h3().transpose().transpose(), h3());
        assert!(h3().add(&BitMatrix::zeros(3, 3)).is_err());
        assert!(h3().add(&h3()).unwrap().is_zero());
    }

    #[test]
    fn partition_examples() {
        let (kept, rest) = BitMatrix::identity(3).nonsingular_row_partition().unwrap();
        assert_eq!((kept, rest), (vec![0, 1, 2], vec![]));
        let (kept, rest) = h3().transpose().nonsingular_row_partition().unwrap();
        assert_eq!((kept, rest), (vec![0, 1], vec![2]));
        let a = BitMatrix::from_rows(2, &[[1, 0], [1, 0], [0, 1]]);
        let (kept, rest) = a.nonsingular_row_partition().unwrap();
        assert_eq!((kept.clone(), rest), (vec![0, 2], vec![1]));
        assert_eq!(a.select_rows(&kept).rank(), 2);
        let dependent = BitMatrix::from_rows(2, &[[1, 1], [1, 1]]);
        assert!(matches!(
            dependent.nonsingular_row_partition(),
            Err(Gf2Error::DependentColumns { rank: 1, cols: 2 })
        ));
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let n = 130;
        let m = BitMatrix::from_fn(n, n, |r, c| r == c || c == (r + 70) % n);
        assert_eq!(m.transpose().transpose(), m);
        let v = BitVector::from_bools((0..n).map(|i| i % 3 == 0));
        assert_eq!(m.mul_vec(&v).unwrap(), naive_mul_vec(&m, &v));
        let k = m.kernel_basis();
        assert_eq!(k.len() + m.rank(), n);
        for b in &k {
            assert!(m.mul_vec(b).unwrap().is_zero());
        }
    }
}
