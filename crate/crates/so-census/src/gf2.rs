//! Bit-packed linear algebra over GF(2).
//!
//! [`GF2Matrix`] stores one machine word run per row; all public behavior is
//! defined bitwise, the word size is an internal detail. Matrices with zero
//! rows or columns are ordinary values: the `k x 0` kernel basis of an
//! invertible matrix and the `0 x 0` empty block both occur naturally in the
//! fixed-point computations and must flow through every operation unharmed.

use crate::{Error, Result};

const WORD_BITS: usize = 64;

/// Dense matrix over GF(2), row-major, each row packed into `u64` words.
///
/// Invariant: bits of a row beyond `cols` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD_BITS);
        GF2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from explicit 0/1 rows; handy for small literals.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &bit) in row.iter().enumerate() {
                m.set(i, j, bit != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.data[r * self.words_per_row + c / WORD_BITS];
        (w >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words_per_row + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// Row as a single word; only valid while `cols <= 64`.
    #[inline]
    pub fn row_bits(&self, r: usize) -> u64 {
        debug_assert!(self.cols <= WORD_BITS);
        if self.words_per_row == 0 {
            0
        } else {
            self.data[r * self.words_per_row]
        }
    }

    fn xor_row_into(&mut self, target: usize, source: usize) {
        debug_assert_ne!(target, source);
        let wpr = self.words_per_row;
        let (t0, s0) = (target * wpr, source * wpr);
        for w in 0..wpr {
            let s = self.data[s0 + w];
            self.data[t0 + w] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words_per_row {
            self.data.swap(a * self.words_per_row + w, b * self.words_per_row + w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (t, s) in out.data.iter_mut().zip(&other.data) {
            *t ^= s;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    let src = j * other.words_per_row;
                    let dst = i * out.words_per_row;
                    for w in 0..other.words_per_row {
                        out.data[dst + w] ^= other.data[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Block diagonal `[self; other]`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(i, j, true);
                }
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                if other.get(i, j) {
                    out.set(self.rows + i, self.cols + j, true);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Rank over GF(2) by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col));
            if let Some(p) = pivot {
                m.swap_rows(rank, p);
                for r in 0..m.rows {
                    if r != rank && m.get(r, col) {
                        m.xor_row_into(r, rank);
                    }
                }
                rank += 1;
                if rank == m.rows {
                    break;
                }
            }
        }
        rank
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col));
            if let Some(p) = pivot {
                m.swap_rows(rank, p);
                for r in 0..m.rows {
                    if r != rank && m.get(r, col) {
                        m.xor_row_into(r, rank);
                    }
                }
                pivots.push(col);
                rank += 1;
                if rank == m.rows {
                    break;
                }
            }
        }
        (m, pivots)
    }

    /// Basis of the right null space `{x : self * x = 0}`, as matrix columns.
    ///
    /// The basis is the pivot-ordered one read off the reduced echelon form,
    /// so it is deterministic; the kernel of an invertible matrix is the
    /// `cols x 0` empty matrix.
    pub fn kernel_basis(&self) -> Self {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            out.set(f, idx, true);
            for (row, &p) in pivots.iter().enumerate() {
                if rref.get(row, f) {
                    out.set(p, idx, true);
                }
            }
        }
        out
    }

    /// Column span equality, tested via ranks of stacked blocks.
    pub fn same_column_span(&self, other: &Self) -> bool {
        if self.rows != other.rows {
            return false;
        }
        let ra = self.transpose().rank();
        let rb = other.transpose().rank();
        let mut both = Self::zeros(self.cols + other.cols, self.rows);
        let ta = self.transpose();
        let tb = other.transpose();
        for i in 0..ta.rows() {
            for j in 0..ta.cols() {
                if ta.get(i, j) {
                    both.set(i, j, true);
                }
            }
        }
        for i in 0..tb.rows() {
            for j in 0..tb.cols() {
                if tb.get(i, j) {
                    both.set(ta.rows() + i, j, true);
                }
            }
        }
        let rab = both.rank();
        ra == rb && rb == rab
    }

    /// Least `t >= 1` with `self^t = I`.
    ///
    /// The cap `k * 2^k` is far above any element order in the relevant
    /// groups; hitting it means a singular matrix slipped through and is an
    /// internal error.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rank() != self.rows {
            return Err(Error::Singular);
        }
        let cap = (self.rows as u64).max(1) * (1u64 << self.rows.min(32));
        let mut acc = self.clone();
        for t in 1..=cap {
            if acc.is_identity() {
                return Ok(t);
            }
            acc = acc.mul(self).expect("square");
        }
        panic!("multiplicative_order exceeded cap: singular input?");
    }

    /// Row dot products `popcount(row_i & row_j) mod 2`, for `cols <= 64`.
    #[inline]
    pub fn rows_orthogonal(&self, i: usize, j: usize) -> bool {
        let mut acc = 0u32;
        for (a, b) in self.row_words(i).iter().zip(self.row_words(j)) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc == 0
    }

    /// `self * self^T == 0`: all row pairs (including each row with itself)
    /// meet evenly.
    pub fn gram_is_zero(&self) -> bool {
        for i in 0..self.rows {
            for j in i..self.rows {
                if !self.rows_orthogonal(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GF2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Polynomial over GF(2); bit `i` is the coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Poly(pub u64);

impl GF2Poly {
    pub const ONE: GF2Poly = GF2Poly(1);
    pub const X: GF2Poly = GF2Poly(2);
    pub const X_PLUS_1: GF2Poly = GF2Poly(3);

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    /// Degree; the zero polynomial reports 0 by convention.
    pub fn degree(&self) -> usize {
        if self.0 == 0 {
            0
        } else {
            63 - self.0.leading_zeros() as usize
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    /// Carryless product.
    pub fn mul(&self, other: &GF2Poly) -> GF2Poly {
        let mut acc = 0u64;
        let mut a = self.0;
        let b = other.0;
        let mut shift = 0;
        while a != 0 {
            if a & 1 == 1 {
                acc ^= b << shift;
            }
            a >>= 1;
            shift += 1;
        }
        GF2Poly(acc)
    }

    pub fn pow(&self, e: u32) -> GF2Poly {
        let mut acc = GF2Poly::ONE;
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Remainder of `self` modulo `divisor` (nonzero).
    pub fn rem(&self, divisor: &GF2Poly) -> GF2Poly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree();
        let mut r = self.0;
        while r != 0 {
            let rd = 63 - r.leading_zeros() as usize;
            if rd < dd {
                break;
            }
            r ^= divisor.0 << (rd - dd);
        }
        GF2Poly(r)
    }

    pub fn divides(&self, other: &GF2Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Trial-division irreducibility; fine at the degrees used here.
    pub fn is_irreducible(&self) -> bool {
        let d = self.degree();
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        if self.0 & 1 == 0 {
            return false; // divisible by x
        }
        for bits in 2u64..1 << (d / 2 + 1) {
            let g = GF2Poly(bits);
            if g.degree() >= 1 && g.degree() <= d / 2 && g.divides(self) {
                return false;
            }
        }
        true
    }

    /// Reciprocal `x^deg(f) * f(1/x)`; requires `f(0) = 1`.
    pub fn reciprocal(&self) -> Result<GF2Poly> {
        if self.0 & 1 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let d = self.degree();
        let mut out = 0u64;
        for i in 0..=d {
            if self.coeff(i) {
                out |= 1 << (d - i);
            }
        }
        Ok(GF2Poly(out))
    }

    /// `x^e + 1` (equal to `x^e - 1` over GF(2)).
    pub fn x_pow_minus_one(e: u32) -> GF2Poly {
        assert!(e < 64);
        GF2Poly((1u64 << e) | 1)
    }

    /// Companion matrix; `f` must be monic of degree >= 1.
    pub fn companion(&self) -> GF2Matrix {
        let d = self.degree();
        assert!(d >= 1, "companion of a constant");
        let mut m = GF2Matrix::zeros(d, d);
        for i in 0..d - 1 {
            m.set(i, i + 1, true);
        }
        for j in 0..d {
            if self.coeff(j) {
                m.set(d - 1, j, true);
            }
        }
        m
    }
}

impl std::fmt::Display for GF2Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..=self.degree()).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for GF2Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF2Poly({self})")
    }
}

/// Evaluates `f(m)` by Horner's rule; `m` must be square.
pub fn poly_eval(f: &GF2Poly, m: &GF2Matrix) -> GF2Matrix {
    assert!(m.is_square());
    let n = m.rows();
    let mut acc = GF2Matrix::zeros(n, n);
    for i in (0..=f.degree()).rev() {
        acc = acc.mul(m).expect("square");
        if f.coeff(i) {
            acc = acc.add(&GF2Matrix::identity(n)).expect("same shape");
        }
    }
    acc
}
