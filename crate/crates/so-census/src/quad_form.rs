//! Binary quadratic forms: Dickson types, their direct-sum algebra, exact
//! zero counts and the census of forms per type.
//!
//! A square matrix `M` represents the form `f(x) = x M x^T`; two matrices
//! represent the same form iff they differ by an alternating matrix with zero
//! diagonal, and every form is equivalent to exactly one canonical shape
//! described by a type `(n, r, u, v)`: ambient dimension, hyperbolic rank,
//! Arf bit and defect bit. `(u, v)` is one of `(0,0)`, `(1,0)`, `(0,1)`.

use crate::gf2::GF2Matrix;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Dickson type of a binary quadratic form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QType {
    pub n: u64,
    pub r: u64,
    pub u: bool,
    pub v: bool,
}

impl QType {
    pub const EMPTY: QType = QType {
        n: 0,
        r: 0,
        u: false,
        v: false,
    };

    pub fn new(n: u64, r: u64, u: bool, v: bool) -> Result<QType> {
        let t = QType { n, r, u, v };
        if t.is_valid() {
            Ok(t)
        } else {
            Err(Error::InvalidType {
                n,
                r,
                u: u.into(),
                v: v.into(),
            })
        }
    }

    pub fn is_valid(&self) -> bool {
        if 2 * self.r > self.n {
            return false;
        }
        if self.u && self.v {
            return false;
        }
        if self.u && self.r == 0 {
            return false;
        }
        if self.v && 2 * self.r > self.n - 1 {
            return false;
        }
        true
    }

    /// Type of a direct sum of two forms.
    ///
    /// The Arf bit is absorbed once a defect is present (a canonical form
    /// with `v = 1` has `u = 0`, and the zero count ignores `u` there).
    pub fn boxplus(&self, other: &QType) -> QType {
        let v = self.v || other.v;
        QType {
            n: self.n + other.n,
            r: self.r + other.r,
            u: (self.u ^ other.u) && !v,
            v,
        }
    }

    /// Type of `m` disjoint copies of the form.
    pub fn scale(&self, m: u64) -> QType {
        QType {
            n: m * self.n,
            r: m * self.r,
            u: self.u && m % 2 == 1,
            v: self.v && m > 0,
        }
    }

    /// Exact number of zeros `|Z(f)| = 2^{n-1} + (1-v)(-1)^u 2^{n-1-r}`.
    ///
    /// The empty form (`n = 0`) vanishes on the empty vector, so the count
    /// is 1 there; that convention is forced by the degenerate case of the
    /// constrained-solution count.
    pub fn zero_count(&self) -> BigInt {
        if self.n == 0 {
            return BigInt::one();
        }
        let main = BigInt::one() << (self.n - 1);
        if self.v {
            main
        } else {
            let corr = BigInt::one() << (self.n - 1 - self.r);
            if self.u {
                main - corr
            } else {
                main + corr
            }
        }
    }
}

impl std::fmt::Debug for QType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.n,
            self.r,
            u8::from(self.u),
            u8::from(self.v)
        )
    }
}

fn parity_and(a: u64, b: u64) -> bool {
    (a & b).count_ones() % 2 == 1
}

/// Classifies the quadratic form `x M x^T` of a square matrix `M`.
///
/// The bilinear part is `B = M + M^T`; `r` is half its rank. On the radical
/// of `B` the form is linear, so the defect bit is read off a radical basis.
/// On the nondegenerate part the Arf bit is accumulated over a symplectic
/// basis, one hyperbolic pair at a time; no zero counting is involved, so
/// classification stays polynomial in `n`.
pub fn classify(m: &GF2Matrix) -> Result<QType> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    assert!(n <= 64, "classify supports n <= 64");
    if n == 0 {
        return Ok(QType::EMPTY);
    }

    // Bit-packed rows of M and B = M + M^T.
    let m_rows: Vec<u64> = (0..n).map(|i| m.row_bits(i)).collect();
    let mt = m.transpose();
    let b_rows: Vec<u64> = (0..n).map(|i| m_rows[i] ^ mt.row_bits(i)).collect();

    // q(x) = x M x^T; bilin(x, y) = x B y^T.
    let q = |x: u64| -> bool {
        let mut acc = false;
        for (i, row) in m_rows.iter().enumerate() {
            if (x >> i) & 1 == 1 {
                acc ^= parity_and(*row, x);
            }
        }
        acc
    };
    let bilin = |x: u64, y: u64| -> bool {
        let mut acc = false;
        for (i, row) in b_rows.iter().enumerate() {
            if (x >> i) & 1 == 1 {
                acc ^= parity_and(*row, y);
            }
        }
        acc
    };

    let mut basis: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    let mut r = 0u64;
    let mut arf = false;
    loop {
        let mut pair = None;
        'outer: for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if bilin(basis[i], basis[j]) {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else { break };
        let (x, y) = (basis[i], basis[j]);
        basis.remove(j);
        basis.remove(i);
        for w in basis.iter_mut() {
            if bilin(*w, y) {
                *w ^= x;
            }
            if bilin(*w, x) {
                *w ^= y;
            }
        }
        arf ^= q(x) && q(y);
        r += 1;
    }

    // Remaining basis vectors span the radical; q is linear there.
    let v = basis.iter().any(|&w| q(w));
    if v {
        Ok(QType {
            n: n as u64,
            r,
            u: false,
            v: true,
        })
    } else {
        Ok(QType {
            n: n as u64,
            r,
            u: arf,
            v: false,
        })
    }
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Number of quadratic forms in `n` variables of type `(n, r, u, v)`.
///
/// The three product formulas share the factor
/// `prod_{i=1}^{2r}(2^{n-2r+i}-1) / prod_{i=1}^{r}(2^{2i}-1)`; the `v = 1`
/// case extends the numerator product down to `i = 0`. Intermediate values
/// are rationals (the `r = 0` cases carry a factor `2^{-1}`), the result is
/// exact.
pub fn count_types(n: u64, r: u64, u: bool, v: bool) -> Result<BigInt> {
    QType::new(n, r, u, v)?;
    let ratio = |lo: u64| -> BigRational {
        let mut num = BigInt::one();
        for i in lo..=2 * r {
            num *= pow2(n - 2 * r + i) - 1;
        }
        let mut den = BigInt::one();
        for i in 1..=r {
            den *= pow2(2 * i) - 1;
        }
        BigRational::new(num, den)
    };
    let total: BigRational = if v {
        BigRational::from_integer(pow2(r * (r + 1))) * ratio(0)
    } else {
        let sign: BigInt = if u {
            pow2(r) - 1
        } else {
            pow2(r) + 1
        };
        // 2^{r^2 - 1} as a rational; r = 0 makes it 1/2.
        let half_pow = BigRational::new(pow2(r * r), BigInt::from(2));
        half_pow * BigRational::from_integer(sign) * ratio(1)
    };
    assert!(total.is_integer(), "count_types must be integral");
    let out = total.to_integer();
    assert!(!out.is_negative());
    Ok(out)
}
