//! Fixed-point counts `|Fix(A, P_lambda)| = |{X : AX = X P_lambda, X X^T = 0}|`.
//!
//! For an invertible `A` of order `t`, the count factors through per-divisor
//! data only: kernel dimensions `s_d` and bases `B_d` of `A^d - I`, a system
//! of `L` independent linear constraints on the Gram entries of the free
//! blocks, and the partition only through its slices. The constraint system
//! is extracted once per class by symbolic expansion, each of the `2^L` sign
//! combinations is classified as a quadratic form per divisor, and every
//! later partition query is a handful of type-algebra operations.

use crate::gf2::GF2Matrix;
use crate::partition::Partition;
use crate::quad_form::{classify, QType};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Per-class precomputed constraint data.
#[derive(Clone, Debug)]
pub struct FixContext {
    pub k: usize,
    /// Element order of the class representative.
    pub t: u64,
    /// Sorted divisors of `t`.
    pub divisors: Vec<u64>,
    /// `s[idx] = k - rank(A^d - I)` for `d = divisors[idx]`.
    pub s: Vec<usize>,
    /// Kernel bases `B_d` (columns), aligned with `divisors`.
    pub bases: Vec<GF2Matrix>,
    /// Number of independent constraints.
    pub l: usize,
    /// `coeffs[l][idx]`: upper-triangular coefficient matrix of constraint
    /// `l` on the Gram variables of divisor `divisors[idx]`.
    pub coeffs: Vec<Vec<GF2Matrix>>,
}

fn divisors_of(t: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=t).filter(|d| t % d == 0).collect();
    out.sort_unstable();
    out
}

impl FixContext {
    pub fn build(a: &GF2Matrix) -> Result<FixContext> {
        Self::build_with_bases(a, |_, b| b)
    }

    /// Builds the context with each kernel basis `B_d` replaced by
    /// `B_d * Q_d` for a seeded random invertible `Q_d`. Any such product is
    /// again a kernel basis, so the resulting solution counts must agree
    /// with the default; the property tests lean on this.
    pub fn build_with_basis_seed(a: &GF2Matrix, seed: u64) -> Result<FixContext> {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        Self::build_with_bases(a, |d, b| {
            let s = b.cols();
            if s == 0 {
                return b;
            }
            loop {
                let mut q = GF2Matrix::zeros(s, s);
                for i in 0..s {
                    for j in 0..s {
                        q.set(i, j, (next() >> (d % 31)) & 1 == 1);
                    }
                }
                if q.rank() == s {
                    return b.mul(&q).expect("conformable");
                }
            }
        })
    }

    fn build_with_bases(
        a: &GF2Matrix,
        mut twist: impl FnMut(u64, GF2Matrix) -> GF2Matrix,
    ) -> Result<FixContext> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let k = a.rows();
        if a.rank() != k {
            return Err(Error::Singular);
        }
        let t = a.multiplicative_order()?;
        let divisors = divisors_of(t);
        let identity = GF2Matrix::identity(k);

        let mut s = Vec::with_capacity(divisors.len());
        let mut bases = Vec::with_capacity(divisors.len());
        for &d in &divisors {
            let ad_minus_i = a.pow(d)?.add(&identity)?;
            let b = twist(d, ad_minus_i.kernel_basis());
            s.push(b.cols());
            bases.push(b);
        }

        // Gram variables z_{ij}^{(d)}, i <= j, ordered d ascending then
        // (i, j) row-major.
        let var_count: usize = s.iter().map(|&sd| sd * (sd + 1) / 2).sum();
        let mut var_offset = Vec::with_capacity(s.len());
        let mut off = 0;
        for &sd in &s {
            var_offset.push(off);
            off += sd * (sd + 1) / 2;
        }

        // Coefficient of z_{ij}^{(d)} at result entry (p, q):
        // xor over w < d of M_w[p,i] M_w[q,j] + [i != j] M_w[p,j] M_w[q,i],
        // with M_w = A^w B_d. Only the upper triangle (p <= q) of the
        // symmetric result is extracted.
        let mut rows = GF2Matrix::zeros(k * (k + 1) / 2, var_count);
        for (idx, &d) in divisors.iter().enumerate() {
            let sd = s[idx];
            if sd == 0 {
                continue;
            }
            let mut powers = Vec::with_capacity(d as usize);
            let mut m = bases[idx].clone();
            for _ in 0..d {
                powers.push(m.clone());
                m = a.mul(&m)?;
            }
            let mut var = var_offset[idx];
            for i in 0..sd {
                for j in i..sd {
                    let mut row_index = 0;
                    for p in 0..k {
                        for q in p..k {
                            let mut bit = false;
                            for mw in &powers {
                                bit ^= mw.get(p, i) && mw.get(q, j);
                                if i != j {
                                    bit ^= mw.get(p, j) && mw.get(q, i);
                                }
                            }
                            if bit {
                                let old = rows.get(row_index, var);
                                rows.set(row_index, var, !old);
                            }
                            row_index += 1;
                        }
                    }
                    var += 1;
                }
            }
        }

        // Reduce to an independent basis; L is the rank of the raw system.
        let (rref, pivots) = rows.rref();
        let l = pivots.len();
        let mut coeffs = Vec::with_capacity(l);
        for li in 0..l {
            let mut per_divisor = Vec::with_capacity(divisors.len());
            for (idx, &sd) in s.iter().enumerate() {
                let mut c = GF2Matrix::zeros(sd, sd);
                let mut var = var_offset[idx];
                for i in 0..sd {
                    for j in i..sd {
                        if rref.get(li, var) {
                            c.set(i, j, true);
                        }
                        var += 1;
                    }
                }
                per_divisor.push(c);
            }
            coeffs.push(per_divisor);
        }

        Ok(FixContext {
            k,
            t,
            divisors,
            s,
            bases,
            l,
            coeffs,
        })
    }

    fn divisor_index(&self, d: u64) -> usize {
        self.divisors.binary_search(&d).expect("divisor of t")
    }

    /// `alpha_d = sum of lambda_i over i with nu(i) <= nu(t), gcd(i, t) = d`,
    /// aligned with `divisors`.
    pub fn alpha_vector(&self, lambda: &Partition) -> Vec<u64> {
        let nu_t = self.t.trailing_zeros();
        let mut alpha = vec![0u64; self.divisors.len()];
        for (i, m) in lambda.parts() {
            if i.trailing_zeros() <= nu_t {
                let d = gcd(i, self.t);
                alpha[self.divisor_index(d)] += m as u64;
            }
        }
        alpha
    }

    /// `sum of s_{gcd(i,t)} lambda_i over parts with nu(i) > nu(t)`.
    pub fn free_exponent(&self, lambda: &Partition) -> u64 {
        let nu_t = self.t.trailing_zeros();
        let mut e = 0u64;
        for (i, m) in lambda.parts() {
            if i.trailing_zeros() > nu_t {
                let d = gcd(i, self.t);
                e += self.s[self.divisor_index(d)] as u64 * m as u64;
            }
        }
        e
    }

    pub fn theta(&self, alpha: &[u64]) -> u64 {
        self.s
            .iter()
            .zip(alpha)
            .map(|(&sd, &a)| sd as u64 * a)
            .sum()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The grouped multiset of per-divisor type tuples over all `2^L` sign
/// vectors of the constraint system.
#[derive(Clone, Debug)]
pub struct TypeProfile {
    /// `(types aligned with divisors, multiplicity)`; multiplicities sum
    /// to `2^L`.
    pub entries: Vec<(Vec<QType>, u64)>,
}

impl TypeProfile {
    pub fn build(ctx: &FixContext) -> Result<TypeProfile> {
        if ctx.l > 24 {
            return Err(Error::GuardExceeded(format!(
                "type profile needs L <= 24, got {}",
                ctx.l
            )));
        }
        let mut grouped: BTreeMap<Vec<QType>, u64> = BTreeMap::new();
        for signs in 0u64..1 << ctx.l {
            let mut tuple = Vec::with_capacity(ctx.divisors.len());
            for idx in 0..ctx.divisors.len() {
                let sd = ctx.s[idx];
                let mut sum = GF2Matrix::zeros(sd, sd);
                for (li, per_divisor) in ctx.coeffs.iter().enumerate() {
                    if (signs >> li) & 1 == 1 {
                        sum = sum.add(&per_divisor[idx]).expect("same shape");
                    }
                }
                tuple.push(classify(&sum).expect("square"));
            }
            *grouped.entry(tuple).or_insert(0) += 1;
        }
        Ok(TypeProfile {
            entries: grouped.into_iter().collect(),
        })
    }
}

/// Number of constrained solutions `n(A)` for a given alpha vector:
/// `-2^theta + 2^{1-L} * sum over sign vectors of |Z(...)|`, evaluated via
/// the grouped type profile.
pub fn solution_count(ctx: &FixContext, profile: &TypeProfile, alpha: &[u64]) -> BigInt {
    let theta = ctx.theta(alpha);
    let mut sum = BigInt::zero();
    for (types, mult) in &profile.entries {
        let mut combined = QType::EMPTY;
        for (ty, &a) in types.iter().zip(alpha) {
            combined = combined.boxplus(&ty.scale(a));
        }
        sum += combined.zero_count() * *mult;
    }
    let scaled = if ctx.l == 0 {
        sum << 1
    } else {
        let shift = ctx.l - 1;
        debug_assert!(
            (&sum % (BigInt::one() << shift)).is_zero(),
            "zero-count sum must be divisible by 2^(L-1)"
        );
        sum >> shift
    };
    let n = scaled - (BigInt::one() << theta);
    debug_assert!(!n.is_negative());
    n
}

/// `|Fix(A, P_lambda)| = 2^{free exponent} * n(A)`.
pub fn fix_count(ctx: &FixContext, profile: &TypeProfile, lambda: &Partition) -> BigInt {
    let alpha = ctx.alpha_vector(lambda);
    solution_count(ctx, profile, &alpha) << ctx.free_exponent(lambda)
}

/// The permutation matrix of the canonical permutation of cycle type
/// `lambda`: blocks of `i`-cycles in increasing part order.
pub fn canonical_permutation_matrix(lambda: &Partition) -> GF2Matrix {
    let n = lambda.n() as usize;
    let mut p = GF2Matrix::zeros(n, n);
    let mut offset = 0;
    for (part, mult) in lambda.parts() {
        let i = part as usize;
        for _ in 0..mult {
            for r in 0..i {
                p.set(offset + r, offset + (r + 1) % i, true);
            }
            offset += i;
        }
    }
    p
}

/// Brute-force `|Fix(A, P_lambda)|`: solve the linear system `AX = X P`,
/// enumerate its kernel, and count members with `X X^T = 0`.
///
/// Independent of the constraint-profile path; the solution space dimension
/// is capped at 24.
pub fn fix_count_bruteforce(a: &GF2Matrix, lambda: &Partition) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let k = a.rows();
    let n = lambda.n() as usize;
    assert!(n <= 64, "brute force supports n <= 64");
    let p = canonical_permutation_matrix(lambda);

    // Linear map X -> AX - XP on row-major coordinates X[r][c].
    let mut system = GF2Matrix::zeros(k * n, k * n);
    for pp in 0..k {
        for q in 0..n {
            let eq = pp * n + q;
            for r in 0..k {
                if a.get(pp, r) {
                    let var = r * n + q;
                    let old = system.get(eq, var);
                    system.set(eq, var, !old);
                }
            }
            for c in 0..n {
                if p.get(c, q) {
                    let var = pp * n + c;
                    let old = system.get(eq, var);
                    system.set(eq, var, !old);
                }
            }
        }
    }
    let kernel = system.kernel_basis();
    let dim = kernel.cols();
    if dim > 24 {
        return Err(Error::GuardExceeded(format!(
            "brute-force solution space has dimension {dim} > 24"
        )));
    }

    // Kernel vectors as k-row bit matrices.
    let basis: Vec<Vec<u64>> = (0..dim)
        .map(|b| {
            (0..k)
                .map(|r| {
                    let mut row = 0u64;
                    for c in 0..n {
                        if kernel.get(r * n + c, b) {
                            row |= 1 << c;
                        }
                    }
                    row
                })
                .collect()
        })
        .collect();

    // Gray-code walk over the kernel.
    let mut current = vec![0u64; k];
    let mut count: u64 = u64::from(gram_zero(&current));
    for step in 1u64..1 << dim {
        let flip = step.trailing_zeros() as usize;
        for (row, delta) in current.iter_mut().zip(&basis[flip]) {
            *row ^= delta;
        }
        if gram_zero(&current) {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

#[inline]
fn gram_zero(rows: &[u64]) -> bool {
    for (i, &ri) in rows.iter().enumerate() {
        for &rj in &rows[i..] {
            if (ri & rj).count_ones() % 2 == 1 {
                return false;
            }
        }
    }
    true
}
