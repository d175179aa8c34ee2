//! Burnside census of inequivalent self-orthogonal codes.
//!
//! `Psi_{<=k,n}` is the number of `GL(k,F2) x S_n`-orbits on `{X in M_{k x n}
//! : X X^T = 0}`; by the Burnside lemma it is the double sum over conjugacy
//! classes `A` and cycle types `lambda` of `|Fix(A, P_lambda)| / (|cent(A)|
//! z_lambda)`. Everything here is exact: per class the partition sum is
//! accumulated as an integer numerator over the common denominator `n!`, the
//! per-class rationals are added, and the total must come out an integer.

use crate::fix_engine::{fix_count, FixContext, TypeProfile};
use crate::gl_classes::{enumerate_classes, ConjClass};
use crate::partition::{factorial, partitions, Partition};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Exact census output for one `(k, n)` pair.
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub k: usize,
    pub n: u64,
    pub psi_le: BigInt,
    /// Per-class contribution, in class order; the sum is exactly `psi_le`.
    pub contributions: Vec<(String, BigRational)>,
    pub elapsed: Duration,
}

/// A conjugacy class with its precomputed fixed-point machinery.
pub struct ClassTerm {
    pub class: ConjClass,
    pub ctx: FixContext,
    pub profile: TypeProfile,
}

/// Census engine for a fixed `k`; build once, query any `n`.
pub struct Census {
    pub k: usize,
    pub classes: Vec<ClassTerm>,
}

/// Work grain: one conjugacy class crossed with one chunk of partitions.
pub const DEFAULT_CHUNK: usize = 1024;

impl Census {
    /// Fails when the constraint count of some class exceeds the profile
    /// guard; `k <= 6` always fits.
    pub fn new(k: usize) -> Result<Census> {
        let mut classes = Vec::new();
        if k > 0 {
            for class in enumerate_classes(k) {
                let ctx = FixContext::build(&class.rep)
                    .expect("class representatives are invertible");
                let profile = TypeProfile::build(&ctx)?;
                classes.push(ClassTerm {
                    class,
                    ctx,
                    profile,
                });
            }
        }
        Ok(Census { k, classes })
    }

    /// `Psi_{<=k,n}`, single-threaded.
    pub fn psi_le(&self, n: u64) -> CensusResult {
        self.psi_le_with(n, 1, DEFAULT_CHUNK)
    }

    /// `Psi_{<=k,n}` with `threads` workers over `(class, partition-chunk)`
    /// grains. The reduction is deterministic and the arithmetic exact, so
    /// any worker count produces identical results.
    pub fn psi_le_with(&self, n: u64, threads: usize, chunk: usize) -> CensusResult {
        assert!(n >= 1, "census needs n >= 1");
        let start = Instant::now();
        if self.k == 0 {
            return CensusResult {
                k: 0,
                n,
                psi_le: BigInt::one(),
                contributions: Vec::new(),
                elapsed: start.elapsed(),
            };
        }
        let n_factorial = factorial(n);
        // Weight of each cycle type: the size of its conjugacy class in S_n.
        let weighted: Vec<(Partition, BigInt)> = partitions(n)
            .map(|lam| {
                let w = &n_factorial / lam.weight();
                (lam, w)
            })
            .collect();

        let chunk = chunk.max(1);
        let mut items: Vec<(usize, Range<usize>)> = Vec::new();
        for ci in 0..self.classes.len() {
            let mut lo = 0;
            while lo < weighted.len() {
                let hi = (lo + chunk).min(weighted.len());
                items.push((ci, lo..hi));
                lo = hi;
            }
        }

        let partials: Vec<BigInt> = if threads <= 1 {
            items
                .iter()
                .map(|(ci, range)| self.partial_sum(*ci, &weighted[range.clone()]))
                .collect()
        } else {
            let slots: Vec<Mutex<BigInt>> =
                items.iter().map(|_| Mutex::new(BigInt::zero())).collect();
            let next = AtomicUsize::new(0);
            std::thread::scope(|scope| {
                for _ in 0..threads {
                    scope.spawn(|| loop {
                        let i = next.fetch_add(1, Ordering::SeqCst);
                        if i >= items.len() {
                            break;
                        }
                        let (ci, range) = &items[i];
                        let acc = self.partial_sum(*ci, &weighted[range.clone()]);
                        *slots[i].lock().unwrap() = acc;
                    });
                }
            });
            slots
                .into_iter()
                .map(|m| m.into_inner().unwrap())
                .collect()
        };

        let mut numerators = vec![BigInt::zero(); self.classes.len()];
        for ((ci, _), partial) in items.iter().zip(partials) {
            numerators[*ci] += partial;
        }

        let mut contributions = Vec::with_capacity(self.classes.len());
        let mut total = BigRational::zero();
        for (term, numerator) in self.classes.iter().zip(numerators) {
            let denom = &n_factorial * &term.class.cent_order;
            let contribution = BigRational::new(numerator, denom);
            total += &contribution;
            contributions.push((term.class.label.clone(), contribution));
        }
        assert!(
            total.is_integer(),
            "Burnside total must be an integer, got {total} at k={}, n={n}",
            self.k
        );
        let psi_le = total.to_integer();
        assert!(!psi_le.is_negative());
        CensusResult {
            k: self.k,
            n,
            psi_le,
            contributions,
            elapsed: start.elapsed(),
        }
    }

    fn partial_sum(&self, ci: usize, weighted: &[(Partition, BigInt)]) -> BigInt {
        let term = &self.classes[ci];
        let mut acc = BigInt::zero();
        for (lam, w) in weighted {
            acc += fix_count(&term.ctx, &term.profile, lam) * w;
        }
        acc
    }
}

/// `Psi_{<=k,n}`, building the engine afresh.
pub fn psi_le(k: usize, n: u64) -> CensusResult {
    Census::new(k).expect("k <= 6").psi_le(n)
}

/// `Psi_{k,n} = Psi_{<=k,n} - Psi_{<=k-1,n}`.
pub fn psi(k: usize, n: u64) -> BigInt {
    assert!(k >= 1, "psi needs k >= 1");
    let hi = psi_le(k, n).psi_le;
    let lo = psi_le(k - 1, n).psi_le;
    let out = hi - lo;
    assert!(!out.is_negative());
    out
}

/// Closed form for `Psi_{<=2,n}`:
/// `1/3 (floor(n/6)+1) + 1/2 (floor(n/2)-floor(n/4)+1)(floor(n/4)+1)
///  + 1/36 (floor(n/2)+3)(floor(n/2)+2)(floor(n/2)+1)`.
pub fn psi_le2_closed(n: u64) -> BigInt {
    let q2 = BigInt::from(n / 2);
    let q4 = BigInt::from(n / 4);
    let q6 = BigInt::from(n / 6);
    let third = BigRational::new(q6 + 1, BigInt::from(3));
    let half = BigRational::new(
        (&q2 - &q4 + 1) * (&q4 + 1),
        BigInt::from(2),
    );
    let cubic = BigRational::new(
        (&q2 + 3) * (&q2 + 2) * (&q2 + 1),
        BigInt::from(36),
    );
    let total = third + half + cubic;
    assert!(total.is_integer(), "closed form must be integral");
    total.to_integer()
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Number of self-orthogonal `[n, k]` codes `|Phi_{n,k}|`.
///
/// Odd and even lengths take different products; `k = 0` counts the zero
/// code, and `k > floor(n/2)` is impossible, so the count is 0 there.
pub fn phi(n: u64, k: u64) -> BigInt {
    assert!(n >= 1, "phi needs n >= 1");
    if k == 0 {
        return BigInt::one();
    }
    if k > n / 2 {
        return BigInt::zero();
    }
    let mut den = BigInt::one();
    for j in 1..=k {
        den *= pow2(j) - 1;
    }
    let num = if n % 2 == 1 {
        let mut num = BigInt::one();
        for j in 1..=k {
            num *= pow2(n + 1 - 2 * j) - 1;
        }
        num
    } else {
        let mut num = pow2(n - k) - 1;
        for j in 1..=k - 1 {
            num *= pow2(n - 2 * j) - 1;
        }
        num
    };
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "phi must be integral");
    q
}

/// `|S_{k x n}|`, the number of `k x n` matrices with `X X^T = 0`, via the
/// sum over row-space dimensions:
/// `sum_l |Phi_{n,l}| 2^{l(l-1)/2} prod_{j=k-l+1}^{k} (2^j - 1)`.
pub fn s_count(k: u64, n: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for l in 0..=k.min(n / 2) {
        let mut term = phi(n, l) * pow2(l * l.saturating_sub(1) / 2);
        for j in k - l + 1..=k {
            term *= pow2(j) - 1;
        }
        total += term;
    }
    total
}

fn pow2_signed(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as u64)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as u64)
    }
}

/// `|S_{k x n}|` again, independently, via the quadratic-form route: the
/// census of types in `k` variables weighted by their zero counts.
pub fn s_count_alt(k: u64, n: u64) -> BigInt {
    let a = n as i64;
    let ki = k as i64;
    let delta: i64 = i64::from(n > 0);
    let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
    let mut sum = BigRational::zero();
    for r in 0..=k / 2 {
        let ri = r as i64;
        let mut ratio = BigRational::one();
        for i in 1..=2 * r {
            ratio *= BigRational::from_integer(pow2(k - 2 * r + i) - 1);
        }
        for i in 1..=r {
            ratio /= BigRational::from_integer(pow2(2 * i) - 1);
        }
        let bracket = pow2_signed(ki * a + ri)
            + pow2_signed(ki * a - 1 - ri * a)
                * BigRational::from_integer(BigInt::from(
                    (1i64 << r) + 1 + sign * ((1i64 << r) - 1),
                ))
            + pow2_signed(ri + 1)
                * BigRational::from_integer(pow2(k - 2 * r) - 1)
                * (pow2_signed(ki * a)
                    - BigRational::from_integer(BigInt::from(delta)) * pow2_signed(ki * a - 1));
        sum += pow2_signed(ri * ri - 1) * ratio * bracket;
    }
    let total = sum * pow2_signed(-(ki + 2) * (ki - 1) / 2) - pow2_signed(ki * a);
    assert!(total.is_integer(), "S-count formula must be integral");
    total.to_integer()
}

/// Mass-formula partial sum `n! * sum_i 1/|Aut(C_i)|`; a classification
/// list is complete when this equals `|Phi_{n,k}|`.
pub fn mass_sum(n: u64, aut_orders: &[BigInt]) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for order in aut_orders {
        if !order.is_positive() {
            return Err(Error::ZeroAutOrder);
        }
        sum += BigRational::new(BigInt::one(), order.clone());
    }
    Ok(BigRational::from_integer(factorial(n)) * sum)
}

/// Both `Psi_{<=k,n}` and `Psi_{k,n}` grids; rows `n = 1..=n_max`, columns
/// `k = 0..=k_max`.
pub struct TableGrid {
    pub k_max: usize,
    pub n_max: u64,
    pub psi_le: Vec<Vec<BigInt>>,
    pub psi: Vec<Vec<BigInt>>,
    pub elapsed: Duration,
}

pub fn table_grid(k_max: usize, n_max: u64, threads: usize, chunk: usize) -> Result<TableGrid> {
    let start = Instant::now();
    let mut le = vec![vec![BigInt::zero(); k_max + 1]; n_max as usize];
    for k in 0..=k_max {
        let census = Census::new(k)?;
        for n in 1..=n_max {
            le[n as usize - 1][k] = census.psi_le_with(n, threads, chunk).psi_le;
        }
    }
    let mut diff = vec![vec![BigInt::zero(); k_max + 1]; n_max as usize];
    for n in 0..n_max as usize {
        for k in 0..=k_max {
            diff[n][k] = if k == 0 {
                le[n][0].clone()
            } else {
                &le[n][k] - &le[n][k - 1]
            };
        }
    }
    Ok(TableGrid {
        k_max,
        n_max,
        psi_le: le,
        psi: diff,
        elapsed: start.elapsed(),
    })
}
