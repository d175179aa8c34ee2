//! Integer partitions, used as cycle types of the symmetric group.
//!
//! A partition is stored as its multiplicity vector: `mult[i]` copies of the
//! part `i + 1`. Enumeration order is descending lexicographic on that
//! vector (all 1-parts first, the single part `n` last), which keeps census
//! breakdowns reproducible.

use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    mult: Vec<u32>,
}

impl Partition {
    /// From a multiplicity vector (`mult[i]` copies of part `i + 1`).
    pub fn from_multiplicities(mult: Vec<u32>) -> Self {
        let mut mult = mult;
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Partition { mult }
    }

    /// From a list of parts, e.g. `[3, 2, 2]`.
    pub fn from_parts(parts: &[u32]) -> Self {
        let max = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut mult = vec![0u32; max];
        for &p in parts {
            assert!(p > 0, "parts must be positive");
            mult[p as usize - 1] += 1;
        }
        Partition::from_multiplicities(mult)
    }

    pub fn empty() -> Self {
        Partition { mult: Vec::new() }
    }

    /// The partitioned integer `n = sum i * mult_i`.
    pub fn n(&self) -> u64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m as u64)
            .sum()
    }

    /// Multiplicity of the part `i` (1-based); 0 beyond the stored support.
    pub fn multiplicity(&self, part: u64) -> u32 {
        if part == 0 || part as usize > self.mult.len() {
            0
        } else {
            self.mult[part as usize - 1]
        }
    }

    /// Iterator over `(part, multiplicity)` with multiplicity > 0.
    pub fn parts(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i as u64 + 1, m))
    }

    /// Congruence-class slice `sum of mult_i over parts i = a (mod b)`.
    pub fn slice(&self, a: u64, b: u64) -> u64 {
        assert!(a < b, "slice requires 0 <= a < b");
        self.parts()
            .filter(|(i, _)| i % b == a)
            .map(|(_, m)| m as u64)
            .sum()
    }

    /// Centralizer order of the cycle type in `S_n`:
    /// `z = prod_i mult_i! * i^{mult_i}`.
    pub fn weight(&self) -> BigInt {
        let mut z = BigInt::one();
        for (part, m) in self.parts() {
            for j in 1..=m as u64 {
                z *= j;
            }
            z *= BigInt::from(part).pow(m);
        }
        z
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .parts()
            .map(|(i, m)| if m == 1 { format!("{i}") } else { format!("{i}^{m}") })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All partitions of `n`, each exactly once, in descending lexicographic
/// order of multiplicity vectors.
pub fn partitions(n: u64) -> impl Iterator<Item = Partition> {
    let mut out = Vec::new();
    let mut mult = vec![0u32; n as usize];
    fn go(part: u64, budget: u64, mult: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if budget == 0 {
            out.push(Partition::from_multiplicities(mult.clone()));
            return;
        }
        if part > budget {
            return;
        }
        let max_m = budget / part;
        for m in (0..=max_m).rev() {
            mult[part as usize - 1] = m as u32;
            go(part + 1, budget - m * part, mult, out);
        }
        mult[part as usize - 1] = 0;
    }
    if n == 0 {
        out.push(Partition::empty());
    } else {
        go(1, n, &mut mult, &mut out);
    }
    out.into_iter()
}

pub fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    f
}
