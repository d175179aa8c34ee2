//! Independent ground truth for small lengths: enumerate every
//! self-orthogonal code directly and count equivalence classes under
//! coordinate permutations by full canonicalization.
//!
//! Nothing here shares a code path with the census; that is the point.

use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::HashSet;

/// A binary code given by its full codeword set (bit `i` of a word is
/// coordinate `i + 1`). Words are sorted; the set is closed under addition
/// and pairwise self-orthogonal by construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Code {
    pub n: usize,
    pub words: Vec<u64>,
}

impl Code {
    pub fn zero(n: usize) -> Code {
        Code { n, words: vec![0] }
    }

    pub fn dim(&self) -> usize {
        debug_assert!(self.words.len().is_power_of_two());
        self.words.len().trailing_zeros() as usize
    }

    pub fn contains(&self, w: u64) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    /// Extended by one generator; the new word set is `C union (C + v)`.
    pub fn extend(&self, v: u64) -> Code {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .flat_map(|&w| [w, w ^ v])
            .collect();
        words.sort_unstable();
        words.dedup();
        Code { n: self.n, words }
    }

    /// Closure under addition, zero membership, and orthogonality of every
    /// pair of codewords (including each word with itself).
    pub fn check_invariants(&self) -> bool {
        if !self.contains(0) || !self.words.len().is_power_of_two() {
            return false;
        }
        if self.words.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for &a in &self.words {
            if a >> self.n != 0 {
                return false;
            }
            for &b in &self.words {
                if !self.contains(a ^ b) {
                    return false;
                }
                if (a & b).count_ones() % 2 == 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Every self-orthogonal code in `F_2^n` of dimension `0..=kmax`, each
/// exactly once, by breadth-first extension.
pub fn enumerate_so_codes(n: usize, kmax: usize) -> Result<Vec<Code>> {
    if n > 10 {
        return Err(Error::GuardExceeded(format!(
            "code enumeration needs n <= 10, got {n}"
        )));
    }
    if kmax > n / 2 {
        return Err(Error::InvalidArgument(format!(
            "kmax = {kmax} exceeds floor(n/2) = {}",
            n / 2
        )));
    }
    let mut all = vec![Code::zero(n)];
    let mut level = vec![Code::zero(n)];
    for _ in 0..kmax {
        let mut next: Vec<Code> = Vec::new();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for code in &level {
            for v in 1u64..1 << n {
                if v.count_ones() % 2 != 0 || code.contains(v) {
                    continue;
                }
                // v must lie in the dual of the code
                if code.words.iter().any(|&w| (w & v).count_ones() % 2 == 1) {
                    continue;
                }
                let bigger = code.extend(v);
                if seen.insert(bigger.words.clone()) {
                    next.push(bigger);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// Per-permutation lookup table mapping a word to its permuted image.
fn word_tables(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<u64>> {
    perms
        .iter()
        .map(|perm| {
            (0u64..1 << n)
                .map(|w| {
                    let mut out = 0u64;
                    for (from, &to) in perm.iter().enumerate() {
                        if (w >> from) & 1 == 1 {
                            out |= 1 << to;
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn min_word_list(code: &Code, tables: &[Vec<u64>]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    for table in tables {
        // cheap filter: the second entry of the sorted image is its
        // smallest nonzero word
        if let Some(b) = &best {
            if b.len() > 1 {
                let m = code
                    .words
                    .iter()
                    .filter(|&&w| w != 0)
                    .map(|&w| table[w as usize])
                    .min()
                    .unwrap();
                if m > b[1] {
                    continue;
                }
            }
        }
        let mut image: Vec<u64> = code.words.iter().map(|&w| table[w as usize]).collect();
        image.sort_unstable();
        match &best {
            Some(b) if *b <= image => {}
            _ => best = Some(image),
        }
    }
    best.expect("at least the identity permutation")
}

/// Canonical form: the minimum over all `n!` coordinate permutations of the
/// sorted codeword list, serialized as `n`-bit words joined by `|`. Two
/// codes are equivalent iff their canonical forms are equal.
pub fn canonical_form(code: &Code) -> Result<String> {
    if code.n > 8 {
        return Err(Error::GuardExceeded(format!(
            "canonical form needs n <= 8, got {}",
            code.n
        )));
    }
    let perms = permutations(code.n);
    let tables = word_tables(code.n, &perms);
    let best = min_word_list(code, &tables);
    Ok(serialize(code.n, &best))
}

fn serialize(n: usize, words: &[u64]) -> String {
    words
        .iter()
        .map(|&w| {
            (0..n)
                .map(|i| if (w >> i) & 1 == 1 { '1' } else { '0' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// `Psi_{<=k,n}` by direct orbit counting: the number of distinct canonical
/// forms among all self-orthogonal codes of dimension at most `k`.
pub fn psi_le_bruteforce(k: usize, n: usize) -> Result<BigInt> {
    if n > 8 {
        return Err(Error::GuardExceeded(format!(
            "brute-force census needs n <= 8, got {n}"
        )));
    }
    let codes = enumerate_so_codes(n, k.min(n / 2))?;
    let perms = permutations(n);
    let tables = word_tables(n, &perms);
    let mut canon: HashSet<Vec<u64>> = HashSet::new();
    for code in &codes {
        canon.insert(min_word_list(code, &tables));
    }
    Ok(BigInt::from(canon.len()))
}
