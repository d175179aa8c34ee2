//! Conjugacy classes of `GL(k, F2)`.
//!
//! A class is determined by its elementary divisors: powers `f^i` of
//! irreducible polynomials `f != x`, with multiplicities, of total degree
//! `k`. Representatives are block diagonals of companion matrices of the
//! `f^i`; centralizer orders come from the closed product formula, applied
//! per irreducible and multiplied together.

use crate::gf2::{GF2Matrix, GF2Poly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// One elementary-divisor entry: `mult` copies of `poly^power`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DivisorEntry {
    pub poly: GF2Poly,
    pub power: u32,
    pub mult: u32,
}

/// Elementary-divisor profile of a conjugacy class, sorted by
/// `(deg f, f, power)` with no duplicate `(f, power)` keys.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EDProfile {
    pub entries: Vec<DivisorEntry>,
}

impl EDProfile {
    pub fn new(mut entries: Vec<DivisorEntry>) -> Self {
        entries.sort_by_key(|e| (e.poly.degree(), e.poly, e.power));
        let profile = EDProfile { entries };
        debug_assert!(profile.entries.windows(2).all(|w| {
            (w[0].poly, w[0].power) != (w[1].poly, w[1].power)
        }));
        profile
    }

    /// Total degree `sum mult * power * deg(f)`.
    pub fn dimension(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.mult as usize * e.power as usize * e.poly.degree())
            .sum()
    }

    /// Block-diagonal representative: companion of each `f^power`,
    /// repeated `mult` times, in profile order.
    pub fn representative(&self) -> GF2Matrix {
        let mut rep = GF2Matrix::zeros(0, 0);
        for e in &self.entries {
            let block = e.poly.pow(e.power).companion();
            for _ in 0..e.mult {
                rep = rep.direct_sum(&block);
            }
        }
        rep
    }

    pub fn label(&self, k: usize) -> String {
        let divisors: Vec<String> = self
            .entries
            .iter()
            .flat_map(|e| {
                std::iter::repeat_with(move || format!("({})^{}", e.poly, e.power))
                    .take(e.mult as usize)
            })
            .collect();
        format!("k{k}:{}", divisors.join(","))
    }
}

/// A conjugacy class with its derived data.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub profile: EDProfile,
    pub rep: GF2Matrix,
    pub cent_order: BigInt,
    /// Element order `t = o(A)`.
    pub t: u64,
    pub label: String,
}

/// All monic irreducible polynomials over GF(2) of degree `1..=max_deg`,
/// excluding `x`, sorted by `(degree, bits)`.
pub fn irreducible_polys(max_deg: usize) -> Vec<GF2Poly> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for bits in (1u64 << d) + 1..1u64 << (d + 1) {
            // constant term 1 excludes x and speeds the scan up
            if bits & 1 == 1 && GF2Poly(bits).is_irreducible() {
                out.push(GF2Poly(bits));
            }
        }
    }
    out
}

/// Centralizer order of a class in `GL(k, F2)` from its profile.
///
/// For a single irreducible `f` of degree `d` with `mu_i` copies of `f^i`:
/// `prod_i q^{d mu_i (1 mu_1 + 2 mu_2 + ... + i mu_i + i mu_{i+1} + ...)}
///  prod_{j=1}^{mu_i} (1 - q^{-dj})` at `q = 2`; distinct irreducibles
/// multiply.
pub fn centralizer_order(profile: &EDProfile) -> BigInt {
    let mut polys: Vec<GF2Poly> = profile.entries.iter().map(|e| e.poly).collect();
    polys.dedup();
    let mut total = BigRational::one();
    for f in polys {
        let d = f.degree() as u64;
        // mu[i] = multiplicity of f^{i+1}
        let max_power = profile
            .entries
            .iter()
            .filter(|e| e.poly == f)
            .map(|e| e.power)
            .max()
            .unwrap() as usize;
        let mut mu = vec![0u64; max_power + 1];
        for e in profile.entries.iter().filter(|e| e.poly == f) {
            mu[e.power as usize] = e.mult as u64;
        }
        for i in 1..=max_power {
            if mu[i] == 0 {
                continue;
            }
            let weighted: u64 = (1..=max_power)
                .map(|j| mu[j] * (j.min(i) as u64))
                .sum();
            let mut factor = BigRational::from_integer(BigInt::one() << (d * mu[i] * weighted));
            for j in 1..=mu[i] {
                let denom = BigInt::one() << (d * j);
                factor *= BigRational::new(&denom - 1, denom);
            }
            total *= factor;
        }
    }
    assert!(total.is_integer(), "centralizer order must be integral");
    total.to_integer()
}

/// `|GL(k, 2)| = prod_{i=0}^{k-1} (2^k - 2^i)`.
pub fn gl_order(k: usize) -> BigInt {
    let mut total = BigInt::one();
    for i in 0..k {
        total *= (BigInt::one() << k) - (BigInt::one() << i);
    }
    total
}

/// One class per elementary-divisor profile of total degree `k`,
/// in a fixed deterministic order.
pub fn enumerate_classes(k: usize) -> Vec<ConjClass> {
    assert!((1..=8).contains(&k), "enumerate_classes supports 1 <= k <= 8");
    let polys = irreducible_polys(k);
    let mut classes = Vec::new();
    let mut current: Vec<DivisorEntry> = Vec::new();

    fn assign(
        polys: &[GF2Poly],
        idx: usize,
        budget: usize,
        current: &mut Vec<DivisorEntry>,
        out: &mut Vec<Vec<DivisorEntry>>,
    ) {
        if budget == 0 {
            // remaining polynomials all get the empty partition
            out.push(current.clone());
            return;
        }
        if idx == polys.len() {
            return;
        }
        let f = polys[idx];
        let d = f.degree();
        // choose a partition (as multiplicities of powers) of weight m*d <= budget
        let max_total = budget / d;
        let start = current.len();
        fn partitions_into(
            power: u32,
            remaining: usize,
            f: GF2Poly,
            current: &mut Vec<DivisorEntry>,
            next: &mut dyn FnMut(&mut Vec<DivisorEntry>),
        ) {
            if remaining == 0 {
                next(current);
                return;
            }
            if (power as usize) > remaining {
                return;
            }
            let max_m = remaining / power as usize;
            for m in (0..=max_m).rev() {
                if m > 0 {
                    current.push(DivisorEntry {
                        poly: f,
                        power,
                        mult: m as u32,
                    });
                }
                partitions_into(power + 1, remaining - m * power as usize, f, current, next);
                if m > 0 {
                    current.pop();
                }
            }
        }
        for total in 0..=max_total {
            if total == 0 {
                assign(polys, idx + 1, budget, current, out);
                continue;
            }
            let mut cont = |cur: &mut Vec<DivisorEntry>| {
                assign(polys, idx + 1, budget - total * d, cur, out);
            };
            partitions_into(1, total, f, current, &mut cont);
        }
        current.truncate(start);
    }

    let mut profiles = Vec::new();
    assign(&polys, 0, k, &mut current, &mut profiles);

    for entries in profiles {
        let profile = EDProfile::new(entries);
        debug_assert_eq!(profile.dimension(), k);
        let rep = profile.representative();
        let t = rep.multiplicative_order().expect("representative is invertible");
        let cent_order = centralizer_order(&profile);
        let label = profile.label(k);
        classes.push(ConjClass {
            profile,
            rep,
            cent_order,
            t,
            label,
        });
    }
    classes.sort_by(|a, b| a.label.cmp(&b.label));
    classes
}

/// Centralizer order by exhaustive enumeration of `GL(k, 2)`; `k <= 4`.
pub fn brute_centralizer_order(a: &GF2Matrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let k = a.rows();
    if k > 4 {
        return Err(Error::GuardExceeded(format!(
            "brute centralizer needs k <= 4, got {k}"
        )));
    }
    if a.rank() != k {
        return Err(Error::Singular);
    }
    let mut count = 0u64;
    for bits in 0u64..1 << (k * k) {
        let mut g = GF2Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                if (bits >> (i * k + j)) & 1 == 1 {
                    g.set(i, j, true);
                }
            }
        }
        if g.rank() == k && g.mul(a).unwrap() == a.mul(&g).unwrap() {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn irreducibles_by_degree() {
        assert_eq!(irreducible_polys(1), vec![GF2Poly::X_PLUS_1]);
        assert_eq!(
            irreducible_polys(2),
            vec![GF2Poly::X_PLUS_1, GF2Poly(0b111)]
        );
        let deg5: Vec<_> = irreducible_polys(5)
            .into_iter()
            .filter(|f| f.degree() == 5)
            .collect();
        assert_eq!(deg5.len(), 6);
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_classes(1).len(), 1);
        assert_eq!(enumerate_classes(2).len(), 3);
        assert_eq!(enumerate_classes(3).len(), 6);
        assert_eq!(enumerate_classes(4).len(), 14);
        assert_eq!(enumerate_classes(5).len(), 27);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1), BigInt::one());
        assert_eq!(gl_order(2), BigInt::from(6));
        assert_eq!(gl_order(3), BigInt::from(168));
        assert_eq!(gl_order(4), BigInt::from(20160));
        assert_eq!(gl_order(5), BigInt::from(9999360));
    }

    #[test]
    fn centralizer_order_examples() {
        let x1 = GF2Poly::X_PLUS_1;
        // I_3
        let identity3 = EDProfile::new(vec![DivisorEntry {
            poly: x1,
            power: 1,
            mult: 3,
        }]);
        assert_eq!(centralizer_order(&identity3), BigInt::from(168));
        // x+1, (x+1)^2
        let a2 = EDProfile::new(vec![
            DivisorEntry { poly: x1, power: 1, mult: 1 },
            DivisorEntry { poly: x1, power: 2, mult: 1 },
        ]);
        assert_eq!(centralizer_order(&a2), BigInt::from(8));
        // (x^2+x+1)^2 in GL(4,2)
        let a11 = EDProfile::new(vec![DivisorEntry {
            poly: GF2Poly(0b111),
            power: 2,
            mult: 1,
        }]);
        assert_eq!(centralizer_order(&a11), BigInt::from(12));
    }

    #[test]
    fn class_equation() {
        for k in 1..=5usize {
            let g = gl_order(k);
            let mut total = BigInt::zero();
            for class in enumerate_classes(k) {
                let size = &g / &class.cent_order;
                assert_eq!(&size * &class.cent_order, g, "cent divides |GL|");
                total += size;
            }
            assert_eq!(total, g, "class equation at k = {k}");
        }
    }

    #[test]
    fn brute_centralizer_examples() {
        assert_eq!(
            brute_centralizer_order(&GF2Matrix::identity(2)).unwrap(),
            BigInt::from(6)
        );
        // Table 1 A_4 = [1] + companion(x^2+x+1): centralizer order 3
        let a4 = GF2Matrix::from_rows(&[&[1]]).direct_sum(&GF2Poly(0b111).companion());
        assert_eq!(brute_centralizer_order(&a4).unwrap(), BigInt::from(3));
        // Table 2 A_9 = two copies of companion(x^2+x+1): order 180
        let c = GF2Poly(0b111).companion();
        let a9 = c.direct_sum(&c);
        assert_eq!(brute_centralizer_order(&a9).unwrap(), BigInt::from(180));
        assert!(brute_centralizer_order(&GF2Matrix::identity(5)).is_err());
    }

    #[test]
    fn centralizer_formula_matches_brute_force() {
        for k in 1..=3usize {
            for class in enumerate_classes(k) {
                assert_eq!(
                    brute_centralizer_order(&class.rep).unwrap(),
                    class.cent_order,
                    "class {}",
                    class.label
                );
            }
        }
    }

    #[test]
    fn representatives_are_invertible_with_consistent_order() {
        for k in 1..=5usize {
            for class in enumerate_classes(k) {
                assert_eq!(class.rep.rows(), k);
                assert_eq!(class.rep.rank(), k);
                assert_eq!(class.rep.multiplicative_order().unwrap(), class.t);
            }
        }
    }

    #[test]
    fn labels_are_stable() {
        let classes = enumerate_classes(4);
        assert!(classes
            .iter()
            .any(|c| c.label == "k4:(x+1)^2,(x^2+x+1)^1"));
        let labels: std::collections::BTreeSet<_> =
            classes.iter().map(|c| c.label.clone()).collect();
        assert_eq!(labels.len(), classes.len(), "labels are unique");
    }
}
