//! Primitive prime divisors of q^n - 1.
//!
//! A prime r is a primitive prime divisor (ppd) for (q, n) if r divides
//! q^n - 1 but no q^i - 1 with i < n. Zsigmondy's theorem pins down exactly
//! when no such prime exists.

use num_bigint::BigUint;
use num_traits::One;

use crate::factor::{factorize, factorize_big, is_prime_power, NumthError};

/// Outcome of a ppd computation. The emptiness test is always exact; listing
/// the full set requires factoring the cyclotomic value, which can exceed the
/// 64-bit ceiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PpdStatus {
    /// The set was computed completely.
    Complete(Vec<u64>),
    /// Nonempty, but the cyclotomic cofactor could not be fully factored.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PpdReport {
    pub q: u64,
    pub n: u32,
    pub status: PpdStatus,
    /// True exactly in the Zsigmondy exceptional cases (set empty).
    pub is_exceptional: bool,
    /// When the set is a single prime r, its decomposition r = n*d + 1.
    pub unique_decomposition: Option<(u64, u64)>,
}

impl PpdReport {
    pub fn set(&self) -> Option<&[u64]> {
        match &self.status {
            PpdStatus::Complete(s) => Some(s),
            PpdStatus::Unresolved => None,
        }
    }

    pub fn unique(&self) -> Option<u64> {
        match self.set() {
            Some([r]) => Some(*r),
            _ => None,
        }
    }
}

/// Value of the n-th cyclotomic polynomial at q, computed by exact division
/// of q^n - 1 by the lower cyclotomic values.
pub fn cyclotomic_value(q: u64, n: u32) -> BigUint {
    let mut value = BigUint::from(q).pow(n) - BigUint::one();
    for d in 1..n {
        if n % d == 0 {
            value /= cyclotomic_value(q, d);
        }
    }
    value
}

/// Multiplicative order of q modulo the prime r (requires r not dividing q).
pub fn order_mod(q: u64, r: u64) -> u64 {
    assert!(r > 1 && q % r != 0);
    let q = q % r;
    let mut x = q;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * q as u128) % r as u128) as u64;
        k += 1;
    }
    k
}

/// The set of primitive prime divisors of q^n - 1.
///
/// For n >= 3 the primitive primes are exactly the prime divisors of the
/// n-th cyclotomic value, except that the largest prime divisor of n may
/// also appear (non-primitively, to the first power). Stripping it keeps the
/// emptiness test exact even when the cofactor is out of factoring reach.
pub fn ppd_set(q: u64, n: u32) -> Result<PpdReport, NumthError> {
    if is_prime_power(q).is_none() {
        return Err(NumthError::NotPrimePower(q));
    }
    assert!(n >= 1);
    if n == 1 {
        return finish(q, n, Some(factorize(q - 1)?.alpha()));
    }
    if n == 2 {
        // An odd prime dividing q+1 cannot divide q-1, and 2 divides q-1
        // whenever q is odd, so the primitive primes are the odd divisors.
        let set = factorize(q + 1)?.primes().filter(|&r| r != 2).collect();
        return finish(q, n, Some(set));
    }

    let mut cofactor = cyclotomic_value(q, n);
    let ell = factorize(n as u64)?.max_prime().unwrap();
    let mut stripped = false;
    if q % ell != 0
        && (&cofactor % BigUint::from(ell)) == BigUint::ZERO
        && order_mod(q, ell) != n as u64
    {
        cofactor /= BigUint::from(ell);
        stripped = true;
    }
    // A non-primitive prime divides the cyclotomic value exactly once.
    assert!(
        !stripped || (&cofactor % BigUint::from(ell)) != BigUint::ZERO,
        "repeated non-primitive factor {ell} in cyclotomic value of ({q},{n})"
    );

    if cofactor.is_one() {
        return finish(q, n, Some(vec![]));
    }
    match factorize_big(&cofactor) {
        Ok(f) => {
            let set: Vec<u64> = f.alpha();
            for &r in &set {
                debug_assert_eq!(order_mod(q, r), n as u64, "q={q} n={n} r={r}");
            }
            finish(q, n, Some(set))
        }
        Err(NumthError::TooLarge) => finish(q, n, None),
        Err(e) => Err(e),
    }
}

fn finish(q: u64, n: u32, set: Option<Vec<u64>>) -> Result<PpdReport, NumthError> {
    let (status, is_exceptional, unique) = match set {
        Some(s) => {
            let exceptional = s.is_empty();
            let unique = match s.as_slice() {
                [r] => Some((*r, (r - 1) / n as u64)),
                _ => None,
            };
            (PpdStatus::Complete(s), exceptional, unique)
        }
        None => (PpdStatus::Unresolved, false, None),
    };
    Ok(PpdReport {
        q,
        n,
        status,
        is_exceptional,
        unique_decomposition: unique,
    })
}

/// The closed classification of Zsigmondy exceptions: (n,q) = (1,2), (6,2),
/// or n = 2 with q a Mersenne prime.
pub fn zsigmondy_exception_expected(q: u64, n: u32) -> bool {
    (n, q) == (1, 2)
        || (n, q) == (6, 2)
        || (n == 2 && crate::dioph::is_mersenne_prime(q).is_some())
}

/// For an odd ppd r of q^n - 1: r divides q^m - 1 iff n divides m.
/// Cross-checked against direct divisibility.
pub fn ppd_divisibility(r: u64, q: u64, n: u32, m: u32) -> Result<bool, NumthError> {
    let report = ppd_set(q, n)?;
    let member = report.set().map(|s| s.contains(&r)).unwrap_or(false);
    if !member || r == 2 {
        return Err(NumthError::BadShape(r));
    }
    let by_order = m % n == 0;
    let direct = (BigUint::from(q).pow(m) - BigUint::one()) % BigUint::from(r) == BigUint::ZERO;
    assert_eq!(by_order, direct, "order criterion disagrees with divisibility");
    Ok(by_order)
}

/// Decomposition classes of a unique ppd r = d*n*f + 1 with n in {3, 6} and
/// q = p^f. Outside the listed d values, r >= 8nf + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ppd2a3Case {
    /// r >= 8nf + 1.
    Large,
    /// r = d*n*f + 1 with d in {1, 2, 4, 6, 7}.
    Small { d: u64 },
}

/// Classify the unique primitive prime divisor of q^n - 1 for n in {3, 6}.
pub fn ppd2a3_classify(q: u64, n: u32) -> Result<Ppd2a3Case, NumthError> {
    assert!(n == 3 || n == 6);
    let report = ppd_set(q, n)?;
    let r = report.unique().ok_or(NumthError::BadShape(q))?;
    let (_, f) = is_prime_power(q).ok_or(NumthError::NotPrimePower(q))?;
    let nf = n as u64 * f as u64;
    if r >= 8 * nf + 1 {
        return Ok(Ppd2a3Case::Large);
    }
    assert_eq!((r - 1) % nf, 0, "unique ppd must be 1 mod nf");
    let d = (r - 1) / nf;
    match d {
        1 | 2 | 4 | 6 | 7 => Ok(Ppd2a3Case::Small { d }),
        _ => Err(NumthError::BadShape(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceptional_cases() {
        let r = ppd_set(2, 6).unwrap();
        assert!(r.is_exceptional);
        assert_eq!(r.set(), Some(&[][..]));
        let r = ppd_set(3, 2).unwrap();
        assert!(r.is_exceptional, "q=3 Mersenne, n=2");
        let r = ppd_set(2, 1).unwrap();
        assert!(r.is_exceptional);
        assert!(ppd_set(6, 2).is_err(), "q must be a prime power");
    }

    #[test]
    fn small_sets() {
        assert_eq!(ppd_set(2, 4).unwrap().set(), Some(&[5u64][..]));
        assert_eq!(ppd_set(4, 3).unwrap().set(), Some(&[7u64][..]));
        assert_eq!(ppd_set(2, 3).unwrap().set(), Some(&[7u64][..]));
        // 8^6 - 1 = 3^3 * 7 * 19 * 73; only 19 has order 6 mod 8
        assert_eq!(ppd_set(8, 6).unwrap().set(), Some(&[19u64][..]));
        assert_eq!(ppd_set(8, 3).unwrap().set(), Some(&[73u64][..]));
    }

    #[test]
    fn unique_decomposition_r_eq_nd_plus_1() {
        let r = ppd_set(2, 4).unwrap();
        assert_eq!(r.unique_decomposition, Some((5, 1)));
    }

    #[test]
    fn odd_members_are_1_mod_n() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 19] {
            for n in 1..=12u32 {
                if let Some(set) = ppd_set(q, n).unwrap().set() {
                    for &r in set {
                        if r != 2 {
                            assert_eq!((r - 1) % n as u64, 0, "r={r} q={q} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn divisibility_lemma() {
        assert!(ppd_divisibility(7, 2, 3, 6).unwrap());
        assert!(!ppd_divisibility(7, 2, 3, 4).unwrap());
        assert!(ppd_divisibility(5, 2, 4, 4).unwrap());
        assert!(ppd_divisibility(5, 2, 3, 6).is_err(), "5 is not a ppd for (2,3)");
    }

    #[test]
    fn classify_small_decompositions() {
        assert_eq!(ppd2a3_classify(4, 3).unwrap(), Ppd2a3Case::Small { d: 1 });
        assert_eq!(ppd2a3_classify(2, 3).unwrap(), Ppd2a3Case::Small { d: 2 });
        assert_eq!(ppd2a3_classify(7, 6).unwrap(), Ppd2a3Case::Small { d: 7 });
        assert_eq!(ppd2a3_classify(3, 3).unwrap(), Ppd2a3Case::Small { d: 4 });
        assert!(ppd2a3_classify(2, 6).is_err(), "empty set has no unique ppd");
    }

    #[test]
    fn zsigmondy_against_direct_scan_small() {
        // Exhaustive definitional check in a range where q^n - 1 fits u64.
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for n in 1..=10u32 {
                let set = ppd_set(q, n).unwrap();
                let qn = (q as u128).pow(n) - 1;
                let mut direct = vec![];
                for r in factorize(qn as u64).unwrap().primes() {
                    if (1..n).all(|i| ((q as u128).pow(i) - 1) % r as u128 != 0) {
                        direct.push(r);
                    }
                }
                assert_eq!(set.set().unwrap(), &direct[..], "q={q} n={n}");
                assert_eq!(set.is_exceptional, zsigmondy_exception_expected(q, n));
            }
        }
    }
}
