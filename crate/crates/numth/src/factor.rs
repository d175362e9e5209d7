//! Exact integer factorization below 2^64 and the prime-divisor counting
//! functions pi, omega and alpha.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumthError {
    #[error("cannot factorize 0")]
    Zero,
    #[error("value exceeds the 64-bit factorization ceiling")]
    TooLarge,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} does not satisfy the required shape conditions")]
    BadShape(u64),
}

/// Prime factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    exponents: BTreeMap<u64, u32>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_map(exponents: BTreeMap<u64, u32>) -> Self {
        Self { exponents }
    }

    pub fn insert(&mut self, prime: u64, exp: u32) {
        if exp > 0 {
            *self.exponents.entry(prime).or_insert(0) += exp;
        }
    }

    /// Multiply by another factored value.
    pub fn mul(&mut self, other: &Factorization) {
        for (&p, &e) in &other.exponents {
            self.insert(p, e);
        }
    }

    pub fn exponent(&self, prime: u64) -> u32 {
        self.exponents.get(&prime).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.exponents.iter().map(|(&p, &e)| (p, e))
    }

    /// alpha(n): the set of distinct prime divisors.
    pub fn alpha(&self) -> Vec<u64> {
        self.exponents.keys().copied().collect()
    }

    /// pi(n): number of distinct prime divisors.
    pub fn pi(&self) -> usize {
        self.exponents.len()
    }

    /// omega(n): number of prime divisors counted with multiplicity.
    pub fn omega(&self) -> u32 {
        self.exponents.values().sum()
    }

    /// Largest prime divisor, if any.
    pub fn max_prime(&self) -> Option<u64> {
        self.exponents.keys().next_back().copied()
    }

    pub fn value(&self) -> BigUint {
        let mut v = BigUint::one();
        for (&p, &e) in &self.exponents {
            v *= BigUint::from(p).pow(e);
        }
        v
    }

    /// Product of the distinct prime divisors.
    pub fn radical(&self) -> BigUint {
        let mut v = BigUint::one();
        for &p in self.exponents.keys() {
            v *= BigUint::from(p);
        }
        v
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This witness set is exact below 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64, seed: u64) -> u64 {
    // Brent's cycle-finding variant; n must be odd composite.
    let c = seed;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut x = 2u64;
    let mut y = 2u64;
    let mut d = 1u64;
    let mut count = 0u64;
    while d == 1 {
        x = f(x);
        y = f(f(y));
        d = gcd(x.abs_diff(y), n);
        count += 1;
        if count > 1 << 24 {
            return n; // give up with this constant
        }
    }
    d
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn factor_into(n: u64, out: &mut Factorization) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.insert(n, 1);
        return;
    }
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m % p == 0 {
            out.insert(p, 1);
            m /= p;
        }
    }
    if m == 1 {
        return;
    }
    if is_prime(m) {
        out.insert(m, 1);
        return;
    }
    // Small trial division already ran, so m is an odd composite.
    let mut d = m;
    for seed in 1.. {
        d = pollard_rho(m, seed);
        if d != m && d != 1 {
            break;
        }
    }
    factor_into(d, out);
    factor_into(m / d, out);
}

/// Exact factorization of `n >= 1`.
pub fn factorize(n: u64) -> Result<Factorization, NumthError> {
    if n == 0 {
        return Err(NumthError::Zero);
    }
    let mut f = Factorization::default();
    factor_into(n, &mut f);
    Ok(f)
}

/// Factorization of a big integer, refusing anything whose unfactored part
/// exceeds the 64-bit ceiling.
pub fn factorize_big(n: &BigUint) -> Result<Factorization, NumthError> {
    match u64::try_from(n) {
        Ok(v) => factorize(v),
        Err(_) => Err(NumthError::TooLarge),
    }
}

/// alpha(n) as a sorted set of primes.
pub fn alpha(n: u64) -> Result<Vec<u64>, NumthError> {
    Ok(factorize(n)?.alpha())
}

/// alpha(n) as a set, for difference computations.
pub fn alpha_set(n: u64) -> Result<std::collections::BTreeSet<u64>, NumthError> {
    Ok(factorize(n)?.primes().collect())
}

pub fn pi_count(n: u64) -> Result<usize, NumthError> {
    Ok(factorize(n)?.pi())
}

pub fn omega_count(n: u64) -> Result<u32, NumthError> {
    Ok(factorize(n)?.omega())
}

/// If `n = p^k` for a prime `p` and `k >= 1`, return `(p, k)`.
pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n).ok()?;
    let mut it = f.iter();
    match (it.next(), it.next()) {
        (Some((p, e)), None) => Some((p, e)),
        _ => None,
    }
}

/// Number of solutions of `kx = n (mod m)`: gcd(k, m) when it divides n,
/// otherwise zero.
pub fn linear_congruence_count(k: i64, n: i64, m: i64) -> u64 {
    assert!(k != 0 && m != 0, "k and m must be nonzero");
    let m = m.unsigned_abs();
    let d = gcd(k.unsigned_abs() % m, m);
    let d = if d == 0 { m } else { d };
    if n.rem_euclid(m as i64) as u64 % d == 0 {
        d
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_60() {
        let f = factorize(60).unwrap();
        assert_eq!(f.iter().collect::<Vec<_>>(), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(f.pi(), 3);
        assert_eq!(f.omega(), 4);
    }

    #[test]
    fn pi_omega_63_126() {
        assert_eq!(pi_count(63).unwrap(), 2);
        assert_eq!(omega_count(63).unwrap(), 3);
        // used by the depth formula at p = 127, k = 2
        assert_eq!(omega_count(126).unwrap() as i64 - pi_count(126).unwrap() as i64, 1);
    }

    #[test]
    fn factorize_zero_rejected() {
        assert_eq!(factorize(0), Err(NumthError::Zero));
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(2));
        assert!(is_prime(7919));
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(6481 * 6481));
        assert!(is_prime(6481)); // 9^4 - 9^2 + 1
    }

    #[test]
    fn factors_large_semiprime() {
        let n = 1_000_003u64 * 998_117;
        let f = factorize(n).unwrap();
        assert_eq!(f.iter().collect::<Vec<_>>(), vec![(998_117, 1), (1_000_003, 1)]);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(is_prime_power(49), Some((7, 2)));
        assert_eq!(is_prime_power(1024), Some((2, 10)));
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(1), None);
    }

    #[test]
    fn linear_congruences() {
        assert_eq!(linear_congruence_count(2, 4, 6), 2);
        assert_eq!(linear_congruence_count(2, 3, 6), 0);
        assert_eq!(linear_congruence_count(3, 0, 9), 3);
    }

    proptest! {
        #[test]
        fn product_reconstructs(n in 1u64..1_000_000_000) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.value(), BigUint::from(n));
            prop_assert!(f.pi() as u32 <= f.omega());
        }
    }
}
