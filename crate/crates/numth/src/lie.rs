//! Closed-form orders of the finite simple groups that appear in the
//! classification tables, as exact integers and as factorizations.

use num_bigint::BigUint;
use num_traits::One;

use crate::factor::{factorize, is_prime_power, Factorization, NumthError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LieFamily {
    Alternating(u32),
    Symmetric(u32),
    /// PSL_n(q)
    Linear(u32),
    /// PSU_n(q)
    Unitary(u32),
    /// PSp_n(q), n even
    Symplectic(u32),
    /// Omega_n(q), n odd
    OrthogonalOdd(u32),
    /// POmega^+_n(q), n even
    OrthogonalPlus(u32),
    /// POmega^-_n(q), n even
    OrthogonalMinus(u32),
    G2,
    TwoG2,
    TwoB2,
    ThreeD4,
    F4,
    TwoF4,
    /// The Tits group, index 2 in 2F4(2).
    TwoF4Derived,
    E6,
    TwoE6,
    E7,
    E8,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Building blocks: a power of q and a list of (exponent, sign) terms
/// q^i - 1 or q^i + 1, divided by a constant.
struct OrderShape {
    q_exponent: u32,
    terms: Vec<(u32, i8)>,
    divisor: u64,
}

fn shape(family: LieFamily, q: u64) -> Result<OrderShape, NumthError> {
    use LieFamily::*;
    let (p, f) = match family {
        Alternating(_) | Symmetric(_) => (0, 0),
        _ => is_prime_power(q).ok_or(NumthError::NotPrimePower(q))?,
    };
    let _ = f;
    let shape = match family {
        Alternating(_) | Symmetric(_) => unreachable!("factorial orders handled separately"),
        Linear(n) => {
            assert!(n >= 2);
            OrderShape {
                q_exponent: n * (n - 1) / 2,
                terms: (2..=n).map(|i| (i, -1)).collect(),
                divisor: gcd(n as u64, q - 1),
            }
        }
        Unitary(n) => {
            assert!(n >= 3);
            OrderShape {
                q_exponent: n * (n - 1) / 2,
                terms: (2..=n).map(|i| (i, if i % 2 == 0 { -1 } else { 1 })).collect(),
                divisor: gcd(n as u64, q + 1),
            }
        }
        Symplectic(n) | OrthogonalOdd(n) => {
            let m = if matches!(family, Symplectic(_)) {
                assert!(n % 2 == 0 && n >= 4);
                n / 2
            } else {
                assert!(n % 2 == 1 && n >= 5);
                (n - 1) / 2
            };
            OrderShape {
                q_exponent: m * m,
                terms: (1..=m).map(|i| (2 * i, -1)).collect(),
                divisor: gcd(2, q - 1),
            }
        }
        OrthogonalPlus(n) => {
            assert!(n % 2 == 0 && n >= 8);
            let m = n / 2;
            let mut terms: Vec<(u32, i8)> = (1..m).map(|i| (2 * i, -1)).collect();
            terms.push((m, -1));
            OrderShape {
                q_exponent: m * (m - 1),
                terms,
                divisor: gcd(4, q.pow(m) - 1),
            }
        }
        OrthogonalMinus(n) => {
            assert!(n % 2 == 0 && n >= 8);
            let m = n / 2;
            let mut terms: Vec<(u32, i8)> = (1..m).map(|i| (2 * i, -1)).collect();
            terms.push((m, 1));
            OrderShape {
                q_exponent: m * (m - 1),
                terms,
                divisor: gcd(4, q.pow(m) + 1),
            }
        }
        G2 => OrderShape { q_exponent: 6, terms: vec![(6, -1), (2, -1)], divisor: 1 },
        TwoG2 => {
            assert!(p == 3 && is_odd_power(q, 3) && q >= 27, "2G2(q) needs q = 3^(2a+1), q >= 27");
            OrderShape { q_exponent: 3, terms: vec![(3, 1), (1, -1)], divisor: 1 }
        }
        TwoB2 => {
            assert!(p == 2 && is_odd_power(q, 2) && q >= 8, "2B2(q) needs q = 2^(2a+1), q >= 8");
            OrderShape { q_exponent: 2, terms: vec![(2, 1), (1, -1)], divisor: 1 }
        }
        ThreeD4 => OrderShape {
            // q^12 (q^6-1)^2 (q^4-q^2+1), with the last factor written as
            // (q^12+q^6... ) via cyclotomic terms: (q^4-q^2+1) = Phi_12(q)
            q_exponent: 12,
            terms: vec![(6, -1), (6, -1)],
            divisor: 1,
        },
        F4 => OrderShape {
            q_exponent: 24,
            terms: vec![(2, -1), (6, -1), (8, -1), (12, -1)],
            divisor: 1,
        },
        TwoF4 => {
            assert!(p == 2 && is_odd_power(q, 2), "2F4(q) needs q = 2^(2a+1)");
            OrderShape {
                q_exponent: 12,
                terms: vec![(6, 1), (4, -1), (3, 1), (1, -1)],
                divisor: 1,
            }
        }
        TwoF4Derived => {
            assert!(q == 2, "the Tits group is 2F4(2)'");
            OrderShape {
                q_exponent: 12,
                terms: vec![(6, 1), (4, -1), (3, 1), (1, -1)],
                divisor: 2,
            }
        }
        E6 => OrderShape {
            q_exponent: 36,
            terms: [2u32, 5, 6, 8, 9, 12].iter().map(|&i| (i, -1)).collect(),
            divisor: gcd(3, q - 1),
        },
        TwoE6 => OrderShape {
            q_exponent: 36,
            terms: vec![(2, -1), (5, 1), (6, -1), (8, -1), (9, 1), (12, -1)],
            divisor: gcd(3, q + 1),
        },
        E7 => OrderShape {
            q_exponent: 63,
            terms: [2u32, 6, 8, 10, 12, 14, 18].iter().map(|&i| (i, -1)).collect(),
            divisor: gcd(2, q - 1),
        },
        E8 => OrderShape {
            q_exponent: 120,
            terms: [2u32, 8, 12, 14, 18, 20, 24, 30].iter().map(|&i| (i, -1)).collect(),
            divisor: 1,
        },
    };
    Ok(shape)
}

fn is_odd_power(q: u64, p: u64) -> bool {
    match is_prime_power(q) {
        Some((base, e)) => base == p && e % 2 == 1,
        None => false,
    }
}

/// Exact order of the socle.
pub fn lie_order(family: LieFamily, q: u64) -> Result<BigUint, NumthError> {
    match family {
        LieFamily::Alternating(n) => Ok(factorial(n) / BigUint::from(2u32)),
        LieFamily::Symmetric(n) => Ok(factorial(n)),
        LieFamily::ThreeD4 => {
            let s = shape(family, q)?;
            let mut v = big_term_product(q, &s);
            // extra Phi_12 factor
            let q2 = BigUint::from(q) * BigUint::from(q);
            v *= &q2 * &q2 - &q2 + BigUint::one();
            Ok(v)
        }
        _ => {
            let s = shape(family, q)?;
            Ok(big_term_product(q, &s))
        }
    }
}

fn big_term_product(q: u64, s: &OrderShape) -> BigUint {
    let mut v = BigUint::from(q).pow(s.q_exponent);
    for &(i, sign) in &s.terms {
        let t = BigUint::from(q).pow(i);
        v *= if sign < 0 { t - BigUint::one() } else { t + BigUint::one() };
    }
    v / BigUint::from(s.divisor)
}

fn factorial(n: u32) -> BigUint {
    let mut v = BigUint::one();
    for k in 2..=n as u64 {
        v *= BigUint::from(k);
    }
    v
}

/// Factored order of the socle. Fails with `TooLarge` when some cyclotomic
/// term exceeds the 64-bit factorization ceiling.
pub fn lie_order_factored(family: LieFamily, q: u64) -> Result<Factorization, NumthError> {
    match family {
        LieFamily::Alternating(n) => {
            let mut f = factorial_factored(n);
            divide_out(&mut f, 2, 1);
            Ok(f)
        }
        LieFamily::Symmetric(n) => Ok(factorial_factored(n)),
        _ => {
            let s = shape(family, q)?;
            let (p, e) = is_prime_power(q).unwrap();
            let mut f = Factorization::one();
            f.insert(p, e * s.q_exponent);
            for &(i, sign) in &s.terms {
                let t = q
                    .checked_pow(i)
                    .and_then(|v| if sign < 0 { v.checked_sub(1) } else { v.checked_add(1) })
                    .ok_or(NumthError::TooLarge)?;
                f.mul(&factorize(t)?);
            }
            if matches!(family, LieFamily::ThreeD4) {
                let q2 = q.checked_pow(2).ok_or(NumthError::TooLarge)?;
                let phi12 = q2
                    .checked_mul(q2)
                    .and_then(|v| v.checked_sub(q2))
                    .and_then(|v| v.checked_add(1))
                    .ok_or(NumthError::TooLarge)?;
                f.mul(&factorize(phi12)?);
            }
            for (p, e) in factorize(s.divisor)?.iter() {
                divide_out(&mut f, p, e);
            }
            Ok(f)
        }
    }
}

fn divide_out(f: &mut Factorization, p: u64, e: u32) {
    let cur = f.exponent(p);
    assert!(cur >= e, "division does not stay integral");
    let mut m: std::collections::BTreeMap<u64, u32> =
        f.iter().filter(|&(q, _)| q != p).collect();
    if cur > e {
        m.insert(p, cur - e);
    }
    *f = Factorization::from_map(m);
}

fn factorial_factored(n: u32) -> Factorization {
    let mut f = Factorization::one();
    for k in 2..=n as u64 {
        f.mul(&factorize(k).unwrap());
    }
    f
}
