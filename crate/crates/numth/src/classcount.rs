//! Class-count arithmetic for the exceptional socles that are out of
//! construction range: lower bounds on the number of conjugacy classes of
//! elements of the relevant prime order, as pure formulas in q.

use crate::factor::{is_prime, is_prime_power, NumthError};
use crate::ppd::ppd_set;

/// Number of classes of elements of order r = q^4 - q^2 + 1 in the triality
/// D4 socle, valid when r is prime.
pub fn d4_class_count(q: u64) -> Result<u64, NumthError> {
    let r = q * q * q * q - q * q + 1;
    if !is_prime(r) {
        return Err(NumthError::BadShape(q));
    }
    Ok((q * q * q * q - q * q) / 4)
}

/// Same count for the F4 socle.
pub fn f4_class_count(q: u64) -> Result<u64, NumthError> {
    let r = q * q * q * q - q * q + 1;
    if !is_prime(r) {
        return Err(NumthError::BadShape(q));
    }
    Ok((q * q * q * q - q * q) / 12)
}

/// Lower bound on the number of classes of derangements of order r in the
/// full automorphism extension: socle count divided by the outer order 3f.
pub fn d4_extension_bound(q: u64) -> Result<u64, NumthError> {
    let (_, f) = is_prime_power(q).ok_or(NumthError::NotPrimePower(q))?;
    Ok(d4_class_count(q)? / (3 * f as u64))
}

pub fn f4_extension_bound(q: u64) -> Result<u64, NumthError> {
    let (_, f) = is_prime_power(q).ok_or(NumthError::NotPrimePower(q))?;
    Ok(f4_class_count(q)? / f as u64)
}

/// The G2 lower bound: with s_i the unique ppd of q^i - 1 (i in {3, 6}),
/// the socle holds at least (s_i - 1)/6 classes of elements of order s_i.
pub fn g2_socle_class_bound(q: u64, i: u32) -> Result<u64, NumthError> {
    assert!(i == 3 || i == 6);
    let s = ppd_set(q, i)?.unique().ok_or(NumthError::BadShape(q))?;
    Ok((s - 1) / 6)
}

/// beta: the induced lower bound on classes in any extension of G2(q),
/// i*d_i/12 in characteristic 3 and i*d_i/6 otherwise, where
/// s_i = i*f*d_i + 1.
pub fn g2_beta(q: u64, i: u32) -> Result<u64, NumthError> {
    assert!(i == 3 || i == 6);
    let (p, f) = is_prime_power(q).ok_or(NumthError::NotPrimePower(q))?;
    let s = ppd_set(q, i)?.unique().ok_or(NumthError::BadShape(q))?;
    let nf = i as u64 * f as u64;
    assert_eq!((s - 1) % nf, 0);
    let d = (s - 1) / nf;
    Ok(if p == 3 { i as u64 * d / 12 } else { i as u64 * d / 6 })
}

/// Scan q >= 7 and verify that beta >= 2 except exactly at (q, i) = (8, 6)
/// and (19, 6). Returns the checked (q, i, beta) triples.
pub fn g2_beta_scan(q_max: u64) -> Result<Vec<(u64, u32, u64)>, NumthError> {
    let mut out = vec![];
    for q in 7..=q_max {
        if is_prime_power(q).is_none() {
            continue;
        }
        for i in [3u32, 6] {
            if ppd_set(q, i)?.unique().is_none() {
                continue;
            }
            let beta = g2_beta(q, i)?;
            let exceptional = (q, i) == (8, 6) || (q, i) == (19, 6);
            if (beta >= 2) == exceptional {
                return Err(NumthError::BadShape(q));
            }
            out.push((q, i, beta));
        }
    }
    Ok(out)
}

/// Scan q >= 3 with q^4 - q^2 + 1 prime and verify the extension bounds
/// stay at least 2.
pub fn d4f4_threshold_scan(q_max: u64) -> Result<Vec<(u64, u64, u64)>, NumthError> {
    let mut out = vec![];
    for q in 3..=q_max {
        if is_prime_power(q).is_none() || !is_prime(q * q * q * q - q * q + 1) {
            continue;
        }
        let d4 = d4_extension_bound(q)?;
        let f4 = f4_extension_bound(q)?;
        if d4 < 2 || f4 < 2 {
            return Err(NumthError::BadShape(q));
        }
        out.push((q, d4, f4));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_count_q2() {
        assert_eq!(d4_class_count(2).unwrap(), 3);
    }

    #[test]
    fn f4_threshold_q3() {
        assert_eq!(f4_class_count(3).unwrap(), 6);
        assert_eq!(f4_extension_bound(3).unwrap(), 6);
    }

    #[test]
    fn g2_beta_exceptions() {
        // q = 8: s_6 = 19 = 6*3*1 + 1, so beta = 6*1/6 = 1
        assert_eq!(g2_beta(8, 6).unwrap(), 1);
        // q = 19: s_6 = 343? no - unique ppd of 19^6 - 1
        assert_eq!(g2_beta(19, 6).unwrap(), 1);
        // q = 7: s_6 = 43 = 6*7 + 1, beta = 7
        assert_eq!(g2_beta(7, 6).unwrap(), 7);
        assert_eq!(g2_socle_class_bound(7, 6).unwrap(), 7);
    }

    #[test]
    fn scans_pass() {
        let checked = g2_beta_scan(200).unwrap();
        assert!(checked.iter().any(|&(q, i, _)| (q, i) == (8, 6)));
        assert!(checked.iter().any(|&(q, i, _)| (q, i) == (19, 6)));
        let checked = d4f4_threshold_scan(50).unwrap();
        assert!(checked.iter().any(|&(q, _, _)| q == 3));
        assert!(checked.iter().any(|&(q, _, _)| q == 9));
    }
}
