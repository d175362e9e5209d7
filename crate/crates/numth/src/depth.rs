//! Almost elusive depth: closed formulas per family, checked against a
//! divisor-chain oracle.
//!
//! The oracle works on the poset of divisors d of N that keep the full
//! radical (alpha(d) = alpha(N)): the depth equals the longest strictly
//! descending chain from N down to the radical, plus one.

use crate::dioph::{is_fermat_prime, is_mersenne_prime};
use crate::factor::{factorize, is_prime, Factorization, NumthError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthCase {
    /// PSL2(p) or PGL2(p), p = 2^m - 1 Mersenne; N = k(p-1)/2.
    MersenneL2 { k: u64 },
    /// PSL2(p), p = 2*3^a - 1, a >= 2; N = (p-1)/2.
    TwoThreePowerL2,
    /// PGL2(p), p = 2^m + 1 Fermat; N = p + 1.
    FermatPgl2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthReport {
    pub case: DepthCase,
    pub p: u64,
    pub n_value: u64,
    pub formula: u32,
    pub oracle: u32,
}

impl DepthReport {
    pub fn agrees(&self) -> bool {
        self.formula == self.oracle
    }
}

/// Longest chain of divisors of N with full radical, descending from N to
/// the radical, plus 1. Computed by explicit search over the divisor poset.
pub fn divisor_chain_oracle(n: u64) -> Result<u32, NumthError> {
    let f = factorize(n)?;
    // Chain steps strip one prime at a time while every prime keeps
    // exponent >= 1; search over exponent vectors.
    fn longest(exps: &mut Vec<u32>) -> u32 {
        let mut best = 0;
        for i in 0..exps.len() {
            if exps[i] > 1 {
                exps[i] -= 1;
                best = best.max(1 + longest(exps));
                exps[i] += 1;
            }
        }
        best
    }
    let mut exps: Vec<u32> = f.iter().map(|(_, e)| e).collect();
    Ok(longest(&mut exps) + 1)
}

fn omega_minus_pi_plus_1(n: u64) -> Result<u32, NumthError> {
    let f: Factorization = factorize(n)?;
    Ok(f.omega() - f.pi() as u32 + 1)
}

/// Closed depth formula for the infinite families, with the shape of p
/// validated. `k` is the index of the socle (1 or 2) in the Mersenne case.
pub fn depth_formula(case: DepthCase, p: u64) -> Result<DepthReport, NumthError> {
    let n_value = match case {
        DepthCase::MersenneL2 { k } => {
            is_mersenne_prime(p).ok_or(NumthError::BadShape(p))?;
            assert!(k == 1 || k == 2);
            k * (p - 1) / 2
        }
        DepthCase::TwoThreePowerL2 => {
            if !is_prime(p) {
                return Err(NumthError::BadShape(p));
            }
            let f = factorize((p + 1) / 2)?;
            let is_3_power = f.pi() == 1 && f.max_prime() == Some(3) && f.exponent(3) >= 2;
            if (p + 1) % 2 != 0 || !is_3_power {
                return Err(NumthError::BadShape(p));
            }
            (p - 1) / 2
        }
        DepthCase::FermatPgl2 => {
            is_fermat_prime(p).ok_or(NumthError::BadShape(p))?;
            p + 1
        }
    };
    let formula = omega_minus_pi_plus_1(n_value)?;
    let oracle = divisor_chain_oracle(n_value)?;
    Ok(DepthReport { case, p, n_value, formula, oracle })
}

/// All primes below the bound fitting the case's shape.
pub fn valid_primes_below(case: DepthCase, bound: u64) -> Vec<u64> {
    match case {
        DepthCase::MersenneL2 { .. } => {
            let mut out = vec![];
            let mut m = 2;
            while (1u64 << m) - 1 < bound {
                let p = (1u64 << m) - 1;
                if is_mersenne_prime(p).is_some() && p >= 7 {
                    out.push(p);
                }
                m += 1;
            }
            out
        }
        DepthCase::TwoThreePowerL2 => {
            let mut out = vec![];
            let mut t = 9u64;
            while 2 * t - 1 < bound {
                if is_prime(2 * t - 1) {
                    out.push(2 * t - 1);
                }
                t *= 3;
            }
            out
        }
        DepthCase::FermatPgl2 => {
            let mut out = vec![];
            let mut m = 2;
            while (1u64 << m) + 1 < bound {
                let p = (1u64 << m) + 1;
                if is_fermat_prime(p).is_some() && p >= 17 {
                    out.push(p);
                }
                m += 1;
            }
            out
        }
    }
}

/// Factor 2^m - 1 through its cyclotomic pieces, so that Mersenne numbers
/// far beyond the 64-bit ceiling can still be factored exactly when every
/// piece fits. Used by the extended depth scan.
pub fn factor_mersenne(m: u32) -> Result<Factorization, NumthError> {
    let mut f = Factorization::one();
    for d in 1..=m {
        if m % d == 0 {
            let piece = crate::ppd::cyclotomic_value(2, d);
            f.mul(&crate::factor::factorize_big(&piece)?);
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_small() {
        // squarefree: chain is just N itself
        assert_eq!(divisor_chain_oracle(30).unwrap(), 1);
        // 63 > 21: one step
        assert_eq!(divisor_chain_oracle(63).unwrap(), 2);
        assert_eq!(divisor_chain_oracle(8).unwrap(), 3);
        assert_eq!(divisor_chain_oracle(1).unwrap(), 1);
        assert_eq!(divisor_chain_oracle(360).unwrap(), 4); // 360 > 180 > 90 > 30-ish
    }

    #[test]
    fn formula_127() {
        let r = depth_formula(DepthCase::MersenneL2 { k: 1 }, 127).unwrap();
        assert_eq!(r.n_value, 63);
        assert_eq!(r.formula, 2);
        assert!(r.agrees());
        let r = depth_formula(DepthCase::MersenneL2 { k: 2 }, 127).unwrap();
        assert_eq!(r.n_value, 126);
        assert_eq!(r.formula, 2);
        assert!(r.agrees());
    }

    #[test]
    fn formula_17() {
        let r = depth_formula(DepthCase::FermatPgl2, 17).unwrap();
        assert_eq!(r.formula, 2); // omega(18) - pi(18) + 1
        assert!(r.agrees());
        let r = depth_formula(DepthCase::TwoThreePowerL2, 17).unwrap();
        assert_eq!(r.n_value, 8);
        assert_eq!(r.formula, 3);
        assert!(r.agrees());
    }

    #[test]
    fn shape_validation() {
        assert!(depth_formula(DepthCase::MersenneL2 { k: 1 }, 11).is_err());
        assert!(depth_formula(DepthCase::TwoThreePowerL2, 13).is_err());
        assert!(depth_formula(DepthCase::FermatPgl2, 13).is_err());
    }

    #[test]
    fn valid_prime_lists() {
        assert_eq!(valid_primes_below(DepthCase::MersenneL2 { k: 1 }, 100_000), vec![7, 31, 127, 8191]);
        assert_eq!(valid_primes_below(DepthCase::TwoThreePowerL2, 100_000), vec![17, 53, 4373, 13121]);
        assert_eq!(valid_primes_below(DepthCase::FermatPgl2, 100_000), vec![17, 257, 65537]);
    }

    #[test]
    fn mersenne_cyclotomic_factoring() {
        let f = factor_mersenne(11).unwrap();
        assert_eq!(f.iter().collect::<Vec<_>>(), vec![(23, 1), (89, 1)]);
        let f = factor_mersenne(126).unwrap();
        // value check: product reconstructs 2^126 - 1
        use num_bigint::BigUint;
        use num_traits::One;
        assert_eq!(f.value(), BigUint::from(2u32).pow(126) - BigUint::one());
    }
}
