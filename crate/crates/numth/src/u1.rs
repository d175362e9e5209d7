//! Scan for the one open family in the unitary branch of the classification:
//! degree-n unitary socles over F_q with q = 2^f, n >= 5 a prime divisor of
//! q + 1, requiring r = 2nf + 1 to be prime and the unique primitive prime
//! divisor of q^(2n) - 1.

use crate::factor::{is_prime, NumthError};
use crate::ppd::{ppd_set, PpdStatus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum U1Status {
    /// All checkable conditions hold.
    Accepted,
    /// A condition failed; the reason names the first failure.
    Rejected(&'static str),
    /// The ppd-uniqueness condition is out of factoring reach.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct U1Candidate {
    pub n: u32,
    pub f: u32,
    pub r: u64,
    pub status: U1Status,
}

/// Scan all (n, f) with f <= f_bound, n <= n_bound. Expected to accept
/// nothing; candidates whose cyclotomic value cannot be factored are
/// reported as unresolved rather than decided.
pub fn u1_scan(f_bound: u32, n_bound: u32) -> Result<Vec<U1Candidate>, NumthError> {
    let mut out = vec![];
    for f in 1..=f_bound {
        let q: u64 = 1 << f;
        for n in 5..=n_bound {
            if !is_prime(n as u64) || (q + 1) % n as u64 != 0 {
                continue;
            }
            let r = 2 * n as u64 * f as u64 + 1;
            if !is_prime(r) {
                out.push(U1Candidate { n, f, r, status: U1Status::Rejected("r = 2nf + 1 is not prime") });
                continue;
            }
            let report = ppd_set(q, 2 * n)?;
            let status = match &report.status {
                PpdStatus::Unresolved => U1Status::Unresolved,
                PpdStatus::Complete(set) => match set.as_slice() {
                    [unique] if *unique == r => U1Status::Accepted,
                    [_] => U1Status::Rejected("unique ppd is not r"),
                    _ => U1Status::Rejected("ppd of q^(2n) - 1 is not unique"),
                },
            };
            out.push(U1Candidate { n, f, r, status });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_scan_accepts_nothing() {
        let scan = u1_scan(12, 13).unwrap();
        assert!(!scan.is_empty());
        assert!(scan.iter().all(|c| c.status != U1Status::Accepted), "{scan:?}");
    }

    #[test]
    fn named_rejections() {
        let scan = u1_scan(12, 13).unwrap();
        let c = scan.iter().find(|c| (c.n, c.f) == (5, 2)).unwrap();
        assert_eq!(c.r, 21);
        assert!(matches!(c.status, U1Status::Rejected("r = 2nf + 1 is not prime")));
        let c = scan.iter().find(|c| (c.n, c.f) == (5, 6)).unwrap();
        assert_eq!(c.r, 61);
        assert!(
            matches!(c.status, U1Status::Rejected("ppd of q^(2n) - 1 is not unique")),
            "{c:?}"
        );
    }
}
