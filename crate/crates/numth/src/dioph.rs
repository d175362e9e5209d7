//! Bounded exhaustive scans for the handful of Diophantine equations the
//! classification leans on.

use crate::factor::is_prime;

/// If p = 2^m - 1 is prime, return m.
pub fn is_mersenne_prime(p: u64) -> Option<u32> {
    if !is_prime(p) {
        return None;
    }
    let m = (p + 1).trailing_zeros();
    (p + 1 == 1u64 << m).then_some(m)
}

/// If p = 2^m + 1 is prime, return m.
pub fn is_fermat_prime(p: u64) -> Option<u32> {
    if !is_prime(p) || p < 3 {
        return None;
    }
    let m = (p - 1).trailing_zeros();
    (p - 1 == 1u64 << m).then_some(m)
}

/// Integer b-th root by binary search.
fn iroot(n: u128, b: u32) -> u128 {
    if b == 1 {
        return n;
    }
    let mut lo = 1u128;
    let mut hi = 2u128;
    while hi.checked_pow(b).map(|v| v <= n).unwrap_or(false) {
        hi *= 2;
    }
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        match mid.checked_pow(b) {
            Some(v) if v <= n => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// All solutions of x^2 + x + 1 = y^b with |x|, |y| > 1 and b >= 2, for
/// |x| <= x_bound and b <= b_bound. The substitution x -> -(x+1) preserves
/// the left side, so each positive solution is reported with its negative
/// mirror.
pub fn nagell_scan(x_bound: u64, b_bound: u32) -> Vec<(i64, i64, u32)> {
    let mut out = vec![];
    for x in 2..=x_bound {
        let n = x as u128 * x as u128 + x as u128 + 1;
        for b in 2..=b_bound {
            if (1u128 << 1).pow(b) > n {
                break;
            }
            let y = iroot(n, b);
            if y > 1 && y.pow(b) == n {
                out.push((x as i64, y as i64, b));
                out.push((-(x as i64) - 1, y as i64, b));
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CatalanBranch {
    /// (r, s, v, w) = (2, 3, 3, 2).
    Special,
    /// (r, w) = (2, 1): s = 2^v + 1 is a Fermat prime.
    Fermat,
    /// (s, v) = (2, 1): r = 2^w - 1 is a Mersenne prime.
    Mersenne,
}

/// All solutions of r^v + 1 = s^w with r, s prime and r^v below the bound,
/// each classified into one of the three branches. Panics if a solution
/// escapes the trichotomy.
pub fn catalan_like_scan(bound: u64) -> Vec<(u64, u64, u32, u32, CatalanBranch)> {
    let mut out = vec![];
    for r in (2..=bound).filter(|&n| is_prime(n)) {
        let mut rv = r as u128;
        let mut v = 1u32;
        while rv <= bound as u128 {
            let target = rv + 1;
            // target = s^w for prime s?
            for w in 1..=127 {
                let s = iroot(target, w);
                if s < 2 {
                    break;
                }
                if s.pow(w) == target && s <= u64::MAX as u128 && is_prime(s as u64) {
                    let branch = if (r, s, v, w) == (2, 3, 3, 2) {
                        CatalanBranch::Special
                    } else if r == 2 && w == 1 {
                        CatalanBranch::Fermat
                    } else if s == 2 && v == 1 {
                        CatalanBranch::Mersenne
                    } else {
                        panic!("solution {r}^{v}+1={s}^{w} outside the known branches");
                    };
                    out.push((r, s as u64, v, w, branch));
                }
            }
            rv *= r as u128;
            v += 1;
        }
    }
    out.sort_unstable();
    out
}

/// Witnesses (x, r, z) for x^2 + 1 = 2 r^z with r a Fermat prime and
/// z <= 2; for z > 2 there are no solutions with r of this shape. Returns
/// the solutions together with the resulting field sizes q = x^2.
pub fn l3_solutions() -> (Vec<(u64, u64, u32)>, Vec<u64>) {
    let fermat_primes = [5u64, 17, 257, 65537];
    let mut witnesses = vec![];
    for &r in &fermat_primes {
        for z in 1..=2u32 {
            let rhs = 2 * (r as u128).pow(z);
            let x = iroot(rhs - 1, 2);
            if x * x + 1 == rhs {
                witnesses.push((x as u64, r, z));
            }
        }
    }
    let q: Vec<u64> = witnesses.iter().map(|&(x, _, _)| x * x).collect();
    (witnesses, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mersenne_fermat() {
        assert_eq!(is_mersenne_prime(31), Some(5));
        assert_eq!(is_fermat_prime(17), Some(4));
        assert_eq!(is_mersenne_prime(11), None);
        assert_eq!(is_fermat_prime(11), None);
        assert_eq!(is_mersenne_prime(127), Some(7));
        assert_eq!(is_fermat_prime(257), Some(8));
        assert_eq!(is_mersenne_prime(2047), None, "2047 = 23*89");
    }

    #[test]
    fn nagell_small_bound_matches_naive() {
        // naive double loop over x and y
        let mut naive = vec![];
        for x in 2i64..=1000 {
            let n = (x * x + x + 1) as u128;
            for y in 2u128..=1000 {
                let mut p = y * y;
                let mut b = 2;
                while p <= n {
                    if p == n {
                        naive.push((x, y as i64, b));
                        naive.push((-x - 1, y as i64, b));
                    }
                    p *= y;
                    b += 1;
                }
            }
        }
        naive.sort_unstable();
        assert_eq!(nagell_scan(1000, 64), naive);
    }

    #[test]
    fn nagell_18_343() {
        assert_eq!(18 * 18 + 18 + 1, 343);
        assert_eq!((-19i64) * (-19) + (-19) + 1, 343);
        let sols = nagell_scan(1_000, 64);
        assert_eq!(sols, vec![(-19, 7, 3), (18, 7, 3)]);
    }

    #[test]
    fn nagell_x2_no_solution() {
        assert!(nagell_scan(2, 64).is_empty(), "7 is not a perfect power");
    }

    #[test]
    fn catalan_branches() {
        let sols = catalan_like_scan(600);
        assert!(sols.contains(&(2, 3, 3, 2, CatalanBranch::Special)));
        assert!(sols.contains(&(2, 17, 4, 1, CatalanBranch::Fermat)));
        assert!(sols.contains(&(7, 2, 1, 3, CatalanBranch::Mersenne)));
        // every solution classified; the scan would have panicked otherwise
        for &(r, s, v, w, _) in &sols {
            assert_eq!((r as u128).pow(v) + 1, (s as u128).pow(w));
        }
    }

    #[test]
    fn l3_witnesses() {
        let (wit, q) = l3_solutions();
        assert_eq!(wit, vec![(3, 5, 1), (7, 5, 2)]);
        assert_eq!(q, vec![9, 49]);
    }
}
