//! Evaluable conditions for the classification rows, as pure predicates in
//! the row parameters. The open unitary case returns a tri-state because
//! its ppd-uniqueness condition can exceed factoring reach.

use numth::dioph::{is_fermat_prime, is_mersenne_prime};
use numth::factor::{alpha_set, factorize, is_prime, is_prime_power};
use numth::ppd::{ppd_set, PpdStatus};

use crate::error::TableError;

#[derive(Debug, Clone, Copy, Default)]
pub struct RowParams {
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub d: Option<u64>,
    pub eps: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionOutcome {
    Holds,
    Fails,
    Unresolved,
}

fn need(v: Option<u64>, name: &'static str) -> Result<u64, TableError> {
    v.ok_or(TableError::MissingParameter(name))
}

/// Conditions of the primitive-table cases by label.
pub fn evaluate_a1(case: &str, params: &RowParams) -> Result<ConditionOutcome, TableError> {
    use ConditionOutcome::*;
    let out = match case {
        "U1" => {
            let q = need(params.q, "q")?;
            let n = need(params.n, "n")?;
            let Some((2, f)) = is_prime_power(q) else { return Ok(Fails) };
            if !(n >= 5 && is_prime(n) && (q + 1) % n == 0) {
                return Ok(Fails);
            }
            let r = 2 * n * f as u64 + 1;
            if !is_prime(r) {
                return Ok(Fails);
            }
            let report = ppd_set(q, 2 * n as u32)?;
            match report.status {
                PpdStatus::Unresolved => Unresolved,
                PpdStatus::Complete(ref set) => {
                    if set.as_slice() == [r] {
                        Holds
                    } else {
                        Fails
                    }
                }
            }
        }
        "L1" | "L4" => {
            let q = need(params.q, "q")?;
            if is_mersenne_prime(q).is_some() {
                Holds
            } else {
                Fails
            }
        }
        "L2" => {
            let q = need(params.q, "q")?;
            if !is_prime(q) {
                return Ok(Fails);
            }
            let f = factorize(q + 1)?;
            let ok = f.exponent(2) == 1 && f.pi() == 2 && f.exponent(3) >= 2;
            if ok {
                Holds
            } else {
                Fails
            }
        }
        "L3" => {
            let q = need(params.q, "q")?;
            let Some((_, f)) = is_prime_power(q) else { return Ok(Fails) };
            // q = 2 r^z - 1 with r = 2^m + 1 Fermat, m >= 2 a 2-power,
            // f = 2^(m-1)
            for r in [5u64, 17, 257, 65537] {
                let m = (r - 1).trailing_zeros();
                if f as u64 != 1 << (m - 1) {
                    continue;
                }
                let mut rz = r;
                while 2 * rz - 1 <= q {
                    if 2 * rz - 1 == q {
                        return Ok(Holds);
                    }
                    rz *= r;
                }
            }
            Fails
        }
        "L5" => {
            let q = need(params.q, "q")?;
            match is_fermat_prime(q) {
                Some(m) if m >= 3 => Holds,
                _ => Fails,
            }
        }
        "A1" => prime_power_shape(need(params.n, "n")?, 1),
        "A4" => prime_power_shape(need(params.n, "n")?, 2),
        "A2" => {
            let n = need(params.n, "n")?;
            if n.is_power_of_two() && is_mersenne_prime(n - 1).is_some() {
                Holds
            } else {
                Fails
            }
        }
        "A3" => {
            let n = need(params.n, "n")?;
            if is_fermat_prime(n).is_some() {
                Holds
            } else {
                Fails
            }
        }
        "A5" => {
            let n = need(params.n, "n")?;
            if n % 2 != 0 {
                return Ok(Fails);
            }
            match is_prime_power(n / 2) {
                Some((r, a)) if r >= 3 && a >= 2 => Holds,
                _ => Fails,
            }
        }
        other => return Err(TableError::UnknownId(other.into())),
    };
    Ok(out)
}

fn prime_power_shape(n: u64, min_exp: u32) -> ConditionOutcome {
    match is_prime_power(n) {
        Some((_, a)) if a >= min_exp => ConditionOutcome::Holds,
        _ => ConditionOutcome::Fails,
    }
}

/// Conditions of the quasiprimitive family rows: the prime shape plus the
/// full-radical divisor condition on d (always with d proper).
pub fn evaluate_b1(case: &str, params: &RowParams) -> Result<ConditionOutcome, TableError> {
    use ConditionOutcome::*;
    let p = need(params.q, "p")?;
    let d = need(params.d, "d")?;
    let target = match case {
        "I" => {
            let eps = params.eps.ok_or(TableError::MissingParameter("eps"))?;
            let shape_ok = match eps {
                1 => is_fermat_prime(p).map(|m| m > 2).unwrap_or(false),
                -1 => is_mersenne_prime(p).map(|m| m > 2).unwrap_or(false),
                _ => false,
            };
            if !shape_ok {
                return Ok(Fails);
            }
            (p as i64 + eps) as u64
        }
        "II" => {
            if is_mersenne_prime(p).is_none() {
                return Ok(Fails);
            }
            p - 1
        }
        "III" => {
            if is_mersenne_prime(p).is_none() {
                return Ok(Fails);
            }
            (p - 1) / 2
        }
        "IV" => {
            if !is_prime(p) {
                return Ok(Fails);
            }
            let f = factorize((p + 1) / 2)?;
            if !((p + 1) % 2 == 0 && f.pi() == 1 && f.max_prime() == Some(3) && f.exponent(3) >= 2)
            {
                return Ok(Fails);
            }
            (p - 1) / 2
        }
        other => return Err(TableError::UnknownId(other.into())),
    };
    if d >= target || target % d != 0 {
        return Ok(Fails);
    }
    let ok = alpha_set(d)? == alpha_set(target)?;
    Ok(if ok { Holds } else { Fails })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: Option<u64>, n: Option<u64>, d: Option<u64>, eps: Option<i64>) -> RowParams {
        RowParams { q, n, d, eps }
    }

    #[test]
    fn primitive_cases() {
        use ConditionOutcome::*;
        assert_eq!(evaluate_a1("L1", &p(Some(31), None, None, None)).unwrap(), Holds);
        assert_eq!(evaluate_a1("L1", &p(Some(11), None, None, None)).unwrap(), Fails);
        assert_eq!(evaluate_a1("A3", &p(None, Some(17), None, None)).unwrap(), Holds);
        assert_eq!(evaluate_a1("A2", &p(None, Some(16), None, None)).unwrap(), Fails, "15 = 3*5");
        assert_eq!(evaluate_a1("A2", &p(None, Some(8), None, None)).unwrap(), Holds);
        assert_eq!(evaluate_a1("A1", &p(None, Some(9), None, None)).unwrap(), Holds);
        assert_eq!(evaluate_a1("A5", &p(None, Some(18), None, None)).unwrap(), Holds, "18 = 2*3^2");
        assert_eq!(evaluate_a1("A5", &p(None, Some(6), None, None)).unwrap(), Fails);
        assert_eq!(evaluate_a1("L2", &p(Some(17), None, None, None)).unwrap(), Holds);
        assert_eq!(evaluate_a1("L2", &p(Some(13), None, None, None)).unwrap(), Fails);
        assert_eq!(evaluate_a1("L3", &p(Some(9), None, None, None)).unwrap(), Holds);
        assert_eq!(evaluate_a1("L3", &p(Some(49), None, None, None)).unwrap(), Holds);
        assert_eq!(evaluate_a1("L3", &p(Some(25), None, None, None)).unwrap(), Fails);
    }

    #[test]
    fn open_unitary_case() {
        use ConditionOutcome::*;
        // q = 4, n = 5: r = 21 not prime
        assert_eq!(evaluate_a1("U1", &p(Some(4), Some(5), None, None)).unwrap(), Fails);
        // q = 64, n = 5: r = 61 prime but not the unique ppd
        assert_eq!(evaluate_a1("U1", &p(Some(64), Some(5), None, None)).unwrap(), Fails);
    }

    #[test]
    fn quasiprimitive_family_cases() {
        use ConditionOutcome::*;
        // p = 127: d = 42 has the full radical of 126
        assert_eq!(evaluate_b1("II", &p(Some(127), None, Some(42), None)).unwrap(), Holds);
        assert_eq!(evaluate_b1("II", &p(Some(127), None, Some(126), None)).unwrap(), Fails, "proper");
        assert_eq!(evaluate_b1("III", &p(Some(127), None, Some(21), None)).unwrap(), Holds);
        assert_eq!(evaluate_b1("III", &p(Some(31), None, Some(5), None)).unwrap(), Fails);
        assert_eq!(evaluate_b1("IV", &p(Some(17), None, Some(4), None)).unwrap(), Holds);
        assert_eq!(evaluate_b1("IV", &p(Some(17), None, Some(2), None)).unwrap(), Holds);
        assert_eq!(evaluate_b1("IV", &p(Some(17), None, Some(8), None)).unwrap(), Fails);
        assert_eq!(evaluate_b1("I", &p(Some(17), None, Some(6), Some(1))).unwrap(), Holds);
        assert_eq!(evaluate_b1("I", &p(Some(7), None, Some(2), Some(-1))).unwrap(), Fails);
    }
}
