//! GF(p^k) with table-backed arithmetic.
//!
//! Elements are indices 0..q packing the coefficient vector of a residue
//! polynomial in base p (constant term least significant). The modulus is
//! the lexicographically least monic irreducible of degree k, unless an
//! explicit one is supplied; every quantity asserted elsewhere (orders,
//! Jordan shapes) is representation independent, and that independence is
//! itself under test.

use crate::error::AffineError;

pub type El = u16;

#[derive(Debug, Clone)]
pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    /// Non-leading coefficients of the monic modulus, constant term first.
    poly: Vec<u64>,
    exp: Vec<El>,
    log: Vec<u32>,
    add_table: Vec<El>,
    frob: Vec<El>,
}

impl Field {
    pub fn new(p: u64, k: u32) -> Result<Field, AffineError> {
        let poly = least_irreducible(p, k)?;
        Field::with_modulus(p, k, poly)
    }

    /// Build with an explicit monic modulus given by its non-leading
    /// coefficients (constant term first).
    pub fn with_modulus(p: u64, k: u32, poly: Vec<u64>) -> Result<Field, AffineError> {
        if !is_prime(p) {
            return Err(AffineError::NotPrime(p));
        }
        assert_eq!(poly.len() as u32, k);
        let q = p.checked_pow(k).filter(|&q| q <= 1 << 14).ok_or(AffineError::FieldTooLarge(p))?;
        let mut field = Field {
            p,
            k,
            q,
            poly,
            exp: Vec::new(),
            log: vec![0; q as usize],
            add_table: Vec::new(),
            frob: vec![0; q as usize],
        };
        if k > 1 && !field.modulus_is_irreducible() {
            return Err(AffineError::BadParameters("reducible modulus".into()));
        }
        field.build_tables()?;
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.poly
    }

    pub fn zero(&self) -> El {
        0
    }

    pub fn one(&self) -> El {
        1
    }

    /// The generator of the multiplicative group used by the tables.
    pub fn primitive(&self) -> El {
        self.exp[1]
    }

    pub fn coeffs(&self, a: El) -> Vec<u64> {
        let mut v = a as u64;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> El {
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c % self.p;
        }
        v as El
    }

    pub fn from_int(&self, n: u64) -> El {
        // prime subfield embedding
        (n % self.p) as El
    }

    pub fn add(&self, a: El, b: El) -> El {
        if self.p == 2 {
            a ^ b
        } else {
            self.add_table[a as usize * self.q as usize + b as usize]
        }
    }

    pub fn neg(&self, a: El) -> El {
        if self.p == 2 {
            return a;
        }
        let coeffs: Vec<u64> = self.coeffs(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.from_coeffs(&coeffs)
    }

    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: El, b: El) -> El {
        if a == 0 || b == 0 {
            0
        } else {
            let e = self.log[a as usize] as u64 + self.log[b as usize] as u64;
            self.exp[(e % (self.q - 1)) as usize]
        }
    }

    pub fn inv(&self, a: El) -> El {
        assert!(a != 0, "division by zero");
        let e = (self.q - 1 - self.log[a as usize] as u64) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn pow(&self, a: El, e: u64) -> El {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = self.log[a as usize] as u128 * e as u128 % (self.q - 1) as u128;
        self.exp[l as usize]
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: El) -> El {
        self.frob[a as usize]
    }

    pub fn multiplicative_order(&self, a: El) -> u64 {
        assert!(a != 0);
        let l = self.log[a as usize] as u64;
        (self.q - 1) / gcd(self.q - 1, l)
    }

    /// Trace to the prime subfield, as an element of it.
    pub fn trace(&self, a: El) -> El {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.k {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = El> {
        0..self.q as El
    }

    /// Multiply coefficient vectors modulo the modulus (used during table
    /// construction, before the log tables exist).
    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (t, &m) in self.poly.iter().enumerate() {
                let idx = d - k + t;
                prod[idx] = (prod[idx] + (self.p - m) * c) % self.p;
            }
        }
        prod.truncate(k);
        prod
    }

    fn modulus_is_irreducible(&self) -> bool {
        // f irreducible over F_p iff x^(p^k) = x mod f and
        // gcd(x^(p^(k/l)) - x, f) = 1 for every prime l dividing k.
        let x: Vec<u64> = {
            let mut v = vec![0u64; self.k as usize];
            if self.k == 1 {
                return true;
            }
            v[1] = 1;
            v
        };
        let xq = self.poly_frobenius_power(&x, self.k);
        if xq != x {
            return false;
        }
        let mut k = self.k;
        let mut primes = vec![];
        let mut d = 2;
        while d * d <= k {
            if k % d == 0 {
                primes.push(d);
                while k % d == 0 {
                    k /= d;
                }
            }
            d += 1;
        }
        if k > 1 {
            primes.push(k);
        }
        for l in primes {
            let e = self.k / l;
            let mut sub = self.poly_frobenius_power(&x, e);
            // sub - x
            sub[1] = (sub[1] + self.p - 1) % self.p;
            if !self.poly_coprime_with_modulus(&sub) {
                return false;
            }
        }
        true
    }

    /// x -> x^(p^e) as polynomial arithmetic mod f.
    fn poly_frobenius_power(&self, a: &[u64], e: u32) -> Vec<u64> {
        let mut acc = a.to_vec();
        for _ in 0..e {
            // raise to p-th power by square-and-multiply on exponent p
            let mut result = vec![0u64; self.k as usize];
            result[0] = 1;
            let mut base = acc.clone();
            let mut exp = self.p;
            while exp > 0 {
                if exp & 1 == 1 {
                    result = self.poly_mul(&result, &base);
                }
                base = self.poly_mul(&base, &base);
                exp >>= 1;
            }
            acc = result;
        }
        acc
    }

    fn poly_coprime_with_modulus(&self, a: &[u64]) -> bool {
        // gcd over F_p[x] of a with the monic modulus
        let mut f: Vec<u64> = self.poly.iter().copied().chain(std::iter::once(1)).collect();
        let mut g = a.to_vec();
        let norm = |v: &mut Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        norm(&mut f);
        norm(&mut g);
        while !g.is_empty() {
            // f mod g
            let glead_inv = mod_inv(*g.last().unwrap(), self.p);
            while f.len() >= g.len() && !f.is_empty() {
                let shift = f.len() - g.len();
                let c = (*f.last().unwrap() * glead_inv) % self.p;
                for (i, &gc) in g.iter().enumerate() {
                    f[shift + i] = (f[shift + i] + (self.p - c * gc % self.p)) % self.p;
                }
                norm(&mut f);
            }
            std::mem::swap(&mut f, &mut g);
        }
        f.len() == 1
    }

    fn build_tables(&mut self) -> Result<(), AffineError> {
        let q = self.q as usize;
        // multiplication table over coefficient vectors, then find a
        // generator of the multiplicative group
        let idx = |coeffs: &[u64], p: u64| -> El {
            let mut v = 0u64;
            for &c in coeffs.iter().rev() {
                v = v * p + c;
            }
            v as El
        };
        let mut generator = None;
        'search: for cand in 1..self.q {
            let c0 = self.coeffs(cand as El);
            let mut x = c0.clone();
            let mut order = 1u64;
            while idx(&x, self.p) != 1 {
                x = self.poly_mul(&x, &c0);
                order += 1;
                if order > self.q {
                    continue 'search; // not invertible: reducible modulus
                }
            }
            if order == self.q - 1 {
                generator = Some(cand as El);
                break;
            }
        }
        let g = generator.ok_or(AffineError::NoIrreducible(self.k))?;
        self.exp = vec![0; q - 1];
        let gc = self.coeffs(g);
        let mut x = vec![0u64; self.k as usize];
        x[0] = 1;
        for e in 0..self.q - 1 {
            let i = idx(&x, self.p);
            self.exp[e as usize] = i;
            self.log[i as usize] = e as u32;
            x = self.poly_mul(&x, &gc);
        }
        if self.p > 2 {
            self.add_table = vec![0; q * q];
            for a in 0..q {
                let ca = self.coeffs(a as El);
                for b in 0..=a {
                    let cb = self.coeffs(b as El);
                    let sum: Vec<u64> =
                        ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % self.p).collect();
                    let s = idx(&sum, self.p);
                    self.add_table[a * q + b] = s;
                    self.add_table[b * q + a] = s;
                }
            }
        }
        for a in 0..self.q {
            self.frob[a as usize] = self.pow_by_mul(a as El, self.p);
        }
        Ok(())
    }

    fn pow_by_mul(&self, a: El, e: u64) -> El {
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u128 * e as u128 % (self.q - 1) as u128;
        self.exp[l as usize]
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The lexicographically least monic irreducible polynomial of degree k,
/// comparing the packed coefficient integer.
fn least_irreducible(p: u64, k: u32) -> Result<Vec<u64>, AffineError> {
    if k == 1 {
        return Ok(vec![0]);
    }
    let count = p.pow(k);
    for packed in 0..count {
        let mut v = packed;
        let coeffs: Vec<u64> = (0..k)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect();
        if coeffs[0] == 0 {
            continue; // x divides
        }
        let trial = Field {
            p,
            k,
            q: p.pow(k),
            poly: coeffs.clone(),
            exp: Vec::new(),
            log: vec![0; p.pow(k) as usize],
            add_table: Vec::new(),
            frob: vec![0; p.pow(k) as usize],
        };
        if trial.modulus_is_irreducible() {
            return Ok(coeffs);
        }
    }
    Err(AffineError::NoIrreducible(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.order(), 4);
        // modulus is x^2 + x + 1
        assert_eq!(f.modulus(), &[1, 1]);
        let x = f.from_coeffs(&[0, 1]);
        assert_eq!(f.mul(x, x), f.add(x, 1)); // x^2 = x + 1
        assert_eq!(f.pow(x, 3), 1);
        assert_eq!(f.multiplicative_order(x), 3);
    }

    #[test]
    fn f9_and_f27() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        for a in f9.elements() {
            if a != 0 {
                assert_eq!(f9.mul(a, f9.inv(a)), 1);
            }
            assert_eq!(f9.frobenius(f9.frobenius(a)), a);
        }
        let f27 = Field::new(3, 3).unwrap();
        assert_eq!(f27.order(), 27);
        let count_traces = f27.elements().filter(|&a| f27.trace(a) == 0).count();
        assert_eq!(count_traces, 9, "trace kernel has size q/p");
    }

    #[test]
    fn f49_and_big_binary() {
        let f = Field::new(7, 2).unwrap();
        assert_eq!(f.order(), 49);
        assert_eq!(f.multiplicative_order(f.primitive()), 48);
        let f = Field::new(2, 12).unwrap();
        assert_eq!(f.order(), 4096);
        let g = f.primitive();
        assert_eq!(f.multiplicative_order(g), 4095);
    }

    #[test]
    fn representation_independence_of_orders() {
        // two different irreducible moduli for F_9: x^2+1 and x^2+x+2
        let a = Field::with_modulus(3, 2, vec![1, 0]).unwrap();
        let b = Field::with_modulus(3, 2, vec![2, 1]).unwrap();
        let mut orders_a: Vec<u64> =
            a.elements().filter(|&x| x != 0).map(|x| a.multiplicative_order(x)).collect();
        let mut orders_b: Vec<u64> =
            b.elements().filter(|&x| x != 0).map(|x| b.multiplicative_order(x)).collect();
        orders_a.sort_unstable();
        orders_b.sort_unstable();
        assert_eq!(orders_a, orders_b);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(Field::with_modulus(3, 2, vec![0, 0]).is_err(), "x^2 is reducible");
        assert!(Field::with_modulus(3, 2, vec![2, 0]).is_err(), "x^2+2 = (x+1)(x+2)");
        assert!(Field::new(4, 2).is_err(), "4 is not prime");
    }

    #[test]
    fn distributivity_spot() {
        let f = Field::new(5, 2).unwrap();
        for a in f.elements().step_by(3) {
            for b in f.elements().step_by(4) {
                for c in f.elements().step_by(5) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}
