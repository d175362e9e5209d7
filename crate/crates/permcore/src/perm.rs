//! Permutations of {0, .., degree-1} stored by their image vectors.
//!
//! Composition is left-to-right: `(a * b)` means "apply a, then b", so that
//! `x^(ab) = (x^a)^b` and products read in the usual right-action order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::PermError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

/// Multiset of cycle lengths, stored as length -> multiplicity and covering
/// the whole degree (fixed points included as length 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleShape(pub BTreeMap<u32, u32>);

impl Permutation {
    pub fn identity(degree: u32) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Build from an image vector, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &y in &images {
            if y >= n {
                return Err(PermError::PointOutOfRange(y as u64 + 1, n));
            }
            if seen[y as usize] {
                return Err(PermError::RepeatedPoint(y as u64 + 1));
            }
            seen[y as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&y| other.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            inv[y as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Conjugate `self^g = g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (b, &xb) in self.images.iter().enumerate() {
            images[g.images[b] as usize] = g.images[xb as usize];
        }
        Permutation { images }
    }

    /// Commutator self^-1 g^-1 self g.
    pub fn commutator(&self, g: &Permutation) -> Permutation {
        self.inverse().then(&g.inverse()).then(self).then(g)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn cycle_shape(&self) -> CycleShape {
        let mut shape = BTreeMap::new();
        let mut seen = vec![false; self.images.len()];
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            *shape.entry(len).or_insert(0) += 1;
        }
        CycleShape(shape)
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut ord = 1u64;
        for (&len, _) in &self.cycle_shape().0 {
            ord = lcm(ord, len as u64);
        }
        ord
    }

    pub fn fixed_points(&self) -> u32 {
        self.images.iter().enumerate().filter(|&(i, &y)| i as u32 == y).count() as u32
    }

    pub fn is_even(&self) -> bool {
        let shape = self.cycle_shape();
        let transpositions: u32 = shape.0.iter().map(|(&len, &mult)| (len - 1) * mult).sum();
        transpositions % 2 == 0
    }

    /// Parse disjoint-cycle notation with 1-based points; fixed points may
    /// be omitted and "()" denotes the identity.
    pub fn parse(text: &str, degree: u32) -> Result<Self, PermError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PermError::Parse("empty string".into()));
        }
        let mut images: Vec<u32> = (0..degree).collect();
        let mut touched = vec![false; degree as usize];
        let mut rest = text;
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(PermError::Parse(format!("expected '(' at: {rest}")));
            };
            let Some(close) = stripped.find(')') else {
                return Err(PermError::Parse("unbalanced parenthesis".into()));
            };
            let body = &stripped[..close];
            rest = stripped[close + 1..].trim_start();
            let body = body.trim();
            if body.is_empty() {
                continue; // "()" is the identity cycle
            }
            let mut cycle = Vec::new();
            for part in body.split(',') {
                let value: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| PermError::Parse(format!("bad point: {part:?}")))?;
                if value == 0 || value > degree as u64 {
                    return Err(PermError::PointOutOfRange(value, degree));
                }
                let p = (value - 1) as u32;
                if touched[p as usize] {
                    return Err(PermError::RepeatedPoint(value));
                }
                touched[p as usize] = true;
                cycle.push(p);
            }
            for w in 0..cycle.len() {
                images[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Disjoint-cycle notation with 1-based points, fixed points omitted.
    pub fn format(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.images.len()];
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(',');
                }
                out.push_str(&(p + 1).to_string());
                first = false;
                p = self.images[p] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// 128-bit content hash used to dedupe elements in class censuses.
    /// Collisions are caught downstream by exact element counts.
    pub fn hash128(&self) -> u128 {
        #[inline]
        fn splitmix(mut x: u64) -> u64 {
            x = x.wrapping_add(0x9e3779b97f4a7c15);
            x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
            x ^ (x >> 31)
        }
        let mut h1 = 0x243f6a8885a308d3u64;
        let mut h2 = 0x13198a2e03707344u64;
        for (i, &y) in self.images.iter().enumerate() {
            let v = ((i as u64) << 32) | y as u64;
            h1 = splitmix(h1 ^ v);
            h2 = splitmix(h2 ^ v.rotate_left(17) ^ 0xa4093822299f31d0);
        }
        ((h1 as u128) << 64) | h2 as u128
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl CycleShape {
    /// e.g. "[3,1^2]" for a 3-cycle on 5 points.
    pub fn bracket_notation(&self) -> String {
        let mut parts = Vec::new();
        for (&len, &mult) in self.0.iter().rev() {
            if mult == 1 {
                parts.push(len.to_string());
            } else {
                parts.push(format!("{len}^{mult}"));
            }
        }
        format!("[{}]", parts.join(","))
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        CycleShape(pairs.iter().copied().collect())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_basic() {
        let p = Permutation::parse("(1,2,3)", 4).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 3]);
        let id = Permutation::parse("()", 5).unwrap();
        assert!(id.is_identity());
        let q = Permutation::parse("(1,2)(3,4,5)", 5).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.cycle_shape(), CycleShape::from_pairs(&[(2, 1), (3, 1)]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Permutation::parse("(1,2", 4), Err(PermError::Parse(_))));
        assert!(matches!(Permutation::parse("(1,1)", 4), Err(PermError::RepeatedPoint(1))));
        assert!(matches!(
            Permutation::parse("(1,5)", 4),
            Err(PermError::PointOutOfRange(5, 4))
        ));
        assert!(matches!(Permutation::parse("(1,2)(2,3)", 4), Err(PermError::RepeatedPoint(2))));
    }

    #[test]
    fn orders_and_shapes() {
        let id = Permutation::identity(6);
        assert_eq!(id.order(), 1);
        assert_eq!(id.cycle_shape(), CycleShape::from_pairs(&[(1, 6)]));
        let p = Permutation::parse("(1,2,3)(4,5,6)", 6).unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.cycle_shape(), CycleShape::from_pairs(&[(3, 2)]));
        let c12 = Permutation::parse("(1,2,3,4,5,6,7,8,9,10,11,12)", 12).unwrap();
        assert_eq!(c12.order(), 12);
        assert_eq!(p.cycle_shape().bracket_notation(), "[3^2]");
        let q = Permutation::parse("(1,2,3)", 5).unwrap();
        assert_eq!(q.cycle_shape().bracket_notation(), "[3,1^2]");
    }

    #[test]
    fn conjugation_matches_products() {
        let x = Permutation::parse("(1,2,3)", 5).unwrap();
        let g = Permutation::parse("(2,4)(3,5)", 5).unwrap();
        assert_eq!(x.conjugate_by(&g), g.inverse().then(&x).then(&g));
        assert_eq!(x.conjugate_by(&g).cycle_shape(), x.cycle_shape());
    }

    proptest! {
        #[test]
        fn format_round_trips(seed in proptest::collection::vec(0u32..1000, 2..30)) {
            // derive a permutation from the seed by sorting-index trick
            let n = seed.len() as u32;
            let mut idx: Vec<u32> = (0..n).collect();
            idx.sort_by_key(|&i| (seed[i as usize], i));
            let p = Permutation::from_images(idx).unwrap();
            let text = p.format();
            let q = Permutation::parse(&text, n).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn inverse_and_associativity(seed in proptest::collection::vec(0u32..1000, 3..20)) {
            let n = seed.len() as u32;
            let mut idx: Vec<u32> = (0..n).collect();
            idx.sort_by_key(|&i| (seed[i as usize], i));
            let a = Permutation::from_images(idx).unwrap();
            let b = a.then(&a);
            let c = a.inverse();
            prop_assert!(a.then(&c).is_identity());
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        }
    }
}
