//! Constructors for the standard permutation groups and a loader for stored
//! generator files.
//!
//! Stored files carry an expected order and degree; loading validates both
//! against a freshly built stabilizer chain, so shipped data is never
//! trusted blindly.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::PermError;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// JSON descriptor: generators in 1-based cycle notation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: u32,
    pub generators: Vec<String>,
    /// Validation manifest: decimal expected order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<String>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile, PermError> {
        serde_json::from_str(text).map_err(|e| PermError::Io(e.to_string()))
    }

    pub fn to_group(&self) -> Result<PermGroup, PermError> {
        let gens = self
            .generators
            .iter()
            .map(|t| Permutation::parse(t, self.degree))
            .collect::<Result<Vec<_>, _>>()?;
        let group = PermGroup::from_generators(self.degree, gens)?;
        if let Some(expected) = &self.expected_order {
            let expected: BigUint = expected
                .parse()
                .map_err(|_| PermError::Validation(format!("bad order string in {}", self.name)))?;
            if group.order() != &expected {
                return Err(PermError::Validation(format!(
                    "{}: stored generators give order {}, manifest says {}",
                    self.name,
                    group.order(),
                    expected
                )));
            }
        }
        Ok(group)
    }

    pub fn from_group(name: &str, group: &PermGroup) -> GroupFile {
        GroupFile {
            name: name.to_string(),
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.format()).collect(),
            expected_order: Some(group.order().to_string()),
        }
    }
}

/// Symmetric group on n points.
pub fn symmetric(n: u32) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(transposition(n, 0, 1));
    }
    if n >= 3 {
        gens.push(cycle(n, &(0..n).collect::<Vec<_>>()));
    }
    PermGroup::from_generators(n, gens).unwrap()
}

/// Alternating group on n points.
pub fn alternating(n: u32) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle(n, &[0, 1, 2]));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle(n, &(0..n).collect::<Vec<_>>()));
        } else {
            gens.push(cycle(n, &(1..n).collect::<Vec<_>>()));
        }
    }
    PermGroup::from_generators(n, gens).unwrap()
}

/// Cyclic group of order n in its regular action.
pub fn cyclic(n: u32) -> PermGroup {
    PermGroup::from_generators(n, vec![cycle(n, &(0..n).collect::<Vec<_>>())]).unwrap()
}

/// Dihedral group of order 2m acting naturally on m points.
pub fn dihedral(m: u32) -> PermGroup {
    assert!(m >= 3, "dihedral needs at least 3 points");
    let rot = cycle(m, &(0..m).collect::<Vec<_>>());
    let refl = Permutation::from_images((0..m).map(|i| (m - i) % m).collect()).unwrap();
    PermGroup::from_generators(m, vec![rot, refl]).unwrap()
}

/// Frobenius group C_p : C_d on p points, x -> x+1 and x -> gx with g of
/// multiplicative order d mod p. Requires d | p - 1.
pub fn frobenius_agl1(p: u32, d: u32) -> Result<PermGroup, PermError> {
    if p < 2 || !is_prime(p as u64) {
        return Err(PermError::Validation(format!("{p} is not prime")));
    }
    if d == 0 || (p - 1) % d != 0 {
        return Err(PermError::Validation(format!("{d} does not divide {}", p - 1)));
    }
    let translation = cycle(p, &(0..p).collect::<Vec<_>>());
    let mut gens = vec![translation];
    if d > 1 {
        let g = multiplicative_element_of_order(p as u64, d as u64)
            .ok_or_else(|| PermError::Validation("no multiplicative element".into()))?;
        let scale =
            Permutation::from_images((0..p).map(|x| (x as u64 * g % p as u64) as u32).collect())
                .unwrap();
        gens.push(scale);
    }
    let group = PermGroup::from_generators(p, gens)?;
    debug_assert_eq!(group.order(), &BigUint::from(p as u64 * d as u64));
    Ok(group)
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

/// An element of exact multiplicative order d modulo the prime p.
fn multiplicative_element_of_order(p: u64, d: u64) -> Option<u64> {
    // find a generator, then power it
    'candidate: for g in 2..p {
        let mut seen = 1u64;
        let mut x = g;
        while x != 1 {
            x = x * g % p;
            seen += 1;
            if seen > p {
                return None;
            }
        }
        if seen == p - 1 {
            let mut y = 1u64;
            for _ in 0..(p - 1) / d {
                y = y * g % p;
            }
            // y has order d
            let mut check = y;
            let mut o = 1;
            while check != 1 {
                check = check * y % p;
                o += 1;
                if o > d {
                    continue 'candidate;
                }
            }
            if o == d {
                return Some(y);
            }
        }
    }
    None
}

fn cycle(degree: u32, points: &[u32]) -> Permutation {
    let mut images: Vec<u32> = (0..degree).collect();
    for w in 0..points.len() {
        images[points[w] as usize] = points[(w + 1) % points.len()];
    }
    Permutation::from_images(images).unwrap()
}

fn transposition(degree: u32, a: u32, b: u32) -> Permutation {
    let mut images: Vec<u32> = (0..degree).collect();
    images.swap(a as usize, b as usize);
    Permutation::from_images(images).unwrap()
}

/// Intersection of a Young-style direct product S_{parts} with the
/// alternating group, as the stabilizer in Alt(n) of the given partition of
/// {1..n} into consecutive blocks.
pub fn young_intersect_alternating(n: u32, parts: &[u32]) -> PermGroup {
    assert_eq!(parts.iter().sum::<u32>(), n);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut start = 0u32;
    let mut blocks: Vec<(u32, u32)> = Vec::new();
    for &len in parts {
        blocks.push((start, len));
        start += len;
    }
    // even generators inside each block
    for &(s, len) in &blocks {
        if len >= 3 {
            gens.push(cycle(n, &[s, s + 1, s + 2]));
            if len >= 4 {
                let pts: Vec<u32> = if len % 2 == 1 {
                    (s..s + len).collect()
                } else {
                    (s + 1..s + len).collect()
                };
                gens.push(cycle(n, &pts));
            }
        }
    }
    // odd-times-odd pairings across blocks
    let odd_blocks: Vec<(u32, u32)> = blocks.iter().copied().filter(|&(_, l)| l >= 2).collect();
    for w in odd_blocks.windows(2) {
        let (s1, _) = w[0];
        let (s2, _) = w[1];
        gens.push(transposition(n, s1, s1 + 1).then(&transposition(n, s2, s2 + 1)));
    }
    PermGroup::from_generators(n, gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_alternating_orders() {
        assert_eq!(symmetric(5).order(), &BigUint::from(120u32));
        assert_eq!(alternating(5).order(), &BigUint::from(60u32));
        assert_eq!(alternating(6).order(), &BigUint::from(360u32));
        assert_eq!(symmetric(9).order(), &BigUint::from(362880u32));
        assert_eq!(alternating(10).order(), &BigUint::from(1814400u32));
        assert!(alternating(7).generators().iter().all(|g| g.is_even()));
        assert!(alternating(8).generators().iter().all(|g| g.is_even()));
    }

    #[test]
    fn dihedral_cyclic() {
        assert_eq!(dihedral(5).order(), &BigUint::from(10u32));
        assert_eq!(dihedral(9).order(), &BigUint::from(18u32));
        assert_eq!(cyclic(7).order(), &BigUint::from(7u32));
        assert!(dihedral(6).is_transitive());
    }

    #[test]
    fn frobenius() {
        let f21 = frobenius_agl1(7, 3).unwrap();
        assert_eq!(f21.order(), &BigUint::from(21u32));
        assert!(f21.is_transitive());
        assert!(frobenius_agl1(7, 4).is_err());
        let f42 = frobenius_agl1(7, 6).unwrap();
        assert_eq!(f42.order(), &BigUint::from(42u32));
    }

    #[test]
    fn young_intersections() {
        // (S7 x S2) meet A9
        let h = young_intersect_alternating(9, &[7, 2]);
        assert_eq!(h.order(), &BigUint::from(5040u32));
        // (S7 x S3) meet A10
        let h = young_intersect_alternating(10, &[7, 3]);
        assert_eq!(h.order(), &BigUint::from(15120u32));
        // (S6 x S3) meet A9
        let h = young_intersect_alternating(9, &[6, 3]);
        assert_eq!(h.order(), &BigUint::from(2160u32));
        // S3 wr S2 style check: stabilizer of {1,2,3},{4,5,6} in A6 is
        // (S3 x S3) meet A6 of order 18; the full wreath lives in S6.
        let h = young_intersect_alternating(6, &[3, 3]);
        assert_eq!(h.order(), &BigUint::from(18u32));
    }

    #[test]
    fn group_file_round_trip_and_validation() {
        let a5 = alternating(5);
        let file = GroupFile::from_group("a5", &a5);
        let text = serde_json::to_string(&file).unwrap();
        let parsed = GroupFile::parse(&text).unwrap();
        let rebuilt = parsed.to_group().unwrap();
        assert_eq!(rebuilt.order(), a5.order());

        let mut tampered = file.clone();
        tampered.expected_order = Some("61".into());
        assert!(matches!(tampered.to_group(), Err(PermError::Validation(_))));
    }
}
