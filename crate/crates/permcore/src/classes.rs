//! Conjugacy classes of prime-order elements by certified enumeration.
//!
//! Classes are discovered in one streaming pass over the chain's element
//! enumeration. Every class is closed by a conjugation orbit search, and the
//! census is certified complete by comparing the class sizes against the
//! exact element counts per order; any hash accident breaks the certificate
//! and fails loudly instead of returning a wrong census.

use std::collections::{BTreeMap, HashSet};

use crate::error::PermError;
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct PrimeOrderClass {
    /// Lexicographically least member, a deterministic representative.
    pub rep: Permutation,
    pub size: u64,
    hashes: HashSet<u128>,
}

impl PrimeOrderClass {
    pub fn contains_hash(&self, h: u128) -> bool {
        self.hashes.contains(&h)
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.hashes.contains(&x.hash128())
    }
}

#[derive(Debug, Clone)]
pub struct ClassData {
    /// prime -> classes of elements of that order, sorted by (size, rep).
    pub by_prime: BTreeMap<u64, Vec<PrimeOrderClass>>,
    /// element order -> exact count of elements of that order (all orders).
    pub order_counts: BTreeMap<u64, u64>,
}

impl ClassData {
    pub fn classes_of(&self, r: u64) -> &[PrimeOrderClass] {
        self.by_prime.get(&r).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.by_prime.keys().copied()
    }
}

fn is_small_prime(n: u64) -> bool {
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

/// Close the conjugation orbit of `x` under the group generators. Returns
/// the class with its exact size, or an error when it exceeds the bound.
pub fn conjugation_class(
    group: &PermGroup,
    x: &Permutation,
    bound: usize,
) -> Result<PrimeOrderClass, PermError> {
    if !group.contains(x) {
        return Err(PermError::NotMember);
    }
    let mut hashes = HashSet::new();
    hashes.insert(x.hash128());
    let mut frontier = vec![x.clone()];
    let mut min_rep = x.clone();
    while let Some(y) = frontier.pop() {
        for g in group.generators() {
            let z = y.conjugate_by(g);
            if hashes.insert(z.hash128()) {
                if z < min_rep {
                    min_rep = z.clone();
                }
                frontier.push(z);
                if hashes.len() > bound {
                    return Err(PermError::BoundExceeded("conjugacy class size"));
                }
            }
        }
    }
    Ok(PrimeOrderClass { rep: min_rep, size: hashes.len() as u64, hashes })
}

/// Class size when the orbit bound is hit: |G| / |C_G(x)| by streamed
/// centralizer, for groups within the element bound.
pub fn class_size_by_centralizer(
    group: &PermGroup,
    x: &Permutation,
    bound: u128,
) -> Result<u64, PermError> {
    let c = group.centralizer_of(x, bound)?;
    let size = group.order() / c.order();
    u64::try_from(&size).map_err(|_| PermError::BoundExceeded("class size"))
}

/// One streaming pass over the whole group: conjugacy classes of every
/// prime-order element, plus exact element counts for every order.
///
/// `max_order` bounds the enumeration; `class_bound` bounds any single
/// class's held size.
pub fn prime_order_classes(
    group: &PermGroup,
    max_order: u128,
    class_bound: usize,
) -> Result<ClassData, PermError> {
    if group.order_u128() > max_order {
        return Err(PermError::BoundExceeded("group order for class enumeration"));
    }
    let mut order_counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut by_prime: BTreeMap<u64, Vec<PrimeOrderClass>> = BTreeMap::new();
    for e in group.elements() {
        let o = e.order();
        *order_counts.entry(o).or_insert(0) += 1;
        if o < 2 || !is_small_prime(o) {
            continue;
        }
        let h = e.hash128();
        let classes = by_prime.entry(o).or_default();
        if classes.iter().any(|c| c.contains_hash(h)) {
            continue;
        }
        classes.push(conjugation_class(group, &e, class_bound)?);
    }
    // Certificate: class sizes must add up to the exact element counts.
    for (&r, classes) in &by_prime {
        let total: u64 = classes.iter().map(|c| c.size).sum();
        if total != order_counts[&r] {
            return Err(PermError::Uncertified);
        }
    }
    for classes in by_prime.values_mut() {
        classes.sort_by(|a, b| (a.size, a.rep.images()).cmp(&(b.size, b.rep.images())));
    }
    Ok(ClassData { by_prime, order_counts })
}

/// All conjugacy classes (every order) for small groups; used by the
/// orbit-counting oracle. Returns (representative, size) pairs.
pub fn all_classes_small(group: &PermGroup, bound: u128) -> Result<Vec<(Permutation, u64)>, PermError> {
    if group.order_u128() > bound {
        return Err(PermError::BoundExceeded("full class enumeration"));
    }
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out = Vec::new();
    let mut total = 0u64;
    for e in group.elements() {
        total += 1;
        if seen.contains(&e.hash128()) {
            continue;
        }
        let class = conjugation_class(group, &e, usize::MAX)?;
        seen.extend(class.hashes.iter().copied());
        out.push((class.rep, class.size));
    }
    let sum: u64 = out.iter().map(|(_, s)| s).sum();
    if sum != total {
        return Err(PermError::Uncertified);
    }
    out.sort_by(|a, b| (a.0.order(), a.1, a.0.images()).cmp(&(b.0.order(), b.1, b.0.images())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(texts: &[&str], n: u32) -> PermGroup {
        PermGroup::from_generators(
            n,
            texts.iter().map(|t| Permutation::parse(t, n).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_class() {
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        let c = conjugation_class(&a4, &Permutation::identity(4), 10).unwrap();
        assert_eq!(c.size, 1);
    }

    #[test]
    fn three_cycles_in_s4() {
        let s4 = grp(&["(1,2)", "(1,2,3,4)"], 4);
        let c = conjugation_class(&s4, &Permutation::parse("(1,2,3)", 4).unwrap(), 100).unwrap();
        assert_eq!(c.size, 8);
        assert_eq!(
            class_size_by_centralizer(&s4, &Permutation::parse("(1,2,3)", 4).unwrap(), 1 << 20)
                .unwrap(),
            8
        );
    }

    #[test]
    fn a5_five_cycles_split() {
        let a5 = grp(&["(1,2,3)", "(3,4,5)"], 5);
        let c = conjugation_class(&a5, &Permutation::parse("(1,2,3,4,5)", 5).unwrap(), 100).unwrap();
        assert_eq!(c.size, 12, "A5 splits the 24 five-cycles into two classes");
        let data = prime_order_classes(&a5, 1 << 20, 1 << 20).unwrap();
        assert_eq!(data.classes_of(5).len(), 2);
        assert_eq!(data.classes_of(3).len(), 1);
        assert_eq!(data.classes_of(3)[0].size, 20);
        assert_eq!(data.classes_of(2).len(), 1);
        assert_eq!(data.classes_of(2)[0].size, 15);
        assert_eq!(data.order_counts[&5], 24);
    }

    #[test]
    fn s6_involution_classes_by_cycle_type() {
        let s6 = grp(&["(1,2)", "(1,2,3,4,5,6)"], 6);
        let data = prime_order_classes(&s6, 1 << 20, 1 << 20).unwrap();
        let shapes: Vec<String> = data
            .classes_of(2)
            .iter()
            .map(|c| c.rep.cycle_shape().bracket_notation())
            .collect();
        assert_eq!(data.classes_of(2).len(), 3);
        for s in ["[2,1^4]", "[2^2,1^2]", "[2^3]"] {
            assert!(shapes.iter().any(|t| t == s), "{shapes:?}");
        }
    }

    #[test]
    fn affine_line_has_one_class_of_order_7() {
        // AGL1(7) = 7:6 on 7 points: x -> x+1 and x -> 3x.
        let g = grp(&["(1,2,3,4,5,6,7)", "(2,4,3,7,5,6)"], 7);
        assert_eq!(g.order_u128(), 42);
        let data = prime_order_classes(&g, 1 << 20, 1 << 20).unwrap();
        assert_eq!(data.classes_of(7).len(), 1);
        assert_eq!(data.classes_of(7)[0].size, 6);
    }

    #[test]
    fn class_union_matches_bruteforce_set() {
        let s5 = grp(&["(1,2)", "(1,2,3,4,5)"], 5);
        let data = prime_order_classes(&s5, 1 << 20, 1 << 20).unwrap();
        for r in [2u64, 3, 5] {
            let brute: Vec<Permutation> =
                s5.elements().filter(|e| e.order() == r).collect();
            let total: u64 = data.classes_of(r).iter().map(|c| c.size).sum();
            assert_eq!(total as usize, brute.len());
            for e in &brute {
                assert!(data.classes_of(r).iter().any(|c| c.contains(e)));
            }
        }
    }

    #[test]
    fn full_class_list_small() {
        let s3 = grp(&["(1,2)", "(1,2,3)"], 3);
        let classes = all_classes_small(&s3, 1 << 10).unwrap();
        assert_eq!(classes.len(), 3);
        let sizes: Vec<u64> = classes.iter().map(|c| c.1).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }
}
