//! Derangement analysis of a pair (G, H): the census of prime-order
//! conjugacy classes with their fixed-point counts on G/H, the elusive and
//! almost-elusive verdicts, the class-count comparison, and the
//! largest-prime corollary check.
//!
//! A class deranges exactly when its representative fixes no coset, which
//! the coset action answers directly; the explicit fusion search is kept
//! only as a cross-check oracle.

use std::collections::BTreeSet;

use serde::Serialize;

use numth::factor::factorize;
use permcore::classes::{prime_order_classes, ClassData};
use permcore::{CosetAction, PermError, PermGroup, Permutation};

#[derive(Debug, Clone, Copy)]
pub struct CensusConfig {
    /// Element-enumeration ceiling for class discovery.
    pub max_group_order: u128,
    /// Coset-index ceiling.
    pub max_index: u64,
    /// Held-class-size ceiling.
    pub class_bound: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { max_group_order: 20_000_000, max_index: 1_000_000, class_bound: 1_000_000 }
    }
}

impl CensusConfig {
    pub fn extended() -> Self {
        CensusConfig { max_group_order: 100_000_000, max_index: 1_000_000, class_bound: 4_000_000 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub order: u64,
    pub size: u64,
    #[serde(skip)]
    pub rep: Permutation,
    pub shape: String,
    pub fixed_points: u64,
    pub is_derangement: bool,
    /// Among the classes of this order, 1-based rank by ascending size
    /// (ties broken by representative); "3A" is rank 1, "3B" rank 2.
    pub size_rank: u32,
    /// Whether the representative lies in the designated socle, when one
    /// was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_socle: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassInventory {
    pub index: u64,
    pub entries: Vec<ClassEntry>,
    pub derangement_classes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Elusive,
    AlmostElusive(ClassDescriptor),
    NotAlmostElusive { derangement_classes: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDescriptor {
    pub order: u64,
    pub size: u64,
    pub shape: String,
    pub size_rank: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_socle: Option<bool>,
}

impl ClassInventory {
    pub fn verdict(&self) -> Verdict {
        let der: Vec<&ClassEntry> =
            self.entries.iter().filter(|e| e.is_derangement).collect();
        match der.as_slice() {
            [] => Verdict::Elusive,
            [single] => Verdict::AlmostElusive(ClassDescriptor {
                order: single.order,
                size: single.size,
                shape: single.shape.clone(),
                size_rank: single.size_rank,
                in_socle: single.in_socle,
            }),
            many => Verdict::NotAlmostElusive { derangement_classes: many.len() },
        }
    }

    pub fn derangement_entries(&self) -> impl Iterator<Item = &ClassEntry> {
        self.entries.iter().filter(|e| e.is_derangement)
    }
}

/// Number of fixed points of an arbitrary group element on the cosets.
pub fn fixed_points(
    action: &CosetAction,
    group: &PermGroup,
    x: &Permutation,
) -> Result<u64, PermError> {
    if !group.contains(x) {
        return Err(PermError::NotMember);
    }
    Ok(action.fixed_points_of(x) as u64)
}

/// Full census of (G, H) with precomputed class data for G.
pub fn census_with_classes(
    group: &PermGroup,
    class_data: &ClassData,
    subgroup: &PermGroup,
    config: &CensusConfig,
    socle: Option<&PermGroup>,
) -> Result<ClassInventory, PermError> {
    let action = CosetAction::new(group, subgroup, config.max_index)?;
    let mut entries = Vec::new();
    for r in class_data.primes() {
        for (i, class) in class_data.classes_of(r).iter().enumerate() {
            let fix = action.fixed_points_of(&class.rep) as u64;
            entries.push(ClassEntry {
                order: r,
                size: class.size,
                rep: class.rep.clone(),
                shape: class.rep.cycle_shape().bracket_notation(),
                fixed_points: fix,
                is_derangement: fix == 0,
                size_rank: i as u32 + 1,
                in_socle: socle.map(|s| s.contains(&class.rep)),
            });
        }
    }
    let derangement_classes = entries.iter().filter(|e| e.is_derangement).count();
    Ok(ClassInventory { index: action.index(), entries, derangement_classes })
}

/// Full census of the pair, computing the class data in place.
pub fn derangement_census(
    group: &PermGroup,
    subgroup: &PermGroup,
    config: &CensusConfig,
) -> Result<ClassInventory, PermError> {
    let data = prime_order_classes(group, config.max_group_order, config.class_bound)?;
    census_with_classes(group, &data, subgroup, config, None)
}

pub fn is_elusive(inventory: &ClassInventory) -> bool {
    matches!(inventory.verdict(), Verdict::Elusive)
}

pub fn is_almost_elusive(inventory: &ClassInventory) -> bool {
    matches!(inventory.verdict(), Verdict::AlmostElusive(_))
}

/// Compare the number of order-r classes in the socle against a point
/// stabilizer inside it: when a_r > b_r a derangement of order r must
/// exist, and the census is cross-validated against that implication by
/// the caller.
pub fn class_count_comparison(
    socle: &PermGroup,
    stabilizer_part: &PermGroup,
    r: u64,
    config: &CensusConfig,
) -> Result<(usize, usize, bool), PermError> {
    let a = prime_order_classes(socle, config.max_group_order, config.class_bound)?
        .classes_of(r)
        .len();
    let b = prime_order_classes(stabilizer_part, config.max_group_order, config.class_bound)?
        .classes_of(r)
        .len();
    Ok((a, b, a > b))
}

#[derive(Debug, Clone, Serialize)]
pub struct LargestPrimeReport {
    pub derangement_prime: u64,
    pub largest_index_prime: u64,
    pub agrees: bool,
}

/// For an almost elusive pair: does the derangement prime equal the largest
/// prime divisor of the index?
pub fn largest_prime_check(inventory: &ClassInventory) -> Result<LargestPrimeReport, PermError> {
    let Verdict::AlmostElusive(descriptor) = inventory.verdict() else {
        return Err(PermError::Validation("pair is not almost elusive".into()));
    };
    let f = factorize(inventory.index)
        .map_err(|e| PermError::Validation(format!("index factorization: {e}")))?;
    let r_max = f.max_prime().unwrap_or(1);
    Ok(LargestPrimeReport {
        derangement_prime: descriptor.order,
        largest_index_prime: r_max,
        agrees: descriptor.order == r_max,
    })
}

/// Fusion cross-check: a class of order r fails to derange exactly when
/// some order-r class of H fuses into it. Exercised for groups small
/// enough to enumerate.
pub fn fusion_cross_check(
    group: &PermGroup,
    subgroup: &PermGroup,
    inventory: &ClassInventory,
    config: &CensusConfig,
) -> Result<bool, PermError> {
    let g_classes = prime_order_classes(group, config.max_group_order, config.class_bound)?;
    let h_classes = prime_order_classes(subgroup, config.max_group_order, config.class_bound)?;
    for entry in &inventory.entries {
        let g_class = g_classes
            .classes_of(entry.order)
            .iter()
            .find(|c| c.contains(&entry.rep))
            .ok_or(PermError::Uncertified)?;
        let fused = h_classes
            .classes_of(entry.order)
            .iter()
            .any(|hc| g_class.contains(&hc.rep));
        if fused == entry.is_derangement {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive oracle for small groups: every prime-order element's
/// fixed-point status matches its class flag.
pub fn exhaustive_flag_check(
    group: &PermGroup,
    subgroup: &PermGroup,
    inventory: &ClassInventory,
    bound: u128,
) -> Result<bool, PermError> {
    if group.order_u128() > bound {
        return Err(PermError::BoundExceeded("exhaustive flag check"));
    }
    let action = CosetAction::new(group, subgroup, 1_000_000)?;
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for e in inventory.entries.iter() {
        primes.insert(e.order);
    }
    for g in group.elements() {
        let o = g.order();
        if !primes.contains(&o) {
            continue;
        }
        let has_fix = action.fixed_points_of(&g) > 0;
        let class = permcore::classes::conjugation_class(group, &g, usize::MAX)?;
        let entry = inventory
            .entries
            .iter()
            .find(|e| e.order == o && class.contains(&e.rep))
            .ok_or(PermError::Uncertified)?;
        if entry.is_derangement == has_fix {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use permcore::named;

    fn p(text: &str, n: u32) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn a5_on_d10_is_almost_elusive() {
        let a5 = named::alternating(5);
        let d10 = a5
            .subgroup(vec![p("(1,2,3,4,5)", 5), p("(2,5)(3,4)", 5)])
            .unwrap();
        let inv = derangement_census(&a5, &d10, &CensusConfig::default()).unwrap();
        assert_eq!(inv.index, 6);
        let Verdict::AlmostElusive(desc) = inv.verdict() else {
            panic!("expected almost elusive, got {:?}", inv.verdict());
        };
        assert_eq!(desc.order, 3);
        assert_eq!(desc.shape, "[3,1^2]");
        // a 5-cycle has exactly one fixed coset
        let five = inv.entries.iter().find(|e| e.order == 5).unwrap();
        assert_eq!(five.fixed_points, 1);
        assert!(!five.is_derangement);

        let lp = largest_prime_check(&inv).unwrap();
        assert!(lp.agrees);
        assert_eq!(lp.largest_index_prime, 3);

        assert!(fusion_cross_check(&a5, &d10, &inv, &CensusConfig::default()).unwrap());
        assert!(exhaustive_flag_check(&a5, &d10, &inv, 1 << 20).unwrap());
    }

    #[test]
    fn a5_on_a4_has_two_derangement_classes() {
        let a5 = named::alternating(5);
        let a4 = a5.subgroup(vec![p("(1,2,3)", 5), p("(2,3,4)", 5)]).unwrap();
        let inv = derangement_census(&a5, &a4, &CensusConfig::default()).unwrap();
        assert_eq!(inv.index, 5);
        assert_eq!(inv.verdict(), Verdict::NotAlmostElusive { derangement_classes: 2 });
        for e in inv.derangement_entries() {
            assert_eq!(e.order, 5, "both classes of 5-cycles derange");
        }
    }

    #[test]
    fn s7_on_s6_derangements_are_seven_cycles() {
        let s7 = named::symmetric(7);
        let s6 = s7.point_stabilizer(0).unwrap();
        let inv = derangement_census(&s7, &s6, &CensusConfig::default()).unwrap();
        let Verdict::AlmostElusive(d) = inv.verdict() else { panic!() };
        assert_eq!(d.shape, "[7]");
        let lp = largest_prime_check(&inv).unwrap();
        assert!(lp.agrees);
    }

    #[test]
    fn class_count_comparison_examples() {
        // (A6, L2(5)-point-part, r=3): a_3 = 2 > b_3 = 1
        let a6 = named::alternating(6);
        // L2(5) on 6 points inside A6: x -> x+1 and x -> -1/x on the
        // projective line, with infinity as point 1
        let l25 = a6
            .subgroup(vec![p("(2,3,4,5,6)", 6), p("(1,2)(3,6)", 6)])
            .unwrap();
        assert_eq!(l25.order_u128(), 60);
        let (a, b, exceeds) =
            class_count_comparison(&a6, &l25, 3, &CensusConfig::default()).unwrap();
        assert_eq!((a, b), (2, 1));
        assert!(exceeds);

        // (A5, D10, r=5): a_5 = b_5 = 2
        let a5 = named::alternating(5);
        let d10 = a5.subgroup(vec![p("(1,2,3,4,5)", 5), p("(2,5)(3,4)", 5)]).unwrap();
        let (a, b, exceeds) =
            class_count_comparison(&a5, &d10, 5, &CensusConfig::default()).unwrap();
        assert_eq!((a, b), (2, 2));
        assert!(!exceeds);

        // trivial equality when H = G
        let (a, b, exceeds) =
            class_count_comparison(&a5, &a5, 2, &CensusConfig::default()).unwrap();
        assert_eq!(a, b);
        assert!(!exceeds);
    }

    #[test]
    fn primes_not_dividing_stabilizer_always_derange() {
        let a5 = named::alternating(5);
        let a4 = a5.subgroup(vec![p("(1,2,3)", 5), p("(2,3,4)", 5)]).unwrap();
        let inv = derangement_census(&a5, &a4, &CensusConfig::default()).unwrap();
        // 5 divides |A5| but not |A4|: every order-5 class deranges
        for e in inv.entries.iter().filter(|e| e.order == 5) {
            assert!(e.is_derangement);
        }
    }

    #[test]
    fn json_report_shape() {
        let a5 = named::alternating(5);
        let d10 = a5.subgroup(vec![p("(1,2,3,4,5)", 5), p("(2,5)(3,4)", 5)]).unwrap();
        let inv = derangement_census(&a5, &d10, &CensusConfig::default()).unwrap();
        let json = serde_json::to_value(&inv).unwrap();
        assert_eq!(json["index"], 6);
        assert!(json["entries"].as_array().unwrap().len() >= 3);
        assert!(json["entries"][0].get("order").is_some());
    }
}
