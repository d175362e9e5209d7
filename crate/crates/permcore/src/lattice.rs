//! Subgroup lattices of small groups, up to conjugacy.
//!
//! Enumeration is bottom-up: seeds are the trivial subgroup together with
//! the perfect subgroups (found inside the perfect core as joins of two
//! cyclic subgroups), and every other subgroup is reached by repeatedly
//! adjoining a normalizing element of prime order modulo the current
//! subgroup. Subgroups are bitsets over the sorted element list, and classes
//! are keyed by the least bitset in the conjugation orbit.

use std::collections::{HashMap, HashSet};

use crate::error::PermError;
use crate::group::PermGroup;
use crate::perm::Permutation;

pub type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0u64; n.div_ceil(64)]
}

fn bits_set(b: &mut Bits, i: u32) {
    b[(i / 64) as usize] |= 1u64 << (i % 64);
}

fn bits_get(b: &Bits, i: u32) -> bool {
    b[(i / 64) as usize] >> (i % 64) & 1 == 1
}

fn bits_count(b: &Bits) -> u32 {
    b.iter().map(|w| w.count_ones()).sum()
}

fn bits_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bits_iter(b: &Bits) -> impl Iterator<Item = u32> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        (0..64).filter(move |s| word >> s & 1 == 1).map(move |s| (w * 64 + s) as u32)
    })
}

#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// Least bitset in the conjugation orbit; the class key.
    pub canonical: Bits,
    /// Generating element indices for the canonical member.
    pub gens: Vec<u32>,
    pub order: u32,
    /// Number of conjugates, |G : N_G(S)|.
    pub class_size: u32,
}

/// A group small enough to hold its element list, with product and
/// conjugation bookkeeping by element index.
pub struct SmallGroup {
    degree: u32,
    elements: Vec<Permutation>,
    index_of: HashMap<Vec<u32>, u32>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
    /// Conjugation tables by each group generator.
    conj_tables: Vec<Vec<u32>>,
}

impl SmallGroup {
    pub fn from_group(group: &PermGroup, bound: u128) -> Result<Self, PermError> {
        if group.order_u128() > bound {
            return Err(PermError::BoundExceeded("small-group element bound"));
        }
        let mut elements: Vec<Permutation> = group.elements().collect();
        elements.sort_unstable();
        let index_of: HashMap<Vec<u32>, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.images().to_vec(), i as u32))
            .collect();
        let inverse: Vec<u32> =
            elements.iter().map(|e| index_of[e.inverse().images()]).collect();
        let orders: Vec<u64> = elements.iter().map(|e| e.order()).collect();
        let conj_tables: Vec<Vec<u32>> = group
            .generators()
            .iter()
            .map(|g| {
                elements.iter().map(|e| index_of[e.conjugate_by(g).images()]).collect()
            })
            .collect();
        Ok(SmallGroup { degree: group.degree(), elements, index_of, inverse, orders, conj_tables })
    }

    pub fn len(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn order_of(&self, i: u32) -> u64 {
        self.orders[i as usize]
    }

    pub fn index(&self, e: &Permutation) -> Option<u32> {
        self.index_of.get(e.images()).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.elements[a as usize].then(&self.elements[b as usize]);
        self.index_of[p.images()]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn conj(&self, x: u32, by: u32) -> u32 {
        self.mul(self.mul(self.inv(by), x), by)
    }

    /// Closure of the subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[u32]) -> Bits {
        let mut bits = bits_new(self.elements.len());
        bits_set(&mut bits, 0); // identity is index 0 (lex-least image vector)
        debug_assert!(self.elements[0].is_identity());
        let mut work: Vec<u32> = vec![0];
        for &g in gens {
            if !bits_get(&bits, g) {
                bits_set(&mut bits, g);
                work.push(g);
            }
        }
        let mut head = 0;
        while head < work.len() {
            let a = work[head];
            head += 1;
            for &g in gens {
                for prod in [self.mul(a, g), self.mul(g, a)] {
                    if !bits_get(&bits, prod) {
                        bits_set(&mut bits, prod);
                        work.push(prod);
                    }
                }
            }
        }
        bits
    }

    /// Derived subgroup of the subgroup generated by `gens`: normal closure
    /// of the pairwise commutators inside that subgroup.
    pub fn derived_of(&self, gens: &[u32]) -> Bits {
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in gens.iter().skip(i) {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        // close under conjugation by the subgroup's generators and products
        let mut bits = self.closure(&comms);
        loop {
            let mut grew = false;
            let current: Vec<u32> = bits_iter(&bits).collect();
            let mut new_gens: Vec<u32> = current.clone();
            for &x in &current {
                for &g in gens {
                    let c = self.conj(x, g);
                    if !bits_get(&bits, c) {
                        new_gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return bits;
            }
            bits = self.closure(&new_gens);
        }
    }

    /// Conjugate a subgroup bitset by group generator `t` (table index).
    fn conj_bits(&self, bits: &Bits, table: &[u32]) -> Bits {
        let mut out = bits_new(self.elements.len());
        for i in bits_iter(bits) {
            bits_set(&mut out, table[i as usize]);
        }
        out
    }

    /// Least bitset in the conjugation orbit, plus the orbit size.
    fn canonicalize(&self, bits: &Bits) -> (Bits, u32) {
        let mut seen: HashSet<Bits> = HashSet::new();
        seen.insert(bits.clone());
        let mut work = vec![bits.clone()];
        let mut min = bits.clone();
        while let Some(b) = work.pop() {
            for table in &self.conj_tables {
                let c = self.conj_bits(&b, table);
                if seen.insert(c.clone()) {
                    if c < min {
                        min = c.clone();
                    }
                    work.push(c);
                }
            }
        }
        (min, seen.len() as u32)
    }

    /// All subgroups up to conjugacy, orders ascending.
    pub fn subgroup_classes(&self) -> Result<Vec<SubgroupClass>, PermError> {
        let n = self.elements.len();
        // cyclic subgroups, one generator each
        let mut cyclic: HashMap<Bits, u32> = HashMap::new();
        for i in 1..n as u32 {
            let bits = self.closure(&[i]);
            cyclic.entry(bits).or_insert(i);
        }
        let cyclic: Vec<(Bits, u32)> = {
            let mut v: Vec<_> = cyclic.into_iter().collect();
            v.sort();
            v
        };

        let mut classes: HashMap<Bits, SubgroupClass> = HashMap::new();
        let mut queue: Vec<(Bits, Vec<u32>)> = Vec::new();
        let push = |bits: Bits,
                        gens: Vec<u32>,
                        classes: &mut HashMap<Bits, SubgroupClass>,
                        queue: &mut Vec<(Bits, Vec<u32>)>| {
            let (canonical, class_size) = self.canonicalize(&bits);
            if !classes.contains_key(&canonical) {
                let order = bits_count(&bits);
                classes.insert(
                    canonical.clone(),
                    SubgroupClass { canonical, gens: gens.clone(), order, class_size },
                );
                queue.push((bits, gens));
            }
        };

        // seeds: trivial subgroup and the perfect subgroups
        push(self.closure(&[]), vec![], &mut classes, &mut queue);
        for (bits, gens) in self.perfect_subgroups(&cyclic) {
            push(bits, gens, &mut classes, &mut queue);
        }

        // prime cyclic extension
        let mut head = 0;
        while head < queue.len() {
            let (bits, gens) = queue[head].clone();
            head += 1;
            let normalizer = self.normalizer_indices(&bits, &gens);
            let mut covered = bits.clone();
            for &x in &normalizer {
                if bits_get(&covered, x) {
                    continue;
                }
                // order of xS in N/S
                let mut pow = x;
                let mut o = 1u32;
                while !bits_get(&bits, pow) {
                    pow = self.mul(pow, x);
                    o += 1;
                }
                if !is_prime_u32(o) {
                    continue;
                }
                // union of the o cosets S x^i
                let mut ext = bits.clone();
                let members: Vec<u32> = bits_iter(&bits).collect();
                let mut xi = x;
                for _ in 1..o {
                    for &s in &members {
                        bits_set(&mut ext, self.mul(s, xi));
                    }
                    xi = self.mul(xi, x);
                }
                debug_assert_eq!(bits_count(&ext), o * bits_count(&bits));
                for j in bits_iter(&ext) {
                    bits_set(&mut covered, j);
                }
                let mut ext_gens = gens.clone();
                ext_gens.push(x);
                push(ext, ext_gens, &mut classes, &mut queue);
            }
        }

        let mut out: Vec<SubgroupClass> = classes.into_values().collect();
        out.sort_by(|a, b| (a.order, &a.canonical).cmp(&(b.order, &b.canonical)));
        Ok(out)
    }

    /// Perfect subgroups (derived subgroup equal to themselves) as joins of
    /// two cyclic subgroups of the perfect core, up to conjugacy coverage.
    fn perfect_subgroups(&self, cyclic: &[(Bits, u32)]) -> Vec<(Bits, Vec<u32>)> {
        // perfect core via the derived series of the whole group
        let all_gens: Vec<u32> = (1..self.len()).collect();
        let mut core = self.derived_of_all(&all_gens);
        loop {
            let core_elems: Vec<u32> = bits_iter(&core).collect();
            let next = self.derived_of_all(&core_elems);
            if next == core {
                break;
            }
            core = next;
        }
        if bits_count(&core) == 1 {
            return Vec::new();
        }
        let in_core: Vec<(Bits, u32)> = cyclic
            .iter()
            .filter(|(bits, _)| bits_subset(bits, &core))
            .cloned()
            .collect();
        // one representative cyclic subgroup per conjugacy class
        let mut cyc_reps: Vec<u32> = Vec::new();
        let mut seen: HashSet<Bits> = HashSet::new();
        for (bits, g) in &in_core {
            let (canon, _) = self.canonicalize(bits);
            if seen.insert(canon) {
                cyc_reps.push(*g);
            }
        }
        let mut out: Vec<(Bits, Vec<u32>)> = Vec::new();
        let mut seen_sub: HashSet<Bits> = HashSet::new();
        for &a in &cyc_reps {
            for (_, b) in &in_core {
                let gens = vec![a, *b];
                let join = self.closure(&gens);
                if !seen_sub.insert(join.clone()) {
                    continue;
                }
                if self.derived_of(&gens) == join {
                    out.push((join, gens));
                }
            }
        }
        out
    }

    /// Derived subgroup when the generator list may be the whole subgroup:
    /// commutators of all pairs would be quadratic, so use the generator
    /// form on a reduced generating set first.
    fn derived_of_all(&self, elems: &[u32]) -> Bits {
        // greedily pick a small generating set of the subgroup
        let full = if elems.len() == self.elements.len() - 1 {
            let mut bits = bits_new(self.elements.len());
            for w in 0..self.elements.len() as u32 {
                bits_set(&mut bits, w);
            }
            bits
        } else {
            self.closure(elems)
        };
        let mut gens: Vec<u32> = Vec::new();
        let mut have = self.closure(&[]);
        for &e in elems {
            if !bits_get(&have, e) {
                gens.push(e);
                have = self.closure(&gens);
                if have == full {
                    break;
                }
            }
        }
        self.derived_of(&gens)
    }

    /// Elements normalizing the subgroup, program order.
    fn normalizer_indices(&self, bits: &Bits, gens: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        for n in 0..self.len() {
            if gens.iter().all(|&g| bits_get(bits, self.conj(g, n))) {
                out.push(n);
            }
        }
        out
    }

    /// Is `a` contained in a conjugate of the class representative?
    pub fn is_subconjugate(&self, a: &Bits, class: &SubgroupClass) -> bool {
        if bits_count(a) > class.order || class.order % bits_count(a) != 0 {
            return false;
        }
        let mut seen: HashSet<Bits> = HashSet::new();
        seen.insert(class.canonical.clone());
        let mut work = vec![class.canonical.clone()];
        while let Some(b) = work.pop() {
            if bits_subset(a, &b) {
                return true;
            }
            for table in &self.conj_tables {
                let c = self.conj_bits(&b, table);
                if seen.insert(c.clone()) {
                    work.push(c);
                }
            }
        }
        false
    }

    /// Lift a subgroup bitset to a permutation group.
    pub fn to_permgroup(&self, bits: &Bits) -> PermGroup {
        // small generating set
        let mut gens: Vec<u32> = Vec::new();
        let mut have = self.closure(&[]);
        for e in bits_iter(bits) {
            if !bits_get(&have, e) {
                gens.push(e);
                have = self.closure(&gens);
                if &have == bits {
                    break;
                }
            }
        }
        let perms: Vec<Permutation> =
            gens.iter().map(|&g| self.elements[g as usize].clone()).collect();
        PermGroup::from_generators(self.degree, perms).expect("lifted generators are valid")
    }

    pub fn member_bits(&self, group: &PermGroup) -> Option<Bits> {
        let mut bits = bits_new(self.elements.len());
        // enumerate the subgroup's own elements and map them in
        if group.order_u128() > self.elements.len() as u128 {
            return None;
        }
        for e in group.elements() {
            bits_set(&mut bits, self.index(&e)?);
        }
        Some(bits)
    }

    pub fn bits_order(&self, bits: &Bits) -> u32 {
        bits_count(bits)
    }
}

fn is_prime_u32(n: u32) -> bool {
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

    fn class_orders(g: &PermGroup) -> Vec<u32> {
        let sg = SmallGroup::from_group(g, 20_000).unwrap();
        sg.subgroup_classes().unwrap().iter().map(|c| c.order).collect()
    }

    #[test]
    fn s3_lattice() {
        let orders = class_orders(&grp(&["(1,2)", "(1,2,3)"], 3));
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn q8_lattice() {
        // Q8 as a subgroup of S8 via the regular representation
        let q8 = grp(&["(1,2,5,6)(3,4,7,8)", "(1,3,5,7)(2,8,6,4)"], 8);
        assert_eq!(q8.order_u128(), 8);
        let orders = class_orders(&q8);
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8], "1, center, three C4, Q8");
    }

    #[test]
    fn d10_lattice() {
        let d10 = grp(&["(1,2,3,4,5)", "(2,5)(3,4)"], 5);
        let orders = class_orders(&d10);
        assert_eq!(orders, vec![1, 2, 5, 10]);
    }

    #[test]
    fn a4_and_s4_lattices() {
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        assert_eq!(class_orders(&a4), vec![1, 2, 3, 4, 12]);
        let s4 = grp(&["(1,2)", "(1,2,3,4)"], 4);
        // 11 classes: 1, C2 (2), C3, C4, V4 (2), S3, C6? no: D8, A4, S4
        assert_eq!(class_orders(&s4).len(), 11);
    }

    #[test]
    fn a5_lattice_has_insoluble_members() {
        let a5 = grp(&["(1,2,3)", "(3,4,5)"], 5);
        let orders = class_orders(&a5);
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 10, 12, 60]);
    }

    #[test]
    fn a6_lattice_class_count() {
        let a6 = grp(&["(1,2,3)", "(2,3,4,5,6)"], 6);
        assert_eq!(a6.order_u128(), 360);
        let sg = SmallGroup::from_group(&a6, 20_000).unwrap();
        let classes = sg.subgroup_classes().unwrap();
        assert_eq!(classes.len(), 22, "A6 has 22 classes of subgroups");
        // two classes of A5
        let a5s: Vec<_> = classes.iter().filter(|c| c.order == 60).collect();
        assert_eq!(a5s.len(), 2);
        assert!(a5s.iter().all(|c| c.class_size == 6));
    }

    #[test]
    fn subconjugacy() {
        let s4 = grp(&["(1,2)", "(1,2,3,4)"], 4);
        let sg = SmallGroup::from_group(&s4, 20_000).unwrap();
        let classes = sg.subgroup_classes().unwrap();
        let d8 = classes.iter().find(|c| c.order == 8).unwrap();
        let c4 = classes.iter().find(|c| {
            let g = sg.to_permgroup(&c.canonical);
            let has4 = g.elements().any(|e| e.order() == 4);
            c.order == 4 && has4
        });
        let c4 = c4.unwrap();
        assert!(sg.is_subconjugate(&c4.canonical, d8));
        let s3 = classes.iter().find(|c| c.order == 6).unwrap();
        assert!(!sg.is_subconjugate(&s3.canonical, d8));
    }
}
