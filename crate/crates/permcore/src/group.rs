//! Permutation groups with a stabilizer-chain certificate.

use num_bigint::BigUint;

use crate::chain::StabChain;
use crate::error::PermError;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: u32,
    gens: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    pub fn from_generators(degree: u32, gens: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        let chain = StabChain::new(degree, &gens);
        let order = chain.order();
        Ok(PermGroup { degree, gens, chain, order })
    }

    pub fn trivial(degree: u32) -> Self {
        PermGroup::from_generators(degree, vec![]).unwrap()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u128(&self) -> u128 {
        self.chain.order_u128()
    }

    /// Order as u64; errors if it does not fit.
    pub fn order_u64(&self) -> Result<u64, PermError> {
        u64::try_from(&self.order).map_err(|_| PermError::BoundExceeded("order exceeds u64"))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Orbit of a point under the group, in BFS order.
    pub fn orbit(&self, point: u32) -> Result<Vec<u32>, PermError> {
        if point >= self.degree {
            return Err(PermError::PointOutOfRange(point as u64 + 1, self.degree));
        }
        let mut orbit = vec![point];
        let mut seen = vec![false; self.degree as usize];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for g in &self.gens {
                let z = g.apply(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    orbit.push(z);
                }
            }
        }
        Ok(orbit)
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree as usize];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p as usize] {
                let orb = self.orbit(p).unwrap();
                for &y in &orb {
                    seen[y as usize] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).unwrap().len() as u32 == self.degree
    }

    /// Stabilizer of a point, via a chain based at that point.
    pub fn point_stabilizer(&self, point: u32) -> Result<PermGroup, PermError> {
        self.pointwise_stabilizer(&[point])
    }

    /// Pointwise stabilizer of a tuple of points.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermGroup, PermError> {
        for &p in points {
            if p >= self.degree {
                return Err(PermError::PointOutOfRange(p as u64 + 1, self.degree));
            }
        }
        let chain = StabChain::with_base_prefix(self.degree, &self.gens, points);
        // Count the levels consumed by the prescribed prefix.
        let mut consumed = 0;
        for (i, lv) in (0..chain.base_len()).map(|i| (i, chain.base_point(i))) {
            if i < points.len() && lv == points[i] {
                consumed = i + 1;
            } else {
                break;
            }
        }
        let gens = chain.stabilizer_gens(consumed.min(points.len()));
        PermGroup::from_generators(self.degree, gens)
    }

    /// Pseudorandom element from seeded transversal picks; deterministic in
    /// the seed state.
    pub fn random_element(&self, state: &mut u64) -> Permutation {
        let mut rng = move |n: usize| {
            // splitmix64 step
            *state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = *state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            ((z ^ (z >> 31)) % n as u64) as usize
        };
        self.chain.random_element(&mut rng)
    }

    /// Normal closure of the given elements in this group.
    pub fn normal_closure(&self, seed: &[Permutation]) -> Result<PermGroup, PermError> {
        let mut gens: Vec<Permutation> =
            seed.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut closure = PermGroup::from_generators(self.degree, gens.clone())?;
        loop {
            let mut new_gens = Vec::new();
            for h in &gens {
                for g in &self.gens {
                    let c = h.conjugate_by(g);
                    if !closure.contains(&c) {
                        new_gens.push(c);
                    }
                }
            }
            if new_gens.is_empty() {
                return Ok(closure);
            }
            gens.extend(new_gens);
            closure = PermGroup::from_generators(self.degree, gens.clone())?;
        }
    }

    /// Derived subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup, PermError> {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in self.gens.iter().skip(i + 1) {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Limit of the derived series.
    pub fn perfect_core(&self) -> Result<PermGroup, PermError> {
        let mut current = self.clone();
        loop {
            let next = current.derived_subgroup()?;
            if next.order() == current.order() {
                return Ok(current);
            }
            current = next;
        }
    }

    pub fn is_normalized_by(&self, others: &[Permutation]) -> bool {
        others
            .iter()
            .all(|g| self.gens.iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    /// Subgroup generated inside this group (membership-checked).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup, PermError> {
        for g in &gens {
            if !self.contains(g) {
                return Err(PermError::NotSubgroup);
            }
        }
        PermGroup::from_generators(self.degree, gens)
    }

    /// Stream every element. The identity is always included.
    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.chain.elements()
    }

    /// Streamed normalizer N_G(S) for groups within the element bound.
    pub fn normalizer_of(&self, s: &PermGroup, bound: u128) -> Result<PermGroup, PermError> {
        if self.order_u128() > bound {
            return Err(PermError::BoundExceeded("normalizer enumeration"));
        }
        let mut current = PermGroup::from_generators(self.degree, vec![])?;
        let mut gens: Vec<Permutation> = Vec::new();
        for g in self.elements() {
            if current.contains(&g) {
                continue;
            }
            if s.generators().iter().all(|h| s.contains(&h.conjugate_by(&g))) {
                gens.push(g);
                current = PermGroup::from_generators(self.degree, gens.clone())?;
            }
        }
        Ok(current)
    }

    /// Streamed centralizer C_G(x).
    pub fn centralizer_of(&self, x: &Permutation, bound: u128) -> Result<PermGroup, PermError> {
        if self.order_u128() > bound {
            return Err(PermError::BoundExceeded("centralizer enumeration"));
        }
        let mut current = PermGroup::from_generators(self.degree, vec![])?;
        let mut gens: Vec<Permutation> = Vec::new();
        for g in self.elements() {
            if current.contains(&g) {
                continue;
            }
            if g.then(x) == x.then(&g) {
                gens.push(g);
                current = PermGroup::from_generators(self.degree, gens.clone())?;
            }
        }
        Ok(current)
    }

    /// A Sylow r-subgroup, grown greedily through normalizers.
    pub fn sylow_subgroup(&self, r: u64, bound: u128) -> Result<PermGroup, PermError> {
        let order = self.order_u128();
        if order > bound {
            return Err(PermError::BoundExceeded("sylow enumeration"));
        }
        let mut target = 1u128;
        let mut o = order;
        while o % r as u128 == 0 {
            target *= r as u128;
            o /= r as u128;
        }
        let mut p = PermGroup::from_generators(self.degree, vec![])?;
        while p.order_u128() < target {
            let n = self.normalizer_of(&p, bound)?;
            // find an r-power element of the normalizer that extends p
            let mut extended = false;
            for g in n.elements() {
                if g.is_identity() {
                    continue;
                }
                let o = g.order();
                if !is_power_of(o, r) {
                    continue;
                }
                if p.contains(&g) {
                    continue;
                }
                let mut gens = p.generators().to_vec();
                gens.push(g);
                let cand = PermGroup::from_generators(self.degree, gens)?;
                if is_power_u128(cand.order_u128(), r) {
                    p = cand;
                    extended = true;
                    break;
                }
            }
            if !extended {
                return Err(PermError::BoundExceeded("sylow growth stalled"));
            }
        }
        Ok(p)
    }

    /// Setwise stabilizer of a block of points, through the orbit of the
    /// block with representative words; Schreier generators make the result
    /// the full stabilizer. Returns the stabilizer and the orbit length.
    pub fn set_stabilizer(
        &self,
        block: &[u32],
        max_orbit: usize,
    ) -> Result<(PermGroup, u64), PermError> {
        let canon = |set: &mut Vec<u32>| set.sort_unstable();
        let mut seed: Vec<u32> = block.to_vec();
        canon(&mut seed);
        let mut ids: std::collections::HashMap<Vec<u32>, usize> = std::collections::HashMap::new();
        ids.insert(seed.clone(), 0);
        let mut orbit: Vec<(Vec<u32>, Permutation)> =
            vec![(seed, Permutation::identity(self.degree))];
        let mut stab_gens: Vec<Permutation> = Vec::new();
        let mut stab = PermGroup::from_generators(self.degree, vec![])?;
        let mut head = 0;
        while head < orbit.len() {
            let (set, rep) = orbit[head].clone();
            head += 1;
            for g in &self.gens {
                let mut image: Vec<u32> = set.iter().map(|&p| g.apply(p)).collect();
                canon(&mut image);
                match ids.get(&image) {
                    Some(&id) => {
                        let s = rep.then(g).then(&orbit[id].1.inverse());
                        if !s.is_identity() && !stab.contains(&s) {
                            stab_gens.push(s);
                            stab = PermGroup::from_generators(self.degree, stab_gens.clone())?;
                        }
                    }
                    None => {
                        if orbit.len() >= max_orbit {
                            return Err(PermError::BoundExceeded("set orbit"));
                        }
                        ids.insert(image.clone(), orbit.len());
                        orbit.push((image, rep.then(g)));
                    }
                }
            }
        }
        Ok((stab, orbit.len() as u64))
    }

    /// |G| as exact BigUint quotient of |G| by |H| (must divide).
    pub fn index_of(&self, h: &PermGroup) -> Result<BigUint, PermError> {
        if !h.is_subgroup_of(self) {
            return Err(PermError::NotSubgroup);
        }
        let (q, r) = num_integer::Integer::div_rem(&self.order, h.order());
        if !r.eq(&BigUint::ZERO) {
            return Err(PermError::Validation("subgroup order does not divide".into()));
        }
        Ok(q)
    }

    /// Check the chain certificate: order equals the transversal product and
    /// sampled products of generators pass membership.
    pub fn validate_certificate(&self) -> bool {
        if self.order != self.chain.order() {
            return false;
        }
        let id = Permutation::identity(self.degree);
        if !self.contains(&id) {
            return false;
        }
        let mut state = 0x5eedu64;
        for _ in 0..16 {
            let a = self.random_element(&mut state);
            let b = self.random_element(&mut state);
            if !self.contains(&a.then(&b)) {
                return false;
            }
        }
        self.gens.iter().all(|g| self.contains(g))
    }
}

fn is_power_of(mut n: u64, r: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % r == 0 {
        n /= r;
    }
    n == 1
}

fn is_power_u128(mut n: u128, r: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % r as u128 == 0 {
        n /= r as u128;
    }
    n == 1
}

impl PartialEq for PermGroup {
    /// Equality as abstract subgroups of the symmetric group: same order and
    /// mutual containment of generators.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && self.gens.iter().all(|g| other.contains(g))
    }
}

impl Eq for PermGroup {}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(text: &str, n: u32) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    fn grp(texts: &[&str], n: u32) -> PermGroup {
        PermGroup::from_generators(n, texts.iter().map(|t| p(t, n)).collect()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(grp(&["(1,2,3)", "(2,3,4)"], 4).order(), &BigUint::from(12u32));
        assert_eq!(grp(&["(1,2)", "(1,2,3,4,5)"], 5).order(), &BigUint::from(120u32));
    }

    #[test]
    fn degree_mismatch() {
        let bad = PermGroup::from_generators(4, vec![p("(1,2,3)", 5)]);
        assert!(matches!(bad, Err(PermError::DegreeMismatch { .. })));
    }

    #[test]
    fn orbits_and_transitivity() {
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        let mut orb = a4.orbit(0).unwrap();
        orb.sort_unstable();
        assert_eq!(orb, vec![0, 1, 2, 3]);
        assert!(a4.is_transitive());

        let c2 = grp(&["(1,2)"], 4);
        assert_eq!(c2.orbit(2).unwrap(), vec![2]);
        assert!(!c2.is_transitive());
        assert_eq!(c2.orbits().len(), 3);

        // 7:3 Frobenius group is transitive on 7 points
        let frob = grp(&["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"], 7);
        assert_eq!(frob.order(), &BigUint::from(21u32));
        assert!(frob.is_transitive());
    }

    #[test]
    fn point_stabilizer_of_s5() {
        let s5 = grp(&["(1,2)", "(1,2,3,4,5)"], 5);
        let stab = s5.point_stabilizer(0).unwrap();
        assert_eq!(stab.order(), &BigUint::from(24u32));
        assert!(stab.generators().iter().all(|g| g.apply(0) == 0));
    }

    #[test]
    fn derived_series() {
        let s4 = grp(&["(1,2)", "(1,2,3,4)"], 4);
        let a4 = s4.derived_subgroup().unwrap();
        assert_eq!(a4.order(), &BigUint::from(12u32));
        let v4 = a4.derived_subgroup().unwrap();
        assert_eq!(v4.order(), &BigUint::from(4u32));
        assert_eq!(s4.perfect_core().unwrap().order(), &BigUint::one());

        let s5 = grp(&["(1,2)", "(1,2,3,4,5)"], 5);
        assert_eq!(s5.perfect_core().unwrap().order(), &BigUint::from(60u32));
    }

    #[test]
    fn normalizer_and_sylow_in_a5() {
        let a5 = grp(&["(1,2,3)", "(3,4,5)"], 5);
        let syl5 = a5.sylow_subgroup(5, 1 << 20).unwrap();
        assert_eq!(syl5.order(), &BigUint::from(5u32));
        let n = a5.normalizer_of(&syl5, 1 << 20).unwrap();
        assert_eq!(n.order(), &BigUint::from(10u32), "D10 in A5");
        let syl2 = a5.sylow_subgroup(2, 1 << 20).unwrap();
        assert_eq!(syl2.order(), &BigUint::from(4u32));
    }

    #[test]
    fn centralizer() {
        let s4 = grp(&["(1,2)", "(1,2,3,4)"], 4);
        let x = p("(1,2)(3,4)", 4);
        let c = s4.centralizer_of(&x, 1 << 20).unwrap();
        assert_eq!(c.order(), &BigUint::from(8u32), "dihedral centralizer");
    }

    #[test]
    fn setwise_stabilizer() {
        let s6 = grp(&["(1,2)", "(1,2,3,4,5,6)"], 6);
        let (stab, orbit) = s6.set_stabilizer(&[0, 1, 2], 1000).unwrap();
        assert_eq!(orbit, 20);
        assert_eq!(stab.order(), &BigUint::from(36u32), "S3 x S3");
        let a6 = grp(&["(1,2,3)", "(2,3,4,5,6)"], 6);
        let (stab, _) = a6.set_stabilizer(&[0, 1, 2], 1000).unwrap();
        assert_eq!(stab.order(), &BigUint::from(18u32));
    }

    #[test]
    fn certificate() {
        let m11 = grp(&["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"], 11);
        assert!(m11.validate_certificate());
        assert_eq!(m11.order(), &BigUint::from(7920u32));
        let m10 = m11.point_stabilizer(0).unwrap();
        assert_eq!(m10.order(), &BigUint::from(720u32));
    }
}
