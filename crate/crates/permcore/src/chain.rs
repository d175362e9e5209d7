//! Deterministic Schreier-Sims stabilizer chains.
//!
//! A chain certifies the group order as the product of its transversal
//! sizes and decides membership by sifting. Base points can be prescribed,
//! which the coset machinery uses to canonicalize representatives.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<Permutation>,
    /// Orbit of `base` in BFS discovery order.
    pub orbit: Vec<u32>,
    /// point -> u with base^u = point.
    pub transversal: HashMap<u32, Permutation>,
}

impl Level {
    fn new(degree: u32, base: u32) -> Self {
        let mut transversal = HashMap::new();
        transversal.insert(base, Permutation::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal }
    }

    /// Recompute orbit and transversal under the full stabilizer generating
    /// set for this level (its own gens plus everything deeper).
    fn rebuild_orbit(&mut self, degree: u32, stab_gens: &[Permutation]) {
        self.orbit = vec![self.base];
        self.transversal.clear();
        self.transversal.insert(self.base, Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let y = self.orbit[head];
            head += 1;
            let u_y = self.transversal[&y].clone();
            for g in stab_gens {
                let z = g.apply(y);
                if !self.transversal.contains_key(&z) {
                    self.transversal.insert(z, u_y.then(g));
                    self.orbit.push(z);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabChain {
    degree: u32,
    prefix: Vec<u32>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Build a chain for the group generated by `gens`, with no constraints
    /// on the base.
    pub fn new(degree: u32, gens: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Build a chain whose base starts with the given points, in order.
    /// Levels are created on demand, so trailing prescribed points that the
    /// group already fixes may not appear.
    pub fn with_base_prefix(degree: u32, gens: &[Permutation], prefix: &[u32]) -> Self {
        let mut chain = StabChain { degree, prefix: prefix.to_vec(), levels: Vec::new() };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        chain.ensure_level_for(&gens[0]);
        chain.levels[0].gens = gens;
        chain.rebuild_orbits_down_to(0);

        // Bottom-up completion: levels deeper than `i` are complete.
        let mut i = 0usize;
        loop {
            match chain.first_failing_schreier_gen(i) {
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
                Some((residue, level)) => {
                    i = chain.add_gen_at(level, residue);
                }
            }
        }
        chain
    }

    /// Strong generators for the stabilizer at level k: everything assigned
    /// at level k or deeper.
    fn stab_gens_at(&self, k: usize) -> Vec<Permutation> {
        self.levels[k..].iter().flat_map(|lv| lv.gens.iter().cloned()).collect()
    }

    /// Orbits at levels 0..=j depend on the gens at or below them, so all of
    /// them are refreshed after an assignment at level j.
    fn rebuild_orbits_down_to(&mut self, j: usize) {
        for m in (0..=j.min(self.levels.len().saturating_sub(1))).rev() {
            let gens = self.stab_gens_at(m);
            let degree = self.degree;
            self.levels[m].rebuild_orbit(degree, &gens);
        }
    }

    /// Choose the base for a newly created level: the next prescribed point,
    /// else the smallest point moved by the triggering element.
    fn ensure_level_for(&mut self, g: &Permutation) -> usize {
        loop {
            let k = self.levels.len();
            let base = if k < self.prefix.len() {
                self.prefix[k]
            } else {
                (0..self.degree).find(|&p| g.apply(p) != p).expect("identity needs no level")
            };
            self.levels.push(Level::new(self.degree, base));
            if g.apply(base) != base {
                return k;
            }
        }
    }

    /// Assign a new strong generator; returns the level it landed at.
    fn add_gen_at(&mut self, level: usize, g: Permutation) -> usize {
        debug_assert!(level <= self.levels.len());
        let level = if level == self.levels.len() { self.ensure_level_for(&g) } else { level };
        self.levels[level].gens.push(g);
        self.rebuild_orbits_down_to(level);
        level
    }

    /// Scan Schreier generators of level i (over the full stabilizer
    /// generating set); return the first one whose residue fails to sift,
    /// together with the level it belongs at.
    fn first_failing_schreier_gen(&self, i: usize) -> Option<(Permutation, usize)> {
        if i >= self.levels.len() {
            return None;
        }
        let stab_gens = self.stab_gens_at(i);
        let level = &self.levels[i];
        for &y in &level.orbit {
            let u_y = &level.transversal[&y];
            for g in &stab_gens {
                let z = g.apply(y);
                let u_z = &level.transversal[&z];
                let schreier = u_y.then(g).then(&u_z.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, at) = self.sift_from(schreier, i + 1);
                if !residue.is_identity() {
                    return Some((residue, at));
                }
            }
        }
        None
    }

    /// Sift starting at the given level; returns the residue and the level
    /// index where sifting stopped.
    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for i in start..self.levels.len() {
            if g.is_identity() {
                return (g, i);
            }
            let level = &self.levels[i];
            let y = g.apply(level.base);
            match level.transversal.get(&y) {
                None => return (g, i),
                Some(u_y) => g = g.then(&u_y.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for level in &self.levels {
            o *= BigUint::from(level.orbit.len() as u64);
        }
        o
    }

    /// Group order as u128; panics if it does not fit (degrees used here
    /// keep orders far below that).
    pub fn order_u128(&self) -> u128 {
        let mut o: u128 = 1;
        for level in &self.levels {
            o = o.checked_mul(level.orbit.len() as u128).expect("order exceeds u128");
        }
        o
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(g.clone(), 0);
        residue.is_identity()
    }

    /// Number of levels (length of the effective base).
    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    pub fn base_point(&self, i: usize) -> u32 {
        self.levels[i].base
    }

    /// Strong generators fixing the first `k` base points; together they
    /// generate the pointwise stabilizer of those points.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        for level in self.levels.iter().skip(k) {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Deterministic stream over all group elements.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter::new(self)
    }

    /// Element built from uniformly random transversal picks.
    pub fn random_element(&self, rng: &mut impl FnMut(usize) -> usize) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let pick = level.orbit[rng(level.orbit.len())];
            g = g.then(&level.transversal[&pick]);
        }
        g
    }
}

/// Streams every group element exactly once: mixed-radix counters over the
/// transversals, deepest level first, with suffix products cached so the
/// common step costs one composition.
pub struct ElementIter<'a> {
    chain: &'a StabChain,
    counters: Vec<usize>,
    /// partials[k] = T_last[c_last] * ... * T_k[c_k]
    partials: Vec<Permutation>,
    exhausted: bool,
    started: bool,
}

impl<'a> ElementIter<'a> {
    fn new(chain: &'a StabChain) -> Self {
        let n = chain.levels.len();
        let mut it = ElementIter {
            chain,
            counters: vec![0; n],
            partials: vec![Permutation::identity(chain.degree); n.max(1)],
            exhausted: false,
            started: false,
        };
        it.recompute_from(n.saturating_sub(1));
        it
    }

    fn transversal_elem(&self, level: usize, c: usize) -> &'a Permutation {
        let lv = &self.chain.levels[level];
        &lv.transversal[&lv.orbit[c]]
    }

    fn recompute_from(&mut self, k: usize) {
        if self.chain.levels.is_empty() {
            return;
        }
        for j in (0..=k).rev() {
            let t = self.transversal_elem(j, self.counters[j]);
            self.partials[j] = if j + 1 < self.chain.levels.len() {
                self.partials[j + 1].then(t)
            } else {
                t.clone()
            };
        }
    }
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.chain.levels.is_empty() {
                self.exhausted = true;
                return Some(Permutation::identity(self.chain.degree));
            }
            return Some(self.partials[0].clone());
        }
        if self.chain.levels.is_empty() {
            return None;
        }
        // advance the mixed-radix counter, level 0 fastest
        let mut k = 0;
        loop {
            self.counters[k] += 1;
            if self.counters[k] < self.chain.levels[k].orbit.len() {
                break;
            }
            self.counters[k] = 0;
            k += 1;
            if k == self.chain.levels.len() {
                self.exhausted = true;
                return None;
            }
        }
        self.recompute_from(k);
        Some(self.partials[0].clone())
    }
}
