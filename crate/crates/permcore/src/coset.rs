//! The action of G on the right cosets of a subgroup H.
//!
//! Cosets are identified by their lexicographically minimal element, found
//! greedily along a stabilizer chain of H whose base is the natural point
//! order; this makes representatives canonical and runs deterministic.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::chain::StabChain;
use crate::error::PermError;
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct CosetAction {
    index: u64,
    /// Canonical (minimal) representative of each coset, in BFS order from
    /// the trivial coset.
    reps: Vec<Permutation>,
    /// Images of the parent generators as permutations of the coset space.
    induced_gens: Vec<Permutation>,
    /// Chain of H with full natural base, kept for membership mapping.
    sub_chain: StabChain,
    /// canonical representative images -> coset id
    id_map: HashMap<Vec<u32>, u32>,
}

impl CosetAction {
    /// Build the coset action of `group` on `subgroup`, which must be
    /// contained in it. The index must stay within `max_index`.
    pub fn new(group: &PermGroup, subgroup: &PermGroup, max_index: u64) -> Result<Self, PermError> {
        if !subgroup.is_subgroup_of(group) {
            return Err(PermError::NotSubgroup);
        }
        let degree = group.degree();
        let all_points: Vec<u32> = (0..degree).collect();
        let sub_chain =
            StabChain::with_base_prefix(degree, subgroup.generators(), &all_points);

        let expected_index = group.order() / subgroup.order();
        if expected_index > BigUint::from(max_index) {
            return Err(PermError::BoundExceeded("coset index"));
        }
        let expected_index = u64::try_from(&expected_index).unwrap();

        let origin = min_coset_rep(&sub_chain, Permutation::identity(degree));
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        ids.insert(origin.images().to_vec(), 0);
        let mut reps = vec![origin];
        let mut edges: Vec<Vec<u32>> = vec![Vec::new(); group.generators().len()];
        let mut head = 0usize;
        while head < reps.len() {
            let rep = reps[head].clone();
            head += 1;
            for (gi, g) in group.generators().iter().enumerate() {
                let image = min_coset_rep(&sub_chain, rep.then(g));
                let next_id = match ids.get(image.images()) {
                    Some(&id) => id,
                    None => {
                        let id = reps.len() as u32;
                        if id as u64 >= max_index {
                            return Err(PermError::BoundExceeded("coset index"));
                        }
                        ids.insert(image.images().to_vec(), id);
                        reps.push(image);
                        id
                    }
                };
                edges[gi].push(next_id);
            }
        }
        if reps.len() as u64 != expected_index {
            return Err(PermError::Validation(format!(
                "coset enumeration found {} cosets, order arithmetic wants {}",
                reps.len(),
                expected_index
            )));
        }
        let induced_gens: Vec<Permutation> = edges
            .into_iter()
            .map(|images| Permutation::from_images(images).expect("induced images are bijective"))
            .collect();
        Ok(CosetAction { index: reps.len() as u64, reps, induced_gens, sub_chain, id_map: ids })
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn induced_generators(&self) -> &[Permutation] {
        &self.induced_gens
    }

    /// The image of an arbitrary parent element in the coset action.
    pub fn induce(&self, g: &Permutation) -> Permutation {
        let images: Vec<u32> = self
            .reps
            .iter()
            .map(|rep| {
                let image = min_coset_rep(&self.sub_chain, rep.then(g));
                self.coset_id(&image).expect("image coset must exist")
            })
            .collect();
        Permutation::from_images(images).expect("induced action is a permutation")
    }

    fn coset_id(&self, canonical: &Permutation) -> Option<u32> {
        self.id_map.get(canonical.images()).copied()
    }

    /// Number of fixed points of the induced image of `g`.
    pub fn fixed_points_of(&self, g: &Permutation) -> u32 {
        let mut count = 0;
        for rep in &self.reps {
            let image = min_coset_rep(&self.sub_chain, rep.then(g));
            if &image == rep {
                count += 1;
            }
        }
        count
    }

    /// The induced permutation group on the cosets.
    pub fn induced_group(&self) -> PermGroup {
        PermGroup::from_generators(self.index as u32, self.induced_gens.clone())
            .expect("induced generators share the coset degree")
    }

    /// Schreier generators of the stabilizer of the trivial coset; these
    /// generate the full point stabilizer of coset 0 in the parent group.
    pub fn base_coset_stabilizer_gens(&self, parent: &PermGroup) -> Vec<Permutation> {
        let mut out = Vec::new();
        for (gi, g) in parent.generators().iter().enumerate() {
            for (i, rep) in self.reps.iter().enumerate() {
                let target = self.induced_gens[gi].apply(i as u32);
                let schreier = rep.then(g).then(&self.reps[target as usize].inverse());
                if !schreier.is_identity() && !out.contains(&schreier) {
                    out.push(schreier);
                }
            }
        }
        out
    }

    /// Double-inclusion check that the stabilizer of the trivial coset pulls
    /// back to exactly the subgroup. Sound and complete via Schreier
    /// generators; intended for small index.
    pub fn stabilizer_pullback_is_subgroup(
        &self,
        parent: &PermGroup,
        subgroup: &PermGroup,
    ) -> bool {
        // H fixes the trivial coset.
        let forward = subgroup.generators().iter().all(|h| {
            min_coset_rep(&self.sub_chain, self.reps[0].then(h)) == self.reps[0]
        });
        // Every Schreier generator of the stabilizer lies in H.
        let backward = self
            .base_coset_stabilizer_gens(parent)
            .iter()
            .all(|s| subgroup.contains(s));
        forward && backward
    }
}

/// The lexicographically least element of the coset H*g, computed greedily:
/// at each point x in natural order, steer x's image to the minimum the
/// remaining pointwise stabilizer of H allows.
pub fn min_coset_rep(h_chain: &StabChain, g: Permutation) -> Permutation {
    let mut c = g;
    for level in h_chain.levels() {
        let (mut best_y, mut best_img) = (level.base, c.apply(level.base));
        for &y in &level.orbit {
            let img = c.apply(y);
            if img < best_img {
                best_img = img;
                best_y = y;
            }
        }
        if best_y != level.base {
            c = level.transversal[&best_y].then(&c);
        }
    }
    c
}

/// Order of the kernel of the action: |G| / |induced image|.
pub fn core_order(group: &PermGroup, action: &CosetAction) -> BigUint {
    group.order() / action.induced_group().order()
}

pub fn is_core_free(group: &PermGroup, action: &CosetAction) -> bool {
    core_order(group, action) == BigUint::from(1u32)
}

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
    fn a5_on_d10_cosets() {
        let a5 = grp(&["(1,2,3)", "(3,4,5)"], 5);
        let d10 = a5.subgroup(vec![p("(1,2,3,4,5)", 5), p("(2,5)(3,4)", 5)]).unwrap();
        assert_eq!(d10.order_u128(), 10);
        let action = CosetAction::new(&a5, &d10, 1000).unwrap();
        assert_eq!(action.index(), 6);
        assert!(action.induced_group().is_transitive());
        assert!(action.stabilizer_pullback_is_subgroup(&a5, &d10));
    }

    #[test]
    fn s7_on_point_stabilizer_is_natural() {
        let s7 = grp(&["(1,2)", "(1,2,3,4,5,6,7)"], 7);
        let s6 = s7.point_stabilizer(0).unwrap();
        let action = CosetAction::new(&s7, &s6, 100).unwrap();
        assert_eq!(action.index(), 7);
        let induced = action.induced_group();
        assert_eq!(induced.order(), s7.order());
        assert!(is_core_free(&s7, &action));
    }

    #[test]
    fn s4_cores() {
        let s4 = grp(&["(1,2)", "(1,2,3,4)"], 4);
        let s3 = s4.subgroup(vec![p("(1,2)", 4), p("(1,2,3)", 4)]).unwrap();
        let a4 = s4.subgroup(vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        let act_s3 = CosetAction::new(&s4, &s3, 100).unwrap();
        assert!(is_core_free(&s4, &act_s3));
        let act_a4 = CosetAction::new(&s4, &a4, 100).unwrap();
        assert_eq!(core_order(&s4, &act_a4), BigUint::from(12u32));
        assert!(!is_core_free(&s4, &act_a4));
    }

    #[test]
    fn rejects_non_subgroup() {
        let a4 = grp(&["(1,2,3)", "(2,3,4)"], 4);
        let c2 = grp(&["(1,2)"], 4);
        assert!(matches!(CosetAction::new(&a4, &c2, 100), Err(PermError::NotSubgroup)));
    }

    #[test]
    fn index_times_subgroup_order_is_group_order() {
        let a5 = grp(&["(1,2,3)", "(3,4,5)"], 5);
        let a4 = a5.subgroup(vec![p("(1,2,3)", 5), p("(2,3,4)", 5)]).unwrap();
        let action = CosetAction::new(&a5, &a4, 100).unwrap();
        assert_eq!(action.index(), 5);
        assert_eq!(BigUint::from(action.index()) * a4.order(), a5.order().clone());
        // the natural degree-5 action again
        assert!(action.induced_group().is_transitive());
    }

    #[test]
    fn canonical_reps_are_minimal_and_stable() {
        let a5 = grp(&["(1,2,3)", "(3,4,5)"], 5);
        let d10 = a5.subgroup(vec![p("(1,2,3,4,5)", 5), p("(2,5)(3,4)", 5)]).unwrap();
        let action = CosetAction::new(&a5, &d10, 100).unwrap();
        // every representative is minimal in its coset: multiplying by any
        // subgroup element never produces something smaller
        for rep in action.representatives() {
            for h in d10.elements() {
                let other = h.then(rep);
                assert!(rep.images() <= other.images());
            }
        }
        assert_eq!(core_order(&a5, &action), BigUint::one());
    }

    #[test]
    fn induce_matches_generator_images() {
        let s4 = grp(&["(1,2)", "(1,2,3,4)"], 4);
        let s3 = s4.subgroup(vec![p("(1,2)", 4), p("(1,2,3)", 4)]).unwrap();
        let action = CosetAction::new(&s4, &s3, 100).unwrap();
        for (i, g) in s4.generators().iter().enumerate() {
            assert_eq!(&action.induce(g), &action.induced_generators()[i]);
        }
    }
}
