//! Brute-force census of the affine group G = V:H: every prime-order pair
//! (v, h), its derangement flag by direct fixed-point solving, grouped into
//! G-conjugacy orbits. This is the independent oracle against the Jordan
//! criterion.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::bridge::{matrix_to_vector_perm, VectorSpace};
use crate::error::AffineError;
use crate::gf::{El, Field};
use crate::jordan::{jordan_shape_unipotent, JordanShape};
use crate::matrix::GfMatrix;
use permcore::PermGroup;

/// One conjugacy class of prime-order elements of V:H.
#[derive(Debug, Clone)]
pub struct AffineClass {
    pub order: u64,
    pub size: u64,
    pub is_derangement: bool,
    /// Jordan shape of the linear part when the order is p.
    pub linear_shape: Option<JordanShape>,
}

#[derive(Debug, Clone)]
pub struct AffineCensus {
    pub degree: u64,
    pub group_order: u128,
    pub classes: Vec<AffineClass>,
}

impl AffineCensus {
    pub fn derangement_classes(&self) -> Vec<&AffineClass> {
        self.classes.iter().filter(|c| c.is_derangement).collect()
    }

    pub fn is_almost_elusive(&self) -> bool {
        self.derangement_classes().len() == 1
    }
}

/// An affine pair (v, h) acting by u -> hu + v, with composition
/// "apply a, then b".
#[derive(Clone, PartialEq, Eq, Hash)]
struct Pair {
    v: Vec<El>,
    h: u32, // index into the element table of H
}

struct HTable {
    mats: Vec<GfMatrix>,
    index: HashMap<GfMatrix, u32>,
}

impl HTable {
    fn mul(&self, field: &Field, a: u32, b: u32) -> u32 {
        let m = self.mats[b as usize].mul(field, &self.mats[a as usize]);
        self.index[&m]
    }
}

/// Exhaustive census of V:H for H given by matrix generators over the
/// prime field. Bounded by p^d * |H|.
pub fn brute_force_affine_census(
    field: &Field,
    h_gens: &[GfMatrix],
    pair_bound: u128,
) -> Result<AffineCensus, AffineError> {
    assert_eq!(field.k(), 1);
    let p = field.p();
    let d = h_gens.first().map(|m| m.rows()).unwrap_or(0) as u32;
    let space = VectorSpace::new(field, d);
    let v_count = space.count();

    let perms: Vec<permcore::Permutation> =
        h_gens.iter().map(|m| matrix_to_vector_perm(field, m, &space)).collect();
    let h_group = PermGroup::from_generators(v_count as u32 - 1, perms)?;
    let h_order = h_group.order_u128();
    let total = h_order * v_count as u128;
    if total > pair_bound {
        return Err(AffineError::BoundExceeded("affine pair census"));
    }

    // element table of H (as matrices)
    let mut mats = Vec::with_capacity(h_order as usize);
    let mut index = HashMap::new();
    for perm in h_group.elements() {
        let m = crate::bridge::matrix_from_vector_perm(field, &perm, &space);
        index.insert(m.clone(), mats.len() as u32);
        mats.push(m);
    }
    let table = HTable { mats, index };

    // prime-order pairs: h of order r, pair order r iff sum(h^i) v = 0;
    // pairs over h = 1 are the translations.
    let mut pairs_by_order: BTreeMap<u64, Vec<(Pair, bool)>> = BTreeMap::new();
    for (hi, m) in table.mats.iter().enumerate() {
        let o = m.order(field, 1 << 20)?;
        let is_identity = o == 1;
        let candidate_order = if is_identity { p } else { o };
        if !is_small_prime(candidate_order) {
            continue;
        }
        // power sum over the element order (for h = 1 this is o * I... use
        // the pair-order condition directly)
        let mut sum = GfMatrix::identity(d as usize);
        let mut pow = GfMatrix::identity(d as usize);
        for _ in 1..candidate_order {
            pow = pow.mul(field, m);
            sum = sum.add(field, &pow);
        }
        let hm1 = m.sub(field, &GfMatrix::identity(d as usize));
        for vi in 0..v_count {
            let v = space.vector(vi);
            if is_identity && vi == 0 {
                continue; // identity of G
            }
            // order of (v, h) is exactly candidate_order?
            if sum.apply(field, &v).iter().any(|&c| c != 0) {
                continue;
            }
            let deranges = !hm1.image_contains(field, &v);
            pairs_by_order
                .entry(candidate_order)
                .or_default()
                .push((Pair { v, h: hi as u32 }, deranges));
        }
    }

    // conjugating generators of G: translations by basis vectors and the
    // generators of H
    let id_idx = table.index[&GfMatrix::identity(d as usize)];
    let mut conj_gens: Vec<(Vec<El>, u32)> = Vec::new();
    for j in 0..d {
        let mut v = vec![0; d as usize];
        v[j as usize] = 1;
        conj_gens.push((v, id_idx));
    }
    for g in h_gens {
        conj_gens.push((vec![0; d as usize], table.index[g]));
    }

    let pair_mul = |a: &Pair, b: &Pair| -> Pair {
        // apply a then b: (v, h)*(w, m) = (m v + w, m h)
        let mb = &table.mats[b.h as usize];
        let mut v = mb.apply(field, &a.v);
        for (x, &y) in v.iter_mut().zip(&b.v) {
            *x = field.add(*x, y);
        }
        Pair { v, h: table.mul(field, a.h, b.h) }
    };
    let pair_inv = |a: &Pair| -> Pair {
        let m_inv = table.mats[a.h as usize].inverse(field).expect("invertible");
        let mut v = m_inv.apply(field, &a.v);
        for x in v.iter_mut() {
            *x = field.neg(*x);
        }
        Pair { v, h: table.index[&m_inv] }
    };

    let mut classes = Vec::new();
    for (&order, pairs) in &pairs_by_order {
        let mut seen: HashSet<(u64, u32)> = HashSet::new();
        let key = |p: &Pair| (space.index(&p.v), p.h);
        let flag_of: HashMap<(u64, u32), bool> =
            pairs.iter().map(|(p, f)| (key(p), *f)).collect();
        for (pair, deranges) in pairs {
            if seen.contains(&key(pair)) {
                continue;
            }
            // close the conjugation orbit
            let mut orbit: HashSet<(u64, u32)> = HashSet::new();
            orbit.insert(key(pair));
            let mut frontier = vec![pair.clone()];
            let mut shape = None;
            if order == p && !table.mats[pair.h as usize].is_identity() {
                shape = Some(jordan_shape_unipotent(field, &table.mats[pair.h as usize])?);
            } else if order == p {
                shape = Some(JordanShape::from_pairs(&[(1, d)]));
            }
            while let Some(x) = frontier.pop() {
                for (gv, gh) in &conj_gens {
                    let g = Pair { v: gv.clone(), h: *gh };
                    let conj = pair_mul(&pair_mul(&pair_inv(&g), &x), &g);
                    if orbit.insert(key(&conj)) {
                        // consistency: the flag is a class invariant
                        debug_assert_eq!(flag_of[&key(&conj)], *deranges);
                        frontier.push(conj);
                    }
                }
            }
            seen.extend(orbit.iter().copied());
            classes.push(AffineClass {
                order,
                size: orbit.len() as u64,
                is_derangement: *deranges,
                linear_shape: shape,
            });
        }
        // certificate: orbit sizes add up to the number of pairs
        let sum: u64 = classes.iter().filter(|c| c.order == order).map(|c| c.size).sum();
        if sum as usize != pairs.len() {
            return Err(AffineError::BadParameters("class orbit sizes do not add up".into()));
        }
    }
    classes.sort_by(|a, b| (a.order, a.size).cmp(&(b.order, b.size)));
    Ok(AffineCensus { degree: v_count, group_order: total, classes })
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hering;

    #[test]
    fn gamma_l1_8_census_has_one_derangement_class() {
        let f = Field::new(2, 1).unwrap();
        let gens = hering::gamma_l1_gens(2, 3).unwrap();
        let census = brute_force_affine_census(&f, &gens, 1 << 20).unwrap();
        assert_eq!(census.group_order, 8 * 21);
        let der = census.derangement_classes();
        assert_eq!(der.len(), 1, "the 7 translations fuse into one class");
        assert_eq!(der[0].size, 7);
        assert_eq!(der[0].order, 2);
        assert!(census.is_almost_elusive());
    }

    #[test]
    fn gl2_3_census_is_not_almost_elusive() {
        let f = Field::new(3, 1).unwrap();
        let gens = hering::gl_gens(&Field::new(3, 1).unwrap(), 2);
        let census = brute_force_affine_census(&f, &gens, 1 << 22).unwrap();
        assert!(census.derangement_classes().len() >= 2, "{:?}", census.classes);
        assert!(!census.is_almost_elusive());
    }

    #[test]
    fn translations_always_form_single_class_when_transitive() {
        let f = Field::new(5, 1).unwrap();
        let gens = hering::sl2_3_in_sl2p(5).unwrap();
        let census = brute_force_affine_census(&f, &gens, 1 << 22).unwrap();
        let translation_class = census
            .classes
            .iter()
            .find(|c| c.order == 5 && c.linear_shape == Some(JordanShape::from_pairs(&[(1, 2)])))
            .unwrap();
        assert_eq!(translation_class.size, 24);
        assert!(translation_class.is_derangement);
    }
}
