use affine::bridge::{matrix_to_vector_perm, VectorSpace};
use affine::{almost_elusive_affine, Field};
use permcore::lattice::SmallGroup;
use permcore::PermGroup;
use std::collections::BTreeMap;

#[test]
#[ignore]
fn full_census_deg121() {
    let f = Field::new(11, 1).unwrap();
    let space = VectorSpace::new(&f, 2);
    let gens = affine::hering::gl_gens(&f, 2);
    let perms: Vec<permcore::Permutation> =
        gens.iter().map(|m| matrix_to_vector_perm(&f, m, &space)).collect();
    let gl = PermGroup::from_generators(120, perms).unwrap();
    assert_eq!(gl.order_u128(), 13200);
    let small = SmallGroup::from_group(&gl, 20_000).unwrap();
    let classes = small.subgroup_classes().unwrap();
    eprintln!("GL2(11): {} subgroup classes", classes.len());

    // semilinear line for family-membership tagging
    let gl1 = affine::hering::gamma_l1_gens(11, 2).unwrap();
    let gl1_perms: Vec<permcore::Permutation> =
        gl1.iter().map(|m| matrix_to_vector_perm(&f, m, &space)).collect();
    let gl1 = PermGroup::from_generators(120, gl1_perms).unwrap();
    let gl1_bits = small.member_bits(&gl1).unwrap();
    let gl1_class = classes
        .iter()
        .find(|c| c.order == gl1.order_u128() as u32 && small.is_subconjugate(&gl1_bits, c))
        .unwrap();

    for class in &classes {
        if class.order < 120 {
            continue;
        }
        let h = small.to_permgroup(&class.canonical);
        if !h.is_transitive() {
            continue;
        }
        let mats: Vec<affine::GfMatrix> = h
            .generators()
            .iter()
            .map(|pm| affine::bridge::matrix_from_vector_perm(&f, pm, &space))
            .collect();
        let v = almost_elusive_affine(&f, &mats, 1 << 27).unwrap();
        if !v.is_almost_elusive() {
            continue;
        }
        let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
        for e in h.elements() {
            *hist.entry(e.order()).or_insert(0) += 1;
        }
        let in_line = small.is_subconjugate(&class.canonical, gl1_class);
        eprintln!("AE order {:4} in_semilinear_line {} spectrum {:?}", class.order, in_line, hist);
    }
}
