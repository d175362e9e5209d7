use affine::bridge::{matrix_to_vector_perm, VectorSpace};
use affine::{almost_elusive_affine, Field};
use permcore::lattice::SmallGroup;
use permcore::PermGroup;
use std::collections::BTreeMap;

fn ae_orders_in_normalizer(p: u64, k: Vec<affine::GfMatrix>) -> Vec<(u32, String)> {
    let f = Field::new(p, 1).unwrap();
    let space = VectorSpace::new(&f, 2);
    let n = affine::hering::normalizer_in_gl2(p, &k).unwrap();
    let n_perms: Vec<permcore::Permutation> =
        n.iter().map(|m| matrix_to_vector_perm(&f, m, &space)).collect();
    let n_group = PermGroup::from_generators(space.count() as u32 - 1, n_perms).unwrap();
    eprintln!("p={p} |N| = {}", n_group.order_u128());
    let small = SmallGroup::from_group(&n_group, 20_000).unwrap();
    let mut out = Vec::new();
    for class in small.subgroup_classes().unwrap() {
        let h = small.to_permgroup(&class.canonical);
        if !h.is_transitive() {
            continue;
        }
        let mats: Vec<affine::GfMatrix> = h
            .generators()
            .iter()
            .map(|pm| affine::bridge::matrix_from_vector_perm(&f, pm, &space))
            .collect();
        if almost_elusive_affine(&f, &mats, 1 << 27).unwrap().is_almost_elusive() {
            let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
            for e in h.elements() {
                *hist.entry(e.order()).or_insert(0) += 1;
            }
            out.push((class.order, format!("{hist:?}")));
        }
    }
    out
}

#[test]
#[ignore]
fn deg121() {
    let v = ae_orders_in_normalizer(11, affine::hering::sl2_3_in_sl2p(11).unwrap());
    eprintln!("V-chunk AE: {:?}", v.iter().map(|x| x.0).collect::<Vec<_>>());
    for (o, s) in &v { eprintln!("  V {o}: {s}"); }
    let w = ae_orders_in_normalizer(11, affine::hering::sl2_5_in_sl2p(11).unwrap());
    eprintln!("VII-chunk AE: {:?}", w.iter().map(|x| x.0).collect::<Vec<_>>());
    for (o, s) in &w { eprintln!("  VII {o}: {s}"); }
    // overlap by fingerprint
    let vs: std::collections::BTreeSet<&String> = v.iter().map(|x| &x.1).collect();
    let overlap = w.iter().filter(|x| vs.contains(&x.1)).count();
    eprintln!("overlap by spectrum: {overlap}");
}
