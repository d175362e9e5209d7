//! The named-group workshop: classical groups built from forms, the linear
//! two-dimensional family with its outer extensions, the Mathieu group from
//! its stored file, and deterministic subgroup searches (Sylow normalizers,
//! order scans, centralizer extensions).
//!
//! Every constructor validates the resulting order against the closed
//! formula, so neither stored data nor generator code is trusted blindly.

use affine::gf::El;
use affine::{Field, GfMatrix, ProjectiveSpace};
use numth::lie::{lie_order, LieFamily};
use permcore::{named, PermGroup, Permutation};

use crate::error::TableError;

/// A constructed group together with the features recipes refer to.
pub struct NamedGroup {
    pub group: PermGroup,
    /// The simple socle as a subgroup of `group` (equal to it when simple).
    pub socle: PermGroup,
    /// Domain indices of useful rational points, when the construction has
    /// them: for classical groups an isotropic point, a nondegenerate
    /// point, and an orthogonal frame.
    pub isotropic_point: Option<u32>,
    pub nondegenerate_point: Option<u32>,
    pub frame: Vec<u32>,
    /// The Frobenius generator adjoined to the socle, when present.
    pub frobenius: Option<Permutation>,
    /// A transvection (long root element) for classical constructions.
    pub long_root: Option<Permutation>,
}

impl NamedGroup {
    fn simple(group: PermGroup) -> Self {
        NamedGroup {
            socle: group.clone(),
            group,
            isotropic_point: None,
            nondegenerate_point: None,
            frame: Vec::new(),
            frobenius: None,
            long_root: None,
        }
    }
}

fn check_order(what: &str, group: &PermGroup, expected: num_bigint::BigUint) -> Result<(), TableError> {
    if group.order() != &expected {
        return Err(TableError::Construction(
            what.into(),
            format!("order {} but the formula gives {}", group.order(), expected),
        ));
    }
    Ok(())
}

/// PSL_2(q) on the q + 1 projective points.
pub fn psl2(q: u64) -> Result<NamedGroup, TableError> {
    l2_family(q, false, 0)
}

/// PGL_2(q) on the q + 1 projective points.
pub fn pgl2(q: u64) -> Result<NamedGroup, TableError> {
    l2_family(q, true, 0)
}

/// PSL_2(q) extended by a diagonal and/or Frobenius part. `frobenius_power`
/// adjoins phi^t; with `diagonal` set, the single adjoined generator is
/// delta * phi^t (so (false, t) gives the plain field extension and
/// (true, 0) is PGL).
pub fn l2_family(q: u64, diagonal: bool, frobenius_power: u32) -> Result<NamedGroup, TableError> {
    let (p, k) = numth::factor::is_prime_power(q)
        .ok_or_else(|| TableError::Construction("l2".into(), format!("{q} not a prime power")))?;
    let field = Field::new(p, k)?;
    let proj = ProjectiveSpace::new(&field, 2);
    let mut sl_gens: Vec<GfMatrix> = Vec::new();
    for t in 0..k {
        let mut coeffs = vec![0u64; k as usize];
        coeffs[t as usize] = 1;
        let a = field.from_coeffs(&coeffs);
        let mut u = GfMatrix::identity(2);
        u[(0, 1)] = a;
        sl_gens.push(u);
        let mut l = GfMatrix::identity(2);
        l[(1, 0)] = a;
        sl_gens.push(l);
    }
    let socle_perms: Vec<Permutation> =
        sl_gens.iter().map(|m| proj.matrix_perm(&field, m)).collect();
    let socle = PermGroup::from_generators(proj.len(), socle_perms.clone())?;
    check_order("psl2", &socle, lie_order(LieFamily::Linear(2), q)?)?;

    let mut gens = socle_perms;
    let mut frob_perm = None;
    let mut outer_factor = 1u64;
    if diagonal || frobenius_power > 0 {
        let m = if diagonal {
            let mut d = GfMatrix::identity(2);
            d[(0, 0)] = field.primitive();
            d
        } else {
            GfMatrix::identity(2)
        };
        let outer = proj.semilinear_perm(&field, &m, frobenius_power);
        // order of the adjoined coset generator modulo the socle
        let mut pow = outer.clone();
        let mut o = 1u64;
        while !socle.contains(&pow) {
            pow = pow.then(&outer);
            o += 1;
        }
        outer_factor = o;
        frob_perm = Some(outer.clone());
        gens.push(outer);
    }
    let group = PermGroup::from_generators(proj.len(), gens)?;
    check_order(
        "l2 extension",
        &group,
        lie_order(LieFamily::Linear(2), q)? * num_bigint::BigUint::from(outer_factor),
    )?;
    Ok(NamedGroup {
        socle,
        group,
        isotropic_point: None,
        nondegenerate_point: None,
        frame: Vec::new(),
        frobenius: frob_perm,
        long_root: None,
    })
}

/// PSU_n(q) on the full projective space of F_{q^2}^n with the identity
/// Gram matrix, generated by unitary transvections, extended by phi^t
/// subgroups: `ext` is the order of the adjoined Frobenius subgroup
/// (1 for the socle itself, 2f for the full semilinear extension).
pub fn unitary(n: u32, q: u64, ext: u32) -> Result<NamedGroup, TableError> {
    let (p, f) = numth::factor::is_prime_power(q)
        .ok_or_else(|| TableError::Construction("psu".into(), format!("{q} not a prime power")))?;
    let field = Field::new(p, 2 * f)?;
    let proj = ProjectiveSpace::new(&field, n);
    let herm = |x: &[El], y: &[El]| -> El {
        let mut acc = 0;
        for i in 0..n as usize {
            acc = field.add(acc, field.mul(x[i], field.pow(y[i], q)));
        }
        acc
    };
    // transvection generators over the isotropic points
    let mut trace_zero: Vec<El> = field
        .elements()
        .filter(|&c| c != 0 && field.add(c, field.pow(c, q)) == 0)
        .collect();
    trace_zero.truncate(2);
    let isotropic: Vec<u32> =
        (0..proj.len()).filter(|&i| herm(proj.point(i), proj.point(i)) == 0).collect();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut socle = PermGroup::trivial(proj.len());
    let mut long_root: Option<Permutation> = None;
    let expected = lie_order(LieFamily::Unitary(n), q)?;
    'outer: for &vi in &isotropic {
        let v = proj.point(vi).to_vec();
        for &c in &trace_zero {
            // t(x) = x + c h(x, v) v, matrix I + c v (v^q)^T
            let mut m = GfMatrix::identity(n as usize);
            for i in 0..n as usize {
                for j in 0..n as usize {
                    let add = field.mul(field.mul(c, v[i]), field.pow(v[j], q));
                    m[(i, j)] = field.add(m[(i, j)], add);
                }
            }
            let perm = proj.matrix_perm(&field, &m);
            if long_root.is_none() {
                long_root = Some(perm.clone());
            }
            gens.push(perm);
        }
        if gens.len() % 8 == 0 || vi == *isotropic.last().unwrap() {
            socle = PermGroup::from_generators(proj.len(), gens.clone())?;
            if socle.order() == &expected {
                break 'outer;
            }
        }
    }
    check_order("psu", &socle, expected.clone())?;

    let mut group = socle.clone();
    let mut frob_perm = None;
    if ext > 1 {
        assert!(2 * f % ext == 0, "extension must divide the Frobenius order 2f");
        let power = 2 * f / ext;
        let outer = proj.semilinear_perm(&field, &GfMatrix::identity(n as usize), power);
        frob_perm = Some(outer.clone());
        let mut gens = socle.generators().to_vec();
        gens.push(outer);
        group = PermGroup::from_generators(proj.len(), gens)?;
        check_order("psu extension", &group, expected * num_bigint::BigUint::from(ext))?;
    }

    // rational feature points
    let rational = |i: &u32| -> bool {
        proj.point(*i).iter().all(|&c| field.frobenius(c) == c)
    };
    let isotropic_point = isotropic.iter().find(|i| rational(i)).copied();
    let nondegenerate_point = (0..proj.len())
        .find(|&i| herm(proj.point(i), proj.point(i)) != 0 && rational(&i));
    // pairwise orthogonal nondegenerate frame: the coordinate points
    let mut frame = Vec::new();
    for j in 0..n as usize {
        let mut e = vec![0 as El; n as usize];
        e[j] = 1;
        frame.push(proj.index_of(&field, &e));
    }
    Ok(NamedGroup {
        group,
        socle,
        isotropic_point,
        nondegenerate_point,
        frame,
        frobenius: frob_perm,
        long_root,
    })
}

/// The symplectic group Sp_6(2) on the 63 nonzero vectors, plus the
/// orthogonal-form subgroups of both types and the Sp_2 x Sp_4 block
/// subgroup.
pub struct SymplecticSix {
    pub group: PermGroup,
    pub o6_plus: PermGroup,
    pub o6_minus: PermGroup,
    pub sp2_sp4: PermGroup,
}

pub fn symplectic6_2() -> Result<SymplecticSix, TableError> {
    let field = Field::new(2, 1)?;
    let space = affine::bridge::VectorSpace::new(&field, 6);
    let b = |x: &[El], y: &[El]| -> El {
        let mut acc = 0;
        for t in 0..3 {
            acc = field.add(
                acc,
                field.add(
                    field.mul(x[2 * t], y[2 * t + 1]),
                    field.mul(x[2 * t + 1], y[2 * t]),
                ),
            );
        }
        acc
    };
    let transvection = |v: &[El]| -> GfMatrix {
        let mut m = GfMatrix::identity(6);
        for j in 0..6 {
            let mut e = vec![0; 6];
            e[j] = 1;
            let c = b(&e, v);
            if c != 0 {
                for i in 0..6 {
                    m[(i, j)] = field.add(m[(i, j)], field.mul(c, v[i]));
                }
            }
        }
        m
    };
    let all_vs: Vec<Vec<El>> = (1..space.count()).map(|i| space.vector(i)).collect();
    let sp_perms: Vec<Permutation> = all_vs
        .iter()
        .map(|v| affine::bridge::matrix_to_vector_perm(&field, &transvection(v), &space))
        .collect();
    let group = PermGroup::from_generators(63, sp_perms)?;
    check_order("sp6(2)", &group, lie_order(LieFamily::Symplectic(6), 2)?)?;

    let q_plus = |x: &[El]| -> El {
        let mut acc = 0;
        for t in 0..3 {
            acc = field.add(acc, field.mul(x[2 * t], x[2 * t + 1]));
        }
        acc
    };
    let q_minus = |x: &[El]| -> El {
        // x1 x2 + x3 x4 + x5^2 + x5 x6 + x6^2
        let mut acc = field.add(field.mul(x[0], x[1]), field.mul(x[2], x[3]));
        acc = field.add(acc, field.mul(x[4], x[4]));
        acc = field.add(acc, field.mul(x[4], x[5]));
        field.add(acc, field.mul(x[5], x[5]))
    };
    let stabilizer_of_form = |q: &dyn Fn(&[El]) -> El, expected: u128| -> Result<PermGroup, TableError> {
        let gens: Vec<Permutation> = all_vs
            .iter()
            .filter(|v| q(v) == 1)
            .map(|v| affine::bridge::matrix_to_vector_perm(&field, &transvection(v), &space))
            .collect();
        let sub = PermGroup::from_generators(63, gens)?;
        if sub.order_u128() != expected {
            return Err(TableError::Construction(
                "orthogonal subgroup".into(),
                format!("order {} expected {}", sub.order_u128(), expected),
            ));
        }
        Ok(sub)
    };
    let o6_plus = stabilizer_of_form(&q_plus, 40320)?;
    let o6_minus = stabilizer_of_form(&q_minus, 51840)?;

    let block_gens: Vec<Permutation> = all_vs
        .iter()
        .filter(|v| {
            let first = v[..2].iter().any(|&c| c != 0);
            let second = v[2..].iter().any(|&c| c != 0);
            first != second
        })
        .map(|v| affine::bridge::matrix_to_vector_perm(&field, &transvection(v), &space))
        .collect();
    let sp2_sp4 = PermGroup::from_generators(63, block_gens)?;
    if sp2_sp4.order_u128() != 6 * 720 {
        return Err(TableError::Construction("sp2 x sp4".into(), "wrong order".into()));
    }
    Ok(SymplecticSix { group, o6_plus, o6_minus, sp2_sp4 })
}

const M11_FILE: &str = include_str!("../../../data/groups/m11.json");

/// The Mathieu group on 11 points, from its stored descriptor.
pub fn m11() -> Result<NamedGroup, TableError> {
    let file = named::GroupFile::parse(data_override("m11.json").as_deref().unwrap_or(M11_FILE))
        .map_err(|e| TableError::Data(e.to_string()))?;
    let group = file.to_group().map_err(|e| TableError::Data(e.to_string()))?;
    Ok(NamedGroup::simple(group))
}

fn data_override(name: &str) -> Option<String> {
    let dir = std::env::var("QAE_DATA_DIR").ok()?;
    std::fs::read_to_string(std::path::Path::new(&dir).join("groups").join(name)).ok()
}

/// The point stabilizer of the Mathieu group: the sharply 3-transitive
/// group of degree 10, with the alternating socle inside it.
pub fn m10() -> Result<NamedGroup, TableError> {
    let m11 = m11()?.group;
    let m10 = m11.point_stabilizer(0)?;
    if m10.order_u128() != 720 {
        return Err(TableError::Construction("m10".into(), "wrong order".into()));
    }
    let socle = m10.perfect_core()?;
    if socle.order_u128() != 360 {
        return Err(TableError::Construction("m10 socle".into(), "wrong order".into()));
    }
    Ok(NamedGroup {
        group: m10,
        socle,
        isotropic_point: None,
        nondegenerate_point: None,
        frame: Vec::new(),
        frobenius: None,
        long_root: None,
    })
}

/// The degree-11 linear subgroup of the Mathieu group: the normalizer of a
/// Sylow 11-subgroup extended by an involution, deterministic scan.
pub fn m11_l2_11() -> Result<(PermGroup, PermGroup), TableError> {
    let m11 = m11()?.group;
    let x11 = {
        let found = m11.elements().find(|e| e.order() == 11);
        found.ok_or_else(|| TableError::Construction("l2(11)".into(), "no 11-element".into()))?
    };
    let c11 = m11.subgroup(vec![x11])?;
    let n = m11.normalizer_of(&c11, 1 << 26)?;
    if n.order_u128() != 55 {
        return Err(TableError::Construction("l2(11)".into(), "normalizer must be 11:5".into()));
    }
    let involutions: Vec<Permutation> = m11.elements().filter(|e| e.order() == 2).collect();
    for t in involutions {
        let mut gens = n.generators().to_vec();
        gens.push(t);
        let cand = PermGroup::from_generators(11, gens)?;
        if cand.order_u128() == 660 {
            return Ok((m11, cand));
        }
    }
    Err(TableError::Construction("l2(11)".into(), "no degree-11 linear subgroup found".into()))
}

/// Normalizer of the subgroup generated by the first streamed element of
/// the given order.
pub fn cyclic_normalizer(group: &PermGroup, order: u64) -> Result<PermGroup, TableError> {
    let x = group
        .elements()
        .find(|e| e.order() == order)
        .ok_or_else(|| TableError::Construction("cyclic normalizer".into(), format!("no element of order {order}")))?;
    let c = group.subgroup(vec![x])?;
    Ok(group.normalizer_of(&c, 1 << 28)?)
}

/// Normalizer of a Sylow r-subgroup.
pub fn sylow_normalizer(group: &PermGroup, r: u64) -> Result<PermGroup, TableError> {
    let syl = group.sylow_subgroup(r, 1 << 28)?;
    Ok(group.normalizer_of(&syl, 1 << 28)?)
}

/// Deterministic scan for a subgroup of the given order generated by an
/// element of order `seed_order` together with one other element. Candidate
/// pairs are prefiltered by requiring a few short words to have orders in
/// the target's element spectrum, which discards almost every pair before
/// the expensive closure. When `normalizer_order` is given the scan keeps
/// looking until the normalizer in `ambient` has that order, and returns
/// the normalizer instead.
pub fn search_two_generated(
    group: &PermGroup,
    ambient: &PermGroup,
    seed_order: u64,
    target: u128,
    spectrum: &[u64],
    normalizer_order: Option<u128>,
) -> Result<PermGroup, TableError> {
    let seeds: Vec<Permutation> =
        group.elements().filter(|e| e.order() == seed_order).take(6).collect();
    for x in &seeds {
        let xi = x.inverse();
        for t in group.elements() {
            if !spectrum.contains(&t.order()) {
                continue;
            }
            let w1 = x.then(&t);
            if !spectrum.contains(&w1.order()) {
                continue;
            }
            let w2 = xi.then(&t);
            if !spectrum.contains(&w2.order()) {
                continue;
            }
            if !spectrum.contains(&w1.then(&w2).order()) {
                continue;
            }
            let cand = PermGroup::from_generators(group.degree(), vec![x.clone(), t])?;
            if cand.order_u128() != target {
                continue;
            }
            match normalizer_order {
                None => return Ok(cand),
                Some(no) => {
                    let n = ambient.normalizer_of(&cand, 1 << 28)?;
                    if n.order_u128() == no {
                        return Ok(n);
                    }
                }
            }
        }
    }
    Err(TableError::Construction(
        "subgroup search".into(),
        format!("no two-generated subgroup of order {target}"),
    ))
}

/// Centralizer of the adjoined Frobenius part, extended by it:
/// <C_socle(phi), phi>.
pub fn frobenius_centralizer_extension(named: &NamedGroup) -> Result<PermGroup, TableError> {
    let phi = named
        .frobenius
        .as_ref()
        .ok_or_else(|| TableError::Construction("frobenius centralizer".into(), "no Frobenius part".into()))?;
    let c = named.socle.centralizer_of(phi, 1 << 28)?;
    let mut gens = c.generators().to_vec();
    gens.push(phi.clone());
    Ok(PermGroup::from_generators(named.group.degree(), gens)?)
}

/// The wreath-style subgroup of S6 preserving the partition {1,2,3}|{4,5,6},
/// block swap included.
pub fn s3_wreath_s2_in_s6() -> Result<PermGroup, TableError> {
    let gens = ["(1,2)", "(1,2,3)", "(4,5)", "(4,5,6)", "(1,4)(2,5)(3,6)"]
        .iter()
        .map(|t| Permutation::parse(t, 6))
        .collect::<Result<Vec<_>, _>>()?;
    let stab = PermGroup::from_generators(6, gens)?;
    if stab.order_u128() != 72 {
        return Err(TableError::Construction("s3 wr s2".into(), "wrong order".into()));
    }
    Ok(stab)
}

/// Linear three-dimensional family over F4 on the 42 points-and-lines
/// domain, so that the duality swap acts too.
pub struct LinearThreeFour {
    pub socle: PermGroup,
    /// duality graph element
    pub iota: Permutation,
    /// field Frobenius
    pub phi: Permutation,
    /// domain index of the point <e1> (first half) and its dual line
    pub point_e1: u32,
    pub line_e1: u32,
    pub field: Field,
}

pub fn linear3_4() -> Result<LinearThreeFour, TableError> {
    let field = Field::new(2, 2)?;
    let proj = ProjectiveSpace::new(&field, 3);
    let n = proj.len();
    debug_assert_eq!(n, 21);
    let degree = 2 * n;
    // generators of SL_3(4)
    let mut mats: Vec<GfMatrix> = Vec::new();
    for t in 0..2 {
        let mut coeffs = vec![0u64; 2];
        coeffs[t as usize] = 1;
        let a = field.from_coeffs(&coeffs);
        for (i, j) in [(0usize, 1usize), (1, 0), (1, 2), (2, 1)] {
            let mut m = GfMatrix::identity(3);
            m[(i, j)] = a;
            mats.push(m);
        }
    }
    let to_perm = |m: &GfMatrix, frob: u32| -> Result<Permutation, TableError> {
        // points move by m, lines by inverse transpose
        let dual = m.inverse(&field)?.transpose();
        let pp = if frob == 0 { proj.matrix_perm(&field, m) } else { proj.semilinear_perm(&field, m, frob) };
        let lp = if frob == 0 {
            proj.matrix_perm(&field, &dual)
        } else {
            proj.semilinear_perm(&field, &dual, frob)
        };
        let mut images = Vec::with_capacity(degree as usize);
        for i in 0..n {
            images.push(pp.apply(i));
        }
        for i in 0..n {
            images.push(n + lp.apply(i));
        }
        Ok(Permutation::from_images(images).expect("block permutation"))
    };
    let socle_gens: Vec<Permutation> =
        mats.iter().map(|m| to_perm(m, 0)).collect::<Result<_, _>>()?;
    let socle = PermGroup::from_generators(degree, socle_gens)?;
    check_order("l3(4)", &socle, lie_order(LieFamily::Linear(3), 4)?)?;
    let phi = to_perm(&GfMatrix::identity(3), 1)?;
    let iota_images: Vec<u32> = (0..degree).map(|i| (i + n) % degree).collect();
    let iota = Permutation::from_images(iota_images).unwrap();
    let e1 = proj.index_of(&field, &[1, 0, 0]);
    Ok(LinearThreeFour { socle, iota, phi, point_e1: e1, line_e1: n + e1, field })
}
