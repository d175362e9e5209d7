//! Constructors for the two-transitive affine candidates: the semilinear
//! one-dimensional groups, the SL_a(q) families, the small quaternionic and
//! icosahedral normalizer cases, the extraspecial case, and the degree-16
//! alternating cases.
//!
//! Candidates come in pairs (K, N): a fixed normal part K and its full
//! normalizer N in the ambient general linear group; the candidate set is
//! every subgroup between K and N that is transitive on the nonzero
//! vectors, enumerated through the subgroup lattice of N/K.

use crate::bridge::{matrix_from_vector_perm, matrix_to_vector_perm, VectorSpace};
use crate::error::AffineError;
use crate::gf::{El, Field};
use crate::matrix::GfMatrix;
use crate::scalars::{semilinear_to_matrix, SemilinearMap};
use permcore::{CosetAction, PermGroup, SmallGroup};

/// Generators of the full semilinear line GammaL_1(p^d) as d x d matrices
/// over F_p: multiplication by a primitive element and the Frobenius.
pub fn gamma_l1_gens(p: u64, d: u32) -> Result<Vec<GfMatrix>, AffineError> {
    let big = Field::new(p, d)?;
    let eta = big.primitive();
    let mult = semilinear_to_matrix(&big, &SemilinearMap::linear(GfMatrix::from_rows(vec![vec![eta]])))?;
    let frob = semilinear_to_matrix(
        &big,
        &SemilinearMap { matrix: GfMatrix::identity(1), frobenius_power: 1 },
    )?;
    Ok(vec![mult, frob])
}

/// Root-element generators of SL_a(q) over the given field.
pub fn sl_gens(field: &Field, a: usize) -> Vec<GfMatrix> {
    assert!(a >= 2);
    let mut gens = Vec::new();
    // e_{01}(x^t) and e_{10}(x^t) generate SL_2; add a cycle for bigger a
    for t in 0..field.k() {
        let basis_el = basis_power(field, t);
        let mut u = GfMatrix::identity(a);
        u[(0, 1)] = basis_el;
        gens.push(u);
        let mut l = GfMatrix::identity(a);
        l[(1, 0)] = basis_el;
        gens.push(l);
    }
    if a > 2 {
        // permutation part: signed cycle e_1 -> e_2 -> ... -> e_a -> ±e_1
        let mut c = GfMatrix::zero(a, a);
        for i in 0..a - 1 {
            c[(i + 1, i)] = 1;
        }
        c[(0, a - 1)] = if a % 2 == 1 { 1 } else { field.neg(1) };
        gens.push(c);
    }
    gens
}

fn basis_power(field: &Field, t: u32) -> El {
    // the polynomial basis element x^t
    let mut coeffs = vec![0u64; field.k() as usize];
    coeffs[t as usize] = 1;
    field.from_coeffs(&coeffs)
}

/// GL_a(q): SL generators plus diag(eta, 1, ..., 1).
pub fn gl_gens(field: &Field, a: usize) -> Vec<GfMatrix> {
    let mut gens = sl_gens(field, a);
    let mut d = GfMatrix::identity(a);
    d[(0, 0)] = field.primitive();
    gens.push(d);
    gens
}

/// Semilinear generators of GammaL_a(p^k) as (a*k) x (a*k) matrices over
/// the prime field.
pub fn gamma_l_gens_over_prime(field: &Field, a: usize) -> Result<Vec<GfMatrix>, AffineError> {
    let mut out = Vec::new();
    for g in gl_gens(field, a) {
        out.push(semilinear_to_matrix(field, &SemilinearMap::linear(g))?);
    }
    out.push(semilinear_to_matrix(
        field,
        &SemilinearMap { matrix: GfMatrix::identity(a), frobenius_power: 1 },
    )?);
    Ok(out)
}

/// SL_a(q) restricted to the prime field.
pub fn sl_gens_over_prime(field: &Field, a: usize) -> Result<Vec<GfMatrix>, AffineError> {
    sl_gens(field, a)
        .into_iter()
        .map(|g| semilinear_to_matrix(field, &SemilinearMap::linear(g)))
        .collect()
}

/// The quaternionic subgroup of SL_2(p): standard order-4 element plus an
/// order-3 partner found by a deterministic scan; validated by order 24.
pub fn sl2_3_in_sl2p(p: u64) -> Result<Vec<GfMatrix>, AffineError> {
    let f = Field::new(p, 1)?;
    let s = GfMatrix::from_int_rows(&f, &[vec![0, -1], vec![1, 0]]);
    scan_partner(&f, s, 24)
}

/// The icosahedral subgroup of SL_2(p), present when 5 divides p^2 - 1.
pub fn sl2_5_in_sl2p(p: u64) -> Result<Vec<GfMatrix>, AffineError> {
    let f = Field::new(p, 1)?;
    let s = GfMatrix::from_int_rows(&f, &[vec![0, -1], vec![1, 0]]);
    scan_partner(&f, s, 120)
}

/// Find g in SL_2 with <s, g> of the target order, scanning matrices in a
/// fixed order.
fn scan_partner(
    field: &Field,
    s: GfMatrix,
    target: u128,
) -> Result<Vec<GfMatrix>, AffineError> {
    let space = VectorSpace::new(field, 2);
    let q = field.order();
    for code in 0..q.pow(4) {
        let mut c = code;
        let mut m = GfMatrix::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = (c % q) as El;
                c /= q;
            }
        }
        if m.det(field) != 1 {
            continue;
        }
        let o = m.order(field, 200)?;
        // elements of order 3 (quaternionic case) or 5 or 10 (icosahedral)
        if o != 3 && o != 5 {
            continue;
        }
        let gens = vec![s.clone(), m.clone()];
        let perms: Vec<permcore::Permutation> =
            gens.iter().map(|g| matrix_to_vector_perm(field, g, &space)).collect();
        let group = PermGroup::from_generators(space.count() as u32 - 1, perms)?;
        if group.order_u128() == target {
            return Ok(gens);
        }
    }
    Err(AffineError::BadParameters(format!("no subgroup of order {target} found")))
}

/// Normalizer of a small matrix group inside GL_2(p), by streaming all
/// invertible 2 x 2 matrices. Returns a generating list.
pub fn normalizer_in_gl2(p: u64, k_gens: &[GfMatrix]) -> Result<Vec<GfMatrix>, AffineError> {
    let f = Field::new(p, 1)?;
    let space = VectorSpace::new(&f, 2);
    let degree = space.count() as u32 - 1;
    let k_perms: Vec<permcore::Permutation> =
        k_gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
    let k_group = PermGroup::from_generators(degree, k_perms)?;

    let mut n_gens: Vec<GfMatrix> = Vec::new();
    let mut n_group = PermGroup::from_generators(degree, vec![])?;
    for code in 0..p.pow(4) {
        let mut c = code;
        let mut m = GfMatrix::zero(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = (c % p) as El;
                c /= p;
            }
        }
        if m.det(&f) == 0 {
            continue;
        }
        let m_inv = m.inverse(&f)?;
        let normalizes = k_gens.iter().all(|g| {
            let conj = m_inv.mul(&f, g).mul(&f, &m);
            k_group.contains(&matrix_to_vector_perm(&f, &conj, &space))
        });
        if !normalizes {
            continue;
        }
        let perm = matrix_to_vector_perm(&f, &m, &space);
        if !n_group.contains(&perm) {
            n_gens.push(m);
            let perms: Vec<permcore::Permutation> =
                n_gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
            n_group = PermGroup::from_generators(degree, perms)?;
        }
    }
    Ok(n_gens)
}

/// Normalizer of a small matrix group inside GL_d(p) by full enumeration;
/// guarded so only genuinely small ambient groups are attempted.
pub fn normalizer_in_gld(p: u64, d: u32, k_gens: &[GfMatrix]) -> Result<Vec<GfMatrix>, AffineError> {
    let total = (p as u128).pow(d * d);
    if total > 1 << 26 {
        return Err(AffineError::BoundExceeded("matrix enumeration"));
    }
    let f = Field::new(p, 1)?;
    let space = VectorSpace::new(&f, d);
    let degree = space.count() as u32 - 1;
    let k_perms: Vec<permcore::Permutation> =
        k_gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
    let k_group = PermGroup::from_generators(degree, k_perms)?;
    let mut n_gens: Vec<GfMatrix> = Vec::new();
    let mut n_group = PermGroup::from_generators(degree, vec![])?;
    for code in 0..total {
        let mut c = code;
        let mut m = GfMatrix::zero(d as usize, d as usize);
        for i in 0..d as usize {
            for j in 0..d as usize {
                m[(i, j)] = (c % p as u128) as El;
                c /= p as u128;
            }
        }
        if m.det(&f) == 0 {
            continue;
        }
        let m_inv = m.inverse(&f)?;
        let normalizes = k_gens.iter().all(|g| {
            let conj = m_inv.mul(&f, g).mul(&f, &m);
            k_group.contains(&matrix_to_vector_perm(&f, &conj, &space))
        });
        if !normalizes {
            continue;
        }
        let perm = matrix_to_vector_perm(&f, &m, &space);
        if !n_group.contains(&perm) {
            n_gens.push(m);
            let perms: Vec<permcore::Permutation> =
                n_gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
            n_group = PermGroup::from_generators(degree, perms)?;
        }
    }
    Ok(n_gens)
}

/// The extraspecial group of order 32 of minus type inside GL_4(3), as the
/// central product of the dihedral and quaternion planes via Kronecker
/// products.
pub fn extraspecial_2plus4_gl4_3() -> Result<Vec<GfMatrix>, AffineError> {
    let f = Field::new(3, 1)?;
    let s = GfMatrix::from_int_rows(&f, &[vec![0, -1], vec![1, 0]]);
    let r = GfMatrix::from_int_rows(&f, &[vec![1, 0], vec![0, -1]]);
    let t = GfMatrix::from_int_rows(&f, &[vec![1, 1], vec![1, -1]]);
    let i2 = GfMatrix::identity(2);
    Ok(vec![
        s.kronecker(&f, &i2),
        r.kronecker(&f, &i2),
        i2.kronecker(&f, &s),
        i2.kronecker(&f, &t),
    ])
}

/// SL_2(5) inside GL_4(3) by restriction of scalars from GL_2(9).
pub fn sl2_5_in_gl4_3() -> Result<Vec<GfMatrix>, AffineError> {
    let f9 = Field::new(3, 2)?;
    // order-5 element: companion of x^2 - t x + 1 with t^2 + t - 1 = 0
    let t = f9
        .elements()
        .find(|&t| {
            let v = f9.add(f9.add(f9.mul(t, t), t), f9.neg(1));
            v == 0
        })
        .ok_or_else(|| AffineError::BadParameters("no golden trace in F9".into()))?;
    let s = GfMatrix::from_rows(vec![vec![0, f9.neg(1)], vec![1, 0]]);
    let v = GfMatrix::from_rows(vec![vec![0, f9.neg(1)], vec![1, t]]);
    // sanity: orders 4 and 5
    if s.order(&f9, 10)? != 4 || v.order(&f9, 10)? != 5 {
        return Err(AffineError::WrongOrder);
    }
    let gens_9 = vec![s, v];
    let space9 = VectorSpace::new(&f9, 2);
    let perms: Vec<permcore::Permutation> =
        gens_9.iter().map(|g| matrix_to_vector_perm(&f9, g, &space9)).collect();
    let group = PermGroup::from_generators(80, perms)?;
    if group.order_u128() != 120 {
        return Err(AffineError::BadParameters("icosahedral scan over F9 failed".into()));
    }
    gens_9
        .into_iter()
        .map(|g| semilinear_to_matrix(&f9, &SemilinearMap::linear(g)))
        .collect()
}

/// The symplectic-derived alternating candidate inside GL_4(2): the derived
/// subgroup of the stabilizer of a symplectic form, plus the heptad
/// candidate found by a deterministic normalizer-extension scan.
pub fn a6_a7_in_gl4_2() -> Result<(Vec<GfMatrix>, Vec<GfMatrix>), AffineError> {
    let f = Field::new(2, 1)?;
    let space = VectorSpace::new(&f, 4);
    // GL_4(2) from elementary transvections
    let mut gl_gens = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                let mut m = GfMatrix::identity(4);
                m[(i, j)] = 1;
                gl_gens.push(m);
            }
        }
    }
    let gl_perms: Vec<permcore::Permutation> =
        gl_gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
    let gl4 = PermGroup::from_generators(15, gl_perms)?;
    if gl4.order_u128() != 20160 {
        return Err(AffineError::BadParameters("GL_4(2) construction failed".into()));
    }

    // Sp_4(2): stabilizer of the standard alternating form, generated by
    // symplectic transvections x -> x + B(x, v) v
    let b = |x: &[El], y: &[El]| -> El {
        let mut acc = 0;
        for t in 0..2 {
            let term = f.add(
                f.mul(x[2 * t], y[2 * t + 1]),
                f.mul(x[2 * t + 1], y[2 * t]),
            );
            acc = f.add(acc, term);
        }
        acc
    };
    let mut sp_gens = Vec::new();
    for vi in 1..space.count() {
        let v = space.vector(vi);
        let mut m = GfMatrix::zero(4, 4);
        for j in 0..4 {
            let mut e = vec![0; 4];
            e[j] = 1;
            let mut img = e.clone();
            let c = b(&e, &v);
            if c != 0 {
                for (a, &vv) in img.iter_mut().zip(&v) {
                    *a = f.add(*a, f.mul(c, vv));
                }
            }
            for i in 0..4 {
                m[(i, j)] = img[i];
            }
        }
        sp_gens.push(m);
    }
    let sp_perms: Vec<permcore::Permutation> =
        sp_gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
    let sp4 = PermGroup::from_generators(15, sp_perms)?;
    if sp4.order_u128() != 720 {
        return Err(AffineError::BadParameters("Sp_4(2) construction failed".into()));
    }
    let a6 = sp4.derived_subgroup()?;
    if a6.order_u128() != 360 || !a6.is_transitive() {
        return Err(AffineError::BadParameters("derived symplectic group is wrong".into()));
    }

    // heptad subgroup of order 2520: extend the normalizer of a Sylow
    // 7-subgroup by involutions until the order is right
    let x7 = gl4
        .elements()
        .find(|e| e.order() == 7)
        .ok_or_else(|| AffineError::BadParameters("no order-7 element".into()))?;
    let c7 = gl4.subgroup(vec![x7])?;
    let n7 = gl4.normalizer_of(&c7, 1 << 26)?;
    let mut a7: Option<PermGroup> = None;
    for t in gl4.elements() {
        if t.order() != 2 {
            continue;
        }
        let mut gens = n7.generators().to_vec();
        gens.push(t);
        let cand = PermGroup::from_generators(15, gens)?;
        if cand.order_u128() == 2520 {
            a7 = Some(cand);
            break;
        }
    }
    let a7 = a7.ok_or_else(|| AffineError::BadParameters("heptad subgroup not found".into()))?;
    let to_mats = |g: &PermGroup| -> Vec<GfMatrix> {
        g.generators().iter().map(|p| matrix_from_vector_perm(&f, p, &space)).collect()
    };
    Ok((to_mats(&a6), to_mats(&a7)))
}

/// A candidate subgroup between K and its normalizer.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub gens: Vec<GfMatrix>,
    pub order: u128,
    pub transitive: bool,
}

/// All subgroups H with K <= H <= N up to N-conjugacy, through the subgroup
/// lattice of the quotient N/K; K must be normal in N.
pub fn candidates_between(
    p: u64,
    d: u32,
    k_gens: &[GfMatrix],
    n_gens: &[GfMatrix],
    quotient_bound: u128,
) -> Result<Vec<Candidate>, AffineError> {
    let f = Field::new(p, 1)?;
    let space = VectorSpace::new(&f, d);
    let degree = space.count() as u32 - 1;
    let to_perms = |mats: &[GfMatrix]| -> Vec<permcore::Permutation> {
        mats.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect()
    };
    let k_group = PermGroup::from_generators(degree, to_perms(k_gens))?;
    let mut all_gens = to_perms(n_gens);
    all_gens.extend(to_perms(k_gens));
    let n_group = PermGroup::from_generators(degree, all_gens)?;
    if !k_group.is_normalized_by(n_group.generators()) {
        return Err(AffineError::BadParameters("normal part is not normalized".into()));
    }
    let action = CosetAction::new(&n_group, &k_group, 1 << 20)?;
    let quotient = action.induced_group();
    let small = SmallGroup::from_group(&quotient, quotient_bound)?;
    let classes = small.subgroup_classes()?;
    let mut out = Vec::new();
    for class in &classes {
        let u = small.to_permgroup(&class.canonical);
        let mut gens = k_group.generators().to_vec();
        for qgen in u.generators() {
            let coset = qgen.apply(0);
            gens.push(action.representatives()[coset as usize].clone());
        }
        let h = PermGroup::from_generators(degree, gens)?;
        let expected = k_group.order_u128() * class.order as u128;
        if h.order_u128() != expected {
            return Err(AffineError::BadParameters(format!(
                "lifted candidate has order {} instead of {}",
                h.order_u128(),
                expected
            )));
        }
        let transitive = h.is_transitive();
        let mats: Vec<GfMatrix> =
            h.generators().iter().map(|g| matrix_from_vector_perm(&f, g, &space)).collect();
        out.push(Candidate { gens: mats, order: h.order_u128(), transitive });
    }
    out.sort_by_key(|c| c.order);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_l1_8_has_order_21() {
        let gens = gamma_l1_gens(2, 3).unwrap();
        let f = Field::new(2, 1).unwrap();
        let space = VectorSpace::new(&f, 3);
        let perms: Vec<permcore::Permutation> =
            gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
        let g = PermGroup::from_generators(7, perms).unwrap();
        assert_eq!(g.order_u128(), 21);
        assert!(g.is_transitive());
    }

    #[test]
    fn sl2_4_order() {
        let f4 = Field::new(2, 2).unwrap();
        let gens = sl_gens(&f4, 2);
        let space = VectorSpace::new(&f4, 2);
        let perms: Vec<permcore::Permutation> =
            gens.iter().map(|g| matrix_to_vector_perm(&f4, g, &space)).collect();
        let g = PermGroup::from_generators(15, perms).unwrap();
        assert_eq!(g.order_u128(), 60);
    }

    #[test]
    fn sl3_4_and_gl3_2_orders() {
        let f4 = Field::new(2, 2).unwrap();
        let gens = sl_gens(&f4, 3);
        let space = VectorSpace::new(&f4, 3);
        let perms: Vec<permcore::Permutation> =
            gens.iter().map(|g| matrix_to_vector_perm(&f4, g, &space)).collect();
        let g = PermGroup::from_generators(63, perms).unwrap();
        assert_eq!(g.order_u128(), 60480, "SL_3(4)");

        let f2 = Field::new(2, 1).unwrap();
        let gens = sl_gens(&f2, 3);
        let space = VectorSpace::new(&f2, 3);
        let perms: Vec<permcore::Permutation> =
            gens.iter().map(|g| matrix_to_vector_perm(&f2, g, &space)).collect();
        let g = PermGroup::from_generators(7, perms).unwrap();
        assert_eq!(g.order_u128(), 168);
    }

    #[test]
    fn quaternionic_and_icosahedral_subgroups() {
        let f = Field::new(5, 1).unwrap();
        let space = VectorSpace::new(&f, 2);
        let k = sl2_3_in_sl2p(5).unwrap();
        let perms: Vec<permcore::Permutation> =
            k.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
        let g = PermGroup::from_generators(24, perms).unwrap();
        assert_eq!(g.order_u128(), 24);

        let k = sl2_5_in_sl2p(11).unwrap();
        let f11 = Field::new(11, 1).unwrap();
        let space = VectorSpace::new(&f11, 2);
        let perms: Vec<permcore::Permutation> =
            k.iter().map(|g| matrix_to_vector_perm(&f11, g, &space)).collect();
        let g = PermGroup::from_generators(120, perms).unwrap();
        assert_eq!(g.order_u128(), 120);
    }

    #[test]
    fn extraspecial_group_order() {
        let f = Field::new(3, 1).unwrap();
        let gens = extraspecial_2plus4_gl4_3().unwrap();
        let space = VectorSpace::new(&f, 4);
        let perms: Vec<permcore::Permutation> =
            gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
        let g = PermGroup::from_generators(80, perms).unwrap();
        assert_eq!(g.order_u128(), 32);
        // irreducible with central -1: all orbits on nonzero vectors have
        // the same length, transitivity comes only with the extensions
        let orbit_lens: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
        assert!(orbit_lens.iter().all(|&l| l == orbit_lens[0]));
    }

    #[test]
    fn icosahedral_over_f9_restricts() {
        let gens = sl2_5_in_gl4_3().unwrap();
        let f = Field::new(3, 1).unwrap();
        let space = VectorSpace::new(&f, 4);
        let perms: Vec<permcore::Permutation> =
            gens.iter().map(|g| matrix_to_vector_perm(&f, g, &space)).collect();
        let g = PermGroup::from_generators(80, perms).unwrap();
        assert_eq!(g.order_u128(), 120);
    }

    #[test]
    fn candidates_between_quaternion_and_normalizer_deg25() {
        let k = sl2_3_in_sl2p(5).unwrap();
        let n = normalizer_in_gl2(5, &k).unwrap();
        let cands = candidates_between(5, 2, &k, &n, 1 << 16).unwrap();
        assert!(cands.len() >= 3);
        assert!(cands.iter().all(|c| c.order % 24 == 0));
        assert!(cands.iter().any(|c| c.transitive && c.order == 24));
    }
}
