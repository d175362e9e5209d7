//! Restriction of scalars GL_m(p^k) -> GL_{mk}(p) through a normal basis,
//! and semilinear elements (g, phi^l) of GammaL_m(p^k) as F_p-matrices.
//!
//! In the normal basis {lambda, lambda^p, ..., lambda^(p^(k-1))} the field
//! Frobenius is a cyclic coordinate shift, which is what makes the Jordan
//! shape statements about field automorphisms visible.

use crate::error::AffineError;
use crate::gf::{El, Field};
use crate::matrix::GfMatrix;

/// An element (g, phi^l) of GammaL_m(p^k) acting by v -> g . phi^l(v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearMap {
    pub matrix: GfMatrix,
    pub frobenius_power: u32,
}

impl SemilinearMap {
    pub fn linear(matrix: GfMatrix) -> Self {
        SemilinearMap { matrix, frobenius_power: 0 }
    }

    /// Compose: apply `self`, then `other`.
    pub fn then(&self, field: &Field, other: &SemilinearMap) -> SemilinearMap {
        // other(self(v)) = g2 . phi^l2 (g1 . phi^l1 v)
        //               = (g2 . phi^l2(g1)) . phi^(l1+l2) v
        let mut g1 = self.matrix.clone();
        for _ in 0..other.frobenius_power {
            g1 = g1.frobenius(field);
        }
        SemilinearMap {
            matrix: other.matrix.mul(field, &g1),
            frobenius_power: (self.frobenius_power + other.frobenius_power) % field.k(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.frobenius_power == 0 && self.matrix.is_identity()
    }

    pub fn order(&self, field: &Field, cap: u64) -> Result<u64, AffineError> {
        let mut x = self.clone();
        for o in 1..=cap {
            if x.is_identity() {
                return Ok(o);
            }
            x = x.then(field, self);
        }
        Err(AffineError::BoundExceeded("semilinear order"))
    }
}

/// A normal-basis generator: lambda whose Frobenius orbit is an F_p-basis
/// of the field. Search order is fixed (element index ascending).
pub fn normal_basis_generator(field: &Field) -> Result<El, AffineError> {
    let k = field.k();
    'next: for lambda in field.elements() {
        if lambda == 0 {
            continue;
        }
        // matrix whose columns are coefficient vectors of the orbit
        let mut cols = Vec::with_capacity(k as usize);
        let mut x = lambda;
        for _ in 0..k {
            cols.push(field.coeffs(x));
            x = field.frobenius(x);
        }
        // rank over F_p
        let prime = Field::new(field.p(), 1)?;
        let m = GfMatrix::from_rows(
            (0..k as usize)
                .map(|i| (0..k as usize).map(|j| cols[j][i] as El).collect())
                .collect(),
        );
        if m.rank(&prime) == k as usize {
            return Ok(lambda);
        }
        continue 'next;
    }
    Err(AffineError::NoIrreducible(field.k()))
}

/// Coordinates of a field element in the normal basis of `lambda`.
struct NormalBasis {
    /// inverse change of basis: coefficient vector -> normal coordinates
    inv: GfMatrix,
    orbit: Vec<El>,
    prime: Field,
}

impl NormalBasis {
    fn new(field: &Field, lambda: El) -> Result<Self, AffineError> {
        let k = field.k() as usize;
        let prime = Field::new(field.p(), 1)?;
        let mut orbit = Vec::with_capacity(k);
        let mut x = lambda;
        for _ in 0..k {
            orbit.push(x);
            x = field.frobenius(x);
        }
        let basis_matrix = GfMatrix::from_rows(
            (0..k)
                .map(|i| (0..k).map(|j| field.coeffs(orbit[j])[i] as El).collect())
                .collect(),
        );
        let inv = basis_matrix.inverse(&prime)?;
        Ok(NormalBasis { inv, orbit, prime })
    }

    fn coordinates(&self, field: &Field, x: El) -> Vec<El> {
        let coeffs: Vec<El> = field.coeffs(x).iter().map(|&c| c as El).collect();
        self.inv.apply(&self.prime, &coeffs)
    }
}

/// The F_p-matrix of a semilinear map on V = (F_{p^k})^m, written in the
/// basis {lambda^(p^t) e_i} ordered by (i, t). Plain restriction of scalars
/// is the case l = 0.
pub fn semilinear_to_matrix(field: &Field, map: &SemilinearMap) -> Result<GfMatrix, AffineError> {
    let k = field.k() as usize;
    let m = map.matrix.rows();
    let lambda = normal_basis_generator(field)?;
    let nb = NormalBasis::new(field, lambda)?;
    let d = m * k;
    let mut out = GfMatrix::zero(d, d);
    for i in 0..m {
        for t in 0..k {
            // basis vector lambda^(p^t) e_i; apply phi^l then the matrix
            let mut v = vec![0 as El; m];
            v[i] = nb.orbit[t];
            for c in v.iter_mut() {
                for _ in 0..map.frobenius_power {
                    *c = field.frobenius(*c);
                }
            }
            let w = map.matrix.apply(field, &v);
            // expand into the F_p-basis
            for (row_i, &entry) in w.iter().enumerate() {
                let coords = nb.coordinates(field, entry);
                for (row_t, &c) in coords.iter().enumerate() {
                    out[(row_i * k + row_t, i * k + t)] = c;
                }
            }
        }
    }
    Ok(out)
}

/// Restriction of scalars of a linear matrix over F_{p^k}.
pub fn restrict_scalars(field: &Field, g: &GfMatrix) -> Result<GfMatrix, AffineError> {
    semilinear_to_matrix(field, &SemilinearMap::linear(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{jordan_shape_unipotent, JordanShape};

    #[test]
    fn normal_basis_exists() {
        for (p, k) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3), (2, 4), (5, 2)] {
            let f = Field::new(p, k).unwrap();
            let lambda = normal_basis_generator(&f).unwrap();
            assert_ne!(lambda, 0);
        }
    }

    #[test]
    fn scalar_of_order_3_in_gl1_4() {
        let f = Field::new(2, 2).unwrap();
        let x = f.from_coeffs(&[0, 1]);
        let m = GfMatrix::from_rows(vec![vec![x]]);
        let big = restrict_scalars(&f, &m).unwrap();
        assert_eq!(big.rows(), 2);
        let prime = Field::new(2, 1).unwrap();
        assert_eq!(big.order(&prime, 10).unwrap(), 3);
    }

    #[test]
    fn identity_restricts_to_identity() {
        let f = Field::new(3, 2).unwrap();
        let big = restrict_scalars(&f, &GfMatrix::identity(2)).unwrap();
        assert!(big.is_identity());
    }

    #[test]
    fn j2_over_f4_restricts_to_j2_squared() {
        let f = Field::new(2, 2).unwrap();
        let j2 = GfMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]);
        let big = restrict_scalars(&f, &j2).unwrap();
        let prime = Field::new(2, 1).unwrap();
        let shape = jordan_shape_unipotent(&prime, &big).unwrap();
        assert_eq!(shape, JordanShape::from_pairs(&[(2, 2)]));
    }

    #[test]
    fn multiplicity_scaling_under_restriction() {
        // unipotent shapes over F_{p^k} scale multiplicities by k
        for (p, k) in [(2u64, 2u32), (2, 3), (3, 2)] {
            let f = Field::new(p, k).unwrap();
            let prime = Field::new(p, 1).unwrap();
            let sizes: &[usize] = if p == 2 { &[1, 2] } else { &[1, 2, 3] };
            for &s in sizes {
                let mut block = GfMatrix::identity(s);
                for i in 0..s - 1 {
                    block[(i, i + 1)] = 1;
                }
                let small_shape = jordan_shape_unipotent(&f, &block).unwrap();
                let big = restrict_scalars(&f, &block).unwrap();
                let big_shape = jordan_shape_unipotent(&prime, &big).unwrap();
                assert_eq!(big_shape, small_shape.scaled(k), "p={p} k={k} s={s}");
                assert_eq!(
                    block.order(&f, 100).unwrap(),
                    big.order(&prime, 100).unwrap(),
                    "order preserved"
                );
            }
        }
    }

    #[test]
    fn frobenius_on_f4_line_is_j2() {
        // (1, phi) in GammaL_1(4) has shape [J_2] on F_2^2
        let f = Field::new(2, 2).unwrap();
        let map = SemilinearMap { matrix: GfMatrix::identity(1), frobenius_power: 1 };
        let big = semilinear_to_matrix(&f, &map).unwrap();
        let prime = Field::new(2, 1).unwrap();
        assert_eq!(
            jordan_shape_unipotent(&prime, &big).unwrap(),
            JordanShape::from_pairs(&[(2, 1)])
        );
    }

    #[test]
    fn field_automorphism_of_gammal2_4() {
        // order-2 field automorphism in GammaL_2(4): shape [J_2^2] on F_2^4
        let f = Field::new(2, 2).unwrap();
        let map = SemilinearMap { matrix: GfMatrix::identity(2), frobenius_power: 1 };
        let big = semilinear_to_matrix(&f, &map).unwrap();
        let prime = Field::new(2, 1).unwrap();
        assert_eq!(
            jordan_shape_unipotent(&prime, &big).unwrap(),
            JordanShape::from_pairs(&[(2, 2)])
        );
    }

    #[test]
    fn order_3_field_automorphism_in_gammal1_27() {
        // p = 3, k = 3, d = 3: shape [J_3]
        let f = Field::new(3, 3).unwrap();
        let map = SemilinearMap { matrix: GfMatrix::identity(1), frobenius_power: 1 };
        let big = semilinear_to_matrix(&f, &map).unwrap();
        let prime = Field::new(3, 1).unwrap();
        assert_eq!(
            jordan_shape_unipotent(&prime, &big).unwrap(),
            JordanShape::from_pairs(&[(3, 1)])
        );
    }

    #[test]
    fn representation_independent_shapes() {
        // same computation under two different moduli for F_9
        for poly in [vec![1, 0], vec![2, 1]] {
            let f = Field::with_modulus(3, 2, poly).unwrap();
            let j2 = GfMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]);
            let big = restrict_scalars(&f, &j2).unwrap();
            let prime = Field::new(3, 1).unwrap();
            assert_eq!(
                jordan_shape_unipotent(&prime, &big).unwrap(),
                JordanShape::from_pairs(&[(2, 2)])
            );
        }
    }
}
