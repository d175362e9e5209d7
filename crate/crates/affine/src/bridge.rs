//! Bridging matrices and permutations: a matrix group over GF(q) acts on
//! the nonzero vectors, a projective group on the projective points, and a
//! vector permutation of a linear map converts back into a matrix by
//! reading off basis-vector images.

use crate::gf::{El, Field};
use crate::matrix::GfMatrix;
use permcore::Permutation;

/// Vector indexing for F_q^d: index = sum c_i q^i with coordinates packed
/// little-endian; index 0 is the zero vector.
pub struct VectorSpace {
    q: u64,
    d: u32,
}

impl VectorSpace {
    pub fn new(field: &Field, d: u32) -> Self {
        VectorSpace { q: field.order(), d }
    }

    pub fn count(&self) -> u64 {
        self.q.pow(self.d)
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn vector(&self, index: u64) -> Vec<El> {
        let mut v = index;
        (0..self.d)
            .map(|_| {
                let c = (v % self.q) as El;
                v /= self.q;
                c
            })
            .collect()
    }

    pub fn index(&self, v: &[El]) -> u64 {
        let mut idx = 0u64;
        for &c in v.iter().rev() {
            idx = idx * self.q + c as u64;
        }
        idx
    }
}

/// Permutation of the q^d - 1 nonzero vectors induced by an invertible
/// matrix (point i corresponds to vector index i + 1).
pub fn matrix_to_vector_perm(field: &Field, m: &GfMatrix, space: &VectorSpace) -> Permutation {
    let n = space.count() - 1;
    let images: Vec<u32> = (0..n)
        .map(|i| {
            let v = space.vector(i + 1);
            let w = m.apply(field, &v);
            (space.index(&w) - 1) as u32
        })
        .collect();
    Permutation::from_images(images).expect("invertible matrix permutes nonzero vectors")
}

/// Same degree, for a semilinear map v -> m . frobenius^l(v).
pub fn semilinear_to_vector_perm(
    field: &Field,
    m: &GfMatrix,
    frobenius_power: u32,
    space: &VectorSpace,
) -> Permutation {
    let n = space.count() - 1;
    let images: Vec<u32> = (0..n)
        .map(|i| {
            let mut v = space.vector(i + 1);
            for c in v.iter_mut() {
                for _ in 0..frobenius_power {
                    *c = field.frobenius(*c);
                }
            }
            let w = m.apply(field, &v);
            (space.index(&w) - 1) as u32
        })
        .collect();
    Permutation::from_images(images).expect("semilinear map permutes nonzero vectors")
}

/// Recover the matrix of an F_p-linear vector permutation from the images
/// of the standard basis vectors (columns).
pub fn matrix_from_vector_perm(_field: &Field, perm: &Permutation, space: &VectorSpace) -> GfMatrix {
    let d = space.dim() as usize;
    let mut m = GfMatrix::zero(d, d);
    for j in 0..d {
        let e_j = space.q.pow(j as u32); // index of the j-th basis vector
        let image_index = perm.apply((e_j - 1) as u32) as u64 + 1;
        let w = space.vector(image_index);
        for i in 0..d {
            m[(i, j)] = w[i];
        }
    }
    m
}

/// Projective points of F_q^n: canonical representatives scale the first
/// nonzero coordinate to 1; points are indexed in lexicographic order of
/// their packed representative.
pub struct ProjectiveSpace {
    pub field_order: u64,
    pub dim: u32,
    points: Vec<Vec<El>>,
    index: std::collections::HashMap<Vec<El>, u32>,
}

impl ProjectiveSpace {
    pub fn new(field: &Field, dim: u32) -> Self {
        let space = VectorSpace::new(field, dim);
        let mut points = Vec::new();
        let mut index = std::collections::HashMap::new();
        for i in 1..space.count() {
            let v = space.vector(i);
            if v == Self::normalize_static(field, &v) {
                index.insert(v.clone(), points.len() as u32);
                points.push(v);
            }
        }
        ProjectiveSpace { field_order: field.order(), dim, points, index }
    }

    fn normalize_static(field: &Field, v: &[El]) -> Vec<El> {
        let lead = v.iter().copied().find(|&c| c != 0).expect("nonzero vector");
        let inv = field.inv(lead);
        v.iter().map(|&c| field.mul(c, inv)).collect()
    }

    pub fn normalize(&self, field: &Field, v: &[El]) -> Vec<El> {
        Self::normalize_static(field, v)
    }

    pub fn len(&self) -> u32 {
        self.points.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: u32) -> &[El] {
        &self.points[i as usize]
    }

    pub fn index_of(&self, field: &Field, v: &[El]) -> u32 {
        self.index[&Self::normalize_static(field, v)]
    }

    /// Permutation of the projective points induced by an invertible matrix.
    pub fn matrix_perm(&self, field: &Field, m: &GfMatrix) -> Permutation {
        let images: Vec<u32> = self
            .points
            .iter()
            .map(|v| self.index_of(field, &m.apply(field, v)))
            .collect();
        Permutation::from_images(images).expect("projective action is a permutation")
    }

    /// Permutation from a semilinear map v -> m . frobenius^l(v).
    pub fn semilinear_perm(&self, field: &Field, m: &GfMatrix, l: u32) -> Permutation {
        let images: Vec<u32> = self
            .points
            .iter()
            .map(|v| {
                let mut w = v.clone();
                for c in w.iter_mut() {
                    for _ in 0..l {
                        *c = field.frobenius(*c);
                    }
                }
                self.index_of(field, &m.apply(field, &w))
            })
            .collect();
        Permutation::from_images(images).expect("projective action is a permutation")
    }

    /// Permutation restricted to an invariant subset of points (e.g. the
    /// isotropic ones); `subset` lists point indices in ascending order.
    pub fn restricted_perm(
        &self,
        field: &Field,
        m: &GfMatrix,
        l: u32,
        subset: &[u32],
    ) -> Permutation {
        let position: std::collections::HashMap<u32, u32> =
            subset.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
        let images: Vec<u32> = subset
            .iter()
            .map(|&pidx| {
                let mut w = self.points[pidx as usize].clone();
                for c in w.iter_mut() {
                    for _ in 0..l {
                        *c = field.frobenius(*c);
                    }
                }
                let target = self.index_of(field, &m.apply(field, &w));
                position[&target]
            })
            .collect();
        Permutation::from_images(images).expect("subset is invariant")
    }
}
