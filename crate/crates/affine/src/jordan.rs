//! Jordan shapes of unipotent matrices in characteristic p, recovered from
//! the rank sequence of powers of (h - 1): the multiplicity of the block of
//! size i is r_{i-1} - 2 r_i + r_{i+1}.

use std::collections::BTreeMap;

use crate::error::AffineError;
use crate::gf::Field;
use crate::matrix::GfMatrix;

/// Multiset {block size -> multiplicity}; sizes never exceed p.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JordanShape(pub BTreeMap<u32, u32>);

impl JordanShape {
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        JordanShape(pairs.iter().copied().filter(|&(_, m)| m > 0).collect())
    }

    pub fn dimension(&self) -> u32 {
        self.0.iter().map(|(&s, &m)| s * m).sum()
    }

    pub fn multiplicity(&self, size: u32) -> u32 {
        self.0.get(&size).copied().unwrap_or(0)
    }

    /// Has a block of size strictly below the given one?
    pub fn has_block_below(&self, size: u32) -> bool {
        self.0.keys().any(|&s| s < size)
    }

    /// Scale every multiplicity, as under restriction of scalars.
    pub fn scaled(&self, k: u32) -> JordanShape {
        JordanShape(self.0.iter().map(|(&s, &m)| (s, m * k)).collect())
    }

    /// Disjoint union of block multisets.
    pub fn union(&self, other: &JordanShape) -> JordanShape {
        let mut map = self.0.clone();
        for (&s, &m) in &other.0 {
            *map.entry(s).or_insert(0) += m;
        }
        JordanShape(map)
    }

    /// e.g. "[J_2^2,J_1^3]".
    pub fn notation(&self) -> String {
        let mut parts = Vec::new();
        for (&s, &m) in self.0.iter().rev() {
            if m == 1 {
                parts.push(format!("J_{s}"));
            } else {
                parts.push(format!("J_{s}^{m}"));
            }
        }
        format!("[{}]", parts.join(","))
    }
}

/// Jordan shape of a matrix with h^p = 1 over a field of characteristic p.
pub fn jordan_shape_unipotent(field: &Field, h: &GfMatrix) -> Result<JordanShape, AffineError> {
    let p = field.p();
    if !h.pow(field, p).is_identity() {
        return Err(AffineError::WrongOrder);
    }
    let d = h.rows();
    let n = h.sub(field, &GfMatrix::identity(d));
    // ranks of (h-1)^j for j = 0..=p+1
    let mut ranks = Vec::with_capacity(p as usize + 2);
    let mut power = GfMatrix::identity(d);
    for _ in 0..=(p + 1).min(d as u64 + 1) {
        ranks.push(power.rank(field) as i64);
        power = power.mul(field, &n);
    }
    // pad: higher powers are zero
    while ranks.len() < p as usize + 2 {
        ranks.push(0);
    }
    let mut pairs = Vec::new();
    for i in 1..=p as u32 {
        let m = ranks[i as usize - 1] - 2 * ranks[i as usize] + ranks[i as usize + 1];
        debug_assert!(m >= 0);
        if m > 0 {
            pairs.push((i, m as u32));
        }
    }
    let shape = JordanShape::from_pairs(&pairs);
    debug_assert_eq!(shape.dimension() as usize, d);
    Ok(shape)
}
