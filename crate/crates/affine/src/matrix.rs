//! Matrices over GF(p^k), row-major, with column-vector convention:
//! a matrix acts on the left, images of basis vectors are the columns.

use crate::error::AffineError;
use crate::gf::{El, Field};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<El>,
}

impl GfMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        GfMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GfMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<El>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        GfMatrix { rows: r, cols: c, data }
    }

    /// Entries given as integers reduced into the prime subfield.
    pub fn from_int_rows(field: &Field, rows: &[Vec<i64>]) -> Self {
        let p = field.p() as i64;
        GfMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| field.from_int(v.rem_euclid(p) as u64)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, field: &Field, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = GfMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self[(i, t)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let add = field.mul(a, other[(t, j)]);
                    out[(i, j)] = field.add(out[(i, j)], add);
                }
            }
        }
        out
    }

    pub fn add(&self, field: &Field, other: &GfMatrix) -> GfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = field.add(*a, b);
        }
        out
    }

    pub fn sub(&self, field: &Field, other: &GfMatrix) -> GfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = field.sub(*a, b);
        }
        out
    }

    pub fn scale(&self, field: &Field, c: El) -> GfMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = field.mul(*a, c);
        }
        out
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut out = GfMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn apply(&self, field: &Field, v: &[El]) -> Vec<El> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for (j, &x) in v.iter().enumerate() {
                    acc = field.add(acc, field.mul(self[(i, j)], x));
                }
                acc
            })
            .collect()
    }

    /// Entrywise Frobenius.
    pub fn frobenius(&self, field: &Field) -> GfMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = field.frobenius(*a);
        }
        out
    }

    pub fn pow(&self, field: &Field, mut e: u64) -> GfMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = GfMatrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            base = base.mul(field, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(t, &v)| v == u16::from(t / self.cols == t % self.cols))
    }

    /// Multiplicative order, bounded.
    pub fn order(&self, field: &Field, cap: u64) -> Result<u64, AffineError> {
        let mut x = self.clone();
        for o in 1..=cap {
            if x.is_identity() {
                return Ok(o);
            }
            x = x.mul(field, self);
        }
        Err(AffineError::BoundExceeded("matrix order"))
    }

    /// Row echelon form; returns (echelon, rank, pivot columns).
    pub fn echelon(&self, field: &Field) -> (GfMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pivot_row) = (r..m.rows).find(|&i| m[(i, c)] != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m[(r, j)];
                m[(r, j)] = m[(pivot_row, j)];
                m[(pivot_row, j)] = tmp;
            }
            let inv = field.inv(m[(r, c)]);
            for j in 0..m.cols {
                m[(r, j)] = field.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i != r && m[(i, c)] != 0 {
                    let f = m[(i, c)];
                    for j in 0..m.cols {
                        let sub = field.mul(f, m[(r, j)]);
                        m[(i, j)] = field.sub(m[(i, j)], sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.echelon(field).1
    }

    pub fn det(&self, field: &Field) -> El {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = field.one();
        for c in 0..m.cols {
            let Some(pivot_row) = (c..m.rows).find(|&i| m[(i, c)] != 0) else {
                return 0;
            };
            if pivot_row != c {
                det = field.neg(det);
                for j in 0..m.cols {
                    let tmp = m[(c, j)];
                    m[(c, j)] = m[(pivot_row, j)];
                    m[(pivot_row, j)] = tmp;
                }
            }
            det = field.mul(det, m[(c, c)]);
            let inv = field.inv(m[(c, c)]);
            for i in c + 1..m.rows {
                if m[(i, c)] != 0 {
                    let f = field.mul(m[(i, c)], inv);
                    for j in c..m.cols {
                        let sub = field.mul(f, m[(c, j)]);
                        m[(i, j)] = field.sub(m[(i, j)], sub);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self, field: &Field) -> Result<GfMatrix, AffineError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = GfMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = 1;
        }
        let (ech, rank, _) = aug.echelon(field);
        if rank < n || (0..n).any(|i| ech[(i, i)] != 1) {
            return Err(AffineError::Singular);
        }
        let mut out = GfMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = ech[(i, n + j)];
            }
        }
        Ok(out)
    }

    /// Basis of the kernel (column vectors with M v = 0).
    pub fn kernel_basis(&self, field: &Field) -> Vec<Vec<El>> {
        let (ech, _, pivots) = self.echelon(field);
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(ech[(r, free)]);
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space.
    pub fn image_basis(&self, field: &Field) -> Vec<Vec<El>> {
        let (_, _, pivots) = self.echelon(field);
        pivots.iter().map(|&c| (0..self.rows).map(|i| self[(i, c)]).collect()).collect()
    }

    /// Is the column vector v in the column space?
    pub fn image_contains(&self, field: &Field, v: &[El]) -> bool {
        assert_eq!(v.len(), self.rows);
        let mut aug = GfMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = v[i];
        }
        aug.rank(field) == self.rank(field)
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[GfMatrix]) -> GfMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = GfMatrix::zero(n, n);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, b.cols);
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(off + i, off + j)] = b[(i, j)];
                }
            }
            off += b.rows;
        }
        out
    }

    /// Kronecker product.
    pub fn kronecker(&self, field: &Field, other: &GfMatrix) -> GfMatrix {
        let mut out = GfMatrix::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for s in 0..other.rows {
                    for t in 0..other.cols {
                        out[(i * other.rows + s, j * other.cols + t)] =
                            field.mul(a, other[(s, t)]);
                    }
                }
            }
        }
        out
    }
}

/// Embedding of a 3x3 matrix into the minimal module of the ambient
/// group of type G2: diag(A, A^-T) in even characteristic and
/// diag(A, A^-T, 1) in odd characteristic.
pub fn g2_minimal_embedding(field: &Field, a: &GfMatrix) -> Result<GfMatrix, AffineError> {
    assert_eq!((a.rows(), a.cols()), (3, 3));
    let dual = a.inverse(field)?.transpose();
    if field.p() == 2 {
        Ok(GfMatrix::block_diag(&[a.clone(), dual]))
    } else {
        Ok(GfMatrix::block_diag(&[a.clone(), dual, GfMatrix::identity(1)]))
    }
}

impl std::ops::Index<(usize, usize)> for GfMatrix {
    type Output = El;
    fn index(&self, (i, j): (usize, usize)) -> &El {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for GfMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut El {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let f = Field::new(5, 1).unwrap();
        let m = GfMatrix::from_int_rows(&f, &[vec![0, -1], vec![1, 0]]);
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity());
        assert_eq!(m.order(&f, 10).unwrap(), 4);
        assert!(GfMatrix::identity(3).inverse(&f).unwrap().is_identity());
    }

    #[test]
    fn rank_kernel_image() {
        let f = Field::new(3, 1).unwrap();
        // h = [[1,1],[0,1]]; h - 1 has rank 1, kernel spanned by e1
        let h = GfMatrix::from_int_rows(&f, &[vec![1, 1], vec![0, 1]]);
        let hm1 = h.sub(&f, &GfMatrix::identity(2));
        assert_eq!(hm1.rank(&f), 1);
        let ker = hm1.kernel_basis(&f);
        assert_eq!(ker, vec![vec![1, 0]]);
        let im = hm1.image_basis(&f);
        assert_eq!(im, vec![vec![1, 0]]);
        assert!(hm1.image_contains(&f, &[2, 0]));
        assert!(!hm1.image_contains(&f, &[0, 1]));
        assert_eq!(hm1.rank(&f) + ker.len(), 2);
    }

    #[test]
    fn determinant_and_singularity() {
        let f = Field::new(7, 1).unwrap();
        let m = GfMatrix::from_int_rows(&f, &[vec![2, 3], vec![1, 5]]);
        assert_eq!(m.det(&f), 0); // 2*5-3*1 = 7 = 0 mod 7
        assert!(m.inverse(&f).is_err());
        let m = GfMatrix::from_int_rows(&f, &[vec![2, 3], vec![1, 6]]);
        assert_eq!(m.det(&f), 2); // 12 - 3 = 9 = 2 mod 7
    }

    #[test]
    fn extension_field_matrices() {
        let f = Field::new(2, 2).unwrap();
        let x = f.from_coeffs(&[0, 1]);
        let m = GfMatrix::from_rows(vec![vec![x, 0], vec![0, f.pow(x, 2)]]);
        assert_eq!(m.order(&f, 10).unwrap(), 3);
        assert_eq!(m.det(&f), f.mul(x, f.pow(x, 2))); // x^3 = 1
        assert_eq!(m.det(&f), 1);
    }

    #[test]
    fn g2_embedding_shapes() {
        use crate::jordan::{jordan_shape_unipotent, JordanShape};
        // [J_2, J_1] embeds with shape [J_2^2, J_1^2] for q even
        let f2 = Field::new(2, 1).unwrap();
        let a = GfMatrix::from_int_rows(&f2, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let img = g2_minimal_embedding(&f2, &a).unwrap();
        assert_eq!(img.rows(), 6);
        assert_eq!(
            jordan_shape_unipotent(&f2, &img).unwrap(),
            JordanShape::from_pairs(&[(2, 2), (1, 2)])
        );
        // and [J_2^2, J_1^3] for q = 3
        let f3 = Field::new(3, 1).unwrap();
        let a = GfMatrix::from_int_rows(&f3, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let img = g2_minimal_embedding(&f3, &a).unwrap();
        assert_eq!(img.rows(), 7);
        assert_eq!(
            jordan_shape_unipotent(&f3, &img).unwrap(),
            JordanShape::from_pairs(&[(2, 2), (1, 3)])
        );
        // identity embeds as the identity
        let img = g2_minimal_embedding(&f3, &GfMatrix::identity(3)).unwrap();
        assert!(img.is_identity());
    }

    #[test]
    fn block_and_kronecker() {
        let f = Field::new(3, 1).unwrap();
        let j2 = GfMatrix::from_int_rows(&f, &[vec![1, 1], vec![0, 1]]);
        let b = GfMatrix::block_diag(&[j2.clone(), GfMatrix::identity(1)]);
        assert_eq!(b.rows(), 3);
        assert_eq!(b.rank(&f), 3);
        let k = j2.kronecker(&f, &GfMatrix::identity(2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.sub(&f, &GfMatrix::identity(4)).rank(&f), 2);
    }
}
