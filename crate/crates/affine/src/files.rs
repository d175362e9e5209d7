//! Stored matrix-group descriptors: a prime, a dimension, and generators as
//! row-major integer matrices. Candidate families also carry the normal
//! part they sit above, with expected orders as the validation manifest.

use serde::{Deserialize, Serialize};

use crate::error::AffineError;
use crate::gf::Field;
use crate::matrix::GfMatrix;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixGroupFile {
    pub name: String,
    pub p: u64,
    pub d: u32,
    pub generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub normal_part: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_normal_order: Option<String>,
}

fn decode(field: &Field, d: u32, rows: &[Vec<i64>]) -> Result<Vec<GfMatrix>, AffineError> {
    rows.iter()
        .map(|flat| {
            if flat.len() != (d * d) as usize {
                return Err(AffineError::DimensionMismatch);
            }
            let mut m = GfMatrix::zero(d as usize, d as usize);
            for i in 0..d as usize {
                for j in 0..d as usize {
                    let v = flat[i * d as usize + j].rem_euclid(field.p() as i64);
                    m[(i, j)] = field.from_int(v as u64);
                }
            }
            if m.det(field) == 0 {
                return Err(AffineError::Singular);
            }
            Ok(m)
        })
        .collect()
}

impl MatrixGroupFile {
    pub fn parse(text: &str) -> Result<Self, AffineError> {
        serde_json::from_str(text).map_err(|e| AffineError::BadParameters(e.to_string()))
    }

    pub fn matrices(&self) -> Result<(Vec<GfMatrix>, Vec<GfMatrix>), AffineError> {
        let field = Field::new(self.p, 1)?;
        Ok((decode(&field, self.d, &self.generators)?, decode(&field, self.d, &self.normal_part)?))
    }

    pub fn encode(name: &str, p: u64, d: u32, gens: &[GfMatrix], normal: &[GfMatrix]) -> Self {
        let flat = |ms: &[GfMatrix]| -> Vec<Vec<i64>> {
            ms.iter()
                .map(|m| {
                    (0..d as usize)
                        .flat_map(|i| (0..d as usize).map(move |j| (i, j)))
                        .map(|(i, j)| m[(i, j)] as i64)
                        .collect()
                })
                .collect()
        };
        MatrixGroupFile {
            name: name.into(),
            p,
            d,
            generators: flat(gens),
            normal_part: flat(normal),
            expected_order: None,
            expected_normal_order: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = Field::new(3, 1).unwrap();
        let m = GfMatrix::from_int_rows(&f, &[vec![1, 1], vec![0, 1]]);
        let file = MatrixGroupFile::encode("test", 3, 2, &[m.clone()], &[]);
        let text = serde_json::to_string(&file).unwrap();
        let parsed = MatrixGroupFile::parse(&text).unwrap();
        let (gens, normal) = parsed.matrices().unwrap();
        assert_eq!(gens, vec![m]);
        assert!(normal.is_empty());
    }

    #[test]
    fn rejects_singular() {
        let file = MatrixGroupFile {
            name: "bad".into(),
            p: 3,
            d: 2,
            generators: vec![vec![1, 1, 1, 1]],
            normal_part: vec![],
            expected_order: None,
            expected_normal_order: None,
        };
        assert!(file.matrices().is_err());
    }
}
