use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::CMatrix;
use super::poly::MatPoly;
use super::c64;

/// Wire form of a matrix: `{"dim": N, "entries": [[[re, im], ...], ...]}`, row-major.
#[derive(Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// Wire form of a polynomial: `{"dim": N, "coeffs": [matrix, ...]}`, ascending powers.
#[derive(Serialize, Deserialize)]
pub struct PolyJson {
    pub dim: usize,
    pub coeffs: Vec<MatrixJson>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        Self {
            dim: m.dim(),
            entries: m
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = crate::error::MoprlError;

    fn try_from(j: MatrixJson) -> Result<Self, Self::Error> {
        if j.entries.len() != j.dim {
            return Err(crate::error::MoprlError::DimensionMismatch {
                expected: j.dim,
                found: j.entries.len(),
            });
        }
        CMatrix::from_rows(
            j.entries
                .into_iter()
                .map(|row| row.into_iter().map(|[re, im]| c64(re, im)).collect())
                .collect(),
        )
    }
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        CMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for MatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            dim: self.dim(),
            coeffs: self.coeffs().iter().map(MatrixJson::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        let coeffs = j
            .coeffs
            .into_iter()
            .map(CMatrix::try_from)
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        if coeffs.is_empty() {
            return Ok(MatPoly::zero(j.dim));
        }
        MatPoly::new(j.dim, coeffs).map_err(serde::de::Error::custom)
    }
}
