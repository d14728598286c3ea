//! JSON forms of representations, reports and decompositions.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::irreps::IrrepLabel;
use crate::ladder::DecompositionResult;
use crate::matrix::Matrix;
use crate::scalars::HalfInt;
use crate::so4core::{RelationReport, So4Rep};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub fn matrix_to_strings<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn matrix_from_strings<F: Field>(rows: &[Vec<String>]) -> Result<Matrix<F>> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| F::parse_text(x)).collect::<Result<Vec<F>>>())
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(parsed)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct So4RepJson {
    pub dim: usize,
    pub basis: Option<Vec<(HalfInt, HalfInt)>>,
    #[serde(rename = "I21")]
    pub i21: Vec<Vec<String>>,
    #[serde(rename = "I32")]
    pub i32: Vec<Vec<String>>,
    #[serde(rename = "I43")]
    pub i43: Vec<Vec<String>>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<IrrepLabel>,
}

impl<F: Field> So4Rep<F> {
    pub fn to_json(&self) -> So4RepJson {
        So4RepJson {
            dim: self.dim(),
            basis: self.basis.clone(),
            i21: matrix_to_strings(&self.i21),
            i32: matrix_to_strings(&self.i32),
            i43: matrix_to_strings(&self.i43),
            provenance: self.provenance.clone(),
            label: self.label,
        }
    }

    pub fn from_json(j: &So4RepJson) -> Result<Self> {
        let mut rep = So4Rep::new(
            matrix_from_strings(&j.i21)?,
            matrix_from_strings(&j.i32)?,
            matrix_from_strings(&j.i43)?,
            &j.provenance,
        )?;
        if rep.dim() != j.dim {
            return Err(Error::ShapeMismatch(format!("dim {} but matrices are {}", j.dim, rep.dim())));
        }
        if let Some(b) = &j.basis {
            if b.len() != j.dim {
                return Err(Error::ShapeMismatch("basis length".into()));
            }
            rep = rep.with_basis(b.clone());
        }
        rep.label = j.label;
        Ok(rep)
    }
}

pub fn write_rep<F: Field>(rep: &So4Rep<F>, path: &Path) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(&rep.to_json())?)?;
    Ok(())
}

pub fn read_rep<F: Field>(path: &Path) -> Result<So4Rep<F>> {
    let j: So4RepJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    So4Rep::from_json(&j)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RelationJson {
    pub pass: bool,
    /// Nonzero residual entries as `[row, col, value]` per identity.
    pub residuals: Vec<Vec<(usize, usize, String)>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RelationReportJson {
    pub pass: bool,
    pub relations: BTreeMap<String, RelationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i41_consistent: Option<bool>,
}

impl<F: Field> RelationReport<F> {
    pub fn to_json(&self) -> RelationReportJson {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let residuals = r
                    .residuals
                    .iter()
                    .map(|m| {
                        let s = m.scale_hint();
                        m.nonzero_entries().filter(|(_, _, x)| !x.is_small(s)).map(|(a, b, x)| (a, b, x.to_string())).collect()
                    })
                    .collect();
                (r.name.clone(), RelationJson { pass: r.passes(), residuals })
            })
            .collect();
        RelationReportJson { pass: self.passes(), relations, i41_consistent: self.i41_consistent }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ComponentJson {
    pub label: IrrepLabel,
    pub dim: usize,
    pub basis_columns: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CertificateJson {
    pub change_of_basis: Vec<Vec<String>>,
    pub intertwiners: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DecompositionJson {
    pub components: Vec<ComponentJson>,
    pub certificate: CertificateJson,
}

impl<F: Field> DecompositionResult<F> {
    pub fn to_json(&self) -> DecompositionJson {
        let components = self
            .components
            .iter()
            .map(|c| ComponentJson {
                label: c.label,
                dim: c.basis.cols(),
                basis_columns: (0..c.basis.cols())
                    .map(|j| c.basis.col(j).iter().map(|x| x.to_string()).collect())
                    .collect(),
            })
            .collect();
        DecompositionJson {
            components,
            certificate: CertificateJson {
                change_of_basis: matrix_to_strings(&self.change_of_basis),
                intertwiners: self.components.iter().map(|c| matrix_to_strings(&c.intertwiner)).collect(),
            },
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TensorJson {
    pub factors: [IrrepLabel; 2],
    pub rep: So4RepJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<IrrepLabel>>,
}
