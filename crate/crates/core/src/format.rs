//! JSON documents for states and parameters.
//!
//! * matrix: `{"matrix": [[[re, im], x4], x4]}` in the computational basis
//! * CS parameters: `{"cs": {"p1": .., "p7": ..}}`
//! * X parameters: `{"x": {"q1": .., "q7": ..}}`

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{CMat4, C64};
use crate::states::{embed_cs, embed_x, CSParams, DensityMatrix, XParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub matrix: [[[f64; 2]; 4]; 4],
}

impl MatrixFile {
    pub fn from_matrix(m: &CMat4) -> Self {
        MatrixFile { matrix: m.0.map(|row| row.map(|z| [z.re, z.im])) }
    }

    pub fn to_matrix(&self) -> CMat4 {
        crate::qmat::CMat(self.matrix.map(|row| row.map(|[re, im]| C64::new(re, im))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamFile {
    Cs(CSParams),
    X(XParams),
}

/// Any of the accepted documents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateDocument {
    Matrix(MatrixFile),
    Params(ParamFile),
}

impl StateDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("parse error: {e}")))
    }

    /// The raw matrix, before any validation.
    pub fn matrix(&self) -> CMat4 {
        match self {
            StateDocument::Matrix(m) => m.to_matrix(),
            StateDocument::Params(ParamFile::Cs(p)) => p.matrix(),
            StateDocument::Params(ParamFile::X(q)) => q.matrix(),
        }
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        match self {
            StateDocument::Matrix(m) => DensityMatrix::new(m.to_matrix()),
            StateDocument::Params(ParamFile::Cs(p)) => embed_cs(p),
            StateDocument::Params(ParamFile::X(q)) => embed_x(q),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}
