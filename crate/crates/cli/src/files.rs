//! Input file schemas.

use std::path::Path;

use serde::{Deserialize, Serialize};
use transvect_core::{FieldMatrix, FieldVector, Functional, GraphSpec, SymplecticSpace};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub p: u8,
    pub dim: usize,
    /// Gram matrix rows.
    pub form: Vec<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanning_set: Option<Vec<Vec<u8>>>,
}

/// Either a full problem or a sigma-game graph (p = 2, basis = vertices).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceFile {
    Problem(ProblemFile),
    Graph(GraphSpec),
}

/// A coordinate row, bare or wrapped as `{"coords": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordsFile {
    Bare(Vec<u8>),
    Wrapped { coords: Vec<u8> },
}

impl CoordsFile {
    pub fn coords(&self) -> &[u8] {
        match self {
            Self::Bare(c) | Self::Wrapped { coords: c } => c,
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::new("ParseError", format!("{}: {e}", path.display())))
}

impl ProblemFile {
    pub fn to_space(&self) -> Result<SymplecticSpace, CliError> {
        if self.form.len() != self.dim {
            return Err(CliError::new(
                "InvalidInput",
                format!("form has {} rows, expected {}", self.form.len(), self.dim),
            ));
        }
        let gram = FieldMatrix::from_rows(self.p, &self.form)?;
        if gram.cols() != self.dim {
            return Err(CliError::new("InvalidInput", format!("form must be {0}x{0}", self.dim)));
        }
        let span = match &self.spanning_set {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .map(|r| {
                        if r.len() != self.dim {
                            return Err(CliError::new(
                                "InvalidInput",
                                format!("spanning vector of length {}, expected {}", r.len(), self.dim),
                            ));
                        }
                        Ok(FieldVector::new(self.p, r.clone())?)
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(SymplecticSpace::new(gram, span)?)
    }
}

impl SpaceFile {
    pub fn to_space(&self) -> Result<SymplecticSpace, CliError> {
        match self {
            Self::Problem(p) => p.to_space(),
            Self::Graph(g) => Ok(g.to_space()?),
        }
    }
}

pub fn functional(sp: &SymplecticSpace, file: &CoordsFile) -> Result<Functional, CliError> {
    Ok(Functional(vector(sp, file)?))
}

pub fn vector(sp: &SymplecticSpace, file: &CoordsFile) -> Result<FieldVector, CliError> {
    let c = file.coords();
    if c.len() != sp.dim() {
        return Err(CliError::new(
            "InvalidInput",
            format!("coordinate row of length {}, expected {}", c.len(), sp.dim()),
        ));
    }
    Ok(FieldVector::new(sp.p(), c.to_vec())?)
}
