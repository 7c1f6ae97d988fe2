//! JSON matrix files: `{"rows": r, "cols": c, "data": [[re, im], ...]}`,
//! row-major. Numbers are written with shortest round-trip formatting, so
//! read after write is bit-identical.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::{Matrix, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&Matrix> for MatrixFile {
    fn from(m: &Matrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), data: m.data().iter().map(|z| [z.re, z.im]).collect() }
    }
}

impl TryFrom<MatrixFile> for Matrix {
    type Error = Error;

    fn try_from(f: MatrixFile) -> Result<Self, Error> {
        Matrix::new(f.rows, f.cols, f.data.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: malformed matrix file: {message}")]
    Parse { path: String, message: String },
}

pub fn parse_matrix(text: &str) -> Result<Matrix, String> {
    let f: MatrixFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    Matrix::try_from(f).map_err(|e| e.to_string())
}

pub fn to_json(m: &Matrix) -> String {
    serde_json::to_string(&MatrixFile::from(m)).expect("finite matrix serializes")
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| IoError::Io { path: path.display().to_string(), source })?;
    parse_matrix(&text).map_err(|message| IoError::Parse { path: path.display().to_string(), message })
}

pub fn write_matrix(path: impl AsRef<Path>, m: &Matrix) -> Result<(), IoError> {
    let path = path.as_ref();
    let mut text = to_json(m);
    text.push('\n');
    fs::write(path, text).map_err(|source| IoError::Io { path: path.display().to_string(), source })
}
