//! JSON matrix files: `{"rows": r, "cols": c, "data": [[re, im], ...]}`.
//!
//! Numbers are written with 17 significant digits so that a write/read
//! round trip reproduces every entry bit for bit.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use posmap_core::ComplexMatrix;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct MatrixFileOut {
    rows: usize,
    cols: usize,
    data: Vec<[Box<RawValue>; 2]>,
}

/// Formats a finite float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw(x: f64) -> Result<Box<RawValue>, CliError> {
    if !x.is_finite() {
        return Err(CliError::Usage(format!("cannot serialize non-finite value {x}")));
    }
    RawValue::from_string(format_f64(x)).map_err(|e| CliError::Usage(e.to_string()))
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        let data = self.data.iter().map(|&[re, im]| Complex::new(re, im)).collect();
        ComplexMatrix::new(self.rows, self.cols, data).map_err(|e| CliError::Usage(format!("bad matrix file: {e}")))
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("cannot parse matrix file: {e}")))
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let data = self
            .data
            .iter()
            .map(|&[re, im]| Ok([raw(re)?, raw(im)?]))
            .collect::<Result<_, CliError>>()?;
        let out = MatrixFileOut {
            rows: self.rows,
            cols: self.cols,
            data,
        };
        let mut s = serde_json::to_string(&out).map_err(|e| CliError::Usage(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(path.display().to_string(), e))?;
    MatrixFile::parse(&text)?.to_matrix()
}

pub fn matrix_json(m: &ComplexMatrix) -> Result<String, CliError> {
    MatrixFile::from_matrix(m).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let values = [
            0.1,
            -1.0 / 3.0,
            1e-300,
            5e-324,
            f64::MAX,
            -0.0,
            2.0f64.sqrt(),
            123456789.12345679,
        ];
        let data: Vec<[f64; 2]> = values.iter().map(|&x| [x, -x / 7.0]).collect();
        let file = MatrixFile { rows: 2, cols: 4, data };
        let back = MatrixFile::parse(&file.to_json().unwrap()).unwrap();
        for (a, b) in file.data.iter().zip(&back.data) {
            assert_eq!(a[0].to_bits(), b[0].to_bits());
            assert_eq!(a[1].to_bits(), b[1].to_bits());
        }
    }

    #[test]
    fn field_order_and_format() {
        let m = ComplexMatrix::identity(1);
        assert_eq!(
            matrix_json(&m).unwrap(),
            "{\"rows\":1,\"cols\":1,\"data\":[[1.0000000000000000e0,0.0000000000000000e0]]}\n"
        );
    }

    #[test]
    fn rejects_wrong_length() {
        let f = MatrixFile::parse(r#"{"rows":2,"cols":2,"data":[[1,0]]}"#).unwrap();
        assert!(f.to_matrix().is_err());
        assert!(MatrixFile::parse(r#"{"rows":1,"cols":1,"data":[[1,0]],"extra":1}"#).is_err());
    }

    #[test]
    fn rejects_non_finite_output() {
        let file = MatrixFile {
            rows: 1,
            cols: 1,
            data: vec![[f64::NAN, 0.0]],
        };
        assert!(file.to_json().is_err());
    }
}
