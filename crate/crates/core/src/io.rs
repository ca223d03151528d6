//! JSON formats for simplices and Gram matrices.
//!
//! Floats are written in scientific notation with 17 significant digits so a
//! write/read cycle reproduces every bit.

use std::io;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::{GeometryError, Result};
use crate::geometry::{simplex_from_gram, GramSpec, Simplex};
use crate::tolerance::Tolerance;

/// `{"dimension": d, "vertices": [[..], ..]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexJson {
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
}

/// `{"gram": [[..], ..]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramJson {
    pub gram: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SimplexInput {
    Simplex(SimplexJson),
    Gram(GramJson),
}

impl From<&Simplex> for SimplexJson {
    fn from(s: &Simplex) -> Self {
        SimplexJson {
            dimension: s.dim(),
            vertices: s.vertices().iter().map(|v| v.iter().copied().collect()).collect(),
        }
    }
}

impl SimplexJson {
    pub fn to_simplex(&self, tol: &Tolerance) -> Result<Simplex> {
        if self.vertices.len() != self.dimension + 1 {
            return Err(GeometryError::DimensionMismatch(format!(
                "dimension {} needs {} vertices, got {}",
                self.dimension,
                self.dimension + 1,
                self.vertices.len()
            )));
        }
        if let Some(i) = self.vertices.iter().position(|v| v.len() != self.dimension) {
            return Err(GeometryError::DimensionMismatch(format!(
                "vertex {i} has {} coordinates, expected {}",
                self.vertices[i].len(),
                self.dimension
            )));
        }
        Simplex::from_rows(&self.vertices, tol)
    }
}

impl GramJson {
    pub fn to_gram(&self, tol: &Tolerance) -> Result<GramSpec> {
        let n = self.gram.len();
        if n < 2 || self.gram.iter().any(|row| row.len() != n) {
            return Err(GeometryError::DimensionMismatch(format!(
                "Gram matrix must be square of size >= 2, got {n} rows"
            )));
        }
        GramSpec::new(DMatrix::from_fn(n, n, |i, j| self.gram[i][j]), tol)
    }
}

impl From<&GramSpec> for GramJson {
    fn from(g: &GramSpec) -> Self {
        let e = g.entries();
        GramJson {
            gram: (0..e.nrows()).map(|i| e.row(i).iter().copied().collect()).collect(),
        }
    }
}

/// Parse either JSON format. Syntax and schema problems are reported as
/// [`GeometryError::Parse`]; invalid geometry keeps its own variant.
pub fn parse_simplex_input(text: &str) -> Result<SimplexInput> {
    serde_json::from_str(text).map_err(|e| GeometryError::Parse(e.to_string()))
}

/// Parse either format and produce a simplex, factoring a Gram matrix first.
pub fn read_simplex(text: &str, tol: &Tolerance) -> Result<Simplex> {
    match parse_simplex_input(text)? {
        SimplexInput::Simplex(s) => s.to_simplex(tol),
        SimplexInput::Gram(g) => simplex_from_gram(&g.to_gram(tol)?, tol),
    }
}

/// Compact formatter writing every float with 17 significant digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactFloatFormatter;

impl Formatter for ExactFloatFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serialize to a single-line JSON string with exact floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, ExactFloatFormatter);
    value
        .serialize(&mut ser)
        .expect("serializing plain data into memory cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

pub fn simplex_to_json(s: &Simplex) -> String {
    to_json(&SimplexJson::from(s))
}
