//! File formats shared by the library and the command-line tool.
//!
//! Inputs:
//! - matrix: `{"dim": n, "entries": [[re, im], ...]}`, row-major, `n²` pairs;
//! - sequence: `{"terms": [[re, im], ...]}`, nonempty;
//! - points: `{"points": [[re, im], ...]}`, nonempty.
//!
//! Every float written by this module uses 17 significant digits
//! (`{:.16e}`), so output is exact and byte-stable.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::normaloid::{FiniteCompactSet, NormaloidReport};
use crate::numrange::NumericalRangeProfile;
use crate::sequences::{SequenceSpec, TheoremVerdict};

/// Formats a double with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact JSON formatter that writes floats with [`fmt_f64`].
#[derive(Debug, Default, Clone, Copy)]
pub struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` as one line of JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    value.serialize(&mut ser).expect("in-memory serialization");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complexes(pairs: Vec<[f64; 2]>) -> Vec<Complex64> {
    pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()
}

fn parse<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceJson {
    pub terms: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsJson {
    pub points: Vec<[f64; 2]>,
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let m: MatrixJson = parse(text)?;
    ComplexMatrix::new(m.dim, complexes(m.entries))
}

pub fn matrix_to_json(a: &ComplexMatrix) -> String {
    to_json(&MatrixJson {
        dim: a.dim(),
        entries: a.entries().iter().copied().map(pair).collect(),
    })
}

pub fn parse_sequence(text: &str) -> Result<SequenceSpec> {
    let s: SequenceJson = parse(text)?;
    SequenceSpec::new(complexes(s.terms))
}

pub fn sequence_to_json(x: &SequenceSpec) -> String {
    to_json(&SequenceJson {
        terms: x.terms().iter().copied().map(pair).collect(),
    })
}

pub fn parse_points(text: &str) -> Result<FiniteCompactSet> {
    let p: PointsJson = parse(text)?;
    FiniteCompactSet::new(complexes(p.points))
}

pub fn points_to_json(k: &FiniteCompactSet) -> String {
    to_json(&PointsJson {
        points: k.points().iter().copied().map(pair).collect(),
    })
}

#[derive(Serialize)]
struct ReportJson {
    norm: f64,
    radius: f64,
    ratio: f64,
    is_normaloid: bool,
    witness: Option<[f64; 2]>,
    corollary_sup: f64,
    defect: f64,
}

pub fn report_to_json(r: &NormaloidReport) -> String {
    to_json(&ReportJson {
        norm: r.norm,
        radius: r.radius,
        ratio: r.ratio,
        is_normaloid: r.is_normaloid,
        witness: r.witness.map(pair),
        corollary_sup: r.corollary_sup,
        defect: r.defect,
    })
}

#[derive(Serialize)]
struct VerdictJson {
    m_x: f64,
    sup_value: f64,
    witness_lambda: [f64; 2],
    witness_value: f64,
    grid_max: f64,
    gap: f64,
    holds: bool,
}

pub fn verdict_to_json(v: &TheoremVerdict) -> String {
    to_json(&VerdictJson {
        m_x: v.m_x,
        sup_value: v.sup_value,
        witness_lambda: pair(v.witness_lambda),
        witness_value: v.witness_value,
        grid_max: v.grid_max,
        gap: v.gap,
        holds: v.holds,
    })
}

#[derive(Serialize)]
struct LemmaJson {
    s: [f64; 2],
    lhs: f64,
    rhs: f64,
}

/// `{"s": [re, im], "lhs": |K+s|, "rhs": |K|+|s|}`.
pub fn lemma_to_json(s: Complex64, lhs: f64, rhs: f64) -> String {
    to_json(&LemmaJson { s: pair(s), lhs, rhs })
}

/// Boundary CSV: header `theta,support,re,im`, one row per swept direction.
pub fn boundary_csv(profile: &NumericalRangeProfile) -> String {
    let mut out = String::from("theta,support,re,im\n");
    for s in &profile.samples {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(s.theta),
            fmt_f64(s.support_value),
            fmt_f64(s.boundary_point.re),
            fmt_f64(s.boundary_point.im)
        ));
    }
    out
}
