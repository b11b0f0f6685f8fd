//! Serialization of scan and curve results.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::margins::MarginReport;
use crate::oracle::CurveSample;

/// Complex number as a `{re, im}` JSON object.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize infallibly");
    s.push('\n');
    s
}

/// Per-sample margins of a scan; excluded samples are omitted.
pub fn margins_csv(report: &MarginReport) -> String {
    let mut out = String::from("re(z),im(z),margin\n");
    for s in &report.samples {
        if let Some(m) = s.margin {
            writeln!(out, "{},{},{}", s.z.re, s.z.im, m).expect("write to string");
        }
    }
    out
}

/// Boundary-curve samples; excluded angles carry empty image columns.
pub fn curve_csv(curve: &CurveSample) -> String {
    let mut out = String::from("theta,re(w),im(w),excluded\n");
    for s in &curve.samples {
        match s.w {
            Some(w) => writeln!(out, "{},{},{},0", s.theta, w.re, w.im),
            None => writeln!(out, "{},,,1", s.theta),
        }
        .expect("write to string");
    }
    out
}
