//! Pointwise theorem margins, disk-grid scans and class verdicts.
//!
//! A margin is the slack of a characterization inequality at one sample:
//! non-negative where the inequality holds, zero on its equality locus.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{CatalogError, FamilySpec, DEFAULT_EXCLUSION};
use crate::grammar::{parse_real, ParseError};
use crate::operators::{
    self, a_f, a_p_of, co_alpha_lhs, origin_values, phi_of, q_term, thm3_phis, OperatorError, OperatorPoint,
    OriginValues,
};
use crate::report::JsonComplex;

/// Default tolerance on negative margins.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-7;
/// Upper bound accepted for the Schwarz factor `|φ_p(0)|`.
pub const SCHWARZ_BOUND_TOL: f64 = 1e-9;
/// Environment variable selecting a grid preset.
pub const PRESET_ENV: &str = "GFT_GRID_PRESET";

const EXCLUSION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarginError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty scan: every sample of {theorem} was excluded")]
    EmptyScan { theorem: String },
    #[error("cannot parse '{text}': {error}")]
    Parse { text: String, error: ParseError },
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Radial-angular sample plan for the unit disk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridConfig {
    pub radii: Vec<f64>,
    pub angles: usize,
    #[serde(rename = "epsilon")]
    pub exclusion_radius: f64,
    pub margin_tol: f64,
    /// Adds the single sample `z = 0` ahead of the rings.
    pub include_center: bool,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self::with_resolution(24, 256)
    }
}

impl GridConfig {
    /// `count` radii geometric from 0.05 to 0.995 and `angles` uniform angles.
    pub fn with_resolution(count: usize, angles: usize) -> Self {
        Self {
            radii: geometric(0.05, 0.995, count),
            angles,
            exclusion_radius: DEFAULT_EXCLUSION,
            margin_tol: DEFAULT_MARGIN_TOL,
            include_center: true,
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "fast" => Some(Self::with_resolution(12, 128)),
            "default" => Some(Self::default()),
            "fine" => Some(Self::with_resolution(48, 1024)),
            _ => None,
        }
    }

    /// Preset named by `GFT_GRID_PRESET`, or the default grid when unset.
    pub fn from_env() -> Result<Self, MarginError> {
        match std::env::var(PRESET_ENV) {
            Ok(name) if !name.is_empty() => Self::preset(&name)
                .ok_or_else(|| MarginError::InvalidGrid(format!("unknown preset '{name}' (fast, default, fine)"))),
            _ => Ok(Self::default()),
        }
    }

    pub fn validate(&self) -> Result<(), MarginError> {
        let bad = |m: String| Err(MarginError::InvalidGrid(m));
        if self.radii.is_empty() && !self.include_center {
            return bad("no samples".into());
        }
        if self.radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return bad("radii must lie in (0,1)".into());
        }
        if self.radii.windows(2).any(|w| w[0] >= w[1]) {
            return bad("radii must be strictly increasing".into());
        }
        if self.angles < 8 {
            return bad(format!("angles = {} < 8", self.angles));
        }
        if !(self.exclusion_radius > 0.0 && self.exclusion_radius.is_finite()) {
            return bad("epsilon must be positive".into());
        }
        if !(self.margin_tol >= 0.0 && self.margin_tol.is_finite()) {
            return bad("margin tolerance must be non-negative".into());
        }
        Ok(())
    }

    /// Sample points: the centre (if enabled), then each ring in order of
    /// increasing radius, angles `2πj/n` starting from the positive real axis.
    /// Points on the coordinate axes are placed exactly.
    pub fn points(&self) -> Vec<Complex64> {
        let n = self.angles;
        let mut out = Vec::with_capacity(self.radii.len() * n + 1);
        if self.include_center {
            out.push(Complex64::new(0.0, 0.0));
        }
        for &r in &self.radii {
            for j in 0..n {
                out.push(ring_point(r, j, n));
            }
        }
        out
    }

    /// Grid with twice the angles and a geometric midpoint between every
    /// pair of consecutive radii.
    pub fn refined(&self) -> Self {
        let mut radii = Vec::with_capacity(2 * self.radii.len());
        for (k, &r) in self.radii.iter().enumerate() {
            if k > 0 {
                radii.push((self.radii[k - 1] * r).sqrt());
            }
            radii.push(r);
        }
        Self { radii, angles: 2 * self.angles, ..self.clone() }
    }
}

/// `count` values geometric between `min` and `max` with exact endpoints.
pub fn geometric(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let ratio = (max / min).ln() / (count - 1) as f64;
            let mut v: Vec<f64> = (0..count).map(|k| min * (ratio * k as f64).exp()).collect();
            v[count - 1] = max;
            v
        }
    }
}

/// `r e^{2πij/n}` with axis points placed exactly.
pub fn ring_point(r: f64, j: usize, n: usize) -> Complex64 {
    if (4 * j).is_multiple_of(n) {
        return match (4 * j) / n {
            0 => Complex64::new(r, 0.0),
            1 => Complex64::new(0.0, r),
            2 => Complex64::new(-r, 0.0),
            _ => Complex64::new(0.0, -r),
        };
    }
    Complex64::from_polar(r, TAU * j as f64 / n as f64)
}

/// Margin functional selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Theorem {
    Thm1,
    Thm2 { alpha: f64 },
    Co0,
    Thm3,
    Corollary,
    /// `a = None` resolves to `a_p_of(spec, p)` at scan time.
    Thm4 { p: f64, a: Option<f64> },
    CoAlphaLhs { alpha: f64 },
    ReM { p: f64 },
}

impl Theorem {
    pub fn validate(&self) -> Result<(), MarginError> {
        let alpha_ok = |alpha: f64| alpha > 1.0 && alpha <= 2.0;
        let p_ok = |p: f64| (0.0..1.0).contains(&p);
        let bad = |m: String| Err(MarginError::InvalidParameter(m));
        match *self {
            Self::Thm2 { alpha } | Self::CoAlphaLhs { alpha } if !alpha_ok(alpha) => {
                bad(format!("alpha = {alpha} out of (1,2]"))
            }
            Self::Thm4 { p, .. } | Self::ReM { p } if !p_ok(p) => bad(format!("p = {p} out of [0,1)")),
            Self::Thm4 { a: Some(a), .. } if !(0.0..=1.0).contains(&a) => bad(format!("a = {a} out of [0,1]")),
            _ => Ok(()),
        }
    }

    /// Theorems for Co-type classes exclude a neighbourhood of `z = 1`.
    pub fn excludes_boundary_point(&self) -> bool {
        matches!(self, Self::Thm1 | Self::Thm2 { .. } | Self::CoAlphaLhs { .. })
    }

    /// Theorems whose ingredients have removable limits at a pole at 0.
    fn has_origin_limit(&self) -> bool {
        !self.excludes_boundary_point()
    }

    fn resolve(&self, spec: &FamilySpec) -> Result<Self, MarginError> {
        self.validate()?;
        Ok(match *self {
            Self::Thm4 { p, a: None } => Self::Thm4 { p, a: Some(a_p_of(spec, p)?) },
            other => other,
        })
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Thm1 => write!(f, "thm1"),
            Self::Thm2 { alpha } => write!(f, "thm2:alpha={alpha}"),
            Self::Co0 => write!(f, "co0"),
            Self::Thm3 => write!(f, "thm3"),
            Self::Corollary => write!(f, "corollary"),
            Self::Thm4 { p, a: None } => write!(f, "thm4:p={p}"),
            Self::Thm4 { p, a: Some(a) } => write!(f, "thm4:p={p},a={a}"),
            Self::CoAlphaLhs { alpha } => write!(f, "co_alpha_lhs:alpha={alpha}"),
            Self::ReM { p } => write!(f, "reM:p={p}"),
        }
    }
}

/// Splits `name:key=value,key=value` into the name and keyed reals.
type Keyed<'a> = (&'a str, Vec<(&'a str, f64)>);

fn parse_keyed(text: &str) -> Result<Keyed<'_>, MarginError> {
    let perr = |error: ParseError| MarginError::Parse { text: text.to_string(), error };
    let (name, rest, offset) = match text.find(':') {
        Some(k) => (&text[..k], &text[k + 1..], k + 1),
        None => (text, "", text.len()),
    };
    let mut out = Vec::new();
    let mut pos = offset;
    if !rest.is_empty() {
        for item in rest.split([',', ';']) {
            let Some(eq) = item.find('=') else {
                return Err(perr(ParseError { pos, message: format!("expected key=value, found '{item}'") }));
            };
            out.push((item[..eq].trim(), parse_real(&item[eq + 1..], pos + eq + 1).map_err(perr)?));
            pos += item.len() + 1;
        }
    }
    Ok((name.trim(), out))
}

fn keyed_lookup(
    text: &str,
    mut items: Vec<(&str, f64)>,
    required: &[&str],
    optional: &[&str],
) -> Result<Vec<Option<f64>>, MarginError> {
    let mut values = Vec::new();
    for key in required.iter().chain(optional) {
        let found = items.iter().position(|(k, _)| k == key).map(|i| items.remove(i).1);
        if found.is_none() && required.contains(key) {
            return Err(MarginError::InvalidParameter(format!("'{text}': missing parameter '{key}'")));
        }
        values.push(found);
    }
    if let Some((k, _)) = items.first() {
        return Err(MarginError::InvalidParameter(format!("'{text}': unknown parameter '{k}'")));
    }
    Ok(values)
}

impl FromStr for Theorem {
    type Err = MarginError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (name, items) = parse_keyed(text)?;
        let th = match name {
            "thm1" | "co0" | "thm3" | "corollary" => {
                keyed_lookup(text, items, &[], &[])?;
                match name {
                    "thm1" => Self::Thm1,
                    "co0" => Self::Co0,
                    "thm3" => Self::Thm3,
                    _ => Self::Corollary,
                }
            }
            "thm2" => Self::Thm2 { alpha: keyed_lookup(text, items, &["alpha"], &[])?[0].unwrap() },
            "co_alpha_lhs" => Self::CoAlphaLhs { alpha: keyed_lookup(text, items, &["alpha"], &[])?[0].unwrap() },
            "reM" => Self::ReM { p: keyed_lookup(text, items, &["p"], &[])?[0].unwrap() },
            "thm4" => {
                let v = keyed_lookup(text, items, &["p"], &["a"])?;
                Self::Thm4 { p: v[0].unwrap(), a: v[1] }
            }
            other => return Err(MarginError::InvalidParameter(format!("unknown theorem '{other}'"))),
        };
        th.validate()?;
        Ok(th)
    }
}

/// `2|A_f|² - |Sf|(1-|z|²)² - 2`.
pub fn thm1_margin(pt: &OperatorPoint) -> f64 {
    2.0 * a_f(pt).norm_sqr() - operators::schwarzian_norm(pt) - 2.0
}

/// `co_alpha_lhs - |f''/f' - (α+1)/(1-z)|²(1-|z|²)/(2(α-1))`.
pub fn thm2_margin(pt: &OperatorPoint, alpha: f64) -> Result<f64, MarginError> {
    let lhs = co_alpha_lhs(pt, alpha)?;
    let z = pt.z();
    let d = pt.pre_schwarzian() - (alpha + 1.0) / (1.0 - z);
    Ok(lhs - d.norm_sqr() * (1.0 - z.norm_sqr()) / (2.0 * (alpha - 1.0)))
}

fn co0_from(r2: f64, z_pre: Complex64) -> f64 {
    -(1.0 + z_pre).re - (1.0 - r2) * (1.0 + r2) / 4.0 * z_pre.norm_sqr()
}

fn corollary_from(r2: f64, schwarzian: Complex64) -> f64 {
    let w = 1.0 - r2;
    6.0 - schwarzian.norm() * w * w
}

fn thm3_from(r2: f64, schwarzian: Complex64, phi3: Complex64, big_phi: Complex64) -> f64 {
    let k = 2.0 * (2.0 * phi3.norm() + 1.0);
    let w = 1.0 - r2;
    k - k * big_phi.norm_sqr() - schwarzian.norm() * w * w
}

fn thm4_from(r2: f64, z_pre: Complex64, q: Complex64, a: f64) -> f64 {
    let r = r2.sqrt();
    let coeff = (1.0 - r2) * (1.0 + 2.0 * a * r + r2) / (4.0 * (1.0 + a * r) * (1.0 + a * r));
    let s = z_pre + q;
    -(1.0 + s).re - coeff * s.norm_sqr()
}

/// `-Re{1 + z f''/f'} - ¼(1-|z|⁴)|z f''/f'|²`.
pub fn co0_margin(pt: &OperatorPoint) -> f64 {
    co0_from(pt.z().norm_sqr(), pt.z_pre())
}

/// `2(2|φ₃|+1)(1 - |Φ|²) - |Sf|(1-|z|²)²`, expanded as two terms.
pub fn thm3_margin(pt: &OperatorPoint) -> Result<f64, MarginError> {
    let (phi3, big_phi) = thm3_phis(pt)?;
    Ok(thm3_from(pt.z().norm_sqr(), pt.schwarzian(), phi3, big_phi))
}

/// `6 - |Sf|(1-|z|²)²`.
pub fn corollary_check(pt: &OperatorPoint) -> f64 {
    corollary_from(pt.z().norm_sqr(), pt.schwarzian())
}

/// `-Re{1 + z f''/f' + q} - (1-|z|²)(1+2a|z|+|z|²)/(4(1+a|z|)²) |z f''/f' + q|²`.
pub fn thm4_margin(pt: &OperatorPoint, p: f64, a: f64) -> Result<f64, MarginError> {
    Ok(thm4_from(pt.z().norm_sqr(), pt.z_pre(), q_term(p, pt.z())?, a))
}

/// `-Re M`.
pub fn re_m_margin(pt: &OperatorPoint, p: f64) -> Result<f64, MarginError> {
    Ok(-operators::m_operator(pt, p)?.re)
}

fn margin_from_point(pt: &OperatorPoint, th: &Theorem) -> Result<f64, MarginError> {
    match *th {
        Theorem::Thm1 => Ok(thm1_margin(pt)),
        Theorem::Thm2 { alpha } => thm2_margin(pt, alpha),
        Theorem::Co0 => Ok(co0_margin(pt)),
        Theorem::Thm3 => thm3_margin(pt),
        Theorem::Corollary => Ok(corollary_check(pt)),
        Theorem::Thm4 { p, a } => thm4_margin(pt, p, a.unwrap_or(0.0)),
        Theorem::CoAlphaLhs { alpha } => Ok(co_alpha_lhs(pt, alpha)?),
        Theorem::ReM { p } => re_m_margin(pt, p),
    }
}

/// Margin at the origin from the removable limits of its ingredients,
/// for functions with a pole at 0.
fn margin_from_origin(o: &OriginValues, th: &Theorem) -> Result<f64, MarginError> {
    let zero = Complex64::new(0.0, 0.0);
    match *th {
        Theorem::Co0 => Ok(co0_from(0.0, o.z_pre)),
        Theorem::Thm3 => Ok(thm3_from(0.0, o.schwarzian, o.phi3, zero)),
        Theorem::Corollary => Ok(corollary_from(0.0, o.schwarzian)),
        Theorem::Thm4 { p, a } => Ok(thm4_from(0.0, o.z_pre, q_term(p, zero)?, a.unwrap_or(0.0))),
        Theorem::ReM { p } => Ok(-(1.0 + o.z_pre + q_term(p, zero)?).re),
        _ => Err(MarginError::InvalidParameter(format!("{th} has no limit at a pole"))),
    }
}

fn pole_at_origin(spec: &FamilySpec) -> bool {
    spec.interior_pole() == Some(0.0)
}

/// Evaluates a resolved theorem at one sample, or `None` when the sample
/// falls in an exclusion zone or is numerically indeterminate.
fn sample_margin(
    spec: &FamilySpec,
    th: &Theorem,
    z: Complex64,
    eps: f64,
    origin: &Option<Result<OriginValues, OperatorError>>,
) -> Option<f64> {
    if th.excludes_boundary_point() && (z - 1.0).norm() < eps * (1.0 - EXCLUSION_SLACK) {
        return None;
    }
    let v = if z == Complex64::new(0.0, 0.0) && th.has_origin_limit() && pole_at_origin(spec) {
        let o = origin.as_ref()?.as_ref().ok()?;
        margin_from_origin(o, th).ok()?
    } else {
        let jet = spec.eval_jet_excluding(z, eps).ok()?;
        let pt = OperatorPoint::new(jet).ok()?;
        margin_from_point(&pt, th).ok()?
    };
    v.is_finite().then_some(v)
}

/// Margin of `theorem` for `spec` at a single point, evaluated exactly as a
/// scan would (including removable limits at a pole at the origin).
pub fn evaluate(spec: &FamilySpec, theorem: &Theorem, z: Complex64, eps: f64) -> Result<f64, MarginError> {
    let th = theorem.resolve(spec)?;
    if z == Complex64::new(0.0, 0.0) && th.has_origin_limit() && pole_at_origin(spec) {
        return margin_from_origin(&origin_values(spec)?, &th);
    }
    if th.excludes_boundary_point() && (z - 1.0).norm() < eps * (1.0 - EXCLUSION_SLACK) {
        return Err(OperatorError::PoleProximity { z, pole: 1.0 }.into());
    }
    let pt = OperatorPoint::new(spec.eval_jet_excluding(z, eps)?)?;
    margin_from_point(&pt, &th)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "member-consistent")]
    MemberConsistent,
    #[serde(rename = "violation")]
    Violation,
}

impl Verdict {
    pub fn is_consistent(self) -> bool {
        self == Self::MemberConsistent
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MemberConsistent => "member-consistent",
            Self::Violation => "violation",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginSample {
    pub z: Complex64,
    /// `None` for excluded samples.
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginReport {
    pub function: String,
    pub theorem: String,
    pub grid: GridConfig,
    pub samples_used: usize,
    pub samples_excluded: usize,
    pub min_margin: f64,
    pub argmin_z: JsonComplex,
    pub verdict: Verdict,
    #[serde(skip)]
    pub samples: Vec<MarginSample>,
}

impl MarginReport {
    /// Used samples with their margins.
    pub fn used(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.samples.iter().filter_map(|s| s.margin.map(|m| (s.z, m)))
    }
}

/// First strict minimum in sample order.
fn ordered_min(values: impl Iterator<Item = (Complex64, f64)>) -> Option<(Complex64, f64)> {
    values.fold(None, |best, (z, v)| match best {
        Some((_, b)) if v >= b => best,
        _ => Some((z, v)),
    })
}

/// Evaluates `theorem` at every admissible grid point.
pub fn scan(spec: &FamilySpec, theorem: &Theorem, grid: &GridConfig) -> Result<MarginReport, MarginError> {
    grid.validate()?;
    spec.validate()?;
    let th = theorem.resolve(spec)?;
    let origin = (grid.include_center && th.has_origin_limit() && pole_at_origin(spec)).then(|| origin_values(spec));
    let points = grid.points();
    let margins: Vec<Option<f64>> =
        points.par_iter().map(|&z| sample_margin(spec, &th, z, grid.exclusion_radius, &origin)).collect();
    let samples: Vec<MarginSample> =
        points.iter().zip(&margins).map(|(&z, &margin)| MarginSample { z, margin }).collect();
    let used = samples.iter().filter(|s| s.margin.is_some()).count();
    let (argmin, min) = ordered_min(samples.iter().filter_map(|s| s.margin.map(|m| (s.z, m))))
        .ok_or_else(|| MarginError::EmptyScan { theorem: th.to_string() })?;
    let verdict = if min >= -grid.margin_tol { Verdict::MemberConsistent } else { Verdict::Violation };
    Ok(MarginReport {
        function: spec.to_string(),
        theorem: th.to_string(),
        grid: grid.clone(),
        samples_used: used,
        samples_excluded: samples.len() - used,
        min_margin: min,
        argmin_z: argmin.into(),
        verdict,
        samples,
    })
}

/// Extremes of a real quantity over the admissible grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantityRange {
    pub min: f64,
    pub argmin: JsonComplex,
    pub max: f64,
    pub argmax: JsonComplex,
    pub samples_used: usize,
}

/// Grid extremes of `g`, skipping excluded or indeterminate samples.
/// `exclude_one` adds the exclusion disk around `z = 1`.
pub fn scan_quantity<G>(
    spec: &FamilySpec,
    grid: &GridConfig,
    exclude_one: bool,
    g: G,
) -> Result<QuantityRange, MarginError>
where
    G: Fn(&OperatorPoint) -> Result<f64, OperatorError> + Sync,
{
    grid.validate()?;
    let eps = grid.exclusion_radius;
    let points = grid.points();
    let values: Vec<Option<f64>> = points
        .par_iter()
        .map(|&z| {
            if exclude_one && (z - 1.0).norm() < eps * (1.0 - EXCLUSION_SLACK) {
                return None;
            }
            let pt = OperatorPoint::new(spec.eval_jet_excluding(z, eps).ok()?).ok()?;
            g(&pt).ok().filter(|v| v.is_finite())
        })
        .collect();
    let used: Vec<(Complex64, f64)> = points.iter().zip(&values).filter_map(|(&z, v)| v.map(|v| (z, v))).collect();
    let empty = || MarginError::EmptyScan { theorem: "quantity".into() };
    let (argmin, min) = ordered_min(used.iter().copied()).ok_or_else(empty)?;
    let (argmax, neg_max) = ordered_min(used.iter().map(|&(z, v)| (z, -v))).ok_or_else(empty)?;
    Ok(QuantityRange { min, argmin: argmin.into(), max: -neg_max, argmax: argmax.into(), samples_used: used.len() })
}

/// Grid infimum and supremum of `|A_f|`, away from `z = 1` and poles.
pub fn estimate_order(spec: &FamilySpec, grid: &GridConfig) -> Result<(f64, f64), MarginError> {
    let r = scan_quantity(spec, grid, true, |pt| Ok(a_f(pt).norm()))?;
    Ok((r.min, r.max))
}

/// Radii of the radial difference quotients behind the `φ'(1)` estimate.
pub const PHI_PRIME_RADII: [f64; 3] = [0.99, 0.999, 0.9999];

/// Estimate of `φ'(1)` for `φ = z + 2f'/f''`: the quotients
/// `(φ(r)-1)/(r-1)` at [`PHI_PRIME_RADII`] extrapolated linearly in `1-r`.
pub fn phi_prime_at_one(spec: &FamilySpec) -> Result<f64, MarginError> {
    let mut d = [0.0; 3];
    for (k, &r) in PHI_PRIME_RADII.iter().enumerate() {
        let pt = OperatorPoint::from_spec(spec, Complex64::new(r, 0.0))?;
        d[k] = ((phi_of(&pt)? - 1.0) / (r - 1.0)).re;
    }
    let (h1, h2) = (1.0 - PHI_PRIME_RADII[1], 1.0 - PHI_PRIME_RADII[2]);
    Ok(d[2] - (d[1] - d[2]) * h2 / (h1 - h2))
}

/// Accepted window for the `φ'(1)` estimate.
pub const PHI_PRIME_WINDOW: (f64, f64) = (-0.05, 1.0 / 3.0 + 0.05);

/// Class-membership target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassSpec {
    Co,
    CoAlpha(f64),
    Co0,
    CoP(f64),
}

impl ClassSpec {
    pub fn validate(&self) -> Result<(), MarginError> {
        match *self {
            Self::CoAlpha(alpha) if !(alpha > 1.0 && alpha <= 2.0) => {
                Err(MarginError::InvalidParameter(format!("alpha = {alpha} out of (1,2]")))
            }
            Self::CoP(p) if !(0.0..1.0).contains(&p) => {
                Err(MarginError::InvalidParameter(format!("p = {p} out of [0,1)")))
            }
            _ => Ok(()),
        }
    }

    /// Expected interior pole location, `None` for boundary-pole classes.
    pub fn pole(&self) -> Option<f64> {
        match *self {
            Self::Co | Self::CoAlpha(_) => None,
            Self::Co0 => Some(0.0),
            Self::CoP(p) => Some(p),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Co => write!(f, "co"),
            Self::CoAlpha(alpha) => write!(f, "coalpha:alpha={alpha}"),
            Self::Co0 => write!(f, "co0"),
            Self::CoP(p) => write!(f, "cop:p={p}"),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = MarginError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (name, items) = parse_keyed(text)?;
        let cls = match name {
            "co" => {
                keyed_lookup(text, items, &[], &[])?;
                Self::Co
            }
            "co0" => {
                keyed_lookup(text, items, &[], &[])?;
                Self::Co0
            }
            "coalpha" => Self::CoAlpha(keyed_lookup(text, items, &["alpha"], &[])?[0].unwrap()),
            "cop" => Self::CoP(keyed_lookup(text, items, &["p"], &[])?[0].unwrap()),
            other => return Err(MarginError::InvalidParameter(format!("unknown class '{other}'"))),
        };
        cls.validate()?;
        Ok(cls)
    }
}

/// A scalar condition checked alongside the margin scans.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarCheck {
    pub name: String,
    pub value: f64,
    pub requirement: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub function: String,
    pub class: String,
    pub verdict: Verdict,
    pub reports: Vec<MarginReport>,
    pub checks: Vec<ScalarCheck>,
    pub warnings: Vec<String>,
}

/// Runs every margin scan and scalar check relevant to `cls`.
pub fn classify(spec: &FamilySpec, cls: &ClassSpec, grid: &GridConfig) -> Result<Classification, MarginError> {
    cls.validate()?;
    grid.validate()?;
    spec.validate()?;
    let mut reports = Vec::new();
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    match *cls {
        ClassSpec::Co => {
            reports.push(scan(spec, &Theorem::Thm1, grid)?);
            let (inf, _) = estimate_order(spec, grid)?;
            checks.push(ScalarCheck {
                name: "inf |A_f|".into(),
                value: inf,
                requirement: format!(">= 1 - {}", grid.margin_tol),
                passed: inf >= 1.0 - grid.margin_tol,
            });
            if spec.has_boundary_pole() {
                match phi_prime_at_one(spec) {
                    Ok(v) if v < PHI_PRIME_WINDOW.0 || v > PHI_PRIME_WINDOW.1 => {
                        warnings.push(format!("phi'(1) estimate {v} outside [0, 1/3]"))
                    }
                    Ok(_) => {}
                    Err(e) => warnings.push(format!("phi'(1) estimate unavailable: {e}")),
                }
            }
        }
        ClassSpec::CoAlpha(alpha) => {
            reports.push(scan(spec, &Theorem::CoAlphaLhs { alpha }, grid)?);
            reports.push(scan(spec, &Theorem::Thm2 { alpha }, grid)?);
        }
        ClassSpec::Co0 | ClassSpec::CoP(_) => {
            let p = cls.pole().unwrap_or(0.0);
            let pole_ok = spec.interior_pole().is_some_and(|q| (q - p).abs() <= 1e-12);
            checks.push(ScalarCheck {
                name: "pole location".into(),
                value: spec.interior_pole().unwrap_or(f64::NAN),
                requirement: format!("= {p}"),
                passed: pole_ok,
            });
            reports.push(scan(spec, &Theorem::ReM { p }, grid)?);
            if *cls == ClassSpec::Co0 {
                reports.push(scan(spec, &Theorem::Co0, grid)?);
                reports.push(scan(spec, &Theorem::Thm3, grid)?);
                reports.push(scan(spec, &Theorem::Corollary, grid)?);
            } else {
                let a = a_p_of(spec, p)?;
                checks.push(ScalarCheck {
                    name: "|varphi_p(0)|".into(),
                    value: a,
                    requirement: format!("<= 1 + {SCHWARZ_BOUND_TOL}"),
                    passed: a <= 1.0 + SCHWARZ_BOUND_TOL,
                });
                reports.push(scan(spec, &Theorem::Thm4 { p, a: Some(a.min(1.0)) }, grid)?);
            }
        }
    }
    let ok = reports.iter().all(|r| r.verdict.is_consistent()) && checks.iter().all(|c| c.passed);
    Ok(Classification {
        function: spec.to_string(),
        class: cls.to_string(),
        verdict: if ok { Verdict::MemberConsistent } else { Verdict::Violation },
        reports,
        checks,
        warnings,
    })
}
