//! Formula-free check of omitted-set convexity through the discrete turning
//! of boundary image curves `θ ↦ f(r e^{iθ})`, plus equality-locus search.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{CatalogError, FamilySpec, DEFAULT_EXCLUSION};
use crate::margins::{ring_point, scan, GridConfig, MarginError, Theorem};
use crate::report::JsonComplex;

/// Largest accepted defect at the outermost radius.
pub const DEFECT_TOL: f64 = 5e-2;
/// Slack allowed when checking that defects do not grow as `r → 1`.
pub const MONOTONE_SLACK: f64 = 1e-12;
/// Points per curve used by [`oracle_concave`].
pub const ORACLE_POINTS: usize = 4096;
/// Radii used by [`oracle_concave`] when none are given.
pub const ORACLE_RADII: [f64; 3] = [0.99, 0.999, 0.9999];
/// Default tolerance of [`equality_scan`].
pub const DEFAULT_EQ_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid curve parameters: {0}")]
    InvalidParameter(String),
    #[error("every angle of the curve at r = {r} was excluded")]
    AllExcluded { r: f64 },
    #[error("curve has fewer than 3 distinct usable points")]
    Degenerate,
    #[error(transparent)]
    Margin(#[from] MarginError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub theta: f64,
    /// `None` inside an excluded arc.
    pub w: Option<Complex64>,
}

/// Image of the circle `|z| = r` sampled at `n` uniform angles.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub r: f64,
    pub samples: Vec<CurvePoint>,
    /// Maximal runs of excluded angles as `(first θ, last θ)`.
    pub excluded_arcs: Vec<(f64, f64)>,
}

impl CurveSample {
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().filter_map(|s| s.w)
    }
}

/// Samples `f(r e^{2πij/n})`, `j = 0..n`, with the default exclusion radius.
pub fn boundary_curve(spec: &FamilySpec, r: f64, n: usize) -> Result<CurveSample, OracleError> {
    boundary_curve_with(spec, r, n, DEFAULT_EXCLUSION)
}

/// As [`boundary_curve`]. Angles with `|e^{iθ} - s| < eps` for a boundary
/// singularity `s`, or `|z - s| < eps` for an interior one, are excluded, as
/// are angles where evaluation fails.
pub fn boundary_curve_with(spec: &FamilySpec, r: f64, n: usize, eps: f64) -> Result<CurveSample, OracleError> {
    if !(r > 0.0 && r < 1.0) {
        return Err(OracleError::InvalidParameter(format!("r = {r} out of (0,1)")));
    }
    if n < 64 {
        return Err(OracleError::InvalidParameter(format!("n = {n} < 64")));
    }
    if !(eps > 0.0) {
        return Err(OracleError::InvalidParameter("epsilon must be positive".into()));
    }
    let singularities = spec.singularities();
    let samples: Vec<CurvePoint> = (0..n)
        .into_par_iter()
        .map(|j| {
            let theta = TAU * j as f64 / n as f64;
            let z = ring_point(r, j, n);
            let unit = ring_point(1.0, j, n);
            let near = singularities.iter().any(|s| {
                let d = if s.norm() >= 1.0 - 1e-12 { (unit - s).norm() } else { (z - s).norm() };
                d < eps
            });
            let w = if near { None } else { spec.eval_jet(z).ok().map(|j| j.value()).filter(|w| w.is_finite()) };
            CurvePoint { theta, w }
        })
        .collect();
    if samples.iter().all(|s| s.w.is_none()) {
        return Err(OracleError::AllExcluded { r });
    }
    let mut excluded_arcs = Vec::new();
    let mut start: Option<f64> = None;
    for (k, s) in samples.iter().enumerate() {
        match (s.w, start) {
            (None, None) => start = Some(s.theta),
            (Some(_), Some(a)) => {
                excluded_arcs.push((a, samples[k - 1].theta));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(a) = start {
        excluded_arcs.push((a, samples[n - 1].theta));
    }
    Ok(CurveSample { r, samples, excluded_arcs })
}

/// Where the omitted set lies relative to the image curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// Interior pole: the bounded omitted set is enclosed by the curve.
    #[serde(rename = "complement-inside")]
    ComplementInside,
    /// Boundary pole: the unbounded omitted set lies outside the curve.
    #[serde(rename = "complement-outside")]
    ComplementOutside,
}

/// Slack on the right-turn bound for open boundary-pole arcs.
pub const ARC_TURN_SLACK: f64 = 0.1;

/// Turning analysis of one curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Defect {
    /// Sum of left (positive) turns at vertices whose both edges are curve
    /// edges. A convex omitted set forces every such turn to the right.
    pub defect: f64,
    /// Sum of the magnitudes of right turns at the same vertices.
    pub right_turns: f64,
    /// Total turning of the closed polygon (chords bridge excluded arcs)
    /// divided by `2π`, rounded.
    pub turning_number: i64,
    /// True when no angle was excluded.
    pub closed: bool,
    /// Whether the curve winds as the declared orientation requires.
    pub orientation_ok: bool,
}

/// Discrete convexity defect of `curve` for the declared orientation.
///
/// Consecutive points closer than `1e-14` relative to the curve scale are
/// collapsed first. With the image domain on the left of the traversal, a
/// convex omitted set makes the curve bend right everywhere, so the defect
/// counts left turns in both orientations. The orientation decides how the
/// curve must wind:
/// - complement inside: the closed polygon has turning number -1;
/// - complement outside: the curve is split by an excluded arc around the
///   boundary pole and its right turns total at most `π` (a convex unbounded
///   set is bounded by an arc turning at most a half-turn). A closed curve
///   bounds a bounded image, whose complement is never convex.
pub fn convexity_defect(curve: &CurveSample, orientation: Orientation) -> Result<Defect, OracleError> {
    let mut d = turning(curve)?;
    d.orientation_ok = match orientation {
        Orientation::ComplementInside => d.turning_number == -1,
        Orientation::ComplementOutside => !d.closed && d.right_turns <= std::f64::consts::PI + ARC_TURN_SLACK,
    };
    Ok(d)
}

/// Turn totals of a curve, with `orientation_ok` left false.
pub fn turning(curve: &CurveSample) -> Result<Defect, OracleError> {
    // (point, edge into this point bridges an excluded arc)
    let mut pts: Vec<(Complex64, bool)> = Vec::new();
    let scale = curve.points().map(|w| w.norm()).fold(0.0, f64::max).max(1.0);
    let mut gap = false;
    for s in &curve.samples {
        match s.w {
            None => gap = true,
            Some(w) => {
                if let Some(&(last, _)) = pts.last() {
                    if (w - last).norm() <= 1e-14 * scale {
                        continue;
                    }
                }
                pts.push((w, gap));
                gap = false;
            }
        }
    }
    // closing edge from the last point back to the first
    if let (Some(&(first, _)), Some(&(last, _))) = (pts.first(), pts.last()) {
        if pts.len() > 1 && (first - last).norm() <= 1e-14 * scale {
            pts.pop();
        }
    }
    let wraps_gap = curve.samples.first().is_some_and(|s| s.w.is_none())
        || curve.samples.last().is_some_and(|s| s.w.is_none());
    if let Some(first) = pts.first_mut() {
        first.1 |= wraps_gap;
    }
    let m = pts.len();
    if m < 3 {
        return Err(OracleError::Degenerate);
    }
    let mut total = 0.0;
    let mut defect = 0.0;
    let mut right_turns = 0.0;
    for k in 0..m {
        let (prev, _) = pts[(k + m - 1) % m];
        let (cur, bridged_in) = pts[k];
        let (next, bridged_out) = pts[(k + 1) % m];
        let e1 = cur - prev;
        let e2 = next - cur;
        let turn = (e1.re * e2.im - e1.im * e2.re).atan2(e1.re * e2.re + e1.im * e2.im);
        total += turn;
        if !bridged_in && !bridged_out {
            if turn > 0.0 {
                defect += turn;
            } else {
                right_turns -= turn;
            }
        }
    }
    Ok(Defect {
        defect,
        right_turns,
        turning_number: (total / TAU).round() as i64,
        closed: curve.excluded_arcs.is_empty(),
        orientation_ok: false,
    })
}

/// Placement of the pole of the map being tested.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PolePlacement {
    #[serde(rename = "interior")]
    Interior(f64),
    #[serde(rename = "boundary")]
    Boundary,
}

impl PolePlacement {
    pub fn orientation(self) -> Orientation {
        match self {
            Self::Interior(_) => Orientation::ComplementInside,
            Self::Boundary => Orientation::ComplementOutside,
        }
    }

    /// Natural placement for a spec: its interior pole if any, else the
    /// boundary point 1.
    pub fn of(spec: &FamilySpec) -> Self {
        spec.interior_pole().map_or(Self::Boundary, Self::Interior)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleVerdict {
    #[serde(rename = "concave-consistent")]
    ConcaveConsistent,
    #[serde(rename = "not-concave")]
    NotConcave,
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ConcaveConsistent => "concave-consistent",
            Self::NotConcave => "not-concave",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub function: String,
    pub orientation: Orientation,
    pub radii: Vec<f64>,
    pub points: usize,
    pub defects: Vec<f64>,
    pub turning_numbers: Vec<i64>,
    pub orientation_ok: Vec<bool>,
    pub verdict: OracleVerdict,
}

/// Concave-consistent iff at every radius the curve winds as the pole
/// placement requires (see [`convexity_defect`]), the defects do not increase as `r → 1`,
/// and the defect at the largest radius is below [`DEFECT_TOL`].
pub fn oracle_concave(spec: &FamilySpec, pole: PolePlacement, r_list: &[f64]) -> Result<OracleReport, OracleError> {
    if r_list.is_empty() {
        return Err(OracleError::InvalidParameter("empty radius list".into()));
    }
    let mut radii = r_list.to_vec();
    radii.sort_by(f64::total_cmp);
    let orientation = pole.orientation();
    let mut defects = Vec::new();
    let mut turning_numbers = Vec::new();
    let mut orientation_ok = Vec::new();
    for &r in &radii {
        let d = convexity_defect(&boundary_curve(spec, r, ORACLE_POINTS)?, orientation)?;
        defects.push(d.defect);
        turning_numbers.push(d.turning_number);
        orientation_ok.push(d.orientation_ok);
    }
    let winding_ok = orientation_ok.iter().all(|&ok| ok);
    let monotone = defects.windows(2).all(|w| w[1] <= w[0] + MONOTONE_SLACK);
    let small = defects.last().is_some_and(|&d| d < DEFECT_TOL);
    let verdict =
        if winding_ok && monotone && small { OracleVerdict::ConcaveConsistent } else { OracleVerdict::NotConcave };
    Ok(OracleReport {
        function: spec.to_string(),
        orientation,
        radii,
        points: ORACLE_POINTS,
        defects,
        turning_numbers,
        orientation_ok,
        verdict,
    })
}

/// Grid points where `|margin| < eq_tol`, in grid order.
pub fn equality_scan(
    spec: &FamilySpec,
    theorem: &Theorem,
    grid: &GridConfig,
    eq_tol: f64,
) -> Result<Vec<Complex64>, OracleError> {
    let report = scan(spec, theorem, grid)?;
    Ok(report.used().filter(|(_, m)| m.abs() < eq_tol).map(|(z, _)| z).collect())
}

/// Real parts where the kept polyline meets the real axis, sorted.
/// Edges bridging excluded arcs are skipped.
pub fn real_axis_crossings(curve: &CurveSample) -> Vec<f64> {
    let n = curve.samples.len();
    let mut out = Vec::new();
    for k in 0..n {
        let (Some(a), Some(b)) = (curve.samples[k].w, curve.samples[(k + 1) % n].w) else {
            continue;
        };
        if a.im == 0.0 {
            out.push(a.re);
        } else if a.im * b.im < 0.0 {
            let t = a.im / (a.im - b.im);
            out.push(a.re + t * (b.re - a.re));
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Summary of a curve for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSummary {
    pub r: f64,
    pub points: usize,
    pub excluded: usize,
    pub excluded_arcs: Vec<(f64, f64)>,
    pub first: JsonComplex,
}

impl From<&CurveSample> for CurveSummary {
    fn from(c: &CurveSample) -> Self {
        let first = c.points().next().unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        Self {
            r: c.r,
            points: c.samples.len(),
            excluded: c.samples.iter().filter(|s| s.w.is_none()).count(),
            excluded_arcs: c.excluded_arcs.clone(),
            first: first.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn curve_excludes_boundary_pole_arc() {
        let c = boundary_curve(&FamilySpec::HalfPlane, 0.99, 1024).unwrap();
        assert_eq!(c.samples.len(), 1024);
        assert_eq!(c.excluded_arcs.len(), 2);
        assert_eq!(c.excluded_arcs[0].0, 0.0);
        assert!(c.samples[0].w.is_none());
        assert!(c.points().all(|w| w.re > -0.5));
        let c = boundary_curve(&FamilySpec::kp(0.5).unwrap(), 0.9999, 4096).unwrap();
        assert!(c.excluded_arcs.is_empty());
        assert!(boundary_curve(&FamilySpec::HalfPlane, 1.0, 1024).is_err());
        assert!(boundary_curve(&FamilySpec::HalfPlane, 0.5, 32).is_err());
    }

    #[test]
    fn cubic_curve_hugs_segment() {
        let c = boundary_curve(&FamilySpec::co0_cubic(cx(0.0, 0.0)), 0.999, 1024).unwrap();
        for (s, w) in c.samples.iter().zip(c.points()) {
            assert!((w - cx(2.0 * s.theta.cos(), 0.0)).norm() < 3e-3);
        }
    }

    #[test]
    fn defects_separate_members_from_identity() {
        let kp = boundary_curve(&FamilySpec::kp(0.5).unwrap(), 0.9999, 4096).unwrap();
        let d = convexity_defect(&kp, Orientation::ComplementInside).unwrap();
        assert!(d.defect < 1e-2);
        assert_eq!(d.turning_number, -1);
        let id = boundary_curve(&FamilySpec::identity(), 0.9, 4096).unwrap();
        let d = convexity_defect(&id, Orientation::ComplementOutside).unwrap();
        assert!(d.defect > 1.0);
        assert!(!d.orientation_ok);
        let d = convexity_defect(&id, Orientation::ComplementInside).unwrap();
        assert!(!d.orientation_ok);
        let h = boundary_curve(&FamilySpec::HalfPlane, 0.99, 4096).unwrap();
        let d = convexity_defect(&h, Orientation::ComplementOutside).unwrap();
        assert!(d.orientation_ok && d.defect < 1.0, "{d:?}");
    }

    #[test]
    fn oracle_examples() {
        let r = oracle_concave(&FamilySpec::kp(0.5).unwrap(), PolePlacement::Interior(0.5), &ORACLE_RADII).unwrap();
        assert_eq!(r.verdict, OracleVerdict::ConcaveConsistent, "{r:?}");
        let r = oracle_concave(&FamilySpec::koebe(), PolePlacement::Boundary, &ORACLE_RADII).unwrap();
        assert_eq!(r.verdict, OracleVerdict::ConcaveConsistent, "{r:?}");
        let taylor = FamilySpec::laurent(None, cx(0.0, 0.0), vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(0.3, 0.0)]).unwrap();
        let r = oracle_concave(&taylor, PolePlacement::Boundary, &ORACLE_RADII).unwrap();
        assert_eq!(r.verdict, OracleVerdict::NotConcave);
    }

    #[test]
    fn kp_crossings_match_segment() {
        let c = boundary_curve(&FamilySpec::kp(0.5).unwrap(), 0.9999, 4096).unwrap();
        let x = real_axis_crossings(&c);
        assert_eq!(x.len(), 2, "{x:?}");
        assert!((x[0] + 2.0).abs() < 1e-3 && (x[1] + 2.0 / 9.0).abs() < 1e-3);
    }

    #[test]
    fn equality_scan_half_plane_is_whole_grid() {
        let g = GridConfig::preset("fast").unwrap();
        let locus = equality_scan(&FamilySpec::HalfPlane, &Theorem::Thm1, &g, DEFAULT_EQ_TOL).unwrap();
        let report = scan(&FamilySpec::HalfPlane, &Theorem::Thm1, &g).unwrap();
        assert_eq!(locus.len(), report.samples_used);
    }
}
