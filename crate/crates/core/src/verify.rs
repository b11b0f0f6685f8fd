//! Self-check suite over the catalog: exact fixtures, equality cases,
//! oracle agreement, jet accuracy and Schwarz bounds.
//!
//! The suite is deterministic: random samples come from a fixed-seed
//! generator and every scan reduces in sample order.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{FamilySpec, DEFAULT_EXCLUSION};
use crate::jet::Jet3;
use crate::margins::{
    classify, co0_margin, estimate_order, evaluate, scan, scan_quantity, thm3_margin, thm4_margin, ClassSpec,
    Classification, GridConfig, MarginError, Theorem, Verdict,
};
use crate::operators::{origin_values, phi_of, thm3_phis, varphi_p, OperatorError, OperatorPoint};
use crate::oracle::{
    boundary_curve, equality_scan, oracle_concave, real_axis_crossings, OracleError, OracleReport, OracleVerdict,
    PolePlacement, DEFAULT_EQ_TOL, ORACLE_RADII,
};

/// Seed of every random sample drawn by the suite.
pub const SUITE_SEED: u64 = 0x5eed_c0ca_7e00_0001;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub values: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl CriterionResult {
    fn new(id: u32, name: &str) -> Self {
        Self { id, name: name.into(), passed: true, values: BTreeMap::new(), notes: Vec::new() }
    }

    fn value(&mut self, key: &str, v: f64) {
        self.values.insert(key.into(), v);
    }

    /// Records a condition; a false condition fails the criterion.
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    fn error(&mut self, e: impl std::fmt::Display) {
        self.passed = false;
        self.notes.push(format!("error: {e}"));
    }
}

/// One member or non-member control with its natural class.
#[derive(Debug, Clone, PartialEq)]
pub struct Control {
    pub spec: FamilySpec,
    pub class: ClassSpec,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlResult {
    pub function: String,
    pub class: String,
    pub expected_member: bool,
    pub classification: Classification,
    pub oracle: OracleReport,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub grid: GridConfig,
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub controls: Vec<ControlResult>,
    pub all_passed: bool,
}

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn parse(text: &str) -> FamilySpec {
    text.parse().unwrap_or_else(|e| panic!("built-in control '{text}' must parse: {e}"))
}

/// Catalog members and non-member controls used for oracle agreement.
pub fn controls() -> Vec<Control> {
    let c = |text: &str, class: ClassSpec, member: bool| Control { spec: parse(text), class, member };
    vec![
        c("halfplane", ClassSpec::Co, true),
        c("kalpha:alpha=1.5", ClassSpec::Co, true),
        c("koebe", ClassSpec::Co, true),
        c("anglemap:a=-0.5", ClassSpec::Co, true),
        c("anglemap:a=-0.5+0.3i", ClassSpec::Co, true),
        c("kp:p=0.2", ClassSpec::CoP(0.2), true),
        c("kp:p=0.5", ClassSpec::CoP(0.5), true),
        c("kp:p=0.8", ClassSpec::CoP(0.8), true),
        c("co0cubic:a0=0", ClassSpec::Co0, true),
        c("co0cubic:a0=0.3+0.2i", ClassSpec::Co0, true),
        c("laurent:p=0;res=1;b=[0,0.5]", ClassSpec::Co0, true),
        c("identity", ClassSpec::Co, false),
        c("laurent:b=[0,1,0.3]", ClassSpec::Co, false),
        c("dilated:rho=0.8;f=halfplane", ClassSpec::Co, false),
        c("laurent:p=0;res=1;b=[0,0,2]", ClassSpec::Co0, false),
        c("laurent:p=0;res=0.8;b=[0,1.25]", ClassSpec::Co0, false),
    ]
}

/// Closed-form `(f', f'', f''')` for families with elementary derivatives.
pub fn hand_derivatives(spec: &FamilySpec, z: Complex64) -> Option<[Complex64; 3]> {
    let one = cx(1.0, 0.0);
    match spec {
        FamilySpec::HalfPlane => {
            let w = one - z;
            Some([one / (w * w), 2.0 / (w * w * w), 6.0 / (w * w * w * w)])
        }
        FamilySpec::KAlpha { alpha } => {
            let alpha = *alpha;
            let s = one - z * z;
            let u = (one + z) / (one - z);
            let f1 = u.powf(alpha) / s;
            let g = (2.0 * alpha + 2.0 * z) / s;
            let dg = (2.0 + 2.0 * z * z + 4.0 * alpha * z) / (s * s);
            let f2 = f1 * g;
            Some([f1, f2, f2 * g + f1 * dg])
        }
        FamilySpec::Kp { p } => {
            let p = *p;
            let c = p / (1.0 - p * p);
            let ip = 1.0 / p;
            let term = |k: i32, fact: f64| {
                let a = (one - z * ip).powi(k + 1);
                let b = (one - z * p).powi(k + 1);
                c * fact * (ip.powi(k) / a - p.powi(k) / b)
            };
            Some([term(1, 1.0), term(2, 2.0), term(3, 6.0)])
        }
        FamilySpec::Co0Cubic { .. } => {
            let z2 = z * z;
            Some([one - one / z2, 2.0 / (z2 * z), -6.0 / (z2 * z2)])
        }
        _ => None,
    }
}

/// Branch-free closed forms `(f''/f', f'''/f')` for an angle map with
/// parameters `λ, b`.
pub fn angle_map_ratios(lambda: Complex64, b: f64, z: Complex64) -> [Complex64; 2] {
    let one = cx(1.0, 0.0);
    let (u, v) = (z - lambda, z - one);
    let pre = b / u - (b + 2.0) / v;
    [pre, -b / (u * u) + (b + 2.0) / (v * v) + pre * pre]
}

fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(f64::MIN_POSITIVE)
}

/// Uniform point of the disk `|z| < r_max` at least `gap` away from every
/// singularity of `spec`.
fn random_point(rng: &mut ChaCha8Rng, spec: &FamilySpec, r_max: f64, gap: f64) -> Complex64 {
    loop {
        let z = cx(rng.gen_range(-r_max..r_max), rng.gen_range(-r_max..r_max));
        if z.norm() < r_max && spec.nearest_singularity(z).is_none_or(|(_, d)| d > gap) {
            return z;
        }
    }
}

fn grid_point_margin(report: &crate::margins::MarginReport, z: Complex64) -> Option<f64> {
    report.used().find(|(w, _)| *w == z).map(|(_, m)| m)
}

fn criterion_1(grid: &GridConfig) -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(1, "equality of the concavity characterization at the half-plane map");
    let r = scan(&FamilySpec::HalfPlane, &Theorem::Thm1, grid)?;
    let (inf, sup) = estimate_order(&FamilySpec::HalfPlane, grid)?;
    c.value("min_margin", r.min_margin);
    c.value("inf_abs_a", inf);
    c.value("sup_abs_a", sup);
    c.require(r.min_margin.abs() <= 1e-9, "|min margin| <= 1e-9");
    c.require((inf - 1.0).abs() <= 1e-9 && (sup - 1.0).abs() <= 1e-9, "inf = sup = 1 within 1e-9");
    Ok(c)
}

fn criterion_2(grid: &GridConfig) -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(2, "rejection of the identity map");
    let r = scan(&FamilySpec::identity(), &Theorem::Thm1, grid)?;
    let at0 = grid_point_margin(&r, cx(0.0, 0.0));
    c.value("margin_at_0", at0.unwrap_or(f64::NAN));
    c.require(at0.is_some_and(|m| (m + 2.0).abs() <= 1e-12), "margin at 0 = -2 within 1e-12");
    c.require(r.verdict == Verdict::Violation, "verdict violation");
    Ok(c)
}

fn criterion_3(grid: &GridConfig) -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(3, "sharpness of the Schwarzian bound 6 at 1/z + z");
    let cubic = FamilySpec::co0_cubic(cx(0.0, 0.0));
    let s0 = origin_values(&cubic)?.schwarzian.norm();
    let r = scan(&cubic, &Theorem::Corollary, grid)?;
    let at0 = grid_point_margin(&r, cx(0.0, 0.0)).unwrap_or(f64::NAN);
    c.value("schwarzian_norm_at_0", s0);
    c.value("min_margin", r.min_margin);
    c.value("margin_at_0", at0);
    c.require((s0 - 6.0).abs() <= 1e-9, "|Sf(0)| = 6 within 1e-9");
    c.require(r.min_margin.abs() <= 1e-9, "grid minimum 0 within 1e-9");
    c.require((at0 - r.min_margin).abs() <= 1e-9, "minimum attained at z = 0");
    Ok(c)
}

fn criterion_4(grid: &GridConfig) -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(4, "equality locus of the Co(0) refinement on the real axis");
    let cubic = FamilySpec::co0_cubic(cx(0.0, 0.0));
    let m = co0_margin(&OperatorPoint::from_spec(&cubic, cx(0.5, 0.0))?);
    c.value("margin_at_0.5", m);
    c.require(m.abs() <= 1e-10, "margin at 0.5 = 0 within 1e-10");
    let locus = equality_scan(&cubic, &Theorem::Co0, grid, DEFAULT_EQ_TOL).map_err(|e| match e {
        OracleError::Margin(m) => m,
        other => MarginError::InvalidParameter(other.to_string()),
    })?;
    let report = scan(&cubic, &Theorem::Co0, grid)?;
    let axis: Vec<Complex64> = report.used().map(|(z, _)| z).filter(|z| z.im == 0.0).collect();
    let missing = axis.iter().filter(|z| !locus.contains(z)).count();
    c.value("real_axis_samples", axis.len() as f64);
    c.value("real_axis_missing", missing as f64);
    c.require(!axis.is_empty() && missing == 0, "every real-axis sample on the equality locus");
    Ok(c)
}

fn criterion_5() -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(5, "equality in the Schwarzian refinement for 1/z + z");
    let cubic = FamilySpec::co0_cubic(cx(0.0, 0.0));
    for (key, z) in [("margin_at_0.5", cx(0.5, 0.0)), ("margin_at_0.5i", cx(0.0, 0.5))] {
        let m = thm3_margin(&OperatorPoint::from_spec(&cubic, z)?)?;
        c.value(key, m);
        c.require(m.abs() <= 1e-9, format!("{key} = 0 within 1e-9"));
    }
    Ok(c)
}

fn criterion_6(grid: &GridConfig) -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(6, "equality of the Co(alpha) refinement at the origin");
    for alpha in [1.25, 1.5, 1.75, 2.0] {
        let spec = FamilySpec::k_alpha(alpha)?;
        let th = Theorem::Thm2 { alpha };
        let m0 = evaluate(&spec, &th, cx(0.0, 0.0), grid.exclusion_radius)?;
        let r = scan(&spec, &th, grid)?;
        c.value(&format!("alpha={alpha}:margin_at_0"), m0);
        c.value(&format!("alpha={alpha}:min_margin"), r.min_margin);
        c.require(m0.abs() <= 1e-10, format!("alpha={alpha}: margin at 0 within 1e-10"));
        c.require(r.min_margin >= -1e-7, format!("alpha={alpha}: min margin >= -1e-7"));
    }
    Ok(c)
}

fn criterion_7(grid: &GridConfig) -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(7, "Co(p) refinement: consistency, equality at 0 and reduction");
    for p in [0.2, 0.5, 0.8] {
        let spec = FamilySpec::kp(p)?;
        let th = Theorem::Thm4 { p, a: None };
        let r = scan(&spec, &th, grid)?;
        let m0 = evaluate(&spec, &th, cx(0.0, 0.0), grid.exclusion_radius)?;
        c.value(&format!("p={p}:min_margin"), r.min_margin);
        c.value(&format!("p={p}:margin_at_0"), m0);
        c.require(r.verdict.is_consistent(), format!("p={p}: scan consistent"));
        c.require(m0.abs() <= 1e-9, format!("p={p}: margin at 0 within 1e-9"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 7);
    let specs = [
        FamilySpec::co0_cubic(cx(0.0, 0.0)),
        parse("laurent:p=0;res=1;b=[0,0.5]"),
        parse("laurent:p=0;res=1;b=[0.1,0.2-0.1i,0.05i]"),
    ];
    let mut worst: f64 = 0.0;
    for k in 0..10_000 {
        let spec = &specs[k % specs.len()];
        let z = random_point(&mut rng, spec, 0.995, DEFAULT_EXCLUSION);
        let pt = OperatorPoint::from_spec(spec, z)?;
        worst = worst.max((thm4_margin(&pt, 0.0, 0.0)? - co0_margin(&pt)).abs());
    }
    c.value("reduction_max_abs_diff", worst);
    c.require(worst <= 1e-12, "p = 0, a = 0 reproduces the Co(0) margin within 1e-12");
    Ok(c)
}

fn criterion_8() -> Result<CriterionResult, OracleError> {
    let mut c = CriterionResult::new(8, "omitted segment of k_p from boundary-curve crossings");
    let curve = boundary_curve(&FamilySpec::kp(0.5)?, 0.9999, 4096)?;
    let x = real_axis_crossings(&curve);
    let (lo, hi) = (x.first().copied().unwrap_or(f64::NAN), x.last().copied().unwrap_or(f64::NAN));
    c.value("crossings", x.len() as f64);
    c.value("left", lo);
    c.value("right", hi);
    c.require((lo + 2.0).abs() <= 1e-3, "left end within 1e-3 of -2");
    c.require((hi + 2.0 / 9.0).abs() <= 1e-3, "right end within 1e-3 of -2/9");
    Ok(c)
}

fn run_control(control: &Control, grid: &GridConfig) -> Result<ControlResult, OracleError> {
    let classification = classify(&control.spec, &control.class, grid)?;
    let pole = match control.class.pole() {
        Some(p) => PolePlacement::Interior(p),
        None => PolePlacement::Boundary,
    };
    let oracle = oracle_concave(&control.spec, pole, &ORACLE_RADII)?;
    let agree = classification.verdict.is_consistent() == (oracle.verdict == OracleVerdict::ConcaveConsistent);
    Ok(ControlResult {
        function: control.spec.to_string(),
        class: control.class.to_string(),
        expected_member: control.member,
        classification,
        oracle,
        agree,
    })
}

fn criterion_9(results: &[ControlResult]) -> CriterionResult {
    let mut c = CriterionResult::new(9, "oracle and classifier agreement on members and controls");
    let agree = results.iter().filter(|r| r.agree).count();
    c.value("controls", results.len() as f64);
    c.value("agreement", agree as f64 / results.len().max(1) as f64);
    for r in results {
        c.require(r.agree, format!("{} ({}): classifier and oracle disagree", r.function, r.class));
        let consistent = r.classification.verdict.is_consistent();
        c.require(consistent == r.expected_member, format!("{} ({}): unexpected verdict", r.function, r.class));
    }
    c
}

fn criterion_10() -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(10, "jet derivatives against closed forms and Schwarzian invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 10);
    let families = [
        FamilySpec::HalfPlane,
        FamilySpec::koebe(),
        FamilySpec::k_alpha(1.5)?,
        FamilySpec::kp(0.5)?,
        FamilySpec::kp(0.2)?,
        FamilySpec::co0_cubic(cx(0.3, 0.2)),
    ];
    let mut worst: f64 = 0.0;
    for spec in &families {
        for _ in 0..100 {
            let z = random_point(&mut rng, spec, 0.95, DEFAULT_EXCLUSION);
            let jet = spec.eval_jet(z)?;
            let want = hand_derivatives(spec, z).expect("closed form exists");
            for (g, w) in [jet.d1(), jet.d2(), jet.d3()].into_iter().zip(want) {
                worst = worst.max(rel_err(g, w));
            }
        }
    }
    for a in [cx(-0.5, 0.0), cx(-0.5, 0.3), cx(-0.2, -0.6)] {
        let data = crate::catalog::AngleMapData::from_a(a)?;
        let spec = crate::catalog::make_angle_map(a, cx(1.0, 0.0), cx(0.0, 0.0))?;
        for _ in 0..100 {
            let z = random_point(&mut rng, &spec, 0.95, DEFAULT_EXCLUSION);
            let jet = spec.eval_jet(z)?;
            let want = angle_map_ratios(data.lambda, data.b, z);
            worst = worst.max(rel_err(jet.d2() / jet.d1(), want[0]));
            worst = worst.max(rel_err(jet.d3() / jet.d1(), want[1]));
        }
    }
    c.value("derivative_max_rel_err", worst);
    c.require(worst < 1e-12, "closed-form derivatives within 1e-12 relative");

    let pool = [
        FamilySpec::koebe(),
        FamilySpec::k_alpha(1.3)?,
        FamilySpec::kp(0.5)?,
        FamilySpec::co0_cubic(cx(0.0, 0.0)),
        parse("anglemap:a=-0.5+0.3i"),
        parse("laurent:b=[0,1,0.3]"),
    ];
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < 50 {
        let spec = &pool[done % pool.len()];
        let z = random_point(&mut rng, spec, 0.9, 0.1);
        let mut coef = || cx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (a, b, cc, d) = (coef(), coef(), coef(), coef());
        let det = a * d - b * cc;
        let jet = spec.eval_jet(z)?;
        let den = jet.value() * cc + d;
        if det.norm() < 1e-2 || cc.norm() < 1e-2 || den.norm() < 1e-2 {
            continue;
        }
        let g = mobius_after(&jet, a, b, cc, d)?;
        let (sf, sg) = (jet.schwarzian().map_err(OperatorError::from)?, g.schwarzian().map_err(OperatorError::from)?);
        worst = worst.max((sg - sf).norm() / sf.norm().max(1.0));
        done += 1;
    }
    c.value("schwarzian_cocycle_max_err", worst);
    c.require(worst <= 1e-9, "Schwarzian invariant under Moebius post-composition within 1e-9");
    Ok(c)
}

fn criterion_11(grid: &GridConfig) -> Result<CriterionResult, MarginError> {
    let mut c = CriterionResult::new(11, "Schwarz-lemma bounds on member scans");
    let co_members = ["halfplane", "kalpha:alpha=1.5", "koebe", "anglemap:a=-0.5", "anglemap:a=-0.5+0.3i"];
    for text in co_members {
        let r = scan_quantity(&parse(text), grid, true, |pt| Ok(phi_of(pt)?.norm()))?;
        c.value(&format!("{text}:max_abs_phi"), r.max);
        c.require(r.max <= 1.0 + 1e-9, format!("{text}: |phi| <= 1 + 1e-9"));
    }
    for p in [0.2, 0.5, 0.8] {
        let r = scan_quantity(&FamilySpec::kp(p)?, grid, false, |pt| Ok(varphi_p(pt, p)?.norm()))?;
        c.value(&format!("kp:p={p}:max_abs_varphi"), r.max);
        c.require(r.max <= 1.0 + 1e-9, format!("kp:p={p}: |varphi_p| <= 1 + 1e-9"));
    }
    for text in ["co0cubic:a0=0", "co0cubic:a0=0.3+0.2i", "laurent:p=0;res=1;b=[0,0.5]"] {
        let r = scan_quantity(&parse(text), grid, false, |pt| Ok(thm3_phis(pt)?.1.norm()))?;
        c.value(&format!("{text}:max_abs_big_phi"), r.max);
        c.require(r.max < 1.0, format!("{text}: |Phi| < 1"));
    }
    Ok(c)
}

fn collect<E: std::fmt::Display>(id: u32, name: &str, r: Result<CriterionResult, E>) -> CriterionResult {
    r.unwrap_or_else(|e| {
        let mut c = CriterionResult::new(id, name);
        c.error(e);
        c
    })
}

/// Runs criteria 1 to 11 on `grid`. Report determinism is checked by
/// running the suite twice and comparing serializations.
pub fn run_suite(grid: &GridConfig) -> SuiteReport {
    let mut criteria = vec![
        collect(1, "half-plane equality", criterion_1(grid)),
        collect(2, "identity rejection", criterion_2(grid)),
        collect(3, "Schwarzian bound sharpness", criterion_3(grid)),
        collect(4, "Co(0) equality locus", criterion_4(grid)),
        collect(5, "Schwarzian refinement equality", criterion_5()),
        collect(6, "Co(alpha) equality at the origin", criterion_6(grid)),
        collect(7, "Co(p) refinement", criterion_7(grid)),
        collect(8, "omitted segment", criterion_8()),
    ];
    let mut controls_out = Vec::new();
    let mut control_errors = Vec::new();
    for control in controls() {
        match run_control(&control, grid) {
            Ok(r) => controls_out.push(r),
            Err(e) => control_errors.push(format!("{}: {e}", control.spec)),
        }
    }
    let mut c9 = criterion_9(&controls_out);
    for e in control_errors {
        c9.error(e);
    }
    criteria.push(c9);
    criteria.push(collect(10, "jet accuracy", criterion_10()));
    criteria.push(collect(11, "Schwarz bounds", criterion_11(grid)));
    let all_passed = criteria.iter().all(|c| c.passed);
    SuiteReport { grid: grid.clone(), seed: SUITE_SEED, criteria, controls: controls_out, all_passed }
}

/// Jet of `(a f + b)/(c f + d) = a/c - (ad - bc)/(c (c f + d))` from the
/// jet of `f`, for `c ≠ 0`.
pub fn mobius_after(jet: &Jet3, a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Jet3, MarginError> {
    let det = a * d - b * c;
    let g = jet.scale(c).and_then(|j| j.shift(d)).and_then(|j| j.recip());
    let g = g.and_then(|j| j.scale(-det / c)).and_then(|j| j.shift(a / c));
    g.map_err(|e| MarginError::Operator(OperatorError::from(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn controls_parse_and_validate() {
        let cs = controls();
        assert_eq!(cs.len(), 16);
        assert_eq!(cs.iter().filter(|c| !c.member).count(), 5);
        for c in &cs {
            c.spec.validate().unwrap();
        }
    }

    #[test]
    fn hand_formulas_match_at_a_point() {
        let z = cx(0.3, -0.2);
        for spec in [FamilySpec::HalfPlane, FamilySpec::koebe(), FamilySpec::kp(0.5).unwrap()] {
            let jet = spec.eval_jet(z).unwrap();
            let want = hand_derivatives(&spec, z).unwrap();
            assert!(rel_err(jet.d3(), want[2]) < 1e-13);
        }
        // Koebe closed forms
        let one = cx(1.0, 0.0);
        let w = hand_derivatives(&FamilySpec::koebe(), z).unwrap();
        assert!(rel_err(w[0], (one + z) / (one - z).powi(3)) < 1e-14);
        assert!(rel_err(w[1], (4.0 + 2.0 * z) / (one - z).powi(4)) < 1e-14);
        assert!(rel_err(w[2], (18.0 + 6.0 * z) / (one - z).powi(5)) < 1e-14);
    }

    #[test]
    fn fast_suite_passes() {
        let report = run_suite(&GridConfig::preset("fast").unwrap());
        for c in &report.criteria {
            assert!(c.passed, "criterion {} failed: {:?}", c.id, c.notes);
        }
    }
}
