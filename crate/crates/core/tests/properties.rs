//! Property tests for the invariants of jets, catalog, operators, margins,
//! oracle and grammar.

use gft_core::catalog::{make_angle_map, AngleMapData, FamilySpec, Laurent, DEFAULT_EXCLUSION};
use gft_core::jet::Jet3;
use gft_core::margins::{
    classify, co0_margin, scan, thm1_margin, thm4_margin, ClassSpec, GridConfig, Theorem,
};
use gft_core::operators::{a_f, m_operator, phi_of, schwarzian_norm, thm3_phis, varphi_p, OperatorPoint};
use gft_core::oracle::{boundary_curve, convexity_defect, Orientation};
use gft_core::Complex64;
use proptest::prelude::*;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(a, b)| cx(a, b))
}

fn disk_point(r_max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r_max, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn jet_at(z: Complex64) -> impl Strategy<Value = Jet3> {
    (complex(3.0), complex(3.0), complex(3.0), complex(3.0))
        .prop_map(move |(a, b, c, d)| Jet3::new(z, [a, b, c, d]).unwrap())
}

fn jet_close(a: &Jet3, b: &Jet3, rel: f64) -> bool {
    let scale = a.components().iter().map(|v| v.norm()).fold(1.0, f64::max);
    a.components().iter().zip(b.components()).all(|(x, y)| (x - y).norm() <= rel * scale)
}

/// Catalog members with an admissible evaluation point.
fn member_pool() -> Vec<FamilySpec> {
    vec![
        FamilySpec::HalfPlane,
        FamilySpec::koebe(),
        FamilySpec::k_alpha(1.3).unwrap(),
        make_angle_map(cx(-0.5, 0.3), cx(1.0, 0.0), cx(0.0, 0.0)).unwrap(),
        FamilySpec::kp(0.5).unwrap(),
        FamilySpec::co0_cubic(cx(0.2, -0.1)),
        FamilySpec::laurent(Some(0.3), cx(1.0, 0.0), vec![cx(0.1, 0.0), cx(0.2, 0.1)]).unwrap(),
    ]
}

fn admissible(spec: &FamilySpec, z: Complex64) -> bool {
    spec.nearest_singularity(z).is_none_or(|(_, d)| d > 0.1)
}

proptest! {
    #[test]
    fn div_undoes_mul(z in disk_point(0.9), a in jet_at(cx(0.0, 0.0)), b in jet_at(cx(0.0, 0.0))) {
        let a = Jet3::new(z, a.components()).unwrap();
        let b = Jet3::new(z, b.components()).unwrap();
        prop_assume!(b.value().norm() > 0.2);
        let back = a.mul(&b).unwrap().div(&b).unwrap();
        // The quotient recursion divides by b(z) once per order.
        let ratio = b.components().iter().map(|v| v.norm()).fold(0.0, f64::max) / b.value().norm();
        let cond = (1.0 + ratio).powi(3);
        prop_assert!(jet_close(&back, &a, 1e-14 * cond), "{back:?} vs {a:?}");
    }

    #[test]
    fn integer_powers_match_repeated_mul(z in disk_point(0.9), a in jet_at(cx(0.0, 0.0)), n in 1u32..6) {
        let a = Jet3::new(z, a.components()).unwrap();
        let mut prod = a;
        for _ in 1..n {
            prod = prod.mul(&a).unwrap();
        }
        prop_assert!(jet_close(&a.powi(n).unwrap(), &prod, 1e-12));
        prop_assume!(a.value().re > 0.1);
        prop_assert!(jet_close(&a.powc(cx(n as f64, 0.0)).unwrap(), &prod, 1e-12));
    }

    #[test]
    fn schwarzian_mobius_cocycle(
        k in 0usize..7, z in disk_point(0.9),
        a in complex(2.0), b in complex(2.0), c in complex(2.0), d in complex(2.0),
    ) {
        let spec = &member_pool()[k];
        prop_assume!(admissible(spec, z));
        let jet = spec.eval_jet(z).unwrap();
        let det = a * d - b * c;
        prop_assume!(det.norm() > 1e-2 && c.norm() > 1e-2 && (c * jet.value() + d).norm() > 1e-2);
        let g = jet.scale(c).unwrap().shift(d).unwrap().recip().unwrap().scale(-det / c).unwrap().shift(a / c).unwrap();
        let (sf, sg) = (jet.schwarzian().unwrap(), g.schwarzian().unwrap());
        prop_assert!((sf - sg).norm() <= 1e-9 * sf.norm().max(1.0), "{sf} vs {sg}");
    }

    #[test]
    fn laurent_residue_recovered(
        p in 0.0..0.9f64, res in complex(2.0), coeffs in proptest::collection::vec(complex(1.0), 0..4),
    ) {
        prop_assume!(res.norm() > 0.1);
        let spec = FamilySpec::laurent(Some(p), res, coeffs).unwrap();
        // The mean of (z - p) f(z) over 8 equally spaced directions removes
        // the regular part up to degree 7.
        let mut sum = cx(0.0, 0.0);
        for k in 0..8 {
            let z = cx(p, 0.0) + Complex64::from_polar(1e-4, std::f64::consts::TAU * k as f64 / 8.0);
            sum += spec.eval_jet(z).unwrap().value() * (z - p);
        }
        let v = sum / 8.0;
        prop_assert!((v - res).norm() <= 1e-6 * res.norm(), "{v} vs {res}");
    }

    #[test]
    fn affine_invariance_of_operators(
        k in 0usize..7, z in disk_point(0.9), c in complex(3.0), d in complex(3.0),
    ) {
        let spec = member_pool()[k].clone();
        prop_assume!(admissible(&spec, z) && c.norm() > 0.1);
        let moved = FamilySpec::affine(c, d, spec.clone()).unwrap();
        let (p0, p1) = (OperatorPoint::from_spec(&spec, z).unwrap(), OperatorPoint::from_spec(&moved, z).unwrap());
        let close = |x: Complex64, y: Complex64| (x - y).norm() <= 1e-10 * x.norm().max(1.0);
        prop_assert!(close(a_f(&p0), a_f(&p1)));
        prop_assert!((schwarzian_norm(&p0) - schwarzian_norm(&p1)).abs() <= 1e-10 * schwarzian_norm(&p0).max(1.0));
        if let Ok(phi) = phi_of(&p0) {
            prop_assert!(close(phi, phi_of(&p1).unwrap()));
        }
        let pole = spec.interior_pole().unwrap_or(0.0);
        if let (Ok(m0), Ok(m1)) = (m_operator(&p0, pole), m_operator(&p1, pole)) {
            prop_assert!(close(m0, m1));
        }
        if let (Ok(v0), Ok(v1)) = (varphi_p(&p0, pole), varphi_p(&p1, pole)) {
            prop_assert!(close(v0, v1));
        }
        if let (Ok((f0, g0)), Ok((f1, g1))) = (thm3_phis(&p0), thm3_phis(&p1)) {
            prop_assert!(close(f0, f1) && close(g0, g1));
        }
    }

    #[test]
    fn order_operator_identity(k in 0usize..7, z in disk_point(0.95)) {
        let spec = &member_pool()[k];
        prop_assume!(admissible(spec, z));
        let pt = OperatorPoint::from_spec(spec, z).unwrap();
        if let Ok(phi) = phi_of(&pt) {
            prop_assume!((phi - z).norm() > 1e-6);
            let rhs = (1.0 - z.conj() * phi).norm() / (phi - z).norm();
            prop_assert!((a_f(&pt).norm() - rhs).abs() <= 1e-9 * rhs.max(1.0));
        }
    }

    #[test]
    fn phi3_relation(k in 0usize..7, z in disk_point(0.95)) {
        let spec = &member_pool()[k];
        prop_assume!(admissible(spec, z) && z.norm() > 0.05);
        let pt = OperatorPoint::from_spec(spec, z).unwrap();
        let jet = pt.jet();
        prop_assume!(jet.d2().norm() > 1e-6);
        let (phi3, _) = thm3_phis(&pt).unwrap();
        let want = 2.0 * jet.d1() / (z * jet.d2());
        prop_assert!((z * z * phi3 - 1.0 - want).norm() <= 1e-10 * want.norm().max(1.0));
    }

    #[test]
    fn thm4_reduces_to_co0(k in 0usize..3, z in disk_point(0.995)) {
        let specs = [
            FamilySpec::co0_cubic(cx(0.0, 0.0)),
            FamilySpec::laurent(Some(0.0), cx(1.0, 0.0), vec![cx(0.0, 0.0), cx(0.5, 0.0)]).unwrap(),
            FamilySpec::laurent(Some(0.0), cx(1.0, 0.0), vec![cx(0.3, 0.1), cx(0.0, 0.0), cx(0.2, 0.0)]).unwrap(),
        ];
        prop_assume!(z.norm() > DEFAULT_EXCLUSION);
        let pt = OperatorPoint::from_spec(&specs[k], z).unwrap();
        prop_assert!((thm4_margin(&pt, 0.0, 0.0).unwrap() - co0_margin(&pt)).abs() <= 1e-12);
    }

    #[test]
    fn nonnegative_thm1_margin_implies_order_at_least_one(
        b1 in complex(0.6), b2 in complex(0.3), k in 0usize..7, z in disk_point(0.99),
    ) {
        let taylor = FamilySpec::laurent(None, cx(0.0, 0.0), vec![cx(0.0, 0.0), cx(1.0, 0.0), b1, b2]).unwrap();
        for spec in [taylor, member_pool()[k].clone()] {
            if !admissible(&spec, z) {
                continue;
            }
            let Ok(pt) = OperatorPoint::from_spec(&spec, z) else { continue };
            if thm1_margin(&pt) >= 0.0 {
                prop_assert!(a_f(&pt).norm() >= 1.0 - 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn angle_map_invariants(a in complex(1.5)) {
        let Ok(data) = AngleMapData::from_a(a) else { return Ok(()) };
        prop_assert!((data.nu.norm() - 1.0).abs() < 1e-12);
        prop_assert!((data.lambda.norm() - 1.0).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&data.b), "b = {}", data.b);
    }
}

fn leaf_spec() -> impl Strategy<Value = FamilySpec> {
    let laurent = (
        proptest::option::of(0.0..0.99f64),
        complex(2.0),
        proptest::collection::vec(complex(2.0), 0..4),
    )
        .prop_filter_map("residue needs a pole", |(pole, res, coeffs)| {
            let residue = if pole.is_some() { res } else { cx(0.0, 0.0) };
            (pole.is_none() || res.norm() > 0.0).then_some(FamilySpec::Laurent(Laurent { pole, residue, coeffs }))
        });
    prop_oneof![
        Just(FamilySpec::HalfPlane),
        (1.0..=2.0f64).prop_map(|alpha| FamilySpec::KAlpha { alpha }),
        (0.01..0.99f64).prop_map(|p| FamilySpec::Kp { p }),
        complex(3.0).prop_map(|a0| FamilySpec::Co0Cubic { a0 }),
        laurent,
        (complex(1.5), complex(2.0), complex(2.0)).prop_filter_map("admissible a", |(a, s, b)| {
            make_angle_map(a, s, b).ok()
        }),
    ]
}

fn any_spec() -> impl Strategy<Value = FamilySpec> {
    leaf_spec().prop_recursive(3, 8, 1, |inner| {
        prop_oneof![
            (0.05..=1.0f64, inner.clone()).prop_filter_map("rho", |(rho, f)| FamilySpec::dilated(rho, f).ok()),
            (complex(3.0), complex(3.0), inner).prop_filter_map("c != 0", |(c, d, f)| FamilySpec::affine(c, d, f).ok()),
        ]
    })
}

proptest! {
    #[test]
    fn spec_text_round_trip(spec in any_spec()) {
        let text = spec.to_string();
        let back: FamilySpec = text.parse().unwrap();
        prop_assert_eq!(back, spec);
    }
}

#[test]
fn co_members_satisfy_order_and_phi_bounds_on_grid() {
    let grid = GridConfig::default();
    for spec in member_pool().into_iter().take(4) {
        for z in grid.points() {
            if (z - 1.0).norm() < grid.exclusion_radius {
                continue;
            }
            let pt = OperatorPoint::from_spec(&spec, z).unwrap();
            assert!(a_f(&pt).norm() >= 1.0 - 1e-9, "{spec} at {z}");
            assert!(phi_of(&pt).unwrap().norm() <= 1.0 + 1e-9, "{spec} at {z}");
        }
    }
}

#[test]
fn verdicts_invariant_under_affine_post_composition() {
    let grid = GridConfig::preset("fast").unwrap();
    let cases = [
        (FamilySpec::koebe(), ClassSpec::Co),
        (FamilySpec::k_alpha(1.5).unwrap(), ClassSpec::CoAlpha(1.5)),
        (FamilySpec::kp(0.5).unwrap(), ClassSpec::CoP(0.5)),
        (FamilySpec::co0_cubic(cx(0.0, 0.0)), ClassSpec::Co0),
        (FamilySpec::identity(), ClassSpec::Co),
        (FamilySpec::laurent(Some(0.0), cx(1.0, 0.0), vec![cx(0.0, 0.0), cx(0.0, 0.0), cx(2.0, 0.0)]).unwrap(), ClassSpec::Co0),
    ];
    for (spec, cls) in cases {
        let base = classify(&spec, &cls, &grid).unwrap().verdict;
        for (c, d) in [(cx(2.0, -1.0), cx(0.5, 3.0)), (cx(-0.3, 0.0), cx(0.0, -1.0))] {
            let moved = FamilySpec::affine(c, d, spec.clone()).unwrap();
            assert_eq!(classify(&moved, &cls, &grid).unwrap().verdict, base, "{spec} under ({c}, {d})");
        }
    }
}

#[test]
fn refinement_keeps_clear_verdicts() {
    let grid = GridConfig::preset("fast").unwrap();
    let fine = grid.refined();
    let cases = [
        (FamilySpec::identity(), Theorem::Thm1),
        (FamilySpec::koebe(), Theorem::Thm2 { alpha: 2.0 }),
        (FamilySpec::kp(0.5).unwrap(), Theorem::ReM { p: 0.5 }),
        (FamilySpec::laurent(None, cx(0.0, 0.0), vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(0.3, 0.0)]).unwrap(), Theorem::Thm1),
        (FamilySpec::laurent(Some(0.0), cx(1.0, 0.0), vec![cx(0.0, 0.0), cx(0.5, 0.0)]).unwrap(), Theorem::Corollary),
        (FamilySpec::laurent(Some(0.0), cx(1.0, 0.0), vec![cx(0.0, 0.0), cx(0.0, 0.0), cx(2.0, 0.0)]).unwrap(), Theorem::Co0),
    ];
    for (spec, th) in cases {
        let coarse = scan(&spec, &th, &grid).unwrap();
        if coarse.min_margin.abs() <= 10.0 * grid.margin_tol {
            continue;
        }
        assert_eq!(scan(&spec, &th, &fine).unwrap().verdict, coarse.verdict, "{spec} {th}");
    }
}

#[test]
fn mobius_images_of_circles_have_no_defect() {
    // A + B/(z - p) with the pole inside the sampled circle maps it to a
    // circle enclosing the omitted disk.
    for (p, b, shift) in [(0.0, cx(1.0, 0.0), cx(0.0, 0.0)), (0.3, cx(-2.0, 1.0), cx(1.0, 1.0)), (0.7, cx(0.2, 0.5), cx(-3.0, 0.0))] {
        let base = FamilySpec::laurent(Some(p), cx(1.0, 0.0), vec![]).unwrap();
        let spec = FamilySpec::affine(b, shift, base).unwrap();
        for r in [0.8, 0.9, 0.99] {
            let curve = boundary_curve(&spec, r, 1024).unwrap();
            let d = convexity_defect(&curve, Orientation::ComplementInside).unwrap();
            assert!(d.orientation_ok && d.defect < 1e-9, "p={p} r={r}: {d:?}");
        }
    }
}
