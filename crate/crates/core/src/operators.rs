//! Pointwise differential-operator expressions built from `f''/f'` and `Sf`.
//!
//! Every quantity here is invariant under affine post-composition
//! `f ↦ c f + d`, since only the pre-Schwarzian and the Schwarzian enter.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::catalog::{CatalogError, FamilySpec};
use crate::jet::{Jet3, JetError};

/// Denominators below this modulus make a sample indeterminate.
pub const DENOM_TOL: f64 = 1e-12;

/// Radius of the circle used to evaluate removable singularities.
pub const LIMIT_RADIUS: f64 = 1e-2;
/// Number of equally spaced points on that circle.
pub const LIMIT_POINTS: usize = 16;
/// Required agreement between the circle means at `r` and `r/2`.
pub const LIMIT_AGREEMENT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("sample {z} is not inside the unit disk")]
    OutsideDisk { z: Complex64 },
    #[error("critical point at {z}: f' vanishes")]
    CriticalPoint { z: Complex64 },
    #[error("phi undefined at {z}: f'' vanishes")]
    PhiUndefined { z: Complex64 },
    #[error("varphi undefined at {z}: 2 + z f''/f' vanishes")]
    VarphiUndefined { z: Complex64 },
    #[error("sample indeterminate at {z}: {what} vanishes")]
    Indeterminate { z: Complex64, what: &'static str },
    #[error("sample {z} is within the pole exclusion of {pole}")]
    PoleProximity { z: Complex64, pole: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("limit at {center} did not settle: {first} vs {second}")]
    UnstableLimit { center: Complex64, first: Complex64, second: Complex64 },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// A jet at an interior, locally univalent sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorPoint {
    z: Complex64,
    jet: Jet3,
    pre: Complex64,
}

impl OperatorPoint {
    pub fn new(jet: Jet3) -> Result<Self, OperatorError> {
        let z = jet.base_point();
        if !(z.norm() < 1.0) {
            return Err(OperatorError::OutsideDisk { z });
        }
        if jet.d1().norm() < DENOM_TOL {
            return Err(OperatorError::CriticalPoint { z });
        }
        Ok(Self { z, jet, pre: jet.d2() / jet.d1() })
    }

    pub fn from_spec(spec: &FamilySpec, z: Complex64) -> Result<Self, OperatorError> {
        Self::new(spec.eval_jet(z)?)
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn jet(&self) -> &Jet3 {
        &self.jet
    }

    /// `f''/f'`.
    pub fn pre_schwarzian(&self) -> Complex64 {
        self.pre
    }

    /// `z f''/f'`.
    pub fn z_pre(&self) -> Complex64 {
        self.z * self.pre
    }

    pub fn schwarzian(&self) -> Complex64 {
        self.jet.d3() / self.jet.d1() - 1.5 * self.pre * self.pre
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn check_denominator(z: Complex64, d: Complex64, what: &'static str) -> Result<(), OperatorError> {
    if d.norm() < DENOM_TOL {
        return Err(OperatorError::Indeterminate { z, what });
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<(), OperatorError> {
    if alpha > 1.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(OperatorError::InvalidParameter(format!("alpha = {alpha} out of (1,2]")))
    }
}

fn check_p(p: f64) -> Result<(), OperatorError> {
    if (0.0..1.0).contains(&p) {
        Ok(())
    } else {
        Err(OperatorError::InvalidParameter(format!("p = {p} out of [0,1)")))
    }
}

/// Order operator `A_f(z) = ½((1-|z|²) f''/f' - 2 z̄)`.
pub fn a_f(pt: &OperatorPoint) -> Complex64 {
    let z = pt.z;
    0.5 * ((1.0 - z.norm_sqr()) * pt.pre - 2.0 * z.conj())
}

/// Fixed-point map `φ(z) = z + 2f'/f''`.
pub fn phi_of(pt: &OperatorPoint) -> Result<Complex64, OperatorError> {
    if pt.pre.norm() < DENOM_TOL {
        return Err(OperatorError::PhiUndefined { z: pt.z });
    }
    Ok(pt.z + 2.0 / pt.pre)
}

/// `|Sf(z)| (1-|z|²)²`.
pub fn schwarzian_norm(pt: &OperatorPoint) -> f64 {
    let w = 1.0 - pt.z.norm_sqr();
    pt.schwarzian().norm() * w * w
}

/// `|Sf|(1-|z|²)² + 2|(ϕ - z̄)/(1 - zϕ)|²` with `ϕ = (f''/f')/(2 + z f''/f')`;
/// at most 2 exactly for convex maps.
pub fn convexity_functional(pt: &OperatorPoint) -> Result<f64, OperatorError> {
    let z = pt.z;
    let den = 2.0 + z * pt.pre;
    if den.norm() < DENOM_TOL {
        return Err(OperatorError::VarphiUndefined { z });
    }
    let varphi = pt.pre / den;
    let inner_den = one() - z * varphi;
    check_denominator(z, inner_den, "1 - z varphi")?;
    let t = (varphi - z.conj()) / inner_den;
    Ok(schwarzian_norm(pt) + 2.0 * t.norm_sqr())
}

/// `Re{(α+1)/2 · (1+z)/(1-z) - 1 - z f''/f'}`.
pub fn co_alpha_lhs(pt: &OperatorPoint, alpha: f64) -> Result<f64, OperatorError> {
    check_alpha(alpha)?;
    let z = pt.z;
    check_denominator(z, one() - z, "1 - z")?;
    let v = 0.5 * (alpha + 1.0) * (one() + z) / (one() - z) - one() - pt.z_pre();
    Ok(v.re)
}

/// `E = ((α+1)/(1-z) - f''/f')/(α-1)`.
pub fn co_alpha_e(pt: &OperatorPoint, alpha: f64) -> Result<Complex64, OperatorError> {
    check_alpha(alpha)?;
    let z = pt.z;
    check_denominator(z, one() - z, "1 - z")?;
    Ok(((alpha + 1.0) / (one() - z) - pt.pre) / (alpha - 1.0))
}

/// `q = 2p/(z-p) - 2pz/(1-pz)`.
pub fn q_term(p: f64, z: Complex64) -> Result<Complex64, OperatorError> {
    check_p(p)?;
    if p == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d1 = z - p;
    let d2 = one() - p * z;
    if d1.norm() < DENOM_TOL || d2.norm() < DENOM_TOL {
        return Err(OperatorError::PoleProximity { z, pole: p });
    }
    Ok(2.0 * p / d1 - 2.0 * p * z / d2)
}

/// `M(z) = 1 + z f''/f' + q(z)`.
pub fn m_operator(pt: &OperatorPoint, p: f64) -> Result<Complex64, OperatorError> {
    Ok(one() + pt.z_pre() + q_term(p, pt.z)?)
}

/// Schwarz factor `ω(z)/z` with `ω = (M+1)/(M-1)`, written out as
/// `[(z-p)f''/f' + 2 - 2p(z-p)/(1-pz)] / [z(z-p)f''/f' + 2p - 2pz(z-p)/(1-pz)]`.
pub fn varphi_p(pt: &OperatorPoint, p: f64) -> Result<Complex64, OperatorError> {
    check_p(p)?;
    let z = pt.z;
    let d = one() - p * z;
    check_denominator(z, d, "1 - pz")?;
    let zp = z - p;
    let num = zp * pt.pre + 2.0 - 2.0 * p * zp / d;
    let den = z * zp * pt.pre + 2.0 * p - 2.0 * p * z * zp / d;
    check_denominator(z, den, "varphi_p denominator")?;
    Ok(num / den)
}

/// `|φ_p(0)|`, evaluated exactly through jets. For `p = 0` the origin is
/// a removable singularity and the circle-mean limit is used.
pub fn a_p_of(spec: &FamilySpec, p: f64) -> Result<f64, OperatorError> {
    check_p(p)?;
    let origin = Complex64::new(0.0, 0.0);
    if p > 0.0 {
        let pt = OperatorPoint::from_spec(spec, origin)?;
        return Ok(varphi_p(&pt, p)?.norm());
    }
    let v = removable_limit(origin, |z| varphi_p(&OperatorPoint::from_spec(spec, z)?, 0.0))?;
    Ok(v.norm())
}

/// `φ₃ = (z f'' + 2f')/(z³ f'')` and `Φ = (z̄ - zφ₃)/(1 - z²φ₃)`.
pub fn thm3_phis(pt: &OperatorPoint) -> Result<(Complex64, Complex64), OperatorError> {
    let z = pt.z;
    if z.norm() < DENOM_TOL {
        return Err(OperatorError::Indeterminate { z, what: "z" });
    }
    let (f1, f2) = (pt.jet.d1(), pt.jet.d2());
    let den = z * z * z * f2;
    check_denominator(z, den, "z^3 f''")?;
    let phi3 = (z * f2 + 2.0 * f1) / den;
    let d = one() - z * z * phi3;
    check_denominator(z, d, "1 - z^2 phi")?;
    Ok((phi3, (z.conj() - z * phi3) / d))
}

/// Value at `center` of a function analytic in a punctured neighbourhood
/// with a removable singularity there.
///
/// Uses the discrete mean-value property: the mean over `LIMIT_POINTS`
/// equally spaced points on `|z - center| = r` equals the value at the
/// centre up to `O(r^LIMIT_POINTS)`. The means at `r` and `r/2` must agree
/// to `LIMIT_AGREEMENT`.
pub fn removable_limit<F>(center: Complex64, g: F) -> Result<Complex64, OperatorError>
where
    F: Fn(Complex64) -> Result<Complex64, OperatorError>,
{
    let mean = |r: f64| -> Result<Complex64, OperatorError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..LIMIT_POINTS {
            let theta = TAU * (k as f64 + 0.5) / LIMIT_POINTS as f64;
            acc += g(center + Complex64::from_polar(r, theta))?;
        }
        Ok(acc / LIMIT_POINTS as f64)
    };
    let first = mean(LIMIT_RADIUS)?;
    let second = mean(0.5 * LIMIT_RADIUS)?;
    if (first - second).norm() > LIMIT_AGREEMENT * first.norm().max(1.0) {
        return Err(OperatorError::UnstableLimit { center, first, second });
    }
    Ok(first)
}

/// Analytic ingredients at the origin for a function with a pole there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginValues {
    pub schwarzian: Complex64,
    pub z_pre: Complex64,
    pub phi3: Complex64,
}

pub fn origin_values(spec: &FamilySpec) -> Result<OriginValues, OperatorError> {
    let origin = Complex64::new(0.0, 0.0);
    let at = |z: Complex64| OperatorPoint::from_spec(spec, z);
    Ok(OriginValues {
        schwarzian: removable_limit(origin, |z| Ok(at(z)?.schwarzian()))?,
        z_pre: removable_limit(origin, |z| Ok(at(z)?.z_pre()))?,
        phi3: removable_limit(origin, |z| Ok(thm3_phis(&at(z)?)?.0))?,
    })
}
