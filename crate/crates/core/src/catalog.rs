//! Function families and their jet evaluators.
//!
//! Every evaluator is composed from [`Jet3`] primitives; nothing here
//! differentiates by hand.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::jet::{Jet3, JetError};

/// Default pole-exclusion radius.
pub const DEFAULT_EXCLUSION: f64 = 0.05;

/// Relative slack applied to exclusion distances so that samples placed
/// exactly on an exclusion circle are kept regardless of rounding.
const EXCLUSION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("anglemap: a = 0 makes every point fixed")]
    AngleMapAllFixed,
    #[error("anglemap: |a|^2 = Re a forces phi'(1) = 1")]
    AngleMapDegenerate,
    #[error("anglemap: phi'(1) = {phi1} lies outside [0, 1/3]")]
    AngleMapOutOfRange { phi1: f64 },
    #[error("point {z} is not inside the unit disk")]
    OutsideDisk { z: Complex64 },
    #[error("point {z} is within {distance} of the singularity {singularity}")]
    PoleProximity { z: Complex64, singularity: Complex64, distance: f64 },
    #[error("{0}: function is not analytic at the origin")]
    NotAnalyticAtOrigin(String),
    #[error("f'(0) = 0, cannot normalize")]
    CriticalAtOrigin,
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Truncated Laurent (or plain Taylor) series
/// `residue/(z-p) + Σ b_k (z-p)^k`, or `Σ b_k z^k` when there is no pole.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent {
    pub pole: Option<f64>,
    pub residue: Complex64,
    pub coeffs: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// `z/(1-z)`.
    HalfPlane,
    /// `[((1+z)/(1-z))^alpha - 1]/(2 alpha)`, `alpha ∈ [1,2]`.
    KAlpha { alpha: f64 },
    /// `A((z-λ)/(z-1))^{1+b} + B` with `λ, b` derived from `a`.
    AngleMap { a: Complex64, scale: Complex64, shift: Complex64 },
    /// `z/((1-z/p)(1-pz))`, `p ∈ (0,1)`.
    Kp { p: f64 },
    /// `1/z + a0 + z`.
    Co0Cubic { a0: Complex64 },
    Laurent(Laurent),
    /// `f(rho z)/rho`.
    Dilated { rho: f64, base: Box<FamilySpec> },
    /// `scale f + shift`.
    Affine { scale: Complex64, shift: Complex64, base: Box<FamilySpec> },
}

/// Constants attached to a member of the angle-map family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleMapData {
    pub a: Complex64,
    pub nu: Complex64,
    pub lambda: Complex64,
    pub b: f64,
    /// Angular derivative of the fixed-point map at `z = 1`.
    pub phi1: f64,
}

impl AngleMapData {
    pub fn from_a(a: Complex64) -> Result<Self, CatalogError> {
        if !a.is_finite() || a.norm() >= 1.0 {
            return Err(CatalogError::InvalidParameter(format!("anglemap: a = {a} must lie in the unit disk")));
        }
        if a.norm() == 0.0 {
            return Err(CatalogError::AngleMapAllFixed);
        }
        let abs2 = a.norm_sqr();
        let gap = abs2 - a.re;
        if gap.abs() < 1e-14 {
            return Err(CatalogError::AngleMapDegenerate);
        }
        let one = Complex64::new(1.0, 0.0);
        let phi1 = (1.0 - abs2) / (one - a).norm_sqr();
        if phi1 > 1.0 / 3.0 + 1e-12 {
            return Err(CatalogError::AngleMapOutOfRange { phi1 });
        }
        let nu = -(one - a.conj()) / (one - a);
        let lambda = nu * a / a.conj();
        let b = (1.0 - abs2) / gap;
        Ok(Self { a, nu, lambda, b, phi1 })
    }

    /// Opening angle of the image domain at the vertex, `π(1+b)`.
    pub fn image_opening_angle(&self) -> f64 {
        PI * (1.0 + self.b)
    }

    /// Opening angle of the omitted sector, `π(1-b)`.
    pub fn omitted_angle(&self) -> f64 {
        PI * (1.0 - self.b)
    }

    /// `(z-λ)/(z-1)` maps the disk onto a half-plane through the origin.
    /// Returns the unit `c` rotating that half-plane onto `Re w > 0`, so the
    /// power can be taken on the principal branch without crossing the cut.
    fn rotation(&self) -> Complex64 {
        let lambda = self.lambda;
        let one = Complex64::new(1.0, 0.0);
        let w = |z: Complex64| (z - lambda) / (z - one);
        let candidates = [Complex64::new(-1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
        let zeta = candidates
            .into_iter()
            .max_by(|x, y| {
                let dx = (x - one).norm().min((x - lambda).norm());
                let dy = (y - one).norm().min((y - lambda).norm());
                dx.total_cmp(&dy)
            })
            .expect("non-empty");
        let d = w(zeta);
        let d = d / d.norm();
        let mut n = Complex64::new(0.0, 1.0) * d;
        if (lambda * n.conj()).re < 0.0 {
            n = -n;
        }
        n.conj()
    }

    /// Multiplier making the rotated branch agree with the principal
    /// formula at `z = 0`.
    fn branch_factor(&self, rot: Complex64) -> Complex64 {
        let e = 1.0 + self.b;
        ((self.lambda.ln() - (rot * self.lambda).ln()) * e).exp()
    }
}

/// Builds the angle-map family member for `a`, validating the admissible range.
pub fn make_angle_map(a: Complex64, scale: Complex64, shift: Complex64) -> Result<FamilySpec, CatalogError> {
    AngleMapData::from_a(a)?;
    if scale.norm() == 0.0 || !scale.is_finite() || !shift.is_finite() {
        return Err(CatalogError::InvalidParameter("anglemap: A must be non-zero and finite".into()));
    }
    Ok(FamilySpec::AngleMap { a, scale, shift })
}

/// Endpoints of the real segment omitted by `k_p`.
pub fn omitted_segment(p: f64) -> Result<(f64, f64), CatalogError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(CatalogError::InvalidParameter(format!("p = {p} out of (0,1)")));
    }
    Ok((1.0 / (2.0 - 1.0 / p - p), -1.0 / (2.0 + 1.0 / p + p)))
}

fn horner(coeffs: &[Complex64], t: &Jet3) -> Result<Jet3, JetError> {
    let z = t.base_point();
    let mut acc = Jet3::constant(z, Complex64::new(0.0, 0.0));
    for b in coeffs.iter().rev() {
        acc = acc.mul(t)?.shift(*b)?;
    }
    Ok(acc)
}

impl FamilySpec {
    pub fn half_plane() -> Self {
        Self::HalfPlane
    }

    pub fn koebe() -> Self {
        Self::KAlpha { alpha: 2.0 }
    }

    pub fn identity() -> Self {
        Self::Laurent(Laurent { pole: None, residue: Complex64::new(0.0, 0.0), coeffs: vec![0.0.into(), 1.0.into()] })
    }

    pub fn k_alpha(alpha: f64) -> Result<Self, CatalogError> {
        let s = Self::KAlpha { alpha };
        s.validate()?;
        Ok(s)
    }

    pub fn kp(p: f64) -> Result<Self, CatalogError> {
        let s = Self::Kp { p };
        s.validate()?;
        Ok(s)
    }

    pub fn co0_cubic(a0: Complex64) -> Self {
        Self::Co0Cubic { a0 }
    }

    pub fn laurent(pole: Option<f64>, residue: Complex64, coeffs: Vec<Complex64>) -> Result<Self, CatalogError> {
        let s = Self::Laurent(Laurent { pole, residue, coeffs });
        s.validate()?;
        Ok(s)
    }

    pub fn dilated(rho: f64, base: FamilySpec) -> Result<Self, CatalogError> {
        let s = Self::Dilated { rho, base: Box::new(base) };
        s.validate()?;
        Ok(s)
    }

    pub fn affine(scale: Complex64, shift: Complex64, base: FamilySpec) -> Result<Self, CatalogError> {
        let s = Self::Affine { scale, shift, base: Box::new(base) };
        s.validate()?;
        Ok(s)
    }

    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |msg: String| Err(CatalogError::InvalidParameter(msg));
        match self {
            Self::HalfPlane => Ok(()),
            Self::KAlpha { alpha } => {
                if (1.0..=2.0).contains(alpha) {
                    Ok(())
                } else {
                    bad(format!("alpha = {alpha} out of [1,2]"))
                }
            }
            Self::AngleMap { a, scale, shift } => make_angle_map(*a, *scale, *shift).map(|_| ()),
            Self::Kp { p } => {
                if *p > 0.0 && *p < 1.0 {
                    Ok(())
                } else {
                    bad(format!("p = {p} out of (0,1)"))
                }
            }
            Self::Co0Cubic { a0 } => {
                if a0.is_finite() {
                    Ok(())
                } else {
                    bad("a0 must be finite".into())
                }
            }
            Self::Laurent(l) => {
                if let Some(p) = l.pole {
                    if !(0.0..1.0).contains(&p) {
                        return bad(format!("laurent pole p = {p} out of [0,1)"));
                    }
                } else if l.residue.norm() != 0.0 {
                    return bad("laurent residue requires a pole".into());
                }
                if !l.residue.is_finite() || l.coeffs.iter().any(|b| !b.is_finite()) {
                    return bad("laurent coefficients must be finite".into());
                }
                Ok(())
            }
            Self::Dilated { rho, base } => {
                if !(rho.is_finite() && *rho > 0.0) {
                    return bad(format!("rho = {rho} must be positive"));
                }
                base.validate()
            }
            Self::Affine { scale, shift, base } => {
                if scale.norm() == 0.0 || !scale.is_finite() || !shift.is_finite() {
                    return bad("affine scale must be non-zero and finite".into());
                }
                base.validate()
            }
        }
    }

    /// Singular points of the function in the closed unit disk (poles and the
    /// boundary pole at 1), used to build exclusion zones.
    pub fn singularities(&self) -> Vec<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Self::HalfPlane | Self::KAlpha { .. } | Self::AngleMap { .. } => vec![one],
            Self::Kp { p } => vec![Complex64::new(*p, 0.0)],
            Self::Co0Cubic { .. } => vec![Complex64::new(0.0, 0.0)],
            Self::Laurent(l) => l.pole.map(|p| Complex64::new(p, 0.0)).into_iter().collect(),
            Self::Dilated { rho, base } => base
                .singularities()
                .into_iter()
                .map(|s| s / *rho)
                .filter(|s| s.norm() <= 1.0 + 1e-12)
                .collect(),
            Self::Affine { base, .. } => base.singularities(),
        }
    }

    /// Interior pole location, if the function has one inside the disk.
    pub fn interior_pole(&self) -> Option<f64> {
        self.singularities().into_iter().find(|s| s.norm() < 1.0 - 1e-12 && s.im == 0.0).map(|s| s.re)
    }

    /// True when the function has its pole at the boundary point `z = 1`.
    pub fn has_boundary_pole(&self) -> bool {
        self.singularities().iter().any(|s| (s - Complex64::new(1.0, 0.0)).norm() < 1e-12)
    }

    /// Jet of the function at `z`, `|z| < 1`.
    pub fn eval_jet(&self, z: Complex64) -> Result<Jet3, CatalogError> {
        if !(z.norm() < 1.0) {
            return Err(CatalogError::OutsideDisk { z });
        }
        self.jet_unchecked(z)
    }

    /// As [`eval_jet`](Self::eval_jet), but rejects points within `eps` of a
    /// singularity.
    pub fn eval_jet_excluding(&self, z: Complex64, eps: f64) -> Result<Jet3, CatalogError> {
        if let Some((singularity, distance)) = self.nearest_singularity(z) {
            if distance < eps * (1.0 - EXCLUSION_SLACK) {
                return Err(CatalogError::PoleProximity { z, singularity, distance });
            }
        }
        self.eval_jet(z)
    }

    pub fn nearest_singularity(&self, z: Complex64) -> Option<(Complex64, f64)> {
        self.singularities()
            .into_iter()
            .map(|s| (s, (z - s).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    fn jet_unchecked(&self, z: Complex64) -> Result<Jet3, CatalogError> {
        let x = Jet3::variable(z);
        let k = |v: f64| Jet3::constant(z, Complex64::new(v, 0.0));
        let one = k(1.0);
        let jet = match self {
            Self::HalfPlane => x.div(&one.sub(&x)?)?,
            Self::KAlpha { alpha } => {
                let u = one.add(&x)?.div(&one.sub(&x)?)?;
                u.powc(Complex64::new(*alpha, 0.0))?
                    .shift(Complex64::new(-1.0, 0.0))?
                    .scale(Complex64::new(1.0 / (2.0 * alpha), 0.0))?
            }
            Self::AngleMap { a, scale, shift } => {
                let data = AngleMapData::from_a(*a)?;
                let rot = data.rotation();
                let lam = Jet3::constant(z, data.lambda);
                let w = x.sub(&lam)?.div(&x.sub(&one)?)?.scale(rot)?;
                w.powc(Complex64::new(1.0 + data.b, 0.0))?
                    .scale(*scale * data.branch_factor(rot))?
                    .shift(*shift)?
            }
            Self::Kp { p } => {
                let d1 = one.sub(&x.scale(Complex64::new(1.0 / p, 0.0))?)?;
                let d2 = one.sub(&x.scale(Complex64::new(*p, 0.0))?)?;
                x.div(&d1.mul(&d2)?)?
            }
            Self::Co0Cubic { a0 } => one.div(&x)?.add(&x)?.shift(*a0)?,
            Self::Laurent(l) => match l.pole {
                Some(p) => {
                    let t = x.shift(Complex64::new(-p, 0.0))?;
                    let principal = Jet3::constant(z, l.residue).div(&t)?;
                    principal.add(&horner(&l.coeffs, &t)?)?
                }
                None => horner(&l.coeffs, &x)?,
            },
            Self::Dilated { rho, base } => {
                let inner = base.jet_unchecked(z * *rho)?;
                let [v0, v1, v2, v3] = inner.components();
                Jet3::new(z, [v0 / *rho, v1, v2 * *rho, v3 * (*rho * *rho)])?
            }
            Self::Affine { scale, shift, base } => base.jet_unchecked(z)?.scale(*scale)?.shift(*shift)?,
        };
        Ok(jet)
    }

    /// Affine renormalization `(f - f(0))/f'(0)`.
    pub fn normalize_co_alpha(&self) -> Result<FamilySpec, CatalogError> {
        let origin = Complex64::new(0.0, 0.0);
        if self.nearest_singularity(origin).is_some_and(|(_, d)| d == 0.0) {
            return Err(CatalogError::NotAnalyticAtOrigin(format!("{self:?}")));
        }
        let jet = self.jet_unchecked(origin)?;
        let (f0, f1) = (jet.value(), jet.d1());
        if f1.norm() == 0.0 {
            return Err(CatalogError::CriticalAtOrigin);
        }
        let out = match self {
            Self::HalfPlane | Self::KAlpha { .. } | Self::Kp { .. } => self.clone(),
            Self::AngleMap { a, scale, shift } => {
                Self::AngleMap { a: *a, scale: *scale / f1, shift: (*shift - f0) / f1 }
            }
            Self::Laurent(l) => {
                let mut coeffs = l.coeffs.clone();
                if coeffs.is_empty() {
                    coeffs.push(Complex64::new(0.0, 0.0));
                }
                coeffs[0] -= f0;
                Self::Laurent(Laurent {
                    pole: l.pole,
                    residue: l.residue / f1,
                    coeffs: coeffs.into_iter().map(|b| b / f1).collect(),
                })
            }
            Self::Dilated { rho, base } => Self::Dilated { rho: *rho, base: Box::new(base.normalize_co_alpha()?) },
            Self::Affine { base, .. } => base.normalize_co_alpha()?,
            Self::Co0Cubic { .. } => unreachable!("pole at origin rejected above"),
        };
        Ok(out)
    }
}
