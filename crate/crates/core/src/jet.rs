//! Third-order Taylor jets over `Complex64`.
//!
//! A [`Jet3`] carries `f(z), f'(z), f''(z), f'''(z)` at a fixed base point.
//! Arithmetic follows the Leibniz rule and elementary functions use the
//! order-3 Faà di Bruno formula
//!
//! ```text
//! (h∘g)'   = h1 g1
//! (h∘g)''  = h2 g1² + h1 g2
//! (h∘g)''' = h3 g1³ + 3 h2 g1 g2 + h1 g3
//! ```
//!
//! where `hk` are the derivatives of the outer function at `g(z)`.
//! Every constructor checks that the result is finite, so a pole or
//! overflow at a sample surfaces as an error instead of NaN propagation.

use num_complex::Complex64;
use thiserror::Error;

/// Samples whose value is within this distance of the principal branch cut
/// `(-inf, 0]` are rejected by `log` and `powc`.
pub const BRANCH_CUT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("base point mismatch: {left} vs {right}")]
    BasePointMismatch { left: Complex64, right: Complex64 },
    #[error("division by a jet with zero value at {at}")]
    DivisionByZero { at: Complex64 },
    #[error("value {value} lies on the branch cut (-inf, 0]")]
    BranchCut { value: Complex64 },
    #[error("non-finite jet component at {at}")]
    NonFinite { at: Complex64 },
}

/// What to lift into a jet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lift {
    Variable,
    Constant(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    Log,
    Exp,
    Pow(Complex64),
}

/// Value and first three derivatives of an analytic function at `base_point`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    base_point: Complex64,
    v: [Complex64; 4],
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl Jet3 {
    /// Builds a jet from explicit components, rejecting non-finite input.
    pub fn new(base_point: Complex64, v: [Complex64; 4]) -> Result<Self, JetError> {
        if !base_point.is_finite() || v.iter().any(|x| !x.is_finite()) {
            return Err(JetError::NonFinite { at: base_point });
        }
        Ok(Self { base_point, v })
    }

    pub fn lift(z: Complex64, kind: Lift) -> Self {
        match kind {
            Lift::Variable => Self::variable(z),
            Lift::Constant(value) => Self::constant(z, value),
        }
    }

    /// The identity function `z ↦ z` at `z`.
    pub fn variable(z: Complex64) -> Self {
        Self { base_point: z, v: [z, c(1.0), c(0.0), c(0.0)] }
    }

    pub fn constant(z: Complex64, value: Complex64) -> Self {
        Self { base_point: z, v: [value, c(0.0), c(0.0), c(0.0)] }
    }

    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    pub fn value(&self) -> Complex64 {
        self.v[0]
    }

    pub fn d1(&self) -> Complex64 {
        self.v[1]
    }

    pub fn d2(&self) -> Complex64 {
        self.v[2]
    }

    pub fn d3(&self) -> Complex64 {
        self.v[3]
    }

    /// `[f, f', f'', f''']`.
    pub fn components(&self) -> [Complex64; 4] {
        self.v
    }

    fn check_base(&self, other: &Self) -> Result<(), JetError> {
        if self.base_point != other.base_point {
            return Err(JetError::BasePointMismatch { left: self.base_point, right: other.base_point });
        }
        Ok(())
    }

    fn rebuild(&self, v: [Complex64; 4]) -> Result<Self, JetError> {
        Self::new(self.base_point, v)
    }

    pub fn arith(op: ArithOp, a: &Self, b: &Self) -> Result<Self, JetError> {
        match op {
            ArithOp::Add => a.add(b),
            ArithOp::Sub => a.sub(b),
            ArithOp::Mul => a.mul(b),
            ArithOp::Div => a.div(b),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, JetError> {
        self.check_base(other)?;
        let (a, b) = (self.v, other.v);
        self.rebuild([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
    }

    pub fn sub(&self, other: &Self) -> Result<Self, JetError> {
        self.check_base(other)?;
        let (a, b) = (self.v, other.v);
        self.rebuild([a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]])
    }

    pub fn mul(&self, other: &Self) -> Result<Self, JetError> {
        self.check_base(other)?;
        let (a, b) = (self.v, other.v);
        self.rebuild([
            a[0] * b[0],
            a[1] * b[0] + a[0] * b[1],
            a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
            a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3],
        ])
    }

    pub fn div(&self, other: &Self) -> Result<Self, JetError> {
        self.check_base(other)?;
        self.mul(&other.recip()?)
    }

    /// `1/f`.
    pub fn recip(&self) -> Result<Self, JetError> {
        let u = self.v[0];
        if u == c(0.0) {
            return Err(JetError::DivisionByZero { at: self.base_point });
        }
        let inv = u.inv();
        let inv2 = inv * inv;
        self.compose([inv, -inv2, 2.0 * inv2 * inv, -6.0 * inv2 * inv2])
    }

    /// Multiplies every component by a constant.
    pub fn scale(&self, k: Complex64) -> Result<Self, JetError> {
        self.rebuild(self.v.map(|x| k * x))
    }

    /// Adds a constant to the value.
    pub fn shift(&self, k: Complex64) -> Result<Self, JetError> {
        let mut v = self.v;
        v[0] += k;
        self.rebuild(v)
    }

    pub fn neg(&self) -> Self {
        Self { base_point: self.base_point, v: self.v.map(|x| -x) }
    }

    /// Applies an outer function whose value and derivatives at `f(z)` are `h`.
    pub fn compose(&self, h: [Complex64; 4]) -> Result<Self, JetError> {
        let [_, g1, g2, g3] = self.v;
        let [h0, h1, h2, h3] = h;
        self.rebuild([
            h0,
            h1 * g1,
            h2 * g1 * g1 + h1 * g2,
            h3 * g1 * g1 * g1 + 3.0 * h2 * g1 * g2 + h1 * g3,
        ])
    }

    pub fn elem(&self, f: Elementary) -> Result<Self, JetError> {
        match f {
            Elementary::Log => self.log(),
            Elementary::Exp => self.exp(),
            Elementary::Pow(e) => self.powc(e),
        }
    }

    fn check_cut(&self) -> Result<(), JetError> {
        let u = self.v[0];
        let dist = if u.re <= 0.0 { u.im.abs() } else { u.norm() };
        if dist <= BRANCH_CUT_TOL {
            return Err(JetError::BranchCut { value: u });
        }
        Ok(())
    }

    /// Principal logarithm.
    pub fn log(&self) -> Result<Self, JetError> {
        self.check_cut()?;
        let inv = self.v[0].inv();
        let inv2 = inv * inv;
        self.compose([self.v[0].ln(), inv, -inv2, 2.0 * inv2 * inv])
    }

    pub fn exp(&self) -> Result<Self, JetError> {
        let e = self.v[0].exp();
        self.compose([e, e, e, e])
    }

    /// Principal power `exp(e · log f)`.
    pub fn powc(&self, e: Complex64) -> Result<Self, JetError> {
        self.log()?.scale(e)?.exp()
    }

    /// Integer power by repeated multiplication (no branch involved).
    pub fn powi(&self, n: u32) -> Result<Self, JetError> {
        let mut acc = Self::constant(self.base_point, c(1.0));
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `f''/f'`.
    pub fn pre_schwarzian(&self) -> Result<Complex64, JetError> {
        if self.v[1] == c(0.0) {
            return Err(JetError::DivisionByZero { at: self.base_point });
        }
        Ok(self.v[2] / self.v[1])
    }

    /// `Sf = f'''/f' - (3/2)(f''/f')²`.
    pub fn schwarzian(&self) -> Result<Complex64, JetError> {
        let p = self.pre_schwarzian()?;
        Ok(self.v[3] / self.v[1] - 1.5 * p * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_jet(j: &Jet3, expected: [Complex64; 4], tol: f64) {
        for (k, (got, want)) in j.components().iter().zip(expected).enumerate() {
            assert!((got - want).norm() <= tol * want.norm().max(1.0), "component {k}: {got} vs {want}");
        }
    }

    #[test]
    fn lift_examples() {
        let z = cx(0.5, 0.0);
        assert_jet(&Jet3::lift(z, Lift::Variable), [z, c(1.0), c(0.0), c(0.0)], 0.0);
        let k = cx(2.0, 1.0);
        assert_jet(&Jet3::lift(z, Lift::Constant(k)), [k, c(0.0), c(0.0), c(0.0)], 0.0);
        assert_jet(&Jet3::variable(c(0.0)), [c(0.0), c(1.0), c(0.0), c(0.0)], 0.0);
    }

    #[test]
    fn square_and_reciprocal() {
        let z = c(0.5);
        let x = Jet3::variable(z);
        assert_jet(&x.mul(&x).unwrap(), [c(0.25), c(1.0), c(2.0), c(0.0)], 1e-15);
        let one = Jet3::constant(z, c(1.0));
        // 1/z: -z^-2, 2z^-3, -6z^-4 at 0.5
        let r = Jet3::arith(ArithOp::Div, &one, &x).unwrap();
        assert_jet(&r, [c(2.0), c(-4.0), c(16.0), c(-96.0)], 1e-15);
        let zero = Jet3::constant(z, c(0.0));
        assert_eq!(x.add(&zero).unwrap(), x);
    }

    #[test]
    fn mismatched_base_points_rejected() {
        let a = Jet3::variable(c(0.5));
        let b = Jet3::variable(c(0.25));
        assert!(matches!(a.mul(&b), Err(JetError::BasePointMismatch { .. })));
    }

    #[test]
    fn division_by_zero_jet() {
        let x = Jet3::variable(c(0.0));
        let one = Jet3::constant(c(0.0), c(1.0));
        assert!(matches!(one.div(&x), Err(JetError::DivisionByZero { .. })));
    }

    #[test]
    fn elementary_examples() {
        let z0 = c(0.0);
        let e = Jet3::constant(z0, c(0.0)).exp().unwrap();
        assert_jet(&e, [c(1.0), c(0.0), c(0.0), c(0.0)], 0.0);
        let one_plus_z = Jet3::variable(z0).shift(c(1.0)).unwrap();
        assert_jet(&one_plus_z.log().unwrap(), [c(0.0), c(1.0), c(-1.0), c(2.0)], 1e-15);
        let x = Jet3::variable(c(0.5));
        assert_jet(&x.powc(c(2.0)).unwrap(), x.mul(&x).unwrap().components(), 1e-14);
    }

    #[test]
    fn branch_cut_rejected() {
        let x = Jet3::variable(c(-0.5));
        assert!(matches!(x.log(), Err(JetError::BranchCut { .. })));
        assert!(matches!(x.powc(c(1.5)), Err(JetError::BranchCut { .. })));
        let near = Jet3::variable(cx(-0.5, 1e-13));
        assert!(near.log().is_err());
        assert!(Jet3::variable(cx(-0.5, 1e-6)).log().is_ok());
        assert!(Jet3::variable(c(0.0)).log().is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        let x = Jet3::variable(c(800.0));
        assert!(matches!(x.exp(), Err(JetError::NonFinite { .. })));
    }

    #[test]
    fn pre_schwarzian_examples() {
        let z = c(0.0);
        let x = Jet3::variable(z);
        let one = Jet3::constant(z, c(1.0));
        let half_plane = x.div(&one.sub(&x).unwrap()).unwrap();
        assert!((half_plane.pre_schwarzian().unwrap() - c(2.0)).norm() < 1e-15);
        assert_eq!(x.pre_schwarzian().unwrap(), c(0.0));
        let w = one.sub(&x).unwrap();
        let koebe = x.div(&w.mul(&w).unwrap()).unwrap();
        assert!((koebe.pre_schwarzian().unwrap() - c(4.0)).norm() < 1e-15);
        assert!(Jet3::constant(z, c(3.0)).pre_schwarzian().is_err());
    }

    #[test]
    fn schwarzian_examples() {
        let mobius = |z: Complex64| {
            let x = Jet3::variable(z);
            let one = Jet3::constant(z, c(1.0));
            x.div(&one.sub(&x).unwrap()).unwrap()
        };
        assert!(mobius(c(0.3)).schwarzian().unwrap().norm() < 1e-13);

        let cubic = |z: Complex64| {
            let x = Jet3::variable(z);
            Jet3::constant(z, c(1.0)).div(&x).unwrap().add(&x).unwrap()
        };
        let s = cubic(c(0.5)).schwarzian().unwrap();
        assert!((s - c(-32.0 / 3.0)).norm() < 1e-12, "{s}");
        let s0 = cubic(c(1e-3)).schwarzian().unwrap();
        assert!((s0 - c(-6.0)).norm() < 1e-4, "{s0}");
    }
}
