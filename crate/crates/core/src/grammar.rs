//! Text form of [`FamilySpec`].
//!
//! ```text
//! halfplane | koebe | identity
//! kalpha:alpha=<r>
//! anglemap:a=<c>[,A=<c>,B=<c>]
//! kp:p=<r>
//! co0cubic:a0=<c>
//! laurent:[p=<r>;res=<c>;]b=[<c>,...]
//! dilated:rho=<r>;f=<spec>
//! affine:c=<c>;d=<c>;f=<spec>
//! ```
//!
//! Complex literals are written `<re>+<im>i`, `<re>-<im>i`, `<re>` or `<im>i`.
//! Parameters may be separated by `,` or `;`; `f=` always consumes the rest
//! of the string.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::catalog::{FamilySpec, Laurent};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("at column {}: {message}", .pos + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

/// Formats a complex number as `<re>+<im>i`; parses back bit-exactly.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses a finite real literal. `pos` is the offset of `text` in the full input.
pub fn parse_real(text: &str, pos: usize) -> Result<f64, ParseError> {
    match text.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => err(pos, format!("malformed real literal '{text}'")),
    }
}

/// Parses a complex literal. `pos` is the offset of `text` in the full input.
pub fn parse_complex(text: &str, pos: usize) -> Result<Complex64, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        return err(pos, "empty complex literal");
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(t, pos)?, 0.0));
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k], pos)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => parse_real(s, pos + split.unwrap_or(0))?,
    };
    Ok(Complex64::new(re, im))
}

struct Params<'a> {
    items: Vec<(&'a str, &'a str, usize)>,
}

impl<'a> Params<'a> {
    fn split(input: &'a str, start: usize) -> Result<Self, ParseError> {
        let text = &input[start..];
        let mut items = Vec::new();
        let mut depth = 0usize;
        let mut item_start = 0usize;
        let bytes = text.as_bytes();
        let mut k = 0usize;
        while k <= bytes.len() {
            let at_end = k == bytes.len();
            let ch = if at_end { b';' } else { bytes[k] };
            match ch {
                b'[' => depth += 1,
                b']' => {
                    if depth == 0 {
                        return err(start + k, "unbalanced ']'");
                    }
                    depth -= 1;
                }
                b',' | b';' if depth == 0 => {
                    let item = &text[item_start..k];
                    let Some(eq) = item.find('=') else {
                        return err(start + item_start, format!("expected key=value, found '{item}'"));
                    };
                    let key = item[..eq].trim();
                    if key == "f" {
                        // nested spec takes the remainder verbatim
                        items.push((key, &text[item_start + eq + 1..], start + item_start + eq + 1));
                        return Ok(Self { items });
                    }
                    items.push((key, &item[eq + 1..], start + item_start + eq + 1));
                    item_start = k + 1;
                }
                _ => {}
            }
            k += 1;
        }
        if depth != 0 {
            return err(input.len(), "unbalanced '['");
        }
        Ok(Self { items })
    }

    fn take(&mut self, key: &str) -> Option<(&'a str, usize)> {
        let idx = self.items.iter().position(|(k, _, _)| *k == key)?;
        let (_, v, p) = self.items.remove(idx);
        Some((v, p))
    }

    fn require(&mut self, key: &str, family_pos: usize) -> Result<(&'a str, usize), ParseError> {
        match self.take(key) {
            Some(v) => Ok(v),
            None => err(family_pos, format!("missing parameter '{key}'")),
        }
    }

    fn finish(self) -> Result<(), ParseError> {
        match self.items.first() {
            Some((k, _, p)) => err(p.saturating_sub(k.len() + 1), format!("unknown parameter '{k}'")),
            None => Ok(()),
        }
    }
}

fn parse_list(text: &str, pos: usize) -> Result<Vec<Complex64>, ParseError> {
    let t = text.trim();
    let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
        return err(pos, format!("expected [..] list, found '{text}'"));
    };
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = pos + 1;
    for item in inner.split(',') {
        out.push(parse_complex(item, offset)?);
        offset += item.len() + 1;
    }
    Ok(out)
}

fn range_error(pos: usize, e: crate::catalog::CatalogError) -> ParseError {
    ParseError { pos, message: e.to_string() }
}

fn parse_at(input: &str, start: usize) -> Result<FamilySpec, ParseError> {
    let text = &input[start..];
    let (name, rest_start) = match text.find(':') {
        Some(k) => (text[..k].trim(), Some(start + k + 1)),
        None => (text.trim(), None),
    };
    let mut params = match rest_start {
        Some(s) => Params::split(input, s)?,
        None => Params { items: Vec::new() },
    };
    let spec = match name {
        "halfplane" => FamilySpec::HalfPlane,
        "koebe" => FamilySpec::koebe(),
        "identity" => FamilySpec::identity(),
        "kalpha" => {
            let (v, p) = params.require("alpha", start)?;
            FamilySpec::k_alpha(parse_real(v, p)?).map_err(|e| range_error(p, e))?
        }
        "anglemap" => {
            let (v, p) = params.require("a", start)?;
            let a = parse_complex(v, p)?;
            let scale = match params.take("A") {
                Some((v, p)) => parse_complex(v, p)?,
                None => Complex64::new(1.0, 0.0),
            };
            let shift = match params.take("B") {
                Some((v, p)) => parse_complex(v, p)?,
                None => Complex64::new(0.0, 0.0),
            };
            crate::catalog::make_angle_map(a, scale, shift).map_err(|e| range_error(p, e))?
        }
        "kp" => {
            let (v, p) = params.require("p", start)?;
            FamilySpec::kp(parse_real(v, p)?).map_err(|e| range_error(p, e))?
        }
        "co0cubic" => {
            let (v, p) = params.require("a0", start)?;
            FamilySpec::co0_cubic(parse_complex(v, p)?)
        }
        "laurent" => {
            let pole = match params.take("p") {
                Some((v, _)) if v.trim() == "none" => None,
                Some((v, p)) => Some(parse_real(v, p)?),
                None => None,
            };
            let residue = match params.take("res") {
                Some((v, p)) => parse_complex(v, p)?,
                None if pole.is_some() => Complex64::new(1.0, 0.0),
                None => Complex64::new(0.0, 0.0),
            };
            let (v, p) = params.require("b", start)?;
            let coeffs = parse_list(v, p)?;
            FamilySpec::laurent(pole, residue, coeffs).map_err(|e| range_error(start, e))?
        }
        "dilated" => {
            let (v, p) = params.require("rho", start)?;
            let rho = parse_real(v, p)?;
            let (_, fp) = params.require("f", start)?;
            let base = parse_at(input, fp)?;
            FamilySpec::dilated(rho, base).map_err(|e| range_error(p, e))?
        }
        "affine" => {
            let (v, p) = params.require("c", start)?;
            let scale = parse_complex(v, p)?;
            let shift = match params.take("d") {
                Some((v, p)) => parse_complex(v, p)?,
                None => Complex64::new(0.0, 0.0),
            };
            let (_, fp) = params.require("f", start)?;
            let base = parse_at(input, fp)?;
            FamilySpec::affine(scale, shift, base).map_err(|e| range_error(p, e))?
        }
        other => return err(start, format!("unknown family '{other}'")),
    };
    params.finish()?;
    Ok(spec)
}

/// Parses a function spec in the mini-grammar.
pub fn parse_spec(text: &str) -> Result<FamilySpec, ParseError> {
    parse_at(text, 0)
}

impl std::str::FromStr for FamilySpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = format_complex;
        match self {
            Self::HalfPlane => write!(f, "halfplane"),
            Self::KAlpha { alpha } => write!(f, "kalpha:alpha={alpha}"),
            Self::AngleMap { a, scale, shift } => write!(f, "anglemap:a={},A={},B={}", c(*a), c(*scale), c(*shift)),
            Self::Kp { p } => write!(f, "kp:p={p}"),
            Self::Co0Cubic { a0 } => write!(f, "co0cubic:a0={}", c(*a0)),
            Self::Laurent(Laurent { pole, residue, coeffs }) => {
                let list = coeffs.iter().map(|b| c(*b)).collect::<Vec<_>>().join(",");
                match pole {
                    Some(p) => write!(f, "laurent:p={p};res={};b=[{list}]", c(*residue)),
                    None => write!(f, "laurent:b=[{list}]"),
                }
            }
            Self::Dilated { rho, base } => write!(f, "dilated:rho={rho};f={base}"),
            Self::Affine { scale, shift, base } => write!(f, "affine:c={};d={};f={base}", c(*scale), c(*shift)),
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
    fn complex_literals() {
        assert_eq!(parse_complex("0.5+0.3i", 0).unwrap(), cx(0.5, 0.3));
        assert_eq!(parse_complex("-0.5-0.3i", 0).unwrap(), cx(-0.5, -0.3));
        assert_eq!(parse_complex("2", 0).unwrap(), cx(2.0, 0.0));
        assert_eq!(parse_complex("2i", 0).unwrap(), cx(0.0, 2.0));
        assert_eq!(parse_complex("-i", 0).unwrap(), cx(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2E-1i", 0).unwrap(), cx(1e-3, 0.2));
        assert_eq!(parse_complex("-1e+2-3e-4i", 0).unwrap(), cx(-100.0, -3e-4));
        assert!(parse_complex("0.5+xi", 0).is_err());
        assert!(parse_complex("", 0).is_err());
    }

    #[test]
    fn spec_examples() {
        assert_eq!(parse_spec("kp:p=0.5").unwrap(), FamilySpec::Kp { p: 0.5 });
        assert_eq!(parse_spec("kalpha:alpha=2").unwrap(), FamilySpec::koebe());
        assert_eq!(parse_spec("koebe").unwrap(), FamilySpec::koebe());
        let e = parse_spec("kalpha:alpha=2.5").unwrap_err();
        assert!(e.message.contains("alpha"), "{e}");
        assert_eq!(e.pos, "kalpha:alpha=".len());
        assert_eq!(parse_spec("co0cubic:a0=0+0i").unwrap(), FamilySpec::co0_cubic(cx(0.0, 0.0)));
        assert_eq!(
            parse_spec("laurent:p=0;res=1+0i;b=[0,0,1]").unwrap(),
            FamilySpec::laurent(Some(0.0), cx(1.0, 0.0), vec![cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)]).unwrap()
        );
        assert_eq!(parse_spec("identity").unwrap(), FamilySpec::identity());
        let am = parse_spec("anglemap:a=-0.5+0i").unwrap();
        assert!(matches!(am, FamilySpec::AngleMap { .. }));
        let nested = parse_spec("dilated:rho=0.8;f=affine:c=2+0i;d=1-1i;f=halfplane").unwrap();
        assert!(matches!(nested, FamilySpec::Dilated { .. }));
    }

    #[test]
    fn rejects_with_positions() {
        let e = parse_spec("hyperbolic").unwrap_err();
        assert_eq!(e.pos, 0);
        let e = parse_spec("co0cubic:a0=1+zi").unwrap_err();
        assert_eq!(e.pos, "co0cubic:a0=1".len());
        let e = parse_spec("kp:q=0.5").unwrap_err();
        assert!(e.message.contains("missing"));
        let e = parse_spec("kp:p=0.5,q=1").unwrap_err();
        assert!(e.message.contains("unknown parameter"));
        assert!(parse_spec("laurent:b=[1,2").is_err());
        assert!(parse_spec("anglemap:a=0").is_err());
    }

    #[test]
    fn display_round_trip_examples() {
        for text in [
            "halfplane",
            "kalpha:alpha=1.5",
            "kp:p=0.25",
            "co0cubic:a0=0.3-0.2i",
            "laurent:b=[0+0i,1+0i,0.3+0i]",
            "laurent:p=0.5;res=1+0i;b=[]",
            "anglemap:a=-0.5+0.3i,A=1+0i,B=0+0i",
            "dilated:rho=0.8;f=halfplane",
            "affine:c=2+1i;d=0-3i;f=kp:p=0.5",
        ] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
        }
    }
}
