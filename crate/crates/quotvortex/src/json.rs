//! JSON wire formats.
//!
//! Coefficients are always decimal strings so that arbitrary precision
//! survives any JSON reader. Rationals are written `num/den`.

use std::fmt::Display;
use std::str::FromStr;

use num_traits::One;
use quotvortex_core::sym::{CurveZeta, SymError};
use quotvortex_core::vortex::{Lattice, PDivisor, QuotPoint, VortexError};
use quotvortex_core::{Int, Poly, Rat, RatFunc};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid coefficient {0:?}")]
    Coefficient(String),
    #[error(transparent)]
    Zeta(#[from] SymError),
    #[error(transparent)]
    Vortex(#[from] VortexError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub var: String,
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn from_poly<C: Display + quotvortex_core::algebra::Coeff>(p: &Poly<C>, var: &str) -> Self {
        let coeffs = if p.coeffs().is_empty() {
            vec!["0".to_string()]
        } else {
            p.coeffs().iter().map(ToString::to_string).collect()
        };
        PolyJson {
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn to_int_poly(&self) -> Result<Poly<Int>, FormatError> {
        parse_coeffs(&self.coeffs)
    }

    pub fn to_rat_poly(&self) -> Result<Poly<Rat>, FormatError> {
        parse_coeffs(&self.coeffs)
    }
}

fn parse_coeffs<C: FromStr + quotvortex_core::algebra::Coeff>(
    cs: &[String],
) -> Result<Poly<C>, FormatError> {
    cs.iter()
        .map(|s| {
            s.trim()
                .parse::<C>()
                .map_err(|_| FormatError::Coefficient(s.clone()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Poly::new)
}

/// A coefficient given either as a JSON integer or as a string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumOrString {
    Num(i64),
    Str(String),
}

impl NumOrString {
    fn text(&self) -> String {
        match self {
            NumOrString::Num(n) => n.to_string(),
            NumOrString::Str(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveZetaJson {
    pub q: u64,
    pub numerator: Vec<NumOrString>,
}

impl CurveZetaJson {
    pub fn from_zeta(z: &CurveZeta) -> Self {
        CurveZetaJson {
            q: z.q(),
            numerator: z
                .numerator()
                .coeffs()
                .iter()
                .map(|c| NumOrString::Str(c.to_string()))
                .collect(),
        }
    }

    pub fn to_zeta(&self) -> Result<CurveZeta, FormatError> {
        let texts: Vec<String> = self.numerator.iter().map(NumOrString::text).collect();
        Ok(CurveZeta::new(self.q, parse_coeffs(&texts)?)?)
    }
}

pub fn parse_zeta(text: &str) -> Result<CurveZeta, FormatError> {
    serde_json::from_str::<CurveZetaJson>(text)?.to_zeta()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PDivisorJson {
    pub finite: PolyJson,
    pub inf_mult: u64,
}

impl PDivisorJson {
    pub fn from_divisor(d: &PDivisor) -> Self {
        PDivisorJson {
            finite: PolyJson::from_poly(d.finite(), "z"),
            inf_mult: d.inf_mult(),
        }
    }

    pub fn to_divisor(&self) -> Result<PDivisor, FormatError> {
        Ok(PDivisor::new(self.finite.to_rat_poly()?, self.inf_mult)?)
    }
}

pub fn parse_divisor(text: &str) -> Result<PDivisor, FormatError> {
    serde_json::from_str::<PDivisorJson>(text)?.to_divisor()
}

/// A matrix entry: a polynomial in `z`, with a denominator only when it is
/// not `1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub var: String,
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<String>>,
}

impl EntryJson {
    pub fn from_ratfunc(x: &RatFunc) -> Self {
        let num = PolyJson::from_poly(x.num(), "z");
        let den = (!x.den().is_one()).then(|| PolyJson::from_poly(x.den(), "z").coeffs);
        EntryJson {
            var: num.var,
            coeffs: num.coeffs,
            den,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    /// Canonical finite basis, row-major.
    pub finite_basis: Vec<EntryJson>,
    pub inf_exponents: Vec<i64>,
    /// Canonical basis at ∞, row-major.
    pub inf_basis: Vec<EntryJson>,
    pub precision: u64,
}

impl LatticeJson {
    pub fn from_lattice(l: &Lattice, precision: u64) -> Self {
        LatticeJson {
            finite_basis: l
                .finite_basis()
                .entries()
                .iter()
                .map(EntryJson::from_ratfunc)
                .collect(),
            inf_exponents: l.inf_exponents(),
            inf_basis: l
                .inf_basis()
                .entries()
                .iter()
                .map(EntryJson::from_ratfunc)
                .collect(),
            precision,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotPointJson {
    #[serde(rename = "E")]
    pub e: LatticeJson,
    #[serde(rename = "G")]
    pub g: LatticeJson,
    pub dp: u64,
    pub dz: u64,
}

impl QuotPointJson {
    pub fn from_point(p: &QuotPoint) -> Self {
        let n = p.precision();
        QuotPointJson {
            e: LatticeJson::from_lattice(p.e(), n),
            g: LatticeJson::from_lattice(p.g(), n),
            dp: p.dp(),
            dz: p.dz(),
        }
    }
}

pub fn poly_json_string(p: &Poly<Int>, var: &str) -> String {
    serde_json::to_string(&PolyJson::from_poly(p, var)).expect("plain strings serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn ip(c: &[i64]) -> Poly<Int> {
        Poly::new(c.iter().map(|&x| Int::from(x)).collect())
    }

    #[test]
    fn poly_round_trip() {
        let p = ip(&[1, 0, 4, 0, 6, 0, 4, 0, 1]);
        let s = poly_json_string(&p, "t");
        assert_eq!(
            s,
            r#"{"var":"t","coeffs":["1","0","4","0","6","0","4","0","1"]}"#
        );
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_int_poly().unwrap(), p);
    }

    #[test]
    fn zero_poly_has_one_coefficient() {
        assert_eq!(
            poly_json_string(&Poly::zero(), "t"),
            r#"{"var":"t","coeffs":["0"]}"#
        );
    }

    #[test]
    fn rational_coefficients() {
        let j: PolyJson = serde_json::from_str(r#"{"var":"z","coeffs":["-1/2","3"]}"#).unwrap();
        let p = j.to_rat_poly().unwrap();
        assert_eq!(p.coeff(0), Rat::new(Int::from(-1), Int::from(2)));
        assert_eq!(PolyJson::from_poly(&p, "z").coeffs, vec!["-1/2", "3"]);
        let bad: PolyJson = serde_json::from_str(r#"{"var":"z","coeffs":["x"]}"#).unwrap();
        assert!(matches!(
            bad.to_rat_poly(),
            Err(FormatError::Coefficient(_))
        ));
    }

    #[test]
    fn zeta_accepts_numbers_and_strings() {
        let z = parse_zeta(r#"{"q":2,"numerator":["1","0","2"]}"#).unwrap();
        assert_eq!(z.genus(), 1);
        let z2 = parse_zeta(r#"{"q":2,"numerator":[1,0,2]}"#).unwrap();
        assert_eq!(z, z2);
        assert!(matches!(
            parse_zeta(r#"{"q":6,"numerator":["1"]}"#),
            Err(FormatError::Zeta(_))
        ));
        let back = serde_json::to_string(&CurveZetaJson::from_zeta(&z)).unwrap();
        assert_eq!(back, r#"{"q":2,"numerator":["1","0","2"]}"#);
    }

    #[test]
    fn divisor_is_made_monic() {
        let d =
            parse_divisor(r#"{"finite":{"var":"z","coeffs":["-2","2"]},"inf_mult":1}"#).unwrap();
        let j = serde_json::to_string(&PDivisorJson::from_divisor(&d)).unwrap();
        assert_eq!(
            j,
            r#"{"finite":{"var":"z","coeffs":["-1","1"]},"inf_mult":1}"#
        );
    }

    #[test]
    fn quot_point_shape() {
        let x = PDivisor::point(Rat::zero());
        let p = quotvortex_core::vortex::theta(&x, &PDivisor::empty(), 1);
        let v = serde_json::to_value(QuotPointJson::from_point(&p)).unwrap();
        assert_eq!(v["dp"], 1);
        assert_eq!(v["dz"], 0);
        assert_eq!(
            v["E"]["finite_basis"][0]["coeffs"],
            serde_json::json!(["0", "1"])
        );
        assert_eq!(v["E"]["inf_exponents"], serde_json::json!([0]));
        assert!(v["E"]["finite_basis"][0].get("den").is_none());
    }
}
