//! Output formats for polynomials and strata listings.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use quotvortex_core::strata::StratumRow;
use quotvortex_core::{Int, Poly};

use crate::json::poly_json_string;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            _ => Err(format!(
                "unknown format {s:?} (expected json, csv, latex or text)"
            )),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "latex",
        })
    }
}

/// `1 + 4t^2 + t^4`, ascending powers.
pub fn text(p: &Poly<Int>, var: &str) -> String {
    terms(p, var, |k| format!("^{k}"))
}

/// LaTeX, ascending powers. Even and odd parts are grouped separately
/// when both are present.
pub fn latex(p: &Poly<Int>, var: &str) -> String {
    let sup = |k: usize| format!("^{{{k}}}");
    let parity = |r: usize| {
        Poly::new(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == r { c.clone() } else { Int::zero() })
                .collect(),
        )
    };
    let (even, odd) = (parity(0), parity(1));
    if even.is_zero() || odd.is_zero() {
        return terms(p, var, sup);
    }
    format!(
        "\\left({}\\right) + \\left({}\\right)",
        terms(&even, var, sup),
        terms(&odd, var, sup)
    )
}

fn terms(p: &Poly<Int>, var: &str, sup: impl Fn(usize) -> String) -> String {
    let mut s = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if k == 0 || mag != Int::from(1) {
            s.push_str(&mag.to_string());
        }
        match k {
            0 => {}
            1 => s.push_str(var),
            _ => {
                s.push_str(var);
                s.push_str(&sup(k));
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// `[1,0,2]`.
pub fn coeff_list(p: &Poly<Int>) -> String {
    let cs: Vec<String> = if p.is_zero() {
        vec!["0".into()]
    } else {
        p.coeffs().iter().map(Int::to_string).collect()
    };
    format!("[{}]", cs.join(","))
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .delimiter(b';')
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii output")
}

/// Betti numbers one per line: `k;b_k`.
pub fn betti_csv(p: &Poly<Int>) -> String {
    let mut w = csv_writer();
    w.write_record(["k", "b_k"]).expect("in-memory writer");
    for (k, c) in p.coeffs().iter().enumerate() {
        w.write_record([k.to_string(), c.to_string()])
            .expect("in-memory writer");
    }
    finish(w)
}

/// A single polynomial in any format, with a trailing newline.
pub fn poly(p: &Poly<Int>, var: &str, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", text(p, var)),
        Format::Latex => format!("{}\n", latex(p, var)),
        Format::Json => format!("{}\n", poly_json_string(p, var)),
        Format::Csv => betti_csv(p),
    }
}

pub fn strata_csv(rows: &[StratumRow]) -> String {
    let mut w = csv_writer();
    w.write_record(["P", "Q", "codim", "component_poly"])
        .expect("in-memory writer");
    for row in rows {
        w.write_record([
            row.p.to_string(),
            row.q.to_string(),
            row.codim.to_string(),
            coeff_list(&row.component_poly),
        ])
        .expect("in-memory writer");
    }
    finish(w)
}

pub fn strata(rows: &[StratumRow], format: Format) -> String {
    match format {
        Format::Csv => strata_csv(rows),
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "P": r.p.parts(),
                        "Q": r.q.parts(),
                        "codim": r.codim,
                        "component_poly": crate::json::PolyJson::from_poly(&r.component_poly, "t"),
                    })
                })
                .collect();
            format!("{}\n", serde_json::Value::Array(items))
        }
        Format::Text | Format::Latex => {
            let mut s = String::new();
            for r in rows {
                let poly = if format == Format::Latex {
                    latex(&r.component_poly, "t")
                } else {
                    text(&r.component_poly, "t")
                };
                s.push_str(&format!("P={} Q={} codim={} {}\n", r.p, r.q, r.codim, poly));
            }
            s
        }
    }
}

/// One line of a grid table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRow {
    pub r: usize,
    pub dp: usize,
    pub dz: usize,
    pub genus: u32,
    pub poly: Poly<Int>,
}

pub fn grid_csv(rows: &[GridRow]) -> String {
    let mut w = csv_writer();
    w.write_record(["r", "dp", "dz", "genus", "euler", "poincare"])
        .expect("in-memory writer");
    for g in rows {
        w.write_record([
            g.r.to_string(),
            g.dp.to_string(),
            g.dz.to_string(),
            g.genus.to_string(),
            g.poly.eval(&Int::from(-1)).to_string(),
            coeff_list(&g.poly),
        ])
        .expect("in-memory writer");
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quotvortex_core::strata::strata_table;

    fn ip(c: &[i64]) -> Poly<Int> {
        Poly::new(c.iter().map(|&x| Int::from(x)).collect())
    }

    #[test]
    fn text_forms() {
        assert_eq!(text(&ip(&[1]), "t"), "1");
        assert_eq!(text(&ip(&[]), "t"), "0");
        assert_eq!(
            text(&ip(&[1, 4, 6, 4, 1]), "t"),
            "1 + 4t + 6t^2 + 4t^3 + t^4"
        );
        assert_eq!(text(&ip(&[0, -1, 0, 2]), "t"), "-t + 2t^3");
        assert_eq!(text(&ip(&[-3, 1]), "t"), "-3 + t");
    }

    #[test]
    fn latex_groups_parities() {
        assert_eq!(latex(&ip(&[1, 0, 2, 0, 1]), "t"), "1 + 2t^{2} + t^{4}");
        assert_eq!(
            latex(&ip(&[1, 2, 2, 2, 1]), "t"),
            "\\left(1 + 2t^{2} + t^{4}\\right) + \\left(2t + 2t^{3}\\right)"
        );
    }

    #[test]
    fn poly_formats() {
        let p = ip(&[1, 0, 1]);
        assert_eq!(
            poly(&p, "t", Format::Json),
            "{\"var\":\"t\",\"coeffs\":[\"1\",\"0\",\"1\"]}\n"
        );
        assert_eq!(poly(&p, "t", Format::Csv), "k;b_k\n0;1\n1;0\n2;1\n");
        assert_eq!(coeff_list(&p), "[1,0,1]");
    }

    #[test]
    fn strata_listing() {
        let rows = strata_table(2, 1, 0, 0);
        assert_eq!(
            strata_csv(&rows),
            "P;Q;codim;component_poly\n(1,0);(0,0);0;[1,0,1]\n(0,1);(0,0);1;[1,0,1]\n"
        );
        let text = strata(&rows, Format::Text);
        assert_eq!(
            text.lines().next().unwrap(),
            "P=(1,0) Q=(0,0) codim=0 1 + t^2"
        );
        let json: serde_json::Value = serde_json::from_str(&strata(&rows, Format::Json)).unwrap();
        assert_eq!(json[1]["codim"], 1);
    }

    #[test]
    fn format_names() {
        for f in [Format::Text, Format::Json, Format::Csv, Format::Latex] {
            assert_eq!(f.to_string().parse::<Format>().unwrap(), f);
        }
        assert!("xml".parse::<Format>().is_err());
    }
}
