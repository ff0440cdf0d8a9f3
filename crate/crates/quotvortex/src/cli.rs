//! Command-line interface.
//!
//! Exit codes: 0 success, 1 a self-check failed, 2 usage or parse error,
//! 3 the input is well formed but mathematically unusable (singular
//! matrix, invalid zeta data).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use quotvortex_core::strata::{pair_count, GridLimits};
use quotvortex_core::sym::{CurveZeta, SymError};
use quotvortex_core::vortex::{
    delta, equivalence_witness, is_in_q0, moduli_point, snf_degrees, theta, MeroMap, PDivisor,
    QuotPoint, VortexError,
};
use quotvortex_core::{Poly, Rat};
use serde_json::json;

use crate::json::{self as wire, FormatError, PDivisorJson, QuotPointJson};
use crate::meromap::{self, ParseError};
use crate::parallel::Evaluator;
use crate::render::{self, Format, GridRow};
use crate::selfcheck::{self, Fault};

#[derive(Debug, Parser)]
#[command(
    name = "quotvortex",
    version,
    about = "Exact invariants of generalized Quot schemes and vortex pairs on P^1"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poincaré polynomial of Quot(r, dp, dz) for a curve of the given genus.
    Betti(Shape),
    /// CSV grid of Poincaré polynomials for all r' <= r, dp' <= dp, dz' <= dz.
    Table(Shape),
    /// Fixed components with their codimensions.
    Strata(Shape),
    /// Number of points over a finite field.
    Count(CountArgs),
    /// Meromorphic bundle maps on P^1.
    #[command(subcommand)]
    Vortex(VortexCommand),
    /// Run the acceptance checks.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Args)]
pub struct Shape {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub r: u32,
    #[arg(long, default_value_t = 0)]
    pub dp: u32,
    #[arg(long, default_value_t = 0)]
    pub dz: u32,
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
    #[arg(long, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("field").required(true).args(["zeta_file", "q"])))]
pub struct CountArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub r: u32,
    #[arg(long, default_value_t = 0)]
    pub dp: u32,
    #[arg(long, default_value_t = 0)]
    pub dz: u32,
    /// Zeta data of the curve as JSON.
    #[arg(long)]
    pub zeta_file: Option<PathBuf>,
    /// Shortcut for the projective line over F_q.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum VortexCommand {
    /// Pole/zero decomposition of a map.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Decide whether two maps define the same vortex pair.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// The point θ(x, y) for two divisors given as JSON files.
    Theta {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    NegatedWeight,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    /// Cap on rank and degrees in the exhaustive grids.
    #[arg(long)]
    pub grid_max: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, default_value = "text")]
    pub format: Format,
    #[arg(long, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

impl clap::builder::ValueParserFactory for Format {
    type Parser = clap::builder::ValueParser;

    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Format>())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Zeta(SymError::InvalidZeta(_)) | FormatError::Vortex(_) => {
                CliError::Math(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<MeroMap, CliError> {
    meromap::parse_meromap(&read(path)?).map_err(|e| {
        let msg = format!("{}: {e}", path.display());
        match e {
            ParseError::Vortex(VortexError::SingularMatrix) => CliError::Math(msg),
            _ => CliError::Usage(msg),
        }
    })
}

fn evaluator(threads: u32) -> Result<Evaluator, CliError> {
    Evaluator::new(threads as usize).map_err(|e| CliError::Usage(e.to_string()))
}

fn warn_if_large(r: usize, dp: usize, dz: usize) {
    let limits = GridLimits::default();
    if r > limits.max_r || dp.max(dz) > limits.max_d {
        log::warn!(
            "r={r}, d={} is outside the tabulated range r <= {}, d <= {}",
            dp.max(dz),
            limits.max_r,
            limits.max_d
        );
    }
    if limits.exceeds_pair_warning(r, dp, dz) {
        log::warn!("{} strata pairs; this will be slow", pair_count(r, dp, dz));
    }
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let text = match cli.command {
        Command::Betti(s) => betti(&s)?,
        Command::Table(s) => table(&s)?,
        Command::Strata(s) => {
            let (r, dp, dz) = (s.r as usize, s.dp as usize, s.dz as usize);
            warn_if_large(r, dp, dz);
            let rows = evaluator(s.threads)?.strata_table(r, dp, dz, s.genus);
            render::strata(&rows, s.format)
        }
        Command::Count(c) => count(&c)?,
        Command::Vortex(v) => vortex(v)?,
        Command::Selfcheck(s) => {
            let (report, failure) = run_selfcheck(&s)?;
            out.write_all(report.as_bytes())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            return match failure {
                Some(f) => Err(CliError::CheckFailed(f)),
                None => Ok(()),
            };
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn betti(s: &Shape) -> Result<String, CliError> {
    let (r, dp, dz) = (s.r as usize, s.dp as usize, s.dz as usize);
    warn_if_large(r, dp, dz);
    let p = evaluator(s.threads)?.gen_quot_poincare(r, dp, dz, s.genus);
    Ok(render::poly(&p, "t", s.format))
}

fn table(s: &Shape) -> Result<String, CliError> {
    let ev = evaluator(s.threads)?;
    let mut rows = Vec::new();
    for r in 1..=s.r as usize {
        for dp in 0..=s.dp as usize {
            for dz in 0..=s.dz as usize {
                rows.push(GridRow {
                    r,
                    dp,
                    dz,
                    genus: s.genus,
                    poly: ev.gen_quot_poincare(r, dp, dz, s.genus),
                });
            }
        }
    }
    Ok(match s.format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|g| {
                    json!({"r": g.r, "dp": g.dp, "dz": g.dz, "genus": g.genus,
                           "poincare": wire::PolyJson::from_poly(&g.poly, "t")})
                })
                .collect();
            format!("{}\n", serde_json::Value::Array(items))
        }
        _ => render::grid_csv(&rows),
    })
}

fn count(c: &CountArgs) -> Result<String, CliError> {
    let zeta = match (&c.zeta_file, c.q) {
        (Some(path), _) => wire::parse_zeta(&read(path)?)?,
        (None, Some(q)) => {
            CurveZeta::projective_line(q).map_err(|e| CliError::Math(e.to_string()))?
        }
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let n = quotvortex_core::strata::gen_quot_point_count(
        c.r as usize,
        c.dp as usize,
        c.dz as usize,
        &zeta,
    );
    Ok(match c.format {
        Format::Json => format!(
            "{}\n",
            json!({"q": zeta.q(), "genus": zeta.genus(), "count": n.to_string()})
        ),
        _ => format!("{n}\n"),
    })
}

/// `z^2 + 1` with its rational points listed when there are any.
fn divisor_text(d: &PDivisor) -> String {
    let mut parts = Vec::new();
    if !d.finite().is_one() {
        parts.push(format!("div({})", meromap::render_zpoly(d.finite())));
    }
    if d.inf_mult() > 0 {
        parts.push(format!("{}*inf", d.inf_mult()));
    }
    let body = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    };
    let support = support_text(d.finite());
    if support.is_empty() {
        body
    } else {
        format!("{body}  [{support}]")
    }
}

/// Best-effort support: rational roots with multiplicity, then whatever
/// factor remains.
fn support_text(p: &Poly<Rat>) -> String {
    let roots = p.rational_roots();
    let mut rest = p.clone();
    let mut items: Vec<String> = Vec::new();
    for (a, m) in &roots {
        let lin = Poly::new(vec![-a.clone(), Rat::one()]);
        for _ in 0..*m {
            rest = rest.exact_div(&lin).expect("root divides");
        }
        items.push(if *m == 1 {
            format!("z={a}")
        } else {
            format!("z={a} (x{m})")
        });
    }
    if rest.degree().unwrap_or(0) > 0 {
        items.push(format!("irrational part {}", meromap::render_zpoly(&rest)));
    }
    items.join(", ")
}

fn point_report(p: &QuotPoint, snf: Option<(u64, u64)>, format: Format) -> String {
    let (d1, d2) = delta(p);
    let q0 = is_in_q0(p);
    let point = QuotPointJson::from_point(p);
    match format {
        Format::Json => {
            let mut obj = json!({
                "dp": p.dp(),
                "dz": p.dz(),
                "delta1": PDivisorJson::from_divisor(&d1),
                "delta2": PDivisorJson::from_divisor(&d2),
                "in_q0": q0,
                "quot_point": point,
            });
            if let Some((sp, sz)) = snf {
                obj["snf_degrees"] = json!([sp, sz]);
            }
            format!("{obj}\n")
        }
        _ => {
            let mut s = format!("dp={}\ndz={}\n", p.dp(), p.dz());
            s.push_str(&format!("delta1: {}\n", divisor_text(&d1)));
            s.push_str(&format!("delta2: {}\n", divisor_text(&d2)));
            s.push_str(&format!("in_q0: {q0}\n"));
            if let Some((sp, sz)) = snf {
                s.push_str(&format!("snf_degrees: dp={sp} dz={sz}\n"));
            }
            s.push_str(&format!(
                "quot_point: {}\n",
                serde_json::to_string(&point).expect("serializable")
            ));
            s
        }
    }
}

fn vortex(cmd: VortexCommand) -> Result<String, CliError> {
    match cmd {
        VortexCommand::Analyze { file, format } => {
            let f = load_map(&file)?;
            let p = moduli_point(&f);
            let snf = snf_degrees(&f).map_err(|e| CliError::Math(e.to_string()))?;
            Ok(point_report(&p, Some(snf), format))
        }
        VortexCommand::Equiv { a, b, format } => {
            let (fa, fb) = (load_map(&a)?, load_map(&b)?);
            if fa.rank() != fb.rank() {
                return Err(CliError::Usage(format!(
                    "ranks differ: {} and {}",
                    fa.rank(),
                    fb.rank()
                )));
            }
            let beta = equivalence_witness(&fa, &fb).map_err(|e| CliError::Math(e.to_string()))?;
            let rows = |m: &quotvortex_core::Mat<quotvortex_core::RatFunc>| -> Vec<Vec<String>> {
                (0..m.rows())
                    .map(|i| {
                        (0..m.cols())
                            .map(|j| meromap::render_ratfunc(m.get(i, j)))
                            .collect()
                    })
                    .collect()
            };
            Ok(match format {
                Format::Json => {
                    format!(
                        "{}\n",
                        json!({"equivalent": beta.is_some(), "beta": beta.as_ref().map(rows)})
                    )
                }
                _ => match beta {
                    Some(m) => {
                        let body: Vec<String> =
                            rows(&m).into_iter().map(|r| r.join(", ")).collect();
                        format!("equivalent: true\nbeta: [ {} ]\n", body.join(" ; "))
                    }
                    None => "equivalent: false\n".into(),
                },
            })
        }
        VortexCommand::Theta { x, y, r, format } => {
            let x = wire::parse_divisor(&read(&x)?)?;
            let y = wire::parse_divisor(&read(&y)?)?;
            Ok(point_report(&theta(&x, &y, r as usize), None, format))
        }
    }
}

fn run_selfcheck(s: &SelfcheckArgs) -> Result<(String, Option<String>), CliError> {
    let opts = selfcheck::Options {
        grid_max: s.grid_max,
        threads: s.threads as usize,
        seed: s.seed,
        fault: s
            .inject_fault
            .map(|FaultArg::NegatedWeight| Fault::NegatedWeight),
    };
    let outcomes = selfcheck::run(opts).map_err(|e| CliError::Usage(e.to_string()))?;
    let failure = outcomes
        .iter()
        .find(|o| !o.passed)
        .map(|o| format!("criterion {} ({}) failed: {}", o.id, o.name, o.detail));
    let report = match s.format {
        Format::Json => {
            let items: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    json!({"id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail,
                                "seconds": o.elapsed.as_secs_f64()})
                })
                .collect();
            format!("{}\n", serde_json::Value::Array(items))
        }
        _ => {
            let mut s: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            let passed = outcomes.iter().filter(|o| o.passed).count();
            s.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
            s
        }
    };
    Ok((report, failure))
}
