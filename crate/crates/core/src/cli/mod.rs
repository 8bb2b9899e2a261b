//! The `equicohom` command line.
//!
//! Exit codes: 0 success, 1 suite failure, 2 usage or configuration error,
//! 3 mathematical inconsistency.

mod dj;
mod oracle;
mod suite;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::brauer::{brute_force, build_system, solve};
use crate::burnside::{inc_class, nfca};
use crate::config::{parse, serialize, validate_standard_form, ActionConfig};
use crate::error::{Error, Result};
use crate::finabelian::FinAbGroup;
use crate::groupcoh::{cohomology, FiniteGroupSpec};
use crate::report::{compute_report, Amitsur, Delta3, H1Pic, InvariantReport};

pub use dj::{dj_grid, expected_rank, generate_dj};
pub use oracle::{oracle, random_residue_config, random_small_group, Trial};
pub use suite::{
    default_fixtures_dir, expectations, load_fixture, load_fixtures, paper_suite, Check, Fixture,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "equicohom",
    version,
    about = "Brauer groups and cohomological invariants of finite group actions on rational surfaces"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Br([X/G]), H^i(G, k^×) and H^1(G, Pic X) for a configuration.
    Report {
        path: PathBuf,
        /// Invariant factors of an externally known H^1(G, Pic X), e.g. `3` or `2,2`.
        #[arg(long, value_delimiter = ',')]
        known_h1: Option<Vec<u64>>,
    },
    /// Solve the residue system of a configuration.
    Brauer {
        path: PathBuf,
        /// Also enumerate all assignments and compare.
        #[arg(long)]
        brute_force: bool,
    },
    /// H^1, H^2, H^3 of a group with coefficients k^×.
    Cohomology {
        /// Configuration whose group to use.
        path: Option<PathBuf>,
        /// Group given directly: cyclic orders like `3,3` or a name like `D8`.
        #[arg(long, conflicts_with = "path")]
        group: Option<String>,
    },
    /// Incompressible symbols and, for cyclic groups, the NFCA.
    Burnside {
        path: PathBuf,
        /// Generator `g = u · g0` used for the NFCA.
        #[arg(long, default_value_t = 1)]
        generator: u64,
    },
    /// Emit a de Jonquières-family configuration.
    Dj {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        fixed: u32,
    },
    /// Check every fixture against the expectations in its metadata.
    PaperSuite {
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Randomized solver and cohomology cross-checks.
    Oracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: u64,
    },
}

/// Output of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => EXIT_INCONSISTENT,
        _ => EXIT_CONFIG,
    }
}

fn load(path: &Path) -> Result<ActionConfig> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn parse_group(s: &str) -> Result<FiniteGroupSpec> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Error::config(e.to_string()));
    }
    if s.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        return FiniteGroupSpec::named(s);
    }
    let factors = s
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| Error::config(format!("group factor `{x}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = FiniteGroupSpec::Abelian(factors);
    g.validate()?;
    Ok(g)
}

fn render_report(r: &InvariantReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Br([X/G])      = {}", r.brauer);
    let _ = writeln!(s, "H2(G, k^x)     = {}", r.h2);
    let _ = writeln!(s, "H3(G, k^x)     = {}", r.h3);
    let h1 = match &r.h1_pic {
        H1Pic::Exact { exact } => exact.to_string(),
        H1Pic::OrderOnly { order, candidates } => {
            let c: Vec<String> = candidates.iter().map(ToString::to_string).collect();
            format!("order {order}, candidates: {}", c.join("; "))
        }
        H1Pic::Undetermined { undetermined } => format!("undetermined ({undetermined})"),
    };
    let _ = writeln!(s, "H1(G, Pic X)   = {h1}");
    let amitsur = match &r.amitsur {
        Amitsur::Zero(why) => format!("zero ({why})"),
        Amitsur::Unknown => "unknown".into(),
    };
    let delta3 = match &r.delta3 {
        Delta3::Zero(why) => format!("zero ({why})"),
        Delta3::Nontrivial(why) => format!("nontrivial ({why})"),
        Delta3::Unknown => "unknown".into(),
    };
    let _ = writeln!(s, "Amitsur        = {amitsur}");
    let _ = writeln!(s, "delta3         = {delta3}");
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run_command(cmd: Command, format: Format) -> Result<(i32, String)> {
    let json = format == Format::Json;
    match cmd {
        Command::Report { path, known_h1 } => {
            let c = load(&path)?;
            let known = known_h1
                .map(|f| FinAbGroup::from_cyclic_factors(&f))
                .transpose()?;
            let r = compute_report(&c, known.as_ref())?;
            let warnings: Vec<String> = validate_standard_form(&c)
                .into_iter()
                .map(|w| w.message)
                .collect();
            if json {
                return Ok((EXIT_OK, pretty(&r)));
            }
            let mut out = render_report(&r);
            for w in warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            Ok((EXIT_OK, out))
        }
        Command::Brauer {
            path,
            brute_force: check,
        } => {
            let c = load(&path)?;
            let s = build_system(&c);
            let result = solve(&s)?;
            let oracle = if check { Some(brute_force(&s)?) } else { None };
            if json {
                let v = json!({
                    "group": result.group,
                    "unknowns": s.unknowns,
                    "constraints": s.constraints,
                    "free_part": s.free_part,
                    "generators": result.generators,
                    "brute_force": oracle,
                });
                return Ok((EXIT_OK, pretty(&v)));
            }
            let mut out = format!(
                "Br([X/G]) = {}\n{} unknowns, {} constraints, unramified part {}\n",
                result.group,
                s.unknowns.len(),
                s.constraints.len(),
                s.free_part
            );
            if let Some(b) = oracle {
                let _ = writeln!(
                    out,
                    "brute force: {b} ({})",
                    if b == result.group {
                        "agrees"
                    } else {
                        "DISAGREES"
                    }
                );
            }
            Ok((EXIT_OK, out))
        }
        Command::Cohomology { path, group } => {
            let g = match (path, group) {
                (Some(p), _) => load(&p)?.group,
                (None, Some(s)) => parse_group(&s)?,
                (None, None) => {
                    return Err(Error::config(
                        "cohomology needs a configuration path or --group",
                    ))
                }
            };
            let t = cohomology(&g)?;
            if json {
                return Ok((EXIT_OK, pretty(&t)));
            }
            Ok((
                EXIT_OK,
                format!("G = {g}\nH1 = {}\nH2 = {}\nH3 = {}\n", t.h1, t.h2, t.h3),
            ))
        }
        Command::Burnside { path, generator } => {
            let c = load(&path)?;
            let inc = inc_class(&c)?;
            let nf = if c.group.is_cyclic() {
                Some(nfca(&c, generator)?)
            } else {
                None
            };
            if json {
                return Ok((EXIT_OK, pretty(&json!({ "inc": inc.symbols, "nfca": nf }))));
            }
            let mut out = format!("{} incompressible symbol(s)\n", inc.symbols.len());
            for s in &inc.symbols {
                let _ = writeln!(
                    out,
                    "  (H = Z/{}, Z = {} of order {} [{}], K genus {} [{}], beta = {})",
                    s.h,
                    if s.z.cyclic { "cyclic" } else { "noncyclic" },
                    s.z.order,
                    s.z.label,
                    s.k.genus,
                    s.k.label,
                    s.beta
                );
            }
            if let Some(nf) = nf {
                let _ = writeln!(
                    out,
                    "NFCA(g^{}) over r = 1..{}:",
                    nf.generator_tag,
                    nf.order.saturating_sub(1)
                );
                for (r, e) in nf.entries.iter().enumerate() {
                    match e {
                        Some(e) => {
                            let _ = writeln!(
                                out,
                                "  r = {}: {} genus {} [{}]",
                                r + 1,
                                e.curve_id,
                                e.genus,
                                e.residual_label
                            );
                        }
                        None => {
                            let _ = writeln!(out, "  r = {}: -", r + 1);
                        }
                    }
                }
            }
            Ok((EXIT_OK, out))
        }
        Command::Dj { n, r, fixed } => Ok((EXIT_OK, serialize(&generate_dj(n, r, fixed)?) + "\n")),
        Command::PaperSuite { fixtures } => {
            let dir = fixtures.unwrap_or_else(default_fixtures_dir);
            let checks = paper_suite(&dir)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let code = if failed == 0 {
                EXIT_OK
            } else {
                EXIT_SUITE_FAILURE
            };
            if json {
                return Ok((code, pretty(&checks)));
            }
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(
                    out,
                    "{} {:<12} {:<24} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.fixture,
                    c.check,
                    c.detail
                );
            }
            let _ = writeln!(out, "{} checks, {failed} failed", checks.len());
            Ok((code, out))
        }
        Command::Oracle { seed, count } => {
            let trials = oracle(seed, count);
            let failed = trials.iter().filter(|t| !t.passed).count();
            let code = if failed == 0 {
                EXIT_OK
            } else {
                EXIT_SUITE_FAILURE
            };
            if json {
                return Ok((code, pretty(&trials)));
            }
            let mut out = String::new();
            for t in trials.iter().filter(|t| !t.passed) {
                let _ = writeln!(out, "FAIL {} #{}: {}", t.kind, t.index, t.detail);
            }
            let _ = writeln!(
                out,
                "{} trials (seed {seed}), {failed} failed",
                trials.len()
            );
            Ok((code, out))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: EXIT_CONFIG,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match run_command(cli.command, cli.format) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
