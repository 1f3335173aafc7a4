//! Command-line front end. Every command prints JSON (compact unless
//! `--pretty`) and exits with a stable code:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success, or the checked property holds    |
//! | 1    | the checked property is false             |
//! | 2    | validation failure of an input            |
//! | 3    | unreadable file or malformed document     |
//! | 4    | capacity bound exceeded                   |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bns::bns_verdict;
use crate::continuity::{is_continuous_topologically, PointMap};
use crate::error::{Error, Result};
use crate::formats::{read_json, LatticeOrQuantaleDoc, QuantaleDoc, SpaceDoc, TopologyDoc};
use crate::omega::{enumerate_omega, enumerate_omega_width, flagg_distance, flagg_space, OmegaDoc, OmegaElement};
use crate::quantale::CheckPolicy;
use crate::topology::{enumerate_topologies, members, FiniteTopology};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

/// Largest `|τ|` the sweep runs the value-quantale check for.
const SWEEP_QUANTALE_LIMIT: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "metrize", version, about = "Value-quantale metrization of finite topologies")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the topology axioms for a topology document.
    ValidateTopology { file: PathBuf },

    /// Build the Ω(τ)-continuity space of a topology.
    Flagg {
        file: PathBuf,
        /// Recompute the open-ball topology and compare with the input.
        #[arg(long)]
        round_trip: bool,
        /// Materialize Ω(τ) (|τ| <= 5) and verify the value-quantale axioms.
        #[arg(long)]
        enumerate_quantale: bool,
        /// Write the Hasse diagram of the enumerated Ω(τ) to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Report the open ball around this point (by name)...
        #[arg(long, value_name = "POINT", requires = "radius")]
        ball: Option<String>,
        /// ...of this radius, an antichain of open-index lists such as `[[1]]`.
        #[arg(long, value_name = "ANTICHAIN", requires = "ball")]
        radius: Option<String>,
        /// Seed for the sampled part of the axiom check.
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Separation and basis conditions, and the metrizability verdict.
    Bns { file: PathBuf },

    /// Verify the quantale and value-quantale axioms of a finite quantale.
    QuantaleCheck {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        exhaustive_limit: Option<usize>,
    },

    /// Compare ε-δ and topological continuity of a point map.
    Continuity { map: PathBuf, source: PathBuf, target: PathBuf },

    /// Round trip, BNS verdict and Ω(τ) check for every topology on n <= 4 points.
    Sweep { n: usize },

    /// List every labeled topology on n <= 4 points.
    EnumerateTopologies { n: usize },

    /// Graphviz Hasse diagram of a lattice or quantale document.
    Hasse { file: PathBuf },
}

struct Output<'a> {
    out: &'a mut dyn Write,
    pretty: bool,
}

impl Output<'_> {
    fn json<T: Serialize>(&mut self, v: &T) {
        let text = if self.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }
            .expect("reports serialize");
        let _ = writeln!(self.out, "{text}");
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Format(_) => EXIT_FORMAT,
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::NotMetrizable { .. } => EXIT_FALSE,
        Error::Input(_) | Error::Invalid(_) | Error::Topology(_) | Error::Mismatch { .. } | Error::Unsupported(_) => {
            EXIT_INVALID
        }
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Io(_) => "io",
        Error::Format(_) => "format",
        Error::Capacity(_) => "capacity",
        Error::NotMetrizable { .. } => "not_metrizable",
        Error::Topology(_) => "topology",
        Error::Input(_) => "input",
        Error::Invalid(_) => "invalid",
        Error::Mismatch { .. } => "mismatch",
        Error::Unsupported(_) => "unsupported",
    };
    let mut v = json!({ "error": kind, "message": e.to_string() });
    if let Error::Topology(violation) = e {
        v["witness"] = serde_json::to_value(violation).expect("violations serialize");
    }
    v
}

/// Parses `args` (including the program name) and runs one command.
///
/// ```
/// let dir = tempfile::tempdir().unwrap();
/// let file = dir.path().join("sierpinski.json");
/// std::fs::write(&file, r#"{"points": ["0", "1"], "opens": [[], [1], [0, 1]]}"#).unwrap();
/// let file = file.to_str().unwrap();
///
/// let mut out = Vec::new();
/// let args = ["metrize", "flagg", file, "--ball", "1", "--radius", "[[1]]", "--enumerate-quantale"];
/// assert_eq!(metrize::cli::run(args, &mut out), 0);
/// let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
/// assert_eq!(v["distances"][0][1]["display"], "0");
/// assert_eq!(v["distances"][1][0]["display"], "↓{∅,S}");
/// assert_eq!(v["ball"]["members"], serde_json::json!(["1"]));
/// assert_eq!(v["quantale"]["elements"], 20);
/// assert_eq!(v["quantale"]["report"]["value_quantale"], true);
///
/// let mut out = Vec::new();
/// assert_eq!(metrize::cli::run(["metrize", "bns", file], &mut out), 1);
/// let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
/// assert_eq!((v["regular"].as_bool(), v["metrizable"].as_bool()), (Some(false), Some(false)));
/// ```
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let mut output = Output { out, pretty: cli.pretty };
    match dispatch(cli.command, &mut output) {
        Ok(code) => code,
        Err(e) => {
            output.json(&error_json(&e));
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut Output<'_>) -> Result<i32> {
    match command {
        Command::ValidateTopology { file } => {
            let doc: TopologyDoc = read_json(&file)?;
            let t = doc.to_topology()?;
            out.json(&json!({ "valid": true, "points": t.points(), "opens": t.opens().len() }));
            Ok(EXIT_OK)
        }
        Command::Flagg { file, round_trip, enumerate_quantale, dot, ball, radius, seed } => {
            let doc: TopologyDoc = read_json(&file)?;
            let t = doc.to_topology()?;
            let opts = FlaggOptions { round_trip, enumerate_quantale, dot, ball, radius, seed };
            cmd_flagg(&t, &doc.points, &opts, out)
        }
        Command::Bns { file } => {
            let doc: TopologyDoc = read_json(&file)?;
            let verdict = bns_verdict(&doc.to_topology()?);
            out.json(&verdict);
            Ok(if verdict.metrizable { EXIT_OK } else { EXIT_FALSE })
        }
        Command::QuantaleCheck { file, seed, samples, exhaustive_limit } => {
            let q = read_json::<QuantaleDoc>(&file)?.to_quantale()?;
            let defaults = CheckPolicy::default();
            let policy = CheckPolicy {
                seed: seed.unwrap_or(defaults.seed),
                samples: samples.unwrap_or(defaults.samples),
                exhaustive_limit: exhaustive_limit.unwrap_or(defaults.exhaustive_limit),
                ..defaults
            };
            let report = q.check_value_quantale(&policy);
            out.json(&json!({ "policy": policy, "report": report }));
            Ok(if report.value_quantale { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Continuity { map, source, target } => cmd_continuity(&map, &source, &target, out),
        Command::Sweep { n } => {
            let summary = sweep(n)?;
            out.json(&summary);
            Ok(if summary.failures.is_empty() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::EnumerateTopologies { n } => {
            let all = enumerate_topologies(n)?;
            let opens: Vec<Vec<Vec<usize>>> =
                all.iter().map(|t| t.opens().iter().map(|&u| members(u)).collect()).collect();
            out.json(&json!({ "n": n, "count": all.len(), "topologies": opens }));
            Ok(EXIT_OK)
        }
        Command::Hasse { file } => {
            let doc: LatticeOrQuantaleDoc = read_json(&file)?;
            let lattice = doc.lattice.to_lattice()?;
            let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("lattice");
            let _ = write!(out.out, "{}", lattice.to_dot(name));
            Ok(EXIT_OK)
        }
    }
}

struct FlaggOptions {
    round_trip: bool,
    enumerate_quantale: bool,
    dot: Option<PathBuf>,
    ball: Option<String>,
    radius: Option<String>,
    seed: Option<u64>,
}

fn distance_json(t: &FiniteTopology, names: &[String], e: &OmegaElement) -> Value {
    json!({ "antichain": e.to_doc().antichain, "display": e.describe(t, names) })
}

fn point_set_names(set: u32, names: &[String]) -> Vec<String> {
    members(set).into_iter().map(|p| names[p].clone()).collect()
}

fn cmd_flagg(t: &FiniteTopology, names: &[String], opts: &FlaggOptions, out: &mut Output<'_>) -> Result<i32> {
    let n = t.points();
    let mut code = EXIT_OK;
    let mut distances = Vec::with_capacity(n);
    for x in 0..n {
        let row: Vec<Value> =
            (0..n).map(|y| flagg_distance(t, x, y).map(|d| distance_json(t, names, &d))).collect::<Result<_>>()?;
        distances.push(row);
    }
    let mut report = json!({
        "points": names,
        "opens": t.opens().iter().map(|&u| members(u)).collect::<Vec<_>>(),
        "distances": distances,
    });

    if opts.round_trip {
        let recovered = flagg_space(t)?.open_sets()?;
        let diff = t.symmetric_difference(&recovered);
        let status = if diff.is_empty() { "EQUAL" } else { "DIFFER" };
        if !diff.is_empty() {
            code = EXIT_FALSE;
        }
        report["round_trip"] = json!({
            "status": status,
            "symmetric_difference": diff.iter().map(|&u| point_set_names(u, names)).collect::<Vec<_>>(),
        });
    }

    if let (Some(point), Some(radius)) = (&opts.ball, &opts.radius) {
        let x =
            names.iter().position(|p| p == point).ok_or_else(|| Error::Input(format!("unknown point {point:?}")))?;
        let families: Vec<Vec<usize>> = serde_json::from_str(radius)?;
        let eps = OmegaElement::from_doc(t.opens().len(), &OmegaDoc { antichain: families })?;
        let members = flagg_space(t)?.open_ball(x, &eps)?;
        report["ball"] = json!({
            "center": point,
            "radius": distance_json(t, names, &eps),
            "members": point_set_names(members, names),
        });
    }

    if opts.enumerate_quantale || opts.dot.is_some() {
        let omega = enumerate_omega(t)?;
        if opts.enumerate_quantale {
            let policy =
                CheckPolicy { seed: opts.seed.unwrap_or(CheckPolicy::default().seed), ..CheckPolicy::default() };
            let check = omega.quantale.check_value_quantale(&policy);
            if !check.value_quantale {
                code = EXIT_FALSE;
            }
            report["quantale"] = json!({ "elements": omega.size(), "policy": policy, "report": check });
        }
        if let Some(path) = &opts.dot {
            std::fs::write(path, omega.quantale.lattice().to_dot("omega"))?;
            report["dot"] = json!(path.display().to_string());
        }
    }

    out.json(&report);
    Ok(code)
}

fn load_space(path: &Path) -> Result<crate::formats::AnySpace> {
    let doc: SpaceDoc = read_json(path)?;
    doc.to_space(path.parent().unwrap_or(Path::new(".")))
}

fn cmd_continuity(map: &Path, source: &Path, target: &Path, out: &mut Output<'_>) -> Result<i32> {
    let f: PointMap = read_json(map)?;
    let src = load_space(source)?;
    let dst = load_space(target)?;
    f.check(src.points(), dst.points())?;
    let epsilon_delta = src.ball_table()?.is_continuous(&f, &dst.ball_table()?)?;
    let topological = is_continuous_topologically(&f, &src.open_sets()?, &dst.open_sets()?)?;
    out.json(&json!({ "epsilon_delta": epsilon_delta, "topological": topological, "continuous": epsilon_delta }));
    Ok(if epsilon_delta { EXIT_OK } else { EXIT_FALSE })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub spaces: usize,
    pub round_trips_equal: usize,
    pub metrizable: usize,
    pub discrete: usize,
    pub value_quantale_checked: usize,
    pub value_quantale_passed: usize,
    pub failures: Vec<String>,
}

struct SweepItem {
    equal: bool,
    metrizable: bool,
    discrete: bool,
    opens: usize,
    failures: Vec<String>,
}

/// Every labeled topology on `n` points: Flagg round trip, BNS verdict
/// against discreteness, and for `|τ| <= 4` the value-quantale check of Ω(τ).
///
/// Ω(τ) as enumerated depends only on `|τ|`, so each width is checked once
/// and the verdict applied to every topology of that width.
pub fn sweep(n: usize) -> Result<SweepSummary> {
    let topologies = enumerate_topologies(n)?;
    let items: Vec<SweepItem> = topologies
        .par_iter()
        .map(|t| {
            let mut failures = Vec::new();
            let equal = match flagg_space(t).and_then(|s| s.open_sets()) {
                Ok(r) if &r == t => true,
                Ok(r) => {
                    failures.push(format!("round trip differs for {t}: got {r}"));
                    false
                }
                Err(e) => {
                    failures.push(format!("round trip error for {t}: {e}"));
                    false
                }
            };
            let metrizable = bns_verdict(t).metrizable;
            let discrete = t.is_discrete();
            if metrizable != discrete {
                failures.push(format!("metrizable={metrizable} but discrete={discrete} for {t}"));
            }
            if metrizable {
                match crate::bns::build_metric(t).and_then(|m| m.open_sets()) {
                    Ok(r) if &r == t => {}
                    Ok(r) => failures.push(format!("metric round trip differs for {t}: got {r}")),
                    Err(e) => failures.push(format!("metric build failed for {t}: {e}")),
                }
            }
            SweepItem { equal, metrizable, discrete, opens: t.opens().len(), failures }
        })
        .collect();

    let mut verdicts = std::collections::BTreeMap::new();
    for width in items.iter().map(|i| i.opens).filter(|&w| w <= SWEEP_QUANTALE_LIMIT) {
        if let std::collections::btree_map::Entry::Vacant(slot) = verdicts.entry(width) {
            slot.insert(enumerate_omega_width(width)?.quantale.is_value_quantale());
        }
    }

    let mut summary = SweepSummary { n, spaces: topologies.len(), ..Default::default() };
    for (t, item) in topologies.iter().zip(items) {
        summary.round_trips_equal += item.equal as usize;
        summary.metrizable += item.metrizable as usize;
        summary.discrete += item.discrete as usize;
        if let Some(&ok) = verdicts.get(&item.opens) {
            summary.value_quantale_checked += 1;
            if ok {
                summary.value_quantale_passed += 1;
            } else {
                summary.failures.push(format!("Ω(τ) is not a value quantale for {t}"));
            }
        }
        summary.failures.extend(item.failures);
    }
    Ok(summary)
}
