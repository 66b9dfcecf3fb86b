//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num::complex::Complex64;

use crate::branch::{Branch, ComplexPoint};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::implicit::implicitize;
use crate::invariants::{equisingular, invariant_set, list};
use crate::poly::BivarPoly;
use crate::puiseux::newton_puiseux;
use crate::isotopy::{build_plan_with, verify_isotopy, FieldKind, FlowReport, IsotopyPlan, Orientation, PlanOptions};
use crate::resolution::{dual_graph, resolve, DEFAULT_MAX_STEPS};

#[derive(Parser, Debug)]
#[command(name = "branchiso", version, about = "Resolve plane curve branches and build isotopies between equisingular ones")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Blow up a branch until it is resolved.
    Resolve { file: PathBuf },
    /// Characteristic exponents, semigroup, delta and Milnor number.
    Invariants { file: PathBuf },
    /// Compare the dual graphs of two branches.
    Equisingular { a: PathBuf, b: PathBuf },
    /// Build and verify an isotopy carrying the first branch onto the second.
    Isotopy { a: PathBuf, b: PathBuf },
    /// Print the implicit equation of a polynomial branch.
    Implicitize { file: PathBuf },
}

#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Write the dual graph in DOT format.
    #[arg(long, global = true, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Write one record per verification sample.
    #[arg(long, global = true, value_name = "PATH")]
    pub trace: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    pub precision: Option<u32>,
    #[arg(long, global = true, value_name = "H")]
    pub step: Option<f64>,
    #[arg(long, global = true, value_name = "N")]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_name = "R")]
    pub radius: Option<f64>,
    #[arg(long, global = true, value_name = "E")]
    pub tol: Option<f64>,
    /// Exit 2 when the branches are not equisingular.
    #[arg(long, global = true)]
    pub exit_status: bool,
    /// Omit the elapsed-time line.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Print the effective configuration.
    #[arg(long, global = true)]
    pub show_config: bool,
}

impl Flags {
    pub fn config(&self) -> Config {
        let d = Config::default();
        Config {
            precision: self.precision.unwrap_or(d.precision),
            step: self.step.unwrap_or(d.step),
            samples: self.samples.unwrap_or(d.samples),
            radius: self.radius.unwrap_or(d.radius),
            tol: self.tol.unwrap_or(d.tol),
            exit_status: self.exit_status,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub elapsed: Duration,
    pub outcome: Outcome,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

/// Text produced by a command and its exit status.
struct Done {
    text: String,
    outcome: Outcome,
    code: i32,
}

fn ok(text: String) -> Result<Done> {
    Ok(Done {
        text,
        outcome: Outcome::Ok,
        code: 0,
    })
}

fn load(path: &Path, cfg: &Config) -> Result<Branch> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    let first = crate::parse::content_lines(&text).first().map(|l| l.2);
    if first.is_some_and(|l| l.starts_with('f')) {
        let f = BivarPoly::parse(&text)?;
        let b = newton_puiseux(&f, MAX_RAMIFICATION, cfg.precision)?;
        return Ok(b.with_label(label));
    }
    Ok(Branch::parse_labeled(&text, label)?.extend_precision(cfg.precision))
}

/// Largest `n` accepted when a polynomial file is expanded.
const MAX_RAMIFICATION: u32 = 32;

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.9e}{:+.9e}i", z.re, z.im)
}

fn fmt_p(p: &ComplexPoint) -> String {
    format!("{},{}", fmt_c(p.x), fmt_c(p.y))
}

fn cmd_resolve(file: &Path, flags: &Flags, cfg: &Config) -> Result<Done> {
    let b = load(file, cfg)?;
    let rd = resolve(&b, DEFAULT_MAX_STEPS)?;
    let g = dual_graph(&rd);
    let mut s = String::new();
    let _ = writeln!(s, "r={}  mult={}", rd.r(), list(&rd.multiplicities()));
    for step in &rd.steps {
        let prox: Vec<String> = step.proximate_to.iter().map(|i| format!("E{i}")).collect();
        let _ = writeln!(
            s,
            "E{}: m={} {} proximate=[{}] chart={}{:+}",
            step.centre_index,
            step.multiplicity,
            if step.satellite { "satellite" } else { "free" },
            prox.join(","),
            step.chart,
            step.translation
        );
    }
    let weights: Vec<String> = g.vertices.iter().map(|(l, w)| format!("{l}={w}")).collect();
    let _ = writeln!(s, "weights: {}", weights.join(" "));
    let edges: String = g.edges.iter().map(|(i, j)| format!(" E{i}-E{j}")).collect();
    let _ = writeln!(s, "edges:{edges}");
    let _ = writeln!(s, "arrow: {}", g.arrow);
    if let Some(path) = &flags.dot {
        write_file(path, &g.to_dot())?;
    }
    ok(s)
}

fn cmd_invariants(file: &Path, cfg: &Config) -> Result<Done> {
    let inv = invariant_set(&load(file, cfg)?)?;
    ok(format!(
        "{} semigroup={} delta={} mu={}\n",
        inv.char_exponents,
        list(&inv.semigroup_gens),
        inv.delta,
        inv.milnor
    ))
}

fn cmd_equisingular(a: &Path, b: &Path, cfg: &Config) -> Result<Done> {
    let v = equisingular(&load(a, cfg)?, &load(b, cfg)?)?;
    if v.equal {
        ok("EQUISINGULAR\n".into())
    } else {
        Ok(Done {
            text: format!("NOT EQUISINGULAR: {}\n", v.certificate),
            outcome: Outcome::Fail,
            code: if cfg.exit_status { 2 } else { 0 },
        })
    }
}

fn describe_plan(plan: &IsotopyPlan, s: &mut String) {
    for (i, stage) in plan.stages.iter().enumerate() {
        let f = &stage.field;
        let kind = match &f.kind {
            FieldKind::Multiplicative { lambda, frame } => format!(
                "multiplicative lambda={} frame=({},{})",
                fmt_c(*lambda),
                frame.a,
                frame.b
            ),
            FieldKind::GraphMatch { orientation, .. } => format!(
                "graph-match over={}",
                match orientation {
                    Orientation::VOverU => "u",
                    Orientation::UOverV => "v",
                }
            ),
        };
        let _ = writeln!(
            s,
            "stage {}: level={} chart={} {} r_inner={:.6e} r_outer={:.6e}",
            i + 1,
            f.level,
            stage.path,
            kind,
            f.bump.r_inner,
            f.bump.r_outer
        );
    }
}

fn trace_text(report: &FlowReport) -> String {
    let mut s = String::new();
    for r in &report.records {
        let _ = writeln!(
            s,
            "sample={} t={:.9e},{:.9e} start={} end={} dist={:.6e}",
            r.index,
            r.t.re,
            r.t.im,
            fmt_p(&r.start),
            fmt_p(&r.end),
            r.distance
        );
    }
    let _ = writeln!(s, "max_dist={:.6e} pass={}", report.max_distance, report.pass);
    s
}

fn cmd_isotopy(a: &Path, b: &Path, flags: &Flags, cfg: &Config) -> Result<Done> {
    let g1 = load(a, cfg)?;
    let g2 = load(b, cfg)?;
    let opts = PlanOptions {
        working_radius: cfg.radius,
        ..PlanOptions::default()
    };
    let plan = build_plan_with(&g1, &g2, &opts)?;
    let report = verify_isotopy(&g1, &g2, &plan, &cfg.verify_options())?;
    let mut s = String::new();
    describe_plan(&plan, &mut s);
    let _ = writeln!(s, "max_step_error={:.6e}", report.max_step_error);
    let _ = writeln!(
        s,
        "stages={} max_dist={:.6e} {}",
        plan.stages.len(),
        report.max_distance,
        if report.pass { "PASS" } else { "FAIL" }
    );
    if let Some(path) = &flags.trace {
        write_file(path, &trace_text(&report))?;
    }
    Ok(Done {
        text: s,
        outcome: if report.pass { Outcome::Ok } else { Outcome::Fail },
        code: if report.pass { 0 } else { 1 },
    })
}

fn cmd_implicitize(file: &Path, cfg: &Config) -> Result<Done> {
    let f = implicitize(&load(file, cfg)?)?;
    ok(format!("f = {f}\n"))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Resolve { .. } => "resolve",
        Command::Invariants { .. } => "invariants",
        Command::Equisingular { .. } => "equisingular",
        Command::Isotopy { .. } => "isotopy",
        Command::Implicitize { .. } => "implicitize",
    }
}

/// Parse `args`, run the command and write its report; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
            return code;
        }
    };
    execute(&cli, out, err).exit_code
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> RunReport {
    let start = Instant::now();
    let cfg = cli.flags.config();
    let warnings = cfg.warnings();
    let command = cli.command.as_ref().map_or("", command_name).to_string();
    let finish = |outcome, code, warnings: Vec<String>| RunReport {
        command: command.clone(),
        elapsed: start.elapsed(),
        outcome,
        warnings,
        exit_code: code,
    };
    if let Err(e) = cfg.validate() {
        let _ = writeln!(err, "error: {e}");
        return finish(Outcome::Error, 1, warnings);
    }
    for w in &warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if cli.flags.show_config {
        let _ = write!(out, "{cfg}");
    }
    let Some(cmd) = &cli.command else {
        if cli.flags.show_config {
            return finish(Outcome::Ok, 0, warnings);
        }
        let _ = writeln!(err, "error: no command given (try --help)");
        return finish(Outcome::Error, 1, warnings);
    };
    let result = match cmd {
        Command::Resolve { file } => cmd_resolve(file, &cli.flags, &cfg),
        Command::Invariants { file } => cmd_invariants(file, &cfg),
        Command::Equisingular { a, b } => cmd_equisingular(a, b, &cfg),
        Command::Isotopy { a, b } => cmd_isotopy(a, b, &cli.flags, &cfg),
        Command::Implicitize { file } => cmd_implicitize(file, &cfg),
    };
    let report = match result {
        Ok(done) => {
            let _ = write!(out, "{}", done.text);
            finish(done.outcome, done.code, warnings)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let code = match e {
                Error::NotEquisingular(_) => 2,
                _ => 1,
            };
            finish(Outcome::Error, code, warnings)
        }
    };
    if !cli.flags.no_timing {
        let _ = writeln!(out, "elapsed: {:.3} ms", report.elapsed.as_secs_f64() * 1e3);
    }
    report
}
