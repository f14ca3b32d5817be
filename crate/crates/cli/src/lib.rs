//! Command-line surface for `coalg`: argument parsing, command dispatch and
//! report rendering. `main.rs` only forwards to [`run_command`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use coalg_core::coalgebra::{build_corpus, validate_coalgebra, Coalgebra};
use coalg_core::coring::{
    induce_coring, over_ground_field, solve_counit, validate_coring, verify_counit, CounitOutcome, Side,
};
use coalg_core::coseparability::{
    balanced_battery, cointegral_to_retraction, epsilon_bar_check, induced_multiplication, measuring_pairing_check,
    seed_from_env, solve_cointegral, theorem_pipeline, verify_cointegral, verify_retraction, DEFAULT_SEED,
};
use coalg_core::dorroh::{
    build_dorroh, check_coideal_embedding, forget, lift_left_comodule, lift_right_comodule, validate_comodule,
    validate_dorroh, ComoduleOverCoring,
};
use coalg_core::format::{canonical_hash, emit_spec, parse_spec, parse_spec_unchecked};
use coalg_core::linalg::{AffineSolutionSet, DenseMatrix, Field};
use coalg_core::validation::{Check, ValidationReport};
use coalg_core::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "coalg", version, about = "Exact checks for finite-dimensional coalgebras and their corings")]
pub struct Cli {
    /// Print the report as JSON (default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Print the report as plain text.
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the coalgebra axioms and the coring structure of (C:C•).
    Validate { file: PathBuf },
    /// Solve for a cointegral (coseparability).
    Cosep { file: PathBuf },
    /// Solve for a one-sided counit of (C:C•).
    Counit {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Build and check the Dorroh coring of (C:C•).
    Dorroh { file: PathBuf },
    /// Random balanced-form battery and the ε̄ linearity check.
    Balanced {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Four-way coseparability / counitality check.
    Theorem { file: PathBuf },
    /// Print a built-in coalgebra as a presentation file.
    Corpus {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Re-render a saved JSON report.
    Report { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub name: String,
    pub field: String,
    pub dim: usize,
}

/// Rank data of one linear system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverDims {
    pub feasible: bool,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub augmented_rank: usize,
    pub solution_dim: usize,
}

impl From<&AffineSolutionSet> for SolverDims {
    fn from(s: &AffineSolutionSet) -> Self {
        SolverDims {
            feasible: s.feasible,
            unknowns: s.unknowns,
            equations: s.equations,
            rank: s.rank,
            augmented_rank: s.augmented_rank,
            solution_dim: s.dimension,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input_hash: Option<String>,
    pub subject: Option<Subject>,
    pub passed: bool,
    pub verdicts: BTreeMap<String, bool>,
    pub checks: Vec<Check>,
    /// Failing checks that carry basis-index witnesses.
    pub witnesses: BTreeMap<String, Vec<usize>>,
    /// Matrices as rows of exact strings.
    pub certificates: BTreeMap<String, Vec<Vec<String>>>,
    pub dimensions: BTreeMap<String, SolverDims>,
    pub details: BTreeMap<String, String>,
    pub wall_time_ms: u64,
}

impl Report {
    fn for_input(command: String, c: &Coalgebra) -> Self {
        Report {
            command,
            input_hash: Some(canonical_hash(c)),
            subject: Some(Subject {
                name: c.name().to_string(),
                field: c.field().to_string(),
                dim: c.dim(),
            }),
            ..Report::default()
        }
    }

    fn add_checks(&mut self, prefix: &str, report: ValidationReport) {
        for mut chk in report.checks {
            chk.name = format!("{prefix}.{}", chk.name);
            if let (false, Some(w)) = (chk.passed, &chk.witness) {
                self.witnesses.insert(chk.name.clone(), w.clone());
            }
            self.checks.push(chk);
        }
    }

    fn add_flag(&mut self, name: &str, ok: bool) {
        let mut r = ValidationReport::new();
        if ok {
            r.push(name, None);
        } else {
            r.fail(name, "does not hold");
        }
        self.checks.extend(r.checks);
    }

    fn certificate(&mut self, name: &str, m: &DenseMatrix) {
        self.certificates.insert(name.to_string(), m.to_string_rows());
    }

    /// JSON with the wall time zeroed, for determinism comparisons.
    pub fn without_wall_time(&self) -> Report {
        Report { wall_time_ms: 0, ..self.clone() }
    }
}

/// Result of one invocation: what would be printed and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::InvariantFailure(_) | Error::BimoduleAxiom(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read_input(path: &Path) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Run<Coalgebra> {
    parse_spec(&read_input(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { exit_code: code, stdout, stderr, report: None };
        }
    };
    let echo = std::iter::once("coalg".to_string())
        .chain(argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect::<Vec<_>>()
        .join(" ");
    let start = Instant::now();
    let result = dispatch(&cli.command, echo);
    match result {
        Ok(Produced::Text(stdout)) => Outcome { exit_code: EXIT_PASS, stdout, stderr: String::new(), report: None },
        Ok(Produced::Report(mut report, code)) => {
            if report.wall_time_ms == 0 && !matches!(cli.command, Command::Report { .. }) {
                report.wall_time_ms = start.elapsed().as_millis() as u64;
            }
            let stdout = if cli.text { render_text(&report) } else { render_json(&report) };
            Outcome { exit_code: code, stdout, stderr: String::new(), report: Some(report) }
        }
        Err(Failure::Input(msg)) => Outcome {
            exit_code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            report: None,
        },
        Err(Failure::Internal(msg)) => Outcome {
            exit_code: EXIT_FAIL,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            report: None,
        },
    }
}

enum Produced {
    Text(String),
    Report(Report, i32),
}

fn finish(mut report: Report) -> Run<Produced> {
    report.passed = report.passed && report.checks.iter().all(|c| c.passed);
    let code = if report.passed { EXIT_PASS } else { EXIT_FAIL };
    Ok(Produced::Report(report, code))
}

fn dispatch(cmd: &Command, echo: String) -> Run<Produced> {
    match cmd {
        Command::Validate { file } => validate(file, echo),
        Command::Cosep { file } => cosep(file, echo),
        Command::Counit { file, side } => counit(file, (*side).into(), echo),
        Command::Dorroh { file } => dorroh(file, echo),
        Command::Balanced { file, seed, trials } => balanced(file, *seed, *trials, echo),
        Command::Theorem { file } => theorem(file, echo),
        Command::Corpus { name, n, field } => {
            let field = Field::parse(field)?;
            Ok(Produced::Text(emit_spec(&build_corpus(name, *n, field)?) + "\n"))
        }
        Command::Report { file } => {
            let text = read_input(file)?;
            let report: Report = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("{}: not a saved report: {e}", file.display())))?;
            let code = if report.passed { EXIT_PASS } else { EXIT_FAIL };
            Ok(Produced::Report(report, code))
        }
    }
}

fn validate(file: &Path, echo: String) -> Run<Produced> {
    let c = parse_spec_unchecked(&read_input(file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let mut report = Report::for_input(echo, &c);
    let axioms = validate_coalgebra(&c);
    let valid = axioms.passed();
    report.add_checks("coalgebra", axioms);
    if valid {
        report.add_checks("coring", validate_coring(&induce_coring(&c)?));
        if c.epsilon().is_some() {
            report.add_checks("ground_coring", validate_coring(&over_ground_field(&c)));
        }
    }
    report.passed = report.checks.iter().all(|c| c.passed);
    report.verdicts.insert("valid".into(), report.passed);
    finish(report)
}

fn cosep(file: &Path, echo: String) -> Run<Produced> {
    let c = load(file)?;
    let mut report = Report::for_input(echo, &c);
    let out = solve_cointegral(&c)?;
    report.dimensions.insert("cointegral".into(), out.certificate().into());
    report.verdicts.insert("coseparable".into(), out.is_feasible());
    if let Some(g) = out.cointegral() {
        report.certificate("cointegral", &g.form);
        report.add_checks("cointegral", verify_cointegral(&c, g));
        let p = cointegral_to_retraction(g, &c)?;
        report.certificate("retraction", &p.map);
        report.add_checks("retraction", verify_retraction(&c, &p));
    }
    report.passed = out.is_feasible();
    finish(report)
}

fn counit(file: &Path, side: Side, echo: String) -> Run<Produced> {
    let c = load(file)?;
    let mut report = Report::for_input(echo, &c);
    let cr = induce_coring(&c)?;
    let out = solve_counit(&cr, side);
    let label = side.label();
    report.dimensions.insert(format!("{label}_counit"), out.certificate().into());
    report.verdicts.insert(format!("{label}_counital"), out.is_feasible());
    if let CounitOutcome::Feasible(sol) = &out {
        report.certificate(&format!("{label}_counit"), &sol.map);
        report.add_checks(&format!("{label}_counit"), verify_counit(&cr, side, &sol.map));
        if side == Side::Left {
            let induced = induced_multiplication(&c, sol)?;
            report.add_checks("induced_algebra", induced.report);
            report.add_checks("measuring_pairing", measuring_pairing_check(&c, sol));
        }
    }
    report.passed = out.is_feasible();
    finish(report)
}

fn comodule_checks(report: &mut Report, d: &coalg_core::dorroh::DorrohCoring, side: Side) -> Run<()> {
    let label = format!("{}_comodule", side.label());
    let regular = ComoduleOverCoring::regular(&d.base, side);
    let lifted = match side {
        Side::Left => lift_left_comodule(d, &regular)?,
        Side::Right => lift_right_comodule(d, &regular)?,
    };
    report.add_checks(&label, validate_comodule(&d.coring, &lifted));
    let back = forget(d, &lifted);
    report.add_flag(&format!("{label}.forget_recovers"), back == regular);
    Ok(())
}

fn dorroh(file: &Path, echo: String) -> Run<Produced> {
    let c = load(file)?;
    let mut report = Report::for_input(echo, &c);
    let d = build_dorroh(&induce_coring(&c)?)?;
    let structure = validate_dorroh(&d);
    let coideal = check_coideal_embedding(&d);
    report.verdicts.insert("counital_coring".into(), structure.passed());
    report.verdicts.insert("coideal".into(), coideal.passed());
    report.add_checks("dorroh", structure);
    report.add_checks("coideal", coideal);
    comodule_checks(&mut report, &d, Side::Right)?;
    comodule_checks(&mut report, &d, Side::Left)?;
    if let Some(e) = d.coring.counit() {
        report.certificate("counit", e);
    }
    report.certificate("embedding", &d.embedding);
    report.certificate("projection", &d.projection);
    report.details.insert("dim".into(), d.coring.dim().to_string());
    report.passed = true;
    finish(report)
}

fn balanced(file: &Path, seed: Option<u64>, trials: usize, echo: String) -> Run<Produced> {
    let c = load(file)?;
    let mut report = Report::for_input(echo, &c);
    let seed = seed.unwrap_or_else(|| seed_from_env(DEFAULT_SEED));
    let battery = balanced_battery(&c, trials, seed)?;
    report.verdicts.insert("conditions_agree".into(), battery.all_agree);
    let disagreeing = battery.outcomes.iter().position(|o| !o.agree());
    let mut agreement = ValidationReport::new();
    agreement.push("agreement", disagreeing.map(|t| vec![t]));
    report.add_checks("balanced", agreement);
    report.details.insert("seed".into(), seed.to_string());
    report.details.insert("trials".into(), trials.to_string());
    report.details.insert("true_count".into(), battery.true_count.to_string());
    report.details.insert("false_count".into(), battery.false_count.to_string());
    if c.epsilon().is_some() {
        let w = epsilon_bar_check(&c)?;
        report.verdicts.insert("epsilon_bar_linear".into(), w.is_none());
        if let Some(w) = w {
            report.witnesses.insert("epsilon_bar".into(), vec![w.f, w.c, w.d]);
            report.details.insert("epsilon_bar".into(), format!("f(c)ε(d) = {} ≠ {} = ε(c)f(d)", w.lhs, w.rhs));
        }
    }
    report.passed = battery.all_agree;
    finish(report)
}

fn theorem(file: &Path, echo: String) -> Run<Produced> {
    let c = load(file)?;
    let mut report = Report::for_input(echo, &c);
    let t = theorem_pipeline(&c)?;
    for (name, v) in [
        ("coseparable", t.verdicts.coseparable),
        ("left_counital", t.verdicts.left_counital),
        ("cop_coseparable", t.verdicts.cop_coseparable),
        ("right_counital", t.verdicts.right_counital),
        ("agree", t.agree),
    ] {
        report.verdicts.insert(name.into(), v);
    }
    for leg in &t.legs {
        report.dimensions.insert(leg.name.clone(), (&leg.system).into());
        if let Some(m) = &leg.solution {
            report.certificate(&leg.name, m);
        }
    }
    if let Some(x) = &t.cross {
        report.certificate("retraction", &x.retraction.map);
        report.add_checks("cross.retraction", x.retraction_report.clone());
        report.add_flag("cross.round_trip", x.round_trip);
        report.certificate("form_counit", &x.form_counit);
        report.add_checks("cross.form_counit", x.form_counit_report.clone());
        report.certificate("form_cop_retraction", &x.form_cop_retraction.map);
        report.add_checks("cross.form_cop_retraction", x.form_cop_retraction_report.clone());
        if let (Some(p), Some(r)) = (&x.counit_cop_retraction, &x.counit_cop_retraction_report) {
            report.certificate("counit_cop_retraction", &p.map);
            report.add_checks("cross.counit_cop_retraction", r.clone());
        }
    }
    report.passed = t.all_true();
    finish(report)
}

pub fn render_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: {}", r.command);
    if let Some(h) = &r.input_hash {
        let _ = writeln!(s, "input:   {h}");
    }
    if let Some(sub) = &r.subject {
        let _ = writeln!(s, "subject: {} over {} (dim {})", sub.name, sub.field, sub.dim);
    }
    let _ = writeln!(s, "result:  {}", if r.passed { "PASS" } else { "FAIL" });
    if !r.verdicts.is_empty() {
        let _ = writeln!(s, "verdicts:");
        for (k, v) in &r.verdicts {
            let _ = writeln!(s, "  {k:<24} {v}");
        }
    }
    if !r.checks.is_empty() {
        let _ = writeln!(s, "checks:");
        for c in &r.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = write!(s, "  {mark} {}", c.name);
            if let Some(w) = &c.witness {
                let _ = write!(s, "  witness {w:?}");
            }
            if let Some(n) = &c.note {
                let _ = write!(s, "  ({n})");
            }
            s.push('\n');
        }
    }
    for (k, w) in r.witnesses.iter().filter(|(k, _)| !r.checks.iter().any(|c| &c.name == *k)) {
        let _ = writeln!(s, "witness {k}: {w:?}");
    }
    if !r.dimensions.is_empty() {
        let _ = writeln!(s, "systems:");
        for (k, d) in &r.dimensions {
            let _ = writeln!(
                s,
                "  {k}: {} unknowns, {} equations, rank {}/{}, {}",
                d.unknowns,
                d.equations,
                d.rank,
                d.augmented_rank,
                if d.feasible { format!("solution space dim {}", d.solution_dim) } else { "infeasible".into() }
            );
        }
    }
    for (k, v) in &r.details {
        let _ = writeln!(s, "{k}: {v}");
    }
    for (k, m) in &r.certificates {
        let _ = writeln!(s, "certificate {k} ({}×{}):", m.len(), m.first().map_or(0, Vec::len));
        for row in m {
            let _ = writeln!(s, "  [{}]", row.join(", "));
        }
    }
    let _ = writeln!(s, "wall time: {} ms", r.wall_time_ms);
    s
}
