//! Command-line front-end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lasso_density_core::count::{total_lassos, DensityRow};
use lasso_density_core::compose::{describe, reduce_formula, ComposeError};
use lasso_density_core::density::{asymptotic_density, below_one_verdict, density_positive, DensityError};
use lasso_density_core::oscillate::ScheduleError;
use lasso_density_core::rational::{abs_diff, from_counts};
use lasso_density_core::{
    Alphabet, AutomatonError, EnumerationCap, EnumerationError, Evaluator, IntervalSchedule, LtlError, LtlFormula,
    Mode, OscillatingProperty, ParityAutomaton, PeriodReading,
};

use crate::format::{parse_automaton, ParseOptions};
use crate::parallel::Workers;
use crate::report::{decimal, exact, render_curve, render_partition, render_rows, OutputFormat};

/// Environment variable overriding the default enumeration cap.
pub const CAP_ENV: &str = "LASSO_DENSITY_CAP";

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const CAP: i32 = 4;
    pub const MISMATCH: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(name = "lasso-density", version, about = "Densities of linear-time properties over lassos")]
pub struct Cli {
    /// Worker threads for enumeration (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Largest number of lassos a single enumeration may visit.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FormulaArgs {
    /// LTL formula, e.g. "a U b".
    #[arg(long)]
    pub formula: String,
    /// Atomic propositions, comma separated.
    #[arg(long)]
    pub ap: String,
}

#[derive(Debug, Args)]
pub struct AutomatonArgs {
    #[arg(long)]
    pub automaton: PathBuf,
    /// Send missing transitions to a rejecting sink instead of failing.
    #[arg(long)]
    pub complete_with_sink: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Exact,
    Recurring,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Syntactic fragment and convergence class of a formula.
    Classify(FormulaArgs),
    /// Number of n-models of a formula.
    Count {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Density curve for n = 1..=n-max.
    Curve {
        #[command(flatten)]
        formula: FormulaArgs,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Exact asymptotic density of an automaton.
    Asymptotic(AutomatonArgs),
    /// Base/loop model and non-model counts at one bound.
    Partition {
        #[command(flatten)]
        automaton: AutomatonArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Reduction of a boolean combination of fragment formulas.
    Compose(FormulaArgs),
    /// Density curve of the interval-scheduled periodic property over {a}.
    Oscillate {
        /// Half-open intervals c:d, comma separated, e.g. 4:6,12:16.
        #[arg(long)]
        intervals: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = ReadingArg::Exact)]
        reading: ReadingArg,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Compares formula and automaton semantics on every lasso.
    Crosscheck {
        #[arg(long)]
        formula: String,
        /// Must match the automaton alphabet if given.
        #[arg(long)]
        ap: Option<String>,
        #[command(flatten)]
        automaton: AutomatonArgs,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(m: impl Into<String>) -> Self {
        Failure { code: exit::USAGE, message: m.into() }
    }
    fn invalid(m: impl ToString) -> Self {
        Failure { code: exit::VALIDATION, message: m.to_string() }
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::CapExceeded { .. } => Failure { code: exit::CAP, message: e.to_string() },
            EnumerationError::ZeroBound => Failure::invalid(e),
        }
    }
}

impl From<AutomatonError> for Failure {
    fn from(e: AutomatonError) -> Self {
        match e {
            AutomatonError::Enumeration(e) => e.into(),
            e => Failure::invalid(e),
        }
    }
}

impl From<ComposeError> for Failure {
    fn from(e: ComposeError) -> Self {
        match e {
            ComposeError::CapExceeded { .. } => Failure { code: exit::CAP, message: e.to_string() },
            e => Failure::invalid(e),
        }
    }
}

impl From<LtlError> for Failure {
    fn from(e: LtlError) -> Self {
        Failure::invalid(e)
    }
}

impl From<ScheduleError> for Failure {
    fn from(e: ScheduleError) -> Self {
        Failure::invalid(e)
    }
}

/// `--cap`, else the environment variable, else the default.
pub fn resolve_cap(flag: Option<u64>, env: Option<&str>) -> Result<EnumerationCap, Failure> {
    if let Some(c) = flag {
        return Ok(EnumerationCap(c));
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map(EnumerationCap)
            .map_err(|_| Failure::usage(format!("{CAP_ENV} must be a natural number, got `{v}`"))),
        None => Ok(EnumerationCap::DEFAULT),
    }
}

struct Context {
    workers: Workers,
    cap: EnumerationCap,
}

fn alphabet(ap: &str) -> Result<Alphabet, Failure> {
    Alphabet::parse_list(ap).map_err(Failure::invalid)
}

fn formula(text: &str, ab: &Alphabet) -> Result<LtlFormula, Failure> {
    Ok(LtlFormula::parse(text, ab)?)
}

fn load(args: &AutomatonArgs) -> Result<ParityAutomaton, Failure> {
    load_path(&args.automaton, args.complete_with_sink)
}

fn load_path(path: &Path, complete_with_sink: bool) -> Result<ParityAutomaton, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_automaton(&text, ParseOptions { complete_with_sink })
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn parse_intervals(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(|part| {
            let (c, d) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| Failure::invalid(format!("interval `{part}` is not of the form c:d")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::invalid(format!("`{s}` is not a natural number")))
            };
            Ok((num(c)?, num(d)?))
        })
        .collect()
}

fn classify(ctx: &Context, args: &FormulaArgs) -> Result<String, Failure> {
    let ab = alphabet(&args.ap)?;
    let f = formula(&args.formula, &ab)?;
    let r = reduce_formula(&f, &ab, ctx.cap)?;
    let mut out = String::new();
    let _ = writeln!(out, "formula: {f}");
    let _ = writeln!(out, "syntactic: {}", f.classify());
    let _ = writeln!(out, "convergence: {}", describe(&r));
    if let Some(v) = r.class.value() {
        let _ = writeln!(out, "density: {}", exact(&v));
    }
    Ok(out)
}

fn count(ctx: &Context, args: &FormulaArgs, n: usize, format: OutputFormat) -> Result<String, Failure> {
    let ab = alphabet(&args.ap)?;
    let eval = Evaluator::new(&formula(&args.formula, &ab)?, &ab)?;
    let c = ctx.workers.count(&eval, ab.size(), n, ctx.cap)?;
    let total = total_lassos(ab.size() as u64, n as u32);
    let rate = from_counts(&c, &total);
    Ok(match format {
        OutputFormat::Csv => render_rows(&[DensityRow { n, count: c, total, rate }], format),
        OutputFormat::Table => format!("n: {n}\ncount: {c}\ntotal: {total}\nrate: {}\n", exact(&rate)),
    })
}

fn asymptotic(args: &AutomatonArgs) -> Result<String, Failure> {
    let aut = load(args)?;
    let mut out = String::new();
    let _ = writeln!(out, "mode: {}", aut.mode());
    match asymptotic_density(&aut) {
        Ok(report) => {
            let _ = writeln!(out, "density: {}", exact(&report.density));
            let _ = writeln!(out, "positive: {}", report.positive);
            let _ = writeln!(out, "below_one: {}", report.below_one);
            for (states, p) in &report.per_scc {
                let names: Vec<String> = states.iter().map(|q| q.to_string()).collect();
                let _ = writeln!(out, "terminal accepting scc {{{}}}: {}", names.join(","), exact(p));
            }
        }
        Err(DensityError::Nondeterministic) => {
            let _ = writeln!(out, "density: unknown (nondeterministic)");
            let _ = writeln!(out, "positive: {}", density_positive(&aut));
            let _ = writeln!(out, "below_one: {}", below_one_verdict(&aut));
        }
        Err(DensityError::Automaton(e)) => return Err(e.into()),
        Err(e) => return Err(Failure::invalid(e)),
    }
    Ok(out)
}

fn compose(ctx: &Context, args: &FormulaArgs) -> Result<String, Failure> {
    let ab = alphabet(&args.ap)?;
    let f = formula(&args.formula, &ab)?;
    let r = reduce_formula(&f, &ab, ctx.cap)?;
    let mut out = String::new();
    let _ = writeln!(out, "formula: {f}");
    for entry in &r.trace {
        let _ = writeln!(out, "{entry}");
    }
    let _ = writeln!(out, "class: {}", describe(&r));
    match r.class.value() {
        Some(v) => {
            let _ = writeln!(out, "density: {}", exact(&v));
        }
        None => {
            let _ = writeln!(out, "density: not determined");
        }
    }
    Ok(out)
}

fn crosscheck(
    ctx: &Context,
    text: &str,
    ap: Option<&str>,
    args: &AutomatonArgs,
    n_max: usize,
) -> Result<(String, bool), Failure> {
    let aut = load(args)?;
    let ab = aut.alphabet().clone();
    if let Some(ap) = ap {
        if alphabet(ap)? != ab {
            return Err(Failure::invalid(format!(
                "--ap {ap} does not match the automaton alphabet {}",
                ab.propositions().join(",")
            )));
        }
    }
    if n_max == 0 {
        return Err(EnumerationError::ZeroBound.into());
    }
    lasso_density_core::LassoSpace::new(ab.size(), n_max, ctx.cap)?;
    let eval = Evaluator::new(&formula(text, &ab)?, &ab)?;
    let limit = if aut.mode() == Mode::Nondeterministic {
        None
    } else {
        asymptotic_density(&aut).ok().map(|r| r.density)
    };
    let mut out = String::new();
    let _ = writeln!(out, "n,formula_count,automaton_count,total,disagreements,rate_decimal,distance_to_limit");
    let mut witness = None;
    let mut disagreements = 0u64;
    for n in 1..=n_max {
        let c = ctx.workers.compare(&eval, &aut, ab.size(), n, ctx.cap)?;
        let rate = from_counts(&c.left, &c.total);
        let distance = limit.as_ref().map_or("-".to_string(), |l| decimal(&abs_diff(&rate, l)));
        let _ = writeln!(
            out,
            "{n},{},{},{},{},{},{distance}",
            c.left,
            c.right,
            c.total,
            c.disagreements,
            decimal(&rate)
        );
        disagreements += c.disagreements;
        if witness.is_none() {
            witness = c.first_disagreement;
        }
    }
    if let Some(l) = &limit {
        let _ = writeln!(out, "limit: {}", exact(l));
    }
    let _ = writeln!(out, "disagreements: {disagreements}");
    if let Some((_, lasso, formula_verdict)) = witness {
        let _ = writeln!(
            out,
            "first disagreement: {} formula={} automaton={}",
            lasso.display(&ab),
            formula_verdict,
            !formula_verdict
        );
    }
    Ok((out, disagreements == 0))
}

fn dispatch(cli: &Cli, cap_env: Option<&str>) -> Result<(String, i32), Failure> {
    let ctx = Context {
        workers: Workers::new(cli.jobs),
        cap: resolve_cap(cli.cap, cap_env)?,
    };
    let ok = |s: String| Ok((s, exit::OK));
    match &cli.command {
        Command::Classify(args) => ok(classify(&ctx, args)?),
        Command::Count { formula, n, format } => ok(count(&ctx, formula, *n, *format)?),
        Command::Curve { formula: args, n_max, format } => {
            let ab = alphabet(&args.ap)?;
            let eval = Evaluator::new(&formula(&args.formula, &ab)?, &ab)?;
            ok(render_curve(&ctx.workers.curve(&eval, ab.size(), *n_max, ctx.cap)?, *format))
        }
        Command::Asymptotic(args) => ok(asymptotic(args)?),
        Command::Partition { automaton, n, format } => {
            let aut = load(automaton)?;
            ok(render_partition(&ctx.workers.partition(&aut, *n, ctx.cap)?, *format))
        }
        Command::Compose(args) => ok(compose(&ctx, args)?),
        Command::Oscillate {
            intervals,
            n_max,
            reading,
            format,
        } => {
            let schedule = IntervalSchedule::new(parse_intervals(intervals)?)?;
            let reading = match reading {
                ReadingArg::Exact => PeriodReading::Exact,
                ReadingArg::Recurring => PeriodReading::Recurring,
            };
            let prop = OscillatingProperty::new(schedule, reading);
            let size = OscillatingProperty::alphabet().size();
            ok(render_curve(&ctx.workers.curve(&prop, size, *n_max, ctx.cap)?, *format))
        }
        Command::Crosscheck {
            formula,
            ap,
            automaton,
            n_max,
        } => {
            let (out, agree) = crosscheck(&ctx, formula, ap.as_deref(), automaton, *n_max)?;
            Ok((out, if agree { exit::OK } else { exit::MISMATCH }))
        }
    }
}

/// Runs one invocation; `cap_env` is the value of [`CAP_ENV`], if set.
pub fn run<I, T>(args: I, cap_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let rendered = e.render().to_string();
            let _ = if code == exit::OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, cap_env) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
