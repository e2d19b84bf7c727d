use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use deltaplus_core::classifier::{classify, Classification, TriangleVerdict};
use deltaplus_core::ddf::{parse_ddf, Ddf};
use deltaplus_core::lawcheck::{
    check_law, mine_counterexample, Law, LawReport, LawVerdict, LawWitness, RandomDdfConfig,
};
use deltaplus_core::numeric::ExtRat;
use deltaplus_core::record::Record;
use deltaplus_core::tau::{tau, tau_raw_at};
use deltaplus_core::tconorms::{full_tconorm_catalog, parse_tconorm, TConormDesc};
use deltaplus_core::tnorms::{catalog_tnorm, full_tnorm_catalog, TNormDesc};
use deltaplus_core::verdict::Verdict;

/// `println!` that ignores a closed stdout (e.g. output piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! say_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

/// Exit code for I/O, parse and evaluation errors.
const EXIT_ERROR: u8 = 4;
/// Exit code for command-line usage errors.
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "deltaplus",
    version,
    about = "Exact τ_{T,L} on step distance distribution functions"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Records,
}

#[derive(Args)]
struct Pair {
    /// T-norm: M, Pi, W, nM, D or nM_hat.
    #[arg(long)]
    tnorm: String,
    /// T-conorm: max, plus, nilpotent_rat, drastic, osum_trunc:<p> or osum_strict:<p>.
    #[arg(long)]
    conorm: String,
}

impl Pair {
    fn resolve(&self) -> Result<(TNormDesc, TConormDesc)> {
        Ok((catalog_tnorm(&self.tnorm)?, parse_tconorm(&self.conorm)?))
    }
}

#[derive(Args)]
struct Search {
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest jump count of random DDFs.
    #[arg(long, default_value_t = RandomDdfConfig::default().max_jumps)]
    max_jumps: usize,
    /// Denominator bound for random breakpoints.
    #[arg(long, default_value_t = RandomDdfConfig::default().abscissa_pool, value_parser = clap::value_parser!(u64).range(1..))]
    abscissa_pool: u64,
    /// Denominator bound for random jump values.
    #[arg(long, default_value_t = RandomDdfConfig::default().value_pool, value_parser = clap::value_parser!(u64).range(1..))]
    value_pool: u64,
}

impl Search {
    fn cfg(&self) -> RandomDdfConfig {
        RandomDdfConfig {
            max_jumps: self.max_jumps,
            abscissa_pool: self.abscissa_pool,
            value_pool: self.value_pool,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate τ_{T,L}(f, g).
    Tau {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        /// Print the regularized and raw values at this abscissa instead.
        #[arg(long)]
        at: Option<ExtRat>,
        /// Print `x value` samples of the result for plotting.
        #[arg(long, conflicts_with = "at")]
        emit_points: bool,
    },
    /// Decide whether τ_{T,L} is a triangle function. Exit 0 if so, 1 if not.
    Classify {
        #[command(flatten)]
        pair: Pair,
        /// Checker budget for the metadata verification.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check one law. Exit 0 on pass, 2 on fail.
    Check {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        law: Law,
        #[command(flatten)]
        search: Search,
    },
    /// Search every law for a counterexample. Exit 0 on pass, 2 on fail,
    /// 3 when nothing was found for a pair not known to be a triangle function.
    Mine {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        search: Search,
        /// Checker budget for the metadata the pass/inconclusive call uses.
        #[arg(long, default_value_t = 1000)]
        verify_budget: u64,
    },
    /// List the catalog with checker-verified flags.
    Catalog {
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-verify a failure record (as printed with `--output records`).
    Replay {
        /// File holding one record line; `-` for stdin.
        record: PathBuf,
    },
}

fn read_ddf(path: &Path) -> Result<Ddf> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_ddf(&text).with_context(|| format!("{}: parse error", path.display()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_report(report: &LawReport, output: Output) {
    if output == Output::Records {
        say!("{report}");
        return;
    }
    let what = match report.law {
        Some(law) => law.name(),
        None => "all laws",
    };
    let head = format!("{} with {}, {what}", report.tnorm, report.tconorm);
    match &report.verdict {
        LawVerdict::Pass { cases } => say!("{head}: pass ({cases} cases, seed {})", report.seed),
        LawVerdict::Inconclusive { cases } => {
            say!(
                "{head}: inconclusive (no counterexample in {cases} cases, seed {})",
                report.seed
            )
        }
        LawVerdict::Fail { case, witness } => {
            say!("{head}: FAIL at case {case} (seed {})", report.seed);
            match witness {
                LawWitness::Closure {
                    f,
                    g,
                    x,
                    raw,
                    regularized,
                } => {
                    say!("  raw τ(f,g)({x}) = {raw} but regularized = {regularized}");
                    say!("  f:\n{}", indent(&f.serialize()));
                    say!("  g:\n{}", indent(&g.serialize()));
                }
                LawWitness::RampClosure {
                    ramps,
                    x,
                    raw_lower,
                    regularized_upper,
                } => {
                    say!(
                        "  ramps f(u) = {}·min(u,a)/a, g(v) = {}·min(v,a)/a with a = {}",
                        ramps.f_level,
                        ramps.g_level,
                        ExtRat::Finite(ramps.knee.clone())
                    );
                    say!("  raw τ(f,g)({x}) >= {raw_lower} but regularized <= {regularized_upper}");
                }
                LawWitness::Sides {
                    inputs,
                    x,
                    lhs,
                    rhs,
                } => {
                    say!("  at x = {x}: left side {lhs}, right side {rhs}");
                    for (i, f) in inputs.iter().enumerate() {
                        say!("  input {i}:\n{}", indent(&f.serialize()));
                    }
                }
            }
            say!("  record: {report}");
        }
    }
}

fn indent(text: &str) -> String {
    text.lines()
        .map(|l| format!("    {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn report_exit(report: &LawReport) -> u8 {
    match report.verdict {
        LawVerdict::Pass { .. } => 0,
        LawVerdict::Fail { .. } => 2,
        LawVerdict::Inconclusive { .. } => 3,
    }
}

fn print_classification(c: &Classification, output: Output) {
    match output {
        Output::Text => say_raw!("{c}"),
        Output::Records => say!("{}", c.to_record()),
    }
}

fn checked<W>(declared: bool, v: &Verdict<W>) -> String {
    // A flag the checker contradicts is marked with `!`.
    let mark = if declared == v.passed() { "" } else { "!" };
    format!("{}{mark}", yes(v.passed()))
}

fn catalog(budget: u64, seed: u64, output: Output) {
    let tnorms: Vec<TNormDesc> = full_tnorm_catalog()
        .into_iter()
        .map(|t| t.verified(budget, seed))
        .collect();
    let tconorms: Vec<TConormDesc> = full_tconorm_catalog()
        .into_iter()
        .map(|l| l.verified(budget, seed))
        .collect();
    if output == Output::Text {
        say!("t-norms ({}):", tnorms.len());
    }
    for t in &tnorms {
        let e = t.evidence().expect("verified above");
        let d = &t.declared;
        let fields = [
            ("t_norm", checked(d.is_tnorm(), &e.axioms)),
            (
                "weakly_left_continuous",
                checked(d.is_weakly_left_continuous, &e.weak_left),
            ),
            ("left_continuous", checked(d.is_left_continuous, &e.left)),
            ("continuous", yes(d.is_continuous).to_string()),
        ];
        emit_entry("tnorm", &t.name, &fields, output);
    }
    if output == Output::Text {
        say!(
            "t-conorms ({} families; ordinal sums shown with p = 2):",
            tconorms.len()
        );
    }
    for l in &tconorms {
        let e = l.evidence().expect("verified above");
        let d = &l.declared;
        let fields = [
            ("t_conorm", checked(d.is_tconorm, &e.axioms)),
            ("continuous", checked(d.is_continuous, &e.continuity)),
            ("LCS", checked(d.satisfies_lcs, &e.lcs)),
            ("LS", checked(d.satisfies_ls, &e.ls)),
            ("archimedean", checked(d.is_archimedean, &e.archimedean)),
        ];
        emit_entry("tconorm", &l.name, &fields, output);
    }
}

fn emit_entry(kind: &str, name: &str, fields: &[(&str, String)], output: Output) {
    match output {
        Output::Records => {
            let mut r = Record::new().with("kind", kind).with("name", name);
            for (k, v) in fields {
                r.push(k, v);
            }
            say!("{r}");
        }
        Output::Text => {
            let cols: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            say!("  {name:<14} {}", cols.join(" "));
        }
    }
}

fn replay(path: &Path) -> Result<u8> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?
    };
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .context("empty record file")?;
    let line = line.trim().strip_prefix("record: ").unwrap_or(line.trim());
    let report = LawReport::from_record(&Record::parse(line)?)?;
    match report.reverify() {
        None => {
            say!("no failure witness in record");
            Ok(EXIT_ERROR)
        }
        Some(true) => {
            say!(
                "witness re-verified: {} with {} violates {}",
                report.tnorm,
                report.tconorm,
                report.law.map_or("-", Law::name)
            );
            Ok(0)
        }
        Some(false) => {
            say!("witness does NOT re-verify");
            Ok(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let output = cli.output;
    match cli.command {
        Command::Tau {
            pair,
            f,
            g,
            at,
            emit_points,
        } => {
            let (t, l) = pair.resolve()?;
            let (f, g) = (read_ddf(&f)?, read_ddf(&g)?);
            match at {
                Some(x) => {
                    let reg = tau(&t, &l, &f, &g)?.eval(&x);
                    let raw = tau_raw_at(&t, &l, &f, &g, &x)?;
                    match output {
                        Output::Text => say!("regularized {reg}  raw {raw}"),
                        Output::Records => say!(
                            "{}",
                            Record::new()
                                .with("x", &x)
                                .with("regularized", reg)
                                .with("raw", raw)
                        ),
                    }
                }
                None => {
                    let h = tau(&t, &l, &f, &g)?;
                    if emit_points {
                        for (x, v) in h.sample_points() {
                            say!("{x} {v}");
                        }
                    } else {
                        say!("{}", h.serialize());
                    }
                }
            }
            Ok(0)
        }
        Command::Classify { pair, budget, seed } => {
            let (t, l) = pair.resolve()?;
            let c = classify(&t.verified(budget, seed), &l.verified(budget, seed))?;
            print_classification(&c, output);
            Ok(match c.verdict {
                TriangleVerdict::Triangle => 0,
                TriangleVerdict::NotTriangle => 1,
            })
        }
        Command::Check { pair, law, search } => {
            let (t, l) = pair.resolve()?;
            let report = check_law(&t, &l, law, &search.cfg(), search.budget, search.seed)?;
            print_report(&report, output);
            Ok(report_exit(&report))
        }
        Command::Mine {
            pair,
            search,
            verify_budget,
        } => {
            let (t, l) = pair.resolve()?;
            let (t, l) = (
                t.verified(verify_budget, search.seed),
                l.verified(verify_budget, search.seed),
            );
            let report = mine_counterexample(&t, &l, &search.cfg(), search.budget, search.seed)?;
            print_report(&report, output);
            Ok(report_exit(&report))
        }
        Command::Catalog { budget, seed } => {
            catalog(budget, seed, output);
            Ok(0)
        }
        Command::Replay { record } => replay(&record),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
