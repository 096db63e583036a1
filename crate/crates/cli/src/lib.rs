//! Command-line front end for `sorec`.
//!
//! Every subcommand writes one JSON document to stdout. Exit codes: `0`
//! success, `1` a mathematical discrepancy (a claim failed at the requested
//! scale), `2` usage or validation errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use sorec::forms::{self, IdentityKind};
use sorec::membership;
use sorec::nonexistence;
use sorec::oracle::{self, SearchSummary, UnitRhs, Verdict};
use sorec::pell::{self, PellSign};
use sorec::ring;
use sorec::sequences::{self, RecurrenceParams};
use sorec::{Error, WorkBudget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sorec", version, about = "Second-order linear recurrence toolkit")]
pub struct Cli {
    /// JSON output (the only mode; accepted for compatibility)
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sequence generation, fundamental starting values, Cassini residuals
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Quadratic form and range polynomial
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Arithmetic in Z[w], w^2 = a*w + 1
    #[command(subcommand)]
    Ring(RingCmd),
    /// Scaled Pell equations and integer square roots
    #[command(subcommand)]
    Pell(PellCmd),
    /// Perfect-square membership tests
    #[command(subcommand)]
    Member(MemberCmd),
    /// Coefficient systems for polynomial identities
    #[command(subcommand)]
    Norank(NorankCmd),
    /// Brute-force grid searches
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Debug, Subcommand)]
pub enum SeqCmd {
    /// Values g(0) .. g(count-1)
    Gen {
        #[arg(long)]
        a: BigInt,
        #[arg(long, default_value = "1")]
        b: BigInt,
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        p: BigInt,
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        q: BigInt,
        #[arg(long)]
        count: u64,
    },
    /// Backtrack to the fundamental starting values (b = 1)
    Fundamental {
        #[arg(long)]
        a: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        p: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        q: BigInt,
    },
    /// Extended Cassini residual on the (0, 1) sequence
    Cassini {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
        #[arg(long)]
        i: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum PolyCmd {
    /// Evaluate Q(x, y) and y*(2 - (Q/R)^2)
    Eval {
        #[arg(long)]
        a: BigInt,
        #[arg(long = "r", allow_negative_numbers = true)]
        r: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        x: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        y: BigInt,
    },
    /// Compare polynomial values with sequence members on [1, max]^2
    VerifyRange {
        #[arg(long)]
        a: BigInt,
        #[arg(long = "r", allow_negative_numbers = true)]
        r: BigInt,
        #[arg(long)]
        max: u64,
        #[command(flatten)]
        start: OptionalStart,
    },
    /// Evaluate one of the index-addition identities
    Identity {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        j: u64,
    },
}

#[derive(Debug, Args)]
pub struct OptionalStart {
    #[arg(long, requires = "q", allow_negative_numbers = true)]
    pub p: Option<BigInt>,
    #[arg(long, requires = "p", allow_negative_numbers = true)]
    pub q: Option<BigInt>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    EvenEven,
    OddOdd,
    EvenOdd,
}

impl From<KindArg> for IdentityKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::EvenEven => IdentityKind::EvenEven,
            KindArg::OddOdd => IdentityKind::OddOdd,
            KindArg::EvenOdd => IdentityKind::EvenOdd,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum RingCmd {
    /// (1 + a*w)^n
    Pow {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        n: u64,
    },
    /// (q + (q*a + p)*w) * (1 + a*w)^(n-1)
    ShiftedPow {
        #[arg(long)]
        a: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        p: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        q: BigInt,
        #[arg(long)]
        n: u64,
    },
    /// Pairs (e(2n-1), e(2n)) with both coordinates <= bound
    Units {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        bound: BigInt,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
pub enum PellCmd {
    /// First solutions of X^2 - (a^2+4) Y^2 = ±4
    Solve {
        #[arg(long)]
        a: BigInt,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        count: u64,
    },
    /// floor(sqrt(n)) and exactness
    Isqrt {
        #[arg(long, allow_negative_numbers = true)]
        n: BigInt,
    },
}

#[derive(Debug, Subcommand)]
pub enum MemberCmd {
    /// Decide membership of x
    Test {
        #[arg(long)]
        a: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        x: BigInt,
    },
    /// Compare the square tests with generation for every x in [0, limit]
    Selfcheck {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum NorankCmd {
    /// Forced degree-2 coefficients and their consistency
    Degree2 {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
    },
    /// Degree-n coefficient matrix with rank and kernel
    Matrix {
        #[arg(long)]
        n: u64,
    },
    /// Rank and nullity for every degree in [1, max]
    Scan {
        #[arg(long)]
        max: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// Grid search for x^2 + a*x*y - y^2 = rhs
    Units {
        #[arg(long)]
        a: BigInt,
        #[arg(long, allow_negative_numbers = true, value_parser = parse_rhs)]
        rhs: UnitRhs,
        #[arg(long)]
        bound: u64,
    },
    /// Grid search for b*x^2 + a*x*y - y^2 + z = 0
    Cassini {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
        #[arg(long)]
        bound: u64,
    },
}

fn parse_rhs(s: &str) -> Result<UnitRhs, String> {
    match s {
        "1" | "+1" => Ok(UnitRhs::Plus),
        "-1" => Ok(UnitRhs::Minus),
        other => Err(format!("rhs must be 1 or -1, got {other:?}")),
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    result: Value,
    discrepancy: bool,
}

impl Report {
    fn new(command: &'static str, result: impl Serialize, discrepancy: bool) -> Self {
        Report {
            command,
            result: serde_json::to_value(result).expect("reports serialize"),
            discrepancy,
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Outcome { code, stdout, stderr };
        }
    };
    let budget = match WorkBudget::from_env() {
        Ok(b) => b,
        Err(e) => return usage_error(&e),
    };
    match run(cli.command, &budget) {
        Ok(report) => {
            let doc = json!({
                "command": report.command,
                "discrepancy": report.discrepancy,
                "result": report.result,
                "meta": { "tool": "sorec", "version": env!("CARGO_PKG_VERSION") },
            });
            let mut stdout = serde_json::to_string_pretty(&doc).expect("json");
            stdout.push('\n');
            Outcome {
                code: if report.discrepancy { EXIT_DISCREPANCY } else { EXIT_OK },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => usage_error(&e),
    }
}

fn usage_error(e: &Error) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn run(command: Command, budget: &WorkBudget) -> sorec::Result<Report> {
    match command {
        Command::Seq(cmd) => run_seq(cmd, budget),
        Command::Poly(cmd) => run_poly(cmd, budget),
        Command::Ring(cmd) => run_ring(cmd, budget),
        Command::Pell(cmd) => run_pell(cmd, budget),
        Command::Member(cmd) => run_member(cmd, budget),
        Command::Norank(cmd) => run_norank(cmd, budget),
        Command::Oracle(cmd) => run_oracle(cmd, budget),
    }
}

fn run_seq(cmd: SeqCmd, budget: &WorkBudget) -> sorec::Result<Report> {
    match cmd {
        SeqCmd::Gen { a, b, p, q, count } => {
            budget.check_terms("sequence generation", count)?;
            let params = RecurrenceParams::new(a, b, p, q)?;
            let window = sequences::generate(&params, count as usize)?;
            Ok(Report::new("seq gen", window, false))
        }
        SeqCmd::Fundamental { a, p, q } => {
            let params = RecurrenceParams::new(a, 1, p, q)?;
            let fp = sequences::fundamental_pair(&params)?;
            Ok(Report::new("seq fundamental", json!({ "input": params, "fundamental": fp }), false))
        }
        SeqCmd::Cassini { a, b, i } => {
            budget.check_terms("cassini index", i)?;
            let params = RecurrenceParams::new(a, b, 0, 1)?;
            let residual = sequences::cassini_residual(&params, i);
            let holds = residual == BigInt::from(0);
            let out = json!({
                "a": params.a().to_string(),
                "b": params.b().to_string(),
                "i": i,
                "residual": residual.to_string(),
                "holds": holds,
            });
            Ok(Report::new("seq cassini", out, !holds))
        }
    }
}

fn run_poly(cmd: PolyCmd, budget: &WorkBudget) -> sorec::Result<Report> {
    match cmd {
        PolyCmd::Eval { a, r, x, y } => {
            RecurrenceParams::base(a.clone())?;
            let fv = forms::form_value(&a, &r, &x, &y)?;
            let out = json!({
                "a": a.to_string(),
                "R": r.to_string(),
                "x": x.to_string(),
                "y": y.to_string(),
                "q_value": fv.q_value.to_string(),
                "jones_value": sorec::json::rational_string(&fv.jones_value),
                "positive_integer": fv.is_positive_integer(),
            });
            Ok(Report::new("poly eval", out, false))
        }
        PolyCmd::VerifyRange { a, r, max, start } => {
            let fundamental = match (start.p, start.q) {
                (Some(p), Some(q)) => Some(sequences::fundamental_pair(&RecurrenceParams::new(a.clone(), 1, p, q)?)?),
                _ => None,
            };
            RecurrenceParams::base(a.clone())?;
            let report = forms::verify_range_equivalence(&a, &r, fundamental.as_ref(), max, budget)?;
            let discrepancy = !report.equal;
            Ok(Report::new("poly verify-range", report, discrepancy))
        }
        PolyCmd::Identity { kind, a, i, j } => {
            let kind = IdentityKind::from(kind);
            let target = kind.target_index(i, j);
            budget.check_terms("identity index", target)?;
            let expected = RecurrenceParams::base(a.clone())?.term(target);
            let (value, error) = match forms::addition_identity(&a, kind, i, j) {
                Ok(v) => (Some(v), None),
                Err(e @ (Error::NotPerfectSquare { .. } | Error::OddNumerator { .. })) => (None, Some(e.to_string())),
                Err(e) => return Err(e),
            };
            let holds = value.as_ref() == Some(&expected);
            let out = json!({
                "kind": kind,
                "a": a.to_string(),
                "i": i,
                "j": j,
                "target_index": target,
                "value": value.map(|v| v.to_string()),
                "expected": expected.to_string(),
                "holds": holds,
                "error": error,
            });
            Ok(Report::new("poly identity", out, !holds))
        }
    }
}

fn ring_json(el: &ring::RingElement) -> Value {
    json!({
        "a": el.a_param().to_string(),
        "u": el.u.to_string(),
        "v": el.v.to_string(),
        "norm": el.norm().to_string(),
    })
}

fn run_ring(cmd: RingCmd, budget: &WorkBudget) -> sorec::Result<Report> {
    match cmd {
        RingCmd::Pow { a, n } => {
            budget.check_terms("ring power", n.saturating_mul(2))?;
            let el = ring::fundamental_power(&a, n)?;
            Ok(Report::new("ring pow", ring_json(&el), false))
        }
        RingCmd::ShiftedPow { a, p, q, n } => {
            budget.check_terms("ring power", n.saturating_mul(2))?;
            let el = ring::shifted_power(&a, &p, &q, n)?;
            Ok(Report::new("ring shifted-pow", ring_json(&el), false))
        }
        RingCmd::Units { a, bound } => {
            if bound < BigInt::from(1) {
                return Err(Error::InvalidArgument("bound must be >= 1".into()));
            }
            let pairs: Vec<[String; 2]> = ring::enumerate_unit_solutions(&a, &bound)?
                .into_iter()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect();
            let out = json!({ "a": a.to_string(), "bound": bound.to_string(), "pairs": pairs });
            Ok(Report::new("ring units", out, false))
        }
    }
}

fn run_pell(cmd: PellCmd, budget: &WorkBudget) -> sorec::Result<Report> {
    match cmd {
        PellCmd::Solve { a, sign, count } => {
            budget.check_terms("pell solutions", count.saturating_mul(2))?;
            let sign = match sign {
                SignArg::Plus => PellSign::Plus,
                SignArg::Minus => PellSign::Minus,
            };
            let solutions = pell::pell4_solutions(&a, sign, count as usize)?;
            let out = json!({
                "a": a.to_string(),
                "D": pell::discriminant(&a).to_string(),
                "sign": sign,
                "solutions": solutions,
            });
            Ok(Report::new("pell solve", out, false))
        }
        PellCmd::Isqrt { n } => {
            let (root, exact) = pell::isqrt(&n)?;
            let out = json!({ "n": n.to_string(), "root": root.to_string(), "exact": exact });
            Ok(Report::new("pell isqrt", out, false))
        }
    }
}

fn run_member(cmd: MemberCmd, budget: &WorkBudget) -> sorec::Result<Report> {
    match cmd {
        MemberCmd::Test { a, x } => {
            let verdict = membership::member_test(&a, &x)?;
            let out = json!({ "a": a.to_string(), "x": x.to_string(), "verdict": verdict });
            Ok(Report::new("member test", out, false))
        }
        MemberCmd::Selfcheck { a, limit } => {
            let report = membership::member_test_exhaustive_check(&a, limit, budget)?;
            let discrepancy = !report.agree;
            Ok(Report::new("member selfcheck", report, discrepancy))
        }
    }
}

fn run_norank(cmd: NorankCmd, budget: &WorkBudget) -> sorec::Result<Report> {
    match cmd {
        NorankCmd::Degree2 { a, b } => {
            let report = nonexistence::solve_degree2(&a, &b)?;
            let discrepancy = report.consistent != (b == BigInt::from(1));
            Ok(Report::new("norank degree2", report, discrepancy))
        }
        NorankCmd::Matrix { n } => {
            budget.check_degree("coefficient matrix", n)?;
            let report = nonexistence::nullspace(&nonexistence::build_matrix(n)?)?;
            Ok(Report::new("norank matrix", report, false))
        }
        NorankCmd::Scan { max } => {
            let report = nonexistence::scan_degrees(max, budget)?;
            let discrepancy = !report.only_degree_two;
            Ok(Report::new("norank scan", report, discrepancy))
        }
    }
}

fn run_oracle(cmd: OracleCmd, budget: &WorkBudget) -> sorec::Result<Report> {
    match cmd {
        OracleCmd::Units { a, rhs, bound } => {
            let report = oracle::search_unit_solutions(&a, rhs, bound, budget)?;
            let discrepancy = report.verdict == Verdict::CounterexampleFound;
            Ok(Report::new("oracle units", report, discrepancy))
        }
        OracleCmd::Cassini { a, b, bound } => {
            let report = oracle::search_cassini_triples(&a, &b, bound, budget)?;
            // non-sequence triples are the expected outcome; missing sequence triples are not
            let discrepancy = match &report.summary {
                SearchSummary::Cassini {
                    sequence_triples_expected,
                    sequence_triples_found,
                    ..
                } => sequence_triples_expected != sequence_triples_found,
                SearchSummary::Units { .. } => false,
            };
            Ok(Report::new("oracle cassini", report, discrepancy))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_values() {
        assert_eq!(parse_rhs("1").unwrap(), UnitRhs::Plus);
        assert_eq!(parse_rhs("+1").unwrap(), UnitRhs::Plus);
        assert_eq!(parse_rhs("-1").unwrap(), UnitRhs::Minus);
        assert!(parse_rhs("0").is_err());
    }

    #[test]
    fn help_goes_to_stdout_with_success() {
        let out = dispatch(["sorec", "norank", "--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("scan"));
    }

    #[test]
    fn validation_error_is_prefixed() {
        let out = dispatch(["sorec", "member", "test", "--a", "1", "--x", "-2"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.starts_with("error: "));
    }

    #[test]
    fn cli_definition_is_valid() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
