//! Command-line driver. `main` only forwards process arguments and standard
//! streams to [`run`], so every command can be exercised in-process.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 step budget exceeded,
//! 3 internal invariant failure (including a formula mismatch in `table`).

use std::io::{BufRead, Write};
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bijection::{compose, factorize, phi, phi_inverse, Factorization};
use crate::enumeration::{
    brute_force_valid_count, count_valid, count_valid_with_prefix, enumerate_valid, prefix_formula, CountReport,
    DEFAULT_STEP_BUDGET,
};
use crate::error::Error;
use crate::lattice::{GridParams, LatticePath, Point};
use crate::validity::{find_violation, is_valid_by_crossing, Violation};
use crate::BigCount;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "latpath",
    version,
    about = "Valid lattice paths under (r,s)-translation equivalence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Params {
    /// East period
    #[arg(long)]
    pub r: i64,
    /// North period
    #[arg(long)]
    pub s: i64,
    /// Number of blocks
    #[arg(long)]
    pub n: i64,
}

impl Params {
    fn grid(&self) -> Result<GridParams, Error> {
        GridParams::new(self.r, self.s, self.n)
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Budget {
    /// Largest n(r+s) that will be enumerated
    #[arg(long, env = "LATPATH_BUDGET", default_value_t = DEFAULT_STEP_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check paths for validity; `-` reads one path per line from stdin
    Validate {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
        #[arg(required = true)]
        paths: Vec<String>,
    },
    /// Count valid paths from (0,0) to (nr,ns) against C(r+s,r)^n
    Count {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        budget: Budget,
        /// Count only paths starting with exactly this many E-steps before the first N (s = 2)
        #[arg(long)]
        prefix: Option<u64>,
        /// Cross-check against the unpruned brute-force count
        #[arg(long)]
        oracle: bool,
    },
    /// List every valid path from (0,0) to (nr,ns) in lexicographic order
    Enumerate {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        budget: Budget,
    },
    /// Split a valid path into a single block and the rest (s = 2)
    Phi {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
        path: String,
    },
    /// Rebuild a path from a single block and the rest (s = 2)
    #[command(name = "phi-inv")]
    PhiInv {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
        p1: String,
        q: String,
    },
    /// Factor a valid path into n single blocks (s = 2); `--inverse` composes factors back
    Decompose {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        inverse: bool,
        #[arg(required = true)]
        paths: Vec<String>,
    },
    /// Sweep ranges of (r,s,n), e.g. `--r 1..3 --s 2 --n 1..2`
    Table {
        #[arg(long, value_parser = parse_range)]
        r: RangeInclusive<i64>,
        #[arg(long, value_parser = parse_range)]
        s: RangeInclusive<i64>,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<i64>,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        budget: Budget,
    },
    /// Run the built-in golden checks
    Selftest {
        #[command(flatten)]
        output: Output,
    },
}

fn parse_range(text: &str) -> Result<RangeInclusive<i64>, String> {
    let bound = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range bound {t:?}"));
    let range = match text.split_once("..") {
        Some((lo, hi)) => bound(lo)?..=bound(hi.trim_start_matches('='))?,
        None => {
            let v = bound(text)?;
            v..=v
        }
    };
    if range.is_empty() || *range.start() < 1 {
        return Err(format!("range {text:?} must be non-empty and positive"));
    }
    Ok(range)
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => EXIT_BUDGET,
            Error::Invariant(_) | Error::Overflow => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: format!("i/o error: {e}"),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, input, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

pub fn execute(command: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Validate { params, output, paths } => cmd_validate(params.grid()?, output.format, &paths, input, out),
        Command::Count {
            params,
            output,
            budget,
            prefix,
            oracle,
        } => cmd_count(params.grid()?, output.format, budget.budget, prefix, oracle, out),
        Command::Enumerate { params, output, budget } => {
            cmd_enumerate(params.grid()?, output.format, budget.budget, out)
        }
        Command::Phi { params, output, path } => cmd_phi(params.grid()?, output.format, &path, out),
        Command::PhiInv { params, output, p1, q } => cmd_phi_inv(params.grid()?, output.format, &p1, &q, out),
        Command::Decompose {
            params,
            output,
            inverse,
            paths,
        } => cmd_decompose(params.grid()?, output.format, inverse, &paths, out),
        Command::Table {
            r,
            s,
            n,
            output,
            budget,
        } => cmd_table(r, s, n, output.format, budget.budget, out),
        Command::Selftest { output } => cmd_selftest(output.format, out),
    }
}

fn parse_path(text: &str) -> Result<LatticePath, Failure> {
    text.trim().parse::<LatticePath>().map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{text:?}: {e}"),
    })
}

fn check_budget(g: GridParams, budget: u64) -> Result<(), Error> {
    if g.path_len() > budget {
        return Err(Error::Budget {
            steps: g.path_len(),
            budget,
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct ValidateRow {
    path: LatticePath,
    valid: bool,
    violation: Option<Violation>,
    crossing_agrees: bool,
}

fn cmd_validate(
    g: GridParams,
    format: Format,
    args: &[String],
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CmdResult {
    let mut texts = Vec::new();
    for arg in args {
        if arg == "-" {
            for line in input.lines() {
                let line = line?;
                if !line.trim().is_empty() {
                    texts.push(line);
                }
            }
        } else {
            texts.push(arg.clone());
        }
    }
    let rows = texts
        .iter()
        .map(|t| {
            let path = parse_path(t)?;
            let violation = find_violation(&path, g);
            let crossing_agrees = is_valid_by_crossing(&path, g) == violation.is_none();
            Ok(ValidateRow {
                path,
                valid: violation.is_none(),
                violation,
                crossing_agrees,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;

    if format == Format::Csv {
        writeln!(out, "path,valid,first,second,ell,crossing_agrees")?;
    }
    for row in &rows {
        match format {
            Format::Text => {
                let verdict = match &row.violation {
                    None => "valid".to_string(),
                    Some(v) => format!("invalid; violation {v}"),
                };
                let crossing = if row.crossing_agrees { "agrees" } else { "DISAGREES" };
                writeln!(out, "{}: {verdict}; crossing check {crossing}", row.path)?;
            }
            Format::Json => writeln!(out, "{}", serde_json::to_string(row).expect("rows serialise"))?,
            Format::Csv => {
                let (first, second, ell) = match &row.violation {
                    None => (String::new(), String::new(), String::new()),
                    Some(v) => (
                        format!("{} {}", v.first.x, v.first.y),
                        format!("{} {}", v.second.x, v.second.y),
                        v.ell.to_string(),
                    ),
                };
                writeln!(
                    out,
                    "{},{},{first},{second},{ell},{}",
                    row.path, row.valid, row.crossing_agrees
                )?;
            }
        }
    }
    if rows.iter().any(|r| !r.crossing_agrees) {
        return Err(Error::Invariant("validity checkers disagree".into()).into());
    }
    Ok(EXIT_OK)
}

fn cmd_count(
    g: GridParams,
    format: Format,
    budget: u64,
    prefix: Option<u64>,
    oracle: bool,
    out: &mut dyn Write,
) -> CmdResult {
    check_budget(g, budget)?;
    if let Some(a) = prefix {
        if g.s() != 2 {
            return Err(Error::Domain(format!(
                "--prefix compares against the s = 2 formula, got s = {}",
                g.s()
            ))
            .into());
        }
        if a > g.r() as u64 {
            return Err(Error::Domain(format!("--prefix must be at most r = {}", g.r())).into());
        }
        let count = count_valid_with_prefix(g, a);
        let formula = prefix_formula(g, a)?;
        let matches = count == formula;
        match format {
            Format::Text => writeln!(
                out,
                "r={} s={} n={} a={a} count={count} formula={formula} match={matches}",
                g.r(),
                g.s(),
                g.n()
            )?,
            Format::Json => {
                let row = PrefixRow {
                    r: g.r(),
                    s: g.s(),
                    n: g.n(),
                    a,
                    count,
                    formula,
                    matches,
                };
                writeln!(out, "{}", serde_json::to_string(&row).expect("rows serialise"))?
            }
            Format::Csv => {
                writeln!(out, "r,s,n,a,count,formula,match")?;
                writeln!(out, "{},{},{},{a},{count},{formula},{matches}", g.r(), g.s(), g.n())?
            }
        }
        return Ok(EXIT_OK);
    }

    let report = count_valid(g);
    if oracle {
        let brute = brute_force_valid_count(g, budget)?;
        if brute != report.valid_count {
            return Err(Error::Invariant(format!(
                "pruned enumeration found {} paths, brute force {brute}",
                report.valid_count
            ))
            .into());
        }
    }
    write_reports(format, &[Row::Counted(report)], false, out)?;
    Ok(EXIT_OK)
}

fn cmd_enumerate(g: GridParams, format: Format, budget: u64, out: &mut dyn Write) -> CmdResult {
    check_budget(g, budget)?;
    match format {
        Format::Text => {
            for path in enumerate_valid(g) {
                writeln!(out, "{path}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "path")?;
            for path in enumerate_valid(g) {
                writeln!(out, "{path}")?;
            }
        }
        Format::Json => {
            let all: Vec<LatticePath> = enumerate_valid(g).collect();
            writeln!(out, "{}", serde_json::to_string(&all).expect("paths serialise"))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_phi(g: GridParams, format: Format, text: &str, out: &mut dyn Write) -> CmdResult {
    let image = phi(&parse_path(text)?, g)?;
    match format {
        Format::Text => writeln!(out, "p1={} q={}", image.p1, image.q)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(&image).expect("image serialises"))?,
        Format::Csv => {
            writeln!(out, "p1,q")?;
            writeln!(out, "{},{}", image.p1, image.q)?
        }
    }
    Ok(EXIT_OK)
}

fn cmd_phi_inv(g: GridParams, format: Format, p1: &str, q: &str, out: &mut dyn Write) -> CmdResult {
    let path = phi_inverse(&parse_path(p1)?, &parse_path(q)?, g)?;
    write_path(format, &path, out)?;
    Ok(EXIT_OK)
}

fn write_path(format: Format, path: &LatticePath, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{path}"),
        Format::Json => writeln!(out, "{}", serde_json::to_string(path).expect("path serialises")),
        Format::Csv => writeln!(out, "path\n{path}"),
    }
}

fn cmd_decompose(g: GridParams, format: Format, inverse: bool, texts: &[String], out: &mut dyn Write) -> CmdResult {
    let paths = texts.iter().map(|t| parse_path(t)).collect::<Result<Vec<_>, _>>()?;
    if inverse {
        let path = compose(&Factorization { factors: paths }, g)?;
        write_path(format, &path, out)?;
        return Ok(EXIT_OK);
    }
    let [path] = paths.as_slice() else {
        return Err(Failure {
            code: EXIT_USAGE,
            message: "decompose takes exactly one path".into(),
        });
    };
    let factors = factorize(path, g)?;
    match format {
        Format::Text => {
            let list: Vec<String> = factors.factors.iter().map(|f| f.to_string()).collect();
            writeln!(out, "[{}]", list.join(", "))?
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(&factors).expect("factors serialise"))?,
        Format::Csv => {
            writeln!(out, "index,factor")?;
            for (i, f) in factors.factors.iter().enumerate() {
                writeln!(out, "{},{f}", i + 1)?;
            }
        }
    }
    Ok(EXIT_OK)
}

enum Row {
    Counted(CountReport),
    Skipped(GridParams),
}

#[derive(Serialize)]
#[serde(untagged)]
enum JsonRow<'a> {
    Counted(&'a CountReport),
    Skipped { r: i64, s: i64, n: i64, skipped: bool },
}

#[derive(Serialize)]
struct PrefixRow {
    r: i64,
    s: i64,
    n: i64,
    a: u64,
    #[serde(with = "crate::count::decimal")]
    count: BigCount,
    #[serde(with = "crate::count::decimal")]
    formula: BigCount,
    #[serde(rename = "match")]
    matches: bool,
}

/// JSON output is a bare object for `count` and an array for `table`.
fn write_reports(format: Format, rows: &[Row], as_array: bool, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Text => {
            for row in rows {
                match row {
                    Row::Counted(c) => writeln!(
                        out,
                        "r={} s={} n={} valid={} total={} formula={} match={}",
                        c.params.r(),
                        c.params.s(),
                        c.params.n(),
                        c.valid_count,
                        c.total_count,
                        c.formula_count,
                        c.matches
                    )?,
                    Row::Skipped(g) => writeln!(out, "r={} s={} n={} skipped (over budget)", g.r(), g.s(), g.n())?,
                }
            }
        }
        Format::Csv => {
            writeln!(out, "r,s,n,valid,total,formula,match")?;
            for row in rows {
                match row {
                    Row::Counted(c) => writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        c.params.r(),
                        c.params.s(),
                        c.params.n(),
                        c.valid_count,
                        c.total_count,
                        c.formula_count,
                        c.matches
                    )?,
                    Row::Skipped(g) => writeln!(out, "{},{},{},,,,skipped", g.r(), g.s(), g.n())?,
                }
            }
        }
        Format::Json => {
            let values: Vec<JsonRow> = rows
                .iter()
                .map(|row| match row {
                    Row::Counted(c) => JsonRow::Counted(c),
                    Row::Skipped(g) => JsonRow::Skipped {
                        r: g.r(),
                        s: g.s(),
                        n: g.n(),
                        skipped: true,
                    },
                })
                .collect();
            let text = match (as_array, values.as_slice()) {
                (false, [single]) => serde_json::to_string(single),
                _ => serde_json::to_string(&values),
            };
            writeln!(out, "{}", text.expect("reports serialise"))?;
        }
    }
    Ok(())
}

fn cmd_table(
    rs: RangeInclusive<i64>,
    ss: RangeInclusive<i64>,
    ns: RangeInclusive<i64>,
    format: Format,
    budget: u64,
    out: &mut dyn Write,
) -> CmdResult {
    let mut rows = Vec::new();
    for r in rs {
        for s in ss.clone() {
            for n in ns.clone() {
                let g = GridParams::new(r, s, n)?;
                rows.push(if g.path_len() > budget {
                    Row::Skipped(g)
                } else {
                    Row::Counted(count_valid(g))
                });
            }
        }
    }
    write_reports(format, &rows, true, out)?;
    let mismatched = rows.iter().any(|row| matches!(row, Row::Counted(c) if !c.matches));
    Ok(if mismatched { EXIT_INTERNAL } else { EXIT_OK })
}

/// Golden checks run by `selftest`: (name, outcome).
pub fn selftest_checks() -> Vec<(&'static str, bool)> {
    let grid = |r, s, n| GridParams::new(r, s, n).expect("positive");
    let path = |t: &str| t.parse::<LatticePath>().expect("fixture parses");
    let mut checks = Vec::new();

    checks.push((
        "invalid path with witness (2,1) -> (8,5), ell=2",
        find_violation(&path("ENENNNEEEEEENNE"), grid(3, 2, 3))
            == Some(Violation {
                first: Point::new(2, 1),
                second: Point::new(8, 5),
                ell: 2,
            }),
    ));
    let image_ok = |word: &str, q: &str| {
        phi(&path(word), grid(2, 2, 3)).is_ok_and(|im| im.p1.to_string() == "NENE" && im.q.to_string() == q)
    };
    checks.push(("phi absorb case NENNNNEEENEE", image_ok("NENNNNEEENEE", "2,2:NNNEEENE")));
    checks.push(("phi wrap case NNNNNEEEEENE", image_ok("NNNNNEEEEENE", "2,2:EENNNNEE")));
    checks.push((
        "10^n valid paths for r=3, s=2, n=1..3",
        (1..=3).all(|n| count_valid(grid(3, 2, n)).valid_count == num_bigint::BigUint::from(10u32).pow(n as u32)),
    ));
    checks.push((
        "pruned count equals brute force for (2,2,2)",
        brute_force_valid_count(grid(2, 2, 2), DEFAULT_STEP_BUDGET)
            .is_ok_and(|b| b == count_valid(grid(2, 2, 2)).valid_count),
    ));
    checks.push((
        "factorize/compose round trip on V_2 for r=3, s=2",
        enumerate_valid(grid(3, 2, 2)).all(|p| {
            factorize(&p, grid(3, 2, 2))
                .and_then(|f| compose(&f, grid(3, 2, 2)))
                .is_ok_and(|back| back == p)
        }),
    ));
    checks
}

fn cmd_selftest(format: Format, out: &mut dyn Write) -> CmdResult {
    let checks = selftest_checks();
    match format {
        Format::Text => {
            for (name, ok) in &checks {
                writeln!(out, "{} {name}", if *ok { "PASS" } else { "FAIL" })?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|(name, ok)| json!({"check": name, "pass": ok}))
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(rows))?;
        }
        Format::Csv => {
            writeln!(out, "check,pass")?;
            for (name, ok) in &checks {
                writeln!(out, "\"{name}\",{ok}")?;
            }
        }
    }
    Ok(if checks.iter().all(|(_, ok)| *ok) {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    })
}
