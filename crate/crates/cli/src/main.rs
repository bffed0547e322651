use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use permpat::catalog::{classify, verify, FindingStatus, VerificationReport};
use permpat::enumerator::{count_avoiders, count_table, enumerate_avoiders};
use permpat::nu::{nu, nu_power};
use permpat::perm::{find_occurrence, standardize};
use permpat::symmetry::orbit;
use permpat::{PatternSet, Permutation, Word};

const DEFAULT_CAP: usize = 11;
const CAP_VAR: &str = "PERMPAT_NMAX_CAP";

#[derive(Parser)]
#[command(
    name = "permpat",
    version,
    about = "Permutation pattern avoidance toolkit"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Lines, global = true)]
    format: Format,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Lines,
    Json,
    Csv,
}

#[derive(Args)]
struct SetArg {
    /// Pattern set, e.g. "123;3412" or "123,132,213"
    #[arg(long)]
    set: String,
}

#[derive(Subcommand)]
enum Command {
    /// Does TEXT contain PATTERN?
    Contains {
        #[arg(long)]
        text: String,
        #[arg(long)]
        pattern: String,
    },
    /// Replace a word's letters by their ranks
    Standardize {
        #[arg(long)]
        word: String,
    },
    /// The symmetry class of a pattern set
    Orbit(SetArg),
    /// Length-(k+1) patterns containing some member of the set
    Nu {
        #[command(flatten)]
        set: SetArg,
        /// Apply nu this many times
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// List the avoiders of length n
    Enumerate {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        n: usize,
    },
    /// Count avoiders of length n, or of every length up to nmax
    Count {
        #[command(flatten)]
        set: SetArg,
        #[arg(long, conflicts_with = "nmax", required_unless_present = "nmax")]
        n: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Look up the table row covering a set and compare with the oracle
    Classify {
        #[command(flatten)]
        set: SetArg,
        #[arg(long, default_value_t = 9)]
        nmax: usize,
    },
    /// Check every table row against exhaustive enumeration
    Verify {
        #[arg(long, default_value_t = 9)]
        nmax: usize,
    },
}

/// What a command produced: the text to emit and whether it is clean.
struct Output {
    text: String,
    clean: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, clean: true }
    }
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli.out, &out.text) {
                if e.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if out.clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn cap() -> CliResult<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("{CAP_VAR}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn check_cap(flag: &str, n: usize) -> CliResult<usize> {
    let cap = cap()?;
    if n > cap {
        return Err(UsageError(format!(
            "--{flag} {n} exceeds the cap of {cap} (set {CAP_VAR} to raise it)"
        )));
    }
    Ok(n)
}

fn parse_set(literal: &str) -> CliResult<PatternSet> {
    literal
        .parse()
        .map_err(|e| UsageError(format!("--set {literal:?}: {e}")))
}

fn parse_perm(flag: &str, literal: &str) -> CliResult<Permutation> {
    literal
        .parse()
        .map_err(|e| UsageError(format!("--{flag} {literal:?}: {e}")))
}

fn run(cli: &Cli) -> CliResult<Output> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(UsageError("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()?;
    }
    let f = cli.format;
    match &cli.command {
        Command::Contains { text, pattern } => {
            let text = parse_perm("text", text)?;
            let pattern = parse_perm("pattern", pattern)?;
            let hit = find_occurrence(&text, &pattern);
            let body = match f {
                Format::Lines => match &hit {
                    Some(ix) => format!("true {}\n", join(ix, ",")),
                    None => "false\n".into(),
                },
                Format::Json => to_json(&json!({
                    "text": text.to_string(),
                    "pattern": pattern.to_string(),
                    "contains": hit.is_some(),
                    "positions": hit,
                }))?,
                Format::Csv => csv_rows(
                    &["text", "pattern", "contains", "positions"],
                    [[
                        text.to_string(),
                        pattern.to_string(),
                        hit.is_some().to_string(),
                        hit.map(|ix| join(&ix, " ")).unwrap_or_default(),
                    ]],
                )?,
            };
            Ok(Output::ok(body))
        }
        Command::Standardize { word } => {
            let w: Word = word
                .parse()
                .map_err(|e| UsageError(format!("--word {word:?}: {e}")))?;
            let p = standardize(&w);
            let body = match f {
                Format::Lines => format!("{p}\n"),
                Format::Json => {
                    to_json(&json!({ "word": w.to_string(), "standardized": p.to_string() }))?
                }
                Format::Csv => {
                    csv_rows(&["word", "standardized"], [[w.to_string(), p.to_string()]])?
                }
            };
            Ok(Output::ok(body))
        }
        Command::Orbit(SetArg { set }) => {
            let o = orbit(&parse_set(set)?);
            let body = match f {
                Format::Lines => lines(o.members.iter()),
                Format::Json => to_json(&o)?,
                Format::Csv => csv_rows(
                    &["representative", "member"],
                    o.members
                        .iter()
                        .map(|m| [o.representative.to_string(), m.to_string()]),
                )?,
            };
            Ok(Output::ok(body))
        }
        Command::Nu { set, power } => {
            let source = parse_set(&set.set)?;
            if *power == 0 {
                return Err(UsageError("--power must be at least 1".into()));
            }
            let image = if *power == 1 {
                nu(&source)?.image
            } else {
                nu_power(&source, *power)?
            };
            let body = match f {
                Format::Lines => lines(image.iter()),
                Format::Json => to_json(&json!({
                    "source": source,
                    "power": power,
                    "size": image.len(),
                    "image": image,
                }))?,
                Format::Csv => csv_rows(&["pattern"], image.iter().map(|p| [p.to_string()]))?,
            };
            Ok(Output::ok(body))
        }
        Command::Enumerate { set, n } => {
            let t = parse_set(&set.set)?;
            let n = check_cap("n", *n)?;
            let avoiders = enumerate_avoiders(n, &t);
            let body = match f {
                Format::Lines => lines(avoiders.iter()),
                Format::Json => to_json(&json!({
                    "set": t,
                    "n": n,
                    "count": avoiders.len(),
                    "avoiders": avoiders.iter().map(|p| p.entries()).collect::<Vec<_>>(),
                }))?,
                Format::Csv => {
                    csv_rows(&["permutation"], avoiders.iter().map(|p| [p.to_string()]))?
                }
            };
            Ok(Output::ok(body))
        }
        Command::Count { set, n, nmax } => {
            let t = parse_set(&set.set)?;
            let body = match (n, nmax) {
                (Some(n), _) => {
                    let n = check_cap("n", *n)?;
                    let c = count_avoiders(n, &t);
                    match f {
                        Format::Lines => format!("{c}\n"),
                        Format::Json => to_json(&json!({ "set": t, "n": n, "count": c }))?,
                        Format::Csv => csv_rows(
                            &["set", "n", "count"],
                            [[t.to_string(), n.to_string(), c.to_string()]],
                        )?,
                    }
                }
                (None, Some(m)) => {
                    let table = count_table(&t, check_cap("nmax", *m)?);
                    match f {
                        Format::Lines => table.counts.iter().map(|c| format!("{c}\n")).collect(),
                        Format::Json => to_json(&table)?,
                        Format::Csv => csv_rows(
                            &["set", "n", "count"],
                            table
                                .counts
                                .iter()
                                .enumerate()
                                .map(|(n, c)| [t.to_string(), n.to_string(), c.to_string()]),
                        )?,
                    }
                }
                (None, None) => unreachable!("clap requires --n or --nmax"),
            };
            Ok(Output::ok(body))
        }
        Command::Classify { set, nmax } => {
            let t = parse_set(&set.set)?;
            let c = classify(&t, check_cap("nmax", *nmax)?)?;
            let formula_at = |n: usize| -> Option<i64> {
                let entry = c.entry.as_ref()?;
                if (n as u32) < c.valid_from? {
                    return None;
                }
                entry
                    .formula
                    .eval(n as u32)
                    .ok()
                    .and_then(|v| i64::try_from(v).ok())
            };
            let rows: Vec<(usize, u64, Option<i64>)> = c
                .counts
                .counts
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &count)| (n, count, formula_at(n)))
                .collect();
            let body = match f {
                Format::Lines => {
                    let mut s = String::new();
                    writeln!(s, "set {t}").unwrap();
                    match &c.entry {
                        Some(e) => {
                            writeln!(s, "row {} ({})", e.label, e.stated).unwrap();
                            writeln!(
                                s,
                                "formula {} from n = {}",
                                e.formula,
                                c.valid_from.unwrap_or(0)
                            )
                            .unwrap();
                        }
                        None => writeln!(s, "row none").unwrap(),
                    }
                    for (n, o, fv) in &rows {
                        let mark = if fv.is_some_and(|v| v != *o as i64) {
                            " differs"
                        } else {
                            ""
                        };
                        let fv = fv.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                        writeln!(s, "n={n} oracle={o} formula={fv}{mark}").unwrap();
                    }
                    s
                }
                Format::Json => to_json(&json!({
                    "set": t,
                    "row": c.entry.as_ref().map(|e| &e.label),
                    "formula": c.entry.as_ref().map(|e| e.formula.to_string()),
                    "valid_from": c.valid_from,
                    "counts": rows.iter().map(|&(n, o, fv)| json!({ "n": n, "oracle": o, "formula": fv })).collect::<Vec<_>>(),
                }))?,
                Format::Csv => csv_rows(
                    &["set", "row", "n", "oracle", "formula"],
                    rows.iter().map(|(n, o, fv)| {
                        [
                            t.to_string(),
                            c.entry
                                .as_ref()
                                .map(|e| e.label.clone())
                                .unwrap_or_default(),
                            n.to_string(),
                            o.to_string(),
                            fv.map(|v| v.to_string()).unwrap_or_default(),
                        ]
                    }),
                )?,
            };
            Ok(Output::ok(body))
        }
        Command::Verify { nmax } => {
            let report = verify(check_cap("nmax", *nmax)?)?;
            let body = match f {
                Format::Lines => render_report(&report),
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for row in report.grid() {
                        w.serialize(row)?;
                    }
                    String::from_utf8(w.into_inner().map_err(|e| UsageError(e.to_string()))?)?
                }
            };
            Ok(Output {
                text: body,
                clean: report.is_clean(),
            })
        }
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn lines<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string() + "\n").collect()
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_rows<const N: usize>(
    header: &[&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(
        w.into_inner().map_err(|e| UsageError(e.to_string()))?,
    )?)
}

fn render_report(r: &VerificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "verification up to n = {}", r.n_max).unwrap();
    for c in &r.conventions {
        writeln!(s, "  convention: {c}").unwrap();
    }
    for t in &r.tables {
        writeln!(s).unwrap();
        writeln!(
            s,
            "table {}: claimed {} computed {}, covered {} of {}",
            t.id, t.claimed_total, t.computed_total, t.coverage.covered, t.coverage.universe
        )
        .unwrap();
        for row in &t.rows {
            let v = &row.verdicts;
            writeln!(
                s,
                "  {:<6} {:<28} from n={:<2} size {:>3}/{:<3} match {} mismatch {} excused {}{}",
                row.label,
                row.formula,
                row.valid_from,
                row.computed_size,
                row.claimed_size,
                v.matched,
                v.mismatched,
                v.excused,
                match row.sharp {
                    Some(true) => " sharp",
                    Some(false) => " not-sharp",
                    None => "",
                }
            )
            .unwrap();
        }
        for u in &t.coverage.uncovered {
            let conj = u
                .conjecture
                .as_ref()
                .map(|c| format!(" conjecture {} from n={}", c.formula, c.valid_from))
                .unwrap_or_default();
            writeln!(
                s,
                "  uncovered {} counts {}{}",
                u.set,
                join(&u.counts, " "),
                conj
            )
            .unwrap();
        }
        for p in t.pairs.iter().filter(|p| !p.mismatched_at.is_empty()) {
            writeln!(
                s,
                "  mismatch {} ({}) at n = {}{}",
                p.set,
                p.row.as_deref().unwrap_or("-"),
                join(&p.mismatched_at, ","),
                p.excused_by
                    .map(|f| format!(", explained by {f}"))
                    .unwrap_or_default()
            )
            .unwrap();
        }
        for c in &t.inconsistent_classes {
            writeln!(s, "  inconsistent class {c}").unwrap();
        }
    }
    writeln!(s).unwrap();
    writeln!(s, "calibrations").unwrap();
    for c in &r.calibrations {
        let agrees = match c.agrees {
            Some(true) => "agrees",
            Some(false) => "DISAGREES",
            None => "too few anchors",
        };
        writeln!(
            s,
            "  {:<6} {} stored offset {} calibrated {} {}",
            c.row,
            c.formula,
            c.stored_offset,
            c.calibrated_offset
                .map(|o| o.to_string())
                .unwrap_or_else(|| "-".into()),
            agrees
        )
        .unwrap();
    }
    writeln!(s).unwrap();
    let failed: Vec<_> = r.explicit_sets.iter().filter(|e| !e.matches).collect();
    writeln!(
        s,
        "explicit listings: {} checks, {} failed",
        r.explicit_sets.len(),
        failed.len()
    )
    .unwrap();
    for e in failed {
        writeln!(
            s,
            "  {} n={} missing {:?} extra {:?}",
            e.family, e.n, e.missing, e.extra
        )
        .unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "findings").unwrap();
    for f in &r.findings {
        let status = match f.status {
            FindingStatus::Confirmed => "confirmed",
            FindingStatus::Unexpected => "UNEXPECTED",
            FindingStatus::Inconclusive => "inconclusive",
        };
        writeln!(s, "  [{status}] {}: {}", f.id, f.observed).unwrap();
    }
    writeln!(s).unwrap();
    let m = &r.summary;
    writeln!(
        s,
        "summary: {} unexplained mismatches, {} excused, {} unexpected findings, {} size disagreements, {} calibration disagreements, {} explicit failures, {} inconsistent classes",
        m.unexplained_mismatches,
        m.excused_mismatches,
        m.unexpected_findings,
        m.size_disagreements,
        m.calibration_disagreements,
        m.explicit_failures,
        m.inconsistent_classes
    )
    .unwrap();
    writeln!(s, "{}", if r.is_clean() { "CLEAN" } else { "NOT CLEAN" }).unwrap();
    s
}
