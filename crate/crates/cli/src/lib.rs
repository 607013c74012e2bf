//! The `kbona` command line.
//!
//! Every subcommand prints either text or a JSON envelope
//! `{"k": …, "subcommand": …, "results": […]}`. Exit status is 0 on success,
//! 1 when a verification check fails (or a documented discrepancy is found
//! under `--strict-paper`), and 2 on usage or domain errors.

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kbonacci::palindrome::count_occurrences;
use kbonacci::structure::Family;
use kbonacci::verify::{Suite, Verdict};
use kbonacci::{
    allowed_lengths, b_count, block_cuts, classify_crossing, default_n_max, length_set, reduce_mod_k,
    s_count, Catalog, CountTable, FormulaMode, GenMethod, Generator, Params, PalClass, Report, Word,
};

/// Environment variable overriding the generation length guard.
pub const MAX_LEN_VAR: &str = "KBONA_MAX_LEN";

#[derive(Debug, Parser)]
#[command(name = "kbona", version, about = "k-bonacci words and their palindromes")]
struct Cli {
    /// Output format. Defaults to plain digits when every digit is at most
    /// 9 and to space-separated digits otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Spaced,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Morphism,
    Recurrence,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Derived,
    AsStated,
}

impl From<Mode> for FormulaMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Derived => FormulaMode::Derived,
            Mode::AsStated => FormulaMode::AsStated,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    P1,
    P2,
    P3,
    P4,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Counts,
    Decomposition,
    Structure,
    Lemmas,
    Lengths,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print W_n (or F_n with --mod-k)
    Gen {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "recurrence")]
        method: Method,
        /// Reduce every digit modulo k.
        #[arg(long)]
        mod_k: bool,
    },
    /// Palindrome occurrence counts P(n) for n = 0..=n_max
    Count {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value = "derived")]
        mode: Mode,
        /// Also count by scanning the words.
        #[arg(long)]
        oracle: bool,
    },
    /// Split the palindromes of W_n into contained, bordering and straddling
    Decompose {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
    },
    /// List catalog elements, or classify one palindrome
    Structure {
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "all")]
        class: ClassArg,
        /// Largest shift to list.
        #[arg(long, default_value_t = 1)]
        i_max: u64,
        /// Classify this word instead of listing.
        #[arg(long)]
        classify: Option<String>,
    },
    /// Lengths of maximal palindromes, per family
    Lengths {
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "derived")]
        mode: Mode,
    },
    /// Run verification suites
    Verify {
        #[arg(long)]
        k: u64,
        /// Defaults to the largest n with |W_n| <= 65536.
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Treat disagreement with the printed statements as failure.
        #[arg(long)]
        strict_paper: bool,
    },
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    k: u64,
    subcommand: &'a str,
    results: Vec<T>,
}

/// A usage or domain error, reported on one line with exit status 2.
struct Usage(String);

impl From<kbonacci::Error> for Usage {
    fn from(e: kbonacci::Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<std::io::Error> for Usage {
    fn from(e: std::io::Error) -> Self {
        Usage(format!("output: {e}"))
    }
}

type Outcome = std::result::Result<i32, Usage>;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let _ = writeln!(err, "{}", msg.lines().next().unwrap_or("invalid arguments"));
            return 2;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn generator(k: u64) -> std::result::Result<Generator, Usage> {
    let gen = Generator::new(k)?;
    match std::env::var(MAX_LEN_VAR) {
        Ok(v) => {
            let limit: u64 = v
                .trim()
                .parse()
                .map_err(|_| Usage(format!("{MAX_LEN_VAR} must be a positive integer, got {v:?}")))?;
            if limit == 0 {
                return Err(Usage(format!("{MAX_LEN_VAR} must be positive")));
            }
            Ok(gen.with_max_len(limit))
        }
        Err(_) => Ok(gen),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Gen { k, n, method, mod_k } => gen_cmd(fmt, k, n, method, mod_k, out),
        Command::Count { k, n_max, mode, oracle } => count_cmd(fmt, k, n_max, mode.into(), oracle, out),
        Command::Decompose { k, n } => decompose_cmd(fmt, k, n, out),
        Command::Structure { k, class, i_max, classify } => {
            structure_cmd(fmt, k, class, i_max, classify.as_deref(), out)
        }
        Command::Lengths { k, mode } => lengths_cmd(fmt, k, mode.into(), out),
        Command::Verify { k, n_max, suite, strict_paper } => {
            verify_cmd(fmt, k, n_max, suite, strict_paper, out, err)
        }
    }
}

fn json<T: Serialize>(out: &mut dyn Write, k: u64, subcommand: &str, results: Vec<T>) -> Outcome {
    let env = Envelope { k, subcommand, results };
    let s = serde_json::to_string_pretty(&env).map_err(|e| Usage(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(0)
}

/// Renders a word for text output, refusing `plain` when it is ambiguous.
fn render(fmt: Option<Format>, w: &Word) -> std::result::Result<String, Usage> {
    match fmt {
        Some(Format::Plain) => w.to_plain().ok_or_else(|| {
            Usage("digits above 9 make plain output ambiguous; use --format spaced or --format json".into())
        }),
        Some(Format::Spaced) => Ok(w.to_spaced()),
        _ => Ok(w.to_string()),
    }
}

#[derive(Serialize)]
struct GenResult<'a> {
    n: u64,
    method: &'a str,
    mod_k: bool,
    length: usize,
    word: &'a Word,
}

fn gen_cmd(fmt: Option<Format>, k: u64, n: u64, method: Method, mod_k: bool, out: &mut dyn Write) -> Outcome {
    let gen = generator(k)?;
    let (w, name) = match method {
        Method::Morphism => (gen.word(n, GenMethod::ByMorphism)?, "morphism"),
        Method::Recurrence => (gen.word(n, GenMethod::ByRecurrence)?, "recurrence"),
    };
    let w = if mod_k { reduce_mod_k(k, &w)? } else { w };
    if fmt == Some(Format::Json) {
        let r = GenResult { n, method: name, mod_k, length: w.len(), word: &w };
        return json(out, k, "gen", vec![r]);
    }
    writeln!(out, "{}", render(fmt, &w)?)?;
    Ok(0)
}

#[derive(Serialize)]
struct CountRow {
    n: u64,
    p: u64,
    alpha: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agrees: Option<bool>,
}

fn count_cmd(
    fmt: Option<Format>,
    k: u64,
    n_max: u64,
    mode: FormulaMode,
    oracle: bool,
    out: &mut dyn Write,
) -> Outcome {
    Params::for_palindromes(k)?;
    let table = CountTable::build(k, n_max, mode)?;
    let scanned = if oracle {
        let (w, lens) = generator(k)?.word_with_prefix_lengths(n_max)?;
        let counts = lens
            .iter()
            .map(|&l| count_occurrences(&w.digits()[..l], 2))
            .collect::<kbonacci::Result<Vec<u64>>>()?;
        Some(counts)
    } else {
        None
    };
    let rows: Vec<CountRow> = (0..=n_max as usize)
        .map(|n| {
            let o = scanned.as_ref().map(|s| s[n]);
            CountRow {
                n: n as u64,
                p: table.p[n],
                alpha: table.alpha[n],
                oracle: o,
                agrees: o.map(|o| o == table.p[n]),
            }
        })
        .collect();
    let mismatch = rows.iter().any(|r| r.agrees == Some(false));
    // Only the derived formulas are expected to match the scan.
    let code = if mismatch && mode == FormulaMode::Derived { 1 } else { 0 };

    if fmt == Some(Format::Json) {
        json(out, k, "count", rows)?;
        return Ok(code);
    }
    if oracle {
        writeln!(out, "{:>4} {:>20} {:>20} {:>20}  match", "n", "P", "alpha", "oracle")?;
    } else {
        writeln!(out, "{:>4} {:>20} {:>20}", "n", "P", "alpha")?;
    }
    for r in &rows {
        let a = r.alpha.map_or("-".to_string(), |a| a.to_string());
        match (r.oracle, r.agrees) {
            (Some(o), Some(ok)) => writeln!(
                out,
                "{:>4} {:>20} {:>20} {:>20}  {}",
                r.n,
                r.p,
                a,
                o,
                if ok { "yes" } else { "NO" }
            )?,
            _ => writeln!(out, "{:>4} {:>20} {:>20}", r.n, r.p, a)?,
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct Bucket {
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<u64>,
    count: u64,
    expected: u64,
}

#[derive(Serialize)]
struct Block {
    label: u64,
    /// 1-based, inclusive.
    start: usize,
    end: usize,
}

#[derive(Serialize)]
struct Decomposition {
    n: u64,
    length: usize,
    blocks: Vec<Block>,
    contained: Bucket,
    bordering: Vec<Bucket>,
    straddling: Bucket,
    total: u64,
}

fn decompose_cmd(fmt: Option<Format>, k: u64, n: u64, out: &mut dyn Write) -> Outcome {
    let gen = generator(k)?;
    let (w, spec) = block_cuts(&gen, n)?;
    let counts = classify_crossing(w.digits(), &spec, 2)?;
    let table = CountTable::build(k, n, FormulaMode::Derived)?;

    let mut bounds = vec![0];
    bounds.extend_from_slice(spec.cuts());
    bounds.push(w.len());
    let blocks = spec
        .labels()
        .iter()
        .zip(bounds.windows(2))
        .map(|(&label, b)| Block { label, start: b[0] + 1, end: b[1] })
        .collect();
    let d = Decomposition {
        n,
        length: w.len(),
        blocks,
        contained: Bucket {
            j: None,
            count: counts.contained,
            expected: table.p[(n - k) as usize..n as usize].iter().sum(),
        },
        bordering: counts
            .bordering
            .iter()
            .rev()
            .map(|(&j, &count)| Ok(Bucket { j: Some(j), count, expected: b_count(k, n, j)? }))
            .collect::<kbonacci::Result<_>>()?,
        straddling: Bucket { j: None, count: counts.straddling, expected: s_count(k, n)? },
        total: counts.total(),
    };
    let agrees = d.contained.count == d.contained.expected
        && d.straddling.count == d.straddling.expected
        && d.bordering.iter().all(|b| b.count == b.expected);
    let code = if agrees { 0 } else { 1 };

    if fmt == Some(Format::Json) {
        json(out, k, "decompose", vec![d])?;
        return Ok(code);
    }
    writeln!(out, "W_{n}: length {}", d.length)?;
    for (i, b) in d.blocks.iter().enumerate() {
        let shift = if i + 1 == d.blocks.len() { format!("{k}+") } else { String::new() };
        writeln!(out, "  block {shift}W_{} [{}, {}]", b.label, b.start, b.end)?;
    }
    writeln!(out, "contained    {:>12} (expected {})", d.contained.count, d.contained.expected)?;
    for b in &d.bordering {
        writeln!(
            out,
            "bordering j={:<3}{:>10} (expected {})",
            b.j.unwrap_or(0),
            b.count,
            b.expected
        )?;
    }
    writeln!(out, "straddling   {:>12} (expected {})", d.straddling.count, d.straddling.expected)?;
    writeln!(out, "total        {:>12}", d.total)?;
    Ok(code)
}

#[derive(Serialize)]
struct Element<'a> {
    family: Family,
    class: PalClass,
    length: usize,
    word: &'a Word,
}

#[derive(Serialize)]
struct Classification<'a> {
    word: &'a Word,
    classes: Vec<PalClass>,
}

fn families(class: ClassArg) -> Vec<Family> {
    match class {
        ClassArg::P1 => vec![Family::P1],
        ClassArg::P2 => vec![Family::P2],
        ClassArg::P3 => vec![Family::P3],
        ClassArg::P4 => vec![Family::P4],
        ClassArg::All => Family::ALL.to_vec(),
    }
}

fn structure_cmd(
    fmt: Option<Format>,
    k: u64,
    class: ClassArg,
    i_max: u64,
    classify: Option<&str>,
    out: &mut dyn Write,
) -> Outcome {
    let catalog = Catalog::new(k)?;
    if let Some(text) = classify {
        let w: Word = text.parse()?;
        let classes: Vec<PalClass> = catalog.classify(&w)?.into_iter().collect();
        if fmt == Some(Format::Json) {
            return json(out, k, "structure", vec![Classification { word: &w, classes }]);
        }
        if classes.is_empty() {
            writeln!(out, "{}: not a maximal palindromic factor", render(fmt, &w)?)?;
        }
        for c in &classes {
            writeln!(out, "{c}")?;
        }
        return Ok(0);
    }

    let mut elements = Vec::new();
    for f in families(class) {
        elements.extend(catalog.elements(f, i_max)?);
    }
    if fmt == Some(Format::Json) {
        let rows = elements
            .iter()
            .map(|(w, c)| Element { family: c.family(), class: *c, length: w.len(), word: w })
            .collect();
        return json(out, k, "structure", rows);
    }
    for (w, c) in &elements {
        writeln!(out, "{c}\t{}", render(fmt, w)?)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct LengthRow {
    family: String,
    mode: FormulaMode,
    lengths: Vec<u64>,
}

fn lengths_cmd(fmt: Option<Format>, k: u64, mode: FormulaMode, out: &mut dyn Write) -> Outcome {
    let mut rows = Vec::new();
    for f in Family::ALL {
        let set = length_set(k, f, mode)?;
        rows.push(LengthRow { family: f.to_string(), mode, lengths: set.lengths.into_iter().collect() });
    }
    let all = allowed_lengths(k, mode)?;
    rows.push(LengthRow { family: "all".into(), mode, lengths: all.lengths.into_iter().collect() });
    if fmt == Some(Format::Json) {
        return json(out, k, "lengths", rows);
    }
    for r in &rows {
        let ls: Vec<String> = r.lengths.iter().map(u64::to_string).collect();
        writeln!(out, "{}: {}", r.family, ls.join(" "))?;
    }
    Ok(0)
}

fn verify_cmd(
    fmt: Option<Format>,
    k: u64,
    n_max: Option<u64>,
    suite: SuiteArg,
    strict_paper: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    Params::for_palindromes(k)?;
    let gen = generator(k)?;
    let n_max = match n_max {
        Some(n) => n,
        None => default_n_max(k)?.min(gen.max_index_within(gen.max_len())),
    };
    let suites: Vec<Suite> = match suite {
        SuiteArg::Counts => vec![Suite::Counts],
        SuiteArg::Decomposition => vec![Suite::Decomposition],
        SuiteArg::Structure => vec![Suite::Structure],
        SuiteArg::Lemmas => vec![Suite::Lemmas],
        SuiteArg::Lengths => vec![Suite::Lengths],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut reports: Vec<Report> = Vec::new();
    for s in suites {
        match s.run(&gen, n_max) {
            Ok(r) => reports.push(r),
            // The length scan has its own size limit; under `all` it is
            // skipped rather than failing the other suites.
            Err(e) if s == Suite::Lengths && matches!(suite, SuiteArg::All) => {
                writeln!(err, "note: lengths suite skipped: {e}")?;
            }
            Err(e) => return Err(e.into()),
        }
    }

    let failed = reports.iter().any(Report::has_failures);
    let disc = reports.iter().any(Report::has_discrepancies);
    let code = if failed || (strict_paper && disc) { 1 } else { 0 };

    if fmt == Some(Format::Json) {
        json(out, k, "verify", reports)?;
        return Ok(code);
    }
    for r in &reports {
        let params: Vec<String> = r.parameters.iter().map(|(p, v)| format!("{p}={v}")).collect();
        writeln!(
            out,
            "{} k={} {}: {} pass, {} fail, {} discrepancy, {} skipped ({:.1} ms)",
            r.suite,
            r.k,
            params.join(" "),
            r.summary.pass,
            r.summary.fail,
            r.summary.discrepancy,
            r.summary.skipped,
            r.wall_time_ms
        )?;
        let mut shown: BTreeMap<&str, usize> = BTreeMap::new();
        for c in r.checks.iter().filter(|c| matches!(c.verdict, Verdict::Fail | Verdict::DiscrepancyDocumented)) {
            let seen = shown.entry(c.id.as_str()).or_default();
            *seen += 1;
            if *seen > 5 {
                continue;
            }
            let verdict = match c.verdict {
                Verdict::Fail => "FAIL",
                Verdict::DiscrepancyDocumented => "Discrepancy-Documented",
                Verdict::Skipped => "skipped",
                Verdict::Pass => "pass",
            };
            let mut at = String::new();
            if let Some(n) = c.n {
                at.push_str(&format!(" n={n}"));
            }
            if let Some(j) = c.j {
                at.push_str(&format!(" j={j}"));
            }
            let expected = serde_json::to_string(&c.expected).unwrap_or_default();
            let actual = serde_json::to_string(&c.actual).unwrap_or_default();
            write!(out, "  {verdict} {}{at}: expected {expected} ({:?}), actual {actual}", c.id, c.provenance)?;
            match &c.note {
                Some(note) => writeln!(out, "; {note}")?,
                None => writeln!(out)?,
            }
        }
    }
    let verdict = if code == 0 { "ok" } else { "FAILED" };
    writeln!(out, "{verdict}")?;
    Ok(code)
}
