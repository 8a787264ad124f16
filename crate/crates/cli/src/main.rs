//! `burau4`: command-line front end for the `burau4` library.
//!
//! Exit status: 0 success, 1 usage or parse error, 2 violations (or failed
//! self-test checks), 3 inconclusive results only.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use burau4::braid::{BraidWord, BvWord};
use burau4::burau::{burau, burau_bv};
use burau4::decomp::{
    default_n_max, extract_pqr, find_minimal_n, predict, validate, BaseWord, DecompError,
    DEFAULT_DEPTH,
};
use burau4::golden::self_test;
use burau4::regularity::{
    check_instance, kernel_filter, random_batch_with, scan_thresholds, trial_json, BatchConfig,
    KernelVerdict, MlPolicy, Template, SCHEMA_VERSION,
};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact reduced Burau representation of B4.
///
/// Words: a, b and A, B (inverses) for Bokut-Vesnin letters; s1..s3 and
/// S1..S3 for braid generators; optional power suffix such as a^3 or b^-2.
#[derive(Debug, Parser)]
#[command(name = "burau4", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// File of `key = value` lines supplying defaults for options
    /// (seed, count, length_min, length_max, template, offset, m, l, depth, n_max, format).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Burau matrix of a word.
    Eval { word: String },
    /// P, Q, R decomposition of a base word (smallest valid n unless --n is given).
    Decompose {
        word: String,
        #[arg(long)]
        n: Option<u32>,
        /// Number of predicted levels checked against direct evaluation [default: 3].
        #[arg(long)]
        depth: Option<u32>,
        /// Largest n tried when searching [default: 2·length + 4].
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Predicted (1,1) and (3,1) entries of a^(n+m)·word.
    Predict {
        word: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Regularity of a^m·sigma·a^-l.
    Check {
        sigma: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
    },
    /// Regularity over a grid of (m, l) and the resulting threshold.
    Scan {
        sigma: String,
        #[arg(long, default_value_t = 0)]
        m_min: u32,
        /// [default: length + 8]
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long, default_value_t = 0)]
        l_min: u32,
        /// [default: length + 8]
        #[arg(long)]
        l_max: Option<u32>,
    },
    /// Seeded random regularity experiment, written as JSON lines.
    Batch {
        /// Number of trials [default: 1000].
        #[arg(long)]
        count: Option<u64>,
        /// Seed [default: $BURAU4_SEED, else 0].
        #[arg(long, env = "BURAU4_SEED")]
        seed: Option<u64>,
        /// Shortest w [default: 4].
        #[arg(long)]
        length_min: Option<usize>,
        /// Longest w [default: 12].
        #[arg(long)]
        length_max: Option<usize>,
        /// Template with placeholder w [default: "a^3 b^3 w B^3 A^3"].
        #[arg(long)]
        template: Option<String>,
        /// Scan m = l from 1 to length(sigma) + offset [default: 8].
        #[arg(long, conflicts_with_all = ["m", "l"])]
        offset: Option<u32>,
        /// Check only this m (requires --l).
        #[arg(long, requires = "l")]
        m: Option<u32>,
        #[arg(long, requires = "m")]
        l: Option<u32>,
        /// Use this w in every trial.
        #[arg(long)]
        fixed_w: Option<String>,
    },
    /// Classify a B4 word against the kernel of phi, or sample random words.
    KernelFilter {
        word: Option<String>,
        /// Classify this many random words instead.
        #[arg(long, conflicts_with = "word")]
        random: Option<u64>,
        #[arg(long, default_value_t = 12)]
        length: usize,
        /// Seed [default: $BURAU4_SEED, else 0].
        #[arg(long, env = "BURAU4_SEED")]
        seed: Option<u64>,
    },
    /// Compare against all published reference values.
    Selftest,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

type CliResult = Result<u8, CliError>;

struct Settings {
    file: HashMap<String, String>,
    format: Format,
    output: Option<PathBuf>,
}

impl Settings {
    fn get<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| usage(format!("config key {key}: {e}"))),
            None => Ok(None),
        }
    }

    fn writer(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        })
    }

    fn emit(&self, text: &str, value: serde_json::Value) -> io::Result<()> {
        let mut w = self.writer()?;
        match self.format {
            Format::Text => writeln!(w, "{text}")?,
            Format::Json => writeln!(w, "{value}")?,
        }
        w.flush()
    }
}

fn read_config(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "{}:{}: expected key = value",
                path.display(),
                i + 1
            ))
        })?;
        let v = v.trim().trim_matches('"');
        map.insert(k.trim().replace('-', "_"), v.to_string());
    }
    Ok(map)
}

fn parse_bv(text: &str) -> Result<BvWord, CliError> {
    BvWord::parse(text).map_err(|e| usage(format!("cannot parse word {text:?}: {e}")))
}

fn parse_any(text: &str) -> Result<BaseWord, CliError> {
    if text.contains(['s', 'S', 'σ']) {
        BraidWord::parse(text, 4)
            .map(BaseWord::Braid)
            .map_err(|e| usage(format!("cannot parse word {text:?}: {e}")))
    } else {
        parse_bv(text).map(BaseWord::Bv)
    }
}

fn cmd_eval(s: &Settings, word: &str) -> CliResult {
    let w = parse_any(word)?;
    let m = match &w {
        BaseWord::Bv(w) => burau_bv(w),
        BaseWord::Braid(w) => burau(w),
    };
    s.emit(&m.to_string(), json!({"word": w.to_string(), "matrix": m}))?;
    Ok(0)
}

fn cmd_decompose(
    s: &Settings,
    word: &str,
    n: Option<u32>,
    depth: Option<u32>,
    n_max: Option<u32>,
) -> CliResult {
    let w = parse_any(word)?;
    let depth = s.get(depth, "depth")?.unwrap_or(DEFAULT_DEPTH);
    let result = match s.get(n, "n")? {
        Some(n) => extract_pqr(w, n)
            .and_then(|mut d| validate(&mut d, depth).map(|_| d))
            .map_err(|e| DecompError::Exhausted {
                n_max: n,
                failures: vec![(n, e)],
            }),
        None => {
            let n_max = s
                .get(n_max, "n_max")?
                .unwrap_or_else(|| default_n_max(w.len()));
            find_minimal_n(w, n_max, depth)
        }
    };
    match result {
        Ok(d) => {
            s.emit(
                &d.to_string(),
                serde_json::to_value(&d).expect("serializes"),
            )?;
            Ok(0)
        }
        Err(DecompError::ZeroDepth) => Err(usage("depth must be at least 1")),
        Err(DecompError::Exhausted { failures, .. }) => {
            for (n, e) in &failures {
                eprintln!("n = {n}: not decomposable: {e}");
            }
            let failures: Vec<_> = failures
                .iter()
                .map(|(n, e)| json!({"n": n, "reason": e.to_string()}))
                .collect();
            s.emit(
                "not decomposable",
                json!({"word": word, "decomposable": false, "failures": failures}),
            )?;
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn cmd_predict(s: &Settings, word: &str, m: u32, n: Option<u32>, depth: Option<u32>) -> CliResult {
    let w = parse_any(word)?;
    let depth = s.get(depth, "depth")?.unwrap_or(DEFAULT_DEPTH);
    let d = match s.get(n, "n")? {
        Some(n) => extract_pqr(w, n)
            .and_then(|mut d| validate(&mut d, depth).map(|_| d))
            .map_err(usage)?,
        None => {
            let n_max = default_n_max(w.len());
            find_minimal_n(w, n_max, depth).map_err(usage)?
        }
    };
    let (r11, r31) = predict(&d, m);
    let text = format!("power: {}\nrho11: {r11}\nrho31: {r31}", d.n + m);
    s.emit(
        &text,
        json!({"word": d.base_word.to_string(), "n": d.n, "m": m, "power": d.n + m, "rho11": r11, "rho31": r31}),
    )?;
    Ok(0)
}

fn cmd_check(s: &Settings, sigma: &str, m: u32, l: u32) -> CliResult {
    let o = check_instance(&parse_bv(sigma)?, m, l);
    s.emit(
        &o.to_string(),
        serde_json::to_value(&o).expect("serializes"),
    )?;
    Ok(0)
}

fn cmd_scan(
    s: &Settings,
    sigma: &str,
    m_min: u32,
    m_max: Option<u32>,
    l_min: u32,
    l_max: Option<u32>,
) -> CliResult {
    let sigma = parse_bv(sigma)?;
    let default_max = sigma.len() as u32 + 8;
    let m_max = m_max.unwrap_or(default_max);
    let l_max = l_max.unwrap_or(default_max);
    let table = scan_thresholds(&sigma, m_min..=m_max, l_min..=l_max).map_err(usage)?;
    s.emit(
        &table.to_string(),
        serde_json::to_value(&table).expect("serializes"),
    )?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_batch(
    s: &Settings,
    count: Option<u64>,
    seed: Option<u64>,
    length_min: Option<usize>,
    length_max: Option<usize>,
    template: Option<String>,
    offset: Option<u32>,
    m: Option<u32>,
    l: Option<u32>,
    fixed_w: Option<String>,
) -> CliResult {
    let defaults = BatchConfig::default();
    let template = match s.get(template, "template")? {
        Some(t) => Template::parse(&t).map_err(usage)?,
        None => defaults.template,
    };
    let policy = match (s.get(m, "m")?, s.get(l, "l")?) {
        (Some(m), Some(l)) => MlPolicy::Fixed { m, l },
        (None, None) => MlPolicy::Diagonal {
            offset: s.get(offset, "offset")?.unwrap_or(8),
        },
        _ => return Err(usage("m and l must be given together")),
    };
    let config = BatchConfig {
        count: s.get(count, "count")?.unwrap_or(defaults.count),
        length_min: s
            .get(length_min, "length_min")?
            .unwrap_or(defaults.length_min),
        length_max: s
            .get(length_max, "length_max")?
            .unwrap_or(defaults.length_max),
        template,
        policy,
        seed: s.get(seed, "seed")?.unwrap_or(0),
        fixed_w: s
            .get(fixed_w, "fixed_w")?
            .map(|w| parse_bv(&w))
            .transpose()?,
    };
    let mut out = s.writer()?;
    let mut io_error = None;
    let report = random_batch_with(&config, |t| {
        if io_error.is_none() {
            if let Err(e) = writeln!(out, "{}", trial_json(t)).and_then(|_| out.flush()) {
                io_error = Some(e);
            }
        }
    })
    .map_err(usage)?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    writeln!(out, "{}", report.summary_json())?;
    out.flush()?;
    eprintln!(
        "trials {} regular {} violations {} inconclusive {} seed {} wall time {:.3}s",
        report.trials,
        report.regular_count,
        report.violation_list.len(),
        report.inconclusive_list.len(),
        config.seed,
        report.wall_time.as_secs_f64()
    );
    Ok(if !report.violation_list.is_empty() {
        EXIT_VIOLATION
    } else if !report.inconclusive_list.is_empty() {
        EXIT_INCONCLUSIVE
    } else {
        0
    })
}

fn cmd_kernel_filter(
    s: &Settings,
    word: Option<String>,
    random: Option<u64>,
    length: usize,
    seed: Option<u64>,
) -> CliResult {
    match (word, random) {
        (Some(word), None) => {
            let w = BraidWord::parse(&word, 4)
                .map_err(|e| usage(format!("cannot parse word {word:?}: {e}")))?;
            let v = kernel_filter(&w);
            s.emit(&v.to_string(), json!({"word": w.to_string(), "verdict": v}))?;
            Ok(0)
        }
        (None, Some(count)) => {
            if count == 0 {
                return Err(usage("--random must be at least 1"));
            }
            let seed = s.get(seed, "seed")?.unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = s.writer()?;
            let mut candidates = 0u64;
            for index in 0..count {
                let w = BraidWord::random(4, length, &mut rng);
                let v = kernel_filter(&w);
                candidates += (v == KernelVerdict::Candidate) as u64;
                writeln!(
                    out,
                    "{}",
                    json!({"type": "word", "index": index, "word": w.to_string(), "verdict": v})
                )?;
            }
            writeln!(
                out,
                "{}",
                json!({"type": "summary", "schema_version": SCHEMA_VERSION, "seed": seed, "count": count, "length": length, "candidates": candidates})
            )?;
            out.flush()?;
            Ok(0)
        }
        _ => Err(usage("give a word or --random COUNT")),
    }
}

fn cmd_selftest(s: &Settings) -> CliResult {
    let results = self_test();
    let failed = results.iter().filter(|c| !c.passed).count();
    let mut text = String::new();
    for c in &results {
        text.push_str(&format!(
            "{}  {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name
        ));
    }
    text.push_str(&format!(
        "{} passed, {} failed",
        results.len() - failed,
        failed
    ));
    s.emit(&text, json!({"checks": results, "failed": failed}))?;
    Ok(if failed == 0 { 0 } else { EXIT_VIOLATION })
}

fn run(cli: Cli) -> CliResult {
    let file = match &cli.config {
        Some(p) => read_config(p)?,
        None => HashMap::new(),
    };
    let format = match (cli.format, file.get("format").map(String::as_str)) {
        (Some(f), _) => f,
        (None, Some(f)) => {
            Format::from_str(f, true).map_err(|e| usage(format!("config key format: {e}")))?
        }
        (None, None) => Format::Text,
    };
    let s = Settings {
        file,
        format,
        output: cli.output,
    };
    match cli.command {
        Command::Eval { word } => cmd_eval(&s, &word),
        Command::Decompose {
            word,
            n,
            depth,
            n_max,
        } => cmd_decompose(&s, &word, n, depth, n_max),
        Command::Predict { word, m, n, depth } => cmd_predict(&s, &word, m, n, depth),
        Command::Check { sigma, m, l } => cmd_check(&s, &sigma, m, l),
        Command::Scan {
            sigma,
            m_min,
            m_max,
            l_min,
            l_max,
        } => cmd_scan(&s, &sigma, m_min, m_max, l_min, l_max),
        Command::Batch {
            count,
            seed,
            length_min,
            length_max,
            template,
            offset,
            m,
            l,
            fixed_w,
        } => cmd_batch(
            &s, count, seed, length_min, length_max, template, offset, m, l, fixed_w,
        ),
        Command::KernelFilter {
            word,
            random,
            length,
            seed,
        } => cmd_kernel_filter(&s, word, random, length, seed),
        Command::Selftest => cmd_selftest(&s),
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
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
