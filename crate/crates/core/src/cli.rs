//! Command-line front end: single-word queries, corpus enumeration and a
//! self test.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::alexander::{alexander_poly, monicity_report};
use crate::classify::{classify, classify_form, invariants_of, replay, HfkTopVerdict, LinkClass};
use crate::error::{Error, ParseError};
use crate::word::{reduced_words, BraidWord};
use crate::xu::{to_xu_form, xu_form, XuForm};

/// Largest `--max-len` accepted by `enumerate`.
pub const MAX_ENUMERATE_LEN: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Classify,
    Normalize,
    Invariants,
    Certify,
    Enumerate,
    Selftest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "braid3", version, about = "Normal forms, fibredness and Alexander polynomials of closed 3-braids")]
pub struct RunConfig {
    /// What to do; `--selftest` may stand in for `selftest`.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Band word (a1 a2 a3 A1 A2 A3) or Artin word (s1 s2 S1 S2), `^n` exponents allowed.
    #[arg(short, long, allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Longest word length for `enumerate`.
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
    /// Write to a file instead of standard output.
    #[arg(long = "out")]
    pub out_path: Option<PathBuf>,
    /// Keep one row per conjugacy class when enumerating.
    #[arg(long)]
    pub dedup: bool,
    /// Worker threads for enumeration; row order does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    #[arg(long)]
    pub selftest: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Consistency(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Consistency(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Consistency(m) => write!(f, "internal consistency failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Parse(p) => CliError::Parse(p),
            other => CliError::Consistency(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        CliError::Io(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XuFormJson {
    pub k: i64,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "P")]
    pub p: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub moves: Vec<String>,
    pub base_case: String,
}

/// One query result; every key is always present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub word: String,
    pub xu_form: XuFormJson,
    pub xu_length: usize,
    pub components: usize,
    pub chi: i64,
    pub iota: i64,
    pub genus: Option<i64>,
    pub verdict: String,
    pub mirrored: Option<bool>,
    pub witness: Option<String>,
    pub hfk_top: String,
    pub alexander: String,
    pub monic: bool,
    pub certificate: Option<CertificateJson>,
    #[serde(skip)]
    form: Option<XuForm>,
}

const CSV_HEADER: [&str; 14] = [
    "word",
    "length",
    "xu",
    "xu_length",
    "components",
    "chi",
    "iota",
    "genus",
    "verdict",
    "mirrored",
    "witness",
    "hfk_top",
    "alexander",
    "monic",
];

impl Report {
    fn csv_record(&self) -> [String; 14] {
        let opt = |o: Option<String>| o.unwrap_or_default();
        [
            self.word.clone(),
            self.word.split_whitespace().count().to_string(),
            format!("N={};k={};P={}", self.xu_form.n, self.xu_form.k, self.xu_form.p),
            self.xu_length.to_string(),
            self.components.to_string(),
            self.chi.to_string(),
            self.iota.to_string(),
            opt(self.genus.map(|g| g.to_string())),
            self.verdict.clone(),
            opt(self.mirrored.map(|m| m.to_string())),
            opt(self.witness.clone()),
            self.hfk_top.clone(),
            self.alexander.clone(),
            self.monic.to_string(),
        ]
    }

    fn text(&self) -> String {
        let dash = |o: Option<String>| o.unwrap_or_else(|| "-".into());
        let mut s = String::new();
        let mut line = |k: &str, v: String| s.push_str(&format!("{k:<12}{v}\n"));
        line("word", if self.word.is_empty() { "(empty)".into() } else { self.word.clone() });
        line("xu_form", format!("N=[{}] k={} P=[{}]", self.xu_form.n, self.xu_form.k, self.xu_form.p));
        line("xu_length", self.xu_length.to_string());
        line("components", self.components.to_string());
        line("chi", self.chi.to_string());
        line("iota", self.iota.to_string());
        line("genus", dash(self.genus.map(|g| g.to_string())));
        line("verdict", self.verdict.clone());
        line("mirrored", dash(self.mirrored.map(|m| m.to_string())));
        line("witness", dash(self.witness.clone()));
        line("hfk_top", self.hfk_top.clone());
        line("alexander", self.alexander.clone());
        line("monic", self.monic.to_string());
        if let Some(c) = &self.certificate {
            line("certificate", format!("{} move(s), base {}", c.moves.len(), c.base_case));
        }
        s
    }
}

fn csv_line<S: AsRef<[u8]>>(fields: &[S]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).map_err(io::Error::from)?;
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

/// Full report for `w`. With `checked` the normal-form trace is replayed and
/// verified; certificates and witnesses are always replayed.
pub fn build_report(w: &BraidWord, checked: bool) -> Result<Report, CliError> {
    let form = if checked {
        let out = to_xu_form(w)?;
        out.trace.verify()?;
        out.form
    } else {
        xu_form(w)?
    };
    let class = classify_form(&form)?;
    let inv = invariants_of(w, &form);
    let poly = alexander_poly(w)?;
    let (mirrored, witness, certificate) = match &class {
        LinkClass::TrivialLink3 => (None, None, None),
        LinkClass::Fibred { certificate } => {
            replay(certificate, &form.expansion())?;
            let cert = CertificateJson {
                moves: certificate.moves.iter().map(|m| m.to_string()).collect(),
                base_case: certificate.base_case.to_string(),
            };
            (None, None, Some(cert))
        }
        LinkClass::NearlyFibred { mirrored, witness } => {
            if !classify(witness)?.is_fibred() {
                return Err(CliError::Consistency(format!("witness `{witness}` of `{w}` is not fibred")));
            }
            (Some(*mirrored), Some(witness.to_string()), None)
        }
    };
    Ok(Report {
        word: w.to_string(),
        xu_form: XuFormJson { k: form.k(), n: form.negative().to_string(), p: form.positive().to_string() },
        xu_length: form.len(),
        components: inv.components,
        chi: inv.chi,
        iota: inv.iota,
        genus: inv.genus,
        verdict: class.name().to_string(),
        mirrored,
        witness,
        hfk_top: inv.hfk_top.to_string(),
        alexander: poly.to_string(),
        monic: monicity_report(&poly).is_monic(),
        certificate,
        form: Some(form),
    })
}

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.out_path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Answer a word command.
pub fn run_query(cfg: &RunConfig, command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let text = cfg.word.as_deref().ok_or_else(|| CliError::Usage("this command needs --word".into()))?;
    let w = BraidWord::parse(text).map_err(CliError::Parse)?;
    let report = build_report(&w, true)?;
    match cfg.output {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            out.write_all(&csv_line(&CSV_HEADER)?)?;
            out.write_all(&csv_line(&report.csv_record())?)?;
        }
        OutputFormat::Text => {
            write!(out, "{}", report.text())?;
            match command {
                Command::Normalize => {
                    let trace = to_xu_form(&w)?.trace;
                    writeln!(out, "trace ({} steps):", trace.steps.len())?;
                    for step in &trace.steps {
                        writeln!(out, "  {step}")?;
                    }
                }
                Command::Certify => {
                    if let Some(c) = &report.certificate {
                        for m in &c.moves {
                            writeln!(out, "  {m}")?;
                        }
                        writeln!(out, "  => {}", c.base_case)?;
                    }
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Counts per verdict plus the fibred / monic agreement.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub fibred: usize,
    pub monic_nontrivial: usize,
    pub fibred_iff_monic: bool,
}

impl Summary {
    fn add(&mut self, r: &Report) {
        self.rows += 1;
        *self.verdicts.entry(r.verdict.clone()).or_default() += 1;
        let fibred = r.verdict == "Fibred";
        let monic = r.hfk_top == HfkTopVerdict::Monic.to_string();
        self.fibred += usize::from(fibred);
        self.monic_nontrivial += usize::from(monic && r.verdict != "TrivialLink3");
        if fibred != monic && r.verdict != "TrivialLink3" {
            self.fibred_iff_monic = false;
        }
    }
}

const CHUNK: usize = 1 << 14;

/// Rows for every reduced word up to `max_len`, in length-then-lexicographic
/// order, written as they are produced.
pub fn run_enumerate(cfg: &RunConfig, out: &mut dyn Write) -> Result<Summary, CliError> {
    let max_len = cfg.max_len.ok_or_else(|| CliError::Usage("enumerate needs --max-len".into()))?;
    if max_len > MAX_ENUMERATE_LEN {
        return Err(CliError::Usage(format!("--max-len {max_len} exceeds the bound {MAX_ENUMERATE_LEN}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut summary = Summary { fibred_iff_monic: true, ..Summary::default() };
    let mut seen: HashSet<XuForm> = HashSet::new();
    if cfg.output == OutputFormat::Csv {
        out.write_all(&csv_line(&CSV_HEADER)?)?;
    }
    if cfg.output == OutputFormat::Json {
        write!(out, "{{\"rows\":[")?;
    }
    for len in 0..=max_len {
        let mut words = reduced_words(len).peekable();
        while words.peek().is_some() {
            let chunk: Vec<BraidWord> = words.by_ref().take(CHUNK).collect();
            let reports: Vec<Result<Report, CliError>> =
                pool.install(|| chunk.par_iter().map(|w| build_report(w, false)).collect());
            for r in reports {
                let r = r?;
                if cfg.dedup && !seen.insert(r.form.clone().expect("report carries its form")) {
                    continue;
                }
                match cfg.output {
                    OutputFormat::Json => {
                        if summary.rows > 0 {
                            write!(out, ",")?;
                        }
                        serde_json::to_writer(&mut *out, &r).map_err(io::Error::from)?;
                    }
                    OutputFormat::Csv => out.write_all(&csv_line(&r.csv_record())?)?,
                    OutputFormat::Text => writeln!(
                        out,
                        "{:<24} {:<14} xu_len={:<3} |L|={} chi={:<3} {} {}",
                        if r.word.is_empty() { "(empty)" } else { &r.word },
                        r.verdict,
                        r.xu_length,
                        r.components,
                        r.chi,
                        r.hfk_top,
                        r.alexander
                    )?,
                }
                summary.add(&r);
            }
        }
    }
    match cfg.output {
        OutputFormat::Json => {
            write!(out, "],\"summary\":")?;
            serde_json::to_writer(&mut *out, &summary).map_err(io::Error::from)?;
            writeln!(out, "}}")?;
        }
        OutputFormat::Csv => writeln!(out, "# summary rows={} {}", summary.rows, summary_text(&summary))?,
        OutputFormat::Text => writeln!(out, "summary: rows={} {}", summary.rows, summary_text(&summary))?,
    }
    Ok(summary)
}

fn summary_text(s: &Summary) -> String {
    let verdicts: Vec<String> = s.verdicts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(
        "{} fibred={} monic_nontrivial={} fibred_iff_monic={}",
        verdicts.join(" "),
        s.fibred,
        s.monic_nontrivial,
        s.fibred_iff_monic
    )
}

/// Anchors and an exhaustive pass over short words.
pub fn run_selftest(out: &mut dyn Write) -> Result<(), CliError> {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let anchor = |s: &str| build_report(&BraidWord::parse(s).expect("anchor parses"), true);
    let empty = anchor("")?;
    check("empty word is the trivial 3-link", empty.verdict == "TrivialLink3" && empty.components == 3);
    let unknot = anchor("A2 a1")?;
    check("A2 a1 is the unknot", unknot.chi == 1 && unknot.alexander == "1");
    let trefoil = anchor("a2 a1 a2 a1")?;
    check(
        "alpha^2 is a fibred genus-one knot",
        trefoil.verdict == "Fibred" && trefoil.genus == Some(1) && trefoil.alexander == "t - 1 + t^-1",
    );
    let nearly = anchor("a1 a2 a3")?;
    check("a1 a2 a3 is nearly fibred", nearly.witness.as_deref() == Some("a2 a1 a2 a3"));
    let mut words = 0;
    for len in 0..=5 {
        for w in reduced_words(len) {
            let r = build_report(&w, true)?;
            let monic = r.hfk_top == "Monic";
            if r.verdict != "TrivialLink3" && (r.verdict == "Fibred") != monic {
                failures.push(format!("fibred/monic disagree on `{w}`"));
            }
            words += 1;
        }
    }
    writeln!(out, "selftest: {} anchor(s), {words} word(s) up to length 5", 4)?;
    if failures.is_empty() {
        writeln!(out, "selftest: ok")?;
        Ok(())
    } else {
        for f in &failures {
            writeln!(out, "selftest: FAILED {f}")?;
        }
        Err(CliError::Consistency(format!("{} selftest failure(s)", failures.len())))
    }
}

/// Dispatch a parsed configuration.
pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let command = match (cfg.command, cfg.selftest) {
        (Some(c), false) => c,
        (None, true) | (Some(Command::Selftest), true) => Command::Selftest,
        (Some(c), true) => return Err(CliError::Usage(format!("--selftest conflicts with {c:?}"))),
        (None, false) => return Err(CliError::Usage("no command given".into())),
    };
    let mut out = open_output(cfg)?;
    match command {
        Command::Enumerate => run_enumerate(cfg, &mut out).map(|_| ())?,
        Command::Selftest => run_selftest(&mut out)?,
        c => run_query(cfg, c, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("braid3: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
