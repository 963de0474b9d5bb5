//! Command-line front end for the epitaph kinship tagger.
//!
//! Every subcommand shares one set of options. They can also come from a
//! `key=value` config file given with `--config`, and command-line flags
//! take precedence over it. Keys are the long flag names without dashes,
//! e.g. `corpus`, `dict-place`, `max-name-len`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use epitag_core::extractor::{load_registry, Registry, RegistryError};
use epitag_core::filter::{load_rules, FilterRule, RulesError};
use epitag_core::formats::{self, CorpusFormat, FormatError};
use epitag_core::lexicon::{load_dictionary_with, LexiconError, LoadOptions, ValidationReport};
use epitag_core::pipeline::{self, Resources};
use epitag_core::review::{self, compute_stats, ReviewError, RunStats};
use epitag_core::{defaults, DictKind, Dictionary, Lexicon};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{stage}: {source}")]
    Dictionary {
        stage: &'static str,
        #[source]
        source: LexiconError,
    },
    #[error("{stage}: {message}")]
    Io {
        stage: &'static str,
        message: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Dictionary { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }

    fn io(stage: &'static str, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            stage,
            message: e.to_string(),
        }
    }
}

impl From<RulesError> for CliError {
    fn from(e: RulesError) -> Self {
        CliError::Config(format!("rules: {e}"))
    }
}

impl From<RegistryError> for CliError {
    fn from(e: RegistryError) -> Self {
        CliError::Config(format!("registry: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "epitag",
    version,
    about = "Kinship extraction from classical Chinese epitaphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline: filter, compress, delete interference, extract.
    Run(CommonArgs),
    /// Sentence selection only; writes decisions.tsv and accepted.tsv.
    Filter(CommonArgs),
    /// Compress accepted sentences; writes compressed.tsv.
    Compress(StageArgs),
    /// Extract records from compressed sentences.
    Extract(StageArgs),
    /// Validate dictionaries and print their reports.
    DictCheck(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Dir,
    Tsv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// key=value config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub corpus_format: Option<FormatArg>,
    #[arg(long)]
    pub dict_kinship: Option<PathBuf>,
    #[arg(long)]
    pub dict_place: Option<PathBuf>,
    #[arg(long)]
    pub dict_office: Option<PathBuf>,
    #[arg(long)]
    pub dict_appt_verb: Option<PathBuf>,
    #[arg(long)]
    pub dict_interference: Option<PathBuf>,
    #[arg(long)]
    pub dict_exclusion: Option<PathBuf>,
    #[arg(long)]
    pub rules: Option<PathBuf>,
    #[arg(long)]
    pub registry: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub emit_compressed: bool,
    #[arg(long)]
    pub strict_dicts: bool,
    #[arg(long)]
    pub max_name_len: Option<usize>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct StageArgs {
    /// Input file; defaults to the previous stage's file in the output directory.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Fully resolved and validated options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub corpus: Option<PathBuf>,
    pub corpus_format: CorpusFormat,
    pub dicts: BTreeMap<DictKind, PathBuf>,
    pub rules: Option<PathBuf>,
    pub registry: Option<PathBuf>,
    pub out: PathBuf,
    pub emit_compressed: bool,
    pub strict_dicts: bool,
    pub max_name_len: usize,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            corpus_format: CorpusFormat::Dir,
            dicts: BTreeMap::new(),
            rules: None,
            registry: None,
            out: PathBuf::from("out"),
            emit_compressed: false,
            strict_dicts: false,
            max_name_len: 2,
            workers: 1,
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(CliError::Config(format!(
            "{key}: expected true or false, got `{v}`"
        ))),
    }
}

fn parse_count(key: &str, v: &str) -> Result<usize, CliError> {
    v.parse()
        .map_err(|_| CliError::Config(format!("{key}: expected a number, got `{v}`")))
}

fn parse_format(v: &str) -> Result<CorpusFormat, CliError> {
    match v {
        "dir" => Ok(CorpusFormat::Dir),
        "tsv" => Ok(CorpusFormat::Tsv),
        _ => Err(CliError::Config(format!(
            "corpus-format: expected dir or tsv, got `{v}`"
        ))),
    }
}

impl RunConfig {
    /// Applies `key=value` lines. Blank lines and `#` comments are skipped.
    /// Relative paths resolve against `base`.
    pub fn apply_config_text(&mut self, text: &str, base: &Path) -> Result<(), CliError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", i + 1)))?;
            let path = || base.join(value);
            match key {
                "corpus" => self.corpus = Some(path()),
                "corpus-format" => self.corpus_format = parse_format(value)?,
                "rules" => self.rules = Some(path()),
                "registry" => self.registry = Some(path()),
                "out" => self.out = path(),
                "emit-compressed" => self.emit_compressed = parse_bool(key, value)?,
                "strict-dicts" => self.strict_dicts = parse_bool(key, value)?,
                "max-name-len" => self.max_name_len = parse_count(key, value)?,
                "workers" => self.workers = parse_count(key, value)?,
                _ => match key.strip_prefix("dict-").map(str::parse::<DictKind>) {
                    Some(Ok(kind)) => {
                        self.dicts.insert(kind, path());
                    }
                    _ => return Err(CliError::Config(format!("unknown key `{key}`"))),
                },
            }
        }
        Ok(())
    }

    /// Builds a config from the config file (if any) and then the flags.
    pub fn from_args(args: &CommonArgs) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &args.config {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let base = path.parent().unwrap_or(Path::new("."));
            cfg.apply_config_text(&text, base)?;
        }
        if let Some(p) = &args.corpus {
            cfg.corpus = Some(p.clone());
        }
        if let Some(f) = args.corpus_format {
            cfg.corpus_format = match f {
                FormatArg::Dir => CorpusFormat::Dir,
                FormatArg::Tsv => CorpusFormat::Tsv,
            };
        }
        let flag_dicts = [
            (DictKind::Kinship, &args.dict_kinship),
            (DictKind::Place, &args.dict_place),
            (DictKind::Office, &args.dict_office),
            (DictKind::ApptVerb, &args.dict_appt_verb),
            (DictKind::Interference, &args.dict_interference),
            (DictKind::Exclusion, &args.dict_exclusion),
        ];
        for (kind, p) in flag_dicts {
            if let Some(p) = p {
                cfg.dicts.insert(kind, p.clone());
            }
        }
        if let Some(p) = &args.rules {
            cfg.rules = Some(p.clone());
        }
        if let Some(p) = &args.registry {
            cfg.registry = Some(p.clone());
        }
        if let Some(p) = &args.out {
            cfg.out = p.clone();
        }
        cfg.emit_compressed |= args.emit_compressed;
        cfg.strict_dicts |= args.strict_dicts;
        if let Some(n) = args.max_name_len {
            cfg.max_name_len = n;
        }
        if let Some(n) = args.workers {
            cfg.workers = n;
        }
        Ok(cfg)
    }

    /// Checks every referenced input path and the numeric limits.
    pub fn validate(&self, needs_corpus: bool) -> Result<(), CliError> {
        if self.max_name_len < 1 {
            return Err(CliError::Config("max-name-len must be at least 1".into()));
        }
        if self.workers < 1 {
            return Err(CliError::Config("workers must be at least 1".into()));
        }
        match (&self.corpus, needs_corpus) {
            (None, true) => return Err(CliError::Config("no corpus given".into())),
            (Some(p), _) if !p.exists() => {
                return Err(CliError::Config(format!(
                    "corpus {} does not exist",
                    p.display()
                )))
            }
            _ => {}
        }
        for (kind, p) in &self.dicts {
            if !p.is_file() {
                return Err(CliError::Config(format!(
                    "{kind} dictionary {} does not exist",
                    p.display()
                )));
            }
        }
        for (what, p) in [("rules", &self.rules), ("registry", &self.registry)] {
            if let Some(p) = p {
                if !p.is_file() {
                    return Err(CliError::Config(format!(
                        "{what} file {} does not exist",
                        p.display()
                    )));
                }
            }
        }
        Ok(())
    }

    fn load_options(&self) -> LoadOptions {
        LoadOptions {
            strict: self.strict_dicts,
            ..LoadOptions::default()
        }
    }

    pub fn load_dictionary(&self, kind: DictKind) -> Result<Dictionary, CliError> {
        match self.dicts.get(&kind) {
            Some(p) => load_dictionary_with(p, kind, &self.load_options()).map_err(|source| {
                CliError::Dictionary {
                    stage: "dictionaries",
                    source,
                }
            }),
            None => Ok(defaults::dictionary(kind)),
        }
    }

    pub fn lexicon(&self) -> Result<Lexicon, CliError> {
        Ok(Lexicon::new(
            self.load_dictionary(DictKind::Kinship)?,
            self.load_dictionary(DictKind::Place)?,
            self.load_dictionary(DictKind::Office)?,
            self.load_dictionary(DictKind::ApptVerb)?,
            self.load_dictionary(DictKind::Interference)?,
            self.load_dictionary(DictKind::Exclusion)?,
        ))
    }

    pub fn resources(&self) -> Result<Resources, CliError> {
        let rules: Vec<FilterRule> = match &self.rules {
            Some(p) => load_rules(p)?,
            None => defaults::rules(),
        };
        let registry: Registry = match &self.registry {
            Some(p) => load_registry(p)?,
            None => defaults::registry(),
        };
        Ok(Resources::new(self.lexicon()?, rules, registry).with_max_name_len(self.max_name_len))
    }

    fn out_file(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }
}

fn format_err(stage: &'static str) -> impl Fn(FormatError) -> CliError {
    move |e| CliError::io(stage, e)
}

fn review_err(e: ReviewError) -> CliError {
    CliError::io("emit", e)
}

fn prepare_out(cfg: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.out)
        .map_err(|e| CliError::io("emit", format!("{}: {e}", cfg.out.display())))
}

fn write_with<F>(path: &Path, stage: &'static str, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<fs::File>) -> Result<(), CliError>,
{
    let mut w = BufWriter::new(formats::create(path).map_err(format_err(stage))?);
    f(&mut w)?;
    w.flush()
        .map_err(|e| CliError::io(stage, format!("{}: {e}", path.display())))
}

fn pool(cfg: &RunConfig) -> Result<pipeline::ThreadPool, CliError> {
    pipeline::pool(cfg.workers).map_err(|e| CliError::Config(format!("workers: {e}")))
}

fn emit_results(
    cfg: &RunConfig,
    records: &[epitag_core::KinshipRecord],
    stats: &RunStats,
) -> Result<(), CliError> {
    write_with(&cfg.out_file("review.csv"), "emit", |w| {
        review::write_review_csv(records, w).map_err(review_err)
    })?;
    write_with(&cfg.out_file("rejected.csv"), "emit", |w| {
        review::write_rejected_csv(records, w).map_err(review_err)
    })?;
    write_with(&cfg.out_file("stats.txt"), "emit", |w| {
        w.write_all(stats.to_key_value().as_bytes())
            .map_err(|e| CliError::io("emit", e))
    })
}

fn read_docs(cfg: &RunConfig) -> Result<Vec<epitag_core::Document>, CliError> {
    let corpus = cfg.corpus.as_ref().expect("validated");
    formats::read_corpus(corpus, cfg.corpus_format).map_err(format_err("segment"))
}

pub fn cmd_run(cfg: &RunConfig) -> Result<RunStats, CliError> {
    cfg.validate(true)?;
    let res = cfg.resources()?;
    let docs = read_docs(cfg)?;
    let out = pipeline::run(&docs, &res, &pool(cfg)?);
    prepare_out(cfg)?;
    write_with(&cfg.out_file("decisions.tsv"), "filter", |w| {
        formats::write_decisions(&out.decisions, w).map_err(format_err("filter"))
    })?;
    if cfg.emit_compressed {
        write_with(&cfg.out_file("compressed.tsv"), "compress", |w| {
            formats::write_compressed(&out.compressed, w).map_err(format_err("compress"))
        })?;
    }
    emit_results(cfg, &out.records, &out.stats)?;
    Ok(out.stats)
}

pub fn cmd_filter(cfg: &RunConfig) -> Result<usize, CliError> {
    cfg.validate(true)?;
    let res = cfg.resources()?;
    let docs = read_docs(cfg)?;
    let pool = pool(cfg)?;
    let sentences = pipeline::segment(&docs, &res, &pool);
    let decisions = pipeline::filter(&sentences, &res, &pool);
    let accepted = pipeline::accepted(&sentences, &decisions);
    prepare_out(cfg)?;
    write_with(&cfg.out_file("decisions.tsv"), "filter", |w| {
        formats::write_decisions(&decisions, w).map_err(format_err("filter"))
    })?;
    write_with(&cfg.out_file("accepted.tsv"), "filter", |w| {
        formats::write_sentences(&accepted, w).map_err(format_err("filter"))
    })?;
    Ok(accepted.len())
}

fn stage_input(args: &StageArgs, cfg: &RunConfig, default: &str) -> Result<PathBuf, CliError> {
    let p = args.input.clone().unwrap_or_else(|| cfg.out_file(default));
    if !p.is_file() {
        return Err(CliError::Config(format!(
            "input {} does not exist",
            p.display()
        )));
    }
    Ok(p)
}

pub fn cmd_compress(args: &StageArgs) -> Result<usize, CliError> {
    let cfg = RunConfig::from_args(&args.common)?;
    cfg.validate(false)?;
    let input = stage_input(args, &cfg, "accepted.tsv")?;
    let res = cfg.resources()?;
    let file = formats::open(&input).map_err(format_err("compress"))?;
    let sentences = formats::read_sentences(file).map_err(format_err("compress"))?;
    let compressed = pipeline::compress(&sentences, &res, &pool(&cfg)?);
    prepare_out(&cfg)?;
    write_with(&cfg.out_file("compressed.tsv"), "compress", |w| {
        formats::write_compressed(&compressed, w).map_err(format_err("compress"))
    })?;
    Ok(compressed.len())
}

/// Stats here only see the compressed sentences, so the sentence totals count
/// those rather than the whole corpus.
pub fn cmd_extract(args: &StageArgs) -> Result<RunStats, CliError> {
    let cfg = RunConfig::from_args(&args.common)?;
    cfg.validate(false)?;
    let input = stage_input(args, &cfg, "compressed.tsv")?;
    let res = cfg.resources()?;
    let file = formats::open(&input).map_err(format_err("extract"))?;
    let compressed = formats::read_compressed(file).map_err(format_err("extract"))?;
    let records = pipeline::extract(&compressed, &res, &pool(&cfg)?);
    let mut stats = compute_stats(&[], &records);
    stats.sentences_total = compressed.len();
    stats.sentences_accepted = compressed.len();
    prepare_out(&cfg)?;
    emit_results(&cfg, &records, &stats)?;
    Ok(stats)
}

/// Per-kind validation reports, in [`DictKind::ALL`] order.
pub fn cmd_dict_check(cfg: &RunConfig) -> Result<Vec<(String, ValidationReport)>, CliError> {
    cfg.validate(false)?;
    let lexicon = cfg.lexicon()?;
    let mut out: Vec<(String, ValidationReport)> = DictKind::ALL
        .iter()
        .map(|&k| (k.to_string(), lexicon.get(k).report().clone()))
        .collect();
    out.push(("cross-kind".to_string(), lexicon.cross_kind_report()));
    Ok(out)
}

/// Runs a parsed command, printing summaries to `stdout`.
pub fn execute<W: Write>(cli: &Cli, stdout: &mut W) -> Result<(), CliError> {
    let print = |w: &mut W, s: String| {
        w.write_all(s.as_bytes())
            .map_err(|e| CliError::io("emit", e))
    };
    match &cli.command {
        Command::Run(a) => {
            let stats = cmd_run(&RunConfig::from_args(a)?)?;
            print(stdout, stats.to_string())
        }
        Command::Filter(a) => {
            let n = cmd_filter(&RunConfig::from_args(a)?)?;
            print(stdout, format!("accepted {n} sentences\n"))
        }
        Command::Compress(a) => {
            let n = cmd_compress(a)?;
            print(stdout, format!("compressed {n} sentences\n"))
        }
        Command::Extract(a) => {
            let stats = cmd_extract(a)?;
            print(stdout, stats.to_string())
        }
        Command::DictCheck(a) => {
            let cfg = RunConfig::from_args(a)?;
            for (name, report) in cmd_dict_check(&cfg)? {
                print(
                    stdout,
                    format!("[{name}] {} issue(s)\n{report}", report.len()),
                )?;
            }
            Ok(())
        }
    }
}
