//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input errors (missing or unreadable files,
//! malformed data), 2 usage errors (bad flags, unknown labels, malformed
//! configuration). Warnings and a final summary go to the diagnostic stream.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alignment::{AlignmentReader, Indexing};
use crate::conll::{ColumnLayout, ConllReader, Language, ReaderOptions};
use crate::features::{
    extract_context_features, FeatureConfig, TemporalLexicon, DEFAULT_TEMPORAL_FILE, FEATURE_COLUMNS,
};
use crate::label::{DeTense, EnTense, Mood, Voice};
use crate::lexicon::{MorphFallbackLexicon, DEFAULT_LEXICON_FILE};
use crate::output::{
    read_annotated, read_pairs, write_annotated_footer, write_annotated_header, write_annotated_row, write_pair_header,
    write_pair_row,
};
use crate::pairing::{LinkCriterion, MatchingMode};
use crate::pipeline::{annotate_stream, pair_stream, PipelineConfig, PipelineError, Summary, DEFAULT_CHUNK};
use crate::reference;
use crate::repro::{self, Corpus, ReproInput};
use crate::rules::{Classifier, ModalPreterite};
use crate::stats::{
    lemma_tense_profile, resolve_labels, CorrespondenceMatrix, Direction, FinitenessFilter, FinitenessRatio, Grouping,
    LabelRecord, MatrixSpec, Merge, PairRecord, TenseDistribution, VcFilter,
};
use crate::synth::{self, Spec};
use crate::vc::{extract_vcs, Scheme};

/// Environment variable naming the default lexicon directory.
pub const LEXICON_DIR_ENV: &str = "TMV_LEXICON_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "tmv",
    version,
    about = "Tense, mood and voice annotation of English and German verbal complexes"
)]
struct Cli {
    /// key=value configuration file; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Annotate every verbal complex of a parsed corpus.
    Annotate(AnnotateArgs),
    /// Annotate a parallel corpus and dump aligned complex pairs.
    Pairs(PairsArgs),
    /// Correspondence matrix over pair dumps, or a reproduction report.
    Stats(StatsArgs),
    /// Tense distribution over annotated complexes.
    Dist(DistArgs),
    /// Tense counts of one main-verb lemma.
    LemmaProfile(LemmaArgs),
    /// Context features per verbal complex.
    Features(FeaturesArgs),
    /// Reference description of a tense or of an English/German tense pair.
    Explain(ExplainArgs),
    /// List every verb-group pattern with the label it receives.
    RulesDump(RulesDumpArgs),
}

#[derive(Debug, Args, Default)]
struct ParseOpts {
    /// Verbal complex scheme: chain or ud.
    #[arg(long)]
    scheme: Option<Scheme>,
    /// Column layout: conllu or conll2009.
    #[arg(long)]
    layout: Option<ColumnLayout>,
    /// German auxiliary lexicon (TSV).
    #[arg(long, value_name = "FILE")]
    lexicon: Option<PathBuf>,
    /// Base tense of could/might/should: present or past.
    #[arg(long)]
    modal_preterite: Option<ModalPreterite>,
    /// Worker threads.
    #[arg(long)]
    parallelism: Option<usize>,
    /// Sentences per work unit.
    #[arg(long)]
    chunk_size: Option<usize>,
}

#[derive(Debug, Args)]
struct AnnotateArgs {
    #[arg(long)]
    lang: Language,
    #[command(flatten)]
    parse: ParseOpts,
    /// Output file (default: standard output).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Parsed input ("-" for standard input).
    input: PathBuf,
}

#[derive(Debug, Args)]
struct PairsArgs {
    #[arg(long, value_name = "FILE")]
    en: PathBuf,
    #[arg(long, value_name = "FILE")]
    de: PathBuf,
    /// Pharaoh alignment, English indices first.
    #[arg(long, value_name = "FILE")]
    align: PathBuf,
    /// Alignment index base: zero or one.
    #[arg(long)]
    indexing: Option<Indexing>,
    /// Pairing strategy: greedy or exhaustive.
    #[arg(long)]
    matching: Option<MatchingMode>,
    /// Which links count: any-link or main-verb.
    #[arg(long)]
    criterion: Option<LinkCriterion>,
    #[command(flatten)]
    parse: ParseOpts,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the English annotation here.
    #[arg(long, value_name = "FILE")]
    annotated_en: Option<PathBuf>,
    /// Also write the German annotation here.
    #[arg(long, value_name = "FILE")]
    annotated_de: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum StatsEmit {
    Csv,
    Json,
    PlotData,
    Text,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Pair dumps; each file is one corpus.
    inputs: Vec<PathBuf>,
    #[arg(long, default_value = "en-de")]
    direction: Direction,
    #[arg(long)]
    grouping: Option<Grouping>,
    /// Comma-separated source labels to keep.
    #[arg(long, value_delimiter = ',')]
    rows: Vec<String>,
    /// Comma-separated target labels to keep (frequencies renormalize).
    #[arg(long, value_delimiter = ',')]
    cols: Vec<String>,
    #[arg(long)]
    include_imperatives: bool,
    /// csv, json, plot-data (text for --repro).
    #[arg(long, value_enum)]
    emit: Option<StatsEmit>,
    /// Compare against the published tables of this corpus.
    #[arg(long, value_name = "CORPUS")]
    repro: Option<Corpus>,
    /// Annotated English complexes (reproduction of per-side tables).
    #[arg(long, value_name = "FILE")]
    vcs_en: Vec<PathBuf>,
    /// Annotated German complexes.
    #[arg(long, value_name = "FILE")]
    vcs_de: Vec<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum TableEmit {
    Csv,
    Tsv,
    Json,
}

impl std::str::FromStr for TableEmit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <TableEmit as ValueEnum>::from_str(s, true).map_err(|_| format!("'{s}' is not one of csv, tsv, json"))
    }
}

#[derive(Debug, Args)]
struct FilterOpts {
    /// indicative, subjunctive or imperative.
    #[arg(long)]
    mood: Option<Mood>,
    /// active or passive.
    #[arg(long)]
    voice: Option<Voice>,
    /// finite, nonfinite, gerund, to_infinitive, bare_infinitive, participle.
    #[arg(long)]
    finiteness: Option<FinitenessFilter>,
    #[arg(long)]
    include_imperatives: bool,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(long)]
    lang: Language,
    /// Annotated TSV files; each file is one corpus.
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    filter: FilterOpts,
    #[arg(long)]
    grouping: Option<Grouping>,
    /// Report the non-finite share instead of the distribution.
    #[arg(long)]
    finiteness_ratio: bool,
    #[arg(long, value_enum)]
    emit: Option<TableEmit>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LemmaArgs {
    #[arg(long)]
    lang: Language,
    #[arg(long)]
    lemma: String,
    #[arg(long)]
    voice: Option<Voice>,
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum)]
    emit: Option<TableEmit>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FeaturesArgs {
    #[arg(long)]
    lang: Language,
    #[command(flatten)]
    parse: ParseOpts,
    /// Temporal lexicon (term<TAB>future|past|neutral).
    #[arg(long, value_name = "FILE")]
    temporal_lexicon: Option<PathBuf>,
    /// Comma-separated conditional markers.
    #[arg(long, value_delimiter = ',')]
    markers: Vec<String>,
    #[arg(long, value_enum)]
    emit: Option<TableEmit>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    input: PathBuf,
}

#[derive(Debug, Args)]
struct ExplainArgs {
    /// One tense label, or an English and a German label.
    #[arg(required = true, num_args = 1..=2)]
    labels: Vec<String>,
}

#[derive(Debug, Args)]
struct RulesDumpArgs {
    #[arg(long)]
    lang: Option<Language>,
    #[arg(long)]
    modal_preterite: Option<ModalPreterite>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) => m,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(format!("I/O error: {e}"))
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError::Input(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

const CONFIG_KEYS: &[&str] = &[
    "scheme",
    "layout",
    "indexing",
    "matching",
    "criterion",
    "parallelism",
    "chunk_size",
    "modal_preterite",
    "grouping",
    "lexicon_dir",
    "lexicon",
    "temporal_lexicon",
    "conditional_markers",
    "emit",
];

/// Settings read from `--config`. Keys may use `-` or `_`.
#[derive(Debug, Default)]
struct Config {
    values: BTreeMap<String, String>,
    path: Option<PathBuf>,
}

impl Config {
    fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "{}:{}: expected key=value, found '{line}'",
                    path.display(),
                    i + 1
                )));
            };
            let key = k.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "{}:{}: unknown key '{}' (known: {})",
                    path.display(),
                    i + 1,
                    k.trim(),
                    CONFIG_KEYS.join(", ")
                )));
            }
            values.insert(key, v.trim().to_owned());
        }
        Ok(Config {
            values,
            path: Some(path.to_owned()),
        })
    }

    /// Flag value if given, else the parsed config value, else `default`.
    fn pick<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.values.get(key) {
            None => Ok(default),
            Some(raw) => raw.parse().map_err(|e| {
                CliError::Usage(format!(
                    "{}: invalid value for {key}: {e}",
                    self.path.as_deref().unwrap_or(Path::new("config")).display()
                ))
            }),
        }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.values.get(key).map(PathBuf::from)
    }
}

fn lexicon_dir(cfg: &Config) -> Option<PathBuf> {
    cfg.path("lexicon_dir")
        .or_else(|| std::env::var_os(LEXICON_DIR_ENV).map(PathBuf::from))
}

/// Explicit path, else `<lexicon dir>/<file>` if present, else built in.
fn lexicon_path(flag: Option<&PathBuf>, cfg: &Config, key: &str, file: &str) -> Option<PathBuf> {
    flag.cloned()
        .or_else(|| cfg.path(key))
        .or_else(|| lexicon_dir(cfg).map(|d| d.join(file)).filter(|p| p.is_file()))
}

fn classifier(opts: &ParseOpts, cfg: &Config) -> Result<Classifier> {
    let lexicon = match lexicon_path(opts.lexicon.as_ref(), cfg, "lexicon", DEFAULT_LEXICON_FILE) {
        Some(p) => MorphFallbackLexicon::load(&p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        None => MorphFallbackLexicon::default_german(),
    };
    let mode = cfg.pick(opts.modal_preterite, "modal_preterite", ModalPreterite::Present)?;
    Ok(Classifier::new(lexicon).with_modal_preterite(mode))
}

fn pipeline_config(
    opts: &ParseOpts,
    matching: Option<MatchingMode>,
    criterion: Option<LinkCriterion>,
    cfg: &Config,
) -> Result<PipelineConfig> {
    let parallelism = cfg.pick(opts.parallelism, "parallelism", 1)?;
    let chunk_size = cfg.pick(opts.chunk_size, "chunk_size", DEFAULT_CHUNK)?;
    if parallelism == 0 || chunk_size == 0 {
        return Err(CliError::Usage("parallelism and chunk size must be at least 1".into()));
    }
    Ok(PipelineConfig {
        scheme: cfg.pick(opts.scheme, "scheme", Scheme::Chain)?,
        classifier: classifier(opts, cfg)?,
        matching: cfg.pick(matching, "matching", MatchingMode::Greedy)?,
        criterion: cfg.pick(criterion, "criterion", LinkCriterion::AnyLink)?,
        parallelism,
        chunk_size,
    })
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    if path == Path::new("-") {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path).map_err(|e| CliError::Input(format!("cannot open {}: {e}", path.display())))?;
    Ok(Box::new(BufReader::new(f)))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", path.display())))
}

fn doc_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "stdin".to_owned())
}

fn reader(path: &Path, lang: Language, layout: ColumnLayout) -> Result<ConllReader<Box<dyn BufRead>>> {
    Ok(ConllReader::new(
        open(path)?,
        ReaderOptions::new(lang, layout).doc_id(doc_id(path)),
    ))
}

/// Writes `text` to `--output` or the main output stream.
fn emit(output: Option<&PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match output {
        Some(p) => {
            let mut w = create(p)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn label_args(labels: &[String], lang: Language, grouping: Grouping) -> Result<Option<Vec<String>>> {
    if labels.is_empty() {
        return Ok(None);
    }
    let set = resolve_labels(labels, lang, grouping).map_err(CliError::Usage)?;
    Ok(Some(set.into_iter().collect()))
}

fn finish(summary: &Summary, stderr: &mut dyn Write) -> Result<()> {
    writeln!(stderr, "summary: {}", summary.render())?;
    Ok(())
}

fn annotate(args: AnnotateArgs, cfg: &Config, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let pc = pipeline_config(&args.parse, None, None, cfg)?;
    let layout = cfg.pick(args.parse.layout, "layout", ColumnLayout::Conllu)?;
    let input = reader(&args.input, args.lang, layout)?;
    let mut file = args.output.as_deref().map(create).transpose()?;
    let out: &mut dyn Write = match file.as_mut() {
        Some(f) => f,
        None => stdout,
    };
    write_annotated_header(out)?;
    let mut warnings = Vec::new();
    let summary = annotate_stream(
        input,
        &pc,
        |w| warnings.push(w.to_owned()),
        |a| {
            for (vc, label) in &a.vcs {
                write_annotated_row(out, vc, label)?;
            }
            Ok(())
        },
    );
    for w in &warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    let summary = summary?;
    write_annotated_footer(out, summary.sentences, summary.vcs)?;
    out.flush()?;
    finish(&summary, stderr)
}

fn pairs(args: PairsArgs, cfg: &Config, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let pc = pipeline_config(&args.parse, args.matching, args.criterion, cfg)?;
    let layout = cfg.pick(args.parse.layout, "layout", ColumnLayout::Conllu)?;
    let indexing = cfg.pick(args.indexing, "indexing", Indexing::ZeroBased)?;
    let en = reader(&args.en, Language::En, layout)?;
    let de = reader(&args.de, Language::De, layout)?;
    let align = AlignmentReader::new(open(&args.align)?, indexing).doc_id(doc_id(&args.en));
    let mut file = args.output.as_deref().map(create).transpose()?;
    let out: &mut dyn Write = match file.as_mut() {
        Some(f) => f,
        None => stdout,
    };
    let mut side_en = args.annotated_en.as_deref().map(create).transpose()?;
    let mut side_de = args.annotated_de.as_deref().map(create).transpose()?;
    write_pair_header(out)?;
    for w in [side_en.as_mut(), side_de.as_mut()].into_iter().flatten() {
        write_annotated_header(w)?;
    }
    let mut warnings = Vec::new();
    let mut vcs = (0usize, 0usize);
    let summary = pair_stream(
        en,
        de,
        align,
        &pc,
        |w| warnings.push(w.to_owned()),
        |p| {
            for pair in &p.outcome.pairs {
                write_pair_row(out, pair, &p.en.sentence, &p.de.sentence)?;
            }
            if let Some(w) = side_en.as_mut() {
                for (vc, l) in &p.en.vcs {
                    write_annotated_row(w, vc, l)?;
                }
            }
            if let Some(w) = side_de.as_mut() {
                for (vc, l) in &p.de.vcs {
                    write_annotated_row(w, vc, l)?;
                }
            }
            vcs.0 += p.en.vcs.len();
            vcs.1 += p.de.vcs.len();
            Ok(())
        },
    );
    for w in &warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    let summary = summary?;
    out.flush()?;
    // Each side counts the sentence pairs that made it through.
    let sentences = summary.sentences / 2;
    if let Some(w) = side_en.as_mut() {
        write_annotated_footer(w, sentences, vcs.0)?;
        w.flush()?;
    }
    if let Some(w) = side_de.as_mut() {
        write_annotated_footer(w, sentences, vcs.1)?;
        w.flush()?;
    }
    finish(&summary, stderr)
}

fn read_pair_files(inputs: &[PathBuf]) -> Result<Vec<(String, Vec<PairRecord>)>> {
    inputs
        .iter()
        .map(|p| {
            let recs = read_pairs(open(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok((doc_id(p), recs))
        })
        .collect()
}

fn read_vc_files(inputs: &[PathBuf], lang: Language) -> Result<Vec<(String, Vec<LabelRecord>)>> {
    inputs
        .iter()
        .map(|p| {
            let recs = read_annotated(open(p)?, lang).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok((doc_id(p), recs))
        })
        .collect()
}

fn require_inputs(inputs: &[PathBuf], what: &str) -> Result<()> {
    if inputs.is_empty() {
        return Err(CliError::Usage(format!("no {what} given")));
    }
    Ok(())
}

fn stats(args: StatsArgs, cfg: &Config, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    if let Some(corpus) = args.repro {
        return reproduce(args, corpus, stdout, stderr);
    }
    require_inputs(&args.inputs, "pair dump")?;
    if !args.vcs_en.is_empty() || !args.vcs_de.is_empty() {
        return Err(CliError::Usage("--vcs-en/--vcs-de require --repro".into()));
    }
    let grouping = cfg.pick(args.grouping, "grouping", Grouping::Fine)?;
    let rows = label_args(&args.rows, args.direction.source(), Grouping::Fine)?;
    let cols = label_args(&args.cols, args.direction.target(), grouping)?;
    let mut spec = MatrixSpec::new(args.direction)
        .grouping(grouping)
        .include_imperatives(args.include_imperatives);
    if let Some(r) = &rows {
        spec = spec.rows(&r.iter().map(String::as_str).collect::<Vec<_>>());
    }
    if let Some(c) = &cols {
        spec = spec.cols(&c.iter().map(String::as_str).collect::<Vec<_>>());
    }
    let mut merged: Option<CorrespondenceMatrix> = None;
    let mut skipped = 0usize;
    for (id, recs) in read_pair_files(&args.inputs)? {
        let m = CorrespondenceMatrix::from_pairs(spec.clone(), &id, &recs);
        skipped += recs.len() - m.total() as usize;
        merged = Some(match merged {
            None => m,
            Some(acc) => acc.merge(&m).map_err(|e| CliError::Input(e.to_string()))?,
        });
    }
    let m = merged.expect("at least one input");
    let emit_as = cfg.pick(args.emit.map(emit_name), "emit", "csv".to_owned())?;
    let text = match emit_as.as_str() {
        "csv" => m.to_csv(),
        "json" => pretty(&m.to_json()),
        "plot-data" => m.to_plot_data(),
        other => {
            return Err(CliError::Usage(format!(
                "stats cannot emit '{other}' (csv, json or plot-data)"
            )))
        }
    };
    emit(args.output.as_ref(), stdout, &text)?;
    writeln!(
        stderr,
        "summary: pairs={} counted={} filtered={}",
        m.total() as usize + skipped,
        m.total(),
        skipped
    )?;
    Ok(())
}

fn emit_name(e: StatsEmit) -> String {
    match e {
        StatsEmit::Csv => "csv",
        StatsEmit::Json => "json",
        StatsEmit::PlotData => "plot-data",
        StatsEmit::Text => "text",
    }
    .to_owned()
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn reproduce(args: StatsArgs, corpus: Corpus, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    if args.inputs.is_empty() && args.vcs_en.is_empty() && args.vcs_de.is_empty() {
        return Err(CliError::Usage(
            "--repro needs pair dumps and/or --vcs-en/--vcs-de files".into(),
        ));
    }
    let mut input = ReproInput::default();
    for (_, recs) in read_pair_files(&args.inputs)? {
        input.pairs.extend(recs);
    }
    for (_, recs) in read_vc_files(&args.vcs_en, Language::En)? {
        input.en_vcs.extend(recs);
    }
    for (_, recs) in read_vc_files(&args.vcs_de, Language::De)? {
        input.de_vcs.extend(recs);
    }
    let report = repro::reproduce(corpus, &input);
    let text = match args.emit.unwrap_or(StatsEmit::Text) {
        StatsEmit::Text => report.render(),
        StatsEmit::Json => pretty(&report.to_json()),
        other => {
            return Err(CliError::Usage(format!(
                "--repro emits text or json, not {}",
                emit_name(other)
            )))
        }
    };
    emit(args.output.as_ref(), stdout, &text)?;
    writeln!(
        stderr,
        "summary: cells_evaluated={} cells_failed={} orderings={}",
        report.cells_evaluated(),
        report.cells_failed(),
        if report.orderings_hold() { "ok" } else { "violated" }
    )?;
    Ok(())
}

fn dist(args: DistArgs, cfg: &Config, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    require_inputs(&args.inputs, "annotated input")?;
    let files = read_vc_files(&args.inputs, args.lang)?;
    let emit_as = cfg.pick(args.emit, "emit", TableEmit::Csv)?;
    if args.finiteness_ratio {
        let mut r = FinitenessRatio::default();
        for (_, recs) in &files {
            r = r
                .merge(&FinitenessRatio::from_records(recs))
                .map_err(|e| CliError::Input(e.to_string()))?;
        }
        let text = match emit_as {
            TableEmit::Json => pretty(&serde_json::json!({
                "kind": "finiteness_ratio",
                "language": args.lang.code(),
                "non_finite": r.non_finite,
                "total": r.total,
                "ratio": r.ratio(),
                "exact": crate::stats::render_fixed(r.exact()),
            })),
            _ => format!(
                "non_finite,total,ratio\n{},{},{}\n",
                r.non_finite,
                r.total,
                crate::stats::render_fixed(r.exact())
            ),
        };
        emit(args.output.as_ref(), stdout, &text)?;
        writeln!(stderr, "summary: complexes={} non_finite={}", r.total, r.non_finite)?;
        return Ok(());
    }
    let grouping = cfg.pick(args.grouping, "grouping", Grouping::Fine)?;
    let filter = VcFilter {
        mood: args.filter.mood,
        voice: args.filter.voice,
        finiteness: args.filter.finiteness,
        include_imperatives: args.filter.include_imperatives,
    };
    let mut merged: Option<TenseDistribution> = None;
    let mut seen = 0usize;
    for (id, recs) in &files {
        seen += recs.len();
        let d = TenseDistribution::from_records(args.lang, grouping, filter.clone(), id, recs);
        merged = Some(match merged {
            None => d,
            Some(acc) => acc.merge(&d).map_err(|e| CliError::Input(e.to_string()))?,
        });
    }
    let d = merged.expect("at least one input");
    let text = match emit_as {
        TableEmit::Json => pretty(&d.to_json()),
        _ => d.to_csv(),
    };
    emit(args.output.as_ref(), stdout, &text)?;
    writeln!(
        stderr,
        "summary: complexes={} counted={} filter={}",
        seen,
        d.total(),
        filter.describe()
    )?;
    Ok(())
}

fn lemma_profile(args: LemmaArgs, cfg: &Config, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    require_inputs(&args.inputs, "annotated input")?;
    let mut merged = None;
    for (id, recs) in read_vc_files(&args.inputs, args.lang)? {
        let p = lemma_tense_profile(&recs, args.lang, &args.lemma, args.voice).with_corpus(&id);
        merged = Some(match merged {
            None => p,
            Some(acc) => crate::stats::LemmaProfile::merge(&acc, &p).map_err(|e| CliError::Input(e.to_string()))?,
        });
    }
    let p = merged.expect("at least one input");
    let text = match cfg.pick(args.emit, "emit", TableEmit::Tsv)? {
        TableEmit::Json => pretty(&p.to_json()),
        _ => p.to_tsv(),
    };
    emit(args.output.as_ref(), stdout, &text)?;
    writeln!(
        stderr,
        "summary: lemma={} complexes={}",
        p.lemma,
        p.counts.values().sum::<u64>()
    )?;
    Ok(())
}

fn features(args: FeaturesArgs, cfg: &Config, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let pc = pipeline_config(&args.parse, None, None, cfg)?;
    let layout = cfg.pick(args.parse.layout, "layout", ColumnLayout::Conllu)?;
    let temporal = match lexicon_path(
        args.temporal_lexicon.as_ref(),
        cfg,
        "temporal_lexicon",
        DEFAULT_TEMPORAL_FILE,
    ) {
        Some(p) => TemporalLexicon::load(&p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        None => TemporalLexicon::default_lexicon(),
    };
    let mut fc = FeatureConfig {
        temporal,
        ..FeatureConfig::default()
    };
    let markers: Vec<String> = if !args.markers.is_empty() {
        args.markers.clone()
    } else if let Some(m) = cfg.values.get("conditional_markers") {
        m.split(',')
            .map(|s| s.trim().to_owned())
            .filter(|s| !s.is_empty())
            .collect()
    } else {
        Vec::new()
    };
    if !markers.is_empty() {
        fc.conditional_markers = markers.iter().map(|m| m.to_lowercase()).collect();
    }
    let emit_as = cfg.pick(args.emit, "emit", TableEmit::Tsv)?;
    let json = emit_as == TableEmit::Json;
    if emit_as == TableEmit::Csv {
        return Err(CliError::Usage("features emits tsv or json".into()));
    }
    let input = reader(&args.input, args.lang, layout)?;
    let mut file = args.output.as_deref().map(create).transpose()?;
    let out: &mut dyn Write = match file.as_mut() {
        Some(f) => f,
        None => stdout,
    };
    if !json {
        writeln!(out, "{}", FEATURE_COLUMNS.join("\t"))?;
    }
    let mut warnings = Vec::new();
    let summary = annotate_stream(
        input,
        &pc,
        |w| warnings.push(w.to_owned()),
        |a| {
            for (vc, label) in &a.vcs {
                let f = extract_context_features(&a.sentence, vc, label, &fc);
                if json {
                    writeln!(out, "{}", f.to_json())?;
                } else {
                    writeln!(out, "{}", f.to_tsv_row())?;
                }
            }
            Ok(())
        },
    );
    for w in &warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    let summary = summary?;
    out.flush()?;
    finish(&summary, stderr)
}

fn explain(args: ExplainArgs, stdout: &mut dyn Write) -> Result<()> {
    let text = reference::explain(&args.labels).map_err(|e| CliError::Usage(e.to_string()))?;
    stdout.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        writeln!(stdout)?;
    }
    Ok(())
}

/// One line per pattern: the verb group of a generated sentence and the
/// label the rules assign to it.
pub fn rules_listing(lang: Option<Language>, classifier: &Classifier) -> String {
    let mut out = String::new();
    let mut specs: Vec<(Language, Spec)> = Vec::new();
    if lang != Some(Language::De) {
        for voice in [Voice::Active, Voice::Passive] {
            for t in EnTense::ALL {
                specs.push((Language::En, Spec::en(t, voice)));
            }
        }
    }
    if lang != Some(Language::En) {
        for voice in [Voice::Active, Voice::Passive] {
            for pattern in 0..2 {
                for t in DeTense::ALL {
                    let v = synth::de_variant("schreiben", pattern);
                    let spec = Spec::de(t, voice).variant(v);
                    if pattern == 1 && synth::german("x", spec).chain == synth::german("x", Spec::de(t, voice)).chain {
                        continue;
                    }
                    specs.push((Language::De, spec));
                }
            }
        }
    }
    let mut current = None;
    for (l, spec) in specs {
        if current != Some(l) {
            out.push_str(&format!("# {}\n", if l == Language::En { "English" } else { "German" }));
            out.push_str("pattern\tforms\tlabel\tmood\tvoice\tfiniteness\tprogressive\n");
            current = Some(l);
        }
        let s = synth::sentence("rule", spec);
        let vc = extract_vcs(&s.sentence, Scheme::Chain)
            .into_iter()
            .find(|v| v.contains(s.main_verb()))
            .expect("generated sentence has its complex");
        let label = classifier.classify(&vc, &s.sentence);
        let tags: Vec<&str> = vc.members.iter().map(|i| s.sentence.token(*i).pos.as_str()).collect();
        let forms: Vec<&str> = vc.members.iter().map(|i| s.sentence.token(*i).form.as_str()).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            tags.join("+"),
            forms.join(" "),
            label.display(),
            label.mood,
            label.voice,
            label.finiteness,
            if label.progressive { 1 } else { 0 }
        ));
    }
    out
}

fn rules_dump(args: RulesDumpArgs, cfg: &Config, stdout: &mut dyn Write) -> Result<()> {
    let mode = cfg.pick(args.modal_preterite, "modal_preterite", ModalPreterite::Present)?;
    let c = Classifier::default().with_modal_preterite(mode);
    stdout.write_all(rules_listing(args.lang, &c).as_bytes())?;
    Ok(())
}

/// Runs the command line `args` (program name first). Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = Config::load(cli.config.as_deref()).and_then(|cfg| match cli.command {
        Command::Annotate(a) => annotate(a, &cfg, stdout, stderr),
        Command::Pairs(a) => pairs(a, &cfg, stdout, stderr),
        Command::Stats(a) => stats(a, &cfg, stdout, stderr),
        Command::Dist(a) => dist(a, &cfg, stdout, stderr),
        Command::LemmaProfile(a) => lemma_profile(a, &cfg, stdout, stderr),
        Command::Features(a) => features(a, &cfg, stdout, stderr),
        Command::Explain(a) => explain(a, stdout),
        Command::RulesDump(a) => rules_dump(a, &cfg, stdout),
    });
    let _ = stdout.flush();
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Tense;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("tmv").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
    }

    #[test]
    fn explain_unknown_label_is_usage_error() {
        let (code, _, err) = call(&["explain", "Aorist"]);
        assert_eq!(code, 2);
        assert!(err.contains("Aorist"));
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, _, err) = call(&["annotate", "--lang", "en", "/nonexistent/x.conll"]);
        assert_eq!(code, 1);
        assert!(err.contains("cannot open"));
    }

    #[test]
    fn rules_dump_covers_all_labels() {
        let (code, out, _) = call(&["rules-dump"]);
        assert_eq!(code, 0);
        for t in Tense::inventory(Language::En)
            .into_iter()
            .chain(Tense::inventory(Language::De))
        {
            assert!(out.contains(&format!("\t{}\t", t.display())), "{}", t.display());
        }
    }

    #[test]
    fn config_keys_are_checked() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.cfg");
        std::fs::write(&p, "colour = blue\n").unwrap();
        let (code, _, err) = call(&["--config", p.to_str().unwrap(), "rules-dump"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown key 'colour'"));
        std::fs::write(&p, "modal_preterite = sometimes\n").unwrap();
        assert_eq!(call(&["--config", p.to_str().unwrap(), "rules-dump"]).0, 2);
    }
}
