//! Command-line interface: `ingest`, `eval`, `sweep`, `augment`, `report`.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 flag/usage error. Every
//! command is deterministic given its flags; `VERIDICT_SEED` supplies the
//! default seed. Flag precedence: flags > `--config` file > built-in
//! defaults.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::augment::{augment_corpus, load_lexicon, AugmentConfig, AugmentError, SynonymLexicon};
use crate::bundle::{
    atomic_write, load_model, save_model, sha256_hex, BundleError, ModelBundle, Provenance,
};
use crate::classifiers::TrainConfig;
use crate::corpus::{load_csv, to_csv_string, train_test_split, CorpusError, SplitConfig};
use crate::eval::{
    comparison_rows_from, evaluate, fit_full, format_comparison, render_svg, report_csv, sweep,
    sweep_csv, ClassifierKind, EvalError, ExperimentConfig, Protocol, Resources, SweepGrid,
    REPORT_CSV_HEADER,
};
use crate::features::{FeatureConfig, FeatureError, FeatureMode, NgramRange};
use crate::textprep::{LemmaDictionary, StopwordList, TextPrepError};

// stdout may be a closed pipe (`veridict ... | head`); swallow EPIPE
// instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Debug, Error)]
enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Augment(#[from] AugmentError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    TextPrep(#[from] TextPrepError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("config file: {0}")]
    Config(#[from] toml::de::Error),
}

#[derive(Parser)]
#[command(
    name = "veridict",
    version,
    about = "Deceptive-review detection: n-gram features, five classifiers, evaluation reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a corpus CSV and print summary statistics.
    Ingest(IngestArgs),
    /// Run one experiment and write a report CSV (optionally an SVG chart).
    Eval(Box<EvalArgs>),
    /// Evaluate a feature x classifier grid on one shared split.
    Sweep(Box<SweepArgs>),
    /// Expand a training CSV with synonym-replacement copies.
    Augment(AugmentArgs),
    /// Merge report CSVs into a comparison table against published baselines.
    Report(ReportArgs),
}

fn parse_classifier(s: &str) -> Result<ClassifierKind, String> {
    ClassifierKind::parse(s).ok_or_else(|| format!("unknown classifier `{s}` (lr|lsvm|pa|nb|svm)"))
}

fn parse_mode(s: &str) -> Result<FeatureMode, String> {
    match s.to_ascii_lowercase().as_str() {
        "count" | "bow" => Ok(FeatureMode::Count),
        "tfidf" | "tf-idf" => Ok(FeatureMode::TfIdf),
        _ => Err(format!("unknown feature mode `{s}` (count|tfidf)")),
    }
}

fn parse_protocol(s: &str) -> Result<Protocol, String> {
    Protocol::parse(s).ok_or_else(|| format!("unknown protocol `{s}` (holdout|kfold)"))
}

fn parse_ngram(s: &str) -> Result<NgramRange, String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected LO,HI, got `{s}`"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad ngram lo `{lo}`"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad ngram hi `{hi}`"))?;
    NgramRange::new(lo, hi).map_err(|e| e.to_string())
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let f: f64 = s.parse().map_err(|_| format!("bad fraction `{s}`"))?;
    if f > 0.0 && f < 1.0 {
        Ok(f)
    } else {
        Err(format!("fraction {f} outside (0, 1)"))
    }
}

fn parse_unit_fraction(s: &str) -> Result<f64, String> {
    let f: f64 = s.parse().map_err(|_| format!("bad fraction `{s}`"))?;
    if f > 0.0 && f <= 1.0 {
        Ok(f)
    } else {
        Err(format!("fraction {f} outside (0, 1]"))
    }
}

fn parse_positive(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("bad count `{s}`"))?;
    if n >= 1 {
        Ok(n)
    } else {
        Err("must be >= 1".to_string())
    }
}

fn parse_k(s: &str) -> Result<usize, String> {
    let k: usize = s.parse().map_err(|_| format!("bad k `{s}`"))?;
    if k >= 2 {
        Ok(k)
    } else {
        Err("k must be >= 2".to_string())
    }
}

#[derive(Args)]
struct IngestArgs {
    /// Corpus CSV with `deceptive` and `text` columns.
    #[arg(long)]
    data: PathBuf,
}

#[derive(Args, Default, Clone, Copy)]
struct TrainFlags {
    #[arg(long, value_parser = parse_positive)]
    epochs: Option<usize>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    l2: Option<f64>,
    /// Aggressiveness cap (PA) / box constraint (kernel SVM).
    #[arg(long)]
    c: Option<f64>,
    /// Naive Bayes smoothing.
    #[arg(long)]
    alpha: Option<f64>,
    /// RBF width; when omitted the scale heuristic is used.
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
}

impl TrainFlags {
    fn apply(&self, cfg: &mut TrainConfig) {
        if let Some(v) = self.epochs {
            cfg.epochs = v;
        }
        if let Some(v) = self.learning_rate {
            cfg.learning_rate = v;
        }
        if let Some(v) = self.l2 {
            cfg.l2 = v;
        }
        if let Some(v) = self.c {
            cfg.c = v;
        }
        if let Some(v) = self.alpha {
            cfg.alpha = v;
        }
        if let Some(v) = self.gamma {
            cfg.gamma = v;
        }
        if let Some(v) = self.tolerance {
            cfg.tolerance = v;
        }
    }
}

#[derive(Args, Default)]
struct ResourceFlags {
    /// Custom stop-word list (one word per line).
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Custom lemma exceptions TSV; requires --suffix-rules.
    #[arg(long)]
    lemma_exceptions: Option<PathBuf>,
    /// Custom suffix rules TSV; requires --lemma-exceptions.
    #[arg(long)]
    suffix_rules: Option<PathBuf>,
    /// Custom synonym lexicon TSV for augmentation.
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

impl ResourceFlags {
    fn load(&self) -> Result<Resources, AppError> {
        let stoplist = match &self.stopwords {
            Some(p) => StopwordList::from_file(p)?,
            None => StopwordList::builtin(),
        };
        let lemmas = match (&self.lemma_exceptions, &self.suffix_rules) {
            (Some(e), Some(r)) => LemmaDictionary::from_files(e, r)?,
            (None, None) => LemmaDictionary::builtin(),
            _ => {
                return Err(AppError::Usage(
                    "--lemma-exceptions and --suffix-rules must be given together".to_string(),
                ))
            }
        };
        let lexicon = match &self.lexicon {
            Some(p) => load_lexicon(p)?,
            None => SynonymLexicon::builtin(),
        };
        Ok(Resources {
            stoplist,
            lemmas,
            lexicon,
        })
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Corpus CSV.
    #[arg(long)]
    data: PathBuf,
    /// lr | lsvm | pa | nb | svm.
    #[arg(long, value_parser = parse_classifier)]
    classifier: Option<ClassifierKind>,
    /// count | tfidf.
    #[arg(long, value_parser = parse_mode)]
    features: Option<FeatureMode>,
    /// N-gram range LO,HI with 1 <= LO <= HI <= 5.
    #[arg(long, value_parser = parse_ngram)]
    ngram: Option<NgramRange>,
    #[arg(long, value_parser = parse_positive)]
    max_features: Option<usize>,
    /// holdout | kfold.
    #[arg(long, value_parser = parse_protocol)]
    protocol: Option<Protocol>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for report.csv.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write report.svg.
    #[arg(long)]
    svg: bool,
    /// Persist the trained model bundle to this path.
    #[arg(long)]
    save_model: Option<PathBuf>,
    /// Full experiment config as TOML; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_fraction)]
    test_fraction: Option<f64>,
    #[arg(long, value_parser = parse_k)]
    k: Option<usize>,
    /// Disable stratified splitting.
    #[arg(long)]
    no_stratify: bool,
    /// Smoothed IDF: ln((1+N)/(1+df)) + 1.
    #[arg(long)]
    smooth_idf: bool,
    /// Augment the training part with synonym-replacement copies.
    #[arg(long)]
    augment: bool,
    /// Copies per training review (implies --augment).
    #[arg(long, value_parser = parse_positive)]
    augment_n: Option<usize>,
    /// Fraction of eligible tokens replaced per copy (implies --augment).
    #[arg(long, value_parser = parse_unit_fraction)]
    augment_fraction: Option<f64>,
    #[command(flatten)]
    train: TrainFlags,
    #[command(flatten)]
    resources: ResourceFlags,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    data: PathBuf,
    /// Semicolon-separated ngram ranges, e.g. `1,1;1,2;1,3`.
    #[arg(long)]
    ranges: Option<String>,
    /// Comma-separated max-features axis, e.g. `1000,5000,11000`.
    #[arg(long)]
    max_features_list: Option<String>,
    /// Comma-separated feature modes, e.g. `count,tfidf`.
    #[arg(long)]
    features_list: Option<String>,
    /// Comma-separated classifiers, e.g. `lr,pa,nb`.
    #[arg(long)]
    classifiers: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_fraction)]
    test_fraction: Option<f64>,
    #[arg(long)]
    no_stratify: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[command(flatten)]
    train: TrainFlags,
    #[command(flatten)]
    resources: ResourceFlags,
}

#[derive(Args)]
struct AugmentArgs {
    /// Training CSV (augment the train split only; never the test data).
    #[arg(long)]
    data: PathBuf,
    /// Synonym lexicon TSV; the built-in lexicon is used when omitted.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Copies per review (n >= 1).
    #[arg(long, default_value_t = 10, value_parser = parse_positive)]
    n: usize,
    /// Fraction of eligible tokens replaced per copy.
    #[arg(long, default_value_t = 0.1, value_parser = parse_unit_fraction)]
    fraction: f64,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// One or more report CSVs produced by `eval` or `sweep`.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Write the comparison table here as well as stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a bar chart of all rows.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn env_seed() -> Result<Option<u64>, AppError> {
    match std::env::var("VERIDICT_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| AppError::Usage(format!("VERIDICT_SEED=`{v}` is not a u64"))),
        Err(_) => Ok(None),
    }
}

/// Public entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version print to stdout and exit 0; real parse errors
            // print usage to stderr and exit 2.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `veridict --help` for usage");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(command: Command) -> Result<(), AppError> {
    match command {
        Command::Ingest(args) => cmd_ingest(args),
        Command::Eval(args) => cmd_eval(*args),
        Command::Sweep(args) => cmd_sweep(*args),
        Command::Augment(args) => cmd_augment(args),
        Command::Report(args) => cmd_report(args),
    }
}

fn cmd_ingest(args: IngestArgs) -> Result<(), AppError> {
    let corpus = load_csv(&args.data)?;
    out!("reviews: {}", corpus.len());
    for (label, count) in corpus.label_counts() {
        out!("  {}: {}", label.as_str(), count);
    }
    let with_polarity = corpus
        .reviews()
        .iter()
        .filter(|r| r.polarity.is_some())
        .count();
    out!("with polarity: {with_polarity}");
    let hotels: std::collections::BTreeSet<&str> = corpus
        .reviews()
        .iter()
        .filter_map(|r| r.hotel.as_deref())
        .collect();
    out!("distinct hotels: {}", hotels.len());
    Ok(())
}

fn resolve_experiment(args: &EvalArgs) -> Result<ExperimentConfig, AppError> {
    // Base: --config file when given, else built-in defaults.
    let mut cfg = match &args.config {
        Some(path) => toml::from_str::<ExperimentConfig>(&std::fs::read_to_string(path)?)?,
        None => ExperimentConfig::new(
            FeatureConfig::new(
                NgramRange::new(1, 3).expect("static range"),
                11000,
                FeatureMode::TfIdf,
            ),
            ClassifierKind::PassiveAggressive,
            SplitConfig::default(),
            Protocol::HoldOut,
        ),
    };

    if let Some(v) = args.classifier {
        cfg.classifier = v;
    }
    if let Some(v) = args.features {
        cfg.feature.mode = v;
    }
    if let Some(v) = args.ngram {
        cfg.feature.range = v;
    }
    if let Some(v) = args.max_features {
        cfg.feature.max_features = v;
    }
    if args.smooth_idf {
        cfg.feature.smooth_idf = true;
    }
    if let Some(v) = args.protocol {
        cfg.protocol = v;
    }
    if let Some(v) = args.test_fraction {
        cfg.split.test_fraction = v;
    }
    if let Some(v) = args.k {
        cfg.split.k = v;
    }
    if args.no_stratify {
        cfg.split.stratified = false;
    }
    if let Some(seed) = args.seed.or(env_seed()?) {
        cfg.split.seed = seed;
        cfg.train.seed = seed;
    }
    args.train.apply(&mut cfg.train);
    if args.train.gamma.is_some() {
        cfg.auto_gamma = false;
    }
    if args.augment || args.augment_n.is_some() || args.augment_fraction.is_some() {
        let mut aug = cfg.augment.unwrap_or(AugmentConfig {
            seed: cfg.split.seed,
            ..Default::default()
        });
        if let Some(n) = args.augment_n {
            aug.n_aug = n;
        }
        if let Some(f) = args.augment_fraction {
            aug.replace_fraction = f;
        }
        cfg.augment = Some(aug);
    }
    Ok(cfg)
}

fn cmd_eval(args: EvalArgs) -> Result<(), AppError> {
    let cfg = resolve_experiment(&args)?;
    let res = args.resources.load()?;
    let corpus = load_csv(&args.data)?;
    let report = evaluate(&corpus, &cfg, &res)?;

    std::fs::create_dir_all(&args.out)?;
    let csv_path = args.out.join("report.csv");
    atomic_write(
        &csv_path,
        report_csv(std::slice::from_ref(&report)).as_bytes(),
    )?;

    out!(
        "accuracy {:.4}  ({}, {}, ngram {}-{}, max_features {}, {}, seed {})",
        report.accuracy,
        cfg.classifier.as_str(),
        cfg.feature.mode.as_str(),
        cfg.feature.range.lo(),
        cfg.feature.range.hi(),
        cfg.feature.max_features,
        cfg.protocol.as_str(),
        report.seed,
    );
    if let Some(folds) = &report.per_fold {
        let folds_str: Vec<String> = folds.iter().map(|a| format!("{a:.4}")).collect();
        out!("per-fold: [{}]", folds_str.join(", "));
    }
    out!(
        "confusion [truth x pred, T/D]: [[{}, {}], [{}, {}]]",
        report.confusion[0][0],
        report.confusion[0][1],
        report.confusion[1][0],
        report.confusion[1][1]
    );
    out!("report written to {}", csv_path.display());

    if args.svg {
        let rows = vec![(
            cfg.classifier.as_str().to_string(),
            cfg.protocol,
            report.accuracy,
        )];
        let svg_path = args.out.join("report.svg");
        atomic_write(&svg_path, render_svg(&rows).as_bytes())?;
        out!("chart written to {}", svg_path.display());
    }

    if let Some(model_path) = &args.save_model {
        // The persisted model corresponds to the evaluated setting: trained
        // on the hold-out training part, or on the full corpus under k-fold.
        let train_part = match cfg.protocol {
            Protocol::HoldOut => train_test_split(&corpus, &cfg.split)?.0,
            Protocol::KFold => corpus.clone(),
        };
        let (extractor, classifier) = fit_full(&train_part, &cfg, &res)?;
        let bundle = ModelBundle {
            feature: cfg.feature,
            extractor,
            classifier,
            train_seed: cfg.train.seed,
            provenance: Provenance {
                corpus_sha256: Some(sha256_hex(&std::fs::read(&args.data)?)),
                created_unix: ModelBundle::now_unix(),
            },
        };
        save_model(&bundle, model_path)?;
        out!("model written to {}", model_path.display());
        // Round-trip guard: the reloaded bundle must predict identically.
        let reloaded = load_model(model_path)?;
        debug_assert_eq!(&reloaded, &bundle);
    }
    Ok(())
}

fn parse_axis<T>(
    raw: &Option<String>,
    sep: char,
    mut parse: impl FnMut(&str) -> Result<T, String>,
) -> Result<Option<Vec<T>>, AppError> {
    let Some(raw) = raw else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for part in raw.split(sep) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(parse(part).map_err(AppError::Usage)?);
    }
    if out.is_empty() {
        return Err(AppError::Usage("empty axis list".to_string()));
    }
    Ok(Some(out))
}

fn cmd_sweep(args: SweepArgs) -> Result<(), AppError> {
    let mut grid = SweepGrid::default();
    if let Some(ranges) = parse_axis(&args.ranges, ';', parse_ngram)? {
        grid.ranges = ranges;
    }
    if let Some(maxes) = parse_axis(&args.max_features_list, ',', |s| {
        parse_positive(s).map_err(|e| format!("max-features: {e}"))
    })? {
        grid.max_features = maxes;
    }
    if let Some(modes) = parse_axis(&args.features_list, ',', parse_mode)? {
        grid.modes = modes;
    }
    if let Some(kinds) = parse_axis(&args.classifiers, ',', parse_classifier)? {
        grid.classifiers = kinds;
    }

    let mut split = SplitConfig::default();
    if let Some(f) = args.test_fraction {
        split.test_fraction = f;
    }
    if args.no_stratify {
        split.stratified = false;
    }
    // Same experiment-level default as `eval`: SGD models run to
    // effective convergence.
    let mut train = TrainConfig {
        epochs: 30,
        ..Default::default()
    };
    if let Some(seed) = args.seed.or(env_seed()?) {
        split.seed = seed;
        train.seed = seed;
    }
    args.train.apply(&mut train);

    let res = args.resources.load()?;
    let corpus = load_csv(&args.data)?;
    let result = sweep(&corpus, &grid, &split, &train, &res)?;

    std::fs::create_dir_all(&args.out)?;
    let csv_path = args.out.join("sweep.csv");
    atomic_write(&csv_path, sweep_csv(&result).as_bytes())?;
    out!(
        "{} rows written to {}",
        result.rows.len(),
        csv_path.display()
    );

    if let Some(best) = result.best() {
        out!(
            "best: {} {} ngram {}-{} max_features {} accuracy {:.4}",
            best.classifier.as_str(),
            best.feature.mode.as_str(),
            best.feature.range.lo(),
            best.feature.range.hi(),
            best.feature.max_features,
            best.accuracy.unwrap(),
        );
        out!(
            "rerun: veridict eval --data {} --classifier {} --features {} --ngram {},{} --max-features {} --protocol {} --seed {}",
            args.data.display(),
            best.classifier.as_str(),
            best.feature.mode.as_str(),
            best.feature.range.lo(),
            best.feature.range.hi(),
            best.feature.max_features,
            best.protocol.as_str(),
            best.seed,
        );
    } else {
        out!("no cell succeeded");
    }
    Ok(())
}

fn cmd_augment(args: AugmentArgs) -> Result<(), AppError> {
    let lexicon = match &args.lexicon {
        Some(p) => load_lexicon(p)?,
        None => SynonymLexicon::builtin(),
    };
    let cfg = AugmentConfig::new(
        args.n,
        args.fraction,
        args.seed.or(env_seed()?).unwrap_or(0),
    )?;
    let corpus = load_csv(&args.data)?;
    let augmented = augment_corpus(&corpus, &lexicon, &cfg);
    atomic_write(&args.out, to_csv_string(&augmented)?.as_bytes())?;
    out!(
        "{} reviews in, {} out ({} copies each), written to {}",
        corpus.len(),
        augmented.len(),
        cfg.n_aug,
        args.out.display()
    );
    Ok(())
}

fn read_report_rows(path: &Path) -> Result<Vec<(String, String, Protocol, f64)>, AppError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers().map_err(CorpusError::from)?.clone();
    let expected: Vec<&str> = REPORT_CSV_HEADER.split(',').collect();
    let idx = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| AppError::Usage(format!("{}: missing column `{name}`", path.display())))
    };
    let (ci, fi, li, hi_, mi, pi, ai) = (
        idx(expected[0])?,
        idx(expected[1])?,
        idx(expected[2])?,
        idx(expected[3])?,
        idx(expected[4])?,
        idx(expected[5])?,
        idx(expected[6])?,
    );
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(CorpusError::from)?;
        let get = |i: usize| record.get(i).unwrap_or("").to_string();
        let accuracy: f64 = match get(ai).parse() {
            Ok(a) => a,
            Err(_) => continue, // failed sweep cells carry NaN
        };
        if accuracy.is_nan() {
            continue;
        }
        let protocol = Protocol::parse(&get(pi))
            .ok_or_else(|| AppError::Usage(format!("bad protocol in {}", path.display())))?;
        rows.push((
            get(ci),
            format!("{} ({},{}) max {}", get(fi), get(li), get(hi_), get(mi)),
            protocol,
            accuracy,
        ));
    }
    Ok(rows)
}

fn cmd_report(args: ReportArgs) -> Result<(), AppError> {
    let mut entries = Vec::new();
    for path in &args.inputs {
        entries.extend(read_report_rows(path)?);
    }
    if entries.is_empty() {
        return Err(AppError::Usage(
            "no usable rows in the input reports".to_string(),
        ));
    }

    let ours: Vec<(String, String, f64)> = entries
        .iter()
        .map(|(c, f, p, a)| (format!("{c} (ours, {})", p.as_str()), f.clone(), *a))
        .collect();
    let table = format_comparison(&comparison_rows_from(ours));
    {
        use std::io::Write;
        let _ = write!(std::io::stdout(), "{table}");
    };
    if let Some(out) = &args.out {
        atomic_write(out, table.as_bytes())?;
    }
    if let Some(svg_path) = &args.svg {
        let rows: Vec<(String, Protocol, f64)> =
            entries.into_iter().map(|(c, _f, p, a)| (c, p, a)).collect();
        atomic_write(svg_path, render_svg(&rows).as_bytes())?;
        out!("chart written to {}", svg_path.display());
    }
    Ok(())
}
