//! Command-line entry point: ingestion, extraction, ranking, training,
//! evaluation, and the experiment protocols.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error.

use clap::{Args, Parser, Subcommand};
use lexfeat_core::catalog::CATALOG;
use lexfeat_core::corpus::{read_corpus_dir, CorpusError, PosTaggerContract};
use lexfeat_core::experiment::{length_sweep, subset_search};
use lexfeat_core::interchange::{
    curve_csv, feature_csv, parse_feature_csv, ranked_list_tsv, report_text,
};
use lexfeat_core::misc::NgramProfileStore;
use lexfeat_core::model::{extract_matrix, run_protocol, HyperParams, Model, ModelError};
use lexfeat_core::resources::{load_bundle, LoadError, LoadedResources};
use lexfeat_core::selection::{rank_features, FeatureMatrix, SelectionConfig, SelectionMethod};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lexfeat",
    about = "Lexical complexity features, ranking, and classification for language samples",
    version
)]
struct Cli {
    /// Configuration file (`key = value` lines); flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the full feature catalog for a corpus directory into CSV.
    Extract(ExtractArgs),
    /// Rank features of a feature CSV by a selection method.
    Rank(RankArgs),
    /// Train the classifier on a feature CSV and save the model file.
    Train(TrainArgs),
    /// Evaluate a saved model on a feature CSV.
    Eval(EvalArgs),
    /// Continuous feature-subset search over one ranking method.
    Search(SearchArgs),
    /// Input-length sweep: truncate, re-extract, retrain at each length.
    Sweep(SweepArgs),
    /// Build group n-gram profiles from a labeled corpus.
    Profiles(ProfilesArgs),
    /// List every feature: id, group, description.
    Catalog,
}

#[derive(Args)]
struct ResourceArgs {
    /// Resource directory.
    #[arg(long)]
    resources: PathBuf,
    /// Manifest path; defaults to `<resources>/manifest.txt`.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    /// Corpus directory (*.txt, *.cha, *.conll plus labels.tsv).
    #[arg(long)]
    corpus: PathBuf,
    #[command(flatten)]
    resources: ResourceArgs,
    /// Profile directory overriding the manifest entry.
    #[arg(long)]
    profiles: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RankArgs {
    /// Feature CSV produced by `extract`.
    #[arg(long = "in")]
    input: PathBuf,
    /// anova, chi2, info_gain, relieff, or all.
    #[arg(long)]
    method: Option<String>,
    /// Output TSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Clone, Copy, Default)]
struct HyperArgs {
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    l2: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct TrainArgs {
    /// Feature CSV produced by `extract`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output model path.
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated feature subset (default: every column).
    #[arg(long)]
    features: Option<String>,
    #[command(flatten)]
    hyper: HyperArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Feature CSV produced by `extract`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Saved model path.
    #[arg(long)]
    model: PathBuf,
    /// Optional report output path (also printed to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Training feature CSV.
    #[arg(long)]
    train: PathBuf,
    /// Test feature CSV.
    #[arg(long)]
    test: PathBuf,
    /// anova, chi2, info_gain, or relieff.
    #[arg(long)]
    method: Option<String>,
    /// Output curve CSV path.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    hyper: HyperArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Training corpus directory.
    #[arg(long)]
    train_corpus: PathBuf,
    /// Test corpus directory.
    #[arg(long)]
    test_corpus: PathBuf,
    #[command(flatten)]
    resources: ResourceArgs,
    /// Comma-separated feature subset.
    #[arg(long)]
    features: Option<String>,
    /// File with one feature id per line (alternative to --features).
    #[arg(long)]
    features_file: Option<PathBuf>,
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
    #[arg(long)]
    step: Option<usize>,
    /// Output curve CSV path.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    hyper: HyperArgs,
}

#[derive(Args)]
struct ProfilesArgs {
    /// Labeled corpus directory.
    #[arg(long)]
    corpus: PathBuf,
    #[command(flatten)]
    resources: ResourceArgs,
    /// Output directory for the profile files.
    #[arg(long)]
    out: PathBuf,
}

/// Error wrapper carrying the process exit code.
enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> CliError {
        match e {
            LoadError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> CliError {
        match e {
            CorpusError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> CliError {
        match e {
            ModelError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<lexfeat_core::interchange::InterchangeError> for CliError {
    fn from(e: lexfeat_core::interchange::InterchangeError) -> CliError {
        match e {
            lexfeat_core::interchange::InterchangeError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<lexfeat_core::experiment::ExperimentError> for CliError {
    fn from(e: lexfeat_core::experiment::ExperimentError) -> CliError {
        CliError::Validation(e.to_string())
    }
}

impl From<lexfeat_core::selection::SelectionError> for CliError {
    fn from(e: lexfeat_core::selection::SelectionError) -> CliError {
        CliError::Validation(e.to_string())
    }
}

impl From<lexfeat_core::misc::ProfileError> for CliError {
    fn from(e: lexfeat_core::misc::ProfileError) -> CliError {
        match e {
            lexfeat_core::misc::ProfileError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

/// Defaults resolved from the built-ins, then the config file, then flags.
struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    fn load(config: Option<&Path>) -> Result<Settings, CliError> {
        let mut values = BTreeMap::new();
        for (k, v) in [
            ("learning_rate", "0.1"),
            ("l2", "0.001"),
            ("epochs", "500"),
            ("seed", "42"),
            ("relieff_k", "10"),
            ("info_gain_bins", "10"),
            ("method", "anova"),
            ("sweep_from", "5"),
            ("sweep_to", "225"),
            ("sweep_step", "1"),
        ] {
            values.insert(k.to_string(), v.to_string());
        }
        if let Some(path) = config {
            let text = read_file(path)?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(validation(format!(
                        "{}:{}: expected `key = value`",
                        path.display(),
                        lineno + 1
                    )));
                };
                let key = k.trim().to_string();
                if !values.contains_key(&key) {
                    return Err(validation(format!(
                        "{}:{}: unknown config key `{key}`",
                        path.display(),
                        lineno + 1
                    )));
                }
                values.insert(key, v.trim().to_string());
            }
        }
        Ok(Settings { values })
    }

    fn set(&mut self, key: &str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.values[key]
            .parse()
            .map_err(|_| validation(format!("bad value for `{key}`: {}", self.values[key])))
    }

    fn hyper(&self) -> Result<HyperParams, CliError> {
        Ok(HyperParams {
            learning_rate: self.get("learning_rate")?,
            l2: self.get("l2")?,
            epochs: self.get("epochs")?,
            seed: self.get("seed")?,
        })
    }

    fn selection(&self) -> Result<SelectionConfig, CliError> {
        Ok(SelectionConfig {
            relieff_k: self.get("relieff_k")?,
            info_gain_bins: self.get("info_gain_bins")?,
        })
    }

    fn apply_hyper(&mut self, h: &HyperArgs) {
        self.set("learning_rate", h.learning_rate.map(|v| format!("{v}")));
        self.set("l2", h.l2.map(|v| format!("{v}")));
        self.set("epochs", h.epochs.map(|v| v.to_string()));
        self.set("seed", h.seed.map(|v| v.to_string()));
    }

    /// The resolved-config block every command echoes for exact reruns.
    fn echo(&self, command: &str, extra: &[(String, String)]) {
        eprintln!("# resolved config for `{command}`");
        for (k, v) in &self.values {
            eprintln!("#   {k} = {v}");
        }
        for (k, v) in extra {
            eprintln!("#   {k} = {v}");
        }
    }
}

fn load_resources(args: &ResourceArgs) -> Result<LoadedResources, CliError> {
    let manifest = args
        .manifest
        .clone()
        .unwrap_or_else(|| args.resources.join("manifest.txt"));
    Ok(load_bundle(&args.resources, &manifest)?)
}

fn load_corpus(
    dir: &Path,
    tagger: Option<&dyn PosTaggerContract>,
) -> Result<Vec<lexfeat_core::TextSample>, CliError> {
    let samples = read_corpus_dir(dir, tagger)?;
    if samples.is_empty() {
        return Err(validation(format!(
            "corpus directory {} holds no documents",
            dir.display()
        )));
    }
    Ok(samples)
}

fn parse_method(name: &str) -> Result<SelectionMethod, CliError> {
    SelectionMethod::parse(name)
        .ok_or_else(|| validation(format!("unknown selection method `{name}`")))
}

fn parse_subset(
    features: Option<&str>,
    features_file: Option<&Path>,
) -> Result<Option<Vec<String>>, CliError> {
    if let Some(list) = features {
        let ids: Vec<String> = list
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        if ids.is_empty() {
            return Err(validation("--features is empty"));
        }
        return Ok(Some(ids));
    }
    if let Some(path) = features_file {
        let ids: Vec<String> = read_file(path)?
            .lines()
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if ids.is_empty() {
            return Err(validation(format!("{} lists no features", path.display())));
        }
        return Ok(Some(ids));
    }
    Ok(None)
}

fn warn_unlabeled(matrix: &FeatureMatrix) -> FeatureMatrix {
    let labeled = matrix.labeled_only();
    let skipped = matrix.n_samples() - labeled.n_samples();
    if skipped > 0 {
        eprintln!("# note: skipped {skipped} unlabeled sample(s)");
    }
    labeled
}

fn cmd_extract(settings: &Settings, args: &ExtractArgs) -> Result<(), CliError> {
    let mut loaded = load_resources(&args.resources)?;
    if let Some(dir) = &args.profiles {
        loaded.bundle.profiles = Some(NgramProfileStore::load_dir(dir)?);
    }
    for (name, count) in &loaded.report.entries {
        eprintln!("# loaded {name}: {count} entries");
    }
    let tagger = loaded.tagger.as_ref().map(|t| t as &dyn PosTaggerContract);
    let samples = load_corpus(&args.corpus, tagger)?;
    let matrix = extract_matrix(&samples, &loaded.bundle);
    write_file(&args.out, &feature_csv(&matrix))?;
    settings.echo(
        "extract",
        &[
            ("corpus".to_string(), args.corpus.display().to_string()),
            ("samples".to_string(), samples.len().to_string()),
            ("features".to_string(), CATALOG.len().to_string()),
            ("out".to_string(), args.out.display().to_string()),
        ],
    );
    Ok(())
}

fn cmd_rank(settings: &Settings, args: &RankArgs) -> Result<(), CliError> {
    let text = read_file(&args.input)?;
    let matrix = warn_unlabeled(&parse_feature_csv(&args.input, &text)?);
    let labels = matrix.binary_labels()?;
    let means = matrix.column_means();
    let dense = matrix.imputed_with(&means);
    let sel = settings.selection()?;
    let default_method: String = settings.get("method")?;
    let method_name = args.method.clone().unwrap_or(default_method);
    let methods: Vec<SelectionMethod> = if method_name == "all" {
        SelectionMethod::ALL.to_vec()
    } else {
        vec![parse_method(&method_name)?]
    };
    let mut out = String::new();
    for method in &methods {
        let ranked = rank_features(&matrix.feature_ids, &dense, &labels, *method, &sel)?;
        out.push_str(&ranked_list_tsv(&ranked));
    }
    write_file(&args.out, &out)?;
    settings.echo(
        "rank",
        &[
            ("in".to_string(), args.input.display().to_string()),
            ("methods".to_string(), method_name),
            ("out".to_string(), args.out.display().to_string()),
        ],
    );
    Ok(())
}

fn cmd_train(settings: &Settings, args: &TrainArgs) -> Result<(), CliError> {
    let text = read_file(&args.input)?;
    let matrix = warn_unlabeled(&parse_feature_csv(&args.input, &text)?);
    let subset = parse_subset(args.features.as_deref(), None)?
        .unwrap_or_else(|| matrix.feature_ids.clone());
    let hyper = settings.hyper()?;
    let outcome = run_protocol(&matrix, &matrix, &subset, &hyper)?;
    outcome.model.save(&args.model)?;
    print!("{}", report_text(&outcome.report));
    settings.echo(
        "train",
        &[
            ("in".to_string(), args.input.display().to_string()),
            ("model".to_string(), args.model.display().to_string()),
            ("dropped".to_string(), outcome.dropped_features.join(",")),
        ],
    );
    Ok(())
}

fn cmd_eval(settings: &Settings, args: &EvalArgs) -> Result<(), CliError> {
    let text = read_file(&args.input)?;
    let matrix = warn_unlabeled(&parse_feature_csv(&args.input, &text)?);
    let model = Model::load(&args.model)?;
    let report = model.evaluate(&matrix)?;
    let rendered = report_text(&report);
    print!("{rendered}");
    if let Some(out) = &args.out {
        write_file(out, &rendered)?;
    }
    settings.echo(
        "eval",
        &[
            ("in".to_string(), args.input.display().to_string()),
            ("model".to_string(), args.model.display().to_string()),
        ],
    );
    Ok(())
}

fn cmd_search(settings: &Settings, args: &SearchArgs) -> Result<(), CliError> {
    let train_text = read_file(&args.train)?;
    let test_text = read_file(&args.test)?;
    let train = warn_unlabeled(&parse_feature_csv(&args.train, &train_text)?);
    let test = warn_unlabeled(&parse_feature_csv(&args.test, &test_text)?);
    let default_method: String = settings.get("method")?;
    let method = parse_method(&args.method.clone().unwrap_or(default_method))?;
    let result = subset_search(
        &train,
        &test,
        method,
        &settings.selection()?,
        &settings.hyper()?,
    )?;
    write_file(&args.out, &curve_csv(&result.curve, &result.best))?;
    settings.echo(
        "search",
        &[
            ("method".to_string(), method.as_str().to_string()),
            ("best_k".to_string(), result.best.x.to_string()),
            ("best_f1".to_string(), format!("{}", result.best.f1)),
            ("out".to_string(), args.out.display().to_string()),
        ],
    );
    Ok(())
}

fn cmd_sweep(settings: &Settings, args: &SweepArgs) -> Result<(), CliError> {
    let subset = parse_subset(args.features.as_deref(), args.features_file.as_deref())?
        .ok_or_else(|| validation("sweep needs --features or --features-file"))?;
    let loaded = load_resources(&args.resources)?;
    let tagger = loaded.tagger.as_ref().map(|t| t as &dyn PosTaggerContract);
    let train = load_corpus(&args.train_corpus, tagger)?;
    let test = load_corpus(&args.test_corpus, tagger)?;
    let from = args.from.map_or_else(|| settings.get("sweep_from"), Ok)?;
    let to = args.to.map_or_else(|| settings.get("sweep_to"), Ok)?;
    let step = args.step.map_or_else(|| settings.get("sweep_step"), Ok)?;
    if from == 0 || to < from || step == 0 {
        return Err(validation("sweep range must be positive and ascending"));
    }
    let lengths: Vec<usize> = (from..=to).step_by(step).collect();
    let result = length_sweep(
        &train,
        &test,
        &loaded.bundle,
        &subset,
        &lengths,
        &settings.hyper()?,
    )?;
    write_file(&args.out, &curve_csv(&result.curve, &result.best))?;
    settings.echo(
        "sweep",
        &[
            ("features".to_string(), subset.join(",")),
            ("lengths".to_string(), format!("{from}..{to} step {step}")),
            ("best_length".to_string(), result.best.x.to_string()),
            ("best_f1".to_string(), format!("{}", result.best.f1)),
            ("out".to_string(), args.out.display().to_string()),
        ],
    );
    Ok(())
}

fn cmd_profiles(settings: &Settings, args: &ProfilesArgs) -> Result<(), CliError> {
    let loaded = load_resources(&args.resources)?;
    let tagger = loaded.tagger.as_ref().map(|t| t as &dyn PosTaggerContract);
    let samples = load_corpus(&args.corpus, tagger)?;
    let store = NgramProfileStore::build(&samples)?;
    store.save_dir(&args.out)?;
    settings.echo(
        "profiles",
        &[
            ("corpus".to_string(), args.corpus.display().to_string()),
            ("profiles".to_string(), store.len().to_string()),
            ("out".to_string(), args.out.display().to_string()),
        ],
    );
    Ok(())
}

fn cmd_catalog() {
    let mut out = String::new();
    for def in CATALOG {
        out.push_str(def.id);
        out.push('\t');
        out.push_str(def.group.as_str());
        out.push('\t');
        out.push_str(def.description);
        out.push('\n');
    }
    print!("{out}");
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut settings = Settings::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Extract(args) => cmd_extract(&settings, args),
        Command::Rank(args) => cmd_rank(&settings, args),
        Command::Train(args) => {
            settings.apply_hyper(&args.hyper);
            cmd_train(&settings, args)
        }
        Command::Eval(args) => cmd_eval(&settings, args),
        Command::Search(args) => {
            settings.apply_hyper(&args.hyper);
            cmd_search(&settings, args)
        }
        Command::Sweep(args) => {
            settings.apply_hyper(&args.hyper);
            cmd_sweep(&settings, args)
        }
        Command::Profiles(args) => cmd_profiles(&settings, args),
        Command::Catalog => {
            cmd_catalog();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
