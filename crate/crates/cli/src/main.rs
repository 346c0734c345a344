//! `wnbuild`: runs the wordnet build pipeline stage by stage.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wnbuild::linker::Combiner;
use wnbuild::pipeline::{self, RunConfig, Stage};
use wnbuild::{fixture, Error, Result};

#[derive(Parser)]
#[command(name = "wnbuild", version, about = "Grow a target-language wordnet over a source wordnet skeleton")]
struct Cli {
    /// Run configuration (TOML). Relative paths in it are read against its directory.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for every artifact.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Write the bundled demo dataset into DIR; its config is used unless --config is given.
    #[arg(long, value_name = "DIR", global = true)]
    seed_fixture: Option<PathBuf>,

    /// More logging (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Option<Command>,
}

/// Each flag replaces the matching config key.
#[derive(Args, Default)]
struct Overrides {
    #[arg(long, global = true)]
    wordnet: Option<PathBuf>,
    /// Directed bilingual dump (repeatable; replaces the configured list).
    #[arg(long = "bilingual", global = true)]
    bilinguals: Vec<PathBuf>,
    #[arg(long, global = true)]
    monolingual: Option<PathBuf>,
    #[arg(long, global = true)]
    stoplist: Option<PathBuf>,
    #[arg(long, global = true)]
    precision: Option<PathBuf>,
    #[arg(long, global = true)]
    confidence: Option<PathBuf>,
    #[arg(long, global = true)]
    primitives: Option<PathBuf>,
    #[arg(long, global = true)]
    gold_links: Option<PathBuf>,
    #[arg(long, global = true)]
    gold_tags: Option<PathBuf>,
    #[arg(long, global = true)]
    accept_threshold: Option<f64>,
    #[arg(long, global = true)]
    distance_threshold: Option<f64>,
    /// NOISY_OR or VOTE_COUNT.
    #[arg(long, global = true)]
    combiner: Option<String>,
    /// Top-beginner filter, e.g. `F2+(F3>9)`.
    #[arg(long, global = true)]
    filter: Option<String>,
    /// Comma-separated genus heuristics, tried in order.
    #[arg(long, global = true, value_delimiter = ',')]
    heuristics: Option<Vec<String>>,
    #[arg(long, global = true)]
    merge_threshold: Option<f64>,
    #[arg(long, global = true)]
    max_path: Option<usize>,
    #[arg(long, global = true)]
    max_iters: Option<u32>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Fold the bilingual dumps into one target-to-source map.
    MergeBilinguals,
    /// Attach target words to synsets.
    Link,
    /// Tag definitions by conceptual distance.
    SeedTag,
    /// Learn salient words per semantic tag from the seeds.
    TrainSalient,
    /// Label every definition from the salient words.
    Label,
    /// Pick the top genus terms per tag.
    TopBeginners,
    /// Disambiguate genus senses and grow one taxonomy per tag.
    BuildTaxonomy,
    /// Infer new links from taxonomy/skeleton configurations.
    Merge,
    /// Recount the artifacts and evaluate against gold files.
    Report,
    /// Every stage in order.
    Run,
}

impl Command {
    fn stage(self) -> Option<Stage> {
        Some(match self {
            Command::MergeBilinguals => Stage::MergeBilinguals,
            Command::Link => Stage::Link,
            Command::SeedTag => Stage::SeedTag,
            Command::TrainSalient => Stage::TrainSalient,
            Command::Label => Stage::Label,
            Command::TopBeginners => Stage::TopBeginners,
            Command::BuildTaxonomy => Stage::BuildTaxonomy,
            Command::Merge => Stage::Merge,
            Command::Report => Stage::Report,
            Command::Run => return None,
        })
    }
}

fn apply(cfg: &mut RunConfig, cli: Overrides, out: Option<PathBuf>) -> Result<()> {
    let i = &mut cfg.inputs;
    let set = |slot: &mut Option<PathBuf>, v: Option<PathBuf>| {
        if v.is_some() {
            *slot = v;
        }
    };
    set(&mut i.wordnet, cli.wordnet);
    set(&mut i.monolingual, cli.monolingual);
    set(&mut i.stoplist, cli.stoplist);
    set(&mut i.precision, cli.precision);
    set(&mut i.confidence, cli.confidence);
    set(&mut i.primitives, cli.primitives);
    set(&mut i.gold_links, cli.gold_links);
    set(&mut i.gold_tags, cli.gold_tags);
    if !cli.bilinguals.is_empty() {
        i.bilinguals = cli.bilinguals;
    }
    if let Some(o) = out {
        cfg.out = o;
    }
    if let Some(v) = cli.accept_threshold {
        cfg.link.accept_threshold = v;
    }
    if let Some(v) = cli.distance_threshold {
        cfg.link.distance_threshold = v;
    }
    if let Some(c) = cli.combiner {
        cfg.link.combiner = c.parse::<Combiner>().map_err(Error::Config)?;
    }
    if let Some(f) = cli.filter {
        cfg.taxonomy.filter = f;
    }
    if let Some(h) = cli.heuristics {
        cfg.taxonomy.heuristics = h;
    }
    if let Some(v) = cli.merge_threshold {
        cfg.merge.threshold = v;
    }
    if let Some(v) = cli.max_path {
        cfg.merge.max_path = v;
    }
    if let Some(v) = cli.max_iters {
        cfg.merge.max_iters = v;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let mut config = cli.config;
    if let Some(dir) = &cli.seed_fixture {
        let path = fixture::materialize(dir)?;
        println!("seeded demo dataset in {}", dir.display());
        config.get_or_insert(path);
    }
    let Some(command) = cli.command else {
        if cli.seed_fixture.is_some() {
            return Ok(());
        }
        return Err(Error::Config("no subcommand given (try --help)".into()));
    };

    let mut cfg = match &config {
        Some(p) => RunConfig::load(p)?,
        None => {
            let cwd = std::env::current_dir().map_err(|e| Error::io(".", e))?;
            RunConfig::from_toml("", &cwd)?
        }
    };
    apply(&mut cfg, cli.overrides, cli.out)?;

    let summaries = match command.stage() {
        Some(stage) => vec![pipeline::run_stage(stage, &cfg)?],
        None => pipeline::run_all(&cfg)?,
    };
    for s in &summaries {
        println!("{s}");
    }
    if summaries.iter().any(|s| s.stage == Stage::Report.name()) {
        let path = cfg.out.join(pipeline::artifacts::REPORT_TXT);
        print!("{}", std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 3 } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
