//! Command-line front end: `foci synth | fit | rank | eval | sweep`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::data::{build_user_word_matrix, generate_synthetic, io, SyntheticSpec, DEFAULT_MIN_DF};
use crate::error::{ensure, Error, Result};
use crate::eval::{
    baseline_shared_foci, evaluate, load_ego_instance, sweep, EvalReport, FociRanker, QAInstance,
    RandomRanker, SharedFociMode, DEFAULT_ALPHAS, DEFAULT_BETAS,
};
use crate::rank::{rank_answerers, SimilarityMetric};
use crate::solver::{fit, FactorSet, HyperParams};

#[derive(Debug, Parser)]
#[command(name = "foci", version, about = "Rank likely answerers by shared latent foci")]
pub struct Cli {
    /// Print progress to stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a planted-community instance.
    Synth(SynthArgs),
    /// Fit latent factors to a network and content pair.
    Fit(FitArgs),
    /// Rank connections for each question using fitted factors.
    Rank(RankArgs),
    /// Score the model and the baselines on an instance.
    Eval(EvalArgs),
    /// Score the model over a grid of content and network weights.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub communities: usize,
    #[arg(long, default_value_t = 20)]
    pub users_per_community: usize,
    #[arg(long, default_value_t = 0.3)]
    pub p_in: f64,
    #[arg(long, default_value_t = 0.02)]
    pub p_out: f64,
    #[arg(long, default_value_t = 20)]
    pub words_per_topic: usize,
    #[arg(long, default_value_t = 1.5)]
    pub in_topic_rate: f64,
    #[arg(long, default_value_t = 0.05)]
    pub off_topic_rate: f64,
    #[arg(long, default_value_t = 4)]
    pub questions_per_topic: usize,
    #[arg(long, default_value_t = 3)]
    pub words_per_question: usize,
    /// Replace topical content with uniform noise at this per-word rate.
    #[arg(long)]
    pub noise_rate: Option<f64>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

impl SynthArgs {
    pub fn spec(&self) -> SyntheticSpec {
        SyntheticSpec {
            communities: self.communities,
            users_per_community: self.users_per_community,
            p_in: self.p_in,
            p_out: self.p_out,
            words_per_topic: self.words_per_topic,
            in_topic_rate: self.in_topic_rate,
            off_topic_rate: self.off_topic_rate,
            questions_per_topic: self.questions_per_topic,
            words_per_question: self.words_per_question,
            min_df: DEFAULT_MIN_DF,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct HyperArgs {
    /// Weight of the content term.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Weight of the network term.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Regularization weight.
    #[arg(long, default_value_t = 0.01)]
    pub gamma: f64,
    /// Number of latent foci.
    #[arg(long, default_value_t = 50)]
    pub k: usize,
    #[arg(long, default_value_t = 300)]
    pub max_iters: usize,
    /// Relative objective change that counts as converged.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl HyperArgs {
    pub fn params(&self) -> HyperParams {
        HyperParams {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            k: self.k,
            max_iters: self.max_iters,
            tol: self.tol,
            seed: self.seed,
            ..HyperParams::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub network: PathBuf,
    #[arg(long)]
    pub content: PathBuf,
    /// Factor file; the trace goes to `<out>.trace.json`.
    #[arg(long)]
    pub out: PathBuf,
    /// Drop words used by fewer users than this.
    #[arg(long, default_value_t = DEFAULT_MIN_DF)]
    pub min_df: usize,
    #[command(flatten)]
    pub hyper: HyperArgs,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub factors: PathBuf,
    /// Content file the factors were fitted on (rebuilds the vocabulary).
    #[arg(long)]
    pub content: PathBuf,
    #[arg(long)]
    pub questions: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = SimilarityMetric::Euclidean)]
    pub metric: SimilarityMetric,
    #[arg(long, default_value_t = DEFAULT_MIN_DF)]
    pub min_df: usize,
    /// Expected number of foci; checked against the factor file.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub network: PathBuf,
    #[arg(long)]
    pub content: PathBuf,
    #[arg(long)]
    pub questions: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MIN_DF)]
    pub min_df: usize,
}

impl InstanceArgs {
    pub fn load(&self) -> Result<QAInstance> {
        QAInstance::load(&self.network, &self.content, &self.questions, self.min_df)
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub hyper: HyperArgs,
    #[arg(long, default_value_t = SimilarityMetric::Euclidean)]
    pub metric: SimilarityMetric,
    /// Rank cutoff for MAP and NDCG.
    #[arg(long, default_value_t = 5)]
    pub cutoff: usize,
    /// Shuffles averaged by the random baseline.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub hyper: HyperArgs,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ALPHAS)]
    pub alphas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_BETAS)]
    pub betas: Vec<f64>,
    #[arg(long, default_value_t = SimilarityMetric::Euclidean)]
    pub metric: SimilarityMetric,
    #[arg(long, default_value_t = 5)]
    pub cutoff: usize,
    /// Worker threads for grid cells.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> Result<()> {
    let verbose = cli.verbose;
    match &cli.command {
        Command::Synth(a) => cmd_synth(a, verbose),
        Command::Fit(a) => cmd_fit(a, verbose),
        Command::Rank(a) => cmd_rank(a, verbose),
        Command::Eval(a) => cmd_eval(a, verbose),
        Command::Sweep(a) => cmd_sweep(a, verbose),
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    spec: &'a SyntheticSpec,
    seed: u64,
    noise_rate: Option<f64>,
    users: usize,
    edges: usize,
    words: usize,
    questions: usize,
    files: [&'static str; 3],
}

pub const NETWORK_FILE: &str = "network.tsv";
pub const CONTENT_FILE: &str = "content.tsv";
pub const QUESTIONS_FILE: &str = "questions.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";

pub fn cmd_synth(args: &SynthArgs, verbose: u8) -> Result<()> {
    let spec = args.spec();
    let mut inst = generate_synthetic(&spec)?;
    if let Some(rate) = args.noise_rate {
        inst = inst.with_uniform_content(rate, spec.seed.wrapping_add(100))?;
    }
    std::fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    io::write_edges(&args.out.join(NETWORK_FILE), &inst.network)?;
    io::write_content(&args.out.join(CONTENT_FILE), &inst.counts)?;
    io::write_questions(&args.out.join(QUESTIONS_FILE), &inst.questions)?;
    let manifest = Manifest {
        spec: &spec,
        seed: spec.seed,
        noise_rate: args.noise_rate,
        users: spec.num_users(),
        edges: inst.network.num_edges(),
        words: inst.vocab.len(),
        questions: inst.questions.len(),
        files: [NETWORK_FILE, CONTENT_FILE, QUESTIONS_FILE],
    };
    write_json(Some(&args.out.join(MANIFEST_FILE)), &manifest)?;
    if verbose > 0 {
        eprintln!(
            "synth: {} users, {} edges, {} questions -> {}",
            manifest.users,
            manifest.edges,
            manifest.questions,
            args.out.display()
        );
    }
    Ok(())
}

/// Path of the JSON trace written next to a factor file.
pub fn trace_path(factors: &Path) -> PathBuf {
    let mut name = factors.as_os_str().to_owned();
    name.push(".trace.json");
    PathBuf::from(name)
}

pub fn cmd_fit(args: &FitArgs, verbose: u8) -> Result<()> {
    let (network, content, vocab) = load_ego_instance(&args.network, &args.content, args.min_df)?;
    let h = args.hyper.params();
    if verbose > 0 {
        eprintln!(
            "fit: {} users, {} words, {} edges, k={}",
            network.size(),
            vocab.len(),
            network.num_edges(),
            h.k
        );
    }
    let (factors, trace) = fit(&content, &network, &h, None)?;
    factors.save(&args.out)?;
    write_json(Some(&trace_path(&args.out)), &trace)?;
    if verbose > 0 {
        eprintln!(
            "fit: {:?} after {} iterations, objective {}",
            trace.stop_reason,
            trace.iterations,
            trace.objective.last().copied().unwrap_or(f64::NAN)
        );
    }
    Ok(())
}

pub fn cmd_rank(args: &RankArgs, _verbose: u8) -> Result<()> {
    let factors = FactorSet::load(&args.factors)?;
    if let Some(k) = args.k {
        ensure!(
            k == factors.k(),
            Input,
            "{} has k={} but --k {} was given",
            args.factors.display(),
            factors.k(),
            k
        );
    }
    let counts = io::read_content(&args.content)?;
    let (_, vocab) = build_user_word_matrix(factors.num_users(), &counts, args.min_df)?;
    ensure!(
        vocab.len() == factors.num_words(),
        Input,
        "{} has {} words but the vocabulary from {} has {}",
        args.factors.display(),
        factors.num_words(),
        args.content.display(),
        vocab.len()
    );
    let questions = io::read_questions(&args.questions)?;

    let mut out = String::new();
    for q in &questions {
        match rank_answerers(q, &factors, &vocab, args.metric) {
            Ok(list) => {
                out.push_str(&format!("# question {}\n", q.id));
                out.push_str(&list.to_tsv());
            }
            Err(Error::OutOfVocabulary) => {
                eprintln!("warning: question {:?} skipped: no word is in the vocabulary", q.id);
            }
            Err(e) => return Err(e),
        }
    }
    write_output(args.out.as_deref(), out.as_bytes())
}

pub fn cmd_eval(args: &EvalArgs, verbose: u8) -> Result<()> {
    let instance = args.instance.load()?;
    let h = args.hyper.params();
    let (factors, _) = fit(&instance.content, &instance.network, &h, None)?;
    let model = FociRanker {
        factors: &factors,
        vocab: &instance.vocab,
        metric: args.metric,
    };
    let random = RandomRanker {
        m: instance.num_connections(),
        trials: args.trials,
        seed: h.seed,
    };
    let network = baseline_shared_foci(&instance, SharedFociMode::Network, &h, args.metric)?;
    let content = baseline_shared_foci(&instance, SharedFociMode::Content, &h, args.metric)?;

    let reports: Vec<EvalReport> = vec![
        evaluate(&format!("foci-{}", args.metric), &instance, &model, args.cutoff)?,
        evaluate("random", &instance, &random, args.cutoff)?,
        evaluate(&format!("shared-foci-network-{}", args.metric), &instance, &network, args.cutoff)?,
        evaluate(&format!("shared-foci-content-{}", args.metric), &instance, &content, args.cutoff)?,
    ];
    if verbose > 0 {
        for r in &reports {
            eprintln!("eval: {:<32} mrr {:.4} map@{} {:.4}", r.method, r.mrr, r.k_cutoff, r.map_at_k);
        }
    }
    write_json(args.out.as_deref(), &reports)
}

pub fn cmd_sweep(args: &SweepArgs, verbose: u8) -> Result<()> {
    let instance = args.instance.load()?;
    let grid = sweep(
        &instance,
        &args.alphas,
        &args.betas,
        &args.hyper.params(),
        args.metric,
        args.cutoff,
        args.jobs,
    )?;
    if verbose > 0 {
        let failed = grid.cells.iter().filter(|c| c.error.is_some()).count();
        eprintln!("sweep: {} cells, {} failed", grid.cells.len(), failed);
    }
    write_json(args.out.as_deref(), &grid)
}

fn write_json<T: Serialize + ?Sized>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Input(format!("cannot serialize output: {e}")))?;
    text.push('\n');
    write_output(path, text.as_bytes())
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => io::write_with(p, |w| w.write_all(bytes)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}
