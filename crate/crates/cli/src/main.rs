//! `lexcascade` command-line tool.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lexcascade::cognate::{DEFAULT_LCSR_CUTOFF, DEFAULT_MIN_ALPHA_LEN};
use lexcascade::pipeline::{DEFAULT_MAX_LEN, DEFAULT_N};
use lexcascade::ErrorKind;

#[derive(Parser, Debug)]
#[command(name = "lexcascade", version, about = "Translation lexicon induction with filter cascades")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Induce an N-best lexicon from a sentence-aligned bitext.
    Induce(InduceArgs),
    /// Score a lexicon against a held-out bitext.
    Evaluate(EvaluateArgs),
    /// Translate a bitext word by word with a back-off chain of lexicons.
    Translate(TranslateArgs),
    /// List cognate loci with their LCSR values.
    Cognates(CognatesArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CorpusArgs {
    /// Tokens carry `surface/TAG` annotations.
    #[arg(long)]
    pub tagged: bool,
    /// Lowercase every token before building vocabularies.
    #[arg(long)]
    pub lowercase: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Worker threads; 1 runs sequentially. Defaults to all cores.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct LcsrArgs {
    #[arg(long, default_value_t = DEFAULT_LCSR_CUTOFF)]
    pub lcsr_cutoff: f64,
    #[arg(long, default_value_t = DEFAULT_MIN_ALPHA_LEN)]
    pub min_alpha_len: usize,
}

#[derive(Args, Debug, Clone)]
pub struct InduceArgs {
    pub source: PathBuf,
    pub target: PathBuf,
    /// Comma-separated cascade from pos, mrbd, cognate, align; empty for none.
    #[arg(long, default_value = "")]
    pub filters: String,
    #[arg(long, default_value_t = DEFAULT_N)]
    pub n: usize,
    #[command(flatten)]
    pub lcsr: LcsrArgs,
    /// Longest sentence (in tokens, either side) used for training.
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    pub max_len: usize,
    #[arg(long, default_value_t = 1)]
    pub min_cooccurrence: u64,
    /// Seed for the holdout split.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Pairs withheld from training (chosen by seeded permutation).
    #[arg(long, default_value_t = 0)]
    pub holdout: usize,
    /// Write the withheld pairs to `PREFIX.src` and `PREFIX.tgt`.
    #[arg(long, value_name = "PREFIX")]
    pub holdout_prefix: Option<PathBuf>,
    /// Oracle dictionary TSV (`source<TAB>target`).
    #[arg(long)]
    pub oracle: Option<PathBuf>,
    /// Tag map file, or `builtin` for the shipped table.
    #[arg(long)]
    pub tag_map: Option<String>,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct EvaluateArgs {
    pub lexicon: PathBuf,
    pub source: PathBuf,
    pub target: PathBuf,
    /// `precision` or `percent-correct`.
    #[arg(long, default_value = "precision")]
    pub mode: String,
    /// Number of disjoint test splits to report separately.
    #[arg(long, default_value_t = 1)]
    pub splits: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct TranslateArgs {
    /// Chain spec: `label<TAB>lexicon-path` per line.
    pub chain: PathBuf,
    pub dev_source: PathBuf,
    pub dev_target: PathBuf,
    pub test_source: PathBuf,
    pub test_target: PathBuf,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CognatesArgs {
    pub source: PathBuf,
    pub target: PathBuf,
    #[command(flatten)]
    pub lcsr: LcsrArgs,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Io => 1,
        ErrorKind::Config => 3,
        ErrorKind::Format => 4,
        ErrorKind::Contract => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Induce(a) => commands::induce(&a),
        Command::Evaluate(a) => commands::evaluate(&a),
        Command::Translate(a) => commands::translate(&a),
        Command::Cognates(a) => commands::cognates(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
