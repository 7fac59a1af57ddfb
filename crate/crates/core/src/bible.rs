//! Bitext-based lexicon evaluation (BiBLE).
//!
//! A lexicon is scored by how often a source word's top-k translations show
//! up in the aligned target sentence of a held-out bitext. Per-word hit rates
//! are averaged by type, so rare and frequent words weigh the same.
//!
//! In precision mode only lexicon headwords are counted. In percent-correct
//! mode every source token counts, and words absent from the lexicon
//! contribute zero hits.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::corpus::{Bitext, SentencePair};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::scoring::NBestLexicon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Precision,
    PercentCorrect,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Precision => "precision",
            Mode::PercentCorrect => "percent-correct",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "precision" => Ok(Mode::Precision),
            "percent-correct" | "percent_correct" => Ok(Mode::PercentCorrect),
            other => Err(Error::Config(format!(
                "unknown evaluation mode `{other}` (expected precision or percent-correct)"
            ))),
        }
    }
}

/// Cumulative hit rates of one lexicon on one test bitext.
#[derive(Debug, Clone, PartialEq)]
pub struct BibleReport {
    pub mode: Mode,
    pub n: usize,
    /// Entry `k-1` is the k-th cumulative hit rate.
    pub cumulative_hit_rate: Vec<f64>,
    /// Source types the rates are averaged over.
    pub evaluated_types: usize,
    /// Fraction of test source tokens that are lexicon headwords.
    pub recall: f64,
    /// Fraction of test source types that are lexicon headwords.
    pub recall_by_type: f64,
    pub source_tokens: u64,
    pub lexicon_tokens: u64,
    pub source_types: usize,
    pub lexicon_types: usize,
}

impl BibleReport {
    /// The k-th cumulative hit rate, 1-based.
    pub fn at(&self, k: usize) -> f64 {
        self.cumulative_hit_rate[k - 1]
    }

    /// Serializes as a TSV table of `k<TAB>cumulative_hit_rate` rows
    /// followed by key-value summary lines.
    pub fn to_tsv(&self, header: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in header {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str("k\tcumulative_hit_rate\n");
        for (k, rate) in self.cumulative_hit_rate.iter().enumerate() {
            let _ = writeln!(out, "{}\t{rate}", k + 1);
        }
        let _ = writeln!(out, "recall\t{}", self.recall);
        let _ = writeln!(out, "recall_by_type\t{}", self.recall_by_type);
        let _ = writeln!(out, "evaluated_types\t{}", self.evaluated_types);
        let _ = writeln!(out, "mode\t{}", self.mode);
        out
    }
}

/// Per-worker counts; merged by addition.
#[derive(Default)]
struct Tally<'a> {
    frq: HashMap<&'a str, u64>,
    /// `hits[S][k-1]`: occurrences of S first hit at rank k.
    hits: HashMap<&'a str, Vec<u64>>,
    source_tokens: u64,
    lexicon_tokens: u64,
}

impl<'a> Tally<'a> {
    fn add_pair(mut self, pair: &'a SentencePair, lexicon: &NBestLexicon, mode: Mode) -> Self {
        let mut target: Vec<Option<&str>> =
            pair.target().iter().map(|t| Some(t.surface.as_str())).collect();
        for tok in pair.source() {
            let s = tok.surface.as_str();
            self.source_tokens += 1;
            let ranked = lexicon.translations(s);
            if ranked.is_some() {
                self.lexicon_tokens += 1;
            }
            if mode == Mode::PercentCorrect {
                *self.frq.entry(s).or_insert(0) += 1;
            }
            let Some(ranked) = ranked else { continue };
            if mode == Mode::Precision {
                *self.frq.entry(s).or_insert(0) += 1;
            }
            for (k, e) in ranked.iter().enumerate().take(lexicon.n_max()) {
                if let Some(slot) = target.iter_mut().find(|t| **t == Some(e.target.as_str())) {
                    *slot = None;
                    self.hits
                        .entry(s)
                        .or_insert_with(|| vec![0; lexicon.n_max()])[k] += 1;
                    break;
                }
            }
        }
        self
    }

    fn merge(mut self, other: Tally<'a>) -> Self {
        for (s, n) in other.frq {
            *self.frq.entry(s).or_insert(0) += n;
        }
        for (s, v) in other.hits {
            match self.hits.get_mut(s) {
                Some(mine) => mine.iter_mut().zip(v).for_each(|(a, b)| *a += b),
                None => {
                    self.hits.insert(s, v);
                }
            }
        }
        self.source_tokens += other.source_tokens;
        self.lexicon_tokens += other.lexicon_tokens;
        self
    }
}

/// Scores a lexicon against a held-out bitext.
pub fn evaluate(lexicon: &NBestLexicon, test: &Bitext, mode: Mode) -> Result<BibleReport> {
    evaluate_with(lexicon, test, mode, Execution::default())
}

pub fn evaluate_with(
    lexicon: &NBestLexicon,
    test: &Bitext,
    mode: Mode,
    exec: Execution,
) -> Result<BibleReport> {
    let n = lexicon.n_max();
    if n == 0 {
        return Err(Error::Config("lexicon has N = 0".into()));
    }
    let tally = par::fold_reduce(
        test.pairs(),
        exec,
        Tally::default,
        |t, pair| t.add_pair(pair, lexicon, mode),
        Tally::merge,
    );

    // Sorted so that float accumulation order is fixed.
    let frq: BTreeMap<&str, u64> = tally.frq.into_iter().collect();
    let mut hit_rate = vec![0.0; n];
    for (s, &f) in &frq {
        if let Some(hits) = tally.hits.get(s) {
            for (rate, &h) in hit_rate.iter_mut().zip(hits) {
                *rate += h as f64 / f as f64;
            }
        }
    }
    let evaluated_types = frq.len();
    let mut cumulative_hit_rate = Vec::with_capacity(n);
    let mut running = 0.0;
    for rate in hit_rate {
        if evaluated_types > 0 {
            running += rate / evaluated_types as f64;
        }
        cumulative_hit_rate.push(running);
    }

    let source_types = test.source_vocab().len();
    let lexicon_types = test
        .source_vocab()
        .iter()
        .filter(|(w, _)| lexicon.contains(w))
        .count();
    let ratio = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
    Ok(BibleReport {
        mode,
        n,
        cumulative_hit_rate,
        evaluated_types,
        recall: ratio(tally.lexicon_tokens as f64, tally.source_tokens as f64),
        recall_by_type: ratio(lexicon_types as f64, source_types as f64),
        source_tokens: tally.source_tokens,
        lexicon_tokens: tally.lexicon_tokens,
        source_types,
        lexicon_types,
    })
}

/// Mean and 95% confidence-interval half-width of repeated scores, assuming
/// normally distributed scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub mean: f64,
    pub ci95_half_width: f64,
}

pub fn aggregate_runs(scores: &[f64]) -> Result<RunSummary> {
    if scores.len() < 2 {
        return Err(Error::SampleSize(scores.len()));
    }
    let n = scores.len() as f64;
    let mean = scores.iter().sum::<f64>() / n;
    let var = scores.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(RunSummary {
        mean,
        ci95_half_width: 1.96 * var.sqrt() / n.sqrt(),
    })
}
