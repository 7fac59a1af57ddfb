//! Cascaded back-off translation.
//!
//! Lexicons are ordered by precision measured on a development bitext. Each
//! source word is translated by the rank-1 entry of the first lexicon that
//! knows it, falling back down the chain.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::bible::{evaluate_with, Mode};
use crate::corpus::{Bitext, SentencePair};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::scoring::NBestLexicon;

#[derive(Debug, Clone)]
pub struct ChainLink {
    pub label: String,
    pub lexicon: NBestLexicon,
    pub precision: f64,
}

/// Lexicons in non-increasing order of measured precision.
#[derive(Debug, Clone)]
pub struct BackoffChain {
    links: Vec<ChainLink>,
}

impl BackoffChain {
    pub fn new(links: Vec<ChainLink>) -> Result<Self> {
        if links.is_empty() {
            return Err(Error::Config("back-off chain needs at least one lexicon".into()));
        }
        if links.windows(2).any(|w| w[1].precision > w[0].precision) {
            return Err(Error::Contract(
                "back-off chain precisions must be non-increasing".into(),
            ));
        }
        Ok(BackoffChain { links })
    }

    pub fn links(&self) -> &[ChainLink] {
        &self.links
    }

    /// Rank-1 translation from the first lexicon containing `word`; `None`
    /// when no lexicon knows it.
    pub fn translate_word(&self, word: &str) -> Option<&str> {
        self.links.iter().find_map(|l| l.lexicon.best(word))
    }

    /// A chain holding only the lowest-precision lexicon.
    pub fn last_only(&self) -> BackoffChain {
        BackoffChain {
            links: vec![self.links.last().cloned().expect("chain is non-empty")],
        }
    }
}

/// Orders lexicons by 1-best BiBLE precision on `dev`, descending; ties go
/// by label bytes.
pub fn order_chain(lexicons: Vec<(String, NBestLexicon)>, dev: &Bitext) -> Result<BackoffChain> {
    order_chain_with(lexicons, dev, Execution::default())
}

pub fn order_chain_with(
    lexicons: Vec<(String, NBestLexicon)>,
    dev: &Bitext,
    exec: Execution,
) -> Result<BackoffChain> {
    if dev.is_empty() {
        return Err(Error::Config("development bitext is empty".into()));
    }
    let mut links = lexicons
        .into_iter()
        .map(|(label, lexicon)| {
            let precision = evaluate_with(&lexicon, dev, Mode::Precision, exec)?.at(1);
            Ok(ChainLink {
                label,
                lexicon,
                precision,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    links.sort_by(|x, y| {
        y.precision
            .total_cmp(&x.precision)
            .then_with(|| x.label.as_bytes().cmp(y.label.as_bytes()))
    });
    BackoffChain::new(links)
}

/// Token counts of a back-off translation run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TokenScore {
    pub total: u64,
    pub translated: u64,
    pub correct: u64,
}

impl TokenScore {
    pub fn percent_correct(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }

    fn merge(self, o: TokenScore) -> TokenScore {
        TokenScore {
            total: self.total + o.total,
            translated: self.translated + o.translated,
            correct: self.correct + o.correct,
        }
    }
}

/// Back-off translations of each source token of a pair.
pub fn translate_pair<'c>(chain: &'c BackoffChain, pair: &SentencePair) -> Vec<Option<&'c str>> {
    pair.source()
        .iter()
        .map(|t| chain.translate_word(&t.surface))
        .collect()
}

fn score_pair(chain: &BackoffChain, pair: &SentencePair) -> TokenScore {
    let mut target: Vec<Option<&str>> =
        pair.target().iter().map(|t| Some(t.surface.as_str())).collect();
    let mut score = TokenScore::default();
    for tr in translate_pair(chain, pair) {
        score.total += 1;
        let Some(tr) = tr else { continue };
        score.translated += 1;
        if let Some(slot) = target.iter_mut().find(|t| **t == Some(tr)) {
            *slot = None;
            score.correct += 1;
        }
    }
    score
}

/// Percent correct by token: a translation is correct when it matches a
/// not-yet-consumed target token (leftmost first).
pub fn score_corpus(chain: &BackoffChain, test: &Bitext) -> Result<TokenScore> {
    score_corpus_with(chain, test, Execution::default())
}

pub fn score_corpus_with(chain: &BackoffChain, test: &Bitext, exec: Execution) -> Result<TokenScore> {
    if test.is_empty() {
        return Err(Error::Config("test bitext is empty".into()));
    }
    Ok(par::fold_reduce(
        test.pairs(),
        exec,
        TokenScore::default,
        |acc, pair| acc.merge(score_pair(chain, pair)),
        TokenScore::merge,
    ))
}

pub const UNKNOWN: &str = "<UNKNOWN>";

/// Translation output: `source<TAB>translation` per token, one blank line
/// after each sentence.
pub fn translations_to_tsv(chain: &BackoffChain, test: &Bitext, exec: Execution) -> String {
    let sentences = par::map(test.pairs(), exec, |pair| {
        let mut out = String::new();
        for (tok, tr) in pair.source().iter().zip(translate_pair(chain, pair)) {
            let _ = writeln!(out, "{}\t{}", tok.surface, tr.unwrap_or(UNKNOWN));
        }
        out.push('\n');
        out
    });
    sentences.concat()
}

/// Reads a chain spec: `label<TAB>lexicon-path` per line. Relative paths are
/// resolved against the spec file's directory.
pub fn load_chain_spec(path: impl AsRef<Path>) -> Result<Vec<(String, PathBuf)>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new(""));
    let entries = parse_chain_spec(&text)?;
    Ok(entries
        .into_iter()
        .map(|(label, p)| {
            let p = if p.is_relative() { base.join(p) } else { p };
            (label, p)
        })
        .collect())
}

pub fn parse_chain_spec(text: &str) -> Result<Vec<(String, PathBuf)>> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split('\t').collect::<Vec<_>>().as_slice() {
            [label, path] if !label.is_empty() && !path.is_empty() => {
                entries.push((label.to_string(), PathBuf::from(path)));
            }
            _ => {
                return Err(Error::Format {
                    line: i + 1,
                    reason: "expected `label<TAB>lexicon-path`".into(),
                })
            }
        }
    }
    if entries.is_empty() {
        return Err(Error::Config("chain spec lists no lexicons".into()));
    }
    let mut labels: Vec<&str> = entries.iter().map(|(l, _)| l.as_str()).collect();
    labels.sort_unstable();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Config("chain spec repeats a label".into()));
    }
    Ok(entries)
}
