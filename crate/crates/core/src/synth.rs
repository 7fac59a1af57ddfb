//! Synthetic bitexts with a known word-to-word translation map.
//!
//! Source words follow a Zipf-like distribution. Each sentence is translated
//! word for word, with occasional adjacent swaps, and a fraction of target
//! tokens is replaced by random target words. Some translations are spelled
//! like their source word (cognates), and an oracle dictionary covers a
//! random subset of the vocabulary.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cognate::{lcsr, DEFAULT_LCSR_CUTOFF};
use crate::corpus::{Bitext, OracleList, SentencePair};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub pairs: usize,
    pub source_types: usize,
    /// Probability that a target token is replaced by a random target word.
    pub noise: f64,
    /// Fraction of types whose translation is spelled like the source word.
    pub cognate_fraction: f64,
    /// Fraction of types listed in the oracle dictionary.
    pub oracle_fraction: f64,
    pub min_len: usize,
    pub max_len: usize,
    /// Probability of swapping a target token with its right neighbour.
    pub swap_rate: f64,
    pub zipf_exponent: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            pairs: 600,
            source_types: 600,
            noise: 0.2,
            cognate_fraction: 0.25,
            oracle_fraction: 0.45,
            min_len: 4,
            max_len: 12,
            swap_rate: 0.1,
            zipf_exponent: 1.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub bitext: Bitext,
    pub oracle: OracleList,
    /// Ground-truth translation of every source type.
    pub truth: BTreeMap<String, String>,
    /// Source types whose translation is a cognate.
    pub cognates: BTreeSet<String>,
}

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

fn random_word(rng: &mut impl Rng, min: usize, max: usize) -> String {
    let len = rng.random_range(min..=max);
    (0..len)
        .map(|_| LETTERS[rng.random_range(0..LETTERS.len())] as char)
        .collect()
}

/// One or two character edits, kept only if the result stays above the
/// cognate cutoff.
fn cognate_of(rng: &mut impl Rng, word: &str) -> String {
    loop {
        let mut chars: Vec<char> = word.chars().collect();
        let edits = if chars.len() > 5 { 2 } else { 1 };
        for _ in 0..edits {
            let i = rng.random_range(0..chars.len());
            let c = LETTERS[rng.random_range(0..LETTERS.len())] as char;
            match rng.random_range(0..3) {
                0 => chars[i] = c,
                1 => chars.insert(i, c),
                _ if chars.len() > 3 => {
                    chars.remove(i);
                }
                _ => chars[i] = c,
            }
        }
        let candidate: String = chars.into_iter().collect();
        if lcsr(word, &candidate).unwrap_or(0.0) >= DEFAULT_LCSR_CUTOFF {
            return candidate;
        }
    }
}

pub fn generate(config: &SyntheticConfig) -> Result<SyntheticCorpus> {
    if config.source_types == 0 || config.min_len == 0 || config.min_len > config.max_len {
        return Err(Error::Config("invalid synthetic corpus shape".into()));
    }
    for p in [
        config.noise,
        config.cognate_fraction,
        config.oracle_fraction,
        config.swap_rate,
    ] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!("probability {p} outside [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut used = HashSet::new();
    let mut sources = Vec::with_capacity(config.source_types);
    while sources.len() < config.source_types {
        let w = random_word(&mut rng, 4, 9);
        if used.insert(w.clone()) {
            sources.push(w);
        }
    }

    let mut order: Vec<usize> = (0..config.source_types).collect();
    order.shuffle(&mut rng);
    let cognate_count = (config.cognate_fraction * config.source_types as f64).ceil() as usize;
    let cognate_idx: HashSet<usize> = order[..cognate_count.min(order.len())].iter().copied().collect();

    let mut targets = Vec::with_capacity(config.source_types);
    let mut cognates = BTreeSet::new();
    for (i, s) in sources.iter().enumerate() {
        let t = loop {
            let t = if cognate_idx.contains(&i) {
                cognate_of(&mut rng, s)
            } else {
                let t = random_word(&mut rng, 4, 9);
                if lcsr(s, &t).unwrap_or(0.0) >= DEFAULT_LCSR_CUTOFF {
                    continue;
                }
                t
            };
            if used.insert(t.clone()) {
                break t;
            }
        };
        if cognate_idx.contains(&i) {
            cognates.insert(s.clone());
        }
        targets.push(t);
    }

    order.shuffle(&mut rng);
    let oracle_count = (config.oracle_fraction * config.source_types as f64).ceil() as usize;
    let oracle: OracleList = order[..oracle_count.min(order.len())]
        .iter()
        .map(|&i| (sources[i].clone(), targets[i].clone()))
        .collect();

    let weights: Vec<f64> = (0..config.source_types)
        .map(|r| 1.0 / ((r + 1) as f64).powf(config.zipf_exponent))
        .collect();
    let zipf = WeightedIndex::new(&weights).expect("weights are positive");

    let mut pairs = Vec::with_capacity(config.pairs);
    for id in 0..config.pairs {
        let len = rng.random_range(config.min_len..=config.max_len);
        let words: Vec<usize> = (0..len).map(|_| zipf.sample(&mut rng)).collect();
        let mut out: Vec<usize> = words.clone();
        let mut i = 0;
        while i + 1 < out.len() {
            if rng.random_bool(config.swap_rate) {
                out.swap(i, i + 1);
                i += 2;
            } else {
                i += 1;
            }
        }
        let target: Vec<&str> = out
            .iter()
            .map(|&w| {
                if rng.random_bool(config.noise) {
                    targets[zipf.sample(&mut rng)].as_str()
                } else {
                    targets[w].as_str()
                }
            })
            .collect();
        let source: Vec<&str> = words.iter().map(|&w| sources[w].as_str()).collect();
        pairs.push(SentencePair::from_words(id, &source, &target)?);
    }

    Ok(SyntheticCorpus {
        bitext: Bitext::from_pairs(pairs)?,
        oracle,
        truth: sources.into_iter().zip(targets).collect(),
        cognates,
    })
}
