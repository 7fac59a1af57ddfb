//! Co-occurrence statistics, G² ranking and N-best lexicon assembly.

mod g2;
mod lexicon;

use std::collections::{BTreeMap, HashMap};

pub use g2::{g2, signed_g2, ContingencyTable};
pub use lexicon::{build_lexicon, LexiconEntry, NBestLexicon};

use crate::corpus::Bitext;
use crate::error::{Error, Result};
use crate::filters::CandidatePair;
use crate::par::{self, Execution};

/// Contingency tables keyed by (source word, target word).
pub type CooccurrenceTables<'a> = BTreeMap<(&'a str, &'a str), ContingencyTable>;

/// Number of sentence pairs in which each (S, T) pairing survived filtering.
pub type JointCounts<'a> = HashMap<(&'a str, &'a str), u64>;

/// Distinct word pairings among one sentence pair's surviving candidates.
pub fn distinct_pairings<'a>(candidates: &[CandidatePair<'a>]) -> Vec<(&'a str, &'a str)> {
    let mut pairings: Vec<_> = candidates
        .iter()
        .map(|c| (c.source_word, c.target_word))
        .collect();
    pairings.sort_unstable();
    pairings.dedup();
    pairings
}

/// Adds one sentence pair's surviving candidates to the joint counts.
pub fn add_pair_counts<'a>(joint: &mut JointCounts<'a>, candidates: &[CandidatePair<'a>]) {
    for key in distinct_pairings(candidates) {
        *joint.entry(key).or_insert(0) += 1;
    }
}

/// Merges two partial joint counts. Commutative and associative.
pub fn merge_joint_counts<'a>(mut into: JointCounts<'a>, from: JointCounts<'a>) -> JointCounts<'a> {
    if into.len() < from.len() {
        return merge_joint_counts(from, into);
    }
    for (key, n) in from {
        *into.entry(key).or_insert(0) += n;
    }
    into
}

/// For every key of `joint`, the number of pairs containing both words,
/// whether or not the pairing survived filtering.
pub fn copresence_counts<'a>(
    joint: &JointCounts<'a>,
    corpus: &'a Bitext,
    exec: Execution,
) -> JointCounts<'a> {
    par::fold_reduce(
        corpus.pairs(),
        exec,
        JointCounts::new,
        |mut acc, pair| {
            let types = |tokens: &'a [crate::Token]| {
                let mut v: Vec<&'a str> = tokens.iter().map(|t| t.surface.as_str()).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let targets = types(pair.target());
            for s in types(pair.source()) {
                for &t in &targets {
                    if joint.contains_key(&(s, t)) {
                        *acc.entry((s, t)).or_insert(0) += 1;
                    }
                }
            }
            acc
        },
        merge_joint_counts,
    )
}

/// Completes joint counts into contingency tables. Margins come from the
/// unfiltered corpus.
///
/// `a` is the joint count, `b` and `c` the remaining pairs holding S or T,
/// and `d` the pairs holding neither. A pair in which both words occur but
/// the pairing was filtered out counts toward both `b` and `c`, so the cells
/// sum to the corpus size plus the number of such pairs. `copresence` gives
/// the raw co-occurrence of each key; `None` means nothing was filtered.
pub fn tables_from_joint<'a>(
    joint: &JointCounts<'a>,
    copresence: Option<&JointCounts<'a>>,
    corpus: &Bitext,
) -> Result<CooccurrenceTables<'a>> {
    let total = corpus.len() as u64;
    let mut tables = BTreeMap::new();
    for (&(s, t), &a) in joint {
        let with_s = corpus.source_vocab().document_frequency(s) as u64;
        let with_t = corpus.target_vocab().document_frequency(t) as u64;
        let both = copresence.map_or(a, |c| c.get(&(s, t)).copied().unwrap_or(0));
        if a > both || both > with_s.min(with_t) || with_s + with_t - both > total {
            return Err(Error::Contract(format!(
                "joint count {a} for ({s}, {t}) is inconsistent with corpus frequencies"
            )));
        }
        let d = total - (with_s + with_t - both);
        tables.insert((s, t), ContingencyTable::new(a, with_s - a, with_t - a, d));
    }
    Ok(tables)
}

/// Builds contingency tables from the filtered candidates of a corpus.
///
/// `a` counts the pairs in which at least one candidate (S, T) survived.
pub fn count_cooccurrences<'a>(
    candidates: &[CandidatePair<'a>],
    corpus: &'a Bitext,
) -> Result<CooccurrenceTables<'a>> {
    let mut by_pair: BTreeMap<usize, Vec<CandidatePair<'a>>> = BTreeMap::new();
    for c in candidates {
        let Some(pair) = corpus.pair(c.pair_id) else {
            return Err(Error::UnknownPairId(c.pair_id));
        };
        if c.source_pos >= pair.source().len() || c.target_pos >= pair.target().len() {
            return Err(Error::Contract(format!(
                "candidate position ({}, {}) outside sentence pair {}",
                c.source_pos, c.target_pos, c.pair_id
            )));
        }
        by_pair.entry(c.pair_id).or_default().push(*c);
    }
    let mut joint = JointCounts::new();
    for cands in by_pair.values() {
        add_pair_counts(&mut joint, cands);
    }
    let both = copresence_counts(&joint, corpus, Execution::Sequential);
    tables_from_joint(&joint, Some(&both), corpus)
}
