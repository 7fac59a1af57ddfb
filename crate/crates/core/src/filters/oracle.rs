use std::collections::{BTreeMap, BTreeSet};

use super::CandidatePair;
use crate::cognate::{is_cognate, LcsrParams};
use crate::corpus::{OracleList, SentencePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocusKind {
    Cognate,
    Dictionary,
}

/// A trusted (source position, target position) match within one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Locus {
    pub source_pos: usize,
    pub target_pos: usize,
    pub kind: LocusKind,
}

impl Locus {
    pub fn new(source_pos: usize, target_pos: usize, kind: LocusKind) -> Self {
        Locus {
            source_pos,
            target_pos,
            kind,
        }
    }

    pub fn positions(&self) -> (usize, usize) {
        (self.source_pos, self.target_pos)
    }
}

/// Every position pair whose surfaces are listed in the oracle.
pub fn oracle_matches(pair: &SentencePair, oracle: &OracleList) -> BTreeSet<Locus> {
    let mut loci = BTreeSet::new();
    if oracle.is_empty() {
        return loci;
    }
    for s in pair.source() {
        let Some(targets) = oracle.targets_of(&s.surface) else {
            continue;
        };
        for t in pair.target() {
            if targets.contains(&t.surface) {
                loci.insert(Locus::new(s.position, t.position, LocusKind::Dictionary));
            }
        }
    }
    loci
}

/// Every position pair whose tokens pass the cognate test.
pub fn cognate_matches(pair: &SentencePair, params: &LcsrParams) -> BTreeSet<Locus> {
    let mut loci = BTreeSet::new();
    for s in pair.source() {
        for t in pair.target() {
            if is_cognate(s, t, params) {
                loci.insert(Locus::new(s.position, t.position, LocusKind::Cognate));
            }
        }
    }
    loci
}

/// Removes competing pairings of matched words.
///
/// A source position taking part in some locus keeps only candidates to its
/// locus partners; likewise for target positions. Candidates between two
/// unmatched positions pass.
pub fn oracle_filter<'a>(
    candidates: Vec<CandidatePair<'a>>,
    matches: &BTreeSet<Locus>,
) -> Vec<CandidatePair<'a>> {
    if matches.is_empty() {
        return candidates;
    }
    let mut source_partners: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut target_partners: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for l in matches {
        source_partners
            .entry(l.source_pos)
            .or_default()
            .insert(l.target_pos);
        target_partners
            .entry(l.target_pos)
            .or_default()
            .insert(l.source_pos);
    }
    candidates
        .into_iter()
        .filter(|c| {
            let source_ok = source_partners
                .get(&c.source_pos)
                .is_none_or(|ts| ts.contains(&c.target_pos));
            let target_ok = target_partners
                .get(&c.target_pos)
                .is_none_or(|ss| ss.contains(&c.source_pos));
            source_ok && target_ok
        })
        .collect()
}
