//! Candidate generation and the uniform filter cascade.
//!
//! Every sentence pair contributes the cross-product of its words as
//! candidate translation pairs. Filters only ever remove candidates, so any
//! subset of them can be chained in any order.

mod align;
mod oracle;
mod tags;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use align::{alignment_filter, respects_loci, select_loci};
pub use oracle::{cognate_matches, oracle_filter, oracle_matches, Locus, LocusKind};
pub use tags::TagMatchTable;

use crate::cognate::LcsrParams;
use crate::corpus::{OracleList, SentencePair};
use crate::error::{Error, Result};

/// A (source word, target word) hypothesis from one sentence pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidatePair<'a> {
    pub source_word: &'a str,
    pub target_word: &'a str,
    pub source_pos: usize,
    pub target_pos: usize,
    pub pair_id: usize,
}

/// The full cross-product of a sentence pair, in source-major order.
pub fn generate_candidates(pair: &SentencePair) -> Vec<CandidatePair<'_>> {
    let mut out = Vec::with_capacity(pair.source().len() * pair.target().len());
    for s in pair.source() {
        for t in pair.target() {
            out.push(CandidatePair {
                source_word: &s.surface,
                target_word: &t.surface,
                source_pos: s.position,
                target_pos: t.position,
                pair_id: pair.id(),
            });
        }
    }
    out
}

/// Keeps candidates whose tags are compatible under the match table.
pub fn pos_filter<'a>(
    candidates: Vec<CandidatePair<'a>>,
    pair: &SentencePair,
    table: &TagMatchTable,
) -> Result<Vec<CandidatePair<'a>>> {
    table.check_pair(pair)?;
    let tag = |tok: &crate::Token| tok.tag.as_deref().unwrap_or_default().to_owned();
    let source_tags: Vec<String> = pair.source().iter().map(tag).collect();
    let target_tags: Vec<String> = pair.target().iter().map(tag).collect();
    let mut kept = Vec::with_capacity(candidates.len());
    for c in candidates {
        if table.matches(&source_tags[c.source_pos], &target_tags[c.target_pos])? {
            kept.push(c);
        }
    }
    Ok(kept)
}

/// The four filters of the cascade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterKind {
    /// Part-of-speech predicate filter.
    Pos,
    /// Bilingual dictionary oracle filter.
    Mrbd,
    /// Cognate oracle filter.
    Cognate,
    /// Word alignment filter.
    Align,
}

impl FilterKind {
    pub fn name(self) -> &'static str {
        match self {
            FilterKind::Pos => "pos",
            FilterKind::Mrbd => "mrbd",
            FilterKind::Cognate => "cognate",
            FilterKind::Align => "align",
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos" => Ok(FilterKind::Pos),
            "mrbd" => Ok(FilterKind::Mrbd),
            "cognate" => Ok(FilterKind::Cognate),
            "align" => Ok(FilterKind::Align),
            other => Err(Error::Config(format!(
                "unknown filter `{other}` (expected pos, mrbd, cognate or align)"
            ))),
        }
    }
}

/// Parses a comma-separated cascade such as `pos,cognate,mrbd,align`. The
/// empty string is the empty cascade.
pub fn parse_cascade(spec: &str) -> Result<Vec<FilterKind>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    let filters = spec
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<Vec<FilterKind>>>()?;
    let mut seen = BTreeSet::new();
    if let Some(dup) = filters.iter().find(|f| !seen.insert(**f)) {
        return Err(Error::Config(format!("filter `{dup}` listed twice")));
    }
    Ok(filters)
}

pub fn cascade_to_string(filters: &[FilterKind]) -> String {
    filters
        .iter()
        .map(|f| f.name())
        .collect::<Vec<_>>()
        .join(",")
}

/// An ordered list of filters together with the resources they need.
#[derive(Debug, Clone)]
pub struct CascadeConfig<'r> {
    filters: Vec<FilterKind>,
    lcsr: LcsrParams,
    oracle: Option<&'r OracleList>,
    tags: Option<&'r TagMatchTable>,
}

impl<'r> CascadeConfig<'r> {
    pub fn new(filters: Vec<FilterKind>) -> Self {
        CascadeConfig {
            filters,
            lcsr: LcsrParams::default(),
            oracle: None,
            tags: None,
        }
    }

    pub fn with_lcsr(mut self, params: LcsrParams) -> Self {
        self.lcsr = params;
        self
    }

    pub fn with_oracle(mut self, oracle: &'r OracleList) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn with_tags(mut self, tags: &'r TagMatchTable) -> Self {
        self.tags = Some(tags);
        self
    }

    pub fn filters(&self) -> &[FilterKind] {
        &self.filters
    }

    pub fn lcsr(&self) -> &LcsrParams {
        &self.lcsr
    }

    pub fn oracle(&self) -> Option<&'r OracleList> {
        self.oracle
    }

    pub fn tags(&self) -> Option<&'r TagMatchTable> {
        self.tags
    }

    pub fn uses(&self, filter: FilterKind) -> bool {
        self.filters.contains(&filter)
    }

    /// Rejects duplicate filters and filters missing their resource.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &f in &self.filters {
            if !seen.insert(f) {
                return Err(Error::Config(format!("filter `{f}` listed twice")));
            }
            match f {
                FilterKind::Pos if self.tags.is_none() => {
                    return Err(Error::Config("filter `pos` needs a tag map".into()))
                }
                FilterKind::Mrbd if self.oracle.is_none() => {
                    return Err(Error::Config(
                        "filter `mrbd` needs an oracle dictionary".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Which match sources feed the alignment filter's loci: those of the
    /// oracle filters present in the cascade, or every available source when
    /// the cascade has neither.
    fn locus_sources(&self) -> (bool, bool) {
        let mrbd = self.uses(FilterKind::Mrbd);
        let cognate = self.uses(FilterKind::Cognate);
        if mrbd || cognate {
            (mrbd, cognate)
        } else {
            (self.oracle.is_some(), true)
        }
    }
}

/// Surviving candidates of one pair, with the candidate count before the
/// first filter and after each filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeOutput<'a> {
    pub candidates: Vec<CandidatePair<'a>>,
    pub stage_sizes: Vec<usize>,
}

/// Runs the configured cascade over one sentence pair.
///
/// Oracle and alignment loci are computed from the raw sentence pair, so the
/// filter order changes which removals happen but never which loci exist.
pub fn run_cascade<'a>(pair: &'a SentencePair, config: &CascadeConfig<'_>) -> Result<CascadeOutput<'a>> {
    config.validate()?;
    let mut candidates = generate_candidates(pair);
    let mut stage_sizes = Vec::with_capacity(config.filters.len() + 1);
    stage_sizes.push(candidates.len());

    let mut dictionary: Option<BTreeSet<Locus>> = None;
    let mut cognates: Option<BTreeSet<Locus>> = None;
    let oracle = config.oracle;
    let lcsr = config.lcsr;
    let dictionary_loci = |cache: &mut Option<BTreeSet<Locus>>| -> BTreeSet<Locus> {
        cache
            .get_or_insert_with(|| oracle.map(|o| oracle_matches(pair, o)).unwrap_or_default())
            .clone()
    };
    let cognate_loci = |cache: &mut Option<BTreeSet<Locus>>| -> BTreeSet<Locus> {
        cache
            .get_or_insert_with(|| cognate_matches(pair, &lcsr))
            .clone()
    };

    for &filter in &config.filters {
        candidates = match filter {
            FilterKind::Pos => {
                let tags = config.tags.expect("validated");
                pos_filter(candidates, pair, tags)?
            }
            FilterKind::Mrbd => oracle_filter(candidates, &dictionary_loci(&mut dictionary)),
            FilterKind::Cognate => oracle_filter(candidates, &cognate_loci(&mut cognates)),
            FilterKind::Align => {
                let (use_dict, use_cog) = config.locus_sources();
                let mut all = BTreeSet::new();
                if use_dict {
                    all.extend(dictionary_loci(&mut dictionary));
                }
                if use_cog {
                    all.extend(cognate_loci(&mut cognates));
                }
                alignment_filter(candidates, &select_loci(&all))?
            }
        };
        stage_sizes.push(candidates.len());
    }
    Ok(CascadeOutput {
        candidates,
        stage_sizes,
    })
}
