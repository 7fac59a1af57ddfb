use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{signed_g2, CooccurrenceTables};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub target: String,
    pub score: f64,
    pub cooccurrence: u64,
}

/// Up to `n_max` ranked translations per source word.
#[derive(Debug, Clone, PartialEq)]
pub struct NBestLexicon {
    n_max: usize,
    entries: BTreeMap<String, Vec<LexiconEntry>>,
}

fn rank_order(x: &LexiconEntry, y: &LexiconEntry) -> Ordering {
    y.score
        .total_cmp(&x.score)
        .then(y.cooccurrence.cmp(&x.cooccurrence))
        .then_with(|| x.target.as_bytes().cmp(y.target.as_bytes()))
}

impl NBestLexicon {
    pub fn new(n_max: usize) -> Self {
        NBestLexicon {
            n_max,
            entries: BTreeMap::new(),
        }
    }

    /// Adds the ranked translations of one source word, checking the list
    /// length, target uniqueness and non-increasing scores.
    pub fn insert(&mut self, source: impl Into<String>, ranked: Vec<LexiconEntry>) -> Result<()> {
        let source = source.into();
        if ranked.is_empty() || ranked.len() > self.n_max {
            return Err(Error::Contract(format!(
                "entry for `{source}` has {} translations, limit is {}",
                ranked.len(),
                self.n_max
            )));
        }
        if ranked.windows(2).any(|w| w[1].score > w[0].score) {
            return Err(Error::Contract(format!(
                "scores for `{source}` are not in non-increasing order"
            )));
        }
        let mut targets: Vec<&str> = ranked.iter().map(|e| e.target.as_str()).collect();
        targets.sort_unstable();
        if targets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Contract(format!(
                "entry for `{source}` lists a target twice"
            )));
        }
        self.entries.insert(source, ranked);
        Ok(())
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, source: &str) -> bool {
        self.entries.contains_key(source)
    }

    pub fn translations(&self, source: &str) -> Option<&[LexiconEntry]> {
        self.entries.get(source).map(Vec::as_slice)
    }

    /// The rank-1 translation.
    pub fn best(&self, source: &str) -> Option<&str> {
        self.entries
            .get(source)
            .and_then(|e| e.first())
            .map(|e| e.target.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[LexiconEntry])> {
        self.entries.iter().map(|(s, e)| (s.as_str(), e.as_slice()))
    }

    pub fn remove(&mut self, source: &str) -> Option<Vec<LexiconEntry>> {
        self.entries.remove(source)
    }

    /// Serializes as `source<TAB>rank<TAB>target<TAB>score<TAB>cooccurrence`
    /// lines, preceded by `# key=value` header lines. `n` is always written.
    pub fn to_tsv(&self, header: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in header {
            if k != "n" {
                let _ = writeln!(out, "# {k}={v}");
            }
        }
        let _ = writeln!(out, "# n={}", self.n_max);
        for (source, ranked) in &self.entries {
            for (i, e) in ranked.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{source}\t{}\t{}\t{}\t{}",
                    i + 1,
                    e.target,
                    e.score,
                    e.cooccurrence
                );
            }
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>, header: &[(String, String)]) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_tsv(header)).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_tsv(&text)
    }

    /// Parses the lexicon file format. Without an `# n=` header, N is the
    /// largest rank present.
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut declared_n = None;
        let mut groups: Vec<(String, Vec<LexiconEntry>)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let bad = |reason: String| Error::Format {
                line: line_no,
                reason,
            };
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("n=") {
                    declared_n = Some(
                        n.parse::<usize>()
                            .map_err(|_| bad(format!("bad N header `{n}`")))?,
                    );
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [source, rank, target, score, cooc] = fields.as_slice() else {
                return Err(bad(format!("expected 5 fields, found {}", fields.len())));
            };
            let rank: usize = rank.parse().map_err(|_| bad(format!("bad rank `{rank}`")))?;
            let score: f64 = score
                .parse()
                .map_err(|_| bad(format!("bad score `{score}`")))?;
            let cooccurrence: u64 = cooc
                .parse()
                .map_err(|_| bad(format!("bad co-occurrence `{cooc}`")))?;
            let entry = LexiconEntry {
                target: target.to_string(),
                score,
                cooccurrence,
            };
            match groups.last_mut() {
                Some((s, ranked)) if s == source => {
                    if rank != ranked.len() + 1 {
                        return Err(bad(format!("rank {rank} out of sequence for `{source}`")));
                    }
                    ranked.push(entry);
                }
                _ => {
                    if rank != 1 {
                        return Err(bad(format!("entry for `{source}` must start at rank 1")));
                    }
                    if groups.iter().any(|(s, _)| s == source) {
                        return Err(bad(format!("entry for `{source}` is not contiguous")));
                    }
                    groups.push((source.to_string(), vec![entry]));
                }
            }
        }
        let longest = groups.iter().map(|(_, r)| r.len()).max().unwrap_or(1);
        let mut lexicon = NBestLexicon::new(declared_n.unwrap_or(longest));
        for (source, ranked) in groups {
            lexicon.insert(source, ranked)?;
        }
        Ok(lexicon)
    }
}

/// Ranks each source word's candidate targets by signed G², so positively
/// associated targets come first and strongly anti-correlated ones last.
/// Ties are broken by
/// co-occurrence count (descending) then target bytes (ascending), and keeps
/// the top `n` with at least `min_cooccurrence` co-occurrences.
pub fn build_lexicon(
    tables: &CooccurrenceTables<'_>,
    n: usize,
    min_cooccurrence: u64,
) -> Result<NBestLexicon> {
    if n == 0 {
        return Err(Error::Config("N must be at least 1".into()));
    }
    let mut by_source: BTreeMap<&str, Vec<LexiconEntry>> = BTreeMap::new();
    for (&(s, t), table) in tables {
        if table.a < min_cooccurrence.max(1) {
            continue;
        }
        by_source.entry(s).or_default().push(LexiconEntry {
            target: t.to_owned(),
            score: signed_g2(table)?,
            cooccurrence: table.a,
        });
    }
    let mut lexicon = NBestLexicon::new(n);
    for (source, mut ranked) in by_source {
        ranked.sort_by(rank_order);
        ranked.truncate(n);
        lexicon.insert(source, ranked)?;
    }
    Ok(lexicon)
}
