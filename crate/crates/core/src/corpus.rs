//! Sentence-aligned bitexts and oracle dictionaries.
//!
//! Input is assumed to be sentence-aligned, tokenized and stemmed upstream.
//! Each side of a bitext is a UTF-8 file with one sentence per line and
//! tokens separated by single spaces. Tagged files carry `surface/TAG`
//! tokens, split at the last slash.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A positioned token. Punctuation and numbers are ordinary tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub tag: Option<String>,
    pub position: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, position: usize) -> Self {
        Token {
            surface: surface.into(),
            tag: None,
            position,
        }
    }

    pub fn tagged(surface: impl Into<String>, tag: impl Into<String>, position: usize) -> Self {
        Token {
            surface: surface.into(),
            tag: Some(tag.into()),
            position,
        }
    }
}

/// One aligned (source, target) sentence pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentencePair {
    id: usize,
    source: Vec<Token>,
    target: Vec<Token>,
}

impl SentencePair {
    /// Builds a pair after checking token surfaces and positions.
    pub fn new(id: usize, source: Vec<Token>, target: Vec<Token>) -> Result<Self> {
        for (side, tokens) in [("source", &source), ("target", &target)] {
            if tokens.is_empty() {
                return Err(Error::MalformedPair {
                    line: id + 1,
                    reason: format!("empty {side} sentence"),
                });
            }
            for (i, tok) in tokens.iter().enumerate() {
                if tok.surface.is_empty() || tok.surface.chars().any(char::is_whitespace) {
                    return Err(Error::MalformedPair {
                        line: id + 1,
                        reason: format!("invalid {side} token {:?}", tok.surface),
                    });
                }
                if tok.position != i {
                    return Err(Error::MalformedPair {
                        line: id + 1,
                        reason: format!(
                            "{side} token {:?} has position {} but index {i}",
                            tok.surface, tok.position
                        ),
                    });
                }
            }
        }
        Ok(SentencePair { id, source, target })
    }

    /// Convenience constructor from untagged surfaces.
    pub fn from_words<S: AsRef<str>>(id: usize, source: &[S], target: &[S]) -> Result<Self> {
        let side = |words: &[S]| {
            words
                .iter()
                .enumerate()
                .map(|(i, w)| Token::new(w.as_ref(), i))
                .collect::<Vec<_>>()
        };
        SentencePair::new(id, side(source), side(target))
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn source(&self) -> &[Token] {
        &self.source
    }

    pub fn target(&self) -> &[Token] {
        &self.target
    }
}

/// Word types of one side of a bitext with their document frequency,
/// i.e. the number of sentence pairs containing the type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    df: BTreeMap<String, usize>,
}

impl Vocabulary {
    fn from_sentences<'a>(sentences: impl Iterator<Item = &'a [Token]>) -> Self {
        let mut df = BTreeMap::new();
        for tokens in sentences {
            let types: BTreeSet<&str> = tokens.iter().map(|t| t.surface.as_str()).collect();
            for ty in types {
                *df.entry(ty.to_owned()).or_insert(0) += 1;
            }
        }
        Vocabulary { df }
    }

    pub fn document_frequency(&self, word: &str) -> usize {
        self.df.get(word).copied().unwrap_or(0)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.df.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.df.len()
    }

    pub fn is_empty(&self) -> bool {
        self.df.is_empty()
    }

    /// Types in byte order with their document frequencies.
    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.df.iter().map(|(w, &n)| (w.as_str(), n))
    }
}

/// An ordered collection of sentence pairs plus per-side vocabularies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bitext {
    pairs: Vec<SentencePair>,
    source_vocab: Vocabulary,
    target_vocab: Vocabulary,
}

impl Bitext {
    pub fn from_pairs(pairs: Vec<SentencePair>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(pairs.len());
        for p in &pairs {
            if !seen.insert(p.id) {
                return Err(Error::DuplicatePairId(p.id));
            }
        }
        Ok(Self::from_unique_pairs(pairs))
    }

    fn from_unique_pairs(pairs: Vec<SentencePair>) -> Self {
        let source_vocab = Vocabulary::from_sentences(pairs.iter().map(|p| p.source()));
        let target_vocab = Vocabulary::from_sentences(pairs.iter().map(|p| p.target()));
        Bitext {
            pairs,
            source_vocab,
            target_vocab,
        }
    }

    pub fn pairs(&self) -> &[SentencePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn source_vocab(&self) -> &Vocabulary {
        &self.source_vocab
    }

    pub fn target_vocab(&self) -> &Vocabulary {
        &self.target_vocab
    }

    /// Looks up a pair by id. Ids are line indexes for loaded bitexts, so
    /// the positional slot is tried first.
    pub fn pair(&self, id: usize) -> Option<&SentencePair> {
        match self.pairs.get(id) {
            Some(p) if p.id == id => Some(p),
            _ => self.pairs.iter().find(|p| p.id == id),
        }
    }

    pub fn source_token_count(&self) -> usize {
        self.pairs.iter().map(|p| p.source.len()).sum()
    }
}

/// Options applied while reading bitext files.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    pub tagged: bool,
    pub lowercase: bool,
}

/// Reads a bitext from two parallel files.
pub fn load_bitext(
    source_path: impl AsRef<Path>,
    target_path: impl AsRef<Path>,
    options: LoadOptions,
) -> Result<Bitext> {
    let source_path = source_path.as_ref();
    let target_path = target_path.as_ref();
    let source = fs::read_to_string(source_path).map_err(|e| Error::io(source_path, e))?;
    let target = fs::read_to_string(target_path).map_err(|e| Error::io(target_path, e))?;
    parse_bitext(&source, &target, options)
}

/// Parses a bitext from in-memory file contents.
pub fn parse_bitext(source: &str, target: &str, options: LoadOptions) -> Result<Bitext> {
    let source_lines: Vec<&str> = source.lines().collect();
    let target_lines: Vec<&str> = target.lines().collect();
    if source_lines.len() != target_lines.len() {
        return Err(Error::Alignment {
            source_lines: source_lines.len(),
            target_lines: target_lines.len(),
        });
    }
    let pairs = source_lines
        .iter()
        .zip(&target_lines)
        .enumerate()
        .map(|(id, (s, t))| {
            let line = id + 1;
            let source = parse_sentence(s, line, options)?;
            let target = parse_sentence(t, line, options)?;
            SentencePair::new(id, source, target)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Bitext::from_unique_pairs(pairs))
}

fn parse_sentence(line: &str, line_no: usize, options: LoadOptions) -> Result<Vec<Token>> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    if line.is_empty() {
        return Err(Error::MalformedPair {
            line: line_no,
            reason: "empty sentence".into(),
        });
    }
    line.split(' ')
        .enumerate()
        .map(|(position, raw)| {
            if raw.is_empty() || raw.chars().any(char::is_whitespace) {
                return Err(Error::MalformedPair {
                    line: line_no,
                    reason: format!("bad token separator near position {position}"),
                });
            }
            let (surface, tag) = if options.tagged {
                match raw.rsplit_once('/') {
                    Some((s, t)) if !s.is_empty() && !t.is_empty() => (s, Some(t.to_owned())),
                    _ => {
                        return Err(Error::MissingTag {
                            line: line_no,
                            token: raw.to_owned(),
                        })
                    }
                }
            } else {
                (raw, None)
            };
            let surface = if options.lowercase {
                surface.to_lowercase()
            } else {
                surface.to_owned()
            };
            Ok(Token {
                surface,
                tag,
                position,
            })
        })
        .collect()
}

/// Keeps the pairs whose sides both have at most `max_len` tokens.
pub fn restrict_bitext(bitext: &Bitext, max_len: usize) -> Bitext {
    let pairs = bitext
        .pairs
        .iter()
        .filter(|p| p.source.len() <= max_len && p.target.len() <= max_len)
        .cloned()
        .collect();
    Bitext::from_unique_pairs(pairs)
}

/// Seeded random permutation of pair indexes. The same seed always yields the
/// same permutation for the same bitext size.
fn permutation(len: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Reserves `test_count` randomly chosen pairs for testing. Both halves keep
/// the original pair order and ids.
pub fn split_bitext(bitext: &Bitext, test_count: usize, seed: u64) -> Result<(Bitext, Bitext)> {
    if test_count > bitext.len() {
        return Err(Error::SplitSize {
            requested: test_count,
            available: bitext.len(),
        });
    }
    let mut in_test = vec![false; bitext.len()];
    for &i in &permutation(bitext.len(), seed)[..test_count] {
        in_test[i] = true;
    }
    let (test, train): (Vec<_>, Vec<_>) = bitext
        .pairs
        .iter()
        .cloned()
        .zip(in_test)
        .partition(|(_, t)| *t);
    let unzip = |v: Vec<(SentencePair, bool)>| v.into_iter().map(|(p, _)| p).collect();
    Ok((
        Bitext::from_unique_pairs(unzip(train)),
        Bitext::from_unique_pairs(unzip(test)),
    ))
}

/// Partitions a bitext into `parts` mutually exclusive subsets of (nearly)
/// equal size, using a seeded permutation.
pub fn partition_bitext(bitext: &Bitext, parts: usize, seed: u64) -> Result<Vec<Bitext>> {
    if parts == 0 || parts > bitext.len() {
        return Err(Error::SplitSize {
            requested: parts,
            available: bitext.len(),
        });
    }
    let mut owner = vec![0; bitext.len()];
    for (rank, &i) in permutation(bitext.len(), seed).iter().enumerate() {
        owner[i] = rank % parts;
    }
    let mut buckets = vec![Vec::new(); parts];
    for (pair, &o) in bitext.pairs.iter().zip(&owner) {
        buckets[o].push(pair.clone());
    }
    Ok(buckets.into_iter().map(Bitext::from_unique_pairs).collect())
}

/// A set of trusted (source, target) translation pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleList {
    pairs: BTreeSet<(String, String)>,
    by_source: BTreeMap<String, BTreeSet<String>>,
    by_target: BTreeMap<String, BTreeSet<String>>,
}

impl OracleList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, source: impl Into<String>, target: impl Into<String>) -> bool {
        let (source, target) = (source.into(), target.into());
        if !self.pairs.insert((source.clone(), target.clone())) {
            return false;
        }
        self.by_source
            .entry(source.clone())
            .or_default()
            .insert(target.clone());
        self.by_target.entry(target).or_default().insert(source);
        true
    }

    pub fn contains(&self, source: &str, target: &str) -> bool {
        self.by_source
            .get(source)
            .is_some_and(|targets| targets.contains(target))
    }

    pub fn targets_of(&self, source: &str) -> Option<&BTreeSet<String>> {
        self.by_source.get(source)
    }

    pub fn sources_of(&self, target: &str) -> Option<&BTreeSet<String>> {
        self.by_target.get(target)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(s, t)| (s.as_str(), t.as_str()))
    }
}

impl<S: Into<String>, T: Into<String>> FromIterator<(S, T)> for OracleList {
    fn from_iter<I: IntoIterator<Item = (S, T)>>(iter: I) -> Self {
        let mut list = OracleList::new();
        for (s, t) in iter {
            list.insert(s, t);
        }
        list
    }
}

pub fn load_oracle_list(path: impl AsRef<Path>) -> Result<OracleList> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_oracle_list(&text)
}

/// Parses `source<TAB>target` lines; duplicates collapse.
pub fn parse_oracle_list(text: &str) -> Result<OracleList> {
    let mut list = OracleList::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            [s, t] if !s.is_empty() && !t.is_empty() => {
                list.insert(*s, *t);
            }
            _ => {
                return Err(Error::Format {
                    line: i + 1,
                    reason: format!(
                        "expected `source<TAB>target`, found {} field(s)",
                        fields.len()
                    ),
                })
            }
        }
    }
    Ok(list)
}
