use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use crate::corpus::{Bitext, SentencePair};
use crate::error::{Error, Result};

/// Common coarse tag set for the POS filter, with the match set of each tag.
const COMMON_TAGS: &[(&str, &[&str])] = &[
    ("CD", &["CD"]),
    ("CJ", &["CJ"]),
    ("D", &["D"]),
    ("EOP", &["EOP"]),
    ("EOS", &["EOS"]),
    ("IN", &["IN"]),
    ("J", &["J", "VBG", "VBN"]),
    ("N", &["N", "NP"]),
    ("NP", &["NP", "N"]),
    ("P", &["P"]),
    ("R", &["R"]),
    ("SCM", &["SCM"]),
    ("UH", &["UH"]),
    ("V", &["V"]),
    ("VBG", &["VBG", "J", "VBN"]),
    ("VBN", &["VBN", "J", "VBG"]),
];

/// Which coarse tags are compatible, plus a remapping from tagger-specific
/// fine tags onto the coarse set.
///
/// Coarse tags remap to themselves. Every coarse tag matches itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagMatchTable {
    match_sets: BTreeMap<String, BTreeSet<String>>,
    remap: BTreeMap<String, String>,
}

impl Default for TagMatchTable {
    fn default() -> Self {
        let match_sets = COMMON_TAGS
            .iter()
            .map(|(tag, matches)| {
                (
                    tag.to_string(),
                    matches.iter().map(|m| m.to_string()).collect(),
                )
            })
            .collect();
        TagMatchTable {
            match_sets,
            remap: BTreeMap::new(),
        }
    }
}

impl TagMatchTable {
    /// Builds a table, checking that every matched or remapped-to tag is a
    /// coarse tag. Reflexive matches are added.
    pub fn new(
        match_sets: BTreeMap<String, BTreeSet<String>>,
        remap: BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut match_sets = match_sets;
        for (tag, set) in match_sets.iter_mut() {
            set.insert(tag.clone());
        }
        for (tag, set) in &match_sets {
            if let Some(missing) = set.iter().find(|m| !match_sets.contains_key(*m)) {
                return Err(Error::Config(format!(
                    "tag `{tag}` matches `{missing}`, which has no match line"
                )));
            }
        }
        if let Some((fine, coarse)) = remap.iter().find(|(_, c)| !match_sets.contains_key(*c)) {
            return Err(Error::Config(format!(
                "tag `{fine}` remaps to unknown coarse tag `{coarse}`"
            )));
        }
        Ok(TagMatchTable { match_sets, remap })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Parses a tag map file. Lines are either `FINE -> COARSE` or
    /// `COARSE: A,B,C`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut match_sets = BTreeMap::new();
        let mut remap = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| Error::Format {
                line: i + 1,
                reason: reason.to_owned(),
            };
            if let Some((fine, coarse)) = line.split_once("->") {
                let (fine, coarse) = (fine.trim(), coarse.trim());
                if fine.is_empty() || coarse.is_empty() {
                    return Err(bad("remap line needs `FINE -> COARSE`"));
                }
                if remap.insert(fine.to_owned(), coarse.to_owned()).is_some() {
                    return Err(bad("fine tag remapped twice"));
                }
            } else if let Some((coarse, matches)) = line.split_once(':') {
                let coarse = coarse.trim();
                if coarse.is_empty() {
                    return Err(bad("match line needs `COARSE: A,B,C`"));
                }
                let set: BTreeSet<String> = matches
                    .split(',')
                    .map(str::trim)
                    .filter(|m| !m.is_empty())
                    .map(str::to_owned)
                    .collect();
                if match_sets.insert(coarse.to_owned(), set).is_some() {
                    return Err(bad("coarse tag defined twice"));
                }
            } else {
                return Err(bad("expected `FINE -> COARSE` or `COARSE: A,B,C`"));
            }
        }
        Self::new(match_sets, remap)
    }

    /// Renders the table in the file format accepted by [`TagMatchTable::parse`].
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (fine, coarse) in &self.remap {
            out.push_str(&format!("{fine} -> {coarse}\n"));
        }
        for (tag, set) in &self.match_sets {
            let list: Vec<&str> = set.iter().map(String::as_str).collect();
            out.push_str(&format!("{tag}: {}\n", list.join(",")));
        }
        out
    }

    pub fn coarse(&self, tag: &str) -> Result<&str> {
        if let Some(c) = self.remap.get(tag) {
            Ok(c)
        } else if let Some((c, _)) = self.match_sets.get_key_value(tag) {
            Ok(c)
        } else {
            Err(Error::UnknownTag {
                tag: tag.to_owned(),
            })
        }
    }

    /// Whether a source token tagged `source` may translate a target token
    /// tagged `target`.
    pub fn matches(&self, source: &str, target: &str) -> Result<bool> {
        let s = self.coarse(source)?;
        let t = self.coarse(target)?;
        Ok(self.match_sets[s].contains(t))
    }

    pub fn coarse_tags(&self) -> impl Iterator<Item = &str> {
        self.match_sets.keys().map(String::as_str)
    }

    /// Checks that every token of the pair carries a known tag.
    pub fn check_pair(&self, pair: &SentencePair) -> Result<()> {
        for tok in pair.source().iter().chain(pair.target()) {
            let tag = tok.tag.as_deref().ok_or_else(|| Error::UntaggedToken {
                pair_id: pair.id(),
                token: tok.surface.clone(),
            })?;
            self.coarse(tag)?;
        }
        Ok(())
    }

    pub fn check_bitext(&self, bitext: &Bitext) -> Result<()> {
        bitext.pairs().iter().try_for_each(|p| self.check_pair(p))
    }
}
