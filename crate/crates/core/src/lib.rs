//! Induction of N-best translation lexicons from sentence-aligned bitexts.
//!
//! Candidate translation pairs are taken from the cross-product of each
//! aligned sentence pair and sifted by a cascade of knowledge-source filters
//! (part of speech, bilingual dictionary, cognates, word alignment). The
//! survivors are ranked by the binomial log-likelihood ratio into an N-best
//! lexicon, which is scored against a held-out bitext by cumulative hit rate.
//!
//! ```
//! use lexcascade::{corpus, filters, pipeline};
//!
//! let bitext = corpus::parse_bitext(
//!     "le gouvernement\nle chat\n",
//!     "the government\nthe cat\n",
//!     corpus::LoadOptions::default(),
//! )
//! .unwrap();
//! let cascade = filters::CascadeConfig::new(filters::parse_cascade("cognate,align").unwrap());
//! let induced = pipeline::induce(&bitext, &cascade, pipeline::InduceParams::default()).unwrap();
//! assert_eq!(induced.lexicon.best("gouvernement"), Some("government"));
//! ```

pub mod bible;
pub mod cognate;
pub mod corpus;
pub mod error;
pub mod filters;
pub mod par;
pub mod pipeline;
pub mod scoring;
pub mod synth;
pub mod translate;

pub use bible::{aggregate_runs, evaluate, BibleReport, Mode, RunSummary};
pub use cognate::{is_cognate, lcs_length, lcsr, LcsrParams};
pub use corpus::{Bitext, OracleList, SentencePair, Token};
pub use error::{Error, ErrorKind, Result};
pub use filters::{CandidatePair, CascadeConfig, FilterKind, Locus, TagMatchTable};
pub use par::Execution;
pub use scoring::{g2, ContingencyTable, NBestLexicon};
pub use translate::BackoffChain;
