//! Longest common subsequence ratio (LCSR) and the cognate predicate.

use crate::error::{Error, Result};

pub const DEFAULT_LCSR_CUTOFF: f64 = 0.58;
pub const DEFAULT_MIN_ALPHA_LEN: usize = 2;

/// Parameters of the cognate test.
///
/// A cutoff above 1 is accepted and disables alphabetic matching entirely,
/// leaving only identical non-alphabetic tokens as cognates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcsrParams {
    cutoff: f64,
    min_alpha_len: usize,
}

impl LcsrParams {
    pub fn new(cutoff: f64, min_alpha_len: usize) -> Result<Self> {
        if !cutoff.is_finite() || cutoff < 0.0 {
            return Err(Error::Config(format!(
                "LCSR cutoff must be a finite non-negative ratio, got {cutoff}"
            )));
        }
        if min_alpha_len == 0 {
            return Err(Error::Config("min_alpha_len must be positive".into()));
        }
        Ok(LcsrParams {
            cutoff,
            min_alpha_len,
        })
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn min_alpha_len(&self) -> usize {
        self.min_alpha_len
    }
}

impl Default for LcsrParams {
    fn default() -> Self {
        LcsrParams {
            cutoff: DEFAULT_LCSR_CUTOFF,
            min_alpha_len: DEFAULT_MIN_ALPHA_LEN,
        }
    }
}

/// Length of the longest (not necessarily contiguous) common subsequence of
/// the two character sequences. Two-row DP, `O(|a|·|b|)` time.
pub fn lcs_length(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    lcs_chars(&a, &b)
}

fn lcs_chars(a: &[char], b: &[char]) -> usize {
    // Keep the shorter string on the row axis.
    let (outer, inner) = if a.len() < b.len() { (b, a) } else { (a, b) };
    let mut prev = vec![0usize; inner.len() + 1];
    let mut cur = vec![0usize; inner.len() + 1];
    for &x in outer {
        for (j, &y) in inner.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[inner.len()]
}

/// An LCSR value kept as its exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lcsr {
    pub common: usize,
    pub longer: usize,
}

impl Lcsr {
    pub fn value(&self) -> f64 {
        self.common as f64 / self.longer as f64
    }
}

/// LCS length over the length of the longer string.
pub fn lcsr_fraction(a: &str, b: &str) -> Result<Lcsr> {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let longer = a.len().max(b.len());
    if longer == 0 {
        return Err(Error::EmptyLcsrInput);
    }
    Ok(Lcsr {
        common: lcs_chars(&a, &b),
        longer,
    })
}

pub fn lcsr(a: &str, b: &str) -> Result<f64> {
    lcsr_fraction(a, b).map(|r| r.value())
}

pub(crate) fn is_alphabetic_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(char::is_alphabetic)
}

/// Cognate test on two surfaces.
///
/// Alphabetic words of at least `min_alpha_len` characters are cognates when
/// their LCSR reaches the cutoff. Anything else (numbers, punctuation, mixed
/// tokens) is a cognate only of an identical token.
pub fn is_cognate_surface(a: &str, b: &str, params: &LcsrParams) -> bool {
    if is_alphabetic_word(a) && is_alphabetic_word(b) {
        let len_a = a.chars().count();
        let len_b = b.chars().count();
        if len_a < params.min_alpha_len || len_b < params.min_alpha_len {
            return false;
        }
        // Both non-empty here, so the ratio is defined.
        lcsr(a, b).is_ok_and(|r| r >= params.cutoff)
    } else if is_alphabetic_word(a) || is_alphabetic_word(b) {
        false
    } else {
        !a.is_empty() && a == b
    }
}

pub fn is_cognate(a: &crate::Token, b: &crate::Token, params: &LcsrParams) -> bool {
    is_cognate_surface(&a.surface, &b.surface, params)
}
