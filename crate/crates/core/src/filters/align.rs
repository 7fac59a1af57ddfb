use std::collections::BTreeSet;

use super::oracle::Locus;
use super::CandidatePair;
use crate::error::{Error, Result};

/// Chooses partitioning loci: at most one per source and per target position,
/// pairwise non-crossing, and as many as possible.
///
/// This is a longest chain strictly increasing in both coordinates. Among
/// maximum chains the lexicographically smallest `(source_pos, target_pos)`
/// sequence wins, which prefers smaller target positions at each source
/// position. Loci sharing both positions are merged.
pub fn select_loci(matches: &BTreeSet<Locus>) -> Vec<Locus> {
    let mut points: Vec<Locus> = Vec::with_capacity(matches.len());
    for l in matches {
        if points.last().is_none_or(|p| p.positions() != l.positions()) {
            points.push(*l);
        }
    }
    let m = points.len();
    if m == 0 {
        return points;
    }

    // longest[i]: length of the longest chain starting at points[i].
    let mut longest = vec![1usize; m];
    for i in (0..m).rev() {
        for j in i + 1..m {
            if precedes(&points[i], &points[j]) {
                longest[i] = longest[i].max(longest[j] + 1);
            }
        }
    }

    // Points are in lexicographic order, so the first point that can still
    // finish a maximum chain is the lexicographically smallest choice.
    let mut need = *longest.iter().max().unwrap();
    let mut chain = Vec::with_capacity(need);
    let mut last: Option<Locus> = None;
    for (i, p) in points.iter().enumerate() {
        if need == 0 {
            break;
        }
        if longest[i] == need && last.is_none_or(|l| precedes(&l, p)) {
            chain.push(*p);
            last = Some(*p);
            need -= 1;
        }
    }
    chain
}

fn precedes(a: &Locus, b: &Locus) -> bool {
    a.source_pos < b.source_pos && a.target_pos < b.target_pos
}

/// Whether a candidate at `(i, j)` respects every partition locus: it lies
/// strictly before, strictly after, or exactly on each locus.
pub fn respects_loci(source_pos: usize, target_pos: usize, loci: &[Locus]) -> bool {
    loci.iter().all(|l| {
        (source_pos < l.source_pos && target_pos < l.target_pos)
            || (source_pos > l.source_pos && target_pos > l.target_pos)
            || (source_pos == l.source_pos && target_pos == l.target_pos)
    })
}

/// Drops candidates that cross or half-straddle a partition locus.
///
/// `loci` must be sorted and pairwise non-crossing, as produced by
/// [`select_loci`].
pub fn alignment_filter<'a>(
    candidates: Vec<CandidatePair<'a>>,
    loci: &[Locus],
) -> Result<Vec<CandidatePair<'a>>> {
    if let Some(w) = loci.windows(2).find(|w| !precedes(&w[0], &w[1])) {
        return Err(Error::Contract(format!(
            "partition loci {:?} and {:?} are not strictly increasing",
            w[0].positions(),
            w[1].positions()
        )));
    }
    if loci.is_empty() {
        return Ok(candidates);
    }
    Ok(candidates
        .into_iter()
        .filter(|c| segment_ok(c.source_pos, c.target_pos, loci))
        .collect())
}

/// Same predicate as [`respects_loci`], using the sorted order: a candidate
/// only needs checking against the loci bracketing its source position.
fn segment_ok(i: usize, j: usize, loci: &[Locus]) -> bool {
    let k = loci.partition_point(|l| l.source_pos < i);
    if let Some(l) = loci.get(k) {
        if l.source_pos == i {
            return l.target_pos == j;
        }
        if j >= l.target_pos {
            return false;
        }
    }
    match k.checked_sub(1).map(|p| &loci[p]) {
        Some(prev) => j > prev.target_pos,
        None => true,
    }
}
