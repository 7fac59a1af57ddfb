//! Corpus-level induction: cascade every sentence pair, pool the survivors,
//! and rank them into an N-best lexicon.

use crate::corpus::Bitext;
use crate::error::Result;
use crate::filters::{run_cascade, CascadeConfig, CascadeOutput, FilterKind};
use crate::par::{self, Execution};
use crate::scoring::{
    add_pair_counts, build_lexicon, copresence_counts, merge_joint_counts, tables_from_joint, JointCounts,
    NBestLexicon,
};

pub const DEFAULT_N: usize = 7;
pub const DEFAULT_MAX_LEN: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InduceParams {
    pub n: usize,
    pub min_cooccurrence: u64,
}

impl Default for InduceParams {
    fn default() -> Self {
        InduceParams {
            n: DEFAULT_N,
            min_cooccurrence: 1,
        }
    }
}

/// Candidate counts summed over the corpus: the raw cross-product and the
/// survivors after each filter, in cascade order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attrition {
    pub pairs: usize,
    pub cross_product: u64,
    pub after: Vec<(FilterKind, u64)>,
}

impl Attrition {
    pub fn surviving(&self) -> u64 {
        self.after.last().map_or(self.cross_product, |&(_, n)| n)
    }
}

#[derive(Debug, Clone)]
pub struct Induction {
    pub lexicon: NBestLexicon,
    pub attrition: Attrition,
}

/// Runs the cascade over every pair, in pair order.
pub fn cascade_corpus<'a>(
    bitext: &'a Bitext,
    config: &CascadeConfig<'_>,
    exec: Execution,
) -> Result<Vec<CascadeOutput<'a>>> {
    prepare(bitext, config)?;
    par::map(bitext.pairs(), exec, |pair| run_cascade(pair, config))
        .into_iter()
        .collect()
}

fn prepare(bitext: &Bitext, config: &CascadeConfig<'_>) -> Result<()> {
    config.validate()?;
    // Tag problems are reported up front so the first error is deterministic.
    if let (true, Some(tags)) = (config.uses(FilterKind::Pos), config.tags()) {
        tags.check_bitext(bitext)?;
    }
    Ok(())
}

pub fn induce(
    bitext: &Bitext,
    config: &CascadeConfig<'_>,
    params: InduceParams,
) -> Result<Induction> {
    induce_with(bitext, config, params, Execution::default())
}

pub fn induce_with(
    bitext: &Bitext,
    config: &CascadeConfig<'_>,
    params: InduceParams,
    exec: Execution,
) -> Result<Induction> {
    prepare(bitext, config)?;
    let stages = config.filters().len() + 1;
    let (joint, sizes) = par::try_fold_reduce(
        bitext.pairs(),
        exec,
        || (JointCounts::new(), vec![0u64; stages]),
        |(mut joint, mut sizes), pair| {
            let out = run_cascade(pair, config)?;
            add_pair_counts(&mut joint, &out.candidates);
            for (total, n) in sizes.iter_mut().zip(&out.stage_sizes) {
                *total += *n as u64;
            }
            Ok((joint, sizes))
        },
        |(j1, s1), (j2, s2)| {
            let sizes = s1.iter().zip(&s2).map(|(a, b)| a + b).collect();
            (merge_joint_counts(j1, j2), sizes)
        },
    )?;
    let copresence = if config.filters().is_empty() {
        None
    } else {
        Some(copresence_counts(&joint, bitext, exec))
    };
    let tables = tables_from_joint(&joint, copresence.as_ref(), bitext)?;
    let lexicon = build_lexicon(&tables, params.n, params.min_cooccurrence)?;
    let attrition = Attrition {
        pairs: bitext.len(),
        cross_product: sizes[0],
        after: config
            .filters()
            .iter()
            .copied()
            .zip(sizes[1..].iter().copied())
            .collect(),
    };
    Ok(Induction { lexicon, attrition })
}
