use std::fmt::{Display, Write as _};
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use lexcascade::bible::{aggregate_runs, evaluate_with, BibleReport, Mode};
use lexcascade::cognate::lcsr_fraction;
use lexcascade::corpus::{
    load_bitext, load_oracle_list, partition_bitext, restrict_bitext, split_bitext, LoadOptions,
};
use lexcascade::filters::{cascade_to_string, cognate_matches, parse_cascade};
use lexcascade::pipeline::{induce_with, InduceParams};
use lexcascade::translate::{load_chain_spec, order_chain_with, score_corpus_with, translations_to_tsv};
use lexcascade::{
    Bitext, CascadeConfig, Error, ErrorKind, Execution, FilterKind, LcsrParams, NBestLexicon,
    SentencePair, TagMatchTable,
};

use crate::{CognatesArgs, CorpusArgs, EvaluateArgs, InduceArgs, LcsrArgs, TranslateArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[cfg(feature = "parallel")]
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

impl CliError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Write { .. } => ErrorKind::Io,
            #[cfg(feature = "parallel")]
            CliError::Pool(_) => ErrorKind::Config,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Core(Error::Config(msg.into()))
}

/// Runs `f` with the requested parallelism. Output never depends on it.
fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce(Execution) -> T + Send,
) -> Result<T> {
    match workers {
        Some(0) => Err(config_error("--workers must be at least 1")),
        Some(1) => Ok(f(Execution::Sequential)),
        #[cfg(feature = "parallel")]
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Pool(e.to_string()))?;
            Ok(pool.install(|| f(Execution::Parallel)))
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(f(Execution::Sequential)),
        None => Ok(f(Execution::default())),
    }
}

/// `# key=value` header entries.
#[derive(Default)]
struct Header(Vec<(String, String)>);

impl Header {
    fn set(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.0.push((key.to_owned(), value.to_string()));
        self
    }

    fn corpus(&mut self, c: &CorpusArgs) -> &mut Self {
        self.set("tagged", c.tagged).set("lowercase", c.lowercase)
    }

    fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("# {k}={v}\n")).collect()
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_owned(),
            source,
        }),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn load(source: &Path, target: &Path, c: &CorpusArgs) -> Result<Bitext> {
    let options = LoadOptions {
        tagged: c.tagged,
        lowercase: c.lowercase,
    };
    Ok(load_bitext(source, target, options)?)
}

fn lcsr_params(a: &LcsrArgs) -> Result<LcsrParams> {
    Ok(LcsrParams::new(a.lcsr_cutoff, a.min_alpha_len)?)
}

fn side_line(tokens: &[lexcascade::Token]) -> String {
    let words: Vec<String> = tokens
        .iter()
        .map(|t| match &t.tag {
            Some(tag) => format!("{}/{tag}", t.surface),
            None => t.surface.clone(),
        })
        .collect();
    words.join(" ")
}

fn write_bitext(prefix: &Path, bitext: &Bitext) -> Result<()> {
    let lines = |side: fn(&SentencePair) -> &[lexcascade::Token]| -> String {
        bitext
            .pairs()
            .iter()
            .map(|p| side_line(side(p)) + "\n")
            .collect()
    };
    let with_ext = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        PathBuf::from(p)
    };
    emit(Some(&with_ext(".src")), &lines(SentencePair::source))?;
    emit(Some(&with_ext(".tgt")), &lines(SentencePair::target))
}

pub fn induce(a: &InduceArgs) -> Result<()> {
    let filters = parse_cascade(&a.filters)?;
    let lcsr = lcsr_params(&a.lcsr)?;
    if a.n == 0 {
        return Err(config_error("--n must be at least 1"));
    }
    if a.max_len == 0 {
        return Err(config_error("--max-len must be at least 1"));
    }
    if a.min_cooccurrence == 0 {
        return Err(config_error("--min-cooccurrence must be at least 1"));
    }
    let oracle = a.oracle.as_ref().map(load_oracle_list).transpose()?;
    let tags = match a.tag_map.as_deref() {
        None => None,
        Some("builtin") => Some(TagMatchTable::default()),
        Some(path) => Some(TagMatchTable::load(path)?),
    };
    let mut config = CascadeConfig::new(filters.clone()).with_lcsr(lcsr);
    if let Some(o) = &oracle {
        config = config.with_oracle(o);
    }
    if let Some(t) = &tags {
        config = config.with_tags(t);
    }
    config.validate()?;
    if filters.contains(&FilterKind::Pos) && !a.corpus.tagged {
        return Err(config_error("filter `pos` needs tagged input (--tagged)"));
    }

    let loaded = load(&a.source, &a.target, &a.corpus)?;
    let (train, held_out) = split_bitext(&loaded, a.holdout, a.seed)?;
    if let Some(prefix) = &a.holdout_prefix {
        write_bitext(prefix, &held_out)?;
    }
    let train = restrict_bitext(&train, a.max_len);
    let params = InduceParams {
        n: a.n,
        min_cooccurrence: a.min_cooccurrence,
    };
    let induction = with_workers(a.common.workers, |exec| {
        induce_with(&train, &config, params, exec)
    })??;

    let mut header = Header::default();
    header
        .set("command", "induce")
        .set("source", a.source.display())
        .set("target", a.target.display())
        .corpus(&a.corpus)
        .set("filters", cascade_to_string(&filters))
        .set("lcsr_cutoff", lcsr.cutoff())
        .set("min_alpha_len", lcsr.min_alpha_len())
        .set("max_len", a.max_len)
        .set("min_cooccurrence", a.min_cooccurrence)
        .set("seed", a.seed)
        .set("holdout", a.holdout)
        .set(
            "oracle",
            a.oracle.as_ref().map_or("none".into(), |p| p.display().to_string()),
        )
        .set("tag_map", a.tag_map.as_deref().unwrap_or("none"))
        .set("pairs_loaded", loaded.len())
        .set("pairs_used", train.len());
    let att = &induction.attrition;
    header.set("candidates.cross_product", att.cross_product);
    for (f, n) in &att.after {
        header.set(&format!("candidates.after_{f}"), n);
    }
    emit(a.common.output.as_deref(), &induction.lexicon.to_tsv(&header.0))?;

    let mut summary = format!(
        "pairs: {} loaded, {} held out, {} used (max length {})\n",
        loaded.len(),
        held_out.len(),
        train.len(),
        a.max_len
    );
    let _ = writeln!(summary, "{:<14}{:>12}", "cross-product", att.cross_product);
    let mut previous = att.cross_product;
    for (f, n) in &att.after {
        let removed = if previous == 0 {
            0.0
        } else {
            100.0 * (previous - n) as f64 / previous as f64
        };
        let _ = writeln!(summary, "{:<14}{:>12}  (-{removed:.1}%)", format!("after {f}"), n);
        previous = *n;
    }
    let _ = writeln!(summary, "lexicon: {} source words", induction.lexicon.len());
    eprint!("{summary}");
    Ok(())
}

fn rates_row(label: impl Display, rates: impl IntoIterator<Item = f64>) -> String {
    let mut row = label.to_string();
    for r in rates {
        let _ = write!(row, "\t{r}");
    }
    row.push('\n');
    row
}

fn warn_if_disjoint(report: &BibleReport, what: &str) {
    if report.lexicon_types == 0 {
        eprintln!("warning: no source word of {what} appears in the lexicon; its scores carry no information");
    }
}

pub fn evaluate(a: &EvaluateArgs) -> Result<()> {
    let mode: Mode = a.mode.parse()?;
    if a.splits == 0 {
        return Err(config_error("--splits must be at least 1"));
    }
    let lexicon = NBestLexicon::load(&a.lexicon)?;
    let test = load(&a.source, &a.target, &a.corpus)?;
    let parts = if a.splits > 1 {
        partition_bitext(&test, a.splits, a.seed)?
    } else {
        vec![]
    };

    let (report, split_reports) = with_workers(a.common.workers, |exec| {
        let report = evaluate_with(&lexicon, &test, mode, exec)?;
        let splits = parts
            .iter()
            .map(|p| evaluate_with(&lexicon, p, mode, exec))
            .collect::<lexcascade::Result<Vec<_>>>()?;
        Ok::<_, Error>((report, splits))
    })??;
    warn_if_disjoint(&report, "the test bitext");

    let mut header = Header::default();
    header
        .set("command", "evaluate")
        .set("lexicon", a.lexicon.display())
        .set("source", a.source.display())
        .set("target", a.target.display())
        .corpus(&a.corpus)
        .set("mode", mode)
        .set("n", lexicon.n_max())
        .set("splits", a.splits)
        .set("seed", a.seed);
    let mut out = report.to_tsv(&header.0);
    if !split_reports.is_empty() {
        out.push_str(&rates_row("split", (1..=report.n).map(|k| k as f64)));
        for (i, r) in split_reports.iter().enumerate() {
            out.push_str(&rates_row(i + 1, r.cumulative_hit_rate.iter().copied()));
        }
        let mut means = Vec::with_capacity(report.n);
        let mut widths = Vec::with_capacity(report.n);
        for k in 0..report.n {
            let scores: Vec<f64> = split_reports.iter().map(|r| r.cumulative_hit_rate[k]).collect();
            let s = aggregate_runs(&scores)?;
            means.push(s.mean);
            widths.push(s.ci95_half_width);
        }
        out.push_str(&rates_row("mean", means.iter().copied()));
        out.push_str(&rates_row("ci95", widths.iter().copied()));
        eprintln!(
            "{} at k=1: {:.4} ± {:.4} over {} splits",
            mode, means[0], widths[0], a.splits
        );
    } else {
        eprintln!("{} at k=1: {:.4} (recall {:.4})", mode, report.at(1), report.recall);
    }
    emit(a.common.output.as_deref(), &out)
}

pub fn translate(a: &TranslateArgs) -> Result<()> {
    let spec = load_chain_spec(&a.chain)?;
    let lexicons = spec
        .into_iter()
        .map(|(label, path)| Ok((label, NBestLexicon::load(path)?)))
        .collect::<Result<Vec<_>>>()?;
    let dev = load(&a.dev_source, &a.dev_target, &a.corpus)?;
    let test = load(&a.test_source, &a.test_target, &a.corpus)?;

    let (chain, score, baseline, body) = with_workers(a.common.workers, |exec| {
        let chain = order_chain_with(lexicons, &dev, exec)?;
        let score = score_corpus_with(&chain, &test, exec)?;
        let baseline = score_corpus_with(&chain.last_only(), &test, exec)?;
        let body = translations_to_tsv(&chain, &test, exec);
        Ok::<_, Error>((chain, score, baseline, body))
    })??;

    let order: Vec<String> = chain
        .links()
        .iter()
        .map(|l| format!("{}:{}", l.label, l.precision))
        .collect();
    let ratio = if baseline.correct == 0 {
        "undefined".to_owned()
    } else {
        (score.percent_correct() / baseline.percent_correct()).to_string()
    };
    let base_label = &chain.links().last().expect("non-empty chain").label;
    let mut header = Header::default();
    header
        .set("command", "translate")
        .set("chain", a.chain.display())
        .set("dev_source", a.dev_source.display())
        .set("dev_target", a.dev_target.display())
        .set("test_source", a.test_source.display())
        .set("test_target", a.test_target.display())
        .corpus(&a.corpus)
        .set("chain_order", order.join(","))
        .set("tokens", score.total)
        .set("translated", score.translated)
        .set("correct", score.correct)
        .set("percent_correct", score.percent_correct())
        .set("baseline", base_label)
        .set("baseline_translated", baseline.translated)
        .set("baseline_percent_correct", baseline.percent_correct())
        .set("ratio_vs_baseline", &ratio);
    emit(a.common.output.as_deref(), &(header.render() + &body))?;
    eprintln!(
        "percent correct {:.4} vs baseline `{base_label}` {:.4} (ratio {ratio}); chain {}",
        score.percent_correct(),
        baseline.percent_correct(),
        order.join(" > ")
    );
    Ok(())
}

struct CognateRow {
    pair_id: usize,
    source_pos: usize,
    target_pos: usize,
    value: f64,
}

fn pair_cognates(pair: &SentencePair, params: &LcsrParams) -> Vec<CognateRow> {
    cognate_matches(pair, params)
        .into_iter()
        .map(|l| {
            let s = &pair.source()[l.source_pos].surface;
            let t = &pair.target()[l.target_pos].surface;
            CognateRow {
                pair_id: pair.id(),
                source_pos: l.source_pos,
                target_pos: l.target_pos,
                value: lcsr_fraction(s, t).map_or(0.0, |r| r.value()),
            }
        })
        .collect()
}

pub fn cognates(a: &CognatesArgs) -> Result<()> {
    let params = lcsr_params(&a.lcsr)?;
    let bitext = load(&a.source, &a.target, &a.corpus)?;
    let per_pair: Vec<Vec<CognateRow>> = with_workers(a.common.workers, |exec| match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            bitext
                .pairs()
                .par_iter()
                .map(|p| pair_cognates(p, &params))
                .collect()
        }
        _ => bitext.pairs().iter().map(|p| pair_cognates(p, &params)).collect(),
    })?;

    let mut header = Header::default();
    header
        .set("command", "cognates")
        .set("source", a.source.display())
        .set("target", a.target.display())
        .corpus(&a.corpus)
        .set("lcsr_cutoff", params.cutoff())
        .set("min_alpha_len", params.min_alpha_len());
    let mut out = header.render();
    out.push_str("pair_id\tsource_pos\ttarget_pos\tsource\ttarget\tlcsr\n");
    let mut matched = 0usize;
    for (pair, rows) in bitext.pairs().iter().zip(&per_pair) {
        let mut positions: Vec<usize> = rows.iter().map(|r| r.source_pos).collect();
        positions.dedup();
        matched += positions.len();
        for r in rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{:.4}",
                r.pair_id,
                r.source_pos,
                r.target_pos,
                pair.source()[r.source_pos].surface,
                pair.target()[r.target_pos].surface,
                r.value
            );
        }
    }
    let total = bitext.source_token_count();
    let fraction = if total == 0 {
        0.0
    } else {
        matched as f64 / total as f64
    };
    let _ = writeln!(out, "# matched_source_tokens={matched}");
    let _ = writeln!(out, "# source_tokens={total}");
    let _ = writeln!(out, "# matched_fraction={fraction}");
    emit(a.common.output.as_deref(), &out)?;
    eprintln!("cognates found for {matched} of {total} source tokens ({:.1}%)", 100.0 * fraction);
    Ok(())
}
