use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lexcascade::synth::SyntheticCorpus;
use lexcascade::Bitext;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lexcascade"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn write_bitext(dir: &Path, stem: &str, bitext: &Bitext) -> (PathBuf, PathBuf) {
    let side = |tgt: bool| -> String {
        bitext
            .pairs()
            .iter()
            .map(|p| {
                let toks = if tgt { p.target() } else { p.source() };
                toks.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ") + "\n"
            })
            .collect()
    };
    let (src, tgt) = (dir.join(format!("{stem}.src")), dir.join(format!("{stem}.tgt")));
    fs::write(&src, side(false)).unwrap();
    fs::write(&tgt, side(true)).unwrap();
    (src, tgt)
}

pub fn write_oracle(dir: &Path, syn: &SyntheticCorpus) -> PathBuf {
    let path = dir.join("oracle.tsv");
    let text: String = syn.oracle.iter().map(|(s, t)| format!("{s}\t{t}\n")).collect();
    fs::write(&path, text).unwrap();
    path
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}
