//! Reproduction mode on a synthetic stand-in corpus.
//!
//! The published corpus-level tables need the real parsed and aligned
//! corpora. This example builds a synthetic corpus whose labels realize
//! those tables, runs it through the full pipeline and compares.
//!
//! ```text
//! cargo run --release --example reproduce_corpus -- news
//! cargo run --release --example reproduce_corpus -- europarl /tmp/ep
//! ```
//!
//! With a directory argument the corpus is also written as CoNLL-U and
//! alignment files, ready for the command-line tool:
//!
//! ```text
//! tmv pairs --en /tmp/ep/en.conllu --de /tmp/ep/de.conllu --align /tmp/ep/align.txt \
//!     --annotated-en /tmp/ep/en.tsv --annotated-de /tmp/ep/de.tsv -o /tmp/ep/pairs.tsv
//! tmv stats --repro europarl /tmp/ep/pairs.tsv --vcs-en /tmp/ep/en.tsv --vcs-de /tmp/ep/de.tsv
//! ```

use std::fs::{self, File};
use std::path::PathBuf;

use tmv::repro::{reproduce, synthetic_corpus, synthetic_input, Corpus};
use tmv::synth::write_parallel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let corpus: Corpus = args.next().as_deref().unwrap_or("news").parse()?;
    let scale = 100;

    if let Some(dir) = args.next().map(PathBuf::from) {
        fs::create_dir_all(&dir)?;
        let pairs = synthetic_corpus(corpus, scale);
        write_parallel(
            &pairs,
            File::create(dir.join("en.conllu"))?,
            File::create(dir.join("de.conllu"))?,
            File::create(dir.join("align.txt"))?,
        )?;
        eprintln!("wrote {} sentence pairs to {}", pairs.len(), dir.display());
    }

    let report = reproduce(corpus, &synthetic_input(corpus, scale));
    print!("{}", report.render());
    Ok(())
}
