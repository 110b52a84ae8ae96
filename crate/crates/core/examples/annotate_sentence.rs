//! Annotate the verbal complexes of a parsed file.
//!
//! ```text
//! cargo run --example annotate_sentence
//! cargo run --example annotate_sentence -- path/to/file.conllu de
//! ```

use std::fs::File;
use std::io::{self, BufReader};

use tmv::conll::{ColumnLayout, ConllReader, Language, ReaderOptions};
use tmv::output::write_annotated;
use tmv::rules::Classifier;
use tmv::vc::{extract_vcs, Scheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/samples/drugs.de.conllu").to_owned());
    let lang: Language = args.next().as_deref().unwrap_or("de").parse()?;

    let reader = ConllReader::new(
        BufReader::new(File::open(&path)?),
        ReaderOptions::new(lang, ColumnLayout::Conllu),
    );
    let classifier = Classifier::default();
    let mut annotated = Vec::new();
    for sentence in reader {
        let sentence = sentence?;
        let vcs = extract_vcs(&sentence, Scheme::Chain)
            .into_iter()
            .map(|vc| {
                let label = classifier.classify(&vc, &sentence);
                (vc, label)
            })
            .collect();
        annotated.push((sentence, vcs));
    }
    write_annotated(io::stdout().lock(), &annotated)?;
    Ok(())
}
