//! Pair the verbal complexes of an aligned English/German sentence pair.

use std::fs::File;
use std::io::BufReader;

use tmv::alignment::{AlignmentReader, Indexing};
use tmv::conll::{ColumnLayout, ConllReader, Language, ReaderOptions};
use tmv::pipeline::{pair_sentences, PipelineConfig};

const DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/samples");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let open =
        |name: &str| -> std::io::Result<BufReader<File>> { Ok(BufReader::new(File::open(format!("{DIR}/{name}"))?)) };
    let en = ConllReader::new(
        open("drugs.en.conllu")?,
        ReaderOptions::new(Language::En, ColumnLayout::Conllu),
    );
    let de = ConllReader::new(
        open("drugs.de.conllu")?,
        ReaderOptions::new(Language::De, ColumnLayout::Conllu),
    );
    let align = AlignmentReader::new(open("drugs.align")?, Indexing::ZeroBased);

    let cfg = PipelineConfig::default();
    for ((e, d), a) in en.zip(de).zip(align) {
        let done = pair_sentences(e?, d?, a?, &cfg);
        for p in &done.outcome.pairs {
            let forms = |vc: &tmv::vc::VerbalComplex, s: &tmv::conll::Sentence| {
                vc.members
                    .iter()
                    .map(|i| s.token(*i).form.clone())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!(
                "{}: [{}] {} {}/{}  <->  [{}] {} {}/{}  links={} main_verb_aligned={}",
                p.pair_id,
                forms(&p.en.0, &done.en.sentence),
                p.en.1.display(),
                p.en.1.mood,
                p.en.1.voice,
                forms(&p.de.0, &done.de.sentence),
                p.de.1.display(),
                p.de.1.mood,
                p.de.1.voice,
                p.link_count,
                p.main_verb_aligned
            );
        }
        println!(
            "unpaired: en={} de={}",
            done.outcome.unpaired_en.len(),
            done.outcome.unpaired_de.len()
        );
    }
    Ok(())
}
