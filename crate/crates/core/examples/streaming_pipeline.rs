//! Streaming annotation and pairing over parallel files with a worker pool.
//! Output is identical for any number of workers.

use std::io::Cursor;

use tmv::alignment::{AlignmentReader, Indexing};
use tmv::conll::{ColumnLayout, ConllReader, Language, ReaderOptions};
use tmv::output::{write_pair_header, write_pair_row};
use tmv::pipeline::{pair_stream, PipelineConfig};
use tmv::synth;

fn run(en: &[u8], de: &[u8], align: &[u8], workers: usize) -> Result<(Vec<u8>, String), Box<dyn std::error::Error>> {
    let cfg = PipelineConfig {
        parallelism: workers,
        chunk_size: 256,
        ..PipelineConfig::default()
    };
    let mut out = Vec::new();
    write_pair_header(&mut out)?;
    let summary = pair_stream(
        ConllReader::new(Cursor::new(en), ReaderOptions::new(Language::En, ColumnLayout::Conllu)),
        ConllReader::new(Cursor::new(de), ReaderOptions::new(Language::De, ColumnLayout::Conllu)),
        AlignmentReader::new(Cursor::new(align), Indexing::ZeroBased),
        &cfg,
        |w| eprintln!("warning: {w}"),
        |p| {
            for pair in &p.outcome.pairs {
                write_pair_row(&mut out, pair, &p.en.sentence, &p.de.sentence)?;
            }
            Ok(())
        },
    )?;
    Ok((out, summary.render()))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = synth::corpus("stream", 2000);
    let (mut en, mut de, mut align) = (Vec::new(), Vec::new(), Vec::new());
    synth::write_parallel(&pairs, &mut en, &mut de, &mut align)?;

    let (one, summary) = run(&en, &de, &align, 1)?;
    let (four, _) = run(&en, &de, &align, 4)?;
    println!("{summary}");
    println!("identical output with 1 and 4 workers: {}", one == four);
    for line in String::from_utf8(one)?.lines().take(5) {
        println!("{line}");
    }
    Ok(())
}
