//! Correspondence matrices over a synthetic parallel corpus: fine and
//! mood-grouped labels, column filters, plot-data layout and merging of
//! per-shard aggregates.

use tmv::pipeline::{pair_sentences, PipelineConfig};
use tmv::stats::{CorrespondenceMatrix, Direction, Grouping, MatrixSpec, Merge, PairRecord};
use tmv::synth;

fn records(doc: &str, n: usize) -> Vec<PairRecord> {
    let cfg = PipelineConfig::default();
    synth::corpus(doc, n)
        .into_iter()
        .flat_map(|p| {
            let done = pair_sentences(p.en.sentence, p.de.sentence, p.links, &cfg);
            done.outcome.pairs.iter().map(PairRecord::from).collect::<Vec<_>>()
        })
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = records("shard-a", 300);
    let b = records("shard-b", 200);

    let spec = MatrixSpec::new(Direction::EnDe).rows(&["presPerf", "condI", "gerund"]);
    let left = CorrespondenceMatrix::from_pairs(spec.clone(), "shard-a", &a);
    let right = CorrespondenceMatrix::from_pairs(spec, "shard-b", &b);
    let merged = left.merge(&right)?;
    println!("fine labels, {} pairs:\n{}", merged.total(), merged.to_csv());

    let konj = MatrixSpec::new(Direction::EnDe)
        .grouping(Grouping::Mood)
        .cols(&["Konjunktiv I", "Konjunktiv II"]);
    let m = CorrespondenceMatrix::from_pairs(konj, "shard-a", &a);
    println!("Konjunktiv split (plot-data layout):\n{}", m.to_plot_data());

    let reverse = CorrespondenceMatrix::from_pairs(MatrixSpec::new(Direction::DeEn).rows(&["Perfekt"]), "shard-a", &a);
    println!("German Perfekt as source:\n{}", reverse.to_csv());
    Ok(())
}
