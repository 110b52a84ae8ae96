//! Monolingual statistics: tense distribution under a filter and the share
//! of non-finite complexes.

use tmv::conll::Language;
use tmv::label::Voice;
use tmv::pipeline::{annotate_sentence, PipelineConfig};
use tmv::stats::{FinitenessRatio, Grouping, LabelRecord, TenseDistribution, VcFilter};
use tmv::synth;

fn main() {
    let cfg = PipelineConfig::default();
    let mut en = Vec::new();
    let mut de = Vec::new();
    for p in synth::corpus("dist", 600) {
        for (side, out) in [(p.en.sentence, &mut en), (p.de.sentence, &mut de)] {
            let a = annotate_sentence(side, cfg.scheme, &cfg.classifier);
            out.extend(a.vcs.iter().map(|(vc, l)| LabelRecord::from_vc(vc, l)));
        }
    }

    let ind = TenseDistribution::from_records(Language::De, Grouping::Fine, VcFilter::indicative_active(), "dist", &de);
    println!(
        "German indicative active ({} complexes):\n{}",
        ind.total(),
        ind.to_csv()
    );

    let passive = VcFilter {
        voice: Some(Voice::Passive),
        ..VcFilter::all()
    };
    let grouped = TenseDistribution::from_records(Language::De, Grouping::Mood, passive, "dist", &de);
    println!("German passives by mood group:\n{}", grouped.to_csv());

    for (lang, recs) in [("en", &en), ("de", &de)] {
        let r = FinitenessRatio::from_records(recs.iter());
        println!(
            "{lang}: {} of {} complexes non-finite ({:.3})",
            r.non_finite,
            r.total,
            r.ratio()
        );
    }
}
