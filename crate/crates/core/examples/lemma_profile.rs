//! Tense preferences of individual lemmas: composed past (Perfekt,
//! Pluperfekt) against the simple Präteritum.

use tmv::conll::Language;
use tmv::label::{DeTense, Tense, Voice};
use tmv::pipeline::{annotate_sentence, PipelineConfig};
use tmv::stats::{lemma_tense_profile, LabelRecord};
use tmv::synth::{self, Spec};

fn main() {
    let cfg = PipelineConfig::default();
    let mut records = Vec::new();
    // A toy corpus where "sein" mostly appears in the Präteritum and
    // "denken" mostly in the Perfekt.
    let plan = [
        ("sein", DeTense::Praeteritum, 40),
        ("sein", DeTense::Perfekt, 3),
        ("denken", DeTense::Praeteritum, 10),
        ("denken", DeTense::Perfekt, 25),
        ("denken", DeTense::Plusquamperfekt, 5),
    ];
    let mut k = 0;
    for (lemma, tense, n) in plan {
        for _ in 0..n {
            k += 1;
            let spec = Spec::de(tense, Voice::Active).variant(synth::de_variant(lemma, 0));
            let a = annotate_sentence(
                synth::german(&format!("l-{k}"), spec).sentence,
                cfg.scheme,
                &cfg.classifier,
            );
            records.extend(a.vcs.iter().map(|(vc, l)| LabelRecord::from_vc(vc, l)));
        }
    }
    for lemma in ["sein", "denken"] {
        let p = lemma_tense_profile(&records, Language::De, lemma, Some(Voice::Active));
        let composed = p.count(Tense::De(DeTense::Perfekt)) + p.count(Tense::De(DeTense::Plusquamperfekt));
        let simple = p.count(Tense::De(DeTense::Praeteritum));
        println!("{lemma}: composed past {composed} vs. Präteritum {simple}");
        print!("{}", p.to_tsv());
    }
}
