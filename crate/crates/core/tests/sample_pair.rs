mod common;

use std::io::Cursor;

use tmv::alignment::{parse_alignment, Indexing};
use tmv::conll::{parse_conll, ColumnLayout, Language, ReaderOptions};
use tmv::label::{DeTense, EnTense, Mood, Tense};
use tmv::pipeline::{pair_sentences, PipelineConfig};

#[test]
fn modal_sentence_pairs_present_with_konjunktiv_two() {
    let opts = |l| ReaderOptions::new(l, ColumnLayout::Conllu);
    let en = parse_conll(Cursor::new(common::DRUGS_EN), opts(Language::En));
    let de = parse_conll(Cursor::new(common::DRUGS_DE), opts(Language::De));
    let align = parse_alignment(Cursor::new(common::DRUGS_ALIGN), Indexing::ZeroBased).unwrap();
    assert!(en.errors.is_empty() && de.errors.is_empty());

    let paired = pair_sentences(
        en.sentences[0].clone(),
        de.sentences[0].clone(),
        align[0].clone(),
        &PipelineConfig::default(),
    );
    let out = &paired.outcome;
    assert_eq!(out.pairs.len(), 1);
    assert!(out.unpaired_en.is_empty() && out.unpaired_de.is_empty());

    let p = &out.pairs[0];
    assert_eq!(p.en.0.members, vec![3, 4]);
    assert_eq!(p.de.0.members, vec![3, 7]);
    assert_eq!(p.en.1.tense, Tense::En(EnTense::PresentSimple));
    assert_eq!(p.de.1.tense, Tense::De(DeTense::KonjunktivIIPresent));
    assert_eq!(p.de.1.mood, Mood::Subjunctive);
    assert_eq!(p.link_count, 2);
    assert!(p.main_verb_aligned);
}
