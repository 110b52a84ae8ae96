use std::collections::BTreeSet;
use std::io::Cursor;

use proptest::prelude::*;
use tmv::alignment::{AlignmentReader, Indexing};
use tmv::conll::{parse_conll, write_conll, ColumnLayout, ConllReader, Language, ReaderOptions, Sentence, Token};
use tmv::label::{Mood, Tense, Voice};
use tmv::pipeline::{pair_sentences, pair_stream, PipelineConfig};
use tmv::rules::Classifier;
use tmv::stats::{CorrespondenceMatrix, Direction, MatrixSpec, PairRecord};
use tmv::synth::{self, Spec};
use tmv::tagset::is_verb;
use tmv::vc::{extract_vcs, Scheme};

const EN_WORDS: &[(&str, &str, &str)] = &[
    ("will", "will", "MD"),
    ("would", "would", "MD"),
    ("may", "may", "MD"),
    ("have", "have", "VBP"),
    ("has", "have", "VBZ"),
    ("had", "have", "VBD"),
    ("be", "be", "VB"),
    ("been", "be", "VBN"),
    ("is", "be", "VBZ"),
    ("was", "be", "VBD"),
    ("am", "be", "VBP"),
    ("going", "go", "VBG"),
    ("to", "to", "TO"),
    ("read", "read", "VB"),
    ("read", "read", "VBD"),
    ("read", "read", "VBN"),
    ("reading", "read", "VBG"),
    ("reads", "read", "VBZ"),
    ("sleep", "sleep", "VBP"),
    ("I", "I", "PRP"),
    ("book", "book", "NN"),
    ("the", "the", "DT"),
    ("tomorrow", "tomorrow", "NN"),
    (".", ".", "."),
];
const EN_RELS: &[&str] = &["SBJ", "OBJ", "VC", "OC", "PRD", "IM", "NMOD", "ADV", "P", "OPRD", "TMP"];

const DE_WORDS: &[(&str, &str, &str)] = &[
    ("bin", "sein", "VAFIN"),
    ("ist", "sein", "VAFIN"),
    ("sei", "sein", "VAFIN"),
    ("wäre", "sein", "VAFIN"),
    ("hat", "haben", "VAFIN"),
    ("hätte", "haben", "VAFIN"),
    ("wird", "werden", "VAFIN"),
    ("würde", "werden", "VAFIN"),
    ("werden", "werden", "VAINF"),
    ("worden", "werden", "VAPP"),
    ("haben", "haben", "VAINF"),
    ("sein", "sein", "VAINF"),
    ("kann", "können", "VMFIN"),
    ("könnte", "können", "VMFIN"),
    ("liest", "lesen", "VVFIN"),
    ("las", "lesen", "VVFIN"),
    ("lies", "lesen", "VVIMP"),
    ("lesen", "lesen", "VVINF"),
    ("gelesen", "lesen", "VVPP"),
    ("zu", "zu", "PTKZU"),
    ("vorzulesen", "vorlesen", "VVIZU"),
    ("Buch", "Buch", "NN"),
    ("er", "er", "PPER"),
    ("morgen", "morgen", "ADV"),
    (".", ".", "$."),
];
const DE_RELS: &[&str] = &["SB", "OA", "OC", "PD", "MO", "NK", "PUNC", "RE", "CJ", "PM"];
const FEATS: &[&str] = &[
    "",
    "tense=pres|mood=ind",
    "tense=past|mood=ind",
    "tense=pres|mood=subj",
    "tense=past|mood=subj",
];

/// Random dependency tree: tokens are attached in a random order, each to
/// one attached earlier (the first to the root).
fn tree(lang: Language) -> impl Strategy<Value = Sentence> {
    let (words, rels) = match lang {
        Language::En => (EN_WORDS, EN_RELS),
        Language::De => (DE_WORDS, DE_RELS),
    };
    (1usize..12)
        .prop_flat_map(move |n| {
            (
                Just(n),
                Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
                prop::collection::vec(
                    (
                        0..words.len(),
                        0..rels.len(),
                        0..FEATS.len(),
                        any::<prop::sample::Index>(),
                    ),
                    n,
                ),
            )
        })
        .prop_map(move |(n, order, picks)| {
            let mut heads = vec![0; n + 1];
            for (k, &tok) in order.iter().enumerate().skip(1) {
                heads[tok] = order[picks[k].3.index(k)];
            }
            let tokens = (1..=n)
                .map(|i| {
                    let (w, r, f, _) = picks[i - 1];
                    let (form, lemma, pos) = words[w];
                    let rel = if heads[i] == 0 { "ROOT" } else { rels[r] };
                    Token::new(i, form, lemma, pos, heads[i], rel).with_features(FEATS[f])
                })
                .collect();
            Sentence::new("t", lang, tokens).expect("generated tree is valid")
        })
}

fn any_tree() -> impl Strategy<Value = Sentence> {
    prop_oneof![tree(Language::En), tree(Language::De)]
}

fn any_spec() -> impl Strategy<Value = Spec> {
    let en = Tense::inventory(Language::En);
    let de = Tense::inventory(Language::De);
    (any::<bool>(), any::<prop::sample::Index>(), any::<bool>(), 0usize..64).prop_map(
        move |(english, t, passive, variant)| {
            let tense = if english { t.get(&en) } else { t.get(&de) };
            Spec {
                tense: *tense,
                voice: if passive { Voice::Passive } else { Voice::Active },
                variant,
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn conll_round_trip(sentences in prop::collection::vec(tree(Language::De), 1..5)) {
        let sentences: Vec<Sentence> = sentences
            .into_iter()
            .enumerate()
            .map(|(i, s)| Sentence::new(format!("s{i}"), s.language, s.tokens).unwrap())
            .collect();
        let mut buf = Vec::new();
        write_conll(&mut buf, &sentences).unwrap();
        let back = parse_conll(Cursor::new(buf), ReaderOptions::new(Language::De, ColumnLayout::Conllu));
        prop_assert!(back.errors.is_empty(), "{:?}", back.errors);
        prop_assert_eq!(back.sentences, sentences);
    }

    #[test]
    fn labels_come_from_the_closed_inventory(s in any_tree()) {
        let c = Classifier::default();
        let inventory = Tense::inventory(s.language);
        for vc in extract_vcs(&s, Scheme::Chain) {
            let l = c.classify(&vc, &s);
            prop_assert_eq!(l.language, s.language);
            prop_assert!(inventory.contains(&l.tense));
            prop_assert_eq!(Tense::parse(l.display(), Some(s.language)), Some(l.tense));
        }
    }

    #[test]
    fn german_is_never_progressive(s in tree(Language::De)) {
        let c = Classifier::default();
        for vc in extract_vcs(&s, Scheme::Chain) {
            prop_assert!(!c.classify(&vc, &s).progressive);
        }
    }

    #[test]
    fn konjunktiv_tenses_go_with_subjunctive_mood(s in tree(Language::De)) {
        let c = Classifier::default();
        for vc in extract_vcs(&s, Scheme::Chain) {
            let l = c.classify(&vc, &s);
            let konj = matches!(l.tense, Tense::De(t) if t.is_konjunktiv());
            prop_assert_eq!(konj, l.mood == Mood::Subjunctive, "{:?}", l);
        }
    }

    #[test]
    fn complexes_partition_verbs(s in any_tree()) {
        let vcs = extract_vcs(&s, Scheme::Chain);
        let mut seen = BTreeSet::new();
        for vc in &vcs {
            prop_assert!(vc.members.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(vc.contains(vc.main_verb));
            prop_assert!(is_verb(s.token(vc.main_verb)));
            for &m in &vc.members {
                prop_assert!((1..=s.len()).contains(&m));
                prop_assert!(seen.insert(m), "token {} in two complexes", m);
            }
        }
        for t in &s.tokens {
            if is_verb(t) {
                prop_assert!(seen.contains(&t.index), "verb {} outside every complex", t.index);
            }
        }
    }

    #[test]
    fn voice_does_not_change_the_rest_of_the_label(spec in any_spec()) {
        let c = Classifier::default();
        let label = |voice| {
            let s = synth::sentence("v", Spec { voice, ..spec });
            let vc = extract_vcs(&s.sentence, Scheme::Chain)
                .into_iter()
                .find(|vc| vc.contains(s.main_verb()))
                .unwrap();
            c.classify(&vc, &s.sentence)
        };
        let (a, p) = (label(Voice::Active), label(Voice::Passive));
        prop_assert_eq!(a.voice, Voice::Active);
        prop_assert_eq!(p.voice, Voice::Passive);
        prop_assert_eq!((a.tense, a.mood, a.finiteness, a.progressive), (p.tense, p.mood, p.finiteness, p.progressive));
    }
}

fn naive_matrix(pairs: &[synth::SynthPair]) -> CorrespondenceMatrix {
    let cfg = PipelineConfig::default();
    let mut m = CorrespondenceMatrix::new(MatrixSpec::new(Direction::EnDe));
    for p in pairs {
        let out = pair_sentences(p.en.sentence.clone(), p.de.sentence.clone(), p.links.clone(), &cfg);
        for vp in &out.outcome.pairs {
            m.add(&PairRecord::from(vp));
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn streaming_counts_match_naive_recount(n in 1usize..300, workers in 1usize..5, chunk in 1usize..80) {
        let pairs = synth::corpus("p", n);
        let (mut en, mut de, mut al) = (Vec::new(), Vec::new(), Vec::new());
        synth::write_parallel(&pairs, &mut en, &mut de, &mut al).unwrap();
        let cfg = PipelineConfig { parallelism: workers, chunk_size: chunk, ..PipelineConfig::default() };
        let mut m = CorrespondenceMatrix::new(MatrixSpec::new(Direction::EnDe));
        let summary = pair_stream(
            ConllReader::new(Cursor::new(en), ReaderOptions::new(Language::En, ColumnLayout::Conllu)),
            ConllReader::new(Cursor::new(de), ReaderOptions::new(Language::De, ColumnLayout::Conllu)),
            AlignmentReader::new(Cursor::new(al), Indexing::ZeroBased),
            &cfg,
            |_| {},
            |p| {
                for vp in &p.outcome.pairs {
                    m.add(&PairRecord::from(vp));
                }
                Ok(())
            },
        )
        .unwrap();
        prop_assert_eq!(summary.errors, 0);
        prop_assert_eq!(m, naive_matrix(&pairs));
    }
}
