//! Hand-built parses of textbook tense examples with their expected labels.
#![allow(dead_code)]

use tmv::conll::{Language, Sentence, Token};
use tmv::label::{Mood, Voice};
use tmv::rules::Classifier;
use tmv::vc::{extract_vcs, Finiteness, Scheme};

/// One annotated example: the complex containing token `target` must get
/// exactly this label.
pub struct Gold {
    pub name: &'static str,
    pub sentence: Sentence,
    pub target: usize,
    pub tense: &'static str,
    pub mood: Mood,
    pub voice: Voice,
    pub finiteness: Finiteness,
    pub progressive: bool,
}

/// Tokens as `form/lemma/POS/head/deprel[/feats]`, separated by spaces.
pub fn parse(lang: Language, id: &str, spec: &str) -> Sentence {
    let tokens = spec
        .split_whitespace()
        .enumerate()
        .map(|(i, t)| {
            let f: Vec<&str> = t.split('/').collect();
            assert!(f.len() >= 5, "bad token spec {t}");
            let tok = Token::new(i + 1, f[0], f[1], f[2], f[3].parse().unwrap(), f[4]);
            match f.get(5) {
                Some(feats) => tok.with_features(feats),
                None => tok,
            }
        })
        .collect();
    Sentence::new(id, lang, tokens).unwrap()
}

#[allow(clippy::too_many_arguments)]
fn case(
    name: &'static str,
    lang: Language,
    spec: &str,
    target: usize,
    tense: &'static str,
    mood: Mood,
    voice: Voice,
    progressive: bool,
) -> Gold {
    Gold {
        name,
        sentence: parse(lang, name, spec),
        target,
        tense,
        mood,
        voice,
        finiteness: Finiteness::Finite,
        progressive,
    }
}

fn en(name: &'static str, spec: &str, target: usize, tense: &'static str, progressive: bool) -> Gold {
    case(
        name,
        Language::En,
        spec,
        target,
        tense,
        Mood::Indicative,
        Voice::Active,
        progressive,
    )
}

fn en_passive(name: &'static str, spec: &str, target: usize, tense: &'static str) -> Gold {
    case(
        name,
        Language::En,
        spec,
        target,
        tense,
        Mood::Indicative,
        Voice::Passive,
        false,
    )
}

fn de(name: &'static str, spec: &str, target: usize, tense: &'static str) -> Gold {
    let mood = if tense.starts_with("Konj") {
        Mood::Subjunctive
    } else {
        Mood::Indicative
    };
    case(name, Language::De, spec, target, tense, mood, Voice::Active, false)
}

fn de_passive(name: &'static str, spec: &str, target: usize, tense: &'static str) -> Gold {
    case(
        name,
        Language::De,
        spec,
        target,
        tense,
        Mood::Indicative,
        Voice::Passive,
        false,
    )
}

const IND_PRES: &str = "tense=pres|mood=ind";
const IND_PAST: &str = "tense=past|mood=ind";
const SUBJ_PRES: &str = "tense=pres|mood=subj";
const SUBJ_PAST: &str = "tense=past|mood=subj";

pub fn gold_suite() -> Vec<Gold> {
    vec![
        // English active paradigm, first person.
        en("en_present_simple", "I/I/PRP/2/SBJ read/read/VBP/0/ROOT ./././2/P", 2, "pres", false),
        en("en_present_progressive", "I/I/PRP/2/SBJ am/be/VBP/0/ROOT reading/read/VBG/2/VC ./././2/P", 3, "presProg", true),
        en("en_present_perfect", "I/I/PRP/2/SBJ have/have/VBP/0/ROOT read/read/VBN/2/VC ./././2/P", 3, "presPerf", false),
        en(
            "en_present_perfect_progressive",
            "I/I/PRP/2/SBJ have/have/VBP/0/ROOT been/be/VBN/2/VC reading/read/VBG/3/VC ./././2/P",
            4,
            "presPerfProg",
            true,
        ),
        en("en_future_will", "I/I/PRP/2/SBJ will/will/MD/0/ROOT read/read/VB/2/VC ./././2/P", 3, "futureI", false),
        en(
            "en_future_going_to",
            "I/I/PRP/2/SBJ am/be/VBP/0/ROOT going/go/VBG/2/VC to/to/TO/3/OPRD read/read/VB/4/IM ./././2/P",
            5,
            "futureI",
            false,
        ),
        en(
            "en_future_progressive_will",
            "I/I/PRP/2/SBJ will/will/MD/0/ROOT be/be/VB/2/VC reading/read/VBG/3/VC ./././2/P",
            4,
            "futureIProg",
            true,
        ),
        en(
            "en_future_progressive_going_to",
            "I/I/PRP/2/SBJ am/be/VBP/0/ROOT going/go/VBG/2/VC to/to/TO/3/OPRD be/be/VB/4/IM reading/read/VBG/5/VC ./././2/P",
            6,
            "futureIProg",
            true,
        ),
        en(
            "en_future_perfect",
            "I/I/PRP/2/SBJ will/will/MD/0/ROOT have/have/VB/2/VC read/read/VBN/3/VC ./././2/P",
            4,
            "futureII",
            false,
        ),
        en(
            "en_future_perfect_progressive",
            "I/I/PRP/2/SBJ will/will/MD/0/ROOT have/have/VB/2/VC been/be/VBN/3/VC reading/read/VBG/4/VC ./././2/P",
            5,
            "futureIIProg",
            true,
        ),
        en("en_past_simple", "I/I/PRP/2/SBJ read/read/VBD/0/ROOT ./././2/P", 2, "past", false),
        en("en_past_progressive", "I/I/PRP/2/SBJ was/be/VBD/0/ROOT reading/read/VBG/2/VC ./././2/P", 3, "pastProg", true),
        en("en_past_perfect", "I/I/PRP/2/SBJ had/have/VBD/0/ROOT read/read/VBN/2/VC ./././2/P", 3, "pastPerf", false),
        en(
            "en_past_perfect_progressive",
            "I/I/PRP/2/SBJ had/have/VBD/0/ROOT been/be/VBN/2/VC reading/read/VBG/3/VC ./././2/P",
            4,
            "pastPerfProg",
            true,
        ),
        en("en_conditional", "I/I/PRP/2/SBJ would/would/MD/0/ROOT read/read/VB/2/VC ./././2/P", 3, "condI", false),
        en(
            "en_conditional_progressive",
            "I/I/PRP/2/SBJ would/would/MD/0/ROOT be/be/VB/2/VC reading/read/VBG/3/VC ./././2/P",
            4,
            "condIProg",
            true,
        ),
        en(
            "en_conditional_perfect",
            "I/I/PRP/2/SBJ would/would/MD/0/ROOT have/have/VB/2/VC read/read/VBN/3/VC ./././2/P",
            4,
            "condII",
            false,
        ),
        en(
            "en_conditional_perfect_progressive",
            "I/I/PRP/2/SBJ would/would/MD/0/ROOT have/have/VB/2/VC been/be/VBN/3/VC reading/read/VBG/4/VC ./././2/P",
            5,
            "condIIProg",
            true,
        ),
        // German active paradigm.
        de("de_praesens", &format!("Ich/ich/PPER/2/SB lese/lesen/VVFIN/0/ROOT/{IND_PRES} ./././2/PUNC"), 2, "Präsens"),
        de(
            "de_perfekt",
            &format!("Ich/ich/PPER/2/SB habe/haben/VAFIN/0/ROOT/{IND_PRES} gelesen/lesen/VVPP/2/OC ./././2/PUNC"),
            3,
            "Perfekt",
        ),
        de(
            "de_futur_1",
            &format!("Ich/ich/PPER/2/SB werde/werden/VAFIN/0/ROOT/{IND_PRES} lesen/lesen/VVINF/2/OC ./././2/PUNC"),
            3,
            "Futur I",
        ),
        de(
            "de_futur_2",
            &format!(
                "Ich/ich/PPER/2/SB werde/werden/VAFIN/0/ROOT/{IND_PRES} gelesen/lesen/VVPP/4/OC haben/haben/VAINF/2/OC ./././2/PUNC"
            ),
            3,
            "Futur II",
        ),
        de("de_praeteritum", &format!("Ich/ich/PPER/2/SB las/lesen/VVFIN/0/ROOT/{IND_PAST} ./././2/PUNC"), 2, "Präteritum"),
        de(
            "de_plusquamperfekt",
            &format!("Ich/ich/PPER/2/SB hatte/haben/VAFIN/0/ROOT/{IND_PAST} gelesen/lesen/VVPP/2/OC ./././2/PUNC"),
            3,
            "Pluperfekt",
        ),
        de(
            "de_konj2_wuerde",
            &format!("Ich/ich/PPER/2/SB würde/werden/VAFIN/0/ROOT/{SUBJ_PAST} lesen/lesen/VVINF/2/OC ./././2/PUNC"),
            3,
            "Konj II pres",
        ),
        de(
            "de_konj2_past",
            &format!("Ich/ich/PPER/2/SB hätte/haben/VAFIN/0/ROOT/{SUBJ_PAST} gelesen/lesen/VVPP/2/OC ./././2/PUNC"),
            3,
            "Konj II past",
        ),
        de("de_konj1_synthetic", &format!("Er/er/PPER/2/SB lese/lesen/VVFIN/0/ROOT/{SUBJ_PRES} ./././2/PUNC"), 2, "Konj I pres"),
        de(
            "de_konj1_werde",
            &format!("Er/er/PPER/2/SB werde/werden/VAFIN/0/ROOT/{SUBJ_PRES} lesen/lesen/VVINF/2/OC ./././2/PUNC"),
            3,
            "Konj I pres",
        ),
        de(
            "de_konj1_past",
            &format!("Er/er/PPER/2/SB habe/haben/VAFIN/0/ROOT/{SUBJ_PRES} gelesen/lesen/VVPP/2/OC ./././2/PUNC"),
            3,
            "Konj I past",
        ),
        de("de_konj2_synthetic", &format!("Er/er/PPER/2/SB läse/lesen/VVFIN/0/ROOT/{SUBJ_PAST} ./././2/PUNC"), 2, "Konj II pres"),
        de(
            "de_konj2_past_sein",
            &format!("Er/er/PPER/2/SB wäre/sein/VAFIN/0/ROOT/{SUBJ_PAST} gekommen/kommen/VVPP/2/OC ./././2/PUNC"),
            3,
            "Konj II past",
        ),
        de(
            "de_konj1_past_sein",
            &format!("Er/er/PPER/2/SB sei/sein/VAFIN/0/ROOT/{SUBJ_PRES} gekommen/kommen/VVPP/2/OC ./././2/PUNC"),
            3,
            "Konj I past",
        ),
        // Passives.
        en_passive(
            "en_passive_past",
            "The/the/DT/2/NMOD book/book/NN/3/SBJ was/be/VBD/0/ROOT read/read/VBN/3/VC ./././3/P",
            4,
            "past",
        ),
        en_passive(
            "en_passive_present_perfect",
            "The/the/DT/2/NMOD book/book/NN/3/SBJ has/have/VBZ/0/ROOT been/be/VBN/3/VC read/read/VBN/4/VC ./././3/P",
            5,
            "presPerf",
        ),
        de_passive(
            "de_passive_praesens",
            &format!("Das/der/ART/2/NK Buch/Buch/NN/3/SB wird/werden/VAFIN/0/ROOT/{IND_PRES} gelesen/lesen/VVPP/3/OC ./././3/PUNC"),
            4,
            "Präsens",
        ),
        de_passive(
            "de_passive_praeteritum",
            &format!("Das/der/ART/2/NK Buch/Buch/NN/3/SB wurde/werden/VAFIN/0/ROOT/{IND_PAST} gelesen/lesen/VVPP/3/OC ./././3/PUNC"),
            4,
            "Präteritum",
        ),
        de_passive(
            "de_passive_perfekt",
            &format!(
                "Das/der/ART/2/NK Buch/Buch/NN/3/SB ist/sein/VAFIN/0/ROOT/{IND_PRES} gelesen/lesen/VVPP/5/OC worden/werden/VAPP/3/OC ./././3/PUNC"
            ),
            4,
            "Perfekt",
        ),
        // Uses of the tenses.
        de(
            "de_nonpast",
            &format!(
                "Ich/ich/PPER/2/SB schlafe/schlafen/VVFIN/0/ROOT/{IND_PRES} von/von/APPR/2/MO 12/12/CARD/3/NK bis/bis/APPR/2/MO 7/7/CARD/5/NK ./././2/PUNC"
            ),
            2,
            "Präsens",
        ),
        en(
            "en_nonpast",
            "I/I/PRP/2/SBJ sleep/sleep/VBP/0/ROOT from/from/IN/2/TMP midnight/midnight/NN/3/PMOD to/to/IN/2/TMP seven/seven/CD/5/PMOD ./././2/P",
            2,
            "pres",
            false,
        ),
        de(
            "de_futurate",
            &format!("Morgen/morgen/ADV/2/MO weiß/wissen/VVFIN/0/ROOT/{IND_PRES} ich/ich/PPER/2/SB das/das/PDS/2/OA ./././2/PUNC"),
            2,
            "Präsens",
        ),
        en(
            "en_future_know",
            "I/I/PRP/2/SBJ will/will/MD/0/ROOT know/know/VB/2/VC that/that/DT/3/OBJ tomorrow/tomorrow/NN/3/TMP ./././2/P",
            3,
            "futureI",
            false,
        ),
        de(
            "de_past_time",
            &format!(
                "Ich/ich/PPER/2/SB schlief/schlafen/VVFIN/0/ROOT/{IND_PAST} den/der/ART/5/NK ganzen/ganz/ADJA/5/NK Tag/Tag/NN/2/OA ./././2/PUNC"
            ),
            2,
            "Präteritum",
        ),
        en(
            "en_past_time",
            "I/I/PRP/2/SBJ slept/sleep/VBD/0/ROOT the/the/DT/5/NMOD whole/whole/JJ/5/NMOD day/day/NN/2/TMP ./././2/P",
            2,
            "past",
            false,
        ),
        de(
            "de_future_time",
            &format!("Ich/ich/PPER/2/SB werde/werden/VAFIN/0/ROOT/{IND_PRES} schlafen/schlafen/VVINF/2/OC ./././2/PUNC"),
            3,
            "Futur I",
        ),
        en("en_future_sleep", "I/I/PRP/2/SBJ will/will/MD/0/ROOT sleep/sleep/VB/2/VC ./././2/P", 3, "futureI", false),
        en(
            "en_going_to_sleep",
            "I/I/PRP/2/SBJ am/be/VBP/0/ROOT going/go/VBG/2/VC to/to/TO/3/OPRD sleep/sleep/VB/4/IM ./././2/P",
            5,
            "futureI",
            false,
        ),
        de(
            "de_resultative",
            &format!(
                "Jemand/jemand/PIS/2/SB hat/haben/VAFIN/0/ROOT/{IND_PRES} mein/mein/PPOSAT/4/NK Auto/Auto/NN/5/OA gestohlen/stehlen/VVPP/2/OC ./././2/PUNC"
            ),
            5,
            "Perfekt",
        ),
        en(
            "en_resultative",
            "Someone/someone/NN/2/SBJ has/have/VBZ/0/ROOT stolen/steal/VBN/2/VC my/my/PRP$/5/NMOD car/car/NN/3/OBJ ./././2/P",
            3,
            "presPerf",
            false,
        ),
        de(
            "de_existential",
            &format!(
                "Ich/ich/PPER/2/SB habe/haben/VAFIN/0/ROOT/{IND_PRES} schon/schon/ADV/7/MO mal/mal/ADV/7/MO Tennis/Tennis/NN/7/OA gespielt/spielen/VVPP/2/OC ./././2/PUNC"
            ),
            6,
            "Perfekt",
        ),
        en(
            "en_existential",
            "I/I/PRP/2/SBJ have/have/VBP/0/ROOT played/play/VBN/2/VC tennis/tennis/NN/3/OBJ ./././2/P",
            3,
            "presPerf",
            false,
        ),
        de(
            "de_hot_news",
            &format!(
                "Kanzler/Kanzler/NN/2/PNC Schröder/Schröder/NE/3/SB ist/sein/VAFIN/0/ROOT/{IND_PRES} zurückgetreten/zurücktreten/VVPP/3/OC ./././3/PUNC"
            ),
            4,
            "Perfekt",
        ),
        en(
            "en_hot_news",
            "Chancellor/chancellor/NNP/2/NAME Schröder/Schröder/NNP/3/SBJ has/have/VBZ/0/ROOT resigned/resign/VBN/3/VC ./././3/P",
            4,
            "presPerf",
            false,
        ),
        de(
            "de_universal",
            &format!(
                "Ich/ich/PPER/2/SB lebe/leben/VVFIN/0/ROOT/{IND_PRES} hier/hier/ADV/2/MO seit/seit/APPR/2/MO 2/2/CARD/6/NK jahren/Jahr/NN/4/NK ./././2/PUNC"
            ),
            2,
            "Präsens",
        ),
        en(
            "en_universal",
            "I/I/PRP/2/SBJ have/have/VBP/0/ROOT lived/live/VBN/2/VC here/here/RB/3/LOC for/for/IN/3/TMP two/two/CD/7/NMOD years/year/NNS/5/PMOD ./././2/P",
            3,
            "presPerf",
            false,
        ),
        de(
            "de_narrative",
            &format!(
                "Ich/ich/PPER/2/SB bin/sein/VAFIN/0/ROOT/{IND_PRES} gestern/gestern/ADV/7/MO im/in/APPRART/7/MO Theater/Theater/NN/4/NK gewesen/sein/VAPP/2/OC ./././2/PUNC"
            ),
            6,
            "Perfekt",
        ),
        en(
            "en_narrative",
            "I/I/PRP/2/SBJ was/be/VBD/0/ROOT in/in/IN/2/LOC-PRD theater/theater/NN/3/PMOD yesterday/yesterday/NN/2/TMP ./././2/P",
            2,
            "past",
            false,
        ),
        de(
            "de_future_results",
            &format!(
                "Ich/ich/PPER/2/SB werde/werden/VAFIN/0/ROOT/{IND_PRES} das/das/PDS/7/OA bis/bis/APPR/7/MO morgen/morgen/ADV/4/NK erledigt/erledigen/VVPP/7/OC haben/haben/VAINF/2/OC ./././2/PUNC"
            ),
            6,
            "Futur II",
        ),
        en(
            "en_future_results",
            "I/I/PRP/2/SBJ will/will/MD/0/ROOT have/have/VB/2/VC done/do/VBN/3/VC this/this/DT/4/OBJ by/by/IN/4/TMP tomorrow/tomorrow/NN/6/PMOD ./././2/P",
            4,
            "futureII",
            false,
        ),
        de(
            "de_pre_past",
            &format!("Ich/ich/PPER/2/SB hatte/haben/VAFIN/0/ROOT/{IND_PAST} geschlafen/schlafen/VVPP/2/OC ./././2/PUNC"),
            3,
            "Pluperfekt",
        ),
        en("en_pre_past", "I/I/PRP/2/SBJ had/have/VBD/0/ROOT slept/sleep/VBN/2/VC ./././2/P", 3, "pastPerf", false),
        // Free factive Konjunktiv II and futurate Präsens.
        de(
            "de_free_factive",
            &format!(
                "Ich/ich/PPER/2/SB hätte/haben/VAFIN/0/ROOT/{SUBJ_PAST} gern/gern/ADV/2/MO ein/ein/ART/6/NK Glas/Glas/NN/2/OA Wasser/Wasser/NN/5/NK ./././2/PUNC"
            ),
            2,
            "Konj II pres",
        ),
        de(
            "de_futurate_adverb",
            &format!("Ich/ich/PPER/2/SB komme/kommen/VVFIN/0/ROOT/{IND_PRES} morgen/morgen/ADV/2/MO ./././2/PUNC"),
            2,
            "Präsens",
        ),
        de(
            "de_futurate_question",
            &format!("Kommst/kommen/VVFIN/0/ROOT/{IND_PRES} du/du/PPER/1/SB morgen/morgen/ADV/1/MO ?/?/$./1/PUNC"),
            1,
            "Präsens",
        ),
        de(
            "de_futurate_answer",
            &format!("Ja/ja/PTKANT/4/MO ,/,/$,/4/PUNC ich/ich/PPER/4/SB komme/kommen/VVFIN/0/ROOT/{IND_PRES} ./././4/PUNC"),
            4,
            "Präsens",
        ),
    ]
}

/// Classifies the complex containing the target token.
pub fn classify(g: &Gold, classifier: &Classifier) -> Option<tmv::label::TmvLabel> {
    extract_vcs(&g.sentence, Scheme::Chain)
        .into_iter()
        .find(|vc| vc.contains(g.target))
        .map(|vc| classifier.classify(&vc, &g.sentence))
}

/// `None` when the label matches, else a description of the mismatch.
pub fn check(g: &Gold, classifier: &Classifier) -> Option<String> {
    let Some(l) = classify(g, classifier) else {
        return Some(format!("{}: no complex contains token {}", g.name, g.target));
    };
    let got = (l.display(), l.mood, l.voice, l.finiteness, l.progressive);
    let want = (g.tense, g.mood, g.voice, g.finiteness, g.progressive);
    (got != want).then(|| format!("{}: expected {:?}, got {:?}", g.name, want, got))
}

pub const DRUGS_EN: &str = include_str!("../../data/samples/drugs.en.conllu");
pub const DRUGS_DE: &str = include_str!("../../data/samples/drugs.de.conllu");
pub const DRUGS_ALIGN: &str = include_str!("../../data/samples/drugs.align");
