//! Rule-based tense/mood/voice classification of verbal complexes.
//!
//! The chain of a complex is read top-down as a sequence of layers. English:
//! a tense-bearing head (finite verb or modal), then optional do-support,
//! perfect (`have` + participle), progressive (`be` + -ing) and passive
//! (`be`/`get` + participle). German: the finite verb's tense and mood,
//! then future (`werden` + infinitive), perfect (`haben`/`sein` +
//! participle), passive (`werden` + participle) and modal layers.

use std::str::FromStr;

use crate::conll::{Language, Sentence, Token};
use crate::label::{DeTense, Diagnostics, EnBase, EnTense, Mood, Tense, TmvLabel, Voice};
use crate::lexicon::{MorphFallbackLexicon, MorphMood, MorphTense, Reading};
use crate::tagset::{self, AuxKind, VerbForm};
use crate::vc::{finiteness_of, Finiteness, VerbalComplex};

/// How English `could`/`might`/`should` set the base tense.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModalPreterite {
    #[default]
    Present,
    Past,
}

impl FromStr for ModalPreterite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "present" => Ok(ModalPreterite::Present),
            "past" => Ok(ModalPreterite::Past),
            _ => Err(format!("unknown modal_preterite '{s}' (expected present or past)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classifier {
    pub lexicon: MorphFallbackLexicon,
    pub modal_preterite: ModalPreterite,
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier {
            lexicon: MorphFallbackLexicon::default_german(),
            modal_preterite: ModalPreterite::Present,
        }
    }
}

impl Classifier {
    pub fn new(lexicon: MorphFallbackLexicon) -> Self {
        Classifier {
            lexicon,
            modal_preterite: ModalPreterite::Present,
        }
    }

    pub fn with_modal_preterite(mut self, mode: ModalPreterite) -> Self {
        self.modal_preterite = mode;
        self
    }

    pub fn classify(&self, vc: &VerbalComplex, sentence: &Sentence) -> TmvLabel {
        match vc.language {
            Language::En => self.classify_en(vc, sentence),
            Language::De => self.classify_de(vc, sentence),
        }
    }

    pub fn classify_en(&self, vc: &VerbalComplex, s: &Sentence) -> TmvLabel {
        let chain: Vec<&Token> = vc.effective_chain().into_iter().map(|i| s.token(i)).collect();
        let finiteness = finiteness_of(vc, s);
        let mut diag = Diagnostics {
            carried_context: !vc.carried.is_empty(),
            ..Diagnostics::default()
        };

        let mut base = EnBase::Present;
        let mut i = 0;
        if finiteness.is_finite() {
            let top = chain[0];
            match tagset::aux_kind(top, Language::En) {
                Some(AuxKind::Will) | Some(AuxKind::Shall) if chain.len() > 1 || top.pos == "MD" => {
                    base = EnBase::Future;
                    i = 1;
                }
                Some(AuxKind::Would) => {
                    base = EnBase::Conditional;
                    i = 1;
                }
                Some(AuxKind::OtherModal) => {
                    let form = top.form.to_lowercase();
                    if self.modal_preterite == ModalPreterite::Past
                        && matches!(form.as_str(), "could" | "might" | "should")
                    {
                        base = EnBase::Past;
                    }
                    i = 1;
                }
                _ => {
                    if en_is_past(top) {
                        base = EnBase::Past;
                    }
                }
            }
        }

        let mut perfect = false;
        let mut progressive = false;
        let mut passive = false;
        while i + 1 < chain.len() {
            let cur = chain[i];
            let next = chain[i + 1];
            let kind = tagset::aux_kind(cur, Language::En);
            match kind {
                Some(AuxKind::Do) if i == 0 && finiteness.is_finite() && en_is_base(next) => {}
                Some(AuxKind::Have) if en_is_participle(next) => perfect = true,
                Some(AuxKind::Be) if is_going_to(vc, s, &chain, i) => {
                    // be going to + infinitive; skip `going`
                    base = EnBase::Future;
                    i += 2;
                    continue;
                }
                Some(AuxKind::Be) if tagset::verb_form(next) == Some(VerbForm::PresentParticiple) => progressive = true,
                Some(AuxKind::Be) | Some(AuxKind::Get) if en_is_participle(next) => passive = true,
                _ => {
                    diag.unrecognized_pattern = true;
                    break;
                }
            }
            i += 1;
        }

        let (tense, mood, progressive) = if vc.imperative {
            (EnTense::PresentSimple, Mood::Imperative, false)
        } else {
            let tense = match finiteness {
                Finiteness::Finite => EnTense::finite(base, perfect, progressive),
                Finiteness::Gerund | Finiteness::Participle => EnTense::Gerund,
                Finiteness::ToInfinitive => EnTense::ToInfinitive,
                Finiteness::BareInfinitive => EnTense::BareInfinitive,
            };
            (tense, Mood::Indicative, progressive)
        };
        TmvLabel {
            language: Language::En,
            tense: Tense::En(tense),
            mood,
            voice: if passive { Voice::Passive } else { Voice::Active },
            finiteness,
            progressive,
            diagnostics: diag,
        }
    }

    pub fn classify_de(&self, vc: &VerbalComplex, s: &Sentence) -> TmvLabel {
        let chain: Vec<&Token> = vc.effective_chain().into_iter().map(|i| s.token(i)).collect();
        let finiteness = finiteness_of(vc, s);
        let mut diag = Diagnostics {
            carried_context: !vc.carried.is_empty(),
            ..Diagnostics::default()
        };

        let mut future = false;
        let mut perfect = false;
        let mut passive = false;
        let mut barrier = false;
        for w in chain.windows(2) {
            let (cur, next) = (w[0], w[1]);
            let next_inf = tagset::is_infinitive(next);
            let next_pp = tagset::is_participle(next);
            match tagset::aux_kind(cur, Language::De) {
                Some(AuxKind::Werden) if next_inf && !tagset::is_participle(cur) => {
                    if !barrier {
                        future = true;
                    }
                }
                Some(AuxKind::Werden) if next_pp => passive = true,
                Some(AuxKind::Haben) if next_pp => {
                    if !barrier {
                        perfect = true;
                    }
                }
                // Ersatzinfinitiv: "hat kommen können"
                Some(AuxKind::Haben) if next_inf && tagset::aux_kind(next, Language::De) == Some(AuxKind::DeModal) => {
                    if !barrier {
                        perfect = true;
                    }
                }
                Some(AuxKind::Sein) if next_pp => {
                    if takes_sein_perfect(next) {
                        if !barrier {
                            perfect = true;
                        }
                    } else {
                        passive = true;
                        diag.statal_passive = true;
                    }
                }
                Some(AuxKind::DeModal) if next_inf => barrier = true,
                _ => {
                    diag.unrecognized_pattern = true;
                    break;
                }
            }
        }

        let voice = if passive { Voice::Passive } else { Voice::Active };
        if vc.imperative {
            return TmvLabel {
                language: Language::De,
                tense: Tense::De(DeTense::Praesens),
                mood: Mood::Imperative,
                voice,
                finiteness,
                progressive: false,
                diagnostics: diag,
            };
        }
        if !finiteness.is_finite() {
            return TmvLabel {
                language: Language::De,
                tense: Tense::De(DeTense::Infinitive),
                mood: Mood::Indicative,
                voice,
                finiteness,
                progressive: false,
                diagnostics: diag,
            };
        }

        let (t, m) = self.finite_reading(chain[0], &mut diag);
        let tense = compose_de(t, m, perfect, future, &mut diag);
        TmvLabel {
            language: Language::De,
            tense: Tense::De(tense),
            mood: if tense.is_konjunktiv() {
                Mood::Subjunctive
            } else {
                Mood::Indicative
            },
            voice,
            finiteness,
            progressive: false,
            diagnostics: diag,
        }
    }

    /// Tense and mood of a German finite verb: morphology, then the
    /// fallback lexicon, then present indicative.
    fn finite_reading(&self, finite: &Token, diag: &mut Diagnostics) -> Reading {
        let morph_tense = finite.features.get("tense").and_then(|v| v.parse::<MorphTense>().ok());
        let morph_mood = finite.features.get("mood").and_then(|v| v.parse::<MorphMood>().ok());
        if let (Some(t), Some(m)) = (morph_tense, morph_mood) {
            return (t, m);
        }
        let readings = self.lexicon.lookup_any_pos(Language::De, &finite.form, &finite.pos);
        let candidates: Vec<Reading> = readings
            .iter()
            .copied()
            .filter(|(t, m)| morph_tense.is_none_or(|x| x == *t) && morph_mood.is_none_or(|x| x == *m))
            .collect();
        if !candidates.is_empty() {
            let moods: std::collections::BTreeSet<MorphMood> = candidates.iter().map(|r| r.1).collect();
            if moods.len() > 1 {
                diag.ambiguous_mood = true;
            }
            return candidates
                .iter()
                .copied()
                .find(|r| r.1 == MorphMood::Ind)
                .unwrap_or(candidates[0]);
        }
        if morph_tense.is_none() {
            diag.morph_guessed = true;
        }
        (
            morph_tense.unwrap_or(MorphTense::Pres),
            morph_mood.unwrap_or(MorphMood::Ind),
        )
    }
}

fn en_is_past(t: &Token) -> bool {
    t.pos == "VBD"
        || (!matches!(t.pos.as_str(), "VB" | "VBD" | "VBG" | "VBN" | "VBP" | "VBZ" | "MD")
            && t.features.get("Tense").is_some_and(|v| v.eq_ignore_ascii_case("Past")))
}

fn en_is_base(t: &Token) -> bool {
    tagset::verb_form(t) == Some(VerbForm::Infinitive)
}

/// Past participle; taggers often confuse VBN and VBD after `have`/`be`.
fn en_is_participle(t: &Token) -> bool {
    tagset::verb_form(t) == Some(VerbForm::PastParticiple) || t.pos == "VBD"
}

fn is_going_to(vc: &VerbalComplex, s: &Sentence, chain: &[&Token], i: usize) -> bool {
    let Some(going) = chain.get(i + 1) else { return false };
    let Some(inf) = chain.get(i + 2) else { return false };
    going.pos == "VBG"
        && tagset::norm_lemma(going) == "go"
        && en_is_base(inf)
        && vc.members.iter().any(|m| {
            let t = s.token(*m);
            tagset::is_infinitival_particle(t) && t.index > going.index && t.index < inf.index
        })
}

/// Verbs of motion and change of state that form the perfect with `sein`.
const SEIN_PERFECT: &[&str] = &[
    "sein",
    "werden",
    "bleiben",
    "gehen",
    "kommen",
    "fahren",
    "laufen",
    "fallen",
    "sterben",
    "geschehen",
    "passieren",
    "wachsen",
    "steigen",
    "sinken",
    "reisen",
    "fliegen",
    "treten",
    "entstehen",
    "erscheinen",
    "gelingen",
    "misslingen",
    "folgen",
    "begegnen",
    "verschwinden",
    "springen",
    "rennen",
    "schwimmen",
    "gelangen",
    "scheitern",
    "landen",
    "stürzen",
    "ziehen",
    "wandern",
    "eilen",
    "fliehen",
    "reiten",
    "kriechen",
    "gleiten",
    "schleichen",
    "sinken",
    "aufwachen",
    "einschlafen",
    "erwachen",
    "wachsen",
    "schmelzen",
    "platzen",
    "weichen",
    "geraten",
    "reifen",
    "explodieren",
    "rücken",
    "kehren",
    "stoßen",
    "brechen",
    "sprießen",
    "vergehen",
    "zerfallen",
    "starten",
    "wechseln",
    "umziehen",
    "stehen",
    "liegen",
    "sitzen",
];

fn takes_sein_perfect(participle: &Token) -> bool {
    let form = participle.form.to_lowercase();
    if form == "worden" || form == "geworden" || form == "gewesen" {
        return true;
    }
    let lemma = tagset::norm_lemma(participle);
    SEIN_PERFECT
        .iter()
        .any(|v| lemma == *v || (lemma.ends_with(v) && lemma.len() > v.len() + 1))
}

fn compose_de(t: MorphTense, m: MorphMood, perfect: bool, future: bool, diag: &mut Diagnostics) -> DeTense {
    use DeTense::*;
    use MorphMood::*;
    use MorphTense::*;
    match (future, perfect, t, m) {
        (false, false, Pres, Ind) => Praesens,
        (false, false, Past, Ind) => Praeteritum,
        (false, false, Pres, Subj) => KonjunktivIPresent,
        (false, false, Past, Subj) => KonjunktivIIPresent,
        (false, true, Pres, Ind) => Perfekt,
        (false, true, Past, Ind) => Plusquamperfekt,
        (false, true, Pres, Subj) => KonjunktivIPast,
        (false, true, Past, Subj) => KonjunktivIIPast,
        (true, false, Pres, Ind) => FuturI,
        (true, false, Pres, Subj) => KonjunktivIPresent,
        (true, false, Past, Subj) => KonjunktivIIPresent,
        (true, true, Pres, Ind) => FuturII,
        (true, true, Pres, Subj) => KonjunktivIPast,
        (true, true, Past, Subj) => KonjunktivIIPast,
        // "wurde lesen" has no tense reading
        (true, perf, Past, Ind) => {
            diag.unrecognized_pattern = true;
            if perf {
                Plusquamperfekt
            } else {
                Praeteritum
            }
        }
    }
}

/// Classifies with the shipped default lexicon.
pub fn classify_en(vc: &VerbalComplex, sentence: &Sentence) -> TmvLabel {
    Classifier::new(MorphFallbackLexicon::empty()).classify_en(vc, sentence)
}

pub fn classify_de(vc: &VerbalComplex, sentence: &Sentence, lexicon: &MorphFallbackLexicon) -> TmvLabel {
    Classifier::new(lexicon.clone()).classify_de(vc, sentence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vc::{extract_vcs, Scheme};

    fn build(lang: Language, rows: &[(&str, &str, &str, usize, &str, &str)]) -> Sentence {
        let tokens = rows
            .iter()
            .enumerate()
            .map(|(i, (f, l, p, h, r, m))| Token::new(i + 1, f, l, p, *h, r).with_features(m))
            .collect();
        Sentence::new("t-1", lang, tokens).unwrap()
    }

    fn only_label(s: &Sentence) -> TmvLabel {
        let vcs = extract_vcs(s, Scheme::Chain);
        assert_eq!(vcs.len(), 1, "{vcs:?}");
        Classifier::default().classify(&vcs[0], s)
    }

    /// English chain with subject "I" and verbs hanging off each other via VC.
    fn en_chain(verbs: &[(&str, &str, &str)]) -> Sentence {
        let mut rows = vec![("I", "I", "PRP", 2, "SBJ", "")];
        for (k, (f, l, p)) in verbs.iter().enumerate() {
            let head = if k == 0 { 0 } else { k + 1 };
            rows.push((f, l, p, head, if k == 0 { "ROOT" } else { "VC" }, ""));
        }
        build(Language::En, &rows)
    }

    #[test]
    fn present_perfect() {
        let l = only_label(&en_chain(&[("have", "have", "VBP"), ("read", "read", "VBN")]));
        assert_eq!(l.tense, Tense::En(EnTense::PresentPerfect));
        assert_eq!(
            (l.mood, l.voice, l.finiteness, l.progressive),
            (Mood::Indicative, Voice::Active, Finiteness::Finite, false)
        );
    }

    #[test]
    fn conditional_two_progressive() {
        let l = only_label(&en_chain(&[
            ("would", "would", "MD"),
            ("have", "have", "VB"),
            ("been", "be", "VBN"),
            ("reading", "read", "VBG"),
        ]));
        assert_eq!(l.tense, Tense::En(EnTense::ConditionalIIProgressive));
        assert_eq!(l.voice, Voice::Active);
        assert!(l.progressive);
    }

    #[test]
    fn present_progressive_passive() {
        let l = only_label(&en_chain(&[
            ("is", "be", "VBZ"),
            ("being", "be", "VBG"),
            ("read", "read", "VBN"),
        ]));
        assert_eq!(l.tense, Tense::En(EnTense::PresentProgressive));
        assert_eq!(l.voice, Voice::Passive);
        assert!(l.diagnostics.is_clean());
    }

    #[test]
    fn do_support_and_modal_preterite() {
        let l = only_label(&en_chain(&[("did", "do", "VBD"), ("read", "read", "VB")]));
        assert_eq!(l.tense, Tense::En(EnTense::PastSimple));
        let s = en_chain(&[("could", "can", "MD"), ("read", "read", "VB")]);
        let vc = &extract_vcs(&s, Scheme::Chain)[0];
        assert_eq!(
            Classifier::default().classify(vc, &s).tense,
            Tense::En(EnTense::PresentSimple)
        );
        let past = Classifier::default().with_modal_preterite(ModalPreterite::Past);
        assert_eq!(past.classify(vc, &s).tense, Tense::En(EnTense::PastSimple));
    }

    #[test]
    fn unknown_pattern_is_flagged_not_dropped() {
        // "have reading" is not a layer combination
        let l = only_label(&en_chain(&[("have", "have", "VBP"), ("reading", "read", "VBG")]));
        assert!(l.diagnostics.unrecognized_pattern);
        assert_eq!(l.tense, Tense::En(EnTense::PresentSimple));
    }

    #[test]
    fn german_konjunktiv_two_past() {
        let s = build(
            Language::De,
            &[
                ("Ich", "ich", "PPER", 2, "SB", ""),
                ("hätte", "haben", "VAFIN", 0, "--", "tense=past|mood=subj"),
                ("gelesen", "lesen", "VVPP", 2, "OC", ""),
            ],
        );
        let l = only_label(&s);
        assert_eq!(l.tense, Tense::De(DeTense::KonjunktivIIPast));
        assert_eq!(l.mood, Mood::Subjunctive);
    }

    #[test]
    fn german_werden_passive_present() {
        let s = build(
            Language::De,
            &[
                ("Es", "es", "PPER", 2, "SB", ""),
                ("wird", "werden", "VAFIN", 0, "--", "tense=pres|mood=ind"),
                ("gelesen", "lesen", "VVPP", 2, "OC", ""),
            ],
        );
        let l = only_label(&s);
        assert_eq!(l.tense, Tense::De(DeTense::Praesens));
        assert_eq!(l.voice, Voice::Passive);
        assert!(!l.diagnostics.statal_passive);
    }

    #[test]
    fn german_lexicon_fallback_and_ambiguity() {
        let s = build(
            Language::De,
            &[
                ("Ich", "ich", "PPER", 2, "SB", ""),
                ("hätte", "haben", "VAFIN", 0, "--", ""),
            ],
        );
        assert_eq!(only_label(&s).tense, Tense::De(DeTense::KonjunktivIIPresent));
        let s = build(
            Language::De,
            &[
                ("Ich", "ich", "PPER", 2, "SB", ""),
                ("werde", "werden", "VAFIN", 0, "--", ""),
                ("lesen", "lesen", "VVINF", 2, "OC", ""),
            ],
        );
        let l = only_label(&s);
        assert_eq!(l.tense, Tense::De(DeTense::FuturI));
        assert!(l.diagnostics.ambiguous_mood);
        let s = build(
            Language::De,
            &[
                ("Ich", "ich", "PPER", 2, "SB", ""),
                ("las", "lesen", "VVFIN", 0, "--", ""),
            ],
        );
        let l = only_label(&s);
        assert_eq!(l.tense, Tense::De(DeTense::Praesens));
        assert!(l.diagnostics.morph_guessed);
    }

    #[test]
    fn german_statal_passive() {
        let s = build(
            Language::De,
            &[
                ("Die", "der", "ART", 2, "NK", ""),
                ("Tür", "Tür", "NN", 3, "SB", ""),
                ("ist", "sein", "VAFIN", 0, "--", "tense=pres|mood=ind"),
                ("geschlossen", "schließen", "VVPP", 3, "OC", ""),
            ],
        );
        let l = only_label(&s);
        assert_eq!(l.tense, Tense::De(DeTense::Praesens));
        assert_eq!(l.voice, Voice::Passive);
        assert!(l.diagnostics.statal_passive);
    }

    #[test]
    fn german_modal_perfect_keeps_modal_tense() {
        // Er muss es gelesen haben.
        let s = build(
            Language::De,
            &[
                ("Er", "er", "PPER", 2, "SB", ""),
                ("muss", "müssen", "VMFIN", 0, "--", "tense=pres|mood=ind"),
                ("es", "es", "PPER", 4, "OA", ""),
                ("gelesen", "lesen", "VVPP", 5, "OC", ""),
                ("haben", "haben", "VAINF", 2, "OC", ""),
            ],
        );
        let l = only_label(&s);
        assert_eq!(l.tense, Tense::De(DeTense::Praesens));
        assert_eq!(l.voice, Voice::Active);
    }

    #[test]
    fn german_perfect_passive() {
        // Das Buch ist gelesen worden.
        let s = build(
            Language::De,
            &[
                ("Das", "der", "ART", 2, "NK", ""),
                ("Buch", "Buch", "NN", 3, "SB", ""),
                ("ist", "sein", "VAFIN", 0, "--", "tense=pres|mood=ind"),
                ("gelesen", "lesen", "VVPP", 5, "OC", ""),
                ("worden", "werden", "VAPP", 3, "OC", ""),
            ],
        );
        let l = only_label(&s);
        assert_eq!(l.tense, Tense::De(DeTense::Perfekt));
        assert_eq!(l.voice, Voice::Passive);
    }
}
