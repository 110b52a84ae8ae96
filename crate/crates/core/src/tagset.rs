//! Penn Treebank / STTS / UD tag handling for verbs and infinitival particles.

use crate::conll::{Language, Token};

/// Morphological form class of a verbal token.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerbForm {
    Finite,
    Imperative,
    /// English base form (VB) or German infinitive.
    Infinitive,
    /// German `zu`-infinitive (VVIZU).
    ZuInfinitive,
    PastParticiple,
    /// English -ing form.
    PresentParticiple,
}

const PTB_VERBS: &[&str] = &["VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD"];

fn is_stts_verb(tag: &str) -> bool {
    matches!(
        tag,
        "VVFIN"
            | "VVIMP"
            | "VVINF"
            | "VVIZU"
            | "VVPP"
            | "VAFIN"
            | "VAIMP"
            | "VAINF"
            | "VAPP"
            | "VMFIN"
            | "VMINF"
            | "VMPP"
    )
}

/// Verb-class token (main verb, auxiliary or modal).
pub fn is_verb(token: &Token) -> bool {
    let tag = token.pos.as_str();
    PTB_VERBS.contains(&tag)
        || is_stts_verb(tag)
        || matches!(tag, "VERB" | "AUX")
        || matches!(token.upos.as_str(), "VERB" | "AUX")
}

/// The infinitival particle `to` / `zu`.
pub fn is_infinitival_particle(token: &Token) -> bool {
    let form = token.form.to_lowercase();
    match token.pos.as_str() {
        "TO" => form == "to",
        "PTKZU" => true,
        _ => (token.upos == "PART" || token.pos == "PART") && (form == "to" || form == "zu"),
    }
}

fn feature_is(token: &Token, key: &str, values: &[&str]) -> bool {
    token
        .features
        .get(key)
        .map(|v| values.iter().any(|x| v.eq_ignore_ascii_case(x)))
        .unwrap_or(false)
}

pub fn verb_form(token: &Token) -> Option<VerbForm> {
    let form = match token.pos.as_str() {
        "VBZ" | "VBP" | "VBD" | "MD" => Some(VerbForm::Finite),
        "VB" => Some(VerbForm::Infinitive),
        "VBG" => Some(VerbForm::PresentParticiple),
        "VBN" => Some(VerbForm::PastParticiple),
        "VVFIN" | "VAFIN" | "VMFIN" => Some(VerbForm::Finite),
        "VVIMP" | "VAIMP" => Some(VerbForm::Imperative),
        "VVINF" | "VAINF" | "VMINF" => Some(VerbForm::Infinitive),
        "VVIZU" => Some(VerbForm::ZuInfinitive),
        "VVPP" | "VAPP" | "VMPP" => Some(VerbForm::PastParticiple),
        _ => None,
    };
    if form.is_some() {
        if feature_is(token, "Mood", &["Imp"]) {
            return Some(VerbForm::Imperative);
        }
        return form;
    }
    if !is_verb(token) {
        return None;
    }
    // UD-only input: rely on the morphology
    if feature_is(token, "Mood", &["Imp"]) {
        return Some(VerbForm::Imperative);
    }
    if feature_is(token, "VerbForm", &["Fin"]) {
        return Some(VerbForm::Finite);
    }
    if feature_is(token, "VerbForm", &["Inf"]) {
        return Some(VerbForm::Infinitive);
    }
    if feature_is(token, "VerbForm", &["Ger"]) {
        return Some(VerbForm::PresentParticiple);
    }
    if feature_is(token, "VerbForm", &["Part"]) {
        if feature_is(token, "Tense", &["Pres"]) {
            return Some(VerbForm::PresentParticiple);
        }
        return Some(VerbForm::PastParticiple);
    }
    None
}

pub fn is_finite(token: &Token) -> bool {
    matches!(verb_form(token), Some(VerbForm::Finite) | Some(VerbForm::Imperative))
        || feature_is(token, "VerbForm", &["Fin"])
}

pub fn is_participle(token: &Token) -> bool {
    verb_form(token) == Some(VerbForm::PastParticiple)
}

pub fn is_infinitive(token: &Token) -> bool {
    matches!(
        verb_form(token),
        Some(VerbForm::Infinitive) | Some(VerbForm::ZuInfinitive)
    )
}

/// Auxiliary and modal verbs recognised by the rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxKind {
    Be,
    Have,
    Do,
    Get,
    Will,
    Shall,
    Would,
    /// can, may, must, could, might, should, ...
    OtherModal,
    Sein,
    Haben,
    Werden,
    DeModal,
}

impl AuxKind {
    pub fn is_modal(self) -> bool {
        matches!(
            self,
            AuxKind::Will | AuxKind::Shall | AuxKind::Would | AuxKind::OtherModal | AuxKind::DeModal
        )
    }
}

/// Normalised lemma: lower-cased, with TüBa-style `%aux`/`%passiv` markers
/// and separable-prefix `#` marks removed.
pub fn norm_lemma(token: &Token) -> String {
    let lemma = if token.lemma.is_empty() {
        &token.form
    } else {
        &token.lemma
    };
    let lemma = lemma.split('%').next().unwrap_or(lemma);
    lemma.replace('#', "").to_lowercase()
}

const EN_BE: &[&str] = &[
    "be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re", "ai",
];
const EN_HAVE: &[&str] = &["have", "has", "had", "having", "'ve"];
const EN_DO: &[&str] = &["do", "does", "did", "doing", "done"];
const EN_GET: &[&str] = &["get", "gets", "got", "gotten", "getting"];
const EN_OTHER_MODALS: &[&str] = &[
    "can", "could", "ca", "may", "might", "must", "should", "ought", "need", "dare",
];

const DE_SEIN: &[&str] = &[
    "sein", "bin", "bist", "ist", "sind", "seid", "war", "warst", "waren", "wart", "sei", "seiest", "seist", "seien",
    "seiet", "wäre", "wärest", "wärst", "wären", "wäret", "wärt", "gewesen",
];
const DE_HABEN: &[&str] = &[
    "haben", "habe", "hast", "hat", "habt", "hatte", "hattest", "hatten", "hattet", "habest", "habet", "hätte",
    "hättest", "hätten", "hättet", "gehabt",
];
const DE_WERDEN: &[&str] = &[
    "werden", "werde", "wirst", "wird", "werdet", "wurde", "wurdest", "wurden", "wurdet", "ward", "werdest", "würde",
    "würdest", "würden", "würdet", "geworden", "worden",
];
const DE_MODALS: &[&str] = &["können", "müssen", "dürfen", "sollen", "wollen", "mögen", "möchten"];

/// Identifies auxiliaries and modals by lemma, falling back to the surface
/// form when the lemma is missing.
pub fn aux_kind(token: &Token, language: Language) -> Option<AuxKind> {
    let lemma = norm_lemma(token);
    let form = token.form.to_lowercase();
    match language {
        Language::En => {
            let pick = |w: &str| -> Option<AuxKind> {
                match w {
                    "will" | "'ll" | "wo" => Some(AuxKind::Will),
                    "shall" | "sha" => Some(AuxKind::Shall),
                    "would" => Some(AuxKind::Would),
                    _ if EN_BE.contains(&w) => Some(AuxKind::Be),
                    _ if EN_HAVE.contains(&w) => Some(AuxKind::Have),
                    _ if EN_DO.contains(&w) => Some(AuxKind::Do),
                    _ if EN_GET.contains(&w) => Some(AuxKind::Get),
                    _ if EN_OTHER_MODALS.contains(&w) => Some(AuxKind::OtherModal),
                    _ => None,
                }
            };
            // UD lemmatisers map should->shall and would->will
            match form.as_str() {
                "would" => return Some(AuxKind::Would),
                "'d" if token.pos == "MD" => return Some(AuxKind::Would),
                "should" | "could" | "might" => return Some(AuxKind::OtherModal),
                _ => {}
            }
            if !token.lemma.is_empty() {
                if let Some(kind) = pick(&lemma) {
                    return Some(kind);
                }
            }
            match form.as_str() {
                // contracted forms whose identity depends on the next verb
                "'s" | "'d" => None,
                f => pick(f).or_else(|| {
                    if token.pos == "MD" {
                        Some(AuxKind::OtherModal)
                    } else {
                        None
                    }
                }),
            }
        }
        Language::De => {
            let pick = |w: &str| -> Option<AuxKind> {
                match w {
                    "sein" => Some(AuxKind::Sein),
                    "haben" => Some(AuxKind::Haben),
                    "werden" => Some(AuxKind::Werden),
                    _ if DE_MODALS.contains(&w) => Some(AuxKind::DeModal),
                    _ => None,
                }
            };
            if let Some(kind) = pick(&lemma) {
                return Some(kind);
            }
            if DE_SEIN.contains(&form.as_str()) {
                Some(AuxKind::Sein)
            } else if DE_HABEN.contains(&form.as_str()) {
                Some(AuxKind::Haben)
            } else if DE_WERDEN.contains(&form.as_str()) {
                Some(AuxKind::Werden)
            } else if token.pos.starts_with("VM") {
                Some(AuxKind::DeModal)
            } else {
                None
            }
        }
    }
}

/// Auxiliary or modal by tag alone (VA*, VM*, MD, UD AUX).
pub fn is_aux_tag(pos: &str) -> bool {
    pos.starts_with("VA") || pos.starts_with("VM") || pos == "MD" || pos == "AUX"
}

const SUBJECT_RELS: &[&str] = &[
    "SBJ",
    "SB",
    "EP",
    "NSUBJ",
    "NSUBJ:PASS",
    "CSUBJ",
    "CSUBJ:PASS",
    "EXPL",
    "LGS-SBJ",
];

pub fn is_subject_rel(deprel: &str) -> bool {
    let up = deprel.to_ascii_uppercase();
    SUBJECT_RELS.contains(&up.as_str())
}

pub fn is_punct(token: &Token) -> bool {
    token.upos == "PUNCT"
        || token.pos.starts_with('$')
        || matches!(
            token.pos.as_str(),
            "." | "," | ":" | "``" | "''" | "-LRB-" | "-RRB-" | "PUNCT"
        )
        || (!token.form.is_empty() && token.form.chars().all(|c| c.is_ascii_punctuation()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tok(form: &str, lemma: &str, pos: &str) -> Token {
        Token::new(1, form, lemma, pos, 0, "ROOT")
    }

    #[test]
    fn ptb_and_stts_verbs() {
        assert!(is_verb(&tok("may", "may", "MD")));
        assert!(is_verb(&tok("verlangsamen", "verlangsamen", "VVINF")));
        assert!(!is_verb(&tok("drugs", "drug", "NNS")));
        assert!(is_verb(&tok("read", "read", "VERB").with_upos("VERB")));
    }

    #[test]
    fn forms() {
        assert_eq!(verb_form(&tok("könnten", "können", "VMFIN")), Some(VerbForm::Finite));
        assert_eq!(
            verb_form(&tok("reading", "read", "VBG")),
            Some(VerbForm::PresentParticiple)
        );
        let ud = Token::new(1, "gelesen", "lesen", "", 0, "root")
            .with_upos("VERB")
            .with_features("VerbForm=Part|Tense=Past");
        assert_eq!(verb_form(&ud), Some(VerbForm::PastParticiple));
        let imp = tok("lies", "lesen", "VVIMP");
        assert!(is_finite(&imp));
    }

    #[test]
    fn aux_lookup() {
        assert_eq!(aux_kind(&tok("'ll", "will", "MD"), Language::En), Some(AuxKind::Will));
        assert_eq!(aux_kind(&tok("was", "", "VBD"), Language::En), Some(AuxKind::Be));
        assert_eq!(
            aux_kind(&tok("hätte", "haben%aux", "VAFIN"), Language::De),
            Some(AuxKind::Haben)
        );
        assert_eq!(
            aux_kind(&tok("worden", "", "VAPP"), Language::De),
            Some(AuxKind::Werden)
        );
        assert_eq!(
            aux_kind(&tok("könnten", "können", "VMFIN"), Language::De),
            Some(AuxKind::DeModal)
        );
        assert_eq!(aux_kind(&tok("lese", "lesen", "VVFIN"), Language::De), None);
    }

    #[test]
    fn particles() {
        assert!(is_infinitival_particle(&tok("to", "to", "TO")));
        assert!(is_infinitival_particle(&tok("zu", "zu", "PTKZU")));
        assert!(!is_infinitival_particle(&tok("zu", "zu", "APPR")));
    }
}
