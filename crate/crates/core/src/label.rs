//! Tense/mood/voice labels and their display names.
//!
//! Display names follow the axis labels of the usual correspondence plots
//! (`pres`, `presPerfProg`, `Konj II past`, ...). Inventories are listed in
//! that axis order, which is also the row/column order of every matrix.

use std::fmt;
use std::str::FromStr;

use crate::conll::Language;
use crate::vc::Finiteness;

/// Base tense of an English finite complex before perfect/progressive layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnBase {
    Present,
    Past,
    Future,
    Conditional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnTense {
    PresentSimple,
    PresentProgressive,
    PastSimple,
    PastProgressive,
    PresentPerfect,
    PresentPerfectProgressive,
    PastPerfect,
    PastPerfectProgressive,
    FutureI,
    FutureIProgressive,
    FutureII,
    FutureIIProgressive,
    ConditionalI,
    ConditionalIProgressive,
    ConditionalII,
    ConditionalIIProgressive,
    Gerund,
    ToInfinitive,
    BareInfinitive,
}

impl EnTense {
    pub const ALL: [EnTense; 19] = [
        EnTense::PresentSimple,
        EnTense::PresentProgressive,
        EnTense::PastSimple,
        EnTense::PastProgressive,
        EnTense::PresentPerfect,
        EnTense::PresentPerfectProgressive,
        EnTense::PastPerfect,
        EnTense::PastPerfectProgressive,
        EnTense::FutureI,
        EnTense::FutureIProgressive,
        EnTense::FutureII,
        EnTense::FutureIIProgressive,
        EnTense::ConditionalI,
        EnTense::ConditionalIProgressive,
        EnTense::ConditionalII,
        EnTense::ConditionalIIProgressive,
        EnTense::Gerund,
        EnTense::ToInfinitive,
        EnTense::BareInfinitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnTense::PresentSimple => "presentSimple",
            EnTense::PresentProgressive => "presentProgressive",
            EnTense::PastSimple => "pastSimple",
            EnTense::PastProgressive => "pastProgressive",
            EnTense::PresentPerfect => "presentPerfect",
            EnTense::PresentPerfectProgressive => "presentPerfectProgressive",
            EnTense::PastPerfect => "pastPerfect",
            EnTense::PastPerfectProgressive => "pastPerfectProgressive",
            EnTense::FutureI => "futureI",
            EnTense::FutureIProgressive => "futureIProgressive",
            EnTense::FutureII => "futureII",
            EnTense::FutureIIProgressive => "futureIIProgressive",
            EnTense::ConditionalI => "conditionalI",
            EnTense::ConditionalIProgressive => "conditionalIProgressive",
            EnTense::ConditionalII => "conditionalII",
            EnTense::ConditionalIIProgressive => "conditionalIIProgressive",
            EnTense::Gerund => "gerund",
            EnTense::ToInfinitive => "toInfinitive",
            EnTense::BareInfinitive => "bareInfinitive",
        }
    }

    pub fn display(self) -> &'static str {
        match self {
            EnTense::PresentSimple => "pres",
            EnTense::PresentProgressive => "presProg",
            EnTense::PastSimple => "past",
            EnTense::PastProgressive => "pastProg",
            EnTense::PresentPerfect => "presPerf",
            EnTense::PresentPerfectProgressive => "presPerfProg",
            EnTense::PastPerfect => "pastPerf",
            EnTense::PastPerfectProgressive => "pastPerfProg",
            EnTense::FutureI => "futureI",
            EnTense::FutureIProgressive => "futureIProg",
            EnTense::FutureII => "futureII",
            EnTense::FutureIIProgressive => "futureIIProg",
            EnTense::ConditionalI => "condI",
            EnTense::ConditionalIProgressive => "condIProg",
            EnTense::ConditionalII => "condII",
            EnTense::ConditionalIIProgressive => "condIIProg",
            EnTense::Gerund => "gerund",
            EnTense::ToInfinitive => "toInfinitive",
            EnTense::BareInfinitive => "bareInfinitive",
        }
    }

    /// One of the sixteen finite tenses.
    pub fn finite(base: EnBase, perfect: bool, progressive: bool) -> EnTense {
        use EnTense::*;
        match (base, perfect, progressive) {
            (EnBase::Present, false, false) => PresentSimple,
            (EnBase::Present, false, true) => PresentProgressive,
            (EnBase::Present, true, false) => PresentPerfect,
            (EnBase::Present, true, true) => PresentPerfectProgressive,
            (EnBase::Past, false, false) => PastSimple,
            (EnBase::Past, false, true) => PastProgressive,
            (EnBase::Past, true, false) => PastPerfect,
            (EnBase::Past, true, true) => PastPerfectProgressive,
            (EnBase::Future, false, false) => FutureI,
            (EnBase::Future, false, true) => FutureIProgressive,
            (EnBase::Future, true, false) => FutureII,
            (EnBase::Future, true, true) => FutureIIProgressive,
            (EnBase::Conditional, false, false) => ConditionalI,
            (EnBase::Conditional, false, true) => ConditionalIProgressive,
            (EnBase::Conditional, true, false) => ConditionalII,
            (EnBase::Conditional, true, true) => ConditionalIIProgressive,
        }
    }

    /// Inverse of [`EnTense::finite`]; `None` for non-finite labels.
    pub fn decompose(self) -> Option<(EnBase, bool, bool)> {
        [EnBase::Present, EnBase::Past, EnBase::Future, EnBase::Conditional]
            .into_iter()
            .flat_map(|b| [(b, false, false), (b, false, true), (b, true, false), (b, true, true)])
            .find(|&(b, perf, prog)| EnTense::finite(b, perf, prog) == self)
    }

    pub fn is_conditional(self) -> bool {
        matches!(self.decompose(), Some((EnBase::Conditional, _, _)))
    }

    pub fn is_finite(self) -> bool {
        self.decompose().is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeTense {
    Praesens,
    Praeteritum,
    Perfekt,
    Plusquamperfekt,
    FuturI,
    FuturII,
    KonjunktivIPresent,
    KonjunktivIPast,
    KonjunktivIIPresent,
    KonjunktivIIPast,
    Infinitive,
}

impl DeTense {
    pub const ALL: [DeTense; 11] = [
        DeTense::Praesens,
        DeTense::Praeteritum,
        DeTense::Perfekt,
        DeTense::Plusquamperfekt,
        DeTense::FuturI,
        DeTense::FuturII,
        DeTense::KonjunktivIPresent,
        DeTense::KonjunktivIPast,
        DeTense::KonjunktivIIPresent,
        DeTense::KonjunktivIIPast,
        DeTense::Infinitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeTense::Praesens => "praesens",
            DeTense::Praeteritum => "praeteritum",
            DeTense::Perfekt => "perfekt",
            DeTense::Plusquamperfekt => "plusquamperfekt",
            DeTense::FuturI => "futurI",
            DeTense::FuturII => "futurII",
            DeTense::KonjunktivIPresent => "konjunktivI_present",
            DeTense::KonjunktivIPast => "konjunktivI_past",
            DeTense::KonjunktivIIPresent => "konjunktivII_present",
            DeTense::KonjunktivIIPast => "konjunktivII_past",
            DeTense::Infinitive => "infinitive",
        }
    }

    pub fn display(self) -> &'static str {
        match self {
            DeTense::Praesens => "Präsens",
            DeTense::Praeteritum => "Präteritum",
            DeTense::Perfekt => "Perfekt",
            DeTense::Plusquamperfekt => "Pluperfekt",
            DeTense::FuturI => "Futur I",
            DeTense::FuturII => "Futur II",
            DeTense::KonjunktivIPresent => "Konj I pres",
            DeTense::KonjunktivIPast => "Konj I past",
            DeTense::KonjunktivIIPresent => "Konj II pres",
            DeTense::KonjunktivIIPast => "Konj II past",
            DeTense::Infinitive => "Infinitive",
        }
    }

    /// Label with the two Konjunktiv forms each collapsed into one class.
    pub fn mood_group(self) -> &'static str {
        match self {
            DeTense::KonjunktivIPresent | DeTense::KonjunktivIPast => "Konjunktiv I",
            DeTense::KonjunktivIIPresent | DeTense::KonjunktivIIPast => "Konjunktiv II",
            other => other.display(),
        }
    }

    pub fn is_konjunktiv(self) -> bool {
        matches!(
            self,
            DeTense::KonjunktivIPresent
                | DeTense::KonjunktivIPast
                | DeTense::KonjunktivIIPresent
                | DeTense::KonjunktivIIPast
        )
    }
}

/// Display labels of the grouped German inventory, in axis order.
pub const DE_MOOD_GROUPS: [&str; 9] = [
    "Präsens",
    "Präteritum",
    "Perfekt",
    "Pluperfekt",
    "Futur I",
    "Futur II",
    "Konjunktiv I",
    "Konjunktiv II",
    "Infinitive",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tense {
    En(EnTense),
    De(DeTense),
}

impl Tense {
    pub fn language(self) -> Language {
        match self {
            Tense::En(_) => Language::En,
            Tense::De(_) => Language::De,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tense::En(t) => t.name(),
            Tense::De(t) => t.name(),
        }
    }

    pub fn display(self) -> &'static str {
        match self {
            Tense::En(t) => t.display(),
            Tense::De(t) => t.display(),
        }
    }

    /// Every tense of `language` in axis order.
    pub fn inventory(language: Language) -> Vec<Tense> {
        match language {
            Language::En => EnTense::ALL.iter().map(|t| Tense::En(*t)).collect(),
            Language::De => DeTense::ALL.iter().map(|t| Tense::De(*t)).collect(),
        }
    }

    /// Accepts the display label or the long name, case-insensitively and
    /// ignoring spaces and underscores ("Konj II past", "konjunktivII_past").
    pub fn parse(text: &str, language: Option<Language>) -> Option<Tense> {
        let key = squash(text);
        let langs: &[Language] = match language {
            Some(Language::En) => &[Language::En],
            Some(Language::De) => &[Language::De],
            None => &[Language::En, Language::De],
        };
        for &lang in langs {
            for t in Tense::inventory(lang) {
                if squash(t.display()) == key || squash(t.name()) == key {
                    return Some(t);
                }
            }
        }
        None
    }
}

fn squash(s: &str) -> String {
    s.chars()
        .filter(|c| !matches!(c, ' ' | '_' | '-'))
        .flat_map(char::to_lowercase)
        .map(|c| match c {
            'ä' => 'a',
            c => c,
        })
        .collect::<String>()
        .replace("plusquamperfekt", "pluperfekt")
}

impl fmt::Display for Tense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mood {
    Indicative,
    Subjunctive,
    Imperative,
}

impl Mood {
    pub const ALL: [Mood; 3] = [Mood::Indicative, Mood::Subjunctive, Mood::Imperative];

    pub fn name(self) -> &'static str {
        match self {
            Mood::Indicative => "indicative",
            Mood::Subjunctive => "subjunctive",
            Mood::Imperative => "imperative",
        }
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mood {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mood::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown mood '{s}' (expected indicative, subjunctive or imperative)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Voice {
    Active,
    Passive,
}

impl Voice {
    pub fn name(self) -> &'static str {
        match self {
            Voice::Active => "active",
            Voice::Passive => "passive",
        }
    }
}

impl fmt::Display for Voice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Voice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "active" => Ok(Voice::Active),
            "passive" => Ok(Voice::Passive),
            _ => Err(format!("unknown voice '{s}' (expected active or passive)")),
        }
    }
}

/// Low-confidence markers attached to a label. None of them suppresses the
/// label itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Diagnostics {
    /// Auxiliary pattern not fully decomposed; tense is best effort.
    pub unrecognized_pattern: bool,
    /// German finite verb had no usable morphology and no lexicon entry.
    pub morph_guessed: bool,
    /// sein + participle read as statal passive.
    pub statal_passive: bool,
    /// Lexicon offered indicative and subjunctive readings.
    pub ambiguous_mood: bool,
    /// Finite context borrowed from a coordinated predicate.
    pub carried_context: bool,
}

impl Diagnostics {
    pub fn is_clean(&self) -> bool {
        *self == Diagnostics::default()
    }

    pub fn flags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.unrecognized_pattern {
            out.push("unrecognized_pattern");
        }
        if self.morph_guessed {
            out.push("morph_guessed");
        }
        if self.statal_passive {
            out.push("statal_passive");
        }
        if self.ambiguous_mood {
            out.push("ambiguous_mood");
        }
        if self.carried_context {
            out.push("carried_context");
        }
        out
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flags = self.flags();
        if flags.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&flags.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TmvLabel {
    pub language: Language,
    pub tense: Tense,
    pub mood: Mood,
    pub voice: Voice,
    pub finiteness: Finiteness,
    pub progressive: bool,
    pub diagnostics: Diagnostics,
}

impl TmvLabel {
    pub fn display(&self) -> &'static str {
        self.tense.display()
    }

    /// Same label ignoring diagnostics.
    pub fn same_tmv(&self, other: &TmvLabel) -> bool {
        self.language == other.language
            && self.tense == other.tense
            && self.mood == other.mood
            && self.voice == other.voice
            && self.finiteness == other.finiteness
            && self.progressive == other.progressive
    }
}

pub fn display_label(label: &TmvLabel) -> &'static str {
    label.display()
}
