//! Static reference data: the morpho-syntactic English/German tense
//! correspondences and the typical uses of each tense with examples.

use std::fmt::Write as _;

use thiserror::Error;

use crate::conll::Language;
use crate::label::{DeTense, EnTense, Tense};

/// One line of the English/German tense correspondence table.
#[derive(Clone, Copy, Debug)]
pub struct CorrespondenceRow {
    pub morph_tense: &'static str,
    pub en: Option<EnTense>,
    pub en_name: &'static str,
    pub en_examples: &'static [&'static str],
    pub de: Option<DeTense>,
    pub de_name: &'static str,
    pub de_examples: &'static [&'static str],
}

macro_rules! row {
    ($m:expr, $en:expr, $en_name:expr, [$($ee:expr),*], $de:expr, $de_name:expr, [$($de_ex:expr),*]) => {
        CorrespondenceRow {
            morph_tense: $m,
            en: $en,
            en_name: $en_name,
            en_examples: &[$($ee),*],
            de: $de,
            de_name: $de_name,
            de_examples: &[$($de_ex),*],
        }
    };
}

pub const CORRESPONDENCES: &[CorrespondenceRow] = &[
    row!(
        "present",
        Some(EnTense::PresentSimple),
        "present simple",
        ["(I) read"],
        Some(DeTense::Praesens),
        "Präsens",
        ["(Ich) lese"]
    ),
    row!(
        "present",
        Some(EnTense::PresentProgressive),
        "present progressive",
        ["(I) am reading"],
        None,
        "",
        []
    ),
    row!(
        "present",
        Some(EnTense::PresentPerfect),
        "present perfect",
        ["(I) have read"],
        Some(DeTense::Perfekt),
        "Perfekt",
        ["(Ich) habe gelesen"]
    ),
    row!(
        "present",
        Some(EnTense::PresentPerfectProgressive),
        "present perfect progressive",
        ["(I) have been reading"],
        None,
        "",
        []
    ),
    row!(
        "present",
        Some(EnTense::FutureI),
        "future I",
        ["(I) will read", "(I) am going to read"],
        Some(DeTense::FuturI),
        "Futur I",
        ["(Ich) werde lesen"]
    ),
    row!(
        "present",
        Some(EnTense::FutureIProgressive),
        "future I progressive",
        ["(I) will be reading", "(I) am going to be reading"],
        None,
        "",
        []
    ),
    row!(
        "present",
        Some(EnTense::FutureII),
        "future II",
        ["(I) will have read"],
        Some(DeTense::FuturII),
        "Futur II",
        ["(Ich) werde gelesen haben"]
    ),
    row!(
        "present",
        Some(EnTense::FutureIIProgressive),
        "future II progressive",
        ["(I) will have been reading"],
        None,
        "",
        []
    ),
    row!(
        "past",
        Some(EnTense::PastSimple),
        "past simple",
        ["(I) read"],
        Some(DeTense::Praeteritum),
        "Präteritum",
        ["(Ich) las"]
    ),
    row!(
        "past",
        Some(EnTense::PastProgressive),
        "past progressive",
        ["(I) was reading"],
        None,
        "",
        []
    ),
    row!(
        "past",
        Some(EnTense::PastPerfect),
        "past perfect",
        ["(I) had read"],
        Some(DeTense::Plusquamperfekt),
        "Plusquamperfekt",
        ["(Ich) hatte gelesen"]
    ),
    row!(
        "past",
        Some(EnTense::PastPerfectProgressive),
        "past perfect progressive",
        ["(I) had been reading"],
        None,
        "",
        []
    ),
    row!(
        "present*",
        Some(EnTense::ConditionalI),
        "conditional I",
        ["(I) would read"],
        Some(DeTense::KonjunktivIIPresent),
        "Konjunktiv II",
        ["(Ich) würde lesen"]
    ),
    row!(
        "present*",
        Some(EnTense::ConditionalIProgressive),
        "conditional I progressive",
        ["(I) would be reading"],
        None,
        "",
        []
    ),
    row!(
        "past*",
        Some(EnTense::ConditionalII),
        "conditional II",
        ["(I) would have read"],
        Some(DeTense::KonjunktivIIPast),
        "Konjunktiv II",
        ["(Ich) hätte gelesen"]
    ),
    row!(
        "past*",
        Some(EnTense::ConditionalIIProgressive),
        "conditional II progressive",
        ["(I) would have been reading"],
        None,
        "",
        []
    ),
    row!(
        "present*",
        None,
        "",
        [],
        Some(DeTense::KonjunktivIPresent),
        "Konjunktiv I",
        ["(Er) lese", "(Er) werde lesen"]
    ),
];

/// A cell of the uses table: either an example sentence or a pointer to
/// the tense used instead in that language.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Example(&'static str),
    Redirect {
        target: &'static str,
        example: &'static str,
    },
}

impl Cell {
    pub fn is_example(&self) -> bool {
        matches!(self, Cell::Example(_))
    }

    fn render(&self) -> String {
        match self {
            Cell::Example(e) => (*e).to_owned(),
            Cell::Redirect { target, example } => format!("-> {target} ({example})"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Use {
    pub name: &'static str,
    pub german: Cell,
    pub english: Cell,
}

#[derive(Clone, Copy, Debug)]
pub struct TenseUses {
    pub heading: &'static str,
    pub de: DeTense,
    pub en: EnTense,
    pub uses: &'static [Use],
}

const fn ex(s: &'static str) -> Cell {
    Cell::Example(s)
}

const fn to(target: &'static str, example: &'static str) -> Cell {
    Cell::Redirect { target, example }
}

pub const USES: &[TenseUses] = &[
    TenseUses {
        heading: "Präsens/present tense",
        de: DeTense::Praesens,
        en: EnTense::PresentSimple,
        uses: &[
            Use {
                name: "non-past",
                german: ex("Ich schlafe von 12 bis 7."),
                english: ex("I sleep from midnight to seven."),
            },
            Use {
                name: "futurate",
                german: ex("Morgen weiß ich das."),
                english: to("future tense", "I will know that tomorrow."),
            },
        ],
    },
    TenseUses {
        heading: "Präteritum/simple past",
        de: DeTense::Praeteritum,
        en: EnTense::PastSimple,
        uses: &[Use {
            name: "past time",
            german: ex("Ich schlief den ganzen Tag."),
            english: ex("I slept the whole day."),
        }],
    },
    TenseUses {
        heading: "Futur I/future tense",
        de: DeTense::FuturI,
        en: EnTense::FutureI,
        uses: &[Use {
            name: "future time",
            german: ex("Ich werde schlafen."),
            english: ex("I will sleep. I am going to sleep."),
        }],
    },
    TenseUses {
        heading: "Perfekt/present perfect",
        de: DeTense::Perfekt,
        en: EnTense::PresentPerfect,
        uses: &[
            Use {
                name: "resultative",
                german: ex("Jemand hat mein Auto gestohlen."),
                english: ex("Someone has stolen my car."),
            },
            Use {
                name: "existential",
                german: ex("Ich habe (schon mal) Tennis gespielt."),
                english: ex("I have played tennis."),
            },
            Use {
                name: "hot news",
                german: ex("Kanzler Schröder ist zurückgetreten."),
                english: ex("Chancellor Schröder has resigned."),
            },
            Use {
                name: "universal",
                german: to("Präsens", "Ich lebe hier seit 2 jahren."),
                english: ex("I have lived here for two years."),
            },
            Use {
                name: "narrative",
                german: ex("Ich bin gestern im Theater gewesen."),
                english: to("past tense", "I was in theater yesterday."),
            },
        ],
    },
    TenseUses {
        heading: "Futur II/future perfect",
        de: DeTense::FuturII,
        en: EnTense::FutureII,
        uses: &[Use {
            name: "future results",
            german: ex("Ich werde das bis morgen erledigt haben."),
            english: ex("I will have done this by tomorrow."),
        }],
    },
    TenseUses {
        heading: "Plusquamperfekt/past perfect",
        de: DeTense::Plusquamperfekt,
        en: EnTense::PastPerfect,
        uses: &[Use {
            name: "pre-past",
            german: ex("Ich hatte geschlafen."),
            english: ex("I had slept."),
        }],
    },
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExplainError {
    #[error("unknown tense label '{label}'; valid labels: {valid}")]
    UnknownLabel { label: String, valid: String },
    #[error("expected one label or an English/German label pair, got {0} arguments")]
    Arity(usize),
    #[error("'{0}' is not an English label")]
    NotEnglish(String),
    #[error("'{0}' is not a German label")]
    NotGerman(String),
}

pub fn valid_labels() -> String {
    Tense::inventory(Language::En)
        .into_iter()
        .chain(Tense::inventory(Language::De))
        .map(|t| t.display())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn parse_label(text: &str) -> Result<Tense, ExplainError> {
    Tense::parse(text.trim(), None).ok_or_else(|| ExplainError::UnknownLabel {
        label: text.trim().to_owned(),
        valid: valid_labels(),
    })
}

/// Uses of `tense` in which its own language has an example (redirected
/// cells are uses covered by another tense in that language).
pub fn uses_of(tense: Tense) -> Vec<(&'static str, &'static str)> {
    let mut out = Vec::new();
    for section in USES {
        let german = match tense {
            Tense::De(t) if t == section.de => true,
            Tense::En(t) if t == section.en => false,
            _ => continue,
        };
        for u in section.uses {
            let cell = if german { u.german } else { u.english };
            if let Cell::Example(e) = cell {
                out.push((u.name, e));
            }
        }
    }
    out
}

pub fn rows_for(tense: Tense) -> Vec<&'static CorrespondenceRow> {
    CORRESPONDENCES
        .iter()
        .filter(|r| match tense {
            Tense::En(t) => r.en == Some(t),
            Tense::De(t) => r.de == Some(t),
        })
        .collect()
}

pub fn correspondence(en: EnTense, de: DeTense) -> Option<&'static CorrespondenceRow> {
    CORRESPONDENCES.iter().find(|r| r.en == Some(en) && r.de == Some(de))
}

fn render_row(r: &CorrespondenceRow) -> String {
    let en = if r.en.is_some() {
        format!("{}: {}", r.en_name, r.en_examples.join(" / "))
    } else {
        "-".to_owned()
    };
    let de = if r.de.is_some() {
        format!("{}: {}", r.de_name, r.de_examples.join(" / "))
    } else {
        "-".to_owned()
    };
    format!("[{}] {en} <-> {de}", r.morph_tense)
}

/// Reference text for one label.
pub fn explain_tense(tense: Tense) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} ({})", tense.display(), tense.name());
    for section in USES {
        let matches = match tense {
            Tense::De(t) => t == section.de,
            Tense::En(t) => t == section.en,
        };
        if !matches {
            continue;
        }
        let _ = writeln!(out, "uses ({}):", section.heading);
        for u in section.uses {
            let (own, other) = match tense {
                Tense::De(_) => (u.german, u.english),
                Tense::En(_) => (u.english, u.german),
            };
            let _ = writeln!(out, "  {}: {} | {}", u.name, own.render(), other.render());
        }
    }
    let rows = rows_for(tense);
    if rows.is_empty() {
        let _ = writeln!(out, "correspondence: none listed");
    }
    for r in rows {
        let _ = writeln!(out, "correspondence: {}", render_row(r));
    }
    out
}

/// Reference text for an English/German label pair.
pub fn explain_pair(en: EnTense, de: DeTense) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} <-> {}", en.display(), de.display());
    match correspondence(en, de) {
        Some(r) => {
            let _ = writeln!(out, "correspondence: {}", render_row(r));
            let _ = writeln!(out, "{} <-> {}", r.en_examples.join(" / "), r.de_examples.join(" / "));
        }
        None => {
            let _ = writeln!(out, "no direct morpho-syntactic correspondence");
            for r in rows_for(Tense::En(en)).into_iter().chain(rows_for(Tense::De(de))) {
                let _ = writeln!(out, "  {}", render_row(r));
            }
        }
    }
    out
}

/// Entry point for the `explain` command: one label, or an English and a
/// German label (as two arguments or one `en,de` argument).
pub fn explain(args: &[String]) -> Result<String, ExplainError> {
    let parts: Vec<String> = match args {
        [one] if one.contains(',') => one.split(',').map(|s| s.trim().to_owned()).collect(),
        _ => args.to_vec(),
    };
    match parts.as_slice() {
        [label] => Ok(explain_tense(parse_label(label)?)),
        [a, b] => {
            let a_t = Tense::parse(a.trim(), Some(Language::En));
            let b_t = Tense::parse(b.trim(), Some(Language::De));
            // tolerate German-first order
            let (en, de) = match (a_t, b_t) {
                (Some(Tense::En(en)), Some(Tense::De(de))) => (en, de),
                _ => match (
                    Tense::parse(a.trim(), Some(Language::De)),
                    Tense::parse(b.trim(), Some(Language::En)),
                ) {
                    (Some(Tense::De(de)), Some(Tense::En(en))) => (en, de),
                    _ => {
                        let en = parse_label(a)?;
                        let de = parse_label(b)?;
                        match (en, de) {
                            (Tense::En(_), _) => return Err(ExplainError::NotGerman(b.clone())),
                            _ => return Err(ExplainError::NotEnglish(a.clone())),
                        }
                    }
                },
            };
            Ok(explain_pair(en, de))
        }
        other => Err(ExplainError::Arity(other.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(a: &[&str]) -> Vec<String> {
        a.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn perfekt_uses() {
        let uses: Vec<_> = uses_of(Tense::De(DeTense::Perfekt))
            .into_iter()
            .map(|(u, _)| u)
            .collect();
        assert_eq!(uses, vec!["resultative", "existential", "hot news", "narrative"]);
        let text = explain(&args(&["Perfekt"])).unwrap();
        assert!(text.contains("Jemand hat mein Auto gestohlen."));
        let en: Vec<_> = uses_of(Tense::En(EnTense::PresentPerfect))
            .into_iter()
            .map(|(u, _)| u)
            .collect();
        assert_eq!(en, vec!["resultative", "existential", "hot news", "universal"]);
    }

    #[test]
    fn future_pair() {
        let text = explain(&args(&["future I", "Futur I"])).unwrap();
        assert!(
            text.contains("(I) will read / (I) am going to read <-> (Ich) werde lesen"),
            "{text}"
        );
        assert_eq!(text, explain(&args(&["future I,Futur I"])).unwrap());
        assert_eq!(text, explain(&args(&["Futur I", "future I"])).unwrap());
    }

    #[test]
    fn plusquamperfekt() {
        assert_eq!(
            uses_of(Tense::De(DeTense::Plusquamperfekt)),
            vec![("pre-past", "Ich hatte geschlafen.")]
        );
        assert!(explain(&args(&["Plusquamperfekt"]))
            .unwrap()
            .contains("Ich hatte geschlafen."));
    }

    #[test]
    fn unknown_label_lists_valid_ones() {
        let err = explain(&args(&["Aorist"])).unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("unknown tense label 'Aorist'"));
        assert!(msg.contains("presPerfProg") && msg.contains("Konj II past"));
        assert_eq!(explain(&args(&[])).unwrap_err(), ExplainError::Arity(0));
    }

    #[test]
    fn every_label_explains() {
        for t in Tense::inventory(Language::En)
            .into_iter()
            .chain(Tense::inventory(Language::De))
        {
            assert!(explain(&[t.display().to_owned()]).is_ok());
        }
    }
}
