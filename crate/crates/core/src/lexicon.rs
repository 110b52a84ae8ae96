//! Tense/mood readings for German auxiliary and modal forms, used when the
//! parser delivered no morphology for the finite verb.
//!
//! File format: tab-separated `language form pos tense mood`, `#` comments.
//! `tense` is `Pres` or `Past`, `mood` is `Ind` or `Subj`. A form may appear
//! with several readings (e.g. `habe` is indicative and Konjunktiv I).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, BufRead};
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::conll::Language;
use crate::tagset;

pub const DEFAULT_DE_LEXICON: &str = include_str!("../data/de_aux_lexicon.tsv");
pub const DEFAULT_LEXICON_FILE: &str = "de_aux_lexicon.tsv";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorphTense {
    Pres,
    Past,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorphMood {
    Ind,
    Subj,
}

impl FromStr for MorphTense {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pres" => Ok(MorphTense::Pres),
            "past" | "prät" | "praet" => Ok(MorphTense::Past),
            _ => Err(format!("unknown tense '{s}' (expected Pres or Past)")),
        }
    }
}

impl FromStr for MorphMood {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ind" => Ok(MorphMood::Ind),
            "subj" | "sub" => Ok(MorphMood::Subj),
            _ => Err(format!("unknown mood '{s}' (expected Ind or Subj)")),
        }
    }
}

impl fmt::Display for MorphTense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphTense::Pres => "Pres",
            MorphTense::Past => "Past",
        })
    }
}

impl fmt::Display for MorphMood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphMood::Ind => "Ind",
            MorphMood::Subj => "Subj",
        })
    }
}

pub type Reading = (MorphTense, MorphMood);

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("lexicon line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphFallbackLexicon {
    entries: BTreeMap<(Language, String, String), BTreeSet<Reading>>,
}

impl MorphFallbackLexicon {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The shipped German auxiliary/modal paradigms.
    pub fn default_german() -> Self {
        Self::parse(DEFAULT_DE_LEXICON.as_bytes()).expect("shipped lexicon is valid")
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self, LexiconError> {
        let mut lex = Self::default();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|e| LexiconError::Invalid {
                line: line_no,
                message: e.to_string(),
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let invalid = |message: String| LexiconError::Invalid { line: line_no, message };
            let cols: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
            if cols.len() != 5 {
                return Err(invalid(format!("expected 5 columns, found {}", cols.len())));
            }
            let language: Language = cols[0].parse().map_err(invalid)?;
            let pos = cols[2];
            if !tagset::is_aux_tag(pos) {
                return Err(invalid(format!("POS '{pos}' is not an auxiliary or modal tag")));
            }
            let tense: MorphTense = cols[3].parse().map_err(invalid)?;
            let mood: MorphMood = cols[4].parse().map_err(invalid)?;
            lex.insert(language, cols[1], pos, (tense, mood));
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        let file = std::fs::File::open(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(io::BufReader::new(file))
    }

    pub fn insert(&mut self, language: Language, form: &str, pos: &str, reading: Reading) {
        self.entries
            .entry((language, form.to_lowercase(), pos.to_owned()))
            .or_default()
            .insert(reading);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Readings for the exact `(language, form, pos)` key; empty if absent.
    pub fn lookup(&self, language: Language, form: &str, pos: &str) -> BTreeSet<Reading> {
        self.entries
            .get(&(language, form.to_lowercase(), pos.to_owned()))
            .cloned()
            .unwrap_or_default()
    }

    /// Exact lookup first; if the tagger used another tag for the form,
    /// the readings of all entries for that form.
    pub fn lookup_any_pos(&self, language: Language, form: &str, pos: &str) -> BTreeSet<Reading> {
        let exact = self.lookup(language, form, pos);
        if !exact.is_empty() {
            return exact;
        }
        let form = form.to_lowercase();
        self.entries
            .iter()
            .filter(|((l, f, _), _)| *l == language && *f == form)
            .flat_map(|(_, r)| r.iter().copied())
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Language, &str, &str, &BTreeSet<Reading>)> {
        self.entries
            .iter()
            .map(|((l, f, p), r)| (*l, f.as_str(), p.as_str(), r))
    }
}
