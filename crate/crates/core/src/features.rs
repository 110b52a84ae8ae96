//! Parse-derived context of a verbal complex: subject NP, temporal
//! expressions and conditional-clause marking.
//!
//! Temporal expressions are lexicon hits (adverbs, or heads of NPs/PPs)
//! whose nearest dominating verb belongs to the complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, BufRead};
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::conll::{Language, Sentence, Token};
use crate::label::TmvLabel;
use crate::tagset;
use crate::vc::VerbalComplex;

pub const DEFAULT_TEMPORAL_LEXICON: &str = include_str!("../data/temporal_lexicon.tsv");
pub const DEFAULT_TEMPORAL_FILE: &str = "temporal_lexicon.tsv";
pub const DEFAULT_CONDITIONAL_MARKERS: &[&str] = &["if", "unless", "wenn", "falls", "sofern"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemporalTag {
    Future,
    Past,
    Neutral,
}

impl fmt::Display for TemporalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TemporalTag::Future => "future",
            TemporalTag::Past => "past",
            TemporalTag::Neutral => "neutral",
        })
    }
}

impl FromStr for TemporalTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "future" => Ok(TemporalTag::Future),
            "past" => Ok(TemporalTag::Past),
            "neutral" => Ok(TemporalTag::Neutral),
            _ => Err(format!("unknown temporal tag '{s}' (expected future, past or neutral)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum TemporalLexiconError {
    #[error("temporal lexicon line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("cannot read temporal lexicon {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TemporalLexicon {
    terms: BTreeMap<String, TemporalTag>,
}

impl TemporalLexicon {
    pub fn default_lexicon() -> Self {
        Self::parse(DEFAULT_TEMPORAL_LEXICON.as_bytes()).expect("shipped temporal lexicon is valid")
    }

    /// `term<TAB>tag` per line; a bare term is neutral.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, TemporalLexiconError> {
        let mut lex = Self::default();
        for (i, line) in reader.lines().enumerate() {
            let invalid = |message: String| TemporalLexiconError::Invalid { line: i + 1, message };
            let line = line.map_err(|e| invalid(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let term = cols.next().unwrap_or_default().trim();
            let tag = match cols.next() {
                Some(t) => t.parse().map_err(invalid)?,
                None => TemporalTag::Neutral,
            };
            if term.is_empty() {
                return Err(invalid("empty term".to_owned()));
            }
            lex.insert(term, tag);
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self, TemporalLexiconError> {
        let file = std::fs::File::open(path).map_err(|source| TemporalLexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(io::BufReader::new(file))
    }

    pub fn insert(&mut self, term: &str, tag: TemporalTag) {
        self.terms.insert(term.to_lowercase(), tag);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tag_of(&self, token: &Token) -> Option<TemporalTag> {
        self.terms
            .get(&token.form.to_lowercase())
            .or_else(|| self.terms.get(&tagset::norm_lemma(token)))
            .copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureConfig {
    pub temporal: TemporalLexicon,
    pub conditional_markers: BTreeSet<String>,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            temporal: TemporalLexicon::default_lexicon(),
            conditional_markers: DEFAULT_CONDITIONAL_MARKERS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Number {
    Sg,
    Pl,
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Number::Sg => "sg",
            Number::Pl => "pl",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalExpression {
    pub lemma: String,
    /// Governing preposition, or `adverb` / `np`.
    pub relation: String,
    pub position: usize,
    pub tag: TemporalTag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureRecord {
    pub sentence_id: String,
    pub vc_tokens: Vec<usize>,
    pub main_lemma: String,
    /// POS tags of the members joined with `+`.
    pub pattern: String,
    pub label: TmvLabel,
    pub subject_lemma: Option<String>,
    pub subject_determiner: Option<String>,
    pub subject_number: Option<Number>,
    pub temporal: Vec<TemporalExpression>,
    pub conditional: bool,
}

const QUANTIFIERS: &[&str] = &[
    "all", "some", "many", "few", "several", "every", "each", "no", "any", "most", "both", "alle", "einige", "viele",
    "wenige", "jeder", "jede", "jedes", "kein", "keine", "manche", "mehrere", "beide",
];

const DETERMINER_TAGS: &[&str] = &[
    "DT", "PDT", "WDT", "PRP$", "CD", "ART", "PDAT", "PIAT", "PIDAT", "PPOSAT", "CARD", "DET", "NUM",
];

const SINGULAR_PRONOUNS: &[&str] = &["i", "he", "she", "it", "ich", "du", "er", "es", "man", "this", "that"];
const PLURAL_PRONOUNS: &[&str] = &["we", "they", "wir", "ihr", "these", "those"];

fn is_adverb(t: &Token) -> bool {
    matches!(t.pos.as_str(), "RB" | "ADV" | "PAV" | "PROAV") || t.upos == "ADV"
}

fn is_nominal(t: &Token) -> bool {
    matches!(t.pos.as_str(), "NN" | "NNS" | "NNP" | "NNPS" | "NE" | "NOUN" | "PROPN")
        || matches!(t.upos.as_str(), "NOUN" | "PROPN")
}

fn is_preposition(t: &Token) -> bool {
    matches!(t.pos.as_str(), "IN" | "APPR" | "APPRART" | "APPO" | "ADP") || t.upos == "ADP"
}

fn number_of(t: &Token) -> Option<Number> {
    let morph = t.features.get("Number").or_else(|| t.features.get("num"));
    if let Some(v) = morph {
        match v.to_ascii_lowercase().as_str() {
            "sing" | "sg" => return Some(Number::Sg),
            "plur" | "pl" => return Some(Number::Pl),
            _ => {}
        }
    }
    let lemma = tagset::norm_lemma(t);
    let form = t.form.to_lowercase();
    if SINGULAR_PRONOUNS.contains(&form.as_str()) || SINGULAR_PRONOUNS.contains(&lemma.as_str()) {
        return Some(Number::Sg);
    }
    if PLURAL_PRONOUNS.contains(&form.as_str()) {
        return Some(Number::Pl);
    }
    match t.pos.as_str() {
        "NNS" | "NNPS" => Some(Number::Pl),
        "NN" | "NNP" => Some(Number::Sg),
        _ => None,
    }
}

/// Nearest verb strictly above `index`.
fn governing_verb(s: &Sentence, index: usize) -> Option<usize> {
    let mut cur = s.token(index).head;
    let mut steps = 0;
    while cur != 0 && steps <= s.len() {
        let t = s.token(cur);
        if tagset::is_verb(t) {
            return Some(cur);
        }
        cur = t.head;
        steps += 1;
    }
    None
}

fn subject_of(s: &Sentence, vc: &VerbalComplex) -> Option<usize> {
    let mut anchors: Vec<usize> = Vec::new();
    anchors.extend(vc.finite_verb);
    anchors.extend(vc.chain.iter().copied());
    anchors.extend(vc.carried.iter().copied());
    anchors.into_iter().find_map(|m| {
        s.children(m)
            .find(|c| tagset::is_subject_rel(&c.deprel))
            .map(|c| c.index)
    })
}

fn first_in_subtree(s: &Sentence, root: usize) -> usize {
    s.tokens
        .iter()
        .map(|t| t.index)
        .find(|&i| s.dominates(root, i))
        .unwrap_or(root)
}

fn is_conditional(s: &Sentence, vc: &VerbalComplex, markers: &BTreeSet<String>) -> bool {
    let is_marker = |t: &Token| markers.contains(&t.form.to_lowercase()) || markers.contains(&tagset::norm_lemma(t));
    let top = s.token(vc.chain[0]);
    // A marker heading its own verb belongs to that verb's clause.
    let introduces = |t: &Token| is_marker(t) && !s.children(t.index).any(tagset::is_verb);
    if vc.members.iter().any(|m| s.children(*m).any(introduces)) {
        return true;
    }
    // English chain parses attach the clause below the subordinator.
    if top.head != 0 && is_marker(s.token(top.head)) {
        return true;
    }
    if vc.language == Language::De && top.head != 0 {
        if let Some(f) = vc.finite_verb {
            let rel = top.deprel.to_ascii_uppercase();
            return !matches!(rel.as_str(), "CJ" | "CONJ" | "RC" | "OC")
                && first_in_subtree(s, top.index) == f
                && !s.tokens.last().is_some_and(|t| t.form == "?");
        }
    }
    false
}

pub fn extract_context_features(
    sentence: &Sentence,
    vc: &VerbalComplex,
    label: &TmvLabel,
    config: &FeatureConfig,
) -> FeatureRecord {
    let s = sentence;
    let subject = subject_of(s, vc);
    let (subject_lemma, subject_determiner, subject_number) = match subject {
        Some(i) => {
            let head = s.token(i);
            let det = s.children(i).find(|c| {
                DETERMINER_TAGS.contains(&c.pos.as_str())
                    || c.upos == "DET"
                    || QUANTIFIERS.contains(&tagset::norm_lemma(c).as_str())
            });
            (
                Some(tagset::norm_lemma(head)),
                det.map(|d| d.form.to_lowercase()),
                number_of(head),
            )
        }
        None => (None, None, None),
    };

    let mut temporal = Vec::new();
    for t in &s.tokens {
        if vc.contains(t.index) || !(is_adverb(t) || is_nominal(t)) {
            continue;
        }
        let Some(mut tag) = config.temporal.tag_of(t) else {
            continue;
        };
        let Some(v) = governing_verb(s, t.index) else {
            continue;
        };
        if !vc.contains(v) {
            continue;
        }
        // "next week", "letzte Woche": a directional modifier decides.
        if tag == TemporalTag::Neutral {
            if let Some(m) = s
                .children(t.index)
                .filter_map(|c| config.temporal.tag_of(c))
                .find(|x| *x != TemporalTag::Neutral)
            {
                tag = m;
            }
        }
        let head = s.get(t.head);
        let relation = if is_adverb(t) {
            "adverb".to_owned()
        } else if let Some(p) = head.filter(|h| is_preposition(h)) {
            p.form.to_lowercase()
        } else {
            "np".to_owned()
        };
        temporal.push(TemporalExpression {
            lemma: tagset::norm_lemma(t),
            relation,
            position: t.index,
            tag,
        });
    }

    FeatureRecord {
        sentence_id: s.id.clone(),
        vc_tokens: vc.members.clone(),
        main_lemma: vc.main_lemma.clone(),
        pattern: vc
            .members
            .iter()
            .map(|m| s.token(*m).pos.as_str())
            .collect::<Vec<_>>()
            .join("+"),
        label: *label,
        subject_lemma,
        subject_determiner,
        subject_number,
        temporal,
        conditional: is_conditional(s, vc, &config.conditional_markers),
    }
}

pub const FEATURE_COLUMNS: [&str; 13] = [
    "sentence_id",
    "vc_token_indices",
    "main_verb_lemma",
    "vc_pattern",
    "tense_label",
    "mood",
    "voice",
    "finiteness",
    "subject_lemma",
    "subject_determiner",
    "subject_number",
    "temporal",
    "conditional",
];

fn opt(v: &Option<impl fmt::Display>) -> String {
    v.as_ref().map_or_else(|| "-".to_owned(), |x| x.to_string())
}

impl FeatureRecord {
    /// `lemma/relation/position/tag` entries joined by `;`.
    pub fn temporal_field(&self) -> String {
        if self.temporal.is_empty() {
            return "-".to_owned();
        }
        self.temporal
            .iter()
            .map(|e| format!("{}/{}/{}/{}", e.lemma, e.relation, e.position, e.tag))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn to_tsv_row(&self) -> String {
        let cols = [
            self.sentence_id.clone(),
            self.vc_tokens
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.main_lemma.clone(),
            self.pattern.clone(),
            self.label.display().to_owned(),
            self.label.mood.to_string(),
            self.label.voice.to_string(),
            self.label.finiteness.to_string(),
            opt(&self.subject_lemma),
            opt(&self.subject_determiner),
            opt(&self.subject_number),
            self.temporal_field(),
            if self.conditional { "1" } else { "0" }.to_owned(),
        ];
        cols.iter()
            .map(|c| c.replace(['\t', '\n'], " "))
            .collect::<Vec<_>>()
            .join("\t")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sentence_id": self.sentence_id,
            "vc_tokens": self.vc_tokens,
            "main_verb_lemma": self.main_lemma,
            "vc_pattern": self.pattern,
            "tense_label": self.label.display(),
            "mood": self.label.mood.to_string(),
            "voice": self.label.voice.to_string(),
            "finiteness": self.label.finiteness.to_string(),
            "subject": {
                "lemma": self.subject_lemma,
                "determiner": self.subject_determiner,
                "number": self.subject_number.map(|n| n.to_string()),
            },
            "temporal": self.temporal.iter().map(|e| json!({
                "lemma": e.lemma,
                "relation": e.relation,
                "position": e.position,
                "tag": e.tag.to_string(),
            })).collect::<Vec<_>>(),
            "conditional": self.conditional,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::Classifier;
    use crate::vc::{extract_vcs, Scheme};

    fn sent(lang: Language, rows: &[(&str, &str, &str, usize, &str, &str)]) -> Sentence {
        let tokens = rows
            .iter()
            .enumerate()
            .map(|(i, (form, lemma, pos, head, rel, feats))| {
                Token::new(i + 1, form, lemma, pos, *head, rel).with_features(feats)
            })
            .collect();
        Sentence::new("f-1", lang, tokens).unwrap()
    }

    fn features(s: &Sentence) -> Vec<FeatureRecord> {
        let c = Classifier::default();
        let cfg = FeatureConfig::default();
        extract_vcs(s, Scheme::Chain)
            .iter()
            .map(|vc| extract_context_features(s, vc, &c.classify(vc, s), &cfg))
            .collect()
    }

    #[test]
    fn ich_komme_morgen() {
        let s = sent(
            Language::De,
            &[
                ("Ich", "ich", "PPER", 2, "SB", "Case=Nom|Number=Sing|Person=1"),
                ("komme", "kommen", "VVFIN", 0, "--", "Tense=Pres|Mood=Ind"),
                ("morgen", "morgen", "ADV", 2, "MO", ""),
                (".", ".", "$.", 2, "--", ""),
            ],
        );
        let f = &features(&s)[0];
        assert_eq!(
            f.temporal,
            vec![TemporalExpression {
                lemma: "morgen".into(),
                relation: "adverb".into(),
                position: 3,
                tag: TemporalTag::Future
            }]
        );
        assert_eq!(f.subject_lemma.as_deref(), Some("ich"));
        assert_eq!(f.subject_determiner, None);
        assert_eq!(f.subject_number, Some(Number::Sg));
        assert!(!f.conditional);
        assert_eq!(f.pattern, "VVFIN");
    }

    #[test]
    fn sentence_initial_morgen() {
        let s = sent(
            Language::De,
            &[
                ("Morgen", "morgen", "ADV", 2, "MO", ""),
                ("weiß", "wissen", "VVFIN", 0, "--", "Tense=Pres|Mood=Ind"),
                ("ich", "ich", "PPER", 2, "SB", ""),
                ("das", "das", "PDS", 2, "OA", ""),
                (".", ".", "$.", 2, "--", ""),
            ],
        );
        let f = &features(&s)[0];
        assert_eq!(f.temporal.len(), 1);
        assert_eq!((f.temporal[0].lemma.as_str(), f.temporal[0].position), ("morgen", 1));
    }

    #[test]
    fn nothing_to_find() {
        let s = sent(
            Language::En,
            &[("Go", "go", "VB", 0, "ROOT", ""), ("!", "!", ".", 1, "P", "")],
        );
        let f = &features(&s)[0];
        assert!(f.temporal.is_empty());
        assert!(!f.conditional);
        assert_eq!(f.subject_lemma, None);
    }

    #[test]
    fn wenn_clause_and_pp() {
        // Wenn er am Montag kommt , gehen wir .
        let s = sent(
            Language::De,
            &[
                ("Wenn", "wenn", "KOUS", 5, "CP", ""),
                ("er", "er", "PPER", 5, "SB", ""),
                ("am", "an", "APPRART", 5, "MO", ""),
                ("Montag", "Montag", "NN", 3, "NK", ""),
                ("kommt", "kommen", "VVFIN", 7, "MO", "Tense=Pres|Mood=Ind"),
                (",", ",", "$,", 7, "--", ""),
                ("gehen", "gehen", "VVFIN", 0, "--", "Tense=Pres|Mood=Ind"),
                ("wir", "wir", "PPER", 7, "SB", ""),
                (".", ".", "$.", 7, "--", ""),
            ],
        );
        let fs = features(&s);
        assert_eq!(fs.len(), 2);
        assert!(fs[0].conditional);
        assert_eq!(fs[0].temporal[0].relation, "am");
        assert_eq!(fs[0].temporal[0].position, 4);
        assert!(!fs[1].conditional);
        assert!(fs[1].temporal.is_empty());
        assert_eq!(fs[1].subject_number, Some(Number::Pl));
    }

    #[test]
    fn english_if_and_determiner() {
        // If many students come next week , we leave .
        let s = sent(
            Language::En,
            &[
                ("If", "if", "IN", 9, "ADV", ""),
                ("many", "many", "JJ", 3, "NMOD", ""),
                ("students", "student", "NNS", 4, "SBJ", ""),
                ("come", "come", "VBP", 1, "SUB", ""),
                ("next", "next", "JJ", 6, "NMOD", ""),
                ("week", "week", "NN", 4, "TMP", ""),
                (",", ",", ",", 9, "P", ""),
                ("we", "we", "PRP", 9, "SBJ", ""),
                ("leave", "leave", "VBP", 0, "ROOT", ""),
                (".", ".", ".", 9, "P", ""),
            ],
        );
        let fs = features(&s);
        assert!(fs[0].conditional);
        assert_eq!(fs[0].subject_determiner.as_deref(), Some("many"));
        assert_eq!(fs[0].subject_number, Some(Number::Pl));
        assert_eq!(fs[0].temporal[0].tag, TemporalTag::Future);
        assert!(!fs[1].conditional);
    }

    #[test]
    fn german_verb_first_conditional() {
        // Kommt er , gehen wir .
        let s = sent(
            Language::De,
            &[
                ("Kommt", "kommen", "VVFIN", 4, "MO", "Tense=Pres|Mood=Ind"),
                ("er", "er", "PPER", 1, "SB", ""),
                (",", ",", "$,", 4, "--", ""),
                ("gehen", "gehen", "VVFIN", 0, "--", "Tense=Pres|Mood=Ind"),
                ("wir", "wir", "PPER", 4, "SB", ""),
                (".", ".", "$.", 4, "--", ""),
            ],
        );
        let fs = features(&s);
        assert!(fs[0].conditional);
        assert!(!fs[1].conditional);
    }

    #[test]
    fn lexicon_file_errors() {
        let err = TemporalLexicon::parse("soon\tsometime\n".as_bytes()).unwrap_err();
        assert!(err.to_string().starts_with("temporal lexicon line 1"));
        let lex = TemporalLexicon::parse("# c\nSoon\n".as_bytes()).unwrap();
        assert_eq!(lex.len(), 1);
    }
}
