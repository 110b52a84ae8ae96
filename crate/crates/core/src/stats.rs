//! Correspondence matrices, tense distributions, finiteness ratios and
//! lemma profiles.
//!
//! Every aggregate is a mergeable count table over a fixed label space, so
//! shards can be counted independently and merged in any order. Relative
//! frequencies are exact rationals; [`render_fixed`] gives the 6-decimal
//! rendering used in reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde_json::{json, Value};
use thiserror::Error;

use crate::conll::Language;
use crate::label::{Mood, Tense, TmvLabel, Voice, DE_MOOD_GROUPS};
use crate::pairing::VcPair;
use crate::vc::{Finiteness, VerbalComplex};

/// Label attributes that statistics look at.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelRecord {
    pub tense: Tense,
    pub mood: Mood,
    pub voice: Voice,
    pub finiteness: Finiteness,
    pub progressive: bool,
    pub lemma: String,
}

impl LabelRecord {
    pub fn new(label: &TmvLabel, lemma: &str) -> Self {
        LabelRecord {
            tense: label.tense,
            mood: label.mood,
            voice: label.voice,
            finiteness: label.finiteness,
            progressive: label.progressive,
            lemma: lemma.to_owned(),
        }
    }

    pub fn from_vc(vc: &VerbalComplex, label: &TmvLabel) -> Self {
        Self::new(label, &vc.main_lemma)
    }

    pub fn language(&self) -> Language {
        self.tense.language()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairRecord {
    pub en: LabelRecord,
    pub de: LabelRecord,
}

impl From<&VcPair> for PairRecord {
    fn from(p: &VcPair) -> Self {
        PairRecord {
            en: LabelRecord::from_vc(&p.en.0, &p.en.1),
            de: LabelRecord::from_vc(&p.de.0, &p.de.1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Direction {
    #[default]
    EnDe,
    DeEn,
}

impl Direction {
    pub fn source(self) -> Language {
        match self {
            Direction::EnDe => Language::En,
            Direction::DeEn => Language::De,
        }
    }

    pub fn target(self) -> Language {
        match self {
            Direction::EnDe => Language::De,
            Direction::DeEn => Language::En,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::EnDe => "en-de",
            Direction::DeEn => "de-en",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "en-de" | "en2de" | "ende" => Ok(Direction::EnDe),
            "de-en" | "de2en" | "deen" => Ok(Direction::DeEn),
            _ => Err(format!("unknown direction '{s}' (expected en-de or de-en)")),
        }
    }
}

/// Label granularity: `Mood` collapses Konjunktiv I/II present and past.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Grouping {
    #[default]
    Fine,
    Mood,
}

impl fmt::Display for Grouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grouping::Fine => "fine",
            Grouping::Mood => "mood",
        })
    }
}

impl FromStr for Grouping {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fine" | "tense" => Ok(Grouping::Fine),
            "mood" => Ok(Grouping::Mood),
            _ => Err(format!("unknown grouping '{s}' (expected fine or mood)")),
        }
    }
}

/// Label of `tense` under `grouping`.
pub fn group_label(tense: Tense, grouping: Grouping) -> &'static str {
    match (tense, grouping) {
        (Tense::De(t), Grouping::Mood) => t.mood_group(),
        (t, _) => t.display(),
    }
}

/// Label space of `language` in axis order.
pub fn label_space(language: Language, grouping: Grouping) -> Vec<String> {
    match (language, grouping) {
        (Language::De, Grouping::Mood) => DE_MOOD_GROUPS.iter().map(|s| s.to_string()).collect(),
        _ => Tense::inventory(language)
            .into_iter()
            .map(|t| t.display().to_owned())
            .collect(),
    }
}

/// Resolves user-supplied labels to labels of the space, keeping axis order.
pub fn resolve_labels(labels: &[String], language: Language, grouping: Grouping) -> Result<BTreeSet<String>, String> {
    let space = label_space(language, grouping);
    let mut out = BTreeSet::new();
    for l in labels {
        let l = l.trim();
        if let Some(hit) = space.iter().find(|s| s.eq_ignore_ascii_case(l)) {
            out.insert(hit.clone());
            continue;
        }
        match Tense::parse(l, Some(language)) {
            Some(t) => {
                out.insert(group_label(t, grouping).to_owned());
            }
            None => {
                return Err(format!(
                    "unknown {} label '{l}'; valid labels: {}",
                    language.code(),
                    space.join(", ")
                ))
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MergeError {
    #[error("cannot merge aggregates with different {0}")]
    Mismatch(&'static str),
}

/// Commutative, associative combination with an empty identity.
pub trait Merge: Sized {
    fn merge(&self, other: &Self) -> Result<Self, MergeError>;
}

/// Exact frequency `n/d` with `0/0 = 0`.
pub fn ratio(n: u64, d: u64) -> Ratio<u64> {
    if d == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(n, d)
    }
}

/// Fixed-point rendering with 6 decimals, rounding half up.
pub fn render_fixed(r: Ratio<u64>) -> String {
    let n = *r.numer() as u128;
    let d = *r.denom() as u128;
    let scaled = (n * 2_000_000 + d) / (2 * d);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

pub fn to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSpec {
    pub direction: Direction,
    pub grouping: Grouping,
    /// Source labels to keep; `None` keeps all.
    pub row_filter: Option<BTreeSet<String>>,
    /// Target labels to keep; pairs with other targets are not counted.
    pub col_filter: Option<BTreeSet<String>>,
    pub include_imperatives: bool,
}

impl MatrixSpec {
    pub fn new(direction: Direction) -> Self {
        MatrixSpec {
            direction,
            grouping: Grouping::Fine,
            row_filter: None,
            col_filter: None,
            include_imperatives: false,
        }
    }

    pub fn grouping(mut self, grouping: Grouping) -> Self {
        self.grouping = grouping;
        self
    }

    pub fn rows(mut self, labels: &[&str]) -> Self {
        self.row_filter = Some(labels.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn cols(mut self, labels: &[&str]) -> Self {
        self.col_filter = Some(labels.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn include_imperatives(mut self, yes: bool) -> Self {
        self.include_imperatives = yes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceMatrix {
    pub spec: MatrixSpec,
    pub corpus_ids: BTreeSet<String>,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub counts: Vec<Vec<u64>>,
}

impl CorrespondenceMatrix {
    pub fn new(spec: MatrixSpec) -> Self {
        let source_grouping = if spec.direction.source() == Language::De {
            spec.grouping
        } else {
            Grouping::Fine
        };
        let target_grouping = if spec.direction.target() == Language::De {
            spec.grouping
        } else {
            Grouping::Fine
        };
        let keep = |space: Vec<String>, filter: &Option<BTreeSet<String>>| -> Vec<String> {
            space
                .into_iter()
                .filter(|l| filter.as_ref().is_none_or(|f| f.contains(l)))
                .collect()
        };
        let rows = keep(label_space(spec.direction.source(), source_grouping), &spec.row_filter);
        let cols = keep(label_space(spec.direction.target(), target_grouping), &spec.col_filter);
        let counts = vec![vec![0; cols.len()]; rows.len()];
        CorrespondenceMatrix {
            spec,
            corpus_ids: BTreeSet::new(),
            rows,
            cols,
            counts,
        }
    }

    pub fn with_corpus(mut self, corpus_id: &str) -> Self {
        self.corpus_ids.insert(corpus_id.to_owned());
        self
    }

    pub fn from_pairs<'a>(spec: MatrixSpec, corpus_id: &str, pairs: impl IntoIterator<Item = &'a PairRecord>) -> Self {
        let mut m = CorrespondenceMatrix::new(spec).with_corpus(corpus_id);
        for p in pairs {
            m.add(p);
        }
        m
    }

    /// Counts one pair; returns whether it passed the filters.
    pub fn add(&mut self, pair: &PairRecord) -> bool {
        if !self.spec.include_imperatives && (pair.en.mood == Mood::Imperative || pair.de.mood == Mood::Imperative) {
            return false;
        }
        let (src, tgt) = match self.spec.direction {
            Direction::EnDe => (&pair.en, &pair.de),
            Direction::DeEn => (&pair.de, &pair.en),
        };
        let r = group_label(src.tense, self.spec.grouping);
        let c = group_label(tgt.tense, self.spec.grouping);
        let (Some(ri), Some(ci)) = (
            self.rows.iter().position(|x| x == r),
            self.cols.iter().position(|x| x == c),
        ) else {
            return false;
        };
        self.counts[ri][ci] += 1;
        true
    }

    pub fn row_total(&self, r: usize) -> u64 {
        self.counts[r].iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn is_row_empty(&self, r: usize) -> bool {
        self.row_total(r) == 0
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|x| x == label)
    }

    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.cols.iter().position(|x| x == label)
    }

    pub fn row_freq(&self, r: usize, c: usize) -> Ratio<u64> {
        ratio(self.counts[r][c], self.row_total(r))
    }

    pub fn freq_row(&self, r: usize) -> Vec<Ratio<u64>> {
        (0..self.cols.len()).map(|c| self.row_freq(r, c)).collect()
    }

    pub fn freq(&self, row: &str, col: &str) -> Option<Ratio<u64>> {
        Some(self.row_freq(self.row_index(row)?, self.col_index(col)?))
    }

    /// Frequencies of several source rows counted together (e.g. all
    /// non-finite English forms).
    pub fn pooled_row(&self, labels: &[&str]) -> Vec<Ratio<u64>> {
        let idx: Vec<usize> = labels.iter().filter_map(|l| self.row_index(l)).collect();
        let sums: Vec<u64> = (0..self.cols.len())
            .map(|c| idx.iter().map(|&r| self.counts[r][c]).sum())
            .collect();
        let total: u64 = sums.iter().sum();
        sums.into_iter().map(|n| ratio(n, total)).collect()
    }

    /// Rows × columns of 6-decimal frequencies.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for c in &self.cols {
            out.push(',');
            out.push_str(&csv_field(c));
        }
        out.push('\n');
        for (r, label) in self.rows.iter().enumerate() {
            out.push_str(&csv_field(label));
            for c in 0..self.cols.len() {
                out.push(',');
                out.push_str(&render_fixed(self.row_freq(r, c)));
            }
            out.push('\n');
        }
        out
    }

    /// Figure layout: one line per target label, one column per non-empty
    /// source row.
    pub fn to_plot_data(&self) -> String {
        let series: Vec<usize> = (0..self.rows.len()).filter(|&r| !self.is_row_empty(r)).collect();
        let mut out = String::from("Tense");
        for &r in &series {
            out.push(',');
            out.push_str(&csv_field(&self.rows[r]));
        }
        out.push('\n');
        for (c, label) in self.cols.iter().enumerate() {
            out.push_str(&csv_field(label));
            for &r in &series {
                out.push(',');
                out.push_str(&render_fixed(self.row_freq(r, c)));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let filter = |f: &Option<BTreeSet<String>>| match f {
            Some(set) => json!(set.iter().collect::<Vec<_>>()),
            None => Value::Null,
        };
        json!({
            "kind": "correspondence_matrix",
            "corpus_ids": self.corpus_ids.iter().collect::<Vec<_>>(),
            "direction": self.spec.direction.to_string(),
            "grouping": self.spec.grouping.to_string(),
            "filters": {
                "rows": filter(&self.spec.row_filter),
                "cols": filter(&self.spec.col_filter),
                "include_imperatives": self.spec.include_imperatives,
            },
            "rows": self.rows,
            "cols": self.cols,
            "counts": self.counts,
            "row_totals": (0..self.rows.len()).map(|r| self.row_total(r)).collect::<Vec<_>>(),
            "empty_rows": (0..self.rows.len()).filter(|&r| self.is_row_empty(r)).map(|r| &self.rows[r]).collect::<Vec<_>>(),
            "total": self.total(),
            "frequencies": (0..self.rows.len())
                .map(|r| self.freq_row(r).into_iter().map(render_fixed).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "exact": (0..self.rows.len())
                .map(|r| self.freq_row(r).into_iter().map(|q| q.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn add_counts(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Merge for CorrespondenceMatrix {
    fn merge(&self, other: &Self) -> Result<Self, MergeError> {
        if self.spec != other.spec || self.rows != other.rows || self.cols != other.cols {
            return Err(MergeError::Mismatch("label spaces or filters"));
        }
        Ok(CorrespondenceMatrix {
            spec: self.spec.clone(),
            corpus_ids: self.corpus_ids.union(&other.corpus_ids).cloned().collect(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| add_counts(a, b))
                .collect(),
        })
    }
}

/// Finiteness restriction of a [`VcFilter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FinitenessFilter {
    Finite,
    NonFinite,
    Exactly(Finiteness),
}

impl FromStr for FinitenessFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "finite" => Ok(FinitenessFilter::Finite),
            "nonfinite" | "non-finite" | "non_finite" => Ok(FinitenessFilter::NonFinite),
            other => other
                .parse::<Finiteness>()
                .map(FinitenessFilter::Exactly)
                .map_err(|_| format!("unknown finiteness filter '{s}'")),
        }
    }
}

impl fmt::Display for FinitenessFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitenessFilter::Finite => f.write_str("finite"),
            FinitenessFilter::NonFinite => f.write_str("nonfinite"),
            FinitenessFilter::Exactly(x) => write!(f, "{x}"),
        }
    }
}

/// Predicate over labeled complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VcFilter {
    pub mood: Option<Mood>,
    pub voice: Option<Voice>,
    pub finiteness: Option<FinitenessFilter>,
    pub include_imperatives: bool,
}

impl VcFilter {
    pub fn all() -> Self {
        Self::default()
    }

    /// Finite indicative active forms.
    pub fn indicative_active() -> Self {
        VcFilter {
            mood: Some(Mood::Indicative),
            voice: Some(Voice::Active),
            finiteness: Some(FinitenessFilter::Finite),
            include_imperatives: false,
        }
    }

    pub fn accepts(&self, rec: &LabelRecord) -> bool {
        if rec.mood == Mood::Imperative && !self.include_imperatives {
            return false;
        }
        if self.mood.is_some_and(|m| m != rec.mood) || self.voice.is_some_and(|v| v != rec.voice) {
            return false;
        }
        match self.finiteness {
            None => true,
            Some(FinitenessFilter::Finite) => rec.finiteness.is_finite(),
            Some(FinitenessFilter::NonFinite) => !rec.finiteness.is_finite(),
            Some(FinitenessFilter::Exactly(f)) => rec.finiteness == f,
        }
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(m) = self.mood {
            parts.push(format!("mood={m}"));
        }
        if let Some(v) = self.voice {
            parts.push(format!("voice={v}"));
        }
        if let Some(f) = self.finiteness {
            parts.push(format!("finiteness={f}"));
        }
        if self.include_imperatives {
            parts.push("imperatives=included".to_owned());
        }
        if parts.is_empty() {
            "all".to_owned()
        } else {
            parts.join(";")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TenseDistribution {
    pub language: Language,
    pub grouping: Grouping,
    pub filter: VcFilter,
    pub corpus_ids: BTreeSet<String>,
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
}

impl TenseDistribution {
    pub fn new(language: Language, grouping: Grouping, filter: VcFilter) -> Self {
        let labels = label_space(language, grouping);
        TenseDistribution {
            language,
            grouping,
            filter,
            corpus_ids: BTreeSet::new(),
            counts: vec![0; labels.len()],
            labels,
        }
    }

    pub fn with_corpus(mut self, corpus_id: &str) -> Self {
        self.corpus_ids.insert(corpus_id.to_owned());
        self
    }

    pub fn from_records<'a>(
        language: Language,
        grouping: Grouping,
        filter: VcFilter,
        corpus_id: &str,
        records: impl IntoIterator<Item = &'a LabelRecord>,
    ) -> Self {
        let mut d = TenseDistribution::new(language, grouping, filter).with_corpus(corpus_id);
        for r in records {
            d.add(r);
        }
        d
    }

    pub fn add(&mut self, rec: &LabelRecord) -> bool {
        if rec.language() != self.language || !self.filter.accepts(rec) {
            return false;
        }
        let l = group_label(rec.tense, self.grouping);
        match self.labels.iter().position(|x| x == l) {
            Some(i) => {
                self.counts[i] += 1;
                true
            }
            None => false,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, label: &str) -> u64 {
        self.labels
            .iter()
            .position(|x| x == label)
            .map_or(0, |i| self.counts[i])
    }

    pub fn freq(&self, label: &str) -> Ratio<u64> {
        ratio(self.count(label), self.total())
    }

    /// Non-zero entries as `label -> (count, frequency)` in axis order.
    pub fn entries(&self) -> Vec<(String, u64, Ratio<u64>)> {
        let total = self.total();
        self.labels
            .iter()
            .zip(&self.counts)
            .filter(|(_, &n)| n > 0)
            .map(|(l, &n)| (l.clone(), n, ratio(n, total)))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,count,frequency\n");
        for (l, n) in self.labels.iter().zip(&self.counts) {
            let f = ratio(*n, self.total());
            out.push_str(&format!("{},{},{}\n", csv_field(l), n, render_fixed(f)));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let total = self.total();
        json!({
            "kind": "tense_distribution",
            "language": self.language.code(),
            "grouping": self.grouping.to_string(),
            "filter": self.filter.describe(),
            "corpus_ids": self.corpus_ids.iter().collect::<Vec<_>>(),
            "labels": self.labels,
            "counts": self.counts,
            "total": total,
            "frequencies": self.counts.iter().map(|n| render_fixed(ratio(*n, total))).collect::<Vec<_>>(),
            "exact": self.counts.iter().map(|n| ratio(*n, total).to_string()).collect::<Vec<_>>(),
        })
    }
}

impl Merge for TenseDistribution {
    fn merge(&self, other: &Self) -> Result<Self, MergeError> {
        if self.language != other.language || self.grouping != other.grouping || self.labels != other.labels {
            return Err(MergeError::Mismatch("label spaces"));
        }
        if self.filter != other.filter {
            return Err(MergeError::Mismatch("filters"));
        }
        Ok(TenseDistribution {
            language: self.language,
            grouping: self.grouping,
            filter: self.filter.clone(),
            corpus_ids: self.corpus_ids.union(&other.corpus_ids).cloned().collect(),
            labels: self.labels.clone(),
            counts: add_counts(&self.counts, &other.counts),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinitenessRatio {
    pub non_finite: u64,
    pub total: u64,
}

impl FinitenessRatio {
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a LabelRecord>) -> Self {
        let mut r = FinitenessRatio::default();
        for rec in records {
            r.add(rec);
        }
        r
    }

    pub fn add(&mut self, rec: &LabelRecord) {
        self.total += 1;
        if !rec.finiteness.is_finite() {
            self.non_finite += 1;
        }
    }

    pub fn exact(&self) -> Ratio<u64> {
        ratio(self.non_finite, self.total)
    }

    /// `non_finite / total`, 0 for an empty input.
    pub fn ratio(&self) -> f64 {
        to_f64(self.exact())
    }
}

impl Merge for FinitenessRatio {
    fn merge(&self, other: &Self) -> Result<Self, MergeError> {
        Ok(FinitenessRatio {
            non_finite: self.non_finite + other.non_finite,
            total: self.total + other.total,
        })
    }
}

pub fn finiteness_ratio<'a>(records: impl IntoIterator<Item = &'a LabelRecord>) -> (u64, u64, f64) {
    let r = FinitenessRatio::from_records(records);
    (r.non_finite, r.total, r.ratio())
}

/// Tense counts of complexes with a given main-verb lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaProfile {
    pub language: Language,
    pub lemma: String,
    pub voice: Option<Voice>,
    pub corpus_ids: BTreeSet<String>,
    pub counts: BTreeMap<Tense, u64>,
}

impl LemmaProfile {
    pub fn new(language: Language, lemma: &str, voice: Option<Voice>) -> Self {
        LemmaProfile {
            language,
            lemma: lemma.to_owned(),
            voice,
            corpus_ids: BTreeSet::new(),
            counts: BTreeMap::new(),
        }
    }

    pub fn with_corpus(mut self, corpus_id: &str) -> Self {
        self.corpus_ids.insert(corpus_id.to_owned());
        self
    }

    pub fn add(&mut self, rec: &LabelRecord) -> bool {
        if rec.language() != self.language
            || !rec.lemma.eq_ignore_ascii_case(&self.lemma) && rec.lemma.to_lowercase() != self.lemma.to_lowercase()
            || self.voice.is_some_and(|v| v != rec.voice)
            || rec.mood == Mood::Imperative
        {
            return false;
        }
        *self.counts.entry(rec.tense).or_insert(0) += 1;
        true
    }

    pub fn count(&self, tense: Tense) -> u64 {
        self.counts.get(&tense).copied().unwrap_or(0)
    }

    /// Display label → count, non-zero entries only.
    pub fn as_map(&self) -> BTreeMap<&'static str, u64> {
        self.counts.iter().map(|(t, n)| (t.display(), *n)).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("label\tcount\n");
        for (t, n) in &self.counts {
            out.push_str(&format!("{}\t{}\n", t.display(), n));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "lemma_profile",
            "language": self.language.code(),
            "lemma": self.lemma,
            "voice": self.voice.map(|v| v.to_string()),
            "corpus_ids": self.corpus_ids.iter().collect::<Vec<_>>(),
            "labels": self.counts.keys().map(|t| t.display()).collect::<Vec<_>>(),
            "counts": self.counts.values().collect::<Vec<_>>(),
        })
    }
}

pub fn lemma_tense_profile<'a>(
    records: impl IntoIterator<Item = &'a LabelRecord>,
    language: Language,
    lemma: &str,
    voice: Option<Voice>,
) -> LemmaProfile {
    let mut p = LemmaProfile::new(language, lemma, voice);
    for r in records {
        p.add(r);
    }
    p
}

impl Merge for LemmaProfile {
    fn merge(&self, other: &Self) -> Result<Self, MergeError> {
        if self.language != other.language
            || self.lemma.to_lowercase() != other.lemma.to_lowercase()
            || self.voice != other.voice
        {
            return Err(MergeError::Mismatch("lemma or voice"));
        }
        let mut counts = self.counts.clone();
        for (t, n) in &other.counts {
            *counts.entry(*t).or_insert(0) += n;
        }
        Ok(LemmaProfile {
            language: self.language,
            lemma: self.lemma.clone(),
            voice: self.voice,
            corpus_ids: self.corpus_ids.union(&other.corpus_ids).cloned().collect(),
            counts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{DeTense, EnTense};

    fn rec(tense: Tense, mood: Mood, voice: Voice, finiteness: Finiteness, lemma: &str) -> LabelRecord {
        LabelRecord {
            tense,
            mood,
            voice,
            finiteness,
            progressive: false,
            lemma: lemma.to_owned(),
        }
    }

    fn en(t: EnTense) -> LabelRecord {
        let fin = if t.is_finite() {
            Finiteness::Finite
        } else {
            Finiteness::Gerund
        };
        rec(Tense::En(t), Mood::Indicative, Voice::Active, fin, "x")
    }

    fn de(t: DeTense) -> LabelRecord {
        let mood = if t.is_konjunktiv() {
            Mood::Subjunctive
        } else {
            Mood::Indicative
        };
        let fin = if t == DeTense::Infinitive {
            Finiteness::BareInfinitive
        } else {
            Finiteness::Finite
        };
        rec(Tense::De(t), mood, Voice::Active, fin, "x")
    }

    fn pair(e: EnTense, d: DeTense) -> PairRecord {
        PairRecord { en: en(e), de: de(d) }
    }

    #[test]
    fn three_pair_matrix() {
        let pairs = [
            pair(EnTense::PresentPerfect, DeTense::Perfekt),
            pair(EnTense::PresentPerfect, DeTense::Praesens),
            pair(EnTense::PresentSimple, DeTense::Praesens),
        ];
        let m = CorrespondenceMatrix::from_pairs(MatrixSpec::new(Direction::EnDe), "toy", &pairs);
        assert_eq!(m.freq("presPerf", "Perfekt"), Some(Ratio::new(1, 2)));
        assert_eq!(m.freq("presPerf", "Präsens"), Some(Ratio::new(1, 2)));
        assert_eq!(m.freq("pres", "Präsens"), Some(Ratio::from_integer(1)));
        assert_eq!(m.total(), 3);
        assert!(m.is_row_empty(m.row_index("past").unwrap()));
        assert_eq!(m.rows.len(), 19);
        assert_eq!(m.cols.len(), 11);
    }

    #[test]
    fn empty_matrix_is_zero() {
        let m = CorrespondenceMatrix::new(MatrixSpec::new(Direction::DeEn));
        assert_eq!(m.total(), 0);
        assert!((0..m.rows.len()).all(|r| m.is_row_empty(r)));
        assert!(m.to_csv().lines().nth(1).unwrap().ends_with(",0.000000"));
    }

    #[test]
    fn imperatives_excluded_by_default() {
        let mut p = pair(EnTense::PresentSimple, DeTense::Praesens);
        p.en.mood = Mood::Imperative;
        let m = CorrespondenceMatrix::from_pairs(MatrixSpec::new(Direction::EnDe), "t", [&p]);
        assert_eq!(m.total(), 0);
        let m = CorrespondenceMatrix::from_pairs(MatrixSpec::new(Direction::EnDe).include_imperatives(true), "t", [&p]);
        assert_eq!(m.total(), 1);
    }

    #[test]
    fn mood_grouping_and_column_filter() {
        let pairs = [
            pair(EnTense::PresentSimple, DeTense::KonjunktivIPresent),
            pair(EnTense::PresentSimple, DeTense::KonjunktivIIPast),
            pair(EnTense::PresentSimple, DeTense::KonjunktivIIPresent),
            pair(EnTense::PresentSimple, DeTense::Praesens),
        ];
        let spec = MatrixSpec::new(Direction::EnDe)
            .grouping(Grouping::Mood)
            .cols(&["Konjunktiv I", "Konjunktiv II"]);
        let m = CorrespondenceMatrix::from_pairs(spec, "t", &pairs);
        assert_eq!(m.cols, vec!["Konjunktiv I", "Konjunktiv II"]);
        assert_eq!(m.freq("pres", "Konjunktiv II"), Some(Ratio::new(2, 3)));
        assert_eq!(m.total(), 3);
    }

    #[test]
    fn fixed_rendering_rounds_half_up() {
        assert_eq!(render_fixed(Ratio::new(1, 3)), "0.333333");
        assert_eq!(render_fixed(Ratio::new(2, 3)), "0.666667");
        assert_eq!(render_fixed(Ratio::new(1, 2_000_000)), "0.000001");
        assert_eq!(render_fixed(Ratio::new(1, 1)), "1.000000");
        assert_eq!(render_fixed(ratio(0, 0)), "0.000000");
    }

    #[test]
    fn indicative_distribution() {
        let recs = [
            de(DeTense::Praesens),
            de(DeTense::Praesens),
            de(DeTense::Praeteritum),
            de(DeTense::KonjunktivIIPresent),
        ];
        let filter = VcFilter {
            mood: Some(Mood::Indicative),
            ..VcFilter::default()
        };
        let d = TenseDistribution::from_records(Language::De, Grouping::Fine, filter, "t", &recs);
        assert_eq!(d.freq("Präsens"), Ratio::new(2, 3));
        assert_eq!(d.freq("Präteritum"), Ratio::new(1, 3));
        assert_eq!(d.total(), 3);
        let empty = TenseDistribution::new(Language::De, Grouping::Fine, VcFilter::all());
        assert!(empty.entries().is_empty());
    }

    #[test]
    fn finiteness_ratio_counts() {
        let mut recs: Vec<LabelRecord> = (0..7).map(|_| en(EnTense::PresentSimple)).collect();
        recs.extend((0..3).map(|_| en(EnTense::Gerund)));
        assert_eq!(finiteness_ratio(&recs), (3, 10, 0.3));
        assert_eq!(finiteness_ratio(&[]), (0, 0, 0.0));
    }

    #[test]
    fn lemma_profile_counts() {
        let mut a = de(DeTense::Praeteritum);
        a.lemma = "stehen".into();
        let mut b = de(DeTense::Perfekt);
        b.lemma = "stehen".into();
        let p = lemma_tense_profile([&a, &b], Language::De, "stehen", None);
        assert_eq!(p.as_map(), BTreeMap::from([("Präteritum", 1), ("Perfekt", 1)]));
        assert!(lemma_tense_profile([&a, &b], Language::De, "gehen", None)
            .as_map()
            .is_empty());
        assert!(
            lemma_tense_profile([&a, &b], Language::De, "stehen", Some(Voice::Passive))
                .as_map()
                .is_empty()
        );
    }

    #[test]
    fn merge_two_single_pair_matrices() {
        let spec = MatrixSpec::new(Direction::EnDe);
        let a = CorrespondenceMatrix::from_pairs(spec.clone(), "a", [&pair(EnTense::PastSimple, DeTense::Praeteritum)]);
        let b = CorrespondenceMatrix::from_pairs(spec.clone(), "b", [&pair(EnTense::PastSimple, DeTense::Perfekt)]);
        let both = CorrespondenceMatrix::from_pairs(
            spec.clone(),
            "a",
            &[
                pair(EnTense::PastSimple, DeTense::Praeteritum),
                pair(EnTense::PastSimple, DeTense::Perfekt),
            ],
        )
        .with_corpus("b");
        assert_eq!(a.merge(&b).unwrap(), both);
        assert_eq!(a.merge(&CorrespondenceMatrix::new(spec)).unwrap().counts, a.counts);
        let other = CorrespondenceMatrix::new(MatrixSpec::new(Direction::DeEn));
        assert!(a.merge(&other).is_err());
    }

    #[test]
    fn plot_data_layout() {
        let pairs = [
            pair(EnTense::PresentPerfect, DeTense::Perfekt),
            pair(EnTense::PresentPerfectProgressive, DeTense::Praesens),
        ];
        let spec = MatrixSpec::new(Direction::EnDe).rows(&["presPerf", "presPerfProg"]);
        let m = CorrespondenceMatrix::from_pairs(spec, "t", &pairs);
        let plot = m.to_plot_data();
        let lines: Vec<&str> = plot.lines().collect();
        assert_eq!(lines[0], "Tense,presPerf,presPerfProg");
        assert_eq!(lines[1], "Präsens,0.000000,1.000000");
        assert_eq!(lines[3], "Perfekt,1.000000,0.000000");
    }

    #[test]
    fn resolve_user_labels() {
        let set = resolve_labels(&["Konj II past".into(), "pres".into()], Language::De, Grouping::Fine);
        assert!(set.is_err());
        let set = resolve_labels(
            &["Konj II past".into(), "plusquamperfekt".into()],
            Language::De,
            Grouping::Fine,
        )
        .unwrap();
        assert_eq!(
            set,
            BTreeSet::from(["Konj II past".to_owned(), "Pluperfekt".to_owned()])
        );
        let set = resolve_labels(&["konjunktivII_past".into()], Language::De, Grouping::Mood).unwrap();
        assert_eq!(set, BTreeSet::from(["Konjunktiv II".to_owned()]));
    }
}
