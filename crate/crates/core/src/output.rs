//! TSV record formats: annotated complexes and pair dumps.
//!
//! Both formats start with a header line and can be read back into
//! [`LabelRecord`]s / [`PairRecord`]s for statistics.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::conll::{Language, Sentence};
use crate::label::{Mood, Tense, TmvLabel, Voice};
use crate::pairing::VcPair;
use crate::stats::{LabelRecord, PairRecord};
use crate::vc::{Finiteness, VerbalComplex};

pub const ANNOTATED_COLUMNS: [&str; 10] = [
    "sentence_id",
    "vc_token_indices",
    "main_verb_form",
    "main_verb_lemma",
    "tense_label",
    "mood",
    "voice",
    "finiteness",
    "progressive",
    "diagnostics",
];

pub const PAIR_COLUMNS: [&str; 16] = [
    "pair_id",
    "en_label",
    "de_label",
    "en_tokens",
    "de_tokens",
    "link_count",
    "main_verb_aligned",
    "en_mood",
    "en_voice",
    "en_finiteness",
    "en_progressive",
    "de_mood",
    "de_voice",
    "de_finiteness",
    "en_lemma",
    "de_lemma",
];

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

fn clean(field: &str) -> String {
    field.replace(['\t', '\n'], " ")
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn write_annotated_header<W: Write + ?Sized>(out: &mut W) -> io::Result<()> {
    writeln!(out, "{}", ANNOTATED_COLUMNS.join("\t"))
}

pub fn write_annotated_row<W: Write + ?Sized>(out: &mut W, vc: &VerbalComplex, label: &TmvLabel) -> io::Result<()> {
    writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        clean(&vc.sentence_id),
        vc.token_list(),
        clean(&vc.main_form),
        clean(&vc.main_lemma),
        label.display(),
        label.mood,
        label.voice,
        label.finiteness,
        flag(label.progressive),
        label.diagnostics,
    )
}

/// Trailing metadata line; written last so streams need no lookahead.
pub fn write_annotated_footer<W: Write + ?Sized>(out: &mut W, sentences: usize, vcs: usize) -> io::Result<()> {
    writeln!(out, "# sentences={sentences}\tvcs={vcs}")
}

/// Whole-document writer: header, one row per complex in sentence order
/// then leftmost-token order, footer.
pub fn write_annotated<W: Write>(
    mut out: W,
    sentences: &[(Sentence, Vec<(VerbalComplex, TmvLabel)>)],
) -> io::Result<()> {
    write_annotated_header(&mut out)?;
    let mut n = 0;
    for (_, vcs) in sentences {
        let mut sorted: Vec<&(VerbalComplex, TmvLabel)> = vcs.iter().collect();
        sorted.sort_by_key(|(vc, _)| vc.leftmost());
        for (vc, label) in sorted {
            write_annotated_row(&mut out, vc, label)?;
            n += 1;
        }
    }
    write_annotated_footer(&mut out, sentences.len(), n)
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "1" | "true" => Some(true),
        "0" | "false" => Some(false),
        _ => None,
    }
}

struct Fields<'a> {
    cols: Vec<&'a str>,
    line: usize,
}

impl<'a> Fields<'a> {
    fn err(&self, message: String) -> RecordError {
        RecordError::Invalid {
            line: self.line,
            message,
        }
    }

    fn tense(&self, i: usize, lang: Language) -> Result<Tense, RecordError> {
        Tense::parse(self.cols[i], Some(lang))
            .ok_or_else(|| self.err(format!("unknown tense label '{}'", self.cols[i])))
    }

    fn mood(&self, i: usize) -> Result<Mood, RecordError> {
        self.cols[i].parse().map_err(|e: String| self.err(e))
    }

    fn voice(&self, i: usize) -> Result<Voice, RecordError> {
        self.cols[i].parse().map_err(|e: String| self.err(e))
    }

    fn finiteness(&self, i: usize) -> Result<Finiteness, RecordError> {
        self.cols[i].parse().map_err(|e: String| self.err(e))
    }

    fn boolean(&self, i: usize) -> Result<bool, RecordError> {
        parse_bool(self.cols[i]).ok_or_else(|| self.err(format!("expected 0 or 1, found '{}'", self.cols[i])))
    }
}

/// Reads an annotated TSV back. The language decides how tense labels are
/// interpreted.
pub fn read_annotated<R: BufRead>(reader: R, language: Language) -> Result<Vec<LabelRecord>, RecordError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.is_empty() || line.starts_with('#') || line.starts_with("sentence_id\t") {
            continue;
        }
        let f = Fields {
            cols: line.split('\t').collect(),
            line: i + 1,
        };
        if f.cols.len() < 9 {
            return Err(f.err(format!("expected at least 9 columns, found {}", f.cols.len())));
        }
        out.push(LabelRecord {
            tense: f.tense(4, language)?,
            mood: f.mood(5)?,
            voice: f.voice(6)?,
            finiteness: f.finiteness(7)?,
            progressive: f.boolean(8)?,
            lemma: f.cols[3].to_owned(),
        });
    }
    Ok(out)
}

pub fn write_pair_header<W: Write + ?Sized>(out: &mut W) -> io::Result<()> {
    writeln!(out, "{}", PAIR_COLUMNS.join("\t"))
}

fn forms(vc: &VerbalComplex, s: &Sentence) -> String {
    vc.members
        .iter()
        .map(|i| clean(&s.token(*i).form))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_pair_row<W: Write + ?Sized>(out: &mut W, pair: &VcPair, en: &Sentence, de: &Sentence) -> io::Result<()> {
    let (ev, el) = &pair.en;
    let (dv, dl) = &pair.de;
    writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        clean(&pair.pair_id),
        el.display(),
        dl.display(),
        forms(ev, en),
        forms(dv, de),
        pair.link_count,
        flag(pair.main_verb_aligned),
        el.mood,
        el.voice,
        el.finiteness,
        flag(el.progressive),
        dl.mood,
        dl.voice,
        dl.finiteness,
        clean(&ev.main_lemma),
        clean(&dv.main_lemma),
    )
}

/// Reads a pair dump. The six leading columns are required; the remaining
/// attributes default to indicative/active/finite when absent.
pub fn read_pairs<R: BufRead>(reader: R) -> Result<Vec<PairRecord>, RecordError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.is_empty() || line.starts_with('#') || line.starts_with("pair_id\t") {
            continue;
        }
        let f = Fields {
            cols: line.split('\t').collect(),
            line: i + 1,
        };
        if f.cols.len() < 6 {
            return Err(f.err(format!("expected at least 6 columns, found {}", f.cols.len())));
        }
        let full = f.cols.len() >= PAIR_COLUMNS.len();
        let en_tense = f.tense(1, Language::En)?;
        let de_tense = f.tense(2, Language::De)?;
        let default_fin = |t: Tense| match t {
            Tense::En(e) if !e.is_finite() => match e {
                crate::label::EnTense::Gerund => Finiteness::Gerund,
                crate::label::EnTense::ToInfinitive => Finiteness::ToInfinitive,
                _ => Finiteness::BareInfinitive,
            },
            Tense::De(crate::label::DeTense::Infinitive) => Finiteness::BareInfinitive,
            _ => Finiteness::Finite,
        };
        let default_mood = |t: Tense| match t {
            Tense::De(d) if d.is_konjunktiv() => Mood::Subjunctive,
            _ => Mood::Indicative,
        };
        let en = LabelRecord {
            tense: en_tense,
            mood: if full { f.mood(7)? } else { default_mood(en_tense) },
            voice: if full { f.voice(8)? } else { Voice::Active },
            finiteness: if full { f.finiteness(9)? } else { default_fin(en_tense) },
            progressive: if full {
                f.boolean(10)?
            } else {
                en_tense.display().contains("Prog")
            },
            lemma: if full { f.cols[14].to_owned() } else { String::new() },
        };
        let de = LabelRecord {
            tense: de_tense,
            mood: if full { f.mood(11)? } else { default_mood(de_tense) },
            voice: if full { f.voice(12)? } else { Voice::Active },
            finiteness: if full { f.finiteness(13)? } else { default_fin(de_tense) },
            progressive: false,
            lemma: if full { f.cols[15].to_owned() } else { String::new() },
        };
        out.push(PairRecord { en, de });
    }
    Ok(out)
}
