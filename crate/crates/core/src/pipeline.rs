//! Chunked, order-preserving parallel processing of sentences and sentence
//! pairs.
//!
//! Input is read sequentially in chunks; each chunk is processed on a rayon
//! pool and emitted in input order, so output never depends on the number of
//! workers and memory stays bounded by the chunk size.

use std::io::{self, BufRead};

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::alignment::{AlignmentError, AlignmentReader, AlignmentSet};
use crate::conll::{ConllError, ConllReader, Sentence};
use crate::label::TmvLabel;
use crate::pairing::{pair_vcs, LinkCriterion, MatchingMode, PairingOutcome};
use crate::rules::Classifier;
use crate::vc::{extract_vcs, Scheme, VerbalComplex};

pub const DEFAULT_CHUNK: usize = 1024;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub scheme: Scheme,
    pub classifier: Classifier,
    pub matching: MatchingMode,
    pub criterion: LinkCriterion,
    pub parallelism: usize,
    pub chunk_size: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            scheme: Scheme::Chain,
            classifier: Classifier::default(),
            matching: MatchingMode::Greedy,
            criterion: LinkCriterion::AnyLink,
            parallelism: 1,
            chunk_size: DEFAULT_CHUNK,
        }
    }
}

impl PipelineConfig {
    pub fn pool(&self) -> io::Result<ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallelism.max(1))
            .build()
            .map_err(io::Error::other)
    }
}

#[derive(Clone, Debug)]
pub struct AnnotatedSentence {
    pub sentence: Sentence,
    /// Ordered by leftmost member.
    pub vcs: Vec<(VerbalComplex, TmvLabel)>,
}

pub fn annotate_sentence(sentence: Sentence, scheme: Scheme, classifier: &Classifier) -> AnnotatedSentence {
    let vcs = extract_vcs(&sentence, scheme)
        .into_iter()
        .map(|vc| {
            let label = classifier.classify(&vc, &sentence);
            (vc, label)
        })
        .collect();
    AnnotatedSentence { sentence, vcs }
}

#[derive(Clone, Debug)]
pub struct PairedSentence {
    pub en: AnnotatedSentence,
    pub de: AnnotatedSentence,
    pub links: AlignmentSet,
    pub outcome: PairingOutcome,
}

pub fn pair_sentences(en: Sentence, de: Sentence, links: AlignmentSet, cfg: &PipelineConfig) -> PairedSentence {
    let en = annotate_sentence(en, cfg.scheme, &cfg.classifier);
    let de = annotate_sentence(de, cfg.scheme, &cfg.classifier);
    let outcome = pair_vcs(
        &en.sentence.id,
        &en.vcs,
        &de.vcs,
        &links,
        (en.sentence.len(), de.sentence.len()),
        cfg.matching,
        cfg.criterion,
    );
    PairedSentence { en, de, links, outcome }
}

/// Counters reported at the end of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub sentences: usize,
    pub vcs: usize,
    pub pairs: usize,
    pub unpaired_en: usize,
    pub unpaired_de: usize,
    pub dropped_links: usize,
    pub exhaustive_fallbacks: usize,
    pub diagnostics: usize,
    /// Recoverable input errors (malformed lines, rejected sentences).
    pub errors: usize,
    pub warnings: usize,
}

impl Summary {
    pub fn render(&self) -> String {
        let mut s = format!(
            "sentences={} vcs={} errors={} warnings={} flagged_labels={}",
            self.sentences, self.vcs, self.errors, self.warnings, self.diagnostics
        );
        if self.pairs + self.unpaired_en + self.unpaired_de > 0 || self.dropped_links > 0 {
            s.push_str(&format!(
                " pairs={} unpaired_en={} unpaired_de={} dropped_links={}",
                self.pairs, self.unpaired_en, self.unpaired_de, self.dropped_links
            ));
        }
        if self.exhaustive_fallbacks > 0 {
            s.push_str(&format!(" exhaustive_fallbacks={}", self.exhaustive_fallbacks));
        }
        s
    }

    fn count_annotated(&mut self, a: &AnnotatedSentence) {
        self.sentences += 1;
        self.vcs += a.vcs.len();
        self.diagnostics += a.vcs.iter().filter(|(_, l)| !l.diagnostics.is_clean()).count();
    }
}

/// Fatal conditions that stop a run.
#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Input(String),
}

/// Annotates a CoNLL stream. `warn` receives every recoverable problem,
/// `sink` every annotated sentence in input order.
pub fn annotate_stream<R, W, S>(
    mut reader: ConllReader<R>,
    cfg: &PipelineConfig,
    mut warn: W,
    mut sink: S,
) -> Result<Summary, PipelineError>
where
    R: BufRead,
    W: FnMut(&str),
    S: FnMut(&AnnotatedSentence) -> io::Result<()>,
{
    let pool = cfg.pool()?;
    let mut summary = Summary::default();
    let chunk = cfg.chunk_size.max(1);
    loop {
        let mut batch = Vec::with_capacity(chunk);
        let mut exhausted = false;
        while batch.len() < chunk {
            match reader.next() {
                None => {
                    exhausted = true;
                    break;
                }
                Some(Ok(s)) => batch.push(s),
                Some(Err(e)) if e.is_fatal() => return Err(PipelineError::Io(into_io(e))),
                Some(Err(e)) => {
                    summary.errors += 1;
                    warn(&e.to_string());
                }
            }
        }
        for w in reader.take_warnings() {
            summary.warnings += 1;
            warn(&w);
        }
        let done: Vec<AnnotatedSentence> = pool.install(|| {
            batch
                .into_par_iter()
                .map(|s| annotate_sentence(s, cfg.scheme, &cfg.classifier))
                .collect()
        });
        for a in &done {
            summary.count_annotated(a);
            sink(a)?;
        }
        if exhausted {
            return Ok(summary);
        }
    }
}

fn into_io(e: ConllError) -> io::Error {
    match e {
        ConllError::Io(e) => e,
        other => io::Error::other(other.to_string()),
    }
}

// Short-lived and moved once per pair; boxing would only add an allocation.
#[allow(clippy::large_enum_variant)]
enum Slot {
    Ready(Sentence, Sentence, AlignmentSet),
    Skipped,
}

/// Annotates and pairs three parallel streams in lockstep. A sentence pair
/// whose English or German block was rejected, or whose alignment line is
/// malformed, is skipped and reported.
pub fn pair_stream<R1, R2, R3, W, S>(
    mut en: ConllReader<R1>,
    mut de: ConllReader<R2>,
    mut align: AlignmentReader<R3>,
    cfg: &PipelineConfig,
    mut warn: W,
    mut sink: S,
) -> Result<Summary, PipelineError>
where
    R1: BufRead,
    R2: BufRead,
    R3: BufRead,
    W: FnMut(&str),
    S: FnMut(&PairedSentence) -> io::Result<()>,
{
    let pool = cfg.pool()?;
    let mut summary = Summary::default();
    let chunk = cfg.chunk_size.max(1);
    let mut index = 0usize;
    loop {
        let mut batch = Vec::with_capacity(chunk);
        let mut exhausted = false;
        while batch.len() < chunk {
            let (e, d, a) = (en.next(), de.next(), align.next());
            index += 1;
            match (e, d, a) {
                (None, None, None) => {
                    exhausted = true;
                    break;
                }
                (e, d, a) if e.is_none() || d.is_none() || a.is_none() => {
                    let count = |present: bool| if present { "more" } else { "fewer" };
                    return Err(PipelineError::Input(format!(
                        "inputs have different lengths at sentence pair {index}: English has {}, German has {}, alignment has {} entries",
                        count(e.is_some()),
                        count(d.is_some()),
                        count(a.is_some())
                    )));
                }
                (Some(e), Some(d), Some(a)) => {
                    let mut ok = true;
                    let e = match e {
                        Ok(s) => Some(s),
                        Err(err) if err.is_fatal() => return Err(PipelineError::Io(into_io(err))),
                        Err(err) => {
                            ok = false;
                            summary.errors += 1;
                            warn(&format!("en: {err}"));
                            None
                        }
                    };
                    let d = match d {
                        Ok(s) => Some(s),
                        Err(err) if err.is_fatal() => return Err(PipelineError::Io(into_io(err))),
                        Err(err) => {
                            ok = false;
                            summary.errors += 1;
                            warn(&format!("de: {err}"));
                            None
                        }
                    };
                    let a = match a {
                        Ok(a) => Some(a),
                        Err(AlignmentError::Io(err)) => return Err(PipelineError::Io(err)),
                        Err(err) => {
                            ok = false;
                            summary.errors += 1;
                            warn(&format!("alignment: {err}"));
                            None
                        }
                    };
                    match (ok, e, d, a) {
                        (true, Some(e), Some(d), Some(a)) => batch.push(Slot::Ready(e, d, a)),
                        _ => batch.push(Slot::Skipped),
                    }
                }
                _ => unreachable!(),
            }
        }
        for w in en.take_warnings() {
            summary.warnings += 1;
            warn(&format!("en: {w}"));
        }
        for w in de.take_warnings() {
            summary.warnings += 1;
            warn(&format!("de: {w}"));
        }
        let done: Vec<Option<PairedSentence>> = pool.install(|| {
            batch
                .into_par_iter()
                .map(|slot| match slot {
                    Slot::Ready(e, d, a) => Some(pair_sentences(e, d, a, cfg)),
                    Slot::Skipped => None,
                })
                .collect()
        });
        for p in done.iter().flatten() {
            summary.count_annotated(&p.en);
            summary.count_annotated(&p.de);
            summary.pairs += p.outcome.pairs.len();
            summary.unpaired_en += p.outcome.unpaired_en.len();
            summary.unpaired_de += p.outcome.unpaired_de.len();
            summary.dropped_links += p.outcome.dropped_links;
            if p.outcome.fell_back {
                summary.exhaustive_fallbacks += 1;
            }
            if p.outcome.dropped_links > 0 {
                summary.warnings += 1;
                warn(&format!(
                    "{}: dropped {} alignment link(s) outside the sentences",
                    p.en.sentence.id, p.outcome.dropped_links
                ));
            }
            sink(p)?;
        }
        if exhausted {
            return Ok(summary);
        }
    }
}
