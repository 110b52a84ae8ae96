//! Tense, mood and voice annotation for English and German verbal complexes,
//! bilingual pairing of verbal complexes over word alignments, and
//! contrastive correspondence statistics.

pub mod alignment;
pub mod cli;
pub mod conll;
pub mod features;
pub mod label;
pub mod lexicon;
pub mod output;
pub mod pairing;
pub mod pipeline;
pub mod reference;
pub mod repro;
pub mod rules;
pub mod stats;
pub mod synth;
pub mod tagset;
pub mod vc;
