//! Synthetic parsed sentences with a known verbal-complex label.
//!
//! Every builder produces a chain-scheme parse (VC/OC edges) whose target
//! complex realizes the requested tense and voice. Non-finite targets are
//! embedded under a finite present-tense context verb, so the sentence has
//! two complexes. Used by tests, examples and benchmark corpora; the output
//! is a pure function of the inputs.

use std::io::{self, Write};

use crate::alignment::{write_alignment, AlignmentSet, Indexing};
use crate::conll::{write_conll, Language, Sentence, Token};
use crate::label::{DeTense, EnBase, EnTense, Tense, Voice};

/// English lexical verbs: base, past, participle, -ing.
pub const EN_VERBS: &[[&str; 4]] = &[
    ["write", "wrote", "written", "writing"],
    ["take", "took", "taken", "taking"],
    ["give", "gave", "given", "giving"],
    ["see", "saw", "seen", "seeing"],
    ["make", "made", "made", "making"],
    ["think", "thought", "thought", "thinking"],
];

/// German lexical verbs: infinitive, 3sg present, 3sg past, participle,
/// Konjunktiv I, Konjunktiv II.
pub const DE_VERBS: &[[&str; 6]] = &[
    [
        "schreiben",
        "schreibt",
        "schrieb",
        "geschrieben",
        "schreibe",
        "schriebe",
    ],
    ["geben", "gibt", "gab", "gegeben", "gebe", "gäbe"],
    ["sehen", "sieht", "sah", "gesehen", "sehe", "sähe"],
    ["nehmen", "nimmt", "nahm", "genommen", "nehme", "nähme"],
    ["denken", "denkt", "dachte", "gedacht", "denke", "dächte"],
    ["ziehen", "zieht", "zog", "gezogen", "ziehe", "zöge"],
    ["stehen", "steht", "stand", "gestanden", "stehe", "stünde"],
    ["sein", "ist", "war", "gewesen", "sei", "wäre"],
];

/// Verbs forming the perfect with `sein`.
const DE_SEIN_PERFECT: &[&str] = &["sein"];

/// Variant selecting German verb `lemma` with the given surface pattern
/// (0 = synthetic form, 1 = periphrastic where one exists).
pub fn de_variant(lemma: &str, pattern: usize) -> usize {
    let verb = DE_VERBS.iter().position(|v| v[0] == lemma).expect("known German verb");
    verb + pattern * DE_VERBS.len()
}

/// Requested label of a synthetic complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Spec {
    pub tense: Tense,
    pub voice: Voice,
    /// Selects the lexical verb and, where several surface patterns exist,
    /// the pattern.
    pub variant: usize,
}

impl Spec {
    pub fn en(tense: EnTense, voice: Voice) -> Self {
        Spec {
            tense: Tense::En(tense),
            voice,
            variant: 0,
        }
    }

    pub fn de(tense: DeTense, voice: Voice) -> Self {
        Spec {
            tense: Tense::De(tense),
            voice,
            variant: 0,
        }
    }

    pub fn variant(mut self, variant: usize) -> Self {
        self.variant = variant;
        self
    }

    pub fn language(&self) -> Language {
        self.tense.language()
    }
}

/// A generated sentence and the token indices that matter for alignment.
#[derive(Clone, Debug)]
pub struct Synth {
    pub sentence: Sentence,
    pub subject: usize,
    pub object: usize,
    /// Target complex, top-down.
    pub chain: Vec<usize>,
    /// Finite context verb of a non-finite target.
    pub context: Option<usize>,
    pub punct: usize,
}

impl Synth {
    pub fn main_verb(&self) -> usize {
        *self.chain.last().expect("chain is non-empty")
    }

    pub fn top(&self) -> usize {
        self.chain[0]
    }
}

struct Row {
    form: String,
    lemma: String,
    pos: &'static str,
    feats: String,
    head: usize,
    rel: &'static str,
}

fn row(form: &str, lemma: &str, pos: &'static str, feats: &str) -> Row {
    Row {
        form: form.to_owned(),
        lemma: lemma.to_owned(),
        pos,
        feats: feats.to_owned(),
        head: 0,
        rel: "",
    }
}

fn finish(id: &str, language: Language, rows: Vec<Row>) -> Sentence {
    let tokens = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| Token::new(i + 1, &r.form, &r.lemma, r.pos, r.head, r.rel).with_features(&r.feats))
        .collect();
    Sentence::new(id, language, tokens).expect("synthetic parse is a tree")
}

#[derive(Clone, Copy, PartialEq)]
enum EnSlot {
    Base,
    Pres,
    Past,
    Part,
    Ing,
}

fn en_form(lemma: &str, slot: EnSlot, verb: &[&str; 4]) -> (String, &'static str) {
    let (form, pos) = match (lemma, slot) {
        ("have", EnSlot::Base | EnSlot::Pres) => ("have", if slot == EnSlot::Base { "VB" } else { "VBP" }),
        ("have", EnSlot::Past) => ("had", "VBD"),
        ("have", EnSlot::Part) => ("had", "VBN"),
        ("have", EnSlot::Ing) => ("having", "VBG"),
        ("be", EnSlot::Base) => ("be", "VB"),
        ("be", EnSlot::Pres) => ("are", "VBP"),
        ("be", EnSlot::Past) => ("were", "VBD"),
        ("be", EnSlot::Part) => ("been", "VBN"),
        ("be", EnSlot::Ing) => ("being", "VBG"),
        (_, EnSlot::Base) => (verb[0], "VB"),
        (_, EnSlot::Pres) => (verb[0], "VBP"),
        (_, EnSlot::Past) => (verb[1], "VBD"),
        (_, EnSlot::Part) => (verb[2], "VBN"),
        (_, EnSlot::Ing) => (verb[3], "VBG"),
    };
    (form.to_owned(), pos)
}

/// Verb lemmas of an English chain below the tense-bearing position, with
/// the slot each one forces on its successor.
fn en_layers(perfect: bool, progressive: bool, passive: bool) -> Vec<(&'static str, EnSlot)> {
    let mut layers = Vec::new();
    if perfect {
        layers.push(("have", EnSlot::Part));
    }
    if progressive {
        layers.push(("be", EnSlot::Ing));
    }
    if passive {
        layers.push(("be", EnSlot::Part));
    }
    layers.push(("", EnSlot::Base));
    layers
}

fn en_chain_rows(first: EnSlot, layers: &[(&'static str, EnSlot)], verb: &[&str; 4]) -> Vec<Row> {
    let mut slot = first;
    let mut rows = Vec::new();
    for (lemma, next) in layers {
        let lem = if lemma.is_empty() { verb[0] } else { lemma };
        let (form, pos) = en_form(lemma, slot, verb);
        rows.push(row(&form, lem, pos, ""));
        slot = *next;
    }
    rows
}

/// English sentence whose target complex has the requested label.
pub fn english(id: &str, spec: Spec) -> Synth {
    let Tense::En(tense) = spec.tense else {
        panic!("english() needs an English tense");
    };
    let verb = &EN_VERBS[spec.variant % EN_VERBS.len()];
    let passive = spec.voice == Voice::Passive;
    let mut rows = vec![row("They", "they", "PRP", "")];
    let mut context = None;
    let chain_rows;
    match tense.decompose() {
        Some((base, perfect, progressive)) => {
            let layers = en_layers(perfect, progressive, passive);
            let first = match base {
                EnBase::Present => EnSlot::Pres,
                EnBase::Past => EnSlot::Past,
                EnBase::Future | EnBase::Conditional => {
                    let modal = if base == EnBase::Future { "will" } else { "would" };
                    rows.push(row(modal, modal, "MD", ""));
                    EnSlot::Base
                }
            };
            chain_rows = en_chain_rows(first, &layers, verb);
        }
        None => {
            let (ctx, ctx_rel) = match tense {
                EnTense::Gerund => ("like", "OBJ"),
                EnTense::ToInfinitive => ("want", "OPRD"),
                _ => ("let", "OPRD"),
            };
            rows.push(row(ctx, ctx, "VBP", ""));
            context = Some(rows.len());
            match tense {
                EnTense::ToInfinitive => {
                    let mut to = row("to", "to", "TO", "");
                    to.head = 2;
                    to.rel = ctx_rel;
                    rows.push(to);
                }
                EnTense::BareInfinitive => {
                    let mut him = row("him", "he", "PRP", "");
                    him.head = 2;
                    him.rel = "OBJ";
                    rows.push(him);
                }
                _ => {}
            }
            let first = if tense == EnTense::Gerund {
                EnSlot::Ing
            } else {
                EnSlot::Base
            };
            chain_rows = en_chain_rows(first, &en_layers(false, false, passive), verb);
        }
    }

    // Chain: modal (if any) is the last pushed row before chain_rows.
    let mut chain: Vec<usize> = Vec::new();
    if context.is_none() && rows.len() == 2 {
        chain.push(2);
    }
    let start = rows.len() + 1;
    for (k, mut r) in chain_rows.into_iter().enumerate() {
        let idx = start + k;
        if let Some(&prev) = chain.last() {
            r.head = prev;
            r.rel = "VC";
        }
        rows.push(r);
        chain.push(idx);
    }
    let top = chain[0];
    match context {
        None => {
            rows[top - 1].head = 0;
            rows[top - 1].rel = "ROOT";
            rows[0].head = top;
            rows[0].rel = "SBJ";
        }
        Some(ctx) => {
            rows[ctx - 1].head = 0;
            rows[ctx - 1].rel = "ROOT";
            rows[0].head = ctx;
            rows[0].rel = "SBJ";
            match tense {
                EnTense::ToInfinitive => {
                    rows[top - 1].head = ctx + 1;
                    rows[top - 1].rel = "IM";
                }
                EnTense::Gerund => {
                    rows[top - 1].head = ctx;
                    rows[top - 1].rel = "OBJ";
                }
                _ => {
                    rows[top - 1].head = ctx;
                    rows[top - 1].rel = "OPRD";
                }
            }
        }
    }
    let main = *chain.last().unwrap();
    let mut object = 0;
    if !passive {
        let mut it = row("it", "it", "PRP", "");
        it.head = main;
        it.rel = "OBJ";
        rows.push(it);
        object = rows.len();
    }
    let mut dot = row(".", ".", ".", "");
    dot.head = context.unwrap_or(top);
    dot.rel = "P";
    rows.push(dot);
    let punct = rows.len();
    Synth {
        sentence: finish(id, Language::En, rows),
        subject: 1,
        object,
        chain,
        context,
        punct,
    }
}

const IND_PRES: &str = "Tense=Pres|Mood=Ind";
const IND_PAST: &str = "Tense=Past|Mood=Ind";
const SUB_PRES: &str = "Tense=Pres|Mood=Sub";
const SUB_PAST: &str = "Tense=Past|Mood=Sub";

type DeVerb = [&'static str; 6];

fn de_finite(form: &str, lemma: &str, pos: &'static str, feats: &str) -> Row {
    row(form, lemma, pos, feats)
}

/// Finite German chain, top-down.
fn de_chain(tense: DeTense, passive: bool, verb: &DeVerb, variant: usize) -> Vec<Row> {
    let aux = |form: &str, lemma: &str, feats: &str| de_finite(form, lemma, "VAFIN", feats);
    let worden = || row("worden", "werden", "VAPP", "");
    let use_periphrasis = (variant / DE_VERBS.len()) % 2 == 1;
    let sein = DE_SEIN_PERFECT.contains(&verb[0]);
    let (lex_pos, perf) = if verb[0] == "sein" {
        ("VAFIN", ["ist", "war", "sei", "wäre", "sein"])
    } else if sein {
        ("VVFIN", ["ist", "war", "sei", "wäre", "sein"])
    } else {
        ("VVFIN", ["hat", "hatte", "habe", "hätte", "haben"])
    };
    let perf_lemma = if sein { "sein" } else { "haben" };
    let pp = || row(verb[3], verb[0], if verb[0] == "sein" { "VAPP" } else { "VVPP" }, "");
    let inf = || row(verb[0], verb[0], if verb[0] == "sein" { "VAINF" } else { "VVINF" }, "");
    use DeTense::*;
    if !passive {
        return match tense {
            Praesens => vec![de_finite(verb[1], verb[0], lex_pos, IND_PRES)],
            Praeteritum => vec![de_finite(verb[2], verb[0], lex_pos, IND_PAST)],
            Perfekt => vec![aux(perf[0], perf_lemma, IND_PRES), pp()],
            Plusquamperfekt => vec![aux(perf[1], perf_lemma, IND_PAST), pp()],
            FuturI => vec![aux("wird", "werden", IND_PRES), inf()],
            FuturII => vec![
                aux("wird", "werden", IND_PRES),
                row(perf[4], perf_lemma, "VAINF", ""),
                pp(),
            ],
            KonjunktivIPresent if use_periphrasis => vec![aux("werde", "werden", SUB_PRES), inf()],
            KonjunktivIPresent => vec![de_finite(verb[4], verb[0], lex_pos, SUB_PRES)],
            KonjunktivIPast => vec![aux(perf[2], perf_lemma, SUB_PRES), pp()],
            KonjunktivIIPresent if use_periphrasis => vec![aux("würde", "werden", SUB_PAST), inf()],
            KonjunktivIIPresent => vec![de_finite(verb[5], verb[0], lex_pos, SUB_PAST)],
            KonjunktivIIPast => vec![aux(perf[3], perf_lemma, SUB_PAST), pp()],
            Infinitive => unreachable!("infinitive is built separately"),
        };
    }
    match tense {
        Praesens => vec![aux("wird", "werden", IND_PRES), pp()],
        Praeteritum => vec![aux("wurde", "werden", IND_PAST), pp()],
        Perfekt => vec![aux("ist", "sein", IND_PRES), worden(), pp()],
        Plusquamperfekt => vec![aux("war", "sein", IND_PAST), worden(), pp()],
        FuturI => vec![
            aux("wird", "werden", IND_PRES),
            row("werden", "werden", "VAINF", ""),
            pp(),
        ],
        FuturII => vec![
            aux("wird", "werden", IND_PRES),
            row("sein", "sein", "VAINF", ""),
            worden(),
            pp(),
        ],
        KonjunktivIPresent => vec![aux("werde", "werden", SUB_PRES), pp()],
        KonjunktivIPast => vec![aux("sei", "sein", SUB_PRES), worden(), pp()],
        KonjunktivIIPresent => vec![aux("würde", "werden", SUB_PAST), pp()],
        KonjunktivIIPast => vec![aux("wäre", "sein", SUB_PAST), worden(), pp()],
        Infinitive => unreachable!("infinitive is built separately"),
    }
}

/// German sentence whose target complex has the requested label.
pub fn german(id: &str, spec: Spec) -> Synth {
    let Tense::De(tense) = spec.tense else {
        panic!("german() needs a German tense");
    };
    let verb = &DE_VERBS[spec.variant % DE_VERBS.len()];
    let passive = spec.voice == Voice::Passive;
    let mut rows = vec![row("Er", "er", "PPER", "Case=Nom|Number=Sing")];
    if tense == DeTense::Infinitive {
        // Er versucht , es zu schreiben .   /   Er versucht , es geschrieben zu werden .
        let mut ctx = de_finite("versucht", "versuchen", "VVFIN", IND_PRES);
        ctx.rel = "--";
        rows.push(ctx);
        rows[0].head = 2;
        rows[0].rel = "SB";
        let mut comma = row(",", ",", "$,", "");
        comma.head = 2;
        comma.rel = "--";
        rows.push(comma);
        let object_slot = if passive { 0 } else { 4 };
        if !passive {
            rows.push(row("es", "es", "PPER", ""));
        }
        let chain: Vec<usize>;
        if passive {
            let pp_idx = rows.len() + 1;
            let mut pp = row(verb[3], verb[0], "VVPP", "");
            pp.head = pp_idx + 2;
            pp.rel = "OC";
            rows.push(pp);
            let mut zu = row("zu", "zu", "PTKZU", "");
            zu.head = pp_idx + 2;
            zu.rel = "PM";
            rows.push(zu);
            let mut werden = row("werden", "werden", "VAINF", "");
            werden.head = 2;
            werden.rel = "OC";
            rows.push(werden);
            chain = vec![pp_idx + 2, pp_idx];
        } else {
            let zu_idx = rows.len() + 1;
            let mut zu = row("zu", "zu", "PTKZU", "");
            zu.head = zu_idx + 1;
            zu.rel = "PM";
            rows.push(zu);
            let mut inf = row(verb[0], verb[0], "VVINF", "");
            inf.head = 2;
            inf.rel = "OC";
            rows.push(inf);
            rows[object_slot - 1].head = zu_idx + 1;
            rows[object_slot - 1].rel = "OA";
            chain = vec![zu_idx + 1];
        }
        let mut dot = row(".", ".", "$.", "");
        dot.head = 2;
        dot.rel = "--";
        rows.push(dot);
        let punct = rows.len();
        return Synth {
            sentence: finish(id, Language::De, rows),
            subject: 1,
            object: object_slot,
            chain,
            context: Some(2),
            punct,
        };
    }

    // Er <finite> es <rest in verb-final order> .
    let chain_rows = de_chain(tense, passive, verb, spec.variant);
    let n = chain_rows.len();
    let mut it = chain_rows.into_iter();
    let mut finite = it.next().unwrap();
    finite.rel = "--";
    rows.push(finite);
    rows[0].head = 2;
    rows[0].rel = "SB";
    let mut object = 0;
    if !passive {
        rows.push(row("es", "es", "PPER", ""));
        object = rows.len();
    }
    // Non-finite members appear in reverse chain order.
    let rest: Vec<Row> = it.collect();
    let first_rest = rows.len() + 1;
    let mut chain = vec![2];
    let positions: Vec<usize> = (0..rest.len()).map(|k| first_rest + rest.len() - 1 - k).collect();
    chain.extend(&positions);
    let mut placed: Vec<Option<Row>> = (0..rest.len()).map(|_| None).collect();
    for (k, mut r) in rest.into_iter().enumerate() {
        r.head = chain[k];
        r.rel = "OC";
        placed[positions[k] - first_rest] = Some(r);
    }
    rows.extend(placed.into_iter().map(|r| r.unwrap()));
    debug_assert_eq!(chain.len(), n);
    let main = *chain.last().unwrap();
    if object != 0 {
        rows[object - 1].head = main;
        rows[object - 1].rel = "OA";
    }
    let mut dot = row(".", ".", "$.", "");
    dot.head = 2;
    dot.rel = "--";
    rows.push(dot);
    let punct = rows.len();
    Synth {
        sentence: finish(id, Language::De, rows),
        subject: 1,
        object,
        chain,
        context: None,
        punct,
    }
}

pub fn sentence(id: &str, spec: Spec) -> Synth {
    match spec.language() {
        Language::En => english(id, spec),
        Language::De => german(id, spec),
    }
}

/// A synthetic translation pair whose target complexes are aligned.
#[derive(Clone, Debug)]
pub struct SynthPair {
    pub en: Synth,
    pub de: Synth,
    pub links: AlignmentSet,
}

/// Builds an aligned pair: subjects, objects, main verbs, tense-bearing tops
/// and final punctuation are linked. Context verbs stay unaligned.
pub fn pair(id: &str, en: Spec, de: Spec) -> SynthPair {
    let e = english(id, en);
    let d = german(id, de);
    let mut links = vec![
        (e.subject, d.subject),
        (e.main_verb(), d.main_verb()),
        (e.punct, d.punct),
    ];
    if e.top() != e.main_verb() && d.top() != d.main_verb() {
        links.push((e.top(), d.top()));
    }
    if e.object != 0 && d.object != 0 {
        links.push((e.object, d.object));
    }
    SynthPair {
        links: AlignmentSet::new(id, links),
        en: e,
        de: d,
    }
}

/// Deterministic spec sequence cycling through every tense, voice and verb.
pub fn cycling_spec(language: Language, i: usize) -> Spec {
    let inventory = Tense::inventory(language);
    let tense = inventory[i % inventory.len()];
    let voice = if (i / inventory.len()) % 3 == 2 {
        Voice::Passive
    } else {
        Voice::Active
    };
    Spec {
        tense,
        voice,
        variant: i / (3 * inventory.len()) + i,
    }
}

/// `n` aligned pairs with ids `{doc}-{k}` (1-based).
pub fn corpus(doc: &str, n: usize) -> Vec<SynthPair> {
    (0..n)
        .map(|i| {
            let en = cycling_spec(Language::En, i);
            let de = cycling_spec(Language::De, i.wrapping_mul(7).wrapping_add(3));
            pair(&format!("{doc}-{}", i + 1), en, de)
        })
        .collect()
}

/// Writes pairs as two CoNLL-U streams and a zero-based alignment stream.
pub fn write_parallel<A: Write, B: Write, C: Write>(pairs: &[SynthPair], en: A, de: B, align: C) -> io::Result<()> {
    let mut en = io::BufWriter::new(en);
    let mut de = io::BufWriter::new(de);
    for p in pairs {
        write_conll(&mut en, std::slice::from_ref(&p.en.sentence))?;
        write_conll(&mut de, std::slice::from_ref(&p.de.sentence))?;
    }
    let links: Vec<AlignmentSet> = pairs.iter().map(|p| p.links.clone()).collect();
    let mut align = io::BufWriter::new(align);
    write_alignment(&mut align, &links, Indexing::ZeroBased)?;
    align.flush()?;
    en.flush()?;
    de.flush()
}
