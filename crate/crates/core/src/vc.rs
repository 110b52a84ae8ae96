//! Extraction of verbal complexes from dependency parses.
//!
//! Two annotation schemes are understood:
//!
//! * [`Scheme::Chain`]: CoNLL-2008/2009 style trees (Mate parser output) in
//!   which auxiliaries govern the verb below them through `VC` (English) or
//!   `OC` (German), and English `to` governs its infinitive through `IM`.
//! * [`Scheme::Ud`]: Universal Dependencies, where the lexical verb is the
//!   head and auxiliaries hang below it as `aux`, `aux:pass` or `cop`.
//!
//! Verbs reached through any other relation start a verbal complex of their
//! own, so each clause contributes its own complex.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::conll::{Language, Sentence, Token};
use crate::tagset::{self, AuxKind, VerbForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scheme {
    Ud,
    #[default]
    Chain,
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ud" => Ok(Scheme::Ud),
            "chain" => Ok(Scheme::Chain),
            other => Err(format!("unknown scheme '{other}' (expected ud or chain)")),
        }
    }
}

/// Finiteness class of a verbal complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Finiteness {
    Finite,
    Gerund,
    ToInfinitive,
    BareInfinitive,
    Participle,
}

impl Finiteness {
    pub const ALL: [Finiteness; 5] = [
        Finiteness::Finite,
        Finiteness::Gerund,
        Finiteness::ToInfinitive,
        Finiteness::BareInfinitive,
        Finiteness::Participle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Finiteness::Finite => "finite",
            Finiteness::Gerund => "gerund",
            Finiteness::ToInfinitive => "to_infinitive",
            Finiteness::BareInfinitive => "bare_infinitive",
            Finiteness::Participle => "participle",
        }
    }

    pub fn is_finite(self) -> bool {
        self == Finiteness::Finite
    }
}

impl fmt::Display for Finiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Finiteness {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Finiteness::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown finiteness '{s}'"))
    }
}

/// The verbal tokens (plus infinitival particles) realising one predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerbalComplex {
    pub sentence_id: String,
    pub language: Language,
    /// Member token indices in surface order.
    pub members: Vec<usize>,
    /// Verbal members ordered from the governing verb down to the main verb.
    pub chain: Vec<usize>,
    pub main_verb: usize,
    pub finite_verb: Option<usize>,
    /// Auxiliaries borrowed from a coordinated predicate ("has come and
    /// gone": `has` for `gone`). They stay members of the other complex.
    pub carried: Vec<usize>,
    pub imperative: bool,
    pub main_form: String,
    pub main_lemma: String,
}

impl VerbalComplex {
    pub fn leftmost(&self) -> usize {
        self.members[0]
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    /// Carried context followed by the own chain; this is what the
    /// classifier decomposes.
    pub fn effective_chain(&self) -> Vec<usize> {
        self.carried.iter().chain(self.chain.iter()).copied().collect()
    }

    pub fn token_list(&self) -> String {
        self.members.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn rel(token: &Token) -> String {
    token.deprel.to_ascii_uppercase()
}

fn rel_base(token: &Token) -> String {
    token.deprel.split(':').next().unwrap_or("").to_ascii_lowercase()
}

/// Particle `to` governing an infinitive through `IM` (chain scheme).
fn is_to_node(s: &Sentence, t: &Token) -> bool {
    tagset::is_infinitival_particle(t) && s.children(t.index).any(|c| tagset::is_verb(c) && rel(c) == "IM")
}

fn is_going(s: &Sentence, t: &Token) -> bool {
    t.pos == "VBG" && tagset::norm_lemma(t) == "go" && s.language == Language::En
}

fn chain_edge(s: &Sentence, head: &Token, child: &Token) -> bool {
    let r = rel(child);
    if tagset::is_verb(child) {
        return match r.as_str() {
            "VC" => true,
            // OC also marks clausal objects ("versucht, es zu lesen").
            "OC" => {
                (tagset::aux_kind(head, s.language).is_some() || tagset::is_aux_tag(&head.pos)) && !has_zu(s, child)
            }
            "PRD" => matches!(
                tagset::verb_form(child),
                Some(VerbForm::PastParticiple) | Some(VerbForm::PresentParticiple)
            ),
            "IM" => tagset::is_infinitival_particle(head),
            _ => false,
        };
    }
    if is_to_node(s, child) && is_going(s, head) && matches!(rel(head).as_str(), "VC" | "OC") && head.head != 0 {
        let be = s.token(head.head);
        return tagset::aux_kind(be, s.language) == Some(AuxKind::Be);
    }
    false
}

fn has_zu(s: &Sentence, t: &Token) -> bool {
    t.pos == "VVIZU" || s.children(t.index).any(|c| c.pos == "PTKZU")
}

struct Draft {
    members: Vec<usize>,
    chain: Vec<usize>,
    main: usize,
    root: usize,
}

fn is_lexical(t: &Token, lang: Language) -> bool {
    tagset::aux_kind(t, lang).is_none() && !tagset::is_aux_tag(&t.pos)
}

fn extract_chain_drafts(s: &Sentence) -> Vec<Draft> {
    let n = s.len();
    let lang = s.language;
    let is_node = |t: &Token| tagset::is_verb(t) || is_to_node(s, t);
    let mut parent = vec![None; n + 1];
    for t in &s.tokens {
        if is_node(t) && t.head != 0 {
            let h = s.token(t.head);
            if is_node(h) && chain_edge(s, h, t) {
                parent[t.index] = Some(h.index);
            }
        }
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(i);
        }
    }

    let mut drafts = Vec::new();
    for root in s.tokens.iter().filter(|t| is_node(t) && parent[t.index].is_none()) {
        let mut depth = BTreeMap::new();
        let mut queue = VecDeque::from([(root.index, 0usize)]);
        while let Some((i, d)) = queue.pop_front() {
            depth.insert(i, d);
            for &c in &children[i] {
                queue.push_back((c, d + 1));
            }
        }
        let mut verbal: Vec<(usize, usize)> = depth
            .iter()
            .filter(|(i, _)| tagset::is_verb(s.token(**i)))
            .map(|(i, d)| (*d, *i))
            .collect();
        if verbal.is_empty() {
            continue;
        }
        verbal.sort();
        let max_depth = verbal.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let deepest: Vec<usize> = verbal
            .iter()
            .filter(|(d, _)| *d == max_depth)
            .map(|(_, i)| *i)
            .collect();
        let main = deepest
            .iter()
            .rev()
            .find(|i| is_lexical(s.token(**i), lang))
            .or_else(|| deepest.last())
            .copied()
            .unwrap();
        let mut chain: Vec<usize> = verbal.iter().map(|(_, i)| *i).filter(|i| *i != main).collect();
        chain.push(main);

        let mut members: Vec<usize> = depth.keys().copied().collect();
        // particles attached below chain members (German zu, UD-style to)
        for &m in depth.keys() {
            for c in s.children(m) {
                if tagset::is_infinitival_particle(c) && !is_node(c) && s.children(c.index).next().is_none() {
                    members.push(c.index);
                }
            }
        }
        members.sort_unstable();
        members.dedup();
        drafts.push(Draft {
            members,
            chain,
            main,
            root: root.index,
        });
    }
    drafts
}

fn is_ud_dependent_member(t: &Token) -> bool {
    let base = rel_base(t);
    t.head != 0 && (base == "aux" && tagset::is_verb(t) || base == "cop")
}

fn extract_ud_drafts(s: &Sentence) -> Vec<Draft> {
    let lang = s.language;
    let mut drafts = Vec::new();
    for h in &s.tokens {
        if is_ud_dependent_member(h) {
            continue;
        }
        let deps: Vec<&Token> = s.children(h.index).filter(|c| is_ud_dependent_member(c)).collect();
        let head_verbal = tagset::is_verb(h);
        if !head_verbal && deps.is_empty() {
            continue;
        }
        let mut members: Vec<usize> = deps.iter().map(|t| t.index).collect();
        if head_verbal {
            members.push(h.index);
            for c in s.children(h.index) {
                if rel_base(c) == "mark" && tagset::is_infinitival_particle(c) {
                    members.push(c.index);
                }
            }
        }
        members.sort_unstable();
        let verbal: Vec<usize> = members
            .iter()
            .copied()
            .filter(|i| tagset::is_verb(s.token(*i)))
            .collect();
        if verbal.is_empty() {
            continue;
        }
        let main = if head_verbal {
            h.index
        } else {
            deps.iter()
                .find(|t| rel_base(t) == "cop")
                .map(|t| t.index)
                .unwrap_or(*verbal.last().unwrap())
        };
        let chain = ud_chain_order(s, &verbal, main, lang);
        drafts.push(Draft {
            members,
            chain,
            main,
            root: h.index,
        });
    }
    merge_ud_going_to(s, &mut drafts);
    drafts
}

/// English auxiliaries precede their verb; German non-finite verbs stack
/// right-to-left below the finite one ("gelesen worden ist").
fn ud_chain_order(s: &Sentence, verbal: &[usize], main: usize, lang: Language) -> Vec<usize> {
    let mut chain: Vec<usize> = match lang {
        Language::En => verbal.to_vec(),
        Language::De => {
            let finite = verbal.iter().copied().find(|i| tagset::is_finite(s.token(*i)));
            let mut rest: Vec<usize> = verbal.iter().rev().copied().filter(|i| Some(*i) != finite).collect();
            if let Some(f) = finite {
                rest.insert(0, f);
            }
            rest
        }
    };
    chain.retain(|i| *i != main);
    chain.push(main);
    chain
}

/// UD attaches the infinitive of "be going to" as `xcomp` of `going`; fold it
/// into the complex of `going` when `going` carries a `be` auxiliary.
fn merge_ud_going_to(s: &Sentence, drafts: &mut Vec<Draft>) {
    loop {
        let mut merge = None;
        'outer: for (gi, g) in drafts.iter().enumerate() {
            let going = s.token(g.main);
            if !is_going(s, going) {
                continue;
            }
            let has_be = g
                .chain
                .iter()
                .any(|i| *i != g.main && tagset::aux_kind(s.token(*i), s.language) == Some(AuxKind::Be));
            if !has_be {
                continue;
            }
            for (xi, x) in drafts.iter().enumerate() {
                let root = s.token(x.root);
                if xi != gi
                    && root.head == going.index
                    && rel_base(root) == "xcomp"
                    && root.pos == "VB"
                    && x.members.iter().any(|i| tagset::is_infinitival_particle(s.token(*i)))
                {
                    merge = Some((gi, xi));
                    break 'outer;
                }
            }
        }
        let Some((gi, xi)) = merge else { break };
        let x = drafts.remove(xi);
        let gi = if xi < gi { gi - 1 } else { gi };
        let g = &mut drafts[gi];
        g.members.extend(x.members);
        g.members.sort_unstable();
        g.chain.extend(x.chain);
        g.main = x.main;
    }
}

fn detect_imperative(s: &Sentence, draft: &Draft) -> bool {
    let top = s.token(draft.chain[0]);
    if tagset::verb_form(top) == Some(VerbForm::Imperative) {
        return true;
    }
    let root = s.token(draft.root);
    if root.head != 0 {
        return false;
    }
    let has_subject = draft
        .members
        .iter()
        .any(|m| s.children(*m).any(|c| tagset::is_subject_rel(&c.deprel)));
    if has_subject {
        return false;
    }
    let first_content = s.tokens.iter().find(|t| !tagset::is_punct(t)).map(|t| t.index);
    match s.language {
        Language::En => {
            let has_particle = draft
                .members
                .iter()
                .any(|i| tagset::is_infinitival_particle(s.token(*i)));
            let leading_ok = s.tokens[..top.index - 1].iter().all(|t| {
                tagset::is_punct(t) || matches!(t.pos.as_str(), "RB" | "UH") || t.form.eq_ignore_ascii_case("please")
            });
            top.pos == "VB" && !has_particle && leading_ok
        }
        Language::De => tagset::is_finite(top) && first_content == Some(top.index),
    }
}

fn is_conj_rel(t: &Token) -> bool {
    matches!(rel(t).as_str(), "CONJ" | "CJ")
}

fn is_coord_rel(t: &Token) -> bool {
    matches!(rel(t).as_str(), "COORD" | "CD" | "CC")
}

/// Extracts all verbal complexes of `sentence`, ordered by leftmost member.
pub fn extract_vcs(sentence: &Sentence, scheme: Scheme) -> Vec<VerbalComplex> {
    let s = sentence;
    let mut drafts = match scheme {
        Scheme::Chain => extract_chain_drafts(s),
        Scheme::Ud => extract_ud_drafts(s),
    };
    drafts.sort_by_key(|d| d.members[0]);

    let mut vcs: Vec<VerbalComplex> = drafts
        .iter()
        .map(|d| {
            let imperative = detect_imperative(s, d);
            let finite_verb = d
                .chain
                .iter()
                .copied()
                .find(|i| tagset::is_finite(s.token(*i)))
                .or(if imperative { Some(d.chain[0]) } else { None });
            let main = s.token(d.main);
            VerbalComplex {
                sentence_id: s.id.clone(),
                language: s.language,
                members: d.members.clone(),
                chain: d.chain.clone(),
                main_verb: d.main,
                finite_verb,
                carried: Vec::new(),
                imperative,
                main_form: main.form.clone(),
                main_lemma: tagset::norm_lemma(main),
            }
        })
        .collect();

    // coordinated predicates without their own finite verb share the
    // auxiliaries of the first conjunct
    for yi in 0..vcs.len() {
        if vcs[yi].finite_verb.is_some() {
            continue;
        }
        let root = s.token(drafts[yi].root);
        if !(is_conj_rel(root) || rel_base(root) == "conj") || root.head == 0 {
            continue;
        }
        let h = s.token(root.head);
        let anchor = if tagset::is_verb(h) {
            h.index
        } else if is_coord_rel(h) && h.head != 0 {
            h.head
        } else {
            continue;
        };
        let Some(xi) = vcs.iter().position(|x| x.main_verb == anchor) else {
            continue;
        };
        if xi == yi {
            continue;
        }
        let mut context = vcs[xi].effective_chain();
        context.retain(|i| *i != anchor);
        if context.is_empty() {
            continue;
        }
        vcs[yi].carried = context;
    }
    vcs
}

/// Finiteness class of `vc` within `sentence`.
pub fn finiteness_of(vc: &VerbalComplex, sentence: &Sentence) -> Finiteness {
    if vc.finite_verb.is_some() || vc.carried.iter().any(|i| tagset::is_finite(sentence.token(*i))) {
        return Finiteness::Finite;
    }
    let top = sentence.token(vc.chain[0]);
    let has_particle = vc
        .members
        .iter()
        .any(|i| tagset::is_infinitival_particle(sentence.token(*i)));
    let zu_form = vc
        .chain
        .iter()
        .any(|i| tagset::verb_form(sentence.token(*i)) == Some(VerbForm::ZuInfinitive));
    if has_particle || zu_form {
        return Finiteness::ToInfinitive;
    }
    match tagset::verb_form(top) {
        Some(VerbForm::PresentParticiple) if vc.language == Language::En => Finiteness::Gerund,
        Some(VerbForm::Infinitive) => Finiteness::BareInfinitive,
        _ => Finiteness::Participle,
    }
}
