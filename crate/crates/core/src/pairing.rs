//! Pairing of English and German verbal complexes through word alignments.
//!
//! The weight of a candidate pair is the number of alignment links between
//! the members of the two complexes. The greedy matcher repeatedly takes the
//! heaviest remaining candidate; ties prefer pairs whose main verbs are
//! linked, then the smaller English and the smaller German leftmost index.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::alignment::AlignmentSet;
use crate::label::TmvLabel;
use crate::vc::VerbalComplex;

/// Largest instance (per side) the exhaustive matcher accepts.
pub const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MatchingMode {
    #[default]
    Greedy,
    Exhaustive,
}

impl FromStr for MatchingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "greedy" => Ok(MatchingMode::Greedy),
            "exhaustive" => Ok(MatchingMode::Exhaustive),
            _ => Err(format!("unknown matching mode '{s}' (expected greedy or exhaustive)")),
        }
    }
}

impl fmt::Display for MatchingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchingMode::Greedy => "greedy",
            MatchingMode::Exhaustive => "exhaustive",
        })
    }
}

/// Which alignment links make two complexes pairing candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LinkCriterion {
    /// Any link between members; main-verb links only break ties.
    #[default]
    AnyLink,
    /// Only complexes whose main verbs are aligned to each other.
    MainVerb,
}

impl FromStr for LinkCriterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "any-link" | "any" => Ok(LinkCriterion::AnyLink),
            "main-verb" => Ok(LinkCriterion::MainVerb),
            _ => Err(format!(
                "unknown pairing criterion '{s}' (expected any-link or main-verb)"
            )),
        }
    }
}

impl fmt::Display for LinkCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkCriterion::AnyLink => "any-link",
            LinkCriterion::MainVerb => "main-verb",
        })
    }
}

/// Weights and tie-break data of one sentence pair, detached from the
/// complexes themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchInstance {
    pub weights: Vec<Vec<usize>>,
    pub main_aligned: Vec<Vec<bool>>,
    pub en_leftmost: Vec<usize>,
    pub de_leftmost: Vec<usize>,
}

impl MatchInstance {
    pub fn new(
        weights: Vec<Vec<usize>>,
        main_aligned: Vec<Vec<bool>>,
        en_leftmost: Vec<usize>,
        de_leftmost: Vec<usize>,
    ) -> Self {
        MatchInstance {
            weights,
            main_aligned,
            en_leftmost,
            de_leftmost,
        }
    }

    /// Instance with leftmost indices equal to the row/column positions and
    /// no main-verb links.
    pub fn from_weights(weights: Vec<Vec<usize>>) -> Self {
        let rows = weights.len();
        let cols = weights.first().map_or(0, Vec::len);
        MatchInstance {
            main_aligned: vec![vec![false; cols]; rows],
            en_leftmost: (1..=rows).collect(),
            de_leftmost: (1..=cols).collect(),
            weights,
        }
    }

    pub fn rows(&self) -> usize {
        self.weights.len()
    }

    pub fn cols(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    pub fn total(&self, matching: &[(usize, usize)]) -> usize {
        matching.iter().map(|&(e, d)| self.weights[e][d]).sum()
    }

    /// Greedy preference order: heavier first, then main-verb link, then
    /// smaller English leftmost, then smaller German leftmost.
    fn prefer(&self, a: (usize, usize), b: (usize, usize)) -> Ordering {
        let key = |(e, d): (usize, usize)| {
            (
                std::cmp::Reverse(self.weights[e][d]),
                !self.main_aligned[e][d],
                self.en_leftmost[e],
                self.de_leftmost[d],
            )
        };
        key(a).cmp(&key(b))
    }
}

/// Greedy max-link matching; result sorted by English position.
///
/// Every step takes a heaviest remaining edge. When several are equally
/// heavy, the one whose greedy continuation collects more links wins; the
/// preference order of [`MatchInstance`] settles the rest. The look-ahead
/// is only done for instances within [`EXHAUSTIVE_LIMIT`] on both sides.
pub fn greedy_matching(inst: &MatchInstance) -> Vec<(usize, usize)> {
    if inst.rows() > EXHAUSTIVE_LIMIT || inst.cols() > EXHAUSTIVE_LIMIT {
        return greedy_in_order(inst);
    }
    let mut memo = HashMap::new();
    let (mut en_used, mut de_used) = (0u32, 0u32);
    let mut out = Vec::new();
    loop {
        let tied = heaviest_free(inst, en_used, de_used);
        let Some(&first) = tied.first() else { break };
        let pick = if tied.len() > 1 {
            let mut best = (first, 0);
            for (k, &(e, d)) in tied.iter().enumerate() {
                let gain = continuation(inst, en_used | 1 << e, de_used | 1 << d, &mut memo);
                if k == 0 || gain > best.1 {
                    best = ((e, d), gain);
                }
            }
            best.0
        } else {
            first
        };
        en_used |= 1 << pick.0;
        de_used |= 1 << pick.1;
        out.push(pick);
    }
    out.sort_unstable();
    out
}

/// Plain linear scan over all positive edges in preference order.
fn greedy_in_order(inst: &MatchInstance) -> Vec<(usize, usize)> {
    let mut candidates: Vec<(usize, usize)> = (0..inst.rows())
        .flat_map(|e| (0..inst.cols()).map(move |d| (e, d)))
        .filter(|&(e, d)| inst.weights[e][d] > 0)
        .collect();
    candidates.sort_by(|a, b| inst.prefer(*a, *b));
    let mut en_used = vec![false; inst.rows()];
    let mut de_used = vec![false; inst.cols()];
    let mut out = Vec::new();
    for (e, d) in candidates {
        if !en_used[e] && !de_used[d] {
            en_used[e] = true;
            de_used[d] = true;
            out.push((e, d));
        }
    }
    out.sort_unstable();
    out
}

/// Free positive edges of the largest remaining weight, in preference order.
fn heaviest_free(inst: &MatchInstance, en_used: u32, de_used: u32) -> Vec<(usize, usize)> {
    let free = |e: usize, d: usize| en_used & 1 << e == 0 && de_used & 1 << d == 0 && inst.weights[e][d] > 0;
    let mut top = 0;
    let mut tied = Vec::new();
    for e in 0..inst.rows() {
        for d in 0..inst.cols() {
            if !free(e, d) {
                continue;
            }
            match inst.weights[e][d].cmp(&top) {
                Ordering::Greater => {
                    top = inst.weights[e][d];
                    tied = vec![(e, d)];
                }
                Ordering::Equal => tied.push((e, d)),
                Ordering::Less => {}
            }
        }
    }
    tied.sort_by(|a, b| inst.prefer(*a, *b));
    tied
}

/// Most links a greedy run can still collect from this state.
fn continuation(inst: &MatchInstance, en_used: u32, de_used: u32, memo: &mut HashMap<(u32, u32), usize>) -> usize {
    if let Some(&v) = memo.get(&(en_used, de_used)) {
        return v;
    }
    let best = heaviest_free(inst, en_used, de_used)
        .into_iter()
        .map(|(e, d)| inst.weights[e][d] + continuation(inst, en_used | 1 << e, de_used | 1 << d, memo))
        .max()
        .unwrap_or(0);
    memo.insert((en_used, de_used), best);
    best
}

/// All maximum-weight matchings over positive-weight edges, each sorted.
pub fn optimal_matchings(inst: &MatchInstance) -> (usize, Vec<Vec<(usize, usize)>>) {
    fn go(
        inst: &MatchInstance,
        e: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        weight: usize,
        best: &mut (usize, Vec<Vec<(usize, usize)>>),
    ) {
        if e == inst.rows() {
            match weight.cmp(&best.0) {
                Ordering::Greater => *best = (weight, vec![cur.clone()]),
                Ordering::Equal => best.1.push(cur.clone()),
                Ordering::Less => {}
            }
            return;
        }
        go(inst, e + 1, used, cur, weight, best);
        for d in 0..inst.cols() {
            let w = inst.weights[e][d];
            if w > 0 && !used[d] {
                used[d] = true;
                cur.push((e, d));
                go(inst, e + 1, used, cur, weight + w, best);
                cur.pop();
                used[d] = false;
            }
        }
    }
    let mut best = (0, Vec::new());
    go(inst, 0, &mut vec![false; inst.cols()], &mut Vec::new(), 0, &mut best);
    (best.0, best.1)
}

/// Maximum-weight matching by enumeration. Among optima, prefers more
/// main-verb links, then the lexicographically smallest list of leftmost
/// index pairs.
pub fn exhaustive_matching(inst: &MatchInstance) -> Vec<(usize, usize)> {
    let (_, optima) = optimal_matchings(inst);
    optima
        .into_iter()
        .min_by_key(|m| {
            let main = m.iter().filter(|&&(e, d)| inst.main_aligned[e][d]).count();
            let mut order: Vec<(usize, usize)> = m
                .iter()
                .map(|&(e, d)| (inst.en_leftmost[e], inst.de_leftmost[d]))
                .collect();
            order.sort_unstable();
            (std::cmp::Reverse(main), order)
        })
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcPair {
    pub pair_id: String,
    pub en: (VerbalComplex, TmvLabel),
    pub de: (VerbalComplex, TmvLabel),
    pub link_count: usize,
    pub main_verb_aligned: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairingOutcome {
    /// Pairs in order of the English leftmost token.
    pub pairs: Vec<VcPair>,
    /// Positions (into the input lists) of complexes left without partner.
    pub unpaired_en: Vec<usize>,
    pub unpaired_de: Vec<usize>,
    /// Links pointing outside either sentence.
    pub dropped_links: usize,
    /// Exhaustive mode fell back to greedy because the instance was too big.
    pub fell_back: bool,
}

/// Builds the weight matrix for `links` over the two complex lists.
/// Links outside `lengths = (english tokens, german tokens)` are dropped.
pub fn build_instance(
    en: &[(VerbalComplex, TmvLabel)],
    de: &[(VerbalComplex, TmvLabel)],
    links: &AlignmentSet,
    lengths: (usize, usize),
) -> (MatchInstance, usize) {
    let mut dropped = 0;
    let mut en_owner = vec![None; lengths.0 + 1];
    let mut de_owner = vec![None; lengths.1 + 1];
    for (k, (vc, _)) in en.iter().enumerate() {
        for &m in &vc.members {
            if m <= lengths.0 {
                en_owner[m] = Some(k);
            }
        }
    }
    for (k, (vc, _)) in de.iter().enumerate() {
        for &m in &vc.members {
            if m <= lengths.1 {
                de_owner[m] = Some(k);
            }
        }
    }
    let mut weights = vec![vec![0; de.len()]; en.len()];
    let mut main_aligned = vec![vec![false; de.len()]; en.len()];
    for &(i, j) in &links.links {
        if i == 0 || j == 0 || i > lengths.0 || j > lengths.1 {
            dropped += 1;
            continue;
        }
        if let (Some(e), Some(d)) = (en_owner[i], de_owner[j]) {
            weights[e][d] += 1;
            if en[e].0.main_verb == i && de[d].0.main_verb == j {
                main_aligned[e][d] = true;
            }
        }
    }
    let inst = MatchInstance {
        weights,
        main_aligned,
        en_leftmost: en.iter().map(|(vc, _)| vc.leftmost()).collect(),
        de_leftmost: de.iter().map(|(vc, _)| vc.leftmost()).collect(),
    };
    (inst, dropped)
}

pub fn pair_vcs(
    pair_id: &str,
    en: &[(VerbalComplex, TmvLabel)],
    de: &[(VerbalComplex, TmvLabel)],
    links: &AlignmentSet,
    lengths: (usize, usize),
    mode: MatchingMode,
    criterion: LinkCriterion,
) -> PairingOutcome {
    let (full, dropped) = build_instance(en, de, links, lengths);
    let inst = match criterion {
        LinkCriterion::AnyLink => full.clone(),
        LinkCriterion::MainVerb => {
            let mut only_main = full.clone();
            for (row, main) in only_main.weights.iter_mut().zip(&full.main_aligned) {
                for (w, m) in row.iter_mut().zip(main) {
                    if !m {
                        *w = 0;
                    }
                }
            }
            only_main
        }
    };
    let mut fell_back = false;
    let matching = match mode {
        MatchingMode::Greedy => greedy_matching(&inst),
        MatchingMode::Exhaustive if inst.rows() <= EXHAUSTIVE_LIMIT && inst.cols() <= EXHAUSTIVE_LIMIT => {
            exhaustive_matching(&inst)
        }
        MatchingMode::Exhaustive => {
            fell_back = true;
            greedy_matching(&inst)
        }
    };
    let mut en_used = vec![false; en.len()];
    let mut de_used = vec![false; de.len()];
    let mut pairs: Vec<VcPair> = matching
        .iter()
        .map(|&(e, d)| {
            en_used[e] = true;
            de_used[d] = true;
            VcPair {
                pair_id: pair_id.to_owned(),
                en: en[e].clone(),
                de: de[d].clone(),
                link_count: full.weights[e][d],
                main_verb_aligned: full.main_aligned[e][d],
            }
        })
        .collect();
    pairs.sort_by_key(|p| (p.en.0.leftmost(), p.de.0.leftmost()));
    PairingOutcome {
        pairs,
        unpaired_en: (0..en.len()).filter(|k| !en_used[*k]).collect(),
        unpaired_de: (0..de.len()).filter(|k| !de_used[*k]).collect(),
        dropped_links: dropped,
        fell_back,
    }
}
