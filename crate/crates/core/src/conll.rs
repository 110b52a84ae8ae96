//! Reading and writing dependency-parsed corpora in CoNLL-style TSV.
//!
//! Two column layouts are supported and must be selected explicitly:
//!
//! * [`ColumnLayout::Conllu`]: the 10-column `INDEX FORM LEMMA UPOS XPOS
//!   FEATS HEAD DEPREL DEPS MISC` layout.
//! * [`ColumnLayout::Conll2009`]: the 12+-column layout produced by the Mate
//!   tools, where gold columns are usually empty and the predicted
//!   (`P*`) columns carry the analysis.
//!
//! Each sentence block yields exactly one item from [`ConllReader`]: either
//! the parsed [`Sentence`] or an error describing why the block was rejected.
//! This keeps positions stable when the reader is zipped with the reader for
//! the other side of a parallel corpus.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use thiserror::Error;

/// Language of a sentence or verbal complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Language {
    En,
    De,
}

impl Language {
    pub fn code(self) -> &'static str {
        match self {
            Language::En => "en",
            Language::De => "de",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "en" | "eng" | "english" => Ok(Language::En),
            "de" | "deu" | "ger" | "german" => Ok(Language::De),
            other => Err(format!("unknown language '{other}' (expected en or de)")),
        }
    }
}

/// Column layout of the input file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnLayout {
    Conllu,
    Conll2009,
}

impl ColumnLayout {
    fn min_columns(self) -> usize {
        match self {
            ColumnLayout::Conllu => 10,
            ColumnLayout::Conll2009 => 12,
        }
    }
}

impl FromStr for ColumnLayout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "conllu" | "conll-u" | "ud" | "10" => Ok(ColumnLayout::Conllu),
            "conll2009" | "conll09" | "conll-2009" | "mate" => Ok(ColumnLayout::Conll2009),
            other => Err(format!(
                "unknown column layout '{other}' (expected conllu or conll2009)"
            )),
        }
    }
}

/// Morphological features of a token, as `key=value` pairs.
///
/// Keys are stored as written; lookups through [`Features::get`] are
/// case-insensitive so that both `Tense=Pres` (UD) and `tense=pres` (Mate)
/// are understood.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Features(BTreeMap<String, String>);

impl Features {
    pub fn new() -> Self {
        Features(BTreeMap::new())
    }

    pub fn parse(field: &str) -> Self {
        let mut map = BTreeMap::new();
        if field.is_empty() || field == "_" {
            return Features(map);
        }
        for part in field.split('|').filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some((k, v)) => map.insert(k.to_owned(), v.to_owned()),
                None => map.insert(part.to_owned(), String::new()),
            };
        }
        Features(map)
    }

    pub fn insert(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.0.insert(key.into(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case(key))
            .map(|(_, v)| v.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl fmt::Display for Features {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("_");
        }
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            if v.is_empty() {
                f.write_str(k)?;
            } else {
                write!(f, "{k}={v}")?;
            }
        }
        Ok(())
    }
}

/// One token of a dependency-parsed sentence. Empty strings stand for `_`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    /// Language-specific tag (Penn Treebank for English, STTS for German).
    pub pos: String,
    pub features: Features,
    /// Index of the head token, 0 for the artificial root.
    pub head: usize,
    pub deprel: String,
    pub deps: String,
    pub misc: String,
}

impl Token {
    pub fn new(index: usize, form: &str, lemma: &str, pos: &str, head: usize, deprel: &str) -> Self {
        Token {
            index,
            form: form.to_owned(),
            lemma: lemma.to_owned(),
            upos: String::new(),
            pos: pos.to_owned(),
            features: Features::new(),
            head,
            deprel: deprel.to_owned(),
            deps: String::new(),
            misc: String::new(),
        }
    }

    pub fn with_features(mut self, features: &str) -> Self {
        self.features = Features::parse(features);
        self
    }

    pub fn with_upos(mut self, upos: &str) -> Self {
        self.upos = upos.to_owned();
        self
    }
}

/// A parsed sentence. Tokens are stored in order, so `tokens[i].index == i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub id: String,
    pub language: Language,
    pub tokens: Vec<Token>,
    /// Translation direction of the document, from a `# direction = ...`
    /// comment (e.g. `en-de`). Kept for filtering; statistics ignore it.
    pub direction: Option<String>,
}

impl Sentence {
    /// Builds a sentence and checks the structural invariants.
    pub fn new(id: impl Into<String>, language: Language, tokens: Vec<Token>) -> Result<Self, SentenceError> {
        let sentence = Sentence {
            id: id.into(),
            language,
            tokens,
            direction: None,
        };
        sentence.validate()?;
        Ok(sentence)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token at 1-based `index`.
    pub fn token(&self, index: usize) -> &Token {
        &self.tokens[index - 1]
    }

    pub fn get(&self, index: usize) -> Option<&Token> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn children(&self, index: usize) -> impl Iterator<Item = &Token> + '_ {
        self.tokens.iter().filter(move |t| t.head == index)
    }

    pub fn roots(&self) -> impl Iterator<Item = &Token> + '_ {
        self.children(0)
    }

    /// True if `ancestor` dominates `index` (or equals it).
    pub fn dominates(&self, ancestor: usize, index: usize) -> bool {
        let mut cur = index;
        let mut steps = 0;
        while cur != 0 && steps <= self.len() {
            if cur == ancestor {
                return true;
            }
            cur = self.token(cur).head;
            steps += 1;
        }
        false
    }

    fn validate(&self) -> Result<(), SentenceError> {
        if self.tokens.is_empty() {
            return Err(SentenceError::Empty);
        }
        let n = self.tokens.len();
        for (pos, token) in self.tokens.iter().enumerate() {
            if token.index != pos + 1 {
                return Err(SentenceError::IndexOutOfSequence {
                    expected: pos + 1,
                    found: token.index,
                });
            }
            if token.head > n {
                return Err(SentenceError::HeadOutOfRange {
                    index: token.index,
                    head: token.head,
                    len: n,
                });
            }
            if token.head == token.index {
                return Err(SentenceError::SelfLoop(token.index));
            }
        }
        if let Some(index) = self.find_cycle() {
            return Err(SentenceError::Cycle(index));
        }
        Ok(())
    }

    fn find_cycle(&self) -> Option<usize> {
        // 0 = unvisited, 1 = on current path, 2 = reaches the root
        let n = self.tokens.len();
        let mut state = vec![0u8; n + 1];
        for start in 1..=n {
            let mut path = Vec::new();
            let mut cur = start;
            while cur != 0 && state[cur] == 0 {
                state[cur] = 1;
                path.push(cur);
                cur = self.tokens[cur - 1].head;
            }
            if cur != 0 && state[cur] == 1 {
                return Some(cur);
            }
            for p in path {
                state[p] = 2;
            }
        }
        None
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SentenceError {
    #[error("empty sentence")]
    Empty,
    #[error("token index {found} out of sequence (expected {expected})")]
    IndexOutOfSequence { expected: usize, found: usize },
    #[error("token {index} has head {head} outside the sentence (length {len})")]
    HeadOutOfRange { index: usize, head: usize, len: usize },
    #[error("token {0} is its own head")]
    SelfLoop(usize),
    #[error("head links form a cycle through token {0}")]
    Cycle(usize),
}

#[derive(Debug, Error)]
pub enum ConllError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("sentence '{id}' (line {line}) rejected: {source}")]
    Rejected {
        id: String,
        line: usize,
        #[source]
        source: SentenceError,
    },
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl ConllError {
    /// I/O errors abort reading; everything else is confined to one sentence.
    pub fn is_fatal(&self) -> bool {
        matches!(self, ConllError::Io(_))
    }
}

#[derive(Clone, Debug)]
pub struct ReaderOptions {
    pub language: Language,
    pub layout: ColumnLayout,
    /// Prefix for generated sentence ids (`<doc_id>-<n>`).
    pub doc_id: String,
}

impl ReaderOptions {
    pub fn new(language: Language, layout: ColumnLayout) -> Self {
        ReaderOptions {
            language,
            layout,
            doc_id: "s".to_owned(),
        }
    }

    pub fn doc_id(mut self, doc_id: impl Into<String>) -> Self {
        self.doc_id = doc_id.into();
        self
    }
}

/// Streaming sentence reader.
pub struct ConllReader<R> {
    lines: io::Lines<R>,
    options: ReaderOptions,
    line_no: usize,
    block_no: usize,
    warnings: Vec<String>,
    /// Direction tag in force; reset by `# newdoc`.
    direction: Option<String>,
    done: bool,
}

impl<R: BufRead> ConllReader<R> {
    pub fn new(reader: R, options: ReaderOptions) -> Self {
        ConllReader {
            lines: reader.lines(),
            options,
            line_no: 0,
            block_no: 0,
            warnings: Vec::new(),
            direction: None,
            done: false,
        }
    }

    /// Non-fatal observations (e.g. sentences with several roots) collected
    /// since the last call.
    pub fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }

    fn read_block(&mut self) -> Option<Result<Sentence, ConllError>> {
        let mut tokens = Vec::new();
        let mut explicit_id = None;
        let mut first_error: Option<ConllError> = None;
        let mut start_line = 0;
        let mut seen_content = false;

        loop {
            let line = match self.lines.next() {
                None => {
                    self.done = true;
                    break;
                }
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(ConllError::Io(e)));
                }
                Some(Ok(line)) => line,
            };
            self.line_no += 1;
            let line = line.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() {
                if seen_content {
                    break;
                }
                continue;
            }
            if !seen_content {
                start_line = self.line_no;
                seen_content = true;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let (key, value) = comment.split_once('=').unwrap_or((comment, ""));
                match key.trim() {
                    "sent_id" => explicit_id = Some(value.trim().to_owned()),
                    "direction" | "translation_direction" => self.direction = Some(value.trim().to_owned()),
                    k if k == "newdoc" || k.starts_with("newdoc ") => self.direction = None,
                    _ => {}
                }
                continue;
            }
            if first_error.is_some() {
                continue;
            }
            match self.parse_token(line) {
                Ok(Some(token)) => tokens.push(token),
                Ok(None) => {}
                Err(message) => {
                    first_error = Some(ConllError::Malformed {
                        line: self.line_no,
                        message,
                    })
                }
            }
        }

        if !seen_content {
            return None;
        }
        self.block_no += 1;
        let id = explicit_id.unwrap_or_else(|| format!("{}-{}", self.options.doc_id, self.block_no));
        if let Some(err) = first_error {
            return Some(Err(err));
        }
        if tokens.is_empty() {
            return Some(Err(ConllError::Rejected {
                id,
                line: start_line,
                source: SentenceError::Empty,
            }));
        }
        match Sentence::new(id.clone(), self.options.language, tokens) {
            Ok(mut sentence) => {
                sentence.direction = self.direction.clone();
                let roots = sentence.roots().count();
                if roots > 1 {
                    self.warnings
                        .push(format!("sentence '{id}' (line {start_line}) has {roots} root tokens"));
                }
                Some(Ok(sentence))
            }
            Err(source) => Some(Err(ConllError::Rejected {
                id,
                line: start_line,
                source,
            })),
        }
    }

    fn parse_token(&self, line: &str) -> Result<Option<Token>, String> {
        let cols: Vec<&str> = line.split('\t').collect();
        let layout = self.options.layout;
        match layout {
            ColumnLayout::Conllu if cols.len() != 10 => {
                return Err(format!("expected 10 columns, found {}", cols.len()))
            }
            ColumnLayout::Conll2009 if cols.len() < layout.min_columns() => {
                return Err(format!("expected at least 12 columns, found {}", cols.len()))
            }
            _ => {}
        }

        // multiword ranges and empty nodes carry no dependency
        if layout == ColumnLayout::Conllu && (cols[0].contains('-') || cols[0].contains('.')) {
            return Ok(None);
        }

        let index: usize = cols[0]
            .parse()
            .map_err(|_| format!("token index '{}' is not a positive integer", cols[0]))?;
        if index == 0 {
            return Err("token index must be at least 1".to_owned());
        }

        let field = |s: &str| if s == "_" { String::new() } else { s.to_owned() };
        // prefer gold columns, fall back to predicted ones
        let pick = |gold: &str, pred: &str| {
            if gold == "_" || gold.is_empty() {
                field(pred)
            } else {
                field(gold)
            }
        };

        let (form, lemma, upos, pos, feats, head, deprel, deps, misc) = match layout {
            ColumnLayout::Conllu => (
                field(cols[1]),
                field(cols[2]),
                field(cols[3]),
                field(cols[4]),
                cols[5],
                cols[6],
                field(cols[7]),
                field(cols[8]),
                field(cols[9]),
            ),
            ColumnLayout::Conll2009 => {
                let feats = if cols[6] == "_" { cols[7] } else { cols[6] };
                let head = if cols[8] == "_" { cols[9] } else { cols[8] };
                (
                    field(cols[1]),
                    pick(cols[2], cols[3]),
                    String::new(),
                    pick(cols[4], cols[5]),
                    feats,
                    head,
                    pick(cols[10], cols[11]),
                    String::new(),
                    String::new(),
                )
            }
        };
        let head: usize = head
            .parse()
            .map_err(|_| format!("head '{head}' is not a non-negative integer"))?;
        // pos falls back to the universal tag when no language-specific tag is present
        let pos = if pos.is_empty() { upos.clone() } else { pos };

        Ok(Some(Token {
            index,
            form,
            lemma,
            upos,
            pos,
            features: Features::parse(feats),
            head,
            deprel,
            deps,
            misc,
        }))
    }
}

impl<R: BufRead> Iterator for ConllReader<R> {
    type Item = Result<Sentence, ConllError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        self.read_block()
    }
}

/// Result of reading a whole stream at once.
#[derive(Debug, Default)]
pub struct ParsedCorpus {
    pub sentences: Vec<Sentence>,
    pub errors: Vec<ConllError>,
    pub warnings: Vec<String>,
}

/// Reads every sentence of `reader`. Rejected sentences end up in `errors`
/// and do not stop the run; an I/O error does.
pub fn parse_conll<R: BufRead>(reader: R, options: ReaderOptions) -> ParsedCorpus {
    let mut reader = ConllReader::new(reader, options);
    let mut corpus = ParsedCorpus::default();
    for item in reader.by_ref() {
        match item {
            Ok(sentence) => corpus.sentences.push(sentence),
            Err(e) => {
                let fatal = e.is_fatal();
                corpus.errors.push(e);
                if fatal {
                    break;
                }
            }
        }
    }
    corpus.warnings = reader.take_warnings();
    corpus
}

fn or_underscore(s: &str) -> &str {
    if s.is_empty() {
        "_"
    } else {
        s
    }
}

/// Writes sentences in the 10-column layout, with a `# sent_id` comment per
/// sentence and `# direction` / `# newdoc` comments where the tag changes.
pub fn write_conll<W: Write>(mut out: W, sentences: &[Sentence]) -> io::Result<()> {
    let mut direction: Option<&str> = None;
    for sentence in sentences {
        let d = sentence.direction.as_deref();
        if d != direction {
            if d.is_none() {
                writeln!(out, "# newdoc")?;
            }
            direction = d;
        }
        writeln!(out, "# sent_id = {}", sentence.id)?;
        if let Some(d) = d {
            writeln!(out, "# direction = {d}")?;
        }
        for t in &sentence.tokens {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                t.index,
                or_underscore(&t.form),
                or_underscore(&t.lemma),
                or_underscore(&t.upos),
                or_underscore(&t.pos),
                t.features,
                t.head,
                or_underscore(&t.deprel),
                or_underscore(&t.deps),
                or_underscore(&t.misc),
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}
