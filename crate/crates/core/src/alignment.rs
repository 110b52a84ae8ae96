//! Word alignments in Pharaoh format (`i-j` links, one sentence pair per line).
//!
//! Links are stored as 1-based `(english, german)` token indices regardless of
//! the indexing of the input file. Range checks against sentence lengths are
//! left to pairing, since the alignment file alone cannot know them.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Indexing {
    #[default]
    ZeroBased,
    OneBased,
}

impl FromStr for Indexing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "0" | "zero" | "zero_based" | "zero-based" => Ok(Indexing::ZeroBased),
            "1" | "one" | "one_based" | "one-based" => Ok(Indexing::OneBased),
            other => Err(format!("unknown alignment indexing '{other}' (expected zero or one)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlignmentSet {
    pub id: String,
    /// `(english index, german index)`, both 1-based.
    pub links: BTreeSet<(usize, usize)>,
}

impl AlignmentSet {
    pub fn new(id: impl Into<String>, links: impl IntoIterator<Item = (usize, usize)>) -> Self {
        AlignmentSet {
            id: id.into(),
            links: links.into_iter().collect(),
        }
    }

    /// Swaps source and target, for files aligned German-to-English.
    pub fn transposed(&self) -> Self {
        AlignmentSet {
            id: self.id.clone(),
            links: self.links.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Renders the links as one Pharaoh line in the requested indexing.
    pub fn to_line(&self, indexing: Indexing) -> String {
        let shift = match indexing {
            Indexing::ZeroBased => 1,
            Indexing::OneBased => 0,
        };
        self.links
            .iter()
            .map(|(i, j)| format!("{}-{}", i - shift, j - shift))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for AlignmentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line(Indexing::OneBased))
    }
}

#[derive(Debug, Error)]
pub enum AlignmentError {
    #[error("line {line}: malformed link '{token}' (expected <int>-<int>)")]
    Malformed { line: usize, token: String },
    #[error("line {line}: index 0 in link '{token}' is invalid for one-based alignments")]
    ZeroIndex { line: usize, token: String },
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

/// Parses a single Pharaoh line. `line_no` is used for error messages.
pub fn parse_alignment_line(
    line: &str,
    line_no: usize,
    indexing: Indexing,
    id: impl Into<String>,
) -> Result<AlignmentSet, AlignmentError> {
    let mut links = BTreeSet::new();
    for token in line.split_whitespace() {
        let malformed = || AlignmentError::Malformed {
            line: line_no,
            token: token.to_owned(),
        };
        let (a, b) = token.split_once('-').ok_or_else(malformed)?;
        let a: usize = a.parse().map_err(|_| malformed())?;
        let b: usize = b.parse().map_err(|_| malformed())?;
        let link = match indexing {
            Indexing::ZeroBased => (a + 1, b + 1),
            Indexing::OneBased => {
                if a == 0 || b == 0 {
                    return Err(AlignmentError::ZeroIndex {
                        line: line_no,
                        token: token.to_owned(),
                    });
                }
                (a, b)
            }
        };
        links.insert(link);
    }
    Ok(AlignmentSet { id: id.into(), links })
}

/// Line-by-line alignment reader. Every input line yields one item, so the
/// n-th item always belongs to the n-th sentence pair.
pub struct AlignmentReader<R> {
    lines: io::Lines<R>,
    indexing: Indexing,
    doc_id: String,
    line_no: usize,
}

impl<R: BufRead> AlignmentReader<R> {
    pub fn new(reader: R, indexing: Indexing) -> Self {
        AlignmentReader {
            lines: reader.lines(),
            indexing,
            doc_id: "s".to_owned(),
            line_no: 0,
        }
    }

    pub fn doc_id(mut self, doc_id: impl Into<String>) -> Self {
        self.doc_id = doc_id.into();
        self
    }
}

impl<R: BufRead> Iterator for AlignmentReader<R> {
    type Item = Result<AlignmentSet, AlignmentError>;

    fn next(&mut self) -> Option<Self::Item> {
        let line = match self.lines.next()? {
            Ok(line) => line,
            Err(e) => return Some(Err(AlignmentError::Io(e))),
        };
        self.line_no += 1;
        let id = format!("{}-{}", self.doc_id, self.line_no);
        Some(parse_alignment_line(&line, self.line_no, self.indexing, id))
    }
}

/// Reads all alignment lines, failing on the first malformed one.
pub fn parse_alignment<R: BufRead>(reader: R, indexing: Indexing) -> Result<Vec<AlignmentSet>, AlignmentError> {
    AlignmentReader::new(reader, indexing).collect()
}

pub fn write_alignment<W: Write>(mut out: W, sets: &[AlignmentSet], indexing: Indexing) -> io::Result<()> {
    for set in sets {
        writeln!(out, "{}", set.to_line(indexing))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_based_links() {
        let sets = parse_alignment("2-2 3-3 4-7\n".as_bytes(), Indexing::OneBased).unwrap();
        assert_eq!(sets[0].links, BTreeSet::from([(2, 2), (3, 3), (4, 7)]));
    }

    #[test]
    fn zero_based_is_shifted() {
        let sets = parse_alignment("2-2 3-6\n".as_bytes(), Indexing::ZeroBased).unwrap();
        assert_eq!(sets[0].links, BTreeSet::from([(3, 3), (4, 7)]));
    }

    #[test]
    fn empty_line_is_empty_set() {
        let sets = parse_alignment("1-1\n\n2-2\n".as_bytes(), Indexing::OneBased).unwrap();
        assert_eq!(sets.len(), 3);
        assert!(sets[1].is_empty());
        assert_eq!(sets[2].id, "s-3");
    }

    #[test]
    fn duplicates_collapse() {
        let sets = parse_alignment("3-3 3-3".as_bytes(), Indexing::OneBased).unwrap();
        assert_eq!(sets[0].links, BTreeSet::from([(3, 3)]));
    }

    #[test]
    fn malformed_token_reports_line() {
        let err = parse_alignment("1-1\n1-x\n".as_bytes(), Indexing::OneBased).unwrap_err();
        assert_eq!(err.to_string(), "line 2: malformed link '1-x' (expected <int>-<int>)");
        let err = parse_alignment("0-1".as_bytes(), Indexing::OneBased).unwrap_err();
        assert!(matches!(err, AlignmentError::ZeroIndex { line: 1, .. }));
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(
            lines in prop::collection::vec(prop::collection::btree_set((1usize..40, 1usize..40), 0..12), 1..6),
            zero in any::<bool>(),
        ) {
            let indexing = if zero { Indexing::ZeroBased } else { Indexing::OneBased };
            let sets: Vec<_> = lines
                .into_iter()
                .enumerate()
                .map(|(i, links)| AlignmentSet::new(format!("s-{}", i + 1), links))
                .collect();
            let mut buf = Vec::new();
            write_alignment(&mut buf, &sets, indexing).unwrap();
            let parsed = parse_alignment(buf.as_slice(), indexing).unwrap();
            prop_assert_eq!(&parsed, &sets);
            let mut again = Vec::new();
            write_alignment(&mut again, &parsed, indexing).unwrap();
            prop_assert_eq!(again, buf);
        }
    }
}
