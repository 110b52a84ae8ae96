//! Build a parse by hand and classify its verbal complex.
//!
//! Shows the token-level API: the chain scheme links auxiliaries with `VC`
//! edges (English) or `OC` edges (German), and the classifier reads tense,
//! mood, voice, finiteness and progressive aspect off the chain.

use tmv::conll::{Language, Sentence, Token};
use tmv::rules::Classifier;
use tmv::vc::{extract_vcs, Scheme};

fn show(sentence: &Sentence, classifier: &Classifier) {
    let words: Vec<&str> = sentence.tokens.iter().map(|t| t.form.as_str()).collect();
    for vc in extract_vcs(sentence, Scheme::Chain) {
        let label = classifier.classify(&vc, sentence);
        let group: Vec<&str> = vc.members.iter().map(|i| sentence.token(*i).form.as_str()).collect();
        println!(
            "{:<45} [{}] -> {} / {} / {} / {} / progressive={} / flags: {}",
            words.join(" "),
            group.join(" "),
            label.display(),
            label.mood,
            label.voice,
            label.finiteness,
            label.progressive,
            label.diagnostics
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let classifier = Classifier::default();

    // She would have been reading it .
    let en = Sentence::new(
        "en-1",
        Language::En,
        vec![
            Token::new(1, "She", "she", "PRP", 2, "SBJ"),
            Token::new(2, "would", "would", "MD", 0, "ROOT"),
            Token::new(3, "have", "have", "VB", 2, "VC"),
            Token::new(4, "been", "be", "VBN", 3, "VC"),
            Token::new(5, "reading", "read", "VBG", 4, "VC"),
            Token::new(6, "it", "it", "PRP", 5, "OBJ"),
            Token::new(7, ".", ".", ".", 2, "P"),
        ],
    )?;
    show(&en, &classifier);

    // The letter has been written .
    let passive = Sentence::new(
        "en-2",
        Language::En,
        vec![
            Token::new(1, "The", "the", "DT", 2, "NMOD"),
            Token::new(2, "letter", "letter", "NN", 3, "SBJ"),
            Token::new(3, "has", "have", "VBZ", 0, "ROOT"),
            Token::new(4, "been", "be", "VBN", 3, "VC"),
            Token::new(5, "written", "write", "VBN", 4, "VC"),
            Token::new(6, ".", ".", ".", 3, "P"),
        ],
    )?;
    show(&passive, &classifier);

    // Er sagte , sie habe das Buch gelesen .  (reported speech, Konjunktiv I)
    let de = Sentence::new(
        "de-1",
        Language::De,
        vec![
            Token::new(1, "Er", "er", "PPER", 2, "SB"),
            Token::new(2, "sagte", "sagen", "VVFIN", 0, "ROOT").with_features("mood=ind|tense=past"),
            Token::new(3, ",", ",", "$,", 2, "PUNC"),
            Token::new(4, "sie", "sie", "PPER", 5, "SB"),
            Token::new(5, "habe", "haben", "VAFIN", 2, "OC").with_features("mood=subj|tense=pres"),
            Token::new(6, "das", "der", "ART", 7, "NK"),
            Token::new(7, "Buch", "Buch", "NN", 8, "OA"),
            Token::new(8, "gelesen", "lesen", "VVPP", 5, "OC"),
            Token::new(9, ".", ".", "$.", 2, "PUNC"),
        ],
    )?;
    show(&de, &classifier);

    // Das Haus wäre gebaut worden .
    let konj = Sentence::new(
        "de-2",
        Language::De,
        vec![
            Token::new(1, "Das", "der", "ART", 2, "NK"),
            Token::new(2, "Haus", "Haus", "NN", 3, "SB"),
            Token::new(3, "wäre", "sein", "VAFIN", 0, "ROOT").with_features("mood=subj|tense=past"),
            Token::new(4, "gebaut", "bauen", "VVPP", 5, "OC"),
            Token::new(5, "worden", "werden", "VAPP", 3, "OC"),
            Token::new(6, ".", ".", "$.", 3, "PUNC"),
        ],
    )?;
    show(&konj, &classifier);

    // Without morphology the finite full verb falls back to present
    // indicative, and the label says so.
    let bare = Sentence::new(
        "de-3",
        Language::De,
        vec![
            Token::new(1, "Sie", "sie", "PPER", 2, "SB"),
            Token::new(2, "lachte", "lachen", "VVFIN", 0, "ROOT"),
            Token::new(3, ".", ".", "$.", 2, "PUNC"),
        ],
    )?;
    show(&bare, &classifier);
    Ok(())
}
