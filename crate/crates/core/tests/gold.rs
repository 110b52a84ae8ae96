mod common;

use tmv::rules::Classifier;

#[test]
fn gold_examples_are_labelled_exactly() {
    let classifier = Classifier::default();
    let failures: Vec<String> = common::gold_suite()
        .iter()
        .filter_map(|g| common::check(g, &classifier))
        .collect();
    assert!(
        failures.is_empty(),
        "{} gold mismatches:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

#[test]
fn gold_suite_covers_both_languages() {
    let suite = common::gold_suite();
    let de = suite
        .iter()
        .filter(|g| g.sentence.language == tmv::conll::Language::De)
        .count();
    assert!(de >= 25 && suite.len() - de >= 25, "{} de of {}", de, suite.len());
}
