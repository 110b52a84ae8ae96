use std::path::{Path, PathBuf};
use std::process::Command;

use tmv::cli::{run, LEXICON_DIR_ENV};

const SAMPLES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/samples");

fn sample(name: &str) -> String {
    format!("{SAMPLES}/{name}")
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("tmv").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// The German sample with the morphology column blanked out.
fn drugs_de_without_morphology() -> String {
    std::fs::read_to_string(sample("drugs.de.conllu"))
        .unwrap()
        .lines()
        .map(|l| {
            let mut cols: Vec<&str> = l.split('\t').collect();
            if cols.len() == 10 {
                cols[5] = "_";
            }
            cols.join("\t")
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["--help"], 0),
        (&["--version"], 0),
        (&["explain", "Perfekt"], 0),
        (&["rules-dump", "--lang", "de"], 0),
        (&[], 2),
        (&["annotate"], 2),
        (&["annotate", "--lang", "fr", "x"], 2),
        (&["stats", "--emit", "xml"], 2),
        (&["stats", "--repro", "wikipedia"], 2),
        (&["explain", "Aorist"], 2),
        (&["annotate", "--lang", "de", "/no/such/file"], 1),
        (&["pairs", "--en", "/no/en", "--de", "/no/de", "--align", "/no/al"], 1),
    ];
    for (args, want) in cases {
        let (code, _, err) = call(args);
        assert_eq!(code, *want, "{args:?}: {err}");
    }
}

#[test]
fn annotate_sample() {
    let (code, out, err) = call(&["annotate", "--lang", "de", &sample("drugs.de.conllu")]);
    assert_eq!(code, 0, "{err}");
    let row = out.lines().nth(1).unwrap();
    assert_eq!(
        row,
        "drugs-1\t3,7\tverlangsamen\tverlangsamen\tKonj II pres\tsubjunctive\tactive\tfinite\t0\t-"
    );
    assert!(err.contains("summary: sentences=1 vcs=1"));
}

#[test]
fn pairs_then_stats() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("pairs.tsv");
    let (code, _, err) = call(&[
        "pairs",
        "--en",
        &sample("drugs.en.conllu"),
        "--de",
        &sample("drugs.de.conllu"),
        "--align",
        &sample("drugs.align"),
        "-o",
        pairs.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("pairs=1"));
    let strict = dir.path().join("strict.tsv");
    let (code, _, err) = call(&[
        "pairs",
        "--en",
        &sample("drugs.en.conllu"),
        "--de",
        &sample("drugs.de.conllu"),
        "--align",
        &sample("drugs.align"),
        "--criterion",
        "main-verb",
        "-o",
        strict.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("pairs=1"), "slow and verlangsamen are linked");
    let (code, _, _) = call(&[
        "pairs",
        "--en",
        &sample("drugs.en.conllu"),
        "--de",
        &sample("drugs.de.conllu"),
        "--align",
        &sample("drugs.align"),
        "--criterion",
        "nearest",
    ]);
    assert_eq!(code, 2);
    let (code, out, err) = call(&[
        "stats",
        pairs.to_str().unwrap(),
        "--rows",
        "pres",
        "--cols",
        "Präsens,Konj II pres",
        "--emit",
        "csv",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("pres,0.000000,1.000000"), "{out}");
}

#[test]
fn plot_data_of_hand_built_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "p.tsv",
        "pair_id\ten_label\tde_label\ten_tokens\tde_tokens\tlink_count\n\
         a\tpres\tPräsens\tx\tx\t1\n\
         b\tpres\tPerfekt\tx\tx\t1\n\
         c\tpast\tPerfekt\tx\tx\t1\n",
    );
    let (code, out, err) = call(&[
        "stats",
        p.to_str().unwrap(),
        "--rows",
        "pres,past",
        "--cols",
        "Präsens,Perfekt",
        "--emit",
        "plot-data",
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(
        out,
        "Tense,pres,past\nPräsens,0.500000,0.000000\nPerfekt,0.500000,1.000000\n"
    );
}

#[test]
fn config_file_overrides_defaults_and_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "tmv.cfg", "# test\nemit = json\n");
    let (code, out, err) = call(&["--config", cfg.to_str().unwrap(), "dist", "--lang", "de", "/dev/null"]);
    // An empty annotation file has no rows; json still comes out.
    assert_eq!(code, 0, "{err}");
    assert!(out.trim_start().starts_with('{'), "{out}");
    let (code, out, _) = call(&[
        "--config",
        cfg.to_str().unwrap(),
        "dist",
        "--lang",
        "de",
        "--emit",
        "csv",
        "/dev/null",
    ]);
    assert_eq!(code, 0);
    assert!(!out.trim_start().starts_with('{'), "{out}");

    let bad = write(dir.path(), "bad.cfg", "parallelism = many\n");
    assert_eq!(
        call(&[
            "--config",
            bad.to_str().unwrap(),
            "annotate",
            "--lang",
            "de",
            &sample("drugs.de.conllu")
        ])
        .0,
        2
    );
}

#[test]
fn lexicon_dir_from_config_changes_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "de.conllu", &drugs_de_without_morphology());
    // Built-in lexicon: könnten reads as Konjunktiv II.
    let (code, out, _) = call(&["annotate", "--lang", "de", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("\tKonj II pres\t"), "{out}");

    let lex = dir.path().join("lex");
    std::fs::create_dir(&lex).unwrap();
    write(&lex, "de_aux_lexicon.tsv", "de\tkönnten\tVMFIN\tPres\tInd\n");
    let cfg = write(dir.path(), "c.cfg", &format!("lexicon_dir = {}\n", lex.display()));
    let (code, out, err) = call(&[
        "--config",
        cfg.to_str().unwrap(),
        "annotate",
        "--lang",
        "de",
        input.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("\tPräsens\t"), "{out}");
}

#[test]
fn lexicon_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "de.conllu", &drugs_de_without_morphology());
    write(dir.path(), "de_aux_lexicon.tsv", "de\tkönnten\tVMFIN\tPres\tInd\n");
    let out = Command::new(env!("CARGO_BIN_EXE_tmv"))
        .args(["annotate", "--lang", "de"])
        .arg(&input)
        .env(LEXICON_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\tPräsens\t"));

    let broken = tempfile::tempdir().unwrap();
    write(broken.path(), "de_aux_lexicon.tsv", "de\tkönnten\tNN\tPres\tInd\n");
    let out = Command::new(env!("CARGO_BIN_EXE_tmv"))
        .args(["annotate", "--lang", "de"])
        .arg(&input)
        .env(LEXICON_DIR_ENV, broken.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn binary_reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_tmv"))
        .args(["annotate", "--lang", "en", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read(sample("drugs.en.conllu")).unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("drugs-1\t3,4\tslow\tslow\tpres\t"));
}
