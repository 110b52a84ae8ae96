//! Reference descriptions of tenses and English/German tense pairs.
//!
//! ```text
//! cargo run --example explain_tenses -- Perfekt
//! cargo run --example explain_tenses -- presPerf Perfekt
//! ```

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let queries: Vec<Vec<String>> = if args.is_empty() {
        vec![
            vec!["Perfekt".into()],
            vec!["presPerf".into(), "Präteritum".into()],
            vec!["condI".into()],
        ]
    } else {
        vec![args]
    };
    for q in queries {
        match tmv::reference::explain(&q) {
            Ok(text) => println!("{text}"),
            Err(e) => {
                eprintln!("{e}");
                std::process::exit(2);
            }
        }
    }
}
