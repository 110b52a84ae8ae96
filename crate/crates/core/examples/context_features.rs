//! Context features of each verbal complex: subject properties, temporal
//! expressions and conditional clauses.

use tmv::conll::{ColumnLayout, ConllReader, Language, ReaderOptions};
use tmv::features::{extract_context_features, FeatureConfig, TemporalTag, FEATURE_COLUMNS};
use tmv::pipeline::{annotate_sentence, PipelineConfig};

const GERMAN: &str = "\
# sent_id = wenn-1
1\tWenn\twenn\tSCONJ\tKOUS\t_\t5\tCP\t_\t_
2\tder\tder\tDET\tART\t_\t3\tNK\t_\t_
3\tVorstand\tVorstand\tNOUN\tNN\tnumber=sg\t5\tSB\t_\t_
4\tmorgen\tmorgen\tADV\tADV\t_\t5\tMO\t_\t_
5\tzustimmt\tzustimmen\tVERB\tVVFIN\ttense=pres|mood=ind\t7\tMO\t_\t_
6\t,\t,\tPUNCT\t$,\t_\t7\tPUNC\t_\t_
7\twird\twerden\tAUX\tVAFIN\ttense=pres|mood=ind\t0\tROOT\t_\t_
8\tdie\tder\tDET\tART\t_\t9\tNK\t_\t_
9\tFirma\tFirma\tNOUN\tNN\tnumber=sg\t7\tSB\t_\t_
10\tim\tin\tADP\tAPPRART\t_\t12\tMO\t_\t_
11\tMai\tMai\tNOUN\tNN\t_\t10\tNK\t_\t_
12\tverkauft\tverkaufen\tVERB\tVVPP\t_\t7\tOC\t_\t_
13\t.\t.\tPUNCT\t$.\t_\t7\tPUNC\t_\t_

";

const ENGLISH: &str = "\
# sent_id = next-1
1\tAll\tall\tDET\tPDT\t_\t3\tNMOD\t_\t_
2\tthe\tthe\tDET\tDT\t_\t3\tNMOD\t_\t_
3\tshops\tshop\tNOUN\tNNS\t_\t4\tSBJ\t_\t_
4\twill\twill\tAUX\tMD\t_\t0\tROOT\t_\t_
5\topen\topen\tVERB\tVB\t_\t4\tVC\t_\t_
6\tnext\tnext\tADJ\tJJ\t_\t7\tNMOD\t_\t_
7\tweek\tweek\tNOUN\tNN\t_\t5\tTMP\t_\t_
8\t.\t.\tPUNCT\t.\t_\t4\tP\t_\t_

";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = PipelineConfig::default();
    let mut features = FeatureConfig::default();
    // The lexicon is open: add domain terms as needed.
    features.temporal.insert("quartal", TemporalTag::Neutral);

    println!("{}", FEATURE_COLUMNS.join("\t"));
    for (text, lang) in [(GERMAN, Language::De), (ENGLISH, Language::En)] {
        let reader = ConllReader::new(text.as_bytes(), ReaderOptions::new(lang, ColumnLayout::Conllu));
        for sentence in reader {
            let a = annotate_sentence(sentence?, cfg.scheme, &cfg.classifier);
            for (vc, label) in &a.vcs {
                let record = extract_context_features(&a.sentence, vc, label, &features);
                println!("{}", record.to_tsv_row());
            }
        }
    }
    Ok(())
}
