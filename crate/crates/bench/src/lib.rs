//! Inputs shared by the benchmarks in `benches/`.

use loopforge::corpus::corpus_entry;
use loopforge::CayleyLoop;

/// Corpus loops of increasing order used as benchmark inputs.
pub fn sample_loops() -> Vec<(&'static str, CayleyLoop)> {
    [
        "chein_s3",
        "table1",
        "steiner10_x_z3",
        "steiner10_x_chein_s3",
    ]
    .into_iter()
    .map(|n| (n, corpus_entry(n).expect("corpus name").cayley))
    .collect()
}
