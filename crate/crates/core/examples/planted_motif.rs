//! Plants a noisy `00000001111111` motif in random padding and mines the
//! result with the KT backend, reporting the longest patterns near the motif.
//!
//! ```text
//! cargo run --release --example planted_motif
//! ```

use bitmine::datagen::{gen_planted, PlantSpec};
use bitmine::{mine, Backend, BitString, MiningConfig, OccurrenceParams, Support};

/// Smallest Hamming distance between `p` and any equal-length window of `motif`.
fn window_distance(p: &BitString, motif: &BitString) -> Option<usize> {
    (0..=motif.len().checked_sub(p.len())?)
        .filter_map(|s| p.hamming(&motif.slice(s, s + p.len())))
        .min()
}

fn main() -> bitmine::Result<()> {
    let spec = PlantSpec::default();
    let data = gen_planted(&spec)?;
    println!(
        "{} transactions, {} carry the motif {}",
        data.transactions.len(),
        data.manifest.planted_count(),
        spec.motif
    );

    let backend = Backend::Kt { order: 0 };
    let params = OccurrenceParams::scale_free(0.6, 0.3)?;
    let config = MiningConfig::new(Support::Count(20)).with_step_bits(2);
    let result = mine(&backend, &params, &data.transactions, &config)?;

    println!("{} frequent patterns, deepest level {:?}", result.patterns.len(), result.max_level());
    let mut near: Vec<_> = result
        .patterns
        .iter()
        .filter_map(|p| window_distance(&p.pattern, &spec.motif).map(|d| (p, d)))
        .filter(|(_, d)| *d <= 2)
        .collect();
    near.sort_by_key(|(p, _)| std::cmp::Reverse(p.pattern.len()));
    for (p, d) in near.iter().take(10) {
        println!(
            "{:>16}  len {:>2}  support {:>2}  L = {:.3} bits  distance {}",
            p.pattern.to_string(),
            p.pattern.len(),
            p.count,
            p.code_len.bits(),
            d
        );
    }
    Ok(())
}
