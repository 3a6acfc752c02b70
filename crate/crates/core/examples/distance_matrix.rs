//! Pairwise NCD, NID and information distance over a small seeded corpus,
//! plus the triangle-inequality diagnostic.
//!
//! ```text
//! cargo run --release --example distance_matrix
//! ```

use bitmine::datagen::Xorshift64Star;
use bitmine::distance::{distance_matrix, ncd, triangle_violations, Measure};
use bitmine::{Backend, BitString};

fn main() -> bitmine::Result<()> {
    let backend = Backend::Kt { order: 0 };
    let mut rng = Xorshift64Star::new(2024);

    // Random strings, a near-constant one, and periodic ones.
    let mut corpus: Vec<BitString> = (0..4).map(|_| rng.bits(64)).collect();
    let mut sparse = BitString::zeros(64);
    sparse.set(10, true);
    sparse.set(40, true);
    corpus.push(sparse);
    corpus.push((0..64).map(|i| i % 2 == 0).collect());
    corpus.push((0..64).map(|i| i % 4 < 2).collect());

    for measure in [Measure::Ncd, Measure::Nid, Measure::Info] {
        let m = distance_matrix(&backend, &corpus, measure)?;
        println!("{measure}:");
        for i in 0..m.len() {
            let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:7.3}")).collect();
            println!("  {}", row.join(" "));
        }
        let tri = triangle_violations(&m);
        println!(
            "  triangle violations: {}/{} ({:.2}%)",
            tri.violations,
            tri.triples,
            100.0 * tri.rate()
        );
    }

    for order in [0u8, 1, 4] {
        let b = Backend::Kt { order };
        let self_ncd: Vec<String> = corpus
            .iter()
            .map(|a| ncd(&b, a, a).map(|d| format!("{d:.3}")))
            .collect::<Result<_, _>>()?;
        println!("self-NCD with KT order {order}: {}", self_ncd.join(" "));
    }
    Ok(())
}
