//! Generates a planted dataset, writes it with its manifest and checks that
//! the manifest alone reproduces the transactions.
//!
//! ```text
//! cargo run --release --example generate_dataset
//! ```

use bitmine::datagen::{gen_planted, PlantSpec};
use bitmine::format::{parse_manifest, parse_transactions, render_manifest, write_transactions, Encoding};

fn main() -> bitmine::Result<()> {
    let spec = PlantSpec {
        motif: "1011001110".parse().unwrap(),
        transaction_count: 12,
        planted_fraction: 0.5,
        flip_prob: 0.1,
        pad_len: 2..=6,
        seed: 2024,
    };
    let data = gen_planted(&spec)?;
    let text = write_transactions(data.transactions.items(), Encoding::Bits, &[])?;
    let manifest_text = render_manifest(&data.manifest);
    print!("{text}");
    println!();
    print!("{manifest_text}");

    // Round trip through the text formats and regenerate from the manifest.
    let reread = parse_transactions(&text)?;
    let manifest = parse_manifest(&manifest_text)?;
    let replayed = manifest.replay()?;
    manifest.check(&replayed)?;
    println!(
        "\nreparsed {} transactions; replay matches: {}",
        reread.len(),
        replayed.items() == reread.as_slice()
    );
    Ok(())
}
