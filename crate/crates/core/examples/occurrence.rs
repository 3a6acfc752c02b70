//! Deciding `x ≺ y` and counting support under both occurrence variants.
//!
//! ```text
//! cargo run --release --example occurrence
//! ```

use bitmine::datagen::gen_random;
use bitmine::{code_len, frequency, occurs, Backend, BitString, OccurrenceParams};

fn main() -> bitmine::Result<()> {
    let backend = Backend::kt(0)?;
    let scale_free = OccurrenceParams::scale_free(0.6, 0.3)?;
    let additive = OccurrenceParams::additive(8.0, 4.0)?;

    let y: BitString = "00000000000000000000000011111111".parse().unwrap();
    println!("y = {y}  L(y) = {:.3}", code_len(&backend, &y)?.bits());
    for x in ["0000", "00001111", "0101", "1111111100000000"] {
        let x: BitString = x.parse().unwrap();
        println!(
            "  x = {:<16}  L(x) = {:>7.3}  scale-free: {:<5}  additive: {}",
            x.to_string(),
            code_len(&backend, &x)?.bits(),
            occurs(&backend, &scale_free, &x, &y)?,
            occurs(&backend, &additive, &x, &y)?
        );
    }

    let t = gen_random(20, 32..=48, 3)?;
    println!("\nsupport over {} random transactions (scale-free):", t.len());
    for x in ["0", "00", "000", "0000", "00000"] {
        let x: BitString = x.parse().unwrap();
        println!("  f({x}) = {}", frequency(&backend, &scale_free, &t, &x)?);
    }
    Ok(())
}
