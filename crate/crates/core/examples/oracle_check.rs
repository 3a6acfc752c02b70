//! Mines a small random instance and checks the answer against exhaustive
//! enumeration, including the oracle's completeness certificate.
//!
//! ```text
//! cargo run --release --example oracle_check
//! ```

use bitmine::datagen::gen_random;
use bitmine::oracle::{enumerate_frequent, OracleConfig};
use bitmine::{mine, Backend, BitString, MiningConfig, OccurrenceParams, Support};

fn main() -> bitmine::Result<()> {
    let t = gen_random(10, 20..=28, 42)?;
    let backend = Backend::kt(1)?;
    let params = OccurrenceParams::scale_free(0.6, 0.25)?;
    let epsilon = Support::Fraction(0.3);

    let mined = mine(&backend, &params, &t, &MiningConfig::new(epsilon).with_step_bits(3))?;
    let oracle = enumerate_frequent(&backend, &params, &t, epsilon, &OracleConfig::new(18))?;

    let mut got: Vec<(BitString, u64)> = mined.patterns.iter().map(|p| (p.pattern.clone(), p.count)).collect();
    let mut want = oracle.patterns.clone();
    got.sort();
    want.sort();

    println!("epsilon resolves to {} of {} transactions", mined.epsilon, t.len());
    println!("miner: {} patterns over {} levels", got.len(), mined.max_level().map_or(0, |k| k + 1));
    println!("oracle: {} patterns, certificate {:?}", want.len(), oracle.certificate);
    println!("identical: {}", got == want);
    for (p, c) in got.iter().rev().take(5) {
        println!("  {p}  support {c}");
    }
    Ok(())
}
