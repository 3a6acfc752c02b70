//! Code lengths, joint and conditional lengths under the built-in backends.
//!
//! ```text
//! cargo run --release --example code_lengths
//! ```

use bitmine::{code_len, cond_code_len, joint_code_len, joint_code_len_canonical, Backend, BitString};

fn main() -> bitmine::Result<()> {
    let strings: Vec<BitString> = ["0000", "01", "0000000000000000", "0110100110010110", "0101010101010101"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let backends = [Backend::kt(0)?, Backend::kt(1)?, Backend::kt(4)?, Backend::LzParse];

    print!("{:>18}", "x");
    for b in &backends {
        print!("{:>10}", format!("{}{}", b.name(), b.order().map(|k| k.to_string()).unwrap_or_default()));
    }
    println!();
    for x in &strings {
        print!("{:>18}", x.to_string());
        for b in &backends {
            print!("{:>10.4}", code_len(b, x)?.bits());
        }
        println!();
    }

    let kt0 = Backend::kt(0)?;
    let (y, x): (BitString, BitString) = ("00".parse().unwrap(), "0".parse().unwrap());
    println!();
    println!("L(00 || 0)  = {:.4}", joint_code_len(&kt0, &y, &x)?.bits());
    println!("L(0 | 00)   = {:.4}", cond_code_len(&kt0, &x, &y)?);

    // The canonical joint puts the shorter (then smaller) string first,
    // so it is symmetric by construction.
    let (a, b) = (&strings[3], &strings[4]);
    println!(
        "canonical L(a,b) = {:.4}, L(b,a) = {:.4}",
        joint_code_len_canonical(&kt0, a, b)?.bits(),
        joint_code_len_canonical(&kt0, b, a)?.bits()
    );
    Ok(())
}
