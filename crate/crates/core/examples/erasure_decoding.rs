//! Decoding RM(m, d) after a capped erasure channel.
//!
//! ```bash
//! cargo run --example erasure_decoding
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmlab::channels::{erasure_decode, sample_erasures, DecodeStatus, ReceivedWord};
use rmlab::poly::{MonomialBasis, Polynomial};

fn main() -> rmlab::Result<()> {
    let (m, d, k) = (8, 4, 30);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let code = MonomialBasis::shared(m, d)?;
    let sent = Polynomial::random(code, &mut rng).encode();
    let pattern = sample_erasures(m, k, &mut rng)?;
    let y = ReceivedWord::erase(&sent, &pattern)?;
    println!("received {y}");

    let out = erasure_decode(&y, d)?;
    match &out.status {
        DecodeStatus::Decoded(c) => println!("decoded, matches sent word: {}", c == &sent),
        other => println!("{other:?}"),
    }
    println!("{:?}", out.diagnostics);

    // Small fixture: one erasure in RM(2, 1).
    let y: ReceivedWord = "01?1".parse()?;
    println!(
        "01?1 -> {:?}",
        erasure_decode(&y, 1)?
            .decoded()
            .map(|c| c.table().to_string())
    );
    Ok(())
}
