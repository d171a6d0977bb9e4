//! Decoding RM(m, m-2r-2) from random errors by locating them through the
//! syndrome and then erasing the located set.
//!
//! ```bash
//! cargo run --example error_decoding
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmlab::channels::{error_decode, sample_errors};
use rmlab::poly::{MonomialBasis, Polynomial};

fn main() -> rmlab::Result<()> {
    let (m, r) = (12, 1);
    let d = m - 2 * r - 2;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let code = MonomialBasis::shared(m, d)?;
    // Half the minimum distance of RM(12, 8) is 8.
    for k in [4, 9, 12] {
        let sent = Polynomial::random(code.clone(), &mut rng).encode();
        let errors = sample_errors(m, k, &mut rng)?;
        let mut y = sent.table().clone();
        for &z in errors.flipped.points() {
            y.flip(z as usize);
        }
        let report = error_decode(&y, m, r)?;
        println!(
            "K = {k:2}: kernel dim {}, located {} positions, decoded correctly: {}",
            report.kernel.dim(),
            report.located.len(),
            report.outcome.decoded() == Some(&sent)
        );
    }
    Ok(())
}
