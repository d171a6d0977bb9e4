//! Polynomials in algebraic normal form, their truth tables and the
//! evaluation matrix `E(m, r)`.
//!
//! ```bash
//! cargo run --example anf_transform
//! ```

use rmlab::poly::{build_e, subset_transform, MonomialBasis, Polynomial};

fn main() -> rmlab::Result<()> {
    let p = Polynomial::parse_literal("3 2; 1,x1,x2x3")?;
    let c = p.encode();
    println!("P = {}", p.to_literal());
    println!("truth table {} (weight {})", c.table(), c.weight());

    // The subset-sum transform is its own inverse.
    let mut t = c.table().clone();
    subset_transform(&mut t, 3);
    println!("ANF coefficients by mask {t}");
    println!("recovered {}", c.anf(2)?.to_literal());

    let basis = MonomialBasis::new(3, 2)?;
    let names: Vec<String> = basis.monomials().iter().map(|m| m.to_string()).collect();
    println!("basis of degree <= 2: {}", names.join(", "));
    println!(
        "column of E(3,2) at x = (1,0,1): {}",
        basis.eval_vector(0b101)
    );
    println!("E(3,2) =\n{}", build_e(3, 2)?.to_dump());
    Ok(())
}
