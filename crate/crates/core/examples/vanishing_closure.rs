//! Vanishing spaces `I_r(Z)` and degree-`r` closures of point sets.
//!
//! ```bash
//! cargo run --example vanishing_closure
//! ```

use rmlab::vanishing::{closure, is_minimal_rank, vanishing_space, PointSet};

fn main() -> rmlab::Result<()> {
    // Three corners of a square in F_2^3; the affine closure adds the fourth.
    let z = PointSet::from_fixture("3\n000\n100\n010\n")?;
    for r in 1..=2 {
        let space = vanishing_space(&z, r)?;
        println!(
            "r = {r}: dim I_r(Z) = {} of {}",
            space.dim(),
            space.ambient()
        );
        for p in space.polynomials() {
            println!("  vanishes on Z: {}", p.to_literal());
        }
        println!("  minimal rank: {}", is_minimal_rank(&z, r)?);
        print!("  closure:\n{}", closure(&z, r)?.to_fixture());
    }

    // A subcube: dim I_r = C(m,<=r) - C(l,<=r).
    let cube = PointSet::from_points(4, [0b0000, 0b0001, 0b0010, 0b0011])?;
    println!(
        "subcube of size 4 in F_2^4, r = 1: dim {}",
        vanishing_space(&cube, 1)?.dim()
    );
    Ok(())
}
