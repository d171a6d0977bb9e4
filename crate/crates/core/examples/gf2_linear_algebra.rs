//! Packed F_2 vectors and matrices: rank, nullspace, solving and the
//! incremental independence oracle.
//!
//! ```bash
//! cargo run --example gf2_linear_algebra
//! ```

use rmlab::gf2::{BitMatrix, BitVector, Echelon, Solution};

fn main() -> rmlab::Result<()> {
    let m = BitMatrix::from_bits(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[1, 1, 0, 1]]);
    println!("M =\n{}", m.to_dump());
    println!("rank {}", m.rank());

    let (rref, pivots) = m.rref();
    println!("rref (pivots {pivots:?}):\n{}", rref.to_dump());

    let ns = m.nullspace();
    for v in ns.rows() {
        println!("kernel vector {v}  M v = {}", m.mul_vec(v)?);
    }

    let b: BitVector = "110".parse()?;
    match m.solve(&b)? {
        Solution::UniqueSolution(x) => println!("unique solution {x}"),
        Solution::Ambiguous { particular, free } => {
            println!("solution {particular} plus {free} free variable(s)")
        }
        Solution::Inconsistent => println!("no solution"),
    }

    // Streamed independence checks.
    let mut ech = Echelon::new(3);
    for s in ["101", "101", "010", "111"] {
        let v: BitVector = s.parse()?;
        println!("insert {s}: new direction = {}", ech.insert(&v)?);
    }
    Ok(())
}
