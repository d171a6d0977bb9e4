//! Capped erasure and error channels with their decoders.
//!
//! Both channels act on a uniformly random `K`-subset of the `2^m`
//! coordinates. RM(m, d) is decoded from erasures by solving against its
//! parity-check matrix `E(m, m-d-1)`; RM(m, m-2r-2) is decoded from errors
//! by locating a superset of the error positions from the syndrome and then
//! erasing it.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Echelon};
use crate::poly::{superset_transform, Codeword, MonomialBasis};
use crate::vanishing::{PointSet, VanishingSpace};

/// Draws `k` distinct points of F_2^m uniformly, by rejecting repeats.
/// The returned order is the draw order.
pub fn sample_distinct_points<R: Rng + ?Sized>(
    m: usize,
    k: usize,
    rng: &mut R,
) -> Result<Vec<u32>> {
    let n = 1u64 << m;
    if k as u64 > n {
        return Err(Error::Domain(format!(
            "cannot pick {k} distinct points out of 2^{m}"
        )));
    }
    let mut seen = HashSet::with_capacity(k);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let z = rng.gen_range(0..n) as u32;
        if seen.insert(z) {
            out.push(z);
        }
    }
    Ok(out)
}

/// Draws `k` points independently; repeats are possible.
pub fn sample_points_with_replacement<R: Rng + ?Sized>(
    m: usize,
    k: usize,
    rng: &mut R,
) -> Vec<u32> {
    let n = 1u64 << m;
    (0..k).map(|_| rng.gen_range(0..n) as u32).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasurePattern {
    pub erased: PointSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorPattern {
    pub flipped: PointSet,
}

pub fn sample_erasures<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Result<ErasurePattern> {
    let pts = sample_distinct_points(m, k, rng)?;
    Ok(ErasurePattern {
        erased: PointSet::from_points(m, pts)?,
    })
}

pub fn sample_errors<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> Result<ErrorPattern> {
    let pts = sample_distinct_points(m, k, rng)?;
    Ok(ErrorPattern {
        flipped: PointSet::from_points(m, pts)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Zero,
    One,
    Erased,
}

/// A word over `{0, 1, ?}` of length `2^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord {
    m: usize,
    /// Known bit values; zero at erased positions.
    values: BitVector,
    erased: BitVector,
}

impl ReceivedWord {
    pub fn new(m: usize, values: BitVector, erased: BitVector) -> Result<Self> {
        for v in [&values, &erased] {
            if v.len() != 1 << m {
                return Err(Error::DimensionMismatch {
                    expected: 1 << m,
                    got: v.len(),
                });
            }
        }
        let mut values = values;
        for (a, b) in values.words_mut().iter_mut().zip(erased.words()) {
            *a &= !b;
        }
        Ok(Self { m, values, erased })
    }

    /// Passes `word` through an erasure pattern.
    pub fn erase(word: &Codeword, pattern: &ErasurePattern) -> Result<Self> {
        Self::erase_points(word.m(), word.table(), pattern.erased.points())
    }

    pub fn erase_points(m: usize, word: &BitVector, points: &[u32]) -> Result<Self> {
        let mut erased = BitVector::zeros(1 << m);
        for &z in points {
            erased.set(z as usize, true);
        }
        Self::new(m, word.clone(), erased)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn symbol(&self, t: usize) -> Symbol {
        if self.erased.get(t) {
            Symbol::Erased
        } else if self.values.get(t) {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn erased_points(&self) -> Vec<u32> {
        self.erased.iter_ones().map(|t| t as u32).collect()
    }

    pub fn erased_mask(&self) -> &BitVector {
        &self.erased
    }

    pub fn known_values(&self) -> &BitVector {
        &self.values
    }
}

impl fmt::Display for ReceivedWord {
    /// Fixture text: one character per point in index order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..1usize << self.m)
            .map(|t| match self.symbol(t) {
                Symbol::Zero => '0',
                Symbol::One => '1',
                Symbol::Erased => '?',
            })
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for ReceivedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let n = s.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::parse(1, format!("length {n} is not a power of two")));
        }
        let m = n.trailing_zeros() as usize;
        let mut values = BitVector::zeros(n);
        let mut erased = BitVector::zeros(n);
        for (t, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => values.set(t, true),
                '?' => erased.set(t, true),
                _ => return Err(Error::parse(1, format!("unexpected symbol {c:?}"))),
            }
        }
        Self::new(m, values, erased)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Decoded(Codeword),
    /// Erased columns of the parity-check matrix are dependent.
    AmbiguousErasure,
    /// The located error superset could not be erasure-decoded, or was everything.
    KernelClosureFailure,
    /// The known symbols are not a punctured codeword.
    InconsistentInput,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub erased: usize,
    /// Rank of the erased columns of the parity-check matrix.
    pub erased_rank: Option<usize>,
    pub kernel_dim: Option<usize>,
    pub closure_size: Option<usize>,
}

impl Diagnostics {
    pub fn rank_deficit(&self) -> Option<usize> {
        self.erased_rank.map(|r| self.erased - r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    pub diagnostics: Diagnostics,
}

impl DecodeOutcome {
    pub fn decoded(&self) -> Option<&Codeword> {
        match &self.status {
            DecodeStatus::Decoded(c) => Some(c),
            _ => None,
        }
    }
}

/// Syndrome entries `s_B = sum_t word[t] [B ⊆ t]` for every monomial `B` of `basis`.
pub fn syndrome(word: &BitVector, basis: &MonomialBasis) -> BitVector {
    let m = basis.m();
    let mut sums = word.clone();
    superset_transform(&mut sums, m);
    let mut s = BitVector::zeros(basis.len());
    for (i, mono) in basis.monomials().iter().enumerate() {
        if sums.get(mono.0 as usize) {
            s.set(i, true);
        }
    }
    s
}

enum ErasedSolve {
    Unique(BitVector),
    Ambiguous { rank: usize },
    Inconsistent { rank: usize },
}

/// Solves `A x = b` where column `j` of `A` is `eval_vector(points[j])`.
///
/// Rows of `A` (one per check monomial) are streamed into an augmented
/// echelon form, stopping as soon as the columns have full rank; the caller
/// checks the remaining rows through the syndrome of the filled word.
fn solve_erased(points: &[u32], basis: &MonomialBasis, b: &BitVector) -> ErasedSolve {
    let n = points.len();
    let mut ech = Echelon::new(n + 1);
    let mut inconsistent = false;
    for (i, mono) in basis.monomials().iter().enumerate() {
        if ech.inserted() == n {
            break;
        }
        let mut row = BitVector::zeros(n + 1);
        for (j, &z) in points.iter().enumerate() {
            if z & mono.0 == mono.0 {
                row.set(j, true);
            }
        }
        if b.get(i) {
            row.set(n, true);
        }
        let residue = ech.reduce(&row).expect("row length matches");
        match residue.first_one() {
            None => {}
            Some(p) if p == n => inconsistent = true,
            Some(_) => {
                ech.insert(&residue).expect("row length matches");
            }
        }
    }
    let rank = ech.inserted();
    if inconsistent {
        ErasedSolve::Inconsistent { rank }
    } else if rank < n {
        ErasedSolve::Ambiguous { rank }
    } else {
        // Fully reduced with pivots 0..n: row j reads x_j = b'_j.
        let basis = ech.basis();
        let mut x = BitVector::zeros(n);
        for j in 0..n {
            x.set(j, basis.get(j, n));
        }
        ErasedSolve::Unique(x)
    }
}

/// Decodes RM(m, d) from erasures.
pub fn erasure_decode(y: &ReceivedWord, d: usize) -> Result<DecodeOutcome> {
    let m = y.m();
    if d > m {
        return Err(Error::Domain(format!("degree d = {d} exceeds m = {m}")));
    }
    let erased = y.erased_points();
    let mut diagnostics = Diagnostics {
        erased: erased.len(),
        ..Default::default()
    };
    if d == m {
        // RM(m, m) has no parity checks.
        let status = if erased.is_empty() {
            DecodeStatus::Decoded(Codeword::new(m, y.values.clone())?)
        } else {
            diagnostics.erased_rank = Some(0);
            DecodeStatus::AmbiguousErasure
        };
        return Ok(DecodeOutcome {
            status,
            diagnostics,
        });
    }
    let basis = MonomialBasis::new(m, m - d - 1)?;
    let b = syndrome(&y.values, &basis);
    let status = match solve_erased(&erased, &basis, &b) {
        ErasedSolve::Unique(x) => {
            diagnostics.erased_rank = Some(erased.len());
            let mut filled = y.values.clone();
            for (i, &z) in erased.iter().enumerate() {
                if x.get(i) {
                    filled.set(z as usize, true);
                }
            }
            if syndrome(&filled, &basis).is_zero() {
                DecodeStatus::Decoded(Codeword::new(m, filled)?)
            } else {
                DecodeStatus::InconsistentInput
            }
        }
        ErasedSolve::Ambiguous { rank } => {
            diagnostics.erased_rank = Some(rank);
            DecodeStatus::AmbiguousErasure
        }
        ErasedSolve::Inconsistent { rank } => {
            diagnostics.erased_rank = Some(rank);
            DecodeStatus::InconsistentInput
        }
    };
    Ok(DecodeOutcome {
        status,
        diagnostics,
    })
}

/// Everything the error decoder computed on the way to its answer.
#[derive(Clone, Debug)]
pub struct ErrorDecodeReport {
    pub outcome: DecodeOutcome,
    /// Left kernel of the syndrome matrix, as polynomials of degree `<= r`.
    pub kernel: VanishingSpace,
    /// Common zeros of the kernel, sorted ascending.
    pub located: Vec<u32>,
    /// Whether the erasure step at the located set had a unique solution.
    pub unique_erasure_solve: bool,
}

/// Decodes RM(m, m-2r-2) from errors.
///
/// 1. `s_B` for every `|B| <= 2r+1` (the parity checks of the code).
/// 2. `S[A, C] = s_{A ∪ C}` for `|A| <= r`, `|C| <= r+1`.
/// 3. Left kernel of `S`: every `P` in `I_r(supp e)` lies in it.
/// 4. `W` = common zeros of the kernel.
/// 5. Erasure-decode with `W` erased.
pub fn error_decode(y: &BitVector, m: usize, r: usize) -> Result<ErrorDecodeReport> {
    if r == 0 {
        return Err(Error::Domain("error decoding needs r >= 1".into()));
    }
    if m < 2 * r + 2 {
        return Err(Error::Domain(format!(
            "RM(m, m-2r-2) needs m >= 2r+2, got m = {m}, r = {r}"
        )));
    }
    if y.len() != 1 << m {
        return Err(Error::DimensionMismatch {
            expected: 1 << m,
            got: y.len(),
        });
    }
    let low = MonomialBasis::shared(m, r)?;
    let mid = MonomialBasis::new(m, r + 1)?;

    let mut sums = y.clone();
    superset_transform(&mut sums, m);

    // Rows of S^T are indexed by C, columns by A.
    let st_rows: Vec<BitVector> = mid
        .monomials()
        .iter()
        .map(|c| {
            let mut row = BitVector::zeros(low.len());
            for (j, a) in low.monomials().iter().enumerate() {
                if sums.get((a.0 | c.0) as usize) {
                    row.set(j, true);
                }
            }
            row
        })
        .collect();
    let st = BitMatrix::from_rows(st_rows, low.len())?;
    let kernel = VanishingSpace::from_basis_rows(Arc::clone(&low), st.nullspace())?;
    let located = kernel.common_zeros();

    let mut diagnostics = Diagnostics {
        erased: located.len(),
        kernel_dim: Some(kernel.dim()),
        closure_size: Some(located.len()),
        ..Default::default()
    };
    if kernel.dim() == 0 {
        return Ok(ErrorDecodeReport {
            outcome: DecodeOutcome {
                status: DecodeStatus::KernelClosureFailure,
                diagnostics,
            },
            kernel,
            located,
            unique_erasure_solve: false,
        });
    }

    let received = ReceivedWord::erase_points(m, y, &located)?;
    let erasure = erasure_decode(&received, m - 2 * r - 2)?;
    diagnostics.erased_rank = erasure.diagnostics.erased_rank;
    let unique = matches!(erasure.status, DecodeStatus::Decoded(_));
    let status = match erasure.status {
        DecodeStatus::AmbiguousErasure => DecodeStatus::KernelClosureFailure,
        other => other,
    };
    Ok(ErrorDecodeReport {
        outcome: DecodeOutcome {
            status,
            diagnostics,
        },
        kernel,
        located,
        unique_erasure_solve: unique,
    })
}
