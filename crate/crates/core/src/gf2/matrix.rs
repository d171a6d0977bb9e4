use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::bitvec::{BitVector, WORD_BITS};
use crate::error::{Error, Result};

/// Dense row-major matrix over F_2. Every row has length `cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Outcome of solving `M·v = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    UniqueSolution(BitVector),
    /// Consistent, with `free` free variables; `particular` is one solution.
    Ambiguous {
        particular: BitVector,
        free: usize,
    },
    Inconsistent,
}

/// Row-reduces `rows` in place to reduced echelon form on the first `ncols`
/// columns. Pivot search takes the first row with a 1 in the current column.
/// Returns the pivot columns in ascending order; pivot row `k` ends up at index `k`.
fn reduce_rows(rows: &mut [BitVector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        // The pivot row is zero left of `col`, so earlier words never change.
        let start = col / WORD_BITS;
        let (before, rest) = rows.split_at_mut(next);
        let (pivot, after) = rest.split_first_mut().unwrap();
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row.get(col) {
                row.xor_assign_from(pivot, start);
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Self {
            cols,
            rows: (0..rows).map(|_| BitVector::random(cols, rng)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Convenience constructor from 0/1 literals; panics on ragged input.
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                BitVector::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>())
            })
            .collect();
        Self { cols, rows }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut c = BitVector::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Computes `M·v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(BitVector::from_bools(
            &self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>(),
        ))
    }

    /// Reduced row echelon form with zero rows dropped, plus the ascending
    /// pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let pivots = reduce_rows(&mut rows, self.cols);
        rows.truncate(pivots.len());
        (
            BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full reduction.
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(found) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let start = col / WORD_BITS;
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot = &head[rank];
            for row in tail.iter_mut() {
                if row.get(col) {
                    row.xor_assign_from(pivot, start);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of `{v : M·v = 0}` in reduced echelon form (ascending pivots).
    pub fn nullspace(&self) -> BitMatrix {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<BitVector> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                for (k, &p) in pivots.iter().enumerate() {
                    if rref.rows[k].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
        .rref()
        .0
    }

    /// Solves `M·v = b`.
    pub fn solve(&self, b: &BitVector) -> Result<Solution> {
        if b.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                got: b.len(),
            });
        }
        let n = self.cols;
        let mut aug: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = r.clone();
                a.resize(n + 1);
                if b.get(i) {
                    a.set(n, true);
                }
                a
            })
            .collect();
        let pivots = reduce_rows(&mut aug, n);
        if aug[pivots.len()..].iter().any(|r| r.get(n)) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = BitVector::zeros(n);
        for (k, &p) in pivots.iter().enumerate() {
            if aug[k].get(n) {
                x.set(p, true);
            }
        }
        let free = n - pivots.len();
        Ok(if free == 0 {
            Solution::UniqueSolution(x)
        } else {
            Solution::Ambiguous {
                particular: x,
                free,
            }
        })
    }

    /// Renders the fixture dump: `"rows cols"` then one 0/1 line per row.
    pub fn to_dump(&self) -> String {
        let mut out = format!("{} {}\n", self.nrows(), self.cols);
        for row in &self.rows {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::parse(1, format!("bad dimension {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [nrows, ncols] = dims[..] else {
            return Err(Error::parse(1, "header must be \"rows cols\""));
        };
        let mut rows = Vec::with_capacity(nrows);
        for (idx, line) in lines {
            let row: BitVector = line
                .parse()
                .map_err(|_| Error::parse(idx + 1, "row must contain only 0 and 1"))?;
            if row.len() != ncols {
                return Err(Error::parse(
                    idx + 1,
                    format!("row has {} bits, expected {ncols}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != nrows {
            return Err(Error::parse(
                text.lines().count(),
                format!("expected {nrows} rows, found {}", rows.len()),
            ));
        }
        Ok(Self { cols: ncols, rows })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_dump(s)
    }
}
