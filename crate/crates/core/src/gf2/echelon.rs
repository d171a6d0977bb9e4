use super::bitvec::BitVector;
use super::matrix::BitMatrix;
use crate::error::{Error, Result};

/// Incremental independence oracle.
///
/// Holds a fully reduced basis: each stored row has a 1 in its own pivot
/// column and 0 in every other pivot column, so membership is a single
/// pass over the pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<BitVector>,
    pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Number of independent vectors absorbed so far.
    pub fn inserted(&self) -> usize {
        self.rows.len()
    }

    fn check_len(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                got: v.len(),
            });
        }
        Ok(())
    }

    fn reduce_in_place(&self, v: &mut BitVector) {
        for (row, &p) in self.rows.iter().zip(&self.pivot_cols) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    /// Residue of `v` modulo the current span.
    pub fn reduce(&self, v: &BitVector) -> Result<BitVector> {
        self.check_len(v)?;
        let mut r = v.clone();
        self.reduce_in_place(&mut r);
        Ok(r)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Absorbs `v` if it is outside the current span; returns whether it was.
    pub fn insert(&mut self, v: &BitVector) -> Result<bool> {
        self.check_len(v)?;
        let mut r = v.clone();
        self.reduce_in_place(&mut r);
        let Some(p) = r.first_one() else {
            return Ok(false);
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        self.rows.push(r);
        self.pivot_cols.push(p);
        Ok(true)
    }

    /// The absorbed span as a canonical reduced-echelon basis.
    pub fn basis(&self) -> BitMatrix {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.pivot_cols[k]);
        let rows = order.into_iter().map(|k| self.rows[k].clone()).collect();
        BitMatrix::from_rows(rows, self.ncols).expect("rows share ncols")
    }
}
