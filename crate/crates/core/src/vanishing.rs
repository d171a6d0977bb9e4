//! Degree-`r` vanishing spaces and closures of point sets.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Echelon};
use crate::poly::{binomial_sum, MonomialBasis, Polynomial, MAX_VARS};

/// Largest `m` for which closures enumerate all `2^m` points.
pub const DEFAULT_CLOSURE_MAX_M: usize = 24;

/// Closures are computed a second time by span membership while
/// `2^m * C(m,<=r)` stays under this many bits.
const SPAN_CROSS_CHECK_BITS: u128 = 1 << 20;

/// An ordered set of distinct points of F_2^m.
#[derive(Clone, Debug)]
pub struct PointSet {
    m: usize,
    points: Vec<u32>,
    members: HashSet<u32>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.points == other.points
    }
}

impl Eq for PointSet {}

impl PointSet {
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_VARS {
            return Err(Error::Domain(format!(
                "m = {m} exceeds the supported maximum {MAX_VARS}"
            )));
        }
        Ok(Self {
            m,
            points: Vec::new(),
            members: HashSet::new(),
        })
    }

    pub fn from_points(m: usize, points: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut set = Self::new(m)?;
        for z in points {
            if !set.insert(z)? {
                return Err(Error::Domain(format!("duplicate point {z}")));
            }
        }
        Ok(set)
    }

    /// All of F_2^m in index order.
    pub fn full(m: usize) -> Result<Self> {
        Self::from_points(m, 0..(1u32 << m))
    }

    /// Adds `z`; returns `false` (and leaves the set unchanged) if already present.
    pub fn insert(&mut self, z: u32) -> Result<bool> {
        if (z as u64) >> self.m != 0 {
            return Err(Error::Domain(format!(
                "point {z} is outside F_2^{}",
                self.m
            )));
        }
        if !self.members.insert(z) {
            return Ok(false);
        }
        self.points.push(z);
        Ok(true)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, z: u32) -> bool {
        self.members.contains(&z)
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.points.iter().all(|z| other.contains(*z))
    }

    /// Same members regardless of order.
    pub fn same_members(&self, other: &PointSet) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }

    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.points.clone();
        v.sort_unstable();
        v
    }

    /// `m`-character bit string, coordinate 1 leftmost.
    pub fn point_string(m: usize, z: u32) -> String {
        (0..m)
            .map(|i| if z >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Fixture text: a line with `m`, then one bit string per point.
    pub fn to_fixture(&self) -> String {
        let mut out = format!("{}\n", self.m);
        for &z in &self.points {
            let _ = writeln!(out, "{}", Self::point_string(self.m, z));
        }
        out
    }

    pub fn from_fixture(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing m"))?;
        let m: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, format!("bad m {header:?}")))?;
        let mut set = Self::new(m)?;
        for (idx, line) in lines {
            let line = line.trim();
            if line.len() != m {
                return Err(Error::parse(
                    idx + 1,
                    format!("point must have {m} coordinates"),
                ));
            }
            let mut z = 0u32;
            for (i, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => z |= 1 << i,
                    _ => return Err(Error::parse(idx + 1, format!("unexpected character {c:?}"))),
                }
            }
            if !set.insert(z)? {
                return Err(Error::parse(idx + 1, format!("duplicate point {line}")));
            }
        }
        Ok(set)
    }
}

/// Basis of `I_r(Z)`: all degree-`<= r` polynomials vanishing on `Z`.
#[derive(Clone, Debug)]
pub struct VanishingSpace {
    basis: Arc<MonomialBasis>,
    /// ANF coefficient vectors, reduced echelon form.
    rows: BitMatrix,
}

impl VanishingSpace {
    pub fn from_basis_rows(basis: Arc<MonomialBasis>, rows: BitMatrix) -> Result<Self> {
        if rows.ncols() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: rows.ncols(),
            });
        }
        let rows = rows.rref().0;
        Ok(Self { basis, rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.nrows()
    }

    /// `C(m, <= r)`.
    pub fn ambient(&self) -> usize {
        self.basis.len()
    }

    pub fn monomial_basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn basis_rows(&self) -> &BitMatrix {
        &self.rows
    }

    pub fn polynomials(&self) -> impl Iterator<Item = Polynomial> + '_ {
        self.rows.rows().iter().map(|c| {
            Polynomial::from_coeffs(Arc::clone(&self.basis), c.clone())
                .expect("row length matches basis")
        })
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient());
        for row in self.rows.rows() {
            e.insert(row).expect("row length matches basis");
        }
        e
    }

    /// Whether a coefficient vector lies in the space.
    pub fn contains_coeffs(&self, coeffs: &BitVector) -> Result<bool> {
        self.echelon().contains(coeffs)
    }

    pub fn is_subspace_of(&self, other: &VanishingSpace) -> bool {
        if self.ambient() != other.ambient() {
            return false;
        }
        let e = other.echelon();
        self.rows
            .rows()
            .iter()
            .all(|row| e.contains(row).expect("lengths match"))
    }

    /// Equal spans; the stored bases are canonical so this is a row compare.
    pub fn same_span(&self, other: &VanishingSpace) -> bool {
        self.ambient() == other.ambient() && self.rows == other.rows
    }

    /// Points where every basis polynomial vanishes, sorted ascending.
    pub fn common_zeros(&self) -> Vec<u32> {
        let m = self.basis.m();
        let nonzero = self
            .polynomials()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|p| p.encode().into_table())
            .reduce(
                || BitVector::zeros(1 << m),
                |mut acc, t| {
                    acc.or_assign(&t);
                    acc
                },
            );
        (0..(1u32 << m))
            .filter(|&u| !nonzero.get(u as usize))
            .collect()
    }
}

/// Matrix with one row `eval_vector(z)` per point, in set order.
pub fn eval_rows(points: &[u32], basis: &MonomialBasis) -> BitMatrix {
    let rows = points.iter().map(|&z| basis.eval_vector(z)).collect();
    BitMatrix::from_rows(rows, basis.len()).expect("eval vectors have basis length")
}

pub fn vanishing_space(z: &PointSet, r: usize) -> Result<VanishingSpace> {
    let basis = MonomialBasis::shared(z.m(), r)?;
    vanishing_space_in(z.points(), &basis)
}

/// `I_r(Z)` over an existing basis; `points` may repeat.
pub fn vanishing_space_in(points: &[u32], basis: &Arc<MonomialBasis>) -> Result<VanishingSpace> {
    let rows = eval_rows(points, basis).nullspace();
    Ok(VanishingSpace {
        basis: Arc::clone(basis),
        rows,
    })
}

/// Degree-`r` closure of `Z`, sorted ascending.
///
/// Computed as the common zeros of `I_r(Z)`; for small instances it is
/// recomputed as `{u : eval_vector(u) ∈ span(eval_vector(z) : z ∈ Z)}` and
/// the two must agree.
pub fn closure(z: &PointSet, r: usize) -> Result<PointSet> {
    closure_with_limit(z, r, DEFAULT_CLOSURE_MAX_M)
}

pub fn closure_with_limit(z: &PointSet, r: usize, max_m: usize) -> Result<PointSet> {
    let m = z.m();
    if m > max_m {
        return Err(Error::BudgetExceeded {
            what: "closure enumeration points",
            needed: 1u128 << m,
            limit: 1u128 << max_m,
        });
    }
    let space = vanishing_space(z, r)?;
    let zeros = space.common_zeros();
    if ((1u128 << m) * space.ambient() as u128) <= SPAN_CROSS_CHECK_BITS {
        let by_span = closure_by_span(z, r)?;
        if by_span != zeros {
            return Err(Error::Invariant(format!(
                "closure routes disagree: {} zeros vs {} span members",
                zeros.len(),
                by_span.len()
            )));
        }
    }
    PointSet::from_points(m, zeros)
}

/// Closure by column-span membership alone, sorted ascending.
pub fn closure_by_span(z: &PointSet, r: usize) -> Result<Vec<u32>> {
    let basis = MonomialBasis::new(z.m(), r)?;
    let mut e = Echelon::new(basis.len());
    for &p in z.points() {
        e.insert(&basis.eval_vector(p))?;
    }
    Ok((0..(1u32 << z.m()))
        .into_par_iter()
        .filter(|&u| e.contains(&basis.eval_vector(u)).expect("lengths match"))
        .collect())
}

/// `dim I_r(Z) == C(m,<=r) - |Z|`.
pub fn is_minimal_rank(z: &PointSet, r: usize) -> Result<bool> {
    let ambient = binomial_sum(z.m(), r) as usize;
    if z.len() > ambient {
        return Ok(false);
    }
    Ok(vanishing_space(z, r)?.dim() == ambient - z.len())
}

/// Feeds `eval_vector(z_1), ..., eval_vector(z_K)` into a fresh echelon and
/// reports whether every insert was independent of the previous ones.
pub fn sequentially_independent(points: &[u32], basis: &MonomialBasis) -> bool {
    let mut e = Echelon::new(basis.len());
    points
        .iter()
        .all(|&z| e.insert(&basis.eval_vector(z)).expect("lengths match"))
}
