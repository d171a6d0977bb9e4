//! Multilinear polynomials over F_2 and their truth tables.
//!
//! Point `t` in `0..2^m` has coordinate `x_i = bit (i-1) of t`. A monomial
//! is a variable mask with the same bit convention, and it evaluates to 1 at
//! `t` iff its mask is a subset of `t`.
//!
//! The monomial basis of degree `<= r` is ordered by degree, then by mask.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest variable count supported by the point/mask representation.
pub const MAX_VARS: usize = 30;

/// Default memory budget for materializing `E(m, r)`: 2 GiB.
pub const DEFAULT_E_BUDGET_BYTES: u128 = 2 << 30;

const BINOM_N: usize = MAX_VARS + 2;

static BINOM: std::sync::LazyLock<[[u64; BINOM_N]; BINOM_N]> = std::sync::LazyLock::new(|| {
    let mut t = [[0u64; BINOM_N]; BINOM_N];
    for n in 0..BINOM_N {
        t[n][0] = 1;
        for k in 1..=n {
            t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
    }
    t
});

/// `C(n, k)`; exact while the result fits in a `u64` (always for `n <= 62`).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else if n < BINOM_N {
        BINOM[n][k]
    } else {
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for j in 0..k {
            acc = acc * (n - j) as u128 / (j + 1) as u128;
        }
        u64::try_from(acc).expect("binomial overflows u64")
    }
}

/// `C(m, <= r) = C(m,0) + ... + C(m,r)`, the dimension of RM(m, r).
pub fn binomial_sum(m: usize, r: usize) -> u64 {
    (0..=r.min(m)).map(|k| binomial(m, k)).sum()
}

/// A multilinear monomial, stored as its variable mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub u32);

impl Monomial {
    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Whether the monomial evaluates to 1 at point `z`.
    #[inline]
    pub fn eval(self, z: u32) -> bool {
        self.0 & !z == 0
    }
}

impl fmt::Display for Monomial {
    /// `1` for the empty monomial, otherwise e.g. `x1x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let mut mask = self.0;
        while mask != 0 {
            write!(f, "x{}", mask.trailing_zeros() + 1)?;
            mask &= mask - 1;
        }
        Ok(())
    }
}

/// Monomials of degree `<= r` in `m` variables, degree-major then mask-ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    m: usize,
    r: usize,
    order: Vec<Monomial>,
    offsets: Vec<usize>,
}

impl MonomialBasis {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if m > MAX_VARS {
            return Err(Error::Domain(format!(
                "m = {m} exceeds the supported maximum {MAX_VARS}"
            )));
        }
        if r > m {
            return Err(Error::Domain(format!("degree r = {r} exceeds m = {m}")));
        }
        let mut offsets = Vec::with_capacity(r + 2);
        let mut order = Vec::with_capacity(binomial_sum(m, r) as usize);
        for k in 0..=r {
            offsets.push(order.len());
            for_each_k_subset(m, k, |mask| order.push(Monomial(mask)));
        }
        offsets.push(order.len());
        Ok(Self {
            m,
            r,
            order,
            offsets,
        })
    }

    pub fn shared(m: usize, r: usize) -> Result<Arc<Self>> {
        Self::new(m, r).map(Arc::new)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn monomial(&self, index: usize) -> Monomial {
        self.order[index]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.order
    }

    /// Index range of the degree-`k` monomials.
    pub fn degree_range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    /// Position of `mono` in the basis, if it belongs to it.
    pub fn index_of(&self, mono: Monomial) -> Option<usize> {
        let k = mono.degree();
        if k > self.r || (mono.0 as u64) >> self.m != 0 {
            return None;
        }
        // Numeric order of equal-size masks is colex order, ranked by the
        // combinatorial number system.
        let mut rank = 0u64;
        let mut mask = mono.0;
        let mut i = 1;
        while mask != 0 {
            rank += binomial(mask.trailing_zeros() as usize, i);
            mask &= mask - 1;
            i += 1;
        }
        Some(self.offsets[k] + rank as usize)
    }

    /// Evaluation vector `z^(r)`: entry for monomial `S` is 1 iff `S ⊆ z`.
    pub fn eval_vector(&self, z: u32) -> BitVector {
        debug_assert!((z as u64) < (1u64 << self.m));
        let mut v = BitVector::zeros(self.len());
        let mut positions = [0usize; 32];
        let mut n = 0;
        let mut rest = z;
        while rest != 0 {
            positions[n] = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            n += 1;
        }
        self.visit_subsets(&positions[..n], 0, 0, 0, &mut v);
        v
    }

    // Depth-first over subsets of `positions` in increasing order; `depth`
    // elements chosen so far with partial colex rank `rank`.
    fn visit_subsets(
        &self,
        positions: &[usize],
        from: usize,
        depth: usize,
        rank: u64,
        out: &mut BitVector,
    ) {
        out.set(self.offsets[depth] + rank as usize, true);
        if depth == self.r {
            return;
        }
        for (j, &p) in positions.iter().enumerate().skip(from) {
            self.visit_subsets(
                positions,
                j + 1,
                depth + 1,
                rank + binomial(p, depth + 1),
                out,
            );
        }
    }
}

/// Calls `f` on every `k`-subset of `{0..m}` in ascending numeric order.
fn for_each_k_subset(m: usize, k: usize, mut f: impl FnMut(u32)) {
    if k > m {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << m;
    let mut mask: u64 = (1u64 << k) - 1;
    while mask < limit {
        f(mask as u32);
        // Gosper's hack: next larger mask with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

// Masks selecting positions whose bit `i` is clear, for i < 6.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// In-place subset-sum transform on a length-`2^m` table:
/// `out[t] = sum over S ⊆ t of in[S]`. It is its own inverse over F_2 and
/// maps ANF coefficients to truth tables and back.
pub fn subset_transform(table: &mut BitVector, m: usize) {
    assert_eq!(table.len(), 1usize << m, "table length must be 2^m");
    let words = table.words_mut();
    for (i, &mask) in LOW_MASKS.iter().enumerate().take(m.min(6)) {
        let shift = 1u32 << i;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    for i in 6..m {
        let stride = 1usize << (i - 6);
        for block in words.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
    }
}

/// In-place superset-sum transform: `out[B] = sum over t ⊇ B of in[t]`.
/// Applied to a received word, entry `B` is the syndrome against monomial `B`.
pub fn superset_transform(table: &mut BitVector, m: usize) {
    assert_eq!(table.len(), 1usize << m, "table length must be 2^m");
    let words = table.words_mut();
    for (i, &mask) in LOW_MASKS.iter().enumerate().take(m.min(6)) {
        let shift = 1u32 << i;
        for w in words.iter_mut() {
            *w ^= (*w >> shift) & mask;
        }
    }
    for i in 6..m {
        let stride = 1usize << (i - 6);
        for block in words.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (l, h) in lo.iter_mut().zip(hi.iter()) {
                *l ^= *h;
            }
        }
    }
}

/// Builds `E(m, r)` under the default 2 GiB budget.
pub fn build_e(m: usize, r: usize) -> Result<BitMatrix> {
    build_e_with_budget(m, r, DEFAULT_E_BUDGET_BYTES)
}

/// `C(m,<=r) x 2^m` matrix whose column `t` is `eval_vector(t)`; row `S` is
/// the truth table of monomial `S`.
pub fn build_e_with_budget(m: usize, r: usize, budget_bytes: u128) -> Result<BitMatrix> {
    let basis = MonomialBasis::new(m, r)?;
    let needed = (basis.len() as u128) << m >> 3;
    if needed > budget_bytes {
        return Err(Error::BudgetExceeded {
            what: "E(m,r) matrix bytes",
            needed,
            limit: budget_bytes,
        });
    }
    let rows = basis
        .monomials()
        .iter()
        .map(|mono| {
            let mut row = BitVector::unit(1 << m, mono.0 as usize);
            subset_transform(&mut row, m);
            row
        })
        .collect();
    BitMatrix::from_rows(rows, 1 << m)
}

/// Element of RM(m, r) in ANF over a shared monomial basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    basis: Arc<MonomialBasis>,
    coeffs: BitVector,
}

impl Polynomial {
    pub fn zero(basis: Arc<MonomialBasis>) -> Self {
        let coeffs = BitVector::zeros(basis.len());
        Self { basis, coeffs }
    }

    pub fn from_coeffs(basis: Arc<MonomialBasis>, coeffs: BitVector) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self { basis, coeffs })
    }

    /// Sum of the given monomials; each must belong to the basis.
    pub fn from_monomials(basis: Arc<MonomialBasis>, monos: &[Monomial]) -> Result<Self> {
        let mut p = Self::zero(basis);
        for &mono in monos {
            let idx = p.basis.index_of(mono).ok_or_else(|| {
                Error::Domain(format!(
                    "monomial {mono} is outside RM({}, {})",
                    p.basis.m, p.basis.r
                ))
            })?;
            p.coeffs.flip(idx);
        }
        Ok(p)
    }

    /// Uniformly random element: every coefficient an independent fair bit.
    pub fn random<R: Rng + ?Sized>(basis: Arc<MonomialBasis>, rng: &mut R) -> Self {
        let coeffs = BitVector::random(basis.len(), rng);
        Self { basis, coeffs }
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &BitVector {
        &self.coeffs
    }

    pub fn m(&self) -> usize {
        self.basis.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Largest degree with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter_ones()
            .last()
            .map(|i| self.basis.monomial(i).degree())
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.coeffs.iter_ones().map(|i| self.basis.monomial(i))
    }

    /// Direct evaluation at one point.
    pub fn eval(&self, z: u32) -> bool {
        self.terms().filter(|mono| mono.eval(z)).count() & 1 == 1
    }

    /// Truth table via the subset-sum butterfly, `O(m 2^m)` bit operations.
    pub fn encode(&self) -> Codeword {
        let m = self.basis.m;
        let mut table = BitVector::zeros(1 << m);
        for mono in self.terms() {
            table.set(mono.0 as usize, true);
        }
        subset_transform(&mut table, m);
        Codeword { m, table }
    }

    /// Hamming weight as a count of nonzero points (fractional weight is this over `2^m`).
    pub fn weight(&self) -> usize {
        self.encode().weight()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::Domain(
                "polynomials live over different bases".into(),
            ));
        }
        Ok(Self {
            basis: Arc::clone(&self.basis),
            coeffs: self.coeffs.xor(&other.coeffs),
        })
    }

    /// Literal form `"m r; S1,S2,..."`, terms in basis order.
    pub fn to_literal(&self) -> String {
        let terms: Vec<String> = self.terms().map(|mono| mono.to_string()).collect();
        format!("{} {}; {}", self.basis.m, self.basis.r, terms.join(","))
    }

    pub fn parse_literal(text: &str) -> Result<Self> {
        let (header, body) = text
            .split_once(';')
            .ok_or_else(|| Error::parse(1, "expected \"m r; terms\""))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::parse(1, format!("bad header value {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [m, r] = dims[..] else {
            return Err(Error::parse(1, "header must be \"m r\""));
        };
        let basis = MonomialBasis::shared(m, r)?;
        let mut monos = Vec::new();
        for term in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let mono = parse_monomial(term, m)?;
            if monos.contains(&mono) {
                return Err(Error::parse(1, format!("duplicate monomial {term}")));
            }
            monos.push(mono);
        }
        Self::from_monomials(basis, &monos)
    }
}

fn parse_monomial(term: &str, m: usize) -> Result<Monomial> {
    if term == "1" {
        return Ok(Monomial(0));
    }
    let mut mask = 0u32;
    let mut parts = term.split('x');
    if parts.next() != Some("") {
        return Err(Error::parse(1, format!("bad monomial {term:?}")));
    }
    for part in parts {
        let var: usize = part
            .parse()
            .map_err(|_| Error::parse(1, format!("bad variable in {term:?}")))?;
        if var == 0 || var > m {
            return Err(Error::parse(
                1,
                format!("variable x{var} out of range 1..={m}"),
            ));
        }
        let bit = 1u32 << (var - 1);
        if mask & bit != 0 {
            return Err(Error::parse(1, format!("repeated variable in {term:?}")));
        }
        mask |= bit;
    }
    Ok(Monomial(mask))
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_literal())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_literal(s)
    }
}

/// Truth table of length `2^m`, indexed by point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Codeword {
    m: usize,
    table: BitVector,
}

impl Codeword {
    pub fn new(m: usize, table: BitVector) -> Result<Self> {
        if table.len() != 1 << m {
            return Err(Error::DimensionMismatch {
                expected: 1 << m,
                got: table.len(),
            });
        }
        Ok(Self { m, table })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &BitVector {
        &self.table
    }

    pub fn into_table(self) -> BitVector {
        self.table
    }

    pub fn get(&self, t: u32) -> bool {
        self.table.get(t as usize)
    }

    pub fn weight(&self) -> usize {
        self.table.count_ones()
    }

    /// Recovers the ANF, failing if any coefficient of degree `> r_cap` survives.
    pub fn anf(&self, r_cap: usize) -> Result<Polynomial> {
        self.anf_in(&MonomialBasis::shared(self.m, r_cap.min(self.m))?)
    }

    /// As [`Codeword::anf`], reusing an existing basis (its `r` is the cap).
    pub fn anf_in(&self, basis: &Arc<MonomialBasis>) -> Result<Polynomial> {
        if basis.m != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: basis.m,
            });
        }
        let mut coeffs = self.table.clone();
        subset_transform(&mut coeffs, self.m);
        let mut out = BitVector::zeros(basis.len());
        for mask in coeffs.iter_ones() {
            let mono = Monomial(mask as u32);
            match basis.index_of(mono) {
                Some(idx) => out.set(idx, true),
                None => {
                    return Err(Error::DegreeTooHigh {
                        r_cap: basis.r,
                        degree: mono.degree(),
                    })
                }
            }
        }
        Polynomial::from_coeffs(Arc::clone(basis), out)
    }
}
