//! Naive reference implementations shared by the integration tests.
//! Everything here works on plain `Vec<u8>` / `u32` data and avoids the
//! crate's own algorithms.

#![allow(dead_code)]

use rmlab::gf2::{BitMatrix, BitVector};

pub fn dense(m: &BitMatrix) -> Vec<Vec<u8>> {
    m.rows().iter().map(bits).collect()
}

pub fn bits(v: &BitVector) -> Vec<u8> {
    (0..v.len()).map(|i| v.get(i) as u8).collect()
}

/// Gaussian elimination on bytes.
pub fn naive_rank(rows: &[Vec<u8>]) -> usize {
    let mut a: Vec<Vec<u8>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] == 1) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && row[c] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn mat_vec(rows: &[Vec<u8>], x: &[u8]) -> Vec<u8> {
    rows.iter()
        .map(|r| r.iter().zip(x).fold(0, |acc, (a, b)| acc ^ (a & b)))
        .collect()
}

pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

pub fn choose_sum(m: u64, r: u64) -> u64 {
    (0..=r.min(m)).map(|k| choose(m, k)).sum()
}

/// Masks of degree <= r, degree-major then ascending.
pub fn monomials(m: usize, r: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (0..1u32 << m)
        .filter(|x| x.count_ones() as usize <= r)
        .collect();
    v.sort_by_key(|&x| (x.count_ones(), x));
    v
}

/// `prod_{i in mask} z_i`.
pub fn mono_eval(mask: u32, z: u32) -> u8 {
    (0..32).all(|i| mask >> i & 1 == 0 || z >> i & 1 == 1) as u8
}

pub fn poly_eval(monos: &[u32], coeffs: &[u8], z: u32) -> u8 {
    monos
        .iter()
        .zip(coeffs)
        .fold(0, |acc, (&mono, &c)| acc ^ (c & mono_eval(mono, z)))
}

pub fn truth_table(m: usize, monos: &[u32], coeffs: &[u8]) -> Vec<u8> {
    (0..1u32 << m)
        .map(|z| poly_eval(monos, coeffs, z))
        .collect()
}

/// Weight distribution by evaluating every polynomial point by point.
pub fn naive_enumerator(m: usize, r: usize) -> Vec<u64> {
    let monos = monomials(m, r);
    let c = monos.len();
    let mut counts = vec![0u64; (1 << m) + 1];
    for code in 0u64..1 << c {
        let coeffs: Vec<u8> = (0..c).map(|i| (code >> i & 1) as u8).collect();
        let w: usize = truth_table(m, &monos, &coeffs)
            .iter()
            .map(|&b| b as usize)
            .sum();
        counts[w] += 1;
    }
    counts
}

/// `dim I_r(Z)` as `C - rank` of the evaluation rows of `Z`.
pub fn naive_vanishing_dim(m: usize, r: usize, points: &[u32]) -> usize {
    let monos = monomials(m, r);
    let rows: Vec<Vec<u8>> = points
        .iter()
        .map(|&z| monos.iter().map(|&mono| mono_eval(mono, z)).collect())
        .collect();
    monos.len() - naive_rank(&rows)
}

/// Affine span of a nonempty point set, sorted.
pub fn affine_span(points: &[u32]) -> Vec<u32> {
    let base = points[0];
    let mut span = vec![0u32];
    for &p in &points[1..] {
        let d = p ^ base;
        if !span.contains(&d) {
            let extra: Vec<u32> = span.iter().map(|s| s ^ d).collect();
            span.extend(extra);
        }
    }
    let mut out: Vec<u32> = span.into_iter().map(|s| s ^ base).collect();
    out.sort_unstable();
    out
}

/// Every `k`-subset of `0..n`, as bitmasks.
pub fn k_subsets(n: u32, k: u32) -> impl Iterator<Item = u64> {
    (0u64..1 << n).filter(move |s| s.count_ones() == k)
}
