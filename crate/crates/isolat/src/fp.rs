//! Small linear algebra over the prime field `F_ℓ`.
//!
//! Vectors are `Vec<u64>` with entries in `[0, ℓ)`. Everything here is meant for
//! `Λ/ℓΛ` with dimension 4, so nothing is optimized beyond the obvious.

use alloc::vec;
use alloc::vec::Vec;

pub fn inv(a: u64, l: u64) -> u64 {
    debug_assert!(a % l != 0);
    let mut r = 1u64;
    let mut b = a % l;
    let mut e = l - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % l;
        }
        b = b * b % l;
        e >>= 1;
    }
    r
}

/// Reduced row echelon form in place. Zero rows are dropped; returns pivot columns.
pub fn rref(l: u64, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    for r in rows.iter_mut() {
        for x in r.iter_mut() {
            *x %= l;
        }
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        let Some(pr) = (top..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(top, pr);
        let s = inv(rows[top][c], l);
        for x in rows[top].iter_mut() {
            *x = *x * s % l;
        }
        for i in 0..rows.len() {
            if i != top && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + l * l - f * rows[top][j] % l) % l;
                }
            }
        }
        pivots.push(c);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

pub fn rank(l: u64, rows: &[Vec<u64>]) -> usize {
    let mut m = rows.to_vec();
    rref(l, &mut m).len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows and `cols` columns.
pub fn null_space(l: u64, rows: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(l, &mut m);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (l - m[r][free]) % l;
        }
        out.push(v);
    }
    out
}

/// Every `dim`-dimensional subspace of `F_ℓ^n`, each as its RREF basis.
///
/// Ordered by pivot positions (lexicographic), then by the free entries read
/// row by row as a base-ℓ counter.
pub fn subspaces(l: u64, n: usize, dim: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for piv in combinations(n, dim) {
        // free slots: (row, col) with col > piv[row] and col not a pivot
        let slots: Vec<(usize, usize)> = (0..dim)
            .flat_map(|r| {
                let piv = &piv;
                (piv[r] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let total = l.pow(slots.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; n]; dim];
            for (r, &p) in piv.iter().enumerate() {
                rows[r][p] = 1;
            }
            let mut c = code;
            for &(r, col) in slots.iter().rev() {
                rows[r][col] = c % l;
                c /= l;
            }
            out.push(rows);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Base-ℓ code of a vector, first coordinate least significant.
pub fn encode(l: u64, v: &[u64]) -> u32 {
    v.iter().rev().fold(0u32, |acc, &x| acc * l as u32 + (x % l) as u32)
}

pub fn decode(l: u64, mut code: u32, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let x = code as u64 % l;
            code /= l as u32;
            x
        })
        .collect()
}

/// All vectors in the span, as sorted codes.
pub fn span_codes(l: u64, basis: &[Vec<u64>]) -> Vec<u32> {
    let n = basis.first().map_or(0, |b| b.len());
    let d = basis.len() as u32;
    let mut out = Vec::with_capacity(l.pow(d) as usize);
    for code in 0..l.pow(d) {
        let coeffs = decode(l, code as u32, basis.len());
        let mut v = vec![0u64; n];
        for (c, b) in coeffs.iter().zip(basis) {
            for j in 0..n {
                v[j] = (v[j] + c * b[j]) % l;
            }
        }
        out.push(encode(l, &v));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of `k`-dimensional subspaces of `F_ℓ^n` (Gaussian binomial).
pub fn gaussian_binomial(l: u64, n: u32, k: u32) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= l.pow(n - i) - 1;
        den *= l.pow(i + 1) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        for l in [2u64, 3, 5] {
            for d in 0..=4u32 {
                assert_eq!(subspaces(l, 4, d as usize).len() as u64, gaussian_binomial(l, 4, d));
            }
        }
        assert_eq!(subspaces(2, 4, 2).len(), 35);
    }

    #[test]
    fn subspaces_are_distinct() {
        let mut spans: Vec<Vec<u32>> =
            subspaces(3, 4, 2).iter().map(|b| span_codes(3, b)).collect();
        let n = spans.len();
        spans.sort();
        spans.dedup();
        assert_eq!(spans.len(), n);
    }

    #[test]
    fn null_space_dims() {
        let rows = vec![vec![1, 2, 0, 1], vec![2, 4, 0, 2]];
        let k = null_space(5, &rows, 4);
        assert_eq!(k.len(), 3);
        for v in &k {
            let s: u64 = rows[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert_eq!(s % 5, 0);
        }
    }

    #[test]
    fn codes_round_trip() {
        let v = vec![1, 0, 2, 1];
        assert_eq!(decode(3, encode(3, &v), 4), v);
    }
}
