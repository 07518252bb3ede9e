//! Arithmetic and linear algebra over `Z/ℓ^N`.
//!
//! Residues are stored as `u64` representatives in `[0, ℓ^N)`. The modulus is
//! kept below `2^63` so sums never overflow and products fit in `u128`.

use alloc::vec;
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use crate::error::{Error, Result};

/// Default number of ℓ-adic digits, clamped per prime by [`ResidueRing::max_precision`].
pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueRing {
    ell: u64,
    precision: u32,
    modulus: u64,
}

/// Valuation of a residue. Zero has no exact valuation at finite precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(k) => write!(f, "{k}"),
            Valuation::AtLeast(n) => write!(f, "≥ {n}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ResidueRing {
    pub fn new(ell: u64, precision: u32) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::UnsupportedConfig(format!("{ell} is not prime")));
        }
        if precision == 0 {
            return Err(Error::UnsupportedConfig("precision must be at least 1".into()));
        }
        let max = Self::max_precision(ell);
        if precision > max {
            return Err(Error::UnsupportedConfig(format!(
                "precision {precision} exceeds the supported maximum {max} for ell = {ell}"
            )));
        }
        Ok(ResidueRing { ell, precision, modulus: ell.pow(precision) })
    }

    /// Ring with `min(DEFAULT_PRECISION, max_precision(ell))` digits.
    pub fn with_default_precision(ell: u64) -> Result<Self> {
        Self::new(ell, DEFAULT_PRECISION.min(Self::max_precision(ell).max(1)))
    }

    /// Largest `N` with `ℓ^N < 2^63`.
    pub fn max_precision(ell: u64) -> u32 {
        if ell < 2 {
            return 0;
        }
        let mut n = 0;
        let mut p: u64 = 1;
        while let Some(q) = p.checked_mul(ell) {
            if q >= 1 << 63 {
                break;
            }
            p = q;
            n += 1;
        }
        n
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elem(&self, value: i64) -> ResidueInt {
        ResidueInt { ring: *self, value: self.from_i64(value) }
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.modulus as i128) as u64
    }

    pub fn from_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    /// Representative in `(-ℓ^N/2, ℓ^N/2]`.
    pub fn centered(&self, x: u64) -> i128 {
        if x > self.modulus / 2 {
            x as i128 - self.modulus as i128
        } else {
            x as i128
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// `ℓ^k` reduced, so zero once `k ≥ N`.
    pub fn ell_pow(&self, k: u32) -> u64 {
        if k >= self.precision {
            0
        } else {
            self.ell.pow(k)
        }
    }

    /// Exact valuation, with `N` standing in for zero.
    #[inline]
    pub fn val(&self, mut x: u64) -> u32 {
        if x == 0 {
            return self.precision;
        }
        let mut k = 0;
        while x % self.ell == 0 {
            x /= self.ell;
            k += 1;
        }
        k
    }

    pub fn valuation(&self, x: u64) -> Valuation {
        if x == 0 {
            Valuation::AtLeast(self.precision)
        } else {
            Valuation::Exact(self.val(x))
        }
    }

    pub fn is_unit(&self, x: u64) -> bool {
        x % self.ell != 0
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        if !self.is_unit(x) {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, x as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.from_i128(t0))
    }

    /// Integer quotient of the representative by `ℓ^k`. Exact when `val(x) ≥ k`;
    /// the result is then only meaningful modulo `ℓ^(N-k)`.
    #[inline]
    pub fn div_ell_pow(&self, x: u64, k: u32) -> u64 {
        if k == 0 {
            x
        } else {
            x / self.ell.pow(k)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueInt {
    pub ring: ResidueRing,
    pub value: u64,
}

impl ResidueInt {
    pub fn valuation(&self) -> Valuation {
        self.ring.valuation(self.value)
    }

    pub fn add(&self, o: &ResidueInt) -> ResidueInt {
        ResidueInt { ring: self.ring, value: self.ring.add(self.value, o.value) }
    }

    pub fn sub(&self, o: &ResidueInt) -> ResidueInt {
        ResidueInt { ring: self.ring, value: self.ring.sub(self.value, o.value) }
    }

    pub fn mul(&self, o: &ResidueInt) -> ResidueInt {
        ResidueInt { ring: self.ring, value: self.ring.mul(self.value, o.value) }
    }
}

/// Dense row-major matrix over `Z/ℓ^N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueMatrix {
    ring: ResidueRing,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Output of [`ResidueMatrix::column_normal_form`].
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub h: ResidueMatrix,
    pub u: ResidueMatrix,
    /// `(row, k)` for each pivot column, in column order; the pivot entry is `ℓ^k`.
    pub pivots: Vec<(usize, u32)>,
}

struct Work {
    col: Vec<u64>,
    coef: Vec<u64>,
}

impl ResidueMatrix {
    pub fn zeros(ring: ResidueRing, rows: usize, cols: usize) -> Self {
        ResidueMatrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: ResidueRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ring.modulus;
        }
        m
    }

    pub fn from_rows_i64(ring: ResidueRing, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = ring.from_i64(x);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (already reduced).
    pub fn from_columns(ring: ResidueRing, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = ring.reduce(x);
            }
        }
        m
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.ring.reduce(v);
    }

    pub fn entry(&self, i: usize, j: usize) -> ResidueInt {
        ResidueInt { ring: self.ring, value: self.get(i, j) }
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, o: &ResidueMatrix) -> ResidueMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let r = &self.ring;
        let mut out = Self::zeros(self.ring, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = r.add(out.data[idx], r.mul(a, o.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let r = &self.ring;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, k| r.add(acc, r.mul(self.get(i, k), v[k]))))
            .collect()
    }

    /// Deterministic column echelon form `H = M·U`.
    ///
    /// Rows are scanned top to bottom; in each row the remaining column of least
    /// valuation (first one on ties) becomes the pivot, scaled to exactly `ℓ^k`.
    /// Entries to the left of a pivot are then reduced into `[0, ℓ^k)`.
    /// `H` keeps the shape of `M`, with pivot columns first and zero columns last.
    pub fn column_normal_form(&self) -> NormalForm {
        let (mut done, pivots, rest) = echelon(self.ring, self.rows, self.columns(), true, false);
        reduce_left(self.ring, &mut done, &pivots);
        done.extend(rest);
        let h_cols: Vec<Vec<u64>> = done.iter().map(|w| w.col.clone()).collect();
        let u_cols: Vec<Vec<u64>> = done.iter().map(|w| w.coef.clone()).collect();
        NormalForm {
            h: ResidueMatrix::from_columns(self.ring, self.rows, &h_cols),
            u: ResidueMatrix::from_columns(self.ring, self.cols, &u_cols),
            pivots,
        }
    }

    /// Coefficients `c` with `self·c = v`, assuming `self` is in column normal form.
    ///
    /// A coefficient against a pivot `ℓ^k` is only determined modulo `ℓ^(N-k)`;
    /// the representative returned lies in `[0, ℓ^(N-k))`.
    pub fn solve_in_lattice(&self, v: &[u64]) -> Result<Option<Vec<u64>>> {
        assert_eq!(v.len(), self.rows);
        let r = self.ring;
        let mut rem: Vec<u64> = v.iter().map(|&x| r.reduce(x)).collect();
        let mut c = vec![0u64; self.cols];
        for j in 0..self.cols {
            let Some(p) = (0..self.rows).find(|&i| self.get(i, j) != 0) else { continue };
            // rows above p are already cleared by earlier pivots or must be zero
            if rem[..p].iter().any(|&x| x != 0) {
                return Ok(None);
            }
            let k = r.val(self.get(p, j));
            if k >= r.precision {
                return Err(Error::PrecisionExhausted);
            }
            if r.val(rem[p]) < k {
                return Ok(None);
            }
            let unit_inv = r.inv(r.div_ell_pow(self.get(p, j), k)).expect("pivot unit part");
            let mut q = r.mul(r.div_ell_pow(rem[p], k), unit_inv);
            if k > 0 {
                q %= r.ell_pow(r.precision - k);
            }
            c[j] = q;
            for i in 0..self.rows {
                rem[i] = r.sub(rem[i], r.mul(q, self.get(i, j)));
            }
        }
        if rem.iter().any(|&x| x != 0) {
            return Ok(None);
        }
        Ok(Some(c))
    }

    /// Basis of the null space of `M mod ℓ` over `F_ℓ`, as vectors with entries in `[0, ℓ)`.
    pub fn kernel_mod_ell(&self) -> Vec<Vec<u64>> {
        let l = self.ring.ell;
        let rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| self.row(i).into_iter().map(|x| x % l).collect())
            .collect();
        crate::fp::null_space(l, &rows, self.cols)
    }

    /// Valuations of the Smith invariants, ascending, with `N` for zero invariants
    /// (only the first `min(rows, cols)` are reported).
    pub fn smith_valuations(&self) -> Vec<u32> {
        smith(self, false).0
    }

    /// Generators of `{x ∈ Z_ℓ^cols : M·x ≡ 0 mod ℓ^m}` for `m ≤ N`.
    pub fn kernel_lattice(&self, m: u32) -> Vec<Vec<u64>> {
        let r = self.ring;
        assert!(m <= r.precision);
        let (diag, u) = smith(self, true);
        let u = u.expect("tracked transform");
        let mut gens = Vec::with_capacity(self.cols);
        for t in 0..self.cols {
            let d = diag.get(t).copied().unwrap_or(r.precision);
            let scale = if d >= m { 1 } else { r.ell_pow(m - d) };
            if scale == 0 {
                continue;
            }
            let col: Vec<u64> = u.column(t).into_iter().map(|x| r.mul(x, scale)).collect();
            gens.push(col);
        }
        gens
    }
}

/// Column echelon elimination shared by the normal form and lattice spans.
///
/// With `howell` set, the module spanned is `span(cols) + ℓ^N Z^rows`: whenever a
/// pivot `ℓ^k` with `k > 0` is taken, `ℓ^(N-k)` times its column is fed back,
/// since its pivot entry vanishes modulo `ℓ^N` but the tail may not.
fn echelon(
    ring: ResidueRing,
    rows: usize,
    cols: Vec<Vec<u64>>,
    track: bool,
    howell: bool,
) -> (Vec<Work>, Vec<(usize, u32)>, Vec<Work>) {
    let n = cols.len();
    let mut work: Vec<Work> = cols
        .into_iter()
        .enumerate()
        .map(|(j, col)| {
            let coef = if track {
                let mut e = vec![0; n];
                e[j] = 1 % ring.modulus;
                e
            } else {
                Vec::new()
            };
            Work { col, coef }
        })
        .collect();
    let mut done = Vec::new();
    let mut pivots = Vec::new();
    for r in 0..rows {
        let mut best: Option<(usize, u32)> = None;
        for (idx, w) in work.iter().enumerate() {
            let v = ring.val(w.col[r]);
            if v < ring.precision && best.map_or(true, |(_, bv)| v < bv) {
                best = Some((idx, v));
            }
        }
        let Some((idx, k)) = best else { continue };
        let mut piv = work.remove(idx);
        let unit_inv = ring.inv(ring.div_ell_pow(piv.col[r], k)).expect("unit part");
        scale_work(ring, &mut piv, unit_inv);
        for w in work.iter_mut() {
            if w.col[r] == 0 {
                continue;
            }
            let q = ring.div_ell_pow(w.col[r], k);
            axpy_work(ring, w, &piv, q);
        }
        if howell && k > 0 {
            let s = ring.ell_pow(ring.precision - k);
            let col: Vec<u64> = piv.col.iter().map(|&x| ring.mul(x, s)).collect();
            if col.iter().any(|&x| x != 0) {
                let coef = piv.coef.iter().map(|&x| ring.mul(x, s)).collect();
                work.push(Work { col, coef });
            }
        }
        done.push(piv);
        pivots.push((r, k));
    }
    (done, pivots, work)
}

fn scale_work(ring: ResidueRing, w: &mut Work, s: u64) {
    for x in w.col.iter_mut() {
        *x = ring.mul(*x, s);
    }
    for x in w.coef.iter_mut() {
        *x = ring.mul(*x, s);
    }
}

/// `w -= q·p`
fn axpy_work(ring: ResidueRing, w: &mut Work, p: &Work, q: u64) {
    for (x, &y) in w.col.iter_mut().zip(p.col.iter()) {
        *x = ring.sub(*x, ring.mul(q, y));
    }
    for (x, &y) in w.coef.iter_mut().zip(p.coef.iter()) {
        *x = ring.sub(*x, ring.mul(q, y));
    }
}

fn reduce_left(ring: ResidueRing, done: &mut [Work], pivots: &[(usize, u32)]) {
    for j in 0..done.len() {
        let (p, k) = pivots[j];
        let modulus = ring.ell_pow(k);
        for jj in 0..j {
            let x = done[jj].col[p];
            let q = if k == 0 { x } else { x / modulus };
            if q != 0 {
                let (left, right) = done.split_at_mut(j);
                axpy_work(ring, &mut left[jj], &right[0], q);
            }
        }
    }
}

/// Lower-triangular Hermite basis of `span(gens) + ℓ^N Z^rows`.
///
/// Returns the pivot columns and their exponents; fewer than `rows` columns means
/// the span is not full rank at this precision.
pub(crate) fn hermite_span(
    ring: ResidueRing,
    rows: usize,
    gens: Vec<Vec<u64>>,
) -> (Vec<Vec<u64>>, Vec<(usize, u32)>) {
    let (mut done, pivots, _) = echelon(ring, rows, gens, false, true);
    reduce_left(ring, &mut done, &pivots);
    (done.into_iter().map(|w| w.col).collect(), pivots)
}

/// Smith reduction with least-valuation pivots. Every elimination divides by
/// the pivot's power of ℓ only where the dividend has at least that valuation,
/// so no digits are lost.
fn smith(m: &ResidueMatrix, track: bool) -> (Vec<u32>, Option<ResidueMatrix>) {
    let ring = m.ring;
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = if track { Some(ResidueMatrix::identity(ring, cols)) } else { None };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = ring.val(a.get(i, j));
                if v < ring.precision && best.map_or(true, |(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((bi, bj, k)) = best else {
            diag.extend(core::iter::repeat(ring.precision).take(rows.min(cols) - t));
            break;
        };
        swap_rows(&mut a, t, bi);
        swap_cols(&mut a, t, bj);
        if let Some(u) = u.as_mut() {
            swap_cols(u, t, bj);
        }
        let unit_inv = ring.inv(ring.div_ell_pow(a.get(t, t), k)).expect("unit part");
        for i in 0..rows {
            let x = a.get(i, t);
            a.data[i * cols + t] = ring.mul(x, unit_inv);
        }
        if let Some(u) = u.as_mut() {
            for i in 0..cols {
                let x = u.get(i, t);
                u.data[i * cols + t] = ring.mul(x, unit_inv);
            }
        }
        for i in t + 1..rows {
            let x = a.get(i, t);
            if x == 0 {
                continue;
            }
            let q = ring.div_ell_pow(x, k);
            for j in t..cols {
                let y = ring.sub(a.get(i, j), ring.mul(q, a.get(t, j)));
                a.data[i * cols + j] = y;
            }
        }
        for j in t + 1..cols {
            let x = a.get(t, j);
            if x == 0 {
                continue;
            }
            let q = ring.div_ell_pow(x, k);
            for i in t..rows {
                let y = ring.sub(a.get(i, j), ring.mul(q, a.get(i, t)));
                a.data[i * cols + j] = y;
            }
            if let Some(u) = u.as_mut() {
                for i in 0..cols {
                    let y = ring.sub(u.get(i, j), ring.mul(q, u.get(i, t)));
                    u.data[i * cols + j] = y;
                }
            }
        }
        diag.push(k);
    }
    (diag, u)
}

fn swap_rows(m: &mut ResidueMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn swap_cols(m: &mut ResidueMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
}

impl ResidueRing {
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(l: u64, n: u32) -> ResidueRing {
        ResidueRing::new(l, n).unwrap()
    }

    #[test]
    fn valuations() {
        let r = ring(2, 8);
        assert_eq!(r.valuation(12), Valuation::Exact(2));
        assert_eq!(r.valuation(7), Valuation::Exact(0));
        assert_eq!(ring(3, 5).valuation(0), Valuation::AtLeast(5));
        assert_eq!(alloc::string::ToString::to_string(&ring(3, 5).valuation(0)), "≥ 5");
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(ResidueRing::new(4, 3).is_err());
        assert!(ResidueRing::new(5, 0).is_err());
        assert!(ResidueRing::new(5, 28).is_err());
        assert_eq!(ResidueRing::with_default_precision(5).unwrap().precision(), 27);
        assert_eq!(ResidueRing::with_default_precision(3).unwrap().precision(), 32);
        assert_eq!(ResidueRing::max_precision(2), 62);
    }

    #[test]
    fn inverse_and_signs() {
        let r = ring(3, 6);
        for x in 1..200u64 {
            if x % 3 == 0 {
                assert!(r.inv(x).is_none());
            } else {
                assert_eq!(r.mul(x, r.inv(x).unwrap()), 1);
            }
        }
        assert_eq!(r.centered(r.from_i64(-5)), -5);
    }

    #[test]
    fn identity_normal_form() {
        let r = ring(2, 6);
        let id = ResidueMatrix::identity(r, 4);
        let nf = id.column_normal_form();
        assert_eq!(nf.h, id);
        assert_eq!(nf.u, id);
    }

    #[test]
    fn solve_identity_and_scaled() {
        let r = ring(2, 6);
        let id = ResidueMatrix::identity(r, 4);
        assert_eq!(id.solve_in_lattice(&[3, 1, 4, 1]).unwrap(), Some(vec![3, 1, 4, 1]));
        let two = ResidueMatrix::from_rows_i64(
            r,
            &[vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 2]],
        );
        assert_eq!(two.solve_in_lattice(&[1, 0, 0, 0]).unwrap(), None);
        assert!(two.solve_in_lattice(&[2, 4, 0, 6]).unwrap().is_some());
    }

    #[test]
    fn kernel_mod_ell_simple() {
        let r = ring(2, 4);
        assert_eq!(ResidueMatrix::zeros(r, 4, 4).kernel_mod_ell().len(), 4);
        assert!(ResidueMatrix::identity(r, 4).kernel_mod_ell().is_empty());
        let p = ResidueMatrix::from_rows_i64(
            r,
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]],
        );
        let k = p.kernel_mod_ell();
        assert_eq!(k.len(), 2);
        // exhaustive check over F_2^4
        let mut count = 0;
        for bits in 0..16u64 {
            let v: Vec<u64> = (0..4).map(|i| (bits >> i) & 1).collect();
            if p.mul_vec(&v).iter().all(|x| x % 2 == 0) {
                count += 1;
            }
        }
        assert_eq!(count, 1 << k.len());
        for v in &k {
            assert!(p.mul_vec(v).iter().all(|x| x % 2 == 0));
        }
    }

    #[test]
    fn kernel_lattice_diagonal() {
        let r = ring(3, 6);
        let a = ResidueMatrix::from_rows_i64(r, &[vec![9, 0], vec![0, 1]]);
        // 9x ≡ 0 and y ≡ 0 mod 27  =>  x ∈ 3Z, y ∈ 27Z
        let gens = a.kernel_lattice(3);
        let (basis, piv) = hermite_span(r, 2, gens);
        assert_eq!(piv, vec![(0, 1), (1, 3)]);
        assert_eq!(basis[0], vec![3, 0]);
    }

    #[test]
    fn howell_completion() {
        // over Z/8 the span of (2,1) plus 8Z^2 contains (0,4)
        let r = ring(2, 3);
        let (basis, piv) = hermite_span(r, 2, vec![vec![2, 1]]);
        assert_eq!(piv, vec![(0, 1), (1, 2)]);
        assert_eq!(basis[1], vec![0, 4]);
    }
}
