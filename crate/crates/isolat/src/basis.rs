//! Full-rank lattices in `Z_ℓ^4` stored as canonical Hermite bases.
//!
//! A lattice `L` is only ever handled when `ℓ^N Z^4 ⊆ L` with room to spare, so
//! it is faithfully a submodule of `(Z/ℓ^N)^4`. The basis is lower triangular:
//! column `j` has `ℓ^{k_j}` in row `j`, zeros above, and every entry left of a
//! pivot reduced below that pivot.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::residue::{hermite_span, ResidueMatrix, ResidueRing};

/// Spare digits every stored lattice keeps: `exponent ≤ N - PRECISION_GUARD`.
pub const PRECISION_GUARD: u32 = 3;

pub type Vec4 = [u64; 4];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeBasis {
    ring: ResidueRing,
    cols: [Vec4; 4],
    exps: [u32; 4],
}

impl LatticeBasis {
    pub fn standard(ring: ResidueRing) -> Self {
        let mut cols = [[0; 4]; 4];
        for (i, c) in cols.iter_mut().enumerate() {
            c[i] = 1;
        }
        LatticeBasis { ring, cols, exps: [0; 4] }
    }

    /// `span(gens) + ℓ^N Z^4`, failing if that is too close to `ℓ^N Z^4` to be trusted.
    pub fn span(ring: ResidueRing, gens: &[Vec4]) -> Result<Self> {
        let (basis, pivots) = hermite_span(ring, 4, gens.iter().map(|g| g.to_vec()).collect());
        if pivots.len() < 4 {
            return Err(Error::PrecisionExhausted);
        }
        let mut cols = [[0; 4]; 4];
        let mut exps = [0; 4];
        for j in 0..4 {
            debug_assert_eq!(pivots[j].0, j);
            exps[j] = pivots[j].1;
            cols[j].copy_from_slice(&basis[j]);
        }
        let out = LatticeBasis { ring, cols, exps };
        if out.exponent() + PRECISION_GUARD > ring.precision() {
            return Err(Error::PrecisionExhausted);
        }
        Ok(out)
    }

    /// Writes the lattice as `ℓ^t · L'` with `L'` primitive.
    pub fn primitive_part(&self) -> Result<(u32, LatticeBasis)> {
        let t = self.content();
        if t == 0 {
            return Ok((0, self.clone()));
        }
        Ok((t, self.divide(t)?))
    }

    /// `ℓ^{-t} L`, assuming `L ⊆ ℓ^t Z^4`.
    pub fn divide(&self, t: u32) -> Result<LatticeBasis> {
        let r = self.ring;
        debug_assert!(self.content() >= t);
        let mut gens: Vec<Vec4> = self.cols.iter().map(|c| c.map(|x| r.div_ell_pow(x, t))).collect();
        let fill = r.ell_pow(r.precision() - t);
        for i in 0..4 {
            let mut e = [0; 4];
            e[i] = fill;
            gens.push(e);
        }
        LatticeBasis::span(r, &gens)
    }

    pub fn scale(&self, k: u32) -> Result<LatticeBasis> {
        let r = self.ring;
        let s = r.ell_pow(k);
        let gens: Vec<Vec4> = self.cols.iter().map(|c| c.map(|x| r.mul(x, s))).collect();
        LatticeBasis::span(r, &gens)
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn columns(&self) -> &[Vec4; 4] {
        &self.cols
    }

    /// Exponents `k_j` of the diagonal pivots.
    pub fn pivot_exponents(&self) -> [u32; 4] {
        self.exps
    }

    /// `log_ℓ [Z^4 : L]`.
    pub fn index_exp(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Least `e` with `ℓ^e Z^4 ⊆ L`.
    pub fn exponent(&self) -> u32 {
        self.matrix().smith_valuations().into_iter().max().unwrap_or(0)
    }

    /// Least valuation over all lattice vectors.
    pub fn content(&self) -> u32 {
        self.cols.iter().flatten().map(|&x| self.ring.val(x)).min().unwrap_or(0)
    }

    pub fn matrix(&self) -> ResidueMatrix {
        ResidueMatrix::from_columns(self.ring, 4, &self.cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
    }

    /// Coordinates of `v` against the basis, if `v ∈ L`.
    pub fn coords(&self, v: &Vec4) -> Option<Vec4> {
        let r = self.ring;
        let mut rem = *v;
        let mut c = [0; 4];
        for j in 0..4 {
            let k = self.exps[j];
            if rem[j] == 0 {
                continue;
            }
            if r.val(rem[j]) < k {
                return None;
            }
            let q = r.div_ell_pow(rem[j], k);
            c[j] = q;
            for i in j..4 {
                rem[i] = r.sub(rem[i], r.mul(q, self.cols[j][i]));
            }
        }
        Some(c)
    }

    pub fn contains(&self, v: &Vec4) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        other.cols.iter().all(|c| self.contains(c))
    }

    /// `L + M`.
    pub fn sum(&self, other: &LatticeBasis) -> Result<LatticeBasis> {
        let gens: Vec<Vec4> = self.cols.iter().chain(other.cols.iter()).copied().collect();
        LatticeBasis::span(self.ring, &gens)
    }

    /// Reduction of a vector of `L` to coordinates in `L/ℓL`.
    pub fn coords_mod_ell(&self, v: &Vec4) -> Option<Vec<u64>> {
        let l = self.ring.ell();
        self.coords(v).map(|c| c.iter().map(|x| x % l).collect())
    }

    /// `B·v` for an integer coordinate vector `v`.
    pub fn combine(&self, v: &[u64]) -> Vec4 {
        let r = self.ring;
        let mut out = [0; 4];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for i in 0..4 {
                out[i] = r.add(out[i], r.mul(x, self.cols[j][i]));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> ResidueRing {
        ResidueRing::new(2, 12).unwrap()
    }

    #[test]
    fn standard_is_span_of_units() {
        let r = ring();
        let b = LatticeBasis::span(r, &[[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [0, 0, 1, 1]]).unwrap();
        assert_eq!(b, LatticeBasis::standard(r));
        assert_eq!(b.exponent(), 0);
    }

    #[test]
    fn scale_and_divide() {
        let r = ring();
        let s = LatticeBasis::standard(r);
        let two = s.scale(1).unwrap();
        assert_eq!(two.content(), 1);
        assert_eq!(two.index_exp(), 4);
        let (t, p) = two.primitive_part().unwrap();
        assert_eq!((t, p), (1, s));
    }

    #[test]
    fn exponent_exceeds_diagonal() {
        let r = ring();
        // span{(2,1,0,0),(0,2,0,0), e3, e4}: Z^4/L is cyclic of order 4
        let b = LatticeBasis::span(r, &[[2, 1, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(b.pivot_exponents(), [1, 1, 0, 0]);
        assert_eq!(b.exponent(), 2);
        assert!(b.contains(&[4, 0, 0, 0]));
        assert!(!b.contains(&[2, 0, 0, 0]));
    }

    #[test]
    fn precision_guard() {
        let r = ResidueRing::new(2, 6).unwrap();
        assert!(LatticeBasis::span(r, &[[8, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).is_ok());
        assert_eq!(
            LatticeBasis::span(r, &[[16, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
            Err(Error::PrecisionExhausted)
        );
    }
}
