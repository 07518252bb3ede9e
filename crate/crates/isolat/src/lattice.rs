//! Lattices in `V = K_ℓ` with a †-compatible symplectic form, and the neighbor
//! relations that model 𝔩-isogenies and (ℓ,ℓ)-isogenies.
//!
//! A [`SymplecticLattice`] is `ℓ^s · L` with `L ⊆ Z_ℓ^4` primitive. The
//! homothety class is `L` alone, which is what graphs deduplicate on.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, LocalCmAlgebra, OrderDescriptor, OrderLattice, RealIdeal};
use crate::basis::{LatticeBasis, Vec4};
use crate::error::{Error, Result};
use crate::fp;
use crate::residue::{ResidueMatrix, ResidueRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticLattice {
    scale_exp: i32,
    basis: LatticeBasis,
}

impl SymplecticLattice {
    /// `ℓ^scale_exp · L`, renormalizing if `L` is not primitive.
    pub fn new(scale_exp: i32, basis: LatticeBasis) -> Result<Self> {
        let (t, prim) = basis.primitive_part()?;
        Ok(SymplecticLattice { scale_exp: scale_exp + t as i32, basis: prim })
    }

    pub fn scale_exp(&self) -> i32 {
        self.scale_exp
    }

    /// Primitive basis; this is the homothety class.
    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn rescaled(&self, k: i32) -> SymplecticLattice {
        SymplecticLattice { scale_exp: self.scale_exp + k, basis: self.basis.clone() }
    }

    pub fn same_class(&self, other: &SymplecticLattice) -> bool {
        self.basis == other.basis
    }

    /// Containment as actual lattices of `V`.
    pub fn contains(&self, other: &SymplecticLattice) -> Result<bool> {
        let d = other.scale_exp - self.scale_exp;
        if d < 0 {
            return Ok(contains_scaled(&other.basis, (-d) as u32, &self.basis));
        }
        let o = other.basis.scale(d as u32)?;
        Ok(self.basis.contains_lattice(&o))
    }
}

/// Whether `M ⊆ ℓ^k L`, i.e. `M` has content ≥ k and `ℓ^{-k}M ⊆ L`.
fn contains_scaled(m: &LatticeBasis, k: u32, l: &LatticeBasis) -> bool {
    if m.content() < k {
        return false;
    }
    match m.divide(k) {
        Ok(d) => l.contains_lattice(&d),
        Err(_) => false,
    }
}

/// The bilinear form `ℓ^scale ⟨ξ·x, y⟩` with `ξ = ∏ u_i^{twist_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Form {
    pub scale: i32,
    pub twist: Vec<i32>,
}

impl Form {
    pub fn standard(primes: usize) -> Self {
        Form { scale: 0, twist: vec![0; primes] }
    }
}

/// A subspace of `Λ/ℓΛ`, with coordinates on the lattice's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceModEll {
    pub lattice: SymplecticLattice,
    pub generators: Vec<Vec<u64>>,
    pub dim: usize,
}

impl SubspaceModEll {
    /// Sorted codes of every vector in the subspace.
    pub fn span_codes(&self, ell: u64) -> Vec<u32> {
        fp::span_codes(ell, &self.generators)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NeighborKind {
    LAscending,
    LHorizontal,
    LDescending,
    RmAscending,
    RmHorizontal,
    RmDescending,
}

impl NeighborKind {
    pub fn name(self) -> &'static str {
        match self {
            NeighborKind::LAscending | NeighborKind::RmAscending => "ascending",
            NeighborKind::LHorizontal | NeighborKind::RmHorizontal => "horizontal",
            NeighborKind::LDescending | NeighborKind::RmDescending => "descending",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NeighborClassification {
    pub neighbor: SymplecticLattice,
    pub kind: NeighborKind,
    pub resulting_order: OrderDescriptor,
}

/// Tally of a classification by kind: (ascending, horizontal, descending).
pub fn tally(cls: &[NeighborClassification]) -> (usize, usize, usize) {
    let count = |n: &str| cls.iter().filter(|c| c.kind.name() == n).count();
    (count("ascending"), count("horizontal"), count("descending"))
}

#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    algebra: LocalCmAlgebra,
}

impl SymplecticSpace {
    pub fn new(algebra: LocalCmAlgebra) -> Self {
        SymplecticSpace { algebra }
    }

    pub fn algebra(&self) -> &LocalCmAlgebra {
        &self.algebra
    }

    pub fn ring(&self) -> ResidueRing {
        self.algebra.ring()
    }

    pub fn ell(&self) -> u64 {
        self.algebra.ell()
    }

    pub fn gram(&self) -> &ResidueMatrix {
        self.algebra.gram()
    }

    pub fn standard_form(&self) -> Form {
        Form::standard(self.algebra.primes().len())
    }

    /// The lattice `𝔒_K` itself, asserted self-dual.
    pub fn standard_selfdual_lattice(&self) -> Result<SymplecticLattice> {
        let l = SymplecticLattice::new(0, LatticeBasis::standard(self.ring()))?;
        if self.duality_defect(&l, &self.standard_form())? != Some(0) {
            return Err(Error::NotSelfDual);
        }
        Ok(l)
    }

    /// Gram matrix of an integral multiple of the form, and the power of ℓ it was shifted by.
    fn form_gram(&self, form: &Form) -> (ResidueMatrix, i32) {
        let alg = &self.algebra;
        let m = alg
            .primes()
            .iter()
            .zip(form.twist.iter())
            .map(|(p, &t)| if t < 0 { ((-t) as u32).div_ceil(p.ramification) } else { 0 })
            .max()
            .unwrap_or(0);
        let mut xi = alg.one();
        for (p, &t) in alg.primes().iter().zip(form.twist.iter()) {
            let e = t + (m * p.ramification) as i32;
            xi = alg.mul(&xi, &alg.pow(&p.uniformizer, e as u32));
        }
        if xi == alg.one() {
            return (self.gram().clone(), form.scale - m as i32);
        }
        let g = alg.mul_matrix(&xi).transpose().mul(self.gram());
        (g, form.scale - m as i32)
    }

    /// `Bᵀ G B` for the given form, plus the form's ℓ-shift.
    fn pairing_matrix(&self, l: &LatticeBasis, form: &Form) -> (ResidueMatrix, i32) {
        let (g, shift) = self.form_gram(form);
        let b = l.matrix();
        (b.transpose().mul(&g).mul(&b), shift)
    }

    /// `Some(k)` when `Λ* = ℓ^{-k} Λ` for the form; `None` if no power of ℓ works.
    pub fn duality_defect(&self, l: &SymplecticLattice, form: &Form) -> Result<Option<i32>> {
        let (p, shift) = self.pairing_matrix(&l.basis, form);
        let vals = p.smith_valuations();
        let c = vals[0];
        if c >= self.ring().precision() {
            return Err(Error::PrecisionExhausted);
        }
        if vals.iter().any(|&v| v != c) {
            return Ok(None);
        }
        Ok(Some(2 * l.scale_exp + c as i32 + shift))
    }

    /// A form `⟨ξx, y⟩`, `ξ = ∏ u_i^{t_i}`, for which `Λ` is self-dual up to a
    /// power of ℓ. Lattices reached by 𝔩-steps need one. With one real prime
    /// `t ∈ {0, 1}` suffices; with two, `u₁u₂ = ℓ` leaves only `t₁ - t₂`.
    pub fn polarizing_form(&self, l: &SymplecticLattice) -> Result<Form> {
        let n = self.algebra.primes().len();
        let mut twists: Vec<Vec<i32>> = vec![vec![0; n]];
        if n == 1 {
            twists.push(vec![1]);
        } else {
            for t in 1..self.ring().precision() as i32 {
                twists.push(vec![t, 0]);
                twists.push(vec![0, t]);
            }
        }
        for twist in twists {
            let form = Form { scale: 0, twist };
            if let Some(k) = self.duality_defect(l, &form)? {
                return Ok(Form { scale: -k, ..form });
            }
        }
        Err(Error::NotSelfDual)
    }

    pub fn is_self_dual(&self, l: &SymplecticLattice) -> Result<bool> {
        Ok(self.duality_defect(l, &self.standard_form())? == Some(0))
    }

    /// `Λ* = {x ∈ V : ⟨x, Λ⟩ ⊆ Z_ℓ}` for the standard form.
    pub fn dual(&self, l: &SymplecticLattice) -> Result<SymplecticLattice> {
        let e = l.basis.exponent();
        let a = l.basis.matrix().transpose().mul(&self.gram().transpose());
        let gens: Vec<Vec4> = a.kernel_lattice(e).into_iter().map(|v| [v[0], v[1], v[2], v[3]]).collect();
        let delta = LatticeBasis::span(self.ring(), &gens)?;
        SymplecticLattice::new(-l.scale_exp - e as i32, delta)
    }

    /// `{x ∈ K_ℓ : xΛ ⊆ Λ}`.
    pub fn multiplier_order(&self, l: &SymplecticLattice) -> Result<OrderLattice> {
        let alg = &self.algebra;
        let ring = self.ring();
        let e = l.basis.exponent();
        if e == 0 {
            return Ok(alg.maximal_order());
        }
        let dual = self.dual(&SymplecticLattice::new(0, l.basis.clone())?)?;
        // Δ = ℓ^e L*, so L = {v : ⟨v, Δ⟩ ≡ 0 mod ℓ^e}
        let delta = dual.basis.scale((dual.scale_exp + e as i32) as u32)?;
        let dgt = delta.matrix().transpose().mul(&self.gram().transpose());
        let mut stack = ResidueMatrix::zeros(ring, 16, 4);
        for (j, b) in l.basis.columns().iter().enumerate() {
            let m = dgt.mul(&alg.mul_matrix(&AlgebraElement::new(*b)));
            for i in 0..4 {
                for k in 0..4 {
                    stack.set(4 * j + i, k, m.get(i, k));
                }
            }
        }
        let gens: Vec<Vec4> = stack.kernel_lattice(e).into_iter().map(|v| [v[0], v[1], v[2], v[3]]).collect();
        OrderLattice::from_basis(alg, LatticeBasis::span(ring, &gens)?)
    }

    /// `n` with `𝔒(Λ) ∩ K₀ = Z_ℓ + ℓⁿ𝔒₀`.
    pub fn real_level(&self, l: &SymplecticLattice) -> Result<u32> {
        let alg = &self.algebra;
        let cols = l.basis.columns();
        let wb: Vec<Vec4> = cols.iter().map(|c| alg.mul(&alg.omega(), &AlgebraElement::new(*c)).coords).collect();
        let ring = self.ring();
        for k in 0..=ring.precision() {
            let s = ring.ell_pow(k);
            if wb.iter().all(|v| l.basis.contains(&v.map(|x| ring.mul(x, s)))) {
                return Ok(k);
            }
        }
        Err(Error::PrecisionExhausted)
    }

    pub fn descriptor(&self, l: &SymplecticLattice) -> Result<OrderDescriptor> {
        self.algebra.conductor_of_order(&self.multiplier_order(l)?)
    }

    /// Alternating form on `Λ/ℓΛ`, assuming `Λ` is self-dual up to a power of ℓ.
    pub fn reduced_form(&self, l: &SymplecticLattice, form: &Form) -> Result<Vec<Vec<u64>>> {
        let (p, _) = self.pairing_matrix(&l.basis, form);
        let vals = p.smith_valuations();
        let c = vals[0];
        if c >= self.ring().precision() || vals.iter().any(|&v| v != c) {
            return Err(Error::NotSelfDual);
        }
        let ring = self.ring();
        let ell = ring.ell();
        Ok((0..4).map(|i| (0..4).map(|j| ring.div_ell_pow(p.get(i, j), c) % ell).collect()).collect())
    }

    pub fn enumerate_isotropic_planes(&self, l: &SymplecticLattice) -> Result<Vec<SubspaceModEll>> {
        self.enumerate_isotropic_planes_with(l, &self.standard_form())
    }

    /// Isotropic planes of `Λ/ℓΛ`, in RREF enumeration order.
    pub fn enumerate_isotropic_planes_with(
        &self,
        l: &SymplecticLattice,
        form: &Form,
    ) -> Result<Vec<SubspaceModEll>> {
        let ell = self.ell();
        let f = self.reduced_form(l, form)?;
        let out: Vec<SubspaceModEll> = fp::subspaces(ell, 4, 2)
            .into_iter()
            .filter(|b| bilinear(ell, &f, &b[0], &b[1]) == 0)
            .map(|b| SubspaceModEll { lattice: l.clone(), generators: b, dim: 2 })
            .collect();
        let want = ell * ell * ell + ell * ell + ell + 1;
        if out.len() as u64 != want {
            return Err(Error::AssertionFailure(format!(
                "found {} isotropic planes, expected {want}",
                out.len()
            )));
        }
        Ok(out)
    }

    /// The lattice `Γ` with `ℓΛ ⊆ Γ ⊆ Λ` and `Γ/ℓΛ` the given subspace.
    pub fn subspace_lattice(&self, l: &SymplecticLattice, gens: &[Vec<u64>]) -> Result<SymplecticLattice> {
        let ring = self.ring();
        let mut g: Vec<Vec4> = l.basis.columns().iter().map(|c| c.map(|x| ring.mul(x, ring.ell()))).collect();
        for v in gens {
            g.push(l.basis.combine(v));
        }
        SymplecticLattice::new(l.scale_exp, LatticeBasis::span(ring, &g)?)
    }

    pub fn plane_neighbor(&self, plane: &SubspaceModEll) -> Result<SymplecticLattice> {
        self.subspace_lattice(&plane.lattice, &plane.generators)
    }

    pub fn ll_neighbors(&self, l: &SymplecticLattice) -> Result<Vec<SymplecticLattice>> {
        self.ll_neighbors_with(l, &self.standard_form())
    }

    pub fn ll_neighbors_with(&self, l: &SymplecticLattice, form: &Form) -> Result<Vec<SymplecticLattice>> {
        self.enumerate_isotropic_planes_with(l, form)?.iter().map(|p| self.plane_neighbor(p)).collect()
    }

    fn require_max_rm(&self, l: &SymplecticLattice) -> Result<()> {
        if self.real_level(l)? > 0 {
            return Err(Error::MaxRmRequired);
        }
        Ok(())
    }

    /// `𝔩Λ` for the i-th real prime.
    pub fn prime_multiple(&self, l: &SymplecticLattice, i: usize) -> Result<SymplecticLattice> {
        let u = self.algebra.prime(i).uniformizer;
        SymplecticLattice::new(l.scale_exp, self.algebra.mul_lattice(&u, &l.basis)?)
    }

    /// The `N(𝔩)+1` lattices `Γ` with `𝔩Λ ⊆ Γ ⊆ Λ` and `Γ/𝔩Λ` a line over `𝔒₀/𝔩`.
    pub fn l_neighbors(&self, l: &SymplecticLattice, i: usize) -> Result<Vec<SymplecticLattice>> {
        self.require_max_rm(l)?;
        let alg = &self.algebra;
        let ring = self.ring();
        let ell = ring.ell();
        let pr = alg.prime(i);
        let ul = alg.mul_lattice(&pr.uniformizer, &l.basis)?;
        let mut out: Vec<SymplecticLattice> = Vec::new();
        for code in 1..ell.pow(4) as u32 {
            let v = fp::decode(ell, code, 4);
            let lam = l.basis.combine(&v);
            if ul.contains(&lam) {
                continue;
            }
            let wl = alg.mul(&alg.omega(), &AlgebraElement::new(lam)).coords;
            let mut gens: Vec<Vec4> = ul.columns().to_vec();
            gens.push(lam);
            gens.push(wl);
            let g = SymplecticLattice::new(l.scale_exp, LatticeBasis::span(ring, &gens)?)?;
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out.sort();
        let want = ell.pow(pr.residue_degree) + 1;
        if out.len() as u64 != want {
            return Err(Error::AssertionFailure(format!(
                "found {} l-neighbors, expected {want}",
                out.len()
            )));
        }
        Ok(out)
    }

    pub fn classify_l_neighbors(&self, l: &SymplecticLattice, i: usize) -> Result<Vec<NeighborClassification>> {
        let src = self.descriptor(l)?;
        let f0 = src.conductor.clone().ok_or(Error::MaxRmRequired)?;
        self.l_neighbors(l, i)?
            .into_iter()
            .map(|g| {
                let d = self.descriptor(&g)?;
                let f1 = d.conductor.clone().ok_or_else(|| {
                    Error::AssertionFailure("l-neighbor lost maximal real multiplication".into())
                })?;
                for j in 0..f0.exponents.len() {
                    if j != i && f0.exponents[j] != f1.exponents[j] {
                        return Err(Error::AssertionFailure("l-neighbor changed another prime".into()));
                    }
                }
                let kind = match f1.exponents[i].cmp(&f0.exponents[i]) {
                    core::cmp::Ordering::Less => NeighborKind::LAscending,
                    core::cmp::Ordering::Equal => NeighborKind::LHorizontal,
                    core::cmp::Ordering::Greater => NeighborKind::LDescending,
                };
                Ok(NeighborClassification { neighbor: g, kind, resulting_order: d })
            })
            .collect()
    }

    pub fn classify_ll_neighbors(&self, l: &SymplecticLattice) -> Result<Vec<NeighborClassification>> {
        self.classify_ll_neighbors_with(l, &self.standard_form())
    }

    pub fn classify_ll_neighbors_with(
        &self,
        l: &SymplecticLattice,
        form: &Form,
    ) -> Result<Vec<NeighborClassification>> {
        let n = self.real_level(l)?;
        self.ll_neighbors_with(l, form)?
            .into_iter()
            .map(|g| {
                let d = self.descriptor(&g)?;
                let kind = match d.real_level.cmp(&n) {
                    core::cmp::Ordering::Less => NeighborKind::RmAscending,
                    core::cmp::Ordering::Equal => NeighborKind::RmHorizontal,
                    core::cmp::Ordering::Greater => NeighborKind::RmDescending,
                };
                Ok(NeighborClassification { neighbor: g, kind, resulting_order: d })
            })
            .collect()
    }

    /// `ℓ𝔒_{n-1}Λ`.
    pub fn rm_predecessor(&self, l: &SymplecticLattice) -> Result<SymplecticLattice> {
        let n = self.real_level(l)?;
        if n == 0 {
            return Err(Error::AlreadyMaxRm);
        }
        let alg = &self.algebra;
        let ring = self.ring();
        let s = ring.ell_pow(n);
        let mut gens: Vec<Vec4> = Vec::with_capacity(8);
        for c in l.basis.columns() {
            gens.push(c.map(|x| ring.mul(x, ring.ell())));
            let w = alg.mul(&alg.omega(), &AlgebraElement::new(*c)).coords;
            gens.push(w.map(|x| ring.mul(x, s)));
        }
        SymplecticLattice::new(l.scale_exp, LatticeBasis::span(ring, &gens)?)
    }

    /// `𝔩·𝔒_{𝔩^{-1}𝔣}·Λ`, the unique ascending 𝔩-neighbor.
    pub fn l_predecessor(&self, l: &SymplecticLattice, i: usize) -> Result<SymplecticLattice> {
        let d = self.descriptor(l)?;
        let f = d.conductor.ok_or(Error::MaxRmRequired)?;
        if f.exponents[i] == 0 {
            return Err(Error::NoAscendingNeighbor);
        }
        let mut up = f.exponents.clone();
        up[i] -= 1;
        let o = self.algebra.order_from_conductor(&RealIdeal::new(up))?;
        let alg = &self.algebra;
        let u = alg.prime(i).uniformizer;
        let mut gens: Vec<Vec4> = Vec::with_capacity(16);
        for a in o.basis().columns() {
            let ua = alg.mul(&u, &AlgebraElement::new(*a));
            for b in l.basis.columns() {
                gens.push(alg.mul(&ua, &AlgebraElement::new(*b)).coords);
            }
        }
        SymplecticLattice::new(l.scale_exp, LatticeBasis::span(self.ring(), &gens)?)
    }

    /// Whether `πⁿΛ ⊆ Λ`.
    pub fn frobenius_stable(&self, l: &SymplecticLattice, n: u32) -> Result<bool> {
        let alg = &self.algebra;
        let pi = alg.frobenius().ok_or(Error::NoFrobeniusConfigured)?;
        let pn = alg.pow(pi, n);
        Ok(l.basis.columns().iter().all(|c| l.basis.contains(&alg.mul(&pn, &AlgebraElement::new(*c)).coords)))
    }
}

pub(crate) fn bilinear(ell: u64, f: &[Vec<u64>], x: &[u64], y: &[u64]) -> u64 {
    let mut s = 0;
    for i in 0..4 {
        if x[i] == 0 {
            continue;
        }
        for j in 0..4 {
            s = (s + x[i] * f[i][j] % ell * y[j]) % ell;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Split, SplittingSymbol};

    fn space(l: u64, real: Split, up: &[Split]) -> SymplecticSpace {
        let s = SplittingSymbol::new(real, up.to_vec()).unwrap();
        SymplecticSpace::new(LocalCmAlgebra::build(l, &s, 20).unwrap())
    }

    #[test]
    fn standard_lattice_is_self_dual() {
        for l in [2u64, 3, 5] {
            for s in SplittingSymbol::supported(l) {
                let sp = SymplecticSpace::new(LocalCmAlgebra::build(l, &s, 16).unwrap());
                let lam = sp.standard_selfdual_lattice().unwrap();
                assert_eq!(sp.dual(&lam).unwrap(), lam);
                assert_eq!(sp.dual(&lam.rescaled(1)).unwrap(), lam.rescaled(-1));
            }
        }
    }

    #[test]
    fn plane_counts() {
        let sp = space(2, Split::Inert, &[Split::Inert]);
        let lam = sp.standard_selfdual_lattice().unwrap();
        assert_eq!(sp.enumerate_isotropic_planes(&lam).unwrap().len(), 15);
        let sp = space(3, Split::Split, &[Split::Inert, Split::Ramified]);
        let lam = sp.standard_selfdual_lattice().unwrap();
        assert_eq!(sp.ll_neighbors(&lam).unwrap().len(), 40);
    }

    #[test]
    fn ll_neighbors_are_ll_dual() {
        let sp = space(3, Split::Ramified, &[Split::Split]);
        let lam = sp.standard_selfdual_lattice().unwrap();
        for g in sp.ll_neighbors(&lam).unwrap() {
            assert_eq!(sp.dual(&g).unwrap(), SymplecticLattice::new(g.scale_exp() - 1, g.basis().clone()).unwrap());
            assert_eq!(g.basis().index_exp() as i32 + 4 * g.scale_exp(), 2);
        }
    }

    #[test]
    fn ll_split_at_level_one() {
        let sp = space(2, Split::Inert, &[Split::Inert]);
        let lam = sp.standard_selfdual_lattice().unwrap();
        let down = sp
            .classify_ll_neighbors(&lam)
            .unwrap()
            .into_iter()
            .find(|c| c.kind == NeighborKind::RmDescending)
            .unwrap()
            .neighbor;
        assert_eq!(sp.real_level(&down).unwrap(), 1);
        assert_eq!(tally(&sp.classify_ll_neighbors(&down).unwrap()), (1, 6, 8));
        let up = sp.rm_predecessor(&down).unwrap();
        assert_eq!(sp.real_level(&up).unwrap(), 0);
        assert_eq!(sp.rm_predecessor(&lam), Err(Error::AlreadyMaxRm));
    }

    #[test]
    fn l_neighbor_partition_split_upper() {
        let sp = space(3, Split::Inert, &[Split::Split]);
        let lam = sp.standard_selfdual_lattice().unwrap();
        let cls = sp.classify_l_neighbors(&lam, 0).unwrap();
        assert_eq!(tally(&cls), (0, 2, 8));
        let desc = cls.iter().find(|c| c.kind == NeighborKind::LDescending).unwrap();
        let back = sp.classify_l_neighbors(&desc.neighbor, 0).unwrap();
        assert_eq!(tally(&back), (1, 0, 9));
        let pred = sp.l_predecessor(&desc.neighbor, 0).unwrap();
        assert!(pred.same_class(&lam));
        assert_eq!(sp.l_predecessor(&lam, 0), Err(Error::NoAscendingNeighbor));
    }

    #[test]
    fn multiplier_order_of_order() {
        let sp = space(2, Split::Split, &[Split::Inert, Split::Split]);
        let alg = sp.algebra();
        let o = alg.order_from_conductor(&RealIdeal::new(vec![2, 1])).unwrap();
        let lam = SymplecticLattice::new(0, o.basis().clone()).unwrap();
        assert_eq!(sp.multiplier_order(&lam).unwrap(), o);
        assert_eq!(sp.multiplier_order(&lam.rescaled(3)).unwrap(), o);
    }

    #[test]
    fn l_neighbors_need_max_rm() {
        let sp = space(2, Split::Inert, &[Split::Inert]);
        let r = sp.ring();
        let b = LatticeBasis::span(r, &[[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]).unwrap();
        let lam = SymplecticLattice::new(0, b).unwrap();
        assert_eq!(sp.l_neighbors(&lam, 0), Err(Error::MaxRmRequired));
    }

    #[test]
    fn frobenius_checks() {
        let s = SplittingSymbol::new(Split::Inert, vec![Split::Split]).unwrap();
        let sp = SymplecticSpace::new(LocalCmAlgebra::build(3, &s, 20).unwrap());
        let lam = sp.standard_selfdual_lattice().unwrap();
        assert_eq!(sp.frobenius_stable(&lam, 1), Err(Error::NoFrobeniusConfigured));
        let sp = SymplecticSpace::new(LocalCmAlgebra::build(3, &s, 20).unwrap().with_frobenius([3, 0, 0, 0]));
        assert!(sp.frobenius_stable(&lam, 5).unwrap());
    }
}
