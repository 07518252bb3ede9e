//! Brute-force counterparts of the neighbor enumerations.
//!
//! Each oracle reaches the same answer by a different route (exhaustive
//! subspace scans, dual lattices, quotient-ring unit counts) so that agreement
//! is evidence rather than tautology.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, LocalCmAlgebra, RealIdeal, Split, SplittingSymbol};
use crate::basis::Vec4;
use crate::error::{Error, Result};
use crate::fp;
use crate::lattice::{tally, NeighborKind, SymplecticLattice, SymplecticSpace};

/// Isotropic planes of `Λ/ℓΛ` found by testing every pair of vectors in every
/// plane. With `fault` set the isotropy test is skipped, which must break the count.
pub fn isotropic_planes_brute(space: &SymplecticSpace, lam: &SymplecticLattice, fault: bool) -> Result<Vec<Vec<u32>>> {
    let ell = space.ell();
    let f = space.reduced_form(lam, &space.standard_form())?;
    let mut out = Vec::new();
    for b in fp::subspaces(ell, 4, 2) {
        let codes = fp::span_codes(ell, &b);
        let iso = fault
            || codes.iter().all(|&x| {
                let xv = fp::decode(ell, x, 4);
                codes.iter().all(|&y| crate::lattice::bilinear(ell, &f, &xv, &fp::decode(ell, y, 4)) == 0)
            });
        if iso {
            out.push(codes);
        }
    }
    out.sort();
    Ok(out)
}

/// Span codes of the planes returned by the real enumeration.
pub fn enumerated_plane_sets(space: &SymplecticSpace, lam: &SymplecticLattice) -> Result<Vec<Vec<u32>>> {
    let ell = space.ell();
    let mut out: Vec<Vec<u32>> =
        space.enumerate_isotropic_planes(lam)?.iter().map(|p| p.span_codes(ell)).collect();
    out.sort();
    Ok(out)
}

/// Every `Γ` with `ℓΛ ⊆ Γ ⊆ Λ`, `[Λ:Γ] = ℓ²` and `Γ* = ℓ^{-1}Γ`.
pub fn ll_neighbors_by_duality(space: &SymplecticSpace, lam: &SymplecticLattice) -> Result<Vec<SymplecticLattice>> {
    let mut out = Vec::new();
    for b in fp::subspaces(space.ell(), 4, 2) {
        let g = space.subspace_lattice(lam, &b)?;
        if space.dual(&g)? == g.rescaled(-1) {
            out.push(g);
        }
    }
    out.sort();
    Ok(out)
}

/// 𝔩-neighbors as the `𝔒₀`-stable subspaces of `Λ/ℓΛ` of the right dimension
/// containing `𝔩Λ/ℓΛ`.
pub fn l_neighbors_brute(space: &SymplecticSpace, lam: &SymplecticLattice, i: usize) -> Result<Vec<SymplecticLattice>> {
    let alg = space.algebra();
    let ell = space.ell();
    let b = lam.basis();
    let pr = alg.prime(i);
    let red = |v: &Vec4| {
        b.coords_mod_ell(v).ok_or_else(|| Error::AssertionFailure("vector left the lattice".into()))
    };
    let mut ul = Vec::new();
    let mut w = Vec::new();
    for c in b.columns() {
        ul.push(red(&alg.mul(&pr.uniformizer, &AlgebraElement::new(*c)).coords)?);
        w.push(red(&alg.mul(&alg.omega(), &AlgebraElement::new(*c)).coords)?);
    }
    // w[j] is the image of basis vector j; apply as a matrix with those columns
    let act = |v: &[u64]| -> Vec<u64> {
        (0..4).map(|r| (0..4).map(|j| v[j] * w[j][r]).sum::<u64>() % ell).collect()
    };
    let dim = 4 - pr.residue_degree as usize;
    let mut out = Vec::new();
    for s in fp::subspaces(ell, 4, dim) {
        let mut with_ul = s.clone();
        with_ul.extend(ul.iter().cloned());
        if fp::rank(ell, &with_ul) != dim {
            continue;
        }
        let mut with_w = s.clone();
        with_w.extend(s.iter().map(|v| act(v)));
        if fp::rank(ell, &with_w) != dim {
            continue;
        }
        out.push(space.subspace_lattice(lam, &s)?);
    }
    out.sort();
    Ok(out)
}

/// `|(𝔒_𝔣/𝔩𝔒_𝔣)^×| / |(𝔒₀/𝔩)^×|` by enumerating the finite quotient ring.
pub fn unit_index(alg: &LocalCmAlgebra, f: &RealIdeal, i: usize) -> Result<u64> {
    let ell = alg.ell();
    let o = alg.order_from_conductor(f)?;
    let ob = o.basis();
    let pr = alg.prime(i);
    let lo = alg.mul_lattice(&pr.uniformizer, ob)?;
    let reps: Vec<Vec4> = (0..ell.pow(4) as u32).map(|c| ob.combine(&fp::decode(ell, c, 4))).collect();
    let one = alg.one();
    let units = reps
        .iter()
        .filter(|x| {
            reps.iter().any(|y| {
                let xy = alg.mul(&AlgebraElement::new(**x), &AlgebraElement::new(*y));
                lo.contains(&alg.sub(&xy, &one).coords)
            })
        })
        .count() as u64;
    let per_class = ell.pow(4 - 2 * pr.residue_degree);
    let k_units = ell.pow(pr.residue_degree) - 1;
    Ok(units / per_class / k_units)
}

/// `ℒ_{𝔩_i}[ℒ_{𝔩_j}(Λ)]`: apply `𝔩_j` first.
pub fn composite_l_neighbors(
    space: &SymplecticSpace,
    lam: &SymplecticLattice,
    i: usize,
    j: usize,
) -> Result<Vec<SymplecticLattice>> {
    let mut out = Vec::new();
    for p in space.l_neighbors(lam, j)? {
        for g in space.l_neighbors(&p, i)? {
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The RM-preserving (ℓ,ℓ)-neighbors predicted by composing 𝔩-neighbors.
pub fn predicted_rm_preserving(space: &SymplecticSpace, lam: &SymplecticLattice) -> Result<Vec<SymplecticLattice>> {
    match space.algebra().symbol().real_split {
        Split::Inert => {
            let mut v = space.l_neighbors(lam, 0)?;
            v.sort();
            Ok(v)
        }
        Split::Split => composite_l_neighbors(space, lam, 0, 1),
        Split::Ramified => composite_l_neighbors(space, lam, 0, 0),
    }
}

/// `ℒ_𝔩(Π₁) ∩ ℒ_𝔩(Π₂) = {𝔩Λ}` for every pair of distinct `Π₁, Π₂ ∈ ℒ_𝔩(Λ)`.
pub fn ramified_intersection_holds(space: &SymplecticSpace, lam: &SymplecticLattice) -> Result<bool> {
    let ll = space.prime_multiple(lam, 0)?;
    let first = space.l_neighbors(lam, 0)?;
    let second: Vec<Vec<SymplecticLattice>> =
        first.iter().map(|p| space.l_neighbors(p, 0)).collect::<Result<_>>()?;
    for a in 0..second.len() {
        for b in a + 1..second.len() {
            let common: Vec<&SymplecticLattice> = second[a].iter().filter(|g| second[b].contains(g)).collect();
            if common.len() != 1 || *common[0] != ll {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Expected (ascending, horizontal, descending) 𝔩-neighbor counts.
pub fn expected_l_partition(upper: Split, conductor_exp: u32, norm: u64) -> (usize, usize, usize) {
    let n = norm as usize;
    if conductor_exp > 0 {
        return (1, 0, n);
    }
    match upper {
        Split::Inert => (0, 0, n + 1),
        Split::Split => (0, 2, n - 1),
        Split::Ramified => (0, 1, n),
    }
}

/// Expected number of RM-preserving (ℓ,ℓ)-neighbors at real level 0.
pub fn expected_rm_preserving(real: Split, ell: u64) -> usize {
    (match real {
        Split::Inert => ell * ell + 1,
        Split::Split => ell * ell + 2 * ell + 1,
        Split::Ramified => ell * ell + ell + 1,
    }) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(out: &mut Vec<OracleCheck>, name: String, pass: bool, detail: String) {
    out.push(OracleCheck { name, pass, detail });
}

/// Runs every oracle for one prime over all buildable symbols.
pub fn run_suite(ell: u64, precision: u32, fault: bool) -> Result<Vec<OracleCheck>> {
    let mut out = Vec::new();
    for sym in SplittingSymbol::supported(ell) {
        let space = SymplecticSpace::new(LocalCmAlgebra::build(ell, &sym, precision)?);
        let lam = space.standard_selfdual_lattice()?;
        let tag = format!("ell={ell} {sym}");
        let total = (ell * ell * ell + ell * ell + ell + 1) as usize;

        let brute = isotropic_planes_brute(&space, &lam, fault)?;
        let enumerated = enumerated_plane_sets(&space, &lam)?;
        check(
            &mut out,
            format!("isotropic planes {tag}"),
            brute.len() == total && brute == enumerated,
            format!("brute {} enumerated {} expected {total}", brute.len(), enumerated.len()),
        );

        let mut ll = space.ll_neighbors(&lam)?;
        ll.sort();
        let dual = ll_neighbors_by_duality(&space, &lam)?;
        check(&mut out, format!("ll duality {tag}"), ll == dual, format!("{} vs {}", ll.len(), dual.len()));

        for i in 0..space.algebra().primes().len() {
            let pr = space.algebra().prime(i).clone();
            let norm = ell.pow(pr.residue_degree);
            let base_f = RealIdeal::unit(space.algebra().primes().len());
            let mut states = alloc::vec![lam.clone()];
            let cls = space.classify_l_neighbors(&lam, i)?;
            if let Some(d) = cls.iter().find(|c| c.kind == NeighborKind::LDescending) {
                states.push(d.neighbor.clone());
            }
            for st in &states {
                let mine = space.l_neighbors(st, i)?;
                let theirs = l_neighbors_brute(&space, st, i)?;
                let d = space.descriptor(st)?;
                let f = d.conductor.clone().unwrap_or_else(|| base_f.clone());
                let got = tally(&space.classify_l_neighbors(st, i)?);
                let want = expected_l_partition(pr.upper, f.exponents[i], norm);
                let units = unit_index(space.algebra(), &f, i)?;
                check(
                    &mut out,
                    format!("l-neighbors {tag} prime {i} f={:?}", f.exponents),
                    mine == theirs && got == want && units as usize == want.2,
                    format!("count {} brute {} partition {got:?} expected {want:?} unit index {units}", mine.len(), theirs.len()),
                );
            }
        }

        let cls = space.classify_ll_neighbors(&lam)?;
        let mut preserving: Vec<SymplecticLattice> =
            cls.iter().filter(|c| c.kind == NeighborKind::RmHorizontal).map(|c| c.neighbor.clone()).collect();
        preserving.sort();
        let predicted = predicted_rm_preserving(&space, &lam)?;
        let want = expected_rm_preserving(sym.real_split, ell);
        check(
            &mut out,
            format!("rm-preserving {tag}"),
            preserving.len() == want && preserving == predicted,
            format!("{} preserving, {} predicted, expected {want}", preserving.len(), predicted.len()),
        );
        if sym.real_split == Split::Split {
            let a = composite_l_neighbors(&space, &lam, 0, 1)?;
            let b = composite_l_neighbors(&space, &lam, 1, 0)?;
            check(&mut out, format!("split commutation {tag}"), a == b, format!("{} vs {}", a.len(), b.len()));
        }
        if sym.real_split == Split::Ramified {
            let ok = ramified_intersection_holds(&space, &lam)?;
            check(&mut out, format!("ramified intersection {tag}"), ok, String::new());
        }

        let down = cls.iter().find(|c| c.kind == NeighborKind::RmDescending).map(|c| c.neighbor.clone());
        if let Some(down) = down {
            let t = tally(&space.classify_ll_neighbors(&down)?);
            let want = (1, (ell * ell + ell) as usize, (ell * ell * ell) as usize);
            check(&mut out, format!("rm level split {tag}"), t == want, format!("{t:?} expected {want:?}"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_at_two() {
        let checks = run_suite(2, 16, false).unwrap();
        for c in &checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn fault_mode_breaks_plane_count() {
        let checks = run_suite(2, 16, true).unwrap();
        assert!(checks.iter().any(|c| c.name.starts_with("isotropic planes") && !c.pass));
    }
}
