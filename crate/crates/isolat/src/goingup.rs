//! Going up to the maximal local order with (ℓ,ℓ)-steps.
//!
//! A state is a lattice together with the form it is self-dual for. The
//! pipeline surfaces to maximal real multiplication with the β-obstruction,
//! then walks the conductor down with RM-preserving steps, and finally, where
//! the (ℓ,ℓ)-graph cannot finish the job, optionally takes one cyclic 𝔩-step.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, OrderDescriptor, RealIdeal, Split};
use crate::error::{Error, Result};
use crate::fp;
use crate::lattice::{Form, NeighborKind, SubspaceModEll, SymplecticLattice, SymplecticSpace};

/// Digits held back from the step budget.
const BUDGET_RESERVE: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceState {
    pub lattice: SymplecticLattice,
    /// The lattice is self-dual for `ℓ^form_scale ⟨ξx, y⟩`.
    pub form_scale: i32,
    /// Exponents of the real uniformizers making up `ξ`.
    pub twist: Vec<i32>,
    /// Steps left before precision runs out.
    pub precision_budget: u32,
}

impl SurfaceState {
    /// The standard self-dual lattice `𝔒_K`.
    pub fn standard(space: &SymplecticSpace) -> Result<Self> {
        let n = space.algebra().primes().len();
        Ok(SurfaceState {
            lattice: space.standard_selfdual_lattice()?,
            form_scale: 0,
            twist: vec![0; n],
            precision_budget: space.ring().precision().saturating_sub(BUDGET_RESERVE),
        })
    }

    /// Wraps a lattice, checking it is self-dual for the given form.
    pub fn new(space: &SymplecticSpace, lattice: SymplecticLattice, form: Form) -> Result<Self> {
        let s = SurfaceState {
            lattice,
            form_scale: form.scale,
            twist: form.twist,
            precision_budget: space.ring().precision().saturating_sub(BUDGET_RESERVE),
        };
        s.check(space)?;
        Ok(s)
    }

    pub fn form(&self) -> Form {
        Form { scale: self.form_scale, twist: self.twist.clone() }
    }

    fn check(&self, space: &SymplecticSpace) -> Result<()> {
        match space.duality_defect(&self.lattice, &self.form())? {
            Some(0) => Ok(()),
            _ => Err(Error::NotSelfDual),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Ll,
    Cyclic,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Ll => "ll",
            StepKind::Cyclic => "cyclic",
        }
    }
}

/// One step of a run, with the obstructions after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub step: StepKind,
    /// Kernel as a subspace of `Λ/ℓΛ` (lattice coordinates); empty for cyclic steps.
    pub plane: Vec<Vec<u64>>,
    pub n0: u32,
    /// Per real prime; empty while `n0 > 0`.
    pub nl: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExceptionalCase {
    SplitBothInert,
    RamifiedInert,
}

impl ExceptionalCase {
    pub fn name(self) -> &'static str {
        match self {
            ExceptionalCase::SplitBothInert => "split-both-inert",
            ExceptionalCase::RamifiedInert => "ramified-inert",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityReport {
    pub reachable_max: bool,
    pub largest_orders: Vec<OrderDescriptor>,
    pub exceptional: Option<ExceptionalCase>,
    pub path: Vec<PathStep>,
    pub final_state: SurfaceState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoingUpOptions {
    pub allow_cyclic: bool,
    /// Whether the relevant 𝔩 is trivial in the narrow class group, which
    /// the local model cannot decide.
    pub l_principal_narrow: bool,
    /// `(β, e)` with `{1, β/ℓ^e}` a basis of `𝔒₀`; derived when absent.
    pub beta: Option<(AlgebraElement, u32)>,
    /// `f` in `γ_𝔩 / ϖ^f`.
    pub gamma_exponent: Option<u32>,
}

impl Default for GoingUpOptions {
    fn default() -> Self {
        GoingUpOptions { allow_cyclic: false, l_principal_narrow: true, beta: None, gamma_exponent: None }
    }
}

fn default_exponent(space: &SymplecticSpace) -> u32 {
    (space.ring().precision() / 3).max(4)
}

/// `β = ℓ^e ω`, or the irrational part of `π + π†` if a Frobenius is configured.
pub fn default_beta(space: &SymplecticSpace) -> Result<(AlgebraElement, u32)> {
    let alg = space.algebra();
    let ring = space.ring();
    if let Some(pi) = alg.frobenius() {
        let t = alg.add(pi, &alg.conjugate(pi));
        if !alg.is_real(&t) {
            return Err(Error::AssertionFailure("π + π† is not real".into()));
        }
        let b = t.coords[1];
        let e = ring.val(b);
        if e >= ring.precision() {
            return Err(Error::InvalidParams("π + π† is rational; no β available".into()));
        }
        return Ok((AlgebraElement::new([0, b, 0, 0]), e));
    }
    let e = default_exponent(space);
    Ok((AlgebraElement::new([0, ring.ell_pow(e), 0, 0]), e))
}

/// Largest `ε ≤ cap` with `xΛ ⊆ ℓ^ε Λ`; `None` if `xΛ ⊄ Λ`.
fn ell_divisibility(space: &SymplecticSpace, l: &SymplecticLattice, x: &AlgebraElement, cap: u32) -> Option<u32> {
    let alg = space.algebra();
    let ring = space.ring();
    let mut eps = cap;
    for b in l.basis().columns() {
        let y = alg.mul(x, &AlgebraElement::new(*b));
        let c = l.basis().coords(&y.coords)?;
        for v in c {
            eps = eps.min(ring.val(v));
        }
    }
    Some(eps)
}

/// `N₀ = e - max{ε : βΛ ⊆ ℓ^ε Λ}`, asserted equal to the real level.
pub fn obstruction_n0(space: &SymplecticSpace, state: &SurfaceState, beta: &AlgebraElement, e: u32) -> Result<u32> {
    let eps = ell_divisibility(space, &state.lattice, beta, e)
        .ok_or_else(|| Error::InvalidParams("β does not act on the lattice".into()))?;
    let n0 = e - eps;
    let level = space.real_level(&state.lattice)?;
    if n0 != level {
        return Err(Error::AssertionFailure(format!("obstruction {n0} but real level {level}")));
    }
    Ok(n0)
}

/// `N_𝔩 = f - max{δ : γΛ ⊆ 𝔩^δ Λ}`, asserted equal to `v_𝔩` of the conductor.
///
/// `γ_𝔩 = u_i^f ∏_{j≠i} u_j^f η` is `ϖ^f η` locally at `𝔩_i` and divisible
/// enough elsewhere not to interfere.
pub fn obstruction_nl(space: &SymplecticSpace, state: &SurfaceState, i: usize, f: u32) -> Result<u32> {
    if space.real_level(&state.lattice)? > 0 {
        return Err(Error::MaxRmRequired);
    }
    let acts = |delta| ell_divisibility(space, &state.lattice, &gamma_tail(space, i, f, delta), 0).is_some();
    if !acts(0) {
        return Err(Error::InvalidParams("γ does not act on the lattice; raise its exponent".into()));
    }
    let mut delta = 0;
    while delta < f && acts(delta + 1) {
        delta += 1;
    }
    let nl = f - delta;
    let cond = space.descriptor(&state.lattice)?.conductor.ok_or(Error::MaxRmRequired)?;
    if cond.exponents[i] != nl {
        return Err(Error::AssertionFailure(format!(
            "obstruction {nl} at prime {i} but conductor exponent {}",
            cond.exponents[i]
        )));
    }
    Ok(nl)
}

/// `u_i^{-δ} γ_𝔩`.
fn gamma_tail(space: &SymplecticSpace, i: usize, f: u32, delta: u32) -> AlgebraElement {
    let alg = space.algebra();
    let mut g = alg.eta();
    for (j, p) in alg.primes().iter().enumerate() {
        let k = if j == i { f - delta } else { f };
        g = alg.mul(&g, &alg.pow(&p.uniformizer, k));
    }
    g
}

fn gamma_exponent(space: &SymplecticSpace, opts: &GoingUpOptions) -> u32 {
    opts.gamma_exponent.unwrap_or_else(|| default_exponent(space))
}

/// `ℓ^{-1}Γ` for the plane's neighbor `Γ`, self-dual for the form scaled by ℓ.
pub fn step_ll(space: &SymplecticSpace, state: &SurfaceState, plane: &SubspaceModEll) -> Result<SurfaceState> {
    if plane.lattice != state.lattice || plane.dim != 2 {
        return Err(Error::NotIsotropic);
    }
    let f = space.reduced_form(&state.lattice, &state.form())?;
    let ell = space.ell();
    let g = &plane.generators;
    if g.len() != 2 || fp::rank(ell, g) != 2 || crate::lattice::bilinear(ell, &f, &g[0], &g[1]) != 0 {
        return Err(Error::NotIsotropic);
    }
    if state.precision_budget == 0 {
        return Err(Error::PrecisionExhausted);
    }
    let next = SurfaceState {
        lattice: space.plane_neighbor(plane)?.rescaled(-1),
        form_scale: state.form_scale + 1,
        twist: state.twist.clone(),
        precision_budget: state.precision_budget - 1,
    };
    if space.duality_defect(&next.lattice, &next.form())? != Some(0) {
        return Err(Error::AssertionFailure("(ℓ,ℓ)-step broke self-duality".into()));
    }
    Ok(next)
}

/// Image of `β` on `A[ℓ^k] ∩ A[ℓ]`, as a subspace of `Λ/ℓΛ` after scaling by ℓ.
/// `k = e - N₀ + 1`, so `ℓ^{1-k}βΛ ⊆ Λ`.
fn beta_image(space: &SymplecticSpace, state: &SurfaceState, beta: &AlgebraElement, e: u32, n0: u32) -> Result<Vec<Vec<u64>>> {
    let alg = space.algebra();
    let ring = space.ring();
    let ell = ring.ell();
    let shift = e - n0;
    let mut rows = Vec::new();
    for b in state.lattice.basis().columns() {
        let y = alg.mul(beta, &AlgebraElement::new(*b));
        let c = state
            .lattice
            .basis()
            .coords(&y.coords)
            .ok_or_else(|| Error::InvalidParams("β does not act on the lattice".into()))?;
        rows.push(c.iter().map(|&x| ring.div_ell_pow(x, shift) % ell).collect::<Vec<u64>>());
    }
    fp::rref(ell, &mut rows);
    Ok(rows)
}

/// Planes meeting `β(A[ℓ^{e-N₀+1}])`, in enumeration order.
pub fn algorithm1_candidates(
    space: &SymplecticSpace,
    state: &SurfaceState,
    beta: &AlgebraElement,
    e: u32,
) -> Result<Vec<SubspaceModEll>> {
    let n0 = obstruction_n0(space, state, beta, e)?;
    let img = beta_image(space, state, beta, e, n0)?;
    let ell = space.ell();
    let planes = space.enumerate_isotropic_planes_with(&state.lattice, &state.form())?;
    Ok(planes
        .into_iter()
        .filter(|p| {
            let mut all: Vec<Vec<u64>> = p.generators.clone();
            all.extend(img.iter().cloned());
            fp::rank(ell, &all) < 2 + img.len()
        })
        .collect())
}

fn record(space: &SymplecticSpace, state: &SurfaceState, step: StepKind, plane: Vec<Vec<u64>>, n0: u32, f: u32) -> Result<PathStep> {
    let nl = if n0 == 0 {
        (0..space.algebra().primes().len()).map(|i| obstruction_nl(space, state, i, f)).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(PathStep { step, plane, n0, nl })
}

/// Surfacing: first-improvement descent of `N₀` over the filtered planes,
/// falling back to every plane (with a warning) if the filter leaves none.
pub fn surface_to_max_rm(
    space: &SymplecticSpace,
    state: &SurfaceState,
    beta: &AlgebraElement,
    e: u32,
) -> Result<(SurfaceState, Vec<PathStep>)> {
    let f = default_exponent(space);
    let mut cur = state.clone();
    let mut path = Vec::new();
    loop {
        let n0 = obstruction_n0(space, &cur, beta, e)?;
        if n0 == 0 {
            return Ok((cur, path));
        }
        let mut found = None;
        for p in algorithm1_candidates(space, &cur, beta, e)? {
            let next = step_ll(space, &cur, &p)?;
            if obstruction_n0(space, &next, beta, e)? < n0 {
                found = Some((next, p));
                break;
            }
        }
        if found.is_none() {
            log::warn!("plane filter excluded every improving plane at level {n0}; scanning all planes");
            for p in space.enumerate_isotropic_planes_with(&cur.lattice, &cur.form())? {
                let next = step_ll(space, &cur, &p)?;
                if obstruction_n0(space, &next, beta, e)? < n0 {
                    found = Some((next, p));
                    break;
                }
            }
        }
        let (next, p) = found.ok_or(Error::NoDecreasingNeighbor)?;
        let n1 = obstruction_n0(space, &next, beta, e)?;
        path.push(record(space, &next, StepKind::Ll, p.generators, n1, f)?);
        cur = next;
    }
}

/// RM-preserving (ℓ,ℓ)-steps, each paired with the new conductor exponents.
fn rm_preserving_steps(space: &SymplecticSpace, state: &SurfaceState, f: u32) -> Result<Vec<(SurfaceState, SubspaceModEll, Vec<u32>)>> {
    let n = space.algebra().primes().len();
    let mut out = Vec::new();
    for p in space.enumerate_isotropic_planes_with(&state.lattice, &state.form())? {
        let next = step_ll(space, state, &p)?;
        if space.real_level(&next.lattice)? != 0 {
            continue;
        }
        let nl = (0..n).map(|i| obstruction_nl(space, &next, i, f)).collect::<Result<Vec<u32>>>()?;
        out.push((next, p, nl));
    }
    Ok(out)
}

fn take_step(
    space: &SymplecticSpace,
    state: &SurfaceState,
    f: u32,
    want: impl Fn(&[u32]) -> bool,
    path: &mut Vec<PathStep>,
) -> Result<Option<SurfaceState>> {
    for (next, p, nl) in rm_preserving_steps(space, state, f)? {
        if want(&nl) {
            path.push(PathStep { step: StepKind::Ll, plane: p.generators, n0: 0, nl });
            return Ok(Some(next));
        }
    }
    Ok(None)
}

fn exponents(space: &SymplecticSpace, state: &SurfaceState, f: u32) -> Result<Vec<u32>> {
    (0..space.algebra().primes().len()).map(|i| obstruction_nl(space, state, i, f)).collect()
}

/// Split real case: balance the two exponents, lower both together, then try
/// the final unbalanced step, moving it to the other prime if needed.
pub fn navigate_split(space: &SymplecticSpace, state: &SurfaceState, f: u32) -> Result<(SurfaceState, Vec<PathStep>)> {
    if space.algebra().symbol().real_split != Split::Split {
        return Err(Error::UnsupportedConfig("navigate_split needs ℓ split in the real field".into()));
    }
    if space.real_level(&state.lattice)? > 0 {
        return Err(Error::MaxRmRequired);
    }
    let mut cur = state.clone();
    let mut path = Vec::new();
    let mut swapped_once = false;
    loop {
        let n = exponents(space, &cur, f)?;
        let (hi, lo) = if n[0] >= n[1] { (0, 1) } else { (1, 0) };
        let target: Vec<u32> = if n[hi] - n[lo] > 1 {
            let mut t = n.clone();
            t[hi] -= 1;
            t[lo] += 1;
            t
        } else if n[lo] > 0 {
            vec![n[0] - 1, n[1] - 1]
        } else if n[hi] == 1 {
            vec![0, 0]
        } else {
            return Ok((cur, path));
        };
        match take_step(space, &cur, f, |nl| nl == target.as_slice(), &mut path)? {
            Some(next) => cur = next,
            None if target == [0, 0] && n[hi] == 1 && n[lo] == 0 => {
                // the last step needs a horizontal step at the other prime; move
                // the conductor over to where one exists, once
                let swapped = vec![n[1], n[0]];
                if swapped_once {
                    return Ok((cur, path));
                }
                swapped_once = true;
                match take_step(space, &cur, f, |nl| nl == swapped.as_slice(), &mut path)? {
                    Some(next) => cur = next,
                    None => return Ok((cur, path)),
                }
            }
            None => {
                return Err(Error::AssertionFailure(format!("no (ℓ,ℓ)-step from {n:?} to {target:?}")));
            }
        }
    }
}

/// Inert or ramified real case: lower the single exponent while some step does.
fn navigate_single(space: &SymplecticSpace, state: &SurfaceState, f: u32) -> Result<(SurfaceState, Vec<PathStep>)> {
    let mut cur = state.clone();
    let mut path = Vec::new();
    loop {
        let n = exponents(space, &cur, f)?[0];
        if n == 0 {
            return Ok((cur, path));
        }
        match take_step(space, &cur, f, |nl| nl[0] < n, &mut path)? {
            Some(next) => cur = next,
            None => return Ok((cur, path)),
        }
    }
}

/// Parity of `N(𝔣 ∩ 𝔒₀)` for the conductor after surfacing by RM-predecessors.
pub fn parity(space: &SymplecticSpace, state: &SurfaceState) -> Result<u8> {
    let mut l = state.lattice.clone();
    while space.real_level(&l)? > 0 {
        l = space.rm_predecessor(&l)?;
    }
    let cond = space.descriptor(&l)?.conductor.ok_or(Error::MaxRmRequired)?;
    let s: u32 = space
        .algebra()
        .primes()
        .iter()
        .zip(cond.exponents.iter())
        .map(|(p, &a)| p.residue_degree * a)
        .sum();
    Ok((s % 2) as u8)
}

fn unit_exps(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// The full pipeline: surface, navigate, and classify what was reached.
pub fn going_up(space: &SymplecticSpace, state: &SurfaceState, opts: &GoingUpOptions) -> Result<ReachabilityReport> {
    let alg = space.algebra();
    let n = alg.primes().len();
    let (beta, e) = match &opts.beta {
        Some(b) => *b,
        None => default_beta(space)?,
    };
    let f = gamma_exponent(space, opts);
    let (surfaced, mut path) = surface_to_max_rm(space, state, &beta, e)?;
    let (mut cur, more) = match alg.symbol().real_split {
        Split::Split => navigate_split(space, &surfaced, f)?,
        _ => navigate_single(space, &surfaced, f)?,
    };
    path.extend(more);

    let exps = exponents(space, &cur, f)?;
    if exps.iter().all(|&x| x == 0) {
        return Ok(ReachabilityReport {
            reachable_max: true,
            largest_orders: vec![OrderDescriptor::maximal(n)],
            exceptional: None,
            path,
            final_state: cur,
        });
    }
    let symbol = alg.symbol();
    let case = match symbol.real_split {
        Split::Split if symbol.upper_split.iter().all(|&s| s == Split::Inert) => ExceptionalCase::SplitBothInert,
        Split::Ramified if symbol.upper_split[0] == Split::Inert => ExceptionalCase::RamifiedInert,
        _ => {
            return Err(Error::AssertionFailure(format!("stuck at conductor {exps:?} outside the exceptional cases")));
        }
    };
    if exps.iter().sum::<u32>() != 1 {
        return Err(Error::AssertionFailure(format!("stuck at conductor {exps:?}, expected a single prime")));
    }
    let largest: Vec<OrderDescriptor> = (0..n)
        .map(|i| OrderDescriptor::with_conductor(RealIdeal::new(unit_exps(n, i))))
        .collect();

    if opts.allow_cyclic && opts.l_principal_narrow {
        let i = exps.iter().position(|&x| x == 1).unwrap_or(0);
        let up = space.l_predecessor(&cur.lattice, i)?;
        let mut twist = cur.twist.clone();
        twist[i] -= 1;
        let next = SurfaceState { lattice: up, form_scale: cur.form_scale, twist, precision_budget: cur.precision_budget };
        next.check(space).map_err(|_| Error::AssertionFailure("cyclic step broke self-duality".into()))?;
        cur = next;
        let nl = exponents(space, &cur, f)?;
        if nl.iter().any(|&x| x != 0) {
            return Err(Error::AssertionFailure("cyclic step did not reach the maximal order".into()));
        }
        path.push(PathStep { step: StepKind::Cyclic, plane: Vec::new(), n0: 0, nl });
        return Ok(ReachabilityReport {
            reachable_max: true,
            largest_orders: vec![OrderDescriptor::maximal(n)],
            exceptional: None,
            path,
            final_state: cur,
        });
    }
    Ok(ReachabilityReport { reachable_max: false, largest_orders: largest, exceptional: Some(case), path, final_state: cur })
}

/// One 𝔩-descending step; `choice` indexes the descending neighbors.
pub fn descend_l(space: &SymplecticSpace, state: &SurfaceState, i: usize, choice: usize) -> Result<SurfaceState> {
    let down: Vec<_> = space
        .classify_l_neighbors(&state.lattice, i)?
        .into_iter()
        .filter(|c| c.kind == NeighborKind::LDescending)
        .collect();
    let pick = &down[choice % down.len()];
    let mut twist = state.twist.clone();
    twist[i] -= 1;
    let next = SurfaceState {
        lattice: pick.neighbor.clone(),
        form_scale: state.form_scale,
        twist,
        precision_budget: state.precision_budget,
    };
    next.check(space)?;
    Ok(next)
}

/// One RM-descending (ℓ,ℓ)-step; `choice` indexes the descending planes.
pub fn descend_rm(space: &SymplecticSpace, state: &SurfaceState, choice: usize) -> Result<SurfaceState> {
    let level = space.real_level(&state.lattice)?;
    let mut down = Vec::new();
    for p in space.enumerate_isotropic_planes_with(&state.lattice, &state.form())? {
        let next = step_ll(space, state, &p)?;
        if space.real_level(&next.lattice)? > level {
            down.push(next);
        }
    }
    if down.is_empty() {
        return Err(Error::AssertionFailure("no RM-descending plane".into()));
    }
    let k = choice % down.len();
    Ok(down.swap_remove(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{LocalCmAlgebra, SplittingSymbol};

    fn space(real: Split, up: Vec<Split>) -> SymplecticSpace {
        let s = SplittingSymbol::new(real, up).unwrap();
        SymplecticSpace::new(LocalCmAlgebra::build(2, &s, 32).unwrap())
    }

    #[test]
    fn rm_descent_and_surfacing() {
        let sp = space(Split::Inert, vec![Split::Split]);
        let mut st = SurfaceState::standard(&sp).unwrap();
        let (beta, e) = default_beta(&sp).unwrap();
        assert_eq!(obstruction_n0(&sp, &st, &beta, e).unwrap(), 0);
        for k in 1..=3 {
            st = descend_rm(&sp, &st, k).unwrap();
            assert_eq!(obstruction_n0(&sp, &st, &beta, e).unwrap(), k as u32);
        }
        let (top, path) = surface_to_max_rm(&sp, &st, &beta, e).unwrap();
        assert_eq!(path.len(), 3);
        assert_eq!(sp.real_level(&top.lattice).unwrap(), 0);
    }

    #[test]
    fn split_descent_changes_one_exponent() {
        let sp = space(Split::Split, vec![Split::Split, Split::Inert]);
        let st = SurfaceState::standard(&sp).unwrap();
        let f = default_exponent(&sp);
        let d = descend_l(&sp, &st, 0, 0).unwrap();
        assert_eq!(exponents(&sp, &d, f).unwrap(), vec![1, 0]);
    }

    #[test]
    fn parities() {
        let sp = space(Split::Ramified, vec![Split::Inert]);
        let st = SurfaceState::standard(&sp).unwrap();
        let d = descend_l(&sp, &st, 0, 0).unwrap();
        assert_eq!(parity(&sp, &d).unwrap(), 1);
        let sp = space(Split::Split, vec![Split::Split, Split::Split]);
        let st = SurfaceState::standard(&sp).unwrap();
        let d = descend_l(&sp, &descend_l(&sp, &st, 0, 0).unwrap(), 1, 0).unwrap();
        assert_eq!(parity(&sp, &d).unwrap(), 0);
    }

    #[test]
    fn ramified_inert_is_exceptional() {
        let sp = space(Split::Ramified, vec![Split::Inert]);
        let st = SurfaceState::standard(&sp).unwrap();
        let d = descend_l(&sp, &st, 0, 0).unwrap();
        let r = going_up(&sp, &d, &GoingUpOptions::default()).unwrap();
        assert!(!r.reachable_max);
        assert_eq!(r.exceptional, Some(ExceptionalCase::RamifiedInert));
        let opts = GoingUpOptions { allow_cyclic: true, ..GoingUpOptions::default() };
        let r = going_up(&sp, &d, &opts).unwrap();
        assert!(r.reachable_max);
        assert_eq!(r.path.last().unwrap().step, StepKind::Cyclic);
    }

    #[test]
    fn rejects_non_isotropic_plane() {
        let sp = space(Split::Inert, vec![Split::Inert]);
        let st = SurfaceState::standard(&sp).unwrap();
        let p = SubspaceModEll { lattice: st.lattice.clone(), generators: vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]], dim: 2 };
        let f = sp.reduced_form(&st.lattice, &st.form()).unwrap();
        let iso = crate::lattice::bilinear(2, &f, &p.generators[0], &p.generators[1]) == 0;
        assert_eq!(step_ll(&sp, &st, &p).is_ok(), iso);
    }
}
