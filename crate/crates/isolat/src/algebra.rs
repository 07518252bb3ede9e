//! The local quartic CM algebra `K_ℓ`, its involution and its orders.
//!
//! Coordinates are taken on the basis `1, ω, η, ωη` where `ω² = p + qω`
//! generates the real maximal order `𝔒₀ = Z_ℓ[ω]` and `η² = a + bη` with
//! `a, b ∈ 𝔒₀` generates `𝔒_K = 𝔒₀[η]`. The involution fixes `𝔒₀` and sends
//! `η` to `b - η`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::basis::{LatticeBasis, Vec4};
use crate::error::{Error, Result};
use crate::residue::{ResidueMatrix, ResidueRing};

/// Decomposition type of a prime in a quadratic extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Split {
    Inert,
    Split,
    Ramified,
}

impl Split {
    /// The Kronecker-style symbol: -1, 1 or 0.
    pub fn kronecker(self) -> i32 {
        match self {
            Split::Inert => -1,
            Split::Split => 1,
            Split::Ramified => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Split::Inert => "inert",
            Split::Split => "split",
            Split::Ramified => "ramified",
        }
    }

    pub fn parse(s: &str) -> Result<Split> {
        match s {
            "inert" => Ok(Split::Inert),
            "split" => Ok(Split::Split),
            "ramified" => Ok(Split::Ramified),
            _ => Err(Error::InvalidSymbol(format!("unknown splitting type {s:?}"))),
        }
    }

    pub const ALL: [Split; 3] = [Split::Inert, Split::Split, Split::Ramified];
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How ℓ decomposes in `K₀`, and how each prime of `K₀` above ℓ decomposes in `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingSymbol {
    pub real_split: Split,
    pub upper_split: Vec<Split>,
}

impl SplittingSymbol {
    pub fn new(real_split: Split, upper_split: Vec<Split>) -> Result<Self> {
        let want = if real_split == Split::Split { 2 } else { 1 };
        if upper_split.len() != want {
            return Err(Error::InvalidSymbol(format!(
                "{real_split} real prime needs {want} upper entries, got {}",
                upper_split.len()
            )));
        }
        Ok(SplittingSymbol { real_split, upper_split })
    }

    /// All symbols, optionally dropping those with a ramified upper prime.
    pub fn all(include_upper_ramified: bool) -> Vec<SplittingSymbol> {
        let mut out = Vec::new();
        for real in Split::ALL {
            let n = if real == Split::Split { 2 } else { 1 };
            let ups: Vec<Vec<Split>> = if n == 1 {
                Split::ALL.iter().map(|&s| vec![s]).collect()
            } else {
                Split::ALL.iter().flat_map(|&s| Split::ALL.iter().map(move |&t| vec![s, t])).collect()
            };
            for up in ups {
                if !include_upper_ramified && up.contains(&Split::Ramified) {
                    continue;
                }
                out.push(SplittingSymbol { real_split: real, upper_split: up });
            }
        }
        out
    }

    /// Symbols buildable at this prime.
    pub fn supported(ell: u64) -> Vec<SplittingSymbol> {
        SplittingSymbol::all(ell != 2)
    }
}

impl fmt::Display for SplittingSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/", self.real_split)?;
        for (i, s) in self.upper_split.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    pub coords: Vec4,
}

impl AlgebraElement {
    pub fn new(coords: Vec4) -> Self {
        AlgebraElement { coords }
    }
}

/// Ideal of `𝔒₀` supported above ℓ, as exponents of the real primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealIdeal {
    pub exponents: Vec<u32>,
}

impl RealIdeal {
    pub fn new(exponents: Vec<u32>) -> Self {
        RealIdeal { exponents }
    }

    pub fn unit(primes: usize) -> Self {
        RealIdeal { exponents: vec![0; primes] }
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

/// Classification of an order: real level, and conductor when the level is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderDescriptor {
    pub real_level: u32,
    pub conductor: Option<RealIdeal>,
}

impl OrderDescriptor {
    pub fn maximal(primes: usize) -> Self {
        OrderDescriptor { real_level: 0, conductor: Some(RealIdeal::unit(primes)) }
    }

    pub fn with_conductor(f: RealIdeal) -> Self {
        OrderDescriptor { real_level: 0, conductor: Some(f) }
    }

    pub fn level(n: u32) -> Self {
        OrderDescriptor { real_level: n, conductor: None }
    }
}

impl fmt::Display for OrderDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.conductor {
            Some(c) if self.real_level == 0 => write!(f, "n=0 f={:?}", c.exponents),
            _ => write!(f, "n={}", self.real_level),
        }
    }
}

/// An order of `K_ℓ`, held as a lattice in `𝔒_K = Z_ℓ^4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderLattice {
    basis: LatticeBasis,
}

impl OrderLattice {
    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ResidueMatrix {
        self.basis.matrix()
    }

    /// Wraps a lattice after checking the order axioms.
    pub fn from_basis(alg: &LocalCmAlgebra, basis: LatticeBasis) -> Result<Self> {
        if !alg.is_order(&basis) {
            return Err(Error::NotAnOrder);
        }
        Ok(OrderLattice { basis })
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.basis.contains(&x.coords)
    }
}

/// Data attached to one prime `𝔩` of `𝔒₀` above ℓ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPrime {
    /// Generator of `𝔩` (the local real order is a PID).
    pub uniformizer: AlgebraElement,
    pub residue_degree: u32,
    /// Exponent of `𝔩` in `ℓ𝔒₀`.
    pub ramification: u32,
    pub upper: Split,
    /// Each prime of `𝔒_K` above `𝔩`, as `𝔒_K`-ideal generators.
    pub upper_primes: Vec<Vec<AlgebraElement>>,
}

impl RealPrime {
    pub fn norm_exp(&self) -> u32 {
        self.residue_degree
    }
}

#[derive(Clone, Debug)]
pub struct LocalCmAlgebra {
    ring: ResidueRing,
    symbol: SplittingSymbol,
    p: u64,
    q: u64,
    a: [u64; 2],
    b: [u64; 2],
    primes: Vec<RealPrime>,
    frobenius: Option<AlgebraElement>,
    gram: ResidueMatrix,
    dagger: ResidueMatrix,
    /// `table[i][j] = e_i e_j`.
    table: [[Vec4; 4]; 4],
}

impl LocalCmAlgebra {
    /// Builds the explicit model for a splitting symbol and checks its structure.
    pub fn build(ell: u64, symbol: &SplittingSymbol, precision: u32) -> Result<Self> {
        let ring = ResidueRing::new(ell, precision)?;
        let symbol = SplittingSymbol::new(symbol.real_split, symbol.upper_split.clone())?;
        if ell == 2 && symbol.upper_split.contains(&Split::Ramified) {
            return Err(Error::UnsupportedConfig(
                "ell = 2 with a prime ramified in K is not supported".into(),
            ));
        }
        let l = ell as i64;
        let (p, q) = match symbol.real_split {
            Split::Inert if ell == 2 => (ring.from_i64(-1), ring.from_i64(-1)),
            Split::Inert => (least_nonresidue(ell), 0),
            Split::Split => (0, 1),
            Split::Ramified => (ell, 0),
        };
        let mut alg = LocalCmAlgebra {
            ring,
            symbol: symbol.clone(),
            p,
            q,
            a: [0; 2],
            b: [0; 2],
            primes: Vec::new(),
            frobenius: None,
            gram: ResidueMatrix::zeros(ring, 4, 4),
            dagger: ResidueMatrix::zeros(ring, 4, 4),
            table: [[[0; 4]; 4]; 4],
        };
        let (a, b) = match symbol.real_split {
            Split::Split => {
                let (a1, b1) = scalar_upper_model(ell, symbol.upper_split[0]);
                let (a2, b2) = scalar_upper_model(ell, symbol.upper_split[1]);
                // factor 1 is where ω = 1
                (
                    [ring.from_i64(a2), ring.from_i64(a1 - a2)],
                    [ring.from_i64(b2), ring.from_i64(b1 - b2)],
                )
            }
            real => {
                let unif = if real == Split::Ramified { [0, 1] } else { [ell, 0] };
                match symbol.upper_split[0] {
                    Split::Split => ([0, 0], [1, 0]),
                    Split::Ramified => (unif, [0, 0]),
                    Split::Inert => {
                        let f = if real == Split::Inert { 2 } else { 1 };
                        alg.inert_upper_model(f)
                    }
                }
            }
        };
        alg.a = a;
        alg.b = b;
        for i in 0..4 {
            for j in 0..4 {
                alg.table[i][j] = alg.mul_raw(&unit_vec(i), &unit_vec(j));
            }
        }
        let one = 1u64;
        let primes = match symbol.real_split {
            Split::Inert => vec![(AlgebraElement::new([ell, 0, 0, 0]), 2, 1)],
            Split::Ramified => vec![(AlgebraElement::new([0, 1, 0, 0]), 1, 2)],
            Split::Split => vec![
                (AlgebraElement::new([one, ring.from_i64(l - 1), 0, 0]), 1, 1),
                (AlgebraElement::new([ell, ring.from_i64(1 - l), 0, 0]), 1, 1),
            ],
        };
        let eta = AlgebraElement::new([0, 0, 1, 0]);
        let one_minus_eta = AlgebraElement::new([1, 0, ring.from_i64(-1), 0]);
        alg.primes = primes
            .into_iter()
            .zip(symbol.upper_split.iter())
            .map(|((u, f, e), &up)| {
                let upper_primes = match up {
                    Split::Inert => vec![vec![u]],
                    Split::Split => vec![vec![u, one_minus_eta], vec![u, eta]],
                    Split::Ramified => vec![vec![u, eta]],
                };
                RealPrime { uniformizer: u, residue_degree: f, ramification: e, upper: up, upper_primes }
            })
            .collect();
        let mut dag = ResidueMatrix::zeros(ring, 4, 4);
        let mut gram = ResidueMatrix::zeros(ring, 4, 4);
        for j in 0..4 {
            let d = alg.conjugate(&AlgebraElement::new(unit_vec(j)));
            for i in 0..4 {
                dag.set(i, j, d.coords[i]);
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                gram.set(i, j, alg.pair(&unit_vec(i), &unit_vec(j)));
            }
        }
        alg.dagger = dag;
        alg.gram = gram;
        alg.check_structure()?;
        Ok(alg)
    }

    /// Attaches a Frobenius element given in model coordinates.
    pub fn with_frobenius(mut self, pi: [i64; 4]) -> Self {
        self.frobenius = Some(self.element_i64(pi));
        self
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn ell(&self) -> u64 {
        self.ring.ell()
    }

    pub fn symbol(&self) -> &SplittingSymbol {
        &self.symbol
    }

    pub fn frobenius(&self) -> Option<&AlgebraElement> {
        self.frobenius.as_ref()
    }

    pub fn primes(&self) -> &[RealPrime] {
        &self.primes
    }

    pub fn prime(&self, i: usize) -> &RealPrime {
        &self.primes[i]
    }

    /// Largest ramification index of a real prime (the `E` with `ℓ ∈ 𝔩^E` for all `𝔩`).
    pub fn real_ramification(&self) -> u32 {
        self.primes.iter().map(|p| p.ramification).max().unwrap_or(1)
    }

    /// `(p, q)` with `ω² = p + qω`.
    pub fn real_model(&self) -> (u64, u64) {
        (self.p, self.q)
    }

    /// `(a, b)` with `η² = a + bη`, each in `𝔒₀` coordinates.
    pub fn upper_model(&self) -> ([u64; 2], [u64; 2]) {
        (self.a, self.b)
    }

    pub fn gram(&self) -> &ResidueMatrix {
        &self.gram
    }

    pub fn dagger_matrix(&self) -> &ResidueMatrix {
        &self.dagger
    }

    /// The 4×2 matrix embedding `𝔒₀ = Z_ℓ + Z_ℓω`.
    pub fn real_embed(&self) -> ResidueMatrix {
        ResidueMatrix::from_columns(self.ring, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]])
    }

    pub fn element_i64(&self, c: [i64; 4]) -> AlgebraElement {
        AlgebraElement::new(c.map(|x| self.ring.from_i64(x)))
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::new([1, 0, 0, 0])
    }

    pub fn omega(&self) -> AlgebraElement {
        AlgebraElement::new([0, 1, 0, 0])
    }

    pub fn eta(&self) -> AlgebraElement {
        AlgebraElement::new([0, 0, 1, 0])
    }

    pub fn scalar(&self, s: u64) -> AlgebraElement {
        AlgebraElement::new([self.ring.reduce(s), 0, 0, 0])
    }

    fn o0_mul(&self, x: [u64; 2], y: [u64; 2]) -> [u64; 2] {
        let r = &self.ring;
        let x1y1 = r.mul(x[1], y[1]);
        [
            r.add(r.mul(x[0], y[0]), r.mul(self.p, x1y1)),
            r.add(r.add(r.mul(x[0], y[1]), r.mul(x[1], y[0])), r.mul(self.q, x1y1)),
        ]
    }

    fn o0_add(&self, x: [u64; 2], y: [u64; 2]) -> [u64; 2] {
        [self.ring.add(x[0], y[0]), self.ring.add(x[1], y[1])]
    }

    fn mul_raw(&self, x: &Vec4, y: &Vec4) -> Vec4 {
        let (a0, b0) = ([x[0], x[1]], [x[2], x[3]]);
        let (c0, d0) = ([y[0], y[1]], [y[2], y[3]]);
        let bd = self.o0_mul(b0, d0);
        let lo = self.o0_add(self.o0_mul(a0, c0), self.o0_mul(self.a, bd));
        let hi = self.o0_add(self.o0_add(self.o0_mul(a0, d0), self.o0_mul(b0, c0)), self.o0_mul(self.b, bd));
        [lo[0], lo[1], hi[0], hi[1]]
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self.mul_raw(&x.coords, &y.coords))
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let r = &self.ring;
        AlgebraElement::new([0, 1, 2, 3].map(|i| r.add(x.coords[i], y.coords[i])))
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let r = &self.ring;
        AlgebraElement::new([0, 1, 2, 3].map(|i| r.sub(x.coords[i], y.coords[i])))
    }

    pub fn pow(&self, x: &AlgebraElement, e: u32) -> AlgebraElement {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, x);
        }
        out
    }

    /// The involution `†`.
    pub fn conjugate(&self, x: &AlgebraElement) -> AlgebraElement {
        let r = &self.ring;
        let bb = self.o0_mul(self.b, [x.coords[2], x.coords[3]]);
        AlgebraElement::new([
            r.add(x.coords[0], bb[0]),
            r.add(x.coords[1], bb[1]),
            r.neg(x.coords[2]),
            r.neg(x.coords[3]),
        ])
    }

    /// `⟨u, v⟩`: the `ωη`-coordinate of `u·v†`.
    pub fn pair(&self, u: &Vec4, v: &Vec4) -> u64 {
        let vd = self.conjugate(&AlgebraElement::new(*v));
        self.mul_raw(u, &vd.coords)[3]
    }

    pub fn is_real(&self, x: &AlgebraElement) -> bool {
        x.coords[2] == 0 && x.coords[3] == 0
    }

    /// Multiplication-by-`x` matrix; column `j` is `x·e_j`.
    pub fn mul_matrix(&self, x: &AlgebraElement) -> ResidueMatrix {
        let cols: Vec<Vec<u64>> = (0..4).map(|j| self.mul_raw(&x.coords, &unit_vec(j)).to_vec()).collect();
        ResidueMatrix::from_columns(self.ring, 4, &cols)
    }

    /// `x·L`.
    pub fn mul_lattice(&self, x: &AlgebraElement, l: &LatticeBasis) -> Result<LatticeBasis> {
        let gens: Vec<Vec4> = l.columns().iter().map(|c| self.mul_raw(&x.coords, c)).collect();
        LatticeBasis::span(self.ring, &gens)
    }

    /// Product of the real uniformizers raised to the ideal's exponents.
    pub fn ideal_generator(&self, f: &RealIdeal) -> AlgebraElement {
        let mut g = self.one();
        for (pr, &e) in self.primes.iter().zip(f.exponents.iter()) {
            g = self.mul(&g, &self.pow(&pr.uniformizer, e));
        }
        g
    }

    fn check_structure(&self) -> Result<()> {
        let fail = |m: String| Err(Error::AssertionFailure(m));
        for i in 0..4 {
            if self.table[0][i] != unit_vec(i) {
                return fail(format!("1 is not a unit on e{}", i + 1));
            }
            for j in 0..4 {
                if self.table[i][j] != self.table[j][i] {
                    return fail(format!("e{} e{} do not commute", i + 1, j + 1));
                }
                for k in 0..4 {
                    let lhs = self.mul_raw(&self.table[i][j], &unit_vec(k));
                    let rhs = self.mul_raw(&unit_vec(i), &self.table[j][k]);
                    if lhs != rhs {
                        return fail(format!("associativity fails on e{} e{} e{}", i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        for i in 0..4 {
            let ei = AlgebraElement::new(unit_vec(i));
            if self.conjugate(&self.conjugate(&ei)) != ei {
                return fail("dagger is not an involution".into());
            }
            for j in 0..4 {
                let ej = AlgebraElement::new(unit_vec(j));
                let lhs = self.conjugate(&self.mul(&ei, &ej));
                let rhs = self.mul(&self.conjugate(&ei), &self.conjugate(&ej));
                if lhs != rhs {
                    return fail("dagger is not multiplicative".into());
                }
            }
        }
        if self.conjugate(&self.omega()) != self.omega() {
            return fail("dagger moves the real subalgebra".into());
        }
        // the product of uniformizers with multiplicity must generate ℓ𝔒₀
        let mut prod = self.one();
        for pr in &self.primes {
            prod = self.mul(&prod, &self.pow(&pr.uniformizer, pr.ramification));
        }
        if prod != self.scalar(self.ell()) {
            return fail("uniformizers do not multiply to ℓ".into());
        }
        let g = &self.gram;
        for i in 0..4 {
            for j in 0..4 {
                if self.ring.add(g.get(i, j), g.get(j, i)) != 0 {
                    return fail("form is not antisymmetric".into());
                }
            }
        }
        if g.smith_valuations().iter().any(|&v| v != 0) {
            return fail("form is not unimodular".into());
        }
        for k in 0..4 {
            let ek = AlgebraElement::new(unit_vec(k));
            let ekd = self.conjugate(&ek);
            for i in 0..4 {
                for j in 0..4 {
                    let lhs = self.pair(&self.table[k][i], &unit_vec(j));
                    let rhs = self.pair(&unit_vec(i), &self.mul_raw(&ekd.coords, &unit_vec(j)));
                    if lhs != rhs {
                        return fail("form is not compatible with dagger".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Upper inert model over a real residue field of degree `f`:
    /// `η² = d` for odd ℓ, `η² = η + d` for ℓ = 2, first `d` without a root.
    fn inert_upper_model(&self, f: u32) -> ([u64; 2], [u64; 2]) {
        let l = self.ell();
        let ys = if f == 2 { l } else { 1 };
        let b = if l == 2 { [1, 0] } else { [0, 0] };
        for y in 0..ys {
            for x in 0..l {
                if x == 0 && y == 0 {
                    continue;
                }
                let d = [x, y];
                let has_root = (0..ys).any(|ry| {
                    (0..l).any(|rx| {
                        let r = [rx, ry];
                        // r² - b r - d ≡ 0 mod 𝔩
                        let r2 = self.o0_mul(r, r);
                        let br = self.o0_mul(b, r);
                        let v = [
                            (r2[0] + 2 * l * l - br[0] % l - d[0]) % l,
                            (r2[1] + 2 * l * l - br[1] % l - d[1]) % l,
                        ];
                        let v = if f == 1 { [v[0], 0] } else { v };
                        v == [0, 0]
                    })
                });
                if !has_root {
                    return (d, b);
                }
            }
        }
        unreachable!("residue field has a quadratic nonresidue")
    }

    /// Whether the lattice contains 1 and is closed under multiplication.
    pub fn is_order(&self, l: &LatticeBasis) -> bool {
        if !l.contains(&[1, 0, 0, 0]) {
            return false;
        }
        let cols = l.columns();
        for i in 0..4 {
            for j in i..4 {
                if !l.contains(&self.mul_raw(&cols[i], &cols[j])) {
                    return false;
                }
            }
        }
        true
    }

    pub fn maximal_order(&self) -> OrderLattice {
        OrderLattice { basis: LatticeBasis::standard(self.ring) }
    }

    /// `𝔒₀ + 𝔣𝔒_K`.
    pub fn order_from_conductor(&self, f: &RealIdeal) -> Result<OrderLattice> {
        if f.exponents.len() != self.primes.len() {
            return Err(Error::InvalidParams(format!(
                "conductor needs {} exponents",
                self.primes.len()
            )));
        }
        let bound = self.ring.precision().saturating_sub(crate::basis::PRECISION_GUARD + 1);
        if f.exponents.iter().any(|&e| e > bound) {
            return Err(Error::PrecisionExhausted);
        }
        let g = self.ideal_generator(f);
        let gens = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            self.mul_raw(&g.coords, &[0, 0, 1, 0]),
            self.mul_raw(&g.coords, &[0, 0, 0, 1]),
        ];
        Ok(OrderLattice { basis: LatticeBasis::span(self.ring, &gens)? })
    }

    /// Real level, and the conductor exponents when the level is 0.
    pub fn conductor_of_order(&self, o: &OrderLattice) -> Result<OrderDescriptor> {
        if !self.is_order(&o.basis) {
            return Err(Error::NotAnOrder);
        }
        let r = self.ring;
        let n = (0..=r.precision())
            .find(|&k| o.basis.contains(&[0, r.ell_pow(k), 0, 0]))
            .ok_or(Error::PrecisionExhausted)?;
        if n > 0 {
            return Ok(OrderDescriptor::level(n));
        }
        let big = o.basis.exponent() * self.real_ramification();
        let eta = self.eta();
        let mut exps = Vec::with_capacity(self.primes.len());
        for i in 0..self.primes.len() {
            let mut base = eta;
            for (j, pr) in self.primes.iter().enumerate() {
                if j != i {
                    base = self.mul(&base, &self.pow(&pr.uniformizer, big));
                }
            }
            let u = &self.primes[i].uniformizer;
            let mut x = base;
            let mut found = None;
            for k in 0..=2 * r.precision() {
                if o.contains(&x) {
                    found = Some(k);
                    break;
                }
                x = self.mul(&x, u);
            }
            exps.push(found.ok_or(Error::PrecisionExhausted)?);
        }
        let f = RealIdeal::new(exps);
        if self.order_from_conductor(&f)? != *o {
            return Err(Error::AssertionFailure(format!(
                "order with maximal real multiplication differs from O0 + f O_K for f = {:?}",
                f.exponents
            )));
        }
        Ok(OrderDescriptor::with_conductor(f))
    }

    /// Whether `O† = O`. Cross-checked against `O ∩ K₀ = (O + O†) ∩ K₀`.
    pub fn dagger_stable(&self, o: &OrderLattice) -> Result<bool> {
        if !self.is_order(&o.basis) {
            return Err(Error::NotAnOrder);
        }
        let conj: Vec<Vec4> =
            o.basis.columns().iter().map(|c| self.conjugate(&AlgebraElement::new(*c)).coords).collect();
        let od = LatticeBasis::span(self.ring, &conj)?;
        let stable = od == o.basis;
        let both = o.basis.sum(&od)?;
        let criterion = real_part(&o.basis)? == real_part(&both)?;
        if stable != criterion {
            return Err(Error::AssertionFailure("dagger stability criterion disagrees".into()));
        }
        Ok(stable)
    }
}

/// `L ∩ (Z_ℓ + Z_ℓω)` as a canonical pair of vectors.
pub(crate) fn real_part(l: &LatticeBasis) -> Result<[Vec4; 2]> {
    let perm = |c: &Vec4| [c[2], c[3], c[0], c[1]];
    let gens: Vec<Vec4> = l.columns().iter().map(perm).collect();
    let b = LatticeBasis::span(l.ring(), &gens)?;
    let cols = b.columns();
    Ok([perm(&cols[2]), perm(&cols[3])])
}

fn unit_vec(i: usize) -> Vec4 {
    let mut v = [0; 4];
    v[i] = 1;
    v
}

pub(crate) fn least_nonresidue(l: u64) -> u64 {
    (2..l).find(|&c| (1..l).all(|x| x * x % l != c)).expect("odd prime has a nonresidue")
}

/// `(a, b)` with `η² = a + bη` over `Z_ℓ` realizing the splitting type.
fn scalar_upper_model(l: u64, s: Split) -> (i64, i64) {
    match s {
        Split::Split => (0, 1),
        Split::Ramified => (l as i64, 0),
        Split::Inert if l == 2 => (1, 1),
        Split::Inert => (least_nonresidue(l) as i64, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(real: Split, up: &[Split]) -> SplittingSymbol {
        SplittingSymbol::new(real, up.to_vec()).unwrap()
    }

    #[test]
    fn all_supported_symbols_build() {
        for l in [2u64, 3, 5] {
            for s in SplittingSymbol::supported(l) {
                let alg = LocalCmAlgebra::build(l, &s, 12);
                assert!(alg.is_ok(), "{l} {s}: {:?}", alg.err());
            }
        }
        assert_eq!(SplittingSymbol::supported(2).len(), 2 + 2 + 4);
        assert_eq!(SplittingSymbol::supported(3).len(), 3 + 3 + 9);
    }

    #[test]
    fn two_adic_upper_ramified_rejected() {
        let s = sym(Split::Inert, &[Split::Ramified]);
        assert!(matches!(LocalCmAlgebra::build(2, &s, 10), Err(Error::UnsupportedConfig(_))));
    }

    #[test]
    fn symbol_shape_checked() {
        assert!(matches!(SplittingSymbol::new(Split::Split, vec![Split::Inert]), Err(Error::InvalidSymbol(_))));
        assert!(SplittingSymbol::new(Split::Inert, vec![Split::Inert, Split::Inert]).is_err());
    }

    #[test]
    fn split_uniformizers_multiply_to_ell() {
        let alg = LocalCmAlgebra::build(2, &sym(Split::Split, &[Split::Inert, Split::Inert]), 10).unwrap();
        let u1 = alg.prime(0).uniformizer;
        let u2 = alg.prime(1).uniformizer;
        assert_eq!(alg.mul(&u1, &u2), alg.scalar(2));
    }

    #[test]
    fn inert_models() {
        let alg = LocalCmAlgebra::build(3, &sym(Split::Inert, &[Split::Inert]), 10).unwrap();
        assert_eq!(alg.real_model(), (2, 0));
        let alg = LocalCmAlgebra::build(2, &sym(Split::Inert, &[Split::Inert]), 10).unwrap();
        // η² = η + ω over F_4
        assert_eq!(alg.upper_model(), ([0, 1], [1, 0]));
        let alg = LocalCmAlgebra::build(5, &sym(Split::Ramified, &[Split::Inert]), 10).unwrap();
        assert_eq!(alg.upper_model(), ([2, 0], [0, 0]));
    }

    #[test]
    fn conjugation_basics() {
        let alg = LocalCmAlgebra::build(3, &sym(Split::Split, &[Split::Split, Split::Ramified]), 10).unwrap();
        assert_eq!(alg.conjugate(&alg.one()), alg.one());
        let x = alg.element_i64([4, -7, 11, 5]);
        assert_eq!(alg.conjugate(&alg.conjugate(&x)), x);
        assert!(alg.is_real(&alg.add(&x, &alg.conjugate(&x))));
    }

    #[test]
    fn conductor_round_trip_small() {
        for l in [2u64, 3] {
            for s in SplittingSymbol::supported(l) {
                let alg = LocalCmAlgebra::build(l, &s, 16).unwrap();
                let k = alg.primes().len();
                let max = if k == 2 { 9 } else { 4 };
                for code in 0..max {
                    let f = if k == 2 {
                        RealIdeal::new(vec![code % 3, code / 3])
                    } else {
                        RealIdeal::new(vec![code])
                    };
                    let o = alg.order_from_conductor(&f).unwrap();
                    assert!(alg.is_order(o.basis()));
                    assert_eq!(alg.conductor_of_order(&o).unwrap(), OrderDescriptor::with_conductor(f));
                    assert!(alg.dagger_stable(&o).unwrap());
                }
            }
        }
    }

    #[test]
    fn index_of_conductor_ell_order() {
        let alg = LocalCmAlgebra::build(2, &sym(Split::Inert, &[Split::Inert]), 12).unwrap();
        let o = alg.order_from_conductor(&RealIdeal::new(vec![1])).unwrap();
        // [O_K : O_f] = N(f) = 4 while [O_K : f O_K] = 16
        assert_eq!(o.basis().index_exp(), 2);
        let fo = alg.mul_lattice(&alg.scalar(2), &LatticeBasis::standard(alg.ring())).unwrap();
        assert_eq!(fo.index_exp(), 4);
        assert!(o.basis().contains_lattice(&fo));
    }

    #[test]
    fn non_max_rm_level() {
        let alg = LocalCmAlgebra::build(2, &sym(Split::Ramified, &[Split::Split]), 12).unwrap();
        let r = alg.ring();
        let b = LatticeBasis::span(r, &[[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]).unwrap();
        let o = OrderLattice::from_basis(&alg, b).unwrap();
        assert_eq!(alg.conductor_of_order(&o).unwrap(), OrderDescriptor::level(1));
    }

    #[test]
    fn asymmetric_order_is_not_stable() {
        let alg = LocalCmAlgebra::build(3, &sym(Split::Split, &[Split::Split, Split::Split]), 10).unwrap();
        let r = alg.ring();
        let b = LatticeBasis::span(r, &[[1, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        let o = OrderLattice::from_basis(&alg, b).unwrap();
        assert!(!alg.dagger_stable(&o).unwrap());
        assert!(alg.dagger_stable(&alg.maximal_order()).unwrap());
    }

    #[test]
    fn not_an_order() {
        let alg = LocalCmAlgebra::build(3, &sym(Split::Inert, &[Split::Split]), 10).unwrap();
        let b = LatticeBasis::standard(alg.ring()).scale(1).unwrap();
        assert_eq!(OrderLattice::from_basis(&alg, b).unwrap_err(), Error::NotAnOrder);
    }
}
