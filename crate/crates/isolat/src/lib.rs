//! Local lattice models for isogeny graphs of ordinary abelian surfaces.
//!
//! Everything here works over `Z/ℓ^N` as a truncation of the ℓ-adic integers.
//! The quartic CM algebra `K_ℓ` is modeled with explicit structure constants,
//! abelian surfaces become lattices in `K_ℓ` carrying a †-compatible
//! symplectic form, and isogenies become neighbor relations between lattices.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and anything touching the filesystem live in the companion `isolat-cli`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod basis;
pub mod error;
pub mod fp;
pub mod goingup;
pub mod graph;
pub mod lattice;
pub mod oracle;
pub mod residue;

pub use algebra::{
    AlgebraElement, LocalCmAlgebra, OrderDescriptor, OrderLattice, RealIdeal, Split,
    SplittingSymbol,
};
pub use error::{Error, Result};
pub use lattice::{NeighborClassification, NeighborKind, SubspaceModEll, SymplecticLattice, SymplecticSpace};
pub use residue::{ResidueInt, ResidueMatrix, ResidueRing, Valuation};
