//! Exact certification that the SU(2)-orbit through [z₁³ + z₂³] in ℂP³ is a
//! Hamiltonian-stable minimal Lagrangian: its first Laplace eigenvalue is
//! computed exactly over Q(ζ₂₄) and compared with the Einstein constant
//! κ = c(n+1)/2 of the ambient Fubini–Study metric.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactnum`] — rationals, the field Q(ζ₂₄), exact linear algebra;
//! - [`su2rep`] — symmetric-power representations, Lie algebra actions,
//!   characters, Casimir eigenvalues;
//! - [`isotropy`] — the order-12 isotropy group, its tangent-space splitting,
//!   and fixed subspaces with a character-formula oracle;
//! - [`orbitgeo`] — fundamental fields, the sphere submersion, horizontal
//!   lifts, the induced metric, and the Laplacian decomposition;
//! - [`spectrum`] — per-representation eigenvalue lines, the certified
//!   minimization, and the stability verdict;
//! - [`pipeline`], [`report`], [`verify`], [`parse`] — configuration, the
//!   end-to-end run, deterministic text/JSON reports, and the reference
//!   verification suite behind the CLI.
//!
//! Every decision is made in exact arithmetic; floating point appears only in
//! report annotations.

pub mod exactnum;
pub mod isotropy;
pub mod orbitgeo;
pub mod parse;
pub mod pipeline;
pub mod report;
pub mod spectrum;
pub mod su2rep;
pub mod verify;
