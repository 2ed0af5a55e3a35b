//! Exact-arithmetic toolkit for electrical networks on surfaces.
//!
//! Everything algebraic here runs over arbitrary-precision rationals; floating
//! point appears only in root polishing, quadrature and the amoeba scan.
//! The main layers, bottom up:
//!
//! * [`exact`] — rationals, dense matrices (determinant / Schur complement /
//!   Pfaffian), sparse Laurent polynomials, univariate polynomial tools and
//!   numeric root finding.
//! * [`network`] — weighted graphs with ordered boundary nodes, rotation-system
//!   embeddings on the disk / annulus / torus / pants, flat connections, and a
//!   canonical JSON interchange format.
//! * [`laplacian`] — Laplacian assembly (plain, line-bundle, unitary, SL2),
//!   Dirichlet problems, response matrices, harmonic conjugates and transfer
//!   currents.
//! * [`combin`] — brute-force enumeration oracles (trees, groves, CRSFs,
//!   cycle-rooted groves), partition algebra and Wilson's sampler.
//! * [`medial`] — medial graphs, strands, stub involutions, minimality and the
//!   crossing partial order.
//! * [`transforms`] — the electrical transformations, response invariance,
//!   EIT reconstruction by peeling, central minors, determinant identities and
//!   the log-Jacobian.
//! * [`surfaces`] — characteristic polynomials, Newton polygons, homology
//!   decompositions, free energy, amoeba scans and quaternion determinants.

pub mod exact;
pub mod laplacian;
pub mod network;
pub mod par;
pub mod rng;

pub mod combin;
pub mod corpus;

pub mod medial;

pub mod transforms;

pub mod surfaces;

pub use exact::{rat, Rat};
