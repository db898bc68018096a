//! Quasi-exactly solvable (QES) spectral problems built from polynomial
//! master functions of degree ≤ 4.
//!
//! A master function `A(x)` together with the weight log-derivative datum
//! `F = (AW)'/W` defines the second-order operator
//!
//! ```text
//! L ψ = −A(x) ψ'' − F(x) ψ' + B(x) ψ
//! ```
//!
//! For the right `B` (degree ≤ 2, fixed by the invariant-subspace
//! conditions) `L` preserves `span{1, x, …, xⁿ}`, so n+1 eigenvalues are
//! algebraically computable: they are the roots of the critical polynomial
//! `P_{n+1}(E)` produced by a three/four-term recursion in the energy
//! variable (Bender–Dunne energy polynomials).
//!
//! The crate computes that algebraic sector with exact rational arithmetic
//! end to end and cross-checks it against independent oracles:
//!
//! * exact factorization `P_{n+1+N} = P_{n+1} · Q_N`,
//! * the characteristic polynomial of `L` restricted to the invariant
//!   subspace (Faddeev–LeVerrier),
//! * tabulated closed forms for the first energy polynomials,
//! * a finite-difference solve of the associated Schrödinger form
//!   `−d²/dt² + V(t)` obtained by the similarity transformation
//!   `ψ = A^{1/4} W^{1/2} φ`, `dx/dt = √A`.
//!
//! [`catalog`] ships the full family of master functions (cubic and quartic
//! tiers) as declarative presets; [`verify`] runs the randomized property
//! suite over them.

pub mod catalog;
pub mod error;
pub mod matrix;
pub mod model;
pub mod poly;
pub mod potential;
pub mod rational;
pub mod ratfunc;
pub mod recursion;
pub mod roots;
pub mod spectrum;
pub mod verify;

pub use catalog::CatalogEntry;
pub use error::QesError;
pub use model::{ConstraintRow, Endpoint, MasterSpec, QesProblem, XInterval};
pub use poly::RatPoly;
pub use potential::{CoordMap, FdSolution, PotentialProfile, Provenance};
pub use rational::Rational;
pub use ratfunc::RatFunc;
pub use recursion::EnergySequence;
pub use spectrum::{FactorizationReport, SpectrumResult};
pub use verify::{VerifyConfig, VerifySummary};
