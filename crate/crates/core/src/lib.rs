//! Exact construction and classification of multinets in the projective plane.
//!
//! A multinet is a multi-arrangement of lines in `P^2`, partitioned into
//! `k >= 3` blocks with positive line multiplicities, such that the blocks are
//! the completely reducible fibers of a pencil of plane curves (a Ceva
//! pencil).  This crate builds multinets by intersecting the net `Q_n` in
//! `P^3` — the reflection arrangement of the monomial group `G(n,n,4)`,
//! `6n` planes in three blocks of `2n` — with a plane `H`, cancelling fixed
//! components of the induced pencil, and verifying every multinet axiom by
//! exact arithmetic over a cyclotomic field.
//!
//! All computation is exact: scalars live in `Q(zeta_N)` represented
//! canonically modulo the `N`-th cyclotomic polynomial with
//! arbitrary-precision rational coefficients.  There is no floating point
//! anywhere in the crate.
//!
//! Module map:
//!
//! - [`cyclo`] — the field `Q(zeta_N)`: canonical elements, arithmetic,
//!   root-of-unity detection, and a text expression parser.
//! - [`projgeo`] — exact projective points, lines and planes with canonical
//!   normalization, incidence, meets and joins.
//! - [`qn`] — the `Q_n` arrangement, its half-block/base-line lattice, and
//!   position analysis of a candidate plane against that lattice.
//! - [`section`] — restriction of `Q_n` to a plane, multiplicity
//!   aggregation and fixed-component cancellation.
//! - [`multinet`] — the provenance-independent multinet model: base locus,
//!   axiom verification, pencil membership, Latin squares, catalog examples.
//! - [`analysis`] — classification reports, double-point census,
//!   prediction-vs-computation cross-checks, half-block pencil checks.
//! - [`search`] — enumeration of planes through unit points looking for
//!   light multinets with many double points.

pub mod analysis;
pub mod cyclo;
mod error;
pub(crate) mod linalg;
pub mod multinet;
pub(crate) mod poly;
pub mod projgeo;
pub mod qn;
pub mod search;
pub mod section;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
