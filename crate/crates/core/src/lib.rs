//! Snake-polynomials for majorants of the form `μ = √R` and numerical
//! verification of Markov- and Duffin–Schaeffer-type inequalities.
//!
//! The crate is organized bottom-up:
//!
//! * [`chebcore`] — polynomials in the Chebyshev basis (evaluation, algebra,
//!   differentiation, root-finding, sup-norms).
//! * [`snake`] — majorants, Fejér–Riesz factorization, snake-polynomial
//!   construction and oscillation nodes, plus the [`snake::catalog`] of
//!   majorants with known extremal behaviour.
//! * [`extremal`] — Markov and Duffin–Schaeffer constants, the positivity
//!   profile of Chebyshev expansions, and the growth experiments for
//!   `μ_m = (1 − x²)^{m/2}`.
//! * [`scans`] — two-dimensional sweeps of `τ_n(x, t)` and the auxiliary
//!   inequalities (ψ-identities, F/G bounds, `τ″` positivity, interlacing).

pub mod chebcore;
mod error;
pub mod extremal;
pub(crate) mod numeric;
pub mod scans;
pub mod snake;

pub use chebcore::{ChebPoly, Interval};
pub use error::{Error, Result};
pub use extremal::{ExtremalReport, Verdict};
pub use scans::{DomainTag, TauScanResult};
pub use snake::catalog::{catalog_majorant, CatalogCase};
pub use snake::{FejerFactor, Majorant, Node, Snake};
