//! Exact and numerical verification of summation identities that pair
//! alternating binomial sums over odd reciprocals with central binomial
//! coefficients and odd harmonic numbers of order up to r.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: big rationals and truncated Taylor jets.
//! - [`harmonic`]: harmonic numbers, odd sums and `beta_n^{(j)}(x)`.
//! - [`symbolic`]: the derivative polynomials `f_{n,r}` in `b_j` variables.
//! - [`verify`]: three-way exact checks of the finite identity.
//! - [`series`]: floating-point evaluation of the infinite series.
//! - [`quadrature`]: numerical cross-checks of the defining integrals.
//! - [`oracles`]: independent reference counts used by the checks.
//! - [`suite`]: configuration and the JSON report used by the CLI.

pub mod error;
pub mod exact;
pub mod harmonic;
pub mod oracles;
pub mod quadrature;
pub mod series;
pub mod suite;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Rational, TaylorJet};
