//! Exact computations on moduli spaces of stable vector bundles on curves.
//!
//! * [`series`]: truncated bivariate polynomials over the integers.
//! * [`composition`]: compositions of the rank and twist exponents.
//! * [`hodge`]: Hodge–Poincaré polynomials, Hodge diamonds and checks on them.
//! * [`complete_intersection`]: an independent Hodge-number oracle.
//! * [`bounds`]: genus thresholds, dimensions and vanishing windows.
//! * [`chern`]: a Künneth-truncated Chern character calculus on `C × M`.
//! * [`sod`]: Hochschild column bookkeeping for a semiorthogonal decomposition.
//! * [`record`]: serializable result records.

pub mod bounds;
pub mod chern;
pub mod complete_intersection;
pub mod composition;
pub mod error;
pub mod hodge;
pub mod record;
pub mod series;
pub mod sod;

pub use composition::{compositions, frac_part, twist_exponent, Composition, Rational};
pub use error::{Error, Result};
pub use hodge::{HodgeDiamond, ModuliParams};
pub use series::{BiPoly, Caps, UniPoly};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
