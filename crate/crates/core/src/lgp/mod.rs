//! Local-to-global machinery on finite discrete spaces: fiber quotient,
//! quotient metric, geodesic straightness, hypothesis checks, and the
//! combined verdict.

pub mod checks;
pub mod quotient;
pub mod space;
pub mod verdict;

pub use checks::{check_lfc, check_local_convexity_data, LcdReport};
pub use quotient::{build_quotient, FiberQuotient};
pub use space::DiscreteSpace;
pub use verdict::{lgp_verdict, LgpParams, LgpVerdict};
