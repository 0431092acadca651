//! Exact enumeration of integer compositions whose parts lie in, or avoid,
//! an eventually periodic set of positive integers.
//!
//! The pipeline runs from a [`PartSet`] to its composition generating
//! function ([`genfun::composition_gf`]), from there to a linear recurrence
//! ([`LinearRecurrence`]) and to a numeric partial-fraction closed form
//! ([`closedform`]). The [`oracle`] module recomputes everything by brute
//! force so each stage can be checked independently.
//!
//! ```
//! use compgf::{genfun, parse_setspec};
//!
//! // parts not congruent to 1 mod 3
//! let set = parse_setspec("not:ap:1:3").unwrap();
//! assert_eq!(genfun::count(&set, 10).to_string(), "19");
//! ```

pub mod bivariate;
pub mod closedform;
pub mod genfun;
pub mod json;
pub mod oracle;
pub mod partset;
pub mod poly;
pub mod recurrence;

pub use bivariate::{bivariate_table, BivariateTable};
pub use closedform::{ComplexRoot, PartialFraction};
pub use oracle::{Composition, TheoremFamily, VerificationReport};
pub use partset::{parse_setspec, PartSet, PartSetError};
pub use poly::{IntPolynomial, RationalGF, TruncatedSeries};
pub use recurrence::LinearRecurrence;
