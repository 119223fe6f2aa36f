//! Sums of cubes in the integer quaternion rings `LQ_{a,b}`.
//!
//! - [`quat`]: exact ring arithmetic and the closed-form cube.
//! - [`residue`]: case split of `(a, b)` and residue classes mod 6.
//! - [`decompose`]: membership in the cube subgroup and decomposition into
//!   at most 6 (or 5) cubes.
//! - [`search`]: bounded minimal-representation search and modular
//!   obstruction checks.
//! - [`expr`] and [`cli`]: parsing and the `quatcube` command line.

pub mod cli;
pub mod decompose;
pub mod error;
pub mod expr;
pub mod quat;
pub mod residue;
pub mod search;

pub use decompose::{decompose, member_cube_subgroup, verify, Decomposition};
pub use error::{Error, Result};
pub use quat::{PValue, Quaternion, RingParams};
pub use residue::{classify_case, CaseKind, CaseTag, ResidueClass};
