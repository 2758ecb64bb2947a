//! Exact enumeration of consecutive-pattern statistics on 123- and
//! 132-avoiding permutations, Dyck path bijections, truncated power series
//! and a brute-force conformance harness.

pub mod dyck;
pub mod error;
pub mod genfun;
pub mod limits;
pub mod perm;
pub mod poly;
pub mod verify;

pub use dyck::{DyckPath, PathPattern, Step};
pub use error::{Error, Result};
pub use limits::Limits;
pub use perm::{Pattern, PatternKind, Permutation, Symmetry};
pub use poly::{Monomial, SparsePoly, TruncatedSeries, VarId};
