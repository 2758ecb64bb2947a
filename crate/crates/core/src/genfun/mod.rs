//! Catalog of recursion systems, closed-form coefficients, reference
//! sequences and stated identities.

pub mod catalog;
pub mod closed;
pub mod identities;
pub mod sequences;

pub use catalog::{
    entries, entry, solve_catalog, statistic, CatalogEntry, Domain, EntryKind, Params, Solution,
    Statistic, Trust,
};
pub use closed::{closed_coeff, format_rational, ClosedForm, CoeffQuery};
pub use identities::{printed_identity_check, Verdict, Witness};
pub use sequences::{catalan, reference_sequence};
