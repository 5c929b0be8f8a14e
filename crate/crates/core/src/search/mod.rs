//! t(g) computation, exhaustive enumeration and table reproduction.

pub mod enumerate;
pub mod tables;
pub mod tog;

pub use enumerate::{enumerate_regular, EnumLimits, EnumWitness};
pub use tables::{summary_gm, table_appendix_a, verify_appendix_b};
pub use tog::{candidate_ms, t_of_g, BoundStatus, Candidate, TransBound};
