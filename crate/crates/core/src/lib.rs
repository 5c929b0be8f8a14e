//! Regular origamis: finite groups, constructions, strata and bounds on the
//! number of translations.

pub mod constructions;
pub mod descriptor;
pub mod error;
pub mod group;
pub mod numtheory;
pub mod oracle;
pub mod origami;
pub mod perm;
pub mod search;
pub mod sl2;
pub mod stratum;

pub use error::Error;
pub use group::{FiniteGroup, Subgroup};
pub use origami::Origami;
pub use perm::Perm;
pub use stratum::Stratum;
