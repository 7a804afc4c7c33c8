//! Exact topological dynamics on small phase spaces: light transitivity,
//! light periodic density and light sensitivity relative to a subbase, and
//! the functional envelope `g ↦ f ∘ g`.

pub mod budget;
pub mod catalog;
pub mod detect;
pub mod envelope;
pub mod error;
pub mod interval;
pub mod pl;
pub mod scalar;
pub mod sequence;
pub mod space;
pub mod subbase;
pub mod verdict;

pub use budget::Budget;
pub use catalog::CatalogMap;
pub use error::{Error, Result};
pub use interval::{Interval, IntervalUnion};
pub use pl::PLMap;
pub use scalar::{Golden, Rat};
pub use space::{PhasePoint, PhaseSpace};
pub use subbase::{Family, Scheme, SubbasicSet};
pub use verdict::{Certificate, Verdict, Witness};
