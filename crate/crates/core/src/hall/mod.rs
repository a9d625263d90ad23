//! The generic twisted Hall algebra of the equioriented quiver of type `A_n`.

mod algebra;
mod cache;
mod count;
mod element;
mod interp;
mod pbw;
mod word;

pub use algebra::{HallAlgebra, RootBracketing};
pub use cache::{cache_key, parse_cache_record, CacheRecord, HallCache};
pub use count::{census_degree_bound, count_automorphisms_at, count_subreps, quotient_census};
pub use element::HallElement;
pub use interp::interpolate;
pub use pbw::pbw_monomial_general;
pub use word::{expand_product, Factor, GeneratorWord};

use crate::repquiver::{DimVector, Multisegment};

/// All isomorphism classes of dimension `d`, in ascending order.
pub fn enumerate_multisegments(d: &DimVector) -> Vec<Multisegment> {
    Multisegment::enumerate(d)
}
