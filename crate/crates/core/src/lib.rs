//! An engine for multiple relations: relations of arbitrary arity over an
//! indexed family of finite sets.
//!
//! The crate covers
//!
//! * partial tuples ([`Family`]) with restriction, compatibility and sums,
//! * relations ([`Relation`]) with the natural join monoid,
//! * splittings, detachable parts and the classification of a relation
//!   ([`split`]),
//! * connectivity structures and the structure `K_R` of a relation
//!   ([`connectivity`]),
//! * the synthesis of a relation with any prescribed integral structure
//!   ([`brunn`]),
//! * definition-literal reference implementations ([`oracles`]).
//!
//! ```
//! use conrel::{connectivity, IndexSet, Relation, Universe};
//!
//! let u = Universe::uniform(3, 2)?.into_shared();
//! // "some coordinate is 0" on {0,1}^3
//! let r = Relation::from_predicate(u.clone(), u.all(), |t| t.contains(&0))?;
//! let k = connectivity::structure_of(&r)?;
//! assert!(k.contains(u.all()));
//! assert!(!k.contains(IndexSet::from_iter([0, 1])));
//! # Ok::<(), conrel::Error>(())
//! ```

pub mod brunn;
pub mod connectivity;
mod error;
mod family;
mod index_set;
pub mod oracles;
pub mod random;
mod relation;
pub mod split;
mod universe;

pub use brunn::{brunn_relation, verify_brunn, BrunnUniverse, WitnessReport};
pub use connectivity::{structure_of, ConnectivityStructure};
pub use error::{Error, Result};
pub use family::Family;
pub use index_set::{IndexSet, Indices, Subsets};
pub use relation::{Relation, Tuple};
pub use split::{Bipartition, Classification};
pub use universe::{Universe, DEFAULT_CAP};

// The guide's chapters compile as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/splitting.md")]
    mod splitting {}
    #[doc = include_str!("../../../book/src/connectivity.md")]
    mod connectivity {}
    #[doc = include_str!("../../../book/src/brunn.md")]
    mod brunn {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
