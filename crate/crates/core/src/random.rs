//! Seeded generators for universes, relations and structures.
//!
//! Used by the property suites and by `conrel monoid-check`; the same seed
//! always yields the same objects.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::connectivity::ConnectivityStructure;
use crate::{IndexSet, Relation, Universe};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A universe with `1..=max_indices` indices and alphabets of size
/// `1..=max_alphabet`.
pub fn universe(rng: &mut impl Rng, max_indices: usize, max_alphabet: usize) -> Arc<Universe> {
    let n = rng.gen_range(1..=max_indices);
    let alphabets: Vec<(String, Vec<String>)> = (0..n)
        .map(|i| {
            let size = rng.gen_range(1..=max_alphabet);
            ((i + 1).to_string(), (0..size).map(|v| v.to_string()).collect())
        })
        .collect();
    Universe::new(alphabets)
        .expect("generated universe is valid")
        .into_shared()
}

/// A uniformly random subset of `within`.
pub fn subset(rng: &mut impl Rng, within: IndexSet) -> IndexSet {
    within.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// A relation on `domain` keeping each tuple of the product with a density
/// drawn uniformly from `[0, 1]`; the extremes `0_J` and `1_J` come up with
/// small fixed probability.
pub fn relation_on(rng: &mut impl Rng, universe: &Arc<Universe>, domain: IndexSet) -> Relation {
    let roll: f64 = rng.gen();
    let density = if roll < 0.05 {
        0.0
    } else if roll < 0.10 {
        1.0
    } else {
        rng.gen()
    };
    Relation::from_predicate(universe.clone(), domain, |_| rng.gen_bool(density)).expect("random domain fits the cap")
}

/// A relation on a random domain of `universe`.
pub fn relation(rng: &mut impl Rng, universe: &Arc<Universe>) -> Relation {
    let domain = subset(rng, universe.all());
    relation_on(rng, universe, domain)
}

/// The integral structure generated by a few random subsets of `carrier`.
pub fn integral_structure(rng: &mut impl Rng, carrier: IndexSet) -> ConnectivityStructure {
    let seeds: Vec<IndexSet> = (0..rng.gen_range(0..=carrier.len() + 1))
        .map(|_| subset(rng, carrier))
        .collect();
    ConnectivityStructure::generate(&seeds, carrier, true).expect("seeds lie in the carrier")
}
