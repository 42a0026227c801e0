#![allow(dead_code)]

use std::sync::Arc;

use conrel::random::{self, Rng8};
use conrel::{Family, IndexSet, Relation, Universe};
use rand::Rng;

pub fn set(ix: &[usize]) -> IndexSet {
    ix.iter().copied().collect()
}

pub fn binary(n: usize) -> Arc<Universe> {
    Universe::uniform(n, 2).unwrap().into_shared()
}

/// "some coordinate is 0" on {0,1}^3.
pub fn some_zero() -> Relation {
    let u = binary(3);
    Relation::from_predicate(u.clone(), u.all(), |t| t.contains(&0)).unwrap()
}

/// "some coordinate is 1" on the same universe as [`some_zero`].
pub fn some_one(u: &Arc<Universe>) -> Relation {
    Relation::from_predicate(u.clone(), u.all(), |t| t.contains(&1)).unwrap()
}

/// A total family on the universe with uniform random values.
pub fn total_family(rng: &mut Rng8, u: &Universe) -> Family {
    Family::new(u, (0..u.len()).map(|i| (i, rng.gen_range(0..u.alphabet_len(i) as u32)))).unwrap()
}

/// A family on a random domain with random values.
pub fn family(rng: &mut Rng8, u: &Universe) -> Family {
    let t = total_family(rng, u);
    t.restrict(random::subset(rng, u.all())).unwrap()
}

/// Three relations on random domains of one random universe.
pub fn triple(seed: u64) -> (Relation, Relation, Relation) {
    let mut rng = random::rng(seed);
    let u = random::universe(&mut rng, 5, 3);
    (
        random::relation(&mut rng, &u),
        random::relation(&mut rng, &u),
        random::relation(&mut rng, &u),
    )
}
