//! Slow implementations that follow the definitions literally.
//!
//! Every optimized routine in the crate has a counterpart here built from
//! family sums, restrictions and exhaustive enumeration only. They are meant
//! for audits and tests, not for speed.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::connectivity::ConnectivityStructure;
use crate::error::{Error, Result};
use crate::relation::for_each_tuple;
use crate::split::Bipartition;
use crate::{Family, IndexSet, Relation, Universe};

/// Largest domain enumerated by [`oracle_external_part`].
pub const MAX_ORACLE_DOMAIN: usize = 16;

/// Largest family of sets whose subfamilies [`oracle_axiom_check`] enumerates.
pub const MAX_ORACLE_MEMBERS: usize = 12;

fn rebuild(universe: &Arc<Universe>, domain: IndexSet, families: Vec<Family>) -> Result<Relation> {
    Relation::from_families(universe.clone(), domain, &families)
}

/// `{ r + s : r ∈ R, s ∈ S, r ⋄ s }` by a nested loop.
pub fn oracle_join(r: &Relation, s: &Relation) -> Result<Relation> {
    if r.universe() != s.universe() {
        return Err(Error::UniverseMismatch);
    }
    let mut out = Vec::new();
    for x in r.families() {
        for y in s.families() {
            if x.compatible(&y) {
                out.push(x.sum(&y)?);
            }
        }
    }
    rebuild(r.universe(), r.domain() | s.domain(), out)
}

/// Restriction by restricting every member family.
pub fn oracle_restrict(r: &Relation, set: IndexSet) -> Result<Relation> {
    let out = r.families().map(|x| x.restrict(set)).collect::<Result<Vec<_>>>()?;
    rebuild(r.universe(), set, out)
}

/// Prolongement as a preimage: every `J`-family whose restriction to `J_R`
/// belongs to `R`.
pub fn oracle_extend(r: &Relation, target: IndexSet) -> Result<Relation> {
    if !r.domain().is_subset(target) {
        return Err(Error::Domain {
            set: r.domain(),
            domain: target,
        });
    }
    let u = r.universe();
    u.check_capacity(u.product_size(target))?;
    let mut out = Vec::new();
    for_each_tuple(u, target, |t| {
        let x = Family::from_tuple(u.len(), target, t);
        if r.contains(&x.restrict(r.domain()).unwrap()) {
            out.push(x);
        }
    });
    rebuild(u, target, out)
}

/// Whether every pair of members is incompatible.
pub fn oracle_incompatible(r: &Relation, s: &Relation) -> bool {
    r.families().all(|x| s.families().all(|y| !x.compatible(&y)))
}

/// The sum criterion: `∀x ∈ T|K, ∀y ∈ T|L, x + y ∈ T`.
pub fn oracle_splittable(t: &Relation, b: &Bipartition) -> Result<bool> {
    if b.ambient() != t.domain() {
        return Err(Error::Precondition(format!(
            "bipartition of {:?} used on a relation over {:?}",
            b.ambient(),
            t.domain()
        )));
    }
    let left = oracle_restrict(t, b.left())?;
    let right = oracle_restrict(t, b.right())?;
    for x in left.families() {
        for y in right.families() {
            if !t.contains(&x.sum(&y)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First bipartition (canonical order) satisfying the sum criterion.
pub fn oracle_find_split(t: &Relation) -> Result<Option<Bipartition>> {
    for b in Bipartition::enumerate(t.domain()) {
        if oracle_splittable(t, &b)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Membership form of detachability: every `J_R`-family whose restriction to
/// `¬J` is the restriction of some member is itself a member.
pub fn oracle_detachable(r: &Relation, part: IndexSet) -> Result<bool> {
    if !part.is_subset(r.domain()) {
        return Err(Error::Domain {
            set: part,
            domain: r.domain(),
        });
    }
    let u = r.universe();
    let rest = r.domain() - part;
    u.check_capacity(u.product_size(r.domain()))?;
    let projected: BTreeSet<Vec<u32>> = r.families().map(|x| x.restrict(rest).unwrap().to_tuple()).collect();
    let mut ok = true;
    for_each_tuple(u, r.domain(), |t| {
        if ok {
            let x = Family::from_tuple(u.len(), r.domain(), t);
            let image = x.restrict(rest).unwrap().to_tuple();
            if projected.contains(&image) && !r.contains_tuple(t) {
                ok = false;
            }
        }
    });
    Ok(ok)
}

/// Union of every detachable subset of `J_R`.
pub fn oracle_external_part(r: &Relation) -> Result<IndexSet> {
    if r.domain().len() > MAX_ORACLE_DOMAIN {
        return Err(Error::Capacity {
            required: 1u128 << r.domain().len(),
            cap: 1u128 << MAX_ORACLE_DOMAIN,
        });
    }
    let mut ex = IndexSet::EMPTY;
    for part in r.domain().subsets() {
        if oracle_detachable(r, part)? {
            ex = ex | part;
        }
    }
    Ok(ex)
}

/// The connectivity axiom checked over every subfamily.
pub fn oracle_axiom_check(sets: &[IndexSet], carrier: IndexSet) -> Result<bool> {
    if let Some(&set) = sets.iter().find(|s| !s.is_subset(carrier)) {
        return Err(Error::Domain { set, domain: carrier });
    }
    let distinct: Vec<IndexSet> = sets.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if distinct.len() > MAX_ORACLE_MEMBERS {
        return Err(Error::Capacity {
            required: 1u128 << distinct.len(),
            cap: 1u128 << MAX_ORACLE_MEMBERS,
        });
    }
    // The empty subfamily has intersection "everything" and union ∅.
    if !distinct.contains(&IndexSet::EMPTY) {
        return Ok(false);
    }
    for mask in 1u32..(1 << distinct.len()) {
        let chosen = distinct.iter().enumerate().filter(|&(k, _)| mask & (1 << k) != 0);
        let (meet, join) = chosen.fold((carrier, IndexSet::EMPTY), |(m, j), (_, &s)| (m & s, j | s));
        if !meet.is_empty() && !distinct.contains(&join) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least structure containing `sets`: repeatedly adds the union of every
/// subfamily with a common point until nothing changes.
pub fn oracle_generate(sets: &[IndexSet], carrier: IndexSet, integral: bool) -> Result<ConnectivityStructure> {
    let mut current: BTreeSet<IndexSet> = sets.iter().copied().collect();
    current.insert(IndexSet::EMPTY);
    if integral {
        current.extend(carrier.iter().map(IndexSet::singleton));
    }
    loop {
        let list: Vec<IndexSet> = current.iter().copied().collect();
        if list.len() > 2 * MAX_ORACLE_MEMBERS {
            return Err(Error::Capacity {
                required: 1u128 << list.len(),
                cap: 1u128 << (2 * MAX_ORACLE_MEMBERS),
            });
        }
        let mut next = current.clone();
        for mask in 1u32..(1 << list.len()) {
            let (meet, join) = list
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask & (1 << k) != 0)
                .fold((carrier, IndexSet::EMPTY), |(m, j), (_, &s)| (m & s, j | s));
            if !meet.is_empty() {
                next.insert(join);
            }
        }
        if next == current {
            return ConnectivityStructure::new(carrier, current.into_iter().collect());
        }
        current = next;
    }
}

/// The largest connected set containing `x` inside `within`, found by
/// scanning every member.
pub fn oracle_component(k: &ConnectivityStructure, within: IndexSet, x: usize) -> Result<IndexSet> {
    if !within.contains(x) {
        return Err(Error::Precondition(format!("index {x} is not in {within:?}")));
    }
    k.members()
        .iter()
        .copied()
        .filter(|m| m.contains(x) && m.is_subset(within))
        .max_by_key(|m| m.len())
        .ok_or_else(|| Error::Precondition("structure is not integral".into()))
}

/// `K_R` from the sum criterion over every subset and bipartition.
pub fn oracle_structure_of(r: &Relation) -> Result<ConnectivityStructure> {
    if r.domain().len() > MAX_ORACLE_DOMAIN {
        return Err(Error::Capacity {
            required: 1u128 << r.domain().len(),
            cap: 1u128 << MAX_ORACLE_DOMAIN,
        });
    }
    let mut members = Vec::new();
    for a in r.domain().subsets() {
        if oracle_find_split(&oracle_restrict(r, a)?)?.is_none() {
            members.push(a);
        }
    }
    ConnectivityStructure::new(r.domain(), members)
}
