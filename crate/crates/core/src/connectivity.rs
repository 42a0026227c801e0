//! Connectivity structures and the structure `K_R` of a relation.
//!
//! A connectivity structure on a carrier `X` is a family `𝒦` of subsets of
//! `X` such that every subfamily with a common point has its union in `𝒦`.
//! On a finite carrier it is enough to close under unions of two overlapping
//! members: folding a subfamily with common point `x` pairwise keeps `x` in
//! every intermediate union.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::split::{find_split, Bipartition};
use crate::{IndexSet, Relation};

/// Largest relation domain [`structure_of`] will enumerate.
pub const MAX_STRUCTURE_DOMAIN: usize = 20;

/// A connectivity structure with its members sorted by (cardinality, bitset).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectivityStructure {
    carrier: IndexSet,
    members: Vec<IndexSet>,
}

fn check_members(sets: &[IndexSet], carrier: IndexSet) -> Result<()> {
    match sets.iter().find(|s| !s.is_subset(carrier)) {
        Some(&set) => Err(Error::Domain { set, domain: carrier }),
        None => Ok(()),
    }
}

fn canonical(mut sets: Vec<IndexSet>) -> Vec<IndexSet> {
    sets.sort_by(IndexSet::canonical_cmp);
    sets.dedup();
    sets
}

/// Whether `sets` (with repeats ignored) satisfies the connectivity axiom on
/// `carrier`: `∅` is present and overlapping pairs have their union present.
pub fn is_connectivity_structure(sets: &[IndexSet], carrier: IndexSet) -> Result<bool> {
    check_members(sets, carrier)?;
    let lookup: HashSet<IndexSet> = sets.iter().copied().collect();
    if !lookup.contains(&IndexSet::EMPTY) {
        return Ok(false);
    }
    let distinct: Vec<IndexSet> = lookup.iter().copied().collect();
    for (n, a) in distinct.iter().enumerate() {
        for b in &distinct[n + 1..] {
            if a.overlaps(*b) && !lookup.contains(&(*a | *b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl ConnectivityStructure {
    /// Validates `sets` as a connectivity structure on `carrier`.
    pub fn new(carrier: IndexSet, sets: Vec<IndexSet>) -> Result<Self> {
        if !is_connectivity_structure(&sets, carrier)? {
            return Err(Error::Precondition(
                "sets are not closed under overlapping unions or lack ∅".into(),
            ));
        }
        Ok(ConnectivityStructure {
            carrier,
            members: canonical(sets),
        })
    }

    /// The least structure containing `sets` (and every singleton when
    /// `integral` is set).
    pub fn generate(sets: &[IndexSet], carrier: IndexSet, integral: bool) -> Result<Self> {
        check_members(sets, carrier)?;
        let mut seen: HashSet<IndexSet> = HashSet::new();
        let mut members = Vec::new();
        let mut queue = Vec::new();
        let seeds = sets
            .iter()
            .copied()
            .chain(std::iter::once(IndexSet::EMPTY))
            .chain(carrier.iter().filter(|_| integral).map(IndexSet::singleton));
        for s in seeds {
            if seen.insert(s) {
                queue.push(s);
            }
        }
        while let Some(s) = queue.pop() {
            for &m in &members {
                let u = s | m;
                if s.overlaps(m) && seen.insert(u) {
                    queue.push(u);
                }
            }
            members.push(s);
        }
        Ok(ConnectivityStructure {
            carrier,
            members: canonical(members),
        })
    }

    /// `{∅} ∪` singletons.
    pub fn discrete(carrier: IndexSet) -> Result<Self> {
        if carrier.is_empty() {
            return Err(Error::Precondition(
                "discrete structure needs a nonempty carrier".into(),
            ));
        }
        Self::generate(&[], carrier, true)
    }

    /// Every subset of the carrier.
    pub fn coarse(carrier: IndexSet) -> Result<Self> {
        if carrier.is_empty() {
            return Err(Error::Precondition("coarse structure needs a nonempty carrier".into()));
        }
        if carrier.len() > MAX_STRUCTURE_DOMAIN {
            return Err(Error::Capacity {
                required: 1u128 << carrier.len(),
                cap: 1u128 << MAX_STRUCTURE_DOMAIN,
            });
        }
        Ok(ConnectivityStructure {
            carrier,
            members: canonical(carrier.subsets().collect()),
        })
    }

    /// `{∅} ∪` singletons `∪ {carrier}`: connected as a whole, with no
    /// connected proper part beyond single points.
    pub fn borromean(carrier: IndexSet) -> Result<Self> {
        if carrier.len() < 3 {
            return Err(Error::Precondition(
                "borromean structure needs at least three points".into(),
            ));
        }
        Self::generate(&[carrier], carrier, true)
    }

    pub fn carrier(&self) -> IndexSet {
        self.carrier
    }

    pub fn members(&self) -> &[IndexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: IndexSet) -> bool {
        self.members.binary_search_by(|m| m.canonical_cmp(&set)).is_ok()
    }

    /// Whether every singleton of the carrier is connected.
    pub fn is_integral(&self) -> bool {
        self.carrier.iter().all(|i| self.contains(IndexSet::singleton(i)))
    }

    /// Members containing `index`, excluding `∅` by construction.
    pub fn members_containing(&self, index: usize) -> impl Iterator<Item = IndexSet> + '_ {
        self.members.iter().copied().filter(move |m| m.contains(index))
    }

    fn require_integral(&self) -> Result<()> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(Error::Precondition("structure is not integral".into()))
        }
    }

    /// The connected component of `x` in the structure induced on `within`:
    /// the union of all connected sets `C` with `x ∈ C ⊆ within`.
    pub fn component(&self, within: IndexSet, x: usize) -> Result<IndexSet> {
        self.require_integral()?;
        if !within.is_subset(self.carrier) {
            return Err(Error::Domain {
                set: within,
                domain: self.carrier,
            });
        }
        if !within.contains(x) {
            return Err(Error::Precondition(format!("index {x} is not in {within:?}")));
        }
        Ok(self
            .members_containing(x)
            .filter(|m| m.is_subset(within))
            .fold(IndexSet::EMPTY, IndexSet::union))
    }

    /// All components of `within`, ordered by their smallest index.
    pub fn components(&self, within: IndexSet) -> Result<Vec<IndexSet>> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(x) = rest.min() {
            let c = self.component(within, x)?;
            rest = rest - c;
            out.push(c);
        }
        Ok(out)
    }

    /// For a nonempty non-connected `part`, the bipartition `(L, A ∖ L)` with
    /// `L` the component of `min(part)`. Every connected subset of `part` lies
    /// inside one side.
    pub fn separation_bipartition(&self, part: IndexSet) -> Result<Bipartition> {
        self.require_integral()?;
        let Some(x) = part.min() else {
            return Err(Error::Precondition("the empty set is connected".into()));
        };
        if self.contains(part) {
            return Err(Error::Precondition(format!("{part:?} is connected")));
        }
        let left = self.component(part, x)?;
        Bipartition::new(left, part - left)
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_substructure_of(&self, other: &ConnectivityStructure) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// Largest carrier for [`all_integral_structures`].
pub const MAX_ENUMERATED_CARRIER: usize = 4;

/// Every integral connectivity structure on `carrier`, found by keeping the
/// families of subsets that contain `∅` and all singletons and pass the axiom.
pub fn all_integral_structures(carrier: IndexSet) -> Result<Vec<ConnectivityStructure>> {
    if carrier.len() > MAX_ENUMERATED_CARRIER {
        return Err(Error::Capacity {
            required: 1u128 << carrier.len(),
            cap: 1u128 << MAX_ENUMERATED_CARRIER,
        });
    }
    let base: Vec<IndexSet> = std::iter::once(IndexSet::EMPTY)
        .chain(carrier.iter().map(IndexSet::singleton))
        .collect();
    let optional: Vec<IndexSet> = carrier.subsets().filter(|s| s.len() >= 2).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << optional.len()) {
        let mut sets = base.clone();
        sets.extend(
            optional
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask & (1 << k) != 0)
                .map(|(_, &s)| s),
        );
        if is_connectivity_structure(&sets, carrier)? {
            out.push(ConnectivityStructure {
                carrier,
                members: canonical(sets),
            });
        }
    }
    Ok(out)
}

/// `K_R`: the parts of `J_R` that are not splittable for `R`.
///
/// Projections are built top-down: each subset's restriction is derived from
/// a parent's, so the full graph is scanned only once per child of `J_R`.
pub fn structure_of(r: &Relation) -> Result<ConnectivityStructure> {
    let domain = r.domain();
    if domain.len() > MAX_STRUCTURE_DOMAIN {
        return Err(Error::Capacity {
            required: 1u128 << domain.len(),
            cap: 1u128 << MAX_STRUCTURE_DOMAIN,
        });
    }
    let mut members = Vec::new();
    visit_restrictions(r.clone(), IndexSet::EMPTY, &mut |rel| {
        if find_split(rel).is_none() {
            members.push(rel.domain());
        }
    })?;
    Ok(ConnectivityStructure {
        carrier: domain,
        members: canonical(members),
    })
}

/// Calls `visit` once on `R|A` for every `A ⊆ J_R`. A subset is reached by
/// removing its missing indices in increasing order, which happens once.
fn visit_restrictions(rel: Relation, locked: IndexSet, visit: &mut dyn FnMut(&Relation)) -> Result<()> {
    visit(&rel);
    let domain = rel.domain();
    for i in (domain - locked).iter() {
        let child = rel.restrict(domain.without(i))?;
        let lock = locked | (domain & IndexSet::full(i));
        visit_restrictions(child, lock, visit)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> IndexSet {
        ix.iter().copied().collect()
    }

    fn sets(list: &[&[usize]]) -> Vec<IndexSet> {
        list.iter().map(|s| set(s)).collect()
    }

    fn b3() -> ConnectivityStructure {
        ConnectivityStructure::borromean(set(&[0, 1, 2])).unwrap()
    }

    #[test]
    fn axiom_check_examples() {
        let x = set(&[0, 1, 2]);
        assert!(is_connectivity_structure(b3().members(), x).unwrap());
        let chain = sets(&[&[], &[0], &[1], &[2], &[0, 1], &[1, 2]]);
        assert!(!is_connectivity_structure(&chain, x).unwrap());
        let singletons = sets(&[&[0], &[1], &[2]]);
        assert!(!is_connectivity_structure(&singletons, x).unwrap());
        assert!(is_connectivity_structure(&sets(&[&[], &[3]]), x).is_err());
    }

    #[test]
    fn generate_examples() {
        let x = set(&[0, 1, 2]);
        let k = ConnectivityStructure::generate(&sets(&[&[0, 1], &[1, 2]]), x, true).unwrap();
        assert_eq!(
            k.members(),
            &sets(&[&[], &[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 1, 2]])[..]
        );
        let again = ConnectivityStructure::generate(k.members(), x, true).unwrap();
        assert_eq!(again, k);
        let nothing = ConnectivityStructure::generate(&[], x, false).unwrap();
        assert_eq!(nothing.members(), &[IndexSet::EMPTY]);
        assert!(!nothing.is_integral());
    }

    #[test]
    fn named_structures() {
        assert_eq!(b3().len(), 5);
        assert!(b3().is_integral());
        let one = set(&[4]);
        assert_eq!(
            ConnectivityStructure::discrete(one).unwrap(),
            ConnectivityStructure::coarse(one).unwrap()
        );
        assert_eq!(ConnectivityStructure::coarse(set(&[0, 1])).unwrap().len(), 4);
        assert!(ConnectivityStructure::borromean(set(&[0, 1])).is_err());
        assert!(ConnectivityStructure::discrete(IndexSet::EMPTY).is_err());
    }

    #[test]
    fn components_and_separation() {
        let k = b3();
        assert_eq!(k.component(set(&[0, 1]), 0).unwrap(), set(&[0]));
        assert_eq!(k.component(set(&[0, 1, 2]), 0).unwrap(), set(&[0, 1, 2]));
        assert!(k.component(set(&[0, 1]), 2).is_err());
        assert_eq!(
            k.separation_bipartition(set(&[0, 1])).unwrap(),
            Bipartition::new(set(&[0]), set(&[1])).unwrap()
        );
        assert!(k.separation_bipartition(set(&[0, 1, 2])).is_err());
        assert!(k.separation_bipartition(IndexSet::EMPTY).is_err());

        let g = ConnectivityStructure::generate(&sets(&[&[0, 1]]), set(&[0, 1, 2]), true).unwrap();
        assert_eq!(g.component(set(&[0, 1, 2]), 2).unwrap(), set(&[2]));
        assert_eq!(
            g.separation_bipartition(set(&[0, 1, 2])).unwrap(),
            Bipartition::new(set(&[0, 1]), set(&[2])).unwrap()
        );
        assert_eq!(g.components(set(&[0, 1, 2])).unwrap(), sets(&[&[0, 1], &[2]]));
    }

    #[test]
    fn integral_structures_on_small_carriers() {
        let count = |n| all_integral_structures(IndexSet::full(n)).unwrap().len();
        assert_eq!(count(0), 1);
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 2);
        // pairs: none (2 ways), one (3 x 2), two or three (full set forced)
        assert_eq!(count(3), 12);
        assert!(all_integral_structures(IndexSet::full(5)).is_err());
    }

    #[test]
    fn non_integral_structures_have_no_components() {
        let k = ConnectivityStructure::generate(&[], set(&[0, 1]), false).unwrap();
        assert!(k.component(set(&[0, 1]), 0).is_err());
    }

    #[test]
    fn restriction_visitor_reaches_every_subset_once() {
        let u = crate::Universe::uniform(4, 2).unwrap().into_shared();
        let r = Relation::trivial(u.clone(), u.all()).unwrap();
        let mut seen = Vec::new();
        visit_restrictions(r, IndexSet::EMPTY, &mut |rel| seen.push(rel.domain().bits())).unwrap();
        seen.sort_unstable();
        assert_eq!(seen, (0..16).collect::<Vec<u64>>());
    }
}
