//! Splittable relations, detachable parts, external part and socle.
//!
//! A relation `T` splits along a bipartition `(K, L)` of its domain when
//! `T = T|K ⋈ T|L`. Since `T ⊆ T|K ⋈ T|L` always holds and the join of two
//! relations on disjoint domains has `|T|K|·|T|L|` tuples, splitting reduces
//! to comparing three graph sizes. Detachability is decided the same way:
//! `J` is detachable when `|R| = |R|¬J| · |Z_J|`.

use crate::error::{Error, Result};
use crate::{IndexSet, Relation};

/// An ordered pair of disjoint nonempty sets covering `ambient`, oriented so
/// that `left` holds the smallest index of `ambient`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    left: IndexSet,
    right: IndexSet,
}

impl Bipartition {
    /// Builds a bipartition from its two sides, swapping them if needed.
    pub fn new(a: IndexSet, b: IndexSet) -> Result<Self> {
        if a.is_empty() || b.is_empty() || a.overlaps(b) {
            return Err(Error::Precondition(format!(
                "{a:?} and {b:?} do not form a bipartition"
            )));
        }
        let ambient = a | b;
        if a.contains(ambient.min().unwrap()) {
            Ok(Bipartition { left: a, right: b })
        } else {
            Ok(Bipartition { left: b, right: a })
        }
    }

    /// The bipartition `(part, ambient ∖ part)`.
    pub fn of(ambient: IndexSet, part: IndexSet) -> Result<Self> {
        if !part.is_subset(ambient) {
            return Err(Error::Domain {
                set: part,
                domain: ambient,
            });
        }
        Self::new(part, ambient - part)
    }

    pub fn left(&self) -> IndexSet {
        self.left
    }

    pub fn right(&self) -> IndexSet {
        self.right
    }

    pub fn ambient(&self) -> IndexSet {
        self.left | self.right
    }

    /// Every bipartition of `ambient`, in canonical order: the side holding
    /// `min(ambient)` runs through increasing bitset values.
    pub fn enumerate(ambient: IndexSet) -> impl Iterator<Item = Bipartition> {
        let first = ambient.min();
        let rest = first.map_or(IndexSet::EMPTY, |m| ambient.without(m));
        rest.subsets()
            .filter(move |s| *s != rest)
            .filter_map(move |s| first.map(|m| s.with(m)))
            .map(move |left| Bipartition {
                left,
                right: ambient - left,
            })
    }
}

/// Whether `T = T|K ⋈ T|L` for the bipartition `(K, L)` of `J_T`.
pub fn is_splittable_along(t: &Relation, b: &Bipartition) -> Result<bool> {
    if b.ambient() != t.domain() {
        return Err(Error::Precondition(format!(
            "bipartition of {:?} used on a relation over {:?}",
            b.ambient(),
            t.domain()
        )));
    }
    let left = t.restriction_len(b.left)? as u128;
    let right = t.restriction_len(b.right)? as u128;
    Ok(left * right == t.len() as u128)
}

/// The first bipartition of `J_T` along which `T` splits, if any.
pub fn find_split(t: &Relation) -> Option<Bipartition> {
    if t.domain().len() < 2 {
        return None;
    }
    Bipartition::enumerate(t.domain()).find(|b| is_splittable_along(t, b).unwrap_or(false))
}

/// Whether `R|A` is splittable.
pub fn is_part_splittable(r: &Relation, part: IndexSet) -> Result<bool> {
    Ok(find_split(&r.restrict(part)?).is_some())
}

/// Whether `R = R|¬J ⋈ 1_J`, with `¬J = J_R ∖ J`.
pub fn is_detachable(r: &Relation, part: IndexSet) -> Result<bool> {
    if !part.is_subset(r.domain()) {
        return Err(Error::Domain {
            set: part,
            domain: r.domain(),
        });
    }
    let rest = r.restriction_len(r.domain() - part)? as u128;
    let free = r.universe().product_size(part);
    Ok(rest.checked_mul(free) == Some(r.len() as u128))
}

/// `Ex(R)`: the union of the detachable parts of `R`.
///
/// Detachability is inherited by subsets and closed under finite unions, so
/// the union of the detachable singletons is the largest detachable part.
pub fn external_part(r: &Relation) -> IndexSet {
    r.domain()
        .iter()
        .filter(|&i| is_detachable(r, IndexSet::singleton(i)).unwrap_or(false))
        .collect()
}

/// `Soc(R) = J_R ∖ Ex(R)`.
pub fn socle(r: &Relation) -> IndexSet {
    r.domain() - external_part(r)
}

/// The four overlapping adjectives attached to a relation, with the sets they
/// are computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `Ex(R) = ∅`.
    pub solid: bool,
    /// `Ex(R)` is detachable.
    pub anchored: bool,
    /// `Ex(R)` is not detachable.
    pub moving: bool,
    /// `R` is neither trivial nor null, and `Soc(R) = ∅`.
    ///
    /// A null relation `0_J` also has an empty socle, but it is anchored
    /// (`0_J = 0_∅ ⋈ 1_J`), so it is kept out of this class to preserve
    /// `fluid ⇒ moving`.
    pub fluid: bool,
    pub external: IndexSet,
    pub socle: IndexSet,
    /// For anchored relations, whether `R` is recovered by extending `R|Soc`
    /// back to `J_R`. `None` when the relation is moving or the extension
    /// exceeds the materialization cap.
    pub reconstructs: Option<bool>,
}

pub fn classify(r: &Relation) -> Classification {
    let external = external_part(r);
    let socle = r.domain() - external;
    let anchored = is_detachable(r, external).unwrap_or(false);
    let reconstructs = if anchored {
        r.restrict(socle)
            .and_then(|s| s.extend(r.domain()))
            .ok()
            .map(|e| e == *r)
    } else {
        None
    };
    Classification {
        solid: external.is_empty(),
        anchored,
        moving: !anchored,
        fluid: !r.is_trivial() && !r.is_null() && socle.is_empty(),
        external,
        socle,
        reconstructs,
    }
}
