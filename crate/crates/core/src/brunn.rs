//! Synthesis of a relation with a prescribed connectivity structure.
//!
//! Given an integral structure `𝒦` on a carrier `I`, every index `i` gets the
//! alphabet of 0/1-valued functions `f_i` on a list of coordinate sets, and a
//! family `(f_i)` belongs to the relation when
//!
//! ```text
//! for every nonempty C ∈ 𝒦, some i ∈ C has f_i(C) = 1.
//! ```
//!
//! The predicate only reads `f_i(C)` for connected `C ∋ i`, so the default
//! coordinate list of `i` is `K_i* = { C ∈ 𝒦 ∖ {∅} : i ∈ C }`. The literal
//! variant keeps every subset of the carrier as a coordinate and exists to
//! check that dropping the unread coordinates changes nothing.
//!
//! A value of `E_i` is a bitmask over the coordinate list: bit `b` is
//! `f_i(coords[b])`.

use std::sync::Arc;

use crate::connectivity::{structure_of, ConnectivityStructure};
use crate::error::{Error, Result};
use crate::split::Bipartition;
use crate::universe::DEFAULT_CAP;
use crate::{Family, IndexSet, Relation, Universe};

/// Largest coordinate list per index; alphabets have `2^len` named values.
pub const MAX_COORDINATES: usize = 20;

/// One membership constraint: the connected set `C` and, for each `i ∈ C`,
/// the bit that stores `f_i(C)`.
#[derive(Clone, Debug)]
struct Constraint {
    set: IndexSet,
    bits: Vec<(usize, u32)>,
}

/// The universe of the construction together with its coordinate lists.
#[derive(Clone, Debug)]
pub struct BrunnUniverse {
    structure: ConnectivityStructure,
    coords: Vec<Vec<IndexSet>>,
    constraints: Vec<Constraint>,
    universe: Arc<Universe>,
}

impl BrunnUniverse {
    /// The reduced construction, indices named `"1"`, `"2"`, ... by position.
    pub fn new(structure: &ConnectivityStructure) -> Result<Self> {
        Self::with_names(structure, &default_names(structure.carrier()), DEFAULT_CAP)
    }

    /// The reduced construction with explicit index names and tuple cap.
    ///
    /// `names` must cover every position up to the largest carrier index;
    /// positions outside the carrier get a one-value alphabet.
    pub fn with_names<S: AsRef<str>>(structure: &ConnectivityStructure, names: &[S], cap: u128) -> Result<Self> {
        Self::build(structure, names, cap, |i| structure.members_containing(i).collect())
    }

    /// The literal construction where every subset of the carrier is a
    /// coordinate of every carrier index.
    pub fn literal(structure: &ConnectivityStructure) -> Result<Self> {
        let carrier = structure.carrier();
        let mut all: Vec<IndexSet> = carrier.subsets().collect();
        all.sort_by(IndexSet::canonical_cmp);
        Self::build(structure, &default_names(carrier), DEFAULT_CAP, |_| all.clone())
    }

    fn build<S: AsRef<str>>(
        structure: &ConnectivityStructure,
        names: &[S],
        cap: u128,
        coords_of: impl Fn(usize) -> Vec<IndexSet>,
    ) -> Result<Self> {
        if !structure.is_integral() {
            return Err(Error::Precondition("structure is not integral".into()));
        }
        let carrier = structure.carrier();
        let width = default_names(carrier).len();
        if names.len() < width {
            return Err(Error::Precondition(format!(
                "{} index names given, the carrier needs {width}",
                names.len()
            )));
        }
        let mut coords = Vec::with_capacity(names.len());
        let mut alphabets = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let list = if carrier.contains(i) { coords_of(i) } else { Vec::new() };
            if list.len() > MAX_COORDINATES {
                return Err(Error::Capacity {
                    required: 1u128 << list.len(),
                    cap: 1u128 << MAX_COORDINATES,
                });
            }
            let values: Vec<String> = (0..1u32 << list.len())
                .map(|code| value_name(&list, code, names))
                .collect();
            alphabets.push((name.as_ref().to_owned(), values));
            coords.push(list);
        }
        let universe = Universe::new(alphabets)?.with_cap(cap).into_shared();
        let constraints = structure
            .members()
            .iter()
            .filter(|c| !c.is_empty())
            .map(|&c| Constraint {
                set: c,
                bits: c
                    .iter()
                    .map(|i| {
                        let pos = coords[i]
                            .iter()
                            .position(|&k| k == c)
                            .expect("connected set is a coordinate");
                        (i, 1u32 << pos)
                    })
                    .collect(),
            })
            .collect();
        Ok(BrunnUniverse {
            structure: structure.clone(),
            coords,
            constraints,
            universe,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn structure(&self) -> &ConnectivityStructure {
        &self.structure
    }

    pub fn carrier(&self) -> IndexSet {
        self.structure.carrier()
    }

    /// The coordinate sets of index `i`, in bit order.
    pub fn coordinates(&self, i: usize) -> &[IndexSet] {
        &self.coords[i]
    }

    /// Encodes `f_i` from the coordinate sets it maps to 1.
    pub fn encode(&self, i: usize, ones: &[IndexSet]) -> Result<u32> {
        ones.iter()
            .try_fold(0u32, |code, set| match self.coords[i].iter().position(|k| k == set) {
                Some(b) => Ok(code | 1 << b),
                None => Err(Error::Precondition(format!("{set:?} is not a coordinate of index {i}"))),
            })
    }

    /// `f_i` mapping every coordinate except `zero` to 1.
    fn all_ones_except(&self, i: usize, zero: Option<IndexSet>) -> u32 {
        let full = ((1u64 << self.coords[i].len()) - 1) as u32;
        match zero.and_then(|z| self.coords[i].iter().position(|&k| k == z)) {
            Some(b) => full & !(1 << b),
            None => full,
        }
    }

    fn tuple_satisfies(&self, domain: IndexSet, tuple: &[u32]) -> bool {
        self.constraints
            .iter()
            .filter(|c| c.set.is_subset(domain))
            .all(|c| c.bits.iter().any(|&(i, mask)| tuple[domain.rank(i)] & mask != 0))
    }

    fn check_family(&self, x: &Family) -> Result<()> {
        if x.width() != self.universe.len() {
            return Err(Error::UniverseMismatch);
        }
        for i in x.domain().iter() {
            let code = x.get(i).unwrap();
            if code as usize >= self.universe.alphabet_len(i) {
                return Err(Error::ValueOutOfRange { index: i, code });
            }
        }
        Ok(())
    }

    /// Whether a family total on the carrier belongs to the relation.
    pub fn contains(&self, x: &Family) -> Result<bool> {
        self.check_family(x)?;
        if x.domain() != self.carrier() {
            return Err(Error::Precondition(format!(
                "family on {:?} is not total on the carrier {:?}",
                x.domain(),
                self.carrier()
            )));
        }
        Ok(self.tuple_satisfies(x.domain(), &x.to_tuple()))
    }

    /// Whether an `A`-family satisfies the constraints of every connected
    /// set inside `A`, i.e. belongs to `R|A`.
    pub fn restriction_contains(&self, x: &Family) -> Result<bool> {
        self.check_family(x)?;
        if !x.domain().is_subset(self.carrier()) {
            return Err(Error::Domain {
                set: x.domain(),
                domain: self.carrier(),
            });
        }
        Ok(self.tuple_satisfies(x.domain(), &x.to_tuple()))
    }

    /// The synthesized relation on the carrier.
    pub fn relation(&self) -> Result<Relation> {
        self.restriction_graph(self.carrier())
    }

    /// `R|A`, built directly from the constraints of connected sets inside `A`.
    pub fn restriction_graph(&self, part: IndexSet) -> Result<Relation> {
        if !part.is_subset(self.carrier()) {
            return Err(Error::Domain {
                set: part,
                domain: self.carrier(),
            });
        }
        Relation::from_predicate(self.universe.clone(), part, |t| self.tuple_satisfies(part, t))
    }

    /// `|R|A|` without enumeration.
    ///
    /// Each bit `f_i(C)` belongs to exactly one constraint, so constraints
    /// are independent: a connected `C ⊆ A` admits `2^|C| - 1` assignments
    /// of its bits and every other bit of an index in `A` is free.
    pub fn restriction_len(&self, part: IndexSet) -> Result<u128> {
        if !part.is_subset(self.carrier()) {
            return Err(Error::Domain {
                set: part,
                domain: self.carrier(),
            });
        }
        let overflow = || Error::Capacity {
            required: u128::MAX,
            cap: u128::MAX,
        };
        let mut free_bits: u32 = part.iter().map(|i| self.coords[i].len() as u32).sum();
        let mut count: u128 = 1;
        for c in self.constraints.iter().filter(|c| c.set.is_subset(part)) {
            let size = c.set.len() as u32;
            free_bits -= size;
            count = count.checked_mul((1u128 << size) - 1).ok_or_else(overflow)?;
        }
        if free_bits >= 128 {
            return Err(overflow());
        }
        count.checked_mul(1u128 << free_bits).ok_or_else(overflow)
    }

    /// The pair of families showing that a connected `C` does not split
    /// along `(L, M)`: each maps every coordinate to 1 except `C` itself.
    pub fn witness(&self, connected: IndexSet, b: &Bipartition) -> Result<(Family, Family)> {
        if b.ambient() != connected {
            return Err(Error::Precondition(format!(
                "bipartition of {:?} given for {connected:?}",
                b.ambient()
            )));
        }
        let side = |s: IndexSet| {
            Family::new(
                &self.universe,
                s.iter().map(|i| (i, self.all_ones_except(i, Some(connected)))),
            )
        };
        Ok((side(b.left())?, side(b.right())?))
    }

    /// Extends a family to the carrier with all-ones functions.
    pub fn pad_with_ones(&self, x: &Family) -> Result<Family> {
        let pad = Family::new(
            &self.universe,
            (self.carrier() - x.domain())
                .iter()
                .map(|i| (i, self.all_ones_except(i, None))),
        )?;
        x.sum(&pad)
    }

    /// Checks both directions of the construction without materializing the
    /// relation.
    ///
    /// For every connected `C` and bipartition `(L, M)` of `C`, the witnesses
    /// `l`, `m` lie in `R|L` and `R|M` (their all-ones extensions lie in `R`)
    /// while `l + m` is not in `R|C`. For every non-connected `A` with at least
    /// two points, every connected subset of `A` falls on one side of the
    /// separating bipartition and `|R|A| = |R|L|·|R|M|`.
    pub fn verify_witnesses(&self) -> Result<WitnessReport> {
        let mut report = WitnessReport::default();
        for &c in self.structure.members() {
            for b in Bipartition::enumerate(c) {
                let (l, m) = self.witness(c, &b)?;
                let ok = l.compatible(&m)
                    && self.restriction_contains(&l)?
                    && self.restriction_contains(&m)?
                    && self.contains(&self.pad_with_ones(&l)?)?
                    && self.contains(&self.pad_with_ones(&m)?)?
                    && !self.restriction_contains(&l.sum(&m)?)?;
                report.record_connected(c, b, ok);
            }
        }
        for a in self.carrier().subsets().filter(|a| a.len() >= 2) {
            if self.structure.contains(a) {
                continue;
            }
            let b = self.structure.separation_bipartition(a)?;
            let separated = self
                .structure
                .members()
                .iter()
                .filter(|c| c.is_subset(a))
                .all(|c| c.is_subset(b.left()) || c.is_subset(b.right()));
            let splits =
                self.restriction_len(a)? == self.restriction_len(b.left())? * self.restriction_len(b.right())?;
            report.record_separated(a, b, separated && splits);
        }
        Ok(report)
    }
}

/// Outcome of [`BrunnUniverse::verify_witnesses`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessReport {
    /// Number of (connected set, bipartition) witness checks run.
    pub connected_checks: usize,
    /// Number of non-connected sets checked for splitting.
    pub separated_checks: usize,
    /// Checks that failed, as (set, bipartition).
    pub failures: Vec<(IndexSet, Bipartition)>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record_connected(&mut self, set: IndexSet, b: Bipartition, ok: bool) {
        self.connected_checks += 1;
        if !ok {
            self.failures.push((set, b));
        }
    }

    fn record_separated(&mut self, set: IndexSet, b: Bipartition, ok: bool) {
        self.separated_checks += 1;
        if !ok {
            self.failures.push((set, b));
        }
    }
}

fn default_names(carrier: IndexSet) -> Vec<String> {
    let width = 64 - carrier.bits().leading_zeros() as usize;
    (1..=width).map(|i| i.to_string()).collect()
}

fn value_name<S: AsRef<str>>(coords: &[IndexSet], code: u32, names: &[S]) -> String {
    let sets: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|&(b, _)| code & (1 << b) != 0)
        .map(|(_, s)| {
            let inner: Vec<&str> = s.iter().map(|i| names[i].as_ref()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    format!("[{}]", sets.join(","))
}

/// Builds the synthesized relation for `structure` in a fresh universe.
pub fn brunn_relation(structure: &ConnectivityStructure) -> Result<(BrunnUniverse, Relation)> {
    let bu = BrunnUniverse::new(structure)?;
    let required = bu.universe.product_size(structure.carrier());
    bu.universe.check_capacity(required)?;
    let r = bu.relation()?;
    Ok((bu, r))
}

/// Full verification: materializes the relation and recomputes its structure.
pub fn verify_brunn(structure: &ConnectivityStructure) -> Result<bool> {
    let (_, r) = brunn_relation(structure)?;
    Ok(structure_of(&r)? == *structure)
}
