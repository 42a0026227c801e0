//! Multiple relations and the join monoid.
//!
//! A [`Relation`] is a domain `J ⊆ I` plus an explicit, canonically sorted
//! graph of total `J`-families. The join `⋈` makes relations over a fixed
//! universe a commutative idempotent monoid with unit `1_∅`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::{Family, IndexSet, Universe};

/// A row of a relation graph: one value code per domain index, in index order.
pub type Tuple = Box<[u32]>;

#[derive(Clone)]
pub struct Relation {
    universe: Arc<Universe>,
    domain: IndexSet,
    tuples: Vec<Tuple>,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.domain == other.domain && self.tuples == other.tuples
    }
}

impl Eq for Relation {}

pub(crate) fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Relation {
    /// Builds a relation from raw value-code tuples listed in domain order.
    /// Duplicates are removed.
    pub fn new<T>(universe: Arc<Universe>, domain: IndexSet, tuples: impl IntoIterator<Item = T>) -> Result<Self>
    where
        T: Into<Vec<u32>>,
    {
        universe.check_subset(domain)?;
        let width = domain.len();
        let mut rows = Vec::new();
        for t in tuples {
            let t: Vec<u32> = t.into();
            if t.len() != width {
                return Err(Error::Precondition(format!(
                    "tuple of width {} on a domain of {} indices",
                    t.len(),
                    width
                )));
            }
            for (index, &code) in domain.iter().zip(&t) {
                if code as usize >= universe.alphabet_len(index) {
                    return Err(Error::ValueOutOfRange { index, code });
                }
            }
            rows.push(t.into_boxed_slice());
        }
        Ok(Self::from_rows(universe, domain, rows))
    }

    /// Builds a relation from families whose domain is exactly `domain`.
    pub fn from_families<'a>(
        universe: Arc<Universe>,
        domain: IndexSet,
        families: impl IntoIterator<Item = &'a Family>,
    ) -> Result<Self> {
        let mut rows = Vec::new();
        for f in families {
            if f.domain() != domain || f.width() != universe.len() {
                return Err(Error::Domain {
                    set: f.domain(),
                    domain,
                });
            }
            rows.push(f.to_tuple().into_boxed_slice());
        }
        universe.check_subset(domain)?;
        Ok(Self::from_rows(universe, domain, rows))
    }

    /// The relation on `domain` whose graph is every tuple satisfying `pred`.
    pub fn from_predicate(
        universe: Arc<Universe>,
        domain: IndexSet,
        mut pred: impl FnMut(&[u32]) -> bool,
    ) -> Result<Self> {
        universe.check_subset(domain)?;
        universe.check_capacity(universe.product_size(domain))?;
        let mut rows = Vec::new();
        for_each_tuple(&universe, domain, |t| {
            if pred(t) {
                rows.push(t.into());
            }
        });
        // odometer order is already lexicographic
        Ok(Relation {
            universe,
            domain,
            tuples: rows,
        })
    }

    pub(crate) fn from_rows(universe: Arc<Universe>, domain: IndexSet, mut rows: Vec<Tuple>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        Relation {
            universe,
            domain,
            tuples: rows,
        }
    }

    /// `0_J`: empty graph on `domain`.
    pub fn null(universe: Arc<Universe>, domain: IndexSet) -> Result<Self> {
        universe.check_subset(domain)?;
        Ok(Relation {
            universe,
            domain,
            tuples: Vec::new(),
        })
    }

    /// `1_J`: the full product `∏_{j∈J} E_j`, materialized.
    pub fn trivial(universe: Arc<Universe>, domain: IndexSet) -> Result<Self> {
        Self::from_predicate(universe, domain, |_| true)
    }

    /// `𝟏 = 1_∅`, whose graph is `{•}`.
    pub fn unit(universe: Arc<Universe>) -> Self {
        Relation {
            universe,
            domain: IndexSet::EMPTY,
            tuples: vec![Tuple::default()],
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn domain(&self) -> IndexSet {
        self.domain
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    /// Number of tuples in the graph.
    // emptiness is `is_null`
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    /// Whether the graph is empty (`R = 0_{J_R}`).
    pub fn is_null(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Whether the graph is the full product (`R = 1_{J_R}`).
    pub fn is_trivial(&self) -> bool {
        self.tuples.len() as u128 == self.universe.product_size(self.domain)
    }

    pub fn families(&self) -> impl Iterator<Item = Family> + '_ {
        let width = self.universe.len();
        self.tuples
            .iter()
            .map(move |t| Family::from_tuple(width, self.domain, t))
    }

    pub fn contains_tuple(&self, tuple: &[u32]) -> bool {
        self.tuples.binary_search_by(|t| (**t).cmp(tuple)).is_ok()
    }

    /// Whether `x` is `R`-compatible, i.e. a member of the graph.
    pub fn contains(&self, x: &Family) -> bool {
        x.domain() == self.domain && self.contains_tuple(&x.to_tuple())
    }

    /// Graph inclusion `R ⊂_J S`. Both relations must share their domain.
    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_same_universe(other)?;
        if self.domain != other.domain {
            return Err(Error::Precondition(format!(
                "cannot compare relations on {:?} and {:?}",
                self.domain, other.domain
            )));
        }
        Ok(self.tuples.iter().all(|t| other.contains_tuple(t)))
    }

    pub(crate) fn check_same_universe(&self, other: &Relation) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// `R ⋈ S` by hash partitioning on the shared indices.
    pub fn join(&self, other: &Relation) -> Result<Relation> {
        self.check_same_universe(other)?;
        let shared = self.domain & other.domain;
        let domain = self.domain | other.domain;

        let left_key: Vec<usize> = shared.iter().map(|i| self.domain.rank(i)).collect();
        let right_key: Vec<usize> = shared.iter().map(|i| other.domain.rank(i)).collect();
        let buckets = bucket_by(&other.tuples, &right_key);

        let mut required: u128 = 0;
        for t in &self.tuples {
            if let Some(b) = buckets.get(&project(t, &left_key)) {
                required += b.len() as u128;
            }
        }
        self.universe.check_capacity(required)?;

        // output column -> (from left?, position)
        let layout: Vec<(bool, usize)> = domain
            .iter()
            .map(|i| {
                if self.domain.contains(i) {
                    (true, self.domain.rank(i))
                } else {
                    (false, other.domain.rank(i))
                }
            })
            .collect();

        let mut rows = Vec::with_capacity(required as usize);
        for r in &self.tuples {
            let Some(bucket) = buckets.get(&project(r, &left_key)) else {
                continue;
            };
            for &s in bucket {
                let s = &other.tuples[s];
                rows.push(layout.iter().map(|&(left, p)| if left { r[p] } else { s[p] }).collect());
            }
        }
        Ok(Self::from_rows(self.universe.clone(), domain, rows))
    }

    /// `R|K`: the image of the graph under restriction to `K ⊆ J_R`.
    pub fn restrict(&self, set: IndexSet) -> Result<Relation> {
        if !set.is_subset(self.domain) {
            return Err(Error::Domain {
                set,
                domain: self.domain,
            });
        }
        if set == self.domain {
            return Ok(self.clone());
        }
        let cols: Vec<usize> = set.iter().map(|i| self.domain.rank(i)).collect();
        let rows = self
            .tuples
            .iter()
            .map(|t| project(t, &cols).into_boxed_slice())
            .collect();
        Ok(Self::from_rows(self.universe.clone(), set, rows))
    }

    /// Number of distinct tuples in `R|K`, without building the relation.
    pub fn restriction_len(&self, set: IndexSet) -> Result<usize> {
        if !set.is_subset(self.domain) {
            return Err(Error::Domain {
                set,
                domain: self.domain,
            });
        }
        if set == self.domain {
            return Ok(self.len());
        }
        let cols: Vec<usize> = set.iter().map(|i| self.domain.rank(i)).collect();
        let mut seen: Vec<Vec<u32>> = self.tuples.iter().map(|t| project(t, &cols)).collect();
        seen.sort_unstable();
        seen.dedup();
        Ok(seen.len())
    }

    /// Prolongement of `R` to `J ⊇ J_R`: `R ⋈ 1_{J∖J_R}`.
    pub fn extend(&self, target: IndexSet) -> Result<Relation> {
        if !self.domain.is_subset(target) {
            return Err(Error::Domain {
                set: self.domain,
                domain: target,
            });
        }
        let pad = target - self.domain;
        let required = (self.len() as u128).saturating_mul(self.universe.product_size(pad));
        self.universe.check_capacity(required)?;
        self.join(&Relation::trivial(self.universe.clone(), pad)?)
    }

    /// Whether `R ⋈ S` is null, decided by probing the hash partition.
    pub fn incompatible(&self, other: &Relation) -> Result<bool> {
        self.check_same_universe(other)?;
        let shared = self.domain & other.domain;
        let left_key: Vec<usize> = shared.iter().map(|i| self.domain.rank(i)).collect();
        let right_key: Vec<usize> = shared.iter().map(|i| other.domain.rank(i)).collect();
        let buckets = bucket_by(&other.tuples, &right_key);
        Ok(!self.tuples.iter().any(|t| buckets.contains_key(&project(t, &left_key))))
    }

    /// Composition of binary relations: for `f` on `{i, j}` and `g` on
    /// `{j, k}`, returns `(f ⋈ g)|{i, k}`.
    pub fn compose_binary(&self, g: &Relation) -> Result<Relation> {
        let f = self;
        let middle = f.domain & g.domain;
        if f.domain.len() != 2 || g.domain.len() != 2 || middle.len() != 1 {
            return Err(Error::Precondition(format!(
                "composition needs two binary relations sharing one index, got {:?} and {:?}",
                f.domain, g.domain
            )));
        }
        f.join(g)?.restrict((f.domain | g.domain) - middle)
    }

    pub fn display(&self) -> impl fmt::Display + '_ {
        DisplayRelation(self)
    }
}

fn project(t: &[u32], cols: &[usize]) -> Vec<u32> {
    cols.iter().map(|&c| t[c]).collect()
}

fn bucket_by(rows: &[Tuple], cols: &[usize]) -> HashMap<Vec<u32>, Vec<usize>> {
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (n, t) in rows.iter().enumerate() {
        buckets.entry(project(t, cols)).or_default().push(n);
    }
    buckets
}

/// Visits every tuple of `∏_{j∈domain} E_j` in lexicographic order.
pub(crate) fn for_each_tuple(universe: &Universe, domain: IndexSet, mut visit: impl FnMut(&[u32])) {
    let radix: Vec<u32> = domain.iter().map(|i| universe.alphabet_len(i) as u32).collect();
    let mut t = vec![0u32; radix.len()];
    loop {
        visit(&t);
        let mut pos = radix.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < radix[pos] {
                break;
            }
            t[pos] = 0;
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Relation")
            .field("domain", &self.domain)
            .field("tuples", &self.tuples)
            .finish()
    }
}

struct DisplayRelation<'a>(&'a Relation);

impl fmt::Display for DisplayRelation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.0;
        let u = &r.universe;
        writeln!(f, "domain: [{}]", u.names_of(r.domain).join(", "))?;
        writeln!(f, "tuples: {}", r.len())?;
        for t in &r.tuples {
            let cells: Vec<&str> = r
                .domain
                .iter()
                .zip(t.iter())
                .map(|(i, &v)| u.value_name(i, v))
                .collect();
            writeln!(f, "  ({})", cells.join(", "))?;
        }
        Ok(())
    }
}
