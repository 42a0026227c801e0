//! Partial tuples ("families") and their restriction/sum algebra.
//!
//! A family assigns one value to each index of its domain. The empty-domain
//! family is written `•` and is the neutral element of [`Family::sum`].

use std::fmt;

use crate::error::{Error, Result};
use crate::{IndexSet, Universe};

/// Marks an index outside the family's domain.
pub(crate) const UNDEFINED: u32 = u32::MAX;

/// A partial tuple over a universe.
///
/// Values are stored densely over the whole index range; slots outside the
/// domain hold a sentinel, so two families are equal exactly when their
/// domains and their values on the domain agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    domain: IndexSet,
    values: Box<[u32]>,
}

impl Family {
    /// The family `•` with empty domain.
    pub fn empty(universe: &Universe) -> Self {
        Family {
            domain: IndexSet::EMPTY,
            values: vec![UNDEFINED; universe.len()].into_boxed_slice(),
        }
    }

    /// Builds a family from `(index, value code)` pairs.
    pub fn new(universe: &Universe, assignments: impl IntoIterator<Item = (usize, u32)>) -> Result<Self> {
        let mut family = Self::empty(universe);
        for (index, code) in assignments {
            if index >= universe.len() {
                return Err(Error::Domain {
                    set: IndexSet::singleton(index.min(IndexSet::CAPACITY - 1)),
                    domain: universe.all(),
                });
            }
            if code as usize >= universe.alphabet_len(index) {
                return Err(Error::ValueOutOfRange { index, code });
            }
            if family.domain.contains(index) && family.values[index] != code {
                return Err(Error::Incompatible { index });
            }
            family.domain.insert(index);
            family.values[index] = code;
        }
        Ok(family)
    }

    /// Builds a family from index and value names.
    pub fn from_names<N: AsRef<str>, V: AsRef<str>>(universe: &Universe, pairs: &[(N, V)]) -> Result<Self> {
        let assignments = pairs
            .iter()
            .map(|(n, v)| {
                let i = universe.index_of(n.as_ref())?;
                Ok((i, universe.value_of(i, v.as_ref())?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, assignments)
    }

    /// Builds a family on `domain` from a tuple listing values in index order.
    ///
    /// The caller guarantees `tuple.len() == domain.len()` and that every
    /// code is valid; this is the internal path from relation graphs.
    pub(crate) fn from_tuple(width: usize, domain: IndexSet, tuple: &[u32]) -> Self {
        debug_assert_eq!(tuple.len(), domain.len());
        let mut values = vec![UNDEFINED; width].into_boxed_slice();
        for (i, &v) in domain.iter().zip(tuple) {
            values[i] = v;
        }
        Family { domain, values }
    }

    /// Values on the domain, in index order.
    pub fn to_tuple(&self) -> Vec<u32> {
        self.domain.iter().map(|i| self.values[i]).collect()
    }

    pub fn domain(&self) -> IndexSet {
        self.domain
    }

    /// Value at `index`, if `index` is in the domain.
    pub fn get(&self, index: usize) -> Option<u32> {
        self.domain.contains(index).then(|| self.values[index])
    }

    /// Number of index slots, i.e. the size of the owning universe.
    pub fn width(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// The restriction `x|K`. Fails unless `K ⊆ domain`.
    pub fn restrict(&self, set: IndexSet) -> Result<Family> {
        if !set.is_subset(self.domain) {
            return Err(Error::Domain {
                set,
                domain: self.domain,
            });
        }
        let mut values = self.values.clone();
        for i in (self.domain - set).iter() {
            values[i] = UNDEFINED;
        }
        Ok(Family { domain: set, values })
    }

    /// Whether `self|L = other|L`. Fails unless `L` lies in both domains.
    pub fn coincide_on(&self, other: &Family, set: IndexSet) -> Result<bool> {
        let common = self.domain & other.domain;
        if !set.is_subset(common) {
            return Err(Error::Domain { set, domain: common });
        }
        Ok(set.iter().all(|i| self.values[i] == other.values[i]))
    }

    /// `x ⋄ y`: the families agree wherever both are defined.
    pub fn compatible(&self, other: &Family) -> bool {
        self.first_conflict(other).is_none()
    }

    fn first_conflict(&self, other: &Family) -> Option<usize> {
        (self.domain & other.domain)
            .iter()
            .find(|&i| self.values[i] != other.values[i])
    }

    /// `x + y`, defined on the union of the domains.
    pub fn sum(&self, other: &Family) -> Result<Family> {
        if self.width() != other.width() {
            return Err(Error::UniverseMismatch);
        }
        if let Some(index) = self.first_conflict(other) {
            return Err(Error::Incompatible { index });
        }
        let mut values = self.values.clone();
        for i in other.domain.iter() {
            values[i] = other.values[i];
        }
        Ok(Family {
            domain: self.domain | other.domain,
            values,
        })
    }

    /// Sums a list of pairwise compatible families. The empty sum is `•`.
    pub fn sum_many<'a>(universe: &Universe, families: impl IntoIterator<Item = &'a Family>) -> Result<Family> {
        let families: Vec<&Family> = families.into_iter().collect();
        for (a, x) in families.iter().enumerate() {
            for (b, y) in families.iter().enumerate().skip(a + 1) {
                if let Some(index) = x.first_conflict(y) {
                    return Err(Error::Precondition(format!(
                        "families #{a} and #{b} are incompatible at index {index}"
                    )));
                }
            }
        }
        families
            .into_iter()
            .try_fold(Family::empty(universe), |acc, x| acc.sum(x))
    }

    /// Renders the family with the universe's names, e.g. `{1=0, 3=1}`.
    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        DisplayFamily { family: self, universe }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.domain.is_empty() {
            return f.write_str("•");
        }
        f.debug_map()
            .entries(self.domain.iter().map(|i| (i, self.values[i])))
            .finish()
    }
}

struct DisplayFamily<'a> {
    family: &'a Family,
    universe: &'a Universe,
}

impl fmt::Display for DisplayFamily<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.domain.is_empty() {
            return f.write_str("•");
        }
        f.write_str("{")?;
        for (k, i) in self.family.domain.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(
                f,
                "{}={}",
                self.universe.index_name(i),
                self.universe.value_name(i, self.family.values[i])
            )?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u3() -> Universe {
        Universe::uniform(3, 2).unwrap()
    }

    fn fam(u: &Universe, pairs: &[(&str, &str)]) -> Family {
        Family::from_names(u, pairs).unwrap()
    }

    #[test]
    fn empty_family_is_bullet() {
        let u = u3();
        let e = Family::empty(&u);
        assert!(e.domain().is_empty());
        assert_eq!(e, Family::empty(&u));
        assert_eq!(format!("{e:?}"), "•");
        let x = fam(&u, &[("1", "0"), ("2", "1")]);
        assert!(e.compatible(&x));
        assert_eq!(x.sum(&e).unwrap(), x);
    }

    #[test]
    fn restriction_examples() {
        let u = u3();
        let x = fam(&u, &[("1", "0"), ("2", "1"), ("3", "1")]);
        let k = u.index_set(&["1", "3"]).unwrap();
        assert_eq!(x.restrict(k).unwrap(), fam(&u, &[("1", "0"), ("3", "1")]));
        assert_eq!(x.restrict(IndexSet::EMPTY).unwrap(), Family::empty(&u));
        assert_eq!(x.restrict(x.domain()).unwrap(), x);
        let y = fam(&u, &[("1", "0")]);
        assert!(matches!(y.restrict(k), Err(Error::Domain { .. })));
    }

    #[test]
    fn coincide_and_compatible() {
        let u = u3();
        let x = fam(&u, &[("1", "0"), ("2", "1")]);
        let y = fam(&u, &[("2", "1"), ("3", "0")]);
        let z = fam(&u, &[("2", "0"), ("3", "0")]);
        let two = IndexSet::singleton(1);
        assert!(x.coincide_on(&y, two).unwrap());
        assert!(!x.coincide_on(&z, two).unwrap());
        assert!(x.coincide_on(&z, IndexSet::EMPTY).unwrap());
        assert!(x.coincide_on(&y, IndexSet::singleton(0)).is_err());
        assert!(x.compatible(&y));
        assert!(!x.compatible(&fam(&u, &[("2", "0")])));
        assert!(fam(&u, &[("1", "1")]).compatible(&fam(&u, &[("3", "0")])));
    }

    #[test]
    fn sums() {
        let u = u3();
        let a = fam(&u, &[("1", "0")]);
        let b = fam(&u, &[("2", "1")]);
        assert_eq!(a.sum(&b).unwrap(), fam(&u, &[("1", "0"), ("2", "1")]));
        assert_eq!(a.sum(&a).unwrap(), a);
        let x = fam(&u, &[("1", "0"), ("2", "1")]);
        assert!(matches!(
            x.sum(&fam(&u, &[("2", "0")])),
            Err(Error::Incompatible { index: 1 })
        ));
    }

    #[test]
    fn sum_many_cover_and_errors() {
        let u = u3();
        let x = fam(&u, &[("1", "0"), ("2", "1"), ("3", "1")]);
        let parts: Vec<Family> = [0b011u64, 0b110, 0b100]
            .iter()
            .map(|&b| x.restrict(IndexSet::from_bits(b)).unwrap())
            .collect();
        assert_eq!(Family::sum_many(&u, &parts).unwrap(), x);
        assert_eq!(Family::sum_many(&u, []).unwrap(), Family::empty(&u));
        let bad = [fam(&u, &[("1", "0")]), fam(&u, &[("2", "0")]), fam(&u, &[("1", "1")])];
        let err = Family::sum_many(&u, &bad).unwrap_err();
        assert!(err.to_string().contains("#0 and #2"), "{err}");
    }

    #[test]
    fn construction_validates() {
        let u = u3();
        assert!(matches!(Family::new(&u, [(0, 5)]), Err(Error::ValueOutOfRange { .. })));
        assert!(Family::new(&u, [(7, 0)]).is_err());
        assert!(Family::new(&u, [(0, 0), (0, 1)]).is_err());
        let x = fam(&u, &[("3", "1"), ("1", "0")]);
        assert_eq!(x.to_tuple(), vec![0, 1]);
        assert_eq!(x.display(&u).to_string(), "{1=0, 3=1}");
    }
}
