use std::fmt;

/// A subset of a universe's indices, stored as a 64-bit mask.
///
/// Bit `i` is set when index `i` belongs to the set. The derived ordering is
/// the plain bitset value; [`IndexSet::canonical_cmp`] gives the
/// (cardinality, bitset) order used for listing connectivity structures.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// Largest number of indices a universe may have.
    pub const CAPACITY: usize = 64;

    pub const fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        assert!(index < Self::CAPACITY, "index {index} out of range");
        IndexSet(1 << index)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "universe size {n} out of range");
        if n == Self::CAPACITY {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < Self::CAPACITY && self.0 & (1 << index) != 0
    }

    pub fn insert(&mut self, index: usize) {
        *self = self.with(index);
    }

    #[must_use]
    pub fn with(self, index: usize) -> Self {
        self | Self::singleton(index)
    }

    #[must_use]
    pub fn without(self, index: usize) -> Self {
        self - Self::singleton(index)
    }

    pub const fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn overlaps(self, other: Self) -> bool {
        !self.is_disjoint(other)
    }

    /// Smallest index in the set.
    pub fn min(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// All subsets of `self`, in increasing bitset order, starting at the
    /// empty set and ending at `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }

    /// Number of indices of `self` strictly below `index`, i.e. the position
    /// `index` occupies in a tuple over `self`.
    pub fn rank(self, index: usize) -> usize {
        (self.0 & ((1u64 << index) - 1)).count_ones() as usize
    }

    /// Order by cardinality first, bitset value second.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl std::ops::BitOr for IndexSet {
    type Output = IndexSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for IndexSet {
    type Output = IndexSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for IndexSet {
    type Output = IndexSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter().fold(IndexSet::EMPTY, IndexSet::with)
    }
}

impl IntoIterator for IndexSet {
    type Item = usize;
    type IntoIter = Indices;
    fn into_iter(self) -> Indices {
        self.iter()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the members of an [`IndexSet`], ascending.
#[derive(Clone, Debug)]
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Carry-rippler enumeration of the subsets of a mask.
#[derive(Clone, Debug)]
pub struct Subsets {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        let current = self.next?;
        self.next = (current != self.set).then(|| current.wrapping_sub(self.set) & self.set);
        Some(IndexSet(current))
    }
}
