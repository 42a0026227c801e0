use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::IndexSet;

/// Default upper bound on the number of tuples any operation may materialize.
pub const DEFAULT_CAP: u128 = 1 << 24;

/// The index set `I` together with a finite, nonempty alphabet `E_i` for
/// every index.
///
/// Names are only used at the edges; everything else works on integer codes
/// (index positions and value positions within an alphabet).
#[derive(Debug, Clone)]
pub struct Universe {
    indices: Vec<String>,
    alphabets: Vec<Vec<String>>,
    index_lookup: HashMap<String, usize>,
    value_lookup: Vec<HashMap<String, u32>>,
    cap: u128,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.indices == other.indices && self.alphabets == other.alphabets
    }
}

impl Eq for Universe {}

impl Universe {
    /// Builds a universe from `(index name, value names)` pairs.
    pub fn new<I, N, V, S>(declared: I) -> Result<Self>
    where
        I: IntoIterator<Item = (N, V)>,
        N: Into<String>,
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut indices = Vec::new();
        let mut alphabets = Vec::new();
        let mut index_lookup = HashMap::new();
        let mut value_lookup = Vec::new();
        for (name, values) in declared {
            let name = name.into();
            if index_lookup.insert(name.clone(), indices.len()).is_some() {
                return Err(Error::InvalidUniverse(format!("duplicate index `{name}`")));
            }
            let values: Vec<String> = values.into_iter().map(Into::into).collect();
            if values.is_empty() {
                return Err(Error::InvalidUniverse(format!("index `{name}` has an empty alphabet")));
            }
            if values.len() > u32::MAX as usize {
                return Err(Error::InvalidUniverse(format!("alphabet of `{name}` is too large")));
            }
            let mut lookup = HashMap::with_capacity(values.len());
            for (code, v) in values.iter().enumerate() {
                if lookup.insert(v.clone(), code as u32).is_some() {
                    return Err(Error::InvalidUniverse(format!(
                        "duplicate value `{v}` for index `{name}`"
                    )));
                }
            }
            indices.push(name);
            alphabets.push(values);
            value_lookup.push(lookup);
        }
        if indices.len() > IndexSet::CAPACITY {
            return Err(Error::InvalidUniverse(format!(
                "{} indices, at most {} supported",
                indices.len(),
                IndexSet::CAPACITY
            )));
        }
        Ok(Universe {
            indices,
            alphabets,
            index_lookup,
            value_lookup,
            cap: DEFAULT_CAP,
        })
    }

    /// `n` indices named `"1"..="n"`, each with the alphabet `0..size`.
    pub fn uniform(n: usize, size: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| (i.to_string(), (0..size).map(|v| v.to_string()))))
    }

    /// Replaces the materialization cap.
    #[must_use]
    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The whole index set `I`.
    pub fn all(&self) -> IndexSet {
        IndexSet::full(self.len())
    }

    pub fn index_names(&self) -> &[String] {
        &self.indices
    }

    pub fn index_name(&self, index: usize) -> &str {
        &self.indices[index]
    }

    pub fn alphabet(&self, index: usize) -> &[String] {
        &self.alphabets[index]
    }

    pub fn alphabet_len(&self, index: usize) -> usize {
        self.alphabets[index].len()
    }

    pub fn value_name(&self, index: usize, code: u32) -> &str {
        &self.alphabets[index][code as usize]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index_lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownIndex(name.to_owned()))
    }

    pub fn value_of(&self, index: usize, name: &str) -> Result<u32> {
        self.value_lookup[index]
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownValue {
                index: self.indices[index].clone(),
                value: name.to_owned(),
            })
    }

    /// Resolves a list of index names into a set.
    pub fn index_set<S: AsRef<str>>(&self, names: &[S]) -> Result<IndexSet> {
        names
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(IndexSet::from_iter)
    }

    pub fn names_of(&self, set: IndexSet) -> Vec<&str> {
        set.iter().map(|i| self.index_name(i)).collect()
    }

    /// `|Z_J| = ∏_{j∈J} |E_j|`, saturating at `u128::MAX`.
    pub fn product_size(&self, set: IndexSet) -> u128 {
        set.iter()
            .map(|i| self.alphabet_len(i) as u128)
            .fold(1u128, u128::saturating_mul)
    }

    pub(crate) fn check_subset(&self, set: IndexSet) -> Result<()> {
        if set.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::Domain {
                set,
                domain: self.all(),
            })
        }
    }

    pub(crate) fn check_capacity(&self, required: u128) -> Result<()> {
        if required > self.cap {
            Err(Error::Capacity {
                required,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}
