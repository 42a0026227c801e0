//! The JSON workspace file: one universe, named relations, named set lists.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use conrel::{IndexSet, Relation, Universe};
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub universe: Arc<Universe>,
    pub relations: BTreeMap<String, Relation>,
    /// Stored as written: a list is only checked against the axioms when a
    /// command needs a connectivity structure.
    pub structures: BTreeMap<String, Vec<IndexSet>>,
    pub warnings: Vec<String>,
}

impl Workspace {
    pub fn new(universe: Arc<Universe>) -> Self {
        Workspace {
            universe,
            relations: BTreeMap::new(),
            structures: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn load(path: &Path, cap: u128) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text, cap)
    }

    pub fn parse(text: &str, cap: u128) -> Result<Self, CliError> {
        let root: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("$: {e}")))?;
        let top = object(&root, "$", &["universe", "relations", "structures"])?;
        let universe = parse_universe(field(top, "$", "universe")?, cap)?;
        let mut ws = Workspace::new(universe);
        if let Some(rels) = top.get("relations") {
            for (name, v) in object(rels, "$.relations", &[])? {
                let path = format!("$.relations.{name}");
                let r = ws.parse_relation(v, &path)?;
                ws.relations.insert(name.clone(), r);
            }
        }
        if let Some(structs) = top.get("structures") {
            for (name, v) in object(structs, "$.structures", &[])? {
                let path = format!("$.structures.{name}");
                let sets = array(v, &path)?
                    .iter()
                    .enumerate()
                    .map(|(k, s)| ws.parse_set(s, &format!("{path}[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                ws.structures.insert(name.clone(), sets);
            }
        }
        Ok(ws)
    }

    fn parse_relation(&mut self, v: &Value, path: &str) -> Result<Relation, CliError> {
        let obj = object(v, path, &["domain", "tuples"])?;
        let domain_path = format!("{path}.domain");
        let names = array(field(obj, path, "domain")?, &domain_path)?;
        let mut order = Vec::with_capacity(names.len());
        for (k, n) in names.iter().enumerate() {
            let at = format!("{domain_path}[{k}]");
            let i = self.index(string(n, &at)?, &at)?;
            if order.contains(&i) {
                return Err(CliError::Input(format!("{at}: index listed twice")));
            }
            order.push(i);
        }
        let domain: IndexSet = order.iter().copied().collect();
        // tuples are written in the listed order, stored in index order
        let mut slots: Vec<usize> = (0..order.len()).collect();
        slots.sort_by_key(|&s| order[s]);
        let tuples_path = format!("{path}.tuples");
        let mut seen = BTreeSet::new();
        for (k, t) in array(field(obj, path, "tuples")?, &tuples_path)?.iter().enumerate() {
            let at = format!("{tuples_path}[{k}]");
            let row = array(t, &at)?;
            if row.len() != order.len() {
                return Err(CliError::Input(format!(
                    "{at}: expected {} values, found {}",
                    order.len(),
                    row.len()
                )));
            }
            let mut codes = Vec::with_capacity(row.len());
            for &s in &slots {
                let vat = format!("{at}[{s}]");
                let value = string(&row[s], &vat)?;
                let code = self
                    .universe
                    .value_of(order[s], value)
                    .map_err(|e| CliError::Input(format!("{vat}: {e}")))?;
                codes.push(code);
            }
            if !seen.insert(codes) {
                self.warnings.push(format!("{at}: duplicate tuple dropped"));
            }
        }
        Relation::new(self.universe.clone(), domain, seen).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }

    fn parse_set(&self, v: &Value, path: &str) -> Result<IndexSet, CliError> {
        let mut set = IndexSet::EMPTY;
        for (k, n) in array(v, path)?.iter().enumerate() {
            let at = format!("{path}[{k}]");
            set.insert(self.index(string(n, &at)?, &at)?);
        }
        Ok(set)
    }

    fn index(&self, name: &str, path: &str) -> Result<usize, CliError> {
        self.universe
            .index_of(name)
            .map_err(|e| CliError::Input(format!("{path}: {e}")))
    }

    pub fn relation(&self, name: &str) -> Result<&Relation, CliError> {
        self.relations
            .get(name)
            .ok_or_else(|| CliError::Input(format!("no relation named `{name}`")))
    }

    pub fn sets(&self, name: &str) -> Result<&[IndexSet], CliError> {
        self.structures
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| CliError::Input(format!("no structure named `{name}`")))
    }

    /// Canonical JSON form: tuples sorted by value order, set lists
    /// deduplicated and sorted by (cardinality, bits).
    pub fn to_json(&self) -> Value {
        let u = &self.universe;
        let indices: Vec<Value> = (0..u.len())
            .map(|i| json!({"name": u.index_name(i), "values": u.alphabet(i)}))
            .collect();
        let relations: Map<String, Value> = self
            .relations
            .iter()
            .map(|(n, r)| (n.clone(), relation_json(r)))
            .collect();
        let structures: Map<String, Value> = self
            .structures
            .iter()
            .map(|(n, s)| (n.clone(), sets_json(u, s)))
            .collect();
        json!({
            "universe": {"indices": indices},
            "relations": relations,
            "structures": structures,
        })
    }

    pub fn save(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("workspace serializes");
        s.push('\n');
        s
    }
}

pub fn relation_json(r: &Relation) -> Value {
    let u = r.universe();
    let idx: Vec<usize> = r.domain().iter().collect();
    let tuples: Vec<Vec<&str>> = r
        .tuples()
        .iter()
        .map(|t| idx.iter().zip(t.iter()).map(|(&i, &c)| u.value_name(i, c)).collect())
        .collect();
    json!({"domain": u.names_of(r.domain()), "tuples": tuples})
}

pub fn set_json(u: &Universe, s: IndexSet) -> Value {
    json!(u.names_of(s))
}

pub fn sets_json(u: &Universe, sets: &[IndexSet]) -> Value {
    let mut sorted = sets.to_vec();
    sorted.sort_by(IndexSet::canonical_cmp);
    sorted.dedup();
    Value::Array(sorted.into_iter().map(|s| set_json(u, s)).collect())
}

fn parse_universe(v: &Value, cap: u128) -> Result<Arc<Universe>, CliError> {
    let obj = object(v, "$.universe", &["indices"])?;
    let list = array(field(obj, "$.universe", "indices")?, "$.universe.indices")?;
    let mut alphabets = Vec::with_capacity(list.len());
    for (k, entry) in list.iter().enumerate() {
        let at = format!("$.universe.indices[{k}]");
        let e = object(entry, &at, &["name", "values"])?;
        let name = string(field(e, &at, "name")?, &format!("{at}.name"))?;
        let values = array(field(e, &at, "values")?, &format!("{at}.values"))?
            .iter()
            .enumerate()
            .map(|(j, x)| string(x, &format!("{at}.values[{j}]")).map(str::to_owned))
            .collect::<Result<Vec<_>, _>>()?;
        alphabets.push((name.to_owned(), values));
    }
    Universe::new(alphabets)
        .map(|u| u.with_cap(cap).into_shared())
        .map_err(|e| CliError::Input(format!("$.universe: {e}")))
}

fn object<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::Input(format!("{path}: expected an object")))?;
    if !allowed.is_empty() {
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CliError::Input(format!("{path}.{k}: unknown field")));
        }
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| CliError::Input(format!("{path}: missing field `{key}`")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Input(format!("{path}: expected an array")))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, CliError> {
    v.as_str()
        .ok_or_else(|| CliError::Input(format!("{path}: expected a string")))
}
