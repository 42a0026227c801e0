//! Command output rendered as canonical JSON or aligned text.

use conrel::{IndexSet, Relation, Universe};
use serde_json::{json, Map, Value};

use crate::workspace::{relation_json, set_json, sets_json};

pub enum Field {
    Flag(bool),
    Count(u128),
    Text(String),
    Set(Value),
    Sets(Value),
    Relation(Value),
    Absent,
}

pub struct Report {
    fields: Vec<(&'static str, Field)>,
    /// False when a verification command found a counterexample.
    pub ok: bool,
    /// Printed verbatim in place of the fields when set.
    pub raw: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report {
            fields: Vec::new(),
            ok: true,
            raw: None,
        };
        r.text("command", command);
        r
    }

    pub fn flag(&mut self, key: &'static str, v: bool) -> &mut Self {
        self.fields.push((key, Field::Flag(v)));
        self
    }

    pub fn count(&mut self, key: &'static str, v: impl Into<u128>) -> &mut Self {
        self.fields.push((key, Field::Count(v.into())));
        self
    }

    pub fn text(&mut self, key: &'static str, v: impl Into<String>) -> &mut Self {
        self.fields.push((key, Field::Text(v.into())));
        self
    }

    pub fn set(&mut self, key: &'static str, u: &Universe, s: IndexSet) -> &mut Self {
        self.fields.push((key, Field::Set(set_json(u, s))));
        self
    }

    pub fn sets(&mut self, key: &'static str, u: &Universe, sets: &[IndexSet]) -> &mut Self {
        self.fields.push((key, Field::Sets(sets_json(u, sets))));
        self
    }

    pub fn relation(&mut self, key: &'static str, r: &Relation) -> &mut Self {
        self.fields.push((key, Field::Relation(relation_json(r))));
        self
    }

    pub fn absent(&mut self, key: &'static str) -> &mut Self {
        self.fields.push((key, Field::Absent));
        self
    }

    pub fn to_json(&self) -> String {
        let obj: Map<String, Value> = self
            .fields
            .iter()
            .map(|(k, f)| {
                let v = match f {
                    Field::Flag(b) => json!(b),
                    // counts past u64 are written as decimal strings
                    Field::Count(n) => u64::try_from(*n).map_or_else(|_| json!(n.to_string()), Value::from),
                    Field::Text(s) => json!(s),
                    Field::Set(v) | Field::Sets(v) | Field::Relation(v) => v.clone(),
                    Field::Absent => Value::Null,
                };
                (k.to_string(), v)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, f) in &self.fields {
            let head = format!("{k:<width$}  ");
            match f {
                Field::Flag(b) => out += &format!("{head}{b}\n"),
                Field::Count(n) => out += &format!("{head}{n}\n"),
                Field::Text(s) => out += &format!("{head}{s}\n"),
                Field::Set(v) => out += &format!("{head}{}\n", braces(v)),
                Field::Sets(v) => {
                    let items: Vec<String> = v.as_array().unwrap().iter().map(braces).collect();
                    out += &format!("{head}{}\n", items.join(" "));
                }
                Field::Relation(v) => {
                    let domain = v["domain"].as_array().unwrap();
                    let tuples = v["tuples"].as_array().unwrap();
                    out += &format!("{head}{} tuples on {}\n", tuples.len(), braces(&v["domain"]));
                    let rows: Vec<Vec<&str>> = std::iter::once(domain)
                        .chain(tuples.iter().map(|t| t.as_array().unwrap()))
                        .map(|row| row.iter().map(|x| x.as_str().unwrap()).collect())
                        .collect();
                    out += &table(&rows);
                }
                Field::Absent => out += &format!("{head}-\n"),
            }
        }
        out
    }
}

fn braces(v: &Value) -> String {
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    format!("{{{}}}", names.join(","))
}

fn table(rows: &[Vec<&str>]) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(x, &w)| format!("{x:<w$}")).collect();
        out += &format!("    {}\n", cells.join("  ").trim_end());
    }
    out
}
