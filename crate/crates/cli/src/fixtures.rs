//! Built-in workspaces for the worked examples.
//!
//! * `borromean3`: `R` (some coordinate is 0) and `S` (some coordinate is 1)
//!   on `{0,1}^3`, with `B3` the Borromean structure.
//! * `counterexample17`: four binary indices, `R` forcing index 2 to 0 on
//!   `{1,2,3}` and `S` forcing it to 1 on `{1,2,4}`. The set list `L` holds
//!   `{1,3,4}`, where restriction and join do not commute.
//! * `brunn:<structure>`: the Brunn relation `R` of a structure `K`.
//!   `<structure>` is `borromean<n>`, `discrete<n>`, `coarse<n>`, or
//!   `<n>:<sets>` with sets such as `1+2,2+3` (1-based positions, the
//!   integral structure they generate is used).

use conrel::brunn::BrunnUniverse;
use conrel::{ConnectivityStructure, IndexSet, Relation, Universe};

use crate::error::CliError;
use crate::workspace::Workspace;

pub fn load(name: &str, cap: u128) -> Result<Workspace, CliError> {
    match name {
        "borromean3" => borromean3(cap),
        "counterexample17" => counterexample17(cap),
        _ => match name.strip_prefix("brunn:") {
            Some(text) => brunn(&parse_structure(text)?, cap),
            None => Err(CliError::Input(format!("unknown fixture `{name}`"))),
        },
    }
}

fn binary(n: usize, cap: u128) -> Result<Workspace, CliError> {
    Ok(Workspace::new(Universe::uniform(n, 2)?.with_cap(cap).into_shared()))
}

fn borromean3(cap: u128) -> Result<Workspace, CliError> {
    let mut ws = binary(3, cap)?;
    let u = ws.universe.clone();
    ws.relations.insert(
        "R".into(),
        Relation::from_predicate(u.clone(), u.all(), |t| t.contains(&0))?,
    );
    ws.relations.insert(
        "S".into(),
        Relation::from_predicate(u.clone(), u.all(), |t| t.contains(&1))?,
    );
    let b3 = ConnectivityStructure::borromean(u.all())?;
    ws.structures.insert("B3".into(), b3.members().to_vec());
    Ok(ws)
}

fn counterexample17(cap: u128) -> Result<Workspace, CliError> {
    let mut ws = binary(4, cap)?;
    let u = ws.universe.clone();
    let set = |ix: &[usize]| ix.iter().copied().collect::<IndexSet>();
    ws.relations.insert(
        "R".into(),
        Relation::from_predicate(u.clone(), set(&[0, 1, 2]), |t| t[1] == 0)?,
    );
    ws.relations.insert(
        "S".into(),
        Relation::from_predicate(u.clone(), set(&[0, 1, 3]), |t| t[1] == 1)?,
    );
    ws.structures.insert("L".into(), vec![set(&[0, 2, 3])]);
    Ok(ws)
}

fn brunn(k: &ConnectivityStructure, cap: u128) -> Result<Workspace, CliError> {
    let names: Vec<String> = (1..=k.carrier().len()).map(|i| i.to_string()).collect();
    let bu = BrunnUniverse::with_names(k, &names, cap)?;
    let mut ws = Workspace::new(bu.universe().clone());
    ws.relations.insert("R".into(), bu.relation()?);
    ws.structures.insert("K".into(), k.members().to_vec());
    Ok(ws)
}

/// Parses the `<structure>` part of a `brunn:` fixture name.
pub fn parse_structure(text: &str) -> Result<ConnectivityStructure, CliError> {
    let bad = || CliError::Input(format!("bad structure `{text}`"));
    let size = |s: &str| -> Result<usize, CliError> {
        match s.parse::<usize>() {
            Ok(n) if (1..=conrel::connectivity::MAX_STRUCTURE_DOMAIN).contains(&n) => Ok(n),
            _ => Err(bad()),
        }
    };
    if let Some((n, sets)) = text.split_once(':') {
        let carrier = IndexSet::full(size(n)?);
        let mut seeds = Vec::new();
        for member in sets.split(',').filter(|m| !m.is_empty()) {
            let mut s = IndexSet::EMPTY;
            for p in member.split('+') {
                match p.parse::<usize>() {
                    Ok(p) if p >= 1 && carrier.contains(p - 1) => s.insert(p - 1),
                    _ => return Err(bad()),
                }
            }
            seeds.push(s);
        }
        return Ok(ConnectivityStructure::generate(&seeds, carrier, true)?);
    }
    let split = text.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let carrier = IndexSet::full(size(&text[split..])?);
    Ok(match &text[..split] {
        "borromean" => ConnectivityStructure::borromean(carrier)?,
        "discrete" => ConnectivityStructure::discrete(carrier)?,
        "coarse" => ConnectivityStructure::coarse(carrier)?,
        _ => return Err(bad()),
    })
}
