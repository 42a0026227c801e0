use conrel::brunn::BrunnUniverse;
use conrel::connectivity::{self, all_integral_structures};
use conrel::split::{self, Classification};
use conrel::{oracles, random, ConnectivityStructure, IndexSet, Relation, Universe};

use crate::error::CliError;
use crate::report::Report;
use crate::workspace::Workspace;
use crate::Command;

pub fn run(command: &Command, ws: Option<&Workspace>, oracle: bool, cap: u128) -> Result<Report, CliError> {
    let need = || ws.ok_or_else(|| CliError::Input("no workspace: pass --workspace or --fixture".into()));
    match command {
        Command::Join { a, b } => {
            let ws = need()?;
            let (r, s) = (ws.relation(a)?, ws.relation(b)?);
            let j = if oracle {
                oracles::oracle_join(r, s)?
            } else {
                r.join(s)?
            };
            let mut rep = Report::new("join");
            rep.count("tuples", j.len() as u128).relation("result", &j);
            Ok(rep)
        }
        Command::Restrict { r, set } => {
            let ws = need()?;
            let (r, k) = (ws.relation(r)?, parse_set(&ws.universe, set)?);
            let out = if oracle {
                oracles::oracle_restrict(r, k)?
            } else {
                r.restrict(k)?
            };
            let mut rep = Report::new("restrict");
            rep.count("tuples", out.len() as u128).relation("result", &out);
            Ok(rep)
        }
        Command::Extend { r, to } => {
            let ws = need()?;
            let r = ws.relation(r)?;
            let target = match to {
                Some(s) => parse_set(&ws.universe, s)?,
                None => ws.universe.all(),
            };
            let out = if oracle {
                oracles::oracle_extend(r, target)?
            } else {
                r.extend(target)?
            };
            let mut rep = Report::new("extend");
            rep.count("tuples", out.len() as u128).relation("result", &out);
            Ok(rep)
        }
        Command::Split { r, part } => {
            let ws = need()?;
            let mut t = ws.relation(r)?.clone();
            if let Some(p) = part {
                t = t.restrict(parse_set(&ws.universe, p)?)?;
            }
            let found = if oracle {
                oracles::oracle_find_split(&t)?
            } else {
                split::find_split(&t)
            };
            let mut rep = Report::new("split");
            rep.set("part", &ws.universe, t.domain())
                .flag("splittable", found.is_some());
            match found {
                Some(b) => rep
                    .set("left", &ws.universe, b.left())
                    .set("right", &ws.universe, b.right()),
                None => rep.absent("left").absent("right"),
            };
            Ok(rep)
        }
        Command::Detachable { r, set } => {
            let ws = need()?;
            let (r, j) = (ws.relation(r)?, parse_set(&ws.universe, set)?);
            let d = if oracle {
                oracles::oracle_detachable(r, j)?
            } else {
                split::is_detachable(r, j)?
            };
            let mut rep = Report::new("detachable");
            rep.set("set", &ws.universe, j).flag("detachable", d);
            Ok(rep)
        }
        Command::Socle { r } => {
            let ws = need()?;
            let r = ws.relation(r)?;
            let ex = if oracle {
                oracles::oracle_external_part(r)?
            } else {
                split::external_part(r)
            };
            let mut rep = Report::new("socle");
            rep.set("external", &ws.universe, ex)
                .set("socle", &ws.universe, r.domain() - ex);
            Ok(rep)
        }
        Command::Classify { r } => {
            let ws = need()?;
            let r = ws.relation(r)?;
            let c = if oracle {
                oracle_classify(r)?
            } else {
                split::classify(r)
            };
            let mut rep = Report::new("classify");
            rep.flag("solid", c.solid)
                .flag("anchored", c.anchored)
                .flag("moving", c.moving)
                .flag("fluid", c.fluid)
                .set("external", &ws.universe, c.external)
                .set("socle", &ws.universe, c.socle);
            match c.reconstructs {
                Some(b) => rep.flag("reconstructs", b),
                None => rep.absent("reconstructs"),
            };
            Ok(rep)
        }
        Command::Structure { r } => {
            let ws = need()?;
            let r = ws.relation(r)?;
            let k = if oracle {
                oracles::oracle_structure_of(r)?
            } else {
                connectivity::structure_of(r)?
            };
            let mut rep = Report::new("structure");
            rep.set("carrier", &ws.universe, k.carrier())
                .count("size", k.len() as u128)
                .sets("members", &ws.universe, k.members());
            Ok(rep)
        }
        Command::Generate { k, integral } => {
            let ws = need()?;
            let seeds = ws.sets(k)?;
            let all = ws.universe.all();
            let g = if oracle {
                oracles::oracle_generate(seeds, all, *integral)?
            } else {
                ConnectivityStructure::generate(seeds, all, *integral)?
            };
            let mut rep = Report::new("generate");
            rep.count("size", g.len() as u128)
                .sets("members", &ws.universe, g.members());
            Ok(rep)
        }
        Command::Components { k, within } => {
            let ws = need()?;
            let k = structure(ws, k)?;
            let a = parse_set(&ws.universe, within)?;
            let parts = if oracle {
                let mut parts = Vec::new();
                for x in a.iter() {
                    parts.push(oracles::oracle_component(&k, a, x)?);
                }
                parts
            } else {
                k.components(a)?
            };
            let mut rep = Report::new("components");
            rep.set("within", &ws.universe, a)
                .sets("components", &ws.universe, &parts);
            Ok(rep)
        }
        Command::Brunn { k } => {
            let ws = need()?;
            let k = structure(ws, k)?;
            let bu = BrunnUniverse::with_names(&k, ws.universe.index_names(), cap)?;
            let r = if oracle {
                let full = Relation::trivial(bu.universe().clone(), k.carrier())?;
                let mut kept = Vec::new();
                for x in full.families() {
                    if bu.contains(&x)? {
                        kept.push(x);
                    }
                }
                Relation::from_families(bu.universe().clone(), k.carrier(), &kept)?
            } else {
                bu.relation()?
            };
            let mut rep = Report::new("brunn");
            rep.count("tuples", r.len() as u128).relation("relation", &r);
            Ok(rep)
        }
        Command::VerifyBrunn { k, exhaustive, witness } => {
            let structures = match (k, exhaustive) {
                (_, Some(n)) => all_integral_structures(IndexSet::full(*n as usize))?,
                (Some(k), None) => vec![structure(need()?, k)?],
                (None, None) => return Err(CliError::Input("give a structure name or --exhaustive N".into())),
            };
            let mut failures = Vec::new();
            for k in &structures {
                if !verify(k, cap, *witness, oracle)? {
                    failures.push(format!("{:?}", k.members()));
                }
            }
            let mut rep = Report::new("verify-brunn");
            rep.text("mode", if *witness { "witness" } else { "materialized" })
                .count("structures", structures.len() as u128)
                .count("failures", failures.len() as u128)
                .flag("passed", failures.is_empty());
            if let Some(first) = failures.first() {
                rep.text("first_failure", first.clone());
            }
            rep.ok = failures.is_empty();
            Ok(rep)
        }
        Command::MonoidCheck { random: count, seed } => {
            let mut rng = random::rng(*seed);
            let mut triples = Vec::with_capacity(*count);
            for _ in 0..*count {
                let u = random::universe(&mut rng, 5, 3);
                let r = random::relation(&mut rng, &u);
                let s = random::relation(&mut rng, &u);
                let t = random::relation(&mut rng, &u);
                triples.push((r, s, t));
            }
            if let Some(ws) = ws {
                let rels: Vec<&Relation> = ws.relations.values().collect();
                for &r in &rels {
                    for &s in &rels {
                        for &t in &rels {
                            triples.push((r.clone(), s.clone(), t.clone()));
                        }
                    }
                }
            }
            let mut failures = Vec::new();
            for (n, (r, s, t)) in triples.iter().enumerate() {
                for law in monoid_failures(r, s, t, oracle)? {
                    failures.push(format!("triple #{n}: {law}"));
                }
            }
            let mut rep = Report::new("monoid-check");
            rep.count("seed", *seed)
                .count("triples", triples.len() as u128)
                .count("failures", failures.len() as u128)
                .flag("passed", failures.is_empty());
            if let Some(first) = failures.first() {
                rep.text("first_failure", first.clone());
            }
            rep.ok = failures.is_empty();
            Ok(rep)
        }
        Command::Save { out } => {
            let ws = need()?;
            let text = ws.save();
            let mut rep = Report::new("save");
            match out {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    rep.text("path", path.display().to_string());
                }
                None => rep.raw = Some(text),
            }
            rep.count("relations", ws.relations.len() as u128)
                .count("structures", ws.structures.len() as u128);
            Ok(rep)
        }
    }
}

/// Comma-separated index names, optionally in braces.
fn parse_set(u: &Universe, arg: &str) -> Result<IndexSet, CliError> {
    let inner = arg.trim().trim_start_matches('{').trim_end_matches('}');
    let mut set = IndexSet::EMPTY;
    for name in inner.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        set.insert(u.index_of(name)?);
    }
    Ok(set)
}

/// A named set list checked against the axioms, carried by every index.
fn structure(ws: &Workspace, name: &str) -> Result<ConnectivityStructure, CliError> {
    ConnectivityStructure::new(ws.universe.all(), ws.sets(name)?.to_vec())
        .map_err(|e| CliError::Input(format!("structure `{name}`: {e}")))
}

fn verify(k: &ConnectivityStructure, cap: u128, witness: bool, oracle: bool) -> Result<bool, CliError> {
    let names: Vec<String> = (1..=k.carrier().len()).map(|i| i.to_string()).collect();
    let bu = BrunnUniverse::with_names(k, &names, cap)?;
    if witness {
        return Ok(bu.verify_witnesses()?.passed());
    }
    let r = bu.relation()?;
    let found = if oracle {
        oracles::oracle_structure_of(&r)?
    } else {
        connectivity::structure_of(&r)?
    };
    Ok(found == *k)
}

fn monoid_failures(r: &Relation, s: &Relation, t: &Relation, oracle: bool) -> Result<Vec<&'static str>, CliError> {
    let join = |a: &Relation, b: &Relation| if oracle { oracles::oracle_join(a, b) } else { a.join(b) };
    let unit = Relation::unit(r.universe().clone());
    let mut failed = Vec::new();
    if join(&join(r, s)?, t)? != join(r, &join(s, t)?)? {
        failed.push("associativity");
    }
    if join(r, s)? != join(s, r)? {
        failed.push("commutativity");
    }
    if join(r, r)? != *r {
        failed.push("idempotence");
    }
    if join(r, &unit)? != *r {
        failed.push("unit");
    }
    Ok(failed)
}

fn oracle_classify(r: &Relation) -> Result<Classification, CliError> {
    let external = oracles::oracle_external_part(r)?;
    let socle = r.domain() - external;
    let anchored = oracles::oracle_detachable(r, external)?;
    let reconstructs = if anchored {
        let back = oracles::oracle_extend(&oracles::oracle_restrict(r, socle)?, r.domain());
        back.ok().map(|e| e == *r)
    } else {
        None
    };
    Ok(Classification {
        solid: external.is_empty(),
        anchored,
        moving: !anchored,
        fluid: !r.is_trivial() && !r.is_null() && socle.is_empty(),
        external,
        socle,
        reconstructs,
    })
}
