//! JSON domain and function files.
//!
//! Keys keep their written order so output is reproducible. Subsets are
//! written as `{a,b}` with members in display order; `{}` and `∅` both
//! read as the empty set.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::functions::OpTable;
use crate::galois::{Abstract, Alpha, ClosureOp, Connection, Constructive, GaloisError, Kind, SetGc};
use crate::order::{build_poset, Lattice, OrderError, Poset};
use crate::setops::{Arith, Carrier, CarrierError, Subset};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing field {0}")]
    Missing(&'static str),
    #[error("field {field} is not allowed for kind {kind}")]
    Unexpected { field: &'static str, kind: Kind },
    #[error("unknown {what} {name:?}")]
    UnknownName { what: &'static str, name: String },
    #[error("{0} is listed twice")]
    Duplicate(String),
    #[error("incomplete table: {0}")]
    Incomplete(String),
    #[error(transparent)]
    Carrier(#[from] CarrierError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum CarrierSpec {
    Ints { lo: i64, hi: i64, mode: Arith },
    Atoms(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

/// The on-disk shape of a connection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    pub kind: String,
    pub carrier: CarrierSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier_order: Option<Vec<(String, String)>>,
    #[serde(rename = "abstract", default, skip_serializing_if = "Option::is_none")]
    pub abs: Option<AbstractSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<IndexMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<IndexMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<IndexMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<IndexMap<String, Vec<String>>>,
}

fn carrier_of(spec: &CarrierSpec) -> Result<Carrier, FormatError> {
    Ok(match spec {
        CarrierSpec::Ints { lo, hi, mode } => Carrier::ints(*lo, *hi, *mode)?,
        CarrierSpec::Atoms(names) => Carrier::atoms(names.iter().cloned())?,
    })
}

fn spec_of(carrier: &Carrier) -> CarrierSpec {
    match carrier.int_range() {
        Some((lo, hi, mode)) => CarrierSpec::Ints { lo, hi, mode },
        None => CarrierSpec::Atoms(carrier.names().to_vec()),
    }
}

fn poset_of(elements: &[String], leq: &[(String, String)]) -> Result<Poset, FormatError> {
    Ok(build_poset(elements, leq)?)
}

fn hasse_pairs(p: &Poset) -> Vec<(String, String)> {
    p.hasse().into_iter().map(|(i, j)| (p.name(i).to_string(), p.name(j).to_string())).collect()
}

fn lookup(what: &'static str, names: &[String], name: &str) -> Result<usize, FormatError> {
    names.iter().position(|n| n == name).ok_or_else(|| FormatError::UnknownName { what, name: name.to_string() })
}

fn subset_of(what: &'static str, names: &[String], items: &[String]) -> Result<Subset, FormatError> {
    let mut s = Subset::empty(names.len());
    for item in items {
        s.insert(lookup(what, names, item)?);
    }
    Ok(s)
}

/// Parses `{a,b}`, `{}` or `∅`.
pub fn parse_subset(names: &[String], text: &str) -> Result<Subset, FormatError> {
    let t = text.trim();
    if t == "∅" {
        return Ok(Subset::empty(names.len()));
    }
    let inner = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| FormatError::UnknownName { what: "subset", name: text.to_string() })?;
    let items: Vec<String> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
    subset_of("carrier value", names, &items)
}

fn members(carrier: &Carrier, s: &Subset) -> Vec<String> {
    carrier.display_order().into_iter().filter(|&a| s.contains(a)).map(|a| carrier.name(a).to_string()).collect()
}

fn table_of<V>(
    what: &'static str,
    keys: &[String],
    map: &IndexMap<String, V>,
    mut value: impl FnMut(&V) -> Result<usize, FormatError>,
) -> Result<Vec<usize>, FormatError> {
    let mut out = vec![None; keys.len()];
    for (k, v) in map {
        let i = lookup(what, keys, k)?;
        if out[i].replace(value(v)?).is_some() {
            return Err(FormatError::Duplicate(k.clone()));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| FormatError::Incomplete(format!("no entry for {what} {}", keys[i]))))
        .collect()
}

fn sets_of(what: &'static str, keys: &[String], carrier: &Carrier, map: &IndexMap<String, Vec<String>>) -> Result<Vec<Subset>, FormatError> {
    let mut out: Vec<Option<Subset>> = vec![None; keys.len()];
    for (k, v) in map {
        let i = lookup(what, keys, k)?;
        if out[i].replace(subset_of("carrier value", carrier.names(), v)?).is_some() {
            return Err(FormatError::Duplicate(k.clone()));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| FormatError::Incomplete(format!("no entry for {what} {}", keys[i]))))
        .collect()
}

fn reject(kind: Kind, field: &'static str, present: bool) -> Result<(), FormatError> {
    if present {
        Err(FormatError::Unexpected { field, kind })
    } else {
        Ok(())
    }
}

/// Reads a connection; class laws are not checked here.
pub fn read_domain(text: &str) -> Result<Connection, FormatError> {
    let file: DomainFile = serde_json::from_str(text)?;
    from_file(&file)
}

pub fn from_file(file: &DomainFile) -> Result<Connection, FormatError> {
    let kind: Kind = file.kind.parse().map_err(|_| FormatError::UnknownName { what: "kind", name: file.kind.clone() })?;
    let carrier = carrier_of(&file.carrier)?;
    let carrier_order = file.carrier_order.as_ref().map(|pairs| poset_of(carrier.names(), pairs)).transpose()?;
    let names = carrier.names().to_vec();
    match kind {
        Kind::Cco => {
            reject(kind, "abstract", file.abs.is_some())?;
            reject(kind, "eta", file.eta.is_some())?;
            reject(kind, "alpha", file.alpha.is_some())?;
            reject(kind, "gamma", file.gamma.is_some())?;
            reject(kind, "carrier_order", file.carrier_order.is_some())?;
            let phi = sets_of("carrier value", &names, &carrier, file.mu.as_ref().ok_or(FormatError::Missing("mu"))?)?;
            Ok(Connection::Cco(ClosureOp::new(carrier, phi)?))
        }
        Kind::Gc => {
            reject(kind, "eta", file.eta.is_some())?;
            reject(kind, "mu", file.mu.is_some())?;
            let spec = file.abs.as_ref().ok_or(FormatError::Missing("abstract"))?;
            let abs = Lattice::new(poset_of(&spec.elements, &spec.leq)?)?;
            let gamma = sets_of("abstract value", abs.names(), &carrier, file.gamma.as_ref().ok_or(FormatError::Missing("gamma"))?)?;
            let order = carrier_order.clone().unwrap_or_else(|| Poset::discrete(&names).expect("distinct names"));
            let alpha = read_alpha(&carrier, &order, &abs, file.alpha.as_ref().ok_or(FormatError::Missing("alpha"))?)?;
            Ok(Connection::Gc(SetGc::new(carrier, carrier_order, abs, alpha, gamma)?))
        }
        Kind::Cgc | Kind::Cgp | Kind::Pcgc => {
            reject(kind, "alpha", file.alpha.is_some())?;
            reject(kind, "gamma", file.gamma.is_some())?;
            let spec = file.abs.as_ref().ok_or(FormatError::Missing("abstract"))?;
            let abs = Abstract::from_poset(poset_of(&spec.elements, &spec.leq)?);
            let bnames = abs.poset().names().to_vec();
            let eta = table_of("carrier value", &names, file.eta.as_ref().ok_or(FormatError::Missing("eta"))?, |b| {
                lookup("abstract value", &bnames, b)
            })?;
            let mu = sets_of("abstract value", &bnames, &carrier, file.mu.as_ref().ok_or(FormatError::Missing("mu"))?)?;
            Ok(Connection::Constructive(Constructive::new(kind, carrier, carrier_order, abs, eta, mu)?))
        }
    }
}

/// A map on `∅` plus every principal downset is read as a join table;
/// a map on every downset is kept as given.
fn read_alpha(carrier: &Carrier, order: &Poset, abs: &Lattice, map: &IndexMap<String, String>) -> Result<Alpha, FormatError> {
    let mut given: HashMap<Subset, usize> = HashMap::new();
    for (k, v) in map {
        let s = parse_subset(carrier.names(), k)?;
        let d = lookup("abstract value", abs.names(), v)?;
        if given.insert(s, d).is_some() {
            return Err(FormatError::Duplicate(k.clone()));
        }
    }
    let n = carrier.len();
    let principal: Vec<Subset> = (0..n).map(|a| order.down(a)).collect();
    let empty = Subset::empty(n);
    let mut keys: Vec<&Subset> = principal.iter().chain([&empty]).collect();
    keys.sort();
    keys.dedup();
    if given.len() == keys.len() && keys.iter().all(|k| given.contains_key(*k)) {
        if given[&empty] != abs.bottom() {
            return Err(FormatError::Incomplete(format!("α(∅) must be the bottom {}", abs.name(abs.bottom()))));
        }
        return Ok(Alpha::Join(principal.iter().map(|p| given[p]).collect()));
    }
    let downsets = order.downsets()?;
    if let Some(missing) = downsets.iter().find(|d| !given.contains_key(*d)) {
        return Err(FormatError::Incomplete(format!("α has no entry for {}", carrier.fmt_set(missing))));
    }
    if given.len() != downsets.len() {
        return Err(FormatError::Incomplete("α keys must be downsets of the carrier order".into()));
    }
    Ok(Alpha::Table(given))
}

fn set_key(carrier: &Carrier, s: &Subset) -> String {
    format!("{{{}}}", members(carrier, s).join(","))
}

/// The serializable shape of a connection.
pub fn to_file(conn: &Connection) -> DomainFile {
    let carrier = conn.carrier();
    let order_of = |p: &Poset| (!p.is_discrete()).then(|| hasse_pairs(p));
    let mut file = DomainFile {
        kind: conn.kind().as_str().to_string(),
        carrier: spec_of(carrier),
        carrier_order: None,
        abs: None,
        eta: None,
        mu: None,
        alpha: None,
        gamma: None,
    };
    match conn {
        Connection::Constructive(c) => {
            file.carrier_order = order_of(c.carrier_order());
            let p = c.abs_poset();
            file.abs = Some(AbstractSpec { elements: p.names().to_vec(), leq: hasse_pairs(p) });
            file.eta = Some((0..carrier.len()).map(|a| (c.a(a).to_string(), c.b(c.eta_at(a)).to_string())).collect());
            file.mu = Some((0..c.abs_len()).map(|b| (c.b(b).to_string(), members(carrier, c.mu_at(b)))).collect());
        }
        Connection::Gc(g) => {
            file.carrier_order = order_of(g.carrier_order());
            let p = g.abs().poset();
            file.abs = Some(AbstractSpec { elements: p.names().to_vec(), leq: hasse_pairs(p) });
            let alpha: IndexMap<String, String> = match g.alpha_repr() {
                Alpha::Join(pt) => {
                    let mut m = IndexMap::new();
                    m.insert("{}".to_string(), g.d(g.abs().bottom()).to_string());
                    for (a, &d) in pt.iter().enumerate() {
                        m.insert(set_key(carrier, &g.carrier_order().down(a)), g.d(d).to_string());
                    }
                    m
                }
                Alpha::Table(t) => {
                    let mut entries: Vec<(&Subset, &usize)> = t.iter().collect();
                    entries.sort_by_key(|(s, _)| (s.len(), (*s).clone()));
                    entries.into_iter().map(|(s, &d)| (set_key(carrier, s), g.d(d).to_string())).collect()
                }
            };
            file.alpha = Some(alpha);
            file.gamma = Some((0..g.abs().len()).map(|d| (g.d(d).to_string(), members(carrier, g.gamma(d)))).collect());
        }
        Connection::Cco(p) => {
            file.mu = Some((0..carrier.len()).map(|a| (carrier.name(a).to_string(), members(carrier, &p.phi()[a]))).collect());
        }
    }
    file
}

pub fn write_domain(conn: &Connection) -> String {
    serde_json::to_string_pretty(&to_file(conn)).expect("domain files serialize")
}

// === Function files ===

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    Concrete,
    Abstract,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub arity: usize,
    pub over: Over,
    pub table: IndexMap<String, String>,
}

/// Splits `a1,a2` at the comma that leaves two known names.
fn split_pair(names: &[String], key: &str) -> Result<(usize, usize), FormatError> {
    let found: Vec<(usize, usize)> = key
        .match_indices(',')
        .filter_map(|(i, _)| {
            let (l, r) = (&key[..i], &key[i + 1..]);
            Some((names.iter().position(|n| n == l.trim())?, names.iter().position(|n| n == r.trim())?))
        })
        .collect();
    match found.as_slice() {
        [one] => Ok(*one),
        [] => Err(FormatError::UnknownName { what: "argument pair", name: key.to_string() }),
        _ => Err(FormatError::UnknownName { what: "ambiguous argument pair", name: key.to_string() }),
    }
}

/// Reads a function table against the names of the side it lives on.
pub fn read_function(text: &str, names: &[String]) -> Result<(Over, OpTable), FormatError> {
    let file: FunctionFile = serde_json::from_str(text)?;
    function_of(&file, names).map(|t| (file.over, t))
}

pub fn function_of(file: &FunctionFile, names: &[String]) -> Result<OpTable, FormatError> {
    let n = names.len();
    let mut table: Vec<Option<usize>> = vec![None; n.pow(file.arity as u32)];
    for (k, v) in &file.table {
        let slot = match file.arity {
            1 => lookup("argument", names, k)?,
            2 => {
                let (x, y) = split_pair(names, k)?;
                x * n + y
            }
            other => return Err(FormatError::Incomplete(format!("arity {other} is not 1 or 2"))),
        };
        if table[slot].replace(lookup("result", names, v)?).is_some() {
            return Err(FormatError::Duplicate(k.clone()));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                let key = if file.arity == 1 { names[i].clone() } else { format!("{},{}", names[i / n], names[i % n]) };
                FormatError::Incomplete(format!("no entry for {key}"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OpTable::from_vec(file.arity, n, table))
}

pub fn function_file(over: Over, t: &OpTable, names: &[String]) -> FunctionFile {
    let table = t
        .tuples()
        .map(|args| {
            let key = args.iter().map(|&a| names[a].as_str()).collect::<Vec<_>>().join(",");
            (key, names[t.get(&args)].clone())
        })
        .collect();
    FunctionFile { arity: t.arity(), over, table }
}

pub fn write_function(over: Over, t: &OpTable, names: &[String]) -> String {
    serde_json::to_string_pretty(&function_file(over, t, names)).expect("function files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn builtins_round_trip() {
        for b in catalog::Builtin::ALL {
            let conn = b.build(b.min_bound()).unwrap();
            let text = write_domain(&conn);
            let back = read_domain(&text).unwrap();
            assert_eq!(write_domain(&back), text, "{b}");
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"kind":"cgc","carrier":{"atoms":["a"]},"abstract":{"elements":["x"]},"eta":{"a":"x"},"mu":{"x":["a"]},"extra":1}"#;
        assert!(matches!(read_domain(text), Err(FormatError::Json(_))));
        let ok = text.replace(r#","extra":1"#, "");
        assert!(read_domain(&ok).is_ok());
    }

    #[test]
    fn binary_keys_split_on_known_names() {
        let names: Vec<String> = ["[1,5]", "ℤ", "1", "5"].map(String::from).to_vec();
        assert_eq!(split_pair(&names, "[1,5],ℤ").unwrap(), (0, 1));
        assert_eq!(split_pair(&names, "1,5").unwrap(), (2, 3));
    }

    #[test]
    fn downset_table_reads_back_as_table() {
        let g = catalog::gen::gen_downset_gc(5, catalog::Sizes::default());
        let conn = Connection::Gc(g);
        let back = read_domain(&write_domain(&conn)).unwrap();
        assert!(matches!(back.as_gc().unwrap().alpha_repr(), Alpha::Table(_)));
    }
}
