//! Read-through cache of Witt structure polynomials, kept in memory and
//! optionally persisted as one JSON document per `(S, op)`.
//!
//! Documents are written to a temporary file in the cache directory and
//! renamed into place, so readers never see a partial file. Entries are
//! deterministic, so concurrent writers may race harmlessly.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use cyclobar_core::witt::{structure_polynomials, IntPolynomial, StructurePolynomials, TruncationSet, WittOp};
use cyclobar_core::BigInt;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::table::big;

type Key = (Vec<u64>, &'static str);

#[derive(Debug, Default)]
pub struct WittPolynomialCache {
    dir: Option<PathBuf>,
    entries: RwLock<HashMap<Key, Arc<StructurePolynomials>>>,
}

pub fn file_name(set: &TruncationSet, op: WittOp) -> String {
    format!("witt-{}-S{}.json", op.name(), set.label())
}

pub fn to_document(sp: &StructurePolynomials) -> Value {
    let names = sp.variable_names();
    let components: Vec<Value> = sp
        .components()
        .iter()
        .map(|poly| {
            let terms: Vec<Value> = poly
                .terms()
                .map(|(exps, c)| {
                    let exponents: Map<String, Value> = exps
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| (names[i].clone(), json!(e)))
                        .collect();
                    json!({"exponents": exponents, "coefficient": big(c)})
                })
                .collect();
            Value::Array(terms)
        })
        .collect();
    json!({
        "set": sp.set().elements(),
        "op": sp.op().name(),
        "components": components,
    })
}

fn malformed(what: &str) -> CliError {
    CliError::Cache(format!("malformed cache document: {what}"))
}

/// Parses a cache document and checks it against the ghost equations.
pub fn from_document(doc: &Value) -> Result<StructurePolynomials, CliError> {
    let set: Vec<u64> = doc["set"]
        .as_array()
        .ok_or_else(|| malformed("set"))?
        .iter()
        .map(|v| v.as_u64().ok_or_else(|| malformed("set element")))
        .collect::<Result<_, _>>()?;
    let set = TruncationSet::new(set)?;
    let op = match doc["op"].as_str() {
        Some("add") => WittOp::Add,
        Some("mul") => WittOp::Mul,
        _ => return Err(malformed("op")),
    };
    let k = set.len();
    let index = |name: &str| -> Option<usize> {
        let (side, e) = name.split_at_checked(1)?;
        let pos = set.index_of(e.parse().ok()?)?;
        match side {
            "x" => Some(pos),
            "y" => Some(k + pos),
            _ => None,
        }
    };
    let components = doc["components"]
        .as_array()
        .ok_or_else(|| malformed("components"))?
        .iter()
        .map(|terms| {
            let terms = terms.as_array().ok_or_else(|| malformed("component"))?;
            let mut parsed = Vec::with_capacity(terms.len());
            for t in terms {
                let mut exps = vec![0u32; 2 * k];
                for (name, e) in t["exponents"].as_object().ok_or_else(|| malformed("exponents"))? {
                    let i = index(name).ok_or_else(|| malformed("variable name"))?;
                    exps[i] = e
                        .as_u64()
                        .and_then(|e| u32::try_from(e).ok())
                        .ok_or_else(|| malformed("exponent"))?;
                }
                let c: BigInt = match &t["coefficient"] {
                    Value::Number(n) => n.to_string().parse().map_err(|_| malformed("coefficient"))?,
                    _ => return Err(malformed("coefficient")),
                };
                parsed.push((exps, c));
            }
            Ok(IntPolynomial::from_terms(2 * k, parsed))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(StructurePolynomials::from_components(set, op, components)?)
}

impl WittPolynomialCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self {
            dir,
            entries: RwLock::default(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, set: &TruncationSet, op: WittOp) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(file_name(set, op)))
    }

    /// Memory, then disk, then computation. A document that fails to parse
    /// or verify is recomputed and overwritten.
    pub fn get(&self, set: &TruncationSet, op: WittOp) -> Result<Arc<StructurePolynomials>, CliError> {
        let key = (set.elements().to_vec(), op.name());
        if let Some(sp) = self.entries.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(sp));
        }
        let path = self.path_for(set, op);
        let loaded = match &path {
            Some(p) if p.exists() => match Self::load(p) {
                Ok(sp) if sp.set() == set && sp.op() == op => Some(sp),
                Ok(_) => None,
                Err(e) => {
                    eprintln!("cyclobar: ignoring {}: {e}", p.display());
                    None
                }
            },
            _ => None,
        };
        let sp = match loaded {
            Some(sp) => sp,
            None => {
                let sp = structure_polynomials(set, op)?;
                if let Some(p) = &path {
                    Self::store(p, &sp)?;
                }
                sp
            }
        };
        Ok(self.insert(sp))
    }

    /// Adds an entry (already verified by construction); last writer wins.
    pub fn insert(&self, sp: StructurePolynomials) -> Arc<StructurePolynomials> {
        let key = (sp.set().elements().to_vec(), sp.op().name());
        let sp = Arc::new(sp);
        self.entries.write().expect("cache lock").insert(key, Arc::clone(&sp));
        sp
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn load(path: &Path) -> Result<StructurePolynomials, CliError> {
        let text = std::fs::read_to_string(path)?;
        let doc: Value = serde_json::from_str(&text).map_err(|e| CliError::Cache(e.to_string()))?;
        from_document(&doc)
    }

    fn store(path: &Path, sp: &StructurePolynomials) -> Result<(), CliError> {
        let dir = path.parent().expect("cache files live in a directory");
        std::fs::create_dir_all(dir)?;
        let mut text = serde_json::to_string_pretty(&to_document(sp)).expect("values serialize");
        text.push('\n');
        let tmp = tempfile::NamedTempFile::new_in(dir)?;
        std::fs::write(tmp.path(), text)?;
        tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
        Ok(())
    }
}
