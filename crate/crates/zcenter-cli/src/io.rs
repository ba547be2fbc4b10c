//! Category and algebra files: loading with field-path errors, canonical serialization, digests.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use zcenter::algebra::Algebra;
use zcenter::builtin;
use zcenter::data::{AlgebraData, CategoryData};
use zcenter::ihom::{ihom_algebra, internal_hom};
use zcenter::module::Module;
use zcenter::Category;

/// Malformed or structurally invalid input. Maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        InputError(format!("{}: at {}: {}", origin, if path.is_empty() { "." } else { &path }, e.inner()))
    })
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

pub fn parse_category(text: &str, origin: &str) -> Result<CategoryData, InputError> {
    parse(text, origin)
}

pub fn parse_algebra(text: &str, origin: &str) -> Result<AlgebraData, InputError> {
    parse(text, origin)
}

/// A loaded category together with the canonical text its digest is taken over.
pub struct LoadedCategory {
    pub source: String,
    pub data: CategoryData,
    pub cat: Category,
}

/// `spec` is a file path, or one of the bundled names when no such file exists.
pub fn load_category(spec: &str, tol: Option<f64>) -> Result<LoadedCategory, InputError> {
    let path = PathBuf::from(spec);
    let mut data = if path.exists() {
        parse_category(&read(&path)?, spec)?
    } else if let Some(d) = builtin::by_name(spec) {
        d
    } else {
        return Err(InputError(format!("{}: no such file or bundled category", spec)));
    };
    if let Some(t) = tol {
        data.tolerance = t;
    }
    let cat = Category::from_data(&data).map_err(|e| InputError(format!("{}: {}", spec, e)))?;
    Ok(LoadedCategory { source: spec.to_string(), data, cat })
}

pub struct LoadedAlgebra {
    pub source: String,
    /// Canonical description for the digest: the file contents or the keyword.
    pub canonical: String,
    pub algebra: Algebra,
}

/// `trivial`, `ihom:<simple>` for the algebra [x,x], or a path to an algebra file.
pub fn load_algebra(spec: &str, cat: &Category) -> Result<LoadedAlgebra, InputError> {
    if spec == "trivial" {
        return Ok(LoadedAlgebra { source: spec.into(), canonical: spec.into(), algebra: Algebra::trivial(cat) });
    }
    if let Some(name) = spec.strip_prefix("ihom:") {
        let x = cat.index_of(name).ok_or_else(|| InputError(format!("{}: unknown simple {}", spec, name)))?;
        let one = Arc::new(Algebra::trivial(cat));
        let mut m = Module::right_free(cat, &cat.simple(x), &one);
        m.name = name.to_string();
        let ih = internal_hom(cat, &m, &m);
        let algebra = ihom_algebra(cat, &ih).map_err(|e| InputError(format!("{}: {}", spec, e)))?;
        return Ok(LoadedAlgebra { source: spec.into(), canonical: spec.into(), algebra });
    }
    let d = parse_algebra(&read(Path::new(spec))?, spec)?;
    let algebra = Algebra::from_data(cat, &d).map_err(|e| InputError(format!("{}: {}", spec, e)))?;
    Ok(LoadedAlgebra { source: spec.into(), canonical: canonical_json(&d), algebra })
}

/// Pretty JSON in which arrays of scalars stay on one line. Stable for equal values.
pub fn canonical_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    let mut out = String::new();
    emit(&value, 0, &mut out);
    out.push('\n');
    out
}

fn flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn emit(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(items) if !flat(v) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad);
                emit(x, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (k, (key, x)) in m.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad, Value::String(key.clone()));
                emit(x, depth + 1, out);
                out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            let _ = write!(out, "[{}]", parts.join(", "));
        }
        _ => out.push_str(&v.to_string()),
    }
}

pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}
