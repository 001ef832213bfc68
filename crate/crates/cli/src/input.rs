//! Reading instance files. Every input is JSON; nested rings and categories are
//! either inline objects or paths relative to the referencing file.

use crate::locate;
use peirce::finring::{ring_from_spec, FiniteRing, RingSpec};
use peirce::smallcat::{category_from_spec, CategorySpec, Monoid, SmallCategory};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{message}")]
    Library { kind: &'static str, message: String },
}

impl InputError {
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Parse { .. } => "ParseError",
            InputError::Io { .. } => "IoError",
            InputError::Library { kind, .. } => kind,
        }
    }
}

macro_rules! library_error {
    ($($t:ty),*) => {$(
        impl From<$t> for InputError {
            fn from(e: $t) -> Self {
                InputError::Library { kind: e.kind(), message: e.to_string() }
            }
        }
    )*};
}
library_error!(
    peirce::finring::RingError,
    peirce::idempotents::IdempotentError,
    peirce::smallcat::CategoryError,
    peirce::graded::GradingError,
    peirce::skewalg::SkewError,
    peirce::corpus::CorpusError
);

/// Where an input came from and the SHA-256 of its canonical JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Source {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

pub fn digest<T: Serialize>(value: &T) -> String {
    let canonical = serde_json::to_value(value).expect("specs serialize").to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// A JSON document and the file it was read from.
struct Document {
    path: PathBuf,
    text: String,
}

impl Document {
    fn read(path: &Path) -> Result<Document, InputError> {
        let text = std::fs::read_to_string(path).map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Ok(Document { path: path.to_path_buf(), text })
    }

    fn name(&self) -> String {
        self.path.display().to_string()
    }

    fn parse<T: DeserializeOwned>(&self) -> Result<T, InputError> {
        serde_json::from_str(&self.text).map_err(|e| InputError::Parse {
            path: self.name(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    fn error_at(&self, pos: Option<(usize, usize)>, message: String) -> InputError {
        let (line, column) = pos.unwrap_or((1, 1));
        InputError::Parse { path: self.name(), line, column, message }
    }

    /// A field that holds either an inline `T` or a path to a file containing one.
    fn reference<T: DeserializeOwned>(&self, key: &str, value: Value, index: Option<usize>) -> Result<(T, Source, Option<Document>), InputError> {
        let pos = || match index {
            Some(i) => locate::array_element(&self.text, key, i),
            None => locate::key(&self.text, key),
        };
        match value {
            Value::String(rel) => {
                let path = self.path.parent().unwrap_or(Path::new("")).join(&rel);
                let doc = Document::read(&path)?;
                let v = doc.parse()?;
                Ok((v, Source { role: key.into(), path: path.display().to_string(), sha256: String::new() }, Some(doc)))
            }
            other => {
                let v = serde_json::from_value(other).map_err(|e| self.error_at(pos(), format!("{key}: {e}")))?;
                let name = match index {
                    Some(i) => format!("{}#{key}[{i}]", self.name()),
                    None => format!("{}#{key}", self.name()),
                };
                Ok((v, Source { role: key.into(), path: name, sha256: String::new() }, None))
            }
        }
    }
}

pub struct Loaded<T> {
    pub value: T,
    pub sources: Vec<Source>,
}

fn source<T: Serialize>(role: &str, doc: &Document, spec: &T) -> Source {
    Source { role: role.into(), path: doc.name(), sha256: digest(spec) }
}

pub fn load_ring(path: &Path) -> Result<Loaded<FiniteRing>, InputError> {
    let doc = Document::read(path)?;
    let spec: RingSpec = doc.parse()?;
    let ring = ring_from_spec(&spec)?;
    Ok(Loaded { sources: vec![source("ring", &doc, &spec)], value: ring })
}

/// Reject dangling indices with a position before semantic validation.
fn check_category_indices(spec: &CategorySpec, doc: Option<&Document>, fallback: &str) -> Result<(), InputError> {
    let fail = |key: &str, i: usize, message: String| match doc {
        Some(d) => d.error_at(locate::array_element(&d.text, key, i), message),
        None => InputError::Parse { path: fallback.into(), line: 1, column: 1, message: format!("{key}[{i}]: {message}") },
    };
    let (p, q) = (spec.objects, spec.morphisms.len());
    for (k, m) in spec.morphisms.iter().enumerate() {
        for (end, o) in [("dom", m.dom), ("cod", m.cod)] {
            if o >= p {
                return Err(fail("morphisms", k, format!("morphism {k} has {end} {o}, but there are only {p} objects")));
            }
        }
    }
    if let Some(a) = spec.identities.iter().position(|&g| g >= q) {
        return Err(fail("identities", a, format!("identity of object {a} is morphism {}, but there are only {q} morphisms", spec.identities[a])));
    }
    if let Some(t) = spec.compose.iter().position(|c| c.iter().any(|&g| g >= q)) {
        return Err(fail("compose", t, format!("composition entry {:?} names a morphism outside 0..{q}", spec.compose[t])));
    }
    Ok(())
}

fn category_from_doc(spec: CategorySpec, doc: Option<&Document>, name: &str) -> Result<SmallCategory, InputError> {
    check_category_indices(&spec, doc, name)?;
    Ok(category_from_spec(&spec)?)
}

pub fn load_category(path: &Path) -> Result<Loaded<SmallCategory>, InputError> {
    let doc = Document::read(path)?;
    let spec: CategorySpec = doc.parse()?;
    let cat = category_from_doc(spec.clone(), Some(&doc), &doc.name())?;
    Ok(Loaded { sources: vec![source("category", &doc, &spec)], value: cat })
}

pub fn load_monoid(path: &Path) -> Result<Loaded<Monoid>, InputError> {
    let doc = Document::read(path)?;
    let monoid: Monoid = doc.parse()?;
    let src = source("monoid", &doc, &monoid);
    Ok(Loaded { value: monoid.validated()?, sources: vec![src] })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IdempotentFile {
    Bare(Vec<Vec<u64>>),
    Full {
        #[serde(default)]
        ring: Option<Value>,
        idempotents: Vec<Vec<u64>>,
    },
}

/// An idempotent-set file, with the ring from `ring_path` or from the file's own `ring` field.
pub fn load_idempotents(ring_path: Option<&Path>, path: &Path) -> Result<Loaded<(FiniteRing, Vec<Vec<u64>>)>, InputError> {
    let doc = Document::read(path)?;
    let (embedded, idempotents) = match doc.parse()? {
        IdempotentFile::Bare(v) => (None, v),
        IdempotentFile::Full { ring, idempotents } => (ring, idempotents),
    };
    let (ring, mut sources) = match (ring_path, embedded) {
        (Some(rp), _) => {
            let l = load_ring(rp)?;
            (l.value, l.sources)
        }
        (None, Some(value)) => {
            let (spec, mut src, _): (RingSpec, _, _) = doc.reference("ring", value, None)?;
            src.sha256 = digest(&spec);
            (ring_from_spec(&spec)?, vec![src])
        }
        (None, None) => {
            return Err(doc.error_at(Some((1, 1)), "no ring given: pass a ring file or add a \"ring\" field".into()));
        }
    };
    sources.push(source("idempotents", &doc, &idempotents));
    Ok(Loaded { value: (ring, idempotents), sources })
}

#[derive(Deserialize)]
struct GradingFile {
    ring: Value,
    category: Value,
    components: Vec<Vec<Vec<u64>>>,
}

pub struct GradingInput {
    pub ring: FiniteRing,
    pub category: SmallCategory,
    pub components: Vec<Vec<Vec<u64>>>,
}

pub fn load_grading(path: &Path) -> Result<Loaded<GradingInput>, InputError> {
    let doc = Document::read(path)?;
    let file: GradingFile = doc.parse()?;
    let (ring_spec, mut ring_src, _): (RingSpec, _, _) = doc.reference("ring", file.ring, None)?;
    ring_src.sha256 = digest(&ring_spec);
    let (cat_spec, mut cat_src, cat_doc): (CategorySpec, _, _) = doc.reference("category", file.category, None)?;
    cat_src.sha256 = digest(&cat_spec);
    let ring = ring_from_spec(&ring_spec)?;
    let category = category_from_doc(cat_spec, cat_doc.as_ref(), &cat_src.path)?;
    let grading_src = source("components", &doc, &file.components);
    Ok(Loaded {
        value: GradingInput { ring, category, components: file.components },
        sources: vec![ring_src, cat_src, grading_src],
    })
}

#[derive(Deserialize)]
struct SystemFile {
    category: Value,
    object_rings: Vec<Value>,
    maps: Vec<Vec<Vec<u64>>>,
}

pub struct SystemInput {
    pub category: SmallCategory,
    pub object_rings: Vec<FiniteRing>,
    pub maps: Vec<Vec<Vec<u64>>>,
}

pub fn load_system(path: &Path) -> Result<Loaded<SystemInput>, InputError> {
    let doc = Document::read(path)?;
    let file: SystemFile = doc.parse()?;
    let (cat_spec, mut cat_src, cat_doc): (CategorySpec, _, _) = doc.reference("category", file.category, None)?;
    cat_src.sha256 = digest(&cat_spec);
    let category = category_from_doc(cat_spec, cat_doc.as_ref(), &cat_src.path)?;
    let mut sources = vec![cat_src];
    let mut object_rings = Vec::new();
    for (i, v) in file.object_rings.into_iter().enumerate() {
        let (spec, mut src, _): (RingSpec, _, _) = doc.reference("object_rings", v, Some(i))?;
        src.sha256 = digest(&spec);
        object_rings.push(ring_from_spec(&spec)?);
        sources.push(src);
    }
    sources.push(source("maps", &doc, &file.maps));
    Ok(Loaded { value: SystemInput { category, object_rings, maps: file.maps }, sources })
}
