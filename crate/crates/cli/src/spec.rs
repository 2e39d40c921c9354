//! Reading structure documents. Every document is a JSON object with a
//! `kind` field; a field that holds another structure takes either a path
//! (relative to the referencing file) or the document inline. The field
//! names are listed in the README.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use hetcat_core::category::{
    functor_from_monotone, poset_to_category, validate_category, validate_functor, CategorySpec, FiniteCategory,
    Functor, FunctorSpec,
};
use hetcat_core::freegroup::FiniteGroup;
use hetcat_core::het::{
    assemble_adjunction, check_brain_functor, check_semi_adjunction, thin_bimodule, validate_het_bimodule,
    AdjunctionWitness, BimoduleSpec, BrainFunctorWitness, Het, HetBimodule, SemiAdjunctionWitness,
};
use hetcat_core::linalg::{vector_bimodules, vector_brain};
use hetcat_core::poset::{check_monotone, product_poset, validate_poset, FinitePoset, MonotoneMap};
use hetcat_core::powerset::{
    completeness_bimodule, consistency_bimodule, delta_meet_adjunction, diagonal_map, exists_f,
    exists_inverse_adjunction, fork_bimodule, forall_f, inverse_image, join_map, meet_map, powerset_brain,
    powerset_poset, FiniteFunction,
};
use hetcat_core::{Limits, Side};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

/// A document and where it came from.
#[derive(Debug, Clone)]
pub struct Doc {
    pub value: Value,
    pub base: PathBuf,
    pub file: String,
}

impl Doc {
    pub fn kind(&self) -> Option<&str> {
        self.value.get("kind").and_then(Value::as_str)
    }

    fn schema(&self, field: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Schema {
            file: self.file.clone(),
            field: field.into(),
            message: message.into(),
        }
    }
}

pub const KINDS: &[&str] = &["poset", "category", "functor", "bimodule", "function", "group", "scenario"];

/// Reads a document and checks that its `kind` is one of [`KINDS`].
pub fn parse_spec(path: &Path) -> Result<Doc, CliError> {
    let file = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: file.clone(),
        message: e.to_string(),
    })?;
    let schema = |field: String, message: String| CliError::Schema {
        file: file.clone(),
        field,
        message,
    };
    if text.trim().is_empty() {
        return Err(schema("$".into(), "empty document".into()));
    }
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let doc = Doc {
        value,
        base: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        file,
    };
    check_kind(&doc)?;
    Ok(doc)
}

fn check_kind(doc: &Doc) -> Result<(), CliError> {
    if !doc.value.is_object() {
        return Err(doc.schema("$", "a document must be a JSON object"));
    }
    match doc.kind() {
        None => Err(doc.schema("kind", "missing or non-string kind")),
        Some(k) if !KINDS.contains(&k) => Err(doc.schema("kind", format!("unknown kind {k:?}"))),
        Some(_) => Ok(()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    #[allow(dead_code)]
    kind: String,
    builtin: Option<String>,
    elements: Option<Vec<String>>,
    #[serde(default)]
    leq: Vec<(String, String)>,
    #[serde(default)]
    close: bool,
    universe: Option<Vec<String>>,
    left: Option<Value>,
    right: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    #[allow(dead_code)]
    kind: String,
    builtin: Option<String>,
    objects: Option<Vec<String>>,
    #[serde(default)]
    arrows: Vec<(String, String, String)>,
    #[serde(default)]
    identities: Vec<(String, String)>,
    #[serde(default)]
    compose: Vec<(String, String, String)>,
    poset: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorDoc {
    #[allow(dead_code)]
    kind: String,
    builtin: Option<String>,
    dom: Option<Value>,
    cod: Option<Value>,
    #[serde(default)]
    objects: Vec<(String, String)>,
    #[serde(default)]
    arrows: Vec<(String, String)>,
    map: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionDoc {
    #[allow(dead_code)]
    kind: String,
    builtin: Option<String>,
    dom: Option<Value>,
    cod: Option<Value>,
    map: Option<Vec<(String, String)>>,
    universe: Option<Vec<String>>,
    function: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BimoduleDoc {
    #[allow(dead_code)]
    kind: String,
    builtin: Option<String>,
    src: Option<Value>,
    tgt: Option<Value>,
    #[serde(default)]
    hets: Vec<(String, String, String)>,
    #[serde(default)]
    pre: Vec<(String, String, String)>,
    #[serde(default)]
    post: Vec<(String, String, String)>,
    relation: Option<Vec<(String, String)>>,
    universe: Option<Vec<String>>,
    function: Option<Value>,
    prime: Option<u32>,
    dims: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    #[allow(dead_code)]
    kind: String,
    builtin: Option<String>,
    elements: Option<Vec<String>>,
    table: Option<Vec<Vec<String>>>,
    order: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HalfDoc {
    functor: Value,
    canonical: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    #[allow(dead_code)]
    kind: String,
    builtin: Option<String>,
    #[serde(rename = "type")]
    ty: Option<String>,
    side: Option<String>,
    functor: Option<Value>,
    bimodule: Option<Value>,
    canonical: Option<Vec<(String, String)>>,
    left: Option<HalfDoc>,
    right: Option<HalfDoc>,
    het_in: Option<Value>,
    het_out: Option<Value>,
    eta: Option<Vec<(String, String)>>,
    eps: Option<Vec<(String, String)>>,
    universe: Option<Vec<String>>,
    function: Option<Value>,
    prime: Option<u32>,
    dims: Option<Vec<usize>>,
}

/// A function document: a plain function between label sets, or a
/// monotone map between posets.
#[derive(Debug, Clone)]
pub enum LoadedFunction {
    Plain(FiniteFunction),
    Monotone(MonotoneMap),
}

/// A verified scenario.
#[derive(Debug, Clone)]
pub enum Scenario {
    Semi(SemiAdjunctionWitness),
    Adjunction { name: String, witness: AdjunctionWitness },
    Brain { name: String, witness: BrainFunctorWitness },
}

fn required<T>(doc: &Doc, field: &str, v: Option<T>) -> Result<T, CliError> {
    v.ok_or_else(|| doc.schema(field, "missing field"))
}

fn unknown_builtin(doc: &Doc, b: &str) -> CliError {
    doc.schema("builtin", format!("unknown builtin {b:?}"))
}

/// Loads structures with one set of caps.
pub struct Loader {
    pub limits: Limits,
}

impl Loader {
    pub fn new(limits: Limits) -> Self {
        Loader { limits }
    }

    fn typed<T: DeserializeOwned>(&self, doc: &Doc, kind: &str) -> Result<T, CliError> {
        check_kind(doc)?;
        let found = doc.kind().unwrap_or_default();
        if found != kind {
            return Err(doc.schema("kind", format!("expected kind {kind:?}, found {found:?}")));
        }
        serde_path_to_error::deserialize(doc.value.clone())
            .map_err(|e| doc.schema(e.path().to_string(), e.inner().to_string()))
    }

    /// A referenced document: a path relative to `parent`, or inline.
    fn resolve(&self, parent: &Doc, field: &str, v: &Value) -> Result<Doc, CliError> {
        match v {
            Value::String(s) => parse_spec(&parent.base.join(s)),
            Value::Object(_) => Ok(Doc {
                value: v.clone(),
                base: parent.base.clone(),
                file: format!("{}#{}", parent.file, field),
            }),
            _ => Err(parent.schema(field, "expected a file path or an inline document")),
        }
    }

    pub fn poset(&self, doc: &Doc) -> Result<FinitePoset, CliError> {
        let d: PosetDoc = self.typed(doc, "poset")?;
        match d.builtin.as_deref() {
            None => {
                let elements = required(doc, "elements", d.elements)?;
                let known: HashSet<&str> = elements.iter().map(String::as_str).collect();
                for (i, (a, b)) in d.leq.iter().enumerate() {
                    for (j, l) in [a, b].into_iter().enumerate() {
                        if !known.contains(l.as_str()) {
                            return Err(doc.schema(format!("leq[{i}][{j}]"), format!("unknown element {l:?}")));
                        }
                    }
                }
                Ok(validate_poset(&elements, &d.leq, d.close, &self.limits)?)
            }
            Some("powerset") => Ok(powerset_poset(&required(doc, "universe", d.universe)?, &self.limits)?),
            Some("product") => {
                let left = self.poset_ref(doc, "left", &required(doc, "left", d.left)?)?;
                let right = self.poset_ref(doc, "right", &required(doc, "right", d.right)?)?;
                Ok(product_poset(&left, &right, &self.limits)?)
            }
            Some(b) => Err(unknown_builtin(doc, b)),
        }
    }

    fn poset_ref(&self, parent: &Doc, field: &str, v: &Value) -> Result<FinitePoset, CliError> {
        self.poset(&self.resolve(parent, field, v)?).map_err(CliError::nested)
    }

    pub fn category(&self, doc: &Doc) -> Result<Arc<FiniteCategory>, CliError> {
        let d: CategoryDoc = self.typed(doc, "category")?;
        match d.builtin.as_deref() {
            None => {
                let spec = CategorySpec {
                    objects: required(doc, "objects", d.objects)?,
                    arrows: d.arrows,
                    identities: d.identities,
                    compose: d.compose,
                };
                Ok(Arc::new(validate_category(&spec, &self.limits)?))
            }
            Some("poset") => {
                let p = self.poset_ref(doc, "poset", &required(doc, "poset", d.poset)?)?;
                Ok(Arc::new(poset_to_category(&p, &self.limits)?))
            }
            Some(b) => Err(unknown_builtin(doc, b)),
        }
    }

    fn category_ref(&self, parent: &Doc, field: &str, v: &Value) -> Result<Arc<FiniteCategory>, CliError> {
        self.category(&self.resolve(parent, field, v)?).map_err(CliError::nested)
    }

    pub fn functor(&self, doc: &Doc) -> Result<Functor, CliError> {
        let d: FunctorDoc = self.typed(doc, "functor")?;
        match d.builtin.as_deref() {
            None => {
                let dom = self.category_ref(doc, "dom", &required(doc, "dom", d.dom)?)?;
                let cod = self.category_ref(doc, "cod", &required(doc, "cod", d.cod)?)?;
                let spec = FunctorSpec {
                    object_map: d.objects,
                    arrow_map: d.arrows,
                };
                Ok(validate_functor(dom, cod, &spec)?)
            }
            Some("from_monotone") => {
                let map = self.monotone_ref(doc, "map", &required(doc, "map", d.map)?)?;
                let dom = Arc::new(poset_to_category(map.dom(), &self.limits)?);
                let cod = Arc::new(poset_to_category(map.cod(), &self.limits)?);
                Ok(functor_from_monotone(&map, dom, cod)?)
            }
            Some(b) => Err(unknown_builtin(doc, b)),
        }
    }

    fn functor_ref(&self, parent: &Doc, field: &str, v: &Value) -> Result<Functor, CliError> {
        self.functor(&self.resolve(parent, field, v)?).map_err(CliError::nested)
    }

    pub fn function(&self, doc: &Doc) -> Result<LoadedFunction, CliError> {
        let d: FunctionDoc = self.typed(doc, "function")?;
        let l = &self.limits;
        let universe = |u: Option<Vec<String>>| required(doc, "universe", u);
        let plain = |v: Option<Value>| -> Result<FiniteFunction, CliError> {
            match self.function_ref(doc, "function", &required(doc, "function", v)?)? {
                LoadedFunction::Plain(f) => Ok(f),
                LoadedFunction::Monotone(_) => Err(doc.schema("function", "expected a function between label sets")),
            }
        };
        let m = match d.builtin.as_deref() {
            None => {
                let dom = required(doc, "dom", d.dom)?;
                let cod = required(doc, "cod", d.cod)?;
                let map = required(doc, "map", d.map)?;
                if let (Value::Array(_), Value::Array(_)) = (&dom, &cod) {
                    let labels = |field: &str, v: Value| {
                        serde_json::from_value::<Vec<String>>(v)
                            .map_err(|e| doc.schema(field, format!("expected a label array: {e}")))
                    };
                    let (dom, cod) = (labels("dom", dom)?, labels("cod", cod)?);
                    return Ok(LoadedFunction::Plain(FiniteFunction::new(&dom, &cod, &map, l)?));
                }
                let dom = Arc::new(self.poset_ref(doc, "dom", &dom)?);
                let cod = Arc::new(self.poset_ref(doc, "cod", &cod)?);
                check_monotone(dom, cod, &map)?
            }
            Some("diagonal") => diagonal_map(&universe(d.universe)?, l)?,
            Some("meet") => meet_map(&universe(d.universe)?, l)?,
            Some("join") => join_map(&universe(d.universe)?, l)?,
            Some("inverse_image") => inverse_image(&plain(d.function)?, l)?,
            Some("exists") => exists_f(&plain(d.function)?, l)?,
            Some("forall") => forall_f(&plain(d.function)?, l)?,
            Some(b) => return Err(unknown_builtin(doc, b)),
        };
        Ok(LoadedFunction::Monotone(m))
    }

    fn function_ref(&self, parent: &Doc, field: &str, v: &Value) -> Result<LoadedFunction, CliError> {
        self.function(&self.resolve(parent, field, v)?).map_err(CliError::nested)
    }

    fn monotone_ref(&self, parent: &Doc, field: &str, v: &Value) -> Result<MonotoneMap, CliError> {
        match self.function_ref(parent, field, v)? {
            LoadedFunction::Monotone(m) => Ok(m),
            LoadedFunction::Plain(_) => Err(parent.schema(field, "expected a monotone map between posets")),
        }
    }

    fn plain_ref(&self, parent: &Doc, field: &str, v: &Value) -> Result<FiniteFunction, CliError> {
        match self.function_ref(parent, field, v)? {
            LoadedFunction::Plain(f) => Ok(f),
            LoadedFunction::Monotone(_) => Err(parent.schema(field, "expected a function between label sets")),
        }
    }

    /// A monotone map given by a file path, as used by `check galois`.
    pub fn monotone_file(&self, path: &Path) -> Result<MonotoneMap, CliError> {
        let doc = parse_spec(path)?;
        match self.function(&doc).map_err(CliError::nested)? {
            LoadedFunction::Monotone(m) => Ok(m),
            LoadedFunction::Plain(_) => Err(doc.schema("dom", "expected a monotone map between posets")),
        }
    }

    /// A plain function given by a file path, as used by the demos.
    pub fn plain_file(&self, path: &Path) -> Result<FiniteFunction, CliError> {
        let doc = parse_spec(path)?;
        match self.function(&doc).map_err(CliError::nested)? {
            LoadedFunction::Plain(f) => Ok(f),
            LoadedFunction::Monotone(_) => Err(doc.schema("dom", "expected a function between label sets")),
        }
    }

    pub fn bimodule(&self, doc: &Doc) -> Result<HetBimodule, CliError> {
        let d: BimoduleDoc = self.typed(doc, "bimodule")?;
        let l = &self.limits;
        let vector = |prime: Option<u32>, dims: Option<Vec<usize>>| -> Result<_, CliError> {
            Ok(vector_bimodules(required(doc, "prime", prime)?, &required(doc, "dims", dims)?, l)?)
        };
        match d.builtin.as_deref() {
            None => {
                let src = self.category_ref(doc, "src", &required(doc, "src", d.src)?)?;
                let tgt = self.category_ref(doc, "tgt", &required(doc, "tgt", d.tgt)?)?;
                if let Some(rel) = d.relation {
                    for (i, (x, a)) in rel.iter().enumerate() {
                        if src.object(x).is_none() {
                            return Err(doc.schema(format!("relation[{i}][0]"), format!("unknown object {x:?}")));
                        }
                        if tgt.object(a).is_none() {
                            return Err(doc.schema(format!("relation[{i}][1]"), format!("unknown object {a:?}")));
                        }
                    }
                    let pairs: HashSet<(usize, usize)> = rel
                        .iter()
                        .map(|(x, a)| (src.object(x).unwrap().0, tgt.object(a).unwrap().0))
                        .collect();
                    return Ok(thin_bimodule(src, tgt, |x, a| pairs.contains(&(x.0, a.0)), l)?);
                }
                let spec = BimoduleSpec {
                    hets: d.hets,
                    pre: d.pre,
                    post: d.post,
                };
                Ok(validate_het_bimodule(src, tgt, &spec, l)?)
            }
            Some("fork") => Ok(fork_bimodule(&required(doc, "universe", d.universe)?, l)?),
            Some("completeness") => {
                let f = self.plain_ref(doc, "function", &required(doc, "function", d.function)?)?;
                Ok(completeness_bimodule(&f, l)?)
            }
            Some("consistency") => {
                let f = self.plain_ref(doc, "function", &required(doc, "function", d.function)?)?;
                Ok(consistency_bimodule(&f, l)?)
            }
            Some("cocone") => Ok(vector(d.prime, d.dims)?.0),
            Some("cone") => Ok(vector(d.prime, d.dims)?.1),
            Some(b) => Err(unknown_builtin(doc, b)),
        }
    }

    fn bimodule_ref(&self, parent: &Doc, field: &str, v: &Value) -> Result<Arc<HetBimodule>, CliError> {
        Ok(Arc::new(self.bimodule(&self.resolve(parent, field, v)?).map_err(CliError::nested)?))
    }

    pub fn group(&self, doc: &Doc) -> Result<FiniteGroup, CliError> {
        let d: GroupDoc = self.typed(doc, "group")?;
        match d.builtin.as_deref() {
            None => {
                let elements = required(doc, "elements", d.elements)?;
                let table = required(doc, "table", d.table)?;
                Ok(FiniteGroup::new(&elements, &table, &self.limits)?)
            }
            Some("cyclic") => Ok(FiniteGroup::cyclic(required(doc, "order", d.order)?, &self.limits)?),
            Some("s3") => Ok(FiniteGroup::symmetric3()),
            Some(b) => Err(unknown_builtin(doc, b)),
        }
    }

    pub fn group_file(&self, path: &Path) -> Result<FiniteGroup, CliError> {
        self.group(&parse_spec(path)?).map_err(CliError::nested)
    }

    /// Loads a scenario and runs its verification. Law failures come back as
    /// `CliError::Violations`.
    pub fn scenario(&self, doc: &Doc) -> Result<Scenario, CliError> {
        let d: ScenarioDoc = self.typed(doc, "scenario")?;
        let l = &self.limits;
        if let Some(b) = d.builtin.as_deref() {
            let name = b.to_string();
            return match b {
                "delta-meet" => Ok(Scenario::Adjunction {
                    name,
                    witness: delta_meet_adjunction(&required(doc, "universe", d.universe)?, l)?,
                }),
                "exists-inverse" => {
                    let f = self.plain_ref(doc, "function", &required(doc, "function", d.function)?)?;
                    Ok(Scenario::Adjunction {
                        name,
                        witness: exists_inverse_adjunction(&f, l)?,
                    })
                }
                "powerset-brain" => {
                    let f = self.plain_ref(doc, "function", &required(doc, "function", d.function)?)?;
                    Ok(Scenario::Brain {
                        name,
                        witness: powerset_brain(&f, l)?,
                    })
                }
                "vector-brain" => Ok(Scenario::Brain {
                    name,
                    witness: vector_brain(required(doc, "prime", d.prime)?, &required(doc, "dims", d.dims)?, l)?,
                }),
                b => Err(unknown_builtin(doc, b)),
            };
        }
        match required(doc, "type", d.ty)?.as_str() {
            "semi-adjunction" => {
                let side = match required(doc, "side", d.side)?.as_str() {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    s => return Err(doc.schema("side", format!("expected \"left\" or \"right\", found {s:?}"))),
                };
                let functor = self.functor_ref(doc, "functor", &required(doc, "functor", d.functor)?)?;
                let bm = self.bimodule_ref(doc, "bimodule", &required(doc, "bimodule", d.bimodule)?)?;
                let canonical = canonical_hets(doc, "canonical", &bm, &functor, &required(doc, "canonical", d.canonical)?)?;
                Ok(Scenario::Semi(check_semi_adjunction(side, &functor, &canonical, &bm)?))
            }
            "adjunction" => {
                let bm = self.bimodule_ref(doc, "bimodule", &required(doc, "bimodule", d.bimodule)?)?;
                let half = |field: &str, h: Option<HalfDoc>, side: Side| -> Result<SemiAdjunctionWitness, CliError> {
                    let h = required(doc, field, h)?;
                    let functor = self.functor_ref(doc, &format!("{field}.functor"), &h.functor)?;
                    let canonical = canonical_hets(doc, &format!("{field}.canonical"), &bm, &functor, &h.canonical)?;
                    Ok(check_semi_adjunction(side, &functor, &canonical, &bm)?)
                };
                let left = half("left", d.left, Side::Left);
                let right = half("right", d.right, Side::Right);
                let (left, right) = merge_violations(left, right)?;
                Ok(Scenario::Adjunction {
                    name: "adjunction".into(),
                    witness: assemble_adjunction(&left, &right)?,
                })
            }
            "brain" => {
                let brain = self.functor_ref(doc, "functor", &required(doc, "functor", d.functor)?)?;
                let het_in = self.bimodule_ref(doc, "het_in", &required(doc, "het_in", d.het_in)?)?;
                let het_out = self.bimodule_ref(doc, "het_out", &required(doc, "het_out", d.het_out)?)?;
                let eta = canonical_hets(doc, "eta", &het_in, &brain, &required(doc, "eta", d.eta)?)?;
                let eps = canonical_hets(doc, "eps", &het_out, &brain, &required(doc, "eps", d.eps)?)?;
                Ok(Scenario::Brain {
                    name: "brain".into(),
                    witness: check_brain_functor(&brain, &het_in, &het_out, &eta, &eps)?,
                })
            }
            t => Err(doc.schema("type", format!("unknown scenario type {t:?}"))),
        }
    }
}

/// Both halves' violations, in left-then-right order, or both witnesses.
fn merge_violations<A, B>(
    left: Result<A, CliError>,
    right: Result<B, CliError>,
) -> Result<(A, B), CliError> {
    match (left, right) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        (Err(CliError::Violations(mut a)), Err(CliError::Violations(b))) => {
            a.extend(b);
            Err(CliError::Violations(a))
        }
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

/// Canonical hets keyed by the functor's domain objects, in object order.
fn canonical_hets(
    doc: &Doc,
    field: &str,
    bm: &HetBimodule,
    functor: &Functor,
    pairs: &[(String, String)],
) -> Result<Vec<Het>, CliError> {
    let dom = functor.dom();
    let mut out = vec![None; dom.object_count()];
    for (i, (o, h)) in pairs.iter().enumerate() {
        let ob = dom
            .object(o)
            .ok_or_else(|| doc.schema(format!("{field}[{i}][0]"), format!("unknown object {o:?}")))?;
        let het = bm
            .het(h)
            .ok_or_else(|| doc.schema(format!("{field}[{i}][1]"), format!("unknown het {h:?}")))?;
        if out[ob.0].replace(het).is_some() {
            return Err(doc.schema(format!("{field}[{i}][0]"), format!("object {o:?} is given twice")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, h)| {
            h.ok_or_else(|| {
                doc.schema(
                    field,
                    format!("no canonical het for object {:?}", dom.object_label(hetcat_core::category::Ob(i))),
                )
            })
        })
        .collect()
}
