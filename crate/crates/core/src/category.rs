//! Finite categories given by explicit composition tables, functors between
//! them, and the brute-force search for universals.
//!
//! Composition is written in the classical order: `compose(g, f)` is "f then
//! g" and is defined exactly when `src(g) = tgt(f)`. Hom-sets are
//! materialised per object pair when a category is built, so "there is a
//! unique arrow" is a length-1 test on a slice.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::limits::{ensure, CapExceeded, Limits};
use crate::poset::{FinitePoset, MonotoneMap};

/// Index of an object in its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ob(pub usize);

/// Index of an arrow in its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct ArrowData {
    label: String,
    src: Ob,
    tgt: Ob,
}

/// A validated finite category.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    object_index: HashMap<String, Ob>,
    arrows: Vec<ArrowData>,
    arrow_index: HashMap<String, Mor>,
    identities: Vec<Mor>,
    compose: HashMap<(Mor, Mor), Mor>,
    homs: Vec<Vec<Mor>>,
}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("objects", &self.objects.len())
            .field("arrows", &self.arrows.len())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryViolation {
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("object {0} has no identity")]
    MissingIdentity(String),
    #[error("composition gap: {0} . {1} is undefined")]
    CompositionGap(String, String),
    #[error("identity law fails for {0}")]
    IdentityViolation(String),
    #[error("associativity fails: {0} . ({1} . {2}) != ({0} . {1}) . {2}")]
    AssociativityViolation(String, String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("{0} . {1} is given two different values")]
    ConflictingComposition(String, String),
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
    #[error("{} category violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<CategoryViolation>),
}

/// Incremental, index-based construction of a category. `build` runs the
/// full validation.
#[derive(Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    object_index: HashMap<String, Ob>,
    arrows: Vec<ArrowData>,
    arrow_index: HashMap<String, Mor>,
    identities: Vec<Option<Mor>>,
    compose: HashMap<(Mor, Mor), Mor>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> Result<Ob, CategoryError> {
        let label = label.into();
        let ob = Ob(self.objects.len());
        if self.object_index.insert(label.clone(), ob).is_some() {
            return Err(CategoryError::DuplicateLabel(label));
        }
        self.objects.push(label);
        self.identities.push(None);
        Ok(ob)
    }

    pub fn add_arrow(&mut self, label: impl Into<String>, src: Ob, tgt: Ob) -> Result<Mor, CategoryError> {
        let label = label.into();
        let m = Mor(self.arrows.len());
        if self.arrow_index.insert(label.clone(), m).is_some() {
            return Err(CategoryError::DuplicateLabel(label));
        }
        self.arrows.push(ArrowData { label, src, tgt });
        Ok(m)
    }

    pub fn set_identity(&mut self, ob: Ob, m: Mor) {
        self.identities[ob.0] = Some(m);
    }

    /// Records `g ∘ f = gf`.
    pub fn set_compose(&mut self, g: Mor, f: Mor, gf: Mor) -> Result<(), CategoryError> {
        match self.compose.insert((g, f), gf) {
            Some(old) if old != gf => Err(CategoryError::ConflictingComposition(
                self.arrows[g.0].label.clone(),
                self.arrows[f.0].label.clone(),
            )),
            _ => Ok(()),
        }
    }

    pub fn object(&self, label: &str) -> Option<Ob> {
        self.object_index.get(label).copied()
    }

    pub fn arrow(&self, label: &str) -> Option<Mor> {
        self.arrow_index.get(label).copied()
    }

    pub fn build(self, limits: &Limits) -> Result<FiniteCategory, CategoryError> {
        ensure("object count", self.objects.len(), limits.max_elements)?;
        ensure("arrow count", self.arrows.len(), limits.max_arrows)?;
        let n = self.objects.len();
        let lbl = |m: Mor| self.arrows[m.0].label.clone();
        let mut violations = Vec::new();

        let mut homs = vec![Vec::new(); n * n];
        for (i, a) in self.arrows.iter().enumerate() {
            homs[a.src.0 * n + a.tgt.0].push(Mor(i));
        }

        let mut identities = Vec::with_capacity(n);
        for (i, id) in self.identities.iter().enumerate() {
            match id {
                None => violations.push(CategoryViolation::MissingIdentity(self.objects[i].clone())),
                Some(m) => {
                    let a = &self.arrows[m.0];
                    if a.src.0 != i || a.tgt.0 != i {
                        violations.push(CategoryViolation::EndpointMismatch(format!(
                            "identity {} of {} is not an endomorphism of it",
                            a.label, self.objects[i]
                        )));
                    }
                    identities.push(*m);
                }
            }
        }

        let mut keys: Vec<_> = self.compose.keys().copied().collect();
        keys.sort();
        for (g, f) in keys {
            let gf = self.compose[&(g, f)];
            let (ga, fa, ca) = (&self.arrows[g.0], &self.arrows[f.0], &self.arrows[gf.0]);
            if ga.src != fa.tgt {
                violations.push(CategoryViolation::EndpointMismatch(format!(
                    "{} . {} is given but the arrows are not composable",
                    ga.label, fa.label
                )));
            } else if ca.src != fa.src || ca.tgt != ga.tgt {
                violations.push(CategoryViolation::EndpointMismatch(format!(
                    "{} . {} = {} has the wrong endpoints",
                    ga.label, fa.label, ca.label
                )));
            }
        }

        let mut triples = 0usize;
        for f in 0..self.arrows.len() {
            let fa = &self.arrows[f];
            for g in homs[fa.tgt.0 * n..(fa.tgt.0 + 1) * n].iter().flatten() {
                if !self.compose.contains_key(&(*g, Mor(f))) {
                    violations.push(CategoryViolation::CompositionGap(lbl(*g), fa.label.clone()));
                }
                let out: usize = (0..n)
                    .map(|z| homs[self.arrows[g.0].tgt.0 * n + z].len())
                    .sum();
                triples = triples.saturating_add(out);
            }
        }

        if !violations.is_empty() {
            return Err(CategoryError::Violations(violations));
        }

        for (i, a) in self.arrows.iter().enumerate() {
            let f = Mor(i);
            let left = self.compose.get(&(identities[a.tgt.0], f));
            let right = self.compose.get(&(f, identities[a.src.0]));
            if left != Some(&f) || right != Some(&f) {
                violations.push(CategoryViolation::IdentityViolation(a.label.clone()));
            }
        }

        ensure("composable triple count", triples, limits.max_triples)?;
        let homs_ref = &homs;
        let compose = &self.compose;
        let arrows = &self.arrows;
        let assoc: Vec<CategoryViolation> = (0..arrows.len())
            .into_par_iter()
            .flat_map_iter(|f| {
                let fa = &arrows[f];
                let f = Mor(f);
                homs_ref[fa.tgt.0 * n..(fa.tgt.0 + 1) * n]
                    .iter()
                    .flatten()
                    .flat_map(move |&g| {
                        let gt = arrows[g.0].tgt.0;
                        homs_ref[gt * n..(gt + 1) * n]
                            .iter()
                            .flatten()
                            .filter_map(move |&h| {
                                let hg_f = compose[&(compose[&(h, g)], f)];
                                let h_gf = compose[&(h, compose[&(g, f)])];
                                (hg_f != h_gf).then(|| {
                                    CategoryViolation::AssociativityViolation(
                                        arrows[h.0].label.clone(),
                                        arrows[g.0].label.clone(),
                                        arrows[f.0].label.clone(),
                                    )
                                })
                            })
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        violations.extend(assoc);
        if !violations.is_empty() {
            return Err(CategoryError::Violations(violations));
        }

        Ok(FiniteCategory {
            objects: self.objects,
            object_index: self.object_index,
            arrows: self.arrows,
            arrow_index: self.arrow_index,
            identities,
            compose: self.compose,
            homs,
        })
    }
}

/// A category described by labels, as read from a file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    /// `(arrow, src, tgt)`.
    pub arrows: Vec<(String, String, String)>,
    /// `(object, identity arrow)`.
    pub identities: Vec<(String, String)>,
    /// `(g, f, g ∘ f)`.
    pub compose: Vec<(String, String, String)>,
}

/// Validates every category law exhaustively, associativity included.
pub fn validate_category(spec: &CategorySpec, limits: &Limits) -> Result<FiniteCategory, CategoryError> {
    let mut b = CategoryBuilder::new();
    for o in &spec.objects {
        b.add_object(o.clone())?;
    }
    let ob = |b: &CategoryBuilder, l: &str| b.object(l).ok_or_else(|| CategoryError::UnknownLabel(l.to_string()));
    let mor = |b: &CategoryBuilder, l: &str| b.arrow(l).ok_or_else(|| CategoryError::UnknownLabel(l.to_string()));
    for (id, s, t) in &spec.arrows {
        let (s, t) = (ob(&b, s)?, ob(&b, t)?);
        b.add_arrow(id.clone(), s, t)?;
    }
    for (o, id) in &spec.identities {
        let (o, id) = (ob(&b, o)?, mor(&b, id)?);
        b.set_identity(o, id);
    }
    for (g, f, gf) in &spec.compose {
        let (g, f, gf) = (mor(&b, g)?, mor(&b, f)?, mor(&b, gf)?);
        b.set_compose(g, f, gf)?;
    }
    b.build(limits)
}

impl FiniteCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Ob> + Clone {
        (0..self.objects.len()).map(Ob)
    }

    pub fn arrows(&self) -> impl Iterator<Item = Mor> + Clone {
        (0..self.arrows.len()).map(Mor)
    }

    pub fn object_label(&self, o: Ob) -> &str {
        &self.objects[o.0]
    }

    pub fn arrow_label(&self, m: Mor) -> &str {
        &self.arrows[m.0].label
    }

    pub fn object(&self, label: &str) -> Option<Ob> {
        self.object_index.get(label).copied()
    }

    pub fn arrow(&self, label: &str) -> Option<Mor> {
        self.arrow_index.get(label).copied()
    }

    pub fn src(&self, m: Mor) -> Ob {
        self.arrows[m.0].src
    }

    pub fn tgt(&self, m: Mor) -> Ob {
        self.arrows[m.0].tgt
    }

    pub fn identity(&self, o: Ob) -> Mor {
        self.identities[o.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        let s = self.src(m);
        s == self.tgt(m) && self.identities[s.0] == m
    }

    /// `g ∘ f`, or `None` when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn hom(&self, a: Ob, b: Ob) -> &[Mor] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    /// Number of composable pairs in the table.
    pub fn composable_pairs(&self) -> usize {
        self.compose.len()
    }

    /// Every arrow label with its endpoints, in input order.
    pub fn to_spec(&self) -> CategorySpec {
        let mut compose: Vec<_> = self.compose.iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        compose.sort();
        CategorySpec {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| (a.label.clone(), self.objects[a.src.0].clone(), self.objects[a.tgt.0].clone()))
                .collect(),
            identities: self
                .objects()
                .map(|o| (self.objects[o.0].clone(), self.arrow_label(self.identity(o)).to_string()))
                .collect(),
            compose: compose
                .into_iter()
                .map(|(g, f, gf)| {
                    (
                        self.arrow_label(g).to_string(),
                        self.arrow_label(f).to_string(),
                        self.arrow_label(gf).to_string(),
                    )
                })
                .collect(),
        }
    }
}

/// The thin category of a preorder: one arrow `x<=y` exactly when
/// `leq(x, y)`. The relation must be reflexive and transitive; validation
/// reports a gap otherwise.
pub fn thin_category(
    labels: &[String],
    leq: impl Fn(usize, usize) -> bool,
    limits: &Limits,
) -> Result<FiniteCategory, CategoryError> {
    ensure("object count", labels.len(), limits.max_elements)?;
    let n = labels.len();
    let mut b = CategoryBuilder::new();
    for l in labels {
        b.add_object(l.clone())?;
    }
    let mut arrow = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                let m = b.add_arrow(format!("{}<={}", labels[i], labels[j]), Ob(i), Ob(j))?;
                arrow[i * n + j] = Some(m);
            }
        }
    }
    ensure("arrow count", b.arrows.len(), limits.max_arrows)?;
    for i in 0..n {
        if let Some(m) = arrow[i * n + i] {
            b.set_identity(Ob(i), m);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let Some(f) = arrow[i * n + j] else { continue };
            for k in 0..n {
                let Some(g) = arrow[j * n + k] else { continue };
                if let Some(gf) = arrow[i * n + k] {
                    b.set_compose(g, f, gf)?;
                }
            }
        }
    }
    b.build(limits)
}

/// The category of a poset: one arrow `x → y` iff `x ≤ y`, with object `i`
/// the poset's element `i`.
pub fn poset_to_category(p: &FinitePoset, limits: &Limits) -> Result<FiniteCategory, CategoryError> {
    thin_category(p.labels(), |i, j| p.leq(i, j), limits)
}

/// The functor between two thin categories induced by a monotone map. The
/// categories must have been built from the map's domain and codomain.
pub fn functor_from_monotone(
    map: &MonotoneMap,
    dom: Arc<FiniteCategory>,
    cod: Arc<FiniteCategory>,
) -> Result<Functor, FunctorError> {
    if dom.object_count() != map.dom().len() || cod.object_count() != map.cod().len() {
        return Err(FunctorError::CategoryMismatch);
    }
    let objects: Vec<Ob> = map.images().iter().map(|&i| Ob(i)).collect();
    let mut arrows = Vec::with_capacity(dom.arrow_count());
    for f in dom.arrows() {
        let (x, y) = (objects[dom.src(f).0], objects[dom.tgt(f).0]);
        match cod.hom(x, y) {
            [m] => arrows.push(*m),
            _ => return Err(FunctorError::CategoryMismatch),
        }
    }
    Functor::new(dom, cod, objects, arrows)
}

/// A validated functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    dom: Arc<FiniteCategory>,
    cod: Arc<FiniteCategory>,
    objects: Vec<Ob>,
    arrows: Vec<Mor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorViolation {
    #[error("endpoint violation: image of {0} does not run between the images of its endpoints")]
    EndpointViolation(String),
    #[error("identity violation: identity of {0} is not sent to an identity")]
    IdentityViolation(String),
    #[error("composition violation: F({0} . {1}) != F({0}) . F({1})")]
    CompositionViolation(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("{0} is assigned more than once")]
    DuplicateAssignment(String),
    #[error("{0} has no image")]
    Unmapped(String),
    #[error("functor categories do not match")]
    CategoryMismatch,
    #[error("{} functor violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<FunctorViolation>),
}

impl Functor {
    /// Checks endpoint, identity and composition preservation exhaustively.
    pub fn new(
        dom: Arc<FiniteCategory>,
        cod: Arc<FiniteCategory>,
        objects: Vec<Ob>,
        arrows: Vec<Mor>,
    ) -> Result<Self, FunctorError> {
        assert_eq!(objects.len(), dom.object_count());
        assert_eq!(arrows.len(), dom.arrow_count());
        let mut violations = Vec::new();
        for f in dom.arrows() {
            let img = arrows[f.0];
            if cod.src(img) != objects[dom.src(f).0] || cod.tgt(img) != objects[dom.tgt(f).0] {
                violations.push(FunctorViolation::EndpointViolation(dom.arrow_label(f).to_string()));
            }
        }
        for x in dom.objects() {
            if arrows[dom.identity(x).0] != cod.identity(objects[x.0]) {
                violations.push(FunctorViolation::IdentityViolation(dom.object_label(x).to_string()));
            }
        }
        for f in dom.arrows() {
            for y in dom.objects() {
                for &g in dom.hom(dom.tgt(f), y) {
                    let gf = dom.compose(g, f).expect("validated category");
                    if cod.compose(arrows[g.0], arrows[f.0]) != Some(arrows[gf.0]) {
                        violations.push(FunctorViolation::CompositionViolation(
                            dom.arrow_label(g).to_string(),
                            dom.arrow_label(f).to_string(),
                        ));
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(FunctorError::Violations(violations));
        }
        Ok(Functor {
            dom,
            cod,
            objects,
            arrows,
        })
    }

    pub fn identity(cat: Arc<FiniteCategory>) -> Self {
        let objects = cat.objects().collect();
        let arrows = cat.arrows().collect();
        Functor {
            dom: cat.clone(),
            cod: cat,
            objects,
            arrows,
        }
    }

    /// `then ∘ self`, re-validated.
    pub fn then(&self, then: &Functor) -> Result<Functor, FunctorError> {
        if self.cod != then.dom {
            return Err(FunctorError::CategoryMismatch);
        }
        let objects = self.objects.iter().map(|o| then.objects[o.0]).collect();
        let arrows = self.arrows.iter().map(|m| then.arrows[m.0]).collect();
        Functor::new(self.dom.clone(), then.cod.clone(), objects, arrows)
    }

    pub fn dom(&self) -> &Arc<FiniteCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteCategory> {
        &self.cod
    }

    pub fn map_object(&self, o: Ob) -> Ob {
        self.objects[o.0]
    }

    pub fn map_arrow(&self, m: Mor) -> Mor {
        self.arrows[m.0]
    }
}

/// Object and arrow assignments by label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctorSpec {
    pub object_map: Vec<(String, String)>,
    pub arrow_map: Vec<(String, String)>,
}

pub fn validate_functor(
    dom: Arc<FiniteCategory>,
    cod: Arc<FiniteCategory>,
    spec: &FunctorSpec,
) -> Result<Functor, FunctorError> {
    fn assign<T: Copy, U: Copy>(
        pairs: &[(String, String)],
        n: usize,
        src: impl Fn(&str) -> Option<T>,
        tgt: impl Fn(&str) -> Option<U>,
        idx: impl Fn(T) -> usize,
        label: impl Fn(usize) -> String,
    ) -> Result<Vec<U>, FunctorError> {
        let mut out = vec![None; n];
        for (a, b) in pairs {
            let a_ix = src(a).ok_or_else(|| FunctorError::UnknownLabel(a.clone()))?;
            let b_ix = tgt(b).ok_or_else(|| FunctorError::UnknownLabel(b.clone()))?;
            if out[idx(a_ix)].replace(b_ix).is_some() {
                return Err(FunctorError::DuplicateAssignment(a.clone()));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| FunctorError::Unmapped(label(i))))
            .collect()
    }
    let objects = assign(
        &spec.object_map,
        dom.object_count(),
        |l| dom.object(l),
        |l| cod.object(l),
        |o| o.0,
        |i| dom.object_label(Ob(i)).to_string(),
    )?;
    let arrows = assign(
        &spec.arrow_map,
        dom.arrow_count(),
        |l| dom.arrow(l),
        |l| cod.arrow(l),
        |m| m.0,
        |i| dom.arrow_label(Mor(i)).to_string(),
    )?;
    Functor::new(dom, cod, objects, arrows)
}

/// Searches for an inverse pair `f: a → b`, `g: b → a`. For `a = b` the
/// identity pair is returned.
pub fn are_isomorphic(cat: &FiniteCategory, a: Ob, b: Ob) -> Option<(Mor, Mor)> {
    if a == b {
        let id = cat.identity(a);
        return Some((id, id));
    }
    for &f in cat.hom(a, b) {
        for &g in cat.hom(b, a) {
            if cat.compose(g, f) == Some(cat.identity(a)) && cat.compose(f, g) == Some(cat.identity(b)) {
                return Some((f, g));
            }
        }
    }
    None
}

/// Which way participation arrows point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `x` participates in `u` via a unique arrow `x → u` (meets, limits).
    ArrowsTo,
    /// `x` participates in `u` via a unique arrow `u → x` (joins, colimits).
    ArrowsFrom,
}

/// An extensional property of objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectPredicate {
    pub category: Arc<FiniteCategory>,
    pub holds: Vec<bool>,
    pub direction: Direction,
}

impl ObjectPredicate {
    pub fn new(category: Arc<FiniteCategory>, direction: Direction, holds: impl Fn(Ob) -> bool) -> Self {
        let holds = category.objects().map(holds).collect();
        ObjectPredicate {
            category,
            holds,
            direction,
        }
    }

    pub fn holds(&self, x: Ob) -> bool {
        self.holds[x.0]
    }

    /// The participation arrows between `x` and `u` in the predicate's
    /// direction.
    pub fn participation(&self, x: Ob, u: Ob) -> &[Mor] {
        match self.direction {
            Direction::ArrowsTo => self.category.hom(x, u),
            Direction::ArrowsFrom => self.category.hom(u, x),
        }
    }
}

/// A universal `u` for a predicate, with the unique participation arrow of
/// every object that has the property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalWitness {
    pub predicate: ObjectPredicate,
    pub u: Ob,
    pub factor: BTreeMap<Ob, Mor>,
}

impl UniversalWitness {
    /// Re-checks universality (exactly one participation arrow iff the
    /// property holds) and self-predication (`factor(u)` is `1_u`).
    pub fn verify(&self) -> bool {
        let pred = &self.predicate;
        let cat = &pred.category;
        pred.holds(self.u)
            && self.factor.get(&self.u) == Some(&cat.identity(self.u))
            && cat.objects().all(|x| {
                let arrows = pred.participation(x, self.u);
                (arrows.len() == 1) == pred.holds(x)
                    && (!pred.holds(x) || self.factor.get(&x) == Some(&arrows[0]))
            })
    }
}

/// Every object satisfying the universality condition for `pred`, in
/// object order. The search visits all `|objects|²` participation counts.
pub fn find_universal(pred: &ObjectPredicate, limits: &Limits) -> Result<Vec<UniversalWitness>, CategoryError> {
    let cat = &pred.category;
    ensure("object count", cat.object_count(), limits.max_elements)?;
    let found = cat
        .objects()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|u| {
            if !pred.holds(u) {
                return None;
            }
            let mut factor = BTreeMap::new();
            for x in cat.objects() {
                let arrows = pred.participation(x, u);
                if (arrows.len() == 1) != pred.holds(x) {
                    return None;
                }
                if pred.holds(x) {
                    factor.insert(x, arrows[0]);
                }
            }
            Some(UniversalWitness {
                predicate: pred.clone(),
                u,
                factor,
            })
        })
        .collect();
    Ok(found)
}

/// The mutually inverse arrows relating two universals for one predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoPair {
    pub u: Ob,
    pub v: Ob,
    /// `u → v`.
    pub forward: Mor,
    /// `v → u`.
    pub backward: Mor,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("witnesses are for different predicates")]
    PredicateMismatch,
    #[error("iso construction failed between {u} and {v}: {reason}")]
    IsoConstructionFailure { u: String, v: String, reason: String },
}

/// For every pair of universals `u`, `v` of the same predicate, takes the
/// participation arrows each has in the other and checks that they compose
/// to identities both ways.
pub fn check_uniqueness_up_to_iso(witnesses: &[UniversalWitness]) -> Result<Vec<IsoPair>, IsoError> {
    let Some(first) = witnesses.first() else {
        return Ok(Vec::new());
    };
    if witnesses.iter().any(|w| w.predicate != first.predicate) {
        return Err(IsoError::PredicateMismatch);
    }
    let cat = &first.predicate.category;
    let mut pairs = Vec::new();
    for (i, wu) in witnesses.iter().enumerate() {
        for wv in &witnesses[i + 1..] {
            let (u, v) = (wu.u, wv.u);
            let fail = |reason: &str| IsoError::IsoConstructionFailure {
                u: cat.object_label(u).to_string(),
                v: cat.object_label(v).to_string(),
                reason: reason.to_string(),
            };
            // v participates in u and u in v.
            let in_u = *wu.factor.get(&v).ok_or_else(|| fail("v does not participate in u"))?;
            let in_v = *wv.factor.get(&u).ok_or_else(|| fail("u does not participate in v"))?;
            let (forward, backward) = match first.predicate.direction {
                Direction::ArrowsTo => (in_v, in_u),
                Direction::ArrowsFrom => (in_u, in_v),
            };
            if cat.compose(backward, forward) != Some(cat.identity(u)) {
                return Err(fail("backward . forward is not 1_u"));
            }
            if cat.compose(forward, backward) != Some(cat.identity(v)) {
                return Err(fail("forward . backward is not 1_v"));
            }
            pairs.push(IsoPair {
                u,
                v,
                forward,
                backward,
            });
        }
    }
    Ok(pairs)
}

/// A product cone: `apex` with projections to `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Product {
    pub apex: Ob,
    pub proj_a: Mor,
    pub proj_b: Mor,
}

/// Searches for a product of `a` and `b`: a cone through which every pair
/// `(f: c → a, g: c → b)` factors by exactly one arrow `c → apex`.
pub fn product_in_category(cat: &FiniteCategory, a: Ob, b: Ob) -> Option<Product> {
    for p in cat.objects() {
        for &pa in cat.hom(p, a) {
            for &pb in cat.hom(p, b) {
                let universal = cat.objects().all(|c| {
                    cat.hom(c, a).iter().all(|&f| {
                        cat.hom(c, b).iter().all(|&g| {
                            let n = cat
                                .hom(c, p)
                                .iter()
                                .filter(|&&u| cat.compose(pa, u) == Some(f) && cat.compose(pb, u) == Some(g))
                                .count();
                            n == 1
                        })
                    })
                });
                if universal {
                    return Some(Product {
                        apex: p,
                        proj_a: pa,
                        proj_b: pb,
                    });
                }
            }
        }
    }
    None
}
