//! Finite partial orders, monotone maps, meets and joins, Galois connections.
//!
//! Orders are stored as explicit relation bitsets so every `x ≤ y` query is
//! O(1). Elements are addressed by their position in the input sequence and
//! every loop runs in that order, which makes reports deterministic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::limits::{ensure, CapExceeded, Limits};
use crate::Side;

/// A validated finite partial order.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    words: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("elements", &self.labels)
            .field("leq_pairs", &self.leq_pair_count())
            .finish()
    }
}

/// A law violated by a candidate order relation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetViolation {
    #[error("reflexivity fails at {0}")]
    Reflexivity(String),
    #[error("transitivity fails: {0} <= {1} and {1} <= {2} but not {0} <= {2}")]
    Transitivity(String, String, String),
    #[error("antisymmetry fails: {0} <= {1} and {1} <= {0}")]
    Antisymmetry(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element label {0}")]
    DuplicateLabel(String),
    #[error("unknown element label {0}")]
    UnknownLabel(String),
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
    #[error("{} order violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<PosetViolation>),
}

impl FinitePoset {
    fn empty_relation(labels: Vec<String>) -> Result<Self, PosetError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let words = labels.len().div_ceil(64);
        let rows = vec![0; words * labels.len()];
        Ok(FinitePoset {
            labels,
            index,
            words,
            rows,
        })
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    /// Builds a poset from a relation that is known to be a partial order.
    /// Used by generators whose output is an order by construction.
    pub(crate) fn from_relation_unchecked(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let mut p = Self::empty_relation(labels).expect("generated labels are distinct");
        let n = p.len();
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    p.set(i, j);
                }
            }
        }
        p
    }

    /// Builds a poset from a relation given as a predicate on indices and
    /// checks every order law.
    pub fn from_relation(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        limits: &Limits,
    ) -> Result<Self, PosetError> {
        ensure("poset size", labels.len(), limits.max_elements)?;
        let p = Self::from_relation_unchecked(labels, leq);
        p.check_laws(true)?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// All `(x, y)` with `x ≤ y`, in input order.
    pub fn leq_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| self.leq(i, j)).map(move |j| (i, j)))
    }

    pub fn leq_pair_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The same elements with the order reversed.
    pub fn opposite(&self) -> FinitePoset {
        Self::from_relation_unchecked(self.labels.clone(), |i, j| self.leq(j, i))
    }

    fn close(&mut self) {
        let n = self.len();
        for i in 0..n {
            self.set(i, i);
        }
        // Warshall over bitset rows.
        for k in 0..n {
            let row_k: Vec<u64> = self.row(k).to_vec();
            for i in 0..n {
                if self.leq(i, k) {
                    let base = i * self.words;
                    for (w, bits) in row_k.iter().enumerate() {
                        self.rows[base + w] |= bits;
                    }
                }
            }
        }
    }

    fn check_laws(&self, transitivity: bool) -> Result<(), PosetError> {
        let n = self.len();
        let mut violations = Vec::new();
        for i in 0..n {
            if !self.leq(i, i) {
                violations.push(PosetViolation::Reflexivity(self.labels[i].clone()));
            }
        }
        if transitivity {
            for i in 0..n {
                for j in 0..n {
                    if i == j || !self.leq(i, j) {
                        continue;
                    }
                    let (ri, rj) = (self.row(i), self.row(j));
                    if rj.iter().zip(ri).all(|(b, a)| b & !a == 0) {
                        continue;
                    }
                    for k in 0..n {
                        if self.leq(j, k) && !self.leq(i, k) {
                            violations.push(PosetViolation::Transitivity(
                                self.labels[i].clone(),
                                self.labels[j].clone(),
                                self.labels[k].clone(),
                            ));
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.leq(i, j) && self.leq(j, i) {
                    violations.push(PosetViolation::Antisymmetry(
                        self.labels[i].clone(),
                        self.labels[j].clone(),
                    ));
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(PosetError::Violations(violations))
        }
    }
}

/// Validates a labelled order relation. With `close_transitively` the
/// relation is first replaced by its reflexive-transitive closure.
pub fn validate_poset<S: AsRef<str>>(
    elements: &[S],
    leq: &[(S, S)],
    close_transitively: bool,
    limits: &Limits,
) -> Result<FinitePoset, PosetError> {
    ensure("poset size", elements.len(), limits.max_elements)?;
    let labels = elements.iter().map(|s| s.as_ref().to_string()).collect();
    let mut p = FinitePoset::empty_relation(labels)?;
    for (a, b) in leq {
        let i = p
            .index_of(a.as_ref())
            .ok_or_else(|| PosetError::UnknownLabel(a.as_ref().to_string()))?;
        let j = p
            .index_of(b.as_ref())
            .ok_or_else(|| PosetError::UnknownLabel(b.as_ref().to_string()))?;
        p.set(i, j);
    }
    if close_transitively {
        p.close();
    }
    p.check_laws(!close_transitively)?;
    Ok(p)
}

/// Cartesian product ordered componentwise. Element `(i, j)` sits at index
/// `i * |Q| + j` and is labelled `<p,q>`.
pub fn product_poset(
    p: &FinitePoset,
    q: &FinitePoset,
    limits: &Limits,
) -> Result<FinitePoset, PosetError> {
    let size = p.len().saturating_mul(q.len());
    ensure("product poset size", size, limits.max_elements)?;
    let m = q.len();
    let labels = (0..p.len())
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| format!("<{},{}>", p.label(i), q.label(j)))
        .collect();
    Ok(FinitePoset::from_relation_unchecked(labels, |x, y| {
        p.leq(x / m, y / m) && q.leq(x % m, y % m)
    }))
}

/// An order-preserving total map between two posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    dom: Arc<FinitePoset>,
    cod: Arc<FinitePoset>,
    images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonotoneViolation {
    #[error("{0} has no image")]
    Totality(String),
    #[error("monotonicity fails: {0} <= {1} but their images are not ordered")]
    Monotonicity(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonotoneError {
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("{0} is assigned more than once")]
    DuplicateAssignment(String),
    #[error("{} map violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<MonotoneViolation>),
}

impl MonotoneMap {
    /// Checks a map given as an image index per domain element.
    pub fn new(
        dom: Arc<FinitePoset>,
        cod: Arc<FinitePoset>,
        images: Vec<usize>,
    ) -> Result<Self, MonotoneError> {
        assert_eq!(images.len(), dom.len(), "one image per domain element");
        let mut violations = Vec::new();
        for (x, y) in dom.leq_pairs() {
            if x != y && !cod.leq(images[x], images[y]) {
                violations.push(MonotoneViolation::Monotonicity(
                    dom.label(x).to_string(),
                    dom.label(y).to_string(),
                ));
            }
        }
        if !violations.is_empty() {
            return Err(MonotoneError::Violations(violations));
        }
        Ok(MonotoneMap { dom, cod, images })
    }

    pub fn from_fn(
        dom: Arc<FinitePoset>,
        cod: Arc<FinitePoset>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self, MonotoneError> {
        let images = (0..dom.len()).map(f).collect();
        Self::new(dom, cod, images)
    }

    pub fn dom(&self) -> &Arc<FinitePoset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinitePoset> {
        &self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply_label(&self, x: &str) -> Option<&str> {
        self.dom.index_of(x).map(|i| self.cod.label(self.images[i]))
    }
}

/// Validates a candidate map given as labelled `(x, image)` pairs, listing
/// every missing image and every order pair it fails to preserve.
pub fn check_monotone<S: AsRef<str>>(
    dom: Arc<FinitePoset>,
    cod: Arc<FinitePoset>,
    assignment: &[(S, S)],
) -> Result<MonotoneMap, MonotoneError> {
    let mut images: Vec<Option<usize>> = vec![None; dom.len()];
    for (x, y) in assignment {
        let i = dom
            .index_of(x.as_ref())
            .ok_or_else(|| MonotoneError::UnknownLabel(x.as_ref().to_string()))?;
        let j = cod
            .index_of(y.as_ref())
            .ok_or_else(|| MonotoneError::UnknownLabel(y.as_ref().to_string()))?;
        if images[i].replace(j).is_some() {
            return Err(MonotoneError::DuplicateAssignment(x.as_ref().to_string()));
        }
    }
    let missing: Vec<_> = images
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_none())
        .map(|(i, _)| MonotoneViolation::Totality(dom.label(i).to_string()))
        .collect();
    if !missing.is_empty() {
        return Err(MonotoneError::Violations(missing));
    }
    let images = images.into_iter().map(|m| m.unwrap()).collect();
    MonotoneMap::new(dom, cod, images)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

/// The join (least upper bound) or meet (greatest lower bound) of `set`,
/// found by testing the universality condition on every element.
pub fn bound(p: &FinitePoset, set: &[usize], kind: BoundKind) -> Option<usize> {
    let below = |a: usize, b: usize| match kind {
        BoundKind::Join => p.leq(a, b),
        BoundKind::Meet => p.leq(b, a),
    };
    let n = p.len();
    (0..n).find(|&u| {
        set.iter().all(|&s| below(s, u))
            && (0..n).all(|x| below(u, x) == set.iter().all(|&s| below(s, x)))
    })
}

/// A verified pair `lower ⊣ upper` of monotone maps.
#[derive(Debug, Clone)]
pub struct GaloisConnection {
    pub lower: MonotoneMap,
    pub upper: MonotoneMap,
    pub pairs_checked: usize,
}

/// A pair `(p, q)` where exactly one side of `lower(p) ≤ q ⇔ p ≤ upper(q)`
/// holds.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("adjointness fails at ({p}, {q}): lower(p) <= q is {lower_holds}, p <= upper(q) is {upper_holds}")]
pub struct AdjointnessViolation {
    pub p: String,
    pub q: String,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("domain mismatch: lower must map P to Q and upper Q to P")]
    DomainMismatch,
    #[error("{} adjointness violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<AdjointnessViolation>),
}

/// Checks `lower(p) ≤ q ⇔ p ≤ upper(q)` for every pair.
pub fn check_galois_connection(
    lower: &MonotoneMap,
    upper: &MonotoneMap,
) -> Result<GaloisConnection, GaloisError> {
    if lower.dom != upper.cod || lower.cod != upper.dom {
        return Err(GaloisError::DomainMismatch);
    }
    let (pp, qq) = (&lower.dom, &lower.cod);
    let violations: Vec<AdjointnessViolation> = (0..pp.len())
        .into_par_iter()
        .flat_map_iter(|p| {
            (0..qq.len()).filter_map(move |q| {
                let lower_holds = qq.leq(lower.apply(p), q);
                let upper_holds = pp.leq(p, upper.apply(q));
                (lower_holds != upper_holds).then(|| AdjointnessViolation {
                    p: pp.label(p).to_string(),
                    q: qq.label(q).to_string(),
                    lower_holds,
                    upper_holds,
                })
            })
        })
        .collect();
    if !violations.is_empty() {
        return Err(GaloisError::Violations(violations));
    }
    Ok(GaloisConnection {
        lower: lower.clone(),
        upper: upper.clone(),
        pairs_checked: pp.len() * qq.len(),
    })
}

/// Computes the left (`side = Left`) or right adjoint of `g: P → Q` when it
/// exists. The left adjoint sends `q` to the least `p` with `q ≤ g(p)`; the
/// right adjoint sends `q` to the greatest `p` with `g(p) ≤ q`. The result is
/// re-verified as a Galois connection before it is returned.
pub fn compute_adjoint(g: &MonotoneMap, side: Side) -> Option<MonotoneMap> {
    let (pp, qq) = (g.dom.clone(), g.cod.clone());
    let mut images = Vec::with_capacity(qq.len());
    for q in 0..qq.len() {
        let solutions: Vec<usize> = (0..pp.len())
            .filter(|&p| match side {
                Side::Left => qq.leq(q, g.apply(p)),
                Side::Right => qq.leq(g.apply(p), q),
            })
            .collect();
        let extreme = *solutions.iter().find(|&&s| {
            solutions.iter().all(|&t| match side {
                Side::Left => pp.leq(s, t),
                Side::Right => pp.leq(t, s),
            })
        })?;
        images.push(extreme);
    }
    let f = MonotoneMap::new(qq, pp, images).ok()?;
    let verified = match side {
        Side::Left => check_galois_connection(&f, g),
        Side::Right => check_galois_connection(g, &f),
    };
    verified.ok().map(|_| f)
}
