//! Heteromorphism bimodules between two categories, and the checks built on
//! them: left and right semi-adjunctions, adjunctions glued along a shared
//! het middle term, brain functors, and the search for representing objects.
//!
//! A het `h: x → a` runs from an object of the source category to an object
//! of the target category. Source arrows act on the right (`h ∘ f`) and
//! target arrows on the left (`g ∘ h`), and the results are hets again.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::category::{FiniteCategory, Functor, Mor, Ob};
use crate::limits::{ensure, CapExceeded, Limits};
use crate::Side;

/// Index of a het in its bimodule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Het(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct HetData {
    label: String,
    src: Ob,
    tgt: Ob,
}

/// A validated het bimodule `Het(x, a)` from `src` to `tgt`.
#[derive(Clone, PartialEq, Eq)]
pub struct HetBimodule {
    src: Arc<FiniteCategory>,
    tgt: Arc<FiniteCategory>,
    hets: Vec<HetData>,
    het_index: HashMap<String, Het>,
    by_pair: Vec<Vec<Het>>,
    pre: HashMap<(Het, Mor), Het>,
    post: HashMap<(Mor, Het), Het>,
}

impl fmt::Debug for HetBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HetBimodule")
            .field("src", &self.src)
            .field("tgt", &self.tgt)
            .field("hets", &self.hets.len())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimoduleViolation {
    #[error("action gap: {0}")]
    ActionGap(String),
    #[error("action endpoint mismatch: {0}")]
    ActionEndpoint(String),
    #[error("unit action violation: {0}")]
    UnitActionViolation(String),
    #[error("action associativity violation: {0}")]
    ActionAssociativityViolation(String),
    #[error("mixed associativity violation: {0}")]
    MixedAssociativityViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimoduleError {
    #[error("duplicate het label {0}")]
    DuplicateLabel(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("het {het} refers to unknown object {object}")]
    DanglingHet { het: String, object: String },
    #[error("action on {0} is given two different values")]
    ConflictingAction(String),
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
    #[error("{} bimodule violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<BimoduleViolation>),
}

pub(crate) fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Index-based construction; `build` checks every action law.
#[derive(Debug)]
pub struct BimoduleBuilder {
    src: Arc<FiniteCategory>,
    tgt: Arc<FiniteCategory>,
    hets: Vec<HetData>,
    het_index: HashMap<String, Het>,
    pre: HashMap<(Het, Mor), Het>,
    post: HashMap<(Mor, Het), Het>,
}

impl BimoduleBuilder {
    pub fn new(src: Arc<FiniteCategory>, tgt: Arc<FiniteCategory>) -> Self {
        BimoduleBuilder {
            src,
            tgt,
            hets: Vec::new(),
            het_index: HashMap::new(),
            pre: HashMap::new(),
            post: HashMap::new(),
        }
    }

    pub fn add_het(&mut self, label: impl Into<String>, x: Ob, a: Ob) -> Result<Het, BimoduleError> {
        let label = label.into();
        let h = Het(self.hets.len());
        if self.het_index.insert(label.clone(), h).is_some() {
            return Err(BimoduleError::DuplicateLabel(label));
        }
        self.hets.push(HetData { label, src: x, tgt: a });
        Ok(h)
    }

    pub fn het(&self, label: &str) -> Option<Het> {
        self.het_index.get(label).copied()
    }

    /// Records `h ∘ f = r` for a source arrow `f`.
    pub fn set_pre(&mut self, h: Het, f: Mor, r: Het) -> Result<(), BimoduleError> {
        match self.pre.insert((h, f), r) {
            Some(old) if old != r => Err(BimoduleError::ConflictingAction(format!(
                "{} . {}",
                self.hets[h.0].label,
                self.src.arrow_label(f)
            ))),
            _ => Ok(()),
        }
    }

    /// Records `g ∘ h = r` for a target arrow `g`.
    pub fn set_post(&mut self, g: Mor, h: Het, r: Het) -> Result<(), BimoduleError> {
        match self.post.insert((g, h), r) {
            Some(old) if old != r => Err(BimoduleError::ConflictingAction(format!(
                "{} . {}",
                self.tgt.arrow_label(g),
                self.hets[h.0].label
            ))),
            _ => Ok(()),
        }
    }

    pub fn build(self, limits: &Limits) -> Result<HetBimodule, BimoduleError> {
        ensure("het count", self.hets.len(), limits.max_arrows)?;
        let (src, tgt) = (&self.src, &self.tgt);
        let (ns, nt) = (src.object_count(), tgt.object_count());
        let mut by_pair = vec![Vec::new(); ns * nt];
        for (i, h) in self.hets.iter().enumerate() {
            by_pair[h.src.0 * nt + h.tgt.0].push(Het(i));
        }
        let hl = |h: Het| self.hets[h.0].label.as_str();
        let mut v = Vec::new();

        let mut pre_keys: Vec<_> = self.pre.keys().copied().collect();
        pre_keys.sort();
        for (h, f) in pre_keys {
            let r = self.pre[&(h, f)];
            let (hd, rd) = (&self.hets[h.0], &self.hets[r.0]);
            if src.tgt(f) != hd.src {
                v.push(BimoduleViolation::ActionEndpoint(format!(
                    "{} . {} given for a non-composable pair",
                    hd.label,
                    src.arrow_label(f)
                )));
            } else if rd.src != src.src(f) || rd.tgt != hd.tgt {
                v.push(BimoduleViolation::ActionEndpoint(format!(
                    "{} . {} = {} has the wrong endpoints",
                    hd.label,
                    src.arrow_label(f),
                    rd.label
                )));
            }
        }
        let mut post_keys: Vec<_> = self.post.keys().copied().collect();
        post_keys.sort();
        for (g, h) in post_keys {
            let r = self.post[&(g, h)];
            let (hd, rd) = (&self.hets[h.0], &self.hets[r.0]);
            if tgt.src(g) != hd.tgt {
                v.push(BimoduleViolation::ActionEndpoint(format!(
                    "{} . {} given for a non-composable pair",
                    tgt.arrow_label(g),
                    hd.label
                )));
            } else if rd.src != hd.src || rd.tgt != tgt.tgt(g) {
                v.push(BimoduleViolation::ActionEndpoint(format!(
                    "{} . {} = {} has the wrong endpoints",
                    tgt.arrow_label(g),
                    hd.label,
                    rd.label
                )));
            }
        }
        for (i, hd) in self.hets.iter().enumerate() {
            let h = Het(i);
            for x2 in src.objects() {
                for &f in src.hom(x2, hd.src) {
                    if !self.pre.contains_key(&(h, f)) {
                        v.push(BimoduleViolation::ActionGap(format!(
                            "{} . {} is undefined",
                            hd.label,
                            src.arrow_label(f)
                        )));
                    }
                }
            }
            for a2 in tgt.objects() {
                for &g in tgt.hom(hd.tgt, a2) {
                    if !self.post.contains_key(&(g, h)) {
                        v.push(BimoduleViolation::ActionGap(format!(
                            "{} . {} is undefined",
                            tgt.arrow_label(g),
                            hd.label
                        )));
                    }
                }
            }
        }
        if !v.is_empty() {
            return Err(BimoduleError::Violations(v));
        }

        let (pre, post) = (&self.pre, &self.post);
        for (i, hd) in self.hets.iter().enumerate() {
            let h = Het(i);
            if pre[&(h, src.identity(hd.src))] != h {
                v.push(BimoduleViolation::UnitActionViolation(format!(
                    "{} . 1_{} != {}",
                    hd.label,
                    src.object_label(hd.src),
                    hd.label
                )));
            }
            if post[&(tgt.identity(hd.tgt), h)] != h {
                v.push(BimoduleViolation::UnitActionViolation(format!(
                    "1_{} . {} != {}",
                    tgt.object_label(hd.tgt),
                    hd.label,
                    hd.label
                )));
            }
        }

        let laws: Vec<BimoduleViolation> = (0..self.hets.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let h = Het(i);
                let hd = &self.hets[i];
                let mut out = Vec::new();
                // (h . f) . f2 = h . (f . f2)
                for x1 in src.objects() {
                    for &f in src.hom(x1, hd.src) {
                        for x0 in src.objects() {
                            for &f2 in src.hom(x0, x1) {
                                let lhs = pre[&(pre[&(h, f)], f2)];
                                let rhs = pre[&(h, src.compose(f, f2).unwrap())];
                                if lhs != rhs {
                                    out.push(BimoduleViolation::ActionAssociativityViolation(format!(
                                        "({} . {}) . {} != {} . ({} . {})",
                                        hl(h),
                                        src.arrow_label(f),
                                        src.arrow_label(f2),
                                        hl(h),
                                        src.arrow_label(f),
                                        src.arrow_label(f2)
                                    )));
                                }
                            }
                        }
                    }
                }
                // g2 . (g . h) = (g2 . g) . h
                for a1 in tgt.objects() {
                    for &g in tgt.hom(hd.tgt, a1) {
                        for a2 in tgt.objects() {
                            for &g2 in tgt.hom(a1, a2) {
                                let lhs = post[&(g2, post[&(g, h)])];
                                let rhs = post[&(tgt.compose(g2, g).unwrap(), h)];
                                if lhs != rhs {
                                    out.push(BimoduleViolation::ActionAssociativityViolation(format!(
                                        "{} . ({} . {}) != ({} . {}) . {}",
                                        tgt.arrow_label(g2),
                                        tgt.arrow_label(g),
                                        hl(h),
                                        tgt.arrow_label(g2),
                                        tgt.arrow_label(g),
                                        hl(h)
                                    )));
                                }
                            }
                        }
                    }
                }
                // (g . h) . f = g . (h . f)
                for x1 in src.objects() {
                    for &f in src.hom(x1, hd.src) {
                        for a1 in tgt.objects() {
                            for &g in tgt.hom(hd.tgt, a1) {
                                let lhs = pre[&(post[&(g, h)], f)];
                                let rhs = post[&(g, pre[&(h, f)])];
                                if lhs != rhs {
                                    out.push(BimoduleViolation::MixedAssociativityViolation(format!(
                                        "({} . {}) . {} != {} . ({} . {})",
                                        tgt.arrow_label(g),
                                        hl(h),
                                        src.arrow_label(f),
                                        tgt.arrow_label(g),
                                        hl(h),
                                        src.arrow_label(f)
                                    )));
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        v.extend(laws);
        if !v.is_empty() {
            return Err(BimoduleError::Violations(v));
        }
        Ok(HetBimodule {
            src: self.src,
            tgt: self.tgt,
            hets: self.hets,
            het_index: self.het_index,
            by_pair,
            pre: self.pre,
            post: self.post,
        })
    }
}

/// A bimodule described by labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BimoduleSpec {
    /// `(het, src object, tgt object)`.
    pub hets: Vec<(String, String, String)>,
    /// `(het, src arrow, het . arrow)`.
    pub pre: Vec<(String, String, String)>,
    /// `(tgt arrow, het, arrow . het)`.
    pub post: Vec<(String, String, String)>,
}

/// Validates a labelled bimodule: unit laws, both action associativities
/// and the mixed associativity, over every composable combination.
pub fn validate_het_bimodule(
    src: Arc<FiniteCategory>,
    tgt: Arc<FiniteCategory>,
    spec: &BimoduleSpec,
    limits: &Limits,
) -> Result<HetBimodule, BimoduleError> {
    let mut b = BimoduleBuilder::new(src.clone(), tgt.clone());
    for (h, x, a) in &spec.hets {
        let dangling = |o: &str| BimoduleError::DanglingHet {
            het: h.clone(),
            object: o.to_string(),
        };
        let x = src.object(x).ok_or_else(|| dangling(x))?;
        let a = tgt.object(a).ok_or_else(|| dangling(a))?;
        b.add_het(h.clone(), x, a)?;
    }
    let unknown = |l: &str| BimoduleError::UnknownLabel(l.to_string());
    for (h, f, r) in &spec.pre {
        let hh = b.het(h).ok_or_else(|| unknown(h))?;
        let ff = src.arrow(f).ok_or_else(|| unknown(f))?;
        let rr = b.het(r).ok_or_else(|| unknown(r))?;
        b.set_pre(hh, ff, rr)?;
    }
    for (g, h, r) in &spec.post {
        let gg = tgt.arrow(g).ok_or_else(|| unknown(g))?;
        let hh = b.het(h).ok_or_else(|| unknown(h))?;
        let rr = b.het(r).ok_or_else(|| unknown(r))?;
        b.set_post(gg, hh, rr)?;
    }
    b.build(limits)
}

/// The bimodule between two thin categories with one het `x~>a` exactly
/// when `rel(x, a)`. Actions are forced; validation fails with action gaps
/// if `rel` is not closed under the hom actions.
pub fn thin_bimodule(
    src: Arc<FiniteCategory>,
    tgt: Arc<FiniteCategory>,
    rel: impl Fn(Ob, Ob) -> bool,
    limits: &Limits,
) -> Result<HetBimodule, BimoduleError> {
    let (ns, nt) = (src.object_count(), tgt.object_count());
    let mut b = BimoduleBuilder::new(src.clone(), tgt.clone());
    let mut het = vec![None; ns * nt];
    for x in src.objects() {
        for a in tgt.objects() {
            if rel(x, a) {
                let label = format!("{}~>{}", src.object_label(x), tgt.object_label(a));
                het[x.0 * nt + a.0] = Some(b.add_het(label, x, a)?);
            }
        }
    }
    for x in src.objects() {
        for a in tgt.objects() {
            let Some(h) = het[x.0 * nt + a.0] else { continue };
            for f in src.arrows().filter(|&f| src.tgt(f) == x) {
                if let Some(r) = het[src.src(f).0 * nt + a.0] {
                    b.set_pre(h, f, r)?;
                }
            }
            for g in tgt.arrows().filter(|&g| tgt.src(g) == a) {
                if let Some(r) = het[x.0 * nt + tgt.tgt(g).0] {
                    b.set_post(g, h, r)?;
                }
            }
        }
    }
    b.build(limits)
}

impl HetBimodule {
    pub fn src(&self) -> &Arc<FiniteCategory> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<FiniteCategory> {
        &self.tgt
    }

    pub fn het_count(&self) -> usize {
        self.hets.len()
    }

    pub fn all_hets(&self) -> impl Iterator<Item = Het> + Clone {
        (0..self.hets.len()).map(Het)
    }

    /// `Het(x, a)` in input order.
    pub fn hets(&self, x: Ob, a: Ob) -> &[Het] {
        &self.by_pair[x.0 * self.tgt.object_count() + a.0]
    }

    pub fn het(&self, label: &str) -> Option<Het> {
        self.het_index.get(label).copied()
    }

    pub fn het_label(&self, h: Het) -> &str {
        &self.hets[h.0].label
    }

    pub fn het_src(&self, h: Het) -> Ob {
        self.hets[h.0].src
    }

    pub fn het_tgt(&self, h: Het) -> Ob {
        self.hets[h.0].tgt
    }

    /// `h ∘ f` for a source arrow `f: x' → x`.
    pub fn pre_action(&self, h: Het, f: Mor) -> Option<Het> {
        self.pre.get(&(h, f)).copied()
    }

    /// `g ∘ h` for a target arrow `g: a → a'`.
    pub fn post_action(&self, g: Mor, h: Het) -> Option<Het> {
        self.post.get(&(g, h)).copied()
    }

    /// Every het with its labels and the action tables, for serialisation.
    pub fn to_spec(&self) -> BimoduleSpec {
        let mut pre: Vec<_> = self.pre.iter().map(|(&(h, f), &r)| (h, f, r)).collect();
        pre.sort();
        let mut post: Vec<_> = self.post.iter().map(|(&(g, h), &r)| (h, g, r)).collect();
        post.sort();
        BimoduleSpec {
            hets: self
                .hets
                .iter()
                .map(|h| {
                    (
                        h.label.clone(),
                        self.src.object_label(h.src).to_string(),
                        self.tgt.object_label(h.tgt).to_string(),
                    )
                })
                .collect(),
            pre: pre
                .into_iter()
                .map(|(h, f, r)| {
                    (
                        self.het_label(h).to_string(),
                        self.src.arrow_label(f).to_string(),
                        self.het_label(r).to_string(),
                    )
                })
                .collect(),
            post: post
                .into_iter()
                .map(|(h, g, r)| {
                    (
                        self.tgt.arrow_label(g).to_string(),
                        self.het_label(h).to_string(),
                        self.het_label(r).to_string(),
                    )
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationViolation {
    #[error("factorization missing for het {0}")]
    FactorizationMissing(String),
    #[error("factorization of het {0} is not unique ({1} factors)")]
    FactorizationNotUnique(String, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiAdjunctionError {
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("{} factorization violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<FactorizationViolation>),
}

/// A verified semi-adjunction. On the left side `functor: src → tgt` and
/// `canonical[x]` is `η_x: x → F(x)`; on the right side `functor: tgt → src`
/// and `canonical[a]` is `ε_a: G(a) → a`. `factors[h]` is the unique hom
/// through which het `h` factors.
#[derive(Debug, Clone)]
pub struct SemiAdjunctionWitness {
    pub side: Side,
    pub functor: Functor,
    pub canonical: Vec<Het>,
    pub bimodule: Arc<HetBimodule>,
    pub factors: Vec<Mor>,
}

/// Checks the semi-adjunction condition for every het: on the left, each
/// `h: x → a` is `g ∘ η_x` for exactly one `g: F(x) → a`; on the right, each
/// is `ε_a ∘ m` for exactly one `m: x → G(a)`.
pub fn check_semi_adjunction(
    side: Side,
    functor: &Functor,
    canonical: &[Het],
    bimodule: &Arc<HetBimodule>,
) -> Result<SemiAdjunctionWitness, SemiAdjunctionError> {
    let bm = bimodule.as_ref();
    let (fdom, fcod) = match side {
        Side::Left => (&bm.src, &bm.tgt),
        Side::Right => (&bm.tgt, &bm.src),
    };
    if !same_category(functor.dom(), fdom) || !same_category(functor.cod(), fcod) {
        return Err(SemiAdjunctionError::EndpointMismatch(
            "functor categories do not match the bimodule".into(),
        ));
    }
    if canonical.len() != fdom.object_count() {
        return Err(SemiAdjunctionError::EndpointMismatch(format!(
            "expected {} canonical hets, got {}",
            fdom.object_count(),
            canonical.len()
        )));
    }
    for o in fdom.objects() {
        let h = canonical[o.0];
        let fo = functor.map_object(o);
        let (want_src, want_tgt) = match side {
            Side::Left => (o, fo),
            Side::Right => (fo, o),
        };
        if h.0 >= bm.het_count() || bm.het_src(h) != want_src || bm.het_tgt(h) != want_tgt {
            return Err(SemiAdjunctionError::EndpointMismatch(format!(
                "canonical het for {} must run {} -> {}",
                fdom.object_label(o),
                bm.src.object_label(want_src),
                bm.tgt.object_label(want_tgt)
            )));
        }
    }

    let mut counts = vec![0usize; bm.het_count()];
    let mut factors = vec![None; bm.het_count()];
    for x in bm.src.objects() {
        for a in bm.tgt.objects() {
            let candidates: Vec<(Mor, Het)> = match side {
                Side::Left => {
                    let eta = canonical[x.0];
                    bm.tgt
                        .hom(functor.map_object(x), a)
                        .iter()
                        .map(|&g| (g, bm.post_action(g, eta).unwrap()))
                        .collect()
                }
                Side::Right => {
                    let eps = canonical[a.0];
                    bm.src
                        .hom(x, functor.map_object(a))
                        .iter()
                        .map(|&m| (m, bm.pre_action(eps, m).unwrap()))
                        .collect()
                }
            };
            for (m, h) in candidates {
                counts[h.0] += 1;
                factors[h.0].get_or_insert(m);
            }
        }
    }

    let mut violations = Vec::new();
    for x in bm.src.objects() {
        for a in bm.tgt.objects() {
            for &h in bm.hets(x, a) {
                match counts[h.0] {
                    1 => {}
                    0 => violations.push(FactorizationViolation::FactorizationMissing(
                        bm.het_label(h).to_string(),
                    )),
                    n => violations.push(FactorizationViolation::FactorizationNotUnique(
                        bm.het_label(h).to_string(),
                        n,
                    )),
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(SemiAdjunctionError::Violations(violations));
    }
    Ok(SemiAdjunctionWitness {
        side,
        functor: functor.clone(),
        canonical: canonical.to_vec(),
        bimodule: bimodule.clone(),
        factors: factors.into_iter().map(Option::unwrap).collect(),
    })
}

impl SemiAdjunctionWitness {
    /// Pairs `(het, arrow)` where the factor of a het moved by a hom action
    /// differs from the factor moved by the functor's image of that hom:
    /// `factor(h ∘ f) = factor(h) ∘ F(f)` on the left and
    /// `factor(k ∘ h) = G(k) ∘ factor(h)` on the right.
    pub fn naturality_violations(&self) -> Vec<(String, String)> {
        let bm = self.bimodule.as_ref();
        let mut out = Vec::new();
        for h in bm.all_hets() {
            let fh = self.factors[h.0];
            match self.side {
                Side::Left => {
                    let x = bm.het_src(h);
                    for f in bm.src.arrows().filter(|&f| bm.src.tgt(f) == x) {
                        let moved = self.factors[bm.pre_action(h, f).unwrap().0];
                        if bm.tgt.compose(fh, self.functor.map_arrow(f)) != Some(moved) {
                            out.push((bm.het_label(h).to_string(), bm.src.arrow_label(f).to_string()));
                        }
                    }
                }
                Side::Right => {
                    let a = bm.het_tgt(h);
                    for k in bm.tgt.arrows().filter(|&k| bm.tgt.src(k) == a) {
                        let moved = self.factors[bm.post_action(k, h).unwrap().0];
                        if bm.src.compose(self.functor.map_arrow(k), fh) != Some(moved) {
                            out.push((bm.het_label(h).to_string(), bm.tgt.arrow_label(k).to_string()));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `Hom(F(x), a) ≅ Het(x, a) ≅ Hom(x, G(a))` at one object pair, as
/// triples `(g, h, m)` in het order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairBijection {
    pub x: Ob,
    pub a: Ob,
    pub triples: Vec<(Mor, Het, Mor)>,
}

#[derive(Debug, Clone)]
pub struct AdjunctionWitness {
    pub left: SemiAdjunctionWitness,
    pub right: SemiAdjunctionWitness,
    pub bijections: Vec<PairBijection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjunctionError {
    #[error("the two semi-adjunctions are over different bimodules")]
    BimoduleMismatch,
    #[error("expected a left and a right semi-adjunction")]
    SideMismatch,
    #[error("bijection failure at ({x}, {a}): {reason}")]
    BijectionFailure { x: String, a: String, reason: String },
}

/// Glues a left and a right semi-adjunction along their shared hets and
/// checks that both factorization maps are bijections on every pair.
pub fn assemble_adjunction(
    left: &SemiAdjunctionWitness,
    right: &SemiAdjunctionWitness,
) -> Result<AdjunctionWitness, AdjunctionError> {
    if left.side != Side::Left || right.side != Side::Right {
        return Err(AdjunctionError::SideMismatch);
    }
    if !Arc::ptr_eq(&left.bimodule, &right.bimodule) && left.bimodule != right.bimodule {
        return Err(AdjunctionError::BimoduleMismatch);
    }
    let bm = left.bimodule.as_ref();
    let (f, g) = (&left.functor, &right.functor);
    let mut bijections = Vec::new();
    for x in bm.src.objects() {
        for a in bm.tgt.objects() {
            let fail = |reason: String| AdjunctionError::BijectionFailure {
                x: bm.src.object_label(x).to_string(),
                a: bm.tgt.object_label(a).to_string(),
                reason,
            };
            let hets = bm.hets(x, a);
            let homs_left = bm.tgt.hom(f.map_object(x), a);
            let homs_right = bm.src.hom(x, g.map_object(a));
            if homs_left.len() != hets.len() || homs_right.len() != hets.len() {
                return Err(fail(format!(
                    "|Hom(F(x), a)| = {}, |Het(x, a)| = {}, |Hom(x, G(a))| = {}",
                    homs_left.len(),
                    hets.len(),
                    homs_right.len()
                )));
            }
            let phi: HashMap<Mor, Het> = homs_left
                .iter()
                .map(|&m| (m, bm.post_action(m, left.canonical[x.0]).unwrap()))
                .collect();
            let psi: HashMap<Mor, Het> = homs_right
                .iter()
                .map(|&m| (m, bm.pre_action(right.canonical[a.0], m).unwrap()))
                .collect();
            let phi_inv: HashMap<Het, Mor> = phi.iter().map(|(&m, &h)| (h, m)).collect();
            let psi_inv: HashMap<Het, Mor> = psi.iter().map(|(&m, &h)| (h, m)).collect();
            if phi_inv.len() != hets.len() || psi_inv.len() != hets.len() {
                return Err(fail("a factorization map is not injective".into()));
            }
            let mut triples = Vec::with_capacity(hets.len());
            for &h in hets {
                let (Some(&gl), Some(&mr)) = (phi_inv.get(&h), psi_inv.get(&h)) else {
                    return Err(fail(format!("het {} is not hit", bm.het_label(h))));
                };
                // Round trips Hom(F x, a) -> Hom(x, G a) -> Hom(F x, a) and back.
                if phi_inv[&psi[&psi_inv[&phi[&gl]]]] != gl || psi_inv[&phi[&phi_inv[&psi[&mr]]]] != mr {
                    return Err(fail("composite correspondence is not an identity".into()));
                }
                triples.push((gl, h, mr));
            }
            bijections.push(PairBijection { x, a, triples });
        }
    }
    Ok(AdjunctionWitness {
        left: left.clone(),
        right: right.clone(),
        bijections,
    })
}

impl AdjunctionWitness {
    pub fn bijection(&self, x: Ob, a: Ob) -> &PairBijection {
        let nt = self.left.bimodule.tgt.object_count();
        &self.bijections[x.0 * nt + a.0]
    }

    /// Checks that the correspondence `(g, h, m)` is carried to a
    /// correspondence by every source arrow `f: x' → x`
    /// (`(g ∘ F(f), h ∘ f, m ∘ f)`) and every target arrow `k: a → a'`
    /// (`(k ∘ g, k ∘ h, G(k) ∘ m)`). Returns descriptions of failures.
    pub fn gluing_violations(&self) -> Vec<String> {
        let bm = self.left.bimodule.as_ref();
        let (ff, gg) = (&self.left.functor, &self.right.functor);
        let (src, tgt) = (&bm.src, &bm.tgt);
        let mut out = Vec::new();
        for bij in &self.bijections {
            for &(g, h, m) in &bij.triples {
                for f in src.arrows().filter(|&f| src.tgt(f) == bij.x) {
                    let want = (
                        tgt.compose(g, ff.map_arrow(f)).unwrap(),
                        bm.pre_action(h, f).unwrap(),
                        src.compose(m, f).unwrap(),
                    );
                    if !self.bijection(src.src(f), bij.a).triples.contains(&want) {
                        out.push(format!("{} moved by {}", bm.het_label(h), src.arrow_label(f)));
                    }
                }
                for k in tgt.arrows().filter(|&k| tgt.src(k) == bij.a) {
                    let want = (
                        tgt.compose(k, g).unwrap(),
                        bm.post_action(k, h).unwrap(),
                        src.compose(gg.map_arrow(k), m).unwrap(),
                    );
                    if !self.bijection(bij.x, tgt.tgt(k)).triples.contains(&want) {
                        out.push(format!("{} moved by {}", bm.het_label(h), tgt.arrow_label(k)));
                    }
                }
            }
        }
        out
    }
}

/// Which half of a brain functor a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BrainHalf {
    Perception,
    Action,
}

impl fmt::Display for BrainHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BrainHalf::Perception => "perception",
            BrainHalf::Action => "action",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrainError {
    #[error("{half}: endpoint mismatch: {reason}")]
    EndpointMismatch { half: BrainHalf, reason: String },
    #[error("{} brain violation(s), first: {}: {}", .0.len(), .0[0].0, .0[0].1)]
    Violations(Vec<(BrainHalf, FactorizationViolation)>),
}

/// A functor `brain: environment → organism` representing the incoming hets
/// on the left (perception) and the outgoing hets on the right (action).
#[derive(Debug, Clone)]
pub struct BrainFunctorWitness {
    pub brain: Functor,
    pub het_in: Arc<HetBimodule>,
    pub het_out: Arc<HetBimodule>,
    pub eta: Vec<Het>,
    pub eps: Vec<Het>,
    pub perception: SemiAdjunctionWitness,
    pub action: SemiAdjunctionWitness,
}

/// `het_in: environment ⇝ organism`, `het_out: organism ⇝ environment`.
/// Checks `Het_in(x, a) ≅ Hom(B(x), a)` via `eta` and
/// `Hom(a, B(x)) ≅ Het_out(a, x)` via `eps`, independently.
pub fn check_brain_functor(
    brain: &Functor,
    het_in: &Arc<HetBimodule>,
    het_out: &Arc<HetBimodule>,
    eta: &[Het],
    eps: &[Het],
) -> Result<BrainFunctorWitness, BrainError> {
    let perception = check_semi_adjunction(Side::Left, brain, eta, het_in);
    let action = check_semi_adjunction(Side::Right, brain, eps, het_out);
    let mut violations = Vec::new();
    for (half, r) in [(BrainHalf::Perception, &perception), (BrainHalf::Action, &action)] {
        match r {
            Err(SemiAdjunctionError::EndpointMismatch(reason)) => {
                return Err(BrainError::EndpointMismatch {
                    half,
                    reason: reason.clone(),
                })
            }
            Err(SemiAdjunctionError::Violations(v)) => {
                violations.extend(v.iter().cloned().map(|x| (half, x)));
            }
            Ok(_) => {}
        }
    }
    if !violations.is_empty() {
        return Err(BrainError::Violations(violations));
    }
    Ok(BrainFunctorWitness {
        brain: brain.clone(),
        het_in: het_in.clone(),
        het_out: het_out.clone(),
        eta: eta.to_vec(),
        eps: eps.to_vec(),
        perception: perception.unwrap(),
        action: action.unwrap(),
    })
}

/// Which end of the hets is held fixed in a representation search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixed {
    /// Fix `x` in the source; search `u` in the target with `η: x → u`.
    Src,
    /// Fix `a` in the target; search `u` in the source with `ε: u → a`.
    Tgt,
}

/// A universal het at a fixed object and the unique factor of every het
/// through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub object: Ob,
    pub canonical: Het,
    pub factor: BTreeMap<Het, Mor>,
}

/// Tries every candidate object and every candidate canonical het, keeping
/// those through which each het at `fixed` factors uniquely.
pub fn find_representing_object(
    bm: &HetBimodule,
    fixed: Ob,
    side: Fixed,
    limits: &Limits,
) -> Result<Vec<Representation>, CapExceeded> {
    ensure("object count", bm.src.object_count().max(bm.tgt.object_count()), limits.max_elements)?;
    let mut found = Vec::new();
    let candidates: Vec<(Ob, Het)> = match side {
        Fixed::Src => bm.tgt.objects().flat_map(|u| bm.hets(fixed, u).iter().map(move |&h| (u, h))).collect(),
        Fixed::Tgt => bm.src.objects().flat_map(|u| bm.hets(u, fixed).iter().map(move |&h| (u, h))).collect(),
    };
    for (u, canonical) in candidates {
        let mut factor: BTreeMap<Het, Mor> = BTreeMap::new();
        let mut counts: HashMap<Het, usize> = HashMap::new();
        let others: Vec<Ob> = match side {
            Fixed::Src => bm.tgt.objects().collect(),
            Fixed::Tgt => bm.src.objects().collect(),
        };
        for o in &others {
            let hits: Vec<(Mor, Het)> = match side {
                Fixed::Src => bm
                    .tgt
                    .hom(u, *o)
                    .iter()
                    .map(|&g| (g, bm.post_action(g, canonical).unwrap()))
                    .collect(),
                Fixed::Tgt => bm
                    .src
                    .hom(*o, u)
                    .iter()
                    .map(|&m| (m, bm.pre_action(canonical, m).unwrap()))
                    .collect(),
            };
            for (m, h) in hits {
                *counts.entry(h).or_default() += 1;
                factor.entry(h).or_insert(m);
            }
        }
        let all_unique = others.iter().all(|&o| {
            let hets = match side {
                Fixed::Src => bm.hets(fixed, o),
                Fixed::Tgt => bm.hets(o, fixed),
            };
            hets.iter().all(|h| counts.get(h) == Some(&1))
        });
        if all_unique {
            found.push(Representation {
                object: u,
                canonical,
                factor,
            });
        }
    }
    Ok(found)
}
