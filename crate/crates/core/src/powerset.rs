//! Powerset models: `℘(U)` ordered by inclusion, the diagonal, meet and
//! join maps, the three quantifier maps of a function, the fork,
//! completeness and consistency het bimodules, and the inverse-image brain.
//!
//! A subset of a universe is a bitmask over the universe's input order, and
//! the subset with mask `m` is element `m` of the powerset poset. Labels
//! list members in universe order: `{}`, `{1}`, `{1,3}`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{
    find_universal, functor_from_monotone, poset_to_category, CategoryError, Direction, FiniteCategory, Functor,
    FunctorError, ObjectPredicate, Ob, UniversalWitness,
};
use crate::het::{
    assemble_adjunction, check_brain_functor, check_semi_adjunction, thin_bimodule, AdjunctionError,
    AdjunctionWitness, BimoduleError, BrainError, BrainFunctorWitness, Het, HetBimodule, SemiAdjunctionError,
    SemiAdjunctionWitness,
};
use crate::limits::{ensure, CapExceeded, Limits};
use crate::poset::{
    bound, check_galois_connection, compute_adjoint, product_poset, BoundKind, FinitePoset, GaloisConnection,
    GaloisError, MonotoneError, MonotoneMap, PosetError,
};
use crate::Side;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowersetError {
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("label {0:?} may not contain braces, commas or angle brackets")]
    InvalidLabel(String),
    #[error("{0} is assigned more than once")]
    DuplicateAssignment(String),
    #[error("{0} has no image")]
    Totality(String),
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Monotone(#[from] MonotoneError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    SemiAdjunction(#[from] SemiAdjunctionError),
    #[error(transparent)]
    Adjunction(#[from] AdjunctionError),
    #[error(transparent)]
    Brain(#[from] BrainError),
    #[error("computed {0:?} adjoint does not match the quantifier map")]
    AdjointMismatch(Side),
    #[error("universal search returned {found} witnesses, expected the single meet")]
    UniversalMismatch { found: usize },
}

fn check_universe<S: AsRef<str>>(universe: &[S], limits: &Limits) -> Result<Vec<String>, PowersetError> {
    ensure("universe size", universe.len(), limits.max_universe)?;
    let mut out: Vec<String> = Vec::with_capacity(universe.len());
    for u in universe {
        let u = u.as_ref();
        if u.is_empty() || u.contains(['{', '}', ',', '<', '>']) {
            return Err(PowersetError::InvalidLabel(u.to_string()));
        }
        if out.iter().any(|v| v == u) {
            return Err(PowersetError::DuplicateLabel(u.to_string()));
        }
        out.push(u.to_string());
    }
    Ok(out)
}

/// A subset of a labelled universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetLabel {
    pub universe: Vec<String>,
    pub mask: u64,
}

impl SubsetLabel {
    pub fn new<S: AsRef<str>>(universe: &[String], members: &[S]) -> Result<Self, PowersetError> {
        let mut mask = 0;
        for m in members {
            let i = universe
                .iter()
                .position(|u| u == m.as_ref())
                .ok_or_else(|| PowersetError::UnknownLabel(m.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Ok(SubsetLabel {
            universe: universe.to_vec(),
            mask,
        })
    }

    /// Parses `{a,b}` (whitespace around members is ignored).
    pub fn parse(universe: &[String], text: &str) -> Result<Self, PowersetError> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| PowersetError::InvalidLabel(text.to_string()))?;
        let members: Vec<&str> = inner.split(',').map(str::trim).filter(|m| !m.is_empty()).collect();
        Self::new(universe, &members)
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&subset_label(&self.universe, self.mask))
    }
}

/// `{}` or the members of `mask` in universe order.
pub fn subset_label(universe: &[String], mask: u64) -> String {
    let members: Vec<&str> = universe
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, u)| u.as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// `℘(U)` ordered by inclusion; element `m` is the subset with mask `m`.
pub fn powerset_poset<S: AsRef<str>>(universe: &[S], limits: &Limits) -> Result<FinitePoset, PowersetError> {
    let universe = check_universe(universe, limits)?;
    let labels = (0..1u64 << universe.len()).map(|m| subset_label(&universe, m)).collect();
    Ok(FinitePoset::from_relation_unchecked(labels, |a, b| a & !b == 0))
}

fn square(p: &FinitePoset, limits: &Limits) -> Result<FinitePoset, PowersetError> {
    Ok(product_poset(p, p, limits)?)
}

/// `Δ: ℘(U) → ℘(U)²`, `x ↦ <x,x>`.
pub fn diagonal_map<S: AsRef<str>>(universe: &[S], limits: &Limits) -> Result<MonotoneMap, PowersetError> {
    let p = Arc::new(powerset_poset(universe, limits)?);
    let sq = Arc::new(square(&p, limits)?);
    let n = p.len();
    Ok(MonotoneMap::from_fn(p, sq, |x| x * n + x)?)
}

fn binary_map<S: AsRef<str>>(
    universe: &[S],
    limits: &Limits,
    op: fn(usize, usize) -> usize,
) -> Result<MonotoneMap, PowersetError> {
    let p = Arc::new(powerset_poset(universe, limits)?);
    let sq = Arc::new(square(&p, limits)?);
    let n = p.len();
    Ok(MonotoneMap::from_fn(sq, p, |ab| op(ab / n, ab % n))?)
}

/// `∩: ℘(U)² → ℘(U)`.
pub fn meet_map<S: AsRef<str>>(universe: &[S], limits: &Limits) -> Result<MonotoneMap, PowersetError> {
    binary_map(universe, limits, |a, b| a & b)
}

/// `∪: ℘(U)² → ℘(U)`.
pub fn join_map<S: AsRef<str>>(universe: &[S], limits: &Limits) -> Result<MonotoneMap, PowersetError> {
    binary_map(universe, limits, |a, b| a | b)
}

/// Finds the universal for "x ⊆ a and x ⊆ b" over the category of `℘(U)`
/// by brute-force search and checks it is the only one.
pub fn intersection_universal<S: AsRef<str>>(
    universe: &[S],
    a: u64,
    b: u64,
    limits: &Limits,
) -> Result<UniversalWitness, PowersetError> {
    let p = powerset_poset(universe, limits)?;
    let cat = Arc::new(poset_to_category(&p, limits)?);
    let pred = ObjectPredicate::new(cat, Direction::ArrowsTo, |x| {
        let x = x.0 as u64;
        x & !a == 0 && x & !b == 0
    });
    let mut found = find_universal(&pred, limits)?;
    if found.len() != 1 {
        return Err(PowersetError::UniversalMismatch { found: found.len() });
    }
    Ok(found.remove(0))
}

/// A total function between two finite label sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFunction {
    dom: Vec<String>,
    cod: Vec<String>,
    map: Vec<usize>,
}

impl FiniteFunction {
    /// Builds `f` from `(x, f(x))` pairs, checking totality and labels.
    pub fn new<S: AsRef<str>>(
        dom: &[S],
        cod: &[S],
        pairs: &[(S, S)],
        limits: &Limits,
    ) -> Result<Self, PowersetError> {
        let dom = check_universe(dom, limits)?;
        let cod = check_universe(cod, limits)?;
        let mut map = vec![None; dom.len()];
        for (x, y) in pairs {
            let (x, y) = (x.as_ref(), y.as_ref());
            let i = dom
                .iter()
                .position(|d| d == x)
                .ok_or_else(|| PowersetError::UnknownLabel(x.to_string()))?;
            let j = cod
                .iter()
                .position(|c| c == y)
                .ok_or_else(|| PowersetError::UnknownLabel(y.to_string()))?;
            if map[i].replace(j).is_some() {
                return Err(PowersetError::DuplicateAssignment(x.to_string()));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| PowersetError::Totality(dom[i].clone())))
            .collect::<Result<_, _>>()?;
        Ok(FiniteFunction { dom, cod, map })
    }

    /// `f(dom[i]) = cod[map[i]]`.
    pub fn from_indices<S: AsRef<str>>(
        dom: &[S],
        cod: &[S],
        map: Vec<usize>,
        limits: &Limits,
    ) -> Result<Self, PowersetError> {
        let dom = check_universe(dom, limits)?;
        let cod = check_universe(cod, limits)?;
        assert_eq!(map.len(), dom.len(), "one image per domain element");
        if let Some(i) = map.iter().position(|&j| j >= cod.len()) {
            return Err(PowersetError::Totality(dom[i].clone()));
        }
        Ok(FiniteFunction { dom, cod, map })
    }

    /// The projection `X × Y → Y`, `(x,y) ↦ y`, with domain labels `(x,y)`
    /// in row-major order.
    pub fn projection<S: AsRef<str>>(xs: &[S], ys: &[S], limits: &Limits) -> Result<Self, PowersetError> {
        let xs = check_universe(xs, &Limits {
            max_universe: usize::MAX,
            ..*limits
        })?;
        let ys = check_universe(ys, limits)?;
        let dom: Vec<String> = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| format!("({x};{y})")))
            .collect();
        let map = (0..dom.len()).map(|i| i % ys.len()).collect();
        Self::from_indices(&dom, &ys, map, limits)
    }

    pub fn dom(&self) -> &[String] {
        &self.dom
    }

    pub fn cod(&self) -> &[String] {
        &self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `f⁻¹(V)` as a mask over the domain.
    pub fn preimage(&self, v: u64) -> u64 {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, &y)| v >> y & 1 == 1)
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    /// `∃_f(U) = f(U)`.
    pub fn image(&self, u: u64) -> u64 {
        self.map
            .iter()
            .enumerate()
            .filter(|(x, _)| u >> x & 1 == 1)
            .fold(0, |m, (_, &y)| m | 1 << y)
    }

    /// `∀_f(U)`: the `y` whose whole preimage lies in `U`.
    pub fn universal_image(&self, u: u64) -> u64 {
        (0..self.cod.len())
            .filter(|&y| self.preimage(1 << y) & !u == 0)
            .fold(0, |m, y| m | 1 << y)
    }
}

fn powersets(f: &FiniteFunction, limits: &Limits) -> Result<(Arc<FinitePoset>, Arc<FinitePoset>), PowersetError> {
    Ok((
        Arc::new(powerset_poset(&f.dom, limits)?),
        Arc::new(powerset_poset(&f.cod, limits)?),
    ))
}

/// `f⁻¹: ℘(Y) → ℘(X)`.
pub fn inverse_image(f: &FiniteFunction, limits: &Limits) -> Result<MonotoneMap, PowersetError> {
    let (px, py) = powersets(f, limits)?;
    Ok(MonotoneMap::from_fn(py, px, |v| f.preimage(v as u64) as usize)?)
}

/// `∃_f: ℘(X) → ℘(Y)`, the direct image.
pub fn exists_f(f: &FiniteFunction, limits: &Limits) -> Result<MonotoneMap, PowersetError> {
    let (px, py) = powersets(f, limits)?;
    Ok(MonotoneMap::from_fn(px, py, |u| f.image(u as u64) as usize)?)
}

/// `∀_f: ℘(X) → ℘(Y)`.
pub fn forall_f(f: &FiniteFunction, limits: &Limits) -> Result<MonotoneMap, PowersetError> {
    let (px, py) = powersets(f, limits)?;
    Ok(MonotoneMap::from_fn(px, py, |u| f.universal_image(u as u64) as usize)?)
}

/// Both Galois connections `∃_f ⊣ f⁻¹ ⊣ ∀_f`, checked over every pair.
#[derive(Debug, Clone)]
pub struct QuantifierReport {
    pub exists_inverse: GaloisConnection,
    pub inverse_forall: GaloisConnection,
    /// `compute_adjoint(f⁻¹, Left) = ∃_f` and `compute_adjoint(f⁻¹, Right) = ∀_f`.
    pub adjoints_match: bool,
}

pub fn quantifier_triple_check(f: &FiniteFunction, limits: &Limits) -> Result<QuantifierReport, PowersetError> {
    let inv = inverse_image(f, limits)?;
    let ex = exists_f(f, limits)?;
    let all = forall_f(f, limits)?;
    let exists_inverse = check_galois_connection(&ex, &inv)?;
    let inverse_forall = check_galois_connection(&inv, &all)?;
    if compute_adjoint(&inv, Side::Left).as_ref() != Some(&ex) {
        return Err(PowersetError::AdjointMismatch(Side::Left));
    }
    if compute_adjoint(&inv, Side::Right).as_ref() != Some(&all) {
        return Err(PowersetError::AdjointMismatch(Side::Right));
    }
    Ok(QuantifierReport {
        exists_inverse,
        inverse_forall,
        adjoints_match: true,
    })
}

fn category_of(p: &FinitePoset, limits: &Limits) -> Result<Arc<FiniteCategory>, PowersetError> {
    Ok(Arc::new(poset_to_category(p, limits)?))
}

/// The fork bimodule `℘(U) ⇝ ℘(U)²`: one het `c ~> <a,b>` iff `c ⊆ a` and
/// `c ⊆ b`.
pub fn fork_bimodule<S: AsRef<str>>(universe: &[S], limits: &Limits) -> Result<HetBimodule, PowersetError> {
    let p = powerset_poset(universe, limits)?;
    let sq = square(&p, limits)?;
    let n = p.len();
    Ok(thin_bimodule(
        category_of(&p, limits)?,
        category_of(&sq, limits)?,
        |c, ab| {
            let (a, b) = (ab.0 / n, ab.0 % n);
            c.0 & !a == 0 && c.0 & !b == 0
        },
        limits,
    )?)
}

/// `℘(Y) ⇝ ℘(X)`: a het `V ~> U` iff `U` is complete for `V`, that is
/// `V ⊆ ∀_f(U)`.
pub fn completeness_bimodule(f: &FiniteFunction, limits: &Limits) -> Result<HetBimodule, PowersetError> {
    let (px, py) = powersets(f, limits)?;
    Ok(thin_bimodule(
        category_of(&py, limits)?,
        category_of(&px, limits)?,
        |v, u| v.0 as u64 & !f.universal_image(u.0 as u64) == 0,
        limits,
    )?)
}

/// `℘(X) ⇝ ℘(Y)`: a het `U' ~> V` iff `U'` is consistent with `V`, that is
/// `f(U') ⊆ V`.
pub fn consistency_bimodule(f: &FiniteFunction, limits: &Limits) -> Result<HetBimodule, PowersetError> {
    let (px, py) = powersets(f, limits)?;
    Ok(thin_bimodule(
        category_of(&px, limits)?,
        category_of(&py, limits)?,
        |u, v| f.image(u.0 as u64) & !(v.0 as u64) == 0,
        limits,
    )?)
}

fn het_between(bm: &HetBimodule, x: Ob, a: Ob) -> Result<Het, PowersetError> {
    bm.hets(x, a).first().copied().ok_or_else(|| {
        PowersetError::SemiAdjunction(SemiAdjunctionError::EndpointMismatch(format!(
            "no het {} ~> {}",
            bm.src().object_label(x),
            bm.tgt().object_label(a)
        )))
    })
}

/// `Δ ⊣ ∩` glued along the fork bimodule, with `η_c: c ~> <c,c>` and
/// `ε_<a,b>: a∩b ~> <a,b>`.
pub fn delta_meet_adjunction<S: AsRef<str>>(
    universe: &[S],
    limits: &Limits,
) -> Result<AdjunctionWitness, PowersetError> {
    let bm = Arc::new(fork_bimodule(universe, limits)?);
    let delta = functor_from_monotone(&diagonal_map(universe, limits)?, bm.src().clone(), bm.tgt().clone())?;
    let meet = functor_from_monotone(&meet_map(universe, limits)?, bm.tgt().clone(), bm.src().clone())?;
    let eta = bm
        .src()
        .objects()
        .map(|c| het_between(&bm, c, delta.map_object(c)))
        .collect::<Result<Vec<_>, _>>()?;
    let eps = bm
        .tgt()
        .objects()
        .map(|ab| het_between(&bm, meet.map_object(ab), ab))
        .collect::<Result<Vec<_>, _>>()?;
    let left = check_semi_adjunction(Side::Left, &delta, &eta, &bm)?;
    let right = check_semi_adjunction(Side::Right, &meet, &eps, &bm)?;
    Ok(assemble_adjunction(&left, &right)?)
}

/// `∃_f ⊣ f⁻¹` glued along the consistency bimodule.
pub fn exists_inverse_adjunction(f: &FiniteFunction, limits: &Limits) -> Result<AdjunctionWitness, PowersetError> {
    let bm = Arc::new(consistency_bimodule(f, limits)?);
    let ex = functor_from_monotone(&exists_f(f, limits)?, bm.src().clone(), bm.tgt().clone())?;
    let inv = functor_from_monotone(&inverse_image(f, limits)?, bm.tgt().clone(), bm.src().clone())?;
    let eta = bm
        .src()
        .objects()
        .map(|u| het_between(&bm, u, ex.map_object(u)))
        .collect::<Result<Vec<_>, _>>()?;
    let eps = bm
        .tgt()
        .objects()
        .map(|v| het_between(&bm, inv.map_object(v), v))
        .collect::<Result<Vec<_>, _>>()?;
    let left = check_semi_adjunction(Side::Left, &ex, &eta, &bm)?;
    let right = check_semi_adjunction(Side::Right, &inv, &eps, &bm)?;
    Ok(assemble_adjunction(&left, &right)?)
}

/// The brain functor `f⁻¹: ℘(Y) → ℘(X)` with perception over the
/// completeness bimodule (`η_V: V ~> f⁻¹(V)`) and action over the
/// consistency bimodule (`ε_V: f⁻¹(V) ~> V`).
pub fn powerset_brain(f: &FiniteFunction, limits: &Limits) -> Result<BrainFunctorWitness, PowersetError> {
    let het_in = Arc::new(completeness_bimodule(f, limits)?);
    let het_out = Arc::new(consistency_bimodule(f, limits)?);
    let brain = functor_from_monotone(&inverse_image(f, limits)?, het_in.src().clone(), het_in.tgt().clone())?;
    let eta = het_in
        .src()
        .objects()
        .map(|v| het_between(&het_in, v, brain.map_object(v)))
        .collect::<Result<Vec<_>, _>>()?;
    let eps = het_out
        .tgt()
        .objects()
        .map(|v| het_between(&het_out, brain.map_object(v), v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(check_brain_functor(&brain, &het_in, &het_out, &eta, &eps)?)
}

/// The action half of a powerset brain run with an arbitrary monotone
/// `brain: ℘(Y) → ℘(X)` in place of `f⁻¹`. Each `ε_V` is the consistency
/// het `brain(V) ~> V`, which exists whenever `brain(V) ⊆ f⁻¹(V)`.
pub fn consistency_action(
    f: &FiniteFunction,
    brain: &MonotoneMap,
    limits: &Limits,
) -> Result<SemiAdjunctionWitness, PowersetError> {
    let het_out = Arc::new(consistency_bimodule(f, limits)?);
    let g = functor_from_monotone(brain, het_out.tgt().clone(), het_out.src().clone())?;
    let eps = het_out
        .tgt()
        .objects()
        .map(|v| het_between(&het_out, g.map_object(v), v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(check_semi_adjunction(Side::Right, &g, &eps, &het_out)?)
}

/// The functor `℘(U) → ℘(U)` of a monotone self-map, over the category of
/// `℘(U)`; a convenience for building brain variants.
pub fn powerset_functor(map: &MonotoneMap, limits: &Limits) -> Result<Functor, PowersetError> {
    let dom = category_of(map.dom(), limits)?;
    let cod = category_of(map.cod(), limits)?;
    Ok(functor_from_monotone(map, dom, cod)?)
}

/// `A = ∪ family` and `A* = ∪ (family ∪ {A})`, both computed as joins in
/// `℘(U)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThirdManReport {
    pub union: u64,
    pub union_label: String,
    pub augmented_union: u64,
    pub augmented_label: String,
    pub regress_stops: bool,
}

pub fn third_man_demo<S: AsRef<str>>(
    universe: &[S],
    family: &[u64],
    limits: &Limits,
) -> Result<ThirdManReport, PowersetError> {
    let p = powerset_poset(universe, limits)?;
    let universe = check_universe(universe, limits)?;
    let full = (1u64 << universe.len()) - 1;
    if let Some(&m) = family.iter().find(|&&m| m & !full != 0) {
        return Err(PowersetError::UnknownLabel(format!("subset mask {m:#b}")));
    }
    let members: Vec<usize> = family.iter().map(|&m| m as usize).collect();
    let a = bound(&p, &members, BoundKind::Join).expect("powersets have all joins");
    let mut augmented = members;
    augmented.push(a);
    let a_star = bound(&p, &augmented, BoundKind::Join).expect("powersets have all joins");
    Ok(ThirdManReport {
        union: a as u64,
        union_label: p.label(a).to_string(),
        augmented_union: a_star as u64,
        augmented_label: p.label(a_star).to_string(),
        regress_stops: a == a_star,
    })
}
