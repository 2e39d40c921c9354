//! Matrices over a prime field GF(p), biproducts of finite-dimensional
//! spaces with their injections and projections, and the biproduct brain
//! functor from tuples of spaces to single spaces.
//!
//! Matrices act on column vectors, so a map `V → W` with `dim V = n` and
//! `dim W = m` is an `m × n` matrix and "f then g" is `matmul(g, f)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::category::{CategoryBuilder, CategoryError, FiniteCategory, Functor, FunctorError, Mor, Ob};
use crate::het::{check_brain_functor, BimoduleBuilder, BimoduleError, BrainError, BrainFunctorWitness, Het, HetBimodule};
use crate::limits::{ensure, CapExceeded, Limits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("entry {0} is out of range for GF({1})")]
    EntryOutOfRange(u32, u32),
    #[error("a biproduct needs at least one component")]
    NoComponents,
    #[error("biproduct law fails: {0}")]
    BiproductLaw(String),
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Brain(#[from] BrainError),
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A `rows × cols` matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl PrimeFieldMatrix {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(&e) = entries.iter().find(|&&e| e >= p) {
            return Err(LinalgError::EntryOutOfRange(e, p));
        }
        Ok(PrimeFieldMatrix { p, rows, cols, entries })
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        PrimeFieldMatrix {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum::<u32>() % self.p)
            .collect()
    }

    /// Compact label `RxC:entries`, e.g. `2x1:10`.
    pub fn label(&self) -> String {
        let digits: String = self.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(
            if self.p < 10 { "" } else { "," },
        );
        format!("{}x{}:{}", self.rows, self.cols, digits)
    }
}

impl fmt::Display for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

fn same_prime(a: &PrimeFieldMatrix, b: &PrimeFieldMatrix) -> Result<(), LinalgError> {
    if a.p != b.p {
        return Err(LinalgError::PrimeMismatch(a.p, b.p));
    }
    Ok(())
}

/// `a · b`.
pub fn matmul(a: &PrimeFieldMatrix, b: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix, LinalgError> {
    same_prime(a, b)?;
    if a.cols != b.rows {
        return Err(LinalgError::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = PrimeFieldMatrix::zero(a.p, a.rows, b.cols);
    for r in 0..a.rows {
        for c in 0..b.cols {
            let s: u32 = (0..a.cols).map(|k| a.get(r, k) * b.get(k, c)).sum();
            out.entries[r * b.cols + c] = s % a.p;
        }
    }
    Ok(out)
}

pub fn matadd(a: &PrimeFieldMatrix, b: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix, LinalgError> {
    same_prime(a, b)?;
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(LinalgError::DimensionMismatch(format!(
            "{}x{} plus {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| (x + y) % a.p).collect();
    Ok(PrimeFieldMatrix { entries, ..a.clone() })
}

/// Every `rows × cols` matrix over GF(p), in base-p counting order of the
/// row-major entries.
pub fn all_matrices(p: u32, rows: usize, cols: usize) -> impl Iterator<Item = PrimeFieldMatrix> {
    let n = rows * cols;
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut entries = vec![0; n];
        for e in entries.iter_mut().rev() {
            *e = (code % p as u64) as u32;
            code /= p as u64;
        }
        PrimeFieldMatrix { p, rows, cols, entries }
    })
}

/// A space GF(p)^dim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceObj {
    pub p: u32,
    pub dim: usize,
}

/// `V_1 ⊕ … ⊕ V_n` with its injections and projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biproduct {
    pub components: Vec<SpaceObj>,
    pub total: SpaceObj,
    pub injections: Vec<PrimeFieldMatrix>,
    pub projections: Vec<PrimeFieldMatrix>,
}

/// Builds the block injections and projections and checks every biproduct
/// equation.
pub fn biproduct(components: &[SpaceObj]) -> Result<Biproduct, LinalgError> {
    let first = components.first().ok_or(LinalgError::NoComponents)?;
    let p = first.p;
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    if let Some(c) = components.iter().find(|c| c.p != p) {
        return Err(LinalgError::PrimeMismatch(p, c.p));
    }
    let total = components.iter().map(|c| c.dim).sum();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for c in components {
        let mut inj = PrimeFieldMatrix::zero(p, total, c.dim);
        let mut proj = PrimeFieldMatrix::zero(p, c.dim, total);
        for k in 0..c.dim {
            inj.entries[(offset + k) * c.dim + k] = 1;
            proj.entries[k * total + offset + k] = 1;
        }
        injections.push(inj);
        projections.push(proj);
        offset += c.dim;
    }
    let bp = Biproduct {
        components: components.to_vec(),
        total: SpaceObj { p, dim: total },
        injections,
        projections,
    };
    if let Some(v) = bp.law_violations().into_iter().next() {
        return Err(LinalgError::BiproductLaw(v));
    }
    Ok(bp)
}

impl Biproduct {
    /// `p_i ι_j = δ_ij · 1` and `Σ ι_i p_i = 1`; descriptions of failures.
    pub fn law_violations(&self) -> Vec<String> {
        let p = self.total.p;
        let mut out = Vec::new();
        for (i, proj) in self.projections.iter().enumerate() {
            for (j, inj) in self.injections.iter().enumerate() {
                let got = matmul(proj, inj).unwrap();
                let want = if i == j {
                    PrimeFieldMatrix::identity(p, self.components[i].dim)
                } else {
                    PrimeFieldMatrix::zero(p, self.components[i].dim, self.components[j].dim)
                };
                if got != want {
                    out.push(format!("p_{} . i_{} = {got}", i + 1, j + 1));
                }
            }
        }
        let mut sum = PrimeFieldMatrix::zero(p, self.total.dim, self.total.dim);
        for (inj, proj) in self.injections.iter().zip(&self.projections) {
            sum = matadd(&sum, &matmul(inj, proj).unwrap()).unwrap();
        }
        if sum != PrimeFieldMatrix::identity(p, self.total.dim) {
            out.push(format!("sum of i_k . p_k = {sum}"));
        }
        out
    }
}

/// The unique `u: ⊕V_i → W` with `u ι_i = f_i`: the block row `[f_1 … f_n]`.
pub fn factor_cocone(bp: &Biproduct, maps: &[PrimeFieldMatrix]) -> Result<PrimeFieldMatrix, LinalgError> {
    if maps.len() != bp.components.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} maps for {} components",
            maps.len(),
            bp.components.len()
        )));
    }
    let p = bp.total.p;
    let w = maps[0].rows;
    for (f, c) in maps.iter().zip(&bp.components) {
        if f.p != p {
            return Err(LinalgError::PrimeMismatch(p, f.p));
        }
        if f.rows != w || f.cols != c.dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "cocone leg {}x{} does not fit V of dim {} and W of dim {w}",
                f.rows, f.cols, c.dim
            )));
        }
    }
    let mut u = PrimeFieldMatrix::zero(p, w, bp.total.dim);
    let mut offset = 0;
    for f in maps {
        for r in 0..w {
            for c in 0..f.cols {
                u.entries[r * bp.total.dim + offset + c] = f.get(r, c);
            }
        }
        offset += f.cols;
    }
    Ok(u)
}

/// The unique `v: W → ⊕V_i` with `p_i v = g_i`: the block column of the `g_i`.
pub fn factor_cone(bp: &Biproduct, maps: &[PrimeFieldMatrix]) -> Result<PrimeFieldMatrix, LinalgError> {
    if maps.len() != bp.components.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} maps for {} components",
            maps.len(),
            bp.components.len()
        )));
    }
    let p = bp.total.p;
    let w = maps[0].cols;
    for (g, c) in maps.iter().zip(&bp.components) {
        if g.p != p {
            return Err(LinalgError::PrimeMismatch(p, g.p));
        }
        if g.cols != w || g.rows != c.dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "cone leg {}x{} does not fit W of dim {w} and V of dim {}",
                g.rows, g.cols, c.dim
            )));
        }
    }
    let entries = maps.iter().flat_map(|g| g.entries.iter().copied()).collect();
    Ok(PrimeFieldMatrix {
        p,
        rows: bp.total.dim,
        cols: w,
        entries,
    })
}

fn tuple_label(t: &[usize]) -> String {
    if t.len() == 1 {
        return t[0].to_string();
    }
    let parts: Vec<String> = t.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

fn maps_label(ms: &[PrimeFieldMatrix]) -> String {
    let parts: Vec<String> = ms.iter().map(PrimeFieldMatrix::label).collect();
    format!("[{}]", parts.join("|"))
}

/// Every tuple of matrices `(m_i)` with `m_i` of shape `rows[i] × cols[i]`.
fn all_tuples(p: u32, rows: &[usize], cols: &[usize]) -> Vec<Vec<PrimeFieldMatrix>> {
    let mut out = vec![Vec::new()];
    for (&r, &c) in rows.iter().zip(cols) {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                all_matrices(p, r, c).map(move |m| {
                    let mut v = prefix.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    out
}

fn tuple_hom_size(p: u32, s: &[usize], t: &[usize]) -> usize {
    let exp: usize = s.iter().zip(t).map(|(a, b)| a * b).sum();
    (p as usize).saturating_pow(exp as u32)
}

/// A category of tuples of spaces over GF(p): objects are dimension
/// tuples, arrows `s → t` are tuples of matrices `t_i × s_i`, composed
/// componentwise.
#[derive(Debug, Clone)]
pub struct TupleCategory {
    pub p: u32,
    pub objects: Vec<Vec<usize>>,
    pub category: Arc<FiniteCategory>,
    arrows: HashMap<Vec<PrimeFieldMatrix>, Mor>,
    maps: Vec<Vec<PrimeFieldMatrix>>,
}

impl TupleCategory {
    pub fn new(p: u32, objects: Vec<Vec<usize>>, limits: &Limits) -> Result<Self, LinalgError> {
        let n = objects.len();
        let hom = |i: usize, j: usize| tuple_hom_size(p, &objects[i], &objects[j]);
        let arrow_count: usize = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| hom(i, j)).sum();
        ensure("arrow count", arrow_count, limits.max_arrows)?;
        let mut triples = 0usize;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab_bc = hom(a, b).saturating_mul(hom(b, c));
                    let out: usize = (0..n).map(|d| hom(c, d)).sum();
                    triples = triples.saturating_add(ab_bc.saturating_mul(out));
                }
            }
        }
        ensure("composable triples", triples, limits.max_triples)?;

        let mut b = CategoryBuilder::new();
        for t in &objects {
            b.add_object(tuple_label(t))?;
        }
        let mut arrows = HashMap::new();
        let mut maps = Vec::new();
        let mut by_pair = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for ms in all_tuples(p, &objects[j], &objects[i]) {
                    let m = b.add_arrow(format!("{}->{}:{}", tuple_label(&objects[i]), tuple_label(&objects[j]), maps_label(&ms)), Ob(i), Ob(j))?;
                    arrows.insert(ms.clone(), m);
                    maps.push(ms);
                    by_pair[i * n + j].push(m);
                }
            }
        }
        for (i, t) in objects.iter().enumerate() {
            let id: Vec<_> = t.iter().map(|&d| PrimeFieldMatrix::identity(p, d)).collect();
            b.set_identity(Ob(i), arrows[&id]);
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for &f in &by_pair[i * n + j] {
                        for &g in &by_pair[j * n + k] {
                            let gf: Vec<_> = maps[g.0]
                                .iter()
                                .zip(&maps[f.0])
                                .map(|(x, y)| matmul(x, y).unwrap())
                                .collect();
                            b.set_compose(g, f, arrows[&gf])?;
                        }
                    }
                }
            }
        }
        let category = Arc::new(b.build(limits)?);
        Ok(TupleCategory {
            p,
            objects,
            category,
            arrows,
            maps,
        })
    }

    pub fn arrow_of(&self, maps: &[PrimeFieldMatrix]) -> Option<Mor> {
        self.arrows.get(maps).copied()
    }

    pub fn maps(&self, m: Mor) -> &[PrimeFieldMatrix] {
        &self.maps[m.0]
    }

    pub fn object_of(&self, t: &[usize]) -> Option<Ob> {
        self.objects.iter().position(|o| o == t).map(Ob)
    }
}

/// Cocones `(h_i: V_i → W)` as hets from tuples in `env` to spaces in
/// `org`; source arrows act componentwise on the right, target arrows on
/// the left.
fn cocone_bimodule(env: &TupleCategory, org: &TupleCategory, limits: &Limits) -> Result<(HetBimodule, HashMap<Vec<PrimeFieldMatrix>, Het>), LinalgError> {
    let p = env.p;
    let mut b = BimoduleBuilder::new(env.category.clone(), org.category.clone());
    let mut index = HashMap::new();
    let mut hets = Vec::new();
    for (i, t) in env.objects.iter().enumerate() {
        for (j, w) in org.objects.iter().enumerate() {
            let rows = vec![w[0]; t.len()];
            for hs in all_tuples(p, &rows, t) {
                let h = b.add_het(format!("{}~>{}:{}", tuple_label(t), w[0], maps_label(&hs)), Ob(i), Ob(j))?;
                index.insert(hs.clone(), h);
                hets.push((hs, Ob(i), Ob(j)));
            }
        }
    }
    ensure("het count", hets.len(), limits.max_arrows)?;
    for (hi, (hs, x, a)) in hets.iter().enumerate() {
        let h = Het(hi);
        for f in env.category.arrows().filter(|&f| env.category.tgt(f) == *x) {
            let r: Vec<_> = hs.iter().zip(env.maps(f)).map(|(h, f)| matmul(h, f).unwrap()).collect();
            b.set_pre(h, f, index[&r])?;
        }
        for g in org.category.arrows().filter(|&g| org.category.src(g) == *a) {
            let r: Vec<_> = hs.iter().map(|h| matmul(&org.maps(g)[0], h).unwrap()).collect();
            b.set_post(g, h, index[&r])?;
        }
    }
    Ok((b.build(limits)?, index))
}

/// Cones `(g_i: W → V_i)` as hets from spaces in `org` to tuples in `env`.
fn cone_bimodule(org: &TupleCategory, env: &TupleCategory, limits: &Limits) -> Result<(HetBimodule, HashMap<Vec<PrimeFieldMatrix>, Het>), LinalgError> {
    let p = env.p;
    let mut b = BimoduleBuilder::new(org.category.clone(), env.category.clone());
    let mut index = HashMap::new();
    let mut hets = Vec::new();
    for (j, w) in org.objects.iter().enumerate() {
        for (i, t) in env.objects.iter().enumerate() {
            let cols = vec![w[0]; t.len()];
            for gs in all_tuples(p, t, &cols) {
                let h = b.add_het(format!("{}~>{}:{}", w[0], tuple_label(t), maps_label(&gs)), Ob(j), Ob(i))?;
                index.insert(gs.clone(), h);
                hets.push((gs, Ob(j), Ob(i)));
            }
        }
    }
    ensure("het count", hets.len(), limits.max_arrows)?;
    for (hi, (gs, x, a)) in hets.iter().enumerate() {
        let h = Het(hi);
        for m in org.category.arrows().filter(|&m| org.category.tgt(m) == *x) {
            let r: Vec<_> = gs.iter().map(|g| matmul(g, &org.maps(m)[0]).unwrap()).collect();
            b.set_pre(h, m, index[&r])?;
        }
        for k in env.category.arrows().filter(|&k| env.category.src(k) == *a) {
            let r: Vec<_> = env.maps(k).iter().zip(gs).map(|(k, g)| matmul(k, g).unwrap()).collect();
            b.set_post(k, h, index[&r])?;
        }
    }
    Ok((b.build(limits)?, index))
}

fn vector_categories(p: u32, dims: &[usize], limits: &Limits) -> Result<(TupleCategory, TupleCategory), LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    if dims.is_empty() {
        return Err(LinalgError::NoComponents);
    }
    ensure("prime", p as usize, limits.max_prime as usize)?;
    ensure("component count", dims.len(), limits.max_components)?;
    ensure("component dimension", dims.iter().copied().max().unwrap_or(0), limits.max_dim)?;

    let mut env_objects = vec![Vec::new()];
    for &d in dims {
        env_objects = env_objects
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..=d).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    let total: usize = dims.iter().sum();
    let org_objects = (0..=total).map(|d| vec![d]).collect();
    Ok((TupleCategory::new(p, env_objects, limits)?, TupleCategory::new(p, org_objects, limits)?))
}

/// The cocone bimodule (environment ⇝ organism) and the cone bimodule
/// (organism ⇝ environment) of the biproduct brain, without the brain.
pub fn vector_bimodules(p: u32, dims: &[usize], limits: &Limits) -> Result<(HetBimodule, HetBimodule), LinalgError> {
    let (env, org) = vector_categories(p, dims, limits)?;
    Ok((cocone_bimodule(&env, &org, limits)?.0, cone_bimodule(&org, &env, limits)?.0))
}

/// The biproduct brain over GF(p). The environment holds every tuple `t`
/// with `t_i ≤ dims_i`, the organism every space of dimension up to
/// `Σ dims_i`; the brain sends a tuple to its direct sum and a tuple of
/// maps to the block-diagonal map. Perception hets are cocones with the
/// injections as `η`; action hets are cones with the projections as `ε`.
pub fn vector_brain(p: u32, dims: &[usize], limits: &Limits) -> Result<BrainFunctorWitness, LinalgError> {
    let (env, org) = vector_categories(p, dims, limits)?;

    let mut objects = Vec::new();
    for t in &env.objects {
        objects.push(org.object_of(&[t.iter().sum()]).unwrap());
    }
    let mut arrows = Vec::new();
    for f in env.category.arrows() {
        let fs = env.maps(f);
        let (rows, cols): (usize, usize) = (fs.iter().map(|m| m.rows).sum(), fs.iter().map(|m| m.cols).sum());
        let mut block = PrimeFieldMatrix::zero(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in fs {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    block.entries[(r0 + r) * cols + c0 + c] = m.get(r, c);
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        arrows.push(org.arrow_of(&[block]).unwrap());
    }
    let brain = Functor::new(env.category.clone(), org.category.clone(), objects, arrows)?;

    let (het_in, in_index) = cocone_bimodule(&env, &org, limits)?;
    let (het_out, out_index) = cone_bimodule(&org, &env, limits)?;
    let mut eta = Vec::new();
    let mut eps = Vec::new();
    for t in &env.objects {
        let bp = biproduct(&t.iter().map(|&dim| SpaceObj { p, dim }).collect::<Vec<_>>())?;
        eta.push(in_index[&bp.injections]);
        eps.push(out_index[&bp.projections]);
    }
    Ok(check_brain_functor(&brain, &Arc::new(het_in), &Arc::new(het_out), &eta, &eps)?)
}
