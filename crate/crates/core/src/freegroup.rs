//! Reduced words over a finite generator set, finite groups given by
//! multiplication tables, and the bounded check of the free group's
//! universal mapping property.
//!
//! The free group is infinite, so everything here works on the fragment of
//! reduced words of length at most `depth`.

use rayon::prelude::*;
use thiserror::Error;

use crate::limits::{ensure, CapExceeded, Limits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown group element {0}")]
    UnknownElement(String),
    #[error("generator {0} has no assigned image")]
    Unassigned(String),
    #[error("table must be {0} x {0}")]
    TableShape(usize),
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
    #[error("{} group law violation(s), first: {}", .0.len(), .0[0])]
    Violations(Vec<GroupViolation>),
}

/// One generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }
}

/// A word with no adjacent `g g⁻¹` or `g⁻¹ g`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn empty() -> Self {
        ReducedWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Greedy stack reduction.
pub fn reduce_letters(letters: impl IntoIterator<Item = Letter>) -> ReducedWord {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last() == Some(&l.inverted()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    ReducedWord(stack)
}

pub fn fg_multiply(w1: &ReducedWord, w2: &ReducedWord) -> ReducedWord {
    reduce_letters(w1.0.iter().chain(&w2.0).copied())
}

pub fn fg_inverse(w: &ReducedWord) -> ReducedWord {
    ReducedWord(w.0.iter().rev().map(|l| l.inverted()).collect())
}

/// The free group on a labelled generator set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    generators: Vec<String>,
}

impl FreeGroup {
    pub fn new<S: AsRef<str>>(generators: &[S], limits: &Limits) -> Result<Self, FreeGroupError> {
        ensure("generator count", generators.len(), limits.max_generators)?;
        let mut out: Vec<String> = Vec::new();
        for g in generators {
            let g = g.as_ref();
            if out.iter().any(|o| o == g) {
                return Err(FreeGroupError::DuplicateLabel(g.to_string()));
            }
            out.push(g.to_string());
        }
        Ok(FreeGroup { generators: out })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator(&self, label: &str) -> Result<usize, FreeGroupError> {
        self.generators
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| FreeGroupError::UnknownGenerator(label.to_string()))
    }

    /// Reduces a raw word of `(generator, exponent)` letters, exponent ±1.
    pub fn reduce<S: AsRef<str>>(&self, raw: &[(S, i8)]) -> Result<ReducedWord, FreeGroupError> {
        let letters = raw
            .iter()
            .map(|(g, e)| {
                Ok(Letter {
                    generator: self.generator(g.as_ref())?,
                    inverse: *e < 0,
                })
            })
            .collect::<Result<Vec<_>, FreeGroupError>>()?;
        Ok(reduce_letters(letters))
    }

    /// Parses whitespace-separated letters `x` or `x^-1`; `1` or an empty
    /// string is the empty word. The result is not reduced.
    pub fn parse(&self, text: &str) -> Result<Vec<Letter>, FreeGroupError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|tok| {
                let (g, inverse) = match tok.strip_suffix("^-1") {
                    Some(g) => (g, true),
                    None => (tok, false),
                };
                Ok(Letter {
                    generator: self.generator(g)?,
                    inverse,
                })
            })
            .collect()
    }

    pub fn format(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        letters
            .iter()
            .map(|l| {
                let g = &self.generators[l.generator];
                if l.inverse {
                    format!("{g}^-1")
                } else {
                    g.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn injection(&self, generator: usize) -> ReducedWord {
        ReducedWord(vec![Letter {
            generator,
            inverse: false,
        }])
    }

    /// Every reduced word of length at most `depth`, shortest first and
    /// then in letter order.
    pub fn words_up_to(&self, depth: usize) -> Vec<ReducedWord> {
        let alphabet: Vec<Letter> = (0..self.generators.len())
            .flat_map(|g| {
                [false, true].map(|inverse| Letter {
                    generator: g,
                    inverse,
                })
            })
            .collect();
        let mut out = vec![ReducedWord::empty()];
        let mut layer = vec![ReducedWord::empty()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &alphabet {
                    if w.0.last() != Some(&l.inverted()) {
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(ReducedWord(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupViolation {
    #[error("no identity element")]
    NoIdentity,
    #[error("{0} has no inverse")]
    NoInverse(String),
    #[error("associativity fails: ({0}{1}){2} != {0}({1}{2})")]
    Associativity(String, String, String),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Checks a table given by labels: `table[i][j]` is `labels[i] · labels[j]`.
    pub fn new<S: AsRef<str>>(labels: &[S], table: &[Vec<S>], limits: &Limits) -> Result<Self, FreeGroupError> {
        let n = labels.len();
        ensure("group order", n, limits.max_group_order)?;
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(FreeGroupError::DuplicateLabel(l.clone()));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(FreeGroupError::TableShape(n));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            for e in row {
                let e = e.as_ref();
                flat.push(
                    labels
                        .iter()
                        .position(|l| l == e)
                        .ok_or_else(|| FreeGroupError::UnknownElement(e.to_string()))?,
                );
            }
        }
        Self::from_table(labels, flat)
    }

    /// Checks a table of element indices, row-major.
    pub fn from_table(labels: Vec<String>, table: Vec<usize>) -> Result<Self, FreeGroupError> {
        let n = labels.len();
        assert_eq!(table.len(), n * n);
        let mul = |a: usize, b: usize| table[a * n + b];
        let mut violations = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        violations.push(GroupViolation::Associativity(
                            labels[a].clone(),
                            labels[b].clone(),
                            labels[c].clone(),
                        ));
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a));
        let mut inverses = Vec::with_capacity(n);
        match identity {
            None => violations.push(GroupViolation::NoIdentity),
            Some(e) => {
                for a in 0..n {
                    match (0..n).find(|&b| mul(a, b) == e && mul(b, a) == e) {
                        Some(b) => inverses.push(b),
                        None => violations.push(GroupViolation::NoInverse(labels[a].clone())),
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(FreeGroupError::Violations(violations));
        }
        Ok(FiniteGroup {
            labels,
            table,
            identity: identity.unwrap(),
            inverses,
        })
    }

    /// `Z_n` under addition, elements labelled `0..n`.
    pub fn cyclic(n: usize, limits: &Limits) -> Result<Self, FreeGroupError> {
        ensure("group order", n, limits.max_group_order)?;
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|ab| (ab / n + ab % n) % n).collect();
        Self::from_table(labels, table)
    }

    /// The symmetric group on three points, elements `s^i r^j` labelled
    /// `e r rr s sr srr`, with `r` a 3-cycle and `s` a transposition.
    pub fn symmetric3() -> Self {
        type Perm = [usize; 3];
        let then = |p: Perm, q: Perm| -> Perm { [q[p[0]], q[p[1]], q[p[2]]] };
        let (e, r, s): (Perm, Perm, Perm) = ([0, 1, 2], [1, 2, 0], [0, 2, 1]);
        let rr = then(r, r);
        // Product xy means "apply y, then x".
        let perms = [e, r, rr, s, then(r, s), then(rr, s)];
        let labels = ["e", "r", "rr", "s", "sr", "srr"].map(String::from).to_vec();
        let table = (0..36)
            .map(|ab| {
                let p = then(perms[ab % 6], perms[ab / 6]);
                perms.iter().position(|&q| q == p).unwrap()
            })
            .collect();
        Self::from_table(labels, table).expect("S3 is a group")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element(&self, label: &str) -> Result<usize, FreeGroupError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| FreeGroupError::UnknownElement(label.to_string()))
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.labels.len() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// The homomorphism `F[X] → G` extending an assignment `X → G`.
#[derive(Debug, Clone)]
pub struct HomEvaluator<'a> {
    pub group: &'a FiniteGroup,
    pub assignment: Vec<usize>,
}

impl<'a> HomEvaluator<'a> {
    /// Evaluates any letter sequence, reduced or not.
    pub fn eval(&self, letters: &[Letter]) -> usize {
        letters.iter().fold(self.group.identity(), |acc, l| {
            let a = self.assignment[l.generator];
            self.group.mul(acc, if l.inverse { self.group.inverse(a) } else { a })
        })
    }

    pub fn eval_word(&self, w: &ReducedWord) -> usize {
        self.eval(&w.0)
    }
}

/// Builds the evaluator from `(generator, element)` label pairs.
pub fn extend_hom<'a, S: AsRef<str>>(
    fg: &FreeGroup,
    assignment: &[(S, S)],
    group: &'a FiniteGroup,
) -> Result<HomEvaluator<'a>, FreeGroupError> {
    let mut images = vec![None; fg.generators().len()];
    for (g, a) in assignment {
        let i = fg.generator(g.as_ref())?;
        if images[i].replace(group.element(a.as_ref())?).is_some() {
            return Err(FreeGroupError::DuplicateLabel(g.as_ref().to_string()));
        }
    }
    let assignment = images
        .into_iter()
        .enumerate()
        .map(|(i, a)| a.ok_or_else(|| FreeGroupError::Unassigned(fg.generators()[i].clone())))
        .collect::<Result<_, _>>()?;
    Ok(HomEvaluator { group, assignment })
}

/// Outcome for one assignment `X → G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentOutcome {
    pub assignment: Vec<usize>,
    /// `h(x) = assignment(x)` on every generator injection.
    pub existence: bool,
    /// Pairs `(w1, w2)` in the fragment with `h(w1 w2) != h(w1) h(w2)`.
    pub homomorphism_failures: usize,
    /// Any multiplicative table on the fragment that agrees on generators
    /// is forced to equal `h`.
    pub unique: bool,
}

impl AssignmentOutcome {
    pub fn passes(&self) -> bool {
        self.existence && self.homomorphism_failures == 0 && self.unique
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroupReport {
    pub generators: Vec<String>,
    pub group_order: usize,
    pub depth: usize,
    pub words: usize,
    pub pairs_checked: usize,
    pub outcomes: Vec<AssignmentOutcome>,
}

impl FreeGroupReport {
    pub fn passes(&self) -> bool {
        self.outcomes.iter().all(AssignmentOutcome::passes)
    }
}

/// Forces the values of a multiplicative table on the fragment that sends
/// each generator to `assignment`. Every step uses one product relation
/// `t(u) t(v) = t(reduce(u v))` with all three words in the fragment:
/// `(1, 1, 1)` forces `t(1) = e`; a word `u x` follows from `(u, x, u x)`;
/// a word `u x⁻¹` from `(u x⁻¹, x, u)`. Words are visited shortest first.
fn forced_table(words: &[ReducedWord], group: &FiniteGroup, assignment: &[usize]) -> Vec<usize> {
    let index: std::collections::HashMap<&ReducedWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut t = vec![usize::MAX; words.len()];
    // t(1) t(1) = t(1) forces t(1) = t(1)⁻¹ t(1) = e.
    t[0] = group.identity();
    for (i, w) in words.iter().enumerate().skip(1) {
        let (&last, prefix) = w.0.split_last().unwrap();
        let u = index[&ReducedWord(prefix.to_vec())];
        let x = assignment[last.generator];
        t[i] = if last.inverse {
            group.mul(t[u], group.inverse(x))
        } else {
            group.mul(t[u], x)
        };
    }
    t
}

/// For every assignment `X → G`, checks existence, the homomorphism law on
/// all pairs of fragment words, and uniqueness against tables on the
/// fragment.
pub fn check_free_semi_adjunction(
    fg: &FreeGroup,
    group: &FiniteGroup,
    depth: usize,
    limits: &Limits,
) -> Result<FreeGroupReport, FreeGroupError> {
    ensure("word depth", depth, limits.max_depth)?;
    ensure("group order", group.order(), limits.max_group_order)?;
    let n_gen = fg.generators().len();
    let words = fg.words_up_to(depth);
    let assignments = group.order().pow(n_gen as u32);
    let pairs = words.len() * words.len();
    ensure(
        "free-group product checks",
        pairs.saturating_mul(assignments),
        limits.max_triples.saturating_mul(4),
    )?;

    let outcomes = (0..assignments)
        .into_par_iter()
        .map(|mut code| {
            let assignment: Vec<usize> = (0..n_gen)
                .map(|_| {
                    let a = code % group.order();
                    code /= group.order();
                    a
                })
                .collect();
            let h = HomEvaluator { group, assignment };
            let existence = (0..n_gen).all(|g| h.eval_word(&fg.injection(g)) == h.assignment[g]);
            let values: Vec<usize> = words.iter().map(|w| h.eval_word(w)).collect();
            let mut homomorphism_failures = 0;
            for (i, w1) in words.iter().enumerate() {
                for (j, w2) in words.iter().enumerate() {
                    if h.eval_word(&fg_multiply(w1, w2)) != group.mul(values[i], values[j]) {
                        homomorphism_failures += 1;
                    }
                }
            }
            let unique = forced_table(&words, group, &h.assignment) == values;
            AssignmentOutcome {
                assignment: h.assignment,
                existence,
                homomorphism_failures,
                unique,
            }
        })
        .collect();
    Ok(FreeGroupReport {
        generators: fg.generators().to_vec(),
        group_order: group.order(),
        depth,
        words: words.len(),
        pairs_checked: pairs * assignments,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> FreeGroup {
        FreeGroup::new(&["x", "y"], &Limits::default()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let fg = xy();
        assert!(fg.reduce(&[("x", 1), ("x", -1)]).unwrap().is_empty());
        let w = fg.reduce(&[("x", 1), ("y", 1), ("y", -1), ("x", 1)]).unwrap();
        assert_eq!(fg.format(w.letters()), "x x");
        assert_eq!(reduce_letters(w.letters().to_vec()), w);
        assert_eq!(
            fg.reduce(&[("z", 1)]).unwrap_err(),
            FreeGroupError::UnknownGenerator("z".into())
        );
    }

    #[test]
    fn parse_and_format_round_trip() {
        let fg = xy();
        let l = fg.parse("x y^-1 x").unwrap();
        assert_eq!(fg.format(&l), "x y^-1 x");
        assert!(fg.parse("1").unwrap().is_empty());
        assert!(fg.parse("x^2").is_err());
    }

    #[test]
    fn word_counts() {
        // 1 + 2n (2n-1)^(k-1) summed over k.
        assert_eq!(xy().words_up_to(4).len(), 1 + 4 + 12 + 36 + 108);
        let none = FreeGroup::new::<&str>(&[], &Limits::default()).unwrap();
        assert_eq!(none.words_up_to(3).len(), 1);
    }

    #[test]
    fn group_validation() {
        let bad = FiniteGroup::new(&["a", "b"], &[vec!["a", "a"], vec!["a", "a"]], &Limits::default());
        assert!(matches!(bad, Err(FreeGroupError::Violations(_))));
        let shape = FiniteGroup::new(&["a"], &[vec!["a", "a"]], &Limits::default());
        assert_eq!(shape.unwrap_err(), FreeGroupError::TableShape(1));
        let s3 = FiniteGroup::symmetric3();
        let (r, s) = (s3.element("r").unwrap(), s3.element("s").unwrap());
        assert_ne!(s3.mul(r, s), s3.mul(s, r));
        assert_eq!(s3.label(s3.mul(s, r)), "sr");
    }

    #[test]
    fn z4_evaluation() {
        let fg = xy();
        let z4 = FiniteGroup::cyclic(4, &Limits::default()).unwrap();
        let h = extend_hom(&fg, &[("x", "1"), ("y", "2")], &z4).unwrap();
        assert_eq!(h.eval(&fg.parse("x y x").unwrap()), 0);
        assert_eq!(h.eval(&[]), z4.identity());
        assert_eq!(h.eval(&fg.parse("x x^-1 y").unwrap()), 2);
        assert_eq!(
            extend_hom(&fg, &[("x", "1")], &z4).unwrap_err(),
            FreeGroupError::Unassigned("y".into())
        );
    }

    #[test]
    fn caps() {
        let fg = xy();
        let z2 = FiniteGroup::cyclic(2, &Limits::default()).unwrap();
        assert!(matches!(
            check_free_semi_adjunction(&fg, &z2, 7, &Limits::default()),
            Err(FreeGroupError::SizeCapExceeded(_))
        ));
        assert!(FreeGroup::new(&["a", "b", "c", "d"], &Limits::default()).is_err());
    }
}
