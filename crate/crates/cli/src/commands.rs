use std::path::Path;
use std::sync::Arc;

use hetcat_core::category::{
    are_isomorphic, check_uniqueness_up_to_iso, find_universal, product_in_category, Direction, FiniteCategory,
    ObjectPredicate,
};
use hetcat_core::freegroup::{check_free_semi_adjunction, extend_hom, fg_inverse, fg_multiply, FreeGroup};
use hetcat_core::het::{find_representing_object, Fixed, HetBimodule, SemiAdjunctionWitness};
use hetcat_core::linalg::{
    biproduct, factor_cocone, factor_cone, matadd, matmul, vector_brain, PrimeFieldMatrix, SpaceObj,
};
use hetcat_core::poset::{bound, check_galois_connection, compute_adjoint, BoundKind};
use hetcat_core::powerset::{
    exists_f, forall_f, intersection_universal, inverse_image, meet_map, powerset_brain, powerset_poset,
    quantifier_triple_check, subset_label, third_man_demo, FiniteFunction, SubsetLabel,
};
use hetcat_core::{Limits, Side};

use crate::args::{CheckCommand, Command, DemoCommand, DirectionArg, FixArg};
use crate::error::CliError;
use crate::report::Report;
use crate::spec::{parse_spec, Loader, Scenario};

/// Runs `body`; verified violations become the report's violations, every
/// other error is passed on.
fn checked(subject: String, body: impl FnOnce(&mut Report) -> Result<(), CliError>) -> Result<Report, CliError> {
    let mut r = Report::new(subject);
    match body(&mut r) {
        Ok(()) => {}
        Err(CliError::Violations(v)) => r.violations.extend(v),
        Err(e) => return Err(e),
    }
    Ok(r.finish())
}

fn object(cat: &FiniteCategory, label: &str) -> Result<hetcat_core::category::Ob, CliError> {
    cat.object(label).ok_or_else(|| CliError::Input(format!("unknown object {label:?}")))
}

fn category_stats(r: &mut Report, prefix: &str, cat: &FiniteCategory) {
    r.stat(&format!("{prefix}objects"), cat.object_count());
    r.stat(&format!("{prefix}arrows"), cat.arrow_count());
}

fn bimodule_stats(r: &mut Report, prefix: &str, bm: &HetBimodule) {
    r.stat(&format!("{prefix}hets"), bm.het_count());
    r.stat(&format!("{prefix}src_objects"), bm.src().object_count());
    r.stat(&format!("{prefix}tgt_objects"), bm.tgt().object_count());
}

fn naturality(r: &mut Report, name: &str, w: &SemiAdjunctionWitness) {
    for (h, f) in w.naturality_violations() {
        r.violation("Naturality", format!("{name}: factor of {h} moved by {f} is not natural"));
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

pub fn check(cmd: &CheckCommand, loader: &Loader, subject: String) -> Result<Report, CliError> {
    match cmd {
        CheckCommand::Poset { file } => {
            let doc = parse_spec(file)?;
            checked(subject, |r| {
                let p = loader.poset(&doc)?;
                r.stat("elements", p.len());
                r.stat("leq_pairs", p.leq_pair_count());
                Ok(())
            })
        }
        CheckCommand::Category {
            file,
            iso,
            product,
            universal,
            direction,
        } => {
            let doc = parse_spec(file)?;
            checked(subject, |r| {
                let cat = loader.category(&doc)?;
                category_stats(r, "", &cat);
                r.stat("composable_pairs", cat.composable_pairs());
                if let Some(pair) = iso {
                    let (a, b) = (object(&cat, &pair[0])?, object(&cat, &pair[1])?);
                    r.detail(match are_isomorphic(&cat, a, b) {
                        Some((f, g)) => format!(
                            "{} and {} are isomorphic via {} and {}",
                            pair[0],
                            pair[1],
                            cat.arrow_label(f),
                            cat.arrow_label(g)
                        ),
                        None => format!("{} and {} are not isomorphic", pair[0], pair[1]),
                    });
                }
                if let Some(pair) = product {
                    let (a, b) = (object(&cat, &pair[0])?, object(&cat, &pair[1])?);
                    r.detail(match product_in_category(&cat, a, b) {
                        Some(p) => format!(
                            "product of {} and {}: {} with projections {} and {}",
                            pair[0],
                            pair[1],
                            cat.object_label(p.apex),
                            cat.arrow_label(p.proj_a),
                            cat.arrow_label(p.proj_b)
                        ),
                        None => format!("{} and {} have no product", pair[0], pair[1]),
                    });
                }
                if let Some(objs) = universal {
                    universals(r, &cat, objs, *direction, &loader.limits)?;
                }
                Ok(())
            })
        }
        CheckCommand::Functor { file } => {
            let doc = parse_spec(file)?;
            checked(subject, |r| {
                let f = loader.functor(&doc)?;
                category_stats(r, "dom_", f.dom());
                category_stats(r, "cod_", f.cod());
                Ok(())
            })
        }
        CheckCommand::Bimodule { file, represent, side } => {
            let doc = parse_spec(file)?;
            checked(subject, |r| {
                let bm = loader.bimodule(&doc)?;
                bimodule_stats(r, "", &bm);
                if let Some(label) = represent {
                    let (cat, fixed, far) = match side {
                        FixArg::Src => (bm.src(), Fixed::Src, bm.tgt()),
                        FixArg::Tgt => (bm.tgt(), Fixed::Tgt, bm.src()),
                    };
                    let ob = object(cat, label)?;
                    let found = find_representing_object(&bm, ob, fixed, &loader.limits)?;
                    r.stat("representations", found.len());
                    for rep in &found {
                        r.detail(format!(
                            "{label} is represented by {} via {}, factoring {} hets",
                            far.object_label(rep.object),
                            bm.het_label(rep.canonical),
                            rep.factor.len()
                        ));
                    }
                    if found.is_empty() {
                        r.detail(format!("{label} has no representing object"));
                    }
                }
                Ok(())
            })
        }
        CheckCommand::Galois { lower, upper } => {
            let lo = loader.monotone_file(lower)?;
            let up = loader.monotone_file(upper)?;
            checked(subject, |r| {
                let gc = check_galois_connection(&lo, &up)?;
                r.stat("pairs_checked", gc.pairs_checked);
                r.stat("lower_dom_elements", lo.dom().len());
                r.stat("upper_dom_elements", up.dom().len());
                r.detail("lower(p) <= q iff p <= upper(q) for every pair");
                let left = compute_adjoint(&up, Side::Left).as_ref() == Some(&lo);
                let right = compute_adjoint(&lo, Side::Right).as_ref() == Some(&up);
                r.detail(format!("left adjoint recomputed from upper matches lower: {left}"));
                r.detail(format!("right adjoint recomputed from lower matches upper: {right}"));
                Ok(())
            })
        }
        CheckCommand::SemiAdjunction { file } => {
            let doc = parse_spec(file)?;
            checked(subject, |r| {
                match loader.scenario(&doc)? {
                    Scenario::Semi(w) => {
                        bimodule_stats(r, "", &w.bimodule);
                        r.stat("factors", w.factors.len());
                        r.detail(format!("{} semi-adjunction: every het factors uniquely", side_name(w.side)));
                        naturality(r, side_name(w.side), &w);
                    }
                    _ => return Err(CliError::Input("not a semi-adjunction scenario".into())),
                }
                Ok(())
            })
        }
        CheckCommand::Adjunction { file } => {
            let doc = parse_spec(file)?;
            checked(subject, |r| {
                match loader.scenario(&doc)? {
                    Scenario::Adjunction { name, witness } => {
                        bimodule_stats(r, "", &witness.left.bimodule);
                        r.stat("object_pairs", witness.bijections.len());
                        r.stat(
                            "correspondences",
                            witness.bijections.iter().map(|b| b.triples.len()).sum(),
                        );
                        r.detail(format!("{name}: Hom(F(x), a) = Het(x, a) = Hom(x, G(a)) at every pair"));
                        naturality(r, "left", &witness.left);
                        naturality(r, "right", &witness.right);
                        for g in witness.gluing_violations() {
                            r.violation("Gluing", g);
                        }
                    }
                    _ => return Err(CliError::Input("not an adjunction scenario".into())),
                }
                Ok(())
            })
        }
        CheckCommand::Brain { file } => {
            let doc = parse_spec(file)?;
            checked(subject, |r| {
                match loader.scenario(&doc)? {
                    Scenario::Brain { name, witness } => {
                        bimodule_stats(r, "perception_", &witness.het_in);
                        bimodule_stats(r, "action_", &witness.het_out);
                        r.detail(format!("{name}: perception and action both represented by the brain"));
                        naturality(r, "perception", &witness.perception);
                        naturality(r, "action", &witness.action);
                    }
                    _ => return Err(CliError::Input("not a brain scenario".into())),
                }
                Ok(())
            })
        }
    }
}

fn universals(
    r: &mut Report,
    cat: &Arc<FiniteCategory>,
    objs: &[String],
    direction: DirectionArg,
    limits: &Limits,
) -> Result<(), CliError> {
    let all = objs.iter().any(|o| o == "*");
    let mut chosen = vec![all; cat.object_count()];
    if !all {
        for o in objs {
            chosen[object(cat, o)?.0] = true;
        }
    }
    let dir = match direction {
        DirectionArg::To => Direction::ArrowsTo,
        DirectionArg::From => Direction::ArrowsFrom,
    };
    let pred = ObjectPredicate::new(cat.clone(), dir, |x| chosen[x.0]);
    let found = find_universal(&pred, limits)?;
    r.stat("universals", found.len());
    for w in &found {
        r.detail(format!("universal: {}", cat.object_label(w.u)));
    }
    for p in check_uniqueness_up_to_iso(&found)? {
        r.detail(format!(
            "{} and {} are isomorphic via {} and {}",
            cat.object_label(p.u),
            cat.object_label(p.v),
            cat.arrow_label(p.forward),
            cat.arrow_label(p.backward)
        ));
    }
    Ok(())
}

fn mask_of(universe: &[String], text: &str) -> Result<u64, CliError> {
    SubsetLabel::parse(universe, text)
        .map(|s| s.mask)
        .map_err(|e| CliError::Input(e.to_string()))
}

fn function_lines(r: &mut Report, f: &FiniteFunction, limits: &Limits) -> Result<(), CliError> {
    let inv = inverse_image(f, limits)?;
    let ex = exists_f(f, limits)?;
    let all = forall_f(f, limits)?;
    for u in 0..ex.dom().len() {
        r.detail(format!(
            "U = {}: exists_f(U) = {}, forall_f(U) = {}",
            ex.dom().label(u),
            ex.cod().label(ex.apply(u)),
            all.cod().label(all.apply(u))
        ));
    }
    for v in 0..inv.dom().len() {
        r.detail(format!("V = {}: f^-1(V) = {}", inv.dom().label(v), inv.cod().label(inv.apply(v))));
    }
    Ok(())
}

pub fn demo(cmd: &DemoCommand, loader: &Loader, subject: String) -> Result<Report, CliError> {
    let limits = &loader.limits;
    match cmd {
        DemoCommand::Quantifiers { map } => {
            let f = loader.plain_file(map)?;
            checked(subject, |r| {
                let q = quantifier_triple_check(&f, limits)?;
                r.stat("pairs_checked", q.exists_inverse.pairs_checked + q.inverse_forall.pairs_checked);
                r.stat("dom_subsets", q.exists_inverse.lower.dom().len());
                r.stat("cod_subsets", q.exists_inverse.lower.cod().len());
                r.detail("exists_f(U) <= V iff U <= f^-1(V) for every U, V");
                r.detail("f^-1(V) <= U iff V <= forall_f(U) for every U, V");
                r.detail(format!("adjoints of f^-1 recomputed: {}", q.adjoints_match));
                function_lines(r, &f, limits)
            })
        }
        DemoCommand::BrainPowerset { map } => {
            let f = loader.plain_file(map)?;
            checked(subject, |r| {
                let w = powerset_brain(&f, limits)?;
                bimodule_stats(r, "perception_", &w.het_in);
                bimodule_stats(r, "action_", &w.het_out);
                naturality(r, "perception", &w.perception);
                naturality(r, "action", &w.action);
                let brain = &w.brain;
                for v in brain.dom().objects() {
                    r.detail(format!(
                        "B({}) = {}",
                        brain.dom().object_label(v),
                        brain.cod().object_label(brain.map_object(v))
                    ));
                }
                Ok(())
            })
        }
        DemoCommand::ThirdMan { universe, family } => checked(subject,
            |r| {
                let masks = family.iter().map(|t| mask_of(universe, t)).collect::<Result<Vec<_>, _>>()?;
                let t = third_man_demo(universe, &masks, limits)?;
                r.stat("family_size", masks.len());
                r.detail(format!("A = {}", t.union_label));
                r.detail(format!("A* = {}", t.augmented_label));
                if !t.regress_stops {
                    r.violation("Regress", format!("A* = {} differs from A = {}", t.augmented_label, t.union_label));
                }
                Ok(())
            },
        ),
        DemoCommand::FreeGroup {
            generators,
            group,
            depth,
            word,
            assign,
        } => {
            let g = loader.group_file(group)?;
            let fg = FreeGroup::new(generators, limits)?;
            checked(subject,
                |r| {
                    let rep = check_free_semi_adjunction(&fg, &g, *depth, limits)?;
                    r.stat("group_order", rep.group_order);
                    r.stat("words", rep.words);
                    r.stat("pairs_checked", rep.pairs_checked);
                    r.stat("assignments", rep.outcomes.len());
                    for o in rep.outcomes.iter().filter(|o| !o.passes()) {
                        let images: Vec<&str> = o.assignment.iter().map(|&a| g.label(a)).collect();
                        r.violation(
                            "Assignment",
                            format!(
                                "assignment ({}): existence {}, {} homomorphism failures, unique {}",
                                images.join(","),
                                o.existence,
                                o.homomorphism_failures,
                                o.unique
                            ),
                        );
                    }
                    words(r, &fg, &g, word, assign)
                },
            )
        }
        DemoCommand::BrainVector { prime, dims } => {
            checked(subject, |r| {
                let w = vector_brain(*prime, dims, limits)?;
                bimodule_stats(r, "perception_", &w.het_in);
                bimodule_stats(r, "action_", &w.het_out);
                naturality(r, "perception", &w.perception);
                naturality(r, "action", &w.action);
                biproduct_lines(r, *prime, dims)
            })
        }
        DemoCommand::MeetUniversal { universe, a, b } => {
            checked(subject, |r| {
                let (ma, mb) = (mask_of(universe, a)?, mask_of(universe, b)?);
                let w = intersection_universal(universe, ma, mb, limits)?;
                let label = w.predicate.category.object_label(w.u).to_string();
                r.stat("participants", w.factor.len());
                r.detail(format!("universal: {label}"));
                let p = powerset_poset(universe, limits)?;
                let by_bound = bound(&p, &[ma as usize, mb as usize], BoundKind::Meet);
                let meet = meet_map(universe, limits)?;
                let pair = meet.dom().index_of(&format!("<{},{}>", p.label(ma as usize), p.label(mb as usize)));
                let by_map = pair.map(|i| meet.apply(i));
                r.detail(format!("meet by bound: {}", by_bound.map_or("none", |m| p.label(m))));
                if by_bound != Some(w.u.0) || by_map != Some(w.u.0) {
                    r.violation("MeetMismatch", format!("universal {label} is not the meet {}", subset_label(universe, ma & mb)));
                }
                if !w.verify() {
                    r.violation("SelfPredication", format!("{label} fails its own universality check"));
                }
                Ok(())
            })
        }
    }
}

fn words(
    r: &mut Report,
    fg: &FreeGroup,
    g: &hetcat_core::freegroup::FiniteGroup,
    words: &[String],
    assign: &[String],
) -> Result<(), CliError> {
    let hom = if assign.is_empty() {
        None
    } else {
        let pairs = assign
            .iter()
            .map(|a| {
                a.split_once('=')
                    .map(|(x, v)| (x.trim().to_string(), v.trim().to_string()))
                    .ok_or_else(|| CliError::Input(format!("expected generator=element, found {a:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Some(extend_hom(fg, &pairs, g)?)
    };
    for text in words {
        let raw = text
            .split_whitespace()
            .map(|tok| match tok.strip_suffix("^-1") {
                Some(x) => (x, -1i8),
                None => (tok, 1),
            })
            .collect::<Vec<_>>();
        let w = fg.reduce(&raw)?;
        let inv = fg_inverse(&w);
        let mut line = format!(
            "{text} reduces to {}; inverse {}; product with inverse {}",
            fg.format(w.letters()),
            fg.format(inv.letters()),
            fg.format(fg_multiply(&w, &inv).letters())
        );
        if let Some(h) = &hom {
            line.push_str(&format!("; h = {}", g.label(h.eval_word(&w))));
        }
        r.detail(line);
    }
    Ok(())
}

/// Recomputes the biproduct of the components and factors the injections
/// and projections through it, both of which must give the identity.
fn biproduct_lines(r: &mut Report, p: u32, dims: &[usize]) -> Result<(), CliError> {
    let comps: Vec<SpaceObj> = dims.iter().map(|&dim| SpaceObj { p, dim }).collect();
    let bp = biproduct(&comps)?;
    for v in bp.law_violations() {
        r.violation("BiproductLaw", v);
    }
    let n = bp.total.dim;
    let id = PrimeFieldMatrix::identity(p, n);
    let mut sum = PrimeFieldMatrix::zero(p, n, n);
    for (inj, proj) in bp.injections.iter().zip(&bp.projections) {
        sum = matadd(&sum, &matmul(inj, proj)?)?;
    }
    r.detail(format!("sum of injection . projection = {sum}"));
    if sum != id {
        r.violation("BiproductLaw", format!("sum of injection . projection is {sum}, not the identity"));
    }
    let u = factor_cocone(&bp, &bp.injections)?;
    let v = factor_cone(&bp, &bp.projections)?;
    r.detail(format!("injections factor through {u}; projections through {v}"));
    if u != id || v != id {
        r.violation("BiproductLaw", "the canonical cocone and cone do not factor through the identity");
    }
    Ok(())
}

pub fn render(file: &Path, loader: &Loader, subject: String) -> Result<(String, Report), CliError> {
    let doc = parse_spec(file)?;
    if doc.kind() != Some("scenario") {
        return Err(CliError::UnsupportedWitness(format!(
            "{} is a {} document, not an adjunction or brain scenario",
            file.display(),
            doc.kind().unwrap_or("?")
        )));
    }
    let mut report = Report::new(subject);
    let dot = match loader.scenario(&doc) {
        Ok(s) => Some(crate::dot::render_diagram(&s)?),
        Err(CliError::Violations(v)) => {
            report.violations.extend(v);
            None
        }
        Err(e) => return Err(e),
    };
    Ok((dot.unwrap_or_default(), report.finish()))
}

/// A one-line description of a command, used as the report subject.
pub fn subject(cmd: &Command) -> String {
    match cmd {
        Command::Check(c) => match c {
            CheckCommand::Poset { file } => format!("check poset {}", file.display()),
            CheckCommand::Category { file, .. } => format!("check category {}", file.display()),
            CheckCommand::Functor { file } => format!("check functor {}", file.display()),
            CheckCommand::Bimodule { file, .. } => format!("check bimodule {}", file.display()),
            CheckCommand::Galois { lower, upper } => format!("check galois {} {}", lower.display(), upper.display()),
            CheckCommand::SemiAdjunction { file } => format!("check semi-adjunction {}", file.display()),
            CheckCommand::Adjunction { file } => format!("check adjunction {}", file.display()),
            CheckCommand::Brain { file } => format!("check brain {}", file.display()),
        },
        Command::Demo(d) => match d {
            DemoCommand::Quantifiers { map } => format!("demo quantifiers {}", map.display()),
            DemoCommand::BrainPowerset { map } => format!("demo brain-powerset {}", map.display()),
            DemoCommand::ThirdMan { universe, family } => {
                format!("demo third-man {{{}}} {}", universe.join(","), family.join(" "))
            }
            DemoCommand::FreeGroup {
                generators,
                group,
                depth,
                ..
            } => format!("demo free-group {{{}}} {} depth {depth}", generators.join(","), group.display()),
            DemoCommand::BrainVector { prime, dims } => format!("demo brain-vector GF({prime}) {dims:?}"),
            DemoCommand::MeetUniversal { universe, a, b } => {
                format!("demo meet-universal {{{}}} {a} {b}", universe.join(","))
            }
        },
        Command::Render(r) => format!("render {}", r.file.display()),
    }
}
