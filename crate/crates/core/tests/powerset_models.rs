use std::sync::Arc;

use hetcat_core::category::{poset_to_category, Ob};
use hetcat_core::het::{
    check_semi_adjunction, find_representing_object, FactorizationViolation, Fixed, SemiAdjunctionError,
};
use hetcat_core::poset::{check_galois_connection, MonotoneMap};
use hetcat_core::powerset::*;
use hetcat_core::{Limits, Side};
use proptest::prelude::*;

fn l() -> Limits {
    Limits::default()
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn f3() -> FiniteFunction {
    FiniteFunction::new(
        &["0", "1", "2"],
        &["a", "b", "c"],
        &[("0", "a"), ("1", "a"), ("2", "b")],
        &l(),
    )
    .unwrap()
}

fn subset(m: u64, i: usize) -> bool {
    m >> i & 1 == 1
}

/// Every function `{0..nx} → {0..ny}` in lexicographic order.
fn all_functions(nx: usize, ny: usize) -> Vec<FiniteFunction> {
    let xs: Vec<String> = (0..nx).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (0..ny).map(|i| format!("y{i}")).collect();
    let total = ny.pow(nx as u32);
    (0..total)
        .map(|mut code| {
            let map = (0..nx)
                .map(|_| {
                    let y = code % ny;
                    code /= ny;
                    y
                })
                .collect();
            FiniteFunction::from_indices(&xs, &ys, map, &l()).unwrap()
        })
        .collect()
}

#[test]
fn powerset_of_two_points_has_nine_inclusions() {
    let p = powerset_poset(&labels(2), &l()).unwrap();
    assert_eq!(p.len(), 4);
    // Oracle: count pairs (a, b) of masks with a ⊆ b.
    let oracle = (0..4u64).flat_map(|a| (0..4u64).map(move |b| (a, b))).filter(|(a, b)| a & b == *a).count();
    assert_eq!(oracle, 9);
    assert_eq!(p.leq_pair_count(), oracle);
    assert_eq!(p.label(0), "{}");
    assert_eq!(p.label(3), "{1,2}");
}

#[test]
fn diagonal_meet_join_values() {
    let u = labels(3);
    let d = diagonal_map(&u, &l()).unwrap();
    assert_eq!(d.apply_label("{}"), Some("<{},{}>"));
    assert_eq!(d.apply_label("{1}"), Some("<{1},{1}>"));
    let meet = meet_map(&u, &l()).unwrap();
    let join = join_map(&u, &l()).unwrap();
    assert_eq!(meet.apply_label("<{1,2},{2,3}>"), Some("{2}"));
    assert_eq!(join.apply_label("<{1,2},{2,3}>"), Some("{1,2,3}"));
    for x in 0..8 {
        assert_eq!(meet.apply(d.apply(x)), x);
    }
}

#[test]
fn delta_adjoint_to_meet_and_join_adjoint_to_delta() {
    for n in 0..=3 {
        let u = labels(n);
        let d = diagonal_map(&u, &l()).unwrap();
        let meet = meet_map(&u, &l()).unwrap();
        let join = join_map(&u, &l()).unwrap();
        let g = check_galois_connection(&d, &meet).unwrap();
        assert_eq!(g.pairs_checked, (1 << n) * (1 << (2 * n)));
        check_galois_connection(&join, &d).unwrap();
        assert!(check_galois_connection(&meet, &d).is_err() || n == 0);
    }
}

#[test]
fn intersection_universal_matches_meet() {
    let u = labels(3);
    let w = intersection_universal(&u, 0b011, 0b110, &l()).unwrap();
    assert_eq!(w.u, Ob(0b010));
    assert!(w.predicate.holds(w.u));
    assert!(w.verify());
    assert_eq!(intersection_universal(&u, 0b101, 0b101, &l()).unwrap().u, Ob(0b101));
    assert_eq!(intersection_universal(&u, 0b001, 0b110, &l()).unwrap().u, Ob(0));
}

#[test]
fn quantifier_values_match_enumeration() {
    let f = f3();
    let inv = inverse_image(&f, &l()).unwrap();
    let ex = exists_f(&f, &l()).unwrap();
    let all = forall_f(&f, &l()).unwrap();
    assert_eq!(inv.apply_label("{b}"), Some("{2}"));
    assert_eq!(inv.apply_label("{}"), Some("{}"));
    assert_eq!(inv.apply_label("{a,b,c}"), Some("{0,1,2}"));
    assert_eq!(ex.apply_label("{0,2}"), Some("{a,b}"));
    assert_eq!(ex.apply_label("{}"), Some("{}"));
    assert_eq!(all.apply_label("{0,2}"), Some("{b,c}"));
    assert_eq!(all.apply_label("{0,1,2}"), Some("{a,b,c}"));
    assert_eq!(all.apply_label("{}"), Some("{c}"));
    let r = quantifier_triple_check(&f, &l()).unwrap();
    assert_eq!(r.exists_inverse.pairs_checked, 64);
    assert_eq!(r.inverse_forall.pairs_checked, 64);
    assert!(r.adjoints_match);
}

#[test]
fn identity_and_constant_functions() {
    let id = FiniteFunction::from_indices(&["p", "q"], &["p", "q"], vec![0, 1], &l()).unwrap();
    let (inv, ex, all) = (
        inverse_image(&id, &l()).unwrap(),
        exists_f(&id, &l()).unwrap(),
        forall_f(&id, &l()).unwrap(),
    );
    assert_eq!(inv.images(), [0, 1, 2, 3]);
    assert_eq!(ex.images(), inv.images());
    assert_eq!(all.images(), inv.images());

    let c = FiniteFunction::from_indices(&["p", "q", "r"], &["*"], vec![0, 0, 0], &l()).unwrap();
    let all = forall_f(&c, &l()).unwrap();
    for u in 0..8 {
        assert_eq!(all.apply(u) == 1, u == 7);
    }
    quantifier_triple_check(&c, &l()).unwrap();
}

#[test]
fn projection_quantifiers() {
    let p = FiniteFunction::projection(&["x1", "x2"], &["y1", "y2"], &l()).unwrap();
    // U relates x1 to y1 and x2 to y1 only.
    let u_rel = 0b0101;
    assert_eq!(p.image(u_rel), 0b01);
    assert_eq!(p.universal_image(u_rel), 0b01);
    // Oracle over every relation: y ∈ ∃(U) iff some (x, y) ∈ U.
    for rel in 0..16u64 {
        let want: u64 = (0..2)
            .filter(|&y| (0..2).any(|x| subset(rel, x * 2 + y)))
            .fold(0, |m, y| m | 1 << y);
        assert_eq!(p.image(rel), want);
    }
    quantifier_triple_check(&p, &l()).unwrap();
}

#[test]
fn quantifier_triple_for_all_small_functions() {
    for nx in 0..=3 {
        for ny in 1..=3 {
            for f in all_functions(nx, ny) {
                quantifier_triple_check(&f, &l()).unwrap();
            }
        }
    }
}

#[test]
fn fork_bimodule_hets() {
    let bm = fork_bimodule(&labels(2), &l()).unwrap();
    let src = bm.src();
    let tgt = bm.tgt();
    let empty = src.object("{}").unwrap();
    for ab in tgt.objects() {
        assert_eq!(bm.hets(empty, ab).len(), 1);
    }
    let one = src.object("{1}").unwrap();
    assert!(bm.hets(one, tgt.object("<{1},{2}>").unwrap()).is_empty());
    for n in 0..=3 {
        let bm = fork_bimodule(&labels(n), &l()).unwrap();
        // Oracle: count triples (c, a, b) with c ⊆ a ∩ b.
        let size = 1u64 << n;
        let count = (0..size)
            .flat_map(|c| (0..size).flat_map(move |a| (0..size).map(move |b| (c, a, b))))
            .filter(|&(c, a, b)| c & !(a & b) == 0)
            .count();
        assert_eq!(bm.het_count(), count);
    }
}

#[test]
fn completeness_and_consistency_hets() {
    let f = f3();
    let comp = completeness_bimodule(&f, &l()).unwrap();
    let cons = consistency_bimodule(&f, &l()).unwrap();
    let het = |bm: &hetcat_core::het::HetBimodule, x: &str, a: &str| {
        bm.hets(bm.src().object(x).unwrap(), bm.tgt().object(a).unwrap()).len()
    };
    assert_eq!(het(&comp, "{b}", "{2}"), 1);
    assert_eq!(het(&cons, "{0,1}", "{a}"), 1);
    assert_eq!(het(&comp, "{a}", "{0}"), 0);
    // Completeness V ~> U iff f⁻¹(V) ⊆ U, over every pair.
    for v in 0..8u64 {
        for u in 0..8u64 {
            let exists = comp.hets(Ob(v as usize), Ob(u as usize)).len() == 1;
            assert_eq!(exists, f.preimage(v) & !u == 0);
        }
    }
}

#[test]
fn delta_meet_adjunction_verified() {
    for n in 0..=2 {
        let w = delta_meet_adjunction(&labels(n), &l()).unwrap();
        assert!(w.left.naturality_violations().is_empty());
        assert!(w.right.naturality_violations().is_empty());
        assert!(w.gluing_violations().is_empty());
        // Δ(c) ⊆ <a,b> iff c ⊆ a∩b: every pair has 0 or 1 triples, matching.
        let size = 1usize << n;
        for bij in &w.bijections {
            let (c, a, b) = (bij.x.0, bij.a.0 / size, bij.a.0 % size);
            assert_eq!(bij.triples.len() == 1, c & !(a & b) == 0);
        }
    }
}

#[test]
fn exists_inverse_adjunction_verified() {
    let w = exists_inverse_adjunction(&f3(), &l()).unwrap();
    assert!(w.gluing_violations().is_empty());
    assert_eq!(w.bijections.len(), 64);
}

#[test]
fn powerset_brain_passes_and_is_canonical() {
    let f = f3();
    let w = powerset_brain(&f, &l()).unwrap();
    // Perception factor of V ~> U is the inclusion f⁻¹(V) ⊆ U.
    for h in w.het_in.all_hets() {
        let g = w.perception.factors[h.0];
        let org = w.het_in.tgt();
        assert_eq!(org.src(g).0 as u64, f.preimage(w.het_in.het_src(h).0 as u64));
        assert_eq!(org.tgt(g), w.het_in.het_tgt(h));
    }
    assert!(w.perception.naturality_violations().is_empty());
    assert!(w.action.naturality_violations().is_empty());

    let id = FiniteFunction::from_indices(&["p", "q"], &["p", "q"], vec![0, 1], &l()).unwrap();
    let w = powerset_brain(&id, &l()).unwrap();
    assert!(w.brain.dom().objects().all(|o| w.brain.map_object(o) == o));
}

#[test]
fn shrunken_brain_loses_factorizations() {
    let f = f3();
    let (px, py) = (
        Arc::new(powerset_poset(f.dom(), &l()).unwrap()),
        Arc::new(powerset_poset(f.cod(), &l()).unwrap()),
    );
    // B'(V) = f⁻¹(V) without the point 0: monotone and inside f⁻¹(V).
    let shrunk = MonotoneMap::from_fn(py, px, |v| (f.preimage(v as u64) & !1) as usize).unwrap();
    let err = consistency_action(&f, &shrunk, &l()).unwrap_err();
    let PowersetError::SemiAdjunction(SemiAdjunctionError::Violations(v)) = err else {
        panic!("{err:?}")
    };
    // Oracle: het U' ~> V (f(U') ⊆ V) is missing its factor iff U' ⊄ B'(V).
    let mut want = Vec::new();
    for u in 0..8u64 {
        for v in 0..8u64 {
            if f.image(u) & !v == 0 && u & !(f.preimage(v) & !1) != 0 {
                want.push(FactorizationViolation::FactorizationMissing(format!(
                    "{}~>{}",
                    subset_label(f.dom(), u),
                    subset_label(f.cod(), v)
                )));
            }
        }
    }
    assert!(!want.is_empty());
    assert_eq!(v, want);
}

#[test]
fn representing_objects_by_search() {
    let u = labels(2);
    let bm = fork_bimodule(&u, &l()).unwrap();
    let fixed = bm.tgt().object("<{1},{2}>").unwrap();
    let reps = find_representing_object(&bm, fixed, Fixed::Tgt, &l()).unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!(bm.src().object_label(reps[0].object), "{}");
    assert_eq!(reps[0].factor[&reps[0].canonical], bm.src().identity(reps[0].object));

    let f = f3();
    let comp = completeness_bimodule(&f, &l()).unwrap();
    let v = comp.src().object("{b}").unwrap();
    let reps = find_representing_object(&comp, v, Fixed::Src, &l()).unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!(comp.tgt().object_label(reps[0].object), "{2}");
}

#[test]
fn left_semi_adjunction_with_wrong_functor_is_rejected() {
    // Δ composed with nothing else, checked against the meet as if it were
    // the left functor: categories do not line up.
    let u = labels(1);
    let bm = Arc::new(fork_bimodule(&u, &l()).unwrap());
    let meet = hetcat_core::category::functor_from_monotone(
        &meet_map(&u, &l()).unwrap(),
        bm.tgt().clone(),
        bm.src().clone(),
    )
    .unwrap();
    let r = check_semi_adjunction(Side::Left, &meet, &[], &bm);
    assert!(matches!(r, Err(SemiAdjunctionError::EndpointMismatch(_))));
}

#[test]
fn third_man_examples() {
    let r = third_man_demo(&labels(2), &[0b01, 0b10], &l()).unwrap();
    assert_eq!(r.union_label, "{1,2}");
    assert_eq!(r.augmented_label, "{1,2}");
    let r = third_man_demo(&labels(2), &[0b01, 0b11], &l()).unwrap();
    assert!(r.regress_stops);
}

fn small_function() -> impl Strategy<Value = FiniteFunction> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(nx, ny)| {
        proptest::collection::vec(0..ny, nx).prop_map(move |map| {
            let xs: Vec<String> = (0..nx).map(|i| format!("x{i}")).collect();
            let ys: Vec<String> = (0..ny).map(|i| format!("y{i}")).collect();
            FiniteFunction::from_indices(&xs, &ys, map, &Limits::default()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn preimage_is_least_complete_and_greatest_consistent(f in small_function()) {
        let nx = f.dom().len();
        for v in 0..1u64 << f.cod().len() {
            let pre = f.preimage(v);
            let complete: Vec<u64> = (0..1u64 << nx).filter(|&u| v & !f.universal_image(u) == 0).collect();
            let consistent: Vec<u64> = (0..1u64 << nx).filter(|&u| f.image(u) & !v == 0).collect();
            prop_assert!(complete.contains(&pre) && complete.iter().all(|&u| pre & !u == 0));
            prop_assert!(consistent.contains(&pre) && consistent.iter().all(|&u| u & !pre == 0));
        }
    }

    #[test]
    fn brain_and_quantifiers_hold(f in small_function()) {
        quantifier_triple_check(&f, &Limits::default()).unwrap();
        powerset_brain(&f, &Limits::default()).unwrap();
    }

    #[test]
    fn third_man_always_stops(n in 0usize..=4, family in proptest::collection::vec(0u64..16, 0..6)) {
        let mask = (1u64 << n) - 1;
        let family: Vec<u64> = family.into_iter().map(|m| m & mask).collect();
        let r = third_man_demo(&labels(n), &family, &Limits::default()).unwrap();
        prop_assert_eq!(r.union, family.iter().fold(0, |a, b| a | b));
        prop_assert!(r.regress_stops);
    }

    #[test]
    fn intersection_universal_is_meet(a in 0u64..16, b in 0u64..16) {
        let w = intersection_universal(&labels(4), a, b, &Limits::default()).unwrap();
        prop_assert_eq!(w.u, Ob((a & b) as usize));
    }
}

#[test]
fn poset_category_sizes() {
    let p = powerset_poset(&labels(3), &l()).unwrap();
    let c = poset_to_category(&p, &l()).unwrap();
    assert_eq!(c.arrow_count(), 27);
}

#[test]
fn perception_half_is_the_left_half_of_an_adjunction() {
    use hetcat_core::category::functor_from_monotone;
    use hetcat_core::het::assemble_adjunction;

    let f = f3();
    let w = powerset_brain(&f, &l()).unwrap();
    let bm = w.het_in.clone();
    // ∀_f as the right functor over the completeness bimodule, ε_U: ∀_f(U) ~> U.
    let all = functor_from_monotone(&forall_f(&f, &l()).unwrap(), bm.tgt().clone(), bm.src().clone()).unwrap();
    let eps: Vec<_> = bm.tgt().objects().map(|u| bm.hets(all.map_object(u), u)[0]).collect();
    let right = check_semi_adjunction(Side::Right, &all, &eps, &bm).unwrap();
    let adj = assemble_adjunction(&w.perception, &right).unwrap();
    assert_eq!(adj.left.factors, w.perception.factors);
    assert!(adj.gluing_violations().is_empty());
}

#[test]
fn representation_counts_match_hom_counts() {
    let f = f3();
    let w = powerset_brain(&f, &l()).unwrap();
    let (env, org) = (w.het_in.src(), w.het_in.tgt());
    for x in env.objects() {
        for a in org.objects() {
            assert_eq!(w.het_in.hets(x, a).len(), org.hom(w.brain.map_object(x), a).len());
        }
    }
    for a in org.objects() {
        for x in env.objects() {
            assert_eq!(w.het_out.hets(a, x).len(), org.hom(a, w.brain.map_object(x)).len());
        }
    }
}
