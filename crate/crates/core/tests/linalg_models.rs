use std::time::Instant;

use hetcat_core::linalg::*;
use hetcat_core::Limits;
use proptest::prelude::*;

fn space(p: u32, dim: usize) -> SpaceObj {
    SpaceObj { p, dim }
}

fn basis(n: usize, i: usize) -> Vec<u32> {
    (0..n).map(|k| u32::from(k == i)).collect()
}

/// Every dims tuple with `1 ≤ n ≤ 3` components of dimension `0..=2`.
fn dim_tuples() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let mut layer = vec![Vec::new()];
        for _ in 0..n {
            layer = layer
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..=2).map(move |d| {
                        let mut t = t.clone();
                        t.push(d);
                        t
                    })
                })
                .collect();
        }
        out.extend(layer);
    }
    out
}

#[test]
fn biproduct_laws_for_all_small_shapes() {
    for p in [2, 3] {
        for dims in dim_tuples() {
            let comps: Vec<_> = dims.iter().map(|&d| space(p, d)).collect();
            let bp = biproduct(&comps).unwrap();
            assert!(bp.law_violations().is_empty());
            assert_eq!(bp.total.dim, dims.iter().sum::<usize>());
        }
    }
}

/// Competitors: every matrix `total → W`, checked against the cocone legs
/// on each basis vector; exactly one must agree, and it must be `u`.
#[test]
fn cocone_factor_is_unique_among_all_competitors() {
    for p in [2, 3] {
        for dims in [vec![1], vec![2], vec![1, 1], vec![0, 2], vec![1, 2], vec![1, 0, 1]] {
            let comps: Vec<_> = dims.iter().map(|&d| space(p, d)).collect();
            let bp = biproduct(&comps).unwrap();
            let total = bp.total.dim;
            for w in 0..=2 {
                // Every seventh leg tuple in enumeration order, at most five.
                let legs: Vec<Vec<PrimeFieldMatrix>> = dims
                    .iter()
                    .fold(vec![Vec::new()], |acc, &d| {
                        acc.into_iter()
                            .flat_map(|pre| {
                                all_matrices(p, w, d).map(move |m| {
                                    let mut v = pre.clone();
                                    v.push(m);
                                    v
                                })
                            })
                            .collect()
                    })
                    .into_iter()
                    .step_by(7)
                    .take(5)
                    .collect();
                for fs in legs {
                    let u = factor_cocone(&bp, &fs).unwrap();
                    let agreeing: Vec<_> = all_matrices(p, w, total)
                        .filter(|cand| {
                            fs.iter().zip(&bp.injections).zip(&comps).all(|((f, inj), c)| {
                                (0..c.dim).all(|i| {
                                    let e = basis(c.dim, i);
                                    cand.apply(&inj.apply(&e)) == f.apply(&e)
                                })
                            })
                        })
                        .collect();
                    assert_eq!(agreeing, vec![u.clone()]);
                }
            }
        }
    }
}

#[test]
fn cone_factor_is_unique_among_all_competitors() {
    for p in [2, 3] {
        for dims in [vec![1], vec![1, 1], vec![2, 0], vec![1, 2]] {
            let comps: Vec<_> = dims.iter().map(|&d| space(p, d)).collect();
            let bp = biproduct(&comps).unwrap();
            let total = bp.total.dim;
            for w in 0..=2 {
                let gs: Vec<PrimeFieldMatrix> = dims
                    .iter()
                    .enumerate()
                    .map(|(k, &d)| all_matrices(p, d, w).nth(k * 3 % (p as usize).pow((d * w) as u32).max(1)).unwrap())
                    .collect();
                let v = factor_cone(&bp, &gs).unwrap();
                let agreeing: Vec<_> = all_matrices(p, total, w)
                    .filter(|cand| {
                        gs.iter().zip(&bp.projections).all(|(g, proj)| {
                            (0..w).all(|i| {
                                let e = basis(w, i);
                                proj.apply(&cand.apply(&e)) == g.apply(&e)
                            })
                        })
                    })
                    .collect();
                assert_eq!(agreeing, vec![v]);
            }
        }
    }
}

#[test]
fn zero_legs_factor_through_zero() {
    let bp = biproduct(&[space(2, 1), space(2, 2)]).unwrap();
    let u = factor_cocone(&bp, &[PrimeFieldMatrix::zero(2, 2, 1), PrimeFieldMatrix::zero(2, 2, 2)]).unwrap();
    assert!(u.is_zero());
    let v = factor_cone(&bp, &[PrimeFieldMatrix::zero(2, 1, 2), PrimeFieldMatrix::zero(2, 2, 2)]).unwrap();
    assert!(v.is_zero());
}

#[test]
fn vector_brain_gf2_pair_of_lines() {
    let start = Instant::now();
    let w = vector_brain(2, &[1, 1], &Limits::default()).unwrap();
    let env = w.het_in.src();
    let org = w.het_in.tgt();
    let t = env.object("(1,1)").unwrap();
    let one = org.object("1").unwrap();
    // Oracle: cocones from (1,1) to a line are pairs of 1x1 matrices: 2 * 2.
    assert_eq!(w.het_in.hets(t, one).len(), 4);
    for &h in w.het_in.hets(t, one) {
        let g = w.perception.factors[h.0];
        assert_eq!(org.src(g), org.object("2").unwrap());
    }
    assert!(w.perception.naturality_violations().is_empty());
    assert!(w.action.naturality_violations().is_empty());
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn vector_brain_single_component_is_identity_like() {
    for p in [2, 3] {
        let w = vector_brain(p, &[1], &Limits::default()).unwrap();
        assert!(w.brain.dom().objects().all(|o| w.brain.dom().object_label(o) == w.brain.cod().object_label(w.brain.map_object(o))));
        for (x, &eta) in w.eta.iter().enumerate() {
            let g = w.perception.factors[eta.0];
            assert_eq!(g, w.het_in.tgt().identity(w.brain.map_object(hetcat_core::category::Ob(x))));
        }
    }
}

#[test]
fn vector_brain_gf3_pair_of_lines() {
    let w = vector_brain(3, &[1, 1], &Limits::default()).unwrap();
    let t = w.het_in.src().object("(1,1)").unwrap();
    let one = w.het_in.tgt().object("1").unwrap();
    assert_eq!(w.het_in.hets(t, one).len(), 9);
}

#[test]
fn vector_brain_plane() {
    vector_brain(2, &[2], &Limits::default()).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matmul_associative(p in prop::sample::select(vec![2u32, 3]), a in 0usize..3, b in 0usize..3, c in 0usize..3, d in 0usize..3, seed in any::<u64>()) {
        let pick = |r: usize, cc: usize, s: u64| {
            let n = (p as u64).pow((r * cc) as u32);
            all_matrices(p, r, cc).nth((s % n) as usize).unwrap()
        };
        let x = pick(a, b, seed);
        let y = pick(b, c, seed / 7);
        let z = pick(c, d, seed / 49);
        let lhs = matmul(&matmul(&x, &y).unwrap(), &z).unwrap();
        let rhs = matmul(&x, &matmul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
