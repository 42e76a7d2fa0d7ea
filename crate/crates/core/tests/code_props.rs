mod common;

use common::*;
use proptest::prelude::*;
use stabq_core::charges::ChargeAnalysis;
use stabq_core::code::CodeSpec;
use stabq_core::gb::SubmoduleGb;
use stabq_core::ring::{LaurentPoly, RingRef};

fn vector(r: &RingRef, len: usize, seed: &[(usize, i64, i64, i64)]) -> Vec<LaurentPoly> {
    let mut v = vec![LaurentPoly::zero(r); len];
    for &(row, a, b, c) in seed {
        v[row % len] = &v[row % len] + &LaurentPoly::from_terms(r, [(vec![a, b], c)]);
    }
    v
}

fn seeds() -> impl Strategy<Value = Vec<(usize, i64, i64, i64)>> {
    prop::collection::vec((0usize..8, -2i64..=2, -2i64..=2, -5i64..5), 0..8)
}

proptest! {
    #[test]
    fn omega_is_antihermitian(a in seeds(), b in seeds(), which in 0usize..3) {
        let spec = [toric2d(4), plaquette(9), z4_condensation()][which].clone();
        let r = spec.ring().clone();
        let len = 2 * spec.q();
        let (v, w) = (vector(&r, len, &a), vector(&r, len, &b));
        prop_assert_eq!(spec.omega(&v, &w), -spec.omega(&w, &v).antipode());
        // commutation phases are antisymmetric
        let n = spec.modulus();
        prop_assert_eq!((spec.omega(&v, &w).scalar_part() + spec.omega(&w, &v).scalar_part()) % n, 0);
    }

    #[test]
    fn omega_is_sesquilinear(a in seeds(), b in seeds(), e in (-2i64..=2, -2i64..=2)) {
        let spec = toric2d(3);
        let r = spec.ring().clone();
        let (v, w) = (vector(&r, 4, &a), vector(&r, 4, &b));
        let m = LaurentPoly::from_terms(&r, [(vec![e.0, e.1], 1)]);
        let mv: Vec<_> = v.iter().map(|x| &m * x).collect();
        let mw: Vec<_> = w.iter().map(|x| &m * x).collect();
        prop_assert_eq!(spec.omega(&mv, &mw), spec.omega(&v, &w));
        prop_assert_eq!(spec.omega(&v, &mw), &m * &spec.omega(&v, &w));
    }
}

fn span_contains(spec: &CodeSpec, span: &[Vec<LaurentPoly>], v: &[Vec<LaurentPoly>]) -> bool {
    let mut gens = span.to_vec();
    gens.extend(spec.p_relations());
    let gb = SubmoduleGb::new(spec.ring(), 2 * spec.q(), &gens).unwrap();
    v.iter().all(|x| gb.contains(x))
}

/// `L^{ωω}` is the saturation: `L` plus the torsion of `P/L`, computed
/// independently as the kernel of `P/L → (P/L)^{**}`.
#[test]
fn double_perp_is_saturation() {
    for spec in all_examples() {
        let inv = spec.invariants().unwrap();
        let torsion = spec.quotient().torsion_submodule().unwrap();
        let mut sat = spec.sigma().columns();
        sat.extend(torsion.reps().unwrap().iter().cloned());
        assert!(span_contains(&spec, &sat, &inv.lperpperp), "{}: L^ωω ⊄ sat(L)", spec.name);
        assert!(span_contains(&spec, &inv.lperpperp, &sat), "{}: sat(L) ⊄ L^ωω", spec.name);
        assert_eq!(inv.saturated, torsion.is_zero().unwrap(), "{}", spec.name);
        // L ⊆ L^ωω ⊆ L^ω
        assert!(span_contains(&spec, &inv.lperpperp, &spec.sigma().columns()));
        assert!(span_contains(&spec, &inv.lperp, &inv.lperpperp));
    }
}

#[test]
fn triple_perp_is_perp() {
    for spec in [toric2d(3), ising(3, 2), cylinder(3, 4), z4_condensation()] {
        let inv = spec.invariants().unwrap();
        let triple = spec.perp(&inv.lperpperp).unwrap();
        assert!(span_contains(&spec, &triple, &inv.lperp));
        assert!(span_contains(&spec, &inv.lperp, &triple));
    }
}

#[test]
fn ising_order_parameter() {
    for d in 1..=3 {
        let inv = ising(3, d).invariants().unwrap();
        assert_eq!(inv.z_structure.unwrap().factors, vec![3], "D = {d}");
        assert!(!inv.saturated);
    }
}

#[test]
fn cylinder_sectors() {
    for n in [2u64, 3, 4] {
        let inv = cylinder(n, 3).invariants().unwrap();
        assert_eq!(inv.z_structure.as_ref().unwrap().factors, vec![n, n]);
        assert!(inv.perp_is_double_perp);
        assert!(inv.s.is_zero().unwrap());
    }
}

#[test]
fn lagrangian_examples() {
    for spec in [toric2d(3), toric3d(2), plaquette(3), haah(), xcube(), z4_condensation()] {
        let inv = spec.invariants().unwrap();
        assert!(inv.lagrangian, "{} should be Lagrangian", spec.name);
    }
}

fn q_factors(spec: &CodeSpec) -> Vec<Option<Vec<u64>>> {
    let a = ChargeAnalysis::compute(spec).unwrap();
    a.modules.iter().map(|m| m.factors().map(|f| f.to_vec())).collect()
}

fn group_order(f: &Option<Vec<u64>>) -> Option<u128> {
    f.as_ref().map(|v| v.iter().map(|&x| x as u128).product())
}

#[test]
fn coarse_graining_preserves_charge_groups() {
    let cases: Vec<(CodeSpec, Vec<Vec<i64>>)> = vec![
        (toric2d(3), vec![vec![2, 0], vec![0, 1]]),
        (toric2d(2), vec![vec![2, 1], vec![0, 2]]),
        (plaquette(3), vec![vec![2, 0], vec![0, 2]]),
        (plaquette(3), vec![vec![1, 1], vec![-1, 1]]),
        (toric3d(2), vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
    ];
    for (spec, gens) in cases {
        let cg = spec.coarse_grain(&gens).unwrap();
        let (a, b) = (q_factors(&spec), q_factors(&cg));
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(group_order(x), group_order(y), "{} under {:?}", spec.name, gens);
            assert_eq!(x, y, "{} under {:?}", spec.name, gens);
        }
    }
}

#[test]
fn coarse_grained_plaquette_has_trivial_translations() {
    let cg = plaquette(3).coarse_grain(&[vec![2, 0], vec![0, 2]]).unwrap();
    let a = ChargeAnalysis::compute(&cg).unwrap();
    let fs = a.modules[0].structure.as_ref().unwrap();
    for dir in 0..2 {
        assert_eq!(fs.translation_order(dir, 16), Some(1));
    }
}

/// Stacking extends scalars: `Q^i(ι_*C) = ι_*Q^i(C)`, so annihilators are
/// the extended ideals and vanishing is preserved.
#[test]
fn stacking_extends_charge_modules() {
    let cases: Vec<(CodeSpec, Vec<Vec<i64>>)> = vec![
        (ising(3, 1), vec![vec![1, 0]]),
        (toric2d(3), vec![vec![1, 0, 0], vec![0, 1, 0]]),
        (plaquette(3), vec![vec![1, 0, 0], vec![0, 0, 1]]),
    ];
    for (spec, images) in cases {
        let st = spec.stack(&images).unwrap();
        let (a, b) = (ChargeAnalysis::compute(&spec).unwrap(), ChargeAnalysis::compute(&st).unwrap());
        for (ma, mb) in a.modules.iter().zip(&b.modules) {
            assert_eq!(ma.is_zero(), mb.is_zero(), "{} degree {}", spec.name, ma.degree);
            if ma.is_zero() {
                continue;
            }
            let extended: Vec<LaurentPoly> = ma
                .annihilator
                .iter()
                .map(|p| {
                    p.map_exponents(st.ring(), |e| {
                        let mut out = vec![0i64; images[0].len()];
                        for (i, &k) in e.iter().enumerate() {
                            for (o, &g) in out.iter_mut().zip(&images[i]) {
                                *o += k * g;
                            }
                        }
                        out
                    })
                })
                .collect();
            assert!(same_ideal(st.ring(), &extended, &mb.annihilator), "{} degree {}", spec.name, ma.degree);
            assert!(!mb.dim_zero, "stacked charges are not finite");
        }
        // higher-dimensional vanishing of top degree survives stacking
        assert!(b.modules.last().unwrap().is_zero());
    }
}

#[test]
fn direct_sum_and_crt_round_trip() {
    let a = toric2d(2);
    let b = toric2d(3);
    let s = a.direct_sum(&b).unwrap();
    assert_eq!(s.modulus(), 6);
    let parts = s.crt_decompose().unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(q_factors(&parts[0])[0], Some(vec![2, 2]));
    assert_eq!(q_factors(&parts[1])[0], Some(vec![3, 3]));
}
