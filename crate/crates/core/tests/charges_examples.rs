mod common;

use common::*;
use stabq_core::charges::{mobility, momentum_sectors, ChargeAnalysis};
use stabq_core::code::CodeSpec;
use stabq_core::fpmod::{ext, free_resolution, ideal_contains, FpModule};
use stabq_core::gb::kernel_mod;
use stabq_core::ring::{LaurentPoly, Matrix, Ring};

fn factors(spec: &CodeSpec) -> Vec<Option<Vec<u64>>> {
    ChargeAnalysis::compute(spec).unwrap().modules.iter().map(|m| m.factors().map(|f| f.to_vec())).collect()
}

fn translations_trivial(spec: &CodeSpec, degree: usize) {
    let a = ChargeAnalysis::compute(spec).unwrap();
    let m = &a.modules[degree];
    let r = spec.ring();
    for i in 0..spec.dim() {
        let xm1 = LaurentPoly::var(r, i) - LaurentPoly::one(r);
        assert!(ideal_contains(r, &m.annihilator, &xm1).unwrap(), "{} Q^{degree} not killed by x_{}-1", spec.name, i + 1);
    }
}

#[test]
fn toric_codes() {
    for n in [2u64, 3, 4] {
        assert_eq!(factors(&toric2d(n)), vec![Some(vec![n, n]), Some(vec![]), Some(vec![])]);
        let t3 = toric3d(n);
        assert_eq!(factors(&t3), vec![Some(vec![n]), Some(vec![n]), Some(vec![]), Some(vec![])]);
        translations_trivial(&t3, 0);
        translations_trivial(&t3, 1);
    }
    assert_eq!(ChargeAnalysis::compute(&toric3d(3)).unwrap().resolution.lengths(), vec![6, 4, 1, 0]);
    let t4 = toric4d(3);
    let f = factors(&t4);
    assert_eq!(&f[..3], &[Some(vec![3]), Some(vec![]), Some(vec![3])]);
    assert_eq!(ChargeAnalysis::compute(&t4).unwrap().resolution.lengths(), vec![8, 7, 4, 1, 0]);
    let f = factors(&toric4d_2form(3));
    assert_eq!(&f[..3], &[Some(vec![]), Some(vec![3, 3]), Some(vec![])]);
    translations_trivial(&toric4d_2form(3), 1);
}

#[test]
fn ising_domain_walls() {
    for d in 1..=3 {
        let f = factors(&ising(3, d));
        for (i, q) in f.iter().enumerate() {
            if i == d - 1 {
                assert_eq!(q, &Some(vec![3]), "D = {d}");
            } else {
                assert_eq!(q, &Some(vec![]), "D = {d}, degree {i}");
            }
        }
    }
}

#[test]
fn cylinder_charges() {
    for n in [2u64, 3] {
        assert_eq!(factors(&cylinder(n, 3))[0], Some(vec![n, n]));
    }
}

#[test]
fn plaquette_module_and_translations() {
    for n in [3u64, 9, 4] {
        let spec = plaquette(n);
        let r = spec.ring().clone();
        let a = ChargeAnalysis::compute(&spec).unwrap();
        let q = &a.modules[0];
        assert_eq!(q.factors(), Some(&[n, n][..]));
        assert!(same_ideal(&r, &q.annihilator, &[poly(&r, "x - y"), poly(&r, "x*y - 1")]));
        assert_eq!(q.module.prune().gens(), 1, "Q is cyclic");
        let fs = q.structure.as_ref().unwrap();
        let tx = &fs.translations[0];
        assert_eq!(fs.translation_order(0, 8), Some(2));
        assert_ne!(fs.translation_order(0, 1), Some(1));
        assert_eq!(fs.compose(tx, tx), identity());
        let xy = fs.compose(&fs.translations[0], &fs.translations[1]);
        assert_eq!(xy, identity());
        assert_eq!(mobility(&r, &a).unwrap().ell, Some(2));
    }
    let spec = plaquette_variant(3);
    let r = spec.ring().clone();
    let a = ChargeAnalysis::compute(&spec).unwrap();
    let q = &a.modules[0];
    assert!(same_ideal(&r, &q.annihilator, &[poly(&r, "x + y"), poly(&r, "x*y + 1")]));
    let fs = q.structure.as_ref().unwrap();
    let xy = fs.compose(&fs.translations[0], &fs.translations[1]);
    assert_eq!(xy, vec![vec![2, 0], vec![0, 2]], "xy acts as −1");
}

fn identity() -> Vec<Vec<u64>> {
    vec![vec![1, 0], vec![0, 1]]
}

#[test]
fn plaquette_momentum_sectors() {
    let spec = plaquette(3);
    let a = ChargeAnalysis::compute(&spec).unwrap();
    let sectors = momentum_sectors(spec.ring(), &a.modules[0]).unwrap();
    assert_eq!(sectors.len(), 2);
    let mut eig: Vec<Vec<Option<u64>>> = sectors.iter().map(|s| s.eigenvalues.clone()).collect();
    eig.sort();
    assert_eq!(eig, vec![vec![Some(1), Some(1)], vec![Some(2), Some(2)]]);
    for (i, s) in sectors.iter().enumerate() {
        assert_eq!(s.conjugate, i, "m^± are self-conjugate");
        assert_eq!(s.order, 3);
    }
    // p = 2 has a single maximal ideal
    let spec = plaquette(4);
    let a = ChargeAnalysis::compute(&spec).unwrap();
    assert_eq!(momentum_sectors(spec.ring(), &a.modules[0]).unwrap().len(), 1);
}

#[test]
fn fracton_codes_are_not_mobile() {
    for spec in [haah(), xcube()] {
        let a = ChargeAnalysis::compute(&spec).unwrap();
        assert!(kernel_mod(spec.sigma(), None).unwrap().is_empty(), "{}: σ has no syzygies", spec.name);
        assert!(a.resolution.finite);
        for m in &a.modules[1..] {
            assert!(m.is_zero(), "{} Q^{}", spec.name, m.degree);
        }
        assert!(!a.modules[0].is_zero());
        let mob = mobility(spec.ring(), &a).unwrap();
        assert!(!mob.mobile());
        assert_eq!(mob.offending(), vec![0]);
        assert!(mob.require().is_err());
    }
}

#[test]
fn z4_condensation_charges() {
    let spec = z4_condensation();
    let a = ChargeAnalysis::with_length(&spec, 5, 2).unwrap();
    assert_eq!(a.resolution.lengths(), vec![4, 4, 4, 4, 4, 4]);
    assert_eq!(a.modules[0].factors(), Some(&[2, 2][..]));
    assert!(a.modules[1].is_zero());
    assert!(a.modules[2].is_zero());
}

/// `L/2L` is not quasi-free: over `Z_2[x^±, y^±]` its first Ext is nonzero.
#[test]
fn z4_condensation_reduction_is_not_free() {
    let spec = z4_condensation();
    let syz = kernel_mod(spec.sigma(), None).unwrap();
    let r2 = Ring::laurent(2, 2).unwrap();
    let cols: Vec<Vec<LaurentPoly>> = syz.iter().map(|c| c.iter().map(|p| p.reduce_modulus(&r2)).collect()).collect();
    let m = FpModule::new(Matrix::from_cols(&r2, spec.sigma().cols(), cols));
    let res = free_resolution(&m, 4).unwrap();
    let e1 = ext(&res, 1).unwrap();
    assert!(!e1.is_zero().unwrap());
}

/// `Q^i = 0` for `i ≥ D`, and `Q^{D−1} = 0` for saturated codes.
#[test]
fn top_degree_vanishing() {
    for spec in all_examples() {
        let a = ChargeAnalysis::compute(&spec).unwrap();
        let d = spec.dim();
        assert!(a.modules[d].is_zero(), "{} Q^D", spec.name);
        if spec.invariants().unwrap().saturated {
            assert!(a.modules[d - 1].is_zero(), "{} Q^(D-1)", spec.name);
        }
    }
}
