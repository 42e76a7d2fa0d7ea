mod common;

use common::*;
use stabq_core::charges::ChargeAnalysis;

#[test]
fn random_symplectic_maps_preserve_omega() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let spec = toric2d(4).direct_sum(&trivial(4)).unwrap();
    let r = spec.ring().clone();
    let q = spec.q();
    let w = spec.omega_matrix();
    for _ in 0..30 {
        let m = random_symplectic(&r, &mut rng, q);
        let lhs = m.dagger().try_mul(&w).unwrap().try_mul(&m).unwrap();
        assert_eq!(lhs, w);
    }
}

#[test]
fn lagrangian_codes_have_finite_charges() {
    for spec in random_lagrangian_codes(20, 2024) {
        let inv = spec.invariants().unwrap();
        assert!(inv.saturated && inv.lagrangian, "{} is not a saturated Lagrangian code", spec.name);
        let a = ChargeAnalysis::compute(&spec).unwrap();
        assert!(a.modules[0].dim_zero, "{}: Q⁰ is not finite", spec.name);
    }
}
