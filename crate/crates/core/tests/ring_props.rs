use proptest::prelude::*;
use stabq_core::ring::{LaurentPoly, Ring, RingRef};
use stabq_core::LatticeGroup;

fn ring(n: u64, torsion: bool) -> RingRef {
    let lat = if torsion { LatticeGroup::new(1, vec![3]).unwrap() } else { LatticeGroup::free(2) };
    Ring::new(n, lat).unwrap()
}

fn poly(r: &RingRef, terms: &[(i64, i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(r, terms.iter().map(|&(a, b, c)| (vec![a, b], c)))
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -20i64..20), 0..6)
}

fn moduli() -> impl Strategy<Value = (u64, bool)> {
    (prop::sample::select(vec![2u64, 3, 4, 6, 9]), any::<bool>())
}

proptest! {
    #[test]
    fn ring_axioms((n, tor) in moduli(), a in terms(), b in terms(), c in terms()) {
        let r = ring(n, tor);
        let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero(&r));
        prop_assert_eq!(&a * &LaurentPoly::one(&r), a.clone());
    }

    #[test]
    fn antipode_is_an_involutive_ring_map((n, tor) in moduli(), a in terms(), b in terms()) {
        let r = ring(n, tor);
        let (a, b) = (poly(&r, &a), poly(&r, &b));
        prop_assert_eq!((&a * &b).antipode(), &a.antipode() * &b.antipode());
        prop_assert_eq!((&a + &b).antipode(), &a.antipode() + &b.antipode());
        prop_assert_eq!(a.antipode().antipode(), a.clone());
    }

    #[test]
    fn scalar_part_of_norm_is_sum_of_squares((n, tor) in moduli(), a in terms()) {
        let r = ring(n, tor);
        let a = poly(&r, &a);
        let want = a.terms().map(|(_, c)| (c * c) % n).sum::<u64>() % n;
        prop_assert_eq!((&a * &a.antipode()).scalar_part(), want);
    }

    #[test]
    fn render_parse_round_trip((n, tor) in moduli(), a in terms()) {
        let r = ring(n, tor);
        let a = poly(&r, &a);
        prop_assert_eq!(LaurentPoly::parse(&r, &a.render()).unwrap(), a);
    }
}

#[test]
fn torsion_direction_wraps() {
    let r = ring(5, true);
    let u = LaurentPoly::parse(&r, "u").unwrap();
    assert_eq!(u.pow(3), LaurentPoly::one(&r));
}
