use proptest::prelude::*;
use ptdhopf::action::QPoly;
use ptdhopf::hopf::CartanData;
use ptdhopf::scalars::CycNum;
use ptdhopf::twist::{jq_exists, twist_algebra, twist_algebra_raw, CharBasis, Cocycle, FinAbGroup, TwistElement};

fn arb_setup() -> impl Strategy<Value = (u32, usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (prop::sample::select(vec![2u32, 3, 4, 5]), 1usize..=3).prop_flat_map(|(m, r)| {
        let row = prop::collection::vec(0..m as i64, r);
        (Just(m), Just(r), prop::collection::vec(row.clone(), r), prop::collection::vec(row, r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bicharacter_twists_satisfy_the_axioms((m, r, b, _) in arb_setup().prop_filter("|G| <= 16", |s| (s.0 as u64).pow(s.1 as u32) <= 16)) {
        let g = FinAbGroup::cyclic_power(m as u64, r);
        let s = Cocycle::bimultiplicative(&g, m, b).unwrap();
        let j = TwistElement::from_cocycle(&s).unwrap();
        let jinv = TwistElement::from_cocycle(&s.inverse()).unwrap();
        prop_assert!(j.check_axioms(&jinv).unwrap().passed());
        prop_assert!(j.mul(&jinv).is_one());
    }

    #[test]
    fn twisting_back_is_the_identity((m, r, b, chars) in arb_setup()) {
        let g = FinAbGroup::cyclic_power(m as u64, r);
        let s = Cocycle::bimultiplicative(&g, m, b).unwrap();
        let a = QPoly::quantum_plane(r, &CycNum::zeta(m, 1));
        let there = twist_algebra(&a, &chars, &s);
        prop_assert_eq!(twist_algebra(&there, &chars, &s.inverse()), a);
    }

    #[test]
    fn fast_path_matches_the_star_product((m, r, b, chars) in arb_setup()) {
        let g = FinAbGroup::cyclic_power(m as u64, r);
        let s = Cocycle::bimultiplicative(&g, m, b).unwrap();
        let j = TwistElement::from_cocycle(&s).unwrap();
        let a = QPoly::quantum_plane(r, &CycNum::zeta(m, 1));
        prop_assert_eq!(twist_algebra(&a, &chars, &s), twist_algebra_raw(&a, &chars, &j));
    }

    #[test]
    fn type_a_solvable_iff_coprime(n in 2usize..=5, k in 1u32..=7) {
        let m = 2 * k + 1;
        let out = jq_exists(&CartanData::type_a(n - 1), m, CharBasis::Standard).unwrap();
        prop_assert_eq!(out.is_solvable(), num_integer::gcd(m as usize, n) == 1, "n={} m={}", n, m);
    }
}
