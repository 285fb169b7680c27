use proptest::prelude::*;
use ptdhopf::scalars::{euler_phi, gauss_sum, q_binom_sym, rationals, CycNum, Mono, Poly, RatFunc};
use std::sync::Arc;

fn cyc(m: u32, c: &[i64]) -> CycNum {
    CycNum::reduce(&rationals(c), m)
}

fn arb_cyc(m: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-4i64..=4, euler_phi(m).max(1)).prop_map(move |c| cyc(m, &c))
}

fn arb_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    (1u32..=12).prop_flat_map(|m| (arb_cyc(m), arb_cyc(m), arb_cyc(m)))
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=2, 0u32..=2), -3i64..=3), 1..=3).prop_map(|ts| {
        ts.into_iter().fold(Poly::zero(2), |acc, ((a, b), c)| acc.add(&Poly::term(Mono(vec![a, b]), CycNum::from_int(c))))
    })
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    let vars = Arc::new(vec!["x".to_string(), "y".to_string()]);
    (arb_poly(), arb_poly()).prop_map(move |(n, d)| {
        let d = if d.is_zero() { Poly::one(2) } else { d };
        RatFunc::new(vars.clone(), n, d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_none());
        }
    }

    #[test]
    fn mixed_orders_agree_after_lifting(m1 in 1u32..=6, m2 in 1u32..=6, c1 in prop::collection::vec(-3i64..=3, 6), c2 in prop::collection::vec(-3i64..=3, 6)) {
        let a = cyc(m1, &c1);
        let b = cyc(m2, &c2);
        let l = num_integer::lcm(m1, m2);
        prop_assert_eq!(a.mul(&b), a.lift(l).mul(&b.lift(l)));
        prop_assert_eq!(a.add(&b), a.lift(l).add(&b.lift(l)));
    }

    #[test]
    fn ratfunc_field_axioms(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            let one = a.mul(&a.inv().unwrap());
            prop_assert!(one.as_constant().is_some_and(|k| k.is_one()));
        }
    }
}

#[test]
fn gauss_sum_vanishes_exactly_at_multiples() {
    for m in 2..=30u32 {
        let z = CycNum::zeta(m, 1);
        for d in 0..=3 * m as i64 {
            let expect_zero = d % m as i64 == 0;
            assert_eq!(gauss_sum(d, &z).is_zero(), expect_zero, "m={m} d={d}");
        }
    }
}

/// Coefficients of (1 + t)(1 + p t)⋯(1 + p^{n−1} t).
fn product_coeffs(n: usize, p: &CycNum) -> Vec<CycNum> {
    let mut c = vec![CycNum::one()];
    for k in 0..n {
        let pk = p.pow(k as i64);
        let mut next = vec![CycNum::zero(); c.len() + 1];
        for (i, x) in c.iter().enumerate() {
            next[i] = next[i].add(x);
            next[i + 1] = next[i + 1].add(&x.mul(&pk));
        }
        c = next;
    }
    c
}

#[test]
fn symmetric_q_binomial_matches_product_expansion() {
    // Π (1 + q^{2k} t) = Σ q^{i(i−1)} q^{i(n−i)} [n, i]_q t^i
    for m in [5u32, 7, 8, 9, 12] {
        let q = CycNum::zeta(m, 1);
        let p = q.pow(2);
        for n in 0..=8usize {
            let c = product_coeffs(n, &p);
            for (i, ci) in c.iter().enumerate() {
                let (n, i) = (n as i64, i as i64);
                let b = q_binom_sym(n, i, &q).unwrap();
                assert_eq!(b.mul(&q.pow(i * (i - 1) + i * (n - i))), *ci, "m={m} n={n} i={i}");
            }
        }
    }
}
