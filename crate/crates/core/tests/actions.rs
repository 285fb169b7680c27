use proptest::prelude::*;
use ptdhopf::action::catalog::{book_action, nichols_e_action, taft_action, uq_sl2_action};
use ptdhopf::action::{elem_add, elem_sub, invariant_subspace, localize_action, ActionSpec, Elem, QPoly, Target};
use ptdhopf::scalars::CycNum;
use ptdhopf::twist::catalog::twisted_table;

fn actions() -> Vec<ActionSpec<QPoly>> {
    vec![taft_action(3).unwrap(), taft_action(4).unwrap(), nichols_e_action(2).unwrap(), book_action(3).unwrap(), uq_sl2_action(3).unwrap()]
}

fn elem(k: usize, terms: &[(Vec<i64>, i64)]) -> Elem<CycNum> {
    let mut e = Elem::new();
    for (exp, c) in terms {
        let key: Vec<i64> = exp.iter().cloned().chain(std::iter::repeat(0)).take(k).collect();
        let v = e.get(&key).cloned().unwrap_or_else(CycNum::zero).add(&CycNum::from_int(*c));
        if v.is_zero() {
            e.remove(&key);
        } else {
            e.insert(key, v);
        }
    }
    e
}

fn arb_elem() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    prop::collection::vec((prop::collection::vec(0i64..=3, 2), -2i64..=2), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn skew_derivations_obey_the_twisted_leibniz_rule(idx in 0usize..5, a in arb_elem(), b in arb_elem()) {
        let act = &actions()[idx];
        let t = &act.target;
        let k = t.ngens();
        let (a, b) = (elem(k, &a), elem(k, &b));
        let ev = act.evaluator();
        for (i, x) in act.hopf.skew.iter().enumerate() {
            let lhs = ev.skew(i, &t.mul(&a, &b)).unwrap();
            let r1 = t.mul(&ev.group(&x.left, &a).unwrap(), &ev.skew(i, &b).unwrap());
            let r2 = t.mul(&ev.skew(i, &a).unwrap(), &ev.group(&x.right, &b).unwrap());
            prop_assert!(elem_sub(&lhs, &elem_add(&r1, &r2)).is_empty(), "{} on {}", x.name, act.hopf.name);
        }
    }
}

#[test]
fn grouplikes_give_galois_extensions() {
    let mut rows = ptdhopf::action::catalog::example_table().unwrap();
    rows.extend(twisted_table().unwrap());
    for row in rows {
        let Some(n) = &row.denominators else { continue };
        let l = localize_action(&row.action, n).unwrap();
        let inv = invariant_subspace(&l).unwrap();
        assert_eq!(inv.grouplike_fixed.len(), 1, "{}", row.label);
        assert!(inv.coincide && inv.is_base_field, "{}", row.label);
        assert_eq!(inv.group_order, inv.dim_over_f as u64, "{}", row.label);
    }
}
