use ptdhopf::action::verify_all;
use ptdhopf::classify::{classify_cyclic, verify_certificate, ClassifyOutcome};
use ptdhopf::hopf::catalog as hc;
use ptdhopf::hopf::HopfPresentation;
use ptdhopf::scalars::CycNum;

/// Feasible families must materialize to verified actions; certificates must recompute.
fn check_outcome(h: &HopfPresentation, out: &ClassifyOutcome) {
    match out {
        ClassifyOutcome::Feasible(f) => {
            let a = f.materialize(h).unwrap();
            let r = verify_all(&a, 6).unwrap();
            assert!(r.passed(), "{}: {:?}", h.name, r);
        }
        ClassifyOutcome::Infeasible(c) => assert!(verify_certificate(h, c).unwrap(), "{}", h.name),
        ClassifyOutcome::Undecided { remaining, .. } => panic!("{} undecided: {remaining:?}", h.name),
    }
}

#[test]
fn generalized_taft_feasible_iff_m_equals_n() {
    for n in 2..=9u32 {
        for m in (2..=n).filter(|m| n % m == 0) {
            for alpha in [CycNum::zero(), CycNum::one()] {
                let h = hc::gen_taft(n, m, alpha.clone()).unwrap();
                let out = classify_cyclic(&h).unwrap();
                assert_eq!(out.is_feasible(), m == n, "T({n},{m},{alpha})");
                check_outcome(&h, &out);
            }
        }
    }
}

#[test]
fn h_lambda_feasibility_does_not_depend_on_scaling() {
    for m in [3u32, 5] {
        let base = classify_cyclic(&hc::uq_sl2(m, CycNum::one()).unwrap()).unwrap();
        let z = CycNum::zeta(m, 1);
        for lambda in [CycNum::from_int(2), CycNum::from_int(-1), CycNum::from_frac(1, 3), z.clone(), z.add(&CycNum::one())] {
            let h = hc::uq_sl2(m, lambda.clone()).unwrap();
            let out = classify_cyclic(&h).unwrap();
            assert_eq!(out.is_feasible(), base.is_feasible(), "m={m} lambda={lambda}");
            check_outcome(&h, &out);
        }
    }
}

#[test]
fn taft_algebras_are_feasible() {
    for n in 2..=5 {
        let h = hc::taft(n).unwrap();
        let out = classify_cyclic(&h).unwrap();
        assert!(out.is_feasible(), "T({n})");
        check_outcome(&h, &out);
    }
}
