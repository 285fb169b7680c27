use proptest::prelude::*;
use ptdhopf::hopf::catalog as hc;
use ptdhopf::hopf::{CartanData, HopfPresentation};
use ptdhopf::ncalg::{GPoly, Tensor};
use ptdhopf::scalars::CycNum;

fn rewriting_algebras() -> Vec<HopfPresentation> {
    vec![
        hc::taft(2).unwrap(),
        hc::taft(3).unwrap(),
        hc::taft(5).unwrap(),
        hc::nichols_e(2).unwrap(),
        hc::book(3, 1).unwrap(),
        hc::book(5, 2).unwrap(),
        hc::gen_taft(4, 2, CycNum::one()).unwrap(),
        hc::uq_sl2(3, CycNum::zero()).unwrap(),
        hc::uq_sl2(3, CycNum::one()).unwrap(),
    ]
}

fn all_algebras() -> Vec<HopfPresentation> {
    let mut v = rewriting_algebras();
    v.extend([
        hc::nichols_e(3).unwrap(),
        hc::h81().unwrap(),
        hc::kq(3, 1).unwrap(),
        hc::uq_gl2(3).unwrap(),
        hc::uq_prime_gl2(3, 1).unwrap(),
        hc::uq_gln(3, 3).unwrap(),
        hc::borel(&CartanData::type_a(2), 3).unwrap(),
        hc::adjoint_borel(&CartanData::type_a(2), 3).unwrap(),
        hc::borel(&CartanData::type_a(1), 5).unwrap(),
    ]);
    v
}

/// Σ c·g^a·w over random group exponents and skew words of length ≤ 4.
fn random_element(h: &HopfPresentation, terms: &[(Vec<i64>, Vec<u16>, i64)]) -> GPoly {
    let s = &h.smash;
    let r = h.group_rank();
    let nx = s.nx as u16;
    terms.iter().fold(GPoly::zero(), |acc, (a, w, c)| {
        let g: Vec<i64> = a.iter().take(r).cloned().chain(std::iter::repeat(0)).take(r).collect();
        let w: Vec<u16> = w.iter().map(|l| l % nx).collect();
        acc.add(&s.mul(&s.g(&g), &s.word(&w)).scale(&CycNum::from_int(*c)))
    })
}

fn arb_terms() -> impl Strategy<Value = Vec<(Vec<i64>, Vec<u16>, i64)>> {
    prop::collection::vec((prop::collection::vec(0i64..12, 3), prop::collection::vec(0u16..8, 0..=4), -3i64..=3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_idempotent(idx in 0usize..9, t in arb_terms()) {
        let h = &rewriting_algebras()[idx];
        let p = random_element(h, &t);
        let n = h.normal_form(&p).unwrap();
        prop_assert_eq!(h.normal_form(&n).unwrap(), n);
    }

    #[test]
    fn normal_form_respects_products(idx in 0usize..9, a in arb_terms(), b in arb_terms()) {
        let h = &rewriting_algebras()[idx];
        let (a, b) = (random_element(h, &a), random_element(h, &b));
        let s = &h.smash;
        let direct = h.normal_form(&s.mul(&a, &b)).unwrap();
        let via = h.normal_form(&s.mul(&h.normal_form(&a).unwrap(), &h.normal_form(&b).unwrap())).unwrap();
        prop_assert_eq!(direct, via);
    }
}

/// Apply Δ to leg `i` of a two-leg tensor.
fn delta_on_leg(h: &HopfPresentation, t: &Tensor, i: usize) -> Tensor {
    let mut out = Tensor::zero();
    for (k, c) in &t.terms {
        let d = h.coproduct_raw(&h.smash.key(k[i].clone()));
        for (dk, dc) in &d.terms {
            let mut nk = k.clone();
            nk.splice(i..=i, dk.iter().cloned());
            out.add_term(nk, c.mul(dc));
        }
    }
    out
}

fn generators(h: &HopfPresentation) -> Vec<GPoly> {
    let s = &h.smash;
    let r = h.group_rank();
    let mut v: Vec<GPoly> = (0..r).map(|i| s.g(&(0..r).map(|j| (i == j) as i64).collect::<Vec<_>>())).collect();
    v.extend((0..s.nx).map(|i| s.x(i)));
    v
}

#[test]
fn coproduct_is_coassociative_on_generators() {
    for h in all_algebras() {
        for x in generators(&h) {
            let d = h.coproduct_raw(&x);
            assert_eq!(delta_on_leg(&h, &d, 0), delta_on_leg(&h, &d, 1), "{} on {}", h.name, h.fmt_poly(&x));
        }
    }
}

#[test]
fn counit_and_antipode_axioms_on_generators_and_pairs() {
    for h in all_algebras() {
        let s = &h.smash;
        let gens = generators(&h);
        let mut elems = gens.clone();
        for a in &gens {
            for b in &gens {
                elems.push(s.mul(a, b));
            }
        }
        for x in elems {
            let d = h.coproduct_raw(&x);
            let (mut left, mut right) = (GPoly::zero(), GPoly::zero());
            let (mut sl, mut sr) = (GPoly::zero(), GPoly::zero());
            for (k, c) in &d.terms {
                let (a, b) = (s.key(k[0].clone()), s.key(k[1].clone()));
                left = left.add(&b.scale(&h.counit(&a).mul(c)));
                right = right.add(&a.scale(&h.counit(&b).mul(c)));
                sl = sl.add(&s.mul(&h.antipode(&a).unwrap(), &b).scale(c));
                sr = sr.add(&s.mul(&a, &h.antipode(&b).unwrap()).scale(c));
            }
            let unit = s.scalar(h.counit(&x));
            let name = format!("{} on {}", h.name, h.fmt_poly(&x));
            assert_eq!(left, x, "left counit, {name}");
            assert_eq!(right, x, "right counit, {name}");
            assert_eq!(sl, unit, "left antipode, {name}");
            assert_eq!(sr, unit, "right antipode, {name}");
        }
    }
}

#[test]
fn normal_words_count_the_truncated_dimension() {
    for h in rewriting_algebras() {
        let normal = h.normal_word_dimension().unwrap();
        let t = h.truncated_dimension();
        assert!(t.stabilized, "{}", h.name);
        assert_eq!(normal, t.dim, "{}", h.name);
    }
}
