use proptest::prelude::*;
use ptdhopf::cli::dsl::{parse_presentation, presentation_doc, same_presentation, ActionDoc, Expr, Name, PresentationDoc};
use ptdhopf::cli::report::Status;
use ptdhopf::cli::suites::{catalog_entry, run_suite, SuiteOptions};
use ptdhopf::cli::{check_document, main_with};
use ptdhopf::hopf::catalog as hc;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

const TAFT3: &str = "// Taft algebra of dimension 9
hopf T3 over cyclotomic(3) {
  group g : order 3;
  skew x : (g, 1);
  rel g*x = zeta*x*g;
  rel x^3 = 0;
}
action on qpoly(z) {
  g . z = zeta^2*z;
  x . z = 1;
}
";

const BAD_ACTION: &str = "hopf T3 over cyclotomic(3) {
  group g : order 3;
  skew x : (g, 1);
  rel g*x = zeta*x*g;
  rel x^3 = 0;
}
action on qpoly(z) {
  g . z = zeta^2*z;
  x . z = z^2;
}
";

fn params(items: &[(&str, &str)]) -> BTreeMap<String, String> {
    items.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("ptdhopf-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

fn run(args: &[&str]) -> i32 {
    main_with(std::iter::once("ptdhopf").chain(args.iter().copied()))
}

#[test]
fn taft_text_matches_the_catalog() {
    let h = parse_presentation(TAFT3).unwrap().to_presentation().unwrap();
    assert!(same_presentation(&h, &hc::taft(3).unwrap()));
    assert!(!same_presentation(&h, &hc::taft(4).unwrap()));
}

#[test]
fn catalog_presentations_survive_printing() {
    let algebras = [
        hc::taft(4).unwrap(),
        hc::nichols_e(3).unwrap(),
        hc::book(5, 2).unwrap(),
        hc::gen_taft(6, 3, ptdhopf::scalars::CycNum::one()).unwrap(),
        hc::h81().unwrap(),
        hc::uq_sl2(3, ptdhopf::scalars::CycNum::one()).unwrap(),
        hc::kq(5, 2).unwrap(),
        hc::uq_gl2(3).unwrap(),
        hc::uq_prime_gl2(3, 1).unwrap(),
        hc::adjoint_borel(&ptdhopf::hopf::CartanData::type_a(2), 3).unwrap(),
    ];
    for h in algebras {
        let text = presentation_doc(&h).unwrap().to_string();
        let back = parse_presentation(&text).unwrap().to_presentation().unwrap();
        assert!(same_presentation(&h, &back), "{}:\n{text}", h.name);
    }
}

#[test]
fn checking_a_document() {
    let opt = SuiteOptions::default();
    let good = check_document(TAFT3, opt, None).unwrap();
    assert!(good.passed(), "{}", good.summary());
    let dim = good.checks.iter().find(|c| c.id == "T3/dimension").unwrap();
    assert_eq!(dim.outcome.as_ref().unwrap()["dim"], 9);
    let bad = check_document(BAD_ACTION, opt, None).unwrap();
    assert!(!bad.passed());
    assert!(bad.checks.iter().filter(|c| c.status == Status::Fail).all(|c| c.witness.is_some() && !c.reproduce.is_empty()));
}

#[test]
fn diagnostics_carry_positions() {
    let d = parse_presentation("hopf A over cyclotomic(3) {\n  group g : order 3;\n  rel g*y = 0;\n}").unwrap();
    let e = d.to_presentation().unwrap_err();
    assert_eq!(e.pos.map(|p| p.line), Some(3), "{e}");
    let e = parse_presentation("hopf A over cyclotomic(3) { group g order 3; }").unwrap_err();
    assert_eq!(e.pos.map(|p| (p.line, p.col)), Some((1, 37)), "{e}");
}

#[test]
fn exit_codes() {
    let good = temp_file("good.hopf", TAFT3);
    let bad = temp_file("bad.hopf", BAD_ACTION);
    let broken = temp_file("broken.hopf", "hopf A over {");
    assert_eq!(run(&["check", good.to_str().unwrap()]), 0);
    assert_eq!(run(&["check", bad.to_str().unwrap()]), 1);
    assert_eq!(run(&["check", broken.to_str().unwrap()]), 2);
    assert_eq!(run(&["check", "/nonexistent/input.hopf"]), 2);
    assert_eq!(run(&["suite", "nope"]), 2);
    assert_eq!(run(&["suite", "catalog-verify", "algebra=taft"]), 2);
    assert_eq!(run(&["suite", "catalog-verify", "algebra=taft", "n=4"]), 0);
    assert_eq!(run(&["--frobnicate"]), 2);
}

#[test]
fn reference_runs() {
    let opt = SuiteOptions::default();
    let taft = run_suite("catalog-verify", &params(&[("algebra", "taft"), ("n", "4")]), opt).unwrap();
    assert!(taft.passed() && taft.checks.iter().all(|c| c.status == Status::Pass), "{}", taft.summary());

    let c = run_suite("classify", &params(&[("family", "gen_taft"), ("n", "6"), ("m", "3"), ("alpha", "1")]), opt).unwrap();
    let outcome = c.checks.iter().find_map(|c| c.outcome.clone()).unwrap();
    assert!(outcome.get("Infeasible").is_some(), "{outcome}");

    let j = run_suite("jq-solver", &params(&[("type", "A2"), ("m", "3"), ("basis", "standard")]), opt).unwrap();
    assert_eq!(j.checks[0].outcome.as_ref().unwrap()["solvable"], false);
}

#[test]
fn reports_are_reproducible() {
    let run_once = |dir: &str| {
        let out = std::env::temp_dir().join(format!("ptdhopf-{}-{dir}.json", std::process::id()));
        let st = Command::new(env!("CARGO_BIN_EXE_ptdhopf"))
            .args(["--json", out.to_str().unwrap(), "suite", "classify", "family=book", "n=5", "p=2"])
            .output()
            .unwrap();
        assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        (v, st.stdout)
    };
    let (a, sa) = run_once("a");
    let (b, sb) = run_once("b");
    assert_eq!(a, b);
    assert_eq!(sa, sb);
    let ids: Vec<&str> = a["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn print_emits_parseable_text() {
    let e = catalog_entry(&params(&[("algebra", "book"), ("n", "4")])).unwrap();
    let text = presentation_doc(&e.hopf).unwrap().to_string();
    assert!(same_presentation(&parse_presentation(&text).unwrap().to_presentation().unwrap(), &e.hopf));
    assert_eq!(run(&["print", "algebra=taft", "n=3"]), 0);
}

const NAMES: [&str; 6] = ["a", "b", "g", "x1", "zeta", "z_2"];

fn name() -> impl Strategy<Value = Name> {
    prop::sample::select(NAMES.to_vec()).prop_map(Name::new)
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u64..50).prop_map(Expr::Int),
        (0u64..20, 1u64..20).prop_map(|(n, d)| Expr::Frac(n, d)),
        name().prop_map(Expr::Sym),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::Sum),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::Prod),
            (inner, -5i64..=5).prop_map(|(e, k)| Expr::Pow(Box::new(e), k)),
        ]
    })
}

fn action() -> impl Strategy<Value = ActionDoc> {
    (
        prop::collection::vec(name(), 1..=3),
        prop::collection::vec((expr(), expr()), 0..=2),
        prop::collection::vec(name(), 0..=2),
        prop::collection::vec((name(), name(), expr()), 0..=3),
    )
        .prop_map(|(vars, commutation, laurent, images)| ActionDoc { vars, commutation, laurent, images })
}

fn doc() -> impl Strategy<Value = PresentationDoc> {
    (
        name(),
        1u32..=60,
        prop::collection::vec((name(), expr()), 0..=2),
        prop::collection::vec((name(), 1u64..=12), 0..=2),
        prop::collection::vec((name(), expr(), expr()), 0..=2),
        prop::collection::vec((expr(), expr()), 0..=3),
        prop::option::of(action()),
    )
        .prop_map(|(name, root, params, groups, skews, relations, action)| PresentationDoc { name, root, params, groups, skews, relations, action })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_the_identity(d in doc()) {
        let text = d.to_string();
        let back = parse_presentation(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &d, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }
}
