//! The named suites behind `ptdhopf suite`.

use super::dsl::parse_scalar;
use super::report::{Check, Report, Status};
use crate::action::catalog::{self as ac, CatalogAction};
use crate::action::{invariant_subspace, localize_action, verify_all, ActionReport, ActionSpec, QPoly, VerifyReport};
use crate::classify::{book_feasibility, classify_cyclic, verify_certificate, ClassifyOutcome};
use crate::hopf::catalog as hc;
use crate::hopf::{CartanData, CoidealOutcome, HopfPresentation, Verdict};
use crate::scalars::CycNum;
use crate::twist::{self, catalog as tc, CharBasis, Cocycle, FinAbGroup, JqOutcome, TwistElement};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::BTreeMap;
use std::time::Instant;

pub const SUITES: [&str; 6] = ["catalog-verify", "dimensions", "twists", "jq-solver", "classify", "invariants"];

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub degree_cap: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { degree_cap: 6, seed: 0 }
    }
}

/// Bad suite name or parameters.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

pub type Params = BTreeMap<String, String>;

struct Args<'a>(&'a Params);

impl Args<'_> {
    fn get(&self, k: &str) -> Option<&str> {
        self.0.get(k).map(|s| s.as_str())
    }

    fn uint(&self, k: &str, default: Option<u32>) -> Result<u32, UsageError> {
        match (self.get(k), default) {
            (Some(v), _) => v.parse().or_else(|_| usage(format!("parameter {k}={v} is not a non-negative integer"))),
            (None, Some(d)) => Ok(d),
            (None, None) => usage(format!("missing parameter {k}")),
        }
    }

    fn scalar(&self, k: &str, root: u32, default: &str) -> Result<(CycNum, String), UsageError> {
        let text = self.get(k).unwrap_or(default);
        let c = parse_scalar(text, root).map_err(|e| UsageError(format!("parameter {k}: {e}")))?;
        Ok((c, text.to_string()))
    }

    fn only(&self, allowed: &[&str]) -> Result<(), UsageError> {
        for k in self.0.keys() {
            if !allowed.contains(&k.as_str()) {
                return usage(format!("unknown parameter '{k}' (expected one of: {})", allowed.join(", ")));
            }
        }
        Ok(())
    }
}

pub fn cartan_type(s: &str) -> Result<CartanData, UsageError> {
    match s {
        "B2" => Ok(CartanData::type_b2()),
        _ => match s.strip_prefix('A').and_then(|r| r.parse::<usize>().ok()) {
            Some(r) if r >= 1 => Ok(CartanData::type_a(r)),
            _ => usage(format!("unknown Cartan type '{s}' (expected A<r> or B2)")),
        },
    }
}

/// The library expression for a Cartan type accepted by `cartan_type`.
fn cartan_call(s: &str) -> String {
    match s {
        "B2" => "ptdhopf::hopf::CartanData::type_b2()".into(),
        _ => format!("ptdhopf::hopf::CartanData::type_a({})", &s[1..]),
    }
}

/// A catalog algebra, its action when there is one, and how to rebuild both.
pub struct Entry {
    pub label: String,
    pub hopf: HopfPresentation,
    pub action: Option<CatalogAction>,
    pub hopf_call: String,
    pub action_call: Option<String>,
}

fn entry_from_table(rows: Vec<CatalogAction>, call: &str) -> Vec<Entry> {
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| Entry {
            label: row.label.clone(),
            hopf: row.action.hopf.clone(),
            hopf_call: format!("{call}?[{i}].action.hopf"),
            action_call: Some(format!("{call}?[{i}].action")),
            action: Some(row),
        })
        .collect()
}

/// Rows of the example table: untwisted then twisted.
pub fn table_entries() -> Result<Vec<Entry>, String> {
    let mut out = entry_from_table(ac::example_table().map_err(|e| e.to_string())?, "ptdhopf::action::catalog::example_table()");
    out.extend(entry_from_table(tc::twisted_table().map_err(|e| e.to_string())?, "ptdhopf::twist::catalog::twisted_table()"));
    Ok(out)
}

const ALGEBRA_KEYS: [&str; 9] = ["algebra", "n", "m", "p", "j", "alpha", "lambda", "type", "table"];

/// Look up `algebra=<name>` with its parameters.
pub fn catalog_entry(p: &Params) -> Result<Entry, UsageError> {
    let a = Args(p);
    let Some(name) = a.get("algebra") else { return usage("missing parameter algebra") };
    let fail = |e: String| UsageError(format!("{name}: {e}"));
    let with_action = |label: String, hopf_call: String, action: Result<ActionSpec<QPoly>, String>, call: String, den: Vec<u32>| {
        let action = action.map_err(fail)?;
        Ok(Entry {
            label: label.clone(),
            hopf: action.hopf.clone(),
            action: Some(CatalogAction { label, action, denominators: Some(den) }),
            hopf_call,
            action_call: Some(call),
        })
    };
    let bare = |label: String, hopf: Result<HopfPresentation, String>, call: String| {
        Ok(Entry { label, hopf: hopf.map_err(fail)?, action: None, hopf_call: call, action_call: None })
    };
    let s = |e: &dyn std::fmt::Display| e.to_string();
    match name {
        "taft" => {
            let n = a.uint("n", None)?;
            with_action(format!("T({n})"), format!("ptdhopf::hopf::catalog::taft({n})"), ac::taft_action(n).map_err(|e| s(&e)), format!("ptdhopf::action::catalog::taft_action({n})"), vec![n])
        }
        "nichols" => {
            let n = a.uint("n", None)?;
            with_action(
                format!("E({n})"),
                format!("ptdhopf::hopf::catalog::nichols_e({n})"),
                ac::nichols_e_action(n).map_err(|e| s(&e)),
                format!("ptdhopf::action::catalog::nichols_e_action({n})"),
                vec![2],
            )
        }
        "book" => {
            let n = a.uint("n", None)?;
            let p = a.uint("p", Some(1))?;
            let call = format!("ptdhopf::hopf::catalog::book({n}, {p})");
            if p == 1 {
                with_action(format!("h(zeta_{n},1)"), call, ac::book_action(n).map_err(|e| s(&e)), format!("ptdhopf::action::catalog::book_action({n})"), vec![n])
            } else {
                bare(format!("h(zeta_{n},{p})"), hc::book(n, p).map_err(|e| s(&e)), call)
            }
        }
        "gen_taft" => {
            let n = a.uint("n", None)?;
            let m = a.uint("m", None)?;
            let (alpha, at) = a.scalar("alpha", m.max(1), "0")?;
            bare(format!("T({n},{m},{at})"), hc::gen_taft(n, m, alpha).map_err(|e| s(&e)), format!("ptdhopf::hopf::catalog::gen_taft({n}, {m}, {at})"))
        }
        "h81" => with_action("H81".into(), "ptdhopf::hopf::catalog::h81()".into(), ac::h81_action().map_err(|e| s(&e)), "ptdhopf::action::catalog::h81_action()".into(), vec![3]),
        "sl2" => {
            let m = a.uint("m", None)?;
            if a.get("lambda").is_some() {
                let (l, lt) = a.scalar("lambda", m, "1")?;
                bare(format!("H_lambda(m={m},lambda={lt})"), hc::uq_sl2(m, l).map_err(|e| s(&e)), format!("ptdhopf::hopf::catalog::uq_sl2({m}, {lt})"))
            } else {
                with_action(
                    format!("u_q(sl2), m={m}"),
                    format!("ptdhopf::hopf::catalog::uq_sl2({m}, 1)"),
                    ac::uq_sl2_action(m).map_err(|e| s(&e)),
                    format!("ptdhopf::action::catalog::uq_sl2_action({m})"),
                    vec![m],
                )
            }
        }
        "kq" => {
            let m = a.uint("m", None)?;
            let j = a.uint("j", Some(1))?;
            bare(format!("K_q(m={m},j={j})"), hc::kq(m, j).map_err(|e| s(&e)), format!("ptdhopf::hopf::catalog::kq({m}, {j})"))
        }
        "gl2" => {
            let m = a.uint("m", None)?;
            with_action(
                format!("u_q(gl2), m={m}"),
                format!("ptdhopf::hopf::catalog::uq_gl2({m})"),
                ac::uq_gl2_action(m).map_err(|e| s(&e)),
                format!("ptdhopf::action::catalog::uq_gl2_action({m})"),
                vec![m, m],
            )
        }
        "gl2prime" => {
            let m = a.uint("m", None)?;
            let j = a.uint("j", Some(1))?;
            with_action(
                format!("u'_q(gl2), m={m}, j={j}"),
                format!("ptdhopf::hopf::catalog::uq_prime_gl2({m}, {j})"),
                ac::uq_prime_gl2_action(m, j).map_err(|e| s(&e)),
                format!("ptdhopf::action::catalog::uq_prime_gl2_action({m}, {j})"),
                vec![m, m],
            )
        }
        "gln" | "gln-jplus" | "gln-jminus" => {
            let n = a.uint("n", None)? as usize;
            let m = a.uint("m", None)?;
            let (label, action, call) = match name {
                "gln" => (format!("u_q(gl{n}), m={m}"), ac::hu_action(n, m).map_err(|e| s(&e)), format!("ptdhopf::action::catalog::hu_action({n}, {m})")),
                "gln-jplus" => (format!("u_q(gl{n})^J+, m={m}"), tc::gln_jplus_action(n, m).map_err(|e| s(&e)), format!("ptdhopf::twist::catalog::gln_jplus_action({n}, {m})")),
                _ => (format!("u_q(gl{n})^J-, m={m}"), tc::gln_jminus_action(n, m).map_err(|e| s(&e)), format!("ptdhopf::twist::catalog::gln_jminus_action({n}, {m})")),
            };
            with_action(label, format!("{call}?.hopf"), action, call, vec![m; n])
        }
        "borel" | "adjoint-borel" | "adjoint-borel-twisted" => {
            let t = a.get("type").unwrap_or("A1");
            let c = cartan_type(t)?;
            let ct = cartan_call(t);
            let m = a.uint("m", None)?;
            let r = c.rank();
            match name {
                "borel" => bare(format!("u_q^+({t}), m={m}"), hc::borel(&c, m).map_err(|e| s(&e)), format!("ptdhopf::hopf::catalog::borel(&{ct}, {m})")),
                "adjoint-borel" => {
                    bare(format!("u~_q^+({t}), m={m}"), hc::adjoint_borel(&c, m).map_err(|e| s(&e)), format!("ptdhopf::hopf::catalog::adjoint_borel(&{ct}, {m})"))
                }
                _ => {
                    let call = format!("ptdhopf::twist::catalog::adjoint_borel_twisted_action(&{ct}, {m})");
                    with_action(format!("u~_q^+({t})^JQ, m={m}"), format!("{call}?.hopf"), tc::adjoint_borel_twisted_action(&c, m).map_err(|e| s(&e)), call, vec![m; r])
                }
            }
        }
        _ => usage(format!(
            "unknown algebra '{name}' (expected taft, nichols, book, gen_taft, h81, sl2, kq, gl2, gl2prime, gln, gln-jplus, gln-jminus, borel, adjoint-borel, adjoint-borel-twisted)"
        )),
    }
}

fn entries(p: &Params) -> Result<Vec<Entry>, UsageError> {
    if p.contains_key("algebra") {
        Args(p).only(&ALGEBRA_KEYS)?;
        Ok(vec![catalog_entry(p)?])
    } else {
        Args(p).only(&["table"])?;
        table_entries().map_err(UsageError)
    }
}

fn first_failure(v: &VerifyReport) -> String {
    match v.failures.first() {
        Some(w) => format!("{}: {} gives {} ({} failures of {} checked)", w.check, w.input, w.value, v.failures.len(), v.checked),
        None => String::new(),
    }
}

/// Fail on any failed relation, Inconclusive when some relation was beyond the cap.
pub(crate) fn presentation_check(id: String, h: &HopfPresentation, cap: usize, reproduce: String) -> Check {
    let v = match h.validate(cap) {
        Ok(v) => v,
        Err(e) => return Check::new(id, Status::Fail, reproduce).with_witness(e.to_string()),
    };
    let mut bad = Vec::new();
    let mut open = Vec::new();
    for i in 0..v.counit.len() {
        if !v.counit[i] {
            bad.push(format!("relation {i}: counit does not vanish"));
        }
        match &v.coideal[i] {
            CoidealOutcome::Fail(t) => bad.push(format!("relation {i}: coproduct leaves {t}")),
            CoidealOutcome::Inconclusive(t) => open.push(format!("relation {i}: {t}")),
            CoidealOutcome::Pass => {}
        }
        if v.antipode_stable[i] == Some(false) {
            bad.push(format!("relation {i}: antipode image not in the ideal"));
        }
    }
    if !bad.is_empty() {
        Check::new(id, Status::Fail, reproduce).with_witness(bad.join("; "))
    } else if !open.is_empty() {
        Check::new(id, Status::Inconclusive, reproduce).with_witness(open.join("; "))
    } else {
        Check::new(id, Status::Pass, reproduce)
    }
}

pub(crate) fn action_checks(label: &str, r: &ActionReport, call: &str, cap: usize) -> Vec<Check> {
    let rep = |f: &str| format!("ptdhopf::action::{f}(&{call}?, {cap})");
    let faithful = &r.inner_faithful;
    vec![
        Check::expect(format!("{label}/hopf-relations"), r.hopf_relations.passed(), || first_failure(&r.hopf_relations), rep("verify_hopf_relations")),
        Check::expect(format!("{label}/target-relations"), r.target_relations.passed(), || first_failure(&r.target_relations), format!("ptdhopf::action::verify_target_relations(&{call}?)")),
        Check::expect(format!("{label}/module-algebra"), r.module_algebra.passed(), || first_failure(&r.module_algebra), rep("verify_module_algebra")),
        Check::expect(
            format!("{label}/inner-faithful"),
            faithful.passed(),
            || {
                if faithful.group_kernel_trivial {
                    format!("dependent skew generators: {}", faithful.dependent.join(", "))
                } else {
                    "a nontrivial grouplike acts trivially".into()
                }
            },
            rep("inner_faithful_pointed"),
        ),
    ]
}

fn catalog_verify(e: &Entry, opt: SuiteOptions) -> Vec<Check> {
    let cap = opt.degree_cap;
    let mut out = Vec::new();
    let label = &e.label;
    out.push(presentation_check(format!("{label}/presentation"), &e.hopf, cap, format!("{}?.validate({cap})", e.hopf_call)));
    if let (Some(row), Some(call)) = (&e.action, &e.action_call) {
        match verify_all(&row.action, cap) {
            Ok(r) => out.extend(action_checks(label, &r, call, cap)),
            Err(err) => out.push(Check::new(format!("{label}/action"), Status::Fail, format!("ptdhopf::action::verify_all(&{call}?, {cap})")).with_witness(err.to_string())),
        }
    }
    out
}

fn invariants(e: &Entry) -> Vec<Check> {
    let (Some(row), Some(call)) = (&e.action, &e.action_call) else { return Vec::new() };
    let Some(den) = &row.denominators else { return Vec::new() };
    let id = format!("{}/invariants", e.label);
    let reproduce = format!("ptdhopf::action::invariant_subspace(&ptdhopf::action::localize_action(&{call}?, &{den:?})?)");
    let r = match localize_action(&row.action, den).and_then(|l| invariant_subspace(&l)) {
        Ok(r) => r,
        Err(err) => return vec![Check::new(id, Status::Fail, reproduce).with_witness(err.to_string())],
    };
    let ok = r.coincide && r.is_base_field && r.dim_over_f as u64 == r.group_order;
    let outcome = json!({
        "invariant_dim": r.invariants.len(),
        "grouplike_fixed_dim": r.grouplike_fixed.len(),
        "dim_over_f": r.dim_over_f,
        "group_order": r.group_order,
    });
    let w = || {
        format!(
            "invariants of dimension {} (grouplike-fixed {}), base field: {}, [L:F] = {} vs |G| = {}",
            r.invariants.len(),
            r.grouplike_fixed.len(),
            r.is_base_field,
            r.dim_over_f,
            r.group_order
        )
    };
    vec![Check::expect(id, ok, w, reproduce).with_outcome(&outcome)]
}

fn dimension(e: &Entry) -> Check {
    let d = e.hopf.truncated_dimension();
    let id = format!("{}/dimension", e.label);
    let reproduce = format!("{}?.truncated_dimension()", e.hopf_call);
    let out = json!({"dim": d.dim, "stabilized": d.stabilized, "cap": d.cap, "claimed": e.hopf.claimed_dim});
    let c = match (e.hopf.claimed_dim, d.stabilized) {
        (_, false) => Check::new(id, Status::Inconclusive, reproduce).with_witness(format!("slice dimension {} did not stabilize by degree {}", d.dim, d.cap)),
        (Some(n), true) => Check::expect(id, n == d.dim, || format!("dimension {} but {} expected", d.dim, n), reproduce),
        (None, true) => Check::new(id, Status::Pass, reproduce),
    };
    c.with_outcome(&out)
}

fn dimension_entries(p: &Params) -> Result<Vec<Entry>, UsageError> {
    if p.contains_key("algebra") {
        return entries(p);
    }
    Args(p).only(&[])?;
    let mut specs: Vec<Params> = Vec::new();
    let mk = |kv: &[(&str, String)]| kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<Params>();
    for n in 2..=6 {
        specs.push(mk(&[("algebra", "taft".into()), ("n", n.to_string())]));
    }
    for n in 1..=4 {
        specs.push(mk(&[("algebra", "nichols".into()), ("n", n.to_string())]));
    }
    for (n, m) in [(4, 2), (6, 3), (9, 3)] {
        for alpha in ["0", "1"] {
            specs.push(mk(&[("algebra", "gen_taft".into()), ("n", n.to_string()), ("m", m.to_string()), ("alpha", alpha.into())]));
        }
    }
    for (n, p) in [(3, 1), (5, 2), (5, 3)] {
        specs.push(mk(&[("algebra", "book".into()), ("n", n.to_string()), ("p", p.to_string())]));
    }
    specs.push(mk(&[("algebra", "h81".into())]));
    specs.push(mk(&[("algebra", "sl2".into()), ("m", "3".into())]));
    specs.iter().map(catalog_entry).collect()
}

/// z_i ↦ χ_i for the standard quantum plane on (Z/m)^r.
fn unit_chars(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect()
}

fn fmt_comm(t: &QPoly) -> String {
    let k = t.vars.len();
    let mut parts = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            parts.push(format!("{}{} = ({}) {}{}", t.vars[i], t.vars[j], t.comm[i][j], t.vars[j], t.vars[i]));
        }
    }
    parts.join(", ")
}

fn twists(p: &Params, opt: SuiteOptions) -> Result<Vec<Check>, UsageError> {
    let a = Args(p);
    a.only(&["n", "m", "samples"])?;
    let ns: Vec<usize> = match a.get("n") {
        Some(_) => vec![a.uint("n", None)? as usize],
        None => vec![2, 3],
    };
    let ms: Vec<u32> = match a.get("m") {
        Some(_) => vec![a.uint("m", None)?],
        None => vec![3, 5],
    };
    let samples = a.uint("samples", Some(20))?;
    let mut out = Vec::new();
    let err = |id: String, call: String, e: twist::TwistError| Check::new(id, Status::Fail, call).with_witness(e.to_string());
    for &m in &ms {
        for &n in &ns {
            let tag = format!("gl{n}/m={m}");
            let q = CycNum::zeta(m, 1);
            let aq = QPoly::quantum_plane(n, &q);
            let chars = unit_chars(n);
            let (jp, jm) = match (twist::jplus(n, m), twist::jminus(n, m)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    out.push(err(format!("{tag}/cocycles"), format!("ptdhopf::twist::jplus({n}, {m})"), e));
                    continue;
                }
            };
            for (name, s, call) in [("J+", &jp, "jplus"), ("J-", &jm, "jminus")] {
                let id = format!("{tag}/{name}/axioms");
                let rep = format!("ptdhopf::twist::TwistElement::from_cocycle(&ptdhopf::twist::{call}({n}, {m})?)?.check_axioms(..)");
                match TwistElement::from_cocycle(s).and_then(|j| TwistElement::from_cocycle(&s.inverse()).and_then(|ji| j.check_axioms(&ji))) {
                    Ok(ax) => out.push(Check::expect(id, ax.passed(), || format!("{ax:?}"), rep)),
                    Err(e) => out.push(err(id, rep, e)),
                }
            }
            let plus = twist::twist_algebra(&aq, &chars, &jp);
            out.push(Check::expect(
                format!("{tag}/A_q twisted by J+ is commutative"),
                plus.is_commutative(),
                || fmt_comm(&plus),
                format!("ptdhopf::twist::twist_algebra(&QPoly::quantum_plane({n}, &zeta({m})), &units, &ptdhopf::twist::jplus({n}, {m})?)"),
            ));
            let inv = twist::twist_algebra(&aq, &chars, &jp.inverse());
            out.push(Check::expect(
                format!("{tag}/A_q twisted by (J+)^-1 is commutative"),
                inv.is_commutative(),
                || fmt_comm(&inv),
                format!("ptdhopf::twist::twist_algebra(&QPoly::quantum_plane({n}, &zeta({m})), &units, &ptdhopf::twist::jplus({n}, {m})?.inverse())"),
            ));
            let raw = TwistElement::from_cocycle(&jp).map(|j| twist::twist_algebra_raw(&aq, &chars, &j));
            let rep = format!("ptdhopf::twist::twist_algebra_raw(&QPoly::quantum_plane({n}, &zeta({m})), &units, &TwistElement::from_cocycle(&jplus({n}, {m})?)?)");
            match raw {
                Ok(r) => out.push(Check::expect(format!("{tag}/J+ twist agrees with the group-algebra expansion"), r == plus, || fmt_comm(&r), rep)),
                Err(e) => out.push(err(format!("{tag}/J+ raw twist"), rep, e)),
            }
            let rep = format!("ptdhopf::twist::twisted_antipode_check(&uq_gln({n}, {m})?, &twist_presentation(..)?, &jplus({n}, {m})?)");
            let anti = hc::uq_gln(n, m).map_err(twist::TwistError::from).and_then(|h| {
                let hj = twist::twist_presentation(&h, &jp)?;
                twist::twisted_antipode_check(&h, &hj, &jp)
            });
            match anti {
                Ok(v) => out.push(Check::expect(format!("{tag}/twisted antipode"), v.iter().all(|x| *x == Verdict::Pass), || format!("{v:?}"), rep)),
                Err(e) => out.push(err(format!("{tag}/twisted antipode"), rep, e)),
            }
        }
        // random bicharacters on (Z/m)^3
        let mut rng = ChaCha8Rng::seed_from_u64(opt.seed ^ m as u64);
        let g = FinAbGroup::cyclic_power(m as u64, 3);
        let base = QPoly::quantum_plane(3, &CycNum::zeta(m, 1));
        let chars = unit_chars(3);
        for i in 0..samples {
            let b: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0..m as i64)).collect()).collect();
            let id = format!("round-trip/m={m}/{i:02}");
            let rep = format!("twist_algebra(&twist_algebra(&A, &units, &s), &units, &s.inverse()) with s = Cocycle::bimultiplicative(&FinAbGroup::cyclic_power({m}, 3), {m}, {b:?})?");
            match Cocycle::bimultiplicative(&g, m, b.clone()) {
                Ok(s) => {
                    let there = twist::twist_algebra(&base, &chars, &s);
                    let back = twist::twist_algebra(&there, &chars, &s.inverse());
                    out.push(Check::expect(id, back == base, || format!("B = {b:?} gives {}", fmt_comm(&back)), rep).with_outcome(&json!({"b": b})));
                }
                Err(e) => out.push(err(id, rep, e)),
            }
        }
    }
    Ok(out)
}

fn jq_outcome(o: &JqOutcome) -> serde_json::Value {
    match o {
        JqOutcome::Solvable { b, unique, .. } => json!({"solvable": true, "b": b, "unique": unique}),
        JqOutcome::Infeasible { lambda, residue, congruence } => json!({
            "solvable": false,
            "lambda": lambda.iter().map(|((i, j), l)| json!({"i": i + 1, "j": j + 1, "coefficient": l})).collect::<Vec<_>>(),
            "residue": residue,
            "congruence": congruence,
        }),
    }
}

fn jq_solver(p: &Params) -> Result<Vec<Check>, UsageError> {
    let a = Args(p);
    a.only(&["type", "m", "basis"])?;
    let bases: Vec<CharBasis> = match a.get("basis") {
        None | Some("both") => vec![CharBasis::Standard, CharBasis::Adjoint],
        Some("standard") => vec![CharBasis::Standard],
        Some("adjoint") => vec![CharBasis::Adjoint],
        Some(b) => return usage(format!("unknown basis '{b}' (expected standard, adjoint or both)")),
    };
    let bname = |b: CharBasis| if b == CharBasis::Standard { "standard" } else { "adjoint" };
    let mut out = Vec::new();
    if let Some(t) = a.get("type") {
        let c = cartan_type(t)?;
        let ct = cartan_call(t);
        let m = a.uint("m", None)?;
        for b in bases {
            let id = format!("{t}/m={m}/{}", bname(b));
            let rep = format!("ptdhopf::twist::jq_exists(&{ct}, {m}, ptdhopf::twist::CharBasis::{b:?})");
            out.push(match twist::jq_exists(&c, m, b) {
                Ok(o) => Check::new(id, Status::Pass, rep).with_outcome(&jq_outcome(&o)),
                Err(e) => Check::new(id, Status::Fail, rep).with_witness(e.to_string()),
            });
        }
        return Ok(out);
    }
    if a.get("m").is_some() {
        return usage("parameter m needs type");
    }
    // the grid A_{n-1}, n = 2..5, odd m = 3..15
    for n in 2..=5usize {
        for m in (3..=15u32).step_by(2) {
            let c = CartanData::type_a(n - 1);
            let t = format!("A{}", n - 1);
            for &b in &bases {
                let id = format!("grid/{t}/m={m:02}/{}", bname(b));
                let rep = format!("ptdhopf::twist::jq_exists(&ptdhopf::hopf::CartanData::type_a({}), {m}, ptdhopf::twist::CharBasis::{b:?})", n - 1);
                let expect = b == CharBasis::Adjoint || m.gcd(&(n as u32)) == 1;
                out.push(match twist::jq_exists(&c, m, b) {
                    Ok(o) => {
                        let unique_ok = b == CharBasis::Standard || matches!(o, JqOutcome::Solvable { unique: true, .. });
                        Check::expect(id, o.is_solvable() == expect && unique_ok, || format!("solvable = {}, expected {expect}", o.is_solvable()), rep).with_outcome(&jq_outcome(&o))
                    }
                    Err(e) => Check::new(id, Status::Fail, rep).with_witness(e.to_string()),
                });
            }
        }
    }
    Ok(out)
}

fn classify_one(e: &Entry, opt: SuiteOptions, book: Option<(u32, u32)>) -> Vec<Check> {
    let h = &e.hopf;
    let id = format!("{}/outcome", e.label);
    let rep = format!("ptdhopf::classify::classify_cyclic(&{}?)", e.hopf_call);
    let outcome = match book {
        Some((n, p)) => book_feasibility(n, p).map(|v| (v.outcome.clone(), Some(json!({"gauss_sum": v.gauss_sum, "gauss_sum_vanishes": v.gauss_sum_vanishes})))),
        None => classify_cyclic(h).map(|o| (o, None)),
    };
    let (o, extra) = match outcome {
        Ok(x) => x,
        Err(err) => return vec![Check::new(id, Status::Fail, rep).with_witness(err.to_string())],
    };
    let mut summary = serde_json::to_value(&o).expect("serializable outcome");
    if let Some(x) = extra {
        summary.as_object_mut().unwrap().insert("book".into(), x);
    }
    let mut out = Vec::new();
    match &o {
        ClassifyOutcome::Undecided { remaining, .. } => {
            out.push(Check::new(id, Status::Inconclusive, rep).with_outcome(&summary).with_witness(format!("undecided identities: {}", remaining.join("; "))));
        }
        ClassifyOutcome::Infeasible(cert) => {
            out.push(Check::new(id, Status::Pass, rep.clone()).with_outcome(&summary));
            let cid = format!("{}/certificate", e.label);
            let crep = format!("ptdhopf::classify::verify_certificate(&{}?, {rep}?.certificate().unwrap())", e.hopf_call);
            out.push(match verify_certificate(h, cert) {
                Ok(ok) => Check::expect(cid, ok, || format!("replay of the certificate does not reach {}", cert.identity), crep),
                Err(err) => Check::new(cid, Status::Fail, crep).with_witness(err.to_string()),
            });
        }
        ClassifyOutcome::Feasible(fam) => {
            out.push(Check::new(id, Status::Pass, rep.clone()).with_outcome(&summary));
            let call = format!("{rep}? as Feasible(family) => family.materialize(&{}?)", e.hopf_call);
            match fam.materialize(h).map_err(|e| e.to_string()).and_then(|a| verify_all(&a, opt.degree_cap).map_err(|e| e.to_string())) {
                Ok(r) => out.extend(action_checks(&format!("{}/family", e.label), &r, &call, opt.degree_cap)),
                Err(err) => out.push(Check::new(format!("{}/family", e.label), Status::Fail, call).with_witness(err)),
            }
        }
    }
    out
}

fn family_entry(p: &Params) -> Result<(Entry, Option<(u32, u32)>), UsageError> {
    let a = Args(p);
    a.only(&["family", "n", "m", "p", "j", "alpha", "lambda"])?;
    let family = a.get("family").unwrap_or_default();
    let mut q = p.clone();
    q.remove("family");
    let algebra = match family {
        "h_lambda" => {
            q.entry("lambda".into()).or_insert_with(|| "1".into());
            "sl2"
        }
        "taft" | "gen_taft" | "book" | "nichols" | "h81" | "kq" | "sl2" => family,
        other => return usage(format!("unknown family '{other}' (expected taft, gen_taft, book, h_lambda, nichols, h81, kq)")),
    };
    q.insert("algebra".into(), algebra.into());
    let e = catalog_entry(&q)?;
    let book = if family == "book" { Some((a.uint("n", None)?, a.uint("p", Some(1))?)) } else { None };
    Ok((e, book))
}

fn classify_suite(p: &Params, opt: SuiteOptions) -> Result<Vec<Check>, UsageError> {
    if p.contains_key("family") {
        let (e, book) = family_entry(p)?;
        return Ok(classify_one(&e, opt, book));
    }
    Args(p).only(&[])?;
    let mut specs: Vec<Vec<(&str, String)>> = Vec::new();
    for (n, m) in [(4, 2), (6, 3), (9, 3)] {
        for alpha in ["0", "1"] {
            specs.push(vec![("family", "gen_taft".into()), ("n", n.to_string()), ("m", m.to_string()), ("alpha", alpha.into())]);
        }
    }
    for (n, pp) in [(5, 2), (5, 3), (7, 2), (5, 1)] {
        specs.push(vec![("family", "book".into()), ("n", n.to_string()), ("p", pp.to_string())]);
    }
    for m in [3, 5] {
        specs.push(vec![("family", "h_lambda".into()), ("m", m.to_string()), ("lambda", "0".into())]);
        specs.push(vec![("family", "h_lambda".into()), ("m", m.to_string()), ("lambda", "1".into())]);
    }
    for n in 2..=4 {
        specs.push(vec![("family", "taft".into()), ("n", n.to_string())]);
    }
    let mut out = Vec::new();
    for s in specs {
        let q: Params = s.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let (e, book) = family_entry(&q)?;
        out.extend(classify_one(&e, opt, book));
    }
    Ok(out)
}

fn timed(report: &mut Report, label: &str, f: impl FnOnce() -> Result<Vec<Check>, UsageError>) -> Result<(), UsageError> {
    let t = Instant::now();
    let cs = f()?;
    report.timings.insert(label.to_string(), t.elapsed().as_secs_f64());
    for c in cs {
        report.push(c);
    }
    Ok(())
}

/// Run a suite; checks come back sorted by id.
pub fn run_suite(name: &str, params: &Params, opt: SuiteOptions) -> Result<Report, UsageError> {
    let mut report = Report::new(name, params.clone(), None);
    match name {
        "catalog-verify" | "invariants" => {
            let es = entries(params)?;
            let results: Vec<(String, Vec<Check>, f64)> = std::thread::scope(|sc| {
                let hs: Vec<_> = es
                    .iter()
                    .map(|e| {
                        sc.spawn(move || {
                            let t = Instant::now();
                            let cs = if name == "invariants" { invariants(e) } else { catalog_verify(e, opt) };
                            (e.label.clone(), cs, t.elapsed().as_secs_f64())
                        })
                    })
                    .collect();
                hs.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
            });
            for (label, cs, secs) in results {
                report.timings.insert(label, secs);
                for c in cs {
                    report.push(c);
                }
            }
        }
        "dimensions" => {
            for e in dimension_entries(params)? {
                timed(&mut report, &e.label, || Ok(vec![dimension(&e)]))?;
            }
        }
        "twists" => timed(&mut report, "twists", || twists(params, opt))?,
        "jq-solver" => timed(&mut report, "jq-solver", || jq_solver(params))?,
        "classify" => timed(&mut report, "classify", || classify_suite(params, opt))?,
        _ => return usage(format!("unknown suite '{name}' (expected one of: {})", SUITES.join(", "))),
    }
    report.finish();
    Ok(report)
}
