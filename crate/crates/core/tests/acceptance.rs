//! Acceptance criteria. Each test prints one line per check and fails if any line fails.
//! All comparisons are exact.

use ptdhopf::action::catalog::{taft_action, CatalogAction};
use ptdhopf::action::{adjoint_action, invariant_subspace, localize_action, verify_all, Elem};
use ptdhopf::classify::{classify_cyclic, verify_certificate};
use ptdhopf::hopf::catalog as hc;
use ptdhopf::hopf::CartanData;
use ptdhopf::scalars::{gauss_sum, CycNum};
use ptdhopf::twist::catalog::{kq_to_sl2, twisted_table, uprime_to_twisted_gl2};
use ptdhopf::twist::{jplus, jq_exists, twist_algebra, CharBasis, Cocycle, FinAbGroup, JqOutcome};
use ptdhopf::action::QPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const TOL: &str = "tolerance: exact";

struct Lines {
    crit: u32,
    failed: Vec<String>,
}

impl Lines {
    fn new(crit: u32) -> Lines {
        Lines { crit, failed: Vec::new() }
    }

    fn line(&mut self, label: &str, ok: bool, detail: &str) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {} {verdict} {label} ({TOL}) {detail}", self.crit);
        if !ok {
            self.failed.push(label.to_string());
        }
    }

    fn finish(self) {
        assert!(self.failed.is_empty(), "criterion {} failed lines: {:?}", self.crit, self.failed);
    }
}

fn table() -> Vec<CatalogAction> {
    let mut rows = ptdhopf::action::catalog::example_table().unwrap();
    rows.extend(twisted_table().unwrap());
    rows
}

#[test]
fn criterion_1_example_table() {
    let mut out = Lines::new(1);
    let start = Instant::now();
    let rows = table();
    let reports: Vec<_> = std::thread::scope(|s| {
        let hs: Vec<_> = rows.iter().map(|r| s.spawn(move || verify_all(&r.action, 6))).collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for (row, rep) in rows.iter().zip(reports) {
        match rep {
            Ok(r) => {
                out.line(&format!("{} hopf relations", row.label), r.hopf_relations.passed(), &format!("{} checked", r.hopf_relations.checked));
                out.line(&format!("{} target relations", row.label), r.target_relations.passed(), &format!("{} checked", r.target_relations.checked));
                out.line(&format!("{} module algebra", row.label), r.module_algebra.passed(), &format!("{} checked", r.module_algebra.checked));
                out.line(&format!("{} inner faithful", row.label), r.inner_faithful.passed(), &format!("{:?}", r.inner_faithful.dependent));
            }
            Err(e) => out.line(&row.label, false, &e.to_string()),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    out.line("runtime under 300 s", secs < 300.0, &format!("{secs:.1} s"));
    out.finish();
}

#[test]
fn criterion_2_non_example_table() {
    let mut out = Lines::new(2);
    let mut cases = Vec::new();
    for (n, m) in [(4, 2), (6, 3), (9, 3)] {
        for a in [0, 1] {
            cases.push((format!("T({n},{m},{a})"), hc::gen_taft(n, m, CycNum::from_int(a)).unwrap()));
        }
    }
    for (n, p) in [(5, 2), (5, 3), (7, 2)] {
        cases.push((format!("h(zeta_{n},{p})"), hc::book(n, p).unwrap()));
    }
    for m in [3, 5] {
        cases.push((format!("H_lambda=0, m={m}"), hc::uq_sl2(m, CycNum::zero()).unwrap()));
    }
    for (label, h) in cases {
        match classify_cyclic(&h) {
            Ok(o) => {
                let cert = o.certificate();
                let valid = cert.is_some_and(|c| verify_certificate(&h, c).unwrap_or(false));
                let detail = cert.map_or("no certificate".to_string(), |c| c.identity.clone());
                out.line(&format!("{label} infeasible with valid certificate"), o.is_infeasible() && valid, &detail);
            }
            Err(e) => out.line(&label, false, &e.to_string()),
        }
    }
    out.finish();
}

#[test]
fn criterion_3_dimensions() {
    let mut out = Lines::new(3);
    let mut check = |label: String, h: ptdhopf::hopf::HopfPresentation, want: u64, scale: u64| {
        let d = h.truncated_dimension();
        let got = d.dim / scale;
        out.line(&label, d.stabilized && got == want, &format!("computed {got} (stabilized: {}), expected {want}", d.stabilized));
    };
    for n in 2..=6u32 {
        check(format!("T({n}) = n^2"), hc::taft(n).unwrap(), (n * n) as u64, 1);
    }
    for n in 1..=4u32 {
        check(format!("E({n}) = 2^(n+1)"), hc::nichols_e(n).unwrap(), 1 << (n + 1), 1);
    }
    for (n, m) in [(4u32, 2u32), (6, 3), (9, 3)] {
        for a in [0, 1] {
            check(format!("T({n},{m},{a}) = n^2 m"), hc::gen_taft(n, m, CycNum::from_int(a)).unwrap(), (n * n * m) as u64, 1);
        }
    }
    for (n, p) in [(2u32, 1u32), (3, 1), (4, 1), (5, 1), (5, 2), (5, 3), (7, 2)] {
        check(format!("h(zeta_{n},{p}) = n^3"), hc::book(n, p).unwrap(), (n * n * n) as u64, 1);
    }
    let h = hc::h81().unwrap();
    let g = h.group_order();
    check("H81 {x,y}-part = 27".into(), h.clone(), 27, g);
    check("H81 = 81".into(), h, 81, 1);
    check("u_q(sl2), m=3 = m^3".into(), hc::uq_sl2(3, CycNum::one()).unwrap(), 27, 1);
    out.finish();
}

fn unit_chars(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect()
}

#[test]
fn criterion_4_twist_round_trips() {
    let mut out = Lines::new(4);
    for n in [2, 3] {
        for m in [3, 5] {
            let aq = QPoly::quantum_plane(n, &CycNum::zeta(m, 1));
            let j = jplus(n, m).unwrap();
            let inv = twist_algebra(&aq, &unit_chars(n), &j.inverse());
            out.line(&format!("n={n} m={m}: A_q twisted by (J+)^-1 is commutative"), inv.is_commutative(), &format!("z1z2 = ({}) z2z1", inv.c(0, 1)));
            let plus = twist_algebra(&aq, &unit_chars(n), &j);
            println!("criterion 4 note n={n} m={m}: A_q twisted by J+ commutative = {}", plus.is_commutative());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for m in [3u32, 5] {
        let g = FinAbGroup::cyclic_power(m as u64, 3);
        let a = QPoly::quantum_plane(3, &CycNum::zeta(m, 1));
        let mut ok = 0;
        for _ in 0..20 {
            let b: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0..m as i64)).collect()).collect();
            let s = Cocycle::bimultiplicative(&g, m, b).unwrap();
            let there = twist_algebra(&a, &unit_chars(3), &s);
            let back = twist_algebra(&there, &unit_chars(3), &s.inverse());
            ok += (back == a) as usize;
        }
        out.line(&format!("m={m}: (A_J)_(J^-1) = A for 20 random bicharacters on (Z/m)^3"), ok == 20, &format!("{ok}/20"));
    }
    out.finish();
}

/// b(α_i, α_j) targets: d_i a_ij along each oriented edge i → j, antisymmetric.
fn jq_targets(c: &CartanData) -> Vec<Vec<i64>> {
    let r = c.rank();
    let mut s = vec![vec![0; r]; r];
    for (i, j) in c.oriented_edges() {
        s[i][j] = c.d[i] * c.a[i][j];
        s[j][i] = -s[i][j];
    }
    s
}

/// Does an alternating β on the fundamental coordinates give b(α_i, α_j) = q^{s_ij}?
fn beta_works(a: &[Vec<i64>], beta: &[Vec<i64>], s: &[Vec<i64>], m: i64) -> bool {
    let r = a.len();
    (0..r).all(|i| {
        (0..r).all(|j| {
            let mut e = 0;
            for k in 0..r {
                for l in 0..r {
                    e += a[k][i] * beta[k][l] * a[l][j];
                }
            }
            (e - s[i][j]).rem_euclid(m) == 0
        })
    })
}

/// Exhaustive search over alternating β mod m.
fn brute_force_solvable(a: &[Vec<i64>], s: &[Vec<i64>], m: i64) -> bool {
    let r = a.len();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|k| (k + 1..r).map(move |l| (k, l))).collect();
    let total = (m as u64).pow(pairs.len() as u32);
    (0..total).any(|mut code| {
        let mut beta = vec![vec![0; r]; r];
        for &(k, l) in &pairs {
            let v = (code % m as u64) as i64;
            code /= m as u64;
            beta[k][l] = v;
            beta[l][k] = -v;
        }
        beta_works(a, &beta, s, m)
    })
}

#[test]
fn criterion_5_jq_grid() {
    let mut out = Lines::new(5);
    for n in 2..=5usize {
        let c = CartanData::type_a(n - 1);
        let r = c.rank();
        let a: Vec<Vec<i64>> = (0..r).map(|k| (0..r).map(|j| c.d[k] * c.a[k][j]).collect()).collect();
        let s = jq_targets(&c);
        for m in (3..=15u32).step_by(2) {
            let mm = m as i64;
            let expect = num_integer::gcd(m, n as u32) == 1;
            let std = jq_exists(&c, m, CharBasis::Standard).unwrap();
            // independent confirmation of the outcome
            let confirmed = match &std {
                JqOutcome::Solvable { b, .. } => beta_works(&a, b, &s, mm),
                JqOutcome::Infeasible { .. } if (m as u64).pow((r * (r - 1) / 2) as u32) <= 200_000 => !brute_force_solvable(&a, &s, mm),
                JqOutcome::Infeasible { lambda, residue, .. } => {
                    // λ combines the equations to 0 on the unknowns and a nonzero residue
                    *residue != 0 && !lambda.is_empty()
                }
            };
            out.line(
                &format!("A{} m={m}: standard basis solvable <=> gcd(m,{n}) = 1", n - 1),
                std.is_solvable() == expect && confirmed,
                &format!("solvable = {}, independently confirmed = {confirmed}", std.is_solvable()),
            );
            let adj = jq_exists(&c, m, CharBasis::Adjoint).unwrap();
            let ok = match &adj {
                JqOutcome::Solvable { cocycle, unique, .. } => {
                    let bc = cocycle.bicharacter().unwrap();
                    let values = (0..r).all(|i| {
                        (0..r).all(|j| {
                            let (ei, ej) = (unit(r, i), unit(r, j));
                            (bc.exponent(&ei, &ej) - s[i][j]).rem_euclid(mm) == 0
                        })
                    });
                    *unique && values
                }
                _ => false,
            };
            out.line(&format!("A{} m={m}: adjoint basis solvable with the unique orientation cocycle", n - 1), ok, "");
        }
    }
    out.finish();
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

#[test]
fn criterion_6_invariants() {
    let mut out = Lines::new(6);
    for row in table() {
        let den = row.denominators.clone().expect("every table row has a field model");
        match localize_action(&row.action, &den).and_then(|l| invariant_subspace(&l)) {
            Ok(r) => {
                let ok = r.coincide && r.is_base_field && r.dim_over_f as u64 == r.group_order;
                out.line(
                    &format!("{} invariants = grouplike-fixed = F, [L:F] = |G|", row.label),
                    ok,
                    &format!("dim L^H = {}, dim L^G = {}, [L:F] = {}, |G| = {}", r.invariants.len(), r.grouplike_fixed.len(), r.dim_over_f, r.group_order),
                );
            }
            Err(e) => out.line(&row.label, false, &e.to_string()),
        }
    }
    out.finish();
}

#[test]
fn criterion_7_isomorphisms() {
    let mut out = Lines::new(7);
    for m in [3, 5] {
        for case in [kq_to_sl2(m).unwrap(), uprime_to_twisted_gl2(m).unwrap()] {
            let r = case.check();
            out.line(&case.label, r.passed(), &format!("relations {:?}, coproducts {:?}, dims {:?}", r.relations, r.coproducts, r.dims));
        }
    }
    out.finish();
}

fn mono(k: Vec<i64>) -> Elem<CycNum> {
    Elem::from([(k, CycNum::one())])
}

#[test]
fn criterion_8_action_formulas() {
    let mut out = Lines::new(8);
    for n in 2..=6u32 {
        let a = taft_action(n).unwrap();
        let ev = a.evaluator();
        let x = a.hopf.x(0);
        let zinv = CycNum::zeta(n, -1);
        let mut ok = true;
        for d in 1..=12i64 {
            let got = ev.apply(&x, &mono(vec![d])).unwrap();
            let c = gauss_sum(d, &zinv);
            let want = if c.is_zero() { Elem::new() } else { Elem::from([(vec![d - 1], c)]) };
            ok &= got == want;
        }
        out.line(&format!("T({n}): x.z^d = gauss_sum(d, zeta^-1) z^(d-1), d <= 12"), ok, "");
    }
    let b = hc::adjoint_borel(&CartanData::type_a(2), 3).unwrap();
    let a = adjoint_action(&b).unwrap();
    let ev = a.evaluator();
    let s = &b.smash;
    let q = s.zeta(1);
    let e12 = s.mul(&s.x(0), &s.x(1)).sub(&s.mul(&s.x(1), &s.x(0)).scale(&q.inv().unwrap()));
    for (label, p) in [("e1^3", s.pow(&s.x(0), 3)), ("e2^3", s.pow(&s.x(1), 3)), ("e12^3", s.pow(&e12, 3))] {
        let ok = (0..2).all(|i| ev.apply(&p, &mono(unit(2, i))).unwrap().is_empty());
        out.line(&format!("A2, m=3: {label} annihilates the generators of A_(q,Q)"), ok, "");
    }
    out.finish();
}
