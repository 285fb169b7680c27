//! Module fields L = F[u]/(uⁿ − v) over a single cyclic grouplike: either the normalized
//! action family or an obstruction certificate.
//!
//! The ansatz: g·u = ζ^{-w}u with ζ = ζ_M, each skew primitive x_k sends u into the
//! eigenspace forced by g x_k g^{-1} = ζ^{c_k} x_k, so x_k·u = r_k u^{e_k} with r_k ∈ F^×,
//! and F acts trivially. Relations are evaluated on u^d for 0 ≤ d < n and every
//! coefficient must vanish in F, where v is a non-power and the r_k are units.

mod lpoly;

pub use lpoly::LPoly;

use crate::action::catalog::term;
use crate::action::{ActionError, ActionSpec, Elem, GeneratorOperator, QPoly};
use crate::hopf::{catalog as hc, HopfError, HopfPresentation};
use crate::ncalg::GPoly;
use crate::scalars::{gauss_sum, ratfunc_is_nth_power, CycNum, RatFunc};
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("ansatz precondition unmet: {0}")]
    Precondition(String),
    #[error("family has no polynomial model: {0}")]
    NoModel(String),
    #[error("zero has no power test")]
    ZeroValue,
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// g·u = ζ_M^{-weight} u and x_k·u = r_k u^{e_k}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalActionAnsatz {
    pub n: u32,
    pub root: u32,
    pub weight: i64,
    pub names: Vec<String>,
    pub conj: Vec<i64>,
    pub exponents: Vec<u32>,
    #[serde(skip)]
    left: Vec<i64>,
    #[serde(skip)]
    right: Vec<i64>,
}

impl DiagonalActionAnsatz {
    pub fn new(h: &HopfPresentation) -> Result<DiagonalActionAnsatz, ClassifyError> {
        if h.group_rank() != 1 {
            return Err(ClassifyError::Precondition(format!("{} needs a single cyclic grouplike generator", h.name)));
        }
        let n = h.smash.group.order();
        let root = h.smash.m as i64;
        let ord = |c: i64| root / c.rem_euclid(root).gcd(&root);
        let conj: Vec<i64> = h.smash.conj.iter().map(|c| c[0].rem_euclid(root)).collect();
        let weight = match conj.first() {
            Some(&c) if ord(c) == n as i64 => c,
            _ => root / n as i64,
        };
        if ord(weight) != n as i64 {
            return Err(ClassifyError::Precondition(format!("no primitive eigenvalue of order {n} in Q(zeta_{root})")));
        }
        let mut exponents = Vec::new();
        for (k, &c) in conj.iter().enumerate() {
            let e = (0..n as i64).find(|j| (weight * (1 - j) - c).rem_euclid(root) == 0).ok_or_else(|| {
                ClassifyError::Precondition(format!("{} has no eigenspace for its image of u", h.skew[k].name))
            })?;
            exponents.push(e as u32);
        }
        Ok(DiagonalActionAnsatz {
            n: n as u32,
            root: root as u32,
            weight,
            names: h.skew.iter().map(|x| x.name.clone()).collect(),
            conj,
            exponents,
            left: h.skew.iter().map(|x| x.left[0]).collect(),
            right: h.skew.iter().map(|x| x.right[0]).collect(),
        })
    }

    /// Variable names of the coefficient ring: v, then r_{x_k}.
    pub fn var_names(&self) -> Vec<String> {
        std::iter::once("v".to_string()).chain(self.names.iter().map(|x| format!("r_{x}"))).collect()
    }

    fn nvars(&self) -> usize {
        1 + self.names.len()
    }

    pub fn describe(&self) -> Vec<String> {
        let mut out = vec![format!("L = F[u]/(u^{} - v), g.u = zeta{}^{} u", self.n, self.root, -self.weight)];
        for (k, x) in self.names.iter().enumerate() {
            out.push(format!("{x}.u = r_{x} u^{} (g {x} g^-1 = zeta{}^{} {x})", self.exponents[k], self.root, self.conj[k]));
        }
        out
    }
}

type LElem = Vec<LPoly>;

/// The action on L determined by the ansatz and current values of the r_k.
struct Engine<'a> {
    h: &'a HopfPresentation,
    a: &'a DiagonalActionAnsatz,
    vals: &'a [LPoly],
    /// x_k·u^d for d < n
    images: Vec<Vec<LElem>>,
}

impl<'a> Engine<'a> {
    fn new(h: &'a HopfPresentation, a: &'a DiagonalActionAnsatz, vals: &'a [LPoly]) -> Engine<'a> {
        let mut e = Engine { h, a, vals, images: Vec::new() };
        e.images = (0..a.names.len()).map(|k| e.skew_on_powers(k)).collect();
        e
    }

    fn zero(&self) -> LElem {
        vec![LPoly::zero(); self.a.n as usize]
    }

    /// c u^d with u^n = v.
    fn upow(&self, c: &LPoly, d: i64) -> LElem {
        let n = self.a.n as i64;
        let mut out = self.zero();
        out[d.rem_euclid(n) as usize] = c.shift_v(d.div_euclid(n));
        out
    }

    fn add(a: &LElem, b: &LElem) -> LElem {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    fn scale(&self, a: &LElem, c: &LPoly) -> LElem {
        a.iter().map(|x| x.mul(c)).collect()
    }

    fn chi(&self, g: i64, j: i64) -> CycNum {
        CycNum::zeta(self.a.root, -self.a.weight * g * j)
    }

    fn skew_on_powers(&self, k: usize) -> Vec<LElem> {
        let n = self.a.n as usize;
        let mut out = vec![self.zero()];
        for d in 1..n {
            // x(u·u^{d-1}) = (L·u)(x·u^{d-1}) + (x·u)(R·u^{d-1})
            let prev = &out[d - 1];
            let mut next = self.zero();
            for (j, c) in prev.iter().enumerate() {
                if !c.is_zero() {
                    next = Self::add(&next, &self.upow(&c.scale(&self.chi(self.a.left[k], 1)), j as i64 + 1));
                }
            }
            let tail = self.upow(&self.vals[k].scale(&self.chi(self.a.right[k], d as i64 - 1)), self.a.exponents[k] as i64 + d as i64 - 1);
            next = Self::add(&next, &tail);
            out.push(next);
        }
        out
    }

    fn skew(&self, k: usize, e: &LElem) -> LElem {
        let mut out = self.zero();
        for (j, c) in e.iter().enumerate() {
            if !c.is_zero() {
                out = Self::add(&out, &self.scale(&self.images[k][j], c));
            }
        }
        out
    }

    fn group(&self, g: i64, e: &LElem) -> LElem {
        e.iter().enumerate().map(|(j, c)| c.scale(&self.chi(g, j as i64))).collect()
    }

    fn apply(&self, p: &GPoly, e: &LElem) -> LElem {
        let mut out = self.zero();
        for ((w, g), c) in &p.terms {
            let mut v = e.clone();
            for &x in w.0.iter().rev() {
                v = self.skew(x as usize, &v);
            }
            v = self.group(g[0], &v);
            out = Self::add(&out, &v.iter().map(|x| x.scale(c)).collect());
        }
        out
    }

    /// Nonzero coefficients (relation, d, j, value) of every relation applied to every u^d.
    fn equations(&self) -> Vec<Equation> {
        let one = LPoly::constant(self.a.nvars(), CycNum::one());
        let mut out = Vec::new();
        for (ri, rel) in self.h.relations.iter().enumerate() {
            for d in 0..self.a.n {
                let res = self.apply(rel, &self.upow(&one, d as i64));
                for (j, c) in res.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.push(Equation { relation: ri, power: d, coefficient: j as u32, value: c });
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Equation {
    relation: usize,
    power: u32,
    coefficient: u32,
    value: LPoly,
}

/// What a single identity P = 0 in F says.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ObstructionKind {
    /// c · (unit monomial) = 0 with c ≠ 0; any r_k in the monomial would have to vanish.
    VanishingUnit { coefficient: String, forced_zero: Vec<String> },
    /// v^a = c · Π r_k^{b_k} makes v a d-th power with d | n, d > 1.
    PowerOfV { v_exponent: i64, r_exponents: Vec<i64>, constant: String, power: u64 },
    /// A nonzero polynomial in v alone vanishes, so v is a constant.
    AlgebraicV,
}

enum Reading {
    Contradiction(ObstructionKind),
    /// r_k = c · monomial in the other variables.
    Solve(usize, CycNum, Vec<i64>),
    Open,
}

fn read_equation(p: &LPoly, a: &DiagonalActionAnsatz) -> Reading {
    let p = p.strip_monomial();
    let terms: Vec<(&Vec<i64>, &CycNum)> = p.terms.iter().collect();
    if terms.len() == 1 {
        let c = terms[0].1;
        return Reading::Contradiction(ObstructionKind::VanishingUnit { coefficient: c.to_string(), forced_zero: Vec::new() });
    }
    if terms.iter().all(|(e, _)| e[1..].iter().all(|&x| x == 0)) {
        return Reading::Contradiction(ObstructionKind::AlgebraicV);
    }
    if terms.len() == 2 {
        let ((e1, c1), (e2, c2)) = (terms[0], terms[1]);
        // v^A r^B = c
        let diff: Vec<i64> = e1.iter().zip(e2).map(|(x, y)| x - y).collect();
        let c = c2.neg().div(c1).expect("nonzero coefficient");
        if let Some(k) = (1..diff.len()).find(|&k| diff[k].abs() == 1) {
            let s = diff[k];
            // r_k = (c · x^{-rest})^{s}
            let rest: Vec<i64> = diff.iter().enumerate().map(|(i, &x)| if i == k { 0 } else { -x * s }).collect();
            return Reading::Solve(k - 1, c.pow(s), rest);
        }
        let g = diff[1..].iter().fold(0i64, |acc, &x| acc.gcd(&x));
        let d = g.gcd(&(a.n as i64));
        if diff[0] != 0 && d > 1 && diff[0].gcd(&d) == 1 {
            return Reading::Contradiction(ObstructionKind::PowerOfV {
                v_exponent: diff[0],
                r_exponents: diff[1..].iter().map(|x| -x).collect(),
                constant: c.to_string(),
                power: d as u64,
            });
        }
    }
    Reading::Open
}

/// One step of the solution: a normalization u ↦ wu, or r_k solved from an identity.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub unknown: String,
    pub value: String,
    /// (relation index, d, j) of the identity that forced the value; None for the normalization.
    pub source: Option<(usize, u32, u32)>,
    #[serde(skip)]
    k: usize,
    #[serde(skip)]
    solution: (CycNum, Vec<i64>),
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionCertificate {
    pub ansatz: DiagonalActionAnsatz,
    pub steps: Vec<Step>,
    pub relation: String,
    pub relation_index: usize,
    /// The relation applied to u^power; the identity is its u^coefficient part.
    pub power: u32,
    pub coefficient: u32,
    pub identity: String,
    pub kind: ObstructionKind,
    pub trace: Vec<String>,
    #[serde(skip)]
    identity_poly: LPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionFamily {
    pub ansatz: DiagonalActionAnsatz,
    pub steps: Vec<Step>,
    /// "x_k.u = …" after normalization and solving.
    pub images: Vec<String>,
    pub free: Vec<String>,
    #[serde(skip)]
    values: Vec<LPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub enum ClassifyOutcome {
    Feasible(ActionFamily),
    Infeasible(ObstructionCertificate),
    /// Identities the solver could not decide within the ansatz.
    Undecided { ansatz: DiagonalActionAnsatz, remaining: Vec<String> },
}

impl ClassifyOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ClassifyOutcome::Feasible(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, ClassifyOutcome::Infeasible(_))
    }

    pub fn certificate(&self) -> Option<&ObstructionCertificate> {
        match self {
            ClassifyOutcome::Infeasible(c) => Some(c),
            _ => None,
        }
    }
}

fn initial_values(a: &DiagonalActionAnsatz) -> Vec<LPoly> {
    (0..a.names.len()).map(|k| LPoly::var(a.nvars(), k + 1)).collect()
}

fn apply_step(vals: &mut [LPoly], k: usize, c: &CycNum, e: &[i64]) {
    for v in vals.iter_mut() {
        *v = v.substitute(k + 1, c, e);
    }
}

fn monomial_value(nvars: usize, c: &CycNum, e: &[i64]) -> LPoly {
    let mut e = e.to_vec();
    e.resize(nvars, 0);
    LPoly::term(c.clone(), e)
}

fn forced_zero(p: &LPoly, a: &DiagonalActionAnsatz) -> Vec<String> {
    let names = a.var_names();
    let e = p.terms.keys().next().cloned().unwrap_or_default();
    (1..e.len()).filter(|&i| e[i] != 0).map(|i| names[i].clone()).collect()
}

/// Evaluate the relations of H on the cyclic ansatz and solve.
pub fn classify_cyclic(h: &HopfPresentation) -> Result<ClassifyOutcome, ClassifyError> {
    let a = DiagonalActionAnsatz::new(h)?;
    let names = a.var_names();
    let mut vals = initial_values(&a);
    let mut steps = Vec::new();
    let mut trace = a.describe();
    // u ↦ wu rescales r_k by w^{1−e_k}
    if let Some(k) = a.exponents.iter().position(|&e| e == 0) {
        let one = (CycNum::one(), vec![0; a.nvars()]);
        apply_step(&mut vals, k, &one.0, &one.1);
        trace.push(format!("replace u by r_{0}^-1 u so that {0}.u = 1", a.names[k]));
        steps.push(Step { unknown: names[k + 1].clone(), value: "1".into(), source: None, k, solution: one });
    }
    loop {
        let eqs = Engine::new(h, &a, &vals).equations();
        let mut solve = None;
        let mut open = Vec::new();
        for eq in &eqs {
            let stripped = eq.value.strip_monomial();
            match read_equation(&eq.value, &a) {
                Reading::Contradiction(kind) => {
                    let kind = match kind {
                        ObstructionKind::VanishingUnit { coefficient, .. } => {
                            ObstructionKind::VanishingUnit { coefficient, forced_zero: forced_zero(&eq.value, &a) }
                        }
                        k => k,
                    };
                    let relation = h.fmt_poly(&h.relations[eq.relation]);
                    let identity = format!("{} = 0", eq.value.fmt_with(&names));
                    trace.push(format!("({relation}).u^{}: coefficient of u^{} gives {identity}", eq.power, eq.coefficient));
                    trace.push(explain(&kind, &stripped, &names));
                    return Ok(ClassifyOutcome::Infeasible(ObstructionCertificate {
                        ansatz: a,
                        steps,
                        relation,
                        relation_index: eq.relation,
                        power: eq.power,
                        coefficient: eq.coefficient,
                        identity,
                        kind,
                        trace,
                        identity_poly: eq.value.clone(),
                    }));
                }
                Reading::Solve(k, c, e) => {
                    if solve.is_none() {
                        solve = Some((eq.clone(), k, c, e));
                    }
                }
                Reading::Open => open.push(eq.value.fmt_with(&names)),
            }
        }
        match solve {
            Some((eq, k, c, e)) => {
                let value = monomial_value(a.nvars(), &c, &e);
                trace.push(format!(
                    "({}).u^{}: coefficient of u^{} gives {} = 0, so {} = {}",
                    h.fmt_poly(&h.relations[eq.relation]),
                    eq.power,
                    eq.coefficient,
                    eq.value.fmt_with(&names),
                    names[k + 1],
                    value.fmt_with(&names)
                ));
                apply_step(&mut vals, k, &c, &e);
                steps.push(Step {
                    unknown: names[k + 1].clone(),
                    value: value.fmt_with(&names),
                    source: Some((eq.relation, eq.power, eq.coefficient)),
                    k,
                    solution: (c, e),
                });
            }
            None if open.is_empty() => {
                let images = (0..a.names.len())
                    .map(|k| format!("{}.u = ({}) u^{}", a.names[k], vals[k].fmt_with(&names), a.exponents[k]))
                    .collect();
                let free = (0..a.names.len())
                    .filter(|&k| vals.iter().any(|v| v.terms.keys().any(|e| e[k + 1] != 0)))
                    .map(|k| names[k + 1].clone())
                    .collect();
                return Ok(ClassifyOutcome::Feasible(ActionFamily { ansatz: a, steps, images, free, values: vals }));
            }
            None => return Ok(ClassifyOutcome::Undecided { ansatz: a, remaining: open }),
        }
    }
}

fn explain(kind: &ObstructionKind, p: &LPoly, names: &[String]) -> String {
    match kind {
        ObstructionKind::VanishingUnit { coefficient, forced_zero } if forced_zero.is_empty() => {
            format!("the nonzero scalar {coefficient} times a unit of F cannot vanish")
        }
        ObstructionKind::VanishingUnit { coefficient, forced_zero } => format!(
            "{coefficient} != 0, so {} = 0 and that skew primitive acts by zero on L (not inner faithful)",
            forced_zero.join(", ")
        ),
        ObstructionKind::PowerOfV { v_exponent, power, .. } => format!(
            "{} = 0 puts v^{v_exponent} in (F^x)^{power}; since gcd({v_exponent}, {power}) = 1 the same holds for v, so u^n - v is reducible",
            p.fmt_with(names)
        ),
        ObstructionKind::AlgebraicV => format!("{} = 0 makes v algebraic over k, hence an n-th power", p.fmt_with(names)),
    }
}

/// Replay the steps and the final identity from scratch.
pub fn verify_certificate(h: &HopfPresentation, c: &ObstructionCertificate) -> Result<bool, ClassifyError> {
    let a = DiagonalActionAnsatz::new(h)?;
    if a != c.ansatz {
        return Ok(false);
    }
    let mut vals = initial_values(&a);
    for s in &c.steps {
        if let Some(src) = s.source {
            let eqs = Engine::new(h, &a, &vals).equations();
            let Some(eq) = eqs.iter().find(|e| (e.relation, e.power, e.coefficient) == src) else { return Ok(false) };
            // the solved value must annihilate the identity it came from
            let after = eq.value.substitute(s.k + 1, &s.solution.0, &s.solution.1);
            if !after.is_zero() {
                return Ok(false);
            }
        }
        apply_step(&mut vals, s.k, &s.solution.0, &s.solution.1);
    }
    let eqs = Engine::new(h, &a, &vals).equations();
    let Some(eq) = eqs.iter().find(|e| (e.relation, e.power, e.coefficient) == (c.relation_index, c.power, c.coefficient)) else {
        return Ok(false);
    };
    if eq.value != c.identity_poly || eq.value.is_zero() {
        return Ok(false);
    }
    Ok(match (read_equation(&eq.value, &a), &c.kind) {
        (Reading::Contradiction(ObstructionKind::VanishingUnit { coefficient, .. }), ObstructionKind::VanishingUnit { coefficient: c2, forced_zero }) => {
            coefficient == *c2 && *forced_zero == self::forced_zero(&eq.value, &a)
        }
        (Reading::Contradiction(k), k2) => k == *k2,
        _ => false,
    })
}

impl ActionFamily {
    /// The family on k[z] with u = z, v = z^n, the i-th free unknown set to v^i.
    pub fn materialize(&self, h: &HopfPresentation) -> Result<ActionSpec<QPoly>, ClassifyError> {
        let a = &self.ansatz;
        let nv = a.nvars();
        let names = a.var_names();
        let free: Vec<usize> = (1..nv).filter(|i| self.free.contains(&names[*i])).collect();
        let mut ops = vec![GeneratorOperator::Automorphism { images: vec![term(CycNum::zeta(a.root, -a.weight), &[1])] }];
        for (k, val) in self.values.iter().enumerate() {
            let mut img = Elem::new();
            for (e, c) in &val.terms {
                let mut vdeg = e[0];
                for (t, &i) in free.iter().enumerate() {
                    vdeg += e[i] * (t as i64 + 1);
                }
                let zdeg = vdeg * a.n as i64 + a.exponents[k] as i64;
                if zdeg < 0 {
                    return Err(ClassifyError::NoModel(format!("{} needs a negative power of z", a.names[k])));
                }
                let old = img.remove(&vec![zdeg]).unwrap_or_else(CycNum::zero);
                let s = old.add(c);
                if !s.is_zero() {
                    img.insert(vec![zdeg], s);
                }
            }
            let x = &h.skew[k];
            ops.push(GeneratorOperator::SkewDerivation { left: x.left.clone(), right: x.right.clone(), images: vec![img] });
        }
        Ok(ActionSpec::new(h.clone(), QPoly::commutative(&["z"]), ops)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BookVerdict {
    pub n: u32,
    pub p: u32,
    /// 1 + ζ^{-1} + … + ζ^{-(n−p)}, which must vanish for an action to exist.
    pub gauss_sum: String,
    pub gauss_sum_vanishes: bool,
    pub outcome: ClassifyOutcome,
}

impl BookVerdict {
    pub fn is_feasible(&self) -> bool {
        self.outcome.is_feasible()
    }
}

/// classify_cyclic on h(ζ_n, p) together with the scalar certificate.
pub fn book_feasibility(n: u32, p: u32) -> Result<BookVerdict, ClassifyError> {
    let h = hc::book(n, p)?;
    let g = gauss_sum((n - p + 1) as i64, &CycNum::zeta(n, -1));
    Ok(BookVerdict { n, p, gauss_sum: g.to_string(), gauss_sum_vanishes: g.is_zero(), outcome: classify_cyclic(&h)? })
}

/// Whether t^n − v is irreducible over the field of v: v is no n′-th power for n′ | n, n′ > 1.
pub fn binomial_irreducible(n: u32, v: &RatFunc) -> Result<bool, ClassifyError> {
    for d in 2..=n {
        if n % d == 0 && ratfunc_is_nth_power(v, d).map_err(|_| ClassifyError::ZeroValue)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taft_is_feasible_with_unit_image() {
        let out = classify_cyclic(&hc::taft(4).unwrap()).unwrap();
        let ClassifyOutcome::Feasible(f) = out else { panic!("{out:?}") };
        assert_eq!(f.images, vec!["x.u = (1) u^0".to_string()]);
        assert!(f.free.is_empty());
    }

    #[test]
    fn binomials() {
        let w = RatFunc::var("w");
        assert!(binomial_irreducible(4, &w).unwrap());
        assert!(!binomial_irreducible(4, &w.mul(&w)).unwrap());
        assert!(!binomial_irreducible(6, &w.mul(&w).mul(&w)).unwrap());
    }
}
