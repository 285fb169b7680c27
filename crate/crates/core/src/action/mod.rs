//! Hopf actions on q-polynomial algebras and on finite field models.
//!
//! Grouplike generators act by algebra automorphisms given on the target generators;
//! a (g, g′)-skew primitive x acts by the skew derivation x·(ab) = (g·a)(x·b) + (x·a)(g′·b).
//! Every check below works on explicit monomials, so failures come with witnesses.

pub mod catalog;
mod target;

pub use target::{elem_add, elem_scale, elem_sub, Elem, ExtFieldModel, Letter, QPoly, Target, TargetRelation};

use crate::hopf::{central_quotient, tensor_product, HopfError, HopfPresentation};
use crate::ncalg::linalg::{same_span, sparse_kernel, Echelon, SparseVec};
use crate::ncalg::{GPoly, GroupLattice};
use crate::scalars::{CycNum, Field, RatFunc};
use serde::Serialize;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use target::add_into;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ActionError {
    #[error("variable {0} is not invertible in the target")]
    NotInvertible(String),
    #[error("image {0} of a grouplike is not an invertible monomial")]
    NonMonomial(String),
    #[error("operators do not match the presentation: {0}")]
    Shape(String),
    #[error("target generator {0} is not a common eigenvector of the grouplikes")]
    NotEigenvector(String),
    #[error("denominator {0} is not invariant")]
    NotInvariant(String),
    #[error("target algebra is not commutative")]
    NotCommutative,
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

#[derive(Clone, Debug)]
pub enum GeneratorOperator<S> {
    Automorphism { images: Vec<Elem<S>> },
    SkewDerivation { left: Vec<i64>, right: Vec<i64>, images: Vec<Elem<S>> },
}

impl<S> GeneratorOperator<S> {
    pub fn images(&self) -> &[Elem<S>] {
        match self {
            GeneratorOperator::Automorphism { images } => images,
            GeneratorOperator::SkewDerivation { images, .. } => images,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ActionSpec<T: Target> {
    pub hopf: HopfPresentation,
    pub target: T,
    /// Grouplike generators first, then skew generators, as in `hopf.generators()`.
    pub ops: Vec<GeneratorOperator<T::S>>,
}

impl<T: Target> ActionSpec<T> {
    pub fn new(hopf: HopfPresentation, target: T, ops: Vec<GeneratorOperator<T::S>>) -> Result<ActionSpec<T>, ActionError> {
        let r = hopf.group_rank();
        if ops.len() != r + hopf.skew.len() {
            return Err(ActionError::Shape(format!("{} operators for {} generators", ops.len(), r + hopf.skew.len())));
        }
        for (i, op) in ops.iter().enumerate() {
            if op.images().len() != target.ngens() {
                return Err(ActionError::Shape(format!("operator {i} has {} images", op.images().len())));
            }
            match op {
                GeneratorOperator::Automorphism { .. } if i < r => {}
                GeneratorOperator::SkewDerivation { left, right, .. } if i >= r => {
                    let x = &hopf.skew[i - r];
                    let g = &hopf.smash.group;
                    if g.reduce(left) != x.left || g.reduce(right) != x.right {
                        return Err(ActionError::Shape(format!("skew tags of {} differ from the presentation", x.name)));
                    }
                }
                _ => return Err(ActionError::Shape(format!("operator {i} has the wrong kind"))),
            }
        }
        Ok(ActionSpec { hopf, target, ops })
    }

    pub fn evaluator(&self) -> Evaluator<'_, T> {
        Evaluator::new(self)
    }

    /// Generator names in operator order.
    pub fn generator_names(&self) -> Vec<String> {
        self.hopf.symbol_names()
    }
}

type Res<T> = Result<T, ActionError>;

/// Memoized evaluation of generator operators on monomials.
pub struct Evaluator<'a, T: Target> {
    a: &'a ActionSpec<T>,
    skew_cache: RefCell<HashMap<(usize, Vec<i64>), Elem<T::S>>>,
    group_cache: RefCell<HashMap<(Vec<i64>, Vec<i64>), Elem<T::S>>>,
}

impl<'a, T: Target> Evaluator<'a, T> {
    pub fn new(a: &'a ActionSpec<T>) -> Self {
        Evaluator { a, skew_cache: RefCell::new(HashMap::new()), group_cache: RefCell::new(HashMap::new()) }
    }

    fn t(&self) -> &T {
        &self.a.target
    }

    fn rank(&self) -> usize {
        self.a.hopf.group_rank()
    }

    /// Inverse of a single-term element.
    fn invert(&self, e: &Elem<T::S>) -> Res<Elem<T::S>> {
        let t = self.t();
        if e.len() != 1 {
            return Err(ActionError::NonMonomial(t.fmt_elem(e)));
        }
        let (k, c) = e.iter().next().unwrap();
        let neg: Vec<i64> = k.iter().map(|x| -x).collect();
        for (i, &a) in neg.iter().enumerate() {
            if a < 0 && !t.invertible(i) {
                return Err(ActionError::NotInvertible(t.var_names()[i].clone()));
            }
        }
        let (d, one) = t.mul_keys(k, &neg);
        debug_assert!(one.iter().all(|&x| x == 0));
        let mut inv = Elem::new();
        let (s, key) = t.mul_keys(&neg, &t.one_key());
        inv.insert(key, c.mul(&d).inv().unwrap().mul(&s));
        Ok(inv)
    }

    fn check_letter(&self, l: Letter) -> Res<()> {
        if l.1 < 0 && !self.t().invertible(l.0) {
            return Err(ActionError::NotInvertible(self.t().var_names()[l.0].clone()));
        }
        Ok(())
    }

    /// g^a applied to a letter, composing generator automorphisms literally.
    fn group_letter(&self, g: &[i64], l: Letter) -> Res<Elem<T::S>> {
        self.check_letter(l)?;
        let reduced;
        let g = if g.iter().any(|&k| k < 0) {
            reduced = self.a.hopf.smash.group.reduce(g);
            &reduced[..]
        } else {
            g
        };
        let mut e = self.t().gen(l.0);
        for (j, &k) in g.iter().enumerate() {
            for _ in 0..k {
                let GeneratorOperator::Automorphism { images } = &self.a.ops[j] else { unreachable!() };
                e = self.subst(images, &e)?;
            }
        }
        if l.1 < 0 {
            e = self.invert(&e)?;
        }
        Ok(e)
    }

    /// The automorphism with the given generator images applied to an element.
    fn subst(&self, images: &[Elem<T::S>], e: &Elem<T::S>) -> Res<Elem<T::S>> {
        let t = self.t();
        let mut out = Elem::new();
        for (k, c) in e {
            let mut acc = t.one();
            let mut rest = k.clone();
            while let Some((l, r)) = t.split_first(&rest) {
                let img = if l.1 > 0 { images[l.0].clone() } else { self.invert(&images[l.0])? };
                acc = t.mul(&acc, &img);
                rest = r;
            }
            for (kk, cc) in acc {
                add_into(&mut out, kk, cc.mul(c));
            }
        }
        Ok(out)
    }

    /// g^a on a monomial; `g` must have nonnegative entries.
    pub fn group_key(&self, g: &[i64], key: &[i64]) -> Res<Elem<T::S>> {
        let ck = (g.to_vec(), key.to_vec());
        if let Some(e) = self.group_cache.borrow().get(&ck) {
            return Ok(e.clone());
        }
        let t = self.t();
        let out = match t.split_first(key) {
            None => t.one(),
            Some((l, rest)) => t.mul(&self.group_letter(g, l)?, &self.group_key(g, &rest)?),
        };
        self.group_cache.borrow_mut().insert(ck, out.clone());
        Ok(out)
    }

    pub fn group(&self, g: &[i64], e: &Elem<T::S>) -> Res<Elem<T::S>> {
        let mut out = Elem::new();
        for (k, c) in e {
            for (kk, cc) in self.group_key(g, k)? {
                add_into(&mut out, kk, cc.mul(c));
            }
        }
        Ok(out)
    }

    fn skew_parts(&self, x: usize) -> (&[i64], &[i64], &[Elem<T::S>]) {
        let GeneratorOperator::SkewDerivation { left, right, images } = &self.a.ops[self.rank() + x] else { unreachable!() };
        (left, right, images)
    }

    fn skew_letter(&self, x: usize, l: Letter) -> Res<Elem<T::S>> {
        self.check_letter(l)?;
        let (left, right, images) = self.skew_parts(x);
        if l.1 > 0 {
            return Ok(images[l.0].clone());
        }
        // 0 = x·(z z^{-1}) = (g·z)(x·z^{-1}) + (x·z)(g′·z^{-1})
        let t = self.t();
        let gz = self.group_letter(left, (l.0, 1))?;
        let tail = t.mul(&images[l.0], &self.group_letter(right, l)?);
        Ok(elem_scale(&t.mul(&self.invert(&gz)?, &tail), &T::S::one().neg()))
    }

    /// Skew generator x (0-based among skew generators) on a monomial.
    pub fn skew_key(&self, x: usize, key: &[i64]) -> Res<Elem<T::S>> {
        let ck = (x, key.to_vec());
        if let Some(e) = self.skew_cache.borrow().get(&ck) {
            return Ok(e.clone());
        }
        let t = self.t();
        let out = match t.split_first(key) {
            None => Elem::new(),
            Some((l, rest)) => {
                let (left, right, _) = self.skew_parts(x);
                let a = t.mul(&self.group_letter(left, l)?, &self.skew_key(x, &rest)?);
                let b = t.mul(&self.skew_letter(x, l)?, &self.group_key(right, &rest)?);
                elem_add(&a, &b)
            }
        };
        self.skew_cache.borrow_mut().insert(ck, out.clone());
        Ok(out)
    }

    pub fn skew(&self, x: usize, e: &Elem<T::S>) -> Res<Elem<T::S>> {
        let mut out = Elem::new();
        for (k, c) in e {
            for (kk, cc) in self.skew_key(x, k)? {
                add_into(&mut out, kk, cc.mul(c));
            }
        }
        Ok(out)
    }

    /// Operator of generator `i` in `ops` order.
    pub fn op(&self, i: usize, e: &Elem<T::S>) -> Res<Elem<T::S>> {
        let r = self.rank();
        if i < r {
            let mut g = vec![0; r];
            g[i] = 1;
            self.group(&g, e)
        } else {
            self.skew(i - r, e)
        }
    }

    /// h·a for h in the group layer: g·x₁⋯x_k acts as g ∘ x₁ ∘ ⋯ ∘ x_k.
    pub fn apply(&self, h: &GPoly, a: &Elem<T::S>) -> Res<Elem<T::S>> {
        let mut out = Elem::new();
        for ((w, g), c) in &h.terms {
            let mut v = a.clone();
            for &x in w.0.iter().rev() {
                v = self.skew(x as usize, &v)?;
                if v.is_empty() {
                    break;
                }
            }
            if v.is_empty() {
                continue;
            }
            v = self.group(g, &v)?;
            let s = T::S::from_cyc(c);
            for (k, x) in v {
                add_into(&mut out, k, x.mul(&s));
            }
        }
        Ok(out)
    }

    /// Generator `i` applied to a word in the free algebra on the target letters.
    fn op_word(&self, i: usize, w: &[Letter]) -> Res<Elem<T::S>> {
        let t = self.t();
        let r = self.rank();
        if i < r {
            let mut g = vec![0; r];
            g[i] = 1;
            let mut acc = t.one();
            for &l in w {
                acc = t.mul(&acc, &self.group_letter(&g, l)?);
            }
            return Ok(acc);
        }
        let x = i - r;
        let Some((&l, rest)) = w.split_first() else { return Ok(Elem::new()) };
        let (left, right, _) = self.skew_parts(x);
        let mut rest_r = t.one();
        for &m in rest {
            rest_r = t.mul(&rest_r, &self.group_letter(right, m)?);
        }
        let a = t.mul(&self.group_letter(left, l)?, &self.op_word(i, rest)?);
        let b = t.mul(&self.skew_letter(x, l)?, &rest_r);
        Ok(elem_add(&a, &b))
    }
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

fn mono<S: Field>(k: &[i64]) -> Elem<S> {
    let mut e = Elem::new();
    e.insert(k.to_vec(), S::one());
    e
}

fn degree(k: &[i64]) -> usize {
    k.iter().map(|a| a.unsigned_abs() as usize).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub check: String,
    pub input: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<Witness>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record<T: Target>(&mut self, t: &T, check: &str, input: &[i64], v: &Elem<T::S>) {
        self.checked += 1;
        if !v.is_empty() && self.failures.len() < 20 {
            self.failures.push(Witness { check: check.into(), input: t.fmt_key(input), value: t.fmt_elem(v) });
        }
    }
}

/// Every defining relation of the Hopf algebra acts by zero on each monomial of degree ≤ cap.
pub fn verify_hopf_relations<T: Target>(a: &ActionSpec<T>, cap: usize) -> Res<VerifyReport> {
    let ev = a.evaluator();
    let t = &a.target;
    let h = &a.hopf;
    let r = h.group_rank();
    let names = h.symbol_names();
    let monos = t.slice(cap);
    let mut rep = VerifyReport::default();
    for row in h.smash.group.relations() {
        for k in &monos {
            let m = mono::<T::S>(k);
            let v = elem_sub(&ev.group(row, &m)?, &m);
            rep.record(t, &format!("group relation {:?}", row), k, &v);
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            for k in &monos {
                let m = mono::<T::S>(k);
                let v = elem_sub(&ev.op(i, &ev.op(j, &m)?)?, &ev.op(j, &ev.op(i, &m)?)?);
                rep.record(t, &format!("{}{} = {}{}", names[i], names[j], names[j], names[i]), k, &v);
            }
        }
    }
    for x in 0..h.smash.nx {
        for i in 0..r {
            let c = T::S::from_cyc(&h.smash.zeta(h.smash.conj[x][i]));
            for k in &monos {
                let m = mono::<T::S>(k);
                let lhs = ev.op(i, &ev.op(r + x, &m)?)?;
                let rhs = elem_scale(&ev.op(r + x, &ev.op(i, &m)?)?, &c);
                rep.record(t, &format!("conjugation {} {}", names[i], names[r + x]), k, &elem_sub(&lhs, &rhs));
            }
        }
    }
    for rel in &h.relations {
        let label = h.fmt_poly(rel);
        for k in &monos {
            let v = ev.apply(rel, &mono(k))?;
            rep.record(t, &label, k, &v);
        }
    }
    Ok(rep)
}

/// Every Hopf generator respects every defining relation of the target.
pub fn verify_target_relations<T: Target>(a: &ActionSpec<T>) -> Res<VerifyReport> {
    let ev = a.evaluator();
    let t = &a.target;
    let names = a.generator_names();
    let mut rep = VerifyReport::default();
    for rel in t.relations() {
        let lhs_key: Vec<i64> = {
            let mut k = t.one_key();
            for &(i, s) in &rel.lhs {
                k[i] += s;
            }
            k
        };
        for i in 0..a.ops.len() {
            let mut v = ev.op_word(i, &rel.lhs)?;
            for (c, w) in &rel.rhs {
                v = elem_sub(&v, &elem_scale(&ev.op_word(i, w)?, c));
            }
            rep.record(t, &format!("{} on target relation", names[i]), &lhs_key, &v);
        }
    }
    Ok(rep)
}

/// h·(ab) = Σ (h₁·a)(h₂·b) for every generator h and monomials with deg a + deg b ≤ cap,
/// and h·1 = ε(h)1.
pub fn verify_module_algebra<T: Target>(a: &ActionSpec<T>, cap: usize) -> Res<VerifyReport> {
    let ev = a.evaluator();
    let t = &a.target;
    let h = &a.hopf;
    let r = h.group_rank();
    let names = a.generator_names();
    let monos = t.slice(cap);
    let mut rep = VerifyReport::default();
    let one = t.one();
    for i in 0..a.ops.len() {
        let eps = if i < r { T::S::one() } else { T::S::zero() };
        let v = elem_sub(&ev.op(i, &one)?, &elem_scale(&one, &eps));
        rep.record(t, &format!("{}·1", names[i]), &t.one_key(), &v);
    }
    for i in 0..a.ops.len() {
        let cop: Vec<(GPoly, GPoly, T::S)> = if i < r {
            vec![(h.g(i), h.g(i), T::S::one())]
        } else {
            h.coproduct_gen(i - r)
                .terms
                .iter()
                .map(|(legs, c)| (h.smash.key(legs[0].clone()), h.smash.key(legs[1].clone()), T::S::from_cyc(c)))
                .collect()
        };
        for ka in &monos {
            for kb in &monos {
                if degree(ka) + degree(kb) > cap {
                    continue;
                }
                let (ma, mb) = (mono::<T::S>(ka), mono::<T::S>(kb));
                let lhs = ev.op(i, &t.mul(&ma, &mb))?;
                let mut rhs = Elem::new();
                for (l1, l2, c) in &cop {
                    let p = t.mul(&ev.apply(l1, &ma)?, &ev.apply(l2, &mb)?);
                    rhs = elem_add(&rhs, &elem_scale(&p, c));
                }
                let mut key = ka.clone();
                key.extend_from_slice(kb);
                rep.checked += 1;
                let v = elem_sub(&lhs, &rhs);
                if !v.is_empty() && rep.failures.len() < 20 {
                    rep.failures.push(Witness {
                        check: format!("{} on a·b", names[i]),
                        input: format!("a = {}, b = {}", t.fmt_key(ka), t.fmt_key(kb)),
                        value: t.fmt_elem(&v),
                    });
                }
            }
        }
    }
    Ok(rep)
}

/// Exponents e with g_j·z_i = ζ^{e[j][i]} z_i; fails unless every target generator is
/// a common eigenvector of the grouplike generators.
pub fn grouplike_characters<T: Target>(a: &ActionSpec<T>) -> Res<Vec<Vec<i64>>> {
    let t = &a.target;
    let m = a.hopf.root_order();
    let mut out = Vec::new();
    for j in 0..a.hopf.group_rank() {
        let mut row = Vec::new();
        for i in 0..t.ngens() {
            let img = &a.ops[j].images()[i];
            let k = unit(t.ngens(), i);
            let e = match (img.len(), img.get(&k)) {
                (1, Some(c)) => c.as_cyc().and_then(|c| c.root_exponent(m)),
                _ => None,
            };
            match e {
                Some(e) => row.push(e as i64),
                None => return Err(ActionError::NotEigenvector(t.var_names()[i].clone())),
            }
        }
        out.push(row);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaithfulReport {
    pub group_kernel_trivial: bool,
    /// Names of skew generators acting by zero or dependently within their class.
    pub dependent: Vec<String>,
}

impl FaithfulReport {
    pub fn passed(&self) -> bool {
        self.group_kernel_trivial && self.dependent.is_empty()
    }
}

/// Inner faithfulness by the pointed-generation criterion on the degree-≤cap slice.
///
/// Skew generators are grouped by the class of g·g′^{-1}; x·g′^{-1} is then
/// (g g′^{-1}, 1)-skew primitive and must act independently of the others in its
/// class and of the trivial skew primitive 1 − g g′^{-1}.
pub fn inner_faithful_pointed<T: Target>(a: &ActionSpec<T>, cap: usize) -> Res<FaithfulReport> {
    let t = &a.target;
    let h = &a.hopf;
    let grp = &h.smash.group;
    let m = h.root_order() as i64;
    let chars = grouplike_characters(a)?;
    let mut kernel_trivial = true;
    for g in grp.elements() {
        if grp.is_identity(&g) {
            continue;
        }
        let trivial = (0..t.ngens()).all(|i| (0..g.len()).map(|j| g[j] * chars[j][i]).sum::<i64>().rem_euclid(m) == 0);
        if trivial {
            kernel_trivial = false;
            break;
        }
    }
    let ev = a.evaluator();
    let monos = t.slice(cap);
    type Flat<S> = SparseVec<(Vec<i64>, Vec<i64>), S>;
    let flatten = |f: &dyn Fn(&Elem<T::S>) -> Res<Elem<T::S>>| -> Res<Flat<T::S>> {
        let mut out = Flat::new();
        for k in &monos {
            for (kk, c) in f(&mono(k))? {
                out.insert((k.clone(), kk), c);
            }
        }
        Ok(out)
    };
    let mut classes: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (x, s) in h.skew.iter().enumerate() {
        let c = grp.mul(&s.left, &grp.inv(&s.right));
        classes.entry(c).or_default().push(x);
    }
    let mut dependent = Vec::new();
    for (c, xs) in classes {
        let mut family = Vec::new();
        if !grp.is_identity(&c) {
            family.push(flatten(&|v| Ok(elem_sub(v, &ev.group(&c, v)?)))?);
        }
        for &x in &xs {
            let rinv = grp.inv(&h.skew[x].right);
            family.push(flatten(&|v| ev.skew(x, &ev.group(&rinv, v)?))?);
        }
        // independence over the base field k, not over the coefficient field of the target
        let vals: Vec<T::S> = family.iter().flat_map(|f| f.values().cloned()).collect();
        let mut coords = T::S::k_expansion(&vals).into_iter();
        let mut e: Echelon<((Vec<i64>, Vec<i64>), Vec<u32>), CycNum> = Echelon::new();
        let offset = family.len() - xs.len();
        for (idx, f) in family.iter().enumerate() {
            let mut v = SparseVec::new();
            for k in f.keys() {
                for (mono, c) in coords.next().unwrap() {
                    v.insert((k.clone(), mono), c);
                }
            }
            let fresh = !v.is_empty() && e.insert(&v);
            if idx >= offset && !fresh {
                dependent.push(h.skew[xs[idx - offset]].name.clone());
            }
        }
    }
    Ok(FaithfulReport { group_kernel_trivial: kernel_trivial, dependent })
}

/// The four verification suites together.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActionReport {
    pub hopf_relations: VerifyReport,
    pub target_relations: VerifyReport,
    pub module_algebra: VerifyReport,
    pub inner_faithful: FaithfulReport,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.hopf_relations.passed() && self.target_relations.passed() && self.module_algebra.passed() && self.inner_faithful.passed()
    }
}

pub fn verify_all<T: Target>(a: &ActionSpec<T>, cap: usize) -> Res<ActionReport> {
    Ok(ActionReport {
        hopf_relations: verify_hopf_relations(a, cap)?,
        target_relations: verify_target_relations(a)?,
        module_algebra: verify_module_algebra(a, cap)?,
        inner_faithful: inner_faithful_pointed(a, cap)?,
    })
}

/// Extend an action on a commutative QPoly to L = F[u]/(u_i^{n_i} − v_i) with v_i ↔ z_i^{n_i}.
pub fn localize_action(a: &ActionSpec<QPoly>, n: &[u32]) -> Res<ActionSpec<ExtFieldModel>> {
    let t = &a.target;
    if !t.is_commutative() {
        return Err(ActionError::NotCommutative);
    }
    if n.len() != t.ngens() || n.iter().any(|&x| x == 0) {
        return Err(ActionError::Shape("one positive exponent per variable is required".into()));
    }
    let ev = a.evaluator();
    let r = a.hopf.group_rank();
    for (i, &ni) in n.iter().enumerate() {
        let mut k = t.one_key();
        k[i] = ni as i64;
        let d = mono::<CycNum>(&k);
        for op in 0..a.ops.len() {
            let img = ev.op(op, &d)?;
            let ok = if op < r { img == d } else { img.is_empty() };
            if !ok {
                return Err(ActionError::NotInvariant(t.fmt_key(&k)));
            }
        }
    }
    let l = ExtFieldModel::new(&t.vars, n);
    let convert = |e: &Elem<CycNum>| -> Elem<RatFunc> {
        let mut out = Elem::new();
        for (k, c) in e {
            let (v, key) = l.normalize(k);
            add_into(&mut out, key, v.scale(c));
        }
        out
    };
    let ops = a
        .ops
        .iter()
        .map(|op| match op {
            GeneratorOperator::Automorphism { images } => GeneratorOperator::Automorphism { images: images.iter().map(&convert).collect() },
            GeneratorOperator::SkewDerivation { left, right, images } => GeneratorOperator::SkewDerivation {
                left: left.clone(),
                right: right.clone(),
                images: images.iter().map(&convert).collect(),
            },
        })
        .collect();
    ActionSpec::new(a.hopf.clone(), l, ops)
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    /// F-basis of the joint kernel of h − ε(h) over all generators.
    pub invariants: Vec<Elem<RatFunc>>,
    pub grouplike_fixed: Vec<Elem<RatFunc>>,
    pub coincide: bool,
    pub is_base_field: bool,
    pub dim_over_f: usize,
    pub group_order: u64,
}

/// Joint kernel over F of the given generator operators (minus ε).
fn joint_fixed(a: &ActionSpec<ExtFieldModel>, gens: &[usize]) -> Res<Vec<Elem<RatFunc>>> {
    let ev = a.evaluator();
    let r = a.hopf.group_rank();
    let basis = &a.target.basis;
    let mut rows: BTreeMap<(usize, Vec<i64>), SparseVec<Vec<i64>, RatFunc>> = BTreeMap::new();
    for &i in gens {
        for b in basis {
            let mut v = ev.op(i, &mono(b))?;
            if i < r {
                add_into(&mut v, b.clone(), RatFunc::one().neg());
            }
            for (k, c) in v {
                rows.entry((i, k)).or_default().insert(b.clone(), c);
            }
        }
    }
    let rows: Vec<SparseVec<Vec<i64>, RatFunc>> = rows.into_values().collect();
    Ok(sparse_kernel(&rows, basis))
}

pub fn invariant_subspace(a: &ActionSpec<ExtFieldModel>) -> Res<InvariantReport> {
    let all: Vec<usize> = (0..a.ops.len()).collect();
    let grp: Vec<usize> = (0..a.hopf.group_rank()).collect();
    let invariants = joint_fixed(a, &all)?;
    let grouplike_fixed = joint_fixed(a, &grp)?;
    let coincide = same_span(&invariants, &grouplike_fixed);
    let is_base_field = same_span(&invariants, &[mono(&a.target.one_key())]);
    Ok(InvariantReport {
        invariants,
        grouplike_fixed,
        coincide,
        is_base_field,
        dim_over_f: a.target.dim(),
        group_order: a.hopf.group_order(),
    })
}

/// Eigenspace decomposition L = ⊕ L_(i) for the grouplike generator j, with
/// L_(i) = {a : g_j·a = ζ^{−i} a}.
pub fn grading(a: &ActionSpec<ExtFieldModel>, j: usize) -> Res<BTreeMap<i64, Vec<Vec<i64>>>> {
    let chars = grouplike_characters(a)?;
    let m = a.hopf.root_order() as i64;
    let mut out: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for b in &a.target.basis {
        let e: i64 = b.iter().zip(&chars[j]).map(|(x, c)| x * c).sum();
        out.entry((-e).rem_euclid(m)).or_default().push(b.clone());
    }
    Ok(out)
}

/// Pad an element's keys with zeros before and after.
fn pad_elem<S: Field>(e: &Elem<S>, before: usize, after: usize) -> Elem<S> {
    e.iter()
        .map(|(k, c)| {
            let mut kk = vec![0; before];
            kk.extend_from_slice(k);
            kk.extend(std::iter::repeat(0).take(after));
            (kk, c.clone())
        })
        .collect()
}

/// H ⊗ H′ acting leg-wise on A ⊗ A′.
pub fn tensor_action(a1: &ActionSpec<QPoly>, a2: &ActionSpec<QPoly>) -> Res<ActionSpec<QPoly>> {
    let hopf = tensor_product(&a1.hopf, &a2.hopf)?;
    let (t1, t2) = (&a1.target, &a2.target);
    let (k1, k2) = (t1.ngens(), t2.ngens());
    let mut vars = t1.vars.clone();
    for v in &t2.vars {
        vars.push(if t1.vars.contains(v) { format!("{v}'") } else { v.clone() });
    }
    let k = k1 + k2;
    let mut comm = vec![vec![CycNum::one(); k]; k];
    for i in 0..k1 {
        for j in i + 1..k1 {
            comm[i][j] = t1.comm[i][j].clone();
        }
    }
    for i in 0..k2 {
        for j in i + 1..k2 {
            comm[k1 + i][k1 + j] = t2.comm[i][j].clone();
        }
    }
    let mut laurent = t1.laurent.clone();
    laurent.extend_from_slice(&t2.laurent);
    let target = QPoly { vars, comm, laurent };
    let id = |i: usize| mono::<CycNum>(&unit(k, i));
    let (r1, r2) = (a1.hopf.group_rank(), a2.hopf.group_rank());
    let pad = |v: &[i64], before: usize, after: usize| {
        let mut o = vec![0; before];
        o.extend_from_slice(v);
        o.extend(std::iter::repeat(0).take(after));
        o
    };
    let mut ops = Vec::new();
    let split = |a: &ActionSpec<QPoly>| -> (Vec<GeneratorOperator<CycNum>>, Vec<GeneratorOperator<CycNum>>) {
        let r = a.hopf.group_rank();
        (a.ops[..r].to_vec(), a.ops[r..].to_vec())
    };
    let (g1, x1) = split(a1);
    let (g2, x2) = split(a2);
    for op in &g1 {
        let mut images: Vec<Elem<CycNum>> = op.images().iter().map(|e| pad_elem(e, 0, k2)).collect();
        images.extend((k1..k).map(id));
        ops.push(GeneratorOperator::Automorphism { images });
    }
    for op in &g2 {
        let mut images: Vec<Elem<CycNum>> = (0..k1).map(id).collect();
        images.extend(op.images().iter().map(|e| pad_elem(e, k1, 0)));
        ops.push(GeneratorOperator::Automorphism { images });
    }
    for op in &x1 {
        let GeneratorOperator::SkewDerivation { left, right, images } = op else { unreachable!() };
        let mut imgs: Vec<Elem<CycNum>> = images.iter().map(|e| pad_elem(e, 0, k2)).collect();
        imgs.extend((0..k2).map(|_| Elem::new()));
        ops.push(GeneratorOperator::SkewDerivation { left: pad(left, 0, r2), right: pad(right, 0, r2), images: imgs });
    }
    for op in &x2 {
        let GeneratorOperator::SkewDerivation { left, right, images } = op else { unreachable!() };
        let mut imgs: Vec<Elem<CycNum>> = (0..k1).map(|_| Elem::new()).collect();
        imgs.extend(images.iter().map(|e| pad_elem(e, k1, 0)));
        ops.push(GeneratorOperator::SkewDerivation { left: pad(left, r1, 0), right: pad(right, r1, 0), images: imgs });
    }
    ActionSpec::new(hopf, target, ops)
}

/// The subfield {a : c^s·a = a} with the quotient Hopf algebra H/(c^s − 1) acting.
pub fn fixed_subfield(a: &ActionSpec<ExtFieldModel>, c: &[i64], s: i64) -> Res<ActionSpec<ExtFieldModel>> {
    let quotient = central_quotient(&a.hopf, c, s)?;
    let grp = &a.hopf.smash.group;
    let cs = grp.pow(c, s);
    let ev = a.evaluator();
    let mut basis = Vec::new();
    for b in &a.target.basis {
        let img = ev.group_key(&cs, b)?;
        if img.len() != 1 || !img.contains_key(b) {
            return Err(ActionError::NotEigenvector(a.target.fmt_key(b)));
        }
        if img[b].is_one() {
            basis.push(b.clone());
        }
    }
    let target = a.target.restrict(basis);
    let r = quotient.group_rank();
    let ops = a
        .ops
        .iter()
        .enumerate()
        .map(|(i, op)| match op {
            GeneratorOperator::SkewDerivation { images, .. } => {
                let x = &quotient.skew[i - r];
                GeneratorOperator::SkewDerivation { left: x.left.clone(), right: x.right.clone(), images: images.clone() }
            }
            other => other.clone(),
        })
        .collect();
    ActionSpec::new(quotient, target, ops)
}

/// The adjoint action of a Borel part on A_{q,Q}: grouplikes act by the conjugation
/// characters, e_i·z_j = z_i z_j − χ_j(g_i) z_j z_i where e_i is (g_i, 1)-skew primitive.
pub fn adjoint_action(borel: &HopfPresentation) -> Res<ActionSpec<QPoly>> {
    let cartan = borel.cartan.clone().ok_or_else(|| ActionError::Shape("Borel part without Cartan data".into()))?;
    let r = cartan.rank();
    let s = &borel.smash;
    if s.nx != r || borel.skew.iter().any(|x| !GroupLattice::is_identity(&s.group, &x.right)) {
        return Err(ActionError::Shape("expected one (g,1)-skew primitive per simple root".into()));
    }
    let q = CycNum::zeta(s.m, 1);
    let mut target = QPoly::quantum_plane(r, &CycNum::one());
    for (i, j) in cartan.oriented_edges() {
        let e = cartan.d[i] * cartan.a[i][j];
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        target.comm[lo][hi] = q.pow(sign * e);
    }
    let mut ops = Vec::new();
    let ngr = borel.group_rank();
    for gi in 0..ngr {
        let images = (0..r).map(|j| elem_scale(&mono(&unit(r, j)), &s.zeta(s.conj[j][gi]))).collect();
        ops.push(GeneratorOperator::Automorphism { images });
    }
    for i in 0..r {
        let x = &borel.skew[i];
        let images = (0..r)
            .map(|j| {
                let chi = s.zeta(GroupLattice::pair(&s.conj[j], &x.left, s.m as u64));
                let zi_zj = target.mul(&mono(&unit(r, i)), &mono(&unit(r, j)));
                let zj_zi = target.mul(&mono(&unit(r, j)), &mono(&unit(r, i)));
                elem_sub(&zi_zj, &elem_scale(&zj_zi, &chi))
            })
            .collect();
        ops.push(GeneratorOperator::SkewDerivation { left: x.left.clone(), right: x.right.clone(), images });
    }
    ActionSpec::new(borel.clone(), target, ops)
}
