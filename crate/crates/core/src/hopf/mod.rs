//! Pointed Hopf algebras presented by grouplikes, skew primitives and relations.
//!
//! A presentation lives on top of the group layer kG ⋉ k⟨X⟩: the grouplikes form
//! a finite abelian group, each skew primitive carries a conjugation character,
//! and the remaining relations are elements of the group layer.

pub mod catalog;
mod ops;

pub use ops::{central_quotient, hopf_iso_check, is_central, tensor_product, GeneratorMap, IsoReport, Verdict};

use crate::ncalg::group::GroupError;
use crate::ncalg::smash::SmashError;
use crate::ncalg::{GKey, GPoly, LegReducer, NCPoly, RewriteError, RewriteSystem, Smash, Tensor, TruncatedReducer, Word};
use crate::ncalg::{truncated_quotient_dim, DimResult};
use crate::scalars::CycNum;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HopfError {
    #[error("parameter constraint violated: {0}")]
    Parameter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Smash(#[from] SmashError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("group element {0:?} is not central")]
    NotCentral(Vec<i64>),
    #[error("antipode of generator {0} could not be solved")]
    Antipode(String),
    #[error("relation {index} fails validation: {reason}")]
    Invalid { index: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    Grouplike { order: u64 },
    SkewPrimitive { left: Vec<i64>, right: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewGen {
    pub name: String,
    /// Δ(x) = g^left ⊗ x + x ⊗ g^right.
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanData {
    pub a: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    /// Directed edges (i, j) meaning i → j.
    pub orientation: Option<Vec<(usize, usize)>>,
}

impl CartanData {
    pub fn new(a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<CartanData, HopfError> {
        let r = a.len();
        if d.len() != r || a.iter().any(|row| row.len() != r) {
            return Err(HopfError::Parameter("Cartan matrix and symmetrizer sizes differ".into()));
        }
        for i in 0..r {
            if a[i][i] != 2 {
                return Err(HopfError::Parameter(format!("a_{i}{i} must be 2")));
            }
            for j in 0..r {
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return Err(HopfError::Parameter("d_i a_ij must equal d_j a_ji".into()));
                }
                if i != j && a[i][j] > 0 {
                    return Err(HopfError::Parameter("off-diagonal entries must be nonpositive".into()));
                }
            }
        }
        Ok(CartanData { a, d, orientation: None })
    }

    /// Type A_r.
    pub fn type_a(r: usize) -> CartanData {
        let a = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match (i as i64 - j as i64).abs() {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        CartanData { a, d: vec![1; r], orientation: None }
    }

    /// Type B₂ with the short root second.
    pub fn type_b2() -> CartanData {
        CartanData { a: vec![vec![2, -2], vec![-1, 2]], d: vec![1, 2], orientation: None }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                if self.a[i][j] != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Oriented edges, defaulting to i → j for i < j.
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        self.orientation.clone().unwrap_or_else(|| self.edges())
    }

    pub fn with_orientation(mut self, edges: Vec<(usize, usize)>) -> CartanData {
        self.orientation = Some(edges);
        self
    }

    pub fn determinant(&self) -> i64 {
        det(&self.a)
    }
}

fn det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return a[0][0];
    }
    let mut s = 0;
    for j in 0..n {
        let minor: Vec<Vec<i64>> = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        s += sign * a[0][j] * det(&minor);
    }
    s
}

/// Outcome of a bi-ideal test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CoidealOutcome {
    Pass,
    /// Leg-wise normal form of Δ(r) that did not vanish.
    Fail(String),
    Inconclusive(String),
}

impl CoidealOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CoidealOutcome::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub counit: Vec<bool>,
    pub coideal: Vec<CoidealOutcome>,
    pub antipode_stable: Vec<Option<bool>>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.counit.iter().all(|&b| b) && self.coideal.iter().all(|c| c.passed()) && self.antipode_stable.iter().all(|s| *s != Some(false))
    }
}

#[derive(Clone, Debug)]
pub struct HopfPresentation {
    pub name: String,
    /// Parameter values such as λ, α or p, as written.
    pub params: BTreeMap<String, String>,
    pub smash: Smash,
    pub group_names: Vec<String>,
    pub skew: Vec<SkewGen>,
    pub relations: Vec<GPoly>,
    pub rewrite: Option<RewriteSystem>,
    pub claimed_dim: Option<u64>,
    pub cartan: Option<CartanData>,
    /// Degree cap used by truncated linear algebra.
    pub dim_cap: usize,
}

impl HopfPresentation {
    /// The one-dimensional Hopf algebra k.
    pub fn trivial() -> HopfPresentation {
        let group = crate::ncalg::GroupLattice::new(0, &[]).unwrap();
        let smash = Smash::new(group, Vec::new(), 1).unwrap();
        HopfPresentation {
            name: "k".into(),
            params: BTreeMap::new(),
            smash,
            group_names: Vec::new(),
            skew: Vec::new(),
            relations: Vec::new(),
            rewrite: Some(RewriteSystem::new(Vec::new()).unwrap()),
            claimed_dim: Some(1),
            cartan: None,
            dim_cap: 1,
        }
    }

    pub fn root_order(&self) -> u32 {
        self.smash.m
    }

    pub fn group_rank(&self) -> usize {
        self.smash.group.rank()
    }

    pub fn group_order(&self) -> u64 {
        self.smash.group.order()
    }

    pub fn generators(&self) -> Vec<(String, GeneratorKind)> {
        let mut out = Vec::new();
        for (i, n) in self.group_names.iter().enumerate() {
            let mut e = vec![0; self.group_rank()];
            e[i] = 1;
            out.push((n.clone(), GeneratorKind::Grouplike { order: self.smash.group.elem_order(&e) }));
        }
        for x in &self.skew {
            out.push((x.name.clone(), GeneratorKind::SkewPrimitive { left: x.left.clone(), right: x.right.clone() }));
        }
        out
    }

    pub fn generator_index(&self, name: &str) -> Option<Generator> {
        if let Some(i) = self.group_names.iter().position(|n| n == name) {
            return Some(Generator::Group(i));
        }
        self.skew.iter().position(|x| x.name == name).map(Generator::Skew)
    }

    pub fn g(&self, i: usize) -> GPoly {
        let mut e = vec![0; self.group_rank()];
        e[i] = 1;
        self.smash.g(&e)
    }

    pub fn x(&self, i: usize) -> GPoly {
        self.smash.x(i)
    }

    pub fn mul(&self, a: &GPoly, b: &GPoly) -> GPoly {
        self.smash.mul(a, b)
    }

    /// All defining relations as polynomials in the full alphabet (grouplikes first):
    /// power relations of the group lattice, conjugation relations, then the rest.
    pub fn relation_polys(&self) -> Vec<NCPoly> {
        let s = &self.smash;
        let mut out = Vec::new();
        for row in s.group.relations() {
            let mut p = NCPoly::zero();
            let mut letters = Vec::new();
            let mut inv_letters = Vec::new();
            for (i, &a) in row.iter().enumerate() {
                if a >= 0 {
                    letters.extend(std::iter::repeat(i as u16).take(a as usize));
                } else {
                    inv_letters.extend(std::iter::repeat(i as u16).take((-a) as usize));
                }
            }
            p.add_term(Word(letters), CycNum::one());
            p.add_term(Word(inv_letters), CycNum::from_int(-1));
            out.push(p);
        }
        let r = self.group_rank() as u16;
        for x in 0..s.nx {
            for i in 0..self.group_rank() {
                let c = s.conj[x][i];
                let mut p = NCPoly::zero();
                p.add_term(Word(vec![i as u16, r + x as u16]), CycNum::one());
                p.add_term(Word(vec![r + x as u16, i as u16]), s.zeta(c).neg());
                out.push(p);
            }
        }
        for rel in &self.relations {
            out.push(s.to_ncpoly(rel));
        }
        out
    }

    pub fn relation_count(&self) -> usize {
        self.smash.group.relations().len() + self.smash.nx * self.group_rank() + self.relations.len()
    }

    pub fn reducer(&self) -> LegReducer<'_> {
        match &self.rewrite {
            Some(rs) => LegReducer::Rewrite(&self.smash, rs),
            None => LegReducer::Truncated(TruncatedReducer::new(&self.smash, &self.relations, 0)),
        }
    }

    pub fn normal_form(&self, p: &GPoly) -> Result<GPoly, RewriteError> {
        self.reducer().reduce(p)
    }

    fn key_tensor(&self, k: &GKey) -> Tensor {
        let g = (Word::empty(), k.1.clone());
        Tensor::pure(&[self.smash.key(g.clone()), self.smash.key(g)])
    }

    /// Δ of a skew generator, unreduced.
    pub fn coproduct_gen(&self, i: usize) -> Tensor {
        let x = &self.skew[i];
        let s = &self.smash;
        let a = Tensor::pure(&[s.g(&x.left), s.x(i)]);
        let b = Tensor::pure(&[s.x(i), s.g(&x.right)]);
        a.add(&b)
    }

    /// Multiplicative extension of the generator coproducts, without normal forms.
    pub fn coproduct_raw(&self, p: &GPoly) -> Tensor {
        let s = &self.smash;
        let gens: Vec<Tensor> = (0..s.nx).map(|i| self.coproduct_gen(i)).collect();
        let mut out = Tensor::zero();
        for (k, c) in &p.terms {
            let mut t = self.key_tensor(k);
            for &x in &k.0 .0 {
                t = s.tensor_mul(&t, &gens[x as usize]);
            }
            out = out.add(&t.scale(c));
        }
        out
    }

    pub fn coproduct(&self, p: &GPoly) -> Result<Tensor, RewriteError> {
        self.reducer().tensor_normal_form(&self.coproduct_raw(p))
    }

    pub fn counit(&self, p: &GPoly) -> CycNum {
        let mut c = CycNum::zero();
        for ((w, _), x) in &p.terms {
            if w.len() == 0 {
                c = c.add(x);
            }
        }
        c
    }

    /// S(x) solved from m(S ⊗ id)Δ(x) = 0 and checked against m(id ⊗ S)Δ(x) = 0.
    pub fn antipode_gen(&self, i: usize) -> Result<GPoly, HopfError> {
        let s = &self.smash;
        let x = &self.skew[i];
        let linv = s.group.inv(&x.left);
        let rinv = s.group.inv(&x.right);
        // S(g)·x + S(x)·g' = 0 gives S(x) = −g^{-1} x g'^{-1}
        let sx = s.mul(&s.mul(&s.g(&linv), &s.x(i)), &s.g(&rinv)).neg();
        let left_axiom = s.mul(&s.g(&linv), &s.x(i)).add(&s.mul(&sx, &s.g(&x.right)));
        let right_axiom = s.mul(&s.g(&x.left), &sx).add(&s.mul(&s.x(i), &s.g(&rinv)));
        if !left_axiom.is_zero() || !right_axiom.is_zero() {
            return Err(HopfError::Antipode(x.name.clone()));
        }
        Ok(sx)
    }

    /// Anti-multiplicative extension: S(g·x₁⋯x_k) = S(x_k)⋯S(x₁)·g^{-1}.
    pub fn antipode(&self, p: &GPoly) -> Result<GPoly, HopfError> {
        let s = &self.smash;
        let gens: Vec<GPoly> = (0..s.nx).map(|i| self.antipode_gen(i)).collect::<Result<_, _>>()?;
        let mut out = GPoly::zero();
        for ((w, g), c) in &p.terms {
            let mut acc = s.one();
            for &x in w.0.iter().rev() {
                acc = s.mul(&acc, &gens[x as usize]);
            }
            acc = s.mul(&acc, &s.g(&s.group.inv(g)));
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// Whether Δ(r) lies in I ⊗ H + H ⊗ I, decided by leg-wise normal forms.
    pub fn coideal_check(&self, r: &GPoly, max_degree: usize) -> CoidealOutcome {
        if r.degree() > max_degree {
            return CoidealOutcome::Inconclusive(format!("degree {} exceeds cap {}", r.degree(), max_degree));
        }
        let red = self.reducer();
        let t = match red.tensor_normal_form(&self.coproduct_raw(r)) {
            Ok(t) => t,
            Err(e) => return CoidealOutcome::Inconclusive(e.to_string()),
        };
        if t.is_zero() {
            CoidealOutcome::Pass
        } else if red.is_exact() {
            CoidealOutcome::Fail(self.fmt_tensor(&t))
        } else {
            CoidealOutcome::Inconclusive(format!("truncated remainder {}", self.fmt_tensor(&t)))
        }
    }

    /// S(r) ∈ I, or `None` when only a truncated reducer is available and it did not vanish.
    pub fn antipode_stable(&self, r: &GPoly) -> Result<Option<bool>, HopfError> {
        let red = self.reducer();
        let nf = red.reduce(&self.antipode(r)?)?;
        Ok(if nf.is_zero() {
            Some(true)
        } else if red.is_exact() {
            Some(false)
        } else {
            None
        })
    }

    pub fn validate(&self, max_degree: usize) -> Result<ValidationReport, HopfError> {
        let mut rep = ValidationReport { counit: Vec::new(), coideal: Vec::new(), antipode_stable: Vec::new() };
        for r in &self.relations {
            rep.counit.push(self.counit(r).is_zero());
            rep.coideal.push(self.coideal_check(r, max_degree));
            rep.antipode_stable.push(if r.degree() <= max_degree { self.antipode_stable(r)? } else { None });
        }
        Ok(rep)
    }

    /// Cheap structural checks run by every constructor.
    pub(crate) fn check_basic(&self) -> Result<(), HopfError> {
        for (i, r) in self.relations.iter().enumerate() {
            if !self.counit(r).is_zero() {
                return Err(HopfError::Invalid { index: i, reason: "counit does not vanish".into() });
            }
            if !r.is_zero() && self.smash.weight_of(r).is_none() {
                return Err(HopfError::Invalid { index: i, reason: "not a weight vector".into() });
            }
        }
        for x in &self.skew {
            if x.left.len() != self.group_rank() || x.right.len() != self.group_rank() {
                return Err(HopfError::Parameter(format!("group word of {} has the wrong length", x.name)));
            }
        }
        for i in 0..self.skew.len() {
            self.antipode_gen(i)?;
        }
        Ok(())
    }

    /// Dimension by truncated linear algebra on the degree-≤cap slice.
    pub fn truncated_dimension(&self) -> DimResult {
        truncated_quotient_dim(&self.smash, &self.relations, self.dim_cap).expect("catalog relations are weight vectors")
    }

    /// |G| times the number of normal skew words when a rewrite system is present.
    pub fn normal_word_dimension(&self) -> Option<u64> {
        let rs = self.rewrite.as_ref()?;
        rs.count_normal_words(self.smash.nx, 4 * self.dim_cap.max(1)).map(|c| c * self.group_order())
    }

    /// Best available dimension: normal words, else the claimed value.
    pub fn dimension(&self) -> Option<u64> {
        self.normal_word_dimension().or(self.claimed_dim)
    }

    pub fn symbol_names(&self) -> Vec<String> {
        self.group_names.iter().cloned().chain(self.skew.iter().map(|x| x.name.clone())).collect()
    }

    pub fn fmt_poly(&self, p: &GPoly) -> String {
        self.smash.to_ncpoly(p).fmt_with(&self.symbol_names())
    }

    pub fn fmt_tensor(&self, t: &Tensor) -> String {
        if t.is_zero() {
            return "0".into();
        }
        let names = self.symbol_names();
        let parts: Vec<String> = t
            .terms
            .iter()
            .map(|(k, c)| {
                let legs: Vec<String> = k
                    .iter()
                    .map(|leg| {
                        let p = self.smash.key(leg.clone());
                        self.smash.to_ncpoly(&p).fmt_with(&names)
                    })
                    .collect();
                format!("({}) {}", c, legs.join(" ⊗ "))
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Group(usize),
    Skew(usize),
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn taft_two_shape() {
        let h = taft(2).unwrap();
        assert_eq!(h.generators().len(), 2);
        assert_eq!(h.relation_count(), 3);
        assert_eq!(h.relation_polys().len(), 3);
        assert_eq!(h.dimension(), Some(4));
    }

    #[test]
    fn coproduct_of_x_squared() {
        let h = taft(3).unwrap();
        let x2 = h.mul(&h.x(0), &h.x(0));
        let d = h.coproduct(&x2).unwrap();
        // g²⊗x² + (1+ζ^{-1}) gx⊗x + x²⊗1
        let s = &h.smash;
        let mut expect = Tensor::pure(&[s.g(&[2]), x2.clone()]);
        expect = expect.add(&Tensor::pure(&[x2.clone(), s.one()]));
        let gx = s.mul(&s.g(&[1]), &s.x(0));
        let coef = CycNum::one().add(&CycNum::zeta(3, -1));
        expect = expect.add(&Tensor::pure(&[gx, s.x(0)]).scale(&coef));
        assert_eq!(d, expect);
    }

    #[test]
    fn antipode_of_taft_generators() {
        let h = taft(4).unwrap();
        let s = &h.smash;
        assert_eq!(h.antipode(&s.g(&[1])).unwrap(), s.g(&[3]));
        let expect = s.mul(&s.g(&[3]), &s.x(0)).neg();
        assert_eq!(h.antipode(&s.x(0)).unwrap(), expect);
    }

    #[test]
    fn antipode_of_f_in_small_quantum_sl2() {
        let h = uq_sl2(3, CycNum::one()).unwrap();
        let s = &h.smash;
        // f is (1, k^{-1}) so S(f) = −f k
        let expect = s.mul(&s.x(1), &s.g(&[1])).neg();
        assert_eq!(h.antipode(&s.x(1)).unwrap(), expect);
    }

    #[test]
    fn cartan_determinants() {
        assert_eq!(CartanData::type_a(2).determinant(), 3);
        assert_eq!(CartanData::type_a(1).determinant(), 2);
        assert_eq!(CartanData::type_b2().determinant(), 2);
        assert!(CartanData::new(vec![vec![2, -1], vec![-2, 2]], vec![1, 1]).is_err());
    }
}
