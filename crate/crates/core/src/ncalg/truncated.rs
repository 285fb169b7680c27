//! Degree-capped linear algebra for quotients of kG ⋉ k⟨X⟩ by two-sided ideals.
//!
//! The algebra splits along the group idempotents 1_χ, and each component is a
//! quotient of k⟨X⟩ by the χ-specialized relations. Homogeneous ideals are handled
//! one degree at a time, which is exact; otherwise the filtered slice of degree ≤ N
//! is used.

use super::linalg::{Echelon, SparseVec};
use super::smash::{GPoly, Smash};
use super::word::{words_of_degree, NCPoly, Word};
use crate::scalars::CycNum;
use serde::Serialize;
use std::cell::RefCell;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TruncError {
    #[error("relation {0} is not a weight vector for the group conjugation action")]
    NotWeight(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimResult {
    pub dim: u64,
    pub stabilized: bool,
    /// Graded case: dimension of each degree piece, summed over characters.
    pub by_degree: Vec<u64>,
    pub cap: usize,
}

/// All ways to write rows u·r·w of exact degree `d` over `letters`.
fn graded_rows(s: &Smash, rels: &[GPoly], chi: &[i64], letters: &[u16], d: usize) -> Vec<SparseVec<Word, CycNum>> {
    let mut out = Vec::new();
    for r in rels {
        let k = r.degree();
        if k > d {
            continue;
        }
        let free = d - k;
        for a in 0..=free {
            for u in words_of_degree(letters, a) {
                for w in words_of_degree(letters, free - a) {
                    out.push(row_of(s, r, chi, &u, &w));
                }
            }
        }
    }
    out
}

/// 1_χ·u·r·w as a vector of words.
fn row_of(s: &Smash, r: &GPoly, chi: &[i64], u: &Word, w: &Word) -> SparseVec<Word, CycNum> {
    let mut v: SparseVec<Word, CycNum> = SparseVec::new();
    for ((x, h), c) in &r.terms {
        // u·h = ζ^{−wt(u,h)} h·u, and 1_χ h = χ(h) 1_χ
        let e = -s.weight(u, h) + super::group::GroupLattice::pair(chi, h, s.m as u64);
        let key = u.concat(x).concat(w);
        let t = c.mul(&s.zeta(e));
        let single: SparseVec<Word, CycNum> = [(key, t)].into_iter().collect();
        super::linalg::axpy(&mut v, &CycNum::one(), &single);
    }
    v
}

fn filtered_rows(s: &Smash, rels: &[GPoly], chi: &[i64], letters: &[u16], n: usize) -> Vec<SparseVec<Word, CycNum>> {
    let mut out = Vec::new();
    for r in rels {
        let k = r.degree();
        if k > n {
            continue;
        }
        for free in 0..=(n - k) {
            for a in 0..=free {
                for u in words_of_degree(letters, a) {
                    for w in words_of_degree(letters, free - a) {
                        out.push(row_of(s, r, chi, &u, &w));
                    }
                }
            }
        }
    }
    out
}

fn characters_needed(s: &Smash, rels: &[GPoly]) -> Vec<Vec<i64>> {
    if rels.iter().all(|r| r.is_pure()) {
        vec![vec![0; s.group.rank()]]
    } else {
        s.group.characters(s.m as u64)
    }
}

fn check_weights(s: &Smash, rels: &[GPoly]) -> Result<(), TruncError> {
    for (i, r) in rels.iter().enumerate() {
        if !r.is_zero() && s.weight_of(r).is_none() {
            return Err(TruncError::NotWeight(i));
        }
    }
    Ok(())
}

/// Dimension of (kG ⋉ k⟨X⟩)/(relations), computed on the slice of X-degree ≤ cap.
pub fn truncated_quotient_dim(s: &Smash, rels: &[GPoly], cap: usize) -> Result<DimResult, TruncError> {
    check_weights(s, rels)?;
    let letters: Vec<u16> = (0..s.nx as u16).collect();
    let chars = characters_needed(s, rels);
    let mult = if chars.len() == 1 { s.group.order() } else { 1 };
    let homogeneous = rels.iter().all(|r| r.is_homogeneous());
    if homogeneous {
        let mut by_degree = Vec::new();
        let mut stabilized = false;
        for d in 0..=cap {
            let mut total = 0u64;
            for chi in &chars {
                let mut e: Echelon<Word, CycNum> = Echelon::new();
                for row in graded_rows(s, rels, chi, &letters, d) {
                    e.insert(&row);
                }
                let nwords = (s.nx as u64).pow(d as u32);
                total += nwords - e.rank() as u64;
            }
            by_degree.push(total * mult);
            if total == 0 {
                stabilized = true;
                break;
            }
        }
        let dim = by_degree.iter().sum();
        return Ok(DimResult { dim, stabilized, by_degree, cap });
    }
    let dim_at = |n: usize| -> u64 {
        let mut total = 0u64;
        for chi in &chars {
            let mut e: Echelon<Word, CycNum> = Echelon::new();
            for row in filtered_rows(s, rels, chi, &letters, n) {
                e.insert(&row);
            }
            let nwords: u64 = (0..=n).map(|d| (s.nx as u64).pow(d as u32)).sum();
            total += nwords - e.rank() as u64;
        }
        total * mult
    };
    let top = dim_at(cap);
    let prev = if cap > 0 { dim_at(cap - 1) } else { u64::MAX };
    Ok(DimResult { dim: top, stabilized: prev == top, by_degree: Vec::new(), cap })
}

type CacheKey = (Vec<u16>, bool, usize, Vec<i64>);

/// Remainders modulo degree slices of an ideal, used where no confluent rewrite
/// system is available. A zero remainder certifies ideal membership.
pub struct TruncatedReducer<'a> {
    s: &'a Smash,
    rels: Vec<GPoly>,
    slack: usize,
    cache: RefCell<HashMap<CacheKey, std::rc::Rc<Echelon<Word, CycNum>>>>,
}

impl<'a> TruncatedReducer<'a> {
    pub fn new(s: &'a Smash, rels: &[GPoly], slack: usize) -> TruncatedReducer<'a> {
        TruncatedReducer { s, rels: rels.to_vec(), slack, cache: RefCell::new(HashMap::new()) }
    }

    fn echelon(&self, letters: &[u16], graded: bool, deg: usize, chi: &[i64], rels: &[GPoly]) -> std::rc::Rc<Echelon<Word, CycNum>> {
        let key = (letters.to_vec(), graded, deg, chi.to_vec());
        if let Some(e) = self.cache.borrow().get(&key) {
            return e.clone();
        }
        let rows = if graded {
            graded_rows(self.s, rels, chi, letters, deg)
        } else {
            filtered_rows(self.s, rels, chi, letters, deg)
        };
        let mut e = Echelon::new();
        for r in rows {
            e.insert(&r);
        }
        let e = std::rc::Rc::new(e);
        self.cache.borrow_mut().insert(key, e.clone());
        e
    }

    pub fn smash(&self) -> &Smash {
        self.s
    }

    /// Reduce `p` modulo the sub-ideal generated by relations using only letters of `p`.
    pub fn reduce(&self, p: &GPoly) -> GPoly {
        if p.is_zero() {
            return p.clone();
        }
        let letters = p.letters();
        let rels: Vec<GPoly> = self
            .rels
            .iter()
            .filter(|r| !r.is_zero() && r.letters().iter().all(|l| letters.contains(l)))
            .cloned()
            .collect();
        if rels.is_empty() {
            return p.clone();
        }
        let graded = rels.iter().all(|r| r.is_homogeneous());
        let pure = rels.iter().all(|r| r.is_pure());
        let s = self.s;
        if pure {
            // I = kG ⊗ I_X: reduce each group coefficient separately
            let zero = vec![0i64; s.group.rank()];
            let mut by_g: std::collections::BTreeMap<(Vec<i64>, usize), NCPoly> = Default::default();
            for ((w, g), c) in &p.terms {
                let d = if graded { w.len() } else { 0 };
                by_g.entry((g.clone(), d)).or_default().add_term(w.clone(), c.clone());
            }
            let nmax = p.degree().max(rels.iter().map(|r| r.degree()).max().unwrap()) + self.slack;
            let mut out = GPoly::zero();
            for ((g, d), q) in by_g {
                let e = self.echelon(&letters, graded, if graded { d } else { nmax }, &zero, &rels);
                let rem = e.reduce(&q.terms);
                for (w, c) in rem {
                    out.add_term((w, g.clone()), c);
                }
            }
            return out;
        }
        // general case: go through the idempotent decomposition
        let chars = s.group.characters(s.m as u64);
        let order = CycNum::from_int(s.group.order() as i64);
        let inv_order = order.inv().unwrap();
        let nmax = p.degree().max(rels.iter().map(|r| r.degree()).max().unwrap()) + self.slack;
        let elems = s.group.elements();
        let mut out = GPoly::zero();
        for chi in &chars {
            let comp = s.char_component(p, chi);
            let mut rem: SparseVec<Word, CycNum> = SparseVec::new();
            if graded {
                let mut by_d: std::collections::BTreeMap<usize, SparseVec<Word, CycNum>> = Default::default();
                for (w, c) in &comp.terms {
                    by_d.entry(w.len()).or_default().insert(w.clone(), c.clone());
                }
                for (d, v) in by_d {
                    let e = self.echelon(&letters, true, d, chi, &rels);
                    rem.extend(e.reduce(&v));
                }
            } else {
                let e = self.echelon(&letters, false, nmax, chi, &rels);
                rem = e.reduce(&comp.terms);
            }
            // 1_χ w = |G|^{-1} Σ_g χ(g^{-1}) g w
            for (w, c) in rem {
                for g in &elems {
                    let ex = -super::group::GroupLattice::pair(chi, g, s.m as u64);
                    out.add_term((w.clone(), g.clone()), c.mul(&inv_order).mul(&s.zeta(ex)));
                }
            }
        }
        out
    }

    pub fn is_member(&self, p: &GPoly) -> bool {
        self.reduce(p).is_zero()
    }
}
