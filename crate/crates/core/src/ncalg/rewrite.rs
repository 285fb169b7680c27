//! Word rewriting over the group layer.

use super::smash::{GKey, GPoly, Smash};
use super::word::Word;
use crate::scalars::CycNum;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewriting did not terminate within {0} steps")]
    Nontermination(usize),
    #[error("rule {0} does not decrease the word order")]
    NotDecreasing(usize),
}

pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Rules `lhs → rhs` on skew-generator words; grouplikes are handled by the group layer.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteSystem {
    pub rules: Vec<(Word, GPoly)>,
    pub step_cap: usize,
}

impl RewriteSystem {
    pub fn new(rules: Vec<(Word, GPoly)>) -> Result<RewriteSystem, RewriteError> {
        for (i, (lhs, rhs)) in rules.iter().enumerate() {
            if rhs.terms.keys().any(|(w, _)| w >= lhs) {
                return Err(RewriteError::NotDecreasing(i));
            }
        }
        Ok(RewriteSystem { rules, step_cap: DEFAULT_STEP_CAP })
    }

    /// Orient a relation `p = 0` with its largest word as the left side.
    pub fn orient(p: &GPoly) -> Option<(Word, GPoly)> {
        let (lw, _) = p.terms.keys().next_back()?.clone();
        let mut lead = GPoly::zero();
        let mut rest = GPoly::zero();
        for (k, c) in &p.terms {
            if k.0 == lw {
                lead.add_term(k.clone(), c.clone());
            } else {
                rest.add_term(k.clone(), c.clone());
            }
        }
        // the leading word must carry a single group element for a monic rule
        if lead.terms.len() != 1 {
            return None;
        }
        let ((_, g), c) = lead.terms.iter().next().unwrap();
        if g.iter().any(|&x| x != 0) {
            return None;
        }
        let inv = c.inv().unwrap().neg();
        Some((lw, rest.scale(&inv)))
    }

    fn find_rule(&self, w: &Word) -> Option<(usize, usize)> {
        for (i, (lhs, _)) in self.rules.iter().enumerate() {
            if let Some(p) = w.find(lhs) {
                return Some((i, p));
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_rule(w).is_none()
    }

    pub fn normal_form(&self, s: &Smash, p: &GPoly) -> Result<GPoly, RewriteError> {
        let mut pending: BTreeMap<GKey, CycNum> = p.terms.clone();
        let mut out = GPoly::zero();
        let mut steps = 0usize;
        while let Some((key, c)) = pending.pop_last() {
            let (w, g) = key;
            match self.find_rule(&w) {
                None => out.add_term((w, g), c),
                Some((ri, pos)) => {
                    steps += 1;
                    if steps > self.step_cap {
                        return Err(RewriteError::Nontermination(self.step_cap));
                    }
                    let (lhs, rhs) = &self.rules[ri];
                    let a = w.slice(0, pos);
                    let b = w.slice(pos + lhs.len(), w.len());
                    for ((v, h), d) in &rhs.terms {
                        // g·a·(h·v)·b = ζ^{−wt(a,h)} (gh)·(a v b)
                        let e = -s.weight(&a, h);
                        let nk = (a.concat(v).concat(&b), s.group.mul(&g, h));
                        let coef = c.mul(d).mul(&s.zeta(e));
                        add_into(&mut pending, nk, coef);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Number of normal skew words, or `None` if they do not run out by length `max_len`.
    pub fn count_normal_words(&self, nx: usize, max_len: usize) -> Option<u64> {
        let mut level = vec![Word::empty()];
        let mut total = 1u64;
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &level {
                for x in 0..nx as u16 {
                    let mut v = w.0.clone();
                    v.push(x);
                    let nw = Word(v);
                    // only suffixes can newly contain a left side
                    if self.rules.iter().all(|(lhs, _)| !nw.0.ends_with(&lhs.0)) {
                        next.push(nw);
                    }
                }
            }
            if next.is_empty() {
                return Some(total);
            }
            total += next.len() as u64;
            level = next;
        }
        None
    }
}

fn add_into(m: &mut BTreeMap<GKey, CycNum>, k: GKey, c: CycNum) {
    if c.is_zero() {
        return;
    }
    match m.get_mut(&k) {
        Some(v) => {
            let s = v.add(&c);
            if s.is_zero() {
                m.remove(&k);
            } else {
                *v = s;
            }
        }
        None => {
            m.insert(k, c);
        }
    }
}
