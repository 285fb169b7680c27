//! Words in generator symbols and noncommutative polynomials over a field.

use crate::scalars::{CycNum, Field};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// A word in numbered symbols, ordered degree-first then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(s: u16) -> Word {
        Word(vec![s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// Position of the first occurrence of `pat` as a contiguous subword.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.0[i..i + pat.len()] == pat.0[..])
    }

    pub fn slice(&self, a: usize, b: usize) -> Word {
        Word(self.0[a..b].to_vec())
    }

    pub fn power(s: u16, k: usize) -> Word {
        Word(vec![s; k])
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Word) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Word) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All words of length exactly `d` over `letters`, in increasing order.
pub fn words_of_degree(letters: &[u16], d: usize) -> Vec<Word> {
    let mut ls = letters.to_vec();
    ls.sort_unstable();
    let mut out = vec![Word::empty()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * ls.len());
        for w in &out {
            for &l in &ls {
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}

/// Scalar-weighted words; no zero coefficients are stored.
#[derive(Clone, PartialEq, Debug)]
pub struct NCPoly<S: Field = CycNum> {
    pub terms: BTreeMap<Word, S>,
}

impl<S: Field> Default for NCPoly<S> {
    fn default() -> Self {
        NCPoly { terms: BTreeMap::new() }
    }
}

impl<S: Field> NCPoly<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Word::empty(), S::one())
    }

    pub fn term(w: Word, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(letters: &[u16]) -> Self {
        Self::term(Word(letters.to_vec()), S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&S::one().neg()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut r = Self::zero();
        for (w, x) in &self.terms {
            r.add_term(w.clone(), x.mul(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.concat(b), x.mul(y));
            }
        }
        r
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Word, &S)> {
        self.terms.iter().next_back()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, c) in self.terms.iter().rev() {
            let ws = fmt_word(w, names);
            let cs = c.to_string();
            parts.push(if w.is_empty() {
                cs
            } else if c.is_one() {
                ws
            } else if cs.contains(' ') {
                format!("({})*{}", cs, ws)
            } else {
                format!("{}*{}", cs, ws)
            });
        }
        parts.join(" + ")
    }
}

/// `x*y^2*x` style rendering with run-length exponents.
pub fn fmt_word(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let s = w.0[i];
        let mut j = i;
        while j < w.len() && w.0[j] == s {
            j += 1;
        }
        let name = &names[s as usize];
        parts.push(if j - i == 1 { name.clone() } else { format!("{}^{}", name, j - i) });
        i = j;
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order() {
        assert!(Word(vec![1]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
    }

    #[test]
    fn subword_search() {
        let w = Word(vec![0, 1, 1, 0]);
        assert_eq!(w.find(&Word(vec![1, 0])), Some(2));
        assert_eq!(w.find(&Word(vec![0, 0])), None);
    }
}
