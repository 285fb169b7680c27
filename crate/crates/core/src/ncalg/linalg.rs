//! Sparse row echelon forms over an exact field.

use crate::scalars::Field;
use std::collections::BTreeMap;

pub type SparseVec<K, S> = BTreeMap<K, S>;

/// Rows indexed by their leading (largest) key, each with leading coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone, S: Field> {
    rows: BTreeMap<K, SparseVec<K, S>>,
}

impl<K: Ord + Clone, S: Field> Default for Echelon<K, S> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

pub fn axpy<K: Ord + Clone, S: Field>(v: &mut SparseVec<K, S>, c: &S, row: &SparseVec<K, S>) {
    for (k, x) in row {
        let t = c.mul(x);
        match v.get_mut(k) {
            Some(y) => {
                let s = y.add(&t);
                if s.is_zero() {
                    v.remove(k);
                } else {
                    *y = s;
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(k.clone(), t);
                }
            }
        }
    }
}

impl<K: Ord + Clone, S: Field> Echelon<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// Canonical remainder modulo the row space.
    pub fn reduce(&self, v: &SparseVec<K, S>) -> SparseVec<K, S> {
        let mut v = v.clone();
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.keys().rev().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(b) => v.range(..b.clone()).rev().map(|(k, _)| k).find(|k| self.rows.contains_key(*k)).cloned(),
            };
            let Some(k) = next else { break };
            let c = v[&k].neg();
            axpy(&mut v, &c, &self.rows[&k]);
            bound = Some(k);
        }
        v
    }

    /// Add a vector to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<K, S>) -> bool {
        let r = self.reduce(v);
        let Some((k, lead)) = r.iter().next_back() else { return false };
        let k = k.clone();
        let inv = lead.inv().unwrap();
        let row: SparseVec<K, S> = r.into_iter().map(|(kk, x)| (kk, x.mul(&inv))).collect();
        self.rows.insert(k, row);
        true
    }
}

impl<K: Ord + Clone, S: Field> Echelon<K, S> {
    /// Fully reduced rows keyed by pivot: no row has a nonzero entry at another pivot.
    pub fn reduced_rows(&self) -> BTreeMap<K, SparseVec<K, S>> {
        let mut out = BTreeMap::new();
        for (p, row) in &self.rows {
            let mut tail = row.clone();
            tail.remove(p);
            let mut r = self.reduce(&tail);
            r.insert(p.clone(), S::one());
            out.insert(p.clone(), r);
        }
        out
    }
}

/// Kernel of the linear forms `rows` in the unknowns `vars`.
pub fn sparse_kernel<K: Ord + Clone, S: Field>(rows: &[SparseVec<K, S>], vars: &[K]) -> Vec<SparseVec<K, S>> {
    let mut e: Echelon<K, S> = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let rref = e.reduced_rows();
    let mut out = Vec::new();
    for f in vars.iter().filter(|k| !rref.contains_key(*k)) {
        let mut v: SparseVec<K, S> = BTreeMap::new();
        v.insert(f.clone(), S::one());
        for (p, row) in &rref {
            if let Some(c) = row.get(f) {
                v.insert(p.clone(), c.neg());
            }
        }
        out.push(v);
    }
    out
}

/// Whether two families span the same subspace.
pub fn same_span<K: Ord + Clone, S: Field>(a: &[SparseVec<K, S>], b: &[SparseVec<K, S>]) -> bool {
    let mut ea: Echelon<K, S> = Echelon::new();
    let mut eb: Echelon<K, S> = Echelon::new();
    a.iter().for_each(|v| {
        ea.insert(v);
    });
    b.iter().for_each(|v| {
        eb.insert(v);
    });
    ea.rank() == eb.rank() && b.iter().all(|v| ea.reduce(v).is_empty())
}

/// Basis of the kernel of a dense matrix (columns are unknowns).
pub fn kernel<S: Field>(mat: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut a: Vec<Vec<S>> = mat.to_vec();
    let mut pivcols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for j in 0..ncols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let t = f.mul(&a[r][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        pivcols.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivcols.contains(c)) {
        let mut v = vec![S::zero(); ncols];
        v[free] = S::one();
        for (i, &pc) in pivcols.iter().enumerate() {
            v[pc] = a[i][free].neg();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::CycNum;

    fn sv(v: &[(u32, i64)]) -> SparseVec<u32, CycNum> {
        v.iter().map(|&(k, c)| (k, CycNum::from_int(c))).collect()
    }

    #[test]
    fn kernel_of_sparse_forms() {
        // x0 + x1 = 0, x2 = 0 over unknowns 0..3
        let rows = vec![sv(&[(0, 1), (1, 1)]), sv(&[(2, 1)])];
        let k = sparse_kernel(&rows, &[0, 1, 2]);
        assert_eq!(k, vec![sv(&[(0, 1), (1, -1)])]);
        assert!(same_span(&k, &[sv(&[(0, -2), (1, 2)])]));
    }

    #[test]
    fn dependent_rows() {
        let mut e: Echelon<u32, CycNum> = Echelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&sv(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kernel_of_rank_one() {
        let one = CycNum::one();
        let two = CycNum::from_int(2);
        let k = kernel(&[vec![one.clone(), two.clone()], vec![two.clone(), CycNum::from_int(4)]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![two.neg(), one]);
    }
}
