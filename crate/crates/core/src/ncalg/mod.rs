//! Noncommutative polynomials, the group layer kG ⋉ k⟨X⟩, rewriting, and
//! degree-capped linear algebra.

pub mod group;
pub mod lattice;
pub mod linalg;
pub mod rewrite;
pub mod smash;
pub mod truncated;
pub mod word;

pub use group::GroupLattice;
pub use rewrite::{RewriteError, RewriteSystem};
pub use smash::{GKey, GPoly, Smash, Tensor};
pub use truncated::{truncated_quotient_dim, DimResult, TruncatedReducer};
pub use word::{NCPoly, Word};

/// Normal forms leg by leg: a confluent rewrite system, or truncated elimination.
pub enum LegReducer<'a> {
    Rewrite(&'a Smash, &'a RewriteSystem),
    Truncated(TruncatedReducer<'a>),
}

impl<'a> LegReducer<'a> {
    pub fn smash(&self) -> &Smash {
        match self {
            LegReducer::Rewrite(s, _) => s,
            LegReducer::Truncated(t) => t.smash(),
        }
    }

    pub fn reduce(&self, p: &GPoly) -> Result<GPoly, RewriteError> {
        match self {
            LegReducer::Rewrite(s, rs) => rs.normal_form(s, p),
            LegReducer::Truncated(t) => Ok(t.reduce(p)),
        }
    }

    /// Whether zero after reduction certifies membership in both directions.
    pub fn is_exact(&self) -> bool {
        matches!(self, LegReducer::Rewrite(..))
    }

    pub fn tensor_normal_form(&self, t: &Tensor) -> Result<Tensor, RewriteError> {
        let legs = t.terms.keys().next().map_or(0, |k| k.len());
        let mut cur = t.clone();
        for i in 0..legs {
            let parts = cur.split_leg(i);
            let mut mapped = std::collections::BTreeMap::new();
            for (k, p) in parts {
                mapped.insert(k, self.reduce(&p)?);
            }
            cur = Tensor::join_leg(i, &mapped);
        }
        Ok(cur)
    }
}

/// Split an NCPoly over doubled symbols (leg one uses 0..n, leg two n..2n) into a tensor.
pub fn tensor_from_doubled(s: &Smash, p: &NCPoly, n: u16) -> Tensor {
    let mut t = Tensor::zero();
    for (w, c) in &p.terms {
        let left: Vec<u16> = w.0.iter().copied().filter(|&x| x < n).collect();
        let right: Vec<u16> = w.0.iter().copied().filter(|&x| x >= n).map(|x| x - n).collect();
        let a = s.from_ncpoly(&NCPoly::word(&left));
        let b = s.from_ncpoly(&NCPoly::word(&right));
        t = t.add(&Tensor::pure(&[a, b]).scale(c));
    }
    t
}
