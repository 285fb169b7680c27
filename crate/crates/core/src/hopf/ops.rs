//! Tensor products, central quotients and isomorphism checks between presentations.

use super::{HopfError, HopfPresentation, SkewGen};
use crate::ncalg::{GPoly, GroupLattice, NCPoly, RewriteSystem, Smash, Tensor, Word};
use num_integer::Integer;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

fn relabel(p: &GPoly, shift: u16, pad_before: usize, pad_after: usize) -> GPoly {
    let mut out = GPoly::zero();
    for ((w, g), c) in &p.terms {
        let w = Word(w.0.iter().map(|&x| x + shift).collect());
        let mut gv = vec![0; pad_before];
        gv.extend_from_slice(g);
        gv.extend(std::iter::repeat(0).take(pad_after));
        out.add_term((w, gv), c.clone());
    }
    out
}

/// H ⊗ H′ with commuting factors.
pub fn tensor_product(a: &HopfPresentation, b: &HopfPresentation) -> Result<HopfPresentation, HopfError> {
    let (ra, rb) = (a.group_rank(), b.group_rank());
    let mut rows = Vec::new();
    for r in a.smash.group.relations() {
        let mut v = r.clone();
        v.extend(std::iter::repeat(0).take(rb));
        rows.push(v);
    }
    for r in b.smash.group.relations() {
        let mut v = vec![0; ra];
        v.extend_from_slice(r);
        rows.push(v);
    }
    let group = GroupLattice::new(ra + rb, &rows)?;
    let m = a.root_order().lcm(&b.root_order());
    let (sa, sb) = ((m / a.root_order()) as i64, (m / b.root_order()) as i64);
    let mut conj = Vec::new();
    for row in &a.smash.conj {
        let mut v: Vec<i64> = row.iter().map(|c| c * sa).collect();
        v.extend(std::iter::repeat(0).take(rb));
        conj.push(v);
    }
    for row in &b.smash.conj {
        let mut v = vec![0; ra];
        v.extend(row.iter().map(|c| c * sb));
        conj.push(v);
    }
    let smash = Smash::new(group, conj, m)?;
    let na = a.smash.nx as u16;
    let mut relations: Vec<GPoly> = a.relations.iter().map(|r| relabel(r, 0, 0, rb)).collect();
    relations.extend(b.relations.iter().map(|r| relabel(r, na, ra, 0)));
    let mut cross = Vec::new();
    for x in 0..na {
        for y in 0..b.smash.nx as u16 {
            cross.push(smash.word(&[na + y, x]).sub(&smash.word(&[x, na + y])));
        }
    }
    relations.extend(cross.iter().cloned());
    let rewrite = match (&a.rewrite, &b.rewrite) {
        (Some(p), Some(q)) => {
            let mut rules: Vec<(Word, GPoly)> =
                p.rules.iter().map(|(l, r)| (l.clone(), relabel(r, 0, 0, rb))).collect();
            for (l, r) in &q.rules {
                rules.push((Word(l.0.iter().map(|&x| x + na).collect()), relabel(r, na, ra, 0)));
            }
            for c in &cross {
                rules.push(RewriteSystem::orient(c).expect("monic commutator"));
            }
            Some(RewriteSystem::new(rules)?)
        }
        _ => None,
    };
    let pad = |v: &[i64], before: usize, after: usize| {
        let mut out = vec![0; before];
        out.extend_from_slice(v);
        out.extend(std::iter::repeat(0).take(after));
        out
    };
    let mut skew: Vec<SkewGen> = a
        .skew
        .iter()
        .map(|x| SkewGen { name: x.name.clone(), left: pad(&x.left, 0, rb), right: pad(&x.right, 0, rb) })
        .collect();
    skew.extend(b.skew.iter().map(|x| SkewGen {
        name: format!("{}'", x.name),
        left: pad(&x.left, ra, 0),
        right: pad(&x.right, ra, 0),
    }));
    let mut group_names = a.group_names.clone();
    group_names.extend(b.group_names.iter().map(|n| format!("{n}'")));
    let mut params = BTreeMap::new();
    params.insert("left".into(), a.name.clone());
    params.insert("right".into(), b.name.clone());
    let h = HopfPresentation {
        name: format!("{} ⊗ {}", a.name, b.name),
        params,
        smash,
        group_names,
        skew,
        relations,
        rewrite,
        claimed_dim: a.claimed_dim.zip(b.claimed_dim).map(|(x, y)| x * y),
        cartan: None,
        dim_cap: a.dim_cap + b.dim_cap,
    };
    h.check_basic()?;
    Ok(h)
}

/// Whether the grouplike g is central, i.e. commutes with every skew generator.
pub fn is_central(h: &HopfPresentation, g: &[i64]) -> bool {
    let m = h.root_order() as u64;
    h.smash.conj.iter().all(|row| GroupLattice::pair(row, g, m) == 0)
}

/// H/(c^s − 1) for a central grouplike c.
pub fn central_quotient(h: &HopfPresentation, c: &[i64], s: i64) -> Result<HopfPresentation, HopfError> {
    if c.len() != h.group_rank() {
        return Err(HopfError::Parameter("central element has the wrong length".into()));
    }
    if !is_central(h, c) {
        return Err(HopfError::NotCentral(c.to_vec()));
    }
    let mut rows: Vec<Vec<i64>> = h.smash.group.relations().to_vec();
    rows.push(c.iter().map(|x| x * s).collect());
    let group = GroupLattice::new(h.group_rank(), &rows)?;
    let smash = Smash::new(group.clone(), h.smash.conj.clone(), h.root_order())?;
    let reduce = |p: &GPoly| {
        let mut out = GPoly::zero();
        for ((w, g), x) in &p.terms {
            out.add_term((w.clone(), group.reduce(g)), x.clone());
        }
        out
    };
    let relations: Vec<GPoly> = h.relations.iter().map(|r| reduce(r)).filter(|r| !r.is_zero()).collect();
    let rewrite = match &h.rewrite {
        Some(rs) => Some(RewriteSystem::new(rs.rules.iter().map(|(l, r)| (l.clone(), reduce(r))).collect())?),
        None => None,
    };
    let skew = h
        .skew
        .iter()
        .map(|x| SkewGen { name: x.name.clone(), left: group.reduce(&x.left), right: group.reduce(&x.right) })
        .collect();
    let ratio = h.group_order() / group.order();
    let mut params = h.params.clone();
    params.insert("central".into(), format!("{:?}^{}", c, s));
    let q = HopfPresentation {
        name: format!("{}/(c^{} - 1)", h.name, s),
        params,
        smash,
        group_names: h.group_names.clone(),
        skew,
        relations,
        rewrite,
        claimed_dim: h.claimed_dim.map(|d| d / ratio),
        cartan: h.cartan.clone(),
        dim_cap: h.dim_cap,
    };
    q.check_basic()?;
    Ok(q)
}

/// Images of the generators of a presentation: grouplikes first, then skew generators.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    pub group: Vec<GPoly>,
    pub skew: Vec<GPoly>,
}

impl GeneratorMap {
    /// Image of p ∈ H under the algebra map determined by the generator images.
    pub fn apply(&self, src: &HopfPresentation, dst: &HopfPresentation, p: &GPoly) -> GPoly {
        let s = &dst.smash;
        let mut cache: HashMap<Vec<i64>, GPoly> = HashMap::new();
        let mut out = GPoly::zero();
        for ((w, g), c) in &p.terms {
            let gi = cache
                .entry(g.clone())
                .or_insert_with(|| {
                    let mut acc = s.one();
                    for (i, &k) in g.iter().enumerate() {
                        let k = k.rem_euclid(src.smash.group.elem_order(&unit(g.len(), i)) as i64);
                        for _ in 0..k {
                            acc = s.mul(&acc, &self.group[i]);
                        }
                    }
                    acc
                })
                .clone();
            let mut acc = gi;
            for &x in &w.0 {
                acc = s.mul(&acc, &self.skew[x as usize]);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    pub fn apply_ncpoly(&self, dst: &HopfPresentation, p: &NCPoly) -> GPoly {
        let s = &dst.smash;
        let ng = self.group.len();
        let mut out = GPoly::zero();
        for (w, c) in &p.terms {
            let mut acc = s.one();
            for &l in &w.0 {
                let img = if (l as usize) < ng { &self.group[l as usize] } else { &self.skew[l as usize - ng] };
                acc = s.mul(&acc, img);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    pub fn apply_tensor(&self, src: &HopfPresentation, dst: &HopfPresentation, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (legs, c) in &t.terms {
            let imgs: Vec<GPoly> = legs.iter().map(|k| self.apply(src, dst, &src.smash.key(k.clone()))).collect();
            out = out.add(&Tensor::pure(&imgs).scale(c));
        }
        out
    }
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Verdict {
    Pass,
    Fail(String),
    /// A truncated reducer left a remainder it cannot certify either way.
    Inconclusive(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    /// φ of every defining relation of the source vanishes in the target.
    pub relations: Vec<Verdict>,
    pub coproducts: Vec<Verdict>,
    pub counits: Vec<bool>,
    pub dims: (Option<u64>, Option<u64>),
    pub inverse: Option<Verdict>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(Verdict::passed)
            && self.coproducts.iter().all(Verdict::passed)
            && self.counits.iter().all(|&b| b)
            && self.dims.0.is_some()
            && self.dims.0 == self.dims.1
            && self.inverse.as_ref().map_or(true, Verdict::passed)
    }
}

fn vanishes(h: &HopfPresentation, p: &GPoly) -> Verdict {
    let red = h.reducer();
    match red.reduce(p) {
        Ok(nf) if nf.is_zero() => Verdict::Pass,
        Ok(nf) if red.is_exact() => Verdict::Fail(h.fmt_poly(&nf)),
        Ok(nf) => Verdict::Inconclusive(h.fmt_poly(&nf)),
        Err(e) => Verdict::Inconclusive(e.to_string()),
    }
}

fn tensor_vanishes(h: &HopfPresentation, t: &Tensor) -> Verdict {
    let red = h.reducer();
    match red.tensor_normal_form(t) {
        Ok(nf) if nf.is_zero() => Verdict::Pass,
        Ok(nf) if red.is_exact() => Verdict::Fail(h.fmt_tensor(&nf)),
        Ok(nf) => Verdict::Inconclusive(h.fmt_tensor(&nf)),
        Err(e) => Verdict::Inconclusive(e.to_string()),
    }
}

/// All generators of `h` as group-layer elements, grouplikes first.
fn generator_elements(h: &HopfPresentation) -> Vec<GPoly> {
    let mut out: Vec<GPoly> = (0..h.group_rank()).map(|i| h.g(i)).collect();
    out.extend((0..h.smash.nx).map(|i| h.x(i)));
    out
}

fn generator_coproduct(h: &HopfPresentation, k: usize) -> Tensor {
    let r = h.group_rank();
    if k < r {
        Tensor::pure(&[h.g(k), h.g(k)])
    } else {
        h.coproduct_gen(k - r)
    }
}

/// Check that `map` defines a Hopf algebra isomorphism h1 → h2.
///
/// `coproduct` overrides Δ on the target (for example a twisted coproduct computed
/// independently); `inverse` is a candidate inverse map h2 → h1.
pub fn hopf_iso_check(
    map: &GeneratorMap,
    h1: &HopfPresentation,
    h2: &HopfPresentation,
    coproduct: Option<&dyn Fn(&GPoly) -> Tensor>,
    inverse: Option<&GeneratorMap>,
) -> IsoReport {
    let mut rep =
        IsoReport { relations: Vec::new(), coproducts: Vec::new(), counits: Vec::new(), dims: (h1.dimension(), h2.dimension()), inverse: None };
    for rel in h1.relation_polys() {
        rep.relations.push(vanishes(h2, &map.apply_ncpoly(h2, &rel)));
    }
    let gens = generator_elements(h1);
    for (k, a) in gens.iter().enumerate() {
        let img = map.apply(h1, h2, a);
        let lhs = map.apply_tensor(h1, h2, &generator_coproduct(h1, k));
        let rhs = match coproduct {
            Some(f) => f(&img),
            None => h2.coproduct_raw(&img),
        };
        rep.coproducts.push(tensor_vanishes(h2, &lhs.sub(&rhs)));
        rep.counits.push(h1.counit(a) == h2.counit(&img));
    }
    if let Some(inv) = inverse {
        let mut verdict = Verdict::Pass;
        for rel in h2.relation_polys() {
            let v = vanishes(h1, &inv.apply_ncpoly(h1, &rel));
            if !v.passed() {
                verdict = v;
                break;
            }
        }
        if verdict.passed() {
            for a in &gens {
                let back = inv.apply(h2, h1, &map.apply(h1, h2, a));
                let v = vanishes(h1, &back.sub(a));
                if !v.passed() {
                    verdict = v;
                    break;
                }
            }
        }
        if verdict.passed() {
            for b in generator_elements(h2) {
                let back = map.apply(h1, h2, &inv.apply(h2, h1, &b));
                let v = vanishes(h2, &back.sub(&b));
                if !v.passed() {
                    verdict = v;
                    break;
                }
            }
        }
        rep.inverse = Some(verdict);
    }
    rep
}
