//! Catalog presentations.

use super::{CartanData, HopfError, HopfPresentation, SkewGen};
use crate::ncalg::{GPoly, GroupLattice, RewriteSystem, Smash};
use crate::scalars::CycNum;
use num_integer::Integer;
use std::collections::BTreeMap;

struct Draft {
    name: String,
    params: BTreeMap<String, String>,
    group: GroupLattice,
    group_names: Vec<String>,
    conj: Vec<Vec<i64>>,
    m: u32,
    skew: Vec<SkewGen>,
    claimed_dim: Option<u64>,
    cartan: Option<CartanData>,
    dim_cap: usize,
}

impl Draft {
    fn new(name: &str, group: GroupLattice, group_names: &[&str], m: u32) -> Draft {
        Draft {
            name: name.into(),
            params: BTreeMap::new(),
            group,
            group_names: group_names.iter().map(|s| s.to_string()).collect(),
            conj: Vec::new(),
            m,
            skew: Vec::new(),
            claimed_dim: None,
            cartan: None,
            dim_cap: 6,
        }
    }

    fn param(mut self, k: &str, v: impl ToString) -> Draft {
        self.params.insert(k.into(), v.to_string());
        self
    }

    fn skew(&mut self, name: &str, conj: Vec<i64>, left: Vec<i64>, right: Vec<i64>) {
        self.conj.push(conj);
        let left = self.group.reduce(&left);
        let right = self.group.reduce(&right);
        self.skew.push(SkewGen { name: name.into(), left, right });
    }

    fn smash(&self) -> Result<Smash, HopfError> {
        Ok(Smash::new(self.group.clone(), self.conj.clone(), self.m)?)
    }

    /// Finish with relations built against the group layer; `orient` adds a rewrite system.
    fn finish<F>(self, orient: bool, rels: F) -> Result<HopfPresentation, HopfError>
    where
        F: FnOnce(&Smash) -> Vec<GPoly>,
    {
        let smash = self.smash()?;
        let relations = rels(&smash);
        let rewrite = if orient {
            let mut rules = Vec::new();
            for r in &relations {
                match RewriteSystem::orient(r) {
                    Some(rule) => rules.push(rule),
                    None => return Err(HopfError::Parameter("relation has no monic leading word".into())),
                }
            }
            Some(RewriteSystem::new(rules)?)
        } else {
            None
        };
        let h = HopfPresentation {
            name: self.name,
            params: self.params,
            smash,
            group_names: self.group_names,
            skew: self.skew,
            relations,
            rewrite,
            claimed_dim: self.claimed_dim,
            cartan: self.cartan,
            dim_cap: self.dim_cap,
        };
        h.check_basic()?;
        Ok(h)
    }
}

/// A skew generator as raw data: name, conjugation exponents, left and right grouplikes.
pub type SkewSpec = (String, Vec<i64>, Vec<i64>, Vec<i64>);

/// A presentation from raw data. A rewrite system is attached when every relation has a
/// monic leading word.
pub fn assemble<F>(
    name: &str,
    params: BTreeMap<String, String>,
    group: GroupLattice,
    group_names: Vec<String>,
    m: u32,
    skew: Vec<SkewSpec>,
    rels: F,
) -> Result<HopfPresentation, HopfError>
where
    F: FnOnce(&Smash) -> Vec<GPoly>,
{
    let names: Vec<&str> = group_names.iter().map(|s| s.as_str()).collect();
    let mut d = Draft::new(name, group, &names, m);
    d.params = params;
    for (x, conj, left, right) in skew {
        d.skew(&x, conj, left, right);
    }
    let smash = d.smash()?;
    let relations = rels(&smash);
    let orient = relations.iter().all(|r| RewriteSystem::orient(r).is_some());
    d.finish(orient, move |_| relations)
}

fn need(cond: bool, msg: &str) -> Result<(), HopfError> {
    if cond {
        Ok(())
    } else {
        Err(HopfError::Parameter(msg.into()))
    }
}

fn odd_root(m: u32) -> Result<(), HopfError> {
    need(m >= 3 && m % 2 == 1, "q must be a root of unity of odd order m ≥ 3")
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// x^k as a group-layer element.
fn xpow(s: &Smash, i: usize, k: usize) -> GPoly {
    s.word(&vec![i as u16; k])
}

/// The Taft algebra T(n): g^n = 1, x^n = 0, gx = ζxg, x is (g,1)-skew primitive.
pub fn taft(n: u32) -> Result<HopfPresentation, HopfError> {
    need(n >= 2, "Taft algebras need n ≥ 2")?;
    let mut d = Draft::new(&format!("T({n})"), GroupLattice::cyclic_product(&[n as u64]), &["g"], n).param("n", n);
    d.skew("x", vec![1], vec![1], vec![0]);
    d.claimed_dim = Some((n * n) as u64);
    d.dim_cap = n as usize + 1;
    d.finish(true, |s| vec![xpow(s, 0, n as usize)])
}

/// The Nichols Hopf algebra E(n): g² = 1, x_i² = 0, x_i x_j = −x_j x_i, gx_i = −x_i g.
pub fn nichols_e(n: u32) -> Result<HopfPresentation, HopfError> {
    need(n >= 1, "E(n) needs n ≥ 1")?;
    let mut d = Draft::new(&format!("E({n})"), GroupLattice::cyclic_product(&[2]), &["g"], 2).param("n", n);
    for i in 0..n {
        d.skew(&format!("x{}", i + 1), vec![1], vec![1], vec![0]);
    }
    d.claimed_dim = Some(1u64 << (n + 1));
    d.dim_cap = n as usize + 1;
    d.finish(true, |s| {
        let mut rels = Vec::new();
        for i in 0..n as u16 {
            rels.push(s.word(&[i, i]));
            for j in i + 1..n as u16 {
                rels.push(s.word(&[i, j]).add(&s.word(&[j, i])));
            }
        }
        rels
    })
}

/// Generalized Taft algebra T(n, m, α): g^n = 1, x^m = α(g^m − 1), gx = qxg with q = ζ_n^{n/m}.
pub fn gen_taft(n: u32, m: u32, alpha: CycNum) -> Result<HopfPresentation, HopfError> {
    need(n >= 2 && m >= 2, "T(n, m, α) needs n, m ≥ 2")?;
    need(n % m == 0, "m must divide n")?;
    let mut d = Draft::new(&format!("T({n},{m},{alpha})"), GroupLattice::cyclic_product(&[n as u64]), &["g"], n)
        .param("n", n)
        .param("m", m)
        .param("alpha", &alpha);
    d.skew("x", vec![(n / m) as i64], vec![1], vec![0]);
    d.claimed_dim = Some((n * m) as u64);
    d.dim_cap = m as usize + 1;
    d.finish(true, move |s| {
        let lift = s.g(&[m as i64]).sub(&s.one()).scale(&alpha);
        vec![xpow(s, 0, m as usize).sub(&lift)]
    })
}

/// Book algebra h(ζ, p): x₁ is (1,g), x₂ is (g^p,1), gx₁ = ζx₁g, gx₂ = ζ^p x₂ g.
pub fn book(n: u32, p: u32) -> Result<HopfPresentation, HopfError> {
    need(n >= 2, "book algebras need n ≥ 2")?;
    need(p >= 1 && p < n && p.gcd(&n) == 1, "p must satisfy 1 ≤ p < n with gcd(p, n) = 1")?;
    let mut d = Draft::new(&format!("h(zeta_{n},{p})"), GroupLattice::cyclic_product(&[n as u64]), &["g"], n)
        .param("n", n)
        .param("p", p);
    d.skew("x1", vec![1], vec![0], vec![1]);
    d.skew("x2", vec![p as i64], vec![p as i64], vec![0]);
    d.claimed_dim = Some((n as u64).pow(3));
    d.dim_cap = 2 * n as usize;
    d.finish(true, |s| {
        vec![xpow(s, 0, n as usize), xpow(s, 1, n as usize), s.word(&[1, 0]).sub(&s.word(&[0, 1]))]
    })
}

/// The 81-dimensional algebra with (xy − ωyx)³ = 0 among its relations.
pub fn h81() -> Result<HopfPresentation, HopfError> {
    let mut d = Draft::new("H81", GroupLattice::cyclic_product(&[3]), &["g"], 3);
    d.skew("x", vec![1], vec![1], vec![0]);
    d.skew("y", vec![1], vec![1], vec![0]);
    d.claimed_dim = Some(81);
    d.dim_cap = 12;
    d.finish(false, |s| {
        let w = CycNum::zeta(3, 1);
        let c = s.word(&[0, 1]).sub(&s.word(&[1, 0]).scale(&w));
        vec![
            xpow(s, 0, 3),
            xpow(s, 1, 3),
            s.word(&[0, 0, 1]).add(&s.word(&[0, 1, 0])).add(&s.word(&[1, 0, 0])),
            s.word(&[1, 1, 0]).add(&s.word(&[1, 0, 1])).add(&s.word(&[0, 1, 1])),
            s.pow(&c, 3),
        ]
    })
}

/// Root order and q-exponent with ord(q²) = m: q = ζ_m for odd m, q = ζ_{2m} otherwise.
fn q_for_square_order(m: u32) -> u32 {
    if m % 2 == 1 {
        m
    } else {
        2 * m
    }
}

/// λ(k − k^{-1})/(q − q^{-1}) for the grouplike k = g^a.
fn cartan_term(s: &Smash, k: &[i64], lambda: &CycNum) -> GPoly {
    let q = s.zeta(1);
    let denom = q.sub(&q.inv().unwrap()).inv().expect("q² ≠ 1");
    let kinv: Vec<i64> = k.iter().map(|x| -x).collect();
    s.g(k).sub(&s.g(&kinv)).scale(&denom.mul(lambda))
}

/// H_λ: ef − fe = λ(k − k^{-1})/(q − q^{-1}), ke = q²ek, kf = q^{-2}fk, e^m = f^m = 0, k^m = 1.
/// For λ ≠ 0 this is u_q(sl₂).
pub fn uq_sl2(m: u32, lambda: CycNum) -> Result<HopfPresentation, HopfError> {
    need(m >= 2, "m ≥ 2")?;
    let root = q_for_square_order(m);
    let mut d = Draft::new(&format!("H_lambda(m={m},lambda={lambda})"), GroupLattice::cyclic_product(&[m as u64]), &["k"], root)
        .param("m", m)
        .param("lambda", &lambda);
    d.skew("e", vec![2], vec![1], vec![0]);
    d.skew("f", vec![-2], vec![0], vec![-1]);
    d.claimed_dim = Some((m as u64).pow(3));
    d.dim_cap = 2 * m as usize;
    d.finish(true, move |s| {
        let ef = s.word(&[0, 1]).sub(&s.word(&[1, 0]));
        vec![ef.sub(&cartan_term(s, &[1], &lambda)), xpow(s, 0, m as usize), xpow(s, 1, m as usize)]
    })
}

/// K_q with q = ζ_m^j: g^m = 1, x^m = y^m = 0, gx = qxg, gy = q^{-1}yg, yx − qxy = 1 − g².
pub fn kq(m: u32, j: u32) -> Result<HopfPresentation, HopfError> {
    need(m >= 2, "m ≥ 2")?;
    need(j.gcd(&m) == 1, "q = ζ_m^j must be primitive")?;
    let mut d = Draft::new(&format!("K_q(m={m},q=zeta^{j})"), GroupLattice::cyclic_product(&[m as u64]), &["g"], m)
        .param("m", m)
        .param("j", j);
    d.skew("x", vec![j as i64], vec![1], vec![0]);
    d.skew("y", vec![-(j as i64)], vec![1], vec![0]);
    d.claimed_dim = Some((m as u64).pow(3));
    d.dim_cap = 2 * m as usize;
    d.finish(true, move |s| {
        let q = s.zeta(j as i64);
        let lhs = s.word(&[1, 0]).sub(&s.word(&[0, 1]).scale(&q));
        let rhs = s.one().sub(&s.g(&[2]));
        vec![xpow(s, 0, m as usize), xpow(s, 1, m as usize), lhs.sub(&rhs)]
    })
}

pub fn uq_gl2(m: u32) -> Result<HopfPresentation, HopfError> {
    uq_gln(2, m)
}

/// u_q(gl_n) for n ≤ 3 with q = ζ_m; skew generators ordered e₁…e_{n−1}, f₁…f_{n−1}.
pub fn uq_gln(n: usize, m: u32) -> Result<HopfPresentation, HopfError> {
    need((2..=3).contains(&n), "u_q(gl_n) is provided for n = 2, 3")?;
    odd_root(m)?;
    let group = GroupLattice::cyclic_product(&vec![m as u64; n]);
    let names: Vec<String> = (1..=n).map(|i| format!("g{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut d = Draft::new(&format!("u_q(gl{n},m={m})"), group, &name_refs, m).param("n", n).param("m", m);
    let r = n - 1;
    let k = |j: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[j] = 1;
        v[j + 1] = -1;
        v
    };
    for j in 0..r {
        d.skew(&format!("e{}", j + 1), k(j), k(j), vec![0; n]);
    }
    for j in 0..r {
        d.skew(&format!("f{}", j + 1), k(j).iter().map(|x| -x).collect(), vec![0; n], k(j).iter().map(|x| -x).collect());
    }
    d.claimed_dim = Some((m as u64).pow((n * n) as u32));
    d.dim_cap = 2 * m as usize;
    d.cartan = Some(CartanData::type_a(r));
    let mu = m as usize;
    d.finish(n == 2, move |s| {
        let e = |i: usize| i as u16;
        let f = |i: usize| (r + i) as u16;
        let q = s.zeta(1);
        let qq = q.add(&q.inv().unwrap());
        let mut rels = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let mut rel = s.word(&[e(i), f(j)]).sub(&s.word(&[f(j), e(i)]));
                if i == j {
                    rel = rel.sub(&cartan_term(s, &k(i), &CycNum::one()));
                }
                rels.push(rel);
            }
        }
        for (a, b) in [(0usize, 1usize), (1, 0)] {
            if r == 2 {
                for off in [0, r] {
                    let (x, y) = ((off + a) as u16, (off + b) as u16);
                    let serre = s.word(&[x, x, y]).sub(&s.word(&[x, y, x]).scale(&qq)).add(&s.word(&[y, x, x]));
                    rels.push(serre);
                }
            }
        }
        for i in 0..r {
            rels.push(xpow(s, e(i) as usize, mu));
            rels.push(xpow(s, f(i) as usize, mu));
        }
        if r == 2 {
            let qi = q.inv().unwrap();
            let e12 = s.word(&[e(0), e(1)]).sub(&s.word(&[e(1), e(0)]).scale(&qi));
            let f12 = s.word(&[f(1), f(0)]).sub(&s.word(&[f(0), f(1)]).scale(&q));
            rels.push(s.pow(&e12, mu));
            rels.push(s.pow(&f12, mu));
        }
        rels
    })
}

/// u'_q(gl₂) with q = ζ_m^j.
pub fn uq_prime_gl2(m: u32, j: u32) -> Result<HopfPresentation, HopfError> {
    need(m >= 2, "m ≥ 2")?;
    need(j.gcd(&m) == 1, "q = ζ_m^j must be primitive")?;
    let group = GroupLattice::cyclic_product(&[m as u64, m as u64]);
    let mut d = Draft::new(&format!("u'_q(gl2,m={m},q=zeta^{j})"), group, &["gamma1", "gamma2"], m).param("m", m).param("j", j);
    let jj = j as i64;
    d.skew("x1", vec![jj, jj], vec![1, 0], vec![0, 0]);
    d.skew("x2", vec![-jj, -jj], vec![0, 1], vec![0, 0]);
    d.claimed_dim = Some((m as u64).pow(4));
    d.dim_cap = 2 * m as usize;
    d.finish(true, move |s| {
        let q = s.zeta(jj);
        let lhs = s.word(&[1, 0]).sub(&s.word(&[0, 1]).scale(&q));
        let rhs = s.one().sub(&s.g(&[1, 1]));
        vec![xpow(s, 0, m as usize), xpow(s, 1, m as usize), lhs.sub(&rhs)]
    })
}

fn check_borel_cartan(c: &CartanData) -> Result<(), HopfError> {
    need(c.rank() >= 1 && c.rank() <= 2, "Borel parts are provided for rank ≤ 2")?;
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            need(i == j || c.a[i][j] == 0 || c.a[i][j] == -1, "Borel parts are provided for simply-laced Cartan data")?;
        }
    }
    Ok(())
}

/// Serre relations and root-vector powers in the e-letters 0..r.
fn borel_relations(s: &Smash, c: &CartanData, m: usize) -> Vec<GPoly> {
    let r = c.rank();
    let q = s.zeta(1);
    let mut rels = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let (x, y) = (i as u16, j as u16);
            if c.a[i][j] == 0 {
                if i < j {
                    rels.push(s.word(&[y, x]).sub(&s.word(&[x, y])));
                }
            } else {
                let qi = q.pow(c.d[i]);
                let qq = qi.add(&qi.inv().unwrap());
                rels.push(s.word(&[x, x, y]).sub(&s.word(&[x, y, x]).scale(&qq)).add(&s.word(&[y, x, x])));
            }
        }
    }
    for i in 0..r {
        rels.push(xpow(s, i, m));
    }
    if r == 2 && c.a[0][1] == -1 {
        let e12 = s.word(&[0, 1]).sub(&s.word(&[1, 0]).scale(&q.inv().unwrap()));
        rels.push(s.pow(&e12, m));
    }
    rels
}

fn borel_dim(c: &CartanData, m: u32) -> u64 {
    let pos = c.rank() + if c.rank() == 2 && c.a[0][1] != 0 { 1 } else { 0 };
    (m as u64).pow((c.rank() + pos) as u32)
}

/// u_q^{≥0}(g): grouplikes k_i, (k_i,1)-skew primitives e_i with k_i e_j k_i^{-1} = q^{d_i a_ij} e_j.
pub fn borel(cartan: &CartanData, m: u32) -> Result<HopfPresentation, HopfError> {
    check_borel_cartan(cartan)?;
    odd_root(m)?;
    let r = cartan.rank();
    let names: Vec<String> = (1..=r).map(|i| format!("k{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut d = Draft::new(&format!("u_q^+(rank {r},m={m})"), GroupLattice::cyclic_product(&vec![m as u64; r]), &name_refs, m).param("m", m);
    for j in 0..r {
        let conj: Vec<i64> = (0..r).map(|i| cartan.d[i] * cartan.a[i][j]).collect();
        d.skew(&format!("e{}", j + 1), conj, unit(r, j), vec![0; r]);
    }
    d.claimed_dim = Some(borel_dim(cartan, m));
    d.dim_cap = 3 * m as usize;
    d.cartan = Some(cartan.clone());
    let c = cartan.clone();
    d.finish(r == 1, move |s| borel_relations(s, &c, m as usize))
}

/// Adjoint type: grouplikes g_i with g_i e_j g_i^{-1} = q^{δ_ij} e_j and k_i = Π_j g_j^{d_i a_ij}.
pub fn adjoint_borel(cartan: &CartanData, m: u32) -> Result<HopfPresentation, HopfError> {
    check_borel_cartan(cartan)?;
    odd_root(m)?;
    let r = cartan.rank();
    let names: Vec<String> = (1..=r).map(|i| format!("g{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut d = Draft::new(&format!("u~_q^+(rank {r},m={m})"), GroupLattice::cyclic_product(&vec![m as u64; r]), &name_refs, m).param("m", m);
    for j in 0..r {
        let k: Vec<i64> = (0..r).map(|l| cartan.d[j] * cartan.a[j][l]).collect();
        d.skew(&format!("e{}", j + 1), unit(r, j), k, vec![0; r]);
    }
    d.claimed_dim = Some(borel_dim(cartan, m));
    d.dim_cap = 3 * m as usize;
    d.cartan = Some(cartan.clone());
    let c = cartan.clone();
    d.finish(r == 1, move |s| borel_relations(s, &c, m as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_violations() {
        assert!(taft(1).is_err());
        assert!(gen_taft(6, 4, CycNum::one()).is_err());
        assert!(book(6, 2).is_err());
        assert!(uq_gln(2, 4).is_err());
    }

    #[test]
    fn book_group_is_cyclic() {
        let h = book(5, 1).unwrap();
        assert_eq!(h.group_rank(), 1);
        assert_eq!(h.group_order(), 5);
    }
}
