//! Text format for presentations and actions.
//!
//! ```text
//! hopf T3 over cyclotomic(3) params (n=3) {
//!   group g : order 3;
//!   skew x : (g, 1);
//!   rel g*x = zeta*x*g;
//!   rel x^3 = 0;
//! }
//! action on qpoly(z) {
//!   g . z = zeta^-1*z;
//!   x . z = 1;
//! }
//! ```
//!
//! Commutation relations `g*x = c*x*g` fix the conjugation exponents; group-only
//! relations must already hold in the declared group. In an action block, grouplike
//! images that are not given fix the variable and skew images that are not given are 0.

use crate::action::{elem_add, elem_scale, ActionSpec, Elem, GeneratorOperator, QPoly, Target};
use crate::hopf::catalog::{assemble, SkewSpec};
use crate::hopf::HopfPresentation;
use crate::ncalg::{GPoly, GroupLattice, NCPoly, Smash, Word};
use crate::scalars::CycNum;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Option<Pos>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "{p}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for Diagnostic {}

fn err<T>(pos: Option<Pos>, message: impl Into<String>) -> Result<T, Diagnostic> {
    Err(Diagnostic { pos, message: message.into() })
}

/// An identifier with the place it was written; equality ignores the place.
#[derive(Clone, Debug)]
pub struct Name {
    pub text: String,
    pub pos: Option<Pos>,
}

impl Name {
    pub fn new(text: &str) -> Name {
        Name { text: text.into(), pos: None }
    }
}

impl PartialEq for Name {
    fn eq(&self, o: &Name) -> bool {
        self.text == o.text
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(u64),
    Frac(u64, u64),
    Sym(Name),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ActionDoc {
    pub vars: Vec<Name>,
    pub commutation: Vec<(Expr, Expr)>,
    pub laurent: Vec<Name>,
    pub images: Vec<(Name, Name, Expr)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PresentationDoc {
    pub name: Name,
    pub root: u32,
    pub params: Vec<(Name, Expr)>,
    pub groups: Vec<(Name, u64)>,
    pub skews: Vec<(Name, Expr, Expr)>,
    pub relations: Vec<(Expr, Expr)>,
    pub action: Option<ActionDoc>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Punct(char),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let mut lx = Lexer { chars: text.chars().peekable(), line: 1, col: 1 };
    let mut out = Vec::new();
    while let Some(&c) = lx.chars.peek() {
        let pos = Pos { line: lx.line, col: lx.col };
        if c == '\n' {
            lx.bump();
            lx.line += 1;
            lx.col = 1;
        } else if c.is_whitespace() {
            lx.bump();
        } else if c == '/' && lx.second_is('/') {
            while lx.chars.peek().is_some_and(|&c| c != '\n') {
                lx.bump();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = lx.chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                lx.bump();
            }
            let v = s.parse().map_err(|_| Diagnostic { pos: Some(pos), message: format!("integer literal {s} is too large") })?;
            out.push((Tok::Int(v), pos));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = lx.chars.peek().filter(|d| d.is_alphanumeric() || **d == '_' || **d == '\'') {
                s.push(d);
                lx.bump();
            }
            out.push((Tok::Ident(s), pos));
        } else if "{}();:,=*^+-./".contains(c) {
            lx.bump();
            out.push((Tok::Punct(c), pos));
        } else {
            return err(Some(pos), format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

impl Lexer<'_> {
    fn bump(&mut self) {
        self.chars.next();
        self.col += 1;
    }

    fn second_is(&self, c: char) -> bool {
        let mut it = self.chars.clone();
        it.next();
        it.next() == Some(c)
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn describe(&self) -> String {
        match self.peek() {
            Some(Tok::Ident(s)) => format!("'{s}'"),
            Some(Tok::Int(v)) => format!("'{v}'"),
            Some(Tok::Punct(c)) => format!("'{c}'"),
            None => "end of input".into(),
        }
    }

    fn expected<T>(&self, what: &str) -> Result<T, Diagnostic> {
        err(Some(self.pos()), format!("expected {what}, found {}", self.describe()))
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Punct(c))
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn punct(&mut self, c: char) -> Result<(), Diagnostic> {
        if self.is_punct(c) {
            self.at += 1;
            Ok(())
        } else {
            self.expected(&format!("'{c}'"))
        }
    }

    fn kw(&mut self, kw: &str) -> Result<(), Diagnostic> {
        if self.is_kw(kw) {
            self.at += 1;
            Ok(())
        } else {
            self.expected(&format!("'{kw}'"))
        }
    }

    fn ident(&mut self) -> Result<Name, Diagnostic> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let n = Name { text: s.clone(), pos: Some(pos) };
                self.at += 1;
                Ok(n)
            }
            _ => self.expected("a name"),
        }
    }

    fn int(&mut self) -> Result<u64, Diagnostic> {
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.at += 1;
                Ok(v)
            }
            _ => self.expected("an integer"),
        }
    }

    fn doc(&mut self) -> Result<PresentationDoc, Diagnostic> {
        self.kw("hopf")?;
        let name = self.ident()?;
        self.kw("over")?;
        self.kw("cyclotomic")?;
        self.punct('(')?;
        let rpos = self.pos();
        let root = self.int()?;
        if root == 0 || root > 10_000 {
            return err(Some(rpos), "root order must be between 1 and 10000");
        }
        self.punct(')')?;
        let mut params = Vec::new();
        if self.is_kw("params") {
            self.at += 1;
            self.punct('(')?;
            loop {
                let k = self.ident()?;
                self.punct('=')?;
                params.push((k, self.expr()?));
                if self.is_punct(',') {
                    self.at += 1;
                } else {
                    break;
                }
            }
            self.punct(')')?;
        }
        self.punct('{')?;
        let (mut groups, mut skews, mut relations) = (Vec::new(), Vec::new(), Vec::new());
        while !self.is_punct('}') {
            if self.is_kw("group") {
                self.at += 1;
                let g = self.ident()?;
                self.punct(':')?;
                self.kw("order")?;
                let opos = self.pos();
                let n = self.int()?;
                if n == 0 {
                    return err(Some(opos), "group order must be positive");
                }
                self.punct(';')?;
                groups.push((g, n));
            } else if self.is_kw("skew") {
                self.at += 1;
                let x = self.ident()?;
                self.punct(':')?;
                self.punct('(')?;
                let l = self.expr()?;
                self.punct(',')?;
                let r = self.expr()?;
                self.punct(')')?;
                self.punct(';')?;
                skews.push((x, l, r));
            } else if self.is_kw("rel") {
                self.at += 1;
                let l = self.expr()?;
                self.punct('=')?;
                let r = self.expr()?;
                self.punct(';')?;
                relations.push((l, r));
            } else {
                return self.expected("'group', 'skew', 'rel' or '}'");
            }
        }
        self.punct('}')?;
        let action = if self.is_kw("action") { Some(self.action()?) } else { None };
        if self.peek().is_some() {
            return self.expected("end of input");
        }
        Ok(PresentationDoc { name, root: root as u32, params, groups, skews, relations, action })
    }

    fn action(&mut self) -> Result<ActionDoc, Diagnostic> {
        self.kw("action")?;
        self.kw("on")?;
        self.kw("qpoly")?;
        self.punct('(')?;
        let mut vars = vec![self.ident()?];
        while self.is_punct(',') {
            self.at += 1;
            vars.push(self.ident()?);
        }
        let (mut commutation, mut laurent) = (Vec::new(), Vec::new());
        while self.is_punct(';') {
            self.at += 1;
            if self.is_kw("commutation") {
                self.at += 1;
                loop {
                    let l = self.expr()?;
                    self.punct('=')?;
                    commutation.push((l, self.expr()?));
                    if self.is_punct(',') {
                        self.at += 1;
                    } else {
                        break;
                    }
                }
            } else if self.is_kw("laurent") {
                self.at += 1;
                laurent.push(self.ident()?);
                while self.is_punct(',') {
                    self.at += 1;
                    laurent.push(self.ident()?);
                }
            } else {
                return self.expected("'commutation' or 'laurent'");
            }
        }
        self.punct(')')?;
        self.punct('{')?;
        let mut images = Vec::new();
        while !self.is_punct('}') {
            let g = self.ident()?;
            self.punct('.')?;
            let z = self.ident()?;
            self.punct('=')?;
            let e = self.expr()?;
            self.punct(';')?;
            images.push((g, z, e));
        }
        self.punct('}')?;
        Ok(ActionDoc { vars, commutation, laurent, images })
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut terms = vec![self.term()?];
        loop {
            if self.is_punct('+') {
                self.at += 1;
                terms.push(self.term()?);
            } else if self.is_punct('-') {
                self.at += 1;
                terms.push(Expr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        if self.is_punct('-') {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut fs = vec![self.unary()?];
        while self.is_punct('*') {
            self.at += 1;
            fs.push(self.unary()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Expr::Prod(fs) })
    }

    fn unary(&mut self) -> Result<Expr, Diagnostic> {
        if self.is_punct('-') {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.is_punct('^') {
            self.at += 1;
            let neg = self.is_punct('-');
            if neg {
                self.at += 1;
            }
            let pos = self.pos();
            let k = self.int()?;
            let k = i64::try_from(k).ok().filter(|&k| k <= 1 << 20).ok_or_else(|| Diagnostic { pos: Some(pos), message: "exponent too large".into() })?;
            return Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let n = self.int()?;
                if self.is_punct('/') {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.int()?;
                    if d == 0 {
                        return err(Some(pos), "division by zero");
                    }
                    return Ok(Expr::Frac(n, d));
                }
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(_)) => Ok(Expr::Sym(self.ident()?)),
            Some(Tok::Punct('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.punct(')')?;
                Ok(e)
            }
            _ => self.expected("an expression"),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<PresentationDoc, Diagnostic> {
    let toks = lex(text)?;
    let lines = text.split('\n').count();
    let end = Pos { line: lines, col: text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1 };
    Parser { toks, at: 0, end }.doc()
}

/// A scalar such as `0`, `1/2`, `zeta^2` or `1 - q` in Q(ζ_root).
pub fn parse_scalar(text: &str, root: u32) -> Result<CycNum, Diagnostic> {
    let toks = lex(text)?;
    let end = Pos { line: 1, col: text.chars().count() + 1 };
    let mut p = Parser { toks, at: 0, end };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.expected("end of scalar");
    }
    Scope { root, params: BTreeMap::new(), groups: &[], skews: Vec::new() }.scalar(&e)
}

// printing

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Sum(_) => 0,
        Expr::Neg(_) => 1,
        Expr::Prod(_) => 2,
        Expr::Pow(..) | Expr::Frac(..) => 3,
        Expr::Int(_) | Expr::Sym(_) => 4,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Frac(n, d) => write!(f, "{n}/{d}"),
            Expr::Sym(s) => write!(f, "{}", s.text),
            Expr::Neg(e) => write!(f, "-{}", wrap(e, 2)),
            Expr::Sum(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    match (i, t) {
                        (0, _) => write!(f, "{}", wrap(t, 1))?,
                        (_, Expr::Neg(inner)) => write!(f, " - {}", wrap(inner, 2))?,
                        _ => write!(f, " + {}", wrap(t, 2))?,
                    }
                }
                Ok(())
            }
            Expr::Prod(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| wrap(x, 3)).collect();
                write!(f, "{}", parts.join("*"))
            }
            Expr::Pow(b, k) => write!(f, "{}^{k}", wrap(b, 4)),
        }
    }
}

impl fmt::Display for PresentationDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hopf {} over cyclotomic({})", self.name.text, self.root)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{}={v}", k.text)).collect();
            write!(f, " params ({})", ps.join(", "))?;
        }
        writeln!(f, " {{")?;
        for (g, n) in &self.groups {
            writeln!(f, "  group {} : order {n};", g.text)?;
        }
        for (x, l, r) in &self.skews {
            writeln!(f, "  skew {} : ({l}, {r});", x.text)?;
        }
        for (l, r) in &self.relations {
            writeln!(f, "  rel {l} = {r};")?;
        }
        writeln!(f, "}}")?;
        if let Some(a) = &self.action {
            let vs: Vec<&str> = a.vars.iter().map(|v| v.text.as_str()).collect();
            write!(f, "action on qpoly({}", vs.join(", "))?;
            if !a.commutation.is_empty() {
                let cs: Vec<String> = a.commutation.iter().map(|(l, r)| format!("{l} = {r}")).collect();
                write!(f, "; commutation {}", cs.join(", "))?;
            }
            if !a.laurent.is_empty() {
                let ls: Vec<&str> = a.laurent.iter().map(|v| v.text.as_str()).collect();
                write!(f, "; laurent {}", ls.join(", "))?;
            }
            writeln!(f, ") {{")?;
            for (g, z, e) in &a.images {
                writeln!(f, "  {} . {} = {e};", g.text, z.text)?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}

// lowering

/// Scalars: integers, fractions, zeta, q and parameters, closed under + − * and powers.
struct Scope<'a> {
    root: u32,
    params: BTreeMap<String, CycNum>,
    groups: &'a [(Name, u64)],
    skews: Vec<String>,
}

impl Scope<'_> {
    fn scalar(&self, e: &Expr) -> Result<CycNum, Diagnostic> {
        Ok(match e {
            Expr::Int(n) => CycNum::from_int(*n as i64),
            Expr::Frac(n, d) => CycNum::from_frac(*n as i64, *d as i64),
            Expr::Sym(s) => match self.params.get(&s.text) {
                Some(v) => v.clone(),
                None if s.text == "zeta" => CycNum::zeta(self.root, 1),
                None if s.text == "q" => CycNum::zeta(self.root, 1),
                None => return err(s.pos, format!("'{}' is not a scalar", s.text)),
            },
            Expr::Neg(x) => self.scalar(x)?.neg(),
            Expr::Sum(ts) => ts.iter().try_fold(CycNum::zero(), |a, t| Ok::<_, Diagnostic>(a.add(&self.scalar(t)?)))?,
            Expr::Prod(fs) => fs.iter().try_fold(CycNum::one(), |a, t| Ok::<_, Diagnostic>(a.mul(&self.scalar(t)?)))?,
            Expr::Pow(b, k) => {
                let b = self.scalar(b)?;
                if *k < 0 && b.is_zero() {
                    return err(None, "zero raised to a negative power");
                }
                b.pow(*k)
            }
        })
    }

    fn group_index(&self, s: &str) -> Option<usize> {
        self.groups.iter().position(|(g, _)| g.text == s)
    }

    /// A group word such as g1^2*g2^-1 or 1, as an exponent vector.
    fn group_word(&self, e: &Expr) -> Result<Vec<i64>, Diagnostic> {
        let r = self.groups.len();
        match e {
            Expr::Int(1) => Ok(vec![0; r]),
            Expr::Sym(s) => match self.group_index(&s.text) {
                Some(i) => {
                    let mut v = vec![0; r];
                    v[i] = 1;
                    Ok(v)
                }
                None => err(s.pos, format!("'{}' is not a declared grouplike", s.text)),
            },
            Expr::Prod(fs) => {
                let mut v = vec![0; r];
                for f in fs {
                    for (a, b) in v.iter_mut().zip(self.group_word(f)?) {
                        *a += b;
                    }
                }
                Ok(v)
            }
            Expr::Pow(b, k) => Ok(self.group_word(b)?.iter().map(|x| x * k).collect()),
            _ => err(first_pos(e), format!("'{e}' is not a group word")),
        }
    }

    fn is_generator(&self, s: &str) -> bool {
        self.group_index(s).is_some() || self.skews.iter().any(|x| x == s)
    }

    /// An element of the free algebra on grouplikes and skew letters; g^-k is read as g^{n-k}.
    fn nc(&self, e: &Expr) -> Result<NCPoly, Diagnostic> {
        let r = self.groups.len() as u16;
        Ok(match e {
            Expr::Sym(s) if self.is_generator(&s.text) => match self.group_index(&s.text) {
                Some(i) => NCPoly::word(&[i as u16]),
                None => NCPoly::word(&[r + self.skews.iter().position(|x| *x == s.text).unwrap() as u16]),
            },
            Expr::Sym(s) if !self.params.contains_key(&s.text) && s.text != "zeta" && s.text != "q" => {
                return err(s.pos, format!("undeclared generator '{}'", s.text));
            }
            Expr::Neg(x) => self.nc(x)?.scale(&CycNum::from_int(-1)),
            Expr::Sum(ts) => ts.iter().try_fold(NCPoly::zero(), |a, t| Ok::<_, Diagnostic>(a.add(&self.nc(t)?)))?,
            Expr::Prod(fs) => fs.iter().try_fold(NCPoly::one(), |a, t| Ok::<_, Diagnostic>(a.mul(&self.nc(t)?)))?,
            Expr::Pow(b, k) => match (&**b, *k) {
                (Expr::Sym(s), k) if k < 0 && self.group_index(&s.text).is_some() => {
                    let i = self.group_index(&s.text).unwrap();
                    let n = self.groups[i].1 as i64;
                    NCPoly::word(&vec![i as u16; k.rem_euclid(n) as usize])
                }
                (_, k) if k >= 0 => self.nc(b)?.pow(k as usize),
                _ if self.mentions_generator(b) => return err(first_pos(b), "negative powers are allowed only on grouplikes"),
                _ => NCPoly::one().scale(&self.scalar(e)?),
            },
            _ => NCPoly::one().scale(&self.scalar(e)?),
        })
    }

    fn mentions_generator(&self, e: &Expr) -> bool {
        match e {
            Expr::Sym(s) => self.is_generator(&s.text),
            Expr::Neg(x) | Expr::Pow(x, _) => self.mentions_generator(x),
            Expr::Sum(v) | Expr::Prod(v) => v.iter().any(|x| self.mentions_generator(x)),
            _ => false,
        }
    }
}

fn first_pos(e: &Expr) -> Option<Pos> {
    match e {
        Expr::Sym(s) => s.pos,
        Expr::Neg(x) | Expr::Pow(x, _) => first_pos(x),
        Expr::Sum(v) | Expr::Prod(v) => v.iter().find_map(first_pos),
        _ => None,
    }
}

fn single_term(p: &NCPoly) -> Option<(&Word, &CycNum)> {
    if p.terms.len() == 1 {
        p.terms.iter().next()
    } else {
        None
    }
}

fn check_unique(names: &[&Name]) -> Result<(), Diagnostic> {
    for (i, a) in names.iter().enumerate() {
        if names[..i].iter().any(|b| b.text == a.text) {
            return err(a.pos, format!("'{}' is declared twice", a.text));
        }
        if ["zeta", "q"].contains(&a.text.as_str()) {
            return err(a.pos, format!("'{}' is reserved for scalars", a.text));
        }
    }
    Ok(())
}

impl PresentationDoc {
    fn scope(&self) -> Result<Scope<'_>, Diagnostic> {
        let mut scope = Scope { root: self.root, params: BTreeMap::new(), groups: &self.groups, skews: Vec::new() };
        for (k, v) in &self.params {
            let val = scope.scalar(v)?;
            scope.params.insert(k.text.clone(), val);
        }
        scope.skews = self.skews.iter().map(|x| x.0.text.clone()).collect();
        Ok(scope)
    }

    pub fn to_presentation(&self) -> Result<HopfPresentation, Diagnostic> {
        let names: Vec<&Name> = self.groups.iter().map(|g| &g.0).chain(self.skews.iter().map(|x| &x.0)).collect();
        check_unique(&names)?;
        let scope = self.scope()?;
        let r = self.groups.len();
        let orders: Vec<u64> = self.groups.iter().map(|g| g.1).collect();
        let group = GroupLattice::cyclic_product(&orders);
        let mut conj: Vec<Vec<Option<i64>>> = vec![vec![None; r]; self.skews.len()];
        let mut rest: Vec<(NCPoly, Option<Pos>)> = Vec::new();
        for (l, rhs) in &self.relations {
            let (a, b) = (scope.nc(l)?, scope.nc(rhs)?);
            let pos = first_pos(l).or(first_pos(rhs));
            // g*x = c*x*g
            if let (Some((wa, ca)), Some((wb, cb))) = (single_term(&a), single_term(&b)) {
                if let ([p, s], [s2, p2]) = (wa.0.as_slice(), wb.0.as_slice()) {
                    if (*p as usize) < r && *s as usize >= r && p == p2 && s == s2 {
                        let c = cb.div(ca).unwrap();
                        let Some(e) = c.root_exponent(self.root) else {
                            return err(pos, format!("commutation scalar {c} is not a power of zeta{}", self.root));
                        };
                        conj[*s as usize - r][*p as usize] = Some(e as i64);
                        continue;
                    }
                }
            }
            rest.push((a.sub(&b), pos));
        }
        let mut skew: Vec<SkewSpec> = Vec::new();
        for (k, (x, l, rt)) in self.skews.iter().enumerate() {
            let mut row = Vec::new();
            for (i, c) in conj[k].iter().enumerate() {
                match c {
                    Some(e) => row.push(*e),
                    None => {
                        return err(x.pos, format!("missing commutation relation {g}*{x} = c*{x}*{g}", g = self.groups[i].0.text, x = x.text))
                    }
                }
            }
            skew.push((x.text.clone(), row, scope.group_word(l)?, scope.group_word(rt)?));
        }
        let mut params = BTreeMap::new();
        for (k, v) in &self.params {
            params.insert(k.text.clone(), v.to_string());
        }
        // group-only relations must hold already; the others become ideal generators
        let mut bad: Option<Diagnostic> = None;
        let h = assemble(&self.name.text, params, group, self.groups.iter().map(|g| g.0.text.clone()).collect(), self.root, skew, |s: &Smash| {
            let mut out = Vec::new();
            for (p, pos) in &rest {
                let g = s.from_ncpoly(p);
                if g.is_zero() {
                    continue;
                }
                if s.weight_of(&g).is_none() && bad.is_none() {
                    bad = Some(Diagnostic { pos: *pos, message: "relation is not homogeneous for the grouplike conjugation".into() });
                }
                if p.terms.keys().all(|w| w.0.iter().all(|&l| (l as usize) < r)) && bad.is_none() {
                    bad = Some(Diagnostic { pos: *pos, message: "group relation does not hold for the declared orders".into() });
                }
                out.push(g);
            }
            out
        })
        .map_err(|e| Diagnostic { pos: None, message: e.to_string() })?;
        if let Some(d) = bad {
            return Err(d);
        }
        let mut h = h;
        h.dim_cap = h.relations.iter().map(|r| r.degree() + 2).max().unwrap_or(0).max(6);
        Ok(h)
    }

    pub fn to_action(&self, h: &HopfPresentation) -> Result<Option<ActionSpec<QPoly>>, Diagnostic> {
        let Some(a) = &self.action else { return Ok(None) };
        let vars: Vec<&Name> = a.vars.iter().collect();
        check_unique(&vars)?;
        let scope = self.scope()?;
        let names: Vec<&str> = a.vars.iter().map(|v| v.text.as_str()).collect();
        let var = |n: &Name| {
            a.vars.iter().position(|v| v.text == n.text).ok_or_else(|| Diagnostic { pos: n.pos, message: format!("undeclared variable '{}'", n.text) })
        };
        let mut target = QPoly::commutative(&names);
        for l in &a.laurent {
            target.laurent[var(l)?] = true;
        }
        for (l, rhs) in &a.commutation {
            let bad = || Diagnostic { pos: first_pos(l), message: "commutation entries read zi*zj = c*zj*zi".into() };
            let (ca, wa) = flat_monomial(&scope, l).ok_or_else(bad)?;
            let (cb, wb) = flat_monomial(&scope, rhs).ok_or_else(bad)?;
            let [i, j] = wa[..] else { return Err(bad()) };
            if wb.len() != 2 || wb[0].text != j.text || wb[1].text != i.text || i.text == j.text {
                return Err(bad());
            }
            let (i, j) = (var(i)?, var(j)?);
            let c = cb.div(&ca).ok_or_else(bad)?;
            if i < j {
                target.comm[i][j] = c;
            } else {
                target.comm[j][i] = c.inv().ok_or_else(bad)?;
            }
        }
        let k = a.vars.len();
        let gens = h.symbol_names();
        let r = h.group_rank();
        let mut images: Vec<Vec<Option<Elem<CycNum>>>> = vec![vec![None; k]; gens.len()];
        for (g, z, e) in &a.images {
            let gi = gens.iter().position(|x| *x == g.text).ok_or_else(|| Diagnostic { pos: g.pos, message: format!("undeclared generator '{}'", g.text) })?;
            let zi = var(z)?;
            if images[gi][zi].is_some() {
                return err(g.pos, format!("image of {}.{} given twice", g.text, z.text));
            }
            images[gi][zi] = Some(target_elem(&scope, &target, &a.vars, e)?);
        }
        let mut ops = Vec::new();
        for (gi, row) in images.into_iter().enumerate() {
            let row: Vec<Elem<CycNum>> = row
                .into_iter()
                .enumerate()
                .map(|(zi, e)| {
                    e.unwrap_or_else(|| {
                        if gi < r {
                            let mut key = vec![0; k];
                            key[zi] = 1;
                            Elem::from([(key, CycNum::one())])
                        } else {
                            Elem::new()
                        }
                    })
                })
                .collect();
            ops.push(if gi < r {
                GeneratorOperator::Automorphism { images: row }
            } else {
                let x = &h.skew[gi - r];
                GeneratorOperator::SkewDerivation { left: x.left.clone(), right: x.right.clone(), images: row }
            });
        }
        ActionSpec::new(h.clone(), target, ops).map(Some).map_err(|e| Diagnostic { pos: None, message: e.to_string() })
    }
}

/// c · z_{i1} z_{i2} … for a product of scalars and variables.
fn flat_monomial<'e>(scope: &Scope, e: &'e Expr) -> Option<(CycNum, Vec<&'e Name>)> {
    match e {
        Expr::Sym(s) if !scope.params.contains_key(&s.text) && s.text != "zeta" && s.text != "q" => Some((CycNum::one(), vec![s])),
        Expr::Prod(fs) => {
            let mut c = CycNum::one();
            let mut w = Vec::new();
            for f in fs {
                let (c2, w2) = flat_monomial(scope, f)?;
                c = c.mul(&c2);
                w.extend(w2);
            }
            Some((c, w))
        }
        _ => scope.scalar(e).ok().map(|c| (c, Vec::new())),
    }
}

fn target_elem(scope: &Scope, t: &QPoly, vars: &[Name], e: &Expr) -> Result<Elem<CycNum>, Diagnostic> {
    let k = vars.len();
    Ok(match e {
        Expr::Sym(s) if vars.iter().any(|v| v.text == s.text) => {
            let mut key = vec![0; k];
            key[vars.iter().position(|v| v.text == s.text).unwrap()] = 1;
            Elem::from([(key, CycNum::one())])
        }
        Expr::Neg(x) => elem_scale(&target_elem(scope, t, vars, x)?, &CycNum::from_int(-1)),
        Expr::Sum(ts) => {
            let mut acc = Elem::new();
            for x in ts {
                acc = elem_add(&acc, &target_elem(scope, t, vars, x)?);
            }
            acc
        }
        Expr::Prod(fs) => {
            let mut acc = Elem::from([(vec![0; k], CycNum::one())]);
            for x in fs {
                acc = t.mul(&acc, &target_elem(scope, t, vars, x)?);
            }
            acc
        }
        Expr::Pow(b, p) => match &**b {
            Expr::Sym(s) if vars.iter().any(|v| v.text == s.text) => {
                let i = vars.iter().position(|v| v.text == s.text).unwrap();
                if *p < 0 && !t.laurent[i] {
                    return err(s.pos, format!("negative power of '{}', which is not declared laurent", s.text));
                }
                let mut key = vec![0; k];
                key[i] = *p;
                Elem::from([(key, CycNum::one())])
            }
            _ if *p >= 0 => {
                let base = target_elem(scope, t, vars, b)?;
                let mut acc = Elem::from([(vec![0; k], CycNum::one())]);
                for _ in 0..*p {
                    acc = t.mul(&acc, &base);
                }
                acc
            }
            _ => Elem::from([(vec![0; k], scope.scalar(e)?)]),
        },
        _ => {
            let c = scope.scalar(e)?;
            if c.is_zero() {
                Elem::new()
            } else {
                Elem::from([(vec![0; k], c)])
            }
        }
    })
}

// documents from presentations

fn scalar_expr(c: &CycNum, root: u32) -> Result<Expr, Diagnostic> {
    if root % c.order() != 0 {
        return err(None, format!("scalar {c} does not lie in Q(zeta{root})"));
    }
    let c = c.lift(root);
    let zeta = Expr::Sym(Name::new("zeta"));
    let power = |k: u32| if k == 1 { zeta.clone() } else { Expr::Pow(Box::new(zeta.clone()), k as i64) };
    if c.as_rational().is_none() {
        if let Some(k) = c.root_exponent(root) {
            return Ok(power(k));
        }
        if let Some(k) = c.neg().root_exponent(root) {
            return Ok(Expr::Neg(Box::new(power(k))));
        }
    }
    let mut terms = Vec::new();
    for (i, a) in c.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        let n = mag.numer().to_u64().expect("small coefficient");
        let d = mag.denom().to_u64().expect("small coefficient");
        let num = if d == 1 { Expr::Int(n) } else { Expr::Frac(n, d) };
        let z = match i {
            0 => None,
            1 => Some(Expr::Sym(Name::new("zeta"))),
            _ => Some(Expr::Pow(Box::new(Expr::Sym(Name::new("zeta"))), i as i64)),
        };
        let t = match z {
            None => num,
            Some(z) if mag.is_one() => z,
            Some(z) => Expr::Prod(vec![num, z]),
        };
        terms.push(if a.is_negative() { Expr::Neg(Box::new(t)) } else { t });
    }
    Ok(match terms.len() {
        0 => Expr::Int(0),
        1 => terms.pop().unwrap(),
        _ => Expr::Sum(terms),
    })
}

/// Σ c·x^a·y^b… with the coefficient first and a leading minus pulled out.
fn linear_combination<'a>(terms: impl Iterator<Item = (Vec<Expr>, &'a CycNum)>, root: u32) -> Result<Expr, Diagnostic> {
    let mut out = Vec::new();
    for (mut fs, c) in terms {
        let (neg, coef) = match scalar_expr(c, root)? {
            Expr::Neg(x) => (true, *x),
            e => (false, e),
        };
        let t = match (fs.is_empty(), coef == Expr::Int(1)) {
            (true, _) => coef,
            (false, true) if fs.len() == 1 => fs.pop().unwrap(),
            (false, true) => Expr::Prod(fs),
            (false, false) => {
                let mut all = vec![coef];
                all.extend(fs);
                Expr::Prod(all)
            }
        };
        out.push(if neg { Expr::Neg(Box::new(t)) } else { t });
    }
    Ok(match out.len() {
        0 => Expr::Int(0),
        1 => out.pop().unwrap(),
        _ => Expr::Sum(out),
    })
}

fn group_word_expr(names: &[String], g: &[i64]) -> Expr {
    let mut fs = Vec::new();
    for (i, &a) in g.iter().enumerate() {
        let s = Expr::Sym(Name::new(&names[i]));
        match a {
            0 => {}
            1 => fs.push(s),
            _ => fs.push(Expr::Pow(Box::new(s), a)),
        }
    }
    match fs.len() {
        0 => Expr::Int(1),
        1 => fs.pop().unwrap(),
        _ => Expr::Prod(fs),
    }
}

fn gpoly_expr(h: &HopfPresentation, p: &GPoly) -> Result<Expr, Diagnostic> {
    let names = h.symbol_names();
    let nc = h.smash.to_ncpoly(p);
    let terms = nc.terms.iter().map(|(w, c)| {
        let mut fs: Vec<Expr> = Vec::new();
        let mut i = 0;
        while i < w.0.len() {
            let mut j = i;
            while j < w.0.len() && w.0[j] == w.0[i] {
                j += 1;
            }
            let s = Expr::Sym(Name::new(&names[w.0[i] as usize]));
            fs.push(if j - i == 1 { s } else { Expr::Pow(Box::new(s), (j - i) as i64) });
            i = j;
        }
        (fs, c)
    });
    linear_combination(terms, h.smash.m)
}

fn elem_expr(vars: &[String], e: &Elem<CycNum>, root: u32) -> Result<Expr, Diagnostic> {
    let terms = e.iter().rev().map(|(k, c)| {
        let fs = k
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0)
            .map(|(i, &a)| {
                let s = Expr::Sym(Name::new(&vars[i]));
                if a == 1 {
                    s
                } else {
                    Expr::Pow(Box::new(s), a)
                }
            })
            .collect();
        (fs, c)
    });
    linear_combination(terms, root)
}

/// The action block for an action on a quantum polynomial algebra.
pub fn action_doc(a: &ActionSpec<QPoly>) -> Result<ActionDoc, Diagnostic> {
    let t = &a.target;
    let root = a.hopf.smash.m;
    let k = t.vars.len();
    let mut commutation = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if !t.comm[i][j].is_one() {
                let (zi, zj) = (Expr::Sym(Name::new(&t.vars[i])), Expr::Sym(Name::new(&t.vars[j])));
                let c = scalar_expr(&t.comm[i][j], root)?;
                let rhs = match c {
                    Expr::Neg(x) => Expr::Neg(Box::new(Expr::Prod(vec![*x, zj.clone(), zi.clone()]))),
                    c => Expr::Prod(vec![c, zj.clone(), zi.clone()]),
                };
                commutation.push((Expr::Prod(vec![zi, zj]), rhs));
            }
        }
    }
    let laurent = (0..k).filter(|&i| t.laurent[i]).map(|i| Name::new(&t.vars[i])).collect();
    let gens = a.hopf.symbol_names();
    let r = a.hopf.group_rank();
    let mut images = Vec::new();
    for (gi, op) in a.ops.iter().enumerate() {
        for (zi, img) in op.images().iter().enumerate() {
            let unchanged = if gi < r { img.len() == 1 && img.get(&t.gen(zi).into_keys().next().unwrap()).is_some_and(|c| c.is_one()) } else { img.is_empty() };
            if !unchanged {
                images.push((Name::new(&gens[gi]), Name::new(&t.vars[zi]), elem_expr(&t.vars, img, root)?));
            }
        }
    }
    Ok(ActionDoc { vars: t.vars.iter().map(|v| Name::new(v)).collect(), commutation, laurent, images })
}

/// The document of a presentation whose group is a product of cyclic groups.
pub fn presentation_doc(h: &HopfPresentation) -> Result<PresentationDoc, Diagnostic> {
    let rows = h.smash.group.relations();
    let r = h.group_rank();
    let diagonal = rows.len() == r && (0..r).all(|i| (0..r).all(|j| i == j || rows[i][j] == 0));
    if !diagonal {
        return err(None, format!("{} has a group that is not written as a product of cyclic groups", h.name));
    }
    let gnames = h.group_names.clone();
    let groups = (0..r).map(|i| (Name::new(&gnames[i]), rows[i][i] as u64)).collect();
    let skews = h.skew.iter().map(|x| (Name::new(&x.name), group_word_expr(&gnames, &x.left), group_word_expr(&gnames, &x.right))).collect();
    let mut relations = Vec::new();
    for (k, x) in h.skew.iter().enumerate() {
        for (i, g) in gnames.iter().enumerate() {
            let (gs, xs) = (Expr::Sym(Name::new(g)), Expr::Sym(Name::new(&x.name)));
            let e = h.smash.conj[k][i].rem_euclid(h.smash.m as i64);
            let c = match e {
                0 => None,
                1 => Some(Expr::Sym(Name::new("zeta"))),
                _ => Some(Expr::Pow(Box::new(Expr::Sym(Name::new("zeta"))), e)),
            };
            let mut rhs = c.into_iter().collect::<Vec<_>>();
            rhs.extend([xs.clone(), gs.clone()]);
            relations.push((Expr::Prod(vec![gs, xs]), Expr::Prod(rhs)));
        }
    }
    for p in &h.relations {
        relations.push((gpoly_expr(h, p)?, Expr::Int(0)));
    }
    let mut name = String::new();
    for c in h.name.chars() {
        if c.is_alphanumeric() {
            name.push(c);
        } else if !name.ends_with('_') {
            name.push('_');
        }
    }
    let name = name.trim_matches('_');
    let name = if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) { format!("h{name}") } else { name.to_string() };
    Ok(PresentationDoc { name: Name::new(&name), root: h.smash.m, params: Vec::new(), groups, skews, relations, action: None })
}

/// Whether two presentations have the same group, skew data and relation ideal generators.
pub fn same_presentation(a: &HopfPresentation, b: &HopfPresentation) -> bool {
    let norm = |p: &GPoly| {
        let lead = p.terms.iter().next_back().map(|(_, c)| c.clone()).unwrap_or_else(CycNum::one);
        p.scale(&lead.inv().unwrap())
    };
    let rels = |h: &HopfPresentation| {
        let mut v: Vec<String> = h.relations.iter().map(|p| format!("{:?}", norm(p).terms)).collect();
        v.sort();
        v
    };
    a.smash.m == b.smash.m
        && a.smash.group.relations() == b.smash.group.relations()
        && a.smash.conj == b.smash.conj
        && a.skew.len() == b.skew.len()
        && a.skew.iter().zip(&b.skew).all(|(x, y)| x.left == y.left && x.right == y.right)
        && rels(a) == rels(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::catalog as hc;

    const T3: &str = "hopf T3 over cyclotomic(3) params (n=3) {
  group g : order 3;
  skew x : (g, 1);
  rel g*x = zeta*x*g;
  rel x^3 = 0;
}
action on qpoly(z) {
  g . z = zeta^-1*z;
  x . z = 1;
}
";

    #[test]
    fn taft_three_from_text() {
        let doc = parse_presentation(T3).unwrap();
        let h = doc.to_presentation().unwrap();
        assert!(same_presentation(&h, &hc::taft(3).unwrap()));
        assert!(doc.to_action(&h).unwrap().is_some());
    }

    #[test]
    fn empty_input() {
        let e = parse_presentation("").unwrap_err();
        assert!(e.message.contains("expected 'hopf'"), "{e}");
    }

    #[test]
    fn undeclared_generator() {
        let text = T3.replace("rel x^3 = 0;", "rel y^3 = 0;");
        let e = parse_presentation(&text).unwrap().to_presentation().unwrap_err();
        assert!(e.message.contains("'y'"), "{e}");
        assert_eq!(e.pos, Some(Pos { line: 5, col: 7 }));
    }

    #[test]
    fn print_parse_is_identity() {
        let doc = parse_presentation(T3).unwrap();
        let again = parse_presentation(&doc.to_string()).unwrap();
        assert_eq!(doc, again);
    }
}
