//! Exact polynomial arithmetic in the variables `x_v`, one per vertex `v`.
//!
//! Polynomials are stored order-free (terms keyed by a canonical monomial
//! representation); every order-dependent operation takes a [`VertexOrder`]
//! and compares monomials through [`VertexOrder::lex_key`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Interval, LatticeError, Point};
use crate::order::VertexOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A monomial `∏ x_v^{e_v}` with positive exponents, sorted by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Monomial {
    vars: Vec<(Point, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Point) -> Self {
        Monomial { vars: vec![(v, 1)] }
    }

    pub fn from_exponents<I: IntoIterator<Item = (Point, u32)>>(it: I) -> Self {
        let mut map: BTreeMap<Point, u32> = BTreeMap::new();
        for (v, e) in it {
            *map.entry(v).or_default() += e;
        }
        Monomial {
            vars: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    /// Product of the given variables, with multiplicity.
    pub fn product<I: IntoIterator<Item = Point>>(vars: I) -> Self {
        Monomial::from_exponents(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn exponents(&self) -> &[(Point, u32)] {
        &self.vars
    }

    pub fn exponent(&self, v: Point) -> u32 {
        self.vars
            .binary_search_by_key(&v, |&(p, _)| p)
            .map(|k| self.vars[k].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.vars.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.vars.iter().all(|&(_, e)| e == 1)
    }

    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.vars.iter().map(|&(v, _)| v)
    }

    /// Variables with multiplicity, in vertex order.
    pub fn factors(&self) -> Vec<Point> {
        self.vars
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat(v).take(e as usize))
            .collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        merge(&self.vars, &other.vars, |a, b| a + b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        merge(&self.vars, &other.vars, |a, b| a.max(b))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        merge(&self.vars, &other.vars, |a, b| a.min(b))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let mut it = other.vars.iter().peekable();
        'outer: for &(v, e) in &self.vars {
            while let Some(&&(w, f)) = it.peek() {
                it.next();
                if w == v {
                    if f < e {
                        return false;
                    }
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let vars = other
            .vars
            .iter()
            .filter_map(|&(v, e)| {
                let r = e - self.exponent(v);
                (r > 0).then_some((v, r))
            })
            .collect();
        Some(Monomial { vars })
    }
}

fn merge(a: &[(Point, u32)], b: &[(Point, u32)], f: impl Fn(u32, u32) -> u32) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        let (v, e) = match (a.get(x), b.get(y)) {
            (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                x += 1;
                y += 1;
                (va, f(ea, eb))
            }
            (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                x += 1;
                (va, f(ea, 0))
            }
            (Some(_), Some(&(vb, eb))) => {
                y += 1;
                (vb, f(0, eb))
            }
            (Some(&(va, ea)), None) => {
                x += 1;
                (va, f(ea, 0))
            }
            (None, Some(&(vb, eb))) => {
                y += 1;
                (vb, f(0, eb))
            }
            (None, None) => unreachable!(),
        };
        if e > 0 {
            out.push((v, e));
        }
    }
    Monomial { vars: out }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.vars.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x_{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl From<Monomial> for String {
    fn from(m: Monomial) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Monomial {
    type Error = PolyError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl FromStr for Monomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p: Polynomial = s.parse()?;
        match p.terms.into_iter().collect::<Vec<_>>().as_slice() {
            [(m, c)] if c.is_one() => Ok(m.clone()),
            _ => Err(PolyError::Parse {
                pos: 0,
                msg: "expected a single monomial".into(),
            }),
        }
    }
}

/// A polynomial with arbitrary-precision integer coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c.into());
        p
    }

    /// `m⁺ − m⁻`.
    pub fn binomial(plus: Monomial, minus: Monomial) -> Self {
        let mut p = Polynomial::monomial(plus, 1);
        p.add_term(minus, BigInt::from(-1));
        p
    }

    /// The inner 2-minor `x_a x_b − x_c x_d` of a proper interval.
    pub fn inner_minor(iv: &Interval) -> Result<Self, PolyError> {
        let k = iv.corners()?;
        Ok(Polynomial::binomial(
            Monomial::product([k.a, k.b]),
            Monomial::product([k.c, k.d]),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Binomial in the strict sense: two terms with coefficients `+1` and `−1`.
    pub fn is_binomial(&self) -> bool {
        let mut cs: Vec<&BigInt> = self.terms.values().collect();
        cs.sort();
        self.terms.len() == 2 && *cs[0] == BigInt::from(-1) && cs[1].is_one()
    }

    /// For a binomial, the monomials with coefficient `+1` and `−1`.
    pub fn binomial_parts(&self) -> Option<(Monomial, Monomial)> {
        if !self.is_binomial() {
            return None;
        }
        let mut plus = None;
        let mut minus = None;
        for (m, c) in &self.terms {
            if c.is_positive() {
                plus = Some(m.clone());
            } else {
                minus = Some(m.clone());
            }
        }
        Some((plus?, minus?))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &other.terms {
            for (t, d) in &self.terms {
                out.add_term(t.mul(m), d * c);
            }
        }
        out
    }

    /// Leading monomial and coefficient under the lexicographic order induced by `ord`.
    pub fn leading_term(&self, ord: &VertexOrder) -> Result<(Monomial, BigInt), PolyError> {
        self.terms
            .iter()
            .max_by(|x, y| ord.cmp_monomials(x.0, y.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &VertexOrder) -> Result<Monomial, PolyError> {
        Ok(self.leading_term(ord)?.0)
    }

    /// Terms sorted from greatest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &VertexOrder) -> Vec<(Monomial, BigInt)> {
        let mut ts: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (ord.lex_key(m), m.clone(), c.clone()))
            .collect();
        ts.sort_by(|x, y| y.0.cmp(&x.0));
        ts.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    /// Sign-normalized copy: leading coefficient made positive under `ord`.
    pub fn normalized(&self, ord: &VertexOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Renders the terms in descending order under `ord`.
    pub fn render(&self, ord: &VertexOrder) -> String {
        render_terms(&self.sorted_terms(ord))
    }
}

fn render_terms(terms: &[(Monomial, BigInt)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        if k == 0 {
            if c.is_negative() {
                s.push('-');
            }
        } else if c.is_negative() {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        if m.is_one() {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&m.to_string());
        }
    }
    s
}

impl fmt::Display for Polynomial {
    /// Order-free rendering (terms in canonical storage order).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<_> = self.terms.iter().rev().map(|(m, c)| (m.clone(), c.clone())).collect();
        f.write_str(&render_terms(&ts))
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { src: s.as_bytes(), pos: 0 }.polynomial()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), PolyError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected integer")
            }
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        let mut p = Polynomial::zero();
        let mut sign = BigInt::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, c * &sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigInt::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigInt::one();
                }
                None => return Ok(p),
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), PolyError> {
        let mut coef = BigInt::one();
        let mut factors = Vec::new();
        let mut first = true;
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    self.expect(b'_')?;
                    self.expect(b'(')?;
                    let i = self.integer()?;
                    self.expect(b',')?;
                    let j = self.integer()?;
                    self.expect(b')')?;
                    let (i, j) = match (i64::try_from(i), i64::try_from(j)) {
                        (Ok(i), Ok(j)) => (i, j),
                        _ => return self.err("coordinate out of range"),
                    };
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = match u32::try_from(self.integer()?) {
                            Ok(e) => e,
                            Err(_) => return self.err("bad exponent"),
                        };
                    }
                    factors.push((Point::new(i, j), e));
                }
                Some(b) if b.is_ascii_digit() && first => {
                    coef = self.integer()?;
                }
                _ => return self.err("expected a variable x_(i,j) or a coefficient"),
            }
            first = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((Monomial::from_exponents(factors), coef));
            }
        }
    }
}

/// `S(f, g) = (L / lt f)·f − (L / lt g)·g` with `L = lcm(lm f, lm g)`,
/// scaled to stay integral when leading coefficients are not units.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &VertexOrder) -> Result<Polynomial, PolyError> {
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    let l = mf.lcm(&mg);
    let lc = num_integer_lcm(&cf, &cg);
    let left = f.scale(&(&lc / &cf), &mf.quotient_of(&l).unwrap());
    let right = g.scale(&(&lc / &cg), &mg.quotient_of(&l).unwrap());
    Ok(left.sub(&right))
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.abs().lcm(&b.abs())
}

/// A divisor list prepared for repeated reductions under a fixed order.
#[derive(Debug, Clone)]
pub struct Reducer<'a> {
    basis: &'a [Polynomial],
    ord: &'a VertexOrder,
    leads: Vec<(Monomial, BigInt)>,
}

impl<'a> Reducer<'a> {
    pub fn new(basis: &'a [Polynomial], ord: &'a VertexOrder) -> Result<Self, PolyError> {
        let leads = basis
            .iter()
            .map(|g| g.leading_term(ord))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Reducer { basis, ord, leads })
    }

    pub fn leads(&self) -> &[(Monomial, BigInt)] {
        &self.leads
    }

    fn first_divisor(&self, m: &Monomial) -> Option<usize> {
        self.leads.iter().position(|(l, _)| l.divides(m))
    }

    /// Full normal form: repeatedly rewrites the greatest reducible term with
    /// the first basis element (in stored order) whose leading monomial divides it.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.normal_form_traced(p).0
    }

    /// Normal form together with the multipliers `q_k` such that
    /// `p = Σ q_k·g_k + c·remainder` with `c` a positive integer (1 for unit leading coefficients).
    pub fn normal_form_traced(&self, p: &Polynomial) -> (Polynomial, Vec<Polynomial>, BigInt) {
        let mut cur = p.clone();
        let mut quotients = vec![Polynomial::zero(); self.basis.len()];
        let mut scale = BigInt::one();
        loop {
            let step = cur
                .sorted_terms(self.ord)
                .into_iter()
                .find_map(|(m, c)| self.first_divisor(&m).map(|k| (m, c, k)));
            let Some((m, c, k)) = step else {
                return (cur, quotients, scale);
            };
            let (lm, lc) = &self.leads[k];
            let q = lm.quotient_of(&m).unwrap();
            let g = num_integer_lcm(&c, lc);
            let mult_cur = &g / c.abs();
            if !mult_cur.is_one() {
                cur = cur.scale(&mult_cur, &Monomial::one());
                for qk in quotients.iter_mut() {
                    *qk = qk.scale(&mult_cur, &Monomial::one());
                }
                scale *= &mult_cur;
            }
            let coef = cur.coefficient(&m) / lc;
            let sub = self.basis[k].scale(&coef, &q);
            cur = cur.sub(&sub);
            quotients[k].add_term(q, coef);
        }
    }

    /// True when some sequence of reduction steps (any term, any applicable
    /// divisor) takes `p` to zero. Exhaustive search with memoisation; gives
    /// up with `None` after `budget` explored polynomials.
    pub fn reduces_to_zero(&self, p: &Polynomial, budget: usize) -> Option<bool> {
        let mut dead: HashSet<Polynomial> = HashSet::new();
        let mut explored = 0usize;
        self.search(p, &mut dead, &mut explored, budget)
    }

    fn search(
        &self,
        p: &Polynomial,
        dead: &mut HashSet<Polynomial>,
        explored: &mut usize,
        budget: usize,
    ) -> Option<bool> {
        if p.is_zero() {
            return Some(true);
        }
        let key = p.normalized(self.ord);
        if dead.contains(&key) {
            return Some(false);
        }
        *explored += 1;
        if *explored > budget {
            return None;
        }
        for (m, c) in p.sorted_terms(self.ord) {
            for (k, (lm, lc)) in self.leads.iter().enumerate() {
                let Some(q) = lm.quotient_of(&m) else { continue };
                let g = num_integer_lcm(&c, lc);
                let base = p.scale(&(&g / c.abs()), &Monomial::one());
                let coef = base.coefficient(&m) / lc;
                let next = base.sub(&self.basis[k].scale(&coef, &q));
                if self.search(&next, dead, explored, budget)? {
                    return Some(true);
                }
            }
        }
        dead.insert(key);
        Some(false)
    }
}

/// Normal form of `p` modulo `basis` under the deterministic strategy of [`Reducer::normal_form`].
pub fn reduce(p: &Polynomial, basis: &[Polynomial], ord: &VertexOrder) -> Result<Polynomial, PolyError> {
    Ok(Reducer::new(basis, ord)?.normal_form(p))
}
