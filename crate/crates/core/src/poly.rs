//! Exact multivariate polynomials over named coordinates.
//!
//! Coefficients are arbitrary-precision rationals. Terms are kept in a
//! `BTreeMap` keyed by exponent vectors ordered graded-lexicographically on the
//! declared coordinate order, so two polynomials over the same coordinates are
//! equal exactly when their term maps are equal. Zero coefficients are never
//! stored.
//!
//! Binary operations between polynomials over different coordinate lists align
//! them by name (see [`align_coords`]). The operator impls panic when the two
//! lists order shared names differently; the `try_*` methods return the error
//! instead.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact ground field element.
pub type Rational = BigRational;

/// Shared, immutable coordinate-name list.
pub type Coords = Arc<[String]>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coordinate lists {left:?} and {right:?} order shared names differently")]
    Alignment { left: Vec<String>, right: Vec<String> },
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("invalid coordinate name `{0}`")]
    InvalidCoordinate(String),
    #[error("duplicate coordinate name `{0}`")]
    DuplicateCoordinate(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds a checked coordinate list.
pub fn coords<S: AsRef<str>>(names: &[S]) -> Result<Coords, PolyError> {
    let mut out: Vec<String> = Vec::with_capacity(names.len());
    for n in names {
        let n = n.as_ref();
        if !is_identifier(n) {
            return Err(PolyError::InvalidCoordinate(n.to_string()));
        }
        if out.iter().any(|m| m == n) {
            return Err(PolyError::DuplicateCoordinate(n.to_string()));
        }
        out.push(n.to_string());
    }
    Ok(out.into())
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent multi-index. Ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponents in `n` variables of total degree exactly `weight`, in
/// descending graded-lex order (`x^2, x*y, y^2` for two variables).
pub fn monomial_basis(n: usize, weight: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    if n == 0 {
        if weight == 0 {
            out.push(Exponent(Vec::new()));
        }
        return out;
    }
    let mut cur = vec![0u32; n];
    fill_basis(&mut cur, 0, weight, &mut out);
    out
}

fn fill_basis(cur: &mut Vec<u32>, pos: usize, rest: u32, out: &mut Vec<Exponent>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(Exponent(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in (0..=rest).rev() {
        cur[pos] = e;
        fill_basis(cur, pos + 1, rest - e, out);
    }
    cur[pos] = 0;
}

/// All exponents of total degree `<= cap`, lowest degree first.
pub fn monomials_up_to(n: usize, cap: u32) -> Vec<Exponent> {
    (0..=cap).flat_map(|w| monomial_basis(n, w)).collect()
}

/// Returns a coordinate list containing both inputs as ordered subsequences.
///
/// Names of `b` missing from `a` are appended after `a`'s names. Fails when the
/// names the two lists share appear in different relative orders.
pub fn align_coords(a: &Coords, b: &Coords) -> Result<Coords, PolyError> {
    if Arc::ptr_eq(a, b) || a[..] == b[..] {
        return Ok(a.clone());
    }
    let shared_a: Vec<&String> = a.iter().filter(|n| b.contains(n)).collect();
    let shared_b: Vec<&String> = b.iter().filter(|n| a.contains(n)).collect();
    if shared_a != shared_b {
        return Err(PolyError::Alignment {
            left: a.to_vec(),
            right: b.to_vec(),
        });
    }
    if b.iter().all(|n| a.contains(n)) {
        return Ok(a.clone());
    }
    if a.iter().all(|n| b.contains(n)) {
        return Ok(b.clone());
    }
    let mut merged: Vec<String> = a.to_vec();
    merged.extend(b.iter().filter(|n| !a.contains(n)).cloned());
    Ok(merged.into())
}

#[derive(Clone)]
pub struct Polynomial {
    coords: Coords,
    terms: BTreeMap<Exponent, Rational>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({} over {:?})", self, &self.coords[..])
    }
}

impl Polynomial {
    pub fn zero(coords: &Coords) -> Self {
        Polynomial {
            coords: coords.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(coords: &Coords, c: Rational) -> Self {
        let mut p = Self::zero(coords);
        if !c.is_zero() {
            p.terms.insert(Exponent::zero(coords.len()), c);
        }
        p
    }

    pub fn one(coords: &Coords) -> Self {
        Self::constant(coords, Rational::one())
    }

    pub fn int(coords: &Coords, n: i64) -> Self {
        Self::constant(coords, rat(n))
    }

    pub fn var(coords: &Coords, name: &str) -> Result<Self, PolyError> {
        let i = coords
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| PolyError::UnknownCoordinate(name.to_string()))?;
        Ok(Self::var_index(coords, i))
    }

    pub fn var_index(coords: &Coords, i: usize) -> Self {
        let mut e = Exponent::zero(coords.len());
        e.0[i] = 1;
        Self::monomial(coords, e, Rational::one())
    }

    pub fn monomial(coords: &Coords, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), coords.len(), "exponent length");
        let mut p = Self::zero(coords);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms<I>(coords: &Coords, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(coords);
        for (e, c) in terms {
            assert_eq!(e.len(), coords.len(), "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponent::degree)
    }

    pub fn coefficient(&self, exp: &Exponent) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Re-expresses the polynomial over a coordinate list containing its own.
    pub fn with_coords(&self, target: &Coords) -> Result<Polynomial, PolyError> {
        if Arc::ptr_eq(&self.coords, target) || self.coords[..] == target[..] {
            return Ok(Polynomial {
                coords: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<usize> = self
            .coords
            .iter()
            .map(|n| {
                target
                    .iter()
                    .position(|t| t == n)
                    .ok_or_else(|| PolyError::UnknownCoordinate(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut ne = Exponent::zero(target.len());
            for (i, &k) in e.0.iter().enumerate() {
                ne.0[map[i]] = k;
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Renames coordinates positionally; the new list must have the same length.
    pub fn relabel(&self, target: &Coords) -> Polynomial {
        assert_eq!(self.coords.len(), target.len(), "relabel length");
        Polynomial {
            coords: target.clone(),
            terms: self.terms.clone(),
        }
    }

    fn aligned(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        let c = align_coords(&self.coords, &other.coords)?;
        Ok((self.with_coords(&c)?, other.with_coords(&c)?))
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if Arc::ptr_eq(&self.coords, &other.coords) || self.coords[..] == other.coords[..] {
            let mut out = self.clone();
            for (e, c) in &other.terms {
                out.add_term(e.clone(), c.clone());
            }
            return Ok(out);
        }
        let (a, b) = self.aligned(other)?;
        a.try_add(&b)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if Arc::ptr_eq(&self.coords, &other.coords) || self.coords[..] == other.coords[..] {
            let mut out = Polynomial::zero(&self.coords);
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    out.add_term(ea.mul(eb), ca * cb);
                }
            }
            return Ok(out);
        }
        let (a, b) = self.aligned(other)?;
        a.try_mul(&b)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.coords);
        }
        Polynomial {
            coords: self.coords.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.coords);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to the coordinate at `index`.
    pub fn partial_index(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.coords);
        for (e, c) in &self.terms {
            let k = e.0[index];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[index] = k - 1;
            out.add_term(ne, c * rat(k as i64));
        }
        out
    }

    pub fn partial(&self, coord: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .coords
            .iter()
            .position(|c| c == coord)
            .ok_or_else(|| PolyError::UnknownCoordinate(coord.to_string()))?;
        Ok(self.partial_index(i))
    }

    /// Applies the derivation `sum_a v[a] * d/dx_a`; `v` is indexed by this
    /// polynomial's coordinates.
    pub fn derive_along(&self, v: &[Polynomial]) -> Polynomial {
        assert_eq!(v.len(), self.coords.len(), "vector field length");
        let mut out = Polynomial::zero(&self.coords);
        for (a, va) in v.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            let d = self.partial_index(a);
            if !d.is_zero() {
                out += &(va * &d);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.coords.len(), "point length");
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Value at the origin of the chart.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Exponent::zero(self.coords.len()))
    }

    /// Substitutes `subs[i]` for the `i`-th coordinate. All substitutes must
    /// share one coordinate list, which becomes the result's.
    pub fn compose(&self, subs: &[Polynomial]) -> Polynomial {
        assert_eq!(subs.len(), self.coords.len(), "substitution length");
        let target = match subs.first() {
            Some(s) => s.coords.clone(),
            None => self.coords.clone(),
        };
        let subs: Vec<Polynomial> = subs
            .iter()
            .map(|s| s.with_coords(&target).expect("substitutes share coordinates"))
            .collect();
        eval_in(self, &subs, &Polynomial::one(&target))
    }

    /// The homogeneous component of total degree `w`.
    pub fn homogeneous_part(&self, w: u32) -> Polynomial {
        Polynomial {
            coords: self.coords.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == w)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by the least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        })
    }

    pub fn parse(src: &str, coords: &Coords) -> Result<Polynomial, PolyError> {
        Parser::new(src, coords).parse()
    }
}

/// Ring operations used to evaluate a polynomial with values in another ring.
pub(crate) trait EvalRing: Clone {
    fn ring_add(&mut self, other: &Self);
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_scale(&self, c: &Rational) -> Self;
}

impl EvalRing for Polynomial {
    fn ring_add(&mut self, other: &Self) {
        *self += other;
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

/// Evaluates `p` at `values` (one per coordinate) inside any ring with unit `one`.
pub(crate) fn eval_in<R: EvalRing>(p: &Polynomial, values: &[R], one: &R) -> R {
    let n = values.len();
    let mut powers: Vec<Vec<R>> = vec![vec![one.clone()]; n];
    let mut total: Option<R> = None;
    for (e, c) in &p.terms {
        let mut t = one.ring_scale(c);
        for i in 0..n {
            let k = e.0[i] as usize;
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k {
                let next = powers[i].last().unwrap().ring_mul(&values[i]);
                powers[i].push(next);
            }
            t = t.ring_mul(&powers[i][k]);
        }
        match total.as_mut() {
            Some(acc) => acc.ring_add(&t),
            None => total = Some(t),
        }
    }
    total.unwrap_or_else(|| one.ring_scale(&Rational::zero()))
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.coords[..] == other.coords[..] {
            return self.terms == other.terms;
        }
        match self.aligned(other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial coordinate alignment")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial coordinate alignment")
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial coordinate alignment")
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coords: self.coords.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if self.coords[..] == rhs.coords[..] {
            for (e, c) in &rhs.terms {
                self.add_term(e.clone(), c.clone());
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        if self.coords[..] == rhs.coords[..] {
            for (e, c) in &rhs.terms {
                self.add_term(e.clone(), -c.clone());
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &p) in e.0.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(self.coords[i].clone()),
                    _ => factors.push(format!("{}^{}", self.coords[i], p)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    coords: &'a Coords,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, coords: &'a Coords) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            coords,
        }
    }

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

    fn parse(mut self) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(self.coords);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                None if first => return self.err("empty polynomial"),
                None => break,
                _ if first => 1,
                Some(c) => return self.err(format!("expected `+` or `-`, found `{}`", c as char)),
            };
            first = false;
            let (e, c) = self.term()?;
            out.add_term(e, c * rat(sign));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Exponent, Rational), PolyError> {
        let mut coef = Rational::one();
        let mut exp = Exponent::zero(self.coords.len());
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coef *= self.number()?,
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let name = self.ident();
                    let i = match self.coords.iter().position(|n| *n == name) {
                        Some(i) => i,
                        None => return Err(PolyError::UnknownCoordinate(name)),
                    };
                    let mut k = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let start = self.pos;
                        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                            self.pos += 1;
                        }
                        if start == self.pos {
                            return self.err("expected exponent after `^`");
                        }
                        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                        k = match s.parse() {
                            Ok(k) => k,
                            Err(_) => return self.err("exponent out of range"),
                        };
                    }
                    exp.0[i] += k;
                }
                _ => return self.err("expected a coefficient or coordinate"),
            }
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok((exp, coef))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8(self.src[start..self.pos].to_vec()).unwrap()
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn number(&mut self) -> Result<Rational, PolyError> {
        let n = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.integer()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }
}

/// Parses a rational literal such as `3`, `-2/5`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let v = match body.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Rational::new(n.trim().parse().ok()?, d)
        }
        None => Rational::from_integer(body.parse().ok()?),
    };
    Some(if neg { -v } else { v })
}

pub fn rational_to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Coords {
        coords(&["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &xy()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
    }

    #[test]
    fn additive_identity() {
        let a = p("3/2*x^2*y - 7*y + 1");
        assert_eq!(&a + &Polynomial::zero(&xy()), a);
    }

    #[test]
    fn cube_matches_repeated_products() {
        let f = p("x + 1");
        let by_hand = &(&f * &f) * &f;
        assert_eq!(f.pow(3), by_hand);
        assert_eq!(by_hand, p("x^3 + 3*x^2 + 3*x + 1"));
    }

    #[test]
    fn partials() {
        assert_eq!(p("x^2*y").partial("x").unwrap(), p("2*x*y"));
        assert!(p("5").partial("y").unwrap().is_zero());
        let cube = p("x + y").pow(3);
        assert_eq!(
            cube.partial("x").unwrap(),
            p("x + y").pow(2).scale(&rat(3))
        );
        assert!(matches!(
            p("x").partial("z"),
            Err(PolyError::UnknownCoordinate(_))
        ));
    }

    #[test]
    fn basis_enumeration() {
        let b = monomial_basis(2, 2);
        assert_eq!(
            b,
            vec![
                Exponent(vec![2, 0]),
                Exponent(vec![1, 1]),
                Exponent(vec![0, 2])
            ]
        );
        assert_eq!(monomial_basis(4, 0), vec![Exponent(vec![0; 4])]);
        assert_eq!(monomial_basis(3, 4).len(), 15);
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["0", "1", "-x", "3/2*x^2*y - 7*y + 1", "x*y^3 - 1/3"] {
            let q = p(s);
            assert_eq!(Polynomial::parse(&q.to_string(), &xy()).unwrap(), q);
        }
        assert_eq!(p("-x^2 + 3/2*y").to_string(), "-x^2 + 3/2*y");
    }

    #[test]
    fn parse_errors() {
        assert!(Polynomial::parse("x +", &xy()).is_err());
        assert!(Polynomial::parse("x ^", &xy()).is_err());
        assert!(Polynomial::parse("1/0", &xy()).is_err());
        assert!(matches!(
            Polynomial::parse("z", &xy()),
            Err(PolyError::UnknownCoordinate(_))
        ));
    }

    #[test]
    fn alignment_by_name() {
        let a = Polynomial::parse("x", &coords(&["x"]).unwrap()).unwrap();
        let b = Polynomial::parse("y", &coords(&["y"]).unwrap()).unwrap();
        let s = &a + &b;
        assert_eq!(&s.coords()[..], &["x".to_string(), "y".to_string()][..]);
        let c = Polynomial::parse("x", &coords(&["y", "x"]).unwrap()).unwrap();
        assert!(matches!(
            p("x").try_add(&c),
            Err(PolyError::Alignment { .. })
        ));
    }

    #[test]
    fn compose_substitutes() {
        let uv = coords(&["u", "v"]).unwrap();
        let u = Polynomial::var(&uv, "u").unwrap();
        let v = Polynomial::var(&uv, "v").unwrap();
        let q = p("x*y + x^2").compose(&[&u + &v, &u - &v]);
        assert_eq!(q, Polynomial::parse("2*u^2 + 2*u*v", &uv).unwrap());
    }
}
