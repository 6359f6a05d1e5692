//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Poly`] is a map from [`Monomial`] to nonzero [`Rational`]. Monomials
//! are ordered graded-lexicographically, so the homogeneous parts of a
//! polynomial are contiguous. Variables are indexed from zero internally and
//! rendered as `x1..xr`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::parse::Cursor;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector of a monomial. Zero exponents are implicit: two
/// monomials over the same ring compare by total degree, then lexicographically
/// on the exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All monomials of total degree `d` in `nvars` variables, ascending.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; nvars], &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of [`Poly::homogeneity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomDegree {
    /// The zero polynomial is homogeneous of every degree.
    Any,
    Exactly(u32),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated terms; coefficients of equal
    /// monomials are summed and zeros dropped.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            Err(Error::DimensionMismatch { left: self.nvars, right: other.nvars })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Total degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn homogeneity(&self) -> Option<HomDegree> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Some(HomDegree::Any),
            Some(d) => degs.all(|e| e == d).then_some(HomDegree::Exactly(d)),
        }
    }

    /// Formal partial derivative in variable `i` (zero-based).
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.nvars });
        }
        Ok(self.diff(i))
    }

    pub(crate) fn diff(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.terms.insert(Monomial(exps), c * BigInt::from(e));
        }
        out
    }

    /// Mixed partial derivative `∂^alpha`, one exponent per variable.
    pub fn diff_multi(&self, alpha: &[u32]) -> Poly {
        debug_assert_eq!(alpha.len(), self.nvars);
        let mut out = Poly::zero(self.nvars);
        'terms: for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let mut factor = BigInt::one();
            for (e, &a) in exps.iter_mut().zip(alpha) {
                if *e < a {
                    continue 'terms;
                }
                for k in 0..a {
                    factor *= *e - k;
                }
                *e -= a;
            }
            out.terms.insert(Monomial(exps), c * factor);
        }
        out
    }

    /// Renames variable `i` to `offset + i` inside a ring of `nvars` variables.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars];
            e[offset..offset + self.nvars].copy_from_slice(&m.0);
            (Monomial(e), c.clone())
        });
        Poly { nvars, terms: terms.collect() }
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Parses `-48*x1^5*x2 + 3/2*x3 - 7`. With `nvars = None` the ring size
    /// is the largest variable index that occurs (at least 1).
    pub fn parse(text: &str, nvars: Option<usize>) -> Result<Poly> {
        let mut cur = Cursor::new(text);
        let raw = parse_terms(&mut cur)?;
        cur.finish()?;
        build(raw, nvars)
    }
}

pub(crate) type RawTerms = Vec<(Rational, Vec<(usize, u32)>, usize)>;

/// Reads a signed sum of products. Returns terms with 1-based variable
/// indices and the byte offset of each term for error reporting.
pub(crate) fn parse_terms(cur: &mut Cursor) -> Result<RawTerms> {
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let neg = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            break;
        };
        first = false;
        let at = cur.pos();
        let mut c = Rational::one();
        let mut vars = Vec::new();
        loop {
            match cur.peek() {
                Some(ch) if ch.is_ascii_digit() => c *= cur.rational()?,
                Some('x') => {
                    cur.expect('x')?;
                    let i = cur.index()?;
                    if i == 0 {
                        return cur.err("variable indices start at 1");
                    }
                    let e = if cur.eat('^') {
                        u32::try_from(cur.digits()?).or_else(|_| cur.err("exponent too large"))?
                    } else {
                        1
                    };
                    vars.push((i, e));
                }
                _ => return cur.err("expected a coefficient or variable"),
            }
            if !cur.eat('*') {
                break;
            }
        }
        out.push((if neg { -c } else { c }, vars, at));
    }
    if out.is_empty() {
        return cur.err("expected a polynomial");
    }
    Ok(out)
}

pub(crate) fn max_var(raw: &RawTerms) -> usize {
    raw.iter()
        .flat_map(|(_, v, _)| v.iter().map(|(i, _)| *i))
        .max()
        .unwrap_or(0)
}

pub(crate) fn build(raw: RawTerms, nvars: Option<usize>) -> Result<Poly> {
    let n = nvars.unwrap_or_else(|| max_var(&raw).max(1));
    let mut p = Poly::zero(n);
    for (c, vars, at) in raw {
        let mut e = vec![0u32; n];
        for (i, k) in vars {
            if i > n {
                return Err(Error::Syntax {
                    pos: at,
                    msg: format!("variable x{i} exceeds dimension {n}"),
                });
            }
            e[i - 1] += k;
        }
        p.add_term(Monomial(e), c);
    }
    Ok(p)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Highest monomial first, `p/q` coefficients, `/1` and unit coefficients omitted.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}
