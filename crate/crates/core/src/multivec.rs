//! Polynomial multivector fields on affine space and the Schouten bracket.
//!
//! A multivector is stored as a map from sets of odd variables `ξ_i` to
//! polynomial coefficients. Each set is a bitmask and stands for the
//! product `ξ_{i1} ξ_{i2} … ξ_{ik}` with `i1 < i2 < … < ik`; `ξ_i ξ_i = 0`
//! is therefore structural.
//!
//! Sign ledger. Every sign in this module comes from one of three places:
//!
//! * left derivative `∂/∂ξ_i (ξ_A) = (-1)^{#{a ∈ A : a < i}} ξ_{A∖i}`;
//! * right derivative `(ξ_A) ∂/∂ξ_i = (-1)^{#{a ∈ A : a > i}} ξ_{A∖i}`;
//! * product `ξ_A ξ_B = (-1)^{#{(a,b) ∈ A×B : a > b}} ξ_{A∪B}` for disjoint `A`, `B`.
//!
//! A bivector with wedge components `P^{ij}` (`i < j`) is stored as
//! `Σ_{i<j} P^{ij} ξ_i ξ_j`, which equals `½ Σ_{i,j} P^{ij} ξ_i ξ_j` for a
//! skew matrix `P^{ij}`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parse::Cursor;
use crate::ratpoly::{self, HomDegree, Poly, Rational};

/// A set of odd-variable indices, zero-based, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct XiSet(pub u32);

impl XiSet {
    pub const EMPTY: XiSet = XiSet(0);

    pub fn from_indices(idx: &[usize]) -> XiSet {
        XiSet(idx.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 >> i & 1 == 1)
    }

    pub fn remove(self, i: usize) -> XiSet {
        XiSet(self.0 & !(1 << i))
    }

    /// Sign of the left derivative `∂/∂ξ_i`; `None` when `i ∉ self`.
    pub fn left_sign(self, i: usize) -> Option<i32> {
        self.contains(i)
            .then(|| parity((self.0 & ((1u32 << i) - 1)).count_ones()))
    }

    /// Sign of the right derivative `←∂/∂ξ_i`; `None` when `i ∉ self`.
    pub fn right_sign(self, i: usize) -> Option<i32> {
        self.contains(i)
            .then(|| parity((self.0 >> i >> 1).count_ones()))
    }

    /// Sign and support of `ξ_self ξ_other`; `None` when they overlap.
    pub fn wedge(self, other: XiSet) -> Option<(i32, XiSet)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        for b in other.indices() {
            swaps += (self.0 >> b).count_ones();
        }
        Some((parity(swaps), XiSet(self.0 | other.0)))
    }
}

fn parity(n: u32) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Degree first, then lexicographic on the ascending index tuple.
impl Ord for XiSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for XiSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multivector {
    nvars: usize,
    comps: BTreeMap<XiSet, Poly>,
}

/// Outcome of [`homogeneity_scale`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HomogeneityReport {
    /// `P = 0`, so every scale works.
    Any,
    Scale(Rational),
    Inhomogeneous,
}

impl HomogeneityReport {
    pub fn scale(&self) -> Option<&Rational> {
        match self {
            HomogeneityReport::Scale(l) => Some(l),
            _ => None,
        }
    }
}

impl Multivector {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= 32, "at most 32 odd variables");
        Multivector { nvars, comps: BTreeMap::new() }
    }

    pub fn scalar(p: Poly) -> Self {
        let mut m = Multivector::zero(p.nvars());
        m.add_component(XiSet::EMPTY, p);
        m
    }

    /// `Σ components[i] ξ_i`.
    pub fn vector(components: Vec<Poly>) -> Self {
        let n = components.len();
        let mut m = Multivector::zero(n);
        for (i, p) in components.into_iter().enumerate() {
            assert_eq!(p.nvars(), n, "component ring");
            m.add_component(XiSet::from_indices(&[i]), p);
        }
        m
    }

    /// Bivector from wedge components `(i, j, P^{ij})` with `i < j`, zero-based.
    pub fn bivector(nvars: usize, entries: Vec<(usize, usize, Poly)>) -> Self {
        let mut m = Multivector::zero(nvars);
        for (i, j, p) in entries {
            assert!(i < j && j < nvars, "bivector entries need i < j < nvars");
            m.add_component(XiSet::from_indices(&[i, j]), p);
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&XiSet, &Poly)> {
        self.comps.iter()
    }

    pub fn component(&self, s: XiSet) -> Poly {
        self.comps.get(&s).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    pub fn add_component(&mut self, s: XiSet, p: Poly) {
        assert_eq!(p.nvars(), self.nvars, "dimension mismatch");
        assert!(s.0 >> self.nvars == 0, "odd index out of range");
        if p.is_zero() {
            return;
        }
        match self.comps.entry(s) {
            Entry::Vacant(v) => {
                v.insert(p);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &p;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The common ξ-degree, or `None` when components of different degree
    /// are present. The zero multivector reports `Some(0)`.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.comps.keys().map(|s| s.degree());
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Multivector {
        let mut out = Multivector::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (s, p) in &self.comps {
            out.comps.insert(*s, p.scale(c));
        }
        out
    }

    /// Coefficient degree when every component is homogeneous of one degree.
    pub fn coefficient_degree(&self) -> Option<HomDegree> {
        let mut deg = HomDegree::Any;
        for p in self.comps.values() {
            match (p.homogeneity()?, deg) {
                (HomDegree::Any, _) => {}
                (d, HomDegree::Any) => deg = d,
                (d, e) if d == e => {}
                _ => return None,
            }
        }
        Some(deg)
    }

    pub fn map_coefficients(&self, f: impl Fn(&Poly) -> Poly) -> Multivector {
        let mut out = Multivector::zero(self.nvars);
        for (s, p) in &self.comps {
            out.add_component(*s, f(p));
        }
        out
    }

    /// Product in the exterior algebra over the polynomial ring.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        assert_eq!(self.nvars, other.nvars, "dimension mismatch");
        let mut out = Multivector::zero(self.nvars);
        for (a, p) in &self.comps {
            for (b, q) in &other.comps {
                if let Some((sign, ab)) = a.wedge(*b) {
                    let pq = p * q;
                    out.add_component(ab, if sign < 0 { -&pq } else { pq });
                }
            }
        }
        out
    }

    fn check(&self, other: &Multivector) -> Result<()> {
        if self.nvars != other.nvars {
            Err(Error::DimensionMismatch { left: self.nvars, right: other.nvars })
        } else {
            Ok(())
        }
    }

    /// Parses `(x1^2*x2 + x2^2*x3) xi1 xi2 + (x1) xi3`. Without `nvars`
    /// the dimension is the largest variable or ξ index present.
    pub fn parse(text: &str, nvars: Option<usize>) -> Result<Multivector> {
        let mut cur = Cursor::new(text);
        let mut raw = Vec::new();
        let mut max_idx = 0;
        if cur.eat('0') {
            cur.finish()?;
            return Ok(Multivector::zero(nvars.unwrap_or(1)));
        }
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
            cur.expect('(')?;
            let terms = ratpoly::parse_terms(&mut cur)?;
            cur.expect(')')?;
            max_idx = max_idx.max(ratpoly::max_var(&terms));
            let mut xis: Vec<usize> = Vec::new();
            while cur.eat_str("xi") {
                let at = cur.pos();
                let i = cur.index()?;
                if i == 0 {
                    return cur.err("odd indices start at 1");
                }
                if xis.last().is_some_and(|&l| l >= i) {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: format!("xi indices must be strictly increasing (xi{i} after xi{})", xis.last().unwrap()),
                    });
                }
                xis.push(i);
            }
            max_idx = max_idx.max(xis.last().copied().unwrap_or(0));
            raw.push((neg, terms, xis, cur.pos()));
        }
        cur.finish()?;
        let n = nvars.unwrap_or(max_idx.max(1));
        if n > 32 {
            return cur.err("at most 32 variables");
        }
        let mut out = Multivector::zero(n);
        for (neg, terms, xis, at) in raw {
            if let Some(&i) = xis.iter().find(|&&i| i > n) {
                return Err(Error::Syntax { pos: at, msg: format!("xi{i} exceeds dimension {n}") });
            }
            let p = ratpoly::build(terms, Some(n))?;
            let s = XiSet::from_indices(&xis.iter().map(|i| i - 1).collect::<Vec<_>>());
            out.add_component(s, if neg { -&p } else { p });
        }
        Ok(out)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        for (k, (s, p)) in self.comps.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p})")?;
            for i in s.indices() {
                write!(f, " xi{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        for (s, p) in &rhs.comps {
            self.add_component(*s, p.clone());
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.nvars, rhs.nvars, "dimension mismatch");
        for (s, p) in &rhs.comps {
            self.add_component(*s, -p);
        }
    }
}

impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.map_coefficients(|p| -p)
    }
}

/// The Schouten bracket
/// `[[P,Q]] = Σ_i (P ←∂/∂ξ_i)(∂_i Q) − (∂_i P)(∂/∂ξ_i Q)`.
pub fn schouten(p: &Multivector, q: &Multivector) -> Result<Multivector> {
    p.check(q)?;
    let n = p.nvars;
    let mut out = Multivector::zero(n);
    for (a, pa) in &p.comps {
        for (b, qb) in &q.comps {
            for i in 0..n {
                // (P ←∂ξ_i) · ∂_i Q
                if let Some(sr) = a.right_sign(i) {
                    let dq = qb.diff(i);
                    if !dq.is_zero() {
                        if let Some((sw, s)) = a.remove(i).wedge(*b) {
                            let t = pa * &dq;
                            out.add_component(s, if sr * sw < 0 { -&t } else { t });
                        }
                    }
                }
                // − (∂_i P) · (∂ξ_i Q)
                if let Some(sl) = b.left_sign(i) {
                    let dp = pa.diff(i);
                    if !dp.is_zero() {
                        if let Some((sw, s)) = a.wedge(b.remove(i)) {
                            let t = &dp * qb;
                            out.add_component(s, if sl * sw > 0 { -&t } else { t });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The graded-symmetric form `π_S(F,G) = (-1)^{|F|-1} [[F,G]]`.
pub fn schouten_sym(f: &Multivector, g: &Multivector) -> Result<Multivector> {
    let deg = f.degree().ok_or_else(|| Error::Grading {
        expected: "a grading-homogeneous first argument".into(),
        found: "mixed ξ-degrees".into(),
    })?;
    let b = schouten(f, g)?;
    // (|F| - 1) is odd exactly when |F| is even.
    Ok(if deg % 2 == 0 { -&b } else { b })
}

fn require_degree(m: &Multivector, k: usize, what: &str) -> Result<()> {
    if m.is_zero() || m.degree() == Some(k) {
        Ok(())
    } else {
        Err(Error::Grading {
            expected: what.into(),
            found: match m.degree() {
                Some(d) => format!("a multivector of degree {d}"),
                None => "a mixed-degree multivector".into(),
            },
        })
    }
}

/// The trivector `½[[P,P]]`; zero exactly when `P` is Poisson.
pub fn jacobiator(p: &Multivector) -> Result<Multivector> {
    require_degree(p, 2, "a bivector")?;
    Ok(schouten(p, p)?.scale(&ratpoly::ratio(1, 2)))
}

pub fn is_poisson(p: &Multivector) -> Result<bool> {
    Ok(jacobiator(p)?.is_zero())
}

/// Finds `λ` with `[[V,P]] = λ P`.
pub fn homogeneity_scale(v: &Multivector, p: &Multivector) -> Result<HomogeneityReport> {
    require_degree(v, 1, "a vector field")?;
    if p.is_zero() {
        return Ok(HomogeneityReport::Any);
    }
    let bracket = schouten(v, p)?;
    // Read λ off one term, then verify everywhere.
    let (s, comp) = p.comps.iter().next().expect("nonzero");
    let (m, c) = comp.terms().next().expect("nonzero");
    let lambda = bracket.component(*s).coeff(m) / c;
    Ok(if bracket == p.scale(&lambda) {
        HomogeneityReport::Scale(lambda)
    } else {
        HomogeneityReport::Inhomogeneous
    })
}

/// `E = Σ x^i ξ_i`.
pub fn euler_field(nvars: usize) -> Result<Multivector> {
    if nvars == 0 {
        return Err(Error::InvalidDimension);
    }
    Ok(Multivector::vector((0..nvars).map(|i| Poly::var(nvars, i)).collect()))
}

/// `L_V Ω = [[V, Ω]]`.
pub fn lie_derivative(v: &Multivector, omega: &Multivector) -> Result<Multivector> {
    require_degree(v, 1, "a vector field")?;
    schouten(v, omega)
}

/// `{f,g}_P = [[[[f,P]],g]]`.
pub fn poisson_bracket(p: &Multivector, f: &Poly, g: &Poly) -> Result<Poly> {
    let fp = schouten(&Multivector::scalar(f.clone()), p)?;
    let r = schouten(&fp, &Multivector::scalar(g.clone()))?;
    Ok(r.component(XiSet::EMPTY))
}

/// The Hamiltonian vector field `[[P,h]]`.
pub fn hamiltonian(p: &Multivector, h: &Poly) -> Result<Multivector> {
    schouten(p, &Multivector::scalar(h.clone()))
}

impl Multivector {
    /// True when `self` is `λ·other` for the returned `λ`.
    pub fn proportionality(&self, other: &Multivector) -> Option<Rational> {
        if self.nvars != other.nvars || other.is_zero() {
            return if self.is_zero() { Some(Rational::one()) } else { None };
        }
        let (s, comp) = other.comps.iter().next()?;
        let (m, c) = comp.terms().next()?;
        let lambda = self.component(*s).coeff(m) / c;
        (*self == other.scale(&lambda)).then_some(lambda)
    }
}
