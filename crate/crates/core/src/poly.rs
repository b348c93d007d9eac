//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::var::{Mono, Var};

/// Exact rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Render a rational as `a` or `a/b`.
pub fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical polynomial: no zero coefficients are stored, so structural
/// equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::term(c, Mono::one())
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(int(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Rat::one(), Mono::var(v))
    }

    pub fn term(c: Rat, m: Mono) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Rat)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().any(|m| m.vars().any(|(v, _)| pred(v)))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative; every variable is independent.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.lower(v);
            if e > 0 {
                out.add_term(rest, c * int(e as i64));
            }
        }
        out
    }

    /// Iterated partial derivative.
    pub fn partial_n(&self, v: Var, n: u32) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.partial(v))
    }

    /// Group terms by the exponent of `v`: `self = sum_e out[e] * v^e`.
    pub fn by_degree_in(&self, v: Var) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Group terms by the sub-monomial over variables matching `pred`.
    pub fn collect_by(&self, pred: impl Fn(Var) -> bool) -> BTreeMap<Mono, Poly> {
        let mut out: BTreeMap<Mono, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (key, rest) = m.partition(&pred);
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Substitute polynomials for variables simultaneously.
    pub fn substitute(&self, map: &BTreeMap<Var, Poly>) -> Poly {
        let mut cache: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            let mut kept = Mono::one();
            for (v, e) in m.vars() {
                match map.get(&v) {
                    Some(image) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| image.pow(e));
                        acc = &acc * &*pw;
                    }
                    None => kept = kept.mul(&Mono::pow_of(v, e)),
                }
            }
            out = out + acc.mul_mono(&kept);
        }
        out
    }

    pub fn substitute_var(&self, v: Var, image: &Poly) -> Poly {
        self.substitute(&BTreeMap::from([(v, image.clone())]))
    }

    /// Evaluate at a rational point; `None` if a variable is unassigned.
    pub fn eval(&self, point: &BTreeMap<Var, Rat>) -> Option<Rat> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in m.vars() {
                let x = point.get(&v)?;
                val *= num_traits::pow(x.clone(), e as usize);
            }
            total += val;
        }
        Some(total)
    }

    /// Canonical rendering: graded-lex term order, reduced fractions.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&rat_string(&a));
            } else if a.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&rat_string(&a));
                out.push('*');
                out.push_str(&m.to_string());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::X)
    }
    fn y() -> Poly {
        Poly::var(Var::Y)
    }

    #[test]
    fn cancellation() {
        let a = &x() + &y();
        let b = &x() - &y();
        assert_eq!(a + b, x().scale(&int(2)));
    }

    #[test]
    fn difference_of_squares() {
        let a = &x() + &y().scale(&int(2));
        let b = &x() - &y().scale(&int(2));
        let expect = &x().pow(2) - &y().pow(2).scale(&int(4));
        assert_eq!(a * b, expect);
    }

    #[test]
    fn rational_product() {
        let a = x().scale(&rat(1, 2));
        let b = x().scale(&rat(2, 3));
        assert_eq!(a * b, x().pow(2).scale(&rat(1, 3)));
    }

    #[test]
    fn partials() {
        let x2y = x().pow(2) * y();
        assert_eq!(x2y.partial(Var::X), (x() * y()).scale(&int(2)));
        assert!((x().pow(2) + y().pow(2)).partial(Var::T).is_zero());
        // d/du (alpha*u + beta) = alpha, alpha and beta free of u
        let alpha = &x() + &Poly::var(Var::T);
        let beta = y().pow(3);
        let eta = &alpha * &Poly::var(Var::U) + &beta;
        assert_eq!(eta.partial(Var::U), alpha);
    }

    #[test]
    fn canonical_rendering() {
        let xi = Poly::var(Var::X).partial(Var::X).scale(&int(2));
        assert_eq!(xi.canonical_string(), "2");
        let t = Poly::var(Var::T);
        let v1_xi = &(&x() * &t) - &(x().pow(2) * y()) - y().pow(3);
        assert_eq!(v1_xi.canonical_string(), "x*t - x^2*y - y^3");
        assert_eq!(Poly::zero().canonical_string(), "0");
        let p = &x().scale(&rat(-1, 2)) + &Poly::constant(rat(3, 4));
        assert_eq!(p.canonical_string(), "3/4 - 1/2*x");
    }

    #[test]
    fn substitution_and_eval() {
        let p = &x().pow(2) + &y();
        let q = p.substitute_var(Var::X, &(&y() + &Poly::one()));
        assert_eq!(q, &(&y().pow(2) + &y().scale(&int(3))) + &Poly::one());
        let pt = BTreeMap::from([(Var::X, int(2)), (Var::Y, rat(1, 2))]);
        assert_eq!(p.eval(&pt), Some(rat(9, 2)));
        assert_eq!(Poly::var(Var::T).eval(&pt), None);
    }
}
