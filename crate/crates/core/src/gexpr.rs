//! Graded expressions: polynomial coefficients attached to independent
//! nonlinearity tags (`1`, `f(u)`, `f'(u)`, `u^(p+j)`, `exp(u)`).
//!
//! A `GExpr` is zero iff every tag component is the zero polynomial. `UPow`
//! coefficients never contain `u`; multiplying by `u` promotes the tag.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, Poly, Rat};
use crate::var::{Mono, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisTag {
    Plain,
    F,
    FPrime,
    /// `u^(p+j)`
    UPow(i32),
    ExpU,
}

impl BasisTag {
    pub fn factor_string(self) -> String {
        match self {
            BasisTag::Plain => "1".into(),
            BasisTag::F => "f(u)".into(),
            BasisTag::FPrime => "f'(u)".into(),
            BasisTag::UPow(0) => "u^(p)".into(),
            BasisTag::UPow(j) if j > 0 => format!("u^(p+{j})"),
            BasisTag::UPow(j) => format!("u^(p{j})"),
            BasisTag::ExpU => "exp(u)".into(),
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.factor_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GExpr {
    parts: BTreeMap<BasisTag, Poly>,
}

impl GExpr {
    pub fn zero() -> Self {
        GExpr::default()
    }

    pub fn plain(p: Poly) -> Self {
        GExpr::tagged(BasisTag::Plain, p)
    }

    pub fn tagged(tag: BasisTag, p: Poly) -> Self {
        let mut g = GExpr::zero();
        g.add_part(tag, p);
        g
    }

    pub fn add_part(&mut self, tag: BasisTag, p: Poly) {
        if p.is_zero() {
            return;
        }
        let slot = self.parts.entry(tag).or_default();
        *slot = &*slot + &p;
        if slot.is_zero() {
            self.parts.remove(&tag);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, tag: BasisTag) -> Poly {
        self.parts.get(&tag).cloned().unwrap_or_default()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&BasisTag, &Poly)> {
        self.parts.iter()
    }

    pub fn add(&self, other: &GExpr) -> GExpr {
        let mut out = self.clone();
        for (t, p) in &other.parts {
            out.add_part(*t, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &GExpr) -> GExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GExpr {
        GExpr {
            parts: self.parts.iter().map(|(t, p)| (*t, -p)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> GExpr {
        let mut out = GExpr::zero();
        for (t, p) in &self.parts {
            out.add_part(*t, p.scale(c));
        }
        out
    }

    /// Multiply by a polynomial; powers of `u` in the multiplier promote
    /// `UPow` tags instead of entering their coefficients.
    pub fn mul_poly(&self, q: &Poly) -> GExpr {
        let mut out = GExpr::zero();
        for (tag, c) in &self.parts {
            match tag {
                BasisTag::UPow(j) => {
                    for (e, qe) in q.by_degree_in(Var::U) {
                        out.add_part(BasisTag::UPow(j + e as i32), c * &qe);
                    }
                }
                _ => out.add_part(*tag, c * q),
            }
        }
        out
    }

    pub fn mul_u(&self) -> GExpr {
        self.mul_poly(&Poly::var(Var::U))
    }

    /// Partial derivative. For `u`: `f -> f'`, `u^(p+j) -> (p+j) u^(p+j-1)`
    /// with `p` kept as the symbol `Var::P`, `exp(u) -> exp(u)`. A second
    /// derivative of `f` has no tag and is rejected.
    pub fn partial(&self, v: Var) -> Result<GExpr> {
        let mut out = GExpr::zero();
        for (tag, c) in &self.parts {
            out.add_part(*tag, c.partial(v));
            if v != Var::U {
                continue;
            }
            match tag {
                BasisTag::Plain => {}
                BasisTag::F => out.add_part(BasisTag::FPrime, c.clone()),
                BasisTag::FPrime => {
                    return Err(Error::UnsupportedDerivative("f'(u)".into()));
                }
                BasisTag::UPow(j) => {
                    let factor = &Poly::var(Var::P) + &Poly::from_int(*j as i64);
                    out.add_part(BasisTag::UPow(j - 1), c * &factor);
                }
                BasisTag::ExpU => out.add_part(BasisTag::ExpU, c.clone()),
            }
        }
        Ok(out)
    }

    /// Replace `v` by a graded expression. Each component must be affine in
    /// `v`; a non-plain component may only meet a plain image.
    pub fn substitute(&self, v: Var, image: &GExpr) -> Result<GExpr> {
        let image_plain = image.parts.keys().all(|t| *t == BasisTag::Plain);
        let mut out = GExpr::zero();
        for (tag, c) in &self.parts {
            for (e, ce) in c.by_degree_in(v) {
                match e {
                    0 => out.add_part(*tag, ce),
                    1 if *tag == BasisTag::Plain => out = out.add(&image.mul_poly(&ce)),
                    1 if image_plain => out.add_part(*tag, &ce * &image.part(BasisTag::Plain)),
                    _ => {
                        return Err(Error::UnsupportedDerivative(format!(
                            "substitution of {v} into {tag} component of degree {e}"
                        )))
                    }
                }
            }
        }
        Ok(out)
    }

    /// Apply a polynomial map to every coefficient (e.g. parameter values).
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> GExpr {
        let mut out = GExpr::zero();
        for (t, p) in &self.parts {
            out.add_part(*t, f(p));
        }
        out
    }

    /// With `p` fixed to a rational, fold `u^(p+j)` into plain polynomials
    /// when `p + j` is 0 or 1.
    pub fn fold_powers(&self, p: &Rat) -> GExpr {
        let mut out = GExpr::zero();
        for (tag, c) in &self.parts {
            match tag {
                BasisTag::UPow(j) => {
                    let e = p + int(*j as i64);
                    if e.is_zero() {
                        out.add_part(BasisTag::Plain, c.clone());
                    } else if e.is_one() {
                        out.add_part(BasisTag::Plain, c * &Poly::var(Var::U));
                    } else {
                        out.add_part(*tag, c.clone());
                    }
                }
                _ => out.add_part(*tag, c.clone()),
            }
        }
        out
    }

    /// Every nonzero coefficient as `(tag, monomial, value)`.
    pub fn coefficients(&self) -> Vec<(BasisTag, Mono, Rat)> {
        self.parts
            .iter()
            .flat_map(|(t, p)| p.terms().map(move |(m, c)| (*t, m.clone(), c.clone())))
            .collect()
    }

    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.parts
            .iter()
            .map(|(t, p)| match t {
                BasisTag::Plain => p.canonical_string(),
                _ => format!("({})*{}", p.canonical_string(), t.factor_string()),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_u_promotes_powers() {
        let beta = Poly::var(Var::Y);
        let g = GExpr::tagged(BasisTag::UPow(-1), beta.clone());
        assert_eq!(g.mul_u(), GExpr::tagged(BasisTag::UPow(0), beta));

        let one = GExpr::plain(Poly::one());
        assert_eq!(one.mul_u(), GExpr::plain(Poly::var(Var::U)));

        let alpha = Poly::var(Var::T);
        let fp = GExpr::tagged(BasisTag::FPrime, alpha.clone());
        assert_eq!(
            fp.mul_u(),
            GExpr::tagged(BasisTag::FPrime, &alpha * &Poly::var(Var::U))
        );
    }

    #[test]
    fn zero_is_componentwise() {
        let mut g = GExpr::plain(Poly::var(Var::X));
        g.add_part(BasisTag::F, Poly::one());
        assert!(!g.is_zero());
        let h = g.sub(&g);
        assert!(h.is_zero());
        assert_eq!(h.canonical_string(), "0");
    }

    #[test]
    fn tag_derivatives() {
        let f = GExpr::tagged(BasisTag::F, Poly::one());
        assert_eq!(
            f.partial(Var::U).unwrap(),
            GExpr::tagged(BasisTag::FPrime, Poly::one())
        );
        assert!(GExpr::tagged(BasisTag::FPrime, Poly::one())
            .partial(Var::U)
            .is_err());
        let e = GExpr::tagged(BasisTag::ExpU, Poly::var(Var::K));
        assert_eq!(e.partial(Var::U).unwrap(), e);
        let pw = GExpr::tagged(BasisTag::UPow(0), Poly::var(Var::K));
        let d = pw.partial(Var::U).unwrap();
        assert_eq!(
            d,
            GExpr::tagged(BasisTag::UPow(-1), &Poly::var(Var::K) * &Poly::var(Var::P))
        );
    }

    #[test]
    fn folding() {
        let g = GExpr::tagged(BasisTag::UPow(-1), Poly::var(Var::X));
        assert_eq!(
            g.fold_powers(&int(2)),
            GExpr::plain(&Poly::var(Var::X) * &Poly::var(Var::U))
        );
        assert_eq!(g.fold_powers(&int(1)), GExpr::plain(Poly::var(Var::X)));
        assert_eq!(g.fold_powers(&int(5)), g);
    }

    #[test]
    fn rendering() {
        let mut g = GExpr::plain(Poly::var(Var::Uyy));
        g.add_part(BasisTag::UPow(-1), Poly::from_int(3));
        g.add_part(BasisTag::F, Poly::one());
        assert_eq!(g.canonical_string(), "u_yy + (1)*f(u) + (3)*u^(p-1)");
    }
}
