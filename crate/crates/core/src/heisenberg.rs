//! The Heisenberg group H¹: group law, invariant vector fields and the
//! Kohn-Laplace operator.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{int, Poly, Rat};
use crate::var::{Mono, Var, COORDS};

/// `a ∂x + b ∂y + c ∂t` with coefficients in the coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderOp {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl FirstOrderOp {
    pub fn new(a: Poly, b: Poly, c: Poly) -> Result<Self> {
        for p in [&a, &b, &c] {
            if p.contains_var(|v| v == Var::U || v.is_jet()) {
                return Err(Error::IllFormedGenerator(p.canonical_string()));
            }
        }
        Ok(FirstOrderOp { a, b, c })
    }

    fn raw(a: Poly, b: Poly, c: Poly) -> Self {
        FirstOrderOp { a, b, c }
    }

    pub fn coeffs(&self) -> [&Poly; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn apply(&self, e: &Poly) -> Poly {
        apply_field(self, e)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn scale(&self, r: &Rat) -> FirstOrderOp {
        FirstOrderOp::raw(self.a.scale(r), self.b.scale(r), self.c.scale(r))
    }
}

impl fmt::Display for FirstOrderOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*d_x + ({})*d_y + ({})*d_t", self.a, self.b, self.c)
    }
}

/// `X = ∂x + 2y ∂t`
pub fn x_field() -> FirstOrderOp {
    FirstOrderOp::raw(Poly::one(), Poly::zero(), Poly::var(Var::Y).scale(&int(2)))
}

/// `Y = ∂y − 2x ∂t`
pub fn y_field() -> FirstOrderOp {
    FirstOrderOp::raw(Poly::zero(), Poly::one(), Poly::var(Var::X).scale(&int(-2)))
}

/// `T = ∂t`
pub fn t_field() -> FirstOrderOp {
    FirstOrderOp::raw(Poly::zero(), Poly::zero(), Poly::one())
}

/// Right-invariant `X̃ = ∂x − 2y ∂t`
pub fn x_tilde() -> FirstOrderOp {
    FirstOrderOp::raw(Poly::one(), Poly::zero(), Poly::var(Var::Y).scale(&int(-2)))
}

/// Right-invariant `Ỹ = ∂y + 2x ∂t`
pub fn y_tilde() -> FirstOrderOp {
    FirstOrderOp::raw(Poly::zero(), Poly::one(), Poly::var(Var::X).scale(&int(2)))
}

pub fn apply_field(f: &FirstOrderOp, e: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (coef, v) in f.coeffs().into_iter().zip(COORDS) {
        if !coef.is_zero() {
            out = out + coef * &e.partial(v);
        }
    }
    out
}

/// `Δ_H e = X(Xe) + Y(Ye)`
pub fn kohn_laplace(e: &Poly) -> Poly {
    let (x, y) = (x_field(), y_field());
    x.apply(&x.apply(e)) + y.apply(&y.apply(e))
}

/// Expanded form `e_xx + e_yy + 4(x²+y²) e_tt + 4y e_xt − 4x e_yt`.
pub fn kohn_laplace_expanded(e: &Poly) -> Poly {
    let (x, y) = (Poly::var(Var::X), Poly::var(Var::Y));
    let r2 = (&x * &x + &y * &y).scale(&int(4));
    let ex = e.partial(Var::X);
    let ey = e.partial(Var::Y);
    let et = e.partial(Var::T);
    ex.partial(Var::X)
        + ey.partial(Var::Y)
        + &r2 * &et.partial(Var::T)
        + (&y * &ex.partial(Var::T)).scale(&int(4))
        - (&x * &ey.partial(Var::T)).scale(&int(4))
}

/// `[F, G]`, computed on coefficients: `[F,G]^i = F(G^i) − G(F^i)`.
///
/// The result is checked against `F(G e) − G(F e)` on probe polynomials;
/// a mismatch means the second-order parts did not cancel.
pub fn commutator(f: &FirstOrderOp, g: &FirstOrderOp) -> Result<FirstOrderOp> {
    let gc = g.coeffs();
    let fc = f.coeffs();
    let out = FirstOrderOp::raw(
        f.apply(gc[0]) - g.apply(fc[0]),
        f.apply(gc[1]) - g.apply(fc[1]),
        f.apply(gc[2]) - g.apply(fc[2]),
    );
    for probe in probes() {
        let lhs = f.apply(&g.apply(&probe)) - g.apply(&f.apply(&probe));
        if lhs != out.apply(&probe) {
            return Err(Error::NotAVectorField(format!("[{f}, {g}]")));
        }
    }
    Ok(out)
}

fn probes() -> Vec<Poly> {
    let mut out = Vec::new();
    for a in 0..=2u32 {
        for b in 0..=2 - a {
            for c in 0..=2 - a - b {
                out.push(Poly::term(
                    int(1),
                    Mono::from_pairs([(Var::X, a), (Var::Y, b), (Var::T, c)]),
                ));
            }
        }
    }
    out
}

/// A point of H¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPoint {
    pub x: Rat,
    pub y: Rat,
    pub t: Rat,
}

impl HPoint {
    pub fn new(x: Rat, y: Rat, t: Rat) -> Self {
        HPoint { x, y, t }
    }

    pub fn identity() -> Self {
        HPoint::new(int(0), int(0), int(0))
    }

    pub fn inverse(&self) -> Self {
        HPoint::new(-&self.x, -&self.y, -&self.t)
    }
}

/// `(x,y,t)(x',y',t') = (x+x', y+y', t+t'+2(y x' − x y'))`
pub fn group_mul(p: &HPoint, q: &HPoint) -> HPoint {
    HPoint::new(
        &p.x + &q.x,
        &p.y + &q.y,
        &p.t + &q.t + int(2) * (&p.y * &q.x - &p.x * &q.y),
    )
}

/// `e ∘ L_a` where `L_a(q) = a·q`.
pub fn left_translate(e: &Poly, a: &HPoint) -> Poly {
    let (x, y, t) = (Poly::var(Var::X), Poly::var(Var::Y), Poly::var(Var::T));
    let image_t =
        &(&Poly::constant(a.t.clone()) + &t) + &(&y.scale(&a.x) - &x.scale(&a.y)).scale(&int(-2));
    let map = [
        (Var::X, &Poly::constant(a.x.clone()) + &x),
        (Var::Y, &Poly::constant(a.y.clone()) + &y),
        (Var::T, image_t),
    ];
    e.substitute(&map.into_iter().collect())
}
