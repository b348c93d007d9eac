//! Point-symmetry generators and their second prolongation.
//!
//! A generator is `ξ∂x + φ∂y + τ∂t + (αu + β)∂u` with all five components
//! functions of `(x, y, t)` only. The prolongation is built twice: by the
//! general total-derivative recursion and by the closed-form coefficient
//! formulas. Both are generic over [`JetExpr`], so they run on concrete
//! polynomials and on linear forms in unknown functions alike.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{int, Poly, Rat};
use crate::var::{Var, COORDS, FIRST_JETS};

/// Expressions over jet space that the prolongation formulas act on.
pub trait JetExpr: Clone {
    fn zero() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, p: &Poly) -> Self;
    /// Explicit partial derivative in a coordinate.
    fn d_coord(&self, c: Var) -> Self;
    /// Partial derivative in `u` or a jet variable.
    fn d_var(&self, v: Var) -> Self;
}

impl JetExpr for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, p: &Poly) -> Self {
        self * p
    }
    fn d_coord(&self, c: Var) -> Self {
        self.partial(c)
    }
    fn d_var(&self, v: Var) -> Self {
        self.partial(v)
    }
}

/// Generator components `(ξ, φ, τ, α, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator<E> {
    pub xi: E,
    pub phi: E,
    pub tau: E,
    pub alpha: E,
    pub beta: E,
}

pub type VField = Generator<Poly>;

impl<E: JetExpr> Generator<E> {
    pub fn components(&self) -> [&E; 5] {
        [&self.xi, &self.phi, &self.tau, &self.alpha, &self.beta]
    }

    /// `(ξ, φ, τ)` in coordinate order.
    pub fn base(&self) -> [&E; 3] {
        [&self.xi, &self.phi, &self.tau]
    }

    pub fn eta(&self) -> E {
        self.alpha.times(&Poly::var(Var::U)).plus(&self.beta)
    }
}

impl VField {
    pub fn new(xi: Poly, phi: Poly, tau: Poly, alpha: Poly, beta: Poly) -> Result<Self> {
        let v = VField {
            xi,
            phi,
            tau,
            alpha,
            beta,
        };
        for c in v.components() {
            if c.contains_var(|w| w == Var::U || w.is_jet()) {
                return Err(Error::IllFormedGenerator(c.canonical_string()));
            }
        }
        Ok(v)
    }

    pub fn zero() -> Self {
        VField {
            xi: Poly::zero(),
            phi: Poly::zero(),
            tau: Poly::zero(),
            alpha: Poly::zero(),
            beta: Poly::zero(),
        }
    }

    pub fn from_components(c: [Poly; 5]) -> Self {
        let [xi, phi, tau, alpha, beta] = c;
        VField {
            xi,
            phi,
            tau,
            alpha,
            beta,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> VField {
        VField::from_components(self.components().map(f))
    }

    pub fn add(&self, other: &VField) -> VField {
        let [a, b, c, d, e] = other.components();
        VField {
            xi: &self.xi + a,
            phi: &self.phi + b,
            tau: &self.tau + c,
            alpha: &self.alpha + d,
            beta: &self.beta + e,
        }
    }

    pub fn sub(&self, other: &VField) -> VField {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, r: &Rat) -> VField {
        self.map(|c| c.scale(r))
    }

    pub fn scale_poly(&self, p: &Poly) -> VField {
        self.map(|c| c * p)
    }
}

impl fmt::Display for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "xi = {}; phi = {}; tau = {}; alpha = {}; beta = {}",
            self.xi, self.phi, self.tau, self.alpha, self.beta
        )
    }
}

/// First and second prolongation coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prolonged<E> {
    pub eta1_x: E,
    pub eta1_y: E,
    pub eta1_t: E,
    pub eta2_xx: E,
    pub eta2_xy: E,
    pub eta2_xt: E,
    pub eta2_yy: E,
    pub eta2_yt: E,
    pub eta2_tt: E,
}

impl<E> Prolonged<E> {
    /// Coefficients paired with the jet they multiply.
    pub fn by_jet(&self) -> [(Var, &E); 9] {
        [
            (Var::Ux, &self.eta1_x),
            (Var::Uy, &self.eta1_y),
            (Var::Ut, &self.eta1_t),
            (Var::Uxx, &self.eta2_xx),
            (Var::Uxy, &self.eta2_xy),
            (Var::Uxt, &self.eta2_xt),
            (Var::Uyy, &self.eta2_yy),
            (Var::Uyt, &self.eta2_yt),
            (Var::Utt, &self.eta2_tt),
        ]
    }
}

impl Prolonged<Poly> {
    /// Each coefficient is affine in `u` and of degree ≤ 1 in each jet.
    pub fn is_jet_linear(&self) -> bool {
        self.by_jet().iter().all(|(_, p)| {
            p.degree_in(Var::U) <= 1
                && crate::var::SECOND_JETS
                    .iter()
                    .chain(FIRST_JETS.iter())
                    .all(|j| p.degree_in(*j) <= 1)
        })
    }
}

/// `D_c e = ∂_c e + u_c ∂_u e + Σ_j u_{cj} ∂_{u_j} e` for generic expressions.
pub fn total_derivative_of<E: JetExpr>(e: &E, c: Var) -> E {
    let mut out = e
        .d_coord(c)
        .plus(&e.d_var(Var::U).times(&Poly::var(Var::first_jet(c))));
    for (j, uj) in COORDS.into_iter().zip(FIRST_JETS) {
        out = out.plus(&e.d_var(uj).times(&Poly::var(Var::second_jet(c, j))));
    }
    out
}

/// Total derivative of a polynomial over coordinates, `u` and first jets.
pub fn total_derivative(e: &Poly, c: Var) -> Result<Poly> {
    if !c.is_coord() {
        return Err(Error::NotConcrete(format!("{c} is not a coordinate")));
    }
    if let Some((m, _)) = e
        .terms()
        .find(|(m, _)| m.vars().any(|(v, _)| v.is_second_jet()))
    {
        let jet = m.vars().find(|(v, _)| v.is_second_jet()).unwrap().0;
        return Err(Error::JetOrderTooHigh(jet.name()));
    }
    Ok(total_derivative_of(e, c))
}

/// Second prolongation via the total-derivative recursion.
pub fn prolong2_of<E: JetExpr>(s: &Generator<E>) -> Prolonged<E> {
    let eta = s.eta();
    let base = s.base();
    let eta1 = |i: Var| {
        let mut out = total_derivative_of(&eta, i);
        for (k, uk) in FIRST_JETS.into_iter().enumerate() {
            out = out.minus(&total_derivative_of(base[k], i).times(&Poly::var(uk)));
        }
        out
    };
    let first = [eta1(Var::X), eta1(Var::Y), eta1(Var::T)];
    let eta2 = |i: usize, j: Var| {
        let ci = COORDS[i];
        let mut out = total_derivative_of(&first[i], j);
        for (k, ck) in COORDS.into_iter().enumerate() {
            out = out
                .minus(&total_derivative_of(base[k], j).times(&Poly::var(Var::second_jet(ci, ck))));
        }
        out
    };
    Prolonged {
        eta2_xx: eta2(0, Var::X),
        eta2_xy: eta2(0, Var::Y),
        eta2_xt: eta2(0, Var::T),
        eta2_yy: eta2(1, Var::Y),
        eta2_yt: eta2(1, Var::T),
        eta2_tt: eta2(2, Var::T),
        eta1_x: first[0].clone(),
        eta1_y: first[1].clone(),
        eta1_t: first[2].clone(),
    }
}

pub fn prolong2(s: &VField) -> Prolonged<Poly> {
    prolong2_of(s)
}

/// The xt coefficient computed the other way round: `D_x(η¹_t) − …`.
pub fn eta2_tx_of<E: JetExpr>(s: &Generator<E>) -> E {
    let p = prolong2_of(s);
    let mut out = total_derivative_of(&p.eta1_t, Var::X);
    for (k, ck) in COORDS.into_iter().enumerate() {
        out = out.minus(
            &total_derivative_of(s.base()[k], Var::X)
                .times(&Poly::var(Var::second_jet(Var::T, ck))),
        );
    }
    out
}

/// Closed-form prolongation coefficients for generators with `η = αu + β`.
pub fn closed_form_eta_of<E: JetExpr>(s: &Generator<E>) -> Prolonged<E> {
    // a sum of (coefficient expression, multiplier) pairs
    fn lin<E: JetExpr>(terms: &[(E, Poly)]) -> E {
        terms
            .iter()
            .fold(E::zero(), |acc, (e, m)| acc.plus(&e.times(m)))
    }
    let d = |e: &E, vs: &[Var]| vs.iter().fold(e.clone(), |acc, v| acc.d_coord(*v));
    let (xi, phi, tau, al, be) = (&s.xi, &s.phi, &s.tau, &s.alpha, &s.beta);
    let one = Poly::one();
    let two = Poly::from_int(2);
    let u = Poly::var(Var::U);
    let j = Poly::var;
    use Var::*;

    let eta1_x = lin(&[
        (d(be, &[X]), one.clone()),
        (d(al, &[X]), u.clone()),
        (al.minus(&d(xi, &[X])), j(Ux)),
        (d(phi, &[X]), -j(Uy)),
        (d(tau, &[X]), -j(Ut)),
    ]);
    let eta1_y = lin(&[
        (d(be, &[Y]), one.clone()),
        (d(al, &[Y]), u.clone()),
        (d(xi, &[Y]), -j(Ux)),
        (al.minus(&d(phi, &[Y])), j(Uy)),
        (d(tau, &[Y]), -j(Ut)),
    ]);
    let eta1_t = lin(&[
        (d(be, &[T]), one.clone()),
        (d(al, &[T]), u.clone()),
        (d(xi, &[T]), -j(Ux)),
        (d(phi, &[T]), -j(Uy)),
        (al.minus(&d(tau, &[T])), j(Ut)),
    ]);
    let eta2_xx = lin(&[
        (d(be, &[X, X]), one.clone()),
        (d(al, &[X, X]), u.clone()),
        (d(al, &[X]).times(&two).minus(&d(xi, &[X, X])), j(Ux)),
        (d(phi, &[X, X]), -j(Uy)),
        (d(tau, &[X, X]), -j(Ut)),
        (al.minus(&d(xi, &[X]).times(&two)), j(Uxx)),
        (d(phi, &[X]), j(Uxy).scale(&int(-2))),
        (d(tau, &[X]), j(Uxt).scale(&int(-2))),
    ]);
    let eta2_yy = lin(&[
        (d(be, &[Y, Y]), one.clone()),
        (d(al, &[Y, Y]), u.clone()),
        (d(xi, &[Y, Y]), -j(Ux)),
        (d(al, &[Y]).times(&two).minus(&d(phi, &[Y, Y])), j(Uy)),
        (d(tau, &[Y, Y]), -j(Ut)),
        (d(xi, &[Y]), j(Uxy).scale(&int(-2))),
        (al.minus(&d(phi, &[Y]).times(&two)), j(Uyy)),
        (d(tau, &[Y]), j(Uyt).scale(&int(-2))),
    ]);
    let eta2_tt = lin(&[
        (d(be, &[T, T]), one.clone()),
        (d(al, &[T, T]), u.clone()),
        (d(xi, &[T, T]), -j(Ux)),
        (d(phi, &[T, T]), -j(Uy)),
        (d(al, &[T]).times(&two).minus(&d(tau, &[T, T])), j(Ut)),
        (d(xi, &[T]), j(Uxt).scale(&int(-2))),
        (d(phi, &[T]), j(Uyt).scale(&int(-2))),
        (al.minus(&d(tau, &[T]).times(&two)), j(Utt)),
    ]);
    let eta2_xt = lin(&[
        (d(be, &[X, T]), one.clone()),
        (d(al, &[X, T]), u.clone()),
        (d(al, &[T]).minus(&d(xi, &[X, T])), j(Ux)),
        (d(phi, &[X, T]), -j(Uy)),
        (d(al, &[X]).minus(&d(tau, &[X, T])), j(Ut)),
        (d(xi, &[T]), -j(Uxx)),
        (d(phi, &[T]), -j(Uxy)),
        (d(phi, &[X]), -j(Uyt)),
        (al.minus(&d(xi, &[X])).minus(&d(tau, &[T])), j(Uxt)),
        (d(tau, &[X]), -j(Utt)),
    ]);
    let eta2_yt = lin(&[
        (d(be, &[Y, T]), one.clone()),
        (d(al, &[Y, T]), u.clone()),
        (d(xi, &[Y, T]), -j(Ux)),
        (d(al, &[T]).minus(&d(phi, &[Y, T])), j(Uy)),
        (d(al, &[Y]).minus(&d(tau, &[Y, T])), j(Ut)),
        (d(xi, &[Y]), -j(Uxt)),
        (d(xi, &[T]), -j(Uxy)),
        (d(phi, &[T]), -j(Uyy)),
        (al.minus(&d(phi, &[Y])).minus(&d(tau, &[T])), j(Uyt)),
        (d(tau, &[Y]), -j(Utt)),
    ]);
    // no printed formula for the xy coefficient; same pattern as xt and yt
    let eta2_xy = lin(&[
        (d(be, &[X, Y]), one.clone()),
        (d(al, &[X, Y]), u),
        (d(al, &[Y]).minus(&d(xi, &[X, Y])), j(Ux)),
        (d(al, &[X]).minus(&d(phi, &[X, Y])), j(Uy)),
        (d(tau, &[X, Y]), -j(Ut)),
        (d(xi, &[Y]), -j(Uxx)),
        (al.minus(&d(xi, &[X])).minus(&d(phi, &[Y])), j(Uxy)),
        (d(phi, &[X]), -j(Uyy)),
        (d(tau, &[Y]), -j(Uxt)),
        (d(tau, &[X]), -j(Uyt)),
    ]);
    Prolonged {
        eta1_x,
        eta1_y,
        eta1_t,
        eta2_xx,
        eta2_xy,
        eta2_xt,
        eta2_yy,
        eta2_yt,
        eta2_tt,
    }
}

pub fn closed_form_eta(s: &VField) -> Prolonged<Poly> {
    closed_form_eta_of(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(total_derivative(&p("u"), Var::X).unwrap(), p("u_x"));
        assert_eq!(total_derivative(&p("y*u_t"), Var::X).unwrap(), p("y*u_xt"));
        assert_eq!(
            total_derivative(&p("x*u + t"), Var::T).unwrap(),
            p("x*u_t + 1")
        );
        assert_eq!(
            total_derivative(&p("u_xy"), Var::X),
            Err(Error::JetOrderTooHigh("u_xy".into()))
        );
    }

    #[test]
    fn translation_has_trivial_prolongation() {
        let pr = prolong2(&fixtures::t());
        assert!(pr.by_jet().iter().all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn generic_first_coefficient() {
        let s = VField::new(p("x^2*t"), p("y*t"), p("x*y"), p("t^2"), p("x^3")).unwrap();
        let expect = p("3*x^2 + 0*u") // β_x
            + p("0") // α_x = 0
            + &(&(&s.alpha - &s.xi.partial(Var::X)) * &p("u_x"))
            - &(&s.phi.partial(Var::X) * &p("u_y"))
            - &(&s.tau.partial(Var::X) * &p("u_t"));
        assert_eq!(prolong2(&s).eta1_x, expect);
    }

    #[test]
    fn v1_matches_closed_form() {
        let v1 = fixtures::v1();
        assert_eq!(prolong2(&v1), closed_form_eta(&v1));
        assert!(prolong2(&v1).is_jet_linear());
    }

    #[test]
    fn rotation_eta1_t_vanishes() {
        assert!(closed_form_eta(&fixtures::r()).eta1_t.is_zero());
    }

    #[test]
    fn rejects_u_in_components() {
        assert!(VField::new(p("u"), p("0"), p("0"), p("0"), p("0")).is_err());
    }
}
