//! On-shell symmetry defects `Ŝ H |_{H=0}` and the numeric oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gexpr::{BasisTag, GExpr};
use crate::poly::{int, rat_string, Poly, Rat};
use crate::prolong::{closed_form_eta, prolong2, VField};
use crate::var::{Mono, Var, COORDS};

/// A constant that is either a concrete rational or kept as its symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Value(Rat),
    Symbol,
}

impl Param {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            Param::Value(r) => Some(r),
            Param::Symbol => None,
        }
    }

    fn as_poly(&self, sym: Var) -> Poly {
        match self {
            Param::Value(r) => Poly::constant(r.clone()),
            Param::Symbol => Poly::var(sym),
        }
    }

    fn render(&self, sym: &str) -> String {
        match self {
            Param::Value(r) => rat_string(r),
            Param::Symbol => sym.to_string(),
        }
    }
}

/// The nonlinearity classes of `Δ_H u + f(u) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FCase {
    Arbitrary,
    Zero,
    Const(Rat),
    /// `f = k u`, `k ≠ 0`
    Linear(Param),
    /// `f = k u^p`, `p ∉ {0, 1}`
    Power {
        k: Param,
        p: Param,
    },
    /// `f = k e^u`
    Exp(Param),
}

impl FCase {
    pub fn constant(c: Rat) -> FCase {
        if c.is_zero() {
            FCase::Zero
        } else {
            FCase::Const(c)
        }
    }

    pub fn linear(k: Param) -> Result<FCase> {
        if k.value().is_some_and(|k| k.is_zero()) {
            return Err(Error::InvalidFCase(
                "linear coefficient k must be nonzero".into(),
            ));
        }
        Ok(FCase::Linear(k))
    }

    pub fn power(k: Param, p: Param) -> Result<FCase> {
        if k.value().is_some_and(|k| k.is_zero()) {
            return Err(Error::InvalidFCase(
                "power coefficient k must be nonzero".into(),
            ));
        }
        if p.value().is_some_and(|p| p.is_zero() || p.is_one()) {
            return Err(Error::InvalidFCase(
                "exponent p must differ from 0 and 1".into(),
            ));
        }
        Ok(FCase::Power { k, p })
    }

    pub fn exp(k: Param) -> Result<FCase> {
        if k.value().is_some_and(|k| k.is_zero()) {
            return Err(Error::InvalidFCase(
                "exponential coefficient k must be nonzero".into(),
            ));
        }
        Ok(FCase::Exp(k))
    }

    /// `arbitrary | zero | const:r | linear:r|k | power:r|k:r|p | exp:r|k`
    pub fn parse(src: &str) -> Result<FCase> {
        let bad = |m: &str| Error::InvalidFCase(format!("`{src}`: {m}"));
        let num = |s: &str| -> Result<Rat> {
            let r = crate::parse::parse_poly(s).map_err(|_| bad("expected a rational"))?;
            r.as_constant().ok_or_else(|| bad("expected a rational"))
        };
        let param = |s: &str, sym: &str| -> Result<Param> {
            if s == sym {
                Ok(Param::Symbol)
            } else {
                num(s).map(Param::Value)
            }
        };
        let parts: Vec<&str> = src.trim().split(':').collect();
        match parts.as_slice() {
            ["arbitrary"] => Ok(FCase::Arbitrary),
            ["zero"] => Ok(FCase::Zero),
            ["const", c] => Ok(FCase::constant(num(c)?)),
            ["linear", k] => FCase::linear(param(k, "k")?),
            ["power", k, p] => FCase::power(param(k, "k")?, param(p, "p")?),
            ["exp", k] => FCase::exp(param(k, "k")?),
            _ => Err(bad("unknown nonlinearity")),
        }
    }

    /// Concrete exponent, if any.
    pub fn exponent(&self) -> Option<&Rat> {
        match self {
            FCase::Power {
                p: Param::Value(p), ..
            } => Some(p),
            _ => None,
        }
    }

    pub fn is_critical(&self) -> bool {
        self.exponent().is_some_and(|p| *p == int(3))
    }

    /// `f(u)` as a graded expression; `None` for `f = 0`.
    pub fn f_term(&self) -> GExpr {
        match self {
            FCase::Arbitrary => GExpr::tagged(BasisTag::F, Poly::one()),
            FCase::Zero => GExpr::zero(),
            FCase::Const(c) => GExpr::plain(Poly::constant(c.clone())),
            FCase::Linear(k) => GExpr::plain(&k.as_poly(Var::K) * &Poly::var(Var::U)),
            FCase::Power { k, .. } => GExpr::tagged(BasisTag::UPow(0), k.as_poly(Var::K)),
            FCase::Exp(k) => GExpr::tagged(BasisTag::ExpU, k.as_poly(Var::K)),
        }
    }

    /// Substitute a concrete `p` and fold `u^0`, `u^1` into plain terms.
    pub fn finish(&self, e: &GExpr) -> GExpr {
        match self.exponent() {
            Some(p) => {
                let pv = Poly::constant(p.clone());
                e.map_coeffs(|c| c.substitute_var(Var::P, &pv))
                    .fold_powers(p)
            }
            None => e.clone(),
        }
    }
}

impl fmt::Display for FCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FCase::Arbitrary => f.write_str("arbitrary"),
            FCase::Zero => f.write_str("zero"),
            FCase::Const(c) => write!(f, "const:{}", rat_string(c)),
            FCase::Linear(k) => write!(f, "linear:{}", k.render("k")),
            FCase::Power { k, p } => write!(f, "power:{}:{}", k.render("k"), p.render("p")),
            FCase::Exp(k) => write!(f, "exp:{}", k.render("k")),
        }
    }
}

/// `u_xx + u_yy + 4(x²+y²)u_tt + 4y u_xt − 4x u_yt`
pub fn laplace_jets() -> Poly {
    let v = Poly::var;
    let r2 = (&v(Var::X) * &v(Var::X) + &v(Var::Y) * &v(Var::Y)).scale(&int(4));
    v(Var::Uxx) + v(Var::Uyy) + &r2 * &v(Var::Utt) + (&v(Var::Y) * &v(Var::Uxt)).scale(&int(4))
        - (&v(Var::X) * &v(Var::Uyt)).scale(&int(4))
}

/// `H = Δ_H u + f(u)`
pub fn equation_rhs(fc: &FCase) -> GExpr {
    GExpr::plain(laplace_jets()).add(&fc.f_term())
}

/// The value of `u_xx` on solutions: `−(H − u_xx)`.
pub fn on_shell_uxx(fc: &FCase) -> GExpr {
    equation_rhs(fc)
        .sub(&GExpr::plain(Poly::var(Var::Uxx)))
        .neg()
}

/// `Ŝ H` with `u_xx` eliminated, collected over the tag basis.
pub fn symmetry_defect(s: &VField, fc: &FCase) -> GExpr {
    let h = equation_rhs(fc);
    let pr = prolong2(s);
    let mut out = GExpr::zero();
    for (c, comp) in COORDS.into_iter().zip(s.base()) {
        out = out.add(&h.partial(c).expect("coordinate derivative").mul_poly(comp));
    }
    out = out.add(
        &h.partial(Var::U)
            .expect("H has at most f")
            .mul_poly(&s.eta()),
    );
    for (jet, coeff) in pr.by_jet() {
        out = out.add(&h.partial(jet).expect("jet derivative").mul_poly(coeff));
    }
    let shell = out
        .substitute(Var::Uxx, &on_shell_uxx(fc))
        .expect("defect is affine in u_xx");
    fc.finish(&shell)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub is_symmetry: bool,
    pub certificate: Vec<(BasisTag, Mono, Rat)>,
}

pub fn verify_generator(s: &VField, fc: &FCase) -> Verdict {
    let d = symmetry_defect(s, fc);
    Verdict {
        is_symmetry: d.is_zero(),
        certificate: d.coefficients(),
    }
}

type RatFn = Box<dyn Fn(&Rat) -> Rat>;

/// Evaluate `Ŝ H` at random rational on-shell points, independently of the
/// graded machinery: closed-form prolongation, numeric `f` and `f'`.
pub fn numeric_spot_check(s: &VField, fc: &FCase, trials: usize, seed: u64) -> Result<bool> {
    let (f, fp): (RatFn, RatFn) = match fc {
        FCase::Zero => (Box::new(|_| int(0)), Box::new(|_| int(0))),
        FCase::Const(c) => {
            let c = c.clone();
            (Box::new(move |_| c.clone()), Box::new(|_| int(0)))
        }
        FCase::Linear(Param::Value(k)) => {
            let (k1, k2) = (k.clone(), k.clone());
            (Box::new(move |u| &k1 * u), Box::new(move |_| k2.clone()))
        }
        FCase::Power {
            k: Param::Value(k),
            p: Param::Value(p),
        } if p.is_integer() && *p >= int(2) => {
            let e = p
                .to_integer()
                .try_into()
                .map_err(|_| Error::NotConcrete("exponent too large".into()))?;
            let (k1, k2, pc) = (k.clone(), k.clone(), p.clone());
            (
                Box::new(move |u| &k1 * num_traits::pow(u.clone(), e)),
                Box::new(move |u| &k2 * &pc * num_traits::pow(u.clone(), e - 1)),
            )
        }
        other => {
            return Err(Error::NotConcrete(format!(
                "numeric evaluation needs a polynomial f with rational constants, got {other}"
            )))
        }
    };
    if s.components()
        .iter()
        .any(|c| c.contains_var(|v| v.is_param()))
    {
        return Err(Error::NotConcrete(
            "generator has symbolic parameters".into(),
        ));
    }
    let pr = closed_form_eta(s);
    let (x, y) = (Poly::var(Var::X), Poly::var(Var::Y));
    let four = int(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |nonzero: bool| loop {
        let r = Rat::new(
            rng.random_range(-9i64..=9).into(),
            rng.random_range(1i64..=5).into(),
        );
        if !nonzero || !r.is_zero() {
            return r;
        }
    };
    for _ in 0..trials {
        let mut pt: BTreeMap<Var, Rat> = BTreeMap::new();
        for v in [
            Var::X,
            Var::Y,
            Var::T,
            Var::Ux,
            Var::Uy,
            Var::Ut,
            Var::Uxy,
            Var::Uxt,
            Var::Uyy,
            Var::Uyt,
            Var::Utt,
        ] {
            pt.insert(v, draw(false));
        }
        pt.insert(Var::U, draw(true));
        let u = pt[&Var::U].clone();
        let rest = laplace_jets().substitute_var(Var::Uxx, &Poly::zero());
        let uxx = -(rest.eval(&pt).expect("all jets drawn") + f(&u));
        pt.insert(Var::Uxx, uxx);
        let ev = |p: &Poly| p.eval(&pt).expect("all variables drawn");
        let (xv, yv) = (ev(&x), ev(&y));
        let r2 = &xv * &xv + &yv * &yv;
        let total = (int(8) * &xv * ev(&s.xi) + int(8) * &yv * ev(&s.phi)) * &pt[&Var::Utt]
            + &four * ev(&s.phi) * &pt[&Var::Uxt]
            - &four * ev(&s.xi) * &pt[&Var::Uyt]
            + ev(&s.eta()) * fp(&u)
            + ev(&pr.eta2_xx)
            + ev(&pr.eta2_yy)
            + &four * &r2 * ev(&pr.eta2_tt)
            + &four * &yv * ev(&pr.eta2_xt)
            - &four * &xv * ev(&pr.eta2_yt);
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Magnitude of the largest defect coefficient, for reporting.
pub fn defect_size(d: &GExpr) -> Rat {
    d.coefficients()
        .into_iter()
        .map(|(_, _, c)| c.abs())
        .max()
        .unwrap_or_else(|| int(0))
}
