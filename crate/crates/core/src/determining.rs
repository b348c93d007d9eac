//! The determining system in unknown-function form.
//!
//! The nine equations are re-derived by running the same prolongation code
//! on opaque unknowns `ξ, φ, τ, α, β`, eliminating `u_xx` on-shell and
//! collecting by jet monomial. The collected coefficients are normalized by
//! fixed factors so they match the usual written form:
//!
//! | label | jet    | factor |
//! |-------|--------|--------|
//! | uyy   | `u_yy` | 1/2    |
//! | uxy   | `u_xy` | −1/2   |
//! | ux    | `u_x`  | −1     |
//! | uy    | `u_y`  | −1     |
//! | ut    | `u_t`  | −1     |
//! | u0    | 1      | 1      |
//! | uxt   | `u_xt` | 1/2    |
//! | uyt   | `u_yt` | −1/2   |
//! | utt   | `u_tt` | 1/4    |

use std::collections::BTreeMap;
use std::fmt;

use crate::gexpr::BasisTag;
use crate::heisenberg::{kohn_laplace, x_field, y_field, FirstOrderOp};
use crate::linalg;
use crate::poly::{int, rat, Poly, Rat};
use crate::prolong::{prolong2_of, Generator, JetExpr, VField};
use crate::var::{Mono, Var, COORDS};
use crate::verify::{laplace_jets, FCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnknownFn {
    Xi,
    Phi,
    Tau,
    Alpha,
    Beta,
}

impl UnknownFn {
    pub const ALL: [UnknownFn; 5] = [
        UnknownFn::Xi,
        UnknownFn::Phi,
        UnknownFn::Tau,
        UnknownFn::Alpha,
        UnknownFn::Beta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnknownFn::Xi => "xi",
            UnknownFn::Phi => "phi",
            UnknownFn::Tau => "tau",
            UnknownFn::Alpha => "alpha",
            UnknownFn::Beta => "beta",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Derivative multi-index over `(x, y, t)`.
pub type Deriv = [u8; 3];

fn deriv_suffix(d: &Deriv) -> String {
    let mut s = String::new();
    for (n, c) in d.iter().zip(['x', 'y', 't']) {
        for _ in 0..*n {
            s.push(c);
        }
    }
    s
}

/// `Σ coeff · ∂^d F` over unknown functions `F`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinForm {
    terms: BTreeMap<(UnknownFn, Deriv), Poly>,
}

impl LinForm {
    pub fn unknown(f: UnknownFn) -> Self {
        LinForm::term(Poly::one(), f, [0, 0, 0])
    }

    pub fn term(c: Poly, f: UnknownFn, d: Deriv) -> Self {
        let mut out = LinForm::default();
        out.add_term(f, d, c);
        out
    }

    pub fn add_term(&mut self, f: UnknownFn, d: Deriv, c: Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((f, d)).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&(f, d));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(UnknownFn, Deriv), &Poly)> {
        self.terms.iter()
    }

    pub fn scale(&self, r: &Rat) -> LinForm {
        self.times(&Poly::constant(r.clone()))
    }

    pub fn max_order(&self) -> u8 {
        self.terms
            .keys()
            .map(|(_, d)| d.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Apply a first-order operator with coefficients in the coordinates.
    pub fn apply_op(&self, op: &FirstOrderOp) -> LinForm {
        let mut out = LinForm::default();
        for (coef, c) in op.coeffs().into_iter().zip(COORDS) {
            if !coef.is_zero() {
                out = out.plus(&self.d_coord(c).times(coef));
            }
        }
        out
    }

    pub fn laplace(&self) -> LinForm {
        let (x, y) = (x_field(), y_field());
        self.apply_op(&x)
            .apply_op(&x)
            .plus(&self.apply_op(&y).apply_op(&y))
    }

    /// Group coefficients by their monomial over variables matching `pred`.
    pub fn collect_by(&self, pred: impl Fn(Var) -> bool + Copy) -> BTreeMap<Mono, LinForm> {
        let mut out: BTreeMap<Mono, LinForm> = BTreeMap::new();
        for ((f, d), c) in &self.terms {
            for (m, part) in c.collect_by(pred) {
                out.entry(m).or_default().add_term(*f, *d, part);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Substitute concrete components: `Σ coeff · ∂^d comp_F`.
    pub fn instantiate(&self, s: &VField) -> Poly {
        let comps = s.components();
        let mut out = Poly::zero();
        for ((f, d), c) in &self.terms {
            let mut e = comps[f.index()].clone();
            for (n, v) in d.iter().zip(COORDS) {
                e = e.partial_n(v, *n as u32);
            }
            out = out + c * &e;
        }
        out
    }

    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|((f, d), _)| (*f, d.iter().sum::<u8>(), std::cmp::Reverse(*d)));
        let mut parts = Vec::new();
        for ((f, d), c) in terms {
            let name = if d == &[0, 0, 0] {
                f.name().to_string()
            } else {
                format!("{}_{}", f.name(), deriv_suffix(d))
            };
            let cs = c.canonical_string();
            let s = if cs == "1" {
                name
            } else if cs == "-1" {
                format!("-{name}")
            } else if c.len() == 1 {
                format!("{cs}*{name}")
            } else {
                format!("({cs})*{name}")
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl JetExpr for LinForm {
    fn zero() -> Self {
        LinForm::default()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((f, d), c) in &other.terms {
            out.add_term(*f, *d, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.times(&Poly::from_int(-1)))
    }
    fn times(&self, p: &Poly) -> Self {
        let mut out = LinForm::default();
        for ((f, d), c) in &self.terms {
            out.add_term(*f, *d, c * p);
        }
        out
    }
    fn d_coord(&self, c: Var) -> Self {
        let i = COORDS.iter().position(|v| *v == c).expect("coordinate");
        let mut out = LinForm::default();
        for ((f, d), coef) in &self.terms {
            out.add_term(*f, *d, coef.partial(c));
            let mut d2 = *d;
            d2[i] += 1;
            out.add_term(*f, d2, coef.clone());
        }
        out
    }
    fn d_var(&self, v: Var) -> Self {
        let mut out = LinForm::default();
        for ((f, d), c) in &self.terms {
            out.add_term(*f, *d, c.partial(v));
        }
        out
    }
}

/// A determining equation: linear forms attached to nonlinearity tags.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinDet {
    parts: BTreeMap<BasisTag, LinForm>,
}

impl LinDet {
    pub fn plain(l: LinForm) -> Self {
        LinDet::tagged(BasisTag::Plain, l)
    }

    pub fn tagged(tag: BasisTag, l: LinForm) -> Self {
        let mut out = LinDet::default();
        out.add_part(tag, l);
        out
    }

    pub fn add_part(&mut self, tag: BasisTag, l: LinForm) {
        let slot = self.parts.entry(tag).or_default();
        *slot = slot.plus(&l);
        if slot.is_zero() {
            self.parts.remove(&tag);
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = (&BasisTag, &LinForm)> {
        self.parts.iter()
    }

    pub fn part(&self, tag: BasisTag) -> LinForm {
        self.parts.get(&tag).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, o: &LinDet) -> LinDet {
        let mut out = self.clone();
        for (t, l) in &o.parts {
            out.add_part(*t, l.clone());
        }
        out
    }

    pub fn sub(&self, o: &LinDet) -> LinDet {
        self.add(&o.times(&Poly::from_int(-1)))
    }

    pub fn times(&self, p: &Poly) -> LinDet {
        let mut out = LinDet::default();
        for (t, l) in &self.parts {
            out.add_part(*t, l.times(p));
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> LinDet {
        self.times(&Poly::constant(r.clone()))
    }

    pub fn d_coord(&self, c: Var) -> LinDet {
        let mut out = LinDet::default();
        for (t, l) in &self.parts {
            out.add_part(*t, l.d_coord(c));
        }
        out
    }

    /// Plain-only equations, as a single linear form.
    pub fn as_plain(&self) -> Option<&LinForm> {
        match self.parts.len() {
            0 => None,
            1 => self.parts.get(&BasisTag::Plain),
            _ => None,
        }
    }

    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.parts
            .iter()
            .map(|(t, l)| match t {
                BasisTag::Plain => l.canonical_string(),
                _ => format!("[{}]*{}", l.canonical_string(), t.factor_string()),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for LinDet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Ordered, labelled equations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DetSystem {
    pub equations: Vec<(String, LinDet)>,
}

impl DetSystem {
    pub fn get(&self, label: &str) -> Option<&LinDet> {
        self.equations
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, e)| e)
    }

    fn eq(&self, label: &str) -> &LinDet {
        self.get(label).unwrap_or_else(|| panic!("missing {label}"))
    }
}

/// Jet selecting each equation, with its normalization factor.
pub fn normalization() -> [(&'static str, Mono, Rat); 9] {
    let m = Mono::var;
    [
        ("uyy", m(Var::Uyy), rat(1, 2)),
        ("uxy", m(Var::Uxy), rat(-1, 2)),
        ("ux", m(Var::Ux), int(-1)),
        ("uy", m(Var::Uy), int(-1)),
        ("ut", m(Var::Ut), int(-1)),
        ("u0", Mono::one(), int(1)),
        ("uxt", m(Var::Uxt), rat(1, 2)),
        ("uyt", m(Var::Uyt), rat(-1, 2)),
        ("utt", m(Var::Utt), rat(1, 4)),
    ]
}

/// The on-shell condition for arbitrary `f`, collected by jet monomial.
pub fn collected_condition() -> BTreeMap<Mono, LinDet> {
    let g = Generator {
        xi: LinForm::unknown(UnknownFn::Xi),
        phi: LinForm::unknown(UnknownFn::Phi),
        tau: LinForm::unknown(UnknownFn::Tau),
        alpha: LinForm::unknown(UnknownFn::Alpha),
        beta: LinForm::unknown(UnknownFn::Beta),
    };
    let pr = prolong2_of(&g);
    let h = laplace_jets();
    let mut plain = LinForm::default();
    for (c, comp) in COORDS.into_iter().zip(g.base()) {
        plain = plain.plus(&comp.times(&h.partial(c)));
    }
    for (jet, coeff) in pr.by_jet() {
        plain = plain.plus(&coeff.times(&h.partial(jet)));
    }
    // plain = rest + a·u_xx; on solutions u_xx = −(H − u_xx) − f
    let by_uxx = plain.collect_by(|v| v == Var::Uxx);
    let a = by_uxx
        .get(&Mono::var(Var::Uxx))
        .cloned()
        .unwrap_or_default();
    let rest = by_uxx.get(&Mono::one()).cloned().unwrap_or_default();
    let others = &h - &Poly::var(Var::Uxx);
    let plain_shell = rest.minus(&a.times(&others));

    let mut out: BTreeMap<Mono, LinDet> = BTreeMap::new();
    for (m, l) in plain_shell.collect_by(|v| v.is_jet()) {
        out.entry(m).or_default().add_part(BasisTag::Plain, l);
    }
    let free = out.entry(Mono::one()).or_default();
    free.add_part(BasisTag::FPrime, g.eta());
    free.add_part(BasisTag::F, a.times(&Poly::from_int(-1)));
    out.retain(|_, v| !v.is_zero());
    out
}

/// The nine determining equations, re-derived and normalized.
pub fn derive_determining() -> DetSystem {
    let collected = collected_condition();
    let mut equations = Vec::new();
    for (label, jet, factor) in normalization() {
        let e = collected.get(&jet).cloned().unwrap_or_default();
        equations.push((label.to_string(), e.scale(&factor)));
    }
    DetSystem { equations }
}

/// Jet monomials that are not among the nine expected ones.
pub fn unexpected_jet_monomials() -> Vec<Mono> {
    let expected: Vec<Mono> = normalization().into_iter().map(|(_, m, _)| m).collect();
    collected_condition()
        .into_keys()
        .filter(|m| !expected.contains(m))
        .collect()
}

fn lf(terms: &[(&str, UnknownFn, &str)]) -> LinForm {
    let mut out = LinForm::default();
    for (c, f, d) in terms {
        let mut idx = [0u8; 3];
        for ch in d.chars() {
            idx[match ch {
                'x' => 0,
                'y' => 1,
                't' => 2,
                _ => panic!("bad derivative {d}"),
            }] += 1;
        }
        out.add_term(*f, idx, crate::parse::parse_poly(c).expect("coefficient"));
    }
    out
}

fn unk(f: UnknownFn) -> LinForm {
    LinForm::unknown(f)
}

fn p(s: &str) -> Poly {
    crate::parse::parse_poly(s).expect("coefficient")
}

/// The written form of the nine equations.
pub fn transcribed_determining() -> DetSystem {
    use UnknownFn::*;
    let (x, y) = (x_field(), y_field());
    let xa = unk(Alpha).apply_op(&x);
    let ya = unk(Alpha).apply_op(&y);
    let mut u0 = LinDet::plain(
        unk(Alpha)
            .laplace()
            .times(&p("u"))
            .plus(&unk(Beta).laplace()),
    );
    u0.add_part(BasisTag::FPrime, unk(Alpha).times(&p("u")).plus(&unk(Beta)));
    u0.add_part(
        BasisTag::F,
        lf(&[("4*y", Xi, "t"), ("2", Xi, "x"), ("-1", Alpha, "")]),
    );
    let eqs = vec![
        (
            "uyy",
            LinDet::plain(lf(&[
                ("1", Xi, "x"),
                ("2*y", Xi, "t"),
                ("-1", Phi, "y"),
                ("2*x", Phi, "t"),
            ])),
        ),
        (
            "uxy",
            LinDet::plain(lf(&[
                ("1", Xi, "y"),
                ("-2*x", Xi, "t"),
                ("1", Phi, "x"),
                ("2*y", Phi, "t"),
            ])),
        ),
        (
            "ux",
            LinDet::plain(unk(Xi).laplace().minus(&xa.times(&p("2")))),
        ),
        (
            "uy",
            LinDet::plain(unk(Phi).laplace().minus(&ya.times(&p("2")))),
        ),
        (
            "ut",
            LinDet::plain(
                unk(Tau)
                    .laplace()
                    .minus(&xa.times(&p("4*y")))
                    .plus(&ya.times(&p("4*x"))),
            ),
        ),
        ("u0", u0),
        (
            "uxt",
            LinDet::plain(lf(&[
                ("2*y", Xi, "x"),
                ("2*x", Xi, "y"),
                ("4*(y^2-x^2)", Xi, "t"),
                ("2", Phi, ""),
                ("-1", Tau, "x"),
                ("-2*y", Tau, "t"),
            ])),
        ),
        (
            "uyt",
            LinDet::plain(lf(&[
                ("4*x", Xi, "x"),
                ("8*x*y", Xi, "t"),
                ("2", Xi, ""),
                ("2*y", Phi, "x"),
                ("-2*x", Phi, "y"),
                ("4*(x^2+y^2)", Phi, "t"),
                ("1", Tau, "y"),
                ("-2*x", Tau, "t"),
            ])),
        ),
        (
            "utt",
            LinDet::plain(lf(&[
                ("2*(x^2+y^2)", Xi, "x"),
                ("4*y*(x^2+y^2)", Xi, "t"),
                ("2*x", Xi, ""),
                ("2*y", Phi, ""),
                ("-y", Tau, "x"),
                ("x", Tau, "y"),
                ("-2*(x^2+y^2)", Tau, "t"),
            ])),
        ),
    ];
    DetSystem {
        equations: eqs.into_iter().map(|(l, e)| (l.to_string(), e)).collect(),
    }
}

/// The seven-equation system in operator form.
pub fn reduced_system() -> DetSystem {
    use UnknownFn::*;
    let (x, y) = (x_field(), y_field());
    let xo = |f: UnknownFn| unk(f).apply_op(&x);
    let yo = |f: UnknownFn| unk(f).apply_op(&y);
    let mut r5 = LinDet::plain(
        unk(Alpha)
            .laplace()
            .times(&p("u"))
            .plus(&unk(Beta).laplace()),
    );
    r5.add_part(BasisTag::FPrime, unk(Alpha).times(&p("u")).plus(&unk(Beta)));
    r5.add_part(BasisTag::F, xo(Xi).times(&p("2")).minus(&unk(Alpha)));
    let eqs = vec![
        ("r1", LinDet::plain(xo(Xi).minus(&yo(Phi)))),
        ("r2", LinDet::plain(yo(Xi).plus(&xo(Phi)))),
        (
            "r3",
            LinDet::plain(unk(Xi).laplace().minus(&xo(Alpha).times(&p("2")))),
        ),
        (
            "r4",
            LinDet::plain(unk(Phi).laplace().minus(&yo(Alpha).times(&p("2")))),
        ),
        ("r5", r5),
        (
            "r6",
            LinDet::plain(
                xo(Tau)
                    .minus(&xo(Xi).times(&p("2*y")))
                    .minus(&yo(Xi).times(&p("2*x")))
                    .minus(&unk(Phi).times(&p("2"))),
            ),
        ),
        (
            "r7",
            LinDet::plain(
                yo(Tau)
                    .plus(&xo(Xi).times(&p("2*x")))
                    .minus(&yo(Xi).times(&p("2*y")))
                    .plus(&unk(Xi).times(&p("2"))),
            ),
        ),
    ];
    DetSystem {
        equations: eqs.into_iter().map(|(l, e)| (l.to_string(), e)).collect(),
    }
}

/// Per-equation comparison of the derived and written systems.
pub fn fidelity_report() -> Vec<(String, bool)> {
    let derived = derive_determining();
    let written = transcribed_determining();
    written
        .equations
        .iter()
        .map(|(l, e)| (l.clone(), derived.get(l) == Some(e)))
        .collect()
}

/// Operators a multiplier search may apply to a generator equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOp {
    Id,
    D(Var),
}

impl DerivOp {
    fn apply(self, e: &LinDet) -> LinDet {
        match self {
            DerivOp::Id => e.clone(),
            DerivOp::D(v) => e.d_coord(v),
        }
    }

    fn name(self) -> String {
        match self {
            DerivOp::Id => String::new(),
            DerivOp::D(v) => format!("d_{v} "),
        }
    }
}

/// A combination `target = Σ m_i · op_i(eq_i)` with polynomial multipliers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination {
    pub terms: Vec<(String, DerivOp, Poly)>,
}

impl Combination {
    pub fn evaluate(&self, sys: &DetSystem) -> LinDet {
        let mut out = LinDet::default();
        for (l, op, m) in &self.terms {
            out = out.add(&op.apply(sys.eq(l)).times(m));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(l, op, m)| format!("({})*{}{}", m, op.name(), l))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn monomials_upto(d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push(Mono::from_pairs([(Var::X, a), (Var::Y, b), (Var::T, c)]));
            }
        }
    }
    out.sort();
    out
}

/// Key identifying one scalar coefficient of a `LinDet`.
type CoeffKey = (BasisTag, UnknownFn, Deriv, Mono);

fn coefficient_map(e: &LinDet) -> BTreeMap<CoeffKey, Rat> {
    let mut out = BTreeMap::new();
    for (t, l) in e.parts() {
        for ((f, d), c) in l.terms() {
            for (m, r) in c.terms() {
                out.insert((*t, *f, *d, m.clone()), r.clone());
            }
        }
    }
    out
}

/// Search for polynomial multipliers of degree ≤ `deg` expressing `target`
/// through `ops` applied to the `using` equations. Exact linear solve.
pub fn find_combination(
    sys: &DetSystem,
    target: &LinDet,
    using: &[&str],
    ops: &[DerivOp],
    deg: u32,
) -> Option<Combination> {
    let monos = monomials_upto(deg);
    let mut columns: Vec<(String, DerivOp, Mono)> = Vec::new();
    let mut col_maps: Vec<BTreeMap<CoeffKey, Rat>> = Vec::new();
    for l in using {
        for op in ops {
            let base = op.apply(sys.eq(l));
            for m in &monos {
                columns.push((l.to_string(), *op, m.clone()));
                col_maps.push(coefficient_map(&base.times(&Poly::term(int(1), m.clone()))));
            }
        }
    }
    let target_map = coefficient_map(target);
    let mut keys: BTreeMap<CoeffKey, usize> = BTreeMap::new();
    for k in col_maps
        .iter()
        .flat_map(|c| c.keys())
        .chain(target_map.keys())
    {
        let n = keys.len();
        keys.entry(k.clone()).or_insert(n);
    }
    let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); keys.len()];
    for (j, cm) in col_maps.iter().enumerate() {
        for (k, r) in cm {
            rows[keys[k]].push((j, r.clone()));
        }
    }
    let mut b = vec![int(0); keys.len()];
    for (k, r) in &target_map {
        b[keys[k]] = r.clone();
    }
    let x = linalg::solve(&rows, &b, columns.len())?;
    let mut acc: Vec<(String, DerivOp, Poly)> = Vec::new();
    for ((l, op, m), c) in columns.into_iter().zip(x) {
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        let term = Poly::term(c, m);
        match acc.iter_mut().find(|(l2, op2, _)| *l2 == l && *op2 == op) {
            Some(slot) => slot.2 = &slot.2 + &term,
            None => acc.push((l, op, term)),
        }
    }
    Some(Combination { terms: acc })
}

/// `y·uxt + x·uyt − x·uyy − y·uxy`, the relation as usually written.
pub fn literal_utt_relation() -> Combination {
    Combination {
        terms: vec![
            ("uxt".into(), DerivOp::Id, p("y")),
            ("uyt".into(), DerivOp::Id, p("x")),
            ("uyy".into(), DerivOp::Id, p("-x")),
            ("uxy".into(), DerivOp::Id, p("-y")),
        ],
    }
}

#[derive(Debug, Clone)]
pub struct DependencyReport {
    /// Residual `utt − (y·uxt + x·uyt − x·uyy − y·uxy)`.
    pub literal_residual: LinDet,
    /// Multipliers for utt over {uyy, uxy, uxt, uyt}, if any exist.
    pub utt: Option<Combination>,
    /// Multipliers for ut over {uyy, uxy, uxt, uyt} alone.
    pub ut_restricted: Option<Combination>,
    /// Multipliers for ut once ux, uy are admitted, with the degree used.
    pub ut: Option<(u32, Combination)>,
}

impl DependencyReport {
    pub fn literal_holds(&self) -> bool {
        self.literal_residual.is_zero()
    }

    pub fn ok(&self) -> bool {
        self.literal_holds() && self.utt.is_some() && self.ut.is_some()
    }
}

const DERIV_OPS: [DerivOp; 4] = [
    DerivOp::Id,
    DerivOp::D(Var::X),
    DerivOp::D(Var::Y),
    DerivOp::D(Var::T),
];

pub fn check_dependencies(sys: &DetSystem) -> DependencyReport {
    let utt = sys.eq("utt");
    let literal_residual = utt.sub(&literal_utt_relation().evaluate(sys));
    let four = ["uyy", "uxy", "uxt", "uyt"];
    let utt_comb = find_combination(sys, utt, &four, &[DerivOp::Id], 2);
    let ut = sys.eq("ut");
    let ut_restricted = find_combination(sys, ut, &four, &DERIV_OPS, 2);
    let six = ["uyy", "uxy", "ux", "uy", "uxt", "uyt"];
    let ut_comb =
        (0..=3).find_map(|d| find_combination(sys, ut, &six, &DERIV_OPS, d).map(|c| (d, c)));
    DependencyReport {
        literal_residual,
        utt: utt_comb,
        ut_restricted,
        ut: ut_comb,
    }
}

/// Express each reduced equation through the nine, with degree-≤1
/// multipliers and no derivatives.
pub fn reduced_in_terms_of_nine() -> Vec<(String, Option<Combination>)> {
    let nine = derive_determining();
    let labels: Vec<&str> = nine.equations.iter().map(|(l, _)| l.as_str()).collect();
    reduced_system()
        .equations
        .iter()
        .map(|(l, e)| {
            (
                l.clone(),
                find_combination(&nine, e, &labels, &[DerivOp::Id], 1),
            )
        })
        .collect()
}

/// One evaluated consequence identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Consequence {
    pub label: &'static str,
    pub statement: &'static str,
    pub residual: Poly,
}

impl Consequence {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// The identities every solution of the reduced system satisfies.
pub fn check_consequences(s: &VField) -> Vec<Consequence> {
    let (x, y) = (x_field(), y_field());
    let d_t = |e: &Poly| e.partial(Var::T);
    let xi_t = d_t(&s.xi);
    let phi_t = d_t(&s.phi);
    let xxi = x.apply(&s.xi);
    let four = int(4);
    let two = int(2);
    let yv = Poly::var(Var::Y);
    let xv = Poly::var(Var::X);
    vec![
        Consequence {
            label: "lap_phi",
            statement: "Δφ = 4ξ_t",
            residual: kohn_laplace(&s.phi) - xi_t.scale(&four),
        },
        Consequence {
            label: "lap_xi",
            statement: "Δξ = −4φ_t",
            residual: kohn_laplace(&s.xi) + phi_t.scale(&four),
        },
        Consequence {
            label: "x_alpha",
            statement: "Xα = −2φ_t",
            residual: x.apply(&s.alpha) + phi_t.scale(&two),
        },
        Consequence {
            label: "y_alpha",
            statement: "Yα = 2ξ_t",
            residual: y.apply(&s.alpha) - xi_t.scale(&two),
        },
        Consequence {
            label: "tau_t",
            statement: "τ_t = 2yξ_t − 2xφ_t + 2Xξ",
            residual: d_t(&s.tau) - (&yv * &xi_t).scale(&two) + (&xv * &phi_t).scale(&two)
                - xxi.scale(&two),
        },
        Consequence {
            label: "alpha_t",
            statement: "α_t = −(Xξ)_t",
            residual: d_t(&s.alpha) + d_t(&xxi),
        },
    ]
}

/// Instantiate every tag of an equation on concrete components.
pub fn instantiate_det(e: &LinDet, s: &VField) -> BTreeMap<BasisTag, Poly> {
    e.parts()
        .map(|(t, l)| (*t, l.instantiate(s)))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// Does `s` satisfy the reduced system for this `f`? The `f`-coupled
/// equation is specialized through the verifier's tag rules.
pub fn satisfies_reduced(s: &VField, fc: &FCase) -> bool {
    crate::ansatz::reduced_residuals(s, fc)
        .iter()
        .all(|(_, g)| g.is_zero())
}
