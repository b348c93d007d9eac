//! Classification by polynomial ansatz.
//!
//! Each component of the generator is a polynomial of degree ≤ d in
//! `(x, y, t)` with independent unknown coefficients. The reduced
//! determining system is linear in the components, so every coefficient
//! (per equation, tag and monomial) of every equation is one linear row.
//! Rows are assembled column by column: column `j` is the system applied
//! to the unit generator carrying the `j`-th unknown.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::determining::{instantiate_det, reduced_system, LinDet};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::gexpr::{BasisTag, GExpr};
use crate::heisenberg::kohn_laplace;
use crate::linalg::{self, Echelon, Row, UniPoly};
use crate::poly::{int, rat_string, Poly, Rat};
use crate::prolong::VField;
use crate::var::{Mono, Var};
use crate::verify::{verify_generator, FCase, Param};

/// Monomials in `(x, y, t)` of total degree ≤ d, in canonical order.
pub fn coordinate_monomials(d: u32) -> Vec<Mono> {
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

/// The ansatz: unknown `c_j` sits on component `j / n`, monomial `j % n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ansatz {
    pub degree: u32,
    pub monos: Vec<Mono>,
}

impl Ansatz {
    pub fn new(degree: u32) -> Self {
        Ansatz {
            degree,
            monos: coordinate_monomials(degree),
        }
    }

    /// Number of unknowns, `5 · C(d+3, 3)`.
    pub fn m(&self) -> usize {
        5 * self.monos.len()
    }

    pub fn component_of(&self, j: usize) -> usize {
        j / self.monos.len()
    }

    /// The generator carrying only unknown `j`, with unit coefficient.
    pub fn unit(&self, j: usize) -> VField {
        let n = self.monos.len();
        let mut c: [Poly; 5] = Default::default();
        c[j / n] = Poly::term(int(1), self.monos[j % n].clone());
        VField::from_components(c)
    }

    /// The generic generator with symbols `c_j`.
    pub fn symbolic(&self) -> VField {
        let n = self.monos.len();
        let mut c: [Poly; 5] = Default::default();
        for (j, slot) in (0..self.m()).map(|j| (j, j / n)) {
            let m = self.monos[j % n].mul(&Mono::var(Var::C(j as u32)));
            c[slot].add_term(m, int(1));
        }
        VField::from_components(c)
    }

    pub fn vector_to_field(&self, v: &[Rat]) -> VField {
        let n = self.monos.len();
        let mut c: [Poly; 5] = Default::default();
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                c[j / n].add_term(self.monos[j % n].clone(), x.clone());
            }
        }
        VField::from_components(c)
    }

    /// Inverse of [`Ansatz::vector_to_field`]; `None` if a component
    /// exceeds the degree bound or is not over the coordinates.
    pub fn field_to_vector(&self, s: &VField) -> Option<Vec<Rat>> {
        let n = self.monos.len();
        let mut v = vec![int(0); self.m()];
        for (i, comp) in s.components().into_iter().enumerate() {
            for (m, c) in comp.terms() {
                let k = self.monos.binary_search(m).ok()?;
                v[i * n + k] = c.clone();
            }
        }
        Some(v)
    }

    fn uni_vector_to_field(&self, v: &[UniPoly]) -> VField {
        let n = self.monos.len();
        let mut c: [Poly; 5] = Default::default();
        for (j, x) in v.iter().enumerate() {
            let term = &x.to_poly() * &Poly::term(int(1), self.monos[j % n].clone());
            c[j / n] = &c[j / n] + &term;
        }
        VField::from_components(c)
    }
}

/// `f` and `f'` as graded expressions, for specializing the `f`-coupled
/// equation.
fn f_and_fprime(fc: &FCase) -> (GExpr, GExpr) {
    let kpoly = |k: &Param| match k {
        Param::Value(r) => Poly::constant(r.clone()),
        Param::Symbol => Poly::var(Var::K),
    };
    match fc {
        FCase::Arbitrary => (
            GExpr::tagged(BasisTag::F, Poly::one()),
            GExpr::tagged(BasisTag::FPrime, Poly::one()),
        ),
        FCase::Zero => (GExpr::zero(), GExpr::zero()),
        FCase::Const(c) => (GExpr::plain(Poly::constant(c.clone())), GExpr::zero()),
        FCase::Linear(k) => (
            GExpr::plain(&kpoly(k) * &Poly::var(Var::U)),
            GExpr::plain(kpoly(k)),
        ),
        FCase::Power { k, .. } => (
            GExpr::tagged(BasisTag::UPow(0), kpoly(k)),
            GExpr::tagged(BasisTag::UPow(-1), &kpoly(k) * &Poly::var(Var::P)),
        ),
        FCase::Exp(k) => {
            let e = GExpr::tagged(BasisTag::ExpU, kpoly(k));
            (e.clone(), e)
        }
    }
}

/// An equation of the reduced system on concrete components, with `f`
/// and `f'` put in place.
pub fn specialize(e: &LinDet, s: &VField, fc: &FCase) -> GExpr {
    let (f, fp) = f_and_fprime(fc);
    let mut out = GExpr::zero();
    for (tag, p) in instantiate_det(e, s) {
        let piece = match tag {
            BasisTag::Plain => GExpr::plain(p),
            BasisTag::F => f.mul_poly(&p),
            BasisTag::FPrime => fp.mul_poly(&p),
            other => GExpr::tagged(other, p),
        };
        out = out.add(&piece);
    }
    fc.finish(&out)
}

/// Every reduced equation evaluated on `s`.
pub fn reduced_residuals(s: &VField, fc: &FCase) -> Vec<(String, GExpr)> {
    reduced_system()
        .equations
        .iter()
        .map(|(l, e)| (l.clone(), specialize(e, s, fc)))
        .collect()
}

/// The case the solver runs: symbolic `k` normalized to 1.
pub fn solver_case(fc: &FCase) -> FCase {
    let one = || Param::Value(int(1));
    let fix = |k: &Param| match k {
        Param::Symbol => one(),
        v => v.clone(),
    };
    match fc {
        FCase::Linear(k) => FCase::Linear(fix(k)),
        FCase::Power { k, p } => FCase::Power {
            k: fix(k),
            p: p.clone(),
        },
        FCase::Exp(k) => FCase::Exp(fix(k)),
        other => other.clone(),
    }
}

/// Cases whose `β` solves a linear equation on its own (`Δβ + kβ = 0`), so
/// its polynomial kernel grows with the degree and is split off.
fn beta_separable(fc: &FCase) -> bool {
    matches!(fc, FCase::Zero | FCase::Linear(_) | FCase::Const(_))
}

/// Row key: equation, tag, monomial over `(x, y, t, u)`.
type RowKey = (usize, BasisTag, Mono);

/// The assembled linear system; entries are polynomials in `p` (constant
/// unless `p` is symbolic).
#[derive(Debug, Clone)]
pub struct Assembled {
    pub ansatz: Ansatz,
    pub case: FCase,
    pub rows: Vec<Vec<(usize, Poly)>>,
    pub beta_included: bool,
}

impl Assembled {
    pub fn is_symbolic(&self) -> bool {
        matches!(
            self.case,
            FCase::Power {
                p: Param::Symbol,
                ..
            }
        )
    }

    pub fn rational_rows(&self) -> Vec<Vec<(usize, Rat)>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, p)| (*c, p.as_constant().expect("concrete entry")))
                    .collect()
            })
            .collect()
    }

    pub fn symbolic_rows(&self) -> Vec<Row<UniPoly>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(c, p)| (*c, to_unipoly(p))).collect())
            .collect()
    }
}

fn to_unipoly(p: &Poly) -> UniPoly {
    let mut c = vec![int(0); p.degree_in(Var::P) as usize + 1];
    for (m, r) in p.terms() {
        c[m.exp(Var::P) as usize] += r;
    }
    UniPoly::new(c)
}

/// Assemble the linear system for `fc` at degree `d`. For `f = 0`, `ku`
/// and `c`, `with_beta = false` pins the β unknowns to 0; elsewhere β is
/// always solved for (it is forced, e.g. `β = −2Xξ` for `e^u`).
pub fn assemble(fc: &FCase, d: u32, with_beta: bool) -> Assembled {
    let case = solver_case(fc);
    let ansatz = Ansatz::new(d);
    let sys = reduced_system();
    let beta_included = with_beta || !beta_separable(&case);
    let mut keyed: BTreeMap<RowKey, Vec<(usize, Poly)>> = BTreeMap::new();
    for j in 0..ansatz.m() {
        let unit = ansatz.unit(j);
        for (i, (_, e)) in sys.equations.iter().enumerate() {
            let g = specialize(e, &unit, &case);
            for (tag, poly) in g.parts() {
                for (m, part) in poly.collect_by(|v| v != Var::P) {
                    keyed.entry((i, *tag, m)).or_default().push((j, part));
                }
            }
        }
    }
    let mut rows: Vec<Vec<(usize, Poly)>> = keyed.into_values().collect();
    if !beta_included {
        let n = ansatz.monos.len();
        for j in 4 * n..5 * n {
            rows.push(vec![(j, Poly::one())]);
        }
    }
    Assembled {
        ansatz,
        case,
        rows,
        beta_included,
    }
}

/// Exact kernel of the assembled system (concrete parameters).
pub fn nullspace(a: &Assembled) -> Vec<Vec<Rat>> {
    linalg::nullspace(&a.rational_rows(), a.ansatz.m())
}

/// Result of a symbolic-`p` elimination.
#[derive(Debug, Clone)]
pub struct SymbolicKernel {
    pub basis: Vec<VField>,
    /// Rational roots of the pivots, with the kernel dimension at that `p`.
    pub special: Vec<(Rat, Option<usize>)>,
    pub pivot_roots: Vec<Rat>,
}

/// Kernel over `Q(p)`; every pivot is tested for rational roots, and each
/// admissible root is re-solved with `p` concrete.
pub fn symbolic_kernel(a: &Assembled) -> SymbolicKernel {
    let mut e: Echelon<UniPoly> = Echelon::new(a.ansatz.m());
    for r in a.symbolic_rows() {
        e.insert(r);
    }
    let kernel = e.kernel();
    let mut roots: Vec<Rat> = Vec::new();
    let leads = e.pivot_rows().map(|(_, row)| &row[0].1);
    for q in leads.chain(e.removed_contents()) {
        for r in q.rational_roots() {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    for probe in [int(0), int(1), int(2), int(3)] {
        if e.pivot_rows()
            .any(|(_, row)| row[0].1.eval(&probe).is_zero())
            && !roots.contains(&probe)
        {
            roots.push(probe);
        }
    }
    roots.sort();
    let k = match &a.case {
        FCase::Power { k, .. } => k.clone(),
        _ => Param::Value(int(1)),
    };
    let special = roots
        .iter()
        .map(|r| {
            let dim = FCase::power(k.clone(), Param::Value(r.clone()))
                .ok()
                .map(|fc| nullspace(&assemble(&fc, a.ansatz.degree, a.beta_included)).len());
            (r.clone(), dim)
        })
        .collect();
    SymbolicKernel {
        basis: kernel
            .iter()
            .map(|v| a.ansatz.uni_vector_to_field(v))
            .collect(),
        special,
        pivot_roots: roots,
    }
}

/// A classified symmetry algebra.
#[derive(Debug, Clone)]
pub struct Classification {
    pub case: FCase,
    pub degree: u32,
    /// The solver's deterministic basis.
    pub basis: Vec<VField>,
    /// Whether each basis element has zero defect.
    pub verified: Vec<bool>,
    /// The classification's named generators, when they span the same space.
    pub named: Option<Vec<(String, VField)>>,
    pub notes: Vec<String>,
}

impl Classification {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Named basis if available, else `S1, S2, …`.
    pub fn labelled(&self) -> Vec<(String, VField)> {
        match &self.named {
            Some(n) => n.clone(),
            None => self
                .basis
                .iter()
                .enumerate()
                .map(|(i, v)| (format!("S{}", i + 1), v.clone()))
                .collect(),
        }
    }
}

/// Mutual span membership of two generator lists, over `Q(p)` (which is
/// plain `Q` when no component mentions `p`).
pub fn same_span(a: &[VField], b: &[VField]) -> bool {
    let deg = a
        .iter()
        .chain(b)
        .flat_map(|v| v.components().map(|c| c.degree()))
        .max()
        .unwrap_or(0);
    let ans = Ansatz::new(deg);
    let to_row = |v: &VField| -> Row<UniPoly> {
        let n = ans.monos.len();
        let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
        for (i, comp) in v.components().into_iter().enumerate() {
            for (m, pc) in comp.collect_by(|w| w != Var::P) {
                let k = ans.monos.binary_search(&m).expect("coordinate monomial");
                acc.insert(i * n + k, pc);
            }
        }
        acc.into_iter()
            .map(|(c, p)| (c, to_unipoly(&p)))
            .filter(|e| !linalg::Domain::is_zero(&e.1))
            .collect()
    };
    let rank = |vs: &[&VField]| {
        let mut e: Echelon<UniPoly> = Echelon::new(ans.m());
        for v in vs {
            e.insert(to_row(v));
        }
        e.rank()
    };
    let ra = rank(&a.iter().collect::<Vec<_>>());
    let rb = rank(&b.iter().collect::<Vec<_>>());
    let rab = rank(&a.iter().chain(b).collect::<Vec<_>>());
    ra == rab && rb == rab
}

/// `u = v + s` carries a generator of the `v`-equation to the `u`-equation:
/// `β' = β − αs + ξ s_x + φ s_y + τ s_t`.
pub fn transport_shift(v: &VField, s: &Poly) -> VField {
    let mut out = v.clone();
    out.beta = &(&(&(&v.beta - &(&v.alpha * s)) + &(&v.xi * &s.partial(Var::X)))
        + &(&v.phi * &s.partial(Var::Y)))
        + &(&v.tau * &s.partial(Var::T));
    out
}

/// Classify the symmetry algebra at ansatz degree `d`, β excluded.
pub fn classify(fc: &FCase, d: u32) -> Classification {
    let mut notes = Vec::new();
    let (basis, named_family) = match fc {
        FCase::Const(c) => {
            let shift = constant_shift(c);
            notes.push(format!("reduced to f = 0 by u = v + ({})", shift.shift));
            if shift.discrepancy() {
                notes.push(format!(
                    "the shift u = v + c*x^2/2 leaves the constant {} instead of 0",
                    rat_string(&shift.plus_residual)
                ));
            }
            let zero = classify(&FCase::Zero, d);
            (
                zero.basis
                    .iter()
                    .map(|v| transport_shift(v, &shift.shift))
                    .collect(),
                fixtures::reference_family(fc),
            )
        }
        FCase::Power {
            p: Param::Symbol, ..
        } => {
            let a = assemble(fc, d, false);
            let sk = symbolic_kernel(&a);
            let mut generic = Vec::new();
            for (r, dim) in &sk.special {
                if r.is_zero() || r.is_one() {
                    notes.push(format!("pivot vanishes at excluded p = {}", rat_string(r)));
                } else if *dim == Some(sk.basis.len()) {
                    generic.push(rat_string(r));
                } else {
                    let dim = dim.map(|x| x.to_string()).unwrap_or_else(|| "?".into());
                    notes.push(format!(
                        "special branch p = {}: dimension {dim}",
                        rat_string(r)
                    ));
                }
            }
            if !generic.is_empty() {
                notes.push(format!(
                    "candidate p = {} re-solved: generic dimension",
                    generic.join(", ")
                ));
            }
            (sk.basis, fixtures::reference_family(fc))
        }
        _ => {
            let a = assemble(fc, d, false);
            let basis = nullspace(&a)
                .iter()
                .map(|v| a.ansatz.vector_to_field(v))
                .collect();
            if fc.exponent().is_some_and(|p| *p == int(2)) {
                notes.push(
                    "p = 2 is outside the proof of the classification; solved with u^1 folded"
                        .into(),
                );
            }
            (basis, fixtures::reference_family(fc))
        }
    };
    let verified = basis
        .iter()
        .map(|v| verify_generator(v, fc).is_symmetry)
        .collect();
    let named_vs: Vec<VField> = named_family.iter().map(|(_, v)| v.clone()).collect();
    let named =
        (named_vs.len() == basis.len() && same_span(&basis, &named_vs)).then_some(named_family);
    Classification {
        case: fc.clone(),
        degree: d,
        basis,
        verified,
        named,
        notes,
    }
}

/// Polynomial solutions of `Δβ + kβ = 0` of degree ≤ d.
pub fn beta_kernel(fc: &FCase, d: u32) -> Result<Vec<Poly>> {
    let k = match fc {
        FCase::Zero => int(0),
        FCase::Linear(Param::Value(k)) => k.clone(),
        FCase::Linear(Param::Symbol) => {
            return Err(Error::NotConcrete("beta kernel needs a concrete k".into()))
        }
        other => {
            return Err(Error::InvalidFCase(format!(
                "beta kernel is defined for zero and linear f, not {other}"
            )))
        }
    };
    let monos = coordinate_monomials(d);
    let mut keyed: BTreeMap<Mono, Vec<(usize, Rat)>> = BTreeMap::new();
    for (j, m) in monos.iter().enumerate() {
        let b = Poly::term(int(1), m.clone());
        let img = kohn_laplace(&b) + b.scale(&k);
        for (mm, c) in img.terms() {
            keyed.entry(mm.clone()).or_default().push((j, c.clone()));
        }
    }
    let rows: Vec<_> = keyed.into_values().collect();
    Ok(linalg::nullspace(&rows, monos.len())
        .into_iter()
        .map(|v| Poly::from_terms(monos.iter().cloned().zip(v)))
        .collect())
}

/// `u = v + shift` turning `Δu + c = 0` into `Δv = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantShift {
    pub shift: Poly,
    /// `Δ(shift) + c`, zero by construction.
    pub residual: Rat,
    /// The same quantity for the shift `+c x²/2`.
    pub plus_residual: Rat,
}

impl ConstantShift {
    pub fn discrepancy(&self) -> bool {
        self.plus_residual != self.residual
    }
}

pub fn constant_shift(c: &Rat) -> ConstantShift {
    let x2 = Poly::var(Var::X).pow(2);
    let lap = kohn_laplace(&x2).as_constant().expect("Δ x² is constant");
    let s = -c / &lap;
    let shift = x2.scale(&s);
    let residual = kohn_laplace(&shift).as_constant().unwrap_or_else(|| int(0)) + c;
    let other = x2.scale(&(c / int(2)));
    let plus_residual = kohn_laplace(&other).as_constant().unwrap_or_else(|| int(0)) + c;
    ConstantShift {
        shift,
        residual,
        plus_residual,
    }
}

/// Kernel dimension for each degree in `from..=to`.
pub fn stability_scan(fc: &FCase, from: u32, to: u32) -> Vec<(u32, usize)> {
    (from..=to)
        .map(|d| (d, classify(fc, d).dimension()))
        .collect()
}

/// Whether a generator's coefficient vector is in the assembled kernel.
pub fn in_kernel(a: &Assembled, s: &VField) -> bool {
    let Some(v) = a.ansatz.field_to_vector(s) else {
        return false;
    };
    a.rational_rows().iter().all(|r| {
        r.iter()
            .fold(int(0), |acc, (c, x)| acc + x * &v[*c])
            .is_zero()
    })
}

/// Integer content of a kernel vector, for compact display.
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let row = linalg::integerize(&linalg::dense_to_sparse(v));
    let mut out = vec![BigInt::zero(); v.len()];
    for (c, x) in row {
        out[c] = x;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn power(p: i64) -> FCase {
        FCase::power(Param::Value(int(1)), Param::Value(int(p))).unwrap()
    }

    #[test]
    fn ansatz_size() {
        assert_eq!(Ansatz::new(4).m(), 5 * 35);
        let a = Ansatz::new(1);
        let s = a.symbolic();
        assert_eq!(s.xi.len(), 4);
        let v1 = fixtures::v1();
        let a4 = Ansatz::new(4);
        assert_eq!(a4.vector_to_field(&a4.field_to_vector(&v1).unwrap()), v1);
    }

    #[test]
    fn small_degrees() {
        let k = nullspace(&assemble(&FCase::Arbitrary, 1, false));
        let a = Ansatz::new(1);
        let fields: Vec<VField> = k.iter().map(|v| a.vector_to_field(v)).collect();
        assert!(same_span(
            &fields,
            &[
                fixtures::t(),
                fixtures::r(),
                fixtures::x_tilde(),
                fixtures::y_tilde()
            ]
        ));
        let e = FCase::exp(Param::Symbol).unwrap();
        assert_eq!(classify(&e, 2).dimension(), 5);
    }

    #[test]
    fn arbitrary_and_dilation() {
        let c = classify(&FCase::Arbitrary, 4);
        assert_eq!(c.dimension(), 4);
        assert!(c.named.is_some());
        let c5 = classify(&power(5), 4);
        assert_eq!(c5.dimension(), 5);
        assert!(c5.verified.iter().all(|v| *v));
        assert!(c5.named.is_some());
    }

    #[test]
    fn membership() {
        let a = assemble(&power(3), 4, false);
        for (_, v) in fixtures::reference_family(&power(3)) {
            assert!(in_kernel(&a, &v));
        }
        assert!(!in_kernel(&a, &fixtures::z1()));
    }

    #[test]
    fn beta_kernels() {
        assert_eq!(beta_kernel(&FCase::Zero, 1).unwrap().len(), 4);
        let b2 = beta_kernel(&FCase::Zero, 2).unwrap();
        assert_eq!(b2.len(), 6);
        assert!(b2.iter().all(|b| kohn_laplace(b).is_zero()));
        let lin = FCase::linear(Param::Value(int(1))).unwrap();
        assert!(beta_kernel(&lin, 0).unwrap().is_empty());
        assert!(beta_kernel(&FCase::Arbitrary, 1).is_err());
    }

    #[test]
    fn shift() {
        let s = constant_shift(&int(2));
        assert_eq!(s.shift, Poly::var(Var::X).pow(2).scale(&int(-1)));
        assert!(s.residual.is_zero());
        assert_eq!(s.plus_residual, int(4));
        assert!(s.discrepancy());
        assert!(constant_shift(&int(0)).shift.is_zero());
        assert_eq!(
            constant_shift(&int(1)).shift,
            Poly::var(Var::X).pow(2).scale(&rat(-1, 2))
        );
    }

    #[test]
    fn constant_case_by_transport() {
        let fc = FCase::constant(int(3));
        for (n, v) in fixtures::reference_family(&fc) {
            assert!(verify_generator(&v, &fc).is_symmetry, "{n}");
        }
    }

    #[test]
    fn symbolic_exponent_branches() {
        let fc = FCase::power(Param::Value(int(1)), Param::Symbol).unwrap();
        let sk = symbolic_kernel(&assemble(&fc, 4, false));
        assert_eq!(sk.basis.len(), 5);
        // the cubic branch hides in a row content, not a pivot
        assert!(sk.special.contains(&(int(3), Some(8))));
        let c = classify(&fc, 4);
        assert!(c
            .notes
            .iter()
            .any(|n| n == "special branch p = 3: dimension 8"));
    }
}
