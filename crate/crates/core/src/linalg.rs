//! Fraction-free sparse elimination over integral domains.
//!
//! Rows are sparse `(column, entry)` lists sorted by column. Elimination
//! never divides except exactly (row contents), so it runs unchanged over
//! the integers and over `Q[p]`. Pivots are the leftmost nonzero column;
//! rows are absorbed in input order, which fixes the basis deterministically.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{int, Poly, Rat};
use crate::var::{Mono, Var};

/// The ring operations elimination needs.
pub trait Domain: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// A normalized gcd (non-negative, or monic).
    fn gcd(&self, o: &Self) -> Self;
    /// `self / o`, assuming `o` divides `self`.
    fn div_exact(&self, o: &Self) -> Self;
    /// Unit making `self` normalized (sign, or inverse leading coefficient).
    fn unit_normal(&self) -> Self;
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn unit_normal(&self) -> Self {
        if self.is_negative() {
            -<BigInt as One>::one()
        } else {
            <BigInt as One>::one()
        }
    }
}

/// Dense univariate polynomial over Q in the exponent symbol `p`,
/// coefficients low to high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rat>);

impl UniPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn constant(r: Rat) -> Self {
        UniPoly::new(vec![r])
    }

    /// `a + b p`
    pub fn linear(a: Rat, b: Rat) -> Self {
        UniPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    /// Degree, with `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(|| int(0))
    }

    pub fn eval(&self, p: &Rat) -> Rat {
        self.0.iter().rev().fold(int(0), |acc, c| acc * p + c)
    }

    pub fn scale(&self, r: &Rat) -> UniPoly {
        UniPoly::new(self.0.iter().map(|c| c * r).collect())
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        let mut q = vec![int(0); rem.len().saturating_sub(dd)];
        let lead = d.lead();
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in d.0.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            q[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(rem))
    }

    /// Rational roots, by the rational root test on the integerized
    /// polynomial. Candidates are enumerated only for moderate coefficients.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        let Some(_) = self.degree() else { return out };
        let mut c = self.0.clone();
        if c[0].is_zero() {
            out.push(int(0));
            while c.first().is_some_and(|x| x.is_zero()) {
                c.remove(0);
            }
        }
        if c.len() < 2 {
            return out;
        }
        let den = c
            .iter()
            .fold(<BigInt as One>::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = c
            .iter()
            .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let divisors = |n: &BigInt| -> Option<Vec<BigInt>> {
            let n = n.abs();
            if n > BigInt::from(1_000_000) {
                return None;
            }
            let n: i64 = n.try_into().ok()?;
            Some((1..=n).filter(|d| n % d == 0).map(BigInt::from).collect())
        };
        let (Some(num), Some(dn)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
            return out;
        };
        let mut seen = std::collections::BTreeSet::new();
        for a in &num {
            for b in &dn {
                for s in [a.clone(), -a.clone()] {
                    let r = Rat::new(s, b.clone());
                    if seen.insert(r.clone()) && self.eval(&r).is_zero() {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// As a polynomial in `Var::P`.
    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in self.0.iter().enumerate() {
            out.add_term(Mono::pow_of(Var::P, i as u32), c.clone());
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl Domain for UniPoly {
    fn zero() -> Self {
        UniPoly::default()
    }
    fn one() -> Self {
        UniPoly::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = int(0);
        UniPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::default();
        }
        let mut c = vec![int(0); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }
    fn neg(&self) -> Self {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead();
        a.scale(&(int(1) / l))
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.divrem(o);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }
    fn unit_normal(&self) -> Self {
        if self.is_zero() {
            return UniPoly::one();
        }
        UniPoly::constant(int(1) / self.lead())
    }
}

pub type Row<D> = Vec<(usize, D)>;

fn lin_comb<D: Domain>(a: &Row<D>, ca: &D, b: &Row<D>, cb: &D) -> Row<D> {
    // ca*a - cb*b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ci = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a[i - 1].1.mul(ca))
        } else if cj < ci {
            j += 1;
            (cj, b[j - 1].1.mul(cb).neg())
        } else {
            i += 1;
            j += 1;
            (ci, a[i - 1].1.mul(ca).sub(&b[j - 1].1.mul(cb)))
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Make `row` content-free with a unit-normal lead; returns the content.
fn normalize<D: Domain>(row: &mut Row<D>) -> D {
    let Some(first) = row.first() else {
        return D::one();
    };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        g = g.gcd(v);
    }
    let g = g.gcd(&D::zero());
    if !g.is_zero() && g != D::one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    let u = row[0].1.unit_normal();
    if u != D::one() {
        for (_, v) in row.iter_mut() {
            *v = v.mul(&u);
        }
    }
    g
}

/// Eliminate the entry of `row` at the pivot column of `piv`.
fn eliminate<D: Domain>(row: &Row<D>, piv: &Row<D>, col: usize) -> (Row<D>, D) {
    let pl = &piv[0].1;
    let rl = &row.iter().find(|e| e.0 == col).expect("entry present").1;
    let g = pl.gcd(rl);
    let mut out = lin_comb(row, &pl.div_exact(&g), piv, &rl.div_exact(&g));
    let content = normalize(&mut out);
    (out, content)
}

/// An echelon form built by absorbing rows one at a time.
#[derive(Debug, Clone)]
pub struct Echelon<D> {
    ncols: usize,
    pivots: BTreeMap<usize, Row<D>>,
    /// Row contents divided out along the way. Over `Q[p]` their roots,
    /// like those of the pivots, are where the rank may drop.
    contents: Vec<D>,
}

impl<D: Domain> Echelon<D> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
            contents: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots; keep it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Row<D>) -> bool {
        row.retain(|e| !e.1.is_zero());
        let g = normalize(&mut row);
        self.note_content(g);
        while let Some(&(col, _)) = row.first() {
            match self.pivots.get(&col) {
                Some(piv) => {
                    let (r, g) = eliminate(&row, piv, col);
                    row = r;
                    self.note_content(g);
                }
                None => {
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
        false
    }

    /// Would `row` be absorbed without growing the rank?
    pub fn reduces_to_zero(&self, mut row: Row<D>) -> bool {
        row.retain(|e| !e.1.is_zero());
        while let Some(&(col, _)) = row.first() {
            match self.pivots.get(&col) {
                Some(piv) => row = eliminate(&row, piv, col).0,
                None => return false,
            }
        }
        true
    }

    /// Clear every pivot column from the other pivot rows.
    pub fn reduce(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let piv = self.pivots[&c].clone();
            let mut removed = Vec::new();
            for (&other, row) in self.pivots.range_mut(..c) {
                debug_assert!(other < c);
                if row.iter().any(|e| e.0 == c) {
                    let (r, g) = eliminate(row, &piv, c);
                    *row = r;
                    removed.push(g);
                }
            }
            for g in removed {
                self.note_content(g);
            }
        }
    }

    fn note_content(&mut self, g: D) {
        if !g.is_zero() && g != D::one() && !self.contents.contains(&g) {
            self.contents.push(g);
        }
    }

    pub fn removed_contents(&self) -> &[D] {
        &self.contents
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (&usize, &Row<D>)> {
        self.pivots.iter()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .collect()
    }

    /// Kernel basis, one vector per free column, with entries in the
    /// domain (scaled by the lcm of the pivots involved, then content-free).
    pub fn kernel(&mut self) -> Vec<Vec<D>> {
        self.reduce();
        let mut out = Vec::new();
        for f in self.free_columns() {
            let involved: Vec<(usize, &D, &D)> = self
                .pivots
                .iter()
                .filter_map(|(c, r)| r.iter().find(|e| e.0 == f).map(|e| (*c, &r[0].1, &e.1)))
                .collect();
            let mut l = D::one();
            for (_, d, _) in &involved {
                let g = l.gcd(d);
                l = l.mul(&d.div_exact(&g));
            }
            let mut v = vec![D::zero(); self.ncols];
            v[f] = l.clone();
            for (c, d, a) in involved {
                v[c] = a.mul(&l.div_exact(d)).neg();
            }
            let mut sparse: Row<D> = v
                .iter()
                .cloned()
                .enumerate()
                .filter(|e| !e.1.is_zero())
                .collect();
            let lead_col = sparse.iter().position(|e| e.0 == f).unwrap_or(0);
            sparse.rotate_left(lead_col);
            normalize(&mut sparse);
            let mut v = vec![D::zero(); self.ncols];
            for (c, e) in sparse {
                v[c] = e;
            }
            out.push(v);
        }
        out
    }
}

/// Clear denominators of a rational row.
pub fn integerize(row: &[(usize, Rat)]) -> Row<BigInt> {
    let den = row
        .iter()
        .fold(<BigInt as One>::one(), |l, (_, x)| l.lcm(x.denom()));
    let d = Rat::from_integer(den);
    row.iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (*c, (x * &d).to_integer()))
        .collect()
}

pub fn dense_to_sparse(v: &[Rat]) -> Vec<(usize, Rat)> {
    v.iter()
        .cloned()
        .enumerate()
        .filter(|e| !e.1.is_zero())
        .collect()
}

/// Exact kernel of a rational matrix, each vector normalized so its free
/// coordinate is 1.
pub fn nullspace(rows: &[Vec<(usize, Rat)>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(integerize(r));
    }
    let free = e.free_columns();
    e.kernel()
        .into_iter()
        .zip(free)
        .map(|(v, f)| {
            let s = Rat::from_integer(v[f].clone());
            v.into_iter().map(|x| Rat::from_integer(x) / &s).collect()
        })
        .collect()
}

pub fn rank(rows: &[Vec<(usize, Rat)>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(integerize(r));
    }
    e.rank()
}

/// A particular solution of `A x = b` (free variables 0), or `None` if
/// inconsistent. `A` is given by sparse rows.
pub fn solve(rows: &[Vec<(usize, Rat)>], b: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    let mut e = Echelon::new(ncols + 1);
    for (r, bi) in rows.iter().zip(b) {
        let mut aug = r.clone();
        aug.push((ncols, bi.clone()));
        e.insert(integerize(&aug));
    }
    if e.pivots.contains_key(&ncols) {
        return None;
    }
    e.reduce();
    let mut x = vec![int(0); ncols];
    for (c, r) in e.pivot_rows() {
        let rhs = r
            .iter()
            .find(|t| t.0 == ncols)
            .map(|t| t.1.clone())
            .unwrap_or_default();
        x[*c] = Rat::new(rhs, r[0].1.clone());
    }
    Some(x)
}

/// Is `v` in the span of `basis`?
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let n = v.len();
    let mut e = Echelon::new(n);
    for b in basis {
        e.insert(integerize(&dense_to_sparse(b)));
    }
    e.reduces_to_zero(integerize(&dense_to_sparse(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(rows: &[&[i64]]) -> Vec<Vec<(usize, Rat)>> {
        rows.iter()
            .map(|row| dense_to_sparse(&row.iter().map(|&x| int(x)).collect::<Vec<_>>()))
            .collect()
    }

    #[test]
    fn identity_and_zero() {
        assert!(nullspace(&r(&[&[1, 0], &[0, 1]]), 2).is_empty());
        let k = nullspace(&[], 3);
        assert_eq!(k.len(), 3);
        assert_eq!(k[1], vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn small_kernel() {
        // x + 2y + 3z = 0, 2x + 4y + 6z = 0
        let k = nullspace(&r(&[&[1, 2, 3], &[2, 4, 6]]), 3);
        assert_eq!(
            k,
            vec![vec![int(-2), int(1), int(0)], vec![int(-3), int(0), int(1)]]
        );
    }

    #[test]
    fn solving() {
        let a = r(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[int(3), int(1)], 2), Some(vec![int(2), int(1)]));
        let a = r(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[int(1), int(3)], 2), None);
        assert!(in_span(&[vec![int(1), int(1)]], &[int(3), int(3)]));
        assert!(!in_span(&[vec![int(1), int(1)]], &[int(3), int(2)]));
    }

    #[test]
    fn unipoly_arith() {
        let a = UniPoly::linear(int(1), int(-1)); // 1 - p
        let b = UniPoly::linear(int(-3), int(1)); // p - 3
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), b);
        assert_eq!(ab.rational_roots(), vec![int(1), int(3)]);
        assert_eq!(a.gcd(&ab), UniPoly::linear(int(-1), int(1)));
        assert_eq!(a.to_string(), "1 - p");
    }

    #[test]
    fn symbolic_kernel() {
        // (1-p) x = 2 y  ->  kernel spanned by (2, 1-p)
        let rows: Vec<Row<UniPoly>> = vec![vec![
            (0, UniPoly::linear(int(1), int(-1))),
            (1, UniPoly::constant(int(-2))),
        ]];
        let mut e = Echelon::new(2);
        for row in rows {
            e.insert(row);
        }
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let check = v[0]
            .mul(&UniPoly::linear(int(1), int(-1)))
            .sub(&v[1].mul(&UniPoly::constant(int(2))));
        assert!(check.is_zero());
    }
}
