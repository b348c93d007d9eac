//! Brackets of point generators, structure constants, closure and Jacobi.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::ansatz::Ansatz;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Poly, Rat};
use crate::prolong::VField;
use crate::var::{Var, COORDS};

/// `A(g) = ξ g_x + φ g_y + τ g_t + η g_u`
fn act(a: &VField, g: &Poly) -> Poly {
    let mut out = &a.eta() * &g.partial(Var::U);
    for (c, comp) in COORDS.into_iter().zip(a.base()) {
        out = out + comp * &g.partial(c);
    }
    out
}

/// `[A, B]` on `(x, y, t, u)`, returned in `(ξ, φ, τ, α, β)` form.
pub fn bracket(a: &VField, b: &VField) -> Result<VField> {
    let comp = |fa: &Poly, fb: &Poly| act(a, fb) - act(b, fa);
    let xi = comp(&a.xi, &b.xi);
    let phi = comp(&a.phi, &b.phi);
    let tau = comp(&a.tau, &b.tau);
    let eta = comp(&a.eta(), &b.eta());
    if eta.degree_in(Var::U) > 1 {
        return Err(Error::NotAffineInU(eta.canonical_string()));
    }
    let mut parts = eta.by_degree_in(Var::U);
    let beta = parts.remove(&0).unwrap_or_default();
    let alpha = parts.remove(&1).unwrap_or_default();
    VField::new(xi, phi, tau, alpha, beta).map_err(|e| match e {
        Error::IllFormedGenerator(s) => Error::NotAffineInU(s),
        other => other,
    })
}

/// Structure constants `[S_i, S_j] = Σ_k C^k_ij S_k` and the brackets that
/// leave the span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    pub dim: usize,
    /// Nonzero `C^k_ij` for all ordered pairs.
    pub constants: BTreeMap<(usize, usize, usize), Rat>,
    /// `(i, j, [S_i, S_j])` for brackets outside the span.
    pub non_closed: Vec<(usize, usize, VField)>,
}

impl StructureConstants {
    pub fn is_closed(&self) -> bool {
        self.non_closed.is_empty()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rat {
        self.constants.get(&(i, j, k)).cloned().unwrap_or_default()
    }

    /// `[S_i, S_j]` as a combination of basis indices.
    pub fn bracket_of(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        (0..self.dim)
            .filter_map(|k| self.constants.get(&(i, j, k)).map(|c| (k, c.clone())))
            .collect()
    }
}

fn degree_of(vs: &[VField]) -> u32 {
    vs.iter()
        .flat_map(|v| v.components().map(|c| c.degree()))
        .max()
        .unwrap_or(0)
}

fn vectorize(ans: &Ansatz, v: &VField) -> Result<Vec<Rat>> {
    ans.field_to_vector(v)
        .ok_or_else(|| Error::NotConcrete(format!("generator with symbolic coefficients: {v}")))
}

pub fn structure_constants(basis: &[VField]) -> Result<StructureConstants> {
    let n = basis.len();
    let mut brackets = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            brackets.insert((i, j), bracket(&basis[i], &basis[j])?);
        }
    }
    let all: Vec<VField> = basis.iter().chain(brackets.values()).cloned().collect();
    let ans = Ansatz::new(degree_of(&all));
    let cols: Vec<Vec<Rat>> = basis
        .iter()
        .map(|v| vectorize(&ans, v))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<(usize, Rat)>> = (0..ans.m())
        .map(|r| {
            (0..n)
                .filter(|k| !cols[*k][r].is_zero())
                .map(|k| (k, cols[k][r].clone()))
                .collect()
        })
        .collect();
    if linalg::rank(
        &cols
            .iter()
            .map(|c| linalg::dense_to_sparse(c))
            .collect::<Vec<_>>(),
        ans.m(),
    ) < n
    {
        return Err(Error::DependentBasis);
    }
    let mut constants = BTreeMap::new();
    let mut non_closed = Vec::new();
    for ((i, j), b) in brackets {
        let w = vectorize(&ans, &b)?;
        match linalg::solve(&rows, &w, n) {
            Some(c) => {
                for (k, x) in c.into_iter().enumerate() {
                    if !x.is_zero() {
                        constants.insert((j, i, k), -x.clone());
                        constants.insert((i, j, k), x);
                    }
                }
            }
            None => non_closed.push((i, j, b)),
        }
    }
    Ok(StructureConstants {
        dim: n,
        constants,
        non_closed,
    })
}

/// `[[S_i,S_j],S_k] + [[S_j,S_k],S_i] + [[S_k,S_i],S_j] = 0` for all triples.
pub fn jacobi_check(basis: &[VField]) -> Result<bool> {
    let n = basis.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&basis[i], &basis[j], &basis[k]);
                let s = bracket(&bracket(a, b)?, c)?
                    .add(&bracket(&bracket(b, c)?, a)?)
                    .add(&bracket(&bracket(c, a)?, b)?);
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::int;

    #[test]
    fn examples() {
        assert!(bracket(&fixtures::t(), &fixtures::r()).unwrap().is_zero());
        assert_eq!(
            bracket(&fixtures::t(), &fixtures::v1()).unwrap(),
            fixtures::z1().sub(&fixtures::z2())
        );
        assert_eq!(
            bracket(&fixtures::x_tilde(), &fixtures::y_tilde()).unwrap(),
            fixtures::t().scale(&int(4))
        );
    }

    #[test]
    fn base_algebra() {
        let b: Vec<VField> = fixtures::base_family()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        let sc = structure_constants(&b).unwrap();
        assert!(sc.is_closed());
        // [Xt, Yt] = 4 T
        assert_eq!(sc.get(2, 3, 0), int(4));
        assert_eq!(sc.get(3, 2, 0), int(-4));
        assert!(jacobi_check(&b).unwrap());
    }

    #[test]
    fn non_closure_detected() {
        let junk = VField::new(
            Poly::zero(),
            Poly::zero(),
            Poly::zero(),
            Poly::zero(),
            Poly::var(Var::X),
        )
        .unwrap();
        let sc = structure_constants(&[fixtures::t(), fixtures::r(), junk]).unwrap();
        assert!(!sc.is_closed());
    }

    #[test]
    fn dependent_basis_rejected() {
        assert_eq!(
            structure_constants(&[fixtures::t(), fixtures::t().scale(&int(2))]),
            Err(Error::DependentBasis)
        );
    }
}
