//! Variable universe and monomials.
//!
//! Variables are totally ordered: coordinates < dependent < jets < parameters
//! < ansatz unknowns. Monomials compare graded-lexicographically; the
//! resulting `Ord` is the rendering order of polynomial terms (lower total
//! degree first, then larger powers of earlier variables first).

use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    T,
    U,
    Ux,
    Uy,
    Ut,
    Uxx,
    Uxy,
    Uxt,
    Uyy,
    Uyt,
    Utt,
    K,
    P,
    /// Ansatz unknown `c<i>`.
    C(u32),
}

pub const COORDS: [Var; 3] = [Var::X, Var::Y, Var::T];
pub const FIRST_JETS: [Var; 3] = [Var::Ux, Var::Uy, Var::Ut];
pub const SECOND_JETS: [Var; 6] = [Var::Uxx, Var::Uxy, Var::Uxt, Var::Uyy, Var::Uyt, Var::Utt];

impl Var {
    pub fn is_coord(self) -> bool {
        matches!(self, Var::X | Var::Y | Var::T)
    }

    pub fn is_jet(self) -> bool {
        matches!(
            self,
            Var::Ux
                | Var::Uy
                | Var::Ut
                | Var::Uxx
                | Var::Uxy
                | Var::Uxt
                | Var::Uyy
                | Var::Uyt
                | Var::Utt
        )
    }

    pub fn is_second_jet(self) -> bool {
        SECOND_JETS.contains(&self)
    }

    pub fn is_param(self) -> bool {
        matches!(self, Var::K | Var::P)
    }

    fn coord_index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::T => 2,
            other => panic!("{other} is not a coordinate"),
        }
    }

    /// `u_c` for a coordinate `c`.
    pub fn first_jet(c: Var) -> Var {
        FIRST_JETS[c.coord_index()]
    }

    /// `u_{ab}` for coordinates `a`, `b` (symmetric).
    pub fn second_jet(a: Var, b: Var) -> Var {
        let (i, j) = {
            let (i, j) = (a.coord_index(), b.coord_index());
            (i.min(j), i.max(j))
        };
        match (i, j) {
            (0, 0) => Var::Uxx,
            (0, 1) => Var::Uxy,
            (0, 2) => Var::Uxt,
            (1, 1) => Var::Uyy,
            (1, 2) => Var::Uyt,
            _ => Var::Utt,
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::X => "x".into(),
            Var::Y => "y".into(),
            Var::T => "t".into(),
            Var::U => "u".into(),
            Var::Ux => "u_x".into(),
            Var::Uy => "u_y".into(),
            Var::Ut => "u_t".into(),
            Var::Uxx => "u_xx".into(),
            Var::Uxy => "u_xy".into(),
            Var::Uxt => "u_xt".into(),
            Var::Uyy => "u_yy".into(),
            Var::Uyt => "u_yt".into(),
            Var::Utt => "u_tt".into(),
            Var::K => "k".into(),
            Var::P => "p".into(),
            Var::C(i) => format!("c{i}"),
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        let v = match s {
            "x" => Var::X,
            "y" => Var::Y,
            "t" => Var::T,
            "u" => Var::U,
            "u_x" => Var::Ux,
            "u_y" => Var::Uy,
            "u_t" => Var::Ut,
            "u_xx" => Var::Uxx,
            "u_xy" | "u_yx" => Var::Uxy,
            "u_xt" | "u_tx" => Var::Uxt,
            "u_yy" => Var::Uyy,
            "u_yt" | "u_ty" => Var::Uyt,
            "u_tt" => Var::Utt,
            "k" => Var::K,
            "p" => Var::P,
            _ => {
                let digits = s.strip_prefix('c')?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                Var::C(digits.parse().ok()?)
            }
        };
        Some(v)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Sparse exponent vector, sorted by variable, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Mono(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Mono::one();
        for (v, e) in pairs {
            m = m.mul(&Mono::pow_of(v, e));
        }
        m
    }

    pub fn pow_of(v: Var, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// Remove one power of `v`; returns the old exponent (0 means unchanged).
    pub fn lower(&self, v: Var) -> (u32, Mono) {
        let e = self.exp(v);
        if e == 0 {
            return (0, self.clone());
        }
        let out = self
            .0
            .iter()
            .filter_map(|&(w, k)| match (w == v, k) {
                (true, 1) => None,
                (true, k) => Some((w, k - 1)),
                (false, k) => Some((w, k)),
            })
            .collect();
        (e, Mono(out))
    }

    /// Remove `v` entirely, returning its exponent.
    pub fn without(&self, v: Var) -> (u32, Mono) {
        let e = self.exp(v);
        (
            e,
            Mono(self.0.iter().copied().filter(|&(w, _)| w != v).collect()),
        )
    }

    /// Split into the part satisfying `pred` and the rest.
    pub fn partition(&self, pred: impl Fn(Var) -> bool) -> (Mono, Mono) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| pred(*v));
        (Mono(a), Mono(b))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                // the side holding the earlier variable has the larger power of it
                return a.0.cmp(&b.0);
            }
            if a.1 != b.1 {
                return b.1.cmp(&a.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let xt = Mono::from_pairs([(Var::X, 1), (Var::T, 1)]);
        let x2y = Mono::from_pairs([(Var::X, 2), (Var::Y, 1)]);
        let y3 = Mono::pow_of(Var::Y, 3);
        assert!(xt < x2y);
        assert!(x2y < y3);
        assert!(Mono::one() < Mono::var(Var::T));
        assert!(Mono::var(Var::X) < Mono::var(Var::Y));
    }

    #[test]
    fn names_round_trip() {
        for v in [Var::X, Var::U, Var::Uxt, Var::K, Var::P, Var::C(17)] {
            assert_eq!(Var::from_name(&v.name()), Some(v));
        }
        assert_eq!(Var::from_name("c"), None);
        assert_eq!(Var::second_jet(Var::T, Var::X), Var::Uxt);
    }
}
