//! Named generators of the classification and the families they form.

use num_traits::One;

use crate::error::{Error, Result};
use crate::parse::parse_generator_component;
use crate::poly::{int, Poly, Rat};
use crate::prolong::VField;
use crate::verify::{FCase, Param};

fn field(c: [&str; 5]) -> VField {
    let [xi, phi, tau, alpha, beta] =
        c.map(|s| parse_generator_component(s).expect("fixture parses"));
    VField::new(xi, phi, tau, alpha, beta).expect("fixture is a point generator")
}

/// `∂t`
pub fn t() -> VField {
    field(["0", "0", "1", "0", "0"])
}

/// `y∂x − x∂y`
pub fn r() -> VField {
    field(["y", "-x", "0", "0", "0"])
}

/// `∂x − 2y∂t`
pub fn x_tilde() -> VField {
    field(["1", "0", "-2*y", "0", "0"])
}

/// `∂y + 2x∂t`
pub fn y_tilde() -> VField {
    field(["0", "1", "2*x", "0", "0"])
}

/// `x∂x + y∂y + 2t∂t`
pub fn z1() -> VField {
    field(["x", "y", "2*t", "0", "0"])
}

/// `u∂u`
pub fn z2() -> VField {
    field(["0", "0", "0", "1", "0"])
}

/// `x∂x + y∂y + 2t∂t − 2∂u`
pub fn z3() -> VField {
    field(["x", "y", "2*t", "0", "-2"])
}

/// `x∂x + y∂y + 2t∂t + 2/(1−p) u∂u`
pub fn z(p: &Rat) -> Result<VField> {
    if p.is_one() {
        return Err(Error::InvalidFCase("no dilation for p = 1".into()));
    }
    let mut out = z1();
    out.alpha = Poly::constant(int(2) / (int(1) - p));
    Ok(out)
}

/// `(1−p)` times the dilation, polynomial in the symbol `p`.
pub fn z_symbolic() -> VField {
    field(["(1-p)*x", "(1-p)*y", "2*(1-p)*t", "2", "0"])
}

pub fn v1() -> VField {
    field([
        "x*t - x^2*y - y^3",
        "y*t + x^3 + x*y^2",
        "t^2 - (x^2+y^2)^2",
        "-t",
        "0",
    ])
}

pub fn v2() -> VField {
    field([
        "t - 4*x*y",
        "3*x^2 - y^2",
        "-2*y*t - 2*x^3 - 2*x*y^2",
        "2*y",
        "0",
    ])
}

pub fn v3() -> VField {
    field([
        "x^2 - 3*y^2",
        "t + 4*x*y",
        "2*x*t - 2*x^2*y - 2*y^3",
        "-2*x",
        "0",
    ])
}

pub const NAMES: [&str; 11] = [
    "T", "R", "Xt", "Yt", "Z1", "Z2", "Z3", "Z:<p>", "V1", "V2", "V3",
];

/// Look up a named generator; `Z:<p>` takes a rational or the symbol `p`.
pub fn named(name: &str) -> Option<VField> {
    let v = match name {
        "T" => t(),
        "R" => r(),
        "Xt" => x_tilde(),
        "Yt" => y_tilde(),
        "Z1" => z1(),
        "Z2" => z2(),
        "Z3" => z3(),
        "V1" => v1(),
        "V2" => v2(),
        "V3" => v3(),
        _ => {
            let p = name.strip_prefix("Z:")?;
            if p.trim() == "p" {
                return Some(z_symbolic());
            }
            let p = crate::parse::parse_poly(p).ok()?.as_constant()?;
            return z(&p).ok();
        }
    };
    Some(v)
}

/// Generators admitted for every `f`.
pub fn base_family() -> Vec<(String, VField)> {
    vec![
        ("T".into(), t()),
        ("R".into(), r()),
        ("Xt".into(), x_tilde()),
        ("Yt".into(), y_tilde()),
    ]
}

fn with_base(extra: Vec<(&str, VField)>) -> Vec<(String, VField)> {
    let mut out = base_family();
    out.extend(extra.into_iter().map(|(n, v)| (n.to_string(), v)));
    out
}

/// The generators listed by the classification for a case, `β`-part
/// (the `W` fields) excluded. For `f = c` the `f = 0` family is carried
/// through the shift `u = v − c x²/2`.
pub fn reference_family(fc: &FCase) -> Vec<(String, VField)> {
    let zero_extra = || {
        vec![
            ("Z1", z1()),
            ("Z2", z2()),
            ("V1", v1()),
            ("V2", v2()),
            ("V3", v3()),
        ]
    };
    match fc {
        FCase::Arbitrary => base_family(),
        FCase::Zero => with_base(zero_extra()),
        FCase::Const(c) => {
            let s = crate::ansatz::constant_shift(c).shift;
            with_base(zero_extra())
                .into_iter()
                .map(|(n, v)| (n, crate::ansatz::transport_shift(&v, &s)))
                .collect()
        }
        FCase::Linear(_) => with_base(vec![("Z2", z2())]),
        FCase::Power {
            p: Param::Symbol, ..
        } => with_base(vec![("Z", z_symbolic())]),
        FCase::Power {
            p: Param::Value(p), ..
        } => {
            let mut extra = vec![("Z", z(p).expect("p != 1"))];
            if fc.is_critical() {
                extra.extend([("V1", v1()), ("V2", v2()), ("V3", v3())]);
            }
            with_base(extra)
        }
        FCase::Exp(_) => with_base(vec![("Z3", z3())]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn v1_renders() {
        assert_eq!(v1().xi.canonical_string(), "x*t - x^2*y - y^3");
    }

    #[test]
    fn dilation_weights() {
        assert_eq!(z(&int(5)).unwrap().alpha, Poly::constant(rat(-1, 2)));
        assert_eq!(z(&int(3)).unwrap(), z1().sub(&z2()));
        assert!(z(&int(1)).is_err());
        assert_eq!(named("Z:-1").unwrap().alpha, Poly::one());
        assert_eq!(named("Z:p").unwrap(), z_symbolic());
        assert!(named("Q").is_none());
    }
}
