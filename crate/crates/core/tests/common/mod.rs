#![allow(dead_code)]

use kohnsym::poly::{Poly, Rat};
use kohnsym::{Mono, VField, Var};
use proptest::prelude::*;

pub fn rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn mono(vars: &'static [Var], deg: u32) -> impl Strategy<Value = Mono> {
    proptest::collection::vec(0..=deg, vars.len()).prop_map(move |es| {
        let mut m = Mono::one();
        let mut left = deg;
        for (v, e) in vars.iter().zip(es) {
            let e = e.min(left);
            left -= e;
            m = m.mul(&Mono::pow_of(*v, e));
        }
        m
    })
}

pub fn poly_in(vars: &'static [Var], deg: u32) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((mono(vars, deg), rat()), 0..6).prop_map(Poly::from_terms)
}

pub const XYT: &[Var] = &[Var::X, Var::Y, Var::T];
pub const XYTU: &[Var] = &[Var::X, Var::Y, Var::T, Var::U];

pub fn coord_poly(deg: u32) -> impl Strategy<Value = Poly> {
    poly_in(XYT, deg)
}

pub fn field(deg: u32) -> impl Strategy<Value = VField> {
    proptest::array::uniform5(coord_poly(deg)).prop_map(VField::from_components)
}
