mod common;

use common::{field, rat};
use kohnsym::algebra::bracket;
use kohnsym::ansatz::beta_kernel;
use kohnsym::poly::{int, Poly};
use kohnsym::verify::verify_generator;
use kohnsym::{fixtures, FCase, Param, VField};
use proptest::prelude::*;

fn combination(family: Vec<VField>, coeffs: &[kohnsym::Rat]) -> VField {
    family
        .iter()
        .zip(coeffs)
        .fold(VField::zero(), |acc, (v, c)| acc.add(&v.scale(c)))
}

fn family(fc: &FCase) -> Vec<VField> {
    fixtures::reference_family(fc)
        .into_iter()
        .map(|(_, v)| v)
        .collect()
}

fn cubic() -> FCase {
    FCase::power(Param::Value(int(1)), Param::Value(int(3))).unwrap()
}

fn w_field(b: Poly) -> VField {
    VField::new(Poly::zero(), Poly::zero(), Poly::zero(), Poly::zero(), b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetric(a in field(2), b in field(2)) {
        let ab = bracket(&a, &b).unwrap();
        let ba = bracket(&b, &a).unwrap();
        prop_assert!(ab.add(&ba).is_zero());
    }

    #[test]
    fn bilinear(a in field(2), b in field(2), c in field(2), k in rat()) {
        let lhs = bracket(&a.add(&b.scale(&k)), &c).unwrap();
        let rhs = bracket(&a, &c).unwrap().add(&bracket(&b, &c).unwrap().scale(&k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetries_close_under_bracket(c1 in proptest::collection::vec(rat(), 8), c2 in proptest::collection::vec(rat(), 8)) {
        let fc = cubic();
        let a = combination(family(&fc), &c1);
        let b = combination(family(&fc), &c2);
        prop_assert!(verify_generator(&bracket(&a, &b).unwrap(), &fc).is_symmetry);
    }

    #[test]
    fn w_fields_are_symmetries(c in proptest::collection::vec(rat(), 15), d in proptest::collection::vec(rat(), 9)) {
        let ker = beta_kernel(&FCase::Zero, 4).unwrap();
        let beta = ker.iter().zip(&c).fold(Poly::zero(), |acc, (b, k)| &acc + &b.scale(k));
        let w = w_field(beta);
        prop_assert!(verify_generator(&w, &FCase::Zero).is_symmetry);
        // the W ideal is stable under the rest of the algebra
        let s = combination(family(&FCase::Zero), &d);
        prop_assert!(verify_generator(&bracket(&s, &w).unwrap(), &FCase::Zero).is_symmetry);
    }
}
