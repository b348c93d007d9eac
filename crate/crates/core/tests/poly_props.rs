mod common;

use common::{poly_in, XYT, XYTU};
use kohnsym::parse::parse_poly;
use kohnsym::Var;
use proptest::prelude::*;

proptest! {
    #[test]
    fn ring_laws(a in poly_in(XYTU, 3), b in poly_in(XYTU, 3), c in poly_in(XYTU, 2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn partials_commute(a in poly_in(XYTU, 4)) {
        for (v, w) in [(Var::X, Var::Y), (Var::X, Var::T), (Var::Y, Var::U)] {
            prop_assert_eq!(a.partial(v).partial(w), a.partial(w).partial(v));
        }
    }

    #[test]
    fn leibniz(a in poly_in(XYT, 3), b in poly_in(XYT, 3)) {
        let lhs = (&a * &b).partial(Var::T);
        let rhs = &(&a.partial(Var::T) * &b) + &(&a * &b.partial(Var::T));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_string_round_trips(a in poly_in(XYTU, 4)) {
        let s = a.canonical_string();
        prop_assert_eq!(parse_poly(&s).unwrap(), a);
    }
}
