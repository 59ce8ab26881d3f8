//! Shrinkable property tests for the algebraic substrate. These complement
//! the seeded suites with strategies proptest can minimize on failure.

use num_bigint::BigInt;
use proptest::prelude::*;

use tategb::arith::{format_rational, parse_rational, Rational, ValuedField};
use tategb::order::{gauss_val_poly, LogRadii};
use tategb::parse::{parse_polynomial, print_polynomial};
use tategb::poly::{Monomial, Polynomial, Ring, Term};
use tategb::ExtendedRational;

fn ring_xy() -> Ring {
    Ring::new(
        vec!["x".into(), "y".into()],
        ValuedField::new(7).unwrap(),
    )
    .unwrap()
}

prop_compose! {
    fn arb_rational()(num in -2000i64..=2000, den in 1i64..=50) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

prop_compose! {
    fn arb_term()(num in -60i64..=60, den in 1i64..=9, e0 in 0u32..=4, e1 in 0u32..=4)
        -> Option<Term>
    {
        if num == 0 {
            None
        } else {
            Some(Term::new(
                Rational::new(BigInt::from(num), BigInt::from(den)),
                Monomial(vec![e0, e1]),
            ))
        }
    }
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(arb_term(), 0..6).prop_map(|terms| {
        let ring = ring_xy();
        Polynomial::from_terms(&ring, terms.into_iter().flatten().collect())
    })
}

proptest! {
    #[test]
    fn rational_strings_round_trip(r in arb_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn polynomial_strings_round_trip(f in arb_poly()) {
        let s = print_polynomial(&f);
        let g = parse_polynomial(&s, f.ring()).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(print_polynomial(&g), s);
    }

    #[test]
    fn addition_commutes_and_multiplication_distributes(
        f in arb_poly(), g in arb_poly(), h in arb_poly()
    ) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn homogenization_round_trips(f in arb_poly()) {
        let ext = f.ring().extended();
        let h = f.homogenize(&ext);
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize(f.ring()), f);
    }

    #[test]
    fn gauss_valuation_of_products_adds(
        f in arb_poly(), g in arb_poly(),
        r0 in -3i64..=3, r1 in -3i64..=3
    ) {
        // with distinct-valuation-free inputs this is only an inequality;
        // the product valuation never drops below the sum
        let radii = LogRadii(vec![
            Rational::from_integer(BigInt::from(r0)),
            Rational::from_integer(BigInt::from(r1)),
        ]);
        let field = f.ring().field().clone();
        let prod = &f * &g;
        let vf = gauss_val_poly(&f, &radii, &field);
        let vg = gauss_val_poly(&g, &radii, &field);
        let vp = gauss_val_poly(&prod, &radii, &field);
        match (vf, vg) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => {
                prop_assert!(vp >= ExtendedRational::Finite(a + b));
            }
            _ => prop_assert!(vp.is_infinite()),
        }
    }
}
