use curvehull::curve::ProjectiveCurve;
use curvehull::edgesurface::secant_coordinates;
use curvehull::factor::factor_homogeneous;
use curvehull::groebner::{
    groebner_basis, ideal_equal, quotient_algebra, reduced_grevlex, saturate, GbOptions, Ideal,
};
use curvehull::polyring::linalg::mat_mul;
use curvehull::polyring::{exact_divide, gcd, rat, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;

fn xyz() -> Ring {
    Ring::grevlex(&["x", "y", "z"])
}

fn poly_from(ring: &Ring, terms: &[(Vec<u16>, i64)]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|(e, c)| (Monomial::from_exponents(e), rat(*c))),
    )
}

fn small_poly(
    nvars: usize,
    max_exp: u16,
    max_terms: usize,
) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -5i64..=5),
        1..=max_terms,
    )
}

/// A homogeneous form of degree `deg` in `x, y, z`.
fn form(deg: u16) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec((0..=deg, 0..=deg, -4i64..=4), 1..=4).prop_map(move |ts| {
        ts.into_iter()
            .map(|(i, j, c)| {
                let i = i.min(deg);
                let j = j.min(deg - i);
                (vec![i, j, deg - i - j], c)
            })
            .collect()
    })
}

fn binary_form(deg: u16) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec(-3i64..=3, deg as usize + 1).prop_map(move |cs| {
        cs.into_iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u16, deg - i as u16], c))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_divide_round_trip(f in small_poly(3, 3, 5), g in small_poly(3, 2, 4)) {
        let r = xyz();
        let f = poly_from(&r, &f);
        let g = poly_from(&r, &g);
        prop_assume!(!g.is_zero());
        let q = exact_divide(&(&f * &g), &g).unwrap();
        prop_assert_eq!(q, f);
    }

    #[test]
    fn gcd_divides_both(f in small_poly(2, 3, 4), g in small_poly(2, 3, 4), h in small_poly(2, 2, 3)) {
        let r = Ring::grevlex(&["x", "y"]);
        let (f, g, h) = (poly_from(&r, &f), poly_from(&r, &g), poly_from(&r, &h));
        prop_assume!(!h.is_zero() && !(&f * &h).is_zero() && !(&g * &h).is_zero());
        let d = gcd(&(&f * &h), &(&g * &h));
        prop_assert!(exact_divide(&d, &h).is_ok());
        prop_assert!(exact_divide(&(&f * &h), &d).is_ok());
        prop_assert!(exact_divide(&(&g * &h), &d).is_ok());
    }

    #[test]
    fn factorization_round_trip(a in form(1), b in form(2), c in form(1)) {
        let r = xyz();
        let (a, b, c) = (poly_from(&r, &a), poly_from(&r, &b), poly_from(&r, &c));
        let f = &(&a * &b) * &(&c * &c);
        prop_assume!(!f.is_zero());
        let fac = factor_homogeneous(&f, 12).unwrap();
        prop_assert_eq!(fac.expand(&r), f.clone());
        let d: u32 = fac.factors.iter().map(|(g, m)| g.total_degree() * m).sum();
        prop_assert_eq!(d, f.total_degree());
        for (g, m) in &fac.factors {
            prop_assert!(*m >= 1);
            prop_assert!(factor_homogeneous(g, 12).unwrap().is_irreducible());
        }
    }

    #[test]
    fn plucker_relation_holds(f in prop::collection::vec(binary_form(4), 4)) {
        let br = curvehull::curve::binary_ring();
        let forms: Vec<Polynomial> = f.iter().map(|t| poly_from(&br, t)).collect();
        let Ok(c) = ProjectiveCurve::new(forms.try_into().unwrap()) else { return Ok(()) };
        let s = secant_coordinates(&c).unwrap();
        prop_assert!(s.plucker_relation().is_zero());
    }

    #[test]
    fn gb_independent_of_generator_order(
        gens in prop::collection::vec(small_poly(3, 2, 3), 2..=3),
        rot in 1usize..3,
    ) {
        let r = xyz();
        let mut ps: Vec<Polynomial> = gens.iter().map(|g| poly_from(&r, g)).collect();
        let a = groebner_basis(&Ideal::new(&r, ps.clone()).unwrap(), &MonomialOrder::Grevlex).unwrap();
        let n = ps.len();
        ps.rotate_left(rot % n);
        ps.reverse();
        let b = groebner_basis(&Ideal::new(&r, ps).unwrap(), &MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn saturation_is_idempotent(g1 in form(2), g2 in form(2), v in 0usize..3) {
        let r = xyz();
        let i = Ideal::new(&r, vec![poly_from(&r, &g1), poly_from(&r, &g2)]).unwrap();
        let f = Polynomial::variable(&r, v);
        let once = saturate(&i, &f).unwrap();
        let twice = saturate(&once, &f).unwrap();
        prop_assert!(ideal_equal(&once, &twice).unwrap());
        let i_gb = groebner_basis(&once, &MonomialOrder::Grevlex).unwrap();
        prop_assert!(i_gb.contains_ideal(&i).unwrap());
    }

    #[test]
    fn multiplication_matrices_commute(c in prop::collection::vec(-3i64..=3, 9)) {
        let r = xyz();
        let lin = |k: usize| {
            poly_from(&r, &[(vec![1, 0, 0], c[k]), (vec![0, 1, 0], c[k + 1]), (vec![0, 0, 1], c[k + 2])])
        };
        let gens = vec![
            &Polynomial::parse(&r, "x^2").unwrap() + &lin(0),
            &Polynomial::parse(&r, "y^2").unwrap() + &lin(3),
            &Polynomial::parse(&r, "z^2 - 1").unwrap() + &lin(6),
        ];
        let gb = groebner_basis(&Ideal::new(&r, gens).unwrap(), &MonomialOrder::Grevlex).unwrap();
        let qa = quotient_algebra(&gb).unwrap();
        prop_assert_eq!(qa.dimension(), 8);
        let m: Vec<_> = ["x", "y", "z"].iter().map(|v| qa.variable_matrix(v).unwrap()).collect();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(mat_mul(&m[i], &m[j]), mat_mul(&m[j], &m[i]));
            }
        }
    }
}

#[test]
fn reduced_basis_is_canonical_under_scaling() {
    let r = xyz();
    let a = Ideal::parse(&r, "x^2 - y*z, x*y - z^2").unwrap();
    let b = Ideal::parse(&r, "-3*x*y + 3*z^2, 2*x^2 - 2*y*z").unwrap();
    let opts = GbOptions::default();
    assert_eq!(
        reduced_grevlex(&a, &opts).unwrap(),
        reduced_grevlex(&b, &opts).unwrap()
    );
}
