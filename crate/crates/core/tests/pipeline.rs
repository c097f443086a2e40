mod common;

use common::*;
use curvehull::curve::CurveSpec;
use curvehull::degrees::{report, CurveInvariants};
use curvehull::edgesurface::{
    edge_components, invariant_ring, pencil_edge_surface, secant_coordinates, space_ring,
    stationary_form, EdgeOptions, Route,
};
use curvehull::groebner::{groebner_basis, quotient_algebra, GbOptions, Ideal};
use curvehull::polyring::{rat, MonomialOrder, Polynomial, Ring};
use curvehull::tritangent::{
    chow_form, compute_squares_ideal, plane_ring, squares_ideal_cached, squares_ring,
    tritangent_ideal, ChowResult, SquaresIdeal,
};
use std::sync::OnceLock;

fn p6() -> &'static SquaresIdeal {
    static P6: OnceLock<SquaresIdeal> = OnceLock::new();
    P6.get_or_init(|| compute_squares_ideal(6, 8, &GbOptions::default()).unwrap())
}

fn chow(name: &str) -> ChowResult {
    chow_form(&tritangent_ideal(&curve(name), p6()).unwrap()).unwrap()
}

fn form(r: ChowResult) -> Polynomial {
    match r {
        ChowResult::Form(f) => f,
        ChowResult::PositiveDimensional(i) => panic!("unexpected family {}", i.to_text()),
    }
}

#[test]
fn quartic_secants_and_phi_match_reference() {
    let c = curve("quartic.json");
    let s = secant_coordinates(&c).unwrap();
    let reference = polys(&invariant_ring(), "quartic_secants.txt");
    for (u, p) in s.u.iter().zip(&reference) {
        assert_eq!(u.canonical(), p.canonical());
    }
    assert_eq!(
        stationary_form(&c).unwrap(),
        poly(&invariant_ring(), "quartic_phi.txt").canonical()
    );
}

#[test]
fn quartic_edge_surface_on_both_routes() {
    let c = curve("quartic.json");
    let expected = poly(&space_ring(), "quartic_edge6.txt").canonical();
    for route in [Route::Direct, Route::Grassmannian] {
        let es = edge_components(
            &c,
            &EdgeOptions {
                route,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(es.is_complete());
        assert_eq!(es.components.len(), 1);
        assert_eq!(es.components[0].surface, expected, "{route:?}");
        assert_eq!(es.components[0].degree, 6);
    }
}

#[test]
fn quartic_edge_surface_contains_numeric_bisecants() {
    let f = poly(&space_ring(), "quartic_edge6.txt");
    let pts = quartic_trig().bisecant_points(12);
    assert!(pts.len() >= 24, "only {} points", pts.len());
    for p in &pts {
        assert!(relative_residual(&f, p) < 1e-8, "{p:?}");
    }
    let off = [0.3, -0.2, 0.9];
    assert!(relative_residual(&f, &off) > 1e-3);
}

#[test]
fn edge_degree_matches_formula_for_smooth_quartic() {
    let r = report(&CurveInvariants::smooth(4, 0).unwrap()).unwrap();
    let total = poly(&space_ring(), "quartic_edge6.txt").total_degree() as i64;
    assert_eq!(total, r.edge_degree);
}

#[test]
fn running_curve_small_components() {
    let c = curve("running.json");
    let phi = stationary_form(&c).unwrap();
    let ir = invariant_ring();
    let ab = Polynomial::parse(&ir, "a-b").unwrap();
    let cc = Polynomial::parse(&ir, "c").unwrap();
    let quartic = curvehull::polyring::exact_divide(&phi, &(&ab * &cc)).unwrap();
    assert_eq!(quartic.total_degree(), 4);
    let fac = curvehull::factor::factor_homogeneous(&quartic, 12).unwrap();
    assert!(fac.is_irreducible());
    let sr = space_ring();
    let secants = secant_coordinates(&c).unwrap();
    for (factor, text) in [(ab, "x^2-y^2-x*z"), (cc, "z-4*x^3+3*x")] {
        for route in [Route::Grassmannian, Route::Direct] {
            let opts = EdgeOptions {
                route,
                ..Default::default()
            };
            let comp =
                curvehull::edgesurface::component_for_factor(&factor, &secants, &opts).unwrap();
            assert_eq!(
                comp.surface,
                Polynomial::parse(&sr, text).unwrap().canonical(),
                "{route:?}"
            );
        }
    }
}

#[test]
fn pencil_spec_gives_four_cones() {
    let CurveSpec::QuadricPencil(p) = spec("pencil.json") else {
        panic!()
    };
    // det(Q1 + t Q2) vanishes at t = -1, -1/3, -2, -3/2; the members there, by hand
    let cones = "(-2*x^2+y^2+z^2)*(-2+5*y^2+7*z^2)*(1-5*x^2-z^2)*(1-7*x^2+y^2)";
    let expected = Polynomial::parse(&space_ring(), cones).unwrap().canonical();
    assert_eq!(pencil_edge_surface(&p).unwrap(), expected);
}

#[test]
fn squares_ideal_has_45_quartics_including_known_ones() {
    let p = p6();
    assert_eq!(p.generators().len(), 45);
    assert!(p
        .generators()
        .iter()
        .all(|g| g.total_degree() == 4 && g.is_homogeneous()));
    for known in polys(&squares_ring(6), "squares6_known.txt") {
        assert!(p.generators().contains(&known.canonical()), "{known}");
    }
}

#[test]
fn squares_ideal_vanishes_on_squares() {
    // the square of any cubic lies on the variety
    let gb = groebner_basis(p6().ideal(), &MonomialOrder::Grevlex).unwrap();
    for nu in [[1, 0, 0, 1], [2, -1, 3, 5], [0, 1, 1, 0]] {
        let k: Vec<_> = (0..=6)
            .map(|i| {
                (0..=3usize)
                    .filter(|&j| i >= j && i - j <= 3)
                    .map(|j| nu[j] * nu[i - j])
                    .sum::<i64>()
            })
            .map(rat)
            .collect();
        for g in p6().generators() {
            assert!(g.eval(&k).eq(&rat(0)));
        }
    }
    // a sextic with distinct roots does not
    let k: Vec<_> = [1, 0, -3, 0, 0, 0, 1].into_iter().map(rat).collect();
    assert!(p6().generators().iter().any(|g| g.eval(&k) != rat(0)));
    assert!(!gb.is_unit());
}

#[test]
fn squares_ideal_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let opts = GbOptions::default();
    let a = squares_ideal_cached(6, Some(dir.path()), 8, &opts).unwrap();
    assert!(dir.path().join("P_6.ideal").exists());
    let b = squares_ideal_cached(6, Some(dir.path()), 8, &opts).unwrap();
    assert_eq!(a, b);
    // a cached ideal is used even above the cap
    let c = squares_ideal_cached(6, Some(dir.path()), 4, &opts).unwrap();
    assert_eq!(a, c);
    let empty = tempfile::tempdir().unwrap();
    assert!(squares_ideal_cached(6, Some(empty.path()), 4, &opts).is_err());
}

#[test]
fn running_curve_chow_form() {
    let expected = poly(&space_ring(), "running_chow.txt").canonical();
    assert_eq!(form(chow("running.json")), expected);
}

#[test]
fn henrion_chow_form() {
    let expected = poly(&space_ring(), "henrion_chow.txt").canonical();
    assert_eq!(form(chow("henrion.json")), expected);
}

#[test]
fn morton_chow_form_needs_a_coordinate_change() {
    let expected = poly(&space_ring(), "morton_chow.txt").canonical();
    assert_eq!(form(chow("morton.json")), expected);
}

#[test]
fn barth_moore_planes_form_a_sextic_curve() {
    let ChowResult::PositiveDimensional(gamma) = chow("barth_moore.json") else {
        panic!("expected a positive-dimensional family")
    };
    // degree of the curve: points on a generic plane, counted in the chart alpha = 1
    let ar = Ring::grevlex(&["beta", "gamma", "delta"]);
    let mut gens: Vec<Polynomial> = gamma
        .generators()
        .iter()
        .map(|g| g.specialize(0, &rat(1)).to_ring(&ar).unwrap())
        .collect();
    gens.push(Polynomial::parse(&ar, "3 + 5*beta - 7*gamma + 11*delta").unwrap());
    let gb = groebner_basis(&Ideal::new(&ar, gens).unwrap(), &MonomialOrder::Grevlex).unwrap();
    assert_eq!(quotient_algebra(&gb).unwrap().dimension(), 6);
    assert_eq!(gamma.ring(), &plane_ring());
}

#[test]
fn generic_sextic_has_eight_tritangents() {
    let c = curvehull::curve::ProjectiveCurve::parse([
        "x0^6 + 2*x0^3*x1^3 - x1^6 + x0*x1^5",
        "x0^5*x1 - 3*x0^2*x1^4 + x1^6",
        "x0^4*x1^2 + x0*x1^5 - 2*x0^6",
        "x0^2*x1^4 + 5*x0^3*x1^3 + x1^6 - x0^5*x1",
    ])
    .unwrap();
    let expected = report(&CurveInvariants::smooth(6, 0).unwrap())
        .unwrap()
        .tritangent_count;
    let f = form(chow_form(&tritangent_ideal(&c, p6()).unwrap()).unwrap());
    assert_eq!(f.total_degree() as i64, expected);
}

#[test]
fn degree_mismatch_is_rejected() {
    let c = curve("quartic.json");
    assert!(matches!(
        tritangent_ideal(&c, p6()),
        Err(curvehull::Error::DegreeMismatch {
            expected: 6,
            found: 4
        })
    ));
}
