//! One line per acceptance criterion: PASS, FAIL or SKIPPED, with timings
//! against fixed budgets. The stretch criterion runs only when
//! `CURVEHULL_STRETCH=1`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use curvehull::curve::CurveSpec;
use curvehull::degrees::{dejonquieres, ns_intersect, report, CurveInvariants, NSClass};
use curvehull::edgesurface::{
    edge_components, invariant_ring, pencil_edge_surface, secant_coordinates, space_ring,
    stationary_form, EdgeOptions, Route,
};
use curvehull::factor::factor_homogeneous;
use curvehull::groebner::{
    groebner_basis, ideal_equal, quotient_algebra, saturate, GbOptions, Ideal,
};
use curvehull::polyring::linalg::mat_mul;
use curvehull::polyring::{exact_divide, rat, Monomial, MonomialOrder, Polynomial, Ring};
use curvehull::tritangent::{
    chow_form, compute_squares_ideal, squares_ring, tritangent_ideal, ChowResult,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Check {
    let c = curve("quartic.json");
    let s = secant_coordinates(&c).map_err(err)?;
    let reference = polys(&invariant_ring(), "quartic_secants.txt");
    for (k, (u, p)) in s.u.iter().zip(&reference).enumerate() {
        ensure(u.canonical() == p.canonical(), || format!("u[{k}] = {u}"))?;
    }
    let phi = stationary_form(&c).map_err(err)?;
    ensure(
        phi == poly(&invariant_ring(), "quartic_phi.txt").canonical(),
        || format!("phi = {phi}"),
    )?;
    let es = edge_components(&c, &EdgeOptions::default()).map_err(err)?;
    let expected = poly(&space_ring(), "quartic_edge6.txt").canonical();
    ensure(
        es.components.len() == 1 && es.components[0].surface == expected,
        || format!("{} components", es.components.len()),
    )?;
    Ok("six secant coordinates, phi and the sextic match".into())
}

fn criterion_2() -> Check {
    let c = curve("running.json");
    let ir = invariant_ring();
    let phi = stationary_form(&c).map_err(err)?;
    let fac = factor_homogeneous(&phi, 12).map_err(err)?;
    let degrees: Vec<u32> = fac.factors.iter().map(|(f, _)| f.total_degree()).collect();
    ensure(degrees == [1, 1, 4], || {
        format!("factor degrees {degrees:?}")
    })?;
    for text in ["a-b", "c"] {
        let f = Polynomial::parse(&ir, text).unwrap().canonical();
        ensure(fac.factors.iter().any(|(g, _)| *g == f), || {
            format!("missing factor {text}")
        })?;
    }
    // the Grassmannian route stalls on coefficient growth for the quartic factor
    let opts = EdgeOptions {
        route: Route::Direct,
        gb: GbOptions {
            time_limit: Some(Duration::from_secs(30 * 60)),
            ..GbOptions::default()
        },
        ..EdgeOptions::default()
    };
    let es = edge_components(&c, &opts).map_err(err)?;
    ensure(es.is_complete(), || format!("failures: {:?}", es.failures))?;
    let mut got: Vec<(u32, Polynomial)> = es
        .components
        .iter()
        .map(|c| (c.degree, c.surface.clone()))
        .collect();
    got.sort_by_key(|(d, _)| *d);
    let sr = space_ring();
    let expected = [
        Polynomial::parse(&sr, "x^2-y^2-x*z").unwrap().canonical(),
        Polynomial::parse(&sr, "z-4*x^3+3*x").unwrap().canonical(),
        poly(&sr, "running_edge16.txt").canonical(),
    ];
    let degs: Vec<u32> = got.iter().map(|(d, _)| *d).collect();
    ensure(degs == [2, 3, 16], || format!("component degrees {degs:?}"))?;
    for ((_, g), e) in got.iter().zip(&expected) {
        ensure(g == e, || format!("component {g} differs"))?;
    }
    Ok("direct route: components of degrees 2, 3, 16 match".into())
}

fn criterion_3() -> Check {
    let p = compute_squares_ideal(6, 8, &GbOptions::default()).map_err(err)?;
    ensure(p.generators().len() == 45, || {
        format!("{} generators", p.generators().len())
    })?;
    ensure(p.generators().iter().all(|g| g.total_degree() == 4), || {
        "non-quartic generator".into()
    })?;
    for known in polys(&squares_ring(6), "squares6_known.txt") {
        ensure(p.generators().contains(&known.canonical()), || {
            format!("missing {known}")
        })?;
    }
    let sr = space_ring();
    for (spec, golden) in [
        ("running.json", "running_chow.txt"),
        ("morton.json", "morton_chow.txt"),
    ] {
        let t = tritangent_ideal(&curve(spec), &p).map_err(err)?;
        match chow_form(&t).map_err(err)? {
            ChowResult::Form(f) => ensure(f == poly(&sr, golden).canonical(), || {
                format!("{spec}: {f}")
            })?,
            ChowResult::PositiveDimensional(_) => {
                return Err(format!("{spec}: positive-dimensional"))
            }
        }
    }
    Ok("45 quartics incl. the two known ones; running and Morton Chow forms match".into())
}

fn criterion_4() -> Check {
    let row = |d, g, n| {
        let r = report(&CurveInvariants::new(d, g, n, 0).unwrap()).unwrap();
        (r.edge_degree, r.tritangent_count)
    };
    ensure(row(6, 0, 0) == (30, 8), || {
        format!("(6,0) -> {:?}", row(6, 0, 0))
    })?;
    ensure(row(4, 0, 0) == (6, 0), || {
        format!("(4,0) -> {:?}", row(4, 0, 0))
    })?;
    ensure(row(4, 1, 0) == (8, 0), || {
        format!("(4,1) -> {:?}", row(4, 1, 0))
    })?;
    ensure(row(4, 0, 1).0 == 4, || {
        format!("(4,0,n=1) -> {:?}", row(4, 0, 1))
    })?;
    let mut checked = 0;
    for d in 4..=12i64 {
        for g in 0..=4i64 {
            let r = report(&CurveInvariants::smooth(d, g).unwrap()).unwrap();
            let big = |v: i64| BigInt::from(v);
            // planes through a line tangent once: the dual degree
            if let Ok(v) = dejonquieres(&[2, 1], &[1, d - 2], d, g, 1) {
                ensure(v == big(r.dual_degree), || {
                    format!("dual degree at ({d},{g})")
                })?;
                checked += 1;
            }
            if let Ok(v) = dejonquieres(&[4, 1], &[1, d - 4], d, g, 3) {
                ensure(v == big(r.stalls), || {
                    format!("stalls at ({d},{g}): {v} vs {}", r.stalls)
                })?;
                checked += 1;
            }
            if d >= 6 {
                if let Ok(v) = dejonquieres(&[2, 1], &[3, d - 6], d, g, 3) {
                    ensure(v == big(r.tritangent_count), || {
                        format!("tritangents at ({d},{g}): {v} vs {}", r.tritangent_count)
                    })?;
                    checked += 1;
                }
            }
            let h = NSClass::secants_meeting_line(d, g);
            let b = NSClass::stationary_bisecants(d, g);
            ensure(ns_intersect(h, b, g) == r.edge_degree, || {
                format!("H.B at ({d},{g})")
            })?;
        }
    }
    Ok(format!(
        "reference rows and {checked} De Jonquieres comparisons agree"
    ))
}

fn criterion_5() -> Check {
    let CurveSpec::QuadricPencil(p) = spec("pencil.json") else {
        return Err("pencil.json is not a pencil".into());
    };
    let cones = "(-2*x^2+y^2+z^2)*(-2+5*y^2+7*z^2)*(1-5*x^2-z^2)*(1-7*x^2+y^2)";
    let expected = Polynomial::parse(&space_ring(), cones).unwrap().canonical();
    let s = pencil_edge_surface(&p).map_err(err)?;
    ensure(s == expected, || format!("got {s}"))?;
    Ok("product of the four cones".into())
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, max_exp: u16, terms: usize) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        (0..terms).map(|_| {
            let e: Vec<u16> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            (Monomial::from_exponents(&e), rat(rng.gen_range(-5..=5)))
        }),
    )
}

fn random_form(rng: &mut ChaCha8Rng, ring: &Ring, deg: u16, terms: usize) -> Polynomial {
    Polynomial::from_terms(
        ring,
        (0..terms).map(|_| {
            let i = rng.gen_range(0..=deg);
            let j = rng.gen_range(0..=deg - i);
            (
                Monomial::from_exponents(&[i, j, deg - i - j]),
                rat(rng.gen_range(-4..=4)),
            )
        }),
    )
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let r = Ring::grevlex(&["x", "y", "z"]);
    let cases = 25;
    for _ in 0..cases {
        let f = random_poly(&mut rng, &r, 3, 5);
        let g = random_poly(&mut rng, &r, 2, 4);
        if g.is_zero() {
            continue;
        }
        ensure(exact_divide(&(&f * &g), &g).map_err(err)? == f, || {
            "exact_divide".into()
        })?;
    }
    for name in [
        "quartic.json",
        "running.json",
        "henrion.json",
        "morton.json",
        "barth_moore.json",
    ] {
        let s = secant_coordinates(&curve(name)).map_err(err)?;
        ensure(s.plucker_relation().is_zero(), || {
            format!("Plucker relation for {name}")
        })?;
    }
    for _ in 0..cases {
        let a = random_form(&mut rng, &r, 1, 3);
        let b = random_form(&mut rng, &r, 2, 4);
        let f = &(&a * &b) * &a;
        if f.is_zero() {
            continue;
        }
        let fac = factor_homogeneous(&f, 12).map_err(err)?;
        ensure(fac.expand(&r) == f, || format!("factorization of {f}"))?;
    }
    for _ in 0..cases {
        let mut gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut rng, &r, 2, 3)).collect();
        let a = groebner_basis(
            &Ideal::new(&r, gens.clone()).map_err(err)?,
            &MonomialOrder::Grevlex,
        )
        .map_err(err)?;
        gens.reverse();
        let b = groebner_basis(&Ideal::new(&r, gens).map_err(err)?, &MonomialOrder::Grevlex)
            .map_err(err)?;
        ensure(a.elements() == b.elements(), || {
            "GB depends on generator order".into()
        })?;
    }
    for _ in 0..cases {
        let i = Ideal::new(
            &r,
            vec![
                random_form(&mut rng, &r, 2, 3),
                random_form(&mut rng, &r, 2, 3),
            ],
        )
        .map_err(err)?;
        let v = Polynomial::variable(&r, rng.gen_range(0..3));
        let once = saturate(&i, &v).map_err(err)?;
        let twice = saturate(&once, &v).map_err(err)?;
        ensure(ideal_equal(&once, &twice).map_err(err)?, || {
            "saturation not idempotent".into()
        })?;
    }
    for _ in 0..cases {
        let lin = |rng: &mut ChaCha8Rng| random_form(rng, &r, 1, 3);
        let gens = vec![
            &Polynomial::parse(&r, "x^2").unwrap() + &lin(&mut rng),
            &Polynomial::parse(&r, "y^2").unwrap() + &lin(&mut rng),
            &Polynomial::parse(&r, "z^2-1").unwrap() + &lin(&mut rng),
        ];
        let gb = groebner_basis(&Ideal::new(&r, gens).map_err(err)?, &MonomialOrder::Grevlex)
            .map_err(err)?;
        let qa = quotient_algebra(&gb).map_err(err)?;
        let m: Vec<_> = ["x", "y", "z"]
            .iter()
            .map(|v| qa.variable_matrix(v).unwrap())
            .collect();
        for i in 0..3 {
            for j in i + 1..3 {
                ensure(mat_mul(&m[i], &m[j]) == mat_mul(&m[j], &m[i]), || {
                    "matrices do not commute".into()
                })?;
            }
        }
    }
    Ok(format!("{cases} random cases per property"))
}

fn criterion_7() -> Check {
    // saturation and elimination each get half of the two hours per curve
    let opts = EdgeOptions {
        route: Route::Direct,
        gb: GbOptions {
            time_limit: Some(Duration::from_secs(3600)),
            ..GbOptions::default()
        },
        ..EdgeOptions::default()
    };
    let henrion = edge_components(&curve("henrion.json"), &opts).map_err(err)?;
    let degs: Vec<u32> = henrion.components.iter().map(|c| c.degree).collect();
    ensure(henrion.is_complete() && degs == [27], || {
        format!("Henrion degrees {degs:?}")
    })?;
    let morton = edge_components(&curve("morton.json"), &opts).map_err(err)?;
    let mut degs: Vec<u32> = morton.components.iter().map(|c| c.degree).collect();
    degs.sort();
    ensure(morton.is_complete() && degs == [10, 20], || {
        format!("Morton degrees {degs:?}")
    })?;
    let bm = edge_components(&curve("barth_moore.json"), &opts).map_err(err)?;
    let degs: Vec<u32> = bm.components.iter().map(|c| c.degree).collect();
    ensure(bm.is_complete() && degs == [10], || {
        format!("Barth-Moore degrees {degs:?}")
    })?;
    let f = &bm.components[0].surface;
    let sr = space_ring();
    let coeff = |text: &str| {
        let m = Polynomial::parse(&sr, text).unwrap();
        f.coefficient(m.leading_monomial().unwrap())
    };
    // only a few reference terms are known; compare them up to the common scale
    let scale = coeff("y^10");
    for (text, c) in [
        ("x^5*y^5", 27),
        ("x^2*y^7*z", -1875),
        ("z^5", 27),
        ("y^3*z", -16),
    ] {
        ensure(coeff(text) * rat(3125) == &scale * rat(c), || {
            format!("coefficient of {text}")
        })?;
    }
    Ok("Henrion 27, Morton 10 + 20, Barth-Moore reference terms".into())
}

fn main() {
    let stretch = std::env::var("CURVEHULL_STRETCH")
        .map(|v| v == "1")
        .unwrap_or(false);
    let criteria: [(&str, u64, fn() -> Check, bool); 7] = [
        ("quartic curve end to end", 60, criterion_1, true),
        ("running curve edge components", 30 * 60, criterion_2, true),
        ("squares ideal and Chow forms", 10 * 60, criterion_3, true),
        ("degree formulas", 1, criterion_4, true),
        ("pencil of quadrics", 10, criterion_5, true),
        ("property suites", 5 * 60, criterion_6, true),
        (
            "singular and special sextics",
            6 * 3600,
            criterion_7,
            stretch,
        ),
    ];
    let mut failed = 0;
    for (k, (name, budget, run, enabled)) in criteria.into_iter().enumerate() {
        let n = k + 1;
        if !enabled {
            println!("criterion {n} ({name}): SKIPPED (stretch, hours per curve; set CURVEHULL_STRETCH=1 to run)");
            continue;
        }
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let timing = format!("{secs:.2}s of {budget}s");
        match result {
            Ok(detail) if secs <= budget as f64 => {
                println!("criterion {n} ({name}): PASS [{timing}] {detail}")
            }
            Ok(detail) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{timing}] over budget; {detail}");
            }
            Err(why) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{timing}] {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
