//! Edge surfaces: the union of all stationary bisecant lines of a rational
//! space curve, computed from the secant map into the Grassmannian.
//!
//! Pairs of parameters `p, q` on P^1 are recorded by the symmetric
//! invariants `a = xp0 xq0`, `b = xp1 xq1`, `c = xp0 xq1 + xp1 xq0`, so the
//! symmetric square of the parameter line becomes the plane P^2(a:b:c).

mod pencil;

use std::time::Instant;

use crate::curve::ProjectiveCurve;
use crate::error::{Error, Result};
use crate::factor::{factor_homogeneous, DEFAULT_HOMOGENEOUS_CAP};
use crate::groebner::{eliminate_with, saturate_generators, GbOptions, Ideal};
use crate::polyring::{
    exact_divide, gcd, rat, squarefree_part, Monomial, MonomialOrder, PolyMatrix, Polynomial,
    Rational, Ring,
};

pub use pencil::pencil_edge_surface;

/// Names of the Plücker coordinates in their fixed order.
pub const PLUCKER_NAMES: [&str; 6] = ["u01", "u02", "u03", "u12", "u13", "u23"];
pub const PLUCKER_INDEX: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `Q[xp0, xp1, xq0, xq1]` under lex order, which makes the leading term of
/// `a^i b^j c^k` equal to `xp0^(i+k) xp1^j xq0^i xq1^(j+k)`.
pub fn pair_ring() -> Ring {
    Ring::new(&["xp0", "xp1", "xq0", "xq1"], MonomialOrder::Lex).unwrap()
}

pub fn invariant_ring() -> Ring {
    Ring::grevlex(&["a", "b", "c"])
}

pub fn space_ring() -> Ring {
    Ring::grevlex(&["x", "y", "z"])
}

fn swap_points(f: &Polynomial) -> Polynomial {
    let r = f.ring();
    let v = |n| Polynomial::var(r, n);
    f.compose(r, &[v("xq0"), v("xq1"), v("xp0"), v("xp1")])
}

/// Writes a symmetric bihomogeneous `f(xp, xq)` as a polynomial in
/// `a, b, c`. The representation is unique; it is found by peeling off
/// leading terms, which solves the triangular linear system directly.
pub fn symmetrize(f: &Polynomial) -> Result<Polynomial> {
    let pr = pair_ring();
    let f = f.to_ring(&pr)?;
    let ir = invariant_ring();
    if f.is_zero() {
        return Ok(Polynomial::zero(&ir));
    }
    if swap_points(&f) != f {
        return Err(Error::NotSymmetric);
    }
    let images = [
        Polynomial::parse(&pr, "xp0*xq0").unwrap(),
        Polynomial::parse(&pr, "xp1*xq1").unwrap(),
        Polynomial::parse(&pr, "xp0*xq1+xp1*xq0").unwrap(),
    ];
    let mut rest = f;
    let mut out: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, coeff)) = rest.leading_term().cloned() {
        let e = m.exponents();
        let (i, j) = (e[2], e[1]);
        if e[0] < i || e[3] < j || e[0] - i != e[3] - j {
            return Err(Error::NotInInvariantRing);
        }
        let k = e[0] - i;
        let expo = [i, j, k];
        let sub = images[0].pow(i as u32).mul_term(&Monomial::one(4), &coeff)
            * images[1].pow(j as u32)
            * images[2].pow(k as u32);
        rest = &rest - &sub;
        out.push((Monomial::from_exponents(&expo), coeff));
    }
    Ok(Polynomial::from_terms(&ir, out))
}

/// The binary forms at the two points `p` and `q`.
fn at_points(curve: &ProjectiveCurve) -> (Vec<Polynomial>, Vec<Polynomial>) {
    let pr = pair_ring();
    let v = |n| Polynomial::var(&pr, n);
    let p = [v("xp0"), v("xp1")];
    let q = [v("xq0"), v("xq1")];
    let fp = curve.forms().iter().map(|f| f.compose(&pr, &p)).collect();
    let fq = curve.forms().iter().map(|f| f.compose(&pr, &q)).collect();
    (fp, fq)
}

fn bracket() -> Polynomial {
    Polynomial::parse(&pair_ring(), "xp0*xq1-xp1*xq0").unwrap()
}

/// Plücker coordinates of the secant line through two curve points, in the
/// invariants `a, b, c`: `U_ij` of degree `d - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecantCoordinates {
    pub u: [Polynomial; 6],
}

impl SecantCoordinates {
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        let k = PLUCKER_INDEX
            .iter()
            .position(|&p| p == (i, j))
            .expect("i < j <= 3");
        &self.u[k]
    }

    /// `U01 U23 - U02 U13 + U03 U12`, identically zero for valid data.
    pub fn plucker_relation(&self) -> Polynomial {
        let u = &self.u;
        &(&(&u[0] * &u[5]) - &(&u[1] * &u[4])) + &(&u[2] * &u[3])
    }
}

pub fn secant_coordinates(curve: &ProjectiveCurve) -> Result<SecantCoordinates> {
    let (fp, fq) = at_points(curve);
    let d = bracket();
    let mut u = Vec::with_capacity(6);
    for &(i, j) in &PLUCKER_INDEX {
        let minor = &(&fp[i] * &fq[j]) - &(&fp[j] * &fq[i]);
        let quotient = exact_divide(&minor, &d)?;
        u.push(symmetrize(&quotient)?);
    }
    Ok(SecantCoordinates {
        u: u.try_into().unwrap(),
    })
}

/// The stationary-bisecant form `Φ(a, b, c)` of degree `2(d - 3)`, from the
/// 4x4 determinant of tangent directions at `p` and `q`.
pub fn stationary_form(curve: &ProjectiveCurve) -> Result<Polynomial> {
    let (fp, fq) = at_points(curve);
    let pr = pair_ring();
    let row = |fs: &[Polynomial], var: usize| -> Vec<Polynomial> {
        fs.iter().map(|f| f.derivative(var)).collect()
    };
    let m = PolyMatrix::from_rows(
        &pr,
        vec![row(&fp, 0), row(&fp, 1), row(&fq, 2), row(&fq, 3)],
    )?;
    let det = m.determinant()?;
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let quotient = exact_divide(&det, &bracket().pow(4))?;
    Ok(symmetrize(&quotient)?.canonical())
}

/// How each component is eliminated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Image curve in the Grassmannian first, then the ruled surface.
    Grassmannian,
    /// Substitute the secant coordinates into the incidence equations and
    /// eliminate `a, b, c` at once.
    Direct,
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Route> {
        match s {
            "grassmannian" => Ok(Route::Grassmannian),
            "direct" => Ok(Route::Direct),
            other => Err(Error::Invalid(format!("unknown route `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EdgeOptions {
    pub route: Route,
    pub gb: GbOptions,
    /// Components are independent and may run on separate threads.
    pub threads: usize,
}

impl Default for EdgeOptions {
    fn default() -> Self {
        EdgeOptions {
            route: Route::Grassmannian,
            gb: GbOptions::default(),
            threads: 1,
        }
    }
}

/// One irreducible component of the edge surface.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeComponent {
    pub phi_factor: Polynomial,
    /// Reduced equation in `x, y, z`.
    pub surface: Polynomial,
    pub degree: u32,
    /// Whether the elimination generator was already squarefree.
    pub reduced: bool,
    /// The gcd of the elimination generators before squarefree reduction.
    pub raw: Polynomial,
    pub raw_degree: u32,
    /// The whole elimination ideal when it was not principal; `surface` is
    /// then the gcd of its generators.
    pub non_principal: Option<Ideal>,
}

/// All components that could be computed, plus the factors of `Φ` whose
/// computation failed.
#[derive(Clone, Debug)]
pub struct EdgeSurface {
    pub phi: Polynomial,
    pub components: Vec<EdgeComponent>,
    pub failures: Vec<(Polynomial, Error)>,
}

impl EdgeSurface {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.components.iter().map(|c| c.degree).sum()
    }
}

/// The rows of the skew-symmetric incidence matrix applied to `(w, x, y, z)`.
fn incidence_equations(u: &[Polynomial; 6], w: &Polynomial) -> Vec<Polynomial> {
    let ring = w.ring();
    let x = Polynomial::var(ring, "x");
    let y = Polynomial::var(ring, "y");
    let z = Polynomial::var(ring, "z");
    let [u01, u02, u03, u12, u13, u23] = u;
    vec![
        &(&(u23 * &x) - &(u13 * &y)) + &(u12 * &z),
        &(&(&(-u23) * w) + &(u03 * &y)) - &(u02 * &z),
        &(&(u13 * w) - &(u03 * &x)) + &(u01 * &z),
        &(&(&(-u12) * w) + &(u02 * &x)) - &(u01 * &y),
    ]
}

/// Turns the homogeneous elimination ideal in `w, x, y, z` into a
/// component by setting `w = 1`.
fn component_from(phi_factor: &Polynomial, ideal: Ideal) -> Result<EdgeComponent> {
    let sr = space_ring();
    let w = ideal
        .ring()
        .var_index("w")
        .ok_or_else(|| Error::RingMismatch("elimination ideal without `w`".into()))?;
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.specialize(w, &rat(1)).to_ring(&sr))
        .collect::<Result<_>>()?;
    let ideal = Ideal::new(&sr, gens)?;
    let gens = ideal.generators();
    if gens.is_empty() {
        return Err(Error::Invalid(format!(
            "elimination ideal is zero for factor {phi_factor}"
        )));
    }
    let raw = gens
        .iter()
        .fold(Polynomial::zero(&sr), |acc, g| gcd(&acc, g));
    if raw.is_constant() {
        return Err(Error::Invalid(format!(
            "elimination ideal has no surface part for factor {phi_factor}"
        )));
    }
    let surface = squarefree_part(&raw).canonical();
    let non_principal = if gens.len() > 1 {
        Some(ideal.clone())
    } else {
        None
    };
    Ok(EdgeComponent {
        phi_factor: phi_factor.clone(),
        degree: surface.total_degree(),
        reduced: surface.total_degree() == raw.total_degree(),
        raw_degree: raw.total_degree(),
        raw: raw.canonical(),
        surface,
        non_principal,
    })
}

/// Index of the sparsest secant coordinate that does not vanish identically
/// on `phi = 0` (phi irreducible).
fn nonvanishing_coordinate(u: &[Polynomial; 6], phi: &Polynomial) -> Result<usize> {
    let mut order: Vec<usize> = (0..6).filter(|&k| !u[k].is_zero()).collect();
    order.sort_by_key(|&k| u[k].len());
    order
        .into_iter()
        .find(|&k| exact_divide(&u[k], phi).is_err())
        .ok_or_else(|| {
            Error::Invalid(
                "all secant coordinates vanish on a component of the stationary curve".into(),
            )
        })
}

/// Direct route: `⟨Φ_i, skew(U(a,b,c)) (w,x,y,z)⟩`, saturated by one secant
/// coordinate `U_k` that does not vanish on the curve (this removes both
/// `a = b = c = 0` and the base points of the secant map), then `a, b, c`
/// are eliminated. The saturation introduces `s = U_k` with weight
/// `deg U_k` so that everything stays homogeneous.
fn direct_component(
    phi_factor: &Polynomial,
    secants: &SecantCoordinates,
    opts: &EdgeOptions,
) -> Result<EdgeComponent> {
    let k = nonvanishing_coordinate(&secants.u, phi_factor)?;
    let du = secants.u[k].total_degree();
    let ring = Ring::with_weights(
        &["a", "b", "c", "s", "w", "x", "y", "z"],
        MonomialOrder::Grevlex,
        Some(vec![1, 1, 1, du, 1, 1, 1, 1]),
    )?;
    let u: Vec<Polynomial> = secants
        .u
        .iter()
        .map(|p| p.to_ring(&ring))
        .collect::<Result<_>>()?;
    let s = Polynomial::var(&ring, "s");
    let mut gens = vec![phi_factor.to_ring(&ring)?, &s - &u[k]];
    gens.extend(incidence_equations(
        &u.try_into().unwrap(),
        &Polynomial::var(&ring, "w"),
    ));
    let sat = saturate_generators(&Ideal::new(&ring, gens)?, &s, &opts.gb)?;
    let elim = eliminate_with(&sat, &["a", "b", "c", "s"], &opts.gb)?;
    component_from(phi_factor, elim)
}

/// Grassmannian route: the ideal of the image curve `I_Φi ⊂ Q[u]` by
/// weighted elimination of `a, b, c`, plus the incidence equations, saturated
/// by a Plücker coordinate that does not vanish on the image curve, then the
/// `u` are eliminated.
fn grassmannian_component(
    phi_factor: &Polynomial,
    secants: &SecantCoordinates,
    opts: &EdgeOptions,
) -> Result<EdgeComponent> {
    let image = grassmannian_image(phi_factor, secants, opts)?;
    let k = nonvanishing_coordinate(&secants.u, phi_factor)?;
    let mut names: Vec<&str> = PLUCKER_NAMES.to_vec();
    names.extend(["w", "x", "y", "z"]);
    let ring = Ring::grevlex(&names);
    let u: Vec<Polynomial> = PLUCKER_NAMES
        .iter()
        .map(|n| Polynomial::var(&ring, n))
        .collect();
    let mut gens: Vec<Polynomial> = image
        .generators()
        .iter()
        .map(|g| g.to_ring(&ring))
        .collect::<Result<_>>()?;
    gens.extend(incidence_equations(
        &u.clone().try_into().unwrap(),
        &Polynomial::var(&ring, "w"),
    ));
    let sat = saturate_generators(&Ideal::new(&ring, gens)?, &u[k], &opts.gb)?;
    let elim = eliminate_with(&sat, &PLUCKER_NAMES, &opts.gb)?;
    component_from(phi_factor, elim)
}

/// Homogeneous ideal of the image of `Φ_i = 0` under the secant map.
pub fn grassmannian_image(
    phi_factor: &Polynomial,
    secants: &SecantCoordinates,
    opts: &EdgeOptions,
) -> Result<Ideal> {
    let du = secants
        .u
        .iter()
        .map(|p| p.total_degree())
        .max()
        .unwrap_or(1)
        .max(1);
    let mut names = vec!["a", "b", "c"];
    names.extend(PLUCKER_NAMES);
    let mut weights = vec![1u32; 3];
    weights.extend([du; 6]);
    let ring = Ring::with_weights(&names, MonomialOrder::Grevlex, Some(weights))?;
    let mut gens = vec![phi_factor.to_ring(&ring)?];
    for (k, name) in PLUCKER_NAMES.iter().enumerate() {
        gens.push(&Polynomial::var(&ring, name) - &secants.u[k].to_ring(&ring)?);
    }
    let elim = eliminate_with(&Ideal::new(&ring, gens)?, &["a", "b", "c"], &opts.gb)?;
    elim.to_ring(&Ring::grevlex(&PLUCKER_NAMES))
}

/// One component per irreducible factor of `Φ`.
pub fn component_for_factor(
    phi_factor: &Polynomial,
    secants: &SecantCoordinates,
    opts: &EdgeOptions,
) -> Result<EdgeComponent> {
    let started = Instant::now();
    let out = match opts.route {
        Route::Direct => direct_component(phi_factor, secants, opts),
        Route::Grassmannian => grassmannian_component(phi_factor, secants, opts),
    };
    log::info!(
        "edge component for factor {} finished in {:.1?}",
        phi_factor,
        started.elapsed()
    );
    out
}

/// Factors `Φ` and computes every component of the edge surface. Failures
/// of individual components are reported next to the successful ones.
pub fn edge_components(curve: &ProjectiveCurve, opts: &EdgeOptions) -> Result<EdgeSurface> {
    let secants = secant_coordinates(curve)?;
    let phi = stationary_form(curve)?;
    let cap = phi.total_degree().max(DEFAULT_HOMOGENEOUS_CAP);
    let factors: Vec<Polynomial> = factor_homogeneous(&phi, cap)?
        .factors
        .into_iter()
        .map(|(f, _)| f)
        .collect();
    log::info!(
        "stationary form {} has {} irreducible factors",
        phi,
        factors.len()
    );
    let results: Vec<Result<EdgeComponent>> = if opts.threads > 1 && factors.len() > 1 {
        run_parallel(&factors, &secants, opts)
    } else {
        factors
            .iter()
            .map(|f| component_for_factor(f, &secants, opts))
            .collect()
    };
    let mut components = Vec::new();
    let mut failures = Vec::new();
    for (f, r) in factors.into_iter().zip(results) {
        match r {
            Ok(c) => components.push(c),
            Err(e) => failures.push((f, e)),
        }
    }
    Ok(EdgeSurface {
        phi,
        components,
        failures,
    })
}

fn run_parallel(
    factors: &[Polynomial],
    secants: &SecantCoordinates,
    opts: &EdgeOptions,
) -> Vec<Result<EdgeComponent>> {
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<EdgeComponent>>>> = factors
        .iter()
        .map(|_| std::sync::Mutex::new(None))
        .collect();
    std::thread::scope(|s| {
        for _ in 0..opts.threads.min(factors.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if k >= factors.len() {
                    break;
                }
                let r = component_for_factor(&factors[k], secants, opts);
                *slots[k].lock().unwrap() = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot is filled"))
        .collect()
}
