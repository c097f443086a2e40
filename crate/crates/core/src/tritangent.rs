//! Tritangent planes. A plane `α + βx + γy + δz = 0` is tangent to the curve
//! at three points exactly when the binary form `αF0 + βF1 + γF2 + δF3` has
//! three double roots. The ideal `P_d` of such forms is precomputed once per
//! degree, specialised to a curve, and turned into a Chow form through the
//! multiplication matrices of the finite set of planes.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{binary_ring, ProjectiveCurve};
use crate::error::{Error, Result};
use crate::groebner::{
    eliminate_with, groebner_basis_with, quotient_algebra, saturate_by_ideal_with, GbOptions,
    GroebnerBasis, Ideal, SaturationStrategy,
};
use crate::polyring::linalg::{mat_mul, rref, RatMatrix};
use crate::polyring::{
    parse_polynomial_list, rat, Monomial, MonomialOrder, PolyMatrix, Polynomial, Rational, Ring,
};

/// Environment variable naming the directory that caches `P_d`.
pub const CACHE_ENV: &str = "CURVEHULL_CACHE_DIR";
/// Largest degree for which `P_d` is computed unless a caller raises it.
pub const DEFAULT_SQUARES_CAP: u32 = 8;

pub const PLANE_NAMES: [&str; 4] = ["alpha", "beta", "gamma", "delta"];

/// `Q[k0, ..., kd]`, the coefficients of `G = Σ k_i x0^i x1^(d-i)`.
pub fn squares_ring(d: u32) -> Ring {
    let names: Vec<String> = (0..=d).map(|i| format!("k{i}")).collect();
    Ring::grevlex(&names)
}

pub fn plane_ring() -> Ring {
    Ring::grevlex(&PLANE_NAMES)
}

/// Binary forms of even degree `d` that are squares, i.e. have `d/2`
/// double roots (three for `d = 6`).
#[derive(Clone, Debug, PartialEq)]
pub struct SquaresIdeal {
    d: u32,
    ideal: Ideal,
}

impl SquaresIdeal {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }
}

/// The coefficients `k_i` of `(ν_0 x1^m + ν_1 x0 x1^(m-1) + ... + ν_m x0^m)^2`
/// as polynomials in `ring`, whose first variables are `ν_0, ..., ν_m`.
pub fn square_coefficients(d: u32, ring: &Ring) -> Vec<Polynomial> {
    let m = (d / 2) as usize;
    let nu: Vec<Polynomial> = (0..=m).map(|j| Polynomial::variable(ring, j)).collect();
    (0..=d as usize)
        .map(|i| {
            let mut s = Polynomial::zero(ring);
            for j in i.saturating_sub(m)..=i.min(m) {
                s = &s + &(&nu[j] * &nu[i - j]);
            }
            s
        })
        .collect()
}

fn check_degree(d: u32, cap: u32) -> Result<()> {
    if d % 2 != 0 || d < 6 {
        return Err(Error::Invalid(format!(
            "squares ideal needs an even degree >= 6, got {d}"
        )));
    }
    if d > cap {
        return Err(Error::DegreeCapExceeded { degree: d, cap });
    }
    Ok(())
}

/// Minimal homogeneous generators of a homogeneous ideal given by a Gröbner
/// basis: degree by degree, keep the elements whose normal forms modulo the
/// ideal of lower-degree generators are linearly independent.
pub fn minimal_generators(gb: &[Polynomial], opts: &GbOptions) -> Result<Vec<Polynomial>> {
    let Some(first) = gb.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let mut sorted: Vec<&Polynomial> = gb.iter().collect();
    sorted.sort_by_key(|g| g.total_degree());
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let deg = sorted[start].total_degree();
        let end = start
            + sorted[start..]
                .iter()
                .take_while(|g| g.total_degree() == deg)
                .count();
        let lower = if kept.is_empty() {
            None
        } else {
            Some(groebner_basis_with(
                &Ideal::new(&ring, kept.clone())?,
                &MonomialOrder::Grevlex,
                opts,
            )?)
        };
        let mut forms = Vec::new();
        for g in &sorted[start..end] {
            let nf = match &lower {
                Some(l) => l.normal_form(g)?,
                None => (*g).clone(),
            };
            forms.push(nf);
        }
        for k in independent_subset(&forms) {
            kept.push(sorted[start + k].clone());
        }
        start = end;
    }
    Ok(kept)
}

/// Indices of a maximal linearly independent subset, chosen greedily.
fn independent_subset(forms: &[Polynomial]) -> Vec<usize> {
    let mut monos: HashMap<Monomial, usize> = HashMap::new();
    for f in forms {
        for (m, _) in f.terms() {
            let next = monos.len();
            monos.entry(m.clone()).or_insert(next);
        }
    }
    let mut chosen = Vec::new();
    let mut rows: RatMatrix = Vec::new();
    for (k, f) in forms.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let mut row = vec![Rational::from_integer(0.into()); monos.len()];
        for (m, c) in f.terms() {
            row[monos[m]] = c.clone();
        }
        let mut trial = rows.clone();
        trial.push(row.clone());
        if rref(&mut trial).len() == rows.len() + 1 {
            rows.push(row);
            chosen.push(k);
        }
    }
    chosen
}

/// Computes `P_d` by eliminating the coefficients of the square root.
pub fn compute_squares_ideal(d: u32, cap: u32, opts: &GbOptions) -> Result<SquaresIdeal> {
    check_degree(d, cap)?;
    let m = d / 2;
    let mut names: Vec<String> = (0..=m).map(|j| format!("nu{j}")).collect();
    names.extend((0..=d).map(|i| format!("k{i}")));
    let mut weights = vec![1u32; m as usize + 1];
    weights.extend(vec![2u32; d as usize + 1]);
    let ring = Ring::with_weights(&names, MonomialOrder::Grevlex, Some(weights))?;
    let squares = square_coefficients(d, &ring);
    let gens: Vec<Polynomial> = squares
        .iter()
        .enumerate()
        .map(|(i, s)| &Polynomial::var(&ring, &format!("k{i}")) - s)
        .collect();
    let nu_names: Vec<String> = (0..=m).map(|j| format!("nu{j}")).collect();
    let drop: Vec<&str> = nu_names.iter().map(|s| s.as_str()).collect();
    let elim = eliminate_with(&Ideal::new(&ring, gens)?, &drop, opts)?;
    let kr = squares_ring(d);
    let elim = elim.to_ring(&kr)?;
    let gb = groebner_basis_with(&elim, &MonomialOrder::Grevlex, opts)?;
    let mut gens: Vec<Polynomial> = minimal_generators(gb.elements(), opts)?
        .into_iter()
        .map(|g| g.canonical())
        .collect();
    gens.sort_by_key(|g| (g.total_degree(), g.to_text()));
    Ok(SquaresIdeal {
        d,
        ideal: Ideal::new(&kr, gens)?,
    })
}

static CACHE_LOCK: Mutex<()> = Mutex::new(());

/// The cache directory named by [`CACHE_ENV`], if set.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

fn cache_path(dir: &Path, d: u32) -> PathBuf {
    dir.join(format!("P_{d}.ideal"))
}

/// `P_d`, read from `dir` when cached there and written there after a
/// fresh computation.
pub fn squares_ideal_cached(
    d: u32,
    dir: Option<&Path>,
    cap: u32,
    opts: &GbOptions,
) -> Result<SquaresIdeal> {
    // the cap only limits fresh computations; a cached ideal is always used
    check_degree(d, u32::MAX)?;
    let Some(dir) = dir else {
        return compute_squares_ideal(d, cap, opts);
    };
    let _guard = CACHE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let path = cache_path(dir, d);
    if let Ok(text) = fs::read_to_string(&path) {
        let ring = squares_ring(d);
        match parse_polynomial_list(&ring, &text) {
            Ok(gens) => {
                return Ok(SquaresIdeal {
                    d,
                    ideal: Ideal::new(&ring, gens)?,
                })
            }
            Err(e) => log::warn!("ignoring unreadable cache file {}: {e}", path.display()),
        }
    }
    let p = compute_squares_ideal(d, cap, opts)?;
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".P_{d}.ideal.{}", std::process::id()));
    fs::write(&tmp, p.ideal.to_text() + "\n")?;
    fs::rename(&tmp, &path)?;
    Ok(p)
}

/// `P_d` with the default cap, cached in the directory named by
/// [`CACHE_ENV`] when that variable is set.
pub fn squares_ideal(d: u32) -> Result<SquaresIdeal> {
    squares_ideal_cached(
        d,
        cache_dir_from_env().as_deref(),
        DEFAULT_SQUARES_CAP,
        &GbOptions::default(),
    )
}

/// `P_{d,C}`: the planes whose restriction to the curve has `d/2` double roots.
#[derive(Clone, Debug, PartialEq)]
pub struct TritangentIdeal {
    curve: ProjectiveCurve,
    ideal: Ideal,
}

impl TritangentIdeal {
    pub fn curve(&self) -> &ProjectiveCurve {
        &self.curve
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }
}

/// The coefficient `k_i` of `x0^i x1^(d-i)` in `αF0 + βF1 + γF2 + δF3`, as a
/// linear form in the plane ring.
pub fn plane_coefficients(curve: &ProjectiveCurve) -> Vec<Polynomial> {
    let pr = plane_ring();
    let d = curve.degree() as usize;
    let br = binary_ring();
    let mut out = vec![Polynomial::zero(&pr); d + 1];
    for (k, form) in curve.forms().iter().enumerate() {
        let form = form
            .to_ring(&br)
            .expect("curve forms live in the binary ring");
        for (m, c) in form.terms() {
            let i = m.exponents()[0] as usize;
            out[i] = &out[i] + &Polynomial::variable(&pr, k).scale(c);
        }
    }
    out
}

pub fn tritangent_ideal(curve: &ProjectiveCurve, p: &SquaresIdeal) -> Result<TritangentIdeal> {
    if curve.degree() != p.d {
        return Err(Error::DegreeMismatch {
            expected: p.d as usize,
            found: curve.degree() as usize,
        });
    }
    let pr = plane_ring();
    let images = plane_coefficients(curve);
    let gens: Vec<Polynomial> = p
        .generators()
        .iter()
        .map(|g| g.compose(&pr, &images))
        .collect();
    Ok(TritangentIdeal {
        curve: curve.clone(),
        ideal: Ideal::new(&pr, gens)?,
    })
}

/// Either the Chow form of a finite set of planes, or the saturated ideal
/// of a positive-dimensional family of planes.
#[derive(Clone, Debug, PartialEq)]
pub enum ChowResult {
    Form(Polynomial),
    PositiveDimensional(Ideal),
}

#[derive(Clone, Debug)]
pub struct ChowOptions {
    pub gb: GbOptions,
    pub seed: u64,
    /// Random coordinate changes tried when the chart `α = 1` misses planes.
    pub max_charts: usize,
}

impl Default for ChowOptions {
    fn default() -> Self {
        ChowOptions {
            gb: GbOptions::default(),
            seed: 0,
            max_charts: 8,
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng) -> [[i64; 4]; 4] {
    loop {
        let mut a = [[0i64; 4]; 4];
        for row in a.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.gen_range(-3i64..=3);
            }
        }
        let ring = Ring::grevlex(&["t"]);
        let m = PolyMatrix::from_rows(
            &ring,
            a.iter()
                .map(|r| r.iter().map(|&v| Polynomial::from_int(&ring, v)).collect())
                .collect(),
        )
        .unwrap();
        if !m.determinant_cofactor().is_zero() {
            return a;
        }
    }
}

/// `J(A p)` as an ideal in `p`.
fn transform(ideal: &Ideal, a: &[[i64; 4]; 4]) -> Result<Ideal> {
    let pr = plane_ring();
    let images: Vec<Polynomial> = (0..4)
        .map(|i| {
            (0..4).fold(Polynomial::zero(&pr), |acc, j| {
                &acc + &Polynomial::variable(&pr, j).scale(&rat(a[i][j]))
            })
        })
        .collect();
    Ideal::new(
        &pr,
        ideal
            .generators()
            .iter()
            .map(|g| g.compose(&pr, &images))
            .collect(),
    )
}

/// Ring of planes with `α` last, so that for grevlex `in(J + ⟨α⟩) = in(J) + ⟨α⟩`
/// and dividing a Gröbner basis by powers of `α` saturates it.
fn alpha_last_ring() -> Ring {
    Ring::grevlex(&["beta", "gamma", "delta", "alpha"])
}

/// Whether every variable other than `α` has a pure power among the
/// leading monomials, i.e. `J + ⟨α⟩` has no projective zeros.
fn empty_at_infinity(gb: &GroebnerBasis) -> bool {
    let lms = gb.leading_monomials();
    (0..3).all(|v| {
        lms.iter().any(|m| {
            let e = m.exponents();
            e[v] > 0 && e.iter().enumerate().all(|(i, &x)| i == v || x == 0)
        })
    })
}

/// The chart `α = 1` of `J : α^∞`, from a grevlex basis with `α` last.
fn affine_chart(gb: &GroebnerBasis, opts: &GbOptions) -> Result<GroebnerBasis> {
    let ar = Ring::grevlex(&PLANE_NAMES[1..]);
    let gens = gb
        .elements()
        .iter()
        .map(|g| g.specialize(3, &rat(1)).to_ring(&ar))
        .collect::<Result<Vec<_>>>()?;
    groebner_basis_with(&Ideal::new(&ar, gens)?, &MonomialOrder::Grevlex, opts)
}

fn commute(a: &RatMatrix, b: &RatMatrix) -> bool {
    mat_mul(a, b) == mat_mul(b, a)
}

pub fn chow_form(t: &TritangentIdeal) -> Result<ChowResult> {
    chow_form_with(t, &ChowOptions::default())
}

/// `∏ (α + βx + γy + δz)` over the planes of `t`, with multiplicities, as
/// `det(I + x M_β + y M_γ + z M_δ)` for the multiplication matrices of the
/// chart `α = 1`. When some plane has `α = 0` the plane coordinates are
/// changed by a random invertible integer matrix first.
pub fn chow_form_with(t: &TritangentIdeal, opts: &ChowOptions) -> Result<ChowResult> {
    let pr = plane_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let identity = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    for attempt in 0..opts.max_charts.max(1) {
        let a = if attempt == 0 {
            identity
        } else {
            random_invertible(&mut rng)
        };
        let j = transform(t.ideal(), &a)?.to_ring(&alpha_last_ring())?;
        let gb = groebner_basis_with(&j, &MonomialOrder::Grevlex, &opts.gb)?;
        let affine = affine_chart(&gb, &opts.gb)?;
        if empty_at_infinity(&gb) {
            return chow_from_chart(&affine, &a).map(ChowResult::Form);
        }
        if quotient_algebra(&affine).is_err() {
            let irrelevant =
                Ideal::new(&pr, (0..4).map(|k| Polynomial::variable(&pr, k)).collect())?;
            let sat = saturate_by_ideal_with(
                t.ideal(),
                &irrelevant,
                &opts.gb,
                &SaturationStrategy::Exact,
            )?;
            return Ok(ChowResult::PositiveDimensional(sat));
        }
        log::info!("chart {attempt} contains planes at infinity, changing coordinates");
    }
    Err(Error::ChartFailure(opts.max_charts))
}

fn chow_from_chart(affine: &GroebnerBasis, a: &[[i64; 4]; 4]) -> Result<Polynomial> {
    let sr = crate::edgesurface::space_ring();
    let qa = quotient_algebra(affine)?;
    let n = qa.dimension();
    if n == 0 {
        return Ok(Polynomial::one(&sr));
    }
    let mats: Vec<RatMatrix> = PLANE_NAMES[1..]
        .iter()
        .map(|v| qa.variable_matrix(v))
        .collect::<Result<_>>()?;
    for i in 0..3 {
        for k in i + 1..3 {
            if !commute(&mats[i], &mats[k]) {
                return Err(Error::Invalid(
                    "multiplication matrices do not commute".into(),
                ));
            }
        }
    }
    // y = Aᵀ (1, x, y, z)
    let point = [
        Polynomial::one(&sr),
        Polynomial::var(&sr, "x"),
        Polynomial::var(&sr, "y"),
        Polynomial::var(&sr, "z"),
    ];
    let y: Vec<Polynomial> = (0..4)
        .map(|j| {
            (0..4).fold(Polynomial::zero(&sr), |acc, i| {
                &acc + &point[i].scale(&rat(a[i][j]))
            })
        })
        .collect();
    let mut m = PolyMatrix::zeros(&sr, n, n);
    for r in 0..n {
        for c in 0..n {
            let mut e = if r == c {
                y[0].clone()
            } else {
                Polynomial::zero(&sr)
            };
            for (k, mat) in mats.iter().enumerate() {
                if !mat[r][c].is_zero() {
                    e = &e + &y[k + 1].scale(&mat[r][c]);
                }
            }
            m.set(r, c, e);
        }
    }
    Ok(m.determinant()?.canonical())
}
