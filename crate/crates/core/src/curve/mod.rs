//! Curve input: trigonometric space curves, their binary-form
//! parametrizations over P^1, cusp detection and quadric pencils.

mod spec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polyring::{
    gcd, rat, squarefree_part, Monomial, PolyMatrix, Polynomial, Rational, Ring,
};

pub use spec::{parse_curve_spec, CurveSpec};

/// One coordinate `γ + Σ α_j cos(jθ) + Σ β_j sin(jθ)`, j = 1..m.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigCoordinate {
    pub constant: Rational,
    pub cos: Vec<Rational>,
    pub sin: Vec<Rational>,
}

impl TrigCoordinate {
    pub fn new(constant: Rational, cos: Vec<Rational>, sin: Vec<Rational>) -> Self {
        TrigCoordinate { constant, cos, sin }
    }

    /// Coordinate with integer coefficients; handy for literals.
    pub fn from_ints(constant: i64, cos: &[i64], sin: &[i64]) -> Self {
        TrigCoordinate {
            constant: rat(constant),
            cos: cos.iter().map(|&c| rat(c)).collect(),
            sin: sin.iter().map(|&c| rat(c)).collect(),
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        let mut v = f(&self.constant);
        for (j, a) in self.cos.iter().enumerate() {
            v += f(a) * ((j + 1) as f64 * theta).cos();
        }
        for (j, b) in self.sin.iter().enumerate() {
            v += f(b) * ((j + 1) as f64 * theta).sin();
        }
        v
    }
}

/// A space curve `θ ↦ (x(θ), y(θ), z(θ))` given by trigonometric polynomials
/// of degree at most `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigCurveSpec {
    m: usize,
    coords: [TrigCoordinate; 3],
}

impl TrigCurveSpec {
    pub fn new(m: usize, coords: [TrigCoordinate; 3]) -> Result<Self> {
        if m == 0 {
            return Err(Error::DegenerateSpec(
                "trigonometric degree must be positive".into(),
            ));
        }
        for (k, c) in coords.iter().enumerate() {
            if c.cos.len() != m || c.sin.len() != m {
                return Err(Error::Invalid(format!(
                    "coordinate {} needs exactly {m} cosine and {m} sine coefficients",
                    k + 1
                )));
            }
        }
        let top = coords
            .iter()
            .any(|c| !c.cos[m - 1].is_zero() || !c.sin[m - 1].is_zero());
        if !top {
            return Err(Error::DegenerateSpec(format!(
                "no coordinate has a nonzero coefficient at frequency {m}"
            )));
        }
        Ok(TrigCurveSpec { m, coords })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Nominal degree `2m`.
    pub fn degree(&self) -> u32 {
        2 * self.m as u32
    }

    pub fn coordinates(&self) -> &[TrigCoordinate; 3] {
        &self.coords
    }

    pub fn eval(&self, theta: f64) -> [f64; 3] {
        [
            self.coords[0].eval(theta),
            self.coords[1].eval(theta),
            self.coords[2].eval(theta),
        ]
    }
}

/// The ring `Q[x0, x1]` of binary forms.
pub fn binary_ring() -> Ring {
    Ring::grevlex(&["x0", "x1"])
}

/// A rational curve `(F0 : F1 : F2 : F3)` in P^3 by binary forms of equal
/// degree without common factor.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveCurve {
    forms: [Polynomial; 4],
    degree: u32,
}

impl ProjectiveCurve {
    /// Validates the forms; they must be homogeneous of one degree and
    /// coprime. Forms may live in any two-variable ring named `x0, x1`.
    pub fn new(forms: [Polynomial; 4]) -> Result<Self> {
        let ring = binary_ring();
        let forms = [
            forms[0].to_ring(&ring)?,
            forms[1].to_ring(&ring)?,
            forms[2].to_ring(&ring)?,
            forms[3].to_ring(&ring)?,
        ];
        let mut degree = None;
        for f in &forms {
            if f.is_zero() {
                continue;
            }
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            match degree {
                None => degree = Some(f.total_degree()),
                Some(d) if d != f.total_degree() => {
                    return Err(Error::DegreeMismatch {
                        expected: d as usize,
                        found: f.total_degree() as usize,
                    })
                }
                _ => {}
            }
        }
        let Some(degree) = degree else {
            return Err(Error::DegenerateSpec("all forms vanish".into()));
        };
        if !common_factor(&forms).is_constant() {
            return Err(Error::Invalid(
                "the four forms share a common factor".into(),
            ));
        }
        Ok(ProjectiveCurve { forms, degree })
    }

    /// Divides the forms by their gcd first.
    pub fn from_forms_reduced(forms: [Polynomial; 4]) -> Result<Self> {
        let g = common_factor(&forms);
        let reduced = forms.map(|f| {
            if f.is_zero() {
                f
            } else {
                crate::polyring::exact_divide(&f, &g).expect("gcd divides")
            }
        });
        Self::new(reduced)
    }

    pub fn parse(texts: [&str; 4]) -> Result<Self> {
        let ring = binary_ring();
        Self::new([
            Polynomial::parse(&ring, texts[0])?,
            Polynomial::parse(&ring, texts[1])?,
            Polynomial::parse(&ring, texts[2])?,
            Polynomial::parse(&ring, texts[3])?,
        ])
    }

    pub fn forms(&self) -> &[Polynomial; 4] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ring(&self) -> &Ring {
        self.forms[0].ring()
    }

    /// Affine point `(F1/F0, F2/F0, F3/F0)` at a parameter value, or `None`
    /// when it lies on the plane at infinity.
    pub fn affine_point(&self, x0: f64, x1: f64) -> Option<[f64; 3]> {
        let v: Vec<f64> = self.forms.iter().map(|f| f.eval_f64(&[x0, x1])).collect();
        if v[0].abs() < 1e-300 {
            return None;
        }
        Some([v[1] / v[0], v[2] / v[0], v[3] / v[0]])
    }
}

fn common_factor(forms: &[Polynomial; 4]) -> Polynomial {
    forms
        .iter()
        .fold(Polynomial::zero(forms[0].ring()), |acc, f| gcd(&acc, f))
}

/// `Re` and `Im` of `(x0 + i x1)^k`.
fn complex_power(ring: &Ring, k: u32) -> (Polynomial, Polynomial) {
    let mut re = Polynomial::one(ring);
    let mut im = Polynomial::zero(ring);
    let x0 = Polynomial::var(ring, "x0");
    let x1 = Polynomial::var(ring, "x1");
    for _ in 0..k {
        let r = &(&re * &x0) - &(&im * &x1);
        let i = &(&re * &x1) + &(&im * &x0);
        re = r;
        im = i;
    }
    (re, im)
}

/// Rational parametrization of the circle, `cos θ = (x0²-x1²)/(x0²+x1²)`,
/// `sin θ = 2x0x1/(x0²+x1²)`, so that `cos(jθ)(x0²+x1²)^j` and
/// `sin(jθ)(x0²+x1²)^j` are the real and imaginary parts of `(x0+ix1)^(2j)`.
/// Clearing the denominator `(x0²+x1²)^m` and the common gcd gives the forms.
pub fn to_projective(spec: &TrigCurveSpec) -> Result<ProjectiveCurve> {
    let ring = binary_ring();
    let m = spec.m as u32;
    let q = Polynomial::parse(&ring, "x0^2+x1^2").unwrap();
    let q_pow: Vec<Polynomial> = (0..=m).map(|k| q.pow(k)).collect();
    let parts: Vec<(Polynomial, Polynomial)> =
        (0..=m).map(|j| complex_power(&ring, 2 * j)).collect();
    let f0 = q_pow[m as usize].clone();
    let mut forms = vec![f0.clone()];
    for c in spec.coords.iter() {
        let mut f = f0.scale(&c.constant);
        for j in 1..=m as usize {
            let w = &q_pow[m as usize - j];
            if !c.cos[j - 1].is_zero() {
                f = &f + &(&parts[j].0 * w).scale(&c.cos[j - 1]);
            }
            if !c.sin[j - 1].is_zero() {
                f = &f + &(&parts[j].1 * w).scale(&c.sin[j - 1]);
            }
        }
        forms.push(f);
    }
    // all coordinates constant: the "curve" is a point
    let point = forms[1..].iter().all(|f| {
        let lead = f0.leading_coeff().unwrap();
        let lambda = f.coefficient(f0.leading_monomial().unwrap()) / lead;
        f == &f0.scale(&lambda)
    });
    if point {
        return Err(Error::DegenerateSpec("all coordinates are constant".into()));
    }
    let forms: [Polynomial; 4] = forms.try_into().unwrap();
    ProjectiveCurve::from_forms_reduced(forms)
}

/// gcd of the 2x2 minors of the Jacobian `(∂F_j/∂x_i)`; its roots are the
/// parameters where the parametrization is not an immersion.
pub fn cusp_form(c: &ProjectiveCurve) -> Polynomial {
    let d0: Vec<Polynomial> = c.forms.iter().map(|f| f.derivative(0)).collect();
    let d1: Vec<Polynomial> = c.forms.iter().map(|f| f.derivative(1)).collect();
    let mut g = Polynomial::zero(c.ring());
    for j in 0..4 {
        for k in j + 1..4 {
            let minor = &(&d0[j] * &d1[k]) - &(&d1[j] * &d0[k]);
            g = gcd(&g, &minor);
        }
    }
    g
}

/// Number of distinct cusp parameters over C.
pub fn cusp_count(c: &ProjectiveCurve) -> u32 {
    let g = cusp_form(c);
    if g.is_zero() || g.is_constant() {
        0
    } else {
        squarefree_part(&g).total_degree()
    }
}

/// A pencil of quadrics `Q1 + t Q2`, each a symmetric 4x4 matrix acting on
/// `(1, x, y, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricPencilSpec {
    q1: [[Rational; 4]; 4],
    q2: [[Rational; 4]; 4],
}

impl QuadricPencilSpec {
    pub fn new(q1: [[Rational; 4]; 4], q2: [[Rational; 4]; 4]) -> Result<Self> {
        for q in [&q1, &q2] {
            for i in 0..4 {
                for j in 0..i {
                    if q[i][j] != q[j][i] {
                        return Err(Error::NotSymmetric);
                    }
                }
            }
        }
        let spec = QuadricPencilSpec { q1, q2 };
        if spec.characteristic().is_zero() {
            return Err(Error::DegeneratePencil(0));
        }
        Ok(spec)
    }

    pub fn diagonal(d1: [i64; 4], d2: [i64; 4]) -> Result<Self> {
        let diag = |d: [i64; 4]| {
            let mut m: [[Rational; 4]; 4] = Default::default();
            for i in 0..4 {
                m[i][i] = rat(d[i]);
            }
            m
        };
        Self::new(diag(d1), diag(d2))
    }

    pub fn q1(&self) -> &[[Rational; 4]; 4] {
        &self.q1
    }

    pub fn q2(&self) -> &[[Rational; 4]; 4] {
        &self.q2
    }

    /// `det(Q1 + t Q2)` in `Q[t]`.
    pub fn characteristic(&self) -> Polynomial {
        let ring = Ring::grevlex(&["t"]);
        let t = Polynomial::var(&ring, "t");
        let rows = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        &Polynomial::constant(&ring, self.q1[i][j].clone())
                            + &t.scale(&self.q2[i][j])
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(&ring, rows)
            .unwrap()
            .determinant()
            .unwrap()
    }

    /// The quadratic form of a symmetric matrix on `(1, x, y, z)`, in `ring`
    /// (which must contain `x, y, z`).
    pub fn quadric(q: &[[Rational; 4]; 4], ring: &Ring) -> Result<Polynomial> {
        let mut v = vec![Polynomial::one(ring)];
        for name in ["x", "y", "z"] {
            if ring.var_index(name).is_none() {
                return Err(Error::RingMismatch(format!("missing variable `{name}`")));
            }
            v.push(Polynomial::var(ring, name));
        }
        let mut out = Polynomial::zero(ring);
        for i in 0..4 {
            for j in 0..4 {
                if !q[i][j].is_zero() {
                    out = &out + &(&v[i] * &v[j]).scale(&q[i][j]);
                }
            }
        }
        Ok(out)
    }
}

/// Sign of a binary form's values on the real circle, used to check that
/// the denominator form never vanishes: true if `f` is a positive multiple of
/// a form without real zeros.
pub fn is_positive_definite_binary(f: &Polynomial) -> bool {
    if f.is_zero() {
        return false;
    }
    // a real root (x0:x1) shows up as a real root of f(t,1) or as x1 | f
    let ring = f.ring();
    let x1_divides = f.terms().iter().all(|(m, _)| m.exponents()[1] > 0);
    if x1_divides {
        return false;
    }
    let g = f.specialize(1, &Rational::one());
    let sf = squarefree_part(&g);
    let sturm = sturm_real_root_count(&sf);
    let lead = f.coefficient(&Monomial::variable(
        ring.nvars(),
        0,
        f.total_degree() as u16,
    ));
    sturm == 0 && lead.is_positive()
}

/// Number of distinct real roots of a squarefree univariate polynomial in
/// variable 0, by Sturm's theorem.
fn sturm_real_root_count(f: &Polynomial) -> usize {
    if f.total_degree() == 0 {
        return 0;
    }
    let mut seq = vec![f.clone(), f.derivative(0)];
    loop {
        let n = seq.len();
        let r = univariate_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    let sign_changes = |at_pos_inf: bool| {
        let signs: Vec<i32> = seq
            .iter()
            .map(|p| {
                let d = p.total_degree();
                let lc = p.leading_coeff().unwrap();
                let s = if lc.is_positive() { 1 } else { -1 };
                if !at_pos_inf && d % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    sign_changes(false) - sign_changes(true)
}

fn univariate_rem(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut r = a.clone();
    let (lm_b, lc_b) = b.leading_term().unwrap().clone();
    while let Some((m, c)) = r.leading_term().cloned() {
        let Some(q) = lm_b.quotient_of(&m) else {
            break;
        };
        r = &r - &b.mul_term(&q, &(c / &lc_b));
    }
    r
}
