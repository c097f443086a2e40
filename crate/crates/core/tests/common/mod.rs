#![allow(dead_code)]

use std::path::PathBuf;

use curvehull::curve::{parse_curve_spec, to_projective, CurveSpec, ProjectiveCurve};
use curvehull::polyring::{parse_polynomial, parse_polynomial_list, Polynomial, Ring};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

pub fn poly(ring: &Ring, name: &str) -> Polynomial {
    parse_polynomial(ring, read(name).trim()).unwrap()
}

pub fn polys(ring: &Ring, name: &str) -> Vec<Polynomial> {
    parse_polynomial_list(ring, &read(name)).unwrap()
}

pub fn spec(name: &str) -> CurveSpec {
    parse_curve_spec(&read(name)).unwrap()
}

pub fn curve(name: &str) -> ProjectiveCurve {
    match spec(name) {
        CurveSpec::Trigonometric(t) => to_projective(&t).unwrap(),
        CurveSpec::BinaryForms(c) => c,
        CurveSpec::QuadricPencil(_) => panic!("{name} is a pencil"),
    }
}

/// A trigonometric space curve given by cosine and sine coefficients, with
/// its derivative, evaluated directly in floating point.
pub struct TrigCurve {
    pub cos: [Vec<f64>; 3],
    pub sin: [Vec<f64>; 3],
}

impl TrigCurve {
    pub fn point(&self, t: f64) -> [f64; 3] {
        std::array::from_fn(|i| {
            let c: f64 = self.cos[i]
                .iter()
                .enumerate()
                .map(|(j, a)| a * ((j + 1) as f64 * t).cos())
                .sum();
            let s: f64 = self.sin[i]
                .iter()
                .enumerate()
                .map(|(j, a)| a * ((j + 1) as f64 * t).sin())
                .sum();
            c + s
        })
    }

    pub fn tangent(&self, t: f64) -> [f64; 3] {
        std::array::from_fn(|i| {
            let c: f64 = self.cos[i]
                .iter()
                .enumerate()
                .map(|(j, a)| -a * (j + 1) as f64 * ((j + 1) as f64 * t).sin())
                .sum();
            let s: f64 = self.sin[i]
                .iter()
                .enumerate()
                .map(|(j, a)| a * (j + 1) as f64 * ((j + 1) as f64 * t).cos())
                .sum();
            c + s
        })
    }

    /// `det(γ(t) - γ(s), γ'(s), γ'(t))`: zero when the secant is stationary.
    pub fn stationarity(&self, s: f64, t: f64) -> f64 {
        let p = self.point(s);
        let q = self.point(t);
        let d = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
        det3(d, self.tangent(s), self.tangent(t))
    }

    /// Points on real stationary bisecant lines, found by bisection in `t`
    /// for a grid of `s`.
    pub fn bisecant_points(&self, samples: usize) -> Vec<[f64; 3]> {
        let tau = std::f64::consts::TAU;
        let mut out = Vec::new();
        for i in 0..samples {
            let s = tau * (i as f64 + 0.37) / samples as f64;
            let n = 720;
            let ts: Vec<f64> = (0..=n)
                .map(|k| s + 0.05 + (tau - 0.1) * k as f64 / n as f64)
                .collect();
            for w in ts.windows(2) {
                let (mut lo, mut hi) = (w[0], w[1]);
                let (mut flo, fhi) = (self.stationarity(s, lo), self.stationarity(s, hi));
                if flo * fhi >= 0.0 {
                    continue;
                }
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let fm = self.stationarity(s, mid);
                    if fm * flo <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                let t = 0.5 * (lo + hi);
                let p = self.point(s);
                let q = self.point(t);
                for lambda in [-0.7, 0.3, 1.6] {
                    out.push(std::array::from_fn(|k| p[k] + lambda * (q[k] - p[k])));
                }
            }
        }
        out
    }
}

fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// `|f(p)| / Σ|terms of f at p|`, a scale-free residual.
pub fn relative_residual(f: &Polynomial, p: &[f64; 3]) -> f64 {
    f.eval_f64(p).abs() / f.eval_abs_f64(p).max(f64::MIN_POSITIVE)
}

pub fn quartic_trig() -> TrigCurve {
    TrigCurve {
        cos: [vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]],
        sin: [vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
    }
}

pub fn running_trig() -> TrigCurve {
    TrigCurve {
        cos: [
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ],
        sin: [
            vec![0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ],
    }
}
