//! Enumerative invariants of rational and higher-genus space curves: the
//! De Jonquières count, closed formulas for the edge surface and its
//! relatives, and intersection numbers on the symmetric square of the curve.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Degree, geometric genus and numbers of ordinary nodes and cusps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub d: i64,
    pub g: i64,
    pub n: i64,
    pub k: i64,
}

impl CurveInvariants {
    pub fn new(d: i64, g: i64, n: i64, k: i64) -> Result<Self> {
        if d <= 3 {
            return Err(Error::InvalidProfile(format!("degree {d} must exceed 3")));
        }
        if g < 0 || n < 0 || k < 0 {
            return Err(Error::InvalidProfile(
                "genus, nodes and cusps must be nonnegative".into(),
            ));
        }
        Ok(CurveInvariants { d, g, n, k })
    }

    pub fn smooth(d: i64, g: i64) -> Result<Self> {
        Self::new(d, g, 0, 0)
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Coefficient of `t^m` in `(1 + Σ b_i t_i)^e`.
fn multinomial_coefficient(b: &[i64], m: &[u64], e: u64) -> BigInt {
    let total: u64 = m.iter().sum();
    if total > e {
        return BigInt::zero();
    }
    let mut c = factorial(e) / factorial(e - total);
    for (&bi, &mi) in b.iter().zip(m) {
        c = c / factorial(mi) * BigInt::from(bi).pow(mi as u32);
    }
    c
}

/// All exponent vectors `0 <= m <= n` componentwise.
fn boxes(n: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &ni in n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=ni).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// The coefficient of `t_1^{n_1} ... t_k^{n_k}` in
/// `(1 + Σ a_i² t_i)^g (1 + Σ a_i t_i)^{d-s-g}`: the number of divisors on a
/// genus `g` curve of degree `d` in a linear series of dimension `s` with
/// `n_i` points of multiplicity `a_i`.
pub fn dejonquieres(a: &[i64], n: &[i64], d: i64, g: i64, s: i64) -> Result<BigInt> {
    if a.len() != n.len() || a.is_empty() {
        return Err(Error::InvalidProfile(
            "a and n must be nonempty and of equal length".into(),
        ));
    }
    if a.iter().any(|&x| x <= 0) || n.iter().any(|&x| x < 0) || g < 0 {
        return Err(Error::InvalidProfile(
            "entries of a must be positive, n and g nonnegative".into(),
        ));
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != a.len() {
        return Err(Error::InvalidProfile(
            "entries of a must be distinct".into(),
        ));
    }
    let weight: i64 = a.iter().zip(n).map(|(x, y)| x * y).sum();
    if weight != d {
        return Err(Error::InvalidProfile(format!(
            "Σ a_i n_i = {weight} differs from d = {d}"
        )));
    }
    let points: i64 = n.iter().sum();
    if s != d - points {
        return Err(Error::InvalidProfile(format!(
            "s = {s} differs from d - Σ n_i = {}",
            d - points
        )));
    }
    let e = d - s - g;
    if e < 0 {
        return Err(Error::InvalidProfile(format!(
            "d - s - g = {e} is negative"
        )));
    }
    let squares: Vec<i64> = a.iter().map(|x| x * x).collect();
    let n: Vec<u64> = n.iter().map(|&x| x as u64).collect();
    let mut total = BigInt::zero();
    for m in boxes(&n) {
        let rest: Vec<u64> = n.iter().zip(&m).map(|(x, y)| x - y).collect();
        total += multinomial_coefficient(&squares, &m, g as u64)
            * multinomial_coefficient(a, &rest, e as u64);
    }
    Ok(total)
}

/// A class `cp C_p + delta Δ` in the Néron–Severi group of the symmetric
/// square of a curve, where `C_p` is the curve of pairs containing a fixed
/// point and `Δ` the half diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NSClass {
    pub cp: i64,
    pub delta: i64,
}

impl NSClass {
    pub const CP: NSClass = NSClass { cp: 1, delta: 0 };
    pub const DELTA: NSClass = NSClass { cp: 0, delta: 1 };

    /// Pairs whose secant meets a fixed line: `d C_p - Δ`.
    pub fn secants_meeting_line(d: i64, g: i64) -> NSClass {
        NSClass { cp: d, delta: -1 }.collapse(g)
    }

    /// The stationary bisecant curve: `2(d+g-1) C_p - 4Δ`.
    pub fn stationary_bisecants(d: i64, g: i64) -> NSClass {
        NSClass {
            cp: 2 * (d + g - 1),
            delta: -4,
        }
        .collapse(g)
    }

    /// For `g = 0` the symmetric square is the plane and `C_p = Δ`.
    pub fn collapse(self, g: i64) -> NSClass {
        if g == 0 {
            NSClass {
                cp: self.cp + self.delta,
                delta: 0,
            }
        } else {
            self
        }
    }
}

/// Intersection pairing with `C_p² = C_p·Δ = 1` and `Δ² = 1 - g`.
pub fn ns_intersect(u: NSClass, v: NSClass, g: i64) -> i64 {
    u.cp * v.cp + u.cp * v.delta + u.delta * v.cp + u.delta * v.delta * (1 - g)
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub edge_degree: i64,
    pub tritangent_count: i64,
    pub dual_degree: i64,
    pub stalls: i64,
    pub multiplicity_along_curve: i64,
    pub cuspidal_edge_degree: i64,
    pub double_curve_degree: i64,
    pub bisecant_curve_genus: i64,
    /// Only reported for curves with cusps.
    pub cusp_cone_degree: Option<i64>,
}

pub fn report(ci: &CurveInvariants) -> Result<DegreeReport> {
    let CurveInvariants { d, g, n, k } = *ci;
    if d <= 3 {
        return Err(Error::InvalidProfile(format!("degree {d} must exceed 3")));
    }
    let double_curve_degree = 2 * d.pow(4) + 4 * d.pow(3) * g + 2 * d * d * g * g
        - 18 * d.pow(3)
        - 14 * d * g * g
        - 32 * d * d * g
        + 46 * d * d
        + 52 * d * g
        + 8 * g * g
        - 6 * d
        + 64 * g
        - 72;
    Ok(DegreeReport {
        edge_degree: 2 * (d - 3) * (d + g - 1) - 2 * n - 2 * k,
        tritangent_count: 8 * binomial(d + g - 1, 3) - 8 * (d + g - 4) * (d + 2 * g - 2) + 8 * g
            - 8,
        dual_degree: 2 * (d + g - 1),
        stalls: 4 * (d + 3 * g - 3),
        multiplicity_along_curve: 2 * (d + g - 3),
        cuspidal_edge_degree: 6 * ((d + g - 3).pow(2) - 4 * g),
        double_curve_degree,
        bisecant_curve_genus: 2 * (d + g - 2) * (d + 2 * g - 4) + d - 7 * g - 4,
        cusp_cone_degree: (k > 0).then_some(d - 2),
    })
}
