//! Factorization over Q for univariate polynomials and for homogeneous forms
//! in at most three variables.

mod zassenhaus;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{exact_divide, gcd, Monomial, Polynomial, Rational, Ring};
use zassenhaus::ZPoly;

pub const DEFAULT_UNIVARIATE_CAP: u32 = 128;
pub const DEFAULT_HOMOGENEOUS_CAP: u32 = 12;

/// `unit * prod(factor^multiplicity)`. Factors are primitive, have positive
/// canonical leading coefficient and are pairwise non-associate.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self, ring: &Ring) -> Polynomial {
        self.factors.iter().fold(
            Polynomial::constant(ring, self.unit.clone()),
            |acc, (f, m)| &acc * &f.pow(*m),
        )
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    fn finish(f: &Polynomial, mut factors: Vec<(Polynomial, u32)>) -> Factorization {
        factors.sort_by(|a, b| {
            a.0.total_degree()
                .cmp(&b.0.total_degree())
                .then_with(|| a.0.to_text().cmp(&b.0.to_text()))
        });
        let mut lead = Rational::one();
        for (g, m) in &factors {
            lead *= num_traits::pow(g.canonical_leading().unwrap().1.clone(), *m as usize);
        }
        let unit = f.canonical_leading().unwrap().1.clone() / lead;
        Factorization { unit, factors }
    }
}

fn to_zpoly(f: &Polynomial, var: usize) -> ZPoly {
    let f = f.canonical();
    let n = f.degree_in(var) as usize;
    let mut v = vec![BigInt::zero(); n + 1];
    for (m, c) in f.terms() {
        v[m.exponents()[var] as usize] = c.numer().clone();
    }
    v
}

fn from_zpoly(ring: &Ring, var: usize, v: &[BigInt]) -> Polynomial {
    let terms = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            (
                Monomial::variable(ring.nvars(), var, i as u16),
                Rational::from_integer(c.clone()),
            )
        });
    Polynomial::from_terms(ring, terms.collect::<Vec<_>>())
}

/// Yun's squarefree decomposition of a univariate polynomial:
/// `f = c * prod(a_i^i)` with the `a_i` squarefree and coprime.
fn yun(f: &Polynomial, var: usize) -> Vec<(Polynomial, u32)> {
    let df = f.derivative(var);
    let b = gcd(f, &df);
    let mut c = exact_divide(f, &b).expect("gcd divides");
    let mut d = &exact_divide(&df, &b).expect("gcd divides") - &c.derivative(var);
    let mut out = Vec::new();
    let mut i = 1;
    while !c.is_constant() {
        let a = gcd(&c, &d);
        c = exact_divide(&c, &a).expect("gcd divides");
        d = &exact_divide(&d, &a).expect("gcd divides") - &c.derivative(var);
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

pub fn factor_univariate(f: &Polynomial) -> Result<Factorization> {
    factor_univariate_with_cap(f, DEFAULT_UNIVARIATE_CAP)
}

pub fn factor_univariate_with_cap(f: &Polynomial, cap: u32) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let support = f.support();
    if support.len() > 1 {
        return Err(Error::Invalid(format!(
            "expected a univariate polynomial, found {} variables",
            support.len()
        )));
    }
    if f.total_degree() > cap {
        return Err(Error::DegreeCapExceeded {
            degree: f.total_degree(),
            cap,
        });
    }
    let Some(&var) = support.first() else {
        return Ok(Factorization {
            unit: f.as_constant().unwrap(),
            factors: Vec::new(),
        });
    };
    let ring = f.ring();
    let mut factors = Vec::new();
    for (a, mult) in yun(f, var) {
        let mut v = to_zpoly(&a, var);
        let zeros = v.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            factors.push((Polynomial::variable(ring, var), mult));
            v.drain(..zeros);
        }
        if v.len() > 1 {
            for g in zassenhaus::factor_squarefree(&v) {
                factors.push((from_zpoly(ring, var, &g).canonical(), mult));
            }
        }
    }
    Ok(Factorization::finish(f, factors))
}

fn homogenize(f: &Polynomial, var: usize, degree: u32) -> Polynomial {
    let terms = f.terms().iter().map(|(m, c)| {
        let mut e = m.clone();
        e.exponents_mut()[var] += (degree - m.degree()) as u16;
        (e, c.clone())
    });
    Polynomial::from_terms(f.ring(), terms.collect::<Vec<_>>())
}

/// Irreducible factors of a polynomial in the two variables `x`, `y` by
/// Kronecker substitution `y -> t^B` and recombination of the univariate
/// factors with exact trial division.
fn factor_bivariate(h: &Polynomial, x: usize, y: usize) -> Result<Vec<(Polynomial, u32)>> {
    let ring = h.ring();
    let b = h.degree_in(x) + 1;
    let t_ring = Ring::grevlex(&["t"]);
    let image = |p: &Polynomial| -> Polynomial {
        let terms = p.terms().iter().map(|(m, c)| {
            let e = m.exponents()[x] as u32 + b * m.exponents()[y] as u32;
            (Monomial::from_exponents(&[e as u16]), c.clone())
        });
        Polynomial::from_terms(&t_ring, terms.collect::<Vec<_>>())
    };
    let preimage = |u: &Polynomial| -> Polynomial {
        let terms = u.terms().iter().map(|(m, c)| {
            let e = m.exponents()[0] as u32;
            let mut mono = Monomial::one(ring.nvars());
            mono.exponents_mut()[x] = (e % b) as u16;
            mono.exponents_mut()[y] = (e / b) as u16;
            (mono, c.clone())
        });
        Polynomial::from_terms(ring, terms.collect::<Vec<_>>())
    };
    let uf = factor_univariate_with_cap(&image(h), u32::MAX)?;
    let mut pool: Vec<Polynomial> = Vec::new();
    for (g, m) in uf.factors {
        for _ in 0..m {
            pool.push(g.clone());
        }
    }
    let mut rest = h.canonical();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while s <= pool.len() && !rest.is_constant() {
        for subset in subsets(pool.len(), s) {
            let prod = subset
                .iter()
                .fold(Polynomial::one(&t_ring), |acc, &i| &acc * &pool[i]);
            let g = preimage(&prod).canonical();
            if g.is_constant()
                || g.degree_in(x) > rest.degree_in(x)
                || g.degree_in(y) > rest.degree_in(y)
                || image(&g).canonical() != prod.canonical()
            {
                continue;
            }
            let Ok(mut q) = exact_divide(&rest, &g) else {
                continue;
            };
            let mut mult = 1;
            while let Ok(q2) = exact_divide(&q, &g) {
                q = q2;
                mult += 1;
            }
            rest = q;
            // drop the used univariate factors, once per multiplicity
            let img = image(&g).canonical();
            for _ in 0..mult {
                let mut left = img.clone();
                let mut k = 0;
                while k < pool.len() && !left.is_constant() {
                    if let Ok(q) = exact_divide(&left, &pool[k]) {
                        left = q;
                        pool.remove(k);
                    } else {
                        k += 1;
                    }
                }
            }
            out.push((g, mult));
            continue 'outer;
        }
        s += 1;
    }
    if !rest.is_constant() {
        out.push((rest.canonical(), 1));
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factorization of a form in at most three variables.
pub fn factor_homogeneous(f: &Polynomial, degree_cap: u32) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let support = f.support();
    if support.len() > 3 {
        return Err(Error::Invalid(format!(
            "homogeneous factorization supports at most 3 variables, found {}",
            support.len()
        )));
    }
    if f.total_degree() > degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree: f.total_degree(),
            cap: degree_cap,
        });
    }
    let ring = f.ring();
    let mut factors = Vec::new();
    // monomial content
    let mut g = f.canonical();
    for &v in &support {
        let k = g
            .terms()
            .iter()
            .map(|(m, _)| m.exponents()[v])
            .min()
            .unwrap_or(0);
        if k > 0 {
            factors.push((Polynomial::variable(ring, v), k as u32));
            let mono = Monomial::variable(ring.nvars(), v, k);
            g = exact_divide(&g, &Polynomial::term(ring, mono, Rational::one()))?;
        }
    }
    let rest_support = g.support();
    if let Some(&z) = rest_support.last() {
        let h = g.specialize(z, &Rational::one());
        let parts = match rest_support.len() {
            2 => factor_univariate_with_cap(&h, u32::MAX)?.factors,
            3 => factor_bivariate(&h, rest_support[0], rest_support[1])?,
            _ => unreachable!("a form without monomial content involves at least two variables"),
        };
        for (p, m) in parts {
            let d = p.total_degree();
            factors.push((homogenize(&p, z, d).canonical(), m));
        }
    }
    Ok(Factorization::finish(f, factors))
}
