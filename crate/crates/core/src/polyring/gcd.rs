//! Multivariate gcd over Q by the subresultant PRS on a recursive
//! univariate view, and squarefree parts built on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::monomial::Monomial;
use super::poly::{exact_divide, rat, Polynomial};
use super::ring::Ring;

/// Greatest common divisor, normalized to integer content 1 and positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert!(f.ring() == g.ring(), "gcd across rings");
    if f.is_zero() {
        return g.canonical();
    }
    if g.is_zero() {
        return f.canonical();
    }
    gcd_rec(f, g).canonical()
}

pub fn lcm(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() || g.is_zero() {
        return Polynomial::zero(f.ring());
    }
    let d = gcd(f, g);
    exact_divide(&(f * g), &d)
        .expect("gcd divides the product")
        .canonical()
}

fn gcd_rec(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let ring = f.ring();
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(ring);
    }
    // pull out the common monomial factor first; it is cheap and frequent
    let mono = monomial_content(f).gcd(&monomial_content(g));
    if !mono.is_one() {
        let f1 = divide_monomial(f, &mono);
        let g1 = divide_monomial(g, &mono);
        let rest = gcd_rec(&f1, &g1);
        return rest.mul_term(&mono, &rat(1));
    }
    let sf = f.support();
    let sg = g.support();
    if let Some(&v) = sf.iter().find(|v| !sg.contains(v)) {
        return gcd_rec(&content_wrt(f, v), g);
    }
    if let Some(&v) = sg.iter().find(|v| !sf.contains(v)) {
        return gcd_rec(f, &content_wrt(g, v));
    }
    let v = *sf
        .iter()
        .min_by_key(|&&v| f.degree_in(v).max(g.degree_in(v)))
        .unwrap();
    let cf = content_wrt(f, v);
    let cg = content_wrt(g, v);
    let pf = exact_divide(f, &cf).expect("content divides");
    let pg = exact_divide(g, &cg).expect("content divides");
    let c = gcd_rec(&cf, &cg);
    let h = subresultant_gcd(&pf, &pg, v);
    &c * &h
}

fn monomial_content(f: &Polynomial) -> Monomial {
    let mut it = f.terms().iter().map(|(m, _)| m.clone());
    let first = it.next().unwrap_or_else(|| Monomial::one(f.ring().nvars()));
    it.fold(first, |acc, m| acc.gcd(&m))
}

fn divide_monomial(f: &Polynomial, m: &Monomial) -> Polynomial {
    let terms = f
        .terms()
        .iter()
        .map(|(t, c)| (m.quotient_of(t).expect("monomial content"), c.clone()))
        .collect::<Vec<_>>();
    Polynomial::from_terms(f.ring(), terms)
}

/// gcd of the coefficients of `f` seen as a polynomial in `v`.
pub(crate) fn content_wrt(f: &Polynomial, v: usize) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = f
        .coefficients_in(v)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| c.len());
    let mut acc = Polynomial::zero(f.ring());
    for c in coeffs {
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one(f.ring());
        }
    }
    acc
}

pub(crate) fn primitive_part_wrt(f: &Polynomial, v: usize) -> Polynomial {
    let c = content_wrt(f, v);
    exact_divide(f, &c).expect("content divides")
}

fn var_power(ring: &Ring, v: usize, e: u32) -> Monomial {
    Monomial::variable(ring.nvars(), v, e as u16)
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
pub(crate) fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let ring = a.ring();
    let db = b.degree_in(v);
    let lb = b.leading_coeff_in(v);
    let mut r = a.clone();
    let mut e = (a.degree_in(v) + 1).saturating_sub(db);
    while !r.is_zero() && r.degree_in(v) >= db {
        let lr = r.leading_coeff_in(v);
        let s = r.degree_in(v) - db;
        let shifted = (&lr * b).mul_term(&var_power(ring, v, s), &rat(1));
        r = &(&r * &lb) - &shifted;
        e = e.saturating_sub(1);
    }
    &r * &lb.pow(e)
}

/// Primitive gcd (w.r.t. `v`) of two polynomials primitive w.r.t. `v`.
fn subresultant_gcd(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let ring = f.ring();
    let (mut a, mut b) = if f.degree_in(v) >= g.degree_in(v) {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    let mut gg = Polynomial::one(ring);
    let mut h = Polynomial::one(ring);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part_wrt(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(ring);
        }
        a = b;
        let divisor = &gg * &h.pow(delta);
        b = exact_divide(&r, &divisor).expect("subresultant division is exact");
        gg = a.leading_coeff_in(v);
        if delta > 0 {
            h = exact_divide(&gg.pow(delta), &h.pow(delta - 1)).expect("exact");
        }
    }
}

/// Cheap sufficient test: the restriction to a random line keeps full degree
/// and has no repeated root.
fn restriction_is_squarefree(f: &Polynomial, seed: u64) -> bool {
    let ring = f.ring();
    let n = ring.nvars();
    let t_ring = Ring::grevlex(&["t"]);
    let t = Polynomial::var(&t_ring, "t");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images: Vec<Polynomial> = (0..n)
        .map(|_| {
            let base = rng.gen_range(-9i64..=9);
            let dir = rng.gen_range(1i64..=11) * if rng.gen_bool(0.5) { 1 } else { -1 };
            &Polynomial::from_int(&t_ring, base) + &t.scale(&rat(dir))
        })
        .collect();
    let u = f.compose(&t_ring, &images);
    if u.total_degree() != f.total_degree() {
        return false;
    }
    let du = u.derivative(0);
    gcd(&u, &du).is_constant()
}

pub fn is_squarefree(f: &Polynomial) -> bool {
    squarefree_part(f).total_degree() == f.total_degree()
}

/// Product of the distinct irreducible factors of `f`, normalized.
pub fn squarefree_part(f: &Polynomial) -> Polynomial {
    assert!(!f.is_zero(), "squarefree part of zero");
    let f = f.canonical();
    if f.is_constant() {
        return f;
    }
    if restriction_is_squarefree(&f, 0x5eed) {
        return f;
    }
    let mut g = f.clone();
    for v in f.support() {
        g = gcd(&g, &f.derivative(v));
        if g.is_constant() {
            return f;
        }
    }
    exact_divide(&f, &g).expect("gcd divides").canonical()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::grevlex(&["x", "y", "z"])
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(&ring(), s).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        assert_eq!(gcd(&p("x^2*y"), &p("x*y^2")), p("x*y"));
        assert_eq!(gcd(&p("0"), &p("0")), p("0"));
        assert_eq!(gcd(&p("0"), &p("-2*x")), p("x"));
    }

    #[test]
    fn gcd_of_products() {
        let h = p("x*y - z^2 + 3");
        let f = p("x + y + 1");
        let g = p("x^2 - y*z");
        assert_eq!(gcd(&(&f * &h), &(&g * &h)), h.canonical());
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn gcd_with_shared_power() {
        let h = p("x - y");
        let f = &h.pow(3) * &p("x + 2");
        let g = &h.pow(2) * &p("y + z");
        assert_eq!(gcd(&f, &g), h.pow(2).canonical());
    }

    #[test]
    fn squarefree_examples() {
        let r = Ring::grevlex(&["x"]);
        let f = Polynomial::parse(&r, "(x-1)^3*(x+1)^3").unwrap();
        assert_eq!(squarefree_part(&f), Polynomial::parse(&r, "x^2-1").unwrap());
        let g = p("x^2 + y*z + 1");
        assert_eq!(squarefree_part(&g), g);
        let h = p("(z-1)*(z+1)*(x-1)^3*(x+1)^3");
        assert_eq!(
            squarefree_part(&h),
            p("(z-1)*(z+1)*(x-1)*(x+1)").canonical()
        );
    }

    #[test]
    fn lcm_of_principal() {
        assert_eq!(lcm(&p("x*y"), &p("y*z")), p("x*y*z"));
    }
}
