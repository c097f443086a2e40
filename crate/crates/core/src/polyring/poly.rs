use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Exponent, Monomial};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Exact rational number; always reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Sparse polynomial with rational coefficients. Terms are kept sorted in
/// descending order under the ring's monomial order and never hold zeros.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, rat(c))
    }

    pub fn variable(ring: &Ring, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::variable(ring.nvars(), index, 1), Rational::one())],
        }
    }

    /// Variable by name. Panics on unknown names; meant for literals.
    pub fn var(ring: &Ring, name: &str) -> Self {
        let i = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("unknown variable `{name}`"));
        Self::variable(ring, i)
    }

    pub fn term(ring: &Ring, mono: Monomial, coeff: Rational) -> Self {
        debug_assert_eq!(mono.nvars(), ring.nvars());
        if coeff.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(mono, coeff)],
        }
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops
    /// zeros and sorts.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, map)
    }

    fn from_map(ring: &Ring, map: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller: terms sorted descending, distinct, nonzero.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.compare(&w[0].0, &w[1].0).is_gt()));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    /// Constant term value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m == mono)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponents()[var] as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[var] > 0)
    }

    /// Indices of the variables occurring in the polynomial.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&v| self.involves(v))
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn is_homogeneous_in(&self, vars: &[usize]) -> bool {
        let deg = |m: &Monomial| -> u32 { vars.iter().map(|&v| m.exponents()[v] as u32).sum() };
        let mut it = self.terms.iter().map(|(m, _)| deg(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // multiplying by a monomial preserves any monomial order
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        self.check_ring(other);
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ring.compare(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let prod = c1 * c2;
                map.entry(m1.mul(m2))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        Polynomial::from_map(&self.ring, map)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.nvars());
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e.exponents_mut()[j] = x,
                    None => {
                        return Err(Error::RingMismatch(format!(
                            "variable `{}` not present in target ring",
                            self.ring.vars()[i]
                        )))
                    }
                }
            }
            terms.push((e, c.clone()));
        }
        let mut p = Polynomial {
            ring: target.clone(),
            terms,
        };
        p.terms.sort_by(|a, b| target.compare(&b.0, &a.0));
        Ok(p)
    }

    /// Substitutes `images[i]` for the i-th variable; all images must share
    /// the target ring.
    pub fn compose(&self, target: &Ring, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * &cache[i][1];
                    cache[i].push(next);
                }
                prod = &prod * &cache[i][e];
            }
            for (pm, pc) in prod.terms {
                *acc.entry(pm).or_insert_with(Rational::zero) += pc;
            }
        }
        Polynomial::from_map(target, acc)
    }

    /// Replaces one variable by a polynomial of the same ring.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|i| {
                if i == var {
                    value.clone()
                } else {
                    Polynomial::variable(&self.ring, i)
                }
            })
            .collect();
        self.compose(&self.ring, &images)
    }

    /// Sets variable `var` to the constant `value`; the result stays in the same ring.
    pub fn specialize(&self, var: usize, value: &Rational) -> Polynomial {
        let mut map: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            let mut m2 = m.clone();
            m2.exponents_mut()[var] = 0;
            let coeff = if e == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), e as usize)
            };
            *map.entry(m2).or_insert_with(Rational::zero) += coeff;
        }
        Polynomial::from_map(&self.ring, map)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= point[i].powi(e as i32);
                }
            }
            total += t;
        }
        total
    }

    /// Sum of absolute values of the terms at `point`; the natural scale for residuals.
    pub fn eval_abs_f64(&self, point: &[f64]) -> f64 {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN).abs();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= point[i].abs().powi(e as i32);
                }
            }
            total += t;
        }
        total
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.exponents_mut()[var] = e - 1;
            terms.push((m2, c * rat(e as i64)));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Coefficients with respect to `var`: entry `i` is the coefficient of
    /// `var^i`, as a polynomial of the same ring not involving `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            let mut m2 = m.clone();
            m2.exponents_mut()[var] = 0;
            buckets[e].push((m2, c.clone()));
        }
        if self.is_zero() {
            return vec![];
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                // removing one variable keeps relative order only for some orders
                ts.sort_by(|a, b| self.ring.compare(&b.0, &a.0));
                Polynomial {
                    ring: self.ring.clone(),
                    terms: ts,
                }
            })
            .collect()
    }

    pub fn from_coefficients_in(ring: &Ring, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.exponents_mut()[var] += i as Exponent;
                terms.push((m2, a.clone()));
            }
        }
        Polynomial::from_terms(ring, terms)
    }

    /// Leading coefficient with respect to `var`.
    pub fn leading_coeff_in(&self, var: usize) -> Polynomial {
        self.coefficients_in(var)
            .pop()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// Least common multiple of denominators and gcd of numerators, as the
    /// rational content `gcd(num)/lcm(den)`; zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rational::zero();
        }
        Rational::new(g, l)
    }

    /// Leading monomial under the canonical (grevlex) comparison.
    pub fn canonical_leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| Ring::compare_canonical(&a.0, &b.0))
    }

    /// Integer coefficients with content 1 and positive leading coefficient
    /// under grevlex in the ring's variable order.
    pub fn canonical(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let content = self.content();
        let lead_negative = self.canonical_leading().unwrap().1.is_negative();
        let factor = if lead_negative {
            -content.recip()
        } else {
            content.recip()
        };
        self.scale(&factor)
    }

    /// Makes the leading coefficient (ring order) equal to one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Coefficients as integers. Panics if some coefficient is not integral.
    pub fn integer_coefficients(&self) -> Vec<(Monomial, BigInt)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                assert!(c.is_integer(), "non-integral coefficient");
                (m.clone(), c.numer().clone())
            })
            .collect()
    }

    /// Terms sorted descending under canonical grevlex.
    pub fn canonical_terms(&self) -> Vec<(Monomial, Rational)> {
        let mut ts = self.terms.clone();
        ts.sort_by(|a, b| Ring::compare_canonical(&b.0, &a.0));
        ts
    }

    /// Same polynomial, re-sorted for a ring with the same variables but a
    /// different order.
    pub fn with_ring_order(&self, ring: &Ring) -> Polynomial {
        assert_eq!(ring.vars(), self.ring.vars());
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn exact_div(&self, g: &Polynomial) -> Result<Polynomial> {
        exact_divide(self, g)
    }

    /// Plain text form; see [`fmt::Display`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(ring, text)
    }
}

/// Returns `q` with `f = q * g`, or `NotDivisible`.
pub fn exact_divide(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.check_ring(g);
    if g.is_zero() {
        return Err(Error::Invalid("division by the zero polynomial".into()));
    }
    let ring = f.ring.clone();
    let (lm_g, lc_g) = g.leading_term().unwrap();
    let inv = lc_g.recip();
    let mut rem = f.clone();
    let mut quot: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = rem.leading_term() {
        let Some(q) = lm_g.quotient_of(m) else {
            return Err(Error::NotDivisible);
        };
        let qc = c * &inv;
        rem = &rem - &g.mul_term(&q, &qc);
        quot.push((q, qc));
    }
    // quotient terms were produced in strictly decreasing order
    Ok(Polynomial::from_sorted_terms(&ring, quot))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.canonical_terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'b Polynomial) -> Polynomial {
                $body(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Polynomial, b: &Polynomial| a.merge(b, false));
binop!(Sub, sub, |a: &Polynomial, b: &Polynomial| a.merge(b, true));
binop!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.mul_impl(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
