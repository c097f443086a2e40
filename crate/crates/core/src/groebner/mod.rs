//! Gröbner bases and the ideal operations built on them: elimination,
//! saturation, intersection and finite-dimensional quotient algebras.

mod engine;
mod quotient;

use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::{rat, Monomial, MonomialOrder, Polynomial, Rational, Ring};
use engine::{from_ipoly, to_ipoly, IPoly};

pub use quotient::{quotient_algebra, QuotientAlgebra};

/// Resource limits for a Gröbner basis computation.
#[derive(Clone, Debug)]
pub struct GbOptions {
    /// Abort with [`Error::ResourceLimit`] after this many S-pairs.
    pub max_pairs: usize,
    pub time_limit: Option<Duration>,
    /// Log a progress line every thousand S-pairs.
    pub progress: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            max_pairs: 2_000_000,
            time_limit: None,
            progress: true,
        }
    }
}

/// A finite list of generators in a fixed ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; every generator must live in `ring`.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch(
                    "ideal generator in a different ring".into(),
                ));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
        })
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Ideal> {
        Ideal::new(ring, crate::polyring::parse_polynomial_list(ring, text)?)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Same generators viewed in another ring holding all their variables.
    pub fn to_ring(&self, ring: &Ring) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// Sum of two ideals in the same ring.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("ideal sum".into()));
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Generators as canonical text, one per line.
    pub fn to_text(&self) -> String {
        self.generators
            .iter()
            .map(|g| g.to_text())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Reduced Gröbner basis. Elements are primitive integer polynomials with
/// positive leading coefficient, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ideal: Ideal,
    ring: Ring,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The ring of the elements: the ideal's variables under the basis order.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// The basis as an ideal in the original ring.
    pub fn to_ideal(&self) -> Ideal {
        let gens = self
            .elements
            .iter()
            .map(|g| g.with_ring_order(&self.ideal.ring))
            .collect();
        Ideal::new(&self.ideal.ring, gens).expect("same variables")
    }

    /// Normal form over Q, with rational coefficients, in the basis ring.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut p = f.to_ring(&self.ring)?;
        let mut rest: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = p.leading_term().cloned() {
            let reducer = self
                .elements
                .iter()
                .find(|g| g.leading_monomial().unwrap().divides(&m));
            match reducer {
                Some(g) => {
                    let (lm, lc) = g.leading_term().unwrap();
                    let q = lm.quotient_of(&m).unwrap();
                    p = &p - &g.mul_term(&q, &(c / lc));
                }
                None => {
                    rest.push((m.clone(), c.clone()));
                    p = &p - &Polynomial::term(&self.ring, m, c);
                }
            }
        }
        Ok(Polynomial::from_terms(&self.ring, rest))
    }

    /// Ideal membership, by fraction-free reduction.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let f = f.to_ring(&self.ring)?;
        if f.is_zero() {
            return Ok(true);
        }
        let basis: Vec<IPoly> = self
            .elements
            .iter()
            .map(|g| to_ipoly(g, &self.ring))
            .collect();
        let r = engine::reduce_by(&self.ring, &basis, to_ipoly(&f, &self.ring));
        Ok(r.terms.is_empty())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    groebner_basis_with(ideal, order, &GbOptions::default())
}

pub fn groebner_basis_with(
    ideal: &Ideal,
    order: &MonomialOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis> {
    let ring = ideal.ring.with_order(order.clone());
    let input: Vec<IPoly> = ideal
        .generators
        .iter()
        .map(|g| to_ipoly(&g.with_ring_order(&ring), &ring))
        .collect();
    let out = engine::compute(&ring, input, opts)?;
    let elements = out.iter().map(|p| from_ipoly(p, &ring)).collect();
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        ring,
        elements,
    })
}

/// Reduced grevlex basis as an ideal: a canonical generating set.
pub fn reduced_grevlex(ideal: &Ideal, opts: &GbOptions) -> Result<Ideal> {
    Ok(groebner_basis_with(ideal, &MonomialOrder::Grevlex, opts)?.to_ideal())
}

/// True when the two ideals (same ring) are equal.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch("ideal comparison".into()));
    }
    let ga = groebner_basis(a, &MonomialOrder::Grevlex)?;
    let gb = groebner_basis(b, &MonomialOrder::Grevlex)?;
    Ok(ga.elements == gb.elements)
}

fn fresh_name(ring: &Ring, stem: &str) -> String {
    (0..)
        .map(|k| format!("{stem}{k}"))
        .find(|n| ring.var_index(n).is_none())
        .unwrap()
}

fn sub_weights(ring: &Ring, idx: &[usize]) -> Option<Vec<u32>> {
    ring.weights().map(|w| idx.iter().map(|&i| w[i]).collect())
}

pub fn eliminate(ideal: &Ideal, drop: &[&str]) -> Result<Ideal> {
    eliminate_with(ideal, drop, &GbOptions::default())
}

/// Elimination ideal `I ∩ Q[remaining variables]`, via a block order with the
/// dropped variables first. The result lives in the ring of the remaining
/// variables (original relative order).
pub fn eliminate_with(ideal: &Ideal, drop: &[&str], opts: &GbOptions) -> Result<Ideal> {
    let ring = &ideal.ring;
    let mut drop_idx = Vec::with_capacity(drop.len());
    for name in drop {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::RingMismatch(format!("unknown variable `{name}`")))?;
        if !drop_idx.contains(&i) {
            drop_idx.push(i);
        }
    }
    let keep_idx: Vec<usize> = (0..ring.nvars())
        .filter(|i| !drop_idx.contains(i))
        .collect();
    let mut order_idx = drop_idx.clone();
    order_idx.extend(&keep_idx);
    let names =
        |idx: &[usize]| -> Vec<String> { idx.iter().map(|&i| ring.vars()[i].clone()).collect() };
    let elim_ring = Ring::with_weights(
        &names(&order_idx),
        MonomialOrder::Block(drop_idx.len()),
        sub_weights(ring, &order_idx),
    )?;
    let sub_order = match ring.order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        _ => MonomialOrder::Grevlex,
    };
    let sub_ring = Ring::with_weights(&names(&keep_idx), sub_order, sub_weights(ring, &keep_idx))?;
    let input: Vec<IPoly> = ideal
        .generators
        .iter()
        .map(|g| g.to_ring(&elim_ring).map(|p| to_ipoly(&p, &elim_ring)))
        .collect::<Result<_>>()?;
    let gb = engine::compute(&elim_ring, input, opts)?;
    let k = drop_idx.len();
    let gens = gb
        .iter()
        .filter(|p| {
            p.terms
                .iter()
                .all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0))
        })
        .map(|p| from_ipoly(p, &elim_ring).to_ring(&sub_ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&sub_ring, gens)
}

pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    saturate_with(ideal, f, &GbOptions::default())
}

fn weighted_homogeneous(p: &Polynomial) -> bool {
    let w = p.ring().weights();
    let mut it = p.terms().iter().map(|(m, _)| m.weighted_degree(w));
    match it.next() {
        None => true,
        Some(d) => it.all(|e| e == d),
    }
}

/// The variable `f` is a scalar multiple of, if any.
fn as_variable(f: &Polynomial) -> Option<usize> {
    match f.terms() {
        [(m, _)] if m.degree() == 1 => m.exponents().iter().position(|&e| e == 1),
        _ => None,
    }
}

/// `I : v^∞` for a (weighted) homogeneous ideal and a variable `v`: in a
/// grevlex basis with `v` last, `v` divides an element iff it divides its
/// leading term, so stripping `v` from every element gives a basis of the
/// saturation. Stays homogeneous, unlike the Rabinowitsch trick.
fn saturate_homogeneous(ideal: &Ideal, v: usize, opts: &GbOptions) -> Result<Ideal> {
    let ring = &ideal.ring;
    let mut idx: Vec<usize> = (0..ring.nvars()).filter(|&i| i != v).collect();
    idx.push(v);
    let names: Vec<String> = idx.iter().map(|&i| ring.vars()[i].clone()).collect();
    let moved = Ring::with_weights(&names, MonomialOrder::Grevlex, sub_weights(ring, &idx))?;
    let gens = ideal
        .generators
        .iter()
        .map(|g| g.to_ring(&moved))
        .collect::<Result<Vec<_>>>()?;
    let gb = groebner_basis_with(&Ideal::new(&moved, gens)?, &MonomialOrder::Grevlex, opts)?;
    let last = moved.nvars() - 1;
    let stripped = gb
        .elements
        .iter()
        .map(|g| {
            let k = g
                .terms()
                .iter()
                .map(|(m, _)| m.exponents()[last])
                .min()
                .unwrap_or(0);
            let terms = g.terms().iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e[last] -= k;
                (Monomial::from_exponents(&e), c.clone())
            });
            Polynomial::from_terms(&moved, terms).to_ring(ring)
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, stripped)
}

/// `I : f^∞`, given by its reduced grevlex basis in the ring of `I`.
pub fn saturate_with(ideal: &Ideal, f: &Polynomial, opts: &GbOptions) -> Result<Ideal> {
    let sat = saturate_generators(ideal, f, opts)?;
    let ring = &ideal.ring;
    let gb = groebner_basis_with(
        &sat.to_ring(&ring.with_order(MonomialOrder::Grevlex))?,
        &MonomialOrder::Grevlex,
        opts,
    )?;
    Ideal::new(
        ring,
        gb.elements
            .iter()
            .map(|g| g.with_ring_order(ring))
            .collect(),
    )
}

/// Some generating set of `I : f^∞`. For a variable `f` and an ideal that is
/// homogeneous for the ring weights this avoids the inhomogeneous
/// Rabinowitsch ideal, which matters for elimination problems.
pub(crate) fn saturate_generators(
    ideal: &Ideal,
    f: &Polynomial,
    opts: &GbOptions,
) -> Result<Ideal> {
    let ring = &ideal.ring;
    if f.ring() != ring {
        return Err(Error::RingMismatch("saturating polynomial".into()));
    }
    if f.is_zero() {
        // I : 0^∞ is the whole ring
        return Ideal::new(ring, vec![Polynomial::one(ring)]);
    }
    if let Some(v) = as_variable(f) {
        if ideal.generators.iter().all(weighted_homogeneous) {
            return saturate_homogeneous(ideal, v, opts);
        }
    }
    let t = fresh_name(ring, "sat");
    let mut names = vec![t.clone()];
    names.extend(ring.vars().iter().cloned());
    let weights = ring.weights().map(|w| {
        let mut v = vec![1];
        v.extend(w);
        v
    });
    let big = Ring::with_weights(&names, ring.order().clone(), weights)?;
    let tv = Polynomial::var(&big, &t);
    let mut gens = ideal
        .generators
        .iter()
        .map(|g| g.to_ring(&big))
        .collect::<Result<Vec<_>>>()?;
    gens.push(&(&tv * &f.to_ring(&big)?) - &Polynomial::one(&big));
    eliminate_with(&Ideal::new(&big, gens)?, &[&t], opts)?.to_ring(ring)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    intersect_with(a, b, &GbOptions::default())
}

/// `I ∩ J` as the elimination of `t` from `t I + (1 - t) J`.
pub fn intersect_with(a: &Ideal, b: &Ideal, opts: &GbOptions) -> Result<Ideal> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch("ideal intersection".into()));
    }
    let ring = &a.ring;
    if a.is_zero() || b.is_zero() {
        return Ideal::new(ring, vec![]);
    }
    let t = fresh_name(ring, "cap");
    let mut names = vec![t.clone()];
    names.extend(ring.vars().iter().cloned());
    let weights = ring.weights().map(|w| {
        let mut v = vec![1];
        v.extend(w);
        v
    });
    let big = Ring::with_weights(&names, ring.order().clone(), weights)?;
    let tv = Polynomial::var(&big, &t);
    let one_minus = &Polynomial::one(&big) - &tv;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(&tv * &g.to_ring(&big)?);
    }
    for g in b.generators() {
        gens.push(&one_minus * &g.to_ring(&big)?);
    }
    let elim = eliminate_with(&Ideal::new(&big, gens)?, &[&t], opts)?;
    elim.to_ring(ring)
}

/// How [`saturate_by_ideal_with`] computes `I : J^∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum SaturationStrategy {
    /// Intersection of the saturations by each generator of `J`.
    Exact,
    /// Saturate by a random Q-linear combination of the generators of `J`,
    /// confirmed by a second independent combination. Falls back to
    /// [`SaturationStrategy::Exact`] when the two disagree.
    RandomCombination { seed: u64 },
}

pub fn saturate_by_ideal(ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    saturate_by_ideal_with(ideal, by, &GbOptions::default(), &SaturationStrategy::Exact)
}

pub fn saturate_by_ideal_with(
    ideal: &Ideal,
    by: &Ideal,
    opts: &GbOptions,
    strategy: &SaturationStrategy,
) -> Result<Ideal> {
    if ideal.ring != by.ring {
        return Err(Error::RingMismatch("saturation".into()));
    }
    let ring = &ideal.ring;
    if by.is_zero() {
        return Ideal::new(ring, vec![Polynomial::one(ring)]);
    }
    if by.generators.len() == 1 {
        return saturate_with(ideal, &by.generators[0], opts);
    }
    if let SaturationStrategy::RandomCombination { seed } = strategy {
        let mut rng = ChaCha8Rng::seed_from_u64(*seed);
        let combo = |rng: &mut ChaCha8Rng| {
            by.generators.iter().fold(Polynomial::zero(ring), |acc, g| {
                let c = rng.gen_range(1i64..=97) * if rng.gen_bool(0.5) { 1 } else { -1 };
                &acc + &g.scale(&rat(c))
            })
        };
        let l1 = combo(&mut rng);
        let l2 = combo(&mut rng);
        let s1 = saturate_with(ideal, &l1, opts)?;
        let s2 = saturate_with(ideal, &l2, opts)?;
        if s1 == s2 {
            return Ok(s1);
        }
        log::warn!("random saturation combinations disagree, using exact saturation");
    }
    let mut acc: Option<Ideal> = None;
    for g in &by.generators {
        let s = saturate_with(ideal, g, opts)?;
        acc = Some(match acc {
            None => s,
            Some(prev) => reduced_grevlex(&intersect_with(&prev, &s, opts)?, opts)?,
        });
    }
    Ok(acc.unwrap())
}

/// Leading-monomial dimension data: `None` when the ideal is not
/// zero-dimensional, otherwise the standard monomials.
pub(crate) fn standard_monomials(gb: &GroebnerBasis) -> Option<Vec<Monomial>> {
    let n = gb.ring.nvars();
    let lms = gb.leading_monomials();
    // every variable needs a pure power among the leading monomials
    let mut bounds = vec![0u16; n];
    for v in 0..n {
        let pure = lms
            .iter()
            .filter(|m| {
                let e = m.exponents();
                e[v] > 0 && e.iter().enumerate().all(|(i, &x)| i == v || x == 0)
            })
            .map(|m| m.exponents()[v])
            .min()?;
        bounds[v] = pure;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    loop {
        let m = Monomial::from_exponents(&cur);
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| gb.ring.compare(a, b));
                return Some(out);
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(vars: &[&str], gens: &str) -> Ideal {
        Ideal::parse(&Ring::grevlex(vars), gens).unwrap()
    }

    #[test]
    fn basis_of_variables() {
        let i = ideal(&["x", "y"], "x, y");
        let gb = groebner_basis(&i, &MonomialOrder::Grevlex).unwrap();
        let text: Vec<String> = gb.elements().iter().map(|g| g.to_text()).collect();
        assert_eq!(text, vec!["y", "x"]);
    }

    #[test]
    fn unit_ideal_detected() {
        let i = ideal(&["x", "y"], "x*y - 1, x");
        assert!(groebner_basis(&i, &MonomialOrder::Grevlex)
            .unwrap()
            .is_unit());
    }

    #[test]
    fn eliminate_parameter() {
        let i = ideal(&["t", "x", "y"], "t - x, t - y");
        let e = eliminate(&i, &["t"]).unwrap();
        assert_eq!(e.to_text(), "x-y");
        assert_eq!(e.ring().vars(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn twisted_cubic_elimination() {
        let i = ideal(&["t", "x", "y", "z"], "x - t, y - t^2, z - t^3");
        let e = eliminate(&i, &["t"]).unwrap();
        let expect = ideal(&["x", "y", "z"], "y - x^2, z - x^3");
        assert!(ideal_equal(&e, &expect).unwrap());
    }

    #[test]
    fn saturation_removes_component() {
        let i = ideal(&["x", "y"], "x*y");
        let x = Polynomial::parse(i.ring(), "x").unwrap();
        assert_eq!(saturate(&i, &x).unwrap().to_text(), "y");
        let j = ideal(&["x", "y"], "x^3*y, x^2*y^2");
        let s = saturate_by_ideal(&j, &ideal(&["x", "y"], "x, y")).unwrap();
        assert_eq!(s.to_text(), "x^2*y");
    }

    #[test]
    fn intersection_of_coordinate_lines() {
        let a = ideal(&["x", "y"], "x");
        let b = ideal(&["x", "y"], "y");
        assert_eq!(intersect(&a, &b).unwrap().to_text(), "x*y");
    }

    #[test]
    fn membership_and_normal_form() {
        let i = ideal(&["x", "y"], "x^2 - y, x*y - 1");
        let gb = groebner_basis(&i, &MonomialOrder::Grevlex).unwrap();
        let f = Polynomial::parse(i.ring(), "x^3 - 1").unwrap();
        assert!(gb.contains(&f).unwrap());
        let nf = gb
            .normal_form(&Polynomial::parse(i.ring(), "x^4").unwrap())
            .unwrap();
        assert_eq!(nf.to_text(), "x");
    }

    #[test]
    fn random_combination_matches_exact() {
        let i = ideal(&["x", "y", "z"], "x*z, y*z, z^2*x - y*z^2");
        let by = ideal(&["x", "y", "z"], "x, y");
        let exact = saturate_by_ideal(&i, &by).unwrap();
        let fast = saturate_by_ideal_with(
            &i,
            &by,
            &GbOptions::default(),
            &SaturationStrategy::RandomCombination { seed: 7 },
        )
        .unwrap();
        assert!(ideal_equal(&exact, &fast).unwrap());
        assert_eq!(exact.to_text(), "z");
    }

    #[test]
    fn pair_budget_is_enforced() {
        let i = ideal(&["x", "y", "z"], "x^2*y - z, x*y^2 - x, y*z^2 - 1");
        let opts = GbOptions {
            max_pairs: 0,
            ..GbOptions::default()
        };
        let r = groebner_basis_with(&i, &MonomialOrder::Grevlex, &opts);
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn lex_and_grevlex_generate_same_ideal() {
        let i = ideal(&["x", "y", "z"], "x^2 + y*z - 2, y^2 - x*z + z, z^2 - x");
        let lex = groebner_basis(&i, &MonomialOrder::Lex).unwrap().to_ideal();
        assert!(ideal_equal(&lex, &i).unwrap());
        let gr = groebner_basis(&i, &MonomialOrder::Grevlex).unwrap();
        for g in lex.generators() {
            assert!(gr.contains(g).unwrap());
        }
    }
}
