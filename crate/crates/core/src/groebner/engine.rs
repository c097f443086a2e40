//! Fraction-free Buchberger algorithm over Z-coefficients.
//!
//! Polynomials are kept primitive with integer coefficients; S-polynomials
//! and reductions use cofactor scaling so no rational arithmetic is needed.
//! Pair selection is the sugar strategy with deterministic tie-breaking, and
//! pairs are pruned with the Gebauer–Möller criteria.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GbOptions;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Rational, Ring};

pub(crate) type ITerm = (Monomial, BigInt);

#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    pub terms: Vec<ITerm>,
    pub sugar: u32,
}

impl IPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Integer content of a term list, or zero when empty. Starts from the
/// smallest coefficient and reduces the others modulo the running gcd, so
/// the binary gcd only ever sees small operands.
fn content(terms: &[ITerm]) -> BigInt {
    let Some(start) = terms.iter().min_by_key(|(_, c)| c.bits()) else {
        return BigInt::zero();
    };
    let mut g = start.1.abs();
    for (_, c) in terms {
        if g.is_one() {
            break;
        }
        let r = c % &g;
        if !r.is_zero() {
            g = g.gcd(&r);
        }
    }
    g
}

fn make_primitive(terms: &mut [ITerm]) {
    if terms.is_empty() {
        return;
    }
    let mut g = content(terms);
    if terms[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in terms.iter_mut() {
            *c = &*c / &g;
        }
    }
}

pub(crate) fn to_ipoly(p: &Polynomial, ring: &Ring) -> IPoly {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut terms: Vec<ITerm> = p
        .terms()
        .iter()
        .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
        .collect();
    terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
    make_primitive(&mut terms);
    let sugar = terms
        .iter()
        .map(|(m, _)| m.weighted_degree(ring.weights()))
        .max()
        .unwrap_or(0);
    IPoly { terms, sugar }
}

pub(crate) fn from_ipoly(p: &IPoly, ring: &Ring) -> Polynomial {
    let terms = p
        .terms
        .iter()
        .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone())))
        .collect();
    Polynomial::from_sorted_terms(ring, terms)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Element {
    poly: IPoly,
    mask: u64,
    active: bool,
}

pub(crate) struct Engine<'a> {
    ring: &'a Ring,
    opts: &'a GbOptions,
    basis: Vec<Element>,
    pairs: Vec<Pair>,
    processed: usize,
    started: Instant,
}

impl<'a> Engine<'a> {
    pub fn new(ring: &'a Ring, opts: &'a GbOptions) -> Self {
        Engine {
            ring,
            opts,
            basis: Vec::new(),
            pairs: Vec::new(),
            processed: 0,
            started: Instant::now(),
        }
    }

    fn deg(&self, m: &Monomial) -> u32 {
        m.weighted_degree(self.ring.weights())
    }

    /// `a * f - b * m * g`, where the leading terms are known to cancel
    /// when `skip_leading` is set.
    fn lincomb(
        &self,
        a: &BigInt,
        mf: Option<&Monomial>,
        f: &[ITerm],
        b: &BigInt,
        mg: &Monomial,
        g: &[ITerm],
    ) -> Vec<ITerm> {
        let ring = self.ring;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let shift_f = |m: &Monomial| match mf {
            Some(s) => m.mul(s),
            None => m.clone(),
        };
        let mut fi = f.get(i).map(|t| shift_f(&t.0));
        let mut gj = g.get(j).map(|t| t.0.mul(mg));
        loop {
            match (&fi, &gj) {
                (None, None) => break,
                (Some(mf_), None) => {
                    out.push((mf_.clone(), a * &f[i].1));
                    i += 1;
                    fi = f.get(i).map(|t| shift_f(&t.0));
                }
                (None, Some(mg_)) => {
                    out.push((mg_.clone(), -(b * &g[j].1)));
                    j += 1;
                    gj = g.get(j).map(|t| t.0.mul(mg));
                }
                (Some(mf_), Some(mg_)) => match ring.compare(mf_, mg_) {
                    Ordering::Greater => {
                        out.push((mf_.clone(), a * &f[i].1));
                        i += 1;
                        fi = f.get(i).map(|t| shift_f(&t.0));
                    }
                    Ordering::Less => {
                        out.push((mg_.clone(), -(b * &g[j].1)));
                        j += 1;
                        gj = g.get(j).map(|t| t.0.mul(mg));
                    }
                    Ordering::Equal => {
                        let c = a * &f[i].1 - b * &g[j].1;
                        if !c.is_zero() {
                            out.push((mf_.clone(), c));
                        }
                        i += 1;
                        j += 1;
                        fi = f.get(i).map(|t| shift_f(&t.0));
                        gj = g.get(j).map(|t| t.0.mul(mg));
                    }
                },
            }
        }
        out
    }

    fn find_reducer(&self, m: &Monomial, exclude: Option<usize>) -> Option<usize> {
        let mask = m.support_mask();
        let mut best: Option<(usize, usize)> = None;
        for (k, e) in self.basis.iter().enumerate() {
            if !e.active || Some(k) == exclude || e.mask & !mask != 0 {
                continue;
            }
            if e.poly.lm().divides(m) {
                let len = e.poly.terms.len();
                if best.map_or(true, |(_, l)| len < l) {
                    best = Some((k, len));
                    if len <= 2 {
                        break;
                    }
                }
            }
        }
        best.map(|(k, _)| k)
    }

    /// Reduces `f` by the active basis. With `full`, every term is reduced,
    /// otherwise only the leading term.
    fn reduce(&self, mut f: IPoly, full: bool, exclude: Option<usize>) -> IPoly {
        let mut k = 0;
        let mut steps = 0usize;
        while k < f.terms.len() {
            if !full && k > 0 {
                break;
            }
            let Some(r) = self.find_reducer(&f.terms[k].0, exclude) else {
                k += 1;
                continue;
            };
            let g = &self.basis[r].poly;
            let q = g.lm().quotient_of(&f.terms[k].0).unwrap();
            let c = &f.terms[k].1;
            let d = c.gcd(g.lc());
            let mut a = g.lc() / &d;
            let mut b = c / &d;
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            let mut head: Vec<ITerm> = f.terms[..k].to_vec();
            if !a.is_one() {
                for t in head.iter_mut() {
                    t.1 *= &a;
                }
            }
            let tail = self.lincomb(&a, None, &f.terms[k + 1..], &b, &q, &g.terms[1..]);
            head.extend(tail);
            f.sugar = f.sugar.max(g.sugar + self.deg(&q));
            f.terms = head;
            steps += 1;
            if steps % 24 == 0 {
                make_primitive(&mut f.terms);
            }
        }
        make_primitive(&mut f.terms);
        f
    }

    fn spoly(&self, p: &Pair) -> IPoly {
        let f = &self.basis[p.i].poly;
        let g = &self.basis[p.j].poly;
        let mf = f.lm().quotient_of(&p.lcm).unwrap();
        let mg = g.lm().quotient_of(&p.lcm).unwrap();
        let d = f.lc().gcd(g.lc());
        let a = g.lc() / &d;
        let b = f.lc() / &d;
        let terms = self.lincomb(&a, Some(&mf), &f.terms[1..], &b, &mg, &g.terms[1..]);
        IPoly {
            terms,
            sugar: p.sugar,
        }
    }

    fn pair_key_cmp(&self, x: &Pair, y: &Pair) -> Ordering {
        // ascending priority: smaller sugar, smaller lcm, older indices
        x.sugar
            .cmp(&y.sugar)
            .then_with(|| self.ring.compare(&x.lcm, &y.lcm))
            .then_with(|| x.j.cmp(&y.j))
            .then_with(|| x.i.cmp(&y.i))
    }

    fn update(&mut self, h: usize) {
        let lm_h = self.basis[h].poly.lm().clone();
        let sug_h = self.basis[h].poly.sugar;
        let deg_h = self.deg(&lm_h);
        struct Cand {
            g: usize,
            lcm: Monomial,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(k, e)| e.active && *k != h)
            .map(|(k, e)| {
                let lm = e.poly.lm();
                Cand {
                    g: k,
                    lcm: lm.lcm(&lm_h),
                    coprime: lm.is_coprime(&lm_h),
                }
            })
            .collect();
        let mut kept: Vec<Cand> = Vec::new();
        while let Some(p) = cands.pop() {
            let redundant = !p.coprime
                && (cands.iter().any(|q| q.lcm.divides(&p.lcm))
                    || kept.iter().any(|q| q.lcm.divides(&p.lcm)));
            if !redundant {
                kept.push(p);
            }
        }
        // criterion B on old pairs
        let basis = &self.basis;
        self.pairs.retain(|pr| {
            if !lm_h.divides(&pr.lcm) {
                return true;
            }
            let li = basis[pr.i].poly.lm().lcm(&lm_h);
            let lj = basis[pr.j].poly.lm().lcm(&lm_h);
            li == pr.lcm || lj == pr.lcm
        });
        for c in kept.into_iter().filter(|c| !c.coprime) {
            let e = &self.basis[c.g].poly;
            let dl = self.deg(&c.lcm);
            let sugar = (e.sugar + dl - self.deg(e.lm())).max(sug_h + dl - deg_h);
            self.pairs.push(Pair {
                i: c.g.min(h),
                j: c.g.max(h),
                lcm: c.lcm,
                sugar,
            });
        }
        for k in 0..self.basis.len() {
            if k != h && self.basis[k].active && lm_h.divides(self.basis[k].poly.lm()) {
                self.basis[k].active = false;
            }
        }
        self.basis[h].active = true;
    }

    fn insert(&mut self, p: IPoly) {
        let mask = p.lm().support_mask();
        self.basis.push(Element {
            poly: p,
            mask,
            active: false,
        });
        let h = self.basis.len() - 1;
        self.update(h);
    }

    fn check_budget(&self) -> Result<()> {
        if self.processed >= self.opts.max_pairs && !self.pairs.is_empty() {
            return Err(Error::ResourceLimit(format!(
                "more than {} S-pairs processed",
                self.opts.max_pairs
            )));
        }
        if let Some(limit) = self.opts.time_limit {
            if self.started.elapsed() > limit {
                return Err(Error::ResourceLimit(format!(
                    "time limit of {:?} exceeded",
                    limit
                )));
            }
        }
        Ok(())
    }

    pub fn run(mut self, input: Vec<IPoly>) -> Result<Vec<IPoly>> {
        let mut input: Vec<IPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
        input.sort_by(|a, b| {
            a.sugar
                .cmp(&b.sugar)
                .then_with(|| self.ring.compare(a.lm(), b.lm()))
                .then_with(|| a.terms.len().cmp(&b.terms.len()))
        });
        for f in input {
            let h = self.reduce(f, true, None);
            if h.is_zero() {
                continue;
            }
            if h.lm().is_one() {
                return Ok(vec![h]);
            }
            self.insert(h);
        }
        loop {
            if self.pairs.is_empty() {
                break;
            }
            // select the minimal pair
            let mut best = 0;
            for k in 1..self.pairs.len() {
                if self.pair_key_cmp(&self.pairs[k], &self.pairs[best]) == Ordering::Less {
                    best = k;
                }
            }
            if self.processed >= self.opts.max_pairs || self.processed % 64 == 63 {
                self.check_budget()?;
            }
            let pair = self.pairs.swap_remove(best);
            self.processed += 1;
            if self.opts.progress && self.processed % 1000 == 0 {
                log::info!(
                    "groebner: {} S-pairs processed, {} queued, basis size {}",
                    self.processed,
                    self.pairs.len(),
                    self.basis.iter().filter(|e| e.active).count()
                );
            }
            let s = self.spoly(&pair);
            if s.is_zero() {
                continue;
            }
            let h = self.reduce(s, true, None);
            if h.is_zero() {
                continue;
            }
            if h.lm().is_one() {
                return Ok(vec![h]);
            }
            log::debug!(
                "pair {}: new element, sugar {}, {} terms, {} coefficient bits, lm degree {}",
                self.processed,
                h.sugar,
                h.terms.len(),
                h.terms.iter().map(|t| t.1.bits()).max().unwrap_or(0),
                h.lm().degree()
            );
            self.insert(h);
        }
        Ok(self.finish())
    }

    /// Minimal basis, then tail-reduced: the reduced Gröbner basis up to
    /// positive integer scaling of each element.
    fn finish(mut self) -> Vec<IPoly> {
        let active: Vec<usize> = (0..self.basis.len())
            .filter(|&k| self.basis[k].active)
            .collect();
        let mut out = Vec::with_capacity(active.len());
        for &k in &active {
            let p = self.basis[k].poly.clone();
            let lead = p.terms[0].clone();
            let tail = IPoly {
                terms: p.terms[1..].to_vec(),
                sugar: p.sugar,
            };
            let reduced_tail = self.reduce_tail_for(tail, &lead.1, k);
            let mut terms = vec![(lead.0, reduced_tail.0)];
            terms.extend(reduced_tail.1);
            make_primitive(&mut terms);
            out.push((
                k,
                IPoly {
                    terms,
                    sugar: p.sugar,
                },
            ));
        }
        // replace in place so later tail reductions see reduced elements
        for (k, p) in &out {
            self.basis[*k].poly = p.clone();
        }
        let mut result: Vec<IPoly> = out.into_iter().map(|(_, p)| p).collect();
        result.sort_by(|a, b| self.ring.compare(a.lm(), b.lm()));
        result
    }

    /// Fully reduces a tail against the other active elements and returns the
    /// rescaled leading coefficient together with the reduced tail.
    fn reduce_tail_for(&self, tail: IPoly, lc: &BigInt, own: usize) -> (BigInt, Vec<ITerm>) {
        // reduce (lc * m_lead + tail) but only touch the tail: emulate by
        // tracking the scaling applied to the whole polynomial.
        let mut terms = tail.terms;
        let mut scale = BigInt::one();
        let mut k = 0;
        while k < terms.len() {
            let Some(r) = self.find_reducer(&terms[k].0, Some(own)) else {
                k += 1;
                continue;
            };
            let g = &self.basis[r].poly;
            let q = g.lm().quotient_of(&terms[k].0).unwrap();
            let c = &terms[k].1;
            let d = c.gcd(g.lc());
            let mut a = g.lc() / &d;
            let mut b = c / &d;
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            let mut head: Vec<ITerm> = terms[..k].to_vec();
            for t in head.iter_mut() {
                t.1 *= &a;
            }
            head.extend(self.lincomb(&a, None, &terms[k + 1..], &b, &q, &g.terms[1..]));
            terms = head;
            scale *= &a;
        }
        (lc * scale, terms)
    }
}

/// Reduces `f` fully by an already reduced basis (integer coefficients).
/// Returns the primitive remainder; zero iff `f` lies in the ideal.
pub(crate) fn reduce_by(ring: &Ring, basis: &[IPoly], f: IPoly) -> IPoly {
    let opts = GbOptions::default();
    let mut e = Engine::new(ring, &opts);
    for p in basis {
        let mask = p.lm().support_mask();
        e.basis.push(Element {
            poly: p.clone(),
            mask,
            active: true,
        });
    }
    e.reduce(f, true, None)
}

pub(crate) fn compute(ring: &Ring, input: Vec<IPoly>, opts: &GbOptions) -> Result<Vec<IPoly>> {
    Engine::new(ring, opts).run(input)
}
