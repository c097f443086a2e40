use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponent = u16;

/// Exponent vector of a monomial. The length always equals the number of
/// variables of the ring the monomial lives in.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[Exponent; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn variable(nvars: usize, index: usize, exp: Exponent) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = exp;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.0
    }

    #[inline]
    pub fn exponents_mut(&mut self) -> &mut [Exponent] {
        &mut self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: Option<&[u32]>) -> u32 {
        match weights {
            None => self.degree(),
            Some(w) => self.0.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&a| {
                    let e = a as u32 * k;
                    Exponent::try_from(e).expect("exponent overflow")
                })
                .collect(),
        )
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(&b, &a)| b - a)
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` is set when variable `i mod 64` occurs.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Monomial orders understood by the library.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order.
    Grevlex,
    /// Pure lexicographic order.
    Lex,
    /// Elimination order for the first `k` variables: grevlex on the first
    /// block, ties broken by grevlex on the remaining variables.
    Block(usize),
}

fn grevlex_range(a: &[Exponent], b: &[Exponent], weights: Option<&[u32]>) -> Ordering {
    let (da, db): (u32, u32) = match weights {
        None => (
            a.iter().map(|&e| e as u32).sum(),
            b.iter().map(|&e| e as u32).sum(),
        ),
        Some(w) => (
            a.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum(),
            b.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum(),
        ),
    };
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: Option<&[u32]>) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Grevlex => grevlex_range(ea, eb, weights),
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::Block(k) => {
                let k = *k;
                let (w1, w2) = match weights {
                    None => (None, None),
                    Some(w) => (Some(&w[..k]), Some(&w[k..])),
                };
                match grevlex_range(&ea[..k], &eb[..k], w1) {
                    Ordering::Equal => grevlex_range(&ea[k..], &eb[k..], w2),
                    o => o,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[Exponent]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        // x > y > z, degree first
        assert_eq!(
            o.compare(&m(&[1, 0, 0]), &m(&[0, 1, 0]), None),
            Ordering::Greater
        );
        assert_eq!(
            o.compare(&m(&[0, 0, 2]), &m(&[1, 0, 0]), None),
            Ordering::Greater
        );
        // x*z vs y^2: reverse lex looks at z first, smaller z exponent wins
        assert_eq!(
            o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1]), None),
            Ordering::Greater
        );
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        assert_eq!(
            o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5]), None),
            Ordering::Greater
        );
        assert_eq!(
            o.compare(&m(&[1, 1, 0]), &m(&[1, 0, 1]), None),
            Ordering::Greater
        );
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 1])));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
    }
}
