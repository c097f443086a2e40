use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    vars: Vec<String>,
    order: MonomialOrder,
    weights: Option<Vec<u32>>,
}

/// A polynomial ring over the rationals: an ordered list of variable names and
/// a monomial order. Cloning is cheap.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}] ({:?})", self.0.vars.join(","), self.0.order)
    }
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Ring> {
        Self::with_weights(vars, order, None)
    }

    pub fn with_weights<S: AsRef<str>>(
        vars: &[S],
        order: MonomialOrder,
        weights: Option<Vec<u32>>,
    ) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_alphabetic() {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidRing(format!(
                    "block split {k} out of range for {} variables",
                    vars.len()
                )));
            }
        }
        if let Some(w) = &weights {
            if w.len() != vars.len() || w.iter().any(|&x| x == 0) {
                return Err(Error::InvalidRing(
                    "weights must be positive, one per variable".into(),
                ));
            }
        }
        Ok(Ring(Arc::new(RingData {
            vars,
            order,
            weights,
        })))
    }

    /// Grevlex ring, panicking on invalid names. Meant for literals.
    pub fn grevlex<S: AsRef<str>>(vars: &[S]) -> Ring {
        Ring::new(vars, MonomialOrder::Grevlex).expect("valid ring")
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.0.weights.as_deref()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order (weights kept).
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring::with_weights(&self.0.vars, order, self.0.weights.clone()).expect("valid order")
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.compare(a, b, self.weights())
    }

    /// Comparison used for canonical output: unweighted grevlex in the ring's
    /// variable order, whatever the computational order is.
    #[inline]
    pub fn compare_canonical(a: &Monomial, b: &Monomial) -> Ordering {
        MonomialOrder::Grevlex.compare(a, b, None)
    }
}
