use super::{standard_monomials, GroebnerBasis};
use crate::error::{Error, Result};
use crate::polyring::linalg::RatMatrix;
use crate::polyring::{Monomial, Polynomial, Rational};
use num_traits::Zero;

/// The finite-dimensional algebra `Q[x]/I` with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
}

/// Fails with [`Error::NotZeroDimensional`] unless `Q[x]/I` is finite
/// dimensional. The unit ideal gives the zero algebra.
pub fn quotient_algebra(gb: &GroebnerBasis) -> Result<QuotientAlgebra> {
    if gb.is_unit() {
        return Ok(QuotientAlgebra {
            gb: gb.clone(),
            basis: Vec::new(),
        });
    }
    let basis = standard_monomials(gb).ok_or(Error::NotZeroDimensional)?;
    Ok(QuotientAlgebra {
        gb: gb.clone(),
        basis,
    })
}

impl QuotientAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Coordinates of the normal form of `f` in the standard basis.
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<Rational>> {
        let nf = self.gb.normal_form(f)?;
        let mut v = vec![Rational::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            let k = self
                .basis
                .iter()
                .position(|b| b == m)
                .expect("normal forms are spanned by standard monomials");
            v[k] = c.clone();
        }
        Ok(v)
    }

    /// Matrix of multiplication by `f`; column `j` holds the image of the
    /// j-th standard monomial.
    pub fn mult_matrix(&self, f: &Polynomial) -> Result<RatMatrix> {
        let ring = self.gb.ring();
        let f = f.to_ring(ring)?;
        let n = self.basis.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (j, b) in self.basis.iter().enumerate() {
            let img = f.mul_term(b, &Rational::from_integer(1.into()));
            for (i, c) in self.coordinates(&img)?.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// Multiplication by the named variable.
    pub fn variable_matrix(&self, var: &str) -> Result<RatMatrix> {
        let ring = self.gb.ring();
        if ring.var_index(var).is_none() {
            return Err(Error::RingMismatch(format!("unknown variable `{var}`")));
        }
        self.mult_matrix(&Polynomial::var(ring, var))
    }
}
