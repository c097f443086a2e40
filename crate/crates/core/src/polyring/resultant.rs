use super::matrix::PolyMatrix;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Sylvester matrix of `f` and `g` with respect to variable `var`.
pub fn sylvester_matrix(f: &Polynomial, g: &Polynomial, var: usize) -> Result<PolyMatrix> {
    let ring = f.ring();
    let name = || ring.vars()[var].clone();
    let m = f.degree_in(var) as usize;
    let n = g.degree_in(var) as usize;
    if m == 0 || f.is_zero() {
        return Err(Error::DegreeZero(name()));
    }
    if n == 0 || g.is_zero() {
        return Err(Error::DegreeZero(name()));
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let size = m + n;
    let mut s = PolyMatrix::zeros(ring, size, size);
    for i in 0..n {
        for (k, c) in fc.iter().enumerate() {
            // descending powers left to right
            s.set(i, i + (m - k), c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in gc.iter().enumerate() {
            s.set(n + i, i + (n - k), c.clone());
        }
    }
    Ok(s)
}

/// Resultant with respect to the named variable, as the determinant of the
/// Sylvester matrix.
pub fn resultant_univariate(f: &Polynomial, g: &Polynomial, var: &str) -> Result<Polynomial> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch("resultant arguments".into()));
    }
    let v = f
        .ring()
        .var_index(var)
        .ok_or_else(|| Error::RingMismatch(format!("unknown variable `{var}`")))?;
    let s = sylvester_matrix(f, g, v)?;
    s.determinant_bareiss()
}
