use super::poly::{exact_divide, Polynomial};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Dense matrix of polynomials over one shared ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Invalid("ragged matrix rows".into()));
            }
            for e in row {
                if e.ring() != ring {
                    return Err(Error::RingMismatch(
                        "matrix entry in a different ring".into(),
                    ));
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(p.ring() == &self.ring);
        self.entries[i * self.cols + j] = p;
    }

    /// Determinant: cofactor expansion up to size 4, fraction-free Bareiss
    /// elimination beyond.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows <= 4 {
            Ok(self.determinant_cofactor())
        } else {
            self.determinant_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn determinant_cofactor(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols);
        let idx: Vec<usize> = (0..self.cols).collect();
        self.cofactor_rec(0, &idx)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> Polynomial {
        let n = cols.len();
        if n == 0 {
            return Polynomial::one(&self.ring);
        }
        if n == 1 {
            return self.get(row, cols[0]).clone();
        }
        if n == 2 {
            return &(self.get(row, cols[0]) * self.get(row + 1, cols[1]))
                - &(self.get(row, cols[1]) * self.get(row + 1, cols[0]));
        }
        let mut acc = Polynomial::zero(&self.ring);
        for (k, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.cofactor_rec(row + 1, &rest);
            let term = e * &minor;
            acc = if k % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    /// Bareiss fraction-free elimination; every division is exact.
    pub fn determinant_bareiss(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        let mut a: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = Polynomial::one(&self.ring);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                // pick the sparsest nonzero pivot below
                let swap = (k + 1..n)
                    .filter(|&i| !a[i][k].is_zero())
                    .min_by_key(|&i| a[i][k].len());
                match swap {
                    Some(i) => {
                        a.swap(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(Polynomial::zero(&self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = exact_divide(&num, &prev)?;
                }
                a[i][k] = Polynomial::zero(&self.ring);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign_flip { -det } else { det })
    }
}

pub fn determinant(m: &PolyMatrix) -> Result<Polynomial> {
    m.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::grevlex(&["x", "y", "z", "t"])
    }

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        let r = ring();
        PolyMatrix::from_rows(
            &r,
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| Polynomial::parse(&r, s).unwrap())
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_unit_determinant() {
        assert!(PolyMatrix::identity(&ring(), 2)
            .determinant()
            .unwrap()
            .is_one());
    }

    #[test]
    fn non_square_is_rejected() {
        let m = PolyMatrix::zeros(&ring(), 2, 3);
        assert_eq!(m.determinant(), Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn diagonal_pencil_determinant() {
        let m = mat(&[
            &["1+t", "0", "0", "0"],
            &["0", "1+2*t", "0", "0"],
            &["0", "0", "1+3*t", "0"],
            &["0", "0", "0", "-1-t"],
        ]);
        let expected = Polynomial::parse(&ring(), "(1+t)*(1+2*t)*(1+3*t)*(-1-t)").unwrap();
        assert_eq!(m.determinant().unwrap(), expected);
        assert_eq!(m.determinant_bareiss().unwrap(), expected);
    }

    #[test]
    fn bareiss_agrees_with_cofactor_on_linear_forms() {
        let m = mat(&[
            &["x+y", "2*z-t", "x"],
            &["y-3*t", "x+z", "0"],
            &["t", "y", "x-2*y+z"],
        ]);
        assert_eq!(m.determinant_bareiss().unwrap(), m.determinant_cofactor());
    }

    #[test]
    fn bareiss_handles_zero_pivot() {
        let m = mat(&[
            &["0", "x", "1", "y"],
            &["x", "0", "y", "1"],
            &["1", "y", "0", "x"],
            &["y", "1", "x", "z"],
        ]);
        assert_eq!(m.determinant_bareiss().unwrap(), m.determinant_cofactor());
    }
}
