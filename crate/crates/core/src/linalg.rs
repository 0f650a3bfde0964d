//! Exact dense linear algebra over the coefficient domains.
//!
//! Rational systems are cleared to integers and eliminated fraction-free
//! (Bareiss); mod-p systems use ordinary Gaussian elimination. Kernel bases
//! come out of the reduced row echelon form, so they are canonical for the
//! subspace regardless of how the input rows were produced.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polycore::{Coefficient, Domain};

/// Dense matrix over one coefficient domain, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    data: Vec<Coefficient>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, domain: Domain) -> Self {
        Matrix {
            rows,
            cols,
            domain,
            data: vec![Coefficient::zero(domain); rows * cols],
        }
    }

    pub fn from_rows(domain: Domain, rows: Vec<Vec<Coefficient>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            domain,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Coefficient {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coefficient) {
        self.data[r * self.cols + c] = v;
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.domain {
            Domain::Mod(_) => self.rref_field(),
            Domain::Rat | Domain::Int => self.rref_rational(),
        }
    }

    fn rref_field(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.at(row, col).inv().expect("field element");
            for c in col..m.cols {
                let v = m.at(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c).sub(&m.at(row, c).mul(&f));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    // Fraction-free path: clear each row to integers, run Bareiss
    // single-step elimination to echelon form, then normalize back to the
    // original domain with exact divisions only at the end.
    fn rref_rational(&self) -> (Matrix, Vec<usize>) {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    lcm = num_integer::lcm(lcm, self.at(r, c).denominator());
                }
                (0..self.cols)
                    .map(|c| match self.at(r, c) {
                        Coefficient::Int(v) => v * &lcm,
                        Coefficient::Rat(v) => {
                            let scaled = v * BigRational::from(lcm.clone());
                            debug_assert!(scaled.denom().is_one());
                            scaled.to_integer()
                        }
                        Coefficient::Mod { .. } => unreachable!("rational path"),
                    })
                    .collect()
            })
            .collect();

        let rows = self.rows;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, pr);
            for r in (row + 1)..rows {
                for c in (col + 1)..cols {
                    let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                    debug_assert!((&num % &prev).is_zero());
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            pivots.push(col);
            row += 1;
        }

        // Back substitution in exact rationals, normalizing pivots to one.
        let mut out: Vec<Vec<BigRational>> = m
            .into_iter()
            .map(|row| row.into_iter().map(BigRational::from).collect())
            .collect();
        for (k, &col) in pivots.iter().enumerate().rev() {
            let inv = out[k][col].clone();
            for c in 0..cols {
                out[k][c] = &out[k][c] / &inv;
            }
            for r in 0..k {
                if !out[r][col].is_zero() {
                    let f = out[r][col].clone();
                    for c in 0..cols {
                        let v = &out[r][c] - &f * &out[k][c];
                        out[r][c] = v;
                    }
                }
            }
        }

        let data = out
            .into_iter()
            .flat_map(|row| row.into_iter().map(Coefficient::Rat))
            .collect();
        (
            Matrix {
                rows,
                cols,
                domain: Domain::Rat,
                data,
            },
            pivots,
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column, with a 1 in the
    /// free position and pivot entries filled from the rref.
    pub fn kernel_basis(&self) -> Vec<Vec<Coefficient>> {
        let out_domain = match self.domain {
            Domain::Int => Domain::Rat,
            d => d,
        };
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Coefficient::zero(out_domain); self.cols];
            v[free] = Coefficient::one(out_domain);
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = rref.at(k, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// First canonical kernel vector, if the kernel is nonzero.
    pub fn kernel_vector(&self) -> Option<Vec<Coefficient>> {
        // Same construction as kernel_basis but stops at the first free column.
        let out_domain = match self.domain {
            Domain::Int => Domain::Rat,
            d => d,
        };
        let (rref, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free = (0..self.cols).find(|c| !pivot_set.contains(c))?;
        let mut v = vec![Coefficient::zero(out_domain); self.cols];
        v[free] = Coefficient::one(out_domain);
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = rref.at(k, free).neg();
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            Domain::Rat,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Coefficient::from_i64(Domain::Rat, v))
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // verify M k = 0
        for r in 0..3 {
            let mut acc = Coefficient::zero(Domain::Rat);
            for c in 0..3 {
                acc = acc.add(&m.at(r, c).mul(&k[0][c]));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn kernel_mod_p() {
        let d = Domain::Mod(7);
        let m = Matrix::from_rows(
            d,
            vec![
                vec![Coefficient::from_i64(d, 1), Coefficient::from_i64(d, 3)],
                vec![Coefficient::from_i64(d, 2), Coefficient::from_i64(d, 6)],
            ],
        );
        let k = m.kernel_vector().unwrap();
        let acc = m.at(0, 0).mul(&k[0]).add(&m.at(0, 1).mul(&k[1]));
        assert!(acc.is_zero());
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = qm(&[&[1, 0], &[0, 1]]);
        assert!(m.kernel_vector().is_none());
    }

    #[test]
    fn kernel_is_canonical() {
        // Same row space written two ways gives the same canonical kernel.
        let a = qm(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = qm(&[&[1, 2, 1], &[0, 1, 1], &[1, 1, 0]]);
        assert_eq!(a.kernel_basis(), b.kernel_basis());
    }
}
