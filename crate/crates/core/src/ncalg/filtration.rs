//! Filtration pieces (Bernstein for Weyl kinds, standard for enveloping),
//! invariant subspace bases, and the advisory growth-exponent estimate.

use std::sync::Arc;

use super::{AlgebraElement, AlgebraError, FamilyInstance, FamilyKind};
use crate::linalg::Matrix;
use crate::polycore::{Coefficient, Domain, Monomial};

/// How invariant bases are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantMethod {
    /// Averaging when the group order is invertible, else the linear solve.
    Auto,
    /// Reynolds averaging; errors when p divides the group order.
    Average,
    /// Kernel of the stacked `(rho(g) - 1)` system; works in any
    /// characteristic.
    FixedPointSolve,
}

/// An explicit basis of one filtration level. For invariant kinds this is a
/// basis of the fixed subspace; otherwise the monomial basis itself.
#[derive(Debug, Clone)]
pub struct FiltrationPiece {
    family: Arc<FamilyInstance>,
    level: usize,
    monomials: Vec<Monomial>,
    basis: Vec<AlgebraElement>,
}

impl FiltrationPiece {
    pub fn family(&self) -> &Arc<FamilyInstance> {
        &self.family
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The ambient monomial basis of the level (coordinates refer to it).
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl FamilyInstance {
    /// Filtration piece at `level`; invariant kinds get the fixed-space
    /// basis, computed by averaging when |W| is invertible and by the linear
    /// fixed-point solve otherwise.
    pub fn filtration_piece(self: &Arc<Self>, level: usize) -> Result<FiltrationPiece, AlgebraError> {
        self.filtration_piece_with(level, InvariantMethod::Auto)
    }

    pub fn filtration_piece_with(
        self: &Arc<Self>,
        level: usize,
        method: InvariantMethod,
    ) -> Result<FiltrationPiece, AlgebraError> {
        let monomials = self.monomials_up_to(level);
        let Some(action) = self.group_action() else {
            let basis = monomials
                .iter()
                .map(|m| self.monomial_element(m.clone(), Coefficient::one(self.domain())))
                .collect();
            return Ok(FiltrationPiece {
                family: Arc::clone(self),
                level,
                monomials,
                basis,
            });
        };

        if !self.domain().is_field() {
            // fixed-space bases are cut out by exact linear algebra over a
            // field; the free Z-module ranks agree with the Q-dimensions
            return Err(AlgebraError::Poly(
                crate::polycore::PolyError::NotAField(self.domain()),
            ));
        }
        let p = self.domain().characteristic();
        let averaging_ok = p == 0 || action.order() as u64 % p != 0;
        let method = match method {
            InvariantMethod::Auto => {
                if averaging_ok {
                    InvariantMethod::Average
                } else {
                    InvariantMethod::FixedPointSolve
                }
            }
            m => m,
        };
        if method == InvariantMethod::Average && !averaging_ok {
            return Err(AlgebraError::AveragingBadPrime {
                p,
                order: action.order(),
            });
        }

        let dim = monomials.len();
        let rows = match method {
            InvariantMethod::Average => {
                // Reynolds projections of the monomial basis span the fixed
                // space when |W| is invertible.
                let order_inv = Coefficient::from_i64(self.domain(), action.order() as i64)
                    .inv()
                    .map_err(AlgebraError::Poly)?;
                let mut rows = Vec::with_capacity(dim);
                for m in &monomials {
                    let mono =
                        self.monomial_element(m.clone(), Coefficient::one(self.domain()));
                    let mut acc = self.zero();
                    for g in 0..action.order() {
                        acc = acc.add(&action.apply_index(g, &mono)?)?;
                    }
                    let avg = acc.scale(&order_inv)?;
                    rows.push(avg.coordinates(&monomials));
                }
                let matrix = Matrix::from_rows(self.domain(), rows);
                // canonical basis of the row space
                let (rref, pivots) = matrix.rref();
                (0..pivots.len())
                    .map(|r| (0..dim).map(|c| rref.at(r, c).clone()).collect())
                    .collect::<Vec<Vec<Coefficient>>>()
            }
            InvariantMethod::FixedPointSolve => {
                // Stack (rho(g) - 1) across all elements; kernel = fixed space.
                let mut rows: Vec<Vec<Coefficient>> = Vec::new();
                for g in 0..action.order() {
                    // matrix of rho(g) on the level: columns are images
                    let mut images = Vec::with_capacity(dim);
                    for m in &monomials {
                        let mono =
                            self.monomial_element(m.clone(), Coefficient::one(self.domain()));
                        images.push(action.apply_index(g, &mono)?.coordinates(&monomials));
                    }
                    for r in 0..dim {
                        let mut row = Vec::with_capacity(dim);
                        for (c, img) in images.iter().enumerate() {
                            let mut v = img[r].clone();
                            if r == c {
                                v = v.sub(&Coefficient::one(self.domain()));
                            }
                            row.push(v);
                        }
                        if row.iter().any(|v| !v.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
                if rows.is_empty() {
                    // trivial action
                    let mut basis = Vec::with_capacity(dim);
                    for (i, _) in monomials.iter().enumerate() {
                        let mut v = vec![Coefficient::zero(self.domain()); dim];
                        v[i] = Coefficient::one(self.domain());
                        basis.push(v);
                    }
                    basis
                } else {
                    let kernel = Matrix::from_rows(self.domain(), rows).kernel_basis();
                    // canonicalize: rref of the kernel vectors
                    let (rref, pivots) = Matrix::from_rows(self.domain(), kernel).rref();
                    (0..pivots.len())
                        .map(|r| (0..dim).map(|c| rref.at(r, c).clone()).collect())
                        .collect()
                }
            }
            InvariantMethod::Auto => unreachable!(),
        };

        let basis = rows
            .into_iter()
            .map(|coords| {
                let mut e = self.zero();
                for (m, c) in monomials.iter().zip(coords) {
                    e.add_term(m.clone(), c);
                }
                e
            })
            .collect();
        Ok(FiltrationPiece {
            family: Arc::clone(self),
            level,
            monomials,
            basis,
        })
    }

    /// Smallest level whose piece contains a non-scalar element; 1 for the
    /// full kinds, typically 2 for essential invariant kinds.
    pub fn generator_piece_level(self: &Arc<Self>) -> Result<usize, AlgebraError> {
        if self.group_action().is_none() {
            return Ok(1);
        }
        for level in 1..=4 {
            if self.filtration_piece(level)?.dim() > 1 {
                return Ok(level);
            }
        }
        // the quadratic pairing sum is always fixed, so this is unreachable
        // for the supported actions
        Ok(2)
    }

    /// Generator list: basis of the generator-level piece minus scalars,
    /// normalized to primitive integral vectors over the rationals so the
    /// list is drawn from the integral form.
    pub fn generator_list(self: &Arc<Self>) -> Result<Vec<AlgebraElement>, AlgebraError> {
        let level = self.generator_piece_level()?;
        let piece = self.filtration_piece(level)?;
        piece
            .basis()
            .iter()
            .filter(|e| !e.is_scalar())
            .map(|e| make_primitive(e))
            .collect()
    }
}

// Scale a rational element to a primitive integer-coefficient one.
fn make_primitive(e: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    use num_bigint::BigInt;
    use num_traits::One;
    if e.family().domain() != Domain::Rat {
        return Ok(e.clone());
    }
    let mut lcm = BigInt::one();
    for (_, c) in e.terms() {
        lcm = num_integer::lcm(lcm, c.denominator());
    }
    let scaled = e.scale(&Coefficient::Rat(num_rational::BigRational::from(lcm)))?;
    let mut gcd = BigInt::ZERO;
    for (_, c) in scaled.terms() {
        if let Coefficient::Rat(v) = c {
            gcd = num_integer::gcd(gcd, v.numer().clone());
        }
    }
    if gcd.is_one() || gcd == BigInt::ZERO {
        return Ok(scaled);
    }
    let inv = Coefficient::Rat(num_rational::BigRational::from(gcd).recip());
    scaled.scale(&inv)
}

/// Growth-exponent estimate from `log dim B_j` against `log j` over
/// `j in [jmax/2, jmax]`: an advisory Gelfand-Kirillov dimension estimate,
/// not a proof.
///
/// The raw least-squares slope of a binomial-type dimension count carries an
/// O(1/j) finite-size bias, so the local slopes are fitted against `1/j` and
/// the extrapolated intercept is returned; span-2 differences damp parity
/// oscillation in invariant dimension counts.
pub fn growth_exponent(fam: &Arc<FamilyInstance>, jmax: usize) -> Result<f64, AlgebraError> {
    assert!(jmax >= 4, "growth estimate needs jmax >= 4");
    let lo = jmax / 2;
    let mut dims = Vec::new();
    for j in lo..=jmax {
        let dim = match fam.kind() {
            FamilyKind::WeylFull { .. } | FamilyKind::Enveloping { .. } => fam.ambient_dim(j),
            _ => fam.filtration_piece(j)?.dim(),
        };
        dims.push((j as f64, dim as f64));
    }
    // local slope over a span of two levels, one sample per j >= lo + 2
    let mut xs = Vec::new(); // 1/j
    let mut ys = Vec::new(); // local slope
    for k in 2..dims.len() {
        let (j0, d0) = dims[k - 2];
        let (j2, d2) = dims[k];
        xs.push(1.0 / j2);
        ys.push((d2.ln() - d0.ln()) / (j2.ln() - j0.ln()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        return Ok(my);
    }
    let slope = num / den;
    Ok(my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::rootsys::{RootSystem, TypeLabel, DEFAULT_WEYL_CAP};

    #[test]
    fn weyl_piece_dims() {
        let fam = FamilyInstance::weyl(1, 0, Domain::Rat);
        let piece = fam.filtration_piece(2).unwrap();
        assert_eq!(piece.dim(), 6); // 1, x, y, x^2, xy, y^2
    }

    #[test]
    fn sl2_level_one() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let fam = FamilyInstance::enveloping(rs, Domain::Rat).unwrap();
        assert_eq!(fam.filtration_piece(1).unwrap().dim(), 4); // 1, e, h, f
    }

    #[test]
    fn invariant_piece_dimension_even_monomials() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let fam =
            FamilyInstance::weyl_invariants(rs, DEFAULT_WEYL_CAP, Domain::Rat).unwrap();
        // fixed space of x -> -x, y -> -y at level 2: {1, x^2, xy, y^2}
        let piece = fam.filtration_piece(2).unwrap();
        assert_eq!(piece.dim(), 4);
        // every basis vector is fixed
        let action = fam.group_action().unwrap();
        for b in piece.basis() {
            assert!(action.fixes(b).unwrap());
        }
        assert_eq!(fam.generator_piece_level().unwrap(), 2);
        assert_eq!(fam.generator_list().unwrap().len(), 3);
    }

    #[test]
    fn averaging_and_solve_agree() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let fam =
            FamilyInstance::weyl_invariants(rs, DEFAULT_WEYL_CAP, Domain::Rat).unwrap();
        for level in 0..=4 {
            let a = fam
                .filtration_piece_with(level, InvariantMethod::Average)
                .unwrap();
            let b = fam
                .filtration_piece_with(level, InvariantMethod::FixedPointSolve)
                .unwrap();
            assert_eq!(a.basis(), b.basis());
        }
    }

    #[test]
    fn averaging_rejected_when_p_divides_order() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let fam =
            FamilyInstance::weyl_invariants(rs, DEFAULT_WEYL_CAP, Domain::Mod(2)).unwrap();
        assert!(matches!(
            fam.filtration_piece_with(2, InvariantMethod::Average),
            Err(AlgebraError::AveragingBadPrime { p: 2, order: 2 })
        ));
        // the general solve still works
        let piece = fam
            .filtration_piece_with(2, InvariantMethod::FixedPointSolve)
            .unwrap();
        assert_eq!(piece.dim(), 6); // in char 2 the sign action is trivial
    }

    #[test]
    fn growth_estimates() {
        let a1 = FamilyInstance::weyl(1, 0, Domain::Rat);
        assert!((growth_exponent(&a1, 20).unwrap() - 2.0).abs() < 0.2);
        let toy = FamilyInstance::weyl(0, 1, Domain::Rat); // Q[z]
        assert!((growth_exponent(&toy, 20).unwrap() - 1.0).abs() < 0.2);
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let sl2 = FamilyInstance::enveloping(rs, Domain::Rat).unwrap();
        assert!((growth_exponent(&sl2, 20).unwrap() - 3.0).abs() < 0.2);
    }

    #[test]
    fn piece_products_stay_in_sum_level() {
        let fam = FamilyInstance::weyl(1, 0, Domain::Rat);
        let b1 = fam.filtration_piece(1).unwrap();
        let b2 = fam.filtration_piece(2).unwrap();
        for a in b1.basis() {
            for b in b2.basis() {
                assert!(a.mul(b).unwrap().degree() <= 3);
            }
        }
    }
}
