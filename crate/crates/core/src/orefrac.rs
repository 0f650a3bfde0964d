//! Degree-bounded arithmetic in the skew field of fractions.
//!
//! Fractions are left fractions `b^{-1} a` throughout. The Ore condition is
//! solved by exact linear algebra on filtration pieces: unknown multiplier
//! coefficients over the monomial basis up to a degree bound, smallest degree
//! first, with the canonical kernel vector as the deterministic answer. A
//! found solution is always re-verified by normalizing `c*b1 - d*b2` to zero.

use std::sync::Arc;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::ncalg::{AlgebraElement, AlgebraError, FamilyInstance};
use crate::polycore::{Coefficient, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OreError {
    #[error("no Ore solution up to degree bound {bound}; raise the bound")]
    NoSolutionAtBound { bound: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot invert zero")]
    DivisionByZero,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Nonzero multipliers with `c * b1 = d * b2`, found at some degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreSolution {
    pub c: AlgebraElement,
    pub d: AlgebraElement,
    pub bound: usize,
}

/// A left fraction `den^{-1} num` with a working degree bound for solves.
#[derive(Debug, Clone)]
pub struct Fraction {
    num: AlgebraElement,
    den: AlgebraElement,
    bound: usize,
}

/// Left-multiplier Ore solve: nonzero `(c, d)` with `c * b1 = d * b2`,
/// minimal degree up to `bound`, deterministic tie-break via the canonical
/// kernel vector of the coefficient system.
pub fn solve_ore(
    b1: &AlgebraElement,
    b2: &AlgebraElement,
    bound: usize,
) -> Result<OreSolution, OreError> {
    solve_linear(b1, b2, bound, Side::Left)
}

/// Right-multiplier variant: nonzero `(c, d)` with `b1 * c = b2 * d`.
pub fn solve_ore_right(
    b1: &AlgebraElement,
    b2: &AlgebraElement,
    bound: usize,
) -> Result<OreSolution, OreError> {
    solve_linear(b1, b2, bound, Side::Right)
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Left,
    Right,
}

fn solve_linear(
    b1: &AlgebraElement,
    b2: &AlgebraElement,
    bound: usize,
    side: Side,
) -> Result<OreSolution, OreError> {
    if b1.is_zero() || b2.is_zero() {
        return Err(OreError::ZeroDenominator);
    }
    let fam = Arc::clone(b1.family());
    // cheap path: proportional inputs. b2 = t*b1 gives c*b1 = d*b2 with
    // (c, d) = (t, 1).
    if let Some(scale) = proportionality(b1, b2) {
        let one = fam.one();
        let c = one.scale(&scale).map_err(OreError::Algebra)?;
        return Ok(OreSolution {
            c,
            d: one,
            bound: 0,
        });
    }

    for deg in 0..=bound {
        let cols = fam.monomials_up_to(deg);
        let target_deg = deg + b1.degree().max(b2.degree());
        let rows_basis = fam.monomials_up_to(target_deg);
        let row_index: std::collections::BTreeMap<&Monomial, usize> =
            rows_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let ncols = 2 * cols.len();
        let mut rows = vec![vec![Coefficient::zero(fam.domain()); ncols]; rows_basis.len()];
        for (k, m) in cols.iter().enumerate() {
            let mono = fam.monomial_element(m.clone(), Coefficient::one(fam.domain()));
            let (p1, p2) = match side {
                Side::Left => (
                    mono.mul(b1).map_err(OreError::Algebra)?,
                    mono.mul(b2).map_err(OreError::Algebra)?,
                ),
                Side::Right => (
                    b1.mul(&mono).map_err(OreError::Algebra)?,
                    b2.mul(&mono).map_err(OreError::Algebra)?,
                ),
            };
            for (mm, c) in p1.terms() {
                rows[row_index[mm]][k] = c.clone();
            }
            for (mm, c) in p2.terms() {
                rows[row_index[mm]][cols.len() + k] = c.neg();
            }
        }
        let matrix = Matrix::from_rows(fam.domain(), rows);
        if let Some(v) = matrix.kernel_vector() {
            let mut c = fam.zero();
            let mut d = fam.zero();
            for (k, m) in cols.iter().enumerate() {
                c.add_term(m.clone(), v[k].clone());
                d.add_term(m.clone(), v[cols.len() + k].clone());
            }
            // in a domain, one side nonzero forces the other
            debug_assert!(!c.is_zero() && !d.is_zero());
            // re-verify the defining identity exactly
            let check = match side {
                Side::Left => c
                    .mul(b1)
                    .map_err(OreError::Algebra)?
                    .sub(&d.mul(b2).map_err(OreError::Algebra)?),
                Side::Right => b1
                    .mul(&c)
                    .map_err(OreError::Algebra)?
                    .sub(&b2.mul(&d).map_err(OreError::Algebra)?),
            };
            debug_assert!(check.map(|x| x.is_zero()).unwrap_or(false));
            return Ok(OreSolution { c, d, bound: deg });
        }
    }
    Err(OreError::NoSolutionAtBound { bound })
}

/// `Some(t)` when `b2 = t * b1` for a scalar `t`.
fn proportionality(b1: &AlgebraElement, b2: &AlgebraElement) -> Option<Coefficient> {
    if b1.num_terms() != b2.num_terms() {
        return None;
    }
    let mut ratio: Option<Coefficient> = None;
    for ((m1, c1), (m2, c2)) in b1.terms().zip(b2.terms()) {
        if m1 != m2 {
            return None;
        }
        let r = c2.div(c1).ok()?;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev == r => {}
            _ => return None,
        }
    }
    ratio
}

impl Fraction {
    /// Build `den^{-1} num`; the denominator must be nonzero.
    pub fn new(den: AlgebraElement, num: AlgebraElement, bound: usize) -> Result<Self, OreError> {
        if den.is_zero() {
            return Err(OreError::ZeroDenominator);
        }
        if !Arc::ptr_eq(den.family(), num.family()) && den.family() != num.family() {
            return Err(OreError::Algebra(AlgebraError::FamilyMismatch));
        }
        Ok(Fraction { num, den, bound })
    }

    /// Embed an algebra element as `1^{-1} a`.
    pub fn from_element(a: AlgebraElement, bound: usize) -> Self {
        let one = a.family().one();
        Fraction {
            num: a,
            den: one,
            bound,
        }
    }

    pub fn zero(fam: &Arc<FamilyInstance>, bound: usize) -> Self {
        Fraction {
            num: fam.zero(),
            den: fam.one(),
            bound,
        }
    }

    pub fn one(fam: &Arc<FamilyInstance>, bound: usize) -> Self {
        Fraction {
            num: fam.one(),
            den: fam.one(),
            bound,
        }
    }

    pub fn num(&self) -> &AlgebraElement {
        &self.num
    }

    pub fn den(&self) -> &AlgebraElement {
        &self.den
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn with_bound(&self, bound: usize) -> Self {
        let mut f = self.clone();
        f.bound = bound;
        f
    }

    pub fn family(&self) -> &Arc<FamilyInstance> {
        self.den.family()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn join_bound(&self, other: &Self) -> usize {
        self.bound.max(other.bound)
    }

    /// Common left denominator: returns `(B, ca, da)` with
    /// `B = c*den1 = d*den2`, numerators transported.
    fn common_denominator(
        &self,
        other: &Self,
    ) -> Result<(AlgebraElement, AlgebraElement, AlgebraElement), OreError> {
        let bound = self.join_bound(other);
        let sol = solve_ore(&self.den, &other.den, bound)?;
        let b = sol.c.mul(&self.den).map_err(OreError::Algebra)?;
        let na = sol.c.mul(&self.num).map_err(OreError::Algebra)?;
        let nb = sol.d.mul(&other.num).map_err(OreError::Algebra)?;
        Ok((b, na, nb))
    }

    pub fn add(&self, other: &Self) -> Result<Self, OreError> {
        let (den, na, nb) = self.common_denominator(other)?;
        Ok(Fraction {
            num: na.add(&nb).map_err(OreError::Algebra)?,
            den,
            bound: self.join_bound(other),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OreError> {
        let (den, na, nb) = self.common_denominator(other)?;
        Ok(Fraction {
            num: na.sub(&nb).map_err(OreError::Algebra)?,
            den,
            bound: self.join_bound(other),
        })
    }

    pub fn neg(&self) -> Self {
        Fraction {
            num: self.num.neg(),
            den: self.den.clone(),
            bound: self.bound,
        }
    }

    /// Product `(b1^-1 a1)(b2^-1 a2)`: move `a1` past `b2^-1` by solving
    /// `c a1 = d b2`, giving `(c b1)^-1 (d a2)`.
    pub fn mul(&self, other: &Self) -> Result<Self, OreError> {
        let bound = self.join_bound(other);
        if self.num.is_zero() || other.num.is_zero() {
            return Ok(Fraction::zero(self.family(), bound));
        }
        let sol = solve_ore(&self.num, &other.den, bound)?;
        Ok(Fraction {
            num: sol.d.mul(&other.num).map_err(OreError::Algebra)?,
            den: sol.c.mul(&self.den).map_err(OreError::Algebra)?,
            bound,
        })
    }

    /// Inverse `(b^-1 a)^-1 = a^-1 b`.
    pub fn inv(&self) -> Result<Self, OreError> {
        if self.num.is_zero() {
            return Err(OreError::DivisionByZero);
        }
        Ok(Fraction {
            num: self.den.clone(),
            den: self.num.clone(),
            bound: self.bound,
        })
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Self, OreError> {
        Ok(Fraction {
            num: self.num.scale(c).map_err(OreError::Algebra)?,
            den: self.den.clone(),
            bound: self.bound,
        })
    }

    /// Exact equality in the skew field: cross-compare over a common left
    /// denominator. A `false` is definitive at any bound that admits the
    /// common denominator.
    pub fn eq_at(&self, other: &Self, bound: usize) -> Result<bool, OreError> {
        let a = self.with_bound(bound);
        let b = other.with_bound(bound);
        let (_, na, nb) = a.common_denominator(&b)?;
        Ok(na == nb)
    }

    pub fn frac_eq(&self, other: &Self) -> Result<bool, OreError> {
        self.eq_at(other, self.join_bound(other))
    }

    /// `uv - vu` as a normalized fraction.
    pub fn commutator(&self, other: &Self) -> Result<Self, OreError> {
        let uv = self.mul(other)?;
        let vu = other.mul(self)?;
        uv.sub(&vu)
    }

    /// Reduce both parts mod `p`; errors if a denominator coefficient dies,
    /// and reports a vanishing reduced denominator as `ZeroDenominator`.
    pub fn reduce_mod(&self, p: u64) -> Result<Self, OreError> {
        let num = self
            .num
            .reduce_mod(p)
            .map_err(|e| OreError::Algebra(AlgebraError::Poly(e)))?;
        let den = self
            .den
            .reduce_mod(p)
            .map_err(|e| OreError::Algebra(AlgebraError::Poly(e)))?;
        if den.is_zero() {
            return Err(OreError::ZeroDenominator);
        }
        Ok(Fraction {
            num,
            den,
            bound: self.bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::parse_element;
    use crate::polycore::Domain;

    fn fam() -> Arc<FamilyInstance> {
        FamilyInstance::weyl(1, 0, Domain::Rat)
    }

    fn el(f: &Arc<FamilyInstance>, s: &str) -> AlgebraElement {
        parse_element(f, s).unwrap()
    }

    #[test]
    fn trivial_ore_solutions() {
        let f = fam();
        let x = el(&f, "x1");
        // b1 = b2 = x -> (1, 1)
        let sol = solve_ore(&x, &x, 4).unwrap();
        assert_eq!(sol.c, f.one());
        assert_eq!(sol.d, f.one());
        // b1 = x, b2 = x^2 -> c x = d x^2 with (c, d) = (x, 1)
        let x2 = el(&f, "x1^2");
        let sol = solve_ore(&x, &x2, 4).unwrap();
        let lhs = sol.c.mul(&x).unwrap();
        let rhs = sol.d.mul(&x2).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(sol.c.degree(), 1);
    }

    #[test]
    fn x_vs_y_needs_degree_two() {
        let f = fam();
        let x = el(&f, "x1");
        let y = el(&f, "y1");
        let sol = solve_ore(&x, &y, 6).unwrap();
        // minimal solution is degree 2: y^2 x = (xy + 2) y
        assert_eq!(sol.bound, 2);
        assert_eq!(sol.c.mul(&x).unwrap(), sol.d.mul(&y).unwrap());
        // canonical form: monic-by-kernel c = y^2, d = xy + 2
        let c_norm = sol.c.clone();
        let lead = c_norm.coeff(&Monomial::new(vec![0, 2]));
        let scale = lead.inv().unwrap();
        assert_eq!(c_norm.scale(&scale).unwrap(), el(&f, "y1^2"));
        assert_eq!(sol.d.scale(&scale).unwrap(), el(&f, "x1*y1 + 2"));
    }

    #[test]
    fn no_solution_at_low_bound() {
        let f = fam();
        let x = el(&f, "x1");
        let y = el(&f, "y1");
        assert!(matches!(
            solve_ore(&x, &y, 1),
            Err(OreError::NoSolutionAtBound { bound: 1 })
        ));
    }

    #[test]
    fn fraction_add_and_cancel() {
        let f = fam();
        let bound = 6;
        let x = Fraction::from_element(el(&f, "x1"), bound);
        let y = Fraction::from_element(el(&f, "y1"), bound);
        let sum = x.add(&y).unwrap();
        assert!(sum
            .frac_eq(&Fraction::from_element(el(&f, "x1 + y1"), bound))
            .unwrap());
        // x^{-1} (x y) = y
        let inv_x_xy = Fraction::new(el(&f, "x1"), el(&f, "x1*y1"), bound).unwrap();
        assert!(inv_x_xy
            .frac_eq(&Fraction::from_element(el(&f, "y1"), bound))
            .unwrap());
        // (x^{-1} 1) * (1^{-1} x) = 1
        let xinv = Fraction::new(el(&f, "x1"), f.one(), bound).unwrap();
        let prod = xinv.mul(&x).unwrap();
        assert!(prod.frac_eq(&Fraction::one(&f, bound)).unwrap());
    }

    #[test]
    fn equivalence_under_common_scaling() {
        let f = fam();
        let bound = 8;
        let a = el(&f, "x1*y1 + 3");
        let b = el(&f, "x1");
        let u = Fraction::new(b.clone(), a.clone(), bound).unwrap();
        let c = el(&f, "x1 + 1");
        let v = Fraction::new(c.mul(&b).unwrap(), c.mul(&a).unwrap(), bound).unwrap();
        assert!(u.frac_eq(&v).unwrap());
        // and x vs y differ
        let x = Fraction::from_element(el(&f, "x1"), bound);
        let y = Fraction::from_element(el(&f, "y1"), bound);
        assert!(!x.frac_eq(&y).unwrap());
    }

    #[test]
    fn scaled_cancellation() {
        let f = fam();
        let bound = 8;
        // (2x)^{-1} (2xy) = y
        let u = Fraction::new(el(&f, "2*x1"), el(&f, "2*x1*y1"), bound).unwrap();
        assert!(u
            .frac_eq(&Fraction::from_element(el(&f, "y1"), bound))
            .unwrap());
    }

    #[test]
    fn weyl_commutator_in_fractions() {
        let f = fam();
        let bound = 8;
        let u = Fraction::from_element(el(&f, "x1"), bound);
        let v = Fraction::from_element(el(&f, "y1"), bound);
        // [u, v] = uv - vu = 1^{-1}(xy - yx) = -1
        let c = u.commutator(&v).unwrap();
        let minus_one = Fraction::from_element(el(&f, "-1"), bound);
        assert!(c.frac_eq(&minus_one).unwrap());
        let zero = u.commutator(&u).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn sl2_witness_pair() {
        use crate::rootsys::{RootSystem, TypeLabel};
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let fam = FamilyInstance::enveloping(rs, Domain::Rat).unwrap();
        let bound = 8;
        let e = parse_element(&fam, "e.1").unwrap();
        let h = parse_element(&fam, "h.1").unwrap();
        let u = Fraction::from_element(e.clone(), bound);
        let v = Fraction::new(
            parse_element(&fam, "2*e.1").unwrap(),
            h.clone(),
            bound,
        )
        .unwrap();
        // [v, u] = 1: the classical witness pair
        let c = v.commutator(&u).unwrap();
        assert!(c.frac_eq(&Fraction::one(&fam, bound)).unwrap());
    }

    #[test]
    fn embedding_is_multiplicative() {
        let f = fam();
        let bound = 8;
        let a = el(&f, "x1*y1 + 2");
        let b = el(&f, "y1^2 - x1");
        let fa = Fraction::from_element(a.clone(), bound);
        let fb = Fraction::from_element(b.clone(), bound);
        let prod = fa.mul(&fb).unwrap();
        let direct = Fraction::from_element(a.mul(&b).unwrap(), bound);
        assert!(prod.frac_eq(&direct).unwrap());
    }
}

/// Parse a certificate fraction literal: `inv(<element>) * (<element>)`, or a
/// bare element meaning `1^{-1} elem`.
pub fn parse_fraction(
    family: &Arc<FamilyInstance>,
    input: &str,
    bound: usize,
) -> Result<Fraction, OreError> {
    use crate::ncalg::parse_element;
    let s = input.trim();
    if let Some(rest) = s.strip_prefix("inv(") {
        let close = matching_paren(rest).ok_or_else(|| {
            OreError::Algebra(AlgebraError::Parse {
                position: 0,
                message: "unbalanced parentheses in inv(...)".to_string(),
            })
        })?;
        let den_src = &rest[..close];
        let tail = rest[close + 1..].trim_start();
        let tail = tail.strip_prefix('*').ok_or_else(|| {
            OreError::Algebra(AlgebraError::Parse {
                position: 0,
                message: "expected '*' after inv(...)".to_string(),
            })
        })?;
        let tail = tail.trim();
        let num_src = tail
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| {
                OreError::Algebra(AlgebraError::Parse {
                    position: 0,
                    message: "expected parenthesized numerator".to_string(),
                })
            })?;
        let den = parse_element(family, den_src).map_err(OreError::Algebra)?;
        let num = parse_element(family, num_src).map_err(OreError::Algebra)?;
        Fraction::new(den, num, bound)
    } else {
        let num = parse_element(family, s).map_err(OreError::Algebra)?;
        Ok(Fraction::from_element(num, bound))
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Canonical fraction literal.
pub fn render_fraction(f: &Fraction) -> String {
    use crate::ncalg::render_element;
    format!(
        "inv({}) * ({})",
        render_element(f.den()),
        render_element(f.num())
    )
}
