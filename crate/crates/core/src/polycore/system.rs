//! Locally closed systems `{ f_i = 0, some g_j != 0 }` and the nonemptiness
//! decision over the algebraic closure of the prime field.

use super::coeff::{is_prime, Domain};
use super::groebner::{groebner_basis_budgeted, ideal_is_unit, in_radical_budgeted};
use super::monomial::MonomialOrder;
use super::poly::Poly;
use super::PolyError;

/// Equations plus at-least-one-nonvanishing constraints over a fixed
/// characteristic. Characteristic 0 systems carry integer or rational
/// coefficients; characteristic `p` systems carry mod-p coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocallyClosedSystem {
    arity: usize,
    characteristic: u64,
    equations: Vec<Poly>,
    inequations: Vec<Poly>,
}

impl LocallyClosedSystem {
    pub fn new(
        arity: usize,
        characteristic: u64,
        equations: Vec<Poly>,
        inequations: Vec<Poly>,
    ) -> Result<Self, PolyError> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(PolyError::NotPrime(characteristic));
        }
        for p in equations.iter().chain(&inequations) {
            if p.arity() != arity {
                return Err(PolyError::ArityMismatch {
                    left: arity,
                    right: p.arity(),
                });
            }
            let ok = match p.domain() {
                Domain::Int | Domain::Rat => characteristic == 0,
                Domain::Mod(q) => characteristic == q,
            };
            if !ok {
                return Err(PolyError::CharacteristicMismatch {
                    characteristic,
                    domain: p.domain(),
                });
            }
        }
        Ok(LocallyClosedSystem {
            arity,
            characteristic,
            equations,
            inequations,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn inequations(&self) -> &[Poly] {
        &self.inequations
    }

    fn field_polys(polys: &[Poly]) -> Result<Vec<Poly>, PolyError> {
        polys
            .iter()
            .map(|p| match p.domain() {
                Domain::Int => p.lift_to_rat(),
                _ => Ok(p.clone()),
            })
            .collect()
    }

    /// True iff the locally closed set has a point over the algebraic closure.
    ///
    /// Rule: with inequations present, nonempty iff some `g_j` lies outside
    /// the radical of the equation ideal; with none, nonempty iff 1 is not in
    /// the equation ideal.
    pub fn decide_nonempty(&self) -> Result<bool, PolyError> {
        self.decide_nonempty_budgeted(None)
    }

    /// `decide_nonempty` with an optional S-pair budget per Groebner run.
    pub fn decide_nonempty_budgeted(&self, budget: Option<usize>) -> Result<bool, PolyError> {
        let order = MonomialOrder::degrevlex();
        let eqs = Self::field_polys(&self.equations)?;
        let ineqs = Self::field_polys(&self.inequations)?;
        let domain = if self.characteristic == 0 {
            Domain::Rat
        } else {
            Domain::Mod(self.characteristic)
        };

        let eqs: Vec<Poly> = eqs.into_iter().filter(|p| !p.is_zero()).collect();
        if eqs.is_empty() {
            // V(0) is the whole space; any nonzero g survives somewhere.
            if self.inequations.is_empty() {
                return Ok(true);
            }
            return Ok(ineqs.iter().any(|g| !g.is_zero()));
        }

        let gb = groebner_basis_budgeted(&eqs, &order, budget)?;
        let unit = ideal_is_unit(&gb);
        if self.inequations.is_empty() {
            return Ok(!unit);
        }
        if unit {
            return Ok(false);
        }
        let _ = domain;
        for g in &ineqs {
            if !in_radical_budgeted(g, &gb, &order, budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::poly::parse_poly;

    fn q(s: &str, arity: usize) -> Poly {
        parse_poly(s, arity, Domain::Rat).unwrap()
    }

    #[test]
    fn closed_point_exists_over_closure() {
        // x^2 + 1 = 0 has a point over the closure of Q
        let sys = LocallyClosedSystem::new(1, 0, vec![q("v0^2 + 1", 1)], vec![]).unwrap();
        assert!(sys.decide_nonempty().unwrap());
    }

    #[test]
    fn inequation_kills_its_own_zero_set() {
        let sys =
            LocallyClosedSystem::new(1, 0, vec![q("v0", 1)], vec![q("v0", 1)]).unwrap();
        assert!(!sys.decide_nonempty().unwrap());
    }

    #[test]
    fn sqrt_two_is_nonzero() {
        let sys =
            LocallyClosedSystem::new(1, 0, vec![q("v0^2 - 2", 1)], vec![q("v0", 1)]).unwrap();
        assert!(sys.decide_nonempty().unwrap());
    }

    #[test]
    fn unit_ideal_is_empty() {
        let sys = LocallyClosedSystem::new(1, 0, vec![q("1", 1)], vec![]).unwrap();
        assert!(!sys.decide_nonempty().unwrap());
    }

    #[test]
    fn characteristic_domain_checked() {
        let bad = LocallyClosedSystem::new(1, 5, vec![q("v0", 1)], vec![]);
        assert!(matches!(bad, Err(PolyError::CharacteristicMismatch { .. })));
        let notp = LocallyClosedSystem::new(
            1,
            6,
            vec![parse_poly("v0", 1, Domain::Mod(5)).unwrap()],
            vec![],
        );
        assert!(matches!(notp, Err(PolyError::NotPrime(6))));
    }
}
