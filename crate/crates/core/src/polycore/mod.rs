//! Commutative polynomial kernel: exact coefficients, multivariate
//! polynomials, Groebner bases, and the nonemptiness decision for locally
//! closed sets over algebraically closed fields.

mod coeff;
mod groebner;
mod monomial;
mod poly;
mod system;

pub use coeff::{is_prime, Coefficient, Domain};
pub use groebner::{groebner_basis, groebner_basis_budgeted, ideal_is_unit, in_radical, in_radical_budgeted, normal_form};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{parse_poly, Poly};
pub use system::LocallyClosedSystem;

use thiserror::Error;

/// Errors from polynomial construction and arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("mixed coefficient domains: {left} vs {right}")]
    DomainMismatch { left: Domain, right: Domain },
    #[error("operation requires a field, got {0}")]
    NotAField(Domain),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{0} is not an integer")]
    NotAnInteger(String),
    #[error("denominator divisible by p = {p}")]
    BadDenominatorModP { p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {characteristic} system cannot hold {domain} coefficients")]
    CharacteristicMismatch { characteristic: u64, domain: Domain },
    #[error("empty generator list")]
    EmptyGeneratorList,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("computation exceeded the step budget of {limit}")]
    BudgetExceeded { limit: usize },
}

/// Exact polynomial ring operations behind one entry point.
pub fn poly_arith(a: &Poly, b: &Poly, kind: ArithKind) -> Result<Poly, PolyError> {
    match kind {
        ArithKind::Add => a.add(b),
        ArithKind::Sub => a.sub(b),
        ArithKind::Mul => a.mul(b),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}
