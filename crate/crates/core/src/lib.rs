//! Exact computational algebra for noncommutative birational equivalence:
//! Groebner-based decision over algebraically closed fields, root systems and
//! Chevalley bases, Weyl/enveloping algebra arithmetic, Ore fractions, witness
//! certificate verification with modular reduction, and emission of the
//! associated existential sentences.

pub mod gkcert;
pub mod linalg;
pub mod ncalg;
pub mod orefrac;
pub mod polycore;
pub mod rootsys;
pub mod sentc;

pub use polycore::{
    Coefficient, Domain, LocallyClosedSystem, Monomial, MonomialOrder, Poly, PolyError,
};
pub use gkcert::{CertError, VerificationReport, WitnessCertificate};
pub use ncalg::{AlgebraElement, AlgebraError, FamilyInstance, FamilyKind, FiltrationPiece, GroupAction};
pub use orefrac::{Fraction, OreError, OreSolution};
pub use sentc::{BoundProfile, Decision, ExistentialSentence, SentError};
pub use rootsys::{ChevalleyBasis, RootSystem, RootSystemError, TypeLabel, WeylGroupElement};
