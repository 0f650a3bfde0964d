//! Exact arithmetic in the two integer-compatible families: Weyl algebras
//! (optionally with adjoined central variables and a finite linear group
//! action) and enveloping algebras of Chevalley integral forms.
//!
//! Elements are kept in normal form over a fixed generator sequence:
//! `x1..xn, y1..yn, z1..zl` for Weyl families and `e's < h's < f's` (PBW) for
//! enveloping families. Multiplication straightens exactly; coefficients live
//! in one of the polycore domains.

mod action;
mod filtration;
mod parse;

pub use action::GroupAction;
pub use filtration::{growth_exponent, FiltrationPiece, InvariantMethod};
pub use parse::{parse_element, render_element};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::polycore::{Coefficient, Domain, Monomial, PolyError};
use crate::rootsys::{weyl_group, ChevalleyBasis, RootSystem, RootSystemError, WeylGroupElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to different families")]
    FamilyMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("no group action is defined for this family")]
    UndefinedAction,
    #[error("group action does not preserve the defining relations")]
    ActionRelationViolation,
    #[error("operation unavailable in characteristic {0}")]
    BadCharacteristic(u64),
    #[error("averaging requested but p = {p} divides the group order {order}")]
    AveragingBadPrime { p: u64, order: usize },
    #[error("casimir is only defined for the type-A1 enveloping family")]
    CasimirUnavailable,
    #[error("element parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("generator index out of range: {0}")]
    GeneratorRange(usize),
}

/// Which algebra family an instance belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// Weyl algebra A_n, with `central` commuting variables adjoined.
    WeylFull { n: usize },
    /// U(g) for the Chevalley integral form of the given root system.
    Enveloping {
        rs: RootSystem,
        basis: ChevalleyBasis,
    },
    /// A_n with the crystallographic action of the Weyl group of `rs`;
    /// elements live in the ambient Weyl algebra.
    WeylInvariants {
        rs: RootSystem,
        action: GroupAction,
    },
    /// A_n with a permutation action given by generators; elements live in
    /// the ambient Weyl algebra.
    PermInvariants {
        n: usize,
        action: GroupAction,
    },
}

/// An instantiated family member: kind, coefficient domain, adjoined central
/// variable count, and the Chevalley sign convention id for enveloping kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    kind: FamilyKind,
    domain: Domain,
    central: usize,
    sign_convention: String,
}

impl FamilyInstance {
    pub fn weyl(n: usize, central: usize, domain: Domain) -> Arc<Self> {
        Arc::new(FamilyInstance {
            kind: FamilyKind::WeylFull { n },
            domain,
            central,
            sign_convention: String::new(),
        })
    }

    pub fn enveloping(rs: RootSystem, domain: Domain) -> Result<Arc<Self>, AlgebraError> {
        let basis = rs.chevalley_constants()?;
        Ok(Arc::new(FamilyInstance {
            kind: FamilyKind::Enveloping { rs, basis },
            domain,
            central: 0,
            sign_convention: crate::rootsys::SIGN_CONVENTION.to_string(),
        }))
    }

    /// Invariants of the Weyl algebra A_rank under the crystallographic
    /// action of the Weyl group of `rs`.
    pub fn weyl_invariants(
        rs: RootSystem,
        weyl_cap: usize,
        domain: Domain,
    ) -> Result<Arc<Self>, AlgebraError> {
        let group = weyl_group(&rs, weyl_cap)?;
        // The action is built against the plain ambient family and then
        // attached to the invariant instance.
        let ambient = FamilyInstance::weyl(rs.rank(), 0, domain);
        let action = GroupAction::from_weyl_group(&ambient, &rs, &group)?;
        Ok(Arc::new(FamilyInstance {
            kind: FamilyKind::WeylInvariants { rs, action },
            domain,
            central: 0,
            sign_convention: String::new(),
        }))
    }

    /// Invariants of A_n under a permutation group given by generators
    /// (images of 1..n, zero-based).
    pub fn perm_invariants(
        n: usize,
        perm_gens: &[Vec<usize>],
        domain: Domain,
    ) -> Result<Arc<Self>, AlgebraError> {
        let ambient = FamilyInstance::weyl(n, 0, domain);
        let action = GroupAction::from_permutations(&ambient, n, perm_gens)?;
        Ok(Arc::new(FamilyInstance {
            kind: FamilyKind::PermInvariants { n, action },
            domain,
            central: 0,
            sign_convention: String::new(),
        }))
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn central_count(&self) -> usize {
        self.central
    }

    pub fn sign_convention(&self) -> &str {
        &self.sign_convention
    }

    pub fn group_action(&self) -> Option<&GroupAction> {
        match &self.kind {
            FamilyKind::WeylInvariants { action, .. } => Some(action),
            FamilyKind::PermInvariants { action, .. } => Some(action),
            _ => None,
        }
    }

    /// Number of Weyl pairs in the ambient algebra (0 for enveloping kinds).
    pub fn weyl_pairs(&self) -> usize {
        match &self.kind {
            FamilyKind::WeylFull { n } => *n,
            FamilyKind::WeylInvariants { rs, .. } => rs.rank(),
            FamilyKind::PermInvariants { n, .. } => *n,
            FamilyKind::Enveloping { .. } => 0,
        }
    }

    pub fn generator_count(&self) -> usize {
        match &self.kind {
            FamilyKind::WeylFull { n } => 2 * n + self.central,
            FamilyKind::WeylInvariants { rs, .. } => 2 * rs.rank(),
            FamilyKind::PermInvariants { n, .. } => 2 * n,
            FamilyKind::Enveloping { rs, .. } => rs.dimension(),
        }
    }

    /// Expected Tdeg of the skew fraction field: 2n + l for Weyl kinds,
    /// dim(g) for enveloping kinds, 2n for invariant kinds.
    pub fn expected_tdeg(&self) -> usize {
        match &self.kind {
            FamilyKind::WeylFull { n } => 2 * n + self.central,
            FamilyKind::WeylInvariants { rs, .. } => 2 * rs.rank(),
            FamilyKind::PermInvariants { n, .. } => 2 * n,
            FamilyKind::Enveloping { rs, .. } => rs.dimension(),
        }
    }

    /// Same family up to the coefficient domain.
    pub fn same_presentation(&self, other: &Self) -> bool {
        self.central == other.central
            && match (&self.kind, &other.kind) {
                (FamilyKind::WeylFull { n: a }, FamilyKind::WeylFull { n: b }) => a == b,
                (
                    FamilyKind::Enveloping { rs: a, .. },
                    FamilyKind::Enveloping { rs: b, .. },
                ) => a == b,
                (
                    FamilyKind::WeylInvariants { rs: a, .. },
                    FamilyKind::WeylInvariants { rs: b, .. },
                ) => a == b,
                (
                    FamilyKind::PermInvariants { n: a, action: ga },
                    FamilyKind::PermInvariants { n: b, action: gb },
                ) => a == b && ga.order() == gb.order(),
                _ => false,
            }
    }

    /// The same family over a different coefficient domain.
    pub fn with_domain(self: &Arc<Self>, domain: Domain) -> Arc<Self> {
        if domain == self.domain {
            return Arc::clone(self);
        }
        Arc::new(FamilyInstance {
            kind: self.kind.clone(),
            domain,
            central: self.central,
            sign_convention: self.sign_convention.clone(),
        })
    }

    /// All normal-form monomials of total degree at most `level`, ascending
    /// in the (degree, lex) storage order.
    pub fn monomials_up_to(&self, level: usize) -> Vec<Monomial> {
        let g = self.generator_count();
        let mut out = Vec::new();
        let mut current = vec![0u32; g];
        fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, left: u32) {
            if pos + 1 == current.len() {
                for e in 0..=left {
                    current[pos] = e;
                    out.push(current.clone());
                }
                current[pos] = 0;
                return;
            }
            for e in 0..=left {
                current[pos] = e;
                rec(out, current, pos + 1, left - e);
            }
            current[pos] = 0;
        }
        let mut raw = Vec::new();
        if g == 0 {
            raw.push(Vec::new());
        } else {
            rec(&mut raw, &mut current, 0, level as u32);
        }
        let mut monos: Vec<Monomial> = raw.into_iter().map(Monomial::new).collect();
        monos.sort();
        out.extend(monos);
        out
    }

    /// Dimension of the full (non-invariant) filtration level.
    pub fn ambient_dim(&self, level: usize) -> usize {
        // C(level + g, g)
        let g = self.generator_count();
        let mut acc: u128 = 1;
        for i in 1..=g {
            acc = acc * (level as u128 + i as u128) / i as u128;
        }
        acc as usize
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement {
            family: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        self.scalar(Coefficient::one(self.domain))
    }

    pub fn scalar(self: &Arc<Self>, c: Coefficient) -> AlgebraElement {
        assert_eq!(c.domain(), self.domain);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(self.generator_count()), c);
        }
        AlgebraElement {
            family: Arc::clone(self),
            terms,
        }
    }

    pub fn generator(self: &Arc<Self>, idx: usize) -> Result<AlgebraElement, AlgebraError> {
        let g = self.generator_count();
        if idx >= g {
            return Err(AlgebraError::GeneratorRange(idx));
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(g, idx), Coefficient::one(self.domain));
        Ok(AlgebraElement {
            family: Arc::clone(self),
            terms,
        })
    }

    pub fn monomial_element(self: &Arc<Self>, m: Monomial, c: Coefficient) -> AlgebraElement {
        let mut out = self.zero();
        out.add_term(m, c);
        out
    }

    /// Printable generator name for index `idx`.
    pub fn generator_name(&self, idx: usize) -> String {
        match &self.kind {
            FamilyKind::WeylFull { n } => {
                let n = *n;
                if idx < n {
                    format!("x{}", idx + 1)
                } else if idx < 2 * n {
                    format!("y{}", idx - n + 1)
                } else {
                    format!("z{}", idx - 2 * n + 1)
                }
            }
            FamilyKind::WeylInvariants { rs, .. } => {
                let n = rs.rank();
                if idx < n {
                    format!("x{}", idx + 1)
                } else {
                    format!("y{}", idx - n + 1)
                }
            }
            FamilyKind::PermInvariants { n, .. } => {
                if idx < *n {
                    format!("x{}", idx + 1)
                } else {
                    format!("y{}", idx - n + 1)
                }
            }
            FamilyKind::Enveloping { rs, .. } => {
                let np = rs.num_positive();
                let n = rs.rank();
                if idx < np {
                    format!("e.{}", idx + 1)
                } else if idx < np + n {
                    format!("h.{}", idx - np + 1)
                } else {
                    format!("f.{}", idx - np - n + 1)
                }
            }
        }
    }

    // Generator index translation between the PBW order (e's < h's < f's)
    // and the ChevalleyBasis layout (e's, f's, h's).
    fn gen_to_cb(&self, idx: usize) -> usize {
        let FamilyKind::Enveloping { rs, .. } = &self.kind else {
            unreachable!("cb index only for enveloping");
        };
        let np = rs.num_positive();
        let n = rs.rank();
        if idx < np {
            idx
        } else if idx < np + n {
            2 * np + (idx - np)
        } else {
            np + (idx - np - n)
        }
    }

    fn cb_to_gen(&self, idx: usize) -> usize {
        let FamilyKind::Enveloping { rs, .. } = &self.kind else {
            unreachable!("cb index only for enveloping");
        };
        let np = rs.num_positive();
        let n = rs.rank();
        if idx < np {
            idx
        } else if idx < 2 * np {
            np + n + (idx - np)
        } else {
            np + (idx - 2 * np)
        }
    }

    /// The quadratic central element `ef + fe + h^2/2` of the type-A1
    /// enveloping family. Needs 1/2, hence a field of characteristic != 2.
    pub fn casimir(self: &Arc<Self>) -> Result<AlgebraElement, AlgebraError> {
        let FamilyKind::Enveloping { rs, .. } = &self.kind else {
            return Err(AlgebraError::CasimirUnavailable);
        };
        if !(rs.type_label() == crate::rootsys::TypeLabel::A && rs.rank() == 1) {
            return Err(AlgebraError::CasimirUnavailable);
        }
        if self.domain.characteristic() == 2 {
            return Err(AlgebraError::BadCharacteristic(2));
        }
        let half = Coefficient::from_ratio(self.domain, BigInt::one(), BigInt::from(2))?;
        let e = self.generator(0)?;
        let h = self.generator(1)?;
        let f = self.generator(2)?;
        let ef = e.mul(&f)?;
        let fe = f.mul(&e)?;
        let hh = h.mul(&h)?.scale(&half)?;
        ef.add(&fe)?.add(&hh)
    }
}

/// An element in normal form: a map from normal monomials over the family's
/// generator sequence to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    family: Arc<FamilyInstance>,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl AlgebraElement {
    pub fn family(&self) -> &Arc<FamilyInstance> {
        &self.family
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coefficient {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Coefficient::zero(self.family.domain))
    }

    /// Filtration degree: the maximal total degree of a stored monomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.degree() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Coefficient) {
        debug_assert_eq!(m.arity(), self.family.generator_count());
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(c.domain(), self.family.domain);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_family(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.family, &other.family) || self.family == other.family {
            Ok(())
        } else {
            Err(AlgebraError::FamilyMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_family(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_family(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.family.zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Self, AlgebraError> {
        if c.domain() != self.family.domain {
            return Err(AlgebraError::Poly(PolyError::DomainMismatch {
                left: self.family.domain,
                right: c.domain(),
            }));
        }
        let mut out = self.family.zero();
        if c.is_zero() {
            return Ok(out);
        }
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k.mul(c));
        }
        Ok(out)
    }

    /// Exact product in normal form. Degrees add: `deg(ab) = deg a + deg b`
    /// for nonzero operands.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_family(other)?;
        let mut out = self.family.zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = self.family.mul_monomials(ma, mb);
                let c = ca.mul(cb);
                for (m, k) in prod.terms {
                    out.add_term(m, k.mul(&c));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Reduce an integer or rational element mod `p`; `None` when a
    /// denominator dies.
    pub fn reduce_mod(&self, p: u64) -> Result<Self, PolyError> {
        let family = self.family.with_domain(Domain::Mod(p));
        let mut out = family.zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Lift an integer element into the rational family.
    pub fn lift_to_rat(&self) -> Result<Self, PolyError> {
        let family = self.family.with_domain(Domain::Rat);
        let mut out = family.zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.lift_to_rat()?);
        }
        Ok(out)
    }

    /// Coordinates over an externally supplied monomial list.
    pub fn coordinates(&self, monomials: &[Monomial]) -> Vec<Coefficient> {
        monomials.iter().map(|m| self.coeff(m)).collect()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_element(self))
    }
}

impl FamilyInstance {
    /// Normal-form product of two normal monomials.
    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> AlgebraElementParts {
        match &self.kind {
            FamilyKind::WeylFull { n } => weyl_mul_monomials(self, *n, self.central, a, b),
            FamilyKind::WeylInvariants { rs, .. } => {
                weyl_mul_monomials(self, rs.rank(), 0, a, b)
            }
            FamilyKind::PermInvariants { n, .. } => weyl_mul_monomials(self, *n, 0, a, b),
            FamilyKind::Enveloping { .. } => {
                let mut acc = AlgebraElementParts::monomial(a.clone(), self.domain);
                for (idx, &e) in b.exps().iter().enumerate() {
                    for _ in 0..e {
                        acc = self.parts_right_mul_gen(acc, idx);
                    }
                }
                acc
            }
        }
    }

    fn parts_right_mul_gen(&self, parts: AlgebraElementParts, g: usize) -> AlgebraElementParts {
        let mut out = AlgebraElementParts::zero();
        for (m, c) in parts.terms {
            let prod = self.mono_right_mul_gen(&m, g);
            for (pm, pc) in prod.terms {
                out.add(pm, pc.mul(&c));
            }
        }
        out
    }

    // PBW straightening: multiply a normal monomial by one generator on the
    // right, rewriting inversions through the bracket table.
    fn mono_right_mul_gen(&self, m: &Monomial, g: usize) -> AlgebraElementParts {
        let FamilyKind::Enveloping { basis, .. } = &self.kind else {
            unreachable!("straightening only for enveloping kinds");
        };
        let top = (0..m.arity()).rev().find(|&i| m.exp(i) > 0);
        match top {
            None => AlgebraElementParts::monomial(bump(m, g), self.domain),
            Some(a) if a <= g => AlgebraElementParts::monomial(bump(m, g), self.domain),
            Some(a) => {
                // m = nu * gen_a with a > g:  m*g = (nu*g)*a + nu*[a, g]
                let nu = unbump(m, a);
                let nug = self.mono_right_mul_gen(&nu, g);
                let mut out = self.parts_right_mul_gen(nug, a);
                for (cb_idx, k) in basis.bracket_basis(self.gen_to_cb(a), self.gen_to_cb(g)) {
                    let gen_idx = self.cb_to_gen(cb_idx);
                    let scale = Coefficient::from_i64(self.domain, k);
                    let term = self.mono_right_mul_gen(&nu, gen_idx);
                    for (tm, tc) in term.terms {
                        out.add(tm, tc.mul(&scale));
                    }
                }
                out
            }
        }
    }
}

fn bump(m: &Monomial, g: usize) -> Monomial {
    let mut exps = m.exps().to_vec();
    exps[g] += 1;
    Monomial::new(exps)
}

fn unbump(m: &Monomial, g: usize) -> Monomial {
    let mut exps = m.exps().to_vec();
    debug_assert!(exps[g] > 0);
    exps[g] -= 1;
    Monomial::new(exps)
}

// Lightweight term accumulator used inside straightening, without the family
// pointer of a full AlgebraElement.
struct AlgebraElementParts {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl AlgebraElementParts {
    fn zero() -> Self {
        AlgebraElementParts {
            terms: BTreeMap::new(),
        }
    }

    fn monomial(m: Monomial, domain: Domain) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Coefficient::one(domain));
        AlgebraElementParts { terms }
    }

    fn add(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

/// Closed-form Weyl straightening: independent index pairs commute through
/// `y^m x^k = sum_t t! C(m,t) C(k,t) x^(k-t) y^(m-t)`; central variables
/// commute with everything.
fn weyl_mul_monomials(
    fam: &FamilyInstance,
    n: usize,
    _central: usize,
    a: &Monomial,
    b: &Monomial,
) -> AlgebraElementParts {
    let domain = fam.domain;
    let g = a.arity();
    // Split: a = x^ax y^ay z^az, b = x^bx y^by z^bz.
    // a*b = x^ax (y^ay x^bx) y^by z^(az+bz), per index independently.
    let mut out = AlgebraElementParts::zero();
    // iterate over choices t_i in 0..=min(ay_i, bx_i)
    let maxes: Vec<u32> = (0..n).map(|i| a.exp(n + i).min(b.exp(i))).collect();
    let mut t = vec![0u32; n];
    loop {
        let mut coef = BigInt::one();
        for i in 0..n {
            coef *= falling_product(a.exp(n + i), t[i]) * binomial(b.exp(i), t[i]);
        }
        let mut exps = vec![0u32; g];
        for i in 0..n {
            exps[i] = a.exp(i) + b.exp(i) - t[i];
            exps[n + i] = a.exp(n + i) + b.exp(n + i) - t[i];
        }
        for j in (2 * n)..g {
            exps[j] = a.exp(j) + b.exp(j);
        }
        out.add(
            Monomial::new(exps),
            Coefficient::from_bigint(domain, coef),
        );
        // odometer over t
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            if t[pos] < maxes[pos] {
                t[pos] += 1;
                break;
            }
            t[pos] = 0;
            pos += 1;
        }
    }
}

/// `t! * C(m, t)` computed as the falling factorial m (m-1) ... (m-t+1).
fn falling_product(m: u32, t: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..t {
        acc *= BigInt::from(m - k);
    }
    acc
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Spec-level entry point: the conjugation action of a Weyl group element on
/// an element of a Weyl-invariants family.
pub fn act(g: &WeylGroupElement, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    let action = a
        .family()
        .group_action()
        .ok_or(AlgebraError::UndefinedAction)?;
    action.apply_matrix(g.matrix(), a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLabel;

    fn a1_weyl() -> Arc<FamilyInstance> {
        FamilyInstance::weyl(1, 0, Domain::Rat)
    }

    fn u_sl2() -> Arc<FamilyInstance> {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        FamilyInstance::enveloping(rs, Domain::Rat).unwrap()
    }

    #[test]
    fn weyl_relation() {
        let fam = a1_weyl();
        let x = fam.generator(0).unwrap();
        let y = fam.generator(1).unwrap();
        // y x = x y + 1
        let yx = y.mul(&x).unwrap();
        let expected = x.mul(&y).unwrap().add(&fam.one()).unwrap();
        assert_eq!(yx, expected);
    }

    #[test]
    fn weyl_square_example() {
        let fam = a1_weyl();
        let x = fam.generator(0).unwrap();
        let y = fam.generator(1).unwrap();
        let xy = x.mul(&y).unwrap();
        // (xy)(xy) = x^2 y^2 + x y
        let sq = xy.mul(&xy).unwrap();
        let x2y2 = x.mul(&x).unwrap().mul(&y).unwrap().mul(&y).unwrap();
        assert_eq!(sq, x2y2.add(&xy).unwrap());
    }

    #[test]
    fn pbw_reorder() {
        let fam = u_sl2();
        let e = fam.generator(0).unwrap();
        let h = fam.generator(1).unwrap();
        let f = fam.generator(2).unwrap();
        // e f = f e + h as normal forms: f*e must come out as ef - h
        let fe = f.mul(&e).unwrap();
        assert_eq!(fe, e.mul(&f).unwrap().sub(&h).unwrap());
        // [h, e] = 2e
        assert_eq!(
            h.commutator(&e).unwrap(),
            e.scale(&Coefficient::from_i64(Domain::Rat, 2)).unwrap()
        );
    }

    #[test]
    fn degrees_add() {
        let fam = a1_weyl();
        let x = fam.generator(0).unwrap();
        let y = fam.generator(1).unwrap();
        let a = x.mul(&y).unwrap().add(&fam.one()).unwrap(); // deg 2
        let b = y.mul(&y).unwrap(); // deg 2
        assert_eq!(a.mul(&b).unwrap().degree(), 4);
    }

    #[test]
    fn casimir_is_central() {
        let fam = u_sl2();
        let c = fam.casimir().unwrap();
        for i in 0..3 {
            let g = fam.generator(i).unwrap();
            assert!(c.commutator(&g).unwrap().is_zero());
        }
        // normal form is 2ef + h^2/2 - h
        let rendered = render_element(&c);
        assert_eq!(rendered, "2*e.1*f.1 + 1/2*h.1^2 - h.1");
    }

    #[test]
    fn casimir_rejects_char_two() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let fam = FamilyInstance::enveloping(rs, Domain::Mod(2)).unwrap();
        assert!(matches!(
            fam.casimir(),
            Err(AlgebraError::BadCharacteristic(2))
        ));
    }

    #[test]
    fn base_change_commutes_with_mul() {
        let famz = FamilyInstance::weyl(1, 0, Domain::Int);
        let x = famz.generator(0).unwrap();
        let y = famz.generator(1).unwrap();
        let a = y.mul(&y).unwrap().mul(&x).unwrap();
        let b = x.mul(&y).unwrap().add(&famz.scalar(Coefficient::from_i64(Domain::Int, 7))).unwrap();
        let prod = a.mul(&b).unwrap();
        for p in [3u64, 5, 7] {
            let ap = a.reduce_mod(p).unwrap();
            let bp = b.reduce_mod(p).unwrap();
            assert_eq!(ap.mul(&bp).unwrap(), prod.reduce_mod(p).unwrap());
        }
    }

    #[test]
    fn family_mismatch_rejected() {
        let f1 = a1_weyl();
        let f2 = FamilyInstance::weyl(2, 0, Domain::Rat);
        let a = f1.generator(0).unwrap();
        let b = f2.generator(0).unwrap();
        assert!(matches!(a.mul(&b), Err(AlgebraError::FamilyMismatch)));
    }

    #[test]
    fn monomial_enumeration_counts() {
        let fam = a1_weyl();
        assert_eq!(fam.monomials_up_to(2).len(), 6);
        assert_eq!(fam.ambient_dim(2), 6);
        let sl2 = u_sl2();
        assert_eq!(sl2.monomials_up_to(1).len(), 4);
        assert_eq!(sl2.ambient_dim(20), 1771);
    }
}
