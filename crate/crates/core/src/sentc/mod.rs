//! Emission and toy-scale decision of the first-order existential sentences
//! attached to a family, plus the bridge from verified certificates to
//! satisfying assignments.
//!
//! The sentence asserts the existence of witness fractions with the Weyl
//! commutation relations and of recovery data expressing every generator of
//! the first filtration piece through them. Each algebra identity (transport
//! pairs, common multiples, commutator identities, tuple chains, e/f
//! recovery chains, and the final cleared identity) is expanded over the
//! monomial basis of the bounded filtration pieces into integer polynomial
//! equations, one per basis monomial. Element nonvanishing is folded into
//! equations through fresh linear scalars, so the locally closed shape keeps
//! the single trivial branch `1 != 0`. Long products in the cleared identity
//! are split across auxiliary product unknowns, following the verifier's
//! stepwise Ore-chain semantics, so every emitted equation is at most
//! quadratic in the unknowns.

mod layout;
mod spoly;

pub use layout::{
    admissible_tuples, ore_pair_classes, transport_pairs, BoundProfile, ScalarVar,
    SentenceLayout, Sym,
};
pub use spoly::{SparseMono, SparsePoly};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gkcert::WitnessCertificate;
use crate::ncalg::{AlgebraElement, AlgebraError, FamilyInstance, FamilyKind};
use crate::orefrac::{solve_ore, solve_ore_right, OreError};
use crate::polycore::{Coefficient, Domain, LocallyClosedSystem, Monomial, PolyError};

pub const SENTENCE_SCHEMA_VERSION: &str = "weylcert/sentence-v1";

#[derive(Debug, Error)]
pub enum SentError {
    #[error("bad bound profile: {0}")]
    BadProfile(String),
    #[error("sentence would need {unknowns} unknowns, over the cap of {cap}")]
    CapExceeded { unknowns: usize, cap: usize },
    #[error("family provides no integral center elements for l = {0}")]
    MissingCenters(usize),
    #[error("non-integral coefficient encountered in {0}")]
    NonIntegral(String),
    #[error("json error: {0}")]
    Json(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("decision resource ceiling: {0}")]
    ResourceCeiling(String),
    #[error("assignment error: {0}")]
    Assignment(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Catalogue entry of one scalar unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableInfo {
    pub name: String,
    pub role: String,
    pub coord: usize,
}

/// The emitted sentence: a variable catalogue and an integer-coefficient
/// system `{ f = 0 } /\ (some g != 0)`; the same document serves the
/// characteristic-zero and the mod-p decision.
#[derive(Debug, Clone, PartialEq)]
pub struct ExistentialSentence {
    pub profile: BoundProfile,
    pub variables: Vec<VariableInfo>,
    pub equations: Vec<SparsePoly>,
    pub inequations: Vec<SparsePoly>,
}

impl ExistentialSentence {
    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn to_json(&self) -> String {
        let doc = SentenceFile {
            schema_version: SENTENCE_SCHEMA_VERSION.to_string(),
            bounds: self.profile.clone(),
            variables: self.variables.clone(),
            equations: self.equations.iter().map(SparsePoly::render).collect(),
            inequations: self.inequations.iter().map(SparsePoly::render).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("sentence serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SentError> {
        let doc: SentenceFile =
            serde_json::from_str(text).map_err(|e| SentError::Json(e.to_string()))?;
        if doc.schema_version != SENTENCE_SCHEMA_VERSION {
            return Err(SentError::Schema(format!(
                "unsupported schema_version {:?} (expected {:?})",
                doc.schema_version, SENTENCE_SCHEMA_VERSION
            )));
        }
        let parse_all = |texts: &[String]| -> Result<Vec<SparsePoly>, SentError> {
            texts
                .iter()
                .map(|s| SparsePoly::parse(s).map_err(SentError::Poly))
                .collect()
        };
        let sentence = ExistentialSentence {
            profile: doc.bounds,
            variables: doc.variables,
            equations: parse_all(&doc.equations)?,
            inequations: parse_all(&doc.inequations)?,
        };
        let arity = sentence.arity() as u32;
        for p in sentence.equations.iter().chain(&sentence.inequations) {
            if let Some(v) = p.max_var() {
                if v >= arity {
                    return Err(SentError::Schema(format!(
                        "polynomial mentions v{v} but the catalogue has {arity} variables"
                    )));
                }
            }
        }
        Ok(sentence)
    }
}

#[derive(Serialize, Deserialize)]
struct SentenceFile {
    schema_version: String,
    bounds: BoundProfile,
    variables: Vec<VariableInfo>,
    equations: Vec<String>,
    inequations: Vec<String>,
}

/// Integral center elements available to sentence emission: the adjoined
/// central variables for Weyl kinds, and (rank-one enveloping only) the
/// doubled Casimir `4ef + h^2 - 2h`.
pub fn sentence_centers(
    family: &Arc<FamilyInstance>,
    l: usize,
) -> Result<Vec<AlgebraElement>, SentError> {
    if l == 0 {
        return Ok(Vec::new());
    }
    match family.kind() {
        FamilyKind::WeylFull { n } => {
            if l > family.central_count() {
                return Err(SentError::MissingCenters(l));
            }
            let n = *n;
            (0..l)
                .map(|j| family.generator(2 * n + j).map_err(SentError::Algebra))
                .collect()
        }
        FamilyKind::Enveloping { rs, .. }
            if rs.type_label() == crate::rootsys::TypeLabel::A && rs.rank() == 1 && l == 1 =>
        {
            let e = family.generator(0)?;
            let h = family.generator(1)?;
            let f = family.generator(2)?;
            let four = Coefficient::from_i64(family.domain(), 4);
            let two = Coefficient::from_i64(family.domain(), 2);
            let c = e
                .mul(&f)?
                .scale(&four)?
                .add(&h.mul(&h)?)?
                .sub(&h.scale(&two)?)?;
            Ok(vec![c])
        }
        _ => Err(SentError::MissingCenters(l)),
    }
}

fn coeff_to_int(c: &Coefficient) -> Result<BigInt, SentError> {
    match c {
        Coefficient::Int(v) => Ok(v.clone()),
        Coefficient::Rat(v) => {
            if v.denom().is_one() {
                Ok(v.numer().clone())
            } else {
                Err(SentError::NonIntegral(v.to_string()))
            }
        }
        Coefficient::Mod { val, .. } => Ok(BigInt::from(*val)),
    }
}

// -------------------- emission --------------------

/// Linear (or constant) element expression: family monomial -> polynomial in
/// the sentence variables.
type Symbolic = BTreeMap<Monomial, SparsePoly>;

/// Operand of an identity: the constant one or an indexed symbol.
#[derive(Clone, Copy)]
enum Op {
    One,
    S(usize),
}

struct Emitter {
    layout: SentenceLayout,
    equations: Vec<SparsePoly>,
    mono_cache: BTreeMap<usize, Arc<Vec<Monomial>>>,
}

fn known_symbolic(e: &AlgebraElement) -> Result<Symbolic, SentError> {
    let mut out = Symbolic::new();
    for (m, c) in e.terms() {
        out.insert(m.clone(), SparsePoly::constant(coeff_to_int(c)?));
    }
    Ok(out)
}

fn mul_symbolic(
    fam: &Arc<FamilyInstance>,
    a: &Symbolic,
    b: &Symbolic,
) -> Result<Symbolic, SentError> {
    let one = Coefficient::one(fam.domain());
    let mut out = Symbolic::new();
    for (m1, p1) in a {
        for (m2, p2) in b {
            let prod = fam
                .monomial_element(m1.clone(), one.clone())
                .mul(&fam.monomial_element(m2.clone(), one.clone()))
                .map_err(SentError::Algebra)?;
            let pp = p1.mul(p2);
            for (mu, c) in prod.terms() {
                let contribution = pp.scale(&coeff_to_int(c)?);
                out.entry(mu.clone())
                    .or_insert_with(SparsePoly::zero)
                    .add_assign(&contribution);
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

fn add_symbolic(a: &Symbolic, b: &Symbolic) -> Symbolic {
    let mut out = a.clone();
    for (m, p) in b {
        out.entry(m.clone())
            .or_insert_with(SparsePoly::zero)
            .add_assign(p);
    }
    out.retain(|_, p| !p.is_zero());
    out
}

impl Emitter {
    fn id(&self, sym: &Sym) -> usize {
        self.layout.sym_index[sym]
    }

    fn monos(&mut self, level: usize) -> Arc<Vec<Monomial>> {
        if let Some(v) = self.mono_cache.get(&level) {
            return Arc::clone(v);
        }
        let v = Arc::new(self.layout.family.monomials_up_to(level));
        self.mono_cache.insert(level, Arc::clone(&v));
        v
    }

    fn sym(&mut self, op: Op) -> Symbolic {
        match op {
            Op::One => {
                let one = Monomial::one(self.layout.family.generator_count());
                let mut out = Symbolic::new();
                out.insert(one, SparsePoly::constant(BigInt::one()));
                out
            }
            Op::S(idx) => {
                let (offset, bound) = {
                    let e = &self.layout.symbols[idx];
                    (e.offset, e.bound)
                };
                let monos = self.monos(bound);
                let mut out = Symbolic::new();
                for (t, m) in monos.iter().enumerate() {
                    out.insert(m.clone(), SparsePoly::var((offset + t) as u32));
                }
                out
            }
        }
    }

    fn equate(&mut self, lhs: &Symbolic, rhs: &Symbolic) {
        let mut monos: Vec<&Monomial> = lhs.keys().chain(rhs.keys()).collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            let mut eq = lhs.get(m).cloned().unwrap_or_else(SparsePoly::zero);
            if let Some(p) = rhs.get(m) {
                eq.sub_assign(p);
            }
            if !eq.is_zero() {
                self.equations.push(eq);
            }
        }
    }

    /// Symbolic product of a chain of operands, left to right.
    fn product(&mut self, ops: &[Op]) -> Result<Symbolic, SentError> {
        let fam = Arc::clone(&self.layout.family);
        let mut acc = self.sym(Op::One);
        for &op in ops {
            let next = self.sym(op);
            acc = mul_symbolic(&fam, &acc, &next)?;
        }
        Ok(acc)
    }

    /// Emit the bilinear identity `u1 * u2 = v1 * v2`.
    fn identity(&mut self, u1: Op, u2: Op, v1: Op, v2: Op) -> Result<(), SentError> {
        let fam = Arc::clone(&self.layout.family);
        let a = self.sym(u1);
        let b = self.sym(u2);
        let lhs = mul_symbolic(&fam, &a, &b)?;
        let c = self.sym(v1);
        let d = self.sym(v2);
        let rhs = mul_symbolic(&fam, &c, &d)?;
        self.equate(&lhs, &rhs);
        Ok(())
    }

    /// Emit `target = a * b`.
    fn def_product(&mut self, target: &Sym, a: Op, b: Op) -> Result<(), SentError> {
        let fam = Arc::clone(&self.layout.family);
        let sa = self.sym(a);
        let sb = self.sym(b);
        let prod = mul_symbolic(&fam, &sa, &sb)?;
        let tid = self.id(target);
        let st = self.sym(Op::S(tid));
        self.equate(&st, &prod);
        Ok(())
    }

    /// Emit `target = a`.
    fn def_alias(&mut self, target: &Sym, a: Op) {
        let sa = self.sym(a);
        let tid = self.id(target);
        let st = self.sym(Op::S(tid));
        self.equate(&st, &sa);
    }
}

/// Emit the full sentence for the family at the given bounds.
///
/// The generators are the family's canonical generator list (first
/// filtration piece minus scalars); the center elements are the family's
/// integral ones. Every equation has integer coefficients by construction.
pub fn emit_sentence(
    family: &Arc<FamilyInstance>,
    profile: &BoundProfile,
) -> Result<ExistentialSentence, SentError> {
    let gens = family.generator_list()?;
    for (i, g) in gens.iter().enumerate() {
        for (_, c) in g.terms() {
            coeff_to_int(c)
                .map_err(|_| SentError::NonIntegral(format!("generator {}", i + 1)))?;
        }
    }
    let centers = sentence_centers(family, profile.l)?;
    let lay = SentenceLayout::build(Arc::clone(family), gens.len(), profile.clone())?;
    let r = lay.tuples.len();
    let m = profile.m;
    let mut em = Emitter {
        layout: lay,
        equations: Vec::new(),
        mono_cache: BTreeMap::new(),
    };

    // (1) transport pairs: b_{i,j} a_i = a_{i,j} b_j
    for (i, j) in transport_pairs(m) {
        let u1 = Op::S(em.id(&Sym::PairDen(i, j)));
        let u2 = Op::S(em.id(&Sym::WitnessNum(i)));
        let v1 = Op::S(em.id(&Sym::PairNum(i, j)));
        let v2 = Op::S(em.id(&Sym::WitnessDen(j)));
        em.identity(u1, u2, v1, v2)?;
    }
    // (2): c_{i,j} b_{i,j} b_i = d_{i,j} b_{j,i} b_j
    for (i, j) in ore_pair_classes(m) {
        let lhs = em.product(&[
            Op::S(em.id(&Sym::OreC(i, j))),
            Op::S(em.id(&Sym::PairDen(i, j))),
            Op::S(em.id(&Sym::WitnessDen(i))),
        ])?;
        let rhs = em.product(&[
            Op::S(em.id(&Sym::OreD(i, j))),
            Op::S(em.id(&Sym::PairDen(j, i))),
            Op::S(em.id(&Sym::WitnessDen(j))),
        ])?;
        em.equate(&lhs, &rhs);
    }
    // (3) vanishing commutators within blocks, (4) the delta identities:
    // c a_{i,j} a_j (+ delta c b_{i,j} b_i) = d a_{j,i} a_i
    for (i, j) in ore_pair_classes(m) {
        let cross = i <= m && j > m;
        let mut lhs = em.product(&[
            Op::S(em.id(&Sym::OreC(i, j))),
            Op::S(em.id(&Sym::PairNum(i, j))),
            Op::S(em.id(&Sym::WitnessNum(j))),
        ])?;
        if cross && j == m + i {
            let delta = em.product(&[
                Op::S(em.id(&Sym::OreC(i, j))),
                Op::S(em.id(&Sym::PairDen(i, j))),
                Op::S(em.id(&Sym::WitnessDen(i))),
            ])?;
            lhs = add_symbolic(&lhs, &delta);
        }
        let rhs = em.product(&[
            Op::S(em.id(&Sym::OreD(i, j))),
            Op::S(em.id(&Sym::PairNum(j, i))),
            Op::S(em.id(&Sym::WitnessNum(i))),
        ])?;
        em.equate(&lhs, &rhs);
    }
    // tuple chain definitions and (5)
    for t in 0..r {
        let tuple = em.layout.tuples[t].clone();
        match tuple.len() {
            0 => {
                em.def_alias(&Sym::TupleDen(t), Op::One);
                em.def_alias(&Sym::TupleNum(t), Op::One);
            }
            1 => {
                let i = tuple[0];
                let a = Op::S(em.id(&Sym::WitnessDen(i)));
                em.def_alias(&Sym::TupleDen(t), a);
                let a = Op::S(em.id(&Sym::WitnessNum(i)));
                em.def_alias(&Sym::TupleNum(t), a);
            }
            2 => {
                let (i, j) = (tuple[0], tuple[1]);
                let a = Op::S(em.id(&Sym::PairDen(i, j)));
                let b = Op::S(em.id(&Sym::WitnessDen(i)));
                em.def_product(&Sym::TupleDen(t), a, b)?;
                let a = Op::S(em.id(&Sym::PairNum(i, j)));
                let b = Op::S(em.id(&Sym::WitnessNum(j)));
                em.def_product(&Sym::TupleNum(t), a, b)?;
            }
            len => {
                let prefix = em.layout.prefix[t].unwrap();
                let last = tuple[len - 1];
                // (5): b_tuple N_prefix = a_tuple b_last
                let u1 = Op::S(em.id(&Sym::ChainDen(t)));
                let u2 = Op::S(em.id(&Sym::TupleNum(prefix)));
                let v1 = Op::S(em.id(&Sym::ChainNum(t)));
                let v2 = Op::S(em.id(&Sym::WitnessDen(last)));
                em.identity(u1, u2, v1, v2)?;
                let a = Op::S(em.id(&Sym::ChainDen(t)));
                let b = Op::S(em.id(&Sym::TupleDen(prefix)));
                em.def_product(&Sym::TupleDen(t), a, b)?;
                let a = Op::S(em.id(&Sym::ChainNum(t)));
                let b = Op::S(em.id(&Sym::WitnessNum(last)));
                em.def_product(&Sym::TupleNum(t), a, b)?;
            }
        }
    }
    // (6): N_t x_k f = B_t e
    for t in 0..r {
        for (k, x) in gens.iter().enumerate() {
            let fam = Arc::clone(&em.layout.family);
            let n_sym = em.sym(Op::S(em.id(&Sym::TupleNum(t))));
            let xk = known_symbolic(x)?;
            let nx = mul_symbolic(&fam, &n_sym, &xk)?;
            let fsym = em.sym(Op::S(em.id(&Sym::RecF { tuple: t, gen: k })));
            let lhs = mul_symbolic(&fam, &nx, &fsym)?;
            let bsym = em.sym(Op::S(em.id(&Sym::TupleDen(t))));
            let esym = em.sym(Op::S(em.id(&Sym::RecE { tuple: t, gen: k })));
            let rhs = mul_symbolic(&fam, &bsym, &esym)?;
            em.equate(&lhs, &rhs);
        }
    }
    // helpers for positional references (positions are 1-based)
    fn diag_den(em: &Emitter, s: usize) -> Op {
        if s >= 2 {
            Op::S(em.id(&Sym::LevelDen {
                tuple: s - 1,
                s: s - 1,
            }))
        } else {
            Op::S(em.id(&Sym::TupleDen(0)))
        }
    }
    fn f_at(em: &Emitter, pos: usize, k: usize, s: usize) -> Op {
        if s == 0 {
            Op::S(em.id(&Sym::RecF {
                tuple: pos - 1,
                gen: k,
            }))
        } else {
            Op::S(em.id(&Sym::LevelF {
                tuple: pos - 1,
                gen: k,
                s,
            }))
        }
    }
    // (7): b_j(s) diag(s) = a_j(s) b_j(s-1)
    for j in 2..=r {
        for s in 1..j {
            let u1 = Op::S(em.id(&Sym::LevelDen { tuple: j - 1, s }));
            let u2 = diag_den(&em, s);
            let v1 = Op::S(em.id(&Sym::LevelNum { tuple: j - 1, s }));
            let v2 = if s >= 2 {
                Op::S(em.id(&Sym::LevelDen {
                    tuple: j - 1,
                    s: s - 1,
                }))
            } else {
                Op::S(em.id(&Sym::TupleDen(j - 1)))
            };
            em.identity(u1, u2, v1, v2)?;
        }
    }
    // (8): f_j;k(s-1) e_j;k(s) = f_s;k(s-1) f_j;k(s)
    for k in 0..gens.len() {
        for j in 2..=r {
            for s in 1..j {
                let u1 = f_at(&em, j, k, s - 1);
                let u2 = Op::S(em.id(&Sym::LevelE {
                    tuple: j - 1,
                    gen: k,
                    s,
                }));
                let v1 = f_at(&em, s, k, s - 1);
                let v2 = Op::S(em.id(&Sym::LevelF {
                    tuple: j - 1,
                    gen: k,
                    s,
                }));
                em.identity(u1, u2, v1, v2)?;
            }
        }
    }
    // DS suffix products of the diagonal denominators
    // auxiliary product layer (only above the direct-expansion threshold)
    let aux_mode = em.layout.aux_mode;
    // DS(t) = DS(t+1) * b_{i(t+1)}(t): the factor at 0-based slot t is the
    // diagonal at 1-based position t+1
    if aux_mode && r >= 2 {
        for t in (0..r - 1).rev() {
            let upper = if t == r - 2 {
                diag_den(&em, r)
            } else {
                Op::S(em.id(&Sym::ProdD(t + 1)))
            };
            let lower = diag_den(&em, t + 1);
            em.def_product(&Sym::ProdD(t), upper, lower)?;
        }
    }
    // AP chains
    for j in 2..=(if aux_mode { r } else { 1 }) {
        for s in (0..j - 1).rev() {
            let upper = if s == j - 2 {
                Op::S(em.id(&Sym::LevelNum {
                    tuple: j - 1,
                    s: j - 1,
                }))
            } else {
                Op::S(em.id(&Sym::ProdA {
                    tuple: j - 1,
                    s: s + 1,
                }))
            };
            let factor = if s >= 1 {
                Op::S(em.id(&Sym::LevelNum { tuple: j - 1, s }))
            } else {
                Op::S(em.id(&Sym::TupleNum(j - 1)))
            };
            em.def_product(&Sym::ProdA { tuple: j - 1, s }, upper, factor)?;
        }
    }
    // FP prefix products
    for k in 0..(if aux_mode { gens.len() } else { 0 }) {
        for t in 2..=r {
            let prev = if t == 2 {
                f_at(&em, 1, k, 0)
            } else {
                Op::S(em.id(&Sym::ProdF { gen: k, t: t - 1 }))
            };
            let factor = f_at(&em, t, k, t - 1);
            em.def_product(&Sym::ProdF { gen: k, t }, prev, factor)?;
        }
    }
    // EP prefix products
    for k in 0..(if aux_mode { gens.len() } else { 0 }) {
        for j in 2..=r {
            for s in 1..j {
                let prev = if s == 1 {
                    Op::S(em.id(&Sym::RecE {
                        tuple: j - 1,
                        gen: k,
                    }))
                } else {
                    Op::S(em.id(&Sym::ProdE {
                        tuple: j - 1,
                        gen: k,
                        s: s - 1,
                    }))
                };
                let factor = Op::S(em.id(&Sym::LevelE {
                    tuple: j - 1,
                    gen: k,
                    s,
                }));
                em.def_product(
                    &Sym::ProdE {
                        tuple: j - 1,
                        gen: k,
                        s,
                    },
                    prev,
                    factor,
                )?;
            }
        }
    }
    // FS suffix products
    if aux_mode && r >= 3 {
        for k in 0..gens.len() {
            for t in (1..=r - 2).rev() {
                let upper = if t == r - 2 {
                    f_at(&em, r, k, r - 1)
                } else {
                    Op::S(em.id(&Sym::SuffF { gen: k, t: t + 1 }))
                };
                let head = f_at(&em, t + 1, k, t);
                em.def_product(&Sym::SuffF { gen: k, t }, head, upper)?;
            }
        }
    }
    // TermL(j) = DS(j) * a-chain(j); TermLF = TermL * F_k
    fn ac_of(em: &Emitter, j: usize) -> Op {
        if j == 1 {
            Op::S(em.id(&Sym::TupleNum(0)))
        } else {
            Op::S(em.id(&Sym::ProdA {
                tuple: j - 1,
                s: 0,
            }))
        }
    }
    for j in 1..=(if aux_mode { r } else { 0 }) {
        if j < r {
            let ds = if j == r - 1 {
                diag_den(&em, r)
            } else {
                Op::S(em.id(&Sym::ProdD(j)))
            };
            let ac = ac_of(&em, j);
            em.def_product(&Sym::TermL(j - 1), ds, ac)?;
        } else {
            let ac = ac_of(&em, j);
            em.def_alias(&Sym::TermL(j - 1), ac);
        }
    }
    fn f_full(em: &Emitter, r: usize, k: usize) -> Op {
        if r == 1 {
            f_at_free(em, 1, k, 0)
        } else {
            Op::S(em.id(&Sym::ProdF { gen: k, t: r }))
        }
    }
    fn f_at_free(em: &Emitter, pos: usize, k: usize, s: usize) -> Op {
        if s == 0 {
            Op::S(em.id(&Sym::RecF {
                tuple: pos - 1,
                gen: k,
            }))
        } else {
            Op::S(em.id(&Sym::LevelF {
                tuple: pos - 1,
                gen: k,
                s,
            }))
        }
    }
    for k in 0..(if aux_mode { gens.len() } else { 0 }) {
        for j in 1..=r {
            let tl = Op::S(em.id(&Sym::TermL(j - 1)));
            let ff = f_full(&em, r, k);
            em.def_product(
                &Sym::TermLF {
                    tuple: j - 1,
                    gen: k,
                },
                tl,
                ff,
            )?;
        }
    }
    // TermR(j,k) = e-chain * f-suffix; TermRD = D * TermR
    for k in 0..(if aux_mode { gens.len() } else { 0 }) {
        for j in 1..=r {
            let ec = if j == 1 {
                Op::S(em.id(&Sym::RecE { tuple: 0, gen: k }))
            } else {
                Op::S(em.id(&Sym::ProdE {
                    tuple: j - 1,
                    gen: k,
                    s: j - 1,
                }))
            };
            let tr = Sym::TermR {
                tuple: j - 1,
                gen: k,
            };
            if j == r {
                em.def_alias(&tr, ec);
            } else if j == r - 1 {
                let fs = f_at_free(&em, r, k, r - 1);
                em.def_product(&tr, ec, fs)?;
            } else {
                let fs = Op::S(em.id(&Sym::SuffF { gen: k, t: j }));
                em.def_product(&tr, ec, fs)?;
            }
            let d = if r == 1 {
                Op::S(em.id(&Sym::TupleDen(0)))
            } else {
                Op::S(em.id(&Sym::ProdD(0)))
            };
            let trop = Op::S(em.id(&tr));
            em.def_product(
                &Sym::TermRD {
                    tuple: j - 1,
                    gen: k,
                },
                d,
                trop,
            )?;
        }
    }
    // (9): sum_j sum_z lambda phi^z TLF = sum_j sum_z mu phi^z TRD, per k
    let zexp_elements: Vec<AlgebraElement> = {
        let mut v = Vec::new();
        for z in &em.layout.zexps {
            let mut acc = family.one();
            for (j, &e) in z.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&centers[j])?;
                }
            }
            v.push(acc);
        }
        v
    };
    let zexps = em.layout.zexps.clone();
    // op chains for the direct expansion of the cleared identity
    let ds_ops = |em: &Emitter, j: usize| -> Vec<Op> {
        // diagonal denominator slots r-1 down to j (0-based); slot t is the
        // diagonal at 1-based position t+1
        (j..r).rev().map(|t| diag_den(em, t + 1)).collect()
    };
    let ac_ops = |em: &Emitter, j: usize| -> Vec<Op> {
        let mut ops = Vec::new();
        for sidx in (1..j).rev() {
            ops.push(Op::S(em.id(&Sym::LevelNum {
                tuple: j - 1,
                s: sidx,
            })));
        }
        ops.push(Op::S(em.id(&Sym::TupleNum(j - 1))));
        ops
    };
    let fchain_ops = |em: &Emitter, k: usize, from: usize| -> Vec<Op> {
        (from..=r).map(|pos| f_at(em, pos, k, pos - 1)).collect()
    };
    let ec_ops = |em: &Emitter, j: usize, k: usize| -> Vec<Op> {
        let mut ops = vec![Op::S(em.id(&Sym::RecE {
            tuple: j - 1,
            gen: k,
        }))];
        for sidx in 1..j {
            ops.push(Op::S(em.id(&Sym::LevelE {
                tuple: j - 1,
                gen: k,
                s: sidx,
            })));
        }
        ops
    };
    for k in 0..gens.len() {
        let mut lhs: Symbolic = Symbolic::new();
        let mut rhs: Symbolic = Symbolic::new();
        for j in 1..=r {
            // per-term element products
            let (tlf, trd) = if em.layout.aux_mode {
                let tlf = em.sym(Op::S(em.id(&Sym::TermLF {
                    tuple: j - 1,
                    gen: k,
                })));
                let trd = em.sym(Op::S(em.id(&Sym::TermRD {
                    tuple: j - 1,
                    gen: k,
                })));
                (tlf, trd)
            } else {
                let mut lops = ds_ops(&em, j);
                lops.extend(ac_ops(&em, j));
                lops.extend(fchain_ops(&em, k, 1));
                let tlf = em.product(&lops)?;
                let mut rops = ds_ops(&em, 0);
                rops.extend(ec_ops(&em, j, k));
                rops.extend(fchain_ops(&em, k, j + 1));
                let trd = em.product(&rops)?;
                (tlf, trd)
            };
            for (zi, zel) in zexp_elements.iter().enumerate() {
                let fam = Arc::clone(&em.layout.family);
                let zsym = known_symbolic(zel)?;
                let ztlf = mul_symbolic(&fam, &zsym, &tlf)?;
                let lam = em
                    .layout
                    .scalar_var_index(&ScalarVar::Lambda {
                        tuple: j - 1,
                        gen: k,
                        zexp: zexps[zi].clone(),
                    })
                    .expect("lambda enumerated");
                let lam_poly = SparsePoly::var(lam as u32);
                for (mu, p) in ztlf {
                    lhs.entry(mu)
                        .or_insert_with(SparsePoly::zero)
                        .add_assign(&p.mul(&lam_poly));
                }
                let ztrd = mul_symbolic(&fam, &zsym, &trd)?;
                let mu_idx = em
                    .layout
                    .scalar_var_index(&ScalarVar::Mu {
                        tuple: j - 1,
                        gen: k,
                        zexp: zexps[zi].clone(),
                    })
                    .expect("mu enumerated");
                let mu_poly = SparsePoly::var(mu_idx as u32);
                for (mu, p) in ztrd {
                    rhs.entry(mu)
                        .or_insert_with(SparsePoly::zero)
                        .add_assign(&p.mul(&mu_poly));
                }
            }
        }
        em.equate(&lhs, &rhs);
    }
    // nonvanishing via the linear t-trick
    let targets = em.layout.nonvanishing_targets(r);
    for target in targets {
        let entry = em.layout.sym_entry(&target).clone();
        let name = target.name(&em.layout.tuples);
        let mut eq = SparsePoly::constant(-BigInt::one());
        for coord in 0..entry.dim {
            let t_idx = em
                .layout
                .scalar_var_index(&ScalarVar::T {
                    target: name.clone(),
                    coord,
                })
                .expect("t enumerated");
            eq.add_assign(
                &SparsePoly::var(t_idx as u32)
                    .mul(&SparsePoly::var((entry.offset + coord) as u32)),
            );
        }
        em.equations.push(eq);
    }
    // q_k != 0: a t-vector over the mu scalars of each generator
    for k in 0..gens.len() {
        let name = format!("mu-vector;{}", k + 1);
        let mut eq = SparsePoly::constant(-BigInt::one());
        let mut coord = 0usize;
        for t in 0..r {
            for z in &zexps {
                let mu_idx = em
                    .layout
                    .scalar_var_index(&ScalarVar::Mu {
                        tuple: t,
                        gen: k,
                        zexp: z.clone(),
                    })
                    .expect("mu enumerated");
                let t_idx = em
                    .layout
                    .scalar_var_index(&ScalarVar::T {
                        target: name.clone(),
                        coord,
                    })
                    .expect("t enumerated");
                eq.add_assign(
                    &SparsePoly::var(t_idx as u32).mul(&SparsePoly::var(mu_idx as u32)),
                );
                coord += 1;
            }
        }
        em.equations.push(eq);
    }

    // variable catalogue
    let mut variables = Vec::with_capacity(em.layout.total_vars);
    for entry in &em.layout.symbols {
        let name = entry.sym.name(&em.layout.tuples);
        for coord in 0..entry.dim {
            variables.push(VariableInfo {
                name: name.clone(),
                role: entry.sym.role().to_string(),
                coord,
            });
        }
    }
    for sv in &em.layout.scalars {
        variables.push(VariableInfo {
            name: sv.name(&em.layout.tuples),
            role: sv.role().to_string(),
            coord: 0,
        });
    }
    debug_assert_eq!(variables.len(), em.layout.total_vars);

    Ok(ExistentialSentence {
        profile: em.layout.profile.clone(),
        variables,
        equations: em.equations,
        inequations: vec![SparsePoly::constant(BigInt::one())],
    })
}

// -------------------- decision --------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Sat,
    Unsat,
}

#[derive(Debug, Clone, Copy)]
pub struct DecideOptions {
    /// Refuse systems with more unknowns than this (dense conversion).
    pub max_arity: usize,
    /// Groebner S-pair budget per run.
    pub pair_budget: Option<usize>,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            max_arity: 2048,
            pair_budget: Some(2_000_000),
        }
    }
}

/// Decide satisfiability over the algebraic closure of the prime field of
/// the given characteristic. Practical only at toy bounds; resource limits
/// surface as `ResourceCeiling`, never as a wrong verdict.
pub fn decide_sentence(
    sentence: &ExistentialSentence,
    characteristic: u64,
    opts: &DecideOptions,
) -> Result<Decision, SentError> {
    let arity = sentence.arity();
    if arity > opts.max_arity {
        return Err(SentError::ResourceCeiling(format!(
            "{arity} unknowns exceed the decision cap of {}",
            opts.max_arity
        )));
    }
    let domain = if characteristic == 0 {
        Domain::Rat
    } else {
        Domain::Mod(characteristic)
    };
    let to_dense = |ps: &[SparsePoly]| -> Result<Vec<crate::polycore::Poly>, SentError> {
        ps.iter()
            .map(|p| p.to_dense(arity, domain).map_err(SentError::Poly))
            .collect()
    };
    let system = LocallyClosedSystem::new(
        arity,
        characteristic,
        to_dense(&sentence.equations)?,
        to_dense(&sentence.inequations)?,
    )
    .map_err(SentError::Poly)?;
    match system.decide_nonempty_budgeted(opts.pair_budget) {
        Ok(true) => Ok(Decision::Sat),
        Ok(false) => Ok(Decision::Unsat),
        Err(PolyError::BudgetExceeded { limit }) => Err(SentError::ResourceCeiling(format!(
            "Groebner step budget {limit} exhausted"
        ))),
        Err(e) => Err(SentError::Poly(e)),
    }
}

// -------------------- certificate assignment --------------------

/// A satisfying assignment induced by a verified certificate, together with
/// the induced bound profile.
#[derive(Debug, Clone)]
pub struct CertAssignment {
    pub profile: BoundProfile,
    elements: BTreeMap<String, AlgebraElement>,
    scalars: BTreeMap<String, Coefficient>,
}

/// Run the verifier's Ore-chain construction on a verified certificate,
/// producing values for every sentence unknown and the bound profile they
/// certify. The certificate's generator list must agree with the family's
/// canonical one up to order.
pub fn witness_to_assignment(cert: &WitnessCertificate) -> Result<CertAssignment, SentError> {
    let family = cert.family();
    let m = cert.weyl_pairs();
    let l = cert.center_count();
    let solve_bound = cert.bounds().ceiling.max(4);

    // canonical generator order and the permutation from the certificate
    let canonical = family.generator_list()?;
    let mut perm = Vec::with_capacity(canonical.len());
    for (k, g) in canonical.iter().enumerate() {
        let idx = cert
            .generators()
            .iter()
            .position(|cg| cg == g)
            .ok_or_else(|| {
                SentError::Assignment(format!(
                    "certificate generator list must match the canonical basis \
                     (no match for canonical generator {})",
                    k + 1
                ))
            })?;
        perm.push(idx);
    }

    // center rescaling between certificate centers and the integral sentence
    // centers: phi_sent = s_j * phi_cert
    let sent_centers = sentence_centers(family, l)?;
    let mut zscales: Vec<Coefficient> = Vec::with_capacity(l);
    for (j, sc) in sent_centers.iter().enumerate() {
        let cc = &cert.centers()[j];
        let scale = proportional_scale(cc, sc).ok_or_else(|| {
            SentError::Assignment(format!(
                "certificate center {} is not a scalar multiple of the sentence center",
                j + 1
            ))
        })?;
        zscales.push(scale);
    }

    // induced shape parameters from the recovery polynomials
    let mut filtration_bound = 1usize;
    let mut tuple_cap = 1usize;
    let mut center_cap = 0usize;
    for (q, p) in cert.recovery() {
        for poly in [q, p] {
            for (mono, _) in poly.terms() {
                let (weight, len, zdeg) = w_monomial_shape(m, l, mono);
                filtration_bound = filtration_bound.max(weight.max(1));
                tuple_cap = tuple_cap.max(len.max(1));
                center_cap = center_cap.max(zdeg);
            }
        }
    }
    let tuples = admissible_tuples(m, filtration_bound, tuple_cap);
    let r = tuples.len();

    let mut values: BTreeMap<String, AlgebraElement> = BTreeMap::new();
    let tup_name = |sym: &Sym| sym.name(&tuples);

    // witnesses
    for i in 1..=(2 * m) {
        let w = &cert.witnesses()[i - 1];
        values.insert(tup_name(&Sym::WitnessDen(i)), w.den().clone());
        values.insert(tup_name(&Sym::WitnessNum(i)), w.num().clone());
    }
    let get = |values: &BTreeMap<String, AlgebraElement>, sym: &Sym| -> AlgebraElement {
        values[&sym.name(&tuples)].clone()
    };
    // transport pairs: solve c a_i = d b_j, store (b_{i,j}, a_{i,j}) = (c, d)
    for (i, j) in transport_pairs(m) {
        let ai = get(&values, &Sym::WitnessNum(i));
        let bj = get(&values, &Sym::WitnessDen(j));
        let sol = solve_ore(&ai, &bj, solve_bound)?;
        values.insert(tup_name(&Sym::PairDen(i, j)), sol.c);
        values.insert(tup_name(&Sym::PairNum(i, j)), sol.d);
    }
    // common multiples: c b_{i,j} b_i = d b_{j,i} b_j
    for (i, j) in ore_pair_classes(m) {
        let bij = get(&values, &Sym::PairDen(i, j))
            .mul(&get(&values, &Sym::WitnessDen(i)))?;
        let bji = get(&values, &Sym::PairDen(j, i))
            .mul(&get(&values, &Sym::WitnessDen(j)))?;
        let sol = solve_ore(&bij, &bji, solve_bound)?;
        values.insert(tup_name(&Sym::OreC(i, j)), sol.c);
        values.insert(tup_name(&Sym::OreD(i, j)), sol.d);
    }
    // tuple chains
    for (t, tuple) in tuples.iter().enumerate() {
        match tuple.len() {
            0 => {
                values.insert(tup_name(&Sym::TupleDen(t)), family.one());
                values.insert(tup_name(&Sym::TupleNum(t)), family.one());
            }
            1 => {
                let i = tuple[0];
                values.insert(
                    tup_name(&Sym::TupleDen(t)),
                    get(&values, &Sym::WitnessDen(i)),
                );
                values.insert(
                    tup_name(&Sym::TupleNum(t)),
                    get(&values, &Sym::WitnessNum(i)),
                );
            }
            2 => {
                let (i, j) = (tuple[0], tuple[1]);
                let bd = get(&values, &Sym::PairDen(i, j))
                    .mul(&get(&values, &Sym::WitnessDen(i)))?;
                values.insert(tup_name(&Sym::TupleDen(t)), bd);
                let nm = get(&values, &Sym::PairNum(i, j))
                    .mul(&get(&values, &Sym::WitnessNum(j)))?;
                values.insert(tup_name(&Sym::TupleNum(t)), nm);
            }
            len => {
                let prefix = tuples.iter().position(|u| *u == tuple[..len - 1]).unwrap();
                let last = tuple[len - 1];
                let npre = get(&values, &Sym::TupleNum(prefix));
                let blast = get(&values, &Sym::WitnessDen(last));
                let sol = solve_ore(&npre, &blast, solve_bound)?;
                values.insert(tup_name(&Sym::ChainDen(t)), sol.c.clone());
                values.insert(tup_name(&Sym::ChainNum(t)), sol.d.clone());
                let bd = sol.c.mul(&get(&values, &Sym::TupleDen(prefix)))?;
                values.insert(tup_name(&Sym::TupleDen(t)), bd);
                let nm = sol.d.mul(&get(&values, &Sym::WitnessNum(last)))?;
                values.insert(tup_name(&Sym::TupleNum(t)), nm);
            }
        }
    }
    // recovery pairs e, f via right solves: (N x_k) f = B e
    for t in 0..r {
        for (k, x) in canonical.iter().enumerate() {
            let nx = get(&values, &Sym::TupleNum(t)).mul(x)?;
            let b = get(&values, &Sym::TupleDen(t));
            let sol = solve_ore_right(&nx, &b, solve_bound)?;
            values.insert(tup_name(&Sym::RecF { tuple: t, gen: k }), sol.c);
            values.insert(tup_name(&Sym::RecE { tuple: t, gen: k }), sol.d);
        }
    }
    // levels (7)
    for s in 1..r {
        let diag = if s >= 2 {
            get(&values, &Sym::LevelDen {
                tuple: s - 1,
                s: s - 1,
            })
        } else {
            get(&values, &Sym::TupleDen(0))
        };
        for j in (s + 1)..=r {
            let prev = if s >= 2 {
                get(&values, &Sym::LevelDen {
                    tuple: j - 1,
                    s: s - 1,
                })
            } else {
                get(&values, &Sym::TupleDen(j - 1))
            };
            let sol = solve_ore(&diag, &prev, solve_bound)?;
            values.insert(tup_name(&Sym::LevelDen { tuple: j - 1, s }), sol.c);
            values.insert(tup_name(&Sym::LevelNum { tuple: j - 1, s }), sol.d);
        }
    }
    // levels (8)
    for k in 0..canonical.len() {
        for s in 1..r {
            let fs_prev = if s >= 2 {
                get(&values, &Sym::LevelF {
                    tuple: s - 1,
                    gen: k,
                    s: s - 1,
                })
            } else {
                get(&values, &Sym::RecF { tuple: 0, gen: k })
            };
            for j in (s + 1)..=r {
                let fj_prev = if s >= 2 {
                    get(&values, &Sym::LevelF {
                        tuple: j - 1,
                        gen: k,
                        s: s - 1,
                    })
                } else {
                    get(&values, &Sym::RecF { tuple: j - 1, gen: k })
                };
                let sol = solve_ore_right(&fj_prev, &fs_prev, solve_bound)?;
                values.insert(
                    tup_name(&Sym::LevelE {
                        tuple: j - 1,
                        gen: k,
                        s,
                    }),
                    sol.c,
                );
                values.insert(
                    tup_name(&Sym::LevelF {
                        tuple: j - 1,
                        gen: k,
                        s,
                    }),
                    sol.d,
                );
            }
        }
    }
    // aux products
    if r >= 2 {
        let mut acc = if r - 1 >= 1 {
            get(&values, &Sym::LevelDen {
                tuple: r - 1,
                s: r - 1,
            })
        } else {
            get(&values, &Sym::TupleDen(0))
        };
        for t in (0..r - 1).rev() {
            let factor = if t == 0 {
                get(&values, &Sym::TupleDen(0))
            } else {
                get(&values, &Sym::LevelDen { tuple: t, s: t })
            };
            acc = acc.mul(&factor)?;
            values.insert(tup_name(&Sym::ProdD(t)), acc.clone());
        }
    }
    for j in 2..=r {
        let mut acc = get(&values, &Sym::LevelNum {
            tuple: j - 1,
            s: j - 1,
        });
        for s in (0..j - 1).rev() {
            let factor = if s >= 1 {
                get(&values, &Sym::LevelNum { tuple: j - 1, s })
            } else {
                get(&values, &Sym::TupleNum(j - 1))
            };
            acc = acc.mul(&factor)?;
            values.insert(tup_name(&Sym::ProdA { tuple: j - 1, s }), acc.clone());
        }
    }
    for k in 0..canonical.len() {
        let mut acc = get(&values, &Sym::RecF { tuple: 0, gen: k });
        for t in 2..=r {
            let factor = if t - 1 >= 1 {
                get(&values, &Sym::LevelF {
                    tuple: t - 1,
                    gen: k,
                    s: t - 1,
                })
            } else {
                get(&values, &Sym::RecF { tuple: t - 1, gen: k })
            };
            acc = acc.mul(&factor)?;
            values.insert(tup_name(&Sym::ProdF { gen: k, t }), acc.clone());
        }
    }
    for k in 0..canonical.len() {
        for j in 2..=r {
            let mut acc = get(&values, &Sym::RecE { tuple: j - 1, gen: k });
            for s in 1..j {
                let factor = get(&values, &Sym::LevelE {
                    tuple: j - 1,
                    gen: k,
                    s,
                });
                acc = acc.mul(&factor)?;
                values.insert(
                    tup_name(&Sym::ProdE {
                        tuple: j - 1,
                        gen: k,
                        s,
                    }),
                    acc.clone(),
                );
            }
        }
    }
    if r >= 3 {
        for k in 0..canonical.len() {
            let mut acc = get(&values, &Sym::LevelF {
                tuple: r - 1,
                gen: k,
                s: r - 1,
            });
            for t in (1..=r - 2).rev() {
                let head = get(&values, &Sym::LevelF {
                    tuple: t,
                    gen: k,
                    s: t,
                });
                acc = head.mul(&acc)?;
                values.insert(tup_name(&Sym::SuffF { gen: k, t }), acc.clone());
            }
        }
    }
    for j in 1..=r {
        let ac = if j == 1 {
            get(&values, &Sym::TupleNum(0))
        } else {
            get(&values, &Sym::ProdA {
                tuple: j - 1,
                s: 0,
            })
        };
        let tl = if j < r {
            let ds = if j == r - 1 {
                if r - 1 >= 1 {
                    get(&values, &Sym::LevelDen {
                        tuple: r - 1,
                        s: r - 1,
                    })
                } else {
                    get(&values, &Sym::TupleDen(0))
                }
            } else {
                get(&values, &Sym::ProdD(j))
            };
            ds.mul(&ac)?
        } else {
            ac
        };
        values.insert(tup_name(&Sym::TermL(j - 1)), tl);
    }
    let d_full = if r == 1 {
        get(&values, &Sym::TupleDen(0))
    } else {
        get(&values, &Sym::ProdD(0))
    };
    for k in 0..canonical.len() {
        let ff = if r == 1 {
            get(&values, &Sym::RecF { tuple: 0, gen: k })
        } else {
            get(&values, &Sym::ProdF { gen: k, t: r })
        };
        for j in 1..=r {
            let tlf = get(&values, &Sym::TermL(j - 1)).mul(&ff)?;
            values.insert(
                tup_name(&Sym::TermLF {
                    tuple: j - 1,
                    gen: k,
                }),
                tlf,
            );
            let ec = if j == 1 {
                get(&values, &Sym::RecE { tuple: 0, gen: k })
            } else {
                get(&values, &Sym::ProdE {
                    tuple: j - 1,
                    gen: k,
                    s: j - 1,
                })
            };
            let tr = if j == r {
                ec
            } else if j == r - 1 {
                ec.mul(&get(&values, &Sym::LevelF {
                    tuple: r - 1,
                    gen: k,
                    s: r - 1,
                }))?
            } else {
                ec.mul(&get(&values, &Sym::SuffF { gen: k, t: j }))?
            };
            values.insert(
                tup_name(&Sym::TermR {
                    tuple: j - 1,
                    gen: k,
                }),
                tr.clone(),
            );
            values.insert(
                tup_name(&Sym::TermRD {
                    tuple: j - 1,
                    gen: k,
                }),
                d_full.mul(&tr)?,
            );
        }
    }

    // lambda/mu scalars from the recovery polynomials (with center rescale)
    let mut scalars: BTreeMap<String, Coefficient> = BTreeMap::new();
    for (k, &cert_idx) in perm.iter().enumerate() {
        let (q, p) = &cert.recovery()[cert_idx];
        for (is_mu, poly) in [(false, p), (true, q)] {
            for (mono, coeff) in poly.terms() {
                let (tuple_idx, zexp) = w_monomial_to_tuple(m, l, mono, &tuples)
                    .ok_or_else(|| {
                        SentError::Assignment(
                            "recovery monomial is not admissible at the induced bounds".into(),
                        )
                    })?;
                // rescale: coeff * prod_j s_j^{-n_j}
                let mut value = coeff.clone();
                for (j, &n) in zexp.iter().enumerate() {
                    for _ in 0..n {
                        value = value.div(&zscales[j]).map_err(SentError::Poly)?;
                    }
                }
                let var = if is_mu {
                    ScalarVar::Mu {
                        tuple: tuple_idx,
                        gen: k,
                        zexp: zexp.clone(),
                    }
                } else {
                    ScalarVar::Lambda {
                        tuple: tuple_idx,
                        gen: k,
                        zexp: zexp.clone(),
                    }
                };
                scalars.insert(var.name(&tuples), value);
            }
        }
    }

    // induced profile: exact per-symbol bounds
    let mut overrides = BTreeMap::new();
    for (name, v) in &values {
        overrides.insert(name.clone(), v.degree().max(1));
    }
    let mut d_witness = Vec::with_capacity(2 * m);
    for i in 1..=(2 * m) {
        let a = values[&Sym::WitnessNum(i).name(&tuples)].degree();
        let b = values[&Sym::WitnessDen(i).name(&tuples)].degree();
        d_witness.push(a.max(b).max(1));
    }
    let max_of = |prefix_syms: Vec<String>| -> usize {
        prefix_syms
            .iter()
            .filter_map(|n| values.get(n).map(|v| v.degree()))
            .max()
            .unwrap_or(1)
            .max(1)
    };
    let pair_names: Vec<String> = transport_pairs(m)
        .into_iter()
        .flat_map(|(i, j)| {
            vec![
                Sym::PairDen(i, j).name(&tuples),
                Sym::PairNum(i, j).name(&tuples),
            ]
        })
        .collect();
    let ore_names: Vec<String> = ore_pair_classes(m)
        .into_iter()
        .flat_map(|(i, j)| {
            vec![
                Sym::OreC(i, j).name(&tuples),
                Sym::OreD(i, j).name(&tuples),
            ]
        })
        .collect();
    let chain_names: Vec<String> = (0..r)
        .filter(|&t| tuples[t].len() >= 3)
        .flat_map(|t| {
            vec![
                Sym::ChainDen(t).name(&tuples),
                Sym::ChainNum(t).name(&tuples),
            ]
        })
        .collect();
    let ef_names: Vec<String> = (0..r)
        .flat_map(|t| {
            (0..canonical.len()).flat_map(move |k| {
                vec![
                    Sym::RecF { tuple: t, gen: k },
                    Sym::RecE { tuple: t, gen: k },
                ]
            })
        })
        .map(|s| s.name(&tuples))
        .collect();
    let mut level_names: Vec<String> = Vec::new();
    for j in 2..=r {
        for s in 1..j {
            level_names.push(Sym::LevelDen { tuple: j - 1, s }.name(&tuples));
            level_names.push(Sym::LevelNum { tuple: j - 1, s }.name(&tuples));
            for k in 0..canonical.len() {
                level_names.push(
                    Sym::LevelF {
                        tuple: j - 1,
                        gen: k,
                        s,
                    }
                    .name(&tuples),
                );
                level_names.push(
                    Sym::LevelE {
                        tuple: j - 1,
                        gen: k,
                        s,
                    }
                    .name(&tuples),
                );
            }
        }
    }
    let profile = BoundProfile {
        m,
        l,
        filtration_bound,
        tuple_cap,
        center_exp_cap: center_cap,
        d_witness,
        d_pair: max_of(pair_names),
        d_ore: max_of(ore_names),
        d_chain: max_of(chain_names),
        d_ef: max_of(ef_names),
        d_level: max_of(level_names),
        max_unknowns: usize::MAX,
        overrides,
    };
    // fix up the cap to the actual catalogue size
    let layout = SentenceLayout::build(Arc::clone(family), canonical.len(), profile.clone())?;
    let mut profile = profile;
    profile.max_unknowns = layout.total_vars;

    Ok(CertAssignment {
        profile,
        elements: values,
        scalars,
    })
}

fn proportional_scale(base: &AlgebraElement, target: &AlgebraElement) -> Option<Coefficient> {
    // target = s * base
    if base.num_terms() != target.num_terms() || base.is_zero() {
        return None;
    }
    let mut ratio: Option<Coefficient> = None;
    for ((m1, c1), (m2, c2)) in base.terms().zip(target.terms()) {
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

/// Shape of a w-algebra monomial: (entry-weight, length, z-degree).
fn w_monomial_shape(m: usize, l: usize, mono: &Monomial) -> (usize, usize, usize) {
    let mut weight = 0usize;
    let mut len = 0usize;
    let mut zdeg = 0usize;
    for (idx, &e) in mono.exps().iter().enumerate() {
        let e = e as usize;
        if idx < m {
            weight += (idx + 1) * e;
            len += e;
        } else if idx < 2 * m {
            weight += (m + (idx - m) + 1) * e;
            len += e;
        } else {
            let _ = l;
            zdeg += e;
        }
    }
    (weight, len, zdeg)
}

/// The admissible tuple and z-exponent of a w-monomial.
fn w_monomial_to_tuple(
    m: usize,
    _l: usize,
    mono: &Monomial,
    tuples: &[Vec<usize>],
) -> Option<(usize, Vec<u32>)> {
    let mut tuple = Vec::new();
    let mut zexp = Vec::new();
    for (idx, &e) in mono.exps().iter().enumerate() {
        if idx < 2 * m {
            let symbol = if idx < m { idx + 1 } else { m + (idx - m) + 1 };
            for _ in 0..e {
                tuple.push(symbol);
            }
        } else {
            zexp.push(e);
        }
    }
    let t = tuples.iter().position(|u| *u == tuple)?;
    Some((t, zexp))
}

impl CertAssignment {
    /// Dense rational coordinates aligned with the sentence emitted from
    /// `family` at `self.profile`.
    pub fn coordinate_vector(
        &self,
        family: &Arc<FamilyInstance>,
        num_gens: usize,
    ) -> Result<Vec<Coefficient>, SentError> {
        let layout = SentenceLayout::build(Arc::clone(family), num_gens, self.profile.clone())?;
        let mut out = vec![Coefficient::zero(Domain::Rat); layout.total_vars];
        for entry in &layout.symbols {
            let name = entry.sym.name(&layout.tuples);
            let value = self
                .elements
                .get(&name)
                .ok_or_else(|| SentError::Assignment(format!("no value for symbol {name}")))?;
            if value.degree() > entry.bound {
                return Err(SentError::Assignment(format!(
                    "value of {name} exceeds its bound"
                )));
            }
            let monos = layout.family.monomials_up_to(entry.bound);
            for (t, mm) in monos.iter().enumerate() {
                let c = value.coeff(mm);
                out[entry.offset + t] = c.lift_to_rat().map_err(SentError::Poly)?;
            }
        }
        for (i, sv) in layout.scalars.iter().enumerate() {
            let idx = layout.scalar_offset + i;
            match sv {
                ScalarVar::Lambda { .. } | ScalarVar::Mu { .. } => {
                    let name = sv.name(&layout.tuples);
                    out[idx] = self
                        .scalars
                        .get(&name)
                        .cloned()
                        .unwrap_or_else(|| Coefficient::zero(Domain::Rat));
                }
                ScalarVar::T { target, coord } => {
                    let (pos, val) = self.t_anchor(&layout, target)?;
                    out[idx] = if *coord == pos {
                        val.inv().map_err(SentError::Poly)?
                    } else {
                        Coefficient::zero(Domain::Rat)
                    };
                }
            }
        }
        Ok(out)
    }

    fn t_anchor(
        &self,
        layout: &SentenceLayout,
        target: &str,
    ) -> Result<(usize, Coefficient), SentError> {
        if let Some(gen_str) = target.strip_prefix("mu-vector;") {
            let k: usize = gen_str
                .parse()
                .map_err(|_| SentError::Assignment(format!("bad target {target}")))?;
            let mut coord = 0usize;
            for t in 0..layout.tuples.len() {
                for z in &layout.zexps {
                    let name = ScalarVar::Mu {
                        tuple: t,
                        gen: k - 1,
                        zexp: z.clone(),
                    }
                    .name(&layout.tuples);
                    if let Some(v) = self.scalars.get(&name) {
                        if !v.is_zero() {
                            return Ok((coord, v.clone()));
                        }
                    }
                    coord += 1;
                }
            }
            return Err(SentError::Assignment(format!(
                "mu vector for generator {k} is zero"
            )));
        }
        let value = self
            .elements
            .get(target)
            .ok_or_else(|| SentError::Assignment(format!("no value for target {target}")))?;
        let entry = layout
            .symbols
            .iter()
            .find(|e| e.sym.name(&layout.tuples) == target)
            .ok_or_else(|| SentError::Assignment(format!("unknown target {target}")))?;
        let monos = layout.family.monomials_up_to(entry.bound);
        for (t, mm) in monos.iter().enumerate() {
            let c = value.coeff(mm);
            if !c.is_zero() {
                return Ok((t, c.lift_to_rat().map_err(SentError::Poly)?));
            }
        }
        Err(SentError::Assignment(format!("target {target} is zero")))
    }
}

/// Check that `vector` satisfies every equation and at least one inequation
/// branch of the sentence, exactly.
pub fn check_assignment(
    sentence: &ExistentialSentence,
    vector: &[Coefficient],
) -> Result<(), String> {
    for (i, eq) in sentence.equations.iter().enumerate() {
        let v = eq.eval(vector);
        if !v.is_zero() {
            return Err(format!("equation {i} evaluates to {v}"));
        }
    }
    if sentence
        .inequations
        .iter()
        .any(|g| !g.eval(vector).is_zero())
    {
        Ok(())
    } else {
        Err("no inequation branch is satisfied".to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_sat() -> (Arc<FamilyInstance>, ExistentialSentence) {
        let fam = FamilyInstance::weyl(0, 1, Domain::Rat);
        let profile = BoundProfile::uniform(0, 1, 1, 1, 1);
        let s = emit_sentence(&fam, &profile).unwrap();
        (fam, s)
    }

    #[test]
    fn sat_toy_decides_sat() {
        let (_, s) = toy_sat();
        assert_eq!(
            decide_sentence(&s, 0, &DecideOptions::default()).unwrap(),
            Decision::Sat
        );
    }

    #[test]
    fn unsat_toy_decides_unsat_everywhere() {
        let fam = FamilyInstance::weyl(0, 0, Domain::Rat);
        let profile = BoundProfile::uniform(1, 0, 1, 1, 1);
        let s = emit_sentence(&fam, &profile).unwrap();
        assert_eq!(
            decide_sentence(&s, 0, &DecideOptions::default()).unwrap(),
            Decision::Unsat
        );
        assert_eq!(
            decide_sentence(&s, 5, &DecideOptions::default()).unwrap(),
            Decision::Unsat
        );
    }

    #[test]
    fn commutative_pair_family_emits_with_integer_coefficients() {
        // the Q[x,y] sentence is emitted and structurally sound; its decision
        // is beyond the toy Groebner scale
        let fam = FamilyInstance::weyl(0, 2, Domain::Rat);
        let profile = BoundProfile::uniform(1, 0, 1, 1, 1);
        let s = emit_sentence(&fam, &profile).unwrap();
        assert_eq!(s.arity(), s.variables.len());
        assert!(!s.equations.is_empty());
        // every polynomial parses back and mentions only catalogued variables
        let rt = ExistentialSentence::from_json(&s.to_json()).unwrap();
        assert_eq!(rt, s);
    }

    #[test]
    fn roundtrip_and_schema_errors() {
        let (_, s) = toy_sat();
        let rt = ExistentialSentence::from_json(&s.to_json()).unwrap();
        assert_eq!(rt, s);
        let truncated = &s.to_json()[..80];
        assert!(matches!(
            ExistentialSentence::from_json(truncated),
            Err(SentError::Json(_))
        ));
        let wrong = s.to_json().replace(SENTENCE_SCHEMA_VERSION, "weylcert/none");
        assert!(matches!(
            ExistentialSentence::from_json(&wrong),
            Err(SentError::Schema(_))
        ));
    }

    #[test]
    fn monotone_in_bounds() {
        let fam = FamilyInstance::weyl(0, 1, Domain::Rat);
        let base = BoundProfile::uniform(0, 1, 1, 1, 1);
        let bigger = BoundProfile::uniform(0, 1, 2, 2, 2);
        let s1 = emit_sentence(&fam, &base).unwrap();
        let s2 = emit_sentence(&fam, &bigger).unwrap();
        let opts = DecideOptions::default();
        assert_eq!(decide_sentence(&s1, 0, &opts).unwrap(), Decision::Sat);
        assert_eq!(decide_sentence(&s2, 0, &opts).unwrap(), Decision::Sat);
    }

    #[test]
    fn characteristic_transfer_for_sat_toy() {
        let (_, s) = toy_sat();
        assert_eq!(
            decide_sentence(&s, 5, &DecideOptions::default()).unwrap(),
            Decision::Sat
        );
    }

    #[test]
    fn cap_is_enforced() {
        let fam = FamilyInstance::weyl(0, 1, Domain::Rat);
        let mut profile = BoundProfile::uniform(0, 1, 1, 1, 1);
        profile.max_unknowns = 3;
        assert!(matches!(
            emit_sentence(&fam, &profile),
            Err(SentError::CapExceeded { .. })
        ));
    }

    #[test]
    fn empty_equations_single_inequation_is_sat() {
        let s = ExistentialSentence {
            profile: BoundProfile::uniform(0, 0, 1, 1, 1),
            variables: vec![VariableInfo {
                name: "x".into(),
                role: "scalar".into(),
                coord: 0,
            }],
            equations: vec![],
            inequations: vec![SparsePoly::constant(num_bigint::BigInt::from(1))],
        };
        assert_eq!(
            decide_sentence(&s, 0, &DecideOptions::default()).unwrap(),
            Decision::Sat
        );
    }
}
