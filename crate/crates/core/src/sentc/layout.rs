//! Symbol catalogue for the existential sentence at fixed bounds.
//!
//! The unknowns follow the certificate verifier's Ore-chain construction:
//! witness numerators/denominators, fraction-transport pairs, common-multiple
//! pairs, tuple chains with their level elements, the e/f recovery chains,
//! and scalar coefficients; long products are broken into auxiliary product
//! symbols so every emitted equation is at most bilinear in unknown element
//! coordinates. The name scheme mirrors the usual a/b/c/d/e/f subscripts so
//! equations can be read against the construction line by line.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SentError;
use crate::ncalg::FamilyInstance;

/// Degree bounds and shape parameters for one emitted sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundProfile {
    /// Weyl pairs of the target skew field.
    pub m: usize,
    /// Central coefficient symbols available to the recovery polynomials.
    pub l: usize,
    /// Admissibility bound: a tuple `(i(1) <= ... <= i(k))` over `1..=2m`
    /// enters the construction when the sum of its entries is at most this.
    pub filtration_bound: usize,
    /// Maximal tuple length.
    pub tuple_cap: usize,
    /// Maximal total exponent of center monomials in the scalar expansion.
    pub center_exp_cap: usize,
    /// Degree bound for each witness numerator/denominator (length 2m).
    pub d_witness: Vec<usize>,
    /// Default bound for transport pairs a_{i,j}, b_{i,j}.
    pub d_pair: usize,
    /// Default bound for the common-multiple pairs c_{i,j}, d_{i,j}.
    pub d_ore: usize,
    /// Default bound for tuple-chain elements.
    pub d_chain: usize,
    /// Default bound for the recovery elements e, f.
    pub d_ef: usize,
    /// Default bound for the level elements of the chained denominators.
    pub d_level: usize,
    /// Hard cap on the number of scalar unknowns.
    pub max_unknowns: usize,
    /// Per-symbol degree overrides keyed by symbol name.
    #[serde(default)]
    pub overrides: BTreeMap<String, usize>,
}

impl BoundProfile {
    pub fn uniform(
        m: usize,
        l: usize,
        filtration_bound: usize,
        tuple_cap: usize,
        d: usize,
    ) -> Self {
        BoundProfile {
            m,
            l,
            filtration_bound,
            tuple_cap,
            center_exp_cap: 1,
            d_witness: vec![d; 2 * m],
            d_pair: d,
            d_ore: d,
            d_chain: d,
            d_ef: d,
            d_level: d,
            max_unknowns: 5000,
            overrides: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<(), SentError> {
        if self.filtration_bound == 0 || self.tuple_cap == 0 {
            return Err(SentError::BadProfile(
                "filtration bound and tuple cap must be at least 1".into(),
            ));
        }
        if self.d_witness.len() != 2 * self.m {
            return Err(SentError::BadProfile(format!(
                "d_witness must list {} bounds",
                2 * self.m
            )));
        }
        let all = self.d_witness.iter().chain([
            &self.d_pair,
            &self.d_ore,
            &self.d_chain,
            &self.d_ef,
            &self.d_level,
        ]);
        for &d in all {
            if d == 0 {
                return Err(SentError::BadProfile(
                    "all degree bounds must be >= 1".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Nondecreasing index tuples over `1..=2m` with entry-sum at most `bound`
/// and length at most `cap`, ordered by (length, lex); the empty tuple first.
pub fn admissible_tuples(m: usize, bound: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..cap {
        let mut next = Vec::new();
        for t in &layer {
            let lo = t.last().copied().unwrap_or(1);
            let sum: usize = t.iter().sum();
            for v in lo..=(2 * m) {
                if sum + v <= bound {
                    let mut ext = t.clone();
                    ext.push(v);
                    next.push(ext);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    out
}

/// One element-valued unknown. Tuple arguments are indices into the layout's
/// tuple list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sym {
    /// b_i
    WitnessDen(usize),
    /// a_i
    WitnessNum(usize),
    /// b_{i,j}
    PairDen(usize, usize),
    /// a_{i,j}
    PairNum(usize, usize),
    /// c_{i,j}
    OreC(usize, usize),
    /// d_{i,j}
    OreD(usize, usize),
    /// Full denominator of tuple `t` (product of its transport chain).
    TupleDen(usize),
    /// Full numerator of tuple `t`.
    TupleNum(usize),
    /// b_{i(1)...i(k)} for tuple `t` of length k >= 3.
    ChainDen(usize),
    /// a_{i(1)...i(k)}.
    ChainNum(usize),
    /// f_{i(t);k}(0)
    RecF { tuple: usize, gen: usize },
    /// e_{i(t);k}(0)
    RecE { tuple: usize, gen: usize },
    /// b_{i(t)}(s), 1 <= s < t
    LevelDen { tuple: usize, s: usize },
    /// a_{i(t)}(s)
    LevelNum { tuple: usize, s: usize },
    /// f_{i(t);k}(s)
    LevelF { tuple: usize, gen: usize, s: usize },
    /// e_{i(t);k}(s)
    LevelE { tuple: usize, gen: usize, s: usize },
    /// Suffix product of the chained denominators, positions r-1 down to `t`.
    ProdD(usize),
    /// Partial product a_{i(t)}(t-1) ... a_{i(t)}(s), down to s = 0 where the
    /// last factor is the tuple numerator.
    ProdA { tuple: usize, s: usize },
    /// Prefix product f_{i(1);k}(0) ... f_{i(t);k}(t-1).
    ProdF { gen: usize, t: usize },
    /// Prefix product e_{i(t);k}(0) ... e_{i(t);k}(s).
    ProdE { tuple: usize, gen: usize, s: usize },
    /// Suffix product f_{i(t+1);k}(t) ... f_{i(r);k}(r-1).
    SuffF { gen: usize, t: usize },
    /// ProdD(t) times the a-chain of tuple t: the cleared left cofactor.
    TermL(usize),
    /// TermL(t) times the full f-product for generator k.
    TermLF { tuple: usize, gen: usize },
    /// e-chain of tuple t times the f suffix, for generator k.
    TermR { tuple: usize, gen: usize },
    /// Full common denominator times TermR.
    TermRD { tuple: usize, gen: usize },
}

fn tup_str(t: &[usize]) -> String {
    let inner: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("({})", inner.join(","))
}

impl Sym {
    /// Paper-style display name; `tuples` resolves tuple indices.
    pub fn name(&self, tuples: &[Vec<usize>]) -> String {
        let t = |i: &usize| tup_str(&tuples[*i]);
        match self {
            Sym::WitnessDen(i) => format!("b_{i}"),
            Sym::WitnessNum(i) => format!("a_{i}"),
            Sym::PairDen(i, j) => format!("b_{{{i},{j}}}"),
            Sym::PairNum(i, j) => format!("a_{{{i},{j}}}"),
            Sym::OreC(i, j) => format!("c_{{{i},{j}}}"),
            Sym::OreD(i, j) => format!("d_{{{i},{j}}}"),
            Sym::TupleDen(i) => format!("B_{}", t(i)),
            Sym::TupleNum(i) => format!("N_{}", t(i)),
            Sym::ChainDen(i) => format!("b_{}", t(i)),
            Sym::ChainNum(i) => format!("a_{}", t(i)),
            Sym::RecF { tuple, gen } => format!("f_{};{}(0)", t(tuple), gen + 1),
            Sym::RecE { tuple, gen } => format!("e_{};{}(0)", t(tuple), gen + 1),
            Sym::LevelDen { tuple, s } => format!("b_{}({s})", t(tuple)),
            Sym::LevelNum { tuple, s } => format!("a_{}({s})", t(tuple)),
            Sym::LevelF { tuple, gen, s } => format!("f_{};{}({s})", t(tuple), gen + 1),
            Sym::LevelE { tuple, gen, s } => format!("e_{};{}({s})", t(tuple), gen + 1),
            Sym::ProdD(pos) => format!("DS({pos})"),
            Sym::ProdA { tuple, s } => format!("AP_{}({s})", t(tuple)),
            Sym::ProdF { gen, t } => format!("FP;{}({t})", gen + 1),
            Sym::ProdE { tuple, gen, s } => format!("EP_{};{}({s})", t(tuple), gen + 1),
            Sym::SuffF { gen, t } => format!("FS;{}({t})", gen + 1),
            Sym::TermL(i) => format!("TL_{}", t(i)),
            Sym::TermLF { tuple, gen } => format!("TLF_{};{}", t(tuple), gen + 1),
            Sym::TermR { tuple, gen } => format!("TR_{};{}", t(tuple), gen + 1),
            Sym::TermRD { tuple, gen } => format!("TRD_{};{}", t(tuple), gen + 1),
        }
    }

    /// Catalogue role tag.
    pub fn role(&self) -> &'static str {
        match self {
            Sym::WitnessDen(_) => "witness_den",
            Sym::WitnessNum(_) => "witness_num",
            Sym::PairDen(..) => "pair_den",
            Sym::PairNum(..) => "pair_num",
            Sym::OreC(..) => "ore_c",
            Sym::OreD(..) => "ore_d",
            Sym::TupleDen(_) => "tuple_den",
            Sym::TupleNum(_) => "tuple_num",
            Sym::ChainDen(_) => "chain_den",
            Sym::ChainNum(_) => "chain_num",
            Sym::RecF { .. } => "rec_f",
            Sym::RecE { .. } => "rec_e",
            Sym::LevelDen { .. } => "level_den",
            Sym::LevelNum { .. } => "level_num",
            Sym::LevelF { .. } => "level_f",
            Sym::LevelE { .. } => "level_e",
            Sym::ProdD(_)
            | Sym::ProdA { .. }
            | Sym::ProdF { .. }
            | Sym::ProdE { .. }
            | Sym::SuffF { .. }
            | Sym::TermL(_)
            | Sym::TermLF { .. }
            | Sym::TermR { .. }
            | Sym::TermRD { .. } => "aux_product",
        }
    }
}

/// Entry in the symbol table: a symbol with its degree bound, monomial basis
/// and first scalar-variable index.
#[derive(Debug, Clone)]
pub struct SymbolEntry {
    pub sym: Sym,
    pub bound: usize,
    pub offset: usize,
    pub dim: usize,
}

/// Scalar unknown classes beyond element coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarVar {
    /// lambda_{j,k}(n_1..n_l): tuple index, generator index, center exponents.
    Lambda {
        tuple: usize,
        gen: usize,
        zexp: Vec<u32>,
    },
    Mu {
        tuple: usize,
        gen: usize,
        zexp: Vec<u32>,
    },
    /// Auxiliary scalar forcing a coordinate vector to be nonzero.
    T { target: String, coord: usize },
}

impl ScalarVar {
    pub fn name(&self, tuples: &[Vec<usize>]) -> String {
        fn zs(z: &[u32]) -> String {
            let inner: Vec<String> = z.iter().map(|v| v.to_string()).collect();
            format!("({})", inner.join(","))
        }
        match self {
            ScalarVar::Lambda { tuple, gen, zexp } => format!(
                "lambda_{{{},{}}}{}",
                tup_str(&tuples[*tuple]),
                gen + 1,
                zs(zexp)
            ),
            ScalarVar::Mu { tuple, gen, zexp } => format!(
                "mu_{{{},{}}}{}",
                tup_str(&tuples[*tuple]),
                gen + 1,
                zs(zexp)
            ),
            ScalarVar::T { target, coord } => format!("t[{target}][{coord}]"),
        }
    }

    pub fn role(&self) -> &'static str {
        match self {
            ScalarVar::Lambda { .. } => "lambda",
            ScalarVar::Mu { .. } => "mu",
            ScalarVar::T { .. } => "nonvanishing_t",
        }
    }
}

/// Tuple count above which the cleared identity is assembled through
/// auxiliary product unknowns instead of direct expansion.
pub const DIRECT_TUPLE_CAP: usize = 3;

/// The full deterministic layout: tuples, symbol table, scalar variables, and
/// the per-level monomial caches.
pub struct SentenceLayout {
    pub family: Arc<FamilyInstance>,
    pub profile: BoundProfile,
    pub tuples: Vec<Vec<usize>>,
    /// Index of each tuple's longest proper prefix (len >= 1 tuples).
    pub prefix: Vec<Option<usize>>,
    pub symbols: Vec<SymbolEntry>,
    pub sym_index: BTreeMap<Sym, usize>,
    pub scalars: Vec<ScalarVar>,
    pub scalar_offset: usize,
    pub total_vars: usize,
    /// Center exponent tuples for the lambda/mu expansion, lex order.
    pub zexps: Vec<Vec<u32>>,
    /// Generator count n of the family's canonical generator list.
    pub num_gens: usize,
    /// Whether the cleared identity uses auxiliary product symbols.
    pub aux_mode: bool,
}

/// Dagger pair classes: within-block pairs and the cross pairs `(i, m+j)`.
pub fn ore_pair_classes(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in (i + 1)..=m {
            out.push((i, j));
            out.push((m + i, m + j));
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            out.push((i, m + j));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All ordered transport pairs `(i, j)` over `1..=2m`, including diagonals.
pub fn transport_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=(2 * m) {
        for j in 1..=(2 * m) {
            out.push((i, j));
        }
    }
    out
}

impl SentenceLayout {
    pub fn build(
        family: Arc<FamilyInstance>,
        num_gens: usize,
        profile: BoundProfile,
    ) -> Result<Self, SentError> {
        profile.validate()?;
        let m = profile.m;
        let tuples = admissible_tuples(m, profile.filtration_bound, profile.tuple_cap);
        let r = tuples.len();
        let prefix: Vec<Option<usize>> = tuples
            .iter()
            .map(|t| {
                if t.is_empty() {
                    None
                } else {
                    let p = &t[..t.len() - 1];
                    Some(
                        tuples
                            .iter()
                            .position(|u| u == p)
                            .expect("prefix of an admissible tuple is admissible"),
                    )
                }
            })
            .collect();

        let mut layout = SentenceLayout {
            family,
            profile,
            tuples,
            prefix,
            symbols: Vec::new(),
            sym_index: BTreeMap::new(),
            scalars: Vec::new(),
            scalar_offset: 0,
            total_vars: 0,
            zexps: Vec::new(),
            num_gens,
            aux_mode: false,
        };
        layout.aux_mode = r > DIRECT_TUPLE_CAP;
        layout.enumerate_symbols(r)?;
        layout.enumerate_scalars(r);
        let n = layout.scalar_offset + layout.scalars.len();
        layout.total_vars = n;
        if n > layout.profile.max_unknowns {
            return Err(SentError::CapExceeded {
                unknowns: n,
                cap: layout.profile.max_unknowns,
            });
        }
        Ok(layout)
    }

    fn push(&mut self, sym: Sym, bound: usize) {
        let name = sym.name(&self.tuples);
        let bound = *self.profile.overrides.get(&name).unwrap_or(&bound);
        let dim = self.family.ambient_dim(bound);
        let offset = self
            .symbols
            .last()
            .map(|e| e.offset + e.dim)
            .unwrap_or(0);
        self.sym_index.insert(sym.clone(), self.symbols.len());
        self.symbols.push(SymbolEntry {
            sym,
            bound,
            offset,
            dim,
        });
    }

    fn enumerate_symbols(&mut self, r: usize) -> Result<(), SentError> {
        let m = self.profile.m;
        let p = self.profile.clone();
        for i in 1..=(2 * m) {
            self.push(Sym::WitnessDen(i), p.d_witness[i - 1]);
            self.push(Sym::WitnessNum(i), p.d_witness[i - 1]);
        }
        for (i, j) in transport_pairs(m) {
            self.push(Sym::PairDen(i, j), p.d_pair);
            self.push(Sym::PairNum(i, j), p.d_pair);
        }
        for (i, j) in ore_pair_classes(m) {
            self.push(Sym::OreC(i, j), p.d_ore);
            self.push(Sym::OreD(i, j), p.d_ore);
        }
        // tuple chains
        for t in 0..r {
            let len = self.tuples[t].len();
            let (db, nb) = self.tuple_bounds(t);
            self.push(Sym::TupleDen(t), db);
            self.push(Sym::TupleNum(t), nb);
            if len >= 3 {
                self.push(Sym::ChainDen(t), p.d_chain);
                self.push(Sym::ChainNum(t), p.d_chain);
            }
        }
        for t in 0..r {
            for k in 0..self.num_gens {
                self.push(Sym::RecF { tuple: t, gen: k }, p.d_ef);
                self.push(Sym::RecE { tuple: t, gen: k }, p.d_ef);
            }
        }
        // level elements: positions are 1-based over the tuple list; tuple at
        // position j (index j-1) has levels s = 1..j-1
        for j in 2..=r {
            for s in 1..j {
                self.push(
                    Sym::LevelDen {
                        tuple: j - 1,
                        s,
                    },
                    p.d_level,
                );
                self.push(
                    Sym::LevelNum {
                        tuple: j - 1,
                        s,
                    },
                    p.d_level,
                );
            }
        }
        for k in 0..self.num_gens {
            for j in 2..=r {
                for s in 1..j {
                    self.push(
                        Sym::LevelF {
                            tuple: j - 1,
                            gen: k,
                            s,
                        },
                        p.d_level,
                    );
                    self.push(
                        Sym::LevelE {
                            tuple: j - 1,
                            gen: k,
                            s,
                        },
                        p.d_level,
                    );
                }
            }
        }
        if !self.aux_mode {
            return Ok(());
        }
        // auxiliary products
        // DS(t): suffix products of the denominators diag chain; positions
        // t = r-2 down to 0 are genuine products (t = r-1 aliases the last
        // diagonal factor)
        if r >= 2 {
            let mut acc_bound = self.diag_den_bound(r - 1);
            for t in (0..r - 1).rev() {
                acc_bound += self.diag_den_bound(t);
                self.push(Sym::ProdD(t), acc_bound);
            }
        }
        // AP: per tuple position j (1-based), partial a-chain products
        for j in 2..=r {
            let mut acc = p.d_level; // a_{i(j)}(j-1)
            for s in (0..j - 1).rev() {
                acc += if s >= 1 {
                    p.d_level
                } else {
                    self.tuple_bounds(j - 1).1
                };
                self.push(Sym::ProdA { tuple: j - 1, s }, acc);
            }
        }
        // FP per generator: prefix products over positions 2..r
        for k in 0..self.num_gens {
            let mut acc = p.d_ef;
            for t in 2..=r {
                acc += if t - 1 >= 1 { p.d_level } else { p.d_ef };
                self.push(Sym::ProdF { gen: k, t }, acc);
            }
        }
        // EP per tuple/gen: prefix products of e-levels
        for k in 0..self.num_gens {
            for j in 2..=r {
                let mut acc = p.d_ef;
                for s in 1..j {
                    acc += p.d_level;
                    self.push(
                        Sym::ProdE {
                            tuple: j - 1,
                            gen: k,
                            s,
                        },
                        acc,
                    );
                }
            }
        }
        // FS per generator: suffix products, t = r-2 down to 1
        if r >= 3 {
            for k in 0..self.num_gens {
                let mut acc = p.d_level; // f_{i(r)}(r-1)
                for t in (1..=r - 2).rev() {
                    acc += p.d_level;
                    self.push(Sym::SuffF { gen: k, t }, acc);
                }
            }
        }
        // TermL / TermLF / TermR / TermRD
        let d_bound: usize = self.total_diag_bound(r);
        for j in 1..=r {
            let ds_bound = self.ds_bound(r, j);
            let ac_bound = self.ac_bound(j);
            if j < r {
                self.push(Sym::TermL(j - 1), ds_bound + ac_bound);
            } else {
                // DS(r) = 1: TermL(r-1) aliases the a-chain; still emit the
                // symbol so the (9) assembly is uniform
                self.push(Sym::TermL(j - 1), ac_bound);
            }
        }
        let f_full: usize = self.fp_bound(r);
        for k in 0..self.num_gens {
            for j in 1..=r {
                let tl = self.sym_bound(&Sym::TermL(j - 1));
                self.push(
                    Sym::TermLF {
                        tuple: j - 1,
                        gen: k,
                    },
                    tl + f_full,
                );
            }
        }
        for k in 0..self.num_gens {
            for j in 1..=r {
                let ec = self.ec_bound(j);
                let fs = self.fs_bound(r, j);
                self.push(
                    Sym::TermR {
                        tuple: j - 1,
                        gen: k,
                    },
                    ec + fs,
                );
                self.push(
                    Sym::TermRD {
                        tuple: j - 1,
                        gen: k,
                    },
                    d_bound + ec + fs,
                );
            }
        }
        Ok(())
    }

    /// Degree bound of the diagonal denominator factor at position t
    /// (0-based): b_{i(t+1)}(t), which is the full tuple denominator when
    /// t = 0.
    fn diag_den_bound(&self, t: usize) -> usize {
        if t == 0 {
            self.tuple_bounds(0).0
        } else {
            self.profile.d_level
        }
    }

    fn total_diag_bound(&self, r: usize) -> usize {
        (0..r).map(|t| self.diag_den_bound(t)).sum()
    }

    /// Bound of DS(j) = product of diagonal factors from position r-1 down to j.
    fn ds_bound(&self, r: usize, j: usize) -> usize {
        (j..r).map(|t| self.diag_den_bound(t)).sum()
    }

    /// Bound of the a-chain of the tuple at 1-based position j.
    fn ac_bound(&self, j: usize) -> usize {
        let num_bound = self.tuple_bounds(j - 1).1;
        if j == 1 {
            num_bound
        } else {
            (j - 1) * self.profile.d_level + num_bound
        }
    }

    /// Bound of the e-chain of the tuple at position j for any generator.
    fn ec_bound(&self, j: usize) -> usize {
        self.profile.d_ef + (j - 1) * self.profile.d_level
    }

    /// Bound of the f-suffix product from position j+1 to r.
    fn fs_bound(&self, r: usize, j: usize) -> usize {
        (r - j) * self.profile.d_level.max(self.profile.d_ef)
    }

    /// Bound of the full f-prefix product FP(r).
    fn fp_bound(&self, r: usize) -> usize {
        self.profile.d_ef + (r.saturating_sub(1)) * self.profile.d_level.max(self.profile.d_ef)
    }

    /// Bounds (denominator, numerator) of a tuple's full chain products.
    pub fn tuple_bounds(&self, t: usize) -> (usize, usize) {
        let tup = &self.tuples[t];
        match tup.len() {
            0 => (1, 1),
            1 => {
                let i = tup[0];
                (self.profile.d_witness[i - 1], self.profile.d_witness[i - 1])
            }
            len => {
                let prefix = self.prefix[t].expect("nonempty tuple has a prefix");
                let (pd, _) = self.tuple_bounds(prefix);
                let last = tup[len - 1];
                let chain = if len == 2 {
                    self.profile.d_pair
                } else {
                    self.profile.d_chain
                };
                (
                    chain + pd,
                    chain + self.profile.d_witness[last - 1],
                )
            }
        }
    }

    pub fn sym_entry(&self, sym: &Sym) -> &SymbolEntry {
        &self.symbols[self.sym_index[sym]]
    }

    pub fn sym_bound(&self, sym: &Sym) -> usize {
        self.sym_entry(sym).bound
    }

    fn enumerate_scalars(&mut self, r: usize) {
        self.scalar_offset = self
            .symbols
            .last()
            .map(|e| e.offset + e.dim)
            .unwrap_or(0);
        // center exponent tuples
        let mut zexps: Vec<Vec<u32>> = vec![vec![0u32; self.profile.l]];
        if self.profile.l > 0 {
            let mut frontier = zexps.clone();
            for _ in 0..self.profile.center_exp_cap {
                let mut next = Vec::new();
                for z in &frontier {
                    for i in 0..self.profile.l {
                        let mut e = z.clone();
                        e[i] += 1;
                        if !next.contains(&e) {
                            next.push(e);
                        }
                    }
                }
                for e in &next {
                    if !zexps.contains(e) {
                        zexps.push(e.clone());
                    }
                }
                frontier = next;
            }
            zexps.sort();
            zexps.dedup();
        }
        self.zexps = zexps;
        for k in 0..self.num_gens {
            for t in 0..r {
                for z in &self.zexps {
                    self.scalars.push(ScalarVar::Lambda {
                        tuple: t,
                        gen: k,
                        zexp: z.clone(),
                    });
                }
            }
        }
        for k in 0..self.num_gens {
            for t in 0..r {
                for z in &self.zexps {
                    self.scalars.push(ScalarVar::Mu {
                        tuple: t,
                        gen: k,
                        zexp: z.clone(),
                    });
                }
            }
        }
        // nonvanishing targets, in symbol-table order, then mu vectors
        let targets = self.nonvanishing_targets(r);
        for target in targets {
            let entry = self.sym_entry(&target);
            let name = target.name(&self.tuples);
            for coord in 0..entry.dim {
                self.scalars.push(ScalarVar::T {
                    target: name.clone(),
                    coord,
                });
            }
        }
        for k in 0..self.num_gens {
            let name = format!("mu-vector;{}", k + 1);
            let dim = r * self.zexps.len();
            for coord in 0..dim {
                self.scalars.push(ScalarVar::T {
                    target: name.clone(),
                    coord,
                });
            }
        }
    }

    /// The element symbols that must be nonzero, in layout order.
    pub fn nonvanishing_targets(&self, r: usize) -> Vec<Sym> {
        let m = self.profile.m;
        let mut out = Vec::new();
        for i in 1..=(2 * m) {
            out.push(Sym::WitnessDen(i));
        }
        for (i, j) in transport_pairs(m) {
            out.push(Sym::PairDen(i, j));
        }
        for (i, j) in ore_pair_classes(m) {
            out.push(Sym::OreC(i, j));
        }
        for t in 0..r {
            if self.tuples[t].len() >= 3 {
                out.push(Sym::ChainDen(t));
            }
        }
        for t in 0..r {
            for k in 0..self.num_gens {
                out.push(Sym::RecF { tuple: t, gen: k });
            }
        }
        // diagonal denominators b_{i(t+1)}(t), t >= 1
        for t in 1..r {
            out.push(Sym::LevelDen { tuple: t, s: t });
        }
        // diagonal f's f_{i(l);k}(l-1), l >= 2
        for k in 0..self.num_gens {
            for pos in 2..=r {
                out.push(Sym::LevelF {
                    tuple: pos - 1,
                    gen: k,
                    s: pos - 1,
                });
            }
        }
        out
    }

    /// Scalar variable index of a lambda/mu entry.
    pub fn scalar_var_index(&self, var: &ScalarVar) -> Option<usize> {
        self.scalars
            .iter()
            .position(|v| v == var)
            .map(|i| self.scalar_offset + i)
    }
}
