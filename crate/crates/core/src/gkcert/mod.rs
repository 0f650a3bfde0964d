//! Birational witness certificates and their exact verification.
//!
//! A certificate supplies fractions `w_1..w_2m`, center elements, a generator
//! list for the first filtration piece, and recovery polynomials `(q_i, p_i)`
//! over the auxiliary Weyl algebra in the w's. Verification checks, exactly:
//!
//! * the Weyl relations among the witnesses (`[w_i, w_j] = 0` within each
//!   block and `[w_{m+j}, w_i] = delta_ij` across),
//! * the recovery identities `q_i * x_i = p_i` in the skew fraction field,
//! * centrality of every supplied center element,
//!
//! plus an advisory growth estimate against the declared Tdeg. Certificates
//! are characteristic-zero master objects; `reduce_mod_p` produces the mod-p
//! instance or reports the prime as bad.

mod schema;

pub use schema::{
    BoundsConfig, CertificateFile, FamilyDescriptor, RecoveryPair, CERT_SCHEMA_VERSION,
};

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::ncalg::{
    growth_exponent, parse_element, render_element, AlgebraElement, AlgebraError, FamilyInstance,
};
use crate::orefrac::{parse_fraction, render_fraction, Fraction, OreError};
use crate::polycore::{is_prime, Coefficient, Domain, PolyError};
use crate::rootsys::{RootSystem, RootSystemError, TypeLabel, DEFAULT_WEYL_CAP, SIGN_CONVENTION};

#[derive(Debug, Error)]
pub enum CertError {
    #[error("certificate schema error: {0}")]
    Schema(String),
    #[error("bad prime {p}: {location}")]
    BadPrime { p: u64, location: String },
    #[error("declared expected_tdeg {declared} does not match {computed} from the family data")]
    TdegMismatch { declared: usize, computed: usize },
    #[error("json error: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// An in-memory, validated certificate.
#[derive(Debug, Clone)]
pub struct WitnessCertificate {
    descriptor: FamilyDescriptor,
    family: Arc<FamilyInstance>,
    /// Auxiliary Weyl algebra in the w's: A_m with l central symbols.
    w_family: Arc<FamilyInstance>,
    m: usize,
    l: usize,
    witnesses: Vec<Fraction>,
    centers: Vec<AlgebraElement>,
    generators: Vec<AlgebraElement>,
    recovery: Vec<(AlgebraElement, AlgebraElement)>,
    bounds: BoundsConfig,
    expected_tdeg: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub status: CheckStatus,
    /// First violated identity, for failures.
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass() -> Self {
        CheckResult {
            status: CheckStatus::Pass,
            detail: None,
        }
    }

    fn fail(detail: String) -> Self {
        CheckResult {
            status: CheckStatus::Fail,
            detail: Some(detail),
        }
    }

    fn inconclusive(detail: String) -> Self {
        CheckResult {
            status: CheckStatus::Inconclusive,
            detail: Some(detail),
        }
    }

    fn skipped(detail: &str) -> Self {
        CheckResult {
            status: CheckStatus::Skipped,
            detail: Some(detail.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthAdvisory {
    pub estimate: f64,
    pub expected: usize,
    pub within_tolerance: bool,
}

/// Outcome of a full certificate verification. `overall` is `Pass` only when
/// every mandatory check passes; the growth advisory warns but never fails.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub m: usize,
    pub l: usize,
    pub expected_tdeg: usize,
    pub overall: CheckStatus,
    pub dagger: CheckResult,
    pub ddagger: CheckResult,
    pub center: CheckResult,
    pub growth_advisory: Option<GrowthAdvisory>,
    pub bound_used: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Stable human-readable rendering.
    pub fn to_text(&self) -> String {
        let line = |name: &str, r: &CheckResult| -> String {
            match (&r.status, &r.detail) {
                (CheckStatus::Pass, _) => format!("  {name:<18} pass\n"),
                (s, Some(d)) => format!("  {name:<18} {s:?}: {d}\n", s = s, d = d),
                (s, None) => format!("  {name:<18} {s:?}\n"),
            }
        };
        let mut out = format!(
            "certificate {} (m={}, l={}, expected Tdeg {})\n",
            self.family, self.m, self.l, self.expected_tdeg
        );
        out.push_str(&line("weyl relations", &self.dagger));
        out.push_str(&line("recovery", &self.ddagger));
        out.push_str(&line("centrality", &self.center));
        match &self.growth_advisory {
            Some(g) => out.push_str(&format!(
                "  {:<18} estimate {:.3} vs {} ({})\n",
                "growth (advisory)",
                g.estimate,
                g.expected,
                if g.within_tolerance { "ok" } else { "warn" }
            )),
            None => out.push_str("  growth (advisory)  unavailable\n"),
        }
        out.push_str(&format!("  bound used         {}\n", self.bound_used));
        out.push_str(&format!("overall: {:?}\n", self.overall));
        out
    }
}

/// Verification knobs. `bound_ceiling` overrides the certificate's ceiling;
/// `extended_generator_pool` additionally accepts generator lists spanning
/// the next filtration level (off by default).
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyConfig {
    pub bound_ceiling: Option<usize>,
    pub extended_generator_pool: bool,
}

impl FamilyDescriptor {
    pub fn instantiate(&self, domain: Domain) -> Result<Arc<FamilyInstance>, CertError> {
        match self {
            FamilyDescriptor::Enveloping { r#type, rank } => {
                let rs = build_rs(r#type, *rank)?;
                Ok(FamilyInstance::enveloping(rs, domain)?)
            }
            FamilyDescriptor::WeylInvariants { r#type, rank } => {
                let rs = build_rs(r#type, *rank)?;
                Ok(FamilyInstance::weyl_invariants(rs, DEFAULT_WEYL_CAP, domain)?)
            }
            FamilyDescriptor::PermInvariants { n, perms } => {
                Ok(FamilyInstance::perm_invariants(*n, perms, domain)?)
            }
            FamilyDescriptor::Weyl { n, l } => Ok(FamilyInstance::weyl(*n, *l, domain)),
        }
    }

    pub fn display(&self) -> String {
        match self {
            FamilyDescriptor::Enveloping { r#type, rank } => {
                format!("enveloping {}{}", r#type, rank)
            }
            FamilyDescriptor::WeylInvariants { r#type, rank } => {
                format!("weyl invariants {}{}", r#type, rank)
            }
            FamilyDescriptor::PermInvariants { n, perms } => {
                format!("permutation invariants A_{} ({} generators)", n, perms.len())
            }
            FamilyDescriptor::Weyl { n, l } => format!("weyl n={} l={}", n, l),
        }
    }
}

fn build_rs(label: &str, rank: usize) -> Result<RootSystem, CertError> {
    let mut chars = label.chars();
    let c = chars
        .next()
        .ok_or_else(|| CertError::Schema("empty type label".into()))?;
    if chars.next().is_some() {
        return Err(CertError::Schema(format!("bad type label {label:?}")));
    }
    let kind = TypeLabel::from_char(c)?;
    Ok(RootSystem::build(kind, rank)?)
}

impl WitnessCertificate {
    /// Parse and fully validate a certificate document (characteristic-zero
    /// master copy; all literals over the rationals).
    pub fn from_json(text: &str) -> Result<Self, CertError> {
        let file: CertificateFile =
            serde_json::from_str(text).map_err(|e| CertError::Json(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &CertificateFile) -> Result<Self, CertError> {
        if file.schema_version != CERT_SCHEMA_VERSION {
            return Err(CertError::Schema(format!(
                "unsupported schema_version {:?} (expected {:?})",
                file.schema_version, CERT_SCHEMA_VERSION
            )));
        }
        if matches!(file.family, FamilyDescriptor::Enveloping { .. })
            && file.sign_convention != SIGN_CONVENTION
        {
            return Err(CertError::Schema(format!(
                "unknown sign convention {:?} (expected {:?})",
                file.sign_convention, SIGN_CONVENTION
            )));
        }
        let family = file.family.instantiate(Domain::Rat)?;
        let w_family = FamilyInstance::weyl(file.m, file.l, Domain::Rat);
        if file.witnesses.len() != 2 * file.m {
            return Err(CertError::Schema(format!(
                "expected {} witnesses, found {}",
                2 * file.m,
                file.witnesses.len()
            )));
        }
        if file.centers.len() != file.l {
            return Err(CertError::Schema(format!(
                "expected {} center elements, found {}",
                file.l,
                file.centers.len()
            )));
        }
        if file.recovery.len() != file.generators.len() {
            return Err(CertError::Schema(
                "recovery list must match the generator list".into(),
            ));
        }
        let bound = file.bounds.initial.max(1);
        let witnesses = file
            .witnesses
            .iter()
            .map(|s| parse_fraction(&family, s, bound))
            .collect::<Result<Vec<_>, _>>()?;
        let centers = file
            .centers
            .iter()
            .map(|s| parse_element(&family, s))
            .collect::<Result<Vec<_>, _>>()?;
        let generators = file
            .generators
            .iter()
            .map(|s| parse_element(&family, s))
            .collect::<Result<Vec<_>, _>>()?;
        let recovery = file
            .recovery
            .iter()
            .map(|r| {
                Ok((
                    parse_element(&w_family, &r.q)?,
                    parse_element(&w_family, &r.p)?,
                ))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let cert = WitnessCertificate {
            descriptor: file.family.clone(),
            family,
            w_family,
            m: file.m,
            l: file.l,
            witnesses,
            centers,
            generators,
            recovery,
            bounds: file.bounds,
            expected_tdeg: file.expected_tdeg,
        };
        cert.validate(false)?;
        Ok(cert)
    }

    /// Structural validation: Tdeg bookkeeping, nonzero q's, and the
    /// generator list spanning the generator piece minus scalars.
    fn validate(&self, extended_pool: bool) -> Result<(), CertError> {
        if self.expected_tdeg != 2 * self.m + self.l {
            return Err(CertError::TdegMismatch {
                declared: self.expected_tdeg,
                computed: 2 * self.m + self.l,
            });
        }
        if self.expected_tdeg != self.family.expected_tdeg() {
            return Err(CertError::TdegMismatch {
                declared: self.expected_tdeg,
                computed: self.family.expected_tdeg(),
            });
        }
        for (i, (q, _)) in self.recovery.iter().enumerate() {
            if q.is_zero() {
                return Err(CertError::Schema(format!("recovery q_{} is zero", i + 1)));
            }
        }
        // generator list: integral, inside the generator piece, spanning it
        // modulo scalars
        let mut level = self.family.generator_piece_level()?;
        let ok_at = |level: usize| -> Result<bool, CertError> {
            let piece = self.family.filtration_piece(level)?;
            if self.generators.len() + 1 != piece.dim() {
                return Ok(false);
            }
            let monos = piece.monomials();
            let mut rows = vec![self.family.one().coordinates(monos)];
            for g in &self.generators {
                if g.degree() > level {
                    return Ok(false);
                }
                rows.push(g.coordinates(monos));
            }
            let rank = crate::linalg::Matrix::from_rows(self.family.domain(), rows).rank();
            Ok(rank == piece.dim())
        };
        let mut spanned = ok_at(level)?;
        if !spanned && extended_pool {
            level += 1;
            spanned = ok_at(level)?;
        }
        if !spanned {
            return Err(CertError::Schema(
                "generator list is not a basis of the generator filtration piece modulo scalars"
                    .into(),
            ));
        }
        for (i, g) in self.generators.iter().enumerate() {
            for (_, c) in g.terms() {
                if let Coefficient::Rat(v) = c {
                    if !num_traits::One::is_one(v.denom()) {
                        return Err(CertError::Schema(format!(
                            "generator {} is not drawn from the integral form",
                            i + 1
                        )));
                    }
                }
            }
            if let Some(action) = self.family.group_action() {
                if !action.fixes(g)? {
                    return Err(CertError::Schema(format!(
                        "generator {} is not invariant under the group action",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> &Arc<FamilyInstance> {
        &self.family
    }

    pub fn descriptor(&self) -> &FamilyDescriptor {
        &self.descriptor
    }

    pub fn weyl_pairs(&self) -> usize {
        self.m
    }

    pub fn center_count(&self) -> usize {
        self.l
    }

    pub fn witnesses(&self) -> &[Fraction] {
        &self.witnesses
    }

    pub fn centers(&self) -> &[AlgebraElement] {
        &self.centers
    }

    pub fn generators(&self) -> &[AlgebraElement] {
        &self.generators
    }

    pub fn recovery(&self) -> &[(AlgebraElement, AlgebraElement)] {
        &self.recovery
    }

    pub fn w_family(&self) -> &Arc<FamilyInstance> {
        &self.w_family
    }

    pub fn bounds(&self) -> BoundsConfig {
        self.bounds
    }

    pub fn expected_tdeg(&self) -> usize {
        self.expected_tdeg
    }

    /// Serialize back to the file format (canonical literals).
    pub fn to_file(&self) -> CertificateFile {
        CertificateFile {
            schema_version: CERT_SCHEMA_VERSION.to_string(),
            family: self.descriptor.clone(),
            sign_convention: if matches!(self.descriptor, FamilyDescriptor::Enveloping { .. }) {
                SIGN_CONVENTION.to_string()
            } else {
                String::new()
            },
            m: self.m,
            l: self.l,
            witnesses: self.witnesses.iter().map(render_fraction).collect(),
            centers: self.centers.iter().map(render_element).collect(),
            generators: self.generators.iter().map(render_element).collect(),
            recovery: self
                .recovery
                .iter()
                .map(|(q, p)| RecoveryPair {
                    q: render_element(q),
                    p: render_element(p),
                })
                .collect(),
            bounds: self.bounds,
            expected_tdeg: self.expected_tdeg,
        }
    }
}

/// Substitute witnesses and centers into a polynomial over the w-algebra.
/// Valid once the Weyl relations hold: the substitution is then a
/// homomorphism on normal forms.
pub fn eval_w_poly(
    fam: &Arc<FamilyInstance>,
    poly: &AlgebraElement,
    witnesses: &[Fraction],
    centers: &[Fraction],
    bound: usize,
) -> Result<Fraction, OreError> {
    let mut acc = Fraction::zero(fam, bound);
    let m = witnesses.len() / 2;
    for (mono, coeff) in poly.terms() {
        let mut term = Fraction::one(fam, bound);
        for (idx, &e) in mono.exps().iter().enumerate() {
            let base = if idx < 2 * m {
                &witnesses[idx]
            } else {
                &centers[idx - 2 * m]
            };
            for _ in 0..e {
                term = term.mul(base)?;
            }
        }
        term = term.scale(coeff)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// The Weyl-relation checks among the witnesses: zero commutators within
/// each block of m, and `[w_{m+j}, w_i] = delta_ij` across blocks.
pub fn verify_dagger(cert: &WitnessCertificate, bound: usize) -> CheckResult {
    let fam = &cert.family;
    let ws: Vec<Fraction> = cert
        .witnesses
        .iter()
        .map(|w| w.with_bound(bound))
        .collect();
    let m = cert.m;
    let one = Fraction::one(fam, bound);
    let check = |a: usize, b: usize, expect_one: bool| -> Result<Option<String>, OreError> {
        let c = ws[a].commutator(&ws[b])?;
        let holds = if expect_one {
            c.frac_eq(&one)?
        } else {
            c.is_zero() || c.frac_eq(&Fraction::zero(fam, bound))?
        };
        if holds {
            Ok(None)
        } else {
            Ok(Some(format!(
                "[w{}, w{}] = {} (expected {})",
                a + 1,
                b + 1,
                render_fraction(&c),
                if expect_one { "1" } else { "0" }
            )))
        }
    };
    for i in 0..m {
        for j in (i + 1)..m {
            match check(i, j, false) {
                Ok(None) => {}
                Ok(Some(d)) => return CheckResult::fail(d),
                Err(OreError::NoSolutionAtBound { bound }) => {
                    return CheckResult::inconclusive(format!(
                        "Ore solve exhausted degree bound {bound}"
                    ))
                }
                Err(e) => return CheckResult::fail(e.to_string()),
            }
            match check(m + i, m + j, false) {
                Ok(None) => {}
                Ok(Some(d)) => return CheckResult::fail(d),
                Err(OreError::NoSolutionAtBound { bound }) => {
                    return CheckResult::inconclusive(format!(
                        "Ore solve exhausted degree bound {bound}"
                    ))
                }
                Err(e) => return CheckResult::fail(e.to_string()),
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            match check(m + j, i, i == j) {
                Ok(None) => {}
                Ok(Some(d)) => return CheckResult::fail(d),
                Err(OreError::NoSolutionAtBound { bound }) => {
                    return CheckResult::inconclusive(format!(
                        "Ore solve exhausted degree bound {bound}"
                    ))
                }
                Err(e) => return CheckResult::fail(e.to_string()),
            }
        }
    }
    CheckResult::pass()
}

/// The recovery identities `q_i * x_i = p_i` in the fraction field.
pub fn verify_ddagger(cert: &WitnessCertificate, bound: usize) -> CheckResult {
    let fam = &cert.family;
    let ws: Vec<Fraction> = cert
        .witnesses
        .iter()
        .map(|w| w.with_bound(bound))
        .collect();
    let centers: Vec<Fraction> = cert
        .centers
        .iter()
        .map(|c| Fraction::from_element(c.clone(), bound))
        .collect();
    for (i, ((q, p), x)) in cert.recovery.iter().zip(&cert.generators).enumerate() {
        let run = || -> Result<bool, OreError> {
            let qv = eval_w_poly(fam, q, &ws, &centers, bound)?;
            let pv = eval_w_poly(fam, p, &ws, &centers, bound)?;
            let xv = Fraction::from_element(x.clone(), bound);
            qv.mul(&xv)?.eq_at(&pv, bound)
        };
        match run() {
            Ok(true) => {}
            Ok(false) => {
                return CheckResult::fail(format!(
                    "recovery identity failed for generator {} ({})",
                    i + 1,
                    render_element(x)
                ))
            }
            Err(OreError::NoSolutionAtBound { bound }) => {
                return CheckResult::inconclusive(format!(
                    "Ore solve exhausted degree bound {bound}"
                ))
            }
            Err(e) => return CheckResult::fail(e.to_string()),
        }
    }
    CheckResult::pass()
}

/// Exact centrality of every supplied center element.
pub fn verify_center(cert: &WitnessCertificate) -> CheckResult {
    let fam = &cert.family;
    for (j, phi) in cert.centers.iter().enumerate() {
        for idx in 0..fam.generator_count() {
            let g = match fam.generator(idx) {
                Ok(g) => g,
                Err(e) => return CheckResult::fail(e.to_string()),
            };
            match phi.commutator(&g) {
                Ok(c) if c.is_zero() => {}
                Ok(c) => {
                    return CheckResult::fail(format!(
                        "[phi_{}, {}] = {}",
                        j + 1,
                        fam.generator_name(idx),
                        render_element(&c)
                    ))
                }
                Err(e) => return CheckResult::fail(e.to_string()),
            }
        }
    }
    CheckResult::pass()
}

const GROWTH_JMAX: usize = 20;
const GROWTH_TOLERANCE: f64 = 0.3;

fn growth_advisory(cert: &WitnessCertificate) -> Option<GrowthAdvisory> {
    let estimate = growth_exponent(&cert.family, GROWTH_JMAX).ok()?;
    let expected = cert.expected_tdeg;
    Some(GrowthAdvisory {
        estimate,
        expected,
        within_tolerance: (estimate - expected as f64).abs() <= GROWTH_TOLERANCE,
    })
}

/// Full verification with bound escalation: starts from the certificate's
/// initial bound and doubles after inconclusive Ore solves, up to the
/// ceiling. Deterministic given identical inputs.
pub fn verify_certificate(cert: &WitnessCertificate, config: &VerifyConfig) -> VerificationReport {
    let ceiling = config
        .bound_ceiling
        .unwrap_or(cert.bounds.ceiling)
        .max(cert.bounds.initial.max(1));
    let center = verify_center(cert);
    let growth = growth_advisory(cert);
    let mut bound = cert.bounds.initial.max(1);
    let (dagger, ddagger, bound_used) = loop {
        let dagger = verify_dagger(cert, bound);
        let ddagger = match dagger.status {
            CheckStatus::Pass => verify_ddagger(cert, bound),
            CheckStatus::Fail => CheckResult::skipped("weyl relations failed"),
            _ => CheckResult::skipped("weyl relations inconclusive"),
        };
        let stuck = dagger.status == CheckStatus::Inconclusive
            || ddagger.status == CheckStatus::Inconclusive;
        if stuck && bound * 2 <= ceiling {
            bound *= 2;
            continue;
        }
        break (dagger, ddagger, bound);
    };
    let mandatory = [&dagger.status, &ddagger.status, &center.status];
    let overall = if mandatory.iter().any(|s| **s == CheckStatus::Fail) {
        CheckStatus::Fail
    } else if mandatory.iter().all(|s| **s == CheckStatus::Pass) {
        CheckStatus::Pass
    } else {
        CheckStatus::Inconclusive
    };
    VerificationReport {
        family: cert.descriptor.display(),
        m: cert.m,
        l: cert.l,
        expected_tdeg: cert.expected_tdeg,
        overall,
        dagger,
        ddagger,
        center,
        growth_advisory: growth,
        bound_used,
    }
}

/// Reduce every rational coefficient mod `p`. Errors with the violating
/// location when `p` divides a denominator, a denominator element vanishes
/// mod `p`, or a recovery `q` vanishes mod `p`.
pub fn reduce_mod_p(cert: &WitnessCertificate, p: u64) -> Result<WitnessCertificate, CertError> {
    if !is_prime(p) {
        return Err(CertError::Poly(PolyError::NotPrime(p)));
    }
    let bad = |location: &str| CertError::BadPrime {
        p,
        location: location.to_string(),
    };
    let family = cert.descriptor.instantiate(Domain::Mod(p))?;
    let w_family = FamilyInstance::weyl(cert.m, cert.l, Domain::Mod(p));
    let rebase = |e: &AlgebraElement, location: &str| -> Result<AlgebraElement, CertError> {
        let reduced = e.reduce_mod(p).map_err(|_| bad(location))?;
        // re-root onto the freshly instantiated family
        let mut out = family.zero();
        for (m, c) in reduced.terms() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    };
    let mut witnesses = Vec::with_capacity(cert.witnesses.len());
    for (i, w) in cert.witnesses.iter().enumerate() {
        let num = rebase(w.num(), &format!("witness {} numerator", i + 1))?;
        let den = rebase(w.den(), &format!("witness {} denominator", i + 1))?;
        if den.is_zero() {
            return Err(bad(&format!(
                "witness {} denominator reduces to zero",
                i + 1
            )));
        }
        witnesses.push(Fraction::new(den, num, w.bound()).map_err(CertError::Ore)?);
    }
    let centers = cert
        .centers
        .iter()
        .enumerate()
        .map(|(i, c)| rebase(c, &format!("center {}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let generators = cert
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| rebase(g, &format!("generator {}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut recovery = Vec::with_capacity(cert.recovery.len());
    for (i, (q, pp)) in cert.recovery.iter().enumerate() {
        let qr = q
            .reduce_mod(p)
            .map_err(|_| bad(&format!("recovery q_{}", i + 1)))?;
        let pr = pp
            .reduce_mod(p)
            .map_err(|_| bad(&format!("recovery p_{}", i + 1)))?;
        if qr.is_zero() {
            return Err(bad(&format!("recovery q_{} reduces to zero", i + 1)));
        }
        let reroot = |e: AlgebraElement| {
            let mut out = w_family.zero();
            for (m, c) in e.terms() {
                out.add_term(m.clone(), c.clone());
            }
            out
        };
        recovery.push((reroot(qr), reroot(pr)));
    }
    let reduced = WitnessCertificate {
        descriptor: cert.descriptor.clone(),
        family,
        w_family,
        m: cert.m,
        l: cert.l,
        witnesses,
        centers,
        generators,
        recovery,
        bounds: cert.bounds,
        expected_tdeg: cert.expected_tdeg,
    };
    reduced.validate(false)?;
    Ok(reduced)
}
