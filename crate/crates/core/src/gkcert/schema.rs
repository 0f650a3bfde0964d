//! Certificate file format: UTF-8 JSON with element and fraction literals in
//! the canonical grammars. The schema version string is mandatory.

use serde::{Deserialize, Serialize};

pub const CERT_SCHEMA_VERSION: &str = "weylcert/cert-v1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyDescriptor {
    /// U(g) for the Chevalley form of the given root system.
    Enveloping { r#type: String, rank: usize },
    /// A_n invariants under the crystallographic Weyl group action.
    WeylInvariants { r#type: String, rank: usize },
    /// A_n invariants under a permutation group given by generator images
    /// (zero-based).
    PermInvariants { n: usize, perms: Vec<Vec<usize>> },
    /// Plain Weyl algebra A_n with l adjoined central variables.
    Weyl { n: usize, l: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RecoveryPair {
    /// q_i in the w-algebra grammar (x's = first m witnesses, y's = last m,
    /// z's = center symbols).
    pub q: String,
    /// p_i in the same grammar.
    pub p: String,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundsConfig {
    pub initial: usize,
    pub ceiling: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateFile {
    pub schema_version: String,
    pub family: FamilyDescriptor,
    pub sign_convention: String,
    pub m: usize,
    pub l: usize,
    pub witnesses: Vec<String>,
    pub centers: Vec<String>,
    pub generators: Vec<String>,
    pub recovery: Vec<RecoveryPair>,
    pub bounds: BoundsConfig,
    pub expected_tdeg: usize,
}
