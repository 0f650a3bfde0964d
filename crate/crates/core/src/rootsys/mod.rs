//! Root systems of types A-G at small rank: Cartan matrices, reflection
//! closure of the simple roots, Chevalley structure constants over the
//! integers, and Weyl group enumeration.

mod chevalley;
mod weyl;

pub use chevalley::{ChevalleyBasis, SIGN_CONVENTION};
pub use weyl::{crystallographic_matrices, weyl_group, WeylGroupElement, DEFAULT_WEYL_CAP};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid Dynkin datum: type {kind} with rank {rank}")]
    InvalidDatum { kind: char, rank: usize },
    #[error("rank {0} exceeds the supported cap of 8")]
    RankCap(usize),
    #[error("Weyl group enumeration exceeded the cap of {0} elements")]
    WeylCap(usize),
    #[error("Jacobi identity violated on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("unknown type label {0:?} (expected A-G)")]
    UnknownType(char),
}

/// Dynkin type label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn from_char(c: char) -> Result<Self, RootSystemError> {
        match c.to_ascii_uppercase() {
            'A' => Ok(TypeLabel::A),
            'B' => Ok(TypeLabel::B),
            'C' => Ok(TypeLabel::C),
            'D' => Ok(TypeLabel::D),
            'E' => Ok(TypeLabel::E),
            'F' => Ok(TypeLabel::F),
            'G' => Ok(TypeLabel::G),
            other => Err(RootSystemError::UnknownType(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A root expressed by its integer coordinates in the simple-root basis.
pub type Root = Vec<i64>;

/// A finite crystallographic root system with a fixed base of simple roots.
///
/// Roots are integer coordinate vectors in the simple-root basis; the first
/// `N` entries of `roots` are the positive roots sorted by height then lex,
/// followed by their negatives in the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    kind: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Symmetrizer: d[i] = (alpha_i, alpha_i)/2, normalized so short roots
    /// have d = 1.
    sym: Vec<i64>,
    roots: Vec<Root>,
    positive_count: usize,
}

/// Bourbaki Cartan matrix for a valid (type, rank) datum.
/// Entry `a[i][j]` is the pairing of alpha_i against the coroot of alpha_j.
fn cartan_matrix(kind: TypeLabel, n: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>), RootSystemError> {
    let invalid = || RootSystemError::InvalidDatum {
        kind: kind.as_char(),
        rank: n,
    };
    if n == 0 {
        return Err(invalid());
    }
    if n > 8 {
        return Err(RootSystemError::RankCap(n));
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let sym: Vec<i64> = match kind {
        TypeLabel::A => {
            for i in 1..n {
                chain(&mut a, i - 1, i);
            }
            vec![1; n]
        }
        TypeLabel::B => {
            if n < 2 {
                return Err(invalid());
            }
            for i in 1..n {
                chain(&mut a, i - 1, i);
            }
            // alpha_n short
            a[n - 2][n - 1] = -2;
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        TypeLabel::C => {
            if n < 3 {
                return Err(invalid());
            }
            for i in 1..n {
                chain(&mut a, i - 1, i);
            }
            // alpha_n long
            a[n - 1][n - 2] = -2;
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        TypeLabel::D => {
            if n < 4 {
                return Err(invalid());
            }
            for i in 1..(n - 1) {
                chain(&mut a, i - 1, i);
            }
            chain(&mut a, n - 3, n - 1);
            vec![1; n]
        }
        TypeLabel::E => {
            if !(6..=8).contains(&n) {
                return Err(invalid());
            }
            // Bourbaki: chain 1-3-4-5-...-n with node 2 hanging off node 4.
            chain(&mut a, 0, 2);
            chain(&mut a, 1, 3);
            for i in 3..n {
                chain(&mut a, i - 1, i);
            }
            vec![1; n]
        }
        TypeLabel::F => {
            if n != 4 {
                return Err(invalid());
            }
            chain(&mut a, 0, 1);
            chain(&mut a, 1, 2);
            chain(&mut a, 2, 3);
            a[1][2] = -2; // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            vec![2, 2, 1, 1]
        }
        TypeLabel::G => {
            if n != 2 {
                return Err(invalid());
            }
            a[0][1] = -1;
            a[1][0] = -3;
            vec![1, 3] // alpha_1 short, alpha_2 long
        }
    };
    Ok((a, sym))
}

fn height(r: &Root) -> i64 {
    r.iter().sum()
}

impl RootSystem {
    /// Build the full root system by closing the simple roots under simple
    /// reflections.
    pub fn build(kind: TypeLabel, rank: usize) -> Result<Self, RootSystemError> {
        let (cartan, sym) = cartan_matrix(kind, rank)?;
        let mut seen: std::collections::BTreeSet<Root> = std::collections::BTreeSet::new();
        let mut queue: Vec<Root> = Vec::new();
        for i in 0..rank {
            let mut r = vec![0i64; rank];
            r[i] = 1;
            seen.insert(r.clone());
            queue.push(r);
        }
        while let Some(r) = queue.pop() {
            for i in 0..rank {
                // s_i(r) = r - <r, alpha_i^v> alpha_i
                let pairing: i64 = (0..rank).map(|j| r[j] * cartan[j][i]).sum();
                let mut img = r.clone();
                img[i] -= pairing;
                if seen.insert(img.clone()) {
                    queue.push(img);
                }
            }
        }
        let mut positives: Vec<Root> = seen
            .iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .cloned()
            .collect();
        positives.sort_by_key(|r| (height(r), r.clone()));
        let positive_count = positives.len();
        debug_assert_eq!(seen.len(), 2 * positive_count);
        let mut roots = positives;
        let negatives: Vec<Root> = roots
            .iter()
            .map(|r| r.iter().map(|&c| -c).collect())
            .collect();
        roots.extend(negatives);
        Ok(RootSystem {
            kind,
            rank,
            cartan,
            sym,
            roots,
            positive_count,
        })
    }

    pub fn type_label(&self) -> TypeLabel {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots: positives (sorted by height then lex) followed by their
    /// negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.positive_count]
    }

    pub fn num_positive(&self) -> usize {
        self.positive_count
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Lie algebra dimension 2N + n.
    pub fn dimension(&self) -> usize {
        self.roots.len() + self.rank
    }

    /// Index of a positive root, if `r` is one.
    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.roots[..self.positive_count].iter().position(|x| x == r)
    }

    /// Signed lookup: `(+, k)` when `r` is the k-th positive root, `(-, k)`
    /// when `-r` is.
    pub fn signed_index(&self, r: &Root) -> Option<(bool, usize)> {
        if let Some(k) = self.positive_index(r) {
            return Some((true, k));
        }
        let neg: Root = r.iter().map(|&c| -c).collect();
        self.positive_index(&neg).map(|k| (false, k))
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.signed_index(r).is_some()
    }

    /// Pairing `<r, alpha_i^v>`.
    pub fn coroot_pairing(&self, r: &Root, i: usize) -> i64 {
        (0..self.rank).map(|j| r[j] * self.cartan[j][i]).sum()
    }

    /// Symmetrized inner product `(r, s)` with short roots of squared norm 2.
    /// Uses `(alpha_i, alpha_j) = a[i][j] * d_j`.
    pub fn inner(&self, r: &Root, s: &Root) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += r[i] * s[j] * self.cartan[i][j] * self.sym[j];
            }
        }
        acc
    }

    /// Coroot of `r` written over the simple coroots; always integral.
    pub fn coroot_coords(&self, r: &Root) -> Vec<i64> {
        let norm = self.inner(r, r);
        debug_assert!(norm > 0);
        (0..self.rank)
            .map(|i| {
                let num = r[i] * 2 * self.sym[i];
                debug_assert_eq!(num % norm, 0, "coroot coordinates must be integral");
                num / norm
            })
            .collect()
    }

    /// Down-string length through `beta` along `alpha`: the largest `k` with
    /// `beta - k*alpha` a root.
    pub fn string_down(&self, alpha: &Root, beta: &Root) -> i64 {
        let mut k = 0;
        loop {
            let probe: Root = beta
                .iter()
                .zip(alpha)
                .map(|(b, a)| b - (k + 1) * a)
                .collect();
            if probe.iter().all(|&c| c == 0) || !self.is_root(&probe) {
                return k;
            }
            k += 1;
        }
    }

    /// Integer Chevalley structure constants; fails only on an internal
    /// sign-convention bug (Jacobi violation).
    pub fn chevalley_constants(&self) -> Result<ChevalleyBasis, RootSystemError> {
        ChevalleyBasis::build(self)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_has_two_roots() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        assert_eq!(rs.num_roots(), 2);
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(rs.dimension(), 3);
    }

    #[test]
    fn b2_has_eight_roots() {
        let rs = RootSystem::build(TypeLabel::B, 2).unwrap();
        assert_eq!(rs.num_roots(), 8);
        assert_eq!(rs.cartan_matrix()[0][1], -2);
        assert_eq!(rs.cartan_matrix()[1][0], -1);
    }

    #[test]
    fn g2_has_twelve_roots() {
        let rs = RootSystem::build(TypeLabel::G, 2).unwrap();
        assert_eq!(rs.num_roots(), 12);
    }

    #[test]
    fn invalid_data_rejected() {
        assert!(RootSystem::build(TypeLabel::G, 3).is_err());
        assert!(RootSystem::build(TypeLabel::F, 2).is_err());
        assert!(RootSystem::build(TypeLabel::E, 5).is_err());
        assert!(RootSystem::build(TypeLabel::B, 1).is_err());
        assert!(RootSystem::build(TypeLabel::A, 9).is_err());
    }

    #[test]
    fn symmetry_and_closure_invariants() {
        for (kind, rank) in [
            (TypeLabel::A, 3),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::D, 4),
            (TypeLabel::G, 2),
            (TypeLabel::F, 4),
        ] {
            let rs = RootSystem::build(kind, rank).unwrap();
            assert_eq!(rs.num_roots(), 2 * rs.num_positive());
            for r in rs.roots() {
                let neg: Root = r.iter().map(|&c| -c).collect();
                assert!(rs.is_root(&neg));
                let all_nonneg = r.iter().all(|&c| c >= 0);
                let all_nonpos = r.iter().all(|&c| c <= 0);
                assert!(all_nonneg || all_nonpos);
            }
            // Cartan integers match the matrix on simple pairs
            for i in 0..rank {
                for j in 0..rank {
                    let mut alpha = vec![0i64; rank];
                    alpha[i] = 1;
                    assert_eq!(rs.coroot_pairing(&alpha, j), rs.cartan_matrix()[i][j]);
                }
            }
        }
    }

    #[test]
    fn known_root_counts() {
        let counts = [
            (TypeLabel::A, 2, 6),
            (TypeLabel::A, 3, 12),
            (TypeLabel::B, 3, 18),
            (TypeLabel::C, 3, 18),
            (TypeLabel::D, 4, 24),
            (TypeLabel::F, 4, 48),
            (TypeLabel::E, 6, 72),
        ];
        for (kind, rank, count) in counts {
            assert_eq!(RootSystem::build(kind, rank).unwrap().num_roots(), count);
        }
    }
}
