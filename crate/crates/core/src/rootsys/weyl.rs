//! Weyl group enumeration by breadth-first closure over simple reflections,
//! acting crystallographically on the simple-root lattice.

use std::collections::BTreeMap;

use super::{Root, RootSystem, RootSystemError};

pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// A Weyl group element: its integer matrix on the simple-root lattice plus a
/// shortest word in the simple reflections (empty word for the identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylGroupElement {
    /// Column j holds the coordinates of the image of alpha_j.
    matrix: Vec<Vec<i64>>,
    word: Vec<usize>,
}

impl WeylGroupElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![vec![0i64; rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1;
        }
        WeylGroupElement {
            matrix,
            word: Vec::new(),
        }
    }

    /// Simple reflection s_i: maps alpha_j to alpha_j - a[j][i] alpha_i.
    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank();
        let mut m = WeylGroupElement::identity(n);
        for j in 0..n {
            m.matrix[i][j] -= rs.cartan_matrix()[j][i];
        }
        m.word = vec![i];
        m
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn apply(&self, r: &Root) -> Root {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[i][j] * r[j]).sum())
            .collect()
    }

    /// Matrix product: `self` after `other` (so words concatenate).
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.rank();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum();
            }
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylGroupElement { matrix, word }
    }

    /// Inverse via integer adjugate-free search is unnecessary: Weyl matrices
    /// are orthogonal for the root pairing, so invert by word reversal.
    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let mut acc = WeylGroupElement::identity(self.rank());
        for &i in self.word.iter().rev() {
            acc = acc.compose(&WeylGroupElement::simple_reflection(rs, i));
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
    }
}

/// Enumerate the whole Weyl group; errors if the closure exceeds `cap`.
/// The identity comes first; order is breadth-first and deterministic.
pub fn weyl_group(rs: &RootSystem, cap: usize) -> Result<Vec<WeylGroupElement>, RootSystemError> {
    let gens: Vec<WeylGroupElement> = (0..rs.rank())
        .map(|i| WeylGroupElement::simple_reflection(rs, i))
        .collect();
    let id = WeylGroupElement::identity(rs.rank());
    let mut seen: BTreeMap<Vec<Vec<i64>>, usize> = BTreeMap::new();
    let mut out = vec![id.clone()];
    seen.insert(id.matrix.clone(), 0);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let prod = g.compose(w);
                if !seen.contains_key(&prod.matrix) {
                    if out.len() + 1 > cap {
                        return Err(RootSystemError::WeylCap(cap));
                    }
                    // w' = s_i * w; store word with the new letter first
                    let mut word = g.word.clone();
                    word.extend_from_slice(&w.word);
                    let elem = WeylGroupElement {
                        matrix: prod.matrix,
                        word,
                    };
                    seen.insert(elem.matrix.clone(), out.len());
                    out.push(elem.clone());
                    next.push(elem);
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// The faithful integer matrices of an enumerated group, in enumeration order.
pub fn crystallographic_matrices(group: &[WeylGroupElement]) -> Vec<Vec<Vec<i64>>> {
    group.iter().map(|w| w.matrix.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLabel;

    #[test]
    fn a1_order_two() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let w = weyl_group(&rs, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w[1].matrix(), &[vec![-1]]);
    }

    #[test]
    fn a2_order_six_b2_order_eight() {
        let a2 = RootSystem::build(TypeLabel::A, 2).unwrap();
        assert_eq!(weyl_group(&a2, DEFAULT_WEYL_CAP).unwrap().len(), 6);
        let b2 = RootSystem::build(TypeLabel::B, 2).unwrap();
        assert_eq!(weyl_group(&b2, DEFAULT_WEYL_CAP).unwrap().len(), 8);
    }

    #[test]
    fn cap_is_enforced() {
        let b3 = RootSystem::build(TypeLabel::B, 3).unwrap();
        assert!(matches!(
            weyl_group(&b3, 10),
            Err(RootSystemError::WeylCap(10))
        ));
    }

    #[test]
    fn group_permutes_roots_and_closes() {
        let rs = RootSystem::build(TypeLabel::B, 2).unwrap();
        let group = weyl_group(&rs, DEFAULT_WEYL_CAP).unwrap();
        for w in &group {
            for r in rs.roots() {
                assert!(rs.is_root(&w.apply(r)));
            }
            // stored word reproduces the matrix
            let mut acc = WeylGroupElement::identity(rs.rank());
            for &i in w.word() {
                acc = acc.compose(&WeylGroupElement::simple_reflection(&rs, i));
            }
            assert_eq!(acc.matrix(), w.matrix());
            // inverse is present
            let inv = w.inverse(&rs);
            assert!(group.iter().any(|g| g.matrix() == inv.matrix()));
            assert!(w.compose(&inv).is_identity());
        }
        // closure under products
        for a in &group {
            for b in &group {
                let p = a.compose(b);
                assert!(group.iter().any(|g| g.matrix() == p.matrix()));
            }
        }
    }

    #[test]
    fn a2_simple_reflection_images() {
        let rs = RootSystem::build(TypeLabel::A, 2).unwrap();
        let s1 = WeylGroupElement::simple_reflection(&rs, 0);
        assert_eq!(s1.apply(&vec![1, 0]), vec![-1, 0]);
        assert_eq!(s1.apply(&vec![0, 1]), vec![1, 1]);
    }
}
