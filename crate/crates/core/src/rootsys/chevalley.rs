//! Integer structure constants for the Chevalley basis.
//!
//! Signs are fixed by the extraspecial-pair convention over the (height, lex)
//! order on positive roots: for each non-simple positive root the special
//! pair with minimal first component gets `N = +(p+1)`, every other constant
//! is then forced by the Jacobi identity through zero-sum-triple rotations.
//! The finished table is validated by checking Jacobi on all basis triples.

use std::collections::BTreeMap;

use super::{Root, RootSystem, RootSystemError};

/// Identifier for the sign convention baked into shipped tables; certificates
/// record it so they stay self-describing.
pub const SIGN_CONVENTION: &str = "extraspecial-height-lex";

/// Ordered basis: `e_k` for each positive root (height-lex order), then `f_k`
/// for the corresponding negatives, then `h_i` for the simple coroots; all
/// brackets have integer coefficients over this basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChevalleyBasis {
    num_positive: usize,
    rank: usize,
    /// brackets[(i, j)] for i < j, as sparse (basis index, coefficient).
    brackets: BTreeMap<(usize, usize), Vec<(usize, i64)>>,
}

struct Builder<'a> {
    rs: &'a RootSystem,
    /// n[(a, b)] for positive-root indices a < b with root_a + root_b a root.
    n_pos: BTreeMap<(usize, usize), i64>,
}

fn neg(r: &Root) -> Root {
    r.iter().map(|&c| -c).collect()
}

fn add(r: &Root, s: &Root) -> Root {
    r.iter().zip(s).map(|(a, b)| a + b).collect()
}

fn sub(r: &Root, s: &Root) -> Root {
    r.iter().zip(s).map(|(a, b)| a - b).collect()
}

fn is_positive(r: &Root) -> bool {
    r.iter().all(|&c| c >= 0)
}

impl<'a> Builder<'a> {
    /// Structure constant for arbitrary-sign roots `x`, `y` with `x + y` a root.
    fn n_any(&self, x: &Root, y: &Root) -> i64 {
        let s = add(x, y);
        debug_assert!(self.rs.is_root(&s), "n_any requires x + y to be a root");
        match (is_positive(x), is_positive(y)) {
            (true, true) => {
                let a = self.rs.positive_index(x).expect("positive root");
                let b = self.rs.positive_index(y).expect("positive root");
                if a < b {
                    *self.n_pos.get(&(a, b)).expect("filled positive pair")
                } else {
                    -*self.n_pos.get(&(b, a)).expect("filled positive pair")
                }
            }
            (false, false) => -self.n_any(&neg(x), &neg(y)),
            (false, true) => -self.n_any(y, x),
            (true, false) => {
                // zero-sum triple (x, y, z): N_{x,y}/(z,z) = N_{y,z}/(x,x)
                //                                          = N_{z,x}/(y,y)
                let z = neg(&s);
                if is_positive(&s) {
                    let num = self.rs.inner(&z, &z) * self.n_any(y, &z);
                    let den = self.rs.inner(x, x);
                    debug_assert_eq!(num % den, 0);
                    num / den
                } else {
                    let num = self.rs.inner(&z, &z) * self.n_any(&z, x);
                    let den = self.rs.inner(y, y);
                    debug_assert_eq!(num % den, 0);
                    num / den
                }
            }
        }
    }

    fn fill_positive_pairs(&mut self) {
        let positives: Vec<Root> = self.rs.positive_roots().to_vec();
        for gamma in positives.iter() {
            // special pairs (a, b), a < b, summing to gamma
            let mut special: Vec<(usize, usize)> = Vec::new();
            for a in 0..positives.len() {
                let rest = sub(gamma, &positives[a]);
                if rest.iter().all(|&c| c >= 0) {
                    if let Some(b) = self.rs.positive_index(&rest) {
                        if a < b {
                            special.push((a, b));
                        }
                    }
                }
            }
            if special.is_empty() {
                continue;
            }
            // extraspecial: minimal first component in the height-lex order
            let &(a1, b1) = special.iter().min_by_key(|(a, _)| *a).unwrap();
            let alpha1 = &positives[a1];
            let beta1 = &positives[b1];
            let p = self.rs.string_down(alpha1, beta1);
            self.n_pos.insert((a1, b1), p + 1);

            for &(a, b) in &special {
                if (a, b) == (a1, b1) {
                    continue;
                }
                let alpha = &positives[a];
                let beta = &positives[b];
                let delta = sub(beta1, alpha);
                let t2 = if self.rs.is_root(&delta) {
                    self.n_any(beta1, &neg(alpha)) * self.n_any(&delta, alpha1)
                } else {
                    0
                };
                let eps = sub(alpha1, alpha);
                let t3 = if self.rs.is_root(&eps) {
                    self.n_any(&neg(alpha), alpha1) * self.n_any(&eps, beta1)
                } else {
                    0
                };
                let num = self.rs.inner(gamma, gamma) * (t2 + t3);
                let den = self.rs.inner(beta, beta) * (p + 1);
                debug_assert_eq!(num % den, 0, "special-pair constant must be integral");
                let value = num / den;
                let expected = self.rs.string_down(alpha, beta) + 1;
                debug_assert_eq!(
                    value.abs(),
                    expected,
                    "constant magnitude must match the root string"
                );
                self.n_pos.insert((a, b), value);
            }
        }
    }
}

impl ChevalleyBasis {
    pub(super) fn build(rs: &RootSystem) -> Result<Self, RootSystemError> {
        let mut builder = Builder {
            rs,
            n_pos: BTreeMap::new(),
        };
        builder.fill_positive_pairs();

        let np = rs.num_positive();
        let rank = rs.rank();
        let dim = 2 * np + rank;
        let positives = rs.positive_roots().to_vec();
        let signed_root = |idx: usize| -> Root {
            if idx < np {
                positives[idx].clone()
            } else {
                neg(&positives[idx - np])
            }
        };

        let mut brackets = BTreeMap::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let entry: Vec<(usize, i64)> = if i >= 2 * np && j >= 2 * np {
                    Vec::new() // [h, h] = 0
                } else if j >= 2 * np {
                    // [e/f, h] = -[h, e/f]
                    let hi = j - 2 * np;
                    let r = signed_root(i);
                    let pairing = rs.coroot_pairing(&r, hi);
                    if pairing == 0 {
                        Vec::new()
                    } else {
                        vec![(i, -pairing)]
                    }
                } else {
                    let ri = signed_root(i);
                    let rj = signed_root(j);
                    let s = add(&ri, &rj);
                    if s.iter().all(|&c| c == 0) {
                        // [e_a, f_a] = h_a
                        rs.coroot_coords(&ri)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| *c != 0)
                            .map(|(k, c)| (2 * np + k, c))
                            .collect()
                    } else if let Some((pos, k)) = rs.signed_index(&s) {
                        let c = builder.n_any(&ri, &rj);
                        let target = if pos { k } else { np + k };
                        if c == 0 {
                            Vec::new()
                        } else {
                            vec![(target, c)]
                        }
                    } else {
                        Vec::new()
                    }
                };
                if !entry.is_empty() {
                    brackets.insert((i, j), entry);
                }
            }
        }

        let basis = ChevalleyBasis {
            num_positive: np,
            rank,
            brackets,
        };
        basis.check_jacobi()?;
        Ok(basis)
    }

    pub fn dimension(&self) -> usize {
        2 * self.num_positive + self.rank
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Basis index of `e_k`.
    pub fn e_index(&self, k: usize) -> usize {
        debug_assert!(k < self.num_positive);
        k
    }

    /// Basis index of `f_k`.
    pub fn f_index(&self, k: usize) -> usize {
        debug_assert!(k < self.num_positive);
        self.num_positive + k
    }

    /// Basis index of `h_i`.
    pub fn h_index(&self, i: usize) -> usize {
        debug_assert!(i < self.rank);
        2 * self.num_positive + i
    }

    /// Bracket of two basis elements as a sparse integer vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Vec::new(),
            Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|&(k, c)| (k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    /// Bracket of sparse integer vectors, extended bilinearly.
    pub fn bracket(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for (k, c) in self.bracket_basis(i, j) {
                    let slot = acc.entry(k).or_insert(0);
                    *slot += a * b * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// Structure constant `N` with `[e_x, e_y] = N e_{x+y}` for signed root
    /// indices over the positive list (`(true, k)` = e_k, `(false, k)` = f_k).
    pub fn pair_constant(&self, x: (bool, usize), y: (bool, usize)) -> Option<i64> {
        let xi = if x.0 { x.1 } else { self.num_positive + x.1 };
        let yi = if y.0 { y.1 } else { self.num_positive + y.1 };
        let b = self.bracket_basis(xi, yi);
        match b.as_slice() {
            [(k, c)] if *k < 2 * self.num_positive => Some(*c),
            _ => None,
        }
    }

    /// All stored structure constants, for integrality / reduction sweeps.
    pub fn all_constants(&self) -> impl Iterator<Item = i64> + '_ {
        self.brackets.values().flatten().map(|&(_, c)| c)
    }

    fn check_jacobi(&self) -> Result<(), RootSystemError> {
        let dim = self.dimension();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    if !self.jacobi_holds(i, j, k) {
                        return Err(RootSystemError::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[[i,j],k] + [[j,k],i] + [[k,i],j] = 0` on basis elements.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        let accumulate = |inner: Vec<(usize, i64)>, outer: usize, acc: &mut BTreeMap<usize, i64>| {
            for (m, c) in inner {
                for (t, d) in self.bracket_basis(m, outer) {
                    *acc.entry(t).or_insert(0) += c * d;
                }
            }
        };
        accumulate(self.bracket_basis(i, j), k, &mut acc);
        accumulate(self.bracket_basis(j, k), i, &mut acc);
        accumulate(self.bracket_basis(k, i), j, &mut acc);
        acc.values().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLabel;

    #[test]
    fn a1_relations() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let cb = rs.chevalley_constants().unwrap();
        // [h, e] = 2e, [h, f] = -2f, [e, f] = h
        assert_eq!(cb.bracket_basis(cb.h_index(0), cb.e_index(0)), vec![(0, 2)]);
        assert_eq!(cb.bracket_basis(cb.h_index(0), cb.f_index(0)), vec![(1, -2)]);
        assert_eq!(cb.bracket_basis(cb.e_index(0), cb.f_index(0)), vec![(2, 1)]);
    }

    #[test]
    fn a2_simple_pair_constant_is_unit() {
        let rs = RootSystem::build(TypeLabel::A, 2).unwrap();
        let cb = rs.chevalley_constants().unwrap();
        // alpha + beta: p = 0 so N = +-1; extraspecial convention gives +1
        let c = cb.pair_constant((true, 0), (true, 1)).unwrap();
        assert_eq!(c.abs(), 1);
    }

    #[test]
    fn jacobi_all_small_types() {
        for (kind, rank) in [
            (TypeLabel::A, 1),
            (TypeLabel::A, 2),
            (TypeLabel::A, 3),
            (TypeLabel::B, 2),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::D, 4),
            (TypeLabel::G, 2),
        ] {
            let rs = RootSystem::build(kind, rank).unwrap();
            // build() already verifies Jacobi exhaustively
            let cb = rs.chevalley_constants().unwrap();
            assert_eq!(cb.dimension(), rs.dimension());
        }
    }

    #[test]
    fn g2_constants_match_root_strings() {
        let rs = RootSystem::build(TypeLabel::G, 2).unwrap();
        let cb = rs.chevalley_constants().unwrap();
        let np = rs.num_positive();
        for a in 0..np {
            for b in 0..np {
                if a == b {
                    continue;
                }
                let sum: Root = rs.positive_roots()[a]
                    .iter()
                    .zip(&rs.positive_roots()[b])
                    .map(|(x, y)| x + y)
                    .collect();
                if rs.positive_index(&sum).is_some() {
                    let n = cb.pair_constant((true, a), (true, b)).unwrap();
                    let p = rs.string_down(&rs.positive_roots()[a], &rs.positive_roots()[b]);
                    assert_eq!(n.abs(), p + 1);
                }
            }
        }
    }
}
