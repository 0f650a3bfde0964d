//! Linear group actions on Weyl algebras by conjugation: each group element
//! sends the x-generators through an integer matrix and the y-generators
//! through its inverse transpose, which preserves the defining relations and
//! every Bernstein filtration piece.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraElement, AlgebraError, FamilyInstance};
use crate::polycore::Monomial;
use crate::rootsys::{RootSystem, WeylGroupElement};

/// One group element's generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ActionMaps {
    matrix: Vec<Vec<i64>>,
    x_images: Vec<AlgebraElement>,
    y_images: Vec<AlgebraElement>,
}

/// A finite group acting linearly on the ambient Weyl algebra. The images
/// are stored per element; relation preservation is checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    ambient: Arc<FamilyInstance>,
    elements: Vec<ActionMaps>,
}

fn invert_integer_matrix(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from(BigInt::from(m[i][j]))
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for j in 0..2 * n {
            a[col][j] = &a[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let v = &a[r][j] - &f * &a[col][j];
                    a[r][j] = v;
                }
            }
        }
    }
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = &a[i][n + j];
            if !v.denom().is_one() {
                return None;
            }
            out[i][j] = i64::try_from(v.to_integer()).ok()?;
        }
    }
    Some(out)
}

impl GroupAction {
    fn from_matrices(
        ambient: &Arc<FamilyInstance>,
        matrices: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self, AlgebraError> {
        let n = ambient.weyl_pairs();
        let mut elements = Vec::with_capacity(matrices.len());
        for m in matrices {
            let inv = invert_integer_matrix(&m).ok_or(AlgebraError::ActionRelationViolation)?;
            // x_j -> sum_i m[i][j] x_i ; y_j -> sum_i inv[j][i] y_i
            let mut x_images = Vec::with_capacity(n);
            let mut y_images = Vec::with_capacity(n);
            for j in 0..n {
                let mut xi = ambient.zero();
                let mut yi = ambient.zero();
                for i in 0..n {
                    if m[i][j] != 0 {
                        xi.add_term(
                            Monomial::var(ambient.generator_count(), i),
                            crate::polycore::Coefficient::from_i64(ambient.domain(), m[i][j]),
                        );
                    }
                    if inv[j][i] != 0 {
                        yi.add_term(
                            Monomial::var(ambient.generator_count(), n + i),
                            crate::polycore::Coefficient::from_i64(ambient.domain(), inv[j][i]),
                        );
                    }
                }
                x_images.push(xi);
                y_images.push(yi);
            }
            let maps = ActionMaps {
                matrix: m,
                x_images,
                y_images,
            };
            check_relations(ambient, &maps)?;
            elements.push(maps);
        }
        Ok(GroupAction {
            ambient: Arc::clone(ambient),
            elements,
        })
    }

    pub(super) fn from_weyl_group(
        ambient: &Arc<FamilyInstance>,
        _rs: &RootSystem,
        group: &[WeylGroupElement],
    ) -> Result<Self, AlgebraError> {
        Self::from_matrices(
            ambient,
            group.iter().map(|w| w.matrix().to_vec()).collect(),
        )
    }

    pub(super) fn from_permutations(
        ambient: &Arc<FamilyInstance>,
        n: usize,
        gens: &[Vec<usize>],
    ) -> Result<Self, AlgebraError> {
        // close the permutation group
        let identity: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in gens {
                if g.len() != n || {
                    let mut sorted = g.clone();
                    sorted.sort_unstable();
                    sorted != (0..n).collect::<Vec<_>>()
                } {
                    return Err(AlgebraError::ActionRelationViolation);
                }
                let comp: Vec<usize> = (0..n).map(|i| g[p[i]]).collect();
                if seen.insert(comp.clone()) {
                    frontier.push(comp);
                }
            }
        }
        let matrices: Vec<Vec<Vec<i64>>> = seen
            .into_iter()
            .map(|p| {
                let mut m = vec![vec![0i64; n]; n];
                for (src, &dst) in p.iter().enumerate() {
                    m[dst][src] = 1;
                }
                m
            })
            .collect();
        Self::from_matrices(ambient, matrices)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Matrices of all elements, enumeration order.
    pub fn matrices(&self) -> Vec<&[Vec<i64>]> {
        self.elements.iter().map(|e| e.matrix.as_slice()).collect()
    }

    fn maps_for_matrix(&self, matrix: &[Vec<i64>]) -> Option<&ActionMaps> {
        self.elements.iter().find(|e| e.matrix == matrix)
    }

    /// Image of `a` under the element with the given lattice matrix.
    pub fn apply_matrix(
        &self,
        matrix: &[Vec<i64>],
        a: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        let maps = self
            .maps_for_matrix(matrix)
            .ok_or(AlgebraError::UndefinedAction)?;
        self.apply_maps(maps, a)
    }

    /// Image of `a` under the `idx`-th enumerated element.
    pub fn apply_index(&self, idx: usize, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let maps = self
            .elements
            .get(idx)
            .ok_or(AlgebraError::UndefinedAction)?;
        self.apply_maps(maps, a)
    }

    fn apply_maps(&self, maps: &ActionMaps, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let fam = a.family();
        let n = fam.weyl_pairs();
        // The family carrying `a` may be the invariant instance; its images
        // were built over the ambient presentation, so rebuild terms directly.
        let mut out = fam.zero();
        for (m, c) in a.terms() {
            let mut acc = fam.one();
            for i in 0..n {
                for _ in 0..m.exp(i) {
                    acc = acc.mul(&rebuild(fam, &maps.x_images[i]))?;
                }
            }
            for i in 0..n {
                for _ in 0..m.exp(n + i) {
                    acc = acc.mul(&rebuild(fam, &maps.y_images[i]))?;
                }
            }
            // central variables are fixed
            let mut central = vec![0u32; fam.generator_count()];
            for j in (2 * n)..fam.generator_count() {
                central[j] = m.exp(j);
            }
            let zmono = fam.monomial_element(Monomial::new(central), c.clone());
            acc = acc.mul(&zmono)?;
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// True when `a` is fixed by every element.
    pub fn fixes(&self, a: &AlgebraElement) -> Result<bool, AlgebraError> {
        for idx in 0..self.elements.len() {
            if &self.apply_index(idx, a)? != a {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

// Re-root an integer-coefficient image element onto the family (and domain)
// of the element being acted on.
fn rebuild(fam: &Arc<FamilyInstance>, image: &AlgebraElement) -> AlgebraElement {
    use crate::polycore::Coefficient;
    let mut out = fam.zero();
    for (m, c) in image.terms() {
        let v = match c {
            Coefficient::Int(v) => v.clone(),
            Coefficient::Rat(v) => {
                debug_assert!(num_traits::One::is_one(v.denom()));
                v.to_integer()
            }
            Coefficient::Mod { val, .. } => num_bigint::BigInt::from(*val),
        };
        out.add_term(m.clone(), Coefficient::from_bigint(fam.domain(), v));
    }
    out
}

fn check_relations(fam: &Arc<FamilyInstance>, maps: &ActionMaps) -> Result<(), AlgebraError> {
    let n = fam.weyl_pairs();
    let one = fam.one();
    for i in 0..n {
        for j in 0..n {
            let xx = maps.x_images[i].commutator(&maps.x_images[j])?;
            let yy = maps.y_images[i].commutator(&maps.y_images[j])?;
            if !xx.is_zero() || !yy.is_zero() {
                return Err(AlgebraError::ActionRelationViolation);
            }
            let yx = maps.y_images[i].commutator(&maps.x_images[j])?;
            let expected = if i == j { one.clone() } else { fam.zero() };
            if yx != expected {
                return Err(AlgebraError::ActionRelationViolation);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::act;
    use crate::polycore::Domain;
    use crate::rootsys::{weyl_group, TypeLabel, DEFAULT_WEYL_CAP};

    #[test]
    fn a1_sign_action() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let fam = FamilyInstance::weyl_invariants(rs.clone(), DEFAULT_WEYL_CAP, Domain::Rat).unwrap();
        let group = weyl_group(&rs, DEFAULT_WEYL_CAP).unwrap();
        let x = fam.generator(0).unwrap();
        let y = fam.generator(1).unwrap();
        let s = &group[1];
        // x -> -x, y -> -y, xy -> xy
        assert_eq!(act(s, &x).unwrap(), x.neg());
        assert_eq!(act(s, &y).unwrap(), y.neg());
        let xy = x.mul(&y).unwrap();
        assert_eq!(act(s, &xy).unwrap(), xy);
    }

    #[test]
    fn a2_action_preserves_relations_and_degree() {
        let rs = RootSystem::build(TypeLabel::A, 2).unwrap();
        let fam = FamilyInstance::weyl_invariants(rs.clone(), DEFAULT_WEYL_CAP, Domain::Rat).unwrap();
        let group = weyl_group(&rs, DEFAULT_WEYL_CAP).unwrap();
        let s1 = &group[1];
        let x1 = fam.generator(0).unwrap();
        let img = act(s1, &x1).unwrap();
        assert_eq!(img.degree(), 1);
        // s1(alpha_1) = -alpha_1: x1 -> -x1 + (contributions from alpha_2 col)
        let action = fam.group_action().unwrap();
        for idx in 0..action.order() {
            let y1 = fam.generator(2).unwrap();
            let gx = action.apply_index(idx, &x1).unwrap();
            let gy = action.apply_index(idx, &y1).unwrap();
            assert_eq!(gy.commutator(&gx).unwrap(), fam.one());
        }
    }

    #[test]
    fn permutation_action_closure() {
        let fam = FamilyInstance::perm_invariants(3, &[vec![1, 2, 0]], Domain::Rat).unwrap();
        let action = fam.group_action().unwrap();
        assert_eq!(action.order(), 3);
        let x1 = fam.generator(0).unwrap();
        let symm = fam
            .generator(0)
            .unwrap()
            .add(&fam.generator(1).unwrap())
            .unwrap()
            .add(&fam.generator(2).unwrap())
            .unwrap();
        assert!(action.fixes(&symm).unwrap());
        assert!(!action.fixes(&x1).unwrap());
    }
}
