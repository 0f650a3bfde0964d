//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

/// A power product, stored as an exponent vector with its total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(arity: usize) -> Self {
        Monomial::new(vec![0; arity])
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[idx] = 1;
        Monomial::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if self
            .exps
            .iter()
            .zip(&other.exps)
            .any(|(a, b)| a < b)
        {
            return None;
        }
        Some(Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.checked_div(self).is_some()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Append extra variables with zero exponent (used by the Rabinowitsch trick).
    pub fn extend_arity(&self, new_arity: usize) -> Self {
        let mut exps = self.exps.clone();
        exps.resize(new_arity, 0);
        Monomial::new(exps)
    }
}

// Storage order for term maps: degree first, then plain lexicographic on the
// exponent vector. Independent of the active monomial order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A monomial order: lex or degree-reverse-lex, composed with a variable
/// permutation. `perm[k]` is the variable compared at priority position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    perm: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: None,
        }
    }

    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            perm: None,
        }
    }

    pub fn with_permutation(kind: OrderKind, perm: Vec<usize>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &v in &perm {
            assert!(v < perm.len() && !seen[v], "not a permutation");
            seen[v] = true;
        }
        MonomialOrder {
            kind,
            perm: Some(perm),
        }
    }

    fn exp_at(&self, m: &Monomial, pos: usize) -> u32 {
        match &self.perm {
            Some(p) => m.exp(p[pos]),
            None => m.exp(pos),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        let n = a.arity();
        match self.kind {
            OrderKind::Lex => {
                for k in 0..n {
                    match self.exp_at(a, k).cmp(&self.exp_at(b, k)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    for k in (0..n).rev() {
                        match self.exp_at(a, k).cmp(&self.exp_at(b, k)) {
                            Ordering::Equal => continue,
                            // The monomial with the smaller exponent in the
                            // last differing position is the larger one.
                            ord => return ord.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lex_order() {
        let o = MonomialOrder::lex();
        // x > y^5 in lex(x > y)
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn degrevlex_order() {
        let o = MonomialOrder::degrevlex();
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 5]), &m(&[1, 0])), Ordering::Greater);
        // x^2yz < xy^3: same degree 4; compare reversed, first difference at z
        assert_eq!(o.cmp(&m(&[2, 1, 1]), &m(&[1, 3, 0])), Ordering::Less);
        // standard grevlex: x^2 > xy > y^2 > xz > yz > z^2
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lcm_div() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.checked_div(&m(&[1, 0, 1])).unwrap(), m(&[1, 0, 0]));
        assert!(a.checked_div(&b).is_none());
    }
}
