//! Sparse integer polynomials over a large variable space.
//!
//! Sentence systems routinely have tens of thousands of unknowns while each
//! equation touches a handful, so exponents are stored sparsely. The text
//! form is the same `v{k}` grammar as polycore; conversion to dense polycore
//! polynomials is only done for toy-sized decision runs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polycore::{Coefficient, Domain, Monomial, Poly, PolyError};

/// Sorted sparse exponent vector: (variable, exponent), exponent > 0.
pub type SparseMono = Vec<(u32, u32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    terms: BTreeMap<SparseMono, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: u32) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(vec![(v, 1)], BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SparseMono, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: SparseMono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert!(mono.windows(2).all(|w| w[0].0 < w[1].0));
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SparsePoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &SparsePoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        let mut out = SparsePoly::zero();
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(merge_monos(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter_map(|m| m.last().map(|&(v, _)| v))
            .max()
    }

    /// Exact evaluation at a rational point given by dense coordinates.
    pub fn eval(&self, point: &[Coefficient]) -> Coefficient {
        let mut acc = Coefficient::zero(Domain::Rat);
        for (m, c) in &self.terms {
            let mut t = Coefficient::Rat(num_rational::BigRational::from(c.clone()));
            for &(v, e) in m {
                for _ in 0..e {
                    t = t.mul(&point[v as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Dense polycore polynomial over `arity` variables in the target domain.
    pub fn to_dense(&self, arity: usize, domain: Domain) -> Result<Poly, PolyError> {
        let mut out = Poly::zero(arity, domain);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; arity];
            for &(v, e) in m {
                exps[v as usize] = e;
            }
            out.add_term(Monomial::new(exps), Coefficient::from_bigint(domain, c.clone()));
        }
        Ok(out)
    }

    /// Canonical text: terms in descending (degree, variables) order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut entries: Vec<(&SparseMono, &BigInt)> = self.terms.iter().collect();
        entries.sort_by(|(m1, _), (m2, _)| {
            let d1: u32 = m1.iter().map(|&(_, e)| e).sum();
            let d2: u32 = m2.iter().map(|&(_, e)| e).sum();
            d2.cmp(&d1).then_with(|| m1.cmp(m2))
        });
        let mut out = String::new();
        for (i, (m, c)) in entries.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.magnitude().to_string();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        format!("v{v}")
                    } else {
                        format!("v{v}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&vars.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, vars.join("*")));
            }
        }
        out
    }

    /// Parse the `v{k}` grammar with integer coefficients.
    pub fn parse(input: &str) -> Result<SparsePoly, PolyError> {
        let bytes = input.as_bytes();
        let mut pos = 0usize;
        let err = |pos: usize, msg: &str| PolyError::Parse {
            position: pos,
            message: msg.to_string(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let parse_uint = |pos: &mut usize| -> Result<BigInt, PolyError> {
            skip_ws(pos);
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return Err(err(*pos, "expected a number"));
            }
            Ok(std::str::from_utf8(&bytes[start..*pos])
                .unwrap()
                .parse()
                .unwrap())
        };
        let mut acc = SparsePoly::zero();
        skip_ws(&mut pos);
        let mut sign = BigInt::one();
        match bytes.get(pos) {
            Some(b'-') => {
                pos += 1;
                sign = -sign;
            }
            Some(b'+') => pos += 1,
            None => return Err(err(pos, "empty polynomial")),
            _ => {}
        }
        loop {
            // one term
            let mut coeff = sign.clone();
            let mut exps: BTreeMap<u32, u32> = BTreeMap::new();
            loop {
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(c) if c.is_ascii_digit() => {
                        let n = parse_uint(&mut pos)?;
                        coeff *= n;
                    }
                    Some(b'v') => {
                        pos += 1;
                        let v = parse_uint(&mut pos)?;
                        let v = u32::try_from(v).map_err(|_| err(pos, "variable index"))?;
                        let e = if {
                            skip_ws(&mut pos);
                            bytes.get(pos) == Some(&b'^')
                        } {
                            pos += 1;
                            let e = parse_uint(&mut pos)?;
                            u32::try_from(e).map_err(|_| err(pos, "exponent"))?
                        } else {
                            1
                        };
                        *exps.entry(v).or_insert(0) += e;
                    }
                    _ => return Err(err(pos, "expected coefficient or variable")),
                }
                skip_ws(&mut pos);
                if bytes.get(pos) == Some(&b'*') {
                    pos += 1;
                } else {
                    break;
                }
            }
            acc.add_term(exps.into_iter().collect(), coeff);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => break,
                Some(b'+') => {
                    pos += 1;
                    sign = BigInt::one();
                }
                Some(b'-') => {
                    pos += 1;
                    sign = -BigInt::one();
                }
                Some(_) => return Err(err(pos, "expected '+' or '-' between terms")),
            }
        }
        Ok(acc)
    }
}

fn merge_monos(a: &SparseMono, b: &SparseMono) -> SparseMono {
    let mut out: BTreeMap<u32, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *out.entry(v).or_insert(0) += e;
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_arithmetic() {
        let p = SparsePoly::parse("3*v10^2*v20000 - v5 + 7").unwrap();
        assert_eq!(SparsePoly::parse(&p.render()).unwrap(), p);
        let q = SparsePoly::var(5);
        let prod = p.mul(&q);
        assert_eq!(
            prod,
            SparsePoly::parse("3*v5*v10^2*v20000 - v5^2 + 7*v5").unwrap()
        );
    }

    #[test]
    fn eval_matches_dense() {
        let p = SparsePoly::parse("2*v0*v1 - v2 + 1").unwrap();
        let point = vec![
            Coefficient::from_i64(Domain::Rat, 3),
            Coefficient::from_i64(Domain::Rat, -1),
            Coefficient::from_i64(Domain::Rat, 4),
        ];
        assert_eq!(p.eval(&point), Coefficient::from_i64(Domain::Rat, -9));
        let dense = p.to_dense(3, Domain::Rat).unwrap();
        assert_eq!(dense.eval(&point), Coefficient::from_i64(Domain::Rat, -9));
    }
}
