//! Multivariate polynomials with exact coefficients.
//!
//! The canonical ASCII grammar uses variables `v0..v{N-1}`, integer or
//! `num/den` coefficients, `^` for powers, `*` for products and `+`/`-` as
//! term separators. Printing is deterministic: terms descend under the active
//! monomial order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

use super::coeff::{Coefficient, Domain};
use super::monomial::{Monomial, MonomialOrder};
use super::PolyError;

/// A multivariate polynomial: a finite map from monomials to nonzero
/// coefficients, all in one domain, over a fixed variable arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    arity: usize,
    domain: Domain,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Poly {
    pub fn zero(arity: usize, domain: Domain) -> Self {
        Poly {
            arity,
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Coefficient) -> Self {
        let mut p = Poly::zero(arity, c.domain());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(arity), c);
        }
        p
    }

    pub fn one(arity: usize, domain: Domain) -> Self {
        Poly::constant(arity, Coefficient::one(domain))
    }

    pub fn var(arity: usize, idx: usize, domain: Domain) -> Self {
        assert!(idx < arity, "variable index out of range");
        let mut p = Poly::zero(arity, domain);
        p.terms
            .insert(Monomial::var(arity, idx), Coefficient::one(domain));
        p
    }

    pub fn from_terms<I>(arity: usize, domain: Domain, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        let mut p = Poly::zero(arity, domain);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coefficient {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Coefficient::zero(self.domain))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Add a single term in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Coefficient) {
        debug_assert_eq!(m.arity(), self.arity);
        debug_assert_eq!(c.domain(), self.domain);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        if self.domain != other.domain {
            return Err(PolyError::DomainMismatch {
                left: self.domain,
                right: other.domain,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Poly::zero(self.arity, self.domain);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.arity, self.domain);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Poly::zero(self.arity, self.domain);
        }
        let mut out = Poly::zero(self.arity, self.domain);
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k.mul(c));
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Poly::zero(self.arity, self.domain);
        }
        let mut out = Poly::zero(self.arity, self.domain);
        for (mm, k) in &self.terms {
            out.terms.insert(mm.mul(m), k.mul(c));
        }
        out
    }

    /// Leading (monomial, coefficient) under `order`; `None` for the zero poly.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coefficient)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Divide all coefficients by the leading one (field domains only).
    pub fn make_monic(&self, order: &MonomialOrder) -> Result<Self, PolyError> {
        match self.leading_term(order) {
            None => Ok(self.clone()),
            Some((_, lc)) => {
                let inv = lc.inv()?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Map every coefficient into the rationals (from `Int` or `Rat`).
    pub fn lift_to_rat(&self) -> Result<Self, PolyError> {
        let mut out = Poly::zero(self.arity, Domain::Rat);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.lift_to_rat()?);
        }
        Ok(out)
    }

    /// Reduce every coefficient modulo `p`; zero terms are dropped.
    pub fn reduce_mod(&self, p: u64) -> Result<Self, PolyError> {
        let mut out = Poly::zero(self.arity, Domain::Mod(p));
        for (m, c) in &self.terms {
            let r = c.reduce_mod(p)?;
            out.add_term(m.clone(), r);
        }
        Ok(out)
    }

    /// Append fresh trailing variables (exponent zero everywhere).
    pub fn extend_arity(&self, new_arity: usize) -> Self {
        assert!(new_arity >= self.arity);
        let mut out = Poly::zero(new_arity, self.domain);
        for (m, c) in &self.terms {
            out.terms.insert(m.extend_arity(new_arity), c.clone());
        }
        out
    }

    /// Evaluate at a point; `point[i]` substitutes `v{i}`.
    pub fn eval(&self, point: &[Coefficient]) -> Coefficient {
        assert_eq!(point.len(), self.arity);
        let mut acc = Coefficient::zero(self.domain);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Coefficient)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        v
    }

    pub fn to_string_with_order(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
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
                let _ = write!(out, "{}", vars.join("*"));
            } else {
                let _ = write!(out, "{}*{}", mag, vars.join("*"));
            }
        }
        out
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_string_with_order(&MonomialOrder::degrevlex()))
    }
}

/// Parse a polynomial in the canonical grammar over the given arity/domain.
pub fn parse_poly(input: &str, arity: usize, domain: Domain) -> Result<Poly, PolyError> {
    Parser {
        bytes: input.as_bytes(),
        pos: 0,
        arity,
        domain,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    arity: usize,
    domain: Domain,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly, PolyError> {
        let mut acc = Poly::zero(self.arity, self.domain);
        let mut sign = 1i64;
        // optional leading sign
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -1;
            }
            Some(b'+') => {
                self.pos += 1;
            }
            None => return Err(self.err("empty polynomial")),
            _ => {}
        }
        loop {
            let term = self.parse_term(sign)?;
            acc = acc.add(&term)?;
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return Err(self.err("expected '+' or '-' between terms")),
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self, sign: i64) -> Result<Poly, PolyError> {
        let mut coeff = Coefficient::from_i64(self.domain, sign);
        let mut mono = Monomial::one(self.arity);
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let (num, den) = self.parse_number()?;
                    coeff = coeff.mul(&Coefficient::from_ratio(self.domain, num, den)?);
                }
                Some(b'v') => {
                    self.pos += 1;
                    let idx = self.parse_usize()?;
                    if idx >= self.arity {
                        return Err(self.err(&format!(
                            "variable v{idx} out of range (arity {})",
                            self.arity
                        )));
                    }
                    let exp = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.parse_usize()? as u32
                    } else {
                        1
                    };
                    let mut exps = vec![0u32; self.arity];
                    exps[idx] = exp;
                    mono = mono.mul(&Monomial::new(exps));
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Poly::from_terms(self.arity, self.domain, [(mono, coeff)]))
    }

    fn parse_usize(&mut self) -> Result<usize, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn parse_number(&mut self) -> Result<(BigInt, BigInt), PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let num: BigInt = std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .unwrap();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let dstart = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if dstart == self.pos {
                return Err(self.err("expected denominator after '/'"));
            }
            let den: BigInt = std::str::from_utf8(&self.bytes[dstart..self.pos])
                .unwrap()
                .parse()
                .unwrap();
            Ok((num, den))
        } else {
            Ok((num, BigInt::from(1)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str, arity: usize) -> Poly {
        parse_poly(s, arity, Domain::Rat).unwrap()
    }

    #[test]
    fn parse_print_roundtrip() {
        let p = q("3*v0^2*v1 - 1/2*v2 + 4", 3);
        let s = p.to_string_with_order(&MonomialOrder::degrevlex());
        assert_eq!(s, "3*v0^2*v1 - 1/2*v2 + 4");
        assert_eq!(q(&s, 3), p);
    }

    #[test]
    fn cancellation() {
        // (x+1) + (-1) = x
        let a = q("v0 + 1", 2);
        let b = q("-1", 2);
        assert_eq!(a.add(&b).unwrap(), q("v0", 2));
    }

    #[test]
    fn difference_of_squares() {
        let a = q("v0 + v1", 2);
        let b = q("v0 - v1", 2);
        assert_eq!(a.mul(&b).unwrap(), q("v0^2 - v1^2", 2));
    }

    #[test]
    fn mod_five_product() {
        // (x+2)(x+3) = x^2 + 1 over GF(5)
        let d = Domain::Mod(5);
        let a = parse_poly("v0 + 2", 1, d).unwrap();
        let b = parse_poly("v0 + 3", 1, d).unwrap();
        assert_eq!(a.mul(&b).unwrap(), parse_poly("v0^2 + 1", 1, d).unwrap());
    }

    #[test]
    fn arity_mismatch_rejected() {
        let a = q("v0", 1);
        let b = q("v0", 2);
        assert!(matches!(a.add(&b), Err(PolyError::ArityMismatch { .. })));
    }

    #[test]
    fn domain_mismatch_rejected() {
        let a = q("v0", 1);
        let b = parse_poly("v0", 1, Domain::Mod(5)).unwrap();
        assert!(matches!(a.mul(&b), Err(PolyError::DomainMismatch { .. })));
    }

    #[test]
    fn leading_term_lex_vs_degrevlex() {
        // f = y^2 - x: lex(x>y) leads with x; degrevlex leads with y^2
        let f = q("v1^2 - v0", 2);
        let (m, _) = f.leading_term(&MonomialOrder::lex()).unwrap();
        assert_eq!(m.exps(), &[1, 0]);
        let (m, _) = f.leading_term(&MonomialOrder::degrevlex()).unwrap();
        assert_eq!(m.exps(), &[0, 2]);
    }
}
