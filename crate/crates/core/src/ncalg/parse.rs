//! Canonical element syntax: `x1..xn, y1..yn, z1..zl` for Weyl kinds and
//! `e.<k>, h.<i>, f.<k>` for enveloping kinds, with rational coefficients,
//! `^` powers and `*` products. Input products are evaluated in the algebra
//! (so `y1*x1` parses to `x1*y1 + 1`); printing emits the normal form with
//! terms in descending (degree, lex) order.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{AlgebraElement, AlgebraError, FamilyInstance, FamilyKind};
use crate::polycore::Coefficient;

pub fn parse_element(
    family: &Arc<FamilyInstance>,
    input: &str,
) -> Result<AlgebraElement, AlgebraError> {
    ElementParser {
        family: Arc::clone(family),
        bytes: input.as_bytes(),
        pos: 0,
    }
    .parse()
}

/// Deterministic normal-form rendering.
pub fn render_element(a: &AlgebraElement) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let fam = a.family();
    let mut terms: Vec<_> = a.terms().collect();
    terms.sort_by(|(m1, _), (m2, _)| m2.cmp(m1));
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
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
        let mut factors: Vec<String> = Vec::new();
        for (idx, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = fam.generator_name(idx);
            factors.push(if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            });
        }
        if factors.is_empty() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&format!("{}*{}", mag, factors.join("*")));
        }
    }
    out
}

struct ElementParser<'a> {
    family: Arc<FamilyInstance>,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ElementParser<'a> {
    fn err(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            position: self.pos,
            message: message.to_string(),
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

    fn parse(mut self) -> Result<AlgebraElement, AlgebraError> {
        let mut acc = self.family.zero();
        let mut sign = 1i64;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -1;
            }
            Some(b'+') => self.pos += 1,
            None => return Err(self.err("empty element")),
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

    fn parse_term(&mut self, sign: i64) -> Result<AlgebraElement, AlgebraError> {
        let domain = self.family.domain();
        let mut acc = self.family.scalar(Coefficient::from_i64(domain, sign));
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let (num, den) = self.parse_number()?;
                    let c = Coefficient::from_ratio(domain, num, den)
                        .map_err(AlgebraError::Poly)?;
                    acc = acc.scale(&c)?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let idx = self.parse_generator()?;
                    let exp = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.parse_usize()?
                    } else {
                        1
                    };
                    let g = self.family.generator(idx)?;
                    for _ in 0..exp {
                        acc = acc.mul(&g)?;
                    }
                }
                _ => return Err(self.err("expected coefficient or generator")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_generator(&mut self) -> Result<usize, AlgebraError> {
        let letter = self.bytes[self.pos] as char;
        self.pos += 1;
        let env_dims = match self.family.kind() {
            FamilyKind::Enveloping { rs, .. } => Some((rs.num_positive(), rs.rank())),
            _ => None,
        };
        match env_dims {
            Some((np, n)) => {
                if self.bytes.get(self.pos) != Some(&b'.') {
                    return Err(self.err("expected '.' after generator letter"));
                }
                self.pos += 1;
                let k = self.parse_usize()?;
                if k == 0 {
                    return Err(self.err("generator indices are 1-based"));
                }
                match letter {
                    'e' if k <= np => Ok(k - 1),
                    'h' if k <= n => Ok(np + k - 1),
                    'f' if k <= np => Ok(np + n + k - 1),
                    _ => Err(self.err(&format!("unknown generator {letter}.{k}"))),
                }
            }
            None => {
                let n = self.family.weyl_pairs();
                let l = self.family.central_count();
                let k = self.parse_usize()?;
                if k == 0 {
                    return Err(self.err("generator indices are 1-based"));
                }
                match letter {
                    'x' if k <= n => Ok(k - 1),
                    'y' if k <= n => Ok(n + k - 1),
                    'z' if k <= l => Ok(2 * n + k - 1),
                    _ => Err(self.err(&format!("unknown generator {letter}{k}"))),
                }
            }
        }
    }

    fn parse_usize(&mut self) -> Result<usize, AlgebraError> {
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
            .map_err(|_| self.err("number out of range"))
    }

    fn parse_number(&mut self) -> Result<(BigInt, BigInt), AlgebraError> {
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
    use crate::polycore::Domain;
    use crate::rootsys::{RootSystem, TypeLabel};

    #[test]
    fn weyl_grammar_roundtrip() {
        let fam = FamilyInstance::weyl(2, 1, Domain::Rat);
        let a = parse_element(&fam, "3*x1^2*y2 - 1/2*z1 + x2").unwrap();
        let s = render_element(&a);
        assert_eq!(parse_element(&fam, &s).unwrap(), a);
    }

    #[test]
    fn products_straighten_on_parse() {
        let fam = FamilyInstance::weyl(1, 0, Domain::Rat);
        let a = parse_element(&fam, "y1*x1").unwrap();
        let b = parse_element(&fam, "x1*y1 + 1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn enveloping_grammar() {
        let rs = RootSystem::build(TypeLabel::A, 1).unwrap();
        let fam = FamilyInstance::enveloping(rs, Domain::Rat).unwrap();
        let c = parse_element(&fam, "2*e.1*f.1 + 1/2*h.1^2 - h.1").unwrap();
        assert_eq!(c, fam.casimir().unwrap());
        assert!(parse_element(&fam, "e.2").is_err());
        assert!(parse_element(&fam, "q.1").is_err());
    }
}
