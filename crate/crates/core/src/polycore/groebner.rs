//! Buchberger's algorithm with Gebauer-Moeller pair elimination, multivariate
//! division, and radical membership via the Rabinowitsch trick.

use super::coeff::Coefficient;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use super::PolyError;

/// Remainder of `f` on full multivariate division by `divisors` under `order`.
///
/// Every term of the remainder is reduced: no remainder monomial is divisible
/// by any divisor's leading monomial. When `divisors` is a Groebner basis the
/// result is the canonical normal form, zero iff `f` lies in the ideal.
pub fn normal_form(f: &Poly, divisors: &[Poly], order: &MonomialOrder) -> Result<Poly, PolyError> {
    let leads: Vec<(Monomial, Coefficient)> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (m, c) = g
                .leading_term(order)
                .expect("nonzero polynomial has a leading term");
            (m.clone(), c.clone())
        })
        .collect();
    let nonzero: Vec<&Poly> = divisors.iter().filter(|g| !g.is_zero()).collect();
    for g in &nonzero {
        if g.arity() != f.arity() {
            return Err(PolyError::ArityMismatch {
                left: f.arity(),
                right: g.arity(),
            });
        }
        if g.domain() != f.domain() {
            return Err(PolyError::DomainMismatch {
                left: f.domain(),
                right: g.domain(),
            });
        }
    }

    let mut rem = Poly::zero(f.arity(), f.domain());
    let mut work = f.clone();
    'outer: while let Some((lm, lc)) = work.leading_term(order) {
        let (lm, lc) = (lm.clone(), lc.clone());
        for (i, (gm, gc)) in leads.iter().enumerate() {
            if let Some(q) = lm.checked_div(gm) {
                let factor = lc.div(gc)?;
                work = work.sub(&nonzero[i].mul_term(&q, &factor))?;
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        rem.add_term(lm.clone(), lc.clone());
        work.add_term(lm, lc.neg());
    }
    Ok(rem)
}

fn s_polynomial(f: &Poly, g: &Poly, order: &MonomialOrder) -> Result<Poly, PolyError> {
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let l = fm.lcm(gm);
    let a = l.checked_div(fm).unwrap();
    let b = l.checked_div(gm).unwrap();
    let left = f.mul_term(&a, &fc.inv()?);
    let right = g.mul_term(&b, &gc.inv()?);
    left.sub(&right)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

// Gebauer-Moeller update: add generator `t` to the basis, pruning the pending
// pair set and the new pairs by the standard B/M/F criteria.
fn update_pairs(
    pairs: &mut Vec<Pair>,
    basis: &[Poly],
    leads: &[Monomial],
    t: usize,
    order: &MonomialOrder,
) {
    let lt = &leads[t];
    let fresh: Vec<Pair> = (0..t)
        .filter(|&i| !basis[i].is_zero())
        .map(|i| Pair {
            i,
            j: t,
            lcm: leads[i].lcm(lt),
        })
        .collect();

    // M criterion: drop (i,t) when some (j,t) has lcm strictly dividing it.
    let mut keep = vec![true; fresh.len()];
    for a in 0..fresh.len() {
        for b in 0..fresh.len() {
            if a != b
                && keep[a]
                && keep[b]
                && fresh[b].lcm.divides(&fresh[a].lcm)
                && fresh[b].lcm != fresh[a].lcm
            {
                keep[a] = false;
            }
        }
    }
    // F criterion: among equal lcms keep a single representative.
    for a in 0..fresh.len() {
        if !keep[a] {
            continue;
        }
        for b in (a + 1)..fresh.len() {
            if keep[b] && fresh[a].lcm == fresh[b].lcm {
                keep[b] = false;
            }
        }
    }
    // B criterion: coprime leading monomials reduce to zero.
    for (a, pair) in fresh.iter().enumerate() {
        if keep[a] && leads[pair.i].is_coprime_with(lt) {
            keep[a] = false;
        }
    }
    let mut fresh: Vec<Pair> = fresh
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();

    // Prune old pairs made redundant by the newcomer (chain criterion).
    pairs.retain(|p| {
        !(lt.divides(&p.lcm) && leads[p.i].lcm(lt) != p.lcm && leads[p.j].lcm(lt) != p.lcm)
    });
    pairs.append(&mut fresh);
    // Normal selection: smallest lcm first under the active order.
    pairs.sort_by(|a, b| order.cmp(&b.lcm, &a.lcm));
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
///
/// Output is inter-reduced with monic leading terms, sorted ascending by
/// leading monomial; it is the unique reduced basis of the ideal, so the
/// result is independent of generator order. Requires field coefficients.
pub fn groebner_basis(gens: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>, PolyError> {
    groebner_basis_budgeted(gens, order, None)
}

/// `groebner_basis` with an optional cap on the number of S-pair reductions;
/// exceeding it aborts with `BudgetExceeded`.
pub fn groebner_basis_budgeted(
    gens: &[Poly],
    order: &MonomialOrder,
    budget: Option<usize>,
) -> Result<Vec<Poly>, PolyError> {
    if gens.is_empty() {
        return Err(PolyError::EmptyGeneratorList);
    }
    let arity = gens[0].arity();
    let domain = gens[0].domain();
    if !domain.is_field() {
        return Err(PolyError::NotAField(domain));
    }

    let mut basis: Vec<Poly> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |basis: &mut Vec<Poly>,
                   leads: &mut Vec<Monomial>,
                   pairs: &mut Vec<Pair>,
                   p: Poly|
     -> Result<bool, PolyError> {
        let p = p.make_monic(order)?;
        let lead = p.leading_term(order).unwrap().0.clone();
        let unit = lead.is_one();
        basis.push(p);
        leads.push(lead);
        update_pairs(pairs, basis, leads, basis.len() - 1, order);
        Ok(unit)
    };

    let mut unit_found = false;
    for g in gens {
        if g.arity() != arity {
            return Err(PolyError::ArityMismatch {
                left: arity,
                right: g.arity(),
            });
        }
        if g.domain() != domain {
            return Err(PolyError::DomainMismatch {
                left: domain,
                right: g.domain(),
            });
        }
        if unit_found {
            continue;
        }
        let r = normal_form(g, &basis, order)?;
        if !r.is_zero() && add(&mut basis, &mut leads, &mut pairs, r)? {
            unit_found = true;
        }
    }

    let mut steps = 0usize;
    while let Some(pair) = pairs.pop() {
        if unit_found {
            break;
        }
        steps += 1;
        if let Some(limit) = budget {
            if steps > limit {
                return Err(PolyError::BudgetExceeded { limit });
            }
        }
        if std::env::var_os("WEYLCERT_GB_TRACE").is_some() && steps % 1000 == 0 {
            eprintln!(
                "gb: steps={steps} basis={} pairs={} lcm_deg={}",
                basis.len(),
                pairs.len(),
                pair.lcm.degree()
            );
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order)?;
        let r = normal_form(&s, &basis, order)?;
        if !r.is_zero() && add(&mut basis, &mut leads, &mut pairs, r)? {
            unit_found = true;
        }
    }

    if unit_found {
        return Ok(vec![Poly::one(arity, domain)]);
    }

    // Minimize: drop elements whose lead is divisible by another lead.
    let mut minimal: Vec<Poly> = Vec::new();
    'next: for (k, p) in basis.iter().enumerate() {
        let lm = &leads[k];
        for (j, other) in leads.iter().enumerate() {
            if j != k && other.divides(lm) && (other != lm || j < k) {
                continue 'next;
            }
        }
        minimal.push(p.clone());
    }
    // Inter-reduce tails.
    let mut reduced: Vec<Poly> = Vec::new();
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, p)| (j != k).then(|| p.clone()))
            .collect();
        let r = normal_form(&minimal[k], &others, order)?;
        reduced.push(r.make_monic(order)?);
    }
    reduced.retain(|p| !p.is_zero());
    reduced.sort_by(|a, b| {
        let la = a.leading_term(order).unwrap().0;
        let lb = b.leading_term(order).unwrap().0;
        order.cmp(la, lb)
    });
    Ok(reduced)
}

/// True iff `f` vanishes on every zero of the ideal over the algebraic
/// closure: `1 ∈ ideal + <1 - t·f>` in one extra variable.
pub fn in_radical(f: &Poly, ideal: &[Poly], order: &MonomialOrder) -> Result<bool, PolyError> {
    in_radical_budgeted(f, ideal, order, None)
}

pub fn in_radical_budgeted(
    f: &Poly,
    ideal: &[Poly],
    order: &MonomialOrder,
    budget: Option<usize>,
) -> Result<bool, PolyError> {
    if ideal.is_empty() {
        return Err(PolyError::EmptyGeneratorList);
    }
    let domain = f.domain();
    if !domain.is_field() {
        return Err(PolyError::NotAField(domain));
    }
    if f.is_zero() {
        return Ok(true);
    }
    if f.is_constant() {
        // A nonzero constant vanishes on V(I) iff V(I) is empty.
        let gb = groebner_basis_budgeted(ideal, order, budget)?;
        return Ok(ideal_is_unit(&gb));
    }
    let arity = f.arity();
    let mut gens: Vec<Poly> = ideal.iter().map(|g| g.extend_arity(arity + 1)).collect();
    // 1 - t*f with t the fresh last variable
    let t = Poly::var(arity + 1, arity, domain);
    let one = Poly::one(arity + 1, domain);
    gens.push(one.sub(&t.mul(&f.extend_arity(arity + 1))?)?);
    let gb = groebner_basis_budgeted(&gens, order, budget)?;
    Ok(ideal_is_unit(&gb))
}

pub fn ideal_is_unit(gb: &[Poly]) -> bool {
    gb.iter().any(|p| !p.is_zero() && p.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::coeff::Domain;
    use crate::polycore::poly::parse_poly;

    fn q(s: &str, arity: usize) -> Poly {
        parse_poly(s, arity, Domain::Rat).unwrap()
    }

    #[test]
    fn single_generator() {
        let gb = groebner_basis(&[q("v0", 2)], &MonomialOrder::lex()).unwrap();
        assert_eq!(gb, vec![q("v0", 2)]);
    }

    #[test]
    fn unit_ideal() {
        let gb = groebner_basis(&[q("v0", 1), q("v0 + 1", 1)], &MonomialOrder::lex()).unwrap();
        assert_eq!(gb, vec![q("1", 1)]);
    }

    #[test]
    fn elimination_basis() {
        // {x^2 - y, y^2 - x} under lex(x > y): reduced basis {x - y^2, y^4 - y}
        let lex = MonomialOrder::lex();
        let gens = [q("v0^2 - v1", 2), q("v1^2 - v0", 2)];
        let gb = groebner_basis(&gens, &lex).unwrap();
        assert_eq!(gb, vec![q("v1^4 - v1", 2), q("v0 - v1^2", 2)]);
        // y^4 reduces to y
        let nf = normal_form(&q("v1^4", 2), &gb, &lex).unwrap();
        assert_eq!(nf, q("v1", 2));
    }

    #[test]
    fn normal_form_basics() {
        let lex = MonomialOrder::lex();
        let basis = [q("v0", 2)];
        assert!(normal_form(&q("v0^2", 2), &basis, &lex).unwrap().is_zero());
        assert_eq!(normal_form(&q("v0^2 + v1", 2), &basis, &lex).unwrap(), q("v1", 2));
    }

    #[test]
    fn generator_order_independence() {
        let o = MonomialOrder::degrevlex();
        let a = [q("v0^2 - v1", 2), q("v1^2 - v0", 2), q("v0*v1 - 1", 2)];
        let b = [q("v0*v1 - 1", 2), q("v1^2 - v0", 2), q("v0^2 - v1", 2)];
        assert_eq!(groebner_basis(&a, &o).unwrap(), groebner_basis(&b, &o).unwrap());
    }

    #[test]
    fn radical_membership() {
        let o = MonomialOrder::degrevlex();
        // x ∈ √<x^2>
        assert!(in_radical(&q("v0", 2), &[q("v0^2", 2)], &o).unwrap());
        // x ∉ √<y>
        assert!(!in_radical(&q("v0", 2), &[q("v1", 2)], &o).unwrap());
        // x + y ∉ √<x^2 - y^2, x - y> (point (1,1)), but x - y ∈ it
        let ideal = [q("v0^2 - v1^2", 2), q("v0 - v1", 2)];
        assert!(!in_radical(&q("v0 + v1", 2), &ideal, &o).unwrap());
        assert!(in_radical(&q("v0 - v1", 2), &ideal, &o).unwrap());
    }

    #[test]
    fn integer_domain_rejected() {
        let p = parse_poly("v0", 1, Domain::Int).unwrap();
        assert!(matches!(
            groebner_basis(&[p], &MonomialOrder::lex()),
            Err(PolyError::NotAField(Domain::Int))
        ));
    }

    #[test]
    fn groebner_mod_p() {
        let d = Domain::Mod(5);
        let o = MonomialOrder::degrevlex();
        let gens = [
            parse_poly("v0^2 + v1", 2, d).unwrap(),
            parse_poly("v0*v1 + 4", 2, d).unwrap(),
        ];
        let gb = groebner_basis(&gens, &o).unwrap();
        // every S-polynomial reduces to zero
        for i in 0..gb.len() {
            for j in (i + 1)..gb.len() {
                let s = s_polynomial(&gb[i], &gb[j], &o).unwrap();
                assert!(normal_form(&s, &gb, &o).unwrap().is_zero());
            }
        }
    }
}
