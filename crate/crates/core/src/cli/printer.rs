//! Deterministic text and JSON rendering of differential polynomials.
//!
//! Terms are printed in descending ranking-lexicographic order; variables
//! inside a monomial descend by ranking. Characteristic-set elements are
//! collected by powers of their leader, so the canonical output of the
//! worked examples reads as `(z^2*t - 1)*y + z*x - 1` rather than the fully
//! expanded form.

use num::{One, Signed};
use serde_json::{json, Value};

use crate::arith::{Monomial, MonomialOrder, Poly, Rat};
use crate::diff::{DiffPoly, DiffRing, Ranking};

fn rat_string(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Print order of variables inside a monomial: indeterminates descend by
/// ranking (`z^2*t` under z > t), while derivatives of one indeterminate
/// ascend by order (`y'*y''`).
fn print_var_cmp(
    ring: &DiffRing,
    ranking: &Ranking,
    a: crate::arith::VarId,
    b: crate::arith::VarId,
) -> std::cmp::Ordering {
    match (ring.derivative_of(a), ring.derivative_of(b)) {
        (Some(da), Some(db)) => {
            if da.indet != db.indet {
                let n = ring.num_derivations();
                let base_a = crate::diff::Derivative::base(da.indet, n);
                let base_b = crate::diff::Derivative::base(db.indet, n);
                ranking.compare(&base_b, &base_a)
            } else {
                (da.order(), da.theta).cmp(&(db.order(), db.theta))
            }
        }
        _ => a.cmp(&b),
    }
}

fn monomial_string(m: &Monomial, ring: &DiffRing, ranking: &Ranking) -> String {
    let mut vars: Vec<(crate::arith::VarId, u32)> = m.iter().collect();
    vars.sort_by(|a, b| print_var_cmp(ring, ranking, a.0, b.0));
    vars.iter()
        .map(|&(v, e)| {
            let name = ring.var_name(v);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Signed text pieces of a polynomial, in descending term order.
fn poly_pieces(body: &Poly, ring: &DiffRing, ranking: &Ranking) -> Vec<(bool, String)> {
    let ord = ring.ranking_order(ranking);
    let mut terms: Vec<(&Monomial, &Rat)> = body.terms().collect();
    terms.sort_by(|a, b| ord.cmp_monomials(b.0, a.0));
    terms
        .into_iter()
        .map(|(m, c)| {
            let neg = c.is_negative();
            let a = c.abs();
            let text = if m.is_one() {
                rat_string(&a)
            } else if a.is_one() {
                monomial_string(m, ring, ranking)
            } else {
                format!("{}*{}", rat_string(&a), monomial_string(m, ring, ranking))
            };
            (neg, text)
        })
        .collect()
}

fn join_pieces(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, text)) in pieces.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
            out.push_str(text);
        } else {
            out.push_str(if *neg { " - " } else { " + " });
            out.push_str(text);
        }
    }
    out
}

/// Plain rendering: monomials in descending order.
pub fn poly_string(f: &DiffPoly, ranking: &Ranking) -> String {
    join_pieces(&poly_pieces(f.body(), f.ring(), ranking))
}

/// Leader-collected rendering for characteristic-set elements.
pub fn charset_element_string(f: &DiffPoly, ranking: &Ranking) -> String {
    let ring = f.ring();
    let anatomy = match f.anatomy(ranking) {
        Ok(a) => a,
        Err(_) => return poly_string(f, ranking),
    };
    let u = anatomy.leader_var;
    let u_name = ring.derivative_name(&anatomy.leader);
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for k in (1..=anatomy.degree).rev() {
        let coeff = f.body().coeff_of_power(u, k);
        if coeff.is_zero() {
            continue;
        }
        let u_str = if k == 1 { u_name.clone() } else { format!("{u_name}^{k}") };
        if let Some(c) = coeff.as_constant() {
            let neg = c.is_negative();
            let a = c.abs();
            let text = if a.is_one() { u_str } else { format!("{}*{}", rat_string(&a), u_str) };
            pieces.push((neg, text));
        } else if coeff.num_terms() == 1 {
            let mut inner = poly_pieces(&coeff, ring, ranking);
            let (neg, text) = inner.remove(0);
            pieces.push((neg, format!("{text}*{u_str}")));
        } else {
            let inner = join_pieces(&poly_pieces(&coeff, ring, ranking));
            pieces.push((false, format!("({inner})*{u_str}")));
        }
    }
    let tail = f.body().coeff_of_power(u, 0);
    pieces.extend(poly_pieces(&tail, ring, ranking));
    join_pieces(&pieces)
}

/// JSON term list: `[[numerator, denominator, [[variable, exponent], …]], …]`
/// in descending term order, with bignums rendered as decimal strings.
pub fn poly_json(f: &DiffPoly, ranking: &Ranking) -> Value {
    let ring = f.ring();
    let ord = ring.ranking_order(ranking);
    let mut terms: Vec<(&Monomial, &Rat)> = f.body().terms().collect();
    terms.sort_by(|a, b| ord.cmp_monomials(b.0, a.0));
    let arr: Vec<Value> = terms
        .into_iter()
        .map(|(m, c)| {
            let mut vars: Vec<(crate::arith::VarId, u32)> = m.iter().collect();
            vars.sort_by(|a, b| print_var_cmp(ring, ranking, a.0, b.0));
            let mono: Vec<Value> = vars
                .into_iter()
                .map(|(v, e)| json!([ring.var_name(v), e]))
                .collect();
            json!([c.numer().to_string(), c.denom().to_string(), mono])
        })
        .collect();
    Value::Array(arr)
}
