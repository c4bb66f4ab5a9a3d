//! Invertibility of a polynomial modulo a characteristic-set prefix.
//!
//! A polynomial f is invertible w.r.t. an autoreduced set A when there are
//! g ∈ k[N][L] and h ≠ 0 in k[N] with f·g ≡ h mod (A). The test adjoins a
//! fresh variable w with the relation w − f, computes a lex Gröbner basis
//! with the leaders above w above the non-leaders, and inspects the
//! elimination ideal in k[N][w]: f is invertible exactly when some generator
//! P(w) has a nonzero constant term. Writing P(w) = w·Q(w) + P(0) then gives
//! the witness g = Q(f), h = −P(0).

use std::collections::BTreeSet;

use crate::arith::{Poly, PrecedenceOrder, VarId};
use crate::diff::DiffPoly;
use crate::error::Error;
use crate::groebner::{buchberger, eliminate, gb_of_poly, poly_of_gb, spoly_audit};
use crate::reduce::{full_remainder, TriangularSet};

/// The Gröbner computation behind an invertibility decision, kept for audits.
#[derive(Debug, Clone)]
pub struct GbTrace {
    /// Variable precedence of the lex order, highest first: L, then w, then N.
    pub precedence: Vec<VarId>,
    /// The fresh variable w.
    pub fresh_var: VarId,
    /// Reduced Gröbner basis of (A, w − f).
    pub basis: Vec<Poly>,
    /// Basis elements free of the leaders: generators of the elimination
    /// ideal in k[N][w].
    pub elimination: Vec<Poly>,
    /// The generator P(w) the decision was made on.
    pub selected: Option<Poly>,
}

impl GbTrace {
    /// Re-run the S-polynomial audit on the stored basis.
    pub fn audit(&self) -> bool {
        let ord = PrecedenceOrder::new(&self.precedence);
        let basis: Vec<_> = self.basis.iter().map(|p| gb_of_poly(p, &ord)).collect();
        spoly_audit(&basis, &ord)
    }
}

#[derive(Debug, Clone)]
pub enum InvertOutcome {
    /// f·cofactor ≡ value mod (A), with value a nonzero polynomial in the
    /// non-leaders only.
    Invertible { cofactor: DiffPoly, value: DiffPoly },
    /// Every elimination generator is divisible by w; the lowest-degree one
    /// is kept as the witness.
    NotInvertible { witness: Poly },
}

#[derive(Debug, Clone)]
pub struct InvertResult {
    pub outcome: InvertOutcome,
    pub trace: GbTrace,
}

impl InvertResult {
    pub fn is_invertible(&self) -> bool {
        matches!(self.outcome, InvertOutcome::Invertible { .. })
    }

    /// Check the witness identity f·g − h ∈ (A) exactly, via a normal form
    /// against the plain ideal generated by the prefix.
    pub fn verify(&self, f: &DiffPoly, prefix: &TriangularSet) -> bool {
        match &self.outcome {
            InvertOutcome::NotInvertible { .. } => true,
            InvertOutcome::Invertible { cofactor, value } => {
                if value.is_zero() {
                    return false;
                }
                let leaders: BTreeSet<VarId> = prefix.leader_vars().into_iter().collect();
                if value.body().support_vars().iter().any(|v| leaders.contains(v)) {
                    return false;
                }
                let target = &(f * cofactor) - value;
                if target.is_zero() {
                    return true;
                }
                let mut vars: BTreeSet<VarId> = target.body().support_vars();
                for e in prefix.elements() {
                    vars.extend(e.body().support_vars());
                }
                let mut precedence: Vec<VarId> = vars.into_iter().collect();
                precedence
                    .sort_by(|&a, &b| prefix.ring().var_cmp(prefix.ranking(), b, a));
                let ord = PrecedenceOrder::new(&precedence);
                let gens: Vec<_> = prefix
                    .elements()
                    .iter()
                    .map(|e| gb_of_poly(e.body(), &ord))
                    .collect();
                match buchberger(gens, &ord, None) {
                    Ok(basis) => {
                        crate::groebner::normal_form(&gb_of_poly(target.body(), &ord), &basis, &ord)
                            .is_zero()
                    }
                    Err(_) => false,
                }
            }
        }
    }
}

/// Decide invertibility of `f` w.r.t. the prefix and produce the witness.
///
/// `f` must be nonzero and must not involve any proper derivative of a
/// leader of the prefix (it lives in k[N][L]). When the prefix initials are
/// free of leaders the cofactor is returned fully reduced.
pub fn invert(
    f: &DiffPoly,
    prefix: &TriangularSet,
    limit: Option<u64>,
) -> Result<InvertResult, Error> {
    if f.is_zero() {
        return Err(Error::NotInvertible("the zero polynomial has no inverse".into()));
    }
    let ring = prefix.ring();
    let ranking = prefix.ranking();
    for a in 0..prefix.len() {
        let leader = &prefix.anatomy(a).leader;
        if f.contains_proper_derivative_of(leader) {
            return Err(Error::Invalid(format!(
                "probe involves a proper derivative of the leader {}",
                ring.derivative_name(leader)
            )));
        }
    }

    let leader_vars: Vec<VarId> = prefix.leader_vars();
    let leader_set: BTreeSet<VarId> = leader_vars.iter().copied().collect();
    let mut non_leaders: BTreeSet<VarId> = prefix.support_vars();
    non_leaders.extend(f.body().support_vars());
    non_leaders.retain(|v| !leader_set.contains(v));

    let w = ring.fresh_aux("w");

    // precedence: leaders (ranking-descending), then w, then non-leaders
    let mut precedence: Vec<VarId> = leader_vars.clone();
    precedence.sort_by(|&a, &b| ring.var_cmp(ranking, b, a));
    precedence.push(w);
    let mut n_sorted: Vec<VarId> = non_leaders.iter().copied().collect();
    n_sorted.sort_by(|&a, &b| ring.var_cmp(ranking, b, a));
    precedence.extend(n_sorted);

    let ord = PrecedenceOrder::new(&precedence);
    let mut gens: Vec<_> = prefix
        .elements()
        .iter()
        .map(|e| gb_of_poly(e.body(), &ord))
        .collect();
    let relation = &Poly::var(w) - f.body();
    gens.push(gb_of_poly(&relation, &ord));
    let basis = buchberger(gens, &ord, limit)?;
    if basis.len() == 1 && basis[0].is_constant() {
        return Err(Error::NotCharacterizable(
            "the prefix together with the probe generates the unit ideal".into(),
        ));
    }

    let mut keep: BTreeSet<VarId> = non_leaders.clone();
    keep.insert(w);
    let elimination: Vec<Poly> = eliminate(&basis, &ord, &keep)?
        .iter()
        .map(poly_of_gb)
        .collect();
    let basis_polys: Vec<Poly> = basis.iter().map(poly_of_gb).collect();
    if elimination.is_empty() {
        return Err(Error::NotCharacterizable(
            "the elimination ideal in k[N][w] is zero; the prefix is not a characteristic-set prefix"
                .into(),
        ));
    }

    // P(w): the minimal-w-degree generator with nonzero constant term
    let candidate = elimination
        .iter()
        .filter(|p| !p.coeff_of_power(w, 0).is_zero())
        .min_by_key(|p| p.degree_in(w))
        .cloned();

    let (outcome, selected) = match candidate {
        None => {
            let witness = elimination
                .iter()
                .min_by_key(|p| p.degree_in(w))
                .cloned()
                .expect("elimination is nonempty");
            (InvertOutcome::NotInvertible { witness: witness.clone() }, Some(witness))
        }
        Some(p) => {
            let p0 = p.coeff_of_power(w, 0);
            // Q(w) with P = w·Q + P(0), evaluated at f by Horner
            let uni = p.univariate_in(w);
            let top = p.degree_in(w);
            let mut q_at_f = Poly::zero();
            for k in (1..=top).rev() {
                let c = uni.get(&k).cloned().unwrap_or_else(Poly::zero);
                q_at_f = &(&q_at_f * f.body()) + &c;
            }
            let mut g = DiffPoly::new(ring, q_at_f);
            let mut h = DiffPoly::new(ring, -&p0);
            // reduce the cofactor when doing so only multiplies h by
            // polynomials in the non-leaders
            let initials_leader_free = (0..prefix.len()).all(|i| {
                prefix.anatomy(i)
                    .initial
                    .body()
                    .support_vars()
                    .iter()
                    .all(|v| !leader_set.contains(v))
            });
            if initials_leader_free && !prefix.is_empty() {
                let cert = full_remainder(&g, prefix);
                h = &cert.multiplier() * &h;
                g = cert.remainder;
            }
            (InvertOutcome::Invertible { cofactor: g, value: h }, Some(p))
        }
    };

    Ok(InvertResult {
        outcome,
        trace: GbTrace {
            precedence,
            fresh_var: w,
            basis: basis_polys,
            elimination,
            selected,
        },
    })
}
