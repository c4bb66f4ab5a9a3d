//! Canonical characteristic sets of characterizable differential ideals.
//!
//! Two independent routes compute the same object:
//!
//! * [`canonical_via_gb`] — reduced Gröbner basis of the saturated algebraic
//!   ideal in k(N)[L], followed by denominator clearing and normalization;
//! * [`canonical_via_invert`] — invert each initial modulo the preceding
//!   prefix, multiply through, take pseudo-remainders, then strip the
//!   coefficient gcd and normalize.
//!
//! Agreement of the two routes is the strongest oracle in the test suite, so
//! they deliberately share no intermediate steps beyond the base arithmetic.

use std::collections::BTreeSet;

use num::One;

use crate::arith::{content_primitive, Poly, PrecedenceOrder, Rat, VarId};
use crate::diff::{DiffPoly, DiffRing, Ranking};
use crate::error::Error;
use crate::groebner::{
    buchberger, clear_frac, gb_frac_of_poly, normal_form, spoly_audit, Frac, GbPoly,
};
use crate::invert::{invert, GbTrace, InvertOutcome};
use crate::reduce::{full_remainder, is_coherent, TriangularSet};

/// Options shared by the canonicalization entry points.
#[derive(Debug, Clone)]
pub struct CanonicalOptions {
    /// Verify coherence and invertibility of initials and separants before
    /// running (the algorithms silently misbehave on non-characterizing
    /// input).
    pub precheck: bool,
    /// Step bound for the underlying Gröbner loops.
    pub limit: Option<u64>,
}

impl Default for CanonicalOptions {
    fn default() -> Self {
        CanonicalOptions { precheck: true, limit: None }
    }
}

/// Per-element record of the normalization pipeline.
#[derive(Debug, Clone)]
pub struct NormalizationRecord {
    /// Least common multiple of the cleared denominators (Gröbner route) or
    /// the polynomial content removed (Invert route).
    pub cleared: Poly,
    /// Rational scale divided out at the end.
    pub scale: Rat,
}

/// Audit data for the Gröbner route.
#[derive(Debug, Clone)]
pub struct FracGbTrace {
    pub precedence: Vec<VarId>,
    pub basis: Vec<GbPoly<Frac>>,
}

impl FracGbTrace {
    pub fn audit(&self) -> bool {
        let ord = PrecedenceOrder::new(&self.precedence);
        spoly_audit(&self.basis, &ord)
    }
}

#[derive(Debug, Clone)]
pub enum CanonicalTrace {
    Gb(FracGbTrace),
    Invert(Vec<GbTrace>),
}

/// A canonical characteristic set together with its normalization log.
#[derive(Debug, Clone)]
pub struct CanonicalCharSet {
    pub set: TriangularSet,
    pub log: Vec<NormalizationRecord>,
    pub trace: CanonicalTrace,
}

impl CanonicalCharSet {
    pub fn elements(&self) -> &[DiffPoly] {
        self.set.elements()
    }
}

/// Validate that the input can characterize an ideal: autoreduced, coherent,
/// invertible initials (w.r.t. the preceding prefix) and separants (w.r.t.
/// the prefix including the element itself), and 1 ∉ (A):H^∞.
pub fn validate_characterizing(set: &TriangularSet, limit: Option<u64>) -> Result<(), Error> {
    if !set.is_autoreduced() {
        return Err(Error::NotCharacterizable("the set is not autoreduced".into()));
    }
    let coherence = is_coherent(set, limit)?;
    if !coherence.coherent {
        return Err(Error::NotCharacterizable("the set is not coherent".into()));
    }
    let leader_set: BTreeSet<VarId> = set.leader_vars().into_iter().collect();
    let leader_free = |f: &DiffPoly| {
        !f.is_zero() && f.body().support_vars().iter().all(|v| !leader_set.contains(v))
    };
    for i in 0..set.len() {
        if i > 0 {
            let initial = &set.anatomy(i).initial;
            if !leader_free(initial) {
                let res = invert(initial, &set.prefix(i), limit)?;
                if !res.is_invertible() {
                    return Err(Error::NotCharacterizable(format!(
                        "the initial of element {} is not invertible",
                        i + 1
                    )));
                }
            }
        }
        let separant = &set.anatomy(i).separant;
        if separant.is_zero() {
            return Err(Error::NotCharacterizable(format!(
                "the separant of element {} vanishes",
                i + 1
            )));
        }
        if !leader_free(separant) {
            let res = invert(separant, &set.prefix(i + 1), limit)?;
            if !res.is_invertible() {
                return Err(Error::NotCharacterizable(format!(
                    "the separant of element {} is not invertible",
                    i + 1
                )));
            }
        }
    }
    let ring = set.ring();
    let gens: Vec<Poly> = set.elements().iter().map(|e| e.body().clone()).collect();
    let sat: Vec<Poly> = set
        .initials_and_separants()
        .iter()
        .map(|f| f.body().clone())
        .collect();
    let mut vars: BTreeSet<VarId> = set.support_vars();
    for s in &sat {
        vars.extend(s.support_vars());
    }
    let mut precedence: Vec<VarId> = vars.into_iter().collect();
    precedence.sort_by(|&a, &b| ring.var_cmp(set.ranking(), b, a));
    if crate::groebner::saturation_membership(ring, &Poly::one(), &gens, &sat, &precedence, limit)? {
        return Err(Error::TrivialIdeal);
    }
    Ok(())
}

/// Rescale a polynomial so the coefficient of the ranking-lexicographic
/// leading monomial of its initial becomes +1. Returns the scale divided out.
fn normalize_scale(
    ring: &DiffRing,
    ranking: &Ranking,
    poly: &Poly,
    leader_var: VarId,
) -> (Poly, Rat) {
    let degree = poly.degree_in(leader_var);
    let initial = poly.coeff_of_power(leader_var, degree);
    let ord = ring.ranking_order(ranking);
    let scale = initial
        .leading_term(&ord)
        .map(|(_, c)| c.clone())
        .expect("nonzero initial");
    let inv = <Rat as One>::one() / scale.clone();
    (poly.scale(&inv), scale)
}

/// The Gröbner route: reduced lex basis of (A):H_A^∞ in k(N)[L], cleared of
/// denominators and normalized.
pub fn canonical_via_gb(
    input: &TriangularSet,
    opts: &CanonicalOptions,
) -> Result<CanonicalCharSet, Error> {
    if input.is_empty() {
        return Err(Error::Invalid("empty characteristic set".into()));
    }
    if opts.precheck {
        validate_characterizing(input, opts.limit)?;
    } else if !input.is_autoreduced() {
        return Err(Error::NotCharacterizable("the set is not autoreduced".into()));
    }
    let ring = input.ring();
    let ranking = input.ranking();
    let leader_vars = input.leader_vars();
    let leader_set: BTreeSet<VarId> = leader_vars.iter().copied().collect();

    let tau = ring.fresh_aux("tau");
    let mut precedence: Vec<VarId> = vec![tau];
    let mut leaders_sorted = leader_vars.clone();
    leaders_sorted.sort_by(|&a, &b| ring.var_cmp(ranking, b, a));
    precedence.extend(leaders_sorted);
    let ord = PrecedenceOrder::new(&precedence);
    let is_main = |v: VarId| v == tau || leader_set.contains(&v);

    let mut gens: Vec<GbPoly<Frac>> = input
        .elements()
        .iter()
        .map(|e| gb_frac_of_poly(e.body(), &is_main, &ord))
        .collect();
    let h = input.h_product();
    let relation = &(&Poly::var(tau) * h.body()) - &Poly::one();
    gens.push(gb_frac_of_poly(&relation, &is_main, &ord));

    let basis = buchberger(gens, &ord, opts.limit)?;
    if basis.len() == 1 && basis[0].is_constant() {
        return Err(Error::TrivialIdeal);
    }
    let trace = FracGbTrace { precedence: precedence.clone(), basis: basis.clone() };

    // contraction to k(N)[L]: the τ-free part of the basis
    let sat_basis: Vec<GbPoly<Frac>> = basis
        .into_iter()
        .filter(|g| !g.support_vars().contains(&tau))
        .collect();
    if sat_basis.len() != input.len() {
        return Err(Error::NotCharacterizable(format!(
            "the reduced basis of the saturation has {} elements, expected {}",
            sat_basis.len(),
            input.len()
        )));
    }
    // leading monomials must be exactly the input ranks
    for (g, i) in sat_basis.iter().zip(0..input.len()) {
        let a = input.anatomy(i);
        let lm = g.lead_monomial();
        let expected = crate::arith::Monomial::var_pow(a.leader_var, a.degree);
        if *lm != expected {
            return Err(Error::NotCharacterizable(format!(
                "a basis leading monomial is not the rank {}^{}",
                ring.derivative_name(&a.leader),
                a.degree
            )));
        }
    }

    let mut out = Vec::with_capacity(sat_basis.len());
    let mut log = Vec::with_capacity(sat_basis.len());
    for (g, i) in sat_basis.iter().zip(0..input.len()) {
        let (cleared, q) = clear_frac(g);
        let leader_var = input.anatomy(i).leader_var;
        let (normalized, scale) = normalize_scale(ring, ranking, &cleared, leader_var);
        debug_assert!(
            content_primitive(&normalized, &leader_set).0.is_constant(),
            "cleared basis element has a nonconstant content in k[N]"
        );
        out.push(DiffPoly::new(ring, normalized));
        log.push(NormalizationRecord { cleared: q, scale });
    }
    let set = TriangularSet::new(ring, ranking, out)?;
    Ok(CanonicalCharSet { set, log, trace: CanonicalTrace::Gb(trace) })
}

/// The Invert route: multiply each element by the inverse of its initial,
/// pseudo-reduce against the prefix, then strip the gcd of the coefficients
/// and normalize.
pub fn canonical_via_invert(
    input: &TriangularSet,
    opts: &CanonicalOptions,
) -> Result<CanonicalCharSet, Error> {
    if input.is_empty() {
        return Err(Error::Invalid("empty characteristic set".into()));
    }
    if opts.precheck {
        validate_characterizing(input, opts.limit)?;
    } else if !input.is_autoreduced() {
        return Err(Error::NotCharacterizable("the set is not autoreduced".into()));
    }
    let ring = input.ring();
    let ranking = input.ranking();

    let mut work: Vec<DiffPoly> = input.elements().to_vec();
    let mut traces: Vec<GbTrace> = Vec::new();
    for i in 1..work.len() {
        let prefix = TriangularSet::new(ring, ranking, work[..i].to_vec())?;
        let anatomy = work[i].anatomy(ranking)?;
        let res = invert(&anatomy.initial, &prefix, opts.limit)?;
        let cofactor = match res.outcome {
            InvertOutcome::Invertible { ref cofactor, .. } => cofactor.clone(),
            InvertOutcome::NotInvertible { .. } => {
                return Err(Error::NotCharacterizable(format!(
                    "the initial of element {} is not invertible",
                    i + 1
                )))
            }
        };
        traces.push(res.trace);
        let multiplied = &cofactor * &work[i];
        let reduced = full_remainder(&multiplied, &prefix).remainder;
        if reduced.is_zero() {
            return Err(Error::NotCharacterizable(format!(
                "element {} vanished during reduction",
                i + 1
            )));
        }
        let new_anatomy = reduced.anatomy(ranking)?;
        if new_anatomy.leader != anatomy.leader || new_anatomy.degree != anatomy.degree {
            return Err(Error::NotCharacterizable(format!(
                "the rank of element {} changed during reduction",
                i + 1
            )));
        }
        work[i] = reduced;
    }

    let mut out = Vec::with_capacity(work.len());
    let mut log = Vec::with_capacity(work.len());
    for f in &work {
        let anatomy = f.anatomy(ranking)?;
        let mains: BTreeSet<VarId> = [anatomy.leader_var].into_iter().collect();
        let (content, primitive) = content_primitive(f.body(), &mains);
        let (normalized, scale) = normalize_scale(ring, ranking, &primitive, anatomy.leader_var);
        out.push(DiffPoly::new(ring, normalized));
        log.push(NormalizationRecord { cleared: content, scale });
    }
    let set = TriangularSet::new(ring, ranking, out)?;
    // condition 1 must hold by construction
    let leaders: BTreeSet<VarId> = set.leader_vars().into_iter().collect();
    for i in 0..set.len() {
        if set
            .anatomy(i)
            .initial
            .body()
            .support_vars()
            .iter()
            .any(|v| leaders.contains(v))
        {
            return Err(Error::NotCharacterizable(format!(
                "the initial of element {} still involves a leader",
                i + 1
            )));
        }
    }
    Ok(CanonicalCharSet { set, log, trace: CanonicalTrace::Invert(traces) })
}

/// Clear the denominators of a monic fraction-coefficient polynomial:
/// multiply by the lcm of the denominators. Returns the polynomial in
/// k[N][L] together with the lcm.
pub fn clear_denominators(g: &GbPoly<Frac>) -> (Poly, Poly) {
    clear_frac(g)
}

/// Report of the canonical-form predicate.
#[derive(Debug, Clone)]
pub struct CanonicalReport {
    pub canonical: bool,
    pub violations: Vec<String>,
}

/// Check the canonical-form conditions: autoreducedness, leader-free
/// initials, no factors in k[N], and the unit leading coefficient of each
/// initial. Does not decide whether the set characterizes its ideal.
pub fn is_canonical(set: &TriangularSet) -> CanonicalReport {
    let ring = set.ring();
    let ranking = set.ranking();
    let mut violations = Vec::new();
    if !set.is_autoreduced() {
        violations.push("the set is not autoreduced".to_string());
    }
    let leaders: BTreeSet<VarId> = set.leader_vars().into_iter().collect();
    for i in 0..set.len() {
        let a = set.anatomy(i);
        if a.initial.body().support_vars().iter().any(|v| leaders.contains(v)) {
            violations.push(format!(
                "condition 1: the initial of element {} depends on a leader",
                i + 1
            ));
            continue;
        }
        let (content, _) = content_primitive(set.element(i).body(), &leaders);
        if !content.is_constant() {
            violations.push(format!(
                "condition 2: element {} has a nonconstant factor in k[N]",
                i + 1
            ));
        }
        let ord = ring.ranking_order(ranking);
        let lead_coeff = a
            .initial
            .body()
            .leading_term(&ord)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(<Rat as One>::one);
        if !lead_coeff.is_one() {
            violations.push(format!(
                "condition 2: the leading coefficient of the initial of element {} is {}",
                i + 1,
                lead_coeff
            ));
        }
    }
    CanonicalReport { canonical: violations.is_empty(), violations }
}

/// Check the order bound ord C_i ≤ bound in the ordinary case.
pub fn order_bound_check(c: &CanonicalCharSet, bound: u32) -> Result<bool, Error> {
    if !c.set.ring().is_ordinary() {
        return Err(Error::OrdinaryOnly("order bounds".into()));
    }
    Ok(c
        .set
        .elements()
        .iter()
        .all(|f| f.order().unwrap_or(0) <= bound))
}

/// Reduced basis of the algebraic saturation (A):H_A^∞ in k(N)[L], plus the
/// leader precedence it was computed in. Exposed for the decomposition layer.
pub fn algebraic_saturation_basis(
    set: &TriangularSet,
    limit: Option<u64>,
) -> Result<(Vec<GbPoly<Frac>>, Vec<VarId>), Error> {
    let ring = set.ring();
    let ranking = set.ranking();
    let leader_vars = set.leader_vars();
    let leader_set: BTreeSet<VarId> = leader_vars.iter().copied().collect();
    let tau = ring.fresh_aux("tau");
    let mut precedence = vec![tau];
    let mut leaders_sorted = leader_vars;
    leaders_sorted.sort_by(|&a, &b| ring.var_cmp(ranking, b, a));
    precedence.extend(leaders_sorted);
    let ord = PrecedenceOrder::new(&precedence);
    let is_main = |v: VarId| v == tau || leader_set.contains(&v);
    let mut gens: Vec<GbPoly<Frac>> = set
        .elements()
        .iter()
        .map(|e| gb_frac_of_poly(e.body(), &is_main, &ord))
        .collect();
    let h = set.h_product();
    let relation = &(&Poly::var(tau) * h.body()) - &Poly::one();
    gens.push(gb_frac_of_poly(&relation, &is_main, &ord));
    let basis = buchberger(gens, &ord, limit)?;
    let contraction: Vec<GbPoly<Frac>> = basis
        .into_iter()
        .filter(|g| !g.support_vars().contains(&tau))
        .collect();
    let precedence_l: Vec<VarId> = precedence.into_iter().filter(|&v| v != tau).collect();
    Ok((contraction, precedence_l))
}

/// Normal form of a polynomial against a fraction-coefficient basis over the
/// given leader precedence; a zero result witnesses membership of the ideal
/// the basis generates in k(N)[L].
pub fn frac_normal_form(f: &Poly, basis: &[GbPoly<Frac>], precedence: &[VarId]) -> GbPoly<Frac> {
    let leaders: BTreeSet<VarId> = precedence.iter().copied().collect();
    let ord = PrecedenceOrder::new(precedence);
    let is_main = |v: VarId| leaders.contains(&v);
    let engine = gb_frac_of_poly(f, &is_main, &ord);
    normal_form(&engine, basis, &ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::diff::{DiffRing, Ranking};

    /// k{x,t,z,y}, ranking y > z > x > t, and the characteristic set
    /// {x^2 − t, (zx+1)y + 1}.
    fn paper_input() -> (DiffRing, Ranking, TriangularSet) {
        let ring = DiffRing::ordinary(&["y", "z", "x", "t"]).unwrap();
        let ranking =
            Ranking::elimination(&ring, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let (y, z, x, t) = (
            DiffPoly::indeterminate(&ring, 0),
            DiffPoly::indeterminate(&ring, 1),
            DiffPoly::indeterminate(&ring, 2),
            DiffPoly::indeterminate(&ring, 3),
        );
        let a1 = &(&x * &x) - &t;
        let a2 = &(&(&(&z * &x) + &DiffPoly::one(&ring)) * &y) + &DiffPoly::one(&ring);
        let ts = TriangularSet::new(&ring, &ranking, vec![a1, a2]).unwrap();
        (ring, ranking, ts)
    }

    fn paper_expected(ring: &DiffRing) -> Vec<DiffPoly> {
        let (y, z, x, t) = (
            DiffPoly::indeterminate(ring, 0),
            DiffPoly::indeterminate(ring, 1),
            DiffPoly::indeterminate(ring, 2),
            DiffPoly::indeterminate(ring, 3),
        );
        let c1 = &(&x * &x) - &t;
        let z2t1 = &(&(&z * &z) * &t) - &DiffPoly::one(ring);
        let c2 = &(&z2t1 * &y) + &(&(&z * &x) - &DiffPoly::one(ring));
        vec![c1, c2]
    }

    #[test]
    fn gb_route_reproduces_the_paper() {
        let (ring, _ranking, ts) = paper_input();
        let out = canonical_via_gb(&ts, &CanonicalOptions::default()).unwrap();
        assert_eq!(out.set.elements(), paper_expected(&ring).as_slice());
        assert!(is_canonical(&out.set).canonical);
        match &out.trace {
            CanonicalTrace::Gb(tr) => assert!(tr.audit()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn invert_route_reproduces_the_paper() {
        let (ring, _ranking, ts) = paper_input();
        let out = canonical_via_invert(&ts, &CanonicalOptions::default()).unwrap();
        assert_eq!(out.set.elements(), paper_expected(&ring).as_slice());
        assert!(is_canonical(&out.set).canonical);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let (_ring, _ranking, ts) = paper_input();
        let opts = CanonicalOptions::default();
        let out = canonical_via_gb(&ts, &opts).unwrap();
        let again = canonical_via_gb(&out.set, &opts).unwrap();
        assert_eq!(again.set.elements(), out.set.elements());
        let again2 = canonical_via_invert(&out.set, &opts).unwrap();
        assert_eq!(again2.set.elements(), out.set.elements());
    }

    #[test]
    fn scale_normalization() {
        // {2x^2 − 2t} normalizes to {x^2 − t}
        let ring = DiffRing::ordinary(&["x", "t"]).unwrap();
        let ranking = Ranking::elimination(&ring, vec![vec![0], vec![1]]).unwrap();
        let x = DiffPoly::indeterminate(&ring, 0);
        let t = DiffPoly::indeterminate(&ring, 1);
        let f = (&(&x * &x) - &t).scale(&rat(2));
        let ts = TriangularSet::new(&ring, &ranking, vec![f]).unwrap();
        let out = canonical_via_gb(&ts, &CanonicalOptions::default()).unwrap();
        assert_eq!(out.set.elements(), &[&(&x * &x) - &t]);
        let out2 = canonical_via_invert(&ts, &CanonicalOptions::default()).unwrap();
        assert_eq!(out2.set.elements(), out.set.elements());
    }

    #[test]
    fn single_element_content_normalization() {
        // z·(y+1) with leader y: the content z is stripped by the invert
        // route's gcd step
        let ring = DiffRing::ordinary(&["y", "z"]).unwrap();
        let ranking = Ranking::elimination(&ring, vec![vec![0], vec![1]]).unwrap();
        let y = DiffPoly::indeterminate(&ring, 0);
        let z = DiffPoly::indeterminate(&ring, 1);
        let f = &z * &(&y + &DiffPoly::one(&ring));
        let ts = TriangularSet::new(&ring, &ranking, vec![f]).unwrap();
        let out = canonical_via_invert(&ts, &CanonicalOptions::default()).unwrap();
        assert_eq!(out.set.elements(), &[&y + &DiffPoly::one(&ring)]);
        assert!(is_canonical(&out.set).canonical);
    }

    #[test]
    fn is_canonical_detects_violations() {
        let (ring, ranking, ts) = paper_input();
        // the paper's starting set: initial zx+1 involves the leader x
        let report = is_canonical(&ts);
        assert!(!report.canonical);
        assert!(report.violations[0].contains("condition 1"));
        // z(y+1) with leader y: a factor in k[N]
        let y = DiffPoly::indeterminate(&ring, 0);
        let z = DiffPoly::indeterminate(&ring, 1);
        let f = &z * &(&y + &DiffPoly::one(&ring));
        let ts2 = TriangularSet::new(&ring, &ranking, vec![f]).unwrap();
        let report2 = is_canonical(&ts2);
        assert!(!report2.canonical);
        assert!(report2.violations[0].contains("condition 2"));
        // the canonical output passes
        let out = canonical_via_gb(&ts, &CanonicalOptions::default()).unwrap();
        assert!(is_canonical(&out.set).canonical);
    }

    #[test]
    fn order_bound_on_canonical_sets() {
        let ring = DiffRing::ordinary(&["y"]).unwrap();
        let ranking = Ranking::orderly(&ring);
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = y.differentiate(0);
        let f = &(&y1 * &y1) + &y;
        let ts = TriangularSet::new(&ring, &ranking, vec![f]).unwrap();
        let out = canonical_via_gb(&ts, &CanonicalOptions::default()).unwrap();
        assert!(order_bound_check(&out, 1).unwrap());
        let ts0 = TriangularSet::new(&ring, &ranking, vec![y]).unwrap();
        let out0 = canonical_via_gb(&ts0, &CanonicalOptions::default()).unwrap();
        assert!(order_bound_check(&out0, 0).unwrap());
    }

    #[test]
    fn precheck_rejects_incoherent_input() {
        use crate::diff::RingSpec;
        let ring = DiffRing::new(RingSpec {
            derivations: vec!["d1".into(), "d2".into()],
            indeterminates: vec!["y".into(), "z".into()],
        })
        .unwrap();
        let ranking = Ranking::orderly(&ring);
        let y = DiffPoly::indeterminate(&ring, 0);
        let z = DiffPoly::indeterminate(&ring, 1);
        let a1 = &y.differentiate(0) - &z;
        let a2 = y.differentiate(1);
        let ts = TriangularSet::new(&ring, &ranking, vec![a1, a2]).unwrap();
        assert!(matches!(
            canonical_via_gb(&ts, &CanonicalOptions::default()),
            Err(Error::NotCharacterizable(_))
        ));
    }
}
