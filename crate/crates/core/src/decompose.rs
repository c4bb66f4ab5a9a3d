//! Characteristic decomposition of radical differential ideals and the
//! canonical characteristic set computed from generators.
//!
//! The decomposition is the basic splitting scheme: autoreduce the equations,
//! complete with Δ-polynomial remainders in the partial case, emit the
//! candidate as a component presenting [A]:H_A^∞, and branch on the vanishing
//! of every nonconstant initial and separant. Inconsistent leaves are
//! discarded through an algebraic Gröbner check. Components whose initials or
//! separants fail the invertibility test are regularized by a zero-divisor
//! split derived from the inversion witness.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::arith::{Poly, VarId};
use crate::canonical::{
    algebraic_saturation_basis, CanonicalCharSet, CanonicalOptions, CanonicalTrace, FracGbTrace,
    NormalizationRecord,
};
use crate::diff::{DiffPoly, DiffRing, Ranking};
use crate::error::Error;
use crate::groebner::{buchberger, clear_frac, saturation_membership, Coeff, Frac, GbPoly};
use crate::invert::{invert, InvertOutcome};
use crate::reduce::{autoreduce, full_remainder, partial_remainder, TriangularSet};

/// One characterizable component: the ideal [C]:H_C^∞ presented by its
/// characteristic set.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub charset: TriangularSet,
}

impl Component {
    pub fn leaders(&self) -> Vec<crate::diff::Derivative> {
        self.charset.leaders()
    }
}

/// A characteristic decomposition with the splitting provenance of each
/// component.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<Component>,
    pub provenance: Vec<String>,
}

/// Membership of f in the component's ideal: the full differential remainder
/// vanishes. Valid because component charsets characterize their ideals.
pub fn member(f: &DiffPoly, component: &Component) -> bool {
    full_remainder(f, &component.charset).remainder.is_zero()
}

/// A nonzero polynomial free of the prefix leaders lies in k[N] and is
/// invertible outright (g = 1, h = f).
fn trivially_invertible(f: &DiffPoly, prefix: &TriangularSet) -> bool {
    if f.is_zero() {
        return false;
    }
    let leaders: BTreeSet<VarId> = prefix.leader_vars().into_iter().collect();
    f.body().support_vars().iter().all(|v| !leaders.contains(v))
}

struct Node {
    eqs: Vec<DiffPoly>,
    ineqs: Vec<DiffPoly>,
    path: String,
}

/// Rescale each element so the coefficient of its ranking-leading monomial
/// is +1; the presented ideal is unchanged.
fn normalize_component(set: &TriangularSet) -> TriangularSet {
    let ring = set.ring();
    let ranking = set.ranking();
    let ord = ring.ranking_order(ranking);
    let elements: Vec<DiffPoly> = set
        .elements()
        .iter()
        .map(|f| {
            let body = f.body().monic_under(&ord);
            DiffPoly::new(ring, body)
        })
        .collect();
    TriangularSet::new(ring, ranking, elements).expect("rescaling preserves structure")
}

/// Decide 1 ∈ (A):H_A^∞ (algebraically) for a candidate set.
fn saturation_is_trivial(set: &TriangularSet, limit: Option<u64>) -> Result<bool, Error> {
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
    saturation_membership(ring, &Poly::one(), &gens, &sat, &precedence, limit)
}

/// Decide f ∈ [A]:H_A^∞ by partial reduction followed by the algebraic
/// saturation membership (sound without assuming that A characterizes).
fn saturated_member(f: &DiffPoly, set: &TriangularSet, limit: Option<u64>) -> Result<bool, Error> {
    let reduced = partial_remainder(f, set).remainder;
    if reduced.is_zero() {
        return Ok(true);
    }
    let ring = set.ring();
    let gens: Vec<Poly> = set.elements().iter().map(|e| e.body().clone()).collect();
    let sat: Vec<Poly> = set
        .initials_and_separants()
        .iter()
        .map(|g| g.body().clone())
        .collect();
    let mut vars: BTreeSet<VarId> = set.support_vars();
    vars.extend(reduced.body().support_vars());
    for s in &sat {
        vars.extend(s.support_vars());
    }
    let mut precedence: Vec<VarId> = vars.into_iter().collect();
    precedence.sort_by(|&a, &b| ring.var_cmp(set.ranking(), b, a));
    saturation_membership(ring, reduced.body(), &gens, &sat, &precedence, limit)
}

/// Δ-polynomial remainders of the candidate: nonzero ones refute coherence
/// by reduction and are returned for re-injection into the equations.
fn delta_remainders(set: &TriangularSet) -> Vec<DiffPoly> {
    let mut out = Vec::new();
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            let (ai, aj) = (set.anatomy(i), set.anatomy(j));
            let v = match ai.leader.least_common_derivative(&aj.leader) {
                Some(v) => v,
                None => continue,
            };
            let psi = v.quotient_theta(&ai.leader).unwrap();
            let phi = v.quotient_theta(&aj.leader).unwrap();
            if psi.iter().all(|&k| k == 0) || phi.iter().all(|&k| k == 0) {
                continue;
            }
            let delta = &(&aj.separant * &set.element(i).apply_theta(&psi))
                - &(&ai.separant * &set.element(j).apply_theta(&phi));
            let rem = full_remainder(&delta, set).remainder;
            if !rem.is_zero() {
                out.push(rem);
            }
        }
    }
    out
}

/// Basic Rosenfeld–Gröbner: decompose the radical differential ideal {F}
/// into characterizable components [C_i]:H_{C_i}^∞. An empty component list
/// means {F} = (1). Components are sorted by decreasing charset rank and
/// deduplicated; redundant components are kept (see [`prune_redundant`]).
pub fn rosenfeld_groebner(
    ring: &DiffRing,
    ranking: &Ranking,
    gens: &[DiffPoly],
    limit: Option<u64>,
) -> Result<Decomposition, Error> {
    let nonzero: Vec<DiffPoly> = gens.iter().filter(|f| !f.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(Error::Invalid("the system has no nonzero equation".into()));
    }

    let mut queue: Vec<Node> = vec![Node { eqs: nonzero, ineqs: vec![], path: "root".into() }];
    let mut seen: Vec<Vec<DiffPoly>> = Vec::new();
    let mut components: Vec<Component> = Vec::new();
    let mut provenance: Vec<String> = Vec::new();
    let mut steps: u64 = 0;

    while let Some(node) = queue.pop() {
        steps += 1;
        if let Some(max) = limit {
            if steps > max {
                return Err(Error::StepLimit(max));
            }
        }
        // skip revisited equation sets
        let mut key = node.eqs.clone();
        key.sort_by(|a, b| format!("{:?}", a.body()).cmp(&format!("{:?}", b.body())));
        key.dedup();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);

        let candidate = match autoreduce(ring, ranking, &node.eqs) {
            Ok(ts) => ts,
            Err(Error::TrivialIdeal) => continue, // inconsistent leaf
            Err(e) => return Err(e),
        };
        if candidate.is_empty() {
            continue;
        }

        // coherence completion: nonzero Δ-remainders re-enter the equations
        let deltas = delta_remainders(&candidate);
        if !deltas.is_empty() {
            if deltas.iter().any(|d| d.is_constant()) {
                continue; // the Δ-closure forces 1 into the ideal
            }
            let mut eqs = node.eqs.clone();
            eqs.extend(deltas);
            queue.push(Node { eqs, ineqs: node.ineqs.clone(), path: format!("{}.delta", node.path) });
            continue;
        }

        // branch on the vanishing of every nonconstant initial and separant,
        // regardless of whether this leaf itself survives
        for i in 0..candidate.len() {
            for (tag, h) in [
                ("init", candidate.anatomy(i).initial.clone()),
                ("sep", candidate.anatomy(i).separant.clone()),
            ] {
                if h.is_constant() {
                    continue;
                }
                let mut eqs = node.eqs.clone();
                eqs.push(h.primitive_normalized());
                let mut ineqs = node.ineqs.clone();
                ineqs.retain(|q| q != &h);
                queue.push(Node {
                    eqs,
                    ineqs,
                    path: format!("{}.{}{}", node.path, tag, i + 1),
                });
            }
        }

        // leaf consistency: 1 ∉ (A):H^∞ and no assumed-nonzero polynomial
        // may fall into the component ideal
        if saturation_is_trivial(&candidate, limit)? {
            continue;
        }
        let mut inconsistent = false;
        for q in &node.ineqs {
            if saturated_member(q, &candidate, limit)? {
                inconsistent = true;
                break;
            }
        }
        if inconsistent {
            continue;
        }

        // invertibility of initials and separants; a failure yields a
        // zero-divisor factorization to split on instead of a component
        let mut split_pair: Option<(DiffPoly, DiffPoly)> = None;
        'check: for i in 0..candidate.len() {
            let initial = candidate.anatomy(i).initial.clone();
            let separant = candidate.anatomy(i).separant.clone();
            let checks: [(DiffPoly, usize); 2] = [(initial, i), (separant, i + 1)];
            for (h, prefix_len) in checks {
                if h.is_constant() || prefix_len == 0 {
                    continue;
                }
                let prefix = candidate.prefix(prefix_len);
                if trivially_invertible(&h, &prefix) {
                    continue;
                }
                let res = invert(&h, &prefix, limit)?;
                if let InvertOutcome::NotInvertible { witness } = res.outcome {
                    // witness = w·Q(w): h·Q(h) lies in the prefix ideal, so
                    // the variety splits between h = 0 and Q(h) = 0
                    let w = res.trace.fresh_var;
                    let uni = witness.univariate_in(w);
                    let top = witness.degree_in(w);
                    let mut q_at_h = Poly::zero();
                    for k in (1..=top).rev() {
                        let c = uni.get(&k).cloned().unwrap_or_else(Poly::zero);
                        q_at_h = &(&q_at_h * h.body()) + &c;
                    }
                    split_pair = Some((h.clone(), DiffPoly::new(ring, q_at_h)));
                    break 'check;
                }
            }
        }
        if let Some((h, q)) = split_pair {
            let mut eqs1 = node.eqs.clone();
            eqs1.push(h.primitive_normalized());
            queue.push(Node {
                eqs: eqs1,
                ineqs: node.ineqs.clone(),
                path: format!("{}.zd0", node.path),
            });
            let mut eqs2 = node.eqs.clone();
            eqs2.push(q.primitive_normalized());
            let mut ineqs2 = node.ineqs.clone();
            ineqs2.push(h);
            queue.push(Node {
                eqs: eqs2,
                ineqs: ineqs2,
                path: format!("{}.zd1", node.path),
            });
            continue;
        }

        let normalized = normalize_component(&candidate);
        if !components.iter().any(|c| c.charset == normalized) {
            components.push(Component { charset: normalized });
            provenance.push(node.path);
        }
    }

    // order components by decreasing charset rank
    let mut order: Vec<usize> = (0..components.len()).collect();
    order.sort_by(|&i, &j| {
        crate::reduce::compare_sets(&components[j].charset, &components[i].charset)
            .then_with(|| provenance[i].cmp(&provenance[j]))
    });
    let components = order.iter().map(|&i| components[i].clone()).collect();
    let provenance = order.iter().map(|&i| provenance[i].clone()).collect();
    Ok(Decomposition { components, provenance })
}

/// Compare the leader sets of two components as ascending rank sequences
/// (each leader taken with degree 1), the same rule that compares
/// autoreduced sets.
pub fn leader_set_cmp(a: &Component, b: &Component, ranking: &Ranking) -> Ordering {
    let la = a.charset.leaders();
    let lb = b.charset.leaders();
    for (x, y) in la.iter().zip(&lb) {
        match ranking.compare(x, y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    lb.len().cmp(&la.len())
}

/// Indices of all components whose leader sets have the highest possible
/// rank; ties are all included.
pub fn select_max_leader_rank(components: &[Component], ranking: &Ranking) -> Vec<usize> {
    if components.is_empty() {
        return vec![];
    }
    let best = (0..components.len())
        .max_by(|&i, &j| {
            leader_set_cmp(&components[i], &components[j], ranking).then(j.cmp(&i))
        })
        .unwrap();
    (0..components.len())
        .filter(|&i| leader_set_cmp(&components[i], &components[best], ranking) == Ordering::Equal)
        .collect()
}

/// Intersection of two ideals in k(N)[L] given by Gröbner bases over the
/// same leader precedence, via one tag variable: t·J1 + (1−t)·J2, then
/// elimination of t.
pub fn ideal_intersection(
    ring: &DiffRing,
    a: &[GbPoly<Frac>],
    b: &[GbPoly<Frac>],
    leader_precedence: &[VarId],
    limit: Option<u64>,
) -> Result<Vec<GbPoly<Frac>>, Error> {
    let tag = ring.fresh_aux("tag");
    let mut precedence = vec![tag];
    precedence.extend_from_slice(leader_precedence);
    let ord = crate::arith::PrecedenceOrder::new(&precedence);
    let tag_mono = crate::arith::Monomial::var(tag);
    let mut gens: Vec<GbPoly<Frac>> = Vec::new();
    for f in a {
        gens.push(f.mul_term(&tag_mono, &Frac::one()));
    }
    for g in b {
        // (1 − tag)·g
        gens.push(g.sub(&g.mul_term(&tag_mono, &Frac::one()), &ord));
    }
    let basis = buchberger(gens, &ord, limit)?;
    Ok(basis
        .into_iter()
        .filter(|g| !g.support_vars().contains(&tag))
        .collect())
}

/// Canonical characteristic set of {F} from generators: decompose, keep all
/// components whose leader sets have the highest rank, intersect their
/// algebraic saturations in k(N)[L], reduce, clear denominators, normalize.
/// The output is validated against the generators; failures are reported as
/// evidence that {F} may not be characterizable.
pub fn canonical_from_generators(
    ring: &DiffRing,
    ranking: &Ranking,
    gens: &[DiffPoly],
    opts: &CanonicalOptions,
) -> Result<CanonicalCharSet, Error> {
    let decomposition = rosenfeld_groebner(ring, ranking, gens, opts.limit)?;
    canonical_from_decomposition(ring, ranking, &decomposition, gens, opts)
}

/// The selection/intersection/normalization tail of the generator pipeline,
/// reusable on an externally supplied decomposition.
pub fn canonical_from_decomposition(
    ring: &DiffRing,
    ranking: &Ranking,
    decomposition: &Decomposition,
    gens: &[DiffPoly],
    opts: &CanonicalOptions,
) -> Result<CanonicalCharSet, Error> {
    if decomposition.components.is_empty() {
        return Err(Error::TrivialIdeal);
    }
    let selected = select_max_leader_rank(&decomposition.components, ranking);
    let leader_vars = decomposition.components[selected[0]].charset.leader_vars();
    let mut leader_precedence = leader_vars.clone();
    leader_precedence.sort_by(|&a, &b| ring.var_cmp(ranking, b, a));

    let mut intersection: Option<Vec<GbPoly<Frac>>> = None;
    for &idx in &selected {
        let (basis, _prec) =
            algebraic_saturation_basis(&decomposition.components[idx].charset, opts.limit)?;
        intersection = Some(match intersection {
            None => basis,
            Some(current) => {
                ideal_intersection(ring, &current, &basis, &leader_precedence, opts.limit)?
            }
        });
    }
    let basis = intersection.expect("at least one component is selected");
    if basis.is_empty() {
        return Err(Error::NotCharacterizable(
            "the intersected saturation ideal is zero".into(),
        ));
    }
    if basis.len() == 1 && basis[0].is_constant() {
        return Err(Error::TrivialIdeal);
    }

    // the reduced basis must be triangular in the leaders
    let leader_set: BTreeSet<VarId> = leader_vars.iter().copied().collect();
    for g in &basis {
        let lm = g.lead_monomial();
        let mut it = lm.iter();
        let ok = match (it.next(), it.next()) {
            (Some((v, _)), None) => leader_set.contains(&v),
            _ => false,
        };
        if !ok {
            return Err(Error::NotCharacterizable(
                "a leading monomial of the intersection basis is not a pure leader power".into(),
            ));
        }
    }
    if basis.len() != leader_set.len() {
        return Err(Error::NotCharacterizable(format!(
            "input may not be characterizable: the intersection basis has {} elements for {} leaders",
            basis.len(),
            leader_set.len()
        )));
    }

    let mut out = Vec::with_capacity(basis.len());
    let mut log = Vec::with_capacity(basis.len());
    for g in &basis {
        let (cleared, q) = clear_frac(g);
        let leader_var = g.lead_monomial().iter().next().unwrap().0;
        let degree = cleared.degree_in(leader_var);
        let initial = cleared.coeff_of_power(leader_var, degree);
        let ord = ring.ranking_order(ranking);
        let scale = initial
            .leading_term(&ord)
            .map(|(_, c)| c.clone())
            .expect("nonzero initial");
        let inv = crate::arith::rat(1) / scale.clone();
        out.push(DiffPoly::new(ring, cleared.scale(&inv)));
        log.push(NormalizationRecord { cleared: q, scale });
    }
    let set = TriangularSet::new(ring, ranking, out)?;

    // every generator must reduce to zero against the output
    for f in gens {
        if !full_remainder(f, &set).remainder.is_zero() {
            return Err(Error::NotCharacterizable(
                "input may not be characterizable: a generator does not reduce to zero against the computed set"
                    .into(),
            ));
        }
    }
    // and the output must lie in {F}: zero remainder against every component
    if opts.precheck {
        for c in &decomposition.components {
            for e in set.elements() {
                if !member(e, c) {
                    return Err(Error::NotCharacterizable(
                        "input may not be characterizable: the computed set does not lie in every component"
                            .into(),
                    ));
                }
            }
        }
    }
    Ok(CanonicalCharSet {
        set,
        log,
        trace: CanonicalTrace::Gb(FracGbTrace { precedence: leader_precedence, basis }),
    })
}

/// Equality of two characterizable ideals given by characterizing sets:
/// mutual reduction of the charsets to zero.
pub fn equal_ideals(a: &Component, b: &Component) -> bool {
    a.charset.elements().iter().all(|f| member(f, b))
        && b.charset.elements().iter().all(|f| member(f, a))
}

/// The four conditions of the Kolchin-style criterion.
#[derive(Debug, Clone, Copy)]
pub struct KolchinReport {
    pub a_in_j: bool,
    pub b_in_i: bool,
    pub h_a_not_in_j: bool,
    pub h_b_not_in_i: bool,
}

impl KolchinReport {
    pub fn equal(&self) -> bool {
        self.a_in_j && self.b_in_i && self.h_a_not_in_j && self.h_b_not_in_i
    }
}

/// Kolchin's criterion extended to characterizable ideals: A ⊂ J, B ⊂ I,
/// H_A ∉ J, H_B ∉ I. For valid nontrivial inputs the last two conditions are
/// implied; a disagreement with [`equal_ideals`] flags invalid input.
pub fn kolchin_equality(a: &Component, b: &Component) -> KolchinReport {
    let h_a = a.charset.h_product();
    let h_b = b.charset.h_product();
    KolchinReport {
        a_in_j: a.charset.elements().iter().all(|f| member(f, b)),
        b_in_i: b.charset.elements().iter().all(|f| member(f, a)),
        h_a_not_in_j: !member(&h_a, b),
        h_b_not_in_i: !member(&h_b, a),
    }
}

/// `[K]:H_K^∞ ⊆ [J]:H_J^∞`: the elements of K reduce to zero against J and
/// every initial and separant of K stays invertible modulo J after partial
/// reduction.
fn ideal_contained(k: &Component, j: &Component, limit: Option<u64>) -> Result<bool, Error> {
    for f in k.charset.elements() {
        if !member(f, j) {
            return Ok(false);
        }
    }
    for h in k.charset.initials_and_separants() {
        if h.is_constant() {
            continue;
        }
        let reduced = partial_remainder(&h, &j.charset).remainder;
        if reduced.is_zero() {
            return Ok(false);
        }
        if trivially_invertible(&reduced, &j.charset) {
            continue;
        }
        let res = invert(&reduced, &j.charset, limit)?;
        if !res.is_invertible() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Remove components whose ideal contains another component's ideal (the
/// post-hoc pruning pass; off by default in the decomposition itself).
/// Returns the provenance strings of the removed components.
pub fn prune_redundant(dec: &mut Decomposition, limit: Option<u64>) -> Result<Vec<String>, Error> {
    let n = dec.components.len();
    let mut alive: Vec<bool> = vec![true; n];
    for j in 0..n {
        for k in 0..n {
            if j == k || !alive[k] || !alive[j] {
                continue;
            }
            if ideal_contained(&dec.components[k], &dec.components[j], limit)? {
                // equal ideals: keep the earlier one
                let reverse = ideal_contained(&dec.components[j], &dec.components[k], limit)?;
                if !reverse || k < j {
                    alive[j] = false;
                }
            }
        }
    }
    let mut removed = Vec::new();
    let mut components = Vec::new();
    let mut provenance = Vec::new();
    for i in 0..n {
        if alive[i] {
            components.push(dec.components[i].clone());
            provenance.push(dec.provenance[i].clone());
        } else {
            removed.push(dec.provenance[i].clone());
        }
    }
    dec.components = components;
    dec.provenance = provenance;
    Ok(removed)
}

/// Membership of f in {F} presented by a decomposition: f must lie in every
/// component.
pub fn radical_member(f: &DiffPoly, dec: &Decomposition) -> bool {
    dec.components.iter().all(|c| member(f, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_canonical;

    fn ordinary_y() -> (DiffRing, Ranking) {
        let ring = DiffRing::ordinary(&["y"]).unwrap();
        let ranking = Ranking::orderly(&ring);
        (ring, ranking)
    }

    #[test]
    fn diff_example_two_components() {
        // {y'^2 + y} = [y'^2+y]:(y')^∞ ∩ [y]
        let (ring, ranking) = ordinary_y();
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = y.differentiate(0);
        let f = &(&y1 * &y1) + &y;
        let dec = rosenfeld_groebner(&ring, &ranking, &[f.clone()], None).unwrap();
        assert_eq!(dec.components.len(), 2);
        assert_eq!(dec.components[0].charset.elements(), &[f]);
        assert_eq!(dec.components[1].charset.elements(), &[y]);
    }

    #[test]
    fn single_generator_low_order() {
        let (ring, ranking) = ordinary_y();
        let y = DiffPoly::indeterminate(&ring, 0);
        let dec = rosenfeld_groebner(&ring, &ranking, &[y.clone()], None).unwrap();
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.components[0].charset.elements(), &[y]);
    }

    #[test]
    fn alg_example_decomposition() {
        // (zx+t, zy+t) with y > x > z > t: components (zx+t, zy+t) and (z, t)
        let ring = DiffRing::ordinary(&["y", "x", "z", "t"]).unwrap();
        let ranking =
            Ranking::elimination(&ring, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let (y, x, z, t) = (
            DiffPoly::indeterminate(&ring, 0),
            DiffPoly::indeterminate(&ring, 1),
            DiffPoly::indeterminate(&ring, 2),
            DiffPoly::indeterminate(&ring, 3),
        );
        let f1 = &(&z * &x) + &t;
        let f2 = &(&z * &y) + &t;
        let dec = rosenfeld_groebner(&ring, &ranking, &[f1.clone(), f2.clone()], None).unwrap();
        assert_eq!(dec.components.len(), 2);
        // first (highest-rank) component: its ideal equals (zx+t, x−y):z^∞,
        // verified by mutual membership
        let general = &dec.components[0];
        assert!(member(&f1, general));
        assert!(member(&f2, general));
        assert!(member(&(&x - &y), general));
        // second component: (z, t)
        let second = &dec.components[1];
        assert_eq!(second.charset.elements(), &[t.clone(), z.clone()]);
        // the pruning pass must keep both: x − y does not vanish on (z, t)
        let mut pruned = dec.clone();
        let removed = prune_redundant(&mut pruned, None).unwrap();
        assert!(removed.is_empty());
        assert_eq!(pruned.components.len(), 2);
    }

    #[test]
    fn canonical_from_generators_paper_example() {
        // {x^2 − t, (zx+1)y + 1} from generators
        let ring = DiffRing::ordinary(&["y", "z", "x", "t"]).unwrap();
        let ranking =
            Ranking::elimination(&ring, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let (y, z, x, t) = (
            DiffPoly::indeterminate(&ring, 0),
            DiffPoly::indeterminate(&ring, 1),
            DiffPoly::indeterminate(&ring, 2),
            DiffPoly::indeterminate(&ring, 3),
        );
        let f1 = &(&x * &x) - &t;
        let f2 = &(&(&(&z * &x) + &DiffPoly::one(&ring)) * &y) + &DiffPoly::one(&ring);
        let out = canonical_from_generators(
            &ring,
            &ranking,
            &[f1.clone(), f2],
            &CanonicalOptions::default(),
        )
        .unwrap();
        let z2t1 = &(&(&z * &z) * &t) - &DiffPoly::one(&ring);
        let c2 = &(&z2t1 * &y) + &(&(&z * &x) - &DiffPoly::one(&ring));
        assert_eq!(out.set.elements(), &[f1, c2]);
        assert!(is_canonical(&out.set).canonical);
    }

    #[test]
    fn canonical_from_single_indeterminate() {
        let (ring, ranking) = ordinary_y();
        let y = DiffPoly::indeterminate(&ring, 0);
        let out =
            canonical_from_generators(&ring, &ranking, &[y.clone()], &CanonicalOptions::default())
                .unwrap();
        assert_eq!(out.set.elements(), &[y]);
    }

    #[test]
    fn equality_tests_on_trivial_pairs() {
        let (ring, ranking) = ordinary_y();
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = y.differentiate(0);
        let a = Component {
            charset: TriangularSet::new(&ring, &ranking, vec![y.clone()]).unwrap(),
        };
        let b = Component {
            charset: TriangularSet::new(&ring, &ranking, vec![y1]).unwrap(),
        };
        assert!(!equal_ideals(&a, &b));
        assert!(!kolchin_equality(&a, &b).a_in_j);
        assert!(equal_ideals(&a, &a));
        assert!(kolchin_equality(&a, &a).equal());
    }

    #[test]
    fn kolchin_on_diff_example_component() {
        let (ring, ranking) = ordinary_y();
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = y.differentiate(0);
        let f = &(&y1 * &y1) + &y;
        let c = Component {
            charset: TriangularSet::new(&ring, &ranking, vec![f]).unwrap(),
        };
        let report = kolchin_equality(&c, &c);
        assert!(report.equal());
        // H = 2y' does not reduce to zero against {y'^2 + y}
        assert!(report.h_a_not_in_j);
    }

    #[test]
    fn intersection_of_coprime_principal_ideals() {
        // (x) ∩ (x+1) = (x^2 + x) in k[x]
        let ring = DiffRing::ordinary(&["x"]).unwrap();
        let ranking = Ranking::orderly(&ring);
        let x = DiffPoly::indeterminate(&ring, 0);
        let a = TriangularSet::new(&ring, &ranking, vec![x.clone()]).unwrap();
        let b = TriangularSet::new(&ring, &ranking, vec![&x + &DiffPoly::one(&ring)]).unwrap();
        let (ba, prec) = algebraic_saturation_basis(&a, None).unwrap();
        let (bb, _) = algebraic_saturation_basis(&b, None).unwrap();
        let meet = ideal_intersection(&ring, &ba, &bb, &prec, None).unwrap();
        assert_eq!(meet.len(), 1);
        let (poly, _) = clear_frac(&meet[0]);
        let expect = &(&x * &x) + &x;
        assert_eq!(poly, *expect.body());
        // J ∩ J = J
        let same = ideal_intersection(&ring, &ba, &ba, &prec, None).unwrap();
        assert_eq!(same.len(), 1);
        let (p2, _) = clear_frac(&same[0]);
        assert_eq!(p2, *x.body());
    }

    #[test]
    fn leader_rank_selection_includes_ties() {
        // the two components of (y^2+z, x^3+x^2y+xy−z) share leaders {x, y}
        let ring = DiffRing::ordinary(&["x", "y", "z"]).unwrap();
        let ranking = Ranking::elimination(&ring, vec![vec![0], vec![1], vec![2]]).unwrap();
        let (x, y, z) = (
            DiffPoly::indeterminate(&ring, 0),
            DiffPoly::indeterminate(&ring, 1),
            DiffPoly::indeterminate(&ring, 2),
        );
        let y2z = &(&y * &y) + &z;
        let comp1 = Component {
            charset: TriangularSet::new(&ring, &ranking, vec![y2z.clone(), &x + &y]).unwrap(),
        };
        let comp2 = Component {
            charset: TriangularSet::new(&ring, &ranking, vec![y2z.clone(), &(&x * &x) + &y])
                .unwrap(),
        };
        let low = Component {
            charset: TriangularSet::new(&ring, &ranking, vec![z.clone(), y.clone(), x.clone()])
                .unwrap(),
        };
        let comps = vec![comp2.clone(), low, comp1.clone()];
        let selected = select_max_leader_rank(&comps, &ranking);
        assert_eq!(selected, vec![0, 2]);
    }

    #[test]
    fn remark_identity_from_generators() {
        // I = (y^2+z, x^3+x^2y+xy−z) equals (y^2+z, x+y) ∩ (y^2+z, x^2+y);
        // the generator pipeline and the two-component intersection agree
        let ring = DiffRing::ordinary(&["x", "y", "z"]).unwrap();
        let ranking = Ranking::elimination(&ring, vec![vec![0], vec![1], vec![2]]).unwrap();
        let (x, y, z) = (
            DiffPoly::indeterminate(&ring, 0),
            DiffPoly::indeterminate(&ring, 1),
            DiffPoly::indeterminate(&ring, 2),
        );
        let y2z = &(&y * &y) + &z;
        let big = &(&(&x.pow(3) + &(&(&x * &x) * &y)) + &(&x * &y)) - &z;
        let gens = [y2z.clone(), big.clone()];
        let out = canonical_from_generators(&ring, &ranking, &gens, &CanonicalOptions::default())
            .unwrap();
        // feed the decomposition of the two components directly
        let comp1 = Component {
            charset: TriangularSet::new(&ring, &ranking, vec![y2z.clone(), &x + &y]).unwrap(),
        };
        let comp2 = Component {
            charset: TriangularSet::new(&ring, &ranking, vec![y2z.clone(), &(&x * &x) + &y])
                .unwrap(),
        };
        let dec = Decomposition {
            components: vec![comp1, comp2],
            provenance: vec!["given.0".into(), "given.1".into()],
        };
        let out2 = canonical_from_decomposition(
            &ring,
            &ranking,
            &dec,
            &gens,
            &CanonicalOptions::default(),
        )
        .unwrap();
        assert_eq!(out.set.elements(), out2.set.elements());
        // both generators reduce to zero against the output
        for g in &gens {
            assert!(full_remainder(g, &out.set).remainder.is_zero());
        }
    }
}
