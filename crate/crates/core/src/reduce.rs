//! Ritt–Kolchin reduction: differential partial and full pseudo-remainders
//! with exact combination certificates, reducedness tests, autoreduced-set
//! construction and rank comparison, and coherence of autoreduced sets.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::arith::{pseudo_divide, Poly, VarId};
use crate::diff::{Anatomy, Derivative, DiffPoly, DiffRing, Rank, Ranking};
use crate::error::Error;
use crate::groebner;

/// An ordered set of nonconstant differential polynomials with pairwise
/// distinct leaders, sorted by increasing rank, with cached anatomies.
#[derive(Debug, Clone)]
pub struct TriangularSet {
    ring: DiffRing,
    ranking: Ranking,
    elements: Vec<DiffPoly>,
    anatomies: Vec<Anatomy>,
}

impl PartialEq for TriangularSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl TriangularSet {
    pub fn new(ring: &DiffRing, ranking: &Ranking, elements: Vec<DiffPoly>) -> Result<Self, Error> {
        let mut pairs: Vec<(DiffPoly, Anatomy)> = Vec::with_capacity(elements.len());
        for f in elements {
            if f.is_constant() {
                return Err(Error::NoLeader);
            }
            let a = f.anatomy(ranking)?;
            pairs.push((f, a));
        }
        pairs.sort_by(|(_, a), (_, b)| a.rank().compare(&b.rank(), ranking));
        for w in pairs.windows(2) {
            if w[0].1.leader == w[1].1.leader {
                return Err(Error::Invalid(format!(
                    "two elements share the leader {}",
                    ring.derivative_name(&w[0].1.leader)
                )));
            }
        }
        let (elements, anatomies) = pairs.into_iter().unzip();
        Ok(TriangularSet { ring: ring.clone(), ranking: ranking.clone(), elements, anatomies })
    }

    pub fn empty(ring: &DiffRing, ranking: &Ranking) -> Self {
        TriangularSet {
            ring: ring.clone(),
            ranking: ranking.clone(),
            elements: vec![],
            anatomies: vec![],
        }
    }

    pub fn ring(&self) -> &DiffRing {
        &self.ring
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn elements(&self) -> &[DiffPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &DiffPoly {
        &self.elements[i]
    }

    pub fn anatomy(&self, i: usize) -> &Anatomy {
        &self.anatomies[i]
    }

    pub fn leaders(&self) -> Vec<Derivative> {
        self.anatomies.iter().map(|a| a.leader.clone()).collect()
    }

    pub fn leader_vars(&self) -> Vec<VarId> {
        self.anatomies.iter().map(|a| a.leader_var).collect()
    }

    pub fn ranks(&self) -> Vec<Rank> {
        self.anatomies.iter().map(|a| a.rank()).collect()
    }

    /// The first `i` elements as a triangular set.
    pub fn prefix(&self, i: usize) -> TriangularSet {
        TriangularSet {
            ring: self.ring.clone(),
            ranking: self.ranking.clone(),
            elements: self.elements[..i].to_vec(),
            anatomies: self.anatomies[..i].to_vec(),
        }
    }

    /// Initials and separants, in element order: I_1, S_1, I_2, S_2, …
    pub fn initials_and_separants(&self) -> Vec<DiffPoly> {
        let mut out = Vec::with_capacity(2 * self.len());
        for a in &self.anatomies {
            out.push(a.initial.clone());
            out.push(a.separant.clone());
        }
        out
    }

    /// The product H = I_1·S_1 ⋯ I_p·S_p.
    pub fn h_product(&self) -> DiffPoly {
        let mut h = DiffPoly::one(&self.ring);
        for f in self.initials_and_separants() {
            h = &h * &f;
        }
        h
    }

    /// Derivative variables occurring in the set that are not leaders. For an
    /// autoreduced set these are exactly the effective non-leaders N_A.
    pub fn non_leader_vars(&self) -> BTreeSet<VarId> {
        let leaders: BTreeSet<VarId> = self.leader_vars().into_iter().collect();
        let mut out = BTreeSet::new();
        for f in &self.elements {
            for v in f.body().support_vars() {
                if !leaders.contains(&v) {
                    out.insert(v);
                }
            }
        }
        out
    }

    pub fn is_autoreduced(&self) -> bool {
        (0..self.len()).all(|i| {
            let rest = TriangularSet {
                ring: self.ring.clone(),
                ranking: self.ranking.clone(),
                elements: self
                    .elements
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, f)| f.clone())
                    .collect(),
                anatomies: self
                    .anatomies
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, a)| a.clone())
                    .collect(),
            };
            is_reduced(&self.elements[i], &rest) == Reducedness::Fully
        })
    }

    /// All derivative variables occurring across the set.
    pub fn support_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for f in &self.elements {
            out.extend(f.body().support_vars());
        }
        out
    }
}

/// How far a polynomial is reduced with respect to a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reducedness {
    /// Partially reduced and degree-reduced against every element.
    Fully,
    /// No proper derivative of a leader occurs, but some leader degree is
    /// too high.
    Partially,
    /// Some proper derivative of a leader occurs.
    No,
}

pub fn is_reduced(f: &DiffPoly, set: &TriangularSet) -> Reducedness {
    let derivs = f.derivatives();
    for a in &set.anatomies {
        if derivs.iter().any(|(_, d)| d.proper_derivative_of(&a.leader)) {
            return Reducedness::No;
        }
    }
    for a in &set.anatomies {
        if f.body().degree_in(a.leader_var) >= a.degree {
            return Reducedness::Partially;
        }
    }
    Reducedness::Fully
}

/// One recorded elimination step: the prolongation θ applied to element
/// `index` entered the combination with the given cofactor.
#[derive(Debug, Clone)]
pub struct CombStep {
    pub theta: Vec<u32>,
    pub index: usize,
    pub cofactor: DiffPoly,
}

/// Exact witness for a pseudo-remainder computation:
/// `multiplier · input = remainder + Σ cofactor_k · θ_k(A_{i_k})`.
#[derive(Debug, Clone)]
pub struct RemainderCertificate {
    pub input: DiffPoly,
    pub remainder: DiffPoly,
    /// Multiplier recorded as a product of powers of initials/separants.
    pub multiplier_factors: Vec<(DiffPoly, u32)>,
    pub steps: Vec<CombStep>,
}

impl RemainderCertificate {
    /// Expand the recorded multiplier product.
    pub fn multiplier(&self) -> DiffPoly {
        let ring = self.input.ring();
        let mut m = DiffPoly::one(ring);
        for (f, e) in &self.multiplier_factors {
            m = &m * &f.pow(*e);
        }
        m
    }

    /// Re-expand the combination and check the identity exactly.
    pub fn verify(&self, set: &TriangularSet) -> bool {
        let mut rhs = self.remainder.clone();
        for step in &self.steps {
            let prolonged = set.element(step.index).apply_theta(&step.theta);
            rhs = &rhs + &(&step.cofactor * &prolonged);
        }
        &self.multiplier() * &self.input == rhs
    }
}

struct ReductionState {
    r: DiffPoly,
    factors: Vec<(DiffPoly, u32)>,
    steps: Vec<CombStep>,
}

impl ReductionState {
    fn eliminate(&mut self, set: &TriangularSet, index: usize, theta: Vec<u32>, var: VarId) {
        let prolonged = set.element(index).apply_theta(&theta);
        let pd = pseudo_divide(self.r.body(), prolonged.body(), var)
            .expect("prolonged element has positive degree in the target variable");
        if pd.power > 0 {
            let lead = DiffPoly::new(set.ring(), prolonged.body().leading_coeff_in(var));
            let lead_pow = lead.pow(pd.power);
            for step in &mut self.steps {
                step.cofactor = &step.cofactor * &lead_pow;
            }
            match self.factors.last_mut() {
                Some((f, e)) if *f == lead => *e += pd.power,
                _ => self.factors.push((lead, pd.power)),
            }
        }
        self.steps.push(CombStep {
            theta,
            index,
            cofactor: DiffPoly::new(set.ring(), pd.quotient),
        });
        self.r = DiffPoly::new(set.ring(), pd.remainder);
    }
}

/// Highest-ranked derivative in `f` that is a proper derivative of some
/// leader, together with the element chosen to eliminate it: smallest
/// prolongation order, then lowest index.
fn find_partial_offender(
    f: &DiffPoly,
    set: &TriangularSet,
) -> Option<(VarId, Derivative, usize, Vec<u32>)> {
    let ranking = set.ranking();
    let mut best: Option<(VarId, Derivative, usize, Vec<u32>)> = None;
    for (v, d) in f.derivatives() {
        let mut choice: Option<(usize, Vec<u32>)> = None;
        for (i, a) in set.anatomies.iter().enumerate() {
            if d.proper_derivative_of(&a.leader) {
                let theta = d.quotient_theta(&a.leader).unwrap();
                let ord: u32 = theta.iter().sum();
                match &choice {
                    Some((_, t)) if t.iter().sum::<u32>() <= ord => {}
                    _ => choice = Some((i, theta)),
                }
            }
        }
        if let Some((i, theta)) = choice {
            let better = match &best {
                None => true,
                Some((_, bd, _, _)) => ranking.compare(&d, bd) == Ordering::Greater,
            };
            if better {
                best = Some((v, d.clone(), i, theta));
            }
        }
    }
    best
}

/// Differential partial remainder: eliminate every proper derivative of a
/// leader, highest first. The remainder is partially reduced w.r.t. the set
/// and the multiplier lies in S^∞.
pub fn partial_remainder(f: &DiffPoly, set: &TriangularSet) -> RemainderCertificate {
    let mut state = ReductionState { r: f.clone(), factors: vec![], steps: vec![] };
    while let Some((v, _d, i, theta)) = find_partial_offender(&state.r, set) {
        state.eliminate(set, i, theta, v);
    }
    RemainderCertificate {
        input: f.clone(),
        remainder: state.r,
        multiplier_factors: state.factors,
        steps: state.steps,
    }
}

/// Differential full remainder: the partial phase followed by algebraic
/// pseudo-division by each element whose leader degree is still too high,
/// highest leader first. The remainder is reduced w.r.t. the set and the
/// multiplier lies in H^∞.
pub fn full_remainder(f: &DiffPoly, set: &TriangularSet) -> RemainderCertificate {
    let cert = partial_remainder(f, set);
    let mut state = ReductionState {
        r: cert.remainder,
        factors: cert.multiplier_factors,
        steps: cert.steps,
    };
    let zero_theta = vec![0u32; set.ring().num_derivations()];
    loop {
        // highest-leader element whose degree bound is violated
        let offender = (0..set.len())
            .rev()
            .find(|&i| state.r.body().degree_in(set.anatomy(i).leader_var) >= set.anatomy(i).degree);
        match offender {
            None => break,
            Some(i) => {
                let var = set.anatomy(i).leader_var;
                state.eliminate(set, i, zero_theta.clone(), var);
            }
        }
    }
    RemainderCertificate {
        input: f.clone(),
        remainder: state.r,
        multiplier_factors: state.factors,
        steps: state.steps,
    }
}

/// Rank comparison of autoreduced sets: elementwise by increasing rank, with
/// the longer set winning (lower) on an equal prefix.
pub fn compare_sets(a: &TriangularSet, b: &TriangularSet) -> Ordering {
    let ranking = a.ranking();
    for (x, y) in a.anatomies.iter().zip(&b.anatomies) {
        match x.rank().compare(&y.rank(), ranking) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    // equal prefix: more elements = lower rank
    b.len().cmp(&a.len())
}

/// Ritt–Wu autoreduction: extract the lowest-rank basic set, reduce the rest
/// against it, and repeat until every input reduces to zero. Signals the
/// trivial ideal when a nonzero constant remainder appears.
pub fn autoreduce(
    ring: &DiffRing,
    ranking: &Ranking,
    inputs: &[DiffPoly],
) -> Result<TriangularSet, Error> {
    let mut pool: Vec<DiffPoly> = Vec::new();
    for f in inputs {
        if f.is_zero() || pool.contains(f) {
            continue;
        }
        if f.is_constant() {
            return Err(Error::TrivialIdeal);
        }
        pool.push(f.clone());
    }
    if pool.is_empty() {
        return Ok(TriangularSet::empty(ring, ranking));
    }
    loop {
        // sort by rank, ties by the lexicographic polynomial order
        let mut order: Vec<usize> = (0..pool.len()).collect();
        let anatomies: Vec<Anatomy> = pool
            .iter()
            .map(|f| f.anatomy(ranking).expect("pool holds nonconstants"))
            .collect();
        order.sort_by(|&i, &j| {
            anatomies[i]
                .rank()
                .compare(&anatomies[j].rank(), ranking)
                .then_with(|| pool[i].lex_cmp(&pool[j], ranking))
        });

        // greedy basic set: take each candidate reduced w.r.t. what is chosen
        let mut chosen: Vec<usize> = Vec::new();
        for &i in &order {
            let ok = chosen.iter().all(|&j| {
                let a = &anatomies[j];
                !pool[i].contains_proper_derivative_of(&a.leader)
                    && pool[i].body().degree_in(a.leader_var) < a.degree
            });
            if ok {
                chosen.push(i);
            }
        }
        let basic = TriangularSet::new(
            ring,
            ranking,
            chosen.iter().map(|&i| pool[i].clone()).collect(),
        )?;

        let mut new_remainders: Vec<DiffPoly> = Vec::new();
        for (i, f) in pool.iter().enumerate() {
            if chosen.contains(&i) {
                continue;
            }
            let r = full_remainder(f, &basic).remainder;
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                return Err(Error::TrivialIdeal);
            }
            // normalized to keep coefficient growth in check
            let r = r.primitive_normalized();
            if !pool.contains(&r) && !new_remainders.contains(&r) {
                new_remainders.push(r);
            }
        }
        if new_remainders.is_empty() {
            return Ok(basic);
        }
        pool.extend(new_remainders);
    }
}

/// Outcome of a coherence test, with the failing Δ-polynomials as witnesses.
#[derive(Debug, Clone)]
pub struct CoherenceReport {
    pub coherent: bool,
    /// (index of lower element, index of higher element, Δ-polynomial)
    pub witnesses: Vec<(usize, usize, DiffPoly)>,
}

/// Coherence of an autoreduced set: for every pair of elements whose leaders
/// share a common derivative v, the Δ-polynomial must lie in (A_v):H^∞,
/// where A_v collects the elements and those prolongations whose leaders
/// rank strictly below v. The prolongation enumeration is bounded by the
/// orders occurring in the Δ-polynomial, which is exact for orderly-style
/// rankings and a documented cut for elimination rankings.
pub fn is_coherent(set: &TriangularSet, limit: Option<u64>) -> Result<CoherenceReport, Error> {
    let ring = set.ring();
    let ranking = set.ranking();
    let mut witnesses = Vec::new();
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
                // one leader derives the other; excluded by autoreducedness
                continue;
            }
            let delta = &(&aj.separant * &set.element(i).apply_theta(&psi))
                - &(&ai.separant * &set.element(j).apply_theta(&phi));
            if delta.is_zero() {
                continue;
            }
            let gens = prolongations_below(set, &v, &delta);
            let sat: Vec<Poly> = set
                .initials_and_separants()
                .iter()
                .map(|f| f.body().clone())
                .collect();
            let mut vars: BTreeSet<VarId> = delta.body().support_vars();
            for g in &gens {
                vars.extend(g.support_vars());
            }
            for s in &sat {
                vars.extend(s.support_vars());
            }
            let mut precedence: Vec<VarId> = vars.into_iter().collect();
            precedence.sort_by(|&a, &b| ring.var_cmp(ranking, b, a));
            let member =
                groebner::saturation_membership(ring, delta.body(), &gens, &sat, &precedence, limit)?;
            if !member {
                witnesses.push((i, j, delta));
            }
        }
    }
    Ok(CoherenceReport { coherent: witnesses.is_empty(), witnesses })
}

/// The finite part of A_v relevant to a membership test: the elements plus
/// every prolongation θA_k with rank(θu_k) strictly below v, up to the order
/// bound set by v and the Δ-polynomial.
fn prolongations_below(set: &TriangularSet, v: &Derivative, delta: &DiffPoly) -> Vec<Poly> {
    let ranking = set.ranking();
    let mut bound = v.order();
    for (_, d) in delta.derivatives() {
        bound = bound.max(d.order());
    }
    let n = set.ring().num_derivations();
    let mut out: Vec<Poly> = Vec::new();
    for k in 0..set.len() {
        let leader = &set.anatomy(k).leader;
        let budget = bound.saturating_sub(leader.order());
        for theta in multi_indices_up_to(n, budget) {
            let prolonged_leader = Derivative {
                theta: leader.theta.iter().zip(&theta).map(|(a, b)| a + b).collect(),
                indet: leader.indet,
            };
            if ranking.compare(&prolonged_leader, v) == Ordering::Less {
                out.push(set.element(k).apply_theta(&theta).into_body());
            }
        }
    }
    out
}

/// All multi-indices over `n` slots with total order at most `bound`.
fn multi_indices_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    let mut frontier = out.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for theta in &frontier {
            for j in 0..n {
                let mut t = theta.clone();
                t[j] += 1;
                if !next.contains(&t) && !out.contains(&t) {
                    next.push(t.clone());
                    out.push(t);
                }
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::diff::RingSpec;

    fn diff_example() -> (DiffRing, Ranking, TriangularSet) {
        let ring = DiffRing::ordinary(&["y"]).unwrap();
        let ranking = Ranking::orderly(&ring);
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = y.differentiate(0);
        let f = &(&y1 * &y1) + &y;
        let ts = TriangularSet::new(&ring, &ranking, vec![f]).unwrap();
        (ring, ranking, ts)
    }

    #[test]
    fn reducedness_classification() {
        let (ring, _ranking, ts) = diff_example();
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = y.differentiate(0);
        let y2 = y1.differentiate(0);
        assert_eq!(is_reduced(&y, &ts), Reducedness::Fully);
        assert_eq!(is_reduced(&(&(&y1 * &y1) * &y1), &ts), Reducedness::Partially);
        assert_eq!(is_reduced(&y2, &ts), Reducedness::No);
    }

    #[test]
    fn partial_remainder_of_second_derivative() {
        // f = y'' modulo {y'^2 + y}: remainder −y', multiplier 2y'
        let (ring, _rk, ts) = diff_example();
        let y1 = DiffPoly::indeterminate(&ring, 0).differentiate(0);
        let y2 = y1.differentiate(0);
        let cert = partial_remainder(&y2, &ts);
        assert_eq!(cert.remainder, -&y1);
        assert_eq!(cert.multiplier(), y1.scale(&rat(2)));
        assert!(cert.verify(&ts));
        assert_eq!(is_reduced(&cert.remainder, &ts), Reducedness::Fully);
    }

    #[test]
    fn partial_remainder_fixpoint_on_reduced_input() {
        let (ring, _rk, ts) = diff_example();
        let y = DiffPoly::indeterminate(&ring, 0);
        let cert = partial_remainder(&y, &ts);
        assert_eq!(cert.remainder, y);
        assert!(cert.multiplier().body().is_one());
        assert!(cert.steps.is_empty());
    }

    #[test]
    fn partial_remainder_of_derivative_of_element() {
        let (_ring, _rk, ts) = diff_example();
        let df = ts.element(0).differentiate(0);
        let cert = partial_remainder(&df, &ts);
        assert!(cert.remainder.is_zero());
        assert!(cert.verify(&ts));
    }

    #[test]
    fn full_remainder_repeated_pseudo_division() {
        // x^4 modulo {x^2 − t} leaves t^2 with multiplier 1
        let ring = DiffRing::ordinary(&["x", "t"]).unwrap();
        let ranking = Ranking::elimination(&ring, vec![vec![0], vec![1]]).unwrap();
        let x = DiffPoly::indeterminate(&ring, 0);
        let t = DiffPoly::indeterminate(&ring, 1);
        let ts = TriangularSet::new(&ring, &ranking, vec![&(&x * &x) - &t]).unwrap();
        let cert = full_remainder(&x.pow(4), &ts);
        assert_eq!(cert.remainder, &t * &t);
        assert!(cert.multiplier().body().is_one());
        assert!(cert.verify(&ts));
    }

    #[test]
    fn full_remainder_keeps_reduced_input() {
        let (ring, _rk, ts) = diff_example();
        let y = DiffPoly::indeterminate(&ring, 0);
        let cert = full_remainder(&y, &ts);
        assert_eq!(cert.remainder, y);
    }

    #[test]
    fn compare_sets_rules() {
        let ring = DiffRing::ordinary(&["y"]).unwrap();
        let ranking = Ranking::orderly(&ring);
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = y.differentiate(0);
        let a = TriangularSet::new(&ring, &ranking, vec![y.clone()]).unwrap();
        let b = TriangularSet::new(&ring, &ranking, vec![y1]).unwrap();
        assert_eq!(compare_sets(&a, &b), Ordering::Less);
        assert_eq!(compare_sets(&b, &a), Ordering::Greater);
        assert_eq!(compare_sets(&a, &a), Ordering::Equal);
        // longer set with equal prefix ranks lower
        let ring2 = DiffRing::ordinary(&["y", "x"]).unwrap();
        let rk2 = Ranking::elimination(&ring2, vec![vec![0], vec![1]]).unwrap();
        let y2 = DiffPoly::indeterminate(&ring2, 0);
        let x2 = DiffPoly::indeterminate(&ring2, 1);
        let ab = TriangularSet::new(&ring2, &rk2, vec![y2.clone(), x2]).unwrap();
        let just_y = TriangularSet::new(&ring2, &rk2, vec![y2]).unwrap();
        assert_eq!(compare_sets(&ab, &just_y), Ordering::Less);
    }

    #[test]
    fn autoreduce_drops_derivative() {
        // {y, y'} reduces to {y}
        let ring = DiffRing::ordinary(&["y"]).unwrap();
        let ranking = Ranking::orderly(&ring);
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = y.differentiate(0);
        let ts = autoreduce(&ring, &ranking, &[y.clone(), y1]).unwrap();
        assert_eq!(ts.elements(), &[y]);
    }

    #[test]
    fn autoreduce_keeps_autoreduced_input() {
        let ring = DiffRing::ordinary(&["x", "t"]).unwrap();
        let ranking = Ranking::elimination(&ring, vec![vec![0], vec![1]]).unwrap();
        let x = DiffPoly::indeterminate(&ring, 0);
        let t = DiffPoly::indeterminate(&ring, 1);
        let f = &(&x * &x) - &t;
        let ts = autoreduce(&ring, &ranking, &[f.clone()]).unwrap();
        assert_eq!(ts.elements(), &[f]);
    }

    #[test]
    fn autoreduce_algebraic_pair() {
        // {x^2 − t, x^3}: the ideal contains t·x and t^2; the procedure ends
        // on an autoreduced pair whose second element has degree 1 < 2 in x
        let ring = DiffRing::ordinary(&["x", "t"]).unwrap();
        let ranking = Ranking::elimination(&ring, vec![vec![0], vec![1]]).unwrap();
        let x = DiffPoly::indeterminate(&ring, 0);
        let t = DiffPoly::indeterminate(&ring, 1);
        let f = &(&x * &x) - &t;
        let ts = autoreduce(&ring, &ranking, &[f.clone(), x.pow(3)]).unwrap();
        assert_eq!(ts.len(), 2);
        assert!(ts.is_autoreduced());
        assert_eq!(ts.anatomy(1).leader, Derivative::base(0, 1));
        assert!(ts.element(1).body().degree_in(ts.anatomy(1).leader_var) < 2);
        // every input reduces to zero against the output
        assert!(full_remainder(&f, &ts).remainder.is_zero());
        assert!(full_remainder(&x.pow(3), &ts).remainder.is_zero());
    }

    #[test]
    fn autoreduce_signals_trivial_ideal() {
        let ring = DiffRing::ordinary(&["y"]).unwrap();
        let ranking = Ranking::orderly(&ring);
        let y = DiffPoly::indeterminate(&ring, 0);
        let one = DiffPoly::one(&ring);
        assert!(matches!(
            autoreduce(&ring, &ranking, &[y, one]),
            Err(Error::TrivialIdeal)
        ));
    }

    #[test]
    fn coherence_ordinary_and_single() {
        let (_ring, _rk, ts) = diff_example();
        let report = is_coherent(&ts, None).unwrap();
        assert!(report.coherent);
    }

    #[test]
    fn coherence_failure_in_partial_case() {
        // A = {d1(y) − z, d2(y)} over two derivations: the cross derivative
        // forces d2(z) into the ideal, which the membership test rejects
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
        assert!(ts.is_autoreduced());
        let report = is_coherent(&ts, None).unwrap();
        assert!(!report.coherent);
        assert_eq!(report.witnesses.len(), 1);
        // the witness is ±d2(z)
        let w = &report.witnesses[0].2;
        let d2z = z.differentiate(1);
        assert!(w == &d2z || w == &(-&d2z));
    }

    #[test]
    fn coherent_pair_in_partial_case() {
        // A = {d1(y), d2(y)}: Δ vanishes identically
        let ring = DiffRing::new(RingSpec {
            derivations: vec!["d1".into(), "d2".into()],
            indeterminates: vec!["y".into()],
        })
        .unwrap();
        let ranking = Ranking::orderly(&ring);
        let y = DiffPoly::indeterminate(&ring, 0);
        let ts =
            TriangularSet::new(&ring, &ranking, vec![y.differentiate(0), y.differentiate(1)])
                .unwrap();
        let report = is_coherent(&ts, None).unwrap();
        assert!(report.coherent);
    }
}
