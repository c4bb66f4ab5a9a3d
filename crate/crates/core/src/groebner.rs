//! Buchberger's algorithm and reduced Gröbner bases.
//!
//! The engine is generic over the coefficient field so the same loop serves
//! two settings: plain rationals (invertibility traces, saturation
//! membership) and fractions of polynomials in the non-leading derivatives
//! (the k(N)[L] computations of the canonicalization algorithms).
//!
//! Orders are lexicographic with an explicit variable precedence; an
//! elimination order is a lex order whose discarded variables all precede the
//! kept ones.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::arith::{gcd, lcm, rat, IdOrder, Monomial, MonomialOrder, Poly, PrecedenceOrder, Rat, VarId};
use crate::diff::DiffRing;
use crate::error::Error;

/// Coefficient field abstraction for the Buchberger engine.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coeff for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        rat(1) / self.clone()
    }
}

/// A normalized fraction of polynomials: numerator and denominator coprime,
/// denominator monic under the id order, zero stored as 0/1.
#[derive(Debug, Clone, PartialEq)]
pub struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    pub fn new(num: Poly, den: Poly) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Frac { num: Poly::zero(), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let lc = den
            .leading_term(&IdOrder)
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        let inv = rat(1) / lc;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Frac { num, den }
    }

    pub fn from_poly(p: Poly) -> Frac {
        Frac { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

impl Coeff for Frac {
    fn zero() -> Self {
        Frac { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        Frac { num: Poly::one(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        Frac::new(num, den)
    }
    fn neg(&self) -> Self {
        Frac { num: -&self.num, den: self.den.clone() }
    }
    fn mul(&self, other: &Self) -> Self {
        Frac::new(&self.num * &other.num, &self.den * &other.den)
    }
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero");
        Frac::new(self.den.clone(), self.num.clone())
    }
}

/// Engine polynomial: terms kept sorted strictly descending under the order
/// the computation runs in.
#[derive(Debug, Clone, PartialEq)]
pub struct GbPoly<C: Coeff> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> GbPoly<C> {
    pub fn zero() -> Self {
        GbPoly { terms: vec![] }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>, ord: &dyn MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, C)> = Vec::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            terms.push((m, c));
        }
        terms.sort_by(|a, b| ord.cmp_monomials(&b.0, &a.0));
        // combine equal monomials
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push((m, c));
        }
        GbPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> &Monomial {
        &self.terms.first().expect("nonzero polynomial").0
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn support_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for (m, _) in &self.terms {
            for (v, _) in m.iter() {
                out.insert(v);
            }
        }
        out
    }

    pub fn add(&self, other: &Self, ord: &dyn MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp_monomials(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        GbPoly { terms: out }
    }

    pub fn sub(&self, other: &Self, ord: &dyn MonomialOrder) -> Self {
        self.add(&other.neg(), ord)
    }

    pub fn neg(&self) -> Self {
        GbPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return GbPoly::zero();
        }
        GbPoly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self, ord: &dyn MonomialOrder) -> Self {
        let mut acc = GbPoly::zero();
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c), ord);
        }
        acc
    }

    /// Rescale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => GbPoly::zero(),
            Some((_, c)) => {
                let inv = c.inv();
                GbPoly {
                    terms: self
                        .terms
                        .iter()
                        .map(|(m, tc)| (m.clone(), tc.mul(&inv)))
                        .collect(),
                }
            }
        }
    }
}

/// Full normal form of `f` modulo `basis`: every term is irreducible in the
/// result.
pub fn normal_form<C: Coeff>(
    f: &GbPoly<C>,
    basis: &[GbPoly<C>],
    ord: &dyn MonomialOrder,
) -> GbPoly<C> {
    let mut rem: Vec<(Monomial, C)> = Vec::new();
    let mut p = f.clone();
    'outer: while let Some((m, c)) = p.lead().cloned() {
        for g in basis {
            if g.is_zero() {
                continue;
            }
            if let Some(q) = m.div(g.lead_monomial()) {
                let factor = c.mul(&g.lead().unwrap().1.inv());
                p = p.sub(&g.mul_term(&q, &factor), ord);
                continue 'outer;
            }
        }
        rem.push((m, c));
        p.terms.remove(0);
    }
    GbPoly { terms: rem }
}

/// S-polynomial of two nonzero polynomials.
pub fn spoly<C: Coeff>(a: &GbPoly<C>, b: &GbPoly<C>, ord: &dyn MonomialOrder) -> GbPoly<C> {
    let (ma, ca) = a.lead().expect("nonzero");
    let (mb, cb) = b.lead().expect("nonzero");
    let l = ma.lcm(mb);
    let fa = l.div(ma).unwrap();
    let fb = l.div(mb).unwrap();
    a.mul_term(&fa, &ca.inv()).sub(&b.mul_term(&fb, &cb.inv()), ord)
}

/// Buchberger's algorithm with the normal pair-selection strategy (minimal
/// lcm first) and the coprimality and chain criteria. Returns the reduced
/// Gröbner basis, sorted ascending by leading monomial.
pub fn buchberger<C: Coeff>(
    gens: Vec<GbPoly<C>>,
    ord: &dyn MonomialOrder,
    limit: Option<u64>,
) -> Result<Vec<GbPoly<C>>, Error> {
    let mut basis: Vec<GbPoly<C>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g = g.monic();
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    if basis.is_empty() {
        return Ok(vec![]);
    }
    if basis.iter().any(|g| g.is_constant()) {
        return Ok(vec![GbPoly::from_terms([(Monomial::one(), C::one())], ord)]);
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert((i, j));
        }
    }
    let mut steps: u64 = 0;
    while !pending.is_empty() {
        steps += 1;
        if let Some(max) = limit {
            if steps > max {
                return Err(Error::StepLimit(max));
            }
        }
        // normal strategy: minimal lcm, ties by index pair
        let &(i, j) = pending
            .iter()
            .min_by(|&&(i1, j1), &&(i2, j2)| {
                let l1 = basis[i1].lead_monomial().lcm(basis[j1].lead_monomial());
                let l2 = basis[i2].lead_monomial().lcm(basis[j2].lead_monomial());
                ord.cmp_monomials(&l1, &l2).then((i1, j1).cmp(&(i2, j2)))
            })
            .unwrap();
        pending.remove(&(i, j));

        let (mi, mj) = (basis[i].lead_monomial(), basis[j].lead_monomial());
        if mi.coprime(mj) {
            continue; // Buchberger's first criterion
        }
        let l = mi.lcm(mj);
        // chain criterion: some k with lm_k | lcm and both companion pairs
        // already handled
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead_monomial().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], ord);
        let nf = normal_form(&s, &basis, ord);
        if nf.is_zero() {
            continue;
        }
        if nf.is_constant() {
            return Ok(vec![GbPoly::from_terms([(Monomial::one(), C::one())], ord)]);
        }
        let t = basis.len();
        basis.push(nf.monic());
        for k in 0..t {
            pending.insert((k, t));
        }
    }
    Ok(reduce_basis(basis, ord))
}

/// Inter-reduce a Gröbner basis into the reduced Gröbner basis: minimal,
/// monic, every element fully reduced modulo the others, sorted ascending by
/// leading monomial. Idempotent.
pub fn reduce_basis<C: Coeff>(basis: Vec<GbPoly<C>>, ord: &dyn MonomialOrder) -> Vec<GbPoly<C>> {
    let mut work: Vec<GbPoly<C>> = basis.into_iter().filter(|g| !g.is_zero()).collect();
    work.sort_by(|a, b| ord.cmp_monomials(a.lead_monomial(), b.lead_monomial()));
    // minimalize: drop any element whose lead is divisible by a kept lead
    let mut minimal: Vec<GbPoly<C>> = Vec::new();
    for g in work {
        if minimal
            .iter()
            .all(|h| !h.lead_monomial().divides(g.lead_monomial()))
        {
            minimal.push(g.monic());
        }
    }
    // tail-reduce to a fixpoint
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<GbPoly<C>> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let nf = normal_form(&minimal[i], &others, ord).monic();
            if nf != minimal[i] {
                minimal[i] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.retain(|g| !g.is_zero());
    minimal.sort_by(|a, b| ord.cmp_monomials(a.lead_monomial(), b.lead_monomial()));
    minimal
}

/// Check that every S-polynomial of the basis reduces to zero — the post-hoc
/// Gröbner audit used by the test suites.
pub fn spoly_audit<C: Coeff>(basis: &[GbPoly<C>], ord: &dyn MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = spoly(&basis[i], &basis[j], ord);
            if !normal_form(&s, basis, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Intersect a Gröbner basis with the subring generated by `keep`. The order
/// must rank every discarded variable above every kept one; otherwise the
/// filtered set is no elimination basis and an error is returned.
pub fn eliminate<C: Coeff>(
    basis: &[GbPoly<C>],
    ord: &dyn MonomialOrder,
    keep: &BTreeSet<VarId>,
) -> Result<Vec<GbPoly<C>>, Error> {
    let mut discarded: BTreeSet<VarId> = BTreeSet::new();
    for g in basis {
        for v in g.support_vars() {
            if !keep.contains(&v) {
                discarded.insert(v);
            }
        }
    }
    for &d in &discarded {
        for &k in keep {
            if ord.cmp_vars(d, k) != std::cmp::Ordering::Greater {
                return Err(Error::NotEliminating);
            }
        }
    }
    Ok(basis
        .iter()
        .filter(|g| g.support_vars().iter().all(|v| keep.contains(v)))
        .cloned()
        .collect())
}

/// Convert a plain polynomial into an engine polynomial over ℚ.
pub fn gb_of_poly(p: &Poly, ord: &dyn MonomialOrder) -> GbPoly<Rat> {
    GbPoly::from_terms(p.terms().map(|(m, c)| (m.clone(), c.clone())), ord)
}

/// Convert back to a plain polynomial.
pub fn poly_of_gb(g: &GbPoly<Rat>) -> Poly {
    Poly::from_terms(g.terms().iter().map(|(m, c)| (m.clone(), c.clone())))
}

/// Split a polynomial into an engine polynomial in the `is_main` variables
/// with fraction coefficients over the rest.
pub fn gb_frac_of_poly(
    p: &Poly,
    is_main: &dyn Fn(VarId) -> bool,
    ord: &dyn MonomialOrder,
) -> GbPoly<Frac> {
    let mut grouped: std::collections::BTreeMap<Monomial, Poly> = std::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        let (main, rest) = m.split(is_main);
        let entry = grouped.entry(main).or_insert_with(Poly::zero);
        *entry = &*entry + &Poly::term(rest, c.clone());
    }
    GbPoly::from_terms(
        grouped.into_iter().map(|(m, p)| (m, Frac::from_poly(p))),
        ord,
    )
}

/// Clear denominators of a fraction-coefficient polynomial: multiply through
/// by the least common multiple of the denominators. Returns the resulting
/// plain polynomial together with the lcm used.
pub fn clear_frac(g: &GbPoly<Frac>) -> (Poly, Poly) {
    let mut q = Poly::one();
    for (_, c) in g.terms() {
        q = lcm(&q, c.den());
    }
    let mut out = Poly::zero();
    for (m, c) in g.terms() {
        let scale = q.exact_div(c.den()).expect("lcm is divisible by each denominator");
        out = &out + &(&Poly::term(m.clone(), rat(1)) * &(c.num() * &scale));
    }
    (out, q)
}

/// Decide `f ∈ (gens):sat^∞` in the plain polynomial setting by adjoining an
/// inverse variable for the product of `sat` and testing the normal form.
pub fn saturation_membership(
    ring: &DiffRing,
    f: &Poly,
    gens: &[Poly],
    sat: &[Poly],
    precedence: &[VarId],
    limit: Option<u64>,
) -> Result<bool, Error> {
    let mut h = Poly::one();
    for s in sat {
        h = &h * s;
    }
    if h.is_zero() {
        // 0 lies in the multiplicative set, so the saturation is the whole ring
        return Ok(true);
    }
    let tau = ring.fresh_aux("tau");
    let mut prec = vec![tau];
    prec.extend_from_slice(precedence);
    let ord = PrecedenceOrder::new(&prec);
    let mut engine_gens: Vec<GbPoly<Rat>> = gens.iter().map(|g| gb_of_poly(g, &ord)).collect();
    let relation = &(&Poly::var(tau) * &h) - &Poly::one();
    engine_gens.push(gb_of_poly(&relation, &ord));
    let basis = buchberger(engine_gens, &ord, limit)?;
    Ok(normal_form(&gb_of_poly(f, &ord), &basis, &ord).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn v(i: u32) -> VarId {
        VarId(i)
    }

    #[test]
    fn single_polynomial_is_its_own_basis() {
        let ord = PrecedenceOrder::new(&[v(1), v(0)]);
        let x = Poly::var(v(1));
        let t = Poly::var(v(0));
        let f = &x.pow(2) - &t;
        let gb = buchberger(vec![gb_of_poly(&f, &ord)], &ord, None).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(poly_of_gb(&gb[0]), f);
    }

    #[test]
    fn unit_ideal() {
        let ord = PrecedenceOrder::new(&[v(0)]);
        let x = Poly::var(v(0));
        let gb = buchberger(
            vec![gb_of_poly(&x, &ord), gb_of_poly(&(&x + &Poly::one()), &ord)],
            &ord,
            None,
        )
        .unwrap();
        assert_eq!(gb.len(), 1);
        assert!(gb[0].is_constant());
    }

    #[test]
    fn reduce_basis_removes_duplicates() {
        let ord = PrecedenceOrder::new(&[v(1), v(0)]);
        let x = Poly::var(v(1));
        let t = Poly::var(v(0));
        let f = &x.pow(2) - &t;
        let g = f.scale(&rat(2));
        let red = reduce_basis(vec![gb_of_poly(&f, &ord), gb_of_poly(&g, &ord)], &ord);
        assert_eq!(red.len(), 1);
        assert_eq!(poly_of_gb(&red[0]), f);
    }

    #[test]
    fn elimination_of_shared_variable() {
        // GB of (x − z, y − z) keeping {x, y} is (x − y)
        let ord = PrecedenceOrder::new(&[v(2), v(1), v(0)]); // z > x > y
        let (z, x, y) = (Poly::var(v(2)), Poly::var(v(1)), Poly::var(v(0)));
        let gb = buchberger(
            vec![gb_of_poly(&(&x - &z), &ord), gb_of_poly(&(&y - &z), &ord)],
            &ord,
            None,
        )
        .unwrap();
        let keep: BTreeSet<VarId> = [v(1), v(0)].into_iter().collect();
        let eliminated = eliminate(&gb, &ord, &keep).unwrap();
        assert_eq!(eliminated.len(), 1);
        assert_eq!(poly_of_gb(&eliminated[0]), &x - &y);
        assert!(spoly_audit(&gb, &ord));
    }

    #[test]
    fn eliminate_rejects_bad_order() {
        let ord = PrecedenceOrder::new(&[v(0), v(1)]);
        let f = &Poly::var(v(0)) - &Poly::var(v(1));
        let gb = buchberger(vec![gb_of_poly(&f, &ord)], &ord, None).unwrap();
        let keep: BTreeSet<VarId> = [v(0)].into_iter().collect();
        assert!(matches!(eliminate(&gb, &ord, &keep), Err(Error::NotEliminating)));
    }

    #[test]
    fn frac_coefficients_normalize() {
        let z = Poly::var(v(2));
        let t = Poly::var(v(0));
        let a = Frac::new(&z * &t, z.clone());
        assert_eq!(a.num(), &t);
        assert!(a.den().is_one());
        let b = Frac::new(t.clone(), z.scale(&rat(3)));
        // denominator is made monic under the id order
        assert_eq!(b.den(), &z);
        let prod = b.mul(&b.inv());
        assert_eq!(prod, Frac::one());
    }

    #[test]
    fn zero_ideal_is_empty_basis() {
        let ord = PrecedenceOrder::new(&[v(0)]);
        let gb = buchberger(vec![GbPoly::<Rat>::zero()], &ord, None).unwrap();
        assert!(gb.is_empty());
    }
}
