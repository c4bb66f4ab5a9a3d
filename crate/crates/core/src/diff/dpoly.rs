//! Differential polynomials and their leader/initial/separant anatomy.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num::One;

use super::{Derivative, DiffRing, Ranking};
use crate::arith::{Monomial, MonomialOrder, Poly, Rat, VarId};
use crate::error::Error;

/// A differential polynomial: a sparse polynomial whose variables are all
/// registered derivatives of one ring.
#[derive(Debug, Clone)]
pub struct DiffPoly {
    ring: DiffRing,
    body: Poly,
}

impl PartialEq for DiffPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.body == other.body
    }
}

impl Eq for DiffPoly {}

impl DiffPoly {
    pub fn new(ring: &DiffRing, body: Poly) -> DiffPoly {
        debug_assert!(
            body.support_vars().iter().all(|&v| ring.derivative_of(v).is_some()),
            "differential polynomial contains an unregistered or auxiliary variable"
        );
        DiffPoly { ring: ring.clone(), body }
    }

    pub fn zero(ring: &DiffRing) -> DiffPoly {
        DiffPoly { ring: ring.clone(), body: Poly::zero() }
    }

    pub fn one(ring: &DiffRing) -> DiffPoly {
        DiffPoly { ring: ring.clone(), body: Poly::one() }
    }

    pub fn constant(ring: &DiffRing, c: Rat) -> DiffPoly {
        DiffPoly { ring: ring.clone(), body: Poly::constant(c) }
    }

    /// The derivative θy_i as a polynomial.
    pub fn from_derivative(ring: &DiffRing, d: &Derivative) -> DiffPoly {
        let v = ring.var_of(d);
        DiffPoly { ring: ring.clone(), body: Poly::var(v) }
    }

    /// The indeterminate y_i as a polynomial.
    pub fn indeterminate(ring: &DiffRing, indet: usize) -> DiffPoly {
        DiffPoly::from_derivative(ring, &Derivative::base(indet, ring.num_derivations()))
    }

    pub fn ring(&self) -> &DiffRing {
        &self.ring
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn into_body(self) -> Poly {
        self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.body.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.body.as_constant()
    }

    pub fn scale(&self, c: &Rat) -> DiffPoly {
        DiffPoly { ring: self.ring.clone(), body: self.body.scale(c) }
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        DiffPoly { ring: self.ring.clone(), body: self.body.pow(e) }
    }

    /// Rescale to coprime integer coefficients with a positive leading
    /// coefficient; the represented ideal data is unchanged.
    pub fn primitive_normalized(&self) -> DiffPoly {
        DiffPoly { ring: self.ring.clone(), body: self.body.primitive_normalized() }
    }

    fn assert_same_ring(&self, other: &DiffPoly) {
        assert!(self.ring.same_ring(&other.ring), "operands belong to different rings");
    }

    /// All derivatives occurring effectively, with their variable ids.
    pub fn derivatives(&self) -> Vec<(VarId, Derivative)> {
        self.body
            .support_vars()
            .into_iter()
            .map(|v| {
                let d = self
                    .ring
                    .derivative_of(v)
                    .expect("diff poly contains only derivatives");
                (v, d)
            })
            .collect()
    }

    /// Maximal order of derivatives appearing effectively; `None` when no
    /// derivative variable occurs (constants and zero).
    pub fn order(&self) -> Option<u32> {
        self.derivatives().iter().map(|(_, d)| d.order()).max()
    }

    /// Maximal order of derivatives of the given indeterminate; `None` when
    /// the indeterminate is absent.
    pub fn order_in(&self, indet: usize) -> Option<u32> {
        self.derivatives()
            .iter()
            .filter(|(_, d)| d.indet == indet)
            .map(|(_, d)| d.order())
            .max()
    }

    /// Apply one derivation.
    pub fn differentiate(&self, delta: usize) -> DiffPoly {
        let mut out = Poly::zero();
        for (m, c) in self.body.terms() {
            // Leibniz over the factors of the power product
            for (v, e) in m.iter() {
                let d = self
                    .ring
                    .derivative_of(v)
                    .expect("diff poly contains only derivatives");
                let dv = self.ring.var_of(&d.derive(delta));
                let mut factor = m.without(v);
                if e > 1 {
                    factor = factor.mul(&Monomial::var_pow(v, e - 1));
                }
                factor = factor.mul(&Monomial::var(dv));
                let coeff = c * Rat::from_integer(e.into());
                out = &out + &Poly::term(factor, coeff);
            }
        }
        DiffPoly { ring: self.ring.clone(), body: out }
    }

    /// Apply a derivation multi-index.
    pub fn apply_theta(&self, theta: &[u32]) -> DiffPoly {
        let mut out = self.clone();
        for (j, &k) in theta.iter().enumerate() {
            for _ in 0..k {
                out = out.differentiate(j);
            }
        }
        out
    }

    /// Partial derivative with respect to a derivative variable.
    pub fn partial_derivative(&self, d: &Derivative) -> DiffPoly {
        let v = self.ring.var_of(d);
        DiffPoly { ring: self.ring.clone(), body: self.body.partial_derivative(v) }
    }

    /// Leader, initial, separant and rank under a ranking. Errors on
    /// constants, which have no leader.
    pub fn anatomy(&self, ranking: &Ranking) -> Result<Anatomy, Error> {
        let derivs = self.derivatives();
        let top = derivs
            .into_iter()
            .max_by(|(_, a), (_, b)| ranking.compare(a, b))
            .ok_or(Error::NoLeader)?;
        let (leader_var, leader) = top;
        let degree = self.body.degree_in(leader_var);
        let initial = DiffPoly {
            ring: self.ring.clone(),
            body: self.body.coeff_of_power(leader_var, degree),
        };
        let separant = DiffPoly {
            ring: self.ring.clone(),
            body: self.body.partial_derivative(leader_var),
        };
        Ok(Anatomy { leader, leader_var, degree, initial, separant })
    }

    /// The leader alone.
    pub fn leader(&self, ranking: &Ranking) -> Result<Derivative, Error> {
        Ok(self.anatomy(ranking)?.leader)
    }

    /// Degree in a derivative variable (0 when absent).
    pub fn degree_in(&self, d: &Derivative) -> u32 {
        self.body.degree_in(self.ring.var_of(d))
    }

    /// Whether any proper derivative of `base` occurs.
    pub fn contains_proper_derivative_of(&self, base: &Derivative) -> bool {
        self.derivatives()
            .iter()
            .any(|(_, d)| d.proper_derivative_of(base))
    }

    /// Coefficient-blind lexicographic comparison of the monomial sequences
    /// under the ranking-induced order; the partial order on differential
    /// polynomials the tie-breaks use.
    pub fn lex_cmp(&self, other: &DiffPoly, ranking: &Ranking) -> Ordering {
        self.assert_same_ring(other);
        let ord = self.ring.ranking_order(ranking);
        let mut ma: Vec<&Monomial> = self.body.terms().map(|(m, _)| m).collect();
        let mut mb: Vec<&Monomial> = other.body.terms().map(|(m, _)| m).collect();
        ma.sort_by(|a, b| ord.cmp_monomials(b, a));
        mb.sort_by(|a, b| ord.cmp_monomials(b, a));
        for (a, b) in ma.iter().zip(&mb) {
            match ord.cmp_monomials(a, b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        ma.len().cmp(&mb.len())
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        self.assert_same_ring(rhs);
        DiffPoly { ring: self.ring.clone(), body: &self.body + &rhs.body }
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        self.assert_same_ring(rhs);
        DiffPoly { ring: self.ring.clone(), body: &self.body - &rhs.body }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        self.assert_same_ring(rhs);
        DiffPoly { ring: self.ring.clone(), body: &self.body * &rhs.body }
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { ring: self.ring.clone(), body: -&self.body }
    }
}

/// Leader, initial, separant and rank of a nonconstant differential
/// polynomial.
#[derive(Debug, Clone)]
pub struct Anatomy {
    pub leader: Derivative,
    pub leader_var: VarId,
    pub degree: u32,
    pub initial: DiffPoly,
    pub separant: DiffPoly,
}

impl Anatomy {
    pub fn rank(&self) -> Rank {
        Rank { leader: self.leader.clone(), degree: self.degree }
    }

    /// The rank as a polynomial u_f^n.
    pub fn rank_poly(&self, ring: &DiffRing) -> DiffPoly {
        DiffPoly::new(
            ring,
            Poly::term(Monomial::var_pow(self.leader_var, self.degree), Rat::one()),
        )
    }
}

/// The rank u^d of a differential polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank {
    pub leader: Derivative,
    pub degree: u32,
}

impl Rank {
    pub fn compare(&self, other: &Rank, ranking: &Ranking) -> Ordering {
        match ranking.compare(&self.leader, &other.leader) {
            Ordering::Equal => self.degree.cmp(&other.degree),
            ord => ord,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::diff::RingSpec;

    fn ordinary_y() -> (DiffRing, DiffPoly, DiffPoly) {
        let ring = DiffRing::ordinary(&["y"]).unwrap();
        let y = DiffPoly::indeterminate(&ring, 0);
        let y1 = DiffPoly::from_derivative(&ring, &Derivative { theta: vec![1], indet: 0 });
        (ring, y, y1)
    }

    #[test]
    fn differentiate_chain_rule() {
        // δ(y'^2 + y) = 2 y' y'' + y'
        let (ring, y, y1) = ordinary_y();
        let f = &(&y1 * &y1) + &y;
        let df = f.differentiate(0);
        let y2 = DiffPoly::from_derivative(&ring, &Derivative { theta: vec![2], indet: 0 });
        let expect = &(&y1 * &y2).scale(&rat(2)) + &y1;
        assert_eq!(df, expect);
        // δ(constant) = 0
        assert!(DiffPoly::constant(&ring, rat(5)).differentiate(0).is_zero());
    }

    #[test]
    fn differentiate_leibniz() {
        // δ(x^2 − t) = 2 x x' − t'
        let ring = DiffRing::ordinary(&["x", "t"]).unwrap();
        let x = DiffPoly::indeterminate(&ring, 0);
        let t = DiffPoly::indeterminate(&ring, 1);
        let f = &(&x * &x) - &t;
        let x1 = DiffPoly::from_derivative(&ring, &Derivative { theta: vec![1], indet: 0 });
        let t1 = DiffPoly::from_derivative(&ring, &Derivative { theta: vec![1], indet: 1 });
        let expect = &(&x * &x1).scale(&rat(2)) - &t1;
        assert_eq!(f.differentiate(0), expect);
    }

    #[test]
    fn anatomy_of_diff_example() {
        // f = y'^2 + y under an orderly ranking: leader y', initial 1,
        // separant 2y', rank (y')^2
        let (ring, y, y1) = ordinary_y();
        let f = &(&y1 * &y1) + &y;
        let r = Ranking::orderly(&ring);
        let a = f.anatomy(&r).unwrap();
        assert_eq!(a.leader, Derivative { theta: vec![1], indet: 0 });
        assert!(a.initial.body().is_one());
        assert_eq!(a.separant, y1.scale(&rat(2)));
        assert_eq!(a.degree, 2);
        assert!(DiffPoly::one(&ring).anatomy(&r).is_err());
    }

    #[test]
    fn order_queries() {
        let (_ring, y, y1) = ordinary_y();
        let f = &(&y1 * &y1) + &y;
        assert_eq!(f.order(), Some(1));
        assert_eq!(f.order_in(0), Some(1));
        let df = f.differentiate(0);
        assert_eq!(df.order_in(0), Some(2));
        assert_eq!(y.order_in(0), Some(0));
    }

    #[test]
    fn order_in_absent_indeterminate() {
        let ring = DiffRing::ordinary(&["x", "t", "y"]).unwrap();
        let x = DiffPoly::indeterminate(&ring, 0);
        let t = DiffPoly::indeterminate(&ring, 1);
        let f = &(&x * &x) - &t;
        assert_eq!(f.order_in(2), None);
        assert_eq!(DiffPoly::zero(&ring).order(), None);
    }

    #[test]
    fn initial_of_proper_derivative_is_separant() {
        // for θ ≠ 1: initial(θ f) = separant(f)
        let ring = DiffRing::new(RingSpec {
            derivations: vec!["d1".into(), "d2".into()],
            indeterminates: vec!["u".into(), "w".into()],
        })
        .unwrap();
        let r = Ranking::orderly(&ring);
        let u = DiffPoly::indeterminate(&ring, 0);
        let w = DiffPoly::indeterminate(&ring, 1);
        let f = &(&(&u * &u) * &u) + &(&w * &u);
        let sep = f.anatomy(&r).unwrap().separant;
        for theta in [[1, 0], [0, 1], [1, 1], [2, 0]] {
            let tf = f.apply_theta(&theta);
            let init = tf.anatomy(&r).unwrap().initial;
            assert_eq!(init, sep, "theta {:?}", theta);
        }
    }
}
