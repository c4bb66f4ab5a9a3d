//! Power products over integer variable ids, and the order abstraction that
//! turns a variable precedence into a lexicographic monomial comparison.

use std::cmp::Ordering;
use std::collections::HashMap;

/// Identifier of a variable in the shared registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

/// A power product: exponent map over variable ids. No zero exponents are
/// stored; the empty product is the monomial `1`.
///
/// The derived `Ord` is a structural order used only as a map key; all
/// mathematically meaningful comparisons go through a [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    // sorted by VarId ascending, exponents > 0
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { factors: vec![(v, e)] }
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut factors: Vec<(VarId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        factors.sort_by_key(|&(v, _)| v);
        factors.dedup_by(|later, earlier| {
            if later.0 == earlier.0 {
                earlier.1 += later.1;
                true
            } else {
                false
            }
        });
        Monomial { factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.factors.iter().copied()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.exponent(v) > 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (va, ea) = self.factors[i];
            let (vb, eb) = other.factors[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// Componentwise division; `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            while j < other.factors.len() && other.factors[j].0 < v {
                return None; // divisor has a variable we lack
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                let eo = other.factors[j].1;
                if eo > e {
                    return None;
                }
                if e > eo {
                    out.push((v, e - eo));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (va, ea) = self.factors[i];
            let (vb, eb) = other.factors[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea.max(eb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.factors.iter().all(|&(v, _)| !other.contains(v))
    }

    /// Remove the given variable from the product entirely.
    pub fn without(&self, v: VarId) -> Monomial {
        Monomial {
            factors: self.factors.iter().copied().filter(|&(w, _)| w != v).collect(),
        }
    }

    /// Split into the part supported on `vars` and the complementary part.
    pub fn split(&self, vars: &dyn Fn(VarId) -> bool) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) =
            self.factors.iter().copied().partition(|&(v, _)| vars(v));
        (Monomial { factors: inside }, Monomial { factors: outside })
    }
}

/// A total precedence on variables inducing the lexicographic order on power
/// products: the highest-precedence variable with differing exponents decides.
pub trait MonomialOrder {
    /// `Greater` means `a` has higher precedence than `b`.
    fn cmp_vars(&self, a: VarId, b: VarId) -> Ordering;

    fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        // Walk both factor lists from the highest-precedence variable down.
        let mut va: Vec<(VarId, u32)> = a.iter().collect();
        let mut vb: Vec<(VarId, u32)> = b.iter().collect();
        va.sort_by(|x, y| self.cmp_vars(y.0, x.0));
        vb.sort_by(|x, y| self.cmp_vars(y.0, x.0));
        let (mut i, mut j) = (0, 0);
        while i < va.len() || j < vb.len() {
            match (va.get(i), vb.get(j)) {
                (Some(&(x, ea)), Some(&(y, eb))) => match self.cmp_vars(x, y) {
                    Ordering::Greater => return Ordering::Greater, // a has the higher variable
                    Ordering::Less => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => unreachable!(),
            }
        }
        Ordering::Equal
    }
}

/// Fallback precedence: higher variable id ranks higher. Used for internal
/// normalizations where no ranking is in scope.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdOrder;

impl MonomialOrder for IdOrder {
    fn cmp_vars(&self, a: VarId, b: VarId) -> Ordering {
        a.cmp(&b)
    }
}

/// Explicit precedence list, first entry highest. Variables not listed rank
/// below all listed ones, ordered among themselves by id.
#[derive(Debug, Clone)]
pub struct PrecedenceOrder {
    pos: HashMap<VarId, usize>,
}

impl PrecedenceOrder {
    pub fn new(highest_first: &[VarId]) -> Self {
        let pos = highest_first.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        PrecedenceOrder { pos }
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.pos.contains_key(&v)
    }
}

impl MonomialOrder for PrecedenceOrder {
    fn cmp_vars(&self, a: VarId, b: VarId) -> Ordering {
        match (self.pos.get(&a), self.pos.get(&b)) {
            (Some(&pa), Some(&pb)) => pb.cmp(&pa), // smaller position = higher precedence
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => a.cmp(&b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VarId {
        VarId(i)
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = Monomial::from_pairs([(v(0), 2), (v(3), 1)]);
        let b = Monomial::from_pairs([(v(0), 1), (v(2), 4)]);
        let p = a.mul(&b);
        assert_eq!(p.div(&b).unwrap(), a);
        assert_eq!(p.div(&a).unwrap(), b);
        assert_eq!(p.exponent(v(0)), 3);
        assert!(b.div(&a).is_none());
    }

    #[test]
    fn lcm_and_coprime() {
        let a = Monomial::from_pairs([(v(1), 2)]);
        let b = Monomial::from_pairs([(v(2), 3)]);
        assert!(a.coprime(&b));
        assert_eq!(a.lcm(&b), a.mul(&b));
        let c = Monomial::from_pairs([(v(1), 1), (v(2), 5)]);
        assert_eq!(b.lcm(&c), Monomial::from_pairs([(v(1), 1), (v(2), 5)]));
    }

    #[test]
    fn precedence_lex() {
        // precedence x > y means x^1 beats y^k
        let (x, y) = (v(7), v(3));
        let ord = PrecedenceOrder::new(&[x, y]);
        let xy = Monomial::from_pairs([(x, 1), (y, 1)]);
        let y5 = Monomial::var_pow(y, 5);
        assert_eq!(ord.cmp_monomials(&xy, &y5), Ordering::Greater);
        assert_eq!(ord.cmp_monomials(&y5, &y5), Ordering::Equal);
        let x2 = Monomial::var_pow(x, 2);
        assert_eq!(ord.cmp_monomials(&x2, &xy), Ordering::Greater);
    }
}
