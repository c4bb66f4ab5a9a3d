//! Differential polynomial rings.
//!
//! A [`DiffRing`] owns the registry that maps derivative variables θy_i to
//! stable integer ids used by the polynomial layer. The registry grows
//! monotonically as differentiation creates new derivatives; auxiliary
//! (non-derivative) variables for Gröbner constructions live in the same id
//! space but are flagged separately and never appear in a [`DiffPoly`].

mod dpoly;
mod ranking;

pub use dpoly::{Anatomy, DiffPoly, Rank};
pub use ranking::{Ranking, RankingKind};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::arith::{MonomialOrder, VarId};
use crate::error::Error;

/// Names of the derivations and differential indeterminates of a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub derivations: Vec<String>,
    pub indeterminates: Vec<String>,
}

/// A derivative variable θy_i: a multi-index over the derivations applied to
/// the indeterminate with the given position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Derivative {
    pub theta: Vec<u32>,
    pub indet: usize,
}

impl Derivative {
    pub fn base(indet: usize, num_derivations: usize) -> Self {
        Derivative { theta: vec![0; num_derivations], indet }
    }

    pub fn order(&self) -> u32 {
        self.theta.iter().sum()
    }

    pub fn is_base(&self) -> bool {
        self.order() == 0
    }

    /// Apply the derivation with the given index once.
    pub fn derive(&self, delta: usize) -> Derivative {
        let mut theta = self.theta.clone();
        theta[delta] += 1;
        Derivative { theta, indet: self.indet }
    }

    /// The multi-index θ with `self = θ · base`, if `base` divides `self`.
    pub fn quotient_theta(&self, base: &Derivative) -> Option<Vec<u32>> {
        if self.indet != base.indet {
            return None;
        }
        let mut out = Vec::with_capacity(self.theta.len());
        for (a, b) in self.theta.iter().zip(&base.theta) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(out)
    }

    /// `self` is a proper derivative of `base`.
    pub fn proper_derivative_of(&self, base: &Derivative) -> bool {
        match self.quotient_theta(base) {
            Some(theta) => theta.iter().any(|&k| k > 0),
            None => false,
        }
    }

    /// Least common derivative of two derivatives of the same indeterminate.
    pub fn least_common_derivative(&self, other: &Derivative) -> Option<Derivative> {
        if self.indet != other.indet {
            return None;
        }
        let theta = self
            .theta
            .iter()
            .zip(&other.theta)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Some(Derivative { theta, indet: self.indet })
    }
}

#[derive(Debug, Clone)]
enum VarEntry {
    Deriv(Derivative),
    Aux(String),
}

#[derive(Debug, Default)]
struct Registry {
    by_deriv: HashMap<Derivative, VarId>,
    entries: Vec<VarEntry>,
}

/// Shared handle to a differential polynomial ring. Cloning is cheap; all
/// clones refer to the same registry. The registry supports atomic
/// get-or-insert; everything else is immutable.
#[derive(Debug, Clone)]
pub struct DiffRing(Arc<RingInner>);

#[derive(Debug)]
struct RingInner {
    spec: RingSpec,
    registry: Mutex<Registry>,
}

impl DiffRing {
    pub fn new(spec: RingSpec) -> Result<DiffRing, Error> {
        if spec.derivations.is_empty() {
            return Err(Error::Invalid("at least one derivation is required".into()));
        }
        if spec.indeterminates.is_empty() {
            return Err(Error::Invalid("at least one indeterminate is required".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in spec.derivations.iter().chain(&spec.indeterminates) {
            if !seen.insert(name.clone()) {
                return Err(Error::Invalid(format!("duplicate name `{name}`")));
            }
        }
        let ring = DiffRing(Arc::new(RingInner {
            spec,
            registry: Mutex::new(Registry::default()),
        }));
        // register the base indeterminates up front for stable low ids
        for i in 0..ring.num_indeterminates() {
            ring.var_of(&Derivative::base(i, ring.num_derivations()));
        }
        Ok(ring)
    }

    /// Convenience constructor for an ordinary ring.
    pub fn ordinary(indeterminates: &[&str]) -> Result<DiffRing, Error> {
        DiffRing::new(RingSpec {
            derivations: vec!["d".into()],
            indeterminates: indeterminates.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn num_derivations(&self) -> usize {
        self.0.spec.derivations.len()
    }

    pub fn num_indeterminates(&self) -> usize {
        self.0.spec.indeterminates.len()
    }

    pub fn is_ordinary(&self) -> bool {
        self.num_derivations() == 1
    }

    pub fn same_ring(&self, other: &DiffRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn indeterminate_index(&self, name: &str) -> Option<usize> {
        self.0.spec.indeterminates.iter().position(|n| n == name)
    }

    pub fn derivation_index(&self, name: &str) -> Option<usize> {
        self.0.spec.derivations.iter().position(|n| n == name)
    }

    /// Variable id for a derivative, registering it on first use.
    pub fn var_of(&self, d: &Derivative) -> VarId {
        debug_assert_eq!(d.theta.len(), self.num_derivations());
        debug_assert!(d.indet < self.num_indeterminates());
        let mut reg = self.0.registry.lock().unwrap();
        if let Some(&v) = reg.by_deriv.get(d) {
            return v;
        }
        let v = VarId(reg.entries.len() as u32);
        reg.entries.push(VarEntry::Deriv(d.clone()));
        reg.by_deriv.insert(d.clone(), v);
        v
    }

    /// The derivative registered under a variable id, `None` for auxiliary
    /// variables.
    pub fn derivative_of(&self, v: VarId) -> Option<Derivative> {
        let reg = self.0.registry.lock().unwrap();
        match reg.entries.get(v.0 as usize) {
            Some(VarEntry::Deriv(d)) => Some(d.clone()),
            _ => None,
        }
    }

    /// Register a fresh auxiliary (non-derivative) variable.
    pub fn fresh_aux(&self, name: &str) -> VarId {
        let mut reg = self.0.registry.lock().unwrap();
        let v = VarId(reg.entries.len() as u32);
        reg.entries.push(VarEntry::Aux(format!("{name}#{}", v.0)));
        v
    }

    pub fn is_aux(&self, v: VarId) -> bool {
        let reg = self.0.registry.lock().unwrap();
        matches!(reg.entries.get(v.0 as usize), Some(VarEntry::Aux(_)))
    }

    /// Printable name of a variable: derivative notation for derivatives,
    /// the stored tag for auxiliary variables.
    pub fn var_name(&self, v: VarId) -> String {
        let reg = self.0.registry.lock().unwrap();
        match reg.entries.get(v.0 as usize) {
            Some(VarEntry::Deriv(d)) => self.derivative_name(d),
            Some(VarEntry::Aux(name)) => name.clone(),
            None => format!("?{}", v.0),
        }
    }

    /// Human-readable form of a derivative: primes in the ordinary case,
    /// nested derivation application otherwise.
    pub fn derivative_name(&self, d: &Derivative) -> String {
        let base = &self.0.spec.indeterminates[d.indet];
        if self.is_ordinary() {
            let k = d.theta[0] as usize;
            format!("{base}{}", "'".repeat(k))
        } else {
            let mut out = base.clone();
            for (j, &k) in d.theta.iter().enumerate().rev() {
                for _ in 0..k {
                    out = format!("{}({})", self.0.spec.derivations[j], out);
                }
            }
            out
        }
    }

    /// Compare two registered variables under a ranking. Auxiliary variables
    /// sort above all derivatives and among themselves by id; they never
    /// occur in differential polynomials, so this branch only affects
    /// engine-internal determinism.
    pub fn var_cmp(&self, ranking: &Ranking, a: VarId, b: VarId) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        match (self.derivative_of(a), self.derivative_of(b)) {
            (Some(da), Some(db)) => ranking.compare(&da, &db),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => a.cmp(&b),
        }
    }

    /// Monomial order induced by a ranking over this ring's variables.
    pub fn ranking_order<'a>(&'a self, ranking: &'a Ranking) -> RankingOrder<'a> {
        RankingOrder { ring: self, ranking }
    }
}

/// Lexicographic monomial order whose variable precedence is a ranking.
pub struct RankingOrder<'a> {
    ring: &'a DiffRing,
    ranking: &'a Ranking,
}

impl MonomialOrder for RankingOrder<'_> {
    fn cmp_vars(&self, a: VarId, b: VarId) -> Ordering {
        self.ring.var_cmp(self.ranking, a, b)
    }
}
