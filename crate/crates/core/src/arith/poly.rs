//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::monomial::{IdOrder, Monomial, MonomialOrder, VarId};
use super::Rat;
use crate::error::Error;

/// Sparse polynomial: map from power products to nonzero rational
/// coefficients. The zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Monomial::var(v), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant value if the polynomial lies in the coefficient field.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Monomial::one()).cloned();
        }
        None
    }

    /// The coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn support_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.iter() {
                out.insert(v);
            }
        }
        out
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.contains(v))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// View as a univariate polynomial in `v`: map from exponent to the
    /// coefficient polynomial over the remaining variables.
    pub fn univariate_in(&self, v: VarId) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            out.entry(e)
                .or_insert_with(Poly::zero)
                .add_term(m.without(v), c.clone());
        }
        out
    }

    /// Coefficient of `v^k` as a polynomial over the other variables.
    pub fn coeff_of_power(&self, v: VarId, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                out.add_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// Leading coefficient of the univariate view in `v`.
    pub fn leading_coeff_in(&self, v: VarId) -> Poly {
        self.coeff_of_power(v, self.degree_in(v))
    }

    pub fn partial_derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let mut reduced = m.without(v);
                if e > 1 {
                    reduced = reduced.mul(&Monomial::var_pow(v, e - 1));
                }
                out.add_term(reduced, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Largest term under the given order; `None` for the zero polynomial.
    pub fn leading_term(&self, ord: &dyn MonomialOrder) -> Option<(&Monomial, &Rat)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp_monomials(a.0, b.0))
    }

    pub fn leading_monomial(&self, ord: &dyn MonomialOrder) -> Option<Monomial> {
        self.leading_term(ord).map(|(m, _)| m.clone())
    }

    /// Rescale so the coefficient of the order-leading monomial is 1.
    pub fn monic_under(&self, ord: &dyn MonomialOrder) -> Poly {
        match self.leading_term(ord) {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact multivariate division; `None` when the division does not come
    /// out exactly. Division by zero is an error of the caller.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "exact_div by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(Rat::one() / c)));
        }
        // divide as univariate polynomials in the top variable of d,
        // dividing coefficients recursively
        let x = *d.support_vars().iter().next_back().unwrap();
        let db = d.degree_in(x);
        let lead_d = d.leading_coeff_in(x);
        let mut r = self.clone();
        let mut q = Poly::zero();
        while !r.is_zero() {
            let dr = r.degree_in(x);
            if dr < db {
                return None;
            }
            let lead_r = r.coeff_of_power(x, dr);
            let qc = lead_r.exact_div(&lead_d)?;
            let shift = Poly::term(Monomial::var_pow(x, dr - db), Rat::one());
            let qterm = &qc * &shift;
            q = &q + &qterm;
            r = &r - &(&qterm * d);
            debug_assert!(r.is_zero() || r.degree_in(x) < dr);
        }
        Some(q)
    }

    /// Rescale by a rational so the coefficients become coprime integers
    /// with a positive id-order leading coefficient. Used to keep
    /// intermediate results small; the scale is not reported.
    pub fn primitive_normalized(&self) -> Poly {
        use num::{BigInt, Integer};
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den_lcm = BigInt::from(1);
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::from(0);
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut scale = Rat::new(den_lcm, num_gcd);
        if self
            .leading_term(&IdOrder)
            .map(|(_, c)| (c * &scale) < Rat::zero())
            .unwrap_or(false)
        {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Substitute a polynomial for a variable. Used by certificate checks.
    pub fn substitute(&self, v: VarId, value: &Poly) -> Poly {
        let uni = self.univariate_in(v);
        let mut acc = Poly::zero();
        let mut power = Poly::one();
        let mut current = 0u32;
        for (e, coeff) in uni {
            while current < e {
                power = &power * value;
                current += 1;
            }
            acc = &acc + &(&coeff * &power);
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

/// Result of pseudo-division: `lc^power · f = quotient·g + remainder`.
#[derive(Debug, Clone)]
pub struct PseudoDiv {
    pub quotient: Poly,
    pub remainder: Poly,
    pub power: u32,
}

/// Pseudo-divide `f` by `g` with respect to the variable `x`.
///
/// Errors when `g` is constant in `x`. The identity
/// `lc_x(g)^power · f = quotient·g + remainder` holds exactly, with
/// `deg_x(remainder) < deg_x(g)` and `power ≤ deg_x(f) − deg_x(g) + 1`.
pub fn pseudo_divide(f: &Poly, g: &Poly, x: VarId) -> Result<PseudoDiv, Error> {
    let dg = g.degree_in(x);
    if dg == 0 {
        return Err(Error::NotADivisor(format!("{:?}", x)));
    }
    let lc = g.leading_coeff_in(x);
    let mut q = Poly::zero();
    let mut r = f.clone();
    let mut power = 0u32;
    while !r.is_zero() && r.degree_in(x) >= dg {
        let dr = r.degree_in(x);
        let t = r
            .coeff_of_power(x, dr)
            .mul_monomial(&Monomial::var_pow(x, dr - dg));
        q = &(&q * &lc) + &t;
        r = &(&r * &lc) - &(&t * g);
        power += 1;
        debug_assert!(r.is_zero() || r.degree_in(x) < dr);
    }
    Ok(PseudoDiv { quotient: q, remainder: r, power })
}

/// Pseudo-remainder only.
pub fn prem(f: &Poly, g: &Poly, x: VarId) -> Result<Poly, Error> {
    Ok(pseudo_divide(f, g, x)?.remainder)
}

/// Content of `f` viewed as a polynomial in `x` (gcd of the coefficients),
/// together with the primitive part.
fn content_in(f: &Poly, x: VarId) -> (Poly, Poly) {
    if f.is_zero() {
        return (Poly::zero(), Poly::zero());
    }
    let coeffs: Vec<Poly> = f.univariate_in(x).into_values().collect();
    let mut g = Poly::zero();
    for c in &coeffs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    let prim = f.exact_div(&g).expect("content divides");
    (g, prim)
}

/// Multivariate gcd via primitive polynomial remainder sequences, recursing
/// on the top variable. The result is normalized so the coefficient of its
/// id-order leading monomial is 1; gcd(0, 0) = 0.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let g = gcd_raw(a, b);
    g.monic_under(&IdOrder)
}

fn gcd_raw(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let vars: BTreeSet<VarId> = a.support_vars().union(&b.support_vars()).copied().collect();
    let x = *vars.iter().next_back().unwrap();
    if !a.contains_var(x) || !b.contains_var(x) {
        // x occurs in only one of them: gcd divides the x-free one, hence is
        // x-free; recurse against the content of the other.
        let (with_x, without_x) = if a.contains_var(x) { (a, b) } else { (b, a) };
        let (cont, _) = content_in(with_x, x);
        return gcd_raw(&cont, without_x);
    }
    let (ca, pa) = content_in(a, x);
    let (cb, pb) = content_in(b, x);
    let cont = gcd_raw(&ca, &cb);

    let (mut f, mut g) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if g.is_zero() {
            break;
        }
        if g.degree_in(x) == 0 {
            // a nonzero x-free remainder: the x-parts are coprime
            f = Poly::one();
            break;
        }
        let r = prem(&f, &g, x).expect("g has positive degree in x");
        f = g;
        g = if r.is_zero() {
            Poly::zero()
        } else {
            content_in(&r, x).1
        };
    }
    &cont * &f
}

/// Least common multiple, normalized like [`gcd`].
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    let prod = a * b;
    prod.exact_div(&g)
        .expect("gcd divides the product")
        .monic_under(&IdOrder)
}

/// Split `f` into `content · primitive` where the content collects every
/// factor free of `main_vars` (including the rational scale) and the
/// primitive part has coprime coefficients over the complement.
pub fn content_primitive(f: &Poly, main_vars: &BTreeSet<VarId>) -> (Poly, Poly) {
    if f.is_zero() {
        return (Poly::zero(), Poly::zero());
    }
    // coefficients of f as a polynomial in the main variables
    let mut coeffs: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (main, rest) = m.split(&|v| main_vars.contains(&v));
        coeffs
            .entry(main)
            .or_insert_with(Poly::zero)
            .add_term(rest, c.clone());
    }
    let mut g = Poly::zero();
    for c in coeffs.values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    let partial = f.exact_div(&g).expect("content divides");
    // rational scale: coefficient of the id-order leading monomial
    let scale = partial
        .leading_term(&IdOrder)
        .map(|(_, c)| c.clone())
        .expect("nonzero");
    let primitive = partial.scale(&(Rat::one() / scale.clone()));
    let content = g.scale(&scale);
    (content, primitive)
}
