//! Property tests: the algebraic invariants the substrate promises, checked
//! on randomized small inputs.

use proptest::prelude::*;

use diffchar::arith::{
    content_primitive, gcd, pseudo_divide, rat, Monomial, Poly, PrecedenceOrder, Rat, VarId,
};
use diffchar::diff::{Derivative, DiffPoly, DiffRing, Ranking, RingSpec};
use diffchar::groebner::{buchberger, gb_of_poly, spoly_audit, Coeff, Frac};
use diffchar::reduce::{full_remainder, is_reduced, partial_remainder, Reducedness, TriangularSet};

fn coeff_strategy() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn mono_strategy(nvars: u32, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, nvars as usize).prop_map(|exps| {
        Monomial::from_pairs(
            exps.into_iter()
                .enumerate()
                .map(|(i, e)| (VarId(i as u32), e)),
        )
    })
}

fn poly_strategy(nvars: u32, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((mono_strategy(nvars, max_exp), coeff_strategy()), 0..=max_terms)
        .prop_map(Poly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(
        a in poly_strategy(3, 3, 4),
        b in poly_strategy(3, 3, 4),
        c in poly_strategy(3, 3, 4),
    ) {
        prop_assert_eq!(&(&(&a + &b) - &b), &a);
        prop_assert_eq!(&(&a * &b), &(&b * &a));
        prop_assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
    }

    #[test]
    fn pseudo_division_identity(
        f in poly_strategy(3, 3, 4),
        g in poly_strategy(3, 3, 4),
    ) {
        let x = VarId(0);
        prop_assume!(g.degree_in(x) > 0);
        let dg = g.degree_in(x);
        let df = f.degree_in(x);
        let d = pseudo_divide(&f, &g, x).unwrap();
        let lc = g.leading_coeff_in(x);
        let lhs = &lc.pow(d.power) * &f;
        let rhs = &(&d.quotient * &g) + &d.remainder;
        prop_assert_eq!(lhs, rhs);
        prop_assert!(d.remainder.is_zero() || d.remainder.degree_in(x) < dg);
        prop_assert!(d.power <= df.saturating_sub(dg) + 1);
    }

    #[test]
    fn content_times_primitive(
        f in poly_strategy(3, 2, 4),
    ) {
        prop_assume!(!f.is_zero());
        let mains: std::collections::BTreeSet<VarId> = [VarId(0)].into_iter().collect();
        let (content, primitive) = content_primitive(&f, &mains);
        prop_assert_eq!(&(&content * &primitive), &f);
        // a second extraction leaves the primitive part fixed
        let (c2, p2) = content_primitive(&primitive, &mains);
        prop_assert!(c2.is_one());
        prop_assert_eq!(&p2, &primitive);
    }

    #[test]
    fn gcd_divides_both(
        a in poly_strategy(2, 2, 3),
        b in poly_strategy(2, 2, 3),
        m in poly_strategy(2, 1, 2),
    ) {
        // plant a common factor to make the gcd nontrivial now and then
        let a = &a * &m;
        let b = &b * &m;
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = gcd(&a, &b);
        prop_assert!(a.exact_div(&g).is_some());
        prop_assert!(b.exact_div(&g).is_some());
        if !m.is_zero() && !a.is_zero() && !b.is_zero() {
            // the planted factor divides the gcd
            prop_assert!(g.exact_div(&m.monic_under(&diffchar::arith::IdOrder)).is_some());
        }
    }

    #[test]
    fn frac_stays_normalized(
        n1 in poly_strategy(2, 2, 3),
        d1 in poly_strategy(2, 2, 3),
        n2 in poly_strategy(2, 2, 3),
        d2 in poly_strategy(2, 2, 3),
    ) {
        prop_assume!(!d1.is_zero() && !d2.is_zero());
        let a = Frac::new(n1, d1);
        let b = Frac::new(n2, d2);
        for f in [a.add(&b), a.mul(&b), a.sub(&b)] {
            if f.is_zero() {
                prop_assert!(f.num().is_zero());
                prop_assert!(f.den().is_one());
            } else {
                prop_assert!(gcd(f.num(), f.den()).is_one());
            }
        }
    }
}

// ---------------------------------------------------------------------------
// rankings and differentiation
// ---------------------------------------------------------------------------

fn derivative_strategy(n: usize, l: usize) -> impl Strategy<Value = Derivative> {
    (prop::collection::vec(0u32..=3, n), 0..l)
        .prop_map(|(theta, indet)| Derivative { theta, indet })
}

fn theta_strategy(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=2, n)
}

fn partial_ring() -> (DiffRing, usize, usize) {
    let ring = DiffRing::new(RingSpec {
        derivations: vec!["d1".into(), "d2".into()],
        indeterminates: vec!["y".into(), "z".into(), "w".into()],
    })
    .unwrap();
    (ring, 2, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ranking_axioms_hold(
        u in derivative_strategy(2, 3),
        v in derivative_strategy(2, 3),
        theta in theta_strategy(2),
        blocks in prop::sample::select(vec![
            vec![vec![0usize, 1, 2]],
            vec![vec![0], vec![1], vec![2]],
            vec![vec![1], vec![0, 2]],
        ]),
    ) {
        let (ring, _, _) = partial_ring();
        let rankings = [
            Ranking::orderly(&ring),
            Ranking::elimination(&ring, blocks).unwrap(),
        ];
        for r in &rankings {
            // axiom 1: θu ≥ u
            let theta_u = Derivative {
                theta: u.theta.iter().zip(&theta).map(|(a, b)| a + b).collect(),
                indet: u.indet,
            };
            prop_assert!(r.compare(&theta_u, &u) != std::cmp::Ordering::Less);
            // axiom 2: u ≥ v ⟹ θu ≥ θv
            if r.compare(&u, &v) != std::cmp::Ordering::Less {
                let theta_v = Derivative {
                    theta: v.theta.iter().zip(&theta).map(|(a, b)| a + b).collect(),
                    indet: v.indet,
                };
                prop_assert!(r.compare(&theta_u, &theta_v) != std::cmp::Ordering::Less);
            }
        }
    }
}

fn diff_poly_strategy() -> impl Strategy<Value = DiffPoly> {
    // polynomials in y, z, d1(y), d2(z) over two derivations
    prop::collection::vec(
        (prop::collection::vec(0u32..=2, 4), coeff_strategy()),
        1..=4,
    )
    .prop_map(|terms| {
        let (ring, _, _) = partial_ring();
        let vars = [
            ring.var_of(&Derivative { theta: vec![0, 0], indet: 0 }),
            ring.var_of(&Derivative { theta: vec![0, 0], indet: 1 }),
            ring.var_of(&Derivative { theta: vec![1, 0], indet: 0 }),
            ring.var_of(&Derivative { theta: vec![0, 1], indet: 1 }),
        ];
        let body = Poly::from_terms(terms.into_iter().map(|(exps, c)| {
            (
                Monomial::from_pairs(exps.into_iter().enumerate().map(|(i, e)| (vars[i], e))),
                c,
            )
        }));
        DiffPoly::new(&ring, body)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differentiation_commutes(f in diff_poly_strategy()) {
        let d12 = f.differentiate(0).differentiate(1);
        let d21 = f.differentiate(1).differentiate(0);
        prop_assert_eq!(d12, d21);
    }

    #[test]
    fn initial_of_prolongation_is_separant(
        f in diff_poly_strategy(),
        theta in theta_strategy(2),
    ) {
        prop_assume!(!f.is_constant());
        prop_assume!(theta.iter().any(|&k| k > 0));
        let ranking = Ranking::orderly(f.ring());
        let sep = f.anatomy(&ranking).unwrap().separant;
        prop_assume!(!sep.is_zero());
        let tf = f.apply_theta(&theta);
        let init = tf.anatomy(&ranking).unwrap().initial;
        prop_assert_eq!(init, sep);
    }

    #[test]
    fn anatomy_scales_with_constants(f in diff_poly_strategy(), c in 1i64..=7) {
        prop_assume!(!f.is_constant());
        let ranking = Ranking::orderly(f.ring());
        let a = f.anatomy(&ranking).unwrap();
        let scaled = f.scale(&rat(c));
        let b = scaled.anatomy(&ranking).unwrap();
        prop_assert_eq!(a.leader, b.leader);
        prop_assert_eq!(a.degree, b.degree);
        prop_assert_eq!(a.initial.scale(&rat(c)), b.initial);
        prop_assert_eq!(a.separant.scale(&rat(c)), b.separant);
    }
}

// ---------------------------------------------------------------------------
// reduction certificates against generated triangular sets
// ---------------------------------------------------------------------------

fn linear_charset_strategy() -> impl Strategy<Value = (TriangularSet, DiffPoly)> {
    // u' − p(u, w), w' − q(u, w) is autoreduced and coherent in the ordinary
    // case; probe with a random polynomial involving second derivatives
    (
        prop::collection::vec((prop::collection::vec(0u32..=2, 2), coeff_strategy()), 1..=3),
        prop::collection::vec((prop::collection::vec(0u32..=2, 2), coeff_strategy()), 1..=3),
        prop::collection::vec((prop::collection::vec(0u32..=1, 4), coeff_strategy()), 1..=4),
    )
        .prop_map(|(p_terms, q_terms, probe_terms)| {
            let ring = DiffRing::ordinary(&["u", "w"]).unwrap();
            let ranking = Ranking::orderly(&ring);
            let base = [
                ring.var_of(&Derivative::base(0, 1)),
                ring.var_of(&Derivative::base(1, 1)),
            ];
            let mk = |terms: Vec<(Vec<u32>, Rat)>, vars: &[VarId]| {
                Poly::from_terms(terms.into_iter().map(|(exps, c)| {
                    (
                        Monomial::from_pairs(
                            exps.into_iter().enumerate().map(|(i, e)| (vars[i], e)),
                        ),
                        c,
                    )
                }))
            };
            let u1 = ring.var_of(&Derivative { theta: vec![1], indet: 0 });
            let w1 = ring.var_of(&Derivative { theta: vec![1], indet: 1 });
            let e1 = DiffPoly::new(&ring, &Poly::var(u1) - &mk(p_terms, &base));
            let e2 = DiffPoly::new(&ring, &Poly::var(w1) - &mk(q_terms, &base));
            let ts = TriangularSet::new(&ring, &ranking, vec![e1, e2]).unwrap();
            let u2 = ring.var_of(&Derivative { theta: vec![2], indet: 0 });
            let w2 = ring.var_of(&Derivative { theta: vec![2], indet: 1 });
            let probe_vars = [base[0], base[1], u2, w2];
            let probe = DiffPoly::new(&ring, mk(probe_terms, &probe_vars));
            (ts, probe)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn remainder_certificates_verify((ts, probe) in linear_charset_strategy()) {
        let partial = partial_remainder(&probe, &ts);
        prop_assert!(partial.verify(&ts));
        prop_assert!(is_reduced(&partial.remainder, &ts) != Reducedness::No);
        let full = full_remainder(&probe, &ts);
        prop_assert!(full.verify(&ts));
        prop_assert!(matches!(is_reduced(&full.remainder, &ts), Reducedness::Fully));
    }
}

// ---------------------------------------------------------------------------
// Gröbner bases: canonicality under generator permutation
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_basis_is_generator_order_independent(
        polys in prop::collection::vec(poly_strategy(3, 2, 3), 1..=3),
        seed in 0u64..1000,
    ) {
        let ord = PrecedenceOrder::new(&[VarId(2), VarId(1), VarId(0)]);
        let gens: Vec<_> = polys.iter().map(|p| gb_of_poly(p, &ord)).collect();
        let forward = buchberger(gens.clone(), &ord, Some(20_000)).ok();
        prop_assume!(forward.is_some());
        let forward = forward.unwrap();
        // permute deterministically from the seed
        let mut permuted = gens;
        let n = permuted.len();
        if n > 1 {
            let k = (seed as usize) % n;
            permuted.rotate_left(k);
        }
        let rotated = buchberger(permuted, &ord, Some(20_000)).unwrap();
        prop_assert_eq!(&forward, &rotated);
        prop_assert!(spoly_audit(&forward, &ord));
    }
}
