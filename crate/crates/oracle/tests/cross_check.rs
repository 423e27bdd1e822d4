use std::collections::BTreeMap;

use nilgeom::filtration::lower_central_series;
use nilgeom::norms::{decay_profile, growth_function, prenorm_exact, weight_counts};
use nilgeom::sampling::{rational_vec, stream};
use nilgeom::{
    bundled, AdaptedAlgebra, Ball, Group, MultiIndex, PbwMultiplier, Rational, UElement,
    WeightSequence,
};
use nilgeom_oracle::{closed_form, dynkin, enumerate, lcs, rewrite};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;

fn adapted() -> Vec<(&'static str, AdaptedAlgebra<Rational>)> {
    bundled::all()
        .into_iter()
        .map(|(n, a)| (n, AdaptedAlgebra::from_lower_central_series(&a).unwrap()))
        .collect()
}

fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[test]
fn bch_matches_dynkin_expansion() {
    for (name, a) in adapted() {
        let g = Group::from_adapted(&a);
        for k in 0..50 {
            let mut rng = stream(17, k);
            let x = rational_vec(&mut rng, g.dim(), 9, 5);
            let y = rational_vec(&mut rng, g.dim(), 9, 5);
            assert_eq!(
                g.bch(&x, &y),
                dynkin::bch(g.algebra(), &x, &y, g.class()),
                "{name} pair {k}"
            );
        }
    }
}

fn random_element(rng: &mut impl Rng, m: usize) -> (UElement<Rational>, rewrite::Element) {
    let mut plain = rewrite::Element::new();
    for _ in 0..3 {
        let alpha: Vec<u32> = (0..m).map(|_| rng.random_range(0..=1)).collect();
        let c = Rational::new(
            BigInt::from(rng.random_range(-5..=5)),
            BigInt::from(rng.random_range(1..=3)),
        );
        *plain.entry(alpha).or_insert_with(|| qi(0)) += c;
    }
    plain.retain(|_, c| *c != qi(0));
    let u = UElement::from_terms(
        m,
        plain
            .iter()
            .map(|(a, c)| (MultiIndex(a.clone()), c.clone())),
    )
    .unwrap();
    (u, plain)
}

#[test]
fn pbw_matches_leftmost_rewriting() {
    for (name, a) in adapted() {
        let alg = a.algebra();
        let mut mul = PbwMultiplier::new(alg);
        for k in 0..20 {
            let mut rng = stream(23, k);
            let (x, px) = random_element(&mut rng, alg.dim());
            let (y, py) = random_element(&mut rng, alg.dim());
            let fast = mul.mul(&x, &y).unwrap();
            let slow = rewrite::product(alg, &px, &py);
            let fast: BTreeMap<Vec<u32>, Rational> = fast
                .terms()
                .iter()
                .map(|(a, c)| (a.0.clone(), c.clone()))
                .collect();
            assert_eq!(fast, slow, "{name} sample {k}");
        }
    }
}

#[test]
fn weight_counts_match_enumeration() {
    for (_, a) in adapted() {
        let fast = weight_counts(a.weights(), 40);
        let slow = enumerate::weight_counts(a.weights(), 40);
        assert_eq!(
            fast.iter().map(|c| c.to_u64().unwrap()).collect::<Vec<_>>(),
            slow
        );
    }
}

#[test]
fn growth_function_at_one_matches_enumeration() {
    let tol = Rational::new(BigInt::one(), BigInt::from(10).pow(25));
    for (name, a) in adapted() {
        let phi = growth_function(&Ball::from_i64(1, 192), a.weights(), &tol, 192).unwrap();
        let slow = Ball::from_rational(&enumerate::phi_truncated(a.weights(), &qi(1), 80), 192);
        let diff = (phi.value.clone() - slow).abs();
        assert!(diff.hi_f64() < 1e-20, "{name}: {}", diff.hi_f64());
    }
}

#[test]
fn generator_powers_match_closed_form() {
    let a = AdaptedAlgebra::from_lower_central_series(&bundled::favre7()).unwrap();
    let mut mul = PbwMultiplier::new(a.algebra());
    for i in 0..7 {
        let gen = UElement::generator(7, i);
        let mut p = UElement::one(7);
        for n in 1..=8 {
            p = mul.mul(&p, &gen).unwrap();
            for r in [qi(1), Rational::new(BigInt::from(7), BigInt::from(3))] {
                let fast = prenorm_exact(&p, a.weights(), &r, &WeightSequence::M1).unwrap();
                assert_eq!(
                    fast,
                    closed_form::power_norm(a.weights()[i], n, &r),
                    "e{} ^ {n}",
                    i + 1
                );
            }
        }
    }
}

#[test]
fn decay_approaches_stirling_limit() {
    let a = AdaptedAlgebra::from_lower_central_series(&bundled::heisenberg3()).unwrap();
    for i in 0..3 {
        let w = a.weights()[i];
        let prof = decay_profile(a.algebra(), a.weights(), i, &qi(1), 300, 128).unwrap();
        let last = prof.rows.last().unwrap().normalized.mid_f64();
        let limit = closed_form::decay_limit(w, 1.0);
        assert!(
            (last / limit - 1.0).abs() < 0.03,
            "e{}: {last} vs {limit}",
            i + 1
        );
    }
}

#[test]
fn lower_central_series_dimensions_agree() {
    for (name, alg) in bundled::all() {
        assert_eq!(
            lower_central_series(&alg).unwrap().dims(),
            lcs::lcs_dims(&alg),
            "{name}"
        );
    }
    assert_eq!(lcs::lcs_dims(&bundled::heisenberg3()), vec![3, 1]);
    assert_eq!(lcs::lcs_dims(&bundled::favre7()), vec![7, 5, 4, 3, 2, 1]);
}
