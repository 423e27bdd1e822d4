use nilgeom::bundled;
use nilgeom::filtration::weight_of;
use nilgeom::geometry::{dilate, sigma};
use nilgeom::norms::prenorm_exact;
use nilgeom::{
    AdaptedAlgebra, Group, GroupElement, MultiIndex, PbwMultiplier, Rational, UElement,
    WeightSequence,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn groups() -> Vec<(&'static str, Group<Rational>)> {
    bundled::all()
        .into_iter()
        .map(|(n, a)| {
            (
                n,
                Group::from_adapted(&AdaptedAlgebra::from_lower_central_series(&a).unwrap()),
            )
        })
        .collect()
}

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn vec_of(m: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rat(), m)
}

fn element(m: usize) -> impl Strategy<Value = UElement<Rational>> {
    prop::collection::vec((prop::collection::vec(0u32..=2, m), rat()), 0..4).prop_map(
        move |terms| {
            UElement::from_terms(m, terms.into_iter().map(|(a, c)| (MultiIndex(a), c))).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_on_random_triples(x in vec_of(7), y in vec_of(7), z in vec_of(7)) {
        for (_, g) in groups() {
            let m = g.dim();
            let (x, y, z) = (&x[..m], &y[..m], &z[..m]);
            let a = g.algebra();
            let s: Vec<Rational> = a.bracket(x, &a.bracket(y, z)).into_iter()
                .zip(a.bracket(y, &a.bracket(z, x)))
                .zip(a.bracket(z, &a.bracket(x, y)))
                .map(|((p, q), r)| p + q + r)
                .collect();
            prop_assert!(s.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn weight_is_additive(a in prop::collection::vec(0u32..5, 7), b in prop::collection::vec(0u32..5, 7)) {
        let w = [1, 1, 2, 3, 4, 5, 6];
        let (a, b) = (MultiIndex(a), MultiIndex(b));
        prop_assert_eq!(
            weight_of(&w, &a.add(&b)).unwrap(),
            weight_of(&w, &a).unwrap() + weight_of(&w, &b).unwrap()
        );
    }

    #[test]
    fn group_law_is_associative_with_inverses(x in vec_of(7), y in vec_of(7), z in vec_of(7)) {
        for (_, g) in groups() {
            let m = g.dim();
            let (x, y, z) = (
                GroupElement::new(x[..m].to_vec()),
                GroupElement::new(y[..m].to_vec()),
                GroupElement::new(z[..m].to_vec()),
            );
            let l = g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap();
            let r = g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(g.mul(&x, &g.inv(&x).unwrap()).unwrap(), g.identity());
        }
    }

    #[test]
    fn coordinates_round_trip(x in vec_of(7)) {
        for (_, g) in groups() {
            let el = GroupElement::new(x[..g.dim()].to_vec());
            let bar = g.first_to_second(&el).unwrap();
            prop_assert_eq!(g.second_to_first(&bar).unwrap(), el);
        }
    }

    #[test]
    fn pbw_product_is_associative(x in element(3), y in element(3), z in element(3)) {
        let alg = bundled::heisenberg3();
        let mut mul = PbwMultiplier::new(&alg);
        let xy = mul.mul(&x, &y).unwrap();
        let l = mul.mul(&xy, &z).unwrap();
        let yz = mul.mul(&y, &z).unwrap();
        let r = mul.mul(&x, &yz).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn sigma_is_homogeneous(x in vec_of(7), z in 1i64..=12) {
        for (_, g) in groups() {
            let el = GroupElement::new(x[..g.dim()].to_vec());
            let zq = Rational::from_integer(BigInt::from(z));
            let s = sigma(&g, &el, 192).unwrap();
            let sz = sigma(&g, &dilate(&g, &el, &zq).unwrap(), 192).unwrap();
            let diff = (sz - s * nilgeom::Ball::from_i64(z, 192)).abs();
            prop_assert!(diff.hi_f64() < 1e-40);
        }
    }

    #[test]
    fn prenorm_is_a_seminorm(x in element(3), y in element(3), c in rat()) {
        let w = [1, 1, 2];
        let r = Rational::new(BigInt::from(3), BigInt::from(2));
        let seq = WeightSequence::M1;
        let n = |u: &UElement<Rational>| prenorm_exact(u, &w, &r, &seq).unwrap();
        prop_assert!(n(&(&x + &y)) <= n(&x) + n(&y));
        prop_assert_eq!(n(&x.scale(&c)), n(&x) * c.abs());
    }
}
