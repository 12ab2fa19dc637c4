use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use danielewski::quotient::eq_check;
use danielewski::{parse_poly, print_poly, sample, FieldSpec, Filtration, Ring, RingElement, WeightVector};

fn fixtures() -> Vec<Ring> {
    let f5 = FieldSpec::prime(5).unwrap();
    let f3 = FieldSpec::prime(3).unwrap();
    vec![
        Ring::danielewski(FieldSpec::Rationals, &[2], "V^2").unwrap(),
        Ring::danielewski(f5, &[1, 2], "V^2 + T1*V - 1").unwrap(),
        Ring::danielewski(f3, &[3], "V^3 + V").unwrap(),
        Ring::asanuma(FieldSpec::Rationals, &[2], "Z^2 + T").unwrap(),
    ]
}

/// A fixture ring and `n` random elements drawn from a seed.
fn elements(n: usize) -> impl Strategy<Value = (Ring, Vec<RingElement>)> {
    (0..4usize, any::<u64>()).prop_map(move |(i, seed)| {
        let ring = fixtures().swap_remove(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs = (0..n).map(|_| sample::element(&mut rng, &ring, 3, 4)).collect();
        (ring, xs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutative_ring_laws((ring, xs) in elements(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a * &ring.one(), a.clone());
        prop_assert!((a - a).is_zero());
        prop_assert_eq!(&(-a) + a, ring.zero());
    }

    #[test]
    fn normal_form_is_idempotent((ring, xs) in elements(1)) {
        let nf = xs[0].nf().clone();
        prop_assert!(ring.is_normal_shape(&nf));
        prop_assert_eq!(ring.normalize_poly(&nf), nf);
    }

    #[test]
    fn equality_matches_laurent_images(i in 0..4usize, seed in any::<u64>(), same in any::<bool>()) {
        let ring = fixtures().swap_remove(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::raw_element(&mut rng, &ring, 4, 4);
        let c = if same {
            &a + &(&sample::raw_element(&mut rng, &ring, 2, 2) * &ring.relation())
        } else {
            sample::raw_element(&mut rng, &ring, 4, 4)
        };
        let eq = eq_check(&ring.element(&a).unwrap(), &ring.element(&c).unwrap()).unwrap();
        prop_assert_eq!(eq, ring.laurent_of(&a) == ring.laurent_of(&c));
        if same {
            prop_assert!(eq);
        }
    }

    #[test]
    fn retract_inverts_the_laurent_image((ring, xs) in elements(1)) {
        prop_assume!(ring.family() == danielewski::Family::Danielewski);
        prop_assert_eq!(ring.retract(&xs[0].laurent()).unwrap(), xs[0].clone());
    }

    #[test]
    fn printed_polynomials_parse_back((ring, _) in elements(0), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::raw_element(&mut rng, &ring, 5, 6);
        let text = print_poly(&p);
        prop_assert_eq!(parse_poly(&text, ring.universe(), ring.field()).unwrap(), p, "{}", text);
    }

    #[test]
    fn degree_is_multiplicative(seed in any::<u64>(), t in -3i64..=3, v in 0i64..=3) {
        let ring = fixtures().swap_remove(0);
        let f = Filtration::new(&ring, WeightVector::new(vec![t], v)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample::element(&mut rng, &ring, 3, 3);
        let y = sample::element(&mut rng, &ring, 3, 3);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let d = |z: &RingElement| f.filt_degree(z).unwrap().finite().unwrap();
        prop_assert_eq!(d(&(&x * &y)), d(&x) + d(&y));
        let sum = f.filt_degree(&(&x + &y)).unwrap();
        prop_assert!(sum <= danielewski::Degree::Finite(d(&x).max(d(&y))));
    }

    #[test]
    fn parser_never_panics(text in "[-+*^()/0-9TUVtuv1 ]{0,40}") {
        let u = danielewski::Universe::new(&["T1", "U", "V"]);
        let _ = parse_poly(&text, &u, FieldSpec::Rationals);
        let _ = danielewski::parse_ring_config(&format!("field = Q\nm = 1\nr = 2\nF = {text}\n"));
    }
}
