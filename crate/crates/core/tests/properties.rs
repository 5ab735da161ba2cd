use num_traits::{One, Zero};
use proptest::prelude::*;
use qpade_core::algebra::{
    det_exact, fmt_scalar, nullspace, parse_scalar, ratio, solve_linear, Matrix, Poly, Scalar,
};
use qpade_core::pade::pade_approx_series;
use qpade_core::qkernel::{f_prime_node, qpoch, ParamSet};
use qpade_core::qrt::{horizontal_closed, sample_config, vertical_closed, Pencil, Variant};
use qpade_core::weyl::{apply, Generator, WeylState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

/// `q` away from 0 and ±1 so small Pochhammer products stay nonzero generically.
fn base_q() -> impl Strategy<Value = Scalar> {
    nonzero().prop_filter("q != ±1", |q| !q.is_one() && *q != -Scalar::one())
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 0..=max_len).prop_map(Poly::new)
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(), n * n).prop_map(move |v| Matrix::new(n, n, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_text_roundtrip(s in scalar()) {
        prop_assert_eq!(parse_scalar(&fmt_scalar(&s)).unwrap(), s);
    }

    #[test]
    fn division_reconstructs(a in poly(7), b in poly(4)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divide(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn product_divides_exactly(a in poly(5), b in poly(5)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), Some(a));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(5), b in poly(5), x in scalar()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn lagrange_hits_every_node(values in prop::collection::vec(scalar(), 1..6), shift in scalar()) {
        let nodes: Vec<Scalar> = (0..values.len()).map(|i| &shift + ratio(i as i64, 3)).collect();
        let p = Poly::lagrange(&nodes, &values).unwrap();
        prop_assert!(p.degree().map_or(0, |d| d + 1) <= values.len());
        for (x, y) in nodes.iter().zip(&values) {
            prop_assert_eq!(&p.eval(x), y);
        }
    }

    #[test]
    fn solve_then_multiply(m in matrix(4), rhs in prop::collection::vec(scalar(), 4)) {
        match solve_linear(&m, &rhs) {
            Ok(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), rhs),
            Err(_) => prop_assert!(det_exact(&m).unwrap().is_zero()),
        }
    }

    #[test]
    fn determinant_row_operations(m in matrix(3), c in nonzero()) {
        let d = det_exact(&m).unwrap();
        let swapped = Matrix::from_fn(3, 3, |i, j| m.get([1, 0, 2][i], j).clone());
        prop_assert_eq!(det_exact(&swapped).unwrap(), -d.clone());
        let scaled = Matrix::from_fn(3, 3, |i, j| if i == 0 { m.get(i, j) * &c } else { m.get(i, j).clone() });
        prop_assert_eq!(det_exact(&scaled).unwrap(), d * &c);
    }

    #[test]
    fn nullspace_vectors_are_annihilated(v in prop::collection::vec(scalar(), 12)) {
        let m = Matrix::new(3, 4, v).unwrap();
        for k in nullspace(&m) {
            prop_assert!(m.mul_vec(&k).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pochhammer_splits(z in scalar(), q in base_q(), j in 0usize..5, k in 0usize..5) {
        let qj = (0..j).fold(Scalar::one(), |acc, _| acc * &q);
        prop_assert_eq!(qpoch(&z, j + k, &q), qpoch(&z, j, &q) * qpoch(&(qj * &z), k, &q));
    }

    #[test]
    fn f_prime_matches_product(q in base_q(), big_n in 0usize..6, s_frac in 0.0f64..1.0) {
        prop_assume!(ParamSet::new(q.clone(), [Scalar::one(), Scalar::one(), Scalar::one(), Scalar::one()], big_n, 0).is_ok());
        let s = ((big_n + 1) as f64 * s_frac) as usize;
        let pw = |k: usize| (0..k).fold(Scalar::one(), |acc, _| acc * &q);
        let direct: Scalar = (0..=big_n).filter(|&i| i != s).map(|i| pw(s) - pw(i)).product();
        prop_assert_eq!(f_prime_node(s, big_n, &q).unwrap(), direct);
    }

    #[test]
    fn series_pade_matches_to_order(series in prop::collection::vec(scalar(), 6), m in 0usize..3, n in 0usize..3) {
        let big_n = m + n;
        if let Ok(pair) = pade_approx_series(&series, m, n) {
            let resid = &(&Poly::new(series.clone()) * &pair.q).truncate(big_n + 1) - &pair.p;
            prop_assert!(resid.is_zero());
            prop_assert!(!matches!(pair.p.degree(), Some(d) if d > m));
            prop_assert!(!matches!(pair.q.degree(), Some(d) if d > n));
        }
    }

    #[test]
    fn weyl_reflections_are_involutions(b in prop::collection::vec(nonzero(), 8), f in nonzero(), g in nonzero(), i in 0u8..=6) {
        let st = WeylState::new(b.try_into().unwrap(), f, g).unwrap();
        if let Ok(once) = apply(Generator::S(i), &st) {
            if let Ok(twice) = apply(Generator::S(i), &once) {
                prop_assert_eq!(twice, st);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn qrt_switches_match_closed_forms(seed in any::<u64>(), e6 in any::<bool>()) {
        let variant = if e6 { Variant::E6 } else { Variant::Qp6 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Ok((cfg, x0, y0)) = sample_config(&mut rng, variant) else { return Ok(()) };
        let pencil = Pencil::new(&cfg).unwrap();
        let (Ok(x1), Ok(closed)) = (pencil.horizontal_switch(&x0, &y0), horizontal_closed(&cfg, &x0, &y0)) else {
            return Ok(());
        };
        prop_assert_eq!(&x1, &closed);
        let (Ok(y1), Ok(closed)) = (pencil.vertical_switch(&x1, &y0), vertical_closed(&cfg, &x1, &y0)) else {
            return Ok(());
        };
        prop_assert_eq!(&y1, &closed);
        prop_assert_eq!(pencil.lambda_of(&x1, &y1).unwrap(), pencil.lambda_of(&x0, &y0).unwrap());
    }
}
