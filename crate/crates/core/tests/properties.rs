use num::{BigInt, BigRational};
use proptest::prelude::*;

use umbra::exact::{exp_lowering, format_rational, parse_rational, LinearOp, Poly, Rational};
use umbra::model::{
    build_heat, build_hermite, build_lower_factorial, build_monomials, build_upper_factorial,
};
use umbra::numeric::{
    heat_covariant, little_bessel_derivatives, poisson_transform, QuadratureSpec, ScalarFn,
};
use umbra::transform::{covariant_w0, expand_in_basis, reassemble, umbral_map};
use umbra::translation::generalized_translate;
use umbra::weyl::{twisted_convolve, Atom, DiscreteKernel};

const CAP: usize = 6;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn poly(cap: usize, max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), max_degree + 1)
        .prop_map(move |c| Poly::from_coeffs(cap, c).unwrap())
}

fn even_poly(cap: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), cap / 2 + 1).prop_map(move |half| {
        let mut c = vec![Rational::from_integer(0.into()); cap + 1];
        for (i, v) in half.into_iter().enumerate() {
            c[2 * i] = v;
        }
        Poly::from_coeffs(cap, c).unwrap()
    })
}

fn model(i: usize) -> umbra::UmbralModel {
    match i {
        0 => build_monomials(CAP),
        1 => build_lower_factorial(CAP),
        2 => build_upper_factorial(CAP),
        _ => build_hermite(CAP),
    }
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn exp_lowering_is_a_one_parameter_group(f in poly(CAP, CAP), a in rational(), b in rational()) {
        let d = LinearOp::derivative(CAP);
        let two_steps = exp_lowering(&d, &a, &exp_lowering(&d, &b, &f).unwrap()).unwrap();
        prop_assert_eq!(two_steps, exp_lowering(&d, &(&a + &b), &f).unwrap());
    }

    #[test]
    fn delta_operators_commute_with_shifts(i in 0usize..3, f in poly(CAP, CAP), y in rational()) {
        let m = model(i);
        let s = LinearOp::shift(CAP, &y);
        let lhs = m.lower.apply(&s.apply(&f).unwrap()).unwrap();
        let rhs = s.apply(&m.lower.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_round_trip(i in 0usize..4, f in poly(CAP, CAP)) {
        let m = model(i);
        prop_assert_eq!(reassemble(&m, &expand_in_basis(&m, &f).unwrap()).unwrap(), f);
    }

    #[test]
    fn w0_intertwines_lowering_with_d_du(i in 0usize..4, f in poly(CAP, CAP)) {
        let m = model(i);
        let lhs = covariant_w0(&m, &m.lower_poly(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, covariant_w0(&m, &f).unwrap().derivative());
    }

    #[test]
    fn w0_on_heat_intertwines(f in even_poly(2 * CAP)) {
        let m = build_heat(CAP).unwrap();
        let lhs = covariant_w0(&m, &m.lower_poly(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, covariant_w0(&m, &f).unwrap().derivative());
    }

    #[test]
    fn umbral_maps_invert(i in 0usize..4, j in 0usize..4, f in poly(CAP, CAP)) {
        let (a, b) = (model(i), model(j));
        let there = umbral_map(&a, &b, &f).unwrap();
        prop_assert_eq!(umbral_map(&b, &a, &there).unwrap(), f);
    }

    #[test]
    fn heat_translations_compose_as_averages(f in even_poly(2 * CAP), y in rational(), z in rational()) {
        // T^y T^z = (T^{y+z} + T^{y−z}) / 2
        let m = build_heat(CAP).unwrap();
        let tt = |y: &Rational, f: &Poly| generalized_translate(&m, y, f).unwrap();
        let lhs = tt(&y, &tt(&z, &f));
        let half = BigRational::new(1.into(), 2.into());
        let rhs = tt(&(&y + &z), &f).add(&tt(&(&y - &z), &f)).unwrap().scale(&half);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_convolution_is_associative(atoms in prop::collection::vec((rational(), rational(), rational(), rational()), 3)) {
        let k: Vec<DiscreteKernel> = atoms
            .into_iter()
            .map(|(coef, log_weight, x, y)| {
                let coef = if coef == Rational::from_integer(0.into()) { Rational::from_integer(1.into()) } else { coef };
                DiscreteKernel::new(vec![Atom { coef, log_weight, x, y }])
            })
            .collect();
        let left = twisted_convolve(&twisted_convolve(&k[0], &k[1]), &k[2]);
        let right = twisted_convolve(&k[0], &twisted_convolve(&k[1], &k[2]));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn little_bessel_solves_its_ode(nu_i in 0usize..4, lam in 0.25f64..4.0, t in 0.1f64..10.0) {
        let nu = [1.0, 2.0, 2.5, 3.0][nu_i];
        let [j, d1, d2] = little_bessel_derivatives(nu, lam, t).unwrap();
        prop_assert!((d2 + nu / t * d1 + lam * j).abs() <= 1e-8);
    }

    #[test]
    fn poisson_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, x in 0.2f64..6.0, nu in 1.0f64..4.0) {
        let q = QuadratureSpec::default();
        let mix = ScalarFn::new("mix", umbra::numeric::Decay::None, move |t: f64| a * t.cos() + b);
        let lhs = poisson_transform(nu, &mix, x, &q).unwrap();
        let rhs = a * poisson_transform(nu, &ScalarFn::cos(), x, &q).unwrap() + b * poisson_transform(nu, &ScalarFn::one(), x, &q).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11);
    }

    #[test]
    fn poisson_preserves_constants(x in 0.0f64..8.0, nu in 1.0f64..6.0) {
        let p1 = poisson_transform(nu, &ScalarFn::one(), x, &QuadratureSpec::default()).unwrap();
        prop_assert!((p1 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn heat_covariant_matches_exact_w0(f in even_poly(8), u_i in 0usize..3) {
        let u = [0.5, 1.0, 2.0][u_i];
        let m = build_heat(4).unwrap();
        let exact = covariant_w0(&m, &f).unwrap().eval_f64(u);
        let numeric = heat_covariant(&ScalarFn::polynomial(&f), u, &QuadratureSpec::default()).unwrap();
        prop_assert!((numeric - exact).abs() <= 1e-8 * exact.abs().max(1.0), "{numeric} vs {exact}");
    }
}
