//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num::{BigInt, BigRational, One, Zero};

use umbra::exact::{parse_rational, Poly, Rational};
use umbra::model::{
    build_bessel, build_by_name, build_heat, build_lower_factorial, build_monomials,
    build_upper_factorial, catalog, BesselParams,
};
use umbra::numeric::{
    cosine_transform, hankel_intertwining_check, hankel_transform, heat_covariant, linspace,
    little_bessel_j, poisson_intertwining_check, poisson_transform, QuadratureSpec, ScalarFn,
    DEFAULT_STEP,
};
use umbra::transform::{check_biorthogonal, check_transmutation_intertwining, check_w0};
use umbra::translation::{binomial_check, character_check, generalized_translate};
use umbra::weyl::sl2::{metaplectic_check, metaplectic_closed_form};
use umbra::weyl::{
    composition_check_formal, generic_sl2_ladder, group_law_check, metaplectic_sequences,
    weyl_relation_check, LadderOutcome,
};
use umbra::{verify_model, UmbralModel, VerificationReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const N: usize = 16;
const BESSEL_NUS: [&str; 4] = ["1", "2", "5/2", "3"];

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn require(report: &VerificationReport) -> Result<(), String> {
    if report.passed() {
        Ok(())
    } else {
        Err(format!("{report}"))
    }
}

fn err(e: umbra::UmbraError) -> String {
    e.to_string()
}

fn full_catalog(n: usize) -> Result<Vec<UmbralModel>, String> {
    catalog(n, &BESSEL_NUS).map_err(err)
}

fn ladder_axioms() -> Outcome {
    let models = full_catalog(N)?;
    for m in &models {
        for r in verify_model(m).all() {
            require(r)?;
        }
    }
    Ok(format!("{} models, 3 checks each, N={N}", models.len()))
}

fn binomial_identity() -> Outcome {
    for m in [
        build_monomials(N),
        build_lower_factorial(N),
        build_upper_factorial(N),
    ] {
        let m = m.map_err(err)?;
        for n in 0..=N {
            require(&binomial_check(&m, n).map_err(err)?)?;
        }
    }
    Ok(format!("monomial, lower/upper factorial, n<={N}"))
}

fn covariant_transform() -> Outcome {
    let models = full_catalog(N)?;
    for m in &models {
        require(&check_w0(m).map_err(err)?)?;
    }
    Ok(format!("{} models, n<={N}", models.len()))
}

fn biorthogonality() -> Outcome {
    let models = full_catalog(N)?;
    for m in &models {
        require(&check_biorthogonal(m).map_err(err)?)?;
    }
    Ok(format!("{} models, k,n<={N}", models.len()))
}

fn transmutations() -> Outcome {
    let models = full_catalog(N)?;
    let mut pairs = 0;
    for a in &models {
        for b in &models {
            if a.parity == b.parity && a.label() != b.label() {
                require(&check_transmutation_intertwining(a, b).map_err(err)?)?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn heat_translation() -> Outcome {
    let heat = build_heat(6).map_err(err)?;
    let cap = heat.poly_cap();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for k in 1..=6 {
        let f = Poly::monomial(cap, 2 * k, Rational::one());
        for y in [q("1"), q("1/2"), q("-3")] {
            let got = generalized_translate(&heat, &y, &f).map_err(err)?;
            // (t+y)^n + (t−y)^n expanded directly from binomial coefficients
            let n = 2 * k;
            let mut coeffs = vec![Rational::zero(); cap + 1];
            let mut binom = BigInt::one();
            for (j, slot) in coeffs.iter_mut().enumerate().take(n + 1) {
                let yj = num::pow(y.clone(), n - j);
                let sign = if (n - j) % 2 == 0 { 1 } else { -1 };
                *slot = Rational::from_integer(binom.clone())
                    * (&yj + &yj * Rational::from_integer(sign.into()))
                    * &half;
                binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
            }
            let want = Poly::from_coeffs(cap, coeffs).map_err(err)?;
            if got != want {
                return Err(format!("t^{n}, y={y}: got {got}, want {want}"));
            }
        }
    }
    Ok("t^2..t^12, y in {1, 1/2, -3}".into())
}

fn character_property() -> Outcome {
    let mut models = vec![
        build_monomials(N).map_err(err)?,
        build_heat(N).map_err(err)?,
    ];
    for nu in ["2", "5/2"] {
        models.push(build_bessel(N, BesselParams::new(q(nu)).map_err(err)?).map_err(err)?);
    }
    for m in &models {
        require(&character_check(m, 10).map_err(err)?)?;
    }
    Ok("monomial, heat, bessel 2 and 5/2 to order 10".into())
}

fn bessel_sinc() -> Outcome {
    let mut worst: f64 = 0.0;
    for lam in [0.25f64, 1.0, 4.0] {
        for t in linspace(0.1, 10.0, 50) {
            let z = lam.sqrt() * t;
            let got = little_bessel_j(2.0, lam, t).map_err(err)?;
            worst = worst.max((got - z.sin() / z).abs());
        }
    }
    if worst <= 1e-12 {
        Ok(format!("max error {worst:.2e}"))
    } else {
        Err(format!("max error {worst:.2e} > 1e-12"))
    }
}

fn poisson_operator() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst_one: f64 = 0.0;
    for nu in [1.0, 2.0, 3.0, 3.5] {
        for x in linspace(0.25, 5.0, 11) {
            worst_one = worst_one
                .max((poisson_transform(nu, &ScalarFn::one(), x, &spec).map_err(err)? - 1.0).abs());
        }
    }
    if worst_one > 1e-10 {
        return Err(format!("|P1 - 1| = {worst_one:.2e}"));
    }
    let grid = linspace(0.5, 5.0, 20);
    let mut worst_cos: f64 = 0.0;
    for &x in &grid {
        let got = poisson_transform(2.0, &ScalarFn::cos(), x, &spec).map_err(err)?;
        worst_cos = worst_cos.max((got - x.sin() / x).abs());
    }
    if worst_cos > 1e-8 {
        return Err(format!("|P cos - sinc| = {worst_cos:.2e}"));
    }
    let report = poisson_intertwining_check(
        2.0,
        &ScalarFn::cos(),
        &grid,
        &QuadratureSpec::fixed(24, 8),
        DEFAULT_STEP,
        1e-6,
    )
    .map_err(err)?;
    if !report.passed(1e-6) {
        return Err(format!("no direction within 1e-6: {}", report.to_json()));
    }
    Ok(format!(
        "|P1-1| {worst_one:.1e}, |Pcos-sinc| {worst_cos:.1e}, holds: {} ({:.1e})",
        report.direction_holding.as_deref().unwrap_or("?"),
        report.max_residual
    ))
}

fn hankel() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for lam in [0.25, 1.0, 4.0] {
        let got = hankel_transform(2.0, &ScalarFn::exp_neg(), lam, &spec).map_err(err)?;
        worst = worst.max((got - 2.0 / (1.0 + lam).powi(2)).abs());
    }
    if worst > 1e-6 {
        return Err(format!("closed form error {worst:.2e}"));
    }
    let mut residual: f64 = 0.0;
    for nu in [2.0, 3.0] {
        let r = hankel_intertwining_check(
            nu,
            &ScalarFn::bump(0.5, 3.0),
            &[0.25, 1.0, 4.0],
            &spec.with_tolerance(1e-11),
        )
        .map_err(err)?;
        if !r.passed(1e-6) {
            return Err(format!("bump intertwining nu={nu}: {}", r.to_json()));
        }
        residual = residual.max(r.max_residual);
    }
    Ok(format!(
        "closed form {worst:.1e}, bump residual {residual:.1e}"
    ))
}

fn heat_kernel() -> Outcome {
    let spec = QuadratureSpec::default();
    let heat = build_heat(4).map_err(err)?;
    let mut worst: f64 = 0.0;
    for n in 0..=4 {
        let f = ScalarFn::polynomial(heat.p(n));
        for u in [0.5f64, 1.0, 2.0] {
            let want = u.powi(n as i32) / (1..=n).map(|k| k as f64).product::<f64>();
            worst = worst.max((heat_covariant(&f, u, &spec).map_err(err)? - want).abs());
        }
    }
    let mut worst_cos: f64 = 0.0;
    for v in [0.0f64, 1.0, 4.0] {
        let got = cosine_transform(&ScalarFn::gauss(), v, &spec).map_err(err)?;
        worst_cos = worst_cos.max((got - std::f64::consts::PI.sqrt() * (-v / 4.0).exp()).abs());
    }
    if worst <= 1e-8 && worst_cos <= 1e-8 {
        Ok(format!("moments {worst:.1e}, cosine {worst_cos:.1e}"))
    } else {
        Err(format!("moments {worst:.2e}, cosine {worst_cos:.2e}"))
    }
}

fn heisenberg() -> Outcome {
    let (order, degree) = (8, 4);
    for name in ["monomial", "heat"] {
        let m = build_by_name(name, degree + order, None).map_err(err)?;
        require(&group_law_check(&m, order, degree).map_err(err)?)?;
        require(&weyl_relation_check(&m, order, degree).map_err(err)?)?;
        require(&composition_check_formal(&m, order, degree).map_err(err)?)?;
    }
    Ok("monomial, heat; M=8, d=4, N_work=12".into())
}

fn metaplectic() -> Outcome {
    let models = full_catalog(32)?;
    for m in &models {
        require(&metaplectic_check(m, 24).map_err(err)?)?;
        let (a, b, c) = metaplectic_sequences(m).map_err(err)?;
        match generic_sl2_ladder(&a, &b, &c).map_err(err)? {
            LadderOutcome::Closed(s, _) => {
                if s.constants() != (q("4"), q("-2"), q("2")) {
                    return Err(format!(
                        "{}: induced constants {:?}",
                        m.label(),
                        s.constants()
                    ));
                }
            }
            LadderOutcome::Open(r) => {
                return Err(format!("{}: induced ladder open: {r}", m.label()))
            }
        }
    }
    let (a, mut b, c) = metaplectic_closed_form(12);
    b[5] += Rational::one();
    let located = match generic_sl2_ladder(&a, &b, &c).map_err(err)? {
        LadderOutcome::Open(r) => r.first_failure.clone(),
        LadderOutcome::Closed(..) => None,
    };
    match located.as_deref() {
        Some("n=5") => Ok(format!(
            "{} models at cap 32; perturbation located at n=5",
            models.len()
        )),
        other => Err(format!("perturbed sequence not located: {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("ladder axioms", ladder_axioms),
        ("binomial identity", binomial_identity),
        ("covariant transform", covariant_transform),
        ("bi-orthogonality", biorthogonality),
        ("transmutation intertwining", transmutations),
        ("heat generalized translation", heat_translation),
        ("character property", character_property),
        ("bessel nu=2 closed form", bessel_sinc),
        ("poisson operator", poisson_operator),
        ("hankel transform", hankel),
        ("heat-kernel covariant transform", heat_kernel),
        ("heisenberg structure", heisenberg),
        ("sl(2) metaplectic", metaplectic),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
