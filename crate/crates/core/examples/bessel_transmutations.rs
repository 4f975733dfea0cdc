//! The little Bessel function and the two analytic transmutations of the
//! Bessel operator: the Poisson integral and the Hankel transform.

use umbra::numeric::{
    hankel_intertwining_check, hankel_transform, linspace, little_bessel_j,
    poisson_intertwining_check, poisson_transform, QuadratureSpec, ScalarFn, DEFAULT_STEP,
};

pub fn run_example() -> umbra::Result<()> {
    let q = QuadratureSpec::default();
    for t in [0.5, 2.0, 7.5] {
        let j = little_bessel_j(2.0, 1.0, t)?;
        println!("j(2, 1; {t}) = {j:.15}   sin t / t = {:.15}", t.sin() / t);
    }

    let x = 2.0;
    println!(
        "P^2 cos({x}) = {:.12}",
        poisson_transform(2.0, &ScalarFn::cos(), x, &q)?
    );

    let grid = linspace(0.5, 5.0, 10);
    let r = poisson_intertwining_check(
        2.0,
        &ScalarFn::cos(),
        &grid,
        &QuadratureSpec::fixed(24, 8),
        DEFAULT_STEP,
        1e-6,
    )?;
    println!(
        "Poisson intertwining: {} holds, residual {:e}",
        r.direction_holding.as_deref().unwrap_or("?"),
        r.max_residual
    );

    for lam in [0.25, 1.0, 4.0] {
        let h = hankel_transform(2.0, &ScalarFn::exp_neg(), lam, &q)?;
        println!(
            "H_2[e^-t]({lam}) = {h:.10}   2/(1+lam)^2 = {:.10}",
            2.0 / ((1.0 + lam) * (1.0 + lam))
        );
    }
    let r = hankel_intertwining_check(3.0, &ScalarFn::bump(1.0, 2.0), &[0.25, 1.0, 4.0], &q)?;
    println!(
        "Hankel intertwining residual for a bump: {:e}",
        r.max_residual
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
