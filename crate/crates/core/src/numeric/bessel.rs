//! The little Bessel function `j(ν, λ; t) = Σ (−λ)ⁿ t²ⁿ / c_n` with
//! `c_n = Π_{k≤n} 2k(2k+ν−1)`, the regular solution of `B_ν j = −λ j`,
//! `j(0) = 1`, where `B_ν = d²/dt² + (ν/t) d/dt`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use statrs::function::gamma::{gamma, ln_gamma};

use super::dd::Dd;
use super::quadrature::{integrate, QuadratureSpec};
use crate::error::{Result, UmbraError};

/// Below this `z = √λ·t` the double-double series is used.
const SERIES_LIMIT: f64 = 40.0;

/// `j(ν, λ; t)`. Requires `ν > 0`.
///
/// The alternating series is summed in double-double, which absorbs the
/// cancellation for `z ≲ 40`. Beyond that the Hankel expansion of `J_α`
/// with `α = (ν−1)/2` is used when `z` dominates `α²`, and the Poisson
/// integral otherwise.
pub fn little_bessel_j(nu: f64, lam: f64, t: f64) -> Result<f64> {
    check_nu(nu)?;
    let x = lam * t * t;
    if x <= SERIES_LIMIT * SERIES_LIMIT {
        return Ok(series(nu, lam, t)[0]);
    }
    let z = lam.sqrt() * t.abs();
    let alpha = 0.5 * (nu - 1.0);
    if z > 2.0 * alpha * alpha {
        Ok(hankel_asymptotic(alpha, z))
    } else {
        poisson_integral(nu, z)
    }
}

/// `(j, j′, j″)` in `t`, from the term-wise differentiated series.
pub fn little_bessel_derivatives(nu: f64, lam: f64, t: f64) -> Result<[f64; 3]> {
    check_nu(nu)?;
    Ok(series(nu, lam, t))
}

fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu.is_finite() {
        Ok(())
    } else {
        Err(UmbraError::InvalidParameter(format!(
            "nu must be positive, got {nu}"
        )))
    }
}

fn series(nu: f64, lam: f64, t: f64) -> [f64; 3] {
    if t == 0.0 {
        return [1.0, 0.0, -lam / (1.0 + nu)];
    }
    // x = λt² carried exactly to double-double
    let tt = Dd::prod(t, t);
    let x = tt * Dd::new(lam);
    let shift = Dd::new(nu) + Dd::new(-1.0);
    let mut term = Dd::ONE;
    let (mut s0, mut s1, mut s2) = (Dd::ONE, Dd::ZERO, Dd::ZERO);
    let mut n = 0u32;
    loop {
        n += 1;
        let two_n = 2.0 * n as f64;
        let denom = Dd::new(two_n) * (Dd::new(two_n) + shift);
        term = -(term * x) / denom;
        s0 = s0 + term;
        s1 = s1 + term * Dd::new(two_n);
        s2 = s2 + term * Dd::new(two_n * (two_n - 1.0));
        let small = term.abs().hi * two_n * two_n < 1e-22 * s0.abs().hi.max(1.0);
        if (small && x.abs().hi < denom.hi) || n > 100_000 {
            break;
        }
    }
    [s0.to_f64(), (s1 / Dd::new(t)).to_f64(), (s2 / tt).to_f64()]
}

/// `Γ(α+1)(z/2)^{−α} J_α(z)` from the large-argument expansion
/// `J_α(z) ~ √(2/πz)(P cos ω − Q sin ω)`, `ω = z − απ/2 − π/4`.
fn hankel_asymptotic(alpha: f64, z: f64) -> f64 {
    let mu = 4.0 * alpha * alpha;
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * z);
        if a.abs() >= last || a == 0.0 {
            break;
        }
        last = a.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * a;
        } else {
            p += sign * a;
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let omega = z - alpha * FRAC_PI_2 - FRAC_PI_4;
    let bessel_j = (2.0 / (PI * z)).sqrt() * (p * omega.cos() - q * omega.sin());
    let scale = (ln_gamma(alpha + 1.0) - alpha * (0.5 * z).ln()).exp();
    scale * bessel_j
}

/// Normalising constant `C(ν) = 2Γ((ν+1)/2) / (√π Γ(ν/2))` of the Poisson kernel.
pub fn poisson_constant(nu: f64) -> f64 {
    let ratio = if nu < 300.0 {
        gamma(0.5 * (nu + 1.0)) / gamma(0.5 * nu)
    } else {
        (ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(0.5 * nu)).exp()
    };
    2.0 * ratio / PI.sqrt()
}

/// `C(ν) ∫_0^{π/2} cos^{ν−1}θ cos(z sin θ) dθ`, valid for `ν ≥ 1`.
fn poisson_integral(nu: f64, z: f64) -> Result<f64> {
    let spec = QuadratureSpec {
        max_subdivisions: 20_000,
        ..QuadratureSpec::default()
    };
    let v = integrate(
        |th: f64| th.cos().powf(nu - 1.0) * (z * th.sin()).cos(),
        0.0,
        FRAC_PI_2,
        &spec,
    )?;
    Ok(poisson_constant(nu) * v)
}
