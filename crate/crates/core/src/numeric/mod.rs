//! Floating-point transmutations: Poisson operator, Hankel transform,
//! heat-kernel covariant transform and cosine transform, with residual
//! checks of their intertwining relations.

pub mod bessel;
pub mod dd;
pub mod function;
pub mod quadrature;

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

pub use bessel::{little_bessel_derivatives, little_bessel_j, poisson_constant};
pub use function::{Decay, ScalarFn, NAMED_FUNCTIONS};
pub use quadrature::{integrate, integrate_seeded, QuadratureSpec, Rule};

use crate::error::{Result, UmbraError};

/// Default step for outer finite differences.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Largest half-line cutoff tried before giving up on a tail bound.
const MAX_CUTOFF: f64 = 1e4;

/// Residual report for numeric intertwining checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub grid: Vec<f64>,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction_holding: Option<String>,
}

impl ResidualReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Smallest `T ≥ start` with `∫_T^∞ E ≤ budget`, where `ln E` is concave and
/// `log_env(T) = (ln E(T), −(ln E)′(T))`. For such `E` the tail is at most
/// `E(T)/slope` once the slope is positive.
fn cutoff_for(start: f64, budget: f64, log_env: impl Fn(f64) -> (f64, f64)) -> Result<f64> {
    let mut t = start;
    while t <= MAX_CUTOFF {
        let (ln_e, slope) = log_env(t);
        if slope > 0.0 && ln_e - slope.ln() <= budget.ln() {
            return Ok(t);
        }
        t *= 1.25;
    }
    Err(UmbraError::TailBound(format!(
        "no cutoff below {MAX_CUTOFF} brings the tail under {budget:e}"
    )))
}

fn tail_budget(q: &QuadratureSpec) -> f64 {
    0.1 * q.abs_tol
}

/// Seeds for the adaptive rule: roughly one piece per unit length.
fn seeds(len: f64) -> usize {
    (len.abs().ceil() as usize).clamp(1, 512)
}

/// `P^ν f(x) = C(ν) ∫_0^{π/2} cos^{ν−1}θ f(x sin θ) dθ`, the Poisson
/// operator after the substitution `t = x sin θ`. Requires `ν ≥ 1`, `x > 0`.
pub fn poisson_transform(nu: f64, f: &ScalarFn, x: f64, q: &QuadratureSpec) -> Result<f64> {
    if !(nu >= 1.0 && nu.is_finite()) {
        return Err(UmbraError::Unsupported(format!(
            "Poisson operator for nu = {nu}: the substituted integrand is singular for nu < 1"
        )));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(UmbraError::InvalidParameter(format!(
            "Poisson operator needs x > 0, got {x}"
        )));
    }
    let v = integrate(
        |th: f64| th.cos().powf(nu - 1.0) * f.eval(x * th.sin()),
        0.0,
        FRAC_PI_2,
        q,
    )?;
    Ok(poisson_constant(nu) * v)
}

/// Richardson-extrapolated central differences `(g′, g″)` at `x` from steps
/// `h` and `h/2`.
fn outer_derivatives(mut g: impl FnMut(f64) -> Result<f64>, x: f64, h: f64) -> Result<(f64, f64)> {
    let g0 = g(x)?;
    let mut at = |h: f64| -> Result<(f64, f64)> {
        let (gp, gm) = (g(x + h)?, g(x - h)?);
        Ok(((gp - gm) / (2.0 * h), (gp - 2.0 * g0 + gm) / (h * h)))
    };
    let (d1h, d2h) = at(h)?;
    let (d1h2, d2h2) = at(0.5 * h)?;
    Ok(((4.0 * d1h2 - d1h) / 3.0, (4.0 * d2h2 - d2h) / 3.0))
}

/// `B_ν f(t) = f″(t) + (ν/t) f′(t)`, with the removable singularity at 0
/// filled by `(1+ν) f″(0)`.
fn bessel_operator(nu: f64, f: &ScalarFn) -> Result<ScalarFn> {
    let (d1, d2) = f.derivatives()?;
    let (d1, d2) = (d1.clone(), d2.clone());
    let decay = f.decay();
    Ok(ScalarFn::new(
        format!("B[{}]", f.name()),
        decay,
        move |t: f64| {
            if t.abs() < 1e-12 {
                (1.0 + nu) * d2(t)
            } else {
                d2(t) + nu / t * d1(t)
            }
        },
    ))
}

/// Measures both candidate intertwinings of the Poisson operator on `grid`:
///
/// * `r₁ = P(B_ν f) − (P f)″`, i.e. `P∘B_ν = d²∘P`
/// * `r₂ = B_ν(P f) − P(f″)`, i.e. `B_ν∘P = P∘d²`
///
/// Outer derivatives are finite differences, so `q` should be a rule that
/// is smooth in `x` (a fixed Gauss rule). A direction holds when its maximum
/// residual is at most `tol`; `max_residual` is the smaller of the two.
pub fn poisson_intertwining_check(
    nu: f64,
    f: &ScalarFn,
    grid: &[f64],
    q: &QuadratureSpec,
    h: f64,
    tol: f64,
) -> Result<ResidualReport> {
    let (_, d2) = f.derivatives()?;
    let d2 = d2.clone();
    let second = ScalarFn::new(format!("{}''", f.name()), f.decay(), move |t| d2(t));
    let bf = bessel_operator(nu, f)?;
    let p = |g: &ScalarFn, x: f64| poisson_transform(nu, g, x, q);
    let (mut r1, mut r2) = (0.0f64, 0.0f64);
    for &x in grid {
        let (g1, g2) = outer_derivatives(|s| p(f, s), x, h)?;
        r1 = r1.max((p(&bf, x)? - g2).abs());
        r2 = r2.max((g2 + nu / x * g1 - p(&second, x)?).abs());
    }
    let direction = match (r1 <= tol, r2 <= tol) {
        (true, true) => "both",
        (true, false) => "P∘B = d²∘P",
        (false, true) => "B∘P = P∘d²",
        (false, false) => "neither",
    };
    let mut params = BTreeMap::new();
    params.insert("nu".into(), nu.to_string());
    params.insert("f".into(), f.name().to_string());
    params.insert("h".into(), h.to_string());
    params.insert("tol".into(), tol.to_string());
    params.insert("max_r1".into(), format!("{r1:e}"));
    params.insert("max_r2".into(), format!("{r2:e}"));
    Ok(ResidualReport {
        check: "poisson-intertwining".into(),
        params,
        grid: grid.to_vec(),
        max_residual: r1.min(r2),
        direction_holding: Some(direction.into()),
    })
}

/// `H_ν f(λ) = ∫_0^∞ f(t) j(ν, λ; t) t^ν dt` over `[0, T]`, with `T` taken
/// from the decay class so the discarded tail is below `abs_tol/10`
/// (using `|j| ≤ 1`).
pub fn hankel_transform(nu: f64, f: &ScalarFn, lam: f64, q: &QuadratureSpec) -> Result<f64> {
    if !(lam > 0.0 && lam.is_finite()) {
        return Err(UmbraError::InvalidParameter(format!(
            "Hankel transform needs lambda > 0, got {lam}"
        )));
    }
    bessel::little_bessel_j(nu, lam, 0.0)?;
    let (a, b) = match (f.decay(), q.tail_cutoff) {
        (Decay::CompactSupport { a, b }, _) => (a.max(0.0), b.max(0.0)),
        (Decay::Exponential { .. }, Some(t)) => (0.0, t),
        (Decay::Exponential { rate }, None) => {
            let start = (20.0 / rate).max(20.0);
            let t = cutoff_for(start, tail_budget(q), |t| {
                (nu * t.ln() - rate * t, rate - nu / t)
            })?;
            (0.0, t)
        }
        (decay, _) => {
            return Err(UmbraError::Precondition(format!(
                "Hankel transform needs compact support or exponential decay, {} has {decay:?}",
                f.name()
            )))
        }
    };
    if a >= b {
        return Ok(0.0);
    }
    let mut failure = None;
    let v = integrate_seeded(
        |t: f64| {
            let j = bessel::little_bessel_j(nu, lam, t).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                0.0
            });
            f.eval(t) * j * t.powf(nu)
        },
        a,
        b,
        seeds((b - a) * lam.sqrt()),
        q,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// `max_λ |H_ν(B_ν f)(λ) + λ H_ν f(λ)|`, with `B_ν f` from the supplied
/// derivatives. `f` must have compact support inside `(0, ∞)`.
pub fn hankel_intertwining_check(
    nu: f64,
    f: &ScalarFn,
    lam_grid: &[f64],
    q: &QuadratureSpec,
) -> Result<ResidualReport> {
    match f.decay() {
        Decay::CompactSupport { a, b } if a > 0.0 || a >= b => {}
        d => {
            return Err(UmbraError::Precondition(format!(
                "Hankel intertwining needs support in (0, inf), {} has {d:?}",
                f.name()
            )))
        }
    }
    let bf = bessel_operator(nu, f)?;
    let mut worst = 0.0f64;
    for &lam in lam_grid {
        let r = hankel_transform(nu, &bf, lam, q)? + lam * hankel_transform(nu, f, lam, q)?;
        worst = worst.max(r.abs());
    }
    let mut params = BTreeMap::new();
    params.insert("nu".into(), nu.to_string());
    params.insert("f".into(), f.name().to_string());
    Ok(ResidualReport {
        check: "hankel-intertwining".into(),
        params,
        grid: lam_grid.to_vec(),
        max_residual: worst,
        direction_holding: None,
    })
}

/// Whole-line integration window for `f·w` where `w` is a weight whose
/// log-envelope (value, slope) at `T` is `weight_env(T)`.
fn whole_line_window(
    f: &ScalarFn,
    q: &QuadratureSpec,
    start: f64,
    weight_env: impl Fn(f64) -> (f64, f64),
    weight_name: &str,
) -> Result<(f64, f64)> {
    let env = |ln_f: f64, slope_f: f64, t: f64| {
        let (ln_w, slope_w) = weight_env(t);
        (ln_f + ln_w, slope_f + slope_w)
    };
    // two tails
    let budget = 0.5 * tail_budget(q);
    let t = match (f.decay(), q.tail_cutoff) {
        (Decay::CompactSupport { a, b }, _) => return Ok((a, b)),
        (_, Some(t)) => t,
        (Decay::Exponential { rate }, None) => {
            cutoff_for(start.max(20.0 / rate), budget, |t| env(-rate * t, rate, t))?
        }
        (Decay::PolynomialGrowth { degree, scale }, None) => {
            let d = degree as f64;
            cutoff_for(start, budget, |t| env(scale.ln() + d * t.ln(), -d / t, t))?
        }
        (Decay::None, None) => {
            return Err(UmbraError::TailBound(format!(
                "{} has no declared decay against {weight_name}",
                f.name()
            )))
        }
    };
    Ok((-t, t))
}

/// `(1/(2√(πu))) ∫ f(s) e^{−s²/(4u)} ds`, the heat-kernel covariant
/// transform at time `u > 0`.
pub fn heat_covariant(f: &ScalarFn, u: f64, q: &QuadratureSpec) -> Result<f64> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(UmbraError::InvalidParameter(format!(
            "heat transform needs u > 0, got {u}"
        )));
    }
    let a = 1.0 / (4.0 * u);
    let start = 20.0f64.max((80.0 * u).sqrt());
    let (lo, hi) = whole_line_window(
        f,
        q,
        start,
        |t| (-a * t * t, 2.0 * a * t),
        "the heat kernel",
    )?;
    let seeds = seeds((hi - lo) / (4.0 * u.sqrt()));
    let mut total = 0.0;
    // split at 0 so the Gaussian peak sits on a piece boundary
    for (x0, x1) in split_at_zero(lo, hi) {
        total += integrate_seeded(|s: f64| f.eval(s) * (-a * s * s).exp(), x0, x1, seeds, q)?;
    }
    Ok(total / (2.0 * (PI * u).sqrt()))
}

fn split_at_zero(lo: f64, hi: f64) -> Vec<(f64, f64)> {
    if lo < 0.0 && hi > 0.0 {
        vec![(lo, 0.0), (0.0, hi)]
    } else {
        vec![(lo, hi)]
    }
}

/// `∫ f(t) cos(√v t) dt` over the real line, `v ≥ 0`.
pub fn cosine_transform(f: &ScalarFn, v: f64, q: &QuadratureSpec) -> Result<f64> {
    if !(v >= 0.0 && v.is_finite()) {
        return Err(UmbraError::InvalidParameter(format!(
            "cosine transform needs v >= 0, got {v}"
        )));
    }
    if let Decay::PolynomialGrowth { .. } = f.decay() {
        return Err(UmbraError::TailBound(format!(
            "{} does not decay; the cosine integral diverges",
            f.name()
        )));
    }
    let (lo, hi) = whole_line_window(f, q, 20.0, |_| (0.0, 0.0), "cos")?;
    let w = v.sqrt();
    let seeds = seeds((hi - lo) * w.max(1.0) / 2.0);
    let mut total = 0.0;
    for (x0, x1) in split_at_zero(lo, hi) {
        total += integrate_seeded(|t: f64| f.eval(t) * (w * t).cos(), x0, x1, seeds, q)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn poisson_of_one() {
        for nu in [1.0, 2.0, 3.0, 3.5, 1.3] {
            for x in [0.5, 3.0] {
                let v = poisson_transform(nu, &ScalarFn::one(), x, &spec()).unwrap();
                assert!((v - 1.0).abs() < 1e-12, "nu={nu}: {v}");
            }
        }
        assert!(matches!(
            poisson_transform(0.5, &ScalarFn::one(), 1.0, &spec()),
            Err(UmbraError::Unsupported(_))
        ));
    }

    #[test]
    fn poisson_cos_is_sinc_for_nu_two() {
        for x in [0.5, 1.0, PI, 5.0] {
            let v = poisson_transform(2.0, &ScalarFn::cos(), x, &spec()).unwrap();
            assert!((v - x.sin() / x).abs() < 1e-12);
        }
    }

    #[test]
    fn poisson_cos_is_little_bessel() {
        for nu in [1.0, 3.0, 4.5] {
            let v = poisson_transform(nu, &ScalarFn::cos(), 2.5, &spec()).unwrap();
            assert!((v - little_bessel_j(nu, 1.0, 2.5).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn intertwining_direction_for_quadratic() {
        let p = crate::exact::Poly::monomial(2, 2, crate::exact::int(1));
        let f = ScalarFn::polynomial(&p);
        let r = poisson_intertwining_check(
            3.0,
            &f,
            &[1.0, 2.0],
            &QuadratureSpec::fixed(20, 4),
            DEFAULT_STEP,
            1e-6,
        )
        .unwrap();
        assert_eq!(r.direction_holding.as_deref(), Some("B∘P = P∘d²"));
        assert!(r.max_residual < 1e-6);
        // P³t² = x²/4, B₃ t² = 8: the other direction is off by 8 − 1/2
        assert!((r.params["max_r1"].parse::<f64>().unwrap() - 7.5).abs() < 1e-6);
    }

    #[test]
    fn hankel_exponential() {
        for lam in [0.25, 1.0, 4.0] {
            let v = hankel_transform(2.0, &ScalarFn::exp_neg(), lam, &spec()).unwrap();
            assert!(
                (v - 2.0 / ((1.0 + lam) * (1.0 + lam))).abs() < 1e-9,
                "lam={lam}: {v}"
            );
        }
        assert_eq!(
            hankel_transform(2.0, &ScalarFn::zero(), 1.0, &spec()).unwrap(),
            0.0
        );
        assert!(matches!(
            hankel_transform(2.0, &ScalarFn::cos(), 1.0, &spec()),
            Err(UmbraError::Precondition(_))
        ));
    }

    #[test]
    fn hankel_bump() {
        for nu in [2.0, 3.0] {
            let r = hankel_intertwining_check(
                nu,
                &ScalarFn::bump(1.0, 2.0),
                &[0.25, 1.0, 4.0],
                &spec(),
            )
            .unwrap();
            assert!(r.max_residual < 1e-9, "{r:?}");
        }
    }

    #[test]
    fn heat_moments() {
        let one = heat_covariant(&ScalarFn::one(), 0.7, &spec()).unwrap();
        assert!((one - 1.0).abs() < 1e-12);
        let quartic = ScalarFn::new(
            "t4/24",
            Decay::PolynomialGrowth {
                degree: 4,
                scale: 1.0,
            },
            |t: f64| t.powi(4) / 24.0,
        );
        assert!((heat_covariant(&quartic, 1.0, &spec()).unwrap() - 0.5).abs() < 1e-10);
        assert!(heat_covariant(&ScalarFn::new("x", Decay::None, |t| t), 1.0, &spec()).is_err());
    }

    #[test]
    fn cosine_gaussian() {
        for v in [0.0, 1.0, 4.0] {
            let c = cosine_transform(&ScalarFn::gauss(), v, &spec()).unwrap();
            assert!((c - PI.sqrt() * (-v / 4.0).exp()).abs() < 1e-11);
        }
        assert!(
            cosine_transform(&ScalarFn::odd_gauss(), 2.0, &spec())
                .unwrap()
                .abs()
                < 1e-14
        );
    }

    #[test]
    fn residual_json_shape() {
        let r = hankel_intertwining_check(2.0, &ScalarFn::zero(), &[1.0], &spec()).unwrap();
        let json = r.to_json();
        assert_eq!(json["max_residual"], 0.0);
        assert!(json.get("direction_holding").is_none());
        assert_eq!(linspace(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }
}
