use std::fmt;
use std::sync::Arc;

use crate::error::{Result, UmbraError};
use crate::exact::{to_f64, Poly};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How fast `|f(t)|` falls off for `|t| ≥ 1`. A caller contract: tail
/// cutoffs are derived from it and never checked against `f`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    /// `f = 0` outside `[a, b]`.
    CompactSupport {
        a: f64,
        b: f64,
    },
    /// `|f(t)| ≤ e^{−rate·|t|}`.
    Exponential {
        rate: f64,
    },
    /// `|f(t)| ≤ scale·|t|^degree`; only a Gaussian weight tames it.
    PolynomialGrowth {
        degree: u32,
        scale: f64,
    },
    None,
}

/// A real function with a declared decay class and, optionally, its first
/// two derivatives.
#[derive(Clone)]
pub struct ScalarFn {
    name: String,
    decay: Decay,
    f: RealFn,
    derivs: Option<(RealFn, RealFn)>,
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFn")
            .field("name", &self.name)
            .field("decay", &self.decay)
            .field("derivatives", &self.derivs.is_some())
            .finish()
    }
}

impl ScalarFn {
    pub fn new(
        name: impl Into<String>,
        decay: Decay,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            decay,
            f: Arc::new(f),
            derivs: None,
        }
    }

    pub fn with_derivatives(
        mut self,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.derivs = Some((Arc::new(d1), Arc::new(d2)));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    /// `(f′, f″)`, or a precondition error naming the function.
    pub fn derivatives(&self) -> Result<(&RealFn, &RealFn)> {
        self.derivs.as_ref().map(|(a, b)| (a, b)).ok_or_else(|| {
            UmbraError::Precondition(format!("{} was given without derivatives", self.name))
        })
    }

    /// `f ≡ 0`.
    pub fn zero() -> Self {
        Self::new("zero", Decay::CompactSupport { a: 0.0, b: 0.0 }, |_| 0.0)
            .with_derivatives(|_| 0.0, |_| 0.0)
    }

    /// `f ≡ 1`.
    pub fn one() -> Self {
        Self::new(
            "one",
            Decay::PolynomialGrowth {
                degree: 0,
                scale: 1.0,
            },
            |_| 1.0,
        )
        .with_derivatives(|_| 0.0, |_| 0.0)
    }

    pub fn cos() -> Self {
        Self::new(
            "cos",
            Decay::PolynomialGrowth {
                degree: 0,
                scale: 1.0,
            },
            f64::cos,
        )
        .with_derivatives(|t| -t.sin(), |t| -t.cos())
    }

    /// `e^{−t}`; declared decay holds on the half-line.
    pub fn exp_neg() -> Self {
        Self::new("exp-neg", Decay::Exponential { rate: 1.0 }, |t: f64| {
            (-t).exp()
        })
        .with_derivatives(|t: f64| -(-t).exp(), |t: f64| (-t).exp())
    }

    /// `e^{−t²}`.
    pub fn gauss() -> Self {
        Self::new("gauss", Decay::Exponential { rate: 1.0 }, |t: f64| {
            (-t * t).exp()
        })
        .with_derivatives(
            |t: f64| -2.0 * t * (-t * t).exp(),
            |t: f64| (4.0 * t * t - 2.0) * (-t * t).exp(),
        )
    }

    /// `t·e^{−t²}`, odd.
    pub fn odd_gauss() -> Self {
        Self::new("odd-gauss", Decay::Exponential { rate: 1.0 }, |t: f64| {
            t * (-t * t).exp()
        })
        .with_derivatives(
            |t: f64| (1.0 - 2.0 * t * t) * (-t * t).exp(),
            |t: f64| (4.0 * t * t * t - 6.0 * t) * (-t * t).exp(),
        )
    }

    /// `exp(−1/((t−a)(b−t)))` on `(a, b)`, zero elsewhere.
    pub fn bump(a: f64, b: f64) -> Self {
        // Past this the value underflows; the guard keeps 0·∞ out of f″.
        const FLOOR: f64 = 1.0 / 700.0;
        let q = move |t: f64| (t - a) * (b - t);
        let dq = move |t: f64| a + b - 2.0 * t;
        let f = move |t: f64| {
            let q = q(t);
            if q <= FLOOR {
                0.0
            } else {
                (-1.0 / q).exp()
            }
        };
        let f1 = move |t: f64| {
            let qt = q(t);
            if qt <= FLOOR {
                0.0
            } else {
                dq(t) / (qt * qt) * (-1.0 / qt).exp()
            }
        };
        let f2 = move |t: f64| {
            let qt = q(t);
            if qt <= FLOOR {
                return 0.0;
            }
            let g1 = dq(t) / (qt * qt);
            let g2 = -2.0 / (qt * qt) - 2.0 * dq(t) * dq(t) / (qt * qt * qt);
            (g2 + g1 * g1) * (-1.0 / qt).exp()
        };
        Self::new(format!("bump[{a},{b}]"), Decay::CompactSupport { a, b }, f)
            .with_derivatives(f1, f2)
    }

    /// The polynomial `p` evaluated in `f64`, with exact derivatives.
    pub fn polynomial(p: &Poly) -> Self {
        let degree = p.degree().unwrap_or(0) as u32;
        let scale = p.coeffs().iter().map(|c| to_f64(c).abs()).sum::<f64>();
        let coeffs: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let c1: Vec<f64> = d1.coeffs().iter().map(to_f64).collect();
        let c2: Vec<f64> = d2.coeffs().iter().map(to_f64).collect();
        let horner = |c: Vec<f64>| move |t: f64| c.iter().rev().fold(0.0, |acc, a| acc * t + a);
        Self::new(
            format!("poly({p})"),
            Decay::PolynomialGrowth { degree, scale },
            horner(coeffs),
        )
        .with_derivatives(horner(c1), horner(c2))
    }

    /// Functions reachable by name from the command line.
    pub fn named(name: &str) -> Result<Self> {
        Ok(match name {
            "zero" => Self::zero(),
            "one" => Self::one(),
            "cos" => Self::cos(),
            "exp-neg" => Self::exp_neg(),
            "gauss" => Self::gauss(),
            "odd-gauss" => Self::odd_gauss(),
            "bump" => Self::bump(1.0, 2.0),
            other => {
                return Err(UmbraError::InvalidParameter(format!(
                    "unknown function '{other}' (expected one of {})",
                    NAMED_FUNCTIONS.join(", ")
                )))
            }
        })
    }
}

pub const NAMED_FUNCTIONS: &[&str] = &[
    "zero",
    "one",
    "cos",
    "exp-neg",
    "gauss",
    "odd-gauss",
    "bump",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn check_derivatives(f: &ScalarFn, points: &[f64]) {
        let (d1, d2) = f.derivatives().unwrap();
        let h = 1e-4;
        for &t in points {
            let fd1 = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
            let fd2 = (d1(t + h) - d1(t - h)) / (2.0 * h);
            assert!((fd1 - d1(t)).abs() < 1e-6, "{} f' at {t}", f.name());
            assert!((fd2 - d2(t)).abs() < 1e-6, "{} f'' at {t}", f.name());
        }
    }

    #[test]
    fn derivatives_match_differences() {
        let pts = [0.3, 1.2, 1.5, 1.9];
        for f in [
            ScalarFn::cos(),
            ScalarFn::gauss(),
            ScalarFn::odd_gauss(),
            ScalarFn::exp_neg(),
            ScalarFn::bump(1.0, 2.0),
        ] {
            check_derivatives(&f, &pts);
        }
        let p = Poly::from_coeffs(4, vec![int(1), int(0), ratio(-1, 2), int(0), int(3)]).unwrap();
        check_derivatives(&ScalarFn::polynomial(&p), &pts);
    }

    #[test]
    fn bump_vanishes_outside() {
        let b = ScalarFn::bump(1.0, 2.0);
        assert_eq!(b.eval(0.5), 0.0);
        assert_eq!(b.eval(1.0), 0.0);
        assert!(b.eval(1.5) > 0.0);
        let (_, d2) = b.derivatives().unwrap();
        assert!(d2(1.0 + 1e-9).is_finite());
    }

    #[test]
    fn names() {
        assert!(ScalarFn::named("gauss").is_ok());
        assert!(ScalarFn::named("tan").is_err());
        assert!(ScalarFn::new("plain", Decay::None, f64::sin)
            .derivatives()
            .is_err());
    }
}
