//! Dense polynomials over [`Rational`] with a fixed degree cap.

use std::fmt;

use num::{One, Signed, Zero};

use super::rational::{binomial, format_rational, Rational};
use crate::error::{Result, UmbraError};

/// Polynomial `Σ coeffs[k] t^k` with exactly `cap + 1` stored coefficients.
///
/// Trailing zeros are allowed; two polynomials with the same cap are equal
/// iff their coefficient vectors agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// Result of an operation that may drop terms above the degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated<T> {
    pub value: T,
    /// Set when a nonzero coefficient was discarded.
    pub truncated: bool,
}

impl<T> Truncated<T> {
    pub fn exact(value: T) -> Self {
        Self {
            value,
            truncated: false,
        }
    }
}

impl Poly {
    pub fn zero(cap: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(cap, 0, Rational::one())
    }

    /// `c · t^k`; `k` must not exceed `cap`.
    pub fn monomial(cap: usize, k: usize, c: Rational) -> Self {
        assert!(k <= cap, "monomial degree {k} exceeds cap {cap}");
        let mut p = Self::zero(cap);
        p.coeffs[k] = c;
        p
    }

    /// Builds from low-to-high coefficients, zero-padding to the cap.
    pub fn from_coeffs(cap: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() > cap + 1 {
            let excess = coeffs[cap + 1..].iter().any(|c| !c.is_zero());
            if excess {
                return Err(UmbraError::InvalidParameter(format!(
                    "polynomial of length {} does not fit degree cap {cap}",
                    coeffs.len()
                )));
            }
        }
        let mut p = Self::zero(cap);
        for (slot, c) in p.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        Ok(p)
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs_mut(&mut self) -> &mut [Rational] {
        &mut self.coeffs
    }

    /// Degree of the highest nonzero coefficient, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    fn check_cap(&self, other: &Poly) -> Result<()> {
        if self.cap() != other.cap() {
            return Err(UmbraError::CapMismatch {
                left: self.cap(),
                right: other.cap(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_cap(other)?;
        Ok(Poly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_cap(other)?;
        Ok(Poly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// `self += c · other`, caps assumed equal.
    pub(crate) fn add_scaled_assign(&mut self, c: &Rational, other: &Poly) {
        debug_assert_eq!(self.cap(), other.cap());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    /// Product truncated at the cap; the flag reports any dropped nonzero term.
    pub fn mul(&self, other: &Poly) -> Result<Truncated<Poly>> {
        self.check_cap(other)?;
        let cap = self.cap();
        let mut out = Poly::zero(cap);
        let mut truncated = false;
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                if i + j > cap {
                    truncated = true;
                } else {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(Truncated {
            value: out,
            truncated,
        })
    }

    /// `f(t + y)` expanded exactly; the degree never grows.
    pub fn shift_substitute(&self, y: &Rational) -> Poly {
        let cap = self.cap();
        let mut out = Poly::zero(cap);
        for (j, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            // (t + y)^j = Σ_k C(j,k) y^(j-k) t^k
            let mut y_pow = Rational::one();
            for k in (0..=j).rev() {
                out.coeffs[k] += a * binomial(j, k) * &y_pow;
                y_pow *= y;
            }
        }
        out
    }

    /// `f(c · t)`.
    pub fn dilate(&self, c: &Rational) -> Poly {
        let mut pow = Rational::one();
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a *= &pow;
            pow *= c;
        }
        out
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        use super::rational::to_f64;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        let mut out = Poly::zero(self.cap());
        for k in 1..self.coeffs.len() {
            out.coeffs[k - 1] = &self.coeffs[k] * Rational::from_integer(k.into());
        }
        out
    }

    /// Same polynomial with a different cap; fails if nonzero terms would be cut.
    pub fn with_cap(&self, cap: usize) -> Result<Poly> {
        Poly::from_coeffs(cap, self.coeffs.clone())
    }

    /// Renders in variable `var`, e.g. `t^2/2 - 1/2`.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{k}", self.var),
            };
            if k == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if mag.denom().is_one() {
                write!(f, "{}*{mono}", mag.numer())?;
            } else if mag.numer().is_one() {
                write!(f, "{mono}/{}", mag.denom())?;
            } else {
                write!(f, "{}*{mono}/{}", mag.numer(), mag.denom())?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}
