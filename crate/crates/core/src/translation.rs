//! Generalized translations `T^y f = Σ_k p_k(y) lower^k f`, the binomial
//! identity for binomial-type models, and the character property of the
//! generating function.

use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Result, UmbraError};
use crate::exact::{binomial, format_rational, Poly, Rational};
use crate::model::UmbralModel;
use crate::report::VerificationReport;

/// Coefficients `c[j][k]` of `t^j y^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<Rational>>,
}

impl BivariatePoly {
    pub fn zero(t_cap: usize, y_cap: usize) -> Self {
        Self {
            coeffs: vec![vec![Rational::zero(); y_cap + 1]; t_cap + 1],
        }
    }

    pub fn t_cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn y_cap(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeff(&self, j: usize, k: usize) -> &Rational {
        &self.coeffs[j][k]
    }

    /// `f(t + y)` expanded in both variables.
    pub fn shifted(f: &Poly) -> Self {
        let cap = f.cap();
        let mut out = Self::zero(cap, cap);
        for (n, a) in f.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for j in 0..=n {
                out.coeffs[j][n - j] += a * binomial(n, j);
            }
        }
        out
    }

    /// `g(y) · h(t)`.
    pub fn outer(h_t: &Poly, g_y: &Poly) -> Self {
        let mut out = Self::zero(h_t.cap(), g_y.cap());
        out.add_outer(&Rational::one(), h_t, g_y);
        out
    }

    fn add_outer(&mut self, scale: &Rational, h_t: &Poly, g_y: &Poly) {
        for (j, a) in h_t
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
        {
            let a = a * scale;
            for (k, b) in g_y
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                self.coeffs[j][k] += &a * b;
            }
        }
    }

    /// Substitutes a value for `y`.
    pub fn at_y(&self, y: &Rational) -> Poly {
        let cap = self.t_cap();
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .rev()
                    .fold(Rational::zero(), |acc, c| acc * y + c)
            })
            .collect();
        Poly::from_coeffs(cap, coeffs).expect("fits")
    }

    /// First `(j, k)` where the tables differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        for j in 0..=self.t_cap().max(other.t_cap()) {
            for k in 0..=self.y_cap().max(other.y_cap()) {
                let a = self.coeffs.get(j).and_then(|r| r.get(k));
                let b = other.coeffs.get(j).and_then(|r| r.get(k));
                let zero = Rational::zero();
                if a.unwrap_or(&zero) != b.unwrap_or(&zero) {
                    return Some((j, k));
                }
            }
        }
        None
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |v: &str, e: usize| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let mut first = true;
        for (j, row) in self.coeffs.iter().enumerate().rev() {
            for (k, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let vars: Vec<String> = [power("t", j), power("y", k)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect();
                let negative = c.is_negative();
                let magnitude = c.abs();
                let mut term = if vars.is_empty() || !magnitude.is_one() {
                    let mut parts = vec![format_rational(&magnitude)];
                    parts.extend(vars);
                    parts.join("*")
                } else {
                    vars.join("*")
                };
                if !magnitude.is_integer() && term.contains('*') {
                    term = format!(
                        "({})*{}",
                        format_rational(&magnitude),
                        term.split_once('*').unwrap().1
                    );
                }
                match (first, negative) {
                    (true, true) => write!(f, "-{term}")?,
                    (true, false) => write!(f, "{term}")?,
                    (false, true) => write!(f, " - {term}")?,
                    (false, false) => write!(f, " + {term}")?,
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn require_binomial_type(m: &UmbralModel) -> Result<()> {
    if !m.shift_invariant {
        return Err(UmbraError::NotBinomialType(
            "delta operator is not shift-invariant".into(),
        ));
    }
    if !m.vacuum_is_evaluation_at_zero() {
        return Err(UmbraError::NotBinomialType(
            "vacuum is not evaluation at 0".into(),
        ));
    }
    Ok(())
}

/// Compares `p_n(t+y)` with `Σ_{k≤n} p_{n−k}(y) p_k(t)` coefficient-wise.
pub fn binomial_check(m: &UmbralModel, n: usize) -> Result<VerificationReport> {
    require_binomial_type(m)?;
    if n > m.max_index() {
        return Err(UmbraError::InvalidParameter(format!(
            "index {n} exceeds model cap {}",
            m.max_index()
        )));
    }
    let lhs = BivariatePoly::shifted(m.p(n));
    let cap = m.poly_cap();
    let mut rhs = BivariatePoly::zero(cap, cap);
    for k in 0..=n {
        rhs.add_outer(&Rational::one(), m.p(k), m.p(n - k));
    }
    let mut report = m.report("binomial").param("n", n);
    if let Some((j, k)) = lhs.first_difference(&rhs) {
        report.fail_at(format!("t^{j} y^{k}"));
    }
    Ok(report)
}

/// `Σ_k p_k(y) lower^k f` with `y` kept symbolic.
pub fn translate_formal(m: &UmbralModel, f: &Poly) -> Result<BivariatePoly> {
    let cap = m.poly_cap();
    let mut out = BivariatePoly::zero(cap, cap);
    let mut current = f.clone();
    let mut k = 0;
    while !current.is_zero() {
        if k > m.max_index() {
            return Err(UmbraError::Precondition(format!(
                "lower^{k} f is nonzero beyond the basis of {}",
                m.label()
            )));
        }
        out.add_outer(&Rational::one(), &current, m.p(k));
        current = m.lower_poly(&current)?;
        k += 1;
    }
    Ok(out)
}

/// `T^y f = Σ_k p_k(y) lower^k f` at a rational `y`.
pub fn generalized_translate(m: &UmbralModel, y: &Rational, f: &Poly) -> Result<Poly> {
    if f.cap() != m.poly_cap() {
        return Err(UmbraError::CapMismatch {
            left: m.poly_cap(),
            right: f.cap(),
        });
    }
    let mut out = Poly::zero(f.cap());
    let mut current = f.clone();
    let mut k = 0;
    while !current.is_zero() {
        if k > m.max_index() {
            return Err(UmbraError::Precondition(format!(
                "lower^{k} f is nonzero beyond the basis of {}",
                m.label()
            )));
        }
        out.add_scaled_assign(&m.eval_basis(k, y), &current);
        current = m.lower_poly(&current)?;
        k += 1;
    }
    Ok(out)
}

/// For `F(λ,t) = Σ λ^k p_k(t)`, checks at every `λ`-order `k ≤ M`,
/// independently, that `T^y p_k = Σ_{a+b=k} p_a(y) p_b(t)`.
pub fn character_check(m: &UmbralModel, order: usize) -> Result<VerificationReport> {
    if order > m.max_index() {
        return Err(UmbraError::InvalidParameter(format!(
            "order {order} exceeds model cap {}",
            m.max_index()
        )));
    }
    let cap = m.poly_cap();
    let mut report = m.report("character").param("order", order);
    for k in 0..=order {
        let lhs = translate_formal(m, m.p(k))?;
        let mut rhs = BivariatePoly::zero(cap, cap);
        for a in 0..=k {
            rhs.add_outer(&Rational::one(), m.p(k - a), m.p(a));
        }
        if lhs != rhs {
            report.fail_at(format!("lambda^{k}"));
            break;
        }
    }
    Ok(report)
}

/// Checks `lower p_n = p_{n−1}` and `p_n(0) = δ_{0n}` for `n ≤ M`: the basis
/// solves the Delsarte eigenproblem of the delta operator.
pub fn delsarte_eigen_check(m: &UmbralModel, order: usize) -> Result<VerificationReport> {
    if !m.vacuum_is_evaluation_at_zero() {
        return Err(UmbraError::Precondition(format!(
            "{}: vacuum is not evaluation at 0",
            m.label()
        )));
    }
    if order > m.max_index() {
        return Err(UmbraError::InvalidParameter(format!(
            "order {order} exceeds model cap {}",
            m.max_index()
        )));
    }
    let zero_point = Rational::zero();
    let mut report = m.report("delsarte").param("order", order);
    for n in 0..=order {
        let want_lower = if n == 0 {
            Poly::zero(m.poly_cap())
        } else {
            m.p(n - 1).clone()
        };
        let want_at_zero = if n == 0 {
            Rational::one()
        } else {
            Rational::zero()
        };
        let ok =
            m.lower_poly(m.p(n))? == want_lower && m.eval_basis(n, &zero_point) == want_at_zero;
        if !ok {
            report.fail_at(format!("n={n}"));
            break;
        }
    }
    Ok(report)
}
