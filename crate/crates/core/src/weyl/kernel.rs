//! Finite atomic kernels on the `(x, y)` plane, their relative convolution
//! operators `π(k) = Σ value · e^{y·lower} e^{x·raise}`, and the twisted
//! convolution that composes them.
//!
//! An atom's value is `coef · exp(log_weight)`. The exponent stays a separate
//! exact quantity so products of atoms remain decidable.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::formal::{FormalPolySeries, FormalScalar};
use super::{compare_on_basis, formal_report, names, require_work_cap};
use crate::error::{Result, UmbraError};
use crate::exact::{
    exp_lowering, factorial, int, ratio, serde_str, to_f64, LinearOp, Poly, Rational,
};
use crate::model::UmbralModel;
use crate::report::VerificationReport;

/// Ring operations needed for atom coordinates: rationals for concrete
/// kernels, formal scalars when coordinates are symbolic.
pub trait KernelScalar: Clone + Ord + Debug {
    fn zero_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl KernelScalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl KernelScalar for FormalScalar {
    fn zero_like(&self) -> Self {
        FormalScalar::new(self.params().to_vec(), self.order())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom<S = Rational> {
    pub coef: Rational,
    pub log_weight: S,
    pub x: S,
    pub y: S,
}

#[derive(Serialize, Deserialize)]
struct AtomText {
    #[serde(with = "serde_str")]
    coef: Rational,
    #[serde(with = "serde_str")]
    log_weight: Rational,
    #[serde(with = "serde_str")]
    x: Rational,
    #[serde(with = "serde_str")]
    y: Rational,
}

/// Atoms sorted by `(x, y, log_weight)`; atoms sharing all three are merged
/// and zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteKernel<S = Rational> {
    atoms: Vec<Atom<S>>,
}

impl<S: KernelScalar> DiscreteKernel<S> {
    pub fn new(atoms: Vec<Atom<S>>) -> Self {
        let mut merged: BTreeMap<(S, S, S), Rational> = BTreeMap::new();
        for a in atoms {
            *merged
                .entry((a.x, a.y, a.log_weight))
                .or_insert_with(Rational::zero) += a.coef;
        }
        let atoms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((x, y, log_weight), coef)| Atom {
                coef,
                log_weight,
                x,
                y,
            })
            .collect();
        Self { atoms }
    }

    pub fn atoms(&self) -> &[Atom<S>] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

impl DiscreteKernel<Rational> {
    /// Unit mass at the origin; the identity for `♮`.
    pub fn delta() -> Self {
        Self::atom(
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn atom(coef: Rational, log_weight: Rational, x: Rational, y: Rational) -> Self {
        Self::new(vec![Atom {
            coef,
            log_weight,
            x,
            y,
        }])
    }

    /// Parses a JSON array of `{coef, log_weight, x, y}` with `"p/q"` strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<AtomText> = serde_json::from_str(text)
            .map_err(|e| UmbraError::InvalidParameter(format!("kernel JSON: {e}")))?;
        Ok(Self::new(
            raw.into_iter()
                .map(|a| Atom {
                    coef: a.coef,
                    log_weight: a.log_weight,
                    x: a.x,
                    y: a.y,
                })
                .collect(),
        ))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("atoms serialize")
    }
}

impl Serialize for DiscreteKernel<Rational> {
    fn serialize<Ser: serde::Serializer>(
        &self,
        s: Ser,
    ) -> std::result::Result<Ser::Ok, Ser::Error> {
        let text: Vec<AtomText> = self
            .atoms
            .iter()
            .map(|a| AtomText {
                coef: a.coef.clone(),
                log_weight: a.log_weight.clone(),
                x: a.x.clone(),
                y: a.y.clone(),
            })
            .collect();
        text.serialize(s)
    }
}

/// `k₁ ♮ k₂`: each atom pair lands at `(x₁+x₂, y₁+y₂)` with coefficient
/// product and log-weight `w₁ + w₂ − x₁y₂`, from reordering
/// `e^{x₁R} e^{y₂L} = e^{−x₁y₂} e^{y₂L} e^{x₁R}`.
pub fn twisted_convolve<S: KernelScalar>(
    k1: &DiscreteKernel<S>,
    k2: &DiscreteKernel<S>,
) -> DiscreteKernel<S> {
    let mut atoms = Vec::with_capacity(k1.atoms.len() * k2.atoms.len());
    for a in &k1.atoms {
        for b in &k2.atoms {
            atoms.push(Atom {
                coef: &a.coef * &b.coef,
                log_weight: a
                    .log_weight
                    .plus(&b.log_weight)
                    .plus(&a.x.times(&b.y).negated()),
                x: a.x.plus(&b.x),
                y: a.y.plus(&b.y),
            });
        }
    }
    DiscreteKernel::new(atoms)
}

/// `π(k)` grouped by exact log-weight: `Σ_w exp(w) · terms[w]`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelOperator {
    pub terms: BTreeMap<Rational, LinearOp>,
    /// Set when some `e^{x·raise}` series had to be cut off.
    pub truncated: bool,
}

impl KernelOperator {
    /// Dense `f64` matrix (row = output degree), evaluating the exponentials.
    pub fn to_f64_matrix(&self) -> Vec<Vec<f64>> {
        let cap = self.terms.values().next().map_or(0, LinearOp::cap);
        let mut out = vec![vec![0.0; cap + 1]; cap + 1];
        for (w, op) in &self.terms {
            let scale = to_f64(w).exp();
            for (r, row) in out.iter_mut().enumerate() {
                for (c, slot) in row.iter_mut().enumerate() {
                    *slot += scale * to_f64(&op.entry(r, c));
                }
            }
        }
        out
    }
}

/// `π(k) = Σ_atoms coef·e^{w} · e^{y·lower} e^{x·raise}`.
///
/// `e^{y·lower}` is exact (nilpotent). `e^{x·raise}` is summed to order
/// `n_work` and flagged as truncated whenever `x ≠ 0`.
pub fn rep_of_kernel(m: &UmbralModel, k: &DiscreteKernel, n_work: usize) -> Result<KernelOperator> {
    let cap = m.poly_cap();
    let mut terms: BTreeMap<Rational, LinearOp> = BTreeMap::new();
    let mut truncated = false;
    let raise_powers: Vec<LinearOp> = {
        let mut v = vec![LinearOp::identity(cap)];
        for i in 1..=n_work {
            let next = m.raise.compose(&v[i - 1])?;
            v.push(next);
        }
        v
    };
    for atom in k.atoms() {
        let raising = if atom.x.is_zero() {
            LinearOp::identity(cap)
        } else {
            truncated = true;
            let mut acc = LinearOp::zero(cap);
            let mut x_pow = Rational::one();
            for (i, p) in raise_powers.iter().enumerate() {
                acc.add_scaled_assign(&(&x_pow / factorial(i)), p);
                x_pow *= &atom.x;
            }
            acc
        };
        let lowering = if atom.y.is_zero() {
            LinearOp::identity(cap)
        } else {
            let cols = (0..=cap)
                .map(|j| exp_lowering(&m.lower, &atom.y, &Poly::monomial(cap, j, Rational::one())))
                .collect::<Result<Vec<_>>>()?;
            LinearOp::from_columns(cols)?
        };
        let op = lowering.compose(&raising)?;
        terms
            .entry(atom.log_weight.clone())
            .or_insert_with(|| LinearOp::zero(cap))
            .add_scaled_assign(&atom.coef, &op);
    }
    terms.retain(|_, op| !op.is_zero());
    Ok(KernelOperator { terms, truncated })
}

/// Applies `π(k)` for a kernel with formal coordinates to a vector series.
fn apply_formal_kernel(
    m: &UmbralModel,
    k: &DiscreteKernel<FormalScalar>,
    v: &FormalPolySeries,
) -> Result<FormalPolySeries> {
    let mut out = FormalPolySeries::new(v.params().to_vec(), v.order());
    for atom in k.atoms() {
        let term = v
            .apply_exp(&atom.x, &m.raise)?
            .apply_exp(&atom.y, &m.lower)?
            .scale_series(&atom.log_weight.exp()?.scale(&atom.coef));
        out = out.add(&term);
    }
    Ok(out)
}

/// Checks `π(k₁)π(k₂) = π(k₁ ♮ k₂)` for two-atom kernels whose coordinates
/// are the formal parameters `x1..y4`.
pub fn composition_check_formal(
    m: &UmbralModel,
    order: usize,
    output_degree: usize,
) -> Result<VerificationReport> {
    require_work_cap(m, order, output_degree)?;
    let params = names(&["x1", "y1", "x2", "y2", "x3", "y3", "x4", "y4"]);
    let var = |i| FormalScalar::param(params.clone(), order, i);
    let zero = FormalScalar::new(params.clone(), order);
    let atom = |coef: Rational, i: usize| Atom {
        coef,
        log_weight: zero.clone(),
        x: var(2 * i),
        y: var(2 * i + 1),
    };
    let k1 = DiscreteKernel::new(vec![atom(int(1), 0), atom(ratio(-1, 2), 1)]);
    let k2 = DiscreteKernel::new(vec![atom(ratio(3, 4), 2), atom(int(2), 3)]);
    let k12 = twisted_convolve(&k1, &k2);
    let report = formal_report(m, "twisted", order, output_degree);
    compare_on_basis(
        m,
        report,
        &params,
        order,
        output_degree,
        |p| apply_formal_kernel(m, &k1, &apply_formal_kernel(m, &k2, p)?),
        |p| apply_formal_kernel(m, &k12, p),
    )
}
