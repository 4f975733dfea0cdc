//! Truncated multivariate formal power series in named parameters.
//!
//! Coefficients can be scalars, polynomials, or operators. All products
//! drop terms above the total-order cap, so every retained coefficient is
//! exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Result, UmbraError};
use crate::exact::{int, LinearOp, Poly, Rational};

/// Exponent vector over the series parameters. Ordered by total degree,
/// then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Renders as `x^1 y'^1`, or `1` for the zero index.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        struct D<'a>(&'a MultiIndex, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut any = false;
                for (e, name) in self.0 .0.iter().zip(self.1) {
                    if *e > 0 {
                        if any {
                            write!(f, " ")?;
                        }
                        write!(f, "{name}^{e}")?;
                        any = true;
                    }
                }
                if !any {
                    write!(f, "1")?;
                }
                Ok(())
            }
        }
        D(self, names)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Anything that can sit in a series slot.
pub trait Coefficient: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

impl Coefficient for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_scaled_assign(&Rational::one(), other);
    }
}

impl Coefficient for LinearOp {
    fn is_zero(&self) -> bool {
        LinearOp::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_scaled_assign(&Rational::one(), other);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Formal<C> {
    params: Vec<String>,
    order: usize,
    terms: BTreeMap<MultiIndex, C>,
}

/// Series with operator coefficients.
pub type FormalOpSeries = Formal<LinearOp>;
/// Series with polynomial coefficients (an operator series applied to a vector).
pub type FormalPolySeries = Formal<Poly>;
/// Scalar series; also the symbolic coordinates of formal kernels.
pub type FormalScalar = Formal<Rational>;

impl<C: Coefficient> Formal<C> {
    pub fn new(params: Vec<String>, order: usize) -> Self {
        Self {
            params,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, idx: &MultiIndex) -> Option<&C> {
        self.terms.get(idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    /// Adds `c` into slot `idx`; ignored above the order cap.
    pub fn insert(&mut self, idx: MultiIndex, c: C) {
        assert_eq!(idx.0.len(), self.params.len(), "multi-index arity");
        if idx.total() > self.order {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(slot) => {
                slot.add_assign(&c);
                if slot.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None if !c.is_zero() => {
                self.terms.insert(idx, c);
            }
            None => {}
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    fn check_compatible<D>(&self, other: &Formal<D>) {
        assert_eq!(
            self.params, other.params,
            "series over different parameters"
        );
        assert_eq!(self.order, other.order, "series with different order caps");
    }

    /// Cauchy product with coefficient rule `f`, truncated at the order cap.
    pub fn mul_with<D, E: Coefficient>(
        &self,
        other: &Formal<D>,
        mut f: impl FnMut(&C, &D) -> E,
    ) -> Formal<E> {
        self.check_compatible(other);
        let mut out = Formal::new(self.params.clone(), self.order);
        for (i, a) in &self.terms {
            let room = self.order - i.total();
            for (j, b) in other.terms.iter().take_while(|(j, _)| j.total() <= room) {
                out.insert(i.add(j), f(a, b));
            }
        }
        out
    }

    /// First multi-index (in graded order) where the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<MultiIndex> {
        self.check_compatible(other);
        let mut keys: Vec<&MultiIndex> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .find(|k| self.terms.get(*k) != other.terms.get(*k))
            .cloned()
    }

    pub fn map<E: Coefficient>(&self, mut f: impl FnMut(&C) -> E) -> Formal<E> {
        let mut out = Formal::new(self.params.clone(), self.order);
        for (k, v) in &self.terms {
            out.insert(k.clone(), f(v));
        }
        out
    }
}

impl FormalScalar {
    pub fn constant(params: Vec<String>, order: usize, c: Rational) -> Self {
        let n = params.len();
        let mut s = Self::new(params, order);
        s.insert(MultiIndex::zeros(n), c);
        s
    }

    /// The bare parameter `params[i]`.
    pub fn param(params: Vec<String>, order: usize, i: usize) -> Self {
        let n = params.len();
        let mut s = Self::new(params, order);
        s.insert(MultiIndex::unit(n, i), Rational::one());
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|v| v * c)
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&MultiIndex::zeros(self.params.len()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Powers `1, P, P²/2!, …, P^M/M!` for `P` without constant term.
    fn exp_terms(&self) -> Result<Vec<FormalScalar>> {
        if !Zero::is_zero(&self.constant_term()) {
            return Err(UmbraError::InvalidParameter(
                "formal exponent must have zero constant term".into(),
            ));
        }
        let mut terms = vec![FormalScalar::constant(
            self.params.clone(),
            self.order,
            Rational::one(),
        )];
        for k in 1..=self.order {
            let next = terms[k - 1]
                .mul(self)
                .scale(&(Rational::one() / int(k as i64)));
            if next.is_empty() {
                break;
            }
            terms.push(next);
        }
        Ok(terms)
    }

    /// `e^P` truncated at the order cap.
    pub fn exp(&self) -> Result<FormalScalar> {
        let terms = self.exp_terms()?;
        Ok(terms
            .iter()
            .skip(1)
            .fold(terms[0].clone(), |acc, t| acc.add(t)))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.total() == 0)
    }
}

impl FormalOpSeries {
    /// `e^{P·A} = Σ_k P^k/k! ⊗ A^k` for a scalar series `P` with zero
    /// constant term.
    pub fn exp_of(exponent: &FormalScalar, op: &LinearOp) -> Result<FormalOpSeries> {
        let powers = exponent.exp_terms()?;
        let mut out = FormalOpSeries::new(exponent.params.clone(), exponent.order);
        let mut op_pow = LinearOp::identity(op.cap());
        for (k, scalar) in powers.iter().enumerate() {
            if k > 0 {
                op_pow = op.compose(&op_pow)?;
            }
            for (idx, c) in &scalar.terms {
                out.insert(idx.clone(), op_pow.scale(c));
            }
        }
        Ok(out)
    }

    /// Series of the identity operator times a scalar series.
    pub fn scalar(s: &FormalScalar, cap: usize) -> FormalOpSeries {
        let id = LinearOp::identity(cap);
        s.map(|c| id.scale(c))
    }

    pub fn compose(&self, other: &FormalOpSeries) -> FormalOpSeries {
        self.mul_with(other, |a, b| a.compose(b).expect("series share a cap"))
    }

    pub fn apply(&self, f: &Poly) -> FormalPolySeries {
        self.map(|a| a.apply_unchecked(f))
    }
}

impl FormalPolySeries {
    /// The constant series `f`.
    pub fn vector(params: Vec<String>, order: usize, f: Poly) -> Self {
        let n = params.len();
        let mut s = Self::new(params, order);
        s.insert(MultiIndex::zeros(n), f);
        s
    }

    /// Applies `e^{P·A}` without materializing operator coefficients.
    pub fn apply_exp(&self, exponent: &FormalScalar, op: &LinearOp) -> Result<FormalPolySeries> {
        let powers = exponent.exp_terms()?;
        let mut out = FormalPolySeries::new(self.params.clone(), self.order);
        let mut current = self.clone();
        for (k, scalar) in powers.iter().enumerate() {
            if k > 0 {
                current = current.map(|p| op.apply_unchecked(p));
                if current.is_empty() {
                    break;
                }
            }
            let term = scalar.mul_with(&current, |c, p| p.scale(c));
            for (idx, p) in term.terms {
                out.insert(idx, p);
            }
        }
        Ok(out)
    }

    pub fn scale_series(&self, s: &FormalScalar) -> FormalPolySeries {
        s.mul_with(self, |c, p| p.scale(c))
    }
}
