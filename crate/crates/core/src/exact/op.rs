//! Linear operators and functionals on the truncated polynomial space.

use num::{One, Zero};

use super::poly::Poly;
use super::rational::{factorial, int, Rational};
use crate::error::{Result, UmbraError};
use crate::weyl::formal::{FormalOpSeries, MultiIndex};

/// Square matrix on coefficient vectors: column `j` is the image of `t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOp {
    cols: Vec<Poly>,
}

impl LinearOp {
    pub fn from_columns(cols: Vec<Poly>) -> Result<Self> {
        let cap = cols.len().checked_sub(1).ok_or_else(|| {
            UmbraError::InvalidParameter("operator needs at least one column".into())
        })?;
        if let Some(bad) = cols.iter().find(|c| c.cap() != cap) {
            return Err(UmbraError::CapMismatch {
                left: cap,
                right: bad.cap(),
            });
        }
        Ok(Self { cols })
    }

    /// Builds column `j` from `image(j)`.
    pub fn from_fn(cap: usize, image: impl FnMut(usize) -> Poly) -> Self {
        let cols: Vec<Poly> = (0..=cap).map(image).collect();
        debug_assert!(cols.iter().all(|c| c.cap() == cap));
        Self { cols }
    }

    pub fn identity(cap: usize) -> Self {
        Self::from_fn(cap, |j| Poly::monomial(cap, j, Rational::one()))
    }

    pub fn zero(cap: usize) -> Self {
        Self::from_fn(cap, |_| Poly::zero(cap))
    }

    /// `d/dt`.
    pub fn derivative(cap: usize) -> Self {
        Self::from_fn(cap, |j| {
            if j == 0 {
                Poly::zero(cap)
            } else {
                Poly::monomial(cap, j - 1, int(j as i64))
            }
        })
    }

    /// Multiplication by `t`; the image of `t^cap` is cut off.
    pub fn multiply_by_t(cap: usize) -> Self {
        Self::from_fn(cap, |j| {
            if j == cap {
                Poly::zero(cap)
            } else {
                Poly::monomial(cap, j + 1, Rational::one())
            }
        })
    }

    /// `f ↦ f(t + y)`.
    pub fn shift(cap: usize, y: &Rational) -> Self {
        Self::from_fn(cap, |j| {
            Poly::monomial(cap, j, Rational::one()).shift_substitute(y)
        })
    }

    pub fn cap(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn column(&self, j: usize) -> &Poly {
        &self.cols[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.cols[col].coeff(row)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.cap() != cap {
            return Err(UmbraError::CapMismatch {
                left: self.cap(),
                right: cap,
            });
        }
        Ok(())
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.check_cap(f.cap())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.cap());
        for (c, col) in f.coeffs().iter().zip(&self.cols) {
            out.add_scaled_assign(c, col);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOp) -> Result<LinearOp> {
        self.check_cap(other.cap())?;
        Ok(LinearOp {
            cols: other.cols.iter().map(|c| self.apply_unchecked(c)).collect(),
        })
    }

    /// `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &LinearOp) -> Result<LinearOp> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn add(&self, other: &LinearOp) -> Result<LinearOp> {
        self.check_cap(other.cap())?;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(LinearOp { cols })
    }

    pub fn sub(&self, other: &LinearOp) -> Result<LinearOp> {
        self.check_cap(other.cap())?;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(LinearOp { cols })
    }

    pub fn scale(&self, c: &Rational) -> LinearOp {
        LinearOp {
            cols: self.cols.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub(crate) fn add_scaled_assign(&mut self, c: &Rational, other: &LinearOp) {
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            a.add_scaled_assign(c, b);
        }
    }

    pub fn pow(&self, k: usize) -> LinearOp {
        let mut acc = LinearOp::identity(self.cap());
        for _ in 0..k {
            acc = self.compose(&acc).expect("same cap");
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Poly::is_zero)
    }

    /// True when every column `j` only has entries in rows `< j`.
    pub fn is_strictly_degree_lowering(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, c)| c.degree().is_none_or(|d| d < j))
    }

    /// `A^{cap+1} = 0`.
    pub fn is_nilpotent(&self) -> bool {
        if self.is_strictly_degree_lowering() {
            return true;
        }
        self.pow(self.cap() + 1).is_zero()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<LinearOp> {
        let n = self.cap() + 1;
        // row-major working copy [A | I]
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|r| (0..n).map(|c| self.entry(r, c)).collect())
            .collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(UmbraError::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &p;
                inv[col][c] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let da = &factor * &a[col][c];
                    a[r][c] -= da;
                    let di = &factor * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
        let cap = n - 1;
        Ok(LinearOp::from_fn(cap, |j| {
            Poly::from_coeffs(cap, (0..n).map(|r| inv[r][j].clone()).collect()).expect("fits")
        }))
    }
}

/// Row vector; pairs with a polynomial as `row · coeffs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    row: Vec<Rational>,
}

impl Functional {
    pub fn new(row: Vec<Rational>) -> Self {
        Self { row }
    }

    /// `f ↦ f(point)`.
    pub fn evaluation(cap: usize, point: &Rational) -> Self {
        let mut pow = Rational::one();
        let row = (0..=cap)
            .map(|_| {
                let v = pow.clone();
                pow *= point;
                v
            })
            .collect();
        Self { row }
    }

    pub fn row(&self) -> &[Rational] {
        &self.row
    }

    pub fn cap(&self) -> usize {
        self.row.len() - 1
    }

    pub fn pair(&self, f: &Poly) -> Result<Rational> {
        if f.cap() != self.cap() {
            return Err(UmbraError::CapMismatch {
                left: self.cap(),
                right: f.cap(),
            });
        }
        Ok(self
            .row
            .iter()
            .zip(f.coeffs())
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// The pulled-back functional `f ↦ ⟨self, A f⟩`.
    pub fn compose(&self, op: &LinearOp) -> Result<Functional> {
        let row = (0..=op.cap())
            .map(|j| self.pair(op.column(j)))
            .collect::<Result<_>>()?;
        Ok(Functional { row })
    }
}

/// `e^{yA} f = Σ_k y^k/k! A^k f` for nilpotent `A`; the sum is finite.
pub fn exp_lowering(op: &LinearOp, y: &Rational, f: &Poly) -> Result<Poly> {
    if op.cap() != f.cap() {
        return Err(UmbraError::CapMismatch {
            left: op.cap(),
            right: f.cap(),
        });
    }
    if !op.is_nilpotent() {
        return Err(UmbraError::NotNilpotent { cap: op.cap() });
    }
    let mut out = f.clone();
    let mut term = f.clone();
    let mut weight = Rational::one();
    for k in 1..=op.cap() + 1 {
        term = op.apply_unchecked(&term);
        if term.is_zero() {
            break;
        }
        weight = weight * y / int(k as i64);
        out.add_scaled_assign(&weight, &term);
    }
    Ok(out)
}

/// `e^{xA}` as a formal series in one parameter `x`: coefficient `A^k/k!` at
/// order `k ≤ order`.
pub fn exp_raising_formal(op: &LinearOp, order: usize) -> FormalOpSeries {
    let mut series = FormalOpSeries::new(vec!["x".to_string()], order);
    let mut power = LinearOp::identity(op.cap());
    for k in 0..=order {
        if k > 0 {
            power = op.compose(&power).expect("same cap");
        }
        let coeff = power.scale(&(Rational::one() / factorial(k)));
        series.insert(MultiIndex::new(vec![k as u32]), coeff);
    }
    series
}
