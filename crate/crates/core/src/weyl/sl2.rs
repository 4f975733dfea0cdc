//! `sl(2)` ladders: the metaplectic triple built from a Heisenberg ladder,
//! and closure of generic diagonal ladders.

use num::{One, Zero};

use crate::error::{Result, UmbraError};
use crate::exact::{format_rational, int, ratio, LinearOp, Poly, Rational};
use crate::model::UmbralModel;
use crate::report::VerificationReport;
use crate::transform::dual_functionals;

/// Operators `{Lower₂, Raise₂, Z}` with
/// `[Lower₂, Raise₂] = λ Z`, `[Z, Lower₂] = λ₋ Lower₂`, `[Z, Raise₂] = λ₊ Raise₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Structure {
    pub lower2: LinearOp,
    pub raise2: LinearOp,
    pub z: LinearOp,
    pub lambda: Rational,
    pub lambda_minus: Rational,
    pub lambda_plus: Rational,
}

impl Sl2Structure {
    pub fn constants(&self) -> (Rational, Rational, Rational) {
        (
            self.lambda.clone(),
            self.lambda_minus.clone(),
            self.lambda_plus.clone(),
        )
    }

    /// Checks the three brackets on `vectors`, each against its constant.
    pub fn verify_on(
        &self,
        vectors: &[Poly],
        mut report: VerificationReport,
    ) -> Result<VerificationReport> {
        for (n, v) in vectors.iter().enumerate() {
            let l = self.lower2.apply(v)?;
            let r = self.raise2.apply(v)?;
            let z = self.z.apply(v)?;
            let bracket_lr = self.lower2.apply(&r)?.sub(&self.raise2.apply(&l)?)?;
            let bracket_zl = self.z.apply(&l)?.sub(&self.lower2.apply(&z)?)?;
            let bracket_zr = self.z.apply(&r)?.sub(&self.raise2.apply(&z)?)?;
            let failures = [
                (bracket_lr == z.scale(&self.lambda), "[L2,R2]"),
                (bracket_zl == l.scale(&self.lambda_minus), "[Z,L2]"),
                (bracket_zr == r.scale(&self.lambda_plus), "[Z,R2]"),
            ];
            if let Some((_, which)) = failures.iter().find(|(ok, _)| !ok) {
                report.fail_at(format!("{which} n={n}"));
                break;
            }
        }
        Ok(report
            .param("lambda", format_rational(&self.lambda))
            .param("lambda_minus", format_rational(&self.lambda_minus))
            .param("lambda_plus", format_rational(&self.lambda_plus)))
    }
}

/// `Lower₂ = L²`, `Raise₂ = R²`, `Z = RL + ½I`, with constants `(4, −2, 2)`
/// whenever `[L, R] = I`.
pub fn metaplectic(m: &UmbralModel) -> Sl2Structure {
    let l = &m.lower;
    let r = &m.raise;
    let cap = m.poly_cap();
    let z = r
        .compose(l)
        .and_then(|rl| rl.add(&LinearOp::identity(cap).scale(&ratio(1, 2))))
        .expect("model operators share the cap");
    Sl2Structure {
        lower2: l.compose(l).expect("same cap"),
        raise2: r.compose(r).expect("same cap"),
        z,
        lambda: int(4),
        lambda_minus: int(-2),
        lambda_plus: int(2),
    }
}

/// Verifies the metaplectic brackets on `p_0..p_max_index`
/// (`max_index ≤ N − 2` keeps `R² p_n` inside the cap).
pub fn metaplectic_check(m: &UmbralModel, max_index: usize) -> Result<VerificationReport> {
    if max_index + 2 > m.max_index() {
        return Err(UmbraError::CapShortfall {
            have: m.max_index(),
            need: max_index + 2,
        });
    }
    let s = metaplectic(m);
    let report = m.report("metaplectic").param("max_index", max_index);
    s.verify_on(&m.basis[..=max_index], report)
}

/// Diagonal data `(a, b, c)` of the metaplectic triple on the even nodes
/// `q_n = p_{2n}`, read off through the dual functionals. Fails if any
/// operator leaves the ladder (image not proportional to the expected node).
pub fn metaplectic_sequences(
    m: &UmbralModel,
) -> Result<(Vec<Rational>, Vec<Rational>, Vec<Rational>)> {
    let s = metaplectic(m);
    let duals = dual_functionals(m);
    let count = (m.max_index() - 2) / 2 + 1;
    let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
    let coordinate = |img: &Poly, target: Option<usize>| -> Result<Rational> {
        let mut value = Rational::zero();
        for (k, l) in duals.iter().enumerate() {
            let ck = l.pair(img)?;
            if Some(k) == target {
                value = ck;
            } else if !ck.is_zero() {
                return Err(UmbraError::Precondition(format!(
                    "metaplectic image has a component along p_{k} off the ladder"
                )));
            }
        }
        Ok(value)
    };
    for n in 0..count {
        let q = m.p(2 * n);
        a.push(coordinate(&s.lower2.apply(q)?, (n > 0).then(|| 2 * n - 2))?);
        b.push(coordinate(&s.raise2.apply(q)?, Some(2 * n + 2))?);
        c.push(coordinate(&s.z.apply(q)?, Some(2 * n))?);
    }
    Ok((a, b, c))
}

#[derive(Clone, Debug, PartialEq)]
pub enum LadderOutcome {
    Closed(Box<Sl2Structure>, VerificationReport),
    Open(VerificationReport),
}

impl LadderOutcome {
    pub fn report(&self) -> &VerificationReport {
        match self {
            LadderOutcome::Closed(_, r) | LadderOutcome::Open(r) => r,
        }
    }
}

/// Closure of `L p_n = a_n p_{n−1}`, `R p_n = b_n p_{n+1}`, `Z p_n = c_n p_n`
/// under the `sl(2)` brackets.
///
/// The constants are solved from the first index where each bracket is
/// informative, then every bracket is checked diagonally for `n ≤ N−1`:
///
/// * `b_n a_{n+1} − a_n b_{n−1} = λ c_n`
/// * `(c_{n−1} − c_n) a_n = λ₋ a_n`
/// * `(c_{n+1} − c_n) b_n = λ₊ b_n`
///
/// Operators in the returned structure act on index coordinates.
pub fn generic_sl2_ladder(a: &[Rational], b: &[Rational], c: &[Rational]) -> Result<LadderOutcome> {
    let len = a.len();
    if b.len() != len || c.len() != len {
        return Err(UmbraError::SizeMismatch {
            left: len,
            right: b.len().min(c.len()),
        });
    }
    if len < 2 {
        return Err(UmbraError::InvalidParameter(
            "ladder needs at least two nodes".into(),
        ));
    }
    let n_max = len - 1;
    let zero = Rational::zero();
    let b_prev = |n: usize| if n == 0 { &zero } else { &b[n - 1] };
    let bracket_lr = |n: usize| &b[n] * &a[n + 1] - &a[n] * b_prev(n);

    let lambda = (0..n_max)
        .find(|&n| !c[n].is_zero())
        .map_or_else(Rational::zero, |n| bracket_lr(n) / &c[n]);
    let lambda_minus = (1..=n_max)
        .find(|&n| !a[n].is_zero())
        .map_or_else(Rational::zero, |n| &c[n - 1] - &c[n]);
    let lambda_plus = (0..n_max)
        .find(|&n| !b[n].is_zero())
        .map_or_else(Rational::zero, |n| &c[n + 1] - &c[n]);

    let mut report = VerificationReport::new("sl2", "generic")
        .param("N", n_max)
        .param("lambda", format_rational(&lambda))
        .param("lambda_minus", format_rational(&lambda_minus))
        .param("lambda_plus", format_rational(&lambda_plus));
    for n in 0..n_max {
        let lr_ok = bracket_lr(n) == &lambda * &c[n];
        let zl_ok = n == 0 || (&c[n - 1] - &c[n]) * &a[n] == &lambda_minus * &a[n];
        let zr_ok = (&c[n + 1] - &c[n]) * &b[n] == &lambda_plus * &b[n];
        if !(lr_ok && zl_ok && zr_ok) {
            report.fail_at(format!("n={n}"));
            return Ok(LadderOutcome::Open(report));
        }
    }

    let lower2 = LinearOp::from_fn(n_max, |j| {
        if j == 0 {
            Poly::zero(n_max)
        } else {
            Poly::monomial(n_max, j - 1, a[j].clone())
        }
    });
    let raise2 = LinearOp::from_fn(n_max, |j| {
        if j == n_max {
            Poly::zero(n_max)
        } else {
            Poly::monomial(n_max, j + 1, b[j].clone())
        }
    });
    let z = LinearOp::from_fn(n_max, |j| Poly::monomial(n_max, j, c[j].clone()));
    let structure = Sl2Structure {
        lower2,
        raise2,
        z,
        lambda,
        lambda_minus,
        lambda_plus,
    };
    Ok(LadderOutcome::Closed(Box::new(structure), report))
}

/// Sequences induced on even nodes by the metaplectic triple, with the
/// model-independent closed forms `a_n = 1 (n ≥ 1)`, `b_n = (2n+1)(2n+2)`,
/// `c_n = 2n + ½`.
pub fn metaplectic_closed_form(count: usize) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let a = (0..count)
        .map(|n| {
            if n == 0 {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    let b = (0..count)
        .map(|n| int((2 * n as i64 + 1) * (2 * n as i64 + 2)))
        .collect();
    let c = (0..count)
        .map(|n| int(2 * n as i64) + ratio(1, 2))
        .collect();
    (a, b, c)
}
