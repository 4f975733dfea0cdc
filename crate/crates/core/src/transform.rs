//! Covariant transform onto the monomial model, dual functionals, and umbral
//! maps between models.

use num::{One, Zero};

use crate::error::{Result, UmbraError};
use crate::exact::{factorial, Functional, Poly, Rational};
use crate::model::{Parity, UmbralModel};
use crate::report::VerificationReport;

/// `W₀f(u) = ⟨l₀, e^{u·lower} f⟩ = Σ_k u^k/k! ⟨l₀, lower^k f⟩`.
///
/// The series stops once `lower^k f` vanishes. The result is a polynomial in
/// `u` with the same cap as `f`; on the basis, `W₀ p_n = uⁿ/n!`.
pub fn covariant_w0(m: &UmbralModel, f: &Poly) -> Result<Poly> {
    let cap = f.cap();
    let mut out = Poly::zero(cap);
    let mut current = f.clone();
    for k in 0..=cap {
        if current.is_zero() {
            break;
        }
        let value = m.vacuum.pair(&current)?;
        out.coeffs_mut()[k] = value / factorial(k);
        current = m.lower_poly(&current)?;
    }
    Ok(out)
}

/// `l_0..l_N` with `l_{k+1} = l_k ∘ lower`, bi-orthogonal to the basis.
pub fn dual_functionals(m: &UmbralModel) -> Vec<Functional> {
    let mut out = Vec::with_capacity(m.basis.len());
    out.push(m.vacuum.clone());
    for k in 1..=m.max_index() {
        let next = out[k - 1]
            .compose(&m.lower)
            .expect("model operators share the cap");
        out.push(next);
    }
    out
}

fn check_parity(m: &UmbralModel, f: &Poly) -> Result<()> {
    if m.parity == Parity::EvenOnly && !f.is_even() {
        return Err(UmbraError::ParityMismatch(format!(
            "{} is spanned by even polynomials but the input has odd terms",
            m.label()
        )));
    }
    Ok(())
}

/// Coordinates `c_k = ⟨l_k, f⟩` with `f = Σ c_k p_k`.
pub fn expand_in_basis(m: &UmbralModel, f: &Poly) -> Result<Vec<Rational>> {
    check_parity(m, f)?;
    dual_functionals(m).iter().map(|l| l.pair(f)).collect()
}

/// `Σ c_k p_k`.
pub fn reassemble(m: &UmbralModel, coords: &[Rational]) -> Result<Poly> {
    if coords.len() > m.basis.len() {
        return Err(UmbraError::SizeMismatch {
            left: coords.len(),
            right: m.basis.len(),
        });
    }
    let mut out = Poly::zero(m.poly_cap());
    for (c, p) in coords.iter().zip(&m.basis) {
        out.add_scaled_assign(c, p);
    }
    Ok(out)
}

/// The transmutation `V = Σ_k |p_k^dst⟩⟨l_k^src|`, sending `p_k^src` to `p_k^dst`.
pub fn umbral_map(src: &UmbralModel, dst: &UmbralModel, f: &Poly) -> Result<Poly> {
    if src.max_index() != dst.max_index() {
        return Err(UmbraError::SizeMismatch {
            left: src.max_index(),
            right: dst.max_index(),
        });
    }
    reassemble(dst, &expand_in_basis(src, f)?)
}

/// Verifies `T∘lower_A = lower_B∘T` on `p_1..p_N` and `T∘raise_A = raise_B∘T`
/// on `p_0..p_{N−1}` for `T = umbral_map(src, dst)`.
pub fn check_transmutation_intertwining(
    src: &UmbralModel,
    dst: &UmbralModel,
) -> Result<VerificationReport> {
    if src.max_index() != dst.max_index() {
        return Err(UmbraError::SizeMismatch {
            left: src.max_index(),
            right: dst.max_index(),
        });
    }
    let mut report =
        VerificationReport::new("intertwining", format!("{}->{}", src.label(), dst.label()))
            .param("N", src.max_index());
    let n_max = src.max_index();
    for n in 0..=n_max {
        let p = src.p(n);
        let image = umbral_map(src, dst, p)?;
        if n >= 1 {
            let left = umbral_map(src, dst, &src.lower_poly(p)?)?;
            let right = dst.lower_poly(&image)?;
            if left != right {
                report.fail_at(format!("lower n={n}"));
                break;
            }
        }
        if n < n_max {
            let raised = src.raise_poly(p)?;
            let left = umbral_map(src, dst, &raised.value)?;
            let right = dst.raise_poly(&image)?;
            if raised.truncated || right.truncated {
                report.mark_inconclusive();
            } else if left != right.value {
                report.fail_at(format!("raise n={n}"));
                break;
            }
        }
    }
    Ok(report)
}

/// Coefficient table of `F(s,t) = Σ_k s^k p_k(t)` up to `s`-order `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingFunction {
    /// `rows[k]` is the coefficient of `s^k`, i.e. `p_k(t)`.
    pub rows: Vec<Poly>,
    /// Result of checking `lower_t F = s·F` row by row.
    pub eigen_check: VerificationReport,
}

impl GeneratingFunction {
    /// Coefficient of `s^k t^j`.
    pub fn coeff(&self, k: usize, j: usize) -> Rational {
        self.rows[k].coeff(j)
    }
}

pub fn generating_function(m: &UmbralModel, order: usize) -> Result<GeneratingFunction> {
    if order > m.max_index() {
        return Err(UmbraError::InvalidParameter(format!(
            "generating function order {order} exceeds model index cap {}",
            m.max_index()
        )));
    }
    let rows: Vec<Poly> = m.basis[..=order].to_vec();
    let mut eigen_check = m.report("generating-function").param("order", order);
    let zero = Poly::zero(m.poly_cap());
    for (k, row) in rows.iter().enumerate() {
        let lhs = m.lower_poly(row)?;
        let rhs = if k == 0 { &zero } else { &rows[k - 1] };
        if &lhs != rhs {
            eigen_check.fail_at(format!("s^{k}"));
            break;
        }
    }
    Ok(GeneratingFunction { rows, eigen_check })
}

/// Checks `W₀p_n = uⁿ/n!` for every basis index, then `W₀∘lower = d/du∘W₀`
/// on `p_1..p_N` and `W₀∘raise = u·W₀` on `p_0..p_{N−1}`.
pub fn check_w0(m: &UmbralModel) -> Result<VerificationReport> {
    let cap = m.poly_cap();
    let mut report = m.report("w0");
    for n in 0..=m.max_index() {
        let image = covariant_w0(m, m.p(n))?;
        if image != archetypal_basis(cap, n) {
            report.fail_at(format!("basis n={n}"));
            return Ok(report);
        }
        if n >= 1 && covariant_w0(m, &m.lower_poly(m.p(n))?)? != image.derivative() {
            report.fail_at(format!("lower n={n}"));
            return Ok(report);
        }
        if n < m.max_index() {
            let raised = m.raise_poly(m.p(n))?;
            let times_u = image.mul(&Poly::monomial(cap, 1, Rational::one()))?;
            if raised.truncated || times_u.truncated {
                report.mark_inconclusive();
            } else if covariant_w0(m, &raised.value)? != times_u.value {
                report.fail_at(format!("raise n={n}"));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Checks `⟨l_k, p_n⟩ = δ_{kn}` for all `k, n ≤ N`, and that expanding then
/// reassembling returns the input for every basis element and for every
/// monomial of matching parity in the span.
pub fn check_biorthogonal(m: &UmbralModel) -> Result<VerificationReport> {
    let duals = dual_functionals(m);
    let mut report = m.report("biorthogonal");
    for (k, l) in duals.iter().enumerate() {
        for n in 0..=m.max_index() {
            let want = if k == n {
                Rational::one()
            } else {
                Rational::zero()
            };
            if l.pair(m.p(n))? != want {
                report.fail_at(format!("k={k} n={n}"));
                return Ok(report);
            }
        }
    }
    let cap = m.poly_cap();
    let step = if m.parity == Parity::EvenOnly { 2 } else { 1 };
    let monomials = (0..=cap)
        .step_by(step)
        .map(|j| Poly::monomial(cap, j, Rational::one()));
    for (i, f) in m.basis.iter().cloned().chain(monomials).enumerate() {
        if reassemble(m, &expand_in_basis(m, &f)?)? != f {
            let what = if i <= m.max_index() {
                format!("round trip p_{i}")
            } else {
                format!("round trip t^{}", (i - m.max_index() - 1) * step)
            };
            report.fail_at(what);
            return Ok(report);
        }
    }
    Ok(report)
}

/// Evaluates `W₀f` at `u = 0`, which equals `⟨l₀, f⟩`.
pub fn vacuum_via_w0(m: &UmbralModel, f: &Poly) -> Result<Rational> {
    Ok(covariant_w0(m, f)?.eval(&Rational::zero()))
}

/// `uⁿ/n!` with the given cap.
pub fn archetypal_basis(cap: usize, n: usize) -> Poly {
    Poly::monomial(cap, n, Rational::one() / factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::model::*;

    fn poly(cap: usize, cs: &[i64]) -> Poly {
        Poly::from_coeffs(cap, cs.iter().map(|&c| int(c)).collect()).unwrap()
    }

    #[test]
    fn w0_on_factorial_basis() {
        let m = build_lower_factorial(6).unwrap();
        assert_eq!(
            covariant_w0(&m, m.p(2)).unwrap(),
            Poly::monomial(6, 2, ratio(1, 2))
        );
        assert_eq!(covariant_w0(&m, m.p(0)).unwrap(), Poly::one(6));
    }

    #[test]
    fn w0_on_heat_quartic() {
        let m = build_heat(4).unwrap();
        let f = Poly::monomial(8, 4, ratio(1, 24));
        assert_eq!(
            covariant_w0(&m, &f).unwrap(),
            Poly::monomial(8, 2, ratio(1, 2))
        );
    }

    #[test]
    fn monomial_duals_are_derivatives_at_zero() {
        let m = build_monomials(5).unwrap();
        let duals = dual_functionals(&m);
        for (k, l) in duals.iter().enumerate() {
            for j in 0..=5 {
                let want = if j == k { factorial(k) } else { int(0) };
                assert_eq!(l.pair(&Poly::monomial(5, j, int(1))).unwrap(), want);
            }
        }
    }

    #[test]
    fn hermite_duals() {
        let m = build_hermite(6).unwrap();
        let duals = dual_functionals(&m);
        assert_eq!(duals[2].pair(m.p(2)).unwrap(), int(1));
        assert_eq!(duals[2].pair(m.p(3)).unwrap(), int(0));
    }

    #[test]
    fn expansions() {
        let mono = build_monomials(4).unwrap();
        let t2 = Poly::monomial(4, 2, int(1));
        assert_eq!(
            expand_in_basis(&mono, &t2).unwrap(),
            vec![int(0), int(0), int(2), int(0), int(0)]
        );
        let lf = build_lower_factorial(4).unwrap();
        assert_eq!(
            expand_in_basis(&lf, &t2).unwrap(),
            vec![int(0), int(1), int(2), int(0), int(0)]
        );
        let e3 = expand_in_basis(&lf, lf.p(3)).unwrap();
        assert_eq!(e3, vec![int(0), int(0), int(0), int(1), int(0)]);
    }

    #[test]
    fn maps_between_models() {
        let mono = build_monomials(4).unwrap();
        let lf = build_lower_factorial(4).unwrap();
        let herm = build_hermite(4).unwrap();
        let t2 = Poly::monomial(4, 2, int(1));
        assert_eq!(umbral_map(&mono, &lf, &t2).unwrap(), poly(4, &[0, -1, 1]));
        assert_eq!(
            umbral_map(&mono, &herm, mono.p(2)).unwrap(),
            Poly::from_coeffs(4, vec![ratio(-1, 2), int(0), ratio(1, 2)]).unwrap()
        );
        assert_eq!(umbral_map(&lf, &lf, &t2).unwrap(), t2);
    }

    #[test]
    fn parity_guard() {
        let heat = build_heat(3).unwrap();
        let mono = build_monomials(3).unwrap();
        let odd = Poly::monomial(6, 3, int(1));
        assert!(matches!(
            umbral_map(&heat, &mono, &odd),
            Err(UmbraError::ParityMismatch(_))
        ));
        // all-degrees into even-only is fine index-wise
        let img = umbral_map(&mono, &heat, mono.p(2)).unwrap();
        assert_eq!(&img, heat.p(2));
    }

    #[test]
    fn intertwining_reports() {
        let mono = build_monomials(6).unwrap();
        let lf = build_lower_factorial(6).unwrap();
        let heat = build_heat(6).unwrap();
        assert!(check_transmutation_intertwining(&mono, &lf)
            .unwrap()
            .passed());
        assert!(check_transmutation_intertwining(&mono, &heat)
            .unwrap()
            .passed());
        let mut bad = lf.clone();
        bad.raise = bad.raise.scale(&int(2));
        let r = check_transmutation_intertwining(&mono, &bad).unwrap();
        assert_eq!(r.first_failure.as_deref(), Some("raise n=0"));
    }

    #[test]
    fn w0_and_biorthogonal_checks() {
        for m in catalog(6, &["1", "5/2"]).unwrap() {
            assert!(check_w0(&m).unwrap().passed(), "{m}");
            assert!(check_biorthogonal(&m).unwrap().passed(), "{m}");
        }
        let mut bad = build_hermite(5).unwrap();
        bad.basis[3] = bad.basis[3].scale(&int(2));
        assert_eq!(
            check_w0(&bad).unwrap().first_failure.as_deref(),
            Some("basis n=3")
        );
    }

    #[test]
    fn generating_tables() {
        let mono = build_monomials(5).unwrap();
        let g = generating_function(&mono, 5).unwrap();
        assert!(g.eigen_check.passed());
        for k in 0..=5 {
            assert_eq!(g.coeff(k, k), ratio(1, 1) / factorial(k));
        }
        let b = build_bessel(5, BesselParams::new(int(2)).unwrap()).unwrap();
        let g = generating_function(&b, 4).unwrap();
        let params = BesselParams::new(int(2)).unwrap();
        for k in 0..=4 {
            assert_eq!(g.coeff(k, 2 * k), ratio(1, 1) / params.normalizer(k));
        }
        assert!(generating_function(&b, 6).is_err());
    }
}
