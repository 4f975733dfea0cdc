//! Concrete umbral models: a basis `p_0..p_N` with its ladder pair and
//! vacuum functional.
//!
//! Every model uses `ι = 1`, so the ladder satisfies
//!
//! * `lower p_n = p_{n-1}`, `lower p_0 = 0`,
//! * `raise p_n = (n+1) p_{n+1}`,
//! * `⟨vacuum, p_n⟩ = δ_{0n}`,
//!
//! and hence `[raise, lower] = -I`. Even-only models (heat, Bessel) place
//! basis index `n` at polynomial degree `2n`; generic code addresses basis
//! indices only.

use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Result, UmbraError};
use crate::exact::{
    format_rational, int, parse_rational, Functional, LinearOp, Poly, Rational, Truncated,
};
use crate::report::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    AllDegrees,
    EvenOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Monomial,
    LowerFactorial,
    UpperFactorial,
    Hermite,
    Heat,
    Bessel(BesselParams),
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Monomial => "monomial",
            ModelKind::LowerFactorial => "lower-factorial",
            ModelKind::UpperFactorial => "upper-factorial",
            ModelKind::Hermite => "hermite",
            ModelKind::Heat => "heat",
            ModelKind::Bessel(_) => "bessel",
        }
    }
}

/// Catalog names accepted by [`build_by_name`].
pub const MODEL_NAMES: [&str; 6] = [
    "monomial",
    "lower-factorial",
    "upper-factorial",
    "hermite",
    "heat",
    "bessel",
];

/// Index `ν > 0` of the singular Bessel operator `B_ν = d²/dt² + (ν/t) d/dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BesselParams {
    nu: Rational,
}

impl BesselParams {
    pub fn new(nu: Rational) -> Result<Self> {
        if !nu.is_positive() {
            return Err(UmbraError::InvalidParameter(format!(
                "Bessel index nu must be positive, got {}",
                format_rational(&nu)
            )));
        }
        Ok(Self { nu })
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    /// `c_n = Π_{k=1}^{n} 2k(2k+ν−1)`, so that `q_n = t^{2n}/c_n`.
    pub fn normalizer(&self, n: usize) -> Rational {
        (1..=n).fold(Rational::one(), |acc, k| {
            let k = int(k as i64);
            acc * (int(2) * &k) * (int(2) * &k + &self.nu - int(1))
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UmbralModel {
    pub name: String,
    pub kind: ModelKind,
    pub iota: Rational,
    /// `p_0..p_N` in monomial coordinates.
    pub basis: Vec<Poly>,
    pub lower: LinearOp,
    pub raise: LinearOp,
    pub vacuum: Functional,
    pub shift_invariant: bool,
    pub parity: Parity,
}

impl fmt::Display for UmbralModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModelKind::Bessel(p) => write!(f, "{}(nu={})", self.name, format_rational(p.nu())),
            _ => write!(f, "{}", self.name),
        }
    }
}

impl UmbralModel {
    /// Highest basis index `N`.
    pub fn max_index(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn poly_cap(&self) -> usize {
        self.lower.cap()
    }

    /// Polynomial degree of basis index `n`.
    pub fn degree_of_index(&self, n: usize) -> usize {
        n * self.index_step()
    }

    fn index_step(&self) -> usize {
        match self.parity {
            Parity::AllDegrees => 1,
            Parity::EvenOnly => 2,
        }
    }

    pub fn p(&self, n: usize) -> &Poly {
        &self.basis[n]
    }

    /// Applies the delta operator, refusing inputs outside its domain.
    pub fn lower_poly(&self, f: &Poly) -> Result<Poly> {
        if let ModelKind::Bessel(p) = &self.kind {
            if !f.coeff(1).is_zero() {
                return Err(UmbraError::Domain(format!(
                    "B_nu with nu={} maps t to nu/t, which is not a polynomial",
                    format_rational(p.nu())
                )));
            }
        }
        self.lower.apply(f)
    }

    /// Applies the raising operator; the flag is set when `f` reaches into
    /// the top of the cap where the image is cut off.
    pub fn raise_poly(&self, f: &Poly) -> Result<Truncated<Poly>> {
        let value = self.raise.apply(f)?;
        let cap = self.poly_cap();
        let step = self.index_step();
        let truncated = f.degree().is_some_and(|d| d + step > cap);
        Ok(Truncated { value, truncated })
    }

    /// `p_n(y)`.
    pub fn eval_basis(&self, n: usize, y: &Rational) -> Rational {
        self.basis[n].eval(y)
    }

    pub fn vacuum_is_evaluation_at_zero(&self) -> bool {
        self.vacuum == Functional::evaluation(self.poly_cap(), &Rational::zero())
    }

    /// Degree-dependent display name including parameters, e.g. `bessel(nu=5/2)`.
    pub fn label(&self) -> String {
        self.to_string()
    }

    pub(crate) fn report(&self, check: &str) -> VerificationReport {
        let mut r = VerificationReport::new(check, self.name.clone()).param("N", self.max_index());
        if let ModelKind::Bessel(p) = &self.kind {
            r = r.param("nu", format_rational(p.nu()));
        }
        r
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 1 {
        return Err(UmbraError::InvalidParameter("model needs N >= 1".into()));
    }
    Ok(())
}

/// Square basis matrix whose column `n` is `p_n`.
fn basis_matrix(basis: &[Poly]) -> LinearOp {
    LinearOp::from_columns(basis.to_vec()).expect("square basis")
}

/// Operator with `raise p_n = (n+1) p_{n+1}` in an all-degrees basis,
/// assembled as `B S B⁻¹`.
fn raise_from_basis(basis: &[Poly]) -> Result<LinearOp> {
    let n = basis.len() - 1;
    let b = basis_matrix(basis);
    let b_inv = b.inverse()?;
    let ladder = LinearOp::from_fn(n, |j| {
        if j == n {
            Poly::zero(n)
        } else {
            Poly::monomial(n, j + 1, int(j as i64 + 1))
        }
    });
    b.compose(&ladder)?.compose(&b_inv)
}

fn product_basis(n: usize, offset: impl Fn(usize) -> i64) -> Vec<Poly> {
    let mut basis = vec![Poly::one(n)];
    for k in 1..=n {
        // p_k = p_{k-1} · (t + offset(k-1)) / k
        let factor = Poly::from_coeffs(n, vec![int(offset(k - 1)), int(1)]).expect("fits");
        let next = basis[k - 1]
            .mul(&factor)
            .expect("same cap")
            .value
            .scale(&(Rational::one() / int(k as i64)));
        basis.push(next);
    }
    basis
}

/// `p_n = tⁿ/n!`, lower `d/dt`, raise `t·`, vacuum evaluation at 0.
pub fn build_monomials(n: usize) -> Result<UmbralModel> {
    check_size(n)?;
    let basis = (0..=n)
        .map(|k| Poly::monomial(n, k, Rational::one() / crate::exact::factorial(k)))
        .collect();
    Ok(UmbralModel {
        name: "monomial".into(),
        kind: ModelKind::Monomial,
        iota: Rational::one(),
        basis,
        lower: LinearOp::derivative(n),
        raise: LinearOp::multiply_by_t(n),
        vacuum: Functional::evaluation(n, &Rational::zero()),
        shift_invariant: true,
        parity: Parity::AllDegrees,
    })
}

fn build_factorial(n: usize, kind: ModelKind) -> Result<UmbralModel> {
    check_size(n)?;
    let (basis, lower) = match kind {
        // (t)_n / n!, forward difference
        ModelKind::LowerFactorial => (
            product_basis(n, |k| -(k as i64)),
            LinearOp::shift(n, &int(1)).sub(&LinearOp::identity(n))?,
        ),
        // t^(n) / n!, backward difference
        ModelKind::UpperFactorial => (
            product_basis(n, |k| k as i64),
            LinearOp::identity(n).sub(&LinearOp::shift(n, &int(-1)))?,
        ),
        _ => unreachable!("not a factorial model"),
    };
    let raise = raise_from_basis(&basis)?;
    Ok(UmbralModel {
        name: kind.name().into(),
        kind,
        iota: Rational::one(),
        basis,
        lower,
        raise,
        vacuum: Functional::evaluation(n, &Rational::zero()),
        shift_invariant: true,
        parity: Parity::AllDegrees,
    })
}

/// Falling factorials `t(t−1)…(t−n+1)/n!` with the forward difference.
pub fn build_lower_factorial(n: usize) -> Result<UmbralModel> {
    build_factorial(n, ModelKind::LowerFactorial)
}

/// Rising factorials `t(t+1)…(t+n−1)/n!` with the backward difference.
pub fn build_upper_factorial(n: usize) -> Result<UmbralModel> {
    build_factorial(n, ModelKind::UpperFactorial)
}

/// Probabilists' Hermite `He_n/n!`: lower `d/dt`, raise `t − d/dt`.
///
/// `He_n(0) ≠ 0` for even `n`, so the vacuum is the dual row of `p_0`
/// taken from the inverse basis matrix rather than evaluation at zero.
pub fn build_hermite(n: usize) -> Result<UmbralModel> {
    check_size(n)?;
    let lower = LinearOp::derivative(n);
    let raise = LinearOp::multiply_by_t(n).sub(&lower)?;
    let mut basis = vec![Poly::one(n)];
    for k in 1..=n {
        let next = raise
            .apply(&basis[k - 1])?
            .scale(&(Rational::one() / int(k as i64)));
        basis.push(next);
    }
    let inv = basis_matrix(&basis).inverse()?;
    let vacuum = Functional::new((0..=n).map(|j| inv.entry(0, j)).collect());
    Ok(UmbralModel {
        name: "hermite".into(),
        kind: ModelKind::Hermite,
        iota: Rational::one(),
        basis,
        lower,
        raise,
        vacuum,
        shift_invariant: true,
        parity: Parity::AllDegrees,
    })
}

/// Even monomials `t^{2n}/(2n)!` with lower `d²/dt²` and raise
/// `f ↦ (t/2) ∫_0^t f`. Polynomial cap is `2N`.
pub fn build_heat(n: usize) -> Result<UmbralModel> {
    check_size(n)?;
    let cap = 2 * n;
    let d = LinearOp::derivative(cap);
    let lower = d.compose(&d)?;
    // t^j ↦ t^{j+2} / (2(j+1))
    let raise = LinearOp::from_fn(cap, |j| {
        if j + 2 > cap {
            Poly::zero(cap)
        } else {
            Poly::monomial(cap, j + 2, Rational::one() / int(2 * (j as i64 + 1)))
        }
    });
    let basis = (0..=n)
        .map(|k| Poly::monomial(cap, 2 * k, Rational::one() / crate::exact::factorial(2 * k)))
        .collect();
    Ok(UmbralModel {
        name: "heat".into(),
        kind: ModelKind::Heat,
        iota: Rational::one(),
        basis,
        lower,
        raise,
        vacuum: Functional::evaluation(cap, &Rational::zero()),
        shift_invariant: false,
        parity: Parity::EvenOnly,
    })
}

/// Even sequence `q_n = t^{2n}/c_n` for the Bessel operator `B_ν`.
///
/// `B_ν t^j = j(j−1+ν) t^{j−2}`; the `j = 1` column is left empty and
/// [`UmbralModel::lower_poly`] rejects inputs with a linear term. The raise
/// acts as `t^j ↦ t^{j+2}/(2(j+ν+1))`.
pub fn build_bessel(n: usize, params: BesselParams) -> Result<UmbralModel> {
    check_size(n)?;
    let cap = 2 * n;
    let nu = params.nu().clone();
    let lower = LinearOp::from_fn(cap, |j| {
        if j < 2 {
            Poly::zero(cap)
        } else {
            let jj = int(j as i64);
            Poly::monomial(cap, j - 2, &jj * (&jj - int(1) + &nu))
        }
    });
    let raise = LinearOp::from_fn(cap, |j| {
        if j + 2 > cap {
            Poly::zero(cap)
        } else {
            Poly::monomial(
                cap,
                j + 2,
                Rational::one() / (int(2) * (int(j as i64 + 1) + &nu)),
            )
        }
    });
    let basis = (0..=n)
        .map(|k| Poly::monomial(cap, 2 * k, Rational::one() / params.normalizer(k)))
        .collect();
    Ok(UmbralModel {
        name: "bessel".into(),
        kind: ModelKind::Bessel(params),
        iota: Rational::one(),
        basis,
        lower,
        raise,
        vacuum: Functional::evaluation(cap, &Rational::zero()),
        shift_invariant: false,
        parity: Parity::EvenOnly,
    })
}

/// Builds a catalog model by CLI name; `nu` is required for `bessel`.
pub fn build_by_name(name: &str, n: usize, nu: Option<&Rational>) -> Result<UmbralModel> {
    match name {
        "monomial" | "monomials" => build_monomials(n),
        "lower-factorial" => build_lower_factorial(n),
        "upper-factorial" => build_upper_factorial(n),
        "hermite" => build_hermite(n),
        "heat" => build_heat(n),
        "bessel" => {
            let nu =
                nu.ok_or_else(|| UmbraError::InvalidParameter("bessel model needs --nu".into()))?;
            build_bessel(n, BesselParams::new(nu.clone())?)
        }
        other => Err(UmbraError::InvalidParameter(format!(
            "unknown model {other:?}"
        ))),
    }
}

/// Every catalog model at index cap `n`, with Bessel at each listed `ν`.
pub fn catalog(n: usize, bessel_nus: &[&str]) -> Result<Vec<UmbralModel>> {
    let mut models = vec![
        build_monomials(n)?,
        build_lower_factorial(n)?,
        build_upper_factorial(n)?,
        build_hermite(n)?,
        build_heat(n)?,
    ];
    for nu in bessel_nus {
        models.push(build_bessel(n, BesselParams::new(parse_rational(nu)?)?)?);
    }
    Ok(models)
}

/// Per-axiom results of [`verify_model`].
#[derive(Clone, Debug, PartialEq)]
pub struct ModelReport {
    /// Lowering and raising actions on every basis index.
    pub ladder: VerificationReport,
    /// `⟨vacuum, p_n⟩ = δ_{0n}`.
    pub vacuum: VerificationReport,
    /// `[raise, lower] = −I` on the basis.
    pub commutator: VerificationReport,
}

impl ModelReport {
    pub fn all(&self) -> [&VerificationReport; 3] {
        [&self.ladder, &self.vacuum, &self.commutator]
    }

    pub fn passed(&self) -> bool {
        self.all().iter().all(|r| r.passed())
    }
}

/// Checks the ladder axioms exactly.
///
/// Ladder failures are indexed by the higher basis index of the offending
/// pair: `lower p_n = p_{n−1}` and `raise p_{n−1} = n p_n` are both "at n".
/// Raising from `p_N` leaves the cap and is not checked.
pub fn verify_model(m: &UmbralModel) -> ModelReport {
    let n_max = m.max_index();
    let zero = Poly::zero(m.poly_cap());

    let mut ladder = m.report("ladder");
    for n in 0..=n_max {
        let lowered = m.lower_poly(m.p(n));
        let want_lower = if n == 0 {
            zero.clone()
        } else {
            m.p(n - 1).clone()
        };
        let lower_ok = lowered.is_ok_and(|p| p == want_lower);
        let raise_ok = n == 0 || {
            let raised = m.raise_poly(m.p(n - 1)).map(|r| r.value);
            raised.is_ok_and(|p| p == m.p(n).scale(&int(n as i64)))
        };
        if !(lower_ok && raise_ok) {
            ladder.fail_at(format!("n={n}"));
            break;
        }
    }

    let mut vacuum = m.report("vacuum");
    for n in 0..=n_max {
        let want = if n == 0 {
            Rational::one()
        } else {
            Rational::zero()
        };
        if m.vacuum.pair(m.p(n)).ok() != Some(want) {
            vacuum.fail_at(format!("n={n}"));
            break;
        }
    }

    let mut commutator = m.report("commutator");
    for n in 0..n_max {
        let p = m.p(n);
        let holds = (|| -> Result<bool> {
            let rl = m.raise_poly(&m.lower_poly(p)?)?;
            let lr = m.lower_poly(&m.raise_poly(p)?.value)?;
            Ok(rl.value.sub(&lr)? == p.neg())
        })();
        if !holds.unwrap_or(false) {
            commutator.fail_at(format!("n={n}"));
            break;
        }
    }

    ModelReport {
        ladder,
        vacuum,
        commutator,
    }
}
