//! Heisenberg group representation by ladder operators, checked as formal
//! power series in the group parameters.
//!
//! `e^{xR}` is an infinite series on polynomials, so nothing here evaluates
//! it at a number. Instead each identity is compared coefficient by
//! coefficient up to a total order `M`, acting on the basis vectors
//! `p_0..p_d`. A coefficient of order `≤ M` raises the basis index by at most
//! `M`, so a model with index cap `N_work ≥ d + M` reproduces every retained
//! coefficient without truncation.

pub mod formal;
pub mod kernel;
pub mod sl2;

use crate::error::{Result, UmbraError};
use crate::model::UmbralModel;
use crate::report::VerificationReport;
use formal::{FormalOpSeries, FormalPolySeries, FormalScalar, MultiIndex};

pub use kernel::{
    composition_check_formal, rep_of_kernel, twisted_convolve, Atom, DiscreteKernel, KernelOperator,
};
pub use sl2::{
    generic_sl2_ladder, metaplectic, metaplectic_sequences, LadderOutcome, Sl2Structure,
};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Fails unless the model's index cap covers `output_degree + order`.
pub fn require_work_cap(m: &UmbralModel, order: usize, output_degree: usize) -> Result<()> {
    let need = output_degree + order;
    if m.max_index() < need {
        return Err(UmbraError::CapShortfall {
            have: m.max_index(),
            need,
        });
    }
    Ok(())
}

/// `π(s,x,y) = e^{−s} e^{−y·lower} e^{−x·raise}` as a series in `(s, x, y)`.
pub fn heisenberg_rep_formal(
    m: &UmbralModel,
    order: usize,
    output_degree: usize,
) -> Result<FormalOpSeries> {
    require_work_cap(m, order, output_degree)?;
    let params = names(&["s", "x", "y"]);
    let var = |i| FormalScalar::param(params.clone(), order, i);
    let phase = FormalOpSeries::scalar(&var(0).neg().exp()?, m.poly_cap());
    let lowering = FormalOpSeries::exp_of(&var(2).neg(), &m.lower)?;
    let raising = FormalOpSeries::exp_of(&var(1).neg(), &m.raise)?;
    Ok(phase.compose(&lowering).compose(&raising))
}

/// Applies `π(s,x,y)` to a vector series.
fn apply_pi(
    m: &UmbralModel,
    v: &FormalPolySeries,
    s: &FormalScalar,
    x: &FormalScalar,
    y: &FormalScalar,
) -> Result<FormalPolySeries> {
    let out = v
        .apply_exp(&x.neg(), &m.raise)?
        .apply_exp(&y.neg(), &m.lower)?;
    Ok(out.scale_series(&s.neg().exp()?))
}

/// Runs `lhs(p_j) == rhs(p_j)` for `j ≤ output_degree` and records the
/// smallest multi-index where any basis vector disagrees.
fn compare_on_basis(
    m: &UmbralModel,
    mut report: VerificationReport,
    params: &[String],
    order: usize,
    output_degree: usize,
    mut lhs: impl FnMut(&FormalPolySeries) -> Result<FormalPolySeries>,
    mut rhs: impl FnMut(&FormalPolySeries) -> Result<FormalPolySeries>,
) -> Result<VerificationReport> {
    let mut worst: Option<MultiIndex> = None;
    for j in 0..=output_degree {
        let v = FormalPolySeries::vector(params.to_vec(), order, m.p(j).clone());
        if let Some(idx) = lhs(&v)?.first_difference(&rhs(&v)?) {
            if worst.as_ref().is_none_or(|w| idx < *w) {
                worst = Some(idx);
            }
        }
    }
    if let Some(idx) = worst {
        report.fail_at(idx.display_with(params));
    }
    Ok(report)
}

fn formal_report(
    m: &UmbralModel,
    check: &str,
    order: usize,
    output_degree: usize,
) -> VerificationReport {
    m.report(check)
        .param("order", order)
        .param("output_degree", output_degree)
        .param("N_work", m.max_index())
}

/// `π(s,x,y) π(s',x',y') = π(s+s'+xy', x+x', y+y')` order by order.
pub fn group_law_check(
    m: &UmbralModel,
    order: usize,
    output_degree: usize,
) -> Result<VerificationReport> {
    require_work_cap(m, order, output_degree)?;
    let params = names(&["s", "x", "y", "s'", "x'", "y'"]);
    let v: Vec<FormalScalar> = (0..6)
        .map(|i| FormalScalar::param(params.clone(), order, i))
        .collect();
    let (s, x, y, s2, x2, y2) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    let s_sum = s.add(s2).add(&x.mul(y2));
    let x_sum = x.add(x2);
    let y_sum = y.add(y2);
    let report = formal_report(m, "group-law", order, output_degree);
    compare_on_basis(
        m,
        report,
        &params,
        order,
        output_degree,
        |p| apply_pi(m, &apply_pi(m, p, s2, x2, y2)?, s, x, y),
        |p| apply_pi(m, p, &s_sum, &x_sum, &y_sum),
    )
}

/// `e^{y·lower} e^{x·raise} = e^{xy} e^{x·raise} e^{y·lower}` order by order.
pub fn weyl_relation_check(
    m: &UmbralModel,
    order: usize,
    output_degree: usize,
) -> Result<VerificationReport> {
    require_work_cap(m, order, output_degree)?;
    let params = names(&["x", "y"]);
    let x = FormalScalar::param(params.clone(), order, 0);
    let y = FormalScalar::param(params.clone(), order, 1);
    let phase = x.mul(&y).exp()?;
    let report = formal_report(m, "weyl", order, output_degree);
    compare_on_basis(
        m,
        report,
        &params,
        order,
        output_degree,
        |p| p.apply_exp(&x, &m.raise)?.apply_exp(&y, &m.lower),
        |p| {
            Ok(p.apply_exp(&y, &m.lower)?
                .apply_exp(&x, &m.raise)?
                .scale_series(&phase))
        },
    )
}
