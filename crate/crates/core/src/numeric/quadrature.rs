//! Gauss–Kronrod (7, 15) adaptive integration and composite Gauss–Legendre.
//!
//! Both rules have a fixed evaluation and summation order, so results are
//! bitwise reproducible for a given spec.

use crate::error::{Result, UmbraError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rule {
    /// Bisect the interval with the largest error estimate until the total
    /// estimate meets the tolerance.
    AdaptiveGaussKronrod,
    /// `panels` equal subintervals with an `nodes`-point Gauss–Legendre rule.
    /// Smooth in parameters, which finite differences rely on.
    FixedGauss { nodes: usize, panels: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub rule: Rule,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Half-line cutoff. `None` derives it from the integrand's decay class.
    pub tail_cutoff: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: Rule::AdaptiveGaussKronrod,
            rel_tol: 1e-13,
            abs_tol: 1e-13,
            max_subdivisions: 2000,
            tail_cutoff: None,
        }
    }
}

impl QuadratureSpec {
    pub fn fixed(nodes: usize, panels: usize) -> Self {
        Self {
            rule: Rule::FixedGauss { nodes, panels },
            ..Self::default()
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self.abs_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(UmbraError::InvalidParameter(format!("quadrature {what}")));
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.max_subdivisions == 0 {
            return bad("max_subdivisions must be positive");
        }
        if let Some(t) = self.tail_cutoff {
            if !(t > 0.0 && t.is_finite()) {
                return bad("tail cutoff must be positive");
            }
        }
        if let Rule::FixedGauss { nodes, panels } = self.rule {
            if nodes == 0 || panels == 0 {
                return bad("fixed rule needs nodes and panels");
            }
        }
        Ok(())
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_k = kronrod.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (i, slot) in fv.iter_mut().enumerate() {
        let dx = h * XGK[i];
        let (f1, f2) = (f(c - dx), f(c + dx));
        kronrod += WGK[i] * (f1 + f2);
        abs_k += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
        *slot = (f1, f2);
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (i, (f1, f2)) in fv.iter().enumerate() {
        asc += WGK[i] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let asc = asc * h.abs();
    let mut error = ((kronrod - gauss) * h).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let resabs = abs_k * h.abs();
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Piece {
        a,
        b,
        value: kronrod * h,
        error,
    }
}

/// `∫_a^b f` under `spec`.
pub fn integrate(f: impl FnMut(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_seeded(f, a, b, 1, spec)
}

/// As [`integrate`], with the adaptive rule starting from `seeds` equal
/// pieces. Long oscillatory ranges need this so the first estimate is not
/// accidentally small. The fixed rule ignores `seeds`.
pub fn integrate_seeded(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    seeds: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if a == b {
        return Ok(0.0);
    }
    match spec.rule {
        Rule::FixedGauss { nodes, panels } => Ok(fixed_gauss(&mut f, a, b, nodes, panels)),
        Rule::AdaptiveGaussKronrod => adaptive(&mut f, a, b, seeds.max(1), spec),
    }
}

fn adaptive(
    f: &mut impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    seeds: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let width = (b - a) / seeds as f64;
    let mut pieces: Vec<Piece> = (0..seeds)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == seeds { b } else { lo + width };
            gk15(f, lo, hi)
        })
        .collect();
    loop {
        let total: f64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if !total.is_finite() {
            return Err(UmbraError::Domain(
                "integrand is not finite on the interval".into(),
            ));
        }
        if error <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
            return Ok(pieces.iter().map(|p| p.value).sum());
        }
        if pieces.len() >= spec.max_subdivisions {
            return Err(UmbraError::NonConvergence {
                achieved: error,
                intervals: pieces.len(),
            });
        }
        let worst = (0..pieces.len())
            .max_by(|&i, &j| pieces[i].error.total_cmp(&pieces[j].error))
            .expect("nonempty");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            return Err(UmbraError::NonConvergence {
                achieved: error,
                intervals: pieces.len() + 1,
            });
        }
        pieces.push(gk15(f, p.a, mid));
        pieces.push(gk15(f, mid, p.b));
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`,
/// by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn fixed_gauss(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, n: usize, panels: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + width * p as f64;
        let c = lo + 0.5 * width;
        let h = 0.5 * width;
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            s += wi * f(c + h * xi);
        }
        total += s * h;
    }
    total
}
