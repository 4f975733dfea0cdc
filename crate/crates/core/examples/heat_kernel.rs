//! The heat-kernel integral reproduces the exact covariant transform of the
//! heat model; the cosine transform of a Gaussian stays Gaussian.

use std::f64::consts::PI;

use umbra::model::build_heat;
use umbra::numeric::{cosine_transform, heat_covariant, QuadratureSpec, ScalarFn};
use umbra::transform::covariant_w0;

pub fn run_example() -> umbra::Result<()> {
    let heat = build_heat(4)?;
    let q = QuadratureSpec::default();
    for n in 0..=4 {
        let p = heat.p(n);
        let exact = covariant_w0(&heat, p)?;
        for u in [0.5, 1.0, 2.0] {
            let numeric = heat_covariant(&ScalarFn::polynomial(p), u, &q)?;
            let want = exact.eval_f64(u);
            println!("n={n} u={u}: quadrature {numeric:.12} exact {want:.12}");
            assert!((numeric - want).abs() < 1e-8);
        }
    }
    for v in [0.0, 1.0, 4.0] {
        let c = cosine_transform(&ScalarFn::gauss(), v, &q)?;
        println!(
            "cosine transform of exp(-t^2) at v={v}: {c:.12} (closed form {:.12})",
            PI.sqrt() * (-v / 4.0).exp()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
