//! Heisenberg group structure checked as exact formal series, and relative
//! convolution kernels composed by twisted convolution.

use umbra::exact::{int, ratio, Poly};
use umbra::model::{build_heat, build_monomials};
use umbra::weyl::{
    composition_check_formal, group_law_check, rep_of_kernel, twisted_convolve,
    weyl_relation_check, DiscreteKernel,
};

pub fn run_example() -> umbra::Result<()> {
    // order M and output degree d need N_work = d + M
    let mono = build_monomials(8)?;
    let heat = build_heat(8)?;
    for m in [&mono, &heat] {
        for r in [
            group_law_check(m, 4, 4)?,
            weyl_relation_check(m, 4, 4)?,
            composition_check_formal(m, 4, 4)?,
        ] {
            println!("{r}");
            assert!(r.passed());
        }
    }

    // e^{R} then e^{L} picks up the phase e^{-1}
    let k1 = DiscreteKernel::atom(int(1), int(0), int(1), int(0));
    let k2 = DiscreteKernel::atom(int(1), int(0), int(0), int(1));
    println!(
        "k1 # k2 = {}",
        serde_json::to_string(&twisted_convolve(&k1, &k2).to_json()).unwrap()
    );

    let shift = DiscreteKernel::atom(int(1), int(0), int(0), ratio(1, 2));
    let op = rep_of_kernel(&mono, &shift, 8)?;
    let f = Poly::monomial(8, 2, int(1));
    println!(
        "pi(delta at y=1/2) t^2 = {} (truncated: {})",
        op.terms[&int(0)].apply(&f)?,
        op.truncated
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
