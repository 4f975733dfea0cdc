//! The covariant transform W₀ carries every model onto monomials
//! `uⁿ/n!`; composing with the inverse on another model gives an umbral map.

use umbra::exact::{format_rational, int, Poly};
use umbra::model::{build_hermite, build_lower_factorial, build_monomials};
use umbra::transform::{
    check_transmutation_intertwining, covariant_w0, expand_in_basis, umbral_map,
};

pub fn run_example() -> umbra::Result<()> {
    let mono = build_monomials(6)?;
    let falling = build_lower_factorial(6)?;
    let hermite = build_hermite(6)?;

    // t³ = (t)_3 + 3(t)_2 + (t)_1 and p_n = (t)_n/n!, so the coordinates are 0, 1, 6, 6
    let t3 = Poly::monomial(6, 3, int(1));
    let coords = expand_in_basis(&falling, &t3)?;
    let coords: Vec<String> = coords.iter().map(format_rational).collect();
    println!(
        "t^3 in lower-factorial coordinates: [{}]",
        coords.join(", ")
    );

    println!(
        "W0 of hermite p_3 = {}",
        covariant_w0(&hermite, hermite.p(3))?.display_in("u")
    );
    println!(
        "monomial -> hermite maps t^2 to {}",
        umbral_map(&mono, &hermite, &Poly::monomial(6, 2, int(1)))?
    );

    for (a, b) in [(&mono, &falling), (&falling, &hermite), (&hermite, &mono)] {
        let r = check_transmutation_intertwining(a, b)?;
        println!("{r}");
        assert!(r.passed());
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
