//! Generalized translations: the ordinary shift for binomial-type models and
//! the symmetric average `(f(t+y) + f(t−y))/2` for the heat model.

use umbra::exact::{int, ratio, Poly};
use umbra::model::{build_heat, build_lower_factorial};
use umbra::translation::{
    binomial_check, character_check, generalized_translate, translate_formal,
};

pub fn run_example() -> umbra::Result<()> {
    let falling = build_lower_factorial(8)?;
    let r = binomial_check(&falling, 8)?;
    println!("{r}");
    assert!(r.passed());

    let heat = build_heat(4)?;
    let f = Poly::monomial(8, 4, int(1));
    let y = ratio(1, 2);
    let shifted = generalized_translate(&heat, &y, &f)?;
    println!("heat T^(1/2) t^4 = {shifted}");
    let average = f
        .shift_substitute(&y)
        .add(&f.shift_substitute(&-y.clone()))?
        .scale(&ratio(1, 2));
    assert_eq!(shifted, average);

    println!(
        "symbolic T^y t^2 on lower factorials: {}",
        translate_formal(&falling, &Poly::monomial(8, 2, int(1)))?
    );
    let r = character_check(&heat, 4)?;
    println!("{r}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
