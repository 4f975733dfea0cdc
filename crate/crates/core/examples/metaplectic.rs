//! The quadratic operators L², R², RL + ½ close into sl(2) on any ladder
//! model; on even nodes they give a diagonal ladder whose closure is
//! checked independently.

use umbra::exact::{format_rational, int};
use umbra::model::catalog;
use umbra::weyl::sl2::{
    generic_sl2_ladder, metaplectic_check, metaplectic_closed_form, metaplectic_sequences,
    LadderOutcome,
};

pub fn run_example() -> umbra::Result<()> {
    for m in catalog(12, &["3"])? {
        let r = metaplectic_check(&m, 10)?;
        println!("{r}");
        assert!(r.passed());
        let (a, b, c) = metaplectic_sequences(&m)?;
        assert_eq!((a, b, c), metaplectic_closed_form(6));
    }

    let (a, mut b, c) = metaplectic_closed_form(10);
    if let LadderOutcome::Closed(s, _) = generic_sl2_ladder(&a, &b, &c)? {
        let (l, lm, lp) = s.constants();
        println!(
            "induced ladder closes with constants ({}, {}, {})",
            format_rational(&l),
            format_rational(&lm),
            format_rational(&lp)
        );
    }
    b[4] += int(1);
    if let LadderOutcome::Open(r) = generic_sl2_ladder(&a, &b, &c)? {
        println!("perturbed ladder: {r}");
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
