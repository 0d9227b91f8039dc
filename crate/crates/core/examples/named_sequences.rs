//! Moment sequences with known cumulants, and additivity of classical
//! cumulants under binomial convolution.

use cumulant_trees::sequences::{convolution_additivity_check, named_sequence, NAMES};

fn main() -> cumulant_trees::Result<()> {
    for name in NAMES {
        let s = named_sequence(name, 6)?;
        print!("{s}");
        assert_eq!(s.computed_classical()?, s.classical);
        println!();
    }
    let s = named_sequence("two_atom:1/2", 5)?;
    print!("{s}");

    for (f, g) in [("gamma_minus_one", "shifted_exponential"), ("two_atom", "geometric_like")] {
        let ok = convolution_additivity_check(&named_sequence(f, 10)?, &named_sequence(g, 10)?)?;
        println!("{f} * {g}: cumulants add: {ok}");
    }
    Ok(())
}
