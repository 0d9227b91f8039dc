//! Classical, free and Boolean cumulants of a two-variable moment table,
//! and the round trip back to moments.

use cumulant_trees::cumulants::{
    boolean_to_classical, boolean_to_free, cumulants_to_moments, moments_to_cumulants, CumulantKind, MomentFunctional,
};
use cumulant_trees::{Color, RingElem};

fn main() -> cumulant_trees::Result<()> {
    let alphabet = [Color(0), Color(1)];
    // an arbitrary noncommutative functional: depends on the word, not just its letters
    let phi = MomentFunctional::from_fn(&alphabet, 4, |w| {
        let ones = w.iter().filter(|c| c.0 == 1).count() as i64;
        let turns = w.windows(2).filter(|p| p[0] != p[1]).count() as i64;
        RingElem::frac(1 + ones, 1 + turns)
    });

    for kind in CumulantKind::ALL {
        let c = moments_to_cumulants(&phi, kind)?;
        println!("# {}", kind.name());
        print!("{}", c.table());
        assert_eq!(cumulants_to_moments(&c)?, phi);
    }

    let b = moments_to_cumulants(&phi, CumulantKind::Boolean)?;
    assert_eq!(boolean_to_free(&b)?, moments_to_cumulants(&phi, CumulantKind::Free)?);
    assert_eq!(boolean_to_classical(&b)?, moments_to_cumulants(&phi, CumulantKind::Classical)?);
    println!("boolean expansions agree with the direct conversions");
    Ok(())
}
