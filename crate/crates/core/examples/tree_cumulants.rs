//! Negated cumulants as weighted tree sums.
//!
//! Moments are chosen so that every Boolean cumulant is minus a branch sum
//! of the troupe; the free and classical cumulants then come out as minus
//! the sums over all trees and over decreasing trees.

use cumulant_trees::cumulants::TreeMoments;
use cumulant_trees::trees::colors;
use cumulant_trees::troupes::WeightedTroupe;
use cumulant_trees::{Color, RingElem};

fn main() -> cumulant_trees::Result<()> {
    let tau = WeightedTroupe::right_two_monomial(RingElem::q(), RingElem::one());
    let tm = TreeMoments::new(&tau, &[Color(0)], 6)?;
    for r in tm.check_all(&tau)? {
        println!("{r}");
    }

    // two colors: only vertices with a left child, and the box, must be colored 1
    let tau = WeightedTroupe::builtin("colorset:1")?;
    let alphabet = [Color(0), Color(1)];
    let tm = TreeMoments::new(&tau, &alphabet, 5)?;
    let r = tm.check(&tau, &colors(&[1, 0, 1, 1, 1]))?;
    println!("{r}");
    assert!(tm.check_all(&tau)?.iter().all(|r| r.all_equal));
    Ok(())
}
