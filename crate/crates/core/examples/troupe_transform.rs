//! Tree series from branch series.
//!
//! Branches counted by `2^(n-1)` give the Catalan numbers, constant branch
//! weights give Motzkin numbers, and `q(1+q)^(n-1)` gives the Narayana
//! polynomials. The last block checks the transform against brute-force
//! tree sums for a troupe.

use cumulant_trees::series::{inverse_troupe_transform, troupe_transform};
use cumulant_trees::trees::{singleton_word, TreeFamily};
use cumulant_trees::troupes::WeightedTroupe;
use cumulant_trees::{FormalPowerSeries, RingElem};

fn show(name: &str, s: &FormalPowerSeries) {
    let coeffs: Vec<String> = s.coeffs()[1..].iter().map(ToString::to_string).collect();
    println!("{name:>10}: {}", coeffs.join(", "));
}

fn main() -> cumulant_trees::Result<()> {
    let order = 10;
    let powers = FormalPowerSeries::from_fn(order, |n| if n == 0 { RingElem::zero() } else { RingElem::int(1 << (n - 1)) })?;
    let ones = FormalPowerSeries::from_fn(order, |n| if n == 0 { RingElem::zero() } else { RingElem::one() })?;
    let q = RingElem::q();
    let one_plus_q = &RingElem::one() + &q;
    let binom = FormalPowerSeries::from_fn(order, |n| {
        if n == 0 { RingElem::zero() } else { &q * &one_plus_q.pow(n as u32 - 1) }
    })?;

    for (name, b) in [("2^(n-1)", &powers), ("1", &ones), ("q(1+q)^..", &binom)] {
        let t = troupe_transform(b)?;
        show(name, b);
        show("trees", &t);
        assert_eq!(&inverse_troupe_transform(&t)?, b);
    }

    let tau = WeightedTroupe::builtin("rightmono:q,2")?;
    let sums = |fam| -> cumulant_trees::Result<FormalPowerSeries> {
        let mut v = vec![RingElem::zero()];
        for n in 1..7 {
            v.push(tau.weighted_sum(fam, &singleton_word(n))?);
        }
        FormalPowerSeries::new(v)
    };
    let via_transform = troupe_transform(&sums(TreeFamily::Branch)?)?;
    show("transform", &via_transform);
    show("enumerate", &sums(TreeFamily::Bpt)?);
    assert_eq!(via_transform, sums(TreeFamily::Bpt)?);
    Ok(())
}
