//! The two bijections behind the tree formulas: partitions with branches
//! onto binary plane trees, and permutations with branches onto decreasing
//! trees.

use cumulant_trees::bijections::{enumerate_p, enumerate_q, phi, phi_inverse, psi, psi_inverse};
use cumulant_trees::trees::{colors, factor_multiset};

fn main() -> cumulant_trees::Result<()> {
    let word = colors(&[0, 1, 0, 1]);
    let ps = enumerate_p(&word)?;
    println!("{} partition inputs for word 0,1,0,1", ps.len());
    for x in ps.iter().take(3) {
        let t = psi(x)?;
        print!("{x}");
        println!("  => {t}\n");
        assert_eq!(&psi_inverse(&t)?, x);
    }

    let qs = enumerate_q(&word)?;
    println!("{} permutation inputs", qs.len());
    for x in qs.iter().take(3) {
        let t = phi(x)?;
        print!("{x}");
        println!("  => {}", t.encode());
        println!("  factors {:?}\n", factor_multiset(t.tree())?);
        assert_eq!(&phi_inverse(&t)?, x);
    }
    Ok(())
}
