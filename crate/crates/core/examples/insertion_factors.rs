//! Insertion, factor decomposition, and the permutation encodings of
//! decreasing trees.

use cumulant_trees::peaks::{factors_from_plot, Plot};
use cumulant_trees::trees::{alpha, alpha_inverse, beta, factor_decomposition, insert, stack_sort};
use cumulant_trees::{ColoredTree, Permutation};

fn main() -> cumulant_trees::Result<()> {
    // `box:(color left right)`, `.` for a missing child
    let t1: ColoredTree = "0:(1 (2 . .) .)".parse()?;
    let t2: ColoredTree = "3:(4 . (5 . .))".parse()?;
    for v in 0..t1.len() {
        let t = insert(&t1, v, &t2)?;
        println!("insert at {v}: {t}");
        for f in factor_decomposition(&t)? {
            let anchor = f.anchor.map_or("box".to_string(), |a| a.to_string());
            println!("    factor anchored at {anchor}: {}", f.branch);
        }
    }

    let sigma: Permutation = "15 16 10 11 6 20 18 12 1 7 13 17 8 3 2 9 5 4 14 19".parse()?;
    let tree = alpha_inverse(&sigma)?;
    println!("\nsigma        {sigma}");
    println!("tree         {}", tree.encode());
    assert_eq!(alpha(&tree), sigma);
    println!("stack sorted {}", beta(&tree));
    assert_eq!(beta(&tree), stack_sort(&sigma));
    println!("factors read off the plot:");
    for f in factors_from_plot(&Plot::from_perm(&sigma))? {
        println!("    {f}");
    }
    Ok(())
}
