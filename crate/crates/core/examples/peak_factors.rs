//! Reading insertion factors off the plot of a permutation.

use cumulant_trees::peaks::{factors_from_plot, peaks, southeast_decomposition, Plot};

fn main() -> cumulant_trees::Result<()> {
    let arg = std::env::args().nth(1);
    let w: Plot = arg.as_deref().unwrap_or("15 16 10 11 6 20 18 12 1 7 13 17 8 3 2 9 5 4 14 19").parse()?;
    println!("word  {:?}", w.word());
    println!("peaks {:?}", peaks(&w));
    for class in southeast_decomposition(&w) {
        match class.peak {
            Some(p) => print!("peak {p:>2}:"),
            None => print!("rest:   "),
        }
        println!(" {:?}  standardized {:?}", class.points, class.word);
    }
    for f in factors_from_plot(&w)? {
        println!("factor {f}");
    }
    Ok(())
}
