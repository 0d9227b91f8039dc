//! Set partitions by class, and descending runs of permutations.

use cumulant_trees::partitions::{druns, enumerate_d, enumerate_partitions, PartitionClass};

fn main() {
    let classes = [
        ("all", PartitionClass::All),
        ("noncrossing", PartitionClass::Noncrossing),
        ("interval", PartitionClass::Interval),
        ("nc irreducible", PartitionClass::NcIrreducible),
    ];
    for (name, class) in classes {
        let counts: Vec<usize> = (1..=8).map(|n| enumerate_partitions(n, class).len()).collect();
        println!("{name:>15}: {counts:?}");
    }
    for p in enumerate_partitions(4, PartitionClass::NcIrreducible) {
        println!("{p}");
    }
    for s in enumerate_d(5) {
        println!("{s}  runs {}", druns(&s));
    }
}
