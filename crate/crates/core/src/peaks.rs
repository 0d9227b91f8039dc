//! Insertion factors of `α⁻¹(w)` read straight off the plot of `w`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::trees::{LabeledFactor, Side};

/// A word with distinct integer letters, seen as the points `(i, w(i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plot {
    word: Vec<i64>,
}

impl Plot {
    pub fn new(word: Vec<i64>) -> Result<Self> {
        if !word.iter().all_unique() {
            return Err(Error::Malformed(format!("letters of {word:?} are not distinct")));
        }
        Ok(Plot { word })
    }

    pub fn from_perm(p: &crate::perm::Permutation) -> Self {
        Plot { word: p.images().iter().map(|&x| x as i64).collect() }
    }

    pub fn word(&self) -> &[i64] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `w(i)` for `1 <= i <= n`.
    fn at(&self, i: usize) -> i64 {
        self.word[i - 1]
    }
}

impl FromStr for Plot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let letters: Vec<i64> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| Error::Malformed(format!("bad letter `{x}`"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(i64::from).ok_or_else(|| Error::Malformed(format!("bad letter `{c}`"))))
                .collect::<Result<_>>()?
        };
        Plot::new(letters)
    }
}

/// Indices `p` (1-based) with `w(p-1) < w(p) > w(p+1)`.
pub fn peaks(w: &Plot) -> Vec<usize> {
    (2..w.len()).filter(|&p| w.at(p - 1) < w.at(p) && w.at(p) > w.at(p + 1)).collect()
}

/// One class of the southeast decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoutheastClass {
    /// The peak index, `None` for the leftover class.
    pub peak: Option<usize>,
    /// Points `(i, w(i))` by increasing `i`.
    pub points: Vec<(usize, i64)>,
    /// The values standardized to `1..=len`, read left to right.
    pub word: Vec<usize>,
}

fn standardize(values: &[i64]) -> Vec<usize> {
    let sorted: Vec<i64> = values.iter().copied().sorted().collect();
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("present") + 1)
        .collect()
}

/// The leftover class first, then one class per peak in increasing order.
/// A point `(i, v)` is weakly southeast of a peak `p` when `i >= p` and
/// `v <= w(p)`; it joins the last peak it is southeast of.
pub fn southeast_decomposition(w: &Plot) -> Vec<SoutheastClass> {
    let ps = peaks(w);
    let owner = |i: usize| ps.iter().rposition(|&p| i >= p && w.at(i) <= w.at(p));
    let mut classes: Vec<Vec<(usize, i64)>> = vec![Vec::new(); ps.len() + 1];
    for i in 1..=w.len() {
        classes[owner(i).map_or(0, |j| j + 1)].push((i, w.at(i)));
    }
    classes
        .into_iter()
        .enumerate()
        .map(|(j, points)| {
            let values: Vec<i64> = points.iter().map(|&(_, v)| v).collect();
            SoutheastClass { peak: j.checked_sub(1).map(|k| ps[k]), word: standardize(&values), points }
        })
        .collect()
}

/// The decreasing branch whose inorder reading is `labels`: labels are
/// taken from largest to smallest, each a left child of the previous one
/// when it comes earlier in the word.
fn branch_from_inorder(labels: &[usize]) -> (Vec<usize>, Vec<Side>) {
    let pos = |x: usize| labels.iter().position(|&y| y == x).expect("present");
    let top_down: Vec<usize> = labels.iter().copied().sorted().rev().collect();
    let sides = top_down
        .iter()
        .tuple_windows()
        .map(|(&a, &b)| if pos(b) < pos(a) { Side::Left } else { Side::Right })
        .collect();
    (top_down, sides)
}

/// The labeled insertion factors of `α⁻¹(w)` for a permutation `w`, the
/// `⊟` factor first. A peak class is the peak followed by the inorder
/// reading of the factor it anchors; the leftover class is the `⊟` factor.
pub fn factors_from_plot(w: &Plot) -> Result<Vec<LabeledFactor>> {
    let n = w.len() as i64;
    if w.is_empty() || !w.word().iter().all(|&x| 1 <= x && x <= n) {
        return Err(Error::InvalidPermutation(format!("{:?} is not a nonempty permutation", w.word())));
    }
    Ok(southeast_decomposition(w)
        .into_iter()
        .map(|c| {
            let mut labels: Vec<usize> = c.points.iter().map(|&(_, v)| v as usize).collect();
            let anchor = c.peak.map(|_| labels.remove(0));
            let (labels, sides) = branch_from_inorder(&labels);
            LabeledFactor { anchor, labels, sides }
        })
        .collect())
}

/// `box: 15` or `16: 14 L 13 R 9`, the branch read from the top.
impl fmt::Display for LabeledFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.anchor {
            Some(a) => write!(f, "{a}:")?,
            None => write!(f, "box:")?,
        }
        for (k, l) in self.labels.iter().enumerate() {
            write!(f, " {l}")?;
            if let Some(s) = self.sides.get(k) {
                write!(f, " {}", if *s == Side::Left { "L" } else { "R" })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::trees::{alpha_inverse, labeled_insertion_factors};

    fn plot(s: &str) -> Plot {
        s.parse().unwrap()
    }

    fn sorted(mut v: Vec<LabeledFactor>) -> Vec<LabeledFactor> {
        v.sort();
        v
    }

    #[test]
    fn worked_permutation() {
        let w = plot("15 16 10 11 6 20 18 12 1 7 13 17 8 3 2 9 5 4 14 19");
        assert_eq!(peaks(&w), vec![2, 4, 6, 12, 16]);
        let classes = southeast_decomposition(&w);
        assert_eq!(classes.len(), 6);
        assert_eq!(classes[0].points, vec![(1, 15)]);
        assert_eq!(classes.iter().map(|c| c.points.len()).sum::<usize>(), 20);
        let p = Permutation::from_str("15 16 10 11 6 20 18 12 1 7 13 17 8 3 2 9 5 4 14 19").unwrap();
        let tree = alpha_inverse(&p).unwrap();
        assert_eq!(sorted(factors_from_plot(&w).unwrap()), sorted(labeled_insertion_factors(&tree).unwrap()));
    }

    #[test]
    fn small_words() {
        assert!(peaks(&plot("1234")).is_empty());
        assert_eq!(peaks(&plot("132")), vec![2]);
        let c = southeast_decomposition(&plot("132"));
        assert_eq!(c[0].word, vec![1]);
        assert_eq!(c[1].word, vec![2, 1]);
        assert_eq!(c[1].points, vec![(2, 3), (3, 2)]);
        let inc = southeast_decomposition(&plot("123"));
        assert_eq!(inc.len(), 1);
        assert_eq!(inc[0].word, vec![1, 2, 3]);
        let f = factors_from_plot(&plot("321")).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].to_string(), "box: 3 R 2 R 1");
        assert!(factors_from_plot(&plot("2 5 1")).is_err());
        assert!(Plot::new(vec![1, 1]).is_err());
    }

    #[test]
    fn agrees_with_trees() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                let tree = alpha_inverse(&p).unwrap();
                let w = Plot::from_perm(&p);
                assert_eq!(peaks(&w).len(), tree.tree().two_child_count());
                assert_eq!(
                    sorted(factors_from_plot(&w).unwrap()),
                    sorted(labeled_insertion_factors(&tree).unwrap()),
                    "{p}"
                );
            }
        }
    }
}
