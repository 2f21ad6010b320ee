//! Exhaustive set-partition enumeration and the `cigl` / `inv` statistics.
//!
//! Partitions of `{0, ..., n-1}` are encoded as restricted-growth strings:
//! `rg[i]` is the block of element `i`, blocks are numbered in order of their
//! minima, so `rg[0] = 0` and `rg[i+1] <= 1 + max(rg[..=i])`. Enumeration walks
//! these strings in lexicographic order and is fully deterministic.

use std::fmt;

use crate::error::{Error, Result};
use crate::{QPoly, Rational};

/// Largest ground set enumerated without an explicit override (B_13 is
/// about 27.6 million partitions).
pub const DEFAULT_CAP: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rg: Vec<usize>,
}

impl SetPartition {
    /// Validates the restricted-growth property.
    pub fn from_rg(rg: Vec<usize>) -> Result<Self> {
        let mut next = 0usize;
        for (i, &a) in rg.iter().enumerate() {
            if a > next {
                return Err(Error::domain(format!(
                    "not a restricted-growth string: entry {i} is {a}, at most {next} allowed"
                )));
            }
            if a == next {
                next += 1;
            }
        }
        Ok(Self { rg })
    }

    /// Builds the canonical encoding from blocks covering `{0, ..., n-1}`.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n || label[e] != usize::MAX {
                    return Err(Error::domain(format!("blocks do not partition 0..{n}")));
                }
                label[e] = b;
            }
        }
        // relabel blocks in order of first appearance
        let mut map = vec![usize::MAX; blocks.len()];
        let mut next = 0;
        let rg = label
            .into_iter()
            .map(|b| {
                if map[b] == usize::MAX {
                    map[b] = next;
                    next += 1;
                }
                map[b]
            })
            .collect();
        Ok(Self { rg })
    }

    pub fn rg(&self) -> &[usize] {
        &self.rg
    }

    pub fn len(&self) -> usize {
        self.rg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rg.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.rg.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks ordered by their minimum element, each sorted ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (e, &b) in self.rg.iter().enumerate() {
            blocks[b].push(e);
        }
        blocks
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // one base-36 digit per element; larger labels are parenthesised
        for &a in &self.rg {
            match char::from_digit(a as u32, 36) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "({a})")?,
            }
        }
        Ok(())
    }
}

/// Lexicographic stream of restricted-growth strings of a fixed length.
#[derive(Debug, Clone)]
pub struct Partitions {
    rg: Vec<usize>,
    // prefix_max[i] = max(rg[..=i])
    prefix_max: Vec<usize>,
    k_filter: Option<usize>,
    done: bool,
}

impl Partitions {
    fn new(n: usize, k_filter: Option<usize>) -> Self {
        Self {
            rg: vec![0; n],
            prefix_max: vec![0; n],
            k_filter,
            done: false,
        }
    }

    fn advance(&mut self) {
        let n = self.rg.len();
        for i in (1..n).rev() {
            if self.rg[i] <= self.prefix_max[i - 1] {
                self.rg[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rg[i]);
                for j in i + 1..n {
                    self.rg[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        while !self.done {
            let blocks = self.prefix_max.last().map_or(0, |m| m + 1);
            let current = self.rg.clone();
            self.advance();
            if self.k_filter.is_none_or(|k| k == blocks) {
                return Some(SetPartition { rg: current });
            }
        }
        None
    }
}

/// All partitions of `{0, ..., n-1}` (optionally only those with `k` blocks)
/// in lexicographic order of their restricted-growth strings.
pub fn enumerate_partitions(n: usize, k_filter: Option<usize>) -> Result<Partitions> {
    enumerate_partitions_capped(n, k_filter, DEFAULT_CAP)
}

pub fn enumerate_partitions_capped(
    n: usize,
    k_filter: Option<usize>,
    cap: usize,
) -> Result<Partitions> {
    if n == 0 {
        return Err(Error::domain("partition enumeration needs n >= 1"));
    }
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    Ok(Partitions::new(n, k_filter))
}

/// Sum of the elements in the block containing 0.
pub fn cigl_stat(p: &SetPartition) -> usize {
    p.rg.iter()
        .enumerate()
        .filter(|&(_, &b)| b == 0)
        .map(|(e, _)| e)
        .sum()
}

/// Number of pairs `(e, B_j)` with `e` in an earlier block than `B_j` and
/// `e > min B_j`, blocks ordered by minima.
pub fn inv_stat(p: &SetPartition) -> usize {
    // blocks opened before e are exactly 0..=max(rg[..e]); the ones after
    // e's own block are the inversions contributed by e
    let mut seen_max = 0;
    let mut inv = 0;
    for (e, &b) in p.rg.iter().enumerate() {
        if e > 0 && b < seen_max {
            inv += seen_max - b;
        }
        seen_max = seen_max.max(b);
    }
    inv
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    Cigl,
    Inv,
}

impl Statistic {
    pub fn of(self, p: &SetPartition) -> usize {
        match self {
            Statistic::Cigl => cigl_stat(p),
            Statistic::Inv => inv_stat(p),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Cigl => "cigl",
            Statistic::Inv => "inv",
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cigl" => Ok(Statistic::Cigl),
            "inv" => Ok(Statistic::Inv),
            other => Err(Error::Parse(format!("unknown statistic `{other}`"))),
        }
    }
}

/// `sum q^stat(pi)` over the enumerated partitions.
pub fn weighted_sum(n: usize, k_filter: Option<usize>, stat: Statistic) -> Result<QPoly> {
    weighted_sum_capped(n, k_filter, stat, DEFAULT_CAP)
}

pub fn weighted_sum_capped(
    n: usize,
    k_filter: Option<usize>,
    stat: Statistic,
    cap: usize,
) -> Result<QPoly> {
    let mut counts: Vec<u64> = Vec::new();
    for p in enumerate_partitions_capped(n, k_filter, cap)? {
        let s = stat.of(&p);
        if counts.len() <= s {
            counts.resize(s + 1, 0);
        }
        counts[s] += 1;
    }
    Ok(QPoly::new(
        counts
            .into_iter()
            .map(|c| Rational::from_integer(c.into()))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical;

    fn rg(s: &str) -> SetPartition {
        SetPartition::from_rg(s.bytes().map(|b| (b - b'0') as usize).collect()).unwrap()
    }

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(1, None).unwrap().count(), 1);
        let three: Vec<String> = enumerate_partitions(3, None)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(three, ["000", "001", "010", "011", "012"]);
        assert_eq!(enumerate_partitions(4, Some(2)).unwrap().count(), 7);
        assert_eq!(
            enumerate_partitions(14, None).unwrap_err(),
            Error::EnumerationCap { n: 14, cap: 13 }
        );
        assert!(enumerate_partitions_capped(14, Some(14), 14).is_ok());
        assert!(enumerate_partitions(0, None).is_err());
    }

    #[test]
    fn counts_match_classical_numbers() {
        for n in 1..=10 {
            assert_eq!(
                enumerate_partitions(n, None).unwrap().count(),
                classical::bell(n).try_into().unwrap()
            );
            for k in 1..=n {
                let count = enumerate_partitions(n, Some(k)).unwrap().count();
                assert_eq!(count, usize::try_from(classical::stirling2(n, k)).unwrap());
            }
        }
    }

    #[test]
    fn stream_is_strictly_increasing_and_repeatable() {
        let a: Vec<_> = enumerate_partitions(7, None).unwrap().collect();
        let b: Vec<_> = enumerate_partitions(7, None).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rg_validation_and_blocks() {
        assert!(SetPartition::from_rg(vec![1]).is_err());
        assert!(SetPartition::from_rg(vec![0, 2]).is_err());
        let part = rg("01020");
        assert_eq!(part.blocks(), vec![vec![0, 2, 4], vec![1], vec![3]]);
        assert_eq!(SetPartition::from_blocks(&part.blocks()).unwrap(), part);
        assert_eq!(
            SetPartition::from_blocks(&[vec![3], vec![1, 0], vec![2]]).unwrap(),
            rg("0012")
        );
        assert!(SetPartition::from_blocks(&[vec![0, 0]]).is_err());
    }

    #[test]
    fn cigl_examples() {
        assert_eq!(
            cigl_stat(&SetPartition::from_blocks(&[vec![0, 1], vec![2]]).unwrap()),
            1
        );
        assert_eq!(cigl_stat(&rg("012")), 0);
        assert_eq!(cigl_stat(&rg("000")), 3);
    }

    #[test]
    fn inv_examples() {
        // {{1,3},{2}} relabelled to {{0,2},{1}}
        assert_eq!(inv_stat(&rg("010")), 1);
        assert_eq!(inv_stat(&rg("0000")), 0);
        assert_eq!(inv_stat(&rg("012")), 0);
        // elements 3 and 4 both exceed the minima of blocks 1 and 2
        assert_eq!(inv_stat(&rg("01200")), 4);
    }

    #[test]
    fn weighted_sum_examples() {
        assert_eq!(
            weighted_sum(3, None, Statistic::Cigl).unwrap(),
            p("2 + q + q^2 + q^3")
        );
        assert_eq!(
            weighted_sum(3, Some(2), Statistic::Inv).unwrap(),
            p("2 + q")
        );
        assert_eq!(weighted_sum(2, None, Statistic::Cigl).unwrap(), p("1 + q"));
    }

    #[test]
    fn display_uses_one_character_per_element() {
        let p = SetPartition::from_rg((0..12).collect()).unwrap();
        assert_eq!(p.to_string(), "0123456789ab");
    }
}
