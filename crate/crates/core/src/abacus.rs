//! James' abacus: beta-sets on `p` runners.
//!
//! Positions `0, 1, 2, ...` are displayed; every strictly negative position
//! holds an implicit bead. Row `r` consists of positions `pr, ..., pr + p - 1`
//! and runner `i` of the positions congruent to `i` modulo `p`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::check_modulus;
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Abacus {
    prime: usize,
    beads: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GapParity {
    Odd,
    Even,
}

/// Two adjacent beads with at least one space between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gap {
    /// May be `-1`, the last implicit bead.
    pub lower: isize,
    pub upper: isize,
    pub parity: GapParity,
}

/// A removable rim hook, identified by the bead whose upward move removes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RimHook {
    pub bead: usize,
    pub leg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    /// Runner labels rotate with the bead count, so it travels with the data.
    pub bead_count: usize,
    pub components: Vec<Partition>,
    pub weight: usize,
}

impl Abacus {
    /// Builds an abacus from explicit bead positions (any order, no repeats).
    pub fn new(prime: usize, mut beads: Vec<usize>) -> Result<Self> {
        check_modulus(prime)?;
        beads.sort_unstable();
        if beads.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Unsupported("repeated bead position".into()));
        }
        Ok(Abacus { prime, beads })
    }

    /// Bead `i` (counting from the largest part) sits at `parts[i] + b - 1 - i`.
    pub fn from_partition(lambda: &Partition, prime: usize, bead_count: usize) -> Result<Self> {
        check_modulus(prime)?;
        if bead_count < lambda.len() {
            return Err(Error::TooFewBeads {
                needed: lambda.len(),
                given: bead_count,
            });
        }
        let beads = (0..bead_count)
            .rev()
            .map(|i| lambda.part(i) + bead_count - 1 - i)
            .collect();
        Ok(Abacus { prime, beads })
    }

    /// The abacus with exactly as many displayed beads as `lambda` has parts.
    pub fn minimal(lambda: &Partition, prime: usize) -> Result<Self> {
        Self::from_partition(lambda, prime, lambda.len())
    }

    pub fn prime(&self) -> usize {
        self.prime
    }

    pub fn beads(&self) -> &[usize] {
        &self.beads
    }

    pub fn bead_count(&self) -> usize {
        self.beads.len()
    }

    /// Occupancy of any position, negative ones included.
    pub fn has_bead(&self, position: isize) -> bool {
        position < 0 || self.beads.binary_search(&(position as usize)).is_ok()
    }

    pub fn to_partition(&self) -> Partition {
        Partition::from_unsorted(
            self.beads
                .iter()
                .enumerate()
                .map(|(below, &b)| b - below)
                .collect(),
        )
    }

    pub fn renormalize(&self, new_bead_count: usize) -> Result<Self> {
        Self::from_partition(&self.to_partition(), self.prime, new_bead_count)
    }

    /// Rows of the beads on runner `r`, ascending.
    pub fn runner_rows(&self, r: usize) -> Vec<usize> {
        self.beads
            .iter()
            .filter(|&&b| b % self.prime == r)
            .map(|&b| b / self.prime)
            .collect()
    }

    pub fn runner_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.prime];
        for &b in &self.beads {
            counts[b % self.prime] += 1;
        }
        counts
    }

    /// Every pair of adjacent beads separated by at least one space. Beads in
    /// adjacent positions contribute nothing; the implicit bead at `-1` pairs
    /// with the first displayed bead when position `0` is empty.
    pub fn gaps(&self) -> Vec<Gap> {
        let mut gaps = Vec::new();
        let mut previous: isize = -1;
        for &b in &self.beads {
            let b = b as isize;
            if b - previous > 1 {
                let parity = if (b - previous) % 2 == 0 {
                    GapParity::Odd
                } else {
                    GapParity::Even
                };
                gaps.push(Gap {
                    lower: previous,
                    upper: b,
                    parity,
                });
            }
            previous = b;
        }
        gaps
    }

    pub fn has_odd_gap(&self) -> bool {
        self.gaps().iter().any(|g| g.parity == GapParity::Odd)
    }

    /// Pushes every bead to the top of its runner.
    pub fn core_abacus(&self) -> Abacus {
        let mut beads: Vec<usize> = self
            .runner_counts()
            .into_iter()
            .enumerate()
            .flat_map(|(r, c)| (0..c).map(move |row| r + row * self.prime))
            .collect();
        beads.sort_unstable();
        Abacus {
            prime: self.prime,
            beads,
        }
    }

    pub fn p_core(&self) -> Partition {
        self.core_abacus().to_partition()
    }

    pub fn weight(&self) -> usize {
        (0..self.prime)
            .map(|r| {
                self.runner_rows(r)
                    .iter()
                    .enumerate()
                    .map(|(j, row)| row - j)
                    .sum::<usize>()
            })
            .sum()
    }

    /// The runner-wise partitions; component `r` belongs to runner `r` for the
    /// current bead count.
    pub fn p_quotient(&self) -> Quotient {
        let components: Vec<Partition> = (0..self.prime)
            .map(|r| {
                let rows = self.runner_rows(r);
                Partition::from_unsorted(rows.iter().enumerate().map(|(j, row)| row - j).collect())
            })
            .collect();
        let weight = components.iter().map(Partition::size).sum();
        Quotient {
            bead_count: self.bead_count(),
            components,
            weight,
        }
    }

    fn hook_length(&self, steps: usize) -> Result<usize> {
        match steps {
            1 | 2 => Ok(steps * self.prime),
            _ => Err(Error::UnsupportedHookSteps(steps)),
        }
    }

    /// Number of beads strictly between positions `lo` and `hi`.
    pub fn beads_between(&self, lo: usize, hi: usize) -> usize {
        if hi <= lo + 1 {
            return 0;
        }
        self.beads.iter().filter(|&&b| b > lo && b < hi).count()
    }

    /// Rim hooks of length `steps * p`: beads whose position `steps` rows up
    /// is empty, with leg length equal to the number of beads passed over.
    pub fn removable_rim_hooks(&self, steps: usize) -> Result<Vec<RimHook>> {
        let len = self.hook_length(steps)?;
        Ok(self
            .beads
            .iter()
            .filter(|&&b| b >= len && !self.has_bead((b - len) as isize))
            .map(|&b| RimHook {
                bead: b,
                leg: self.beads_between(b - len, b),
            })
            .collect())
    }

    /// Moves the bead at `bead` up `steps` rows.
    pub fn remove_rim_hook(&self, bead: usize, steps: usize) -> Result<Abacus> {
        let len = self.hook_length(steps)?;
        if !self.has_bead(bead as isize) {
            return Err(Error::NoBead(bead));
        }
        if bead < len || self.has_bead((bead - len) as isize) {
            return Err(Error::BlockedMove { bead, steps });
        }
        Ok(self.moved(bead, bead - len))
    }

    /// Moves the bead at `bead` down `steps` rows.
    pub fn add_rim_hook(&self, bead: usize, steps: usize) -> Result<Abacus> {
        let len = self.hook_length(steps)?;
        if !self.has_bead(bead as isize) {
            return Err(Error::NoBead(bead));
        }
        if self.has_bead((bead + len) as isize) {
            return Err(Error::BlockedMove { bead, steps });
        }
        Ok(self.moved(bead, bead + len))
    }

    fn moved(&self, from: usize, to: usize) -> Abacus {
        let mut beads: Vec<usize> = self
            .beads
            .iter()
            .map(|&b| if b == from { to } else { b })
            .collect();
        beads.sort_unstable();
        Abacus {
            prime: self.prime,
            beads,
        }
    }

    /// ASCII grid, one line per row down to the last bead.
    pub fn render(&self) -> String {
        let rows = self.beads.last().map_or(1, |&b| b / self.prime + 1);
        let mut out = String::new();
        for row in 0..rows {
            let line: Vec<&str> = (0..self.prime)
                .map(|r| {
                    if self.has_bead((row * self.prime + r) as isize) {
                        "●"
                    } else {
                        "○"
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}
