//! Statistics of partitions in blocks of weight two: the leg difference `δ`,
//! the bead gap `Δ`, the black/white colouring, the partner `ν°`, and the
//! decomposition columns they determine. Also the dominance chain of even and
//! `δ = 1` partitions in the blocks `B((2k), 2)` with their bead-move labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abacus::Abacus;
use crate::blocks::{block_of, enumerate_block, maximal_under_dominance, BlockId};
use crate::bounds::Bounds;
use crate::error::{invariant, Error, Result};
use crate::partition::Partition;

fn weight_two_abacus(nu: &Partition, p: usize) -> Result<Abacus> {
    let a = Abacus::minimal(nu, p)?;
    let found = a.weight();
    if found != 2 {
        return Err(Error::WrongWeight {
            partition: nu.clone(),
            p,
            expected: 2,
            found,
        });
    }
    Ok(a)
}

/// Leg lengths of one pair of successively removed rim p-hooks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookPairData {
    pub leg1: usize,
    pub leg2: usize,
    pub delta: usize,
    /// Whether `ν` itself has at least two removable rim p-hooks.
    pub two_hook_flag: bool,
}

/// Removes two rim p-hooks in every possible order and checks that the leg
/// difference never changes.
pub fn hook_pair(nu: &Partition, p: usize) -> Result<HookPairData> {
    hook_pair_skewed(nu, p, 0)
}

/// [`hook_pair`] with `skew` added to the leg of the first hook removed. The
/// self-test uses a non-zero skew to check that it notices wrong legs.
pub(crate) fn hook_pair_skewed(nu: &Partition, p: usize, skew: usize) -> Result<HookPairData> {
    let a = weight_two_abacus(nu, p)?;
    let first = a.removable_rim_hooks(1)?;
    let mut seen: Option<HookPairData> = None;
    for h1 in &first {
        let rest = a.remove_rim_hook(h1.bead, 1)?;
        for h2 in rest.removable_rim_hooks(1)? {
            let (leg1, leg2) = (h1.leg + skew, h2.leg);
            let data = HookPairData {
                leg1,
                leg2,
                delta: leg1.abs_diff(leg2),
                two_hook_flag: first.len() >= 2,
            };
            match &seen {
                None => seen = Some(data),
                Some(prev) if prev.delta != data.delta => {
                    return Err(invariant(format!(
                        "delta({nu}) depends on the removal order: legs ({}, {}) vs ({}, {})",
                        prev.leg1, prev.leg2, leg1, leg2
                    )))
                }
                Some(_) => {}
            }
        }
    }
    seen.ok_or_else(|| {
        invariant(format!(
            "{nu} has weight 2 but no pair of removable rim {p}-hooks"
        ))
    })
}

pub fn delta(nu: &Partition, p: usize) -> Result<usize> {
    Ok(hook_pair(nu, p)?.delta)
}

/// The weight-two p-quotient of `ν` viewed from the core abacus.
enum Shape {
    /// One bead moved down twice.
    Double,
    /// A bead and the bead directly above it moved down once each, on the
    /// runner whose bottom core bead sits at `lower + p`.
    Stacked { lower: usize },
    /// The bottom beads of two runners moved down once each.
    Split { first: usize, second: usize },
}

fn shape(nu_abacus: &Abacus) -> (Abacus, Shape) {
    let p = nu_abacus.prime();
    let wide = nu_abacus
        .renormalize(nu_abacus.bead_count() + 2 * p)
        .expect("adding beads never fails");
    let core = wide.core_abacus();
    let quotient = wide.p_quotient();
    let bottom = |r: usize| {
        let rows = core.runner_rows(r);
        r + p * rows[rows.len() - 1]
    };
    let moved: Vec<usize> = (0..p)
        .filter(|&r| quotient.components[r].size() > 0)
        .collect();
    let s = match moved.as_slice() {
        [r] if quotient.components[*r].parts() == [2] => Shape::Double,
        [r] => Shape::Stacked {
            lower: bottom(*r) - p,
        },
        [r, s] => Shape::Split {
            first: bottom(*r).min(bottom(*s)),
            second: bottom(*r).max(bottom(*s)),
        },
        _ => unreachable!("weight 2 spreads over at most two runners"),
    };
    (core, s)
}

/// `Δ(ν)`: the number of core beads strictly between the two beads moved
/// once each, and `0` when a single bead moves twice.
pub fn big_delta(nu: &Partition, p: usize) -> Result<usize> {
    let (core, s) = shape(&weight_two_abacus(nu, p)?);
    Ok(match s {
        Shape::Double => 0,
        Shape::Stacked { lower } => core.beads_between(lower, lower + p),
        Shape::Split { first, second } => core.beads_between(first, second),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Black => "black",
            Colour::White => "white",
        })
    }
}

/// Colour of a `δ = 0` partition: with two removable rim p-hooks it is black
/// when the longer leg is even, otherwise black when the leg of its rim
/// 2p-hook is `0` or `3` mod 4.
pub fn colour(nu: &Partition, p: usize) -> Result<Colour> {
    let data = hook_pair(nu, p)?;
    if data.delta != 0 {
        return Err(Error::ColourUndefined(nu.clone(), data.delta));
    }
    let a = Abacus::minimal(nu, p)?;
    let hooks = a.removable_rim_hooks(1)?;
    let black = if hooks.len() >= 2 {
        hooks.iter().map(|h| h.leg).max().unwrap_or(0) % 2 == 0
    } else {
        match a.removable_rim_hooks(2)?.as_slice() {
            [h] => matches!(h.leg % 4, 0 | 3),
            other => {
                return Err(invariant(format!(
                    "{nu} has one rim {p}-hook and {} rim {}-hooks",
                    other.len(),
                    2 * p
                )))
            }
        }
    };
    Ok(if black { Colour::Black } else { Colour::White })
}

/// One partition of a weight-two block with its statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub partition: Partition,
    pub delta: usize,
    pub colour: Option<Colour>,
    pub regular: bool,
}

/// A block of weight at most two with the statistics of every member, so
/// that columns and partners can be read off without recomputation.
#[derive(Debug, Clone)]
pub struct Weight2Block {
    pub block: BlockId,
    /// Reverse-lexicographic.
    pub members: Vec<Member>,
}

impl Weight2Block {
    pub fn new(block: &BlockId, bounds: &Bounds) -> Result<Self> {
        if block.weight > 2 {
            return Err(Error::Unsupported(format!(
                "decomposition numbers in {block} of weight {} are not available",
                block.weight
            )));
        }
        let partitions = enumerate_block(block, bounds)?;
        let p = block.p;
        let members = partitions
            .into_par_iter()
            .map(|partition| {
                let (delta, colour) = if block.weight == 2 {
                    let d = delta(&partition, p)?;
                    (
                        d,
                        if d == 0 {
                            Some(colour(&partition, p)?)
                        } else {
                            None
                        },
                    )
                } else {
                    (0, None)
                };
                let regular = partition.is_regular(p);
                Ok(Member {
                    partition,
                    delta,
                    colour,
                    regular,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight2Block {
            block: block.clone(),
            members,
        })
    }

    pub fn of(nu: &Partition, p: usize, bounds: &Bounds) -> Result<Self> {
        Self::new(&block_of(nu, p)?, bounds)
    }

    pub fn member(&self, nu: &Partition) -> Result<&Member> {
        self.members
            .iter()
            .find(|m| &m.partition == nu)
            .ok_or_else(|| Error::NotInBlock(nu.clone()))
    }

    pub fn partitions(&self) -> impl Iterator<Item = &Partition> {
        self.members.iter().map(|m| &m.partition)
    }

    /// The largest `μ ◁ ν` with the same `δ` and, when `δ = 0`, the same
    /// colour.
    pub fn nu_circ(&self, nu: &Partition) -> Result<Partition> {
        if self.block.weight != 2 {
            return Err(Error::Unsupported(format!(
                "ν° needs a weight-2 block, not {}",
                self.block
            )));
        }
        let target = self.member(nu)?;
        if !target.regular {
            return Err(Error::Singular(nu.clone(), self.block.p));
        }
        let candidates: Vec<Partition> = self
            .members
            .iter()
            .filter(|m| m.delta == target.delta && m.colour == target.colour)
            .filter(|m| nu.strictly_dominates(&m.partition).unwrap_or(false))
            .map(|m| m.partition.clone())
            .collect();
        match maximal_under_dominance(&candidates).as_slice() {
            [only] => Ok(only.clone()),
            [] => Err(invariant(format!(
                "no partition qualifies as ν° for ν = {nu}"
            ))),
            many => Err(invariant(format!(
                "ν° for ν = {nu} is not unique: {} maximal candidates",
                many.len()
            ))),
        }
    }

    pub fn column(&self, nu: &Partition) -> Result<DecompColumn> {
        let target = self.member(nu)?;
        if !target.regular {
            return Err(Error::Singular(nu.clone(), self.block.p));
        }
        let nonzero: BTreeSet<Partition> = match self.block.weight {
            0 => [nu.clone()].into(),
            1 => {
                let at = self
                    .members
                    .iter()
                    .position(|m| &m.partition == nu)
                    .expect("member");
                let below = self.members.get(at + 1).map(|m| m.partition.clone());
                [Some(nu.clone()), below].into_iter().flatten().collect()
            }
            _ => {
                let circ = self.nu_circ(nu)?;
                let mut rows: BTreeSet<Partition> = [nu.clone(), circ.clone()].into();
                for m in &self.members {
                    if m.delta.abs_diff(target.delta) == 1
                        && m.partition.strictly_dominates(&circ).unwrap_or(false)
                        && nu.strictly_dominates(&m.partition).unwrap_or(false)
                    {
                        rows.insert(m.partition.clone());
                    }
                }
                rows
            }
        };
        Ok(DecompColumn {
            block: self.block.clone(),
            nu: nu.clone(),
            rows: self
                .partitions()
                .map(|mu| DecompEntry {
                    mu: mu.clone(),
                    d: u8::from(nonzero.contains(mu)),
                })
                .collect(),
        })
    }

    /// Every column of the block, one per p-regular member.
    pub fn columns(&self) -> Result<Vec<DecompColumn>> {
        self.members
            .par_iter()
            .filter(|m| m.regular)
            .map(|m| self.column(&m.partition))
            .collect()
    }
}

pub fn nu_circ(nu: &Partition, p: usize, bounds: &Bounds) -> Result<Partition> {
    Weight2Block::of(nu, p, bounds)?.nu_circ(nu)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompEntry {
    pub mu: Partition,
    pub d: u8,
}

/// The decomposition numbers `d_{μν}` for a fixed p-regular `ν`, over every
/// `μ` in its block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompColumn {
    #[serde(skip_serializing, default = "placeholder_block")]
    pub block: BlockId,
    pub nu: Partition,
    pub rows: Vec<DecompEntry>,
}

fn placeholder_block() -> BlockId {
    BlockId {
        p: 0,
        core: Partition::empty(),
        weight: 0,
    }
}

impl DecompColumn {
    pub fn entry(&self, mu: &Partition) -> u8 {
        self.rows.iter().find(|e| &e.mu == mu).map_or(0, |e| e.d)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Partition> {
        self.rows.iter().filter(|e| e.d > 0).map(|e| &e.mu)
    }
}

pub fn decomp_column(nu: &Partition, block: &BlockId, bounds: &Bounds) -> Result<DecompColumn> {
    if !block.contains(nu) {
        return Err(Error::NotInBlock(nu.clone()));
    }
    Weight2Block::new(block, bounds)?.column(nu)
}

/// A pair of bead moves on the abacus of the core `(2k)` with `p + 1` beads
/// (`p` beads when `k = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// The bottom bead of runner `u` moves down two rows.
    Double(usize),
    /// The bottom beads of runners `u` and `v` each move down one row; when
    /// `u = v` the bead above the bottom one follows it.
    Pair(usize, usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Double(u) => write!(f, "⟨{u}⟩"),
            Label::Pair(u, v) => write!(f, "⟨{u},{v}⟩"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('⟨')
            .and_then(|t| t.strip_suffix('⟩'))
            .ok_or_else(|| bad("labels look like ⟨u⟩ or ⟨u,v⟩"))?;
        let runners = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| bad("runner is not a number"))
            })
            .collect::<Result<Vec<_>>>()?;
        match runners.as_slice() {
            [u] => Ok(Label::Double(*u)),
            [u, v] if u <= v => Ok(Label::Pair(*u, *v)),
            _ => Err(bad("expected one runner or two in increasing order")),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

fn single_row_core(block: &BlockId) -> Result<usize> {
    match block.core.parts() {
        [] => Ok(0),
        [two_k] if two_k % 2 == 0 && *two_k < block.p => Ok(*two_k),
        _ => Err(Error::Unsupported(format!(
            "labels are defined for cores (2k) with 2k < p, not {}",
            block.core
        ))),
    }
}

/// The bead-move label of `ν` in `B((2k), 2)`.
pub fn label(nu: &Partition, block: &BlockId) -> Result<Label> {
    let two_k = single_row_core(block)?;
    if block.weight != 2 || !block.contains(nu) {
        return Err(Error::NotInBlock(nu.clone()));
    }
    let p = block.p;
    // One extra row of beads so that the bead above a bottom bead is always
    // displayed; runner numbers are unchanged.
    let displayed = if two_k > 0 { p + 1 } else { p };
    let core = Abacus::from_partition(&block.core, p, displayed + p)?;
    let target = Abacus::from_partition(nu, p, displayed + p)?;
    let bottom = |r: usize| {
        let rows = core.runner_rows(r);
        r + p * rows[rows.len() - 1]
    };
    let step = |a: &Abacus, bead: usize| a.add_rim_hook(bead, 1);

    let mut candidates = Vec::new();
    for u in 0..p {
        candidates.push((
            Label::Double(u),
            step(&step(&core, bottom(u))?, bottom(u) + p)?,
        ));
        candidates.push((
            Label::Pair(u, u),
            step(&step(&core, bottom(u))?, bottom(u) - p)?,
        ));
        for v in u + 1..p {
            candidates.push((
                Label::Pair(u, v),
                step(&step(&core, bottom(u))?, bottom(v))?,
            ));
        }
    }
    candidates
        .into_iter()
        .find(|(_, a)| a.beads() == target.beads())
        .map(|(l, _)| l)
        .ok_or_else(|| invariant(format!("{nu} matches no bead-move label in {block}")))
}

/// Applies the moves of `label` to the core abacus of `block`.
pub fn apply_label(label: Label, block: &BlockId) -> Result<Partition> {
    let two_k = single_row_core(block)?;
    let p = block.p;
    let (u, v) = match label {
        Label::Double(u) | Label::Pair(u, _) if u >= p => return Err(Error::NoBead(u)),
        Label::Pair(_, v) if v >= p => return Err(Error::NoBead(v)),
        Label::Double(u) => (u, None),
        Label::Pair(u, v) => (u, Some(v)),
    };
    let displayed = if two_k > 0 { p + 1 } else { p };
    let core = Abacus::from_partition(&block.core, p, displayed + p)?;
    let bottom = |r: usize| {
        let rows = core.runner_rows(r);
        r + p * rows[rows.len() - 1]
    };
    let first = core.add_rim_hook(bottom(u), 1)?;
    let second = match v {
        None => first.add_rim_hook(bottom(u) + p, 1)?,
        Some(v) if v == u => first.add_rim_hook(bottom(u) - p, 1)?,
        Some(v) => first.add_rim_hook(bottom(v), 1)?,
    };
    Ok(second.to_partition())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainTag {
    Even,
    Delta1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainElement {
    pub partition: Partition,
    pub tag: ChainTag,
    /// Present for blocks with a single-row core.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<Label>,
    pub regular: bool,
}

/// The even and `δ = 1` members of a weight-two block with even core, in
/// strictly decreasing dominance order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub block: BlockId,
    pub elements: Vec<ChainElement>,
}

impl Chain {
    pub fn evens(&self) -> impl Iterator<Item = &ChainElement> {
        self.elements.iter().filter(|e| e.tag == ChainTag::Even)
    }

    pub fn position(&self, nu: &Partition) -> Option<usize> {
        self.elements.iter().position(|e| &e.partition == nu)
    }

    /// Numbers of `δ = 1` entries between consecutive even entries.
    pub fn alternation(&self) -> Vec<usize> {
        let evens: Vec<usize> = self
            .elements
            .iter()
            .enumerate()
            .filter(|(_, e)| e.tag == ChainTag::Even)
            .map(|(i, _)| i)
            .collect();
        evens.windows(2).map(|w| w[1] - w[0] - 1).collect()
    }
}

pub fn chain(block: &BlockId, bounds: &Bounds) -> Result<Chain> {
    if block.weight != 2 {
        return Err(Error::Unsupported(format!(
            "chains live in weight-2 blocks, not {block}"
        )));
    }
    if !block.core.is_even() {
        return Err(Error::Unsupported(format!(
            "chains need an even core, not {}",
            block.core
        )));
    }
    let labelled = single_row_core(block).is_ok();
    let w2 = Weight2Block::new(block, bounds)?;
    let elements = w2
        .members
        .iter()
        .filter_map(|m| {
            let tag = if m.partition.is_even() {
                ChainTag::Even
            } else if m.delta == 1 {
                ChainTag::Delta1
            } else {
                return None;
            };
            Some((m, tag))
        })
        .map(|(m, tag)| {
            Ok(ChainElement {
                partition: m.partition.clone(),
                tag,
                label: if labelled {
                    Some(label(&m.partition, block)?)
                } else {
                    None
                },
                regular: m.regular,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for pair in elements.windows(2) {
        if !pair[0].partition.strictly_dominates(&pair[1].partition)? {
            return Err(invariant(format!(
                "{} and {} in the chain of {block} are incomparable",
                pair[0].partition, pair[1].partition
            )));
        }
    }
    Ok(Chain {
        block: block.clone(),
        elements,
    })
}
