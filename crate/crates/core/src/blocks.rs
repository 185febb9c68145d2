//! Blocks `B(γ, w)`, the invariants `w(γ)` and `E(γ)`, the two-runner
//! closed forms and the even witness partitions used for vertices.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abacus::Abacus;
use crate::bounds::{check_modulus, Bounds};
use crate::error::{invariant, Error, Result};
use crate::partition::{for_each_partition, Partition};

/// The p-block with core `core` and weight `weight`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockId {
    pub p: usize,
    pub core: Partition,
    pub weight: usize,
}

impl BlockId {
    pub fn new(p: usize, core: Partition, weight: usize) -> Result<Self> {
        check_modulus(p)?;
        if !is_core(&core, p)? {
            return Err(Error::NotACore(core, p));
        }
        Ok(BlockId { p, core, weight })
    }

    /// Size of the partitions in the block.
    pub fn degree(&self) -> usize {
        self.core.size() + self.weight * self.p
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        block_of(lambda, self.p).is_ok_and(|b| &b == self)
    }
}

/// Cores in reverse-lexicographic order, then weight.
impl Ord for BlockId {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .core
            .cmp(&self.core)
            .then(self.weight.cmp(&other.weight))
            .then(self.p.cmp(&other.p))
    }
}

impl PartialOrd for BlockId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {})", self.core, self.weight)
    }
}

pub fn is_core(lambda: &Partition, p: usize) -> Result<bool> {
    Ok(Abacus::minimal(lambda, p)?
        .removable_rim_hooks(1)?
        .is_empty())
}

pub fn block_of(lambda: &Partition, p: usize) -> Result<BlockId> {
    let a = Abacus::minimal(lambda, p)?;
    Ok(BlockId {
        p,
        core: a.p_core(),
        weight: a.weight(),
    })
}

fn check_weight(weight: usize, bounds: &Bounds) -> Result<()> {
    if weight > bounds.max_weight {
        return Err(Error::BoundExceeded {
            what: "p-weight",
            value: weight,
            bound: bounds.max_weight,
        });
    }
    Ok(())
}

/// Core abacus with enough beads that every member of the block fits:
/// each rim p-hook spans at most `p` rows.
fn spacious_core_abacus(block: &BlockId) -> Result<Abacus> {
    Abacus::from_partition(
        &block.core,
        block.p,
        block.core.len() + block.weight * block.p,
    )
}

/// Every partition in the block, generated from all p-quotients of total size
/// `weight`, in reverse-lexicographic order.
pub fn enumerate_block(block: &BlockId, bounds: &Bounds) -> Result<Vec<Partition>> {
    check_weight(block.weight, bounds)?;
    let core = spacious_core_abacus(block)?;
    let p = block.p;
    let counts = core.runner_counts();

    // Per-runner choices: (size, rows of that runner's beads).
    let mut per_runner: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(p);
    for &m in &counts {
        let mut options = Vec::new();
        for size in 0..=block.weight {
            for_each_partition(size, |q| {
                if q.len() <= m {
                    let rows = (0..m)
                        .map(|j| (m - 1 - j) + q.get(j).copied().unwrap_or(0))
                        .collect();
                    options.push((size, rows));
                }
            });
        }
        per_runner.push(options);
    }

    let mut out = Vec::new();
    let mut rows_by_runner: Vec<&[usize]> = vec![&[]; p];
    fn rec<'a>(
        runner: usize,
        remaining: usize,
        p: usize,
        per_runner: &'a [Vec<(usize, Vec<usize>)>],
        rows_by_runner: &mut Vec<&'a [usize]>,
        out: &mut Vec<Partition>,
    ) {
        if runner == p {
            if remaining == 0 {
                let beads = rows_by_runner
                    .iter()
                    .enumerate()
                    .flat_map(|(r, rows)| rows.iter().map(move |row| r + row * p))
                    .collect();
                let abacus = Abacus::new(p, beads).expect("distinct positions by construction");
                out.push(abacus.to_partition());
            }
            return;
        }
        for (size, rows) in &per_runner[runner] {
            if *size <= remaining {
                rows_by_runner[runner] = rows;
                rec(
                    runner + 1,
                    remaining - size,
                    p,
                    per_runner,
                    rows_by_runner,
                    out,
                );
            }
        }
    }
    rec(
        0,
        block.weight,
        p,
        &per_runner,
        &mut rows_by_runner,
        &mut out,
    );
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// The invariants `w(γ)` and `E(γ)` of a p-core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreProfile {
    pub core: Partition,
    pub w: usize,
    /// Reverse-lexicographic, which refines dominance.
    pub e_set: Vec<Partition>,
}

impl CoreProfile {
    /// Members of `E(γ)` not strictly dominated by another member.
    pub fn maximal_elements(&self) -> Vec<Partition> {
        maximal_under_dominance(&self.e_set)
    }

    /// The dominance-maximum of `E(γ)`; an error if it is not unique.
    pub fn maximum(&self) -> Result<Partition> {
        match self.maximal_elements().as_slice() {
            [only] => Ok(only.clone()),
            [] => Err(invariant(format!("E({}) is empty", self.core))),
            many => Err(invariant(format!(
                "E({}) has {} dominance-maximal elements",
                self.core,
                many.len()
            ))),
        }
    }
}

pub(crate) fn maximal_under_dominance(set: &[Partition]) -> Vec<Partition> {
    set.iter()
        .filter(|a| {
            !set.iter()
                .any(|b| b != *a && b.size() == a.size() && b.dominates(a).unwrap_or(false))
        })
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProfileOptions {
    /// Also search the levels of the wrong parity and fail if any is
    /// non-empty.
    pub check_parity: bool,
    /// Keep every bead at position `<= -2` fixed (relative to the abacus whose
    /// first space is at `0`), shrinking the search.
    pub prune_deep_beads: bool,
}

/// Even partitions with core `core` and weight exactly `weight`, searched on
/// an abacus of `bead_count` displayed beads (all negative positions stay
/// occupied). Reverse-lexicographic order.
///
/// The search places beads in increasing position. An even partition is one
/// whose `i`-th displayed bead (from `0`) sits at a position of parity `i`,
/// and the weight of a bead is its row minus the number of beads above it on
/// its runner, so both constraints can be checked while placing.
pub fn even_members(
    core: &Partition,
    p: usize,
    weight: usize,
    bead_count: usize,
) -> Result<Vec<Partition>> {
    let core_abacus = Abacus::from_partition(core, p, bead_count)?;
    let targets = core_abacus.runner_counts();
    let last_row = targets.iter().map(|&t| t + weight).max().unwrap_or(0);
    let mut search = EvenSearch {
        p,
        weight,
        bead_count,
        targets,
        end: (last_row + 1) * p,
        placed: vec![0; p],
        beads: Vec::with_capacity(bead_count),
        found: Vec::new(),
    };
    search.run(0, 0);
    let mut found = search.found;
    found.sort_unstable_by(|a, b| b.cmp(a));
    found.dedup();
    Ok(found)
}

struct EvenSearch {
    p: usize,
    weight: usize,
    bead_count: usize,
    targets: Vec<usize>,
    end: usize,
    placed: Vec<usize>,
    beads: Vec<usize>,
    found: Vec<Partition>,
}

impl EvenSearch {
    /// Least extra weight still to be paid if no bead goes below `x`.
    fn lower_bound(&self, x: usize) -> usize {
        (0..self.p)
            .map(|r| {
                let remaining = self.targets[r] - self.placed[r];
                if remaining == 0 {
                    return 0;
                }
                let first_row = if x > r { (x - r).div_ceil(self.p) } else { 0 };
                remaining * first_row.saturating_sub(self.placed[r])
            })
            .sum()
    }

    fn run(&mut self, x: usize, spent: usize) {
        if self.beads.len() == self.bead_count {
            if spent == self.weight {
                let abacus = Abacus::new(self.p, self.beads.clone()).expect("increasing positions");
                self.found.push(abacus.to_partition());
            }
            return;
        }
        if x >= self.end || spent + self.lower_bound(x) > self.weight {
            return;
        }
        let r = x % self.p;
        let row = x / self.p;
        if self.placed[r] < self.targets[r] && x % 2 == self.beads.len() % 2 {
            let cost = row - self.placed[r];
            if spent + cost <= self.weight {
                self.placed[r] += 1;
                self.beads.push(x);
                self.run(x + 1, spent + cost);
                self.beads.pop();
                self.placed[r] -= 1;
            }
        }
        self.run(x + 1, spent);
    }
}

/// `w(γ)` and `E(γ)` by scanning weights `|γ| mod 2, |γ| mod 2 + 2, ...` and
/// collecting the even members of each block until one is found.
pub fn core_profile(core: &Partition, p: usize, bounds: &Bounds) -> Result<CoreProfile> {
    core_profile_with(core, p, bounds, ProfileOptions::default())
}

pub fn core_profile_with(
    core: &Partition,
    p: usize,
    bounds: &Bounds,
    options: ProfileOptions,
) -> Result<CoreProfile> {
    check_modulus(p)?;
    if !is_core(core, p)? {
        return Err(Error::NotACore(core.clone(), p));
    }
    let beads_for = |w: usize| {
        if options.prune_deep_beads {
            core.len() + 1
        } else {
            core.len() + w * p
        }
    };
    let mut w = core.size() % 2;
    while w <= bounds.max_weight {
        if options.check_parity && w > 0 {
            let wrong = even_members(core, p, w - 1, beads_for(w - 1))?;
            if let Some(lambda) = wrong.first() {
                return Err(invariant(format!(
                    "even partition {lambda} in B({core}, {}) has the wrong parity",
                    w - 1
                )));
            }
        }
        let e_set = even_members(core, p, w, beads_for(w))?;
        if !e_set.is_empty() {
            return Ok(CoreProfile {
                core: core.clone(),
                w,
                e_set,
            });
        }
        w += 2;
    }
    Err(Error::BoundExceeded {
        what: "w(γ) search weight",
        value: w,
        bound: bounds.max_weight,
    })
}

/// Which closed form for two-runner cores applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoRunnerCase {
    /// `u` and `u' - u` even: `w = t t'`.
    EvenRunners,
    /// `u` odd and `u' = p - 1`: `w = t (t' + 1)`.
    LastRunner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRunnerCore {
    pub case: TwoRunnerCase,
    pub core: Partition,
    pub w: usize,
    /// A member of `E(core)` built by the stated bead moves.
    pub witness: Partition,
}

/// The core with `t` beads on runner `u`, `t_prime` beads on runner `u_prime`
/// (rows `0, 1, ...`) and nothing else in non-negative positions, with its
/// closed-form `w(γ)` and a member of `E(γ)`.
pub fn two_runner_w(
    t: usize,
    t_prime: usize,
    u: usize,
    u_prime: usize,
    p: usize,
) -> Result<TwoRunnerCore> {
    check_modulus(p)?;
    if u >= u_prime || u_prime >= p {
        return Err(Error::Hypotheses(format!(
            "need u < u' < p, got u = {u}, u' = {u_prime}, p = {p}"
        )));
    }
    let case = if u.is_multiple_of(2) && (u_prime - u).is_multiple_of(2) {
        TwoRunnerCase::EvenRunners
    } else if u % 2 == 1 && u_prime == p - 1 {
        TwoRunnerCase::LastRunner
    } else {
        return Err(Error::Hypotheses(format!(
            "runners u = {u}, u' = {u_prime} fit neither case for p = {p}"
        )));
    };
    let runner = |r: usize, count: usize, drop: usize| (0..count).map(move |i| r + p * (i + drop));
    let core_beads: Vec<usize> = runner(u, t, 0).chain(runner(u_prime, t_prime, 0)).collect();
    let (w, witness_beads): (usize, Vec<usize>) = match case {
        TwoRunnerCase::EvenRunners => (
            t * t_prime,
            runner(u, t, 0).chain(runner(u_prime, t_prime, t)).collect(),
        ),
        TwoRunnerCase::LastRunner => (
            t * (t_prime + 1),
            runner(u, t, t_prime + 1)
                .chain(runner(u_prime, t_prime, 0))
                .collect(),
        ),
    };
    Ok(TwoRunnerCore {
        case,
        core: Abacus::new(p, core_beads)?.to_partition(),
        w,
        witness: Abacus::new(p, witness_beads)?.to_partition(),
    })
}

/// Parameters of the even partition `λ_{k,ℓ}` of `2n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub k: usize,
    pub l: usize,
    pub s: usize,
    pub r: usize,
    pub partition: Partition,
}

/// `θ_k = (k + 1)(2 + (p - 1)k / 2)`, the size of the staircase `λ_{k,0}`.
fn theta(k: usize, p: usize) -> usize {
    (k + 1) * (2 + (p - 1) * k / 2)
}

/// The even partition `λ_{k,ℓ}` of `2n`: a staircase core `λ_{k,0}` with
/// steps of `p - 1`, widened by `2s` in every row and by two more in the top
/// `r` rows.
pub fn witness(n: usize, p: usize) -> Result<Witness> {
    check_modulus(p)?;
    if n == 0 {
        return Err(Error::Unsupported("witness needs n >= 1".into()));
    }
    let two_n = 2 * n;
    let mut k = 0;
    while theta(k + 1, p) <= two_n {
        k += 1;
    }
    let l = (two_n - theta(k, p)) / 2;
    let (s, r) = (l / (k + 1), l % (k + 1));
    let parts = (0..=k)
        .map(|i| {
            let staircase = 2 + (k - i) * (p - 1);
            staircase + if i < r { 2 * (s + 1) } else { 2 * s }
        })
        .collect();
    Ok(Witness {
        k,
        l,
        s,
        r,
        partition: Partition::new(parts)?,
    })
}

/// Groups partitions by block, sorting each group reverse-lexicographically.
pub fn group_by_block(
    partitions: impl IntoParallelIterator<Item = Partition>,
    p: usize,
) -> Result<Vec<(BlockId, Vec<Partition>)>> {
    let tagged: Vec<(BlockId, Partition)> = partitions
        .into_par_iter()
        .map(|lambda| block_of(&lambda, p).map(|b| (b, lambda)))
        .collect::<Result<_>>()?;
    let mut groups: std::collections::BTreeMap<BlockId, Vec<Partition>> = Default::default();
    for (b, lambda) in tagged {
        groups.entry(b).or_default().push(lambda);
    }
    Ok(groups
        .into_iter()
        .map(|(b, mut v)| {
            v.sort_unstable_by(|x, y| y.cmp(x));
            (b, v)
        })
        .collect())
}
