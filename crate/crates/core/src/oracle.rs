//! Brute-force reference implementations that work directly on Young
//! diagrams, with no abacus anywhere. Tests compare the abacus engine against
//! these on every partition up to a modest size.

use std::collections::{BTreeMap, BTreeSet};

use crate::blocks::maximal_under_dominance;
use crate::partition::{for_each_partition, Partition};
use crate::weight2::Label;

/// A rim hook of `λ` given by the cell it is the hook of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramHook {
    pub row: usize,
    pub col: usize,
    pub leg: usize,
    pub remainder: Partition,
}

/// All rim hooks of length `h`, found by checking the hook length of every
/// cell and unwrapping the corresponding border strip.
pub fn rim_hooks(lambda: &Partition, h: usize) -> Vec<DiagramHook> {
    let rows = lambda.parts();
    let cols = lambda.conjugate();
    let mut out = Vec::new();
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len {
            let arm = len - j - 1;
            let leg = cols.part(j) - i - 1;
            if arm + leg + 1 != h {
                continue;
            }
            let end = i + leg;
            let mut parts = rows.to_vec();
            for r in i..end {
                parts[r] = rows[r + 1] - 1;
            }
            parts[end] = j;
            out.push(DiagramHook {
                row: i,
                col: j,
                leg,
                remainder: Partition::from_unsorted(parts),
            });
        }
    }
    out
}

/// Number of partitions of `n` from Euler's pentagonal recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut counts = vec![1u64; n + 1];
    for m in 1..=n {
        let mut total: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * counts[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * counts[m - g2] as i128;
            }
        }
        counts[m] = total as u64;
    }
    counts[n]
}

/// Every `(core, weight)` reachable by removing rim p-hooks greedily in every
/// possible order. A correct theory gives exactly one.
pub fn greedy_cores(lambda: &Partition, p: usize) -> BTreeSet<(Partition, usize)> {
    fn walk(
        lambda: &Partition,
        p: usize,
        removed: usize,
        seen: &mut BTreeSet<(Partition, usize)>,
        out: &mut BTreeSet<(Partition, usize)>,
    ) {
        if !seen.insert((lambda.clone(), removed)) {
            return;
        }
        let hooks = rim_hooks(lambda, p);
        if hooks.is_empty() {
            out.insert((lambda.clone(), removed));
        }
        for h in hooks {
            walk(&h.remainder, p, removed + 1, seen, out);
        }
    }
    let mut out = BTreeSet::new();
    walk(lambda, p, 0, &mut BTreeSet::new(), &mut out);
    out
}

/// Core and weight, assuming the greedy removal is order-independent.
pub fn core_and_weight(lambda: &Partition, p: usize) -> (Partition, usize) {
    let mut current = lambda.clone();
    let mut weight = 0;
    while let Some(h) = rim_hooks(&current, p).into_iter().next() {
        current = h.remainder;
        weight += 1;
    }
    (current, weight)
}

/// `|leg1 - leg2|` over every way of removing two rim p-hooks.
pub fn delta_values(nu: &Partition, p: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for h1 in rim_hooks(nu, p) {
        for h2 in rim_hooks(&h1.remainder, p) {
            out.insert(h1.leg.abs_diff(h2.leg));
        }
    }
    out
}

/// Colour as a boolean (`true` is black), or `None` when undefined.
pub fn is_black(nu: &Partition, p: usize) -> Option<bool> {
    if delta_values(nu, p) != BTreeSet::from([0]) {
        return None;
    }
    let hooks = rim_hooks(nu, p);
    if hooks.len() >= 2 {
        return Some(hooks.iter().map(|h| h.leg).max()? % 2 == 0);
    }
    match rim_hooks(nu, 2 * p).as_slice() {
        [h] => Some(matches!(h.leg % 4, 0 | 3)),
        _ => None,
    }
}

/// All partitions of `size` grouped by `(core, weight)`.
pub fn blocks_of_size(size: usize, p: usize) -> BTreeMap<(Partition, usize), Vec<Partition>> {
    let mut out: BTreeMap<(Partition, usize), Vec<Partition>> = BTreeMap::new();
    for_each_partition(size, |parts| {
        let lambda = Partition::new(parts.to_vec()).expect("generated partitions are valid");
        out.entry(core_and_weight(&lambda, p))
            .or_default()
            .push(lambda);
    });
    out
}

/// `ν°` recomputed from the diagram statistics, or `None` if it does not
/// exist uniquely.
pub fn nu_circ(nu: &Partition, p: usize, block: &[Partition]) -> Option<Partition> {
    let d = delta_values(nu, p);
    let c = is_black(nu, p);
    let candidates: Vec<Partition> = block
        .iter()
        .filter(|mu| nu.strictly_dominates(mu).unwrap_or(false))
        .filter(|mu| delta_values(mu, p) == d && is_black(mu, p) == c)
        .cloned()
        .collect();
    match maximal_under_dominance(&candidates).as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    }
}

/// `w(γ)` and `E(γ)` by testing the core of every even partition of
/// `|γ| + w p` for increasing `w`, up to size `max_size`.
pub fn e_set(core: &Partition, p: usize, max_size: usize) -> Option<(usize, Vec<Partition>)> {
    let mut w = core.size() % 2;
    while core.size() + w * p <= max_size {
        let size = core.size() + w * p;
        let mut found = Vec::new();
        for_each_partition(size / 2, |half| {
            let lambda = Partition::new(half.iter().map(|x| 2 * x).collect()).expect("valid");
            if &core_and_weight(&lambda, p).0 == core {
                found.push(lambda);
            }
        });
        if !found.is_empty() {
            found.sort_unstable_by(|a, b| b.cmp(a));
            return Some((w, found));
        }
        w += 2;
    }
    None
}

/// The chain of even and `δ = 1` partitions of `B((2k), 2)` as predicted by
/// bead moves, top first, with `true` marking the even entries.
pub fn chain_labels(p: usize, two_k: usize) -> Vec<(Label, bool)> {
    let pair = Label::Pair;
    // Runs of two δ = 1 moves followed by an even one, for j = top, top - 2, ...
    let descend = |out: &mut Vec<(Label, bool)>, top: usize, stop: usize| {
        let mut j = top;
        while j >= stop {
            out.push((pair(j - 1, j + 1), false));
            out.push((pair(j - 2, j), false));
            out.push((pair(j - 2, j - 1), true));
            j -= 2;
        }
    };
    let mut out = Vec::new();
    if two_k == 0 || two_k == p - 1 {
        out.push((Label::Double(p - 1), true));
        if two_k == 0 {
            out.push((Label::Double(p - 2), false));
            out.push((pair(p - 3, p - 1), false));
        } else {
            out.push((pair(p - 2, p - 1), false));
            out.push((Label::Double(p - 3), false));
        }
        out.push((pair(p - 3, p - 2), true));
        descend(&mut out, p - 3, 2);
    } else {
        out.push((Label::Double(two_k), true));
        out.push((Label::Double(p - 1), false));
        out.push((pair(two_k, p - 2), false));
        out.push((pair(p - 2, p - 1), true));
        descend(&mut out, p - 2, two_k + 3);
        out.push((pair(two_k - 1, two_k + 2), false));
        out.push((pair(two_k - 2, two_k + 1), false));
        out.push((pair(two_k - 2, two_k - 1), true));
        descend(&mut out, two_k - 2, 2);
    }
    out.push((pair(1, 1), false));
    out
}
