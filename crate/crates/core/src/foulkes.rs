//! The Foulkes module `H^(2^n)` block by block: its ordinary character, the
//! summand in every block of weight at most two, the vertices that occur, and
//! the Loewy structure of the Scott module in the principal block.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::{block_of, core_profile, group_by_block, witness, BlockId};
use crate::bounds::{check_modulus, Bounds};
use crate::error::{invariant, Error, Result};
use crate::partition::{enumerate_partitions, Partition};
use crate::weight2::{chain, ChainTag, Label, Weight2Block};

/// Even partitions of `2n`, grouped by block in [`BlockId`] order.
pub fn character(n: usize, p: usize, bounds: &Bounds) -> Result<Vec<(BlockId, Vec<Partition>)>> {
    check_modulus(p)?;
    let halves = enumerate_partitions(n, bounds)?;
    group_by_block(
        halves.into_iter().map(|l| l.double()).collect::<Vec<_>>(),
        p,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SummandKind {
    SimpleSpecht,
    Weight1Projective,
    Weight2Projective,
    VertexQ1Scott,
    VertexQ1NonPrincipal,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionFactor {
    pub label: Partition,
    pub multiplicity: usize,
}

/// What is known about the summands of `H^(2^n)` in one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandReport {
    pub block: BlockId,
    pub kind: SummandKind,
    pub vertex_t: usize,
    /// `λ` for the summands `S^λ` and `P^λ`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<Partition>,
    /// The even partitions whose characters make up the summand.
    pub character: Vec<Partition>,
    /// Dominance-ascending; empty when unknown.
    pub specht_filtration: Vec<Partition>,
    /// Simple modules `D^μ` with multiplicities; empty when unknown.
    pub composition: Vec<CompositionFactor>,
    pub loewy_layers: Option<Vec<Vec<Partition>>>,
    /// Pairs `(even partition, heart partition)` of extensions exhibited by
    /// the module.
    pub edges: Vec<(Partition, Partition)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub green_correspondent_note: Option<String>,
    pub definitive: bool,
    pub notes: Vec<String>,
}

impl SummandReport {
    fn new(block: BlockId, kind: SummandKind, character: Vec<Partition>) -> Self {
        SummandReport {
            block,
            kind,
            vertex_t: 0,
            label: None,
            character,
            specht_filtration: Vec::new(),
            composition: Vec::new(),
            loewy_layers: None,
            edges: Vec::new(),
            green_correspondent_note: None,
            definitive: true,
            notes: Vec::new(),
        }
    }

    pub fn multiplicity(&self, label: &Partition) -> usize {
        self.composition
            .iter()
            .find(|f| &f.label == label)
            .map_or(0, |f| f.multiplicity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub p: usize,
    pub n: usize,
    pub blocks: Vec<SummandReport>,
}

impl Report {
    pub fn block(&self, core: &Partition, weight: usize) -> Option<&SummandReport> {
        self.blocks
            .iter()
            .find(|r| &r.block.core == core && r.block.weight == weight)
    }
}

fn ascending(set: &[Partition]) -> Vec<Partition> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v
}

/// Composition factors of `Σ S^μ` over `spechts`, from the rows of the
/// decomposition matrix.
fn composition(block: &Weight2Block, spechts: &[Partition]) -> Result<Vec<CompositionFactor>> {
    let columns = block.columns()?;
    let mut counts: BTreeMap<Partition, usize> = BTreeMap::new();
    for mu in spechts {
        for col in &columns {
            if col.entry(mu) > 0 {
                *counts.entry(col.nu.clone()).or_default() += 1;
            }
        }
    }
    Ok(counts
        .into_iter()
        .rev()
        .map(|(label, multiplicity)| CompositionFactor {
            label,
            multiplicity,
        })
        .collect())
}

fn multiset(layers: &[Vec<Partition>]) -> BTreeMap<Partition, usize> {
    let mut m = BTreeMap::new();
    for x in layers.iter().flatten() {
        *m.entry(x.clone()).or_default() += 1;
    }
    m
}

fn as_multiset(factors: &[CompositionFactor]) -> BTreeMap<Partition, usize> {
    factors
        .iter()
        .map(|f| (f.label.clone(), f.multiplicity))
        .collect()
}

fn analyze_block(
    n: usize,
    block: BlockId,
    evens: Vec<Partition>,
    bounds: &Bounds,
) -> Result<SummandReport> {
    let p = block.p;
    let profile = core_profile(&block.core, p, bounds)?;
    let w_gamma = profile.w;
    match (block.weight, w_gamma) {
        (0, _) => {
            let gamma = block.core.clone();
            let mut r = SummandReport::new(block, SummandKind::SimpleSpecht, evens);
            r.label = Some(gamma.clone());
            r.specht_filtration = vec![gamma.clone()];
            r.composition = vec![CompositionFactor {
                label: gamma.clone(),
                multiplicity: 1,
            }];
            r.loewy_layers = Some(vec![vec![gamma]]);
            Ok(r)
        }
        (1, 1) => analyze_weight_one(block, evens, &profile.e_set, bounds),
        (2, 2) => {
            let w2 = Weight2Block::new(&block, bounds)?;
            let e = &profile.e_set;
            if !(3..=4).contains(&e.len()) {
                return Err(invariant(format!(
                    "|E({})| = {}, expected 3 or 4",
                    block.core,
                    e.len()
                )));
            }
            let top = profile.maximum()?;
            let column: Vec<Partition> = w2.column(&top)?.nonzero().cloned().collect();
            if column != *e || evens != *e {
                return Err(invariant(format!(
                    "the column of {top} does not match E({}) in {block}",
                    block.core
                )));
            }
            let mut r = SummandReport::new(block, SummandKind::Weight2Projective, evens.clone());
            r.label = Some(top);
            r.specht_filtration = ascending(&evens);
            r.composition = composition(&w2, &evens)?;
            Ok(r)
        }
        (2, 0) => analyze_vertex_q1(n, block, evens, bounds),
        (w, wg) if w >= 3 => Ok(undetermined(block, evens, wg)),
        (w, wg) => Err(invariant(format!(
            "{block} meets the even character although w({}) = {wg} and w = {w}",
            block.core
        ))),
    }
}

fn analyze_weight_one(
    block: BlockId,
    evens: Vec<Partition>,
    e_set: &[Partition],
    bounds: &Bounds,
) -> Result<SummandReport> {
    let [upper, lower] = e_set else {
        return Err(invariant(format!(
            "|E({})| = {}, expected 2",
            block.core,
            e_set.len()
        )));
    };
    if !upper.strictly_dominates(lower)? || evens.as_slice() != e_set {
        return Err(invariant(format!(
            "E({}) is not a dominance pair matching {block}",
            block.core
        )));
    }
    let w1 = Weight2Block::new(&block, bounds)?;
    let at = w1
        .members
        .iter()
        .position(|m| &m.partition == upper)
        .ok_or_else(|| Error::NotInBlock(upper.clone()))?;
    let column: Vec<Partition> = w1.column(upper)?.nonzero().cloned().collect();
    if column != e_set {
        return Err(invariant(format!(
            "{upper} and {lower} are not neighbours in {block}"
        )));
    }
    let above = at.checked_sub(1).map(|i| w1.members[i].partition.clone());
    let middle: Vec<Partition> = above.into_iter().chain([lower.clone()]).collect();
    let layers = vec![vec![upper.clone()], middle, vec![upper.clone()]];
    let comp = composition(&w1, &evens)?;
    if as_multiset(&comp) != multiset(&layers) {
        return Err(invariant(format!(
            "Loewy layers of P^{upper} disagree with its composition factors"
        )));
    }
    let mut r = SummandReport::new(block, SummandKind::Weight1Projective, evens.clone());
    r.label = Some(upper.clone());
    r.specht_filtration = ascending(&evens);
    r.composition = comp;
    r.loewy_layers = Some(layers);
    Ok(r)
}

fn green_note(n: usize, p: usize, gamma: &Partition) -> String {
    format!(
        "Green correspondent P ⊗ S^{gamma} over N_{{S_{}}}(Q_1)/Q_1 ≅ N_{{S_{}}}(Q_1)/Q_1 × S_{}, \
         P the projective cover of the trivial module",
        2 * n,
        2 * p,
        2 * n - 2 * p
    )
}

const FILTRATION_PROVISO: &str = "Specht filtration requires p ≥ 5";

fn analyze_vertex_q1(
    n: usize,
    block: BlockId,
    evens: Vec<Partition>,
    bounds: &Bounds,
) -> Result<SummandReport> {
    let p = block.p;
    let w2 = Weight2Block::new(&block, bounds)?;
    let single_row = block.core.len() <= 1;
    let kind = if single_row {
        SummandKind::VertexQ1Scott
    } else {
        SummandKind::VertexQ1NonPrincipal
    };
    let gamma = block.core.clone();
    let mut r = SummandReport::new(block, kind, evens.clone());
    r.vertex_t = 1;
    r.specht_filtration = ascending(&evens);
    r.composition = composition(&w2, &evens)?;
    r.green_correspondent_note = Some(green_note(n, p, &gamma));
    if p == 3 {
        r.notes.push(FILTRATION_PROVISO.to_string());
    }
    if single_row {
        let s = scott(p, gamma.size() / 2, bounds)?;
        let layers = vec![s.top.clone(), s.heart.clone(), s.socle.clone()];
        if as_multiset(&r.composition) != multiset(&layers) {
            return Err(invariant(format!(
                "composition factors of the Scott module in {} differ from its Loewy layers",
                r.block
            )));
        }
        r.loewy_layers = Some(layers);
        r.edges = s.edges;
    }
    Ok(r)
}

fn undetermined(block: BlockId, evens: Vec<Partition>, w_gamma: usize) -> SummandReport {
    let t = (block.weight - w_gamma) / 2;
    let mut r = SummandReport::new(block, SummandKind::Undetermined, evens);
    r.vertex_t = t;
    r.definitive = false;
    r.notes.push(if w_gamma <= 2 {
        format!("exactly one summand with vertex Q_{t} (w(γ) = {w_gamma}); other vertices undetermined")
    } else {
        format!("at least one summand with vertex Q_{t} (w(γ) = {w_gamma}); other vertices undetermined")
    });
    r
}

/// One report per block met by the character of `H^(2^n)`.
pub fn analyze(n: usize, p: usize, bounds: &Bounds) -> Result<Report> {
    let blocks = character(n, p, bounds)?
        .into_par_iter()
        .map(|(block, evens)| analyze_block(n, block, evens, bounds))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { p, n, blocks })
}

/// The Loewy structure of the Scott module in `B((2k), 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScottStructure {
    pub block: BlockId,
    pub top: Vec<Partition>,
    pub socle: Vec<Partition>,
    pub heart: Vec<Partition>,
    pub top_labels: Vec<Label>,
    pub heart_labels: Vec<Label>,
    /// `(even partition, heart partition)`; each pair appears between the
    /// top and the heart and again between the heart and the socle.
    pub edges: Vec<(Partition, Partition)>,
    /// The even partitions, dominance-ascending.
    pub specht_order: Vec<Partition>,
    pub excluded: Partition,
}

/// The Scott module of `H^(2^(p+k))` in the principal block `B((2k), 2)`.
pub fn scott(p: usize, k: usize, bounds: &Bounds) -> Result<ScottStructure> {
    check_modulus(p)?;
    if 2 * k >= p {
        return Err(Error::Unsupported(format!(
            "the Scott structure needs 2k < p, got 2k = {}",
            2 * k
        )));
    }
    let core = if k == 0 {
        Partition::empty()
    } else {
        Partition::new(vec![2 * k])?
    };
    let block = BlockId::new(p, core, 2)?;
    let c = chain(&block, bounds)?;
    let excluded = {
        let mut parts = vec![2; p];
        if k > 0 {
            parts.insert(0, 2 * k);
        }
        Partition::new(parts)?
    };

    let evens: Vec<usize> = (0..c.elements.len())
        .filter(|&i| c.elements[i].tag == ChainTag::Even)
        .collect();
    if evens.first() != Some(&0) {
        return Err(invariant(format!(
            "the chain of {block} does not start with an even partition"
        )));
    }
    let mut top = Vec::new();
    let mut heart = Vec::new();
    let mut edges = Vec::new();
    for (idx, &i) in evens.iter().enumerate() {
        let mu = &c.elements[i];
        if mu.regular {
            top.push(mu.partition.clone());
        } else if mu.partition != excluded {
            return Err(invariant(format!(
                "{} is even and p-singular in {block}",
                mu.partition
            )));
        }
        if idx == 0 {
            continue;
        }
        let nu = &c.elements[i - 1];
        if nu.tag != ChainTag::Delta1 || !nu.regular {
            return Err(invariant(format!(
                "no p-regular δ = 1 partition directly above {}",
                mu.partition
            )));
        }
        heart.push(nu.partition.clone());
        edges.push((
            c.elements[evens[idx - 1]].partition.clone(),
            nu.partition.clone(),
        ));
        if mu.regular {
            edges.push((mu.partition.clone(), nu.partition.clone()));
        }
    }
    if top.len() + 1 != evens.len() || c.elements.iter().all(|e| e.partition != excluded) {
        return Err(invariant(format!(
            "{excluded} is not the unique p-singular even partition of {block}"
        )));
    }
    let label_of = |x: &Partition| {
        c.elements
            .iter()
            .find(|e| &e.partition == x)
            .and_then(|e| e.label)
            .ok_or_else(|| invariant(format!("{x} has no label")))
    };
    let s = ScottStructure {
        top_labels: top.iter().map(label_of).collect::<Result<_>>()?,
        heart_labels: heart.iter().map(label_of).collect::<Result<_>>()?,
        socle: top.clone(),
        specht_order: evens
            .iter()
            .rev()
            .map(|&i| c.elements[i].partition.clone())
            .collect(),
        block,
        top,
        heart,
        edges,
        excluded,
    };
    s.check_shape()?;
    Ok(s)
}

impl ScottStructure {
    /// Top equals socle, the heart is as large as the top, and the edges form
    /// a single path through every top and heart vertex.
    pub fn check_shape(&self) -> Result<()> {
        let fail = |what: &str| Err(invariant(format!("Scott module of {}: {what}", self.block)));
        if self.top != self.socle {
            return fail("top and socle differ");
        }
        if self.heart.len() != self.top.len() {
            return fail("heart and top have different sizes");
        }
        if self.edges.len() + 1 != self.top.len() + self.heart.len() {
            return fail("edge count is not that of a path");
        }
        let mut degree: BTreeMap<(bool, &Partition), usize> = BTreeMap::new();
        for (even, h) in &self.edges {
            if !self.top.contains(even) || !self.heart.contains(h) {
                return fail("an edge leaves the top or the heart");
            }
            *degree.entry((false, even)).or_default() += 1;
            *degree.entry((true, h)).or_default() += 1;
        }
        if degree.len() != self.top.len() + self.heart.len() || degree.values().any(|&d| d > 2) {
            return fail("the edges do not form a path");
        }
        // A forest with |V| - 1 edges is a tree; with degrees at most two it
        // is a path. Rule out cycles by walking from an end.
        let Some(((side, start), _)) = degree.iter().find(|(_, &d)| d == 1) else {
            return if self.edges.is_empty() && self.top.len() == 1 && self.heart.is_empty() {
                Ok(())
            } else {
                fail("the edges contain a cycle")
            };
        };
        let mut seen: BTreeSet<(bool, &Partition)> = BTreeSet::from([(*side, *start)]);
        let mut frontier = vec![(*side, *start)];
        while let Some((side, x)) = frontier.pop() {
            for (even, h) in &self.edges {
                let next = match side {
                    false if even == x => (true, h),
                    true if h == x => (false, even),
                    _ => continue,
                };
                if seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        if seen.len() != degree.len() {
            return fail("the edges are disconnected");
        }
        Ok(())
    }

    /// Graphviz rendering with the top, heart and socle on three ranks.
    pub fn to_dot(&self) -> String {
        let layers = [self.top.clone(), self.heart.clone(), self.socle.clone()];
        let mut edges = Vec::new();
        for (even, h) in &self.edges {
            let e = self.top.iter().position(|x| x == even).expect("top vertex");
            let hi = self
                .heart
                .iter()
                .position(|x| x == h)
                .expect("heart vertex");
            edges.push(((0, e), (1, hi)));
            edges.push(((1, hi), (2, e)));
        }
        loewy_dot(
            &format!("scott_{}", self.block.core.size() / 2),
            &layers,
            &edges,
        )
    }
}

/// A vertex of a Loewy diagram: layer, then position within the layer.
pub type Slot = (usize, usize);

/// Graphviz rendering of Loewy layers, one rank per layer, with undirected
/// edges between slots.
pub fn loewy_dot(name: &str, layers: &[Vec<Partition>], edges: &[(Slot, Slot)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {name} {{");
    let _ = writeln!(out, "  rankdir=TB;");
    let _ = writeln!(out, "  node [shape=plaintext];");
    for (l, layer) in layers.iter().enumerate() {
        let _ = write!(out, "  {{ rank=same;");
        for (i, mu) in layer.iter().enumerate() {
            let _ = write!(out, " n{l}_{i} [label=\"D^{}\"];", mu.to_compact_string());
        }
        let _ = writeln!(out, " }}");
    }
    for ((l1, i1), (l2, i2)) in edges {
        let _ = writeln!(out, "  n{l1}_{i1} -- n{l2}_{i2};");
    }
    out.push_str("}\n");
    out
}

impl SummandReport {
    /// Graphviz rendering of the Loewy layers, if known.
    pub fn to_dot(&self) -> Option<String> {
        let layers = self.loewy_layers.as_ref()?;
        let mut edges = Vec::new();
        if layers.len() == 3 {
            for (even, h) in &self.edges {
                let (Some(e), Some(hi)) = (
                    layers[0].iter().position(|x| x == even),
                    layers[1].iter().position(|x| x == h),
                ) else {
                    continue;
                };
                edges.push(((0, e), (1, hi)));
                edges.push(((1, hi), (2, e)));
            }
        }
        let name = format!(
            "block_{}_{}",
            self.block
                .core
                .to_compact_string()
                .replace(['(', ')', ',', '^'], "_"),
            self.block.weight
        );
        Some(loewy_dot(&name, layers, &edges))
    }
}

/// A block of `S_{2n}` holding a summand with vertex `Q_t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexWitness {
    pub t: usize,
    /// An even partition of `2(n - tp)` in `E` of its core.
    pub witness: Partition,
    pub block: BlockId,
}

/// For each `t ≤ n/p` a block carrying a summand with vertex `Q_t`: the even
/// witness of `2(n - tp)` gives a projective summand of the smaller Foulkes
/// module, which the Green correspondence lifts to weight `w(γ) + 2t`.
pub fn vertex_spectrum(n: usize, p: usize, bounds: &Bounds) -> Result<Vec<VertexWitness>> {
    check_modulus(p)?;
    (0..=n / p)
        .map(|t| {
            let m = n - t * p;
            let mu = if m == 0 {
                Partition::empty()
            } else {
                witness(m, p)?.partition
            };
            let gamma = block_of(&mu, p)?.core;
            let w = core_profile(&gamma, p, bounds)?.w + 2 * t;
            if gamma.size() + w * p != 2 * n {
                return Err(invariant(format!(
                    "witness {mu} of 2·{m} is not in E({gamma}) for p = {p}"
                )));
            }
            Ok(VertexWitness {
                t,
                witness: mu,
                block: BlockId {
                    p,
                    core: gamma,
                    weight: w,
                },
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxVertexCount {
    pub t: usize,
    pub r: usize,
    pub count: usize,
    pub cores: Vec<Partition>,
    /// The blocks of `S_{2n}` holding the summands with vertex `Q_t`.
    pub blocks: Vec<BlockId>,
}

/// Summands with the largest vertex `Q_t`, `t = ⌊n/p⌋`: one for each p-core of
/// an even partition of `2r`, `r = n - tp`, each in its own block.
pub fn max_vertex_count(n: usize, p: usize, bounds: &Bounds) -> Result<MaxVertexCount> {
    check_modulus(p)?;
    let t = n / p;
    let r = n - t * p;
    let cores: BTreeSet<Partition> = enumerate_partitions(r, bounds)?
        .iter()
        .map(|l| block_of(&l.double(), p).map(|b| b.core))
        .collect::<Result<_>>()?;
    let cores: Vec<Partition> = cores.into_iter().rev().collect();
    let blocks = cores
        .iter()
        .map(|g| BlockId {
            p,
            core: g.clone(),
            weight: (2 * n - g.size()) / p,
        })
        .collect();
    Ok(MaxVertexCount {
        t,
        r,
        count: cores.len(),
        cores,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn character_of_small_modules() {
        let b = Bounds::default();
        let c = character(2, 5, &b).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|(block, _)| block.weight == 0));
        let c = character(1, 3, &b).unwrap();
        assert_eq!(
            c,
            vec![(BlockId::new(3, p("(2)"), 0).unwrap(), vec![p("(2)")])]
        );
    }

    #[test]
    fn scott_in_characteristic_five() {
        let s = scott(5, 2, &Bounds::default()).unwrap();
        assert_eq!(s.top, vec![p("(14)"), p("(4,4,4,2)")]);
        assert_eq!(s.heart, vec![p("(7,5,1,1)"), p("(4,3,2,2,2,1)")]);
        assert_eq!(s.excluded, p("(4,2^5)"));
        assert_eq!(s.edges.len(), 3);
        assert!(s.to_dot().contains("n1_1 -- n2_1"));
        assert!(scott(5, 3, &Bounds::default()).is_err());
    }

    #[test]
    fn vertices_and_max_count() {
        let b = Bounds::default();
        let spectrum = vertex_spectrum(7, 5, &b).unwrap();
        assert_eq!(spectrum.iter().map(|v| v.t).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(spectrum[0].witness, p("(10,4)"));
        let m = max_vertex_count(7, 5, &b).unwrap();
        assert_eq!((m.count, m.cores.clone()), (2, vec![p("(4)"), p("(2,2)")]));
        assert_eq!(max_vertex_count(5, 5, &b).unwrap().count, 1);
    }
}
