//! Hand-transcribed reference data, checked against live output by
//! `foulkes selftest`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Deserialize;

use foulkes_core::blocks::core_profile;
use foulkes_core::foulkes::{analyze, scott, Report, SummandKind, SummandReport};
use foulkes_core::selftest::SuiteOutcome;
use foulkes_core::weight2::Label;
use foulkes_core::{Bounds, Partition};

pub const WORKED_EXAMPLE: &str = include_str!("../golden/worked_example.json");
pub const ESET_EXAMPLES: &str = include_str!("../golden/eset_examples.json");
pub const SCOTT_LABELS: &str = include_str!("../golden/scott_labels.json");

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenReport {
    pub p: usize,
    pub n: usize,
    pub blocks: Vec<GoldenBlock>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenBlock {
    pub core: Partition,
    pub weight: usize,
    pub kind: SummandKind,
    #[serde(default)]
    pub label: Option<Partition>,
    pub character: Vec<Partition>,
    #[serde(default)]
    pub top: Vec<Partition>,
    #[serde(default)]
    pub heart: Vec<Partition>,
    #[serde(default)]
    pub socle: Vec<Partition>,
    /// Loewy layers of the summand as displayed, radical layer first.
    #[serde(default)]
    pub layers: Vec<Vec<Partition>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenESet {
    pub p: usize,
    pub core: Partition,
    pub w: usize,
    pub e_set: Vec<Partition>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub summand: Option<Partition>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GoldenScott {
    pub p: usize,
    pub two_k: usize,
    pub top: Vec<Label>,
    pub heart: Vec<Label>,
}

pub fn worked_example() -> GoldenReport {
    serde_json::from_str(WORKED_EXAMPLE).expect("worked_example.json is well formed")
}

pub fn eset_examples() -> Vec<GoldenESet> {
    serde_json::from_str(ESET_EXAMPLES).expect("eset_examples.json is well formed")
}

pub fn scott_labels() -> Vec<GoldenScott> {
    serde_json::from_str(SCOTT_LABELS).expect("scott_labels.json is well formed")
}

fn sorted(xs: &[Partition]) -> Vec<Partition> {
    let mut v = xs.to_vec();
    v.sort();
    v
}

fn multiset<'a>(xs: impl IntoIterator<Item = &'a Partition>) -> BTreeMap<Partition, usize> {
    let mut m = BTreeMap::new();
    for x in xs {
        *m.entry(x.clone()).or_insert(0) += 1;
    }
    m
}

/// Differences between one live summand and its golden record.
pub fn diff_block(golden: &GoldenBlock, live: &SummandReport) -> Vec<String> {
    let mut out = Vec::new();
    let name = format!("{}", live.block);
    if golden.kind != live.kind {
        out.push(format!(
            "{name}: kind {:?}, expected {:?}",
            live.kind, golden.kind
        ));
    }
    if golden.label.is_some() && golden.label != live.label {
        out.push(format!(
            "{name}: label {:?}, expected {:?}",
            live.label, golden.label
        ));
    }
    if sorted(&golden.character) != sorted(&live.character) {
        out.push(format!("{name}: character differs"));
    }
    let layers = live.loewy_layers.clone().unwrap_or_default();
    for (i, want) in [&golden.top, &golden.heart, &golden.socle]
        .into_iter()
        .enumerate()
    {
        if want.is_empty() {
            continue;
        }
        match layers.get(i) {
            Some(got) if sorted(got) == sorted(want) => {}
            _ => out.push(format!("{name}: Loewy layer {i} differs")),
        }
    }
    if !golden.layers.is_empty() {
        if let Some(live_layers) = &live.loewy_layers {
            let same = live_layers.len() == golden.layers.len()
                && live_layers
                    .iter()
                    .zip(&golden.layers)
                    .all(|(a, b)| sorted(a) == sorted(b));
            if !same {
                out.push(format!("{name}: Loewy layers differ"));
            }
        }
        let want = multiset(golden.layers.iter().flatten());
        let got: BTreeMap<Partition, usize> = live
            .composition
            .iter()
            .map(|f| (f.label.clone(), f.multiplicity))
            .collect();
        if want != got {
            out.push(format!("{name}: composition factors differ"));
        }
    }
    out
}

pub fn diff_report(golden: &GoldenReport, live: &Report) -> Vec<String> {
    let mut out = Vec::new();
    if live.blocks.len() != golden.blocks.len() {
        out.push(format!(
            "{} blocks, expected {}",
            live.blocks.len(),
            golden.blocks.len()
        ));
    }
    for g in &golden.blocks {
        match live.block(&g.core, g.weight) {
            Some(r) => out.extend(diff_block(g, r)),
            None => out.push(format!("no summand in B({}, {})", g.core, g.weight)),
        }
    }
    out
}

/// All golden comparisons as one selftest suite.
pub fn check_all() -> SuiteOutcome {
    let start = Instant::now();
    let bounds = Bounds::default();
    let mut checked = 0;
    let mut failures = Vec::new();

    let g = worked_example();
    checked += 1;
    match analyze(g.n, g.p, &bounds) {
        Ok(report) => failures.extend(diff_report(&g, &report)),
        Err(e) => failures.push(format!("analyze: {e}")),
    }

    for ex in eset_examples() {
        checked += 1;
        match core_profile(&ex.core, ex.p, &bounds) {
            Ok(prof) if prof.w == ex.w && sorted(&prof.e_set) == sorted(&ex.e_set) => {}
            Ok(_) => failures.push(format!("E({}) for p = {} differs", ex.core, ex.p)),
            Err(e) => failures.push(format!("E({}): {e}", ex.core)),
        }
        if let (Some(n), Some(summand)) = (ex.n, &ex.summand) {
            checked += 1;
            let found = analyze(n, ex.p, &bounds).ok().and_then(|r| {
                r.block(&ex.core, ex.w).map(|b| {
                    b.kind == SummandKind::Weight2Projective && b.label.as_ref() == Some(summand)
                })
            });
            if found != Some(true) {
                failures.push(format!(
                    "P^{summand} is not the summand in B({}, {})",
                    ex.core, ex.w
                ));
            }
        }
    }

    for s in scott_labels() {
        checked += 1;
        match scott(s.p, s.two_k / 2, &bounds) {
            Ok(live) if live.top_labels == s.top && live.heart_labels == s.heart => {}
            Ok(live) => failures.push(format!(
                "Scott labels for p = {}, 2k = {}: top {:?}, heart {:?}",
                s.p, s.two_k, live.top_labels, live.heart_labels
            )),
            Err(e) => failures.push(format!("scott({}, {}): {e}", s.p, s.two_k)),
        }
    }

    SuiteOutcome {
        name: "golden",
        checked,
        failure_count: failures.len(),
        failures,
        elapsed: start.elapsed(),
    }
}
