//! Acceptance criteria 1 to 13. Each criterion prints one line of the form
//! `criterion N: PASS|FAIL (tolerance) detail`; the test fails if any does.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use foulkes_cli::golden;
use foulkes_core::foulkes::Report;
use foulkes_core::oracle;
use foulkes_core::partition::for_each_partition;
use foulkes_core::selftest::{self, Tally};
use foulkes_core::weight2::{chain, ChainTag, Label};
use foulkes_core::{
    analyze, block_of, core_profile, max_vertex_count, scott, two_runner_w, vertex_spectrum,
    witness, BlockId, Bounds, Partition, SummandKind, Weight2Block,
};

type Verdict = Result<String, String>;

/// Number, pinned tolerance, check.
type Criterion = (u32, &'static str, fn() -> Verdict);

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ps(xs: &[&str]) -> BTreeSet<Partition> {
    xs.iter().map(|s| p(s)).collect()
}

fn bounds() -> Bounds {
    Bounds::default()
}

fn foulkes(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_foulkes"))
        .args(args)
        .output()
        .expect("the binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tally(name: &str, t: Tally) -> Verdict {
    if t.failure_count == 0 && t.checked > 0 {
        Ok(format!("{name}: {} checks, 0 violations", t.checked))
    } else {
        Err(format!(
            "{name}: {} of {} checks failed, e.g. {:?}",
            t.failure_count, t.checked, t.failures
        ))
    }
}

/* --- criterion 1: the worked example for p = 5, n = 7 --- */

fn criterion_1() -> Verdict {
    let (code, text) = foulkes(&["analyze", "--p", "5", "--n", "7", "--format", "json"]);
    ensure(code == 0, || format!("analyze exited with {code}"))?;
    let report: Report = serde_json::from_str(&text).map_err(|e| e.to_string())?;

    let blocks: BTreeSet<(Partition, usize)> = report
        .blocks
        .iter()
        .map(|r| (r.block.core.clone(), r.block.weight))
        .collect();
    let expected_blocks: BTreeSet<(Partition, usize)> = [
        ("(4)", 2),
        ("(2,2)", 2),
        ("(3,1)", 2),
        ("(1^4)", 2),
        ("(5,2,2)", 1),
        ("(4,4,2,2,2)", 0),
    ]
    .into_iter()
    .map(|(c, w)| (p(c), w))
    .collect();
    ensure(
        report.blocks.len() == 6 && blocks == expected_blocks,
        || format!("blocks {blocks:?}"),
    )?;

    let expected: [(&str, usize, SummandKind, &[&str]); 6] = [
        (
            "(4)",
            2,
            SummandKind::VertexQ1Scott,
            &["(14)", "(4,4,4,2)", "(4,2^5)"],
        ),
        (
            "(2,2)",
            2,
            SummandKind::VertexQ1NonPrincipal,
            &["(12,2)", "(6,4,4)", "(2^7)"],
        ),
        (
            "(3,1)",
            2,
            SummandKind::Weight2Projective,
            &["(10,4)", "(8,6)", "(8,4,2)"],
        ),
        (
            "(1^4)",
            2,
            SummandKind::Weight2Projective,
            &["(8,2,2,2)", "(6,4,2,2)", "(6,2^4)"],
        ),
        (
            "(5,2,2)",
            1,
            SummandKind::Weight1Projective,
            &["(10,2,2)", "(6,6,2)"],
        ),
        (
            "(4,4,2,2,2)",
            0,
            SummandKind::SimpleSpecht,
            &["(4,4,2,2,2)"],
        ),
    ];
    for (core, w, kind, character) in expected {
        let r = report.block(&p(core), w).unwrap();
        ensure(r.kind == kind, || format!("B({core}, {w}) is {:?}", r.kind))?;
        let got: BTreeSet<Partition> = r.character.iter().cloned().collect();
        ensure(
            got == ps(character) && r.character.len() == character.len(),
            || format!("B({core}, {w}) character {:?}", r.character),
        )?;
    }

    let diffs = golden::diff_report(&golden::worked_example(), &report);
    ensure(diffs.is_empty(), || {
        format!("golden differences: {diffs:?}")
    })?;

    let u = report.block(&p("(4)"), 2).unwrap();
    let layers = u.loewy_layers.clone().unwrap_or_default();
    ensure(
        layers.len() == 3
            && ps(&["(14)", "(4,4,4,2)"]) == layers[0].iter().cloned().collect()
            && ps(&["(7,5,1,1)", "(4,3,2,2,2,1)"]) == layers[1].iter().cloned().collect(),
        || format!("U layers {layers:?}"),
    )?;
    let v = report.block(&p("(2,2)"), 2).unwrap();
    let comp: BTreeMap<Partition, usize> = v
        .composition
        .iter()
        .map(|f| (f.label.clone(), f.multiplicity))
        .collect();
    let want: BTreeMap<Partition, usize> = [
        ("(12,2)", 2),
        ("(6,4,4)", 2),
        ("(7,4,3)", 1),
        ("(3,3,3,2,1,1,1)", 1),
    ]
    .into_iter()
    .map(|(l, m)| (p(l), m))
    .collect();
    ensure(comp == want, || format!("V composition {comp:?}"))?;
    Ok("six blocks, kinds, characters, U and V match the golden report".into())
}

/* --- criteria 2 and 3: E-set examples --- */

fn criterion_2() -> Verdict {
    let (code, text) = foulkes(&[
        "eset",
        "--p",
        "3",
        "--partition",
        "(3,1)",
        "--format",
        "json",
    ]);
    ensure(code == 0, || format!("eset exited with {code}"))?;
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let e: BTreeSet<Partition> = doc["e_set"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| p(x.as_str().unwrap()))
        .collect();
    ensure(
        doc["w"] == 2 && e == ps(&["(6,4)", "(6,2,2)", "(4,4,2)"]),
        || format!("got {text}"),
    )?;
    let via_oracle = oracle::e_set(&p("(3,1)"), 3, 20).map(|(w, e)| (w, e.len()));
    ensure(via_oracle == Some((2, 3)), || {
        format!("oracle {via_oracle:?}")
    })?;
    Ok("w = 2, E = {(6,4), (6,2,2), (4,4,2)}".into())
}

fn criterion_3() -> Verdict {
    let gamma = p("(5,1,1,1)");
    let prof = core_profile(&gamma, 5, &bounds()).map_err(|e| e.to_string())?;
    let expected = ps(&["(8,6,2,2)", "(10,4,2,2)", "(6,6,2,2,2)", "(10,2,2,2,2)"]);
    let got: BTreeSet<Partition> = prof.e_set.iter().cloned().collect();
    ensure(prof.w == 2 && got == expected, || format!("{prof:?}"))?;
    let maximum = prof.maximum().map_err(|e| e.to_string())?;
    ensure(maximum == p("(10,4,2,2)"), || format!("maximum {maximum}"))?;
    let theirs =
        oracle::e_set(&gamma, 5, 18).map(|(w, e)| (w, e.into_iter().collect::<BTreeSet<_>>()));
    ensure(theirs == Some((2, expected)), || {
        format!("oracle {theirs:?}")
    })?;

    let report = analyze(9, 5, &bounds()).map_err(|e| e.to_string())?;
    let in_block: Vec<_> = report
        .blocks
        .iter()
        .filter(|r| r.block.core == gamma && r.block.weight == 2)
        .collect();
    ensure(
        in_block.len() == 1
            && in_block[0].kind == SummandKind::Weight2Projective
            && in_block[0].label == Some(p("(10,4,2,2)")),
        || format!("summands in B((5,1,1,1), 2): {in_block:?}"),
    )?;
    Ok("w = 2, four members, maximum (10,4,2,2), unique summand P^(10,4,2,2)".into())
}

/* --- criterion 4: small cases --- */

fn even_partitions(two_n: usize) -> BTreeSet<Partition> {
    let mut out = BTreeSet::new();
    for_each_partition(two_n / 2, |half| {
        out.insert(Partition::new(half.iter().map(|x| 2 * x).collect()).unwrap());
    });
    out
}

fn criterion_4() -> Verdict {
    let b = bounds();
    for (n, prime) in [(2, 3), (2, 5), (3, 3), (3, 5), (3, 7)] {
        let r = analyze(n, prime, &b).map_err(|e| e.to_string())?;
        let covered: Vec<Partition> = r.blocks.iter().flat_map(|s| s.character.clone()).collect();
        let set: BTreeSet<Partition> = covered.iter().cloned().collect();
        ensure(
            set.len() == covered.len() && set == even_partitions(2 * n),
            || format!("analyze({n}, {prime}) does not partition the even partitions"),
        )?;
    }

    let r = analyze(2, 3, &b).unwrap();
    ensure(
        r.blocks.len() == 1 && r.blocks[0].character.len() == 2,
        || format!("analyze(2, 3): {:?}", r.blocks),
    )?;

    let simple = |r: &Report, label: &str| {
        r.blocks.iter().any(|s| {
            s.kind == SummandKind::SimpleSpecht
                && s.label == Some(p(label))
                && s.character == vec![p(label)]
        })
    };
    let r = analyze(2, 5, &b).unwrap();
    ensure(
        r.blocks.len() == 2 && simple(&r, "(4)") && simple(&r, "(2,2)"),
        || format!("analyze(2, 5): {:?}", r.blocks),
    )?;
    let r = analyze(3, 3, &b).unwrap();
    ensure(simple(&r, "(4,2)"), || {
        format!("analyze(3, 3): {:?}", r.blocks)
    })?;
    let r = analyze(3, 5, &b).unwrap();
    ensure(simple(&r, "(2,2,2)"), || {
        format!("analyze(3, 5): {:?}", r.blocks)
    })?;
    let r = analyze(3, 7, &b).unwrap();
    ensure(
        r.blocks.len() == 3 && r.blocks.iter().all(|s| s.kind == SummandKind::SimpleSpecht),
        || format!("analyze(3, 7): {:?}", r.blocks),
    )?;
    Ok("five cases".into())
}

/* --- criteria 5 and 6: vertices --- */

struct ESetCache(HashMap<(Partition, usize), Option<usize>>);

impl ESetCache {
    /// Whether the even partition `mu` lies in `E` of its core, by the
    /// diagram oracle.
    fn contains(&mut self, mu: &Partition, prime: usize) -> bool {
        if !mu.is_even() {
            return false;
        }
        let (core, weight) = oracle::core_and_weight(mu, prime);
        let w = *self
            .0
            .entry((core.clone(), prime))
            .or_insert_with(|| oracle::e_set(&core, prime, mu.size()).map(|(w, _)| w));
        w == Some(weight)
    }
}

fn criterion_5() -> Verdict {
    let w = witness(7, 5).map_err(|e| e.to_string())?;
    ensure(w.partition == p("(10,4)"), || {
        format!("witness(7, 5) = {}", w.partition)
    })?;
    let mut cache = ESetCache(HashMap::new());
    let mut checked = 0;
    for prime in [3, 5, 7] {
        for n in 1..=30 {
            let spectrum = vertex_spectrum(n, prime, &bounds()).map_err(|e| e.to_string())?;
            let ts: Vec<usize> = spectrum.iter().map(|v| v.t).collect();
            ensure(ts == (0..=n / prime).collect::<Vec<_>>(), || {
                format!("p={prime} n={n}: vertices {ts:?}")
            })?;
            for v in &spectrum {
                checked += 1;
                ensure(v.witness.size() == 2 * (n - v.t * prime), || {
                    format!("p={prime} n={n} t={}: witness size", v.t)
                })?;
                ensure(cache.contains(&v.witness, prime), || {
                    format!(
                        "p={prime} n={n} t={}: {} not in E of its core",
                        v.t, v.witness
                    )
                })?;
                ensure(
                    v.block.weight * prime + v.block.core.size() == 2 * n
                        && v.block.core == oracle::core_and_weight(&v.witness, prime).0,
                    || format!("p={prime} n={n} t={}: block {}", v.t, v.block),
                )?;
            }
        }
    }
    Ok(format!("witness(7,5) = (10,4); {checked} witnesses in E"))
}

fn criterion_6() -> Verdict {
    for n in [7, 12] {
        let m = max_vertex_count(n, 5, &bounds()).map_err(|e| e.to_string())?;
        let distinct: BTreeSet<_> = m.blocks.iter().map(|b| b.core.clone()).collect();
        ensure(m.count == 2 && distinct.len() == 2, || {
            format!("n={n}: count {} blocks {:?}", m.count, m.blocks)
        })?;
    }
    let mut cases = 0;
    for prime in [3, 5, 7] {
        for n in 1..=30 {
            let r = n % prime;
            if 2 * r >= prime {
                continue;
            }
            cases += 1;
            let m = max_vertex_count(n, prime, &bounds()).map_err(|e| e.to_string())?;
            let expected = oracle::partition_count(r) as usize;
            let cores: BTreeSet<Partition> = even_partitions(2 * r)
                .iter()
                .map(|mu| oracle::core_and_weight(mu, prime).0)
                .collect();
            let blocks: BTreeSet<&BlockId> = m.blocks.iter().collect();
            ensure(
                m.count == expected
                    && cores.len() == expected
                    && blocks.len() == expected
                    && m.cores.iter().cloned().collect::<BTreeSet<_>>() == cores,
                || format!("p={prime} n={n}: count {} expected {expected}", m.count),
            )?;
        }
    }
    Ok(format!(
        "n = 7, 12 give 2; {cases} further cases match p(r)"
    ))
}

/* --- criteria 7 to 9: weight-two statistics and cores --- */

fn criterion_7() -> Verdict {
    tally(
        "δ independence, 2n ≤ 24",
        selftest::delta_independence(&[3, 5, 7], 24, None),
    )
}

fn criterion_8() -> Verdict {
    tally(
        "evenness criterion, 2n ≤ 24",
        selftest::even_criterion(&[3, 5, 7], 24),
    )
}

fn criterion_9() -> Verdict {
    let gaps = tally("odd gaps", selftest::odd_gap_evenness(&[3, 5, 7], 16))?;
    let cores = tally("cores", selftest::core_oracle(&[3, 5, 7], 16))?;
    Ok(format!("{gaps}; {cores}"))
}

/* --- criterion 10: decomposition columns --- */

fn principal(prime: usize, two_k: usize) -> BlockId {
    let core = if two_k == 0 {
        Partition::empty()
    } else {
        Partition::new(vec![two_k]).unwrap()
    };
    BlockId::new(prime, core, 2).unwrap()
}

fn criterion_10() -> Verdict {
    let b = bounds();
    let columns = tally(
        "columns",
        selftest::decomposition_columns(&[3, 5, 7], 24, &b),
    )?;
    let mut windows = 0;
    for prime in [5, 7] {
        for two_k in (0..prime).step_by(2) {
            let block = principal(prime, two_k);
            let w2 = Weight2Block::new(&block, &b).map_err(|e| e.to_string())?;
            let cols = w2.columns().map_err(|e| e.to_string())?;
            let row = |mu: &Partition| -> BTreeSet<Partition> {
                cols.iter()
                    .filter(|c| c.entry(mu) == 1)
                    .map(|c| c.nu.clone())
                    .collect()
            };
            let c = chain(&block, &b).map_err(|e| e.to_string())?;
            let el = &c.elements;
            for i in (3..el.len()).filter(|&i| el[i].tag == ChainTag::Even) {
                windows += 1;
                let (mu1, nu1, nu, mu, nu2) =
                    (&el[i - 3], &el[i - 2], &el[i - 1], &el[i], &el[i + 1]);
                let shape = mu1.tag == ChainTag::Even
                    && nu1.tag == ChainTag::Delta1
                    && nu.tag == ChainTag::Delta1
                    && nu2.tag == ChainTag::Delta1;
                ensure(shape, || {
                    format!("{block}: chain window at {}", mu.partition)
                })?;
                ensure(mu.partition.is_even(), || {
                    format!("{} not even", mu.partition)
                })?;
                let circ = w2.nu_circ(&mu1.partition).map_err(|e| e.to_string())?;
                ensure(circ == mu.partition, || {
                    format!(
                        "{block}: ({})° = {circ}, expected {}",
                        mu1.partition, mu.partition
                    )
                })?;
                let circ = w2.nu_circ(&nu.partition).map_err(|e| e.to_string())?;
                ensure(circ == nu2.partition, || {
                    format!(
                        "{block}: ({})° = {circ}, expected {}",
                        nu.partition, nu2.partition
                    )
                })?;
                let got = row(&mu.partition);
                if mu.label != Some(Label::Pair(0, 1)) {
                    let want: BTreeSet<Partition> = [&mu1.partition, &nu.partition, &mu.partition]
                        .into_iter()
                        .cloned()
                        .collect();
                    ensure(got == want, || {
                        format!(
                            "{block}: row of {} is {got:?}, expected {want:?}",
                            mu.partition
                        )
                    })?;
                } else {
                    let want: BTreeSet<Partition> = [&mu1.partition, &nu.partition]
                        .into_iter()
                        .cloned()
                        .collect();
                    ensure(got == want, || {
                        format!("{block}: row of ⟨0,1⟩ is {got:?}, expected {want:?}")
                    })?;
                    if two_k != 2 {
                        let labels: BTreeSet<Label> = got
                            .iter()
                            .map(|x| foulkes_core::label(x, &block).unwrap())
                            .collect();
                        let literal: BTreeSet<Label> =
                            [Label::Pair(2, 3), Label::Pair(0, 2)].into();
                        ensure(labels == literal, || {
                            format!("{block}: row of ⟨0,1⟩ has labels {labels:?}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{columns}; {windows} chain windows match the row predictions"
    ))
}

/* --- criterion 11: chains --- */

fn criterion_11() -> Verdict {
    let b = bounds();
    let mut checked = 0;
    for prime in [5, 7, 11] {
        for two_k in (0..prime).step_by(2) {
            let block = principal(prime, two_k);
            let c = chain(&block, &b).map_err(|e| e.to_string())?;
            let el = &c.elements;
            for w in el.windows(2) {
                ensure(
                    w[0].partition.strictly_dominates(&w[1].partition).unwrap(),
                    || {
                        format!(
                            "{block}: {} does not dominate {}",
                            w[0].partition, w[1].partition
                        )
                    },
                )?;
            }
            let members = oracle::blocks_of_size(block.degree(), prime)
                .remove(&(block.core.clone(), 2))
                .unwrap_or_default();
            let expected: BTreeSet<(Partition, bool)> = members
                .iter()
                .filter_map(|mu| {
                    if mu.is_even() {
                        Some((mu.clone(), true))
                    } else if oracle::delta_values(mu, prime) == BTreeSet::from([1]) {
                        Some((mu.clone(), false))
                    } else {
                        None
                    }
                })
                .collect();
            let got: BTreeSet<(Partition, bool)> = el
                .iter()
                .map(|e| (e.partition.clone(), e.tag == ChainTag::Even))
                .collect();
            ensure(got == expected && got.len() == el.len(), || {
                format!("{block}: chain members differ from the diagram count")
            })?;
            let labels: Vec<(Label, bool)> = el
                .iter()
                .map(|e| (e.label.unwrap(), e.tag == ChainTag::Even))
                .collect();
            ensure(labels == oracle::chain_labels(prime, two_k), || {
                format!("{block}: labels {labels:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} chains totally ordered with the predicted pattern"
    ))
}

/* --- criterion 12: two-runner cores against a diagram search --- */

/// Partitions obtained from `gamma` by adding one rim `p`-hook, built row by
/// row: the hook occupies rows `top..=bottom`, and each row below the top
/// ends one column past the old end of the row above it.
fn add_rim_hooks(gamma: &Partition, prime: usize) -> Vec<Partition> {
    let g: Vec<usize> = (0..=gamma.len()).map(|i| gamma.part(i)).collect();
    let mut out = Vec::new();
    for top in 0..g.len() {
        let mut used = 0;
        for bottom in top..g.len() {
            if bottom > top {
                used += g[bottom - 1] + 1 - g[bottom];
            }
            if used >= prime {
                break;
            }
            let first = prime - used;
            let top_len = g[top] + first;
            if top > 0 && top_len > g[top - 1] {
                continue;
            }
            let mut parts = g.clone();
            parts[top] = top_len;
            for r in top + 1..=bottom {
                parts[r] = g[r - 1] + 1;
            }
            out.push(Partition::from_unsorted(parts));
        }
    }
    out
}

/// Largest `w(γ)` for which the diagram search below is run; its levels are
/// whole blocks, which grow too quickly beyond this.
const DIAGRAM_LIMIT: usize = 20;

/// `w(γ)` and `E(γ)` by breadth-first hook addition on diagrams.
fn bfs_profile(gamma: &Partition, prime: usize) -> (usize, BTreeSet<Partition>) {
    let mut level: BTreeSet<Partition> = [gamma.clone()].into();
    for w in 0.. {
        let evens: BTreeSet<Partition> = level.iter().filter(|l| l.is_even()).cloned().collect();
        if !evens.is_empty() {
            return (w, evens);
        }
        level = level.iter().flat_map(|l| add_rim_hooks(l, prime)).collect();
    }
    unreachable!()
}

fn from_beads(beads: &[usize]) -> Partition {
    let mut b = beads.to_vec();
    b.sort_unstable_by(|x, y| y.cmp(x));
    let m = b.len();
    Partition::from_unsorted(b.iter().enumerate().map(|(i, &x)| x + i + 1 - m).collect())
}

fn criterion_12() -> Verdict {
    for prime in [3, 5, 7] {
        for size in 0..=12 {
            for_each_partition(size, |parts| {
                let l = Partition::new(parts.to_vec()).unwrap();
                for h in add_rim_hooks(&l, prime) {
                    let back: Vec<Partition> = oracle::rim_hooks(&h, prime)
                        .into_iter()
                        .map(|x| x.remainder)
                        .collect();
                    assert!(back.contains(&l), "adding a {prime}-hook to {l} gave {h}");
                }
            });
        }
    }
    let b = bounds();
    let mut checked = 0;
    let mut on_diagrams = 0;
    for prime in [3, 5, 7] {
        for u in 0..prime {
            for u2 in u + 1..prime {
                let even_runners = u % 2 == 0 && (u2 - u) % 2 == 0;
                let last_runner = u % 2 == 1 && u2 == prime - 1;
                if !even_runners && !last_runner {
                    continue;
                }
                for t in 0..=12 {
                    for t2 in 0..=12 {
                        let runner = |r: usize, count: usize, drop: usize| {
                            (0..count).map(move |i| r + prime * (i + drop))
                        };
                        let core_beads: Vec<usize> =
                            runner(u, t, 0).chain(runner(u2, t2, 0)).collect();
                        let gamma = from_beads(&core_beads);
                        if gamma.size() > 40 {
                            continue;
                        }
                        let (w, moved): (usize, Vec<usize>) = if even_runners {
                            (t * t2, runner(u, t, 0).chain(runner(u2, t2, t)).collect())
                        } else {
                            (
                                t * (t2 + 1),
                                runner(u, t, t2 + 1).chain(runner(u2, t2, 0)).collect(),
                            )
                        };
                        let formula =
                            two_runner_w(t, t2, u, u2, prime).map_err(|e| e.to_string())?;
                        ensure(formula.core == gamma && formula.w == w, || {
                            format!(
                                "p={prime} t={t} t'={t2} u={u} u'={u2}: library core {} w {}",
                                formula.core, formula.w
                            )
                        })?;
                        let witness = from_beads(&moved);
                        let prof = core_profile(&gamma, prime, &b).map_err(|e| e.to_string())?;
                        ensure(prof.w == w && prof.e_set.contains(&witness), || {
                            format!("p={prime} γ={gamma}: closed form {w}, search {}", prof.w)
                        })?;
                        if w <= DIAGRAM_LIMIT {
                            let (dw, e) = bfs_profile(&gamma, prime);
                            let ours: BTreeSet<Partition> = prof.e_set.iter().cloned().collect();
                            ensure(dw == w && e == ours, || {
                                format!("p={prime} γ={gamma}: diagram search gives w = {dw}")
                            })?;
                            on_diagrams += 1;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{checked} cores with |γ| ≤ 40 match the level search; {on_diagrams} with w ≤ {DIAGRAM_LIMIT} also match hook addition on diagrams"
    ))
}

/* --- criterion 13: Scott modules --- */

fn labels(xs: &[&str]) -> Vec<Label> {
    xs.iter().map(|s| s.parse().unwrap()).collect()
}

fn criterion_13() -> Verdict {
    let b = bounds();
    let g = golden::worked_example();
    let u = g.blocks.iter().find(|x| x.core == p("(4)")).unwrap();
    let s = scott(5, 2, &b).map_err(|e| e.to_string())?;
    let set = |xs: &[Partition]| xs.iter().cloned().collect::<BTreeSet<_>>();
    ensure(
        set(&s.top) == set(&u.top)
            && set(&s.heart) == set(&u.heart)
            && set(&s.socle) == set(&u.socle),
        || format!("scott(5, 2) = {s:?}"),
    )?;

    let mut shapes = 0;
    let cases: Vec<(usize, usize)> = [(5, 0), (5, 1), (7, 2), (7, 3)]
        .into_iter()
        .chain(
            [5, 7, 11, 13]
                .into_iter()
                .flat_map(|q| (0..=(q - 1) / 2).map(move |k| (q, k))),
        )
        .collect();
    for (prime, k) in cases {
        let s = scott(prime, k, &b).map_err(|e| format!("scott({prime}, {k}): {e}"))?;
        let name = format!("scott({prime}, {k})");
        ensure(s.top == s.socle && s.heart.len() == s.top.len(), || {
            format!(
                "{name}: top {:?} socle {:?} heart {:?}",
                s.top, s.socle, s.heart
            )
        })?;
        let mut excluded = vec![2; prime];
        if k > 0 {
            excluded.insert(0, 2 * k);
        }
        let excluded = Partition::new(excluded).unwrap();
        ensure(
            s.excluded == excluded
                && !excluded.is_regular(prime)
                && block_of(&excluded, prime).unwrap() == s.block
                && !s.top.contains(&excluded),
            || format!("{name}: excluded {}", s.excluded),
        )?;
        let evens_in_block: BTreeSet<Partition> = oracle::blocks_of_size(s.block.degree(), prime)
            .remove(&(s.block.core.clone(), 2))
            .unwrap_or_default()
            .into_iter()
            .filter(|x| x.is_even() && x.is_regular(prime))
            .collect();
        ensure(set(&s.top) == evens_in_block, || {
            format!("{name}: top is not the p-regular evens")
        })?;

        let vertices: BTreeSet<(bool, Partition)> = s
            .top
            .iter()
            .map(|x| (true, x.clone()))
            .chain(s.heart.iter().map(|x| (false, x.clone())))
            .collect();
        let mut degree: BTreeMap<(bool, Partition), usize> = BTreeMap::new();
        for (even, heart) in &s.edges {
            ensure(
                vertices.contains(&(true, even.clone()))
                    && vertices.contains(&(false, heart.clone())),
                || format!("{name}: edge ({even}, {heart}) leaves the module"),
            )?;
            *degree.entry((true, even.clone())).or_default() += 1;
            *degree.entry((false, heart.clone())).or_default() += 1;
        }
        let ends = degree.values().filter(|&&d| d == 1).count();
        ensure(
            s.edges.len() + 1 == vertices.len()
                && degree.len() == vertices.len()
                && degree.values().all(|&d| d <= 2)
                && (vertices.len() == 1 || ends == 2),
            || format!("{name}: edges {:?} do not form a path", s.edges),
        )?;
        shapes += 1;
    }

    for pattern in golden::scott_labels() {
        let s = scott(pattern.p, pattern.two_k / 2, &b).map_err(|e| e.to_string())?;
        ensure(
            s.top_labels == pattern.top && s.heart_labels == pattern.heart,
            || {
                format!(
                    "p={} 2k={}: {:?} {:?}",
                    pattern.p, pattern.two_k, s.top_labels, s.heart_labels
                )
            },
        )?;
    }
    let s = scott(7, 3, &b).map_err(|e| e.to_string())?;
    ensure(
        s.top_labels == labels(&["⟨6⟩", "⟨4,5⟩", "⟨2,3⟩"])
            && s.heart_labels == labels(&["⟨4⟩", "⟨2,4⟩", "⟨0,2⟩"]),
        || format!("scott(7, 3): {:?} {:?}", s.top_labels, s.heart_labels),
    )?;
    Ok(format!(
        "scott(5,2) = U; {shapes} modules have the three-layer path shape; label patterns match"
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 13] = [
        (1, "exact", criterion_1),
        (2, "exact", criterion_2),
        (3, "exact", criterion_3),
        (4, "exact", criterion_4),
        (5, "exact", criterion_5),
        (6, "exact", criterion_6),
        (7, "zero violations", criterion_7),
        (8, "zero violations", criterion_8),
        (9, "zero violations", criterion_9),
        (10, "zero violations", criterion_10),
        (11, "zero violations", criterion_11),
        (12, "exact", criterion_12),
        (13, "zero violations", criterion_13),
    ];
    let mut failed = Vec::new();
    let mut stderr = std::io::stderr();
    for (n, tolerance, check) in criteria {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let line = match &verdict {
            Ok(detail) => format!(
                "criterion {n}: PASS ({tolerance}) {detail} [{} ms]",
                start.elapsed().as_millis()
            ),
            Err(detail) => {
                failed.push(n);
                format!("criterion {n}: FAIL ({tolerance}) {detail}")
            }
        };
        let _ = writeln!(stderr, "{line}");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
