//! Exhaustive consistency suites comparing the abacus engine with the
//! diagram oracle, run by the `selftest` command.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::abacus::Abacus;
use crate::blocks::{core_profile, is_core, two_runner_w, witness, BlockId};
use crate::bounds::Bounds;
use crate::foulkes::scott;
use crate::oracle;
use crate::partition::{for_each_partition, Partition};
use crate::weight2::{big_delta, chain, colour, hook_pair_skewed, ChainTag, Colour, Weight2Block};

/// A deliberate error to check that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Lengthen the leg of the first rim hook removed when computing `δ`.
    FlipLeg,
}

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub primes: Vec<usize>,
    /// Largest partition size for the exhaustive suites.
    pub max_size: usize,
    /// Largest `n` for the witness suite.
    pub max_n: usize,
    pub fault: Option<Fault>,
    pub bounds: Bounds,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            primes: vec![3, 5, 7],
            max_size: 16,
            max_n: 20,
            fault: None,
            bounds: Bounds::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checked: usize,
    /// At most a handful of examples are kept.
    pub failures: Vec<String>,
    pub failure_count: usize,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Checks made by one suite, with the first few failures.
#[derive(Debug)]
pub struct Tally {
    pub checked: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 5 {
                self.failures.push(describe());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < 5 {
                self.failures.push(f);
            }
        }
        self
    }
}

fn partitions_of(size: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(size, |parts| {
        out.push(Partition::new(parts.to_vec()).expect("valid"))
    });
    out
}

/// Runs `per_item` over every partition of every size in `sizes`, for every
/// prime, in parallel.
fn sweep(
    primes: &[usize],
    sizes: impl Iterator<Item = usize>,
    per_item: impl Fn(&Partition, usize, &mut Tally) + Sync,
) -> Tally {
    let items: Vec<(Partition, usize)> = sizes
        .flat_map(|m| partitions_of(m).into_iter())
        .flat_map(|l| primes.iter().map(move |&p| (l.clone(), p)))
        .collect();
    items
        .par_iter()
        .fold(Tally::new, |mut t, (l, p)| {
            per_item(l, *p, &mut t);
            t
        })
        .reduce(Tally::new, Tally::merge)
}

pub fn core_oracle(primes: &[usize], max_size: usize) -> Tally {
    sweep(primes, 0..=max_size, |l, p, t| {
        let a = Abacus::minimal(l, p).expect("valid modulus");
        let greedy = oracle::greedy_cores(l, p);
        let expected = [(a.p_core(), a.weight())];
        t.check(greedy.iter().eq(expected.iter()), || {
            format!("p={p} {l}: abacus {:?}, greedy {:?}", expected, greedy)
        });
    })
}

pub fn odd_gap_evenness(primes: &[usize], max_size: usize) -> Tally {
    sweep(primes, 0..=max_size, |l, p, t| {
        for beads in [l.len(), l.len() + 1, l.len() + p] {
            let a = Abacus::from_partition(l, p, beads).expect("enough beads");
            t.check(l.is_even() == !a.has_odd_gap(), || {
                format!(
                    "p={p} {l} with {beads} beads: even={}, odd gap={}",
                    l.is_even(),
                    a.has_odd_gap()
                )
            });
        }
    })
}

pub fn delta_independence(primes: &[usize], max_size: usize, fault: Option<Fault>) -> Tally {
    let skew = usize::from(fault == Some(Fault::FlipLeg));
    sweep(primes, (0..=max_size).step_by(2), |l, p, t| {
        if Abacus::minimal(l, p).expect("valid").weight() != 2 {
            return;
        }
        let values = oracle::delta_values(l, p);
        let ok = match hook_pair_skewed(l, p, skew) {
            Ok(d) => values.len() == 1 && values.contains(&d.delta),
            Err(_) => false,
        };
        t.check(ok, || format!("p={p} {l}: oracle δ values {values:?}"));
    })
}

pub fn even_criterion(primes: &[usize], max_size: usize) -> Tally {
    sweep(primes, (0..=max_size).step_by(2), |l, p, t| {
        let a = Abacus::minimal(l, p).expect("valid");
        if a.weight() != 2 || !a.p_core().is_even() {
            return;
        }
        let big = big_delta(l, p);
        let black = colour(l, p).map(|c| c == Colour::Black).unwrap_or(false);
        let predicted = matches!(big, Ok(0)) && black;
        t.check(predicted == l.is_even(), || {
            format!("p={p} {l}: even={}, Δ={big:?}, black={black}", l.is_even())
        });
        if l.is_even() {
            t.check(oracle::delta_values(l, p) == [0].into(), || {
                format!("p={p} {l}: even with δ ≠ 0")
            });
        }
    })
}

pub fn colour_oracle(primes: &[usize], max_size: usize) -> Tally {
    sweep(primes, 0..=max_size, |l, p, t| {
        if Abacus::minimal(l, p).expect("valid").weight() != 2 {
            return;
        }
        let ours = colour(l, p).ok().map(|c| c == Colour::Black);
        let theirs = oracle::is_black(l, p);
        t.check(ours == theirs, || {
            format!("p={p} {l}: colour {ours:?} vs oracle {theirs:?}")
        });
    })
}

/// Every column of every weight-two block is re-derived from the diagram
/// statistics.
pub fn decomposition_columns(primes: &[usize], max_size: usize, bounds: &Bounds) -> Tally {
    let blocks: Vec<(usize, (Partition, usize), Vec<Partition>)> = primes
        .iter()
        .flat_map(|&p| {
            (0..=max_size).flat_map(move |m| {
                oracle::blocks_of_size(m, p)
                    .into_iter()
                    .filter(|((_, w), _)| *w == 2)
                    .map(move |(k, v)| (p, k, v))
            })
        })
        .collect();
    blocks
        .par_iter()
        .map(|(p, (core, _), members)| {
            let mut t = Tally::new();
            let block = BlockId {
                p: *p,
                core: core.clone(),
                weight: 2,
            };
            let w2 = match Weight2Block::new(&block, bounds) {
                Ok(w2) => w2,
                Err(e) => {
                    t.check(false, || format!("{block}: {e}"));
                    return t;
                }
            };
            let mut ours: Vec<&Partition> = w2.partitions().collect();
            ours.sort();
            let mut theirs: Vec<&Partition> = members.iter().collect();
            theirs.sort();
            t.check(ours == theirs, || format!("{block}: member lists differ"));
            for nu in members.iter().filter(|nu| nu.is_regular(*p)) {
                let col = match w2.column(nu) {
                    Ok(c) => c,
                    Err(e) => {
                        t.check(false, || format!("{block} column {nu}: {e}"));
                        continue;
                    }
                };
                let circ = oracle::nu_circ(nu, *p, members);
                let d = |x: &Partition| oracle::delta_values(x, *p).first().copied();
                let d_nu = d(nu);
                let expected = |mu: &Partition| -> u8 {
                    let Some(circ) = &circ else { return 2 };
                    if mu == nu || mu == circ {
                        return 1;
                    }
                    let adjacent =
                        matches!((d_nu, d(mu)), (Some(a), Some(b)) if a.abs_diff(b) == 1);
                    u8::from(
                        adjacent
                            && mu.strictly_dominates(circ).unwrap_or(false)
                            && nu.strictly_dominates(mu).unwrap_or(false),
                    )
                };
                let nonzero = col.nonzero().count();
                t.check(col.entry(nu) == 1 && nonzero >= 3, || {
                    format!(
                        "{block} column {nu}: diagonal {}, {nonzero} nonzero rows",
                        col.entry(nu)
                    )
                });
                for mu in members {
                    t.check(col.entry(mu) == expected(mu), || {
                        format!(
                            "{block}: d({mu}, {nu}) = {}, oracle {}",
                            col.entry(mu),
                            expected(mu)
                        )
                    });
                }
            }
            t
        })
        .reduce(Tally::new, Tally::merge)
}

/// `w(γ)` and `E(γ)` against even partitions filtered by their core, for
/// every core of size at most `max_core`.
pub fn e_sets(primes: &[usize], max_core: usize, bounds: &Bounds) -> Tally {
    let oracle_limit = 40;
    sweep(primes, 0..=max_core, |g, p, t| {
        if !is_core(g, p).expect("valid") {
            return;
        }
        let ours = core_profile(g, p, bounds).ok().map(|c| (c.w, c.e_set));
        if ours
            .as_ref()
            .is_some_and(|(w, _)| g.size() + w * p > oracle_limit)
        {
            return;
        }
        let theirs = oracle::e_set(g, p, oracle_limit);
        t.check(ours == theirs, || {
            format!("p={p} γ={g}: {ours:?} vs oracle {theirs:?}")
        });
    })
}

pub fn two_runner(primes: &[usize], max_core: usize, bounds: &Bounds) -> Tally {
    let mut t = Tally::new();
    for &p in primes {
        for u in 0..p {
            for v in u + 1..p {
                for a in 0.. {
                    let mut any = false;
                    for b in 0.. {
                        let Ok(c) = two_runner_w(a, b, u, v, p) else {
                            break;
                        };
                        if c.core.size() > max_core {
                            break;
                        }
                        any = true;
                        let profile = core_profile(&c.core, p, bounds);
                        let ok = profile
                            .as_ref()
                            .is_ok_and(|pr| pr.w == c.w && pr.e_set.contains(&c.witness));
                        t.check(ok, || {
                            format!(
                                "p={p} t={a} t'={b} u={u} u'={v}: formula {} vs search {:?}",
                                c.w,
                                profile.map(|x| x.w)
                            )
                        });
                    }
                    if !any && a > 0 {
                        break;
                    }
                }
            }
        }
    }
    t
}

pub fn witnesses(primes: &[usize], max_n: usize) -> Tally {
    let items: Vec<(usize, usize)> = primes
        .iter()
        .flat_map(|&p| (1..=max_n).map(move |n| (n, p)))
        .collect();
    items
        .par_iter()
        .map(|&(n, p)| {
            let mut t = Tally::new();
            let w = witness(n, p).expect("n >= 1").partition;
            let (core, weight) = oracle::core_and_weight(&w, p);
            let minimal =
                oracle::e_set(&core, p, 2 * n).map(|(wg, e)| wg == weight && e.contains(&w));
            t.check(
                w.is_even() && w.size() == 2 * n && minimal == Some(true),
                || format!("p={p} n={n}: witness {w} not in E({core})"),
            );
            t
        })
        .reduce(Tally::new, Tally::merge)
}

pub fn chains(primes: &[usize], bounds: &Bounds) -> Tally {
    let mut t = Tally::new();
    for &p in primes {
        for two_k in (0..p).step_by(2) {
            let core = if two_k == 0 {
                Partition::empty()
            } else {
                Partition::from_unsorted(vec![two_k])
            };
            let block = BlockId { p, core, weight: 2 };
            let got = chain(&block, bounds).map(|c| {
                c.elements
                    .iter()
                    .map(|e| (e.label, e.tag == ChainTag::Even))
                    .collect::<Vec<_>>()
            });
            let expected: Vec<_> = oracle::chain_labels(p, two_k)
                .into_iter()
                .map(|(l, e)| (Some(l), e))
                .collect();
            t.check(got.as_ref().ok() == Some(&expected), || {
                format!("p={p} 2k={two_k}: chain differs from bead-move prediction")
            });
        }
    }
    t
}

pub fn scott_shapes(primes: &[usize], bounds: &Bounds) -> Tally {
    let mut t = Tally::new();
    for &p in primes {
        for k in 0..=(p - 1) / 2 {
            let s = scott(p, k, bounds);
            t.check(s.is_ok(), || format!("p={p} k={k}: {:?}", s.err()));
        }
    }
    t
}

fn timed(name: &'static str, body: impl FnOnce() -> Tally) -> SuiteOutcome {
    let start = Instant::now();
    let t = body();
    SuiteOutcome {
        name,
        checked: t.checked,
        failures: t.failures,
        failure_count: t.failure_count,
        elapsed: start.elapsed(),
    }
}

pub fn run(config: &SelftestConfig) -> Vec<SuiteOutcome> {
    let primes = &config.primes;
    let m = config.max_size;
    let b = &config.bounds;
    let chain_primes: Vec<usize> = primes
        .iter()
        .copied()
        .filter(|&p| p >= 5)
        .chain([11])
        .collect();
    vec![
        timed("core-oracle", || core_oracle(primes, m)),
        timed("odd-gap-evenness", || odd_gap_evenness(primes, m)),
        timed("delta-independence", || {
            delta_independence(primes, m, config.fault)
        }),
        timed("even-criterion", || even_criterion(primes, m)),
        timed("colour-oracle", || colour_oracle(primes, m)),
        timed("decomposition-columns", || {
            decomposition_columns(primes, m, b)
        }),
        timed("e-sets", || e_sets(primes, m.min(12), b)),
        timed("two-runner", || two_runner(primes, 40, b)),
        timed("witnesses", || witnesses(primes, config.max_n)),
        timed("chains", || chains(&chain_primes, b)),
        timed("scott", || scott_shapes(&chain_primes, b)),
    ]
}
