//! Integer partitions: parsing, dominance, conjugation and enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Zero parts are never stored, so structural equality is equality of
/// partitions. The derived ordering is lexicographic on the parts; enumeration
/// and reports list partitions in the reverse of this order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    /// Builds a partition from parts in weakly decreasing order. Trailing
    /// zeros are dropped; any other zero or an increase is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::Parse {
                input: format!("{parts:?}"),
                reason: "zero part before a positive part".into(),
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                input: format!("{parts:?}"),
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts arbitrary positive integers into a partition, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part, with implicit zeros past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `self ⊵ other` in the dominance order.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                lhs: self.size,
                rhs: other.size,
            });
        }
        let mut lhs = 0;
        let mut rhs = 0;
        for i in 0..self.len().max(other.len()) {
            lhs += self.part(i);
            rhs += other.part(i);
            if lhs < rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict dominance `self ▷ other`.
    pub fn strictly_dominates(&self, other: &Partition) -> Result<bool> {
        Ok(self != other && self.dominates(other)?)
    }

    /// Compares two partitions of equal size in the dominance order; `None`
    /// when they are incomparable.
    pub fn dominance_cmp(&self, other: &Partition) -> Result<Option<Ordering>> {
        if self == other {
            return Ok(Some(Ordering::Equal));
        }
        if self.dominates(other)? {
            Ok(Some(Ordering::Greater))
        } else if other.dominates(self)? {
            Ok(Some(Ordering::Less))
        } else {
            Ok(None)
        }
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&x| x > j).count())
            .collect();
        Self::from_sorted(parts)
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|x| x % 2 == 0)
    }

    /// No part value is repeated `p` or more times.
    pub fn is_regular(&self, p: usize) -> bool {
        let mut run = 0;
        for (i, &x) in self.parts.iter().enumerate() {
            run = if i > 0 && self.parts[i - 1] == x {
                run + 1
            } else {
                1
            };
            if run >= p {
                return false;
            }
        }
        true
    }

    pub fn double(&self) -> Partition {
        Self::from_sorted(self.parts.iter().map(|x| 2 * x).collect())
    }

    /// Inverse of [`Partition::double`]; `None` unless every part is even.
    pub fn halve(&self) -> Option<Partition> {
        self.is_even()
            .then(|| Self::from_sorted(self.parts.iter().map(|x| x / 2).collect()))
    }

    /// The parts as a multiset `(value, multiplicity)`, largest value first.
    fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &x in &self.parts {
            match runs.last_mut() {
                Some((v, m)) if *v == x => *m += 1,
                _ => runs.push((x, 1)),
            }
        }
        runs
    }

    /// Text form with exponent shorthand for repeated parts, e.g. `(4,2^5)`.
    pub fn to_compact_string(&self) -> String {
        let body: Vec<String> = self
            .runs()
            .into_iter()
            .map(|(v, m)| {
                if m > 1 {
                    format!("{v}^{m}")
                } else {
                    v.to_string()
                }
            })
            .collect();
        format!("({})", body.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(4,2^5)`, `4,2,2`, `()` and whitespace anywhere.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = match (compact.strip_prefix('('), compact.strip_suffix(')')) {
            (Some(_), Some(_)) => &compact[1..compact.len() - 1],
            (None, None) => compact.as_str(),
            _ => return Err(err("unbalanced parentheses")),
        };
        let mut parts = Vec::new();
        if !body.is_empty() {
            for token in body.split(',') {
                let (value, mult) = match token.split_once('^') {
                    Some((v, m)) => (v, m.parse::<usize>().map_err(|_| err("bad exponent"))?),
                    None => (token, 1),
                };
                let value: usize = value.parse().map_err(|_| err("bad part"))?;
                if value == 0 {
                    return Err(err("parts must be positive"));
                }
                parts.extend(std::iter::repeat_n(value, mult));
            }
        }
        Partition::new(parts).map_err(|_| err("parts must be weakly decreasing"))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first.
pub fn enumerate_partitions(n: usize, bounds: &Bounds) -> Result<Vec<Partition>> {
    if n > bounds.max_size {
        return Err(Error::BoundExceeded {
            what: "partition size",
            value: n,
            bound: bounds.max_size,
        });
    }
    let mut out = Vec::new();
    for_each_partition(n, |parts| out.push(Partition::from_sorted(parts.to_vec())));
    Ok(out)
}

/// Visits every partition of `n` in reverse-lexicographic order without
/// allocating one vector per partition.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(remaining: usize, cap: usize, parts: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if remaining == 0 {
            visit(parts);
            return;
        }
        for x in (1..=cap.min(remaining)).rev() {
            parts.push(x);
            rec(remaining - x, x, parts, visit);
            parts.pop();
        }
    }
    rec(n, n, &mut Vec::with_capacity(n), &mut visit);
}
