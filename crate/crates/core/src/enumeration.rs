//! Exhaustive generation and counting of valid paths from the origin to
//! `(nr, ns)`.
//!
//! The generator is a depth-first search over step words in lexicographic
//! order (`E < N`). It prunes a prefix only when it can never complete to a
//! valid path: an N-step into a class already entered by an E-step, or a
//! vertex strictly southeast of the staircase.

use std::thread;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::count::{self, Count};
use crate::error::{Error, Result};
use crate::lattice::{staircase_reach, GridParams, LatticePath, Point, Step};
use crate::validity::{is_valid, ClassLocks, Entry};
use crate::BigCount;

/// Step budget for the unpruned oracle.
pub const DEFAULT_STEP_BUDGET: u64 = 24;

/// Exact binomial coefficient via Pascal's rule, additions only.
pub fn binomial<T: Count>(m: u64, k: u64) -> Result<T> {
    if k > m {
        return Err(Error::Domain(format!("binomial({m}, {k}) needs k <= m")));
    }
    let k = k.min(m - k) as usize;
    let mut row = vec![T::zero(); k + 1];
    row[0] = T::one();
    for _ in 0..m {
        for j in (1..=k).rev() {
            row[j] = count::add(&row[j], &row[j - 1])?;
        }
    }
    Ok(row.pop().expect("row has k + 1 entries"))
}

/// Counts for one `(r, s, n)` against the closed form `C(r+s, r)^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport<T = BigCount> {
    pub params: GridParams,
    pub valid_count: T,
    /// `C(n(r+s), nr)`, every monotone path to the endpoint.
    pub total_count: T,
    pub formula_count: T,
    pub matches: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Count", deserialize = "T: Count"))]
struct CountRow<T> {
    r: i64,
    s: i64,
    n: i64,
    #[serde(with = "count::decimal")]
    valid: T,
    #[serde(with = "count::decimal")]
    total: T,
    #[serde(with = "count::decimal")]
    formula: T,
    #[serde(rename = "match")]
    matches: bool,
}

impl<T: Count> Serialize for CountReport<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CountRow {
            r: self.params.r(),
            s: self.params.s(),
            n: self.params.n(),
            valid: self.valid_count.clone(),
            total: self.total_count.clone(),
            formula: self.formula_count.clone(),
            matches: self.matches,
        }
        .serialize(serializer)
    }
}

impl<'de, T: Count> Deserialize<'de> for CountReport<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let row = CountRow::<T>::deserialize(deserializer)?;
        let params = GridParams::new(row.r, row.s, row.n).map_err(serde::de::Error::custom)?;
        Ok(CountReport {
            params,
            valid_count: row.valid,
            total_count: row.total,
            formula_count: row.formula,
            matches: row.matches,
        })
    }
}

impl<T: Count> CountReport<T> {
    /// Fills in the total and formula counts for an already computed `valid_count`.
    pub fn from_valid(params: GridParams, valid_count: T) -> Result<Self> {
        let (r, s, n) = (params.r() as u64, params.s() as u64, params.n() as u64);
        let total_count = binomial(n * (r + s), n * r)?;
        let formula_count = count::pow(&binomial::<T>(r + s, r)?, n)?;
        let matches = valid_count == formula_count;
        Ok(CountReport {
            params,
            valid_count,
            total_count,
            formula_count,
            matches,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    step: Step,
    locked: bool,
}

/// Lazy stream of valid paths in lexicographic order.
#[derive(Debug, Clone)]
pub struct ValidPaths {
    params: GridParams,
    end: Point,
    len: usize,
    /// Steps below this depth belong to a fixed prefix and are never revisited.
    floor: usize,
    at: Point,
    frames: Vec<Frame>,
    locks: ClassLocks,
    started: bool,
    done: bool,
}

impl ValidPaths {
    fn new(params: GridParams, prefix: &[Step]) -> Self {
        let mut walk = ValidPaths {
            params,
            end: params.endpoint(),
            len: params.path_len() as usize,
            floor: prefix.len(),
            at: Point::ORIGIN,
            frames: Vec::with_capacity(params.path_len() as usize),
            locks: ClassLocks::new(params),
            started: false,
            done: false,
        };
        walk.done = prefix.len() > walk.len || !prefix.iter().all(|&s| walk.push(s));
        walk
    }

    /// Takes `step` if the resulting prefix can still finish as a valid path.
    fn push(&mut self, step: Step) -> bool {
        let next = self.at.step(step);
        if next.x > self.end.x || next.y > self.end.y || next.x > staircase_reach(self.params, next.y) {
            return false;
        }
        let locked = match self.locks.enter(next, step) {
            Entry::Conflict(_) => return false,
            Entry::Locked => true,
            Entry::Unchanged => false,
        };
        self.frames.push(Frame { step, locked });
        self.at = next;
        true
    }

    fn pop(&mut self) -> Option<Step> {
        if self.frames.len() <= self.floor {
            return None;
        }
        let frame = self.frames.pop()?;
        if frame.locked {
            self.locks.release(self.at);
        }
        self.at = self.at - frame.step.delta();
        Some(frame.step)
    }

    /// Extends greedily (E first) to full length. On a dead end the stack is
    /// left at the deepest reachable prefix.
    fn descend(&mut self) -> bool {
        while self.frames.len() < self.len {
            if !self.push(Step::E) && !self.push(Step::N) {
                return false;
            }
        }
        true
    }

    fn current(&self) -> LatticePath {
        LatticePath::from_origin(self.frames.iter().map(|f| f.step).collect())
    }
}

impl Iterator for ValidPaths {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.descend() {
                return Some(self.current());
            }
        }
        loop {
            // Move to the next sibling: the deepest E that can become an N.
            loop {
                match self.pop() {
                    None => {
                        self.done = true;
                        return None;
                    }
                    Some(Step::E) if self.push(Step::N) => break,
                    Some(_) => {}
                }
            }
            if self.descend() {
                return Some(self.current());
            }
        }
    }
}

pub fn enumerate_valid(g: GridParams) -> ValidPaths {
    ValidPaths::new(g, &[])
}

/// Valid paths whose step word begins with `prefix`.
pub fn enumerate_valid_from(g: GridParams, prefix: &[Step]) -> ValidPaths {
    ValidPaths::new(g, prefix)
}

pub fn count_valid(g: GridParams) -> CountReport {
    count_valid_as(g).expect("arbitrary-precision counts cannot overflow")
}

pub fn count_valid_as<T: Count>(g: GridParams) -> Result<CountReport<T>> {
    let valid = enumerate_valid(g).try_fold(T::zero(), |acc, _| count::add(&acc, &T::one()))?;
    CountReport::from_valid(g, valid)
}

/// Same count as [`count_valid`], split over every feasible step prefix of
/// length `depth` and run on scoped threads. Shards are summed in prefix
/// order.
pub fn count_valid_sharded(g: GridParams, depth: usize) -> CountReport {
    let depth = depth.min(g.path_len() as usize);
    let prefixes: Vec<Vec<Step>> = (0..depth)
        .map(|_| [Step::E, Step::N])
        .multi_cartesian_product()
        .collect();
    let prefixes = if depth == 0 { vec![vec![]] } else { prefixes };
    let counts: Vec<u64> = thread::scope(|scope| {
        let handles: Vec<_> = prefixes
            .iter()
            .map(|prefix| scope.spawn(move || enumerate_valid_from(g, prefix).count() as u64))
            .collect();
        handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
    });
    CountReport::from_valid(g, BigCount::from(counts.iter().sum::<u64>())).expect("big counts cannot overflow")
}

/// Valid paths whose word starts with exactly `a` E-steps and then an N.
pub fn count_valid_with_prefix(g: GridParams, a: u64) -> BigCount {
    if a > g.r() as u64 {
        return BigCount::from(0u32);
    }
    let mut prefix = vec![Step::E; a as usize];
    prefix.push(Step::N);
    BigCount::from(enumerate_valid_from(g, &prefix).count())
}

/// `(r - a + 1) * C(r + 2, 2)^(n - 1)`, the prefix count for `s = 2`.
pub fn prefix_formula(g: GridParams, a: u64) -> Result<BigCount> {
    let r = g.r() as u64;
    if a > r {
        return Err(Error::Domain(format!("prefix length {a} exceeds r = {r}")));
    }
    let base: BigCount = binomial(r + 2, 2)?;
    let tail = count::pow(&base, g.n() as u64 - 1)?;
    Ok(BigCount::from(r - a + 1) * tail)
}

/// Every monotone path from the origin to `(nr, ns)`, valid or not.
pub fn all_paths(g: GridParams) -> impl Iterator<Item = LatticePath> {
    let len = g.path_len() as usize;
    (0..len).combinations((g.n() * g.s()) as usize).map(move |norths| {
        let mut steps = vec![Step::E; len];
        for i in norths {
            steps[i] = Step::N;
        }
        LatticePath::from_origin(steps)
    })
}

/// Unpruned count: filters all `C(n(r+s), nr)` words with the validity check.
pub fn brute_force_valid_count(g: GridParams, budget: u64) -> Result<BigCount> {
    if g.path_len() > budget {
        return Err(Error::Budget {
            steps: g.path_len(),
            budget,
        });
    }
    Ok(BigCount::from(all_paths(g).filter(|p| is_valid(p, g)).count()))
}
