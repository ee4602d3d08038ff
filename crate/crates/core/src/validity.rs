//! Validity of a path under the translation equivalence, two ways, plus
//! executable structural predicates used as test oracles.
//!
//! A path is valid when, once it has entered some point of a class with an
//! E-step, every later point of that class is also entered with an E-step.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    northwest_of, passes_strictly_west, passes_weakly_east, passes_weakly_west, staircase, translate, ClassKey,
    GridParams, LatticePath, Point, Step,
};

/// An E-entered point followed later by an N-entered point of the same class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub first: Point,
    pub second: Point,
    /// `second = first + ell * (r, s)`.
    pub ell: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}, ell={}", self.first, self.second, self.ell)
    }
}

/// Outcome of [`ClassLocks::enter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entry {
    /// An E-step into a class that was not yet locked; undo with [`ClassLocks::release`].
    Locked,
    Unchanged,
    /// An N-step into a locked class. Carries the point that locked it.
    Conflict(Point),
}

/// Incremental class-lock state for a left-to-right scan of a path.
///
/// Each class remembers the first point at which it was entered by an
/// E-step. The state is reversible, so a depth-first search can push and
/// pop steps.
#[derive(Debug, Clone)]
pub struct ClassLocks {
    params: GridParams,
    locked: HashMap<ClassKey, Point>,
}

impl ClassLocks {
    pub fn new(params: GridParams) -> Self {
        ClassLocks {
            params,
            locked: HashMap::new(),
        }
    }

    pub fn enter(&mut self, point: Point, step: Step) -> Entry {
        let key = self.params.class_key(point);
        match (step, self.locked.get(&key)) {
            (Step::N, Some(&first)) => Entry::Conflict(first),
            (Step::N, None) | (Step::E, Some(_)) => Entry::Unchanged,
            (Step::E, None) => {
                self.locked.insert(key, point);
                Entry::Locked
            }
        }
    }

    /// Undo an [`Entry::Locked`] produced by entering `point`.
    pub fn release(&mut self, point: Point) {
        self.locked.remove(&self.params.class_key(point));
    }
}

/// Single pass over the steps with class locking.
pub fn is_valid(path: &LatticePath, g: GridParams) -> bool {
    find_violation(path, g).is_none()
}

/// The violation whose second point comes earliest along the path, paired
/// with the earliest E-entered point of its class.
pub fn find_violation(path: &LatticePath, g: GridParams) -> Option<Violation> {
    let mut locks = ClassLocks::new(g);
    path.entries().find_map(|(point, entry)| {
        let step = entry?;
        match locks.enter(point, step) {
            Entry::Conflict(first) => Some(Violation {
                first,
                second: point,
                ell: (point.x - first.x) / g.r(),
            }),
            _ => None,
        }
    })
}

/// Diagonal-indexed view of a path: `entries[i - low]` is the vertex on
/// `x + y = i` together with its entry step.
struct Diagonals {
    low: i64,
    entries: Vec<(Point, Option<Step>)>,
}

impl Diagonals {
    fn new(path: &LatticePath) -> Self {
        Diagonals {
            low: path.start().diagonal(),
            entries: path.entries().collect(),
        }
    }

    fn high(&self) -> i64 {
        self.low + self.entries.len() as i64 - 1
    }

    fn at(&self, i: i64) -> (Point, Option<Step>) {
        self.entries[(i - self.low) as usize]
    }

    fn shifted(&self, v: Point) -> Diagonals {
        Diagonals {
            low: self.low + v.diagonal(),
            entries: self.entries.iter().map(|&(p, e)| (p + v, e)).collect(),
        }
    }
}

/// The crossing of `P` with a translate `P + ell(r, s)`, `ell > 0`, that comes
/// earliest along `P`: a point `P` enters with N and the translate with E.
/// Ties on the same point go to the larger shift, whose E-entered partner
/// comes earlier, as in [`find_violation`].
pub fn crossing_shift(path: &LatticePath, g: GridParams) -> Option<(i64, Point)> {
    let own = Diagonals::new(path);
    let span = g.r() + g.s();
    let max_shift = path.len() as i64 / span;
    let shifted: Vec<Diagonals> = (1..=max_shift).map(|ell| own.shifted(g.period().scale(ell))).collect();
    (own.low..=own.high()).find_map(|i| {
        let (p, p_entry) = own.at(i);
        if p_entry != Some(Step::N) {
            return None;
        }
        shifted.iter().enumerate().rev().find_map(|(k, moved)| {
            let ell = k as i64 + 1;
            if i <= moved.low || i > moved.high() {
                return None;
            }
            let (q, q_entry) = moved.at(i);
            (p == q && q_entry == Some(Step::E)).then_some((ell, p))
        })
    })
}

/// Validity through translate crossings rather than class bookkeeping.
pub fn is_valid_by_crossing(path: &LatticePath, g: GridParams) -> bool {
    crossing_shift(path, g).is_none()
}

/// Diagonals `i < k` in the common range of `P` and `Q = P + (r, s)` with
/// `x_i(P) > x_i(Q)` and `x_k(P) <= x_k(Q)`.
pub fn switching_indices(path: &LatticePath, g: GridParams) -> Option<(i64, i64)> {
    let own = Diagonals::new(path);
    let moved = Diagonals::new(&translate(path, g.period()));
    let mut ahead: Option<i64> = None;
    for i in moved.low..=own.high() {
        let gap = own.at(i).0.x - moved.at(i).0.x;
        match ahead {
            Some(first) if gap <= 0 => return Some((first, i)),
            None if gap > 0 => ahead = Some(i),
            _ => {}
        }
    }
    None
}

pub fn switching_hypothesis(path: &LatticePath, g: GridParams) -> bool {
    switching_indices(path, g).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThreePoints {
    pub u: Point,
    pub v: Point,
    pub w: Point,
}

/// Searches for `u < v < w` in one class such that the path passes strictly
/// west of `u`, weakly east of `v` and weakly west of `w`.
///
/// Candidates for `u` range over the path's heights and its horizontal span
/// widened by `r` on each side; `v` and `w` are later class members no
/// higher than the path. The first hit in `(u.y, u.x, v, w)` order is
/// returned.
pub fn three_points_hypothesis(path: &LatticePath, g: GridParams) -> Option<ThreePoints> {
    let vertices: Vec<Point> = path.vertices().collect();
    let x_lo = vertices.iter().map(|p| p.x).min()?;
    let x_hi = vertices.iter().map(|p| p.x).max()?;
    let y_lo = vertices.iter().map(|p| p.y).min()?;
    let y_hi = vertices.iter().map(|p| p.y).max()?;
    let period = g.period();
    let later =
        |p: Point| std::iter::successors(Some(p + period), move |&q| Some(q + period)).take_while(move |q| q.y <= y_hi);

    for uy in y_lo..=y_hi {
        for ux in (x_lo - g.r())..=(x_hi + g.r()) {
            let u = Point::new(ux, uy);
            if !passes_strictly_west(path, u) {
                continue;
            }
            for v in later(u).filter(|&v| passes_weakly_east(path, v)) {
                if let Some(w) = later(v).find(|&w| passes_weakly_west(path, w)) {
                    return Some(ThreePoints { u, v, w });
                }
            }
        }
    }
    None
}

/// Whether a path from the origin to `(nr, ns)` stays northwest of the staircase.
pub fn staircase_bound_ok(path: &LatticePath, g: GridParams) -> Result<bool> {
    if path.start() != Point::ORIGIN || path.end() != g.endpoint() {
        return Err(Error::Domain(format!(
            "staircase bound needs a path from (0,0) to {}, got {} -> {}",
            g.endpoint(),
            path.start(),
            path.end()
        )));
    }
    Ok(northwest_of(path, &staircase(g)))
}
