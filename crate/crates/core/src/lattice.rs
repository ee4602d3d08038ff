//! Points, steps, paths and the geometric predicates built on them.
//!
//! Everything here is parameterised by [`GridParams`]: the east period `r`,
//! the north period `s`, and the number of blocks `n`. Two points are
//! equivalent when they differ by an integer multiple of `(r, s)`.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The triple `(r, s, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GridParams {
    r: i64,
    s: i64,
    n: i64,
}

impl GridParams {
    pub fn new(r: i64, s: i64, n: i64) -> Result<Self> {
        if r < 1 || s < 1 || n < 1 {
            return Err(Error::Params(format!(
                "r, s and n must be positive (got r={r}, s={s}, n={n})"
            )));
        }
        Ok(GridParams { r, s, n })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Same periods with a different block count.
    pub fn with_blocks(&self, n: i64) -> Result<Self> {
        GridParams::new(self.r, self.s, n)
    }

    /// The period vector `(r, s)`.
    pub fn period(&self) -> Point {
        Point::new(self.r, self.s)
    }

    /// `(nr, ns)`, the common endpoint of every path in `V_n`.
    pub fn endpoint(&self) -> Point {
        Point::new(self.n * self.r, self.n * self.s)
    }

    /// Total steps of a path from the origin to [`endpoint`](Self::endpoint).
    pub fn path_len(&self) -> u64 {
        (self.n * (self.r + self.s)) as u64
    }

    pub fn class_key(&self, p: Point) -> ClassKey {
        class_key(p, *self)
    }
}

impl fmt::Display for GridParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, s={}, n={})", self.r, self.s, self.n)
    }
}

/// A lattice point. Serialises as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn scale(self, k: i64) -> Self {
        Point::new(self.x * k, self.y * k)
    }

    /// Index of the anti-diagonal `x + y = i` through this point.
    pub fn diagonal(self) -> i64 {
        self.x + self.y
    }

    pub fn step(self, step: Step) -> Self {
        self + step.delta()
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A unit step. `E < N`, which fixes the lexicographic order of step words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    E,
    N,
}

impl Step {
    pub fn delta(self) -> Point {
        match self {
            Step::E => Point::new(1, 0),
            Step::N => Point::new(0, 1),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Canonical label of an equivalence class: `x mod r` (Euclidean) and the
/// height left over after sliding the point back by `floor(x / r)` periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub xres: i64,
    pub yoff: i64,
}

pub fn class_key(p: Point, g: GridParams) -> ClassKey {
    ClassKey {
        xres: p.x.rem_euclid(g.r),
        yoff: p.y - g.s * p.x.div_euclid(g.r),
    }
}

/// The vertex where a path meets the anti-diagonal `x + y = index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalPoint {
    pub index: i64,
    pub point: Point,
    /// Step that entered `point`; `None` at the path's start.
    pub entry: Option<Step>,
}

/// A start point and a word over `{N, E}`.
///
/// Text form is an optional `x,y:` start prefix followed by the word, e.g.
/// `2,2:NNNEEENE`. Without a prefix the path starts at the origin, and the
/// prefix is omitted when printing a path that starts there.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    start: Point,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: Point, steps: Vec<Step>) -> Self {
        LatticePath { start, steps }
    }

    pub fn from_origin(steps: Vec<Step>) -> Self {
        LatticePath::new(Point::ORIGIN, steps)
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> Point {
        self.steps.iter().fold(self.start, |p, &s| p.step(s))
    }

    /// All vertices in path order, starting with `start`.
    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().scan(self.start, |p, &s| {
            *p = p.step(s);
            Some(*p)
        }))
    }

    /// Vertices paired with the step that entered them.
    pub fn entries(&self) -> impl Iterator<Item = (Point, Option<Step>)> + '_ {
        self.vertices()
            .zip(std::iter::once(None).chain(self.steps.iter().copied().map(Some)))
    }

    /// The word as a string, without the start prefix.
    pub fn word(&self) -> String {
        self.steps.iter().map(|s| s.as_char()).collect()
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// Length of the initial run of `step`.
    pub fn leading_run(&self, step: Step) -> usize {
        self.steps.iter().take_while(|&&s| s == step).count()
    }

    /// Length of the final run of `step`.
    pub fn trailing_run(&self, step: Step) -> usize {
        self.steps.iter().rev().take_while(|&&s| s == step).count()
    }

    pub fn translate(&self, v: Point) -> LatticePath {
        translate(self, v)
    }

    /// The same word moved to start at the origin.
    pub fn normalized(&self) -> LatticePath {
        LatticePath::from_origin(self.steps.clone())
    }

    /// `self` followed by `steps`.
    pub fn extended(&self, steps: &[Step]) -> LatticePath {
        let mut all = self.steps.clone();
        all.extend_from_slice(steps);
        LatticePath::new(self.start, all)
    }

    /// Range of anti-diagonal indices the path meets.
    pub fn diagonal_range(&self) -> (i64, i64) {
        let low = self.start.diagonal();
        (low, low + self.steps.len() as i64)
    }

    pub fn point_on_diagonal(&self, i: i64) -> Result<DiagonalPoint> {
        point_on_diagonal(self, i)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start != Point::ORIGIN {
            write!(f, "{},{}:", self.start.x, self.start.y)?;
        }
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (start, word, offset) = match text.find(':') {
            Some(colon) => (parse_start(&text[..colon])?, &text[colon + 1..], colon + 1),
            None => (Point::ORIGIN, text, 0),
        };
        let steps = word
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'N' | 'n' => Ok(Step::N),
                'E' | 'e' => Ok(Step::E),
                other => Err(Error::Parse {
                    position: offset + i,
                    message: format!("unexpected character {other:?}, expected N or E"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePath::new(start, steps))
    }
}

fn parse_start(prefix: &str) -> Result<Point> {
    let mut parts = prefix.split(',');
    let mut coord = |offset: usize| -> Result<(i64, usize)> {
        let part = parts.next().ok_or_else(|| Error::Parse {
            position: offset,
            message: "start prefix must be \"x,y:\"".into(),
        })?;
        let value = part.trim().parse::<i64>().map_err(|_| Error::Parse {
            position: offset,
            message: format!("bad coordinate {part:?}"),
        })?;
        Ok((value, offset + part.len() + 1))
    };
    let (x, next) = coord(0)?;
    let (y, next) = coord(next)?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            position: next - 1,
            message: "start prefix has more than two coordinates".into(),
        });
    }
    Ok(Point::new(x, y))
}

impl Serialize for LatticePath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LatticePath {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn translate(path: &LatticePath, v: Point) -> LatticePath {
    LatticePath::new(path.start + v, path.steps.clone())
}

pub fn point_on_diagonal(path: &LatticePath, i: i64) -> Result<DiagonalPoint> {
    let (low, high) = path.diagonal_range();
    if i < low || i > high {
        return Err(Error::OutOfRange { index: i, low, high });
    }
    let k = (i - low) as usize;
    let point = path.steps[..k].iter().fold(path.start, |p, &s| p.step(s));
    let entry = k.checked_sub(1).map(|j| path.steps[j]);
    Ok(DiagonalPoint { index: i, point, entry })
}

fn xs_at_height(path: &LatticePath, y: i64) -> impl Iterator<Item = i64> + '_ {
    path.vertices().filter(move |p| p.y == y).map(|p| p.x)
}

/// Some vertex at height `v.y` lies strictly left of `v`.
pub fn passes_strictly_west(path: &LatticePath, v: Point) -> bool {
    xs_at_height(path, v.y).any(|x| x < v.x)
}

/// Some vertex at height `v.y` lies strictly right of `v`.
pub fn passes_strictly_east(path: &LatticePath, v: Point) -> bool {
    xs_at_height(path, v.y).any(|x| x > v.x)
}

/// The path meets height `v.y` and every vertex there has `x <= v.x`.
pub fn passes_weakly_west(path: &LatticePath, v: Point) -> bool {
    let mut seen = false;
    for x in xs_at_height(path, v.y) {
        if x > v.x {
            return false;
        }
        seen = true;
    }
    seen
}

/// The path meets height `v.y` and every vertex there has `x >= v.x`.
pub fn passes_weakly_east(path: &LatticePath, v: Point) -> bool {
    let mut seen = false;
    for x in xs_at_height(path, v.y) {
        if x < v.x {
            return false;
        }
        seen = true;
    }
    seen
}

/// Every vertex of `p` has some vertex of `q` weakly southeast of it.
pub fn northwest_of(p: &LatticePath, q: &LatticePath) -> bool {
    let qs: Vec<Point> = q.vertices().collect();
    p.vertices().all(|v| qs.iter().any(|w| v.x <= w.x && v.y >= w.y))
}

/// `(E^r N^s)^n` from the origin.
pub fn staircase(g: GridParams) -> LatticePath {
    let block = std::iter::repeat_n(Step::E, g.r as usize).chain(std::iter::repeat_n(Step::N, g.s as usize));
    let steps = std::iter::repeat_n(block, g.n as usize).flatten().collect();
    LatticePath::from_origin(steps)
}

/// Largest `x` such that `(x, y)` is still northwest of the staircase.
///
/// Equivalent to `northwest_of` for a single vertex with `0 <= y`, in O(1).
pub fn staircase_reach(g: GridParams, y: i64) -> i64 {
    (g.n * g.r).min((y.div_euclid(g.s) + 1) * g.r)
}
