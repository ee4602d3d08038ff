//! The `s = 2` bijection `V_n -> V_1 x V_(n-1)` and its iteration
//! `V_n -> (V_1)^n`.
//!
//! A valid path is cut after its second N-step and before its trailing
//! E-run. Depending on how many E-steps those two pieces hold together, one
//! of two surgeries moves E-steps between the first block and the rest.
//! Second components keep their natural start `(r, 2)`; only
//! [`factorize`] normalises factors to the origin.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{GridParams, LatticePath, Point, Step};
use crate::validity::{find_violation, is_valid};

/// Which surgery applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// `P = E^a N E^b N Q E^c` with `a + b + c = r`.
    Absorb,
    /// `P = E^a N E^b N R E^(r+1) N E^c` with `a + b + c < r`.
    Wrap,
}

/// A path of `V_n` (for `s = 2`) cut into the pieces the bijection moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseDecomposition {
    pub case: Case,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `Q` for [`Case::Absorb`], `R` for [`Case::Wrap`], at its position in `P`.
    pub middle: LatticePath,
}

impl CaseDecomposition {
    /// The subpath `Q` between the prefix and the suffix; in the wrap case
    /// this is `R` followed by `E^(r+1)`.
    pub fn q(&self, g: GridParams) -> LatticePath {
        match self.case {
            Case::Absorb => self.middle.clone(),
            Case::Wrap => self.middle.extended(&vec![Step::E; g.r() as usize + 1]),
        }
    }
}

/// Image of one application of the bijection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PhiImage {
    /// Single-block path from `(0,0)` to `(r, 2)`.
    pub p1: LatticePath,
    /// Valid path from `(r, 2)` to `(nr, 2n)`.
    pub q: LatticePath,
}

/// `n` single-block paths, each from the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Factorization {
    pub factors: Vec<LatticePath>,
}

fn run(step: Step, count: usize) -> impl Iterator<Item = Step> {
    std::iter::repeat_n(step, count)
}

fn require_s2(g: GridParams) -> Result<()> {
    if g.s() != 2 {
        return Err(Error::Domain(format!("the bijection needs s = 2, got s = {}", g.s())));
    }
    Ok(())
}

/// Checks that `path` belongs to `V_n`, tagging failures as domain errors.
fn require_member(path: &LatticePath, g: GridParams) -> Result<()> {
    if path.start() != Point::ORIGIN || path.end() != g.endpoint() {
        return Err(Error::Domain(format!(
            "expected a path from (0,0) to {}, got {} -> {}",
            g.endpoint(),
            path.start(),
            path.end()
        )));
    }
    match find_violation(path, g) {
        Some(v) => Err(Error::InvalidPath(v)),
        None => Ok(()),
    }
}

/// Prefix and suffix shape of `P` before any proposition is relied upon:
/// `(case, a, b, c, Q)` where `Q` still carries its trailing `E^(r+1)` in
/// the wrap case.
fn split(path: &LatticePath, g: GridParams) -> Result<(Case, usize, usize, usize, LatticePath)> {
    require_s2(g)?;
    if g.n() < 2 {
        return Err(Error::Domain("the bijection needs n >= 2".into()));
    }
    require_member(path, g)?;

    let steps = path.steps();
    let r = g.r() as usize;
    let a = path.leading_run(Step::E);
    let b = steps[a + 1..].iter().take_while(|&&s| s == Step::E).count();
    let head = a + b + 2;
    if a + b > r {
        return Err(Error::Invariant(format!(
            "prefix E^{a} N E^{b} N of a valid path leaves the staircase (r = {r})"
        )));
    }
    let tail = path.trailing_run(Step::E);
    let q_start = Point::new((a + b) as i64, 2);

    if a + b + tail >= r {
        let c = r - a - b;
        let q = LatticePath::new(q_start, steps[head..steps.len() - c].to_vec());
        Ok((Case::Absorb, a, b, c, q))
    } else {
        let c = tail;
        let q = LatticePath::new(q_start, steps[head..steps.len() - c - 1].to_vec());
        Ok((Case::Wrap, a, b, c, q))
    }
}

/// Splits a path of `V_n` (`s = 2`, `n >= 2`) into the bijection's pieces.
pub fn decompose(path: &LatticePath, g: GridParams) -> Result<CaseDecomposition> {
    let (case, a, b, c, q) = split(path, g)?;
    let middle = match case {
        Case::Absorb => q,
        Case::Wrap => {
            let keep = g.r() as usize + 1;
            if q.trailing_run(Step::E) < keep {
                return Err(Error::Invariant(format!(
                    "{path}: middle part {q} ends with fewer than {keep} E-steps"
                )));
            }
            LatticePath::new(q.start(), q.steps()[..q.len() - keep].to_vec())
        }
    };
    Ok(CaseDecomposition { case, a, b, c, middle })
}

pub fn phi(path: &LatticePath, g: GridParams) -> Result<PhiImage> {
    let parts = decompose(path, g)?;
    let (a, b, c) = (parts.a, parts.b, parts.c);
    let r = g.r() as usize;

    let image = match parts.case {
        Case::Absorb => PhiImage {
            p1: block(a, b, c),
            q: parts.middle.translate(Point::new(c as i64, 0)),
        },
        Case::Wrap => {
            let rest = &parts.middle;
            let moved_start = rest.start() + Point::new((c + r + 1) as i64, 1);
            let lead = a + b + c + 1;
            let q_start = Point::new(g.r(), 2);
            if q_start + Point::new(lead as i64, 1) != moved_start {
                return Err(Error::Invariant(format!("{path}: shifted R starts at {moved_start}")));
            }
            let steps = run(Step::E, lead)
                .chain(run(Step::N, 1))
                .chain(rest.steps().iter().copied())
                .collect();
            PhiImage {
                p1: block(a, r - a - c, c),
                q: LatticePath::new(q_start, steps),
            }
        }
    };
    check_image(&image, g)?;
    Ok(image)
}

/// `E^a N E^b N E^c` from the origin.
fn block(a: usize, b: usize, c: usize) -> LatticePath {
    let steps = run(Step::E, a)
        .chain(run(Step::N, 1))
        .chain(run(Step::E, b))
        .chain(run(Step::N, 1))
        .chain(run(Step::E, c))
        .collect();
    LatticePath::from_origin(steps)
}

fn check_image(image: &PhiImage, g: GridParams) -> Result<()> {
    let corner = Point::new(g.r(), 2);
    let ok =
        image.p1.end() == corner && image.q.start() == corner && image.q.end() == g.endpoint() && is_valid(&image.q, g);
    if !ok {
        return Err(Error::Invariant(format!(
            "image ({}, {}) is not in V_1 x V_(n-1)",
            image.p1, image.q
        )));
    }
    Ok(())
}

/// Rebuilds the unique path of `V_n` mapping to `(p1, q)`.
///
/// `p1` runs `(0,0) -> (r, 2)`; `q` is a valid path `(r, 2) -> (nr, 2n)`.
pub fn phi_inverse(p1: &LatticePath, q: &LatticePath, g: GridParams) -> Result<LatticePath> {
    require_s2(g)?;
    if g.n() < 2 {
        return Err(Error::Domain("the bijection needs n >= 2".into()));
    }
    let corner = Point::new(g.r(), 2);
    if p1.start() != Point::ORIGIN || p1.end() != corner {
        return Err(Error::Domain(format!(
            "first component {p1} must run from (0,0) to {corner}"
        )));
    }
    if q.start() != corner || q.end() != g.endpoint() {
        return Err(Error::Domain(format!(
            "second component {q} must run from {corner} to {}",
            g.endpoint()
        )));
    }
    if let Some(v) = find_violation(q, g) {
        return Err(Error::InvalidPath(v));
    }

    let r = g.r() as usize;
    let a = p1.leading_run(Step::E);
    let b = p1.steps()[a + 1..].iter().take_while(|&&s| s == Step::E).count();
    let c = r - a - b;
    let d = q.leading_run(Step::E);
    let rest = &q.steps()[d + 1..];

    let steps: Vec<Step> = if d <= r - b {
        run(Step::E, a)
            .chain(run(Step::N, 1))
            .chain(run(Step::E, b))
            .chain(run(Step::N, 1))
            .chain(q.steps().iter().copied())
            .chain(run(Step::E, c))
            .collect()
    } else {
        run(Step::E, a)
            .chain(run(Step::N, 1))
            .chain(run(Step::E, b + d - r - 1))
            .chain(run(Step::N, 1))
            .chain(rest.iter().copied())
            .chain(run(Step::E, r + 1))
            .chain(run(Step::N, 1))
            .chain(run(Step::E, c))
            .collect()
    };
    let path = LatticePath::from_origin(steps);
    if path.end() != g.endpoint() || !is_valid(&path, g) {
        return Err(Error::Invariant(format!(
            "preimage {path} of ({p1}, {q}) is not in V_n"
        )));
    }
    Ok(path)
}

/// Structural claims behind the bijection, checked on one input: in the
/// absorb case the second component starts with at most `r - b` E-steps;
/// in the wrap case `Q` ends with at least `r + 1` E-steps. The second
/// component must be valid in both cases. Any error counts as `false`.
pub fn phi_propositions_check(path: &LatticePath, g: GridParams) -> bool {
    let Ok((case, _, b, c, q)) = split(path, g) else {
        return false;
    };
    let r = g.r() as usize;
    match case {
        Case::Absorb => {
            let shifted = q.translate(Point::new(c as i64, 0));
            shifted.leading_run(Step::E) <= r - b && is_valid(&shifted, g)
        }
        Case::Wrap => q.trailing_run(Step::E) > r && phi(path, g).is_ok_and(|image| is_valid(&image.q, g)),
    }
}

/// Applies the bijection `n - 1` times, peeling one block per step.
pub fn factorize(path: &LatticePath, g: GridParams) -> Result<Factorization> {
    require_s2(g)?;
    require_member(path, g)?;
    let mut factors = Vec::with_capacity(g.n() as usize);
    let mut rest = path.clone();
    for blocks in (2..=g.n()).rev() {
        let image = phi(&rest, g.with_blocks(blocks)?)?;
        factors.push(image.p1);
        rest = image.q.normalized();
    }
    factors.push(rest);
    Ok(Factorization { factors })
}

/// Inverse of [`factorize`]: folds [`phi_inverse`] from the last factor back.
pub fn compose(factorization: &Factorization, g: GridParams) -> Result<LatticePath> {
    require_s2(g)?;
    let factors = &factorization.factors;
    if factors.len() != g.n() as usize {
        return Err(Error::Domain(format!(
            "expected {} factors, got {}",
            g.n(),
            factors.len()
        )));
    }
    let single = g.with_blocks(1)?;
    for f in factors {
        if f.start() != Point::ORIGIN || f.end() != single.endpoint() {
            return Err(Error::Domain(format!(
                "factor {f} must run from (0,0) to {}",
                single.endpoint()
            )));
        }
    }
    let corner = Point::new(g.r(), 2);
    let (last, init) = factors.split_last().expect("n >= 1");
    init.iter().rev().zip(2..).try_fold(last.clone(), |acc, (p1, blocks)| {
        phi_inverse(p1, &acc.translate(corner), g.with_blocks(blocks)?)
    })
}
