//! Test-only oracles that share no code path with the library's checks.

#![allow(dead_code)]

use latpath::{GridParams, LatticePath, Point, Step};

/// `q - p` is `ell * (r, s)` for some integer `ell`, solved directly.
pub fn shift_between(p: Point, q: Point, g: GridParams) -> Option<i64> {
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    if dx % g.r() != 0 {
        return None;
    }
    let ell = dx / g.r();
    (dy == ell * g.s()).then_some(ell)
}

/// Validity straight from the definition: no E-entered vertex is followed
/// by an N-entered vertex of its class. Quadratic in path length.
pub fn valid_by_definition(path: &LatticePath, g: GridParams) -> bool {
    let entries: Vec<(Point, Option<Step>)> = path.entries().collect();
    for (i, &(v, ev)) in entries.iter().enumerate() {
        if ev != Some(Step::E) {
            continue;
        }
        for &(w, ew) in &entries[i + 1..] {
            if ew == Some(Step::N) && shift_between(v, w, g).is_some() {
                return false;
            }
        }
    }
    true
}

/// Multiplicative binomial in u128.
pub fn choose(m: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

pub fn grid(r: i64, s: i64, n: i64) -> GridParams {
    GridParams::new(r, s, n).unwrap()
}

pub fn path(text: &str) -> LatticePath {
    text.parse().unwrap()
}

/// Every word with `east` E-steps and `north` N-steps, by recursion.
pub fn words(east: usize, north: usize) -> Vec<Vec<Step>> {
    if east == 0 && north == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    if east > 0 {
        for mut w in words(east - 1, north) {
            w.insert(0, Step::E);
            out.push(w);
        }
    }
    if north > 0 {
        for mut w in words(east, north - 1) {
            w.insert(0, Step::N);
            out.push(w);
        }
    }
    out
}

/// All monotone paths from the origin to `(nr, ns)`, lexicographic.
pub fn all_words(g: GridParams) -> Vec<LatticePath> {
    words((g.n() * g.r()) as usize, (g.n() * g.s()) as usize)
        .into_iter()
        .map(LatticePath::from_origin)
        .collect()
}

/// Every path of length at most `max_len` from the origin.
pub fn short_paths(max_len: usize) -> Vec<LatticePath> {
    (0..=max_len)
        .flat_map(|len| (0..=len).flat_map(move |e| words(e, len - e)))
        .map(LatticePath::from_origin)
        .collect()
}
