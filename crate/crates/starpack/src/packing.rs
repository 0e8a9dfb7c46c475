//! Star-packing primitives: validity checking, greedy maximal packing, and
//! an exhaustive branch-and-bound oracle used as ground truth by everything
//! else.
//!
//! An r-star is a subgraph copy of K_{1,r}: one center plus r leaves adjacent
//! to it. Leaves may be adjacent to each other in the host graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;

use crate::graph::{Graph, GraphError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Star {
    pub center: usize,
    pub leaves: BTreeSet<usize>,
}

impl Star {
    pub fn new(center: usize, leaves: impl IntoIterator<Item = usize>) -> Self {
        Star { center, leaves: leaves.into_iter().collect() }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct StarPacking {
    pub stars: Vec<Star>,
}

impl StarPacking {
    pub fn new(stars: Vec<Star>) -> Self {
        StarPacking { stars }
    }

    pub fn len(&self) -> usize {
        self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    /// All vertices used by the packing.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.stars.iter().flat_map(Star::vertices).collect()
    }
}

/// True iff every star has exactly `r` leaves all adjacent to its center,
/// all vertices are in range, and stars are pairwise vertex-disjoint.
/// Malformed input yields `false`, never an error.
pub fn validate_packing(g: &Graph, p: &StarPacking, r: usize) -> bool {
    let mut used = vec![false; g.n()];
    for star in &p.stars {
        if star.center >= g.n() || star.leaves.len() != r {
            return false;
        }
        for v in star.vertices() {
            if v >= g.n() || used[v] {
                return false;
            }
            used[v] = true;
        }
        if star.leaves.contains(&star.center) {
            return false;
        }
        if !star.leaves.iter().all(|&l| g.has_edge(star.center, l)) {
            return false;
        }
    }
    true
}

/// Greedy maximal packing: scan vertices in ascending order; a vertex with at
/// least `r` unused neighbors becomes a center and takes its `r` smallest
/// unused neighbors as leaves. Removing packed vertices only shrinks
/// neighborhoods, so one pass already leaves no vertex of degree >= r in the
/// residual graph.
pub fn greedy_maximal_packing(g: &Graph, r: usize) -> StarPacking {
    assert!(r >= 1, "star arity must be at least 1");
    let mut used = vec![false; g.n()];
    let mut stars = Vec::new();
    for c in g.vertices() {
        if used[c] {
            continue;
        }
        let free: Vec<usize> =
            g.neighbors(c).iter().copied().filter(|&v| !used[v]).take(r).collect();
        if free.len() < r {
            continue;
        }
        used[c] = true;
        for &l in &free {
            used[l] = true;
        }
        stars.push(Star::new(c, free));
    }
    StarPacking::new(stars)
}

/// Exhaustive maximum star packing by branch and bound. Intended for small
/// graphs (roughly n <= 24); the caller is responsible for instance size.
///
/// Candidate stars are enumerated up front and grouped by their smallest
/// vertex; the search decides, for each vertex in ascending order, whether it
/// stays unused or anchors one of its candidate stars. The bound
/// `current + remaining/(r+1)` prunes hopeless branches.
pub fn optimal_packing(g: &Graph, r: usize) -> (usize, StarPacking) {
    assert!(r >= 1, "star arity must be at least 1");
    let n = g.n();
    let mut stars: Vec<(usize, Vec<usize>)> = Vec::new();
    for c in g.vertices() {
        for leaves in g.neighbors(c).iter().copied().combinations(r) {
            stars.push((c, leaves));
        }
    }
    let mut by_min: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, (c, leaves)) in stars.iter().enumerate() {
        let min = (*c).min(leaves[0]);
        by_min[min].push(idx);
    }

    struct Search<'a> {
        stars: &'a [(usize, Vec<usize>)],
        by_min: &'a [Vec<usize>],
        r: usize,
        used: Vec<bool>,
        chosen: Vec<usize>,
        best: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, mut v: usize, avail: usize) {
            while v < self.used.len() && self.used[v] {
                v += 1;
            }
            if self.chosen.len() + avail / (self.r + 1) <= self.best.len() {
                return;
            }
            if v == self.used.len() {
                if self.chosen.len() > self.best.len() {
                    self.best = self.chosen.clone();
                }
                return;
            }
            for &idx in &self.by_min[v] {
                let (c, leaves) = &self.stars[idx];
                if self.used[*c] || leaves.iter().any(|&l| self.used[l]) {
                    continue;
                }
                self.used[*c] = true;
                for &l in leaves {
                    self.used[l] = true;
                }
                self.chosen.push(idx);
                self.run(v + 1, avail - (self.r + 1));
                self.chosen.pop();
                self.used[*c] = false;
                for &l in leaves {
                    self.used[l] = false;
                }
            }
            // v stays unused for good
            self.run(v + 1, avail - 1);
        }
    }

    let mut search = Search {
        stars: &stars,
        by_min: &by_min,
        r,
        used: vec![false; n],
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.run(0, n);
    let packing = StarPacking::new(
        search.best.iter().map(|&i| Star::new(stars[i].0, stars[i].1.iter().copied())).collect(),
    );
    debug_assert!(validate_packing(g, &packing, r));
    (packing.len(), packing)
}

/// True iff `g` contains an r-star using at least one vertex of `l`.
///
/// A star through `l` is centered in `l` or at a neighbor of `l`; either way
/// some vertex of `l ∪ N(l)` has degree >= r. Conversely such a vertex yields
/// a star through `l` (taking the `l`-vertex as a leaf when the center lies
/// outside `l`), so the degree test is exact.
pub fn star_exists_intersecting(g: &Graph, l: &BTreeSet<usize>, r: usize) -> bool {
    debug_assert!(l.iter().all(|&v| v < g.n()), "l must be a subset of the vertex set");
    l.iter()
        .flat_map(|&v| std::iter::once(v).chain(g.neighbors(v).iter().copied()))
        .any(|v| g.degree(v) >= r)
}

/// Packing text form: one line `s <center> <leaf> ... <leaf>` per star,
/// 1-based vertex indices.
pub fn write_packing(p: &StarPacking) -> String {
    let mut out = String::new();
    for star in &p.stars {
        let _ = write!(out, "s {}", star.center + 1);
        for &l in &star.leaves {
            let _ = write!(out, " {}", l + 1);
        }
        out.push('\n');
    }
    out
}

pub fn parse_packing(text: &str) -> Result<StarPacking, GraphError> {
    let mut stars = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        let err = |msg: String| GraphError::Parse { line: lineno, msg };
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        if fields[0] != "s" || fields.len() < 2 {
            return Err(err(format!("expected `s <center> <leaves..>`, got `{line}`")));
        }
        let mut ids = fields[1..].iter().map(|f| {
            f.parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| err(format!("bad vertex index `{f}`")))
        });
        let center = ids.next().unwrap()? - 1;
        let leaves: Vec<usize> =
            ids.map(|r| r.map(|v| v - 1)).collect::<Result<_, _>>()?;
        stars.push(Star::new(center, leaves));
    }
    Ok(StarPacking::new(stars))
}
