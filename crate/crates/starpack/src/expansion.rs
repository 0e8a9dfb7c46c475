//! Maximum bipartite matching and the expansion lemmas driving the kernel's
//! partition refinement.
//!
//! A [`BipartiteView`] selects two disjoint vertex sets X and Y of a host
//! graph; only X–Y edges are considered, edges inside either side are
//! ignored.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::Graph;
use crate::packing::Star;

#[derive(Debug, Error)]
pub enum ExpansionError {
    #[error("vertex {0} appears on both sides of the bipartite view")]
    Overlap(usize),
    #[error("vertex {vertex} out of range for host graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} of Y is isolated within the bipartite view")]
    IsolatedY(usize),
    #[error("|Y| = {y} does not exceed r*m = {r}*{matching}")]
    MatchingCoversY { y: usize, r: usize, matching: usize },
}

#[derive(Clone)]
pub struct BipartiteView<'g> {
    graph: &'g Graph,
    x: Vec<usize>,
    y: Vec<usize>,
}

impl<'g> BipartiteView<'g> {
    pub fn new(
        graph: &'g Graph,
        x_side: impl IntoIterator<Item = usize>,
        y_side: impl IntoIterator<Item = usize>,
    ) -> Result<Self, ExpansionError> {
        let x: Vec<usize> = x_side.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let y: Vec<usize> = y_side.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for &v in x.iter().chain(&y) {
            if v >= graph.n() {
                return Err(ExpansionError::OutOfRange { vertex: v, n: graph.n() });
            }
        }
        if let Some(&v) = x.iter().find(|v| y.binary_search(v).is_ok()) {
            return Err(ExpansionError::Overlap(v));
        }
        Ok(BipartiteView { graph, x, y })
    }

    pub fn x_side(&self) -> &[usize] {
        &self.x
    }

    pub fn y_side(&self) -> &[usize] {
        &self.y
    }

    fn restricted(&self, x: Vec<usize>, y: Vec<usize>) -> Self {
        BipartiteView { graph: self.graph, x, y }
    }

    /// Neighbors of host vertex `v` that lie in X, ascending.
    fn x_neighbors(&self, v: usize) -> Vec<usize> {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|w| self.x.binary_search(w).is_ok())
            .collect()
    }
}

/// The outcome of one expansion step: `s` has `|s|` vertex-disjoint r-stars
/// with leaves in `t` (the `stars` witness), and within the view every
/// neighbor of `t` lies in `s`.
#[derive(Clone, Debug)]
pub struct ExpansionOutcome {
    pub s: BTreeSet<usize>,
    pub t: BTreeSet<usize>,
    pub stars: Vec<Star>,
}

/// The modified expansion lemma's partition: `a1 ∪ b1 = X`, `a2 ∪ b2 = Y`,
/// `b1` has `|b1|` r-stars in `b2` (witnessed), no edge joins `a1` to `b2`,
/// and `|a2| <= r * |a1|`. `rounds` counts the recursion steps taken.
#[derive(Clone, Debug)]
pub struct ExpansionPartition {
    pub a1: BTreeSet<usize>,
    pub b1: BTreeSet<usize>,
    pub a2: BTreeSet<usize>,
    pub b2: BTreeSet<usize>,
    pub witness_stars: Vec<Star>,
    pub rounds: usize,
}

/// Maximum-cardinality matching between X and Y by augmenting-path search
/// from each X vertex in ascending order. Returned as (x, y) host pairs.
pub fn max_matching(bv: &BipartiteView) -> Vec<(usize, usize)> {
    let adj: Vec<Vec<usize>> = bv
        .x
        .iter()
        .map(|&xv| {
            bv.graph
                .neighbors(xv)
                .iter()
                .filter_map(|w| bv.y.binary_search(w).ok())
                .collect()
        })
        .collect();
    let match_y = kuhn_matching(&adj, bv.y.len());
    let mut pairs: Vec<(usize, usize)> = match_y
        .iter()
        .enumerate()
        .filter_map(|(yi, xi)| xi.map(|xi| (bv.x[xi], bv.y[yi])))
        .collect();
    pairs.sort_unstable();
    pairs
}

/// `adj[i]`: left-vertex i's right neighbors. Returns, per right vertex, the
/// matched left vertex if any.
fn kuhn_matching(adj: &[Vec<usize>], right_n: usize) -> Vec<Option<usize>> {
    let mut match_right: Vec<Option<usize>> = vec![None; right_n];
    let mut seen = vec![usize::MAX; right_n];
    for start in 0..adj.len() {
        try_augment(adj, start, start, &mut match_right, &mut seen);
    }
    match_right
}

fn try_augment(
    adj: &[Vec<usize>],
    left: usize,
    stamp: usize,
    match_right: &mut [Option<usize>],
    seen: &mut [usize],
) -> bool {
    for &right in &adj[left] {
        if seen[right] == stamp {
            continue;
        }
        seen[right] = stamp;
        if match_right[right].is_none()
            || try_augment(adj, match_right[right].unwrap(), stamp, match_right, seen)
        {
            match_right[right] = Some(left);
            return true;
        }
    }
    false
}

/// Expansion step. Requires `|Y| > r*m` (m the maximum matching size of the
/// view) and no isolated Y vertex; produces nonempty S and T with a verified
/// star witness and `N(T) ⊆ S` inside the view.
pub fn expansion(bv: &BipartiteView, r: usize) -> Result<ExpansionOutcome, ExpansionError> {
    assert!(r >= 1, "star arity must be at least 1");
    for &yv in &bv.y {
        if bv.x_neighbors(yv).is_empty() {
            return Err(ExpansionError::IsolatedY(yv));
        }
    }
    let m = max_matching(bv).len();
    if bv.y.len() <= r * m {
        return Err(ExpansionError::MatchingCoversY { y: bv.y.len(), r, matching: m });
    }
    Ok(expansion_unchecked(bv, r))
}

/// Core construction. Clones every X vertex r times, takes a maximum matching
/// of the cloned graph, and walks alternating paths from the unmatched Y
/// vertices: the reached Y vertices form T and their X neighborhood forms S.
/// Maximality of the matching forces every clone of every S vertex to be
/// matched into T, which yields the star witness directly.
fn expansion_unchecked(bv: &BipartiteView, r: usize) -> ExpansionOutcome {
    let xn = bv.x.len();
    let yn = bv.y.len();
    // Clone c of x-index xi is left vertex xi*r + c.
    let mut clone_adj: Vec<Vec<usize>> = Vec::with_capacity(xn * r);
    for &xv in &bv.x {
        let nbrs: Vec<usize> = bv
            .graph
            .neighbors(xv)
            .iter()
            .filter_map(|w| bv.y.binary_search(w).ok())
            .collect();
        for _ in 0..r {
            clone_adj.push(nbrs.clone());
        }
    }
    let match_y = kuhn_matching(&clone_adj, yn);
    let mut match_clone: Vec<Option<usize>> = vec![None; xn * r];
    for (yi, clone) in match_y.iter().enumerate() {
        if let Some(c) = clone {
            match_clone[*c] = Some(yi);
        }
    }

    // Alternating BFS: from a Y vertex along non-matching edges to clones,
    // from a clone along its matching edge back to Y.
    let mut y_reached = vec![false; yn];
    let mut clone_reached = vec![false; xn * r];
    let mut queue: VecDeque<usize> = (0..yn).filter(|&yi| match_y[yi].is_none()).collect();
    for &yi in &queue {
        y_reached[yi] = true;
    }
    while let Some(yi) = queue.pop_front() {
        for xi in bv.x_neighbors(bv.y[yi]).iter().map(|xv| bv.x.binary_search(xv).unwrap()) {
            for clone in xi * r..(xi + 1) * r {
                if clone_reached[clone] {
                    continue;
                }
                clone_reached[clone] = true;
                let partner = match_clone[clone]
                    .expect("clone reached from an exposed Y vertex must be matched");
                if !y_reached[partner] {
                    y_reached[partner] = true;
                    queue.push_back(partner);
                }
            }
        }
    }

    let t: BTreeSet<usize> =
        (0..yn).filter(|&yi| y_reached[yi]).map(|yi| bv.y[yi]).collect();
    let s: BTreeSet<usize> = (0..xn)
        .filter(|&xi| clone_reached[xi * r])
        .map(|xi| bv.x[xi])
        .collect();
    let stars: Vec<Star> = s
        .iter()
        .map(|&xv| {
            let xi = bv.x.binary_search(&xv).unwrap();
            let leaves = (xi * r..(xi + 1) * r).map(|clone| {
                let yi = match_clone[clone].expect("all clones of an S vertex are matched");
                bv.y[yi]
            });
            Star::new(xv, leaves)
        })
        .collect();

    let outcome = ExpansionOutcome { s, t, stars };
    assert_expansion_postconditions(bv, r, &outcome);
    outcome
}

fn assert_expansion_postconditions(bv: &BipartiteView, r: usize, out: &ExpansionOutcome) {
    assert!(!out.s.is_empty() && !out.t.is_empty(), "expansion produced an empty side");
    let mut used = BTreeSet::new();
    assert_eq!(out.stars.len(), out.s.len());
    for star in &out.stars {
        assert!(out.s.contains(&star.center));
        assert_eq!(star.leaves.len(), r);
        for v in star.vertices() {
            assert!(used.insert(v), "expansion witness stars overlap at {v}");
        }
        for &l in &star.leaves {
            assert!(out.t.contains(&l));
            assert!(bv.graph.has_edge(star.center, l));
        }
    }
    for &tv in &out.t {
        for xv in bv.x_neighbors(tv) {
            assert!(out.s.contains(&xv), "T vertex {tv} has neighbor {xv} outside S");
        }
    }
}

/// Modified expansion lemma: repeatedly strips expansion pairs off (X, Y)
/// until the leftover satisfies `|Y'| <= r|X'|`, yielding the full partition.
/// Y vertices left isolated after a strip migrate into the current T.
pub fn modified_expansion(
    bv: &BipartiteView,
    r: usize,
) -> Result<ExpansionPartition, ExpansionError> {
    assert!(r >= 1, "star arity must be at least 1");
    for &yv in &bv.y {
        if bv.x_neighbors(yv).is_empty() {
            return Err(ExpansionError::IsolatedY(yv));
        }
    }
    let part = modified_expansion_rec(bv, r, 1);
    assert!(
        part.rounds < bv.x.len() + bv.y.len() || bv.x.is_empty(),
        "modified expansion exceeded its iteration budget"
    );
    part.a1.iter().for_each(|v| assert!(!part.b1.contains(v)));
    part.a2.iter().for_each(|v| assert!(!part.b2.contains(v)));
    assert_eq!(
        part.a1.iter().chain(&part.b1).copied().collect::<BTreeSet<_>>(),
        bv.x.iter().copied().collect::<BTreeSet<_>>()
    );
    assert_eq!(
        part.a2.iter().chain(&part.b2).copied().collect::<BTreeSet<_>>(),
        bv.y.iter().copied().collect::<BTreeSet<_>>()
    );
    assert!(part.a2.len() <= r * part.a1.len());
    for &a in &part.a1 {
        for &b in &part.b2 {
            assert!(!bv.graph.has_edge(a, b), "edge between A1 vertex {a} and B2 vertex {b}");
        }
    }
    let centers: BTreeSet<usize> = part.witness_stars.iter().map(|s| s.center).collect();
    assert_eq!(centers, part.b1);
    assert!(part.witness_stars.iter().all(|s| s.leaves.iter().all(|l| part.b2.contains(l))));
    Ok(part)
}

fn modified_expansion_rec(bv: &BipartiteView, r: usize, round: usize) -> ExpansionPartition {
    let m = max_matching(bv).len();
    if bv.y.len() <= r * m {
        return ExpansionPartition {
            a1: bv.x.iter().copied().collect(),
            b1: BTreeSet::new(),
            a2: bv.y.iter().copied().collect(),
            b2: BTreeSet::new(),
            witness_stars: Vec::new(),
            rounds: round,
        };
    }
    let step = expansion_unchecked(bv, r);
    let rest_x: Vec<usize> = bv.x.iter().copied().filter(|v| !step.s.contains(v)).collect();
    let mut rest_y: Vec<usize> = bv.y.iter().copied().filter(|v| !step.t.contains(v)).collect();
    let mut t = step.t;
    // Y vertices isolated in the leftover view sink into T.
    let rest_view = bv.restricted(rest_x.clone(), Vec::new());
    rest_y.retain(|&yv| {
        let keep = !rest_view.x_neighbors(yv).is_empty();
        if !keep {
            t.insert(yv);
        }
        keep
    });

    if rest_y.len() <= r * rest_x.len() {
        return ExpansionPartition {
            a1: rest_x.into_iter().collect(),
            b1: step.s,
            a2: rest_y.into_iter().collect(),
            b2: t,
            witness_stars: step.stars,
            rounds: round,
        };
    }
    let inner = modified_expansion_rec(&bv.restricted(rest_x, rest_y), r, round + 1);
    let mut witness = inner.witness_stars;
    witness.extend(step.stars);
    ExpansionPartition {
        a1: inner.a1,
        b1: inner.b1.union(&step.s).copied().collect(),
        a2: inner.a2,
        b2: inner.b2.union(&t).copied().collect(),
        witness_stars: witness,
        rounds: inner.rounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn cross_graph(xn: usize, yn: usize, edges: &[(usize, usize)]) -> Graph {
        // x vertices 0..xn, y vertices xn..xn+yn
        let shifted: Vec<(usize, usize)> = edges.iter().map(|&(x, y)| (x, xn + y)).collect();
        Graph::from_edges(xn + yn, &shifted).unwrap()
    }

    #[test]
    fn matching_single_edge() {
        let g = cross_graph(1, 1, &[(0, 0)]);
        let bv = BipartiteView::new(&g, [0], [1]).unwrap();
        assert_eq!(max_matching(&bv), vec![(0, 1)]);
    }

    #[test]
    fn matching_complete_2_by_3() {
        let edges: Vec<_> = (0..2).cartesian_product(0..3).collect();
        let g = cross_graph(2, 3, &edges);
        let bv = BipartiteView::new(&g, [0, 1], [2, 3, 4]).unwrap();
        assert_eq!(max_matching(&bv).len(), 2);
    }

    #[test]
    fn matching_shared_y() {
        let g = cross_graph(2, 1, &[(0, 0), (1, 0)]);
        let bv = BipartiteView::new(&g, [0, 1], [2]).unwrap();
        assert_eq!(max_matching(&bv).len(), 1);
    }

    #[test]
    fn view_rejects_overlap() {
        let g = Graph::new(3);
        assert!(matches!(
            BipartiteView::new(&g, [0, 1], [1, 2]),
            Err(ExpansionError::Overlap(1))
        ));
    }

    #[test]
    fn expansion_star_example() {
        // X = {x}, Y = four vertices all adjacent to x, r = 3: m = 1, |Y| > 3.
        let edges: Vec<_> = (0..4).map(|y| (0, y)).collect();
        let g = cross_graph(1, 4, &edges);
        let bv = BipartiteView::new(&g, [0], [1, 2, 3, 4]).unwrap();
        let out = expansion(&bv, 3).unwrap();
        assert_eq!(out.s, BTreeSet::from([0]));
        assert_eq!(out.t, BTreeSet::from([1, 2, 3, 4]));
        assert_eq!(out.stars.len(), 1);
    }

    #[test]
    fn expansion_concentrated_on_one_x() {
        // Five Y vertices all adjacent only to x1; x2 is adjacent to none.
        let edges: Vec<_> = (0..5).map(|y| (0, y)).collect();
        let g = cross_graph(2, 5, &edges);
        let bv = BipartiteView::new(&g, [0, 1], [2, 3, 4, 5, 6]).unwrap();
        let out = expansion(&bv, 2).unwrap();
        assert_eq!(out.s, BTreeSet::from([0]));
        assert!(out.t.iter().all(|&t| g.has_edge(0, t)));
    }

    #[test]
    fn expansion_rejects_isolated_y() {
        let g = cross_graph(1, 2, &[(0, 0)]);
        let bv = BipartiteView::new(&g, [0], [1, 2]).unwrap();
        assert!(matches!(expansion(&bv, 1), Err(ExpansionError::IsolatedY(2))));
    }

    #[test]
    fn expansion_rejects_covered_y() {
        let edges: Vec<_> = (0..2).cartesian_product(0..3).collect();
        let g = cross_graph(2, 3, &edges);
        let bv = BipartiteView::new(&g, [0, 1], [2, 3, 4]).unwrap();
        assert!(matches!(expansion(&bv, 2), Err(ExpansionError::MatchingCoversY { .. })));
    }

    #[test]
    fn modified_expansion_trivial_when_matching_covers() {
        // x1 adjacent to all of Y, x2 adjacent to y1; r = 2: m = 2, |Y| = 3 <= 4.
        let g = cross_graph(2, 3, &[(0, 0), (0, 1), (0, 2), (1, 0)]);
        let bv = BipartiteView::new(&g, [0, 1], [2, 3, 4]).unwrap();
        let part = modified_expansion(&bv, 2).unwrap();
        assert_eq!(part.a1, BTreeSet::from([0, 1]));
        assert_eq!(part.a2, BTreeSet::from([2, 3, 4]));
        assert!(part.b1.is_empty() && part.b2.is_empty());
    }

    #[test]
    fn modified_expansion_consumes_everything() {
        let edges: Vec<_> = (0..4).map(|y| (0, y)).collect();
        let g = cross_graph(1, 4, &edges);
        let bv = BipartiteView::new(&g, [0], [1, 2, 3, 4]).unwrap();
        let part = modified_expansion(&bv, 3).unwrap();
        assert_eq!(part.b1, BTreeSet::from([0]));
        assert_eq!(part.b2, BTreeSet::from([1, 2, 3, 4]));
        assert!(part.a1.is_empty() && part.a2.is_empty());
    }

    /// Brute-force minimum vertex cover of the bipartite view, for the König
    /// cross-check.
    fn min_vertex_cover_size(g: &Graph, x: &[usize], y: &[usize]) -> usize {
        let verts: Vec<usize> = x.iter().chain(y).copied().collect();
        let cross: Vec<(usize, usize)> = x
            .iter()
            .flat_map(|&u| y.iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| g.has_edge(u, v))
            .collect();
        (0..=verts.len())
            .find(|&k| {
                verts.iter().copied().combinations(k).any(|cover| {
                    cross
                        .iter()
                        .all(|&(u, v)| cover.contains(&u) || cover.contains(&v))
                })
            })
            .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matching_equals_koenig_bound(
            xn in 1usize..=4,
            yn in 1usize..=4,
            bits in any::<u16>()
        ) {
            let edges: Vec<(usize, usize)> = (0..xn)
                .cartesian_product(0..yn)
                .enumerate()
                .filter_map(|(i, e)| (bits & (1 << i) != 0).then_some(e))
                .collect();
            let g = cross_graph(xn, yn, &edges);
            let x: Vec<usize> = (0..xn).collect();
            let y: Vec<usize> = (xn..xn + yn).collect();
            let bv = BipartiteView::new(&g, x.clone(), y.clone()).unwrap();
            prop_assert_eq!(max_matching(&bv).len(), min_vertex_cover_size(&g, &x, &y));
        }

        #[test]
        fn modified_expansion_partitions_hold(
            xn in 1usize..=5,
            yn in 1usize..=12,
            r in 1usize..=3,
            seed in any::<u64>()
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for y in 0..yn {
                // guarantee no isolated Y vertex
                let forced = rng.random_range(0..xn);
                edges.push((forced, y));
                for x in 0..xn {
                    if x != forced && rng.random_bool(0.3) {
                        edges.push((x, y));
                    }
                }
            }
            let g = cross_graph(xn, yn, &edges);
            let bv = BipartiteView::new(&g, 0..xn, xn..xn + yn).unwrap();
            let part = modified_expansion(&bv, r).unwrap();
            // all postconditions are asserted inside; spot-check the partition
            prop_assert_eq!(part.a1.len() + part.b1.len(), xn);
            prop_assert_eq!(part.a2.len() + part.b2.len(), yn);
            prop_assert!(part.rounds < xn + yn);
        }
    }
}
