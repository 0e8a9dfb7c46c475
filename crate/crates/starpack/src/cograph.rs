//! Exact maximum r-star packing on cographs (graphs with no induced path on
//! four vertices) in polynomial time, for r >= 3.
//!
//! Every nontrivial cograph is disconnected or has a disconnected
//! complement. Disconnected graphs are solved per component; a connected
//! cograph splits along its co-components into sides X, Y with every cross
//! edge present, and the answer follows from either a recursion on the
//! larger side (when one side is more than r times the other) or closed-form
//! arithmetic on the side sizes plus two bounded local searches.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{complement, components, has_induced_path, induced_subgraph, Graph};
use crate::packing::{validate_packing, Star, StarPacking};

#[derive(Debug, Error)]
pub enum CographError {
    #[error("star arity must be at least 3, got {0}")]
    ArityTooSmall(usize),
    #[error("not a cograph: a connected subgraph on {n} vertices has a connected complement")]
    NotACograph { n: usize },
}

/// True iff `g` has no induced path on 4 vertices.
pub fn is_cograph(g: &Graph) -> bool {
    has_induced_path(g, 4).expect("4 >= 1").is_none()
}

/// Connected components of the complement graph, ordered by smallest
/// contained vertex.
pub fn co_components(g: &Graph) -> Vec<Vec<usize>> {
    components(&complement(g))
}

/// A set of at most `s` vertices maximizing the closed neighborhood size,
/// together with that size.
#[derive(Clone, Debug)]
pub struct NeighborhoodCover {
    pub set: BTreeSet<usize>,
    pub value: usize,
}

/// Maximizes `|N[S]|` over all vertex sets `S` of size `min(s, n)`.
///
/// Requires a cograph. Per connected component with maximum degree `m_i`, the
/// first selected vertex contributes `m_i + 1` covered vertices and a second
/// one completes the component (contributing `|C_i| - m_i - 1`), because the
/// component splits into two sides joined by all cross edges. The optimum is
/// the sum of the `s` largest of these contributions.
pub fn max_closed_neighborhood(
    g: &Graph,
    s: usize,
) -> Result<NeighborhoodCover, CographError> {
    let comps = components(g);
    let take = s.min(g.n());

    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Kind {
        First,
        Second,
    }
    let mut entries: Vec<(usize, usize, Kind)> = Vec::with_capacity(2 * comps.len());
    for (i, comp) in comps.iter().enumerate() {
        let max_deg = comp.iter().map(|&v| g.degree(v)).max().unwrap();
        entries.push((max_deg + 1, i, Kind::First));
        entries.push((comp.len() - max_deg - 1, i, Kind::Second));
    }
    // Descending by contribution; a component's first entry always precedes
    // its second because in a cograph every vertex dominates one side of its
    // component's co-split, so m_i + 1 > |C_i| - m_i - 1.
    entries.sort_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)).then(a.1.cmp(&b.1)));

    let mut value = 0;
    let mut set = BTreeSet::new();
    let mut first_selected = vec![false; comps.len()];
    for (contribution, i, kind) in entries.into_iter().take(take) {
        value += contribution;
        match kind {
            Kind::First => {
                first_selected[i] = true;
                let comp = &comps[i];
                let max_deg = comp.iter().map(|&v| g.degree(v)).max().unwrap();
                let v = *comp.iter().find(|&&v| g.degree(v) == max_deg).unwrap();
                set.insert(v);
            }
            Kind::Second => {
                assert!(
                    first_selected[i],
                    "selection order invariant violated: second value of a component \
                     chosen before its first"
                );
                if comps[i].len() >= 2 {
                    set.insert(second_cover_vertex(g, &comps[i])?);
                }
            }
        }
    }
    // Zero-contribution picks from trivial components carry no vertex of
    // their own; pad with arbitrary unused vertices. At that point every
    // component is already fully covered, so padding adds nothing.
    let mut pad = g.vertices();
    while set.len() < take {
        let v = pad.next().expect("take <= n");
        set.insert(v);
    }

    Ok(NeighborhoodCover { set, value })
}

/// Given a connected component of a cograph, a vertex completing the closed
/// neighborhood of its max-degree vertex: one from the opposite side of the
/// component's all-cross-edges split.
fn second_cover_vertex(g: &Graph, comp: &[usize]) -> Result<usize, CographError> {
    let comp_set: BTreeSet<usize> = comp.iter().copied().collect();
    let sub = induced_subgraph(g, &comp_set).expect("component vertices are in range");
    let cocs = co_components(&sub.graph);
    if cocs.len() < 2 {
        return Err(CographError::NotACograph { n: comp.len() });
    }
    let max_deg = comp.iter().map(|&v| g.degree(v)).max().unwrap();
    let v_local = sub.old_to_new[comp.iter().find(|&&v| g.degree(v) == max_deg).unwrap()];
    // Side A = the co-component holding v; pick the smallest vertex outside it.
    let side_a = cocs.iter().find(|c| c.binary_search(&v_local).is_ok()).unwrap();
    let w_local = (0..sub.graph.n())
        .find(|w| side_a.binary_search(w).is_err())
        .expect("a connected graph with >= 2 co-components has another side");
    Ok(sub.new_to_old[w_local])
}

/// The side-size arithmetic of the balanced case: with `|X| <= r|Y|` and
/// `|Y| <= r|X|`, the fractional star counts `a = (ry - x)/(r^2 - 1)` and
/// `b = (rx - y)/(r^2 - 1)` round down to a feasible packing of
/// `a_floor + b_floor` cross stars, leaving `slack_x` vertices of X and
/// `slack_y` of Y uncovered. Both slacks are provably integers.
#[derive(Clone, Debug)]
pub struct Case2Arithmetic {
    pub x: usize,
    pub y: usize,
    pub r: usize,
    pub a_floor: usize,
    pub b_floor: usize,
    /// Numerator of the fractional part of `a` over `r^2 - 1`.
    pub a_rem: usize,
    /// Numerator of the fractional part of `b` over `r^2 - 1`.
    pub b_rem: usize,
    pub slack_x: usize,
    pub slack_y: usize,
}

impl Case2Arithmetic {
    pub fn new(x: usize, y: usize, r: usize) -> Self {
        assert!(r >= 2);
        assert!(x <= r * y && y <= r * x, "balanced-case precondition violated");
        let den = r * r - 1;
        let a_num = r * y - x;
        let b_num = r * x - y;
        let (a_floor, a_rem) = (a_num / den, a_num % den);
        let (b_floor, b_rem) = (b_num / den, b_num % den);
        // r*a_num + b_num = (r^2 - 1) y, so the slack numerators are
        // divisible by the denominator.
        let slack_y_num = r * a_rem + b_rem;
        let slack_x_num = r * b_rem + a_rem;
        assert_eq!(slack_y_num % den, 0, "slack_y = r*eps_a + eps_b must be an integer");
        assert_eq!(slack_x_num % den, 0, "slack_x = r*eps_b + eps_a must be an integer");
        let slack_y = slack_y_num / den;
        let slack_x = slack_x_num / den;
        assert_eq!(a_floor * r + b_floor + slack_y, y);
        assert_eq!(b_floor * r + a_floor + slack_x, x);
        Case2Arithmetic { x, y, r, a_floor, b_floor, a_rem, b_rem, slack_x, slack_y }
    }

    pub fn denominator(&self) -> usize {
        self.r * self.r - 1
    }
}

#[derive(Clone, Debug)]
pub struct CographSolution {
    pub count: usize,
    pub packing: StarPacking,
}

/// Maximum number of vertex-disjoint r-stars in a cograph, with a witness
/// packing of exactly that size.
pub fn solve_cograph(g: &Graph, r: usize) -> Result<CographSolution, CographError> {
    if r < 3 {
        return Err(CographError::ArityTooSmall(r));
    }
    let (count, stars) = solve_rec(g, r)?;
    let packing = StarPacking::new(stars);
    assert_eq!(packing.len(), count, "witness size disagrees with the decided count");
    assert!(validate_packing(g, &packing, r), "cograph solver produced an invalid witness");
    Ok(CographSolution { count, packing })
}

fn remap(stars: Vec<Star>, new_to_old: &[usize]) -> Vec<Star> {
    stars
        .into_iter()
        .map(|s| Star::new(new_to_old[s.center], s.leaves.iter().map(|&l| new_to_old[l])))
        .collect()
}

fn solve_rec(g: &Graph, r: usize) -> Result<(usize, Vec<Star>), CographError> {
    let n = g.n();
    if n < r + 1 {
        return Ok((0, Vec::new()));
    }
    let comps = components(g);
    if comps.len() > 1 {
        let mut count = 0;
        let mut stars = Vec::new();
        for comp in comps {
            let set: BTreeSet<usize> = comp.into_iter().collect();
            let sub = induced_subgraph(g, &set).expect("component vertices are in range");
            let (c, local) = solve_rec(&sub.graph, r)?;
            count += c;
            stars.extend(remap(local, &sub.new_to_old));
        }
        return Ok((count, stars));
    }

    let cocs = co_components(g);
    if cocs.len() < 2 {
        return Err(CographError::NotACograph { n });
    }
    let largest = cocs
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
        .map(|(i, _)| i)
        .unwrap();
    let x_side: Vec<usize> = cocs[largest].clone();
    let mut y_side: Vec<usize> = cocs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != largest)
        .flat_map(|(_, c)| c.iter().copied())
        .collect();
    y_side.sort_unstable();
    debug_assert!(g.has_edge(x_side[0], y_side[0]), "co-component sides must be fully joined");

    let (x, y) = (x_side.len(), y_side.len());
    if x > r * y || y > r * x {
        let (big, small) = if x > r * y { (x_side, y_side) } else { (y_side, x_side) };
        solve_lopsided(g, r, &big, &small)
    } else {
        solve_balanced(g, r, &x_side, &y_side)
    }
}

/// One side outweighs the other by more than a factor of r: recurse on the
/// big side, then either extend by one cross star per small-side vertex or,
/// when that overshoots the vertex budget, rebuild to hit n/(r+1) exactly.
fn solve_lopsided(
    g: &Graph,
    r: usize,
    big: &[usize],
    small: &[usize],
) -> Result<(usize, Vec<Star>), CographError> {
    let n = big.len() + small.len();
    let big_set: BTreeSet<usize> = big.iter().copied().collect();
    let sub = induced_subgraph(g, &big_set).expect("side vertices are in range");
    let (m_big, local) = solve_rec(&sub.graph, r)?;
    let mut big_stars = remap(local, &sub.new_to_old);

    let keep = if (r + 1) * (m_big + small.len()) <= n {
        m_big
    } else {
        // Keep only as many big-side stars as fit alongside the forced
        // small-side centers.
        n / (r + 1) - small.len()
    };
    assert!(keep <= m_big);
    big_stars.truncate(keep);
    let used: BTreeSet<usize> = big_stars.iter().flat_map(Star::vertices).collect();
    let mut pool = big.iter().copied().filter(|v| !used.contains(v));
    let mut stars = big_stars;
    for &center in small {
        let leaves: Vec<usize> = pool.by_ref().take(r).collect();
        assert_eq!(leaves.len(), r, "big side must supply r leaves per small-side center");
        stars.push(Star::new(center, leaves));
    }
    Ok((keep + small.len(), stars))
}

/// Neither side dominates: the counting argument plus the two +1 tests.
fn solve_balanced(
    g: &Graph,
    r: usize,
    x_side: &[usize],
    y_side: &[usize],
) -> Result<(usize, Vec<Star>), CographError> {
    let ar = Case2Arithmetic::new(x_side.len(), y_side.len(), r);
    let base = ar.a_floor + ar.b_floor;

    if ar.slack_x + ar.slack_y <= r {
        // Fewer than r+1 vertices stay uncovered, so no further star fits.
        let stars = cross_stars(g, x_side, y_side, ar.a_floor, ar.b_floor, r);
        assert_base_usage(&ar, &stars, x_side, y_side);
        return Ok((base, stars));
    }

    // One extra star may fit; try the four constructions in order.
    if let Some(stars) = plus_one_by_inner_degree(
        g, r, x_side, y_side, ar.a_floor, ar.b_floor, ar.slack_x, ar.slack_y,
    ) {
        return Ok((base + 1, stars));
    }
    if let Some(stars) = plus_one_by_inner_degree(
        g, r, y_side, x_side, ar.b_floor, ar.a_floor, ar.slack_y, ar.slack_x,
    ) {
        return Ok((base + 1, stars));
    }
    if let Some(stars) = plus_one_by_cover(
        g, r, x_side, y_side, ar.a_floor, ar.b_floor, ar.slack_x, ar.slack_y,
    )? {
        return Ok((base + 1, stars));
    }
    if let Some(stars) = plus_one_by_cover(
        g, r, y_side, x_side, ar.b_floor, ar.a_floor, ar.slack_y, ar.slack_x,
    )? {
        return Ok((base + 1, stars));
    }

    let stars = cross_stars(g, x_side, y_side, ar.a_floor, ar.b_floor, r);
    assert_base_usage(&ar, &stars, x_side, y_side);
    Ok((base, stars))
}

/// `ca` stars centered in `a_side` with all leaves in `b_side`, plus `cb`
/// the other way around. Centers are the smallest-index available vertices;
/// leaves are assigned greedily, which is always possible because every
/// cross pair is an edge.
fn cross_stars(
    g: &Graph,
    a_side: &[usize],
    b_side: &[usize],
    ca: usize,
    cb: usize,
    r: usize,
) -> Vec<Star> {
    let a_centers = &a_side[..ca];
    let b_centers = &b_side[..cb];
    let mut a_pool = a_side[ca..].iter().copied();
    let mut b_pool = b_side[cb..].iter().copied();
    let mut stars = Vec::with_capacity(ca + cb);
    for &c in a_centers {
        let leaves: Vec<usize> = b_pool.by_ref().take(r).collect();
        assert_eq!(leaves.len(), r, "b side exhausted while building cross stars");
        debug_assert!(leaves.iter().all(|&l| g.has_edge(c, l)));
        stars.push(Star::new(c, leaves));
    }
    for &c in b_centers {
        let leaves: Vec<usize> = a_pool.by_ref().take(r).collect();
        assert_eq!(leaves.len(), r, "a side exhausted while building cross stars");
        debug_assert!(leaves.iter().all(|&l| g.has_edge(c, l)));
        stars.push(Star::new(c, leaves));
    }
    stars
}

fn assert_base_usage(ar: &Case2Arithmetic, stars: &[Star], x_side: &[usize], y_side: &[usize]) {
    let x_set: BTreeSet<usize> = x_side.iter().copied().collect();
    let y_set: BTreeSet<usize> = y_side.iter().copied().collect();
    let used_x = stars.iter().flat_map(Star::vertices).filter(|v| x_set.contains(v)).count();
    let used_y = stars.iter().flat_map(Star::vertices).filter(|v| y_set.contains(v)).count();
    assert_eq!(used_y, ar.y - ar.slack_y, "base packing must use exactly y - slack_y of Y");
    assert_eq!(used_x, ar.x - ar.slack_x, "base packing must use exactly x - slack_x of X");
}

/// +1 test via a high-degree vertex inside the center side: a vertex `w`
/// with at least r neighbors within its own side anchors an extra star using
/// only slack vertices, after which the usual cross stars still fit.
fn plus_one_by_inner_degree(
    g: &Graph,
    r: usize,
    center_side: &[usize],
    other_side: &[usize],
    ca: usize,
    cb: usize,
    center_slack: usize,
    other_slack: usize,
) -> Option<Vec<Star>> {
    let member: BTreeSet<usize> = center_side.iter().copied().collect();
    let w = *center_side
        .iter()
        .find(|&&v| g.neighbors(v).iter().filter(|u| member.contains(u)).count() >= r)?;
    assert!(center_slack >= 1 && center_slack + other_slack >= r + 1);
    let p = (center_slack - 1).min(r);
    let q = r - p;
    assert!(q <= other_slack);
    let own_leaves: Vec<usize> =
        g.neighbors(w).iter().copied().filter(|u| member.contains(u)).take(p).collect();
    let cross_leaves: Vec<usize> = other_side[..q].to_vec();
    let extra = Star::new(w, own_leaves.iter().copied().chain(cross_leaves.iter().copied()));

    let taken: BTreeSet<usize> = extra.vertices().collect();
    let center_rest: Vec<usize> =
        center_side.iter().copied().filter(|v| !taken.contains(v)).collect();
    let other_rest: Vec<usize> =
        other_side.iter().copied().filter(|v| !taken.contains(v)).collect();
    let mut stars = cross_stars(g, &center_rest, &other_rest, ca, cb, r);
    stars.insert(0, extra);
    Some(stars)
}

/// +1 test via a small set covering most of its own side: `ca + 1` centers
/// whose closed neighborhood inside the center side reaches
/// `ca + 1 + r - other_slack` vertices support one extra star overall.
fn plus_one_by_cover(
    g: &Graph,
    r: usize,
    center_side: &[usize],
    other_side: &[usize],
    ca: usize,
    cb: usize,
    center_slack: usize,
    other_slack: usize,
) -> Result<Option<Vec<Star>>, CographError> {
    assert!(other_slack <= r);
    let need = r - other_slack;
    let set: BTreeSet<usize> = center_side.iter().copied().collect();
    let sub = induced_subgraph(g, &set).expect("side vertices are in range");
    let cover = max_closed_neighborhood(&sub.graph, ca + 1)?;
    if cover.value < ca + 1 + need {
        return Ok(None);
    }
    assert!(center_slack + other_slack >= r + 1);
    let centers: Vec<usize> = cover.set.iter().map(|&v| sub.new_to_old[v]).collect();
    assert_eq!(centers.len(), ca + 1);
    let centers_set: BTreeSet<usize> = centers.iter().copied().collect();

    // Distribute `need` extra center-side leaves over the ca + 1 stars, each
    // attached to a center adjacent to it.
    let mut extras: Vec<usize> = cover
        .set
        .iter()
        .flat_map(|&v| sub.graph.neighbors(v).iter().copied())
        .map(|v| sub.new_to_old[v])
        .filter(|v| !centers_set.contains(v))
        .collect::<BTreeSet<usize>>()
        .into_iter()
        .collect();
    assert!(extras.len() >= need, "closed neighborhood bound does not supply enough leaves");
    extras.truncate(need);

    let mut own_leaves: Vec<Vec<usize>> = vec![Vec::new(); centers.len()];
    for &e in &extras {
        let i = centers.iter().position(|&c| g.has_edge(c, e)).expect("extra touches a center");
        own_leaves[i].push(e);
    }

    let used: BTreeSet<usize> = centers.iter().chain(extras.iter()).copied().collect();
    let mut other_pool = other_side.iter().copied();
    let mut stars = Vec::with_capacity(ca + 1 + cb);
    for (i, &c) in centers.iter().enumerate() {
        let fill = r - own_leaves[i].len();
        let cross: Vec<usize> = other_pool.by_ref().take(fill).collect();
        assert_eq!(cross.len(), fill, "other side exhausted while padding cover stars");
        stars.push(Star::new(c, own_leaves[i].iter().copied().chain(cross)));
    }
    // Remaining other-side vertices become the cb centers, with leaves from
    // the untouched part of the center side.
    let center_pool: Vec<usize> =
        center_side.iter().copied().filter(|v| !used.contains(v)).collect();
    let mut center_iter = center_pool.iter().copied();
    for _ in 0..cb {
        let c = other_pool.next().expect("other side must retain cb centers");
        let leaves: Vec<usize> = center_iter.by_ref().take(r).collect();
        assert_eq!(leaves.len(), r, "center side exhausted while building cb stars");
        stars.push(Star::new(c, leaves));
    }
    assert!(other_pool.next().is_none(), "cover construction must consume the other side exactly");
    Ok(Some(stars))
}
