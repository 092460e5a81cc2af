//! Weak and strong Fréchet decisions on the free-space diagram.
//!
//! For curves `s` (m vertices) and `q` (k vertices) the parameter square is
//! split into `(m-1)·(k-1)` cells, one per pair of edges. The free space in a
//! cell is convex, so everything about a cell is known from the free parts
//! of its four sides:
//!
//! * the side at vertex `s_i` of edge `q_j` is free where `q_j` passes
//!   within `r` of `s_i` (a vertex-edge test, vertical orientation);
//! * the side at vertex `q_j` of edge `s_i` likewise (horizontal orientation).
//!
//! The weak decision only needs to know which sides are free at all plus
//! the two endpoint tests. The strong decision additionally needs monotone
//! order along each side: a free side interval is reachable from an earlier
//! side interval on the parallel side only if the entry point does not lie
//! after the exit. That comparison of a ball-interval lower end against a
//! later ball-interval upper end on the same edge is exactly the
//! monotonicity predicate, evaluated lazily as the propagation needs it.

use std::collections::VecDeque;

use crate::curve::Curve;
use crate::error::Result;
use crate::geometry::{check_dim, line_ball_interval, within, Point, Segment, SqrtExpr, SqrtInterval};
use crate::predicates::{p_endpoints, p_vertex_edge};

/// Free part of `[0, 1]` along `edge` within `r` of `p`.
fn free_interval(edge: &Segment, p: &Point, r: f64) -> Result<Option<SqrtInterval>> {
    if edge.is_degenerate() {
        return Ok(within(edge.start().dist2(p), r).then_some(SqrtInterval::UNIT));
    }
    Ok(line_ball_interval(edge, p, r)?.and_then(|i| i.clip_unit()))
}

/// Free intervals on all cell sides for one radius.
#[derive(Debug, Clone)]
pub struct FreeSpaceDiagram {
    m: usize,
    k: usize,
    /// `vertical[i][j]`: vertex `s_i` against edge `q_j`, parametrised along `q_j`.
    vertical: Vec<Vec<Option<SqrtInterval>>>,
    /// `horizontal[i][j]`: vertex `q_j` against edge `s_i`, parametrised along `s_i`.
    horizontal: Vec<Vec<Option<SqrtInterval>>>,
    start_free: bool,
    end_free: bool,
}

impl FreeSpaceDiagram {
    pub fn new(s: &Curve, q: &Curve, r: f64) -> Result<Self> {
        check_dim(s.dim(), q.dim())?;
        let (m, k) = (s.len(), q.len());
        let q_edges: Vec<Segment> = q.edges().collect();
        let s_edges: Vec<Segment> = s.edges().collect();
        let vertical = s
            .vertices()
            .iter()
            .map(|v| q_edges.iter().map(|e| free_interval(e, v, r)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let horizontal = s_edges
            .iter()
            .map(|e| q.vertices().iter().map(|v| free_interval(e, v, r)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let (start_free, end_free) = p_endpoints(s, q, r)?;
        Ok(Self { m, k, vertical, horizontal, start_free, end_free })
    }

    /// Free interval on the side at vertex `s_i` of edge `q_j`.
    pub fn vertical(&self, i: usize, j: usize) -> Option<SqrtInterval> {
        self.vertical[i][j]
    }

    /// Free interval on the side at vertex `q_j` of edge `s_i`.
    pub fn horizontal(&self, i: usize, j: usize) -> Option<SqrtInterval> {
        self.horizontal[i][j]
    }

    pub fn cells(&self) -> (usize, usize) {
        (self.m.saturating_sub(1), self.k.saturating_sub(1))
    }

    /// Monotone reachability from `(0, 0)` to `(m-1, k-1)`. Requires both
    /// curves to have at least one edge.
    pub fn monotone_reachable(&self) -> bool {
        let (cm, ck) = self.cells();
        debug_assert!(cm > 0 && ck > 0);
        if !(self.start_free && self.end_free) {
            return false;
        }
        // reach_v[i][j]: reachable part of the side at vertex s_i of edge q_j
        // (left side of cell (i, j)); reach_h[i][j]: reachable part of the
        // side at vertex q_j of edge s_i (bottom side of cell (i, j)).
        let mut reach_v: Vec<Vec<Option<SqrtInterval>>> = vec![vec![None; ck]; cm + 1];
        let mut reach_h: Vec<Vec<Option<SqrtInterval>>> = vec![vec![None; ck + 1]; cm];

        // The outer sides at s_0 and q_0 are only reachable by sliding along
        // them from the start corner.
        let from_corner = |iv: Option<SqrtInterval>| iv.filter(|iv| iv.lo().le(&SqrtExpr::ZERO));
        let to_end = |iv: &Option<SqrtInterval>| iv.is_some_and(|iv| SqrtExpr::ONE.le(&iv.hi()));
        for j in 0..ck {
            reach_v[0][j] = from_corner(self.vertical[0][j]);
            if !to_end(&reach_v[0][j]) {
                break;
            }
        }
        for i in 0..cm {
            reach_h[i][0] = from_corner(self.horizontal[i][0]);
            if !to_end(&reach_h[i][0]) {
                break;
            }
        }

        for i in 0..cm {
            for j in 0..ck {
                let left = reach_v[i][j];
                let bottom = reach_h[i][j];
                reach_v[i + 1][j] = pass(self.vertical[i + 1][j], bottom.is_some(), left);
                reach_h[i][j + 1] = pass(self.horizontal[i][j + 1], left.is_some(), bottom);
            }
        }
        // The end corner is free and the last cell's free space is convex, so
        // any reachable point on its left or bottom side reaches the corner.
        reach_v[cm - 1][ck - 1].is_some() || reach_h[cm - 1][ck - 1].is_some()
    }
}

/// Reachable part of a side given the free interval on it, whether the
/// perpendicular incoming side is reachable (which frees the whole side)
/// and the reachable part of the parallel incoming side (which allows only
/// points not before its lowest reachable point).
fn pass(free: Option<SqrtInterval>, perpendicular: bool, parallel: Option<SqrtInterval>) -> Option<SqrtInterval> {
    let free = free?;
    if perpendicular {
        return Some(free);
    }
    let from = parallel?;
    SqrtInterval::new(free.lo().max(from.lo()), free.hi())
}

/// Decides `d_F(s, q) <= r`.
pub fn decide_frechet(s: &Curve, q: &Curve, r: f64) -> Result<bool> {
    check_dim(s.dim(), q.dim())?;
    if s.len() == 1 || q.len() == 1 {
        return Ok(all_within(s, q, r));
    }
    Ok(FreeSpaceDiagram::new(s, q, r)?.monotone_reachable())
}

/// Decides `d_wF(s, q) <= r` by search over the grid graph of cells. Two
/// neighbouring cells are connected iff their shared side has a free point,
/// i.e. iff the corresponding vertex-edge predicate holds.
pub fn decide_weak_frechet(s: &Curve, q: &Curve, r: f64) -> Result<bool> {
    check_dim(s.dim(), q.dim())?;
    if s.len() == 1 || q.len() == 1 {
        return Ok(all_within(s, q, r));
    }
    let (start_ok, end_ok) = p_endpoints(s, q, r)?;
    if !(start_ok && end_ok) {
        return Ok(false);
    }
    let (cm, ck) = (s.len() - 1, q.len() - 1);
    let s_edges: Vec<Segment> = s.edges().collect();
    let q_edges: Vec<Segment> = q.edges().collect();
    // side between (i-1, j) and (i, j): vertex s_i against edge q_j
    let mut vertical = vec![vec![false; ck]; cm + 1];
    for (i, row) in vertical.iter_mut().enumerate().take(cm).skip(1) {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = p_vertex_edge(&q_edges[j], &s.vertices()[i], r)?;
        }
    }
    // side between (i, j-1) and (i, j): vertex q_j against edge s_i
    let mut horizontal = vec![vec![false; ck + 1]; cm];
    for (i, row) in horizontal.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate().take(ck).skip(1) {
            *cell = p_vertex_edge(&s_edges[i], &q.vertices()[j], r)?;
        }
    }
    let mut seen = vec![vec![false; ck]; cm];
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    seen[0][0] = true;
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == (cm - 1, ck - 1) {
            return Ok(true);
        }
        let mut next = Vec::with_capacity(4);
        if i + 1 < cm && vertical[i + 1][j] {
            next.push((i + 1, j));
        }
        if i > 0 && vertical[i][j] {
            next.push((i - 1, j));
        }
        if j + 1 < ck && horizontal[i][j + 1] {
            next.push((i, j + 1));
        }
        if j > 0 && horizontal[i][j] {
            next.push((i, j - 1));
        }
        for (a, b) in next {
            if !seen[a][b] {
                seen[a][b] = true;
                queue.push_back((a, b));
            }
        }
    }
    Ok(false)
}

/// Every vertex of each curve lies within `r` of every vertex of the other
/// curve when one of them is a single point; by convexity of the ball this
/// decides all curve measures against a point.
fn all_within(s: &Curve, q: &Curve, r: f64) -> bool {
    s.vertices().iter().all(|a| q.vertices().iter().all(|b| within(a.dist2(b), r)))
}
