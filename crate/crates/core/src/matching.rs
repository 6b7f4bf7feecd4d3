//! Perfect matchings and their alternating structure.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::formulas;
use crate::lattice::{GraphKind, PolyominoGraph, VertexLabel};

/// A set of edges of a particular graph, stored as indices into its edge
/// list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: EdgeSet,
}

impl Matching {
    pub fn from_edges(g: &PolyominoGraph, edges: impl IntoIterator<Item = usize>) -> Self {
        Matching {
            edges: EdgeSet::from_indices(g.edge_count(), edges),
        }
    }

    /// Build from vertex-id pairs; fails on a pair that is not an edge.
    pub fn from_endpoints(g: &PolyominoGraph, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| g.edge_between(a, b).ok_or(Error::UnknownEdge((a, b))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matching::from_edges(g, edges))
    }

    /// Build from family labels, e.g. `(u_0, v_0)`.
    pub fn from_labels(g: &PolyominoGraph, pairs: &[(VertexLabel, VertexLabel)]) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|&(a, b)| match (g.vertex_by_label(a), g.vertex_by_label(b)) {
                (Some(x), Some(y)) => Ok((x, y)),
                _ => Err(Error::UnknownEdge((usize::MAX, usize::MAX))),
            })
            .collect::<Result<Vec<_>>>()?;
        Matching::from_endpoints(g, &ids)
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Matched edge at each vertex, or `None` if the edges are not a
    /// matching (two of them share a vertex).
    pub fn mates(&self, g: &PolyominoGraph) -> Option<Vec<Option<usize>>> {
        let mut mates = vec![None; g.vertex_count()];
        for e in self.edges.iter() {
            let (a, b) = g.endpoints(e);
            if mates[a].is_some() || mates[b].is_some() {
                return None;
            }
            mates[a] = Some(e);
            mates[b] = Some(e);
        }
        Some(mates)
    }

    pub fn is_perfect(&self, g: &PolyominoGraph) -> bool {
        self.edges.capacity() == g.edge_count()
            && self
                .mates(g)
                .is_some_and(|m| m.iter().all(Option::is_some))
    }

    /// Partner vertex of every vertex; fails unless the matching is perfect.
    pub fn partners(&self, g: &PolyominoGraph) -> Result<Vec<usize>> {
        if self.edges.capacity() != g.edge_count() {
            return Err(Error::NotPerfectMatching);
        }
        let mates = self.mates(g).ok_or(Error::NotPerfectMatching)?;
        mates
            .iter()
            .enumerate()
            .map(|(v, e)| {
                let (a, b) = g.endpoints(e.ok_or(Error::NotPerfectMatching)?);
                Ok(if a == v { b } else { a })
            })
            .collect()
    }

    /// Sorted `(lower id, higher id)` pairs.
    pub fn endpoint_pairs(&self, g: &PolyominoGraph) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| g.endpoints(e)).collect()
    }

    pub fn symmetric_difference(&self, cycle: &AlternatingCycle) -> Matching {
        Matching {
            edges: self.edges.symmetric_difference(&cycle.edges),
        }
    }
}

struct Frame {
    vertex: usize,
    next: usize,
    applied: Option<(usize, usize)>,
}

/// Depth-first stream of all perfect matchings, branching on the
/// lowest-id uncovered vertex and trying its edges in edge-index order.
pub struct PerfectMatchings<'g> {
    g: &'g PolyominoGraph,
    covered: Vec<bool>,
    chosen: EdgeSet,
    frames: Vec<Frame>,
    started: bool,
}

impl<'g> PerfectMatchings<'g> {
    fn lowest_uncovered(&self, from: usize) -> Option<usize> {
        (from..self.covered.len()).find(|&v| !self.covered[v])
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if !self.started {
            self.started = true;
            match self.lowest_uncovered(0) {
                None => return Some(Matching { edges: self.chosen.clone() }),
                Some(v) => self.frames.push(Frame {
                    vertex: v,
                    next: 0,
                    applied: None,
                }),
            }
        }
        loop {
            let top = self.frames.last_mut()?;
            let v = top.vertex;
            if let Some((e, w)) = top.applied.take() {
                self.covered[v] = false;
                self.covered[w] = false;
                self.chosen.remove(e);
            }
            let adjacency = self.g.neighbors(v);
            let mut option = None;
            while top.next < adjacency.len() {
                let (w, e) = adjacency[top.next];
                top.next += 1;
                if !self.covered[w] {
                    option = Some((e, w));
                    break;
                }
            }
            let Some((e, w)) = option else {
                self.frames.pop();
                continue;
            };
            top.applied = Some((e, w));
            self.covered[v] = true;
            self.covered[w] = true;
            self.chosen.insert(e);
            match self.lowest_uncovered(v + 1) {
                None => return Some(Matching { edges: self.chosen.clone() }),
                Some(u) => self.frames.push(Frame {
                    vertex: u,
                    next: 0,
                    applied: None,
                }),
            }
        }
    }
}

/// Every perfect matching of `g` exactly once, in a fixed order. The null
/// graph has a single (empty) perfect matching.
pub fn enumerate_perfect_matchings(g: &PolyominoGraph) -> PerfectMatchings<'_> {
    PerfectMatchings {
        g,
        covered: vec![false; g.vertex_count()],
        chosen: EdgeSet::new(g.edge_count()),
        frames: Vec::new(),
        started: false,
    }
}

/// Number of perfect matchings. Family graphs use the two-term recurrence;
/// anything else is enumerated.
pub fn count_perfect_matchings(g: &PolyominoGraph) -> BigUint {
    match g.kind() {
        GraphKind::G(n) => formulas::phi_g(n),
        GraphKind::H(n) => formulas::phi_h(n),
        GraphKind::Generic => BigUint::from(enumerate_perfect_matchings(g).count()),
    }
}

/// Faces whose boundary is `M`-alternating (two opposite sides in `M`).
pub fn alternating_squares(g: &PolyominoGraph, m: &Matching) -> Vec<usize> {
    (0..g.faces().len())
        .filter(|&f| {
            g.face_edges(f).is_some_and(|[a, b, c, d]| {
                (m.contains(a) && m.contains(c)) || (m.contains(b) && m.contains(d))
            })
        })
        .collect()
}

/// A simple cycle of a lattice graph with its edge set and the unit cells
/// it encloses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingCycle {
    vertices: Vec<usize>,
    edges: EdgeSet,
    vertex_set: EdgeSet,
    face: Option<usize>,
    interior: Vec<(i32, i32)>,
}

impl AlternatingCycle {
    /// Cycle through `vertices` in order (closing back to the first).
    /// Panics if consecutive vertices are not adjacent.
    pub fn new(g: &PolyominoGraph, vertices: Vec<usize>) -> Self {
        let len = vertices.len();
        let edges = EdgeSet::from_indices(
            g.edge_count(),
            (0..len).map(|i| {
                g.edge_between(vertices[i], vertices[(i + 1) % len])
                    .expect("consecutive cycle vertices must be adjacent")
            }),
        );
        let vertex_set = EdgeSet::from_indices(g.vertex_count(), vertices.iter().copied());
        let interior = enclosed_cells(g, &vertices);
        let face = if len == 4 {
            interior.first().and_then(|&cell| g.face_at(cell))
        } else {
            None
        };
        AlternatingCycle {
            vertices,
            edges,
            vertex_set,
            face,
            interior,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.face.is_some()
    }

    /// Face bounded by this cycle, if it is a square.
    pub fn face(&self) -> Option<usize> {
        self.face
    }

    /// Unit cells strictly inside the cycle, sorted.
    pub fn interior(&self) -> &[(i32, i32)] {
        &self.interior
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertex_set.contains(v)
    }

    /// Edges alternate strictly in and out of `m`.
    pub fn is_alternating(&self, g: &PolyominoGraph, m: &Matching) -> bool {
        let len = self.vertices.len();
        if len < 4 || !len.is_multiple_of(2) {
            return false;
        }
        let in_m = |i: usize| {
            g.edge_between(self.vertices[i], self.vertices[(i + 1) % len])
                .is_some_and(|e| m.contains(e))
        };
        let first = in_m(0);
        (0..len).all(|i| in_m(i) == (first == (i % 2 == 0)))
    }
}

/// Cells whose centres lie inside the lattice polygon through `vertices`.
fn enclosed_cells(g: &PolyominoGraph, vertices: &[usize]) -> Vec<(i32, i32)> {
    let pts: Vec<(i32, i32)> = vertices
        .iter()
        .map(|&v| (g.vertices()[v].row, g.vertices()[v].col))
        .collect();
    let Some(min_r) = pts.iter().map(|p| p.0).min() else {
        return Vec::new();
    };
    let max_r = pts.iter().map(|p| p.0).max().unwrap_or(min_r);
    let min_c = pts.iter().map(|p| p.1).min().unwrap_or(0);
    let max_c = pts.iter().map(|p| p.1).max().unwrap_or(min_c);
    // vertical sides as (row below, column)
    let verticals: Vec<(i32, i32)> = (0..pts.len())
        .filter_map(|i| {
            let (p, q) = (pts[i], pts[(i + 1) % pts.len()]);
            (p.1 == q.1).then_some((p.0.min(q.0), p.1))
        })
        .collect();
    let mut cells = Vec::new();
    for r in min_r..max_r {
        for c in min_c..max_c {
            // ray from the cell centre towards +col
            let crossings = verticals
                .iter()
                .filter(|&&(row, col)| row == r && col > c)
                .count();
            if crossings % 2 == 1 {
                cells.push((r, c));
            }
        }
    }
    cells
}

/// All simple `M`-alternating cycles of `g`.
///
/// Each cycle is reported once, starting at its lowest vertex and leaving
/// through that vertex's matched edge. Graphs above `edge_limit` edges are
/// refused.
pub fn alternating_cycles(
    g: &PolyominoGraph,
    m: &Matching,
    edge_limit: usize,
) -> Result<Vec<AlternatingCycle>> {
    if g.edge_count() > edge_limit {
        return Err(Error::SizeLimitExceeded {
            what: "alternating-cycle search edge count",
            size: g.edge_count(),
            limit: edge_limit,
        });
    }
    let partner = m.partners(g)?;
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = Vec::new();
    for start in 0..g.vertex_count() {
        let t = partner[start];
        if t < start {
            continue;
        }
        path.push(start);
        path.push(t);
        on_path[start] = true;
        on_path[t] = true;
        extend_alternating(g, m, &partner, start, &mut path, &mut on_path, &mut out);
        on_path[start] = false;
        on_path[t] = false;
        path.clear();
    }
    Ok(out)
}

fn extend_alternating(
    g: &PolyominoGraph,
    m: &Matching,
    partner: &[usize],
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<AlternatingCycle>,
) {
    let current = *path.last().expect("path is never empty");
    for &(y, e) in g.neighbors(current) {
        if m.contains(e) {
            continue;
        }
        if y == start {
            out.push(AlternatingCycle::new(g, path.clone()));
            continue;
        }
        if y < start || on_path[y] {
            continue;
        }
        let z = partner[y];
        if z < start || on_path[z] {
            continue;
        }
        path.push(y);
        path.push(z);
        on_path[y] = true;
        on_path[z] = true;
        extend_alternating(g, m, partner, start, path, on_path, out);
        on_path[y] = false;
        on_path[z] = false;
        path.truncate(path.len() - 2);
    }
}

/// Whether `m` is the only perfect matching of `g` minus `removed`.
///
/// Orient matched edges black-to-white and the remaining edges
/// white-to-black; `M`-alternating cycles are exactly the directed cycles,
/// so uniqueness is acyclicity.
pub fn is_unique_perfect_matching(g: &PolyominoGraph, m: &Matching, removed: &EdgeSet) -> bool {
    let n = g.vertex_count();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let in_m = m.contains(e);
        if !in_m && removed.contains(e) {
            continue;
        }
        let (black, white) = if g.is_black(a) { (a, b) } else { (b, a) };
        let (from, to) = if in_m { (black, white) } else { (white, black) };
        out_edges[from].push(to);
        indegree[to] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for &w in &out_edges[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    seen == n
}

fn sorted_subset(small: &[(i32, i32)], big: &[(i32, i32)]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn sorted_disjoint(a: &[(i32, i32)], b: &[(i32, i32)]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Neither cycle enters the interior of the other from outside: their
/// enclosed regions are nested or interior-disjoint.
pub fn are_non_crossing(c1: &AlternatingCycle, c2: &AlternatingCycle) -> bool {
    sorted_disjoint(&c1.interior, &c2.interior)
        || sorted_subset(&c1.interior, &c2.interior)
        || sorted_subset(&c2.interior, &c1.interior)
}

/// The cycles share only edges of `m` and do not cross.
pub fn are_compatible(c1: &AlternatingCycle, c2: &AlternatingCycle, m: &Matching) -> bool {
    c1.edges.intersection(&c2.edges).is_subset(m.edges()) && are_non_crossing(c1, c2)
}

/// No shared vertex.
pub fn are_disjoint(c1: &AlternatingCycle, c2: &AlternatingCycle) -> bool {
    c1.vertex_set.is_disjoint(&c2.vertex_set)
}

/// Faces of `g` lying inside `cycle`.
pub fn interior_faces(g: &PolyominoGraph, cycle: &AlternatingCycle) -> Vec<usize> {
    cycle
        .interior
        .iter()
        .filter_map(|&cell| g.face_at(cell))
        .collect()
}
