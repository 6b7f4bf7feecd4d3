//! Polyomino graphs on the square lattice.
//!
//! A vertex sits at an integer lattice point `(row, col)`; a unit cell is
//! named by its lower-left corner. The `G_n` family lives on rows `0..=3`:
//!
//! ```text
//! row 3   w_1 w_2   w_3 w_4  ...          (top squares s_{k,2})
//! row 2   u_0 u_1 u_2 u_3 u_4 ... u_2n
//! row 1   v_0 v_1 v_2 v_3 v_4 ... v_2n    (middle band)
//! row 0   z_1 z_2   z_3 z_4  ...          (bottom squares s_{k,4})
//! ```
//!
//! `H_n` is `G_n` with `u_0` and `v_0` deleted. Vertex ids are assigned
//! row-major (row 0 first, then increasing column).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelLetter {
    U,
    V,
    W,
    Z,
}

impl LabelLetter {
    /// Lattice row carried by every vertex with this letter.
    pub fn row(self) -> i32 {
        match self {
            LabelLetter::Z => 0,
            LabelLetter::V => 1,
            LabelLetter::U => 2,
            LabelLetter::W => 3,
        }
    }

    fn as_char(self) -> char {
        match self {
            LabelLetter::U => 'u',
            LabelLetter::V => 'v',
            LabelLetter::W => 'w',
            LabelLetter::Z => 'z',
        }
    }
}

/// Family label such as `u_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel {
    pub letter: LabelLetter,
    pub index: usize,
}

impl VertexLabel {
    pub fn new(letter: LabelLetter, index: usize) -> Self {
        VertexLabel { letter, index }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.letter.as_char(), self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeVertex {
    pub id: usize,
    pub row: i32,
    pub col: i32,
    pub label: Option<VertexLabel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    G(usize),
    H(usize),
    Generic,
}

impl GraphKind {
    pub fn n(self) -> Option<usize> {
        match self {
            GraphKind::G(n) | GraphKind::H(n) => Some(n),
            GraphKind::Generic => None,
        }
    }

    pub fn is_family(self) -> bool {
        !matches!(self, GraphKind::Generic)
    }
}

/// Name of a family face. Middle-band connector squares between columns
/// `2k` and `2k+1` are called `t_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceName {
    S { k: usize, position: u8 },
    T { k: usize },
}

impl fmt::Display for FaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceName::S { k, position } => write!(f, "s_{{{},{}}}", k, position),
            FaceName::T { k } => write!(f, "t_{}", k),
        }
    }
}

/// A unit square face. `vertices` run counter-clockwise from the lower-left
/// corner: `(r,c) (r,c+1) (r+1,c+1) (r+1,c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    pub cell: (i32, i32),
    pub vertices: [usize; 4],
    pub name: Option<FaceName>,
}

#[derive(Debug, Clone)]
pub struct PolyominoGraph {
    vertices: Vec<LatticeVertex>,
    edges: Vec<(usize, usize)>,
    faces: Vec<Face>,
    kind: GraphKind,
    adjacency: Vec<Vec<(usize, usize)>>,
    edge_index: BTreeMap<(usize, usize), usize>,
    coord_index: BTreeMap<(i32, i32), usize>,
    face_edges: Vec<Option<[usize; 4]>>,
}

type Point = (i32, i32);

impl PolyominoGraph {
    /// Assemble a graph from lattice points and unit edges. Ids are assigned
    /// row-major and faces are every unit cell whose four sides are edges.
    fn from_lattice(
        points: Vec<(Point, Option<VertexLabel>)>,
        edges: &[(Point, Point)],
        kind: GraphKind,
    ) -> Self {
        let mut points = points;
        points.sort_by_key(|&(p, _)| p);
        points.dedup_by_key(|&mut (p, _)| p);
        let vertices: Vec<LatticeVertex> = points
            .iter()
            .enumerate()
            .map(|(id, &((row, col), label))| LatticeVertex { id, row, col, label })
            .collect();
        let coord: BTreeMap<Point, usize> =
            vertices.iter().map(|v| ((v.row, v.col), v.id)).collect();
        let mut ids: Vec<(usize, usize)> = edges
            .iter()
            .map(|(a, b)| {
                let (a, b) = (coord[a], coord[b]);
                (a.min(b), a.max(b))
            })
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let mut graph = PolyominoGraph::from_raw(vertices, ids, Vec::new(), kind);
        graph.faces = graph.scan_faces();
        graph.face_edges = graph.faces.iter().map(|f| graph.edges_of_cycle4(f)).collect();
        graph
    }

    /// Assemble a graph from already-numbered parts without any checking.
    /// Use [`validate`] to inspect the result.
    pub fn from_raw(
        vertices: Vec<LatticeVertex>,
        edges: Vec<(usize, usize)>,
        faces: Vec<Face>,
        kind: GraphKind,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut edge_index = BTreeMap::new();
        for (e, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
            edge_index.insert((a.min(b), a.max(b)), e);
        }
        let coord_index = vertices.iter().map(|v| ((v.row, v.col), v.id)).collect();
        let mut graph = PolyominoGraph {
            vertices,
            edges,
            faces,
            kind,
            adjacency,
            edge_index,
            coord_index,
            face_edges: Vec::new(),
        };
        graph.face_edges = graph.faces.iter().map(|f| graph.edges_of_cycle4(f)).collect();
        graph
    }

    fn edges_of_cycle4(&self, face: &Face) -> Option<[usize; 4]> {
        let v = face.vertices;
        Some([
            self.edge_between(v[0], v[1])?,
            self.edge_between(v[1], v[2])?,
            self.edge_between(v[2], v[3])?,
            self.edge_between(v[3], v[0])?,
        ])
    }

    fn cell_corners(&self, (r, c): Point) -> Option<[usize; 4]> {
        Some([
            self.vertex_at(r, c)?,
            self.vertex_at(r, c + 1)?,
            self.vertex_at(r + 1, c + 1)?,
            self.vertex_at(r + 1, c)?,
        ])
    }

    fn full_cells(&self) -> Vec<Point> {
        // every full cell has its lower-left corner at a vertex
        self.vertices
            .iter()
            .map(|v| (v.row, v.col))
            .filter(|&cell| {
                self.cell_corners(cell).is_some_and(|vs| {
                    (0..4).all(|i| self.edge_between(vs[i], vs[(i + 1) % 4]).is_some())
                })
            })
            .collect()
    }

    fn scan_faces(&self) -> Vec<Face> {
        self.full_cells()
            .into_iter()
            .map(|cell| Face {
                cell,
                vertices: self.cell_corners(cell).expect("full cell has corners"),
                name: family_face_name(self.kind, cell),
            })
            .collect()
    }

    pub fn vertices(&self) -> &[LatticeVertex] {
        &self.vertices
    }

    /// Edges as `(lower id, higher id)`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_null(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(neighbour, edge index)` pairs in edge-index order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn vertex_at(&self, row: i32, col: i32) -> Option<usize> {
        self.coord_index.get(&(row, col)).copied()
    }

    pub fn vertex_by_label(&self, label: VertexLabel) -> Option<usize> {
        self.vertices.iter().find(|v| v.label == Some(label)).map(|v| v.id)
    }

    /// Edge between two labelled family vertices.
    pub fn labeled_edge(&self, a: VertexLabel, b: VertexLabel) -> Option<usize> {
        self.edge_between(self.vertex_by_label(a)?, self.vertex_by_label(b)?)
    }

    /// Checkerboard colour: `true` for black (`row + col` even).
    pub fn is_black(&self, v: usize) -> bool {
        let p = &self.vertices[v];
        (p.row + p.col).rem_euclid(2) == 0
    }

    /// The four boundary edges of face `f` in cyclic order (bottom, right,
    /// top, left), or `None` if the face lost an edge.
    pub fn face_edges(&self, f: usize) -> Option<[usize; 4]> {
        self.face_edges[f]
    }

    pub fn face_by_name(&self, name: FaceName) -> Option<usize> {
        self.faces.iter().position(|f| f.name == Some(name))
    }

    pub fn face_at(&self, cell: Point) -> Option<usize> {
        self.faces.iter().position(|f| f.cell == cell)
    }

    pub fn display_vertex(&self, v: usize) -> VertexDisplay<'_> {
        VertexDisplay(&self.vertices[v])
    }

    /// Edge set as coordinate pairs translated so the minimum row and column
    /// are zero, sorted. Two lattice graphs are equal up to translation iff
    /// their signatures are equal.
    pub fn coordinate_signature(&self) -> Vec<(Point, Point)> {
        let min_r = self.vertices.iter().map(|v| v.row).min().unwrap_or(0);
        let min_c = self.vertices.iter().map(|v| v.col).min().unwrap_or(0);
        let at = |v: usize| {
            let p = &self.vertices[v];
            (p.row - min_r, p.col - min_c)
        };
        let mut sig: Vec<(Point, Point)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (pa, pb) = (at(a), at(b));
                (pa.min(pb), pa.max(pb))
            })
            .collect();
        sig.sort_unstable();
        sig
    }

    /// Unit cells of the faces, sorted.
    pub fn cells(&self) -> Vec<Point> {
        let mut cells: Vec<Point> = self.faces.iter().map(|f| f.cell).collect();
        cells.sort_unstable();
        cells
    }

    /// Bridges of the graph (edges lying on no cycle).
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut bridges = Vec::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent edge, next neighbour position)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, parent_edge, ref mut pos)) = stack.last_mut() {
                if let Some(&(w, e)) = self.adjacency[v].get(*pos) {
                    *pos += 1;
                    if e == parent_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(u, _, _)) = stack.last() {
                        low[u] = low[u].min(low[v]);
                        if low[v] > disc[u] {
                            bridges.push(parent_edge);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }
}

pub struct VertexDisplay<'a>(&'a LatticeVertex);

impl fmt::Display for VertexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.label {
            Some(label) => write!(f, "{}", label),
            None => write!(f, "({},{})", self.0.row, self.0.col),
        }
    }
}

fn family_face_name(kind: GraphKind, (r, c): Point) -> Option<FaceName> {
    if !kind.is_family() || c < 0 {
        return None;
    }
    let c = c as usize;
    match r {
        1 if c == 0 => Some(FaceName::S { k: 1, position: 1 }),
        1 if c.is_multiple_of(2) => Some(FaceName::T { k: c / 2 }),
        0..=2 if c % 2 == 1 => Some(FaceName::S {
            k: c.div_ceil(2),
            position: match r {
                2 => 2,
                1 => 3,
                _ => 4,
            },
        }),
        _ => None,
    }
}

fn family_lattice(n: usize, with_left_rung: bool) -> (Vec<(Point, Option<VertexLabel>)>, Vec<(Point, Point)>) {
    use LabelLetter::*;
    let top = 2 * n as i32;
    let first = if with_left_rung { 0 } else { 1 };
    let mut points = Vec::new();
    let mut edges = Vec::new();
    if n == 0 {
        return (points, edges);
    }
    let at = |letter: LabelLetter, j: i32| (letter.row(), j);
    for j in first..=top {
        points.push((at(U, j), Some(VertexLabel::new(U, j as usize))));
        points.push((at(V, j), Some(VertexLabel::new(V, j as usize))));
        edges.push((at(U, j), at(V, j)));
        if j < top {
            edges.push((at(U, j), at(U, j + 1)));
            edges.push((at(V, j), at(V, j + 1)));
        }
    }
    for j in 1..=top {
        points.push((at(W, j), Some(VertexLabel::new(W, j as usize))));
        points.push((at(Z, j), Some(VertexLabel::new(Z, j as usize))));
        edges.push((at(W, j), at(U, j)));
        edges.push((at(V, j), at(Z, j)));
        if j % 2 == 1 {
            edges.push((at(W, j), at(W, j + 1)));
            edges.push((at(Z, j), at(Z, j + 1)));
        }
    }
    (points, edges)
}

/// The `4n`-square polyomino `G_n`; `G_0` is the null graph.
pub fn build_g(n: usize) -> PolyominoGraph {
    let (points, edges) = family_lattice(n, true);
    PolyominoGraph::from_lattice(points, &edges, GraphKind::G(n))
}

/// `H_n = G_n` minus `u_0`, `v_0`; `H_0` is the null graph.
pub fn build_h(n: usize) -> PolyominoGraph {
    let (points, edges) = family_lattice(n, false);
    PolyominoGraph::from_lattice(points, &edges, GraphKind::H(n))
}

/// Unit-cell layout of `G_n` or `H_n` in the coordinates used by
/// [`build_g`] / [`build_h`].
pub fn family_cells(kind: GraphKind) -> Vec<Point> {
    let (n, with_left) = match kind {
        GraphKind::G(n) => (n, true),
        GraphKind::H(n) => (n, false),
        GraphKind::Generic => return Vec::new(),
    };
    let mut cells = Vec::new();
    for k in 1..=n as i32 {
        cells.push((0, 2 * k - 1));
        cells.push((2, 2 * k - 1));
    }
    let start = if with_left { 0 } else { 1 };
    for j in start..2 * n as i32 {
        cells.push((1, j));
    }
    cells.sort_unstable();
    cells
}

const NEIGHBOR_STEPS: [Point; 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];

/// Polyomino graph spanned by a set of unit cells.
///
/// The cells must be edge-connected. A single-cell hole becomes a face of
/// its own; larger holes are rejected because their boundary would be an
/// interior face that is not a square.
pub fn from_cells(cells: &[Point]) -> Result<PolyominoGraph> {
    let set: BTreeSet<Point> = cells.iter().copied().collect();
    let Some(&start) = set.iter().next() else {
        return Err(Error::EmptyCells);
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((r, c)) = queue.pop_front() {
        for (dr, dc) in NEIGHBOR_STEPS {
            let next = (r + dr, c + dc);
            if set.contains(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    if seen.len() != set.len() {
        return Err(Error::DisconnectedCells);
    }
    if let Some(cells) = largest_hole(&set).filter(|&h| h > 1) {
        return Err(Error::NonSquareHole { cells });
    }

    let mut points = Vec::new();
    let mut edges = Vec::new();
    for &(r, c) in &set {
        let corners = [(r, c), (r, c + 1), (r + 1, c + 1), (r + 1, c)];
        for i in 0..4 {
            points.push((corners[i], None));
            edges.push((corners[i], corners[(i + 1) % 4]));
        }
    }
    let graph = PolyominoGraph::from_lattice(points, &edges, GraphKind::Generic);
    debug_assert!(graph.bridges().is_empty());
    Ok(graph)
}

/// Size of the largest bounded component of the complement, if any.
fn largest_hole(set: &BTreeSet<Point>) -> Option<usize> {
    let min_r = set.iter().map(|p| p.0).min()? - 1;
    let max_r = set.iter().map(|p| p.0).max()? + 1;
    let min_c = set.iter().map(|p| p.1).min()? - 1;
    let max_c = set.iter().map(|p| p.1).max()? + 1;
    let inside = |(r, c): Point| r >= min_r && r <= max_r && c >= min_c && c <= max_c;
    let mut visited = BTreeSet::new();
    let mut largest = None;
    for r in min_r..=max_r {
        for c in min_c..=max_c {
            let cell = (r, c);
            if set.contains(&cell) || visited.contains(&cell) {
                continue;
            }
            let mut size = 0;
            let mut bounded = true;
            let mut queue = VecDeque::from([cell]);
            visited.insert(cell);
            while let Some((r0, c0)) = queue.pop_front() {
                size += 1;
                if r0 == min_r || r0 == max_r || c0 == min_c || c0 == max_c {
                    bounded = false;
                }
                for (dr, dc) in NEIGHBOR_STEPS {
                    let next = (r0 + dr, c0 + dc);
                    if inside(next) && !set.contains(&next) && visited.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
            if bounded {
                largest = Some(largest.map_or(size, |l: usize| l.max(size)));
            }
        }
    }
    largest
}

/// A broken type invariant reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EdgeEndpointOutOfRange { edge: usize },
    NonUnitEdge { edge: usize },
    DuplicateEdge { edge: usize },
    NotBipartite { edge: usize },
    FaceEdgeMissing { face: usize },
    MissingFace { cell: Point },
    DuplicateFace { cell: Point },
    LabelRowMismatch { vertex: usize },
    CountMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::EdgeEndpointOutOfRange { .. } => "edge-endpoint-out-of-range",
            Violation::NonUnitEdge { .. } => "non-unit-edge",
            Violation::DuplicateEdge { .. } => "duplicate-edge",
            Violation::NotBipartite { .. } => "not-bipartite",
            Violation::FaceEdgeMissing { .. } => "face-edge-missing",
            Violation::MissingFace { .. } => "missing-face",
            Violation::DuplicateFace { .. } => "duplicate-face",
            Violation::LabelRowMismatch { .. } => "label-row-mismatch",
            Violation::CountMismatch { .. } => "count-mismatch",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeEndpointOutOfRange { edge }
            | Violation::NonUnitEdge { edge }
            | Violation::DuplicateEdge { edge }
            | Violation::NotBipartite { edge } => write!(f, "{} (edge {})", self.code(), edge),
            Violation::FaceEdgeMissing { face } => write!(f, "{} (face {})", self.code(), face),
            Violation::MissingFace { cell } | Violation::DuplicateFace { cell } => {
                write!(f, "{} (cell {:?})", self.code(), cell)
            }
            Violation::LabelRowMismatch { vertex } => {
                write!(f, "{} (vertex {})", self.code(), vertex)
            }
            Violation::CountMismatch {
                what,
                expected,
                actual,
            } => write!(f, "{}: {} expected {}, found {}", self.code(), what, expected, actual),
        }
    }
}

/// Check every structural invariant; an empty list means the graph is sound.
pub fn validate(g: &PolyominoGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let nv = g.vertex_count();
    let mut seen_edges = BTreeSet::new();
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if a >= nv || b >= nv {
            out.push(Violation::EdgeEndpointOutOfRange { edge: e });
            continue;
        }
        let (pa, pb) = (&g.vertices[a], &g.vertices[b]);
        if (pa.row - pb.row).abs() + (pa.col - pb.col).abs() != 1 {
            out.push(Violation::NonUnitEdge { edge: e });
        }
        if g.is_black(a) == g.is_black(b) {
            out.push(Violation::NotBipartite { edge: e });
        }
        if !seen_edges.insert((a.min(b), a.max(b))) {
            out.push(Violation::DuplicateEdge { edge: e });
        }
    }

    let mut face_cells = BTreeSet::new();
    for (i, face) in g.faces.iter().enumerate() {
        if face.vertices.iter().any(|&v| v >= nv) || g.face_edges(i).is_none() {
            out.push(Violation::FaceEdgeMissing { face: i });
        }
        if !face_cells.insert(face.cell) {
            out.push(Violation::DuplicateFace { cell: face.cell });
        }
    }
    for cell in g.full_cells() {
        if !face_cells.contains(&cell) {
            out.push(Violation::MissingFace { cell });
        }
    }

    for v in &g.vertices {
        if let Some(label) = v.label {
            if label.letter.row() != v.row || label.index as i32 != v.col {
                out.push(Violation::LabelRowMismatch { vertex: v.id });
            }
        }
    }

    let expected = match g.kind {
        GraphKind::G(0) | GraphKind::H(0) => Some((0, 0, 0)),
        GraphKind::G(n) => Some((8 * n + 2, 12 * n + 1, 4 * n)),
        GraphKind::H(n) => Some((8 * n, 12 * n - 2, 4 * n - 1)),
        GraphKind::Generic => None,
    };
    if let Some((v, e, f)) = expected {
        for (what, expected, actual) in [
            ("vertices", v, g.vertex_count()),
            ("edges", e, g.edge_count()),
            ("faces", f, g.faces.len()),
        ] {
            if expected != actual {
                out.push(Violation::CountMismatch {
                    what,
                    expected,
                    actual,
                });
            }
        }
    }
    out
}
