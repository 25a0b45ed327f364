//! Ribbon graphs as combinatorial maps on darts.
//!
//! A map is a pair of permutations on darts `0..2e`: `sigma`, whose cycles
//! are the vertices with their counterclockwise order of half-edges, and
//! `alpha`, a fixed-point-free involution whose orbits are the edges.
//! Boundary components are the cycles of `phi = sigma ∘ alpha` (apply
//! `alpha`, then `sigma`).

use std::collections::VecDeque;

use num_traits::Zero;
use thiserror::Error;

use crate::permutation::{Permutation, PermutationError};
use crate::rational::Rational;

pub type Dart = usize;

/// Default lower bound on vertex degrees.
pub const MIN_DEGREE: usize = 3;
/// Lower bound used when degree-1 and degree-2 vertices are allowed.
pub const RELAXED_MIN_DEGREE: usize = 1;

/// Image arrays of `sigma` and `alpha`.
pub(crate) type ImagePair = (Vec<usize>, Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("a ribbon graph needs at least one edge")]
    Empty,
    #[error("dart count {0} is odd")]
    OddDartCount(usize),
    #[error("sigma acts on {sigma} darts and alpha on {alpha}, expected {expected}")]
    LengthMismatch {
        expected: usize,
        sigma: usize,
        alpha: usize,
    },
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("alpha is not an involution at dart {0}")]
    AlphaNotInvolution(Dart),
    #[error("alpha fixes dart {0}")]
    AlphaHasFixedPoint(Dart),
    #[error("the map is disconnected")]
    Disconnected,
    #[error("vertex {vertex} has degree {degree}, below the minimum {min_degree}")]
    DegreeTooSmall {
        vertex: usize,
        degree: usize,
        min_degree: usize,
    },
    #[error("v - e + b is odd; the map is inconsistent")]
    NonIntegralGenus,
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(usize),
    #[error("no edge with index {0}")]
    NoSuchEdge(usize),
    #[error("no vertex with index {0}")]
    NoSuchVertex(usize),
    #[error("expected {expected} edge lengths, got {got}")]
    LengthCount { expected: usize, got: usize },
    #[error("edge {0} has a non-positive length")]
    NonPositiveLength(usize),
}

/// A connected ribbon graph. Immutable once built; the vertex and edge
/// tables are derived from `sigma` and `alpha`.
#[derive(Debug, Clone)]
pub struct RibbonGraph {
    sigma: Permutation,
    alpha: Permutation,
    min_degree: usize,
    vertices: Vec<Vec<Dart>>,
    vertex_of: Vec<usize>,
    edges: Vec<[Dart; 2]>,
    edge_of: Vec<usize>,
}

impl PartialEq for RibbonGraph {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.alpha == other.alpha
    }
}

impl Eq for RibbonGraph {}

/// Cycles of `phi`, each starting at its smallest dart, sorted by that dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryDecomposition {
    pub cycles: Vec<Vec<Dart>>,
    pub edge_counts: Vec<usize>,
    face_of: Vec<usize>,
}

impl BoundaryDecomposition {
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    /// Index of the boundary cycle containing `dart`.
    pub fn face_of(&self, dart: Dart) -> usize {
        self.face_of[dart]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexColor {
    /// An original vertex (lies over 0).
    Black,
    /// An edge midpoint (lies over 1).
    White,
}

/// Edge refinement together with its bipartite coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedGraph {
    pub graph: RibbonGraph,
    pub colors: Vec<VertexColor>,
}

impl RibbonGraph {
    pub fn new(sigma: Permutation, alpha: Permutation, min_degree: usize) -> Result<Self, MapError> {
        let n = sigma.len();
        if n == 0 {
            return Err(MapError::Empty);
        }
        if alpha.len() != n {
            return Err(MapError::LengthMismatch {
                expected: n,
                sigma: n,
                alpha: alpha.len(),
            });
        }
        if !n.is_multiple_of(2) {
            return Err(MapError::OddDartCount(n));
        }
        for d in 0..n {
            let p = alpha.apply(d);
            if p == d {
                return Err(MapError::AlphaHasFixedPoint(d));
            }
            if alpha.apply(p) != d {
                return Err(MapError::AlphaNotInvolution(d));
            }
        }

        let vertices = sigma.cycles();
        let mut vertex_of = vec![0; n];
        for (v, cycle) in vertices.iter().enumerate() {
            if cycle.len() < min_degree {
                return Err(MapError::DegreeTooSmall {
                    vertex: v,
                    degree: cycle.len(),
                    min_degree,
                });
            }
            for &d in cycle {
                vertex_of[d] = v;
            }
        }
        let edges: Vec<[Dart; 2]> = (0..n)
            .filter(|&d| d < alpha.apply(d))
            .map(|d| [d, alpha.apply(d)])
            .collect();
        let mut edge_of = vec![0; n];
        for (i, e) in edges.iter().enumerate() {
            edge_of[e[0]] = i;
            edge_of[e[1]] = i;
        }

        let graph = RibbonGraph {
            sigma,
            alpha,
            min_degree,
            vertices,
            vertex_of,
            edges,
            edge_of,
        };
        if !graph.is_connected() {
            return Err(MapError::Disconnected);
        }
        Ok(graph)
    }

    /// Validates image arrays for `sigma` and `alpha` on `n_darts` darts.
    pub fn build(n_darts: usize, sigma: Vec<usize>, alpha: Vec<usize>, min_degree: usize) -> Result<Self, MapError> {
        if sigma.len() != n_darts || alpha.len() != n_darts {
            return Err(MapError::LengthMismatch {
                expected: n_darts,
                sigma: sigma.len(),
                alpha: alpha.len(),
            });
        }
        let sigma = Permutation::from_images(sigma)?;
        let alpha = Permutation::from_images(alpha)?;
        Self::new(sigma, alpha, min_degree)
    }

    pub fn from_cycles(
        n_darts: usize,
        sigma: &[&[usize]],
        alpha: &[&[usize]],
        min_degree: usize,
    ) -> Result<Self, MapError> {
        let sigma = Permutation::from_cycles(n_darts, sigma)?;
        let alpha = Permutation::from_cycles(n_darts, alpha)?;
        Self::new(sigma, alpha, min_degree)
    }

    fn is_connected(&self) -> bool {
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = queue.pop_front() {
            for next in [self.sigma.apply(d), self.alpha.apply(d)] {
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    queue.push_back(next);
                }
            }
        }
        count == n
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// The face permutation `sigma ∘ alpha`.
    pub fn phi(&self) -> Permutation {
        self.sigma.compose(&self.alpha)
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex cycles of `sigma` in counterclockwise order, each starting at
    /// its smallest dart.
    pub fn vertices(&self) -> &[Vec<Dart>] {
        &self.vertices
    }

    /// Edges as `[d, alpha(d)]` with `d < alpha(d)`, sorted by `d`.
    pub fn edges(&self) -> &[[Dart; 2]] {
        &self.edges
    }

    pub fn vertex_of(&self, dart: Dart) -> usize {
        self.vertex_of[dart]
    }

    pub fn edge_of(&self, dart: Dart) -> usize {
        self.edge_of[dart]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.vertices[vertex].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vertices.iter().map(Vec::len).collect()
    }

    pub fn is_trivalent(&self) -> bool {
        self.vertices.iter().all(|c| c.len() == 3)
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let [a, b] = self.edges[edge];
        self.vertex_of[a] == self.vertex_of[b]
    }

    pub fn boundary_components(&self) -> BoundaryDecomposition {
        let cycles = self.phi().cycles();
        let mut face_of = vec![0; self.n_darts()];
        for (i, c) in cycles.iter().enumerate() {
            for &d in c {
                face_of[d] = i;
            }
        }
        let edge_counts = cycles.iter().map(Vec::len).collect();
        BoundaryDecomposition {
            cycles,
            edge_counts,
            face_of,
        }
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary_components().count()
    }

    /// `v - e + b`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.boundary_count() as i64
    }

    pub fn genus(&self) -> Result<usize, MapError> {
        let twice = 2 - self.euler_characteristic();
        if twice < 0 || twice % 2 != 0 {
            return Err(MapError::NonIntegralGenus);
        }
        Ok((twice / 2) as usize)
    }

    /// The same map with every dart `d` renamed to `relabel(d)`.
    pub fn relabel(&self, relabel: &Permutation) -> RibbonGraph {
        let sigma = self.sigma.conjugate_by(relabel);
        let alpha = self.alpha.conjugate_by(relabel);
        RibbonGraph::new(sigma, alpha, self.min_degree).expect("relabelling preserves validity")
    }

    /// Subdivides each edge by a degree-2 midpoint. Original darts keep their
    /// labels; edge `k` contributes midpoint darts `2e + 2k` (facing the
    /// edge's smaller dart) and `2e + 2k + 1`. Vertices of the result are
    /// colored black (original) or white (midpoint).
    pub fn edge_refinement(&self) -> RefinedGraph {
        let n = self.n_darts();
        let mut sigma: Vec<usize> = (0..2 * n).collect();
        let mut alpha: Vec<usize> = vec![0; 2 * n];
        for d in 0..n {
            sigma[d] = self.sigma.apply(d);
        }
        for (k, &[a, b]) in self.edges.iter().enumerate() {
            let ma = n + 2 * k;
            let mb = ma + 1;
            sigma[ma] = mb;
            sigma[mb] = ma;
            alpha[a] = ma;
            alpha[ma] = a;
            alpha[b] = mb;
            alpha[mb] = b;
        }
        let graph = RibbonGraph::build(2 * n, sigma, alpha, RELAXED_MIN_DEGREE.min(self.min_degree))
            .expect("refinement of a valid map is valid");
        let colors = graph
            .vertices()
            .iter()
            .map(|c| {
                if c[0] < n {
                    VertexColor::Black
                } else {
                    VertexColor::White
                }
            })
            .collect();
        RefinedGraph { graph, colors }
    }

    /// Removes a non-loop edge and merges its endpoints. If the edge has dart
    /// `x` at vertex `(x a1 .. ak)` and `y` at `(y b1 .. bm)`, the merged
    /// vertex is `(a1 .. ak b1 .. bm)`. The remaining darts are renumbered
    /// consecutively, preserving their relative order.
    pub fn contract_edge(&self, edge: usize) -> Result<RibbonGraph, MapError> {
        if edge >= self.edge_count() {
            return Err(MapError::NoSuchEdge(edge));
        }
        if self.is_loop(edge) {
            return Err(MapError::LoopContraction(edge));
        }
        let [x, y] = self.edges[edge];
        let vx = self.vertex_of[x];
        let vy = self.vertex_of[y];
        let after = |start: Dart| -> Vec<Dart> {
            let mut out = Vec::new();
            let mut d = self.sigma.apply(start);
            while d != start {
                out.push(d);
                d = self.sigma.apply(d);
            }
            out
        };
        let mut merged = after(x);
        merged.extend(after(y));

        let n = self.n_darts();
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for (d, slot) in new_id.iter_mut().enumerate() {
            if d != x && d != y {
                *slot = next;
                next += 1;
            }
        }
        let m = n - 2;
        if m == 0 {
            return Err(MapError::Empty);
        }
        let mut sigma = vec![0; m];
        let mut link = |cycle: &[Dart]| {
            for (i, &d) in cycle.iter().enumerate() {
                sigma[new_id[d]] = new_id[cycle[(i + 1) % cycle.len()]];
            }
        };
        for (v, cycle) in self.vertices.iter().enumerate() {
            if v != vx && v != vy {
                link(cycle);
            }
        }
        link(&merged);
        let mut alpha = vec![0; m];
        for d in 0..n {
            if d != x && d != y {
                alpha[new_id[d]] = new_id[self.alpha.apply(d)];
            }
        }
        RibbonGraph::build(m, sigma, alpha, self.min_degree.min(merged.len()).max(1))
    }

    /// All one-edge expansions of `vertex`: its cyclic order is split into two
    /// arcs of at least two darts each, giving `d(d-3)/2` maps. The new edge
    /// uses darts `n` (with the arc not containing the vertex's first dart)
    /// and `n + 1`; contracting it returns exactly `self`.
    pub fn expansions_at_vertex(&self, vertex: usize) -> Result<Vec<RibbonGraph>, MapError> {
        self.expansion_arrays(vertex)?
            .into_iter()
            .map(|(sigma, alpha)| RibbonGraph::build(sigma.len(), sigma, alpha, self.min_degree))
            .collect()
    }

    /// Image arrays `(sigma, alpha)` of [`Self::expansions_at_vertex`],
    /// unvalidated.
    pub(crate) fn expansion_arrays(&self, vertex: usize) -> Result<Vec<ImagePair>, MapError> {
        if vertex >= self.vertex_count() {
            return Err(MapError::NoSuchVertex(vertex));
        }
        let cycle = &self.vertices[vertex];
        let d = cycle.len();
        let n = self.n_darts();
        let mut out = Vec::new();
        for k in 2..d.saturating_sub(1) {
            for start in 1..=d - k {
                let arc: Vec<Dart> = cycle[start..start + k].to_vec();
                let rest: Vec<Dart> = cycle[start + k..].iter().chain(&cycle[..start]).copied().collect();
                let mut sigma: Vec<usize> = self.sigma.images().to_vec();
                sigma.extend([0, 0]);
                let mut link = |c: &[Dart]| {
                    for (i, &x) in c.iter().enumerate() {
                        sigma[x] = c[(i + 1) % c.len()];
                    }
                };
                link(&[&[n], arc.as_slice()].concat());
                link(&[&[n + 1], rest.as_slice()].concat());
                let mut alpha: Vec<usize> = self.alpha.images().to_vec();
                alpha.extend([n + 1, n]);
                out.push((sigma, alpha));
            }
        }
        Ok(out)
    }
}

/// A ribbon graph with a positive exact length on every edge, indexed like
/// [`RibbonGraph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricRibbonGraph {
    graph: RibbonGraph,
    lengths: Vec<Rational>,
}

impl MetricRibbonGraph {
    pub fn new(graph: RibbonGraph, lengths: Vec<Rational>) -> Result<Self, MapError> {
        if lengths.len() != graph.edge_count() {
            return Err(MapError::LengthCount {
                expected: graph.edge_count(),
                got: lengths.len(),
            });
        }
        if let Some(i) = lengths.iter().position(|l| l <= &Rational::zero()) {
            return Err(MapError::NonPositiveLength(i));
        }
        Ok(MetricRibbonGraph { graph, lengths })
    }

    /// Every edge of length one.
    pub fn unit(graph: RibbonGraph) -> Self {
        let lengths = vec![crate::rational::int(1); graph.edge_count()];
        MetricRibbonGraph { graph, lengths }
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn dart_length(&self, dart: Dart) -> &Rational {
        &self.lengths[self.graph.edge_of(dart)]
    }

    /// Perimeter of each boundary cycle, in boundary order.
    pub fn perimeters(&self) -> Vec<Rational> {
        self.graph
            .boundary_components()
            .cycles
            .iter()
            .map(|c| c.iter().map(|&d| self.dart_length(d).clone()).sum())
            .collect()
    }
}

/// Small named maps used throughout the crate and its tests.
pub mod zoo {
    use super::*;

    /// Two trivalent vertices joined by three edges on the sphere.
    pub fn planar_theta() -> RibbonGraph {
        RibbonGraph::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]], &[&[0, 3], &[1, 5], &[2, 4]], MIN_DEGREE).unwrap()
    }

    /// Two trivalent vertices joined by three edges on the torus.
    pub fn torus_theta() -> RibbonGraph {
        exceptional_two_vertex(3)
    }

    /// One degree-4 vertex with two loops on the torus.
    pub fn torus_figure_eight() -> RibbonGraph {
        exceptional_one_vertex(2)
    }

    /// One degree-4 vertex with two loops on the sphere.
    pub fn planar_figure_eight() -> RibbonGraph {
        RibbonGraph::from_cycles(4, &[&[0, 1, 2, 3]], &[&[0, 1], &[2, 3]], MIN_DEGREE).unwrap()
    }

    /// Two loops joined by a bridge on the sphere.
    pub fn dumbbell() -> RibbonGraph {
        RibbonGraph::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]], &[&[0, 1], &[2, 5], &[3, 4]], MIN_DEGREE).unwrap()
    }

    /// Two vertices of degree `j` with `alpha(i) = i + j`; the edge-trivial
    /// swap of the two vertices is an automorphism.
    pub fn exceptional_two_vertex(j: usize) -> RibbonGraph {
        let sigma: Vec<usize> = (0..2 * j)
            .map(|d| if d < j { (d + 1) % j } else { j + (d - j + 1) % j })
            .collect();
        let alpha: Vec<usize> = (0..2 * j).map(|d| (d + j) % (2 * j)).collect();
        RibbonGraph::build(2 * j, sigma, alpha, j.min(MIN_DEGREE)).unwrap()
    }

    /// One vertex of degree `2k` with `alpha(i) = i + k`.
    pub fn exceptional_one_vertex(k: usize) -> RibbonGraph {
        let n = 2 * k;
        let sigma: Vec<usize> = (0..n).map(|d| (d + 1) % n).collect();
        let alpha: Vec<usize> = (0..n).map(|d| (d + k) % n).collect();
        RibbonGraph::build(n, sigma, alpha, n.min(MIN_DEGREE)).unwrap()
    }

    /// A vertex of degree `d` with `d` pendant edges (relaxed degrees).
    /// Dart `i < d` sits at the center and is paired with leaf dart `d + i`.
    pub fn star(d: usize) -> RibbonGraph {
        let n = 2 * d;
        let sigma: Vec<usize> = (0..n).map(|x| if x < d { (x + 1) % d } else { x }).collect();
        let alpha: Vec<usize> = (0..n).map(|x| (x + d) % n).collect();
        RibbonGraph::build(n, sigma, alpha, RELAXED_MIN_DEGREE).unwrap()
    }

    /// The single-edge map with two degree-1 vertices (relaxed degrees).
    pub fn segment() -> RibbonGraph {
        RibbonGraph::build(2, vec![0, 1], vec![1, 0], RELAXED_MIN_DEGREE).unwrap()
    }
}
