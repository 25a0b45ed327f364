//! The Riemann surface of a metric ribbon graph, described by its canonical
//! charts, and the Belyi map of a graph with integer edge lengths.
//!
//! Chart conventions:
//! - every dart `d` has a strip `0 < Re z < L` with `z = 0` at the vertex of
//!   `d`; the reverse dart uses `L - z`;
//! - the lower half `Im z < 0` of the strip of `d` faces the boundary cycle
//!   of `d`, the upper half faces that of `alpha(d)`;
//! - a vertex of degree `m` has the chart `w = exp(2 pi i k / m) z^(2/m)`,
//!   where `k` is the position of the dart in its rotation cycle counted
//!   from the smallest dart;
//! - a boundary cycle `d_1, .., d_r` of perimeter `a` has the disk chart
//!   `u = exp(-2 pi i (o_j + z) / a)` on the strip of `d_j`, where
//!   `o_j = L_1 + .. + L_{j-1}`. The pole sits at `u = 0`.
//!
//! In these charts the quadratic differential is `dz^2`,
//! `(m^2/4) w^(m-2) dw^2` and `-(a^2 / 4 pi^2) (du/u)^2`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::map::{Dart, MapError, MetricRibbonGraph, RibbonGraph, VertexColor, RELAXED_MIN_DEGREE};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniformizationError {
    #[error("point lies outside chart {0:?}")]
    PointOutsideAtlas(ChartId),
    #[error("edge {edge} has non-integral length {length}")]
    NonIntegralLength { edge: usize, length: String },
    #[error("no such chart {0:?}")]
    NoSuchChart(ChartId),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChartId {
    Strip(Dart),
    Vertex(usize),
    Disk(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub chart: ChartId,
    pub coord: Complex64,
}

impl SurfacePoint {
    pub fn new(chart: ChartId, coord: Complex64) -> Self {
        SurfacePoint { chart, coord }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StripChart {
    pub dart: Dart,
    pub reverse: Dart,
    pub length: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexChart {
    pub vertex: usize,
    pub degree: usize,
    /// Incident darts; the branch index of `darts[k]` is `k`.
    pub darts: Vec<Dart>,
    /// The chart covers strip points with `|z| < radius` at this vertex.
    pub radius: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiskChart {
    pub face: usize,
    pub perimeter: f64,
    pub darts: Vec<Dart>,
    /// `offsets[j] = L(darts[0]) + .. + L(darts[j-1])`.
    pub offsets: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ChartAtlas {
    graph: MetricRibbonGraph,
    strips: Vec<StripChart>,
    vertices: Vec<VertexChart>,
    disks: Vec<DiskChart>,
    branch: Vec<usize>,
    face_of: Vec<usize>,
    disk_position: Vec<usize>,
    integral: bool,
}

pub fn build_atlas(metric: &MetricRibbonGraph) -> ChartAtlas {
    let graph = metric.graph();
    let n = graph.n_darts();
    let length = |d: Dart| rational::to_f64(metric.dart_length(d));
    let strips = (0..n)
        .map(|d| StripChart {
            dart: d,
            reverse: graph.alpha().apply(d),
            length: length(d),
        })
        .collect();
    let mut branch = vec![0; n];
    let vertices = graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, cycle)| {
            for (k, &d) in cycle.iter().enumerate() {
                branch[d] = k;
            }
            let shortest = cycle.iter().map(|&d| length(d)).fold(f64::INFINITY, f64::min);
            VertexChart {
                vertex: v,
                degree: cycle.len(),
                darts: cycle.clone(),
                radius: shortest / 2.0,
            }
        })
        .collect();
    let boundary = graph.boundary_components();
    let mut disk_position = vec![0; n];
    let disks = boundary
        .cycles
        .iter()
        .enumerate()
        .map(|(f, cycle)| {
            let mut offsets = Vec::with_capacity(cycle.len());
            let mut acc = Rational::zero();
            for (j, &d) in cycle.iter().enumerate() {
                disk_position[d] = j;
                offsets.push(rational::to_f64(&acc));
                acc += metric.dart_length(d);
            }
            DiskChart {
                face: f,
                perimeter: rational::to_f64(&acc),
                darts: cycle.clone(),
                offsets,
            }
        })
        .collect();
    ChartAtlas {
        face_of: (0..n).map(|d| boundary.face_of(d)).collect(),
        integral: metric.lengths().iter().all(rational::is_integer),
        graph: metric.clone(),
        strips,
        vertices,
        disks,
        branch,
        disk_position,
    }
}

fn sin2(z: Complex64) -> Complex64 {
    let s = (PI * z).sin();
    s * s
}

impl ChartAtlas {
    pub fn graph(&self) -> &MetricRibbonGraph {
        &self.graph
    }

    pub fn strips(&self) -> &[StripChart] {
        &self.strips
    }

    pub fn vertex_charts(&self) -> &[VertexChart] {
        &self.vertices
    }

    pub fn disks(&self) -> &[DiskChart] {
        &self.disks
    }

    pub fn branch_index(&self, dart: Dart) -> usize {
        self.branch[dart]
    }

    fn reverse(&self, d: Dart) -> Dart {
        self.strips[d].reverse
    }

    fn check_chart(&self, chart: ChartId) -> Result<(), UniformizationError> {
        let ok = match chart {
            ChartId::Strip(d) => d < self.strips.len(),
            ChartId::Vertex(v) => v < self.vertices.len(),
            ChartId::Disk(f) => f < self.disks.len(),
        };
        if ok {
            Ok(())
        } else {
            Err(UniformizationError::NoSuchChart(chart))
        }
    }

    pub fn contains(&self, p: &SurfacePoint) -> bool {
        if self.check_chart(p.chart).is_err() || !p.coord.is_finite() {
            return false;
        }
        match p.chart {
            ChartId::Strip(d) => p.coord.re > 0.0 && p.coord.re < self.strips[d].length,
            ChartId::Vertex(v) => {
                let chart = &self.vertices[v];
                p.coord.norm() < chart.radius.powf(2.0 / chart.degree as f64)
            }
            ChartId::Disk(_) => p.coord.norm() < 1.0,
        }
    }

    /// The same point in the strip chart whose open strip contains it.
    pub fn to_strip(&self, p: &SurfacePoint) -> Result<(Dart, Complex64), UniformizationError> {
        if !self.contains(p) {
            return Err(UniformizationError::PointOutsideAtlas(p.chart));
        }
        let outside = || UniformizationError::PointOutsideAtlas(p.chart);
        let (d, z) = match p.chart {
            ChartId::Strip(d) => (d, p.coord),
            ChartId::Vertex(v) => {
                let chart = &self.vertices[v];
                let m = chart.degree as f64;
                let k = ((p.coord.arg() * m / (2.0 * PI)).round() as i64).rem_euclid(chart.degree as i64) as usize;
                let rotated = p.coord * Complex64::from_polar(1.0, -2.0 * PI * k as f64 / m);
                (chart.darts[k], rotated.powf(m / 2.0))
            }
            ChartId::Disk(f) => {
                let disk = &self.disks[f];
                if p.coord.is_zero() {
                    return Err(outside());
                }
                let a = disk.perimeter;
                let x = (-a * p.coord.arg() / (2.0 * PI)).rem_euclid(a);
                let y = a * p.coord.norm().ln() / (2.0 * PI);
                let j = disk.offsets.partition_point(|&o| o <= x).saturating_sub(1);
                (disk.darts[j], Complex64::new(x - disk.offsets[j], y))
            }
        };
        if z.re > 0.0 && z.re < self.strips[d].length {
            Ok((d, z))
        } else {
            Err(outside())
        }
    }

    fn from_strip(&self, d: Dart, z: Complex64, target: ChartId) -> Option<Complex64> {
        let l = self.strips[d].length;
        let flip = |z: Complex64| Complex64::new(l, 0.0) - z;
        let rev = self.reverse(d);
        match target {
            ChartId::Strip(t) if t == d => Some(z),
            ChartId::Strip(t) if t == rev => Some(flip(z)),
            ChartId::Strip(_) => None,
            ChartId::Vertex(v) => {
                let chart = &self.vertices[v];
                let (dart, z) = if self.graph.graph().vertex_of(d) == v && z.norm() < chart.radius {
                    (d, z)
                } else if self.graph.graph().vertex_of(rev) == v && flip(z).norm() < chart.radius {
                    (rev, flip(z))
                } else {
                    return None;
                };
                let m = chart.degree as f64;
                let k = self.branch[dart] as f64;
                Some(Complex64::from_polar(1.0, 2.0 * PI * k / m) * z.powf(2.0 / m))
            }
            ChartId::Disk(f) => {
                let (dart, z) = if z.im < 0.0 && self.face_of[d] == f {
                    (d, z)
                } else if z.im > 0.0 && self.face_of[rev] == f {
                    (rev, flip(z))
                } else {
                    return None;
                };
                let disk = &self.disks[f];
                let global = z + disk.offsets[self.disk_position[dart]];
                Some((Complex64::new(0.0, -2.0 * PI / disk.perimeter) * global).exp())
            }
        }
    }

    /// Re-expresses a point in another chart.
    pub fn convert(&self, p: &SurfacePoint, target: ChartId) -> Result<SurfacePoint, UniformizationError> {
        self.check_chart(target)?;
        if p.chart == target {
            return if self.contains(p) {
                Ok(*p)
            } else {
                Err(UniformizationError::PointOutsideAtlas(p.chart))
            };
        }
        let (d, z) = self.to_strip(p)?;
        self.from_strip(d, z, target)
            .map(|coord| SurfacePoint::new(target, coord))
            .ok_or(UniformizationError::PointOutsideAtlas(target))
    }

    /// Every chart containing a point that lies in an open strip.
    pub fn charts_containing(&self, p: &SurfacePoint) -> Vec<ChartId> {
        let Ok((d, z)) = self.to_strip(p) else {
            return if self.contains(p) { vec![p.chart] } else { Vec::new() };
        };
        let mut out = vec![ChartId::Strip(d), ChartId::Strip(self.reverse(d))];
        out.extend(
            (0..self.vertices.len())
                .map(ChartId::Vertex)
                .filter(|&c| self.from_strip(d, z, c).is_some()),
        );
        out.extend(
            (0..self.disks.len())
                .map(ChartId::Disk)
                .filter(|&c| self.from_strip(d, z, c).is_some()),
        );
        out.sort();
        out.dedup();
        out
    }

    /// Coefficient of the quadratic differential in the chart of `p`.
    pub fn quadratic_coefficient(&self, p: &SurfacePoint) -> Complex64 {
        match p.chart {
            ChartId::Strip(_) => Complex64::one(),
            ChartId::Vertex(v) => {
                let m = self.vertices[v].degree as f64;
                m * m / 4.0 * p.coord.powf(m - 2.0)
            }
            ChartId::Disk(f) => {
                let a = self.disks[f].perimeter;
                -Complex64::new(a * a / (4.0 * PI * PI), 0.0) / (p.coord * p.coord)
            }
        }
    }

    /// Relative defect of `q_source = q_target(T) T'^2` for the transition
    /// `T` from the chart of `p` to `target`, with `T'` from a five-point
    /// difference stencil.
    pub fn transition_residual(&self, p: &SurfacePoint, target: ChartId) -> Result<f64, UniformizationError> {
        if p.chart == target {
            return Ok(0.0);
        }
        let image = self.convert(p, target)?;
        let at = |dz: f64| {
            self.convert(&SurfacePoint::new(p.chart, p.coord + dz), target)
                .map(|q| q.coord)
        };
        let stencil = |h: f64| -> Result<Complex64, UniformizationError> {
            Ok((at(-2.0 * h)? - 8.0 * at(-h)? + 8.0 * at(h)? - at(2.0 * h)?) / (12.0 * h))
        };
        // shrink the step until the stencil stays inside the target chart
        let mut h = if p.coord.is_zero() { 1e-6 } else { 1e-3 * p.coord.norm() };
        let derivative = loop {
            match stencil(h) {
                Ok(d) => break d,
                Err(e) if h < 1e-12 => return Err(e),
                Err(_) => h /= 4.0,
            }
        };
        let source = self.quadratic_coefficient(p);
        let pulled = self.quadratic_coefficient(&image) * derivative * derivative;
        Ok((source - pulled).norm() / source.norm())
    }

    /// Value of the Belyi map, `sin^2(pi z)` on every strip. Poles map to an
    /// infinite value.
    pub fn belyi_evaluate(&self, p: &SurfacePoint) -> Result<Complex64, UniformizationError> {
        if !self.integral {
            let edge = (0..self.graph.lengths().len())
                .find(|&e| !rational::is_integer(&self.graph.lengths()[e]))
                .unwrap();
            return Err(UniformizationError::NonIntegralLength {
                edge,
                length: rational::format(&self.graph.lengths()[edge]),
            });
        }
        if !self.contains(p) {
            return Err(UniformizationError::PointOutsideAtlas(p.chart));
        }
        Ok(match p.chart {
            ChartId::Strip(_) => sin2(p.coord),
            // sin^2 is even, so either square root of w^m will do
            ChartId::Vertex(v) => sin2(p.coord.powu(self.vertices[v].degree as u32).sqrt()),
            ChartId::Disk(f) => {
                if p.coord.is_zero() {
                    return Ok(Complex64::new(f64::INFINITY, 0.0));
                }
                let a = self.disks[f].perimeter.round() as i32;
                let ua = p.coord.powi(a);
                -(ua + ua.inv() - 2.0) / 4.0
            }
        })
    }

    fn sample_points(&self, samples: usize, seed: u64) -> Vec<SurfacePoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shortest = self.strips.iter().map(|s| s.length).fold(f64::INFINITY, f64::min);
        (0..samples)
            .map(|i| {
                let d = rng.gen_range(0..self.strips.len());
                let l = self.strips[d].length;
                let z = if i % 2 == 0 {
                    // near the vertex of d, inside the vertex chart
                    let r = rng.gen_range(0.05..0.25) * shortest;
                    Complex64::from_polar(r, rng.gen_range(-0.45 * PI..0.45 * PI))
                } else {
                    // in a half strip, inside a disk chart
                    let y = rng.gen_range(0.05..1.5) * l;
                    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    Complex64::new(rng.gen_range(0.1..0.9) * l, sign * y)
                };
                SurfacePoint::new(ChartId::Strip(d), z)
            })
            .collect()
    }
}

/// Largest relative residual of the transformation law of the quadratic
/// differential, in both directions, over `samples` overlap points.
pub fn transition_check(atlas: &ChartAtlas, samples: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for p in atlas.sample_points(samples, 0x5eed) {
        for target in atlas.charts_containing(&p) {
            worst = worst.max(atlas.transition_residual(&p, target).expect("overlap point"));
            let there = atlas.convert(&p, target).expect("overlap point");
            worst = worst.max(atlas.transition_residual(&there, p.chart).expect("overlap point"));
        }
    }
    worst
}

/// Largest `|f(p) - f(p')| / max(1, |f(p)|)` over `samples` random points
/// expressed in every chart containing them.
pub fn chart_consistency(atlas: &ChartAtlas, samples: usize, seed: u64) -> Result<f64, UniformizationError> {
    let mut worst: f64 = 0.0;
    for p in atlas.sample_points(samples, seed) {
        let reference = atlas.belyi_evaluate(&p)?;
        for target in atlas.charts_containing(&p) {
            let value = atlas.belyi_evaluate(&atlas.convert(&p, target)?)?;
            worst = worst.max((value - reference).norm() / reference.norm().max(1.0));
        }
    }
    Ok(worst)
}

/// Replaces every edge of integer length `n` by a path of `n` unit edges.
/// Original darts keep their labels and stay at the original vertices.
pub fn unit_subdivision(metric: &MetricRibbonGraph) -> Result<RibbonGraph, UniformizationError> {
    let graph = metric.graph();
    let mut sigma: Vec<usize> = graph.sigma().images().to_vec();
    let mut alpha: Vec<usize> = graph.alpha().images().to_vec();
    for (e, &[a, b]) in graph.edges().iter().enumerate() {
        let length = &metric.lengths()[e];
        if !rational::is_integer(length) {
            return Err(UniformizationError::NonIntegralLength {
                edge: e,
                length: rational::format(length),
            });
        }
        let n = length.to_integer().to_usize().expect("edge length fits in usize");
        // segment i runs from forward[i] to backward[i]
        let mut forward = vec![a];
        let mut backward = Vec::new();
        for _ in 1..n {
            let back = sigma.len();
            let fwd = back + 1;
            sigma.extend([fwd, back]);
            alpha.extend([0, 0]);
            backward.push(back);
            forward.push(fwd);
        }
        backward.push(b);
        for (&f, &k) in forward.iter().zip(&backward) {
            alpha[f] = k;
            alpha[k] = f;
        }
    }
    Ok(RibbonGraph::build(sigma.len(), sigma, alpha, RELAXED_MIN_DEGREE)?)
}

/// Ramification of the Belyi map of a unit-length graph over `0, 1, inf`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub degree: usize,
    pub genus: usize,
    pub over_zero: Vec<usize>,
    pub over_one: Vec<usize>,
    pub over_infinity: Vec<usize>,
}

impl RamificationProfile {
    /// `(2 - 2g, 2 deg - sum (e_p - 1))`.
    pub fn riemann_hurwitz(&self) -> (i64, i64) {
        let defect: usize = [&self.over_zero, &self.over_one, &self.over_infinity]
            .iter()
            .flat_map(|part| part.iter().map(|&k| k - 1))
            .sum();
        (2 - 2 * self.genus as i64, 2 * self.degree as i64 - defect as i64)
    }

    pub fn riemann_hurwitz_holds(&self) -> bool {
        let (lhs, rhs) = self.riemann_hurwitz();
        lhs == rhs
    }

    pub fn partitions_sum_to_degree(&self) -> bool {
        [&self.over_zero, &self.over_one, &self.over_infinity]
            .iter()
            .all(|part| part.iter().sum::<usize>() == self.degree)
    }
}

pub fn ramification_profile(graph: &RibbonGraph) -> RamificationProfile {
    let sorted = |mut v: Vec<usize>| {
        v.sort_by(|a, b| b.cmp(a));
        v
    };
    RamificationProfile {
        degree: graph.n_darts(),
        genus: graph.genus().expect("valid maps have integral genus"),
        over_zero: sorted(graph.degrees()),
        over_one: vec![2; graph.edge_count()],
        over_infinity: sorted(graph.boundary_components().edge_counts.clone()),
    }
}

/// Profile of the Belyi map of an integer-length metric graph.
pub fn ramification_profile_metric(metric: &MetricRibbonGraph) -> Result<RamificationProfile, UniformizationError> {
    Ok(ramification_profile(&unit_subdivision(metric)?))
}

/// The bipartite map `f^{-1}([0, 1])`: original vertices are black, edge
/// midpoints white.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dessin {
    pub graph: RibbonGraph,
    pub colors: Vec<VertexColor>,
}

pub fn dessin(graph: &RibbonGraph) -> Dessin {
    let refined = graph.edge_refinement();
    Dessin {
        graph: refined.graph,
        colors: refined.colors,
    }
}

impl Dessin {
    fn vertex_name(&self, v: usize) -> String {
        match self.colors[v] {
            VertexColor::Black => format!("b{v}"),
            VertexColor::White => format!("w{v}"),
        }
    }

    pub fn black_degrees(&self) -> Vec<usize> {
        self.degrees_of(VertexColor::Black)
    }

    pub fn white_degrees(&self) -> Vec<usize> {
        self.degrees_of(VertexColor::White)
    }

    fn degrees_of(&self, color: VertexColor) -> Vec<usize> {
        (0..self.graph.vertex_count())
            .filter(|&v| self.colors[v] == color)
            .map(|v| self.graph.degree(v))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dessin {\n  node [shape=circle, style=filled, label=\"\"];\n");
        for v in 0..self.graph.vertex_count() {
            let fill = match self.colors[v] {
                VertexColor::Black => "black",
                VertexColor::White => "white",
            };
            out.push_str(&format!("  {} [fillcolor={fill}];\n", self.vertex_name(v)));
        }
        for &[a, b] in self.graph.edges() {
            out.push_str(&format!(
                "  {} -- {} [label=\"{a}/{b}\"];\n",
                self.vertex_name(self.graph.vertex_of(a)),
                self.vertex_name(self.graph.vertex_of(b))
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut value = crate::json::graph_to_json(&self.graph, None);
        let colors: Vec<&str> = self
            .colors
            .iter()
            .map(|c| match c {
                VertexColor::Black => "black",
                VertexColor::White => "white",
            })
            .collect();
        value["vertices"] = serde_json::json!(self.graph.vertices());
        value["colors"] = serde_json::json!(colors);
        value
    }
}

/// Dense polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly(Vec<Rational>);

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::from_ints(&[1]), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * x + rational::to_f64(c))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, other: &RationalPoly) -> RationalPoly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &RationalPoly, i: usize| p.0.get(i).cloned().unwrap_or_else(Rational::zero);
        RationalPoly::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, other: &RationalPoly) -> RationalPoly {
        self + &-other
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, other: &RationalPoly) -> RationalPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return RationalPoly::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivalentReport {
    /// `(x, phi(x))` at the real critical points, exact.
    pub real_critical_values: Vec<(String, String)>,
    pub real_values_are_one: bool,
    /// `max |phi(x)|` at `(1 +- i sqrt 3)/2`.
    pub complex_critical_value: f64,
    /// `N'D - ND' = 27 x (1-x) * (-4)(x-2)(x+1)(2x-1)(x^2-x+1)^2` exactly.
    pub derivative_factorization_holds: bool,
    pub derivative_vanishes_at_real_points: bool,
}

impl TrivalentReport {
    pub fn passed(&self) -> bool {
        self.real_values_are_one
            && self.complex_critical_value < 1e-12
            && self.derivative_factorization_holds
            && self.derivative_vanishes_at_real_points
    }
}

/// Checks the critical values of `phi(x) = 4(x^2-x+1)^3 / (27 x^2 (1-x)^2)`,
/// the map pulling the basic quadratic differential back to the Strebel
/// differential of the equilateral sphere with three points.
pub fn trivalent_compose_check() -> TrivalentReport {
    let p = RationalPoly::from_ints;
    let quad = p(&[1, -1, 1]);
    let numer = &p(&[4]) * &quad.pow(3);
    let one_minus_x = p(&[1, -1]);
    let denom = &p(&[27]) * &(&RationalPoly::x().pow(2) * &one_minus_x.pow(2));
    let phi = |x: &Rational| numer.eval(x) / denom.eval(x);

    let points = [rational::int(-1), rational::ratio(1, 2), rational::int(2)];
    let real_critical_values: Vec<(String, String)> = points
        .iter()
        .map(|x| (rational::format(x), rational::format(&phi(x))))
        .collect();
    let real_values_are_one = points.iter().all(|x| phi(x).is_one());

    let complex_critical_value = [1.0, -1.0]
        .iter()
        .map(|s| {
            let x = Complex64::new(0.5, s * 3f64.sqrt() / 2.0);
            (numer.eval_complex(x) / denom.eval_complex(x)).norm()
        })
        .fold(0.0, f64::max);

    let wronskian = &(&numer.derivative() * &denom) - &(&numer * &denom.derivative());
    let factored = [p(&[-4]), p(&[-2, 1]), p(&[1, 1]), p(&[-1, 2]), quad.pow(2)]
        .iter()
        .fold(p(&[1]), |acc, f| &acc * f);
    let cofactor = &p(&[27]) * &(&RationalPoly::x() * &one_minus_x);
    let derivative_factorization_holds = wronskian == &cofactor * &factored;
    let derivative_vanishes_at_real_points = points.iter().all(|x| factored.eval(x).is_zero());

    TrivalentReport {
        real_critical_values,
        real_values_are_one,
        complex_critical_value,
        derivative_factorization_holds,
        derivative_vanishes_at_real_points,
    }
}
