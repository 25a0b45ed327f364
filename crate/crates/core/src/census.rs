//! Exhaustive enumeration of ribbon graphs of given genus and boundary
//! count, boundary-labelled classes, and the poset of expansions of a map.
//!
//! The enumeration fixes the edge count `e` and vertex count
//! `v = e + 2 - 2g - n`, runs over one `sigma` per degree partition, and
//! backtracks over all fixed-point-free involutions `alpha`. Candidates that
//! are connected and have exactly `n` boundary cycles are reduced to their
//! canonical form; the sorted set of forms is the census.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::map::{MapError, RibbonGraph, MIN_DEGREE, RELAXED_MIN_DEGREE};
use crate::permutation::Permutation;
use crate::symmetry::{
    automorphisms, boundary_action, boundary_preserving_automorphisms, canonical_form, CanonicalForm, Canonizer,
};

/// Environment variable overriding the default edge guard.
pub const MAX_EDGES_ENV: &str = "RIBBONLAB_MAX_EDGES";
pub const DEFAULT_MAX_EDGES: usize = 9;
pub const DEFAULT_MAX_CODIMENSION: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("no ribbon graphs with g = {g}, n = {n}: need 2 - 2g - n < 0")]
    UnsatisfiableParameters { g: usize, n: usize },
    #[error("search needs {needed}, above the configured limit {limit}")]
    TooLarge { needed: usize, limit: usize },
    #[error("generated count {generated} disagrees with closed form {closed_form}")]
    CountMismatch { generated: u64, closed_form: u64 },
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusOptions {
    /// Refuse searches whose largest edge count exceeds this.
    pub max_edges: usize,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Allow vertices of degree 1 and 2; every `e` up to `max_edges` is searched.
    pub relaxed_degrees: bool,
    /// Relabel the `sigma` representatives by a seeded shuffle.
    pub dart_seed: Option<u64>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_edges: DEFAULT_MAX_EDGES,
            jobs: 0,
            relaxed_degrees: false,
            dart_seed: None,
        }
    }
}

impl CensusOptions {
    /// Defaults, with `max_edges` taken from `RIBBONLAB_MAX_EDGES` when set.
    pub fn from_env() -> Self {
        let mut opts = Self::default();
        if let Some(limit) = std::env::var(MAX_EDGES_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            opts.max_edges = limit;
        }
        opts
    }

    fn min_degree(&self) -> usize {
        if self.relaxed_degrees {
            RELAXED_MIN_DEGREE
        } else {
            MIN_DEGREE
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusEntry {
    pub form: CanonicalForm,
    #[serde(skip)]
    pub graph: RibbonGraph,
    pub vertices: usize,
    pub edges: usize,
    pub boundaries: usize,
    pub genus: usize,
    pub aut_order: usize,
    pub aut_boundary_order: usize,
    pub exceptional: bool,
    /// Number of boundary labelings up to automorphism.
    pub labeled_orbit_count: usize,
}

impl CensusEntry {
    pub fn from_graph(graph: RibbonGraph) -> Self {
        let form = canonical_form(&graph);
        let aut = automorphisms(&graph);
        let aut_boundary = boundary_preserving_automorphisms(&graph);
        let labeled_orbit_count = labeling_orbits(&graph).len();
        CensusEntry {
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            boundaries: graph.boundary_count(),
            genus: graph.genus().expect("valid maps have integral genus"),
            aut_order: aut.order(),
            aut_boundary_order: aut_boundary.order(),
            exceptional: aut.edge_kernel_order() > 1,
            labeled_orbit_count,
            form,
            graph,
        }
    }
}

/// The isomorphism classes for one `(g, n)`, sorted by canonical form.
#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub genus: usize,
    pub boundaries: usize,
    pub relaxed_degrees: bool,
    /// False for hand-assembled partial lists; sums over them are refused.
    pub complete: bool,
    pub entries: Vec<CensusEntry>,
}

impl Census {
    pub fn partial(genus: usize, boundaries: usize, entries: Vec<CensusEntry>) -> Self {
        Census {
            genus,
            boundaries,
            relaxed_degrees: false,
            complete: false,
            entries,
        }
    }

    pub fn forms(&self) -> Vec<CanonicalForm> {
        self.entries.iter().map(|e| e.form.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A boundary-labelled class: `labeling[i]` is the label of boundary cycle `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledClass {
    pub entry: usize,
    pub labeling: Vec<usize>,
    /// Automorphisms of the underlying graph preserving this labeling.
    pub stabilizer_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabeledCensus {
    pub census: Census,
    pub classes: Vec<LabeledClass>,
}

/// Smallest representative of every orbit of boundary labelings under the
/// automorphism group, sorted.
pub fn labeling_orbits(graph: &RibbonGraph) -> Vec<Vec<usize>> {
    labeling_orbits_with_stabilizers(graph)
        .into_iter()
        .map(|(labeling, _)| labeling)
        .collect()
}

/// Orbit representatives of boundary labelings, each with the order of its
/// stabilizer in the automorphism group.
pub fn labeling_orbits_with_stabilizers(graph: &RibbonGraph) -> Vec<(Vec<usize>, usize)> {
    let boundary = graph.boundary_components();
    let b = boundary.count();
    let actions: Vec<Permutation> = automorphisms(graph)
        .elements()
        .iter()
        .map(|p| boundary_action(&boundary, p))
        .collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut reps = Vec::new();
    for labeling in all_permutations(b) {
        if seen.contains(&labeling) {
            continue;
        }
        // moving cycle i to cycle pi(i) carries its label along
        let orbit: Vec<Vec<usize>> = actions
            .iter()
            .map(|pi| {
                let mut moved = vec![0; b];
                for (i, &label) in labeling.iter().enumerate() {
                    moved[pi.apply(i)] = label;
                }
                moved
            })
            .collect();
        let rep = orbit.iter().min().unwrap().clone();
        let stabilizer = orbit.iter().filter(|l| **l == rep).count();
        reps.push((rep, stabilizer));
        seen.extend(orbit);
    }
    reps.sort();
    reps
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Edge counts searched for `(g, n)`.
pub fn edge_range(g: usize, n: usize, opts: &CensusOptions) -> Result<std::ops::RangeInclusive<usize>, CensusError> {
    let chi = 2 - 2 * g as i64 - n as i64;
    if n == 0 {
        return Err(CensusError::UnsatisfiableParameters { g, n });
    }
    if opts.relaxed_degrees {
        return Ok(1..=opts.max_edges);
    }
    if chi >= 0 {
        return Err(CensusError::UnsatisfiableParameters { g, n });
    }
    let e_max = (-3 * chi) as usize;
    if e_max > opts.max_edges {
        return Err(CensusError::TooLarge {
            needed: e_max,
            limit: opts.max_edges,
        });
    }
    let e_min = (1 - chi).max(1) as usize;
    Ok(e_min..=e_max)
}

pub fn enumerate(g: usize, n: usize, opts: &CensusOptions) -> Result<Census, CensusError> {
    let range = edge_range(g, n, opts)?;
    let min_degree = opts.min_degree();
    let chi = 2 - 2 * g as i64 - n as i64;
    let mut codes: BTreeSet<Vec<u32>> = BTreeSet::new();
    for e in range {
        let v = e as i64 + chi;
        if v < 1 {
            continue;
        }
        codes.extend(search(e, v as usize, n, min_degree, opts));
    }
    let mut entries: Vec<CensusEntry> = codes
        .into_iter()
        .map(|code| {
            let form = crate::symmetry::canonical_form_from_code(&code);
            CensusEntry::from_graph(form.to_graph(min_degree))
        })
        .filter(|entry| entry.genus == g)
        .collect();
    entries.sort_by(|a, b| a.form.cmp(&b.form));
    Ok(Census {
        genus: g,
        boundaries: n,
        relaxed_degrees: opts.relaxed_degrees,
        complete: true,
        entries,
    })
}

pub fn enumerate_labeled(g: usize, n: usize, opts: &CensusOptions) -> Result<LabeledCensus, CensusError> {
    let census = enumerate(g, n, opts)?;
    let classes = census
        .entries
        .iter()
        .enumerate()
        .flat_map(|(i, entry)| {
            labeling_orbits_with_stabilizers(&entry.graph)
                .into_iter()
                .map(move |(labeling, stabilizer_order)| LabeledClass {
                    entry: i,
                    labeling,
                    stabilizer_order,
                })
        })
        .collect();
    Ok(LabeledCensus { census, classes })
}

/// Non-increasing partitions of `total` into exactly `parts` parts, each at
/// least `min`.
pub fn partitions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: usize, min: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let hi = cap.min(rest.saturating_sub(min * (parts - 1)));
        for p in (min..=hi).rev() {
            prefix.push(p);
            go(rest - p, parts - 1, min, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, min, total, &mut Vec::new(), &mut out);
    }
    out
}

fn sigma_for(partition: &[usize], seed: Option<u64>) -> Vec<usize> {
    let n: usize = partition.iter().sum();
    let mut sigma = vec![0; n];
    let mut start = 0;
    for &p in partition {
        for i in 0..p {
            sigma[start + i] = start + (i + 1) % p;
        }
        start += p;
    }
    match seed {
        None => sigma,
        Some(seed) => {
            let mut relabel: Vec<usize> = (0..n).collect();
            relabel.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let relabel = Permutation::from_images(relabel).unwrap();
            Permutation::from_images(sigma)
                .unwrap()
                .conjugate_by(&relabel)
                .into_images()
        }
    }
}

struct Task {
    sigma: Vec<usize>,
    vertex_of: Vec<usize>,
    vertices: usize,
    alpha: Vec<usize>,
}

/// Canonical codes of every connected map with `e` edges, `v` vertices of
/// degree at least `min_degree`, and `n` boundary cycles.
fn search(e: usize, v: usize, n: usize, min_degree: usize, opts: &CensusOptions) -> HashSet<Vec<u32>> {
    let darts = 2 * e;
    let mut tasks = Vec::new();
    for partition in partitions(darts, v, min_degree) {
        let sigma = sigma_for(&partition, opts.dart_seed);
        let mut vertex_of = vec![0; darts];
        for (i, cycle) in Permutation::from_images(sigma.clone())
            .unwrap()
            .cycles()
            .iter()
            .enumerate()
        {
            for &d in cycle {
                vertex_of[d] = i;
            }
        }
        // split the search on the partners of the two smallest free darts
        let mut alpha = vec![usize::MAX; darts];
        for p in 1..darts {
            alpha[0] = p;
            alpha[p] = 0;
            let second = (1..darts).find(|&d| alpha[d] == usize::MAX);
            match second {
                None => tasks.push(Task {
                    sigma: sigma.clone(),
                    vertex_of: vertex_of.clone(),
                    vertices: v,
                    alpha: alpha.clone(),
                }),
                Some(s) => {
                    for q in s + 1..darts {
                        if alpha[q] != usize::MAX {
                            continue;
                        }
                        let mut a = alpha.clone();
                        a[s] = q;
                        a[q] = s;
                        tasks.push(Task {
                            sigma: sigma.clone(),
                            vertex_of: vertex_of.clone(),
                            vertices: v,
                            alpha: a,
                        });
                    }
                }
            }
            alpha[0] = usize::MAX;
            alpha[p] = usize::MAX;
        }
    }

    let run = || {
        tasks
            .par_iter()
            .map(|task| {
                let mut found = HashSet::new();
                let mut alpha = task.alpha.clone();
                let mut worker = Worker::new(task, n);
                worker.pair_next(&mut alpha, &mut found);
                found
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    };
    if opts.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool")
            .install(run)
    } else {
        run()
    }
}

struct Worker<'a> {
    task: &'a Task,
    faces: usize,
    canon: Canonizer,
    seen: Vec<bool>,
    parent: Vec<usize>,
}

impl<'a> Worker<'a> {
    fn new(task: &'a Task, faces: usize) -> Self {
        let n = task.sigma.len();
        Worker {
            task,
            faces,
            canon: Canonizer::new(n),
            seen: vec![false; n],
            parent: vec![0; task.vertices],
        }
    }

    fn pair_next(&mut self, alpha: &mut [usize], found: &mut HashSet<Vec<u32>>) {
        let Some(first) = alpha.iter().position(|&a| a == usize::MAX) else {
            self.leaf(alpha, found);
            return;
        };
        for p in first + 1..alpha.len() {
            if alpha[p] != usize::MAX {
                continue;
            }
            alpha[first] = p;
            alpha[p] = first;
            self.pair_next(alpha, found);
            alpha[first] = usize::MAX;
            alpha[p] = usize::MAX;
        }
    }

    fn leaf(&mut self, alpha: &[usize], found: &mut HashSet<Vec<u32>>) {
        let sigma = &self.task.sigma;
        if self.count_faces(alpha) != self.faces || !self.connected(alpha) {
            return;
        }
        let code = self.canon.canonical_code(sigma, alpha);
        if !found.contains(code) {
            found.insert(code.to_vec());
        }
    }

    fn count_faces(&mut self, alpha: &[usize]) -> usize {
        let sigma = &self.task.sigma;
        self.seen.iter_mut().for_each(|s| *s = false);
        let mut faces = 0;
        for start in 0..alpha.len() {
            if self.seen[start] {
                continue;
            }
            faces += 1;
            if faces > self.faces {
                return faces;
            }
            let mut d = start;
            while !self.seen[d] {
                self.seen[d] = true;
                d = sigma[alpha[d]];
            }
        }
        faces
    }

    fn connected(&mut self, alpha: &[usize]) -> bool {
        let vertex_of = &self.task.vertex_of;
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.parent.len();
        for (d, &a) in alpha.iter().enumerate() {
            if d < a {
                let (x, y) = (
                    find(&mut self.parent, vertex_of[d]),
                    find(&mut self.parent, vertex_of[a]),
                );
                if x != y {
                    self.parent[x] = y;
                    components -= 1;
                }
            }
        }
        components == 1
    }
}

/// A node of the expansion poset.
#[derive(Debug, Clone)]
pub struct PosetNode {
    pub graph: RibbonGraph,
    /// Number of edges added to the base map.
    pub added_edges: usize,
}

/// The base map and all of its iterated expansions, identified up to
/// isomorphisms fixing every dart of the base map.
#[derive(Debug, Clone)]
pub struct ExpansionPoset {
    pub nodes: Vec<PosetNode>,
    /// `(lower, upper)`: `lower` is `upper` with one new edge contracted.
    pub covers: Vec<(usize, usize)>,
}

impl ExpansionPoset {
    /// Node counts by number of added edges.
    pub fn cells_by_dimension(&self) -> Vec<usize> {
        let top = self.nodes.iter().map(|n| n.added_edges).max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for node in &self.nodes {
            counts[node.added_edges] += 1;
        }
        counts
    }

    /// Indices of nodes with no further expansion.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.nodes[i].graph.degrees().iter().all(|&d| d <= 3))
            .collect()
    }
}

/// Codimension of a map in its cell complex: the number of edges a full
/// expansion adds, `sum (d - 3)` over vertices of degree above 3.
pub fn codimension(graph: &RibbonGraph) -> usize {
    graph.degrees().iter().map(|&d| d.saturating_sub(3)).sum()
}

pub fn expansion_poset(graph: &RibbonGraph) -> Result<ExpansionPoset, CensusError> {
    let codim = codimension(graph);
    if codim > DEFAULT_MAX_CODIMENSION {
        return Err(CensusError::TooLarge {
            needed: codim,
            limit: DEFAULT_MAX_CODIMENSION,
        });
    }
    build_poset(graph)
}

/// Relabels the darts added by expansions in order of first discovery from
/// the base darts, so two expansions get the same key exactly when an
/// isomorphism fixing every base dart exists.
fn base_fixing_key(sigma: &[usize], alpha: &[usize], base_darts: usize) -> (Vec<usize>, Vec<usize>) {
    let n = sigma.len();
    let mut label = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..base_darts).collect();
    for (d, l) in label.iter_mut().enumerate().take(base_darts) {
        *l = d;
    }
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for y in [sigma[x], alpha[x]] {
            if label[y] == usize::MAX {
                label[y] = order.len();
                order.push(y);
            }
        }
        i += 1;
    }
    let mut key_sigma = vec![0; n];
    let mut key_alpha = vec![0; n];
    for x in 0..n {
        key_sigma[label[x]] = label[sigma[x]];
        key_alpha[label[x]] = label[alpha[x]];
    }
    (key_sigma, key_alpha)
}

fn build_poset(graph: &RibbonGraph) -> Result<ExpansionPoset, CensusError> {
    let base = graph.n_darts();
    let mut nodes = vec![PosetNode {
        graph: graph.clone(),
        added_edges: 0,
    }];
    let mut index: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    index.insert(base_fixing_key(graph.sigma().images(), graph.alpha().images(), base), 0);
    let mut covers = BTreeSet::new();
    let mut level = vec![0];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &i in &level {
            let current = nodes[i].graph.clone();
            for v in 0..current.vertex_count() {
                if current.degree(v) < 4 {
                    continue;
                }
                for (sigma, alpha) in current.expansion_arrays(v)? {
                    let key = base_fixing_key(&sigma, &alpha, base);
                    let j = match index.get(&key) {
                        Some(&j) => j,
                        None => {
                            let j = nodes.len();
                            let (sigma, alpha) = key.clone();
                            let normalized = RibbonGraph::build(sigma.len(), sigma, alpha, current.min_degree())?;
                            nodes.push(PosetNode {
                                graph: normalized,
                                added_edges: nodes[i].added_edges + 1,
                            });
                            index.insert(key, j);
                            next.push(j);
                            j
                        }
                    };
                    covers.insert((i, j));
                }
            }
        }
        level = next;
    }
    Ok(ExpansionPoset {
        nodes,
        covers: covers.into_iter().collect(),
    })
}

/// Catalan count of triangulations of a `d`-gon, `C(2d-4, d-2) / (d-1)`.
pub fn catalan_triangulations(d: usize) -> u64 {
    assert!(d >= 3);
    let k = (d - 2) as u64;
    // C(2k, k) / (k + 1), built incrementally to stay exact
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Number of trivalent full expansions of a degree-`d` vertex, generated by
/// expanding a star and checked against the Catalan closed form.
pub fn maximal_expansion_count(d: usize) -> Result<u64, CensusError> {
    assert!(d >= 3, "a star needs degree at least 3");
    let poset = build_poset(&crate::map::zoo::star(d))?;
    let generated = poset.maximal().len() as u64;
    let closed_form = catalan_triangulations(d);
    if generated != closed_form {
        return Err(CensusError::CountMismatch { generated, closed_form });
    }
    Ok(generated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::zoo::*;
    use crate::symmetry::is_isomorphic;

    #[test]
    fn partitions_of_twelve_into_four() {
        assert_eq!(partitions(12, 4, 3), vec![vec![3, 3, 3, 3]]);
        assert_eq!(partitions(14, 4, 3), vec![vec![5, 3, 3, 3], vec![4, 4, 3, 3]]);
        assert!(partitions(5, 2, 3).is_empty());
    }

    #[test]
    fn rg_1_1_has_two_classes() {
        let c = enumerate(1, 1, &CensusOptions::default()).unwrap();
        assert_eq!(c.len(), 2);
        let graphs: Vec<_> = c.entries.iter().map(|e| e.graph.clone()).collect();
        assert!(graphs.iter().any(|g| is_isomorphic(g, &torus_theta())));
        assert!(graphs.iter().any(|g| is_isomorphic(g, &torus_figure_eight())));
    }

    #[test]
    fn rg_0_3_and_labeled() {
        let c = enumerate(0, 3, &CensusOptions::default()).unwrap();
        assert_eq!(c.len(), 3);
        for g in [planar_theta(), planar_figure_eight(), dumbbell()] {
            assert!(c.entries.iter().any(|e| is_isomorphic(&e.graph, &g)));
        }
        let labeled = enumerate_labeled(0, 3, &CensusOptions::default()).unwrap();
        assert_eq!(labeled.classes.len(), 7);
        let per_graph = |g: &RibbonGraph| {
            let i = c.entries.iter().position(|e| is_isomorphic(&e.graph, g)).unwrap();
            labeled.classes.iter().filter(|cl| cl.entry == i).count()
        };
        assert_eq!(per_graph(&planar_theta()), 1);
        assert_eq!(per_graph(&planar_figure_eight()), 3);
        assert_eq!(per_graph(&dumbbell()), 3);
    }

    #[test]
    fn exceptional_j4_has_one_labeled_class() {
        let g = exceptional_two_vertex(4);
        assert_eq!(g.boundary_count(), 2);
        assert_eq!(labeling_orbits(&g).len(), 1);
    }

    #[test]
    fn parameter_errors() {
        let opts = CensusOptions::default();
        assert!(matches!(
            enumerate(0, 2, &opts),
            Err(CensusError::UnsatisfiableParameters { .. })
        ));
        assert!(matches!(
            enumerate(0, 1, &opts),
            Err(CensusError::UnsatisfiableParameters { .. })
        ));
        assert!(matches!(
            enumerate(3, 1, &opts),
            Err(CensusError::TooLarge { needed: 15, .. })
        ));
        let tight = CensusOptions {
            max_edges: 5,
            ..CensusOptions::default()
        };
        assert!(matches!(
            enumerate(1, 2, &tight),
            Err(CensusError::TooLarge { needed: 6, limit: 5 })
        ));
    }

    #[test]
    fn degree_six_star_cells() {
        let p = expansion_poset(&star(6)).unwrap();
        assert_eq!(p.cells_by_dimension(), vec![1, 9, 21, 14]);
    }

    #[test]
    fn trivalent_poset_is_a_point() {
        let p = expansion_poset(&planar_theta()).unwrap();
        assert_eq!(p.nodes.len(), 1);
        assert!(p.covers.is_empty());
    }

    #[test]
    fn figure_eight_expands_to_two_thetas() {
        let p = expansion_poset(&torus_figure_eight()).unwrap();
        let top = p.maximal();
        assert_eq!(top.len(), 2);
        for i in top {
            assert!(is_isomorphic(&p.nodes[i].graph, &torus_theta()));
        }
    }

    #[test]
    fn codimension_guard() {
        assert!(matches!(
            expansion_poset(&star(10)),
            Err(CensusError::TooLarge { needed: 7, .. })
        ));
    }

    #[test]
    fn catalan_values() {
        let expected = [1, 2, 5, 14, 42, 132, 429, 1430];
        for (d, &c) in (3..=10).zip(&expected) {
            assert_eq!(catalan_triangulations(d), c);
        }
        assert_eq!(maximal_expansion_count(4).unwrap(), 2);
        assert_eq!(maximal_expansion_count(6).unwrap(), 14);
    }
}
