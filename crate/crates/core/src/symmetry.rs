//! Automorphisms and canonical forms of ribbon graphs.
//!
//! Automorphisms are dart bijections commuting with both `sigma` and
//! `alpha`. Because the group generated by `sigma` and `alpha` is
//! transitive, an automorphism is fixed by the image of a single dart, so
//! the whole group is found by trying every image of dart 0.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::map::{BoundaryDecomposition, Dart, RibbonGraph};
use crate::permutation::{group_closure, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    elements: Vec<Permutation>,
    edge_kernel_order: usize,
}

impl AutGroup {
    fn from_elements(graph: &RibbonGraph, elements: Vec<Permutation>) -> Self {
        let edge_kernel_order = elements.iter().filter(|p| acts_trivially_on_edges(graph, p)).count();
        AutGroup {
            elements,
            edge_kernel_order,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Identity first, then the remaining elements sorted by image array.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Order of the subgroup fixing every edge setwise.
    pub fn edge_kernel_order(&self) -> usize {
        self.edge_kernel_order
    }

    /// A small generating set, picked greedily in element order.
    pub fn generators(&self) -> Vec<Permutation> {
        let Some(first) = self.elements.first() else {
            return Vec::new();
        };
        let n = first.len();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span: BTreeSet<Permutation> = BTreeSet::from([Permutation::identity(n)]);
        for g in &self.elements {
            if !span.contains(g) {
                gens.push(g.clone());
                span = group_closure(n, &gens).into_iter().collect();
            }
        }
        gens
    }
}

fn acts_trivially_on_edges(graph: &RibbonGraph, p: &Permutation) -> bool {
    (0..graph.n_darts()).all(|d| p.apply(d) == d || p.apply(d) == graph.alpha().apply(d))
}

/// Tries to extend `base_from -> base_to` to an isomorphism `from -> to`.
pub fn extend_isomorphism(from: &RibbonGraph, to: &RibbonGraph, base_from: Dart, base_to: Dart) -> Option<Permutation> {
    let n = from.n_darts();
    if to.n_darts() != n {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    image[base_from] = base_to;
    hit[base_to] = true;
    let mut queue = VecDeque::from([base_from]);
    while let Some(x) = queue.pop_front() {
        let y = image[x];
        for (sx, sy) in [
            (from.sigma().apply(x), to.sigma().apply(y)),
            (from.alpha().apply(x), to.alpha().apply(y)),
        ] {
            if image[sx] == usize::MAX {
                if hit[sy] {
                    return None;
                }
                image[sx] = sy;
                hit[sy] = true;
                queue.push_back(sx);
            } else if image[sx] != sy {
                return None;
            }
        }
    }
    Permutation::from_images(image).ok()
}

pub fn find_isomorphism(a: &RibbonGraph, b: &RibbonGraph) -> Option<Permutation> {
    if a.n_darts() != b.n_darts() || a.vertex_count() != b.vertex_count() {
        return None;
    }
    (0..b.n_darts()).find_map(|d| extend_isomorphism(a, b, 0, d))
}

pub fn automorphisms(graph: &RibbonGraph) -> AutGroup {
    let mut elements: Vec<Permutation> = (0..graph.n_darts())
        .filter_map(|d| extend_isomorphism(graph, graph, 0, d))
        .collect();
    elements.sort_by(|a, b| b.is_identity().cmp(&a.is_identity()).then(a.cmp(b)));
    AutGroup::from_elements(graph, elements)
}

/// The permutation of boundary cycles induced by an automorphism.
pub fn boundary_action(boundary: &BoundaryDecomposition, automorphism: &Permutation) -> Permutation {
    let images = boundary
        .cycles
        .iter()
        .map(|c| boundary.face_of(automorphism.apply(c[0])))
        .collect();
    Permutation::from_images(images).expect("automorphisms permute boundary cycles")
}

/// Automorphisms mapping every boundary cycle to itself.
pub fn boundary_preserving_automorphisms(graph: &RibbonGraph) -> AutGroup {
    let boundary = graph.boundary_components();
    let full = automorphisms(graph);
    let elements = full
        .elements
        .into_iter()
        .filter(|p| boundary_action(&boundary, p).is_identity())
        .collect();
    AutGroup::from_elements(graph, elements)
}

pub fn is_exceptional(graph: &RibbonGraph) -> bool {
    automorphisms(graph).edge_kernel_order() > 1
}

/// Relabelled `(sigma, alpha)` image arrays, minimal over all base darts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub sigma: Vec<usize>,
    pub alpha: Vec<usize>,
}

impl CanonicalForm {
    fn from_code(code: &[u32]) -> Self {
        let sigma = code.iter().step_by(2).map(|&x| x as usize).collect();
        let alpha = code.iter().skip(1).step_by(2).map(|&x| x as usize).collect();
        CanonicalForm { sigma, alpha }
    }

    /// Interleaved `sigma(0), alpha(0), sigma(1), alpha(1), ..`; the order
    /// on canonical forms is the lexicographic order of this code.
    pub fn code(&self) -> Vec<u32> {
        self.sigma
            .iter()
            .zip(&self.alpha)
            .flat_map(|(&s, &a)| [s as u32, a as u32])
            .collect()
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn to_graph(&self, min_degree: usize) -> RibbonGraph {
        RibbonGraph::build(self.n_darts(), self.sigma.clone(), self.alpha.clone(), min_degree)
            .expect("canonical form of a valid map is valid")
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_darts()
            .cmp(&other.n_darts())
            .then_with(|| self.code().cmp(&other.code()))
    }
}

/// Scratch buffers for repeated canonical labelling of maps of one size.
pub(crate) struct Canonizer {
    label: Vec<u32>,
    order: Vec<usize>,
    code: Vec<u32>,
    best: Vec<u32>,
}

impl Canonizer {
    pub(crate) fn new(n: usize) -> Self {
        Canonizer {
            label: vec![u32::MAX; n],
            order: Vec::with_capacity(n),
            code: Vec::with_capacity(2 * n),
            best: Vec::with_capacity(2 * n),
        }
    }

    /// Breadth-first relabelling from every base dart: label the base 0, then
    /// visit labelled darts in order, labelling `sigma(x)` and `alpha(x)` as
    /// they are first seen. Keeps the lexicographically smallest code; a
    /// candidate is abandoned as soon as it exceeds the best prefix.
    pub(crate) fn canonical_code(&mut self, sigma: &[usize], alpha: &[usize]) -> &[u32] {
        let n = sigma.len();
        self.label.clear();
        self.label.resize(n, u32::MAX);
        self.best.clear();
        for base in 0..n {
            self.label.iter_mut().for_each(|l| *l = u32::MAX);
            self.order.clear();
            self.code.clear();
            self.label[base] = 0;
            self.order.push(base);
            let mut state = if self.best.is_empty() {
                Ordering::Less
            } else {
                Ordering::Equal
            };
            let mut i = 0;
            'walk: while i < self.order.len() {
                let x = self.order[i];
                for y in [sigma[x], alpha[x]] {
                    if self.label[y] == u32::MAX {
                        self.label[y] = self.order.len() as u32;
                        self.order.push(y);
                    }
                    let entry = self.label[y];
                    if state == Ordering::Equal {
                        state = entry.cmp(&self.best[self.code.len()]);
                        if state == Ordering::Greater {
                            break 'walk;
                        }
                    }
                    self.code.push(entry);
                }
                i += 1;
            }
            if state == Ordering::Less {
                debug_assert_eq!(self.code.len(), 2 * n, "map must be connected");
                std::mem::swap(&mut self.best, &mut self.code);
            }
        }
        &self.best
    }
}

pub fn canonical_form(graph: &RibbonGraph) -> CanonicalForm {
    let mut c = Canonizer::new(graph.n_darts());
    let code = c.canonical_code(graph.sigma().images(), graph.alpha().images());
    CanonicalForm::from_code(code)
}

pub(crate) fn canonical_form_from_code(code: &[u32]) -> CanonicalForm {
    CanonicalForm::from_code(code)
}

pub fn is_isomorphic(a: &RibbonGraph, b: &RibbonGraph) -> bool {
    a.n_darts() == b.n_darts() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::zoo::*;
    use crate::map::MIN_DEGREE;

    #[test]
    fn torus_theta_group() {
        let aut = automorphisms(&torus_theta());
        assert_eq!(aut.order(), 6);
        assert_eq!(aut.edge_kernel_order(), 2);
        assert!(is_exceptional(&torus_theta()));
    }

    #[test]
    fn torus_figure_eight_group() {
        let g = torus_figure_eight();
        assert_eq!(automorphisms(&g).order(), 4);
        assert_eq!(boundary_preserving_automorphisms(&g).order(), 4);
        assert!(is_exceptional(&g));
    }

    #[test]
    fn planar_theta_group_acts_as_s3_on_boundaries() {
        let g = planar_theta();
        let aut = automorphisms(&g);
        assert_eq!(aut.order(), 6);
        assert!(!is_exceptional(&g));
        let b = g.boundary_components();
        let images: BTreeSet<Permutation> = aut.elements().iter().map(|p| boundary_action(&b, p)).collect();
        assert_eq!(images.len(), 6);
        assert_eq!(boundary_preserving_automorphisms(&g).order(), 1);
    }

    #[test]
    fn planar_figure_eight_group() {
        let g = planar_figure_eight();
        assert_eq!(automorphisms(&g).order(), 2);
        assert_eq!(boundary_preserving_automorphisms(&g).order(), 1);
        let b = g.boundary_components();
        let swap = automorphisms(&g).elements()[1].clone();
        // the nontrivial element exchanges the two inner boundaries (1) and (3)
        assert_eq!(boundary_action(&b, &swap).cycles(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn exceptional_family_orders() {
        for j in 3..=5 {
            let aut = automorphisms(&exceptional_two_vertex(j));
            assert_eq!(aut.order(), 2 * j);
            assert_eq!(aut.edge_kernel_order(), 2);
        }
        for k in 2..=5 {
            let aut = automorphisms(&exceptional_one_vertex(k));
            assert_eq!(aut.order(), 2 * k);
            assert_eq!(aut.edge_kernel_order(), 2);
        }
    }

    #[test]
    fn generators_generate() {
        let aut = automorphisms(&exceptional_two_vertex(4));
        let gens = aut.generators();
        assert!(gens.len() <= 2);
        assert_eq!(group_closure(8, &gens).len(), aut.order());
    }

    #[test]
    fn canonical_form_distinguishes_and_identifies() {
        let t = torus_theta();
        let p = planar_theta();
        assert!(!is_isomorphic(&t, &p));
        assert!(!is_isomorphic(&t, &torus_figure_eight()));
        let shuffle = Permutation::from_images(vec![4, 2, 5, 0, 1, 3]).unwrap();
        assert!(is_isomorphic(&t, &t.relabel(&shuffle)));
        assert!(is_isomorphic(&p, &p.relabel(&shuffle)));
        let back = canonical_form(&p).to_graph(MIN_DEGREE);
        assert!(is_isomorphic(&back, &p));
    }

    #[test]
    fn extension_search_finds_relabelling() {
        let g = dumbbell();
        let shuffle = Permutation::from_images(vec![5, 3, 1, 0, 4, 2]).unwrap();
        let h = g.relabel(&shuffle);
        let iso = find_isomorphism(&g, &h).unwrap();
        assert_eq!(g.relabel(&iso), h);
    }
}
