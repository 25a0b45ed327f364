//! Trivalent full expansions of a star against an explicit listing of
//! polygon triangulations.

use std::collections::HashSet;

use ribbonlab::census::{catalan_triangulations, expansion_poset, maximal_expansion_count};
use ribbonlab::map::zoo;

/// Every triangulation of the polygon on `vertices`, as a sorted diagonal list.
fn triangulations(vertices: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let n = vertices.len();
    if n < 3 {
        return vec![vec![]];
    }
    let (a, b) = (vertices[0], vertices[n - 1]);
    let mut out = Vec::new();
    // the triangle on the side (a, b) has apex vertices[k]
    for k in 1..n - 1 {
        let apex = vertices[k];
        for left in triangulations(&vertices[..=k]) {
            for right in triangulations(&vertices[k..]) {
                let mut diagonals: Vec<(usize, usize)> = left.iter().chain(&right).copied().collect();
                if k > 1 {
                    diagonals.push((a, apex));
                }
                if k < n - 2 {
                    diagonals.push((apex, b));
                }
                diagonals.sort();
                out.push(diagonals);
            }
        }
    }
    out
}

#[test]
fn explicit_listing_matches_catalan() {
    for d in 3..=10 {
        let polygon: Vec<usize> = (0..d).collect();
        let all = triangulations(&polygon);
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|t| t.len() == d - 3));
        assert_eq!(all.len() as u64, catalan_triangulations(d));
    }
}

#[test]
fn star_expansions_match_listing() {
    for d in 3..=8 {
        let polygon: Vec<usize> = (0..d).collect();
        let listed = triangulations(&polygon).len() as u64;
        assert_eq!(maximal_expansion_count(d).unwrap(), listed);
    }
}

#[test]
fn maximal_expansions_are_trivalent_trees() {
    let poset = expansion_poset(&zoo::star(6)).unwrap();
    for i in poset.maximal() {
        let g = &poset.nodes[i].graph;
        let mut degrees = g.degrees();
        degrees.sort();
        assert_eq!(degrees, [1, 1, 1, 1, 1, 1, 3, 3, 3, 3]);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.boundary_count(), 1);
        assert_eq!(g.genus().unwrap(), 0);
    }
}
