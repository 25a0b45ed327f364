//! Brute-force cross-checks of the census: every pairing for every vertex
//! rotation of each degree type, deduplicated by a dart-chasing isomorphism
//! test written here, and the mass formula for the Euler characteristic.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use ribbonlab::census::{enumerate, CensusOptions};
use ribbonlab::characteristic::{chi_sum, ChiMode};
use ribbonlab::symmetry::canonical_form;
use ribbonlab::RibbonGraph;

#[derive(Clone)]
struct RawMap {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
}

fn degree_types(total: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (3..=max.min(total)).rev() {
        for mut rest in degree_types(total - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn rotation(degrees: &[usize]) -> Vec<usize> {
    let mut sigma = Vec::new();
    let mut start = 0;
    for &d in degrees {
        for i in 0..d {
            sigma.push(start + (i + 1) % d);
        }
        start += d;
    }
    sigma
}

fn pairings(n: usize) -> Vec<Vec<usize>> {
    fn go(alpha: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = alpha.iter().position(|&x| x == usize::MAX) else {
            out.push(alpha.clone());
            return;
        };
        for b in a + 1..alpha.len() {
            if alpha[b] == usize::MAX {
                alpha[a] = b;
                alpha[b] = a;
                go(alpha, out);
                alpha[a] = usize::MAX;
                alpha[b] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], &mut out);
    out
}

fn faces(m: &RawMap) -> usize {
    let n = m.sigma.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if !seen[s] {
            count += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = m.sigma[m.alpha[d]];
            }
        }
    }
    count
}

fn connected(m: &RawMap) -> bool {
    let n = m.sigma.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(d) = stack.pop() {
        for next in [m.sigma[d], m.alpha[d]] {
            if !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn maps_to(a: &RawMap, b: &RawMap, target: usize) -> bool {
    let n = a.sigma.len();
    let mut f = vec![usize::MAX; n];
    f[0] = target;
    let mut stack = vec![0];
    while let Some(d) = stack.pop() {
        for (next, image) in [(a.sigma[d], b.sigma[f[d]]), (a.alpha[d], b.alpha[f[d]])] {
            if f[next] == usize::MAX {
                f[next] = image;
                stack.push(next);
            } else if f[next] != image {
                return false;
            }
        }
    }
    let mut hit = vec![false; n];
    f.iter().all(|&x| !std::mem::replace(&mut hit[x], true))
}

fn isomorphic(a: &RawMap, b: &RawMap) -> bool {
    a.sigma.len() == b.sigma.len() && (0..a.sigma.len()).any(|t| maps_to(a, b, t))
}

fn aut_order(a: &RawMap) -> usize {
    (0..a.sigma.len()).filter(|&t| maps_to(a, a, t)).count()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn centralizer(degrees: &[usize]) -> BigInt {
    let mut c = BigInt::from(1);
    let mut i = 0;
    while i < degrees.len() {
        let k = degrees[i];
        let m = degrees[i..].iter().take_while(|&&d| d == k).count();
        c *= BigInt::from(k).pow(m as u32) * factorial(m);
        i += m;
    }
    c
}

struct Oracle {
    classes: Vec<RawMap>,
    chi: BigRational,
}

fn oracle(g: usize, n: usize) -> Oracle {
    let mut classes: Vec<RawMap> = Vec::new();
    let mut chi = BigRational::from_integer(0.into());
    for e in 1..=6 * g + 3 * n - 6 {
        let Some(v) = (e + 2).checked_sub(2 * g + n) else {
            continue;
        };
        if v == 0 || 3 * v > 2 * e {
            continue;
        }
        let all = pairings(2 * e);
        for degrees in degree_types(2 * e, v, 2 * e) {
            let sigma = rotation(&degrees);
            let mut good = 0i64;
            for alpha in &all {
                let m = RawMap {
                    sigma: sigma.clone(),
                    alpha: alpha.clone(),
                };
                if faces(&m) != n || !connected(&m) {
                    continue;
                }
                good += 1;
                if !classes.iter().any(|c| isomorphic(c, &m)) {
                    classes.push(m);
                }
            }
            let sign = if e % 2 == 0 { 1 } else { -1 };
            chi += BigRational::new(BigInt::from(sign * good), centralizer(&degrees));
        }
    }
    Oracle { classes, chi }
}

fn check(g: usize, n: usize, expected_classes: usize) {
    let census = enumerate(g, n, &CensusOptions::default()).unwrap();
    let o = oracle(g, n);
    assert_eq!(o.classes.len(), expected_classes);
    assert_eq!(census.len(), o.classes.len());

    let mut theirs: Vec<(usize, usize)> = census.entries.iter().map(|e| (e.edges, e.aut_order)).collect();
    let mut ours: Vec<(usize, usize)> = o.classes.iter().map(|c| (c.sigma.len() / 2, aut_order(c))).collect();
    theirs.sort();
    ours.sort();
    assert_eq!(theirs, ours);

    let forms: HashSet<_> = o
        .classes
        .iter()
        .map(|c| canonical_form(&RibbonGraph::build(c.sigma.len(), c.sigma.clone(), c.alpha.clone(), 3).unwrap()))
        .collect();
    assert_eq!(forms, census.forms().into_iter().collect());

    assert_eq!(chi_sum(&census, ChiMode::Plain).unwrap(), o.chi);
}

#[test]
fn torus_one_boundary() {
    check(1, 1, 2);
}

#[test]
fn sphere_three_boundaries() {
    check(0, 3, 3);
}

#[test]
fn sphere_four_boundaries() {
    let census = enumerate(0, 4, &CensusOptions::default()).unwrap();
    check(0, 4, census.len());
}

#[test]
fn torus_two_boundaries() {
    let census = enumerate(1, 2, &CensusOptions::default()).unwrap();
    check(1, 2, census.len());
}
