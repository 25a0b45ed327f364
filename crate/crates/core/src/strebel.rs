//! The Strebel differential on the sphere with three marked points
//! `0, 1, infinity`, in closed form.
//!
//! For perimeters `(a0, a1, ainf)` the differential is
//! `q = -1/(4 pi^2) (a (dx/x)^2 + b (dx/(1-x))^2 + c (dx/(x(1-x)))^2)`.
//! Everything that decides the combinatorial type is computed exactly; only
//! the square root in the location of the zeros is floating point.

use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::map::{zoo, MapError, MetricRibbonGraph};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StrebelError {
    #[error("perimeter {0} is not positive")]
    NonPositivePerimeter(String),
    #[error("length {0} is not positive")]
    NonPositiveLength(String),
    #[error("perimeter {0} is not a finite number")]
    NotFinite(f64),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The three marked points, in the order `0, 1, infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Pole {
    Zero,
    One,
    Infinity,
}

impl Pole {
    pub const ALL: [Pole; 3] = [Pole::Zero, Pole::One, Pole::Infinity];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Pole {
        Pole::ALL[i]
    }
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pole::Zero => "0",
            Pole::One => "1",
            Pole::Infinity => "inf",
        })
    }
}

/// Sign of the discriminant. For the degenerate cases the pole is the one
/// whose perimeter is at least the sum of the other two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StrebelCase {
    Positive,
    Zero(Pole),
    Negative(Pole),
}

/// Length slot shared by the boundaries around two poles: slot 0 is
/// `(0, inf)`, slot 1 is `(1, inf)`, slot 2 is `(0, 1)`.
pub fn length_slot(p: Pole, q: Pole) -> usize {
    assert_ne!(p, q);
    match (p.min(q), p.max(q)) {
        (Pole::Zero, Pole::Infinity) => 0,
        (Pole::One, Pole::Infinity) => 1,
        _ => 2,
    }
}

#[derive(Debug, Clone)]
pub struct Strebel03Solution {
    /// `(a0, a1, ainf)`.
    pub perimeters: [Rational; 3],
    /// `(a, b, c)`.
    pub coefficients: [Rational; 3],
    pub discriminant: Rational,
    pub case: StrebelCase,
    /// The zeros of `q`; equal in the `Zero` case.
    pub zeros: [Complex64; 2],
    /// `(L1, L2, L3)` indexed by [`length_slot`]; one may be zero.
    pub lengths: [Rational; 3],
    pub graph: MetricRibbonGraph,
    /// Pole encircled by each boundary cycle of `graph`.
    pub boundary_poles: Vec<Pole>,
}

fn half(x: Rational) -> Rational {
    x / Rational::from_integer(2.into())
}

/// Coefficients `(a, b, c)` of `q` for the given perimeters.
pub fn coefficients(a0: &Rational, a1: &Rational, ainf: &Rational) -> [Rational; 3] {
    let (s0, s1, si) = (a0 * a0, a1 * a1, ainf * ainf);
    [half(&s0 + &si - &s1), half(&s1 + &si - &s0), half(&s0 + &s1 - &si)]
}

/// The triangle factors `a_P + a_Q - a_X`, indexed by `X`.
fn triangle_factors(p: &[Rational; 3]) -> [Rational; 3] {
    let total: Rational = p.iter().sum();
    std::array::from_fn(|x| &total - &p[x] - &p[x])
}

pub fn solve_m03(a0: &Rational, a1: &Rational, ainf: &Rational) -> Result<Strebel03Solution, StrebelError> {
    for a in [a0, a1, ainf] {
        if !a.is_positive() {
            return Err(StrebelError::NonPositivePerimeter(rational::format(a)));
        }
    }
    let perimeters = [a0.clone(), a1.clone(), ainf.clone()];
    let [a, b, c] = coefficients(a0, a1, ainf);
    let discriminant = &a * &b + &b * &c + &c * &a;

    // at most one triangle factor can be non-positive
    let factors = triangle_factors(&perimeters);
    let case = match (0..3).find(|&x| !factors[x].is_positive()) {
        None => StrebelCase::Positive,
        Some(x) if factors[x].is_zero() => StrebelCase::Zero(Pole::from_index(x)),
        Some(x) => StrebelCase::Negative(Pole::from_index(x)),
    };

    let denom = rational::to_f64(&(&a + &b));
    let center = rational::to_f64(&a) / denom;
    let root = rational::to_f64(&discriminant).abs().sqrt() / denom;
    let zeros = match case {
        StrebelCase::Positive => [Complex64::new(center, root), Complex64::new(center, -root)],
        StrebelCase::Zero(_) => [Complex64::new(center, 0.0); 2],
        StrebelCase::Negative(_) => [Complex64::new(center + root, 0.0), Complex64::new(center - root, 0.0)],
    };

    let (lengths, graph, boundary_poles) = match case {
        StrebelCase::Positive => {
            let lengths = [
                half(factors[Pole::One.index()].clone()),
                half(factors[Pole::Zero.index()].clone()),
                half(factors[Pole::Infinity.index()].clone()),
            ];
            // edges {0,3}, {1,5}, {2,4} carry L1, L2, L3
            let g = zoo::planar_theta();
            let boundary = g.boundary_components();
            let mut poles = vec![Pole::Zero; 3];
            poles[boundary.face_of(1)] = Pole::Infinity;
            poles[boundary.face_of(2)] = Pole::One;
            let metric = MetricRibbonGraph::new(g, lengths.to_vec())?;
            (lengths, metric, poles)
        }
        StrebelCase::Zero(x) | StrebelCase::Negative(x) => {
            let mut others = Pole::ALL.into_iter().filter(|&p| p != x);
            let (p, q) = (others.next().unwrap(), others.next().unwrap());
            let bridge = half(-factors[x.index()].clone());
            let mut lengths: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
            lengths[length_slot(p, x)] = perimeters[p.index()].clone();
            lengths[length_slot(q, x)] = perimeters[q.index()].clone();
            lengths[length_slot(p, q)] = bridge.clone();
            let (g, edge_lengths, loop_p, loop_q, outer) = if matches!(case, StrebelCase::Zero(_)) {
                (
                    zoo::planar_figure_eight(),
                    vec![perimeters[p.index()].clone(), perimeters[q.index()].clone()],
                    1,
                    3,
                    0,
                )
            } else {
                (
                    zoo::dumbbell(),
                    vec![perimeters[p.index()].clone(), bridge, perimeters[q.index()].clone()],
                    1,
                    4,
                    0,
                )
            };
            let boundary = g.boundary_components();
            let mut poles = vec![x; boundary.count()];
            poles[boundary.face_of(loop_p)] = p;
            poles[boundary.face_of(loop_q)] = q;
            poles[boundary.face_of(outer)] = x;
            let metric = MetricRibbonGraph::new(g, edge_lengths)?;
            (lengths, metric, poles)
        }
    };

    Ok(Strebel03Solution {
        perimeters,
        coefficients: [a, b, c],
        discriminant,
        case,
        zeros,
        lengths,
        graph,
        boundary_poles,
    })
}

/// Solves for floating-point perimeters, converting each to the rational it
/// represents exactly.
pub fn solve_m03_f64(a0: f64, a1: f64, ainf: f64) -> Result<Strebel03Solution, StrebelError> {
    let exact = |x: f64| rational::from_f64(x).ok_or(StrebelError::NotFinite(x));
    solve_m03(&exact(a0)?, &exact(a1)?, &exact(ainf)?)
}

/// Inverse of the `Positive` case: `a0 = L1 + L3`, `a1 = L2 + L3`,
/// `ainf = L1 + L2`.
pub fn perimeters_from_lengths(lengths: &[Rational; 3]) -> Result<[Rational; 3], StrebelError> {
    for l in lengths {
        if !l.is_positive() {
            return Err(StrebelError::NonPositiveLength(rational::format(l)));
        }
    }
    let [l1, l2, l3] = lengths;
    Ok([l1 + l3, l2 + l3, l1 + l2])
}

impl Strebel03Solution {
    /// Evaluates `(a+b) x^2 - 2a x + (a+c)`, the numerator of `q` up to the
    /// factor `-1/(4 pi^2 x^2 (1-x)^2)`, at the first zero written exactly
    /// as `p + r t` with `t^2 = -discriminant`. Returns the coefficients of
    /// `1` and `t`, both zero when the zero formula is right.
    pub fn exact_zero_residual(&self) -> (Rational, Rational) {
        let [a, b, c] = &self.coefficients;
        let lead = a + b;
        let p = a / &lead;
        let r = Rational::from_integer(1.into()) / &lead;
        let delta = -self.discriminant.clone();
        // x^2 = p^2 + r^2 delta + 2 p r t
        let sq_re = &p * &p + &r * &r * &delta;
        let sq_t = Rational::from_integer(2.into()) * &p * &r;
        let two_a = Rational::from_integer(2.into()) * a;
        let re = &lead * sq_re - &two_a * &p + (a + c);
        let t = &lead * sq_t - &two_a * &r;
        (re, t)
    }

    /// `|(a+b) x^2 - 2a x + (a+c)|` at both floating-point zeros, relative to
    /// the size of the coefficients.
    pub fn float_zero_residual(&self) -> f64 {
        let [a, b, c] = self.coefficients.each_ref().map(rational::to_f64);
        let scale = a.abs() + b.abs() + c.abs();
        self.zeros
            .iter()
            .map(|x| ((a + b) * x * x - 2.0 * a * x + (a + c)).norm() / scale)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct S3Check {
    pub lengths: [String; 3],
    pub permuted_lengths: [String; 3],
    /// `slot_map[i]` is the slot that slot `i` moves to.
    pub slot_map: [usize; 3],
    pub holds: bool,
}

/// Relabels the poles by `perm` (pole `i` becomes pole `perm[i]`, indices in
/// the order `0, 1, inf`) and checks that the lengths move by the induced
/// permutation of pole pairs.
pub fn s3_action_check(perm: [usize; 3], perimeters: &[Rational; 3]) -> Result<S3Check, StrebelError> {
    let mut sorted = perm;
    sorted.sort();
    assert_eq!(sorted, [0, 1, 2], "not a permutation of the three poles");
    let original = solve_m03(&perimeters[0], &perimeters[1], &perimeters[2])?;
    let mut moved: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
    for i in 0..3 {
        moved[perm[i]] = perimeters[i].clone();
    }
    let permuted = solve_m03(&moved[0], &moved[1], &moved[2])?;
    let image = |i: usize| Pole::from_index(perm[i]);
    let pairs = [(0, 2), (1, 2), (0, 1)];
    let slot_map = pairs.map(|(i, j)| length_slot(image(i), image(j)));
    let holds = (0..3).all(|s| permuted.lengths[slot_map[s]] == original.lengths[s]);
    Ok(S3Check {
        lengths: original.lengths.each_ref().map(rational::format),
        permuted_lengths: permuted.lengths.each_ref().map(rational::format),
        slot_map,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn triple(a: i64, b: i64, c: i64) -> [Rational; 3] {
        [int(a), int(b), int(c)]
    }

    fn solve(p: [Rational; 3]) -> Strebel03Solution {
        solve_m03(&p[0], &p[1], &p[2]).unwrap()
    }

    #[test]
    fn equilateral_case() {
        let s = solve(triple(2, 2, 2));
        assert_eq!(s.case, StrebelCase::Positive);
        assert_eq!(s.coefficients, triple(2, 2, 2));
        assert_eq!(s.lengths, triple(1, 1, 1));
        let expected = Complex64::new(0.5, 3f64.sqrt() / 2.0);
        assert!((s.zeros[0] - expected).norm() < 1e-12);
        assert!((s.zeros[1] - expected.conj()).norm() < 1e-12);
        assert_eq!(s.exact_zero_residual(), (int(0), int(0)));
    }

    #[test]
    fn zero_wall() {
        let s = solve(triple(1, 1, 2));
        assert_eq!(s.case, StrebelCase::Zero(Pole::Infinity));
        assert_eq!(s.discriminant, int(0));
        assert_eq!(s.lengths, triple(1, 1, 0));
        assert_eq!(s.graph.graph().edge_count(), 2);
        assert_eq!(s.zeros[0], s.zeros[1]);
        assert_eq!(s.exact_zero_residual(), (int(0), int(0)));
    }

    #[test]
    fn negative_chamber() {
        let s = solve(triple(1, 1, 3));
        assert_eq!(s.case, StrebelCase::Negative(Pole::Infinity));
        assert_eq!(s.lengths, [int(1), int(1), ratio(1, 2)]);
        assert!(s.zeros.iter().all(|z| z.im == 0.0));
        assert_eq!(s.exact_zero_residual(), (int(0), int(0)));
        assert!(s.float_zero_residual() < 1e-10);
    }

    #[test]
    fn other_walls_are_tagged_by_their_pole() {
        assert_eq!(solve(triple(3, 1, 1)).case, StrebelCase::Negative(Pole::Zero));
        assert_eq!(solve(triple(1, 2, 1)).case, StrebelCase::Zero(Pole::One));
    }

    #[test]
    fn boundary_perimeters_match_poles() {
        for p in [
            triple(2, 2, 2),
            triple(3, 4, 5),
            triple(1, 1, 2),
            triple(1, 1, 3),
            triple(5, 1, 2),
            triple(1, 4, 2),
        ] {
            let s = solve(p.clone());
            let perims = s.graph.perimeters();
            for (face, pole) in s.boundary_poles.iter().enumerate() {
                assert_eq!(perims[face], p[pole.index()], "{p:?} face {face}");
            }
        }
    }

    #[test]
    fn discriminant_factorization() {
        for p in [triple(2, 3, 4), triple(1, 1, 5), triple(7, 3, 4)] {
            let s = solve(p.clone());
            let total: Rational = p.iter().sum();
            let product = triangle_factors(&p).iter().fold(total, |acc, f| acc * f);
            assert_eq!(s.discriminant, product / int(4));
        }
    }

    #[test]
    fn lengths_to_perimeters() {
        assert_eq!(perimeters_from_lengths(&triple(1, 1, 1)).unwrap(), triple(2, 2, 2));
        assert_eq!(perimeters_from_lengths(&triple(1, 2, 3)).unwrap(), triple(4, 5, 3));
        assert!(perimeters_from_lengths(&triple(1, 0, 3)).is_err());
    }

    #[test]
    fn rejects_nonpositive_perimeters() {
        assert!(matches!(
            solve_m03(&int(0), &int(1), &int(1)),
            Err(StrebelError::NonPositivePerimeter(_))
        ));
    }

    #[test]
    fn s3_swaps_lengths() {
        let p = perimeters_from_lengths(&triple(1, 2, 4)).unwrap();
        let check = s3_action_check([1, 0, 2], &p).unwrap();
        assert!(check.holds);
        assert_eq!(check.slot_map, [1, 0, 2]);
        let id = s3_action_check([0, 1, 2], &p).unwrap();
        assert_eq!(id.lengths, id.permuted_lengths);
        let cyc = s3_action_check([1, 2, 0], &triple(2, 2, 2)).unwrap();
        assert!(cyc.holds);
        assert_eq!(cyc.lengths, cyc.permuted_lengths);
    }

    #[test]
    fn float_inputs_are_exact() {
        let s = solve_m03_f64(2.0, 2.0, 2.0).unwrap();
        assert_eq!(s.lengths, triple(1, 1, 1));
        assert!(solve_m03_f64(f64::NAN, 1.0, 1.0).is_err());
    }
}
