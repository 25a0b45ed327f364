//! Weierstrass functions on the lattices `scale * (Z + Z tau)` and the two
//! Strebel differentials on the square and hexagonal tori.
//!
//! `wp` sums the lattice row by row: the row `m + n tau, m in Z` has the
//! closed sum `pi^2 / sin^2(pi (z - n tau)) - pi^2 / sin^2(pi n tau)`, so the
//! rows decay like `exp(-2 pi |n| Im tau)` and `truncation` counts rows.
//! The invariants use the Lipschitz `q`-expansion of the Eisenstein series.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub const MIN_TRUNCATION: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("tau = {0} is not in the upper half plane")]
    NotInUpperHalfPlane(Complex64),
    #[error("truncation {0} is below the minimum {MIN_TRUNCATION}")]
    TruncationTooSmall(usize),
    #[error("scale must be non-zero")]
    ZeroScale,
    #[error("z = {0} is a lattice point")]
    PoleAtLatticePoint(Complex64),
    #[error("only tau = i and tau = exp(i pi / 3) can be normalized, got {0}")]
    UnsupportedTau(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lattice {
    pub tau: Complex64,
    pub scale: Complex64,
    pub truncation: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EllipticCase {
    Square,
    Hexagonal,
}

impl EllipticCase {
    pub fn tau(self) -> Complex64 {
        match self {
            EllipticCase::Square => Complex64::i(),
            EllipticCase::Hexagonal => Complex64::from_polar(1.0, PI / 3.0),
        }
    }

    /// Degree `k` of the map `wp^k` to the sphere.
    pub fn power(self) -> u32 {
        match self {
            EllipticCase::Square => 2,
            EllipticCase::Hexagonal => 3,
        }
    }

    fn classify(tau: Complex64) -> Option<Self> {
        [EllipticCase::Square, EllipticCase::Hexagonal]
            .into_iter()
            .find(|c| (c.tau() - tau).norm() < 1e-12)
    }
}

/// `1 / sin^2(pi w)` without overflow for large `|Im w|`.
fn csc2(w: Complex64) -> Complex64 {
    let q = if w.im >= 0.0 {
        (Complex64::new(0.0, 2.0 * PI) * w).exp()
    } else {
        (Complex64::new(0.0, -2.0 * PI) * w).exp()
    };
    -4.0 * q / ((1.0 - q) * (1.0 - q))
}

/// `cot(pi w)`, written through the decaying exponential.
fn cot(w: Complex64) -> Complex64 {
    if w.im >= 0.0 {
        let q = (Complex64::new(0.0, 2.0 * PI) * w).exp();
        Complex64::i() * (1.0 + q) / (q - 1.0)
    } else {
        let q = (Complex64::new(0.0, -2.0 * PI) * w).exp();
        Complex64::i() * (1.0 + q) / (1.0 - q)
    }
}

fn sigma(k: u32, n: u64) -> f64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| (d as f64).powi(k as i32))
        .sum()
}

impl Lattice {
    pub fn new(tau: Complex64, scale: Complex64, truncation: usize) -> Result<Self, EllipticError> {
        if tau.im <= 0.0 || !tau.is_finite() {
            return Err(EllipticError::NotInUpperHalfPlane(tau));
        }
        if truncation < MIN_TRUNCATION {
            return Err(EllipticError::TruncationTooSmall(truncation));
        }
        if scale.norm() == 0.0 || !scale.is_finite() {
            return Err(EllipticError::ZeroScale);
        }
        Ok(Lattice { tau, scale, truncation })
    }

    /// `Z + Z tau` with the default truncation.
    pub fn unit(tau: Complex64) -> Result<Self, EllipticError> {
        Self::new(tau, Complex64::new(1.0, 0.0), 2 * MIN_TRUNCATION)
    }

    pub fn with_truncation(&self, truncation: usize) -> Self {
        Lattice { truncation, ..*self }
    }

    /// Half periods `scale/2`, `scale (1 + tau)/2`, `scale tau/2`.
    pub fn half_periods(&self) -> [Complex64; 3] {
        [
            self.scale / 2.0,
            self.scale * (1.0 + self.tau) / 2.0,
            self.scale * self.tau / 2.0,
        ]
    }

    /// Position of `z` in lattice coordinates, reduced near the origin.
    fn reduce(&self, z: Complex64) -> Result<Complex64, EllipticError> {
        let w = z / self.scale;
        let n = (w.im / self.tau.im).round();
        let shifted = w - n * self.tau;
        let m = shifted.re.round();
        let reduced = shifted - m;
        if reduced.norm() < 1e-14 {
            return Err(EllipticError::PoleAtLatticePoint(z));
        }
        Ok(reduced)
    }

    /// `wp(z)`.
    pub fn wp(&self, z: Complex64) -> Result<Complex64, EllipticError> {
        let w = self.reduce(z)?;
        let pi2 = PI * PI;
        let mut sum = pi2 * csc2(w) - pi2 / 3.0;
        for n in 1..=self.truncation as i64 {
            let nt = self.tau * n as f64;
            sum += pi2 * (csc2(w - nt) + csc2(w + nt) - 2.0 * csc2(nt));
        }
        Ok(sum / (self.scale * self.scale))
    }

    /// `wp'(z)`, the row sums differentiated term by term.
    pub fn wp_prime(&self, z: Complex64) -> Result<Complex64, EllipticError> {
        let w = self.reduce(z)?;
        let row = |v: Complex64| -2.0 * PI.powi(3) * cot(v) * csc2(v);
        let mut sum = row(w);
        for n in 1..=self.truncation as i64 {
            let nt = self.tau * n as f64;
            sum += row(w - nt) + row(w + nt);
        }
        Ok(sum / (self.scale * self.scale * self.scale))
    }

    /// `G_{2k}(tau) = sum' (m + n tau)^(-2k)` for the unit lattice.
    fn eisenstein(&self, k: u32, zeta: f64) -> Complex64 {
        let q = (Complex64::new(0.0, 2.0 * PI) * self.tau).exp();
        let factorial: f64 = (1..2 * k).map(|i| i as f64).product();
        let coefficient = 2.0 * Complex64::new(0.0, 2.0 * PI).powu(2 * k) / factorial;
        let terms = 4 * self.truncation as u64;
        let series: Complex64 = (1..=terms).map(|n| sigma(2 * k - 1, n) * q.powu(n as u32)).sum();
        2.0 * zeta + coefficient * series
    }

    /// `(g2, g3) = (60 G4, 140 G6)` of the scaled lattice.
    pub fn invariants(&self) -> (Complex64, Complex64) {
        let g4 = self.eisenstein(2, PI.powi(4) / 90.0);
        let g6 = self.eisenstein(3, PI.powi(6) / 945.0);
        (60.0 * g4 / self.scale.powu(4), 140.0 * g6 / self.scale.powu(6))
    }

    /// `(e1, e2, e3)`, the values at the half periods.
    pub fn e_values(&self) -> Result<[Complex64; 3], EllipticError> {
        let [w1, w2, w3] = self.half_periods();
        Ok([self.wp(w1)?, self.wp(w2)?, self.wp(w3)?])
    }
}

/// Rescales a square lattice to `(g2, g3) = (4, 0)` or a hexagonal one to
/// `(0, 4)`.
pub fn normalize(lattice: &Lattice) -> Result<Lattice, EllipticError> {
    let case = EllipticCase::classify(lattice.tau).ok_or(EllipticError::UnsupportedTau(lattice.tau))?;
    let (g2, g3) = lattice.invariants();
    // g2 scales by lambda^-4 and g3 by lambda^-6
    let lambda = match case {
        EllipticCase::Square => (g2 / 4.0).powf(0.25),
        EllipticCase::Hexagonal => (g3 / 4.0).powf(1.0 / 6.0),
    };
    Ok(Lattice {
        scale: lattice.scale * lambda,
        ..*lattice
    })
}

pub fn normalized(case: EllipticCase) -> Lattice {
    normalize(&Lattice::unit(case.tau()).expect("valid tau")).expect("supported tau")
}

/// Both sides of `-(k^2/pi^2) wp (1 - wp^k) = k^2 wp^(k-2) wp'^2 / (4 pi^2)`,
/// the pullback `q = (d wp^k)^2 / (4 pi^2 wp^k (1 - wp^k))` with the
/// denominator cleared.
pub fn pullback_sides(
    case: EllipticCase,
    lattice: &Lattice,
    z: Complex64,
) -> Result<(Complex64, Complex64), EllipticError> {
    let k = case.power();
    let kk = (k * k) as f64;
    let p = lattice.wp(z)?;
    let dp = lattice.wp_prime(z)?;
    let strebel = -kk / (PI * PI) * p * (1.0 - p.powu(k));
    let pulled = kk * p.powu(k - 2) * dp * dp / (4.0 * PI * PI);
    Ok((strebel, pulled))
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Points of the fundamental parallelogram at least `margin` periods away
/// from the lattice.
pub fn sample_points(lattice: &Lattice, samples: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let (s, t) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        let w = Complex64::new(s, 0.0) + lattice.tau * t;
        let near = [0.0, 1.0]
            .iter()
            .flat_map(|&a| [0.0, 1.0].map(|b| w - a - lattice.tau * b))
            .any(|d| d.norm() < 0.05);
        if !near {
            out.push(w * lattice.scale);
        }
    }
    out
}

/// Largest relative defect of the pullback identity over random points.
pub fn pullback_residual(case: EllipticCase, samples: usize) -> Result<f64, EllipticError> {
    let lattice = normalized(case);
    let mut worst: f64 = 0.0;
    for z in sample_points(&lattice, samples, 0xe11) {
        let (a, b) = pullback_sides(case, &lattice, z)?;
        worst = worst.max(relative(a, b));
    }
    Ok(worst)
}

/// Largest relative defect of `wp'^2 = 4 wp^3 - g2 wp - g3`.
pub fn ode_residual(lattice: &Lattice, samples: usize) -> Result<f64, EllipticError> {
    let (g2, g3) = lattice.invariants();
    let mut worst: f64 = 0.0;
    for z in sample_points(lattice, samples, 0x0de) {
        let p = lattice.wp(z)?;
        let dp = lattice.wp_prime(z)?;
        worst = worst.max(relative(dp * dp, 4.0 * p * p * p - g2 * p - g3));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Serialize)]
pub struct EllipticReport {
    pub case: EllipticCase,
    pub tau: Complex64,
    /// Scale taking `Z + Z tau` to the normalized lattice.
    pub scale: Complex64,
    pub g2: Complex64,
    pub g3: Complex64,
    pub e_values: [Complex64; 3],
    pub expected_e_values: [Complex64; 3],
    pub e_value_error: f64,
    pub pullback_residual: f64,
    pub ode_residual: f64,
    pub samples: usize,
}

pub fn expected_e_values(case: EllipticCase) -> [Complex64; 3] {
    match case {
        EllipticCase::Square => [1.0, 0.0, -1.0].map(|x| Complex64::new(x, 0.0)),
        EllipticCase::Hexagonal => [0.0, 2.0, 4.0].map(|k| Complex64::from_polar(1.0, k * PI / 3.0)),
    }
}

pub fn report(case: EllipticCase, samples: usize) -> Result<EllipticReport, EllipticError> {
    let lattice = normalized(case);
    let (g2, g3) = lattice.invariants();
    let e_values = lattice.e_values()?;
    let expected = expected_e_values(case);
    let e_value_error = e_values
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(EllipticReport {
        case,
        tau: lattice.tau,
        scale: lattice.scale,
        g2,
        g3,
        e_values,
        expected_e_values: expected,
        e_value_error,
        pullback_residual: pullback_residual(case, samples)?,
        ode_residual: ode_residual(&lattice, samples)?,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Symmetric box sum of the defining series, a slow independent check.
    fn wp_box(lattice: &Lattice, z: Complex64, radius: i64) -> Complex64 {
        let mut sum = 1.0 / (z * z);
        for m in -radius..=radius {
            for n in -radius..=radius {
                if (m, n) == (0, 0) {
                    continue;
                }
                let w = lattice.scale * (m as f64 + lattice.tau * n as f64);
                sum += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
            }
        }
        sum
    }

    fn eisenstein_box(lattice: &Lattice, power: i32, radius: i64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for m in -radius..=radius {
            for n in -radius..=radius {
                if (m, n) != (0, 0) {
                    sum += (lattice.scale * (m as f64 + lattice.tau * n as f64)).powi(-power);
                }
            }
        }
        sum
    }

    fn tau_hex() -> Complex64 {
        EllipticCase::Hexagonal.tau()
    }

    #[test]
    fn matches_box_sums() {
        for tau in [Complex64::i(), tau_hex(), Complex64::new(0.3, 1.7)] {
            let l = Lattice::unit(tau).unwrap();
            for z in [
                Complex64::new(0.21, 0.13),
                Complex64::new(0.4, 0.35),
                l.half_periods()[1],
            ] {
                let fast = l.wp(z).unwrap();
                let slow = wp_box(&l, z, 400);
                assert!((fast - slow).norm() < 1e-4, "tau {tau} z {z}: {fast} vs {slow}");
            }
            let (g2, g3) = l.invariants();
            assert!((g2 - 60.0 * eisenstein_box(&l, 4, 200)).norm() < 1e-3 * g2.norm().max(1.0));
            assert!((g3 - 140.0 * eisenstein_box(&l, 6, 100)).norm() < 1e-4 * g3.norm().max(1.0));
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let l = Lattice::unit(Complex64::new(-0.2, 1.1)).unwrap();
        let z = Complex64::new(0.31, 0.27);
        let h = 1e-5;
        let numeric = (l.wp(z + h).unwrap() - l.wp(z - h).unwrap()) / (2.0 * h);
        assert!((numeric - l.wp_prime(z).unwrap()).norm() < 1e-6 * numeric.norm());
    }

    #[test]
    fn symmetries() {
        let l = Lattice::unit(Complex64::i()).unwrap();
        for z in sample_points(&l, 20, 1) {
            let p = l.wp(z).unwrap();
            assert!((l.wp(-z).unwrap() - p).norm() < 1e-10 * p.norm().max(1.0));
            assert!((l.wp(Complex64::i() * z).unwrap() + p).norm() < 1e-8 * p.norm().max(1.0));
        }
    }

    #[test]
    fn truncation_is_converged() {
        for tau in [Complex64::i(), tau_hex()] {
            let l = Lattice::new(tau, Complex64::new(1.0, 0.0), MIN_TRUNCATION).unwrap();
            let doubled = l.with_truncation(2 * MIN_TRUNCATION);
            for z in sample_points(&l, 20, 2) {
                assert!((l.wp(z).unwrap() - doubled.wp(z).unwrap()).norm() < 1e-8);
            }
            let (a, b) = (l.invariants(), doubled.invariants());
            assert!((a.0 - b.0).norm() < 1e-8 && (a.1 - b.1).norm() < 1e-8);
        }
    }

    #[test]
    fn symmetric_lattices_kill_one_invariant() {
        assert!(Lattice::unit(Complex64::i()).unwrap().invariants().1.norm() < 1e-8);
        assert!(Lattice::unit(tau_hex()).unwrap().invariants().0.norm() < 1e-8);
    }

    #[test]
    fn homogeneity() {
        let l = Lattice::unit(Complex64::new(0.1, 1.3)).unwrap();
        let lambda = Complex64::new(0.8, 0.6) * 1.7;
        let scaled = Lattice { scale: lambda, ..l };
        let (g2, _) = l.invariants();
        let (g2s, _) = scaled.invariants();
        assert!((g2s - g2 / lambda.powu(4)).norm() < 1e-8 * g2.norm());
        let z = Complex64::new(0.23, 0.41);
        let p = l.wp(z).unwrap();
        assert!((scaled.wp(lambda * z).unwrap() - p / (lambda * lambda)).norm() < 1e-8 * p.norm());
    }

    #[test]
    fn normalized_square() {
        let l = normalized(EllipticCase::Square);
        let (g2, g3) = l.invariants();
        assert!((g2 - 4.0).norm() < 1e-10 && g3.norm() < 1e-10);
        let e = l.e_values().unwrap();
        for (a, b) in e.iter().zip(expected_e_values(EllipticCase::Square)) {
            assert!((a - b).norm() < 1e-6);
        }
        assert!((e[0] + e[1] + e[2]).norm() < 1e-8);
        let again = normalize(&l).unwrap();
        assert!((again.scale - l.scale).norm() < 1e-10);
    }

    #[test]
    fn normalized_hexagonal() {
        let l = normalized(EllipticCase::Hexagonal);
        let (g2, g3) = l.invariants();
        assert!(g2.norm() < 1e-10 && (g3 - 4.0).norm() < 1e-10);
        let e = l.e_values().unwrap();
        for (a, b) in e.iter().zip(expected_e_values(EllipticCase::Hexagonal)) {
            assert!((a - b).norm() < 1e-6, "{a} vs {b}");
        }
        assert!((e[0] + e[1] + e[2]).norm() < 1e-8);
    }

    #[test]
    fn other_tau_is_unsupported() {
        let l = Lattice::unit(Complex64::new(0.0, 2.0)).unwrap();
        assert!(matches!(normalize(&l), Err(EllipticError::UnsupportedTau(_))));
    }

    #[test]
    fn pullbacks_and_ode() {
        assert!(pullback_residual(EllipticCase::Square, 50).unwrap() < 1e-6);
        assert!(pullback_residual(EllipticCase::Hexagonal, 50).unwrap() < 1e-6);
        for case in [EllipticCase::Square, EllipticCase::Hexagonal] {
            assert!(ode_residual(&normalized(case), 50).unwrap() < 1e-6);
        }
        let l = normalized(EllipticCase::Square);
        let (a, b) = pullback_sides(EllipticCase::Square, &l, l.half_periods()[1]).unwrap();
        assert!(a.norm() < 1e-6 && b.norm() < 1e-6);
    }

    #[test]
    fn errors() {
        assert!(Lattice::unit(Complex64::new(0.0, -1.0)).is_err());
        assert!(Lattice::new(Complex64::i(), Complex64::new(1.0, 0.0), 3).is_err());
        let l = Lattice::unit(Complex64::i()).unwrap();
        assert!(matches!(
            l.wp(Complex64::new(1.0, 1.0)),
            Err(EllipticError::PoleAtLatticePoint(_))
        ));
    }
}
