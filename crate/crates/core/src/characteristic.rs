//! Orbifold Euler characteristics of the spaces of metric ribbon graphs,
//! computed exactly: as sums over a census, by the closed form through
//! `zeta(1 - 2g)`, and for quotients of the open orthant.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::census::{labeling_orbits_with_stabilizers, Census};
use crate::permutation::Permutation;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChiError {
    #[error("census for ({g}, {n}) is incomplete")]
    IncompleteCensus { g: usize, n: usize },
    #[error("relaxed-degree censuses carry no Euler characteristic")]
    RelaxedCensus,
    #[error("the closed form is stated for g >= 1 only")]
    GenusZeroUnsupported,
    #[error("no moduli space for g = {g}, n = {n}")]
    UnsatisfiableParameters { g: usize, n: usize },
    #[error("group does not act faithfully on the coordinate axes")]
    NotFaithful,
    #[error("Bernoulli index {0} must be even")]
    OddIndex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiMode {
    /// `sum (-1)^e / |Aut|` over isomorphism classes.
    Plain,
    /// Plain, with the generic `Z/2` of every `(1,1)` graph divided out.
    Orbifold,
    /// Over boundary-labelled classes, each weighted by its own isotropy.
    Labeled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiReport {
    pub g: usize,
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub chi_plain: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub chi_orbifold: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub chi_labeled: Rational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub closed_form: Option<Rational>,
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::format(x))
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_rational(x, s),
        None => s.serialize_none(),
    }
}

/// `B_m` from `sum_{k=0}^{m} C(m+1, k) B_k = 0`, `B_0 = 1`.
pub fn bernoulli(m: usize) -> Result<Rational, ChiError> {
    if m % 2 == 1 && m != 1 {
        return Err(ChiError::OddIndex(m));
    }
    let mut b: Vec<Rational> = vec![Rational::one()];
    for j in 1..=m {
        let sum = (0..j).fold(Rational::zero(), |acc, k| {
            acc + Rational::from_integer(binomial(BigInt::from(j + 1), BigInt::from(k))) * &b[k]
        });
        b.push(-sum / Rational::from_integer(BigInt::from(j + 1)));
    }
    Ok(b.swap_remove(m))
}

/// `zeta(1 - 2g) = -B_{2g} / (2g)`.
pub fn zeta_one_minus_2g(g: usize) -> Rational {
    assert!(g >= 1, "zeta(1 - 2g) needs g >= 1");
    -bernoulli(2 * g).expect("even index") / Rational::from_integer(BigInt::from(2 * g))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn signed_unit(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn chi_sum(census: &Census, mode: ChiMode) -> Result<Rational, ChiError> {
    let (g, n) = (census.genus, census.boundaries);
    if !census.complete {
        return Err(ChiError::IncompleteCensus { g, n });
    }
    if census.relaxed_degrees {
        return Err(ChiError::RelaxedCensus);
    }
    // every (1,1) graph has the elliptic involution acting trivially on the
    // moduli, so its isotropy is half of |Aut|
    let generic = if (g, n) == (1, 1) { 2 } else { 1 };
    let mut terms: Vec<Rational> = Vec::new();
    for entry in &census.entries {
        match mode {
            ChiMode::Plain => terms.push(signed_unit(entry.edges) / BigInt::from(entry.aut_order)),
            ChiMode::Orbifold => {
                terms.push(signed_unit(entry.edges) * BigInt::from(generic) / BigInt::from(entry.aut_order))
            }
            ChiMode::Labeled => {
                for (_, stabilizer) in labeling_orbits_with_stabilizers(&entry.graph) {
                    terms.push(signed_unit(entry.edges) * BigInt::from(generic) / BigInt::from(stabilizer));
                }
            }
        }
    }
    terms.sort();
    Ok(terms.into_iter().fold(Rational::zero(), |acc, t| acc + t))
}

/// `-(2g+n-3)! (2g)(2g-1) / ((2g)! n!) * zeta(1 - 2g)`.
pub fn chi_closed_form(g: usize, n: usize) -> Result<Rational, ChiError> {
    if g == 0 {
        return Err(ChiError::GenusZeroUnsupported);
    }
    if n == 0 || 2 * g + n <= 2 {
        return Err(ChiError::UnsatisfiableParameters { g, n });
    }
    let numer = factorial(2 * g + n - 3) * BigInt::from(2 * g) * BigInt::from(2 * g - 1);
    let denom = factorial(2 * g) * factorial(n);
    Ok(-Rational::new(numer, denom) * zeta_one_minus_2g(g))
}

/// Compositions of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for m in 1..=rest {
            prefix.push(m);
            go(rest - m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::new(), &mut out);
    }
    out
}

/// `-sum_k (-1)^k sum_{m_0 + .. + m_k = n} 1 / (m_0! .. m_k!)`, the Euler
/// characteristic of the open orthant modulo the symmetric group computed
/// cell by cell.
pub fn composition_identity(n: usize) -> Rational {
    assert!(n >= 1);
    let total = compositions(n).into_iter().fold(Rational::zero(), |acc, parts| {
        let k = parts.len() - 1;
        let denom = parts.iter().fold(BigInt::one(), |d, &m| d * factorial(m));
        acc + signed_unit(k) / denom
    });
    -total
}

/// `(-1)^n / |G|` for a group acting on the `n` coordinate axes of the open
/// orthant. `action` sends each element of `group` to its permutation of the
/// axes; it must be injective.
pub fn chi_orbifold_quotient<F>(n: usize, group: &[Permutation], action: F) -> Result<Rational, ChiError>
where
    F: Fn(&Permutation) -> Permutation,
{
    let mut images: Vec<Permutation> = group.iter().map(&action).collect();
    assert!(images.iter().all(|p| p.len() == n), "action must permute n axes");
    images.sort();
    images.dedup();
    if images.len() != group.len() {
        return Err(ChiError::NotFaithful);
    }
    Ok(signed_unit(n) / BigInt::from(group.len()))
}

/// All three census sums, plus the closed form when it applies.
pub fn chi_report(census: &Census) -> Result<ChiReport, ChiError> {
    let (g, n) = (census.genus, census.boundaries);
    Ok(ChiReport {
        g,
        n,
        chi_plain: chi_sum(census, ChiMode::Plain)?,
        chi_orbifold: chi_sum(census, ChiMode::Orbifold)?,
        chi_labeled: chi_sum(census, ChiMode::Labeled)?,
        closed_form: chi_closed_form(g, n).ok(),
    })
}
