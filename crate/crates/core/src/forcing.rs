//! Forcing numbers, Clar number, forcing polynomial and spectrum.
//!
//! Three routes to `f(G, M)`:
//!
//! * [`forcing_number_oracle`]: smallest `S ⊆ M` contained in no other
//!   perfect matching, by iterative deepening over subsets.
//! * [`forcing_number_cycles`]: the maximum number of pairwise
//!   vertex-disjoint `M`-alternating cycles (valid for every plane
//!   bipartite graph).
//! * [`forcing_number_resonant`]: the maximum number of pairwise
//!   vertex-disjoint `M`-alternating squares, valid for `G_n` and `H_n`
//!   where every vertex lies on the outer boundary.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::bitset::EdgeSet;
use crate::clique::{adjacency, max_clique, max_independent_set};
use crate::error::{Error, Result};
use crate::lattice::PolyominoGraph;
use crate::matching::{
    alternating_cycles, alternating_squares, are_disjoint, enumerate_perfect_matchings, Matching,
};
use crate::poly::IntPolynomial;
use crate::Limits;

/// Pairwise vertex-disjoint `M`-alternating faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonantSet {
    pub faces: Vec<usize>,
    pub matching: Matching,
}

impl ResonantSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Forcing oracle that holds the full matching list of one graph, so it
/// can be queried for every matching without re-enumerating.
pub struct ForcingOracle {
    matchings: Vec<Matching>,
    limit: usize,
}

impl ForcingOracle {
    pub fn new(g: &PolyominoGraph, limits: &Limits) -> Self {
        ForcingOracle {
            matchings: enumerate_perfect_matchings(g).collect(),
            limit: limits.forcing_oracle,
        }
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    /// Minimum size of a forcing set of `m`, with one such set.
    pub fn minimum_forcing_set(&self, m: &Matching) -> Result<(usize, EdgeSet)> {
        if !self.matchings.contains(m) {
            return Err(Error::NotPerfectMatching);
        }
        if m.len() > self.limit {
            return Err(Error::SizeLimitExceeded {
                what: "forcing oracle matching size",
                size: m.len(),
                limit: self.limit,
            });
        }
        let others: Vec<&EdgeSet> = self
            .matchings
            .iter()
            .filter(|other| *other != m)
            .map(Matching::edges)
            .collect();
        let own: Vec<usize> = m.edges().iter().collect();
        for k in 0..=own.len() {
            for subset in own.iter().copied().combinations(k) {
                let s = EdgeSet::from_indices(m.edges().capacity(), subset);
                if others.iter().all(|other| !s.is_subset(other)) {
                    return Ok((k, s));
                }
            }
        }
        unreachable!("M itself is contained in no other perfect matching")
    }

    pub fn forcing_number(&self, m: &Matching) -> Result<usize> {
        self.minimum_forcing_set(m).map(|(k, _)| k)
    }
}

/// Definitional forcing number; enumerates all perfect matchings of `g`.
pub fn forcing_number_oracle(g: &PolyominoGraph, m: &Matching, limits: &Limits) -> Result<usize> {
    if !m.is_perfect(g) {
        return Err(Error::NotPerfectMatching);
    }
    if m.len() > limits.forcing_oracle {
        return Err(Error::SizeLimitExceeded {
            what: "forcing oracle matching size",
            size: m.len(),
            limit: limits.forcing_oracle,
        });
    }
    ForcingOracle::new(g, limits).forcing_number(m)
}

/// Largest set of pairwise vertex-disjoint `M`-alternating faces.
pub fn max_resonant_set(g: &PolyominoGraph, m: &Matching) -> ResonantSet {
    let squares = alternating_squares(g, m);
    let conflicts = adjacency(&squares, |&a, &b| {
        let (fa, fb) = (&g.faces()[a], &g.faces()[b]);
        fa.vertices.iter().any(|v| fb.vertices.contains(v))
    });
    let chosen = max_independent_set(&conflicts);
    ResonantSet {
        faces: chosen.into_iter().map(|i| squares[i]).collect(),
        matching: m.clone(),
    }
}

/// `f(G, M)` as the size of a maximum resonant set; family graphs only.
pub fn forcing_number_resonant(g: &PolyominoGraph, m: &Matching) -> Result<usize> {
    if !g.kind().is_family() {
        return Err(Error::WrongFamily);
    }
    if !m.is_perfect(g) {
        return Err(Error::NotPerfectMatching);
    }
    Ok(max_resonant_set(g, m).len())
}

/// `f(G, M)` as the maximum number of vertex-disjoint alternating cycles.
pub fn forcing_number_cycles(g: &PolyominoGraph, m: &Matching, limits: &Limits) -> Result<usize> {
    let cycles = alternating_cycles(g, m, limits.cycle_edges)?;
    let disjoint = adjacency(&cycles, are_disjoint);
    Ok(max_clique(&disjoint).len())
}

/// The route used for polynomials: resonant sets on family graphs,
/// disjoint cycles otherwise.
pub fn forcing_number(g: &PolyominoGraph, m: &Matching, limits: &Limits) -> Result<usize> {
    if g.kind().is_family() {
        forcing_number_resonant(g, m)
    } else {
        forcing_number_cycles(g, m, limits)
    }
}

/// Maximum resonant-set size over all perfect matchings.
pub fn clar_number(g: &PolyominoGraph) -> Result<usize> {
    enumerate_perfect_matchings(g)
        .map(|m| max_resonant_set(g, &m).len())
        .max()
        .ok_or(Error::NoPerfectMatching)
}

/// Accumulate `x^value` over per-matching values.
pub fn polynomial_from_values(values: impl IntoIterator<Item = usize>) -> IntPolynomial {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    IntPolynomial::from_terms(counts)
}

/// `F(G, x)`: sum of `x^f(G,M)` over every perfect matching.
pub fn forcing_polynomial_enum(g: &PolyominoGraph, limits: &Limits) -> Result<IntPolynomial> {
    let values = enumerate_perfect_matchings(g)
        .map(|m| forcing_number(g, &m, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(polynomial_from_values(values))
}

/// Distribution of forcing (or anti-forcing) numbers read off a
/// polynomial.
///
/// `counts` holds every nonzero coefficient, so it sums to the number of
/// perfect matchings. The support, `min` and `max` only consider positive
/// exponents: a graph with a unique perfect matching (polynomial `1`) has
/// an empty support and `min`/`max` of `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub counts: BTreeMap<usize, BigInt>,
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub contiguous: bool,
}

impl SpectrumReport {
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied().filter(|&e| e > 0)
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }
}

pub fn spectrum(p: &IntPolynomial) -> SpectrumReport {
    let counts: BTreeMap<usize, BigInt> = p.terms().map(|(e, c)| (e, c.clone())).collect();
    let support: Vec<usize> = counts.keys().copied().filter(|&e| e > 0).collect();
    let min = support.first().copied();
    let max = support.last().copied();
    let contiguous = match (min, max) {
        (Some(lo), Some(hi)) => (lo..=hi).all(|e| counts.get(&e).is_some_and(|c| !c.is_zero())),
        _ => true,
    };
    SpectrumReport {
        counts,
        min,
        max,
        contiguous,
    }
}

/// Spectrum of a forcing polynomial.
pub fn forcing_spectrum(p: &IntPolynomial) -> SpectrumReport {
    spectrum(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_g, build_h, from_cells};
    use crate::matching::tests::g1_matching;

    #[test]
    fn named_matchings_of_g1() {
        let limits = Limits::default();
        for (name, expected) in [("a", 1), ("1", 1), ("c", 2)] {
            let (g, m) = g1_matching(name);
            assert_eq!(forcing_number_oracle(&g, &m, &limits).unwrap(), expected, "M_{name}");
            assert_eq!(forcing_number_resonant(&g, &m).unwrap(), expected, "M_{name}");
            assert_eq!(forcing_number_cycles(&g, &m, &limits).unwrap(), expected, "M_{name}");
        }
    }

    #[test]
    fn oracle_witness_is_forcing() {
        let g = build_g(1);
        let oracle = ForcingOracle::new(&g, &Limits::default());
        for m in oracle.matchings() {
            let (k, s) = oracle.minimum_forcing_set(m).unwrap();
            assert_eq!(s.len(), k);
            assert!(s.is_subset(m.edges()));
            let containing = oracle.matchings().iter().filter(|o| s.is_subset(o.edges())).count();
            assert_eq!(containing, 1);
        }
    }

    #[test]
    fn resonant_route_rejects_generic() {
        let g = from_cells(&[(0, 0)]).unwrap();
        let m = enumerate_perfect_matchings(&g).next().unwrap();
        assert_eq!(forcing_number_resonant(&g, &m), Err(Error::WrongFamily));
        assert_eq!(forcing_number_cycles(&g, &m, &Limits::default()).unwrap(), 1);
    }

    #[test]
    fn oracle_limit() {
        let g = build_g(3);
        let m = enumerate_perfect_matchings(&g).next().unwrap();
        let tight = Limits { forcing_oracle: 5, ..Limits::default() };
        assert!(matches!(
            forcing_number_oracle(&g, &m, &tight),
            Err(Error::SizeLimitExceeded { size: 13, limit: 5, .. })
        ));
    }

    #[test]
    fn clar_numbers() {
        assert_eq!(clar_number(&build_g(1)).unwrap(), 2);
        assert_eq!(clar_number(&build_g(2)).unwrap(), 4);
        assert_eq!(clar_number(&from_cells(&[(0, 0)]).unwrap()).unwrap(), 1);
        assert_eq!(clar_number(&build_g(0)).unwrap(), 0);
    }

    #[test]
    fn small_polynomials() {
        let limits = Limits::default();
        let f1 = forcing_polynomial_enum(&build_g(1), &limits).unwrap();
        assert_eq!(f1, IntPolynomial::from_terms([(2, 4), (1, 2)]));
        let f2 = forcing_polynomial_enum(&build_g(2), &limits).unwrap();
        assert_eq!(f2, IntPolynomial::from_terms([(4, 16), (3, 12), (2, 4)]));
        let f3 = forcing_polynomial_enum(&build_g(3), &limits).unwrap();
        assert_eq!(f3, IntPolynomial::from_terms([(6, 64), (5, 64), (4, 28), (3, 12)]));
        let fh1 = forcing_polynomial_enum(&build_h(1), &limits).unwrap();
        assert_eq!(fh1, IntPolynomial::from_terms([(2, 4), (1, 1)]));
        assert_eq!(forcing_polynomial_enum(&build_g(0), &limits).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn spectra() {
        let f2 = IntPolynomial::from_terms([(4, 16), (3, 12), (2, 4)]);
        let s = forcing_spectrum(&f2);
        assert_eq!((s.min, s.max, s.contiguous), (Some(2), Some(4), true));
        assert_eq!(s.support().collect::<Vec<_>>(), [2, 3, 4]);
        assert_eq!(s.total(), BigInt::from(32));
        let s1 = forcing_spectrum(&IntPolynomial::from_terms([(2, 4), (1, 2)]));
        assert_eq!((s1.min, s1.max), (Some(1), Some(2)));
        let unique = forcing_spectrum(&IntPolynomial::one());
        assert_eq!((unique.min, unique.max, unique.support().count()), (None, None, 0));
        assert_eq!(unique.total(), BigInt::from(1));
        let gap = forcing_spectrum(&IntPolynomial::from_terms([(1, 1), (3, 1)]));
        assert!(!gap.contiguous);
    }
}
