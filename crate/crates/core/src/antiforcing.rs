//! Anti-forcing numbers, polynomial and spectrum.
//!
//! Routes to `af(G, M)`:
//!
//! * [`antiforcing_number_oracle`]: smallest `S' ⊆ E \ M` whose removal
//!   leaves `M` as the only perfect matching.
//! * [`antiforcing_number_compat`]: the maximum number of pairwise
//!   compatible `M`-alternating cycles.
//! * [`antiforcing_number_structural`]: for `G_n`/`H_n`, every alternating
//!   square plus the best compatible choice among ladder and wing
//!   peripheries ([`SegmentCycleCatalog`]).

use alloc::vec::Vec;

use itertools::Itertools;

use crate::bitset::EdgeSet;
use crate::clique::{adjacency, max_clique};
use crate::error::{Error, Result};
use crate::forcing::{polynomial_from_values, spectrum, SpectrumReport};
use crate::lattice::LabelLetter::{U, V, W, Z};
use crate::lattice::{GraphKind, LabelLetter, PolyominoGraph, VertexLabel};
use crate::matching::{
    alternating_cycles, are_compatible, enumerate_perfect_matchings, is_unique_perfect_matching,
    AlternatingCycle, Matching,
};
use crate::poly::IntPolynomial;
use crate::Limits;

/// Pairwise compatible `M`-alternating cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleSet {
    pub cycles: Vec<AlternatingCycle>,
    pub matching: Matching,
}

impl CompatibleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

fn check_oracle_size(g: &PolyominoGraph, m: &Matching, limits: &Limits) -> Result<()> {
    if !m.is_perfect(g) {
        return Err(Error::NotPerfectMatching);
    }
    let free = g.edge_count() - m.len();
    if free > limits.antiforcing_oracle {
        return Err(Error::SizeLimitExceeded {
            what: "anti-forcing oracle free edge count",
            size: free,
            limit: limits.antiforcing_oracle,
        });
    }
    Ok(())
}

/// Minimum anti-forcing set of `m`, returned with its size.
pub fn minimum_antiforcing_set(
    g: &PolyominoGraph,
    m: &Matching,
    limits: &Limits,
) -> Result<(usize, EdgeSet)> {
    check_oracle_size(g, m, limits)?;
    let free: Vec<usize> = (0..g.edge_count()).filter(|&e| !m.contains(e)).collect();
    for k in 0..=free.len() {
        for removed in free.iter().copied().combinations(k) {
            let s = EdgeSet::from_indices(g.edge_count(), removed);
            if is_unique_perfect_matching(g, m, &s) {
                return Ok((k, s));
            }
        }
    }
    unreachable!("removing every free edge leaves only M")
}

/// Definitional anti-forcing number.
pub fn antiforcing_number_oracle(g: &PolyominoGraph, m: &Matching, limits: &Limits) -> Result<usize> {
    minimum_antiforcing_set(g, m, limits).map(|(k, _)| k)
}

fn best_compatible(cycles: Vec<AlternatingCycle>, m: &Matching) -> Vec<AlternatingCycle> {
    let compat = adjacency(&cycles, |a, b| are_compatible(a, b, m));
    let chosen = max_clique(&compat);
    let mut cycles: Vec<Option<AlternatingCycle>> = cycles.into_iter().map(Some).collect();
    chosen.into_iter().filter_map(|i| cycles[i].take()).collect()
}

/// Maximum compatible set over all `M`-alternating cycles.
pub fn max_compatible_set(g: &PolyominoGraph, m: &Matching, limits: &Limits) -> Result<CompatibleSet> {
    let cycles = alternating_cycles(g, m, limits.cycle_edges)?;
    Ok(CompatibleSet {
        cycles: best_compatible(cycles, m),
        matching: m.clone(),
    })
}

pub fn antiforcing_number_compat(g: &PolyominoGraph, m: &Matching, limits: &Limits) -> Result<usize> {
    max_compatible_set(g, m, limits).map(|s| s.len())
}

/// Candidate alternating cycles of a family graph for one matching.
///
/// `ladders` are peripheries of straight chains of `k >= 3` (odd) middle
/// squares between the verticals `u_i v_i` and `u_j v_j`. `wings` run over
/// the top and bottom squares from an odd column `i` to an even column `j`:
/// `u_i w_i w_{i+1} u_{i+1} u_{i+2} ... w_j u_j v_j z_j ... z_i v_i`.
#[derive(Debug, Clone)]
pub struct SegmentCycleCatalog {
    pub faces: Vec<AlternatingCycle>,
    pub ladders: Vec<AlternatingCycle>,
    pub wings: Vec<AlternatingCycle>,
}

impl SegmentCycleCatalog {
    /// Catalog members that are `M`-alternating.
    pub fn new(g: &PolyominoGraph, m: &Matching) -> Result<Self> {
        Ok(Self::all(g)?.alternating(g, m))
    }

    /// The members of this catalog that are `M`-alternating.
    pub fn alternating(&self, g: &PolyominoGraph, m: &Matching) -> Self {
        let keep = |list: &[AlternatingCycle]| list.iter().filter(|c| c.is_alternating(g, m)).cloned().collect();
        SegmentCycleCatalog {
            faces: keep(&self.faces),
            ladders: keep(&self.ladders),
            wings: keep(&self.wings),
        }
    }

    /// Every face, ladder and wing periphery of the graph.
    pub fn all(g: &PolyominoGraph) -> Result<Self> {
        let n = match g.kind() {
            GraphKind::G(n) | GraphKind::H(n) => n,
            GraphKind::Generic => return Err(Error::WrongFamily),
        };
        let at = |letter: LabelLetter, i: usize| g.vertex_by_label(VertexLabel::new(letter, i));
        let faces = g
            .faces()
            .iter()
            .map(|f| AlternatingCycle::new(g, f.vertices.to_vec()))
            .collect();
        let top = 2 * n;
        let mut ladders = Vec::new();
        for i in 0..top {
            for j in (i + 3..=top).step_by(2) {
                let upper: Option<Vec<usize>> = (i..=j).map(|c| at(U, c)).collect();
                let lower: Option<Vec<usize>> = (i..=j).rev().map(|c| at(V, c)).collect();
                if let (Some(mut cycle), Some(lower)) = (upper, lower) {
                    cycle.extend(lower);
                    ladders.push(AlternatingCycle::new(g, cycle));
                }
            }
        }
        let mut wings = Vec::new();
        for i in (1..top).step_by(2) {
            for j in (i + 1..=top).step_by(2) {
                let mut cycle = Vec::new();
                for c in (i..j).step_by(2) {
                    cycle.extend([U, W, W, U].iter().zip([c, c, c + 1, c + 1]).map(|(&l, c)| (l, c)));
                }
                for c in (i + 1..=j).rev().step_by(2) {
                    cycle.extend([V, Z, Z, V].iter().zip([c, c, c - 1, c - 1]).map(|(&l, c)| (l, c)));
                }
                let ids: Option<Vec<usize>> = cycle.into_iter().map(|(l, c)| at(l, c)).collect();
                if let Some(ids) = ids {
                    wings.push(AlternatingCycle::new(g, ids));
                }
            }
        }
        Ok(SegmentCycleCatalog {
            faces,
            ladders,
            wings,
        })
    }

    pub fn len(&self) -> usize {
        self.faces.len() + self.ladders.len() + self.wings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Structural compatible set for a family graph: every alternating square
/// plus a maximum compatible choice of alternating ladders and wings.
pub fn structural_compatible_set(g: &PolyominoGraph, m: &Matching) -> Result<CompatibleSet> {
    let catalog = SegmentCycleCatalog::all(g)?;
    if !m.is_perfect(g) {
        return Err(Error::NotPerfectMatching);
    }
    Ok(structural_from_catalog(&catalog, g, m))
}

/// As [`structural_compatible_set`] with the full catalog of `g` already
/// built; `m` must be a perfect matching of `g`.
pub fn structural_from_catalog(all: &SegmentCycleCatalog, g: &PolyominoGraph, m: &Matching) -> CompatibleSet {
    let catalog = all.alternating(g, m);
    let squares = catalog.faces;
    let extra: Vec<AlternatingCycle> = catalog
        .ladders
        .into_iter()
        .chain(catalog.wings)
        .filter(|c| squares.iter().all(|s| are_compatible(c, s, m)))
        .collect();
    let mut cycles = squares;
    cycles.extend(best_compatible(extra, m));
    CompatibleSet {
        cycles,
        matching: m.clone(),
    }
}

pub fn antiforcing_number_structural(g: &PolyominoGraph, m: &Matching) -> Result<usize> {
    structural_compatible_set(g, m).map(|s| s.len())
}

/// Structural route on family graphs, compatible-set route otherwise.
pub fn antiforcing_number(g: &PolyominoGraph, m: &Matching, limits: &Limits) -> Result<usize> {
    if g.kind().is_family() {
        antiforcing_number_structural(g, m)
    } else {
        antiforcing_number_compat(g, m, limits)
    }
}

/// `Af(G, x)`: sum of `x^af(G,M)` over every perfect matching.
pub fn antiforcing_polynomial_enum(g: &PolyominoGraph, limits: &Limits) -> Result<IntPolynomial> {
    let values = if g.kind().is_family() {
        let catalog = SegmentCycleCatalog::all(g)?;
        enumerate_perfect_matchings(g)
            .map(|m| structural_from_catalog(&catalog, g, &m).len())
            .collect()
    } else {
        enumerate_perfect_matchings(g)
            .map(|m| antiforcing_number_compat(g, &m, limits))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(polynomial_from_values(values))
}

pub fn antiforcing_spectrum(p: &IntPolynomial) -> SpectrumReport {
    spectrum(p)
}

/// Where a perfect matching of `G_n` falls in the decomposition by the
/// leftmost matched vertical edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AfClass {
    /// `u_0 v_0` is not matched.
    LeftRungFree,
    /// `u_0 v_0` is matched and the next matched `u_c v_c` is at `c = 2k + 1`.
    FirstRung { k: usize },
    /// `u_0 v_0` is the only matched `u_c v_c`.
    NoMiddleRung,
    /// Next matched vertical at an unexpected column; never produced for a
    /// perfect matching of `G_n`.
    Unclassified { rung: usize },
}

pub fn classify(g: &PolyominoGraph, m: &Matching) -> Result<AfClass> {
    let GraphKind::G(n) = g.kind() else {
        return Err(Error::WrongFamily);
    };
    if !m.is_perfect(g) {
        return Err(Error::NotPerfectMatching);
    }
    let rung = |c: usize| {
        g.labeled_edge(VertexLabel::new(U, c), VertexLabel::new(V, c))
            .is_some_and(|e| m.contains(e))
    };
    if !rung(0) {
        return Ok(AfClass::LeftRungFree);
    }
    Ok(match (1..=2 * n).find(|&c| rung(c)) {
        None => AfClass::NoMiddleRung,
        Some(c) if c % 2 == 1 => AfClass::FirstRung { k: c / 2 },
        Some(c) => AfClass::Unclassified { rung: c },
    })
}
