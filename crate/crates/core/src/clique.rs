//! Exact maximum clique by branch and bound with greedy-colouring bounds.
//! The graphs here are conflict/compatibility graphs of a few hundred
//! cycles at most.

use alloc::vec::Vec;

use crate::bitset::EdgeSet;

/// Vertices of a maximum clique, sorted. `adjacent[v]` must not contain `v`.
pub(crate) fn max_clique(adjacent: &[EdgeSet]) -> Vec<usize> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    let all: Vec<usize> = (0..adjacent.len()).collect();
    expand(adjacent, &mut current, all, &mut best);
    best.sort_unstable();
    best
}

/// Maximum set of pairwise non-conflicting vertices.
pub(crate) fn max_independent_set(conflicts: &[EdgeSet]) -> Vec<usize> {
    let n = conflicts.len();
    let complement: Vec<EdgeSet> = (0..n)
        .map(|v| EdgeSet::from_indices(n, (0..n).filter(|&w| w != v && !conflicts[v].contains(w))))
        .collect();
    max_clique(&complement)
}

/// Build symmetric adjacency from a pairwise predicate.
pub(crate) fn adjacency<T>(items: &[T], related: impl Fn(&T, &T) -> bool) -> Vec<EdgeSet> {
    let n = items.len();
    let mut adj: Vec<EdgeSet> = (0..n).map(|_| EdgeSet::new(n)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if related(&items[i], &items[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

fn expand(adjacent: &[EdgeSet], current: &mut Vec<usize>, candidates: Vec<usize>, best: &mut Vec<usize>) {
    let (order, colors) = color_sort(adjacent, &candidates);
    for i in (0..order.len()).rev() {
        if current.len() + colors[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let next: Vec<usize> = order[..i]
            .iter()
            .copied()
            .filter(|&w| adjacent[v].contains(w))
            .collect();
        if next.is_empty() {
            if current.len() > best.len() {
                best.clone_from(current);
            }
        } else {
            expand(adjacent, current, next, best);
        }
        current.pop();
    }
}

/// Greedy colouring; returns vertices ordered by colour with the (1-based)
/// colour of each, which bounds the clique size among any prefix.
fn color_sort(adjacent: &[EdgeSet], candidates: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in candidates {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&w| !adjacent[v].contains(w)))
        {
            Some(class) => class.push(v),
            None => classes.push(alloc::vec![v]),
        }
    }
    let mut order = Vec::with_capacity(candidates.len());
    let mut colors = Vec::with_capacity(candidates.len());
    for (k, class) in classes.into_iter().enumerate() {
        for v in class {
            order.push(v);
            colors.push(k + 1);
        }
    }
    (order, colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn brute_force_clique(adj: &[EdgeSet]) -> usize {
        let n = adj.len();
        (0..=n)
            .rev()
            .find(|&k| {
                (0..n)
                    .combinations(k)
                    .any(|c| c.iter().tuple_combinations().all(|(&a, &b)| adj[a].contains(b)))
            })
            .unwrap_or(0)
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 0usize..11, bits in prop::collection::vec(any::<bool>(), 55)) {
            let mut adj: Vec<EdgeSet> = (0..n).map(|_| EdgeSet::new(n)).collect();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k % bits.len()] {
                        adj[i].insert(j);
                        adj[j].insert(i);
                    }
                    k += 1;
                }
            }
            let clique = max_clique(&adj);
            prop_assert_eq!(clique.len(), brute_force_clique(&adj));
            for (&a, &b) in clique.iter().tuple_combinations() {
                prop_assert!(adj[a].contains(b));
            }
        }
    }

    #[test]
    fn empty_graph() {
        assert!(max_clique(&[]).is_empty());
        assert_eq!(max_independent_set(&[EdgeSet::new(1)]), [0]);
    }
}
