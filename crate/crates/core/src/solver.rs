//! Exact maximum-independent-set machinery.
//!
//! Branch and bound over candidate bitsets: branch on a highest-degree
//! candidate, prune with a greedy clique-cover bound (an independent set
//! meets each clique at most once).  Everything is deterministic; reported
//! node counts make regressions visible in tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::SystemGraph;
use crate::set::VertexSet;

/// Cap on how many maximum independent sets an enumeration returns before
/// flagging truncation.
pub const DEFAULT_ENUMERATION_CAP: usize = 100_000;

/// An exact independence number with one witness and the search effort.
#[derive(Clone, Debug)]
pub struct AlphaReport {
    pub alpha: usize,
    pub witness: VertexSet,
    pub node_count: u64,
}

/// All maximum independent sets, in lexicographic member order, possibly
/// cut off at a cap.
#[derive(Clone, Debug)]
pub struct MaxSetFamily {
    pub alpha: usize,
    pub sets: Vec<VertexSet>,
    pub truncated: bool,
}

pub fn is_independent(g: &SystemGraph, s: &VertexSet) -> bool {
    assert_eq!(s.universe(), g.vertex_count(), "set universe does not match graph");
    s.iter().all(|v| g.neighbors(v).is_disjoint(s))
}

/// Exact α(G) by branch and bound.
pub fn independence_number(g: &SystemGraph) -> AlphaReport {
    let n = g.vertex_count();
    let mut best = AlphaReport {
        alpha: 0,
        witness: VertexSet::empty(n),
        node_count: 0,
    };
    let mut current = VertexSet::empty(n);
    branch(g, &VertexSet::full(n), &mut current, &mut best);
    best
}

fn branch(g: &SystemGraph, cand: &VertexSet, current: &mut VertexSet, best: &mut AlphaReport) {
    best.node_count += 1;
    if cand.is_empty() {
        if current.len() > best.alpha {
            best.alpha = current.len();
            best.witness = current.clone();
        }
        return;
    }
    if current.len() + clique_cover_bound(g, cand) <= best.alpha {
        return;
    }
    let v = max_degree_in(g, cand);
    // Include v first so good solutions arrive early and tighten the bound.
    let mut with_v = cand.difference(g.neighbors(v));
    with_v.remove(v);
    current.insert(v);
    branch(g, &with_v, current, best);
    current.remove(v);
    let mut without_v = cand.clone();
    without_v.remove(v);
    branch(g, &without_v, current, best);
}

pub(crate) fn max_degree_in(g: &SystemGraph, cand: &VertexSet) -> usize {
    let mut best = usize::MAX;
    let mut best_deg = 0;
    for v in cand.iter() {
        let deg = g.neighbors(v).intersection_len(cand);
        if best == usize::MAX || deg > best_deg {
            best = v;
            best_deg = deg;
        }
    }
    best
}

/// Greedy clique cover of the candidates; its size bounds α from above.
/// Each open clique keeps the set of vertices adjacent to all its members,
/// so membership tests are one bit lookup.
pub(crate) fn clique_cover_bound(g: &SystemGraph, cand: &VertexSet) -> usize {
    let mut commons: Vec<VertexSet> = Vec::new();
    for v in cand.iter() {
        match commons.iter_mut().find(|common| common.contains(v)) {
            Some(common) => common.intersect_with(g.neighbors(v)),
            None => commons.push(g.neighbors(v).clone()),
        }
    }
    commons.len()
}

pub fn maximum_independent_sets(g: &SystemGraph) -> MaxSetFamily {
    maximum_independent_sets_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates every maximum independent set.  Branching always splits on
/// the smallest candidate, include before exclude, so the output comes out
/// sorted by `VertexSet::cmp_members` without a sorting pass.
pub fn maximum_independent_sets_with_cap(g: &SystemGraph, cap: usize) -> MaxSetFamily {
    let alpha = independence_number(g).alpha;
    let n = g.vertex_count();
    let mut family = MaxSetFamily {
        alpha,
        sets: Vec::new(),
        truncated: false,
    };
    let mut current = VertexSet::empty(n);
    enumerate_exact(g, &VertexSet::full(n), &mut current, alpha, cap, &mut family);
    family
}

fn enumerate_exact(
    g: &SystemGraph,
    cand: &VertexSet,
    current: &mut VertexSet,
    alpha: usize,
    cap: usize,
    family: &mut MaxSetFamily,
) {
    if family.truncated {
        return;
    }
    if current.len() == alpha {
        if family.sets.len() == cap {
            family.truncated = true;
        } else {
            family.sets.push(current.clone());
        }
        return;
    }
    if current.len() + clique_cover_bound(g, cand) < alpha {
        return;
    }
    let Some(v) = cand.first() else { return };
    let mut with_v = cand.difference(g.neighbors(v));
    with_v.remove(v);
    current.insert(v);
    enumerate_exact(g, &with_v, current, alpha, cap, family);
    current.remove(v);
    let mut without_v = cand.clone();
    without_v.remove(v);
    enumerate_exact(g, &without_v, current, alpha, cap, family);
}

/// α of the subgraph induced on `b`; 0 for the empty set.
pub fn local_alpha(g: &SystemGraph, b: &VertexSet) -> usize {
    if b.is_empty() {
        return 0;
    }
    let sub = g.induced_subgraph(b).expect("nonempty by the check above");
    independence_number(&sub.graph).alpha
}

/// Seeded random independent sets (not necessarily maximal or distinct):
/// a random vertex order, each unblocked vertex kept with probability 1/2.
/// Useful as fodder for invariant checks.
pub fn sample_independent_sets(g: &SystemGraph, samples: usize, seed: u64) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    (0..samples)
        .map(|_| {
            order.shuffle(&mut rng);
            let mut chosen = VertexSet::empty(n);
            let mut blocked = VertexSet::empty(n);
            for &v in &order {
                if !blocked.contains(v) && rng.random_bool(0.5) {
                    chosen.insert(v);
                    blocked.insert(v);
                    blocked.union_with(g.neighbors(v));
                }
            }
            chosen
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_subset_system;
    use crate::graph::SystemGraph;
    use proptest::prelude::*;

    fn petersen() -> SystemGraph {
        build_subset_system(5, 2, 1).unwrap().graph
    }

    fn cycle(n: usize) -> SystemGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        SystemGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn alpha_of_three_disjoint_pairs() {
        let g = build_subset_system(4, 2, 1).unwrap().graph;
        let report = independence_number(&g);
        assert_eq!(report.alpha, 3);
        assert!(is_independent(&g, &report.witness));
        let family = maximum_independent_sets(&g);
        // One endpoint from each of the three disjoint edges: 2^3 sets.
        assert_eq!(family.sets.len(), 8);
        assert!(!family.truncated);
        assert_eq!(family.sets[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(family.sets[7].to_vec(), vec![3, 4, 5]);
    }

    #[test]
    fn alpha_of_petersen_and_its_stars() {
        let g = petersen();
        let report = independence_number(&g);
        assert_eq!(report.alpha, 4);
        let family = maximum_independent_sets(&g);
        let sets: Vec<Vec<usize>> = family.sets.iter().map(|s| s.to_vec()).collect();
        // The five stars of the underlying 5-set, exactly.
        assert_eq!(
            sets,
            vec![
                vec![0, 1, 3, 6],
                vec![0, 2, 4, 7],
                vec![1, 2, 5, 8],
                vec![3, 4, 5, 9],
                vec![6, 7, 8, 9],
            ]
        );
    }

    #[test]
    fn alpha_of_five_cycle() {
        let g = cycle(5);
        assert_eq!(independence_number(&g).alpha, 2);
        let family = maximum_independent_sets(&g);
        let sets: Vec<Vec<usize>> = family.sets.iter().map(|s| s.to_vec()).collect();
        assert_eq!(sets, vec![vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]]);
    }

    #[test]
    fn edgeless_and_complete_extremes() {
        let edgeless = SystemGraph::from_edges(5, &[]).unwrap();
        assert_eq!(independence_number(&edgeless).alpha, 5);
        assert_eq!(maximum_independent_sets(&edgeless).sets.len(), 1);

        let mut edges = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((u, v));
            }
        }
        let complete = SystemGraph::from_edges(4, &edges).unwrap();
        assert_eq!(independence_number(&complete).alpha, 1);
        assert_eq!(maximum_independent_sets(&complete).sets.len(), 4);
    }

    #[test]
    fn enumeration_cap_truncates() {
        let g = build_subset_system(4, 2, 1).unwrap().graph;
        let family = maximum_independent_sets_with_cap(&g, 3);
        assert!(family.truncated);
        assert_eq!(family.sets.len(), 3);
        // The cap cuts the tail, not the head.
        assert_eq!(family.sets[0].to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn search_is_deterministic() {
        let g = petersen();
        let a = independence_number(&g);
        let b = independence_number(&g);
        assert_eq!(a.alpha, b.alpha);
        assert_eq!(a.node_count, b.node_count);
        assert_eq!(a.witness.to_vec(), b.witness.to_vec());
    }

    #[test]
    fn local_alpha_on_induced_pieces() {
        let g = petersen();
        let star = VertexSet::from_indices(10, [0, 1, 3, 6]).unwrap();
        assert_eq!(local_alpha(&g, &star), 4);
        let edge = VertexSet::from_indices(10, [0, 9]).unwrap();
        assert_eq!(local_alpha(&g, &edge), 1);
        assert_eq!(local_alpha(&g, &VertexSet::empty(10)), 0);
    }

    #[test]
    fn samples_are_independent_and_reproducible() {
        let g = petersen();
        let a = sample_independent_sets(&g, 25, 7);
        let b = sample_independent_sets(&g, 25, 7);
        assert_eq!(a.len(), 25);
        for (x, y) in a.iter().zip(&b) {
            assert!(is_independent(&g, x));
            assert_eq!(x.to_vec(), y.to_vec());
        }
        // A different seed gives a different stream somewhere.
        let c = sample_independent_sets(&g, 25, 8);
        assert!(a.iter().zip(&c).any(|(x, y)| x.to_vec() != y.to_vec()));
    }

    fn seeded_graph(n: usize, seed: u64) -> SystemGraph {
        SystemGraph::from_pair_relation(n, |u, v| {
            if u == v {
                return true;
            }
            let (a, b) = (u.min(v), u.max(v));
            (seed >> ((a * 11 + b * 5) % 64)) & 1 == 0
        })
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

        #[test]
        fn solver_matches_subset_enumeration(n in 1usize..10, seed in any::<u64>()) {
            let g = seeded_graph(n, seed);
            let report = independence_number(&g);
            prop_assert!(is_independent(&g, &report.witness));
            prop_assert_eq!(report.witness.len(), report.alpha);
            prop_assert_eq!(report.alpha, crate::reference::alpha_by_subset_enumeration(&g));
        }

        #[test]
        fn enumeration_is_complete_sorted_and_exact(n in 1usize..9, seed in any::<u64>()) {
            let g = seeded_graph(n, seed);
            let family = maximum_independent_sets(&g);
            prop_assert!(!family.truncated);
            for s in &family.sets {
                prop_assert!(is_independent(&g, s));
                prop_assert_eq!(s.len(), family.alpha);
            }
            for pair in family.sets.windows(2) {
                prop_assert!(pair[0].cmp_members(&pair[1]) == std::cmp::Ordering::Less);
            }
            // Count maximum sets by brute force.
            let mut count = 0usize;
            for mask in 0u32..1 << n {
                let s = VertexSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1)).unwrap();
                if s.len() == family.alpha && is_independent(&g, &s) {
                    count += 1;
                }
            }
            prop_assert_eq!(count, family.sets.len());
        }
    }
}
