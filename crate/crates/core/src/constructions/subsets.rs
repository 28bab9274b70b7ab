//! k-subsets of {1..n} with the intersection threshold t.
//!
//! Vertices are the k-subsets as bitmasks (element i on bit i-1), listed in
//! colex order, which for bitmasks is plain numeric order.  Edge iff the two
//! subsets share fewer than t elements, so the independent sets are exactly
//! the t-intersecting families.  t = 1 gives the Kneser graph complementwise
//! view: K(5,2) here is the Petersen graph.

use crate::constructions::{binomial, BuiltSystem};
use crate::error::{Error, Result};
use crate::graph::{check_vertex_budget, SystemGraph};
use crate::group::{GeneratorSet, Permutation};

pub(super) fn build(n: u32, k: u32, t: u32, cap: usize) -> Result<BuiltSystem> {
    let count = check_vertex_budget(binomial(n, k)?, cap)?;
    let masks = k_subsets(n, k);
    debug_assert_eq!(masks.len(), count);

    let mut graph = SystemGraph::from_pair_relation_with_cap(
        count,
        |u, v| (masks[u] & masks[v]).count_ones() >= t,
        cap,
    )?;
    graph.set_labels(masks.iter().map(|&m| mask_label(m, n)).collect())?;
    graph.set_meta(crate::constructions::SystemDescriptor::Subsets { n, k, t });

    let generators = subset_generators(n, &masks)?;
    if !generators.is_transitive() {
        return Err(Error::NotVertexTransitive("subset generators"));
    }
    Ok(BuiltSystem { graph, generators })
}

/// All k-subsets of an n-set as bitmasks in increasing numeric (= colex)
/// order, by Gosper's next-subset step.
fn k_subsets(n: u32, k: u32) -> Vec<u128> {
    debug_assert!(k >= 1 && k <= n && n <= 128);
    let low = |b: u32| -> u128 {
        if b == 128 {
            u128::MAX
        } else {
            (1u128 << b) - 1
        }
    };
    let mut out = Vec::new();
    let mut m = low(k);
    let last = low(k) << (n - k);
    loop {
        out.push(m);
        if m == last {
            return out;
        }
        // Gosper: smallest mask above m with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

fn mask_label(mask: u128, n: u32) -> String {
    let elems: Vec<String> = (0..n)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

/// The ground-set n-cycle and the swap of the first two elements, acting on
/// the subset vertices.  These two generate the full symmetric group on the
/// ground set, which acts transitively on k-subsets.
fn subset_generators(n: u32, masks: &[u128]) -> Result<GeneratorSet> {
    if n == 1 {
        return GeneratorSet::new(vec![Permutation::identity(masks.len())]);
    }
    let cycle: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
    let mut swap: Vec<u32> = (0..n).collect();
    swap.swap(0, 1);
    let perm_on_vertices = |point_map: &[u32]| -> Result<Permutation> {
        let images = masks
            .iter()
            .map(|&m| {
                let mut out: u128 = 0;
                for i in 0..n {
                    if m >> i & 1 == 1 {
                        out |= 1u128 << point_map[i as usize];
                    }
                }
                // Masks are sorted, so the image's index is found by search.
                masks.binary_search(&out).expect("image must be a k-subset")
            })
            .collect();
        Permutation::from_images(images)
    };
    GeneratorSet::new(vec![perm_on_vertices(&cycle)?, perm_on_vertices(&swap)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_subset_system;

    #[test]
    fn colex_order_matches_frozen_list() {
        // 2-subsets of a 4-set in colex order.
        let masks = k_subsets(4, 2);
        assert_eq!(masks, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }

    #[test]
    fn kneser_4_2_shape() {
        let built = build_subset_system(4, 2, 1).unwrap();
        let g = &built.graph;
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edges(), vec![(0, 5), (1, 4), (2, 3)]);
        assert_eq!(g.label(0), "{1,2}");
        assert_eq!(g.label(5), "{3,4}");
        assert!(built.generators.is_transitive());
    }

    #[test]
    fn petersen_shape() {
        let built = build_subset_system(5, 2, 1).unwrap();
        let g = &built.graph;
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.is_connected());
    }

    #[test]
    fn threshold_two_makes_complete_graph() {
        let built = build_subset_system(4, 2, 2).unwrap();
        let g = &built.graph;
        assert_eq!(g.edge_count(), 6 * 5 / 2);
    }

    #[test]
    fn single_vertex_system() {
        let built = build_subset_system(1, 1, 1).unwrap();
        assert_eq!(built.graph.vertex_count(), 1);
        assert_eq!(built.graph.label(0), "{1}");
        assert!(built.generators.is_transitive());
    }

    #[test]
    fn full_set_system() {
        let built = build_subset_system(3, 3, 2).unwrap();
        assert_eq!(built.graph.vertex_count(), 1);
        assert_eq!(built.graph.edge_count(), 0);
    }

    #[test]
    fn generators_are_automorphisms() {
        let built = build_subset_system(5, 2, 1).unwrap();
        for gen in built.generators.generators() {
            assert!(crate::group::is_automorphism(&built.graph, gen).unwrap());
        }
    }

    #[test]
    fn cap_is_enforced_before_enumeration() {
        // C(30, 15) is astronomically over any sane cap; this must fail fast.
        let err = crate::constructions::SystemDescriptor::Subsets { n: 30, k: 15, t: 1 }
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::VertexCapExceeded { .. }));
    }

    #[test]
    fn subset_counts_match_binomials() {
        for n in 1..=10u32 {
            for k in 1..=n {
                assert_eq!(k_subsets(n, k).len() as u128, binomial(n, k).unwrap());
            }
        }
    }
}
