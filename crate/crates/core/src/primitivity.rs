//! Imprimitive independent sets and the ratio machinery around them.
//!
//! In a vertex-transitive graph every independent set A obeys
//! |A|·|V| ≤ α·|N[A]|.  A nonempty independent set strictly smaller than a
//! maximum one is *imprimitive* when that inequality is tight.  Imprimitive
//! sets are the germ of the nontrivial optimal cross families, and their
//! outside regions generate block partitions of the vertex set.
//!
//! The checks in this module are verifiers, not provers: each recomputes
//! its inequality from scratch and reports what actually holds, so feeding
//! them graphs outside the vertex-transitive guarantee simply produces
//! honest failure reports.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::SystemGraph;
use crate::group::GeneratorSet;
use crate::set::VertexSet;
use crate::solver::{independence_number, is_independent, local_alpha};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimitivityStatus {
    /// No imprimitive independent set exists; the search was exhaustive.
    Primitive,
    /// Imprimitive independent sets exist (witnesses attached).
    Imprimitive,
    /// Imprimitive, and the graph is disconnected, which for
    /// vertex-transitive graphs forces imprimitivity on its own.
    DisconnectedImprimitive,
    /// The search hit its budget before finding anything or exhausting.
    Unknown,
}

/// Limits for the witness search.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_witnesses: usize,
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_witnesses: 64,
            max_nodes: 20_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PrimitivityVerdict {
    pub status: PrimitivityStatus,
    pub alpha: usize,
    /// Imprimitive independent sets, largest first, then lexicographic.
    pub witnesses: Vec<VertexSet>,
    /// True when every independent set was considered (no budget cutoff
    /// and no witness dropped).
    pub search_exhaustive: bool,
    pub node_count: u64,
}

/// Is `a` a nonempty independent set, strictly smaller than maximum, with
/// |A|·|V| = α·|N[A]| exactly?
pub fn is_imprimitive(g: &SystemGraph, alpha: usize, a: &VertexSet) -> Result<bool> {
    if !is_independent(g, a) {
        return Err(Error::NotIndependent);
    }
    let n = g.vertex_count();
    let closed = g.closed_neighborhood(a).len();
    Ok(!a.is_empty() && a.len() < alpha && a.len() * n == alpha * closed)
}

pub fn find_imprimitive_sets(g: &SystemGraph) -> PrimitivityVerdict {
    find_imprimitive_sets_with_budget(g, SearchBudget::default())
}

/// Searches every independent set (subject to the budget) for witnesses of
/// imprimitivity.  Deterministic; witnesses come out sorted.
pub fn find_imprimitive_sets_with_budget(g: &SystemGraph, budget: SearchBudget) -> PrimitivityVerdict {
    let n = g.vertex_count();
    let alpha = independence_number(g).alpha;
    let mut ctx = SearchCtx {
        g,
        n,
        alpha,
        budget,
        witnesses: Vec::new(),
        nodes: 0,
        exhausted: true,
    };
    let mut current = VertexSet::empty(n);
    ctx.search(&VertexSet::full(n), &mut current, &VertexSet::empty(n));
    ctx.witnesses
        .sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp_members(b)));
    let status = if !ctx.witnesses.is_empty() {
        if g.is_connected() {
            PrimitivityStatus::Imprimitive
        } else {
            PrimitivityStatus::DisconnectedImprimitive
        }
    } else if ctx.exhausted {
        PrimitivityStatus::Primitive
    } else {
        PrimitivityStatus::Unknown
    };
    PrimitivityVerdict {
        status,
        alpha,
        witnesses: ctx.witnesses,
        search_exhaustive: ctx.exhausted,
        node_count: ctx.nodes,
    }
}

struct SearchCtx<'g> {
    g: &'g SystemGraph,
    n: usize,
    alpha: usize,
    budget: SearchBudget,
    witnesses: Vec<VertexSet>,
    nodes: u64,
    exhausted: bool,
}

impl SearchCtx<'_> {
    /// One node per distinct independent set; children extend it by one
    /// candidate vertex each.  Returns false when the search should stop.
    fn search(&mut self, cand: &VertexSet, current: &mut VertexSet, closed: &VertexSet) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exhausted = false;
            return false;
        }
        let size = current.len();
        if size > 0 && size < self.alpha && size * self.n == self.alpha * closed.len() {
            if self.witnesses.len() == self.budget.max_witnesses {
                self.exhausted = false;
                return false;
            }
            self.witnesses.push(current.clone());
        }
        // Supersets only grow; once they cannot stay below α or reach the
        // ratio equality, stop extending.
        if size + 1 >= self.alpha || cand.is_empty() {
            return true;
        }
        if (size + cand.len()) * self.n < self.alpha * closed.len() {
            return true;
        }
        let mut rest = cand.clone();
        while let Some(v) = rest.first() {
            rest.remove(v);
            let with_v = rest.difference(self.g.neighbors(v));
            let mut closed_v = closed.union(self.g.neighbors(v));
            closed_v.insert(v);
            current.insert(v);
            let keep_going = self.search(&with_v, current, &closed_v);
            current.remove(v);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// |A|·|V| ≤ α·|N[A]| for an independent set A.
#[derive(Clone, Debug)]
pub struct RatioCheck {
    pub set_size: usize,
    pub vertex_count: usize,
    pub alpha: usize,
    pub neighborhood_size: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub tight: bool,
}

pub fn check_ratio_lemma(g: &SystemGraph, alpha: usize, a: &VertexSet) -> Result<RatioCheck> {
    if !is_independent(g, a) {
        return Err(Error::NotIndependent);
    }
    let n = g.vertex_count();
    let nb = g.closed_neighborhood(a).len();
    let lhs = (a.len() * n) as u64;
    let rhs = (alpha * nb) as u64;
    Ok(RatioCheck {
        set_size: a.len(),
        vertex_count: n,
        alpha,
        neighborhood_size: nb,
        lhs,
        rhs,
        holds: lhs <= rhs,
        tight: lhs == rhs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeficiencyCase {
    EmptySet,
    MaximumSize,
    Imprimitive,
}

/// |A|·|V| + α·|V − N[A]| ≤ α·|V|, with the equality-case analysis:
/// equality is expected exactly for the empty set, maximum independent
/// sets, and imprimitive sets.
#[derive(Clone, Debug)]
pub struct DeficiencyCheck {
    pub set_size: usize,
    pub outside_size: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub tight: bool,
    /// Which equality case the set belongs to, if any.
    pub qualifies: Option<DeficiencyCase>,
    /// Equality observed iff an equality case applies.
    pub consistent: bool,
}

pub fn check_deficiency_inequality(g: &SystemGraph, alpha: usize, a: &VertexSet) -> Result<DeficiencyCheck> {
    if !is_independent(g, a) {
        return Err(Error::NotIndependent);
    }
    let n = g.vertex_count();
    let closed = g.closed_neighborhood(a).len();
    let outside = n - closed;
    let lhs = (a.len() * n + alpha * outside) as u64;
    let rhs = (alpha * n) as u64;
    let qualifies = if a.is_empty() {
        Some(DeficiencyCase::EmptySet)
    } else if a.len() == alpha {
        Some(DeficiencyCase::MaximumSize)
    } else if a.len() * n == alpha * closed {
        Some(DeficiencyCase::Imprimitive)
    } else {
        None
    };
    let tight = lhs == rhs;
    Ok(DeficiencyCheck {
        set_size: a.len(),
        outside_size: outside,
        lhs,
        rhs,
        holds: lhs <= rhs,
        tight,
        consistent: tight == qualifies.is_some(),
        qualifies,
    })
}

/// |S|·|B| ≤ α(G[B])·|V| for a maximum independent set S and any B, with
/// the equality consequence |S ∩ B| = α(G[B]).
#[derive(Clone, Debug)]
pub struct FractionalCheck {
    pub s_size: usize,
    pub b_size: usize,
    pub local_alpha: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub tight: bool,
    /// On equality: does S meet B in exactly α(G[B]) vertices?
    pub meets_local_alpha: Option<bool>,
}

pub fn check_fractional_bound(
    g: &SystemGraph,
    alpha: usize,
    s: &VertexSet,
    b: &VertexSet,
) -> Result<FractionalCheck> {
    if !is_independent(g, s) {
        return Err(Error::NotIndependent);
    }
    if s.len() != alpha {
        return Err(Error::AlphaMismatch {
            given: s.len(),
            computed: alpha,
        });
    }
    let n = g.vertex_count();
    let la = local_alpha(g, b);
    let lhs = (s.len() * b.len()) as u64;
    let rhs = (la * n) as u64;
    let tight = lhs == rhs;
    Ok(FractionalCheck {
        s_size: s.len(),
        b_size: b.len(),
        local_alpha: la,
        lhs,
        rhs,
        holds: lhs <= rhs,
        tight,
        meets_local_alpha: tight.then(|| s.intersection_len(b) == la),
    })
}

/// The outside region D = V − N[A] of an imprimitive set A, its balance
/// equation α(G[D])·|V| = α·|D|, and the orbit of D under the generators.
#[derive(Clone, Debug)]
pub struct BlockOrbitCheck {
    pub outside: VertexSet,
    pub outside_alpha: usize,
    pub ratio_balanced: bool,
    /// Distinct images of the outside region under the generated group.
    pub images: Vec<VertexSet>,
    pub pairwise_disjoint: bool,
    pub covers_all: bool,
}

impl BlockOrbitCheck {
    /// Did the orbit of the outside region turn out to be a balanced
    /// partition of the vertex set?
    pub fn passed(&self) -> bool {
        self.ratio_balanced && self.pairwise_disjoint && self.covers_all
    }
}

/// For an imprimitive independent set A (ideally a maximal one), checks
/// that D = V − N[A] is balanced and that its images under the generated
/// group tile the vertex set.
pub fn verify_block_partition(
    g: &SystemGraph,
    gens: &GeneratorSet,
    alpha: usize,
    a: &VertexSet,
) -> Result<BlockOrbitCheck> {
    let n = g.vertex_count();
    if gens.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            got: gens.degree(),
        });
    }
    if !is_independent(g, a) {
        return Err(Error::NotIndependent);
    }
    if a.is_empty() {
        return Err(Error::NotImprimitive("the empty set does not qualify"));
    }
    if a.len() >= alpha {
        return Err(Error::NotImprimitive("the set is not strictly smaller than maximum"));
    }
    let closed = g.closed_neighborhood(a);
    if a.len() * n != alpha * closed.len() {
        return Err(Error::NotImprimitive("the ratio equation does not hold"));
    }

    let outside = closed.complement();
    let outside_alpha = local_alpha(g, &outside);
    let ratio_balanced = outside_alpha * n == alpha * outside.len();

    // Orbit of the outside region under the generated group.
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut queue = vec![outside.clone()];
    seen.insert(outside.clone());
    while let Some(d) = queue.pop() {
        for gen in gens.generators() {
            let img = gen.act_on_set(&d);
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    let mut images: Vec<VertexSet> = seen.into_iter().collect();
    images.sort_by(|a, b| a.cmp_members(b));

    let mut union = VertexSet::empty(n);
    let mut pairwise_disjoint = true;
    for img in &images {
        if !union.is_disjoint(img) {
            pairwise_disjoint = false;
        }
        union.union_with(img);
    }
    let covers_all = union.len() == n;
    Ok(BlockOrbitCheck {
        outside,
        outside_alpha,
        ratio_balanced,
        images,
        pairwise_disjoint,
        covers_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_subset_system;

    fn three_pairs_system() -> (SystemGraph, GeneratorSet) {
        let built = build_subset_system(4, 2, 1).unwrap();
        (built.graph, built.generators)
    }

    fn petersen() -> SystemGraph {
        build_subset_system(5, 2, 1).unwrap().graph
    }

    #[test]
    fn three_pairs_witnesses() {
        let (g, _) = three_pairs_system();
        let verdict = find_imprimitive_sets(&g);
        assert_eq!(verdict.status, PrimitivityStatus::DisconnectedImprimitive);
        assert_eq!(verdict.alpha, 3);
        assert!(verdict.search_exhaustive);
        // Every singleton (6) and every independent pair (12).
        assert_eq!(verdict.witnesses.len(), 18);
        assert_eq!(verdict.witnesses[0].to_vec(), vec![0, 1]);
        assert!(verdict.witnesses[..12].iter().all(|w| w.len() == 2));
        assert!(verdict.witnesses[12..].iter().all(|w| w.len() == 1));
        for w in &verdict.witnesses {
            assert!(is_imprimitive(&g, verdict.alpha, w).unwrap());
        }
    }

    #[test]
    fn petersen_is_primitive() {
        let verdict = find_imprimitive_sets(&petersen());
        assert_eq!(verdict.status, PrimitivityStatus::Primitive);
        assert!(verdict.search_exhaustive);
        assert!(verdict.witnesses.is_empty());
    }

    #[test]
    fn five_cycle_is_primitive() {
        let g = SystemGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let verdict = find_imprimitive_sets(&g);
        assert_eq!(verdict.status, PrimitivityStatus::Primitive);
    }

    #[test]
    fn budget_cutoffs_are_reported() {
        let starved = find_imprimitive_sets_with_budget(
            &petersen(),
            SearchBudget {
                max_witnesses: 64,
                max_nodes: 3,
            },
        );
        assert_eq!(starved.status, PrimitivityStatus::Unknown);
        assert!(!starved.search_exhaustive);

        let (g, _) = three_pairs_system();
        let capped = find_imprimitive_sets_with_budget(
            &g,
            SearchBudget {
                max_witnesses: 5,
                max_nodes: u64::MAX,
            },
        );
        assert_eq!(capped.status, PrimitivityStatus::DisconnectedImprimitive);
        assert_eq!(capped.witnesses.len(), 5);
        assert!(!capped.search_exhaustive);
    }

    #[test]
    fn ratio_lemma_on_petersen() {
        let g = petersen();
        let star = VertexSet::from_indices(10, [0, 1, 3, 6]).unwrap();
        let check = check_ratio_lemma(&g, 4, &star).unwrap();
        assert!(check.holds && check.tight);
        assert_eq!(check.neighborhood_size, 10);

        let single = VertexSet::singleton(10, 0);
        let check = check_ratio_lemma(&g, 4, &single).unwrap();
        assert!(check.holds && !check.tight);

        let edge = VertexSet::from_indices(10, [0, 9]).unwrap();
        assert!(matches!(
            check_ratio_lemma(&g, 4, &edge),
            Err(Error::NotIndependent)
        ));
    }

    #[test]
    fn ratio_lemma_fails_off_guarantee() {
        // Triangle plus isolated vertex is not vertex-transitive, and the
        // isolated vertex breaks the inequality.
        let g = SystemGraph::from_edges(4, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let iso = VertexSet::singleton(4, 0);
        let check = check_ratio_lemma(&g, 2, &iso).unwrap();
        assert!(!check.holds);
    }

    #[test]
    fn deficiency_cases() {
        let g = petersen();
        let empty = check_deficiency_inequality(&g, 4, &VertexSet::empty(10)).unwrap();
        assert!(empty.tight && empty.consistent);
        assert_eq!(empty.qualifies, Some(DeficiencyCase::EmptySet));

        let star = VertexSet::from_indices(10, [0, 1, 3, 6]).unwrap();
        let max = check_deficiency_inequality(&g, 4, &star).unwrap();
        assert!(max.tight && max.consistent);
        assert_eq!(max.qualifies, Some(DeficiencyCase::MaximumSize));

        let single = check_deficiency_inequality(&g, 4, &VertexSet::singleton(10, 0)).unwrap();
        assert!(single.holds && !single.tight && single.consistent);
        assert_eq!(single.qualifies, None);

        let (g, _) = three_pairs_system();
        let pair = VertexSet::from_indices(6, [0, 1]).unwrap();
        let imp = check_deficiency_inequality(&g, 3, &pair).unwrap();
        assert!(imp.tight && imp.consistent);
        assert_eq!(imp.qualifies, Some(DeficiencyCase::Imprimitive));
    }

    #[test]
    fn fractional_bound_on_petersen() {
        let g = petersen();
        let star = VertexSet::from_indices(10, [0, 1, 3, 6]).unwrap();
        let everything = VertexSet::full(10);
        let check = check_fractional_bound(&g, 4, &star, &everything).unwrap();
        assert!(check.holds && check.tight);
        assert_eq!(check.meets_local_alpha, Some(true));

        let other = VertexSet::from_indices(10, [6, 7, 8, 9]).unwrap();
        let check = check_fractional_bound(&g, 4, &star, &other).unwrap();
        assert!(check.holds && !check.tight);
        assert_eq!(check.meets_local_alpha, None);

        let not_max = VertexSet::singleton(10, 0);
        assert!(matches!(
            check_fractional_bound(&g, 4, &not_max, &everything),
            Err(Error::AlphaMismatch { given: 1, computed: 4 })
        ));
    }

    #[test]
    fn block_partition_on_three_pairs() {
        let (g, gens) = three_pairs_system();
        let a = VertexSet::from_indices(6, [0, 1]).unwrap();
        let check = verify_block_partition(&g, &gens, 3, &a).unwrap();
        assert_eq!(check.outside.to_vec(), vec![2, 3]);
        assert_eq!(check.outside_alpha, 1);
        assert!(check.ratio_balanced);
        let images: Vec<Vec<usize>> = check.images.iter().map(|s| s.to_vec()).collect();
        assert_eq!(images, vec![vec![0, 5], vec![1, 4], vec![2, 3]]);
        assert!(check.pairwise_disjoint && check.covers_all);
        assert!(check.passed());
    }

    #[test]
    fn block_partition_rejects_non_witnesses() {
        let (g, gens) = three_pairs_system();
        let max = VertexSet::from_indices(6, [0, 1, 2]).unwrap();
        assert!(matches!(
            verify_block_partition(&g, &gens, 3, &max),
            Err(Error::NotImprimitive(_))
        ));
        assert!(matches!(
            verify_block_partition(&g, &gens, 3, &VertexSet::empty(6)),
            Err(Error::NotImprimitive(_))
        ));
        let g5 = petersen();
        let single = VertexSet::singleton(10, 0);
        let err = verify_block_partition(&g5, &gens, 4, &single);
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
    }
}
