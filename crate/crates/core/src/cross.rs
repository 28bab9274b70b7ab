//! Cross families and their optima.
//!
//! An m-part cross family assigns vertices to parts A_1..A_m so that no
//! edge runs between two *distinct* parts.  Parts may overlap and need not
//! be independent; edges inside a single part are allowed.  The quantity of
//! interest is the best possible total Σ|A_i|.
//!
//! For a connected vertex-transitive graph the optimum equals
//! max(|V|, m·α), reached by putting the whole vertex set in one part, or
//! one maximum independent set in every part.  The oracles here compute the
//! optimum *without* that formula, so the formula can be tested against
//! them.
//!
//! Two oracle routes, independent of each other:
//!
//! * state search: in an optimal family every vertex lies in no part, one
//!   part, or all m parts.  (A vertex in 2 ≤ r < m parts forces all its
//!   assigned neighbors empty, so raising it to all m parts only helps.)
//!   Search the (m+2)-state space directly.
//! * reduced search: the optimum equals max over independent sets T of
//!   m|T| + |V − N[T]|.  Vertices in all parts form an independent set T
//!   (for m ≥ 2 an edge inside T would cross distinct parts), singleton
//!   vertices may be relabeled to one common part (no edge joins distinct
//!   singleton labels, and none may touch T), and then every vertex outside
//!   N[T] can join that common part for free.  Search over T only.
//!
//! Both are cross-checked against a third, fully unreduced assignment
//! enumeration in the test suites.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SystemGraph;
use crate::set::VertexSet;
use crate::solver::{clique_cover_bound, independence_number, is_independent, max_degree_in};

/// Vertex cap for the state-space oracle.
pub const STATE_SEARCH_VERTEX_CAP: usize = 20;
/// Vertex cap for the reduced oracle.
pub const REDUCED_SEARCH_VERTEX_CAP: usize = 64;
/// Vertex cap for full optimal-family enumeration.
pub const FAMILY_ENUMERATION_VERTEX_CAP: usize = 16;

/// A validated cross family: no edge between distinct parts.
#[derive(Clone, Debug)]
pub struct CrossFamily {
    parts: Vec<VertexSet>,
    total: usize,
}

impl CrossFamily {
    pub fn new(g: &SystemGraph, parts: Vec<VertexSet>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameters("a cross family needs at least one part".into()));
        }
        for p in &parts {
            assert_eq!(p.universe(), g.vertex_count(), "part universe does not match graph");
        }
        if let Some((i, j)) = cross_violation(g, &parts) {
            return Err(Error::NotACrossFamily { i, j });
        }
        let total = parts.iter().map(VertexSet::len).sum();
        Ok(CrossFamily { parts, total })
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn total_size(&self) -> usize {
        self.total
    }
}

pub fn is_cross_family(g: &SystemGraph, parts: &[VertexSet]) -> bool {
    !parts.is_empty() && cross_violation(g, parts).is_none()
}

/// First ordered pair (i, j) with an edge from A_i into A_j, if any.
fn cross_violation(g: &SystemGraph, parts: &[VertexSet]) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    for (i, a) in parts.iter().enumerate() {
        let mut reach = VertexSet::empty(n);
        for v in a.iter() {
            reach.union_with(g.neighbors(v));
        }
        for (j, b) in parts.iter().enumerate() {
            if i != j && !reach.is_disjoint(b) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Position of m relative to the threshold |V|/α.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    BelowThreshold,
    AtThreshold,
    AboveThreshold,
}

pub fn regime(vertex_count: usize, alpha: usize, m: usize) -> Regime {
    match (m * alpha).cmp(&vertex_count) {
        std::cmp::Ordering::Less => Regime::BelowThreshold,
        std::cmp::Ordering::Equal => Regime::AtThreshold,
        std::cmp::Ordering::Greater => Regime::AboveThreshold,
    }
}

/// The closed-form optimum for connected vertex-transitive graphs.
pub fn alpha_m_bound(vertex_count: usize, alpha: usize, m: usize) -> usize {
    vertex_count.max(m * alpha)
}

/// An oracle result: the exact optimum, one witness family, search effort.
#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub value: usize,
    pub witness: CrossFamily,
    pub node_count: u64,
}

/// Exact optimal cross-family total, dispatching to the state search on
/// small graphs and the reduced search beyond.
pub fn brute_force_alpha_m(g: &SystemGraph, m: usize) -> Result<OracleOutcome> {
    if g.vertex_count() <= 12 {
        alpha_m_by_states(g, m)
    } else {
        alpha_m_by_reduction(g, m)
    }
}

fn check_parts(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameters("need at least one part".into()));
    }
    if m > 64 {
        return Err(Error::InvalidParameters(format!("{m} parts is more than supported (64)")));
    }
    Ok(())
}

// State encoding for the normal-form search: 0 is "in no part",
// 1..=m is "in exactly that part", m+1 is "in all m parts".
const EMPTY_STATE: u8 = 0;

struct StateSearch<'g> {
    g: &'g SystemGraph,
    n: usize,
    m: usize,
    all_state: u8,
    assigned: Vec<u8>,
    nodes: u64,
}

/// What the already-assigned neighbors allow a vertex to be.
enum SingletonChoice {
    Any,
    Fixed(u8),
    None,
}

impl<'g> StateSearch<'g> {
    fn new(g: &'g SystemGraph, m: usize) -> Self {
        let n = g.vertex_count();
        StateSearch {
            g,
            n,
            m,
            all_state: (m + 1) as u8,
            assigned: vec![EMPTY_STATE; n],
            nodes: 0,
        }
    }

    /// Constraints on vertex v from the neighbors assigned so far.  Only
    /// slots below `assigned_below` are live; later slots hold stale values
    /// from abandoned branches and must not be read.
    fn constraints(&self, v: usize, assigned_below: usize) -> (bool, SingletonChoice) {
        let mut can_all = true;
        let mut choice = SingletonChoice::Any;
        for w in self.g.neighbors(v).iter() {
            if w >= assigned_below {
                break;
            }
            let s = self.assigned[w];
            if s == EMPTY_STATE {
                continue;
            }
            can_all = false;
            if s == self.all_state {
                choice = SingletonChoice::None;
                break;
            }
            choice = match choice {
                SingletonChoice::Any => SingletonChoice::Fixed(s),
                SingletonChoice::Fixed(c) if c == s => SingletonChoice::Fixed(c),
                _ => SingletonChoice::None,
            };
            if matches!(choice, SingletonChoice::None) {
                break;
            }
        }
        (can_all, choice)
    }

    /// Optimistic total still available from vertex `from` on: each later
    /// vertex scores m unless assigned neighbors already pin it down.
    fn ceiling_sum(&self, from: usize) -> usize {
        (from..self.n)
            .map(|v| {
                let (can_all, choice) = self.constraints(v, from);
                if can_all && self.m >= 2 {
                    self.m
                } else {
                    match choice {
                        SingletonChoice::None => 0,
                        _ => 1,
                    }
                }
            })
            .sum()
    }

    /// Branch-and-bound for the best total.  Singleton labels are used in
    /// first-appearance order, which fixes one representative per
    /// relabeling orbit and is harmless for the value.
    fn best_value(&mut self, depth: usize, score: usize, max_used: u8, best: &mut (usize, Vec<u8>)) {
        self.nodes += 1;
        if depth == self.n {
            if score > best.0 {
                *best = (score, self.assigned.clone());
            }
            return;
        }
        if score + self.ceiling_sum(depth) <= best.0 {
            return;
        }
        let (can_all, choice) = self.constraints(depth, depth);
        if self.m >= 2 && can_all {
            self.assigned[depth] = self.all_state;
            self.best_value(depth + 1, score + self.m, max_used, best);
        }
        match choice {
            SingletonChoice::Fixed(c) => {
                self.assigned[depth] = c;
                self.best_value(depth + 1, score + 1, max_used, best);
            }
            SingletonChoice::Any => {
                let top = (max_used + 1).min(self.m as u8);
                for c in 1..=top {
                    self.assigned[depth] = c;
                    self.best_value(depth + 1, score + 1, max_used.max(c), best);
                }
            }
            SingletonChoice::None => {}
        }
        self.assigned[depth] = EMPTY_STATE;
        self.best_value(depth + 1, score, max_used, best);
    }

    /// Collects every assignment reaching `target`, canonical under
    /// relabeling (singleton labels in first-appearance order).
    #[allow(clippy::too_many_arguments)]
    fn collect(
        &mut self,
        depth: usize,
        score: usize,
        max_used: u8,
        target: usize,
        cap: usize,
        out: &mut Vec<Vec<u8>>,
        truncated: &mut bool,
    ) {
        if *truncated {
            return;
        }
        self.nodes += 1;
        if depth == self.n {
            if score == target {
                if out.len() == cap {
                    *truncated = true;
                } else {
                    out.push(self.assigned.clone());
                }
            }
            return;
        }
        if score + self.ceiling_sum(depth) < target {
            return;
        }
        let (can_all, choice) = self.constraints(depth, depth);
        if self.m >= 2 && can_all {
            self.assigned[depth] = self.all_state;
            self.collect(depth + 1, score + self.m, max_used, target, cap, out, truncated);
        }
        match choice {
            SingletonChoice::Fixed(c) => {
                self.assigned[depth] = c;
                self.collect(depth + 1, score + 1, max_used, target, cap, out, truncated);
            }
            SingletonChoice::Any => {
                let top = (max_used + 1).min(self.m as u8);
                for c in 1..=top {
                    self.assigned[depth] = c;
                    self.collect(depth + 1, score + 1, max_used.max(c), target, cap, out, truncated);
                }
            }
            SingletonChoice::None => {}
        }
        self.assigned[depth] = EMPTY_STATE;
        self.collect(depth + 1, score, max_used, target, cap, out, truncated);
    }

    fn family_of(&self, assignment: &[u8]) -> CrossFamily {
        let parts: Vec<VertexSet> = (1..=self.m)
            .map(|c| {
                VertexSet::from_indices(
                    self.n,
                    (0..self.n)
                        .filter(|&v| assignment[v] == c as u8 || assignment[v] == self.all_state),
                )
                .expect("indices in range")
            })
            .collect();
        CrossFamily::new(self.g, parts).expect("search states satisfy the cross condition")
    }
}

/// Oracle via the (m+2)-state normal form.
pub fn alpha_m_by_states(g: &SystemGraph, m: usize) -> Result<OracleOutcome> {
    check_parts(m)?;
    let n = g.vertex_count();
    if n > STATE_SEARCH_VERTEX_CAP {
        return Err(Error::SearchCapExceeded {
            vertices: n,
            cap: STATE_SEARCH_VERTEX_CAP,
        });
    }
    let mut search = StateSearch::new(g, m);
    let mut best = (0usize, vec![EMPTY_STATE; n]);
    search.best_value(0, 0, 0, &mut best);
    let witness = search.family_of(&best.1);
    debug_assert_eq!(witness.total_size(), best.0);
    Ok(OracleOutcome {
        value: best.0,
        witness,
        node_count: search.nodes,
    })
}

/// Oracle via the reduction to independent sets: maximize
/// m|T| + |V − N[T]| over independent T, by branch and bound.
pub fn alpha_m_by_reduction(g: &SystemGraph, m: usize) -> Result<OracleOutcome> {
    check_parts(m)?;
    let n = g.vertex_count();
    if n > REDUCED_SEARCH_VERTEX_CAP {
        return Err(Error::SearchCapExceeded {
            vertices: n,
            cap: REDUCED_SEARCH_VERTEX_CAP,
        });
    }
    let mut best_t = VertexSet::empty(n);
    let mut best_score = n; // T = ∅ scores |V − N[∅]| = n.
    let mut nodes = 0u64;
    let mut t = VertexSet::empty(n);
    reduced_search(
        g,
        m,
        &VertexSet::full(n),
        &mut t,
        &VertexSet::empty(n),
        &mut best_score,
        &mut best_t,
        &mut nodes,
    );
    let outside = g.outside_neighborhood(&best_t);
    let mut parts = vec![best_t.clone(); m];
    parts[0].union_with(&outside);
    let witness = CrossFamily::new(g, parts).expect("reduced witness is a cross family");
    debug_assert_eq!(witness.total_size(), best_score);
    Ok(OracleOutcome {
        value: best_score,
        witness,
        node_count: nodes,
    })
}

#[allow(clippy::too_many_arguments)]
fn reduced_search(
    g: &SystemGraph,
    m: usize,
    cand: &VertexSet,
    t: &mut VertexSet,
    closed: &VertexSet,
    best_score: &mut usize,
    best_t: &mut VertexSet,
    nodes: &mut u64,
) {
    *nodes += 1;
    let n = g.vertex_count();
    let score = m * t.len() + (n - closed.len());
    if score > *best_score {
        *best_score = score;
        *best_t = t.clone();
    }
    if cand.is_empty() {
        return;
    }
    // Supersets of T can add at most a clique cover's worth of vertices,
    // and N[T] never shrinks.
    let bound = m * (t.len() + clique_cover_bound(g, cand)) + (n - closed.len());
    if bound <= *best_score {
        return;
    }
    let v = max_degree_in(g, cand);
    let mut with_v = cand.difference(g.neighbors(v));
    with_v.remove(v);
    let mut closed_v = closed.union(g.neighbors(v));
    closed_v.insert(v);
    t.insert(v);
    reduced_search(g, m, &with_v, t, &closed_v, best_score, best_t, nodes);
    t.remove(v);
    let mut without_v = cand.clone();
    without_v.remove(v);
    reduced_search(g, m, &without_v, t, closed, best_score, best_t, nodes);
}

/// Every optimal family, one representative per relabeling orbit, sorted.
#[derive(Clone, Debug)]
pub struct OptimalFamilies {
    pub value: usize,
    pub families: Vec<CrossFamily>,
    pub truncated: bool,
}

pub fn enumerate_optimal_families(g: &SystemGraph, m: usize, cap: usize) -> Result<OptimalFamilies> {
    check_parts(m)?;
    let n = g.vertex_count();
    if n > FAMILY_ENUMERATION_VERTEX_CAP {
        return Err(Error::SearchCapExceeded {
            vertices: n,
            cap: FAMILY_ENUMERATION_VERTEX_CAP,
        });
    }
    let value = alpha_m_by_states(g, m)?.value;
    let mut search = StateSearch::new(g, m);
    let mut assignments = Vec::new();
    let mut truncated = false;
    search.collect(0, 0, 0, value, cap, &mut assignments, &mut truncated);
    let mut families: Vec<CrossFamily> = assignments
        .iter()
        .map(|a| search.family_of(a))
        .collect();
    families.sort_by(|a, b| {
        for (x, y) in a.parts().iter().zip(b.parts()) {
            let ord = x.cmp_members(y);
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    });
    Ok(OptimalFamilies {
        value,
        families,
        truncated,
    })
}

/// The star/prime split of a cross family.  The star of a part holds its
/// members with no neighbor inside the part; the prime part is the rest.
/// For any cross family: the union of stars is independent, the primes are
/// pairwise disjoint, and every prime vertex lies outside the closed
/// neighborhood of the star union.  All three are computed and reported.
#[derive(Clone, Debug)]
pub struct StarDecomposition {
    pub stars: Vec<VertexSet>,
    pub primes: Vec<VertexSet>,
    pub star_union: VertexSet,
    /// Present when every part has the same star.
    pub common_star: Option<VertexSet>,
    pub star_union_independent: bool,
    pub primes_pairwise_disjoint: bool,
    pub primes_outside_star_neighborhood: bool,
}

impl StarDecomposition {
    pub fn invariants_hold(&self) -> bool {
        self.star_union_independent
            && self.primes_pairwise_disjoint
            && self.primes_outside_star_neighborhood
    }
}

pub fn star_decomposition(g: &SystemGraph, family: &CrossFamily) -> StarDecomposition {
    let n = g.vertex_count();
    let mut stars = Vec::with_capacity(family.m());
    let mut primes = Vec::with_capacity(family.m());
    for part in family.parts() {
        let mut star = VertexSet::empty(n);
        for v in part.iter() {
            if g.neighbors(v).is_disjoint(part) {
                star.insert(v);
            }
        }
        primes.push(part.difference(&star));
        stars.push(star);
    }
    let mut star_union = VertexSet::empty(n);
    for s in &stars {
        star_union.union_with(s);
    }
    let common_star = if stars.iter().all(|s| s == &stars[0]) {
        Some(stars[0].clone())
    } else {
        None
    };
    let star_union_independent = is_independent(g, &star_union);
    let mut primes_pairwise_disjoint = true;
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            if !primes[i].is_disjoint(&primes[j]) {
                primes_pairwise_disjoint = false;
            }
        }
    }
    let outside = g.outside_neighborhood(&star_union);
    let primes_outside_star_neighborhood = primes.iter().all(|p| p.is_subset_of(&outside));
    debug_assert!(star_union_independent && primes_pairwise_disjoint && primes_outside_star_neighborhood);
    StarDecomposition {
        stars,
        primes,
        star_union,
        common_star,
        star_union_independent,
        primes_pairwise_disjoint,
        primes_outside_star_neighborhood,
    }
}

/// Which equality case an optimal family realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// Strictly below the threshold: the whole vertex set in one part.
    WholeGround,
    /// Strictly above: the same maximum independent set in every part.
    RepeatedMaximum,
    /// At the threshold, in one of the two shapes above.
    ThresholdTrivial,
    /// At the threshold, built around a common star.
    ThresholdImprimitive,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub m: usize,
    pub alpha: usize,
    pub bound: usize,
    pub regime: Regime,
    pub case: CaseTag,
    /// The optimum formula is only guaranteed on connected
    /// vertex-transitive graphs; false flags a classification made
    /// outside that guarantee.
    pub connected: bool,
    pub star: StarDecomposition,
}

/// Classifies a family whose total meets max(|V|, m·α).  Families that
/// miss the optimum are rejected with `NotOptimal`.
pub fn classify_optimal(g: &SystemGraph, family: &CrossFamily) -> Result<Classification> {
    let n = g.vertex_count();
    let alpha = independence_number(g).alpha;
    let m = family.m();
    let bound = alpha_m_bound(n, alpha, m);
    if family.total_size() != bound {
        return Err(Error::NotOptimal {
            total: family.total_size(),
            bound,
        });
    }
    let reg = regime(n, alpha, m);
    let nonempty = family.parts().iter().filter(|p| !p.is_empty()).count();
    let whole_ground = nonempty == 1 && family.parts().iter().any(|p| p.len() == n);
    let repeated_maximum = family.parts().iter().all(|p| p == &family.parts()[0])
        && family.parts()[0].len() == alpha
        && is_independent(g, &family.parts()[0]);
    let case = if whole_ground || repeated_maximum {
        match reg {
            Regime::AtThreshold => CaseTag::ThresholdTrivial,
            Regime::BelowThreshold => CaseTag::WholeGround,
            Regime::AboveThreshold => CaseTag::RepeatedMaximum,
        }
    } else {
        CaseTag::ThresholdImprimitive
    };
    Ok(Classification {
        m,
        alpha,
        bound,
        regime: reg,
        case,
        connected: g.is_connected(),
        star: star_decomposition(g, family),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_subset_system;
    use proptest::prelude::*;

    fn cycle5() -> SystemGraph {
        SystemGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap()
    }

    fn petersen() -> SystemGraph {
        build_subset_system(5, 2, 1).unwrap().graph
    }

    fn three_pairs() -> SystemGraph {
        build_subset_system(4, 2, 1).unwrap().graph
    }

    #[test]
    fn oracle_values_on_the_five_cycle() {
        let g = cycle5();
        for (m, want) in [(1, 5), (2, 5), (3, 6)] {
            let states = alpha_m_by_states(&g, m).unwrap();
            let reduced = alpha_m_by_reduction(&g, m).unwrap();
            assert_eq!(states.value, want, "states, m={m}");
            assert_eq!(reduced.value, want, "reduced, m={m}");
            assert_eq!(states.witness.total_size(), want);
            assert_eq!(reduced.witness.total_size(), want);
        }
    }

    #[test]
    fn oracle_values_on_petersen() {
        let g = petersen();
        for (m, want) in [(1, 10), (2, 10), (3, 12)] {
            assert_eq!(alpha_m_by_states(&g, m).unwrap().value, want);
            assert_eq!(alpha_m_by_reduction(&g, m).unwrap().value, want);
        }
    }

    #[test]
    fn oracle_agrees_with_bound_on_three_pairs() {
        let g = three_pairs();
        let out = brute_force_alpha_m(&g, 2).unwrap();
        assert_eq!(out.value, 6);
        assert_eq!(out.value, alpha_m_bound(6, 3, 2));
    }

    #[test]
    fn disconnected_non_transitive_graph_beats_the_bound() {
        // Triangle plus isolated vertex: α = 2, bound would be 4, truth is 5.
        let g = SystemGraph::from_edges(4, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let out = brute_force_alpha_m(&g, 2).unwrap();
        assert_eq!(out.value, 5);
        assert!(out.value > alpha_m_bound(4, 2, 2));
        assert_eq!(alpha_m_by_reduction(&g, 2).unwrap().value, 5);
    }

    #[test]
    fn rejects_bad_part_counts() {
        let g = cycle5();
        assert!(matches!(
            alpha_m_by_states(&g, 0),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            alpha_m_by_states(&g, 65),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn cross_family_validation() {
        let g = three_pairs();
        let a = VertexSet::from_indices(6, [0]).unwrap();
        let b = VertexSet::from_indices(6, [5]).unwrap();
        let err = CrossFamily::new(&g, vec![a.clone(), b]).unwrap_err();
        assert!(matches!(err, Error::NotACrossFamily { i: 0, j: 1 }));
        // A part may contain edges internally.
        let with_edge = VertexSet::from_indices(6, [0, 5]).unwrap();
        let fam = CrossFamily::new(&g, vec![with_edge, VertexSet::empty(6)]).unwrap();
        assert_eq!(fam.total_size(), 2);
        // Overlapping parts are fine when no cross edge appears.
        let fam = CrossFamily::new(&g, vec![a.clone(), a.clone()]).unwrap();
        assert_eq!(fam.total_size(), 2);
    }

    #[test]
    fn enumerate_petersen_two_parts() {
        let g = petersen();
        let out = enumerate_optimal_families(&g, 2, 1000).unwrap();
        assert_eq!(out.value, 10);
        assert!(!out.truncated);
        // Only the whole ground set in one part (one representative per
        // relabeling orbit).
        assert_eq!(out.families.len(), 1);
        let parts = out.families[0].parts();
        assert_eq!(parts[0].len(), 10);
        assert_eq!(parts[1].len(), 0);
    }

    #[test]
    fn enumerate_petersen_three_parts() {
        let g = petersen();
        let out = enumerate_optimal_families(&g, 3, 1000).unwrap();
        assert_eq!(out.value, 12);
        assert!(!out.truncated);
        // Exactly the five families repeating one maximum independent set.
        assert_eq!(out.families.len(), 5);
        let stars = [
            vec![0, 1, 3, 6],
            vec![0, 2, 4, 7],
            vec![1, 2, 5, 8],
            vec![3, 4, 5, 9],
            vec![6, 7, 8, 9],
        ];
        for fam in &out.families {
            let first = fam.parts()[0].to_vec();
            assert!(stars.contains(&first), "unexpected family part {first:?}");
            assert!(fam.parts().iter().all(|p| p.to_vec() == first));
        }
    }

    #[test]
    fn enumerate_three_pairs_two_parts_has_all_three_shapes() {
        let g = three_pairs();
        let out = enumerate_optimal_families(&g, 2, 10_000).unwrap();
        assert_eq!(out.value, 6);
        assert!(!out.truncated);
        let as_vecs: Vec<(Vec<usize>, Vec<usize>)> = out
            .families
            .iter()
            .map(|f| (f.parts()[0].to_vec(), f.parts()[1].to_vec()))
            .collect();
        // Whole ground set in one part.
        assert!(as_vecs.contains(&((0..6).collect(), vec![])));
        // A repeated maximum independent set.
        assert!(as_vecs.contains(&(vec![0, 1, 2], vec![0, 1, 2])));
        // A genuinely mixed shape around the common star {0}.
        assert!(as_vecs.contains(&(vec![0, 1, 4], vec![0, 2, 3])));
    }

    #[test]
    fn star_decomposition_of_a_mixed_family() {
        let g = three_pairs();
        let fam = CrossFamily::new(
            &g,
            vec![
                VertexSet::from_indices(6, [0, 1, 4]).unwrap(),
                VertexSet::from_indices(6, [0, 2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let star = star_decomposition(&g, &fam);
        assert_eq!(star.stars[0].to_vec(), vec![0]);
        assert_eq!(star.stars[1].to_vec(), vec![0]);
        assert_eq!(star.primes[0].to_vec(), vec![1, 4]);
        assert_eq!(star.primes[1].to_vec(), vec![2, 3]);
        assert_eq!(star.common_star.as_ref().unwrap().to_vec(), vec![0]);
        assert!(star.invariants_hold());
    }

    #[test]
    fn classification_tags() {
        let g = petersen();
        // Below threshold: whole ground set.
        let whole = CrossFamily::new(&g, vec![VertexSet::full(10), VertexSet::empty(10)]).unwrap();
        let c = classify_optimal(&g, &whole).unwrap();
        assert_eq!(c.regime, Regime::BelowThreshold);
        assert_eq!(c.case, CaseTag::WholeGround);
        assert!(c.connected);

        // Above threshold: repeated maximum independent set.
        let star = VertexSet::from_indices(10, [0, 1, 3, 6]).unwrap();
        let repeated = CrossFamily::new(&g, vec![star.clone(), star.clone(), star]).unwrap();
        let c = classify_optimal(&g, &repeated).unwrap();
        assert_eq!(c.regime, Regime::AboveThreshold);
        assert_eq!(c.case, CaseTag::RepeatedMaximum);

        // At threshold on the disconnected system: mixed family.
        let g = three_pairs();
        let mixed = CrossFamily::new(
            &g,
            vec![
                VertexSet::from_indices(6, [0, 1, 4]).unwrap(),
                VertexSet::from_indices(6, [0, 2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let c = classify_optimal(&g, &mixed).unwrap();
        assert_eq!(c.regime, Regime::AtThreshold);
        assert_eq!(c.case, CaseTag::ThresholdImprimitive);
        assert!(!c.connected);

        // Trivial shapes at the threshold get the threshold tag.
        let trivial = CrossFamily::new(&g, vec![VertexSet::full(6), VertexSet::empty(6)]).unwrap();
        let c = classify_optimal(&g, &trivial).unwrap();
        assert_eq!(c.case, CaseTag::ThresholdTrivial);
    }

    #[test]
    fn classification_rejects_suboptimal_families() {
        let g = petersen();
        let star = VertexSet::from_indices(10, [0, 1, 3, 6]).unwrap();
        let fam = CrossFamily::new(&g, vec![star.clone(), star]).unwrap();
        let err = classify_optimal(&g, &fam).unwrap_err();
        assert!(matches!(err, Error::NotOptimal { total: 8, bound: 10 }));
    }

    #[test]
    fn enumeration_cap_reports_truncation() {
        let g = three_pairs();
        let out = enumerate_optimal_families(&g, 2, 3).unwrap();
        assert!(out.truncated);
        assert_eq!(out.families.len(), 3);
    }

    #[test]
    fn vertex_caps_are_enforced() {
        let g = SystemGraph::from_edges(21, &[(0, 1)]).unwrap();
        assert!(matches!(
            alpha_m_by_states(&g, 2),
            Err(Error::SearchCapExceeded { vertices: 21, .. })
        ));
        assert!(matches!(
            enumerate_optimal_families(&g, 2, 10),
            Err(Error::SearchCapExceeded { .. })
        ));
        let big = SystemGraph::from_edges(65, &[(0, 1)]).unwrap();
        assert!(matches!(
            alpha_m_by_reduction(&big, 2),
            Err(Error::SearchCapExceeded { vertices: 65, .. })
        ));
    }

    fn seeded_graph(n: usize, seed: u64) -> SystemGraph {
        SystemGraph::from_pair_relation(n, |u, v| {
            if u == v {
                return true;
            }
            let (a, b) = (u.min(v), u.max(v));
            (seed >> ((a * 13 + b * 3) % 64)) & 1 == 0
        })
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

        // The two oracles and the unreduced reference agree on arbitrary
        // small graphs, vertex-transitive or not.
        #[test]
        fn oracle_three_way_agreement(n in 1usize..7, m in 1usize..4, seed in any::<u64>()) {
            let g = seeded_graph(n, seed);
            let states = alpha_m_by_states(&g, m).unwrap();
            let reduced = alpha_m_by_reduction(&g, m).unwrap();
            let unreduced = crate::reference::alpha_m_unreduced(&g, m);
            prop_assert_eq!(states.value, unreduced);
            prop_assert_eq!(reduced.value, unreduced);
        }

        // Optimal-family enumeration returns valid, optimal, distinct
        // families and always includes the two trivial shapes when they
        // reach the optimum.
        #[test]
        fn enumeration_families_are_valid(n in 1usize..6, m in 1usize..4, seed in any::<u64>()) {
            let g = seeded_graph(n, seed);
            let out = enumerate_optimal_families(&g, m, 100_000).unwrap();
            prop_assert!(!out.truncated);
            for fam in &out.families {
                prop_assert_eq!(fam.m(), m);
                prop_assert_eq!(fam.total_size(), out.value);
                prop_assert!(is_cross_family(&g, fam.parts()));
                let star = star_decomposition(&g, fam);
                prop_assert!(star.invariants_hold());
            }
            if out.value == n {
                let whole: Vec<usize> = (0..n).collect();
                let has_trivial = out.families.iter().any(|f| {
                    f.parts()[0].to_vec() == whole && f.parts()[1..].iter().all(|p| p.is_empty())
                });
                prop_assert!(has_trivial, "trivial family missing at value n");
            }
        }
    }
}
