//! Brute-force reference computations.
//!
//! Everything here is deliberately naive: direct enumeration over the raw
//! definitions, sharing no search code with the optimized solvers.  The
//! test suites cross-check the fast paths against these, so keep this
//! module dumb and obviously correct rather than clever.

use crate::graph::SystemGraph;

/// α by enumerating every subset of the vertices.  Usable to ~25 vertices.
pub fn alpha_by_subset_enumeration(g: &SystemGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 25, "subset enumeration is only for small graphs");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, w| m | 1 << w))
        .collect();
    let mut best = 0;
    for mask in 0u32..1u32 << n {
        if (mask.count_ones() as usize) <= best {
            continue;
        }
        let mut rest = mask;
        let mut independent = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & mask != 0 {
                independent = false;
                break;
            }
        }
        if independent {
            best = mask.count_ones() as usize;
        }
    }
    best
}

/// The optimal m-part cross-family total, by enumerating every assignment
/// of every vertex to an arbitrary set of parts.  This is the fully general
/// model: a vertex may sit in none, some, or all of the m parts, with no
/// normal-form reduction at all.  The cross condition is checked straight
/// from its definition: no edge may run between two distinct parts.
pub fn alpha_m_unreduced(g: &SystemGraph, m: usize) -> usize {
    let n = g.vertex_count();
    assert!(m >= 1, "need at least one part");
    assert!(m * n <= 24, "unreduced enumeration is only for tiny inputs");
    let states: u32 = 1 << m;

    // pair_ok[a][b]: may adjacent vertices carry part sets a and b?
    let pair_ok: Vec<Vec<bool>> = (0..states)
        .map(|a| {
            (0..states)
                .map(|b| {
                    for i in 0..m {
                        for j in 0..m {
                            if i != j && a >> i & 1 == 1 && b >> j & 1 == 1 {
                                return false;
                            }
                        }
                    }
                    true
                })
                .collect()
        })
        .collect();

    let edges = g.edges();
    let mut assignment = vec![0u32; n];
    let mut best = 0;
    loop {
        let valid = edges
            .iter()
            .all(|&(u, v)| pair_ok[assignment[u] as usize][assignment[v] as usize]);
        if valid {
            let total: usize = assignment.iter().map(|s| s.count_ones() as usize).sum();
            best = best.max(total);
        }
        // Odometer over all state vectors.
        let mut pos = 0;
        loop {
            if pos == n {
                return best;
            }
            assignment[pos] += 1;
            if assignment[pos] < states {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}
