//! The symmetric group S_n with the agreement threshold t.
//!
//! Vertices are all n! permutations of {1..n}, listed in lexicographic order
//! of their image sequences.  Edge iff the two permutations agree on fewer
//! than t points, so independent sets are t-agreeing families.  For t = 1
//! this is the derangement graph of S_n.

use crate::constructions::{factorial, BuiltSystem, SystemDescriptor};
use crate::error::{Error, Result};
use crate::graph::{check_vertex_budget, SystemGraph};
use crate::group::{GeneratorSet, Permutation};

pub(super) fn build(n: u32, t: u32, cap: usize) -> Result<BuiltSystem> {
    let count = check_vertex_budget(factorial(n)?, cap)?;
    let verts = all_permutations(n as usize);
    debug_assert_eq!(verts.len(), count);

    let agreements = |u: usize, v: usize| {
        verts[u]
            .iter()
            .zip(verts[v].iter())
            .filter(|(a, b)| a == b)
            .count()
    };
    let mut graph =
        SystemGraph::from_pair_relation_with_cap(count, |u, v| agreements(u, v) >= t as usize, cap)?;
    graph.set_labels(verts.iter().map(|p| perm_label(p)).collect())?;
    graph.set_meta(SystemDescriptor::Perms { n, t });

    let generators = translation_generators(n as usize, &verts)?;
    if !generators.is_transitive() {
        return Err(Error::NotVertexTransitive("translation generators"));
    }
    Ok(BuiltSystem { graph, generators })
}

/// All permutations of 0..n as image vectors, in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Lexicographic rank of an image vector among all permutations, via the
/// factorial number system.
fn lex_rank(images: &[usize]) -> usize {
    let n = images.len();
    let mut rank = 0;
    let mut fact = (1..n).product::<usize>().max(1);
    for i in 0..n {
        let smaller = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank += smaller * fact;
        if i + 1 < n {
            fact /= n - 1 - i;
        }
    }
    rank
}

fn perm_label(images: &[usize]) -> String {
    let parts: Vec<String> = images.iter().map(|&x| (x + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Left translations by an n-cycle and a transposition.  These generate all
/// of S_n acting regularly on itself, so the action on vertices is
/// transitive (and free).
fn translation_generators(n: usize, verts: &[Vec<usize>]) -> Result<GeneratorSet> {
    if n == 1 {
        return GeneratorSet::new(vec![Permutation::identity(1)]);
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let translate = |g: &[usize]| -> Result<Permutation> {
        let images = verts
            .iter()
            .map(|sigma| {
                // Left translation sends sigma to g∘sigma, acting pointwise.
                let composed: Vec<usize> = sigma.iter().map(|&x| g[x]).collect();
                lex_rank(&composed)
            })
            .collect();
        Permutation::from_images(images)
    };
    GeneratorSet::new(vec![translate(&cycle)?, translate(&swap)?])
}
