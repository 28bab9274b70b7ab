//! k-dimensional subspaces of GF(q)^n with the intersection threshold t.
//!
//! A subspace is identified with its reduced-row-echelon basis matrix, which
//! is unique, so matrix data doubles as the canonical vertex key.  Vertices
//! are listed in lexicographic order of the flattened row-major entries.
//! Edge iff dim(A ∩ B) < t.

use std::collections::HashMap;
use std::fmt;

use crate::constructions::{gaussian_binomial, BuiltSystem, SystemDescriptor};
use crate::error::{Error, Result};
use crate::gf::{check_prime, primitive_root, MatGF};
use crate::graph::{check_vertex_budget, SystemGraph};
use crate::group::{GeneratorSet, Permutation};

/// A k-dimensional subspace of GF(q)^n, stored as the unique reduced
/// row echelon basis (k nonzero rows, pivots 1, pivot columns otherwise
/// clear, pivot columns strictly increasing).
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    mat: MatGF,
}

impl SubspaceBasis {
    /// Canonicalizes a spanning set: the rows must be linearly independent
    /// (rank equal to the number of rows); entries are reduced mod q.
    pub fn new(q: u32, n: u32, rows: &[Vec<u32>]) -> Result<Self> {
        check_prime(q)?;
        if n == 0 {
            return Err(Error::InvalidParameters("ambient dimension must be positive".into()));
        }
        if rows.is_empty() {
            return Err(Error::InvalidParameters("a basis needs at least one row".into()));
        }
        for row in rows {
            if row.len() != n as usize {
                return Err(Error::InvalidParameters(format!(
                    "basis row has {} entries, ambient dimension is {n}",
                    row.len()
                )));
            }
        }
        let mut mat = MatGF::from_rows(q, rows);
        let rank = mat.rref();
        if rank != rows.len() {
            return Err(Error::BadBasis {
                k: rows.len() as u32,
                rank: rank as u32,
            });
        }
        Ok(SubspaceBasis { mat })
    }

    pub fn q(&self) -> u32 {
        self.mat.q
    }

    /// Ambient dimension n.
    pub fn ambient(&self) -> u32 {
        self.mat.cols as u32
    }

    /// Dimension k of the subspace.
    pub fn dim(&self) -> u32 {
        self.mat.rows as u32
    }

    /// The canonical basis rows.
    pub fn entries(&self) -> Vec<Vec<u32>> {
        (0..self.mat.rows).map(|i| self.mat.row(i).to_vec()).collect()
    }

    /// dim(self ∩ other) = dim(self) + dim(other) - dim(self + other),
    /// where the sum's dimension is the rank of the stacked bases.
    pub fn intersection_dim(&self, other: &SubspaceBasis) -> usize {
        assert_eq!(self.mat.q, other.mat.q, "subspaces over different fields");
        assert_eq!(self.mat.cols, other.mat.cols, "ambient dimensions differ");
        let mut stacked = MatGF::new(self.mat.q, self.mat.rows + other.mat.rows, self.mat.cols);
        stacked.data[..self.mat.data.len()].copy_from_slice(&self.mat.data);
        stacked.data[self.mat.data.len()..].copy_from_slice(&other.mat.data);
        self.mat.rows + other.mat.rows - stacked.rref()
    }

    /// Rows as entry strings joined by `|`, e.g. `1011|0100` over GF(2).
    /// Entries are separated by commas only when q has several digits.
    pub fn label(&self) -> String {
        let sep = if self.mat.q <= 9 { "" } else { "," };
        (0..self.mat.rows)
            .map(|i| {
                self.mat
                    .row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    fn key(&self) -> &[u32] {
        &self.mat.data
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceBasis({})", self.label())
    }
}

impl PartialOrd for SubspaceBasis {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubspaceBasis {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.mat.q, self.mat.cols, self.mat.rows, &self.mat.data).cmp(&(
            other.mat.q,
            other.mat.cols,
            other.mat.rows,
            &other.mat.data,
        ))
    }
}

pub(super) fn build(n: u32, k: u32, q: u32, t: u32, cap: usize) -> Result<BuiltSystem> {
    let count = check_vertex_budget(gaussian_binomial(n, k, q)?, cap)?;
    let verts = enumerate(q, n, k);
    debug_assert_eq!(verts.len(), count);

    let mut edges = Vec::new();
    for u in 0..count {
        for v in u + 1..count {
            if verts[u].intersection_dim(&verts[v]) < t as usize {
                edges.push((u, v));
            }
        }
    }
    let mut graph = SystemGraph::from_edges_with_cap(count, &edges, cap)?;
    graph.set_labels(verts.iter().map(|b| b.label()).collect())?;
    graph.set_meta(SystemDescriptor::Subspaces { n, k, q, t });

    let generators = subspace_generators(q, n, &verts)?;
    if !generators.is_transitive() {
        return Err(Error::NotVertexTransitive("subspace generators"));
    }
    Ok(BuiltSystem { graph, generators })
}

/// All k-subspaces, sorted by flattened basis entries.  Enumeration walks
/// the pivot-column sets and fills the free entries with every value
/// combination; each matrix so produced is already in reduced echelon form,
/// and distinct fillings give distinct subspaces, so the count comes out to
/// the Gaussian binomial by construction.
pub(crate) fn enumerate(q: u32, n: u32, k: u32) -> Vec<SubspaceBasis> {
    let mut out = Vec::new();
    for pivots in pivot_sets(n, k) {
        // Free entries: to the right of the row's pivot, not a pivot column.
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j as usize));
                }
            }
        }
        let mut counter = vec![0u32; free.len()];
        loop {
            let mut mat = MatGF::new(q, k as usize, n as usize);
            for (i, &p) in pivots.iter().enumerate() {
                mat[(i, p as usize)] = 1;
            }
            for (slot, &(i, j)) in free.iter().enumerate() {
                mat[(i, j)] = counter[slot];
            }
            debug_assert_eq!(mat.rank(), k as usize);
            out.push(SubspaceBasis { mat });
            // Odometer in base q over the free entries.
            let mut pos = 0;
            loop {
                if pos == counter.len() {
                    break;
                }
                counter[pos] += 1;
                if counter[pos] < q {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == counter.len() {
                break;
            }
        }
    }
    out.sort();
    out
}

/// k-element subsets of 0..n in lexicographic order.
fn pivot_sets(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k as usize {
            out.push(cur.clone());
            return;
        }
        let need = (k as usize - cur.len()) as u32;
        for c in start..=n - need {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Two invertible matrices acting on row spaces from the right: a
/// transvection and a cyclic monomial matrix scaled by a primitive root.
/// Together they generate a group containing the special linear group,
/// which moves any k-subspace to any other; the builder still certifies
/// transitivity rather than trusting this.
fn subspace_generators(q: u32, n: u32, verts: &[SubspaceBasis]) -> Result<GeneratorSet> {
    if n == 1 {
        return GeneratorSet::new(vec![Permutation::identity(verts.len())]);
    }
    let index: HashMap<&[u32], usize> = verts.iter().enumerate().map(|(i, b)| (b.key(), i)).collect();
    let nn = n as usize;
    let mut trans = MatGF::identity(q, nn);
    trans[(0, 1)] = 1;
    let mut cycle = MatGF::new(q, nn, nn);
    for i in 0..nn - 1 {
        cycle[(i, i + 1)] = 1;
    }
    cycle[(nn - 1, 0)] = primitive_root(q);
    let act = |m: &MatGF| -> Result<Permutation> {
        let images = verts
            .iter()
            .map(|b| {
                let mut img = b.mat.mul(m);
                let rank = img.rref();
                debug_assert_eq!(rank, b.mat.rows, "invertible action must keep dimension");
                *index.get(img.data.as_slice()).expect("image must be a known subspace")
            })
            .collect();
        Permutation::from_images(images)
    };
    GeneratorSet::new(vec![act(&trans)?, act(&cycle)?])
}
