//! Permutations, generator sets, orbits and block systems.
//!
//! Groups are handled entirely through generators: orbits and blocks come
//! from closure under the generators, so no group elements beyond the given
//! ones are ever stored.  Since the groups are finite, closure under
//! generators alone already reaches everything the generated group reaches.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SystemGraph;
use crate::set::VertexSet;

/// A permutation of 0..degree, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotABijection { value: x });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Convenience constructor from disjoint cycles (points not mentioned
    /// are fixed).  Mostly for tests and for naming the standard generators.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x >= degree || y >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x.max(y),
                        degree,
                    });
                }
                images[x] = y;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition acting as self after other: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Pointwise image of a vertex set.
    pub fn act_on_set(&self, s: &VertexSet) -> VertexSet {
        assert_eq!(s.universe(), self.degree());
        let mut out = VertexSet::empty(self.degree());
        for v in s.iter() {
            out.insert(self.images[v]);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.images)
    }
}

/// A nonempty list of same-degree permutations, treated as group generators.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    degree: usize,
    gens: Vec<Permutation>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGeneratorSet)?;
        let degree = first.degree();
        if degree == 0 {
            return Err(Error::EmptyGroundSet);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        Ok(GeneratorSet { degree, gens })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Orbit of a point under generator closure (breadth first).
    pub fn orbit(&self, x: usize) -> Result<VertexSet> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        let mut seen = VertexSet::singleton(self.degree, x);
        let mut queue = vec![x];
        while let Some(p) = queue.pop() {
            for g in &self.gens {
                let q = g.apply(p);
                if !seen.contains(q) {
                    seen.insert(q);
                    queue.push(q);
                }
            }
        }
        Ok(seen)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// The finest block system of the generated group whose blocks merge the
    /// two given points.  Classical union-find refinement: propagate the
    /// seed identification through the generators until the partition is
    /// closed under all of them.
    ///
    /// When a merge joins two classes, the losing representative is queued;
    /// processing a queued point p against its current representative r
    /// enforces g(p) ~ g(r) for every generator.  On termination every class
    /// is closed under every generator, and every union performed was forced
    /// by the seed pair, so the partition is the finest one.
    pub fn finest_blocks_containing(&self, a: usize, b: usize) -> Result<BlockSystem> {
        for p in [a, b] {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        if a == b {
            return Err(Error::IdenticalPoints);
        }
        let mut uf = UnionFind::new(self.degree);
        let mut queue = VecDeque::new();
        let absorbed = uf.union(a, b).expect("distinct points always merge");
        queue.push_back(absorbed);
        while let Some(p) = queue.pop_front() {
            let r = uf.find(p);
            for g in &self.gens {
                if let Some(lost) = uf.union(g.apply(p), g.apply(r)) {
                    queue.push_back(lost);
                }
            }
        }

        let mut cells_by_root: Vec<Option<VertexSet>> = vec![None; self.degree];
        for v in 0..self.degree {
            let r = uf.find(v);
            cells_by_root[r]
                .get_or_insert_with(|| VertexSet::empty(self.degree))
                .insert(v);
        }
        let mut cells: Vec<VertexSet> = cells_by_root.into_iter().flatten().collect();
        cells.sort_by_key(|x| x.first());
        let system = BlockSystem {
            degree: self.degree,
            cells,
        };
        debug_assert!(self.gens.iter().all(|g| system.is_preserved_by(g)));
        Ok(system)
    }

    /// Primitivity of the generated action: no nontrivial block system.
    /// Requires a transitive action on at least two points; the witness for
    /// imprimitivity is the first nontrivial finest block system found.
    pub fn is_primitive_action(&self) -> Result<ActionVerdict> {
        if self.degree < 2 {
            return Err(Error::DegreeTooSmall {
                degree: self.degree,
            });
        }
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        for b in 1..self.degree {
            let system = self.finest_blocks_containing(0, b)?;
            if !system.is_trivial() {
                return Ok(ActionVerdict::Imprimitive(system));
            }
        }
        Ok(ActionVerdict::Primitive)
    }
}

#[derive(Debug)]
pub enum ActionVerdict {
    Primitive,
    Imprimitive(BlockSystem),
}

impl ActionVerdict {
    pub fn is_primitive(&self) -> bool {
        matches!(self, ActionVerdict::Primitive)
    }
}

/// A partition of 0..degree into blocks, sorted by smallest member.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    degree: usize,
    cells: Vec<VertexSet>,
}

impl BlockSystem {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cells(&self) -> &[VertexSet] {
        &self.cells
    }

    /// Trivial means all singletons, or a single block.
    pub fn is_trivial(&self) -> bool {
        self.cells.len() == 1 || self.cells.len() == self.degree
    }

    pub fn cell_containing(&self, v: usize) -> &VertexSet {
        self.cells
            .iter()
            .find(|c| c.contains(v))
            .expect("cells partition the points")
    }

    /// Post-hoc check that a permutation maps every cell onto some cell.
    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        self.cells.iter().all(|cell| {
            let image = g.act_on_set(cell);
            self.cells.contains(&image)
        })
    }
}

/// Checks that a permutation of the vertices preserves adjacency.
pub fn is_automorphism(g: &SystemGraph, p: &Permutation) -> Result<bool> {
    let n = g.vertex_count();
    if p.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            got: p.degree(),
        });
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.is_edge(u, v) != g.is_edge(p.apply(u), p.apply(v)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Plain union-find with path halving; union returns the root that lost.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of x and y.  Returns the representative that
    /// stopped being a root, or None if they were already together.
    fn union(&mut self, x: usize, y: usize) -> Option<usize> {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return None;
        }
        // Keep the smaller root as representative for determinism.
        let (keep, lose) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[lose] = keep;
        Some(lose)
    }
}
