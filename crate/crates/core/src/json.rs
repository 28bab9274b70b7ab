//! JSON import and export of system graphs.
//!
//! The on-disk shape is deliberately plain so hand-written fixtures stay
//! readable: vertex count, canonical edge list, then optional labels,
//! generator images, and the construction descriptor.

use serde::{Deserialize, Serialize};

use crate::constructions::SystemDescriptor;
use crate::error::{Error, Result};
use crate::graph::SystemGraph;
use crate::group::{GeneratorSet, Permutation};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    /// Edges as (u, v) with u < v, sorted.
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Group generators as image arrays.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<SystemDescriptor>,
}

pub fn to_json(g: &SystemGraph, gens: Option<&GeneratorSet>) -> String {
    let doc = GraphJson {
        n: g.vertex_count(),
        edges: g.edges(),
        labels: g.labels().map(|l| l.to_vec()),
        generators: gens.map(|gs| {
            gs.generators()
                .iter()
                .map(|p| p.images().to_vec())
                .collect()
        }),
        meta: g.meta().cloned(),
    };
    serde_json::to_string_pretty(&doc).expect("graph serialization cannot fail")
}

pub fn from_json(text: &str, cap: usize) -> Result<(SystemGraph, Option<GeneratorSet>)> {
    let doc: GraphJson = serde_json::from_str(text)?;
    for &(u, v) in &doc.edges {
        if u >= v {
            return Err(Error::EdgeNotCanonical { u, v });
        }
    }
    let mut g = SystemGraph::from_edges_with_cap(doc.n, &doc.edges, cap)?;
    if let Some(labels) = doc.labels {
        g.set_labels(labels)?;
    }
    if let Some(meta) = doc.meta {
        g.set_meta(meta);
    }
    let gens = match doc.generators {
        Some(images) => {
            let mut perms = Vec::with_capacity(images.len());
            for imgs in images {
                if imgs.len() != doc.n {
                    return Err(Error::DegreeMismatch {
                        expected: doc.n,
                        got: imgs.len(),
                    });
                }
                perms.push(Permutation::from_images(imgs)?);
            }
            Some(GeneratorSet::new(perms)?)
        }
        None => None,
    };
    Ok((g, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_subset_system;
    use crate::graph::DEFAULT_VERTEX_CAP;

    #[test]
    fn petersen_roundtrip() {
        let built = build_subset_system(5, 2, 1).unwrap();
        let text = to_json(&built.graph, Some(&built.generators));
        let (g, gens) = from_json(&text, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), built.graph.vertex_count());
        assert_eq!(g.edges(), built.graph.edges());
        assert_eq!(g.label(0), built.graph.label(0));
        assert_eq!(g.meta(), built.graph.meta());
        let gens = gens.unwrap();
        assert_eq!(gens.generators(), built.generators.generators());
    }

    #[test]
    fn bare_graph_roundtrip() {
        let g = SystemGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let text = to_json(&g, None);
        assert!(!text.contains("labels"));
        assert!(!text.contains("generators"));
        assert!(!text.contains("meta"));
        let (h, gens) = from_json(&text, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (2, 3)]);
        assert!(gens.is_none());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            from_json("{not json", DEFAULT_VERTEX_CAP),
            Err(Error::MalformedJson(_))
        ));
        let swapped = r#"{"n": 3, "edges": [[2, 1]]}"#;
        assert!(matches!(
            from_json(swapped, DEFAULT_VERTEX_CAP),
            Err(Error::EdgeNotCanonical { u: 2, v: 1 })
        ));
        let loopy = r#"{"n": 3, "edges": [[1, 1]]}"#;
        assert!(matches!(
            from_json(loopy, DEFAULT_VERTEX_CAP),
            Err(Error::EdgeNotCanonical { u: 1, v: 1 })
        ));
        let out_of_range = r#"{"n": 3, "edges": [[0, 7]]}"#;
        assert!(from_json(out_of_range, DEFAULT_VERTEX_CAP).is_err());
        let bad_gen = r#"{"n": 3, "edges": [], "generators": [[0, 1]]}"#;
        assert!(matches!(
            from_json(bad_gen, DEFAULT_VERTEX_CAP),
            Err(Error::DegreeMismatch { expected: 3, got: 2 })
        ));
        let not_bijective = r#"{"n": 3, "edges": [], "generators": [[0, 0, 1]]}"#;
        assert!(matches!(
            from_json(not_bijective, DEFAULT_VERTEX_CAP),
            Err(Error::NotABijection { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let big = r#"{"n": 10, "edges": []}"#;
        assert!(matches!(
            from_json(big, 5),
            Err(Error::VertexCapExceeded { requested: 10, cap: 5 })
        ));
    }
}
