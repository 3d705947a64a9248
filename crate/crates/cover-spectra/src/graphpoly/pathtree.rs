//! Rooted path trees: the tree of simple paths out of a root vertex.
//!
//! A vertex of the tree is a path in the host starting at the root; a path
//! and its one-edge extension are adjacent. The node for a path ending at j
//! carries weight r_j, and the tree edge to an extension along edge record
//! e carries the same arc weight rho_e, so the tree edge's lambda equals
//! lambda_e exactly and no square roots are ever needed. The graph
//! continued fraction at the root is invariant under this unfolding.

use crate::caps::Caps;
use crate::error::Error;
use crate::exact::gaussian::GaussianRational;
use crate::exact::rational::Rational;
use crate::graph::MultiGraph;

/// Tree of simple paths from `root`, plus the index of the root node.
pub fn path_tree(g: &MultiGraph, root: usize, caps: &Caps) -> Result<(MultiGraph, usize), Error> {
    if root >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{root}")));
    }
    struct Node {
        id: String,
        endpoint: usize,
        weight: Rational,
        parent: Option<(usize, GaussianRational)>, // (parent node, arc weight)
        on_path: u64,
    }
    let mut nodes: Vec<Node> = vec![Node {
        id: g.vertex(root).id.clone(),
        endpoint: root,
        weight: g.weight(root).clone(),
        parent: None,
        on_path: 1 << root,
    }];
    let mut frontier = vec![0usize];
    while let Some(at) = frontier.pop() {
        let endpoint = nodes[at].endpoint;
        let on_path = nodes[at].on_path;
        for &(e, next) in g.adjacency(endpoint) {
            if next == endpoint || on_path >> next & 1 == 1 {
                continue; // loops and revisits never extend a simple path
            }
            let rec = g.edge(e);
            let id = format!("{}-{}-{}", nodes[at].id, rec.id, g.vertex(next).id);
            nodes.push(Node {
                id,
                endpoint: next,
                weight: g.weight(next).clone(),
                parent: Some((at, rec.rho.clone())),
                on_path: on_path | (1 << next),
            });
            let idx = nodes.len() - 1;
            if nodes.len() > caps.ball_vertices {
                return Err(Error::GraphTooLarge {
                    op: "path_tree",
                    size: nodes.len(),
                    cap: caps.ball_vertices,
                });
            }
            frontier.push(idx);
        }
    }
    let vertices: Vec<(String, Rational)> = nodes
        .iter()
        .map(|n| (n.id.clone(), n.weight.clone()))
        .collect();
    let mut edges = Vec::new();
    for (k, n) in nodes.iter().enumerate() {
        if let Some((parent, rho)) = &n.parent {
            edges.push((
                format!("t{k}"),
                nodes[*parent].id.clone(),
                n.id.clone(),
                rho.clone(),
            ));
        }
    }
    Ok((MultiGraph::new(vertices, edges)?, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::triangle;
    use crate::graphpoly::matching::matching_polynomial;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn tree_input_is_reproduced() {
        // a tree's simple paths from the root mirror the tree itself
        let g = MultiGraph::unweighted(4, &[(0, 1), (1, 2), (1, 3)]);
        let (t, root) = path_tree(&g, 0, &caps()).unwrap();
        assert_eq!(root, 0);
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(
            matching_polynomial(&t, &caps()).unwrap(),
            matching_polynomial(&g, &caps()).unwrap()
        );
    }

    #[test]
    fn triangle_path_tree_has_five_nodes() {
        let (t, _) = path_tree(&triangle(), 0, &caps()).unwrap();
        assert_eq!(t.vertex_count(), 5);
        assert!(t.is_forest());
    }

    #[test]
    fn single_vertex() {
        let g = MultiGraph::unweighted(1, &[]);
        let (t, _) = path_tree(&g, 0, &caps()).unwrap();
        assert_eq!(t.vertex_count(), 1);
    }

    #[test]
    fn parallel_edges_give_distinct_branches() {
        let g = crate::fixtures::parallel_pair();
        let (t, _) = path_tree(&g, 0, &caps()).unwrap();
        // root plus one node per parallel edge
        assert_eq!(t.vertex_count(), 3);
    }
}
