//! Small named instances used by the golden tests and the corpus runner.

use crate::exact::gaussian::GaussianRational;
use crate::exact::rational::{rat, Rational};
use crate::graph::MultiGraph;

fn unit_edges(pairs: &[(&str, &str)]) -> Vec<(String, String, String, GaussianRational)> {
    pairs
        .iter()
        .enumerate()
        .map(|(k, &(u, v))| {
            (
                format!("e{}", k + 1),
                u.to_string(),
                v.to_string(),
                GaussianRational::one(),
            )
        })
        .collect()
}

fn vertices(named: &[(&str, Rational)]) -> Vec<(String, Rational)> {
    named.iter().map(|(id, w)| (id.to_string(), w.clone())).collect()
}

/// Two triangles 1-2-3 and 3-4-5 sharing vertex 3, which carries weight 1;
/// every edge weight 1. Its characteristic polynomial factors as
/// (x+1)^3 (x-1)(x-3), and {1,2,4,5} is a refined (-1)-Aomoto subset.
pub fn twin_triangles() -> MultiGraph {
    MultiGraph::new(
        vertices(&[
            ("1", rat(0)),
            ("2", rat(0)),
            ("3", rat(1)),
            ("4", rat(0)),
            ("5", rat(0)),
        ]),
        unit_edges(&[("1", "2"), ("1", "3"), ("2", "3"), ("3", "4"), ("3", "5"), ("4", "5")]),
    )
    .expect("valid fixture")
}

/// Unweighted path on three vertices.
pub fn path3() -> MultiGraph {
    MultiGraph::unweighted(3, &[(0, 1), (1, 2)])
}

/// Unweighted triangle.
pub fn triangle() -> MultiGraph {
    MultiGraph::unweighted(3, &[(0, 1), (0, 2), (1, 2)])
}

/// Unweighted cycle on n vertices (n >= 3).
pub fn cycle(n: usize) -> MultiGraph {
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::unweighted(n, &pairs)
}

/// Single vertex carrying one loop of weight 1.
pub fn loop_vertex() -> MultiGraph {
    MultiGraph::unweighted(1, &[(0, 0)])
}

/// Two vertices joined by a pair of parallel unit edges.
pub fn parallel_pair() -> MultiGraph {
    MultiGraph::unweighted(2, &[(0, 1), (0, 1)])
}
