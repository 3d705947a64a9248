//! The certificate union and its independent validator. Validation
//! recomputes every claim from the graph and theta; it never trusts the
//! search that produced the certificate.

use serde::{Deserialize, Serialize};

use crate::aomoto::validate_aomoto_subset;
use crate::caps::Caps;
use crate::critical::{validate_cycle_certificate, CycleCertificate};
use crate::error::Error;
use crate::exact::theta::ThetaSpec;
use crate::graph::{CyclePath, MultiGraph, PathKind};
use crate::graphpoly::matching::ThetaContext;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// Positive: theta is an eigenvalue of the universal cover.
    RefinedAomoto {
        subset: Vec<String>,
        components: Vec<Vec<String>>,
        frontier: Vec<String>,
        surplus: i64,
        refined: bool,
    },
    /// Negative: m_theta(G) disjoint critical cycles kill the multiplicity.
    DisjointCriticalCycles {
        cycles: Vec<Vec<String>>,
        residual_multiplicity: usize,
    },
    /// Negative witness: a 2-regular subgraph whose complement's matching
    /// polynomial does not vanish at theta.
    TwoRegularWitness {
        cycles: Vec<Vec<String>>,
        residual_matching_multiplicity: usize,
    },
}

/// Rebuild a cycle from its edge-id list by walking the records.
pub fn cycle_from_edge_ids(g: &MultiGraph, ids: &[String]) -> Result<CyclePath, Error> {
    if ids.is_empty() {
        return Err(Error::InvalidCertificate("empty cycle".into()));
    }
    let edges: Vec<usize> = ids
        .iter()
        .map(|id| {
            g.edge_index(id)
                .ok_or_else(|| Error::InvalidCertificate(format!("unknown edge id {id:?}")))
        })
        .collect::<Result<_, _>>()?;
    if edges.len() == 1 {
        let rec = g.edge(edges[0]);
        if !rec.is_loop() {
            return Err(Error::InvalidCertificate(
                "a single-edge cycle must be a loop".into(),
            ));
        }
        return Ok(CyclePath {
            kind: PathKind::Cycle,
            vertices: vec![rec.u],
            edges,
        });
    }
    // walk: start anywhere on the first edge, repeatedly take the unused
    // edge incident to the current endpoint
    let mut remaining: Vec<usize> = edges[1..].to_vec();
    let first = g.edge(edges[0]);
    let start = first.u;
    let mut at = first.v;
    let mut order = vec![edges[0]];
    let mut vertices = vec![start];
    while !remaining.is_empty() {
        vertices.push(at);
        let pos = remaining
            .iter()
            .position(|&e| {
                let rec = g.edge(e);
                rec.u == at || rec.v == at
            })
            .ok_or_else(|| {
                Error::InvalidCertificate("edge ids do not chain into a cycle".into())
            })?;
        let e = remaining.remove(pos);
        at = g.edge(e).other(at);
        order.push(e);
    }
    if at != start {
        return Err(Error::InvalidCertificate("edge ids do not close a cycle".into()));
    }
    let cycle = CyclePath {
        kind: PathKind::Cycle,
        vertices,
        edges: order,
    };
    cycle
        .validate(g)
        .map_err(|_| Error::InvalidCertificate("edge ids do not form a simple cycle".into()))?;
    Ok(cycle.canonical_cycle())
}

fn cycles_from_lists(g: &MultiGraph, lists: &[Vec<String>]) -> Result<Vec<CyclePath>, Error> {
    lists.iter().map(|ids| cycle_from_edge_ids(g, ids)).collect()
}

/// Validate any certificate kind against the graph and theta.
pub fn validate_certificate(
    g: &MultiGraph,
    theta: &ThetaSpec,
    cert: &Certificate,
    caps: &Caps,
) -> Result<(), Error> {
    match cert {
        Certificate::RefinedAomoto {
            subset,
            components,
            frontier,
            surplus,
            refined,
        } => {
            let set = g.set_from_ids(subset)?;
            let recomputed = validate_aomoto_subset(g, theta, &set, *refined, caps)?;
            if recomputed.surplus != *surplus {
                return Err(Error::InvalidCertificate(format!(
                    "stated surplus {surplus} but recomputed {}",
                    recomputed.surplus
                )));
            }
            let mut stated_components = components.clone();
            stated_components.sort();
            let mut actual = recomputed.components.clone();
            actual.sort();
            if stated_components != actual {
                return Err(Error::InvalidCertificate("component list mismatch".into()));
            }
            let mut stated_frontier = frontier.clone();
            stated_frontier.sort();
            let mut actual_frontier = recomputed.frontier.clone();
            actual_frontier.sort();
            if stated_frontier != actual_frontier {
                return Err(Error::InvalidCertificate("frontier mismatch".into()));
            }
            Ok(())
        }
        Certificate::DisjointCriticalCycles {
            cycles,
            residual_multiplicity,
        } => {
            let parsed = cycles_from_lists(g, cycles)?;
            validate_cycle_certificate(
                g,
                theta,
                &CycleCertificate {
                    cycles: parsed,
                    residual_multiplicity: *residual_multiplicity,
                },
                caps,
            )
        }
        Certificate::TwoRegularWitness {
            cycles,
            residual_matching_multiplicity,
        } => {
            let parsed = cycles_from_lists(g, cycles)?;
            let mut used = 0u64;
            for c in &parsed {
                if c.support_mask() & used != 0 {
                    return Err(Error::InvalidCertificate(
                        "witness cycles are not vertex-disjoint".into(),
                    ));
                }
                used |= c.support_mask();
            }
            let mut ctx = ThetaContext::new(g, theta.clone(), caps)?;
            let full = g.full_mask()?;
            let m = ctx.multiplicity(full & !used);
            if m != *residual_matching_multiplicity {
                return Err(Error::InvalidCertificate(format!(
                    "stated residual matching multiplicity {residual_matching_multiplicity}, recomputed {m}"
                )));
            }
            if m != 0 {
                return Err(Error::InvalidCertificate(
                    "witness complement still vanishes at theta".into(),
                ));
            }
            Ok(())
        }
    }
}

impl Certificate {
    pub fn from_aomoto(cert: &crate::aomoto::AomotoCertificate) -> Self {
        Certificate::RefinedAomoto {
            subset: cert.subset.clone(),
            components: cert.components.clone(),
            frontier: cert.frontier.clone(),
            surplus: cert.surplus,
            refined: cert.refined,
        }
    }

    pub fn from_cycles(g: &MultiGraph, cert: &CycleCertificate) -> Self {
        Certificate::DisjointCriticalCycles {
            cycles: cert.edge_id_lists(g),
            residual_multiplicity: cert.residual_multiplicity,
        }
    }

    pub fn witness_from_cycles(g: &MultiGraph, cert: &CycleCertificate) -> Self {
        Certificate::TwoRegularWitness {
            cycles: cert.edge_id_lists(g),
            residual_matching_multiplicity: cert.residual_multiplicity,
        }
    }
}
