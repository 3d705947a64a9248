//! Deterministic instance generation for the randomized suites. The same
//! seed always yields the same instance.

use num::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::Error;
use crate::exact::gaussian::GaussianRational;
use crate::exact::rational::{parse_rational, ratio, Rational};
use crate::exact::theta::ThetaSpec;
use crate::gallai::is_theta_critical;
use crate::graph::MultiGraph;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum GeneratorModel {
    /// Random forest by random attachment.
    Forest,
    /// Independent edges with probability percent/100; optional loops and
    /// parallel edges, optional Gaussian arc weights.
    ErdosRenyi {
        percent: u8,
        #[serde(default)]
        multi: bool,
        #[serde(default)]
        gaussian: bool,
    },
    /// Random d-regular unweighted graph by the pairing model.
    Regular { degree: usize },
    /// Connected theta-critical instance glued from odd ears (unweighted,
    /// theta = 0 classical case), verified after the fact.
    ThetaCriticalGlue { theta: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub model: GeneratorModel,
    pub n: usize,
    pub seed: u64,
}

/// The weight pool used by the randomized models: +-2, +-1, +-1/2 for
/// arcs, the same plus 0 for vertices.
fn rho_pool() -> Vec<Rational> {
    vec![
        ratio(2, 1),
        ratio(-2, 1),
        ratio(1, 1),
        ratio(-1, 1),
        ratio(1, 2),
        ratio(-1, 2),
    ]
}

fn vertex_weight(rng: &mut ChaCha8Rng) -> Rational {
    // zero is common on purpose: it is the classical case
    if rng.gen_bool(0.5) {
        Rational::zero()
    } else {
        rho_pool().choose(rng).unwrap().clone()
    }
}

pub fn generate_instance(spec: &InstanceSpec, caps: &Caps) -> Result<MultiGraph, Error> {
    if spec.n > caps.enum_vertices.min(64) {
        return Err(Error::GraphTooLarge {
            op: "generate_instance",
            size: spec.n,
            cap: caps.enum_vertices.min(64),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.model {
        GeneratorModel::Forest => Ok(forest(spec.n, &mut rng)),
        GeneratorModel::ErdosRenyi {
            percent,
            multi,
            gaussian,
        } => Ok(erdos_renyi(spec.n, *percent, *multi, *gaussian, &mut rng)),
        GeneratorModel::Regular { degree } => regular(spec.n, *degree, &mut rng),
        GeneratorModel::ThetaCriticalGlue { theta } => {
            let theta = ThetaSpec::rational(parse_rational(theta)?);
            critical_glue(spec.n, &theta, &mut rng, caps)
        }
    }
}

fn forest(n: usize, rng: &mut ChaCha8Rng) -> MultiGraph {
    let mut vertices = Vec::with_capacity(n);
    let mut edges = Vec::new();
    for i in 0..n {
        vertices.push(((i + 1).to_string(), vertex_weight(rng)));
        if i > 0 && rng.gen_bool(0.7) {
            let parent = rng.gen_range(0..i);
            edges.push((
                format!("e{}", edges.len() + 1),
                (parent + 1).to_string(),
                (i + 1).to_string(),
                GaussianRational::from_rational(rho_pool().choose(rng).unwrap().clone()),
            ));
        }
    }
    MultiGraph::new(vertices, edges).expect("generated forest is well-formed")
}

fn erdos_renyi(n: usize, percent: u8, multi: bool, gaussian: bool, rng: &mut ChaCha8Rng) -> MultiGraph {
    let p = f64::from(percent.min(100)) / 100.0;
    let mut vertices = Vec::with_capacity(n);
    for i in 0..n {
        vertices.push(((i + 1).to_string(), vertex_weight(rng)));
    }
    let mut edges = Vec::new();
    let rho = |rng: &mut ChaCha8Rng| {
        if gaussian && rng.gen_bool(0.3) {
            // unit-ish Gaussian weights keep lambda small
            let re = rho_pool().choose(rng).unwrap().clone();
            let im = rho_pool().choose(rng).unwrap().clone();
            GaussianRational::new(re, im)
        } else {
            GaussianRational::from_rational(rho_pool().choose(rng).unwrap().clone())
        }
    };
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((
                    format!("e{}", edges.len() + 1),
                    (u + 1).to_string(),
                    (v + 1).to_string(),
                    rho(rng),
                ));
                if multi && rng.gen_bool(0.15) {
                    edges.push((
                        format!("e{}", edges.len() + 1),
                        (u + 1).to_string(),
                        (v + 1).to_string(),
                        rho(rng),
                    ));
                }
            }
        }
        if multi && rng.gen_bool(0.1) {
            edges.push((
                format!("e{}", edges.len() + 1),
                (u + 1).to_string(),
                (u + 1).to_string(),
                rho(rng),
            ));
        }
    }
    MultiGraph::new(vertices, edges).expect("generated graph is well-formed")
}

fn regular(n: usize, degree: usize, rng: &mut ChaCha8Rng) -> Result<MultiGraph, Error> {
    if n * degree % 2 != 0 || degree >= n {
        return Err(Error::PreconditionViolated(format!(
            "no simple {degree}-regular graph on {n} vertices"
        )));
    }
    // pairing model with rejection of loops and parallel edges
    for _ in 0..500 {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(degree)).collect();
        stubs.shuffle(rng);
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(stubs.len() / 2);
        let mut ok = true;
        let mut seen = std::collections::HashSet::new();
        for c in stubs.chunks(2) {
            let (a, b) = (c[0].min(c[1]), c[0].max(c[1]));
            if a == b || !seen.insert((a, b)) {
                ok = false;
                break;
            }
            pairs.push((a, b));
        }
        if ok {
            return Ok(MultiGraph::unweighted(n, &pairs));
        }
    }
    Err(Error::RejectionBudgetExceeded)
}

/// Glue odd ears onto an odd cycle; every intermediate graph is
/// factor-critical, so the post-hoc classification check is a safety net
/// (and the real gate for nonzero theta).
fn critical_glue(
    n: usize,
    theta: &ThetaSpec,
    rng: &mut ChaCha8Rng,
    caps: &Caps,
) -> Result<MultiGraph, Error> {
    if n < 3 {
        return Err(Error::PreconditionViolated(
            "critical glue needs at least 3 vertices".into(),
        ));
    }
    for _ in 0..200 {
        let start = *[3usize, 5].choose(rng).unwrap();
        let start = start.min(n);
        if start % 2 == 0 {
            continue;
        }
        let mut pairs: Vec<(usize, usize)> = (0..start).map(|i| (i, (i + 1) % start)).collect();
        let mut used = start;
        while used < n {
            // an ear with k new internal vertices adds k+1 edges; between
            // two distinct anchors we need k even for an odd total count
            let remaining = n - used;
            let k = if remaining >= 2 && rng.gen_bool(0.7) { 2 } else { remaining.min(2) };
            if k == 0 {
                break;
            }
            if k == 1 {
                // single new vertex: anchor both ends at the same vertex is
                // a loop-free impossibility; attach a triangle through two
                // adjacent anchors instead
                let (a, b) = pairs[rng.gen_range(0..pairs.len())];
                pairs.push((a, used));
                pairs.push((used, b));
                used += 1;
                continue;
            }
            let a = rng.gen_range(0..used);
            let mut b = rng.gen_range(0..used);
            if a == b {
                b = (b + 1) % used;
            }
            pairs.push((a, used));
            pairs.push((used, used + 1));
            pairs.push((used + 1, b));
            used += 2;
        }
        let g = MultiGraph::unweighted(used, &pairs);
        if g.is_connected() && is_theta_critical(&g, theta, caps)? {
            return Ok(g);
        }
    }
    Err(Error::RejectionBudgetExceeded)
}
