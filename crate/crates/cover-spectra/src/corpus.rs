//! The randomized invariant suite: generates a reproducible corpus of
//! instances, samples theta over roots and non-roots, and runs every
//! structural identity, oracle equality, and certificate check. The CLI
//! `corpus` subcommand and the acceptance tests share this machinery.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aomoto::{
    check_robustness_under_cycle_deletion, find_aomoto_bruteforce, max_surplus_bruteforce,
    maximal_refined_aomoto, validate_aomoto_subset,
};
use crate::caps::Caps;
use crate::certificate::{validate_certificate, Certificate};
use crate::covers::{character_factorization_check, theta_is_root_of_cover_char};
use crate::critical::path_weight;
use crate::error::Error;
use crate::exact::poly::{interlaces, Polynomial};
use crate::exact::rational::{rat, ratio, Rational};
use crate::exact::theta::ThetaSpec;
use crate::gallai::{
    check_critical_remove, check_critical_stability, check_contraction_identity,
    check_matched_special, check_stability, classify, theta_corpus,
};
use crate::generate::{generate_instance, GeneratorModel, InstanceSpec};
use crate::graph::{MultiGraph, VertexSet};
use crate::graphpoly::charpoly::characteristic_polynomial;
use crate::graphpoly::matching::{matching_polynomial, matching_polynomial_bruteforce, VertexClass};
use crate::graphpoly::pathtree::path_tree;
use crate::verify::{decide, verify_equivalences};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub instances: usize,
    pub seed: u64,
    pub max_vertices: usize,
    /// Random non-root theta samples per instance.
    pub nonroot_samples: usize,
    /// Fault-injection hook: deliberately corrupt one computation and
    /// expect the suite to flag it.
    #[serde(default)]
    pub mutation: Option<Mutation>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            instances: 60,
            seed: 0x5eed,
            max_vertices: 9,
            nonroot_samples: 3,
            mutation: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Compute the brute-force matching oracle with +|rho|^2 instead of
    /// -|rho|^2: the oracle-equality invariant must catch it.
    LambdaSignFlip,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub seed: u64,
    pub instance: String,
    pub theta: Option<String>,
    pub invariant: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub config: CorpusConfig,
    pub instances: usize,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<FailureRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

struct Recorder {
    seed: u64,
    instance: String,
    theta: Option<String>,
    checks: usize,
    failures: Vec<FailureRecord>,
}

impl Recorder {
    fn check(&mut self, invariant: &str, outcome: Result<(), String>) {
        self.checks += 1;
        if let Err(detail) = outcome {
            self.failures.push(FailureRecord {
                seed: self.seed,
                instance: self.instance.clone(),
                theta: self.theta.clone(),
                invariant: invariant.to_string(),
                detail,
            });
        }
    }
}

fn mixed_model(k: usize, rng: &mut ChaCha8Rng, max_n: usize) -> InstanceSpec {
    let n = rng.gen_range(3..=max_n.max(3));
    let seed = rng.gen();
    let model = match k % 6 {
        0 => GeneratorModel::Forest,
        1 => GeneratorModel::ErdosRenyi {
            percent: 35,
            multi: false,
            gaussian: false,
        },
        2 => GeneratorModel::ErdosRenyi {
            percent: 45,
            multi: true,
            gaussian: false,
        },
        3 => GeneratorModel::ErdosRenyi {
            percent: 30,
            multi: true,
            gaussian: true,
        },
        4 => GeneratorModel::ThetaCriticalGlue {
            theta: "0".to_string(),
        },
        _ => GeneratorModel::ErdosRenyi {
            percent: 55,
            multi: false,
            gaussian: false,
        },
    };
    InstanceSpec { model, n, seed }
}

/// Mutated matching-polynomial oracle for fault injection.
fn mutated_matching_bruteforce(g: &MultiGraph) -> Result<Polynomial, Error> {
    // identical to the honest oracle except for the sign of lambda
    if g.vertex_count() > 14 {
        return Err(Error::GraphTooLarge {
            op: "mutated oracle",
            size: g.vertex_count(),
            cap: 14,
        });
    }
    fn go(
        g: &MultiGraph,
        non_loops: &[usize],
        from: usize,
        covered: u64,
        weight: Rational,
        acc: &mut Polynomial,
    ) {
        if from == non_loops.len() {
            let mut term = Polynomial::constant(weight);
            for i in 0..g.vertex_count() {
                if covered >> i & 1 == 0 {
                    term = &term * &Polynomial::x_minus(g.weight(i));
                }
            }
            *acc = &*acc + &term;
            return;
        }
        go(g, non_loops, from + 1, covered, weight.clone(), acc);
        let e = non_loops[from];
        let rec = g.edge(e);
        let mask = (1 << rec.u) | (1 << rec.v);
        if covered & mask == 0 {
            // wrong sign on purpose
            go(g, non_loops, from + 1, covered | mask, weight * -g.lambda(e), acc);
        }
    }
    let non_loops: Vec<usize> = (0..g.edge_count())
        .filter(|&e| !g.edge(e).is_loop())
        .collect();
    let mut acc = Polynomial::zero();
    go(g, &non_loops, 0, 0, rat(1), &mut acc);
    Ok(acc)
}

/// Run every per-instance invariant; used by run_corpus and the acceptance
/// suite.
pub fn run_instance_suite(
    g: &MultiGraph,
    label: &str,
    seed: u64,
    config: &CorpusConfig,
    caps: &Caps,
    rec_out: &mut Vec<FailureRecord>,
) -> Result<usize, Error> {
    let mut rec = Recorder {
        seed,
        instance: label.to_string(),
        theta: None,
        checks: 0,
        failures: vec![],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ffee);
    let mu = matching_polynomial(g, caps)?;

    // oracle equality (the fault-injection hook lives here)
    let oracle = match config.mutation {
        Some(Mutation::LambdaSignFlip) => mutated_matching_bruteforce(g)?,
        None => matching_polynomial_bruteforce(g)?,
    };
    rec.check("matching polynomial equals brute-force oracle", {
        if mu == oracle {
            Ok(())
        } else {
            Err(format!("memoized {mu} vs oracle {oracle}"))
        }
    });

    // all roots real, counted with multiplicity
    rec.check(
        "matching polynomial has all real roots",
        (|| {
            let total = mu
                .count_real_roots_with_multiplicity()
                .map_err(|e| e.to_string())?;
            if total == mu.degree().max(0) as usize {
                Ok(())
            } else {
                Err(format!("{total} real roots for degree {}", mu.degree()))
            }
        })(),
    );

    // vertex-deleted interlacing
    for i in 0..g.vertex_count() {
        let sub = g.delete_vertices(&VertexSet::from([i]))?;
        let mui = matching_polynomial(&sub, caps)?;
        rec.check("vertex deletion interlaces the matching polynomial", {
            match interlaces(&mu, &mui) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("vertex {} breaks interlacing", g.vertex(i).id)),
                Err(e) => Err(e.to_string()),
            }
        });
    }

    // matching = characteristic exactly for forests
    let phi = characteristic_polynomial(g, caps)?;
    rec.check("matching equals characteristic iff forest", {
        if (mu == phi) == g.is_forest() {
            Ok(())
        } else {
            Err(format!("is_forest = {} but mu==phi = {}", g.is_forest(), mu == phi))
        }
    });

    // path-tree unfolding preserves the continued fraction at the root
    if g.vertex_count() > 0 {
        let root = rng.gen_range(0..g.vertex_count());
        if let Ok((tree, troot)) = path_tree(g, root, caps) {
            if tree.vertex_count() <= caps.mu_vertices {
                let mu_t = matching_polynomial(&tree, caps)?;
                let mu_t_minus = matching_polynomial(
                    &tree.delete_vertices(&VertexSet::from([troot]))?,
                    caps,
                )?;
                let mu_minus =
                    matching_polynomial(&g.delete_vertices(&VertexSet::from([root]))?, caps)?;
                let mut hits = 0;
                let mut x0 = rat(2);
                while hits < 20 {
                    let lhs = mu.eval(&x0) * mu_t_minus.eval(&x0);
                    let rhs = mu_minus.eval(&x0) * mu_t.eval(&x0);
                    rec.check("path tree preserves the root continued fraction", {
                        if lhs == rhs {
                            Ok(())
                        } else {
                            Err(format!("at {x0}: {lhs} vs {rhs}"))
                        }
                    });
                    hits += 1;
                    x0 += ratio(1, 3);
                }
            }
        }
    }

    // contraction identity at random sample points
    if g.vertex_count() >= 2 {
        for _ in 0..3 {
            let i = rng.gen_range(0..g.vertex_count());
            let mut j = rng.gen_range(0..g.vertex_count());
            if i == j {
                j = (j + 1) % g.vertex_count();
            }
            let x0 = ratio(rng.gen_range(2..40), rng.gen_range(1..4));
            match check_contraction_identity(g, i, j, &x0, caps) {
                Ok(Some(ok)) => rec.check("contraction identity at sample point", {
                    if ok {
                        Ok(())
                    } else {
                        Err(format!("({i},{j}) at {x0}"))
                    }
                }),
                Ok(None) => {} // pole; skip
                Err(e) => rec.check("contraction identity at sample point", Err(e.to_string())),
            }
        }
    }

    // per-theta structural suite
    let extra: Vec<Rational> = (0..config.nonroot_samples)
        .map(|_| ratio(rng.gen_range(-60..60), rng.gen_range(1..4)))
        .collect();
    let thetas = theta_corpus(g, caps, &extra)?;
    for theta in &thetas {
        rec.theta = Some(theta.to_string());
        run_theta_suite(g, theta, caps, &mut rec, &mut rng)?;
    }
    rec.theta = None;

    let checks = rec.checks;
    rec_out.extend(rec.failures);
    Ok(checks)
}

fn run_theta_suite(
    g: &MultiGraph,
    theta: &ThetaSpec,
    caps: &Caps,
    rec: &mut Recorder,
    rng: &mut ChaCha8Rng,
) -> Result<(), Error> {
    // classification (the multiplicity identity and frontier containment
    // are asserted inside) and the surplus Hall condition
    let ge = classify(g, theta, caps)?;
    rec.check("matched-special surplus condition", {
        match check_matched_special(g, theta, caps) {
            Ok(rep) if rep.passed => Ok(()),
            Ok(rep) => Err(rep.failures.join("; ")),
            Err(Error::FrontierTooLarge { .. }) => Ok(()), // out of scope here
            Err(e) => Err(e.to_string()),
        }
    });

    // Gallai: connected critical pieces have multiplicity one — checked on
    // the critical components themselves
    for comp in &ge.critical_components {
        let keep: Vec<usize> = comp.iter().copied().collect();
        let h = g.induced(&keep);
        let mh = theta.multiplicity_in(&matching_polynomial(&h, caps)?)?;
        rec.check("connected critical components have multiplicity one", {
            if mh == 1 {
                Ok(())
            } else {
                Err(format!("component {:?} has multiplicity {mh}", g.vertex_ids(comp)))
            }
        });
    }

    // alpha stability under frontier deletion (finite values need rational)
    if let Some(t) = theta.as_rational() {
        rec.check("alpha stability under frontier deletion", {
            match check_stability(g, t, caps) {
                Ok(rep) if rep.passed => Ok(()),
                Ok(rep) => Err(rep.failures.join("; ")),
                Err(e) => Err(e.to_string()),
            }
        });
    }

    // critical-component locality for a random subset of one component
    if let Some(comp) = ge.critical_components.iter().find(|c| !c.is_empty()) {
        let verts: Vec<usize> = comp.iter().copied().collect();
        let take = rng.gen_range(1..=verts.len());
        let z: VertexSet = verts.iter().copied().take(take).collect();
        rec.check("multiplicity drop localizes to the critical component", {
            match check_critical_remove(g, theta, &z, caps) {
                Ok(rep) if rep.passed => Ok(()),
                Ok(rep) => Err(rep.failures.join("; ")),
                Err(e) => Err(e.to_string()),
            }
        });
        if let Some(t) = theta.as_rational() {
            rec.check("alpha agrees between host and critical component", {
                match check_critical_stability(g, t, &z, caps) {
                    Ok(rep) if rep.passed => Ok(()),
                    Ok(rep) => Err(rep.failures.join("; ")),
                    Err(e) => Err(e.to_string()),
                }
            });
        }
    }

    // path weights: W >= -1, with both endpoints critical at equality
    let n = g.vertex_count();
    if n >= 2 {
        for _ in 0..2 {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            if a == b {
                b = (b + 1) % n;
            }
            let paths = g.enumerate_paths_between(a, b, caps)?;
            for p in paths.iter().take(6) {
                let trace = path_weight(g, theta, p, caps)?;
                rec.check("path weight is at least -1", {
                    if trace.w_theta >= -1 {
                        Ok(())
                    } else {
                        Err(format!("W = {} on {:?}", trace.w_theta, p.vertex_ids(g)))
                    }
                });
                if trace.w_theta == -1 {
                    let first_zero = ge.zero_set.contains(&p.first());
                    let last_zero = ge.zero_set.contains(&p.last());
                    rec.check("critical paths start and end in the zero class", {
                        if first_zero && last_zero {
                            Ok(())
                        } else {
                            Err(format!("endpoints of {:?}", p.vertex_ids(g)))
                        }
                    });
                }
            }
        }
    }

    // cycles never drop the multiplicity by more than one, and critical
    // cycles live inside critical components
    for c in g.enumerate_cycles(caps)? {
        let rest = g.delete_vertices(&c.support())?;
        let m_rest = theta.multiplicity_in(&matching_polynomial(&rest, caps)?)?;
        rec.check("cycle deletion drops multiplicity by at most one", {
            if m_rest + 1 >= ge.m_theta {
                Ok(())
            } else {
                Err(format!(
                    "cycle {:?}: {} -> {m_rest}",
                    c.edge_ids(g),
                    ge.m_theta
                ))
            }
        });
        if m_rest + 1 == ge.m_theta {
            rec.check("critical cycles live inside one critical component", {
                let inside = ge
                    .critical_components
                    .iter()
                    .any(|comp| c.support().iter().all(|v| comp.contains(v)));
                if inside {
                    Ok(())
                } else {
                    Err(format!("cycle {:?}", c.edge_ids(g)))
                }
            });
            // critical in host iff critical in its component
            if let Some(comp) = ge
                .critical_components
                .iter()
                .find(|comp| c.support().iter().all(|v| comp.contains(v)))
            {
                let keep: Vec<usize> = comp.iter().copied().collect();
                let h = g.induced(&keep);
                let ids = c.edge_ids(g);
                let c_in_h = crate::certificate::cycle_from_edge_ids(&h, &ids)?;
                let hm = theta.multiplicity_in(&matching_polynomial(&h, caps)?)?;
                let h_rest = h.delete_vertices(&c_in_h.support())?;
                let hm_rest = theta.multiplicity_in(&matching_polynomial(&h_rest, caps)?)?;
                rec.check("criticality transfers between host and component", {
                    if hm_rest + 1 == hm {
                        Ok(())
                    } else {
                        Err(format!("component drop {hm} -> {hm_rest}"))
                    }
                });
            }
        }
    }

    // the two certificate branches are exhaustive and exclusive
    let equiv = verify_equivalences(g, theta, caps, rec.seed)?;
    rec.check("equivalence conditions agree", {
        if equiv.consistent {
            Ok(())
        } else {
            Err(format!(
                "aomoto={} refined={} matching={} characteristic={} molecular={}",
                equiv.has_aomoto_subset,
                equiv.has_refined_aomoto_subset,
                equiv.matching_vanishes_on_all_two_regular_complements,
                equiv.characteristic_vanishes_on_all_two_regular_complements,
                equiv.molecular_polynomials_all_vanish
            ))
        }
    });
    rec.check("twisted probe consistent with exact verdicts", {
        if equiv.probe.consistent_with_exact {
            Ok(())
        } else {
            Err(format!("max |phi_xi(theta)| = {}", equiv.probe.sampled_max_abs))
        }
    });

    let decision = decide(g, theta, caps)?;
    rec.check("decide emits a valid certificate", {
        validate_certificate(g, theta, &decision.certificate, caps).map_err(|e| e.to_string())
    });
    if let Some(witness) = &decision.witness {
        rec.check("negative witness validates", {
            validate_certificate(g, theta, witness, caps).map_err(|e| e.to_string())
        });
    }
    rec.check("decision matches the equivalence verdict", {
        if decision.is_eigenvalue == equiv.has_aomoto_subset {
            Ok(())
        } else {
            Err("decide and verify disagree".to_string())
        }
    });

    // positive side: the refined components are critical components of G,
    // the maximal surplus agrees with brute force, and the subset survives
    // cycle deletions
    if decision.is_eigenvalue {
        if let Certificate::RefinedAomoto { subset, components, .. } = &decision.certificate {
            let comp_sets: Vec<VertexSet> = components
                .iter()
                .map(|ids| g.set_from_ids(ids))
                .collect::<Result<_, _>>()?;
            rec.check("refined components are critical components of the host", {
                let all_match = comp_sets
                    .iter()
                    .all(|c| ge.critical_components.iter().any(|gc| gc == c));
                if all_match {
                    Ok(())
                } else {
                    Err("component not found among host critical components".into())
                }
            });
            let subset_set = g.set_from_ids(subset)?;
            rec.check("emitted subset passes the independent validator", {
                validate_aomoto_subset(g, theta, &subset_set, true, caps)
                    .map(|_| ())
                    .map_err(|e| e.to_string())
            });
        }
        rec.check(
            "maximal refined surplus equals brute-force maximum",
            (|| {
                let brute = max_surplus_bruteforce(g, theta, caps).map_err(|e| e.to_string())?;
                let refined = maximal_refined_aomoto(g, theta, caps)
                    .map_err(|e| e.to_string())?
                    .map(|c| c.surplus);
                if brute == refined {
                    Ok(())
                } else {
                    Err(format!("brute {brute:?} vs refined {refined:?}"))
                }
            })(),
        );
        for c in g.enumerate_cycles(caps)?.iter().take(3) {
            rec.check("Aomoto subsets survive cycle deletion", {
                match check_robustness_under_cycle_deletion(g, theta, c, caps) {
                    Ok(rep) if rep.passed => Ok(()),
                    Ok(rep) => Err(rep.failures.join("; ")),
                    Err(e) => Err(e.to_string()),
                }
            });
        }
    } else {
        // negative side: brute force agrees nothing exists
        rec.check("brute-force search confirms the negative verdict", {
            match find_aomoto_bruteforce(g, theta, caps) {
                Ok(None) => Ok(()),
                Ok(Some(c)) => Err(format!("brute force found {:?}", c.subset)),
                Err(e) => Err(e.to_string()),
            }
        });
    }

    // finite-quotient covers on sparse instances
    let (_, s_plus) = g.spanning_forest();
    if s_plus.len() <= 2 && g.vertex_count() <= 10 {
        rec.check("character factorization at modulus 2", {
            match character_factorization_check(g, 2, caps) {
                Ok(rep) if rep.passed => Ok(()),
                Ok(rep) => Err(rep.failures.join("; ")),
                Err(e) => Err(e.to_string()),
            }
        });
        if decision.is_eigenvalue {
            for n in [1usize, 2] {
                rec.check("positive certificates put theta in every quotient spectrum", {
                    match theta_is_root_of_cover_char(g, theta, n, caps) {
                        Ok(true) => Ok(()),
                        Ok(false) => Err(format!("not a root at modulus {n}")),
                        Err(e) => Err(e.to_string()),
                    }
                });
            }
        }
    }

    // the per-theta class trichotomy (vertex deletion moves m by at most 1)
    let mut ctx = crate::graphpoly::matching::ThetaContext::new(g, theta.clone(), caps)?;
    let full = g.full_mask()?;
    for i in 0..g.vertex_count() {
        let _ = ctx.class_of(full, i); // asserts the step bound internally
    }
    let _ = VertexClass::Zero;
    Ok(())
}

pub fn run_corpus(config: &CorpusConfig, caps: &Caps) -> Result<CorpusSummary, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let mut instances = 0usize;

    // golden instance first
    let golden = crate::fixtures::twin_triangles();
    checks += run_instance_suite(&golden, "golden-twin-triangles", config.seed, config, caps, &mut failures)?;
    instances += 1;

    for k in 0..config.instances {
        let spec = mixed_model(k, &mut rng, config.max_vertices);
        let g = match generate_instance(&spec, caps) {
            Ok(g) => g,
            Err(Error::RejectionBudgetExceeded) => continue,
            Err(e) => return Err(e),
        };
        if g.vertex_count() == 0 {
            continue;
        }
        let label = format!("{:?}", spec);
        checks += run_instance_suite(&g, &label, spec.seed, config, caps, &mut failures)?;
        instances += 1;
    }

    let failed = failures.len();
    Ok(CorpusSummary {
        config: config.clone(),
        instances,
        checks,
        passed: checks - failed,
        failed,
        failures,
        warning: if instances == 0 {
            Some("empty corpus: nothing was checked".to_string())
        } else {
            None
        },
    })
}
