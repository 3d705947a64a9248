//! Command-line surface: decide, certify, verify, decompose, poly, cover,
//! probe, gen, corpus, validate. All results are JSON on stdout; logs and
//! errors go to stderr. Exit codes: 0 = success (for `decide`/`certify`:
//! theta IS an eigenvalue), 3 = theta is NOT an eigenvalue, 2 = input
//! error, 4 = a size cap was exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cover_spectra::caps::Caps;
use cover_spectra::certificate::{validate_certificate, Certificate};
use cover_spectra::corpus::{run_corpus, CorpusConfig, Mutation};
use cover_spectra::covers::{
    build_cover_ball, build_quotient_cover, spectral_probe,
};
use cover_spectra::error::Error;
use cover_spectra::exact::rational::parse_rational;
use cover_spectra::exact::theta::ThetaSpec;
use cover_spectra::gallai::{classify, classify_characteristic};
use cover_spectra::generate::{generate_instance, GeneratorModel, InstanceSpec};
use cover_spectra::graph::MultiGraph;
use cover_spectra::graphpoly::charpoly::{
    characteristic_polynomial, twisted_characteristic, Phase, PhaseAssignment, TwistedPoly,
};
use cover_spectra::graphpoly::matching::matching_polynomial;
use cover_spectra::graphpoly::molecular::{molecular_polynomial, CycleWeightAssignment};
use cover_spectra::verify::{decide, verify_equivalences};

#[derive(Parser)]
#[command(
    name = "cover-spectra",
    about = "Exact eigenvalue certificates for universal and maximal abelian covers of weighted multi-graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override the enumeration vertex cap.
    #[arg(long, global = true)]
    max_enum_vertices: Option<usize>,
    /// Override the enumeration edge cap.
    #[arg(long, global = true)]
    max_enum_edges: Option<usize>,
    /// Override the quotient-cover vertex cap.
    #[arg(long, global = true)]
    max_cover_vertices: Option<usize>,
}

#[derive(Args)]
struct GraphTheta {
    /// Graph JSON file ("-" for stdin).
    graph: String,
    /// Theta: "p/q" or "minpoly:c0,c1,...:lo,hi".
    #[arg(long)]
    theta: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether theta is an eigenvalue of the universal cover and
    /// print the full decision (certificate plus witness).
    Decide(GraphTheta),
    /// Emit just the certificate (refined Aomoto subset or disjoint
    /// critical cycles).
    Certify(GraphTheta),
    /// Check a certificate produced elsewhere.
    Validate {
        #[command(flatten)]
        gt: GraphTheta,
        /// Certificate JSON file ("-" for stdin).
        #[arg(long)]
        certificate: String,
    },
    /// Evaluate all equivalent eigenvalue conditions and their consistency.
    Verify {
        #[command(flatten)]
        gt: GraphTheta,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the theta-Gallai-Edmonds decomposition.
    Decompose {
        #[command(flatten)]
        gt: GraphTheta,
        #[arg(long, value_parser = ["matching", "characteristic"], default_value = "matching")]
        polynomial: String,
    },
    /// Graph polynomials: matching | char | molecular | twisted.
    Poly {
        #[arg(value_parser = ["matching", "char", "molecular", "twisted"])]
        which: String,
        graph: String,
        /// Cycle weights for `molecular`: "zero", "harary", or a JSON file
        /// [{"cycle": ["e1","e2"], "weight": "1/2"}, ...].
        #[arg(long, default_value = "zero")]
        weights: String,
        /// Phases for `twisted`: JSON file {"edge-id": "1|-1|i|-i|<radians>"}.
        #[arg(long)]
        phases: Option<String>,
    },
    /// Build a finite quotient cover or a truncated universal-cover ball.
    Cover {
        graph: String,
        /// Modulus n for the (Z/n)^{S+} quotient cover.
        #[arg(long, conflicts_with = "ball")]
        quotient: Option<usize>,
        /// Radius for the non-backtracking ball.
        #[arg(long, requires = "root")]
        ball: Option<usize>,
        /// Root vertex id for the ball.
        #[arg(long)]
        root: Option<String>,
    },
    /// Floating spectral probe of a graph, quotient cover, or ball.
    Probe {
        #[command(flatten)]
        gt: GraphTheta,
        #[arg(long)]
        quotient: Option<usize>,
        #[arg(long, requires = "root")]
        ball: Option<usize>,
        #[arg(long)]
        root: Option<String>,
    },
    /// Generate a reproducible instance.
    Gen {
        #[arg(long, value_parser = ["forest", "erdos-renyi", "regular", "theta-critical-glue"])]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge percentage for erdos-renyi.
        #[arg(long, default_value_t = 35)]
        percent: u8,
        /// Allow loops and parallel edges (erdos-renyi).
        #[arg(long, default_value_t = false)]
        multi: bool,
        /// Allow Gaussian arc weights (erdos-renyi).
        #[arg(long, default_value_t = false)]
        gaussian: bool,
        /// Degree for the regular model.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Theta for the critical-glue model.
        #[arg(long, default_value = "0")]
        theta: String,
    },
    /// Run the randomized invariant corpus and print a summary.
    Corpus {
        #[arg(long, default_value_t = 60)]
        instances: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 9)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        nonroot_samples: usize,
        /// Fault injection: "lambda-sign-flip" corrupts the matching oracle
        /// and expects the suite to notice.
        #[arg(long)]
        mutation: Option<String>,
    },
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_graph(path: &str) -> Result<MultiGraph, Error> {
    MultiGraph::from_json_str(&read_input(path)?)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<u8, Error> {
    let mut caps = Caps::from_env();
    if let Some(v) = cli.max_enum_vertices {
        caps.enum_vertices = v;
    }
    if let Some(v) = cli.max_enum_edges {
        caps.enum_edges = v;
    }
    if let Some(v) = cli.max_cover_vertices {
        caps.cover_vertices = v;
    }
    match cli.command {
        Command::Decide(gt) => {
            let g = load_graph(&gt.graph)?;
            let theta = ThetaSpec::parse(&gt.theta)?;
            let decision = decide(&g, &theta, &caps)?;
            print_json(&decision);
            Ok(if decision.is_eigenvalue { 0 } else { 3 })
        }
        Command::Certify(gt) => {
            let g = load_graph(&gt.graph)?;
            let theta = ThetaSpec::parse(&gt.theta)?;
            let decision = decide(&g, &theta, &caps)?;
            print_json(&decision.certificate);
            Ok(if decision.is_eigenvalue { 0 } else { 3 })
        }
        Command::Validate { gt, certificate } => {
            let g = load_graph(&gt.graph)?;
            let theta = ThetaSpec::parse(&gt.theta)?;
            let cert: Certificate = serde_json::from_str(&read_input(&certificate)?)?;
            match validate_certificate(&g, &theta, &cert, &caps) {
                Ok(()) => {
                    print_json(&serde_json::json!({"valid": true}));
                    Ok(0)
                }
                Err(Error::InvalidCertificate(detail)) => {
                    print_json(&serde_json::json!({"valid": false, "detail": detail}));
                    Ok(3)
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify { gt, seed } => {
            let g = load_graph(&gt.graph)?;
            let theta = ThetaSpec::parse(&gt.theta)?;
            let report = verify_equivalences(&g, &theta, &caps, seed)?;
            print_json(&report);
            Ok(if report.has_aomoto_subset { 0 } else { 3 })
        }
        Command::Decompose { gt, polynomial } => {
            let g = load_graph(&gt.graph)?;
            let theta = ThetaSpec::parse(&gt.theta)?;
            let ge = match polynomial.as_str() {
                "characteristic" => classify_characteristic(&g, &theta, &caps)?,
                _ => classify(&g, &theta, &caps)?,
            };
            print_json(&ge.to_json(&g));
            Ok(0)
        }
        Command::Poly {
            which,
            graph,
            weights,
            phases,
        } => {
            let g = load_graph(&graph)?;
            let poly = match which.as_str() {
                "matching" => matching_polynomial(&g, &caps)?,
                "char" => characteristic_polynomial(&g, &caps)?,
                "molecular" => {
                    let w = match weights.as_str() {
                        "zero" => CycleWeightAssignment::zero(&g, &caps)?,
                        "harary" => CycleWeightAssignment::harary(&g, &caps)?,
                        path => parse_weights_file(&g, &read_input(path)?, &caps)?,
                    };
                    molecular_polynomial(&g, &w, &caps)?
                }
                "twisted" => {
                    let ph = match phases {
                        None => PhaseAssignment::all_ones(),
                        Some(path) => parse_phases_file(&g, &read_input(&path)?)?,
                    };
                    match twisted_characteristic(&g, &ph, &caps)? {
                        TwistedPoly::Exact(p) => p,
                        TwistedPoly::Numeric(coeffs) => {
                            print_json(&serde_json::json!({
                                "coeffs_f64": coeffs,
                                "exact": false,
                                "note": "non-exact phases: numeric probe only",
                            }));
                            return Ok(0);
                        }
                    }
                }
                _ => unreachable!("clap enforces the variants"),
            };
            let coeffs: Vec<String> = poly
                .coeffs()
                .iter()
                .map(cover_spectra::exact::rational::format_rational)
                .collect();
            print_json(&serde_json::json!({
                "coeffs": coeffs,
                "factored": poly.factored_string(),
                "degree": poly.degree(),
            }));
            Ok(0)
        }
        Command::Cover {
            graph,
            quotient,
            ball,
            root,
        } => {
            let g = load_graph(&graph)?;
            match (quotient, ball) {
                (Some(n), None) => {
                    let q = build_quotient_cover(&g, n, &caps)?;
                    print_json(&serde_json::json!({
                        "modulus": q.modulus,
                        "non_forest_edges": q.s_plus.iter().map(|&e| g.edge(e).id.clone()).collect::<Vec<_>>(),
                        "cover": q.cover.to_json(),
                        "projection": q.projection,
                    }));
                    Ok(0)
                }
                (None, Some(radius)) => {
                    let root_id = root.expect("clap requires root with --ball");
                    let r = g.vertex_index(&root_id)?;
                    let b = build_cover_ball(&g, r, radius, &caps)?;
                    print_json(&serde_json::json!({
                        "root": root_id,
                        "radius": radius,
                        "ball": b.ball.to_json(),
                        "projection": b.projection,
                    }));
                    Ok(0)
                }
                _ => Err(Error::Parse("pass exactly one of --quotient or --ball".into())),
            }
        }
        Command::Probe {
            gt,
            quotient,
            ball,
            root,
        } => {
            let g = load_graph(&gt.graph)?;
            let theta = ThetaSpec::parse(&gt.theta)?;
            let target = match (quotient, ball) {
                (Some(n), None) => build_quotient_cover(&g, n, &caps)?.cover,
                (None, Some(radius)) => {
                    let root_id = root.expect("clap requires root with --ball");
                    let r = g.vertex_index(&root_id)?;
                    build_cover_ball(&g, r, radius, &caps)?.ball
                }
                (None, None) => g,
                _ => return Err(Error::Parse("pass at most one of --quotient or --ball".into())),
            };
            let report = spectral_probe(&target, &theta, &caps)?;
            print_json(&report);
            Ok(0)
        }
        Command::Gen {
            model,
            n,
            seed,
            percent,
            multi,
            gaussian,
            degree,
            theta,
        } => {
            let model = match model.as_str() {
                "forest" => GeneratorModel::Forest,
                "erdos-renyi" => GeneratorModel::ErdosRenyi {
                    percent,
                    multi,
                    gaussian,
                },
                "regular" => GeneratorModel::Regular { degree },
                "theta-critical-glue" => GeneratorModel::ThetaCriticalGlue { theta },
                _ => unreachable!("clap enforces the variants"),
            };
            let g = generate_instance(&InstanceSpec { model, n, seed }, &caps)?;
            println!("{}", g.to_json_string());
            Ok(0)
        }
        Command::Corpus {
            instances,
            seed,
            max_vertices,
            nonroot_samples,
            mutation,
        } => {
            let mutation = match mutation.as_deref() {
                None => None,
                Some("lambda-sign-flip") => Some(Mutation::LambdaSignFlip),
                Some(other) => {
                    return Err(Error::Parse(format!("unknown mutation {other:?}")));
                }
            };
            let config = CorpusConfig {
                instances,
                seed,
                max_vertices,
                nonroot_samples,
                mutation,
            };
            let summary = run_corpus(&config, &caps)?;
            print_json(&summary);
            Ok(if summary.all_passed() { 0 } else { 1 })
        }
    }
}

fn parse_weights_file(
    g: &MultiGraph,
    text: &str,
    caps: &Caps,
) -> Result<CycleWeightAssignment, Error> {
    #[derive(serde::Deserialize)]
    struct Entry {
        cycle: Vec<String>,
        weight: String,
    }
    let entries: Vec<Entry> = serde_json::from_str(text)?;
    let mut w = CycleWeightAssignment::zero(g, caps)?;
    for e in entries {
        let cycle = cover_spectra::certificate::cycle_from_edge_ids(g, &e.cycle)?;
        w.set(&cycle, parse_rational(&e.weight)?);
    }
    Ok(w)
}

fn parse_phases_file(g: &MultiGraph, text: &str) -> Result<PhaseAssignment, Error> {
    let map: std::collections::HashMap<String, String> = serde_json::from_str(text)?;
    let mut ph = PhaseAssignment::all_ones();
    for (edge_id, phase) in map {
        let e = g
            .edge_index(&edge_id)
            .ok_or_else(|| Error::Parse(format!("unknown edge id {edge_id:?}")))?;
        let p = match phase.trim() {
            "1" => Phase::Exact(0),
            "i" => Phase::Exact(1),
            "-1" => Phase::Exact(2),
            "-i" => Phase::Exact(3),
            other => Phase::Angle(
                other
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad phase {other:?}")))?,
            ),
        };
        ph.set(e, p);
    }
    Ok(ph)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
