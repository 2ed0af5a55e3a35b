//! `ohmlab` — exact electrical networks on the disk, annulus and torus.
//!
//! Every subcommand reads canonical network JSON, computes exactly, and
//! prints a run report: command, input digest, outputs, oracle verdicts and
//! wall time. Outputs are exact-rational strings unless `--float` opts into
//! decimals. Exit codes: 0 success, 1 input error, 2 verdict failure.

use clap::{Parser, Subcommand};
use num_traits::{Signed, ToPrimitive};
use ohmlab_core::combin;
use ohmlab_core::exact::laurent::LaurentPoly;
use ohmlab_core::exact::matrix::{Matrix, RatMatrix};
use ohmlab_core::exact::ratfunc::RatFunc;
use ohmlab_core::exact::{rat_from_str, rat_to_f64, rat_to_string, Rat};
use ohmlab_core::laplacian;
use ohmlab_core::medial;
use ohmlab_core::network::json as netjson;
use ohmlab_core::network::{Connection, Surface};
use ohmlab_core::rng::SplitMix;
use ohmlab_core::surfaces;
use ohmlab_core::transforms;
use serde_json::{json, Map, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ohmlab", disable_help_subcommand = true)]
struct Cli {
    /// Seed for anything randomized.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Emit decimal approximations instead of exact rationals.
    #[arg(long, global = true)]
    float: bool,
    /// Write the main output (JSON or CSV) to a file as well.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Response matrix of a network (with --var z: annulus line bundle).
    Response {
        net: std::path::PathBuf,
        #[arg(long)]
        var: Option<String>,
    },
    /// Grove partition sums by node partition.
    Groves { net: std::path::PathBuf },
    /// Cycle-rooted spanning forest sums, bucketed.
    Crsf {
        net: std::path::PathBuf,
        #[arg(long, default_value = "homology")]
        by: String,
    },
    /// Sample spanning trees by loop-erased random walk.
    Sample {
        net: std::path::PathBuf,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Medial strands, stub involution and minimality verdict.
    Medial { net: std::path::PathBuf },
    /// Apply an electrical transformation.
    Transform {
        net: std::path::PathBuf,
        /// deadbranch | selfloop | series | parallel | ydelta | deltay
        #[arg(long = "move")]
        mv: String,
        /// site: v<k> (vertex), e<k> (edge), e<k>+/- (face dart), or
        /// e<a>,e<b> for parallel merges
        #[arg(long)]
        site: String,
    },
    /// Recover conductances of a minimal disk network from its response.
    Reconstruct {
        #[arg(long)]
        topology: std::path::PathBuf,
        #[arg(long)]
        response: std::path::PathBuf,
    },
    /// Central minors of a response matrix.
    Minors {
        response: std::path::PathBuf,
        #[arg(long)]
        central: bool,
    },
    /// Determinant of the conductances-to-minors log-Jacobian.
    Jacobian { net: std::path::PathBuf },
    /// Characteristic polynomial of the flat line bundle.
    Charpoly { net: std::path::PathBuf },
    /// Newton polygon of the characteristic polynomial.
    Newton { net: std::path::PathBuf },
    /// Homology-class decomposition of the characteristic polynomial.
    Decompose { net: std::path::PathBuf },
    /// Spanning-tree free energy of a torus network.
    FreeEnergy {
        net: std::path::PathBuf,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Amoeba scan with the two-point (Harnack) verdict.
    Amoeba {
        net: std::path::PathBuf,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long, default_value_t = 2.0)]
        range: f64,
    },
    /// Generate a reproducible corpus of network files.
    GenCorpus {
        #[arg(long)]
        dir: std::path::PathBuf,
        /// e.g. disk=10,annulus=5,torus=3
        #[arg(long, default_value = "disk=10,annulus=5,torus=3")]
        counts: String,
    },
    /// Run the built-in oracle suite.
    VerifyAll,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are success; anything else is an input error
            use clap::error::ErrorKind::*;
            let _ = e.print();
            return match e.kind() {
                DisplayHelp | DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let start = std::time::Instant::now();
    match run(&cli) {
        Ok(Outcome { outputs, verdicts }) => {
            let failed = verdicts
                .iter()
                .any(|(_, v)| v.as_bool() == Some(false));
            let mut report = Map::new();
            report.insert("command".into(), json!(command_name(&cli.cmd)));
            report.insert("outputs".into(), outputs.clone());
            if !verdicts.is_empty() {
                report.insert(
                    "verdicts".into(),
                    Value::Object(verdicts.into_iter().collect()),
                );
            }
            if let Some(digest) = input_digest(&cli.cmd) {
                report.insert("input_digest".into(), json!(digest));
            }
            report.insert(
                "wall_ms".into(),
                json!(start.elapsed().as_millis() as u64),
            );
            println!(
                "{}",
                serde_json::to_string_pretty(&Value::Object(report)).unwrap()
            );
            if let Some(path) = &cli.out {
                let body = if let Some(csv) = outputs.get("csv").and_then(Value::as_str) {
                    csv.to_string()
                } else {
                    serde_json::to_string_pretty(&outputs).unwrap()
                };
                if std::fs::write(path, body).is_err() {
                    eprintln!("error: cannot write {}", path.display());
                    return ExitCode::from(1);
                }
            }
            if failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

struct Outcome {
    outputs: Value,
    verdicts: Vec<(String, Value)>,
}

fn ok(outputs: Value) -> Result<Outcome, String> {
    Ok(Outcome {
        outputs,
        verdicts: vec![],
    })
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Response { .. } => "response",
        Cmd::Groves { .. } => "groves",
        Cmd::Crsf { .. } => "crsf",
        Cmd::Sample { .. } => "sample",
        Cmd::Medial { .. } => "medial",
        Cmd::Transform { .. } => "transform",
        Cmd::Reconstruct { .. } => "reconstruct",
        Cmd::Minors { .. } => "minors",
        Cmd::Jacobian { .. } => "jacobian",
        Cmd::Charpoly { .. } => "charpoly",
        Cmd::Newton { .. } => "newton",
        Cmd::Decompose { .. } => "decompose",
        Cmd::FreeEnergy { .. } => "free-energy",
        Cmd::Amoeba { .. } => "amoeba",
        Cmd::GenCorpus { .. } => "gen-corpus",
        Cmd::VerifyAll => "verify-all",
    }
}

fn input_path(cmd: &Cmd) -> Option<&std::path::PathBuf> {
    match cmd {
        Cmd::Response { net, .. }
        | Cmd::Groves { net }
        | Cmd::Crsf { net, .. }
        | Cmd::Sample { net, .. }
        | Cmd::Medial { net }
        | Cmd::Transform { net, .. }
        | Cmd::Jacobian { net }
        | Cmd::Charpoly { net }
        | Cmd::Newton { net }
        | Cmd::Decompose { net }
        | Cmd::FreeEnergy { net, .. }
        | Cmd::Amoeba { net, .. } => Some(net),
        Cmd::Minors { response, .. } => Some(response),
        Cmd::Reconstruct { topology, .. } => Some(topology),
        _ => None,
    }
}

fn input_digest(cmd: &Cmd) -> Option<String> {
    let path = input_path(cmd)?;
    let bytes = std::fs::read(path).ok()?;
    Some(format!("{:016x}", fnv1a(&bytes)))
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn load_doc(path: &std::path::Path) -> Result<netjson::Document, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    netjson::load(&text).map_err(|e| e.to_string())
}

fn need_embedding(doc: &netjson::Document) -> Result<&ohmlab_core::network::Embedding, String> {
    doc.embedding
        .as_ref()
        .ok_or_else(|| "this operation needs a rotation system in the input".into())
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.cmd {
        Cmd::Response { net, var } => {
            let doc = load_doc(net)?;
            match var.as_deref() {
                None => {
                    let l = laplacian::response_matrix(&doc.net).map_err(|e| e.to_string())?;
                    ok(json!({ "response": mat_json(&l.m, cli.float) }))
                }
                Some("z") => {
                    let emb = need_embedding(&doc)?;
                    let l = laplacian::response_matrix_line(&doc.net, emb)
                        .map_err(|e| e.to_string())?;
                    ok(json!({ "response": ratfunc_mat_json(&l) }))
                }
                Some(v) => Err(format!("unknown variable {v:?}")),
            }
        }
        Cmd::Groves { net } => {
            let doc = load_doc(net)?;
            let gs = combin::grove_sums(&doc.net).map_err(|e| e.to_string())?;
            let mut by = Map::new();
            for (p, z) in &gs.by_partition {
                by.insert(p.display_one_based(), json!(rat_str(z, cli.float)));
            }
            ok(json!({
                "by_partition": Value::Object(by),
                "total": rat_str(&gs.total, cli.float),
            }))
        }
        Cmd::Crsf { net, by } => {
            let doc = load_doc(net)?;
            let emb = need_embedding(&doc)?;
            let sums = combin::crsf_sums(&doc.net, emb).map_err(|e| e.to_string())?;
            let outputs = match by.as_str() {
                "homology" => {
                    let mut m = Map::new();
                    for (&(a, b), w) in &sums.by_homology {
                        m.insert(format!("({a},{b})"), json!(rat_str(w, cli.float)));
                    }
                    json!({ "total": laurent_json(&sums.total), "by_homology": Value::Object(m) })
                }
                "count" => {
                    let mut m = Map::new();
                    for (&k, w) in &sums.by_cycle_count {
                        m.insert(k.to_string(), json!(rat_str(w, cli.float)));
                    }
                    json!({ "total": laurent_json(&sums.total), "by_cycle_count": Value::Object(m) })
                }
                other => return Err(format!("unknown bucketing {other:?}")),
            };
            ok(outputs)
        }
        Cmd::Sample { net, samples } => {
            let doc = load_doc(net)?;
            let masks: Vec<Value> = (0..*samples)
                .map(|i| {
                    let mask = combin::wilson_sample(&doc.net, cli.seed.wrapping_add(i as u64));
                    let edges: Vec<usize> = (0..doc.net.num_edges())
                        .filter(|e| mask >> e & 1 == 1)
                        .collect();
                    json!(edges)
                })
                .collect();
            ok(json!({ "trees": masks, "seed": cli.seed }))
        }
        Cmd::Medial { net } => {
            let doc = load_doc(net)?;
            let emb = need_embedding(&doc)?;
            let m = medial::build_medial(&doc.net, emb).map_err(|e| e.to_string())?;
            let strands: Vec<Value> = m
                .strands
                .iter()
                .map(|s| {
                    json!({
                        "edges": s.passes.iter().map(|p| p.edge).collect::<Vec<_>>(),
                        "closed": s.is_closed(),
                        "endpoints": s.endpoints.map(|(a, b)| vec![a + 1, b + 1]),
                        "homology": [s.homology.0, s.homology.1],
                    })
                })
                .collect();
            let involution = if emb.surface == Surface::Disk {
                let inv = medial::stub_involution(&doc.net, emb).map_err(|e| e.to_string())?;
                Some(
                    (0..inv.size())
                        .map(|i| inv.pair_of(i) + 1)
                        .collect::<Vec<_>>(),
                )
            } else {
                None
            };
            let verdict = medial::is_minimal(&doc.net, emb).map_err(|e| e.to_string())?;
            ok(json!({
                "strands": strands,
                "stub_involution": involution,
                "minimal": verdict.is_minimal(),
                "witness": format!("{verdict:?}"),
            }))
        }
        Cmd::Transform { net, mv, site } => {
            let doc = load_doc(net)?;
            let emb = need_embedding(&doc)?;
            let mv = parse_move(mv, site)?;
            let check = transforms::response_invariance_check(&doc.net, emb, &mv)
                .map_err(|e| e.to_string())?;
            let (net2, emb2) = transforms::apply(&doc.net, emb, &mv).map_err(|e| e.to_string())?;
            let out_doc = netjson::Document {
                net: net2,
                embedding: Some(emb2),
                connection: doc.connection.clone(),
            };
            Ok(Outcome {
                outputs: json!({
                    "network": serde_json::from_str::<Value>(&netjson::save(&out_doc)).unwrap(),
                }),
                verdicts: vec![("response_invariant".into(), json!(check.equal))],
            })
        }
        Cmd::Reconstruct { topology, response } => {
            let doc = load_doc(topology)?;
            let emb = need_embedding(&doc)?;
            let l = load_matrix(response)?;
            match transforms::reconstruct(&doc.net, emb, &l) {
                Ok(cs) => {
                    let conds: Vec<String> =
                        cs.iter().map(|c| rat_str(c, cli.float)).collect();
                    ok(json!({ "conductances": conds }))
                }
                Err(e) => Ok(Outcome {
                    outputs: json!({ "error": e.to_string() }),
                    verdicts: vec![("reconstructed".into(), json!(false))],
                }),
            }
        }
        Cmd::Minors { response, central } => {
            if !central {
                return Err("only --central minors are defined".into());
            }
            let l = load_matrix(response)?;
            let ms = transforms::central_minors(l.rows);
            let vals = transforms::evaluate_minors(&l, &ms);
            let list: Vec<Value> = ms
                .iter()
                .zip(&vals)
                .map(|(m, v)| {
                    json!({
                        "rows": m.rows.iter().map(|x| x + 1).collect::<Vec<_>>(),
                        "cols": m.cols.iter().map(|x| x + 1).collect::<Vec<_>>(),
                        "value": rat_str(v, cli.float),
                    })
                })
                .collect();
            let all_positive = vals.iter().all(|v| v.is_positive());
            Ok(Outcome {
                outputs: json!({ "central_minors": list }),
                verdicts: vec![("all_positive".into(), json!(all_positive))],
            })
        }
        Cmd::Jacobian { net } => {
            let doc = load_doc(net)?;
            let minors = transforms::central_minors(doc.net.nodes.len());
            if minors.len() != doc.net.num_edges() {
                return Err(format!(
                    "log-Jacobian needs a minimal network: {} minors vs {} edges",
                    minors.len(),
                    doc.net.num_edges()
                ));
            }
            let j = transforms::log_jacobian(&doc.net, &minors);
            let det = j.det().map_err(|e| e.to_string())?;
            let unimodular = det.abs() == Rat::from_integer(1.into());
            Ok(Outcome {
                outputs: json!({ "det": rat_str(&det, cli.float) }),
                verdicts: vec![("unimodular".into(), json!(unimodular))],
            })
        }
        Cmd::Charpoly { net } => {
            let doc = load_doc(net)?;
            let emb = need_embedding(&doc)?;
            let cp = surfaces::char_poly(&doc.net, emb, &net.display().to_string());
            let invariants = cp.check_invariants().is_ok();
            Ok(Outcome {
                outputs: json!({ "charpoly": laurent_json(&cp.poly) }),
                verdicts: vec![("symmetric_and_vanishing".into(), json!(invariants))],
            })
        }
        Cmd::Newton { net } => {
            let doc = load_doc(net)?;
            let emb = need_embedding(&doc)?;
            let cp = surfaces::char_poly(&doc.net, emb, "cli");
            let np = surfaces::newton_polygon(&cp.poly);
            Ok(Outcome {
                outputs: json!({
                    "vertices": np.vertices.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
                }),
                verdicts: vec![(
                    "centrally_symmetric".into(),
                    json!(np.is_centrally_symmetric()),
                )],
            })
        }
        Cmd::Decompose { net } => {
            let doc = load_doc(net)?;
            let emb = need_embedding(&doc)?;
            let cp = surfaces::char_poly(&doc.net, emb, "cli");
            match surfaces::homology_decompose(&cp) {
                Ok(d) => {
                    let mut m = Map::new();
                    for (&(r, s), c) in &d.coeffs {
                        m.insert(format!("({r},{s})"), json!(rat_str(c, cli.float)));
                    }
                    Ok(Outcome {
                        outputs: json!({ "classes": Value::Object(m) }),
                        verdicts: vec![("network_polynomial".into(), json!(true))],
                    })
                }
                Err(e) => Ok(Outcome {
                    outputs: json!({ "error": e.to_string() }),
                    verdicts: vec![("network_polynomial".into(), json!(false))],
                }),
            }
        }
        Cmd::FreeEnergy { net, grid } => {
            let doc = load_doc(net)?;
            let emb = need_embedding(&doc)?;
            let cp = surfaces::char_poly(&doc.net, emb, "cli");
            let f = surfaces::free_energy(&cp.poly, *grid);
            ok(json!({ "free_energy": f, "grid": grid }))
        }
        Cmd::Amoeba { net, grid, range } => {
            let doc = load_doc(net)?;
            let emb = need_embedding(&doc)?;
            let cp = surfaces::char_poly(&doc.net, emb, "cli");
            let scan = surfaces::amoeba_sample(&cp.poly, *grid, *range, 1e-8);
            let mut csv = String::from("logr1,logr2,root_count\n");
            for p in &scan.points {
                csv.push_str(&format!("{},{},{}\n", p.logr1, p.logr2, p.root_count));
            }
            Ok(Outcome {
                outputs: json!({ "csv": csv, "grid": grid }),
                verdicts: vec![("harnack".into(), json!(scan.harnack))],
            })
        }
        Cmd::GenCorpus { dir, counts } => {
            std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
            let mut rng = SplitMix::new(cli.seed);
            let mut written = Vec::new();
            for part in counts.split(',') {
                let (kind, k) = part
                    .split_once('=')
                    .ok_or_else(|| format!("bad counts entry {part:?}"))?;
                let k: usize = k.parse().map_err(|_| format!("bad count {part:?}"))?;
                for i in 0..k {
                    let (doc, name) = match kind {
                        "disk" => {
                            let (net, emb) =
                                ohmlab_core::corpus::random_disk_network(&mut rng, 4);
                            (
                                netjson::Document {
                                    net,
                                    embedding: Some(emb),
                                    connection: Connection::Trivial,
                                },
                                format!("disk_{i:03}.json"),
                            )
                        }
                        "annulus" => {
                            let n = 1 + rng.below(4) as usize;
                            let (net, emb) =
                                ohmlab_core::corpus::random_string_of_loops(&mut rng, n);
                            (
                                netjson::Document {
                                    net,
                                    embedding: Some(emb),
                                    connection: Connection::Line,
                                },
                                format!("annulus_{i:03}.json"),
                            )
                        }
                        "torus" => {
                            let m = 1 + rng.below(2) as usize;
                            let n = 2 + rng.below(2) as usize;
                            let (net, emb) =
                                ohmlab_core::corpus::random_torus_grid(&mut rng, m, n);
                            (
                                netjson::Document {
                                    net,
                                    embedding: Some(emb),
                                    connection: Connection::Line,
                                },
                                format!("torus_{i:03}.json"),
                            )
                        }
                        other => return Err(format!("unknown corpus kind {other:?}")),
                    };
                    let path = dir.join(&name);
                    std::fs::write(&path, netjson::save(&doc)).map_err(|e| e.to_string())?;
                    written.push(name);
                }
            }
            ok(json!({ "written": written, "seed": cli.seed }))
        }
        Cmd::VerifyAll => verify_all(cli.seed),
    }
}

fn parse_move(mv: &str, site: &str) -> Result<transforms::Move, String> {
    let vertex = || -> Result<usize, String> {
        site.strip_prefix('v')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("move {mv:?} needs a vertex site v<k>, got {site:?}"))
    };
    let edge = || -> Result<usize, String> {
        site.strip_prefix('e')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("move {mv:?} needs an edge site e<k>, got {site:?}"))
    };
    match mv {
        "deadbranch" => Ok(transforms::Move::DeadBranch { vertex: vertex()? }),
        "selfloop" => Ok(transforms::Move::SelfLoop { edge: edge()? }),
        "series" => Ok(transforms::Move::Series { vertex: vertex()? }),
        "parallel" => {
            let (a, b) = site
                .split_once(',')
                .ok_or_else(|| format!("parallel needs e<a>,e<b>, got {site:?}"))?;
            let pa = a
                .trim()
                .strip_prefix('e')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad edge {a:?}"))?;
            let pb = b
                .trim()
                .strip_prefix('e')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("bad edge {b:?}"))?;
            Ok(transforms::Move::Parallel { keep: pa, merge: pb })
        }
        "ydelta" => Ok(transforms::Move::YDelta { vertex: vertex()? }),
        "deltay" => {
            let d = ohmlab_core::network::dart_from_name(site)
                .ok_or_else(|| format!("deltay needs a face dart e<k>+/-, got {site:?}"))?;
            Ok(transforms::Move::DeltaY { face_dart: d })
        }
        other => Err(format!("unknown move {other:?}")),
    }
}

fn load_matrix(path: &std::path::Path) -> Result<RatMatrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("not JSON: {e}"))?;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or("matrix JSON needs an \"entries\" array of rows")?;
    let mut rows = Vec::new();
    for row in entries {
        let row = row.as_array().ok_or("matrix rows must be arrays")?;
        let mut r = Vec::new();
        for x in row {
            let s = x.as_str().ok_or("matrix entries must be rational strings")?;
            r.push(rat_from_str(s)?);
        }
        rows.push(r);
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err("matrix must be square and nonempty".into());
    }
    Ok(Matrix::from_rows(rows))
}

fn rat_str(x: &Rat, float: bool) -> String {
    if float {
        format!("{:.12}", rat_to_f64(x))
    } else {
        rat_to_string(x)
    }
}

fn mat_json(m: &RatMatrix, float: bool) -> Value {
    let rows: Vec<Value> = (0..m.rows)
        .map(|i| {
            json!((0..m.cols)
                .map(|j| rat_str(&m[(i, j)], float))
                .collect::<Vec<_>>())
        })
        .collect();
    Value::Array(rows)
}

fn ratfunc_mat_json(m: &Matrix<RatFunc>) -> Value {
    let coeffs = |p: &ohmlab_core::exact::unipoly::UniPoly| -> Vec<String> {
        p.coeffs().iter().map(rat_to_string).collect()
    };
    let rows: Vec<Value> = (0..m.rows)
        .map(|i| {
            json!((0..m.cols)
                .map(|j| {
                    json!({
                        "num": coeffs(m[(i, j)].num()),
                        "den": coeffs(m[(i, j)].den()),
                    })
                })
                .collect::<Vec<_>>())
        })
        .collect();
    Value::Array(rows)
}

fn laurent_json(p: &LaurentPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(&(a, b), c)| json!([a, b, rat_to_string(c)]))
        .collect();
    json!({ "vars": p.vars, "terms": terms })
}

/// Built-in oracle suite: a fast cross-section of the identities the library
/// is built on. Prints one verdict per check.
fn verify_all(seed: u64) -> Result<Outcome, String> {
    let mut verdicts: Vec<(String, Value)> = Vec::new();
    let mut rng = SplitMix::new(seed);

    // response of the three-spoke star against its closed form
    {
        let (c1, c2, c3) = (
            ohmlab_core::corpus::random_conductance(&mut rng),
            ohmlab_core::corpus::random_conductance(&mut rng),
            ohmlab_core::corpus::random_conductance(&mut rng),
        );
        let (net, _) =
            ohmlab_core::network::families::y_network(c1.clone(), c2.clone(), c3.clone());
        let l = laplacian::response_matrix(&net).map_err(|e| e.to_string())?;
        let s = &c1 + &c2 + &c3;
        let pass = l.m[(0, 1)] == &c1 * &c2 / &s && l.m[(1, 2)] == &c2 * &c3 / &s;
        verdicts.push(("star_response_closed_form".into(), json!(pass)));
    }
    // matrix-tree on random networks
    {
        let mut pass = true;
        for _ in 0..5 {
            let net = ohmlab_core::corpus::random_network(&mut rng, 6, 10);
            let (z, _) = combin::spanning_trees(&net).map_err(|e| e.to_string())?;
            let delta = laplacian::assemble(&net);
            let keep: Vec<usize> = (1..net.num_vertices).collect();
            let reduced = delta.submatrix(&keep, &keep).det().map_err(|e| e.to_string())?;
            pass &= z == reduced;
        }
        verdicts.push(("matrix_tree".into(), json!(pass)));
    }
    // transformation invariance: star-triangle on the Y
    {
        let (net, emb) = ohmlab_core::network::families::y_network(
            ohmlab_core::corpus::random_conductance(&mut rng),
            ohmlab_core::corpus::random_conductance(&mut rng),
            ohmlab_core::corpus::random_conductance(&mut rng),
        );
        let chk = transforms::response_invariance_check(
            &net,
            &emb,
            &transforms::Move::YDelta { vertex: 3 },
        )
        .map_err(|e| e.to_string())?;
        verdicts.push(("star_triangle_invariance".into(), json!(chk.equal)));
    }
    // torus fixture: characteristic polynomial decomposition classes
    {
        let (mut net, emb) = ohmlab_core::network::families::torus_grid(2, 2).unwrap();
        net.edges[0].c = ohmlab_core::rat(3, 1);
        let cp = surfaces::char_poly(&net, &emb, "verify");
        let d = surfaces::homology_decompose(&cp).map_err(|e| e.to_string())?;
        let pass = d.coeffs.get(&(0, 1)) == Some(&ohmlab_core::rat(48, 1));
        verdicts.push(("torus_fixture_classes".into(), json!(pass)));
    }
    // Pfaffian consistency on random self-dual matrices
    {
        let mut pass = true;
        for _ in 0..10 {
            let m = ohmlab_core::corpus::random_self_dual(&mut rng, 3);
            let q = surfaces::qdet(&m).map_err(|e| e.to_string())?;
            pass &= &q * &q == m.det().map_err(|e| e.to_string())?;
        }
        verdicts.push(("qdet_squares_to_det".into(), json!(pass)));
    }
    for (name, v) in &verdicts {
        println!(
            "{}: {}",
            name,
            if v.as_bool() == Some(true) { "pass" } else { "FAIL" }
        );
    }
    let _ = ToPrimitive::to_f64(&0i32);
    Ok(Outcome {
        outputs: json!({ "checks": verdicts.len() }),
        verdicts,
    })
}
