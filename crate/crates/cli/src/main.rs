//! `lackawalk`: batch experiment runner for lackadaisical quantum walk
//! simulations and claim verification.
//!
//! Subcommands: simulate | verify | spectrum | sweep | hitting-time.
//! Flag precedence is flags > config file > defaults; the config file is a
//! flat `key = value` text format. Numbers in CSV output are printed with 17
//! significant digits so doubles round-trip exactly.

use clap::{Args, Parser, Subcommand};
use lackawalk_core::classical::{
    hitting_time_exact, hitting_time_monte_carlo, interpolated_matrix, lazy_interpolated_matrix,
    walk_matrix, Distribution,
};
use lackawalk_core::coined::CoinConfig;
use lackawalk_core::graph::{build_graph, parse_edge_list, GraphFamily, MarkedInstance};
use lackawalk_core::spectral::{
    cotangent_qht_from_spectrum, discriminant, eigendecompose, interpolated_hitting_time,
    overlap_decomposition,
};
use lackawalk_core::szegedy::{theorem2_distances, WalkParams};
use lackawalk_core::verify::{
    check_arc_invariance, check_facts, check_lemma1, check_lemma2, check_lemma3, check_theorem1,
    check_theorem2, search_experiment, ClaimReport,
};
use serde::Serialize;
use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Parser)]
#[command(name = "lackawalk", version, about = "Lackadaisical quantum walk experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the search walk and emit a (t, success_prob, norm) CSV trajectory.
    Simulate(RunArgs),
    /// Run claim checks and emit a JSON report array.
    Verify(RunArgs),
    /// Dump the discriminant spectra and spectral hitting times as JSON.
    Spectrum(RunArgs),
    /// Sweep a size list and emit per-size summary CSV.
    Sweep(SweepArgs),
    /// Classical hitting time, exact solve and optional Monte Carlo.
    HittingTime(RunArgs),
}

#[derive(Args, Clone, Default)]
struct FamilyArgs {
    /// cycle | torus | complete | complete-bipartite | hypercube | johnson |
    /// paley | moebius-ladder | edge-list
    #[arg(long)]
    family: Option<String>,
    /// Vertex count (cycle, complete) or subset base size (johnson).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// Side size for the balanced complete bipartite graph.
    #[arg(long)]
    half: Option<usize>,
    /// Hypercube dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Subset size for the Johnson graph J(n, k).
    #[arg(long)]
    k: Option<usize>,
    /// Field size for the Paley graph (prime, q = 1 mod 4).
    #[arg(long)]
    q: Option<usize>,
    /// Path to an explicit edge list ("N d" header, one "u v" per line).
    #[arg(long)]
    edge_list: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct RunArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Marked vertex (default 0).
    #[arg(long)]
    mark: Option<usize>,
    /// Self-loop weight (default d/N).
    #[arg(long)]
    ell: Option<f64>,
    /// Interpolation parameter (default 1 - ell/d).
    #[arg(long)]
    s: Option<f64>,
    /// Step horizon; default is ceil(c * sqrt(HT)).
    #[arg(long)]
    t_max: Option<u64>,
    /// Horizon multiplier c in t_max = ceil(c * sqrt(HT)) (default 2).
    #[arg(long)]
    c: Option<f64>,
    /// CSV row stride for trajectories (default 1).
    #[arg(long)]
    stride: Option<u64>,
    /// Claim selection for `verify`: comma-separated subset of
    /// thm1,lem1,lem2,lem3,facts,arc (default: all of those), plus thm2,
    /// which runs the trajectory-distance slope fit over its own torus
    /// sequence instead of the configured instance.
    #[arg(long)]
    claims: Option<String>,
    /// RNG seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo trial count for `hitting-time` (0 disables; default 0).
    #[arg(long)]
    trials: Option<usize>,
    /// Flat key = value config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// For `verify`: also write the per-step trajectory distances between
    /// the coined and interpolated walks as CSV (t,d_exact,d_embed,d_total).
    #[arg(long)]
    distances_out: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Comma-separated size list; meaning depends on the family
    /// (cycle/complete: n, torus: side, hypercube: dim, paley: q).
    #[arg(long)]
    sizes: Option<String>,
    /// Worker pool size (default: env LACKAWALK_JOBS, then 1).
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::HittingTime(args) => cmd_hitting_time(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

/// Configuration resolved from flags > config file > defaults.
struct Resolved {
    inst: MarkedInstance,
    label: String,
    params: WalkParams,
    t_max: u64,
    c: f64,
    stride: u64,
    seed: u64,
    trials: usize,
    claims: Vec<String>,
    out: Option<PathBuf>,
}

fn load_config(path: &Option<PathBuf>) -> Result<HashMap<String, String>, AnyError> {
    let mut map = HashMap::new();
    if let Some(path) = path {
        let text = fs::read_to_string(path)?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("bad config line (want key = value): {line:?}"))?;
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
    }
    Ok(map)
}

fn pick<T: std::str::FromStr>(
    flag: Option<T>,
    config: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, AnyError>
where
    T::Err: std::fmt::Display,
{
    if flag.is_some() {
        return Ok(flag);
    }
    match config.get(key) {
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|e| format!("config key {key}: {e}").into()),
        None => Ok(None),
    }
}

fn resolve(args: &RunArgs) -> Result<Resolved, AnyError> {
    let config = load_config(&args.config)?;
    let family = resolve_family(&args.family, &config)?;
    let label = family.label();
    let graph = build_graph(&family)?;
    let mark = pick(args.mark, &config, "mark")?.unwrap_or(0);
    let inst = MarkedInstance::new(graph, mark)?;
    let d = inst.graph().degree() as f64;
    let ell = pick(args.ell, &config, "ell")?
        .unwrap_or(d / inst.graph().n_vertices() as f64);
    let s = pick(args.s, &config, "s")?.unwrap_or(1.0 - ell / d);
    let params = WalkParams { ell, s };
    let c = pick(args.c, &config, "c")?.unwrap_or(2.0);
    let t_max = match pick(args.t_max, &config, "t_max")? {
        Some(t) => t,
        None => {
            let ht = hitting_time_exact(&walk_matrix(inst.graph()), inst.marked(), None)?;
            (c * ht.sqrt()).ceil() as u64
        }
    };
    let claims_raw = match &args.claims {
        Some(c) => Some(c.clone()),
        None => config.get("claims").cloned(),
    };
    let claims = claims_raw
        .map(|raw| raw.split(',').map(|t| t.trim().to_string()).collect())
        .unwrap_or_else(|| {
            ["thm1", "lem1", "lem2", "lem3", "facts", "arc"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        });
    let out = match &args.out {
        Some(p) => Some(p.clone()),
        None => config.get("out").map(PathBuf::from),
    };
    Ok(Resolved {
        inst,
        label,
        params,
        t_max,
        c,
        stride: pick(args.stride, &config, "stride")?.unwrap_or(1).max(1),
        seed: pick(args.seed, &config, "seed")?.unwrap_or(0),
        trials: pick(args.trials, &config, "trials")?.unwrap_or(0),
        claims,
        out,
    })
}

fn resolve_family(
    args: &FamilyArgs,
    config: &HashMap<String, String>,
) -> Result<GraphFamily, AnyError> {
    let family = match &args.family {
        Some(f) => f.clone(),
        None => config
            .get("family")
            .cloned()
            .ok_or("missing --family (or family = ... in the config file)")?,
    };
    let n = pick(args.n, config, "n")?;
    let need = |opt: Option<usize>, what: &str| -> Result<usize, AnyError> {
        opt.ok_or_else(|| format!("family {family} needs --{what}").into())
    };
    let spec = match family.as_str() {
        "cycle" => GraphFamily::Cycle { n: need(n, "n")? },
        "torus" => GraphFamily::Torus {
            rows: need(pick(args.rows, config, "rows")?, "rows")?,
            cols: need(pick(args.cols, config, "cols")?, "cols")?,
        },
        "complete" => GraphFamily::Complete { n: need(n, "n")? },
        "complete-bipartite" => GraphFamily::CompleteBipartite {
            half: need(pick(args.half, config, "half")?, "half")?,
        },
        "hypercube" => GraphFamily::Hypercube {
            dim: need(pick(args.dim, config, "dim")?, "dim")?,
        },
        "johnson" => GraphFamily::Johnson {
            n: need(n, "n")?,
            k: need(pick(args.k, config, "k")?, "k")?,
        },
        "paley" => GraphFamily::Paley { q: need(pick(args.q, config, "q")?, "q")? },
        "moebius-ladder" => GraphFamily::MoebiusLadder { n: need(n, "n")? },
        "edge-list" => {
            let path = match &args.edge_list {
                Some(p) => p.clone(),
                None => config
                    .get("edge_list")
                    .map(PathBuf::from)
                    .ok_or("family edge-list needs --edge-list <path>")?,
            };
            parse_edge_list(&fs::read_to_string(path)?)?
        }
        other => return Err(format!("unknown family {other}").into()),
    };
    Ok(spec)
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), AnyError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

/// 17 significant digits: exact round-trip for f64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_simulate(args: RunArgs) -> Result<ExitCode, AnyError> {
    let r = resolve(&args)?;
    let cfg = CoinConfig::new(r.inst.graph(), r.params.ell)?;
    let curve = search_experiment(&r.inst, &cfg, r.t_max);
    let mut csv = String::from("t,success_prob,norm\n");
    for t in (0..=r.t_max).step_by(r.stride as usize) {
        let i = t as usize;
        csv.push_str(&format!(
            "{t},{},{}\n",
            fmt_f64(curve.success[i]),
            fmt_f64(curve.norms[i])
        ));
    }
    write_output(&r.out, &csv)?;
    eprintln!(
        "{}: max success {:.6} at t={} (horizon {}); first t with p >= 0.5: {}",
        r.label,
        curve.max,
        curve.argmax,
        r.t_max,
        curve
            .first_reaching_half
            .map(|t| t.to_string())
            .unwrap_or_else(|| "never".into())
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: RunArgs) -> Result<ExitCode, AnyError> {
    let r = resolve(&args)?;
    let mut reports: Vec<ClaimReport> = Vec::new();
    for claim in &r.claims {
        let report = match claim.as_str() {
            "thm1" => check_theorem1(&r.inst, r.params)?,
            "lem1" => check_lemma1(&r.inst, r.params, r.t_max)?,
            "lem2" => check_lemma2(&r.inst, r.params, 50, r.seed)?,
            "lem3" => check_lemma3(&r.inst, r.params)?,
            "facts" => check_facts(&r.inst, r.params)?,
            "arc" => check_arc_invariance(&r.inst, r.params, r.t_max)?,
            "thm2" => {
                let sizes = [4usize, 6, 8, 10, 12];
                let instances = sizes
                    .iter()
                    .map(|&k| {
                        let g = build_graph(&GraphFamily::Torus { rows: k, cols: k })?;
                        Ok(MarkedInstance::new(g, 0)?)
                    })
                    .collect::<Result<Vec<_>, AnyError>>()?;
                check_theorem2(&instances, r.c.min(1.0), -0.20)?
            }
            other => return Err(format!("unknown claim {other}").into()),
        };
        reports.push(report);
    }
    if let Some(path) = &args.distances_out {
        let rows = theorem2_distances(&r.inst, r.params, r.t_max)?;
        let mut csv = String::from("t,d_exact,d_embed,d_total\n");
        for row in rows {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                row.t,
                fmt_f64(row.exact_part),
                fmt_f64(row.embed_part),
                fmt_f64(row.total)
            ));
        }
        fs::write(path, csv)?;
    }
    let failed_met: Vec<&ClaimReport> =
        reports.iter().filter(|r| r.hypothesis_met && !r.pass).collect();
    for report in &reports {
        eprintln!(
            "{} [{}]: {} (residual {:.3e}, tolerance {:.1e}{})",
            report.claim,
            report.instance,
            if report.pass { "pass" } else { "FAIL" },
            report.residual,
            report.tolerance,
            if report.hypothesis_met { "" } else { ", hypothesis unmet" },
        );
    }
    let json = serde_json::to_string_pretty(&reports)?;
    write_output(&r.out, &(json + "\n"))?;
    if failed_met.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

#[derive(Serialize)]
struct EigenspaceEntry {
    theta: f64,
    overlap_sq: f64,
}

#[derive(Serialize)]
struct SpectrumSide {
    eigenvalues: Vec<f64>,
    thetas: Vec<f64>,
    /// One entry per eigenspace: its angle and squared overlap with
    /// sqrt(pi-bar).
    eigenspaces: Vec<EigenspaceEntry>,
    interpolated_hitting_time: f64,
    cotangent_qht: f64,
}

#[derive(Serialize)]
struct SpectrumDump {
    instance: String,
    n_vertices: usize,
    degree: usize,
    mark: usize,
    ell: f64,
    s: f64,
    classical_hitting_time: f64,
    plain: SpectrumSide,
    lazy: SpectrumSide,
}

fn spectrum_side(
    matrix: &lackawalk_core::classical::StochasticMatrix,
    pibar: &Distribution,
) -> Result<SpectrumSide, AnyError> {
    let spec = eigendecompose(&discriminant(matrix))?;
    let overlaps = overlap_decomposition(&spec, pibar)?;
    let eigenspaces = overlaps
        .group_overlaps_sq
        .iter()
        .enumerate()
        .map(|(g, &overlap_sq)| EigenspaceEntry {
            theta: spec.group_value(g).clamp(-1.0, 1.0).acos(),
            overlap_sq,
        })
        .collect();
    Ok(SpectrumSide {
        eigenvalues: spec.eigenvalues().to_vec(),
        thetas: (0..spec.n()).map(|k| spec.angle(k)).collect(),
        eigenspaces,
        interpolated_hitting_time: interpolated_hitting_time(&spec, pibar)?,
        cotangent_qht: cotangent_qht_from_spectrum(&spec, pibar)?,
    })
}

fn cmd_spectrum(args: RunArgs) -> Result<ExitCode, AnyError> {
    let r = resolve(&args)?;
    let graph = r.inst.graph();
    let pibar = Distribution::pibar(graph.n_vertices(), r.inst.marked());
    let plain = interpolated_matrix(&walk_matrix(graph), r.inst.marked(), r.params.s)?;
    let lazy = lazy_interpolated_matrix(graph, r.inst.marked(), r.params.ell, r.params.s)?;
    let dump = SpectrumDump {
        instance: r.label.clone(),
        n_vertices: graph.n_vertices(),
        degree: graph.degree(),
        mark: r.inst.marked(),
        ell: r.params.ell,
        s: r.params.s,
        classical_hitting_time: hitting_time_exact(&walk_matrix(graph), r.inst.marked(), None)?,
        plain: spectrum_side(&plain, &pibar)?,
        lazy: spectrum_side(&lazy, &pibar)?,
    };
    let json = serde_json::to_string_pretty(&dump)?;
    write_output(&r.out, &(json + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_hitting_time(args: RunArgs) -> Result<ExitCode, AnyError> {
    let r = resolve(&args)?;
    let p = walk_matrix(r.inst.graph());
    let exact = hitting_time_exact(&p, r.inst.marked(), None)?;
    let mut text = format!("instance,{}\nexact,{}\n", r.label, fmt_f64(exact));
    if r.trials > 0 {
        let mc = hitting_time_monte_carlo(&p, r.inst.marked(), None, r.trials, r.seed)?;
        text.push_str(&format!(
            "monte_carlo_mean,{}\nmonte_carlo_std_error,{}\ntrials,{}\ntruncated,{}\n",
            fmt_f64(mc.mean),
            fmt_f64(mc.std_error),
            mc.trials,
            mc.truncated
        ));
    }
    write_output(&r.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn sweep_family(family: &str, size: usize) -> Result<GraphFamily, AnyError> {
    Ok(match family {
        "cycle" => GraphFamily::Cycle { n: size },
        "torus" => GraphFamily::Torus { rows: size, cols: size },
        "complete" => GraphFamily::Complete { n: size },
        "complete-bipartite" => GraphFamily::CompleteBipartite { half: size },
        "hypercube" => GraphFamily::Hypercube { dim: size },
        "paley" => GraphFamily::Paley { q: size },
        "moebius-ladder" => GraphFamily::MoebiusLadder { n: size },
        other => return Err(format!("family {other} cannot be swept by one size").into()),
    })
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, AnyError> {
    let config = load_config(&args.run.config)?;
    let family = match &args.run.family.family {
        Some(f) => f.clone(),
        None => config
            .get("family")
            .cloned()
            .ok_or("sweep needs --family")?,
    };
    let sizes_raw = match &args.sizes {
        Some(s) => s.clone(),
        None => config.get("sizes").cloned().ok_or("sweep needs --sizes")?,
    };
    let sizes: Vec<usize> = sizes_raw
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()?;
    let jobs = args
        .jobs
        .or_else(|| config.get("jobs").and_then(|j| j.parse().ok()))
        .or_else(|| std::env::var("LACKAWALK_JOBS").ok().and_then(|j| j.parse().ok()))
        .unwrap_or(1)
        .max(1);
    let c = pick(args.run.c, &config, "c")?.unwrap_or(2.0);
    let mark = pick(args.run.mark, &config, "mark")?.unwrap_or(0);

    let rows: Mutex<Vec<Option<String>>> = Mutex::new(vec![None; sizes.len()]);
    let next: AtomicUsize = AtomicUsize::new(0);
    let worker = |_id: usize| -> Result<(), String> {
        loop {
            let i = next.fetch_add(1, Ordering::SeqCst);
            if i >= sizes.len() {
                return Ok(());
            }
            let row = sweep_row(&family, sizes[i], mark, c).map_err(|e| e.to_string())?;
            rows.lock().unwrap()[i] = Some(row);
        }
    };
    std::thread::scope(|scope| -> Result<(), String> {
        let handles: Vec<_> = (0..jobs).map(|id| scope.spawn(move || worker(id))).collect();
        for handle in handles {
            handle.join().map_err(|_| "worker panicked".to_string())??;
        }
        Ok(())
    })
    .map_err(|e| -> AnyError { e.into() })?;

    let mut csv = String::from("n,ht,cot_qht,max_success_prob,thm2_distance_max\n");
    for row in rows.into_inner().unwrap() {
        csv.push_str(&row.ok_or("missing sweep row")?);
    }
    let out = match &args.run.out {
        Some(p) => Some(p.clone()),
        None => config.get("out").map(PathBuf::from),
    };
    write_output(&out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn sweep_row(family: &str, size: usize, mark: usize, c: f64) -> Result<String, AnyError> {
    let spec = sweep_family(family, size)?;
    let graph = build_graph(&spec)?;
    let inst = MarkedInstance::new(graph, mark)?;
    let params = WalkParams::standard(inst.graph());
    let n = inst.graph().n_vertices();
    let ht = hitting_time_exact(&walk_matrix(inst.graph()), inst.marked(), None)?;
    let plain = interpolated_matrix(&walk_matrix(inst.graph()), inst.marked(), params.s)?;
    let spectrum = eigendecompose(&discriminant(&plain))?;
    let pibar = Distribution::pibar(n, inst.marked());
    let cot = cotangent_qht_from_spectrum(&spectrum, &pibar)?;
    let cfg = CoinConfig::new(inst.graph(), params.ell)?;
    let t_search = (c * ht.sqrt()).ceil() as u64;
    let curve = search_experiment(&inst, &cfg, t_search);
    let t_dist = (c.min(1.0) * ht.sqrt()).floor() as u64;
    let dist_rows = theorem2_distances(&inst, params, t_dist)?;
    let max_dist = dist_rows.iter().map(|r| r.total).fold(0.0f64, f64::max);
    Ok(format!(
        "{n},{},{},{},{}\n",
        fmt_f64(ht),
        fmt_f64(cot),
        fmt_f64(curve.max),
        fmt_f64(max_dist)
    ))
}
