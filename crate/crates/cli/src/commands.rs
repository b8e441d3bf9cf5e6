use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use oslcm_core::generators::{
    certificate_order, hardness_instance, random_instance, tightness_instance, DegreeSampler,
    NameMap, StrictMode, ThreePartitionInstance, Vertex,
};
use oslcm_core::{
    crossing_profile, decide_k_planar, exact_optimum, heuristic_order, CountMode, Decision,
    TwoLayerNetwork, YOrder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::args::{
    Algo, BenchArgs, Cli, Command, DecideArgs, EvalArgs, GenArgs, GenKind, HeuristicArgs,
    OrderSource, OutputArgs, RenderArgs, SolveArgs, VerifyApproxArgs,
};
use crate::error::CliError;
use crate::format::{
    instance_digest, order_file_ids, parse_instance, parse_order, parse_values,
    write_instance_with_comments, write_order,
};
use crate::render::render_svg;
use crate::report::{
    ratio, recount, render_bench, verify_value, BenchRow, DecideReport, ResultReport, SolveReport,
};

/// Exit status for a decision that ran out of budget.
pub const EXIT_UNKNOWN: u8 = 3;

/// Runs one subcommand and returns the process exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Gen(args) => gen(args, out),
        Command::Solve(args) => solve(args, out),
        Command::Decide(args) => decide(args, out),
        Command::Eval(args) => eval(args, out),
        Command::VerifyApprox(args) => verify_approx(args, out),
        Command::Render(args) => render(args, out),
        Command::Bench(args) => bench(args, out),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|err| CliError::io("<stdin>", err))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|err| CliError::io(path, err))
}

fn write_target(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, text).map_err(|err| CliError::io(path, err)),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

pub fn load_instance(path: &Path) -> Result<TwoLayerNetwork, CliError> {
    parse_instance(&read_text(path)?).map_err(|source| CliError::Parse {
        origin: path.display().to_string(),
        source,
    })
}

fn load_order(source: &OrderSource, network: &TwoLayerNetwork) -> Result<Option<YOrder>, CliError> {
    let (origin, text) = match (&source.order, &source.order_list) {
        (Some(path), _) => (path.display().to_string(), read_text(path)?),
        (None, Some(list)) => ("--order-list".to_string(), list.clone()),
        (None, None) => return Ok(None),
    };
    parse_order(&text, network)
        .map(Some)
        .map_err(|source| CliError::Parse { origin, source })
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn median_report(
    network: &TwoLayerNetwork,
    heuristic: &HeuristicArgs,
    digest: &str,
    with_profile: bool,
) -> Result<(ResultReport, YOrder), CliError> {
    let start = Instant::now();
    let order = heuristic_order(
        network,
        heuristic.rule.to_core(),
        heuristic.tie_break.to_core(),
    );
    let value = crossing_profile(network, &order, CountMode::Fast)?.local_crossing_number();
    let elapsed = elapsed_ms(start);
    let profile = verify_value(network, &order, value, "median heuristic")?;
    let report = ResultReport {
        algorithm: "median",
        rule: Some(heuristic.rule.name()),
        tie_break: Some(heuristic.tie_break.name()),
        order: order_file_ids(network, &order),
        local_crossing_number: value,
        proven_optimal: None,
        nodes_explored: None,
        elapsed_ms: elapsed,
        instance_digest: digest.to_string(),
        profile: with_profile.then(|| profile.into_counts()),
    };
    Ok((report, order))
}

fn solve(args: SolveArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let network = load_instance(&args.instance)?;
    let budget = args.budget.budget()?;
    let digest = instance_digest(&network);
    let mut reports = Vec::new();
    let mut best: Option<YOrder> = None;

    let mut heuristic_value = None;
    if matches!(args.algo, Algo::Median | Algo::Both) {
        let (report, order) = median_report(&network, &args.heuristic, &digest, args.profile)?;
        heuristic_value = Some(report.local_crossing_number);
        reports.push(report);
        best = Some(order);
    }

    let mut exact_value = None;
    if matches!(args.algo, Algo::Exact | Algo::Both) {
        let start = Instant::now();
        let result = exact_optimum(&network, budget)?;
        let elapsed = elapsed_ms(start);
        let profile = verify_value(&network, &result.order, result.value, "exact search")?;
        if let Some(h) = heuristic_value {
            if result.value > h {
                return Err(CliError::Verification(format!(
                    "exact search returned {} above the heuristic value {h}",
                    result.value
                )));
            }
        }
        if result.proven_optimal {
            exact_value = Some(result.value);
        }
        reports.push(ResultReport {
            algorithm: "exact",
            rule: None,
            tie_break: None,
            order: order_file_ids(&network, &result.order),
            local_crossing_number: result.value,
            proven_optimal: Some(result.proven_optimal),
            nodes_explored: Some(result.nodes_explored),
            elapsed_ms: elapsed,
            instance_digest: digest.clone(),
            profile: args.profile.then(|| profile.into_counts()),
        });
        best = Some(result.order);
    }

    let report = SolveReport {
        x_count: network.x_count(),
        y_count: network.y_count(),
        edge_count: network.edge_count(),
        ratio: heuristic_value
            .zip(exact_value)
            .and_then(|(h, e)| ratio(h, e)),
        reports,
    };
    if let (Some(path), Some(order)) = (&args.order_out, &best) {
        fs::write(path, write_order(&network, order)).map_err(|err| CliError::io(path, err))?;
    }
    out.write_all(report.render(args.format).as_bytes())?;
    Ok(0)
}

fn decide(args: DecideArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let network = load_instance(&args.instance)?;
    let budget = args.budget.budget()?;
    let start = Instant::now();
    let decision = decide_k_planar(&network, args.k, budget)?;
    let elapsed = elapsed_ms(start);

    let (answer, witness, witness_value, code) = match &decision {
        Decision::Yes(order) => {
            let value = recount(&network, order)?.local_crossing_number();
            if value > args.k {
                return Err(CliError::Verification(format!(
                    "witness has local crossing number {value} > k = {}",
                    args.k
                )));
            }
            ("yes", Some(order_file_ids(&network, order)), Some(value), 0)
        }
        Decision::No => ("no", None, None, 0),
        Decision::Unknown => ("unknown", None, None, EXIT_UNKNOWN),
    };
    let report = DecideReport {
        k: args.k,
        answer,
        witness,
        witness_value,
        elapsed_ms: elapsed,
        instance_digest: instance_digest(&network),
    };
    out.write_all(report.render(args.format).as_bytes())?;
    Ok(code)
}

fn eval(args: EvalArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let network = load_instance(&args.instance)?;
    let order = load_order(&args.order, &network)?
        .ok_or_else(|| CliError::Usage("eval needs --order or --order-list".into()))?;
    let start = Instant::now();
    let value = crossing_profile(&network, &order, CountMode::Fast)?.local_crossing_number();
    let elapsed = elapsed_ms(start);
    let profile = verify_value(&network, &order, value, "sweep count")?;
    let report = SolveReport {
        x_count: network.x_count(),
        y_count: network.y_count(),
        edge_count: network.edge_count(),
        reports: vec![ResultReport {
            algorithm: "given",
            rule: None,
            tie_break: None,
            order: order_file_ids(&network, &order),
            local_crossing_number: value,
            proven_optimal: None,
            nodes_explored: None,
            elapsed_ms: elapsed,
            instance_digest: instance_digest(&network),
            profile: args.profile.then(|| profile.into_counts()),
        }],
        ratio: None,
    };
    out.write_all(report.render(args.format).as_bytes())?;
    Ok(0)
}

fn file_names(
    network: &TwoLayerNetwork,
    names: &NameMap,
) -> serde_json::Map<String, serde_json::Value> {
    names
        .iter()
        .map(|(name, vertex)| {
            let id = match *vertex {
                Vertex::X(x) => x,
                Vertex::Y(y) => network.x_count() + y,
            };
            (name.clone(), json!(id))
        })
        .collect()
}

fn emit_generated(
    network: &TwoLayerNetwork,
    comments: &[String],
    sidecar: serde_json::Value,
    target: &OutputArgs,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    write_target(
        target.output.as_deref(),
        &write_instance_with_comments(network, comments),
        out,
    )?;
    if let Some(path) = &target.sidecar {
        let mut text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
        text.push('\n');
        fs::write(path, text).map_err(|err| CliError::io(path, err))?;
    }
    Ok(0)
}

fn gen(args: GenArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    match args.kind {
        GenKind::Tightness { k, out: target } => {
            let instance = tightness_instance(k)?;
            let network = &instance.network;
            let sidecar = json!({
                "kind": "tightness",
                "k": k,
                "x_count": network.x_count(),
                "y_count": network.y_count(),
                "edge_count": network.edge_count(),
                "names": file_names(network, &instance.name_map),
            });
            let comments = [format!("tightness family k={k}")];
            emit_generated(network, &comments, sidecar, &target, out)
        }
        GenKind::Hardness {
            s_file,
            strict,
            out: target,
        } => {
            let values = parse_values(&read_text(&s_file)?).map_err(|source| CliError::Parse {
                origin: s_file.display().to_string(),
                source,
            })?;
            let instance = ThreePartitionInstance::new(values)?;
            let mode = if strict {
                StrictMode::Enforce
            } else {
                StrictMode::Record
            };
            let artifacts = hardness_instance(&instance, mode)?;
            let network = &artifacts.network;
            let partition = instance.find_partition();
            let certificate = match &partition {
                Some(triplets) => {
                    let order = certificate_order(&artifacts, triplets)?;
                    let value = recount(network, &order)?.local_crossing_number();
                    if value > artifacts.k {
                        return Err(CliError::Verification(format!(
                            "certificate order has local crossing number {value} > k = {}",
                            artifacts.k
                        )));
                    }
                    json!({ "order": order_file_ids(network, &order), "value": value })
                }
                None => serde_json::Value::Null,
            };
            let sidecar = json!({
                "kind": "hardness",
                "k": artifacts.k,
                "n": artifacts.n,
                "target": artifacts.target,
                "values": artifacts.values,
                "x_count": network.x_count(),
                "y_count": network.y_count(),
                "edge_count": network.edge_count(),
                "strict_violations": artifacts.strict_violations,
                "partition": partition,
                "certificate": certificate,
                "names": file_names(network, &artifacts.name_map),
            });
            let comments = [format!(
                "3-partition reduction n={} T={} k={}",
                artifacts.n, artifacts.target, artifacts.k
            )];
            emit_generated(network, &comments, sidecar, &target, out)
        }
        GenKind::Random {
            x_count,
            y_count,
            min_degree,
            max_degree,
            seed,
            out: target,
        } => {
            let sampler = DegreeSampler::Uniform {
                min: min_degree,
                max: max_degree,
            };
            let network = random_instance(x_count, y_count, sampler, seed)?;
            let sidecar = json!({
                "kind": "random",
                "seed": seed,
                "min_degree": min_degree,
                "max_degree": max_degree,
                "x_count": x_count,
                "y_count": y_count,
                "edge_count": network.edge_count(),
            });
            let comments = [format!(
                "random seed={seed} degrees={min_degree}..={max_degree}"
            )];
            emit_generated(&network, &comments, sidecar, &target, out)
        }
    }
}

enum Job {
    Random {
        x_count: u32,
        y_count: u32,
        max_degree: u32,
        seed: u64,
    },
    Tightness(u32),
}

struct ApproxRow {
    source: String,
    network: TwoLayerNetwork,
    digest: String,
    exact: u64,
    proven: bool,
    heuristic: u64,
}

impl ApproxRow {
    /// The approximation bound is checked only against proven optima.
    fn violates(&self) -> bool {
        self.proven && self.heuristic > 3 * self.exact
    }
}

pub const APPROX_CSV_HEADER: &str =
    "index,source,digest,x_count,y_count,edges,exact,proven,heuristic,ratio";

fn approx_row(
    source: String,
    network: TwoLayerNetwork,
    heuristic: &HeuristicArgs,
    budget: oslcm_core::SearchBudget,
) -> Result<ApproxRow, CliError> {
    let order = heuristic_order(
        &network,
        heuristic.rule.to_core(),
        heuristic.tie_break.to_core(),
    );
    let heuristic_value = recount(&network, &order)?.local_crossing_number();
    let exact = exact_optimum(&network, budget)?;
    verify_value(&network, &exact.order, exact.value, "exact search")?;
    Ok(ApproxRow {
        source,
        digest: instance_digest(&network),
        network,
        exact: exact.value,
        proven: exact.proven_optimal,
        heuristic: heuristic_value,
    })
}

fn verify_approx(args: VerifyApproxArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if args.max_x == 0 || args.max_y == 0 || args.max_degree == 0 {
        return Err(CliError::Usage(
            "--max-x, --max-y and --max-degree must be positive".into(),
        ));
    }
    let budget = args.budget.budget()?;

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut jobs: Vec<Job> = (0..args.count)
        .map(|_| {
            let x_count = rng.random_range(1..=args.max_x);
            let y_count = rng.random_range(1..=args.max_y);
            Job::Random {
                x_count,
                y_count,
                max_degree: args.max_degree.min(x_count),
                seed: rng.random(),
            }
        })
        .collect();
    jobs.extend(args.tightness.iter().map(|&k| Job::Tightness(k)));

    let rows = jobs
        .into_par_iter()
        .map(|job| {
            let (source, network) = match job {
                Job::Random {
                    x_count,
                    y_count,
                    max_degree,
                    seed,
                } => {
                    let sampler = DegreeSampler::Uniform {
                        min: 1,
                        max: max_degree,
                    };
                    (
                        format!("random-{seed:016x}"),
                        random_instance(x_count, y_count, sampler, seed)?,
                    )
                }
                Job::Tightness(k) => (format!("tightness-{k}"), tightness_instance(k)?.network),
            };
            approx_row(source, network, &args.heuristic, budget)
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut csv = String::new();
    csv.push_str(APPROX_CSV_HEADER);
    csv.push('\n');
    let mut violations = Vec::new();
    for (index, row) in rows.iter().enumerate() {
        let ratio_cell = if row.proven {
            ratio(row.heuristic, row.exact)
                .map(|r| format!("{r:.6}"))
                .unwrap_or_else(|| "inf".into())
        } else {
            String::new()
        };
        csv.push_str(&format!(
            "{index},{},{},{},{},{},{},{},{},{ratio_cell}\n",
            row.source,
            row.digest,
            row.network.x_count(),
            row.network.y_count(),
            row.network.edge_count(),
            row.exact,
            row.proven,
            row.heuristic,
        ));
        if !row.proven {
            eprintln!("warning: row {index}: exact search ran out of budget, ratio not checked");
        }
        if row.violates() {
            violations.push(index);
        }
    }
    write_target(args.output.as_deref(), &csv, out)?;

    if violations.is_empty() {
        return Ok(0);
    }
    let mut dumped = Vec::new();
    for &index in &violations {
        let row = &rows[index];
        let path: PathBuf = args.dump_dir.join(format!("violation-{index}.gr"));
        let comments = [format!(
            "{} heuristic={} exact={}",
            row.source, row.heuristic, row.exact
        )];
        fs::write(&path, write_instance_with_comments(&row.network, &comments))
            .map_err(|err| CliError::io(&path, err))?;
        dumped.push(path.display().to_string());
    }
    Err(CliError::Verification(format!(
        "heuristic exceeds 3 x optimum on {} instance(s); written to {}",
        violations.len(),
        dumped.join(", ")
    )))
}

fn render(args: RenderArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let network = load_instance(&args.instance)?;
    let order = match load_order(&args.order, &network)? {
        Some(order) => order,
        None => heuristic_order(
            &network,
            args.heuristic.rule.to_core(),
            args.heuristic.tie_break.to_core(),
        ),
    };
    let profile = recount(&network, &order)?;
    write_target(
        args.output.as_deref(),
        &render_svg(&network, &order, &profile),
        out,
    )?;
    Ok(0)
}

fn timed<R>(
    repeat: u32,
    mut f: impl FnMut() -> Result<R, CliError>,
) -> Result<(f64, f64, R), CliError> {
    let mut best = f64::INFINITY;
    let mut total = 0.0;
    let mut last = None;
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        let result = f()?;
        let ms = elapsed_ms(start);
        best = best.min(ms);
        total += ms;
        last = Some(result);
    }
    Ok((
        best,
        total / repeat.max(1) as f64,
        last.expect("at least one run"),
    ))
}

fn bench(args: BenchArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let network = match &args.instance {
        Some(path) => load_instance(path)?,
        None => random_instance(
            args.x_count,
            args.y_count,
            DegreeSampler::Uniform {
                min: args.min_degree,
                max: args.max_degree,
            },
            args.seed,
        )?,
    };
    let budget = args.budget.budget()?;
    let edges = network.edge_count();
    let runs = args.repeat.max(1);
    let mut rows = Vec::new();

    let (rule, tie_break) = (
        args.heuristic.rule.to_core(),
        args.heuristic.tie_break.to_core(),
    );
    let (best, mean, order) = timed(runs, || Ok(heuristic_order(&network, rule, tie_break)))?;
    let (h_best, h_mean) = (best, mean);

    let (best, mean, fast) = timed(runs, || {
        Ok(crossing_profile(&network, &order, CountMode::Fast)?)
    })?;
    let value = fast.local_crossing_number();
    rows.push(BenchRow {
        task: "heuristic",
        edges,
        best_ms: h_best,
        mean_ms: h_mean,
        runs,
        value: Some(value),
    });
    rows.push(BenchRow {
        task: "sweep-count",
        edges,
        best_ms: best,
        mean_ms: mean,
        runs,
        value: Some(value),
    });

    if edges <= args.oracle_limit {
        let (best, mean, oracle) = timed(1, || {
            Ok(crossing_profile(&network, &order, CountMode::Oracle)?)
        })?;
        if oracle.per_edge() != fast.per_edge() {
            return Err(CliError::Verification(
                "sweep and quadratic counts differ".into(),
            ));
        }
        rows.push(BenchRow {
            task: "oracle-count",
            edges,
            best_ms: best,
            mean_ms: mean,
            runs: 1,
            value: Some(oracle.local_crossing_number()),
        });
    }

    if network.y_count() <= args.exact_limit {
        let (best, mean, result) = timed(1, || Ok(exact_optimum(&network, budget)?))?;
        verify_value(&network, &result.order, result.value, "exact search")?;
        rows.push(BenchRow {
            task: if result.proven_optimal {
                "exact"
            } else {
                "exact-partial"
            },
            edges,
            best_ms: best,
            mean_ms: mean,
            runs: 1,
            value: Some(result.value),
        });
    }

    out.write_all(render_bench(&rows, args.format).as_bytes())?;
    Ok(0)
}
