mod args;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use sha2::{Digest, Sha256};
use spectral_paths::bench::{
    compare_kinds, format_table, run_family_sweep, run_pairs, BenchOptions, BenchmarkReport,
    Family, GraphDescriptor, PairSelection, SweepSpec,
};
use spectral_paths::graph::{
    erdos_renyi, parse_labeled_edge_list, random_geometric, random_tree, write_coordinates_csv,
    write_edge_list, LabeledGraph,
};
use spectral_paths::{
    bfs_distances, compute_landscape, spectral_path, Error, ErrorCategory, Graph, Result,
    SolverConfig,
};

use args::{BenchArgs, BenchFamily, Cli, Command, GenFamily, GlobalArgs, GraphSource, Pairs};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // Clap spreads some messages over several lines; keep the part
            // before the usage hint on one line.
            let text = e.to_string();
            let message: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!(
                "error[usage]: {}",
                message.join(" ").trim_start_matches("error: ")
            );
            return ExitCode::from(1);
        }
    };

    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.tag(), e.to_string().replace('\n', " "));
            ExitCode::from(match e.category() {
                ErrorCategory::Usage => 1,
                ErrorCategory::Input => 2,
                ErrorCategory::Solver => 3,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = solver_config(&cli.global)?;
    match cli.global.threads {
        Some(0) => Err(Error::InvalidParameter(
            "--threads must be at least 1".into(),
        )),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(|| dispatch(cli, &cfg)),
        None => dispatch(cli, &cfg),
    }
}

fn solver_config(g: &GlobalArgs) -> Result<SolverConfig> {
    let mut cfg = SolverConfig::default();
    if let Some(t) = g.tol_residual {
        cfg.residual_tol = t;
    }
    if let Some(t) = g.tol_eig {
        cfg.eig_tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(cli: &Cli, cfg: &SolverConfig) -> Result<()> {
    let global = &cli.global;
    match &cli.command {
        Command::Solve {
            source,
            from,
            to,
            verify,
        } => {
            let (lg, _) = load(source)?;
            let s = lg.vertex_for_label(*from)?;
            let t = lg.vertex_for_label(*to)?;
            let path = spectral_path(&lg.graph, s, t, global.laplacian, cfg, global.symmetrize())?;
            let labels: Vec<String> = path
                .vertices
                .iter()
                .map(|&v| lg.label(v).to_string())
                .collect();
            let mut out = format!("{}\nlength {}\n", labels.join(" "), path.length());
            if *verify {
                let exact =
                    bfs_distances(&lg.graph, s)[t.index()].expect("graph is connected") as usize;
                out += &format!("bfs {exact}\nexcess {}\n", path.length() - exact);
            }
            emit(global, &out)
        }
        Command::Landscape { source, pin } => {
            let (lg, _) = load(source)?;
            lg.graph.require_connected()?;
            let pin = lg.vertex_for_label(*pin)?;
            let l = compute_landscape(&lg.graph, pin, global.laplacian, cfg)?;
            emit(global, &l.to_csv(Some(&lg.labels)))
        }
        Command::Gen { family } => generate(global, family),
        Command::Bench(args) => bench(global, cfg, args),
        Command::Compare {
            source,
            pairs,
            pair_seed,
            record_pairs,
        } => {
            let (lg, descriptor) = load(source)?;
            let opts = BenchOptions {
                record_pairs: *record_pairs,
                record_timings: false,
            };
            let selection = selection(*pairs, pair_seed.unwrap_or(global.seed));
            let mut cmp = compare_kinds(&lg.graph, cfg, global.symmetrize(), selection, &opts)?;
            cmp.reports = cmp
                .reports
                .into_iter()
                .map(|r| relabel(r.with_descriptor(descriptor.clone()), &lg))
                .collect();
            emit_report(global, &cmp.to_json(), &cmp.reports)
        }
    }
}

fn selection(pairs: Pairs, seed: u64) -> PairSelection {
    match pairs {
        Pairs::All => PairSelection::All,
        Pairs::Random(k) => PairSelection::Random { k, seed },
    }
}

fn generate(global: &GlobalArgs, family: &GenFamily) -> Result<()> {
    let seed = global.seed;
    match family {
        GenFamily::Er { n, p } => emit(global, &write_edge_list(&erdos_renyi(*n, *p, seed)?)),
        GenFamily::Geometric {
            n,
            width,
            height,
            radius,
            coords,
        } => {
            let (g, points) = random_geometric(*n, *width, *height, *radius, seed)?;
            if let Some(path) = coords {
                write_file(path, &write_coordinates_csv(&points))?;
            }
            emit(global, &write_edge_list(&g))
        }
        GenFamily::Tree { n } => emit(global, &write_edge_list(&random_tree(*n, seed)?)),
    }
}

fn bench(global: &GlobalArgs, cfg: &SolverConfig, args: &BenchArgs) -> Result<()> {
    let opts = BenchOptions {
        record_pairs: args.record_pairs,
        record_timings: args.timings,
    };
    let pair_seed = args.pair_seed.unwrap_or(global.seed);
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| Error::InvalidParameter(format!("this family needs --{flag}")))
    };
    let n = || {
        args.n
            .ok_or_else(|| Error::InvalidParameter("random families need --n".into()))
    };
    let family = match args.family {
        BenchFamily::Er => Family::ErdosRenyi {
            n: n()?,
            p: need(args.p, "p")?,
        },
        BenchFamily::Geometric => Family::Geometric {
            n: n()?,
            width: args.width,
            height: args.height,
            radius: need(args.radius, "radius")?,
        },
        BenchFamily::Tree => Family::Tree { n: n()? },
        BenchFamily::File | BenchFamily::Builtin => {
            let source = GraphSource {
                file: args
                    .file
                    .clone()
                    .filter(|_| args.family == BenchFamily::File),
                builtin: args
                    .builtin
                    .clone()
                    .filter(|_| args.family == BenchFamily::Builtin),
            };
            let (lg, descriptor) = load(&source)?;
            let report = run_pairs(
                &lg.graph,
                selection(args.pairs, pair_seed),
                global.laplacian,
                cfg,
                global.symmetrize(),
                &opts,
            )?;
            let report = relabel(report.with_descriptor(descriptor), &lg);
            return emit_report(global, &report.to_json(), std::slice::from_ref(&report));
        }
    };
    let spec = SweepSpec {
        points: vec![family],
        repetitions: args.reps,
        seed: global.seed,
        pairs: selection(args.pairs, pair_seed),
        max_attempts: args.max_attempts,
    };
    let sweep = run_family_sweep(&spec, global.laplacian, cfg, global.symmetrize(), &opts)?;
    emit_report(global, &sweep.to_json(), &sweep.reports)
}

/// Loads the graph named by `--file` or `--builtin` and describes it.
fn load(source: &GraphSource) -> Result<(LabeledGraph, GraphDescriptor)> {
    if let Some(path) = &source.file {
        let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Error::Io(format!("{}: not valid UTF-8", path.display())))?;
        let lg = parse_labeled_edge_list(&text)?;
        let descriptor = GraphDescriptor::new("file", &lg.graph)
            .with_file_hash(hex::encode(Sha256::digest(&bytes)));
        return Ok((lg, descriptor));
    }
    let spec = source
        .builtin
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("give --file or --builtin".into()))?;
    let g = builtin(spec)?;
    let descriptor = GraphDescriptor::new("builtin", &g).with_param("name", spec);
    Ok((LabeledGraph::unlabeled(g), descriptor))
}

fn builtin(spec: &str) -> Result<Graph> {
    if spec == "petersen" {
        return Ok(Graph::petersen());
    }
    let bad = || Error::InvalidParameter(format!("unknown builtin graph `{spec}`"));
    let (name, size) = spec.split_once(':').ok_or_else(bad)?;
    let n: usize = size.parse().map_err(|_| bad())?;
    match name {
        "path" => Ok(Graph::path(n)),
        "cycle" => Graph::cycle(n),
        "complete" => Ok(Graph::complete(n)),
        "star" => Ok(Graph::star(n)),
        _ => Err(bad()),
    }
}

/// Rewrites vertex indices in a report to the input's labels.
fn relabel(mut report: BenchmarkReport, lg: &LabeledGraph) -> BenchmarkReport {
    let label = |v: usize| lg.labels[v] as usize;
    for p in report
        .suboptimal_pairs
        .iter_mut()
        .chain(report.pairs.iter_mut().flatten())
    {
        p.source = label(p.source);
        p.target = label(p.target);
    }
    if let Some(w) = report.max_excess_witness.as_mut() {
        *w = [label(w[0]), label(w[1])];
    }
    report
}

fn emit_report(global: &GlobalArgs, json: &str, reports: &[BenchmarkReport]) -> Result<()> {
    emit(global, json)?;
    if global.output.is_some() {
        print!("{}", format_table(reports));
    }
    Ok(())
}

fn emit(global: &GlobalArgs, text: &str) -> Result<()> {
    match &global.output {
        Some(path) => write_file(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| Error::Io(format!("stdout: {e}")))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
