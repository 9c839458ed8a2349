//! Command-line driver: graph generation, statistics, sparsification under a
//! runtime-selected algorithm, partitioning, exact decomposition at tiny
//! scale, and approximation-quality verification.

mod report;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use report::RunReport;
use sparsifier_core::cuts::{ideal_decomp, Ratio};
use sparsifier_core::generate::{self, GenParams};
use sparsifier_core::graph::LoopedSubgraph;
use sparsifier_core::io::{read_graph, write_graph};
use sparsifier_core::partition::{approx_cut, partition};
use sparsifier_core::sparsify::{algorithm, algorithms, auto_select, SparsifyConfig, SparsifyMode};
use sparsifier_core::spectral::{relative_norm_estimate, sigma_approximation, DENSE_THRESHOLD};

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<sparsifier_core::Error> for CliError {
    fn from(e: sparsifier_core::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<sparsifier_core::io::IoError> for CliError {
    fn from(e: sparsifier_core::io::IoError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage() -> String {
    let mut s = String::from(
        "usage: sparsifier <command> [flags]\n\
         \n\
         commands:\n\
         \x20 gen        --family <name> --n <n> [--k K] [--p P] [--d D] [--seed S] -o <file>\n\
         \x20 stats      -i <file> [--report <json>]\n\
         \x20 sparsify   -i <in> -o <out> --eps E [--fail-prob P] [--seed S]\n\
         \x20            [--mode paper|practical] [--target-edges T] [--algorithm <name>] [--report <json>]\n\
         \x20 partition  -i <in> --tau T [--fail-prob P] [--seed S] [-o <cutfile>] [--report <json>]\n\
         \x20 approx-cut -i <in> --phi F [--fail-prob P] [--seed S] [-o <cutfile>] [--report <json>]\n\
         \x20 decompose  -i <in> [--phi F] [-o <file>] [--report <json>]   (exact, n <= 20)\n\
         \x20 verify     -i <a> -j <b> [--report <json>]\n\
         \n\
         graph families: ",
    );
    let names: Vec<&str> = generate::families().iter().map(|f| f.name()).collect();
    s.push_str(&names.join(", "));
    s.push_str("\nsparsify algorithms: auto, ");
    let algs: Vec<&str> = algorithms().iter().map(|a| a.name()).collect();
    s.push_str(&algs.join(", "));
    s
}

struct Flags {
    values: HashMap<String, String>,
}

impl Flags {
    fn parse(args: &[String]) -> CliResult<Flags> {
        let mut values = HashMap::new();
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            if !arg.starts_with('-') {
                return Err(CliError::Usage(format!("unexpected argument '{arg}'")));
            }
            let key = arg.trim_start_matches('-').to_string();
            let value = it
                .next()
                .ok_or_else(|| CliError::Usage(format!("flag '{arg}' needs a value")))?;
            values.insert(key, value.clone());
        }
        Ok(Flags { values })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    fn require(&self, key: &str) -> CliResult<&str> {
        self.get(key)
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{key}")))
    }

    fn path(&self, key: &str) -> CliResult<PathBuf> {
        Ok(PathBuf::from(self.require(key)?))
    }

    fn parse_num<T: std::str::FromStr>(&self, key: &str, default: Option<T>) -> CliResult<T> {
        match self.get(key) {
            None => default.ok_or_else(|| CliError::Usage(format!("missing --{key}"))),
            Some(raw) => raw
                .parse::<T>()
                .map_err(|_| CliError::Usage(format!("bad value for --{key}: '{raw}'"))),
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{}", usage());
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(args: &[String]) -> CliResult<()> {
    let command = args
        .first()
        .ok_or_else(|| CliError::Usage("no command given".into()))?;
    let flags = Flags::parse(&args[1..])?;
    match command.as_str() {
        "gen" => cmd_gen(&flags),
        "stats" => cmd_stats(&flags),
        "sparsify" => cmd_sparsify(&flags),
        "partition" => cmd_partition(&flags),
        "approx-cut" => cmd_approx_cut(&flags),
        "decompose" => cmd_decompose(&flags),
        "verify" => cmd_verify(&flags),
        other => Err(CliError::Usage(format!("unknown command '{other}'"))),
    }
}

fn cmd_gen(flags: &Flags) -> CliResult<()> {
    let family_name = flags.require("family")?;
    let family = generate::family(family_name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown family '{family_name}'; known: {}",
            generate::families()
                .iter()
                .map(|f| f.name())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })?;
    let params = GenParams {
        n: flags.parse_num("n", Some(0usize))?,
        k: flags.parse_num("k", Some(0usize))?,
        p: flags.parse_num("p", Some(0.0f64))?,
        d: flags.parse_num("d", Some(0usize))?,
    };
    let seed: u64 = flags.parse_num("seed", Some(0u64))?;
    let out = flags.path("o")?;
    let g = family
        .generate(&params, seed)
        .map_err(|e| CliError::Usage(format!("{e}; family usage: {}", family.usage())))?;
    write_graph(&out, &g)?;
    println!(
        "wrote {} vertices, {} edges to {}",
        g.n(),
        g.edge_count(),
        out.display()
    );
    Ok(())
}

fn cmd_stats(flags: &Flags) -> CliResult<()> {
    let start = Instant::now();
    let input = flags.path("i")?;
    let g = read_graph(&input)?;
    let (mut dmin, mut dmax) = (usize::MAX, 0usize);
    for v in 0..g.n() {
        dmin = dmin.min(g.unweighted_degree(v));
        dmax = dmax.max(g.unweighted_degree(v));
    }
    if g.n() == 0 {
        dmin = 0;
    }
    println!(
        "n={} m={} total_weight={} min_degree={dmin} max_degree={dmax}",
        g.n(),
        g.edge_count(),
        g.total_weight(),
    );
    if let Some(path) = flags.get("report") {
        let mut rep = RunReport::new("stats");
        rep.input_edges = g.edge_count();
        rep.output_edges = g.edge_count();
        rep.counters.insert("n".into(), g.n() as u64);
        rep.counters.insert("min_degree".into(), dmin as u64);
        rep.counters.insert("max_degree".into(), dmax as u64);
        rep.runtime_ms = start.elapsed().as_millis() as u64;
        rep.write(Path::new(path))?;
    }
    Ok(())
}

fn cmd_sparsify(flags: &Flags) -> CliResult<()> {
    let start = Instant::now();
    let input = flags.path("i")?;
    let output = flags.path("o")?;
    let epsilon: f64 = flags.parse_num("eps", None)?;
    let fail_prob: f64 = flags.parse_num("fail-prob", Some(0.1f64))?;
    let seed: u64 = flags.parse_num("seed", Some(0u64))?;
    let mode = match flags.get("mode").unwrap_or("paper") {
        "paper" => SparsifyMode::Paper,
        "practical" => SparsifyMode::Practical,
        other => {
            return Err(CliError::Usage(format!(
                "bad --mode '{other}' (paper or practical)"
            )))
        }
    };
    let target_edges: Option<usize> = match flags.get("target-edges") {
        Some(raw) => Some(
            raw.parse()
                .map_err(|_| CliError::Usage(format!("bad --target-edges '{raw}'")))?,
        ),
        None => None,
    };
    if mode == SparsifyMode::Practical && target_edges.is_none() {
        return Err(CliError::Usage(
            "practical mode requires --target-edges".into(),
        ));
    }

    let g = read_graph(&input)?;
    let algo_name = flags.get("algorithm").unwrap_or("auto");
    let algo = match algo_name {
        "auto" => auto_select(&g),
        name => {
            algorithm(name).ok_or_else(|| CliError::Usage(format!("unknown algorithm '{name}'")))?
        }
    };

    // The weighted strategies need weights in (0, 1]: scale by the maximum
    // weight on the way in, undo it on the way out.
    let needs_scaling = matches!(algo.name(), "weighted" | "blowup-bounded");
    let max_w = g.max_weight();
    let (work_graph, scale_factor) = if needs_scaling && max_w > 0.0 && max_w != 1.0 {
        (g.scaled(1.0 / max_w), 1.0 / max_w)
    } else {
        (g.clone(), 1.0)
    };
    if !algo.accepts(&work_graph) {
        return Err(CliError::Runtime(format!(
            "algorithm '{}' does not accept this graph's weights",
            algo.name()
        )));
    }

    let mut cfg = SparsifyConfig {
        epsilon,
        fail_prob,
        mode,
        target_edges,
        seed,
        c3: 1.0,
        c8: 1.0,
    };
    cfg.seed = seed;
    let outcome = algo.run(&work_graph, &cfg)?;
    let result = if scale_factor != 1.0 {
        outcome.graph.scaled(1.0 / scale_factor)
    } else {
        outcome.graph
    };
    write_graph(&output, &result)?;

    let sigma = if g.n() <= DENSE_THRESHOLD && result.edge_count() > 0 {
        Some(sigma_approximation(&g, &result)?.sigma)
    } else {
        None
    };
    println!(
        "sparsified {} -> {} edges with '{}'{}",
        g.edge_count(),
        result.edge_count(),
        algo.name(),
        match sigma {
            Some(s) => format!(", sigma = {s:.6}"),
            None => String::new(),
        }
    );

    if let Some(path) = flags.get("report") {
        let mut rep = RunReport::new("sparsify");
        rep.input_edges = g.edge_count();
        rep.output_edges = result.edge_count();
        rep.sigma = sigma;
        rep.epsilon = epsilon;
        rep.fail_prob = fail_prob;
        rep.seed = seed;
        rep.mode = mode.as_str().to_string();
        rep.scale_factor = scale_factor;
        rep.counters = outcome.counters;
        if let Some(b) = &outcome.blow_up {
            rep.counters.insert(
                "max_vertex_blowup_milli".into(),
                (b.max_vertex() * 1000.0) as u64,
            );
        }
        rep.runtime_ms = start.elapsed().as_millis() as u64;
        rep.write(Path::new(path))?;
    }
    Ok(())
}

fn write_vertex_set(path: &Path, ids: &[usize]) -> CliResult<()> {
    let mut body = String::new();
    for v in ids {
        body.push_str(&v.to_string());
        body.push('\n');
    }
    sparsifier_core::io::atomic_write(path, body.as_bytes())?;
    Ok(())
}

fn cmd_partition(flags: &Flags) -> CliResult<()> {
    let start = Instant::now();
    let g = read_graph(&flags.path("i")?)?;
    let tau: f64 = flags.parse_num("tau", None)?;
    let fail_prob: f64 = flags.parse_num("fail-prob", Some(0.1f64))?;
    let seed: u64 = flags.parse_num("seed", Some(0u64))?;
    let out = partition(&LoopedSubgraph::whole(&g), tau, fail_prob, seed)?;
    println!(
        "partition: |D| = {}, conductance = {:.6}, volume fraction = {:.4}",
        out.d.len(),
        out.conductance,
        out.vol_fraction
    );
    if let Some(path) = flags.get("o") {
        write_vertex_set(Path::new(path), out.d.ids())?;
    }
    if let Some(path) = flags.get("report") {
        let mut rep = RunReport::new("partition");
        rep.input_edges = g.edge_count();
        rep.output_edges = g.edge_count();
        rep.fail_prob = fail_prob;
        rep.seed = seed;
        rep.counters.insert("cut_size".into(), out.d.len() as u64);
        rep.counters.insert("rounds".into(), out.rounds_used as u64);
        rep.counters
            .insert("conductance_micro".into(), (out.conductance * 1e6) as u64);
        rep.runtime_ms = start.elapsed().as_millis() as u64;
        rep.write(Path::new(path))?;
    }
    Ok(())
}

fn cmd_approx_cut(flags: &Flags) -> CliResult<()> {
    let start = Instant::now();
    let g = read_graph(&flags.path("i")?)?;
    let phi: f64 = flags.parse_num("phi", None)?;
    let fail_prob: f64 = flags.parse_num("fail-prob", Some(0.1f64))?;
    let seed: u64 = flags.parse_num("seed", Some(0u64))?;
    let out = approx_cut(&g, phi, fail_prob, seed)?;
    println!(
        "approx-cut: |D| = {}, conductance = {:.6}, volume fraction = {:.4}, rounds = {}",
        out.d.len(),
        out.conductance,
        out.vol_fraction,
        out.rounds_used
    );
    if let Some(path) = flags.get("o") {
        write_vertex_set(Path::new(path), out.d.ids())?;
    }
    if let Some(path) = flags.get("report") {
        let mut rep = RunReport::new("approx-cut");
        rep.input_edges = g.edge_count();
        rep.output_edges = g.edge_count();
        rep.fail_prob = fail_prob;
        rep.seed = seed;
        rep.counters.insert("cut_size".into(), out.d.len() as u64);
        rep.counters.insert("rounds".into(), out.rounds_used as u64);
        rep.runtime_ms = start.elapsed().as_millis() as u64;
        rep.write(Path::new(path))?;
    }
    Ok(())
}

fn cmd_decompose(flags: &Flags) -> CliResult<()> {
    let start = Instant::now();
    let g = read_graph(&flags.path("i")?)?;
    let ctx = g.degrees();
    let phi = match flags.get("phi") {
        Some(raw) => raw
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("bad --phi '{raw}'")))?,
        None => {
            let vol = ctx.total_volume() as f64;
            if vol <= 2.0 {
                1.0
            } else {
                1.0 / (2.0 * (vol.ln() / (4f64 / 3.0).ln()))
            }
        }
    };
    let dec = ideal_decomp(&g, &ctx, Ratio::from_f64(phi, 1_000_000_000))?;
    println!(
        "decomposition: {} parts, {} boundary edges (phi = {phi:.6})",
        dec.parts.len(),
        dec.boundary.len()
    );
    let mut body = String::new();
    for part in &dec.parts {
        let ids: Vec<String> = part.iter().map(|v| v.to_string()).collect();
        body.push_str(&ids.join(" "));
        body.push('\n');
    }
    if let Some(path) = flags.get("o") {
        sparsifier_core::io::atomic_write(Path::new(path), body.as_bytes())?;
    } else {
        print!("{body}");
    }
    if let Some(path) = flags.get("report") {
        let mut rep = RunReport::new("decompose");
        rep.input_edges = g.edge_count();
        rep.output_edges = dec.boundary.len();
        rep.counters.insert("parts".into(), dec.parts.len() as u64);
        rep.runtime_ms = start.elapsed().as_millis() as u64;
        rep.write(Path::new(path))?;
    }
    Ok(())
}

fn cmd_verify(flags: &Flags) -> CliResult<()> {
    let start = Instant::now();
    let a = read_graph(&flags.path("i")?)?;
    let b = read_graph(&flags.path("j")?)?;
    let (sigma, rel_norm) = if a.n() <= DENSE_THRESHOLD && b.n() <= DENSE_THRESHOLD {
        let rep = sigma_approximation(&a, &b)?;
        (Some(rep.sigma), rep.rel_norm)
    } else {
        let est = relative_norm_estimate(&a, &b, &a.degrees(), 200, 1)?;
        (None, est)
    };
    match sigma {
        Some(s) => println!("sigma = {s:.9} (rel_norm = {rel_norm:.9})"),
        None => println!("sigma = null (rel_norm estimate = {rel_norm:.9})"),
    }
    if let Some(path) = flags.get("report") {
        let mut rep = RunReport::new("verify");
        rep.input_edges = a.edge_count();
        rep.output_edges = b.edge_count();
        rep.sigma = sigma;
        rep.rel_norm = Some(rel_norm);
        rep.runtime_ms = start.elapsed().as_millis() as u64;
        rep.write(Path::new(path))?;
    }
    Ok(())
}
