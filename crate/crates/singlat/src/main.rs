//! Command-line interface over the lattice-invariant library.
//!
//! Exit codes: `0` success, `1` a theorem-backed consistency check
//! failed, `2` an exact computation exceeded its state budget, `3` bad
//! input (file, flags, or a precondition violation).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num::BigRational;

use singlat::cycle::RationalCycle;
use singlat::elliptic::{classify, verify_sequence_invariants, Classification};
use singlat::error::Error;
use singlat::graph::PlumbingGraph;
use singlat::lattice::Lattice;
use singlat::report::{InvariantReport, ReportOptions};
use singlat::{Result, DEFAULT_MAX_STATES};

#[derive(Parser)]
#[command(
    name = "singlat",
    version,
    about = "Exact lattice invariants of negative-definite plumbing trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph file and confirm it is a negative-definite tree.
    Validate {
        /// Graph file to check.
        file: PathBuf,
    },
    /// Compute the invariant report of a graph.
    Invariants {
        /// Graph file to analyze.
        file: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Also compute the optimal path value.
        #[arg(long)]
        pam: bool,
        /// Also run the surgery recursion.
        #[arg(long)]
        sw: bool,
        /// State budget for the path search (overrides SINGLAT_MAX_STATES).
        #[arg(long)]
        max_states: Option<u64>,
    },
    /// Optimal increasing-path value, to the canonical floor or a target.
    Pam {
        /// Graph file to analyze.
        file: PathBuf,
        /// Target cycle as comma-separated coefficients in id order
        /// (defaults to the floor of the canonical cycle).
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        /// State budget for the search (overrides SINGLAT_MAX_STATES).
        #[arg(long)]
        max_states: Option<u64>,
    },
    /// Surgery recursion for the normalized Seiberg-Witten invariant.
    Sw {
        /// Graph file to analyze.
        file: PathBuf,
        /// Print each recursion step.
        #[arg(long)]
        trace: bool,
    },
    /// Series coefficients and subset-restricted sums.
    Zeta {
        /// Graph file to analyze.
        file: PathBuf,
        /// Dual-lattice element as comma-separated rational coefficients
        /// in id order; prints its series coefficient.
        #[arg(long, conflicts_with = "pc_dual", allow_hyphen_values = true)]
        coeff: Option<String>,
        /// Comma-separated vertex ids; prints the canonical-class sum
        /// with domination restricted to those vertices.
        #[arg(long, allow_hyphen_values = true)]
        pc_dual: Option<String>,
    },
    /// Run the Laufer algorithm from a dual-lattice element.
    Laufer {
        /// Graph file to analyze.
        file: PathBuf,
        /// Starting cycle as comma-separated rational coefficients in id
        /// order.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
    },
    /// Generate a reproducible corpus of negative-definite trees.
    Gen {
        /// Generator seed.
        #[arg(long)]
        seed: u64,
        /// Number of graphs to produce.
        #[arg(long)]
        count: usize,
        /// Largest vertex count.
        #[arg(long)]
        max_vertices: usize,
        /// Euler-number range as LO:HI (inclusive, within -20..-2).
        #[arg(long, allow_hyphen_values = true)]
        euler: String,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the theorem-backed invariants of one file or a directory.
    Verify {
        /// Graph file, or a directory of `.graph` files.
        path: PathBuf,
        /// State budget for path searches (overrides SINGLAT_MAX_STATES).
        #[arg(long)]
        max_states: Option<u64>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is
            // an input problem and must exit 3, not clap's default 2.
            let usage_error = err.use_stderr();
            let _ = err.print();
            std::process::exit(if usage_error { 3 } else { 0 });
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(match err {
            Error::Budget { .. } => 2,
            Error::Internal(_) => 1,
            Error::Parse { .. } | Error::Input(_) => 3,
        });
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Invariants { file, json, pam, sw, max_states } => {
            cmd_invariants(&file, json, pam, sw, resolve_max_states(max_states)?)
        }
        Command::Pam { file, target, max_states } => {
            cmd_pam(&file, target.as_deref(), resolve_max_states(max_states)?)
        }
        Command::Sw { file, trace } => cmd_sw(&file, trace),
        Command::Zeta { file, coeff, pc_dual } => {
            cmd_zeta(&file, coeff.as_deref(), pc_dual.as_deref())
        }
        Command::Laufer { file, from } => cmd_laufer(&file, &from),
        Command::Gen { seed, count, max_vertices, euler, out } => {
            cmd_gen(seed, count, max_vertices, &euler, &out)
        }
        Command::Verify { path, max_states } => {
            cmd_verify(&path, resolve_max_states(max_states)?)
        }
    }
}

/// Budget resolution: explicit flag, then the SINGLAT_MAX_STATES
/// environment variable, then the library default.
fn resolve_max_states(flag: Option<u64>) -> Result<u64> {
    if let Some(value) = flag {
        return Ok(value);
    }
    match std::env::var("SINGLAT_MAX_STATES") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| Error::input(format!("SINGLAT_MAX_STATES is not a u64: `{text}`"))),
        Err(_) => Ok(DEFAULT_MAX_STATES),
    }
}

fn load(file: &Path) -> Result<Lattice> {
    Lattice::new(singlat::io::parse_file(file)?)
}

/// Comma-separated rationals in id order, e.g. `14/3,28/3,14`.
fn parse_cycle(text: &str, n: usize) -> Result<RationalCycle> {
    let coeffs: Vec<BigRational> = text
        .split(',')
        .map(|tok| {
            BigRational::from_str(tok.trim())
                .map_err(|_| Error::input(format!("not a rational number: `{tok}`")))
        })
        .collect::<Result<_>>()?;
    if coeffs.len() != n {
        return Err(Error::input(format!(
            "expected {n} coefficients, got {}",
            coeffs.len()
        )));
    }
    Ok(RationalCycle::from_rationals(coeffs))
}

/// Comma-separated vertex ids mapped to internal indices.
fn parse_id_set(text: &str, g: &PlumbingGraph) -> Result<Vec<usize>> {
    text.split(',')
        .map(|tok| {
            let id: i64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("not a vertex id: `{tok}`")))?;
            g.index_of(id)
                .ok_or_else(|| Error::input(format!("no vertex with id {id}")))
        })
        .collect()
}

fn fmt_cycle(g: &PlumbingGraph, l: &RationalCycle) -> String {
    let parts: Vec<String> =
        (0..g.len()).map(|v| format!("{}:{}", g.id(v), l.coeff(v))).collect();
    format!("({})", parts.join(", "))
}

fn cmd_validate(file: &Path) -> Result<()> {
    let lat = load(file)?;
    let g = lat.graph();
    println!(
        "ok: {} vertices, {} edges, determinant {}",
        g.len(),
        g.edges().len(),
        lat.discriminant_group_order()
    );
    Ok(())
}

fn cmd_invariants(
    file: &Path,
    json: bool,
    with_pam: bool,
    with_sw: bool,
    max_states: u64,
) -> Result<()> {
    let lat = load(file)?;
    let report = InvariantReport::collect(
        &lat,
        ReportOptions { with_pam, with_sw, max_states },
    )?;
    if json {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|err| Error::internal(format!("serialization failed: {err}")))?;
        println!("{text}");
    } else {
        print!("{}", report.render_text());
    }
    Ok(())
}

fn cmd_pam(file: &Path, target: Option<&str>, max_states: u64) -> Result<()> {
    let lat = load(file)?;
    let g = lat.graph();
    let result = match target {
        Some(text) => {
            let cycle = parse_cycle(text, g.len())?;
            singlat::path::pam_to(&lat, &cycle, max_states)?
        }
        None => singlat::path::pam(&lat, max_states)?,
    };
    println!("pam = {}", result.value);
    println!("states visited: {}", result.states_visited);
    let ids: Vec<String> = result
        .witness
        .vertices()
        .iter()
        .map(|&v| g.id(v).to_string())
        .collect();
    println!("witness additions: [{}]", ids.join(", "));
    println!("endpoint: {}", fmt_cycle(g, result.witness.endpoint()));
    Ok(())
}

fn cmd_sw(file: &Path, trace: bool) -> Result<()> {
    let lat = load(file)?;
    let result = singlat::zeta::sw_bar(&lat)?;
    println!("sw_bar = {}", result.total());
    if trace {
        for (i, step) in result.steps().iter().enumerate() {
            let vs: Vec<String> = step.vertex_ids.iter().map(|v| v.to_string()).collect();
            let rs: Vec<String> = step.removed_ids.iter().map(|v| v.to_string()).collect();
            println!(
                "step {}: subgraph {{{}}}, removed {{{}}}, contribution {}",
                i + 1,
                vs.join(", "),
                rs.join(", "),
                step.contribution
            );
        }
    }
    Ok(())
}

fn cmd_zeta(file: &Path, coeff: Option<&str>, pc_dual: Option<&str>) -> Result<()> {
    let lat = load(file)?;
    let g = lat.graph();
    match (coeff, pc_dual) {
        (Some(text), None) => {
            let lprime = parse_cycle(text, g.len())?;
            println!("z = {}", singlat::zeta::coefficient(&lat, &lprime)?);
            Ok(())
        }
        (None, Some(text)) => {
            let subset = parse_id_set(text, g)?;
            let q = singlat::zeta::dual_pc(&lat, &subset)?;
            let ids: Vec<String> =
                subset.iter().map(|&v| g.id(v).to_string()).collect();
            println!("Q = {} over subset {{{}}}", q, ids.join(", "));
            Ok(())
        }
        _ => Err(Error::input("pass exactly one of --coeff or --pc-dual")),
    }
}

fn cmd_laufer(file: &Path, from: &str) -> Result<()> {
    let lat = load(file)?;
    let g = lat.graph();
    let start = parse_cycle(from, g.len())?;
    let seq = singlat::laufer::generalized_laufer(g, &start)?;
    for step in seq.steps() {
        match step.added_vertex {
            Some(v) => println!("{}  + E_{}", fmt_cycle(g, &step.cycle), g.id(v)),
            None => println!("{}  (terminal)", fmt_cycle(g, &step.cycle)),
        }
    }
    println!("steps: {}", seq.len());
    Ok(())
}

fn cmd_gen(
    seed: u64,
    count: usize,
    max_vertices: usize,
    euler: &str,
    out: &Path,
) -> Result<()> {
    let (lo, hi) = euler
        .split_once(':')
        .and_then(|(a, b)| Some((a.parse::<i64>().ok()?, b.parse::<i64>().ok()?)))
        .ok_or_else(|| Error::input(format!("expected LO:HI for --euler, got `{euler}`")))?;
    let spec = singlat::corpus::CorpusSpec {
        seed,
        count,
        max_vertices,
        euler_range: (lo, hi),
    };
    let corpus = singlat::corpus::generate_corpus(&spec)?;
    std::fs::create_dir_all(out)
        .map_err(|err| Error::input(format!("cannot create {}: {err}", out.display())))?;
    for (i, g) in corpus.iter().enumerate() {
        let path = out.join(format!("tree_{i:04}.graph"));
        singlat::io::write_file(&path, g)?;
    }
    println!("wrote {} graphs to {}", corpus.len(), out.display());
    Ok(())
}

/// The verification driver: every theorem-backed check the library
/// exposes, over one file or a directory of them. Any failed check turns
/// into exit code 1.
fn cmd_verify(path: &Path, max_states: u64) -> Result<()> {
    let files = collect_graph_files(path)?;
    if files.is_empty() {
        return Err(Error::input(format!(
            "no .graph files found under {}",
            path.display()
        )));
    }
    let mut failures = 0usize;
    for file in &files {
        failures += verify_one(file, max_states)?;
    }
    println!("summary: {} file(s), {} failed check(s)", files.len(), failures);
    if failures > 0 {
        return Err(Error::internal(format!(
            "{failures} theorem-backed check(s) failed"
        )));
    }
    Ok(())
}

fn collect_graph_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|err| Error::input(format!("cannot read {}: {err}", path.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "graph"))
            .collect();
        files.sort();
        Ok(files)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

/// Verifies one graph; returns the number of failed checks.
fn verify_one(file: &Path, max_states: u64) -> Result<usize> {
    let lat = load(file)?;
    let g = lat.graph();
    let class = classify(&lat)?;
    println!("{}: {}", file.display(), class);
    if class != Classification::Elliptic {
        let z_min = singlat::laufer::minimal_cycle(g)?;
        println!("  elliptic checks skipped; chi(Z_min) = {}", lat.chi(&z_min));
        return Ok(0);
    }
    if !g.is_minimal() {
        println!("  [skip] sequence checks need all Euler numbers <= -2");
        return Ok(0);
    }

    let mut failures = 0usize;
    let report = verify_sequence_invariants(&lat)?;
    for check in &report.checks {
        let tag = if check.passed { "pass" } else { "FAIL" };
        println!("  [{tag}] {}: {}", check.name, check.detail);
        if !check.passed {
            failures += 1;
        }
    }

    // The flagship identity: both sequence lengths, the optimal path
    // value, and the surgery total all agree.
    let expected = (report.ell + 1) as u64;
    let pam = singlat::path::pam(&lat, max_states)?;
    let sw = singlat::zeta::sw_bar(&lat)?;
    let sw_matches = sw.total() == &num::BigInt::from(expected);
    let identity =
        report.m == report.ell && pam.value == expected && sw_matches;
    let tag = if identity { "pass" } else { "FAIL" };
    println!(
        "  [{tag}] flagship_identity: m+1 = {}, ell+1 = {}, pam = {}, sw_bar = {}",
        report.m + 1,
        report.ell + 1,
        pam.value,
        sw.total()
    );
    if !identity {
        failures += 1;
    }
    Ok(failures)
}
