//! Command-line front end: load graphs, run constructions and oracles,
//! verify codes, and sweep trade-off curves into CSV/SVG.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 infeasible
//! construction parameters, 3 invalid code, 4 enumeration budget exceeded.

mod svg;

use clap::{Args, Parser, Subcommand};
use lodex::constructions::{self, AISCover, ConstructError, Providers};
use lodex::fmatrix::{FMatrix, FMatrixJson};
use lodex::gfield::Field;
use lodex::indexcode::{validate, validate_cached, CodeError, IndexCode};
use lodex::oracles::{self, OracleError, ReferenceFormula};
use lodex::sigraph::SideInfoGraph;
use lodex::{fmt_rat, parse_rat, rat_int, Rat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lodex",
    version,
    about = "Locally decodable index codes: constructions, validators and brute-force references"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code with a named scheme and emit it as JSON
    Construct(ConstructArgs),
    /// Validate a code file against a graph and report its profile
    Verify(VerifyArgs),
    /// Trace achieved and reference trade-off points over a locality grid
    Sweep(SweepArgs),
    /// Run an exact reference computation
    Oracle(OracleArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// One of: uncoded, frac-coloring, cycle-scalar, cycle-vector,
    /// cycle-M, feasible-localities, minrank-nm1, ais-cover, t-cover,
    /// cyclic-symmetry, covering-sep, partition-cover
    scheme: String,
    /// Side information graph JSON (for schemes on explicit graphs)
    graph: Option<PathBuf>,
    /// Field order (default 2)
    #[arg(long)]
    q: Option<u64>,
    /// Reduction polynomial for GF(2^k) (0 = canonical default)
    #[arg(long)]
    poly: Option<u32>,
    /// Number of receivers (cycle schemes)
    #[arg(long)]
    n: Option<usize>,
    /// Message length
    #[arg(long = "M", alias = "m")]
    msg_len: Option<usize>,
    /// Pivot receiver of the scalar cycle code
    #[arg(long)]
    pivot: Option<usize>,
    /// Side-information permutation, e.g. 3,1,5,2,4
    #[arg(long)]
    pi: Option<String>,
    /// Locality budget: a list 1,1,1,2,3 for feasible-localities, a single
    /// integer for covering-sep and partition-cover
    #[arg(long)]
    r: Option<String>,
    /// Subset size for t-cover / ais-cover
    #[arg(long)]
    t: Option<usize>,
    /// Scalar code length (ais-cover, cyclic-symmetry)
    #[arg(long)]
    ell: Option<usize>,
    /// AIS cover JSON file: {"subsets": [[..], ..], "fold": Q}
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Parity-check matrix JSON for covering-sep (defaults to a built-in)
    #[arg(long)]
    parity_check: Option<PathBuf>,
    /// Comma list among partial-clique,cycle,minrank (default: all)
    #[arg(long)]
    providers: Option<String>,
    /// Enumeration budget for embedded brute-force searches
    #[arg(long)]
    budget: Option<u64>,
    /// Write the code JSON here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    code: PathBuf,
    /// Also run the information-theoretic exhaustive oracle
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct SweepArgs {
    graph: PathBuf,
    /// Comma list of schemes to realize (empty = reference only)
    #[arg(long, default_value = "")]
    schemes: String,
    /// Locality grid as comma-separated rationals, e.g. 1,7/6,4/3,2
    #[arg(long)]
    r: String,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    /// Write CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render an SVG plot
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// One of: minrank, chi, chif, ab-coloring, decodable, min-queries,
    /// covering-radius, partition-lp, tradeoff
    which: String,
    /// Input files (graph, and a code for decodable/min-queries)
    files: Vec<PathBuf>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    /// Palette size for ab-coloring
    #[arg(long)]
    a: Option<usize>,
    /// Colors per vertex for ab-coloring
    #[arg(long)]
    b: Option<usize>,
    /// Receiver index for min-queries
    #[arg(long)]
    receiver: Option<usize>,
    /// Formula name for tradeoff: frac-coloring-at-1, n-cycle,
    /// three-cycle, minrank-nm1, min-M-for-cycle-locality
    #[arg(long)]
    formula: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    nc: Option<usize>,
    /// Locality at which to evaluate the formula
    #[arg(long)]
    r: Option<String>,
}

struct AppError {
    code: u8,
    msg: String,
}

type AppResult<T> = Result<T, AppError>;

fn io_error(msg: impl std::fmt::Display) -> AppError {
    AppError {
        code: 1,
        msg: msg.to_string(),
    }
}

fn infeasible(msg: impl std::fmt::Display) -> AppError {
    AppError {
        code: 2,
        msg: msg.to_string(),
    }
}

fn invalid_code(msg: impl std::fmt::Display) -> AppError {
    AppError {
        code: 3,
        msg: msg.to_string(),
    }
}

fn budget_error(msg: impl std::fmt::Display) -> AppError {
    AppError {
        code: 4,
        msg: msg.to_string(),
    }
}

impl From<ConstructError> for AppError {
    fn from(e: ConstructError) -> AppError {
        match e {
            ConstructError::Oracle(o) => o.into(),
            ConstructError::Code(CodeError::Parse(m)) => io_error(m),
            ConstructError::Graph(g) => io_error(g),
            other => infeasible(other),
        }
    }
}

impl From<OracleError> for AppError {
    fn from(e: OracleError) -> AppError {
        match e {
            OracleError::BudgetExceeded { .. } | OracleError::TooLarge(_) => budget_error(e),
            OracleError::Undecodable { .. } => invalid_code(e),
            OracleError::UnknownFormula(_) => infeasible(e),
            OracleError::NoFiniteRadius => infeasible(e),
        }
    }
}

impl From<CodeError> for AppError {
    fn from(e: CodeError) -> AppError {
        match e {
            CodeError::Parse(m) => io_error(m),
            other => invalid_code(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Construct(a) => run_construct(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Sweep(a) => run_sweep(a),
        Cmd::Oracle(a) => run_oracle(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn read_file(path: &Path) -> AppResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| io_error(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> AppResult<SideInfoGraph> {
    SideInfoGraph::parse(&read_file(path)?).map_err(io_error)
}

fn load_code(path: &Path) -> AppResult<IndexCode> {
    IndexCode::parse(&read_file(path)?).map_err(|e| io_error(e.to_string()))
}

fn load_matrix(path: &Path) -> AppResult<FMatrix> {
    let j: FMatrixJson =
        serde_json::from_str(&read_file(path)?).map_err(|e| io_error(e.to_string()))?;
    FMatrix::try_from(&j).map_err(|e| io_error(e.to_string()))
}

fn make_field(q: u64, poly: Option<u32>) -> AppResult<Field> {
    Field::make(q, poly).map_err(infeasible)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> AppResult<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>())
        .collect::<Result<Vec<T>, _>>()
        .map_err(|_| io_error(format!("cannot parse {what} list `{s}`")))
}

fn print_profile(code: &IndexCode) {
    let p = code.locality_profile();
    eprintln!(
        "beta={} r={} r_avg={}",
        fmt_rat(&p.rate),
        fmt_rat(&p.overall),
        fmt_rat(&p.average)
    );
    let per: Vec<String> = p.per_receiver.iter().map(fmt_rat).collect();
    eprintln!("r_i=[{}]", per.join(", "));
}

fn emit_code(code: &IndexCode, out: &Option<PathBuf>) -> AppResult<()> {
    let json = code.to_json();
    match out {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| io_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    subsets: Vec<Vec<usize>>,
    #[serde(default)]
    fold: Option<usize>,
}

fn load_cover(path: &Path) -> AppResult<AISCover> {
    let j: CoverJson =
        serde_json::from_str(&read_file(path)?).map_err(|e| io_error(e.to_string()))?;
    let subsets: Vec<BTreeSet<usize>> = j
        .subsets
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();
    let fold = j.fold.unwrap_or_else(|| {
        let max_v = subsets
            .iter()
            .filter_map(|s| s.iter().next_back().copied())
            .max()
            .unwrap_or(0);
        (1..=max_v)
            .map(|v| subsets.iter().filter(|s| s.contains(&v)).count())
            .min()
            .unwrap_or(0)
    });
    Ok(AISCover { subsets, fold })
}

fn run_construct(a: ConstructArgs) -> AppResult<()> {
    let field = make_field(a.q.unwrap_or(2), a.poly)?;
    let budget = a.budget.unwrap_or(oracles::DEFAULT_BUDGET);
    let graph_file = a.graph.as_deref();
    let need_graph = |what: &str| -> AppResult<SideInfoGraph> {
        let path = graph_file
            .ok_or_else(|| io_error(format!("scheme `{what}` needs a graph file argument")))?;
        load_graph(path)
    };
    let need_n = a.n.ok_or_else(|| infeasible("this scheme needs --n"));
    let code = match a.scheme.as_str() {
        "uncoded" => {
            let g = need_graph("uncoded")?;
            constructions::uncoded(&g, a.msg_len.unwrap_or(1), &field)
        }
        "frac-coloring" => {
            let g = need_graph("frac-coloring")?;
            let coloring = oracles::optimal_ab_coloring(&g.interference_graph())?;
            eprintln!("coloring: a={} b={}", coloring.a, coloring.b);
            constructions::fractional_coloring_code(&g, &coloring, &field)?
        }
        "cycle-scalar" => constructions::cycle_scalar_code(need_n?, a.pivot.unwrap_or(1), &field)?,
        "cycle-vector" => constructions::cycle_vector_code(need_n?, &field)?,
        "cycle-M" => {
            let msg_len = a.msg_len.ok_or_else(|| infeasible("cycle-M needs --M"))?;
            constructions::cycle_code_for_message_length(need_n?, msg_len, &field)?
        }
        "feasible-localities" => {
            let pi: Vec<usize> = parse_list(
                a.pi.as_deref().ok_or_else(|| infeasible("needs --pi"))?,
                "pi",
            )?;
            let r: Vec<u64> =
                parse_list(a.r.as_deref().ok_or_else(|| infeasible("needs --r"))?, "r")?;
            let out = constructions::feasible_locality_code(&pi, &r, &field)?;
            if !out.single_cycle {
                eprintln!("note: pi is a union of several cycles, not a single one");
            }
            out.code
        }
        "minrank-nm1" => {
            let g = need_graph("minrank-nm1")?;
            let (code, note) = constructions::minrank_nm1_code(&g, &field)?;
            eprintln!("scheme note: {note:?}");
            code
        }
        "t-cover" | "ais-cover" => {
            let g = need_graph(&a.scheme)?;
            let cover = match (&a.cover, a.t) {
                (Some(path), _) => {
                    let cover = load_cover(path)?;
                    cover.check(&g)?;
                    cover
                }
                (None, Some(t)) => constructions::t_subset_cover(&g, t)?,
                (None, None) => return Err(infeasible("needs --t or --cover")),
            };
            let len = match a.ell {
                Some(len) => len,
                None => oracles::minrank_bruteforce(&g, &field, budget)?.minrank,
            };
            eprintln!(
                "cover: {} subsets, fold {}, scalar length {len}",
                cover.subsets.len(),
                cover.fold
            );
            constructions::ais_cover_code(&g, &cover, len, &field, budget)?
        }
        "cyclic-symmetry" => {
            let g = need_graph("cyclic-symmetry")?;
            let len = match a.ell {
                Some(len) => len,
                None => oracles::minrank_bruteforce(&g, &field, budget)?.minrank,
            };
            constructions::cyclic_symmetry_code(&g, len, &field, budget)?
        }
        "covering-sep" => {
            let g = need_graph("covering-sep")?;
            let r_max: usize =
                a.r.as_deref()
                    .ok_or_else(|| infeasible("covering-sep needs --r"))?
                    .parse()
                    .map_err(|_| io_error("--r must be an integer for covering-sep"))?;
            let base = constructions::optimal_scalar_code(&g, &field, budget)?;
            let parity = match &a.parity_check {
                Some(path) => load_matrix(path)?,
                None => builtin_parity_check(&field, base.code_len(), r_max, budget)?,
            };
            constructions::covering_separation_code(&g, &base, &parity, r_max, budget)?
        }
        "partition-cover" => {
            let g = need_graph("partition-cover")?;
            let r_max: usize =
                a.r.as_deref()
                    .ok_or_else(|| infeasible("partition-cover needs --r"))?
                    .parse()
                    .map_err(|_| io_error("--r must be an integer for partition-cover"))?;
            let providers = parse_providers(a.providers.as_deref())?;
            let out = constructions::partition_cover_code(&g, r_max, &providers, &field, budget)?;
            for part in &out.parts {
                eprintln!(
                    "part {:?}: {:?} length {} locality {}",
                    part.subset, part.provider, part.len, part.locality
                );
            }
            out.code
        }
        other => return Err(infeasible(format!("unknown scheme `{other}`"))),
    };
    emit_code(&code, &a.out)?;
    print_profile(&code);
    Ok(())
}

/// Built-in covering parity checks: the identity when the budget allows
/// radius `k`, otherwise the shortest known table entry (searched for
/// small `k`, Hamming as the fallback for radius 1).
fn builtin_parity_check(field: &Field, k: usize, r_max: usize, budget: u64) -> AppResult<FMatrix> {
    if r_max >= k {
        return Ok(FMatrix::identity(field, k));
    }
    if let Some(h) = constructions::search_covering_parity_check(field, k, r_max, 10, budget)? {
        return Ok(h);
    }
    if r_max >= 1 {
        return Ok(constructions::hamming_parity_check(field, k));
    }
    Err(infeasible(
        "no built-in covering code matches the locality budget",
    ))
}

fn parse_providers(s: Option<&str>) -> AppResult<Providers> {
    let Some(s) = s else {
        return Ok(Providers::default());
    };
    let mut p = Providers {
        partial_clique: false,
        cycle: false,
        minrank: false,
    };
    for item in s.split(',') {
        match item.trim() {
            "partial-clique" => p.partial_clique = true,
            "cycle" => p.cycle = true,
            "minrank" => p.minrank = true,
            other => return Err(io_error(format!("unknown provider `{other}`"))),
        }
    }
    Ok(p)
}

fn run_verify(a: VerifyArgs) -> AppResult<()> {
    let g = load_graph(&a.graph)?;
    let code = load_code(&a.code)?;
    let report = validate(&g, &code)?;
    println!("valid: {}", report.valid);
    for (i, r) in report.receivers.iter().enumerate() {
        if !r.decodable {
            println!("receiver {}: cannot decode", i + 1);
        }
    }
    if !report.all_columns_queried {
        println!("note: some codeword symbols are queried by nobody");
    }
    if !report.degenerate_empty_queries.is_empty() {
        println!(
            "note: receivers {:?} query nothing (degenerate)",
            report.degenerate_empty_queries
        );
    }
    let p = code.locality_profile();
    println!(
        "beta={} r={} r_avg={}",
        fmt_rat(&p.rate),
        fmt_rat(&p.overall),
        fmt_rat(&p.average)
    );
    let stats = code.single_query_stats();
    println!(
        "single-query check: |S| = {} >= {} : {}",
        stats.solo_total, stats.bound, stats.holds
    );
    if a.exhaustive {
        let budget = a.budget.unwrap_or(1 << 20);
        let oracle = oracles::exhaustive_decodability(&g, &code, budget)?;
        println!(
            "exhaustive oracle: {} ({})",
            oracle,
            if oracle == report.valid {
                "agrees"
            } else {
                "DISAGREES"
            }
        );
        if oracle != report.valid {
            return Err(invalid_code("validator and exhaustive oracle disagree"));
        }
    }
    if report.valid {
        Ok(())
    } else {
        Err(invalid_code("code fails decodability"))
    }
}

struct Achieved {
    r: Rat,
    beta: Rat,
    label: String,
    code: IndexCode,
}

fn scheme_points(
    scheme: &str,
    g: &SideInfoGraph,
    field: &Field,
    budget: u64,
) -> AppResult<Vec<Achieved>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut push = |label: String, code: IndexCode| {
        let p = code.locality_profile();
        out.push(Achieved {
            r: p.overall,
            beta: p.rate,
            label,
            code,
        });
    };
    match scheme {
        "uncoded" => push("uncoded".into(), constructions::uncoded(g, 1, field)),
        "frac-coloring" => {
            let coloring = oracles::optimal_ab_coloring(&g.interference_graph())?;
            push(
                "frac-coloring".into(),
                constructions::fractional_coloring_code(g, &coloring, field)?,
            );
        }
        "cycle-vector" => {
            if *g == SideInfoGraph::directed_cycle(n) && n >= 3 {
                push(
                    "cycle-vector".into(),
                    constructions::cycle_vector_code(n, field)?,
                );
            } else {
                eprintln!(
                    "note: skipping cycle-vector (graph is not the canonical directed cycle)"
                );
            }
        }
        "cycle-scalar" => {
            if *g == SideInfoGraph::directed_cycle(n) && n >= 2 {
                push(
                    "cycle-scalar".into(),
                    constructions::cycle_scalar_code(n, 1, field)?,
                );
            } else {
                eprintln!(
                    "note: skipping cycle-scalar (graph is not the canonical directed cycle)"
                );
            }
        }
        "minrank-nm1" => {
            let (code, _) = constructions::minrank_nm1_code(g, field)?;
            push("minrank-nm1".into(), code);
        }
        "cyclic-symmetry" => {
            if g.has_cyclic_automorphism() {
                let minrk = oracles::minrank_bruteforce(g, field, budget)?.minrank;
                for len in minrk..=n {
                    if let Ok(code) = constructions::cyclic_symmetry_code(g, len, field, budget) {
                        push(format!("cyclic-symmetry-l{len}"), code);
                    }
                }
            } else {
                eprintln!("note: skipping cyclic-symmetry (no cyclic automorphism)");
            }
        }
        "t-cover" => {
            let minrk = oracles::minrank_bruteforce(g, field, budget)?.minrank;
            for t in 1..=2usize {
                if let Ok(cover) = constructions::t_subset_cover(g, t) {
                    if let Ok(code) = constructions::ais_cover_code(g, &cover, minrk, field, budget)
                    {
                        push(format!("t-cover-t{t}"), code);
                    }
                }
            }
        }
        "partition-cover" => {
            for r_max in 1..=3usize {
                if let Ok(res) = constructions::partition_cover_code(
                    g,
                    r_max,
                    &Providers::default(),
                    field,
                    budget,
                ) {
                    push(format!("partition-cover-r{r_max}"), res.code);
                }
            }
        }
        other => return Err(infeasible(format!("unknown sweep scheme `{other}`"))),
    }
    Ok(out)
}

/// Best rate achievable at locality <= target by one point or a
/// time-share of two; returns the realized code for validation.
fn best_at(
    g: &SideInfoGraph,
    points: &[Achieved],
    target: &Rat,
) -> AppResult<Option<(Rat, String, IndexCode)>> {
    let mut best: Option<(Rat, String, IndexCode)> = None;
    let mut consider = |beta: Rat, label: String, code: IndexCode| {
        if best.as_ref().is_none_or(|(b, _, _)| &beta < b) {
            best = Some((beta, label, code));
        }
    };
    for p in points {
        if &p.r <= target {
            consider(p.beta.clone(), p.label.clone(), p.code.clone());
        }
    }
    for (i, pi) in points.iter().enumerate() {
        for pj in points.iter().skip(i + 1) {
            let (lo, hi) = if pi.r <= pj.r { (pi, pj) } else { (pj, pi) };
            if !(&lo.r < target && target < &hi.r) {
                continue;
            }
            // weight on the low-locality code so the mix sits at target
            let w = (hi.r.clone() - target.clone()) / (hi.r.clone() - lo.r.clone());
            let beta = w.clone() * lo.beta.clone() + (rat_int(1) - w.clone()) * hi.beta.clone();
            let (num, den) = lodex::rat_parts_usize(&w).expect("desk-scale weights");
            let mut lo_code = lo.code.clone();
            let mut hi_code = hi.code.clone();
            validate_cached(g, &mut lo_code).map_err(AppError::from)?;
            validate_cached(g, &mut hi_code).map_err(AppError::from)?;
            let mut mixed = lodex::indexcode::time_share(
                &[&lo_code, &hi_code],
                &[num as u64, (den - num) as u64],
            )?;
            let report = validate_cached(g, &mut mixed)?;
            if !report.valid {
                return Err(invalid_code("time-shared sweep point failed validation"));
            }
            debug_assert!(&mixed.locality_profile().overall <= target);
            consider(beta, format!("{}+{}", lo.label, hi.label), mixed);
        }
    }
    Ok(best)
}

fn reference_formula<'a>(g: &'a SideInfoGraph) -> Option<ReferenceFormula<'a>> {
    let n = g.n();
    if *g == SideInfoGraph::directed_cycle(3) {
        Some(ReferenceFormula::ThreeCycle)
    } else if n >= 3 && *g == SideInfoGraph::directed_cycle(n) {
        Some(ReferenceFormula::NCycle { n })
    } else {
        None
    }
}

fn run_sweep(a: SweepArgs) -> AppResult<()> {
    let g = load_graph(&a.graph)?;
    let field = make_field(a.q.unwrap_or(2), None)?;
    let budget = a.budget.unwrap_or(oracles::DEFAULT_BUDGET);
    let grid: Vec<Rat> =
        a.r.split(',')
            .map(|s| parse_rat(s).ok_or_else(|| io_error(format!("bad rational `{s}` in --r"))))
            .collect::<AppResult<Vec<_>>>()?;
    for r in &grid {
        if r < &rat_int(1) {
            return Err(infeasible("grid localities must be at least 1"));
        }
    }
    let mut points = Vec::new();
    for scheme in a.schemes.split(',').filter(|s| !s.is_empty()) {
        points.extend(scheme_points(scheme.trim(), &g, &field, budget)?);
    }
    for p in &points {
        let report = validate(&g, &p.code)?;
        if !report.valid {
            return Err(invalid_code(format!(
                "scheme {} emitted an invalid code",
                p.label
            )));
        }
    }
    let formula = reference_formula(&g);
    let chif_at_one = if formula.is_none() {
        oracles::fractional_chromatic(&g.interference_graph())
            .ok()
            .map(|(v, _)| v)
    } else {
        None
    };

    let mut csv = String::from("r,beta,source\n");
    let mut achieved_plot = Vec::new();
    let mut reference_plot = Vec::new();
    for r in &grid {
        if let Some((beta, label, _code)) = best_at(&g, &points, r)? {
            csv.push_str(&format!(
                "{},{},achieved:{label}\n",
                fmt_rat(r),
                fmt_rat(&beta)
            ));
            achieved_plot.push((lodex::rat_to_f64(r), lodex::rat_to_f64(&beta), label));
        }
        let reference = match &formula {
            Some(f) => Some(oracles::reference_tradeoff(f, r)?),
            None if r == &rat_int(1) => chif_at_one.clone().map(|beta| oracles::TradeoffPoint {
                r: rat_int(1),
                beta,
                provenance: "fractional chromatic number at locality 1".into(),
            }),
            None => None,
        };
        if let Some(point) = reference {
            csv.push_str(&format!(
                "{},{},reference\n",
                fmt_rat(r),
                fmt_rat(&point.beta)
            ));
            reference_plot.push((lodex::rat_to_f64(r), lodex::rat_to_f64(&point.beta)));
        }
    }
    match &a.out {
        Some(path) => std::fs::write(path, &csv)
            .map_err(|e| io_error(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    if let Some(path) = &a.svg {
        reference_plot.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let rendered = svg::render(&svg::Plot {
            achieved: achieved_plot,
            reference: reference_plot,
        });
        std::fs::write(path, rendered)
            .map_err(|e| io_error(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run_oracle(a: OracleArgs) -> AppResult<()> {
    let budget = a.budget.unwrap_or(oracles::DEFAULT_BUDGET);
    let file = |idx: usize| -> AppResult<&PathBuf> {
        a.files
            .get(idx)
            .ok_or_else(|| io_error("missing input file argument"))
    };
    match a.which.as_str() {
        "minrank" => {
            let g = load_graph(file(0)?)?;
            let field = make_field(a.q.unwrap_or(2), None)?;
            let mr = oracles::minrank_bruteforce(&g, &field, budget)?;
            println!("{}", mr.minrank);
            println!(
                "provenance: exhaustive enumeration over {} ({} column assignments visited)",
                field, mr.visited
            );
        }
        "chi" => {
            let g = load_graph(file(0)?)?;
            let h = g.interference_graph();
            println!("{}", oracles::chromatic_number(&h));
            println!("provenance: branch-and-bound coloring of the interference graph");
        }
        "chif" => {
            let g = load_graph(file(0)?)?;
            let h = g.interference_graph();
            let (chif, _) = oracles::fractional_chromatic(&h)?;
            println!("{}", fmt_rat(&chif));
            println!(
                "provenance: exact rational LP over {} maximal independent sets",
                h.maximal_independent_sets().len()
            );
        }
        "ab-coloring" => {
            let g = load_graph(file(0)?)?;
            let h = g.interference_graph();
            let a_colors = a.a.ok_or_else(|| infeasible("needs --a"))?;
            let b_colors = a.b.ok_or_else(|| infeasible("needs --b"))?;
            match oracles::ab_coloring(&h, a_colors, b_colors) {
                Some(coloring) => {
                    let classes: Vec<Vec<usize>> = coloring
                        .classes
                        .iter()
                        .map(|c| c.iter().copied().collect())
                        .collect();
                    println!("{}", serde_json::to_string(&classes).unwrap());
                    println!("provenance: backtracking search with canonical color introduction");
                }
                None => {
                    println!("none");
                    println!("provenance: exhaustive backtracking found no {a_colors}:{b_colors} coloring");
                }
            }
        }
        "decodable" => {
            let g = load_graph(file(0)?)?;
            let code = load_code(file(1)?)?;
            let ok = oracles::exhaustive_decodability(&g, &code, budget)?;
            println!("{ok}");
            println!("provenance: exhaustive sweep over all message vectors");
        }
        "min-queries" => {
            let g = load_graph(file(0)?)?;
            let code = load_code(file(1)?)?;
            let receiver = a.receiver.ok_or_else(|| infeasible("needs --receiver"))?;
            let (size, witness) =
                oracles::min_queries_for_encoder(&g, code.encoder(), code.msg_len(), receiver, 20)?;
            let witness: Vec<usize> = witness.into_iter().map(|k| k + 1).collect();
            println!("{size}");
            println!("provenance: smallest decodable query set {witness:?} (1-based)");
        }
        "covering-radius" => {
            let h = load_matrix(file(0)?)?;
            let radius = oracles::covering_radius(&h, budget)?;
            println!("{radius}");
            println!(
                "provenance: breadth-first search over all {}^{} syndromes",
                h.field().order(),
                h.rows()
            );
        }
        "partition-lp" => {
            let g = load_graph(file(0)?)?;
            let field = make_field(a.q.unwrap_or(2), None)?;
            let r_max = match &a.r {
                Some(s) => parse_rat(s).ok_or_else(|| io_error("bad --r"))?,
                None => rat_int(1),
            };
            let bound = constructions::partition_cover_lp_bound(
                &g,
                &r_max,
                &Providers::default(),
                &field,
                budget,
            )?;
            println!("{}", fmt_rat(&bound));
            println!(
                "provenance: fractional relaxation of the partition covering program \
                 (bound only, no code is emitted)"
            );
        }
        "tradeoff" => {
            let name = a
                .formula
                .as_deref()
                .ok_or_else(|| infeasible("needs --formula"))?;
            let r = match &a.r {
                Some(s) => parse_rat(s).ok_or_else(|| io_error("bad --r"))?,
                None => rat_int(1),
            };
            let graph;
            let formula = match name {
                "frac-coloring-at-1" => {
                    graph = load_graph(file(0)?)?;
                    ReferenceFormula::FracColoringAtOne { graph: &graph }
                }
                "n-cycle" => ReferenceFormula::NCycle {
                    n: a.n.ok_or_else(|| infeasible("needs --n"))?,
                },
                "three-cycle" => ReferenceFormula::ThreeCycle,
                "minrank-nm1" => ReferenceFormula::MinrankNm1 {
                    n: a.n.ok_or_else(|| infeasible("needs --n"))?,
                    nc: a.nc.ok_or_else(|| infeasible("needs --nc"))?,
                },
                "min-M-for-cycle-locality" => ReferenceFormula::MinMessageLengthForCycleLocality {
                    n: a.n.ok_or_else(|| infeasible("needs --n"))?,
                },
                other => return Err(infeasible(format!("unknown formula `{other}`"))),
            };
            let point = oracles::reference_tradeoff(&formula, &r)?;
            println!("{}", fmt_rat(&point.beta));
            println!("provenance: {}", point.provenance);
        }
        other => return Err(infeasible(format!("unknown oracle `{other}`"))),
    }
    Ok(())
}
