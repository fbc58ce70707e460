//! Command-line front end for the two-forest partition toolkit.
//!
//! Graphs are read from `--graph FILE` (or standard input when the flag is
//! omitted or `-`), in the text format or its JSON mirror; `build` and
//! `expand` write the text format so subcommands compose through pipes.
//! Reports are human readable by default, machine readable with `--json`.
//!
//! Exit codes: 0 for reports and positive verdicts, 1 for definite negative
//! verdicts (no coloring exists, sparsity violated), 2 for usage or input
//! errors.

mod format;

use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use forests_core::{
    assess_for_census, audit_configurations, boundary, bridges, build_family, certify_sparsity,
    discharge_r1, expand_weights_to_gadgets, initial_charges, is_critical_with_budget, mad,
    min_potential_subset, potential, potential_constants, solve_with_budget, CensusEntry,
    ColorMode, CriticalVerdict, EnumerationOptions, ExpandStyle, FamilyId, GapReport, Outcome,
    PotentialFlavor, Rational, SparsityVerdict, VertexSubset, WeightedMultigraph,
};
use format::{parse_graph, serialize_graph, GraphJson};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "forests", version, about = "Forest partition laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Dff,
    Eff,
}

impl From<ModeArg> for ColorMode {
    fn from(m: ModeArg) -> ColorMode {
        match m {
            ModeArg::Dff => ColorMode::DegreeBounded,
            ModeArg::Eff => ColorMode::ComponentBounded,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Md,
    Sd,
    Me,
}

impl From<FlavorArg> for PotentialFlavor {
    fn from(f: FlavorArg) -> PotentialFlavor {
        match f {
            FlavorArg::Md => PotentialFlavor::MultiDegree,
            FlavorArg::Sd => PotentialFlavor::SimpleDegree,
            FlavorArg::Me => PotentialFlavor::MultiComponent,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Md,
    Me,
    Sd,
}

impl From<FamilyArg> for FamilyId {
    fn from(f: FamilyArg) -> FamilyId {
        match f {
            FamilyArg::Md => FamilyId::MultiDegreeFamily,
            FamilyArg::Me => FamilyId::MultiEdgesFamily,
            FamilyArg::Sd => FamilyId::SimpleDegreeFamily,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Multi,
    Simple,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (text or JSON); `-` or omitted reads standard input.
    #[arg(long)]
    graph: Option<String>,
}

impl GraphInput {
    fn load(&self) -> Result<WeightedMultigraph, CliError> {
        let text = match self.graph.as_deref() {
            None | Some("-") => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::new(format!("reading standard input: {e}")))?;
                buf
            }
            Some(path) => fs::read_to_string(path)
                .map_err(|e| CliError::new(format!("reading {path}: {e}")))?,
        };
        parse_graph(&text).map_err(|e| CliError::new(format!("parsing graph: {e}")))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a coloring exists; prints a witness partition or unsat.
    Solve {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        input: GraphInput,
        /// Node budget; exceeding it reports unknown, never a wrong answer.
        #[arg(long, default_value_t = forests_core::coloring::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Criticality test: uncolorable, but colorable after any edge deletion.
    Critical {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = forests_core::coloring::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Potential of a vertex subset (the whole vertex set by default).
    Potential {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[command(flatten)]
        input: GraphInput,
        /// Comma-separated vertex list, e.g. "0,3,5".
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Minimum-potential subset search.
    Minpot {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        /// Allow the full vertex set as a candidate.
        #[arg(long)]
        improper: bool,
        #[arg(long)]
        json: bool,
    },
    /// Gap predicates over all proper subsets.
    Gaps {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        json: bool,
    },
    /// (a,b)-sparsity certificate.
    Sparsity {
        /// Slope, e.g. 7/4.
        #[arg(long)]
        a: String,
        /// Offset, e.g. 1/4 or -1.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        json: bool,
    },
    /// Maximum average degree.
    Mad {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        json: bool,
    },
    /// Build a sharpness family and write it in the text format.
    Build {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long = "D")]
        d: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<String>,
        /// Emit the JSON mirror instead of the text format.
        #[arg(long)]
        json: bool,
    },
    /// Expand vertex weights into explicit gadgets.
    Expand {
        #[arg(long, value_enum)]
        style: StyleArg,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Per-vertex charge ledger, optionally after the discharging rule.
    Charges {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[command(flatten)]
        input: GraphInput,
        /// Apply the discharging rule (component flavor, odd D).
        #[arg(long)]
        r1: bool,
        #[arg(long)]
        json: bool,
    },
    /// Configuration audits for the reducible-structure predicates.
    Audit {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[command(flatten)]
        input: GraphInput,
        /// Skip the solver run that tags whether violations are meaningful.
        #[arg(long)]
        no_solve: bool,
        #[arg(long, default_value_t = forests_core::coloring::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Census of critical graphs up to a given order; JSON-lines output.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long = "D")]
        d: u32,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        simple: bool,
        #[arg(long, default_value_t = 3)]
        max_mult: u32,
        /// Drop the connected, min-degree-2 restriction.
        #[arg(long)]
        all_graphs: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = forests_core::coloring::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<String>,
    },
}

struct CliError {
    message: String,
}

impl CliError {
    fn new(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
        }
    }
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::new(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string(value).expect("report serializes")
        );
    } else {
        print!("{}", human());
    }
}

fn write_output(out: Option<&str>, payload: &str) -> Result<(), CliError> {
    match out {
        None | Some("-") => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, payload).map_err(|e| CliError::new(format!("writing {path}: {e}")))
        }
    }
}

fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: i64 = num
        .trim()
        .parse()
        .map_err(|_| CliError::new(format!("bad rational {text:?}")))?;
    let den: i64 = den
        .trim()
        .parse()
        .map_err(|_| CliError::new(format!("bad rational {text:?}")))?;
    if den == 0 {
        return Err(CliError::new("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn parse_subset(text: &str) -> Result<VertexSubset, CliError> {
    let mut vertices = Vec::new();
    for field in text.split(',') {
        let field = field.trim();
        if field.is_empty() {
            continue;
        }
        vertices.push(
            field
                .parse()
                .map_err(|_| CliError::new(format!("bad vertex {field:?} in subset")))?,
        );
    }
    Ok(VertexSubset::new(vertices))
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Solve {
            mode,
            input,
            budget,
            json,
        } => cmd_solve(mode.into(), &input, budget, json),
        Command::Critical {
            mode,
            input,
            budget,
            json,
        } => cmd_critical(mode.into(), &input, budget, json),
        Command::Potential {
            flavor,
            input,
            subset,
            json,
        } => cmd_potential(flavor.into(), &input, subset.as_deref(), json),
        Command::Minpot {
            flavor,
            input,
            min_size,
            improper,
            json,
        } => cmd_minpot(flavor.into(), &input, min_size, !improper, json),
        Command::Gaps {
            flavor,
            input,
            json,
        } => cmd_gaps(flavor.into(), &input, json),
        Command::Sparsity { a, b, input, json } => {
            cmd_sparsity(&parse_rational(&a)?, &parse_rational(&b)?, &input, json)
        }
        Command::Mad { input, json } => {
            let g = input.load()?;
            let value = mad(&g);
            #[derive(Serialize)]
            struct MadReport {
                mad: Rational,
            }
            emit(json, &MadReport { mad: value }, || format!("mad {value}\n"));
            Ok(0)
        }
        Command::Build {
            family,
            d,
            k,
            out,
            json,
        } => {
            let g = build_family(family.into(), d, k)?;
            let payload = if json {
                let mut s = serde_json::to_string(&GraphJson::of(&g)).expect("graph serializes");
                s.push('\n');
                s
            } else {
                serialize_graph(&g)
            };
            write_output(out.as_deref(), &payload)?;
            Ok(0)
        }
        Command::Expand {
            style,
            input,
            out,
            json,
        } => {
            let g = input.load()?;
            let style = match style {
                StyleArg::Multi => ExpandStyle::Multigraph,
                StyleArg::Simple => ExpandStyle::Simple,
            };
            let expanded = expand_weights_to_gadgets(&g, style)?;
            let payload = if json {
                let mut s =
                    serde_json::to_string(&GraphJson::of(&expanded)).expect("graph serializes");
                s.push('\n');
                s
            } else {
                serialize_graph(&expanded)
            };
            write_output(out.as_deref(), &payload)?;
            Ok(0)
        }
        Command::Charges {
            flavor,
            input,
            r1,
            json,
        } => cmd_charges(flavor.into(), &input, r1, json),
        Command::Audit {
            mode,
            flavor,
            input,
            no_solve,
            budget,
            json,
        } => cmd_audit(mode.into(), flavor.into(), &input, no_solve, budget, json),
        Command::Census {
            n,
            d,
            mode,
            simple,
            max_mult,
            all_graphs,
            threads,
            budget,
            out,
        } => cmd_census(
            n,
            d,
            mode.into(),
            simple,
            max_mult,
            all_graphs,
            threads.max(1),
            budget,
            out.as_deref(),
        ),
    }
}

fn cmd_solve(mode: ColorMode, input: &GraphInput, budget: u64, json: bool) -> Result<u8, CliError> {
    let g = input.load()?;
    #[derive(Serialize)]
    struct SolveReport<'a> {
        outcome: &'a str,
        #[serde(skip_serializing_if = "Option::is_none")]
        m: Option<&'a VertexSubset>,
        #[serde(skip_serializing_if = "Option::is_none")]
        f: Option<&'a VertexSubset>,
        nodes: u64,
    }
    match solve_with_budget(&g, mode, budget) {
        Ok(res) => match &res.outcome {
            Outcome::Satisfiable(p) => {
                emit(
                    json,
                    &SolveReport {
                        outcome: "sat",
                        m: Some(p.m()),
                        f: Some(p.f()),
                        nodes: res.nodes,
                    },
                    || {
                        format!(
                            "sat\nM = {{{}}}\nF = {{{}}}\nnodes {}\n",
                            p.m(),
                            p.f(),
                            res.nodes
                        )
                    },
                );
                Ok(0)
            }
            Outcome::Unsatisfiable => {
                emit(
                    json,
                    &SolveReport {
                        outcome: "unsat",
                        m: None,
                        f: None,
                        nodes: res.nodes,
                    },
                    || format!("unsat\nnodes {}\n", res.nodes),
                );
                Ok(1)
            }
        },
        Err(forests_core::SolveError::BudgetExceeded { nodes }) => {
            emit(
                json,
                &SolveReport {
                    outcome: "unknown",
                    m: None,
                    f: None,
                    nodes,
                },
                || format!("unknown (budget exceeded)\nnodes {nodes}\n"),
            );
            Ok(0)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_critical(
    mode: ColorMode,
    input: &GraphInput,
    budget: u64,
    json: bool,
) -> Result<u8, CliError> {
    let g = input.load()?;
    #[derive(Serialize)]
    struct CriticalReport {
        verdict: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        failing_edge: Option<(usize, usize)>,
        nodes: u64,
    }
    match is_critical_with_budget(&g, mode, budget) {
        Ok(report) => {
            let verdict = match report.verdict {
                CriticalVerdict::Colorable => "colorable",
                CriticalVerdict::Critical => "critical",
                CriticalVerdict::UncolorableNotCritical => "uncolorable-not-critical",
            };
            emit(
                json,
                &CriticalReport {
                    verdict: verdict.into(),
                    failing_edge: report.failing_edge,
                    nodes: report.nodes,
                },
                || {
                    let mut s = format!("{verdict}\n");
                    if let Some((u, v)) = report.failing_edge {
                        s.push_str(&format!("failing edge ({u}, {v})\n"));
                    }
                    s.push_str(&format!("nodes {}\n", report.nodes));
                    s
                },
            );
            Ok(0)
        }
        Err(forests_core::SolveError::BudgetExceeded { nodes }) => {
            emit(
                json,
                &CriticalReport {
                    verdict: "unknown".into(),
                    failing_edge: None,
                    nodes,
                },
                || format!("unknown (budget exceeded)\nnodes {nodes}\n"),
            );
            Ok(0)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_potential(
    flavor: PotentialFlavor,
    input: &GraphInput,
    subset: Option<&str>,
    json: bool,
) -> Result<u8, CliError> {
    let g = input.load()?;
    let subset = match subset {
        Some(text) => parse_subset(text)?,
        None => VertexSubset::full(g.n()),
    };
    if let Some(bad) = subset.iter().find(|&v| v >= g.n()) {
        return Err(CliError::new(format!(
            "subset vertex {bad} out of range for n = {}",
            g.n()
        )));
    }
    let value = potential(&g, flavor, &subset)?;
    let constants = potential_constants(flavor, g.d())?;
    let gamma = boundary(&g, &subset);
    #[derive(Serialize)]
    struct PotentialReport<'a> {
        flavor: PotentialFlavor,
        subset: &'a VertexSubset,
        value: i64,
        boundary: &'a VertexSubset,
        constants: forests_core::PotentialConstants,
    }
    emit(
        json,
        &PotentialReport {
            flavor,
            subset: &subset,
            value,
            boundary: &gamma,
            constants,
        },
        || {
            format!(
                "rho({{{subset}}}) = {value}\nboundary {{{gamma}}}\nrho0 {} rho+ {} rhoe {} rho* {} alpha {}\n",
                constants.rho_zero,
                constants.rho_plus,
                constants.rho_edge,
                constants.rho_star,
                constants.alpha
            )
        },
    );
    Ok(0)
}

fn cmd_minpot(
    flavor: PotentialFlavor,
    input: &GraphInput,
    min_size: usize,
    proper: bool,
    json: bool,
) -> Result<u8, CliError> {
    let g = input.load()?;
    let (subset, value) = min_potential_subset(&g, flavor, min_size, proper)?;
    #[derive(Serialize)]
    struct MinpotReport<'a> {
        flavor: PotentialFlavor,
        subset: &'a VertexSubset,
        value: i64,
    }
    emit(
        json,
        &MinpotReport {
            flavor,
            subset: &subset,
            value,
        },
        || format!("min rho = {value} at {{{subset}}}\n"),
    );
    Ok(0)
}

fn cmd_gaps(flavor: PotentialFlavor, input: &GraphInput, json: bool) -> Result<u8, CliError> {
    let g = input.load()?;
    let report: GapReport = forests_core::audit_gap_predicates(&g, flavor)?;
    emit(json, &report, || {
        let mut s = String::new();
        for rec in &report.records {
            let rel = if rec.strict { ">" } else { ">=" };
            match &rec.minimizer {
                Some((subset, value)) => {
                    s.push_str(&format!(
                        "{:?}: min {} at {{{}}}; requires {rel} {}: {}\n",
                        rec.predicate,
                        value,
                        subset,
                        rec.threshold,
                        if rec.holds { "holds" } else { "fails" }
                    ));
                }
                None => {
                    s.push_str(&format!(
                        "{:?}: no subset in range; holds vacuously\n",
                        rec.predicate
                    ));
                }
            }
        }
        s
    });
    Ok(0)
}

fn cmd_sparsity(
    a: &Rational,
    b: &Rational,
    input: &GraphInput,
    json: bool,
) -> Result<u8, CliError> {
    let g = input.load()?;
    let cert = certify_sparsity(&g, *a, *b)?;
    let sparse = cert.is_sparse();
    emit(json, &cert, || match &cert.verdict {
        SparsityVerdict::Sparse => format!("sparse (a = {a}, b = {b})\n"),
        SparsityVerdict::Violation {
            subset,
            edges,
            bound,
        } => format!(
            "violation: |A| = {}, edges {edges} > bound {bound} at A = {{{subset}}}\n",
            subset.len()
        ),
    });
    Ok(if sparse { 0 } else { 1 })
}

fn cmd_charges(
    flavor: PotentialFlavor,
    input: &GraphInput,
    r1: bool,
    json: bool,
) -> Result<u8, CliError> {
    let g = input.load()?;
    let ledger = if r1 {
        discharge_r1(&g)?
    } else {
        initial_charges(&g, flavor)?
    };
    emit(json, &ledger, || {
        let mut s = format!(
            "stage {}\n",
            match ledger.stage {
                forests_core::Stage::Initial => "initial",
                forests_core::Stage::AfterR1 => "after-r1",
            }
        );
        for (v, ch) in ledger.charges.iter().enumerate() {
            s.push_str(&format!("ch({v}) = {ch}\n"));
        }
        s.push_str(&format!("total {}\n", ledger.total));
        s
    });
    Ok(0)
}

fn cmd_audit(
    mode: ColorMode,
    flavor: PotentialFlavor,
    input: &GraphInput,
    no_solve: bool,
    budget: u64,
    json: bool,
) -> Result<u8, CliError> {
    let g = input.load()?;
    let audit = audit_configurations(&g, flavor, mode);
    // Violations constrain minimum counterexamples; tag the report with the
    // graph's own status so readers know whether they are meaningful.
    let inference = if no_solve {
        "not-evaluated".to_string()
    } else {
        match is_critical_with_budget(&g, mode, budget) {
            Ok(report) => match report.verdict {
                CriticalVerdict::Colorable => "colorable-not-applicable".into(),
                CriticalVerdict::Critical => "critical".into(),
                CriticalVerdict::UncolorableNotCritical => "uncolorable-not-critical".into(),
            },
            Err(_) => "unknown".into(),
        }
    };
    #[derive(Serialize)]
    struct AuditReport<'a> {
        mode: ColorMode,
        inference: &'a str,
        entries: &'a [forests_core::AuditEntry],
        cut_edges: Vec<(usize, usize)>,
    }
    let cut_edges = bridges(&g);
    emit(
        json,
        &AuditReport {
            mode,
            inference: &inference,
            entries: &audit.entries,
            cut_edges: cut_edges.clone(),
        },
        || {
            let mut s = format!("inference: {inference}\n");
            for entry in &audit.entries {
                s.push_str(&format!(
                    "{:?}: {}{}\n",
                    entry.check,
                    if entry.holds { "holds" } else { "fails" },
                    if entry.witnesses.is_empty() {
                        String::new()
                    } else {
                        format!(" ({} witnesses)", entry.witnesses.len())
                    }
                ));
            }
            s.push_str(&format!("cut edges: {}\n", cut_edges.len()));
            s
        },
    );
    Ok(0)
}

#[derive(Serialize)]
struct CensusLine {
    graph: GraphJson,
    exempt: bool,
    checks: Vec<forests_core::FlavorCheck>,
}

#[derive(Serialize)]
struct CensusSummary {
    summary: CensusSummaryBody,
}

#[derive(Serialize)]
struct CensusSummaryBody {
    d: u32,
    mode: ColorMode,
    graphs_examined: u64,
    critical: usize,
    unknown: u64,
    bound_violations: usize,
}

#[allow(clippy::too_many_arguments)]
fn cmd_census(
    n_max: usize,
    d: u32,
    mode: ColorMode,
    simple: bool,
    max_mult: u32,
    all_graphs: bool,
    threads: usize,
    budget: u64,
    out: Option<&str>,
) -> Result<u8, CliError> {
    let mut sink: Box<dyn Write> = match out {
        None | Some("-") => Box::new(std::io::stdout().lock()),
        Some(path) => Box::new(
            fs::File::create(path).map_err(|e| CliError::new(format!("creating {path}: {e}")))?,
        ),
    };
    let mut graphs: Vec<WeightedMultigraph> = Vec::new();
    for n in 1..=n_max {
        let opts = EnumerationOptions {
            n,
            max_mult: if simple { 1 } else { max_mult },
            connected: !all_graphs,
            min_degree: if all_graphs { 0 } else { 2 },
            simple,
        };
        forests_core::enumerate_graphs_with(opts, d, |g| graphs.push(g.clone()))?;
    }
    let graphs_examined = graphs.len() as u64;

    // The criticality checks dominate, so batches are sharded across
    // workers; each batch is written in enumeration order, which keeps the
    // stream independent of the thread count.
    let mut critical = 0usize;
    let mut unknown = 0u64;
    let mut bound_violations = 0usize;
    const BATCH: usize = 1024;
    for batch in graphs.chunks(BATCH) {
        let results: Vec<Result<Option<CensusEntry>, ()>> = if threads <= 1 {
            batch
                .iter()
                .map(|g| assess_for_census(g, mode, budget).map_err(|_| ()))
                .collect()
        } else {
            let shard = batch.len().div_ceil(threads).max(1);
            std::thread::scope(|scope| {
                let handles: Vec<_> = batch
                    .chunks(shard)
                    .map(|chunk| {
                        scope.spawn(move || {
                            chunk
                                .iter()
                                .map(|g| assess_for_census(g, mode, budget).map_err(|_| ()))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("census worker"))
                    .collect()
            })
        };
        for result in results {
            match result {
                Ok(Some(entry)) => {
                    critical += 1;
                    if !entry.satisfies_bound() {
                        bound_violations += 1;
                    }
                    let line = CensusLine {
                        graph: GraphJson::of(&entry.graph),
                        exempt: entry.exempt,
                        checks: entry.checks,
                    };
                    let payload =
                        serde_json::to_string(&line).expect("entry serializes");
                    writeln!(sink, "{payload}")
                        .map_err(|e| CliError::new(format!("writing census: {e}")))?;
                }
                Ok(None) => {}
                Err(()) => unknown += 1,
            }
        }
    }
    let summary = CensusSummary {
        summary: CensusSummaryBody {
            d,
            mode,
            graphs_examined,
            critical,
            unknown,
            bound_violations,
        },
    };
    let payload = serde_json::to_string(&summary).expect("summary serializes");
    writeln!(sink, "{payload}").map_err(|e| CliError::new(format!("writing census: {e}")))?;
    sink.flush().ok();
    Ok(0)
}
