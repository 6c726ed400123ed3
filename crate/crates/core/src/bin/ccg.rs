//! `ccg`: command-line driver for the crossing-critical toolkit.
//!
//! Exit status: 0 when the answer is conclusive, 1 on usage or input errors,
//! 2 when a budget stopped the search before an answer was reached.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crossing_critical::canon::to_hex;
use crossing_critical::crossing::{crossing_number, is_crossing_critical_with_budget, CrossingResult, CrValue, Verdict};
use crossing_critical::enumerate::{census_bruteforce, enumerate_critical_with, Catalog, EnumerateOptions, Template};
use crossing_critical::format::{parse_bags, parse_graph, parse_graphs, write_bags, write_drawing, write_graph, GraphRecord};
use crossing_critical::graph::{EmbeddedMultigraph, Multigraph, Vertex};
use crossing_critical::pathdec::{find_path_decomposition, PathDecomposition};
use crossing_critical::planarity::planarity_embed;
use crossing_critical::structures::{
    find_band_or_fan, find_k_edge_linked, find_nests, find_reducible_repetition, is_shelled, parse_bands, verify_nest_depth_bound,
    write_structure, NestKind, Structure,
};
use crossing_critical::surgery::{expand, parse_expansion_specs, reduce_band, reduce_threads, ExpansionRecord, ReductionPolicy};
use crossing_critical::Error;

#[derive(Parser, Debug)]
#[command(name = "ccg", version, about = "Crossing numbers, criticality and structure of crossing-critical graphs")]
struct Cli {
    /// Crossing budget for the exact solver (default: $CCG_BUDGET, else unlimited).
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact crossing number.
    Cr {
        file: PathBuf,
        /// Also print an optimal drawing.
        #[arg(long)]
        witness: bool,
    },
    /// Is the graph c-crossing-critical?
    Critical {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        c: usize,
    },
    /// Bands, fans, nests and the nest depth bound of a plane graph or drawing.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long, default_value_t = 3)]
        min_len: usize,
        #[arg(long, default_value_t = 8)]
        max_tile: usize,
    },
    /// Shrink a graph: suppress threads, or cut a repeated subband.
    Reduce {
        file: PathBuf,
        /// Replace every long thread by a single edge.
        #[arg(long)]
        auto: bool,
        #[arg(long, default_value_t = 1)]
        c: usize,
        /// Override the minimum order of a reducible subband.
        #[arg(long)]
        min_order: Option<usize>,
        /// Override the number of typical copies required on each side.
        #[arg(long)]
        typicality: Option<usize>,
    },
    /// Apply expansion specs such as `subdivide e0` or `paths e3 2`.
    Expand {
        file: PathBuf,
        #[arg(long)]
        spec: String,
        /// Bands of the plane input, for `dup-band`.
        #[arg(long)]
        bands: Option<PathBuf>,
        /// Certify the result as c-critical.
        #[arg(long)]
        c: Option<usize>,
    },
    /// Grow a catalogue of critical graphs from seeds.
    Enumerate {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        max_n: usize,
        /// Catalogue or graph records.
        #[arg(long)]
        seeds: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "subdivision")]
        templates: Vec<String>,
        /// Most vertices a single expansion may add.
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// Exhaustive catalogue of small critical graphs.
    Census {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// Path decompositions.
    Pd {
        #[command(subcommand)]
        command: PdCommand,
    },
}

#[derive(Subcommand, Debug)]
enum PdCommand {
    /// Check a decomposition against a graph.
    Validate { graph: PathBuf, decomposition: PathBuf },
    /// Search for a decomposition of the given width.
    Find {
        graph: PathBuf,
        #[arg(long)]
        width: usize,
    },
}

/// What a command produced.
struct Outcome {
    text: String,
    report: Map<String, Value>,
    inconclusive: bool,
}

impl Outcome {
    fn new(text: String, report: Value) -> Outcome {
        let report = match report {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Outcome { text, report, inconclusive: false }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Argument(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<GraphRecord, Error> {
    parse_graph(&read(path)?)
}

fn budget_from_env(flag: Option<usize>) -> Result<Option<usize>, Error> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("CCG_BUDGET") {
        Ok(v) if !v.trim().is_empty() => {
            v.trim().parse().map(Some).map_err(|_| Error::Argument(format!("CCG_BUDGET must be a number, found `{v}`")))
        }
        _ => Ok(None),
    }
}

fn cr_text(v: CrValue) -> String {
    match v {
        CrValue::Exact(k) => k.to_string(),
        CrValue::AtLeast(k) => format!(">={k}"),
    }
}

fn cmd_cr(file: &Path, witness: bool, budget: Option<usize>) -> Result<Outcome, Error> {
    let g = read_graph(file)?.graph;
    match crossing_number(&g, budget) {
        CrossingResult::Exact { cr, witness: d } => {
            let mut text = format!("cr = {cr}\n");
            if witness {
                text.push_str(&write_drawing(&d));
            }
            Ok(Outcome::new(text, json!({"command": "cr", "cr": cr, "budget": budget})))
        }
        CrossingResult::UnknownAboveBudget { budget: b } => {
            let mut o = Outcome::new(
                format!("unknown above budget {b}\n"),
                json!({"command": "cr", "cr": Value::Null, "lower_bound": b + 1, "budget": b}),
            );
            o.inconclusive = true;
            Ok(o)
        }
    }
}

fn cmd_critical(file: &Path, c: usize, budget: Option<usize>) -> Result<Outcome, Error> {
    let g = read_graph(file)?.graph;
    let r = is_crossing_critical_with_budget(&g, c, budget)?;
    let (line, verdict) = match &r.verdict {
        Verdict::Critical => ("critical".to_string(), "critical"),
        Verdict::NotCritical(why) => (format!("not critical: {why}"), "not-critical"),
        Verdict::Inconclusive(why) => (format!("inconclusive: {why}"), "inconclusive"),
    };
    let per_edge: Vec<String> = r.per_edge.iter().map(|v| cr_text(*v)).collect();
    let text = format!("{line}\ncr = {}\nper-edge = {}\n", cr_text(r.cr), per_edge.join(" "));
    let mut o = Outcome::new(
        text,
        json!({"command": "critical", "c": c, "verdict": verdict, "cr": cr_text(r.cr), "per_edge": per_edge, "budget": budget}),
    );
    o.inconclusive = matches!(r.verdict, Verdict::Inconclusive(_));
    Ok(o)
}

/// Plane host of a graph record with the crossing vertices of its drawing.
fn plane_host(rec: &GraphRecord) -> Result<(EmbeddedMultigraph, BTreeSet<Vertex>), Error> {
    if let Some(d) = rec.drawing()? {
        return Ok((d.planarization.clone(), d.crossing_vertices.clone()));
    }
    if let Some(emb) = rec.embedded()? {
        return Ok((emb, BTreeSet::new()));
    }
    match planarity_embed(&rec.graph) {
        Some(emb) => Ok((emb, BTreeSet::new())),
        None => Err(Error::Argument("graph is not planar; give a rotation system or a drawing".into())),
    }
}

fn cmd_analyze(file: &Path, c: usize, min_len: usize, max_tile: usize) -> Result<Outcome, Error> {
    let rec = read_graph(file)?;
    let (host, crossings) = plane_host(&rec)?;
    let mut text = String::new();
    let mut report = Map::new();
    report.insert("command".into(), json!("analyze"));
    let _ = writeln!(text, "vertices {} edges {} crossings {}", host.graph.n(), host.graph.m(), crossings.len());
    report.insert("crossings".into(), json!(crossings.len()));
    // longest band first
    let mut best = None;
    let mut len = min_len;
    while let Some(b) = find_band_or_fan(&host, &crossings, len, max_tile, 200_000)? {
        len = b.len() + 1;
        best = Some(b);
    }
    match best {
        Some(b) => {
            text.push_str(&write_structure(&Structure::Band(b.clone())));
            let shelled = is_shelled(&host, &b)?;
            let all = shelled.iter().all(|&s| s);
            let _ = writeln!(text, "shelled {}", if all { "yes" } else { "no" });
            let linked = find_k_edge_linked(&host, &b, &|_, _| 2)?;
            let _ = writeln!(text, "edge-linked k={}", linked.k);
            report.insert(
                "band".into(),
                json!({"fan": b.is_fan(), "paths": b.len(), "shelled": all, "k": linked.k}),
            );
        }
        None => {
            text.push_str("band none\n");
            report.insert("band".into(), Value::Null);
        }
    }
    let mut nests = Map::new();
    for (name, kind) in [
        ("0-nest", NestKind::Cycles(0)),
        ("1-nest", NestKind::Cycles(1)),
        ("2-nest", NestKind::Cycles(2)),
        ("face-nest", NestKind::Face),
        ("degenerate-nest", NestKind::DegenerateFace),
    ] {
        let depth = find_nests(&host, kind, 1, &crossings)?.map_or(0, |n| n.depth());
        let _ = writeln!(text, "{name} depth {depth}");
        nests.insert(name.into(), json!(depth));
    }
    report.insert("nests".into(), Value::Object(nests));
    let r = verify_nest_depth_bound(&host, c as u64);
    let _ = writeln!(
        text,
        "nest bound c={} bound={} face={} degenerate={} {}",
        r.c,
        r.bound,
        r.max_face_nest,
        r.max_degenerate_nest,
        if r.within_bound { "ok" } else { "violated" }
    );
    report.insert(
        "nest_bound".into(),
        json!({"c": r.c, "bound": r.bound, "face": r.max_face_nest, "degenerate": r.max_degenerate_nest, "within": r.within_bound}),
    );
    Ok(Outcome { text, report, inconclusive: false })
}

fn cmd_reduce(file: &Path, auto: bool, c: usize, min_order: Option<usize>, typicality: Option<usize>) -> Result<Outcome, Error> {
    let rec = read_graph(file)?;
    if auto {
        let g = reduce_threads(&rec.graph)?;
        return Ok(Outcome::new(
            write_graph(&g),
            json!({"command": "reduce", "mode": "threads", "n": g.n(), "m": g.m()}),
        ));
    }
    let (host, crossings) = plane_host(&rec)?;
    let mut policy = ReductionPolicy::paper(c);
    if let Some(k) = min_order {
        policy = policy.with_min_order(k);
    }
    if let Some(t) = typicality {
        policy = policy.with_typicality(t);
    }
    let band = find_band_or_fan(&host, &crossings, 4, 8, 200_000)?
        .ok_or_else(|| Error::Precondition("no band or fan found".into()))?;
    let order = min_order.unwrap_or(policy.min_order(2));
    let rep = find_reducible_repetition(&host, &band, order, policy.t)?
        .ok_or_else(|| Error::Precondition(format!("no reducible repetition of order {order} ({policy})")))?;
    let r = reduce_band(&host, &band, rep.first, rep.second, &policy, &crossings)?;
    let mut text = format!("# {policy}\n");
    text.push_str(&write_graph(&r.embedding.graph));
    Ok(Outcome::new(
        text,
        json!({
            "command": "reduce", "mode": "band", "policy": policy.to_string(), "overridden": policy.overridden,
            "first": [rep.first.0, rep.first.1], "second": [rep.second.0, rep.second.1],
            "hypotheses_hold": r.hypotheses.all_hold(), "n": r.embedding.graph.n(), "m": r.embedding.graph.m()
        }),
    ))
}

fn cmd_expand(file: &Path, spec: &str, bands: Option<&Path>, c: Option<usize>, budget: Option<usize>) -> Result<Outcome, Error> {
    let rec = read_graph(file)?;
    let specs = parse_expansion_specs(spec)?;
    let mut g: Multigraph = rec.graph.clone();
    let mut host = rec.embedded()?;
    let mut band_list = match bands {
        Some(p) => parse_bands(&read(p)?)?,
        None => Vec::new(),
    };
    for s in &specs {
        let x = expand(&g, s, host.as_ref().map(|h| (h, band_list.as_slice())))?;
        g = x.graph;
        match x.record {
            ExpansionRecord::Band { embedding, band, .. } => {
                host = Some(embedding);
                band_list = vec![band];
            }
            ExpansionRecord::Necklace { .. } => host = None,
        }
    }
    let mut text = write_graph(&g);
    let mut report = json!({"command": "expand", "specs": specs.iter().map(|s| s.to_string()).collect::<Vec<_>>(), "n": g.n(), "m": g.m()});
    let mut inconclusive = false;
    if let Some(c) = c {
        let r = is_crossing_critical_with_budget(&g, c, budget)?;
        let v = match r.verdict {
            Verdict::Critical => "critical",
            Verdict::NotCritical(_) => "not-critical",
            Verdict::Inconclusive(_) => {
                inconclusive = true;
                "inconclusive"
            }
        };
        let _ = writeln!(text, "# {v} c={c} cr={}", cr_text(r.cr));
        report["verdict"] = json!(v);
    }
    let mut o = Outcome::new(text, report);
    o.inconclusive = inconclusive;
    Ok(o)
}

fn read_seeds(path: &Path) -> Result<Vec<Multigraph>, Error> {
    let text = read(path)?;
    if text.lines().any(|l| l.trim_start().starts_with("catalog")) {
        return Ok(Catalog::parse(&text)?.entries.into_iter().map(|e| e.graph).collect());
    }
    Ok(parse_graphs(&text)?.into_iter().map(|r| r.graph).collect())
}

fn catalog_outcome(cat: &Catalog, header: String, command: &str) -> Outcome {
    let inconclusive = cat.entries.iter().any(|e| matches!(e.verdict, Verdict::Inconclusive(_)));
    let mut text = header;
    text.push_str(&cat.write());
    let codes: Vec<String> = cat.entries.iter().map(|e| to_hex(&e.code)).collect();
    let mut o = Outcome::new(
        text,
        json!({"command": command, "c": cat.c, "max_n": cat.max_n, "entries": cat.len(), "codes": codes}),
    );
    o.inconclusive = inconclusive;
    o
}

fn cmd_enumerate(c: usize, max_n: usize, seeds: &Path, templates: &[String], s: usize, budget: Option<usize>) -> Result<Outcome, Error> {
    let seeds = read_seeds(seeds)?;
    let templates: Vec<Template> = templates.iter().map(|t| Template::parse(t.trim())).collect::<Result<_, _>>()?;
    let opts = EnumerateOptions { s, budget };
    let cat = enumerate_critical_with(c, max_n, &seeds, &templates, &opts)?;
    let names: Vec<&str> = templates.iter().map(|t| t.name()).collect();
    let header = format!(
        "# enumerate templates={} s={s} budget={}\n",
        names.join(","),
        budget.map_or("none".to_string(), |b| b.to_string())
    );
    Ok(catalog_outcome(&cat, header, "enumerate"))
}

fn cmd_census(c: usize, max_n: usize) -> Result<Outcome, Error> {
    let cat = census_bruteforce(c, max_n)?;
    Ok(catalog_outcome(&cat, "# census\n".to_string(), "census"))
}

fn cmd_pd(command: &PdCommand, budget: Option<usize>) -> Result<Outcome, Error> {
    match command {
        PdCommand::Validate { graph, decomposition } => {
            let g = read_graph(graph)?.graph;
            let d = PathDecomposition::from_lists(&parse_bags(&read(decomposition)?)?);
            match d.validate(&g) {
                Ok(m) => Ok(Outcome::new(
                    format!(
                        "valid width {} interior-width {} adhesion {} order {} proper {}{}\n",
                        m.width,
                        m.interior_width,
                        m.adhesion,
                        m.order,
                        if m.proper { "yes" } else { "no" },
                        m.linked.map_or(String::new(), |k| format!(" linked {k}"))
                    ),
                    json!({"command": "pd validate", "valid": true, "width": m.width, "adhesion": m.adhesion, "order": m.order, "proper": m.proper, "linked": m.linked}),
                )),
                Err(vs) => {
                    let lines: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                    Ok(Outcome::new(
                        format!("invalid\n{}\n", lines.join("\n")),
                        json!({"command": "pd validate", "valid": false, "violations": lines}),
                    ))
                }
            }
        }
        PdCommand::Find { graph, width } => {
            let g = read_graph(graph)?.graph;
            match find_path_decomposition(&g, *width, budget)? {
                Some(d) => {
                    let bags: Vec<Vec<Vertex>> = d.bags.iter().map(|b| b.iter().copied().collect()).collect();
                    Ok(Outcome::new(
                        write_bags(&bags),
                        json!({"command": "pd find", "width": d.width(), "order": d.order(), "bags": bags}),
                    ))
                }
                None => Ok(Outcome::new(
                    format!("no path decomposition of width {width}\n"),
                    json!({"command": "pd find", "width": width, "found": false}),
                )),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Error::Argument(e.to_string()))?;
    }
    let budget = budget_from_env(cli.budget)?;
    match &cli.command {
        Command::Cr { file, witness } => cmd_cr(file, *witness, budget),
        Command::Critical { file, c } => cmd_critical(file, *c, budget),
        Command::Analyze { file, c, min_len, max_tile } => cmd_analyze(file, *c, *min_len, *max_tile),
        Command::Reduce { file, auto, c, min_order, typicality } => cmd_reduce(file, *auto, *c, *min_order, *typicality),
        Command::Expand { file, spec, bands, c } => cmd_expand(file, spec, bands.as_deref(), *c, budget),
        Command::Enumerate { c, max_n, seeds, templates, s } => cmd_enumerate(*c, *max_n, seeds, templates, *s, budget),
        Command::Census { c, max_n } => cmd_census(*c, *max_n),
        Command::Pd { command } => cmd_pd(command, budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(o) => {
            let body = match cli.format {
                Format::Text => o.text,
                Format::Json => {
                    let mut r = o.report;
                    r.insert("inconclusive".into(), json!(o.inconclusive));
                    r.insert("output".into(), json!(o.text));
                    format!("{}\n", serde_json::to_string_pretty(&Value::Object(r)).unwrap())
                }
            };
            let written = match &cli.output {
                Some(p) => std::fs::write(p, body).map_err(|e| e.to_string()),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("ccg: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if o.inconclusive { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("ccg: {e}");
            ExitCode::from(if matches!(e, Error::Inconclusive(_)) { 2 } else { 1 })
        }
    }
}
