use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invgraph::catalog::{Catalog, EXACT_DEGREES};
use invgraph::oracle::{edge_diffs, wreath_diffs, MAX_ORACLE_DEGREE};
use invgraph::witness::{build_isolated_family, construct_witness, table1_with, verify_witness_with, Lemma};
use invgraph::{ClassGraph, Error, ExportFormat, GroupKind};
use serde_json::json;

#[derive(Parser)]
#[command(name = "invgraph", version, about = "Invariably generating graphs of S_n and A_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Fingerprint cache directory.
    #[arg(long, global = true, env = "INVGRAPH_CACHE_DIR", default_value = ".invgraph-cache")]
    cache_dir: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Sym,
    Alt,
}

impl From<Group> for GroupKind {
    fn from(g: Group) -> Self {
        match g {
            Group::Sym => GroupKind::Sym,
            Group::Alt => GroupKind::Alt,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "sym")]
    group: Group,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build and export the graph on nontrivial classes.
    Graph(Target),
    /// Export the graph without isolated vertices, with its diameter.
    Xi(Target),
    /// Diameters for degrees 3 to 10.
    Table1 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List isolated vertices, or the constructed family with --family.
    Isolated {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        family: bool,
    },
    /// Construct and certify a witness vertex.
    Witness {
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        n: usize,
        /// Defaults to the group the construction is stated for.
        #[arg(long, value_enum)]
        group: Option<Group>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the graph against brute-force invariable generation.
    OracleEdges {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "sym")]
        group: Group,
    },
    /// Compare wreath membership against enumeration.
    OracleWreath {
        #[arg(long)]
        n: usize,
    },
    /// List the primitive groups used at degree n.
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inadmissible(_)
            | Error::CatalogAbsent(_)
            | Error::DegreeMismatch(..)
            | Error::InvalidPartition(_)
            | Error::InvalidDivisor(..) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

/// Output text and whether the run counts as a success.
type Outcome = Result<(String, bool), Failure>;

fn unsupported(format: Format, what: &str) -> Failure {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Failure::Usage(format!("format {name} is not available for {what}"))
}

fn exact_catalog(cli: &Cli, n: usize) -> Result<Catalog, Failure> {
    if !EXACT_DEGREES.contains(&n) {
        return Err(Error::CatalogAbsent(n).into());
    }
    Ok(Catalog::load_cached(n, &cli.cache_dir)?)
}

fn export_format(f: Format) -> ExportFormat {
    match f {
        Format::Dot => ExportFormat::Dot,
        Format::Json => ExportFormat::Json,
        Format::Csv => ExportFormat::Csv,
        Format::Text => ExportFormat::Text,
    }
}

fn graph(cli: &Cli, t: &Target, xi: bool) -> Outcome {
    let cat = exact_catalog(cli, t.n)?;
    let g = ClassGraph::build_with(t.n, t.group.into(), &cat)?;
    let x = g.xi();
    let d = x.diameter();
    let shown = if xi { &x } else { &g };
    Ok((shown.export(export_format(t.format), Some(d)), true))
}

fn table1(cli: &Cli, format: Format) -> Outcome {
    let rows = table1_with(|n| Catalog::load_cached(n, &cli.cache_dir))?;
    let mut s = String::new();
    match format {
        Format::Csv => {
            s.push_str("n,sym,alt\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{}", r.n, r.sym, r.alt);
            }
        }
        Format::Text => {
            let _ = writeln!(s, "{:>3}  {:<12}{}", "n", "d(Xi(S_n))", "d(Xi(A_n))");
            for r in &rows {
                let _ = writeln!(s, "{:>3}  {:<12}{}", r.n, r.sym.to_string(), r.alt);
            }
        }
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|r| json!({ "n": r.n, "sym": r.sym, "alt": r.alt })).collect();
            s = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
        }
        Format::Dot => return Err(unsupported(format, "table1")),
    }
    Ok((s, true))
}

fn isolated(cli: &Cli, t: &Target, family: bool) -> Outcome {
    let group: GroupKind = t.group.into();
    let items: Vec<String> = if family {
        build_isolated_family(t.n, group)?.iter().map(|p| p.to_string()).collect()
    } else {
        let cat = exact_catalog(cli, t.n)?;
        ClassGraph::build_with(t.n, group, &cat)?.isolated_vertices().iter().map(|v| v.to_string()).collect()
    };
    let s = match t.format {
        Format::Text => {
            let mut s = format!("{} {}: {} {}\n", group.name(), t.n, items.len(), if family { "in family" } else { "isolated" });
            for i in &items {
                let _ = writeln!(s, "({i})");
            }
            s
        }
        Format::Csv => std::iter::once("class".to_string()).chain(items.iter().map(|i| format!("\"{i}\""))).collect::<Vec<_>>().join("\n") + "\n",
        Format::Json => {
            let key = if family { "family" } else { "isolated" };
            let v = json!({ "n": t.n, "group": group.name(), "count": items.len(), key: items });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Dot => return Err(unsupported(t.format, "isolated")),
    };
    Ok((s, true))
}

fn witness(cli: &Cli, lemma: &str, n: usize, group: Option<Group>, format: Format) -> Outcome {
    let lemma: Lemma = lemma.parse()?;
    let group = group.map_or_else(|| lemma.default_group(n), GroupKind::from);
    let claim = construct_witness(lemma, n, group)?;
    let cat = if EXACT_DEGREES.contains(&n) { Some(Catalog::load_cached(n, &cli.cache_dir)?) } else { None };
    let report = verify_witness_with(&claim, cat.as_ref())?;
    eprintln!("elapsed_ms: {}", report.elapsed.as_millis());
    let ok = report.is_verified();
    let s = match format {
        Format::Json => serde_json::to_string_pretty(&report.to_json(false)).expect("serializable") + "\n",
        Format::Text => {
            let v = report.to_json(false);
            let mut s = format!("{lemma} n={n} {} ({})\n", group.name(), v["mode"].as_str().unwrap_or(""));
            let _ = writeln!(s, "witness: {}", v["witness"]);
            let _ = writeln!(s, "targets: {}", v["targets"]);
            let _ = writeln!(s, "non-adjacency: {}", v["nonadjacency"]["status"].as_str().unwrap_or(""));
            let _ = writeln!(s, "adjacency: {}", v["adjacency"]["status"].as_str().unwrap_or(""));
            for l in &report.ledger {
                let _ = writeln!(s, "ledger: {l}");
            }
            s
        }
        _ => return Err(unsupported(format, "witness")),
    };
    Ok((s, ok))
}

fn oracle_edges(n: usize, group: Group) -> Outcome {
    if !(3..=MAX_ORACLE_DEGREE).contains(&n) {
        return Err(Failure::Usage(format!("oracle-edges supports 3 <= n <= {MAX_ORACLE_DEGREE}, got {n}")));
    }
    let (g, diffs) = edge_diffs(n, group.into())?;
    let mut s = format!("{} {n}: {} vertices, {} edges, {} diffs\n", group_name(group), g.len(), g.edge_count(), diffs.len());
    for d in &diffs {
        let _ = writeln!(s, "({}) ({}): criterion {} oracle {}", d.a, d.b, d.criterion, d.oracle);
    }
    Ok((s, diffs.is_empty()))
}

fn group_name(g: Group) -> &'static str {
    GroupKind::from(g).name()
}

fn oracle_wreath(n: usize) -> Outcome {
    let (checked, diffs) = wreath_diffs(n)?;
    let mut s = format!("n {n}: {checked} checks, {} diffs\n", diffs.len());
    for d in &diffs {
        let _ = writeln!(s, "({}) m={}: search {} enumeration {}", d.cycle_type, d.m, d.search, d.enumeration);
    }
    Ok((s, diffs.is_empty()))
}

fn catalog(cli: &Cli, n: usize, format: Format) -> Outcome {
    let cat = exact_catalog(cli, n)?;
    let s = match format {
        Format::Text => {
            let mut s = format!("degree {n}: {} primitive groups\n", cat.groups.len());
            for g in &cat.groups {
                let _ = writeln!(s, "{:<16}{:>8}  {:<15}{} types", g.spec.name, g.order, g.spec.family.name(), g.fingerprint.types.len());
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("name,order,family,types\n");
            for g in &cat.groups {
                let _ = writeln!(s, "{},{},{},{}", g.spec.name, g.order, g.spec.family.name(), g.fingerprint.types.len());
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = cat
                .groups
                .iter()
                .map(|g| {
                    let types: Vec<String> = g.fingerprint.types.keys().map(|t| t.to_string()).collect();
                    json!({ "name": g.spec.name, "order": g.order, "family": g.spec.family.name(), "types": types })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "degree": n, "groups": v })).expect("serializable") + "\n"
        }
        Format::Dot => return Err(unsupported(format, "catalog")),
    };
    Ok((s, true))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Graph(t) => graph(cli, t, false),
        Command::Xi(t) => graph(cli, t, true),
        Command::Table1 { format } => table1(cli, *format),
        Command::Isolated { target, family } => isolated(cli, target, *family),
        Command::Witness { lemma, n, group, format } => witness(cli, lemma, *n, *group, *format),
        Command::OracleEdges { n, group } => oracle_edges(*n, *group),
        Command::OracleWreath { n } => oracle_wreath(*n),
        Command::Catalog { n, format } => catalog(cli, *n, *format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool is configured once");
    }
    let start = Instant::now();
    let result = run(&cli);
    let code = match result {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) if ok => 0,
                Ok(()) => 1,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            1
        }
    };
    if !matches!(cli.command, Command::Witness { .. }) {
        eprintln!("elapsed_ms: {}", start.elapsed().as_millis());
    }
    ExitCode::from(code)
}
