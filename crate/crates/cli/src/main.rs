//! `polyreal`: realization cones of transitive G-sets from the command line.
//!
//! Exit codes: 0 success, 1 negative answer (`stringc`), 2 bad input,
//! 3 size cap exceeded, 4 a verified identity failed.

mod spec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use polyreal::chartable::{CharacterTable, TableCache};
use polyreal::perm::{conjugacy_classes, subgroup_generated, DEFAULT_CAP};
use polyreal::realization::{analyze_gset, cone_report, coset_action, ConeReport, GSetAnalysis, ReportOptions};
use polyreal::stringc::verify_string_cgroup;
use polyreal::{psl, suite, wreath};
use serde::Serialize;

use spec::{Built, GroupSpec};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Cap(String),
    Check(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Check(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "input error: {m}"),
            CliError::Cap(m) => write!(f, "size cap exceeded: {m}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "polyreal", version, about = "Realization cones of transitive G-sets")]
struct Cli {
    /// Character-table cache directory (overrides POLYREAL_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Do not read or write the character-table cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest group order to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    max_order: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full cone structure of the coset G-set of a stabilizer.
    ConeReport {
        #[arg(long)]
        group: PathBuf,
        /// Stabilizer generators as words, e.g. "s1,s2*s3".
        #[arg(long)]
        stabilizer: Option<String>,
        /// Skip the exact idempotent products (large G-sets).
        #[arg(long)]
        no_products: bool,
    },
    /// Cosine vectors, pure where `m = 1` and balanced otherwise.
    Cosine {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        stabilizer: Option<String>,
    },
    /// Checks the string C-group conditions for a list of involutions.
    Stringc {
        #[arg(long)]
        group: PathBuf,
        /// Words for the distinguished generators (default: declared generators).
        #[arg(long)]
        generators: Option<String>,
    },
    /// Schlafli types reachable with the PSL(2,p) matrix family.
    PslSearch {
        #[arg(long)]
        p: u64,
    },
    /// U wr C2 on the cosets of hat H, checked against the formulas from Irr(U).
    Wreath {
        /// Group spec of the base group U.
        #[arg(long)]
        base: PathBuf,
    },
    /// Every published example, as a pass/fail matrix.
    PaperSuite {
        /// Include wall-clock times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
}

struct Ctx {
    cache: Option<TableCache>,
    max_order: usize,
    format: Format,
}

fn read_spec(path: &PathBuf, cap: usize) -> Result<Built, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    GroupSpec::parse(&text)?.build(cap)
}

fn analyze(ctx: &Ctx, built: &Built, stabilizer: Option<&str>) -> Result<GSetAnalysis, CliError> {
    let words = stabilizer.or(built.default_stabilizer.as_deref()).unwrap_or("");
    let h = subgroup_generated(&built.group, &built.words(words)?);
    let cd = Arc::new(conjugacy_classes(&built.group));
    let table = Arc::new(
        CharacterTable::compute_cached(&cd, ctx.cache.as_ref()).map_err(|e| CliError::Check(e.to_string()))?,
    );
    analyze_gset(&table, &Arc::new(coset_action(&h))).map_err(|e| CliError::Check(e.to_string()))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn cone_csv(r: &ConeReport) -> String {
    let mut rows = vec![["sigma", "constituents", "degree", "type", "norm", "multiplicity", "subcone_dim", "cone"]
        .map(String::from)
        .to_vec()];
    for s in &r.sigma {
        rows.push(vec![
            s.index.to_string(),
            s.constituents.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
            s.degree.to_string(),
            s.kind.clone(),
            s.norm.to_string(),
            s.multiplicity.to_string(),
            s.subcone_dim.to_string(),
            s.cone.clone(),
        ]);
    }
    csv_string(rows)
}

#[derive(Serialize)]
struct CosineValue {
    exact: String,
    float: f64,
}

#[derive(Serialize)]
struct CosineRow {
    sigma: usize,
    degree: i64,
    #[serde(rename = "type")]
    kind: String,
    multiplicity: i64,
    /// `pure` for `m = 1`, else `balanced` (the cosine vector of `Q_sigma`).
    vector: &'static str,
    values: Vec<CosineValue>,
}

#[derive(Serialize)]
struct CosineReport {
    schema: &'static str,
    omega: usize,
    layers: Vec<polyreal::realization::LayerEntry>,
    rows: Vec<CosineRow>,
}

fn cosine_report(a: &GSetAnalysis) -> CosineReport {
    let real = a.real_irreducibles();
    let rows = a
        .constituents()
        .into_iter()
        .map(|s| {
            let m = a.m_sigma()[s];
            let values = a.balanced_cosine_vector(s).expect("constituent");
            CosineRow {
                sigma: s,
                degree: real[s].degree(),
                kind: real[s].kind.symbol().to_string(),
                multiplicity: m,
                vector: if m == 1 { "pure" } else { "balanced" },
                values: values
                    .iter()
                    .map(|v| CosineValue { exact: v.to_string(), float: v.to_complex().0 })
                    .collect(),
            }
        })
        .collect();
    let l = a.layers();
    CosineReport {
        schema: polyreal::realization::SCHEMA,
        omega: a.omega(),
        layers: l
            .reps
            .iter()
            .zip(&l.sizes)
            .map(|(&rep, &size)| polyreal::realization::LayerEntry { rep, size })
            .collect(),
        rows,
    }
}

fn cosine_rows(r: &CosineReport) -> Vec<Vec<String>> {
    let mut header = vec!["sigma", "degree", "type", "multiplicity", "vector"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    for (i, l) in r.layers.iter().enumerate() {
        header.push(format!("layer{i}_size{}", l.size));
        header.push(format!("layer{i}_float"));
    }
    let mut rows = vec![header];
    for c in &r.rows {
        let mut row = vec![
            c.sigma.to_string(),
            c.degree.to_string(),
            c.kind.clone(),
            c.multiplicity.to_string(),
            c.vector.to_string(),
        ];
        for v in &c.values {
            row.push(v.exact.clone());
            row.push(format!("{:.12}", v.float));
        }
        rows.push(row);
    }
    rows
}

fn plain_table(rows: Vec<Vec<String>>) -> String {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r.get(j).map_or(0, |c| c.len())).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let cache = if cli.no_cache {
        None
    } else {
        Some(cli.cache.clone().map(TableCache::new).unwrap_or_else(TableCache::from_env))
    };
    let ctx = Ctx { cache, max_order: cli.max_order, format: cli.format };
    match cli.command {
        Command::ConeReport { group, stabilizer, no_products } => {
            let built = read_spec(&group, ctx.max_order)?;
            let a = analyze(&ctx, &built, stabilizer.as_deref())?;
            let r = cone_report(&a, ReportOptions { products: !no_products });
            let out = match ctx.format {
                Format::Json => json(&r),
                Format::Csv => cone_csv(&r),
                Format::Table => r.to_table(),
            };
            Ok((out, if r.checks.all_pass() { 0 } else { 4 }))
        }
        Command::Cosine { group, stabilizer } => {
            let built = read_spec(&group, ctx.max_order)?;
            let a = analyze(&ctx, &built, stabilizer.as_deref())?;
            let r = cosine_report(&a);
            let out = match ctx.format {
                Format::Json => json(&r),
                Format::Csv => csv_string(cosine_rows(&r)),
                Format::Table => plain_table(cosine_rows(&r)),
            };
            Ok((out, 0))
        }
        Command::Stringc { group, generators } => {
            let built = read_spec(&group, ctx.max_order)?;
            let gens = match generators {
                Some(w) => built.words(&w)?,
                None => built.generators.clone(),
            };
            let r = verify_string_cgroup(&built.group, &gens).map_err(|e| CliError::Parse(e.to_string()))?;
            #[derive(Serialize)]
            struct Out<'a> {
                schema: &'static str,
                string_c: bool,
                #[serde(flatten)]
                report: &'a polyreal::stringc::StringCReport,
            }
            let out = Out { schema: polyreal::realization::SCHEMA, string_c: r.is_string_c_group(), report: &r };
            let text = match ctx.format {
                Format::Json => json(&out),
                Format::Csv | Format::Table => {
                    let rows = vec![
                        ["string_c", "rank", "order", "involutions", "string", "intersection", "schlafli"]
                            .map(String::from)
                            .to_vec(),
                        vec![
                            out.string_c.to_string(),
                            r.rank.to_string(),
                            r.group_order.to_string(),
                            r.involutions.to_string(),
                            r.string_condition.to_string(),
                            r.intersection_property.to_string(),
                            r.schlafli.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                        ],
                    ];
                    if ctx.format == Format::Csv { csv_string(rows) } else { plain_table(rows) }
                }
            };
            Ok((text, if r.is_string_c_group() { 0 } else { 1 }))
        }
        Command::PslSearch { p } => {
            let r = psl::psl_search(p)?;
            let mut rows = vec![["y", "a", "b", "schlafli", "string_c", "generates"].map(String::from).to_vec()];
            for t in &r.types {
                rows.push(vec![
                    t.y.to_string(),
                    t.a.to_string(),
                    t.b.to_string(),
                    format!("{{{}}}", t.schlafli.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
                    t.string_c.to_string(),
                    t.generates.to_string(),
                ]);
            }
            let out = match ctx.format {
                Format::Json => json(&r),
                Format::Csv => csv_string(rows),
                Format::Table => plain_table(rows),
            };
            Ok((out, 0))
        }
        Command::Wreath { base } => {
            let built = read_spec(&base, ctx.max_order)?;
            let (r, _) = wreath::wreath_vertex_report(&built.group, ctx.cache.as_ref(), ReportOptions::default())?;
            let ok = r.cosines_match && r.wreath_orthogonality && r.cone.checks.all_pass();
            let out = match ctx.format {
                Format::Json => json(&r),
                Format::Csv => r.cosine_table.to_csv(),
                Format::Table => format!(
                    "|U| = {}  |U wr C2| = {}  |Z| = {}  layers = {}  dims = {:?}  {}\n{}",
                    r.base_order,
                    r.wreath_order,
                    r.center_order,
                    r.layer_count,
                    r.pure_dimensions,
                    r.gelfand,
                    r.cosine_table.to_csv()
                ),
            };
            Ok((out, if ok { 0 } else { 4 }))
        }
        Command::PaperSuite { timings } => {
            let mut checks = suite::paper_suite(ctx.cache.as_ref());
            if !timings {
                for c in &mut checks {
                    c.seconds = 0.0;
                }
            }
            let ok = checks.iter().all(|c| c.passed);
            let out = match ctx.format {
                Format::Json => json(&checks),
                Format::Csv => {
                    let mut rows = vec![["check", "passed", "seconds", "detail"].map(String::from).to_vec()];
                    rows.extend(checks.iter().map(|c| {
                        vec![c.name.clone(), c.passed.to_string(), format!("{:.2}", c.seconds), c.detail.clone()]
                    }));
                    csv_string(rows)
                }
                Format::Table => suite::suite_table(&checks, timings),
            };
            Ok((out, if ok { 0 } else { 4 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
