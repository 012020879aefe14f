//! The `bruijn` command line.
//!
//! Exit status 0 on success, 2 when an input violates a contract (the
//! message names which), 3 on I/O failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use bruijn_core::classics::{self, AbelianGroup, EqualityCase, PeriodicOddSeq, RepOutcome, Side};
use bruijn_core::dimers::{self, Orientation, PlanarEmbedding, UndirectedGraph};
use bruijn_core::exactalg::{rational_to_decimal, IntMatrix, Monomial};
use bruijn_core::polya::{self, BuiltinGroup, ColorWeighting};
use bruijn_core::{debruijn, eulertours, permshapes, planetrees, BigInt, BigRational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::{corpus, formats};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<bruijn_core::Error> for CliError {
    fn from(e: bruijn_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<formats::FormatError> for CliError {
    fn from(e: formats::FormatError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "bruijn", version, about = "Exact counting: De Bruijn cycles, Euler tours, dimers, Polya, shapes, trees")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the corpus generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Refuse oracle and enumeration inputs larger than this.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Binary and k-ary De Bruijn cycles.
    #[command(subcommand)]
    Debruijn(DebruijnCmd),
    /// Euler tours and arborescences of a digraph file.
    #[command(subcommand)]
    Euler(EulerCmd),
    /// Perfect matchings of planar graphs.
    #[command(subcommand)]
    Dimers(DimersCmd),
    /// Cycle indices and pattern counts.
    #[command(subcommand)]
    Polya(PolyaCmd),
    /// Permutations with a given rise/descent shape.
    #[command(subcommand)]
    Shapes(ShapesCmd),
    /// Plane trees and binary plane trees.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Representatives, linear spaces, integer bases, group factorizations.
    #[command(subcommand)]
    Classics(ClassicsCmd),
    /// Determinants and permanents of integer matrices.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Writes seeded random instances to a directory.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand, Debug)]
enum DebruijnCmd {
    /// Number of binary cycles of order n.
    Count {
        #[arg(long)]
        n: u32,
        /// Also count by exhaustive search (order <= 4 unless --max-size is raised).
        #[arg(long)]
        enumerate: bool,
    },
    /// One cycle of order n over k letters, from an Euler circuit.
    Generate {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// List every binary cycle instead.
        #[arg(long)]
        all: bool,
    },
    /// Whether a word is a cycle of order n over k letters.
    Check {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Relabeling that maps the line graph of G_n onto G_(n+1).
    LineGraph {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
}

#[derive(Subcommand, Debug)]
enum EulerCmd {
    /// Tours starting with arc 0, by the product formula.
    Count {
        #[arg(long)]
        file: PathBuf,
    },
    /// Spanning arborescences toward a root.
    Arborescences {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// List them, one parent-arc vector per line.
        #[arg(long)]
        list: bool,
    },
    /// Tours starting with arc 0, by exhaustive search.
    Oracle {
        #[arg(long)]
        file: PathBuf,
        /// Print every tour as its arc sequence.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Embedding file.
    #[arg(long, conflicts_with_all = ["grid", "graph"])]
    embedding: Option<PathBuf>,
    /// Grid graph `RxC`.
    #[arg(long, conflicts_with = "graph")]
    grid: Option<String>,
    /// Graph file (no embedding).
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MatchingMethod {
    Fkt,
    Brute,
    Bipartite,
}

#[derive(Subcommand, Debug)]
enum DimersCmd {
    /// Number (or weight sum) of perfect matchings.
    Count {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = MatchingMethod::Fkt)]
        method: MatchingMethod,
    },
    /// A Kasteleyn orientation, or with --little an odd-out-degree one.
    Orient {
        #[command(flatten)]
        source: GraphSource,
        /// Node exempt from the parity condition.
        #[arg(long)]
        little: Option<usize>,
    },
    /// Whether an orientation is Pfaffian.
    CheckPfaffian {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        orientation: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum PolyaCmd {
    /// Cycle index of a built-in group (cube-faces, cube-vertices, cube-edges, cyclic:N, dihedral:N).
    CycleIndex {
        #[arg(long)]
        group: BuiltinGroup,
    },
    /// Colorings up to symmetry.
    Count {
        #[arg(long)]
        group: BuiltinGroup,
        #[arg(long)]
        colors: u64,
    },
    /// Pattern inventory with one variable per color.
    Inventory {
        #[arg(long)]
        group: BuiltinGroup,
        /// Comma-separated color names, used as variables.
        #[arg(long)]
        colors: String,
        /// Print only the coefficient of this monomial, e.g. "z^4 w^2".
        #[arg(long)]
        term: Option<String>,
        /// Compute by walking orbits instead.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ShapesCmd {
    /// Permutations of a shape such as "+-+".
    Psi {
        #[arg(long, allow_hyphen_values = true)]
        shape: String,
        #[arg(long)]
        bruteforce: bool,
        /// Print the last row of the ending-value table.
        #[arg(long)]
        theta: bool,
    },
    /// Alternating permutations of degree n.
    Euler {
        #[arg(long)]
        n: usize,
    },
    /// Whether the alternating shapes are the unique maxima at degree n.
    Niven {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TreesCmd {
    /// Plane trees with n nodes.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// UD code and KE code of every plane tree with n nodes.
    Codes {
        #[arg(long)]
        n: usize,
    },
    /// Exact mean height (edges) over plane trees with n nodes.
    AvgHeight {
        #[arg(long)]
        n: usize,
    },
    /// Checks the generating-function identities through a degree.
    Gf {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ClassicsCmd {
    /// Common representatives of the two partitions in a sets file.
    Reps {
        #[arg(long)]
        sets: PathBuf,
    },
    /// Line count bound and equality case of a linear-space file.
    LinearSpace {
        #[arg(long)]
        file: PathBuf,
    },
    /// A line through exactly two of the points, e.g. "0,0 3,0 0,3 1/2,1".
    OrdinaryLine {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Whether a periodic odd sequence gives a basis of the integers.
    Fundament {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "scan")]
        period: Option<String>,
        /// List the period-two fundaments [a, b] with 0 < -b < a <= SCAN.
        #[arg(long)]
        scan: Option<i64>,
        /// Also print the expansion of this integer.
        #[arg(long, allow_hyphen_values = true)]
        represent: Option<String>,
    },
    /// Integers that are sums of distinct powers of four.
    Moser {
        #[arg(long)]
        count: usize,
    },
    /// Factorizations with no periodic factor, e.g. --type 2,2,3.
    Hajos {
        #[arg(long = "type")]
        group_type: String,
    },
    /// Whether A + B factors the group; elements like "0,1 1,0".
    Factorization {
        #[arg(long = "type")]
        group_type: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Whether a subset is fixed by a non-zero translation.
    Periodic {
        #[arg(long = "type")]
        group_type: String,
        #[arg(long)]
        set: String,
    },
}

#[derive(Subcommand, Debug)]
enum MatrixCmd {
    /// Determinant of a matrix file (one row of integers per line).
    Det {
        #[arg(long)]
        file: PathBuf,
    },
    /// Permanent of a matrix file.
    Permanent {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCmd {
    /// Eulerian digraphs in the digraph format.
    Eulerian {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_nodes: usize,
        #[arg(long, default_value_t = 10)]
        max_arcs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Connected planar graphs in the embedding format.
    Planar {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 14)]
        max_nodes: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pairs of partitions with equal block sizes in the sets format.
    Reps {
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 40)]
        max_size: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(command: &str) -> Self {
        Self { text: String::new(), json: json!({ "command": command }) }
    }

    fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.json[key] = value.into();
        self
    }
}

fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cap(max_size: Option<usize>, size: usize, what: &str) -> Result<()> {
    match max_size {
        Some(m) if size > m => Err(invalid(format!("{what} {size} exceeds --max-size {m}"))),
        _ => Ok(()),
    }
}

/// Parses arguments, runs the command and writes its output. Returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let text = match cli.format {
                Format::Text => o.text,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&o.json).expect("json values serialize");
                    s.push('\n');
                    s
                }
            };
            match out.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    3
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Debruijn(c) => run_debruijn(c, cli.max_size),
        Command::Euler(c) => run_euler(c, cli.max_size),
        Command::Dimers(c) => run_dimers(c, cli.max_size),
        Command::Polya(c) => run_polya(c),
        Command::Shapes(c) => run_shapes(c, cli.max_size),
        Command::Trees(c) => run_trees(c, cli.max_size),
        Command::Classics(c) => run_classics(c),
        Command::Matrix(c) => run_matrix(c, cli.max_size),
        Command::Corpus(c) => run_corpus(c, cli.seed),
    }
}

fn run_debruijn(c: &DebruijnCmd, max_size: Option<usize>) -> Result<Output> {
    Ok(match c {
        DebruijnCmd::Count { n, enumerate } => {
            let count = debruijn::count_pn_cycles(*n)?;
            let mut o = Output::new("debruijn count");
            o.line(count.to_string()).field("n", *n).field("count", big(&count));
            if *enumerate {
                let limit = max_size.map_or(debruijn::DEFAULT_ENUMERATION_LIMIT, |m| m as u32);
                let listed = debruijn::enumerate_pn_cycles_with_limit(*n, limit)?;
                o.line(listed.len().to_string()).field("enumerated", listed.len());
            }
            o
        }
        DebruijnCmd::Generate { n, k, all } => {
            let mut o = Output::new("debruijn generate");
            if *all {
                if *k != 2 {
                    return Err(invalid("--all lists binary cycles only"));
                }
                let limit = max_size.map_or(debruijn::DEFAULT_ENUMERATION_LIMIT, |m| m as u32);
                let words: Vec<String> =
                    debruijn::enumerate_pn_cycles_with_limit(*n, limit)?.iter().map(|w| w.canonical().to_string()).collect();
                for w in &words {
                    o.line(w);
                }
                o.field("cycles", words);
            } else {
                let w = debruijn::generate_pn_cycle(*n, *k)?;
                o.line(w.to_string()).field("cycle", w.to_string());
            }
            o.field("n", *n).field("k", *k);
            o
        }
        DebruijnCmd::Check { word, n, k } => {
            let w: debruijn::CyclicWord = word.parse()?;
            let ok = debruijn::is_pn_cycle(&w, *n, *k);
            let mut o = Output::new("debruijn check");
            o.line(ok.to_string()).field("word", word.as_str()).field("valid", ok);
            o
        }
        DebruijnCmd::LineGraph { n, k } => {
            let iso = debruijn::line_graph_isomorphism(*k, *n)?;
            let mut o = Output::new("debruijn line-graph");
            match &iso {
                Some(map) => {
                    o.line("isomorphic");
                    for (a, v) in map.iter().enumerate() {
                        o.line(format!("{a} {v}"));
                    }
                }
                None => {
                    o.line("not isomorphic");
                }
            }
            o.field("isomorphic", iso.is_some()).field("map", iso);
            o
        }
    })
}

fn run_euler(c: &EulerCmd, max_size: Option<usize>) -> Result<Output> {
    Ok(match c {
        EulerCmd::Count { file } => {
            let g = formats::parse_digraph(&read(file)?)?;
            let count = eulertours::count_euler_tours(&g)?;
            let mut o = Output::new("euler count");
            o.line(count.to_string()).field("arcs", g.arc_count()).field("tours", big(&count));
            o
        }
        EulerCmd::Arborescences { file, root, list } => {
            let g = formats::parse_digraph(&read(file)?)?;
            let count = eulertours::count_arborescences(&g, *root)?;
            let mut o = Output::new("euler arborescences");
            o.line(count.to_string()).field("root", *root).field("count", big(&count));
            if *list {
                cap(max_size, g.arc_count(), "arc count")?;
                let trees = eulertours::enumerate_arborescences(&g, *root)?;
                let rows: Vec<Vec<Option<usize>>> = trees.into_iter().map(|t| t.parent_arc).collect();
                for r in &rows {
                    let cells: Vec<String> = r.iter().map(|a| a.map_or("-".into(), |a| a.to_string())).collect();
                    o.line(cells.join(" "));
                }
                o.field("arborescences", rows);
            }
            o
        }
        EulerCmd::Oracle { file, list } => {
            let g = formats::parse_digraph(&read(file)?)?;
            cap(max_size, g.arc_count(), "arc count")?;
            let mut o = Output::new("euler oracle");
            if *list {
                let tours = eulertours::list_euler_tours(&g)?;
                o.line(tours.len().to_string()).field("tours", tours.len());
                let seqs: Vec<Vec<usize>> = tours.into_iter().map(|t| t.arcs).collect();
                for s in &seqs {
                    let cells: Vec<String> = s.iter().map(ToString::to_string).collect();
                    o.line(cells.join(" "));
                }
                o.field("sequences", seqs);
            } else {
                let count = eulertours::enumerate_euler_tours(&g)?;
                o.line(count.to_string()).field("tours", big(&count));
            }
            o
        }
    })
}

fn parse_grid(spec: &str) -> Result<(usize, usize)> {
    let bad = || invalid(format!("grid {spec:?} is not of the form RxC"));
    let (r, c) = spec.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
}

fn load_graph(src: &GraphSource) -> Result<(UndirectedGraph, Option<PlanarEmbedding>)> {
    if let Some(p) = &src.embedding {
        let (g, e) = formats::parse_embedding(&read(p)?)?;
        return Ok((g, Some(e)));
    }
    if let Some(spec) = &src.grid {
        let (r, c) = parse_grid(spec)?;
        let (g, e) = dimers::grid_embedding(r, c)?;
        return Ok((g, Some(e)));
    }
    if let Some(p) = &src.graph {
        return Ok((formats::parse_graph(&read(p)?)?, None));
    }
    Err(invalid("one of --embedding, --grid or --graph is required"))
}

fn need_embedding(e: Option<PlanarEmbedding>) -> Result<PlanarEmbedding> {
    e.ok_or_else(|| invalid("this needs a planar embedding (--embedding or --grid)"))
}

fn run_dimers(c: &DimersCmd, max_size: Option<usize>) -> Result<Output> {
    Ok(match c {
        DimersCmd::Count { source, method } => {
            let (g, emb) = load_graph(source)?;
            let count = match method {
                MatchingMethod::Fkt => {
                    let o = dimers::kasteleyn_orient(&g, &need_embedding(emb)?)?;
                    dimers::count_matchings_fkt(&g, &o)?
                }
                MatchingMethod::Brute => {
                    cap(max_size, g.node_count(), "node count")?;
                    dimers::matching_weight_sum_bruteforce(&g)?
                }
                MatchingMethod::Bipartite => dimers::count_matchings_bipartite(&g)?
                    .ok_or_else(|| invalid("graph is not bipartite"))?,
            };
            let mut o = Output::new("dimers count");
            o.line(count.to_string())
                .field("nodes", g.node_count())
                .field("edges", g.edge_count())
                .field("method", format!("{method:?}").to_lowercase())
                .field("matchings", big(&count));
            o
        }
        DimersCmd::Orient { source, little } => {
            let (g, emb) = load_graph(source)?;
            let orientation = match little {
                Some(v) => dimers::little_orientation(&g, *v)?,
                None => dimers::kasteleyn_orient(&g, &need_embedding(emb)?)?,
            };
            let mut o = Output::new("dimers orient");
            o.text.push_str(&formats::write_orientation(&orientation));
            o.field("arcs", orientation.arcs().iter().map(|&(t, h)| vec![t, h]).collect::<Vec<_>>());
            o
        }
        DimersCmd::CheckPfaffian { source, orientation } => {
            let (g, _) = load_graph(source)?;
            cap(max_size, g.node_count(), "node count")?;
            let orient: Orientation = formats::parse_orientation(&read(orientation)?, &g)?;
            let ok = dimers::is_pfaffian_orientation(&g, &orient)?;
            let mut o = Output::new("dimers check-pfaffian");
            o.line(ok.to_string()).field("pfaffian", ok);
            o
        }
    })
}

fn parse_monomial(s: &str) -> Result<Vec<(String, u32)>> {
    let mut out = Vec::new();
    for factor in s.split(|c: char| c == '*' || c.is_whitespace()).filter(|f| !f.is_empty()) {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse().map_err(|_| invalid(format!("bad exponent in {factor:?}")))?),
            None => (factor, 1),
        };
        out.push((name.to_string(), exp));
    }
    Ok(out)
}

fn run_polya(c: &PolyaCmd) -> Result<Output> {
    Ok(match c {
        PolyaCmd::CycleIndex { group } => {
            let ci = polya::cycle_index(&group.group()?);
            let mut o = Output::new("polya cycle-index");
            let types: Vec<Value> =
                ci.type_counts().iter().map(|(t, n)| json!({ "type": t.to_string(), "count": n })).collect();
            o.line(ci.to_string())
                .field("group", group.to_string())
                .field("order", ci.order())
                .field("cycle_index", ci.to_string())
                .field("types", types);
            o
        }
        PolyaCmd::Count { group, colors } => {
            let ci = polya::cycle_index(&group.group()?);
            let count = polya::count_patterns(&ci, *colors);
            let mut o = Output::new("polya count");
            o.line(count.to_string()).field("group", group.to_string()).field("colors", *colors).field("patterns", big(&count));
            o
        }
        PolyaCmd::Inventory { group, colors, term, oracle } => {
            let names: Vec<&str> = colors.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let w = ColorWeighting::from_names(&names)?;
            let g = group.group()?;
            let inv = if *oracle { polya::orbit_inventory_oracle(&g, &w)? } else { polya::pattern_inventory(&polya::cycle_index(&g), &w) };
            let mut o = Output::new("polya inventory");
            o.field("group", group.to_string()).field("inventory", inv.to_string());
            match term {
                Some(t) => {
                    let pairs = parse_monomial(t)?;
                    let refs: Vec<(&str, u32)> = pairs.iter().map(|(n, e)| (n.as_str(), *e)).collect();
                    let coeff = inv.coefficient(&Monomial::from_pairs(refs));
                    o.line(coeff.to_string()).field("term", t.as_str()).field("coefficient", coeff.to_string());
                }
                None => {
                    o.line(inv.to_string());
                }
            }
            o
        }
    })
}

fn run_shapes(c: &ShapesCmd, max_size: Option<usize>) -> Result<Output> {
    Ok(match c {
        ShapesCmd::Psi { shape, bruteforce, theta } => {
            let q: permshapes::Shape = shape.parse()?;
            let count = if *bruteforce {
                cap(max_size, q.degree(), "degree")?;
                permshapes::psi_bruteforce(&q)?
            } else {
                permshapes::psi(&q)
            };
            let mut o = Output::new("shapes psi");
            o.line(count.to_string()).field("shape", q.to_string()).field("psi", big(&count));
            if *theta {
                let row: Vec<String> = permshapes::theta_table(&q).last_row().iter().map(ToString::to_string).collect();
                o.line(row.join(" "));
                o.field("theta", row);
            }
            o
        }
        ShapesCmd::Euler { n } => {
            let e = permshapes::euler_number(*n);
            let mut o = Output::new("shapes euler");
            o.line(e.to_string()).field("n", *n).field("euler", big(&e));
            o
        }
        ShapesCmd::Niven { n } => {
            let ok = permshapes::niven_maximality(*n)?;
            let (best, winners) = permshapes::maximal_shapes(*n);
            let mut o = Output::new("shapes niven");
            o.line(ok.to_string());
            for w in &winners {
                o.line(format!("{w} {best}"));
            }
            let names: Vec<String> = winners.iter().map(ToString::to_string).collect();
            o.field("n", *n).field("unique_alternating_maximum", ok).field("maximum", big(&best)).field("maximal_shapes", names);
            o
        }
    })
}

fn run_trees(c: &TreesCmd, max_size: Option<usize>) -> Result<Output> {
    Ok(match c {
        TreesCmd::Count { n } => {
            let count = planetrees::count_plane_trees(*n);
            let mut o = Output::new("trees count");
            o.line(count.to_string()).field("n", *n).field("count", big(&count));
            o
        }
        TreesCmd::Codes { n } => {
            cap(max_size, *n, "node count")?;
            let trees = planetrees::enumerate_plane_trees(*n)?;
            let mut o = Output::new("trees codes");
            let mut rows = Vec::new();
            for t in &trees {
                let ud = planetrees::ud_encode(t);
                let ke = planetrees::ke_encode(&planetrees::plane_to_binary(t));
                o.line(format!("{} {ke}", if ud.is_empty() { "-" } else { &ud }));
                rows.push(json!({ "ud": ud, "ke": ke }));
            }
            o.field("n", *n).field("codes", rows);
            o
        }
        TreesCmd::AvgHeight { n } => {
            let h = planetrees::average_height(*n)?;
            let decimal = rational_to_decimal(&h, 6);
            let mut o = Output::new("trees avg-height");
            o.line(h.to_string()).line(&decimal).field("n", *n).field("exact", h.to_string()).field("decimal", decimal);
            o
        }
        TreesCmd::Gf { degree } => {
            let r = planetrees::gf_identities(*degree)?;
            let mut o = Output::new("trees gf");
            o.line(r.all().to_string())
                .field("degree", *degree)
                .field("catalan_square", r.catalan_square)
                .field("closed_form", r.closed_form)
                .field("binary_square", r.binary_square)
                .field("substitution", r.substitution)
                .field("all", r.all());
            o
        }
    })
}

fn parse_ints<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| invalid(format!("{t:?} is not a valid {what}"))))
        .collect()
}

fn parse_elements(s: &str) -> Result<Vec<Vec<u64>>> {
    s.split_whitespace().map(|e| parse_ints(e, "residue")).collect()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || invalid(format!("{s:?} is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n.parse().map_err(|_| bad())?, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn run_classics(c: &ClassicsCmd) -> Result<Output> {
    Ok(match c {
        ClassicsCmd::Reps { sets } => {
            let inst = formats::parse_rep_sets(&read(sets)?)?;
            let mut o = Output::new("classics reps");
            match classics::common_representatives(&inst) {
                RepOutcome::System(x) => {
                    let cells: Vec<String> = x.iter().map(ToString::to_string).collect();
                    o.line(format!("system {}", cells.join(" "))).field("system", x);
                }
                RepOutcome::Failure(w) => {
                    let (mine, theirs) = match w.side {
                        Side::U => ("U", "B"),
                        Side::B => ("B", "U"),
                    };
                    let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                    o.line(format!("failure {mine} {} contains {theirs} {}", list(&w.blocks), list(&w.contained)));
                    o.field("failure", json!({ "side": mine, "blocks": w.blocks, "contained": w.contained }));
                }
            }
            o
        }
        ClassicsCmd::LinearSpace { file } => {
            let ls = formats::parse_linear_space(&read(file)?)?;
            let r = classics::linear_space_validate(&ls);
            let mut o = Output::new("classics linear-space");
            o.line(format!("points {}", r.points)).line(format!("lines {}", r.lines));
            o.line(if r.bound_holds { "bound holds" } else { "bound violated" });
            let case = match r.equality_case {
                None => Value::Null,
                Some(EqualityCase::NearPencil) => {
                    o.line("equality near-pencil");
                    json!({ "case": "near-pencil" })
                }
                Some(EqualityCase::ProjectivePlane { k }) => {
                    o.line(format!("equality projective-plane k={k}"));
                    json!({ "case": "projective-plane", "k": k })
                }
            };
            o.field("points", r.points).field("lines", r.lines).field("bound_holds", r.bound_holds).field("equality", case);
            o
        }
        ClassicsCmd::OrdinaryLine { points } => {
            let pts = points
                .split_whitespace()
                .map(|p| {
                    let (x, y) = p.split_once(',').ok_or_else(|| invalid(format!("point {p:?} is not of the form x,y")))?;
                    Ok((parse_rational(x)?, parse_rational(y)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let (i, j) = classics::ordinary_line(&pts)?;
            let mut o = Output::new("classics ordinary-line");
            o.line(format!("{i} {j}")).field("pair", vec![i, j]);
            o
        }
        ClassicsCmd::Fundament { period, scan, represent } => {
            let mut o = Output::new("classics fundament");
            if let Some(p) = period {
                let d = PeriodicOddSeq::new(parse_ints(p, "digit")?)?;
                let ok = classics::fundament_decide(&d);
                o.line(ok.to_string()).field("period", d.digits()).field("fundament", ok);
                if let Some(w) = classics::fundament_witness(&d) {
                    o.line(format!("witness {w}")).field("witness", big(&w));
                }
                if let Some(x) = represent {
                    let x: BigInt = x.parse().map_err(|_| invalid(format!("{x:?} is not an integer")))?;
                    let x = &x;
                    let used = classics::represent(&d, x);
                    match &used {
                        Some(idx) => {
                            let terms: Vec<String> =
                                idx.iter().map(|&i| (BigInt::from(d.digit(i)) << (i - 1)).to_string()).collect();
                            o.line(format!("{x} = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") }));
                        }
                        None => {
                            o.line(format!("{x} has no expansion"));
                        }
                    }
                    o.field("expansion", used);
                }
            }
            if let Some(max) = scan {
                let found = classics::two_period_fundaments(*max);
                o.line(found.len().to_string());
                for (a, b) in &found {
                    o.line(format!("{a},{b}"));
                }
                o.field("scan_max", *max).field("scan_count", found.len()).field("scan", found.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>());
            }
            o
        }
        ClassicsCmd::Moser { count } => {
            let v = classics::moser_debruijn(*count);
            let mut o = Output::new("classics moser");
            for x in &v {
                o.line(x.to_string());
            }
            o.field("sequence", v.iter().map(big).collect::<Vec<_>>());
            o
        }
        ClassicsCmd::Hajos { group_type } => {
            let g = AbelianGroup::new(parse_ints(group_type, "cyclic order")?)?;
            let found = classics::hajos_search(&g)?;
            let mut o = Output::new("classics hajos");
            o.line(found.len().to_string());
            let show = |s: &[Vec<u64>]| {
                s.iter().map(|e| e.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(" ")
            };
            for f in &found {
                o.line(format!("{} | {}", show(&f.a), show(&f.b)));
            }
            let rows: Vec<Value> = found.iter().map(|f| json!({ "a": f.a, "b": f.b })).collect();
            o.field("type", g.moduli()).field("non_periodic_factorizations", rows);
            o
        }
        ClassicsCmd::Factorization { group_type, a, b } => {
            let g = AbelianGroup::new(parse_ints(group_type, "cyclic order")?)?;
            let ok = classics::is_factorization(&g, &parse_elements(a)?, &parse_elements(b)?)?;
            let mut o = Output::new("classics factorization");
            o.line(ok.to_string()).field("factorization", ok);
            o
        }
        ClassicsCmd::Periodic { group_type, set } => {
            let g = AbelianGroup::new(parse_ints(group_type, "cyclic order")?)?;
            let ok = classics::is_periodic_subset(&g, &parse_elements(set)?)?;
            let mut o = Output::new("classics periodic");
            o.line(ok.to_string()).field("periodic", ok);
            o
        }
    })
}

fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let rows = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_ints::<BigInt>(l, "integer"))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(&rows)?)
}

fn run_matrix(c: &MatrixCmd, max_size: Option<usize>) -> Result<Output> {
    Ok(match c {
        MatrixCmd::Det { file } => {
            let m = parse_matrix(&read(file)?)?;
            let d = m.det();
            let mut o = Output::new("matrix det");
            o.line(d.to_string()).field("dim", m.dim()).field("det", big(&d));
            o
        }
        MatrixCmd::Permanent { file } => {
            let m = parse_matrix(&read(file)?)?;
            let p = m.permanent_ryser_capped(max_size.unwrap_or(bruijn_core::exactalg::DEFAULT_PERMANENT_CAP))?;
            let mut o = Output::new("matrix permanent");
            o.line(p.to_string()).field("dim", m.dim()).field("permanent", big(&p));
            o
        }
    })
}

fn run_corpus(c: &CorpusCmd, seed: u64) -> Result<Output> {
    let mut rng = corpus::rng(seed);
    let (kind, files): (&str, Vec<String>) = match c {
        CorpusCmd::Eulerian { count, max_nodes, max_arcs, .. } => {
            if *max_nodes == 0 || *max_arcs == 0 {
                return Err(invalid("--max-nodes and --max-arcs must be positive"));
            }
            ("eulerian", corpus::eulerian_digraphs(&mut rng, *count, *max_nodes, *max_arcs).iter().map(formats::write_digraph).collect())
        }
        CorpusCmd::Planar { count, max_nodes, .. } => {
            if *max_nodes < 3 {
                return Err(invalid("--max-nodes must be at least 3"));
            }
            ("planar", corpus::planar_graphs(&mut rng, *count, *max_nodes).iter().map(|(_, e)| formats::write_embedding(e)).collect())
        }
        CorpusCmd::Reps { count, max_size, .. } => {
            if *max_size == 0 {
                return Err(invalid("--max-size must be positive"));
            }
            ("reps", corpus::uniform_rep_instances(&mut rng, *count, *max_size).iter().map(formats::write_rep_sets).collect())
        }
    };
    let dir = match c {
        CorpusCmd::Eulerian { out, .. } | CorpusCmd::Planar { out, .. } | CorpusCmd::Reps { out, .. } => out,
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut o = Output::new("corpus");
    let mut names = Vec::new();
    for (i, contents) in files.iter().enumerate() {
        let name = format!("{kind}-{i:04}.txt");
        write_file(&dir.join(&name), contents)?;
        names.push(name);
    }
    let mut summary = String::new();
    let _ = write!(summary, "{} {kind} files in {}", names.len(), dir.display());
    o.line(summary).field("kind", kind).field("seed", seed).field("files", names);
    Ok(o)
}
