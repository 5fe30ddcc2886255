//! `taxsim`: validate taxonomies, query similarities, dump models and
//! evaluate measures against human ratings.
//!
//! Exit codes: 0 success, 1 invalid input, 2 I/O or missing path,
//! 3 bad query, 4 degenerate evaluation.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use taxsim::evaluation::{evaluate_all, replay_table2, EvalReport};
use taxsim::{
    fixtures, Benchmark, EvalError, FrequencyTable, LogBase, Measure, ModelError, ProbabilityModel,
    Scorer, SimilarityError, Taxonomy, TaxonomyBuilder, TaxonomyError,
};

#[derive(Parser, Debug)]
#[command(name = "taxsim", version, about = "Information-content similarity over IS-A taxonomies")]
struct Cli {
    /// Edge file: `child<TAB>parent` per line
    #[arg(long, global = true)]
    taxonomy: Option<PathBuf>,

    /// Lexicon file: `word<TAB>concept_id` per line
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,

    /// Counts file: `word<TAB>count` per line
    #[arg(long, global = true)]
    counts: Option<PathBuf>,

    /// Benchmark CSV with header `word1,word2,rating`
    #[arg(long, global = true)]
    benchmark: Option<PathBuf>,

    /// Logarithm base for information content
    #[arg(long, global = true, default_value_t = 2.0, value_parser = parse_log_base)]
    log_base: f64,

    /// Fold naive plurals (`coins` -> `coin`) into lexicon words
    #[arg(long, global = true)]
    plural_fold: bool,

    /// Path length standing in for 0 in the lch measure
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_floor)]
    lch_floor: f64,

    /// Measure to compute; repeatable. Defaults to every word-level measure.
    #[arg(long = "measure", global = true, value_parser = parse_measure)]
    measures: Vec<Measure>,

    /// Write one JSON object per benchmark row to this file
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the taxonomy and lexicon form a valid IS-A DAG
    Validate,
    /// Score a word pair
    Sim { word1: String, word2: String },
    /// Correlate measures with human ratings
    Eval {
        /// Replay the bundled per-item table instead of recomputing scores
        #[arg(long)]
        fixture: bool,
    },
    /// Dump `concept_id, freq, p, ic` for every concept
    Stats,
}

fn parse_log_base(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    LogBase::new(v).map(LogBase::value).map_err(|e| e.to_string())
}

fn parse_floor(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("must be a positive number".into())
    }
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    s.parse()
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Io(String),
    Query(String),
    Eval(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Io(_) => 2,
            Failure::Query(_) => 3,
            Failure::Eval(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Io(m) | Failure::Query(m) | Failure::Eval(m) => m,
        }
    }
}

fn located(path: &Path, line: usize, message: &str) -> String {
    if line > 0 {
        format!("{}:{line}: {message}", path.display())
    } else {
        format!("{}: {message}", path.display())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, Failure> {
    path.as_deref()
        .ok_or_else(|| Failure::Io(format!("missing --{flag}")))
}

fn taxonomy_failure(err: TaxonomyError, file: &Path) -> Failure {
    match err {
        TaxonomyError::Malformed { line, message } => Failure::Validation(located(file, line, &message)),
        other => Failure::Validation(located(file, 0, &other.to_string())),
    }
}

fn model_failure(err: ModelError, file: &Path) -> Failure {
    match err {
        ModelError::Malformed { line, message } => Failure::Validation(located(file, line, &message)),
        ModelError::NegativeCount { line, word, value } => {
            Failure::Validation(located(file, line, &format!("negative count {value} for `{word}`")))
        }
        other => Failure::Validation(located(file, 0, &other.to_string())),
    }
}

fn query_failure(err: SimilarityError) -> Failure {
    Failure::Query(err.to_string())
}

fn eval_failure(err: EvalError, benchmark: Option<&Path>) -> Failure {
    match err {
        EvalError::Malformed { line, message } => {
            Failure::Validation(located(benchmark.unwrap_or(Path::new("benchmark")), line, &message))
        }
        EvalError::Similarity(e) => query_failure(e),
        other => Failure::Eval(other.to_string()),
    }
}

struct Loaded {
    taxonomy: Taxonomy,
    model: ProbabilityModel,
}

impl Cli {
    fn measures(&self) -> Vec<Measure> {
        if self.measures.is_empty() {
            Measure::WORD_LEVEL.to_vec()
        } else {
            let mut m: Vec<Measure> = Vec::new();
            for &x in &self.measures {
                if !m.contains(&x) {
                    m.push(x);
                }
            }
            m
        }
    }

    fn load_taxonomy(&self) -> Result<Taxonomy, Failure> {
        let edges_path = required(&self.taxonomy, "taxonomy")?;
        let lexicon_path = required(&self.lexicon, "lexicon")?;
        let (edges, lexicon) = (read(edges_path)?, read(lexicon_path)?);
        let mut builder = TaxonomyBuilder::new();
        builder
            .read_edges(&edges)
            .map_err(|e| taxonomy_failure(e, edges_path))?;
        builder
            .read_lexicon(&lexicon)
            .map_err(|e| taxonomy_failure(e, lexicon_path))?;
        builder.build().map_err(|e| match e {
            TaxonomyError::DanglingReference { id, line } => Failure::Validation(located(
                lexicon_path,
                line,
                &format!("unknown concept `{id}`"),
            )),
            other => taxonomy_failure(other, edges_path),
        })
    }

    fn load(&self) -> Result<Loaded, Failure> {
        let taxonomy = self.load_taxonomy()?;
        let counts_path = required(&self.counts, "counts")?;
        let counts = read(counts_path)?;
        let table = FrequencyTable::load(&counts, self.plural_fold, &taxonomy)
            .map_err(|e| model_failure(e, counts_path))?;
        let base = LogBase::new(self.log_base).expect("validated by clap");
        let model = ProbabilityModel::build(&taxonomy, &table, base)
            .map_err(|e| model_failure(e, counts_path))?;
        Ok(Loaded { taxonomy, model })
    }

    fn scorer<'a>(&self, loaded: &'a Loaded) -> Scorer<'a> {
        Scorer::new(&loaded.taxonomy, &loaded.model)
            .with_lch_floor(self.lch_floor)
            .expect("validated by clap")
    }
}

fn cmd_validate(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let t = cli.load_taxonomy()?;
    if t.has_synthetic_root() {
        eprintln!(
            "note: inserted root `{}` above {} parentless concepts",
            t.name(t.root()),
            t.children(t.root()).len()
        );
    }
    writeln!(
        out,
        "{} concepts, {} edges, {} words, MAX={}",
        t.len(),
        t.edge_count(),
        t.word_count(),
        t.max_depth()
    )
    .map_err(io_failure)
}

fn cmd_sim(cli: &Cli, w1: &str, w2: &str, out: &mut impl Write) -> Result<(), Failure> {
    let loaded = cli.load()?;
    let scorer = cli.scorer(&loaded);
    for w in [w1, w2] {
        if loaded.taxonomy.senses_of(w).is_empty() {
            return Err(query_failure(SimilarityError::UnknownWord(w.to_string())));
        }
    }
    let mut text = String::new();
    for measure in cli.measures() {
        let s = scorer
            .word_similarity(measure, w1, w2)
            .map_err(query_failure)?;
        let witness = s.witness.map_or("-", |c| loaded.taxonomy.name(c));
        let _ = writeln!(text, "{w1}\t{w2}\t{measure}\t{:.4}\t{witness}", s.value);
    }
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn cmd_stats(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let loaded = cli.load()?;
    out.write_all(loaded.model.stats_tsv(&loaded.taxonomy).as_bytes())
        .map_err(io_failure)
}

fn write_json(path: &Path, reports: &[EvalReport]) -> Result<(), Failure> {
    let file = fs::File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    for r in reports {
        r.write_jsonl(&mut w)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    w.flush().map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn cmd_eval(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let benchmark_path = required(&cli.benchmark, "benchmark")?;
    let loaded = cli.load()?;
    let scorer = cli.scorer(&loaded);
    let name = benchmark_path
        .file_stem()
        .map_or_else(|| "benchmark".into(), |s| s.to_string_lossy().into_owned());
    let benchmark = Benchmark::parse_csv(&name, &read(benchmark_path)?)
        .map_err(|e| eval_failure(e, Some(benchmark_path)))?;
    let reports = evaluate_all(&cli.measures(), &scorer, &benchmark)
        .map_err(|e| eval_failure(e, Some(benchmark_path)))?;

    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.render());
        text.push('\n');
    }
    let _ = writeln!(text, "measure\tr\tn\texcluded");
    for r in &reports {
        let _ = writeln!(
            text,
            "{}\t{:.4}\t{}\t{}",
            r.measure,
            r.r,
            r.n_included(),
            r.items.len() - r.n_included()
        );
    }
    out.write_all(text.as_bytes()).map_err(io_failure)?;
    if let Some(path) = &cli.json_out {
        write_json(path, &reports)?;
    }
    Ok(())
}

fn cmd_eval_fixture(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let results = replay_table2();
    let rows = fixtures::table2();
    let mc: Vec<f64> = rows.iter().map(|r| r.mc_mean).collect();
    let replication: Vec<f64> = rows.iter().map(|r| r.replication_mean).collect();
    let human = taxsim::pearson(&mc, &replication).map_err(|e| Failure::Eval(e.to_string()))?;

    let mut text = String::new();
    let _ = writeln!(text, "column\tr\ttarget\ttolerance\tstatus");
    for r in &results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{}\t{:.4}\t{:.4}\t{}\t{status}",
            r.column, r.r, r.target, r.tolerance
        );
    }
    let _ = writeln!(text, "replication\t{human:.4}\t-\t-\t-");
    let _ = writeln!(text, "rows\t{}", rows.len());
    out.write_all(text.as_bytes()).map_err(io_failure)?;

    if let Some(path) = &cli.json_out {
        let mut body = String::new();
        for r in &results {
            let mut v = serde_json::to_value(r).expect("plain struct");
            v["passed"] = r.passed().into();
            body.push_str(&v.to_string());
            body.push('\n');
        }
        fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    if results.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Eval("fixture correlations outside tolerance".into()))
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Io(e.to_string())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Validate => cmd_validate(cli, &mut out),
        Command::Sim { word1, word2 } => cmd_sim(cli, word1, word2, &mut out),
        Command::Eval { fixture: true } => cmd_eval_fixture(cli, &mut out),
        Command::Eval { fixture: false } => cmd_eval(cli, &mut out),
        Command::Stats => cmd_stats(cli, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("taxsim: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
