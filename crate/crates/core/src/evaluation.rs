//! Correlating similarity scores with human ratings.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{EvalError, SimilarityError};
use crate::fixtures::{self, Table2Row};
use crate::similarity::{Measure, Scorer};
use crate::taxonomy::normalize_word;

fn check_pair(xs: &[f64], ys: &[f64]) -> Result<(), EvalError> {
    if xs.len() != ys.len() {
        return Err(EvalError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(EvalError::TooFewPoints(xs.len()));
    }
    Ok(())
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sample Pearson product-moment correlation.
///
/// Means are taken first and the centered products summed afterwards.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    check_pair(xs, ys)?;
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(EvalError::ZeroVariance("first series"));
    }
    if syy == 0.0 {
        return Err(EvalError::ZeroVariance("second series"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Ranks starting at 1, ties sharing their average rank.
fn ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation (Pearson over average ranks).
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    check_pair(xs, ys)?;
    pearson(&ranks(xs), &ranks(ys))
}

/// Correlation of `xs` with `ys` and with `offset - ys`.
pub fn flip_check(xs: &[f64], ys: &[f64], offset: f64) -> Result<(f64, f64), EvalError> {
    let flipped: Vec<f64> = ys.iter().map(|y| offset - y).collect();
    Ok((pearson(xs, ys)?, pearson(xs, &flipped)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub word1: String,
    pub word2: String,
    pub rating: f64,
}

/// Word pairs with mean human similarity ratings.
#[derive(Debug, Clone, PartialEq)]
pub struct Benchmark {
    pub name: String,
    pub rows: Vec<BenchmarkRow>,
}

impl Benchmark {
    /// Parses CSV with the header `word1,word2,rating`.
    pub fn parse_csv(name: &str, text: &str) -> Result<Self, EvalError> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| EvalError::Malformed {
            line: 1,
            message: e.to_string(),
        })?;
        if header.iter().collect::<Vec<_>>() != ["word1", "word2", "rating"] {
            return Err(EvalError::Malformed {
                line: 1,
                message: "expected header `word1,word2,rating`".into(),
            });
        }
        let mut rows = Vec::new();
        for record in reader.deserialize::<BenchmarkRow>() {
            let mut row = record.map_err(|e| EvalError::Malformed {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            if !row.rating.is_finite() {
                return Err(EvalError::Malformed {
                    line: rows.len() + 2,
                    message: "rating must be finite".into(),
                });
            }
            row.word1 = normalize_word(&row.word1);
            row.word2 = normalize_word(&row.word2);
            rows.push(row);
        }
        Ok(Benchmark {
            name: name.to_string(),
            rows,
        })
    }

    /// The Miller–Charles means of the bundled per-item table.
    pub fn table2() -> Self {
        Benchmark {
            name: "table2".into(),
            rows: fixtures::table2()
                .into_iter()
                .map(|r| BenchmarkRow {
                    word1: r.word1.into(),
                    word2: r.word2.into(),
                    rating: r.mc_mean,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ItemScore {
    pub word1: String,
    pub word2: String,
    pub rating: f64,
    pub score: Option<f64>,
    pub witness: Option<String>,
    pub reason: Option<String>,
}

impl ItemScore {
    pub fn included(&self) -> bool {
        self.score.is_some()
    }
}

/// One measure scored against one benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub measure: Measure,
    pub benchmark: String,
    pub r: f64,
    pub spearman: f64,
    /// One entry per benchmark row, in benchmark order.
    pub items: Vec<ItemScore>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    measure: &'a str,
    pair: [&'a str; 2],
    score: Option<f64>,
    included: bool,
    reason: Option<&'a str>,
}

impl EvalReport {
    pub fn n_included(&self) -> usize {
        self.items.iter().filter(|i| i.included()).count()
    }

    pub fn excluded(&self) -> impl Iterator<Item = &ItemScore> + '_ {
        self.items.iter().filter(|i| !i.included())
    }

    /// Fixed-width table: one line per row, then the correlation summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "measure: {}  benchmark: {}", self.measure, self.benchmark);
        for item in &self.items {
            let score = item
                .score
                .map_or_else(|| "-".to_string(), |s| format!("{s:.4}"));
            let note = item
                .reason
                .as_deref()
                .or(item.witness.as_deref())
                .unwrap_or("");
            let _ = writeln!(
                out,
                "  {:<16} {:<16} {:>6.2} {:>10}  {}",
                item.word1, item.word2, item.rating, score, note
            );
        }
        let _ = writeln!(
            out,
            "  r = {:.4}  (spearman {:.4}, n = {}, excluded {})",
            self.r,
            self.spearman,
            self.n_included(),
            self.items.len() - self.n_included()
        );
        out
    }

    /// One JSON object per benchmark row.
    pub fn write_jsonl(&self, mut w: impl Write) -> std::io::Result<()> {
        for item in &self.items {
            let row = JsonRow {
                measure: self.measure.name(),
                pair: [&item.word1, &item.word2],
                score: item.score,
                included: item.included(),
                reason: item.reason.as_deref(),
            };
            serde_json::to_writer(&mut w, &row)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Scores every benchmark row with `measure` and correlates the included
/// rows with their human ratings. Rows naming a word outside the taxonomy
/// are excluded from both series.
pub fn evaluate(measure: Measure, scorer: &Scorer<'_>, benchmark: &Benchmark) -> Result<EvalReport, EvalError> {
    let taxonomy = scorer.taxonomy();
    let mut items = Vec::with_capacity(benchmark.len());
    for row in &benchmark.rows {
        let missing: Vec<&str> = [row.word1.as_str(), row.word2.as_str()]
            .into_iter()
            .filter(|w| taxonomy.senses_of(w).is_empty())
            .collect();
        let mut item = ItemScore {
            word1: row.word1.clone(),
            word2: row.word2.clone(),
            rating: row.rating,
            score: None,
            witness: None,
            reason: None,
        };
        if missing.is_empty() {
            let s = scorer.word_similarity(measure, &row.word1, &row.word2)?;
            item.score = Some(s.value);
            item.witness = s.witness.map(|c| taxonomy.name(c).to_string());
        } else {
            item.reason = Some(format!("not in taxonomy: {}", missing.join(", ")));
        }
        items.push(item);
    }

    let (human, scores): (Vec<f64>, Vec<f64>) = items
        .iter()
        .filter_map(|i| i.score.map(|s| (i.rating, s)))
        .unzip();
    if scores.len() < 2 {
        return Err(EvalError::TooFewPoints(scores.len()));
    }
    Ok(EvalReport {
        measure,
        benchmark: benchmark.name.clone(),
        r: pearson(&human, &scores)?,
        spearman: spearman(&human, &scores)?,
        items,
    })
}

/// Evaluates every word-level measure among `measures`.
pub fn evaluate_all(
    measures: &[Measure],
    scorer: &Scorer<'_>,
    benchmark: &Benchmark,
) -> Result<Vec<EvalReport>, EvalError> {
    measures
        .iter()
        .map(|&m| {
            if m == Measure::Weighted {
                Err(EvalError::Similarity(SimilarityError::ConceptOnly("weighted")))
            } else {
                evaluate(m, scorer, benchmark)
            }
        })
        .collect()
}

/// A correlation recomputed from the printed per-item table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayResult {
    pub column: &'static str,
    pub r: f64,
    pub target: f64,
    pub tolerance: f64,
}

impl ReplayResult {
    pub fn passed(&self) -> bool {
        (self.r - self.target).abs() <= self.tolerance
    }
}

/// Correlates each score column of the bundled table with the
/// Miller–Charles means.
pub fn replay_table2() -> Vec<ReplayResult> {
    let rows = fixtures::table2();
    let mc: Vec<f64> = rows.iter().map(|r| r.mc_mean).collect();
    let column = |f: fn(&Table2Row) -> f64| -> Vec<f64> { rows.iter().map(f).collect() };
    [
        ("ic", column(|r| r.sim_ic), fixtures::TARGET_R_IC),
        ("edge", column(|r| r.sim_edge), fixtures::TARGET_R_EDGE),
        ("prob", column(|r| r.sim_prob), fixtures::TARGET_R_PROB),
    ]
    .into_iter()
    .map(|(name, ys, target)| ReplayResult {
        column: name,
        r: pearson(&mc, &ys).expect("fixture columns vary"),
        target,
        tolerance: fixtures::REPLAY_TOLERANCE,
    })
    .collect()
}
