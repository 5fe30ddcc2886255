//! Browser bindings for taxsim.
//!
//! Every export returns a JSON string so the page needs no glue beyond
//! `JSON.parse`. The plain Rust methods carry the logic and are tested
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use taxsim::evaluation::replay_table2;
use taxsim::fixtures::{self, table2};
use taxsim::{FrequencyTable, LogBase, Measure, ProbabilityModel, Scorer, Taxonomy};

#[derive(Serialize)]
struct MeasureRow {
    measure: &'static str,
    value: f64,
    witness: Option<String>,
    senses: Option<(String, String)>,
}

#[derive(Serialize)]
struct Comparison {
    word1: String,
    word2: String,
    rows: Vec<MeasureRow>,
}

#[derive(Serialize)]
struct ConceptRow<'a> {
    name: &'a str,
    freq: u64,
    p: f64,
    /// `null` when the concept has no mass
    ic: Option<f64>,
    depth: u32,
    parents: Vec<&'a str>,
}

#[derive(Serialize)]
struct ReplayPoint {
    word1: &'static str,
    word2: &'static str,
    human: f64,
    ic: f64,
    edge: f64,
    prob: f64,
}

#[derive(Serialize)]
struct Replay {
    results: Vec<taxsim::evaluation::ReplayResult>,
    points: Vec<ReplayPoint>,
}

/// A loaded taxonomy with its probability model.
#[wasm_bindgen]
pub struct Session {
    taxonomy: Taxonomy,
    model: ProbabilityModel,
}

impl Session {
    pub fn load(edges: &str, lexicon: &str, counts: &str, log_base: f64, plural_fold: bool) -> taxsim::Result<Self> {
        let taxonomy = Taxonomy::from_tsv(edges, lexicon)?;
        let freqs = FrequencyTable::load(counts, plural_fold, &taxonomy)?;
        let model = ProbabilityModel::build(&taxonomy, &freqs, LogBase::new(log_base)?)?;
        Ok(Session { taxonomy, model })
    }

    pub fn load_mini() -> Self {
        let (taxonomy, model) = fixtures::mini_model(LogBase::TWO).expect("bundled taxonomy loads");
        Session { taxonomy, model }
    }

    pub fn compare_json(&self, w1: &str, w2: &str) -> taxsim::Result<String> {
        let scorer = Scorer::new(&self.taxonomy, &self.model);
        let name = |c| self.taxonomy.name(c).to_string();
        let mut rows = Vec::new();
        for measure in Measure::WORD_LEVEL {
            let s = scorer.word_similarity(measure, w1, w2)?;
            rows.push(MeasureRow {
                measure: measure.name(),
                value: s.value,
                witness: s.witness.map(name),
                senses: s.sense_pair.map(|(a, b)| (name(a), name(b))),
            });
        }
        let out = Comparison {
            word1: w1.to_string(),
            word2: w2.to_string(),
            rows,
        };
        Ok(serde_json::to_string(&out).expect("serializable"))
    }

    pub fn concepts_json(&self) -> String {
        let t = &self.taxonomy;
        let mut rows: Vec<ConceptRow> = t
            .concepts()
            .map(|c| {
                let ic = self.model.ic(c).expect("known concept");
                ConceptRow {
                    name: t.name(c),
                    freq: self.model.freq(c).expect("known concept"),
                    p: self.model.probability(c).expect("known concept"),
                    ic: ic.is_finite().then_some(ic),
                    depth: t.depths().depth(c),
                    parents: t.parents(c).iter().map(|&p| t.name(p)).collect(),
                }
            })
            .collect();
        rows.sort_by(|a, b| a.name.cmp(b.name));
        serde_json::to_string(&rows).expect("serializable")
    }

    pub fn words_json(&self) -> String {
        let words: Vec<&str> = self.taxonomy.words().collect();
        serde_json::to_string(&words).expect("serializable")
    }
}

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
impl Session {
    #[wasm_bindgen(constructor)]
    pub fn new(edges: &str, lexicon: &str, counts: &str, log_base: f64, plural_fold: bool) -> Result<Session, JsError> {
        Session::load(edges, lexicon, counts, log_base, plural_fold).map_err(js_err)
    }

    /// The bundled WordNet-style sample.
    pub fn mini() -> Session {
        Session::load_mini()
    }

    /// All word-level measures for a pair, with witnesses.
    pub fn compare(&self, w1: &str, w2: &str) -> Result<String, JsError> {
        self.compare_json(w1, w2).map_err(js_err)
    }

    /// Frequency, probability, IC and depth for every concept.
    pub fn concepts(&self) -> String {
        self.concepts_json()
    }

    pub fn words(&self) -> String {
        self.words_json()
    }
}

/// Correlations recomputed from the bundled per-item table, plus the
/// points for a scatter plot.
#[wasm_bindgen]
pub fn replay() -> String {
    let points = table2()
        .into_iter()
        .map(|r| ReplayPoint {
            word1: r.word1,
            word2: r.word2,
            human: r.mc_mean,
            ic: r.sim_ic,
            edge: r.sim_edge,
            prob: r.sim_prob,
        })
        .collect();
    let out = Replay {
        results: replay_table2(),
        points,
    };
    serde_json::to_string(&out).expect("serializable")
}
