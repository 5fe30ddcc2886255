//! Similarity measures over concepts and words.
//!
//! Word-level scores maximize the concept-level score over every pair of
//! senses. Sense pairs are visited in ascending index order and only a
//! strictly better score replaces the current best, so ties resolve to the
//! smallest indices. The same rule picks the witness among subsumers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::SimilarityError;
use crate::probability::ProbabilityModel;
use crate::taxonomy::{intersect_sorted, ConceptId, Taxonomy};

/// Largest allowed distance of an alpha weight sum from 1.
pub const ALPHA_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    /// Information content of the most informative common subsumer.
    Resnik,
    /// `2 * MAX` minus the shortest IS-A path length.
    Edge,
    /// `1 - p(c)` of the least probable common subsumer.
    Prob,
    /// `-log(len / (2 * MAX))` with the zero length clamped to a floor.
    Lch,
    /// Alpha-weighted information content over all common subsumers.
    Weighted,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::Resnik,
        Measure::Edge,
        Measure::Prob,
        Measure::Lch,
        Measure::Weighted,
    ];

    /// Measures defined between words.
    pub const WORD_LEVEL: [Measure; 4] = [Measure::Resnik, Measure::Edge, Measure::Prob, Measure::Lch];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Resnik => "resnik",
            Measure::Edge => "edge",
            Measure::Prob => "prob",
            Measure::Lch => "lch",
            Measure::Weighted => "weighted",
        }
    }

    /// Whether the score scales with the logarithm base.
    pub fn is_logarithmic(self) -> bool {
        matches!(self, Measure::Resnik | Measure::Lch | Measure::Weighted)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown measure `{s}` (expected resnik, edge, prob, lch or weighted)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimScore {
    pub value: f64,
    /// The maximizing subsumer, for measures that pick one.
    pub witness: Option<ConceptId>,
    /// The maximizing senses, for word queries.
    pub sense_pair: Option<(ConceptId, ConceptId)>,
}

/// Weights over a set of common subsumers.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaWeights(BTreeMap<ConceptId, f64>);

impl AlphaWeights {
    /// Each weight must be finite and non-negative. The sum is checked when
    /// the weights are used.
    pub fn new(weights: impl IntoIterator<Item = (ConceptId, f64)>) -> Result<Self, SimilarityError> {
        let mut map = BTreeMap::new();
        for (c, w) in weights {
            if !w.is_finite() || w < 0.0 {
                return Err(SimilarityError::InvalidWeight(format!("{c} = {w}")));
            }
            *map.entry(c).or_insert(0.0) += w;
        }
        Ok(AlphaWeights(map))
    }

    pub fn uniform(concepts: &[ConceptId]) -> Self {
        let w = 1.0 / concepts.len() as f64;
        AlphaWeights(concepts.iter().map(|&c| (c, w)).collect())
    }

    /// All mass on `winner`, zero on every other member of `domain`.
    pub fn point_mass(domain: &[ConceptId], winner: ConceptId) -> Self {
        AlphaWeights(
            domain
                .iter()
                .map(|&c| (c, if c == winner { 1.0 } else { 0.0 }))
                .collect(),
        )
    }

    pub fn get(&self, c: ConceptId) -> Option<f64> {
        self.0.get(&c).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ConceptId, f64)> + '_ {
        self.0.iter().map(|(&c, &w)| (c, w))
    }

    pub fn sum(&self) -> f64 {
        self.0.values().sum()
    }
}

/// Similarity queries over one taxonomy and the model built on it.
#[derive(Debug, Clone, Copy)]
pub struct Scorer<'a> {
    taxonomy: &'a Taxonomy,
    model: &'a ProbabilityModel,
    lch_floor: f64,
}

impl<'a> Scorer<'a> {
    pub const DEFAULT_LCH_FLOOR: f64 = 1.0;

    pub fn new(taxonomy: &'a Taxonomy, model: &'a ProbabilityModel) -> Self {
        assert_eq!(
            taxonomy.len(),
            model.len(),
            "probability model was built over a different taxonomy"
        );
        Scorer {
            taxonomy,
            model,
            lch_floor: Self::DEFAULT_LCH_FLOOR,
        }
    }

    /// Sets the path length that stands in for 0 in the LCH measure.
    pub fn with_lch_floor(mut self, floor: f64) -> Result<Self, SimilarityError> {
        if !floor.is_finite() || floor <= 0.0 {
            return Err(SimilarityError::InvalidFloor(floor));
        }
        self.lch_floor = floor;
        Ok(self)
    }

    pub fn taxonomy(&self) -> &'a Taxonomy {
        self.taxonomy
    }

    pub fn model(&self) -> &'a ProbabilityModel {
        self.model
    }

    pub fn lch_floor(&self) -> f64 {
        self.lch_floor
    }

    fn check(&self, c: ConceptId) -> Result<(), SimilarityError> {
        if self.taxonomy.contains(c) {
            Ok(())
        } else {
            Err(SimilarityError::UnknownConcept(c.to_string()))
        }
    }

    fn common(&self, c1: ConceptId, c2: ConceptId) -> Vec<ConceptId> {
        intersect_sorted(
            self.taxonomy.subsumers_unchecked(c1),
            self.taxonomy.subsumers_unchecked(c2),
        )
    }

    /// Common subsumers of `c1` and `c2` with finite information content.
    pub fn informative_subsumers(
        &self,
        c1: ConceptId,
        c2: ConceptId,
    ) -> Result<Vec<ConceptId>, SimilarityError> {
        self.check(c1)?;
        self.check(c2)?;
        let ic = self.model.ic_slice();
        Ok(self
            .common(c1, c2)
            .into_iter()
            .filter(|c| ic[c.index()].is_finite())
            .collect())
    }

    fn no_finite(&self, c1: ConceptId, c2: ConceptId) -> SimilarityError {
        SimilarityError::NoFiniteSubsumer(
            self.taxonomy.name(c1).to_string(),
            self.taxonomy.name(c2).to_string(),
        )
    }

    /// Maximum information content over the common subsumers.
    pub fn resnik_concepts(&self, c1: ConceptId, c2: ConceptId) -> Result<SimScore, SimilarityError> {
        self.check(c1)?;
        self.check(c2)?;
        let ic = self.model.ic_slice();
        let mut best: Option<(f64, ConceptId)> = None;
        for c in self.common(c1, c2) {
            let v = ic[c.index()];
            if v.is_finite() && best.is_none_or(|(b, _)| v > b) {
                best = Some((v, c));
            }
        }
        let (value, witness) = best.ok_or_else(|| self.no_finite(c1, c2))?;
        Ok(SimScore {
            value,
            witness: Some(witness),
            sense_pair: None,
        })
    }

    /// Maximum of `1 - p(c)` over the common subsumers.
    pub fn prob_concepts(&self, c1: ConceptId, c2: ConceptId) -> Result<SimScore, SimilarityError> {
        self.check(c1)?;
        self.check(c2)?;
        let p = self.model.p_slice();
        let mut best: Option<(f64, ConceptId)> = None;
        for c in self.common(c1, c2) {
            let v = 1.0 - p[c.index()];
            if best.is_none_or(|(b, _)| v > b) {
                best = Some((v, c));
            }
        }
        let (value, witness) = best.expect("root subsumes every concept");
        Ok(SimScore {
            value,
            witness: Some(witness),
            sense_pair: None,
        })
    }

    fn two_max(&self) -> f64 {
        2.0 * f64::from(self.taxonomy.max_depth())
    }

    fn lch_value(&self, len: u32) -> Result<f64, SimilarityError> {
        if self.taxonomy.max_depth() == 0 {
            return Err(SimilarityError::FlatTaxonomy);
        }
        let len = if len == 0 { self.lch_floor } else { f64::from(len) };
        Ok(self.model.log_base().neg_log(len / self.two_max()))
    }

    pub fn edge_concepts(&self, c1: ConceptId, c2: ConceptId) -> Result<SimScore, SimilarityError> {
        let len = self.path_len(c1, c2)?;
        Ok(SimScore {
            value: self.two_max() - f64::from(len),
            witness: None,
            sense_pair: None,
        })
    }

    pub fn lch_concepts(&self, c1: ConceptId, c2: ConceptId) -> Result<SimScore, SimilarityError> {
        let len = self.path_len(c1, c2)?;
        Ok(SimScore {
            value: self.lch_value(len)?,
            witness: None,
            sense_pair: None,
        })
    }

    fn path_len(&self, c1: ConceptId, c2: ConceptId) -> Result<u32, SimilarityError> {
        self.taxonomy
            .shortest_path_len(c1, c2)
            .map_err(|_| SimilarityError::UnknownConcept(format!("{c1} or {c2}")))
    }

    /// Sum of `alpha(c) * ic(c)` over the informative common subsumers.
    ///
    /// `alpha` must cover exactly those subsumers and sum to 1.
    pub fn weighted_concepts(
        &self,
        c1: ConceptId,
        c2: ConceptId,
        alpha: &AlphaWeights,
    ) -> Result<f64, SimilarityError> {
        let domain = self.informative_subsumers(c1, c2)?;
        if domain.is_empty() {
            return Err(self.no_finite(c1, c2));
        }
        let keys: Vec<ConceptId> = alpha.0.keys().copied().collect();
        if keys != domain {
            let show = |ids: &[ConceptId]| {
                ids.iter()
                    .map(|&c| {
                        if self.taxonomy.contains(c) {
                            self.taxonomy.name(c).to_string()
                        } else {
                            c.to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(SimilarityError::WeightDomain(format!(
                "expected {{{}}}, got {{{}}}",
                show(&domain),
                show(&keys)
            )));
        }
        let sum = alpha.sum();
        if (sum - 1.0).abs() > ALPHA_SUM_TOLERANCE {
            return Err(SimilarityError::WeightSum(sum));
        }
        let ic = self.model.ic_slice();
        Ok(alpha.iter().map(|(c, w)| w * ic[c.index()]).sum())
    }

    /// Uniform weights over the informative common subsumers.
    pub fn uniform_alpha(&self, c1: ConceptId, c2: ConceptId) -> Result<AlphaWeights, SimilarityError> {
        Ok(AlphaWeights::uniform(&self.informative_subsumers(c1, c2)?))
    }

    /// Any measure between two concepts; `Weighted` uses uniform weights.
    pub fn concept_similarity(
        &self,
        measure: Measure,
        c1: ConceptId,
        c2: ConceptId,
    ) -> Result<SimScore, SimilarityError> {
        match measure {
            Measure::Resnik => self.resnik_concepts(c1, c2),
            Measure::Prob => self.prob_concepts(c1, c2),
            Measure::Edge => self.edge_concepts(c1, c2),
            Measure::Lch => self.lch_concepts(c1, c2),
            Measure::Weighted => {
                let alpha = self.uniform_alpha(c1, c2)?;
                Ok(SimScore {
                    value: self.weighted_concepts(c1, c2, &alpha)?,
                    witness: None,
                    sense_pair: None,
                })
            }
        }
    }

    fn senses(&self, word: &str) -> Result<&'a [ConceptId], SimilarityError> {
        let s = self.taxonomy.senses_of(word);
        if s.is_empty() {
            Err(SimilarityError::UnknownWord(word.to_string()))
        } else {
            Ok(s)
        }
    }

    fn max_over_senses(
        &self,
        w1: &str,
        w2: &str,
        score: impl Fn(ConceptId, ConceptId) -> Result<SimScore, SimilarityError>,
    ) -> Result<SimScore, SimilarityError> {
        let (s1, s2) = (self.senses(w1)?, self.senses(w2)?);
        let mut best: Option<SimScore> = None;
        let mut last_err = None;
        for &c1 in s1 {
            for &c2 in s2 {
                match score(c1, c2) {
                    Ok(s) => {
                        if best.is_none_or(|b| s.value > b.value) {
                            best = Some(SimScore {
                                sense_pair: Some((c1, c2)),
                                ..s
                            });
                        }
                    }
                    Err(e @ SimilarityError::NoFiniteSubsumer(..)) => last_err = Some(e),
                    Err(e) => return Err(e),
                }
            }
        }
        best.ok_or_else(|| last_err.expect("non-empty sense sets"))
    }

    pub fn resnik_words(&self, w1: &str, w2: &str) -> Result<SimScore, SimilarityError> {
        self.max_over_senses(w1, w2, |a, b| self.resnik_concepts(a, b))
    }

    pub fn prob_words(&self, w1: &str, w2: &str) -> Result<SimScore, SimilarityError> {
        self.max_over_senses(w1, w2, |a, b| self.prob_concepts(a, b))
    }

    /// Shortest path between any sense of `w1` and any sense of `w2`, with
    /// the sense pair that attains it.
    pub fn min_sense_path(&self, w1: &str, w2: &str) -> Result<(u32, (ConceptId, ConceptId)), SimilarityError> {
        let (s1, s2) = (self.senses(w1)?, self.senses(w2)?);
        let mut best: Option<(u32, (ConceptId, ConceptId))> = None;
        for &c1 in s1 {
            let mut remaining = s2.len();
            let dist = self.taxonomy.bfs(c1, |c| {
                if s2.binary_search(&c).is_ok() {
                    remaining -= 1;
                }
                remaining == 0
            });
            for &c2 in s2 {
                let d = dist[c2.index()];
                if best.is_none_or(|(b, _)| d < b) {
                    best = Some((d, (c1, c2)));
                }
            }
        }
        Ok(best.expect("non-empty sense sets"))
    }

    pub fn edge_words(&self, w1: &str, w2: &str) -> Result<SimScore, SimilarityError> {
        let (len, pair) = self.min_sense_path(w1, w2)?;
        Ok(SimScore {
            value: self.two_max() - f64::from(len),
            witness: None,
            sense_pair: Some(pair),
        })
    }

    pub fn lch_words(&self, w1: &str, w2: &str) -> Result<SimScore, SimilarityError> {
        let (len, pair) = self.min_sense_path(w1, w2)?;
        Ok(SimScore {
            value: self.lch_value(len)?,
            witness: None,
            sense_pair: Some(pair),
        })
    }

    /// Any word-level measure. `Weighted` is only defined between concepts.
    pub fn word_similarity(&self, measure: Measure, w1: &str, w2: &str) -> Result<SimScore, SimilarityError> {
        match measure {
            Measure::Resnik => self.resnik_words(w1, w2),
            Measure::Edge => self.edge_words(w1, w2),
            Measure::Prob => self.prob_words(w1, w2),
            Measure::Lch => self.lch_words(w1, w2),
            Measure::Weighted => Err(SimilarityError::ConceptOnly("weighted")),
        }
    }
}
