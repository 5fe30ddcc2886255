//! Corpus counts, concept frequencies, probabilities and information content.
//!
//! Every occurrence of a word is credited once to each concept that subsumes
//! any of the word's senses. The credit is applied through the union of the
//! senses' ancestor sets, so a word reaching a concept along several paths
//! (diamonds, or two senses under one ancestor) still counts once there.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{ModelError, TaxonomyError};
use crate::taxonomy::{normalize_word, ConceptId, Taxonomy};

/// Logarithm base used for information content. Must exceed 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase(f64);

impl LogBase {
    pub const TWO: LogBase = LogBase(2.0);
    pub const E: LogBase = LogBase(std::f64::consts::E);

    pub fn new(base: f64) -> Result<Self, ModelError> {
        if base.is_finite() && base > 1.0 {
            Ok(LogBase(base))
        } else {
            Err(ModelError::InvalidLogBase(base))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `-log_base(x)` for `x` in (0, 1]; exactly `0.0` at `x = 1`.
    pub fn neg_log(self, x: f64) -> f64 {
        let l = if self.0 == 2.0 { x.log2() } else { x.ln() / self.0.ln() };
        0.0 - l
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::TWO
    }
}

/// Raw per-word counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: BTreeMap<String, u64>,
    total_raw: u64,
}

impl FrequencyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` occurrences of `word` (lowercased), merging duplicates.
    pub fn add(&mut self, word: &str, count: u64) -> Result<(), ModelError> {
        let word = normalize_word(word);
        let overflow = || ModelError::Overflow(word.clone());
        self.total_raw = self.total_raw.checked_add(count).ok_or_else(overflow)?;
        let slot = self.counts.entry(word.clone()).or_insert(0);
        *slot = slot.checked_add(count).ok_or_else(overflow)?;
        Ok(())
    }

    /// Parses `word<TAB>count` lines; `#` lines and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let mut table = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim_end_matches('\r');
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let malformed = |message: &str| ModelError::Malformed {
                line,
                message: message.to_string(),
            };
            let mut fields = raw.split('\t');
            let (word, count) = match (fields.next(), fields.next(), fields.next()) {
                (Some(w), Some(c), None) if !w.trim().is_empty() => (w.trim(), c.trim()),
                _ => return Err(malformed("expected `word<TAB>count`")),
            };
            let value: i128 = count
                .parse()
                .map_err(|_| malformed("count is not a base-10 integer"))?;
            if value < 0 {
                return Err(ModelError::NegativeCount {
                    line,
                    word: word.to_string(),
                    value: i64::try_from(value).unwrap_or(i64::MIN),
                });
            }
            let value = u64::try_from(value).map_err(|_| malformed("count too large"))?;
            table.add(word, value)?;
        }
        Ok(table)
    }

    /// Parses a counts file, optionally folding plurals against `lexicon`.
    pub fn load(text: &str, plural_fold: bool, lexicon: &Taxonomy) -> Result<Self, ModelError> {
        let table = Self::parse(text)?;
        Ok(if plural_fold {
            table.fold_plurals(lexicon)
        } else {
            table
        })
    }

    /// Naive plural folding: a word ending in `s` that is not itself in the
    /// lexicon, but whose stem without the `s` is, adds its count to the stem.
    pub fn fold_plurals(&self, lexicon: &Taxonomy) -> Self {
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for (word, &count) in &self.counts {
            let target = match word.strip_suffix('s') {
                Some(stem)
                    if lexicon.senses_of(word).is_empty()
                        && !stem.is_empty()
                        && !lexicon.senses_of(stem).is_empty() =>
                {
                    stem
                }
                _ => word.as_str(),
            };
            // Cannot overflow: the folded total equals the unfolded total.
            *counts.entry(target.to_string()).or_insert(0) += count;
        }
        FrequencyTable {
            counts,
            total_raw: self.total_raw,
        }
    }

    pub fn get(&self, word: &str) -> u64 {
        self.counts.get(&normalize_word(word)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> + '_ {
        self.counts.iter().map(|(w, &c)| (w.as_str(), c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum of all counts, including words the taxonomy does not know.
    pub fn total_raw(&self) -> u64 {
        self.total_raw
    }
}

/// Frequencies, probabilities and information content for every concept.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityModel {
    freq: Vec<u64>,
    total: u64,
    p: Vec<f64>,
    ic: Vec<f64>,
    log_base: LogBase,
}

impl ProbabilityModel {
    pub fn build(
        taxonomy: &Taxonomy,
        table: &FrequencyTable,
        log_base: LogBase,
    ) -> Result<Self, ModelError> {
        let mut freq = vec![0u64; taxonomy.len()];
        // stamp[c] = last word (by position) credited to c
        let mut stamp = vec![usize::MAX; taxonomy.len()];
        for (w, (word, count)) in table.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for &sense in taxonomy.senses_of(word) {
                for &c in taxonomy.subsumers_unchecked(sense) {
                    if stamp[c.index()] != w {
                        stamp[c.index()] = w;
                        let slot = &mut freq[c.index()];
                        *slot = slot
                            .checked_add(count)
                            .ok_or_else(|| ModelError::Overflow(word.to_string()))?;
                    }
                }
            }
        }

        let total = freq[taxonomy.root().index()];
        if total == 0 {
            return Err(ModelError::NoMass);
        }
        let n = total as f64;
        let p: Vec<f64> = freq.iter().map(|&f| f as f64 / n).collect();
        let ic = freq
            .iter()
            .zip(&p)
            .map(|(&f, &p)| if f == 0 { f64::INFINITY } else { log_base.neg_log(p) })
            .collect();
        Ok(ProbabilityModel {
            freq,
            total,
            p,
            ic,
            log_base,
        })
    }

    /// Total count of words attached to the taxonomy; equals `freq(root)`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }

    pub fn len(&self) -> usize {
        self.freq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freq.is_empty()
    }

    fn check(&self, c: ConceptId) -> Result<usize, TaxonomyError> {
        let i = c.index();
        if i < self.freq.len() {
            Ok(i)
        } else {
            Err(TaxonomyError::UnknownConcept(c.to_string()))
        }
    }

    pub fn freq(&self, c: ConceptId) -> Result<u64, TaxonomyError> {
        self.check(c).map(|i| self.freq[i])
    }

    pub fn probability(&self, c: ConceptId) -> Result<f64, TaxonomyError> {
        self.check(c).map(|i| self.p[i])
    }

    /// Information content `-log p(c)`; `f64::INFINITY` when `freq(c) = 0`.
    pub fn ic(&self, c: ConceptId) -> Result<f64, TaxonomyError> {
        self.check(c).map(|i| self.ic[i])
    }

    pub(crate) fn ic_slice(&self) -> &[f64] {
        &self.ic
    }

    pub(crate) fn p_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn frequencies(&self) -> &[u64] {
        &self.freq
    }

    /// `concept_id<TAB>freq<TAB>p<TAB>ic` rows sorted by concept id.
    pub fn stats_tsv(&self, taxonomy: &Taxonomy) -> String {
        let mut rows: Vec<ConceptId> = taxonomy.concepts().collect();
        rows.sort_by(|&a, &b| taxonomy.name(a).cmp(taxonomy.name(b)));
        let mut out = String::new();
        for c in rows {
            let i = c.index();
            let _ = writeln!(
                out,
                "{}\t{}\t{:.4}\t{}",
                taxonomy.name(c),
                self.freq[i],
                self.p[i],
                format_ic(self.ic[i])
            );
        }
        out
    }
}

pub fn format_ic(ic: f64) -> String {
    if ic.is_infinite() {
        "inf".to_string()
    } else {
        format!("{ic:.4}")
    }
}
