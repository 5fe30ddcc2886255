//! Random taxonomy instances and brute-force oracles.
//!
//! The oracles work on the generator's own name-level edge lists and never
//! call into the crate's ancestor sets, BFS or propagation code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use taxsim::{FrequencyTable, LogBase, ProbabilityModel, Taxonomy};

pub const VIRTUAL_ROOT: &str = "<root>";

#[derive(Debug, Clone)]
pub struct Instance {
    pub concepts: Vec<String>,
    /// (child, parent), including edges to the virtual root when one is needed
    pub edges: Vec<(String, String)>,
    /// edges as written to the input file
    pub file_edges: Vec<(String, String)>,
    pub senses: BTreeMap<String, Vec<String>>,
    pub counts: BTreeMap<String, u64>,
}

impl Instance {
    pub fn random(seed: u64) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(2..=50);
        let concepts: Vec<String> = (0..n).map(|i| format!("c{i:02}")).collect();
        let tops = rng.gen_range(1..=3.min(n - 1));
        let mut file_edges = Vec::new();
        for i in tops..n {
            // parents come from lower indices; several parents make diamonds
            let k = if rng.gen_bool(0.3) { rng.gen_range(2..=3) } else { 1 };
            let mut ps = BTreeSet::new();
            for _ in 0..k {
                ps.insert(rng.gen_range(0..i));
            }
            for p in ps {
                file_edges.push((concepts[i].clone(), concepts[p].clone()));
            }
        }
        let mut all = concepts.clone();
        let mut edges = file_edges.clone();
        let parentless: Vec<String> = (0..tops).map(|i| concepts[i].clone()).collect();
        // a parentless concept with no children never appears in the edge file
        let referenced: BTreeSet<&String> = file_edges.iter().flat_map(|(c, p)| [c, p]).collect();
        let present_tops: Vec<String> = parentless
            .iter()
            .filter(|t| referenced.contains(t))
            .cloned()
            .collect();
        all.retain(|c| referenced.contains(c));
        if present_tops.len() > 1 {
            all.push(VIRTUAL_ROOT.to_string());
            for t in &present_tops {
                edges.push((t.clone(), VIRTUAL_ROOT.to_string()));
            }
        }

        let n_words = rng.gen_range(1..=30);
        let mut senses = BTreeMap::new();
        let mut counts = BTreeMap::new();
        let real: Vec<&String> = all.iter().filter(|c| *c != VIRTUAL_ROOT).collect();
        for j in 0..n_words {
            let word = format!("w{j:02}");
            let k = if rng.gen_bool(0.4) { rng.gen_range(2..=3) } else { 1 };
            let mut ss = BTreeSet::new();
            for _ in 0..k {
                ss.insert(real[rng.gen_range(0..real.len())].clone());
            }
            senses.insert(word.clone(), ss.into_iter().collect());
            if rng.gen_bool(0.85) {
                counts.insert(word, rng.gen_range(0..=100));
            }
        }
        // noise: counted words the lexicon does not know
        counts.insert("zz_unknown".into(), rng.gen_range(0..=100));
        // at least one attached word with mass
        let first = senses.keys().next().unwrap().clone();
        counts.insert(first, rng.gen_range(1..=100));

        Instance {
            concepts: all,
            edges,
            file_edges,
            senses,
            counts,
        }
    }

    pub fn edges_tsv(&self) -> String {
        self.file_edges
            .iter()
            .map(|(c, p)| format!("{c}\t{p}\n"))
            .collect()
    }

    pub fn lexicon_tsv(&self) -> String {
        self.senses
            .iter()
            .flat_map(|(w, ss)| ss.iter().map(move |s| format!("{w}\t{s}\n")))
            .collect()
    }

    pub fn counts_tsv(&self) -> String {
        self.counts.iter().map(|(w, c)| format!("{w}\t{c}\n")).collect()
    }

    pub fn taxonomy(&self) -> Taxonomy {
        Taxonomy::from_tsv(&self.edges_tsv(), &self.lexicon_tsv()).expect("generated DAG is valid")
    }

    pub fn model(&self, t: &Taxonomy, base: LogBase) -> ProbabilityModel {
        let f = FrequencyTable::parse(&self.counts_tsv()).unwrap();
        ProbabilityModel::build(t, &f, base).unwrap()
    }

    pub fn oracle(&self) -> Oracle {
        Oracle::new(self)
    }
}

/// Name-level reference computations.
pub struct Oracle {
    pub concepts: Vec<String>,
    pub parents: BTreeMap<String, Vec<String>>,
    pub ancestors: BTreeMap<String, BTreeSet<String>>,
    pub senses: BTreeMap<String, Vec<String>>,
    pub freq: BTreeMap<String, u64>,
    pub total: u64,
    pub dist: BTreeMap<(String, String), u32>,
    pub depth: BTreeMap<String, u32>,
    pub max_depth: u32,
}

fn collect_ancestors(
    c: &str,
    parents: &BTreeMap<String, Vec<String>>,
    out: &mut BTreeSet<String>,
) {
    if out.insert(c.to_string()) {
        for p in parents.get(c).into_iter().flatten() {
            collect_ancestors(p, parents, out);
        }
    }
}

fn longest_depth(
    c: &str,
    parents: &BTreeMap<String, Vec<String>>,
    memo: &mut BTreeMap<String, u32>,
) -> u32 {
    if let Some(&d) = memo.get(c) {
        return d;
    }
    let d = parents
        .get(c)
        .into_iter()
        .flatten()
        .map(|p| longest_depth(p, parents, memo) + 1)
        .max()
        .unwrap_or(0);
    memo.insert(c.to_string(), d);
    d
}

impl Oracle {
    fn new(inst: &Instance) -> Self {
        let concepts = inst.concepts.clone();
        let mut parents: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (c, p) in &inst.edges {
            parents.entry(c.clone()).or_default().push(p.clone());
        }
        let ancestors: BTreeMap<String, BTreeSet<String>> = concepts
            .iter()
            .map(|c| {
                let mut set = BTreeSet::new();
                collect_ancestors(c, &parents, &mut set);
                (c.clone(), set)
            })
            .collect();

        // words(c): a word is subsumed by c when any of its senses is
        let mut freq: BTreeMap<String, u64> = concepts.iter().map(|c| (c.clone(), 0)).collect();
        for c in &concepts {
            for (w, ss) in &inst.senses {
                let count = inst.counts.get(w).copied().unwrap_or(0);
                if ss.iter().any(|s| ancestors[s].contains(c)) {
                    *freq.get_mut(c).unwrap() += count;
                }
            }
        }
        let total: u64 = inst
            .senses
            .keys()
            .map(|w| inst.counts.get(w).copied().unwrap_or(0))
            .sum();

        // Floyd–Warshall on the undirected graph
        let n = concepts.len();
        let idx: BTreeMap<&String, usize> = concepts.iter().enumerate().map(|(i, c)| (c, i)).collect();
        const INF: u32 = u32::MAX / 4;
        let mut d = vec![vec![INF; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for (c, p) in &inst.edges {
            let (a, b) = (idx[c], idx[p]);
            d[a][b] = 1;
            d[b][a] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        let mut dist = BTreeMap::new();
        for (i, a) in concepts.iter().enumerate() {
            for (j, b) in concepts.iter().enumerate() {
                dist.insert((a.clone(), b.clone()), d[i][j]);
            }
        }

        let mut depth = BTreeMap::new();
        for c in &concepts {
            longest_depth(c, &parents, &mut depth);
        }
        let max_depth = depth.values().copied().max().unwrap_or(0);

        Oracle {
            concepts,
            parents,
            ancestors,
            senses: inst.senses.clone(),
            freq,
            total,
            dist,
            depth,
            max_depth,
        }
    }

    pub fn common(&self, a: &str, b: &str) -> Vec<String> {
        self.concepts
            .iter()
            .filter(|c| self.ancestors[a].contains(*c) && self.ancestors[b].contains(*c))
            .cloned()
            .collect()
    }

    pub fn p(&self, c: &str) -> f64 {
        self.freq[c] as f64 / self.total as f64
    }

    pub fn ic(&self, c: &str, base: f64) -> f64 {
        if self.freq[c] == 0 {
            f64::INFINITY
        } else if base == 2.0 {
            0.0 - self.p(c).log2()
        } else {
            0.0 - self.p(c).ln() / base.ln()
        }
    }

    fn sense_pairs(&self, w1: &str, w2: &str) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for a in &self.senses[w1] {
            for b in &self.senses[w2] {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }

    pub fn resnik_concepts(&self, a: &str, b: &str, base: f64) -> f64 {
        self.common(a, b)
            .iter()
            .map(|c| self.ic(c, base))
            .filter(|v| v.is_finite())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn resnik_words(&self, w1: &str, w2: &str, base: f64) -> f64 {
        self.sense_pairs(w1, w2)
            .iter()
            .map(|(a, b)| self.resnik_concepts(a, b, base))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn prob_words(&self, w1: &str, w2: &str) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for (a, b) in self.sense_pairs(w1, w2) {
            for c in self.common(&a, &b) {
                best = best.max(1.0 - self.p(&c));
            }
        }
        best
    }

    pub fn min_len(&self, w1: &str, w2: &str) -> u32 {
        self.sense_pairs(w1, w2)
            .into_iter()
            .map(|pair| self.dist[&pair])
            .min()
            .unwrap()
    }

    pub fn edge_words(&self, w1: &str, w2: &str) -> f64 {
        2.0 * self.max_depth as f64 - self.min_len(w1, w2) as f64
    }

    pub fn lch_words(&self, w1: &str, w2: &str, base: f64, floor: f64) -> f64 {
        let l = match self.min_len(w1, w2) {
            0 => floor,
            l => l as f64,
        };
        let x = l / (2.0 * self.max_depth as f64);
        if base == 2.0 {
            0.0 - x.log2()
        } else {
            0.0 - x.ln() / base.ln()
        }
    }

    /// Mean IC over the finite-IC common subsumers.
    pub fn uniform_weighted(&self, a: &str, b: &str, base: f64) -> f64 {
        let vals: Vec<f64> = self
            .common(a, b)
            .iter()
            .map(|c| self.ic(c, base))
            .filter(|v| v.is_finite())
            .collect();
        vals.iter().sum::<f64>() / vals.len() as f64
    }
}

/// Seeds for the randomized suites.
pub fn seeds(n: u64) -> impl Iterator<Item = u64> {
    (0..n).map(|i| 0x5eed_0000 + i * 7919)
}
