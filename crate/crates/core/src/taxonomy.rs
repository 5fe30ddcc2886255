//! The IS-A taxonomy: an immutable DAG of concepts with multiple inheritance
//! and a word-to-sense index.
//!
//! Concepts are interned to dense indices assigned in sorted order of their
//! string ids, so every derived quantity (and every tie-break that relies on
//! index order) is independent of the order of lines in the input files.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::TaxonomyError;

/// Dense index of a concept within one [`Taxonomy`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConceptId(u32);

impl ConceptId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        ConceptId(u32::try_from(i).expect("more than u32::MAX concepts"))
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Depth of every concept, measured along the longest IS-A chain from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthInfo {
    depths: Vec<u32>,
    max_depth: u32,
}

impl DepthInfo {
    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn depth(&self, c: ConceptId) -> u32 {
        self.depths[c.index()]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.depths
    }
}

/// Lowercases a word the way both the lexicon loader and queries do.
pub fn normalize_word(word: &str) -> String {
    word.trim().to_lowercase()
}

/// Incremental construction of a [`Taxonomy`].
///
/// Concepts are introduced either explicitly through [`declare_concept`]
/// or implicitly by appearing in an edge. Sense entries must name concepts
/// that exist by the time [`build`] runs.
///
/// [`declare_concept`]: TaxonomyBuilder::declare_concept
/// [`build`]: TaxonomyBuilder::build
#[derive(Debug, Default, Clone)]
pub struct TaxonomyBuilder {
    concepts: BTreeSet<String>,
    declared: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
    // (word, concept, source line)
    senses: Vec<(String, String, usize)>,
}

impl TaxonomyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a standalone concept. Declaring the same id twice is an error.
    pub fn declare_concept(&mut self, id: &str) -> Result<&mut Self, TaxonomyError> {
        if !self.declared.insert(id.to_string()) {
            return Err(TaxonomyError::DuplicateConcept(id.to_string()));
        }
        self.concepts.insert(id.to_string());
        Ok(self)
    }

    /// Adds `child IS-A parent`. Repeated edges are idempotent.
    pub fn add_edge(&mut self, child: &str, parent: &str) -> &mut Self {
        self.concepts.insert(child.to_string());
        self.concepts.insert(parent.to_string());
        self.edges.insert((child.to_string(), parent.to_string()));
        self
    }

    pub fn add_sense(&mut self, word: &str, concept: &str) -> &mut Self {
        self.add_sense_at(word, concept, 0)
    }

    fn add_sense_at(&mut self, word: &str, concept: &str, line: usize) -> &mut Self {
        self.senses
            .push((normalize_word(word), concept.to_string(), line));
        self
    }

    /// Parses `child<TAB>parent` lines into the builder.
    pub fn read_edges(&mut self, text: &str) -> Result<&mut Self, TaxonomyError> {
        for (_, child, parent) in tsv_pairs(text)? {
            self.add_edge(child, parent);
        }
        Ok(self)
    }

    /// Parses `word<TAB>concept_id` lines into the builder.
    pub fn read_lexicon(&mut self, text: &str) -> Result<&mut Self, TaxonomyError> {
        for (line, word, concept) in tsv_pairs(text)? {
            self.add_sense_at(word, concept, line);
        }
        Ok(self)
    }

    pub fn build(&self) -> Result<Taxonomy, TaxonomyError> {
        if self.concepts.is_empty() {
            return Err(TaxonomyError::Empty);
        }

        let mut names: Vec<String> = self.concepts.iter().cloned().collect();
        let index: HashMap<String, ConceptId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ConceptId::from_index(i)))
            .collect();

        let mut parents = vec![Vec::new(); names.len()];
        let mut children = vec![Vec::new(); names.len()];
        for (child, parent) in &self.edges {
            let (c, p) = (index[child], index[parent]);
            if c == p {
                return Err(TaxonomyError::Cycle(vec![child.clone(), parent.clone()]));
            }
            parents[c.index()].push(p);
            children[p.index()].push(c);
        }
        let mut edge_count = self.edges.len();

        let mut senses: BTreeMap<String, Vec<ConceptId>> = BTreeMap::new();
        for (word, concept, line) in &self.senses {
            let id = *index.get(concept).ok_or_else(|| TaxonomyError::DanglingReference {
                id: concept.clone(),
                line: *line,
            })?;
            senses.entry(word.clone()).or_default().push(id);
        }
        for ids in senses.values_mut() {
            ids.sort_unstable();
            ids.dedup();
        }

        // Cycle check before any root is synthesized.
        topological_order(&parents, &children).map_err(|cycle| {
            TaxonomyError::Cycle(cycle.iter().map(|c| names[c.index()].clone()).collect())
        })?;

        let tops: Vec<ConceptId> = (0..names.len())
            .filter(|&i| parents[i].is_empty())
            .map(ConceptId::from_index)
            .collect();
        let (root, synthetic_root) = if tops.len() == 1 {
            (tops[0], false)
        } else {
            let root = ConceptId::from_index(names.len());
            names.push(synthetic_root_name(&index));
            parents.push(Vec::new());
            children.push(tops.clone());
            for t in &tops {
                parents[t.index()].push(root);
            }
            edge_count += tops.len();
            (root, true)
        };
        let index: HashMap<String, ConceptId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ConceptId::from_index(i)))
            .collect();

        for list in parents.iter_mut().chain(children.iter_mut()) {
            list.sort_unstable();
        }

        let topo = topological_order(&parents, &children).expect("acyclic after validation");
        let ancestors = ancestor_sets(&parents, &topo);
        let depths = depths_in_order(&parents, &topo);

        Ok(Taxonomy {
            names,
            index,
            parents,
            children,
            ancestors,
            senses,
            root,
            synthetic_root,
            edge_count,
            topo,
            depths,
        })
    }
}

fn synthetic_root_name(index: &HashMap<String, ConceptId>) -> String {
    let mut name = "<root>".to_string();
    let mut n = 1;
    while index.contains_key(&name) {
        name = format!("<root>#{n}");
        n += 1;
    }
    name
}

fn tsv_pairs(text: &str) -> Result<Vec<(usize, &str, &str)>, TaxonomyError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split('\t');
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a.trim(), b.trim()),
            _ => {
                return Err(TaxonomyError::Malformed {
                    line,
                    message: "expected exactly two tab-separated fields".into(),
                })
            }
        };
        if a.is_empty() || b.is_empty() {
            return Err(TaxonomyError::Malformed {
                line,
                message: "empty field".into(),
            });
        }
        out.push((line, a, b));
    }
    Ok(out)
}

/// Kahn's algorithm from the parentless nodes downwards. On failure returns
/// one cycle, listed child-to-parent with the first node repeated at the end.
fn topological_order(
    parents: &[Vec<ConceptId>],
    children: &[Vec<ConceptId>],
) -> Result<Vec<ConceptId>, Vec<ConceptId>> {
    let n = parents.len();
    let mut pending: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(ConceptId::from_index(u));
        for &c in &children[u] {
            pending[c.index()] -= 1;
            if pending[c.index()] == 0 {
                queue.push_back(c.index());
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every unprocessed node still has an unprocessed parent, so walking
    // parent links inside that set must revisit a node.
    let start = (0..n).find(|&i| pending[i] > 0).expect("unprocessed node");
    let mut seen_at = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut u = start;
    while seen_at[u] == usize::MAX {
        seen_at[u] = path.len();
        path.push(ConceptId::from_index(u));
        u = parents[u]
            .iter()
            .map(|p| p.index())
            .find(|&p| pending[p] > 0)
            .expect("unprocessed parent");
    }
    let mut cycle = path.split_off(seen_at[u]);
    cycle.push(ConceptId::from_index(u));
    Err(cycle)
}

fn ancestor_sets(parents: &[Vec<ConceptId>], topo: &[ConceptId]) -> Vec<Vec<ConceptId>> {
    let mut sets: Vec<Vec<ConceptId>> = vec![Vec::new(); parents.len()];
    for &c in topo {
        let mut set = vec![c];
        for p in &parents[c.index()] {
            set.extend_from_slice(&sets[p.index()]);
        }
        set.sort_unstable();
        set.dedup();
        sets[c.index()] = set;
    }
    sets
}

fn depths_in_order(parents: &[Vec<ConceptId>], topo: &[ConceptId]) -> DepthInfo {
    let mut depths = vec![0u32; parents.len()];
    for &c in topo {
        depths[c.index()] = parents[c.index()]
            .iter()
            .map(|p| depths[p.index()] + 1)
            .max()
            .unwrap_or(0);
    }
    let max_depth = depths.iter().copied().max().unwrap_or(0);
    DepthInfo { depths, max_depth }
}

/// A validated IS-A taxonomy with a unique root.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    names: Vec<String>,
    index: HashMap<String, ConceptId>,
    parents: Vec<Vec<ConceptId>>,
    children: Vec<Vec<ConceptId>>,
    // Reflexive ancestor sets, sorted by index.
    ancestors: Vec<Vec<ConceptId>>,
    senses: BTreeMap<String, Vec<ConceptId>>,
    root: ConceptId,
    synthetic_root: bool,
    edge_count: usize,
    topo: Vec<ConceptId>,
    depths: DepthInfo,
}

impl Taxonomy {
    /// Loads a taxonomy from the text of an edge file and a lexicon file.
    pub fn from_tsv(edges: &str, lexicon: &str) -> Result<Self, TaxonomyError> {
        TaxonomyBuilder::new()
            .read_edges(edges)?
            .read_lexicon(lexicon)?
            .build()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn word_count(&self) -> usize {
        self.senses.len()
    }

    pub fn root(&self) -> ConceptId {
        self.root
    }

    /// True when the root was inserted above several parentless concepts.
    pub fn has_synthetic_root(&self) -> bool {
        self.synthetic_root
    }

    pub fn concept(&self, name: &str) -> Option<ConceptId> {
        self.index.get(name).copied()
    }

    pub fn resolve(&self, name: &str) -> Result<ConceptId, TaxonomyError> {
        self.concept(name)
            .ok_or_else(|| TaxonomyError::UnknownConcept(name.to_string()))
    }

    pub fn name(&self, c: ConceptId) -> &str {
        &self.names[c.index()]
    }

    pub fn concepts(&self) -> impl ExactSizeIterator<Item = ConceptId> + '_ {
        (0..self.names.len()).map(ConceptId::from_index)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> + '_ {
        self.senses.keys().map(String::as_str)
    }

    pub fn contains(&self, c: ConceptId) -> bool {
        c.index() < self.names.len()
    }

    fn check(&self, c: ConceptId) -> Result<(), TaxonomyError> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(TaxonomyError::UnknownConcept(c.to_string()))
        }
    }

    pub fn parents(&self, c: ConceptId) -> &[ConceptId] {
        &self.parents[c.index()]
    }

    pub fn children(&self, c: ConceptId) -> &[ConceptId] {
        &self.children[c.index()]
    }

    /// Concepts ordered so that every parent precedes its children.
    pub fn topological_order(&self) -> &[ConceptId] {
        &self.topo
    }

    /// All ancestors of `c`, including `c` itself, sorted by index.
    pub fn subsumers(&self, c: ConceptId) -> Result<&[ConceptId], TaxonomyError> {
        self.check(c)?;
        Ok(&self.ancestors[c.index()])
    }

    pub(crate) fn subsumers_unchecked(&self, c: ConceptId) -> &[ConceptId] {
        &self.ancestors[c.index()]
    }

    /// Concepts subsuming both `a` and `b`, sorted by index. Never empty.
    pub fn common_subsumers(
        &self,
        a: ConceptId,
        b: ConceptId,
    ) -> Result<Vec<ConceptId>, TaxonomyError> {
        self.check(a)?;
        self.check(b)?;
        Ok(intersect_sorted(
            &self.ancestors[a.index()],
            &self.ancestors[b.index()],
        ))
    }

    /// Fewest IS-A edges between `a` and `b`, edges traversable both ways.
    pub fn shortest_path_len(&self, a: ConceptId, b: ConceptId) -> Result<u32, TaxonomyError> {
        self.check(a)?;
        self.check(b)?;
        let dist = self.bfs(a, |c| c == b);
        Ok(dist[b.index()])
    }

    /// Undirected BFS distances from `source`; stops once `done` accepts a
    /// settled node. Unsettled entries hold `u32::MAX`.
    pub(crate) fn bfs(&self, source: ConceptId, mut done: impl FnMut(ConceptId) -> bool) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        dist[source.index()] = 0;
        if done(source) {
            return dist;
        }
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u.index()] + 1;
            for &v in self.parents[u.index()].iter().chain(&self.children[u.index()]) {
                if dist[v.index()] == u32::MAX {
                    dist[v.index()] = next;
                    if done(v) {
                        return dist;
                    }
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn depths(&self) -> &DepthInfo {
        &self.depths
    }

    /// Recomputes depths in one pass over the topological order.
    pub fn compute_depths(&self) -> DepthInfo {
        depths_in_order(&self.parents, &self.topo)
    }

    pub fn max_depth(&self) -> u32 {
        self.depths.max_depth
    }

    /// The sense set of `word` after case normalization; empty when unknown.
    pub fn senses_of(&self, word: &str) -> &[ConceptId] {
        self.senses
            .get(&normalize_word(word))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Every word with its sorted sense set.
    pub fn sense_map(&self) -> &BTreeMap<String, Vec<ConceptId>> {
        &self.senses
    }
}

pub(crate) fn intersect_sorted(a: &[ConceptId], b: &[ConceptId]) -> Vec<ConceptId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
