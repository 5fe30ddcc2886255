mod common;

use common::{seeds, Instance};
use proptest::prelude::*;
use taxsim::evaluation::{pearson, spearman};
use taxsim::{FrequencyTable, LogBase, Measure, ProbabilityModel, Scorer, Taxonomy};

#[test]
fn generator_covers_diamonds_polysemy_and_synthetic_roots() {
    let (mut diamonds, mut polysemy, mut synthetic) = (0, 0, 0);
    for seed in seeds(250) {
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        diamonds += t.concepts().any(|c| t.parents(c).len() > 1) as usize;
        polysemy += inst.senses.values().any(|s| s.len() > 1) as usize;
        synthetic += t.has_synthetic_root() as usize;
    }
    assert!(diamonds > 100, "{diamonds}");
    assert!(polysemy > 100, "{polysemy}");
    assert!(synthetic > 20, "{synthetic}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subsumption_is_reflexive_transitive(seed in any::<u64>()) {
        let t = Instance::random(seed).taxonomy();
        prop_assert_eq!(t.topological_order().len(), t.len());
        for c in t.concepts() {
            let sub = t.subsumers(c).unwrap();
            prop_assert!(sub.contains(&c));
            prop_assert!(sub.contains(&t.root()));
            for &p in t.parents(c) {
                for a in t.subsumers(p).unwrap() {
                    prop_assert!(sub.contains(a));
                }
            }
        }
        prop_assert!(t.parents(t.root()).is_empty());
        prop_assert!(t.concepts().filter(|&c| c != t.root()).all(|c| !t.parents(c).is_empty()));
    }

    #[test]
    fn paths_match_floyd_warshall(seed in any::<u64>()) {
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        let o = inst.oracle();
        let ids: Vec<_> = t.concepts().collect();
        for &a in &ids {
            for &b in &ids {
                let d = t.shortest_path_len(a, b).unwrap();
                prop_assert_eq!(d, o.dist[&(t.name(a).to_string(), t.name(b).to_string())]);
                prop_assert_eq!(d, t.shortest_path_len(b, a).unwrap());
            }
        }
        // triangle inequality on a sample of triples
        for &a in ids.iter().step_by(3) {
            for &b in ids.iter().step_by(5) {
                for &c in ids.iter().step_by(7) {
                    let ac = t.shortest_path_len(a, c).unwrap();
                    let via = t.shortest_path_len(a, b).unwrap() + t.shortest_path_len(b, c).unwrap();
                    prop_assert!(ac <= via);
                }
            }
        }
    }

    #[test]
    fn depths_match_longest_chain(seed in any::<u64>()) {
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        let o = inst.oracle();
        let d = t.compute_depths();
        prop_assert_eq!(d.max_depth(), o.max_depth);
        for c in t.concepts() {
            prop_assert_eq!(d.depth(c), o.depth[t.name(c)]);
            prop_assert!(d.depth(c) >= t.shortest_path_len(t.root(), c).unwrap());
            prop_assert!(d.depth(c) <= d.max_depth());
        }
    }

    #[test]
    fn edge_order_is_irrelevant(seed in any::<u64>(), shuffle in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let inst = Instance::random(seed);
        let mut lines: Vec<String> = inst.edges_tsv().lines().map(str::to_string).collect();
        lines.shuffle(&mut rand::rngs::StdRng::seed_from_u64(shuffle));
        let shuffled = Taxonomy::from_tsv(&lines.join("\n"), &inst.lexicon_tsv()).unwrap();
        let t = inst.taxonomy();
        for c in t.concepts() {
            prop_assert_eq!(t.name(c), shuffled.name(c));
            prop_assert_eq!(t.parents(c), shuffled.parents(c));
        }
    }

    #[test]
    fn frequencies_are_monotone_and_conserved(seed in any::<u64>()) {
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        let m = inst.model(&t, LogBase::TWO);
        for c in t.concepts() {
            for &p in t.parents(c) {
                prop_assert!(m.freq(c).unwrap() <= m.freq(p).unwrap());
                prop_assert!(m.ic(c).unwrap() >= m.ic(p).unwrap());
            }
        }
        let attached: u64 = inst.senses.keys().map(|w| inst.counts.get(w).copied().unwrap_or(0)).sum();
        prop_assert_eq!(m.freq(t.root()).unwrap(), attached);
        prop_assert_eq!(m.probability(t.root()).unwrap(), 1.0);
        prop_assert_eq!(m.ic(t.root()).unwrap(), 0.0);
    }

    #[test]
    fn ic_is_equivariant_in_the_base(seed in any::<u64>(), base in 1.1f64..50.0) {
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        let m2 = inst.model(&t, LogBase::TWO);
        let mb = inst.model(&t, LogBase::new(base).unwrap());
        for c in t.concepts() {
            let (a, b) = (m2.ic(c).unwrap(), mb.ic(c).unwrap());
            if a.is_finite() {
                let want = a / base.log2();
                prop_assert!((b - want).abs() <= 1e-12 * want.abs().max(1.0));
            } else {
                prop_assert!(b.is_infinite());
            }
        }
    }

    #[test]
    fn extra_sense_under_an_ancestor_changes_nothing_there(seed in any::<u64>()) {
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        let m = inst.model(&t, LogBase::TWO);
        let (word, senses) = inst.senses.iter().find(|(w, _)| inst.counts.get(*w).copied().unwrap_or(0) > 0).unwrap();
        let first = t.concept(&senses[0]).unwrap();
        // attach `word` again below its first sense's parent
        let Some(&anchor) = t.parents(first).first() else { return Ok(()) };
        if t.has_synthetic_root() && anchor == t.root() {
            return Ok(());
        }
        let extra = format!("{}{}\t{}\n", inst.lexicon_tsv(), word, t.name(anchor));
        let t2 = Taxonomy::from_tsv(&inst.edges_tsv(), &extra).unwrap();
        let f = FrequencyTable::parse(&inst.counts_tsv()).unwrap();
        let m2 = ProbabilityModel::build(&t2, &f, LogBase::TWO).unwrap();
        for &a in t.subsumers(anchor).unwrap() {
            prop_assert_eq!(m.freq(a).unwrap(), m2.freq(a).unwrap());
        }
    }

    #[test]
    fn word_scores_dominate_sense_scores(seed in any::<u64>()) {
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        let m = inst.model(&t, LogBase::TWO);
        let s = Scorer::new(&t, &m);
        let words: Vec<&String> = inst.senses.keys().take(8).collect();
        for w1 in &words {
            for w2 in &words {
                let best = s.resnik_words(w1, w2).unwrap().value;
                for &c1 in t.senses_of(w1) {
                    for &c2 in t.senses_of(w2) {
                        prop_assert!(best >= s.resnik_concepts(c1, c2).unwrap().value);
                    }
                }
            }
        }
    }

    #[test]
    fn superordinates_never_win(seed in any::<u64>()) {
        // the maximum over all common subsumers is attained on the minimal ones
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        let m = inst.model(&t, LogBase::TWO);
        let s = Scorer::new(&t, &m);
        let ids: Vec<_> = t.concepts().filter(|&c| m.freq(c).unwrap() > 0).collect();
        for &a in &ids {
            for &b in &ids {
                let r = s.resnik_concepts(a, b).unwrap();
                let w = r.witness.unwrap();
                let common = t.common_subsumers(a, b).unwrap();
                let minimal: Vec<_> = common
                    .iter()
                    .copied()
                    .filter(|&c| !common.iter().any(|&d| d != c && t.subsumers(d).unwrap().contains(&c)))
                    .collect();
                let best_minimal = minimal
                    .iter()
                    .map(|&c| m.ic(c).unwrap())
                    .filter(|v| v.is_finite())
                    .fold(f64::NEG_INFINITY, f64::max);
                prop_assert_eq!(r.value, best_minimal);
                prop_assert!(common.contains(&w));
            }
        }
    }

    #[test]
    fn correlation_sign_flips(seed in any::<u64>()) {
        // negating sim_edge or swapping 1 - p for p flips r's sign only
        let inst = Instance::random(seed);
        let t = inst.taxonomy();
        let m = inst.model(&t, LogBase::TWO);
        let s = Scorer::new(&t, &m);
        let words: Vec<&String> = inst.senses.keys().collect();
        let pairs: Vec<(&String, &String)> = words.iter().zip(words.iter().rev()).map(|(a, b)| (*a, *b)).collect();
        let human: Vec<f64> = (0..pairs.len()).map(|i| ((i * 37) % 11) as f64).collect();
        for measure in [Measure::Edge, Measure::Prob] {
            let ys: Vec<f64> = pairs.iter().map(|(a, b)| s.word_similarity(measure, a, b).unwrap().value).collect();
            let flipped: Vec<f64> = ys.iter().map(|y| -y).collect();
            if let (Ok(r), Ok(rf)) = (pearson(&human, &ys), pearson(&human, &flipped)) {
                prop_assert!((r + rf).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pearson_properties(
        xs in prop::collection::vec(-1e3f64..1e3, 3..40),
        noise in prop::collection::vec(-1e3f64..1e3, 40),
        scale in 0.01f64..100.0,
        shift in -1e3f64..1e3,
    ) {
        let ys: Vec<f64> = xs.iter().zip(&noise).map(|(x, n)| x + n).collect();
        let (Ok(r), Ok(self_r)) = (pearson(&xs, &ys), pearson(&xs, &xs)) else { return Ok(()) };
        prop_assert!((-1.0..=1.0).contains(&r));
        prop_assert!((self_r - 1.0).abs() < 1e-12);
        prop_assert!((r - pearson(&ys, &xs).unwrap()).abs() < 1e-12);
        let affine: Vec<f64> = ys.iter().map(|y| scale * y + shift).collect();
        prop_assert!((r - pearson(&xs, &affine).unwrap()).abs() < 1e-9);
        let negated: Vec<f64> = ys.iter().map(|y| -scale * y + shift).collect();
        prop_assert!((r + pearson(&xs, &negated).unwrap()).abs() < 1e-9);
        let rho = spearman(&xs, &ys).unwrap();
        prop_assert!((-1.0..=1.0).contains(&rho));
    }
}
