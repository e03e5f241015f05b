//! Word-sense inventory with pairwise similarity metrics.
//!
//! Fixture-scale inventories ship precomputed pairwise metrics; full-scale
//! resources provide hypernym edges and metrics are computed live from the
//! taxonomy graph.

use std::collections::{BTreeMap, HashMap, VecDeque};

/// One sense of a word.
#[derive(Debug, Clone, PartialEq)]
pub struct Sense {
    pub synset: String,
    /// Hypernym-path depth as listed in the inventory file.
    pub depth: u32,
    pub hyponyms: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMetrics {
    pub path: f64,
    pub wup: f64,
    pub lch: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SenseMetric {
    Path,
    Wup,
    Lch,
}

impl SenseMetric {
    pub fn parse(s: &str) -> Option<SenseMetric> {
        match s {
            "path" => Some(SenseMetric::Path),
            "wup" => Some(SenseMetric::Wup),
            "lch" => Some(SenseMetric::Lch),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SenseInventory {
    senses: HashMap<String, Vec<Sense>>,
    pair_metrics: HashMap<(String, String), PairMetrics>,
    hypernyms: HashMap<String, Vec<String>>,
    graph_depths: HashMap<String, u32>,
    max_depth: u32,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl SenseInventory {
    pub fn new(
        senses: HashMap<String, Vec<Sense>>,
        pair_metrics: HashMap<(String, String), PairMetrics>,
        hypernyms: HashMap<String, Vec<String>>,
    ) -> SenseInventory {
        let mut inv = SenseInventory {
            senses,
            pair_metrics,
            hypernyms,
            graph_depths: HashMap::new(),
            max_depth: 1,
        };
        if !inv.hypernyms.is_empty() {
            inv.compute_graph_depths();
            inv.max_depth = inv.graph_depths.values().copied().max().unwrap_or(1).max(1);
        } else {
            inv.max_depth = inv
                .senses
                .values()
                .flatten()
                .map(|s| s.depth)
                .max()
                .unwrap_or(1)
                .max(1);
        }
        inv
    }

    /// Depth of every node in the hypernym DAG: roots have depth 1,
    /// children sit one below their deepest parent.
    fn compute_graph_depths(&mut self) {
        let mut nodes: BTreeMap<&str, ()> = BTreeMap::new();
        for (c, ps) in &self.hypernyms {
            nodes.insert(c, ());
            for p in ps {
                nodes.insert(p, ());
            }
        }
        let keys: Vec<String> = nodes.keys().map(|s| s.to_string()).collect();
        fn depth_of(
            node: &str,
            hypernyms: &HashMap<String, Vec<String>>,
            memo: &mut HashMap<String, u32>,
            visiting: &mut Vec<String>,
        ) -> u32 {
            if let Some(&d) = memo.get(node) {
                return d;
            }
            if visiting.iter().any(|v| v == node) {
                return 1; // defensive cycle cut; taxonomies are acyclic
            }
            visiting.push(node.to_string());
            let d = match hypernyms.get(node) {
                None => 1,
                Some(ps) if ps.is_empty() => 1,
                Some(ps) => {
                    1 + ps
                        .iter()
                        .map(|p| depth_of(p, hypernyms, memo, visiting))
                        .max()
                        .unwrap()
                }
            };
            visiting.pop();
            memo.insert(node.to_string(), d);
            d
        }
        let mut memo = HashMap::new();
        for k in keys {
            depth_of(&k, &self.hypernyms, &mut memo, &mut Vec::new());
        }
        self.graph_depths = memo;
    }

    pub fn senses(&self, lower: &str) -> &[Sense] {
        self.senses.get(lower).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn n_words(&self) -> usize {
        self.senses.len()
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// Up-distances from a synset to each of its ancestors (itself at 0).
    fn ancestors(&self, synset: &str) -> HashMap<String, u32> {
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(synset.to_string(), 0u32);
        queue.push_back(synset.to_string());
        while let Some(node) = queue.pop_front() {
            let d = dist[&node];
            if let Some(parents) = self.hypernyms.get(&node) {
                for p in parents {
                    if !dist.contains_key(p) {
                        dist.insert(p.clone(), d + 1);
                        queue.push_back(p.clone());
                    }
                }
            }
        }
        dist
    }

    /// Pairwise similarity between two synsets, or `None` when neither the
    /// precomputed pair table nor the hypernym graph covers the pair.
    pub fn similarity(&self, a: &str, b: &str, metric: SenseMetric) -> Option<f64> {
        if a == b {
            return Some(match metric {
                SenseMetric::Path | SenseMetric::Wup => 1.0,
                SenseMetric::Lch => (2.0 * self.max_depth as f64).ln(),
            });
        }
        if let Some(m) = self.pair_metrics.get(&pair_key(a, b)) {
            return Some(match metric {
                SenseMetric::Path => m.path,
                SenseMetric::Wup => m.wup,
                SenseMetric::Lch => m.lch,
            });
        }
        self.similarity_from_graph(a, b, metric)
    }

    fn similarity_from_graph(&self, a: &str, b: &str, metric: SenseMetric) -> Option<f64> {
        if self.hypernyms.is_empty() {
            return None;
        }
        let anc_a = self.ancestors(a);
        let anc_b = self.ancestors(b);
        let mut best: Option<(u32, &str)> = None; // (shortest joint distance, subsumer)
        for (node, &da) in &anc_a {
            if let Some(&db) = anc_b.get(node) {
                let d = da + db;
                if best.is_none_or(|(bd, bn)| d < bd || (d == bd && node.as_str() < bn)) {
                    best = Some((d, node));
                }
            }
        }
        let (dist, subsumer) = best?;
        Some(match metric {
            SenseMetric::Path => 1.0 / (1.0 + dist as f64),
            SenseMetric::Wup => {
                let dc = *self.graph_depths.get(subsumer)? as f64;
                let da = *self.graph_depths.get(a)? as f64;
                let db = *self.graph_depths.get(b)? as f64;
                2.0 * dc / (da + db)
            }
            SenseMetric::Lch => {
                let p = (dist as f64 + 1.0) / (2.0 * self.max_depth as f64);
                -p.ln()
            }
        })
    }
}
