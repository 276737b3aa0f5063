//! Binary decision tree over preceding-tag contexts.

use serde::{Deserialize, Serialize};

use super::gain::split_gain;

/// Test "tag at relative position -pos equals tag".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub pos: u8,
    pub tag: u16,
    pub yes: u32,
    pub no: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextNode {
    /// Sparse target-tag counts of the training samples reaching this node.
    pub counts: Vec<(u16, u64)>,
    pub split: Option<Split>,
}

impl ContextNode {
    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|c| c.1).sum()
    }
}

/// Arena-allocated tree; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextTree {
    pub context_length: usize,
    /// Number of predictable tags; context values may also be the boundary id `ntags`.
    pub ntags: usize,
    pub nodes: Vec<ContextNode>,
}

/// One training event: the preceding tags (index 0 is the tag at -1) and the tag to predict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub context: Vec<u16>,
    pub target: u16,
}

fn dense(counts: &[(u16, u64)], n: usize) -> Vec<u64> {
    let mut d = vec![0; n];
    for &(t, c) in counts {
        d[t as usize] += c;
    }
    d
}

fn sparse(d: &[u64]) -> Vec<(u16, u64)> {
    d.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(t, &c)| (t as u16, c))
        .collect()
}

impl ContextTree {
    /// Grows the full tree: every node takes the test with the highest
    /// information gain (ties to the smallest position, then tag id) until no
    /// test separates its samples with positive gain.
    pub fn grow(samples: &[Sample], ntags: usize, context_length: usize) -> ContextTree {
        let mut tree = ContextTree {
            context_length,
            ntags,
            nodes: Vec::new(),
        };
        let idx: Vec<u32> = (0..samples.len() as u32).collect();
        tree.grow_node(samples, idx);
        tree
    }

    fn grow_node(&mut self, samples: &[Sample], idx: Vec<u32>) -> u32 {
        let n = self.ntags;
        let mut parent = vec![0u64; n];
        for &i in &idx {
            parent[samples[i as usize].target as usize] += 1;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(ContextNode {
            counts: sparse(&parent),
            split: None,
        });
        let Some((pos, tag)) = self.best_test(samples, &idx, &parent) else {
            return id;
        };
        let (yes, no): (Vec<u32>, Vec<u32>) = idx
            .into_iter()
            .partition(|&i| samples[i as usize].context[pos as usize - 1] == tag);
        let y = self.grow_node(samples, yes);
        let m = self.grow_node(samples, no);
        self.nodes[id as usize].split = Some(Split {
            pos,
            tag,
            yes: y,
            no: m,
        });
        id
    }

    fn best_test(&self, samples: &[Sample], idx: &[u32], parent: &[u64]) -> Option<(u8, u16)> {
        if idx.len() < 2 || parent.iter().filter(|&&c| c > 0).count() < 2 {
            return None;
        }
        let n = self.ntags;
        let width = n + 1;
        let mut yes: Vec<Option<Vec<u64>>> = vec![None; self.context_length * width];
        for &i in idx {
            let s = &samples[i as usize];
            for p in 0..self.context_length {
                let slot = yes[p * width + s.context[p] as usize].get_or_insert_with(|| vec![0; n]);
                slot[s.target as usize] += 1;
            }
        }
        let total = idx.len() as u64;
        let mut best: Option<(f64, u8, u16)> = None;
        let mut no = vec![0u64; n];
        for (slot, counts) in yes.iter().enumerate() {
            let Some(y) = counts else { continue };
            let ny: u64 = y.iter().sum();
            if ny == total {
                continue;
            }
            for t in 0..n {
                no[t] = parent[t] - y[t];
            }
            let g = split_gain(parent, y, &no);
            if g <= 1e-12 {
                continue;
            }
            let (p, tag) = ((slot / width) as u8 + 1, (slot % width) as u16);
            if best.is_none_or(|(bg, _, _)| g > bg) {
                best = Some((g, p, tag));
            }
        }
        best.map(|(_, p, t)| (p, t))
    }

    /// Count-weighted gain of the test at `node`: samples reaching it times
    /// the per-sample information gain. Zero for leaves.
    pub fn weighted_gain(&self, node: usize) -> f64 {
        let Some(s) = self.nodes[node].split else {
            return 0.0;
        };
        let n = self.ntags;
        let parent = dense(&self.nodes[node].counts, n);
        let yes = dense(&self.nodes[s.yes as usize].counts, n);
        let no = dense(&self.nodes[s.no as usize].counts, n);
        self.nodes[node].total() as f64 * split_gain(&parent, &yes, &no)
    }

    /// Bottom-up pruning: a test whose children are both leaves is removed
    /// when its weighted gain is below `threshold`. Unreachable nodes are
    /// dropped and the arena renumbered in preorder.
    pub fn prune(&mut self, threshold: f64) {
        if !self.nodes.is_empty() {
            self.prune_node(0, threshold);
            self.compact();
        }
    }

    fn prune_node(&mut self, node: usize, threshold: f64) {
        let Some(s) = self.nodes[node].split else {
            return;
        };
        self.prune_node(s.yes as usize, threshold);
        self.prune_node(s.no as usize, threshold);
        let children_are_leaves =
            self.nodes[s.yes as usize].is_leaf() && self.nodes[s.no as usize].is_leaf();
        if children_are_leaves && self.weighted_gain(node) < threshold {
            self.nodes[node].split = None;
        }
    }

    fn compact(&mut self) {
        let mut out = Vec::new();
        self.copy_into(0, &mut out);
        self.nodes = out;
    }

    fn copy_into(&self, node: usize, out: &mut Vec<ContextNode>) -> u32 {
        let id = out.len() as u32;
        out.push(ContextNode {
            counts: self.nodes[node].counts.clone(),
            split: None,
        });
        if let Some(s) = self.nodes[node].split {
            let y = self.copy_into(s.yes as usize, out);
            let m = self.copy_into(s.no as usize, out);
            out[id as usize].split = Some(Split { yes: y, no: m, ..s });
        }
        id
    }

    /// Leaf reached by `context` (index 0 is the tag at -1).
    pub fn leaf(&self, context: &[u16]) -> usize {
        let mut node = 0usize;
        while let Some(s) = self.nodes[node].split {
            node = if context[s.pos as usize - 1] == s.tag {
                s.yes
            } else {
                s.no
            } as usize;
        }
        node
    }

    pub fn leaf_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_leaf())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Add-`lambda` smoothed distribution of the samples at `node` over all tags.
    pub fn distribution(&self, node: usize, lambda: f64) -> Vec<f64> {
        let n = self.ntags;
        let total = self.nodes[node].total() as f64;
        let denom = total + lambda * n as f64;
        let mut d = vec![lambda / denom; n];
        for &(t, c) in &self.nodes[node].counts {
            d[t as usize] = (c as f64 + lambda) / denom;
        }
        d
    }

    /// Checks arena references and per-path test uniqueness.
    pub fn validate(&self) -> Result<(), String> {
        if self.nodes.is_empty() {
            return Err("empty tree".into());
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![(0usize, Vec::<(u8, u16)>::new())];
        while let Some((node, path)) = stack.pop() {
            if seen[node] {
                return Err(format!("node {node} reached twice"));
            }
            seen[node] = true;
            if let Some(s) = self.nodes[node].split {
                if s.pos == 0 || s.pos as usize > self.context_length || s.tag as usize > self.ntags
                {
                    return Err(format!("node {node} has an invalid test"));
                }
                if path.contains(&(s.pos, s.tag)) {
                    return Err(format!("node {node} repeats a test"));
                }
                for child in [s.yes, s.no] {
                    if child as usize >= self.nodes.len() {
                        return Err(format!("node {node} points outside the tree"));
                    }
                    let mut p = path.clone();
                    p.push((s.pos, s.tag));
                    stack.push((child as usize, p));
                }
            }
            if self.nodes[node]
                .counts
                .iter()
                .any(|&(t, _)| t as usize >= self.ntags)
            {
                return Err(format!("node {node} counts an unknown tag"));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("unreachable nodes".into());
        }
        Ok(())
    }
}
