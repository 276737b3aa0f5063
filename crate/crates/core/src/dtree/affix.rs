//! Suffix trie estimating tag distributions for unknown words.

use serde::{Deserialize, Serialize};

use super::gain::split_gain;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffixNode {
    /// Character leading into this node; `None` at the root.
    pub ch: Option<char>,
    pub counts: Vec<(u16, u64)>,
    /// Child ids sorted by character.
    pub children: Vec<u32>,
}

impl AffixNode {
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|c| c.1).sum()
    }
}

/// Node 0 is the root; a child at depth d stands for the last d characters of a form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffixTree {
    pub ntags: usize,
    pub max_suffix: usize,
    pub nodes: Vec<AffixNode>,
}

fn dense(counts: &[(u16, u64)], n: usize) -> Vec<u64> {
    let mut d = vec![0; n];
    for &(t, c) in counts {
        d[t as usize] += c;
    }
    d
}

fn add(counts: &mut Vec<(u16, u64)>, tag: u16) {
    match counts.binary_search_by_key(&tag, |c| c.0) {
        Ok(i) => counts[i].1 += 1,
        Err(i) => counts.insert(i, (tag, 1)),
    }
}

impl AffixTree {
    /// Unpruned trie over the reversed endings (up to `max_suffix` characters) of `samples`.
    pub fn grow<'a>(
        samples: impl IntoIterator<Item = (&'a str, u16)>,
        ntags: usize,
        max_suffix: usize,
    ) -> AffixTree {
        let mut tree = AffixTree {
            ntags,
            max_suffix,
            nodes: vec![AffixNode {
                ch: None,
                counts: Vec::new(),
                children: Vec::new(),
            }],
        };
        for (form, tag) in samples {
            let mut node = 0usize;
            add(&mut tree.nodes[0].counts, tag);
            for c in form.chars().rev().take(max_suffix) {
                node = match tree.child(node, c) {
                    Some(n) => n,
                    None => {
                        let id = tree.nodes.len() as u32;
                        tree.nodes.push(AffixNode {
                            ch: Some(c),
                            counts: Vec::new(),
                            children: Vec::new(),
                        });
                        let pos = tree.nodes[node]
                            .children
                            .partition_point(|&k| tree.nodes[k as usize].ch < Some(c));
                        tree.nodes[node].children.insert(pos, id);
                        id as usize
                    }
                };
                add(&mut tree.nodes[node].counts, tag);
            }
        }
        tree
    }

    fn child(&self, node: usize, c: char) -> Option<usize> {
        let kids = &self.nodes[node].children;
        kids.binary_search_by(|&k| self.nodes[k as usize].ch.cmp(&Some(c)))
            .ok()
            .map(|i| kids[i] as usize)
    }

    /// Gain of separating `child` from the rest of `parent`, weighted by the parent's sample count.
    pub fn weighted_gain(&self, parent: usize, child: usize) -> f64 {
        let n = self.ntags;
        let p = dense(&self.nodes[parent].counts, n);
        let c = dense(&self.nodes[child].counts, n);
        let rest: Vec<u64> = p.iter().zip(&c).map(|(a, b)| a - b).collect();
        let total: u64 = p.iter().sum();
        if total == 0 {
            return 0.0;
        }
        total as f64 * split_gain(&p, &c, &rest)
    }

    /// Bottom-up: leaves whose weighted gain is below `threshold` are deleted.
    pub fn prune(&mut self, threshold: f64) {
        self.prune_node(0, threshold);
        let mut out = Vec::new();
        self.copy_into(0, &mut out);
        self.nodes = out;
    }

    fn prune_node(&mut self, node: usize, threshold: f64) {
        let kids = self.nodes[node].children.clone();
        let mut keep = Vec::new();
        for k in kids {
            self.prune_node(k as usize, threshold);
            if !self.nodes[k as usize].children.is_empty()
                || self.weighted_gain(node, k as usize) >= threshold
            {
                keep.push(k);
            }
        }
        self.nodes[node].children = keep;
    }

    fn copy_into(&self, node: usize, out: &mut Vec<AffixNode>) -> u32 {
        let id = out.len() as u32;
        out.push(AffixNode {
            ch: self.nodes[node].ch,
            counts: self.nodes[node].counts.clone(),
            children: Vec::new(),
        });
        let kids: Vec<u32> = self.nodes[node]
            .children
            .iter()
            .map(|&k| self.copy_into(k as usize, out))
            .collect();
        out[id as usize].children = kids;
        id
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Deepest node matched by the reversed ending of `form`; the root if none.
    pub fn lookup(&self, form: &str) -> usize {
        let mut node = 0usize;
        for c in form.chars().rev().take(self.max_suffix) {
            match self.child(node, c) {
                Some(n) => node = n,
                None => break,
            }
        }
        node
    }

    /// Node distributions in arena order. The root is the relative frequency
    /// of its samples (or `fallback` if it has none); every other node
    /// interpolates its relative frequency with its parent's distribution,
    /// weighting the own estimate by n / (n + distinct tags).
    pub fn distributions(&self, fallback: &[f64]) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        let root_total = self.nodes[0].total();
        out[0] = if root_total == 0 {
            fallback.to_vec()
        } else {
            let mut d = vec![0.0; self.ntags];
            for &(t, c) in &self.nodes[0].counts {
                d[t as usize] = c as f64 / root_total as f64;
            }
            d
        };
        let mut stack = vec![0usize];
        while let Some(node) = stack.pop() {
            for &k in &self.nodes[node].children {
                let k = k as usize;
                let n = self.nodes[k].total() as f64;
                let distinct = self.nodes[k].counts.len() as f64;
                let lambda = if n > 0.0 { n / (n + distinct) } else { 0.0 };
                let mut d: Vec<f64> = out[node].iter().map(|p| (1.0 - lambda) * p).collect();
                for &(t, c) in &self.nodes[k].counts {
                    d[t as usize] += lambda * c as f64 / n;
                }
                out[k] = d;
                stack.push(k);
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.nodes.is_empty() || self.nodes[0].ch.is_some() {
            return Err("missing root".into());
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![(0usize, 0usize)];
        while let Some((node, depth)) = stack.pop() {
            if std::mem::replace(&mut seen[node], true) {
                return Err(format!("node {node} reached twice"));
            }
            if depth > self.max_suffix {
                return Err(format!(
                    "node {node} is deeper than the maximum suffix length"
                ));
            }
            let parent = dense(&self.nodes[node].counts, self.ntags);
            for &k in &self.nodes[node].children {
                let k = k as usize;
                if k >= self.nodes.len() || self.nodes[k].ch.is_none() {
                    return Err(format!("node {node} has an invalid child"));
                }
                let child = dense(&self.nodes[k].counts, self.ntags);
                if child.iter().zip(&parent).any(|(c, p)| c > p) {
                    return Err(format!("node {k} has more samples than its parent"));
                }
                stack.push((k, depth + 1));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("unreachable nodes".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const NN: u16 = 0;
    const VVFIN: u16 = 1;

    #[test]
    fn toy_tree_walks_to_deepest_suffix() {
        let t = AffixTree::grow([("Zeitung", NN), ("Wohnung", NN), ("singt", VVFIN)], 3, 5);
        t.validate().unwrap();
        let node = t.lookup("Verhandlung");
        assert_eq!(t.nodes[node].ch, Some('u'));
        assert_eq!(t.nodes[node].counts, vec![(NN, 2)]);
        assert_eq!(t.lookup("Verhandlungsrunde"), 0);

        let t = AffixTree::grow(
            [("Gesprächsrunde", NN), ("Stunde", NN), ("finde", VVFIN)],
            3,
            5,
        );
        let node = t.lookup("Verhandlungsrunde");
        assert_eq!(t.nodes[node].ch, Some('r'));
        let d = &t.distributions(&[1.0 / 3.0; 3])[node];
        assert!(d[NN as usize] > d[VVFIN as usize]);
        assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_tree_uses_fallback() {
        let t = AffixTree::grow(std::iter::empty(), 2, 5);
        assert_eq!(t.distributions(&[0.25, 0.75])[0], vec![0.25, 0.75]);
    }

    fn samples() -> impl Strategy<Value = Vec<(String, u16)>> {
        prop::collection::vec(("[a-e]{1,7}", 0u16..3), 0..40)
    }

    fn survives(t: &AffixTree, parent: usize, node: usize, threshold: f64) -> bool {
        t.weighted_gain(parent, node) >= threshold
            || t.nodes[node]
                .children
                .iter()
                .any(|&k| survives(t, node, k as usize, threshold))
    }

    fn surviving_count(t: &AffixTree, node: usize, threshold: f64) -> usize {
        1 + t.nodes[node]
            .children
            .iter()
            .filter(|&&k| survives(t, node, k as usize, threshold))
            .map(|&k| surviving_count(t, k as usize, threshold))
            .sum::<usize>()
    }

    proptest! {
        #[test]
        fn pruning_matches_oracle_and_is_monotone(s in samples(), a in 0.0f64..5.0, b in 0.0f64..5.0) {
            let full = AffixTree::grow(s.iter().map(|(f, t)| (f.as_str(), *t)), 3, 5);
            full.validate().unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let mut p_lo = full.clone();
            p_lo.prune(lo);
            let mut p_hi = full.clone();
            p_hi.prune(hi);
            prop_assert_eq!(p_lo.node_count(), surviving_count(&full, 0, lo));
            prop_assert!(p_hi.node_count() <= p_lo.node_count());
            p_lo.validate().unwrap();
            for d in p_lo.distributions(&[0.2, 0.3, 0.5]) {
                prop_assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn lookup_follows_longest_path(s in samples(), form in "[a-e]{0,8}") {
            let t = AffixTree::grow(s.iter().map(|(f, t)| (f.as_str(), *t)), 3, 5);
            let node = t.lookup(&form);
            let mut depth = 0;
            let mut cur = 0usize;
            for c in form.chars().rev().take(5) {
                match t.nodes[cur].children.iter().find(|&&k| t.nodes[k as usize].ch == Some(c)) {
                    Some(&k) => { cur = k as usize; depth += 1; }
                    None => break,
                }
            }
            prop_assert_eq!(node, cur);
            prop_assert!(depth <= 5);
        }
    }
}
