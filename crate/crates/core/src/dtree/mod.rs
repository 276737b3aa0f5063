//! Decision-tree trigram tagger.
//!
//! Transition probabilities come from a binary decision tree over the
//! preceding tags, emissions from the lexicon interpolated with ambiguity
//! class distributions, and unknown words are guessed from a suffix trie.

pub mod affix;
pub mod context;
pub mod gain;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Corpus, Tag};
use crate::lexicon::{Lexicon, LexiconError, Origin, TagPriors};
use crate::Tagger;

pub use affix::AffixTree;
pub use context::{ContextTree, Sample};
pub use gain::{entropy, info_gain, GainError};

/// Add-lambda constant for context-tree leaves.
pub const LEAF_LAMBDA: f64 = 0.1;
pub const FORMAT: &str = "tagkit-dtree";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DTreeError {
    #[error("cannot train on an empty corpus")]
    EmptyCorpus,
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("tag {0} has zero prior probability")]
    ZeroPrior(String),
    #[error("tag {0} is not known to the model")]
    UnknownTag(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("bad model file: {0}")]
    Format(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DTreeParams {
    /// Number of preceding tags in a context.
    pub context_length: usize,
    pub min_gain: f64,
    pub eq_class_weight: f64,
    pub affix_gain: f64,
    pub max_suffix: usize,
}

impl Default for DTreeParams {
    fn default() -> DTreeParams {
        DTreeParams {
            context_length: 2,
            min_gain: 0.7,
            eq_class_weight: 0.15,
            affix_gain: 1.2,
            max_suffix: 5,
        }
    }
}

impl DTreeParams {
    pub fn validate(&self) -> Result<(), DTreeError> {
        let bad = |m: &str| Err(DTreeError::InvalidParams(m.to_string()));
        if self.context_length < 1 || self.context_length > 8 {
            return bad("context_length must be between 1 and 8");
        }
        if self.min_gain.is_nan() || self.min_gain < 0.0 {
            return bad("min_gain must be >= 0");
        }
        if self.affix_gain.is_nan() || self.affix_gain < 0.0 {
            return bad("affix_gain must be >= 0");
        }
        if !(0.0..=1.0).contains(&self.eq_class_weight) {
            return bad("eq_class_weight must lie in [0, 1]");
        }
        if self.max_suffix < 1 {
            return bad("max_suffix must be >= 1");
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DTreeModel {
    params: DTreeParams,
    tags: Vec<Tag>,
    tag_ids: HashMap<Tag, u16>,
    tag_counts: Vec<u64>,
    context: ContextTree,
    affix: AffixTree,
    lexicon: Lexicon,
    class_counts: BTreeMap<Vec<u16>, Vec<(u16, u64)>>,
    priors: Vec<f64>,
    leaf_logp: Vec<Vec<f64>>,
    affix_dist: Vec<Vec<f64>>,
    class_dist: HashMap<Vec<u16>, Vec<f64>>,
}

impl PartialEq for DTreeModel {
    fn eq(&self, other: &DTreeModel) -> bool {
        self.params == other.params
            && self.tags == other.tags
            && self.tag_counts == other.tag_counts
            && self.context == other.context
            && self.affix == other.affix
            && self.lexicon == other.lexicon
            && self.class_counts == other.class_counts
    }
}

/// Forms occurring exactly once in `c`, with their tags, in corpus order.
fn hapax_tokens(c: &Corpus) -> Vec<(&str, &Tag)> {
    let mut freq: HashMap<&str, u32> = HashMap::new();
    for t in c.tokens() {
        *freq.entry(&t.form).or_default() += 1;
    }
    c.tokens()
        .filter(|t| freq[t.form.as_str()] == 1)
        .map(|t| (t.form.as_str(), &t.tag))
        .collect()
}

/// Trains on `train` with `lex` as the tagging lexicon. A lexicon extended
/// after training is only used by a model retrained with it.
pub fn train(
    train: &Corpus,
    lex: &Lexicon,
    params: &DTreeParams,
) -> Result<DTreeModel, DTreeError> {
    params.validate()?;
    if train.token_count() == 0 {
        return Err(DTreeError::EmptyCorpus);
    }
    let mut tagset: BTreeSet<Tag> = train.tokens().map(|t| t.tag.clone()).collect();
    tagset.extend(lex.tag_inventory());
    let tags: Vec<Tag> = tagset.into_iter().collect();
    let ids: HashMap<Tag, u16> = tags
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as u16))
        .collect();
    let ntags = tags.len();
    let boundary = ntags as u16;
    let k = params.context_length;

    let mut tag_counts = vec![0u64; ntags];
    let mut samples = Vec::with_capacity(train.token_count());
    for s in &train.sentences {
        let seq: Vec<u16> = s.tokens.iter().map(|t| ids[&t.tag]).collect();
        for (i, &target) in seq.iter().enumerate() {
            tag_counts[target as usize] += 1;
            let context = (1..=k)
                .map(|p| if i >= p { seq[i - p] } else { boundary })
                .collect();
            samples.push(Sample { context, target });
        }
    }
    let mut context = ContextTree::grow(&samples, ntags, k);
    context.prune(params.min_gain);

    let hapax = hapax_tokens(train);
    let mut affix = AffixTree::grow(
        hapax.iter().map(|(f, t)| (*f, ids[*t])),
        ntags,
        params.max_suffix,
    );
    affix.prune(params.affix_gain);

    let mut class_counts: BTreeMap<Vec<u16>, Vec<u64>> = BTreeMap::new();
    for e in lex.entries().filter(|e| e.origin() == Origin::Corpus) {
        let mut class: Vec<u16> = e.tags().iter().map(|(t, _)| ids[t]).collect();
        class.sort_unstable();
        let slot = class_counts.entry(class).or_insert_with(|| vec![0; ntags]);
        for (t, c) in e.tags() {
            slot[ids[t] as usize] += c;
        }
    }
    let class_counts = class_counts
        .into_iter()
        .map(|(c, d)| {
            let sparse = d
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(t, &n)| (t as u16, n))
                .collect();
            (c, sparse)
        })
        .collect();

    Ok(DTreeModel::assemble(
        params.clone(),
        tags,
        tag_counts,
        context,
        affix,
        lex.clone(),
        class_counts,
    ))
}

impl DTreeModel {
    fn assemble(
        params: DTreeParams,
        tags: Vec<Tag>,
        tag_counts: Vec<u64>,
        context: ContextTree,
        affix: AffixTree,
        lexicon: Lexicon,
        class_counts: BTreeMap<Vec<u16>, Vec<(u16, u64)>>,
    ) -> DTreeModel {
        let ntags = tags.len();
        let tag_ids = tags
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u16))
            .collect();
        let total: u64 = tag_counts.iter().sum();
        let priors: Vec<f64> = tag_counts
            .iter()
            .map(|&c| c as f64 / total.max(1) as f64)
            .collect();
        let mut leaf_logp = vec![Vec::new(); context.node_count()];
        for leaf in context.leaf_ids().collect::<Vec<_>>() {
            leaf_logp[leaf] = context
                .distribution(leaf, LEAF_LAMBDA)
                .iter()
                .map(|p| p.ln())
                .collect();
        }
        let affix_dist = affix.distributions(&priors);
        let class_dist = class_counts
            .iter()
            .map(|(c, counts)| {
                let n: u64 = counts.iter().map(|x| x.1).sum();
                let mut d = vec![0.0; ntags];
                for &(t, x) in counts {
                    d[t as usize] = x as f64 / n as f64;
                }
                (c.clone(), d)
            })
            .collect();
        DTreeModel {
            params,
            tags,
            tag_ids,
            tag_counts,
            context,
            affix,
            lexicon,
            class_counts,
            priors,
            leaf_logp,
            affix_dist,
            class_dist,
        }
    }

    pub fn params(&self) -> &DTreeParams {
        &self.params
    }

    /// Tag inventory in id order (sorted by name).
    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn context_tree(&self) -> &ContextTree {
        &self.context
    }

    pub fn affix_tree(&self) -> &AffixTree {
        &self.affix
    }

    pub fn tag_priors(&self) -> TagPriors {
        let counts = self
            .tags
            .iter()
            .cloned()
            .zip(self.tag_counts.iter().copied())
            .filter(|(_, c)| *c > 0)
            .collect();
        TagPriors::from_counts(counts).expect("trained model has tag counts")
    }

    fn id(&self, tag: &str) -> Result<u16, DTreeError> {
        self.tag_ids
            .get(tag)
            .copied()
            .ok_or_else(|| DTreeError::UnknownTag(tag.to_string()))
    }

    /// Distribution of the ambiguity class made of `tags`, as stored from training.
    pub fn class_distribution(&self, tags: &[Tag]) -> Option<BTreeMap<Tag, f64>> {
        let mut class: Vec<u16> = tags
            .iter()
            .map(|t| self.id(t.as_str()))
            .collect::<Result<_, _>>()
            .ok()?;
        class.sort_unstable();
        let d = self.class_dist.get(&class)?;
        Some(
            class
                .iter()
                .map(|&t| (self.tags[t as usize].clone(), d[t as usize]))
                .collect(),
        )
    }

    /// Every ambiguity-class distribution, keyed by the class's tag names.
    pub fn class_distributions(&self) -> Vec<(Vec<Tag>, Vec<f64>)> {
        self.class_counts
            .keys()
            .map(|c| {
                let names = c.iter().map(|&t| self.tags[t as usize].clone()).collect();
                (names, self.class_dist[c].clone())
            })
            .collect()
    }

    fn class_probs(&self, class: &[u16]) -> Vec<f64> {
        if let Some(d) = self.class_dist.get(class) {
            return class.iter().map(|&t| d[t as usize]).collect();
        }
        let mass: f64 = class.iter().map(|&t| self.priors[t as usize]).sum();
        if mass > 0.0 {
            class
                .iter()
                .map(|&t| self.priors[t as usize] / mass)
                .collect()
        } else {
            vec![1.0 / class.len() as f64; class.len()]
        }
    }

    /// Smoothed P(tag | form) for each tag of a known form, in lexicon order.
    fn known_probs(&self, form: &str) -> Option<Vec<(u16, f64)>> {
        let entry = self.lexicon.get(form)?;
        let ids: Vec<u16> = entry.tags().iter().map(|(t, _)| self.tag_ids[t]).collect();
        let mut class = ids.clone();
        class.sort_unstable();
        let class_p: HashMap<u16, f64> = class
            .iter()
            .copied()
            .zip(self.class_probs(&class))
            .collect();
        let total = entry.total();
        let w = self.params.eq_class_weight;
        Some(
            entry
                .tags()
                .iter()
                .zip(&ids)
                .map(|((_, c), &id)| {
                    let pc = class_p[&id];
                    let pl = if total > 0 {
                        *c as f64 / total as f64
                    } else {
                        pc
                    };
                    (id, (1.0 - w) * pl + w * pc)
                })
                .collect(),
        )
    }

    /// Interpolated P(tag | form) for a known form; the affix estimate for unknown forms.
    pub fn smoothed_probability(&self, form: &str, tag: &str) -> Result<f64, DTreeError> {
        let id = self.id(tag)?;
        Ok(match self.known_probs(form) {
            Some(ps) => ps.iter().find(|p| p.0 == id).map_or(0.0, |p| p.1),
            None => self.affix_lookup(form)[id as usize],
        })
    }

    /// Smoothed distribution at the deepest affix-tree node matching `form`.
    pub fn affix_lookup(&self, form: &str) -> &[f64] {
        &self.affix_dist[self.affix.lookup(form)]
    }

    /// P(tag | form) / P(tag), proportional to the generative emission probability.
    pub fn emission_weight(&self, form: &str, tag: &str) -> Result<f64, DTreeError> {
        let id = self.id(tag)?;
        let prior = self.priors[id as usize];
        if prior <= 0.0 {
            return Err(DTreeError::ZeroPrior(tag.to_string()));
        }
        Ok(self.smoothed_probability(form, tag)? / prior)
    }

    /// Tags that may be emitted for `form` with their log emission weights, in tag-id order.
    fn candidates(&self, form: &str) -> Vec<(u16, f64)> {
        let weigh = |ps: &mut dyn Iterator<Item = (u16, f64)>| -> Vec<(u16, f64)> {
            let mut v: Vec<(u16, f64)> = ps
                .filter(|&(t, p)| p > 0.0 && self.priors[t as usize] > 0.0)
                .map(|(t, p)| (t, (p / self.priors[t as usize]).ln()))
                .collect();
            v.sort_by_key(|c| c.0);
            v
        };
        if let Some(ps) = self.known_probs(form) {
            let v = weigh(&mut ps.into_iter());
            if !v.is_empty() {
                return v;
            }
        }
        let d = self.affix_lookup(form);
        let v = weigh(&mut d.iter().enumerate().map(|(t, &p)| (t as u16, p)));
        if !v.is_empty() {
            return v;
        }
        weigh(&mut self.priors.iter().enumerate().map(|(t, &p)| (t as u16, p)))
    }

    /// Tags Viterbi may assign to `form`.
    pub fn candidate_tags(&self, form: &str) -> Vec<Tag> {
        self.candidates(form)
            .into_iter()
            .map(|(t, _)| self.tags[t as usize].clone())
            .collect()
    }

    /// log P(tag at 0 | context), context index 0 being the tag at -1.
    fn transition(&self, context: &[u16], tag: u16) -> f64 {
        self.leaf_logp[self.context.leaf(context)][tag as usize]
    }

    /// Transition probability of `tag` after `previous` (oldest first);
    /// missing positions are sentence boundary.
    pub fn transition_probability(&self, previous: &[Tag], tag: &str) -> Result<f64, DTreeError> {
        let k = self.params.context_length;
        let boundary = self.tags.len() as u16;
        let mut ctx = vec![boundary; k];
        for (p, t) in previous.iter().rev().take(k).enumerate() {
            ctx[p] = self.id(t.as_str())?;
        }
        Ok(self.transition(&ctx, self.id(tag)?).exp())
    }

    /// Log score of a complete tag sequence: the sum of log transition
    /// probabilities and log emission weights. `-inf` if some tag is not a candidate.
    pub fn path_log_score(&self, forms: &[String], tags: &[Tag]) -> f64 {
        assert_eq!(forms.len(), tags.len());
        let k = self.params.context_length;
        let boundary = self.tags.len() as u16;
        let mut hist = vec![boundary; k];
        let mut score = 0.0;
        for (f, t) in forms.iter().zip(tags) {
            let Some(&id) = self.tag_ids.get(t) else {
                return f64::NEG_INFINITY;
            };
            let Some(&(_, lw)) = self.candidates(f).iter().find(|c| c.0 == id) else {
                return f64::NEG_INFINITY;
            };
            let ctx: Vec<u16> = hist.iter().rev().copied().collect();
            score += self.transition(&ctx, id) + lw;
            hist.remove(0);
            hist.push(id);
        }
        score
    }

    /// Highest-scoring tag sequence under [`DTreeModel::path_log_score`].
    /// Equal scores are resolved toward tags earlier in name order.
    pub fn viterbi(&self, forms: &[String]) -> Vec<Tag> {
        if forms.is_empty() {
            return Vec::new();
        }
        let k = self.params.context_length;
        let boundary = self.tags.len() as u16;
        struct State {
            hist: Vec<u16>,
            score: f64,
            back: usize,
        }
        let mut layers: Vec<Vec<State>> = vec![vec![State {
            hist: vec![boundary; k],
            score: 0.0,
            back: 0,
        }]];
        let mut ctx = vec![0u16; k];
        for form in forms {
            let cands = self.candidates(form);
            let mut next: BTreeMap<Vec<u16>, (f64, usize)> = BTreeMap::new();
            for (si, st) in layers.last().unwrap().iter().enumerate() {
                for (p, slot) in ctx.iter_mut().enumerate() {
                    *slot = st.hist[k - 1 - p];
                }
                let logp = &self.leaf_logp[self.context.leaf(&ctx)];
                for &(t, lw) in &cands {
                    let score = st.score + logp[t as usize] + lw;
                    let mut hist = st.hist[1..].to_vec();
                    hist.push(t);
                    match next.get_mut(&hist) {
                        Some(e) if score > e.0 => *e = (score, si),
                        Some(_) => {}
                        None => {
                            next.insert(hist, (score, si));
                        }
                    }
                }
            }
            layers.push(
                next.into_iter()
                    .map(|(hist, (score, back))| State { hist, score, back })
                    .collect(),
            );
        }
        let last = layers.last().unwrap();
        let mut best = 0;
        for (i, st) in last.iter().enumerate() {
            if st.score > last[best].score {
                best = i;
            }
        }
        let mut out = Vec::with_capacity(forms.len());
        let mut idx = best;
        for layer in layers[1..].iter().rev() {
            let st = &layer[idx];
            out.push(self.tags[st.hist[k - 1] as usize].clone());
            idx = st.back;
        }
        out.reverse();
        out
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            format: FORMAT.to_string(),
            version: FORMAT_VERSION,
            params: self.params.clone(),
            tags: self.tags.iter().map(|t| t.to_string()).collect(),
            tag_counts: self.tag_counts.clone(),
            context: self.context.clone(),
            affix: self.affix.clone(),
            lexicon: self.lexicon.to_text(),
            class_counts: self
                .class_counts
                .iter()
                .map(|(c, d)| (c.clone(), d.clone()))
                .collect(),
        };
        let mut s = serde_json::to_string(&file).expect("model serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<DTreeModel, DTreeError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| DTreeError::Format(e.to_string()))?;
        if file.format != FORMAT {
            return Err(DTreeError::Format(format!("not a {FORMAT} file")));
        }
        if file.version != FORMAT_VERSION {
            return Err(DTreeError::Format(format!(
                "unsupported version {}",
                file.version
            )));
        }
        file.params.validate()?;
        let tags: Vec<Tag> = file
            .tags
            .iter()
            .map(|t| Tag::new(t).map_err(|e| DTreeError::Format(e.to_string())))
            .collect::<Result<_, _>>()?;
        let ntags = tags.len();
        if tags.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DTreeError::Format("tags are not sorted".into()));
        }
        if file.tag_counts.len() != ntags || file.tag_counts.iter().sum::<u64>() == 0 {
            return Err(DTreeError::Format(
                "tag counts do not match the tags".into(),
            ));
        }
        if file.context.ntags != ntags
            || file.affix.ntags != ntags
            || file.context.context_length != file.params.context_length
        {
            return Err(DTreeError::Format(
                "tree dimensions do not match the tags".into(),
            ));
        }
        file.context.validate().map_err(DTreeError::Format)?;
        file.affix.validate().map_err(DTreeError::Format)?;
        let lexicon = Lexicon::parse(&file.lexicon)?;
        let known: BTreeSet<&Tag> = tags.iter().collect();
        if lexicon.tag_inventory().iter().any(|t| !known.contains(t)) {
            return Err(DTreeError::Format(
                "lexicon uses tags outside the model".into(),
            ));
        }
        let mut class_counts = BTreeMap::new();
        for (c, d) in file.class_counts {
            if c.is_empty()
                || c.iter()
                    .chain(d.iter().map(|x| &x.0))
                    .any(|&t| t as usize >= ntags)
            {
                return Err(DTreeError::Format("bad ambiguity class".into()));
            }
            if d.iter().map(|x| x.1).sum::<u64>() == 0 {
                return Err(DTreeError::Format("empty ambiguity class".into()));
            }
            class_counts.insert(c, d);
        }
        Ok(DTreeModel::assemble(
            file.params,
            tags,
            file.tag_counts,
            file.context,
            file.affix,
            lexicon,
            class_counts,
        ))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), DTreeError> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|e| DTreeError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<DTreeModel, DTreeError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| DTreeError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        DTreeModel::from_json(&text)
    }
}

impl Tagger for DTreeModel {
    fn tag_sentence(&self, forms: &[String]) -> Vec<Tag> {
        self.viterbi(forms)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    params: DTreeParams,
    tags: Vec<String>,
    tag_counts: Vec<u64>,
    context: ContextTree,
    affix: AffixTree,
    lexicon: String,
    class_counts: Vec<(Vec<u16>, Vec<(u16, u64)>)>,
}
