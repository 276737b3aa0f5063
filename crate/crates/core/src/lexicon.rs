//! Fullform lexicon built from a tagged corpus, tag priors, and merging of
//! external morphological analyses.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::corpus::{read_text, Corpus, CorpusError, Tag, Tagset};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LexiconError {
    #[error("cannot compute tag priors of an empty corpus")]
    EmptyCorpus,
    #[error("analysis of `{form}` uses tag `{tag}` which is not in the tagset")]
    UnknownTag { form: String, tag: String },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Counted in a training corpus.
    Corpus,
    /// Added from an external analyzer; counts are zero.
    External,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconEntry {
    form: String,
    tags: Vec<(Tag, u64)>,
    origin: Origin,
}

impl LexiconEntry {
    /// An external entry; `tags` must already be in prior order.
    pub fn external(form: impl Into<String>, tags: Vec<Tag>) -> LexiconEntry {
        LexiconEntry {
            form: form.into(),
            tags: tags.into_iter().map(|t| (t, 0)).collect(),
            origin: Origin::External,
        }
    }

    /// A corpus-derived entry from raw counts; sorts by descending count
    /// with ties broken by tag name.
    pub fn from_counts(
        form: impl Into<String>,
        counts: impl IntoIterator<Item = (Tag, u64)>,
    ) -> LexiconEntry {
        let mut tags: Vec<(Tag, u64)> = counts.into_iter().filter(|(_, c)| *c > 0).collect();
        tags.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        LexiconEntry {
            form: form.into(),
            tags,
            origin: Origin::Corpus,
        }
    }

    pub fn form(&self) -> &str {
        &self.form
    }

    pub fn tags(&self) -> &[(Tag, u64)] {
        &self.tags
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn ambiguity(&self) -> usize {
        self.tags.len()
    }

    pub fn total(&self) -> u64 {
        self.tags.iter().map(|(_, c)| c).sum()
    }

    pub fn contains(&self, tag: &str) -> bool {
        self.tags.iter().any(|(t, _)| t.as_str() == tag)
    }

    pub fn count(&self, tag: &str) -> u64 {
        self.tags
            .iter()
            .find(|(t, _)| t.as_str() == tag)
            .map_or(0, |(_, c)| *c)
    }

    pub fn most_frequent_tag(&self) -> &Tag {
        &self.tags[0].0
    }

    /// The entry's tag set in name order: its ambiguity class.
    pub fn class(&self) -> Vec<Tag> {
        let mut v: Vec<Tag> = self.tags.iter().map(|(t, _)| t.clone()).collect();
        v.sort();
        v
    }
}

pub fn most_frequent_tag(entry: &LexiconEntry) -> &Tag {
    entry.most_frequent_tag()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, LexiconEntry>,
}

impl Lexicon {
    pub fn build(c: &Corpus) -> Lexicon {
        let mut counts: BTreeMap<&str, BTreeMap<&Tag, u64>> = BTreeMap::new();
        for t in c.tokens() {
            *counts
                .entry(&t.form)
                .or_default()
                .entry(&t.tag)
                .or_default() += 1;
        }
        let entries = counts
            .into_iter()
            .map(|(form, tags)| {
                let e =
                    LexiconEntry::from_counts(form, tags.into_iter().map(|(t, n)| (t.clone(), n)));
                (form.to_string(), e)
            })
            .collect();
        Lexicon { entries }
    }

    pub fn get(&self, form: &str) -> Option<&LexiconEntry> {
        self.entries.get(form)
    }

    pub fn contains(&self, form: &str) -> bool {
        self.entries.contains_key(form)
    }

    /// Number of tags listed for `form`; 0 marks a lexicon gap.
    pub fn ambiguity(&self, form: &str) -> usize {
        self.get(form).map_or(0, LexiconEntry::ambiguity)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.values()
    }

    pub fn insert(&mut self, entry: LexiconEntry) {
        self.entries.insert(entry.form.clone(), entry);
    }

    /// Every tag mentioned by any entry.
    pub fn tag_inventory(&self) -> BTreeSet<Tag> {
        self.entries
            .values()
            .flat_map(|e| e.tags.iter().map(|(t, _)| t.clone()))
            .collect()
    }

    /// Adds external entries for analyzed forms. Forms already present and
    /// forms with an empty analysis are skipped.
    pub fn merge_external(
        &self,
        analyses: &BTreeMap<String, BTreeSet<Tag>>,
        priors: &TagPriors,
        tagset: Option<&Tagset>,
    ) -> Result<Lexicon, LexiconError> {
        let mut merged = self.clone();
        for (form, tags) in analyses {
            if let Some(ts) = tagset {
                if let Some(bad) = tags.iter().find(|t| !ts.contains(t.as_str())) {
                    return Err(LexiconError::UnknownTag {
                        form: form.clone(),
                        tag: bad.to_string(),
                    });
                }
            }
            if tags.is_empty() || self.contains(form) {
                continue;
            }
            let mut ordered: Vec<Tag> = tags.iter().cloned().collect();
            ordered.sort_by(|a, b| {
                priors
                    .get(b.as_str())
                    .total_cmp(&priors.get(a.as_str()))
                    .then_with(|| a.cmp(b))
            });
            merged.insert(LexiconEntry::external(form.clone(), ordered));
        }
        Ok(merged)
    }

    /// Adds corpus-derived entries for the forms of `c` this lexicon lacks.
    pub fn extend_unknown(&self, c: &Corpus) -> Lexicon {
        let mut out = self.clone();
        for e in Lexicon::build(c).entries.into_values() {
            if !self.contains(&e.form) {
                out.insert(e);
            }
        }
        out
    }

    /// Distinct forms of `sentences` absent from the lexicon, in order of
    /// first occurrence.
    pub fn unknown_types(&self, sentences: &[Vec<String>]) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for f in sentences.iter().flatten() {
            if !self.contains(f) && seen.insert(f.as_str()) {
                out.push(f.clone());
            }
        }
        out
    }

    /// Lines of `form<TAB>tag count<TAB>tag count ...`, sorted by form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in self.entries.values() {
            out.push_str(&e.form);
            for (t, c) in &e.tags {
                let _ = write!(out, "\t{t} {c}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::default();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let bad = |reason: &str| LexiconError::Malformed {
                line: lineno,
                reason: reason.to_string(),
            };
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let form = fields.next().unwrap_or("");
            if form.is_empty() {
                return Err(bad("empty word form"));
            }
            let mut tags = Vec::new();
            for field in fields {
                let (tag, count) = field
                    .split_once(' ')
                    .ok_or_else(|| bad("expected `tag count`"))?;
                let tag = Tag::new(tag).map_err(|_| bad("invalid tag"))?;
                let count: u64 = count.parse().map_err(|_| bad("invalid count"))?;
                if tags.iter().any(|(t, _)| *t == tag) {
                    return Err(bad("duplicate tag"));
                }
                tags.push((tag, count));
            }
            if tags.is_empty() {
                return Err(bad("entry has no tags"));
            }
            let origin = if tags.iter().all(|(_, c)| *c == 0) {
                Origin::External
            } else if tags.iter().all(|(_, c)| *c > 0) {
                Origin::Corpus
            } else {
                return Err(bad("mixes zero and non-zero counts"));
            };
            if origin == Origin::Corpus
                && tags
                    .windows(2)
                    .any(|w| (w[1].1, &w[0].0) > (w[0].1, &w[1].0))
            {
                return Err(bad("tags not ordered by descending count"));
            }
            if lex.contains(form) {
                return Err(bad("duplicate entry"));
            }
            lex.insert(LexiconEntry {
                form: form.to_string(),
                tags,
                origin,
            });
        }
        Ok(lex)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Lexicon, LexiconError> {
        Lexicon::parse(&read_text(path.as_ref())?)
    }
}

/// Corpus-wide relative tag frequencies, irrespective of word form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TagPriors {
    probabilities: BTreeMap<Tag, f64>,
}

impl TagPriors {
    pub fn from_corpus(c: &Corpus) -> Result<TagPriors, LexiconError> {
        let mut counts: BTreeMap<Tag, u64> = BTreeMap::new();
        for t in c.tokens() {
            *counts.entry(t.tag.clone()).or_default() += 1;
        }
        TagPriors::from_counts(counts)
    }

    /// Priors from the summed entry counts. For a lexicon built from a
    /// corpus this equals [`TagPriors::from_corpus`] on that corpus.
    pub fn from_lexicon(lex: &Lexicon) -> Result<TagPriors, LexiconError> {
        let mut counts: BTreeMap<Tag, u64> = BTreeMap::new();
        for e in lex.entries() {
            for (t, c) in e.tags() {
                *counts.entry(t.clone()).or_default() += c;
            }
        }
        TagPriors::from_counts(counts)
    }

    pub fn from_counts(counts: BTreeMap<Tag, u64>) -> Result<TagPriors, LexiconError> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(LexiconError::EmptyCorpus);
        }
        let probabilities = counts
            .into_iter()
            .map(|(t, c)| (t, c as f64 / total as f64))
            .collect();
        Ok(TagPriors { probabilities })
    }

    /// Probability of `tag`; 0 for tags never observed.
    pub fn get(&self, tag: &str) -> f64 {
        self.probabilities.get(tag).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tag, f64)> {
        self.probabilities.iter().map(|(t, p)| (t, *p))
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (t, p) in &self.probabilities {
            let _ = writeln!(out, "{t}\t{p}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<TagPriors, LexiconError> {
        let mut probabilities = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| LexiconError::Malformed {
                line: idx + 1,
                reason: reason.to_string(),
            };
            let (tag, p) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected `tag<TAB>p`"))?;
            let tag = Tag::new(tag).map_err(|_| bad("invalid tag"))?;
            let p: f64 = p.parse().map_err(|_| bad("invalid probability"))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(bad("probability outside [0, 1]"));
            }
            probabilities.insert(tag, p);
        }
        Ok(TagPriors { probabilities })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<TagPriors, LexiconError> {
        TagPriors::parse(&read_text(path.as_ref())?)
    }
}

pub fn tag_priors(c: &Corpus) -> Result<TagPriors, LexiconError> {
    TagPriors::from_corpus(c)
}
