//! Tagged corpora in the one-token-per-line vertical format.
//!
//! A corpus file holds one `form<TAB>tag` pair per line with a blank line
//! closing every sentence. Untagged input for the taggers uses the same
//! layout with the tag column left out.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tag names the toolkit refers to directly.
pub mod names {
    pub const CARD: &str = "CARD";
    pub const CARDNUM: &str = "CARDNUM";
    pub const NN: &str = "NN";
    pub const NE: &str = "NE";
    pub const ADJA: &str = "ADJA";
    pub const VVFIN: &str = "VVFIN";
    pub const VVINF: &str = "VVINF";
}

const BUNDLED_TAGSET: &str = include_str!("../data/stts.tags");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: tag `{tag}` is not in the tagset")]
    UnknownTag { line: usize, tag: String },
    #[error("invalid tag name `{0}`")]
    InvalidTag(String),
    #[error("split denominator must be at least 2, got {0}")]
    InvalidDenominator(usize),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// A part-of-speech label such as `NN`, `VVFIN` or `$.`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Tag(String);

impl Tag {
    pub fn new(name: &str) -> Result<Tag, CorpusError> {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(CorpusError::InvalidTag(name.to_string()));
        }
        Ok(Tag(name.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for Tag {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::new(s)
    }
}

impl TryFrom<String> for Tag {
    type Error = CorpusError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        Tag::new(&s)
    }
}

impl From<Tag> for String {
    fn from(t: Tag) -> String {
        t.0
    }
}

impl Borrow<str> for Tag {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedToken {
    pub form: String,
    pub tag: Tag,
}

impl TaggedToken {
    pub fn new(form: impl Into<String>, tag: Tag) -> TaggedToken {
        TaggedToken {
            form: form.into(),
            tag,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<TaggedToken>,
}

impl Sentence {
    pub fn forms(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.form.clone()).collect()
    }

    pub fn tags(&self) -> Vec<Tag> {
        self.tokens.iter().map(|t| t.tag.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
}

impl Corpus {
    pub fn new(sentences: Vec<Sentence>) -> Corpus {
        Corpus { sentences }
    }

    /// Pairs each sentence of `forms` with the tags a tagger assigned.
    ///
    /// Panics if the shapes differ; callers build `tags` from `forms`.
    pub fn from_tagging(forms: &[Vec<String>], tags: Vec<Vec<Tag>>) -> Corpus {
        assert_eq!(forms.len(), tags.len(), "sentence count mismatch");
        let sentences = forms
            .iter()
            .zip(tags)
            .map(|(f, t)| {
                assert_eq!(f.len(), t.len(), "sentence length mismatch");
                Sentence {
                    tokens: f
                        .iter()
                        .zip(t)
                        .map(|(form, tag)| TaggedToken::new(form.clone(), tag))
                        .collect(),
                }
            })
            .collect();
        Corpus { sentences }
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Sentence::len).sum()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &TaggedToken> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    /// The corpus with its tags stripped.
    pub fn forms(&self) -> Vec<Vec<String>> {
        self.sentences.iter().map(Sentence::forms).collect()
    }

    pub fn read(path: impl AsRef<Path>, tagset: Option<&Tagset>) -> Result<Corpus, CorpusError> {
        parse_vertical(&read_text(path.as_ref())?, tagset)
    }
}

/// The active tag inventory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tagset {
    tags: BTreeSet<Tag>,
    punctuation: BTreeSet<Tag>,
}

impl Tagset {
    /// The bundled STTS inventory with the added CARDNUM tag.
    pub fn stts() -> Tagset {
        Tagset::parse(BUNDLED_TAGSET).expect("bundled tagset is well-formed")
    }

    /// Reads one tag per line; `#` starts a comment. Tags beginning with `$`
    /// are punctuation.
    pub fn parse(text: &str) -> Result<Tagset, CorpusError> {
        let mut tags = BTreeSet::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            tags.insert(Tag::new(line)?);
        }
        let punctuation = tags
            .iter()
            .filter(|t| t.as_str().starts_with('$'))
            .cloned()
            .collect();
        Ok(Tagset { tags, punctuation })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Tagset, CorpusError> {
        Tagset::parse(&read_text(path.as_ref())?)
    }

    pub fn contains(&self, tag: &str) -> bool {
        self.tags.contains(tag)
    }

    pub fn tags(&self) -> &BTreeSet<Tag> {
        &self.tags
    }

    pub fn punctuation(&self) -> &BTreeSet<Tag> {
        &self.punctuation
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn malformed(line: usize, reason: &str) -> CorpusError {
    CorpusError::Malformed {
        line,
        reason: reason.to_string(),
    }
}

/// Parses a tagged corpus. With a tagset, every tag must be a member.
pub fn parse_vertical(text: &str, tagset: Option<&Tagset>) -> Result<Corpus, CorpusError> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.is_empty() {
            if !current.is_empty() {
                sentences.push(Sentence {
                    tokens: std::mem::take(&mut current),
                });
            }
            continue;
        }
        let (form, tag) = line
            .split_once('\t')
            .ok_or_else(|| malformed(lineno, "expected `form<TAB>tag`"))?;
        if form.is_empty() {
            return Err(malformed(lineno, "empty word form"));
        }
        if tag.is_empty() {
            return Err(malformed(lineno, "empty tag"));
        }
        let tag = Tag::new(tag).map_err(|_| malformed(lineno, "tag contains whitespace"))?;
        if let Some(ts) = tagset {
            if !ts.contains(tag.as_str()) {
                return Err(CorpusError::UnknownTag {
                    line: lineno,
                    tag: tag.0,
                });
            }
        }
        current.push(TaggedToken::new(form, tag));
    }
    if !current.is_empty() {
        sentences.push(Sentence { tokens: current });
    }
    Ok(Corpus { sentences })
}

/// Parses tagger input: one form per line, blank line between sentences.
/// A tag column, if present, is ignored.
pub fn parse_forms(text: &str) -> Result<Vec<Vec<String>>, CorpusError> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        let form = match line.split_once('\t') {
            Some((form, tag)) => {
                if tag.is_empty() {
                    return Err(malformed(lineno, "empty tag column"));
                }
                form
            }
            None => line,
        };
        if form.is_empty() {
            return Err(malformed(lineno, "empty word form"));
        }
        current.push(form.to_string());
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

pub fn read_forms(path: impl AsRef<Path>) -> Result<Vec<Vec<String>>, CorpusError> {
    parse_forms(&read_text(path.as_ref())?)
}

pub fn write_vertical(c: &Corpus) -> String {
    let mut out = String::new();
    for (i, s) in c.sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for t in &s.tokens {
            out.push_str(&t.form);
            out.push('\t');
            out.push_str(t.tag.as_str());
            out.push('\n');
        }
    }
    out
}

pub fn write_forms(sentences: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (i, s) in sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for f in s {
            out.push_str(f);
            out.push('\n');
        }
    }
    out
}

/// Round-robin split: sentence `k` (1-based) goes to the test part iff
/// `k` is divisible by `denominator`.
pub fn split_sentencewise(c: &Corpus, denominator: usize) -> Result<(Corpus, Corpus), CorpusError> {
    if denominator < 2 {
        return Err(CorpusError::InvalidDenominator(denominator));
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (i, s) in c.sentences.iter().enumerate() {
        if (i + 1) % denominator == 0 {
            test.push(s.clone());
        } else {
            train.push(s.clone());
        }
    }
    Ok((Corpus::new(train), Corpus::new(test)))
}

/// Whether `form` is a digit-sequence number: `[0-9]+([.,:][0-9]+)*`.
pub fn is_digit_sequence(form: &str) -> bool {
    let mut need_digit = true;
    for c in form.chars() {
        if c.is_ascii_digit() {
            need_digit = false;
        } else if matches!(c, '.' | ',' | ':') && !need_digit {
            need_digit = true;
        } else {
            return false;
        }
    }
    !need_digit
}

/// A digit sequence followed by a period, the written form of an ordinal ("3.").
pub fn is_ordinal_digits(form: &str) -> bool {
    form.strip_suffix('.').is_some_and(is_digit_sequence)
}

/// Retags digit-sequence CARD tokens as CARDNUM.
pub fn remap_cardnum(c: &Corpus) -> Corpus {
    let cardnum = Tag::new(names::CARDNUM).unwrap();
    let mut out = c.clone();
    for t in out.sentences.iter_mut().flat_map(|s| s.tokens.iter_mut()) {
        if t.tag.as_str() == names::CARD && is_digit_sequence(&t.form) {
            t.tag = cardnum.clone();
        }
    }
    out
}
