//! Adapters to external morphological analyzers.
//!
//! An analyzer receives distinct word types and returns, for each, the set
//! of tags it considers possible. An empty set means "no analysis".

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::corpus::{is_digit_sequence, is_ordinal_digits, names, read_text, Tag, Tagset};

const BUNDLED_MAPPING: &str = include_str!("../data/gertwol-stts.map");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("unmapped analyzer category `{category}` (form `{form}`)")]
    Unmapped { category: String, form: String },
    #[error("tag `{tag}` for `{form}` is not in the tagset")]
    UnknownTag { tag: String, form: String },
    #[error("{path}, line {line}: {reason}")]
    Malformed {
        path: String,
        line: usize,
        reason: String,
    },
    #[error(
        "invalid analyzer spec `{0}` (expected `stub` or `file:<request>,<response>[,<mapping>]`)"
    )]
    BadSpec(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphAnalysis {
    pub form: String,
    pub tags: BTreeSet<Tag>,
}

pub trait Analyzer {
    /// One analysis per input form, in input order.
    fn analyze_batch(&self, forms: &[String]) -> Result<Vec<MorphAnalysis>, MorphError>;
}

/// Analyses keyed by form, dropping nothing (empty sets included).
pub fn analyses_by_form(analyses: Vec<MorphAnalysis>) -> BTreeMap<String, BTreeSet<Tag>> {
    analyses.into_iter().map(|a| (a.form, a.tags)).collect()
}

/// Orthographic guesser used when no real analyzer is available.
#[derive(Clone, Debug, Default)]
pub struct StubAnalyzer;

impl StubAnalyzer {
    fn guess(form: &str) -> BTreeSet<Tag> {
        let mut tags = BTreeSet::new();
        let t = |s: &str| Tag::new(s).unwrap();
        if is_digit_sequence(form) {
            tags.insert(t(names::CARDNUM));
            return tags;
        }
        if is_ordinal_digits(form) {
            tags.insert(t(names::ADJA));
            return tags;
        }
        if form.chars().next().is_some_and(char::is_uppercase) {
            tags.insert(t(names::NN));
            tags.insert(t(names::NE));
        }
        if ["en", "eln", "ern"].iter().any(|s| form.ends_with(s)) {
            tags.insert(t(names::VVFIN));
            tags.insert(t(names::VVINF));
        }
        tags
    }
}

impl Analyzer for StubAnalyzer {
    fn analyze_batch(&self, forms: &[String]) -> Result<Vec<MorphAnalysis>, MorphError> {
        Ok(forms
            .iter()
            .map(|f| MorphAnalysis {
                form: f.clone(),
                tags: StubAnalyzer::guess(f),
            })
            .collect())
    }
}

/// Native analyzer categories mapped to tags. Each category maps to one or
/// more tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryMap {
    map: BTreeMap<String, Vec<Tag>>,
}

impl CategoryMap {
    pub fn bundled() -> CategoryMap {
        CategoryMap::parse(BUNDLED_MAPPING, "<bundled>").expect("bundled mapping is well-formed")
    }

    pub fn parse(text: &str, origin: &str) -> Result<CategoryMap, MorphError> {
        let mut map = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| MorphError::Malformed {
                path: origin.to_string(),
                line: idx + 1,
                reason: reason.to_string(),
            };
            let (cat, tags) = line
                .split_once('\t')
                .ok_or_else(|| bad("expected `category<TAB>tags`"))?;
            let tags = tags
                .split(' ')
                .filter(|s| !s.is_empty())
                .map(|s| Tag::new(s).map_err(|_| bad("invalid tag")))
                .collect::<Result<Vec<_>, _>>()?;
            if tags.is_empty() {
                return Err(bad("category maps to no tag"));
            }
            map.insert(cat.to_string(), tags);
        }
        Ok(CategoryMap { map })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<CategoryMap, MorphError> {
        let path = path.as_ref();
        let text = read_text(path).map_err(|e| MorphError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        CategoryMap::parse(&text, &path.display().to_string())
    }

    pub fn get(&self, category: &str) -> Option<&[Tag]> {
        self.map.get(category).map(Vec::as_slice)
    }

    /// Checks that every target tag is in `tagset`.
    pub fn validate(&self, tagset: &Tagset) -> Result<(), MorphError> {
        for (cat, tags) in &self.map {
            if let Some(t) = tags.iter().find(|t| !tagset.contains(t.as_str())) {
                return Err(MorphError::UnknownTag {
                    tag: t.to_string(),
                    form: format!("<category {cat}>"),
                });
            }
        }
        Ok(())
    }
}

/// Batch protocol through files: the request file lists one form per line;
/// the response file holds `form<TAB>CAT1 CAT2 ...` lines written by the
/// external analyzer (an empty category field means no analysis).
///
/// Without a mapping table the response categories must already be tags.
#[derive(Clone, Debug)]
pub struct FileAnalyzer {
    pub request: PathBuf,
    pub response: PathBuf,
    pub mapping: Option<CategoryMap>,
    pub tagset: Tagset,
}

impl FileAnalyzer {
    pub fn write_request(&self, forms: &[String]) -> Result<(), MorphError> {
        let mut text = String::new();
        for f in forms {
            text.push_str(f);
            text.push('\n');
        }
        fs::write(&self.request, text).map_err(|e| MorphError::Io {
            path: self.request.display().to_string(),
            message: e.to_string(),
        })
    }

    fn read_response(&self) -> Result<BTreeMap<String, BTreeSet<Tag>>, MorphError> {
        let path = self.response.display().to_string();
        let text = fs::read_to_string(&self.response).map_err(|e| MorphError::Io {
            path: path.clone(),
            message: format!(
                "{e}; request written to {}, run the analyzer on it to produce this file",
                self.request.display()
            ),
        })?;
        let mut out = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let (form, cats) = line.split_once('\t').unwrap_or((line, ""));
            if form.is_empty() {
                return Err(MorphError::Malformed {
                    path: path.clone(),
                    line: idx + 1,
                    reason: "empty word form".into(),
                });
            }
            let mut tags = BTreeSet::new();
            for cat in cats.split(' ').filter(|s| !s.is_empty()) {
                match &self.mapping {
                    Some(m) => {
                        let mapped = m.get(cat).ok_or_else(|| MorphError::Unmapped {
                            category: cat.to_string(),
                            form: form.to_string(),
                        })?;
                        tags.extend(mapped.iter().cloned());
                    }
                    None => {
                        let tag = Tag::new(cat).map_err(|_| MorphError::Unmapped {
                            category: cat.to_string(),
                            form: form.to_string(),
                        })?;
                        tags.insert(tag);
                    }
                }
            }
            if let Some(t) = tags.iter().find(|t| !self.tagset.contains(t.as_str())) {
                return Err(MorphError::UnknownTag {
                    tag: t.to_string(),
                    form: form.to_string(),
                });
            }
            out.entry(form.to_string())
                .or_insert_with(BTreeSet::new)
                .extend(tags);
        }
        Ok(out)
    }
}

impl Analyzer for FileAnalyzer {
    /// Writes the request file, then reads the response. Forms missing from
    /// the response count as unanalyzed.
    fn analyze_batch(&self, forms: &[String]) -> Result<Vec<MorphAnalysis>, MorphError> {
        self.write_request(forms)?;
        let mut response = self.read_response()?;
        Ok(forms
            .iter()
            .map(|f| MorphAnalysis {
                form: f.clone(),
                tags: response.remove(f).unwrap_or_default(),
            })
            .collect())
    }
}

/// Builds an analyzer from a command-line spec: `stub` or
/// `file:<request>,<response>[,<mapping>]`.
pub fn analyzer_from_spec(
    spec: &str,
    tagset: &Tagset,
) -> Result<Box<dyn Analyzer + Send + Sync>, MorphError> {
    if spec == "stub" {
        return Ok(Box::new(StubAnalyzer));
    }
    let rest = spec
        .strip_prefix("file:")
        .ok_or_else(|| MorphError::BadSpec(spec.to_string()))?;
    let parts: Vec<&str> = rest.split(',').collect();
    let (request, response, mapping) = match parts.as_slice() {
        [req, resp] => (req, resp, None),
        [req, resp, map] => (req, resp, Some(*map)),
        _ => return Err(MorphError::BadSpec(spec.to_string())),
    };
    if request.is_empty() || response.is_empty() {
        return Err(MorphError::BadSpec(spec.to_string()));
    }
    let mapping = match mapping {
        None => None,
        Some("bundled") => Some(CategoryMap::bundled()),
        Some(path) => Some(CategoryMap::read(path)?),
    };
    if let Some(m) = &mapping {
        m.validate(tagset)?;
    }
    Ok(Box::new(FileAnalyzer {
        request: PathBuf::from(request),
        response: PathBuf::from(response),
        mapping,
        tagset: tagset.clone(),
    }))
}
