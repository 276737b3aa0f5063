//! Transformation-based rule tagger.

pub mod learn;
pub mod rules;

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::corpus::{names, read_text, Tag};
use crate::lexicon::{Lexicon, LexiconError};
use crate::Tagger;

pub use learn::{
    frequent_words, learn_contextual, learn_lexical, simulated_unknowns, train, TrainingStats,
};
pub use rules::{ContextualRule, ContextualTemplate, FromTag, LexicalRule, LexicalTemplate};

#[derive(Debug, Error)]
pub enum TblError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}: {reason}")]
    Malformed {
        path: String,
        line: usize,
        reason: String,
    },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TblParams {
    pub lexical_threshold: i64,
    pub contextual_threshold: i64,
    pub bigram_restriction: usize,
}

impl Default for TblParams {
    fn default() -> TblParams {
        TblParams {
            lexical_threshold: 2,
            contextual_threshold: 1,
            bigram_restriction: 500,
        }
    }
}

impl TblParams {
    pub fn to_text(&self) -> String {
        format!(
            "lexical_threshold={}\ncontextual_threshold={}\nbigram_restriction={}\n",
            self.lexical_threshold, self.contextual_threshold, self.bigram_restriction
        )
    }

    /// Parses `key=value` lines; missing keys keep their defaults.
    pub fn parse(text: &str) -> Result<TblParams, (usize, String)> {
        let mut p = TblParams::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or((i + 1, "expected key=value".to_string()))?;
            let bad = |_| (i + 1, format!("bad value for {}: {}", k.trim(), v.trim()));
            match k.trim() {
                "lexical_threshold" => p.lexical_threshold = v.trim().parse().map_err(bad)?,
                "contextual_threshold" => p.contextual_threshold = v.trim().parse().map_err(bad)?,
                "bigram_restriction" => p.bigram_restriction = v.trim().parse().map_err(bad)?,
                other => return Err((i + 1, format!("unknown parameter {other}"))),
            }
        }
        Ok(p)
    }
}

/// The default tag for forms missing from the lexicon.
pub fn default_unknown_tag() -> Tag {
    Tag::new(names::NN).unwrap()
}

/// Most frequent tag for known forms, the unknown default otherwise.
pub fn initial_tag(forms: &[String], lex: &Lexicon) -> Vec<Tag> {
    forms
        .iter()
        .map(|f| match lex.get(f) {
            Some(e) => e.most_frequent_tag().clone(),
            None => default_unknown_tag(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TblModel {
    pub lexicon: Lexicon,
    pub lexical_rules: Vec<LexicalRule>,
    pub contextual_rules: Vec<ContextualRule>,
    pub frequent_words: Vec<String>,
    pub params: TblParams,
}

const LEXICON_FILE: &str = "lexicon.lex";
const LEXICAL_FILE: &str = "lexical.rules";
const CONTEXTUAL_FILE: &str = "contextual.rules";
const FREQUENT_FILE: &str = "frequent.words";
const PARAMS_FILE: &str = "params";

impl TblModel {
    /// Same rules with a different lexicon; nothing is relearned.
    pub fn with_lexicon(&self, lexicon: Lexicon) -> TblModel {
        TblModel {
            lexicon,
            ..self.clone()
        }
    }

    pub fn tag(&self, forms: &[String]) -> Vec<Tag> {
        let mut tags = initial_tag(forms, &self.lexicon);
        let unknown: Vec<bool> = forms.iter().map(|f| !self.lexicon.contains(f)).collect();
        rules::apply_lexical(&self.lexical_rules, forms, &mut tags, &unknown);
        rules::apply_contextual(&self.contextual_rules, forms, &mut tags);
        tags
    }

    /// Writes the model as plain text files inside `dir`, creating it if needed.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<(), TblError> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let mut frequent = self.frequent_words.join("\n");
        if !frequent.is_empty() {
            frequent.push('\n');
        }
        for (name, text) in [
            (LEXICON_FILE, self.lexicon.to_text()),
            (
                LEXICAL_FILE,
                rules::lexical_rules_to_text(&self.lexical_rules),
            ),
            (
                CONTEXTUAL_FILE,
                rules::contextual_rules_to_text(&self.contextual_rules),
            ),
            (FREQUENT_FILE, frequent),
            (PARAMS_FILE, self.params.to_text()),
        ] {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| io_err(&path, e))?;
        }
        Ok(())
    }

    /// Loads a model directory. `lexicon` replaces the stored lexicon when given.
    pub fn load(dir: impl AsRef<Path>, lexicon: Option<Lexicon>) -> Result<TblModel, TblError> {
        let dir = dir.as_ref();
        let read = |name: &str| -> Result<(PathBuf, String), TblError> {
            let path = dir.join(name);
            let text = read_text(&path).map_err(|e| TblError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            Ok((path, text))
        };
        let malformed = |path: &Path, (line, reason): (usize, String)| TblError::Malformed {
            path: path.display().to_string(),
            line,
            reason,
        };
        let lexicon = match lexicon {
            Some(l) => l,
            None => Lexicon::read(dir.join(LEXICON_FILE))?,
        };
        let (p, text) = read(LEXICAL_FILE)?;
        let lexical_rules = rules::parse_lexical_rules(&text).map_err(|e| malformed(&p, e))?;
        let (p, text) = read(CONTEXTUAL_FILE)?;
        let contextual_rules =
            rules::parse_contextual_rules(&text).map_err(|e| malformed(&p, e))?;
        let (_, text) = read(FREQUENT_FILE)?;
        let frequent_words = text
            .lines()
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect();
        let (p, text) = read(PARAMS_FILE)?;
        let params = TblParams::parse(&text).map_err(|e| malformed(&p, e))?;
        Ok(TblModel {
            lexicon,
            lexical_rules,
            contextual_rules,
            frequent_words,
            params,
        })
    }
}

fn io_err(path: &Path, e: std::io::Error) -> TblError {
    TblError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

impl Tagger for TblModel {
    fn tag_sentence(&self, forms: &[String]) -> Vec<Tag> {
        self.tag(forms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_vertical, Corpus, Sentence, TaggedToken};
    use proptest::prelude::*;

    fn t(s: &str) -> Tag {
        Tag::new(s).unwrap()
    }

    fn sent(pairs: &[(&str, &str)]) -> Sentence {
        Sentence {
            tokens: pairs
                .iter()
                .map(|(f, g)| TaggedToken::new(*f, t(g)))
                .collect(),
        }
    }

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn initial_tag_uses_lexicon_and_default() {
        let c = parse_vertical("der\tART\nder\tART\n\ndas\tART\ndas\tPDS\n", None).unwrap();
        let lex = Lexicon::build(&c);
        let tags = initial_tag(&strings(&["der", "Zylinderkopf", "das"]), &lex);
        assert_eq!(tags, vec![t("ART"), t("NN"), t("ART")]);
    }

    #[test]
    fn toy_suffix_rule() {
        let mut sentences = Vec::new();
        for i in 0..10 {
            let name = format!("{}{}x", (b'B' + i as u8) as char, (b'a' + i as u8) as char);
            sentences.push(sent(&[
                ("und", "KON"),
                (name.as_str(), "NE"),
                ("und", "KON"),
            ]));
        }
        let c = Corpus::new(sentences);
        let lex = Lexicon::build(&c);
        let rules = learn_lexical(&c, &lex, 2, &[]);
        assert_eq!(rules.len(), 1);
        let r = &rules[0];
        assert_eq!(r.template, LexicalTemplate::HasSuffix);
        assert_eq!(r.trigger, "x");
        assert_eq!(r.from, FromTag::Tag(t("NN")));
        assert_eq!(r.to, t("NE"));
        assert_eq!(r.score, 10);
    }

    #[test]
    fn toy_ptkzu_rule() {
        let mut sentences = Vec::new();
        let verbs = ["gehen", "laufen", "singen", "malen", "lesen"];
        for v in verbs {
            for _ in 0..2 {
                sentences.push(sent(&[("wir", "PPER"), (v, "VVFIN"), (".", "$.")]));
            }
            sentences.push(sent(&[
                ("um", "KOUI"),
                ("zu", "PTKZU"),
                (v, "VVINF"),
                (".", "$."),
            ]));
        }
        let c = Corpus::new(sentences);
        let lex = Lexicon::build(&c);
        let rules = learn_contextual(&c, &lex, &[], 1, &[]);
        assert!(!rules.is_empty());
        let r = &rules[0];
        assert_eq!(r.from, t("VVFIN"));
        assert_eq!(r.to, t("VVINF"));
        assert_eq!(r.score, 5);
        assert_eq!(r.template, ContextualTemplate::PrevTag);
        assert_eq!(r.triggers, vec!["PTKZU".to_string()]);
        assert_eq!(rules.len(), 1);
    }

    #[test]
    fn perfect_start_learns_nothing() {
        let c = parse_vertical("der\tART\nHund\tNN\n\nder\tART\nHund\tNN\n", None).unwrap();
        let lex = Lexicon::build(&c);
        assert!(learn_contextual(&c, &lex, &[], 1, &["der".into()]).is_empty());
    }

    #[test]
    fn word_rules_restricted_to_frequent_words() {
        let mut sentences = Vec::new();
        for _ in 0..3 {
            sentences.push(sent(&[("x", "A"), ("y", "B"), ("w", "C")]));
        }
        for _ in 0..4 {
            sentences.push(sent(&[("v", "D"), ("y", "C"), ("w", "C")]));
        }
        let c = Corpus::new(sentences);
        let lex = Lexicon::build(&c);
        let rules = learn_contextual(&c, &lex, &[], 1, &["v".into()]);
        for r in &rules {
            if let Some(w) = r.word_trigger() {
                assert_eq!(w, "v");
            }
        }
    }

    #[test]
    fn save_load_round_trip() {
        let c = parse_vertical(
            "um\tKOUI\nzu\tPTKZU\ngehen\tVVINF\n\nwir\tPPER\ngehen\tVVFIN\n\nwir\tPPER\ngehen\tVVFIN\n\nein\tART\nBaum\tNN\n",
            None,
        )
        .unwrap();
        let (m, _) = train(&c, &TblParams::default());
        let dir = tempfile::tempdir().unwrap();
        m.save(dir.path()).unwrap();
        let back = TblModel::load(dir.path(), None).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn params_parse() {
        let p = TblParams::parse("lexical_threshold=3\n# c\nbigram_restriction=10\n").unwrap();
        assert_eq!(p.lexical_threshold, 3);
        assert_eq!(p.contextual_threshold, 1);
        assert_eq!(p.bigram_restriction, 10);
        assert!(TblParams::parse("nope=1").is_err());
    }

    const FORMS: &[&str] = &[
        "der", "die", "das", "zu", "gehen", "Haus", "laufen", "und", "1", "2.",
    ];
    const TAGS: &[&str] = &[
        "ART", "PRELS", "PDS", "PTKZU", "VVINF", "VVFIN", "NN", "NE", "KON", "CARD", "ADJA",
    ];

    fn corpus_strategy() -> impl Strategy<Value = Corpus> {
        let token = (0..FORMS.len(), 0..TAGS.len(), 0..40usize);
        let sentence = prop::collection::vec(token, 1..7);
        prop::collection::vec(sentence, 1..14).prop_map(|ss| {
            Corpus::new(
                ss.into_iter()
                    .map(|s| Sentence {
                        tokens: s
                            .into_iter()
                            .map(|(f, g, u)| {
                                let form = if u < 6 {
                                    format!("Neu{u}e")
                                } else {
                                    FORMS[f].to_string()
                                };
                                TaggedToken::new(form, t(TAGS[g]))
                            })
                            .collect(),
                    })
                    .collect(),
            )
        })
    }

    fn correct(c: &Corpus, tagging: &[Vec<Tag>]) -> i64 {
        c.sentences
            .iter()
            .zip(tagging)
            .map(|(s, ts)| {
                s.tokens
                    .iter()
                    .zip(ts)
                    .filter(|(g, p)| g.tag == **p)
                    .count() as i64
            })
            .sum()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn contextual_scores_are_exact(c in corpus_strategy()) {
            let lex = Lexicon::build(&c);
            let frequent = frequent_words(&c, 4);
            let lexical = learn_lexical(&c, &lex, 2, &frequent);
            let mut tagging = learn::learning_start(&c, &lex, &lexical);
            let rules = learn_contextual(&c, &lex, &lexical, 1, &frequent);
            for r in &rules {
                prop_assert!(r.score >= 1);
                let before = correct(&c, &tagging);
                for (s, ts) in c.sentences.iter().zip(tagging.iter_mut()) {
                    rules::apply_contextual(std::slice::from_ref(r), &s.forms(), ts);
                }
                prop_assert_eq!(correct(&c, &tagging) - before, r.score);
                if let Some(w) = r.word_trigger() {
                    prop_assert!(frequent.iter().any(|f| f == w));
                }
            }
        }

        #[test]
        fn lexical_scores_are_exact(c in corpus_strategy()) {
            let lex = Lexicon::build(&c);
            let unknown = simulated_unknowns(&lex);
            let frequent = frequent_words(&c, 3);
            let rules = learn_lexical(&c, &lex, 2, &frequent);
            let mut tagging: Vec<Vec<Tag>> = c.sentences.iter().map(|s| vec![default_unknown_tag(); s.len()]).collect();
            let flags: Vec<Vec<bool>> = c.sentences.iter().map(|s| s.tokens.iter().map(|t| unknown.contains(&t.form)).collect()).collect();
            let score = |tagging: &[Vec<Tag>]| -> i64 {
                c.sentences.iter().zip(tagging).zip(&flags).map(|((s, ts), fl)| {
                    s.tokens.iter().zip(ts).zip(fl).filter(|((g, p), u)| **u && g.tag == **p).count() as i64
                }).sum()
            };
            for r in &rules {
                prop_assert!(r.score >= 2);
                let before = score(&tagging);
                for ((s, ts), fl) in c.sentences.iter().zip(tagging.iter_mut()).zip(&flags) {
                    rules::apply_lexical(std::slice::from_ref(r), &s.forms(), ts, fl);
                }
                prop_assert_eq!(score(&tagging) - before, r.score);
            }
        }

        #[test]
        fn training_accuracy_is_monotone(c in corpus_strategy()) {
            let (_, stats) = train(&c, &TblParams { bigram_restriction: 5, ..TblParams::default() });
            prop_assert!(stats.after_lexical_correct >= stats.initial_correct);
            prop_assert!(stats.final_correct >= stats.after_lexical_correct);
        }

        #[test]
        fn lexical_rules_skip_known_forms(c in corpus_strategy()) {
            let (m, _) = train(&c, &TblParams::default());
            for s in &c.sentences {
                let forms = s.forms();
                let mut tags = initial_tag(&forms, &m.lexicon);
                let before = tags.clone();
                let flags: Vec<bool> = forms.iter().map(|f| !m.lexicon.contains(f)).collect();
                rules::apply_lexical(&m.lexical_rules, &forms, &mut tags, &flags);
                for i in 0..forms.len() {
                    if !flags[i] {
                        prop_assert_eq!(&tags[i], &before[i]);
                    }
                }
                prop_assert_eq!(m.tag(&forms), m.tag(&forms));
            }
        }
    }
}
