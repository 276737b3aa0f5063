//! Accuracy tables stratified by lexicon ambiguity, with lexical and
//! disambiguation errors kept apart, plus directional error-type counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{Corpus, Tag};
use crate::lexicon::{Lexicon, LexiconEntry};

/// Ambiguity levels at or above this value share one row.
pub const TOP_LEVEL: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("corpora diverge at sentence {sentence}, token {token}: {reason}")]
    Misaligned {
        sentence: usize,
        token: usize,
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EvalRow {
    /// Number of lexicon tags; [`TOP_LEVEL`] stands for that many or more.
    pub ambiguity: usize,
    pub tokens: u64,
    pub correct: u64,
    pub lexical_errors: u64,
    pub disambiguation_errors: u64,
}

impl EvalRow {
    pub fn label(&self) -> String {
        if self.ambiguity >= TOP_LEVEL {
            format!(">={TOP_LEVEL}")
        } else {
            self.ambiguity.to_string()
        }
    }

    fn add(&mut self, other: &EvalRow) {
        self.tokens += other.tokens;
        self.correct += other.correct;
        self.lexical_errors += other.lexical_errors;
        self.disambiguation_errors += other.disambiguation_errors;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    /// Non-empty levels in ascending order.
    pub rows: Vec<EvalRow>,
    pub totals: EvalRow,
    /// Percentage of correct tokens.
    pub accuracy: f64,
    /// Mean ambiguity over tokens present in the lexicon.
    pub mean_ambiguity: f64,
}

impl EvalReport {
    pub fn row(&self, ambiguity: usize) -> Option<&EvalRow> {
        self.rows
            .iter()
            .find(|r| r.ambiguity == ambiguity.min(TOP_LEVEL))
    }

    /// Tokens whose form is missing from the lexicon.
    pub fn gap_tokens(&self) -> u64 {
        self.row(0).map_or(0, |r| r.tokens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorTypeCount {
    pub correct_tag: Tag,
    pub tagger_tag: Tag,
    pub count: u64,
}

fn check_alignment(gold: &Corpus, predicted: &Corpus) -> Result<(), EvalError> {
    for (si, (g, p)) in gold.sentences.iter().zip(&predicted.sentences).enumerate() {
        for (ti, (a, b)) in g.tokens.iter().zip(&p.tokens).enumerate() {
            if a.form != b.form {
                return Err(EvalError::Misaligned {
                    sentence: si + 1,
                    token: ti + 1,
                    reason: format!("form {:?} vs {:?}", a.form, b.form),
                });
            }
        }
        if g.len() != p.len() {
            return Err(EvalError::Misaligned {
                sentence: si + 1,
                token: g.len().min(p.len()) + 1,
                reason: format!("sentence lengths {} vs {}", g.len(), p.len()),
            });
        }
    }
    if gold.len() != predicted.len() {
        return Err(EvalError::Misaligned {
            sentence: gold.len().min(predicted.len()) + 1,
            token: 1,
            reason: format!("sentence counts {} vs {}", gold.len(), predicted.len()),
        });
    }
    Ok(())
}

/// Scores `predicted` against `gold`. An error is a disambiguation error
/// when the gold tag is one of at least two tags in the token's lexicon
/// entry, and a lexical error otherwise: the gold tag is missing from the
/// entry, the form is unknown, or the entry offered no choice.
pub fn evaluate(gold: &Corpus, predicted: &Corpus, lex: &Lexicon) -> Result<EvalReport, EvalError> {
    check_alignment(gold, predicted)?;
    let mut rows: BTreeMap<usize, EvalRow> = BTreeMap::new();
    let mut amb_sum = 0u64;
    let mut known = 0u64;
    for (g, p) in gold.tokens().zip(predicted.tokens()) {
        let entry = lex.get(&g.form);
        let amb = entry.map_or(0, |e| e.ambiguity());
        if amb > 0 {
            amb_sum += amb as u64;
            known += 1;
        }
        let level = amb.min(TOP_LEVEL);
        let row = rows.entry(level).or_insert(EvalRow {
            ambiguity: level,
            ..EvalRow::default()
        });
        row.tokens += 1;
        if g.tag == p.tag {
            row.correct += 1;
        } else if is_choice(entry, &g.tag) {
            row.disambiguation_errors += 1;
        } else {
            row.lexical_errors += 1;
        }
    }
    let rows: Vec<EvalRow> = rows.into_values().collect();
    let mut totals = EvalRow::default();
    for r in &rows {
        totals.add(r);
    }
    let accuracy = if totals.tokens == 0 {
        0.0
    } else {
        100.0 * totals.correct as f64 / totals.tokens as f64
    };
    let mean_ambiguity = if known == 0 {
        0.0
    } else {
        amb_sum as f64 / known as f64
    };
    Ok(EvalReport {
        rows,
        totals,
        accuracy,
        mean_ambiguity,
    })
}

fn is_choice(entry: Option<&LexiconEntry>, gold: &Tag) -> bool {
    entry.is_some_and(|e| e.ambiguity() >= 2 && e.contains(gold.as_str()))
}

/// Whether an error on a token with this gold tag and entry counts as lexical.
pub fn is_lexical_error(entry: Option<&LexiconEntry>, gold: &Tag) -> bool {
    !is_choice(entry, gold)
}

/// Mismatched (gold, predicted) pairs, most frequent first, ties by tag names.
pub fn error_types(gold: &Corpus, predicted: &Corpus) -> Result<Vec<ErrorTypeCount>, EvalError> {
    check_alignment(gold, predicted)?;
    let mut counts: BTreeMap<(&Tag, &Tag), u64> = BTreeMap::new();
    for (g, p) in gold.tokens().zip(predicted.tokens()) {
        if g.tag != p.tag {
            *counts.entry((&g.tag, &p.tag)).or_default() += 1;
        }
    }
    let mut out: Vec<ErrorTypeCount> = counts
        .into_iter()
        .map(|((g, p), count)| ErrorTypeCount {
            correct_tag: g.clone(),
            tagger_tag: p.clone(),
            count,
        })
        .collect();
    out.sort_by_key(|e| std::cmp::Reverse(e.count));
    Ok(out)
}

pub fn render_error_types(types: &[ErrorTypeCount]) -> String {
    let mut out = String::new();
    for t in types {
        let _ = writeln!(out, "{}\t{}\t{}", t.correct_tag, t.tagger_tag, t.count);
    }
    out
}

/// `100 * num / den` with two decimals, rounded half up; "0.00" when `den` is 0.
pub fn percent(num: u64, den: u64) -> String {
    if den == 0 {
        return "0.00".to_string();
    }
    let hundredths = (num as u128 * 20_000 + den as u128) / (2 * den as u128);
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

fn cells(r: &EvalRow, label: &str, all: u64) -> [String; 9] {
    [
        label.to_string(),
        r.tokens.to_string(),
        percent(r.tokens, all),
        r.correct.to_string(),
        percent(r.correct, r.tokens),
        r.lexical_errors.to_string(),
        percent(r.lexical_errors, r.tokens),
        r.disambiguation_errors.to_string(),
        percent(r.disambiguation_errors, r.tokens),
    ]
}

const HEADER: [&str; 9] = [
    "ambiguity",
    "tokens",
    "%",
    "correct",
    "%",
    "LE",
    "%",
    "DE",
    "%",
];

/// Fixed-width table: header, one line per level, and a total line.
pub fn render_table(r: &EvalReport) -> String {
    let widths = [9, 8, 7, 8, 7, 7, 7, 7, 7];
    let line = |cells: &[String]| -> String {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
            if i == 0 {
                let _ = write!(s, "{c:<w$}");
            } else {
                let _ = write!(s, " {c:>w$}");
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(&HEADER.map(String::from));
    for row in &r.rows {
        out.push_str(&line(&cells(row, &row.label(), r.totals.tokens)));
    }
    out.push_str(&line(&cells(&r.totals, "total", r.totals.tokens)));
    out
}

pub fn render_csv(r: &EvalReport) -> String {
    let mut out =
        String::from("ambiguity,tokens,tokens_pct,correct,correct_pct,le,le_pct,de,de_pct\n");
    for row in &r.rows {
        out.push_str(&cells(row, &row.label(), r.totals.tokens).join(","));
        out.push('\n');
    }
    out.push_str(&cells(&r.totals, "total", r.totals.tokens).join(","));
    out.push('\n');
    out
}
