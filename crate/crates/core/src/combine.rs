//! Sequential tagger combination: one tagger's guesses for unknown forms
//! become lexicon entries (or training data) for the other.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{is_digit_sequence, is_ordinal_digits, names, Corpus, Tag};
use crate::dtree::{self, DTreeError, DTreeModel, DTreeParams};
use crate::eval::{evaluate, EvalError, EvalReport};
use crate::lexicon::{Lexicon, LexiconEntry};
use crate::tag_all;
use crate::tbl::TblModel;

#[derive(Debug, Error)]
pub enum CombineError {
    #[error("the filtered export policy needs morphological analyses")]
    MissingAnalyses,
    #[error(transparent)]
    DTree(#[from] DTreeError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExportPolicy {
    /// The tree tag of every unknown form.
    All,
    /// Digit, morph-permits and morph-unique rules only.
    FilteredNoNe,
    /// All five filter rules.
    #[default]
    Filtered,
}

impl ExportPolicy {
    pub fn name(self) -> &'static str {
        match self {
            ExportPolicy::All => "all",
            ExportPolicy::FilteredNoNe => "filtered-no-ne",
            ExportPolicy::Filtered => "filtered",
        }
    }
}

impl fmt::Display for ExportPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExportPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<ExportPolicy, String> {
        [
            ExportPolicy::All,
            ExportPolicy::FilteredNoNe,
            ExportPolicy::Filtered,
        ]
        .into_iter()
        .find(|p| p.name() == s)
        .ok_or_else(|| {
            format!("unknown export policy {s:?} (expected all, filtered or filtered-no-ne)")
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExportReason {
    DigitPattern,
    MorphPermits,
    MorphUnique,
    NeUnanalyzed,
    NoExport,
    ExportAll,
}

impl ExportReason {
    pub fn name(self) -> &'static str {
        match self {
            ExportReason::DigitPattern => "digit-pattern",
            ExportReason::MorphPermits => "morph-permits",
            ExportReason::MorphUnique => "morph-unique",
            ExportReason::NeUnanalyzed => "ne-unanalyzed",
            ExportReason::NoExport => "no-export",
            ExportReason::ExportAll => "export-all",
        }
    }
}

impl fmt::Display for ExportReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExportDecision {
    pub form: String,
    pub exported: Option<Tag>,
    pub reason: ExportReason,
}

impl ExportDecision {
    /// `form<TAB>tag-or-∅<TAB>reason`.
    pub fn to_line(&self) -> String {
        let tag = self.exported.as_ref().map_or("∅", |t| t.as_str());
        format!("{}\t{}\t{}", self.form, tag, self.reason)
    }
}

fn tag(name: &str) -> Tag {
    Tag::new(name).expect("valid tag name")
}

/// The five ordered export rules. `ne_rule` switches rule 4 on or off.
pub fn export_filter_with(
    form: &str,
    tree_tag: &Tag,
    morph_tags: Option<&BTreeSet<Tag>>,
    ne_rule: bool,
) -> ExportDecision {
    let decide = |exported: Option<Tag>, reason| ExportDecision {
        form: form.to_string(),
        exported,
        reason,
    };
    if is_digit_sequence(form) {
        return decide(Some(tag(names::CARDNUM)), ExportReason::DigitPattern);
    }
    if is_ordinal_digits(form) {
        return decide(Some(tag(names::ADJA)), ExportReason::DigitPattern);
    }
    let empty = BTreeSet::new();
    let morph = morph_tags.unwrap_or(&empty);
    if morph.contains(tree_tag) {
        return decide(Some(tree_tag.clone()), ExportReason::MorphPermits);
    }
    if morph.len() == 1 {
        return decide(morph.iter().next().cloned(), ExportReason::MorphUnique);
    }
    if ne_rule && morph.is_empty() && tree_tag.as_str() == names::NE {
        return decide(Some(tree_tag.clone()), ExportReason::NeUnanalyzed);
    }
    decide(None, ExportReason::NoExport)
}

pub fn export_filter(
    form: &str,
    tree_tag: &Tag,
    morph_tags: Option<&BTreeSet<Tag>>,
) -> ExportDecision {
    export_filter_with(form, tree_tag, morph_tags, true)
}

/// Most frequent tag per form over a tagging, ties broken by tag name.
fn majority_tags(sentences: &[Vec<String>], tags: &[Vec<Tag>]) -> HashMap<String, Tag> {
    let mut counts: HashMap<&str, BTreeMap<&Tag, u64>> = HashMap::new();
    for (fs, ts) in sentences.iter().zip(tags) {
        for (f, t) in fs.iter().zip(ts) {
            *counts.entry(f).or_default().entry(t).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|(f, c)| {
            let mut best: Option<(&Tag, u64)> = None;
            for (t, n) in c {
                if best.is_none_or(|(_, b)| n > b) {
                    best = Some((t, n));
                }
            }
            (f.to_string(), best.unwrap().0.clone())
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct TreeThenTbl {
    pub tagged: Corpus,
    /// Against gold, with the extended lexicon; absent without gold.
    pub report: Option<EvalReport>,
    /// One per unknown type, in order of first occurrence.
    pub decisions: Vec<ExportDecision>,
    pub extended_lexicon: Lexicon,
}

/// Tags with the tree tagger, exports tags for forms unknown to the rule
/// tagger's lexicon, and tags again with the rule tagger on the extended
/// lexicon. Neither model is modified.
pub fn run_tree_then_tbl(
    test_forms: &[Vec<String>],
    dmodel: &DTreeModel,
    tmodel: &TblModel,
    policy: ExportPolicy,
    analyses: Option<&BTreeMap<String, BTreeSet<Tag>>>,
    gold: Option<&Corpus>,
    jobs: usize,
) -> Result<TreeThenTbl, CombineError> {
    if policy != ExportPolicy::All && analyses.is_none() {
        return Err(CombineError::MissingAnalyses);
    }
    let tree_tags = tag_all(dmodel, test_forms, jobs);
    let majority = majority_tags(test_forms, &tree_tags);
    let mut extended = tmodel.lexicon.clone();
    let mut decisions = Vec::new();
    for form in tmodel.lexicon.unknown_types(test_forms) {
        let tree_tag = &majority[&form];
        let d = match policy {
            ExportPolicy::All => ExportDecision {
                form: form.clone(),
                exported: Some(tree_tag.clone()),
                reason: ExportReason::ExportAll,
            },
            _ => export_filter_with(
                &form,
                tree_tag,
                analyses.and_then(|a| a.get(&form)),
                policy == ExportPolicy::Filtered,
            ),
        };
        if let Some(t) = &d.exported {
            extended.insert(LexiconEntry::external(form.clone(), vec![t.clone()]));
        }
        decisions.push(d);
    }
    let receiver = tmodel.with_lexicon(extended);
    let tagged = Corpus::from_tagging(test_forms, tag_all(&receiver, test_forms, jobs));
    let report = gold
        .map(|g| evaluate(g, &tagged, &receiver.lexicon))
        .transpose()?;
    Ok(TreeThenTbl {
        tagged,
        report,
        decisions,
        extended_lexicon: receiver.lexicon,
    })
}

#[derive(Clone, Debug)]
pub struct TblThenTree {
    pub tagged: Corpus,
    pub report: Option<EvalReport>,
    pub model: DTreeModel,
}

/// Tags with the rule tagger, adds its output to the training corpus and
/// its tags for unknown forms to the lexicon, retrains the tree tagger on
/// both, and tags again.
pub fn run_tbl_then_tree(
    train: &Corpus,
    test_forms: &[Vec<String>],
    tmodel: &TblModel,
    dparams: &DTreeParams,
    lex: &Lexicon,
    gold: Option<&Corpus>,
    jobs: usize,
) -> Result<TblThenTree, CombineError> {
    let tbl_tagged = Corpus::from_tagging(test_forms, tag_all(tmodel, test_forms, jobs));
    let extended_lex = lex.extend_unknown(&tbl_tagged);
    let mut extended_train = train.clone();
    extended_train
        .sentences
        .extend(tbl_tagged.sentences.iter().cloned());
    let model = dtree::train(&extended_train, &extended_lex, dparams)?;
    let tagged = Corpus::from_tagging(test_forms, tag_all(&model, test_forms, jobs));
    let report = gold
        .map(|g| evaluate(g, &tagged, model.lexicon()))
        .transpose()?;
    Ok(TblThenTree {
        tagged,
        report,
        model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_vertical;
    use crate::tbl::{self, TblParams};

    fn set(tags: &[&str]) -> BTreeSet<Tag> {
        tags.iter().map(|t| tag(t)).collect()
    }

    fn check(
        form: &str,
        tree: &str,
        morph: Option<&[&str]>,
        tag_out: Option<&str>,
        reason: ExportReason,
    ) {
        let m = morph.map(set);
        let d = export_filter(form, &tag(tree), m.as_ref());
        assert_eq!(
            d.exported.as_ref().map(|t| t.as_str()),
            tag_out,
            "{form} {tree} {morph:?}"
        );
        assert_eq!(d.reason, reason, "{form} {tree} {morph:?}");
    }

    #[test]
    fn quoted_cases() {
        check(
            "1906",
            "NN",
            Some(&["NN"]),
            Some("CARDNUM"),
            ExportReason::DigitPattern,
        );
        check("42.", "NN", None, Some("ADJA"), ExportReason::DigitPattern);
        check(
            "gehen",
            "VVFIN",
            Some(&["VVFIN", "VVINF"]),
            Some("VVFIN"),
            ExportReason::MorphPermits,
        );
        check(
            "Grüne",
            "ADJA",
            Some(&["NN"]),
            Some("NN"),
            ExportReason::MorphUnique,
        );
        check(
            "Bahn",
            "VVFIN",
            Some(&["NN", "NE"]),
            None,
            ExportReason::NoExport,
        );
        check(
            "Weber",
            "NE",
            Some(&[]),
            Some("NE"),
            ExportReason::NeUnanalyzed,
        );
        check("Weber", "NE", None, Some("NE"), ExportReason::NeUnanalyzed);
        check("Haus", "NN", Some(&[]), None, ExportReason::NoExport);
    }

    #[test]
    fn decision_table() {
        // digit × membership × analysis size × NE flag
        for digit in [false, true] {
            for member in [false, true] {
                for size in [0usize, 1, 2] {
                    for ne in [false, true] {
                        for ne_rule in [false, true] {
                            if member && size == 0 {
                                continue;
                            }
                            let form = if digit { "2024" } else { "Wort" };
                            let tree = if ne { "NE" } else { "NN" };
                            let others = ["ADV", "VVFIN"];
                            let mut morph: Vec<&str> = Vec::new();
                            if member {
                                morph.push(tree);
                            }
                            for o in others {
                                if morph.len() < size {
                                    morph.push(o);
                                }
                            }
                            let m = set(&morph);
                            let d = export_filter_with(form, &tag(tree), Some(&m), ne_rule);
                            let expected = if digit {
                                (Some("CARDNUM"), ExportReason::DigitPattern)
                            } else if member {
                                (Some(tree), ExportReason::MorphPermits)
                            } else if size == 1 {
                                (Some(morph[0]), ExportReason::MorphUnique)
                            } else if size == 0 && ne && ne_rule {
                                (Some("NE"), ExportReason::NeUnanalyzed)
                            } else {
                                (None, ExportReason::NoExport)
                            };
                            assert_eq!(
                                (d.exported.as_ref().map(|t| t.as_str()), d.reason),
                                expected
                            );
                            assert_eq!(d.exported.is_none(), d.reason == ExportReason::NoExport);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn policy_names_round_trip() {
        for p in [
            ExportPolicy::All,
            ExportPolicy::FilteredNoNe,
            ExportPolicy::Filtered,
        ] {
            assert_eq!(p.name().parse::<ExportPolicy>().unwrap(), p);
        }
        assert!("some".parse::<ExportPolicy>().is_err());
        let d = export_filter("Haus", &tag("NN"), None);
        assert_eq!(d.to_line(), "Haus\t∅\tno-export");
    }

    fn train_corpus() -> Corpus {
        parse_vertical(
            "der\tART\nMann\tNN\nsieht\tVVFIN\nMaria\tNE\n.\t$.\n\n\
             die\tART\nFrau\tNN\nsieht\tVVFIN\nden\tART\nMann\tNN\n.\t$.\n\n\
             der\tART\nMann\tNN\ngeht\tVVFIN\n.\t$.\n\n\
             die\tART\nFrau\tNN\ngeht\tVVFIN\n.\t$.\n",
            None,
        )
        .unwrap()
    }

    #[test]
    fn tree_then_tbl_covers_unknown_types_once() {
        let train = train_corpus();
        let lex = Lexicon::build(&train);
        let d = dtree::train(&train, &lex, &DTreeParams::default()).unwrap();
        let (t, _) = tbl::train(&train, &TblParams::default());
        let gold = parse_vertical(
            "die\tART\nFrau\tNN\nsieht\tVVFIN\nPeter\tNE\n.\t$.\n\nPeter\tNE\ngeht\tVVFIN\n1906\tCARDNUM\n.\t$.\n",
            None,
        )
        .unwrap();
        let forms = gold.forms();
        let analyses: BTreeMap<String, BTreeSet<Tag>> =
            [("Peter".to_string(), set(&["NE"]))].into();
        let out = run_tree_then_tbl(
            &forms,
            &d,
            &t,
            ExportPolicy::Filtered,
            Some(&analyses),
            Some(&gold),
            1,
        )
        .unwrap();
        let decided: Vec<&str> = out.decisions.iter().map(|d| d.form.as_str()).collect();
        assert_eq!(decided, vec!["Peter", "1906"]);
        assert_eq!(out.decisions[1].exported, Some(tag("CARDNUM")));
        for d in &out.decisions {
            assert!(!t.lexicon.contains(&d.form));
            assert_eq!(out.extended_lexicon.contains(&d.form), d.exported.is_some());
        }
        assert_eq!(t.lexicon, Lexicon::build(&train));
        assert!(out.report.is_some());

        assert!(matches!(
            run_tree_then_tbl(&forms, &d, &t, ExportPolicy::Filtered, None, None, 1),
            Err(CombineError::MissingAnalyses)
        ));
        let all = run_tree_then_tbl(&forms, &d, &t, ExportPolicy::All, None, None, 1).unwrap();
        assert!(all
            .decisions
            .iter()
            .all(|d| d.reason == ExportReason::ExportAll && d.exported.is_some()));
        assert!(all.report.is_none());
    }

    #[test]
    fn no_unknowns_means_plain_tbl() {
        let train = train_corpus();
        let lex = Lexicon::build(&train);
        let d = dtree::train(&train, &lex, &DTreeParams::default()).unwrap();
        let (t, _) = tbl::train(&train, &TblParams::default());
        let forms = train.forms();
        let out = run_tree_then_tbl(
            &forms,
            &d,
            &t,
            ExportPolicy::Filtered,
            Some(&BTreeMap::new()),
            None,
            1,
        )
        .unwrap();
        assert!(out.decisions.is_empty());
        assert_eq!(
            out.tagged,
            Corpus::from_tagging(&forms, tag_all(&t, &forms, 1))
        );
    }

    #[test]
    fn tbl_then_tree_learns_from_correct_output() {
        let train = train_corpus();
        let lex = Lexicon::build(&train);
        let (t, _) = tbl::train(&train, &TblParams::default());
        let gold = parse_vertical(
            "die\tART\nFrau\tNN\nsieht\tVVFIN\nden\tART\nMann\tNN\n.\t$.\n",
            None,
        )
        .unwrap();
        assert_eq!(
            Corpus::from_tagging(&gold.forms(), tag_all(&t, &gold.forms(), 1)),
            gold
        );
        let out = run_tbl_then_tree(
            &train,
            &gold.forms(),
            &t,
            &DTreeParams::default(),
            &lex,
            Some(&gold),
            1,
        )
        .unwrap();
        assert_eq!(out.report.unwrap().accuracy, 100.0);

        let plain = dtree::train(&train, &lex, &DTreeParams::default()).unwrap();
        let empty =
            run_tbl_then_tree(&train, &[], &t, &DTreeParams::default(), &lex, None, 1).unwrap();
        assert_eq!(empty.model, plain);
        assert!(empty.tagged.is_empty());
    }
}
