//! Greedy error-driven rule learning.
//!
//! Both learners repeat the same step: collect every rule instantiation that
//! would fix at least one current error, score each as corrections minus
//! miscorrections, keep the best, apply it, and stop once the best score
//! falls below the threshold. Candidates are generated only from error
//! sites; miscorrections are counted in a second pass restricted to the
//! candidate keys.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::corpus::{names, Corpus, Tag};
use crate::lexicon::Lexicon;

use super::rules::{
    apply_lexical, ContextualRule, ContextualTemplate, FromTag, LexicalRule, LexicalTemplate,
    BOUNDARY, DIGIT_CLASS, MAX_AFFIX,
};
use super::{initial_tag, TblModel, TblParams};

/// The `n` most frequent forms of `c`, descending by count, ties by form.
pub fn frequent_words(c: &Corpus, n: usize) -> Vec<String> {
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for t in c.tokens() {
        *counts.entry(&t.form).or_default() += 1;
    }
    let mut v: Vec<(&str, u64)> = counts.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    v.into_iter().take(n).map(|(f, _)| f.to_string()).collect()
}

/// Forms seen exactly once; they stand in for unknown words while learning.
pub fn simulated_unknowns(lex: &Lexicon) -> HashSet<String> {
    lex.entries()
        .filter(|e| e.total() == 1)
        .map(|e| e.form().to_string())
        .collect()
}

/// Sorted tag inventory; ids follow name order.
struct TagIds {
    names: Vec<Tag>,
    ids: HashMap<Tag, u16>,
}

impl TagIds {
    fn new(tags: impl IntoIterator<Item = Tag>) -> TagIds {
        let set: BTreeSet<Tag> = tags.into_iter().collect();
        let names: Vec<Tag> = set.into_iter().collect();
        let ids = names
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u16))
            .collect();
        TagIds { names, ids }
    }

    fn id(&self, t: &Tag) -> u16 {
        self.ids[t]
    }
}

fn unknown_default() -> Tag {
    Tag::new(names::NN).unwrap()
}

fn lexical_features(
    form: &str,
    left: Option<&str>,
    right: Option<&str>,
    frequent: &HashSet<&str>,
) -> Vec<(LexicalTemplate, String)> {
    let chars: Vec<char> = form.chars().collect();
    let mut out = Vec::new();
    for k in 1..=MAX_AFFIX.min(chars.len()) {
        out.push((
            LexicalTemplate::HasSuffix,
            chars[chars.len() - k..].iter().collect(),
        ));
        out.push((LexicalTemplate::HasPrefix, chars[..k].iter().collect()));
    }
    let distinct: BTreeSet<char> = chars.iter().copied().collect();
    for c in distinct {
        out.push((LexicalTemplate::CharContains, c.to_string()));
    }
    if chars.iter().any(|c| c.is_ascii_digit()) {
        out.push((LexicalTemplate::CharContains, DIGIT_CLASS.to_string()));
    }
    if let Some(w) = left.filter(|w| frequent.contains(w)) {
        out.push((LexicalTemplate::GoodLeftWord, w.to_string()));
    }
    if let Some(w) = right.filter(|w| frequent.contains(w)) {
        out.push((LexicalTemplate::GoodRightWord, w.to_string()));
    }
    out.sort();
    out.dedup();
    out
}

/// Source tag id for lexical candidates; specific tags order before `Any`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum From {
    Tag(u16),
    Any,
}

/// Learns lexical rules on the tokens of forms seen once in `train`,
/// starting from the unknown-word default tag.
pub fn learn_lexical(
    train: &Corpus,
    lex: &Lexicon,
    threshold: i64,
    frequent: &[String],
) -> Vec<LexicalRule> {
    let unknown = simulated_unknowns(lex);
    let frequent: HashSet<&str> = frequent.iter().map(String::as_str).collect();
    let tags = TagIds::new(
        train
            .tokens()
            .map(|t| t.tag.clone())
            .chain([unknown_default()]),
    );
    let default = tags.id(&unknown_default());

    let mut raw_feats = Vec::new();
    let mut gold = Vec::new();
    for s in &train.sentences {
        for (i, t) in s.tokens.iter().enumerate() {
            if !unknown.contains(&t.form) {
                continue;
            }
            let left = i.checked_sub(1).map(|j| s.tokens[j].form.as_str());
            let right = s.tokens.get(i + 1).map(|t| t.form.as_str());
            raw_feats.push(lexical_features(&t.form, left, right, &frequent));
            gold.push(tags.id(&t.tag));
        }
    }
    let feature_names: Vec<(LexicalTemplate, String)> = raw_feats
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let feature_ids: HashMap<&(LexicalTemplate, String), u32> = feature_names
        .iter()
        .enumerate()
        .map(|(i, f)| (f, i as u32))
        .collect();
    let feats: Vec<Vec<u32>> = raw_feats
        .iter()
        .map(|fs| fs.iter().map(|f| feature_ids[f]).collect())
        .collect();
    let mut index: Vec<Vec<usize>> = vec![Vec::new(); feature_names.len()];
    for (tok, fs) in feats.iter().enumerate() {
        for &f in fs {
            index[f as usize].push(tok);
        }
    }

    let mut cur = vec![default; gold.len()];
    let mut rules = Vec::new();
    loop {
        let mut good: HashMap<(u32, From, u16), i64> = HashMap::new();
        let mut correct_with: HashMap<u32, i64> = HashMap::new();
        let mut correct_with_tag: HashMap<(u32, u16), i64> = HashMap::new();
        for tok in 0..gold.len() {
            let (c, g) = (cur[tok], gold[tok]);
            for &f in &feats[tok] {
                if c != g {
                    *good.entry((f, From::Tag(c), g)).or_default() += 1;
                    *good.entry((f, From::Any, g)).or_default() += 1;
                } else {
                    *correct_with.entry(f).or_default() += 1;
                    *correct_with_tag.entry((f, c)).or_default() += 1;
                }
            }
        }
        let mut best: Option<(i64, (u32, From, u16))> = None;
        for (&key, &fixes) in &good {
            let (f, from, to) = key;
            let breaks = match from {
                From::Tag(t) => correct_with_tag.get(&(f, t)).copied().unwrap_or(0),
                From::Any => {
                    correct_with.get(&f).copied().unwrap_or(0)
                        - correct_with_tag.get(&(f, to)).copied().unwrap_or(0)
                }
            };
            let score = fixes - breaks;
            let better = match best {
                None => true,
                Some((s, k)) => score > s || (score == s && key < k),
            };
            if better {
                best = Some((score, key));
            }
        }
        let Some((score, (f, from, to))) = best else {
            break;
        };
        if score < threshold {
            break;
        }
        for &tok in &index[f as usize] {
            let admits = match from {
                From::Tag(t) => cur[tok] == t,
                From::Any => true,
            };
            if admits {
                cur[tok] = to;
            }
        }
        let (template, trigger) = feature_names[f as usize].clone();
        rules.push(LexicalRule {
            template,
            trigger,
            from: match from {
                From::Tag(t) => FromTag::Tag(tags.names[t as usize].clone()),
                From::Any => FromTag::Any,
            },
            to: tags.names[to as usize].clone(),
            score,
        });
    }
    rules
}

/// Initial tagging used to learn contextual rules: forms seen once are
/// treated as unknown and guessed by the lexical rules, all others get
/// their most frequent tag.
pub fn learning_start(
    train: &Corpus,
    lex: &Lexicon,
    lexical_rules: &[LexicalRule],
) -> Vec<Vec<Tag>> {
    let unknown = simulated_unknowns(lex);
    train
        .sentences
        .iter()
        .map(|s| {
            let forms = s.forms();
            let flags: Vec<bool> = forms
                .iter()
                .map(|f| unknown.contains(f) || !lex.contains(f))
                .collect();
            let mut tags: Vec<Tag> = forms
                .iter()
                .zip(&flags)
                .map(|(f, &u)| {
                    if u {
                        unknown_default()
                    } else {
                        lex.get(f).unwrap().most_frequent_tag().clone()
                    }
                })
                .collect();
            apply_lexical(lexical_rules, &forms, &mut tags, &flags);
            tags
        })
        .collect()
}

const NO_WORD: u32 = u32::MAX;

type CtxKey = (ContextualTemplate, u32, u32);

/// Flattened training corpus for contextual learning.
struct Flat {
    words: Vec<u32>,
    gold: Vec<u16>,
    cur: Vec<u16>,
    start: Vec<u32>,
    end: Vec<u32>,
    boundary: u16,
}

impl Flat {
    fn tag(&self, i: usize, off: isize) -> u32 {
        let j = i as isize + off;
        if j < self.start[i] as isize || j >= self.end[i] as isize {
            self.boundary as u32
        } else {
            self.cur[j as usize] as u32
        }
    }

    fn word(&self, i: usize, off: isize) -> u32 {
        let j = i as isize + off;
        if j < self.start[i] as isize || j >= self.end[i] as isize {
            NO_WORD
        } else {
            self.words[j as usize]
        }
    }

    fn instantiate(&self, i: usize, out: &mut Vec<CtxKey>) {
        use ContextualTemplate::*;
        out.clear();
        let (p1, p2, p3) = (self.tag(i, -1), self.tag(i, -2), self.tag(i, -3));
        let (n1, n2, n3) = (self.tag(i, 1), self.tag(i, 2), self.tag(i, 3));
        out.push((PrevTag, p1, 0));
        out.push((NextTag, n1, 0));
        for (tmpl, vals) in [
            (Prev1Or2Tag, &[p1, p2][..]),
            (Prev1Or2Or3Tag, &[p1, p2, p3][..]),
            (Next1Or2Tag, &[n1, n2][..]),
            (Next1Or2Or3Tag, &[n1, n2, n3][..]),
        ] {
            for (k, &v) in vals.iter().enumerate() {
                if !vals[..k].contains(&v) {
                    out.push((tmpl, v, 0));
                }
            }
        }
        out.push((PrevBigramTags, p2, p1));
        out.push((NextBigramTags, n1, n2));
        out.push((SurroundTags, p1, n1));
        let (wp, wn, w0) = (self.word(i, -1), self.word(i, 1), self.word(i, 0));
        if wp != NO_WORD {
            out.push((PrevWord, wp, 0));
        }
        if wn != NO_WORD {
            out.push((NextWord, wn, 0));
        }
        if w0 != NO_WORD {
            out.push((CurrentWordAndPrevTag, w0, p1));
            out.push((CurrentWordAndNextTag, w0, n1));
        }
    }

    fn matches(&self, i: usize, (tmpl, a, b): CtxKey) -> bool {
        use ContextualTemplate::*;
        let t = |off| self.tag(i, off);
        match tmpl {
            PrevTag => t(-1) == a,
            NextTag => t(1) == a,
            Prev1Or2Tag => t(-1) == a || t(-2) == a,
            Prev1Or2Or3Tag => t(-1) == a || t(-2) == a || t(-3) == a,
            Next1Or2Tag => t(1) == a || t(2) == a,
            Next1Or2Or3Tag => t(1) == a || t(2) == a || t(3) == a,
            PrevBigramTags => t(-2) == a && t(-1) == b,
            NextBigramTags => t(1) == a && t(2) == b,
            SurroundTags => t(-1) == a && t(1) == b,
            PrevWord => self.word(i, -1) == a,
            NextWord => self.word(i, 1) == a,
            CurrentWordAndPrevTag => self.words[i] == a && t(-1) == b,
            CurrentWordAndNextTag => self.words[i] == a && t(1) == b,
        }
    }
}

/// Learns contextual rules on the whole training corpus, starting from
/// [`learning_start`]. Word triggers come only from `frequent`.
pub fn learn_contextual(
    train: &Corpus,
    lex: &Lexicon,
    lexical_rules: &[LexicalRule],
    threshold: i64,
    frequent: &[String],
) -> Vec<ContextualRule> {
    let start_tags = learning_start(train, lex, lexical_rules);
    learn_contextual_from(train, &start_tags, threshold, frequent)
}

pub(crate) fn learn_contextual_from(
    train: &Corpus,
    start_tags: &[Vec<Tag>],
    threshold: i64,
    frequent: &[String],
) -> Vec<ContextualRule> {
    let boundary = Tag::new(BOUNDARY).unwrap();
    let tags = TagIds::new(
        train
            .tokens()
            .map(|t| t.tag.clone())
            .chain(start_tags.iter().flatten().cloned())
            .chain([boundary.clone()]),
    );
    let mut words_sorted: Vec<&str> = frequent.iter().map(String::as_str).collect();
    words_sorted.sort();
    words_sorted.dedup();
    let word_ids: HashMap<&str, u32> = words_sorted
        .iter()
        .enumerate()
        .map(|(i, w)| (*w, i as u32))
        .collect();

    let n = train.token_count();
    let mut flat = Flat {
        words: Vec::with_capacity(n),
        gold: Vec::with_capacity(n),
        cur: Vec::with_capacity(n),
        start: Vec::with_capacity(n),
        end: Vec::with_capacity(n),
        boundary: tags.id(&boundary),
    };
    for (s, st) in train.sentences.iter().zip(start_tags) {
        let begin = flat.gold.len() as u32;
        let finish = begin + s.len() as u32;
        for (t, cur) in s.tokens.iter().zip(st) {
            flat.words
                .push(word_ids.get(t.form.as_str()).copied().unwrap_or(NO_WORD));
            flat.gold.push(tags.id(&t.tag));
            flat.cur.push(tags.id(cur));
            flat.start.push(begin);
            flat.end.push(finish);
        }
    }

    let mut rules = Vec::new();
    let mut buf = Vec::new();
    let mut hits = Vec::new();
    loop {
        let mut good: HashMap<(CtxKey, u16, u16), i64> = HashMap::new();
        for i in 0..n {
            let (c, g) = (flat.cur[i], flat.gold[i]);
            if c == g {
                continue;
            }
            flat.instantiate(i, &mut buf);
            for &k in &buf {
                *good.entry((k, c, g)).or_default() += 1;
            }
        }
        if good.is_empty() {
            break;
        }
        let mut bad: HashMap<(CtxKey, u16), i64> =
            good.keys().map(|&(k, from, _)| ((k, from), 0)).collect();
        let mut is_source = vec![false; tags.names.len()];
        for &(_, from, _) in good.keys() {
            is_source[from as usize] = true;
        }
        for i in 0..n {
            let c = flat.cur[i];
            if c != flat.gold[i] || !is_source[c as usize] {
                continue;
            }
            flat.instantiate(i, &mut buf);
            for &k in &buf {
                if let Some(b) = bad.get_mut(&(k, c)) {
                    *b += 1;
                }
            }
        }
        let mut best: Option<(i64, (CtxKey, u16, u16))> = None;
        for (&key, &fixes) in &good {
            let score = fixes - bad[&(key.0, key.1)];
            let better = match best {
                None => true,
                Some((s, k)) => score > s || (score == s && key < k),
            };
            if better {
                best = Some((score, key));
            }
        }
        let (score, (ctx, from, to)) = best.expect("non-empty candidate set");
        if score < threshold {
            break;
        }
        hits.clear();
        hits.extend((0..n).filter(|&i| flat.cur[i] == from && flat.matches(i, ctx)));
        for &i in &hits {
            flat.cur[i] = to;
        }
        let (template, a, b) = ctx;
        let tag_name = |id: u32| tags.names[id as usize].to_string();
        let word_name = |id: u32| words_sorted[id as usize].to_string();
        let triggers = match template.arity() {
            1 if template.is_word_based() => vec![word_name(a)],
            1 => vec![tag_name(a)],
            _ if template.is_word_based() => vec![word_name(a), tag_name(b)],
            _ => vec![tag_name(a), tag_name(b)],
        };
        rules.push(ContextualRule {
            template,
            triggers,
            from: tags.names[from as usize].clone(),
            to: tags.names[to as usize].clone(),
            score,
        });
    }
    rules
}

/// Token counts on the training corpus at each stage of learning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainingStats {
    pub tokens: usize,
    /// Correct tokens under the unknown-default/most-frequent-tag start.
    pub initial_correct: usize,
    pub after_lexical_correct: usize,
    pub final_correct: usize,
}

/// Trains a complete model: lexicon, frequent words, lexical rules, and
/// contextual rules.
pub fn train(train: &Corpus, params: &TblParams) -> (TblModel, TrainingStats) {
    let lexicon = Lexicon::build(train);
    let frequent = frequent_words(train, params.bigram_restriction);
    let lexical_rules = learn_lexical(train, &lexicon, params.lexical_threshold, &frequent);

    let initial = learning_start(train, &lexicon, &[]);
    let start = learning_start(train, &lexicon, &lexical_rules);
    let contextual_rules =
        learn_contextual_from(train, &start, params.contextual_threshold, &frequent);

    let mut finished = start.clone();
    for (s, tags) in train.sentences.iter().zip(finished.iter_mut()) {
        super::rules::apply_contextual(&contextual_rules, &s.forms(), tags);
    }
    let correct = |tagging: &[Vec<Tag>]| -> usize {
        train
            .sentences
            .iter()
            .zip(tagging)
            .map(|(s, t)| s.tokens.iter().zip(t).filter(|(g, p)| g.tag == **p).count())
            .sum()
    };
    let stats = TrainingStats {
        tokens: train.token_count(),
        initial_correct: correct(&initial),
        after_lexical_correct: correct(&start),
        final_correct: correct(&finished),
    };
    let model = TblModel {
        lexicon,
        lexical_rules,
        contextual_rules,
        frequent_words: frequent,
        params: params.clone(),
    };
    (model, stats)
}

/// Accuracy of plain initial tagging (most frequent tag, default for
/// unknowns) on `c` with `lex`.
pub fn initial_accuracy(c: &Corpus, lex: &Lexicon) -> f64 {
    let mut correct = 0usize;
    for s in &c.sentences {
        let tags = initial_tag(&s.forms(), lex);
        correct += s
            .tokens
            .iter()
            .zip(&tags)
            .filter(|(g, p)| g.tag == **p)
            .count();
    }
    correct as f64 / c.token_count().max(1) as f64
}
