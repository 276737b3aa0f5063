//! Rule templates, rule application, and the plain-text rule files.
//!
//! Rule files hold one rule per line, fields separated by single spaces:
//!
//! ```text
//! has-suffix e NN ADJA 41
//! char-contains [0-9] * CARDNUM 12
//! prev-tag PTKZU VVFIN VVINF 5
//! surround-tags ART $, NN NE 2
//! ```
//!
//! Word triggers escape `\` as `\\` and a space as `\s`. In lexical rules
//! `*` as the source tag matches any tag.

use std::fmt;

use crate::corpus::Tag;

/// Tag value of positions outside the sentence.
pub const BOUNDARY: &str = "<S>";

/// `char-contains` trigger matching any ASCII digit.
pub const DIGIT_CLASS: &str = "[0-9]";

pub const MAX_AFFIX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LexicalTemplate {
    HasSuffix,
    HasPrefix,
    CharContains,
    /// The word immediately to the left equals the trigger.
    GoodLeftWord,
    /// The word immediately to the right equals the trigger.
    GoodRightWord,
}

impl LexicalTemplate {
    pub const ALL: [LexicalTemplate; 5] = [
        LexicalTemplate::HasSuffix,
        LexicalTemplate::HasPrefix,
        LexicalTemplate::CharContains,
        LexicalTemplate::GoodLeftWord,
        LexicalTemplate::GoodRightWord,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LexicalTemplate::HasSuffix => "has-suffix",
            LexicalTemplate::HasPrefix => "has-prefix",
            LexicalTemplate::CharContains => "char-contains",
            LexicalTemplate::GoodLeftWord => "good-left-word",
            LexicalTemplate::GoodRightWord => "good-right-word",
        }
    }

    pub fn from_name(name: &str) -> Option<LexicalTemplate> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    pub fn is_word_based(self) -> bool {
        matches!(
            self,
            LexicalTemplate::GoodLeftWord | LexicalTemplate::GoodRightWord
        )
    }
}

/// Source tag of a lexical rule. Orders specific tags before the wildcard.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FromTag {
    Tag(Tag),
    Any,
}

impl FromTag {
    pub fn admits(&self, tag: &Tag) -> bool {
        match self {
            FromTag::Tag(t) => t == tag,
            FromTag::Any => true,
        }
    }
}

impl fmt::Display for FromTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FromTag::Tag(t) => write!(f, "{t}"),
            FromTag::Any => f.write_str("*"),
        }
    }
}

/// Guesses a tag for an unknown word from form-internal evidence or an
/// adjacent frequent word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexicalRule {
    pub template: LexicalTemplate,
    pub trigger: String,
    pub from: FromTag,
    pub to: Tag,
    pub score: i64,
}

impl LexicalRule {
    pub fn triggers(&self, form: &str, left: Option<&str>, right: Option<&str>) -> bool {
        let trig = self.trigger.as_str();
        match self.template {
            LexicalTemplate::HasSuffix => form.ends_with(trig),
            LexicalTemplate::HasPrefix => form.starts_with(trig),
            LexicalTemplate::CharContains => {
                if trig == DIGIT_CLASS {
                    form.chars().any(|c| c.is_ascii_digit())
                } else {
                    form.contains(trig)
                }
            }
            LexicalTemplate::GoodLeftWord => left == Some(trig),
            LexicalTemplate::GoodRightWord => right == Some(trig),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContextualTemplate {
    PrevTag,
    NextTag,
    Prev1Or2Tag,
    Prev1Or2Or3Tag,
    Next1Or2Tag,
    Next1Or2Or3Tag,
    /// Triggers: tag at -2, tag at -1.
    PrevBigramTags,
    /// Triggers: tag at +1, tag at +2.
    NextBigramTags,
    /// Triggers: tag at -1, tag at +1.
    SurroundTags,
    PrevWord,
    NextWord,
    /// Triggers: current word, tag at -1.
    CurrentWordAndPrevTag,
    /// Triggers: current word, tag at +1.
    CurrentWordAndNextTag,
}

impl ContextualTemplate {
    pub const ALL: [ContextualTemplate; 13] = [
        ContextualTemplate::PrevTag,
        ContextualTemplate::NextTag,
        ContextualTemplate::Prev1Or2Tag,
        ContextualTemplate::Prev1Or2Or3Tag,
        ContextualTemplate::Next1Or2Tag,
        ContextualTemplate::Next1Or2Or3Tag,
        ContextualTemplate::PrevBigramTags,
        ContextualTemplate::NextBigramTags,
        ContextualTemplate::SurroundTags,
        ContextualTemplate::PrevWord,
        ContextualTemplate::NextWord,
        ContextualTemplate::CurrentWordAndPrevTag,
        ContextualTemplate::CurrentWordAndNextTag,
    ];

    pub fn name(self) -> &'static str {
        use ContextualTemplate::*;
        match self {
            PrevTag => "prev-tag",
            NextTag => "next-tag",
            Prev1Or2Tag => "prev-1-or-2-tag",
            Prev1Or2Or3Tag => "prev-1-or-2-or-3-tag",
            Next1Or2Tag => "next-1-or-2-tag",
            Next1Or2Or3Tag => "next-1-or-2-or-3-tag",
            PrevBigramTags => "prev-bigram-tags",
            NextBigramTags => "next-bigram-tags",
            SurroundTags => "surround-tags",
            PrevWord => "prev-word",
            NextWord => "next-word",
            CurrentWordAndPrevTag => "current-word-and-prev-tag",
            CurrentWordAndNextTag => "current-word-and-next-tag",
        }
    }

    pub fn from_name(name: &str) -> Option<ContextualTemplate> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    pub fn arity(self) -> usize {
        use ContextualTemplate::*;
        match self {
            PrevBigramTags
            | NextBigramTags
            | SurroundTags
            | CurrentWordAndPrevTag
            | CurrentWordAndNextTag => 2,
            _ => 1,
        }
    }

    /// Whether the first trigger is a word rather than a tag.
    pub fn is_word_based(self) -> bool {
        use ContextualTemplate::*;
        matches!(
            self,
            PrevWord | NextWord | CurrentWordAndPrevTag | CurrentWordAndNextTag
        )
    }

    /// Farthest token offset the template inspects.
    pub fn reach(self) -> usize {
        use ContextualTemplate::*;
        match self {
            Prev1Or2Or3Tag | Next1Or2Or3Tag => 3,
            Prev1Or2Tag | Next1Or2Tag | PrevBigramTags | NextBigramTags => 2,
            _ => 1,
        }
    }
}

/// Rewrites `from` to `to` when the surrounding tags or frequent words match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextualRule {
    pub template: ContextualTemplate,
    pub triggers: Vec<String>,
    pub from: Tag,
    pub to: Tag,
    pub score: i64,
}

impl ContextualRule {
    /// Whether the context around position `i` matches, reading `tags` as
    /// they are (the source tag is not checked).
    pub fn triggers_at(&self, forms: &[String], tags: &[Tag], i: usize) -> bool {
        use ContextualTemplate::*;
        let tag_at = |off: isize| -> &str {
            let j = i as isize + off;
            if j < 0 || j as usize >= tags.len() {
                BOUNDARY
            } else {
                tags[j as usize].as_str()
            }
        };
        let word_at = |off: isize| -> Option<&str> {
            let j = i as isize + off;
            if j < 0 || j as usize >= forms.len() {
                None
            } else {
                Some(forms[j as usize].as_str())
            }
        };
        let a = self.triggers[0].as_str();
        let b = self.triggers.get(1).map(String::as_str).unwrap_or("");
        match self.template {
            PrevTag => tag_at(-1) == a,
            NextTag => tag_at(1) == a,
            Prev1Or2Tag => tag_at(-1) == a || tag_at(-2) == a,
            Prev1Or2Or3Tag => tag_at(-1) == a || tag_at(-2) == a || tag_at(-3) == a,
            Next1Or2Tag => tag_at(1) == a || tag_at(2) == a,
            Next1Or2Or3Tag => tag_at(1) == a || tag_at(2) == a || tag_at(3) == a,
            PrevBigramTags => tag_at(-2) == a && tag_at(-1) == b,
            NextBigramTags => tag_at(1) == a && tag_at(2) == b,
            SurroundTags => tag_at(-1) == a && tag_at(1) == b,
            PrevWord => word_at(-1) == Some(a),
            NextWord => word_at(1) == Some(a),
            CurrentWordAndPrevTag => word_at(0) == Some(a) && tag_at(-1) == b,
            CurrentWordAndNextTag => word_at(0) == Some(a) && tag_at(1) == b,
        }
    }

    /// The word trigger, for word-based templates.
    pub fn word_trigger(&self) -> Option<&str> {
        self.template
            .is_word_based()
            .then(|| self.triggers[0].as_str())
    }
}

/// Applies lexical rules in order to the positions flagged `unknown`.
pub fn apply_lexical(rules: &[LexicalRule], forms: &[String], tags: &mut [Tag], unknown: &[bool]) {
    for rule in rules {
        for i in 0..forms.len() {
            if !unknown[i] || !rule.from.admits(&tags[i]) || tags[i] == rule.to {
                continue;
            }
            let left = i.checked_sub(1).map(|j| forms[j].as_str());
            let right = forms.get(i + 1).map(String::as_str);
            if rule.triggers(&forms[i], left, right) {
                tags[i] = rule.to.clone();
            }
        }
    }
}

/// Applies contextual rules in order. Within one rule, contexts are read
/// from the tagging as it stood before that rule's pass.
pub fn apply_contextual(rules: &[ContextualRule], forms: &[String], tags: &mut [Tag]) {
    let mut hits = Vec::new();
    for rule in rules {
        hits.clear();
        hits.extend(
            (0..tags.len()).filter(|&i| tags[i] == rule.from && rule.triggers_at(forms, tags, i)),
        );
        for &i in &hits {
            tags[i] = rule.to.clone();
        }
    }
}

fn escape(word: &str) -> String {
    word.replace('\\', "\\\\").replace(' ', "\\s")
}

fn unescape(field: &str) -> Option<String> {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next()? {
                '\\' => out.push('\\'),
                's' => out.push(' '),
                _ => return None,
            }
        } else {
            out.push(c);
        }
    }
    (!out.is_empty()).then_some(out)
}

pub fn lexical_rules_to_text(rules: &[LexicalRule]) -> String {
    rules
        .iter()
        .map(|r| {
            format!(
                "{} {} {} {} {}\n",
                r.template.name(),
                escape(&r.trigger),
                r.from,
                r.to,
                r.score
            )
        })
        .collect()
}

pub fn contextual_rules_to_text(rules: &[ContextualRule]) -> String {
    rules
        .iter()
        .map(|r| {
            let trig: Vec<String> = r.triggers.iter().map(|t| escape(t)).collect();
            format!(
                "{} {} {} {} {}\n",
                r.template.name(),
                trig.join(" "),
                r.from,
                r.to,
                r.score
            )
        })
        .collect()
}

pub fn parse_lexical_rules(text: &str) -> Result<Vec<LexicalRule>, (usize, String)> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |r: &str| (idx + 1, r.to_string());
        let f: Vec<&str> = line.split(' ').collect();
        let [tmpl, trig, from, to, score] = f.as_slice() else {
            return Err(bad("expected `template trigger from to score`"));
        };
        let template =
            LexicalTemplate::from_name(tmpl).ok_or_else(|| bad("unknown lexical template"))?;
        let trigger = unescape(trig).ok_or_else(|| bad("invalid trigger"))?;
        let from = if *from == "*" {
            FromTag::Any
        } else {
            FromTag::Tag(Tag::new(from).map_err(|_| bad("invalid tag"))?)
        };
        let to = Tag::new(to).map_err(|_| bad("invalid tag"))?;
        let score = score.parse().map_err(|_| bad("invalid score"))?;
        out.push(LexicalRule {
            template,
            trigger,
            from,
            to,
            score,
        });
    }
    Ok(out)
}

pub fn parse_contextual_rules(text: &str) -> Result<Vec<ContextualRule>, (usize, String)> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |r: &str| (idx + 1, r.to_string());
        let f: Vec<&str> = line.split(' ').collect();
        let template = ContextualTemplate::from_name(f[0])
            .ok_or_else(|| bad("unknown contextual template"))?;
        let n = template.arity();
        if f.len() != n + 4 {
            return Err(bad("wrong number of fields"));
        }
        let triggers = f[1..=n]
            .iter()
            .map(|t| unescape(t).ok_or_else(|| bad("invalid trigger")))
            .collect::<Result<Vec<_>, _>>()?;
        let from = Tag::new(f[n + 1]).map_err(|_| bad("invalid tag"))?;
        let to = Tag::new(f[n + 2]).map_err(|_| bad("invalid tag"))?;
        let score = f[n + 3].parse().map_err(|_| bad("invalid score"))?;
        out.push(ContextualRule {
            template,
            triggers,
            from,
            to,
            score,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(s: &str) -> Tag {
        Tag::new(s).unwrap()
    }

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn tags(v: &[&str]) -> Vec<Tag> {
        v.iter().map(|s| tag(s)).collect()
    }

    #[test]
    fn lexical_triggers() {
        let r = |template, trig: &str| LexicalRule {
            template,
            trigger: trig.into(),
            from: FromTag::Any,
            to: tag("NN"),
            score: 0,
        };
        assert!(r(LexicalTemplate::HasSuffix, "ung").triggers("Zeitung", None, None));
        assert!(r(LexicalTemplate::HasSuffix, "ung").triggers("ung", None, None));
        assert!(r(LexicalTemplate::HasPrefix, "ge").triggers("gemacht", None, None));
        assert!(r(LexicalTemplate::CharContains, DIGIT_CLASS).triggers("2345", None, None));
        assert!(!r(LexicalTemplate::CharContains, DIGIT_CLASS).triggers("abc", None, None));
        assert!(r(LexicalTemplate::CharContains, "-").triggers("Nord-Süd", None, None));
        assert!(r(LexicalTemplate::GoodLeftWord, "der").triggers("x", Some("der"), None));
        assert!(!r(LexicalTemplate::GoodLeftWord, "der").triggers("x", None, Some("der")));
        assert!(r(LexicalTemplate::GoodRightWord, "und").triggers("x", None, Some("und")));
    }

    #[test]
    fn contextual_window() {
        let forms = strs(&["zu", "a", "b", "c", "d"]);
        let t = tags(&["PTKZU", "X", "Y", "Z", "W"]);
        let rule = |template, trig: &[&str]| ContextualRule {
            template,
            triggers: strs(trig),
            from: tag("Z"),
            to: tag("Q"),
            score: 0,
        };
        use ContextualTemplate::*;
        assert!(rule(PrevTag, &["Y"]).triggers_at(&forms, &t, 3));
        assert!(rule(Prev1Or2Or3Tag, &["X"]).triggers_at(&forms, &t, 3));
        assert!(rule(Prev1Or2Tag, &["X"]).triggers_at(&forms, &t, 3));
        assert!(!rule(Prev1Or2Tag, &["PTKZU"]).triggers_at(&forms, &t, 3));
        assert!(rule(Prev1Or2Or3Tag, &["PTKZU"]).triggers_at(&forms, &t, 3));
        assert!(rule(PrevBigramTags, &["X", "Y"]).triggers_at(&forms, &t, 3));
        assert!(rule(SurroundTags, &["Y", "W"]).triggers_at(&forms, &t, 3));
        assert!(rule(NextTag, &[BOUNDARY]).triggers_at(&forms, &t, 4));
        assert!(rule(PrevTag, &[BOUNDARY]).triggers_at(&forms, &t, 0));
        assert!(rule(NextBigramTags, &["W", BOUNDARY]).triggers_at(&forms, &t, 3));
        assert!(rule(CurrentWordAndPrevTag, &["c", "Y"]).triggers_at(&forms, &t, 3));
        assert!(rule(PrevWord, &["b"]).triggers_at(&forms, &t, 3));
        assert!(!rule(NextWord, &["b"]).triggers_at(&forms, &t, 3));
        for tmpl in ContextualTemplate::ALL {
            assert!(tmpl.reach() <= 3);
        }
    }

    #[test]
    fn contextual_pass_does_not_cascade() {
        // X X X with "prev-tag X: X -> Y" turns only positions 1 and 2.
        let forms = strs(&["a", "b", "c"]);
        let mut t = tags(&["X", "X", "X"]);
        let rule = ContextualRule {
            template: ContextualTemplate::PrevTag,
            triggers: strs(&["X"]),
            from: tag("X"),
            to: tag("Y"),
            score: 1,
        };
        apply_contextual(&[rule], &forms, &mut t);
        assert_eq!(t, tags(&["X", "Y", "Y"]));
    }

    #[test]
    fn lexical_only_touches_unknown() {
        let forms = strs(&["Haus", "Maus"]);
        let mut t = tags(&["NN", "NN"]);
        let rule = LexicalRule {
            template: LexicalTemplate::HasSuffix,
            trigger: "aus".into(),
            from: FromTag::Tag(tag("NN")),
            to: tag("NE"),
            score: 3,
        };
        apply_lexical(&[rule], &forms, &mut t, &[false, true]);
        assert_eq!(t, tags(&["NN", "NE"]));
    }

    #[test]
    fn rule_files_round_trip() {
        let lex = vec![
            LexicalRule {
                template: LexicalTemplate::HasSuffix,
                trigger: "e".into(),
                from: FromTag::Tag(tag("NN")),
                to: tag("ADJA"),
                score: 41,
            },
            LexicalRule {
                template: LexicalTemplate::GoodLeftWord,
                trigger: "New York\\".into(),
                from: FromTag::Any,
                to: tag("NE"),
                score: 2,
            },
        ];
        let text = lexical_rules_to_text(&lex);
        assert_eq!(text.lines().next().unwrap(), "has-suffix e NN ADJA 41");
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "good-left-word New\\sYork\\\\ * NE 2"
        );
        assert_eq!(parse_lexical_rules(&text).unwrap(), lex);

        let ctx = vec![
            ContextualRule {
                template: ContextualTemplate::PrevTag,
                triggers: strs(&["PTKZU"]),
                from: tag("VVFIN"),
                to: tag("VVINF"),
                score: 5,
            },
            ContextualRule {
                template: ContextualTemplate::SurroundTags,
                triggers: strs(&[BOUNDARY, "$,"]),
                from: tag("NN"),
                to: tag("NE"),
                score: 1,
            },
        ];
        let text = contextual_rules_to_text(&ctx);
        assert_eq!(text.lines().next().unwrap(), "prev-tag PTKZU VVFIN VVINF 5");
        assert_eq!(parse_contextual_rules(&text).unwrap(), ctx);

        assert_eq!(parse_lexical_rules("has-suffix e NN\n").unwrap_err().0, 1);
        assert_eq!(
            parse_contextual_rules("\nsurround-tags A NN NE 1\n")
                .unwrap_err()
                .0,
            2
        );
        assert!(parse_contextual_rules("bogus A B C 1\n").is_err());
    }
}
